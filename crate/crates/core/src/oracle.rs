//! Exact exponential-time solvers, the ground truth for everything else.
//!
//! Two independent routes are provided and cross-checked in tests:
//! branching directly on uncovered terminal edges ([`solve_exact`]), and
//! dropping non-terminal edges then running a plain vertex cover
//! branch-and-reduce ([`solve_exact_reduced`]).

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{
    restrict_to_t_incident, Algorithm, Instance, ScaledWeights, SolutionCover, Stats, Weight,
};
use crate::set::VertexSet;

pub const DEFAULT_ORACLE_CAP: usize = 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            cap: DEFAULT_ORACLE_CAP,
        }
    }
}

fn check_cap(n: usize, cfg: &OracleConfig) -> Result<()> {
    if n > cfg.cap {
        return Err(Error::CapExceeded { n, cap: cfg.cap });
    }
    Ok(())
}

struct EdgeBranching<'a> {
    /// `partners[u]`: neighbours `v` such that `uv` touches a terminal.
    partners: Vec<VertexSet>,
    weights: &'a [u64],
    best_cost: u64,
    best: VertexSet,
    nodes: u64,
}

impl EdgeBranching<'_> {
    fn lower_bound(&self, live: &VertexSet) -> u64 {
        let mut free = live.clone();
        let mut bound = 0;
        for u in live.iter() {
            if !free.contains(u) {
                continue;
            }
            if let Some(v) = self.partners[u].intersection(&free).first() {
                free.remove(u);
                free.remove(v);
                bound += self.weights[u].min(self.weights[v]);
            }
        }
        bound
    }

    fn search(&mut self, chosen: VertexSet, live: VertexSet, cost: u64) {
        self.nodes += 1;
        if cost >= self.best_cost {
            return;
        }
        let pick = live
            .iter()
            .map(|u| (self.partners[u].intersection_len(&live), u))
            .filter(|&(d, _)| d > 0)
            .max_by_key(|&(d, u)| (d, std::cmp::Reverse(u)));
        let Some((_, u)) = pick else {
            self.best_cost = cost;
            self.best = chosen;
            return;
        };
        if cost + self.lower_bound(&live) >= self.best_cost {
            return;
        }
        // u in S
        {
            let mut chosen = chosen.clone();
            let mut live = live.clone();
            chosen.insert(u);
            live.remove(u);
            self.search(chosen, live, cost + self.weights[u]);
        }
        // u not in S: every remaining edge partner of u must be.
        let forced = self.partners[u].intersection(&live);
        let extra: u64 = forced.iter().map(|v| self.weights[v]).sum();
        let mut chosen = chosen;
        let mut live = live;
        chosen.union_with(&forced);
        live.difference_with(&forced);
        live.remove(u);
        self.search(chosen, live, cost + extra);
    }
}

fn edge_branching(inst: &Instance, weights: &ScaledWeights) -> (VertexSet, Stats) {
    let g = inst.graph();
    let t = inst.terminals();
    let n = g.vertex_count();
    let partners: Vec<VertexSet> = (0..n)
        .map(|u| {
            if t.contains(u) {
                g.neighbours(u).clone()
            } else {
                g.neighbours(u).intersection(t)
            }
        })
        .collect();
    // Only endpoints of terminal edges are ever branched on.
    let live = VertexSet::from_iter(n, (0..n).filter(|&u| !partners[u].is_empty()));
    let mut search = EdgeBranching {
        partners,
        weights: &weights.values,
        best_cost: weights.sum(t) + 1,
        best: t.clone(),
        nodes: 0,
    };
    search.search(VertexSet::new(n), live, 0);
    let stats = Stats {
        branches: search.nodes,
        ..Stats::default()
    };
    (search.best, stats)
}

/// Minimum-size terminal cover by branching on uncovered terminal edges.
/// Weights, if any, are ignored.
pub fn solve_exact(inst: &Instance) -> Result<SolutionCover> {
    solve_exact_with(inst, &OracleConfig::default())
}

pub fn solve_exact_with(inst: &Instance, cfg: &OracleConfig) -> Result<SolutionCover> {
    check_cap(inst.vertex_count(), cfg)?;
    let plain = inst.clone().without_weights();
    let (set, stats) = edge_branching(&plain, &plain.scaled_weights());
    Ok(SolutionCover::new(&plain, set, Algorithm::Oracle, stats))
}

/// Minimum-weight terminal cover; unit weights when the instance has none.
pub fn solve_exact_weighted(inst: &Instance) -> Result<SolutionCover> {
    solve_exact_weighted_with(inst, &OracleConfig::default())
}

pub fn solve_exact_weighted_with(inst: &Instance, cfg: &OracleConfig) -> Result<SolutionCover> {
    check_cap(inst.vertex_count(), cfg)?;
    let (set, stats) = edge_branching(inst, &inst.scaled_weights());
    Ok(SolutionCover::new(inst, set, Algorithm::Oracle, stats))
}

/// Second exact route: restrict to terminal edges, then solve plain
/// (weighted) vertex cover. Uses the weights iff `weighted`.
pub fn solve_exact_reduced(
    inst: &Instance,
    cfg: &OracleConfig,
    weighted: bool,
) -> Result<SolutionCover> {
    check_cap(inst.vertex_count(), cfg)?;
    let inst = if weighted {
        inst.clone()
    } else {
        inst.clone().without_weights()
    };
    let restricted = restrict_to_t_incident(&inst);
    let (set, stats) = vertex_cover_scaled(restricted.graph(), &inst.scaled_weights().values);
    Ok(SolutionCover::new(
        &inst,
        set,
        Algorithm::OracleReduced,
        stats,
    ))
}

/// Minimum (weight) vertex cover of `g`, i.e. the terminal problem with `T = V`.
pub fn min_vertex_cover_exact(g: &Graph, weights: Option<&[Weight]>) -> Result<SolutionCover> {
    min_vertex_cover_exact_with(g, weights, &OracleConfig::default())
}

pub fn min_vertex_cover_exact_with(
    g: &Graph,
    weights: Option<&[Weight]>,
    cfg: &OracleConfig,
) -> Result<SolutionCover> {
    check_cap(g.vertex_count(), cfg)?;
    let mut inst = Instance::new(g.clone(), g.vertices())?;
    if let Some(w) = weights {
        inst = inst.with_weights(w.to_vec())?;
    }
    let (set, stats) = vertex_cover_scaled(g, &inst.scaled_weights().values);
    Ok(SolutionCover::new(
        &inst,
        set,
        Algorithm::VertexCover,
        stats,
    ))
}

struct CoverSearch<'a> {
    g: &'a Graph,
    w: &'a [u64],
    nodes: u64,
}

impl CoverSearch<'_> {
    fn live_degree(&self, v: usize, live: &VertexSet) -> usize {
        self.g.neighbours(v).intersection_len(live)
    }

    fn lower_bound(&self, live: &VertexSet) -> u64 {
        let mut free = live.clone();
        let mut bound = 0;
        for u in live.iter() {
            if !free.contains(u) {
                continue;
            }
            if let Some(v) = self.g.neighbours(u).intersection(&free).first() {
                free.remove(u);
                free.remove(v);
                bound += self.w[u].min(self.w[v]);
            }
        }
        bound
    }

    /// Drops isolated vertices and resolves pendant vertices whose neighbour
    /// is no heavier. Returns the forced vertices and their weight.
    fn reduce(&self, live: &mut VertexSet) -> (VertexSet, u64) {
        let mut taken = VertexSet::new(self.g.vertex_count());
        let mut cost = 0;
        loop {
            let mut changed = false;
            for v in live.to_vec() {
                if !live.contains(v) {
                    continue;
                }
                let nb = self.g.neighbours(v).intersection(live);
                match nb.len() {
                    0 => {
                        live.remove(v);
                        changed = true;
                    }
                    1 => {
                        let u = nb.first().expect("one neighbour");
                        if self.w[v] >= self.w[u] {
                            taken.insert(u);
                            cost += self.w[u];
                            live.remove(u);
                            live.remove(v);
                            changed = true;
                        }
                    }
                    _ => {}
                }
            }
            if !changed {
                return (taken, cost);
            }
        }
    }

    /// Cheapest cover of `G[live]` with weight strictly below `budget`.
    fn solve(&mut self, mut live: VertexSet, budget: u64) -> Option<(u64, VertexSet)> {
        self.nodes += 1;
        let (mut taken, forced) = self.reduce(&mut live);
        if forced >= budget {
            return None;
        }
        if live.is_empty() {
            return Some((forced, taken));
        }
        let remaining = budget - forced;
        let components = self.g.components_within(&live);
        if components.len() > 1 {
            let bounds: Vec<u64> = components.iter().map(|c| self.lower_bound(c)).collect();
            let total_lb: u64 = bounds.iter().sum();
            if total_lb >= remaining {
                return None;
            }
            let mut cost = 0;
            let mut unsolved_lb = total_lb;
            for (comp, lb) in components.into_iter().zip(bounds) {
                unsolved_lb -= lb;
                let allowance = remaining.checked_sub(cost + unsolved_lb)?;
                let (c, set) = self.solve(comp, allowance)?;
                cost += c;
                taken.union_with(&set);
            }
            return Some((forced + cost, taken));
        }
        if self.lower_bound(&live) >= remaining {
            return None;
        }

        let v = live
            .iter()
            .max_by_key(|&u| (self.live_degree(u, &live), std::cmp::Reverse(u)))
            .expect("nonempty");
        let mut best: Option<(u64, VertexSet)> = None;
        let mut limit = remaining;

        if self.w[v] < limit {
            let mut rest = live.clone();
            rest.remove(v);
            if let Some((c, mut set)) = self.solve(rest, limit - self.w[v]) {
                set.insert(v);
                limit = c + self.w[v];
                best = Some((limit, set));
            }
        }
        let nb = self.g.neighbours(v).intersection(&live);
        let nb_cost: u64 = nb.iter().map(|u| self.w[u]).sum();
        if nb_cost < limit {
            let mut rest = live.difference(&nb);
            rest.remove(v);
            if let Some((c, mut set)) = self.solve(rest, limit - nb_cost) {
                set.union_with(&nb);
                best = Some((c + nb_cost, set));
            }
        }
        best.map(|(c, set)| (c + forced, set.union(&taken)))
    }
}

/// Minimum-weight vertex cover by branch-and-reduce, without a size cap.
pub(crate) fn vertex_cover_scaled(g: &Graph, weights: &[u64]) -> (VertexSet, Stats) {
    let mut search = CoverSearch {
        g,
        w: weights,
        nodes: 0,
    };
    let total: u64 = weights.iter().sum();
    let (_, set) = search
        .solve(g.vertices(), total + 1)
        .expect("V is always a cover");
    let set = VertexSet::from_iter(g.vertex_count(), set.iter());
    (
        set,
        Stats {
            branches: search.nodes,
            ..Stats::default()
        },
    )
}
