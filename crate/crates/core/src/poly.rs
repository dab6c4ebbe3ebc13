//! Polynomial-time solvers for structured inputs: `G[T]` that is
//! `sP2`-free, `G` that is `(sP1+P2+P3)`-free via P1-peeling, and the
//! dispatcher that picks a route from class tests.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::bipartite::{cover_for, BipartiteView};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{
    is_t_vertex_cover, restrict_to_t_incident, Algorithm, Instance, ScaledWeights, SolutionCover,
    Stats,
};
use crate::mimwidth::{solve_mim, Layout};
use crate::mis::enum_minimal_vertex_covers;
use crate::oracle::{solve_exact_weighted_with, vertex_cover_scaled, OracleConfig};
use crate::recognition::{contains_induced, sp1_p2_p3, sp2, HPattern};
use crate::set::VertexSet;

/// Components of a cluster graph `G[T']`, split into cliques of size at
/// least two and isolated vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterDecomposition {
    pub large_components: Vec<VertexSet>,
    pub small_vertices: VertexSet,
}

impl ClusterDecomposition {
    /// `None` when `G[within]` is not a disjoint union of cliques.
    pub fn of(g: &Graph, within: &VertexSet) -> Option<Self> {
        let mut large_components = Vec::new();
        let mut small_vertices = VertexSet::new(g.vertex_count());
        for comp in g.components_within(within) {
            if !g.is_clique(&comp) {
                return None;
            }
            if comp.len() == 1 {
                small_vertices.union_with(&comp);
            } else {
                large_components.push(comp);
            }
        }
        Some(ClusterDecomposition {
            large_components,
            small_vertices,
        })
    }
}

/// Non-terminals outside `excluded` that have a neighbour and a non-neighbour
/// in some large component, neighbours in two large components, or a
/// neighbour in a large component and one among the small vertices.
pub fn find_property_vertices(
    g: &Graph,
    t: &VertexSet,
    decomp: &ClusterDecomposition,
    excluded: &VertexSet,
) -> VertexSet {
    let n = g.vertex_count();
    let mut found = VertexSet::new(n);
    for w in 0..n {
        if t.contains(w) || excluded.contains(w) {
            continue;
        }
        let nw = g.neighbours(w);
        let mut touched = 0;
        let mut partial = false;
        for d in &decomp.large_components {
            let k = nw.intersection_len(d);
            if k > 0 {
                touched += 1;
                partial |= k < d.len();
            }
        }
        let small = nw.intersects(&decomp.small_vertices);
        if partial || touched >= 2 || (touched >= 1 && small) {
            found.insert(w);
        }
    }
    found
}

/// True iff `w` is adjacent to all but at most one vertex of `clique`.
pub fn check_semi_complete(g: &Graph, w: usize, clique: &VertexSet) -> Result<bool> {
    if !g.is_clique(clique) {
        return Err(Error::Params("semi-completeness needs a clique".into()));
    }
    let missing = clique.len() - g.neighbours(w).intersection_len(clique);
    Ok(missing <= 1)
}

type Candidate = (u64, VertexSet);

fn keep_best(best: &mut Option<Candidate>, cand: Candidate) {
    if best.as_ref().is_none_or(|b| cand < *b) {
        *best = Some(cand);
    }
}

fn precondition(reason: String, witness: Vec<usize>) -> Error {
    Error::Precondition {
        reason,
        witness: Some(witness),
    }
}

/// Minimum (weight) terminal cover when `G[T]` is `sP2`-free: every optimum
/// is a minimal vertex cover `R` of `G[T]` plus a cover of the bipartite
/// graph between `T \ R` and `V \ T`, so try every `R`.
pub fn solve_sp2(inst: &Instance, s: usize) -> Result<SolutionCover> {
    if s == 0 {
        return Err(Error::Params("s must be positive".into()));
    }
    let t = inst.terminals();
    let (gt, map) = inst.graph().induced_subgraph(t);
    if let Some(w) = contains_induced(&gt, &sp2(s))? {
        return Err(precondition(
            format!("G[T] contains an induced {s}P2"),
            w.iter().map(|&i| map[i]).collect(),
        ));
    }

    let restricted = restrict_to_t_incident(inst);
    let rg = restricted.graph();
    let weights = inst.scaled_weights();
    let outside = inst.non_terminals();
    let n = inst.vertex_count();

    let counter = AtomicU64::new(0);
    let best = enum_minimal_vertex_covers(&gt)
        .par_bridge()
        .map(|local| {
            counter.fetch_add(1, Ordering::Relaxed);
            let r = VertexSet::from_iter(n, local.iter().map(|i| map[i]));
            let view = BipartiteView::new(rg, t.difference(&r), outside.clone())
                .expect("residual after removing a terminal cover is bipartite");
            let cover = cover_for(&view, &weights).union(&r);
            (weights.sum(&cover), cover)
        })
        .min()
        .expect("G[T] has at least one minimal vertex cover");

    let enumerated = counter.into_inner();
    let stats = Stats {
        branches: enumerated,
        enumerated,
        konig_calls: enumerated,
        candidates: enumerated,
        ..Stats::default()
    };
    debug_assert!(is_t_vertex_cover(inst, &best.1).unwrap_or(false));
    Ok(SolutionCover::new(inst, best.1, Algorithm::Sp2, stats))
}

struct P2p3Context<'a> {
    g: &'a Graph,
    rg: &'a Graph,
    t: &'a VertexSet,
    outside: VertexSet,
    weights: ScaledWeights,
}

impl P2p3Context<'_> {
    fn konig(&self, left: VertexSet, right: VertexSet, stats: &mut Stats) -> VertexSet {
        stats.konig_calls += 1;
        let view = BipartiteView::new(self.rg, left, right)
            .expect("terminal side is independent after forcing");
        cover_for(&view, &self.weights)
    }

    fn candidate(&self, set: VertexSet) -> Candidate {
        (self.weights.sum(&set), set)
    }

    /// Best cover avoiding both ends of the non-terminal edge `uv`.
    fn edge_branch(&self, u: usize, v: usize) -> (Vec<Candidate>, Stats) {
        let g = self.g;
        let mut stats = Stats {
            branches: 1,
            ..Stats::default()
        };
        let mut forced = g.neighbours(u).union(g.neighbours(v));
        forced.intersect_with(self.t);
        let t_prime = self.t.difference(&forced);
        let decomp = ClusterDecomposition::of(g, &t_prime)
            .expect("terminals away from a non-terminal edge induce a cluster graph");

        let cands = if decomp.large_components.len() <= 2 {
            self.few_cliques(&forced, &t_prime, &decomp, &mut stats)
        } else {
            let uv = VertexSet::from_iter(g.vertex_count(), [u, v]);
            self.many_cliques(&forced, &t_prime, &decomp, &uv, &mut stats)
        };
        (cands, stats)
    }

    /// At most two large cliques: guess the surviving vertex of each.
    fn few_cliques(
        &self,
        forced: &VertexSet,
        t_prime: &VertexSet,
        decomp: &ClusterDecomposition,
        stats: &mut Stats,
    ) -> Vec<Candidate> {
        let options = |d: Option<&VertexSet>| -> Vec<Option<usize>> {
            let mut o = vec![None];
            if let Some(d) = d {
                o.extend(d.iter().map(Some));
            }
            o
        };
        let d1 = decomp.large_components.first();
        let d2 = decomp.large_components.get(1);
        let mut out = Vec::new();
        for z1 in options(d1) {
            for z2 in options(d2) {
                let mut taken = forced.clone();
                for (d, z) in [(d1, z1), (d2, z2)] {
                    if let Some(d) = d {
                        taken.union_with(d);
                        if let Some(z) = z {
                            taken.remove(z);
                        }
                    }
                }
                let left = t_prime.difference(&taken);
                let cover = self.konig(left, self.outside.clone(), stats);
                out.push(self.candidate(cover.union(&taken)));
            }
        }
        out
    }

    /// Three or more large cliques: branch on a surviving property vertex,
    /// or take all property vertices and settle each clique locally.
    fn many_cliques(
        &self,
        forced: &VertexSet,
        t_prime: &VertexSet,
        decomp: &ClusterDecomposition,
        excluded: &VertexSet,
        stats: &mut Stats,
    ) -> Vec<Candidate> {
        let g = self.g;
        let props = find_property_vertices(g, self.t, decomp, excluded);
        for w in props.iter() {
            for d in &decomp.large_components {
                assert!(
                    check_semi_complete(g, w, d).expect("large components are cliques"),
                    "property vertex {w} is semi-complete to every large clique"
                );
            }
        }

        let mut out = Vec::new();
        for w in props.iter() {
            let nt = g.neighbours(w).intersection(self.t);
            let taken = forced.union(&nt);
            let left = t_prime.difference(&nt);
            assert!(
                g.is_independent(&left),
                "remaining terminals are independent"
            );
            let cover = self.konig(left, self.outside.clone(), stats);
            out.push(self.candidate(cover.union(&taken)));
        }

        let mut taken = forced.union(&props);
        let free_outside = self.outside.difference(&props);
        for d in &decomp.large_components {
            let mut attached = self.rg.neighbourhood_of(d);
            attached.intersect_with(&free_outside);
            let whole = self.weights.sum(d);
            let (z, z_weight) = d
                .iter()
                .map(|z| (z, self.weights.values[z]))
                .fold(None, |acc: Option<(usize, u64)>, (z, wz)| match acc {
                    Some((_, best)) if best >= wz => acc,
                    _ => Some((z, wz)),
                })
                .expect("large components are nonempty");
            let spare = whole - z_weight + self.weights.sum(&attached);
            taken.union_with(d);
            if spare < whole {
                taken.remove(z);
                taken.union_with(&attached);
            }
        }
        let cover = self.konig(decomp.small_vertices.clone(), free_outside, stats);
        out.push(self.candidate(cover.union(&taken)));
        out
    }
}

/// Minimum (weight) terminal cover on `(P2+P3)`-free graphs.
///
/// Either the answer is a plain vertex cover, or some edge `uv` outside `T`
/// survives; each such edge is guessed and the terminals far from it form a
/// cluster graph, handled by the two cases below. Every candidate is checked
/// before it competes.
pub fn solve_p2p3(inst: &Instance) -> Result<SolutionCover> {
    let g = inst.graph();
    if let Some(w) = contains_induced(g, &sp1_p2_p3(0))? {
        return Err(precondition("graph contains an induced P2+P3".into(), w));
    }
    let restricted = restrict_to_t_incident(inst);
    let ctx = P2p3Context {
        g,
        rg: restricted.graph(),
        t: inst.terminals(),
        outside: inst.non_terminals(),
        weights: inst.scaled_weights(),
    };

    let (vc, vc_stats) = vertex_cover_scaled(g, &ctx.weights.values);
    let mut stats = Stats {
        enumerated: vc_stats.branches,
        ..Stats::default()
    };
    let mut best = Some(ctx.candidate(vc));

    let edges: Vec<(usize, usize)> = g
        .edges()
        .filter(|&(u, v)| ctx.outside.contains(u) && ctx.outside.contains(v))
        .collect();
    let results: Vec<(Vec<Candidate>, Stats)> = edges
        .par_iter()
        .map(|&(u, v)| ctx.edge_branch(u, v))
        .collect();

    for (cands, branch_stats) in results {
        stats.absorb(&branch_stats);
        for c in cands {
            stats.candidates += 1;
            if is_t_vertex_cover(inst, &c.1)? {
                keep_best(&mut best, c);
            }
        }
    }
    let (_, set) = best.expect("the vertex cover candidate is always present");
    Ok(SolutionCover::new(inst, set, Algorithm::P2p3, stats))
}

/// A solver for `H`-free inputs, used at the bottom of [`peel_p1`].
pub struct BaseSolver<F> {
    pub pattern: HPattern,
    pub algorithm: Algorithm,
    pub solve: F,
}

/// Solves `(sP1 + H)`-free inputs with a solver for `H`-free ones. A maximum
/// terminal-independent set either avoids `T` (then it is `V \ T`) or holds
/// some `v` in `T`; in the second case the rest lies in `G - N[v]`, which is
/// `((s-1)P1 + H)`-free.
pub fn peel_p1<F>(inst: &Instance, base: &BaseSolver<F>, s: usize) -> Result<SolutionCover>
where
    F: Fn(&Instance) -> Result<SolutionCover> + Sync,
{
    let pattern = base.pattern.with_isolated(s);
    if let Some(w) = contains_induced(inst.graph(), &pattern)? {
        return Err(precondition(
            format!("graph contains an induced {}", pattern.label()),
            w,
        ));
    }
    if s == 0 {
        return (base.solve)(inst);
    }
    let weights = inst.scaled_weights();
    let (_, cover, stats) = peel_level(inst, base, s, &weights)?;
    Ok(SolutionCover::new(inst, cover, base.algorithm, stats))
}

fn peel_level<F>(
    inst: &Instance,
    base: &BaseSolver<F>,
    level: usize,
    weights: &ScaledWeights,
) -> Result<(u64, VertexSet, Stats)>
where
    F: Fn(&Instance) -> Result<SolutionCover> + Sync,
{
    if level == 0 {
        let sol = (base.solve)(inst)?;
        let cover = sol.vertices().clone();
        return Ok((weights.sum(&cover), cover, sol.provenance.stats));
    }
    let g = inst.graph();
    let n = inst.vertex_count();
    let t = inst.terminals();
    let residual_pattern = base.pattern.with_isolated(level - 1);

    let branches: Vec<Result<(Candidate, Stats)>> = t
        .to_vec()
        .into_par_iter()
        .map(|v| {
            let keep = g.closed_neighbourhood(v).complement();
            let (sub, map) = inst.induced(&keep);
            if let Some(w) = contains_induced(sub.graph(), &residual_pattern)? {
                return Err(precondition(
                    format!(
                        "G - N[{}] contains an induced {}",
                        v + 1,
                        residual_pattern.label()
                    ),
                    w.iter().map(|&i| map[i]).collect(),
                ));
            }
            let sub_weights = weights.restrict(&map);
            let (_, sub_cover, stats) = peel_level(&sub, base, level - 1, &sub_weights)?;
            let mut independent = VertexSet::singleton(n, v);
            for (i, &orig) in map.iter().enumerate() {
                if !sub_cover.contains(i) {
                    independent.insert(orig);
                }
            }
            let cover = independent.complement();
            Ok(((weights.sum(&cover), cover), stats))
        })
        .collect();

    let mut stats = Stats::default();
    let mut best = Some((weights.sum(t), t.clone()));
    for b in branches {
        let (cand, branch_stats) = b?;
        stats.absorb(&branch_stats);
        stats.branches += 1;
        keep_best(&mut best, cand);
    }
    let (w, cover) = best.expect("the all-terminals cover is always present");
    Ok((w, cover, stats))
}

/// [`peel_p1`] with [`solve_p2p3`] as the base.
pub fn solve_peeled_p2p3(inst: &Instance, s: usize) -> Result<SolutionCover> {
    let base = BaseSolver {
        pattern: sp1_p2_p3(0),
        algorithm: Algorithm::PeelP2p3,
        solve: solve_p2p3,
    };
    peel_p1(inst, &base, s)
}

#[derive(Clone, Debug)]
pub struct DispatchConfig {
    pub max_s: usize,
    pub layout: Option<Layout>,
    pub oracle_cap: usize,
}

impl Default for DispatchConfig {
    fn default() -> Self {
        DispatchConfig {
            max_s: 3,
            layout: None,
            oracle_cap: crate::oracle::DEFAULT_ORACLE_CAP,
        }
    }
}

/// One class test run by [`dispatch`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassTest {
    pub property: String,
    /// `None` if the test was skipped.
    pub holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct DispatchReport {
    pub chosen_algorithm: Algorithm,
    /// The `s` of the class that admitted the chosen route.
    pub s: Option<usize>,
    pub class_evidence: Vec<ClassTest>,
    pub warnings: Vec<String>,
    pub result: SolutionCover,
}

fn run_test(
    g: &Graph,
    pattern: &HPattern,
    property: String,
    evidence: &mut Vec<ClassTest>,
) -> Option<bool> {
    match contains_induced(g, pattern) {
        Ok(found) => {
            let holds = found.is_none();
            evidence.push(ClassTest {
                property,
                holds: Some(holds),
                witness: found,
                note: None,
            });
            Some(holds)
        }
        Err(e) => {
            evidence.push(ClassTest {
                property,
                holds: None,
                witness: None,
                note: Some(e.to_string()),
            });
            None
        }
    }
}

/// Picks the first applicable route: `sP2`-free `G[T]`, then
/// `(sP1+P2+P3)`-free `G`, then a supplied layout, then the exact oracle.
pub fn dispatch(inst: &Instance, config: &DispatchConfig) -> Result<DispatchReport> {
    let mut evidence = Vec::new();
    let mut warnings = Vec::new();
    let g = inst.graph();
    let (gt, map) = g.induced_subgraph(inst.terminals());

    for s in 1..=config.max_s {
        match run_test(&gt, &sp2(s), format!("G[T] is {s}P2-free"), &mut evidence) {
            Some(true) => {
                let result = solve_sp2(inst, s)?;
                return Ok(DispatchReport {
                    chosen_algorithm: Algorithm::Sp2,
                    s: Some(s),
                    class_evidence: evidence,
                    warnings,
                    result,
                });
            }
            Some(false) => {
                if let Some(w) = evidence.last_mut().and_then(|e| e.witness.as_mut()) {
                    w.iter_mut().for_each(|v| *v = map[*v]);
                }
            }
            None => break,
        }
    }

    for s in 0..=config.max_s {
        let pattern = sp1_p2_p3(s);
        let property = format!("G is {}-free", pattern.label());
        match run_test(g, &pattern, property, &mut evidence) {
            Some(true) => {
                let result = solve_peeled_p2p3(inst, s)?;
                let chosen = if s == 0 {
                    Algorithm::P2p3
                } else {
                    Algorithm::PeelP2p3
                };
                return Ok(DispatchReport {
                    chosen_algorithm: chosen,
                    s: Some(s),
                    class_evidence: evidence,
                    warnings,
                    result,
                });
            }
            Some(false) => {}
            None => break,
        }
    }

    if let Some(layout) = &config.layout {
        let result = solve_mim(inst, layout)?;
        return Ok(DispatchReport {
            chosen_algorithm: Algorithm::Mim,
            s: None,
            class_evidence: evidence,
            warnings,
            result,
        });
    }

    let n = inst.vertex_count();
    if n <= config.oracle_cap {
        warnings.push(format!(
            "no polynomial route applies; exact search on {n} vertices"
        ));
        let result = solve_exact_weighted_with(
            inst,
            &OracleConfig {
                cap: config.oracle_cap,
            },
        )?;
        return Ok(DispatchReport {
            chosen_algorithm: Algorithm::Oracle,
            s: None,
            class_evidence: evidence,
            warnings,
            result,
        });
    }
    Err(Error::NoApplicableAlgorithm(format!(
        "no class test passed for s <= {}, no layout given, and {n} vertices exceed the oracle cap {}",
        config.max_s, config.oracle_cap
    )))
}
