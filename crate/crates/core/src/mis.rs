//! Enumeration of maximal independent sets with polynomial delay, and of
//! minimal vertex covers as their complements.
//!
//! Vertices are added one at a time in index order. A node at depth `i` holds
//! a maximal independent set `I` of `G[{0..i}]`; it has the child `I ∪ {i}`
//! when `i` has no neighbour in `I`, and otherwise the child `I` plus possibly
//! `J = (I \ N(i)) ∪ {i}`. `J` is kept only if it is maximal and `I` is its
//! canonical parent (the greedy completion of `J \ {i}`), so every maximal
//! independent set is reached exactly once. Every node has at least one
//! child, which bounds the work between two outputs by a polynomial.

use crate::graph::Graph;
use crate::set::VertexSet;

pub struct MisEnumerator<'g> {
    graph: &'g Graph,
    /// `prefixes[i]` = {0, .., i-1}
    prefixes: Vec<VertexSet>,
    stack: Vec<(usize, VertexSet)>,
    emitted: u64,
    probes: u64,
    since_last: u64,
    max_delay: u64,
}

impl<'g> MisEnumerator<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        let n = graph.vertex_count();
        let mut prefixes = Vec::with_capacity(n + 1);
        let mut acc = VertexSet::new(n);
        for v in 0..=n {
            prefixes.push(acc.clone());
            if v < n {
                acc.insert(v);
            }
        }
        MisEnumerator {
            graph,
            prefixes,
            stack: vec![(0, VertexSet::new(n))],
            emitted: 0,
            probes: 0,
            since_last: 0,
            max_delay: 0,
        }
    }

    pub fn emitted(&self) -> u64 {
        self.emitted
    }

    /// Total adjacency-row operations so far.
    pub fn probes(&self) -> u64 {
        self.probes
    }

    /// Largest number of adjacency-row operations between two outputs.
    pub fn max_delay_probes(&self) -> u64 {
        self.max_delay
    }

    fn probe(&mut self, k: u64) {
        self.probes += k;
        self.since_last += k;
    }

    /// `set` is maximal independent in `G[{0..=last}]`.
    fn is_maximal_in_prefix(&mut self, set: &VertexSet, last: usize) -> bool {
        let outside = self.prefixes[last + 1].difference(set);
        self.probe(outside.len() as u64);
        let ok = outside
            .iter()
            .all(|u| self.graph.neighbours(u).intersects(set));
        ok
    }

    /// Greedy completion of `seed` to a maximal independent set of
    /// `G[{0..limit-1}]`, scanning vertices in index order.
    fn greedy_completion(&mut self, seed: &VertexSet, limit: usize) -> VertexSet {
        let mut set = seed.clone();
        let mut blocked = self.graph.neighbourhood_of(seed);
        self.probe(seed.len() as u64 + limit as u64);
        for u in 0..limit {
            if !set.contains(u) && !blocked.contains(u) {
                set.insert(u);
                blocked.union_with(self.graph.neighbours(u));
            }
        }
        set
    }

    fn check_emission(&self, set: &VertexSet) {
        let g = self.graph;
        assert!(g.is_independent(set), "emitted set is independent");
        assert!(
            set.complement()
                .iter()
                .all(|v| g.neighbours(v).intersects(set)),
            "emitted set is maximal"
        );
    }
}

impl Iterator for MisEnumerator<'_> {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        let n = self.graph.vertex_count();
        while let Some((depth, set)) = self.stack.pop() {
            if depth == n {
                self.check_emission(&set);
                self.emitted += 1;
                self.max_delay = self.max_delay.max(self.since_last);
                self.since_last = 0;
                return Some(set);
            }
            let v = depth;
            let nv = self.graph.neighbours(v);
            self.probe(1);
            if !nv.intersects(&set) {
                let mut child = set;
                child.insert(v);
                self.stack.push((depth + 1, child));
                continue;
            }
            let mut alt = set.difference(nv);
            alt.insert(v);
            self.probe(1);
            self.stack.push((depth + 1, set.clone()));
            if self.is_maximal_in_prefix(&alt, v) {
                let mut seed = alt.clone();
                seed.remove(v);
                if self.greedy_completion(&seed, v) == set {
                    self.stack.push((depth + 1, alt));
                }
            }
        }
        None
    }
}

pub fn enum_maximal_independent_sets(g: &Graph) -> MisEnumerator<'_> {
    MisEnumerator::new(g)
}

/// Complements of the maximal independent sets, i.e. all minimal vertex covers.
pub fn enum_minimal_vertex_covers(g: &Graph) -> impl Iterator<Item = VertexSet> + '_ {
    MisEnumerator::new(g).map(|set| set.complement())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MisBoundCheck {
    pub count: u64,
    /// `n^(2s) + 1`, saturating.
    pub bound: u128,
    pub within: bool,
}

/// Counts maximal independent sets and compares against `n^(2s) + 1`, the
/// bound that holds on `sP2`-free graphs. The comparison is reported, not
/// enforced.
pub fn count_check_sp2_bound(g: &Graph, s: u32) -> MisBoundCheck {
    let count = MisEnumerator::new(g).count() as u64;
    let n = g.vertex_count() as u128;
    let bound = n
        .checked_pow(2 * s)
        .and_then(|p| p.checked_add(1))
        .unwrap_or(u128::MAX);
    MisBoundCheck {
        count,
        bound,
        within: u128::from(count) <= bound,
    }
}
