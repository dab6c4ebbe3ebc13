//! Maximum matching and minimum (weight) vertex cover on bipartite views.
//!
//! The unweighted path is Hopcroft–Karp followed by the alternating-path
//! extraction of a König cover. The weighted path computes a minimum cut in
//! the usual source → left → right → sink network with Dinic's algorithm.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{ScaledWeights, Weight};
use crate::set::VertexSet;

/// The subgraph of `graph` induced by `left ∪ right`, where every edge inside
/// that vertex set crosses between the two sides.
#[derive(Clone, Debug)]
pub struct BipartiteView<'a> {
    graph: &'a Graph,
    left: VertexSet,
    right: VertexSet,
}

impl<'a> BipartiteView<'a> {
    pub fn new(graph: &'a Graph, left: VertexSet, right: VertexSet) -> Result<Self> {
        let n = graph.vertex_count();
        if left.bound() > n || right.bound() > n {
            let v = left.bound().max(right.bound()) - 1;
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        let left = VertexSet::from_iter(n, left.iter());
        let right = VertexSet::from_iter(n, right.iter());
        if left.intersects(&right) {
            return Err(Error::Partition("bipartite sides overlap".into()));
        }
        for side in [&left, &right] {
            for v in side.iter() {
                if let Some(w) = graph.neighbours(v).intersection(side).first() {
                    return Err(Error::NotBipartite(v.min(w), v.max(w)));
                }
            }
        }
        Ok(BipartiteView { graph, left, right })
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn left(&self) -> &VertexSet {
        &self.left
    }

    pub fn right(&self) -> &VertexSet {
        &self.right
    }

    fn right_neighbours(&self, l: usize) -> VertexSet {
        self.graph.neighbours(l).intersection(&self.right)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.left.iter().flat_map(move |l| {
            self.right_neighbours(l)
                .to_vec()
                .into_iter()
                .map(move |r| (l, r))
        })
    }

    pub fn is_cover(&self, cover: &VertexSet) -> bool {
        self.edges()
            .all(|(l, r)| cover.contains(l) || cover.contains(r))
    }
}

/// Matched pairs `(left, right)`, sorted by left endpoint.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

const NIL: usize = usize::MAX;

struct HopcroftKarp {
    adj: Vec<Vec<usize>>,
    mate: Vec<usize>,
    dist: Vec<usize>,
    lefts: Vec<usize>,
}

impl HopcroftKarp {
    fn new(view: &BipartiteView<'_>) -> Self {
        let n = view.graph.vertex_count();
        let lefts = view.left.to_vec();
        let mut adj = vec![Vec::new(); n];
        for &l in &lefts {
            adj[l] = view.right_neighbours(l).to_vec();
        }
        HopcroftKarp {
            adj,
            mate: vec![NIL; n],
            dist: vec![usize::MAX; n],
            lefts,
        }
    }

    fn bfs(&mut self) -> bool {
        let mut queue = VecDeque::new();
        for &l in &self.lefts {
            if self.mate[l] == NIL {
                self.dist[l] = 0;
                queue.push_back(l);
            } else {
                self.dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &self.adj[l] {
                let next = self.mate[r];
                if next == NIL {
                    found = true;
                } else if self.dist[next] == usize::MAX {
                    self.dist[next] = self.dist[l] + 1;
                    queue.push_back(next);
                }
            }
        }
        found
    }

    fn dfs(&mut self, l: usize) -> bool {
        for i in 0..self.adj[l].len() {
            let r = self.adj[l][i];
            let next = self.mate[r];
            if next == NIL || (self.dist[next] == self.dist[l] + 1 && self.dfs(next)) {
                self.mate[l] = r;
                self.mate[r] = l;
                return true;
            }
        }
        self.dist[l] = usize::MAX;
        false
    }

    fn run(mut self) -> Vec<usize> {
        while self.bfs() {
            for i in 0..self.lefts.len() {
                let l = self.lefts[i];
                if self.mate[l] == NIL {
                    self.dfs(l);
                }
            }
        }
        self.mate
    }
}

fn matching_from_mates(view: &BipartiteView<'_>, mate: &[usize]) -> Matching {
    Matching {
        pairs: view
            .left
            .iter()
            .filter(|&l| mate[l] != NIL)
            .map(|l| (l, mate[l]))
            .collect(),
    }
}

pub fn max_matching(view: &BipartiteView<'_>) -> Matching {
    let mate = HopcroftKarp::new(view).run();
    let m = matching_from_mates(view, &mate);
    debug_assert!(is_matching(view, &m));
    m
}

fn is_matching(view: &BipartiteView<'_>, m: &Matching) -> bool {
    let mut used = VertexSet::new(view.graph.vertex_count());
    for &(l, r) in &m.pairs {
        if used.contains(l) || used.contains(r) || !view.graph.has_edge(l, r) {
            return false;
        }
        used.insert(l);
        used.insert(r);
    }
    true
}

/// Minimum vertex cover of the view via König's theorem, together with the
/// maximum matching that certifies it.
pub fn konig_cover_with_matching(view: &BipartiteView<'_>) -> (VertexSet, Matching) {
    let n = view.graph.vertex_count();
    let mate = HopcroftKarp::new(view).run();
    // Alternating reachability from unmatched left vertices.
    let mut reach = VertexSet::new(n);
    let mut queue: VecDeque<usize> = view.left.iter().filter(|&l| mate[l] == NIL).collect();
    for &l in &queue {
        reach.insert(l);
    }
    while let Some(l) = queue.pop_front() {
        for r in view.right_neighbours(l).iter() {
            if reach.contains(r) {
                continue;
            }
            reach.insert(r);
            let next = mate[r];
            if next != NIL && !reach.contains(next) {
                reach.insert(next);
                queue.push_back(next);
            }
        }
    }
    let cover = view
        .left
        .difference(&reach)
        .union(&view.right.intersection(&reach));
    let matching = matching_from_mates(view, &mate);
    assert_eq!(cover.len(), matching.len(), "König equality");
    assert!(view.is_cover(&cover), "returned set covers every view edge");
    assert!(
        is_matching(view, &matching),
        "matching edges are vertex-disjoint"
    );
    (cover, matching)
}

pub fn min_vertex_cover_konig(view: &BipartiteView<'_>) -> VertexSet {
    konig_cover_with_matching(view).0
}

struct Dinic {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u64>,
    level: Vec<usize>,
    iter: Vec<usize>,
}

impl Dinic {
    fn new(nodes: usize) -> Self {
        Dinic {
            head: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
            level: vec![0; nodes],
            iter: vec![0; nodes],
        }
    }

    fn add_edge(&mut self, a: usize, b: usize, c: u64) {
        self.head[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(c);
        self.head[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = usize::MAX);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.head[v] {
                let w = self.to[e];
                if self.cap[e] > 0 && self.level[w] == usize::MAX {
                    self.level[w] = self.level[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        self.level[t] != usize::MAX
    }

    fn dfs(&mut self, v: usize, t: usize, pushed: u64) -> u64 {
        if v == t {
            return pushed;
        }
        while self.iter[v] < self.head[v].len() {
            let e = self.head[v][self.iter[v]];
            let w = self.to[e];
            if self.cap[e] > 0 && self.level[w] == self.level[v] + 1 {
                let got = self.dfs(w, t, pushed.min(self.cap[e]));
                if got > 0 {
                    self.cap[e] -= got;
                    self.cap[e ^ 1] += got;
                    return got;
                }
            }
            self.iter[v] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let mut flow = 0;
        while self.bfs(s, t) {
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let f = self.dfs(s, t, u64::MAX);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
        flow
    }

    /// Nodes reachable from `s` in the residual network.
    fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.head[v] {
                let w = self.to[e];
                if self.cap[e] > 0 && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }
}

/// Minimum-weight cover using integer weights indexed by graph vertex.
/// Returns the cover and its weight, which equals the minimum cut value.
pub fn min_weight_cover_scaled(view: &BipartiteView<'_>, weights: &[u64]) -> (VertexSet, u64) {
    let n = view.graph.vertex_count();
    let source = n;
    let sink = n + 1;
    let infinite = view
        .left
        .iter()
        .chain(view.right.iter())
        .map(|v| weights[v])
        .sum::<u64>()
        + 1;
    let mut net = Dinic::new(n + 2);
    for l in view.left.iter() {
        net.add_edge(source, l, weights[l]);
        for r in view.right_neighbours(l).iter() {
            net.add_edge(l, r, infinite);
        }
    }
    for r in view.right.iter() {
        net.add_edge(r, sink, weights[r]);
    }
    let cut = net.max_flow(source, sink);
    let side = net.source_side(source);
    let cover = VertexSet::from_iter(
        n,
        view.left
            .iter()
            .filter(|&l| !side[l])
            .chain(view.right.iter().filter(|&r| side[r])),
    );
    let weight: u64 = cover.iter().map(|v| weights[v]).sum();
    assert_eq!(weight, cut, "cover weight equals cut value");
    assert!(view.is_cover(&cover), "returned set covers every view edge");
    (cover, weight)
}

pub fn min_weight_vertex_cover_bipartite(
    view: &BipartiteView<'_>,
    weights: &[Weight],
) -> Result<VertexSet> {
    if weights.len() != view.graph.vertex_count() {
        return Err(Error::Params(format!(
            "{} weights for {} vertices",
            weights.len(),
            view.graph.vertex_count()
        )));
    }
    if weights.iter().any(|w| *w <= Weight::from_integer(0)) {
        return Err(Error::Params("weights must be positive".into()));
    }
    let scaled = ScaledWeights::from_rationals(weights);
    Ok(min_weight_cover_scaled(view, &scaled.values).0)
}

/// Unweighted views go through Hopcroft–Karp, the rest through min cut.
pub(crate) fn cover_for(view: &BipartiteView<'_>, weights: &ScaledWeights) -> VertexSet {
    if weights.is_uniform() {
        min_vertex_cover_konig(view)
    } else {
        min_weight_cover_scaled(view, &weights.values).0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_named, NamedGraph};

    fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = Graph::new(a + b);
        for l in 0..a {
            for r in a..a + b {
                g.add_edge(l, r);
            }
        }
        g
    }

    #[test]
    fn path_three() {
        let g = build_named(&NamedGraph::Path(3)).unwrap();
        let view = BipartiteView::new(
            &g,
            VertexSet::from_iter(3, [1]),
            VertexSet::from_iter(3, [0, 2]),
        )
        .unwrap();
        assert_eq!(max_matching(&view).len(), 1);
        assert_eq!(min_vertex_cover_konig(&view).to_vec(), vec![1]);
    }

    #[test]
    fn k33_perfect_matching() {
        let g = complete_bipartite(3, 3);
        let view = BipartiteView::new(
            &g,
            VertexSet::from_iter(6, 0..3),
            VertexSet::from_iter(6, 3..6),
        )
        .unwrap();
        assert_eq!(max_matching(&view).len(), 3);
        assert_eq!(min_vertex_cover_konig(&view).len(), 3);
    }

    #[test]
    fn c4_cover_is_two_opposite() {
        let g = build_named(&NamedGraph::Cycle(4)).unwrap();
        let view = BipartiteView::new(
            &g,
            VertexSet::from_iter(4, [0, 2]),
            VertexSet::from_iter(4, [1, 3]),
        )
        .unwrap();
        let cover = min_vertex_cover_konig(&view);
        assert_eq!(cover.len(), 2);
        assert!(view.is_cover(&cover));
    }

    #[test]
    fn weighted_path_prefers_leaves() {
        let g = build_named(&NamedGraph::Path(3)).unwrap();
        let view = BipartiteView::new(
            &g,
            VertexSet::from_iter(3, [1]),
            VertexSet::from_iter(3, [0, 2]),
        )
        .unwrap();
        let w = [1, 5, 1].map(Weight::from_integer);
        let cover = min_weight_vertex_cover_bipartite(&view, &w).unwrap();
        assert_eq!(cover.to_vec(), vec![0, 2]);
    }

    #[test]
    fn rejects_non_bipartite_view() {
        let g = build_named(&NamedGraph::Complete(3)).unwrap();
        let err = BipartiteView::new(
            &g,
            VertexSet::from_iter(3, [0, 1]),
            VertexSet::from_iter(3, [2]),
        )
        .unwrap_err();
        assert_eq!(err, Error::NotBipartite(0, 1));
    }

    #[test]
    fn vertices_outside_view_are_ignored() {
        let g = build_named(&NamedGraph::Complete(4)).unwrap();
        let view = BipartiteView::new(
            &g,
            VertexSet::from_iter(4, [0]),
            VertexSet::from_iter(4, [1]),
        )
        .unwrap();
        assert_eq!(view.edges().count(), 1);
        assert_eq!(min_vertex_cover_konig(&view).len(), 1);
    }
}
