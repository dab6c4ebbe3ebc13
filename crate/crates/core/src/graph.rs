//! Undirected simple graphs with bitset adjacency rows, plus the named
//! constructions (paths, cycles, cliques, stars, unions, complements).

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    rows: Vec<VertexSet>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            rows: vec![VertexSet::new(n); n],
            labels: None,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds `uv`; returns false if it was already present.
    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        let n = self.vertex_count();
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(Error::InvalidConstruction(format!(
                "self-loop at vertex {u}"
            )));
        }
        let fresh = !self.rows[u].contains(v);
        self.rows[u].insert(v);
        self.rows[v].insert(u);
        Ok(fresh)
    }

    /// Panicking variant for internal constructions with known-good endpoints.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop at {u}");
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u].remove(v);
        self.rows[v].remove(u);
    }

    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn neighbours(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count())
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Option<Vec<String>>) {
        if let Some(l) = &labels {
            assert_eq!(l.len(), self.vertex_count());
        }
        self.labels = labels;
    }

    /// Closed neighbourhood N[v].
    pub fn closed_neighbourhood(&self, v: usize) -> VertexSet {
        let mut s = self.rows[v].clone();
        s.insert(v);
        s
    }

    /// Union of the neighbourhoods of all members of `set`.
    pub fn neighbourhood_of(&self, set: &VertexSet) -> VertexSet {
        let mut s = VertexSet::new(self.vertex_count());
        for v in set.iter() {
            s.union_with(&self.rows[v]);
        }
        s
    }

    pub fn is_independent(&self, set: &VertexSet) -> bool {
        set.iter().all(|v| self.rows[v].is_disjoint(set))
    }

    pub fn is_clique(&self, set: &VertexSet) -> bool {
        let k = set.len();
        set.iter()
            .all(|v| self.rows[v].intersection_len(set) == k - 1)
    }

    /// Induced subgraph on `keep`, with the map from new to old indices.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = keep.iter().collect();
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::new(map.len());
        for (i, &v) in map.iter().enumerate() {
            for w in self.rows[v].iter() {
                let j = index[w];
                if j != usize::MAX && j > i {
                    g.add_edge(i, j);
                }
            }
        }
        if let Some(labels) = &self.labels {
            g.labels = Some(map.iter().map(|&v| labels[v].clone()).collect());
        }
        (g, map)
    }

    pub fn complement(&self) -> Graph {
        let n = self.vertex_count();
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g.labels = self.labels.clone();
        g
    }

    /// Disjoint union; the vertices of `other` are numbered after ours.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.vertex_count();
        let mut g = Graph::new(shift + other.vertex_count());
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + shift, v + shift);
        }
        g
    }

    /// Connected components of the subgraph induced by `within`, each sorted,
    /// ordered by smallest vertex.
    pub fn components_within(&self, within: &VertexSet) -> Vec<VertexSet> {
        let n = self.vertex_count();
        let mut seen = VertexSet::new(n);
        let mut out = Vec::new();
        for start in within.iter() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::new(n);
            let mut queue = VecDeque::from([start]);
            seen.insert(start);
            while let Some(v) = queue.pop_front() {
                comp.insert(v);
                for w in self.rows[v].iter() {
                    if within.contains(w) && !seen.contains(w) {
                        seen.insert(w);
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(&self.vertices())
    }

    /// Degree sequence sorted in decreasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.vertex_count()).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }
}

/// Descriptor for [`build_named`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedGraph {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    /// `K_{1,r}`: centre 0, leaves `1..=r`.
    Star(usize),
    DisjointUnion(Box<NamedGraph>, Box<NamedGraph>),
    Complement(Box<NamedGraph>),
}

pub fn build_named(spec: &NamedGraph) -> Result<Graph> {
    match spec {
        NamedGraph::Path(n) => {
            let mut g = Graph::new(*n);
            for v in 1..*n {
                g.add_edge(v - 1, v);
            }
            Ok(g)
        }
        NamedGraph::Cycle(n) => {
            if *n < 3 {
                return Err(Error::InvalidConstruction(format!(
                    "cycle needs at least 3 vertices, got {n}"
                )));
            }
            let mut g = build_named(&NamedGraph::Path(*n))?;
            g.add_edge(n - 1, 0);
            Ok(g)
        }
        NamedGraph::Complete(n) => {
            if *n == 0 {
                return Err(Error::InvalidConstruction(
                    "complete graph of size 0".into(),
                ));
            }
            let mut g = Graph::new(*n);
            for u in 0..*n {
                for v in (u + 1)..*n {
                    g.add_edge(u, v);
                }
            }
            Ok(g)
        }
        NamedGraph::Star(r) => {
            let mut g = Graph::new(r + 1);
            for leaf in 1..=*r {
                g.add_edge(0, leaf);
            }
            Ok(g)
        }
        NamedGraph::DisjointUnion(a, b) => Ok(build_named(a)?.disjoint_union(&build_named(b)?)),
        NamedGraph::Complement(a) => Ok(build_named(a)?.complement()),
    }
}
