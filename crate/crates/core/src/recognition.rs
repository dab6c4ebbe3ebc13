//! Induced-subgraph search (H-freeness), linear-forest pattern parsing and
//! recognizers for cluster, bipartite and 2-unipolar graphs.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build_named, Graph, NamedGraph};
use crate::set::VertexSet;

/// Default bound on the number of pattern vertices for [`contains_induced`].
pub const DEFAULT_PATTERN_CAP: usize = 10;
/// Default bound on the graph size for [`find_2_unipolar_partition`].
pub const DEFAULT_UNIPOLAR_CAP: usize = 16;

/// A forbidden induced subgraph `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPattern {
    graph: Graph,
    source: Option<String>,
}

impl HPattern {
    pub fn new(graph: Graph) -> Result<Self> {
        if graph.vertex_count() == 0 {
            return Err(Error::InvalidConstruction("empty pattern".into()));
        }
        Ok(HPattern {
            graph,
            source: None,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn source(&self) -> Option<&str> {
        self.source.as_deref()
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// `self + other`, the disjoint union.
    pub fn plus(&self, other: &HPattern) -> HPattern {
        let source = match (&self.source, &other.source) {
            (Some(a), Some(b)) => Some(format!("{a}+{b}")),
            _ => None,
        };
        HPattern {
            graph: self.graph.disjoint_union(&other.graph),
            source,
        }
    }

    /// `sP1 + self`; returns `self` unchanged for `s = 0`.
    pub fn with_isolated(&self, s: usize) -> HPattern {
        if s == 0 {
            return self.clone();
        }
        let mut p = parse_h_spec(&format!("{s}P1")).expect("valid pattern");
        p = p.plus(self);
        p
    }

    pub fn label(&self) -> String {
        self.source
            .clone()
            .unwrap_or_else(|| format!("H({} vertices)", self.graph.vertex_count()))
    }
}

fn pattern_term(text: &str) -> Result<Graph> {
    let syntax = |msg: &str| Error::InvalidConstruction(format!("pattern `{text}`: {msg}"));
    let digits_end = text
        .find(|c: char| !c.is_ascii_digit())
        .unwrap_or(text.len());
    let copies: usize = if digits_end == 0 {
        1
    } else {
        text[..digits_end]
            .parse()
            .map_err(|_| syntax("bad multiplicity"))?
    };
    if copies == 0 {
        return Err(syntax("multiplicity 0"));
    }
    let body = &text[digits_end..];
    let number = |s: &str| -> Result<usize> {
        if s.is_empty() || !s.chars().all(|c| c.is_ascii_digit()) {
            return Err(syntax("expected a number"));
        }
        s.parse().map_err(|_| syntax("number too large"))
    };

    let one = match body {
        "claw" => build_named(&NamedGraph::Star(3))?,
        "diamond" => {
            // K4 minus an edge, i.e. the complement of 2P1+P2
            let mut g = build_named(&NamedGraph::Complete(4))?;
            g.remove_edge(0, 3);
            g
        }
        _ if body.starts_with('P') => {
            let n = number(&body[1..])?;
            if n == 0 {
                return Err(syntax("P needs at least one vertex"));
            }
            build_named(&NamedGraph::Path(n))?
        }
        _ if body.starts_with('C') => {
            let n = number(&body[1..])?;
            if n < 3 {
                return Err(syntax("C needs at least three vertices"));
            }
            build_named(&NamedGraph::Cycle(n))?
        }
        _ if body.starts_with('K') => match body[1..].split_once(',') {
            Some((a, b)) => {
                if number(a)? != 1 {
                    return Err(syntax("only stars K1,r are supported"));
                }
                build_named(&NamedGraph::Star(number(b)?))?
            }
            None => {
                let n = number(&body[1..])?;
                if n == 0 {
                    return Err(syntax("K needs at least one vertex"));
                }
                build_named(&NamedGraph::Complete(n))?
            }
        },
        _ => return Err(syntax("unknown term")),
    };
    let mut g = Graph::new(0);
    for _ in 0..copies {
        g = g.disjoint_union(&one);
    }
    Ok(g)
}

/// Parses `term ("+" term)*` with `term = [int] (P<int> | C<int> | K<int> |
/// K1,<int> | claw | diamond)`.
pub fn parse_h_spec(text: &str) -> Result<HPattern> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::InvalidConstruction("empty pattern".into()));
    }
    let mut g = Graph::new(0);
    for term in compact.split('+') {
        if term.is_empty() {
            return Err(Error::InvalidConstruction(format!(
                "pattern `{text}`: empty term"
            )));
        }
        g = g.disjoint_union(&pattern_term(term)?);
    }
    Ok(HPattern {
        graph: g,
        source: Some(compact),
    })
}

/// `sP2`.
pub fn sp2(s: usize) -> HPattern {
    parse_h_spec(&format!("{s}P2")).expect("valid pattern")
}

/// `sP1 + P2 + P3`.
pub fn sp1_p2_p3(s: usize) -> HPattern {
    let spec = if s == 0 {
        "P2+P3".to_string()
    } else {
        format!("{s}P1+P2+P3")
    };
    parse_h_spec(&spec).expect("valid pattern")
}

struct InducedSearch<'a> {
    g: &'a Graph,
    h: &'a Graph,
    order: Vec<usize>,
    /// For each position, the earlier positions in the same twin class.
    twin_before: Vec<Option<usize>>,
    image: Vec<usize>,
}

impl InducedSearch<'_> {
    fn extend(&mut self, depth: usize, used: &mut VertexSet) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let hv = self.order[depth];
        let mut cand = used.complement();
        for &prev in &self.order[..depth] {
            let img = self.image[prev];
            if self.h.has_edge(hv, prev) {
                cand.intersect_with(self.g.neighbours(img));
            } else {
                cand.difference_with(self.g.neighbours(img));
            }
        }
        let need = self.h.degree(hv);
        let floor = self.twin_before[depth].map(|p| self.image[self.order[p]]);
        for gv in cand.iter() {
            if floor.is_some_and(|f| gv <= f) || self.g.degree(gv) < need {
                continue;
            }
            self.image[hv] = gv;
            used.insert(gv);
            if self.extend(depth + 1, used) {
                return true;
            }
            used.remove(gv);
        }
        false
    }
}

/// Search order: components one after another, breadth-first inside each,
/// starting from a highest-degree vertex.
fn pattern_order(h: &Graph) -> Vec<usize> {
    let mut comps = h.components();
    comps.sort_by_key(|c| std::cmp::Reverse(c.len()));
    let mut order = Vec::with_capacity(h.vertex_count());
    for comp in comps {
        let start = comp
            .iter()
            .max_by_key(|&v| (h.degree(v), std::cmp::Reverse(v)))
            .expect("nonempty component");
        let mut seen = VertexSet::singleton(h.vertex_count(), start);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for w in h.neighbours(v).iter() {
                if !seen.contains(w) {
                    seen.insert(w);
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

fn are_twins(h: &Graph, a: usize, b: usize) -> bool {
    let mut na = h.neighbours(a).clone();
    let mut nb = h.neighbours(b).clone();
    na.remove(b);
    nb.remove(a);
    na == nb
}

/// Finds an induced copy of `h` in `g`. The returned vector maps each
/// pattern vertex to its image. Patterns above `cap` vertices are refused.
pub fn contains_induced_capped(g: &Graph, h: &HPattern, cap: usize) -> Result<Option<Vec<usize>>> {
    let hg = h.graph();
    if hg.vertex_count() > cap {
        return Err(Error::PatternTooLarge {
            size: hg.vertex_count(),
            cap,
        });
    }
    if hg.vertex_count() > g.vertex_count() || hg.edge_count() > g.edge_count() {
        return Ok(None);
    }
    let order = pattern_order(hg);
    // Swapping twins is an automorphism of H, so their images can be forced
    // into increasing order.
    let twin_before = (0..order.len())
        .map(|i| (0..i).rev().find(|&j| are_twins(hg, order[i], order[j])))
        .collect();
    let mut search = InducedSearch {
        g,
        h: hg,
        order,
        twin_before,
        image: vec![usize::MAX; hg.vertex_count()],
    };
    let mut used = VertexSet::new(g.vertex_count());
    if search.extend(0, &mut used) {
        Ok(Some(search.image))
    } else {
        Ok(None)
    }
}

pub fn contains_induced(g: &Graph, h: &HPattern) -> Result<Option<Vec<usize>>> {
    contains_induced_capped(g, h, DEFAULT_PATTERN_CAP)
}

/// Every connected component is a clique (equivalently, `g` is P3-free).
pub fn is_cluster_graph(g: &Graph) -> bool {
    g.components()
        .iter()
        .all(|comp| comp.iter().all(|v| g.degree(v) == comp.len() - 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub left: VertexSet,
    pub right: VertexSet,
}

/// Two-colouring by breadth-first search; the smallest vertex of each
/// component goes left. `None` iff `g` has an odd cycle.
pub fn is_bipartite(g: &Graph) -> Option<Bipartition> {
    let n = g.vertex_count();
    let mut colour: Vec<Option<bool>> = vec![None; n];
    for start in 0..n {
        if colour[start].is_some() {
            continue;
        }
        colour[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let cv = colour[v].expect("coloured");
            for w in g.neighbours(v).iter() {
                match colour[w] {
                    None => {
                        colour[w] = Some(!cv);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cv => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(Bipartition {
        left: VertexSet::from_iter(n, (0..n).filter(|&v| colour[v] == Some(false))),
        right: VertexSet::from_iter(n, (0..n).filter(|&v| colour[v] == Some(true))),
    })
}

/// A split of `V` into a clique `V1` and a part `V2` inducing cliques of
/// size at most two.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnipolarPartition {
    pub clique_part: VertexSet,
    pub cluster_part: VertexSet,
}

pub fn verify_2_unipolar(g: &Graph, p: &UnipolarPartition) -> Result<bool> {
    let n = g.vertex_count();
    if p.clique_part.bound() > n || p.cluster_part.bound() > n {
        return Err(Error::Partition(
            "part mentions a vertex outside the graph".into(),
        ));
    }
    let v1 = VertexSet::from_iter(n, p.clique_part.iter());
    let v2 = VertexSet::from_iter(n, p.cluster_part.iter());
    if v1.intersects(&v2) {
        return Err(Error::Partition("parts overlap".into()));
    }
    if v1.len() + v2.len() != n {
        return Err(Error::Partition("parts do not cover the vertex set".into()));
    }
    Ok(g.is_clique(&v1)
        && v2
            .iter()
            .all(|v| g.neighbours(v).intersection_len(&v2) <= 1))
}

struct UnipolarSearch<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    v1: VertexSet,
    v2: VertexSet,
}

impl UnipolarSearch<'_> {
    fn fits_v2(&self, v: usize) -> bool {
        let inside_set = self.g.neighbours(v).intersection(&self.v2);
        let mut inside = inside_set.iter();
        match (inside.next(), inside.next()) {
            (None, _) => true,
            (Some(w), None) => self.g.neighbours(w).intersection_len(&self.v2) == 0,
            _ => false,
        }
    }

    fn run(&mut self, depth: usize) -> bool {
        let Some(&v) = self.order.get(depth) else {
            return true;
        };
        if self.v1.is_subset(self.g.neighbours(v)) {
            self.v1.insert(v);
            if self.run(depth + 1) {
                return true;
            }
            self.v1.remove(v);
        }
        if self.fits_v2(v) {
            self.v2.insert(v);
            if self.run(depth + 1) {
                return true;
            }
            self.v2.remove(v);
        }
        false
    }
}

/// Exhaustive search for a 2-unipolar partition, preferring a large clique
/// part (`K_n` yields `V1 = V`).
pub fn find_2_unipolar_partition(g: &Graph, cap: usize) -> Result<Option<UnipolarPartition>> {
    let n = g.vertex_count();
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut search = UnipolarSearch {
        g,
        order,
        v1: VertexSet::new(n),
        v2: VertexSet::new(n),
    };
    Ok(search.run(0).then(|| UnipolarPartition {
        clique_part: search.v1,
        cluster_part: search.v2,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(spec: NamedGraph) -> Graph {
        build_named(&spec).unwrap()
    }

    #[test]
    fn pattern_grammar() {
        let p = parse_h_spec("2P3").unwrap();
        assert_eq!(p.vertex_count(), 6);
        assert_eq!(p.graph().edge_count(), 4);
        assert_eq!(p.graph().components().len(), 2);

        let claw = parse_h_spec("K1,3").unwrap();
        assert_eq!(claw.vertex_count(), 4);
        assert_eq!(claw.graph().edge_count(), 3);

        let p = parse_h_spec("3P1+P2+P3").unwrap();
        assert_eq!(p.vertex_count(), 8);
        assert_eq!(p.graph().edge_count(), 3);
        assert_eq!(p.graph().components().len(), 5);

        let p = parse_h_spec("P2+P3").unwrap();
        assert_eq!((p.vertex_count(), p.graph().edge_count()), (5, 3));

        let d = parse_h_spec("diamond").unwrap();
        assert_eq!((d.vertex_count(), d.graph().edge_count()), (4, 5));
    }

    #[test]
    fn pattern_grammar_errors() {
        for bad in ["", "C2", "P", "Q3", "2P3+", "K2,3", "0P2", "P0", "C"] {
            assert!(parse_h_spec(bad).is_err(), "{bad} should be rejected");
        }
    }

    #[test]
    fn induced_examples() {
        let p3 = parse_h_spec("P3").unwrap();
        let c9 = named(NamedGraph::Cycle(9));
        let emb = contains_induced(&c9, &p3).unwrap().unwrap();
        assert!(c9.has_edge(emb[0], emb[1]) && c9.has_edge(emb[1], emb[2]));
        assert!(!c9.has_edge(emb[0], emb[2]));

        let k4 = named(NamedGraph::Complete(4));
        assert!(contains_induced(&k4, &p3).unwrap().is_none());
    }

    #[test]
    fn pattern_cap_enforced() {
        let big = parse_h_spec("11P1").unwrap();
        let g = Graph::new(12);
        assert!(matches!(
            contains_induced(&g, &big),
            Err(Error::PatternTooLarge { size: 11, cap: 10 })
        ));
        assert!(contains_induced_capped(&g, &big, 12).unwrap().is_some());
    }

    #[test]
    fn cluster_graphs() {
        let g = named(NamedGraph::DisjointUnion(
            Box::new(NamedGraph::Complete(3)),
            Box::new(NamedGraph::DisjointUnion(
                Box::new(NamedGraph::Complete(2)),
                Box::new(NamedGraph::Complete(1)),
            )),
        ));
        assert!(is_cluster_graph(&g));
        assert!(!is_cluster_graph(&named(NamedGraph::Path(3))));
    }

    #[test]
    fn bipartite_examples() {
        let c4 = is_bipartite(&named(NamedGraph::Cycle(4))).unwrap();
        assert_eq!(c4.left.to_vec(), vec![0, 2]);
        assert_eq!(c4.right.to_vec(), vec![1, 3]);
        assert!(is_bipartite(&named(NamedGraph::Cycle(5))).is_none());
    }

    #[test]
    fn unipolar_examples() {
        let c4 = named(NamedGraph::Cycle(4));
        let p = UnipolarPartition {
            clique_part: VertexSet::from_iter(4, [0, 1]),
            cluster_part: VertexSet::from_iter(4, [2, 3]),
        };
        assert!(verify_2_unipolar(&c4, &p).unwrap());

        let p5 = named(NamedGraph::Path(5));
        let p = UnipolarPartition {
            clique_part: VertexSet::new(5),
            cluster_part: VertexSet::full(5),
        };
        assert!(!verify_2_unipolar(&p5, &p).unwrap());

        let overlap = UnipolarPartition {
            clique_part: VertexSet::from_iter(4, [0, 1]),
            cluster_part: VertexSet::from_iter(4, [1, 2, 3]),
        };
        assert!(verify_2_unipolar(&c4, &overlap).is_err());
        let short = UnipolarPartition {
            clique_part: VertexSet::from_iter(4, [0]),
            cluster_part: VertexSet::from_iter(4, [2, 3]),
        };
        assert!(verify_2_unipolar(&c4, &short).is_err());
    }

    #[test]
    fn unipolar_search_examples() {
        let k5 = named(NamedGraph::Complete(5));
        let p = find_2_unipolar_partition(&k5, DEFAULT_UNIPOLAR_CAP)
            .unwrap()
            .unwrap();
        assert_eq!(p.clique_part.len(), 5);
        assert!(p.cluster_part.is_empty());

        let c5 = named(NamedGraph::Cycle(5));
        assert!(find_2_unipolar_partition(&c5, DEFAULT_UNIPOLAR_CAP)
            .unwrap()
            .is_none());

        assert!(matches!(
            find_2_unipolar_partition(&Graph::new(17), DEFAULT_UNIPOLAR_CAP),
            Err(Error::CapExceeded { .. })
        ));
    }
}
