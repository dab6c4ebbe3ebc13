//! Subset Vertex Cover instances, solutions, the instance/solution file
//! formats, and the basic cover predicates.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::set::VertexSet;

/// Exact positive vertex weight.
pub type Weight = Ratio<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    graph: Graph,
    terminals: VertexSet,
    weights: Option<Vec<Weight>>,
    budget: Option<u64>,
}

impl Instance {
    pub fn new(graph: Graph, terminals: VertexSet) -> Result<Self> {
        let n = graph.vertex_count();
        if terminals.bound() > n {
            return Err(Error::VertexOutOfRange {
                vertex: terminals.bound() - 1,
                n,
            });
        }
        let terminals = VertexSet::from_iter(n, terminals.iter());
        Ok(Instance {
            graph,
            terminals,
            weights: None,
            budget: None,
        })
    }

    pub fn from_terminals(graph: Graph, terminals: &[usize]) -> Result<Self> {
        let n = graph.vertex_count();
        if let Some(&v) = terminals.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        Self::new(graph, VertexSet::from_iter(n, terminals.iter().copied()))
    }

    pub fn with_weights(mut self, weights: Vec<Weight>) -> Result<Self> {
        if weights.len() != self.graph.vertex_count() {
            return Err(Error::Params(format!(
                "{} weights for {} vertices",
                weights.len(),
                self.graph.vertex_count()
            )));
        }
        if let Some(v) = weights.iter().position(|w| *w <= Weight::zero()) {
            return Err(Error::Params(format!("vertex {v} has nonpositive weight")));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn with_budget(mut self, budget: Option<u64>) -> Self {
        self.budget = budget;
        self
    }

    pub fn without_weights(mut self) -> Self {
        self.weights = None;
        self
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn terminals(&self) -> &VertexSet {
        &self.terminals
    }

    pub fn weights(&self) -> Option<&[Weight]> {
        self.weights.as_deref()
    }

    pub fn budget(&self) -> Option<u64> {
        self.budget
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn non_terminals(&self) -> VertexSet {
        self.terminals.complement()
    }

    pub fn weight_of(&self, v: usize) -> Weight {
        self.weights.as_ref().map_or_else(Weight::one, |w| w[v])
    }

    /// Integer weights scaled by the common denominator; all ones when unweighted.
    pub fn scaled_weights(&self) -> ScaledWeights {
        match &self.weights {
            None => ScaledWeights::unit(self.vertex_count()),
            Some(w) => ScaledWeights::from_rationals(w),
        }
    }

    pub fn measure_of(&self, set: &VertexSet) -> Measure {
        match &self.weights {
            None => Measure::Size(set.len()),
            Some(w) => Measure::Weight(set.iter().map(|v| w[v]).sum()),
        }
    }

    /// Same instance on a different graph over the same vertex set.
    pub(crate) fn with_graph(&self, graph: Graph) -> Instance {
        assert_eq!(graph.vertex_count(), self.vertex_count());
        Instance {
            graph,
            terminals: self.terminals.clone(),
            weights: self.weights.clone(),
            budget: self.budget,
        }
    }

    /// Sub-instance induced by `keep`, with the map from new to old indices.
    pub fn induced(&self, keep: &VertexSet) -> (Instance, Vec<usize>) {
        let (graph, map) = self.graph.induced_subgraph(keep);
        let n = map.len();
        let terminals =
            VertexSet::from_iter(n, (0..n).filter(|&i| self.terminals.contains(map[i])));
        let weights = self
            .weights
            .as_ref()
            .map(|w| map.iter().map(|&v| w[v]).collect());
        (
            Instance {
                graph,
                terminals,
                weights,
                budget: None,
            },
            map,
        )
    }
}

/// Vertex weights as nonnegative integers sharing one denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledWeights {
    pub values: Vec<u64>,
    pub denominator: i64,
}

impl ScaledWeights {
    pub fn unit(n: usize) -> Self {
        ScaledWeights {
            values: vec![1; n],
            denominator: 1,
        }
    }

    pub fn from_rationals(weights: &[Weight]) -> Self {
        let denominator = weights.iter().fold(1i64, |acc, w| acc.lcm(w.denom()));
        let values = weights
            .iter()
            .map(|w| {
                let scaled = *w * Weight::from_integer(denominator);
                debug_assert!(scaled.is_integer());
                u64::try_from(scaled.to_integer()).expect("weights are positive")
            })
            .collect();
        ScaledWeights {
            values,
            denominator,
        }
    }

    pub fn is_uniform(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }

    pub fn sum(&self, set: &VertexSet) -> u64 {
        set.iter().map(|v| self.values[v]).sum()
    }

    pub fn total(&self) -> u64 {
        self.values.iter().sum()
    }

    pub fn restrict(&self, map: &[usize]) -> ScaledWeights {
        ScaledWeights {
            values: map.iter().map(|&v| self.values[v]).collect(),
            denominator: self.denominator,
        }
    }
}

/// Size of a cover (unweighted instances) or its exact total weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Measure {
    Size(usize),
    Weight(Weight),
}

impl Measure {
    pub fn as_ratio(&self) -> Weight {
        match self {
            Measure::Size(s) => Weight::from_integer(*s as i64),
            Measure::Weight(w) => *w,
        }
    }
}

impl PartialOrd for Measure {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.as_ratio().cmp(&other.as_ratio()))
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Measure::Size(s) => write!(f, "{s}"),
            Measure::Weight(w) if w.is_integer() => write!(f, "{}", w.numer()),
            Measure::Weight(w) => write!(f, "{}/{}", w.numer(), w.denom()),
        }
    }
}

/// Which algorithm produced a solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Oracle,
    OracleReduced,
    VertexCover,
    Sp2,
    P2p3,
    PeelP2p3,
    Mim,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Algorithm::Oracle => "oracle",
            Algorithm::OracleReduced => "oracle-reduced",
            Algorithm::VertexCover => "vertex-cover",
            Algorithm::Sp2 => "sp2",
            Algorithm::P2p3 => "p2p3",
            Algorithm::PeelP2p3 => "peel-p2p3",
            Algorithm::Mim => "mim",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableStat {
    pub node: usize,
    pub cut_size: usize,
    pub entries: usize,
    pub classes: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    /// Search-tree nodes (oracle) or top-level branches (structural solvers).
    pub branches: u64,
    pub candidates: u64,
    pub konig_calls: u64,
    pub enumerated: u64,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub tables: Vec<TableStat>,
}

impl Stats {
    /// Adds the counters of `other` into `self`.
    pub fn absorb(&mut self, other: &Stats) {
        self.branches += other.branches;
        self.candidates += other.candidates;
        self.konig_calls += other.konig_calls;
        self.enumerated += other.enumerated;
        self.tables.extend(other.tables.iter().cloned());
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub algorithm: Algorithm,
    pub stats: Stats,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionCover {
    vertices: VertexSet,
    measure: Measure,
    /// Present when the instance carried a budget `k`.
    pub within_budget: Option<bool>,
    pub provenance: Provenance,
}

impl SolutionCover {
    pub fn new(inst: &Instance, vertices: VertexSet, algorithm: Algorithm, stats: Stats) -> Self {
        let vertices = VertexSet::from_iter(inst.vertex_count(), vertices.iter());
        let measure = inst.measure_of(&vertices);
        let within_budget = inst
            .budget()
            .map(|k| measure.as_ratio() <= Weight::from_integer(k as i64));
        SolutionCover {
            vertices,
            measure,
            within_budget,
            provenance: Provenance { algorithm, stats },
        }
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn measure(&self) -> Measure {
        self.measure
    }

    pub fn algorithm(&self) -> Algorithm {
        self.provenance.algorithm
    }

    /// Solution file text: `s <measure>` then one 1-based `v` line per vertex.
    pub fn to_solution_text(&self) -> String {
        let mut out = format!("s {}\n", self.measure);
        for v in self.vertices.iter() {
            out.push_str(&format!("v {}\n", v + 1));
        }
        out
    }
}

/// Parsed solution file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionFile {
    pub measure: Option<String>,
    pub vertices: Vec<usize>,
}

pub fn parse_solution(text: &str) -> Result<SolutionFile> {
    let mut measure = None;
    let mut vertices = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw);
        let mut parts = line.split_whitespace();
        match parts.next() {
            None => continue,
            Some("s") => {
                let m = parts
                    .next()
                    .ok_or_else(|| Error::parse(line_no, "missing measure"))?;
                measure = Some(m.to_string());
            }
            Some("v") => {
                let v: usize = parse_field(parts.next(), line_no, "vertex")?;
                if v == 0 {
                    return Err(Error::parse(line_no, "vertices are 1-based"));
                }
                vertices.push(v - 1);
            }
            Some(other) => {
                return Err(Error::parse(
                    line_no,
                    format!("unknown line type `{other}`"),
                ));
            }
        }
    }
    Ok(SolutionFile { measure, vertices })
}

/// True iff `s` contains an end-vertex of every edge incident to a terminal.
pub fn is_t_vertex_cover(inst: &Instance, s: &VertexSet) -> Result<bool> {
    let n = inst.vertex_count();
    if s.bound() > n {
        return Err(Error::VertexOutOfRange {
            vertex: s.bound() - 1,
            n,
        });
    }
    let s = VertexSet::from_iter(n, s.iter());
    Ok(inst
        .terminals()
        .iter()
        .filter(|&t| !s.contains(t))
        .all(|t| inst.graph().neighbours(t).is_subset(&s)))
}

/// Drops every edge with both ends outside the terminal set. The optimum is
/// unchanged, and a set is a terminal cover of the input exactly when it is
/// one of the result.
pub fn restrict_to_t_incident(inst: &Instance) -> Instance {
    let g = inst.graph();
    let t = inst.terminals();
    let mut h = Graph::new(g.vertex_count());
    for (u, v) in g.edges() {
        if t.contains(u) || t.contains(v) {
            h.add_edge(u, v);
        }
    }
    h.set_labels(g.labels().map(<[String]>::to_vec));
    inst.with_graph(h)
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn parse_field<T: FromStr>(field: Option<&str>, line: usize, what: &str) -> Result<T> {
    let raw = field.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    raw.parse()
        .map_err(|_| Error::parse(line, format!("bad {what} `{raw}`")))
}

fn parse_weight(raw: &str, line: usize) -> Result<Weight> {
    let (num, den) = match raw.split_once('/') {
        Some((a, b)) => (a, b),
        None => (raw, "1"),
    };
    let num: i64 = num
        .parse()
        .map_err(|_| Error::parse(line, format!("bad weight `{raw}`")))?;
    let den: i64 = den
        .parse()
        .map_err(|_| Error::parse(line, format!("bad weight `{raw}`")))?;
    if den <= 0 || num <= 0 {
        return Err(Error::parse(
            line,
            format!("weight `{raw}` must be positive"),
        ));
    }
    Ok(Weight::new(num, den))
}

/// Parses the line-oriented instance format:
///
/// ```text
/// p svc <n> <m>
/// e <u> <v>        (m lines, 1-based)
/// t <v>            (terminals)
/// w <v> <num>[/<den>]
/// k <budget>
/// ```
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut header: Option<(usize, usize)> = None;
    let mut graph = Graph::new(0);
    let mut edges_seen = 0usize;
    let mut terminals = Vec::new();
    let mut weights: Option<Vec<Weight>> = None;
    let mut budget = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = strip_comment(raw);
        let mut parts = line.split_whitespace();
        let Some(kind) = parts.next() else { continue };

        if kind != "p" && header.is_none() {
            return Err(Error::parse(
                line_no,
                "expected `p svc <n> <m>` header first",
            ));
        }
        let n = header.map_or(0, |(n, _)| n);
        let vertex = |field: Option<&str>| -> Result<usize> {
            let v: usize = parse_field(field, line_no, "vertex")?;
            if v == 0 || v > n {
                return Err(Error::parse(
                    line_no,
                    format!("vertex {v} out of range 1..={n}"),
                ));
            }
            Ok(v - 1)
        };

        match kind {
            "p" => {
                if header.is_some() {
                    return Err(Error::parse(line_no, "duplicate header"));
                }
                if parts.next() != Some("svc") {
                    return Err(Error::parse(line_no, "malformed header, expected `p svc`"));
                }
                let n: usize = parse_field(parts.next(), line_no, "vertex count")?;
                let m: usize = parse_field(parts.next(), line_no, "edge count")?;
                header = Some((n, m));
                graph = Graph::new(n);
            }
            "e" => {
                let u = vertex(parts.next())?;
                let v = vertex(parts.next())?;
                if u == v {
                    return Err(Error::parse(
                        line_no,
                        format!("self-loop at vertex {}", u + 1),
                    ));
                }
                if graph.has_edge(u, v) {
                    return Err(Error::parse(
                        line_no,
                        format!("duplicate edge {} {}", u + 1, v + 1),
                    ));
                }
                graph.add_edge(u, v);
                edges_seen += 1;
            }
            "t" => {
                let v = vertex(parts.next())?;
                if terminals.contains(&v) {
                    return Err(Error::parse(
                        line_no,
                        format!("duplicate terminal {}", v + 1),
                    ));
                }
                terminals.push(v);
            }
            "w" => {
                let v = vertex(parts.next())?;
                let raw = parts
                    .next()
                    .ok_or_else(|| Error::parse(line_no, "missing weight"))?;
                let w = parse_weight(raw, line_no)?;
                weights.get_or_insert_with(|| vec![Weight::one(); n])[v] = w;
            }
            "k" => {
                budget = Some(parse_field::<u64>(parts.next(), line_no, "budget")?);
            }
            other => {
                return Err(Error::parse(
                    line_no,
                    format!("unknown line type `{other}`"),
                ));
            }
        }
        if parts.next().is_some() {
            return Err(Error::parse(line_no, "trailing fields"));
        }
    }

    let (n, m) = header.ok_or_else(|| Error::parse(last_line.max(1), "missing header"))?;
    if edges_seen != m {
        return Err(Error::parse(
            last_line.max(1),
            format!("header declares {m} edges but {edges_seen} were given"),
        ));
    }
    graph.set_labels(Some((1..=n).map(|v| v.to_string()).collect()));
    let mut inst = Instance::from_terminals(graph, &terminals)?.with_budget(budget);
    if let Some(w) = weights {
        inst = inst.with_weights(w)?;
    }
    Ok(inst)
}

/// Canonical serialization; `parse_instance` inverts it exactly.
pub fn serialize_instance(inst: &Instance) -> String {
    let g = inst.graph();
    let mut out = format!("p svc {} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    for t in inst.terminals().iter() {
        out.push_str(&format!("t {}\n", t + 1));
    }
    if let Some(w) = inst.weights() {
        for (v, w) in w.iter().enumerate() {
            if w.is_integer() {
                out.push_str(&format!("w {} {}\n", v + 1, w.numer()));
            } else {
                out.push_str(&format!("w {} {}/{}\n", v + 1, w.numer(), w.denom()));
            }
        }
    }
    if let Some(k) = inst.budget() {
        out.push_str(&format!("k {k}\n"));
    }
    out
}
