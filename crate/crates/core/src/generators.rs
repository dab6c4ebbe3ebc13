//! Instance generators: the subdivision/augmentation reductions with
//! optimum certificates, and seeded random instances.
//!
//! Every reduction output `G'` with terminals `T'` satisfies
//! `opt(G', T') = vc(source) + offset`, recorded in a [`ReductionTrace`].

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{parse_instance, serialize_instance, Instance, Weight};
use crate::recognition::{contains_induced, parse_h_spec, UnipolarPartition};
use crate::set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Unipolar(UnipolarPartition),
    /// Properties checked on the generated graph at construction time.
    ClassClaims {
        claw_free: bool,
        diamond_free: bool,
        max_degree: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub source: Graph,
    /// Optimum shift: `opt(generated) = vc(source) + offset`.
    pub offset: u64,
    /// `vertex_map[v]` is the generated vertex standing for source vertex `v`.
    pub vertex_map: Vec<usize>,
    pub terminals: VertexSet,
    /// Minimum vertex cover size of the source, when known.
    pub vc: Option<u64>,
    pub certificate: Option<Certificate>,
}

impl ReductionTrace {
    /// The optimum of the generated instance, if the source optimum is known.
    pub fn claimed_optimum(&self) -> Option<u64> {
        self.vc.map(|vc| vc + self.offset)
    }
}

/// Replaces every edge `uv` by a path `u - w_uv - w_vu - v`. Source vertices
/// keep their indices; edge `e` (in lexicographic order) gets `n + 2e` on the
/// `u` side and `n + 2e + 1` on the `v` side.
pub fn two_subdivision(g: &Graph) -> (Graph, ReductionTrace) {
    let n = g.vertex_count();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut out = Graph::new(n + 2 * edges.len());
    for (e, &(u, v)) in edges.iter().enumerate() {
        let wu = n + 2 * e;
        let wv = wu + 1;
        out.add_edge(u, wu);
        out.add_edge(wu, wv);
        out.add_edge(wv, v);
    }
    let trace = ReductionTrace {
        source: g.clone(),
        offset: edges.len() as u64,
        vertex_map: (0..n).collect(),
        terminals: out.vertices(),
        vc: None,
        certificate: None,
    };
    (out, trace)
}

/// Adds the edges `f` inside the independent set `i`.
pub fn augment(g: &Graph, i: &VertexSet, f: &[(usize, usize)]) -> Result<Graph> {
    let n = g.vertex_count();
    if i.bound() > n {
        return Err(Error::VertexOutOfRange {
            vertex: i.bound() - 1,
            n,
        });
    }
    if !g.is_independent(i) {
        return Err(Error::InvalidConstruction(
            "augmentation set is not independent".into(),
        ));
    }
    let mut out = g.clone();
    for &(u, v) in f {
        if !i.contains(u) || !i.contains(v) {
            return Err(Error::InvalidConstruction(format!(
                "augmentation edge {u}-{v} leaves the independent set"
            )));
        }
        if !out.try_add_edge(u, v)? {
            return Err(Error::InvalidConstruction(format!(
                "augmentation edge {u}-{v} given twice"
            )));
        }
    }
    Ok(out)
}

/// Claw-free, diamond-free, subcubic instances from a subcubic source: the
/// 4-subdivision with, at each degree-3 source vertex, an edge between its
/// two lowest-indexed neighbours. Terminals are everything except the
/// neighbours of source vertices.
pub fn gen_claw_diamond(source: &Graph) -> Result<(Instance, ReductionTrace)> {
    if source.max_degree() > 3 {
        return Err(Error::InvalidConstruction(format!(
            "source has maximum degree {}, expected at most 3",
            source.max_degree()
        )));
    }
    let n = source.vertex_count();
    let m = source.edge_count() as u64;
    let (once, _) = two_subdivision(source);
    let (twice, _) = two_subdivision(&once);

    let originals = VertexSet::from_iter(twice.vertex_count(), 0..n);
    let w = twice.neighbourhood_of(&originals);
    let mut extra = Vec::new();
    for u in 0..n {
        if twice.degree(u) == 3 {
            let picks: Vec<usize> = twice.neighbours(u).iter().take(2).collect();
            extra.push((picks[0], picks[1]));
        }
    }
    let graph = augment(&twice, &w, &extra)?;

    let claw_free = contains_induced(&graph, &parse_h_spec("claw")?)?.is_none();
    let diamond_free = contains_induced(&graph, &parse_h_spec("diamond")?)?.is_none();
    let max_degree = graph.max_degree();
    if !(claw_free && diamond_free && max_degree <= 3) {
        return Err(Error::InvalidConstruction(format!(
            "gadget check failed: claw_free={claw_free} diamond_free={diamond_free} max_degree={max_degree}"
        )));
    }

    let terminals = w.complement();
    let inst = Instance::new(graph, terminals.clone())?;
    let trace = ReductionTrace {
        source: source.clone(),
        offset: m + 3 * m,
        vertex_map: (0..n).collect(),
        terminals,
        vc: None,
        certificate: Some(Certificate::ClassClaims {
            claw_free,
            diamond_free,
            max_degree,
        }),
    };
    Ok((inst, trace))
}

/// 2-unipolar instances whose terminals induce a perfect matching: the
/// 2-subdivision with the source vertices turned into a clique, and the
/// subdivision vertices as terminals.
pub fn gen_two_unipolar(source: &Graph) -> Result<(Instance, ReductionTrace)> {
    let n = source.vertex_count();
    let (sub, base) = two_subdivision(source);
    let originals = VertexSet::from_iter(sub.vertex_count(), 0..n);
    let clique_edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    let graph = augment(&sub, &originals, &clique_edges)?;
    let terminals = originals.complement();

    let (tgraph, _) = graph.induced_subgraph(&terminals);
    let matching = (0..tgraph.vertex_count()).all(|v| tgraph.degree(v) == 1);
    if !matching {
        return Err(Error::InvalidConstruction(
            "terminals do not induce a perfect matching".into(),
        ));
    }

    let inst = Instance::new(graph, terminals.clone())?;
    let trace = ReductionTrace {
        source: source.clone(),
        offset: base.offset,
        vertex_map: (0..n).collect(),
        terminals: terminals.clone(),
        vc: None,
        certificate: Some(Certificate::Unipolar(UnipolarPartition {
            clique_part: originals,
            cluster_part: terminals,
        })),
    };
    Ok((inst, trace))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightRange {
    pub max_numerator: i64,
    pub max_denominator: i64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomParams {
    pub n: usize,
    pub edge_probability: f64,
    /// Fraction of vertices (rounded) placed in `T`.
    pub terminal_fraction: f64,
    pub weights: Option<WeightRange>,
    pub seed: u64,
}

impl RandomParams {
    pub fn new(n: usize, edge_probability: f64, terminal_fraction: f64, seed: u64) -> Self {
        RandomParams {
            n,
            edge_probability,
            terminal_fraction,
            weights: None,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        let prob = |p: f64| (0.0..=1.0).contains(&p);
        if !prob(self.edge_probability) {
            return Err(Error::Params(format!(
                "edge probability {} outside [0, 1]",
                self.edge_probability
            )));
        }
        if !prob(self.terminal_fraction) {
            return Err(Error::Params(format!(
                "terminal fraction {} outside [0, 1]",
                self.terminal_fraction
            )));
        }
        if let Some(w) = self.weights {
            if w.max_numerator < 1 || w.max_denominator < 1 {
                return Err(Error::Params("weight range must be positive".into()));
            }
        }
        Ok(())
    }
}

pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Random graph of maximum degree 3: candidate edges in shuffled order, each
/// kept with probability `p` when both ends still have room.
pub fn random_subcubic<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(rng);
    let mut g = Graph::new(n);
    for (u, v) in pairs {
        if g.degree(u) < 3 && g.degree(v) < 3 && rng.gen_bool(p) {
            g.add_edge(u, v);
        }
    }
    g
}

/// Seeded random instance; the same parameters always give the same instance.
pub fn random_instance(params: &RandomParams) -> Result<Instance> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let graph = random_graph(params.n, params.edge_probability, &mut rng);
    let k = (params.terminal_fraction * params.n as f64).round() as usize;
    let mut order: Vec<usize> = (0..params.n).collect();
    order.shuffle(&mut rng);
    let mut inst = Instance::from_terminals(graph, &order[..k.min(params.n)])?;
    if let Some(range) = params.weights {
        let weights = (0..params.n)
            .map(|_| {
                Weight::new(
                    rng.gen_range(1..=range.max_numerator),
                    rng.gen_range(1..=range.max_denominator),
                )
            })
            .collect();
        inst = inst.with_weights(weights)?;
    }
    Ok(inst)
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum CertificateFile {
    Unipolar {
        clique_part: Vec<usize>,
        cluster_part: Vec<usize>,
    },
    ClassClaims {
        claw_free: bool,
        diamond_free: bool,
        max_degree: usize,
    },
}

/// On-disk trace sidecar. Vertex numbers are 1-based like the instance
/// format, and `source` holds the source graph in instance-file syntax.
#[derive(Serialize, Deserialize)]
struct TraceFile {
    source: String,
    offset: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    vc: Option<u64>,
    vertex_map: Vec<usize>,
    terminals: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    certificate: Option<CertificateFile>,
}

fn one_based(set: &VertexSet) -> Vec<usize> {
    set.iter().map(|v| v + 1).collect()
}

fn from_one_based(n: usize, items: &[usize]) -> Result<VertexSet> {
    if let Some(&bad) = items.iter().find(|&&v| v == 0 || v > n) {
        return Err(Error::Params(format!(
            "trace vertex {bad} out of range 1..={n}"
        )));
    }
    Ok(VertexSet::from_iter(n, items.iter().map(|v| v - 1)))
}

impl ReductionTrace {
    pub fn to_json(&self) -> String {
        let source = Instance::new(
            self.source.clone(),
            VertexSet::new(self.source.vertex_count()),
        )
        .expect("empty terminal set is valid");
        let file = TraceFile {
            source: serialize_instance(&source),
            offset: self.offset,
            vc: self.vc,
            vertex_map: self.vertex_map.iter().map(|v| v + 1).collect(),
            terminals: one_based(&self.terminals),
            certificate: self.certificate.as_ref().map(|c| match c {
                Certificate::Unipolar(p) => CertificateFile::Unipolar {
                    clique_part: one_based(&p.clique_part),
                    cluster_part: one_based(&p.cluster_part),
                },
                Certificate::ClassClaims {
                    claw_free,
                    diamond_free,
                    max_degree,
                } => CertificateFile::ClassClaims {
                    claw_free: *claw_free,
                    diamond_free: *diamond_free,
                    max_degree: *max_degree,
                },
            }),
        };
        serde_json::to_string_pretty(&file).expect("trace serializes") + "\n"
    }

    /// Parses a sidecar; `generated_n` is the vertex count of the generated
    /// instance, used to validate terminal and certificate vertex numbers.
    pub fn from_json(text: &str, generated_n: usize) -> Result<Self> {
        let file: TraceFile =
            serde_json::from_str(text).map_err(|e| Error::Params(format!("trace file: {e}")))?;
        let mut source = parse_instance(&file.source)?.graph().clone();
        source.set_labels(None);
        let certificate = match file.certificate {
            None => None,
            Some(CertificateFile::Unipolar {
                clique_part,
                cluster_part,
            }) => Some(Certificate::Unipolar(UnipolarPartition {
                clique_part: from_one_based(generated_n, &clique_part)?,
                cluster_part: from_one_based(generated_n, &cluster_part)?,
            })),
            Some(CertificateFile::ClassClaims {
                claw_free,
                diamond_free,
                max_degree,
            }) => Some(Certificate::ClassClaims {
                claw_free,
                diamond_free,
                max_degree,
            }),
        };
        Ok(ReductionTrace {
            source,
            offset: file.offset,
            vertex_map: file
                .vertex_map
                .iter()
                .map(|&v| {
                    v.checked_sub(1)
                        .ok_or_else(|| Error::Params("vertex 0 in trace".into()))
                })
                .collect::<Result<_>>()?,
            terminals: from_one_based(generated_n, &file.terminals)?,
            vc: file.vc,
            certificate,
        })
    }
}
