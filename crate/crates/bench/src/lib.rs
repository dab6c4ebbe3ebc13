//! Deterministic instance families for the criterion benches.

pub use subcover::*;

use subcover::generators::{random_instance, RandomParams};
use subcover::recognition::{contains_induced, sp2};

/// Random instance on `n` vertices, no weights.
pub fn random(n: usize, p: f64, seed: u64) -> Instance {
    random_instance(&RandomParams::new(n, p, 0.5, seed)).expect("valid parameters")
}

/// Dense random graph whose terminal set is shrunk until `G[T]` is `sP2`-free.
pub fn sp2_free(n: usize, s: usize, seed: u64) -> Instance {
    let inst = random_instance(&RandomParams::new(n, 0.75, 0.6, seed)).expect("valid parameters");
    let mut t: Vec<usize> = inst.terminals().iter().collect();
    loop {
        let set = VertexSet::from_iter(n, t.iter().copied());
        let (gt, _) = inst.graph().induced_subgraph(&set);
        if contains_induced(&gt, &sp2(s))
            .expect("small pattern")
            .is_none()
        {
            return Instance::new(inst.graph().clone(), set).expect("terminals in range");
        }
        t.pop();
    }
}

/// Complete multipartite graph with parts of size `part`; such graphs have no
/// induced `P1+P2`, so they are `(P2+P3)`-free. Every other vertex is a terminal.
pub fn multipartite(parts: usize, part: usize) -> Instance {
    let n = parts * part;
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if u / part != v / part {
                g.add_edge(u, v);
            }
        }
    }
    Instance::from_terminals(g, &(0..n).step_by(2).collect::<Vec<_>>()).expect("terminals in range")
}
