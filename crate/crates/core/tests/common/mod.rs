//! Brute-force references and instance families shared by the integration
//! tests. Nothing here calls the solvers under test.
#![allow(dead_code)]

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use subcover::{Graph, Instance, VertexSet, Weight};

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn adjacency(g: &Graph) -> Vec<u32> {
    let n = g.vertex_count();
    assert!(n <= 32);
    let mut adj = vec![0u32; n];
    for (u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

fn mask_of(set: &VertexSet) -> u32 {
    set.iter().fold(0, |m, v| m | 1 << v)
}

fn members(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |v| mask >> v & 1 == 1)
}

/// Minimum measure of a terminal cover over all `2^n` subsets.
pub fn brute_opt(inst: &Instance) -> Ratio<i64> {
    let n = inst.vertex_count();
    assert!(n <= 20, "brute force limited to 20 vertices");
    let adj = adjacency(inst.graph());
    let t = mask_of(inst.terminals());
    let w: Vec<Ratio<i64>> = (0..n).map(|v| inst.weight_of(v)).collect();
    let mut best: Option<Ratio<i64>> = None;
    for s in 0u32..(1 << n) {
        let ok = members(t & !s).all(|v| adj[v] & !s == 0);
        if ok {
            let m: Ratio<i64> = members(s).map(|v| w[v]).sum();
            if best.is_none_or(|b| m < b) {
                best = Some(m);
            }
        }
    }
    best.expect("V is a cover")
}

/// Independent terminal-cover check written against raw edges.
pub fn brute_is_cover(inst: &Instance, s: &VertexSet) -> bool {
    inst.graph().edges().all(|(u, v)| {
        let touches_t = inst.terminals().contains(u) || inst.terminals().contains(v);
        !touches_t || s.contains(u) || s.contains(v)
    })
}

/// All maximal independent sets, as sorted member lists.
pub fn brute_mis(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let adj = adjacency(g);
    let mut out = Vec::new();
    for s in 0u32..(1 << n) {
        let independent = members(s).all(|v| adj[v] & s == 0);
        let maximal = (0..n).all(|v| s >> v & 1 == 1 || adj[v] & s != 0);
        if independent && maximal {
            out.push(members(s).collect());
        }
    }
    out.sort();
    out
}

fn subsets_of_size(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(
        start: usize,
        n: usize,
        k: usize,
        cur: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            if rec(v + 1, n, k, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(0, n, k, &mut Vec::new(), f)
}

/// Whether `g` has an induced linear forest whose path components have the
/// given vertex counts (e.g. `[1, 2, 3]` for `P1+P2+P3`).
pub fn brute_has_linear_forest(g: &Graph, paths: &[usize]) -> bool {
    let mut want: Vec<usize> = paths.to_vec();
    want.sort();
    let k: usize = want.iter().sum();
    let n = g.vertex_count();
    if k > n {
        return false;
    }
    let adj = adjacency(g);
    subsets_of_size(n, k, &mut |sub| {
        let mask: u32 = sub.iter().fold(0, |m, &v| m | 1 << v);
        let deg = |v: usize| (adj[v] & mask).count_ones();
        if sub.iter().any(|&v| deg(v) > 2) {
            return false;
        }
        let mut seen = 0u32;
        let mut sizes = Vec::new();
        for &s in sub {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp = 1u32 << s;
            loop {
                let grown = members(comp).fold(comp, |c, v| c | (adj[v] & mask));
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            seen |= comp;
            let size = comp.count_ones() as usize;
            let edges: u32 = members(comp)
                .map(|v| (adj[v] & mask).count_ones())
                .sum::<u32>()
                / 2;
            if edges as usize != size - 1 {
                return false; // a cycle
            }
            sizes.push(size);
        }
        sizes.sort();
        sizes == want
    })
}

pub fn brute_has_claw(g: &Graph) -> bool {
    (0..g.vertex_count()).any(|c| {
        let nb = g.neighbours(c).to_vec();
        nb.iter().enumerate().any(|(i, &a)| {
            nb[i + 1..].iter().enumerate().any(|(j, &b)| {
                !g.has_edge(a, b)
                    && nb[i + j + 2..]
                        .iter()
                        .any(|&d| !g.has_edge(a, d) && !g.has_edge(b, d))
            })
        })
    })
}

pub fn brute_has_diamond(g: &Graph) -> bool {
    g.edges().any(|(u, v)| {
        let common = g.neighbours(u).intersection(g.neighbours(v)).to_vec();
        common
            .iter()
            .enumerate()
            .any(|(i, &a)| common[i + 1..].iter().any(|&b| !g.has_edge(a, b)))
    })
}

/// Minimum vertex cover size of `g` by subset enumeration.
pub fn brute_vc(g: &Graph) -> u64 {
    let n = g.vertex_count();
    assert!(n <= 24, "brute force limited to 24 vertices");
    let edges: Vec<(usize, usize)> = g.edges().collect();
    (0u32..(1 << n))
        .filter(|s| {
            edges
                .iter()
                .all(|&(u, v)| s >> u & 1 == 1 || s >> v & 1 == 1)
        })
        .map(|s| s.count_ones() as u64)
        .min()
        .unwrap_or(0)
}

/// Largest induced matching among crossing edges of `(a, V \ a)`.
pub fn brute_cut_mim(g: &Graph, a: &VertexSet) -> usize {
    let adj = adjacency(g);
    let am = mask_of(a);
    let edges: Vec<(usize, usize)> = g
        .edges()
        .filter(|&(u, v)| (am >> u & 1) != (am >> v & 1))
        .map(|(u, v)| if am >> u & 1 == 1 { (u, v) } else { (v, u) })
        .collect();
    assert!(edges.len() <= 22);
    let mut best = 0;
    for pick in 0u32..(1 << edges.len()) {
        let chosen: Vec<(usize, usize)> = members(pick).map(|i| edges[i]).collect();
        let ok = chosen.iter().enumerate().all(|(i, &(a1, b1))| {
            chosen[i + 1..].iter().all(|&(a2, b2)| {
                a1 != a2 && b1 != b2 && adj[a1] >> b2 & 1 == 0 && adj[a2] >> b1 & 1 == 0
            })
        });
        if ok {
            best = best.max(chosen.len());
        }
    }
    best
}

/// `d`-neighbour signature of `x ⊆ a`, computed directly.
pub fn brute_signature(g: &Graph, a: &VertexSet, x: &[usize], d: usize) -> Vec<usize> {
    (0..g.vertex_count())
        .filter(|v| !a.contains(*v))
        .map(|v| x.iter().filter(|&&u| g.has_edge(u, v)).count().min(d))
        .collect()
}

/// Number of `d`-neighbour classes of subsets of `a`.
pub fn brute_nec(g: &Graph, a: &VertexSet, d: usize) -> usize {
    let items = a.to_vec();
    let mut sigs = std::collections::HashSet::new();
    for pick in 0u32..(1 << items.len()) {
        let x: Vec<usize> = members(pick).map(|i| items[i]).collect();
        sigs.insert(brute_signature(g, a, &x, d));
    }
    sigs.len()
}

pub fn brute_t_independent(g: &Graph, t: &VertexSet, x: &VertexSet) -> bool {
    g.edges()
        .all(|(u, v)| !(x.contains(u) && x.contains(v)) || !(t.contains(u) || t.contains(v)))
}

pub fn random_graph(n: usize, p: f64, r: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if r.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

pub fn random_subset(n: usize, frac: f64, r: &mut ChaCha8Rng) -> VertexSet {
    VertexSet::from_iter(n, (0..n).filter(|_| r.gen_bool(frac)))
}

pub fn random_weights(n: usize, r: &mut ChaCha8Rng) -> Vec<Weight> {
    (0..n)
        .map(|_| Weight::new(r.gen_range(1..=9), r.gen_range(1..=4)))
        .collect()
}

/// Instance with `G[T]` `sP2`-free, found by sampling dense terminal parts
/// (or an independent terminal set when `s = 1`).
pub fn sp2_free_instance(n: usize, s: usize, r: &mut ChaCha8Rng) -> Instance {
    loop {
        let t = random_subset(n, r.gen_range(0.3..0.9), r);
        let inside = if s == 1 { 0.0 } else { r.gen_range(0.5..0.95) };
        let across = r.gen_range(0.1..0.7);
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in (u + 1)..n {
                let p = match (t.contains(u), t.contains(v)) {
                    (true, true) => inside,
                    _ => across,
                };
                if r.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        let (gt, _) = g.induced_subgraph(&t);
        if !brute_has_linear_forest(&gt, &vec![2; s]) {
            return Instance::new(g, t).unwrap();
        }
    }
}

/// Random `(sP1+P2+P3)`-free instance. Mixes dense random graphs with
/// "cliques plus attachments" graphs so that the terminals far from an
/// outside edge often split into three or more cliques.
pub fn p2p3_free_instance(n: usize, s: usize, r: &mut ChaCha8Rng) -> Instance {
    let mut pattern = vec![1; s];
    pattern.extend([2, 3]);
    loop {
        let roll = r.gen_range(0..3);
        let (g, t) = if roll == 0 || n < 8 {
            let g = random_graph(n, r.gen_range(0.55..0.95), r);
            let t = random_subset(n, r.gen_range(0.2..1.0), r);
            (g, t)
        } else if roll == 1 {
            cliques_with_attachments(n, r)
        } else {
            many_cliques(n, r)
        };
        if !brute_has_linear_forest(&g, &pattern) {
            return Instance::new(g, t).unwrap();
        }
    }
}

fn cliques_with_attachments(n: usize, r: &mut ChaCha8Rng) -> (Graph, VertexSet) {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(r);
    let mut g = Graph::new(n);
    let mut t = VertexSet::new(n);
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    let terminal_budget = r.gen_range(n / 3..=(2 * n / 3).max(n / 3 + 1));
    while i < terminal_budget.min(n) {
        let size = r.gen_range(1..=3).min(terminal_budget - i);
        let c: Vec<usize> = order[i..i + size].to_vec();
        for (a, &u) in c.iter().enumerate() {
            t.insert(u);
            for &v in &c[a + 1..] {
                g.add_edge(u, v);
            }
        }
        cliques.push(c);
        i += size;
    }
    let outside: Vec<usize> = order[i..].to_vec();
    for &w in &outside {
        for c in &cliques {
            match r.gen_range(0..4) {
                0 => c.iter().for_each(|&u| g.add_edge(w, u)),
                1 => c.iter().skip(1).for_each(|&u| g.add_edge(w, u)),
                _ => {}
            }
        }
    }
    let p = r.gen_range(0.3..1.0);
    for (a, &u) in outside.iter().enumerate() {
        for &v in &outside[a + 1..] {
            if r.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    (g, t)
}

/// Random bipartite graph on `left + right` vertices (left first).
pub fn random_bipartite(left: usize, right: usize, p: f64, r: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::new(left + right);
    for u in 0..left {
        for v in left..left + right {
            if r.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Three or more terminal cliques, a few isolated terminals, and
/// non-terminals that are complete, nearly complete or blind to each clique,
/// with a dense non-terminal part. Needs `n >= 8`.
fn many_cliques(n: usize, r: &mut ChaCha8Rng) -> (Graph, VertexSet) {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(r);
    let mut g = Graph::new(n);
    let mut t = VertexSet::new(n);
    let k = r.gen_range(3..=((n - 2) / 2).min(4));
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    for c in 0..k {
        let room = n - 2 - i - 2 * (k - c - 1);
        let size = r.gen_range(2..=3).min(room);
        let members: Vec<usize> = order[i..i + size].to_vec();
        for (a, &u) in members.iter().enumerate() {
            t.insert(u);
            for &v in &members[a + 1..] {
                g.add_edge(u, v);
            }
        }
        cliques.push(members);
        i += size;
    }
    let loose = r.gen_range(0..=(n - 2 - i).min(2));
    let isolated: Vec<usize> = order[i..i + loose].to_vec();
    isolated.iter().for_each(|&v| t.insert(v));
    i += loose;
    let outside: Vec<usize> = order[i..].to_vec();
    for (idx, &w) in outside.iter().enumerate() {
        // the first two non-terminals stay blind to the cliques
        if idx < 2 {
            continue;
        }
        let kind = r.gen_range(0..3);
        for (ci, c) in cliques.iter().enumerate() {
            match kind {
                0 => {
                    let skip = r.gen_range(0..=c.len());
                    for (j, &u) in c.iter().enumerate() {
                        if j != skip {
                            g.add_edge(w, u);
                        }
                    }
                }
                1 if ci == 0 => c.iter().for_each(|&u| g.add_edge(w, u)),
                _ => {}
            }
        }
        for &z in &isolated {
            if r.gen_bool(0.4) {
                g.add_edge(w, z);
            }
        }
    }
    let p = r.gen_range(0.7..1.0);
    for (a, &u) in outside.iter().enumerate() {
        for &v in &outside[a + 1..] {
            if a == 0 || r.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    (g, t)
}
