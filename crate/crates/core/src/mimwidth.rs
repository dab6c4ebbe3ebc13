//! Dynamic programming over rooted layouts. Tables are keyed by pairs of
//! 1-neighbour-equivalence representatives, so their size is governed by the
//! number of equivalence classes of each cut, and through it by mim-width.

use std::collections::{BTreeMap, HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{Algorithm, Instance, SolutionCover, Stats, TableStat};
use crate::set::VertexSet;

/// Exact `cut_mim` is used up to this many crossing edges.
pub const DEFAULT_MIM_EDGE_CAP: usize = 20;
/// Largest vertex count accepted by [`search_layout`].
pub const SEARCH_CAP: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Node {
    Leaf(usize),
    Inner(usize, usize),
}

/// Rooted binary tree whose leaves are in bijection with the vertices.
/// Nodes are stored in preorder, so node 0 is the root and children always
/// have larger indices than their parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    nodes: Vec<Node>,
    n: usize,
}

impl Layout {
    /// Rebuilds `nodes` (arbitrary numbering, rooted at `root`) in preorder,
    /// checking that it is a binary tree with one leaf per vertex of `0..n`.
    fn canonical(nodes: &[Node], root: usize, n: usize) -> Result<Layout> {
        if n == 0 {
            return Err(Error::Layout("a layout needs at least one vertex".into()));
        }
        let mut out = Vec::with_capacity(nodes.len());
        let mut seen_node = vec![false; nodes.len()];
        let mut seen_vertex = vec![false; n];
        // (old id, slot in parent to patch)
        let mut stack = vec![(root, None::<(usize, bool)>)];
        while let Some((id, patch)) = stack.pop() {
            let node = *nodes
                .get(id)
                .ok_or_else(|| Error::Layout(format!("missing node {id}")))?;
            if std::mem::replace(&mut seen_node[id], true) {
                return Err(Error::Layout(format!("node {id} has two parents")));
            }
            let new_id = out.len();
            if let Some((parent, is_left)) = patch {
                if let Node::Inner(l, r) = &mut out[parent] {
                    if is_left {
                        *l = new_id;
                    } else {
                        *r = new_id;
                    }
                }
            }
            match node {
                Node::Leaf(v) => {
                    if v >= n {
                        return Err(Error::Layout(format!("leaf vertex {} out of range", v + 1)));
                    }
                    if std::mem::replace(&mut seen_vertex[v], true) {
                        return Err(Error::Layout(format!("vertex {} on two leaves", v + 1)));
                    }
                    out.push(Node::Leaf(v));
                }
                Node::Inner(l, r) => {
                    out.push(Node::Inner(usize::MAX, usize::MAX));
                    stack.push((r, Some((new_id, false))));
                    stack.push((l, Some((new_id, true))));
                }
            }
        }
        if let Some(v) = seen_vertex.iter().position(|s| !s) {
            return Err(Error::Layout(format!("vertex {} has no leaf", v + 1)));
        }
        if let Some(id) = seen_node.iter().position(|s| !s) {
            return Err(Error::Layout(format!(
                "node {id} is unreachable from the root"
            )));
        }
        Ok(Layout { nodes: out, n })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// `V_x` for every node `x`, indexed like [`Layout::nodes`].
    pub fn cuts(&self) -> Vec<VertexSet> {
        let mut cuts = vec![VertexSet::new(self.n); self.nodes.len()];
        for x in (0..self.nodes.len()).rev() {
            match self.nodes[x] {
                Node::Leaf(v) => cuts[x].insert(v),
                Node::Inner(l, r) => cuts[x] = cuts[l].union(&cuts[r]),
            }
        }
        cuts
    }

    /// Leaf vertices from left to right.
    pub fn leaf_order(&self) -> Vec<usize> {
        self.nodes
            .iter()
            .filter_map(|node| match node {
                Node::Leaf(v) => Some(*v),
                Node::Inner(..) => None,
            })
            .collect()
    }

    pub fn check_graph(&self, g: &Graph) -> Result<()> {
        if g.vertex_count() != self.n {
            return Err(Error::Layout(format!(
                "layout has {} leaves but the graph has {} vertices",
                self.n,
                g.vertex_count()
            )));
        }
        Ok(())
    }

    /// Largest `cut_mim` over all nodes, and whether every value was exact.
    pub fn width(&self, g: &Graph) -> Result<CutMim> {
        self.check_graph(g)?;
        let mut worst = CutMim {
            value: 0,
            exact: true,
        };
        for cut in self.cuts() {
            let m = cut_mim(g, &cut, DEFAULT_MIM_EDGE_CAP);
            worst.value = worst.value.max(m.value);
            worst.exact &= m.exact;
        }
        Ok(worst)
    }

    /// Text form: `root <id>`, `inner <id> <left> <right>`, `leaf <id> <vertex>`
    /// with 1-based vertices and ids in preorder.
    pub fn serialize(&self) -> String {
        let mut out = String::from("root 0\n");
        for (id, node) in self.nodes.iter().enumerate() {
            match node {
                Node::Leaf(v) => out.push_str(&format!("leaf {id} {}\n", v + 1)),
                Node::Inner(l, r) => out.push_str(&format!("inner {id} {l} {r}\n")),
            }
        }
        out
    }
}

/// Parses a layout for an `n`-vertex graph. Node ids are arbitrary tokens.
pub fn parse_layout(text: &str, n: usize) -> Result<Layout> {
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut defs: Vec<Option<Node>> = Vec::new();
    let mut root = None;
    let mut intern = |tok: &str, defs: &mut Vec<Option<Node>>| -> usize {
        *ids.entry(tok.to_string()).or_insert_with(|| {
            defs.push(None);
            defs.len() - 1
        })
    };
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let parts: Vec<&str> = line.split_whitespace().collect();
        let bad = |msg: &str| Error::Layout(format!("line {line_no}: {msg}"));
        match parts.as_slice() {
            [] => {}
            ["root", id] => {
                if root.is_some() {
                    return Err(bad("second root line"));
                }
                root = Some(intern(id, &mut defs));
            }
            ["inner", id, l, r] => {
                let id = intern(id, &mut defs);
                let l = intern(l, &mut defs);
                let r = intern(r, &mut defs);
                if defs[id].replace(Node::Inner(l, r)).is_some() {
                    return Err(bad("node defined twice"));
                }
            }
            ["leaf", id, v] => {
                let v: usize = v.parse().map_err(|_| bad("bad vertex"))?;
                if v == 0 {
                    return Err(bad("vertices are 1-based"));
                }
                let id = intern(id, &mut defs);
                if defs[id].replace(Node::Leaf(v - 1)).is_some() {
                    return Err(bad("node defined twice"));
                }
            }
            _ => return Err(bad("expected root, inner or leaf")),
        }
    }
    let root = root.ok_or_else(|| Error::Layout("missing root line".into()))?;
    let nodes = defs
        .into_iter()
        .enumerate()
        .map(|(id, d)| d.ok_or_else(|| Error::Layout(format!("node {id} is never defined"))))
        .collect::<Result<Vec<_>>>()?;
    Layout::canonical(&nodes, root, n)
}

fn check_permutation(order: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::Layout(
                "order is not a permutation of the vertices".into(),
            ));
        }
    }
    if order.len() != n {
        return Err(Error::Layout(
            "order is not a permutation of the vertices".into(),
        ));
    }
    Ok(())
}

/// Left-spine tree whose cuts are the prefixes of `order`.
pub fn caterpillar_from_order(order: &[usize], n: usize) -> Result<Layout> {
    check_permutation(order, n)?;
    let mut nodes: Vec<Node> = order.iter().map(|&v| Node::Leaf(v)).collect();
    let mut spine = 0;
    for i in 1..order.len() {
        nodes.push(Node::Inner(spine, i));
        spine = nodes.len() - 1;
    }
    Layout::canonical(&nodes, spine, n)
}

/// Random layout: repeatedly merges two random subtrees.
pub fn random_layout<R: Rng>(n: usize, rng: &mut R) -> Result<Layout> {
    let mut nodes: Vec<Node> = (0..n).map(Node::Leaf).collect();
    let mut roots: Vec<usize> = (0..n).collect();
    roots.shuffle(rng);
    while roots.len() > 1 {
        let a = roots.swap_remove(rng.gen_range(0..roots.len()));
        let b = roots.swap_remove(rng.gen_range(0..roots.len()));
        nodes.push(Node::Inner(a, b));
        roots.push(nodes.len() - 1);
    }
    let root = roots.first().copied().unwrap_or(0);
    Layout::canonical(&nodes, root, n)
}

/// A layout of minimum width (largest exact `cut_mim` over its nodes), by
/// dynamic programming over vertex subsets. Limited to [`SEARCH_CAP`] vertices.
pub fn search_layout(g: &Graph) -> Result<(Layout, usize)> {
    let n = g.vertex_count();
    if n == 0 || n > SEARCH_CAP {
        return Err(Error::Layout(format!(
            "layout search supports 1..={SEARCH_CAP} vertices, got {n}"
        )));
    }
    let full = (1usize << n) - 1;
    let to_set = |mask: usize| VertexSet::from_iter(n, (0..n).filter(|v| mask >> v & 1 == 1));
    let mim: Vec<usize> = (0..=full)
        .map(|mask| cut_mim(g, &to_set(mask), usize::MAX).value)
        .collect();
    // best[mask] = (width of the best subtree on mask, chosen left part)
    let mut best = vec![(usize::MAX, 0usize); full + 1];
    for mask in 1..=full {
        if mask.count_ones() == 1 {
            best[mask] = (0, 0);
            continue;
        }
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        // left part always holds the lowest vertex; enumerate its extensions
        let mut sub = rest;
        loop {
            let left = low | sub;
            if left != mask {
                let right = mask ^ left;
                let w = best[left]
                    .0
                    .max(best[right].0)
                    .max(mim[left])
                    .max(mim[right]);
                if w < best[mask].0 {
                    best[mask] = (w, left);
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    let mut nodes = Vec::new();
    let mut build = vec![(full, None::<(usize, bool)>)];
    while let Some((mask, patch)) = build.pop() {
        let id = nodes.len();
        if let Some((parent, is_left)) = patch {
            if let Node::Inner(l, r) = &mut nodes[parent] {
                if is_left {
                    *l = id;
                } else {
                    *r = id;
                }
            }
        }
        if mask.count_ones() == 1 {
            nodes.push(Node::Leaf(mask.trailing_zeros() as usize));
        } else {
            nodes.push(Node::Inner(0, 0));
            let left = best[mask].1;
            build.push((mask ^ left, Some((id, false))));
            build.push((left, Some((id, true))));
        }
    }
    Ok((Layout::canonical(&nodes, 0, n)?, best[full].0))
}

/// `X` induces no edge with an end in `T`.
pub fn is_t_independent(g: &Graph, t: &VertexSet, x: &VertexSet) -> bool {
    x.iter()
        .filter(|&v| t.contains(v))
        .all(|v| !g.neighbours(v).intersects(x))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CutMim {
    pub value: usize,
    /// False when the cut had too many edges and `value` is a greedy lower bound.
    pub exact: bool,
}

/// Largest induced matching among the edges crossing `(A, V \ A)`, counting
/// only crossing edges as edges.
pub fn cut_mim(g: &Graph, a: &VertexSet, edge_cap: usize) -> CutMim {
    let edges: Vec<(usize, usize)> = a
        .iter()
        .flat_map(|u| {
            g.neighbours(u)
                .iter()
                .filter(|&v| !a.contains(v))
                .map(move |v| (u, v))
        })
        .collect();
    let m = edges.len();
    let clash = |i: usize, j: usize| {
        let (a1, b1) = edges[i];
        let (a2, b2) = edges[j];
        a1 == a2 || b1 == b2 || g.has_edge(a1, b2) || g.has_edge(a2, b1)
    };
    if m > edge_cap.min(128) {
        let mut chosen: Vec<usize> = Vec::new();
        for i in 0..m {
            if chosen.iter().all(|&j| !clash(i, j)) {
                chosen.push(i);
            }
        }
        return CutMim {
            value: chosen.len(),
            exact: false,
        };
    }
    let conflicts: Vec<u128> = (0..m)
        .map(|i| {
            (0..m)
                .filter(|&j| j != i && clash(i, j))
                .fold(0, |acc, j| acc | 1 << j)
        })
        .collect();
    fn grow(conflicts: &[u128], avail: u128, size: usize, best: &mut usize) {
        if avail == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + avail.count_ones() as usize <= *best {
            return;
        }
        let i = avail.trailing_zeros() as usize;
        let without = avail & !(1 << i);
        grow(conflicts, without & !conflicts[i], size + 1, best);
        grow(conflicts, without, size, best);
    }
    let all = if m == 128 {
        u128::MAX
    } else {
        (1u128 << m) - 1
    };
    let mut best = 0;
    grow(&conflicts, all, 0, &mut best);
    CutMim {
        value: best,
        exact: true,
    }
}

/// Representatives of `d`-neighbour equivalence on subsets of a cut `A`:
/// `X ≡ Y` iff every `v` outside `A` sees `min(d, |X ∩ N(v)|) =
/// min(d, |Y ∩ N(v)|)`. Representatives are found breadth-first from the
/// empty set, so each is a smallest member of its class.
#[derive(Clone, Debug)]
pub struct RepIndex {
    cut: VertexSet,
    outside: Vec<usize>,
    d: usize,
    /// `rows[a]` = neighbours of `a` outside the cut (empty for `a ∉ A`).
    rows: Vec<VertexSet>,
    reps: Vec<VertexSet>,
    by_signature: HashMap<Vec<u8>, usize>,
}

pub fn compute_representatives(g: &Graph, a: &VertexSet, d: usize) -> Result<RepIndex> {
    if d == 0 || d > u8::MAX as usize {
        return Err(Error::Params(format!("d = {d} must be in 1..=255")));
    }
    let n = g.vertex_count();
    let a = VertexSet::from_iter(n, a.iter());
    let rest = a.complement();
    let rows = (0..n)
        .map(|v| {
            if a.contains(v) {
                g.neighbours(v).intersection(&rest)
            } else {
                VertexSet::new(n)
            }
        })
        .collect();
    let mut idx = RepIndex {
        outside: rest.to_vec(),
        cut: a,
        d,
        rows,
        reps: Vec::new(),
        by_signature: HashMap::new(),
    };
    let empty = VertexSet::new(n);
    idx.by_signature.insert(idx.signature(&empty), 0);
    idx.reps.push(empty);
    let mut queue = VecDeque::from([0usize]);
    while let Some(r) = queue.pop_front() {
        for v in idx.cut.iter() {
            if idx.reps[r].contains(v) {
                continue;
            }
            let mut next = idx.reps[r].clone();
            next.insert(v);
            let sig = idx.signature(&next);
            if !idx.by_signature.contains_key(&sig) {
                idx.by_signature.insert(sig, idx.reps.len());
                idx.reps.push(next);
                queue.push_back(idx.reps.len() - 1);
            }
        }
    }
    Ok(idx)
}

impl RepIndex {
    pub fn cut(&self) -> &VertexSet {
        &self.cut
    }

    /// Number of classes, `nec_d(A)`.
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn representatives(&self) -> &[VertexSet] {
        &self.reps
    }

    /// Capped neighbour counts of `x` on each outside vertex, in vertex order.
    pub fn signature(&self, x: &VertexSet) -> Vec<u8> {
        let cap = self.d as u8;
        self.outside
            .iter()
            .map(|&v| {
                let mut c = 0u8;
                for a in x.iter() {
                    if self.rows[a].contains(v) {
                        c += 1;
                        if c == cap {
                            break;
                        }
                    }
                }
                c
            })
            .collect()
    }

    /// Index of the representative of `x`'s class.
    pub fn rep_of(&self, x: &VertexSet) -> Result<usize> {
        if !x.iter().all(|v| self.cut.contains(v)) {
            return Err(Error::Params("subset is not contained in the cut".into()));
        }
        self.by_signature
            .get(&self.signature(x))
            .copied()
            .ok_or_else(|| Error::Params("signature outside the computed classes".into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DPEntry {
    pub weight: u64,
    pub set: VertexSet,
}

/// Best terminal-independent sets inside `V_x`, one per pair of classes
/// `(rep(X ∩ T), rep(X \ T))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DPTable {
    pub node: usize,
    pub entries: BTreeMap<(usize, usize), DPEntry>,
}

fn better_entry(cand: &DPEntry, old: &DPEntry) -> bool {
    cand.weight > old.weight || (cand.weight == old.weight && cand.set < old.set)
}

fn reduce_with_index(
    g: &Graph,
    t: &VertexSet,
    index: &RepIndex,
    node: usize,
    candidates: impl IntoIterator<Item = (u64, VertexSet)>,
) -> DPTable {
    let mut entries: BTreeMap<(usize, usize), DPEntry> = BTreeMap::new();
    for (weight, set) in candidates {
        if !is_t_independent(g, t, &set) {
            continue;
        }
        let key = (
            index
                .rep_of(&set.intersection(t))
                .expect("candidate lies in the cut"),
            index
                .rep_of(&set.difference(t))
                .expect("candidate lies in the cut"),
        );
        let cand = DPEntry { weight, set };
        match entries.get(&key) {
            Some(old) if !better_entry(&cand, old) => {}
            _ => {
                entries.insert(key, cand);
            }
        }
    }
    DPTable { node, entries }
}

/// Drops non-independent candidates and keeps one heaviest candidate per
/// pair of 1-neighbour classes of `cut`.
pub fn reduce_table(
    g: &Graph,
    t: &VertexSet,
    cut: &VertexSet,
    candidates: Vec<(u64, VertexSet)>,
) -> Result<DPTable> {
    let n = g.vertex_count();
    let inside = |s: &VertexSet| s.iter().all(|v| cut.contains(v));
    if let Some(bad) = candidates.iter().find(|(_, s)| !inside(s)) {
        return Err(Error::Params(format!(
            "candidate {:?} leaves the cut",
            bad.1.iter().map(|v| v + 1).collect::<Vec<_>>()
        )));
    }
    let index = compute_representatives(g, cut, 1)?;
    let t = VertexSet::from_iter(n, t.iter());
    Ok(reduce_with_index(
        g,
        &t,
        &index,
        0,
        candidates
            .into_iter()
            .map(|(w, s)| (w, VertexSet::from_iter(n, s.iter()))),
    ))
}

/// Best weight of `X ∪ Y` over table entries `X` with `X ∪ Y` independent.
pub fn best_extension(
    g: &Graph,
    t: &VertexSet,
    table: &[(u64, VertexSet)],
    y: &VertexSet,
    y_weight: u64,
) -> Option<u64> {
    table
        .iter()
        .filter(|(_, x)| is_t_independent(g, t, &x.union(y)))
        .map(|(w, _)| w + y_weight)
        .max()
}

struct MimSolver<'a> {
    g: &'a Graph,
    t: &'a VertexSet,
    w: &'a [u64],
    layout: &'a Layout,
    cuts: Vec<VertexSet>,
}

impl MimSolver<'_> {
    /// Union of entries from two disjoint cuts; checks the crossing-edge
    /// shortcut against the direct test.
    fn combine(&self, a: &DPEntry, b: &DPEntry) -> Option<(u64, VertexSet)> {
        let t = self.t;
        let g = self.g;
        let crossing_ok = a
            .set
            .iter()
            .all(|u| !g.neighbours(u).intersects(&b.set) || !t.contains(u))
            && b.set
                .iter()
                .all(|v| !g.neighbours(v).intersects(&a.set) || !t.contains(v));
        let union = a.set.union(&b.set);
        assert_eq!(
            crossing_ok,
            is_t_independent(g, t, &union),
            "union compatibility agrees with the direct check"
        );
        crossing_ok.then(|| (a.weight + b.weight, union))
    }

    fn solve(&self, x: usize) -> (DPTable, Vec<TableStat>) {
        let n = self.g.vertex_count();
        let index = compute_representatives(self.g, &self.cuts[x], 1).expect("d = 1 is valid");
        let (table, mut stats) = match self.layout.nodes[x] {
            Node::Leaf(v) => {
                let cands = [
                    (0, VertexSet::new(n)),
                    (self.w[v], VertexSet::singleton(n, v)),
                ];
                (
                    reduce_with_index(self.g, self.t, &index, x, cands),
                    Vec::new(),
                )
            }
            Node::Inner(l, r) => {
                let ((tl, mut sl), (tr, sr)) = rayon::join(|| self.solve(l), || self.solve(r));
                sl.extend(sr);
                let product = tl
                    .entries
                    .values()
                    .flat_map(|a| tr.entries.values().filter_map(move |b| self.combine(a, b)));
                (reduce_with_index(self.g, self.t, &index, x, product), sl)
            }
        };
        let classes = index.len();
        assert!(
            table.entries.len() <= classes * classes + 1,
            "table at node {x} has {} entries for {classes} classes",
            table.entries.len()
        );
        for (&(kt, ko), e) in &table.entries {
            debug_assert_eq!(index.rep_of(&e.set.intersection(self.t)).ok(), Some(kt));
            debug_assert_eq!(index.rep_of(&e.set.difference(self.t)).ok(), Some(ko));
        }
        stats.push(TableStat {
            node: x,
            cut_size: self.cuts[x].len(),
            entries: table.entries.len(),
            classes,
        });
        (table, stats)
    }
}

/// Minimum (weight) terminal cover as the complement of a maximum-weight
/// terminal-independent set found by the layout dynamic program.
pub fn solve_mim(inst: &Instance, layout: &Layout) -> Result<SolutionCover> {
    let g = inst.graph();
    layout.check_graph(g)?;
    let weights = inst.scaled_weights();
    let solver = MimSolver {
        g,
        t: inst.terminals(),
        w: &weights.values,
        layout,
        cuts: layout.cuts(),
    };
    let (root, mut tables) = solver.solve(0);
    tables.sort_by_key(|s| s.node);
    let best = root
        .entries
        .values()
        .fold(None::<&DPEntry>, |acc, e| match acc {
            Some(b) if !better_entry(e, b) => Some(b),
            _ => Some(e),
        })
        .expect("the empty set is always an entry");
    let cover = best.set.complement();
    let stats = Stats {
        branches: layout.nodes().len() as u64,
        candidates: tables.iter().map(|s| s.entries as u64).sum(),
        tables,
        ..Stats::default()
    };
    Ok(SolutionCover::new(inst, cover, Algorithm::Mim, stats))
}
