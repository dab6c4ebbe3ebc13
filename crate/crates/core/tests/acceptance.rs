//! Acceptance gate: one PASS/FAIL line per criterion, each with its pinned
//! time limit. Runs sequentially so timings are not distorted.

mod common;

use std::time::{Duration, Instant};

use common::*;
use rand::Rng;
use subcover::bipartite::{
    konig_cover_with_matching, max_matching, min_weight_vertex_cover_bipartite, BipartiteView,
};
use subcover::generators::{
    gen_claw_diamond, gen_two_unipolar, random_instance, random_subcubic, Certificate,
    RandomParams, WeightRange,
};
use subcover::mimwidth::{
    caterpillar_from_order, compute_representatives, cut_mim, random_layout, solve_mim,
};
use subcover::mis::{count_check_sp2_bound, enum_maximal_independent_sets};
use subcover::oracle::{solve_exact, solve_exact_reduced, solve_exact_weighted, OracleConfig};
use subcover::poly::{dispatch, solve_p2p3, solve_peeled_p2p3, solve_sp2, DispatchConfig};
use subcover::recognition::{contains_induced, parse_h_spec, verify_2_unipolar};
use subcover::{
    is_t_vertex_cover, parse_instance, serialize_instance, Graph, Instance, Measure, VertexSet,
    Weight,
};

const STAR: &str = "p svc 4 3\ne 1 2\ne 1 3\ne 1 4\nt 2\nt 3\nt 4\n";

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn check(failures: usize, detail: String) -> Self {
        Outcome {
            pass: failures == 0,
            detail,
        }
    }
}

fn criterion_1() -> Outcome {
    let mut mismatches = 0usize;
    let mut checked = 0usize;
    let mut r = rng(1001);
    for n in 1..=7usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .collect();
        for code in 0u64..(1 << pairs.len()) {
            let mut g = Graph::new(n);
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if code >> i & 1 == 1 {
                    g.add_edge(u, v);
                }
            }
            for _ in 0..3 {
                let t = VertexSet::from_iter(n, (0..n).filter(|_| r.gen_bool(0.5)));
                let inst = Instance::new(g.clone(), t).unwrap();
                let a = solve_exact(&inst).unwrap();
                let b = solve_exact_reduced(&inst, &OracleConfig::default(), false).unwrap();
                if a.measure() != b.measure() {
                    mismatches += 1;
                }
                checked += 1;
            }
        }
    }
    let mut random = 0;
    for i in 0..1000 {
        let n = r.gen_range(1..=14);
        let g = random_graph(n, r.gen_range(0.05..0.9), &mut r);
        let t = random_subset(n, r.gen_range(0.0..1.0), &mut r);
        let mut inst = Instance::new(g, t).unwrap();
        if i % 2 == 1 {
            inst = inst.with_weights(random_weights(n, &mut r)).unwrap();
        }
        let a = solve_exact_weighted(&inst).unwrap();
        let b = solve_exact_reduced(&inst, &OracleConfig::default(), true).unwrap();
        let ok = a.measure() == b.measure()
            && is_t_vertex_cover(&inst, a.vertices()).unwrap()
            && is_t_vertex_cover(&inst, b.vertices()).unwrap();
        if !ok {
            mismatches += 1;
        }
        random += 1;
    }
    Outcome::check(
        mismatches,
        format!("{checked} exhaustive + {random} random instances, {mismatches} mismatches"),
    )
}

fn criterion_2() -> Outcome {
    let mut r = rng(1002);
    let mut mismatches = 0;
    let mut weighted = 0;
    for i in 0..1000 {
        let s = 1 + i % 3;
        let n = r.gen_range(2..=14);
        let mut inst = sp2_free_instance(n, s, &mut r);
        if i % 2 == 1 {
            inst = inst.with_weights(random_weights(n, &mut r)).unwrap();
            weighted += 1;
        }
        let got = solve_sp2(&inst, s).unwrap();
        let want = solve_exact_weighted(&inst).unwrap();
        if got.measure() != want.measure() || !is_t_vertex_cover(&inst, got.vertices()).unwrap() {
            mismatches += 1;
        }
    }
    Outcome::check(
        mismatches,
        format!("1000 instances ({weighted} weighted), s in 1..=3, {mismatches} mismatches"),
    )
}

fn criterion_3() -> Outcome {
    let mut r = rng(1003);
    let mut mismatches = 0;
    let mut by_s = [0usize; 3];
    for i in 0..500 {
        let s = i % 3;
        let n = r.gen_range(2..=14);
        let mut inst = p2p3_free_instance(n, s, &mut r);
        if i % 4 == 3 {
            inst = inst.with_weights(random_weights(n, &mut r)).unwrap();
        }
        let got = if s == 0 {
            solve_p2p3(&inst).unwrap()
        } else {
            solve_peeled_p2p3(&inst, s).unwrap()
        };
        let want = solve_exact_weighted(&inst).unwrap();
        if got.measure() != want.measure() || !is_t_vertex_cover(&inst, got.vertices()).unwrap() {
            mismatches += 1;
        }
        by_s[s] += 1;
    }
    Outcome::check(
        mismatches,
        format!(
            "500 instances (s=0: {}, s=1: {}, s=2: {}), {mismatches} mismatches",
            by_s[0], by_s[1], by_s[2]
        ),
    )
}

/// Members of each table class must agree on every extension outside the cut.
fn exchange_violations(g: &Graph, t: &VertexSet, cut: &VertexSet) -> usize {
    let n = g.vertex_count();
    let idx = compute_representatives(g, cut, 1).unwrap();
    let inside = cut.to_vec();
    let outside = cut.complement().to_vec();
    let subsets = |items: &[usize]| -> Vec<VertexSet> {
        (0u32..(1 << items.len()))
            .map(|m| {
                VertexSet::from_iter(
                    n,
                    (0..items.len())
                        .filter(|i| m >> i & 1 == 1)
                        .map(|i| items[i]),
                )
            })
            .collect()
    };
    let mut groups: std::collections::BTreeMap<(usize, usize), Vec<VertexSet>> = Default::default();
    for x in subsets(&inside) {
        if brute_t_independent(g, t, &x) {
            let key = (
                idx.rep_of(&x.intersection(t)).unwrap(),
                idx.rep_of(&x.difference(t)).unwrap(),
            );
            groups.entry(key).or_default().push(x);
        }
    }
    let mut bad = 0;
    for y in subsets(&outside) {
        for members in groups.values() {
            let first = brute_t_independent(g, t, &members[0].union(&y));
            if members[1..]
                .iter()
                .any(|x| brute_t_independent(g, t, &x.union(&y)) != first)
            {
                bad += 1;
            }
        }
    }
    bad
}

fn criterion_4() -> Outcome {
    let mut r = rng(1004);
    let mut mismatches = 0;
    let mut table_violations = 0;
    let mut exchange = 0;
    let mut exchange_cuts = 0;
    for i in 0..300 {
        let n = r.gen_range(1..=12);
        let g = random_graph(n, r.gen_range(0.05..0.7), &mut r);
        let t = random_subset(n, r.gen_range(0.0..1.0), &mut r);
        let mut inst = Instance::new(g.clone(), t.clone()).unwrap();
        if i % 3 == 2 {
            inst = inst.with_weights(random_weights(n, &mut r)).unwrap();
        }
        let want = solve_exact_weighted(&inst).unwrap().measure();
        let random = random_layout(n, &mut r).unwrap();
        let mut order: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(&mut order[..], &mut r);
        let cat = caterpillar_from_order(&order, n).unwrap();
        for lay in [&random, &cat] {
            let sol = solve_mim(&inst, lay).unwrap();
            if sol.measure() != want || !is_t_vertex_cover(&inst, sol.vertices()).unwrap() {
                mismatches += 1;
            }
            for stat in &sol.provenance.stats.tables {
                if stat.entries > stat.classes * stat.classes + 1 {
                    table_violations += 1;
                }
            }
        }
        if n <= 10 {
            for cut in random.cuts() {
                exchange += exchange_violations(&g, &t, &cut);
                exchange_cuts += 1;
            }
        }
    }
    Outcome::check(
        mismatches + table_violations + exchange,
        format!(
            "600 layouts on 300 instances: {mismatches} mismatches, {table_violations} oversized tables; \
             exchange checked on {exchange_cuts} cuts, {exchange} violations"
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut r = rng(1005);
    let big = OracleConfig { cap: 256 };
    let mut bad = Vec::new();
    let claw = parse_h_spec("claw").unwrap();
    let diamond = parse_h_spec("diamond").unwrap();
    let mut largest = 0;
    for i in 0..50 {
        let n = r.gen_range(1..=8);
        let src = random_graph(n, r.gen_range(0.1..0.7), &mut r);
        let (inst, trace) = gen_two_unipolar(&src).unwrap();
        let vc = brute_vc(&src);
        let opt = solve_exact_reduced(&inst, &big, false).unwrap().measure();
        let cert_ok = match &trace.certificate {
            Some(Certificate::Unipolar(p)) => verify_2_unipolar(inst.graph(), p).unwrap(),
            _ => false,
        };
        let (gt, _) = inst.graph().induced_subgraph(inst.terminals());
        let matching = gt.vertex_count() == 2 * src.edge_count()
            && (0..gt.vertex_count()).all(|v| gt.degree(v) == 1);
        if opt != Measure::Size((vc + trace.offset) as usize) || !cert_ok || !matching {
            bad.push(format!("two-unipolar source {i}"));
        }
    }
    for i in 0..50 {
        let n = r.gen_range(1..=8);
        let src = random_subcubic(n, r.gen_range(0.3..1.0), &mut r);
        let (inst, trace) = gen_claw_diamond(&src).unwrap();
        largest = largest.max(inst.vertex_count());
        let vc = brute_vc(&src);
        let opt = solve_exact_reduced(&inst, &big, false).unwrap().measure();
        let g = inst.graph();
        let classes = g.max_degree() <= 3
            && !brute_has_claw(g)
            && !brute_has_diamond(g)
            && contains_induced(g, &claw).unwrap().is_none()
            && contains_induced(g, &diamond).unwrap().is_none();
        if opt != Measure::Size((vc + trace.offset) as usize)
            || trace.offset != 4 * src.edge_count() as u64
            || !classes
        {
            bad.push(format!("claw-diamond source {i}"));
        }
    }
    Outcome::check(
        bad.len(),
        format!(
            "50 sources per generator (claw-diamond outputs up to {largest} vertices), {} violations {:?}",
            bad.len(),
            bad
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut r = rng(1006);
    let mut violations = 0;
    let mut family = 0;
    let mut max_count = 0;
    for i in 0..200 {
        let s = if i % 4 == 0 { 1 } else { 2 };
        let n = r.gen_range(1..=20);
        let g = loop {
            let g = if s == 1 {
                Graph::new(n)
            } else {
                random_graph(n, r.gen_range(0.6..0.98), &mut r)
            };
            if !brute_has_linear_forest(&g, &vec![2; s]) {
                break g;
            }
        };
        let check = count_check_sp2_bound(&g, s as u32);
        max_count = max_count.max(check.count);
        if !check.within {
            violations += 1;
        }
        if n <= 9 {
            let mut got: Vec<Vec<usize>> = enum_maximal_independent_sets(&g)
                .map(|x| x.to_vec())
                .collect();
            got.sort();
            if got != brute_mis(&g) {
                violations += 1;
            }
            family += 1;
        }
    }
    for _ in 0..200 {
        let n = r.gen_range(1..=9);
        let g = random_graph(n, r.gen_range(0.1..0.9), &mut r);
        let mut got: Vec<Vec<usize>> = enum_maximal_independent_sets(&g)
            .map(|x| x.to_vec())
            .collect();
        got.sort();
        if got != brute_mis(&g) {
            violations += 1;
        }
        family += 1;
    }
    Outcome::check(
        violations,
        format!(
            "200 sP2-free graphs (largest count {max_count}), {family} families compared, {violations} violations"
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut r = rng(1007);
    let mut violations = 0;
    let mut corrected_violations = 0;
    let mut example = None;
    for i in 0..200 {
        let d = 1 + i % 2;
        let n = r.gen_range(2..=14);
        let g = random_graph(n, r.gen_range(0.1..0.7), &mut r);
        let size = r.gen_range(0..=10.min(n - 1));
        let mut order: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(&mut order[..], &mut r);
        let a = VertexSet::from_iter(n, order[..size].iter().copied());
        let mim = cut_mim(&g, &a, usize::MAX);
        assert!(mim.exact);
        let nec = compute_representatives(&g, &a, d).unwrap().len() as u128;
        let exp = (d * mim.value) as u32;
        let bound = (size as u128).pow(exp);
        if nec > bound {
            violations += 1;
            if example.is_none()
                || size < example.map_or(usize::MAX, |e: (usize, usize, usize, u128)| e.0)
            {
                example = Some((size, d, mim.value, nec));
            }
        }
        if nec > (size as u128 + 1).pow(exp) {
            corrected_violations += 1;
        }
    }
    println!(
        "info criterion 7: with base |A|+1 instead of |A| the same cuts give {corrected_violations} violations"
    );
    let ex = example.map_or(String::new(), |(s, d, m, nec)| {
        format!(
            "; smallest counterexample |A|={s}, d={d}, mim={m}, nec={nec} > {s}^{}",
            d * m
        )
    });
    Outcome::check(violations, format!("200 cuts, {violations} violations{ex}"))
}

fn criterion_8() -> Outcome {
    let mut r = rng(1008);
    let mut violations = 0;
    let mut weighted = 0;
    for i in 0..500 {
        let total = if i % 2 == 0 {
            r.gen_range(2..=50)
        } else {
            r.gen_range(2..=10)
        };
        let left = r.gen_range(1..total);
        let g = random_bipartite(left, total - left, r.gen_range(0.02..0.6), &mut r);
        let view = BipartiteView::new(
            &g,
            VertexSet::from_iter(total, 0..left),
            VertexSet::from_iter(total, left..total),
        )
        .unwrap();
        let (cover, matching) = konig_cover_with_matching(&view);
        let valid = g
            .edges()
            .all(|(u, v)| cover.contains(u) || cover.contains(v));
        if cover.len() != matching.len() || !valid || max_matching(&view).len() != matching.len() {
            violations += 1;
        }
        if total <= 10 {
            let w = random_weights(total, &mut r);
            let wc = min_weight_vertex_cover_bipartite(&view, &w).unwrap();
            let got: Weight = wc.iter().map(|v| w[v]).sum();
            let inst = Instance::new(g.clone(), g.vertices())
                .unwrap()
                .with_weights(w)
                .unwrap();
            let covers = g.edges().all(|(u, v)| wc.contains(u) || wc.contains(v));
            if got != brute_opt(&inst) || !covers {
                violations += 1;
            }
            weighted += 1;
        }
    }
    Outcome::check(
        violations,
        format!(
            "500 graphs, {weighted} weighted against exhaustive search, {violations} violations"
        ),
    )
}

fn criterion_9() -> Outcome {
    let inst = parse_instance(STAR).unwrap();
    let mut r = rng(1009);
    let mut results = vec![
        ("oracle", solve_exact(&inst).unwrap().measure()),
        (
            "oracle-reduced",
            solve_exact_reduced(&inst, &OracleConfig::default(), false)
                .unwrap()
                .measure(),
        ),
        ("sp2", solve_sp2(&inst, 1).unwrap().measure()),
        ("p2p3", solve_p2p3(&inst).unwrap().measure()),
        (
            "auto",
            dispatch(&inst, &DispatchConfig::default())
                .unwrap()
                .result
                .measure(),
        ),
    ];
    for k in 0..5 {
        let lay = random_layout(4, &mut r).unwrap();
        results.push(("mim", solve_mim(&inst, &lay).unwrap().measure()));
        let _ = k;
    }
    let wrong: Vec<&str> = results
        .iter()
        .filter(|(_, m)| *m != Measure::Size(1))
        .map(|(name, _)| *name)
        .collect();
    Outcome::check(
        wrong.len(),
        format!(
            "{} routes returned 1, wrong: {:?}",
            results.len() - wrong.len(),
            wrong
        ),
    )
}

/// Everything the determinism criterion compares: instance files, traces,
/// layouts and solution files.
fn build_corpus() -> Vec<(String, String)> {
    let mut out = Vec::new();
    for seed in 0..12u64 {
        let mut p = RandomParams::new(8 + seed as usize % 5, 0.4, 0.6, seed);
        if seed % 2 == 1 {
            p.weights = Some(WeightRange {
                max_numerator: 7,
                max_denominator: 3,
            });
        }
        let inst = random_instance(&p).unwrap();
        out.push((format!("random-{seed}.svc"), serialize_instance(&inst)));
        let report = dispatch(&inst, &DispatchConfig::default()).unwrap();
        out.push((
            format!("random-{seed}.sol"),
            report.result.to_solution_text(),
        ));
        let mut r = rng(seed);
        let lay = random_layout(inst.vertex_count(), &mut r).unwrap();
        out.push((format!("random-{seed}.layout"), lay.serialize()));
        out.push((
            format!("random-{seed}.mim.sol"),
            solve_mim(&inst, &lay).unwrap().to_solution_text(),
        ));
        out.push((
            format!("random-{seed}.p2p3-or-oracle.sol"),
            match solve_p2p3(&inst) {
                Ok(sol) => sol.to_solution_text(),
                Err(_) => solve_exact_weighted(&inst).unwrap().to_solution_text(),
            },
        ));

        let src = random_subcubic(6, 0.7, &mut r);
        let (cd, mut trace) = gen_claw_diamond(&src).unwrap();
        trace.vc = Some(brute_vc(&src));
        out.push((format!("claw-diamond-{seed}.svc"), serialize_instance(&cd)));
        out.push((format!("claw-diamond-{seed}.trace.json"), trace.to_json()));
        let (tu, trace) = gen_two_unipolar(&src).unwrap();
        out.push((format!("two-unipolar-{seed}.svc"), serialize_instance(&tu)));
        out.push((format!("two-unipolar-{seed}.trace.json"), trace.to_json()));
    }
    out
}

fn criterion_10() -> Outcome {
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let many = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap();
    let a = single.install(build_corpus);
    let b = many.install(build_corpus);
    let c = build_corpus();
    let differing: Vec<&String> = a
        .iter()
        .zip(&b)
        .zip(&c)
        .filter(|((x, y), z)| x != y || x != z)
        .map(|((x, _), _)| &x.0)
        .collect();
    let failures = differing.len() + usize::from(a.len() != b.len() || a.len() != c.len());
    Outcome::check(
        failures,
        format!(
            "{} files generated three times (1 thread, 4 threads, default pool), {} differ {:?}",
            a.len(),
            differing.len(),
            differing
        ),
    )
}

type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "oracle self-consistency", 60, criterion_1),
        (2, "sP2-free solver equals oracle", 120, criterion_2),
        (3, "(sP1+P2+P3)-free solver equals oracle", 180, criterion_3),
        (4, "layout dynamic program", 300, criterion_4),
        (5, "generator certificates", 120, criterion_5),
        (6, "maximal independent set count bound", 60, criterion_6),
        (7, "neighbour-equivalence class bound", 60, criterion_7),
        (8, "König cover and weighted cover", 30, criterion_8),
        (9, "star instance under every route", 1, criterion_9),
        (10, "end-to-end determinism", 120, criterion_10),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = Vec::new();
    for (id, name, limit, run) in criteria {
        let label = format!("criterion {id}");
        if !filter.is_empty()
            && !filter
                .iter()
                .any(|f| label.contains(f.as_str()) || name.contains(f.as_str()))
        {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let pass = outcome.pass && in_time;
        println!(
            "{} {label} ({name}): {}; {:.2} s of {limit} s",
            if pass { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64()
        );
        if !pass {
            failed.push(id);
        }
    }
    if !failed.is_empty() {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
    println!("acceptance: all criteria passed");
}
