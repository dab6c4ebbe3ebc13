//! `subcover`: solve, generate, check and verify Subset Vertex Cover instances.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use subcover::generators::{
    gen_claw_diamond, gen_two_unipolar, random_instance, two_subdivision, RandomParams,
    ReductionTrace, WeightRange,
};
use subcover::mimwidth::{
    caterpillar_from_order, parse_layout, search_layout, solve_mim, Layout, SEARCH_CAP,
};
use subcover::mis::enum_maximal_independent_sets;
use subcover::oracle::{
    min_vertex_cover_exact, solve_exact_weighted_with, solve_exact_with, OracleConfig,
    DEFAULT_ORACLE_CAP,
};
use subcover::poly::{dispatch, solve_p2p3, solve_peeled_p2p3, solve_sp2, DispatchConfig};
use subcover::recognition::{
    contains_induced, find_2_unipolar_partition, is_bipartite, is_cluster_graph, parse_h_spec,
    sp1_p2_p3, sp2, DEFAULT_UNIPOLAR_CAP,
};
use subcover::{
    is_t_vertex_cover, parse_instance, parse_solution, serialize_instance, Instance, Measure,
    SolutionCover, VertexSet,
};

use report::{digest, one_based, CheckReport, ClassEvidence, Failure, RunReport};

#[derive(Parser)]
#[command(name = "subcover", version, about = "Subset Vertex Cover toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and print `s <measure>` followed by `v` lines.
    Solve(SolveArgs),
    /// Write reduction-based or random instances.
    Generate(GenerateArgs),
    /// Test a graph for H-freeness or class membership.
    Check(CheckArgs),
    /// Check a solution file against an instance.
    Verify(VerifyArgs),
    /// Enumerate maximal independent sets.
    EnumMis(EnumMisArgs),
    /// Build a layout for the mim-width dynamic program.
    Layout(LayoutArgs),
    /// Time a solver over several inputs.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Algo {
    Auto,
    Sp2,
    P2p3,
    Oracle,
    Mim,
}

#[derive(Args, Clone)]
struct SolverArgs {
    #[arg(long, value_enum, default_value = "auto")]
    algo: Algo,
    /// Largest s tried when testing the sP2-free and (sP1+P2+P3)-free classes.
    #[arg(long, default_value_t = 3)]
    max_s: usize,
    /// Use the `w` lines of the instance; otherwise every vertex weighs 1.
    #[arg(long)]
    weighted: bool,
    /// Layout file for `--algo mim` (also offered to `auto`).
    #[arg(long, conflicts_with = "order")]
    layout: Option<PathBuf>,
    /// Comma-separated 1-based vertex order; builds a caterpillar layout.
    #[arg(long)]
    order: Option<String>,
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    oracle_cap: usize,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    solver: SolverArgs,
    /// Worker threads; results do not depend on it.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Also write the solution file here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GenKind {
    TwoSubdivision,
    ClawDiamond,
    TwoUnipolar,
    Random,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(value_enum)]
    kind: GenKind,
    /// Source graphs (instance files; terminals are ignored).
    #[arg(long, num_args = 1..)]
    input: Vec<PathBuf>,
    /// For `random`: `n=12,p=0.3,t=0.5,seed=1[,count=10][,wnum=5,wden=3]`.
    #[arg(long)]
    params: Option<String>,
    #[arg(long)]
    out: PathBuf,
    /// Compute the source's minimum vertex cover and store it in the trace.
    #[arg(long)]
    vc: bool,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args)]
struct CheckArgs {
    #[command(subcommand)]
    what: CheckWhat,
}

#[derive(Subcommand)]
enum CheckWhat {
    /// Search for an induced copy of H.
    Hfree {
        /// Pattern such as `2P2`, `P1+P2+P3`, `claw` or `diamond`.
        #[arg(long)]
        h: String,
        #[arg(long)]
        input: PathBuf,
        /// Test G[T] instead of G.
        #[arg(long)]
        terminals: bool,
        #[arg(long)]
        json: bool,
    },
    /// Test membership in a named class.
    Class {
        #[arg(long, value_enum)]
        name: ClassName,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        terminals: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ClassName {
    Cluster,
    Bipartite,
    #[value(name = "2unipolar")]
    TwoUnipolar,
    Subcubic,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    solution: PathBuf,
    /// Trace sidecar; the solution must then match the certified optimum.
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long)]
    weighted: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EnumMisArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    limit: Option<u64>,
    #[arg(long)]
    count_only: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LayoutKind {
    Search,
    Caterpillar,
}

#[derive(Args)]
struct LayoutArgs {
    #[arg(value_enum)]
    kind: LayoutKind,
    #[arg(long)]
    input: PathBuf,
    /// Vertex order for `caterpillar` (default 1,2,...,n).
    #[arg(long)]
    order: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, num_args = 1.., required = true)]
    input: Vec<PathBuf>,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long, default_value_t = 5)]
    repeat: usize,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let code = match run(cli, &argv) {
        Ok(()) => 0,
        Err(e) => {
            let failure = Failure::classify(&e);
            eprintln!("error: {e:#}");
            if let Some(w) = failure.witness() {
                eprintln!("c witness {}", join(&one_based(w)));
            }
            failure.code()
        }
    };
    ExitCode::from(code)
}

fn run(cli: Cli, argv: &[String]) -> Result<()> {
    match cli.command {
        Command::Solve(a) => with_threads(a.threads, || solve_cmd(&a, argv)),
        Command::Generate(a) => with_threads(a.threads, || generate_cmd(&a)),
        Command::Check(a) => check_cmd(&a, argv),
        Command::Verify(a) => verify_cmd(&a, argv),
        Command::EnumMis(a) => enum_mis_cmd(&a),
        Command::Layout(a) => layout_cmd(&a),
        Command::Bench(a) => with_threads(a.threads, || bench_cmd(&a)),
    }
}

fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    if threads == 0 {
        bail!(Failure::usage("--threads must be at least 1"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .context("building worker pool")?;
    pool.install(f)
}

fn join(items: &[usize]) -> String {
    items
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_instance(path: &Path) -> Result<(Instance, String)> {
    let text = read(path)?;
    let inst =
        parse_instance(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    Ok((inst, text))
}

fn parse_order(text: &str, n: usize) -> Result<Vec<usize>> {
    text.split(',')
        .map(|tok| {
            let v: usize = tok
                .trim()
                .parse()
                .map_err(|_| Failure::usage(format!("bad vertex `{tok}` in --order")))?;
            if v == 0 || v > n {
                bail!(Failure::usage(format!(
                    "vertex {v} in --order outside 1..={n}"
                )));
            }
            Ok(v - 1)
        })
        .collect()
}

fn explicit_layout(args: &SolverArgs, n: usize) -> Result<Option<Layout>> {
    if let Some(path) = &args.layout {
        return Ok(Some(parse_layout(&read(path)?, n)?));
    }
    if let Some(order) = &args.order {
        return Ok(Some(caterpillar_from_order(&parse_order(order, n)?, n)?));
    }
    Ok(None)
}

/// Outcome of one solver run, before printing.
struct Solved {
    solution: SolutionCover,
    evidence: Vec<ClassEvidence>,
    warnings: Vec<String>,
    s: Option<usize>,
}

impl Solved {
    fn plain(solution: SolutionCover) -> Self {
        Solved {
            solution,
            evidence: Vec::new(),
            warnings: Vec::new(),
            s: None,
        }
    }
}

fn run_solver(inst: &Instance, args: &SolverArgs) -> Result<Solved> {
    let inst = if args.weighted {
        inst.clone()
    } else {
        inst.clone().without_weights()
    };
    let n = inst.vertex_count();
    let oracle = OracleConfig {
        cap: args.oracle_cap,
    };
    let solved = match args.algo {
        Algo::Auto => {
            let config = DispatchConfig {
                max_s: args.max_s,
                layout: explicit_layout(args, n)?,
                oracle_cap: args.oracle_cap,
            };
            let report = dispatch(&inst, &config)?;
            Solved {
                evidence: report
                    .class_evidence
                    .iter()
                    .map(ClassEvidence::from)
                    .collect(),
                warnings: report.warnings,
                s: report.s,
                solution: report.result,
            }
        }
        Algo::Sp2 => {
            let (gt, _) = inst.graph().induced_subgraph(inst.terminals());
            let mut chosen = args.max_s.max(1);
            for s in 1..=args.max_s {
                if contains_induced(&gt, &sp2(s))?.is_none() {
                    chosen = s;
                    break;
                }
            }
            let mut solved = Solved::plain(solve_sp2(&inst, chosen)?);
            solved.s = Some(chosen);
            solved
        }
        Algo::P2p3 => {
            // smallest s whose class contains G keeps the peeling shallow
            let mut chosen = None;
            for s in 0..=args.max_s {
                if contains_induced(inst.graph(), &sp1_p2_p3(s))?.is_none() {
                    chosen = Some(s);
                    break;
                }
            }
            let s = chosen.unwrap_or(args.max_s);
            let solution = if s == 0 {
                solve_p2p3(&inst)?
            } else {
                solve_peeled_p2p3(&inst, s)?
            };
            let mut solved = Solved::plain(solution);
            solved.s = Some(s);
            solved
        }
        Algo::Oracle => Solved::plain(if inst.is_weighted() {
            solve_exact_weighted_with(&inst, &oracle)?
        } else {
            solve_exact_with(&inst, &oracle)?
        }),
        Algo::Mim => {
            let mut warnings = Vec::new();
            let layout = match explicit_layout(args, n)? {
                Some(l) => l,
                None if (1..=SEARCH_CAP).contains(&n) => search_layout(inst.graph())?.0,
                None => {
                    warnings.push(format!(
                        "no layout given and n > {SEARCH_CAP}; using the identity caterpillar"
                    ));
                    caterpillar_from_order(&(0..n).collect::<Vec<_>>(), n)?
                }
            };
            let mut solved = Solved::plain(solve_mim(&inst, &layout)?);
            solved.warnings = warnings;
            solved
        }
    };
    if !is_t_vertex_cover(&inst, solved.solution.vertices())? {
        bail!(Failure::verification(format!(
            "{} returned a set that is not a terminal cover",
            solved.solution.algorithm()
        )));
    }
    Ok(solved)
}

fn solve_cmd(args: &SolveArgs, argv: &[String]) -> Result<()> {
    let start = Instant::now();
    let (inst, text) = load_instance(&args.input)?;
    let mut report = RunReport::new(argv, Some(digest(text.as_bytes())));
    let outcome = run_solver(&inst, &args.solver);
    let solved = match outcome {
        Ok(s) => s,
        Err(e) => {
            if args.solver.algo == Algo::Sp2 {
                report.class_evidence = sp2_evidence(&inst, args.solver.max_s + 1);
            }
            if args.json {
                report.fail(&e, start);
                println!("{}", report.to_json());
            } else {
                for t in &report.class_evidence {
                    if let Some(w) = &t.witness {
                        eprintln!("c {} fails, witness {}", t.property, join(w));
                    }
                }
            }
            return Err(e);
        }
    };
    let text = solved.solution.to_solution_text();
    if let Some(out) = &args.out {
        fs::write(out, &text).with_context(|| format!("writing {}", out.display()))?;
    }
    if args.json {
        report.succeed(&solved.solution, start);
        report.witness_file = args.out.as_ref().map(|p| p.display().to_string());
        report.class_evidence = solved.evidence;
        report.warnings = solved.warnings;
        report.s = solved.s;
        println!("{}", report.to_json());
    } else {
        for w in &solved.warnings {
            eprintln!("warning: {w}");
        }
        print!("{text}");
    }
    Ok(())
}

/// `sP2`-freeness of `G[T]` for s = 1..=upto, witnesses in original vertices.
fn sp2_evidence(inst: &Instance, upto: usize) -> Vec<ClassEvidence> {
    let (gt, map) = inst.graph().induced_subgraph(inst.terminals());
    (1..=upto)
        .map(|s| {
            let pattern = sp2(s);
            let property = format!("G[T] is {}-free", pattern.label());
            match contains_induced(&gt, &pattern) {
                Ok(found) => ClassEvidence {
                    property,
                    holds: Some(found.is_none()),
                    witness: found.map(|w| w.iter().map(|&v| map[v] + 1).collect()),
                    note: None,
                },
                Err(e) => ClassEvidence {
                    property,
                    holds: None,
                    witness: None,
                    note: Some(e.to_string()),
                },
            }
        })
        .collect()
}

fn parse_params(text: &str) -> Result<(RandomParams, usize)> {
    let mut params = RandomParams::new(10, 0.3, 0.5, 0);
    let mut count = 1;
    let (mut wnum, mut wden) = (None, None);
    for item in text.split(',').filter(|s| !s.trim().is_empty()) {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| Failure::usage(format!("expected key=value, got `{item}`")))?;
        let bad = || Failure::usage(format!("bad value for `{key}`: `{value}`"));
        match key.trim() {
            "n" => params.n = value.parse().map_err(|_| bad())?,
            "p" => params.edge_probability = value.parse().map_err(|_| bad())?,
            "t" => params.terminal_fraction = value.parse().map_err(|_| bad())?,
            "seed" => params.seed = value.parse().map_err(|_| bad())?,
            "count" => count = value.parse().map_err(|_| bad())?,
            "wnum" => wnum = Some(value.parse().map_err(|_| bad())?),
            "wden" => wden = Some(value.parse().map_err(|_| bad())?),
            other => bail!(Failure::usage(format!("unknown parameter `{other}`"))),
        }
    }
    if wnum.is_some() || wden.is_some() {
        params.weights = Some(WeightRange {
            max_numerator: wnum.unwrap_or(1),
            max_denominator: wden.unwrap_or(1),
        });
    }
    Ok((params, count))
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "source".into())
}

fn generate_one(
    kind: GenKind,
    path: &Path,
    want_vc: bool,
) -> Result<(String, Instance, ReductionTrace)> {
    let (source, _) = load_instance(path)?;
    let g = source.graph().clone();
    let (inst, mut trace) = match kind {
        GenKind::TwoSubdivision => {
            let (h, trace) = two_subdivision(&g);
            (Instance::new(h, trace.terminals.clone())?, trace)
        }
        GenKind::ClawDiamond => gen_claw_diamond(&g)?,
        GenKind::TwoUnipolar => gen_two_unipolar(&g)?,
        GenKind::Random => unreachable!("random instances have no source"),
    };
    if want_vc {
        let vc = min_vertex_cover_exact(&g, None)?;
        trace.vc = Some(vc.vertices().len() as u64);
    }
    let name = format!("{}-{}", stem(path), kind_name(kind));
    Ok((name, inst, trace))
}

fn kind_name(kind: GenKind) -> &'static str {
    match kind {
        GenKind::TwoSubdivision => "two-subdivision",
        GenKind::ClawDiamond => "claw-diamond",
        GenKind::TwoUnipolar => "two-unipolar",
        GenKind::Random => "random",
    }
}

fn generate_cmd(args: &GenerateArgs) -> Result<()> {
    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    let mut files: Vec<(PathBuf, String)> = Vec::new();
    if args.kind == GenKind::Random {
        let text = args
            .params
            .as_deref()
            .ok_or_else(|| Failure::usage("`generate random` needs --params"))?;
        let (params, count) = parse_params(text)?;
        let made: Vec<Result<(PathBuf, String)>> = (0..count as u64)
            .into_par_iter()
            .map(|i| {
                let p = RandomParams {
                    seed: params.seed + i,
                    ..params
                };
                let inst = random_instance(&p)?;
                let name = format!("random-n{}-s{}.svc", p.n, p.seed);
                Ok((args.out.join(name), serialize_instance(&inst)))
            })
            .collect();
        for m in made {
            files.push(m?);
        }
    } else {
        if args.input.is_empty() {
            bail!(Failure::usage("this generator needs --input"));
        }
        let made: Vec<Result<(String, Instance, ReductionTrace)>> = args
            .input
            .par_iter()
            .map(|p| generate_one(args.kind, p, args.vc))
            .collect();
        for m in made {
            let (name, inst, trace) = m?;
            files.push((
                args.out.join(format!("{name}.svc")),
                serialize_instance(&inst),
            ));
            files.push((args.out.join(format!("{name}.trace.json")), trace.to_json()));
        }
    }
    for (path, text) in &files {
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
        println!("{}", path.display());
    }
    Ok(())
}

fn check_graph(inst: &Instance, terminals: bool) -> subcover::Graph {
    if terminals {
        inst.graph().induced_subgraph(inst.terminals()).0
    } else {
        inst.graph().clone()
    }
}

fn check_cmd(args: &CheckArgs, argv: &[String]) -> Result<()> {
    let (property, holds, witness, json) = match &args.what {
        CheckWhat::Hfree {
            h,
            input,
            terminals,
            json,
        } => {
            let (inst, _) = load_instance(input)?;
            let pattern = parse_h_spec(h).map_err(|e| Failure::usage(e.to_string()))?;
            let (g, map) = if *terminals {
                inst.graph().induced_subgraph(inst.terminals())
            } else {
                (inst.graph().clone(), (0..inst.vertex_count()).collect())
            };
            let found = contains_induced(&g, &pattern)?;
            let witness = found.map(|w| w.iter().map(|&v| map[v]).collect::<Vec<_>>());
            (
                format!("{}-free", pattern.label()),
                witness.is_none(),
                witness,
                *json,
            )
        }
        CheckWhat::Class {
            name,
            input,
            terminals,
            json,
        } => {
            let (inst, _) = load_instance(input)?;
            let g = check_graph(&inst, *terminals);
            let (label, holds) = match name {
                ClassName::Cluster => ("cluster", is_cluster_graph(&g)),
                ClassName::Bipartite => ("bipartite", is_bipartite(&g).is_some()),
                ClassName::TwoUnipolar => (
                    "2-unipolar",
                    find_2_unipolar_partition(&g, DEFAULT_UNIPOLAR_CAP)?.is_some(),
                ),
                ClassName::Subcubic => ("subcubic", g.max_degree() <= 3),
            };
            (label.to_string(), holds, None, *json)
        }
    };
    if json {
        let report = CheckReport {
            command: argv.to_vec(),
            property,
            holds,
            witness: witness.as_deref().map(one_based),
        };
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("c {property}: {}", if holds { "yes" } else { "no" });
        if let Some(w) = witness {
            println!("w {}", join(&one_based(&w)));
        }
    }
    Ok(())
}

fn verify_cmd(args: &VerifyArgs, argv: &[String]) -> Result<()> {
    let start = Instant::now();
    let (inst, text) = load_instance(&args.input)?;
    let inst = if args.weighted {
        inst
    } else {
        inst.without_weights()
    };
    let sol = parse_solution(&read(&args.solution)?)
        .map_err(|e| Failure::usage(format!("{}: {e}", args.solution.display())))?;
    let n = inst.vertex_count();
    if let Some(&v) = sol.vertices.iter().find(|&&v| v >= n) {
        bail!(Failure::verification(format!(
            "vertex {} out of range 1..={n}",
            v + 1
        )));
    }
    let set = VertexSet::from_iter(n, sol.vertices.iter().copied());
    let measure = inst.measure_of(&set);
    let mut report = RunReport::new(argv, Some(digest(text.as_bytes())));
    let mut problems = Vec::new();
    if !is_t_vertex_cover(&inst, &set)? {
        problems.push("not a terminal cover".to_string());
    }
    if let Some(claimed) = &sol.measure {
        if *claimed != measure.to_string() {
            problems.push(format!("solution claims s {claimed}, recomputed {measure}"));
        }
    }
    if let Some(path) = &args.trace {
        let trace = ReductionTrace::from_json(&read(path)?, n)?;
        let vc = match trace.vc {
            Some(vc) => vc,
            None => min_vertex_cover_exact(&trace.source, None)?
                .vertices()
                .len() as u64,
        };
        let optimum = Measure::Size((vc + trace.offset) as usize);
        if measure != optimum {
            problems.push(format!(
                "measure {measure} differs from certified optimum {optimum}"
            ));
        }
    }
    report.measure = Some(measure.to_string());
    report.witness = Some(one_based(&sol.vertices));
    report.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    if problems.is_empty() {
        if args.json {
            println!("{}", report.to_json());
        } else {
            println!("c verified: s {measure}");
        }
        return Ok(());
    }
    let err = anyhow!(Failure::verification(problems.join("; ")));
    if args.json {
        report.fail(&err, start);
        report.measure = Some(measure.to_string());
        println!("{}", report.to_json());
    }
    Err(err)
}

fn enum_mis_cmd(args: &EnumMisArgs) -> Result<()> {
    let (inst, _) = load_instance(&args.input)?;
    let mut it = enum_maximal_independent_sets(inst.graph());
    let mut count = 0u64;
    let mut out = String::new();
    for set in it.by_ref() {
        if args.limit.is_some_and(|l| count >= l) {
            break;
        }
        count += 1;
        if !args.count_only {
            out.push_str(&format!("i {}\n", join(&one_based(&set.to_vec()))));
        }
    }
    print!("{out}");
    println!("c count {count}");
    println!("c max-delay-probes {}", it.max_delay_probes());
    Ok(())
}

fn layout_cmd(args: &LayoutArgs) -> Result<()> {
    let (inst, _) = load_instance(&args.input)?;
    let g = inst.graph();
    let n = g.vertex_count();
    let layout = match args.kind {
        LayoutKind::Search => search_layout(g)?.0,
        LayoutKind::Caterpillar => {
            let order = match &args.order {
                Some(o) => parse_order(o, n)?,
                None => (0..n).collect(),
            };
            caterpillar_from_order(&order, n)?
        }
    };
    let width = layout.width(g)?;
    let text = format!(
        "# mim-width {}{}\n{}",
        width.value,
        if width.exact { "" } else { " (lower bound)" },
        layout.serialize()
    );
    match &args.out {
        Some(path) => {
            fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn bench_cmd(args: &BenchArgs) -> Result<()> {
    if args.repeat == 0 {
        bail!(Failure::usage("--repeat must be at least 1"));
    }
    let rows: Vec<Result<String>> = args
        .input
        .par_iter()
        .map(|path| {
            let (inst, _) = load_instance(path)?;
            let mut times = Vec::with_capacity(args.repeat);
            let mut last = None;
            for _ in 0..args.repeat {
                let start = Instant::now();
                last = Some(run_solver(&inst, &args.solver)?);
                times.push(start.elapsed().as_secs_f64() * 1e3);
            }
            times.sort_by(f64::total_cmp);
            let solved = last.expect("repeat is positive");
            Ok(format!(
                "{} {} s={} median_ms={:.3} min_ms={:.3}",
                path.display(),
                solved.solution.algorithm(),
                solved.solution.measure(),
                times[times.len() / 2],
                times[0]
            ))
        })
        .collect();
    for row in rows {
        println!("{}", row?);
    }
    Ok(())
}
