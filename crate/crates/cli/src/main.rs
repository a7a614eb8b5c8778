use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use clique_extremal::bounds::{
    boundt_value, g_bound, g_recursion_check, optimize_constant_with, BoundParams, ConstantMode,
};
use clique_extremal::cliques::{count_cliques_oracle, count_cliques_peeling_with, ORACLE_GUARD};
use clique_extremal::constructions::{
    disjoint_union_matching_complements, immersion_tightness, matching_complement, random_graph,
    star_of_clique,
};
use clique_extremal::embed::{
    find_immersion_with_ends, immerse_dense, sigma_exhaustive_with, subdivide_dense,
    verify_immersion, verify_subdivision, Certificate, CertificateKind, EmbedError, ImmersionMode,
    IMMERSION_GUARD, SIGMA_GUARD,
};
use clique_extremal::io::{self, GraphFormat};
use clique_extremal::params::{
    averaging_upper_bound, delta_lower_bound, min_tset_missing_with, t_param_with, ParamError,
    PARAMS_GUARD,
};
use clique_extremal::suite::{self, SuiteConfig};
use clique_extremal::{Execution, Graph, GuardExceeded, VertexSet};

const MAX_N_VAR: &str = "CLIQUE_EXTREMAL_MAX_N";

#[derive(Parser)]
#[command(
    name = "clique-extremal",
    version,
    about = "Clique counting, embeddings and extremal bounds"
)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Run every data-parallel loop sequentially.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count all cliques (including the empty one) and the clique number.
    Count {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = CountMethod::Peeling)]
        method: CountMethod,
        /// Include the outer peeling trace.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
    },
    /// Largest h with a subdivision of K_h, by exhaustive search.
    Sigma {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        limit_n: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// t(G), its witness, Δ and the bounds on σ.
    Params {
        #[command(flatten)]
        input: InputArgs,
        /// Also report the minimum number of missing edges over t-sets.
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Build a certificate for a clique on the given terminals.
    Embed {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, alias = "lemma", value_enum)]
        kind: EmbedKind,
        /// Comma-separated vertex list.
        #[arg(long, value_delimiter = ',', required = true)]
        terminals: Vec<usize>,
        /// Search all routings instead of the constructive embedder
        /// (immersions only, small graphs).
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, value_enum, default_value_t = Mode::Strong)]
        mode: Mode,
        /// Write the certificate here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a certificate against a graph.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        certificate: PathBuf,
        /// Immersion strength to check; ignored for subdivisions.
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long)]
        json: bool,
    },
    /// Emit a member of an extremal family.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: Option<usize>,
        /// Edge probability for `random`.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Edgelist)]
        format: FormatArg,
    },
    /// Evaluate the counting bounds and optimize their exponents.
    Bounds {
        #[arg(long, value_enum)]
        mode: BoundMode,
        /// `m,x,t,d`.
        #[arg(long, value_parser = parse_params)]
        params: Option<BoundParams>,
        #[arg(long)]
        json: bool,
    },
    /// Run the verification suite and print one line per criterion.
    VerifyPaper {
        /// Smaller instance counts.
        #[arg(long)]
        quick: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run a single criterion (1-11).
        #[arg(long)]
        criterion: Option<u32>,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Graph file; `-` reads standard input.
    #[arg(long)]
    input: PathBuf,
    /// Defaults to graph6 for `.g6` files and edge list otherwise.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Edgelist,
    Graph6,
}

impl From<FormatArg> for GraphFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Edgelist => GraphFormat::EdgeList,
            FormatArg::Graph6 => GraphFormat::Graph6,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CountMethod {
    Peeling,
    Oracle,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum EmbedKind {
    Immersion,
    Subdivision,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Weak,
    Strong,
}

impl From<Mode> for ImmersionMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Weak => ImmersionMode::Weak,
            Mode::Strong => ImmersionMode::Strong,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Star,
    Matching,
    Union,
    Tightness,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundMode {
    /// Dense bound for a t-vertex graph: uses x, t, d.
    Boundt,
    Case1,
    Case2,
    Coarse,
    Refined,
    /// Evaluate g(m, x, t, d) itself.
    G,
    RecursionCheck,
}

/// A certificate or report that did not check out; exit code 1.
#[derive(Debug)]
struct VerificationFailed(String);

impl std::fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for VerificationFailed {}

fn parse_list(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("`{p}`: {e}")))
        .collect()
}

fn parse_params(s: &str) -> Result<BoundParams, String> {
    match parse_list(s)?[..] {
        [m, x, t, d] => Ok(BoundParams::new(m, x, t, d)),
        _ => Err("expected four integers m,x,t,d".into()),
    }
}

/// `default` unless the environment overrides it.
fn guard_limit(default: usize) -> Result<usize> {
    match std::env::var(MAX_N_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("{MAX_N_VAR}={v} is not a vertex count")),
        Err(_) => Ok(default),
    }
}

fn read_graph(args: &InputArgs) -> Result<Graph> {
    let text = if args.input == Path::new("-") {
        std::io::read_to_string(std::io::stdin()).context("reading standard input")?
    } else {
        std::fs::read_to_string(&args.input)
            .with_context(|| format!("reading {}", args.input.display()))?
    };
    let format = args.format.map(GraphFormat::from).unwrap_or_else(|| {
        if args.input.extension().is_some_and(|e| e == "g6") {
            GraphFormat::Graph6
        } else {
            GraphFormat::EdgeList
        }
    });
    io::parse(&text, format).with_context(|| format!("parsing {}", args.input.display()))
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if cause.is::<VerificationFailed>() {
            return 1;
        }
        if cause.is::<GuardExceeded>() || matches!(cause.downcast_ref(), Some(ParamError::Guard(_)))
        {
            return 3;
        }
    }
    2
}

fn run(cli: Cli) -> Result<()> {
    configure_threads(cli.threads)?;
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match cli.command {
        Command::Count {
            input,
            method,
            trace,
            json,
        } => count(&read_graph(&input)?, method, trace, json, exec),
        Command::Sigma {
            input,
            limit_n,
            json,
        } => sigma(&read_graph(&input)?, limit_n, json, exec),
        Command::Params { input, t, json } => params(&read_graph(&input)?, t, json, exec),
        Command::Embed {
            input,
            kind,
            terminals,
            exhaustive,
            mode,
            output,
        } => {
            let g = read_graph(&input)?;
            let cert = embed(&g, kind, &terminals, exhaustive, mode)?;
            match output {
                Some(path) => std::fs::write(&path, cert.to_json() + "\n")
                    .with_context(|| format!("writing {}", path.display())),
                None => {
                    println!("{}", cert.to_json());
                    Ok(())
                }
            }
        }
        Command::Verify {
            input,
            certificate,
            mode,
            json,
        } => verify(&read_graph(&input)?, &certificate, mode, json),
        Command::Construct {
            family,
            n,
            t,
            p,
            seed,
            format,
        } => {
            let g = construct(family, n, t, p, seed)?;
            print!("{}", io::write(&g, format.into()));
            Ok(())
        }
        Command::Bounds { mode, params, json } => bounds_cmd(mode, params, json, exec),
        Command::VerifyPaper {
            quick,
            seed,
            criterion,
            json,
            csv,
        } => verify_paper(SuiteConfig { seed, quick, exec }, criterion, json, csv),
    }
}

#[cfg(feature = "parallel")]
fn configure_threads(threads: Option<usize>) -> Result<()> {
    if let Some(n) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the thread pool")?;
    }
    Ok(())
}

#[cfg(not(feature = "parallel"))]
fn configure_threads(_threads: Option<usize>) -> Result<()> {
    Ok(())
}

fn count(g: &Graph, method: CountMethod, trace: bool, json: bool, exec: Execution) -> Result<()> {
    let peeling = (method != CountMethod::Oracle).then(|| count_cliques_peeling_with(g, exec));
    let oracle = match method {
        CountMethod::Peeling => None,
        _ => Some(count_cliques_oracle(g, guard_limit(ORACLE_GUARD)?)?),
    };
    let stats = peeling
        .as_ref()
        .map(|(s, _)| s)
        .or(oracle.as_ref())
        .expect("one method ran");
    let agree = match (&peeling, &oracle) {
        (Some((p, _)), Some(o)) => Some(p == o),
        _ => None,
    };
    if json {
        let mut out = json!({ "n": g.n(), "edges": g.edge_count() });
        out.as_object_mut().expect("object").extend(
            serde_json::to_value(stats)?
                .as_object()
                .expect("struct")
                .clone(),
        );
        if let (Some((p, _)), Some(o)) = (&peeling, &oracle) {
            out["agree"] = json!(p == o);
            out["oracle"] = serde_json::to_value(o)?;
        }
        if let (true, Some((_, tr))) = (trace, &peeling) {
            out["trace"] = serde_json::to_value(tr)?;
        }
        print_json(&out)?;
    } else {
        println!("cliques (including empty): {}", stats.count_including_empty);
        println!("clique number: {}", stats.clique_number);
        if let Some((p, _)) = &peeling {
            if let Some(o) = &oracle {
                println!(
                    "peeling: {}  oracle: {}",
                    p.count_including_empty, o.count_including_empty
                );
            }
        }
        if let (true, Some((_, tr))) = (trace, &peeling) {
            println!("peeled vertices: {:?}", tr.picked);
            println!("sizes: {:?}", tr.sizes);
        }
    }
    if agree == Some(false) {
        bail!(VerificationFailed(
            "peeling counter and oracle disagree".into()
        ));
    }
    Ok(())
}

fn sigma(g: &Graph, limit_n: Option<usize>, json: bool, exec: Execution) -> Result<()> {
    let limit = match limit_n {
        Some(l) => l,
        None => guard_limit(SIGMA_GUARD)?,
    };
    let result = sigma_exhaustive_with(g, limit, exec)?;
    if json {
        print_json(&result)
    } else {
        println!("sigma: {}", result.sigma);
        println!("branch vertices: {:?}", result.witness.terminals);
        Ok(())
    }
}

fn params(g: &Graph, t: Option<usize>, json: bool, exec: Execution) -> Result<()> {
    let limit = guard_limit(PARAMS_GUARD)?;
    let report = t_param_with(g, limit, exec)?;
    let sigma_limit = guard_limit(SIGMA_GUARD)?;
    let sigma = (g.n() <= sigma_limit)
        .then(|| sigma_exhaustive_with(g, sigma_limit, exec).map(|r| r.sigma))
        .transpose()?;
    let tset = t
        .map(|t| -> Result<_> {
            let min = min_tset_missing_with(g, t, limit, exec)?;
            let average = averaging_upper_bound(g, t)?;
            let delta_floor = delta_lower_bound(g.n(), min.missing, t)?;
            Ok((t, min, average, delta_floor))
        })
        .transpose()?;
    if json {
        let mut out = serde_json::to_value(&report)?;
        out["sigma"] = json!(sigma);
        if let Some((t, min, average, floor)) = &tset {
            out["tset"] = json!({
                "t": t,
                "min_missing": min.missing,
                "witness": min.witness,
                "averaging_upper_bound": average.to_string(),
                "delta_lower_bound": floor.to_string(),
            });
        }
        print_json(&out)
    } else {
        println!("n: {}", report.n);
        println!("t(G): {}", report.t_param);
        println!(
            "witness: {:?} ({} missing edges)",
            report.witness_set, report.witness_missing
        );
        println!("max missing degree: {}", report.delta);
        println!(
            "sigma bounds: {} <= sigma <= {}",
            report.sigma_bounds.lower, report.sigma_bounds.upper
        );
        if let Some(s) = sigma {
            println!("sigma: {s}");
        }
        if let Some((t, min, average, floor)) = tset {
            println!(
                "t = {t}: min missing {} at {:?}, average {average}, forces max missing degree >= {floor}",
                min.missing, min.witness
            );
        }
        Ok(())
    }
}

fn terminal_set(g: &Graph, terminals: &[usize]) -> Result<VertexSet> {
    if let Some(&v) = terminals.iter().find(|&&v| v >= g.n()) {
        bail!("terminal {v} out of range for n = {}", g.n());
    }
    let set = VertexSet::from_members(g.n(), terminals.iter().copied());
    if set.len() != terminals.len() {
        bail!("terminals contain duplicates");
    }
    Ok(set)
}

fn embed(
    g: &Graph,
    kind: EmbedKind,
    terminals: &[usize],
    exhaustive: bool,
    mode: Mode,
) -> Result<Certificate> {
    let set = terminal_set(g, terminals)?;
    let built = match (kind, exhaustive) {
        (EmbedKind::Immersion, false) => immerse_dense(g, &set),
        (EmbedKind::Subdivision, false) => subdivide_dense(g, &set),
        (EmbedKind::Immersion, true) => {
            let limit = guard_limit(IMMERSION_GUARD)?;
            return find_immersion_with_ends(g, &set, mode.into(), limit)?.ok_or_else(|| {
                anyhow!(VerificationFailed(format!(
                    "no {} immersion with ends {terminals:?}",
                    mode_name(mode)
                )))
            });
        }
        (EmbedKind::Subdivision, true) => {
            bail!("--exhaustive is only available for immersions; use `sigma` for subdivisions")
        }
    };
    built.map_err(|e| match e {
        EmbedError::Graph(g) => anyhow!(g),
        other => anyhow!(VerificationFailed(format!("hypothesis not met: {other}"))),
    })
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Weak => "weak",
        Mode::Strong => "strong",
    }
}

fn verify(g: &Graph, path: &Path, mode: Option<Mode>, json: bool) -> Result<()> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let cert =
        Certificate::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
    let report = match cert.kind {
        CertificateKind::Subdivision => verify_subdivision(g, &cert),
        CertificateKind::StrongImmersion => {
            verify_immersion(g, &cert, mode.map_or(ImmersionMode::Strong, Into::into))
        }
        CertificateKind::WeakImmersion => {
            verify_immersion(g, &cert, mode.map_or(ImmersionMode::Weak, Into::into))
        }
    };
    if json {
        print_json(&report)?;
    } else {
        println!("{report}");
    }
    if !report.valid {
        bail!(VerificationFailed(format!(
            "certificate is invalid ({} violations)",
            report.violations.len()
        )));
    }
    Ok(())
}

fn construct(
    family: Family,
    n: usize,
    t: Option<usize>,
    p: Option<f64>,
    seed: u64,
) -> Result<Graph> {
    let need_t = || t.ok_or_else(|| anyhow!("this family needs --t"));
    Ok(match family {
        Family::Star => star_of_clique(n, need_t()?)?,
        Family::Matching => matching_complement(n)?,
        Family::Union => disjoint_union_matching_complements(n, need_t()?)?,
        Family::Tightness => immersion_tightness(n, need_t()?)?.graph,
        Family::Random => random_graph(n, p.ok_or_else(|| anyhow!("random needs --p"))?, seed)?,
    })
}

fn bounds_cmd(
    mode: BoundMode,
    params: Option<BoundParams>,
    json: bool,
    exec: Execution,
) -> Result<()> {
    let need = || params.ok_or_else(|| anyhow!("this mode needs --params m,x,t,d"));
    let constant = |m: ConstantMode| -> Result<()> {
        let report = optimize_constant_with(m, exec)?;
        if json {
            print_json(&report)
        } else {
            println!("constant: {:.6}", report.constant);
            println!("maximizer: C = {:.6}, D = {}", report.c, report.d);
            println!("branch: {}", report.branch);
            for b in &report.branches {
                println!(
                    "  {:<10} {:.6} at C = {:.6}, D = {}{}",
                    b.branch,
                    b.value,
                    b.c,
                    b.d,
                    if b.included { "" } else { " (excluded)" }
                );
            }
            Ok(())
        }
    };
    match mode {
        BoundMode::Case1 => constant(ConstantMode::Case1),
        BoundMode::Case2 => constant(ConstantMode::Case2),
        BoundMode::Coarse => constant(ConstantMode::Coarse),
        BoundMode::Refined => constant(ConstantMode::Refined),
        BoundMode::Boundt => {
            let p = need()?;
            let v = boundt_value(p.t, p.x, p.d)?;
            if json {
                print_json(&v)
            } else {
                println!("log2 bound: {:.6}", v.log2_bound);
                println!("bound: {:.6}", v.log2_bound.exp2());
                println!("clique number bound: {}", v.clique_number_bound);
                Ok(())
            }
        }
        BoundMode::G => {
            let r = g_bound(need()?)?;
            if json {
                print_json(&r)
            } else {
                println!("log2 g: {:.6}", r.log2_bound);
                println!("per-t exponent: {:.6}", r.per_t_exponent);
                println!("maximizer: C = {:.6}, D = {}", r.maximizer.c, r.maximizer.d);
                println!("slack (log2): {:.6}", r.slack_log2);
                Ok(())
            }
        }
        BoundMode::RecursionCheck => {
            let r = g_recursion_check(need()?)?;
            if json {
                print_json(&r)
            } else {
                println!("log2 g: {:.6}", r.log2_g);
                println!("recursion holds: {}", r.holds);
                if let Some(s) = &r.tightest {
                    println!("tightest step: D1 = {}, rhs {:.6}", s.delta1, s.rhs);
                }
                println!("closes induction: {}", r.closes_induction);
                println!("locally monotone: {}", r.monotone);
                Ok(())
            }
        }
    }
}

fn verify_paper(config: SuiteConfig, criterion: Option<u32>, json: bool, csv: bool) -> Result<()> {
    let report = match criterion {
        Some(id) => {
            let result = suite::run_criterion(id, config)
                .ok_or_else(|| anyhow!("criterion must be in 1..=11, got {id}"))?;
            suite::SuiteReport {
                seed: config.seed,
                quick: config.quick,
                passed: result.passed,
                criteria: vec![result],
                diagnostics: serde_json::Value::Null,
            }
        }
        None => suite::run(config),
    };
    if json {
        println!("{}", report.to_json());
    } else if csv {
        print!("{}", report.to_csv());
    } else {
        print!("{}", report.table());
    }
    if !report.passed {
        let failed: Vec<String> = report
            .criteria
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.id.to_string())
            .collect();
        bail!(VerificationFailed(format!(
            "failed criteria: {}",
            failed.join(", ")
        )));
    }
    Ok(())
}
