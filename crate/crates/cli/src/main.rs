mod input;

use clap::{Args, Parser, Subcommand, ValueEnum};
use equicolor::coloring::{verify_classes, ColoringJson};
use equicolor::graph::{generate, to_dimacs, to_graph6, EdgeListJson, GeneratorSpec, Graph};
use equicolor::oracle::{decide_equitable_with_cap, exact_params_with_cap, DEFAULT_CAP};
use equicolor::search::{audit, run_local_search, trivial_coloring, DEFAULT_RADIUS, MAX_RADIUS};
use equicolor::solver::{
    equitable_delta_with, equitable_k_with, SolveError, SolveOptions, SolveReport, StallCertificate, Start,
};
use equicolor::sweep::{sweep, SweepOptions};
use equicolor::Coloring;
use input::{load_corpus, load_graph, InputFormat};
use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_PRECONDITION: u8 = 1;
const EXIT_INTERNAL: u8 = 2;
const EXIT_USAGE: u8 = 64;
const CERT_ENV: &str = "EQUICOLOR_CERT_DIR";
const DEFAULT_CERT_DIR: &str = "certificates";

#[derive(Parser, Debug)]
#[command(name = "equicolor", version, about = "Equitable graph colouring toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Equitable Δ-colouring, or an equitable k-colouring with --k.
    Color(ColorArgs),
    /// Check a colouring JSON against a graph.
    Verify(VerifyArgs),
    /// Structural audit of a colouring (default: the move-closed one).
    Audit(AuditArgs),
    /// Exhaustive answers for small graphs.
    Oracle(OracleArgs),
    /// Solve every graph of a corpus and tally the outcomes.
    Sweep(SweepArgs),
    /// Print a generated graph.
    Gen(GenArgs),
}

#[derive(Args, Debug)]
struct GraphSource {
    /// Graph file (.col DIMACS, .g6 graph6, .json edge list).
    #[arg(long = "in", value_name = "FILE", required_unless_present = "gen", conflicts_with = "gen")]
    input: Option<PathBuf>,
    /// Generate the graph instead, e.g. `cycle:7` or `window-gnp:20:0.3`.
    #[arg(long, value_name = "SPEC")]
    gen: Option<GeneratorSpec>,
    /// Seed for --gen.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Override the format implied by the file extension.
    #[arg(long, value_enum)]
    input_format: Option<InputFormat>,
}

impl GraphSource {
    fn load(&self) -> Result<Graph, String> {
        match (&self.input, &self.gen) {
            (Some(path), _) => load_graph(path, self.input_format),
            (None, Some(spec)) => generate(spec, self.seed).map_err(|e| e.to_string()),
            (None, None) => Err("no graph given".into()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Summary,
}

#[derive(Args, Debug)]
struct ColorArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Number of classes; defaults to Δ.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_RADIUS, value_parser = radius)]
    radius: usize,
    #[arg(long, value_enum, default_value = "trivial")]
    start: StartArg,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
    /// Include the local-search trace in the JSON.
    #[arg(long)]
    trace: bool,
    /// Where stall certificates go (else $EQUICOLOR_CERT_DIR, else ./certificates).
    #[arg(long, value_name = "DIR")]
    cert_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StartArg {
    Trivial,
    Greedy,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_name = "FILE")]
    graph: PathBuf,
    /// Colouring JSON with `classes` and `k`.
    #[arg(long, value_name = "FILE")]
    coloring: PathBuf,
    /// Expected class count; defaults to the file's `k`.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: Option<u64>,
    #[arg(long, value_enum)]
    input_format: Option<InputFormat>,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
}

#[derive(Args, Debug)]
struct AuditArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Colouring to audit; without it the move-closed colouring is used.
    #[arg(long, value_name = "FILE")]
    coloring: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_RADIUS, value_parser = radius)]
    radius: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Decide equitable k-colourability; without it, compute χ, χ=, χ=* and α.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: Option<u64>,
    /// Largest order the exhaustive search accepts.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Corpus file, one graph6 code per line.
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    #[arg(long, value_enum)]
    input_format: Option<InputFormat>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    /// Cross-check each solved graph with the exhaustive oracle.
    #[arg(long)]
    oracle: bool,
    #[arg(long, default_value_t = DEFAULT_RADIUS, value_parser = radius)]
    radius: usize,
    /// `json` leaves out wall-clock timing so reruns compare byte for byte.
    #[arg(long, value_enum, default_value = "summary")]
    format: OutputFormat,
    #[arg(long, value_name = "DIR")]
    cert_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenArgs {
    /// Generator, e.g. `complete:5`, `kab:3:3`, `hypercube:3`, `gnp:20:0.3`.
    spec: GeneratorSpec,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "graph6")]
    out_format: GenFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenFormat {
    Graph6,
    Dimacs,
    Json,
}

fn radius(s: &str) -> Result<usize, String> {
    let r: usize = s.parse().map_err(|e| format!("{e}"))?;
    if (1..=MAX_RADIUS).contains(&r) {
        Ok(r)
    } else {
        Err(format!("radius must lie in 1..={MAX_RADIUS}"))
    }
}

/// A failed run: exit code plus message for stderr.
struct Failure(u8, String);

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure(EXIT_USAGE, msg.into())
    }
}

fn emit<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("output serializes"));
}

fn cert_dir(flag: &Option<PathBuf>) -> PathBuf {
    flag.clone()
        .or_else(|| std::env::var_os(CERT_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_CERT_DIR))
}

fn fnv1a(s: &str) -> u64 {
    s.bytes()
        .fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// Writes the certificate through a temporary file and a rename.
fn write_certificate(dir: &Path, cert: &StallCertificate) -> std::io::Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let name = format!("stall-{:016x}.json", fnv1a(&cert.graph6));
    let path = dir.join(&name);
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(serde_json::to_string_pretty(cert).expect("certificate serializes").as_bytes())?;
        f.write_all(b"\n")?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, &path)?;
    Ok(path)
}

fn format_classes(classes: &[Vec<usize>]) -> String {
    classes
        .iter()
        .map(|c| format!("{{{}}}", c.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn color(args: ColorArgs) -> Result<u8, Failure> {
    let g = args.source.load().map_err(Failure::usage)?;
    let opts = SolveOptions {
        radius: args.radius,
        start: match args.start {
            StartArg::Trivial => Start::Trivial,
            StartArg::Greedy => Start::Greedy,
        },
    };
    let outcome = match args.k {
        Some(k) => equitable_k_with(&g, k as usize, opts),
        None => equitable_delta_with(&g, opts),
    };
    let report = SolveReport::new(&outcome, args.trace);
    let code = match &outcome {
        Ok(_) => EXIT_OK,
        Err(SolveError::Stall(cert)) => {
            let dir = cert_dir(&args.cert_dir);
            match write_certificate(&dir, cert) {
                Ok(path) => eprintln!("stall certificate written to {}", path.display()),
                Err(e) => eprintln!("could not write stall certificate to {}: {e}", dir.display()),
            }
            EXIT_INTERNAL
        }
        Err(SolveError::Internal(_)) => EXIT_INTERNAL,
        Err(_) => EXIT_PRECONDITION,
    };
    match args.format {
        OutputFormat::Json => emit(&report),
        OutputFormat::Summary => {
            println!("status: {}", serde_json::to_value(report.status).expect("status").as_str().unwrap_or("?"));
            if let Some(k) = report.k {
                println!("k: {k}");
            }
            if let Some(sigma) = report.sigma {
                println!("sigma: {sigma}");
            }
            if let Some(p) = report.profiles {
                println!(
                    "profiles: search {} -> split {} -> balance {}",
                    p.after_search, p.after_split, p.after_balance
                );
            }
            if let Some(classes) = &report.classes {
                println!("classes: {}", format_classes(classes));
            }
            if let Some(msg) = &report.message {
                println!("message: {msg}");
            }
        }
    }
    Ok(code)
}

#[derive(Serialize)]
struct VerifyOutput {
    ok: bool,
    #[serde(flatten)]
    report: equicolor::coloring::VerifyReport,
}

fn verify_cmd(args: VerifyArgs) -> Result<u8, Failure> {
    let g = load_graph(&args.graph, args.input_format).map_err(Failure::usage)?;
    let text = std::fs::read_to_string(&args.coloring)
        .map_err(|e| Failure::usage(format!("{}: {e}", args.coloring.display())))?;
    let col: ColoringJson = serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("{}: {e}", args.coloring.display())))?;
    let k = args.k.map_or(col.k, |k| k as usize);
    let report = verify_classes(&g, &col.classes, Some(k));
    let ok = report.ok();
    match args.format {
        OutputFormat::Json => emit(&VerifyOutput { ok, report }),
        OutputFormat::Summary => {
            println!("proper: {}", report.proper);
            println!("equitable: {}", report.equitable);
            println!("classes: {} (expected {k})", report.class_count);
            for v in &report.violations {
                println!("violation: {}", serde_json::to_string(v).expect("violation serializes"));
            }
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_PRECONDITION })
}

#[derive(Serialize)]
struct AuditOutput {
    profile: equicolor::Profile,
    classes: Vec<Vec<usize>>,
    clean: bool,
    #[serde(flatten)]
    report: equicolor::search::AuditReport,
}

fn audit_cmd(args: AuditArgs) -> Result<u8, Failure> {
    let g = args.source.load().map_err(Failure::usage)?;
    let c: Coloring = match &args.coloring {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            let col: ColoringJson =
                serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            col.into_coloring(g.order())
                .map_err(|e| Failure(EXIT_PRECONDITION, e.to_string()))?
        }
        None => {
            run_local_search(&g, &trivial_coloring(&g), args.radius)
                .map_err(|e| Failure(EXIT_INTERNAL, e.to_string()))?
                .0
        }
    };
    let profile = c.profile().map_err(|e| Failure(EXIT_PRECONDITION, e.to_string()))?;
    if !verify_classes(&g, c.classes(), None).proper {
        return Err(Failure(EXIT_PRECONDITION, "colouring is not proper".into()));
    }
    let report = audit(&g, &c);
    let clean = report.is_clean();
    match args.format {
        OutputFormat::Json => emit(&AuditOutput {
            profile,
            classes: c.classes().to_vec(),
            clean,
            report,
        }),
        OutputFormat::Summary => {
            println!("profile: {profile}");
            println!("classes: {}", format_classes(c.classes()));
            println!("violations: {}", report.violations.len());
            for v in &report.violations {
                println!("  property {} on classes {:?}: {}", v.statement, v.classes, v.detail);
            }
        }
    }
    Ok(if clean { EXIT_OK } else { EXIT_PRECONDITION })
}

#[derive(Serialize)]
struct DecideOutput {
    k: usize,
    equitable: bool,
    classes: Option<Vec<Vec<usize>>>,
}

fn oracle_cmd(args: OracleArgs) -> Result<u8, Failure> {
    let g = args.source.load().map_err(Failure::usage)?;
    let precondition = |e: equicolor::oracle::OracleError| Failure(EXIT_PRECONDITION, e.to_string());
    match args.k {
        Some(k) => {
            let k = k as usize;
            let witness = decide_equitable_with_cap(&g, k, args.cap).map_err(precondition)?;
            let out = DecideOutput {
                k,
                equitable: witness.is_some(),
                classes: witness.map(|w| w.classes().to_vec()),
            };
            match args.format {
                OutputFormat::Json => emit(&out),
                OutputFormat::Summary => match &out.classes {
                    Some(c) => println!("equitable {k}-colouring: {}", format_classes(c)),
                    None => println!("no equitable {k}-colouring"),
                },
            }
        }
        None => {
            let p = exact_params_with_cap(&g, args.cap).map_err(precondition)?;
            match args.format {
                OutputFormat::Json => emit(&p),
                OutputFormat::Summary => {
                    println!("chi: {}\nchi_eq: {}\nchi_eq_star: {}\nalpha: {}", p.chi, p.chi_eq, p.chi_eq_star, p.alpha)
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn sweep_cmd(args: SweepArgs) -> Result<u8, Failure> {
    let corpus = load_corpus(&args.input, args.input_format).map_err(Failure::usage)?;
    let solve = SolveOptions {
        radius: args.radius,
        ..SolveOptions::default()
    };
    let report = sweep(
        &corpus,
        SweepOptions {
            solve,
            oracle_check: args.oracle,
            jobs: args.jobs.map(|j| j as usize),
            ..SweepOptions::default()
        },
    );
    let dir = cert_dir(&args.cert_dir);
    for rec in &report.failures {
        if let Err(SolveError::Stall(cert)) = equitable_delta_with(&corpus[rec.index], solve) {
            match write_certificate(&dir, &cert) {
                Ok(path) => eprintln!("stall certificate written to {}", path.display()),
                Err(e) => eprintln!("could not write stall certificate to {}: {e}", dir.display()),
            }
        }
    }
    match args.format {
        OutputFormat::Json => println!("{}", report.canonical_json()),
        OutputFormat::Summary => println!("{report}"),
    }
    Ok(if report.is_clean() { EXIT_OK } else { EXIT_INTERNAL })
}

fn gen_cmd(args: GenArgs) -> Result<u8, Failure> {
    let g = generate(&args.spec, args.seed).map_err(|e| Failure::usage(e.to_string()))?;
    match args.out_format {
        GenFormat::Graph6 => println!("{}", to_graph6(&g)),
        GenFormat::Dimacs => print!("{}", to_dimacs(&g)),
        GenFormat::Json => emit(&EdgeListJson::from(&g)),
    }
    Ok(EXIT_OK)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    let result = match cli.command {
        Command::Color(a) => color(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Audit(a) => audit_cmd(a),
        Command::Oracle(a) => oracle_cmd(a),
        Command::Sweep(a) => sweep_cmd(a),
        Command::Gen(a) => gen_cmd(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("equicolor: {msg}");
            ExitCode::from(code)
        }
    }
}
