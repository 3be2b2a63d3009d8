//! `distk`: transform, construct, solve, verify and certify from the shell.
//!
//! Exit status: 0 when everything passes, 1 when a claim or certificate
//! check fails, 2 on usage, parse or I/O errors.

use std::fs::{self, File};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use distk_core::constructions::{ex2_bound, ex3_bound, ConstructionSpec};
use distk_core::harness::{self, Claim, VerifyOptions, EX3_N8};
use distk_core::search::{solve_with, ClassFilter, SearchProblem, Source};
use distk_core::{graph6, SearchError};

#[derive(Parser)]
#[command(name = "distk", version, about = "Exact Turán-type computations on distance-k graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Replace every graph of a graph6 stream by its distance-k graph.
    Transform {
        /// Input graph6 file (`-` for stdin).
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a named construction and print it with a summary line.
    Construct(ConstructArgs),
    /// Exact maximum of |E(G_k)| subject to ω(G_k) <= t.
    Solve(SolveArgs),
    /// Run a named claim and write its report.
    Verify {
        /// Claim id; `list` prints the known ids.
        claim: String,
        /// Orders to check: `7`, `5..9`, `5..=9` or `4,5,6`.
        #[arg(long)]
        n: Option<String>,
        /// Report path prefix; `.json` and `.csv` are appended.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Directory for witness graph6 files.
        #[arg(long)]
        witnesses: Option<PathBuf>,
    },
    /// Check ω(G_k) <= t and |E(G_k)| = claim for every graph in a file.
    Certify {
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        claim: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Turan,
    G2Extremal,
    DoubleBroom,
    TBroom,
    Spider,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(value_enum, required_unless_present = "json")]
    variant: Option<Variant>,
    /// Full specification as JSON, e.g. `{"variant":"Spider","n":9,"legs":4,"attachment_counts":[1,1,1,1]}`.
    #[arg(long, conflicts_with = "variant")]
    json: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Distance parameter of brooms.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    size_a: Option<usize>,
    #[arg(long)]
    size_b_prime: Option<usize>,
    #[arg(long)]
    legs: Option<usize>,
    /// Comma-separated leaf or attachment counts.
    #[arg(long, value_delimiter = ',')]
    counts: Option<Vec<usize>>,
    /// Distance used in the summary line.
    #[arg(long)]
    distance: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    All,
    Connected,
    TriangleFreeNonbipartite,
}

#[derive(Clone, Copy, ValueEnum)]
enum SourceArg {
    Internal,
    File,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    t: usize,
    #[arg(long, value_enum, default_value = "all")]
    class: ClassArg,
    #[arg(long, value_enum, default_value = "internal")]
    source: SourceArg,
    /// graph6 file for `--source file`.
    #[arg(long, short)]
    input: Option<PathBuf>,
    /// Outcome JSON path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Witness graph6 path.
    #[arg(long)]
    witnesses: Option<PathBuf>,
    #[arg(long)]
    shards: Option<usize>,
}

/// Failure that maps to an exit status.
enum Failure {
    Check,
    Usage(String),
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn open_input(path: &Path) -> Result<Box<dyn BufRead>, Failure> {
    if path.as_os_str() == "-" {
        return Ok(Box::new(BufReader::new(io::stdin())));
    }
    let file = File::open(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok(Box::new(BufReader::new(file)))
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(File::create(p).map_err(|e| usage(format!("{}: {e}", p.display())))?),
        None => Box::new(io::stdout().lock()),
    })
}

fn parse_range(text: &str) -> Result<Vec<usize>, Failure> {
    let bad = || usage(format!("invalid n range `{text}`"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    if let Some((lo, hi)) = text.split_once("..") {
        let (lo, hi) = (num(lo)?, num(hi.trim_start_matches('='))?);
        if lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    text.split(',').map(num).collect()
}

fn construct_spec(args: &ConstructArgs) -> Result<ConstructionSpec, Failure> {
    if let Some(text) = &args.json {
        return serde_json::from_str(text).map_err(|e| usage(format!("invalid spec JSON: {e}")));
    }
    let need = |v: Option<usize>, name: &str| v.ok_or_else(|| usage(format!("missing --{name}")));
    let spec = match args.variant.expect("clap requires a variant or --json") {
        Variant::Turan => ConstructionSpec::Turan { n: need(args.n, "n")?, r: need(args.r, "r")? },
        Variant::G2Extremal => {
            let n = need(args.n, "n")?;
            match (args.size_a, args.size_b_prime) {
                (Some(size_a), Some(size_b_prime)) => ConstructionSpec::G2Extremal { n, size_a, size_b_prime },
                (None, None) => distk_core::constructions::g2_extremal_specs(n)
                    .into_iter()
                    .next()
                    .ok_or_else(|| usage(format!("no G2Extremal graph on n = {n} vertices")))?,
                _ => return Err(usage("give both --size-a and --size-b-prime or neither")),
            }
        }
        Variant::DoubleBroom => {
            let (n, k) = (need(args.n, "n")?, need(args.k, "k")?);
            match (args.a, args.b) {
                (Some(a), Some(b)) => ConstructionSpec::DoubleBroom { n, k, a, b },
                (None, None) => ConstructionSpec::balanced_double_broom(n, k).map_err(|e| usage(e.to_string()))?,
                _ => return Err(usage("give both --a and --b or neither")),
            }
        }
        Variant::TBroom => ConstructionSpec::TBroom {
            k: need(args.k, "k")?,
            t: need(args.t, "t")?,
            leaf_counts: args.counts.clone().ok_or_else(|| usage("missing --counts"))?,
        },
        Variant::Spider => {
            let (n, legs) = (need(args.n, "n")?, need(args.legs, "legs")?);
            match &args.counts {
                Some(c) => ConstructionSpec::Spider { n, legs, attachment_counts: c.clone() },
                None => ConstructionSpec::spider_round_robin(n, legs).map_err(|e| usage(e.to_string()))?,
            }
        }
    };
    Ok(spec)
}

fn default_distance(spec: &ConstructionSpec) -> usize {
    match spec {
        ConstructionSpec::Turan { .. } => 1,
        ConstructionSpec::G2Extremal { .. } => 2,
        ConstructionSpec::DoubleBroom { k, .. } | ConstructionSpec::TBroom { k, .. } => *k,
        ConstructionSpec::Spider { .. } => 3,
    }
}

fn construct(args: ConstructArgs) -> Result<(), Failure> {
    let spec = construct_spec(&args)?;
    let g = spec.build().map_err(|e| usage(e.to_string()))?;
    let k = args.distance.unwrap_or_else(|| default_distance(&spec));
    let summary = harness::construction_summary(&g, k)?;
    let line = graph6::emit(&g);
    match &args.out {
        Some(path) => {
            fs::write(path, format!("{line}\n"))?;
            println!("{summary}");
        }
        None => println!("{line}\n{summary}"),
    }
    Ok(())
}

fn formula_value(n: usize, k: usize, t: usize, class: ClassFilter) -> Option<u64> {
    if t != 2 || class != ClassFilter::All {
        return None;
    }
    match k {
        2 => ex2_bound(n as u64).ok(),
        3 => ex3_bound(n as u64).ok().map(|b| b.value),
        _ => None,
    }
}

fn solve(args: SolveArgs) -> Result<(), Failure> {
    let class = match args.class {
        ClassArg::All => ClassFilter::All,
        ClassArg::Connected => ClassFilter::Connected,
        ClassArg::TriangleFreeNonbipartite => ClassFilter::TriangleFreeNonbipartite,
    };
    let source = match (args.source, args.input) {
        (SourceArg::Internal, None) => Source::Internal,
        (SourceArg::File, Some(path)) => Source::Graph6File(path),
        (SourceArg::Internal, Some(_)) => return Err(usage("--input needs --source file")),
        (SourceArg::File, None) => return Err(usage("--source file needs --input")),
    };
    let problem = SearchProblem::new(args.n, args.k, args.t).with_class(class).with_source(source);
    let mut opts = harness::options_from_env();
    if let Some(s) = args.shards {
        opts.shards = s;
    }
    let out = solve_with(&problem, &opts)?;
    let formula = formula_value(args.n, args.k, args.t, class);
    let witnesses = out.witness_g6();
    let report = json!({
        "problem": out.problem,
        "optimum": out.optimum,
        "formula_value": formula,
        "extremal_count": out.extremal.len(),
        "witnesses": witnesses,
        "enumerated": out.enumerated,
        "elapsed_ms": out.elapsed.as_millis() as u64,
    });
    if let Some(path) = &args.out {
        fs::write(path, serde_json::to_string_pretty(&report).expect("serializable") + "\n")?;
    }
    if let Some(path) = &args.witnesses {
        fs::write(path, witnesses.iter().map(|w| format!("{w}\n")).collect::<String>())?;
    }
    println!("optimum {}", out.optimum);
    println!("extremal classes {}, enumerated {}", out.extremal.len(), out.enumerated);
    if let Some(f) = formula {
        println!("formula value {f}");
        if args.k == 3 && args.n == 8 && class == ClassFilter::All {
            println!(
                "note: k = 3, n = 8 is the exceptional case of the distance-3 bound; \
                 exact value {} (recorded {EX3_N8})",
                out.optimum
            );
        }
    }
    Ok(())
}

fn verify(
    claim: String,
    n: Option<String>,
    report: Option<PathBuf>,
    witnesses: Option<PathBuf>,
) -> Result<(), Failure> {
    if claim == "list" {
        for c in Claim::ALL {
            println!("{}", c.id());
        }
        return Ok(());
    }
    let claim = Claim::parse(&claim).ok_or_else(|| usage(format!("unknown claim `{claim}`")))?;
    let range = match n {
        Some(text) => parse_range(&text)?,
        None => Vec::new(),
    };
    let opts = VerifyOptions { solve: harness::options_from_env(), witness_dir: witnesses };
    let rep = harness::verify(claim, &range, &opts)?;
    let json = serde_json::to_string_pretty(&rep).expect("serializable") + "\n";
    let csv = rep.to_csv()?;
    match &report {
        Some(prefix) => {
            if let Some(parent) = prefix.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            let base = prefix.display();
            fs::write(format!("{base}.json"), json)?;
            fs::write(format!("{base}.csv"), &csv)?;
        }
        None => print!("{json}"),
    }
    for row in &rep.rows {
        let verdict = if row.matches { "PASS" } else { "FAIL" };
        eprintln!("{} n={} {verdict}", rep.claim_id, row.n);
    }
    eprintln!("{}: {}", rep.claim_id, rep.overall);
    if rep.passed() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn certify(input: PathBuf, k: usize, t: usize, claim: usize) -> Result<(), Failure> {
    let verdicts = harness::certify(open_input(&input)?, k, t, claim)?;
    for v in &verdicts {
        let verdict = if v.pass { "PASS" } else { "FAIL" };
        println!("line {}: {verdict} omega={} edges={}", v.line, v.clique_number, v.edges);
    }
    if verdicts.iter().all(|v| v.pass) {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Transform { input, k, out } => {
            let reader = open_input(&input)?;
            let mut writer = open_output(out.as_deref())?;
            harness::transform(reader, &mut writer, k)?;
            writer.flush()?;
            Ok(())
        }
        Command::Construct(args) => construct(args),
        Command::Solve(args) => solve(args),
        Command::Verify { claim, n, report, witnesses } => verify(claim, n, report, witnesses),
        Command::Certify { input, k, t, claim } => certify(input, k, t, claim),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("distk: {msg}");
            ExitCode::from(2)
        }
    }
}
