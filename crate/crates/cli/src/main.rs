use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use rainbow_core::coloring::extremal_coloring;
use rainbow_core::format::{read_clr, read_trn, write_clr, write_trn, write_witness};
use rainbow_core::rng::derive_seed;
use rainbow_core::search::search;
use rainbow_core::verify::{
    run_sweep, Mode, SweepConfig, Verdict, VerifyConfig, CSV_HEADER, DEFAULT_COLORING_BUDGET,
};
use rainbow_core::{
    count_arborescences, ArcColoring, Error, SearchConfig, SearchStatus, Tournament, Triple,
};

const EXIT_FALSIFIED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "rainbow", version, about = "Rainbow spanning out-trees in arc-colored tournaments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a tournament in .trn format.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Kind::Random)]
        kind: Kind,
        /// Seed for random tournaments; chosen and printed when omitted.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print in-degrees, delta3, the minimizing triples and h.
    Compute {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Write the extremal coloring for a triple (default: first minimizing).
    Extremal {
        input: PathBuf,
        /// Three distinct vertices, e.g. 0,1,2.
        #[arg(long, value_delimiter = ',')]
        triple: Option<Vec<usize>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Look for a rainbow spanning out-tree.
    Search {
        tournament: PathBuf,
        coloring: PathBuf,
        /// Maximum number of search nodes.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Run the verification sweep and print a CSV summary.
    Verify {
        /// Orders to sweep: "5" or an inclusive range "3..5".
        #[arg(long, default_value = "3..5")]
        n_range: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        /// Colorings per exhaustive scan before it is reported inconclusive.
        #[arg(long, default_value_t = DEFAULT_COLORING_BUDGET as u64)]
        budget: u64,
        /// Node budget for each search.
        #[arg(long)]
        search_budget: Option<u64>,
        /// Sweep seed (sampled mode); chosen and printed when omitted.
        #[arg(long)]
        seed: Option<u64>,
        /// Random colorings per tournament in sampled mode.
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        /// Random tournaments per order in sampled mode.
        #[arg(long, default_value_t = 10)]
        tournaments: usize,
        /// Largest order allowed in exhaustive mode.
        #[arg(long, default_value_t = 5)]
        max_exhaustive_order: usize,
        /// Directory for reports.jsonl, summary.csv and quarantined failures.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        jobs: Option<usize>,
        /// Report elapsed_ms as 0 so output is byte-stable.
        #[arg(long)]
        no_timings: bool,
    },
    /// Count spanning out-trees per root.
    Count {
        input: PathBuf,
        #[arg(long)]
        root: Option<usize>,
    },
    /// Time searches on random colorings with h colors.
    Bench {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        /// Chosen and printed when omitted.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Random,
    Transitive,
    Regular,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sampled,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exhaustive => Mode::Exhaustive,
            ModeArg::Sampled => Mode::Sampled,
        }
    }
}

/// A failure that ends the command with the given exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        usage(e.to_string())
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen { n, kind, seed, out } => cmd_gen(n, kind, seed, out.as_deref()),
        Command::Compute { input, format } => cmd_compute(&input, format),
        Command::Extremal { input, triple, out } => cmd_extremal(&input, triple, out.as_deref()),
        Command::Search {
            tournament,
            coloring,
            budget,
        } => cmd_search(&tournament, &coloring, budget),
        Command::Verify {
            n_range,
            mode,
            budget,
            search_budget,
            seed,
            samples,
            tournaments,
            max_exhaustive_order,
            out,
            jobs,
            no_timings,
        } => {
            let mode = Mode::from(mode);
            let seed = match (mode, seed) {
                (_, Some(s)) => s,
                (Mode::Sampled, None) => auto_seed(),
                (Mode::Exhaustive, None) => 0,
            };
            parse_orders(&n_range).and_then(|orders| {
                let config = SweepConfig {
                    orders,
                    mode,
                    verify: VerifyConfig {
                        coloring_budget: budget as u128,
                        search: SearchConfig {
                            budget: search_budget,
                        },
                        samples,
                        seed,
                        ..VerifyConfig::default()
                    },
                    tournaments_per_order: tournaments,
                    max_exhaustive_order,
                    quarantine: None,
                    record_timings: !no_timings,
                };
                with_jobs(jobs, || cmd_verify(config, out.as_deref()))
            })
        }
        Command::Count { input, root } => cmd_count(&input, root),
        Command::Bench { n, trials, seed } => cmd_bench(n, trials, seed),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Seed from the clock, announced on stderr so the run can be replayed.
fn auto_seed() -> u64 {
    let nanos = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_nanos() as u64)
        .unwrap_or(0);
    let seed = derive_seed(nanos, std::process::id() as u64, 0);
    eprintln!("seed: {seed}");
    seed
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn read_tournament(path: &Path) -> Result<Tournament, Failure> {
    read_trn(&read_file(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, body: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, body).map_err(|e| usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn require_h(t: &Tournament) -> Result<usize, Failure> {
    if t.order() < 3 {
        return Err(usage(format!("h is defined for n >= 3, got n = {}", t.order())));
    }
    Ok(t.h_value()?)
}

fn cmd_gen(n: usize, kind: Kind, seed: Option<u64>, out: Option<&Path>) -> CmdResult {
    let t = match kind {
        Kind::Random => Tournament::random(n, seed.unwrap_or_else(auto_seed))?,
        Kind::Transitive => Tournament::transitive(n)?,
        Kind::Regular => Tournament::rotational(n)?,
    };
    emit(out, &write_trn(&t))?;
    Ok(0)
}

fn cmd_compute(input: &Path, format: OutputFormat) -> CmdResult {
    let t = read_tournament(input)?;
    let h = require_h(&t)?;
    let (delta3, triples) = t.delta3_minus()?;
    let triples: Vec<[usize; 3]> = triples.iter().map(|tr| tr.vertices).collect();
    let degrees = t.in_degrees();
    match format {
        OutputFormat::Json => {
            let v = json!({
                "n": t.order(),
                "in_degrees": degrees,
                "delta3": delta3,
                "triples": triples,
                "h": h,
            });
            println!("{v}");
        }
        OutputFormat::Text => {
            let join = |xs: &[usize]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
            println!("n: {}", t.order());
            println!("in-degrees: {}", join(&degrees));
            println!("delta3: {delta3}");
            let list: Vec<String> = triples.iter().map(|tr| format!("{{{}}}", join(tr))).collect();
            println!("minimizing triples: {}", list.join(" "));
            println!("h: {h}");
        }
    }
    Ok(0)
}

fn cmd_extremal(input: &Path, triple: Option<Vec<usize>>, out: Option<&Path>) -> CmdResult {
    let t = read_tournament(input)?;
    let h = require_h(&t)?;
    let (delta3, triples) = t.delta3_minus()?;
    let tr = match triple {
        Some(v) if v.len() == 3 => Triple::new(&t, v[0], v[1], v[2])?,
        Some(v) => return Err(usage(format!("--triple needs three vertices, got {}", v.len()))),
        None => triples[0],
    };
    let g = extremal_coloring(&t, tr.vertices)?;
    let k = g.num_colors();
    if tr.degree_sum == delta3 {
        assert_eq!(k, h - 1, "a minimizing triple yields h - 1 colors");
    } else {
        eprintln!(
            "warning: triple {:?} is not minimizing; the coloring uses {k} colors, h - 1 = {}",
            tr.vertices,
            h - 1
        );
    }
    emit(out, &write_clr(&g))?;
    eprintln!("colors: {k}");
    Ok(0)
}

fn cmd_search(tournament: &Path, coloring: &Path, budget: Option<u64>) -> CmdResult {
    let t = read_tournament(tournament)?;
    let g: ArcColoring = read_clr(&read_file(coloring)?).map_err(|e| usage(format!("{}: {e}", coloring.display())))?;
    let outcome = search(&t, &g, SearchConfig { budget })?;
    match outcome.status {
        SearchStatus::Found => {
            let w = outcome.witness.expect("found implies a witness");
            println!("{}", write_witness(&w, &g));
            Ok(0)
        }
        SearchStatus::NotFound => {
            println!("none");
            Ok(EXIT_FALSIFIED)
        }
        SearchStatus::BudgetExhausted => {
            println!("inconclusive");
            eprintln!("search budget exhausted after {} nodes", outcome.nodes_expanded);
            Ok(EXIT_INCONCLUSIVE)
        }
    }
}

/// "7", "3..5" or "3..=5"; ranges are inclusive.
fn parse_orders(s: &str) -> Result<Vec<usize>, Failure> {
    let num = |x: &str| {
        x.trim()
            .parse::<usize>()
            .map_err(|_| usage(format!("invalid order {x:?} in --n-range")))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let n = num(s)?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(usage(format!("empty range {s:?}")));
    }
    Ok((lo..=hi).collect())
}

fn with_jobs(jobs: Option<usize>, f: impl FnOnce() -> CmdResult + Send) -> CmdResult {
    match jobs {
        None => f(),
        Some(0) => Err(usage("--jobs must be positive")),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| usage(format!("cannot start {j} workers: {e}")))?
            .install(f),
    }
}

fn cmd_verify(mut config: SweepConfig, out: Option<&Path>) -> CmdResult {
    let mut files = None;
    if let Some(dir) = out {
        if dir.exists() && !dir.is_dir() {
            return Err(usage(format!("{} exists and is not a directory", dir.display())));
        }
        fs::create_dir_all(dir).map_err(|e| usage(format!("cannot create {}: {e}", dir.display())))?;
        let open = |name: &str| {
            let p = dir.join(name);
            fs::File::create(&p).map_err(|e| usage(format!("cannot write {}: {e}", p.display())))
        };
        let mut csv = open("summary.csv")?;
        writeln!(csv, "{CSV_HEADER}").map_err(|e| usage(e.to_string()))?;
        files = Some((open("reports.jsonl")?, csv));
        config.quarantine = Some(dir.join("quarantine"));
    }
    println!("{CSV_HEADER}");
    let mut io_error = None;
    let reports = run_sweep(&config, |r| {
        println!("{}", r.csv_row());
        if let Some((jsonl, csv)) = files.as_mut() {
            let res = writeln!(jsonl, "{}", r.to_json()).and_then(|_| writeln!(csv, "{}", r.csv_row()));
            if let Err(e) = res {
                io_error.get_or_insert(e.to_string());
            }
        }
        for note in &r.notes {
            eprintln!("{}: {note}", r.tournament_id);
        }
    })?;
    if let Some(e) = io_error {
        return Err(usage(format!("writing reports failed: {e}")));
    }
    let worst = |v: Verdict| reports.iter().any(|r| r.verdict == v);
    Ok(if worst(Verdict::Counterexample) {
        EXIT_FALSIFIED
    } else if worst(Verdict::Inconclusive) {
        EXIT_INCONCLUSIVE
    } else {
        0
    })
}

fn cmd_count(input: &Path, root: Option<usize>) -> CmdResult {
    let t = read_tournament(input)?;
    let roots: Vec<usize> = match root {
        Some(r) if r >= t.order() => return Err(usage(format!("root {r} out of range for n = {}", t.order()))),
        Some(r) => vec![r],
        None => (0..t.order()).collect(),
    };
    for r in roots {
        println!("{r} {}", count_arborescences(&t, r)?);
    }
    Ok(0)
}

fn cmd_bench(n: usize, trials: u64, seed: Option<u64>) -> CmdResult {
    if n < 3 {
        return Err(usage(format!("bench needs n >= 3, got {n}")));
    }
    let seed = seed.unwrap_or_else(auto_seed);
    let t = Tournament::random(n, seed)?;
    let h = t.h_value()?;
    println!("trial,n,h,status,nodes,prunes,micros");
    for trial in 0..trials {
        let mut r = rainbow_core::rng::rng(derive_seed(seed, 1, trial));
        let g = ArcColoring::random_surjective(t.arc_count(), h, &mut r)?;
        let start = Instant::now();
        let o = search(&t, &g, SearchConfig::default())?;
        let micros = start.elapsed().as_micros();
        let status = serde_json::to_value(o.status).expect("status serializes");
        println!(
            "{trial},{n},{h},{},{},{},{micros}",
            status.as_str().unwrap_or("unknown"),
            o.nodes_expanded,
            o.prunes
        );
    }
    Ok(0)
}
