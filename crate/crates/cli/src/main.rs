use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use permgen::builder::{self, parse};
use permgen::cohomology::{self, GfpModule, ModuleSpec};
use permgen::report::{self, Cache, CorpusOptions, Report};
use permgen::structure;
use permgen::{crowns, genset, verify, Error, Limits, PermGroup};
use serde_json::{json, Value};

/// Generation invariants of finite permutation groups.
#[derive(Parser)]
#[command(name = "permgen", version)]
struct Cli {
    /// Largest group order a construction may produce.
    #[arg(long, global = true)]
    max_order: Option<u128>,
    /// Largest group whose subgroup lattice is enumerated.
    #[arg(long, global = true)]
    lattice_cap: Option<usize>,
    /// Wall-clock budget for one search, in seconds.
    #[arg(long, global = true, value_name = "SECONDS")]
    time_budget: Option<u64>,
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    /// JSON-lines report cache.
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,
    #[arg(long, global = true, value_name = "N", default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the group in an expression file and print its generators.
    Build { file: PathBuf },
    /// Full invariant report.
    Invariants {
        /// Expression text or a file containing one.
        expr: String,
        /// Write the report here instead of stdout.
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
    },
    /// Check one classification theorem.
    Verify { theorem: TheoremArg, expr: String },
    /// d, m and an independent generating set of every size in between.
    Spectrum { expr: String },
    /// Number of generating M-tuples.
    Phi {
        expr: String,
        m: u32,
        /// Also count by enumerating every tuple.
        #[arg(long)]
        brute: bool,
    },
    /// Crown-based power of a monolithic group: order, d and the predicted bound.
    Crown {
        expr: String,
        k: usize,
        /// Generator count to test the prediction against; defaults to d of the power.
        #[arg(long)]
        m: Option<u32>,
    },
    /// First cohomology of a module given as JSON {prime, dim, matrices}.
    H1 { expr: String, module: PathBuf },
    /// Reports for every .grp file in a directory.
    Corpus {
        dir: PathBuf,
        /// Include files marked `# slow`.
        #[arg(long)]
        slow: bool,
        #[arg(long, value_name = "OUT")]
        csv: Option<PathBuf>,
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoremArg {
    MdEqual,
    Nonsoluble,
    Soluble,
}

enum Failure {
    Core(Error),
    Io(String, io::Error),
    Input(String),
    RedFlag(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<Value, Failure>;

fn limits(cli: &Cli) -> Limits {
    let mut l = Limits::default();
    if let Some(x) = cli.max_order {
        l.max_order = x;
    }
    if let Some(x) = cli.lattice_cap {
        l.lattice_cap = x;
    }
    if let Some(x) = cli.time_budget {
        l.time_budget = Duration::from_secs(x);
    }
    if let Some(x) = cli.seed {
        l.seed = x;
    }
    l
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.display().to_string(), e))
}

/// An existing file is read; anything else is taken as expression text.
fn expression_text(arg: &str) -> Result<String, Failure> {
    let p = Path::new(arg);
    if p.is_file() {
        read(p)
    } else {
        Ok(arg.to_string())
    }
}

fn group_of(arg: &str, l: &Limits) -> Result<(String, PermGroup), Failure> {
    let text = expression_text(arg)?;
    let expr = parse(&text)?;
    let g = builder::evaluate(&expr, l)?;
    Ok((expr.to_string(), g))
}

fn generators(g: &PermGroup) -> Value {
    g.generators().iter().map(|x| x.to_one_based()).collect()
}

fn write_out(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(path.display().to_string(), e))
}

fn run(cli: &Cli) -> Outcome {
    let l = limits(cli);
    match &cli.command {
        Command::Build { file } => {
            let text = read(file)?;
            let expr = parse(&text)?;
            let g = builder::evaluate(&expr, &l)?;
            Ok(json!({
                "id": expr.to_string(),
                "order": g.order(),
                "degree": g.degree(),
                "generators": generators(&g),
            }))
        }
        Command::Invariants { expr, json: out } => {
            let (id, g) = group_of(expr, &l)?;
            let mut cache = cli
                .cache
                .as_ref()
                .map(Cache::open)
                .transpose()
                .map_err(|e| Failure::Io("cache".into(), e))?;
            let fp = report::fingerprint(&g);
            let (r, err) = match cache.as_ref().and_then(|c| c.get(&fp)) {
                Some(hit) => (Report { id: id.clone(), timings: None, ..hit.clone() }, None),
                None => report::report_group_with_error(&id, &g, &l),
            };
            if let Some(c) = cache.as_mut() {
                c.append(std::slice::from_ref(&r))
                    .map_err(|e| Failure::Io(c.path().display().to_string(), e))?;
            }
            let value = serde_json::to_value(&r).expect("reports serialize");
            if let Some(path) = out {
                write_out(path, &format!("{}\n", r.to_json()))?;
            }
            if r.red_flag() {
                return Err(Failure::RedFlag(value));
            }
            if let Some(err) = err {
                emit(&value);
                return Err(Failure::Core(err));
            }
            Ok(if out.is_some() { json!({"written": out}) } else { value })
        }
        Command::Verify { theorem, expr } => {
            let (id, g) = group_of(expr, &l)?;
            let v = match theorem {
                TheoremArg::MdEqual => verify::verify_md_equal(&g, &l)?,
                TheoremArg::Nonsoluble => verify::verify_nonsoluble(&g, &l)?,
                TheoremArg::Soluble => verify::verify_soluble_cases(&g, &l)?,
            };
            let mut value = serde_json::to_value(&v).expect("verdicts serialize");
            value["id"] = json!(id);
            if v.red_flag() {
                Err(Failure::RedFlag(value))
            } else {
                Ok(value)
            }
        }
        Command::Spectrum { expr } => {
            let (id, g) = group_of(expr, &l)?;
            let p = genset::spectrum(&g, &l)?;
            let sets: serde_json::Map<String, Value> = p
                .spectrum
                .iter()
                .map(|(k, s)| {
                    let elems: Vec<String> = s.elements.iter().map(|x| x.to_one_based()).collect();
                    (k.to_string(), json!({"elements": elems, "witness": s.witness}))
                })
                .collect();
            Ok(json!({"id": id, "d": p.d, "m": p.m, "a": p.a, "b": p.b, "soluble": p.soluble, "sets": sets}))
        }
        Command::Phi { expr, m, brute } => {
            let (id, g) = group_of(expr, &l)?;
            let phi = crowns::eulerian(&g, *m, &l)?;
            let mut value = json!({"id": id, "m": m, "phi": phi.to_string()});
            if *brute {
                value["brute"] = json!(crowns::eulerian_brute(&g, *m, 1 << 32)?.to_string());
            }
            Ok(value)
        }
        Command::Crown { expr, k, m } => {
            let (id, lg) = group_of(expr, &l)?;
            let a = structure::socle(&lg, &l)?;
            let lk = crowns::crown_power(&lg, &a, *k, &l)?;
            let d = genset::d(&lk, &l)?;
            let mut value = json!({"id": id, "k": k, "order": lk.order(), "degree": lk.degree(), "d": d});
            if lg.same_group(&a) {
                let m = m.unwrap_or(d as u32);
                let th = crowns::crown_threshold(&a, m, &l)?;
                value["prediction"] = json!({
                    "m": m,
                    "phi": th.phi.to_string(),
                    "aut": th.aut,
                    "k_max": th.k_max,
                    "generated_by_m": (*k as u128) <= th.k_max,
                });
            }
            Ok(value)
        }
        Command::H1 { expr, module } => {
            let (id, g) = group_of(expr, &l)?;
            let spec: ModuleSpec = serde_json::from_str(&read(module)?)
                .map_err(|e| Failure::Input(format!("{}: {e}", module.display())))?;
            let m = GfpModule::from_spec(&g, &spec, &l)?;
            let h1 = cohomology::h1_dimension(&g, &m, &l)?;
            let mut value = json!({"id": id, "prime": m.prime, "dim": m.dim, "h1": h1, "irreducible": m.is_irreducible()});
            if m.is_irreducible() {
                let inv = cohomology::module_invariants(&g, &m, &l)?;
                value["invariants"] = serde_json::to_value(inv).expect("invariants serialize");
            }
            Ok(value)
        }
        Command::Corpus { dir, slow, csv, json: out } => {
            let opts = CorpusOptions {
                limits: l,
                cache: cli.cache.clone(),
                threads: cli.threads,
                slow: *slow,
            };
            let reports = report::run_corpus(dir, &opts).map_err(|e| Failure::Io(dir.display().to_string(), e))?;
            if let Some(path) = csv {
                write_out(path, &report::to_csv(&reports))?;
            }
            if let Some(path) = out {
                let lines: String = reports.iter().map(|r| r.to_json() + "\n").collect();
                write_out(path, &lines)?;
            }
            let value = serde_json::to_value(&reports).expect("reports serialize");
            if reports.iter().any(Report::red_flag) {
                return Err(Failure::RedFlag(value));
            }
            Ok(value)
        }
    }
}

/// Pretty JSON to stdout; a closed pipe is not an error.
fn emit(v: &Value) {
    use io::Write;
    let _ = writeln!(io::stdout().lock(), "{}", serde_json::to_string_pretty(v).expect("json"));
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => {
            emit(&v);
            ExitCode::SUCCESS
        }
        Err(Failure::RedFlag(v)) => {
            emit(&v);
            eprintln!("permgen: theorem red flag");
            ExitCode::from(4)
        }
        Err(Failure::Core(e)) => {
            eprintln!("permgen: {e}");
            ExitCode::from(if e.is_parse_error() {
                2
            } else if e.is_resource_limit() {
                3
            } else {
                1
            })
        }
        Err(Failure::Io(what, e)) => {
            eprintln!("permgen: {what}: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("permgen: {msg}");
            ExitCode::from(1)
        }
    }
}
