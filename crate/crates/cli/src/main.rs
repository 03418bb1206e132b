//! `lantern`: classification and Floer-invariant computations for open
//! books with four-punctured-sphere pages.

mod jobs;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use jobs::{run_cached, JobError, Ledger};

#[derive(Parser)]
#[command(name = "lantern", version, about = "contact classification for four-punctured-sphere open books")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Continued fraction, slope chain, and parity class of -P/Q
    Cfrac { p: i64, q: i64 },
    /// Mapping-class computations
    #[command(subcommand)]
    Mcg(McgCommand),
    /// Tightness / overtwistedness / fillability decisions
    #[command(subcommand)]
    Classify(ClassifyCommand),
    /// Foliation-shadow validation
    #[command(subcommand)]
    Foliation(FoliationCommand),
    /// Dump a bordered-invariant decorated graph
    Library {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m: i64,
        #[arg(long, default_value = "I_III")]
        framing: String,
        #[arg(long, default_value = "A")]
        flavor: String,
    },
    /// Pair the bordered invariants of a reducible open book
    Pair {
        /// four boundary exponents, comma separated
        #[arg(long, value_delimiter = ',')]
        n: Vec<i64>,
        /// interior twisting exponent (nonpositive)
        #[arg(long, allow_negative_numbers = true)]
        nb: i64,
    },
    /// Emit the region list for a unit-coefficient monodromy matrix
    Regionlist { r: i64, s: i64, p: i64, q: i64 },
    /// Hat-invariant computation on a (niceified) diagram
    Hfhat {
        /// matrix entries r,s,p,q
        #[arg(long, value_delimiter = ',')]
        matrix: Option<Vec<i64>>,
        /// region-list JSON file
        #[arg(long)]
        regions: Option<std::path::PathBuf>,
    },
    /// Run a JSON-lines job file on a worker pool
    Batch {
        jobs: std::path::PathBuf,
        /// worker count (defaults to available parallelism)
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Subcommand)]
enum McgCommand {
    /// Project a twist word to its matrix
    Project {
        /// comma-separated letters `curve:exponent`; curves are a1..a4,
        /// b, c, d, e, or slope(p/q)
        #[arg(long)]
        word: String,
    },
}

#[derive(Subcommand)]
enum ClassifyCommand {
    /// Classify a reducible monodromy from its exponents
    Reducible {
        #[arg(long, value_delimiter = ',')]
        n: Vec<i64>,
        #[arg(long, allow_negative_numbers = true)]
        ngamma: i64,
    },
    /// Classify a pseudo-Anosov monodromy from its matrix and twist
    /// coefficients
    Pa {
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        matrix: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        fdtc: Vec<i64>,
    },
}

#[derive(Subcommand)]
enum FoliationCommand {
    /// Check the transverse-disk conditions on a foliation JSON file
    Validate { file: std::path::PathBuf },
}

fn main() {
    let cli = Cli::parse();
    let mut ledger = Ledger::open();
    let outcome = dispatch(&cli.command, &mut ledger);
    match outcome {
        Ok(value) => {
            println!("{value}");
        }
        Err(JobError { code, object }) => {
            println!("{object}");
            std::process::exit(code);
        }
    }
}

fn vec4(v: &[i64], what: &str) -> Result<Value, JobError> {
    if v.len() != 4 {
        return Err(JobError {
            code: 2,
            object: json!({"error": format!("{what} needs exactly four integers")}),
        });
    }
    Ok(json!(v))
}

fn dispatch(cmd: &Command, ledger: &mut Ledger) -> Result<Value, JobError> {
    match cmd {
        Command::Cfrac { p, q } => run_cached(ledger, "cfrac", &json!({"p": p, "q": q})),
        Command::Mcg(McgCommand::Project { word }) => {
            run_cached(ledger, "mcg_project", &json!({"word": word}))
        }
        Command::Classify(ClassifyCommand::Reducible { n, ngamma }) => run_cached(
            ledger,
            "classify_reducible",
            &json!({"n": vec4(n, "--n")?, "ngamma": ngamma}),
        ),
        Command::Classify(ClassifyCommand::Pa { matrix, fdtc }) => run_cached(
            ledger,
            "classify_pa",
            &json!({"matrix": vec4(matrix, "--matrix")?, "fdtc": vec4(fdtc, "--fdtc")?}),
        ),
        Command::Foliation(FoliationCommand::Validate { file }) => {
            let text = std::fs::read_to_string(file).map_err(io_err)?;
            let data: Value = serde_json::from_str(&text).map_err(|e| JobError {
                code: 2,
                object: json!({"error": format!("bad JSON: {e}")}),
            })?;
            run_cached(ledger, "foliation_validate", &data)
        }
        Command::Library { n, m, framing, flavor } => run_cached(
            ledger,
            "library",
            &json!({"n": n, "m": m, "framing": framing, "flavor": flavor}),
        ),
        Command::Pair { n, nb } => {
            run_cached(ledger, "pair", &json!({"n": vec4(n, "--n")?, "nb": nb}))
        }
        Command::Regionlist { r, s, p, q } => {
            run_cached(ledger, "regionlist", &json!({"matrix": [r, s, p, q]}))
        }
        Command::Hfhat { matrix, regions } => match (matrix, regions) {
            (Some(m), None) => {
                run_cached(ledger, "hfhat", &json!({"matrix": vec4(m, "--matrix")?}))
            }
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path).map_err(io_err)?;
                let regions: Value = serde_json::from_str(&text).map_err(|e| JobError {
                    code: 2,
                    object: json!({"error": format!("bad JSON: {e}")}),
                })?;
                run_cached(ledger, "hfhat", &json!({"regions": regions}))
            }
            _ => Err(JobError {
                code: 2,
                object: json!({"error": "pass exactly one of --matrix or --regions"}),
            }),
        },
        Command::Batch { jobs, workers } => run_batch(jobs, *workers, ledger),
    }
}

fn io_err(e: std::io::Error) -> JobError {
    JobError { code: 2, object: json!({"error": e.to_string()}) }
}

/// Batch lines look like `{"cmd": "pair", "input": {...}}`. Jobs run on a
/// worker pool; the ledger is written by a single thread.
fn run_batch(
    path: &std::path::Path,
    workers: Option<usize>,
    ledger: &mut Ledger,
) -> Result<Value, JobError> {
    let text = std::fs::read_to_string(path).map_err(io_err)?;
    let mut parsed: Vec<(String, Value)> = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let v: Value = serde_json::from_str(line).map_err(|e| JobError {
            code: 2,
            object: json!({"error": format!("line {}: {e}", ln + 1)}),
        })?;
        let cmd = v
            .get("cmd")
            .and_then(Value::as_str)
            .ok_or_else(|| JobError {
                code: 2,
                object: json!({"error": format!("line {}: missing cmd", ln + 1)}),
            })?
            .to_string();
        let input = v.get("input").cloned().unwrap_or(json!({}));
        parsed.push((cmd, input));
    }
    let nworkers = workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .max(1);
    let next = std::sync::atomic::AtomicUsize::new(0);
    let results: Vec<std::sync::Mutex<Option<Value>>> =
        (0..parsed.len()).map(|_| std::sync::Mutex::new(None)).collect();
    // resolve cache hits up front; run the rest on the pool
    let mut to_run: Vec<usize> = Vec::new();
    for (i, (cmd, input)) in parsed.iter().enumerate() {
        let hash = jobs::job_hash(cmd, input);
        if let Some(hit) = ledger.lookup(&hash) {
            *results[i].lock().unwrap() = Some(json!({
                "cmd": cmd, "input": input, "output": hit, "cached": true,
            }));
        } else {
            to_run.push(i);
        }
    }
    std::thread::scope(|scope| {
        for _ in 0..nworkers.min(to_run.len().max(1)) {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if k >= to_run.len() {
                    break;
                }
                let i = to_run[k];
                let (cmd, input) = &parsed[i];
                let outcome = match jobs::run_job(cmd, input) {
                    Ok(out) => json!({"cmd": cmd, "input": input, "output": out}),
                    Err(e) => json!({"cmd": cmd, "input": input, "failed": e.object, "code": e.code}),
                };
                *results[i].lock().unwrap() = Some(outcome);
            });
        }
    });
    // single-writer ledger append, in input order
    let mut out = Vec::with_capacity(parsed.len());
    for (i, cell) in results.iter().enumerate() {
        let value = cell.lock().unwrap().take().unwrap();
        if value.get("output").is_some() && value.get("cached").is_none() {
            let (cmd, input) = &parsed[i];
            let hash = jobs::job_hash(cmd, input);
            ledger.record(&hash, cmd, input, &value["output"], 0);
        }
        out.push(value);
    }
    Ok(json!({"jobs": out.len(), "results": out}))
}
