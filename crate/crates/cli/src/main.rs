//! Command line front end: play games, run the verification suites, print
//! value tables and draw question graphs.

mod play;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use spyhunt::dot::transcript_to_dot;
use spyhunt::formulas::value_table;
use spyhunt::solver::DEFAULT_BUDGET;
use spyhunt::transcript::Transcript;
use spyhunt::verify::{all_passed, run_check, write_report, Check, Row, VerifyConfig};
use spyhunt::{GameParams, RunError, SpyModel};

#[derive(Parser)]
#[command(name = "spyhunt", version, about = "Knights and spies: strategies, adversaries and exact solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Play one game between a strategy and an adversary.
    Play(PlayArgs),
    /// Run a verification suite and report expected against computed values.
    Verify {
        /// theorem1..theorem5, atable, conjecture, cross-solver or all.
        check: String,
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Print closed-form values for every pair in a range.
    Table {
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long)]
        k_max: Option<usize>,
        /// Write the rows as JSON lines.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert a transcript to a Graphviz digraph.
    Dot {
        /// Transcript file, or `-` for standard input.
        transcript: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Same as `verify conjecture`.
    Conjecture {
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Same as `verify atable`.
    Atable {
        #[command(flatten)]
        range: RangeArgs,
    },
}

#[derive(Args)]
struct PlayArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value = "liar")]
    spy_model: SpyModel,
    /// At least one spy is known to be present.
    #[arg(long)]
    spy_known: bool,
    /// One of bkh, bsh, edge, figure2, combined, spider, mbkh.
    #[arg(long)]
    strategy: String,
    /// truth:{..}, script:<answers>, script:figure2, human, or a policy name.
    #[arg(long)]
    adversary: String,
    /// Write the transcript as JSON lines.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RangeArgs {
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    k_max: Option<usize>,
    /// Search state limit per solver call.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Write the report as JSON lines.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Exit statuses.
const PASS: u8 = 0;
const VERIFY_FAILED: u8 = 1;
const PROTOCOL: u8 = 2;
const USAGE: u8 = 3;

enum Failure {
    Protocol(anyhow::Error),
    Usage(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.into())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { PASS });
        }
    };
    let result = match cli.command {
        Command::Play(args) => play_command(args),
        Command::Verify { check, range } => verify_command(&check, range),
        Command::Table { n_min, n_max, k_max, out } => table_command(n_min, n_max, k_max, out.as_deref()),
        Command::Dot { transcript, out } => dot_command(&transcript, out.as_deref()),
        Command::Conjecture { range } => verify_command("conjecture", range),
        Command::Atable { range } => verify_command("atable", range),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Protocol(e)) => {
            eprintln!("protocol violation: {e:#}");
            ExitCode::from(PROTOCOL)
        }
        Err(Failure::Usage(e))
            if e.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) =>
        {
            ExitCode::from(PASS)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE)
        }
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    let f = File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn play_command(args: PlayArgs) -> Result<u8, Failure> {
    // the nine-person table line is played with a spy known present
    let spy_known = args.spy_known || args.strategy == "figure2";
    let params = GameParams::new(args.n, args.k, args.spy_model, spy_known).map_err(anyhow::Error::from)?;
    let strategy = spyhunt::strategies::named(&args.strategy).with_context(|| {
        format!(
            "unknown strategy `{}`; expected one of {}",
            args.strategy,
            spyhunt::strategies::STRATEGY_NAMES.join(", ")
        )
    })?;
    let mut source = play::adversary(&args.adversary, &params)?;
    println!("{}: {} against {}", params, strategy.name(), args.adversary);
    let transcript = match spyhunt::strategies::run_strategy(strategy.as_ref(), source.as_mut(), &params) {
        Ok(t) => t,
        Err(e) => {
            return Err(match e {
                RunError::PreconditionUnmet(_) | RunError::ConfigError(_) | RunError::SourceExhausted(_) => {
                    Failure::Usage(e.into())
                }
                _ => Failure::Protocol(e.into()),
            })
        }
    };
    print!("{}", play::render(&transcript));
    if let Some(path) = args.out {
        let mut w = create(&path)?;
        transcript.write_jsonl(&mut w)?;
        w.flush()?;
    }
    Ok(PASS)
}

fn verify_command(check: &str, range: RangeArgs) -> Result<u8, Failure> {
    let checks: Vec<Check> =
        if check == "all" { Check::ALL.to_vec() } else { vec![check.parse().map_err(anyhow::Error::from)?] };
    let cfg = VerifyConfig { n_max: range.n_max, k_max: range.k_max, budget: range.budget };
    let mut rows: Vec<Row> = Vec::new();
    for c in checks {
        let got = run_check(c, &cfg);
        let failed = got.iter().filter(|r| !r.pass).count();
        println!("{c}: {} rows, {failed} failed", got.len());
        for r in got.iter().filter(|r| !r.pass) {
            let model = r.model.map(|m| format!(" {m}")).unwrap_or_default();
            let known = if r.spy_known { " spy-known" } else { "" };
            println!(
                "  FAIL {} n={} k={}{model}{known} {}: expected {} got {}",
                r.method, r.n, r.k, r.quantity, r.expected, r.computed
            );
        }
        rows.extend(got);
    }
    if let Some(path) = range.out {
        let mut w = create(&path)?;
        write_report(&rows, &mut w)?;
        w.flush()?;
    }
    Ok(if all_passed(&rows) { PASS } else { VERIFY_FAILED })
}

fn table_command(n_min: usize, n_max: usize, k_max: Option<usize>, out: Option<&Path>) -> Result<u8, Failure> {
    if n_min < 3 || n_max < n_min || n_max > 64 {
        return Err(anyhow::anyhow!("need 3 <= n-min <= n-max <= 64").into());
    }
    let rows: Vec<_> = value_table(n_max, k_max).into_iter().filter(|r| r.n >= n_min).collect();
    let mut stdout = io::stdout().lock();
    writeln!(
        stdout,
        "{:>3} {:>3} {:>3} {:>3} {:>3} {:>3} {:>3} {:>4} {:>4} {:>6} {:>6} {:>6} {:>6} {:>7}  notes",
        "n", "k", "q", "r", "K", "E", "N", "N_L", "N_S", "Tall_L", "Tspy_L", "Tall_S", "Tspy_S", "A"
    )?;
    for r in &rows {
        writeln!(
            stdout,
            "{:>3} {:>3} {:>3} {:>3} {:>3} {:>3} {:>3} {:>4} {:>4} {:>6} {:>6} {:>6} {:>6} {:>7}  {}",
            r.n,
            r.k,
            r.q,
            r.r,
            r.knight,
            r.any,
            r.person,
            r.person_spy_known_liar,
            r.person_spy_known_unconstrained,
            r.liar.all,
            r.liar.spy,
            r.unconstrained.all,
            r.unconstrained.spy,
            r.all_identities.to_string(),
            r.exceptions.join("; ")
        )?;
    }
    if let Some(path) = out {
        let mut w = create(path)?;
        for r in &rows {
            writeln!(w, "{}", serde_json::to_string(r).map_err(anyhow::Error::from)?)?;
        }
        w.flush()?;
    }
    Ok(PASS)
}

fn dot_command(path: &Path, out: Option<&Path>) -> Result<u8, Failure> {
    let transcript = if path == Path::new("-") {
        Transcript::read_jsonl(io::stdin().lock())
    } else {
        let f = File::open(path).with_context(|| format!("cannot read {}", path.display()))?;
        Transcript::read_jsonl(io::BufReader::new(f))
    }
    .map_err(anyhow::Error::from)?;
    spyhunt::QuestionGraph::from_edges(transcript.params.n, transcript.params.model, &transcript.edges())
        .map_err(|e| anyhow::anyhow!("transcript does not form a valid question graph: {e}"))?;
    let text = transcript_to_dot(&transcript);
    match out {
        Some(p) => {
            let mut w = create(p)?;
            w.write_all(text.as_bytes())?;
            w.flush()?;
        }
        None => print!("{text}"),
    }
    Ok(PASS)
}
