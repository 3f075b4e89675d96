//! `persuade`: solve, compare and simulate two-dimensional persuasion problems.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid input, 3 verification
//! failure.

mod render;

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use persuasion::sweep::{self, GridRange};
use persuasion::{
    receiver_payoff, sender_payoff, simulate, solve, verify, welfare_compare, Cells, DirectSignal, JointPrior,
    SimReport, SolveResult, Worldview,
};

#[derive(Parser)]
#[command(name = "persuade", version, about = "Optimal persuasion with a rational or naive receiver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Receiver {
    Rational,
    Naive,
}

impl From<Receiver> for Worldview {
    fn from(r: Receiver) -> Self {
        match r {
            Receiver::Rational => Worldview::Rational,
            Receiver::Naive => Worldview::Naive,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sender-optimal direct signal for one receiver type.
    Solve {
        /// JSON prior file with keys mu00, mu01, mu10, mu11.
        #[arg(long)]
        prior: PathBuf,
        #[arg(long, value_enum)]
        receiver: Receiver,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Payoffs under both receiver types and the sender's gain from naivete.
    Welfare {
        #[arg(long)]
        prior: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Checks solver invariants on seeded random priors.
    Verify {
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
    /// Welfare over a grid of marginals and correlation gaps, as CSV.
    Sweep {
        /// `start:end:step` or a single value.
        #[arg(long = "m-sigma1", allow_hyphen_values = true)]
        m_sigma1: GridRange,
        #[arg(long = "m-rho1", allow_hyphen_values = true)]
        m_rho1: GridRange,
        #[arg(long, allow_hyphen_values = true)]
        c: GridRange,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo playout of a signal.
    Simulate {
        #[arg(long)]
        prior: PathBuf,
        #[arg(long, value_enum)]
        receiver: Receiver,
        /// `optimal` or four comma-separated probabilities p00,p01,p10,p11.
        #[arg(long, default_value = "optimal")]
        signal: String,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

enum Failure {
    Io(String),
    Invalid(String),
    Verify,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::Verify => 3,
        }
    }
}

impl From<persuasion::Error> for Failure {
    fn from(e: persuasion::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

fn read_prior(path: &Path) -> Result<JointPrior, Failure> {
    let raw = fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    let cells: Cells = serde_json::from_str(&raw)
        .map_err(|e| Failure::Invalid(format!("InvalidPriorFile: {}: {e}", path.display())))?;
    Ok(JointPrior::from_cells(cells)?)
}

fn parse_signal(arg: &str) -> Result<Option<DirectSignal>, Failure> {
    if arg == "optimal" {
        return Ok(None);
    }
    let bad = || Failure::Invalid(format!("InvalidSignal: `{arg}` is neither `optimal` nor p00,p01,p10,p11"));
    let p = arg
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<Vec<_>, _>>()?;
    match p.as_slice() {
        [a, b, c, d] => Ok(Some(DirectSignal::new(*a, *b, *c, *d)?)),
        _ => Err(bad()),
    }
}

fn emit<T: Serialize>(value: &T, format: Format) {
    match format {
        Format::Json => println!("{}", render::json(value)),
        Format::Text => println!("{}", render::text(value)),
    }
}

#[derive(Serialize)]
struct SolveOutput {
    receiver: Worldview,
    signal: DirectSignal,
    case: &'static str,
    regime: persuasion::Regime,
    constraint_binding: bool,
    sender_payoff: f64,
    receiver_payoff: f64,
    solution_segment: Option<[DirectSignal; 2]>,
}

impl SolveOutput {
    fn new(prior: &JointPrior, r: &SolveResult) -> Self {
        Self {
            receiver: r.worldview,
            signal: r.signal,
            case: r.case_name(),
            regime: r.regime,
            constraint_binding: r.constraint_binding,
            sender_payoff: sender_payoff(prior, &r.signal),
            receiver_payoff: receiver_payoff(prior, &r.signal),
            solution_segment: r.solution_segment,
        }
    }
}

#[derive(Serialize)]
struct WelfareOutput {
    c: f64,
    nu: f64,
    nu_closed_form: f64,
    strict: bool,
    v_rational: f64,
    v_naive: f64,
    u_rational: f64,
    u_naive: f64,
    case_rational: &'static str,
    case_naive: &'static str,
    signal_rational: DirectSignal,
    signal_naive: DirectSignal,
}

#[derive(Serialize)]
struct SimulateOutput {
    signal: DirectSignal,
    v: f64,
    u: f64,
    #[serde(flatten)]
    report: SimReport,
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Solve {
            prior,
            receiver,
            format,
        } => {
            let prior = read_prior(&prior)?;
            let r = solve(&prior, receiver.into());
            emit(&SolveOutput::new(&prior, &r), format);
        }
        Command::Welfare { prior, format } => {
            let prior = read_prior(&prior)?;
            let r = welfare_compare(&prior);
            emit(
                &WelfareOutput {
                    c: r.c,
                    nu: r.nu,
                    nu_closed_form: r.nu_closed_form,
                    strict: r.strict,
                    v_rational: r.v_rational,
                    v_naive: r.v_naive,
                    u_rational: r.u_rational,
                    u_naive: r.u_naive,
                    case_rational: r.rational.case_name(),
                    case_naive: r.naive.case_name(),
                    signal_rational: r.rational.signal,
                    signal_naive: r.naive.signal,
                },
                format,
            );
        }
        Command::Verify {
            trials,
            seed,
            tolerance,
        } => {
            if trials == 0 {
                return Err(Failure::Invalid("InvalidTrialCount: at least one trial is required".into()));
            }
            if !(tolerance >= 0.0 && tolerance.is_finite()) {
                return Err(Failure::Invalid(format!("InvalidTolerance: {tolerance}")));
            }
            let summary = verify::run(trials, seed, tolerance);
            println!(
                "trials: {}\nseed: {}\ntolerance: {:e}\nfailures: {}",
                summary.trials, summary.seed, summary.tolerance, summary.failures
            );
            if let Some(cx) = &summary.first_failure {
                println!("first failure: trial {} ({}): {}", cx.trial, cx.violation.check, cx.violation.detail);
                // Unrounded so the prior reproduces the failure exactly.
                println!("{}", serde_json::to_string(&cx.prior).expect("cells serialize"));
                return Err(Failure::Verify);
            }
            println!("all invariants hold");
        }
        Command::Sweep { m_sigma1, m_rho1, c, out } => {
            let table = sweep::sweep(&m_sigma1, &m_rho1, &c)?;
            let io_err = |e: io::Error| Failure::Io(format!("cannot write csv: {e}"));
            match out {
                Some(path) => {
                    let file = fs::File::create(&path)
                        .map_err(|e| Failure::Io(format!("cannot create {}: {e}", path.display())))?;
                    let mut w = BufWriter::new(file);
                    sweep::write_csv(&mut w, &table).map_err(io_err)?;
                    w.flush().map_err(io_err)?;
                }
                None => {
                    let stdout = io::stdout();
                    let mut w = stdout.lock();
                    sweep::write_csv(&mut w, &table).map_err(io_err)?;
                }
            }
        }
        Command::Simulate {
            prior,
            receiver,
            signal,
            samples,
            seed,
            format,
        } => {
            let prior = read_prior(&prior)?;
            let worldview = receiver.into();
            let signal = match parse_signal(&signal)? {
                Some(s) => s,
                None => solve(&prior, worldview).signal,
            };
            let report = simulate(&prior, worldview, &signal, samples, seed)?;
            emit(
                &SimulateOutput {
                    signal,
                    v: sender_payoff(&prior, &signal),
                    u: receiver_payoff(&prior, &signal),
                    report,
                },
                format,
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Io(msg) | Failure::Invalid(msg) => eprintln!("error: {msg}"),
                Failure::Verify => eprintln!("error: verification failed"),
            }
            ExitCode::from(f.code())
        }
    }
}
