use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use noonsim::analysis::{
    coherence_check, fidelity, optimize_eta, optimize_many, overlap_curve, overlap_points,
    DEFAULT_ETA_HI, DEFAULT_ETA_LO, DEFAULT_TOL,
};
use noonsim::check::{run_checks, CheckOptions};
use noonsim::report::{self, num, str_value, Format, Table, DEFAULT_PRECISION};
use noonsim::states::{self, EtaParams};
use noonsim::{fringe_scan, Error, Exec};

#[derive(Debug, Parser)]
#[command(
    name = "noonsim",
    version,
    about = "Two-mode Fock-space simulator for NOON states built from coherent light and photon pairs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StateKind {
    /// Exact N-photon component of coherent x squeezed light.
    Eta,
    /// NOON state expanded in the input basis.
    NoonInput,
    /// NOON state in the interferometer basis.
    Noon,
    /// Gaussian approximation of the eta = 2 state (even N).
    GaussianEta,
    /// Gaussian approximation of the input-basis NOON state (even N).
    GaussianNoon,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Decimal digits for every number.
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: usize,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long, default_value_t = DEFAULT_ETA_LO)]
    eta_lo: f64,
    #[arg(long, default_value_t = DEFAULT_ETA_HI)]
    eta_hi: f64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dump the amplitudes of a state.
    State {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2.0)]
        eta: f64,
        #[arg(long, value_enum, default_value = "eta")]
        kind: StateKind,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Fidelity |<NOON|eta>|^2 for one (N, eta), with the coherence check.
    Fidelity {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2.0)]
        eta: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Optimise eta for a single N.
    Optimize {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Optimised eta and fidelity for a list of N (default 2..15 and 100).
    Table1 {
        /// Comma-separated photon numbers.
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["n_min", "n_max"])]
        n: Vec<usize>,
        #[arg(long, requires = "n_max")]
        n_min: Option<usize>,
        #[arg(long, requires = "n_min")]
        n_max: Option<usize>,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Fidelity at fixed eta as a function of N.
    Fig2 {
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 30)]
        n_max: usize,
        /// Explicit comma-separated photon numbers; overrides the range.
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        #[arg(long, default_value_t = 2.0)]
        eta: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Mach-Zehnder fringe scan of the eta state.
    Fringe {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2.0)]
        eta: f64,
        /// Number of phase samples on [0, 2pi); at least 4N+1.
        #[arg(long)]
        samples: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the invariant suite; exit status 1 if any check fails.
    Check {
        #[arg(long, hide = true)]
        perturb: bool,
        #[arg(long, hide = true, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Usage(String),
    Check,
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(output: &OutputArgs, text: &str) -> Result<(), Failure> {
    match &output.out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn emit_table(
    output: &OutputArgs,
    command: &str,
    fields: Vec<(&str, serde_json::Value)>,
    table: &Table,
) -> Result<(), Failure> {
    let text = match Format::from(output.format) {
        Format::Csv => table.to_csv(),
        Format::Json => report::json_document(command, fields, table),
    };
    emit(output, &text)
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::State {
            n,
            eta,
            kind,
            output,
        } => {
            let p = output.precision;
            let state = match kind {
                StateKind::Eta => states::eta_state(EtaParams::new(n, eta)?),
                StateKind::NoonInput => states::noon_input_basis(n)?,
                StateKind::Noon => states::noon_interferometer(n, 0.0)?,
                StateKind::GaussianEta => states::gaussian_eta_approx(n)?,
                StateKind::GaussianNoon => states::gaussian_noon_approx(n)?,
            };
            let fields = vec![
                ("n", str_value(n.to_string())),
                ("basis", str_value(state.basis().to_string())),
            ];
            emit_table(&output, "state", fields, &report::state_table(&state, p))
        }
        Command::Fidelity { n, eta, output } => {
            let p = output.precision;
            let f = fidelity(n, eta)?;
            let r = coherence_check(n, eta)?;
            match Format::from(output.format) {
                Format::Csv => {
                    let mut t = Table::new([
                        "n",
                        "eta",
                        "fidelity",
                        "coherence",
                        "half_fidelity",
                        "noon_minus_overlap",
                    ]);
                    t.push(vec![
                        n.to_string(),
                        num(eta, p),
                        num(f, p),
                        num(r.coherence, p),
                        num(r.half_fidelity, p),
                        num(r.noon_minus_overlap, p),
                    ]);
                    emit(&output, &t.to_csv())
                }
                Format::Json => {
                    let mut obj = serde_json::Map::new();
                    obj.insert("command".into(), str_value("fidelity"));
                    obj.insert("n".into(), str_value(n.to_string()));
                    obj.insert("eta".into(), str_value(num(eta, p)));
                    obj.insert("fidelity".into(), str_value(num(f, p)));
                    obj.insert("coherence_check".into(), report::coherence_json(&r, p));
                    emit(&output, &report::render_json(&serde_json::Value::Object(obj)))
                }
            }
        }
        Command::Optimize { n, search, output } => {
            let r = optimize_eta(n, search.eta_lo, search.eta_hi, search.tol)?;
            let t = report::optimization_table(&[r], output.precision);
            emit_table(&output, "optimize", vec![], &t)
        }
        Command::Table1 {
            n,
            n_min,
            n_max,
            search,
            output,
        } => {
            let ns: Vec<usize> = match (n.is_empty(), n_min, n_max) {
                (false, _, _) => n,
                (true, Some(lo), Some(hi)) => {
                    if lo < 1 || lo > hi {
                        return Err(Failure::Usage(format!(
                            "invalid range --n-min {lo} --n-max {hi}"
                        )));
                    }
                    (lo..=hi).collect()
                }
                _ => (2..=15).chain(std::iter::once(100)).collect(),
            };
            let results = optimize_many(&ns, search.eta_lo, search.eta_hi, search.tol, Exec::default())?;
            let t = report::optimization_table(&results, output.precision);
            emit_table(&output, "table1", vec![], &t)
        }
        Command::Fig2 {
            n_min,
            n_max,
            n,
            eta,
            output,
        } => {
            let curve = if n.is_empty() {
                overlap_curve(eta, n_min, n_max)?
            } else {
                if n.contains(&0) {
                    return Err(Failure::Usage("photon numbers must be >= 1".into()));
                }
                overlap_points(eta, &n, Exec::default())?
            };
            let fields = vec![("eta", str_value(num(eta, output.precision)))];
            emit_table(
                &output,
                "fig2",
                fields,
                &report::curve_table(&curve, output.precision),
            )
        }
        Command::Fringe {
            n,
            eta,
            samples,
            output,
        } => {
            let p = output.precision;
            let scan = fringe_scan(n, eta, samples)?;
            let parity = scan.parity_visibility()?;
            let extremal = scan.extremal_visibility()?;
            let table = report::fringe_table(&scan, p);
            let visibility = serde_json::Value::Array(vec![
                report::visibility_json(&parity, "parity", p),
                report::visibility_json(&extremal, "extremal", p),
            ]);
            match Format::from(output.format) {
                Format::Json => {
                    let fields = vec![
                        ("n", str_value(n.to_string())),
                        ("eta", str_value(num(eta, p))),
                        ("samples", str_value(samples.to_string())),
                        ("visibility", visibility),
                    ];
                    emit_table(&output, "fringe", fields, &table)
                }
                Format::Csv => {
                    emit(&output, &table.to_csv())?;
                    let sidecar = report::render_json(&visibility);
                    match &output.out {
                        Some(path) => {
                            let mut side = path.clone().into_os_string();
                            side.push(".visibility.json");
                            fs::write(PathBuf::from(side), sidecar)?;
                        }
                        None => io::stderr().lock().write_all(sidecar.as_bytes())?,
                    }
                    Ok(())
                }
            }
        }
        Command::Check { perturb, seed } => {
            let items = run_checks(CheckOptions { perturb, seed })?;
            let mut all = true;
            let mut out = io::stdout().lock();
            for item in &items {
                all &= item.passed;
                writeln!(
                    out,
                    "{} {:<55} measured {:.3e} (threshold {:.1e})",
                    if item.passed { "PASS" } else { "FAIL" },
                    item.name,
                    item.measured,
                    item.threshold
                )?;
            }
            if all {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
    }
}
