//! `permrdm`: exact reduced density matrices from the command line.
//!
//! Exit status: 0 on success, 1 when a verification check fails (or output
//! cannot be written), 2 for invalid parameters.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use permrdm::emit::{self, Format};
use permrdm::exact::from_wire;
use permrdm::oracle::OracleCaps;
use permrdm::rdm::{assemble_matrix, AssemblyCaps, RdmQuery, SystemSpec, ThermoParams};
use permrdm::spectrum::full_spectrum;
use permrdm::verify::{run_grid, GridBounds};
use permrdm::Error;

#[derive(Parser, Debug)]
#[command(
    name = "permrdm",
    version,
    about = "Exact reduced density matrices of permutation-invariant spin-1/2 systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Table of sub-block values g_Z per (k, Z), with sub-block sizes.
    Elements {
        #[command(flatten)]
        query: QueryArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Nonzero entries (P, Q, value) of the 2^n x 2^n matrix, 1-based.
    Matrix {
        #[command(flatten)]
        query: QueryArgs,
        /// `dense` assembles the matrix in memory; `stream` emits entries directly.
        #[arg(long, value_enum, default_value_t = Mode::Stream)]
        mode: Mode,
        /// Largest n accepted by the selected mode [default: dense 10, stream 14].
        #[arg(long = "cap-assembly")]
        cap_assembly: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Eigenvalues with multiplicities, entropy (nats) and purity.
    Spectrum {
        #[command(flatten)]
        query: QueryArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Large-L limit values at filling p and singlet fraction mu.
    Thermo {
        /// Filling N/L as "num/den".
        #[arg(long)]
        p: String,
        /// Singlet fraction r/L as "num/den".
        #[arg(long)]
        mu: String,
        /// Subsystem size.
        #[arg(long = "n")]
        subsystem: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Runs the oracle, coefficient and whole-system suites over a grid.
    Verify {
        #[arg(long = "maxL", default_value_t = 8)]
        max_sites: usize,
        #[arg(long = "maxn", default_value_t = 4)]
        max_subsystem: usize,
        /// Largest n assembled densely for the comparison.
        #[arg(long = "cap-assembly")]
        cap_assembly: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct QueryArgs {
    /// Number of sites.
    #[arg(long = "L")]
    sites: usize,
    /// Number of up spins.
    #[arg(long = "N")]
    up_spins: usize,
    /// Number of singlet pairs (second tableau row).
    #[arg(long = "r")]
    singlet_pairs: usize,
    /// Subsystem size.
    #[arg(long = "n")]
    subsystem: usize,
}

impl QueryArgs {
    fn query(&self) -> permrdm::Result<RdmQuery> {
        RdmQuery::new(
            SystemSpec::new(self.sites, self.up_spins, self.singlet_pairs),
            self.subsystem,
        )
    }
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Dense,
    Stream,
}

enum Failure {
    Invalid(String),
    Checks(usize),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_invalid_input() {
            Failure::Invalid(e.to_string())
        } else {
            Failure::Io(e.to_string())
        }
    }
}

fn with_output(
    output: &OutputArgs,
    body: impl FnOnce(&mut dyn Write, Format) -> Result<(), Failure>,
) -> Result<(), Failure> {
    let format = output.format.into();
    let sink: Box<dyn Write> = match &output.out {
        Some(path) => Box::new(File::create(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = BufWriter::new(sink);
    body(&mut w, format)?;
    w.flush().map_err(|e| Failure::Io(e.to_string()))
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("PERMRDM_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::Invalid(format!("PERMRDM_THREADS = {value:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Io(e.to_string()))
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    match cli.command {
        Command::Elements { query, output } => {
            let q = query.query()?;
            with_output(&output, |w, f| Ok(emit::write_elements(w, &q, f)?))
        }
        Command::Matrix {
            query,
            mode,
            cap_assembly,
            output,
        } => {
            let q = query.query()?;
            let mut caps = AssemblyCaps::default();
            match (mode, cap_assembly) {
                (Mode::Dense, Some(c)) => caps.dense = c,
                (Mode::Stream, Some(c)) => caps.stream = c,
                (_, None) => {}
            }
            match mode {
                Mode::Dense => {
                    let m = assemble_matrix(&q, caps)?;
                    with_output(&output, |w, f| Ok(emit::write_matrix(w, &q, &m, f)?))
                }
                Mode::Stream => {
                    if q.subsystem > caps.stream {
                        return Err(Error::CapExceeded {
                            what: "n (streaming)",
                            value: q.subsystem,
                            cap: caps.stream,
                        }
                        .into());
                    }
                    with_output(&output, |w, f| Ok(emit::stream_matrix(w, &q, caps, f)?))
                }
            }
        }
        Command::Spectrum { query, output } => {
            let q = query.query()?;
            let spectrum = full_spectrum(&q)?;
            with_output(&output, |w, f| Ok(emit::write_spectrum(w, &q, &spectrum, f)?))
        }
        Command::Thermo {
            p,
            mu,
            subsystem,
            output,
        } => {
            if subsystem == 0 {
                return Err(Failure::Invalid("n must be at least 1".into()));
            }
            let params = ThermoParams::new(from_wire(&p)?, from_wire(&mu)?, subsystem)?;
            with_output(&output, |w, f| Ok(emit::write_thermo(w, &params, f)?))
        }
        Command::Verify {
            max_sites,
            max_subsystem,
            cap_assembly,
            output,
        } => {
            let mut assembly = AssemblyCaps::default();
            if let Some(c) = cap_assembly {
                assembly.dense = c;
            }
            let bounds = GridBounds {
                max_sites,
                max_subsystem,
            };
            let (grid, report) = run_grid(bounds, &OracleCaps::default(), assembly)?;
            with_output(&output, |w, f| Ok(emit::write_report(w, &report, Some(&grid), f)?))?;
            match report.failures().count() {
                0 => Ok(()),
                n => Err(Failure::Checks(n)),
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("permrdm: invalid parameters: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Checks(n)) => {
            eprintln!("permrdm: {n} check(s) failed");
            ExitCode::from(1)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("permrdm: {msg}");
            ExitCode::from(1)
        }
    }
}
