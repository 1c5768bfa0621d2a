use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use vancycle::joincycles::{AbstractGrid, CycleRef};
use vancycle::polycore::RatPoly;
use vancycle::verify::Options;
use vancycle_cli::{
    classify, intmatrix, orbit, read_json, suite_names, to_json, verify, CliError, CliResult, JobInput,
};

/// Vanishing cycles and monodromy orbits of h(y) + g(x).
///
/// Polynomials are JSON arrays of coefficient strings, lowest degree first
/// (["0","8","16","0","-1"] is -x^4 + 16x^2 + 8x). A file name of "-" reads
/// stdin. Exit codes: 0 success, 1 verification failure, 2 invalid input.
#[derive(Parser)]
#[command(name = "vancycle", version)]
struct Cli {
    /// Write the JSON result here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Intersection matrix of y^e + x^d in the join basis.
    Intmatrix {
        #[arg(short, value_parser = clap::value_parser!(u16).range(2..))]
        e: u16,
        #[arg(short, value_parser = clap::value_parser!(u16).range(2..))]
        d: u16,
    },
    /// Span of the monodromy orbit of one basis cycle.
    Orbit {
        #[command(flatten)]
        input: InputArgs,
        /// Flat 1-based position k, or a 1-based cell row-col.
        #[arg(long)]
        cycle: CycleRef,
    },
    /// Orbit class of a pair of quartics, with a verdict per cycle.
    Classify { h: PathBuf, g: PathBuf },
    /// Run verification suites and print a pass/fail manifest.
    Verify {
        /// Suites to run: intersection, pure-powers, ranks, tables, classes,
        /// eigen, or all (the default).
        suites: Vec<String>,
        /// Degree cap for the pure-power tables (e = 3, 4) and the
        /// intersection-matrix diagonals.
        #[arg(long, default_value_t = 30)]
        max_d: usize,
        /// Degree cap for the e = 2 pure-power tables.
        #[arg(long, default_value_t = 100)]
        max_d_e2: usize,
        /// Worker threads; the manifest does not depend on it.
        #[arg(long)]
        jobs: Option<usize>,
        /// Leave out elapsed times, making the output byte-for-byte stable.
        #[arg(long)]
        no_timings: bool,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Exponent of y for the pure power y^e + x^d.
    #[arg(short, requires = "d", conflicts_with_all = ["grid", "h"])]
    e: Option<usize>,
    #[arg(short, requires = "e")]
    d: Option<usize>,
    /// Letter grid as JSON: {"e":4,"d":4,"grid":[["b","e","b"],...]}.
    #[arg(long, conflicts_with = "h")]
    grid: Option<PathBuf>,
    /// h(y) as a polynomial JSON file.
    #[arg(long, requires = "g")]
    h: Option<PathBuf>,
    /// g(x) as a polynomial JSON file.
    #[arg(long, requires = "h")]
    g: Option<PathBuf>,
}

impl InputArgs {
    fn job_input(&self) -> CliResult<JobInput> {
        match (self.e, self.d, &self.grid, &self.h, &self.g) {
            (Some(e), Some(d), ..) => Ok(JobInput::Monomial { e, d }),
            (_, _, Some(path), ..) => Ok(JobInput::Grid(read_json::<AbstractGrid>(path)?)),
            (_, _, _, Some(h), Some(g)) => Ok(JobInput::Polys { h: read_json(h)?, g: read_json(g)? }),
            _ => Err(CliError::Invalid("give -e and -d, --grid, or --h and --g".into())),
        }
    }
}

fn run(cli: &Cli) -> CliResult<(String, bool)> {
    Ok(match &cli.command {
        Command::Intmatrix { e, d } => (to_json(&intmatrix(*e as usize, *d as usize)?), true),
        Command::Orbit { input, cycle } => (to_json(&orbit(&input.job_input()?, *cycle)?), true),
        Command::Classify { h, g } => {
            let (h, g): (RatPoly, RatPoly) = (read_json(h)?, read_json(g)?);
            (to_json(&classify(&h, &g)?), true)
        }
        Command::Verify { suites, max_d, max_d_e2, jobs, no_timings } => {
            let names = suite_names(suites)?;
            let jobs = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())).max(1);
            let manifest = verify(&names, &Options { max_d: *max_d, max_d_e2: *max_d_e2, jobs }, !no_timings);
            (to_json(&manifest), manifest.pass)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, pass) = match run(&cli) {
        Ok(r) => r,
        Err(err) => {
            eprintln!("vancycle: {err}");
            return ExitCode::from(err.exit_code() as u8);
        }
    };
    match &cli.output {
        Some(path) => {
            if let Err(err) = std::fs::write(path, &text) {
                eprintln!("vancycle: {}: {err}", path.display());
                return ExitCode::from(vancycle_cli::EXIT_INVALID as u8);
            }
        }
        None => {
            let mut out = std::io::stdout().lock();
            if let Err(err) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                if err.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("vancycle: {err}");
                    return ExitCode::from(vancycle_cli::EXIT_INVALID as u8);
                }
            }
        }
    }
    if pass {
        ExitCode::SUCCESS
    } else {
        eprintln!("vancycle: verification failed");
        ExitCode::from(vancycle_cli::EXIT_FAILED as u8)
    }
}
