//! `floorforge`: sweep floor-function identities exactly over integer ranges.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use floorforge::search::{overall_status, parse_range, render, run_job, Format, JobSpec, Target, BUILTIN_IDS};
use floorforge::{Error, Precision};

#[derive(Parser, Debug)]
#[command(name = "floorforge", version, about = "Exact sweeps of floor-function identities")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Report format.
    #[arg(long, value_enum, global = true, default_value_t = OutFormat::Text)]
    format: OutFormat,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    workers: u32,
    /// Largest interval precision tried before a point is reported undecided.
    #[arg(
        long,
        global = true,
        env = "FLOORFORGE_PRECISION_CAP_BITS",
        default_value_t = Precision::DEFAULT_CAP_BITS,
        value_parser = clap::value_parser!(u32).range(64..)
    )]
    precision_cap_bits: u32,
    /// Counterexamples (and errors) stored per report.
    #[arg(long, global = true, default_value_t = 100)]
    counterexample_cap: usize,
    /// Keep every evaluated point in the report.
    #[arg(long, global = true)]
    verbose: bool,
    /// Report duration_ms as 0, for byte-reproducible output.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutFormat {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sweep a builtin identity.
    Verify {
        /// Builtin identity id.
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(BUILTIN_IDS))]
        id: String,
        /// Fixed parameter or grid variable, `name=value`.
        #[arg(long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
        /// Swept variable, `name=LO..HI`.
        #[arg(long = "range", value_name = "NAME=LO..HI")]
        ranges: Vec<String>,
    },
    /// Sweep `floor(n^(1/k) + (n+1)^(1/k)) = floor((2^k n + 2^(k-1))^(1/k))`.
    #[command(name = "scan-theorem3")]
    ScanRootPairs {
        #[arg(long, value_name = "LO..HI")]
        k: String,
        #[arg(long, value_name = "LO..HI")]
        n: String,
        /// Also check n = floor((3/2)^k) for every k, with exact margins.
        #[arg(long)]
        candidates: bool,
    },
    /// Sweep the l-term root sum identity for fixed shifts.
    #[command(name = "check-theorem4")]
    CheckRootSum {
        #[arg(long)]
        l: Option<u64>,
        #[arg(long)]
        k: u32,
        /// Shifts, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        xs: String,
        #[arg(long, value_name = "LO..HI")]
        n: String,
        /// Evaluate outside the hypotheses, flagging the results.
        #[arg(long)]
        unchecked: bool,
        /// Also check each inequality of the argument.
        #[arg(long)]
        steps: bool,
    },
    /// Check the statements in a file.
    Dsl { file: PathBuf },
}

fn split_param(s: &str) -> Result<(String, String), Error> {
    s.split_once('=')
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .filter(|(k, _)| !k.is_empty())
        .ok_or_else(|| Error::Usage(format!("parameter must look like name=value, got '{s}'")))
}

fn job(cli: Cli) -> Result<JobSpec, Error> {
    let flag = |b: bool| if b { "1" } else { "0" }.to_string();
    let mut spec = match cli.command {
        Command::Verify { id, params, ranges } => {
            let mut spec = JobSpec::new(Target::Builtin(id));
            spec.params = params.iter().map(|p| split_param(p)).collect::<Result<_, _>>()?;
            spec.ranges = ranges.iter().map(|r| parse_range(r)).collect::<Result<_, _>>()?;
            spec
        }
        Command::ScanRootPairs { k, n, candidates } => {
            let mut spec = JobSpec::new(Target::Builtin("theorem3".into()));
            spec.params = vec![("candidates".into(), flag(candidates))];
            spec.ranges = vec![parse_range(&format!("k={k}"))?, parse_range(&format!("n={n}"))?];
            spec
        }
        Command::CheckRootSum { l, k, xs, n, unchecked, steps } => {
            let mut spec = JobSpec::new(Target::Builtin("theorem4".into()));
            spec.params = vec![
                ("k".into(), k.to_string()),
                ("xs".into(), xs),
                ("unchecked".into(), flag(unchecked)),
                ("steps".into(), flag(steps)),
            ];
            if let Some(l) = l {
                spec.params.push(("l".into(), l.to_string()));
            }
            spec.ranges = vec![parse_range(&format!("n={n}"))?];
            spec
        }
        Command::Dsl { file } => JobSpec::new(Target::DslFile(file)),
    };
    let g = cli.global;
    spec.format = match g.format {
        OutFormat::Text => Format::Text,
        OutFormat::Json => Format::Json,
        OutFormat::Csv => Format::Csv,
    };
    spec.worker_count = g.workers as usize;
    spec.precision_cap_bits = g.precision_cap_bits;
    spec.counterexample_cap = g.counterexample_cap;
    spec.verbose = g.verbose;
    spec.timing = !g.no_timing;
    Ok(spec)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = job(cli).and_then(|spec| Ok((run_job(&spec)?, spec.format)));
    match result {
        Ok((reports, format)) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(&render(&reports, format)).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(overall_status(&reports).exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_undecided() { 3 } else { 2 })
        }
    }
}
