use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rank2::report::{cmd_catalog, cmd_recombine, cmd_series, cmd_split, cmd_verify, exit_code, RunConfig};

#[derive(Parser)]
#[command(name = "rank2", version, about = "Cohomology and stable-splitting bookkeeping for rank-2 p-groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the summand catalog of a group
    Catalog(Common),
    /// Summand table with the bookkeeping verdict
    Split(Common),
    /// Run every verification suite in scope for the group
    Verify(Common),
    /// Write a dominant summand as a sum of E-level pieces
    Recombine(WithSummand),
    /// Exact series of one summand
    Series(WithSummand),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Args)]
struct Common {
    /// Odd prime
    #[arg(long)]
    p: u32,
    /// Group spec: A, M:l,m,n, Mns:l,m,n,k, C:r or G:r,e
    #[arg(long)]
    group: String,
    /// Even degree cutoff (default 4p^2, at most 10000)
    #[arg(long, env = "RANK2_CUTOFF")]
    cutoff: Option<u32>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Seed for randomized checks
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct WithSummand {
    #[command(flatten)]
    common: Common,
    /// Summand label: X:i[,q], L1:i, L2:i, Imp:i,q or bare i[,q]
    #[arg(long)]
    summand: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, common, summand) = match cli.command {
        Command::Catalog(c) => ("catalog", c, None),
        Command::Split(c) => ("split", c, None),
        Command::Verify(c) => ("verify", c, None),
        Command::Recombine(w) => ("recombine", w.common, Some(w.summand)),
        Command::Series(w) => ("series", w.common, Some(w.summand)),
    };
    let run = || {
        let config = RunConfig::new(name, common.p, &common.group, common.cutoff, common.seed, summand)?;
        match name {
            "catalog" => cmd_catalog(&config),
            "split" => cmd_split(&config),
            "verify" => cmd_verify(&config),
            "recombine" => cmd_recombine(&config),
            _ => cmd_series(&config),
        }
    };
    match run() {
        Ok(report) => {
            let text = match common.format {
                Format::Json => format!("{}\n", report.to_json()),
                Format::Md => report.to_markdown(),
            };
            // a closed pipe (e.g. `| head`) is not an error
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                for c in report.checks.iter().filter(|c| c.status == rank2::report::Status::Fail) {
                    eprintln!("failed: {} ({})", c.name, c.detail);
                }
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
