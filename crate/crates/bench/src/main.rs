use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use cfqpr_bench::csv::{to_csv, write_csv};
use cfqpr_bench::plot::emit_plot_script;
use cfqpr_bench::ranges::{parse_f64_list, parse_usize_list};
use cfqpr_bench::{calibrate_ku, run_k_sensitivity, run_rate_sweep, run_timing, KuTable, Method, SweepConfig, SweepReport};
use clap::{Args, Parser, Subcommand};
use log::{error, info};

#[derive(Parser)]
#[command(name = "cfqpr-bench", version, about = "Monte-Carlo comparison of integer coefficient selection methods")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Number of channel realizations per cell
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    /// Master seed
    #[arg(long, env = "CFQPR_SEED", default_value_t = 1)]
    seed: u64,
    /// Output CSV (stdout if omitted)
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Average rate for each (L, SNR, method)
    Sweep {
        /// Dimensions, e.g. `2,4,8,16` or `2:16`
        #[arg(long, default_value = "2,4,8,16")]
        dims: String,
        /// SNR points in dB, e.g. `0:5:20`
        #[arg(long, default_value = "0:5:20")]
        snr_db: String,
        /// Comma-separated subset of qpr,exhaustive,rounding,qs,lll
        #[arg(long, default_value = "qpr,exhaustive,rounding,qs,lll")]
        methods: String,
        /// K_u overrides as `L=K` pairs, e.g. `4=5,8=6`
        #[arg(long, default_value = "")]
        ku: String,
        /// Spread trials over all cores (rate columns are unaffected)
        #[arg(long)]
        parallel: bool,
        #[command(flatten)]
        common: Common,
    },
    /// QPR rate as a function of the candidate cap K
    Ksens {
        #[arg(long, default_value_t = 4)]
        dim: usize,
        #[arg(long, default_value = "1:10")]
        k: String,
        #[arg(long, default_value = "0:5:20")]
        snr_db: String,
        #[arg(long)]
        parallel: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Serial wall-clock time per (L, SNR, method)
    Timing {
        #[arg(long, default_value = "2:16")]
        dims: String,
        #[arg(long, default_value = "0,10,20")]
        snr_db: String,
        #[arg(long, default_value = "qpr,exhaustive,rounding,qs,lll")]
        methods: String,
        #[command(flatten)]
        common: Common,
    },
    /// Smallest K whose average rate is within 1% of K+1, per dimension
    CalibrateKu {
        #[arg(long, default_value = "2:16")]
        dims: String,
        #[arg(long, default_value_t = 20.0)]
        snr_db: f64,
        #[arg(long, default_value_t = 16)]
        max_ku: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Write a gnuplot script for a sweep or timing CSV
    Plot {
        #[arg(long)]
        csv: PathBuf,
        #[arg(long, short)]
        out: PathBuf,
    },
}

fn parse_methods(text: &str) -> Result<Vec<Method>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse::<Method>().map_err(Into::into))
        .collect()
}

fn emit(report: &SweepReport, out: Option<&PathBuf>) -> Result<ExitCode> {
    match out {
        Some(path) => {
            write_csv(path, &report.rows)?;
            info!("wrote {} rows to {}", report.rows.len(), path.display());
        }
        None => print!("{}", to_csv(&report.rows)),
    }
    for f in &report.failures {
        error!("L={} snr={} {}: {}", f.dim, f.snr_db, f.method, f.message);
    }
    Ok(if report.is_ok() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Sweep {
            dims,
            snr_db,
            methods,
            ku,
            parallel,
            common,
        } => {
            let mut cfg = SweepConfig::new(parse_usize_list(&dims)?, parse_f64_list(&snr_db)?, common.trials, common.seed);
            cfg.methods = parse_methods(&methods)?;
            cfg.ku = KuTable::parse(&ku)?;
            cfg.parallel = parallel;
            emit(&run_rate_sweep(&cfg)?, common.out.as_ref())
        }
        Command::Ksens {
            dim,
            k,
            snr_db,
            parallel,
            common,
        } => {
            let ks = parse_usize_list(&k)?
                .into_iter()
                .map(|k| u32::try_from(k).context("K out of range"))
                .collect::<Result<Vec<_>>>()?;
            let report = run_k_sensitivity(dim, &parse_f64_list(&snr_db)?, &ks, common.trials, common.seed, parallel)?;
            emit(&report, common.out.as_ref())
        }
        Command::Timing {
            dims,
            snr_db,
            methods,
            common,
        } => {
            let mut cfg = SweepConfig::new(parse_usize_list(&dims)?, parse_f64_list(&snr_db)?, common.trials, common.seed);
            cfg.methods = parse_methods(&methods)?;
            emit(&run_timing(&cfg)?, common.out.as_ref())
        }
        Command::CalibrateKu {
            dims,
            snr_db,
            max_ku,
            common,
        } => {
            let mut text = String::from("L,k_u\n");
            for dim in parse_usize_list(&dims)? {
                let k = calibrate_ku(dim, snr_db, common.trials, common.seed, max_ku)?;
                info!("L={dim}: K_u={k}");
                text.push_str(&format!("{dim},{k}\n"));
            }
            match &common.out {
                Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Plot { csv, out } => {
            emit_plot_script(&csv, &out)?;
            info!("wrote {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            error!("{e:#}");
            ExitCode::from(2)
        }
    }
}
