use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use commsurf::par::{with_threads, Execution};
use commsurf::verifier::{
    any_failed, default_series_order, registry, run, select, to_json_lines, to_text, Config, RunError,
};

/// Run the named checks and report one result per check.
#[derive(Parser, Debug)]
#[command(name = "commsurf", version)]
struct Args {
    /// Largest prime for point counts and coefficient sweeps.
    #[arg(long, default_value_t = 199, value_parser = clap::value_parser!(u64).range(5..))]
    pmax: u64,
    /// Largest prime for counts over F_{p^2}.
    #[arg(long, default_value_t = 43, value_parser = clap::value_parser!(u64).range(5..))]
    p2max: u64,
    /// Length of the eta-product expansions [default: 4 pmax + 16].
    #[arg(long)]
    series_order: Option<usize>,
    /// Worker threads [default: available parallelism].
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
    /// Also write newline-delimited JSON, one object per check.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Select checks by glob over ids; repeatable.
    #[arg(long = "check", value_name = "GLOB")]
    checks: Vec<String>,
    /// Entry bound in the order-4 isometry search.
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(i64).range(1..))]
    isometry_bound: i64,
    /// Sample count for the Hesse j-invariant comparison.
    #[arg(long, default_value_t = 100)]
    hesse_samples: usize,
    /// Run everything on the calling thread.
    #[arg(long)]
    sequential: bool,
    /// Record wall time per check. Reports are then not reproducible.
    #[arg(long)]
    timings: bool,
    /// Print check ids and claims without running them.
    #[arg(long)]
    list: bool,
}

impl Args {
    fn config(&self) -> Config {
        Config {
            pmax: self.pmax,
            p2max: self.p2max,
            series_order: self.series_order.unwrap_or_else(|| default_series_order(self.pmax)),
            isometry_bound: self.isometry_bound,
            hesse_samples: self.hesse_samples,
            exec: if self.sequential {
                Execution::Sequential
            } else {
                Execution::Parallel
            },
            timings: self.timings,
        }
    }
}

fn list(args: &Args, config: &Config) -> ExitCode {
    let checks = registry(config);
    match select(&checks, &args.checks) {
        Ok(chosen) => {
            for c in chosen {
                println!("{:<28} {}", c.id, c.claim);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let config = args.config();
    if args.list {
        return list(&args, &config);
    }
    let threads = args.threads.map(|n| n as usize);
    panic::set_hook(Box::new(|_| {}));
    let outcome = panic::catch_unwind(AssertUnwindSafe(|| {
        with_threads(threads, || run(&args.checks, config))
    }));
    let results = match outcome {
        Ok(Ok(r)) => r,
        Ok(Err(e @ (RunError::NoMatch(_) | RunError::BadPattern(_)))) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
        Ok(Err(e)) => {
            eprintln!("internal error: {e}");
            return ExitCode::from(3);
        }
        Err(_) => {
            eprintln!("internal error: panic outside a check");
            return ExitCode::from(3);
        }
    };
    print!("{}", to_text(&results));
    if let Some(path) = &args.json {
        if let Err(e) = std::fs::write(path, to_json_lines(&results)) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if any_failed(&results) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
