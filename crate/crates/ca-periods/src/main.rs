use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ca_periods::additive::{additive_period, pi_brute, pi_formula, ub, AdditiveRule};
use ca_periods::constructions::{lookup, ConstructionParams};
use ca_periods::engine::{budget_from_env, cycle_census, extremal_from_census, RuleTable};
use ca_periods::modular::lambda_formula;
use ca_periods::search::{
    additive_extremal_table, additive_table_csv, discrepancy_csv, extremal_table,
    extremal_table_csv, mcl_count, pi_ub_scan,
};
use ca_periods::verify::{run_suite, Suite};
use ca_periods::Error;

#[derive(Parser)]
#[command(
    name = "ca-periods",
    about = "Extremal temporal periods of ring cellular automata"
)]
struct Cli {
    /// Worker thread count (results are identical for any value)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cycle structure of a rule loaded from JSON
    Period {
        /// Rule table file
        #[arg(long)]
        rule: PathBuf,
        #[arg(long)]
        sigma: usize,
    },
    /// Eventual period of the additive rule b*c0 + a*c1 mod n
    Additive {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        sigma: usize,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
    },
    /// Maximal additive eventual period pi_sigma(n)
    Pi {
        #[arg(long)]
        sigma: usize,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = PiMethod::Formula)]
        method: PiMethod,
    },
    /// Unit-group exponent lambda_sigma(n) (sigma = 2, 3 or 4)
    Lambda {
        #[arg(long)]
        sigma: u64,
        #[arg(long)]
        n: u64,
    },
    /// Prime-power upper bound ub_sigma(p^m)
    Ub {
        #[arg(long)]
        sigma: usize,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
    },
    /// Reference tables as CSV
    Table {
        /// 2 = all-rules extremal scan, 3 = additive maxima, 4 = pi vs ub
        #[arg(long)]
        which: u8,
        /// Include the rows that take hours instead of minutes
        #[arg(long)]
        long_run: bool,
    },
    /// Count rules attaining the maximal conceivable period
    Mcl {
        #[arg(long)]
        sigma: usize,
        #[arg(long)]
        n: u64,
        /// Lift the visit budget for multi-hour scans
        #[arg(long)]
        long_run: bool,
    },
    /// Build a long-period rule and write it to disk
    Construct {
        /// odometer, odometer-automata or prime-partition
        #[arg(long)]
        kind: String,
        #[arg(long)]
        sigma: usize,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        n: Option<u64>,
        /// Rule JSON target; the encoding sidecar lands next to it
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the invariant check suites
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::Quick)]
        suite: SuiteArg,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PiMethod {
    Formula,
    Brute,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Quick,
    Full,
}

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::Infeasible(_) | Error::UnsupportedSigma(..) => 2,
        Error::BudgetExceeded { .. } => 3,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Error::Usage(format!("--threads: {e}")))?;
    }
    let budget = budget_from_env();

    match cli.command {
        Command::Period { rule, sigma } => {
            let text = std::fs::read_to_string(rule)?;
            let rule: RuleTable = serde_json::from_str(&text)?;
            let census = cycle_census(&rule, sigma, budget)?;
            let xy = extremal_from_census(&census);
            let cycles: Vec<_> = census
                .cycles
                .iter()
                .map(|c| {
                    serde_json::json!({
                        "length": c.length,
                        "spatial_period": c.spatial_period,
                        "count": c.count,
                    })
                })
                .collect();
            let out = serde_json::json!({ "X": xy.x, "Y": xy.y, "cycles": cycles });
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Command::Additive { n, sigma, a, b } => {
            if a >= n || b >= n {
                return Err(Error::Usage(format!("coefficients must lie below n = {n}")));
            }
            let ep = additive_period(&AdditiveRule::new(n, sigma, a, b));
            let out = serde_json::json!({ "period": ep.period, "preperiod": ep.preperiod });
            println!("{}", serde_json::to_string(&out)?);
        }
        Command::Pi { sigma, n, method } => {
            let formula = match method {
                PiMethod::Brute => None,
                _ => Some(pi_formula(sigma, n)?),
            };
            let brute = match method {
                PiMethod::Formula => None,
                _ => Some(pi_brute(sigma, n).0),
            };
            match (formula, brute) {
                (Some(f), None) => println!("{f}"),
                (None, Some(b)) => println!("{b}"),
                (Some(f), Some(b)) => {
                    println!("formula {f} brute {b}");
                    if f != b {
                        eprintln!("mismatch at sigma={sigma} n={n}");
                        return Ok(4);
                    }
                }
                (None, None) => unreachable!(),
            }
        }
        Command::Lambda { sigma, n } => println!("{}", lambda_formula(sigma, n)?),
        Command::Ub { sigma, p, m } => println!("{}", ub(sigma, p, m)?),
        Command::Table { which, long_run } => match which {
            2 => {
                let top = if long_run { 10 } else { 7 };
                let sigmas: Vec<usize> = (1..=top).collect();
                let budget = if long_run { u128::MAX } else { budget };
                let rows = extremal_table(3, &sigmas, budget)?;
                print!("{}", extremal_table_csv(&rows));
            }
            3 => {
                let rows2 = additive_extremal_table(2, 2..=20, budget)?;
                let rows3 = additive_extremal_table(3, 2..=20, budget)?;
                print!("{}", additive_table_csv(&rows2, &rows3));
            }
            4 => {
                let pairs: &[(u64, u64)] = &[
                    (2, 2),
                    (4, 2),
                    (7, 3),
                    (8, 2),
                    (11, 2),
                    (13, 2),
                    (14, 3),
                    (16, 2),
                    (21, 3),
                    (22, 2),
                    (26, 2),
                    (32, 2),
                    (42, 3),
                    (44, 2),
                ];
                let rows = pi_ub_scan(pairs, 64, 8192)?;
                print!("{}", discrepancy_csv(&rows));
            }
            other => return Err(Error::Usage(format!("no table {other}; pick 2, 3 or 4"))),
        },
        Command::Mcl { sigma, n, long_run } => {
            let budget = if long_run { u128::MAX } else { budget };
            let checkpoint = std::env::var_os("CA_PERIODS_CHECKPOINT").map(PathBuf::from);
            let (count, total) = mcl_count(sigma, n, budget, checkpoint.as_deref())?;
            println!("{count} of {total}");
        }
        Command::Construct {
            kind,
            sigma,
            k,
            n,
            out,
        } => {
            let construction = lookup(&kind)?;
            let built = construction.build(&ConstructionParams { sigma, k, n })?;
            let sidecar_path = out.with_extension("sidecar.json");
            std::fs::write(&out, serde_json::to_string_pretty(&built.rule)?)?;
            std::fs::write(&sidecar_path, serde_json::to_string_pretty(&built.sidecar)?)?;
            println!(
                "{}",
                serde_json::json!({
                    "rule": out,
                    "sidecar": sidecar_path,
                    "states": built.rule.n,
                })
            );
        }
        Command::Verify { suite } => {
            let suite = match suite {
                SuiteArg::Quick => Suite::Quick,
                SuiteArg::Full => Suite::Full,
            };
            let results = run_suite(suite, budget);
            let mut failed = false;
            for r in &results {
                if r.pass {
                    println!("ok   {}", r.name);
                } else {
                    println!("FAIL {}: {}", r.name, r.detail);
                    failed = true;
                }
            }
            if failed {
                return Ok(4);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_for(&err))
        }
    }
}
