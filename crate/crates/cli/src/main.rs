//! Command-line front end: load bodies, run the GAP constructions and the
//! verification suite, emit JSON/CSV reports.
//!
//! Exit codes: 0 success, 1 budget/feasibility/input trouble, 2 invariant
//! violation (a bug signal).

mod analyze;
mod config;
mod sweep;
mod verify;

use clap::{Parser, Subcommand};
use config::{BodyArgs, RunArgs};
use gaplib::error::Error;
use gaplib::lattice::LatticeBasis;
use serde_json::json;

#[derive(Parser, Debug)]
#[command(
    name = "gaplib",
    version,
    about = "Generalized arithmetic progressions approximating lattice points of symmetric polytopes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate the body and run every applicable GAP construction
    Analyze {
        #[command(flatten)]
        body: BodyArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run the named invariant checks; exit 2 on any failure
    Verify {
        #[command(flatten)]
        body: BodyArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Run a single named check
        #[arg(long)]
        only: Option<String>,
    },
    /// Parameter sweeps: one CSV row per (fixture, param, reducer)
    Sweep {
        #[command(flatten)]
        body: BodyArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Comma-separated m values (cube / cross_polytope)
        #[arg(long = "m-list")]
        m_list: Option<String>,
        /// Number of consecutive seeds for random_symmetric
        #[arg(long)]
        seeds: Option<u64>,
        /// Comma-separated reducer list (defaults to --reducer)
        #[arg(long = "reducer-list")]
        reducer_list: Option<String>,
    },
    /// Exact lattice-point enumeration of a body
    Enumerate {
        #[command(flatten)]
        body: BodyArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Print only the count
        #[arg(long, default_value_t = false)]
        count_only: bool,
    },
    /// Reduce a lattice basis and report quality diagnostics
    Reduce {
        #[command(flatten)]
        run: RunArgs,
        /// Basis JSON file ({"n": .., "rows": [[..]], "exact": true});
        /// omitted: a seeded random integer basis of dimension --n
        #[arg(long)]
        input: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}

fn dispatch(cli: Cli) -> gaplib::Result<i32> {
    match cli.command {
        Command::Analyze { body, run } => {
            let report = analyze::run(&body, &run)?;
            analyze::summarize(&report);
            let content = match run.format.as_str() {
                "csv" => report.to_csv(),
                _ => serde_json::to_string_pretty(&report.to_json()).expect("serializable"),
            };
            config::write_output(&run.out, &content)?;
            Ok(0)
        }
        Command::Verify { body, run, only } => {
            let (outcomes, note) = verify::run(&body, &run, &only)?;
            let mut failed = false;
            println!("{:<22} {:<6} detail", "check", "status");
            for o in &outcomes {
                println!(
                    "{:<22} {:<6} {}",
                    o.name,
                    if o.passed { "pass" } else { "FAIL" },
                    o.detail
                );
                failed |= !o.passed;
            }
            if !note.is_empty() {
                println!("{note}");
            }
            Ok(if failed { 2 } else { 0 })
        }
        Command::Sweep {
            body,
            run,
            m_list,
            seeds,
            reducer_list,
        } => {
            let out = sweep::run(&body, &run, &m_list, &seeds, &reducer_list)?;
            let content = match run.format.as_str() {
                "json" => {
                    let rows: Vec<serde_json::Value> = out
                        .rows
                        .iter()
                        .map(|r| {
                            json!({
                                "best_t_star": r.best_t_star,
                                "coverage_body": r.coverage_body,
                                "coverage_gap": r.coverage_gap,
                                "coverage_ratio": r.coverage_ratio,
                                "cramer_bound": r.cramer_bound,
                                "error": r.error,
                                "fixture": r.fixture,
                                "n": r.n,
                                "param": r.param,
                                "reducer": r.reducer,
                                "seysen_score": r.seysen_score,
                                "t_star": r.t_star,
                            })
                        })
                        .collect();
                    serde_json::to_string_pretty(&json!({
                        "config": config::echo("sweep", &body, &run),
                        "lower_bounds": out.reports,
                        "rows": rows,
                        "version": gaplib::VERSION,
                    }))
                    .expect("serializable")
                }
                _ => {
                    let mut s = String::from(sweep::CSV_HEADER);
                    s.push('\n');
                    for r in &out.rows {
                        s.push_str(&r.to_csv());
                        s.push('\n');
                    }
                    s
                }
            };
            config::write_output(&run.out, &content)?;
            Ok(0)
        }
        Command::Enumerate {
            body,
            run,
            count_only,
        } => {
            config::validate_run(&run)?;
            let k = config::load_body(&body)?;
            let budget = config::effective_budget(&run);
            let points =
                gaplib::lattice_points_in_body(&k, &LatticeBasis::identity(k.dim()), budget)?;
            if count_only {
                config::write_output(&run.out, &points.count().to_string())?;
            } else {
                let doc = json!({
                    "config": config::echo("enumerate", &body, &run),
                    "count": points.count(),
                    "points": gaplib::report::pointset_to_json(&points),
                    "version": gaplib::VERSION,
                });
                config::write_output(
                    &run.out,
                    &serde_json::to_string_pretty(&doc).expect("serializable"),
                )?;
            }
            Ok(0)
        }
        Command::Reduce {
            run,
            input,
            n,
            seed,
        } => {
            config::validate_run(&run)?;
            let basis = match input {
                Some(path) => {
                    let text =
                        std::fs::read_to_string(&path).map_err(|e| Error::MalformedInput {
                            field: "input".into(),
                            message: format!("{path}: {e}"),
                        })?;
                    let doc: serde_json::Value =
                        serde_json::from_str(&text).map_err(|e| Error::MalformedInput {
                            field: "input".into(),
                            message: format!("{path}: {e}"),
                        })?;
                    gaplib::report::basis_from_json(&doc)?
                }
                None => {
                    use rand::{Rng, SeedableRng};
                    let n = n.ok_or_else(|| Error::MalformedInput {
                        field: "n".into(),
                        message: "--n required without --input".into(),
                    })?;
                    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                    loop {
                        let rows: Vec<Vec<i64>> = (0..n)
                            .map(|_| (0..n).map(|_| rng.gen_range(-9i64..=9)).collect())
                            .collect();
                        if let Ok(b) = LatticeBasis::from_rows(&rows) {
                            break b;
                        }
                    }
                }
            };
            let reducer = config::reducer_of(&run)?;
            let reduced = reducer.run(&basis)?;
            reduced.verify_against(&basis)?;
            let doc = json!({
                "det_preserved": true,
                "duality_exact": true,
                "input": gaplib::report::basis_to_json(&basis),
                "reduced": gaplib::report::basis_to_json(&reduced.basis),
                "reducer": reducer.name(),
                "seysen_score_input": gaplib::numeric::format_rational(
                    &gaplib::lattice::seysen_score(&basis).value
                ),
                "seysen_score_reduced": gaplib::numeric::format_rational(
                    &gaplib::lattice::seysen_score(&reduced.basis).value
                ),
                "version": gaplib::VERSION,
            });
            config::write_output(
                &run.out,
                &serde_json::to_string_pretty(&doc).expect("serializable"),
            )?;
            Ok(0)
        }
    }
}
