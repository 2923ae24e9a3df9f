//! `analyze`: enumerate the body's lattice points and run every applicable
//! construction, emitting a self-contained report.

use crate::config::{self, BodyArgs, RunArgs};
use gaplib::error::{Error, Result};
use gaplib::gap::{
    bruteforce_optimal_gap, build_cardinality_gap, build_combined_gap, build_inclusion_gap,
    build_unconditional_gap, certify_pullback, Objective,
};
use gaplib::lattice::LatticeBasis;
use gaplib::numeric::Rat;
use gaplib::report::AnalysisReport;
use gaplib::{lattice_points_in_body, ConvexBody, GapCertificate};

pub fn run(body_args: &BodyArgs, run_args: &RunArgs) -> Result<AnalysisReport> {
    config::validate_run(run_args)?;
    let body = config::load_body(body_args)?;
    let params = config::build_params(run_args);
    let reducer = config::reducer_of(run_args)?;
    let started = std::time::Instant::now();

    let points = lattice_points_in_body(
        &body,
        &LatticeBasis::identity(body.dim()),
        params.enumeration_budget,
    )?;

    // Optionally scale so a lattice basis fits inside, pulling radii back
    // afterwards (the certificate is re-measured against the original K).
    let scale = run_args.unimodularize.map(|l| Rat::from_integer(l.into()));
    let work_body: ConvexBody = match &scale {
        Some(l) => body.scale(l)?,
        None => body.clone(),
    };

    let mut certificates: Vec<GapCertificate> = Vec::new();
    let mut push = |cert: Result<GapCertificate>| -> Result<()> {
        match cert {
            Ok(c) => {
                let c = match &scale {
                    Some(l) => certify_pullback(c, l, &body, &points)?,
                    None => c,
                };
                certificates.push(c);
                Ok(())
            }
            // Inapplicable constructions are skipped, not fatal.
            Err(Error::LambdaTooLarge { .. })
            | Err(Error::NotUnconditional)
            | Err(Error::DimensionOverBudget { .. }) => Ok(()),
            Err(e) => Err(e),
        }
    };

    push(build_inclusion_gap(&work_body, reducer, &params))?;
    push(build_cardinality_gap(&work_body, &params))?;
    push(build_combined_gap(&work_body, &params))?;
    push(build_unconditional_gap(&work_body, &params))?;
    if body.dim() <= 3 && points.count() <= 200 {
        push(bruteforce_optimal_gap(
            &work_body,
            Objective::Coverage,
            200,
            &params,
        ))?;
    }

    let report = AnalysisReport {
        config: config::echo("analyze", body_args, run_args),
        body_label: body.label.clone(),
        dim: body.dim(),
        body_count: points.count() as u64,
        unconditional: body.is_unconditional()?,
        certificates,
        lower_bounds: None,
        timing_ms: if run_args.timing {
            Some(started.elapsed().as_secs_f64() * 1000.0)
        } else {
            None
        },
    };
    Ok(report)
}

/// Human summary lines printed to stderr so stdout stays machine-readable.
pub fn summarize(report: &AnalysisReport) {
    eprintln!(
        "body {} (n={}): {} lattice points",
        report.body_label, report.dim, report.body_count
    );
    for c in &report.certificates {
        eprintln!(
            "  {}: |P| = {}, t* = {}, coverage ratio = {:.4}, bounds {}",
            c.construction,
            c.coverage_gap,
            match &c.t_star {
                gaplib::InclusionFactor::Infinite => "inf".to_string(),
                f => format!("{:.6}", f.to_f64()),
            },
            gaplib::numeric::rat_to_f64(&c.coverage_ratio()),
            if c.all_bounds_hold() {
                "hold"
            } else {
                "VIOLATED"
            },
        );
        if c.construction.starts_with("bruteforce") && report.body_count > 0 {
            let nu = report.body_count as f64
                / gaplib::numeric::rat_to_f64(&Rat::from_integer(c.coverage_gap.clone()));
            eprintln!("    coverage lower bound: nu >= {nu:.4}");
        }
    }
}
