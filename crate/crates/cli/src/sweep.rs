//! `sweep`: parameter sweeps over m, seeds, and reducers, one CSV row per
//! (fixture, param, reducer). JSON output carries the full reports; the
//! CSV is a projection.

use crate::config::{self, BodyArgs, RunArgs};
use gaplib::error::{Error, Result};
use gaplib::gap::{
    build_cardinality_gap, build_inclusion_gap, build_unconditional_gap, lower_bound_suite,
    BuildParams, Reducer,
};
use gaplib::geometry::{fixture, Fixture};
use gaplib::numeric::{rat_int, rat_to_f64};
use gaplib::ConvexBody;

pub struct SweepRow {
    pub fixture: String,
    pub n: usize,
    pub param: String,
    pub reducer: String,
    pub t_star: Option<f64>,
    pub best_t_star: Option<f64>,
    pub coverage_gap: Option<String>,
    pub coverage_body: Option<u64>,
    pub coverage_ratio: Option<f64>,
    pub seysen_score: Option<f64>,
    pub cramer_bound: Option<f64>,
    pub error: Option<String>,
}

pub const CSV_HEADER: &str = "fixture,n,param,reducer,t_star,best_t_star,coverage_gap,\
coverage_body,coverage_ratio,seysen_score,cramer_bound,error";

/// Quote a CSV field when it contains a delimiter.
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl SweepRow {
    pub fn to_csv(&self) -> String {
        fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
            v.as_ref().map(|x| x.to_string()).unwrap_or_default()
        }
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            csv_field(&self.fixture),
            self.n,
            self.param,
            self.reducer,
            opt(&self.t_star),
            opt(&self.best_t_star),
            opt(&self.coverage_gap),
            opt(&self.coverage_body),
            opt(&self.coverage_ratio),
            opt(&self.seysen_score),
            opt(&self.cramer_bound),
            opt(&self.error),
        )
    }
}

fn parse_list(s: &str) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        out.push(part.parse::<i64>().map_err(|_| Error::MalformedInput {
            field: "m-list|seeds".into(),
            message: format!("not an integer: {part}"),
        })?);
    }
    Ok(out)
}

fn measure(body: &ConvexBody, reducer: Reducer, params: &BuildParams) -> SweepRow {
    let mut row = SweepRow {
        fixture: body.label.clone(),
        n: body.dim(),
        param: String::new(),
        reducer: reducer.name().to_string(),
        t_star: None,
        best_t_star: None,
        coverage_gap: None,
        coverage_body: None,
        coverage_ratio: None,
        seysen_score: None,
        cramer_bound: None,
        error: None,
    };
    match build_inclusion_gap(body, reducer, params) {
        Ok(cert) => {
            row.t_star = Some(cert.t_star.to_f64());
            row.coverage_gap = Some(cert.coverage_gap.to_string());
            row.coverage_body = Some(cert.coverage_body);
            row.coverage_ratio = Some(rat_to_f64(&cert.coverage_ratio()));
            if let Some(d) = &cert.diagnostics {
                row.seysen_score = Some(rat_to_f64(&d.seysen_score_reduced));
            }
            if let Some(b) = cert.bound("cramer_chain") {
                row.cramer_bound = Some(b.bound.to_f64());
            }
            // Best finite factor across the applicable constructions.
            let mut best = cert.t_star.clone();
            for other in [
                build_cardinality_gap(body, params).ok().map(|c| c.t_star),
                build_unconditional_gap(body, params).ok().map(|c| c.t_star),
            ]
            .into_iter()
            .flatten()
            {
                if other < best {
                    best = other;
                }
            }
            row.best_t_star = Some(best.to_f64());
        }
        Err(e) => row.error = Some(e.to_string().replace(',', ";")),
    }
    row
}

pub struct SweepOutput {
    pub rows: Vec<SweepRow>,
    pub reports: Vec<serde_json::Value>,
}

pub fn run(
    body_args: &BodyArgs,
    run_args: &RunArgs,
    m_list: &Option<String>,
    seeds: &Option<u64>,
    reducer_list: &Option<String>,
) -> Result<SweepOutput> {
    config::validate_run(run_args)?;
    let params = config::build_params(run_args);
    let reducers: Vec<Reducer> = match reducer_list {
        None => vec![config::reducer_of(run_args)?],
        Some(list) => {
            let mut rs = Vec::new();
            for part in list.split(',') {
                rs.push(Reducer::parse(part.trim())?);
            }
            rs
        }
    };
    let fixture_name = body_args
        .fixture
        .as_deref()
        .ok_or_else(|| Error::MalformedInput {
            field: "fixture".into(),
            message: "sweep requires --fixture".into(),
        })?;
    let n = body_args.n.unwrap_or(2);

    // Parameter axis: m values for scaled fixtures, seeds for random ones.
    let mut jobs: Vec<(String, ConvexBody)> = Vec::new();
    if let Some(list) = m_list {
        let ms = parse_list(list)?;
        if ms.is_empty() {
            return Err(Error::InvalidParams("empty parameter range".into()));
        }
        for m in ms {
            let body = match fixture_name {
                "cross_polytope" => fixture(Fixture::CrossPolytope { n, m: rat_int(m) })?,
                "cube" => fixture(Fixture::Cube { n, m: rat_int(m) })?,
                other => {
                    return Err(Error::InvalidParams(format!(
                        "fixture {other} takes no m sweep"
                    )))
                }
            };
            jobs.push((format!("m={m}"), body));
        }
    } else if let Some(count) = seeds {
        if *count == 0 {
            return Err(Error::InvalidParams("empty parameter range".into()));
        }
        for s in 0..*count {
            let seed = body_args.seed.wrapping_add(s);
            let body = fixture(Fixture::RandomSymmetric {
                n,
                seed,
                vertex_count: body_args.vertex_count,
            })?;
            jobs.push((format!("seed={seed}"), body));
        }
    } else {
        return Err(Error::InvalidParams("empty parameter range".into()));
    }

    let mut rows = Vec::new();
    let mut reports = Vec::new();
    for (param, body) in &jobs {
        for reducer in &reducers {
            let mut row = measure(body, *reducer, &params);
            row.param = param.clone();
            rows.push(row);
        }
        // Lower-bound suite rides along for the cross-polytope trend runs.
        if fixture_name == "cross_polytope" && n <= 4 {
            if let Some(m) = param.strip_prefix("m=").and_then(|v| v.parse::<i64>().ok()) {
                if let Ok(rep) = lower_bound_suite(n, m, &params) {
                    reports.push(gaplib::report::lower_bounds_to_json(&rep));
                }
            }
        }
    }
    if rows.iter().all(|r| r.error.is_some()) {
        return Err(Error::BudgetExceeded("all sweep rows failed".into()));
    }
    Ok(SweepOutput { rows, reports })
}
