//! Shared run configuration: body selection, budgets, and the JSON echo
//! that makes every report re-runnable.

use clap::Args;
use gaplib::error::{Error, Result};
use gaplib::gap::{BuildParams, Reducer};
use gaplib::geometry::{fixture, Fixture};
use gaplib::numeric::{parse_rational, Rat};
use gaplib::ConvexBody;
use serde_json::{json, Value};

pub const FIXTURE_NAMES: [&str; 5] = [
    "fig1_hexagon",
    "cross_polytope",
    "q_body",
    "cube",
    "random_symmetric",
];

#[derive(Args, Debug, Clone)]
pub struct BodyArgs {
    /// Named fixture: fig1_hexagon | cross_polytope | q_body | cube |
    /// random_symmetric
    #[arg(long, value_parser = parse_fixture_name)]
    pub fixture: Option<String>,

    /// Body JSON file ({"dim": n, "vertices": ...?, "inequalities": ...?})
    #[arg(long, conflicts_with = "fixture")]
    pub input: Option<String>,

    /// Dimension for parametric fixtures
    #[arg(long)]
    pub n: Option<usize>,

    /// Scale parameter m (integer or "p/q") for cube / cross_polytope
    #[arg(long)]
    pub m: Option<String>,

    /// Seed for random fixtures and sweeps
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Generator count for random_symmetric
    #[arg(long, default_value_t = 6)]
    pub vertex_count: usize,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Reduction used by the John-step construction
    #[arg(long, default_value = "seysen", value_parser = ["lll", "seysen", "hkz"])]
    pub reducer: String,

    /// Sandwich tolerance (0 < eps <= 0.1)
    #[arg(long, default_value_t = 1e-6)]
    pub eps: f64,

    /// Enumeration budget (coefficient tuples); GAPLIB_BUDGET overrides the
    /// default, an explicit flag wins over both
    #[arg(long)]
    pub budget: Option<u64>,

    /// Output path (stdout when omitted)
    #[arg(long)]
    pub out: Option<String>,

    /// Output format
    #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
    pub format: String,

    /// Scale the body by this integer before constructing, pulling the GAP
    /// radii back by the same factor afterwards
    #[arg(long)]
    pub unimodularize: Option<u64>,

    /// Record wall-clock timing in the report (off by default so identical
    /// runs produce byte-identical output)
    #[arg(long, default_value_t = false)]
    pub timing: bool,

    /// Named fault for the self-test of the exit-code contract (test
    /// builds only: release binaries do not carry this flag)
    #[cfg(debug_assertions)]
    #[arg(long)]
    pub inject_fault: Option<String>,
}

impl RunArgs {
    pub fn fault(&self) -> Option<&str> {
        #[cfg(debug_assertions)]
        {
            self.inject_fault.as_deref()
        }
        #[cfg(not(debug_assertions))]
        {
            None
        }
    }
}

fn parse_fixture_name(s: &str) -> std::result::Result<String, String> {
    if FIXTURE_NAMES.contains(&s) {
        Ok(s.to_string())
    } else {
        Err(format!(
            "unknown fixture `{s}` (expected one of {})",
            FIXTURE_NAMES.join(", ")
        ))
    }
}

pub fn validate_run(run: &RunArgs) -> Result<()> {
    if !(run.eps > 0.0 && run.eps <= 0.1) {
        return Err(Error::InvalidParams(format!(
            "eps must lie in (0, 0.1], got {}",
            run.eps
        )));
    }
    if run.budget == Some(0) {
        return Err(Error::InvalidParams("budget must be positive".into()));
    }
    if run.unimodularize == Some(0) {
        return Err(Error::InvalidParams(
            "unimodularize factor must be positive".into(),
        ));
    }
    Ok(())
}

pub fn effective_budget(run: &RunArgs) -> u64 {
    if let Some(b) = run.budget {
        return b;
    }
    if let Ok(v) = std::env::var("GAPLIB_BUDGET") {
        if let Ok(b) = v.parse::<u64>() {
            if b > 0 {
                return b;
            }
        }
    }
    gaplib::DEFAULT_ENUMERATION_BUDGET
}

pub fn build_params(run: &RunArgs) -> BuildParams {
    BuildParams {
        eps: run.eps,
        enumeration_budget: effective_budget(run),
        gap_budget: gaplib::DEFAULT_GAP_BUDGET,
    }
}

pub fn reducer_of(run: &RunArgs) -> Result<Reducer> {
    Reducer::parse(&run.reducer)
}

pub fn parse_m(body: &BodyArgs) -> Result<Rat> {
    match &body.m {
        None => Ok(Rat::from_integer(1.into())),
        Some(s) => parse_rational(s).ok_or_else(|| Error::MalformedInput {
            field: "m".into(),
            message: format!("not a rational: {s}"),
        }),
    }
}

pub fn load_body(args: &BodyArgs) -> Result<ConvexBody> {
    if let Some(path) = &args.input {
        let text = std::fs::read_to_string(path).map_err(|e| Error::MalformedInput {
            field: "input".into(),
            message: format!("{path}: {e}"),
        })?;
        let doc: Value = serde_json::from_str(&text).map_err(|e| Error::MalformedInput {
            field: "input".into(),
            message: format!("{path}: {e}"),
        })?;
        return gaplib::report::body_from_json(&doc);
    }
    let name = args
        .fixture
        .as_deref()
        .ok_or_else(|| Error::MalformedInput {
            field: "fixture|input".into(),
            message: "one of --fixture or --input is required".into(),
        })?;
    let n = args.n;
    let need_n = |what: &str| -> Result<usize> {
        n.ok_or_else(|| Error::MalformedInput {
            field: "n".into(),
            message: format!("--n is required for {what}"),
        })
    };
    match name {
        "fig1_hexagon" => fixture(Fixture::Fig1Hexagon { n: n.unwrap_or(2) }),
        "cross_polytope" => fixture(Fixture::CrossPolytope {
            n: need_n("cross_polytope")?,
            m: parse_m(args)?,
        }),
        "q_body" => fixture(Fixture::QBody {
            n: need_n("q_body")?,
        }),
        "cube" => fixture(Fixture::Cube {
            n: need_n("cube")?,
            m: parse_m(args)?,
        }),
        "random_symmetric" => fixture(Fixture::RandomSymmetric {
            n: need_n("random_symmetric")?,
            seed: args.seed,
            vertex_count: args.vertex_count,
        }),
        other => Err(Error::MalformedInput {
            field: "fixture".into(),
            message: format!("unknown fixture `{other}`"),
        }),
    }
}

/// The config echo embedded in reports: enough to reproduce the run.
pub fn echo(command: &str, body: &BodyArgs, run: &RunArgs) -> Value {
    json!({
        "budget": effective_budget(run),
        "command": command,
        "eps": run.eps,
        "fixture": body.fixture,
        "format": run.format,
        "input": body.input,
        "m": body.m,
        "n": body.n,
        "reducer": run.reducer,
        "seed": body.seed,
        "unimodularize": run.unimodularize,
        "vertex_count": body.vertex_count,
    })
}

pub fn write_output(out: &Option<String>, content: &str) -> Result<()> {
    match out {
        None => {
            println!("{}", content.trim_end_matches('\n'));
            Ok(())
        }
        Some(path) => std::fs::write(path, content).map_err(|e| Error::MalformedInput {
            field: "out".into(),
            message: format!("{path}: {e}"),
        }),
    }
}
