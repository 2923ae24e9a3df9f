//! JSON interchange: body files, basis files, GAP certificates, and the
//! self-contained analysis report. Exact rationals serialize as "p/q"
//! strings; irrational square-root quantities carry their exact square
//! next to a float approximation. serde_json maps are sorted, so identical
//! inputs produce byte-identical documents.

use crate::enumerate::PointSet;
use crate::error::{Error, Result};
use crate::gap::{GapCertificate, InclusionFactor, LowerBoundReport};
use crate::geometry::{ConvexBody, Inequality};
use crate::lattice::LatticeBasis;
use crate::linalg::RatVec;
use crate::numeric::{format_rational, parse_rational, Rat, SqrtRational};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

pub fn rat_to_value(r: &Rat) -> Value {
    Value::String(format_rational(r))
}

pub fn bigint_to_value(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => Value::String(v.to_string()),
    }
}

pub fn sqrt_to_value(v: &SqrtRational) -> Value {
    match v.exact_sqrt() {
        Some(r) => rat_to_value(&r),
        None => json!({
            "approx": v.to_f64(),
            "square": format_rational(v.square()),
        }),
    }
}

pub fn factor_to_value(f: &InclusionFactor) -> Value {
    match f {
        InclusionFactor::Infinite => Value::String("inf".into()),
        InclusionFactor::Finite(v) => match v.exact_sqrt() {
            Some(r) => rat_to_value(&r),
            None => json!(v.to_f64()),
        },
    }
}

fn value_to_rat(v: &Value, field: &str) -> Result<Rat> {
    let parsed = match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Some(Rat::from_integer(i.into()))
            } else {
                n.as_f64().and_then(crate::numeric::rat_from_f64_exact)
            }
        }
        Value::String(s) => parse_rational(s),
        _ => None,
    };
    parsed.ok_or_else(|| Error::MalformedInput {
        field: field.to_string(),
        message: format!("expected a number or \"p/q\", got {v}"),
    })
}

/// Body file format: {"dim": n, "vertices": [[...], ...]?,
/// "inequalities": [{"a": [...], "c": ...}, ...]?}. Negated vertex pairs
/// may be omitted; closure is applied on load.
pub fn body_from_json(doc: &Value) -> Result<ConvexBody> {
    let obj = doc.as_object().ok_or_else(|| Error::MalformedInput {
        field: "<root>".into(),
        message: "expected a JSON object".into(),
    })?;
    let dim = obj
        .get("dim")
        .and_then(|v| v.as_u64())
        .ok_or_else(|| Error::MalformedInput {
            field: "dim".into(),
            message: "missing or not a positive integer".into(),
        })? as usize;
    if dim == 0 {
        return Err(Error::MalformedInput {
            field: "dim".into(),
            message: "dimension must be at least 1".into(),
        });
    }
    let mut vertices: Option<Vec<RatVec>> = None;
    if let Some(vs) = obj.get("vertices") {
        let arr = vs.as_array().ok_or_else(|| Error::MalformedInput {
            field: "vertices".into(),
            message: "expected an array".into(),
        })?;
        let mut out = Vec::with_capacity(arr.len());
        for (i, row) in arr.iter().enumerate() {
            let row = row.as_array().ok_or_else(|| Error::MalformedInput {
                field: format!("vertices[{i}]"),
                message: "expected an array".into(),
            })?;
            let mut v = Vec::with_capacity(row.len());
            for (j, x) in row.iter().enumerate() {
                v.push(value_to_rat(x, &format!("vertices[{i}][{j}]"))?);
            }
            out.push(v);
        }
        vertices = Some(out);
    }
    let mut inequalities: Option<Vec<Inequality>> = None;
    if let Some(hs) = obj.get("inequalities") {
        let arr = hs.as_array().ok_or_else(|| Error::MalformedInput {
            field: "inequalities".into(),
            message: "expected an array".into(),
        })?;
        let mut out = Vec::with_capacity(arr.len());
        for (i, entry) in arr.iter().enumerate() {
            let entry = entry.as_object().ok_or_else(|| Error::MalformedInput {
                field: format!("inequalities[{i}]"),
                message: "expected an object with fields a, c".into(),
            })?;
            let a_val = entry.get("a").ok_or_else(|| Error::MalformedInput {
                field: format!("inequalities[{i}].a"),
                message: "missing".into(),
            })?;
            let a_arr = a_val.as_array().ok_or_else(|| Error::MalformedInput {
                field: format!("inequalities[{i}].a"),
                message: "expected an array".into(),
            })?;
            let mut a = Vec::with_capacity(a_arr.len());
            for (j, x) in a_arr.iter().enumerate() {
                a.push(value_to_rat(x, &format!("inequalities[{i}].a[{j}]"))?);
            }
            let c_val = entry.get("c").ok_or_else(|| Error::MalformedInput {
                field: format!("inequalities[{i}].c"),
                message: "missing".into(),
            })?;
            let c = value_to_rat(c_val, &format!("inequalities[{i}].c"))?;
            out.push(Inequality::new(&a, &c).map_err(|e| Error::MalformedInput {
                field: format!("inequalities[{i}]"),
                message: e.to_string(),
            })?);
        }
        inequalities = Some(out);
    }
    let body = match (vertices, inequalities) {
        (Some(v), Some(h)) => ConvexBody::from_both(dim, v, h)?,
        (Some(v), None) => ConvexBody::from_vertices(dim, v)?,
        (None, Some(h)) => ConvexBody::from_inequalities(dim, h)?,
        (None, None) => {
            return Err(Error::MalformedInput {
                field: "vertices|inequalities".into(),
                message: "at least one representation is required".into(),
            })
        }
    };
    Ok(body.with_label("input".to_string()))
}

pub fn body_to_json(body: &ConvexBody) -> Result<Value> {
    let mut doc = Map::new();
    doc.insert("dim".into(), json!(body.dim()));
    if body.has_vertices() {
        let verts: Vec<Value> = body
            .vertices()?
            .iter()
            .map(|v| Value::Array(v.iter().map(rat_to_value).collect()))
            .collect();
        doc.insert("vertices".into(), Value::Array(verts));
    }
    if body.has_inequalities() {
        let ineqs: Vec<Value> = body
            .inequalities()?
            .iter()
            .map(|p| {
                json!({
                    "a": p.a.iter().map(bigint_to_value).collect::<Vec<_>>(),
                    "c": rat_to_value(&p.c),
                })
            })
            .collect();
        doc.insert("inequalities".into(), Value::Array(ineqs));
    }
    Ok(Value::Object(doc))
}

/// Basis file: {"n": n, "rows": [[...], ...], "exact": true}. Row-major;
/// basis vectors are the matrix columns.
pub fn basis_from_json(doc: &Value) -> Result<LatticeBasis> {
    let obj = doc.as_object().ok_or_else(|| Error::MalformedInput {
        field: "<root>".into(),
        message: "expected a JSON object".into(),
    })?;
    let rows_val = obj.get("rows").ok_or_else(|| Error::MalformedInput {
        field: "rows".into(),
        message: "missing".into(),
    })?;
    let rows_arr = rows_val.as_array().ok_or_else(|| Error::MalformedInput {
        field: "rows".into(),
        message: "expected an array of arrays".into(),
    })?;
    let n = rows_arr.len();
    let mut cols = vec![vec![Rat::from_integer(0.into()); n]; n];
    for (i, row) in rows_arr.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| Error::MalformedInput {
            field: format!("rows[{i}]"),
            message: "expected an array".into(),
        })?;
        if row.len() != n {
            return Err(Error::MalformedInput {
                field: format!("rows[{i}]"),
                message: format!("expected {n} entries, got {}", row.len()),
            });
        }
        for (j, x) in row.iter().enumerate() {
            cols[j][i] = value_to_rat(x, &format!("rows[{i}][{j}]"))?;
        }
    }
    LatticeBasis::from_columns(cols)
}

pub fn basis_to_json(basis: &LatticeBasis) -> Value {
    let m = basis.matrix();
    let rows: Vec<Value> = (0..m.rows)
        .map(|i| Value::Array((0..m.cols).map(|j| rat_to_value(m.at(i, j))).collect()))
        .collect();
    json!({
        "exact": true,
        "n": basis.dim(),
        "rows": rows,
    })
}

pub fn pointset_to_json(points: &PointSet) -> Value {
    Value::Array(
        points
            .points
            .iter()
            .map(|p| Value::Array(p.iter().map(bigint_to_value).collect()))
            .collect(),
    )
}

pub fn certificate_to_json(cert: &GapCertificate) -> Value {
    let a_rows: Vec<Value> = (0..cert.gap.matrix.n)
        .map(|i| {
            Value::Array(
                (0..cert.gap.matrix.n)
                    .map(|j| bigint_to_value(cert.gap.matrix.at(i, j)))
                    .collect(),
            )
        })
        .collect();
    let mut bounds = Map::new();
    for b in &cert.bounds {
        bounds.insert(
            b.name.clone(),
            json!({
                "bound": sqrt_to_value(&b.bound),
                "holds": b.holds,
                "measured": sqrt_to_value(&b.measured),
                "strict": b.strict,
            }),
        );
    }
    json!({
        "A": a_rows,
        "b": cert.gap.b.iter().map(sqrt_to_value).collect::<Vec<_>>(),
        "bounds": Value::Object(bounds),
        "construction": cert.construction,
        "contained_in_K": cert.contained_in_k,
        "coverage": {"body": cert.coverage_body, "gap": bigint_to_value(&cert.coverage_gap)},
        "diagnostics": cert.diagnostics.as_ref().map(|d| json!({
            "inner_radius_sq": rat_to_value(&d.inner_radius_sq),
            "mahler_slack_sq": d.mahler_slack_sq.as_ref().map(rat_to_value),
            "max_polar_product_sq": rat_to_value(&d.max_polar_product_sq),
            "outer_radius_sq": rat_to_value(&d.outer_radius_sq),
            "reduced_basis": basis_to_json(&d.reduced_basis),
            "reducer": d.reducer,
            "seysen_score_input": rat_to_value(&d.seysen_score_input),
            "seysen_score_reduced": rat_to_value(&d.seysen_score_reduced),
        })),
        "t_star": factor_to_value(&cert.t_star),
        "uncoverable": cert
            .uncoverable
            .iter()
            .map(|p| Value::Array(p.iter().map(bigint_to_value).collect()))
            .collect::<Vec<_>>(),
        "witness_checks": cert.containment_checks,
    })
}

pub fn lower_bounds_to_json(rep: &LowerBoundReport) -> Value {
    let rows: Vec<Value> = rep
        .cross_rows
        .iter()
        .map(|r| {
            json!({
                "chain_holds": r.chain_holds,
                "construction": r.construction,
                "one_minus_delta": sqrt_to_value(&r.one_minus_delta),
                "t_star": factor_to_value(&r.t_star),
            })
        })
        .collect();
    json!({
        "cross_polytope": {
            "best_one_minus_delta": rep.best_one_minus_delta.as_ref().map(sqrt_to_value),
            "best_t_star": rep.best_t.as_ref().map(factor_to_value),
            "m": bigint_to_value(&rep.m),
            "rows": rows,
        },
        "n": rep.n,
        "q_body": {
            "count": rep.q_count,
            "max_gap_size": rep.q_max_gap,
            "nu_lower_bound": rat_to_value(&rep.nu_lower),
            "sum_free": rep.q_sum_free,
        },
    })
}

/// Caller-supplied run configuration echoed verbatim into the report so a
/// run can be reproduced from its own output.
pub type RunEcho = Value;

/// The self-contained analysis document.
#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub config: RunEcho,
    pub body_label: String,
    pub dim: usize,
    pub body_count: u64,
    pub unconditional: bool,
    pub certificates: Vec<GapCertificate>,
    pub lower_bounds: Option<LowerBoundReport>,
    /// Wall-clock milliseconds; omitted by default so identical runs emit
    /// byte-identical documents.
    pub timing_ms: Option<f64>,
}

impl AnalysisReport {
    pub fn to_json(&self) -> Value {
        json!({
            "body": {
                "count": self.body_count,
                "dim": self.dim,
                "label": self.body_label,
                "unconditional": self.unconditional,
            },
            "certificates": self
                .certificates
                .iter()
                .map(certificate_to_json)
                .collect::<Vec<_>>(),
            "config": self.config,
            "lower_bounds": self.lower_bounds.as_ref().map(lower_bounds_to_json),
            "timing_ms": self.timing_ms,
            "version": crate::VERSION,
        })
    }

    /// CSV projection: one row per certificate.
    pub fn to_csv(&self) -> String {
        fn field(s: &str) -> String {
            if s.contains(',') || s.contains('"') {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        }
        let mut out = String::from(
            "body,construction,t_star,coverage_gap,coverage_body,coverage_ratio,bounds_hold\n",
        );
        for c in &self.certificates {
            let ratio = crate::numeric::rat_to_f64(&c.coverage_ratio());
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                field(&self.body_label),
                field(&c.construction),
                c.t_star.to_f64(),
                c.coverage_gap,
                c.coverage_body,
                ratio,
                c.all_bounds_hold(),
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, rat_int};

    #[test]
    fn body_roundtrip() {
        let doc = json!({
            "dim": 2,
            "vertices": [[3, 0], ["-3", 1], [-1, 1]],
        });
        let body = body_from_json(&doc).unwrap();
        assert_eq!(body.dim(), 2);
        assert_eq!(body.vertices().unwrap().len(), 6); // closure applied
        assert!(body.contains(&[rat_int(3), rat_int(0)]).unwrap());
    }

    #[test]
    fn body_with_inequalities() {
        let doc = json!({
            "dim": 2,
            "inequalities": [
                {"a": [0, 1], "c": 1},
                {"a": [1, 0], "c": 3},
                {"a": [1, 4], "c": 3},
            ],
        });
        let body = body_from_json(&doc).unwrap();
        assert!(body.contains(&[rat_int(3), rat_int(0)]).unwrap());
        assert!(!body.contains(&[rat_int(3), rat_int(1)]).unwrap());
    }

    #[test]
    fn malformed_inputs_name_the_field() {
        let doc = json!({"dim": 2, "vertices": [[1, "x"]]});
        match body_from_json(&doc) {
            Err(Error::MalformedInput { field, .. }) => {
                assert_eq!(field, "vertices[0][1]");
            }
            other => panic!("unexpected {other:?}"),
        }
        let doc = json!({"dim": 2});
        assert!(matches!(
            body_from_json(&doc),
            Err(Error::MalformedInput { .. })
        ));
    }

    #[test]
    fn rational_values() {
        let doc = json!({
            "dim": 1,
            "vertices": [["5/2"]],
        });
        let body = body_from_json(&doc).unwrap();
        assert!(body.contains(&[rat(5, 2)]).unwrap());
        assert!(!body.contains(&[rat(51, 20)]).unwrap());
    }

    #[test]
    fn basis_roundtrip() {
        let doc = json!({"exact": true, "n": 2, "rows": [["1", "1"], ["0", "1"]]});
        let basis = basis_from_json(&doc).unwrap();
        assert_eq!(basis_to_json(&basis), doc);
    }

    #[test]
    fn sqrt_serialization() {
        assert_eq!(
            sqrt_to_value(&SqrtRational::from_ratio(rat(3, 4))),
            json!("3/4")
        );
        let irr = SqrtRational::from_square(rat_int(2));
        let v = sqrt_to_value(&irr);
        assert_eq!(v["square"], json!("2"));
    }
}
