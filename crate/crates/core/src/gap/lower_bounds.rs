//! Lower-bound measurements: the cross-polytope inclusion-factor floor
//! tau >= n!^{1/n} (prod floor(u_i)/u_i)^{1/n} and the Q-body coverage
//! floor nu >= (2^n + 1)/3, both checked exactly against the constructions
//! and, at tiny scale, the brute-force oracle.

use super::constructions::{
    build_cardinality_gap, build_combined_gap, build_inclusion_gap, build_unconditional_gap,
    BuildParams, Reducer,
};
use super::{bruteforce_optimal_gap, GapCertificate, InclusionFactor, Objective};
use crate::enumerate::lattice_points_in_body;
use crate::error::{Error, Result};
use crate::geometry::{fixture, Fixture};
use crate::lattice::LatticeBasis;
use crate::numeric::{Rat, SqrtRational};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// One cross-polytope GAP row: which construction, its inclusion factor,
/// and the proof-chain floor computed from its own radii.
#[derive(Clone, Debug)]
pub struct CrossGapRow {
    pub construction: String,
    pub t_star: InclusionFactor,
    /// min_i floor(u_i)/u_i, i.e. 1 - delta for this GAP's radii.
    pub one_minus_delta: SqrtRational,
    /// t*^n >= n! * prod(floor(u_i)/u_i), exact (only for unimodular GAPs
    /// with finite factor).
    pub chain_holds: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct LowerBoundReport {
    pub n: usize,
    pub m: BigInt,
    pub cross_rows: Vec<CrossGapRow>,
    /// Best (smallest) finite inclusion factor over the rows.
    pub best_t: Option<InclusionFactor>,
    /// 1 - delta of the best row.
    pub best_one_minus_delta: Option<SqrtRational>,
    /// |Q cap Z^n| = 2^n + 1, verified by enumeration.
    pub q_count: u64,
    /// Largest GAP size inside Q (3 by the sum-free argument; verified by
    /// brute force at n <= 3).
    pub q_max_gap: u64,
    /// nu >= (2^n + 1)/3.
    pub nu_lower: Rat,
    /// Exhaustive witness of the sum-free property of Q cap Z^n.
    pub q_sum_free: bool,
}

fn row_from_cert(cert: &GapCertificate) -> CrossGapRow {
    // 1 - delta = min_i floor(u_i)/u_i (0 when some floor is 0).
    let mut one_minus_delta: Option<SqrtRational> = None;
    for u in &cert.gap.b {
        let fl = u.floor();
        let val = if fl.is_zero() {
            SqrtRational::zero()
        } else {
            SqrtRational::from_ratio(Rat::from_integer(fl)).div(u)
        };
        if one_minus_delta.as_ref().is_none_or(|b| val < *b) {
            one_minus_delta = Some(val);
        }
    }
    let one_minus_delta = one_minus_delta.expect("nonempty b");
    let n = cert.gap.dim();
    let chain_holds = match (&cert.t_star, cert.gap.is_unimodular()) {
        (InclusionFactor::Finite(t), true) => {
            // t^n >= n! prod(floor(u_i)/u_i), exact on squares.
            let mut rhs = SqrtRational::from_ratio(Rat::from_integer(factorial(n)));
            for u in &cert.gap.b {
                let fl = u.floor();
                if fl.is_zero() {
                    rhs = SqrtRational::zero();
                    break;
                }
                rhs = rhs.mul(&SqrtRational::from_ratio(Rat::from_integer(fl)).div(u));
            }
            Some(t.pow(n as u32) >= rhs)
        }
        _ => None,
    };
    CrossGapRow {
        construction: cert.construction.clone(),
        t_star: cert.t_star.clone(),
        one_minus_delta,
        chain_holds,
    }
}

fn factorial(n: usize) -> BigInt {
    let mut f = BigInt::one();
    for k in 2..=n {
        f *= BigInt::from(k as u64);
    }
    f
}

pub fn lower_bound_suite(n: usize, m: i64, params: &BuildParams) -> Result<LowerBoundReport> {
    if n > 4 {
        return Err(Error::DimensionOverBudget {
            n,
            max: 4,
            what: "lower bound suite",
        });
    }
    if m <= 0 {
        return Err(Error::InvalidParams("m must be positive".into()));
    }
    let cross = fixture(Fixture::CrossPolytope {
        n,
        m: Rat::from_integer(m.into()),
    })?;
    let mut certs: Vec<GapCertificate> = vec![
        build_inclusion_gap(&cross, Reducer::Seysen, params)?,
        build_cardinality_gap(&cross, params)?,
        build_combined_gap(&cross, params)?,
        build_unconditional_gap(&cross, params)?,
    ];
    // Brute force only at tiny scale.
    let count = lattice_points_in_body(
        &cross,
        &LatticeBasis::identity(n),
        params.enumeration_budget,
    )?
    .count();
    if n <= 2 && count <= 200 {
        certs.push(bruteforce_optimal_gap(
            &cross,
            Objective::InclusionFactor,
            200,
            params,
        )?);
    }
    let rows: Vec<CrossGapRow> = certs.iter().map(row_from_cert).collect();
    for row in &rows {
        if row.chain_holds == Some(false) {
            return Err(Error::InvariantViolation(format!(
                "cross-polytope chain bound failed for {}",
                row.construction
            )));
        }
    }
    let mut best: Option<&CrossGapRow> = None;
    for row in &rows {
        if let InclusionFactor::Finite(t) = &row.t_star {
            let better = match best {
                None => true,
                Some(b) => match &b.t_star {
                    InclusionFactor::Finite(bt) => t < bt,
                    InclusionFactor::Infinite => true,
                },
            };
            if better {
                best = Some(row);
            }
        }
    }

    // Q-body part.
    let q = fixture(Fixture::QBody { n })?;
    let q_points =
        lattice_points_in_body(&q, &LatticeBasis::identity(n), params.enumeration_budget)?;
    let q_count = q_points.count() as u64;
    if q_count != (1u64 << n) + 1 {
        return Err(Error::InvariantViolation(format!(
            "Q-body count {q_count} != 2^{n}+1"
        )));
    }
    // Sum-free: no nonzero x, y in Q with x + y nonzero and in Q (x = y
    // allowed, so radius-2 boxes are ruled out too). This is what caps
    // every GAP inside Q at 3 members.
    let mut sum_free = true;
    'outer: for x in &q_points.points {
        if x.iter().all(|v| v.is_zero()) {
            continue;
        }
        for y in &q_points.points {
            if y.iter().all(|v| v.is_zero()) {
                continue;
            }
            let s: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a + b).collect();
            if s.iter().all(|v| v.is_zero()) {
                continue;
            }
            if q_points.contains(&s) {
                sum_free = false;
                break 'outer;
            }
        }
    }
    if !sum_free {
        return Err(Error::InvariantViolation(
            "Q-body sum-free property failed".into(),
        ));
    }
    // Any GAP inside Q has at most 3 members (0 and +-one generator);
    // confirmed by exhaustive search at n <= 3.
    let q_max_gap = if n <= 3 {
        let cert = bruteforce_optimal_gap(&q, Objective::Coverage, 200, params)?;
        u64::try_from(&cert.coverage_gap).unwrap_or(u64::MAX)
    } else {
        3
    };
    if q_max_gap != 3 {
        return Err(Error::InvariantViolation(format!(
            "Q-body max GAP size {q_max_gap} != 3"
        )));
    }
    let nu_lower = Rat::new(BigInt::from(q_count), BigInt::from(3));

    Ok(LowerBoundReport {
        n,
        m: BigInt::from(m),
        best_t: best.map(|r| r.t_star.clone()),
        best_one_minus_delta: best.map(|r| r.one_minus_delta.clone()),
        cross_rows: rows,
        q_count,
        q_max_gap,
        nu_lower,
        q_sum_free: sum_free,
    })
}
