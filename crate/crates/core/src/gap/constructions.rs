//! The four GAP constructions, each returning a fully verified certificate:
//! John-step inclusion (any reducer), successive-minima cardinality,
//! combined (HKZ on the John lattice), and the coordinate-box path for
//! unconditional bodies.

use super::{certify, gap_members, BoundCheck, Gap, GapCertificate};
use crate::enumerate::{lattice_points_in_body, PointSet};
use crate::error::{Error, Result};
use crate::geometry::{loewner_transform, ConvexBody};
use crate::lattice::{
    hkz_reduce, lll_reduce, seysen_reduce, successive_minima, LatticeBasis, Reduced,
};
use crate::linalg::{as_integer_vec, IntMat, RatVec};
use crate::numeric::{rat_floor, rat_from_f64_exact, Rat, SqrtRational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reducer {
    Lll,
    Seysen,
    Hkz,
}

impl Reducer {
    pub fn name(self) -> &'static str {
        match self {
            Reducer::Lll => "lll",
            Reducer::Seysen => "seysen",
            Reducer::Hkz => "hkz",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "lll" => Ok(Reducer::Lll),
            "seysen" => Ok(Reducer::Seysen),
            "hkz" => Ok(Reducer::Hkz),
            other => Err(Error::InvalidParams(format!("unknown reducer `{other}`"))),
        }
    }

    pub fn run(self, basis: &LatticeBasis) -> Result<Reduced> {
        match self {
            Reducer::Lll => lll_reduce(basis, crate::lattice::LLL_DEFAULT_DELTA),
            Reducer::Seysen => seysen_reduce(basis),
            Reducer::Hkz => hkz_reduce(basis),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BuildParams {
    pub eps: f64,
    pub enumeration_budget: u64,
    pub gap_budget: u64,
}

impl Default for BuildParams {
    fn default() -> Self {
        BuildParams {
            eps: 1e-6,
            enumeration_budget: crate::DEFAULT_ENUMERATION_BUDGET,
            gap_budget: crate::DEFAULT_GAP_BUDGET,
        }
    }
}

fn body_points(body: &ConvexBody, params: &BuildParams) -> Result<PointSet> {
    lattice_points_in_body(
        body,
        &LatticeBasis::identity(body.dim()),
        params.enumeration_budget,
    )
}

/// Membership witnesses for P(A, b) ⊆ K: every GAP point, when the budget
/// allows; violations are invariant errors.
fn witness_containment(body: &ConvexBody, gap: &Gap, budget: u64) -> Result<u64> {
    match gap_members(gap, budget) {
        Ok(members) => {
            for p in &members.points {
                if !body.contains_int(p)? {
                    return Err(Error::InvariantViolation(format!(
                        "gap point {p:?} escapes the body"
                    )));
                }
            }
            Ok(members.count() as u64)
        }
        Err(Error::BudgetExceeded(_)) => Ok(0),
        Err(e) => Err(e),
    }
}

/// John-step inclusion construction: sandwich K between balls, reduce the
/// transformed lattice, take u_i = 1/(n ||b_i||), and pull the GAP back to
/// Z^n through the (unimodular) reduction transform.
pub fn build_inclusion_gap(
    body: &ConvexBody,
    reducer: Reducer,
    params: &BuildParams,
) -> Result<GapCertificate> {
    let n = body.dim();
    let sandwich = loewner_transform(body, params.eps)?;
    let lattice = LatticeBasis::from_columns(sandwich.t.columns())?;
    let reduced = reducer.run(&lattice)?;
    // A = T^{-1} B' must equal the reduction transform exactly.
    let t_inv = sandwich
        .t
        .inverse()
        .ok_or(Error::Singular("sandwich transform"))?;
    let pulled = t_inv.mul(&reduced.basis.matrix());
    if pulled != reduced.transform.to_rat() {
        return Err(Error::InvariantViolation(
            "pulled-back GAP matrix is not the transform".into(),
        ));
    }
    let a = reduced.transform.clone();
    if a.det().abs() != BigInt::one() {
        return Err(Error::InvariantViolation(
            "John-step GAP matrix not unimodular".into(),
        ));
    }
    // u_i = 1 / (n ||b_i||), exact as a square root.
    let n_sq = Rat::from_integer(BigInt::from((n * n) as i64));
    let u: Vec<SqrtRational> = (0..n)
        .map(|i| SqrtRational::from_square((&n_sq * reduced.basis.norm_sq(i)).recip()))
        .collect();
    let gap = Gap::new(a, u)?;
    // Containment is forced by sum u_i ||b_i|| = 1 together with the exact
    // inner sandwich inclusion; witness members on top of that.
    let checks = witness_containment(body, &gap, params.gap_budget)?;
    let points = body_points(body, params)?;
    // Proof-chain bound: t* <= n^{3/2} (1+eps) max_i ||b_i|| ||b_i^*||.
    let eps_rat = rat_from_f64_exact(params.eps).unwrap_or_else(Rat::zero);
    let mut max_prod_sq = Rat::zero();
    for i in 0..n {
        let p = reduced.basis.norm_sq(i) * reduced.basis.dual_norm_sq(i);
        if p > max_prod_sq {
            max_prod_sq = p;
        }
    }
    let bound_sq = Rat::from_integer(BigInt::from((n * n * n) as i64))
        * (Rat::one() + &eps_rat).pow(2)
        * &max_prod_sq;
    let mut cert = certify(
        &format!("inclusion({})", reducer.name()),
        gap,
        true,
        checks,
        &points,
        Vec::new(),
    )?;
    let t = cert
        .t_star
        .finite()
        .ok_or_else(|| Error::InvariantViolation("unimodular GAP left points uncovered".into()))?
        .clone();
    cert.bounds.push(BoundCheck::new(
        "cramer_chain",
        t,
        SqrtRational::from_square(bound_sq),
    ));
    if !cert.all_bounds_hold() {
        return Err(Error::InvariantViolation(
            "inclusion proof-chain bound failed".into(),
        ));
    }
    // Mahler slack is promised (and therefore reported) only for HKZ.
    let mahler_slack_sq = if reducer == Reducer::Hkz {
        let minima = crate::lattice::euclidean_successive_minima(&reduced.basis)?;
        let mut slack: Option<Rat> = None;
        for (i, lam) in minima.iter().enumerate() {
            let allowed = Rat::new(BigInt::from(i as i64 + 4), BigInt::from(4)) * lam.square();
            let s = allowed - reduced.basis.norm_sq(i);
            if slack.as_ref().is_none_or(|cur| s < *cur) {
                slack = Some(s);
            }
        }
        slack
    } else {
        None
    };
    cert.diagnostics = Some(super::CertDiagnostics {
        reducer: reducer.name().to_string(),
        seysen_score_input: crate::lattice::seysen_score(&lattice).value,
        seysen_score_reduced: crate::lattice::seysen_score(&reduced.basis).value,
        max_polar_product_sq: max_prod_sq,
        outer_radius_sq: sandwich.outer_radius.square().clone(),
        inner_radius_sq: sandwich.inner_radius.square().clone(),
        reduced_basis: reduced.basis.clone(),
        mahler_slack_sq,
    });
    Ok(cert)
}

/// Successive-minima cardinality construction: columns are the attaining
/// vectors, b_i = 1/(n lambda_i).
pub fn build_cardinality_gap(body: &ConvexBody, params: &BuildParams) -> Result<GapCertificate> {
    let n = body.dim();
    let basis = LatticeBasis::identity(n);
    let sm = successive_minima(body, &basis, params.enumeration_budget)?;
    let cols: Vec<crate::linalg::IntVec> = sm
        .attaining
        .iter()
        .map(|x| as_integer_vec(x).expect("Z^n attaining vectors are integer"))
        .collect();
    let a = IntMat::from_columns(&cols);
    let b: Vec<Rat> = sm
        .lambdas
        .iter()
        .map(|l| (Rat::from_integer(BigInt::from(n as i64)) * l).recip())
        .collect();
    let gap = Gap::with_rational_b(a, b.clone())?;
    // Containment by the simplex argument: each column scaled by 1/lambda_i
    // lies in K, so the parallelepiped vertices do too. Verify the vertices
    // exactly (rational b makes them rational points).
    let mut checks = 0u64;
    for mask in 0..(1u64 << (n - 1)) {
        let mut x = vec![Rat::zero(); n];
        for (i, col) in sm.attaining.iter().enumerate() {
            let sign = if i > 0 && mask >> (i - 1) & 1 == 1 {
                -Rat::one()
            } else {
                Rat::one()
            };
            let coeff = &sign * &b[i];
            for t in 0..n {
                x[t] += &coeff * &col[t];
            }
        }
        if !body.contains(&x)? {
            return Err(Error::InvariantViolation(
                "cardinality GAP parallelepiped vertex escapes the body".into(),
            ));
        }
        checks += 1;
    }
    checks += witness_containment(body, &gap, params.gap_budget)?;
    let points = body_points(body, params)?;
    let mut bounds = Vec::new();
    // |K cap Z^n| < (6n)^n |P(A, b)|.
    let card = gap.cardinality();
    let six_n = Rat::from_integer(BigInt::from(6 * n as i64)).pow(n as i32);
    bounds.push(BoundCheck::strict(
        "coverage_ratio",
        SqrtRational::from_ratio(Rat::from_integer(BigInt::from(points.count() as u64))),
        SqrtRational::from_ratio(six_n * Rat::from_integer(card)),
    ));
    // Per-coordinate floor chain: 2 floor(1/(n lambda_i)) + 1 >=
    // (1/(3n)) floor(2/lambda_i + 1).
    for (i, l) in sm.lambdas.iter().enumerate() {
        let lhs = Rat::from_integer(BigInt::from(2) * rat_floor(&b[i]) + 1);
        let rhs = Rat::from_integer(rat_floor(&(Rat::from_integer(2.into()) / l + Rat::one())))
            / Rat::from_integer(BigInt::from(3 * n as i64));
        bounds.push(BoundCheck::new(
            format!("floor_chain_{}", i + 1),
            SqrtRational::from_ratio(rhs),
            SqrtRational::from_ratio(lhs),
        ));
    }
    let cert = certify("cardinality", gap, true, checks, &points, bounds)?;
    if !cert.all_bounds_hold() {
        return Err(Error::InvariantViolation(
            "cardinality bound chain failed".into(),
        ));
    }
    Ok(cert)
}

/// Combined construction: the John-step GAP with an HKZ-reduced basis; the
/// certificate additionally carries the cardinality chain through the
/// successive minima and the gap-size lower bound.
pub fn build_combined_gap(body: &ConvexBody, params: &BuildParams) -> Result<GapCertificate> {
    let n = body.dim();
    let basis = LatticeBasis::identity(n);
    let sm = successive_minima(body, &basis, params.enumeration_budget)?;
    if sm.lambda_n() > &Rat::one() {
        return Err(Error::LambdaTooLarge {
            lambda_n: crate::numeric::format_rational(sm.lambda_n()),
        });
    }
    let mut cert = build_inclusion_gap(body, Reducer::Hkz, params)?;
    cert.construction = "combined".into();
    // Recover ||b_i||^2 of the HKZ basis from the GAP radii:
    // u_i^2 = 1/(n^2 ||b_i||^2).
    let n_sq = Rat::from_integer(BigInt::from((n * n) as i64));
    let norms_sq: Vec<Rat> = cert
        .b_squares()
        .iter()
        .map(|u_sq| (u_sq * &n_sq).recip())
        .collect();
    let count = Rat::from_integer(BigInt::from(cert.coverage_body));
    let prod_lambda: Rat = sm.lambdas.iter().product();
    // |K cap Z^n| <= 6^n prod(1/lambda_i), using lambda_n <= 1.
    let six_n = Rat::from_integer(BigInt::from(6)).pow(n as i32);
    cert.bounds.push(BoundCheck::new(
        "count_vs_minima",
        SqrtRational::from_ratio(&count * &prod_lambda),
        SqrtRational::from_ratio(six_n),
    ));
    // prod ||b_i|| <= n^n (1+eps)^n prod lambda_i (Mahler + sandwich).
    let eps_rat = rat_from_f64_exact(params.eps).unwrap_or_else(Rat::zero);
    let prod_norm_sq: Rat = norms_sq.iter().product();
    let rhs = Rat::from_integer(BigInt::from(n as i64)).pow(n as i32)
        * (Rat::one() + eps_rat).pow(n as i32)
        * &prod_lambda;
    cert.bounds.push(BoundCheck::new(
        "minima_vs_norms",
        SqrtRational::from_square(prod_norm_sq.clone()),
        SqrtRational::from_ratio(rhs),
    ));
    // |P(B, u)| >= n^{-n} prod (1/||b_i||).
    let n_pow = Rat::from_integer(BigInt::from(n as i64)).pow(2 * n as i32);
    cert.bounds.push(BoundCheck::new(
        "gap_size_floor",
        SqrtRational::from_square((n_pow * prod_norm_sq).recip()),
        SqrtRational::from_ratio(Rat::from_integer(cert.coverage_gap.clone())),
    ));
    if !cert.all_bounds_hold() {
        return Err(Error::InvariantViolation(
            "combined bound chain failed".into(),
        ));
    }
    Ok(cert)
}

/// Coordinate-box construction for unconditional bodies: u_i is the largest
/// i-th coordinate over K, the GAP is P(I, u/n), and K cap Z^n sits inside
/// P(I, u), so t* <= n.
pub fn build_unconditional_gap(body: &ConvexBody, params: &BuildParams) -> Result<GapCertificate> {
    let n = body.dim();
    if !body.is_unconditional()? {
        return Err(Error::NotUnconditional);
    }
    let mut u = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[i] = Rat::one();
        let s = body.support(&e)?;
        if !s.is_positive() {
            return Err(Error::Degenerate("support not positive".into()));
        }
        u.push(s);
    }
    let n_rat = Rat::from_integer(BigInt::from(n as i64));
    let b: Vec<Rat> = u.iter().map(|ui| ui / &n_rat).collect();
    let gap = Gap::with_rational_b(IntMat::identity(n), b.clone())?;
    // Containment witnesses: the spike points +-u_i e_i and all
    // parallelepiped vertices of P_R(I, u/n).
    let mut checks = 0u64;
    for i in 0..n {
        for sign in [Rat::one(), -Rat::one()] {
            let mut x = vec![Rat::zero(); n];
            x[i] = &sign * &u[i];
            if !body.contains(&x)? {
                return Err(Error::InvariantViolation(
                    "spike point escapes the body".into(),
                ));
            }
            checks += 1;
        }
    }
    for mask in 0..(1u64 << n) {
        let x: RatVec = (0..n)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    -b[i].clone()
                } else {
                    b[i].clone()
                }
            })
            .collect();
        if !body.contains(&x)? {
            return Err(Error::InvariantViolation(
                "unconditional GAP vertex escapes the body".into(),
            ));
        }
        checks += 1;
    }
    checks += witness_containment(body, &gap, params.gap_budget)?;
    let points = body_points(body, params)?;
    let mut bounds = Vec::new();
    // t* <= n exactly.
    // (filled after certify computes t*)
    // |K cap Z^n| < (3n)^n |P(I, u/n)|.
    let card = gap.cardinality();
    let three_n = Rat::from_integer(BigInt::from(3 * n as i64)).pow(n as i32);
    bounds.push(BoundCheck::strict(
        "coverage_ratio",
        SqrtRational::from_ratio(Rat::from_integer(BigInt::from(points.count() as u64))),
        SqrtRational::from_ratio(three_n * Rat::from_integer(card)),
    ));
    // Per-coordinate: (2 u_i + 1) < 3n (2 floor(u_i / n) + 1).
    for (i, ui) in u.iter().enumerate() {
        let lhs = Rat::from_integer(2.into()) * ui + Rat::one();
        let rhs = Rat::from_integer(BigInt::from(3 * n as i64))
            * Rat::from_integer(BigInt::from(2) * rat_floor(&b[i]) + 1);
        bounds.push(BoundCheck::strict(
            format!("coordinate_chain_{}", i + 1),
            SqrtRational::from_ratio(lhs),
            SqrtRational::from_ratio(rhs),
        ));
    }
    let mut cert = certify("unconditional", gap, true, checks, &points, bounds)?;
    let t = cert
        .t_star
        .finite()
        .ok_or_else(|| Error::InvariantViolation("identity GAP left points uncovered".into()))?
        .clone();
    cert.bounds.push(BoundCheck::new(
        "t_star_le_n",
        t,
        SqrtRational::from_int(n as u64),
    ));
    if !cert.all_bounds_hold() {
        return Err(Error::InvariantViolation(
            "unconditional bound chain failed".into(),
        ));
    }
    Ok(cert)
}

impl GapCertificate {
    /// Exact squares of the GAP radii (helper for downstream chains).
    pub fn b_squares(&self) -> Vec<Rat> {
        self.gap.b.iter().map(|x| x.square().clone()).collect()
    }
}
