//! Successive minima of a body with respect to a lattice, by enumerate-and-
//! filter with doubling radius, plus Minkowski's second theorem and its
//! discrete counterpart as exact checks.

use super::svp::{canonical_sign, cmp_coeffs};
use super::LatticeBasis;
use crate::enumerate::lattice_points_in_body;
use crate::error::{Error, Result};
use crate::geometry::{volume, ConvexBody};
use crate::linalg::{rank_of, IntVec, RatVec};
use crate::numeric::{rat_floor, Rat, SqrtRational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub const MINIMA_MAX_DIM: usize = 8;

/// lambda_1 <= ... <= lambda_n with attaining linearly independent lattice
/// vectors; lambdas are exact rationals of the body gauge.
#[derive(Clone, Debug)]
pub struct SuccessiveMinima {
    pub lambdas: Vec<Rat>,
    /// Attaining vectors in ambient coordinates.
    pub attaining: Vec<RatVec>,
    /// Their coefficient vectors in the given basis.
    pub attaining_coeffs: Vec<IntVec>,
}

impl SuccessiveMinima {
    pub fn lambda_n(&self) -> &Rat {
        self.lambdas.last().expect("nonempty")
    }
}

/// Exact successive minima of (K, Lambda): enumerate lattice vectors in
/// R*K for doubling R until n independent vectors appear, sort by gauge
/// norm (ties on canonical coefficient vectors), then greedily extend an
/// independent set.
pub fn successive_minima(
    body: &ConvexBody,
    basis: &LatticeBasis,
    budget: u64,
) -> Result<SuccessiveMinima> {
    let n = body.dim();
    if n > MINIMA_MAX_DIM {
        return Err(Error::DimensionOverBudget {
            n,
            max: MINIMA_MAX_DIM,
            what: "successive minima",
        });
    }
    if basis.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: basis.dim(),
        });
    }
    // Basis vectors are n independent lattice vectors, so their largest
    // gauge norm always suffices as the final radius.
    let mut r_cap = Rat::zero();
    let mut r0: Option<Rat> = None;
    for j in 0..n {
        let norm = body.body_norm(basis.column(j))?;
        if norm > r_cap {
            r_cap = norm.clone();
        }
        if r0.as_ref().is_none_or(|r| norm < *r) {
            r0 = Some(norm);
        }
    }
    let mut radius = r0.unwrap().max(Rat::one());
    loop {
        let scaled = body.scale(&radius)?;
        let points = lattice_points_in_body(&scaled, basis, budget)?;
        // Collect nonzero candidates with exact norms.
        let mut cands: Vec<(Rat, IntVec, RatVec)> = Vec::new();
        for z in &points.points {
            if z.iter().all(|v| v.is_zero()) {
                continue;
            }
            let canon = canonical_sign(z);
            let x = basis.point(&canon);
            let norm = body.body_norm(&x)?;
            cands.push((norm, canon, x));
        }
        // Deterministic order: by norm, then canonical coefficients.
        cands.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| cmp_coeffs(&a.1, &b.1)));
        cands.dedup_by(|a, b| a.1 == b.1);
        // Greedy independent extension.
        let mut lambdas = Vec::with_capacity(n);
        let mut attaining: Vec<RatVec> = Vec::with_capacity(n);
        let mut coeffs: Vec<IntVec> = Vec::with_capacity(n);
        for (norm, z, x) in &cands {
            if attaining.len() == n {
                break;
            }
            let mut trial = attaining.clone();
            trial.push(x.clone());
            if rank_of(&trial) == trial.len() {
                lambdas.push(norm.clone());
                attaining.push(x.clone());
                coeffs.push(z.clone());
            }
        }
        if attaining.len() == n {
            // Completeness: the greedy over all points of gauge <= radius is
            // conclusive only if radius >= lambda_n.
            if lambdas.last().unwrap() <= &radius {
                let sm = SuccessiveMinima {
                    lambdas,
                    attaining,
                    attaining_coeffs: coeffs,
                };
                verify_minima(body, &sm)?;
                return Ok(sm);
            }
        }
        if radius >= r_cap {
            return Err(Error::InvariantViolation(
                "successive minima search failed beyond the basis-norm cap".into(),
            ));
        }
        radius = (radius * Rat::from_integer(2.into())).min(r_cap.clone());
    }
}

fn verify_minima(body: &ConvexBody, sm: &SuccessiveMinima) -> Result<()> {
    // Monotone, attaining vectors independent, and each norm matches.
    for w in sm.lambdas.windows(2) {
        if w[0] > w[1] {
            return Err(Error::InvariantViolation("minima not sorted".into()));
        }
    }
    if rank_of(&sm.attaining) != sm.attaining.len() {
        return Err(Error::InvariantViolation(
            "attaining vectors dependent".into(),
        ));
    }
    for (l, x) in sm.lambdas.iter().zip(&sm.attaining) {
        if &body.body_norm(x)? != l {
            return Err(Error::InvariantViolation("attaining norm mismatch".into()));
        }
    }
    Ok(())
}

/// Euclidean successive minima lambda_i(B_n, Lambda) as exact square roots,
/// via the quadratic-form enumerator with doubling radius.
pub fn euclidean_successive_minima(basis: &LatticeBasis) -> Result<Vec<SqrtRational>> {
    use crate::geometry::Ellipsoid;
    use crate::linalg::RatMat;
    // The minima only depend on the lattice; reduce first so the
    // enumeration tree stays small on skew inputs.
    let reduced = super::lll::lll_reduce(basis, super::lll::LLL_DEFAULT_DELTA)?;
    let basis = &reduced.basis;
    let n = basis.dim();
    let mut cap_sq = Rat::zero();
    let mut r_sq = None::<Rat>;
    for j in 0..n {
        let nsq = basis.norm_sq(j);
        if nsq > cap_sq {
            cap_sq = nsq.clone();
        }
        if r_sq.as_ref().is_none_or(|r| nsq < *r) {
            r_sq = Some(nsq);
        }
    }
    let mut radius_sq = r_sq.unwrap();
    loop {
        // {z : ||B z||^2 <= radius_sq} via the ellipsoid enumerator.
        let mut m = RatMat::identity(n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one() / &radius_sq;
        }
        let ell = Ellipsoid::new(m, "euclidean minima")?;
        let points = crate::enumerate::lattice_points_in_ellipsoid(&ell, basis, u64::MAX)?;
        let mut cands: Vec<(Rat, IntVec, RatVec)> = Vec::new();
        for z in &points.points {
            if z.iter().all(|v| v.is_zero()) {
                continue;
            }
            let canon = canonical_sign(z);
            let x = basis.point(&canon);
            cands.push((crate::linalg::norm_sq(&x), canon, x));
        }
        cands.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| cmp_coeffs(&a.1, &b.1)));
        cands.dedup_by(|a, b| a.1 == b.1);
        let mut lambdas_sq = Vec::with_capacity(n);
        let mut attaining: Vec<RatVec> = Vec::with_capacity(n);
        for (nsq, _z, x) in &cands {
            if attaining.len() == n {
                break;
            }
            let mut trial = attaining.clone();
            trial.push(x.clone());
            if rank_of(&trial) == trial.len() {
                lambdas_sq.push(nsq.clone());
                attaining.push(x.clone());
            }
        }
        if attaining.len() == n && lambdas_sq.last().unwrap() <= &radius_sq {
            return Ok(lambdas_sq
                .into_iter()
                .map(SqrtRational::from_square)
                .collect());
        }
        if radius_sq >= cap_sq {
            return Err(Error::InvariantViolation(
                "euclidean minima search failed beyond the basis-norm cap".into(),
            ));
        }
        radius_sq = (radius_sq * Rat::from_integer(4.into())).min(cap_sq.clone());
    }
}

/// Minkowski's second theorem vol(K) <= det(L) prod 2/lambda_i and the
/// discrete bound |K cap L| <= 2^{n-1} prod floor(2/lambda_i + 1), both
/// checked exactly. Violations signal a bug, so they are reported rather
/// than raised.
#[derive(Clone, Debug)]
pub struct MinkowskiReport {
    pub volume_holds: bool,
    /// det(L) prod(2/lambda_i) - vol(K) >= 0 when the theorem holds.
    pub volume_slack: Rat,
    pub discrete_holds: bool,
    /// 2^{n-1} prod floor(2/lambda_i + 1) - |K cap L|.
    pub discrete_slack: BigInt,
}

pub fn minkowski_checks(
    body: &ConvexBody,
    basis: &LatticeBasis,
    sm: &SuccessiveMinima,
    count: u64,
) -> Result<MinkowskiReport> {
    let n = body.dim();
    let vol = volume(body)?;
    let det = basis.det().clone().abs();
    let mut rhs_vol = det;
    for l in &sm.lambdas {
        rhs_vol *= Rat::from_integer(2.into()) / l;
    }
    let volume_slack = &rhs_vol - &vol;
    let mut rhs_disc = BigInt::one() << (n - 1);
    for l in &sm.lambdas {
        rhs_disc *= rat_floor(&(Rat::from_integer(2.into()) / l + Rat::one()));
    }
    let discrete_slack = &rhs_disc - BigInt::from(count);
    Ok(MinkowskiReport {
        volume_holds: !volume_slack.is_negative(),
        volume_slack,
        discrete_holds: !discrete_slack.is_negative(),
        discrete_slack,
    })
}
