//! Exact lattice-point enumeration inside polytopes and ellipsoids — the
//! ground-truth oracle for every coverage and inclusion measurement.
//!
//! Enumeration always runs in coefficient space (integer tuples). Box
//! bounds come from the body's support values in the polar basis
//! directions; the scan prunes with partial-sum slack per inequality and
//! the surviving tuples are exact members by construction.

use crate::error::{Error, Result};
use crate::geometry::{ConvexBody, Ellipsoid};
use crate::lattice::LatticeBasis;
use crate::linalg::{dot, IntVec, RatVec};
use crate::numeric::{ceil_sub_sqrt, floor_add_sqrt, lcm_denoms, rat_floor, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Deduplicated integer coefficient vectors (ambient points when the
/// lattice is Z^n), sorted for reproducibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    pub dim: usize,
    pub points: Vec<IntVec>,
}

impl PointSet {
    fn new(dim: usize, mut points: Vec<IntVec>) -> Self {
        points.sort();
        points.dedup();
        PointSet { dim, points }
    }

    pub fn count(&self) -> usize {
        self.points.len()
    }

    pub fn contains(&self, p: &[BigInt]) -> bool {
        self.points
            .binary_search_by(|q| q.as_slice().cmp(p))
            .is_ok()
    }

    /// Exact symmetry check: z in S iff -z in S.
    pub fn is_symmetric(&self) -> bool {
        self.points.iter().all(|p| {
            let neg: IntVec = p.iter().map(|x| -x).collect();
            self.contains(&neg)
        })
    }
}

/// One scaled inequality over coefficient space: |<coeffs, z>| <= bound,
/// with integer coefficients (the original pair times the lcm of the
/// denominators of <a, b_j>).
struct CoeffConstraint {
    coeffs: IntVec,
    bound: Rat,
}

/// K cap Lambda in coefficient space. Budget counts box tuples.
pub fn lattice_points_in_body(
    body: &ConvexBody,
    basis: &LatticeBasis,
    budget: u64,
) -> Result<PointSet> {
    let n = body.dim();
    if basis.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: basis.dim(),
        });
    }
    // Coefficient bounds |z_i| <= h_K(b_i^*) via <b_i^*, x> = z_i.
    let mut limits: Vec<BigInt> = Vec::with_capacity(n);
    for i in 0..n {
        let sup = body.support(basis.dual_column(i))?;
        if sup.is_negative() {
            return Err(Error::Degenerate(
                "support negative: origin not interior".into(),
            ));
        }
        limits.push(rat_floor(&sup));
    }
    let mut tuples: u64 = 1;
    for l in &limits {
        let width = BigInt::from(2) * l + 1;
        let w_u64 = u64::try_from(&width)
            .map_err(|_| Error::BudgetExceeded("coefficient box overflows".into()))?;
        tuples = tuples.saturating_mul(w_u64);
    }
    if tuples > budget {
        return Err(Error::BudgetExceeded(format!(
            "coefficient box has {tuples} tuples > budget {budget} \
             (reduce the basis first: pruning quality depends on it)"
        )));
    }
    // Inequalities pulled back to coefficient space.
    let pairs = body.inequalities()?;
    let mut constraints = Vec::with_capacity(pairs.len());
    for p in pairs {
        let a_rat: RatVec = p.a.iter().map(|x| Rat::from_integer(x.clone())).collect();
        let gamma: RatVec = (0..n).map(|j| dot(&a_rat, basis.column(j))).collect();
        let l = lcm_denoms(&gamma);
        let coeffs: IntVec = gamma
            .iter()
            .map(|g| (g * Rat::from_integer(l.clone())).to_integer())
            .collect();
        let bound = &p.c * Rat::from_integer(l);
        constraints.push(CoeffConstraint { coeffs, bound });
    }
    let points = scan_box(&limits, &constraints, None);
    Ok(PointSet::new(n, points))
}

/// DFS over the coefficient box with per-depth slack pruning. `top_range`
/// optionally restricts the outermost coordinate (slab partitioning).
fn scan_box(
    limits: &[BigInt],
    constraints: &[CoeffConstraint],
    top_range: Option<(BigInt, BigInt)>,
) -> Vec<IntVec> {
    let n = limits.len();
    // slack[k][c] = sum_{j < k} |coeffs[c][j]| * limits[j]: the most the
    // untouched coordinates can still contribute. Coordinates are assigned
    // from the last down to the first.
    let mut slack = vec![vec![Rat::zero(); constraints.len()]; n + 1];
    for k in 1..=n {
        for (c, con) in constraints.iter().enumerate() {
            let mut s = slack[k - 1][c].clone();
            s += Rat::from_integer(con.coeffs[k - 1].clone().abs() * &limits[k - 1]);
            slack[k][c] = s;
        }
    }
    // Integer prune thresholds: partial sums are integers, so
    // |s| <= bound + slack  <=>  |s| <= floor(bound + slack).
    let mut thresholds = vec![vec![BigInt::zero(); constraints.len()]; n + 1];
    for k in 0..=n {
        for (c, con) in constraints.iter().enumerate() {
            thresholds[k][c] = rat_floor(&(&con.bound + &slack[k][c]));
        }
    }
    let mut out = Vec::new();
    let mut z = vec![BigInt::zero(); n];
    let mut partial: Vec<IntVec> = vec![vec![BigInt::zero(); constraints.len()]; n + 1];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        depth: usize, // coordinate being assigned: n-1 down to 0
        n: usize,
        limits: &[BigInt],
        constraints: &[CoeffConstraint],
        thresholds: &[Vec<BigInt>],
        z: &mut Vec<BigInt>,
        partial: &mut Vec<Vec<BigInt>>,
        out: &mut Vec<IntVec>,
        top_range: &Option<(BigInt, BigInt)>,
    ) {
        let coord = depth;
        let (lo, hi) = if depth == n - 1 {
            match top_range {
                Some((a, b)) => (a.clone(), b.clone()),
                None => (-limits[coord].clone(), limits[coord].clone()),
            }
        } else {
            (-limits[coord].clone(), limits[coord].clone())
        };
        let mut v = lo;
        while v <= hi {
            z[coord] = v.clone();
            // partial[depth] = partial[depth+1] + coeffs * v
            let mut ok = true;
            for (c, con) in constraints.iter().enumerate() {
                let s = &partial[depth + 1][c] + &con.coeffs[coord] * &v;
                if s.clone().abs() > thresholds[depth][c] {
                    ok = false;
                    partial[depth][c] = s;
                    break;
                }
                partial[depth][c] = s;
            }
            if ok {
                if depth == 0 {
                    out.push(z.clone());
                } else {
                    rec(
                        depth - 1,
                        n,
                        limits,
                        constraints,
                        thresholds,
                        z,
                        partial,
                        out,
                        top_range,
                    );
                }
            }
            v += 1;
        }
    }
    if n == 0 {
        return vec![vec![]];
    }
    rec(
        n - 1,
        n,
        limits,
        constraints,
        &thresholds,
        &mut z,
        &mut partial,
        &mut out,
        &top_range,
    );
    out
}

/// Partition-determinism variant: split the outermost coordinate range into
/// `slabs` chunks, scan each independently, and merge. The result must be
/// identical to the unpartitioned scan.
pub fn lattice_points_in_body_slabs(
    body: &ConvexBody,
    basis: &LatticeBasis,
    budget: u64,
    slabs: usize,
) -> Result<PointSet> {
    let n = body.dim();
    if slabs <= 1 || n == 0 {
        return lattice_points_in_body(body, basis, budget);
    }
    let mut limits: Vec<BigInt> = Vec::with_capacity(n);
    for i in 0..n {
        limits.push(rat_floor(&body.support(basis.dual_column(i))?));
    }
    let pairs = body.inequalities()?;
    let mut constraints = Vec::with_capacity(pairs.len());
    for p in pairs {
        let a_rat: RatVec = p.a.iter().map(|x| Rat::from_integer(x.clone())).collect();
        let gamma: RatVec = (0..n).map(|j| dot(&a_rat, basis.column(j))).collect();
        let l = lcm_denoms(&gamma);
        let coeffs: IntVec = gamma
            .iter()
            .map(|g| (g * Rat::from_integer(l.clone())).to_integer())
            .collect();
        let bound = &p.c * Rat::from_integer(l);
        constraints.push(CoeffConstraint { coeffs, bound });
    }
    let top = limits[n - 1].clone();
    let total_width = BigInt::from(2) * &top + 1;
    let slab_width = (&total_width + BigInt::from(slabs as i64 - 1)) / BigInt::from(slabs as i64);
    let mut all = Vec::new();
    let mut lo = -top.clone();
    while lo <= top {
        let upper = &lo + &slab_width - BigInt::one();
        let hi: BigInt = std::cmp::min(upper, top.clone());
        all.extend(scan_box(
            &limits,
            &constraints,
            Some((lo.clone(), hi.clone())),
        ));
        lo = hi + 1;
    }
    Ok(PointSet::new(n, all))
}

/// Exact {z : (Bz)^T M (Bz) <= 1} by recursive interval enumeration over
/// the LDL^T factorization of the Gram form (Fincke-Pohst kernel).
pub fn lattice_points_in_ellipsoid(
    ellipsoid: &Ellipsoid,
    basis: &LatticeBasis,
    budget: u64,
) -> Result<PointSet> {
    let n = ellipsoid.dim();
    if basis.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: basis.dim(),
        });
    }
    // Gram form G = B^T M B (SPD since M SPD and B invertible).
    let b = basis.matrix();
    let g = b.transpose().mul(&ellipsoid.m).mul(&b);
    let (d, mu) = ldl(&g)?;
    // q(z) = sum_i d_i (z_i + sum_{j>i} mu_ij z_j)^2 <= 1.
    let mut out = Vec::new();
    let mut z = vec![BigInt::zero(); n];
    let mut visited: u64 = 0;
    enumerate_quadratic(
        &d,
        &mu,
        n,
        Rat::one(),
        &mut z,
        n,
        &mut out,
        budget,
        &mut visited,
    )?;
    Ok(PointSet::new(n, out))
}

/// LDL^T of an SPD rational matrix: G = L^T D L with L unit upper
/// triangular stored as mu[i][j] for j > i.
fn ldl(g: &crate::linalg::RatMat) -> Result<(Vec<Rat>, Vec<Vec<Rat>>)> {
    let n = g.rows;
    let mut d = vec![Rat::zero(); n];
    let mut mu = vec![vec![Rat::zero(); n]; n];
    let mut work = g.clone();
    for i in 0..n {
        let piv = work.at(i, i).clone();
        if !piv.is_positive() {
            return Err(Error::Degenerate(
                "quadratic form not positive definite".into(),
            ));
        }
        d[i] = piv.clone();
        for j in i + 1..n {
            mu[i][j] = work.at(i, j) / &piv;
        }
        for r in i + 1..n {
            for c in i + 1..n {
                let v = work.at(r, c) - &mu[i][c] * &mu[i][r] * &piv;
                *work.at_mut(r, c) = v;
            }
        }
    }
    Ok((d, mu))
}

#[allow(clippy::too_many_arguments)]
fn enumerate_quadratic(
    d: &[Rat],
    mu: &[Vec<Rat>],
    n: usize,
    remaining: Rat,
    z: &mut Vec<BigInt>,
    depth: usize, // coordinates >= depth are fixed
    out: &mut Vec<IntVec>,
    budget: u64,
    visited: &mut u64,
) -> Result<()> {
    if depth == 0 {
        out.push(z.clone());
        return Ok(());
    }
    let i = depth - 1;
    // center = -sum_{j>i} mu_ij z_j; term = d_i (z_i - center)^2 <= remaining.
    let mut center = Rat::zero();
    for j in i + 1..n {
        if !z[j].is_zero() {
            center -= &mu[i][j] * Rat::from_integer(z[j].clone());
        }
    }
    let radius_sq = &remaining / &d[i];
    let lo = ceil_sub_sqrt(&center, &radius_sq);
    let hi = floor_add_sqrt(&center, &radius_sq);
    let mut v = lo;
    while v <= hi {
        *visited += 1;
        if *visited > budget {
            return Err(Error::BudgetExceeded("ellipsoid enumeration".into()));
        }
        let dev = Rat::from_integer(v.clone()) - &center;
        let used = &d[i] * &dev * &dev;
        if used <= remaining {
            z[i] = v.clone();
            enumerate_quadratic(d, mu, n, &remaining - &used, z, i, out, budget, visited)?;
            z[i] = BigInt::zero();
        }
        v += 1;
    }
    Ok(())
}

/// Independent oracle: full scan of the integer box [-r, r]^n with plain
/// membership tests and no pruning. Used to validate the main path.
pub fn brute_box_oracle(body: &ConvexBody, radius: i64, budget: u64) -> Result<PointSet> {
    let n = body.dim();
    if radius < 0 {
        return Err(Error::InvalidParams("radius must be nonnegative".into()));
    }
    let width = 2 * radius as u64 + 1;
    let mut tuples: u64 = 1;
    for _ in 0..n {
        tuples = tuples.saturating_mul(width);
    }
    if tuples > budget {
        return Err(Error::BudgetExceeded(format!(
            "box scan of {tuples} tuples"
        )));
    }
    let mut out = Vec::new();
    let mut z = vec![-radius; n];
    loop {
        let point: IntVec = z.iter().map(|&x| BigInt::from(x)).collect();
        if body.contains_int(&point)? {
            out.push(point);
        }
        // Odometer increment.
        let mut k = 0;
        loop {
            if k == n {
                return Ok(PointSet::new(n, out));
            }
            if z[k] < radius {
                z[k] += 1;
                break;
            }
            z[k] = -radius;
            k += 1;
        }
    }
}
