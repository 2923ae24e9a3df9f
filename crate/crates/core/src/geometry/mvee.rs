//! Approximate minimum-volume enclosing ellipsoid of a symmetric vertex set
//! (Khachiyan iteration with away steps, floating point), followed by an
//! exactly re-verified sandwich transform.
//!
//! For weights u on the simplex and X = sum u_i v_i v_i^T, the ellipsoid
//! {x : x^T X^-1 x <= 1} always lies inside conv(±v_i) (support-function
//! argument), and the termination test max_i v_i^T X^-1 v_i <= n(1+eps)
//! certifies conv(±v_i) inside the sqrt(n(1+eps)) dilate. The returned T
//! maps the inner ellipsoid onto the unit ball, is rationalized, and both
//! inclusions are then re-established by exact rational checks.

use super::ConvexBody;
use crate::error::{Error, Result};
use crate::linalg::{norm_sq, RatMat, RatVec};
use crate::numeric::{rat_from_f64_exact, rat_to_f64, rationalize, Rat, SqrtRational};
use num_traits::{One, Signed, Zero};

/// Default Khachiyan iteration cap.
pub const MVEE_ITERATION_CAP: usize = 100_000;

/// {x : x^T M x <= 1} with exact SPD matrix M.
#[derive(Clone, Debug)]
pub struct Ellipsoid {
    pub m: RatMat,
    pub provenance: String,
}

impl Ellipsoid {
    pub fn new(m: RatMat, provenance: impl Into<String>) -> Result<Self> {
        if !is_spd_exact(&m) {
            return Err(Error::Degenerate(
                "ellipsoid matrix not positive definite".into(),
            ));
        }
        Ok(Ellipsoid {
            m,
            provenance: provenance.into(),
        })
    }

    pub fn dim(&self) -> usize {
        self.m.rows
    }

    /// Exact membership x^T M x <= 1.
    pub fn contains(&self, x: &[Rat]) -> bool {
        let mx = self.m.mul_vec(x);
        crate::linalg::dot(x, &mx) <= Rat::one()
    }
}

/// Exact SPD test via rational LDL^T (all pivots positive).
pub fn is_spd_exact(m: &RatMat) -> bool {
    if m.rows != m.cols {
        return false;
    }
    let n = m.rows;
    for i in 0..n {
        for j in 0..i {
            if m.at(i, j) != m.at(j, i) {
                return false;
            }
        }
    }
    let mut a = m.clone();
    for k in 0..n {
        let piv = a.at(k, k).clone();
        if !piv.is_positive() {
            return false;
        }
        for i in k + 1..n {
            let f = a.at(i, k) / &piv;
            for j in k..n {
                let v = a.at(i, j) - &f * a.at(k, j);
                *a.at_mut(i, j) = v;
            }
        }
    }
    true
}

/// Invertible T with B_n ⊆ T*K ⊆ sqrt(n)(1+eps) B_n, both inclusions
/// verified exactly on the rationalized matrix.
#[derive(Clone, Debug)]
pub struct SandwichTransform {
    pub t: RatMat,
    pub eps: f64,
    /// Exact outer radius max ||T v|| over the vertices.
    pub outer_radius: SqrtRational,
    /// Exact inner (inscribed ball) radius of T*K; always >= 1.
    pub inner_radius: SqrtRational,
}

impl SandwichTransform {
    pub fn dim(&self) -> usize {
        self.t.rows
    }
}

struct KhachiyanOutcome {
    x: Vec<f64>,
}

fn khachiyan(points: &[Vec<f64>], n: usize, eps: f64, cap: usize) -> Result<KhachiyanOutcome> {
    let npts = points.len();
    let mut u = vec![1.0 / npts as f64; npts];
    let target = n as f64 * (1.0 + eps);
    let n_f = n as f64;
    for _ in 0..cap {
        let x = weighted_outer(points, &u, n);
        let xinv = invert_f64(&x, n)
            .ok_or_else(|| Error::Degenerate("singular moment matrix in MVEE".into()))?;
        let g: Vec<f64> = points.iter().map(|v| quad_form(&xinv, v, n)).collect();
        let (jmax, gmax) =
            g.iter().enumerate().fold(
                (0, f64::MIN),
                |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc },
            );
        if gmax <= target {
            return Ok(KhachiyanOutcome { x });
        }
        // Away-step candidate: smallest g over the current support.
        let (jmin, gmin) = g.iter().enumerate().filter(|&(i, _)| u[i] > 1e-12).fold(
            (0, f64::MAX),
            |acc, (i, &v)| if v < acc.1 { (i, v) } else { acc },
        );
        let plus_beta = (gmax - n_f) / (n_f * (gmax - 1.0));
        let away_beta = {
            // The stationary point of the step objective is negative only
            // for 1 < g < n; otherwise the best feasible away step is the
            // full drop of the weight.
            let denom = n_f * (gmin - 1.0);
            let star = if denom.abs() < 1e-300 {
                0.0
            } else {
                (gmin - n_f) / denom
            };
            let cap_b = -u[jmin] / (1.0 - u[jmin]).max(1e-300);
            if star < 0.0 {
                star.max(cap_b)
            } else {
                cap_b
            }
        };
        let prefer_away =
            (1.0 - gmin / n_f) > (gmax / n_f - 1.0) && away_beta.is_finite() && away_beta < 0.0;
        if prefer_away {
            for w in u.iter_mut() {
                *w *= 1.0 - away_beta;
            }
            u[jmin] = (u[jmin] + away_beta).max(0.0);
        } else {
            if !(plus_beta.is_finite() && plus_beta > 0.0) {
                break;
            }
            for w in u.iter_mut() {
                *w *= 1.0 - plus_beta;
            }
            u[jmax] += plus_beta;
        }
    }
    // Either the cap was hit or a step collapsed numerically; report
    // non-convergence (the caller may retry with a larger eps).
    Err(Error::NonConvergence { cap })
}

fn weighted_outer(points: &[Vec<f64>], u: &[f64], n: usize) -> Vec<f64> {
    let mut x = vec![0.0; n * n];
    for (v, &w) in points.iter().zip(u) {
        if w <= 0.0 {
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                x[i * n + j] += w * v[i] * v[j];
            }
        }
    }
    x
}

fn quad_form(m: &[f64], v: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        let mut row = 0.0;
        for j in 0..n {
            row += m[i * n + j] * v[j];
        }
        s += v[i] * row;
    }
    s
}

fn invert_f64(m: &[f64], n: usize) -> Option<Vec<f64>> {
    let mut a = vec![0.0; n * 2 * n];
    for i in 0..n {
        for j in 0..n {
            a[i * 2 * n + j] = m[i * n + j];
        }
        a[i * 2 * n + n + i] = 1.0;
    }
    for c in 0..n {
        let (p, max) = (c..n)
            .map(|r| (r, a[r * 2 * n + c].abs()))
            .fold((c, 0.0), |acc, (r, v)| if v > acc.1 { (r, v) } else { acc });
        if max < 1e-300 {
            return None;
        }
        if p != c {
            for j in 0..2 * n {
                a.swap(c * 2 * n + j, p * 2 * n + j);
            }
        }
        let piv = a[c * 2 * n + c];
        for j in 0..2 * n {
            a[c * 2 * n + j] /= piv;
        }
        for r in 0..n {
            if r != c {
                let f = a[r * 2 * n + c];
                if f != 0.0 {
                    for j in 0..2 * n {
                        a[r * 2 * n + j] -= f * a[c * 2 * n + j];
                    }
                }
            }
        }
    }
    let mut inv = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            inv[i * n + j] = a[i * 2 * n + n + j];
        }
    }
    Some(inv)
}

/// Upper-triangular Cholesky factor T with T^T T = M (for SPD M), so that
/// ||T x||^2 = x^T M x.
fn cholesky_upper(m: &[f64], n: usize) -> Option<Vec<f64>> {
    // Standard lower Cholesky L with L L^T = M, then T = L^T.
    let mut l = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = m[i * n + j];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            if i == j {
                if s <= 0.0 {
                    return None;
                }
                l[i * n + i] = s.sqrt();
            } else {
                l[i * n + j] = s / l[j * n + j];
            }
        }
    }
    let mut t = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            t[i * n + j] = l[j * n + i];
        }
    }
    Some(t)
}

fn rationalize_matrix(m: &[f64], n: usize, max_den: u64) -> Option<RatMat> {
    let mut out = RatMat::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            *out.at_mut(i, j) = rationalize(m[i * n + j], max_den)?;
        }
    }
    Some(out)
}

/// The (1+eps)-approximate Loewner ellipsoid of the vertex set, exact
/// matrix, every vertex verified inside.
pub fn mvee_ellipsoid(body: &ConvexBody, eps: f64) -> Result<Ellipsoid> {
    let (outcome, n) = run_khachiyan(body, eps)?;
    let xinv = invert_f64(&outcome.x, n)
        .ok_or_else(|| Error::Degenerate("singular moment matrix".into()))?;
    // E = {x : x^T X^-1 x <= n(1+eps)}; M = X^-1 / (n(1+eps)).
    let scale = 1.0 / (n as f64 * (1.0 + eps));
    let scaled: Vec<f64> = xinv.iter().map(|v| v * scale).collect();
    let mut m = rationalize_matrix(&scaled, n, 1_000_000_000_000)
        .ok_or_else(|| Error::Degenerate("could not rationalize ellipsoid".into()))?;
    // Symmetrize exactly.
    for i in 0..n {
        for j in 0..i {
            let avg = (m.at(i, j) + m.at(j, i)) / Rat::from_integer(2.into());
            *m.at_mut(i, j) = avg.clone();
            *m.at_mut(j, i) = avg;
        }
    }
    // Grow until every vertex is exactly inside.
    let verts = body.vertices()?;
    let mut worst = Rat::one();
    for v in verts {
        let q = crate::linalg::dot(v, &m.mul_vec(v));
        if q > worst {
            worst = q;
        }
    }
    if worst > Rat::one() {
        let mut scaled = RatMat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                *scaled.at_mut(i, j) = m.at(i, j) / &worst;
            }
        }
        m = scaled;
    }
    Ellipsoid::new(m, format!("mvee({}, eps={eps})", body.label))
}

fn run_khachiyan(body: &ConvexBody, eps: f64) -> Result<(KhachiyanOutcome, usize)> {
    if eps <= 0.0 {
        return Err(Error::InvalidParams("eps must be positive".into()));
    }
    let n = body.dim();
    let verts = body.vertices()?;
    // One representative per +- class (X is sign-blind).
    let mut reps: Vec<RatVec> = Vec::new();
    for v in verts {
        let nv: RatVec = v.iter().map(|x| -x).collect();
        if !reps.contains(&nv) {
            reps.push(v.clone());
        }
    }
    if crate::linalg::rank_of(&reps) < n {
        return Err(Error::Degenerate("vertex set is rank deficient".into()));
    }
    let pts: Vec<Vec<f64>> = reps
        .iter()
        .map(|v| v.iter().map(rat_to_f64).collect())
        .collect();
    // Iterate to eps/2, leaving headroom for rationalization error; fall
    // back to the full eps before reporting non-convergence.
    match khachiyan(&pts, n, eps / 2.0, MVEE_ITERATION_CAP) {
        Ok(outcome) => Ok((outcome, n)),
        Err(Error::NonConvergence { .. }) => {
            let outcome = khachiyan(&pts, n, eps * 0.9, MVEE_ITERATION_CAP)?;
            Ok((outcome, n))
        }
        Err(e) => Err(e),
    }
}

/// The John-step sandwich transform: B_n ⊆ T*K ⊆
/// sqrt(n)(1+eps) B_n with both inclusions re-verified exactly.
///
/// The ideal float transform already satisfies the inner inclusion; the
/// rationalization may nick it by ~1e-9 relative, so the float matrix is
/// bumped by a tiny factor before re-rounding until the exact checks pass.
/// The bumps stay far below eps, leaving the outer inclusion intact.
pub fn loewner_transform(body: &ConvexBody, eps: f64) -> Result<SandwichTransform> {
    let (outcome, n) = run_khachiyan(body, eps)?;
    let xinv = invert_f64(&outcome.x, n)
        .ok_or_else(|| Error::Degenerate("singular moment matrix".into()))?;
    let t_f = cholesky_upper(&xinv, n)
        .ok_or_else(|| Error::Degenerate("moment matrix not positive definite".into()))?;

    let attempts: [(u64, f64); 6] = [
        (1_000_000_000, 1.0),
        (1_000_000_000, 1.0 + 1e-9),
        (1_000_000_000, 1.0 + 1e-8),
        (1_000_000_000, 1.0 + 1e-7),
        (1_000_000_000_000, 1.0 + eps / 8.0),
        (1_000_000_000_000, 1.0 + eps / 4.0),
    ];
    for (max_den, bump) in attempts {
        let scaled: Vec<f64> = t_f.iter().map(|v| v * bump).collect();
        let Some(t_r) = rationalize_matrix(&scaled, n, max_den) else {
            continue;
        };
        if t_r.det().is_zero() {
            continue;
        }
        if let Some(s) = check_sandwich(body, t_r, eps)? {
            return Ok(s);
        }
    }
    // Last resort: exact binary expansion of the bumped float entries.
    let bump = 1.0 + eps / 4.0;
    let mut t_r = RatMat::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            *t_r.at_mut(i, j) = rat_from_f64_exact(t_f[i * n + j] * bump)
                .ok_or_else(|| Error::Degenerate("non-finite transform entry".into()))?;
        }
    }
    check_sandwich(body, t_r, eps)?.ok_or(Error::NonConvergence {
        cap: MVEE_ITERATION_CAP,
    })
}

/// Exact verification of both sandwich inclusions for a candidate rational
/// transform; Ok(None) means the candidate misses and another bump should
/// be tried.
fn check_sandwich(body: &ConvexBody, t: RatMat, eps: f64) -> Result<Option<SandwichTransform>> {
    let n = body.dim();
    let image = body.linear_image(&t)?;
    let pairs = image.inequalities()?;
    // Inner: inscribed ball radius min_j c_j / ||a_j|| must be >= 1.
    let mut inner_sq: Option<Rat> = None;
    for p in pairs {
        let val = &p.c * &p.c / p.norm_sq();
        if inner_sq.as_ref().is_none_or(|r| val < *r) {
            inner_sq = Some(val);
        }
    }
    let inner_sq = inner_sq.ok_or_else(|| Error::Degenerate("no inequalities".into()))?;
    if inner_sq < Rat::one() {
        return Ok(None);
    }
    // Outer: max vertex norm must be <= sqrt(n)(1+eps).
    let mut outer_sq = Rat::zero();
    for v in image.vertices()? {
        let q = norm_sq(v);
        if q > outer_sq {
            outer_sq = q;
        }
    }
    let eps_rat = rat_from_f64_exact(eps).unwrap_or_else(Rat::zero);
    let bound =
        Rat::from_integer((n as i64).into()) * (Rat::one() + &eps_rat) * (Rat::one() + &eps_rat);
    if outer_sq > bound {
        return Ok(None);
    }
    Ok(Some(SandwichTransform {
        t,
        eps,
        outer_radius: SqrtRational::from_square(outer_sq),
        inner_radius: SqrtRational::from_square(inner_sq),
    }))
}
