//! LLL reduction with exact rational Gram-Schmidt. The Gram data is
//! recomputed after structural changes; at desk dimensions the simplicity
//! is worth more than the asymptotics. The worker operates on arbitrary
//! independent columns (any ambient dimension) so projected sublattices can
//! reuse it.

use super::{gram_schmidt, LatticeBasis, Reduced};
use crate::error::{Error, Result};
use crate::linalg::{IntMat, RatVec};
use crate::numeric::{rationalize, round_nearest, Rat};
use num_bigint::BigInt;
use num_traits::Zero;

pub const LLL_DEFAULT_DELTA: f64 = 0.99;

/// Lovasz parameter as an exact rational (1/4 < delta < 1).
fn delta_to_rat(delta: f64) -> Result<Rat> {
    let d = rationalize(delta, 1_000_000)
        .ok_or_else(|| Error::InvalidParams("delta not finite".into()))?;
    if d <= Rat::new(BigInt::from(1), BigInt::from(4)) || d >= Rat::from_integer(1.into()) {
        return Err(Error::InvalidParams(format!(
            "delta must lie in (1/4, 1), got {delta}"
        )));
    }
    Ok(d)
}

pub fn lll_reduce(basis: &LatticeBasis, delta: f64) -> Result<Reduced> {
    let delta = delta_to_rat(delta)?;
    let mut cols = basis.columns().to_vec();
    let mut u = IntMat::identity(basis.dim());
    lll_cols(&mut cols, &mut u, &delta);
    let reduced = LatticeBasis::from_columns(cols)?;
    let out = Reduced {
        basis: reduced,
        transform: u,
    };
    out.verify_against(basis)?;
    Ok(out)
}

/// In-place LLL on independent columns; `u` accumulates the column
/// operations (same lattice).
pub(crate) fn lll_cols(cols: &mut [RatVec], u: &mut IntMat, delta: &Rat) {
    let k = cols.len();
    if k <= 1 {
        return;
    }
    let mut gs = gram_schmidt(cols);
    let mut i = 1usize;
    while i < k {
        for j in (0..i).rev() {
            let r = round_nearest(&gs.mu[i][j]);
            if !r.is_zero() {
                col_op_sub(cols, u, i, j, &r);
                gs = gram_schmidt(cols);
            }
        }
        let lhs = &gs.b_star_sq[i] + &gs.mu[i][i - 1] * &gs.mu[i][i - 1] * &gs.b_star_sq[i - 1];
        if lhs >= delta * &gs.b_star_sq[i - 1] {
            i += 1;
        } else {
            cols.swap(i, i - 1);
            swap_cols(u, i, i - 1);
            gs = gram_schmidt(cols);
            i = i.max(2) - 1;
        }
    }
}

/// b_k -= r * b_j, tracked in U.
fn col_op_sub(cols: &mut [RatVec], u: &mut IntMat, k: usize, j: usize, r: &BigInt) {
    let rr = Rat::from_integer(r.clone());
    for t in 0..cols[k].len() {
        let v = &cols[k][t] - &rr * &cols[j][t];
        cols[k][t] = v;
    }
    let n = u.n;
    for t in 0..n {
        let v = &u.data[t * n + k] - r * &u.data[t * n + j];
        u.data[t * n + k] = v;
    }
}

fn swap_cols(u: &mut IntMat, a: usize, b: usize) {
    let n = u.n;
    for t in 0..n {
        u.data.swap(t * n + a, t * n + b);
    }
}

/// Exact checks of the LLL postconditions (size reduction + Lovasz).
pub fn verify_lll(basis: &LatticeBasis, delta: f64) -> Result<()> {
    let delta = delta_to_rat(delta)?;
    let gs = gram_schmidt(basis.columns());
    let half = Rat::new(BigInt::from(1), BigInt::from(2));
    for i in 0..basis.dim() {
        for j in 0..i {
            if num_traits::Signed::abs(&gs.mu[i][j]) > half {
                return Err(Error::InvariantViolation(format!(
                    "size reduction fails at mu[{i}][{j}]"
                )));
            }
        }
    }
    for k in 1..basis.dim() {
        let lhs = &gs.b_star_sq[k] + &gs.mu[k][k - 1] * &gs.mu[k][k - 1] * &gs.b_star_sq[k - 1];
        if lhs < &delta * &gs.b_star_sq[k - 1] {
            return Err(Error::InvariantViolation(format!("Lovasz fails at k={k}")));
        }
    }
    Ok(())
}
