//! Shortest lattice vector by Fincke-Pohst enumeration over the
//! LLL-reduced basis, with exact rational interval bounds. Ties are broken
//! on canonical coefficient vectors so results are reproducible.

use super::{gram_schmidt, LatticeBasis};
use crate::error::{Error, Result};
use crate::linalg::{IntMat, IntVec, RatVec};
use crate::numeric::{ceil_sub_sqrt, floor_add_sqrt, rationalize, Rat};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

pub const SVP_MAX_DIM: usize = 12;

#[derive(Clone, Debug)]
pub struct SvpResult {
    /// Coefficient vector in the *input* basis, canonical sign.
    pub coeffs: IntVec,
    /// The lattice vector itself.
    pub vector: RatVec,
    /// Exact squared Euclidean norm.
    pub norm_sq: Rat,
}

/// Canonical form: first nonzero coefficient positive.
pub(crate) fn canonical_sign(z: &[BigInt]) -> IntVec {
    match z.iter().find(|x| !x.is_zero()) {
        Some(f) if f.is_negative() => z.iter().map(|x| -x).collect(),
        _ => z.to_vec(),
    }
}

/// Deterministic order on canonical coefficient vectors: absolute values
/// compared from the last coordinate backwards (so e_1 precedes e_2 and
/// both precede mixed vectors), then the signed values as a final
/// tie-break.
pub(crate) fn cmp_coeffs(a: &[BigInt], b: &[BigInt]) -> Ordering {
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match x.magnitude().cmp(y.magnitude()) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match x.cmp(y) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    Ordering::Equal
}

pub fn shortest_vector(basis: &LatticeBasis) -> Result<SvpResult> {
    let n = basis.dim();
    if n > SVP_MAX_DIM {
        return Err(Error::DimensionOverBudget {
            n,
            max: SVP_MAX_DIM,
            what: "shortest vector",
        });
    }
    let (coeffs, norm_sq) = svp_cols(basis.columns())?;
    let vector = basis.point(&coeffs);
    Ok(SvpResult {
        coeffs,
        vector,
        norm_sq,
    })
}

/// Shortest-vector coefficients for arbitrary independent columns (any
/// ambient dimension); used directly on projected sublattices in HKZ.
pub(crate) fn svp_cols(cols: &[RatVec]) -> Result<(IntVec, Rat)> {
    let k = cols.len();
    if k > SVP_MAX_DIM {
        return Err(Error::DimensionOverBudget {
            n: k,
            max: SVP_MAX_DIM,
            what: "shortest vector",
        });
    }
    // LLL preprocess so the enumeration tree stays small.
    let delta = rationalize(super::lll::LLL_DEFAULT_DELTA, 1_000).unwrap();
    let mut work = cols.to_vec();
    let mut u = IntMat::identity(k);
    super::lll::lll_cols(&mut work, &mut u, &delta);
    let gs = gram_schmidt(&work);
    for i in 0..k {
        if gs.b_star_sq[i].is_zero() {
            return Err(Error::Singular("dependent columns in svp"));
        }
    }
    let mut best_norm: Rat = (0..k)
        .map(|i| crate::linalg::norm_sq(&work[i]))
        .min()
        .unwrap();
    let mut minimizers: Vec<IntVec> = Vec::new();
    let mut z = vec![BigInt::zero(); k];
    search(
        k,
        &gs.mu,
        &gs.b_star_sq,
        &mut z,
        k,
        Rat::zero(),
        &mut best_norm,
        &mut minimizers,
    );
    // Candidates hold coefficients w.r.t. the reduced columns; translate
    // back and pick the canonical smallest.
    let mut best: Option<IntVec> = None;
    for zr in minimizers {
        let orig = u.mul_int_vec(&zr);
        let canon = canonical_sign(&orig);
        let replace = match &best {
            None => true,
            Some(cur) => cmp_coeffs(&canon, cur) == Ordering::Less,
        };
        if replace {
            best = Some(canon);
        }
    }
    let coeffs = best.ok_or(Error::Singular("svp found no vector"))?;
    Ok((coeffs, best_norm))
}

/// Depth-first search: coordinates assigned from the last basis direction
/// down; partial squared norms are exact rationals. Collects every vector
/// attaining the current best squared norm.
#[allow(clippy::too_many_arguments)]
fn search(
    n: usize,
    mu: &[Vec<Rat>],
    b_star_sq: &[Rat],
    z: &mut Vec<BigInt>,
    depth: usize,
    partial: Rat,
    best_norm: &mut Rat,
    minimizers: &mut Vec<IntVec>,
) {
    if depth == 0 {
        if z.iter().all(|v| v.is_zero()) {
            return;
        }
        match partial.cmp(best_norm) {
            Ordering::Less => {
                *best_norm = partial;
                minimizers.clear();
                minimizers.push(z.clone());
            }
            Ordering::Equal => minimizers.push(z.clone()),
            Ordering::Greater => {}
        }
        return;
    }
    let i = depth - 1;
    let mut center = Rat::zero();
    for j in i + 1..n {
        if !z[j].is_zero() {
            center -= &mu[j][i] * Rat::from_integer(z[j].clone());
        }
    }
    let slack = &*best_norm - &partial;
    if slack.is_negative() {
        return;
    }
    let radius_sq = &slack / &b_star_sq[i];
    let lo = ceil_sub_sqrt(&center, &radius_sq);
    let hi = floor_add_sqrt(&center, &radius_sq);
    let mut v = lo;
    while v <= hi {
        let dev = Rat::from_integer(v.clone()) - &center;
        let used = &b_star_sq[i] * &dev * &dev;
        let total = &partial + &used;
        if total <= *best_norm {
            z[i] = v.clone();
            search(n, mu, b_star_sq, z, i, total, best_norm, minimizers);
            z[i] = BigInt::zero();
        }
        v += 1;
    }
}
