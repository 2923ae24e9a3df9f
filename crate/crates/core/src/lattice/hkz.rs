//! Hermite-Korkine-Zolotarev reduction by recursive projected-lattice SVP
//! enumeration. The first vector of the output is a shortest lattice
//! vector; each later vector projects to a shortest vector of the
//! projected lattice; the whole basis is size-reduced. Mahler's bound
//! ||b_i|| <= (sqrt(i+3)/2) lambda_i(B_n, Lambda) is asserted post-hoc
//! against independently computed Euclidean successive minima.

use super::minima::euclidean_successive_minima;
use super::svp::svp_cols;
use super::{gram_schmidt, LatticeBasis, Reduced};
use crate::error::{Error, Result};
use crate::linalg::{dot, IntMat, IntVec, RatVec};
use crate::numeric::{round_nearest, Rat, SqrtRational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub const HKZ_MAX_DIM: usize = 10;

pub fn hkz_reduce(basis: &LatticeBasis) -> Result<Reduced> {
    let n = basis.dim();
    if n > HKZ_MAX_DIM {
        return Err(Error::DimensionOverBudget {
            n,
            max: HKZ_MAX_DIM,
            what: "HKZ reduction",
        });
    }
    let u = hkz_transform(basis.columns().to_vec())?;
    let reduced = basis.transformed(&u)?;
    let out = Reduced {
        basis: reduced,
        transform: u,
    };
    out.verify_against(basis)?;
    verify_mahler_bound(&out.basis)?;
    Ok(out)
}

/// Unimodular W such that cols * W is HKZ reduced. Operates on arbitrary
/// independent rational vectors (the recursion hands in projections living
/// in a lower-dimensional subspace of the ambient space).
fn hkz_transform(cols: Vec<RatVec>) -> Result<IntMat> {
    let k = cols.len();
    if k <= 1 {
        return Ok(IntMat::identity(k.max(1)));
    }
    let (z, _norm_sq) = svp_cols(&cols)?;
    let g = gcd_vec(&z);
    if g != BigInt::one() {
        return Err(Error::InvariantViolation(
            "svp coefficients not primitive".into(),
        ));
    }
    let v = extend_to_unimodular(&z);
    // Apply V, project the tail orthogonally to the new first vector, and
    // recurse on the projected lattice.
    let mut work: Vec<RatVec> = apply_transform(&cols, &v);
    let b1_sq = crate::linalg::norm_sq(&work[0]);
    let mut projected: Vec<RatVec> = Vec::with_capacity(k - 1);
    for col in work.iter().skip(1) {
        let coeff = dot(col, &work[0]) / &b1_sq;
        projected.push(
            col.iter()
                .zip(&work[0])
                .map(|(x, b)| x - &coeff * b)
                .collect(),
        );
    }
    let w_tail = hkz_transform(projected)?;
    let mut total = mat_mul_int(&v, &embed_transform(&w_tail, k));
    work = apply_transform(&cols, &total);
    // Size-reduction pass (leaves the HKZ projections untouched).
    let gs = gram_schmidt(&work);
    let mut mu = gs.mu;
    for i in 1..k {
        for j in (0..i).rev() {
            let r = round_nearest(&mu[i][j]);
            if !r.is_zero() {
                let rr = Rat::from_integer(r.clone());
                for t in 0..work[i].len() {
                    let vt = &work[i][t] - &rr * &work[j][t];
                    work[i][t] = vt;
                }
                for t in 0..=j {
                    let m = if t == j {
                        &mu[i][j] - &rr
                    } else {
                        &mu[i][t] - &rr * &mu[j][t]
                    };
                    mu[i][t] = m;
                }
                col_sub_int(&mut total, i, j, &r);
            }
        }
    }
    Ok(total)
}

fn gcd_vec(z: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for v in z {
        g = g.gcd(v);
    }
    g
}

/// Unimodular V with V e_1 = z (z primitive): run the vector Euclid on a
/// copy w of z with row operations, mirroring inverse column operations on
/// V so that V w stays equal to z; terminate at w = e_1.
fn extend_to_unimodular(z: &[BigInt]) -> IntMat {
    let n = z.len();
    let mut w = z.to_vec();
    let mut v = IntMat::identity(n);
    loop {
        let mut piv: Option<usize> = None;
        for (i, x) in w.iter().enumerate() {
            if !x.is_zero() && piv.is_none_or(|p: usize| x.magnitude() < w[p].magnitude()) {
                piv = Some(i);
            }
        }
        let p = piv.expect("nonzero vector");
        let mut done = true;
        for i in 0..n {
            if i == p || w[i].is_zero() {
                continue;
            }
            done = false;
            let q = div_round(&w[i], &w[p]);
            // row op: w_i -= q w_p  =>  V col p += q * col i.
            w[i] = &w[i] - &q * &w[p];
            col_add_int(&mut v, p, i, &q);
        }
        if done {
            if w[p].is_negative() {
                for t in 0..n {
                    v.data[t * n + p] = -v.data[t * n + p].clone();
                }
                w[p] = -w[p].clone();
            }
            if p != 0 {
                w.swap(0, p);
                for t in 0..n {
                    v.data.swap(t * n, t * n + p);
                }
            }
            debug_assert_eq!(w[0], BigInt::one());
            debug_assert_eq!(v.mul_int_vec(&unit(n)), z.to_vec());
            return v;
        }
    }
}

fn unit(n: usize) -> IntVec {
    let mut e = vec![BigInt::zero(); n];
    e[0] = BigInt::one();
    e
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    round_nearest(&Rat::new(a.clone(), b.clone()))
}

/// V col_dst += q * col_src.
fn col_add_int(m: &mut IntMat, dst: usize, src: usize, q: &BigInt) {
    let n = m.n;
    for t in 0..n {
        let v = &m.data[t * n + dst] + q * &m.data[t * n + src];
        m.data[t * n + dst] = v;
    }
}

fn col_sub_int(m: &mut IntMat, dst: usize, src: usize, q: &BigInt) {
    let n = m.n;
    for t in 0..n {
        let v = &m.data[t * n + dst] - q * &m.data[t * n + src];
        m.data[t * n + dst] = v;
    }
}

fn apply_transform(cols: &[RatVec], u: &IntMat) -> Vec<RatVec> {
    let k = cols.len();
    let dim = cols[0].len();
    let mut out = vec![vec![Rat::zero(); dim]; k];
    for (j, out_col) in out.iter_mut().enumerate() {
        for (i, col) in cols.iter().enumerate() {
            let c = u.at(i, j);
            if c.is_zero() {
                continue;
            }
            let cr = Rat::from_integer(c.clone());
            for t in 0..dim {
                out_col[t] += &cr * &col[t];
            }
        }
    }
    out
}

/// diag(1, W) as a k x k integer matrix.
fn embed_transform(w: &IntMat, k: usize) -> IntMat {
    let mut m = IntMat::identity(k);
    for i in 0..w.n {
        for j in 0..w.n {
            m.data[(i + 1) * k + (j + 1)] = w.at(i, j).clone();
        }
    }
    m
}

fn mat_mul_int(a: &IntMat, b: &IntMat) -> IntMat {
    let n = a.n;
    let mut out = IntMat::identity(n);
    for i in 0..n {
        for j in 0..n {
            let mut s = BigInt::zero();
            for t in 0..n {
                s += a.at(i, t) * b.at(t, j);
            }
            out.data[i * n + j] = s;
        }
    }
    out
}

/// Mahler's bound for HKZ bases: ||b_i|| <= (sqrt(i+3)/2) lambda_i(B_n, L),
/// checked exactly on squares against independently computed Euclidean
/// successive minima.
fn verify_mahler_bound(basis: &LatticeBasis) -> Result<()> {
    let minima = euclidean_successive_minima(basis)?;
    for (i, lam) in minima.iter().enumerate() {
        let lhs = SqrtRational::from_square(basis.norm_sq(i));
        let factor_sq = Rat::new(BigInt::from(i as i64 + 1 + 3), BigInt::from(4));
        let rhs = SqrtRational::from_square(factor_sq * lam.square());
        if lhs > rhs {
            return Err(Error::InvariantViolation(format!(
                "Mahler bound fails at i={} for HKZ basis",
                i + 1
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::svp::shortest_vector;
    use crate::numeric::rat_int;

    #[test]
    fn identity_reduces_to_signed_permutation() {
        let b = LatticeBasis::identity(3);
        let r = hkz_reduce(&b).unwrap();
        for i in 0..3 {
            assert_eq!(r.basis.norm_sq(i), rat_int(1));
        }
        r.verify_against(&b).unwrap();
    }

    #[test]
    fn first_vector_is_shortest() {
        let b = LatticeBasis::from_rows(&[vec![7, 2, 0], vec![3, 5, 1], vec![1, 0, 4]]).unwrap();
        let r = hkz_reduce(&b).unwrap();
        let svp = shortest_vector(&b).unwrap();
        assert_eq!(r.basis.norm_sq(0), svp.norm_sq);
    }

    #[test]
    fn dimension_two_is_lagrange_gauss() {
        // In dim 2, HKZ == Lagrange-Gauss: b1 shortest, checked by oracle.
        let b = LatticeBasis::from_rows(&[vec![31, 59], vec![13, 25]]).unwrap();
        let r = hkz_reduce(&b).unwrap();
        let svp = shortest_vector(&b).unwrap();
        assert_eq!(r.basis.norm_sq(0), svp.norm_sq);
        r.verify_against(&b).unwrap();
    }

    #[test]
    fn extend_to_unimodular_works() {
        let z = crate::linalg::i64_vec(&[6, 10, 15]);
        // gcd = 1
        let v = extend_to_unimodular(&z);
        assert_eq!(v.det().abs(), BigInt::one());
        assert_eq!(v.mul_int_vec(&unit(3)), z);
    }

    #[test]
    fn polar_products_bounded_for_hkz() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut tried = 0;
        while tried < 10 {
            let n = rng.gen_range(2..=4usize);
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|_| (0..n).map(|_| rng.gen_range(-9i64..=9)).collect())
                .collect();
            let Ok(b) = LatticeBasis::from_rows(&rows) else {
                continue;
            };
            tried += 1;
            let r = hkz_reduce(&b).unwrap();
            // ||b_i|| ||b_i^*|| <= (3/2)^n, exact on squares.
            let bound = Rat::new(BigInt::from(9), BigInt::from(4)).pow(n as i32);
            for i in 0..n {
                let prod = r.basis.norm_sq(i) * r.basis.dual_norm_sq(i);
                assert!(prod <= bound, "polar product bound failed at i={i}");
            }
        }
    }
}
