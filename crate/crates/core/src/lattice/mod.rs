//! Lattice bases with cached exact duals, reduction algorithms
//! (LLL / HKZ / greedy Seysen), shortest vectors, and successive minima.

mod hkz;
mod lll;
mod minima;
mod seysen;
mod svp;

pub use hkz::{hkz_reduce, HKZ_MAX_DIM};
pub use lll::{lll_reduce, verify_lll, LLL_DEFAULT_DELTA};
pub use minima::{
    euclidean_successive_minima, minkowski_checks, successive_minima, MinkowskiReport,
    SuccessiveMinima, MINIMA_MAX_DIM,
};
pub use seysen::{seysen_reduce, seysen_score, SeysenScore};
pub use svp::{shortest_vector, SvpResult, SVP_MAX_DIM};

use crate::error::{Error, Result};
use crate::linalg::{dot, norm_sq, IntMat, RatMat, RatVec};
use crate::numeric::Rat;
use num_traits::{One, Signed, Zero};

/// Ordered basis (b_1, ..., b_n) of a full-rank lattice, with the polar
/// basis B^{-T} and determinant cached. Exact rational throughout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    n: usize,
    cols: Vec<RatVec>,
    dual_cols: Vec<RatVec>,
    det: Rat,
}

impl LatticeBasis {
    pub fn from_columns(cols: Vec<RatVec>) -> Result<Self> {
        let n = cols.len();
        if n == 0 || cols.iter().any(|c| c.len() != n) {
            return Err(Error::InvalidParams(
                "basis must be square and nonempty".into(),
            ));
        }
        let b = RatMat::from_columns(cols.clone());
        let det = b.det();
        if det.is_zero() {
            return Err(Error::Singular("lattice basis"));
        }
        let dual = b.inverse().expect("nonzero det").transpose();
        Ok(LatticeBasis {
            n,
            cols,
            dual_cols: dual.columns(),
            det,
        })
    }

    pub fn from_int_columns(cols: &[Vec<i64>]) -> Result<Self> {
        let rc: Vec<RatVec> = cols
            .iter()
            .map(|c| c.iter().map(|&x| Rat::from_integer(x.into())).collect())
            .collect();
        Self::from_columns(rc)
    }

    /// Row-major literal convenience: `from_rows(&[[1,1],[0,1]])` builds the
    /// matrix with those rows; basis vectors are its columns.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        let mut cols = vec![vec![Rat::zero(); n]; n];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidParams("ragged rows".into()));
            }
            for (j, &x) in row.iter().enumerate() {
                cols[j][i] = Rat::from_integer(x.into());
            }
        }
        Self::from_columns(cols)
    }

    pub fn identity(n: usize) -> Self {
        let cols = (0..n)
            .map(|i| {
                let mut v = vec![Rat::zero(); n];
                v[i] = Rat::one();
                v
            })
            .collect();
        Self::from_columns(cols).expect("identity is a basis")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn column(&self, i: usize) -> &RatVec {
        &self.cols[i]
    }

    pub fn columns(&self) -> &[RatVec] {
        &self.cols
    }

    /// Polar basis vector b_i^* (column i of B^{-T}).
    pub fn dual_column(&self, i: usize) -> &RatVec {
        &self.dual_cols[i]
    }

    pub fn dual_columns(&self) -> &[RatVec] {
        &self.dual_cols
    }

    pub fn matrix(&self) -> RatMat {
        RatMat::from_columns(self.cols.clone())
    }

    pub fn dual_matrix(&self) -> RatMat {
        RatMat::from_columns(self.dual_cols.clone())
    }

    pub fn det(&self) -> &Rat {
        &self.det
    }

    pub fn norm_sq(&self, i: usize) -> Rat {
        norm_sq(&self.cols[i])
    }

    pub fn dual_norm_sq(&self, i: usize) -> Rat {
        norm_sq(&self.dual_cols[i])
    }

    pub fn is_identity(&self) -> bool {
        self.matrix() == RatMat::identity(self.n)
    }

    /// Ambient vector of the lattice point with coefficient vector z.
    pub fn point(&self, z: &[num_bigint::BigInt]) -> RatVec {
        assert_eq!(z.len(), self.n);
        let mut out = vec![Rat::zero(); self.n];
        for (j, coeff) in z.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let c = Rat::from_integer(coeff.clone());
            for i in 0..self.n {
                out[i] += &c * &self.cols[j][i];
            }
        }
        out
    }

    /// Apply a unimodular transform on the right: columns of the result are
    /// integer combinations of the input columns (same lattice).
    pub fn transformed(&self, u: &IntMat) -> Result<LatticeBasis> {
        assert_eq!(u.n, self.n);
        let d = u.det();
        if d.clone().abs() != num_bigint::BigInt::one() {
            return Err(Error::InvariantViolation(format!(
                "transform determinant {d} is not +-1"
            )));
        }
        let b = self.matrix().mul(&u.to_rat());
        LatticeBasis::from_columns(b.columns())
    }

    /// Exact duality check <b_i^*, b_j> = delta_ij.
    pub fn verify_duality(&self) -> Result<()> {
        for i in 0..self.n {
            for j in 0..self.n {
                let got = dot(&self.dual_cols[i], &self.cols[j]);
                let want = if i == j { Rat::one() } else { Rat::zero() };
                if got != want {
                    return Err(Error::InvariantViolation(format!(
                        "duality identity fails at ({i},{j}): {got}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The polar basis matrix B^{-T}; the duality identity holds by
/// construction and is re-checkable via `verify_duality`.
pub fn dual_basis(basis: &LatticeBasis) -> RatMat {
    basis.dual_matrix()
}

/// A reduction output: the reduced basis together with the unimodular
/// transform U such that reduced = input * U.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub basis: LatticeBasis,
    pub transform: IntMat,
}

impl Reduced {
    /// Check |det U| = 1 and that the reduced matrix equals input * U.
    pub fn verify_against(&self, input: &LatticeBasis) -> Result<()> {
        let d = self.transform.det().abs();
        if d != num_bigint::BigInt::one() {
            return Err(Error::InvariantViolation(format!("|det U| = {d} != 1")));
        }
        let recomputed = input.matrix().mul(&self.transform.to_rat());
        if recomputed != self.basis.matrix() {
            return Err(Error::InvariantViolation(
                "reduced basis != input * U".into(),
            ));
        }
        if self.basis.det().clone().abs() != input.det().clone().abs() {
            return Err(Error::InvariantViolation(
                "|det| changed under reduction".into(),
            ));
        }
        self.basis.verify_duality()
    }
}

/// Exact Gram-Schmidt data of the basis columns: mu[i][j] (i > j) and the
/// squared lengths of the orthogonalized vectors.
pub(crate) struct GramSchmidt {
    pub mu: Vec<Vec<Rat>>,
    pub b_star_sq: Vec<Rat>,
}

pub(crate) fn gram_schmidt(cols: &[RatVec]) -> GramSchmidt {
    let n = cols.len();
    let mut mu = vec![vec![Rat::zero(); n]; n];
    let mut b_star: Vec<RatVec> = Vec::with_capacity(n);
    let mut b_star_sq = vec![Rat::zero(); n];
    for i in 0..n {
        let mut v = cols[i].clone();
        for j in 0..i {
            if b_star_sq[j].is_zero() {
                continue;
            }
            let m = dot(&cols[i], &b_star[j]) / &b_star_sq[j];
            for (t, comp) in v.iter_mut().enumerate() {
                *comp -= &m * &b_star[j][t];
            }
            mu[i][j] = m;
        }
        b_star_sq[i] = norm_sq(&v);
        b_star.push(v);
    }
    GramSchmidt { mu, b_star_sq }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, rat_int};

    #[test]
    fn dual_of_identity_and_diagonal() {
        let b = LatticeBasis::identity(3);
        assert_eq!(b.dual_matrix(), RatMat::identity(3));
        let d = LatticeBasis::from_rows(&[vec![2, 0], vec![0, 1]]).unwrap();
        let dual = dual_basis(&d);
        assert_eq!(dual.at(0, 0), &rat(1, 2));
        assert_eq!(dual.at(1, 1), &rat_int(1));
        d.verify_duality().unwrap();
    }

    #[test]
    fn dual_of_unitriangular() {
        // B = [[1,1],[0,1]] (rows) -> B^{-T} = [[1,0],[-1,1]].
        let b = LatticeBasis::from_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
        let dual = dual_basis(&b);
        let want = RatMat::from_rows(vec![
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(-1), rat_int(1)],
        ]);
        assert_eq!(dual, want);
        b.verify_duality().unwrap();
    }

    #[test]
    fn singular_rejected() {
        assert!(LatticeBasis::from_rows(&[vec![1, 2], vec![2, 4]]).is_err());
    }

    #[test]
    fn point_evaluation() {
        let b = LatticeBasis::from_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
        // Columns are (1,0) and (1,1); z = (2, -1) -> (1, -1).
        let z = crate::linalg::i64_vec(&[2, -1]);
        assert_eq!(b.point(&z), vec![rat_int(1), rat_int(-1)]);
    }
}
