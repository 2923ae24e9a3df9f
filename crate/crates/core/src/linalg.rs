//! Small dense exact linear algebra over rationals and integers.
//!
//! Everything here is fraction-free or fraction-exact; there is no floating
//! point. Matrices are stored row-major; basis vectors elsewhere in the
//! crate are matrix *columns*.

use crate::numeric::Rat;
use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type RatVec = Vec<Rat>;
pub type IntVec = Vec<BigInt>;

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm_sq(a: &[Rat]) -> Rat {
    dot(a, a)
}

pub fn scale(a: &[Rat], s: &Rat) -> RatVec {
    a.iter().map(|x| x * s).collect()
}

pub fn add(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[Rat]) -> RatVec {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(a: &[Rat]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn int_to_rat_vec(a: &[BigInt]) -> RatVec {
    a.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

pub fn i64_vec(a: &[i64]) -> IntVec {
    a.iter().map(|&x| BigInt::from(x)).collect()
}

/// Dense rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl RatMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<RatVec>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c));
        RatMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(cols: Vec<RatVec>) -> Self {
        let c = cols.len();
        let r = if c == 0 { 0 } else { cols[0].len() };
        let mut m = Self::zero(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r);
            for i in 0..r {
                *m.at_mut(i, j) = col[i].clone();
            }
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> RatVec {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> RatVec {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<RatVec> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> RatMat {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let acc = out.at(i, j) + a * other.at(k, j);
                    *out.at_mut(i, j) = acc;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> RatVec {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot(&self.row(i), v)).collect()
    }

    /// Gaussian elimination with exact pivoting; returns (det, rank) and
    /// leaves an echelon copy behind the scenes.
    fn eliminate(&self) -> (Rat, usize) {
        let mut m = self.clone();
        let mut det = Rat::one();
        let mut rank = 0usize;
        let mut pivot_row = 0usize;
        for col in 0..m.cols {
            if pivot_row >= m.rows {
                break;
            }
            let Some(p) = (pivot_row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                det = Rat::zero();
                continue;
            };
            if p != pivot_row {
                for j in 0..m.cols {
                    let tmp = m.at(p, j).clone();
                    *m.at_mut(p, j) = m.at(pivot_row, j).clone();
                    *m.at_mut(pivot_row, j) = tmp;
                }
                det = -det;
            }
            let piv = m.at(pivot_row, col).clone();
            det *= &piv;
            for r in (pivot_row + 1)..m.rows {
                let factor = m.at(r, col) / &piv;
                if factor.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let v = m.at(r, j) - &factor * m.at(pivot_row, j);
                    *m.at_mut(r, j) = v;
                }
            }
            pivot_row += 1;
            rank += 1;
        }
        if rank < m.rows.min(m.cols) || m.rows != m.cols {
            det = Rat::zero();
        }
        (det, rank)
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        self.eliminate().0
    }

    pub fn rank(&self) -> usize {
        self.eliminate().1
    }

    /// Solve self * x = b exactly; None when singular or inconsistent.
    pub fn solve(&self, b: &[Rat]) -> Option<RatVec> {
        assert_eq!(self.rows, b.len());
        let n = self.rows;
        let m = self.cols;
        // Augmented elimination.
        let mut a = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = self.row(i);
            row.push(b[i].clone());
            a.push(row);
        }
        let mut piv_cols = Vec::new();
        let mut r = 0usize;
        for c in 0..m {
            let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let piv = a[r][c].clone();
            for j in c..=m {
                a[r][j] = &a[r][j] / &piv;
            }
            for i in 0..n {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in c..=m {
                        let v = &a[i][j] - &f * &a[r][j];
                        a[i][j] = v;
                    }
                }
            }
            piv_cols.push(c);
            r += 1;
            if r == n {
                break;
            }
        }
        // Inconsistent?
        for row in a.iter().skip(r) {
            if row[..m].iter().all(|x| x.is_zero()) && !row[m].is_zero() {
                return None;
            }
        }
        if piv_cols.len() < m {
            // Underdetermined: free variables set to zero.
            let mut x = vec![Rat::zero(); m];
            for (k, &c) in piv_cols.iter().enumerate() {
                x[c] = a[k][m].clone();
            }
            // Verify (free-variable choice might not satisfy dependent rows).
            let check = self.mul_vec(&x);
            if check != b.to_vec() {
                return None;
            }
            return Some(x);
        }
        let mut x = vec![Rat::zero(); m];
        for (k, &c) in piv_cols.iter().enumerate() {
            x[c] = a[k][m].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<RatMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = self.row(i);
            for j in 0..n {
                row.push(if i == j { Rat::one() } else { Rat::zero() });
            }
            a.push(row);
        }
        for c in 0..n {
            let p = (c..n).find(|&i| !a[i][c].is_zero())?;
            a.swap(c, p);
            let piv = a[c][c].clone();
            for j in 0..2 * n {
                a[c][j] = &a[c][j] / &piv;
            }
            for i in 0..n {
                if i != c && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..2 * n {
                        let v = &a[i][j] - &f * &a[c][j];
                        a[i][j] = v;
                    }
                }
            }
        }
        let mut inv = RatMat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                *inv.at_mut(i, j) = a[i][n + j].clone();
            }
        }
        Some(inv)
    }
}

/// Rank of a set of rational vectors.
pub fn rank_of(vectors: &[RatVec]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    RatMat::from_rows(vectors.to_vec()).rank()
}

/// Integer matrix helpers for GAP generator matrices and unimodular
/// transforms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat {
    pub n: usize,
    /// Row-major square storage.
    pub data: Vec<BigInt>,
}

impl IntMat {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![BigInt::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = BigInt::one();
        }
        IntMat { n, data }
    }

    pub fn from_columns(cols: &[IntVec]) -> Self {
        let n = cols.len();
        assert!(cols.iter().all(|c| c.len() == n));
        let mut m = Self::identity(n);
        for j in 0..n {
            for i in 0..n {
                m.data[i * n + j] = cols[j][i].clone();
            }
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn column(&self, j: usize) -> IntVec {
        (0..self.n).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<IntVec> {
        (0..self.n).map(|j| self.column(j)).collect()
    }

    pub fn to_rat(&self) -> RatMat {
        let mut m = RatMat::zero(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                *m.at_mut(i, j) = Rat::from_integer(self.at(i, j).clone());
            }
        }
        m
    }

    pub fn det(&self) -> BigInt {
        let d = self.to_rat().det();
        assert!(d.is_integer());
        d.to_integer()
    }

    pub fn mul_int_vec(&self, z: &[BigInt]) -> IntVec {
        assert_eq!(z.len(), self.n);
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.at(i, j) * &z[j]).sum())
            .collect()
    }

    /// Exact solve A z = x over the rationals; Some only when solvable.
    pub fn solve(&self, x: &[BigInt]) -> Option<RatVec> {
        self.to_rat().solve(&int_to_rat_vec(x))
    }
}

/// Round a rational vector to the integer vector when all entries are
/// integral; None otherwise.
pub fn as_integer_vec(v: &[Rat]) -> Option<IntVec> {
    v.iter()
        .map(|x| {
            if x.is_integer() {
                Some(x.to_integer())
            } else {
                None
            }
        })
        .collect()
}
