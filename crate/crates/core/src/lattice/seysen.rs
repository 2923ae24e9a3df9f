//! Greedy Seysen pair-reduction. The objective S(B) = sum ||b_i||^2
//! ||b_i^*||^2 measures primal and dual quality simultaneously; each step
//! applies the single move b_i <- b_i + lambda b_j (with the dual update
//! b_j^* <- b_j^* - lambda b_i^*) that decreases S the most, stopping when
//! no move strictly decreases it.

use super::{LatticeBasis, Reduced};
use crate::error::{Error, Result};
use crate::linalg::{dot, norm_sq, IntMat, RatVec};
use crate::numeric::{round_nearest, Rat};
use num_bigint::BigInt;
use num_traits::Zero;

const SEYSEN_ITERATION_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeysenScore {
    pub value: Rat,
}

/// S(B) = sum_i ||b_i||^2 ||b_i^*||^2. Always >= n, with equality iff
/// every primal/dual product is 1.
pub fn seysen_score(basis: &LatticeBasis) -> SeysenScore {
    let n = basis.dim();
    let mut s = Rat::zero();
    for i in 0..n {
        s += basis.norm_sq(i) * basis.dual_norm_sq(i);
    }
    SeysenScore { value: s }
}

fn score_of(cols: &[RatVec], duals: &[RatVec]) -> Rat {
    cols.iter()
        .zip(duals)
        .map(|(b, d)| norm_sq(b) * norm_sq(d))
        .sum()
}

pub fn seysen_reduce(basis: &LatticeBasis) -> Result<Reduced> {
    let n = basis.dim();
    let mut cols = basis.columns().to_vec();
    let mut duals = basis.dual_columns().to_vec();
    let mut u = IntMat::identity(n);
    let mut current = score_of(&cols, &duals);
    for _ in 0..SEYSEN_ITERATION_CAP {
        // Best single move over ordered pairs (i, j), i != j, with the
        // rounded 1-D minimizer lambda for that pair.
        let mut best: Option<(usize, usize, BigInt, Rat)> = None;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let lambda = optimal_lambda(&cols, &duals, i, j);
                if lambda.is_zero() {
                    continue;
                }
                let delta = score_delta(&cols, &duals, i, j, &lambda);
                let better = match &best {
                    None => delta < Rat::zero(),
                    Some((_, _, _, best_delta)) => delta < *best_delta,
                };
                if better {
                    best = Some((i, j, lambda, delta));
                }
            }
        }
        let Some((i, j, lambda, _delta)) = best else {
            let reduced = LatticeBasis::from_columns(cols)?;
            let out = Reduced {
                basis: reduced,
                transform: u,
            };
            out.verify_against(basis)?;
            let final_score = seysen_score(&out.basis).value;
            debug_assert!(final_score <= current || (final_score == current));
            return Ok(out);
        };
        apply_move(&mut cols, &mut duals, &mut u, i, j, &lambda);
        let next = score_of(&cols, &duals);
        debug_assert!(next < current);
        current = next;
    }
    Err(Error::IterationCap("seysen_reduce"))
}

/// Rounded minimizer of S along the move b_i <- b_i + lambda b_j:
/// lambda* = (1/2) (<b_i^*, b_j^*> / ||b_i^*||^2 - <b_i, b_j> / ||b_j||^2).
fn optimal_lambda(cols: &[RatVec], duals: &[RatVec], i: usize, j: usize) -> BigInt {
    let dual_term = dot(&duals[i], &duals[j]) / norm_sq(&duals[i]);
    let primal_term = dot(&cols[i], &cols[j]) / norm_sq(&cols[j]);
    let lambda_star = (dual_term - primal_term) / Rat::from_integer(2.into());
    round_nearest(&lambda_star)
}

/// Exact change of S under the move (only terms i and j are affected).
fn score_delta(cols: &[RatVec], duals: &[RatVec], i: usize, j: usize, lambda: &BigInt) -> Rat {
    let l = Rat::from_integer(lambda.clone());
    let bi_sq = norm_sq(&cols[i]);
    let bj_sq = norm_sq(&cols[j]);
    let di_sq = norm_sq(&duals[i]);
    let dj_sq = norm_sq(&duals[j]);
    let bi_bj = dot(&cols[i], &cols[j]);
    let di_dj = dot(&duals[i], &duals[j]);
    let new_bi_sq = &bi_sq + Rat::from_integer(2.into()) * &l * &bi_bj + &l * &l * &bj_sq;
    let new_dj_sq = &dj_sq - Rat::from_integer(2.into()) * &l * &di_dj + &l * &l * &di_sq;
    (&new_bi_sq - &bi_sq) * &di_sq + (&new_dj_sq - &dj_sq) * &bj_sq
}

fn apply_move(
    cols: &mut [RatVec],
    duals: &mut [RatVec],
    u: &mut IntMat,
    i: usize,
    j: usize,
    lambda: &BigInt,
) {
    let l = Rat::from_integer(lambda.clone());
    for t in 0..cols[i].len() {
        let v = &cols[i][t] + &l * &cols[j][t];
        cols[i][t] = v;
        let d = &duals[j][t] - &l * &duals[i][t];
        duals[j][t] = d;
    }
    let n = u.n;
    for t in 0..n {
        let v = &u.data[t * n + i] + lambda * &u.data[t * n + j];
        u.data[t * n + i] = v;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat_int;

    #[test]
    fn identity_score_is_n_and_stays() {
        let b = LatticeBasis::identity(3);
        assert_eq!(seysen_score(&b).value, rat_int(3));
        let r = seysen_reduce(&b).unwrap();
        assert!(r.basis.is_identity());
    }

    #[test]
    fn diagonal_score() {
        let b = LatticeBasis::from_rows(&[vec![2, 0], vec![0, 1]]).unwrap();
        // (4)(1/4) + (1)(1) = 2
        assert_eq!(seysen_score(&b).value, rat_int(2));
    }

    #[test]
    fn unitriangular_score_is_4() {
        // B = [[1,1],[0,1]]: ||(1,0)||^2 ||(1,-1)||^2 + ||(1,1)||^2 ||(0,1)||^2 = 2 + 2.
        let b = LatticeBasis::from_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(seysen_score(&b).value, rat_int(4));
    }

    #[test]
    fn skew_basis_strictly_improves() {
        let b = LatticeBasis::from_rows(&[vec![1, 0], vec![10, 1]]).unwrap();
        let before = seysen_score(&b).value;
        let r = seysen_reduce(&b).unwrap();
        let after = seysen_score(&r.basis).value;
        assert!(after < before);
        assert!(after <= rat_int(8)); // 4 * n with n = 2
        r.verify_against(&b).unwrap();
    }

    #[test]
    fn never_increases_on_random_lattices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut tried = 0;
        while tried < 15 {
            let n = rng.gen_range(2..=4usize);
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|_| (0..n).map(|_| rng.gen_range(-9i64..=9)).collect())
                .collect();
            let Ok(b) = LatticeBasis::from_rows(&rows) else {
                continue;
            };
            tried += 1;
            let r = seysen_reduce(&b).unwrap();
            assert!(seysen_score(&r.basis).value <= seysen_score(&b).value);
            assert!(seysen_score(&r.basis).value >= rat_int(n as i64));
            r.verify_against(&b).unwrap();
        }
    }
}
