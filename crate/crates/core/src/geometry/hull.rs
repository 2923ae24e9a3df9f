//! Exact H<->V conversion for o-symmetric polytopes at desk scale, plus an
//! exact LP membership fallback.
//!
//! V -> H: every facet hyperplane of conv(S) passes through n linearly
//! independent points of S (the hyperplane avoids the origin because the
//! origin is interior), so scanning n-subsets with a one-sided check finds
//! exactly the facet list. H -> V goes through the polar body: the facets
//! of conv({a_j / c_j}) are the vertices of K.

use super::Inequality;
use crate::error::{Error, Result};
use crate::linalg::{dot, rank_of, RatMat, RatVec};
use crate::numeric::Rat;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

/// Subset-scan budget; beyond this the caller must supply the missing
/// representation.
const MAX_SUBSETS: u128 = 2_000_000;

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    r
}

/// All facets of conv(points) as canonical symmetric pairs. The point set
/// must be closed under negation with the origin interior.
pub fn facet_enumeration(dim: usize, points: &[RatVec]) -> Result<Vec<Inequality>> {
    if dim > 6 {
        return Err(Error::DimensionOverBudget {
            n: dim,
            max: 6,
            what: "facet enumeration",
        });
    }
    if binomial(points.len(), dim) > MAX_SUBSETS {
        return Err(Error::BudgetExceeded(format!(
            "facet enumeration over {} points in dim {}",
            points.len(),
            dim
        )));
    }
    let mut found: BTreeSet<Inequality> = BTreeSet::new();
    let mut idx: Vec<usize> = (0..dim).collect();
    let n_pts = points.len();
    if n_pts < dim {
        return Err(Error::Degenerate("too few points".into()));
    }
    loop {
        // Solve <a, p_i> = 1 for the subset; singular subsets are skipped.
        let m = RatMat::from_rows(idx.iter().map(|&i| points[i].clone()).collect());
        if let Some(a) = m.solve(&vec![Rat::one(); dim]) {
            if points.iter().all(|p| dot(&a, p) <= Rat::one()) {
                // Supporting; keep only true facets (tight set of full
                // affine dimension n-1, i.e. linear rank n off the origin).
                let tight: Vec<RatVec> = points
                    .iter()
                    .filter(|p| dot(&a, p) == Rat::one())
                    .cloned()
                    .collect();
                if rank_of(&tight) == dim {
                    found.insert(Inequality::new(&a, &Rat::one())?);
                }
            }
        }
        // Next combination.
        let mut i = dim;
        loop {
            if i == 0 {
                return Ok(found.into_iter().collect());
            }
            i -= 1;
            if idx[i] != i + n_pts - dim {
                idx[i] += 1;
                for j in i + 1..dim {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Exact vertex set of {x : |<a_j, x>| <= c_j} via the polar body.
pub fn vertex_enumeration(dim: usize, pairs: &[Inequality]) -> Result<Vec<RatVec>> {
    // Polar generators a_j / c_j and their negatives.
    let mut polar: Vec<RatVec> = Vec::with_capacity(2 * pairs.len());
    for p in pairs {
        let v: RatVec =
            p.a.iter()
                .map(|x| Rat::from_integer(x.clone()) / &p.c)
                .collect();
        let nv: RatVec = v.iter().map(|x| -x).collect();
        polar.push(v);
        polar.push(nv);
    }
    let facets = facet_enumeration(dim, &polar)?;
    // Each polar facet <w, y> <= c corresponds to the vertex w / c of K.
    let mut verts = Vec::with_capacity(2 * facets.len());
    for f in facets {
        let w: RatVec =
            f.a.iter()
                .map(|x| Rat::from_integer(x.clone()) / &f.c)
                .collect();
        let nw: RatVec = w.iter().map(|x| -x).collect();
        verts.push(w);
        verts.push(nw);
    }
    verts.sort();
    verts.dedup();
    Ok(verts)
}

/// The extreme points among a generator set (exact, via LP).
pub fn extreme_points(dim: usize, points: &[RatVec]) -> Result<Vec<RatVec>> {
    let _ = dim;
    let mut out = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let others: Vec<RatVec> = points
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, q)| q.clone())
            .collect();
        if !in_convex_hull(&others, p) {
            out.push(p.clone());
        }
    }
    Ok(out)
}

/// Exact membership x in conv(points) by phase-1 simplex (Bland's rule).
pub fn in_convex_hull(points: &[RatVec], x: &[Rat]) -> bool {
    // Feasibility of: sum l_i p_i = x, sum l_i = 1, l >= 0.
    let n = x.len();
    let rows = n + 1;
    let cols = points.len();
    // Build A (rows x cols), b (rows).
    let mut a: Vec<RatVec> = Vec::with_capacity(rows);
    for r in 0..n {
        a.push(points.iter().map(|p| p[r].clone()).collect());
    }
    a.push(vec![Rat::one(); cols]);
    let mut b: RatVec = x.to_vec();
    b.push(Rat::one());
    // Make b >= 0.
    for r in 0..rows {
        if b[r].is_negative() {
            b[r] = -b[r].clone();
            for v in a[r].iter_mut() {
                *v = -v.clone();
            }
        }
    }
    // Phase-1 tableau with artificial variables; minimize their sum.
    // Columns: cols original + rows artificial.
    let total = cols + rows;
    let mut t: Vec<RatVec> = Vec::with_capacity(rows + 1);
    for r in 0..rows {
        let mut row = a[r].clone();
        for k in 0..rows {
            row.push(if k == r { Rat::one() } else { Rat::zero() });
        }
        row.push(b[r].clone());
        t.push(row);
    }
    // Objective row: sum of artificial rows (reduced costs for basis of
    // artificials), negated convention: z-row holds c_B B^-1 A - c.
    let mut z: RatVec = vec![Rat::zero(); total + 1];
    for r in 0..rows {
        for j in 0..total + 1 {
            let v = &z[j] + &t[r][j];
            z[j] = v;
        }
    }
    for k in 0..rows {
        z[cols + k] = Rat::zero();
    }
    let mut basis: Vec<usize> = (cols..cols + rows).collect();
    // Simplex iterations with Bland's rule.
    while let Some(enter) = (0..total).find(|&j| z[j].is_positive()) {
        // Ratio test, Bland tie-break by smallest basis index.
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for r in 0..rows {
            if t[r][enter].is_positive() {
                let ratio = &t[r][total] / &t[r][enter];
                let better = match &best {
                    None => true,
                    Some(b) => ratio < *b || (ratio == *b && basis[r] < basis[leave.unwrap()]),
                };
                if better {
                    best = Some(ratio);
                    leave = Some(r);
                }
            }
        }
        let Some(lr) = leave else {
            // Unbounded phase-1 cannot happen; treat as infeasible.
            return false;
        };
        // Pivot.
        let piv = t[lr][enter].clone();
        for j in 0..=total {
            t[lr][j] = &t[lr][j] / &piv;
        }
        for r in 0..rows {
            if r != lr && !t[r][enter].is_zero() {
                let f = t[r][enter].clone();
                for j in 0..=total {
                    let v = &t[r][j] - &f * &t[lr][j];
                    t[r][j] = v;
                }
            }
        }
        if !z[enter].is_zero() {
            let f = z[enter].clone();
            for j in 0..=total {
                let v = &z[j] - &f * &t[lr][j];
                z[j] = v;
            }
        }
        basis[lr] = enter;
    }
    // Feasible iff the artificial objective reached zero.
    z[total].is_zero()
}
