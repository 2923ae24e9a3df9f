//! Exact polytope volume by coning a recursive boundary triangulation from
//! the (interior) origin. Faces are walked along the inequality structure,
//! so no combinatorial subset scan is needed.

use super::ConvexBody;
use crate::error::{Error, Result};
use crate::linalg::{dot, RatMat, RatVec};
use crate::numeric::Rat;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

/// Signed constraint <a, x> = c used as a face cutter.
#[derive(Clone)]
struct Cutter {
    a: RatVec,
    c: Rat,
}

/// Exact volume of a full-dimensional o-symmetric polytope, n <= 6.
pub fn volume(body: &ConvexBody) -> Result<Rat> {
    let n = body.dim();
    if n > 6 {
        return Err(Error::DimensionOverBudget {
            n,
            max: 6,
            what: "volume",
        });
    }
    let verts = body.vertices()?.to_vec();
    let pairs = body.inequalities()?;
    let mut cutters = Vec::with_capacity(2 * pairs.len());
    for p in pairs {
        let a: RatVec = p.a.iter().map(|x| Rat::from_integer(x.clone())).collect();
        cutters.push(Cutter {
            a: a.clone(),
            c: p.c.clone(),
        });
        cutters.push(Cutter {
            a: a.iter().map(|x| -x).collect(),
            c: p.c.clone(),
        });
    }
    let mut total = Rat::zero();
    let mut factorial = Rat::from_integer(BigInt::from(1));
    for k in 1..=n {
        factorial *= Rat::from_integer(BigInt::from(k as i64));
    }
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for cut in &cutters {
        let (tight_idx, tight): (Vec<usize>, Vec<RatVec>) = verts
            .iter()
            .enumerate()
            .filter(|(_, v)| dot(&cut.a, v) == cut.c)
            .map(|(i, v)| (i, v.clone()))
            .unzip();
        if tight.len() < n || affine_dim(&tight) != n - 1 {
            continue; // supporting but not a facet
        }
        if !seen.insert(tight_idx) {
            continue; // duplicate facet reached through a redundant pair
        }
        for simplex in triangulate_face(&tight, &cutters, n - 1) {
            let m = RatMat::from_rows(simplex);
            total += m.det().abs();
        }
    }
    Ok(total / factorial)
}

fn affine_dim(points: &[RatVec]) -> usize {
    if points.is_empty() {
        return 0;
    }
    let base = &points[0];
    let diffs: Vec<RatVec> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(x, y)| x - y).collect())
        .collect();
    crate::linalg::rank_of(&diffs)
}

/// Triangulate a d-dimensional face given its vertex set, fanning from the
/// lexicographically smallest vertex over the face's own facets.
fn triangulate_face(verts: &[RatVec], cutters: &[Cutter], d: usize) -> Vec<Vec<RatVec>> {
    if d == 0 {
        return vec![vec![verts[0].clone()]];
    }
    if d == 1 {
        // A segment: its endpoints are the lexicographic extremes.
        let mut sorted = verts.to_vec();
        sorted.sort();
        return vec![vec![sorted[0].clone(), sorted[sorted.len() - 1].clone()]];
    }
    let apex = verts.iter().min().unwrap().clone();
    let mut out = Vec::new();
    let mut seen: BTreeSet<Vec<RatVec>> = BTreeSet::new();
    for cut in cutters {
        if dot(&cut.a, &apex) == cut.c {
            continue; // fan only over facets avoiding the apex
        }
        let sub: Vec<RatVec> = verts
            .iter()
            .filter(|v| dot(&cut.a, v) == cut.c)
            .cloned()
            .collect();
        if sub.len() < d || affine_dim(&sub) != d - 1 {
            continue;
        }
        let mut key = sub.clone();
        key.sort();
        if !seen.insert(key) {
            continue;
        }
        for mut simplex in triangulate_face(&sub, cutters, d - 1) {
            simplex.push(apex.clone());
            out.push(simplex);
        }
    }
    out
}
