//! O-symmetric convex polytopes with exact rational representations.
//!
//! A body carries a vertex representation (generators closed under
//! negation), an inequality representation (symmetric pairs |<a,x>| <= c
//! stored once), or both. Membership, gauge norms, and supports are exact;
//! missing representations are derived at small dimension and cached.

pub mod fixtures;
mod hull;
mod mvee;
mod volume;

pub use fixtures::{fixture, random_unconditional, Fixture};
pub use hull::in_convex_hull;
pub use mvee::{loewner_transform, mvee_ellipsoid, Ellipsoid, SandwichTransform};
pub use volume::volume;

use crate::error::{Error, Result};
use crate::linalg::{dot, dot_int, rank_of, IntVec, RatMat, RatVec};
use crate::numeric::{gcd_all, lcm_denoms, Rat};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::sync::OnceLock;

/// One symmetric constraint pair |<a, x>| <= c, with `a` a primitive
/// integer vector and c > 0 rational.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Inequality {
    pub a: IntVec,
    pub c: Rat,
}

impl Inequality {
    /// Normalize an arbitrary rational constraint <a, x> <= c into the
    /// canonical primitive-integer symmetric pair.
    pub fn new(a: &[Rat], c: &Rat) -> Result<Self> {
        if c.is_zero() || c.is_negative() {
            return Err(Error::InvalidParams(format!(
                "inequality offset must be positive, got {c}"
            )));
        }
        let l = lcm_denoms(a);
        let ints: IntVec = a
            .iter()
            .map(|x| (x * Rat::from_integer(l.clone())).to_integer())
            .collect();
        let g = gcd_all(&ints);
        if g.is_zero() {
            return Err(Error::InvalidParams("zero inequality normal".into()));
        }
        let mut ints: IntVec = ints.iter().map(|x| x / &g).collect();
        let c = c * Rat::new(l, g);
        // Canonical sign: first nonzero component positive (the pair
        // |<a,x>| <= c is sign-symmetric, so c is unaffected).
        if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
            if first.is_negative() {
                ints = ints.iter().map(|x| -x).collect();
            }
        }
        Ok(Inequality { a: ints, c })
    }

    pub fn eval_int(&self, x: &[BigInt]) -> BigInt {
        dot_int(&self.a, x)
    }

    pub fn eval_rat(&self, x: &[Rat]) -> Rat {
        let a: RatVec = self
            .a
            .iter()
            .map(|v| Rat::from_integer(v.clone()))
            .collect();
        dot(&a, x)
    }

    pub fn norm_sq(&self) -> Rat {
        Rat::from_integer(self.a.iter().map(|v| v * v).sum::<BigInt>())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriState {
    Yes,
    No,
    Unknown,
}

#[derive(Debug)]
pub struct ConvexBody {
    dim: usize,
    vertices: OnceLock<Vec<RatVec>>,
    inequalities: OnceLock<Vec<Inequality>>,
    unconditional: OnceLock<bool>,
    /// Descriptor for reports ("cube(n=2,m=1)", "input:file.json", ...).
    pub label: String,
}

impl Clone for ConvexBody {
    fn clone(&self) -> Self {
        let b = ConvexBody {
            dim: self.dim,
            vertices: OnceLock::new(),
            inequalities: OnceLock::new(),
            unconditional: OnceLock::new(),
            label: self.label.clone(),
        };
        if let Some(v) = self.vertices.get() {
            let _ = b.vertices.set(v.clone());
        }
        if let Some(h) = self.inequalities.get() {
            let _ = b.inequalities.set(h.clone());
        }
        if let Some(u) = self.unconditional.get() {
            let _ = b.unconditional.set(*u);
        }
        b
    }
}

impl ConvexBody {
    /// Build from vertex generators. Negation closure is applied, duplicates
    /// removed, and full-dimensionality enforced.
    pub fn from_vertices(dim: usize, generators: Vec<RatVec>) -> Result<Self> {
        let verts = close_under_negation(dim, generators)?;
        if rank_of(&verts) < dim {
            return Err(Error::Degenerate(format!(
                "vertex set spans rank {} < {}",
                rank_of(&verts),
                dim
            )));
        }
        let body = ConvexBody {
            dim,
            vertices: OnceLock::new(),
            inequalities: OnceLock::new(),
            unconditional: OnceLock::new(),
            label: String::new(),
        };
        let _ = body.vertices.set(verts);
        Ok(body)
    }

    pub fn from_inequalities(dim: usize, pairs: Vec<Inequality>) -> Result<Self> {
        check_inequalities(dim, &pairs)?;
        let body = ConvexBody {
            dim,
            vertices: OnceLock::new(),
            inequalities: OnceLock::new(),
            unconditional: OnceLock::new(),
            label: String::new(),
        };
        let _ = body.inequalities.set(pairs);
        Ok(body)
    }

    /// Build with both representations; the caller asserts they agree
    /// (cross-checked cheaply here, fully by `verify_representations`).
    pub fn from_both(dim: usize, generators: Vec<RatVec>, pairs: Vec<Inequality>) -> Result<Self> {
        let verts = close_under_negation(dim, generators)?;
        check_inequalities(dim, &pairs)?;
        if rank_of(&verts) < dim {
            return Err(Error::Degenerate("vertex set not full-dimensional".into()));
        }
        for v in &verts {
            for ineq in &pairs {
                if ineq.eval_rat(v).abs() > ineq.c {
                    return Err(Error::InvalidParams(
                        "vertex violates supplied inequality".into(),
                    ));
                }
            }
        }
        let body = ConvexBody {
            dim,
            vertices: OnceLock::new(),
            inequalities: OnceLock::new(),
            unconditional: OnceLock::new(),
            label: String::new(),
        };
        let _ = body.vertices.set(verts);
        let _ = body.inequalities.set(pairs);
        Ok(body)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn has_vertices(&self) -> bool {
        self.vertices.get().is_some()
    }

    pub fn has_inequalities(&self) -> bool {
        self.inequalities.get().is_some()
    }

    /// Vertex representation, deriving it from the inequalities when absent
    /// (double-description via the polar body; n <= 6).
    pub fn vertices(&self) -> Result<&[RatVec]> {
        if let Some(v) = self.vertices.get() {
            return Ok(v);
        }
        let pairs = self
            .inequalities
            .get()
            .ok_or_else(|| Error::MissingRepresentation("no representation present".into()))?;
        let verts = hull::vertex_enumeration(self.dim, pairs)?;
        let _ = self.vertices.set(verts);
        Ok(self.vertices.get().unwrap())
    }

    /// Inequality representation, deriving it from the vertices when absent
    /// (exact facet enumeration; n <= 6).
    pub fn inequalities(&self) -> Result<&[Inequality]> {
        if let Some(h) = self.inequalities.get() {
            return Ok(h);
        }
        let verts = self
            .vertices
            .get()
            .ok_or_else(|| Error::MissingRepresentation("no representation present".into()))?;
        let pairs = hull::facet_enumeration(self.dim, verts)?;
        let _ = self.inequalities.set(pairs);
        Ok(self.inequalities.get().unwrap())
    }

    fn check_dim(&self, x_len: usize) -> Result<()> {
        if x_len != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x_len,
            });
        }
        Ok(())
    }

    /// Exact membership. Uses the inequality representation when available
    /// or derivable, falling back to exact LP feasibility over the vertices.
    pub fn contains(&self, x: &[Rat]) -> Result<bool> {
        self.check_dim(x.len())?;
        if let Ok(pairs) = self.inequalities() {
            return Ok(pairs.iter().all(|p| p.eval_rat(x).abs() <= p.c));
        }
        let verts = self.vertices()?;
        Ok(hull::in_convex_hull(verts, x))
    }

    /// Exact membership of an integer point (fast path for enumeration).
    pub fn contains_int(&self, x: &[BigInt]) -> Result<bool> {
        self.check_dim(x.len())?;
        if let Ok(pairs) = self.inequalities() {
            for p in pairs {
                let v = p.eval_int(x).abs();
                if Rat::from_integer(v) > p.c {
                    return Ok(false);
                }
            }
            return Ok(true);
        }
        let xr: RatVec = x.iter().map(|v| Rat::from_integer(v.clone())).collect();
        self.contains(&xr)
    }

    /// Gauge norm ||x||_K = max_j |<a_j, x>| / c_j; zero iff x = 0.
    pub fn body_norm(&self, x: &[Rat]) -> Result<Rat> {
        self.check_dim(x.len())?;
        let pairs = self.inequalities()?;
        let mut best = Rat::zero();
        for p in pairs {
            let v = p.eval_rat(x).abs() / &p.c;
            if v > best {
                best = v;
            }
        }
        Ok(best)
    }

    /// Support value h_K(d) = max over K of <d, x>, from the vertices.
    pub fn support(&self, dir: &[Rat]) -> Result<Rat> {
        self.check_dim(dir.len())?;
        let verts = self.vertices()?;
        let mut best: Option<Rat> = None;
        for v in verts {
            let s = dot(dir, v);
            if best.as_ref().is_none_or(|b| s > *b) {
                best = Some(s);
            }
        }
        best.ok_or_else(|| Error::Degenerate("empty vertex set".into()))
    }

    /// True iff the body is invariant under every coordinate sign flip.
    /// Exact: checks that each single-coordinate flip of each generator
    /// stays in the body (the flips generate the full group).
    pub fn is_unconditional(&self) -> Result<bool> {
        if let Some(u) = self.unconditional.get() {
            return Ok(*u);
        }
        let verts = self.vertices()?.to_vec();
        let mut ok = true;
        'outer: for v in &verts {
            for i in 0..self.dim {
                if v[i].is_zero() {
                    continue;
                }
                let mut flipped = v.clone();
                flipped[i] = -flipped[i].clone();
                if !self.contains(&flipped)? {
                    ok = false;
                    break 'outer;
                }
            }
        }
        let _ = self.unconditional.set(ok);
        Ok(ok)
    }

    /// Used by fixtures that know the answer by construction.
    pub fn set_unconditional_flag(&self, state: TriState) {
        match state {
            TriState::Yes => {
                let _ = self.unconditional.set(true);
            }
            TriState::No => {
                let _ = self.unconditional.set(false);
            }
            TriState::Unknown => {}
        }
    }

    /// Dilate by a positive rational factor.
    pub fn scale(&self, s: &Rat) -> Result<ConvexBody> {
        if s.is_zero() || s.is_negative() {
            return Err(Error::InvalidParams("scale factor must be positive".into()));
        }
        let body = ConvexBody {
            dim: self.dim,
            vertices: OnceLock::new(),
            inequalities: OnceLock::new(),
            unconditional: OnceLock::new(),
            label: format!("{}*{}", crate::numeric::format_rational(s), self.label),
        };
        if let Some(v) = self.vertices.get() {
            let _ = body.vertices.set(
                v.iter()
                    .map(|row| row.iter().map(|x| x * s).collect())
                    .collect(),
            );
        }
        if let Some(h) = self.inequalities.get() {
            let _ = body.inequalities.set(
                h.iter()
                    .map(|p| Inequality {
                        a: p.a.clone(),
                        c: &p.c * s,
                    })
                    .collect(),
            );
        }
        if let Some(u) = self.unconditional.get() {
            let _ = body.unconditional.set(*u);
        }
        Ok(body)
    }

    /// Image T*K under an invertible rational matrix, both representations
    /// transformed exactly (vertices by T, normals by T^-T).
    pub fn linear_image(&self, t: &RatMat) -> Result<ConvexBody> {
        if t.rows != self.dim || t.cols != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: t.rows,
            });
        }
        let t_inv = t.inverse().ok_or(Error::Singular("linear_image"))?;
        let t_inv_t = t_inv.transpose();
        let body = ConvexBody {
            dim: self.dim,
            vertices: OnceLock::new(),
            inequalities: OnceLock::new(),
            unconditional: OnceLock::new(),
            label: format!("T*{}", self.label),
        };
        if let Some(v) = self.vertices.get() {
            let _ = body
                .vertices
                .set(v.iter().map(|row| t.mul_vec(row)).collect());
        }
        if let Some(h) = self.inequalities.get() {
            let mut out = Vec::with_capacity(h.len());
            for p in h {
                let a_rat: RatVec = p.a.iter().map(|x| Rat::from_integer(x.clone())).collect();
                let new_a = t_inv_t.mul_vec(&a_rat);
                out.push(Inequality::new(&new_a, &p.c)?);
            }
            let _ = body.inequalities.set(out);
        }
        Ok(body)
    }

    /// Full cross-verification of the two representations (small n): the
    /// vertex set cut out by the inequalities must equal the extreme points
    /// of the stored generators. Equal vertex sets pin down equal bodies.
    pub fn verify_representations(&self) -> Result<()> {
        let verts = self
            .vertices
            .get()
            .ok_or_else(|| Error::MissingRepresentation("vertices absent".into()))?;
        let pairs = self
            .inequalities
            .get()
            .ok_or_else(|| Error::MissingRepresentation("inequalities absent".into()))?;
        let mut got = hull::vertex_enumeration(self.dim, pairs)?;
        let mut want = hull::extreme_points(self.dim, verts)?;
        got.sort();
        want.sort();
        if got != want {
            return Err(Error::InvariantViolation(
                "H and V representations describe different bodies".into(),
            ));
        }
        Ok(())
    }
}

fn close_under_negation(dim: usize, generators: Vec<RatVec>) -> Result<Vec<RatVec>> {
    if generators.is_empty() {
        return Err(Error::InvalidParams("empty vertex list".into()));
    }
    let mut out: Vec<RatVec> = Vec::new();
    for g in generators {
        if g.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: g.len(),
            });
        }
        if g.iter().all(|x| x.is_zero()) {
            continue;
        }
        if !out.contains(&g) {
            out.push(g.clone());
        }
        let ng: RatVec = g.iter().map(|x| -x).collect();
        if !out.contains(&ng) {
            out.push(ng);
        }
    }
    if out.is_empty() {
        return Err(Error::Degenerate("all generators zero".into()));
    }
    Ok(out)
}

fn check_inequalities(dim: usize, pairs: &[Inequality]) -> Result<()> {
    if pairs.is_empty() {
        return Err(Error::InvalidParams("empty inequality list".into()));
    }
    for p in pairs {
        if p.a.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.a.len(),
            });
        }
    }
    let normals: Vec<RatVec> = pairs
        .iter()
        .map(|p| p.a.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    if rank_of(&normals) < dim {
        return Err(Error::Degenerate(
            "inequality normals do not span (unbounded body)".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests;
