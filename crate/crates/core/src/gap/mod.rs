//! Generalized arithmetic progressions P(A, b) = {A z : z in Z^n, |z_i| <=
//! b_i}: the data type, exact membership/cardinality, and the minimal
//! inclusion factor t* — the smallest t with a given point set inside
//! P(A, t b).

mod bruteforce;
mod constructions;
mod lower_bounds;

pub use bruteforce::{
    bruteforce_optimal_gap, matrices_equivalent_up_to_signed_permutation, Objective,
};
pub use constructions::{
    build_cardinality_gap, build_combined_gap, build_inclusion_gap, build_unconditional_gap,
    BuildParams, Reducer,
};
pub use lower_bounds::{lower_bound_suite, LowerBoundReport};

use crate::enumerate::PointSet;
use crate::error::{Error, Result};
use crate::linalg::{as_integer_vec, IntMat, IntVec};
use crate::numeric::{Rat, SqrtRational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A symmetric GAP: integer generator matrix A (columns are the
/// generators, det != 0) and positive real box radii b. Irrational radii
/// (from the John-step constructions) are carried as exact square roots.
#[derive(Clone, Debug)]
pub struct Gap {
    pub matrix: IntMat,
    pub b: Vec<SqrtRational>,
}

impl Gap {
    pub fn new(matrix: IntMat, b: Vec<SqrtRational>) -> Result<Self> {
        if matrix.n != b.len() {
            return Err(Error::DimensionMismatch {
                expected: matrix.n,
                got: b.len(),
            });
        }
        if matrix.det().is_zero() {
            return Err(Error::Singular("gap generator matrix"));
        }
        if b.iter().any(|x| x.is_zero()) {
            return Err(Error::InvalidParams("b entries must be positive".into()));
        }
        Ok(Gap { matrix, b })
    }

    pub fn with_rational_b(matrix: IntMat, b: Vec<Rat>) -> Result<Self> {
        if b.iter().any(|x| !x.is_positive()) {
            return Err(Error::InvalidParams("b entries must be positive".into()));
        }
        let sq = b.into_iter().map(SqrtRational::from_ratio).collect();
        Self::new(matrix, sq)
    }

    pub fn dim(&self) -> usize {
        self.matrix.n
    }

    /// |P(A, b)| = prod (2 floor(b_i) + 1), exact.
    pub fn cardinality(&self) -> BigInt {
        let mut c = BigInt::one();
        for bi in &self.b {
            c *= BigInt::from(2) * bi.floor() + 1;
        }
        c
    }

    pub fn is_unimodular(&self) -> bool {
        self.matrix.det().abs() == BigInt::one()
    }

    /// Scale every radius by a positive rational (the pull-back of the
    /// unimodularize preprocessing divides by l).
    pub fn scale_b(&self, s: &Rat) -> Result<Gap> {
        if !s.is_positive() {
            return Err(Error::InvalidParams("scale must be positive".into()));
        }
        let b = self
            .b
            .iter()
            .map(|x| x.mul(&SqrtRational::from_ratio(s.clone())))
            .collect();
        Gap::new(self.matrix.clone(), b)
    }
}

/// The exact point set of the GAP. The closed-form cardinality is computed
/// first and checked against the budget, then asserted against the
/// materialized set.
pub fn gap_members(gap: &Gap, budget: u64) -> Result<PointSet> {
    let card = gap.cardinality();
    let as_u64 = u64::try_from(&card)
        .map_err(|_| Error::BudgetExceeded("gap cardinality overflows".into()))?;
    if as_u64 > budget {
        return Err(Error::BudgetExceeded(format!(
            "gap has {card} members > budget {budget}"
        )));
    }
    let n = gap.dim();
    let floors: Vec<BigInt> = gap.b.iter().map(|x| x.floor()).collect();
    let mut out = Vec::with_capacity(as_u64 as usize);
    let mut z: Vec<BigInt> = floors.iter().map(|f| -f.clone()).collect();
    loop {
        out.push(gap.matrix.mul_int_vec(&z));
        let mut k = 0;
        loop {
            if k == n {
                let set = PointSet {
                    dim: n,
                    points: {
                        let mut p = out;
                        p.sort();
                        p.dedup();
                        p
                    },
                };
                if BigInt::from(set.points.len()) != card {
                    return Err(Error::InvariantViolation(
                        "gap member count disagrees with the closed formula".into(),
                    ));
                }
                return Ok(set);
            }
            if z[k] < floors[k] {
                z[k] += 1;
                break;
            }
            z[k] = -floors[k].clone();
            k += 1;
        }
    }
}

/// Smallest t with `points` inside P(A, t b), or Infinite with the list of
/// points outside the sublattice A Z^n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InclusionFactor {
    Finite(SqrtRational),
    Infinite,
}

impl InclusionFactor {
    pub fn is_finite(&self) -> bool {
        matches!(self, InclusionFactor::Finite(_))
    }

    pub fn finite(&self) -> Option<&SqrtRational> {
        match self {
            InclusionFactor::Finite(v) => Some(v),
            InclusionFactor::Infinite => None,
        }
    }

    pub fn le(&self, other: &SqrtRational) -> bool {
        match self {
            InclusionFactor::Finite(v) => v <= other,
            InclusionFactor::Infinite => false,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            InclusionFactor::Finite(v) => v.to_f64(),
            InclusionFactor::Infinite => f64::INFINITY,
        }
    }
}

impl PartialOrd for InclusionFactor {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for InclusionFactor {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use InclusionFactor::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinite) => std::cmp::Ordering::Less,
            (Infinite, Finite(_)) => std::cmp::Ordering::Greater,
            (Infinite, Infinite) => std::cmp::Ordering::Equal,
        }
    }
}

/// For each point solve A z = x exactly; non-integer solutions make the
/// point uncoverable (t* = infinity). Otherwise t* = max over points of
/// max_i |z_i| / b_i, and 1 for an empty point set.
pub fn minimal_inclusion_factor(
    gap: &Gap,
    points: &PointSet,
) -> Result<(InclusionFactor, Vec<IntVec>)> {
    if points.points.is_empty() {
        return Ok((InclusionFactor::Finite(SqrtRational::one()), Vec::new()));
    }
    let mut uncoverable = Vec::new();
    let mut t_star = SqrtRational::zero();
    for x in &points.points {
        let Some(z_rat) = gap.matrix.solve(x) else {
            uncoverable.push(x.clone());
            continue;
        };
        let Some(z) = as_integer_vec(&z_rat) else {
            uncoverable.push(x.clone());
            continue;
        };
        for (zi, bi) in z.iter().zip(&gap.b) {
            if zi.is_zero() {
                continue;
            }
            let ratio = SqrtRational::from_ratio(Rat::from_integer(zi.clone().abs())).div(bi);
            if ratio > t_star {
                t_star = ratio;
            }
        }
    }
    if uncoverable.is_empty() {
        Ok((InclusionFactor::Finite(t_star), Vec::new()))
    } else {
        Ok((InclusionFactor::Infinite, uncoverable))
    }
}

/// One named exact inequality in a certificate: measured <= bound (or
/// strictly < when `strict`).
#[derive(Clone, Debug)]
pub struct BoundCheck {
    pub name: String,
    pub measured: SqrtRational,
    pub bound: SqrtRational,
    pub strict: bool,
    pub holds: bool,
}

impl BoundCheck {
    pub fn new(name: impl Into<String>, measured: SqrtRational, bound: SqrtRational) -> Self {
        let holds = measured <= bound;
        BoundCheck {
            name: name.into(),
            measured,
            bound,
            strict: false,
            holds,
        }
    }

    pub fn strict(name: impl Into<String>, measured: SqrtRational, bound: SqrtRational) -> Self {
        let holds = measured < bound;
        BoundCheck {
            name: name.into(),
            measured,
            bound,
            strict: true,
            holds,
        }
    }
}

/// Reduction-quality numbers recorded by the John-step constructions.
#[derive(Clone, Debug)]
pub struct CertDiagnostics {
    pub reducer: String,
    pub seysen_score_input: Rat,
    pub seysen_score_reduced: Rat,
    pub max_polar_product_sq: Rat,
    pub outer_radius_sq: Rat,
    pub inner_radius_sq: Rat,
    /// The reduced basis of the transformed lattice (exact).
    pub reduced_basis: crate::lattice::LatticeBasis,
    /// min_i ((i+3)/4 lambda_i(B_n, L)^2 - ||b_i||^2) for HKZ bases; None
    /// for the other reducers, where Mahler's bound is not promised.
    pub mahler_slack_sq: Option<Rat>,
}

/// A constructed GAP together with everything the construction promises:
/// exact containment, the measured inclusion factor against the body's
/// lattice points, coverage counts, and the proof-chain bound checks.
#[derive(Clone, Debug)]
pub struct GapCertificate {
    pub construction: String,
    pub gap: Gap,
    pub contained_in_k: bool,
    /// Number of exact membership witnesses checked for containment.
    pub containment_checks: u64,
    pub t_star: InclusionFactor,
    pub uncoverable: Vec<IntVec>,
    /// |K cap Z^n|.
    pub coverage_body: u64,
    /// |P(A, b)|.
    pub coverage_gap: BigInt,
    pub bounds: Vec<BoundCheck>,
    pub diagnostics: Option<CertDiagnostics>,
}

impl GapCertificate {
    pub fn coverage_ratio(&self) -> Rat {
        Rat::new(BigInt::from(self.coverage_body), self.coverage_gap.clone())
    }

    pub fn all_bounds_hold(&self) -> bool {
        self.bounds.iter().all(|b| b.holds)
    }

    pub fn bound(&self, name: &str) -> Option<&BoundCheck> {
        self.bounds.iter().find(|b| b.name == name)
    }
}

/// Shared tail of every construction: measure t*, count coverage, and
/// verify that a finite factor over a basis-bearing point set forces
/// |det A| = 1.
pub(crate) fn certify(
    construction: &str,
    gap: Gap,
    contained: bool,
    checks: u64,
    points: &PointSet,
    bounds: Vec<BoundCheck>,
) -> Result<GapCertificate> {
    let (t_star, uncoverable) = minimal_inclusion_factor(&gap, points)?;
    if t_star.is_finite() && contains_standard_basis(points) && !gap.is_unimodular() {
        return Err(Error::InvariantViolation(
            "finite inclusion factor over a basis-bearing point set with |det A| != 1".into(),
        ));
    }
    Ok(GapCertificate {
        construction: construction.to_string(),
        gap: gap.clone(),
        contained_in_k: contained,
        containment_checks: checks,
        t_star,
        uncoverable,
        coverage_body: points.count() as u64,
        coverage_gap: gap.cardinality(),
        bounds,
        diagnostics: None,
    })
}

/// Pull a certificate built on l*K back to K: divide the radii by l and
/// re-measure everything against K's own lattice points. The original
/// bound table belongs to the scaled body and is dropped; containment is
/// re-witnessed exactly.
pub fn certify_pullback(
    cert: GapCertificate,
    l: &Rat,
    body: &crate::geometry::ConvexBody,
    points: &PointSet,
) -> Result<GapCertificate> {
    let gap = cert.gap.scale_b(&l.recip())?;
    let mut checks = 0u64;
    if let Ok(members) = gap_members(&gap, crate::DEFAULT_GAP_BUDGET) {
        for p in &members.points {
            if !body.contains_int(p)? {
                return Err(Error::InvariantViolation(
                    "pulled-back GAP point escapes the body".into(),
                ));
            }
            checks += 1;
        }
    }
    let mut out = certify(
        &format!("{} [unimodularized l={}]", cert.construction, l),
        gap,
        true,
        checks,
        points,
        Vec::new(),
    )?;
    out.diagnostics = cert.diagnostics;
    Ok(out)
}

/// True iff the point set contains the standard basis (a sufficient
/// witness that K cap Z^n contains a basis of Z^n, which forces any
/// finite-factor GAP matrix to be unimodular).
pub fn contains_standard_basis(points: &PointSet) -> bool {
    let n = points.dim;
    (0..n).all(|i| {
        let mut e = vec![BigInt::zero(); n];
        e[i] = BigInt::one();
        points.contains(&e)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::i64_vec;
    use crate::numeric::{rat, rat_int};

    fn int_mat(cols: &[&[i64]]) -> IntMat {
        IntMat::from_columns(&cols.iter().map(|c| i64_vec(c)).collect::<Vec<_>>())
    }

    #[test]
    fn identity_gap_members() {
        let g = Gap::with_rational_b(int_mat(&[&[1, 0], &[0, 1]]), vec![rat_int(1); 2]).unwrap();
        let m = gap_members(&g, 1000).unwrap();
        assert_eq!(m.count(), 9);
        assert_eq!(g.cardinality(), BigInt::from(9));
    }

    #[test]
    fn hexagon_optimal_gap_members() {
        // A = [(1,0), (-2,1)], b = (1,1): the 9 points include (-3,1) and
        // (3,-1).
        let g = Gap::with_rational_b(int_mat(&[&[1, 0], &[-2, 1]]), vec![rat_int(1); 2]).unwrap();
        let m = gap_members(&g, 1000).unwrap();
        assert_eq!(m.count(), 9);
        assert!(m.contains(&i64_vec(&[-3, 1])));
        assert!(m.contains(&i64_vec(&[3, -1])));
    }

    #[test]
    fn fractional_b_floors() {
        // b = (0.9, 5) -> 1 * 11 members on a line.
        let g = Gap::with_rational_b(int_mat(&[&[1, 0], &[0, 1]]), vec![rat(9, 10), rat_int(5)])
            .unwrap();
        assert_eq!(g.cardinality(), BigInt::from(11));
        assert_eq!(gap_members(&g, 1000).unwrap().count(), 11);
    }

    #[test]
    fn members_budget() {
        let g = Gap::with_rational_b(int_mat(&[&[1, 0], &[0, 1]]), vec![rat_int(100); 2]).unwrap();
        assert!(matches!(
            gap_members(&g, 1000),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn inclusion_factor_identity_cube() {
        let g = Gap::with_rational_b(int_mat(&[&[1, 0], &[0, 1]]), vec![rat_int(1); 2]).unwrap();
        let pts = gap_members(&g, 1000).unwrap();
        let (t, unc) = minimal_inclusion_factor(&g, &pts).unwrap();
        assert!(unc.is_empty());
        assert_eq!(t, InclusionFactor::Finite(SqrtRational::one()));
    }

    #[test]
    fn inclusion_factor_hexagon_examples() {
        use crate::geometry::{fixture, Fixture};
        let hex = fixture(Fixture::Fig1Hexagon { n: 2 }).unwrap();
        let pts = crate::enumerate::lattice_points_in_body(
            &hex,
            &crate::lattice::LatticeBasis::identity(2),
            10_000,
        )
        .unwrap();
        // Optimal-coverage GAP with b = (1,1): t* = 3 (the point (3,0) has
        // z = (3,0)).
        let g = Gap::with_rational_b(int_mat(&[&[1, 0], &[-2, 1]]), vec![rat_int(1); 2]).unwrap();
        let (t, unc) = minimal_inclusion_factor(&g, &pts).unwrap();
        assert!(unc.is_empty());
        assert_eq!(t, InclusionFactor::Finite(SqrtRational::from_int(3)));
        // Identity GAP with b = (3, 1-eps): t* = 1/(1-eps), at eps = 1/100.
        let eps = rat(1, 100);
        let b2 = vec![rat_int(3), rat_int(1) - &eps];
        let g2 = Gap::with_rational_b(int_mat(&[&[1, 0], &[0, 1]]), b2).unwrap();
        let (t2, _) = minimal_inclusion_factor(&g2, &pts).unwrap();
        let want = SqrtRational::from_ratio((rat_int(1) - &eps).recip());
        assert_eq!(t2, InclusionFactor::Finite(want));
    }

    #[test]
    fn uncoverable_points_detected() {
        // A = 2I misses odd points.
        let g = Gap::with_rational_b(int_mat(&[&[2, 0], &[0, 2]]), vec![rat_int(2); 2]).unwrap();
        let mut pts = gap_members(&g, 1000).unwrap();
        pts.points.push(i64_vec(&[1, 0]));
        pts.points.sort();
        let (t, unc) = minimal_inclusion_factor(&g, &pts).unwrap();
        assert_eq!(t, InclusionFactor::Infinite);
        assert_eq!(unc, vec![i64_vec(&[1, 0])]);
    }

    #[test]
    fn monotone_in_point_set() {
        let g = Gap::with_rational_b(int_mat(&[&[1, 0], &[0, 1]]), vec![rat_int(2); 2]).unwrap();
        let small = PointSet {
            dim: 2,
            points: vec![i64_vec(&[1, 1])],
        };
        let big = PointSet {
            dim: 2,
            points: vec![i64_vec(&[1, 1]), i64_vec(&[2, 0])],
        };
        let (t_small, _) = minimal_inclusion_factor(&g, &small).unwrap();
        let (t_big, _) = minimal_inclusion_factor(&g, &big).unwrap();
        assert!(t_small <= t_big);
        // A gap's own members never need dilation.
        let members = gap_members(&g, 1000).unwrap();
        let (t_own, _) = minimal_inclusion_factor(&g, &members).unwrap();
        assert!(t_own.le(&SqrtRational::one()));
    }

    #[test]
    fn empty_point_set_gives_one() {
        let g = Gap::with_rational_b(int_mat(&[&[1, 0], &[0, 1]]), vec![rat_int(1); 2]).unwrap();
        let empty = PointSet {
            dim: 2,
            points: vec![],
        };
        let (t, _) = minimal_inclusion_factor(&g, &empty).unwrap();
        assert_eq!(t, InclusionFactor::Finite(SqrtRational::one()));
    }
}

#[cfg(test)]
mod hull_identity_tests {
    use super::*;
    use crate::geometry::in_convex_hull;
    use crate::linalg::{i64_vec, RatVec};
    use crate::numeric::{rat, rat_int};

    fn corners(gap: &Gap) -> Vec<RatVec> {
        let n = gap.dim();
        let floors: Vec<Rat> = gap.b.iter().map(|x| Rat::from_integer(x.floor())).collect();
        let mut out = Vec::new();
        for mask in 0..(1u64 << n) {
            let z: RatVec = (0..n)
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        -floors[i].clone()
                    } else {
                        floors[i].clone()
                    }
                })
                .collect();
            let a = gap.matrix.to_rat();
            out.push(a.mul_vec(&z));
        }
        out
    }

    /// The real parallelepiped on the floored radii is the convex hull of
    /// the GAP: every member lies in conv(corners) and every corner is a
    /// member.
    #[test]
    fn parallelepiped_is_hull_of_members() {
        for (cols, b) in [
            (
                vec![vec![1i64, 0], vec![-2, 1]],
                vec![rat(3, 2), rat_int(1)],
            ),
            (vec![vec![2, 1], vec![1, 1]], vec![rat_int(2), rat(5, 2)]),
            (vec![vec![1, 0], vec![0, 1]], vec![rat(9, 10), rat_int(2)]),
        ] {
            let a = IntMat::from_columns(&[i64_vec(&cols[0]), i64_vec(&cols[1])]);
            let gap = Gap::with_rational_b(a, b).unwrap();
            let members = gap_members(&gap, 10_000).unwrap();
            let hull = corners(&gap);
            for m in &members.points {
                let mr: crate::linalg::RatVec =
                    m.iter().map(|v| Rat::from_integer(v.clone())).collect();
                assert!(
                    in_convex_hull(&hull, &mr),
                    "member {m:?} outside the parallelepiped"
                );
            }
            for c in &hull {
                if let Some(ci) = crate::linalg::as_integer_vec(c) {
                    assert!(members.contains(&ci), "corner {ci:?} is not a member");
                }
            }
        }
    }

    /// For |det A| = 1 the GAP is exactly the parallelepiped's integer
    /// points.
    #[test]
    fn unimodular_gap_equals_parallelepiped_lattice_points() {
        let a = IntMat::from_columns(&[i64_vec(&[1, 0]), i64_vec(&[-2, 1])]);
        let gap = Gap::with_rational_b(a, vec![rat_int(2), rat_int(1)]).unwrap();
        assert!(gap.is_unimodular());
        let members = gap_members(&gap, 10_000).unwrap();
        let hull = corners(&gap);
        // Scan a box generously covering the parallelepiped.
        for x in -8i64..=8 {
            for y in -8i64..=8 {
                let p: crate::linalg::RatVec = vec![rat_int(x), rat_int(y)];
                let inside = in_convex_hull(&hull, &p);
                let member = members.contains(&i64_vec(&[x, y]));
                assert_eq!(
                    inside, member,
                    "({x},{y}) hull membership vs gap membership"
                );
            }
        }
    }
}
