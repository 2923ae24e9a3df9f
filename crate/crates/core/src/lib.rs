//! Generalized arithmetic progressions approximating the lattice points of
//! o-symmetric convex polytopes: exact geometry, lattice reduction, GAP
//! constructions with verified certificates, and exact lattice-point
//! enumeration as the ground-truth oracle.

// Dense index arithmetic reads better with explicit loops here.
#![allow(clippy::needless_range_loop)]

pub mod enumerate;
pub mod error;
pub mod gap;
pub mod geometry;
pub mod lattice;
pub mod linalg;
pub mod numeric;
pub mod report;

pub use enumerate::{
    brute_box_oracle, lattice_points_in_body, lattice_points_in_ellipsoid, PointSet,
};
pub use error::{Error, Result};
pub use gap::{
    bruteforce_optimal_gap, build_cardinality_gap, build_combined_gap, build_inclusion_gap,
    build_unconditional_gap, certify_pullback, gap_members, lower_bound_suite,
    minimal_inclusion_factor, Gap, GapCertificate, InclusionFactor, Objective, Reducer,
};
pub use geometry::{
    fixture, loewner_transform, mvee_ellipsoid, volume, ConvexBody, Ellipsoid, Fixture, Inequality,
    SandwichTransform,
};
pub use lattice::{
    dual_basis, euclidean_successive_minima, hkz_reduce, lll_reduce, minkowski_checks,
    seysen_reduce, seysen_score, shortest_vector, successive_minima, LatticeBasis, MinkowskiReport,
    SeysenScore, SuccessiveMinima,
};
pub use numeric::{Rat, SqrtRational};
pub use report::{AnalysisReport, RunEcho};

/// Default enumeration budget: maximum number of coefficient tuples a box
/// scan may visit (overridable via GAPLIB_BUDGET in the CLI).
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 100_000_000;

/// Default GAP membership budget: the closed-form cardinality above which
/// `gap_members` refuses to materialize the point set.
pub const DEFAULT_GAP_BUDGET: u64 = 10_000_000;

/// Tool version embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
