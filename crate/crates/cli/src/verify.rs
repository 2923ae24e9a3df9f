//! `verify`: the named invariant suite. Each check runs the relevant
//! exact inequality on the default corpus (or a focused fixture) and
//! reports pass/fail with a witness; any failure exits with code 2.

use crate::config::{self, BodyArgs, RunArgs};
use gaplib::error::{Error, Result};
use gaplib::gap::{build_cardinality_gap, build_inclusion_gap, build_unconditional_gap, Reducer};
use gaplib::geometry::{fixture, fixtures, Fixture};
use gaplib::lattice::{
    euclidean_successive_minima, hkz_reduce, lll_reduce, minkowski_checks, seysen_reduce,
    seysen_score, successive_minima, verify_lll, LatticeBasis, LLL_DEFAULT_DELTA,
};
use gaplib::numeric::{rat_int, Rat, SqrtRational};
use gaplib::{brute_box_oracle, lattice_points_in_body, loewner_transform, ConvexBody, Ellipsoid};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub const CHECK_NAMES: [&str; 12] = [
    "duality",
    "lll_postconditions",
    "mahler",
    "polar_product",
    "minkowski",
    "minkowski_discrete",
    "floor_chain",
    "oracle_box",
    "ellipsoid_counts",
    "sandwich",
    "unconditional_path",
    "unimodular_lemma",
];

struct Ctx {
    seed: u64,
    budget: u64,
    eps: f64,
    focus: Option<ConvexBody>,
    fault: Option<String>,
}

fn random_lattices(seed: u64, count: usize, max_n: usize) -> Vec<LatticeBasis> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(2..=max_n);
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-9i64..=9)).collect())
            .collect();
        if let Ok(b) = LatticeBasis::from_rows(&rows) {
            out.push(b);
        }
    }
    out
}

fn corpus(ctx: &Ctx) -> Result<Vec<ConvexBody>> {
    if let Some(body) = &ctx.focus {
        return Ok(vec![body.clone()]);
    }
    let mut bodies = vec![
        fixture(Fixture::Cube {
            n: 2,
            m: rat_int(1),
        })?,
        fixture(Fixture::Cube {
            n: 3,
            m: rat_int(2),
        })?,
        fixture(Fixture::CrossPolytope {
            n: 2,
            m: rat_int(5),
        })?,
        fixture(Fixture::CrossPolytope {
            n: 3,
            m: rat_int(3),
        })?,
        fixture(Fixture::QBody { n: 2 })?,
        fixture(Fixture::QBody { n: 3 })?,
        fixture(Fixture::Fig1Hexagon { n: 2 })?,
        fixture(Fixture::Fig1Hexagon { n: 3 })?,
    ];
    for seed in 0..4u64 {
        bodies.push(fixtures::random_symmetric(
            3,
            ctx.seed.wrapping_add(seed),
            5,
        )?);
    }
    Ok(bodies)
}

fn check_duality(ctx: &Ctx) -> Result<CheckOutcome> {
    let lattices = random_lattices(ctx.seed, 8, 4);
    let mut tested = 0;
    for basis in &lattices {
        for (name, reduced) in [
            ("lll", lll_reduce(basis, LLL_DEFAULT_DELTA)?),
            ("seysen", seysen_reduce(basis)?),
            ("hkz", hkz_reduce(basis)?),
        ] {
            if ctx.fault.as_deref() == Some("dual") {
                // Corrupt one dual entry and evaluate the identity by hand;
                // the resulting violation must surface as a failed check.
                let mut dual = reduced.basis.dual_matrix();
                *dual.at_mut(0, 0) += rat_int(1);
                let b_mat = reduced.basis.matrix();
                let n = b_mat.cols;
                let mut violated = false;
                'scan: for i in 0..n {
                    for j in 0..n {
                        let got = gaplib::linalg::dot(&dual.column(i), &b_mat.column(j));
                        let want = if i == j { rat_int(1) } else { rat_int(0) };
                        if got != want {
                            violated = true;
                            break 'scan;
                        }
                    }
                }
                return Ok(CheckOutcome {
                    name: "duality",
                    passed: !violated,
                    detail: format!("injected fault: duality identity violated in {name} output"),
                });
            }
            reduced.verify_against(basis)?;
            tested += 1;
        }
    }
    Ok(CheckOutcome {
        name: "duality",
        passed: true,
        detail: format!("<b_i^*, b_j> = delta exactly after {tested} reductions"),
    })
}

fn check_lll(ctx: &Ctx) -> Result<CheckOutcome> {
    let lattices = random_lattices(ctx.seed ^ 1, 10, 5);
    for basis in &lattices {
        let reduced = lll_reduce(basis, LLL_DEFAULT_DELTA)?;
        verify_lll(&reduced.basis, LLL_DEFAULT_DELTA)?;
    }
    Ok(CheckOutcome {
        name: "lll_postconditions",
        passed: true,
        detail: "size reduction and Lovasz condition hold exactly".into(),
    })
}

fn check_mahler(ctx: &Ctx) -> Result<CheckOutcome> {
    // hkz_reduce asserts Mahler internally; re-check here explicitly.
    let lattices = random_lattices(ctx.seed ^ 2, 10, 4);
    for basis in &lattices {
        let reduced = hkz_reduce(basis)?;
        let minima = euclidean_successive_minima(&reduced.basis)?;
        for (i, lam) in minima.iter().enumerate() {
            let lhs = SqrtRational::from_square(reduced.basis.norm_sq(i));
            let rhs = SqrtRational::from_square(
                Rat::new(BigInt::from(i as i64 + 4), BigInt::from(4)) * lam.square(),
            );
            if lhs > rhs {
                return Ok(CheckOutcome {
                    name: "mahler",
                    passed: false,
                    detail: format!("||b_{}|| exceeds (sqrt(i+3)/2) lambda_i", i + 1),
                });
            }
        }
    }
    Ok(CheckOutcome {
        name: "mahler",
        passed: true,
        detail: "||b_i|| <= (sqrt(i+3)/2) lambda_i(B_n, L) on 10 random lattices".into(),
    })
}

fn check_polar_product(ctx: &Ctx) -> Result<CheckOutcome> {
    let lattices = random_lattices(ctx.seed ^ 3, 10, 4);
    for basis in &lattices {
        let reduced = hkz_reduce(basis)?;
        let n = basis.dim();
        let bound = Rat::new(BigInt::from(9), BigInt::from(4)).pow(n as i32);
        for i in 0..n {
            let prod = reduced.basis.norm_sq(i) * reduced.basis.dual_norm_sq(i);
            if prod > bound {
                return Ok(CheckOutcome {
                    name: "polar_product",
                    passed: false,
                    detail: format!("||b_{i}|| ||b_{i}^*|| > (3/2)^n"),
                });
            }
        }
    }
    Ok(CheckOutcome {
        name: "polar_product",
        passed: true,
        detail: "||b_i|| ||b_i^*|| <= (3/2)^n for HKZ bases".into(),
    })
}

fn check_minkowski(ctx: &Ctx, discrete: bool) -> Result<CheckOutcome> {
    let name: &'static str = if discrete {
        "minkowski_discrete"
    } else {
        "minkowski"
    };
    let mut details = Vec::new();
    for body in corpus(ctx)? {
        if body.dim() > 4 {
            continue;
        }
        let basis = LatticeBasis::identity(body.dim());
        let sm = successive_minima(&body, &basis, ctx.budget)?;
        let count = lattice_points_in_body(&body, &basis, ctx.budget)?.count() as u64;
        let rep = minkowski_checks(&body, &basis, &sm, count)?;
        let (holds, slack) = if discrete {
            (rep.discrete_holds, rep.discrete_slack.to_string())
        } else {
            (
                rep.volume_holds,
                gaplib::numeric::format_rational(&rep.volume_slack),
            )
        };
        if !holds {
            return Ok(CheckOutcome {
                name,
                passed: false,
                detail: format!("violated on {} (slack {slack})", body.label),
            });
        }
        details.push(format!("{} slack {}", body.label, slack));
    }
    Ok(CheckOutcome {
        name,
        passed: true,
        detail: details.join("; "),
    })
}

fn check_floor_chain(ctx: &Ctx) -> Result<CheckOutcome> {
    let params = gaplib::gap::BuildParams {
        eps: ctx.eps,
        enumeration_budget: ctx.budget,
        gap_budget: gaplib::DEFAULT_GAP_BUDGET,
    };
    for body in corpus(ctx)? {
        if body.dim() > 4 {
            continue;
        }
        let cert = build_cardinality_gap(&body, &params)?;
        if !cert.all_bounds_hold() {
            return Ok(CheckOutcome {
                name: "floor_chain",
                passed: false,
                detail: format!("cardinality chain violated on {}", body.label),
            });
        }
    }
    Ok(CheckOutcome {
        name: "floor_chain",
        passed: true,
        detail: "2 floor(1/(n lambda_i)) + 1 >= floor(2/lambda_i + 1)/(3n) per coordinate".into(),
    })
}

fn check_oracle_box(ctx: &Ctx) -> Result<CheckOutcome> {
    let mut compared = 0;
    for body in corpus(ctx)? {
        if body.dim() > 3 {
            continue;
        }
        let pts = lattice_points_in_body(&body, &LatticeBasis::identity(body.dim()), ctx.budget)?;
        // Oracle radius from the coordinate supports.
        let mut r = 0i64;
        for i in 0..body.dim() {
            let mut e = vec![Rat::from_integer(0.into()); body.dim()];
            e[i] = Rat::from_integer(1.into());
            let s = body.support(&e)?;
            let f = s.floor().to_integer();
            let fi = i64::try_from(&f).unwrap_or(i64::MAX);
            r = r.max(fi);
        }
        let brute = brute_box_oracle(&body, r, ctx.budget)?;
        if pts != brute {
            return Ok(CheckOutcome {
                name: "oracle_box",
                passed: false,
                detail: format!("disagreement on {}", body.label),
            });
        }
        compared += 1;
    }
    // Plus seeded random bodies at n <= 3.
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed ^ 4);
    for _ in 0..30 {
        let n = rng.gen_range(2..=3usize);
        let seed = rng.gen::<u64>();
        let body = fixtures::random_symmetric(n, seed, n + 2)?;
        let pts = lattice_points_in_body(&body, &LatticeBasis::identity(n), ctx.budget)?;
        let brute = brute_box_oracle(&body, 4, ctx.budget)?;
        if pts != brute {
            return Ok(CheckOutcome {
                name: "oracle_box",
                passed: false,
                detail: format!("disagreement on random n={n} seed={seed}"),
            });
        }
        compared += 1;
    }
    Ok(CheckOutcome {
        name: "oracle_box",
        passed: true,
        detail: format!("pruned scan matches the dumb box scan on {compared} bodies"),
    })
}

fn check_ellipsoid_counts(ctx: &Ctx) -> Result<CheckOutcome> {
    use gaplib::linalg::RatMat;
    let expect = [
        (rat_int(1), 5usize),
        (rat_int(4), 13),
        (Rat::new(25.into(), 4.into()), 21),
    ];
    for (r_sq, want) in expect {
        let mut m = RatMat::identity(2);
        for i in 0..2 {
            *m.at_mut(i, i) = rat_int(1) / &r_sq;
        }
        let e = Ellipsoid::new(m, "verify disk")?;
        let got = gaplib::lattice_points_in_ellipsoid(&e, &LatticeBasis::identity(2), ctx.budget)?
            .count();
        if got != want {
            return Ok(CheckOutcome {
                name: "ellipsoid_counts",
                passed: false,
                detail: format!("radius^2 {} gave {got}, want {want}", r_sq),
            });
        }
    }
    Ok(CheckOutcome {
        name: "ellipsoid_counts",
        passed: true,
        detail: "disk counts 5/13/21 at radii 1/2/2.5".into(),
    })
}

fn check_sandwich(ctx: &Ctx) -> Result<CheckOutcome> {
    for body in corpus(ctx)? {
        if body.dim() > 4 {
            continue;
        }
        let s = loewner_transform(&body, ctx.eps)?;
        if s.inner_radius < SqrtRational::one() {
            return Ok(CheckOutcome {
                name: "sandwich",
                passed: false,
                detail: format!("inner inclusion fails on {}", body.label),
            });
        }
    }
    Ok(CheckOutcome {
        name: "sandwich",
        passed: true,
        detail: "B_n inside T*K inside sqrt(n)(1+eps) B_n, verified exactly".into(),
    })
}

fn check_unconditional_path(ctx: &Ctx) -> Result<CheckOutcome> {
    let params = gaplib::gap::BuildParams {
        eps: ctx.eps,
        enumeration_budget: ctx.budget,
        gap_budget: gaplib::DEFAULT_GAP_BUDGET,
    };
    for seed in 0..6u64 {
        let n = 2 + (seed as usize % 3);
        let body = fixtures::random_unconditional(n, ctx.seed.wrapping_add(seed))?;
        let cert = build_unconditional_gap(&body, &params)?;
        if !cert.all_bounds_hold() {
            return Ok(CheckOutcome {
                name: "unconditional_path",
                passed: false,
                detail: format!("bound violated on {}", body.label),
            });
        }
    }
    Ok(CheckOutcome {
        name: "unconditional_path",
        passed: true,
        detail: "t* <= n and coverage < (3n)^n on random unconditional bodies".into(),
    })
}

fn check_unimodular_lemma(ctx: &Ctx) -> Result<CheckOutcome> {
    // If beta v_i in K for n independent integer v_i and K inside
    // P_R(U, u'), U unimodular, then u'_i >= beta. Instantiated with the
    // John-step GAP and the enclosing box read off from K's supports in the
    // dual directions of U.
    let params = gaplib::gap::BuildParams {
        eps: ctx.eps,
        enumeration_budget: ctx.budget,
        gap_budget: gaplib::DEFAULT_GAP_BUDGET,
    };
    for (body, beta) in [
        (
            fixture(Fixture::CrossPolytope {
                n: 2,
                m: rat_int(5),
            })?,
            rat_int(5),
        ),
        (
            fixture(Fixture::Cube {
                n: 2,
                m: rat_int(3),
            })?,
            rat_int(3),
        ),
        (
            fixture(Fixture::CrossPolytope {
                n: 3,
                m: rat_int(3),
            })?,
            rat_int(3),
        ),
    ] {
        let n = body.dim();
        // beta e_i must lie in K.
        for i in 0..n {
            let mut x = vec![Rat::from_integer(0.into()); n];
            x[i] = beta.clone();
            if !body.contains(&x)? {
                return Err(Error::InvariantViolation("lemma premise failed".into()));
            }
        }
        let cert = build_inclusion_gap(&body, Reducer::Seysen, &params)?;
        let u_mat = cert.gap.matrix.to_rat();
        let u_inv_t = u_mat
            .inverse()
            .ok_or(Error::Singular("unimodular matrix"))?
            .transpose();
        for i in 0..n {
            let dual_dir = u_inv_t.column(i);
            let support = body.support(&dual_dir)?;
            if support < beta {
                return Ok(CheckOutcome {
                    name: "unimodular_lemma",
                    passed: false,
                    detail: format!("u'_{i} = {support} < beta = {beta} on {}", body.label),
                });
            }
        }
    }
    Ok(CheckOutcome {
        name: "unimodular_lemma",
        passed: true,
        detail: "box radii of enclosing unimodular parallelepipeds are >= beta".into(),
    })
}

fn seysen_quality_note(ctx: &Ctx) -> String {
    // Recorded, not asserted: how often greedy Seysen beats LLL on S(B),
    // over random lattices up to n = 8.
    let lattices = random_lattices(ctx.seed ^ 5, 12, 8);
    let mut wins = 0usize;
    for basis in &lattices {
        let s_seysen = seysen_score(&seysen_reduce(basis).unwrap().basis).value;
        let s_lll = seysen_score(&lll_reduce(basis, LLL_DEFAULT_DELTA).unwrap().basis).value;
        if s_seysen <= s_lll {
            wins += 1;
        }
    }
    format!(
        "note: S(seysen) <= S(lll) on {wins}/{} random lattices",
        lattices.len()
    )
}

pub fn run(
    body_args: &BodyArgs,
    run_args: &RunArgs,
    only: &Option<String>,
) -> Result<(Vec<CheckOutcome>, String)> {
    config::validate_run(run_args)?;
    let focus = if body_args.fixture.is_some() || body_args.input.is_some() {
        Some(config::load_body(body_args)?)
    } else {
        None
    };
    let ctx = Ctx {
        seed: body_args.seed,
        budget: config::effective_budget(run_args),
        eps: run_args.eps,
        focus,
        fault: run_args.fault().map(str::to_string),
    };
    if let Some(name) = only {
        if !CHECK_NAMES.contains(&name.as_str()) {
            return Err(Error::InvalidParams(format!(
                "unknown check `{name}` (expected one of {})",
                CHECK_NAMES.join(", ")
            )));
        }
    }
    let wants = |name: &str| only.as_deref().is_none_or(|o| o == name);
    let mut outcomes = Vec::new();
    if wants("duality") {
        outcomes.push(check_duality(&ctx)?);
    }
    if wants("lll_postconditions") {
        outcomes.push(check_lll(&ctx)?);
    }
    if wants("mahler") {
        outcomes.push(check_mahler(&ctx)?);
    }
    if wants("polar_product") {
        outcomes.push(check_polar_product(&ctx)?);
    }
    if wants("minkowski") {
        outcomes.push(check_minkowski(&ctx, false)?);
    }
    if wants("minkowski_discrete") {
        outcomes.push(check_minkowski(&ctx, true)?);
    }
    if wants("floor_chain") {
        outcomes.push(check_floor_chain(&ctx)?);
    }
    if wants("oracle_box") {
        outcomes.push(check_oracle_box(&ctx)?);
    }
    if wants("ellipsoid_counts") {
        outcomes.push(check_ellipsoid_counts(&ctx)?);
    }
    if wants("sandwich") {
        outcomes.push(check_sandwich(&ctx)?);
    }
    if wants("unconditional_path") {
        outcomes.push(check_unconditional_path(&ctx)?);
    }
    if wants("unimodular_lemma") {
        outcomes.push(check_unimodular_lemma(&ctx)?);
    }
    let note = if only.is_none() {
        seysen_quality_note(&ctx)
    } else {
        String::new()
    };
    Ok((outcomes, note))
}
