//! Named bodies used throughout the test corpus and the CLI.

use super::{ConvexBody, Inequality, TriState};
use crate::error::{Error, Result};
use crate::linalg::RatVec;
use crate::numeric::{format_rational, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub enum Fixture {
    /// conv{±(3,0), ±(-3,1), ±(-1,1)}, extended to higher n as a prism
    /// over the hexagon with |x_k| <= 1 for k > 2.
    Fig1Hexagon { n: usize },
    /// m * C_n^* = {x : sum |x_i| <= m}.
    CrossPolytope { n: usize, m: Rat },
    /// conv(±(\[0,1\]^{n-1} x {1})).
    QBody { n: usize },
    /// [-m, m]^n.
    Cube { n: usize, m: Rat },
    /// Random o-symmetric polytope: conv of ± `vertex_count` small integer
    /// generators, full-dimensional, derived H-representation.
    RandomSymmetric {
        n: usize,
        seed: u64,
        vertex_count: usize,
    },
}

pub fn fixture(which: Fixture) -> Result<ConvexBody> {
    match which {
        Fixture::Fig1Hexagon { n } => fig1_hexagon(n),
        Fixture::CrossPolytope { n, m } => cross_polytope(n, &m),
        Fixture::QBody { n } => q_body(n),
        Fixture::Cube { n, m } => cube(n, &m),
        Fixture::RandomSymmetric {
            n,
            seed,
            vertex_count,
        } => random_symmetric(n, seed, vertex_count),
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidParams("dimension must be >= 1".into()));
    }
    Ok(())
}

fn check_m(m: &Rat) -> Result<()> {
    if m.is_zero() || m.is_negative() {
        return Err(Error::InvalidParams(format!("m must be positive, got {m}")));
    }
    Ok(())
}

fn ri(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn cube(n: usize, m: &Rat) -> Result<ConvexBody> {
    check_n(n)?;
    check_m(m)?;
    // Vertices: all sign patterns of (m, ..., m); pairs |x_i| <= m.
    let mut verts = Vec::with_capacity(1 << n);
    for mask in 0..(1u64 << n) {
        let v: RatVec = (0..n)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    -m.clone()
                } else {
                    m.clone()
                }
            })
            .collect();
        verts.push(v);
    }
    let mut pairs = Vec::with_capacity(n);
    for i in 0..n {
        let mut a = vec![Rat::zero(); n];
        a[i] = Rat::one();
        pairs.push(Inequality::new(&a, m)?);
    }
    let body = ConvexBody::from_both(n, verts, pairs)?
        .with_label(format!("cube(n={n},m={})", format_rational(m)));
    body.set_unconditional_flag(TriState::Yes);
    Ok(body)
}

pub fn cross_polytope(n: usize, m: &Rat) -> Result<ConvexBody> {
    check_n(n)?;
    check_m(m)?;
    let mut verts = Vec::with_capacity(2 * n);
    for i in 0..n {
        let mut v = vec![Rat::zero(); n];
        v[i] = m.clone();
        verts.push(v);
    }
    // Facets: <s, x> <= m over all sign vectors s; one per +- pair.
    let mut pairs = Vec::with_capacity(1 << (n - 1));
    for mask in 0..(1u64 << (n - 1)) {
        let mut a = vec![Rat::one(); n];
        for (i, entry) in a.iter_mut().enumerate().take(n - 1) {
            if mask >> i & 1 == 1 {
                *entry = -Rat::one();
            }
        }
        pairs.push(Inequality::new(&a, m)?);
    }
    let body = ConvexBody::from_both(n, verts, pairs)?
        .with_label(format!("cross_polytope(n={n},m={})", format_rational(m)));
    body.set_unconditional_flag(TriState::Yes);
    Ok(body)
}

pub fn q_body(n: usize) -> Result<ConvexBody> {
    if n < 2 {
        return Err(Error::InvalidParams("q_body needs n >= 2".into()));
    }
    // Vertices: ±(eps, 1) for eps in {0,1}^{n-1}.
    let mut verts = Vec::new();
    for mask in 0..(1u64 << (n - 1)) {
        let mut v: RatVec = (0..n - 1)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    Rat::one()
                } else {
                    Rat::zero()
                }
            })
            .collect();
        v.push(Rat::one());
        verts.push(v);
    }
    // Facets: |x_n| <= 1 and |2 x_i - x_n| <= 1 for i < n.
    let mut pairs = Vec::with_capacity(n);
    let mut top = vec![Rat::zero(); n];
    top[n - 1] = Rat::one();
    pairs.push(Inequality::new(&top, &Rat::one())?);
    for i in 0..n - 1 {
        let mut a = vec![Rat::zero(); n];
        a[i] = ri(2);
        a[n - 1] = -Rat::one();
        pairs.push(Inequality::new(&a, &Rat::one())?);
    }
    let body = ConvexBody::from_both(n, verts, pairs)?.with_label(format!("q_body(n={n})"));
    Ok(body)
}

pub fn fig1_hexagon(n: usize) -> Result<ConvexBody> {
    if n < 2 {
        return Err(Error::InvalidParams("fig1_hexagon needs n >= 2".into()));
    }
    // Base hexagon conv{±(3,0), ±(-3,1), ±(-1,1)} with facet pairs
    // |x_2| <= 1, |x_1| <= 3, |x_1 + 4 x_2| <= 3.
    let base_verts = vec![vec![ri(3), ri(0)], vec![ri(-3), ri(1)], vec![ri(-1), ri(1)]];
    let base_pairs = vec![
        Inequality::new(&[ri(0), ri(1)], &ri(1))?,
        Inequality::new(&[ri(1), ri(0)], &ri(3))?,
        Inequality::new(&[ri(1), ri(4)], &ri(3))?,
    ];
    if n == 2 {
        let body = ConvexBody::from_both(2, base_verts, base_pairs)?
            .with_label("fig1_hexagon(n=2)".to_string());
        body.set_unconditional_flag(TriState::No);
        return Ok(body);
    }
    // Prisms over the hexagon: extra coordinates range over [-1, 1].
    let extra = n - 2;
    let mut verts = Vec::new();
    let closed = {
        let mut v = base_verts.clone();
        let negs: Vec<RatVec> = v
            .iter()
            .map(|row| row.iter().map(|x| -x).collect())
            .collect();
        v.extend(negs);
        v
    };
    for b in &closed {
        for mask in 0..(1u64 << extra) {
            let mut v = b.clone();
            for k in 0..extra {
                v.push(if mask >> k & 1 == 1 {
                    -Rat::one()
                } else {
                    Rat::one()
                });
            }
            verts.push(v);
        }
    }
    let mut pairs = Vec::new();
    for p in &base_pairs {
        let mut a: RatVec = p.a.iter().map(|x| Rat::from_integer(x.clone())).collect();
        a.resize(n, Rat::zero());
        pairs.push(Inequality::new(&a, &p.c)?);
    }
    for k in 2..n {
        let mut a = vec![Rat::zero(); n];
        a[k] = Rat::one();
        pairs.push(Inequality::new(&a, &Rat::one())?);
    }
    let body = ConvexBody::from_both(n, verts, pairs)?.with_label(format!("fig1_hexagon(n={n})"));
    body.set_unconditional_flag(TriState::No);
    Ok(body)
}

pub fn random_symmetric(n: usize, seed: u64, vertex_count: usize) -> Result<ConvexBody> {
    check_n(n)?;
    if vertex_count < n {
        return Err(Error::InvalidParams(format!(
            "vertex_count {vertex_count} < dimension {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Rejection loop: distinct nonzero +- classes, full rank.
    for _ in 0..1000 {
        let mut gens: Vec<RatVec> = Vec::new();
        let mut guard = 0;
        while gens.len() < vertex_count && guard < 10_000 {
            guard += 1;
            let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-4..=4)).collect();
            if v.iter().all(|&x| x == 0) {
                continue;
            }
            let vr: RatVec = v.iter().map(|&x| ri(x)).collect();
            let nvr: RatVec = vr.iter().map(|x| -x).collect();
            if gens.contains(&vr) || gens.contains(&nvr) {
                continue;
            }
            gens.push(vr);
        }
        if gens.len() < vertex_count {
            continue;
        }
        if crate::linalg::rank_of(&gens) == n {
            let body = ConvexBody::from_vertices(n, gens)?.with_label(format!(
                "random_symmetric(n={n},seed={seed},vertex_count={vertex_count})"
            ));
            return Ok(body);
        }
    }
    Err(Error::Degenerate(
        "could not draw a full-dimensional body".into(),
    ))
}

/// Random unconditional body: {x : A|x| <= c} with small nonnegative rows
/// plus per-coordinate box bounds; both representations are exact.
pub fn random_unconditional(n: usize, seed: u64) -> Result<ConvexBody> {
    check_n(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_u64);
    // 1-2 absolute-value rows with entries in {0..3} (not all zero) and a
    // box |x_i| <= e_i with e_i in {1..4}.
    let rows = rng.gen_range(1..=2usize);
    let mut abs_rows: Vec<(Vec<i64>, i64)> = Vec::new();
    for _ in 0..rows {
        loop {
            let a: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
            if a.iter().any(|&x| x > 0) {
                let max_coeff = *a.iter().max().unwrap();
                // Offset comfortably larger than one step so the body is
                // full-dimensional with a few interior lattice points.
                let c = rng.gen_range(2 * max_coeff..=4 * max_coeff.max(1));
                abs_rows.push((a, c));
                break;
            }
        }
    }
    let box_bounds: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=4)).collect();

    // Expand each abs row into its 2^{n-1} symmetric pairs.
    let mut pairs = Vec::new();
    for (a, c) in &abs_rows {
        let support: Vec<usize> = (0..n).filter(|&i| a[i] != 0).collect();
        if support.is_empty() {
            continue;
        }
        // Fix the sign of the first supported coordinate, flip the rest.
        for mask in 0..(1u64 << (support.len() - 1)) {
            let mut row = vec![Rat::zero(); n];
            for (k, &i) in support.iter().enumerate() {
                let sgn = if k > 0 && mask >> (k - 1) & 1 == 1 {
                    -1
                } else {
                    1
                };
                row[i] = ri(sgn * a[i]);
            }
            pairs.push(Inequality::new(&row, &ri(*c))?);
        }
    }
    for (i, &e) in box_bounds.iter().enumerate() {
        let mut row = vec![Rat::zero(); n];
        row[i] = Rat::one();
        pairs.push(Inequality::new(&row, &ri(e))?);
    }

    // Vertices: sign orbit of the positive-part vertices of
    // {y >= 0 : A y <= c, y <= e}.
    let pos = positive_part_vertices(n, &abs_rows, &box_bounds)?;
    let mut verts: Vec<RatVec> = Vec::new();
    for p in &pos {
        let support: Vec<usize> = (0..n).filter(|&i| !p[i].is_zero()).collect();
        for mask in 0..(1u64 << support.len()) {
            let mut v = p.clone();
            for (k, &i) in support.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    v[i] = -v[i].clone();
                }
            }
            if !verts.contains(&v) {
                verts.push(v);
            }
        }
    }
    let body = ConvexBody::from_both(n, verts, pairs)?
        .with_label(format!("random_unconditional(n={n},seed={seed})"));
    body.set_unconditional_flag(TriState::Yes);
    Ok(body)
}

/// Vertices of {y >= 0 : A y <= c, 0 <= y <= e} by basic-solution scan
/// (the system is tiny: at most 2 abs rows + 2n bounds).
fn positive_part_vertices(
    n: usize,
    abs_rows: &[(Vec<i64>, i64)],
    box_bounds: &[i64],
) -> Result<Vec<RatVec>> {
    use crate::linalg::RatMat;
    // Constraints as <g, y> <= h.
    let mut cons: Vec<(RatVec, Rat)> = Vec::new();
    for (a, c) in abs_rows {
        cons.push((a.iter().map(|&x| ri(x)).collect(), ri(*c)));
    }
    for i in 0..n {
        let mut g = vec![Rat::zero(); n];
        g[i] = Rat::one();
        cons.push((g.clone(), ri(box_bounds[i])));
        let gneg: RatVec = g.iter().map(|x| -x).collect();
        cons.push((gneg, Rat::zero()));
    }
    let m = cons.len();
    let mut verts: Vec<RatVec> = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        let mat = RatMat::from_rows(idx.iter().map(|&i| cons[i].0.clone()).collect());
        let rhs: RatVec = idx.iter().map(|&i| cons[i].1.clone()).collect();
        if let Some(y) = mat.solve(&rhs) {
            if mat.rank() == n {
                let feasible = cons.iter().all(|(g, h)| dotv(g, &y) <= *h);
                if feasible && !verts.contains(&y) {
                    verts.push(y);
                }
            }
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(verts);
            }
            i -= 1;
            if idx[i] != i + m - n {
                idx[i] += 1;
                for j in i + 1..n {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn dotv(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
