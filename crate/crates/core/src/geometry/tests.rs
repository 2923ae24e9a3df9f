use super::*;
use crate::numeric::{rat, rat_int};

fn v2(a: i64, b: i64) -> RatVec {
    vec![rat_int(a), rat_int(b)]
}

#[test]
fn membership_examples() {
    let cube = fixture(Fixture::Cube {
        n: 2,
        m: rat_int(1),
    })
    .unwrap();
    assert!(cube.contains(&v2(1, 1)).unwrap());

    let hex = fixture(Fixture::Fig1Hexagon { n: 2 }).unwrap();
    assert!(hex.contains(&v2(3, 0)).unwrap());
    assert!(!hex.contains(&v2(3, 1)).unwrap());

    let cross = fixture(Fixture::CrossPolytope {
        n: 2,
        m: rat_int(5),
    })
    .unwrap();
    assert!(!cross.contains(&v2(3, 3)).unwrap());
}

#[test]
fn membership_dimension_mismatch() {
    let cube = fixture(Fixture::Cube {
        n: 2,
        m: rat_int(1),
    })
    .unwrap();
    assert!(matches!(
        cube.contains(&[rat_int(0)]),
        Err(crate::error::Error::DimensionMismatch { .. })
    ));
}

#[test]
fn body_norm_examples() {
    let cube = fixture(Fixture::Cube {
        n: 3,
        m: rat_int(1),
    })
    .unwrap();
    assert_eq!(
        cube.body_norm(&[rat_int(1), rat_int(0), rat_int(0)])
            .unwrap(),
        rat_int(1)
    );
    assert_eq!(
        cube.body_norm(&[rat_int(0), rat_int(0), rat_int(0)])
            .unwrap(),
        rat_int(0)
    );

    let cross = fixture(Fixture::CrossPolytope {
        n: 2,
        m: rat_int(5),
    })
    .unwrap();
    assert_eq!(cross.body_norm(&v2(2, 1)).unwrap(), rat(3, 5));
}

#[test]
fn norm_membership_equivalence() {
    let hex = fixture(Fixture::Fig1Hexagon { n: 2 }).unwrap();
    for x in [v2(1, 1), v2(3, 0), v2(3, 1), v2(-2, 1), v2(0, 0)] {
        let inside = hex.contains(&x).unwrap();
        let norm = hex.body_norm(&x).unwrap();
        assert_eq!(inside, norm <= rat_int(1));
    }
}

#[test]
fn unconditional_examples() {
    assert!(fixture(Fixture::Cube {
        n: 3,
        m: rat_int(2)
    })
    .unwrap()
    .is_unconditional()
    .unwrap());
    assert!(fixture(Fixture::CrossPolytope {
        n: 3,
        m: rat_int(1)
    })
    .unwrap()
    .is_unconditional()
    .unwrap());
    assert!(!fixture(Fixture::Fig1Hexagon { n: 2 })
        .unwrap()
        .is_unconditional()
        .unwrap());
    // Q-body is not unconditional: flipping the last coordinate of a
    // vertex (0,...,0,1) gives (0,...,0,-1) which is in Q, but flipping
    // e.g. (1,0,1) to (1,0,-1) leaves Q.
    assert!(!fixture(Fixture::QBody { n: 3 })
        .unwrap()
        .is_unconditional()
        .unwrap());
}

#[test]
fn representation_roundtrip_small_dims() {
    for body in [
        fixture(Fixture::Cube {
            n: 3,
            m: rat_int(1),
        })
        .unwrap(),
        fixture(Fixture::CrossPolytope {
            n: 3,
            m: rat_int(2),
        })
        .unwrap(),
        fixture(Fixture::QBody { n: 3 }).unwrap(),
        fixture(Fixture::Fig1Hexagon { n: 3 }).unwrap(),
        fixture(Fixture::QBody { n: 4 }).unwrap(),
    ] {
        body.verify_representations().unwrap();
    }
}

#[test]
fn v_to_h_to_v_reproduces_vertices() {
    for (n, gens, seeds) in [(3usize, 5usize, 6u64), (4, 5, 2)] {
        for seed in 0..seeds {
            let body = fixtures::random_symmetric(n, seed, gens).unwrap();
            let from_v = hull::extreme_points(n, body.vertices().unwrap()).unwrap();
            let pairs = body.inequalities().unwrap().to_vec();
            let mut from_h = hull::vertex_enumeration(n, &pairs).unwrap();
            let mut want = from_v;
            from_h.sort();
            want.sort();
            assert_eq!(from_h, want, "n {n} seed {seed}");
        }
    }
}

#[test]
fn support_values() {
    let hex = fixture(Fixture::Fig1Hexagon { n: 2 }).unwrap();
    assert_eq!(hex.support(&[rat_int(1), rat_int(0)]).unwrap(), rat_int(3));
    assert_eq!(hex.support(&[rat_int(0), rat_int(1)]).unwrap(), rat_int(1));
}

#[test]
fn scale_and_image() {
    let cube = fixture(Fixture::Cube {
        n: 2,
        m: rat_int(1),
    })
    .unwrap();
    let doubled = cube.scale(&rat_int(2)).unwrap();
    assert!(doubled.contains(&v2(2, 2)).unwrap());
    assert!(!doubled.contains(&v2(3, 0)).unwrap());

    let t = RatMat::from_rows(vec![
        vec![rat(1, 2), rat_int(0)],
        vec![rat_int(0), rat_int(1)],
    ]);
    let image = cube.linear_image(&t).unwrap();
    assert!(image.contains(&[rat(1, 2), rat_int(1)]).unwrap());
    assert!(!image.contains(&[rat_int(1), rat_int(0)]).unwrap());
}

#[test]
fn norm_homogeneity_on_random_rationals() {
    let hex = fixture(Fixture::Fig1Hexagon { n: 2 }).unwrap();
    let xs = [v2(1, 1), v2(-3, 2), vec![rat(1, 2), rat(-5, 3)], v2(7, -4)];
    let lambdas = [rat_int(0), rat_int(2), rat(3, 7), rat(11, 2)];
    for x in &xs {
        let base = hex.body_norm(x).unwrap();
        for l in &lambdas {
            let scaled: RatVec = x.iter().map(|v| v * l).collect();
            assert_eq!(hex.body_norm(&scaled).unwrap(), &base * l);
        }
    }
}

#[test]
fn lp_membership_fallback_above_conversion_budget() {
    // A 7-dimensional cross-polytope from vertices only: facet enumeration
    // is over the dimension budget, so membership must fall back to exact
    // LP feasibility over the vertex set.
    let n = 7;
    let mut gens = Vec::new();
    for i in 0..n {
        let mut v = vec![rat_int(0); n];
        v[i] = rat_int(1);
        gens.push(v);
    }
    let body = ConvexBody::from_vertices(n, gens).unwrap();
    assert!(
        body.inequalities().is_err(),
        "conversion must refuse at n = 7"
    );
    let mut e1 = vec![rat_int(0); n];
    e1[0] = rat_int(1);
    assert!(body.contains(&e1).unwrap());
    let mut outside = vec![rat_int(0); n];
    outside[0] = rat_int(2);
    assert!(!body.contains(&outside).unwrap());
    let mut half = vec![rat(1, 14); n]; // sum = 1/2 < 1: inside
    assert!(body.contains(&half).unwrap());
    half[0] = rat(2, 1); // now far outside
    assert!(!body.contains(&half).unwrap());
    // Boundary point: sum of coordinates exactly 1.
    let boundary = vec![rat(1, 7); n];
    assert!(body.contains(&boundary).unwrap());
}

#[test]
fn mismatched_representations_detected() {
    // Vertices of the unit square paired with the inequalities of a
    // larger square: consistent one way (vertices satisfy the
    // inequalities) but not the same body; the full cross-check sees it.
    let verts = vec![v2(1, 1), v2(1, -1)];
    let pairs = vec![
        Inequality::new(&[rat_int(1), rat_int(0)], &rat_int(2)).unwrap(),
        Inequality::new(&[rat_int(0), rat_int(1)], &rat_int(2)).unwrap(),
    ];
    let body = ConvexBody::from_both(2, verts, pairs).unwrap();
    assert!(body.verify_representations().is_err());

    // And the honest pairing passes.
    let verts = vec![v2(1, 1), v2(1, -1)];
    let pairs = vec![
        Inequality::new(&[rat_int(1), rat_int(0)], &rat_int(1)).unwrap(),
        Inequality::new(&[rat_int(0), rat_int(1)], &rat_int(1)).unwrap(),
    ];
    let body = ConvexBody::from_both(2, verts, pairs).unwrap();
    body.verify_representations().unwrap();

    // A vertex outside the inequalities is rejected immediately.
    let verts = vec![v2(3, 0)];
    let pairs = vec![
        Inequality::new(&[rat_int(1), rat_int(0)], &rat_int(1)).unwrap(),
        Inequality::new(&[rat_int(0), rat_int(1)], &rat_int(1)).unwrap(),
    ];
    assert!(ConvexBody::from_both(2, verts, pairs).is_err());
}
