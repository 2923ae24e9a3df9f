//! Shared inputs for the criterion benches: seeded lattices and bodies so
//! runs are comparable across machines and versions.

use gaplib::geometry::{fixture, fixtures, Fixture};
use gaplib::lattice::LatticeBasis;
use gaplib::numeric::rat_int;
use gaplib::ConvexBody;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn seeded_lattice(n: usize, seed: u64) -> LatticeBasis {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-9i64..=9)).collect())
            .collect();
        if let Ok(b) = LatticeBasis::from_rows(&rows) {
            return b;
        }
    }
}

pub fn hexagon() -> ConvexBody {
    fixture(Fixture::Fig1Hexagon { n: 2 }).unwrap()
}

pub fn cross(n: usize, m: i64) -> ConvexBody {
    fixture(Fixture::CrossPolytope { n, m: rat_int(m) }).unwrap()
}

pub fn random_body(n: usize, seed: u64) -> ConvexBody {
    fixtures::random_symmetric(n, seed, n + 2).unwrap()
}
