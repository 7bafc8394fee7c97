#![allow(dead_code)]

use palcore::{Complex64, IsometryClass, Mat2, Representation, Tolerances, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut ChaCha8Rng, r: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

pub fn random_matrix(rng: &mut ChaCha8Rng) -> Mat2 {
    loop {
        let m = Mat2::new(
            random_complex(rng, 2.0),
            random_complex(rng, 2.0),
            random_complex(rng, 2.0),
            random_complex(rng, 2.0),
        );
        if m.det().norm() > 0.1 {
            return m;
        }
    }
}

/// A representation with random complex generators; resampled until it
/// builds.
pub fn random_rep(rng: &mut ChaCha8Rng) -> Representation {
    loop {
        if let Ok(rep) = Representation::build(random_matrix(rng), random_matrix(rng)) {
            return rep;
        }
    }
}

/// Random generators with `A`, `B` and `AB` all loxodromic.
pub fn random_loxodromic_rep(rng: &mut ChaCha8Rng) -> Representation {
    let tol = Tolerances::default();
    loop {
        let rep = random_rep(rng);
        let ab = *rep.a() * *rep.b();
        if [rep.a(), rep.b(), &ab]
            .iter()
            .all(|g| g.classify(&tol) == IsometryClass::Loxodromic)
        {
            return rep;
        }
    }
}

/// Two hyperbolic generators of trace 3 with axes `[-1, 1]` and `[-8, 8]`;
/// their isometric circles are disjoint, so the group is a classical
/// Schottky group.
pub fn schottky() -> Representation {
    let t = 1.5f64.acosh();
    let (ch, sh) = (t.cosh(), t.sinh());
    Representation::build(Mat2::real(ch, sh, sh, ch), Mat2::real(ch, 8.0 * sh, sh / 8.0, ch)).unwrap()
}

pub fn parabolic_pair(mu: f64) -> Representation {
    Representation::build(Mat2::real(1.0, 1.0, 0.0, 1.0), Mat2::real(1.0, 0.0, mu, 1.0)).unwrap()
}

pub fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    palcore::probe::random_words(1, max_len, rng.gen()).pop().unwrap()
}

/// Roots of `c z² + (d - a) z - b = 0` by the textbook formula, with no
/// shared code from the library.
pub fn quadratic_fixed_points(m: &Mat2) -> (Complex64, Complex64) {
    let (a, b, c, d) = (m.a, m.b, m.c, m.d);
    let disc = ((d - a) * (d - a) + c * b * 4.0).sqrt();
    let q = if (-(d - a) + disc).norm() >= (-(d - a) - disc).norm() {
        -(d - a) + disc
    } else {
        -(d - a) - disc
    };
    // q / 2c and -2b / q are the two roots, the second without cancellation
    (q / (c * 2.0), -(b * 2.0) / q)
}

pub fn max_entry(m: &Mat2) -> f64 {
    [m.a, m.b, m.c, m.d].iter().map(|z| z.norm()).fold(0.0, f64::max)
}
