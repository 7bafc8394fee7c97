//! Points of the Riemann sphere, stored in the affine chart plus an
//! explicit point at infinity.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryPoint {
    Finite(Complex64),
    Infinity,
}

impl BoundaryPoint {
    pub const ZERO: BoundaryPoint = BoundaryPoint::Finite(Complex64 { re: 0.0, im: 0.0 });

    pub fn real(x: f64) -> Self {
        BoundaryPoint::Finite(Complex64::new(x, 0.0))
    }

    pub fn new(re: f64, im: f64) -> Self {
        BoundaryPoint::Finite(Complex64::new(re, im))
    }

    /// Non-finite complex values collapse to the point at infinity.
    pub fn from_complex(z: Complex64) -> Self {
        if z.re.is_finite() && z.im.is_finite() {
            BoundaryPoint::Finite(z)
        } else {
            BoundaryPoint::Infinity
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, BoundaryPoint::Infinity)
    }

    pub fn finite(&self) -> Option<Complex64> {
        match *self {
            BoundaryPoint::Finite(z) => Some(z),
            BoundaryPoint::Infinity => None,
        }
    }

    /// Chordal distance on the unit sphere, in `[0, 2]`.
    pub fn chordal_distance(&self, other: &BoundaryPoint) -> f64 {
        match (*self, *other) {
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => 0.0,
            (BoundaryPoint::Finite(z), BoundaryPoint::Infinity)
            | (BoundaryPoint::Infinity, BoundaryPoint::Finite(z)) => 2.0 / (1.0 + z.norm_sqr()).sqrt(),
            (BoundaryPoint::Finite(z), BoundaryPoint::Finite(w)) => {
                2.0 * (z - w).norm() / ((1.0 + z.norm_sqr()) * (1.0 + w.norm_sqr())).sqrt()
            }
        }
    }

    /// Lexicographic order on `(Re, Im)` with infinity greatest.
    pub fn lex_cmp(&self, other: &BoundaryPoint) -> Ordering {
        match (self, other) {
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => Ordering::Equal,
            (BoundaryPoint::Infinity, _) => Ordering::Greater,
            (_, BoundaryPoint::Infinity) => Ordering::Less,
            (BoundaryPoint::Finite(z), BoundaryPoint::Finite(w)) => z.re.total_cmp(&w.re).then(z.im.total_cmp(&w.im)),
        }
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryPoint::Infinity => write!(f, "inf"),
            BoundaryPoint::Finite(z) => write!(f, "{}{:+}i", z.re, z.im),
        }
    }
}

impl From<Complex64> for BoundaryPoint {
    fn from(z: Complex64) -> Self {
        BoundaryPoint::from_complex(z)
    }
}
