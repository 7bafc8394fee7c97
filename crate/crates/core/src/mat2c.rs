//! Complex 2×2 matrices and their images in PSL(2,C).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::BoundaryPoint;
use crate::tolerance::Tolerances;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Slack, in units of machine epsilon times the squared entry size, for
/// quantities such as `tr² - 4` that lose absolute precision as entries grow.
const GROWTH_SLACK: f64 = 64.0 * f64::EPSILON;

/// A raw complex 2×2 matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl Mat2 {
    pub const fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Self { a, b, c, d }
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub const fn identity() -> Self {
        Self::new(ONE, ZERO, ZERO, ONE)
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    pub fn adjugate(&self) -> Self {
        Self::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self::new(self.a * k, self.b * k, self.c * k, self.d * k)
    }

    /// Largest entry modulus.
    pub fn norm(&self) -> f64 {
        self.a.norm().max(self.b.norm()).max(self.c.norm()).max(self.d.norm())
    }

    pub fn is_finite(&self) -> bool {
        [self.a, self.b, self.c, self.d]
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `M - (tr M / 2) I`.
    pub fn trace_free(&self) -> Self {
        let h = (self.a - self.d) * 0.5;
        Self::new(h, self.b, self.c, -h)
    }

    /// `MN - NM`, evaluated entrywise so that the diagonal terms cancel exactly.
    pub fn commutator(&self, other: &Mat2) -> Self {
        let (m, n) = (self, other);
        let a = m.b * n.c - n.b * m.c;
        let b = m.b * (n.d - n.a) - n.b * (m.d - m.a);
        let c = m.c * (n.a - n.d) - n.c * (m.a - m.d);
        Self::new(a, b, c, -a)
    }

    /// Möbius action `z ↦ (az + b)/(cz + d)`.
    pub fn apply(&self, p: BoundaryPoint) -> BoundaryPoint {
        match p {
            BoundaryPoint::Infinity => {
                if self.c == ZERO {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::from_complex(self.a / self.c)
                }
            }
            BoundaryPoint::Finite(z) => {
                let den = self.c * z + self.d;
                if den == ZERO {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::from_complex((self.a * z + self.b) / den)
                }
            }
        }
    }

    fn max_diff(&self, other: &Mat2) -> f64 {
        (*self - *other).norm()
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, r: Mat2) -> Mat2 {
        Mat2::new(
            self.a * r.a + self.b * r.c,
            self.a * r.b + self.b * r.d,
            self.c * r.a + self.d * r.c,
            self.c * r.b + self.d * r.d,
        )
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, r: Mat2) -> Mat2 {
        Mat2::new(self.a + r.a, self.b + r.b, self.c + r.c, self.d + r.d)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, r: Mat2) -> Mat2 {
        Mat2::new(self.a - r.a, self.b - r.b, self.c - r.c, self.d - r.d)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        Mat2::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IsometryClass {
    Identity,
    Parabolic,
    Elliptic,
    Loxodromic,
}

impl fmt::Display for IsometryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IsometryClass::Identity => "identity",
            IsometryClass::Parabolic => "parabolic",
            IsometryClass::Elliptic => "elliptic",
            IsometryClass::Loxodromic => "loxodromic",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FixedPoints {
    /// Parabolic: one fixed point of multiplicity two.
    Single(BoundaryPoint),
    Pair(BoundaryPoint, BoundaryPoint),
}

impl FixedPoints {
    pub fn to_vec(&self) -> Vec<BoundaryPoint> {
        match *self {
            FixedPoints::Single(p) => vec![p],
            FixedPoints::Pair(p, q) => vec![p, q],
        }
    }
}

/// A unimodular matrix, read as an element of PSL(2,C).
///
/// The stored representative has determinant one; equality in the group is
/// [`GroupElement::psl_eq`], which ignores the global sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement(Mat2);

impl GroupElement {
    /// Divides by the principal square root of the determinant.
    pub fn normalize(m: Mat2, tol: &Tolerances) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let det = m.det();
        let scale = m.norm().powi(2).max(f64::MIN_POSITIVE);
        if det.norm() <= tol.det * scale {
            return Err(Error::SingularMatrix { det: det.norm() });
        }
        Ok(Self(m.scale(det.sqrt().inv())))
    }

    pub fn from_matrix(m: Mat2) -> Result<Self> {
        Self::normalize(m, &Tolerances::default())
    }

    pub fn identity() -> Self {
        Self(Mat2::identity())
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.adjugate())
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    /// `h · self · h⁻¹`.
    pub fn conjugate_by(&self, h: &GroupElement) -> Self {
        *h * *self * h.inverse()
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { *self };
        let mut k = n.unsigned_abs();
        let mut acc = Self::identity();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * sq;
            }
            sq = sq * sq;
            k >>= 1;
        }
        acc
    }

    /// Relative distance between the classes of `self` and `other`.
    pub fn psl_distance(&self, other: &GroupElement) -> f64 {
        let plus = self.0.max_diff(&other.0);
        let minus = self.0.max_diff(&(-other.0));
        plus.min(minus) / self.0.norm().max(other.0.norm()).max(1.0)
    }

    pub fn psl_eq(&self, other: &GroupElement, eps: f64) -> bool {
        self.psl_distance(other) <= eps
    }

    pub fn act(&self, p: BoundaryPoint) -> BoundaryPoint {
        self.0.apply(p)
    }

    fn growth_band(&self) -> f64 {
        GROWTH_SLACK * self.0.norm().powi(2)
    }

    pub fn is_identity(&self, tol: &Tolerances) -> bool {
        self.psl_distance(&Self::identity()) <= tol.class
    }

    /// Trace trichotomy; `|tr² - 4|` inside the band reads as parabolic.
    pub fn classify(&self, tol: &Tolerances) -> IsometryClass {
        if self.is_identity(tol) {
            return IsometryClass::Identity;
        }
        let t = self.trace();
        let band = tol.class.max(self.growth_band());
        if (t * t - 4.0).norm() <= band {
            return IsometryClass::Parabolic;
        }
        if t.im.abs() <= tol.class * t.norm().max(1.0) && t.re * t.re < 4.0 {
            IsometryClass::Elliptic
        } else {
            IsometryClass::Loxodromic
        }
    }

    /// Roots of `c z² + (d - a) z - b = 0`, with infinity when `c = 0`.
    pub fn fixed_points(&self, tol: &Tolerances) -> Result<FixedPoints> {
        match self.classify(tol) {
            IsometryClass::Identity => Err(Error::IdentityElement),
            IsometryClass::Parabolic => Ok(FixedPoints::Single(self.parabolic_fixed_point())),
            _ => Ok(self.fixed_pair()),
        }
    }

    // The fixed point spans the kernel of the nilpotent part N = ±M - I; read it
    // off the larger column of N.
    fn parabolic_fixed_point(&self) -> BoundaryPoint {
        let m = self.0;
        let sign = if m.trace().re >= 0.0 { 1.0 } else { -1.0 };
        let n = m.scale(sign.into()) - Mat2::identity();
        let (top, bottom) = if n.a.norm().max(n.c.norm()) >= n.b.norm().max(n.d.norm()) {
            (n.a, n.c)
        } else {
            (n.b, n.d)
        };
        if bottom.norm() <= f64::EPSILON * top.norm() {
            BoundaryPoint::Infinity
        } else {
            BoundaryPoint::from_complex(top / bottom)
        }
    }

    fn fixed_pair(&self) -> FixedPoints {
        let Mat2 { a, b, c, d } = self.0;
        let beta = a - d;
        let root = (beta * beta + b * c * 4.0).sqrt();
        let q = if (beta + root).norm() >= (beta - root).norm() {
            beta + root
        } else {
            beta - root
        };
        let far = if c == ZERO {
            BoundaryPoint::Infinity
        } else {
            BoundaryPoint::from_complex(q / (c * 2.0))
        };
        let near = if q == ZERO {
            // a = d and bc = 0 with tr² ≠ 4 cannot occur for det = 1
            BoundaryPoint::Infinity
        } else {
            BoundaryPoint::from_complex(-(b * 2.0) / q)
        };
        FixedPoints::Pair(far, near)
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;
    fn mul(self, r: GroupElement) -> GroupElement {
        GroupElement(self.0 * r.0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn ge(a: f64, b: f64, c: f64, d: f64) -> GroupElement {
        GroupElement::from_matrix(Mat2::real(a, b, c, d)).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let g = ge(2.0, 0.0, 0.0, 2.0);
        assert!(g.psl_eq(&GroupElement::identity(), 1e-15));

        let g = ge(2.0, 0.0, 0.0, 1.0);
        let expected = Mat2::real(2f64.sqrt(), 0.0, 0.0, 1.0 / 2f64.sqrt());
        assert!(g.matrix().max_diff(&expected) < 1e-15);

        let g = ge(0.0, 3.0, -3.0, 0.0);
        assert!(g.matrix().max_diff(&Mat2::real(0.0, 1.0, -1.0, 0.0)) < 1e-15);
    }

    #[test]
    fn normalize_rejects_singular() {
        let err = GroupElement::from_matrix(Mat2::real(1.0, 2.0, 2.0, 4.0)).unwrap_err();
        assert!(matches!(err, Error::SingularMatrix { .. }));
        assert!(GroupElement::from_matrix(Mat2::real(f64::NAN, 0.0, 0.0, 1.0)).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(ge(1.0, 1.0, 0.0, 1.0).classify(&tol()), IsometryClass::Parabolic);
        assert_eq!(ge(2.0, 0.0, 0.0, 0.5).classify(&tol()), IsometryClass::Loxodromic);
        assert_eq!(ge(0.0, 1.0, -1.0, 0.0).classify(&tol()), IsometryClass::Elliptic);
        assert_eq!(ge(-1.0, 0.0, 0.0, -1.0).classify(&tol()), IsometryClass::Identity);
        assert_eq!(ge(-1.0, 3.0, 0.0, -1.0).classify(&tol()), IsometryClass::Parabolic);
    }

    #[test]
    fn complex_trace_is_loxodromic() {
        let g = GroupElement::from_matrix(Mat2::new(
            Complex64::new(1.0, 0.5),
            ONE,
            ZERO,
            Complex64::new(1.0, 0.5).inv(),
        ))
        .unwrap();
        assert_eq!(g.classify(&tol()), IsometryClass::Loxodromic);
    }

    #[test]
    fn fixed_point_examples() {
        let fp = ge(2.0, 0.0, 0.0, 0.5).fixed_points(&tol()).unwrap().to_vec();
        assert!(fp.contains(&BoundaryPoint::Infinity));
        assert!(fp.iter().any(|p| p.chordal_distance(&BoundaryPoint::ZERO) < 1e-15));

        let fp = ge(1.0, 1.0, 0.0, 1.0).fixed_points(&tol()).unwrap();
        assert_eq!(fp, FixedPoints::Single(BoundaryPoint::Infinity));

        let (ch, sh) = (1f64.cosh(), 1f64.sinh());
        let fp = ge(ch, sh, sh, ch).fixed_points(&tol()).unwrap().to_vec();
        for target in [1.0, -1.0] {
            assert!(fp
                .iter()
                .any(|p| p.chordal_distance(&BoundaryPoint::real(target)) < 1e-12));
        }
    }

    #[test]
    fn identity_has_no_fixed_points() {
        assert_eq!(
            GroupElement::identity().fixed_points(&tol()),
            Err(Error::IdentityElement)
        );
    }

    #[test]
    fn parabolic_fixed_point_off_infinity() {
        let fp = ge(1.0, 0.0, 0.5, 1.0).fixed_points(&tol()).unwrap();
        assert_eq!(fp, FixedPoints::Single(BoundaryPoint::ZERO));
        // z ↦ z + 1 conjugated by z ↦ 1/(z - 3) fixes 0
        let h = ge(0.0, 1.0, 1.0, -3.0);
        let p = ge(1.0, 1.0, 0.0, 1.0).conjugate_by(&h);
        let FixedPoints::Single(x) = p.fixed_points(&tol()).unwrap() else {
            panic!("expected parabolic");
        };
        assert!(x.chordal_distance(&BoundaryPoint::ZERO) < 1e-12);
    }

    #[test]
    fn psl_equality_ignores_sign() {
        let g = ge(2.0, 1.0, 3.0, 2.0);
        let neg = GroupElement::from_matrix(-*g.matrix()).unwrap();
        assert!(g.psl_eq(&neg, 1e-15));
        assert!(!g.psl_eq(&(g * ge(1.0, 1.0, 0.0, 1.0)), 1e-6));
    }

    #[test]
    fn pow_matches_repeated_product() {
        let g = ge(2.0, 1.0, 3.0, 2.0);
        let cube = g * g * g;
        assert!(g.pow(3).psl_eq(&cube, 1e-14));
        assert!((g.pow(-2) * g.pow(2)).psl_eq(&GroupElement::identity(), 1e-13));
    }

    #[test]
    fn commutator_matches_products() {
        let m = Mat2::real(1.0, 2.0, 3.0, 4.0);
        let n = Mat2::real(-2.0, 0.5, 1.5, 7.0);
        let direct = m * n - n * m;
        assert!(m.commutator(&n).max_diff(&direct) < 1e-13);
    }
}
