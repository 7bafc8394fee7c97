//! Geodesics of hyperbolic 3-space, recorded by their ends on the sphere at
//! infinity, together with the line-matrix algebra used to test
//! orthogonality and build common perpendiculars.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mat2c::{FixedPoints, GroupElement, Mat2};
use crate::point::BoundaryPoint;
use crate::tolerance::Tolerances;

/// An unordered pair of boundary points, stored in lexicographic order.
///
/// Coincident endpoints mark the degenerate axis of a parabolic element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geodesic {
    e1: BoundaryPoint,
    e2: BoundaryPoint,
}

impl Geodesic {
    pub fn new(p: BoundaryPoint, q: BoundaryPoint) -> Self {
        if p.lex_cmp(&q) == Ordering::Greater {
            Self { e1: q, e2: p }
        } else {
            Self { e1: p, e2: q }
        }
    }

    pub fn degenerate(p: BoundaryPoint) -> Self {
        Self { e1: p, e2: p }
    }

    /// The vertical line `[0, ∞]`.
    pub fn vertical() -> Self {
        Self::new(BoundaryPoint::ZERO, BoundaryPoint::Infinity)
    }

    /// The semicircle `[-x, x]`.
    pub fn symmetric(x: Complex64) -> Self {
        Self::new(BoundaryPoint::Finite(x), BoundaryPoint::Finite(-x))
    }

    pub fn endpoints(&self) -> (BoundaryPoint, BoundaryPoint) {
        (self.e1, self.e2)
    }

    pub fn is_degenerate(&self, tol: &Tolerances) -> bool {
        self.e1.chordal_distance(&self.e2) <= tol.geo
    }

    /// Axis of a group element; a parabolic element gives its degenerate axis.
    pub fn axis_of(g: &GroupElement, tol: &Tolerances) -> Result<Self> {
        Ok(match g.fixed_points(tol)? {
            FixedPoints::Single(p) => Self::degenerate(p),
            FixedPoints::Pair(p, q) => Self::new(p, q),
        })
    }

    pub fn image(&self, m: &GroupElement) -> Self {
        Self::new(m.act(self.e1), m.act(self.e2))
    }

    /// Largest chordal distance between matched endpoints, minimized over
    /// both matchings.
    pub fn distance(&self, other: &Geodesic) -> f64 {
        let straight = self
            .e1
            .chordal_distance(&other.e1)
            .max(self.e2.chordal_distance(&other.e2));
        let crossed = self
            .e1
            .chordal_distance(&other.e2)
            .max(self.e2.chordal_distance(&other.e1));
        straight.min(crossed)
    }

    pub fn approx_eq(&self, other: &Geodesic, eps: f64) -> bool {
        self.distance(other) <= eps
    }

    pub fn shares_endpoint_with(&self, other: &Geodesic, eps: f64) -> bool {
        [self.e1, self.e2]
            .iter()
            .any(|p| p.chordal_distance(&other.e1) <= eps || p.chordal_distance(&other.e2) <= eps)
    }

    /// A trace-free matrix whose fixed-point set is this geodesic: the line
    /// matrix when proper, a nilpotent matrix at the point when degenerate.
    /// Scaled to unit largest entry.
    pub(crate) fn trace_free_representative(&self, tol: &Tolerances) -> Mat2 {
        let m = if self.is_degenerate(tol) {
            match self.e1 {
                BoundaryPoint::Infinity => Mat2::real(0.0, 1.0, 0.0, 0.0),
                BoundaryPoint::Finite(p) => Mat2::new(p, -p * p, 1.0.into(), -p),
            }
        } else {
            raw_line_matrix(self.e1, self.e2)
        };
        m.scale((1.0 / m.norm()).into())
    }
}

impl fmt::Display for Geodesic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.e1, self.e2)
    }
}

// Trace-free matrix fixing u and v, with determinant -(u - v)²/4 up to scale.
fn raw_line_matrix(u: BoundaryPoint, v: BoundaryPoint) -> Mat2 {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    match (u, v) {
        (BoundaryPoint::Finite(u), BoundaryPoint::Finite(v)) => {
            let s = (u + v) * 0.5;
            Mat2::new(s, -u * v, one, -s)
        }
        (BoundaryPoint::Finite(p), BoundaryPoint::Infinity) | (BoundaryPoint::Infinity, BoundaryPoint::Finite(p)) => {
            Mat2::new(one, -p * 2.0, zero, -one)
        }
        (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => Mat2::real(0.0, 1.0, 0.0, 0.0),
    }
}

/// A trace-zero unimodular matrix: the half-turn about its fixed geodesic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineMatrix(GroupElement);

impl LineMatrix {
    pub fn element(&self) -> &GroupElement {
        &self.0
    }

    /// Normalizes a trace-free matrix to a line matrix.
    pub fn from_trace_free(m: Mat2, tol: &Tolerances) -> Result<Self> {
        let m = m.trace_free();
        Ok(Self(GroupElement::normalize(m, tol)?))
    }

    pub fn geodesic(&self, tol: &Tolerances) -> Result<Geodesic> {
        Geodesic::axis_of(&self.0, tol)
    }
}

pub fn line_matrix(g: &Geodesic, tol: &Tolerances) -> Result<LineMatrix> {
    if g.is_degenerate(tol) {
        return Err(Error::DegenerateGeodesic);
    }
    LineMatrix::from_trace_free(raw_line_matrix(g.e1, g.e2), tol)
}

/// `H g H⁻¹` for the half-turn `H` about `axis`.
pub fn half_turn_conjugate(axis: &Geodesic, g: &GroupElement, tol: &Tolerances) -> Result<GroupElement> {
    let h = line_matrix(axis, tol)?;
    Ok(g.conjugate_by(h.element()))
}

/// `|tr(L₁ L₂)|` for the two line matrices; zero exactly when the geodesics
/// meet at a right angle.
pub fn orthogonality_residual(g1: &Geodesic, g2: &Geodesic, tol: &Tolerances) -> Result<f64> {
    let l1 = line_matrix(g1, tol)?;
    let l2 = line_matrix(g2, tol)?;
    Ok((*l1.element().matrix() * *l2.element().matrix()).trace().norm())
}

pub fn are_orthogonal(g1: &Geodesic, g2: &Geodesic, tol: &Tolerances) -> Result<bool> {
    Ok(orthogonality_residual(g1, g2, tol)? < tol.geo)
}

/// The unique geodesic orthogonal to both inputs. Degenerate inputs are
/// accepted: a point `[p, p]` becomes an end of the perpendicular.
pub fn common_perpendicular(g1: &Geodesic, g2: &Geodesic, tol: &Tolerances) -> Result<Geodesic> {
    perpendicular_of_trace_free(
        &g1.trace_free_representative(tol),
        &g2.trace_free_representative(tol),
        tol,
    )
}

/// Common perpendicular of the fixed sets of two trace-free matrices, read
/// off their commutator.
pub(crate) fn perpendicular_of_trace_free(m1: &Mat2, m2: &Mat2, tol: &Tolerances) -> Result<Geodesic> {
    let k = m1.commutator(m2);
    let scale = m1.norm() * m2.norm();
    let size = k.norm();
    if size <= tol.det * scale {
        return Err(Error::CoincidentGeodesics);
    }
    // a nilpotent commutator has a double fixed point: the inputs share an end
    if k.det().norm() <= tol.geo * size * size {
        return Err(Error::SharedEndpoint);
    }
    let line = LineMatrix::from_trace_free(k, tol)?;
    match line.element().fixed_points(tol)? {
        FixedPoints::Pair(p, q) => Ok(Geodesic::new(p, q)),
        FixedPoints::Single(_) => Err(Error::SharedEndpoint),
    }
}

/// Signed hyperbolic position, along `[0, ∞]`, of the point where a geodesic
/// `[x, -x]` crosses it: `ln |x|`.
pub fn position_on_vertical_axis(g: &Geodesic, tol: &Tolerances) -> Result<f64> {
    if g.is_degenerate(tol) {
        return Err(Error::DegenerateGeodesic);
    }
    let (Some(x), Some(y)) = (g.e1.finite(), g.e2.finite()) else {
        return Err(Error::NotOrthogonal {
            residual: f64::INFINITY,
        });
    };
    let residual = antipodal_residual(x, y);
    if residual.is_nan() || residual >= tol.geo {
        return Err(Error::NotOrthogonal { residual });
    }
    Ok(0.5 * (x.norm().ln() + y.norm().ln()))
}

/// `|x + y| / max(|x|, |y|)`: zero exactly for antipodal pairs `±x`.
pub(crate) fn antipodal_residual(x: Complex64, y: Complex64) -> f64 {
    let m = x.norm().max(y.norm());
    if m == 0.0 {
        return f64::INFINITY;
    }
    (x + y).norm() / m
}
