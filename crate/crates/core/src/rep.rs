//! A concrete representation `ρ : F → PSL(2,C)` and the Π-map.
//!
//! [`Representation::build`] conjugates the generators into a frame where
//! the core geodesic is `[0, ∞]`. In that frame the half-turn about the
//! core is `diag(i, -i)`, which sends both generators to their inverses, and
//! every palindrome has the form `[[a, b], [c, a]]` with fixed points `±x`.
//! The Π-image of a palindrome is then `s = ln |x|`, the signed hyperbolic
//! position of its crossing with the core.
//!
//! The frame is pinned down completely:
//! * the core is oriented so that the crossing of `A` lies below that of
//!   `B` (a parabolic generator counts as sitting at the end it fixes);
//!   equal crossings fall back to the lexicographic order of the ends;
//! * it is scaled and rotated so that the first non-parabolic generator has
//!   fixed points `±1`, or, when both are parabolic, so that the double
//!   altitude `N_AB` does.
//!
//! Π values are therefore unchanged when the generators are conjugated.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::farey::{primitive_word, Rational};
use crate::geodesic::{
    antipodal_residual, common_perpendicular, half_turn_conjugate, line_matrix, orthogonality_residual,
    perpendicular_of_trace_free, Geodesic, LineMatrix,
};
use crate::mat2c::{FixedPoints, GroupElement, IsometryClass, Mat2};
use crate::point::BoundaryPoint;
use crate::tolerance::Tolerances;
use crate::words::Word;

/// Tolerance, in units of machine epsilon times the word length, below which
/// the commutator of two palindromes is indistinguishable from zero.
const COMMUTATOR_FLOOR: f64 = 64.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PiSource {
    Palindrome,
    Pair,
    ParabolicEnd,
}

/// Signed position on the core geodesic. Parabolic palindromes sit at an
/// end of the core and carry `s = ±∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PiImage {
    #[serde(with = "crate::io::extended_real")]
    pub s: f64,
    pub source: PiSource,
}

impl PiImage {
    pub fn is_finite(&self) -> bool {
        self.s.is_finite()
    }

    fn end(at_zero: bool) -> Self {
        PiImage {
            s: if at_zero { f64::NEG_INFINITY } else { f64::INFINITY },
            source: PiSource::ParabolicEnd,
        }
    }
}

/// Rotation data for an elliptic image.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipticInfo {
    /// Rotation angle in `[0, π]`.
    pub angle: f64,
    /// Smallest `n ≤ 64` with `n · angle ≡ 0 mod 2π`, if any.
    pub order: Option<u32>,
    /// Finite order and rotating through the minimal angle `2π/n`.
    pub geometrically_primitive: bool,
}

pub fn elliptic_info(g: &GroupElement, tol: &Tolerances) -> Option<EllipticInfo> {
    if g.classify(tol) != IsometryClass::Elliptic {
        return None;
    }
    let half = (g.trace().re.abs() / 2.0).min(1.0);
    let angle = 2.0 * half.acos();
    let order = (1..=64u32).find(|&n| {
        let turns = angle * n as f64 / (2.0 * PI);
        (turns - turns.round()).abs() <= tol.class * n as f64 && turns.round() >= 1.0
    });
    let geometrically_primitive = order
        .map(|n| (angle * n as f64 / (2.0 * PI)).round() as u32 == 1)
        .unwrap_or(false);
    Some(EllipticInfo {
        angle,
        order,
        geometrically_primitive,
    })
}

/// The right-angled hexagon `(Ax_A, L, Ax_B, L_B, Ax_AB, L_A)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hexagon {
    pub sides: [Geodesic; 6],
    /// `|tr(L_i L_{i+1})|` for consecutive sides, cyclically.
    pub orthogonality_residuals: [f64; 6],
    /// PSL distance from `A` to `H_{L_A} H_L`.
    pub a_factorization_residual: f64,
    /// PSL distance from `B` to `H_L H_{L_B}`.
    pub b_factorization_residual: f64,
}

impl Hexagon {
    pub const NAMES: [&'static str; 6] = ["Ax_A", "L", "Ax_B", "L_B", "Ax_AB", "L_A"];
}

/// `((P1 P2)^{n-1} P1, P2)`: a factorization of `(P1 P2)^n` into palindromes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticPowerFactorization {
    pub first: Word,
    pub second: Word,
    /// `P1 P2` is a palindrome and `n` is odd, so `(P1 P2)^n` is one too.
    pub power_is_palindrome: bool,
}

pub fn elliptic_power_factorization(p1: &Word, p2: &Word, n: u32) -> Result<EllipticPowerFactorization> {
    for p in [p1, p2] {
        if !p.is_palindrome() {
            return Err(Error::NotPalindrome(p.to_string()));
        }
    }
    if n == 0 {
        return Err(Error::InvalidParameter("power must be at least 1".into()));
    }
    let e = p1.concat(p2);
    let first = e.pow(n as i64 - 1).concat(p1);
    Ok(EllipticPowerFactorization {
        first,
        second: p2.clone(),
        power_is_palindrome: e.is_palindrome() && n % 2 == 1,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    a: GroupElement,
    b: GroupElement,
    core: Geodesic,
    normalizer: GroupElement,
    frame_a: GroupElement,
    frame_b: GroupElement,
    tol: Tolerances,
}

// Where a generator meets the core in a frame with core [0, ∞].
fn marker(g: &GroupElement, tol: &Tolerances) -> Result<f64> {
    match g.fixed_points(tol)? {
        FixedPoints::Single(p) => Ok(if at_zero_end(&p) {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }),
        FixedPoints::Pair(p, q) => match (p.finite(), q.finite()) {
            (Some(x), Some(y)) if x.norm() > 0.0 && y.norm() > 0.0 => Ok(0.5 * (x.norm().ln() + y.norm().ln())),
            _ => Err(Error::OrthogonalityViolation {
                residual: f64::INFINITY,
                tolerance: tol.geo,
            }),
        },
    }
}

fn at_zero_end(p: &BoundaryPoint) -> bool {
    p.chordal_distance(&BoundaryPoint::ZERO) < p.chordal_distance(&BoundaryPoint::Infinity)
}

// Principal square root of -x y: for an antipodal pair ±x, the point with Re ≥ 0.
fn symmetric_point(fp: FixedPoints) -> Option<Complex64> {
    match fp {
        FixedPoints::Pair(p, q) => {
            let (x, y) = (p.finite()?, q.finite()?);
            let r = (-x * y).sqrt();
            (r.norm() > 0.0 && r.re.is_finite() && r.im.is_finite()).then_some(r)
        }
        FixedPoints::Single(_) => None,
    }
}

/// `UVVU - VUUV`, evaluated as `[[U, V], UV]`; the two agree identically and
/// the second form avoids cancelling fourth-degree terms.
fn double_altitude_matrix(u: &GroupElement, v: &GroupElement, len: usize) -> Result<Mat2> {
    let (um, vm) = (u.matrix(), v.matrix());
    let k = um.commutator(vm);
    let floor = COMMUTATOR_FLOOR * len.max(1) as f64 * um.norm() * vm.norm();
    if k.norm() <= floor {
        return Err(Error::CommutingPair);
    }
    let x = *um * *vm;
    let t = k.commutator(&x);
    if t.norm() <= COMMUTATOR_FLOOR * len.max(1) as f64 * k.norm() * x.norm() {
        return Err(Error::CommutingPair);
    }
    Ok(t)
}

impl Representation {
    pub fn build(a: Mat2, b: Mat2) -> Result<Self> {
        Self::build_with(a, b, Tolerances::default())
    }

    pub fn build_with(a_raw: Mat2, b_raw: Mat2, tol: Tolerances) -> Result<Self> {
        tol.validate()?;
        let a = GroupElement::normalize(a_raw, &tol)?;
        let b = GroupElement::normalize(b_raw, &tol)?;
        if a.is_identity(&tol) || b.is_identity(&tol) {
            return Err(Error::ElementaryGroup);
        }
        let ax_a = Geodesic::axis_of(&a, &tol)?;
        let ax_b = Geodesic::axis_of(&b, &tol)?;
        if ax_a.shares_endpoint_with(&ax_b, tol.geo) {
            return Err(Error::ElementaryGroup);
        }
        let core = perpendicular_of_trace_free(&a.matrix().trace_free(), &b.matrix().trace_free(), &tol).map_err(
            |e| match e {
                Error::SharedEndpoint | Error::CoincidentGeodesics => Error::ElementaryGroup,
                other => other,
            },
        )?;
        if core.is_degenerate(&tol) {
            return Err(Error::ElementaryGroup);
        }

        // u ↦ 0, v ↦ ∞ for the lexicographically ordered ends
        let (u, v) = core.endpoints();
        let to_vertical = match (u, v) {
            (BoundaryPoint::Finite(u), BoundaryPoint::Finite(v)) => Mat2::new(1.0.into(), -u, 1.0.into(), -v),
            (BoundaryPoint::Finite(u), BoundaryPoint::Infinity) => Mat2::new(1.0.into(), -u, 0.0.into(), 1.0.into()),
            _ => return Err(Error::ElementaryGroup),
        };
        let mut frame = GroupElement::normalize(to_vertical, &tol)?;

        let marker_a = marker(&a.conjugate_by(&frame), &tol)?;
        let marker_b = marker(&b.conjugate_by(&frame), &tol)?;
        let same = marker_a == marker_b
            || (marker_a.is_finite() && marker_b.is_finite() && (marker_a - marker_b).abs() <= tol.geo);
        if !same && marker_a > marker_b {
            let swap = GroupElement::normalize(Mat2::real(0.0, 1.0, 1.0, 0.0), &tol)?;
            frame = swap * frame;
        }

        let fa = a.conjugate_by(&frame);
        let fb = b.conjugate_by(&frame);
        let reference = if fa.classify(&tol) != IsometryClass::Parabolic {
            symmetric_point(fa.fixed_points(&tol)?)
        } else if fb.classify(&tol) != IsometryClass::Parabolic {
            symmetric_point(fb.fixed_points(&tol)?)
        } else {
            let t = double_altitude_matrix(&fa, &fb, 2)?;
            let line = LineMatrix::from_trace_free(t, &tol)?;
            symmetric_point(line.element().fixed_points(&tol)?)
        };
        let x = reference.ok_or(Error::OrthogonalityViolation {
            residual: f64::INFINITY,
            tolerance: tol.geo,
        })?;
        let rescale = GroupElement::normalize(Mat2::new(1.0.into(), 0.0.into(), 0.0.into(), x), &tol)?;
        let normalizer = rescale * frame;

        let rep = Self {
            a,
            b,
            core,
            normalizer,
            frame_a: a.conjugate_by(&normalizer),
            frame_b: b.conjugate_by(&normalizer),
            tol,
        };
        for g in [&rep.frame_a, &rep.frame_b] {
            let flipped = half_turn_conjugate(&Geodesic::vertical(), g, &tol)?;
            let residual = flipped.psl_distance(&g.inverse());
            if residual > tol.geo {
                return Err(Error::OrthogonalityViolation {
                    residual,
                    tolerance: tol.geo,
                });
            }
        }
        Ok(rep)
    }

    pub fn a(&self) -> &GroupElement {
        &self.a
    }

    pub fn b(&self) -> &GroupElement {
        &self.b
    }

    /// The core geodesic in the original coordinates.
    pub fn core(&self) -> &Geodesic {
        &self.core
    }

    /// Möbius map sending the core to `[0, ∞]`.
    pub fn normalizer(&self) -> &GroupElement {
        &self.normalizer
    }

    /// Generators in the normalized frame.
    pub fn frame_generators(&self) -> (&GroupElement, &GroupElement) {
        (&self.frame_a, &self.frame_b)
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    /// Image of `w` in the normalized frame.
    pub fn element(&self, w: &Word) -> GroupElement {
        w.evaluate(&self.frame_a, &self.frame_b)
    }

    /// Image of `w` in the original coordinates.
    pub fn element_original(&self, w: &Word) -> GroupElement {
        w.evaluate(&self.a, &self.b)
    }

    pub fn classify_word(&self, w: &Word) -> IsometryClass {
        self.element(w).classify(&self.tol.for_length(w.len()))
    }

    /// Π-image of a palindrome in the normalized frame.
    pub fn pi_of_element(&self, g: &GroupElement, len: usize) -> Result<PiImage> {
        let tol = self.tol.for_length(len);
        match g.fixed_points(&tol) {
            Err(Error::IdentityElement) => Err(Error::IdentityImage),
            Err(e) => Err(e),
            Ok(FixedPoints::Single(p)) => {
                let zero = at_zero_end(&p);
                let end = if zero {
                    BoundaryPoint::ZERO
                } else {
                    BoundaryPoint::Infinity
                };
                let residual = p.chordal_distance(&end);
                if residual > tol.geo {
                    return Err(Error::OrthogonalityViolation {
                        residual,
                        tolerance: tol.geo,
                    });
                }
                Ok(PiImage::end(zero))
            }
            Ok(FixedPoints::Pair(p, q)) => {
                let (Some(x), Some(y)) = (p.finite(), q.finite()) else {
                    return Err(Error::OrthogonalityViolation {
                        residual: f64::INFINITY,
                        tolerance: tol.geo,
                    });
                };
                let residual = antipodal_residual(x, y);
                if residual.is_nan() || residual >= tol.geo {
                    return Err(Error::OrthogonalityViolation {
                        residual,
                        tolerance: tol.geo,
                    });
                }
                Ok(PiImage {
                    s: 0.5 * (x.norm().ln() + y.norm().ln()),
                    source: PiSource::Palindrome,
                })
            }
        }
    }

    pub fn pi_of_palindrome(&self, w: &Word) -> Result<PiImage> {
        if !w.is_palindrome() {
            return Err(Error::NotPalindrome(w.to_string()));
        }
        self.pi_of_element(&self.element(w), w.len())
    }

    /// The double altitude `N_UV` in the normalized frame, from its line
    /// matrix `T_UV`.
    pub fn double_altitude(&self, u: &Word, v: &Word) -> Result<Geodesic> {
        for w in [u, v] {
            if !w.is_palindrome() {
                return Err(Error::NotPalindrome(w.to_string()));
            }
        }
        let len = 2 * (u.len() + v.len());
        let tol = self.tol.for_length(len);
        let t = double_altitude_matrix(&self.element(u), &self.element(v), len)?;
        LineMatrix::from_trace_free(t, &tol)?.geodesic(&tol)
    }

    /// The same geodesic computed as the common perpendicular of the axes of
    /// `UV` and `VU`.
    pub fn double_altitude_from_axes(&self, u: &Word, v: &Word) -> Result<Geodesic> {
        let len = 2 * (u.len() + v.len());
        let tol = self.tol.for_length(len);
        let (uu, vv) = (self.element(u), self.element(v));
        let ax_uv = Geodesic::axis_of(&(uu * vv), &tol)?;
        let ax_vu = Geodesic::axis_of(&(vv * uu), &tol)?;
        common_perpendicular(&ax_uv, &ax_vu, &tol)
    }

    /// Π-image of the double altitude of two palindromes.
    ///
    /// In the normalized frame `U = [[a, b], [c, a]]` and `V = [[e, f], [g, e]]`,
    /// and with `UV = [[p, q], [r, t]]` the line matrix reduces to
    /// `T_UV = (bg - cf) · [[0, 2q], [-2r, 0]]`, whose axis crosses the core at
    /// `½ ln |q / r|`. The scalar `bg - cf` only decides whether `T` vanishes,
    /// which for palindromes that do not commute in the free group is a
    /// property of the representation rather than of the words; when it
    /// rounds to zero the two axes are too close to separate, and `q / r`
    /// still locates the common crossing to working precision.
    pub fn pi_of_pair(&self, u: &Word, v: &Word) -> Result<PiImage> {
        for w in [u, v] {
            if !w.is_palindrome() {
                return Err(Error::NotPalindrome(w.to_string()));
            }
        }
        if u.concat(v) == v.concat(u) {
            return Err(Error::CommutingPair);
        }
        let x = *(self.element(u) * self.element(v)).matrix();
        let (q, r) = (x.b.norm(), x.c.norm());
        if q == 0.0 && r == 0.0 {
            return Err(Error::CommutingPair);
        }
        if !(q > 0.0 && r > 0.0 && q.is_finite() && r.is_finite()) {
            return Err(Error::OrthogonalityViolation {
                residual: f64::INFINITY,
                tolerance: self.tol.for_length(2 * (u.len() + v.len())).geo,
            });
        }
        Ok(PiImage {
            s: 0.5 * (q.ln() - r.ln()),
            source: PiSource::Pair,
        })
    }

    /// `P = reverse(w) · w` and its Π-image.
    pub fn palindromize(&self, w: &Word) -> Result<(Word, PiImage)> {
        let p = w.reverse().concat(w);
        if p.is_empty() {
            return Err(Error::TrivialPalindromization);
        }
        let pi = self.pi_of_palindrome(&p)?;
        Ok((p, pi))
    }

    /// Closed form for the fixed points of `reverse(w) · w`: with
    /// `w = [[a, b], [c, d]]` in the normalized frame the product is
    /// `[[ad + bc, 2bd], [2ac, ad + bc]]`, fixed at `±√(bd / ac)`.
    pub fn palindromization_closed_form(&self, w: &Word) -> Option<Complex64> {
        let m = *self.element(w).matrix();
        let den = m.a * m.c;
        if den.norm() == 0.0 {
            return None;
        }
        Some((m.b * m.d / den).sqrt())
    }

    pub fn rational_pi(&self, r: Rational) -> Result<PiImage> {
        let pw = primitive_word(r)?;
        match &pw.factors {
            None => self.pi_of_palindrome(&pw.word),
            Some((f1, f2)) => self.pi_of_pair(f1, f2),
        }
    }

    pub fn hexagon(&self) -> Result<Hexagon> {
        let tol = &self.tol;
        let ab = self.a * self.b;
        for g in [&self.a, &self.b, &ab] {
            match g.classify(tol) {
                IsometryClass::Parabolic => return Err(Error::DegenerateAxis),
                IsometryClass::Identity => return Err(Error::ElementaryGroup),
                _ => {}
            }
        }
        let elementary = |e: Error| match e {
            Error::SharedEndpoint | Error::CoincidentGeodesics => Error::ElementaryGroup,
            other => other,
        };
        let ax_a = Geodesic::axis_of(&self.a, tol)?;
        let ax_b = Geodesic::axis_of(&self.b, tol)?;
        let ax_ab = Geodesic::axis_of(&ab, tol)?;
        let tf = |g: &GroupElement| g.matrix().trace_free();
        let l_a = perpendicular_of_trace_free(&tf(&self.a), &tf(&ab), tol).map_err(elementary)?;
        let l_b = perpendicular_of_trace_free(&tf(&self.b), &tf(&ab), tol).map_err(elementary)?;
        let sides = [ax_a, self.core, ax_b, l_b, ax_ab, l_a];
        let mut orthogonality_residuals = [0.0; 6];
        for i in 0..6 {
            orthogonality_residuals[i] = orthogonality_residual(&sides[i], &sides[(i + 1) % 6], tol)?;
        }
        let h = |g: &Geodesic| line_matrix(g, tol).map(|l| *l.element());
        let (h_l, h_la, h_lb) = (h(&self.core)?, h(&l_a)?, h(&l_b)?);
        Ok(Hexagon {
            sides,
            orthogonality_residuals,
            a_factorization_residual: self.a.psl_distance(&(h_la * h_l)),
            b_factorization_residual: self.b.psl_distance(&(h_l * h_lb)),
        })
    }
}

impl PartialOrd for PiImage {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.s.partial_cmp(&other.s)
    }
}
