//! Two-generator subgroups of PSL(2,C) explored through their palindromic
//! elements.
//!
//! A pair of generators `(A, B)` determines a *core geodesic*: the common
//! perpendicular of the two axes. Every word that reads the same forwards
//! and backwards in `A` and `B` has its axis crossing that line at a right
//! angle, so palindromes (and pairs of palindromes, through their double
//! altitude) project to signed positions along it. Indexing the primitive
//! words by non-negative rationals turns this into a map from the Farey
//! tree to the line, and the spread of that map is the discreteness
//! evidence reported by [`probe`].
//!
//! Module map:
//!
//! * [`mat2c`]: SL(2,C) matrices, PSL equality, trace classification, fixed points.
//! * [`geodesic`]: boundary-endpoint geodesics, line matrices, half-turns, common perpendiculars.
//! * [`words`]: free-group words, reversal, evaluation, Nielsen and Whitehead reduction.
//! * [`farey`]: Stern–Brocot enumeration of the primitive words `e_{p/q}`.
//! * [`rep`]: a concrete representation and its Π-map.
//! * [`probe`]: Π-spectrum, palindromic witness search and the Jørgensen cross-check.

pub mod error;
pub mod farey;
pub mod geodesic;
pub mod io;
pub mod mat2c;
pub mod point;
pub mod probe;
pub mod rep;
pub mod tolerance;
pub mod words;

pub use error::{Error, Result};
pub use farey::{FareyNode, Rational};
pub use geodesic::{Geodesic, LineMatrix};
pub use mat2c::{GroupElement, IsometryClass, Mat2};
pub use point::BoundaryPoint;
pub use probe::{ProbeReport, ProbeSettings, Verdict};
pub use rep::{PiImage, PiSource, Representation};
pub use tolerance::Tolerances;
pub use words::Word;

pub use num_complex::Complex64;
