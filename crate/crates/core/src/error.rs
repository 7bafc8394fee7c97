use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is singular (|det| = {det:e})")]
    SingularMatrix { det: f64 },
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("element is the identity in PSL(2,C)")]
    IdentityElement,
    #[error("geodesic is degenerate (endpoints coincide)")]
    DegenerateGeodesic,
    #[error("geodesics share an endpoint")]
    SharedEndpoint,
    #[error("geodesics coincide")]
    CoincidentGeodesics,
    #[error("geodesic is not orthogonal to [0, inf] (residual {residual:e})")]
    NotOrthogonal { residual: f64 },
    #[error("invalid rational {p}/{q}")]
    InvalidRational { p: u64, q: u64 },
    #[error("enumeration scheme violated at {rational}: {reason}")]
    SchemeViolation { rational: String, reason: String },
    #[error("the generators determine an elementary group")]
    ElementaryGroup,
    #[error("word {0} is not a palindrome")]
    NotPalindrome(String),
    #[error("word evaluates to the identity")]
    IdentityImage,
    #[error("axis is not orthogonal to the core geodesic (residual {residual:e} > {tolerance:e})")]
    OrthogonalityViolation { residual: f64, tolerance: f64 },
    #[error("palindromes have commuting images")]
    CommutingPair,
    #[error("palindromization reduces to the identity")]
    TrivialPalindromization,
    #[error("generator is parabolic and has no proper axis")]
    DegenerateAxis,
    #[error("tolerance {name} must be strictly positive, got {value}")]
    InvalidTolerance { name: &'static str, value: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}
