use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical tolerances shared by every geometric routine.
///
/// `det` bounds unimodularity and algebraic identities, `class` is the band
/// used by the trace trichotomy, and `geo` bounds geometric residuals
/// (fixed points, orthogonality, antipodality).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub det: f64,
    pub class: f64,
    pub geo: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            det: 1e-12,
            class: 1e-9,
            geo: 1e-6,
        }
    }
}

impl Tolerances {
    pub fn new(det: f64, class: f64, geo: f64) -> Result<Self> {
        let tol = Self { det, class, geo };
        tol.validate()?;
        Ok(tol)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [("det", self.det), ("class", self.class), ("geo", self.geo)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidTolerance { name, value });
            }
        }
        Ok(())
    }

    /// Budget for a quantity computed from a product of `len` matrices.
    pub fn for_length(&self, len: usize) -> Self {
        let k = len.max(1) as f64;
        Self {
            det: self.det,
            class: self.class * k,
            geo: self.geo * k,
        }
    }
}
