//! Certified norm estimates.

use alloc::string::String;
use core::fmt;

/// A computed norm together with certified brackets.
///
/// Invariants maintained by the constructors: `lower <= value <= upper`,
/// `lower` and `value` are finite and non-negative, and `upper` is either
/// finite or the explicit `+∞` marker used when no finite upper bound is
/// known.
#[derive(Clone, Debug, PartialEq)]
pub struct NormEstimate {
    /// Best point estimate of the norm.
    pub value: f64,
    /// Certified lower bound.
    pub lower: f64,
    /// Certified upper bound (possibly `+∞`).
    pub upper: f64,
    /// Human-readable description of how the brackets were certified.
    pub certificate: String,
}

impl NormEstimate {
    /// Builds an estimate, clamping so the bracket invariants hold: the
    /// brackets are widened (never narrowed) around `value`, and negatives
    /// are clipped to zero. Panics on a non-finite `value` or `lower`, or a
    /// NaN `upper`, since those indicate a broken computation rather than a
    /// wide bracket.
    pub fn bracketed(value: f64, lower: f64, upper: f64, certificate: String) -> Self {
        assert!(value.is_finite(), "norm estimate value must be finite");
        assert!(lower.is_finite(), "norm estimate lower bound must be finite");
        assert!(!upper.is_nan(), "norm estimate upper bound must not be NaN");
        let value = value.max(0.0);
        let lower = lower.clamp(0.0, value);
        let upper = upper.max(value);
        Self {
            value,
            lower,
            upper,
            certificate,
        }
    }

    /// An exactly known value (brackets collapse onto it).
    pub fn exact(value: f64, certificate: String) -> Self {
        Self::bracketed(value, value, value, certificate)
    }

    /// Width of the bracket; `+∞` when no upper bound is known.
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    /// Whether the upper bracket is a real (finite) certificate.
    pub fn has_finite_upper(&self) -> bool {
        self.upper.is_finite()
    }
}

impl fmt::Display for NormEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:.12e} in [{:.12e}, {:.12e}]",
            self.value, self.lower, self.upper
        )
    }
}
