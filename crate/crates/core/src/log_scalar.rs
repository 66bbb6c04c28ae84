//! Positive reals carried as natural logarithms.
//!
//! The bound constants contain factors like `e^{8 n gamma_n}` that leave the
//! f64 range already at n = 2 (`gamma_2 = 12` gives `e^{192}`), so every such
//! quantity is stored and combined in log domain. The linear value is only
//! materialized when it is safely representable.

use std::fmt;
use std::ops::{Div, Mul};

use crate::error::{Error, Result};

/// Largest |ln x| that is considered safe to exponentiate into an f64.
pub const MATERIALIZE_LIMIT: f64 = 700.0;

/// A strictly positive real number represented by its natural logarithm.
///
/// Ordering and equality compare log values, which is equivalent to comparing
/// the (possibly unrepresentable) linear values.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LogScalar {
    log_value: f64,
}

impl LogScalar {
    /// Wraps a natural logarithm. Errors if it is not finite.
    pub fn from_ln(log_value: f64) -> Result<Self> {
        if log_value.is_finite() {
            Ok(Self { log_value })
        } else {
            Err(Error::Domain(format!(
                "log value must be finite (got {log_value})"
            )))
        }
    }

    /// Wraps a strictly positive finite linear value.
    pub fn from_value(value: f64) -> Result<Self> {
        crate::error::require_positive("value", value)?;
        Self::from_ln(value.ln())
    }

    /// The natural logarithm of the represented quantity.
    pub fn ln_value(self) -> f64 {
        self.log_value
    }

    /// The linear value, or `None` when |ln x| >= 700 and exponentiating
    /// would overflow or underflow.
    pub fn linear(self) -> Option<f64> {
        if self.log_value.abs() < MATERIALIZE_LIMIT {
            Some(self.log_value.exp())
        } else {
            None
        }
    }

    /// Multiplicative inverse (negated log).
    pub fn recip(self) -> Self {
        Self {
            log_value: -self.log_value,
        }
    }

    /// Raises to a real power (scales the log).
    pub fn powf(self, exponent: f64) -> Self {
        Self {
            log_value: self.log_value * exponent,
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self.log_value <= other.log_value {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self.log_value >= other.log_value {
            self
        } else {
            other
        }
    }
}

impl Mul for LogScalar {
    type Output = LogScalar;

    // multiplication of the represented values is addition of their logs
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Self) -> Self {
        Self {
            log_value: self.log_value + rhs.log_value,
        }
    }
}

impl Div for LogScalar {
    type Output = LogScalar;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        Self {
            log_value: self.log_value - rhs.log_value,
        }
    }
}

impl fmt::Display for LogScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.linear() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "exp({})", self.log_value),
        }
    }
}
