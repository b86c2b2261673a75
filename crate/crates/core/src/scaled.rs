//! Sign / decimal-exponent representation for quantities far outside the
//! double-precision range, and the log-gamma helpers that produce them.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// `sign * 10^log10_mag`. A zero value carries `sign == 0` and
/// `log10_mag == -inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogScaled {
    pub sign: i8,
    pub log10_mag: f64,
}

impl LogScaled {
    pub const ZERO: LogScaled = LogScaled {
        sign: 0,
        log10_mag: f64::NEG_INFINITY,
    };

    pub const ONE: LogScaled = LogScaled {
        sign: 1,
        log10_mag: 0.0,
    };

    pub fn new(sign: i8, log10_mag: f64) -> Self {
        if sign == 0 {
            Self::ZERO
        } else {
            LogScaled {
                sign: sign.signum(),
                log10_mag,
            }
        }
    }

    /// From a natural-log magnitude.
    pub fn from_ln(sign: i8, ln_mag: f64) -> Self {
        Self::new(sign, ln_mag / std::f64::consts::LN_10)
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            LogScaled {
                sign: if x > 0.0 { 1 } else { -1 },
                log10_mag: x.abs().log10(),
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Integer power, exact in the log domain.
    pub fn powi(self, m: u32) -> Self {
        if m == 0 {
            return Self::ONE;
        }
        if self.is_zero() {
            return Self::ZERO;
        }
        let sign = if self.sign < 0 && m % 2 == 1 { -1 } else { 1 };
        LogScaled {
            sign,
            log10_mag: self.log10_mag * m as f64,
        }
    }

    /// Converts to a double, failing when the value is not representable as
    /// a finite nonzero (normal or subnormal) number.
    pub fn to_f64(self) -> Result<f64> {
        if self.is_zero() {
            return Ok(0.0);
        }
        let v = 10f64.powf(self.log10_mag);
        if !v.is_finite() || v == 0.0 {
            return Err(Error::Range(format!(
                "{} is not representable in double precision",
                self
            )));
        }
        Ok(self.sign as f64 * v)
    }

    /// Decimal mantissa in `[1, 10)` (signed) and integer exponent.
    pub fn mantissa_exponent(&self) -> (f64, i64) {
        if self.is_zero() {
            return (0.0, 0);
        }
        let e = self.log10_mag.floor();
        let mut mant = 10f64.powf(self.log10_mag - e);
        let mut exp = e as i64;
        // floor/pow rounding can land exactly on 10
        if mant >= 10.0 {
            mant /= 10.0;
            exp += 1;
        }
        (self.sign as f64 * mant, exp)
    }
}

impl Mul for LogScaled {
    type Output = LogScaled;

    fn mul(self, rhs: LogScaled) -> LogScaled {
        if self.is_zero() || rhs.is_zero() {
            return LogScaled::ZERO;
        }
        LogScaled {
            sign: self.sign * rhs.sign,
            log10_mag: self.log10_mag + rhs.log10_mag,
        }
    }
}

impl fmt::Display for LogScaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let (mant, exp) = self.mantissa_exponent();
        write!(f, "{:.5}e{}", mant, exp)
    }
}

/// `ln Γ(x)` for `x > 0`.
pub(crate) fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    libm::lgamma(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_ordinary_values() {
        for &x in &[1.0, -2.5, 3.0e-200, -7.0e250] {
            let back = LogScaled::from_f64(x).to_f64().unwrap();
            assert!((back - x).abs() <= 1e-13 * x.abs(), "{x} -> {back}");
        }
        assert_eq!(LogScaled::from_f64(0.0), LogScaled::ZERO);
    }

    #[test]
    fn out_of_range_is_reported() {
        assert!(LogScaled::new(1, 400.0).to_f64().is_err());
        assert!(LogScaled::new(-1, -400.0).to_f64().is_err());
        assert_eq!(LogScaled::ZERO.to_f64().unwrap(), 0.0);
    }

    #[test]
    fn powers_track_sign() {
        let c = LogScaled::new(-1, 28.5);
        assert_eq!(c.powi(3).sign, -1);
        assert_eq!(c.powi(2).sign, 1);
        assert_eq!(c.powi(2).log10_mag, 57.0);
        assert_eq!(c.powi(0), LogScaled::ONE);
    }

    #[test]
    fn mantissa_exponent_split() {
        let (m, e) = LogScaled::new(-1, 85.66).mantissa_exponent();
        assert_eq!(e, 85);
        assert!((m + 10f64.powf(0.66)).abs() < 1e-12);
        assert_eq!(format!("{}", LogScaled::new(1, 2.0)), "1.00000e2");
    }

    #[test]
    fn ln_gamma_known_values() {
        assert!((ln_gamma(0.5) - std::f64::consts::PI.sqrt().ln()).abs() < 1e-15);
        // ln(10!) = ln 3628800
        assert!((ln_gamma(11.0) - 3628800f64.ln()).abs() < 1e-13);
    }
}
