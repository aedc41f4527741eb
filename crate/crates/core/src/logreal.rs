//! Signed log-magnitude arithmetic. A real value `v` is stored as its sign
//! and `ln |v|`, so products of huge factors and iterated exponentials stay
//! representable long after `f64` overflows. `ln = -inf` is reserved for the
//! exact zero (sign 0); `ln = +inf` marks a magnitude beyond double range.

use crate::rational::{ln_abs_rat, sign_of, Rat};
use std::cmp::Ordering;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogReal {
    sign: i8,
    ln: f64,
}

impl LogReal {
    pub fn zero() -> Self {
        LogReal {
            sign: 0,
            ln: f64::NEG_INFINITY,
        }
    }

    pub fn one() -> Self {
        LogReal { sign: 1, ln: 0.0 }
    }

    pub fn new(sign: i8, ln: f64) -> Self {
        if sign == 0 || ln == f64::NEG_INFINITY {
            LogReal::zero()
        } else {
            LogReal { sign, ln }
        }
    }

    pub fn from_f64(v: f64) -> Self {
        if v == 0.0 {
            LogReal::zero()
        } else {
            LogReal {
                sign: if v > 0.0 { 1 } else { -1 },
                ln: v.abs().ln(),
            }
        }
    }

    pub fn from_rat(r: &Rat) -> Self {
        LogReal::new(sign_of(r), ln_abs_rat(r))
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// `ln |v|`; `-inf` for zero, `+inf` for overflowed magnitude.
    pub fn ln_abs(&self) -> f64 {
        self.ln
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Signed value as `f64`; saturates to `+-inf` outside double range.
    pub fn to_f64(&self) -> f64 {
        self.sign as f64 * self.ln.exp()
    }

    pub fn neg(&self) -> Self {
        LogReal::new(-self.sign, self.ln)
    }

    pub fn abs(&self) -> Self {
        LogReal::new(self.sign.abs(), self.ln)
    }

    pub fn mul(&self, other: &LogReal) -> Self {
        if self.is_zero() || other.is_zero() {
            return LogReal::zero();
        }
        LogReal::new(self.sign * other.sign, self.ln + other.ln)
    }

    pub fn div(&self, other: &LogReal) -> Self {
        assert!(!other.is_zero(), "division by exact zero");
        if self.is_zero() {
            return LogReal::zero();
        }
        LogReal::new(self.sign * other.sign, self.ln - other.ln)
    }

    pub fn powi(&self, n: u32) -> Self {
        if n == 0 {
            return LogReal::one();
        }
        if self.is_zero() {
            return LogReal::zero();
        }
        let sign = if self.sign < 0 && n % 2 == 1 { -1 } else { 1 };
        LogReal::new(sign, self.ln * n as f64)
    }

    /// `|v|^e` for a real exponent; requires a nonnegative base in spirit, so
    /// the magnitude is used.
    pub fn abs_powf(&self, e: f64) -> Self {
        if self.is_zero() {
            return if e == 0.0 { LogReal::one() } else { LogReal::zero() };
        }
        LogReal::new(1, self.ln * e)
    }

    /// Signed addition via the larger magnitude's frame.
    pub fn add(&self, other: &LogReal) -> Self {
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        let (hi, lo) = if self.ln >= other.ln {
            (self, other)
        } else {
            (other, self)
        };
        if hi.ln == f64::INFINITY {
            if lo.ln == f64::INFINITY && lo.sign != hi.sign {
                // Cancellation of two overflowed magnitudes is undecidable;
                // collapse to zero rather than invent a sign.
                return LogReal::zero();
            }
            return *hi;
        }
        let diff = (lo.ln - hi.ln).exp(); // in [0, 1]
        let inner = 1.0 + (lo.sign * hi.sign) as f64 * diff;
        if inner <= 0.0 {
            // Exact or subtractive cancellation at equal magnitudes.
            return LogReal::zero();
        }
        LogReal::new(hi.sign, hi.ln + inner.ln())
    }

    pub fn sub(&self, other: &LogReal) -> Self {
        self.add(&other.neg())
    }

    /// `exp(v)` where `v` is this signed value. The log-magnitude of the
    /// result is the value itself; towers overflow into the `+inf` sentinel
    /// instead of panicking or losing the sign.
    pub fn exp(&self) -> Self {
        LogReal::new(1, self.to_f64())
    }

    /// `sqrt(v)`, defined for nonnegative values.
    pub fn sqrt(&self) -> Self {
        assert!(self.sign >= 0, "sqrt of negative value");
        LogReal::new(self.sign, self.ln / 2.0)
    }

    /// `ln(1 + |v|)` as a plain float, computed stably for huge `|v|`.
    pub fn ln_1p_abs(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        if self.ln == f64::INFINITY {
            return f64::INFINITY;
        }
        if self.ln > 40.0 {
            // 1 is negligible at double precision.
            self.ln
        } else {
            self.ln.exp().ln_1p()
        }
    }

    /// Compare signed values.
    pub fn cmp_value(&self, other: &LogReal) -> Ordering {
        match (self.sign, other.sign) {
            (a, b) if a < b => Ordering::Less,
            (a, b) if a > b => Ordering::Greater,
            (0, 0) => Ordering::Equal,
            (s, _) => {
                let o = self
                    .ln
                    .partial_cmp(&other.ln)
                    .unwrap_or(Ordering::Equal);
                if s > 0 {
                    o
                } else {
                    o.reverse()
                }
            }
        }
    }
}
