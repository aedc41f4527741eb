//! Arbitrary-precision rational scalars.
//!
//! `Rat` is a thin alias over [`num_rational::BigRational`], which already
//! guarantees the invariants we need (always reduced, positive denominator).
//! The helpers here cover construction, parsing of `int` / `int/posint`
//! literals, and overflow-safe conversion to logarithmic coordinates.

use num_bigint::{BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub use num_bigint::BigInt;

pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Natural logarithm of a positive big integer, accurate even when the value
/// does not fit in an `f64`.
pub fn ln_biguint(n: &BigUint) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 52 {
        return n.to_f64().expect("fits in f64").ln();
    }
    // Take the top 53 bits as a mantissa and re-add the shifted-out scale.
    let shift = bits - 53;
    let top = (n >> shift).to_f64().expect("53 bits fit");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural logarithm of `|r|`; `-inf` for zero.
pub fn ln_abs_rat(r: &Rat) -> f64 {
    if r.is_zero() {
        return f64::NEG_INFINITY;
    }
    ln_biguint(r.numer().magnitude()) - ln_biguint(r.denom().magnitude())
}

/// Sign of a rational as -1, 0, or +1.
pub fn sign_of(r: &Rat) -> i8 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let ln = ln_abs_rat(r);
        if sign_of(r) < 0 {
            -ln.exp()
        } else {
            ln.exp()
        }
    })
}

/// Format a rational the way the expression grammar spells literals:
/// `3`, `-3`, `1/2`, `-5/3`.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Factorial as a rational (used in combinatorial coefficients).
pub fn factorial(n: usize) -> Rat {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rat::from_integer(acc)
}

/// Binomial coefficient `C(n, k)` as a rational; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> Rat {
    if k > n {
        return Rat::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    Rat::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_of_huge_integer() {
        // 2^10000 has ln = 10000 ln 2 but does not fit in f64.
        let n = BigUint::from(1u32) << 10000;
        let expect = 10000.0 * std::f64::consts::LN_2;
        assert!((ln_biguint(&n) - expect).abs() < 1e-9 * expect);
    }

    #[test]
    fn literal_formatting_round_trips() {
        assert_eq!(rat_to_string(&rat(1, 2)), "1/2");
        assert_eq!(rat_to_string(&rat_int(-7)), "-7");
        assert_eq!(rat_to_string(&rat(-5, 3)), "-5/3");
    }

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(binomial(4, 2), rat_int(6));
        assert_eq!(binomial(3, 5), Rat::zero());
        assert_eq!(factorial(5), rat_int(120));
    }
}
