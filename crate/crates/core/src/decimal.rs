//! Fixed-point decimals with a chosen number of fractional digits.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::Rat;

const GUARD_DIGITS: u32 = 12;

fn ten_pow(digits: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), digits as usize)
}

/// Integer division rounding half away from zero.
fn div_round(numer: &BigInt, denom: &BigInt) -> BigInt {
    let (q, r) = numer.div_rem(denom);
    if (r.abs() * 2u32).cmp(&denom.abs()) == Ordering::Less {
        q
    } else if (numer.sign() == Sign::Minus) != (denom.sign() == Sign::Minus) {
        q - 1
    } else {
        q + 1
    }
}

/// `mantissa / 10^digits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decimal {
    mantissa: BigInt,
    digits: u32,
}

impl Decimal {
    pub fn from_mantissa(mantissa: BigInt, digits: u32) -> Decimal {
        Decimal { mantissa, digits }
    }

    pub fn from_int<T: Into<BigInt>>(value: T, digits: u32) -> Decimal {
        Decimal { mantissa: value.into() * ten_pow(digits), digits }
    }

    /// Nearest decimal to an exact rational.
    pub fn from_rat(value: &Rat, digits: u32) -> Decimal {
        let scaled = value.numer() * ten_pow(digits);
        Decimal { mantissa: div_round(&scaled, value.denom()), digits }
    }

    /// Square root of a non-negative rational, truncated to `digits`.
    pub fn sqrt_rat(value: &Rat, digits: u32) -> Option<Decimal> {
        if value.is_negative() {
            return None;
        }
        let scaled = value.numer() * ten_pow(2 * digits) / value.denom();
        Some(Decimal { mantissa: scaled.sqrt(), digits })
    }

    /// π by Machin's formula.
    pub fn pi(digits: u32) -> Decimal {
        let work = digits + GUARD_DIGITS;
        let one = ten_pow(work);
        let atan_inv = |x: u64| {
            let x = BigInt::from(x);
            let x2 = &x * &x;
            let mut power = &one / &x;
            let mut sum = BigInt::zero();
            let mut k = 0u64;
            while !power.is_zero() {
                let term = &power / BigInt::from(2 * k + 1);
                if k % 2 == 0 {
                    sum += term;
                } else {
                    sum -= term;
                }
                power /= &x2;
                k += 1;
            }
            sum
        };
        let pi = atan_inv(5) * 16 - atan_inv(239) * 4;
        Decimal { mantissa: pi, digits: work }.round_to(digits)
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn round_to(&self, digits: u32) -> Decimal {
        let mantissa = match digits.cmp(&self.digits) {
            Ordering::Equal => self.mantissa.clone(),
            Ordering::Greater => &self.mantissa * ten_pow(digits - self.digits),
            Ordering::Less => div_round(&self.mantissa, &ten_pow(self.digits - digits)),
        };
        Decimal { mantissa, digits }
    }

    fn aligned(&self, other: &Decimal) -> (BigInt, BigInt, u32) {
        let digits = self.digits.max(other.digits);
        (self.round_to(digits).mantissa, other.round_to(digits).mantissa, digits)
    }

    pub fn add(&self, other: &Decimal) -> Decimal {
        let (a, b, digits) = self.aligned(other);
        Decimal { mantissa: a + b, digits }
    }

    pub fn sub(&self, other: &Decimal) -> Decimal {
        let (a, b, digits) = self.aligned(other);
        Decimal { mantissa: a - b, digits }
    }

    pub fn mul(&self, other: &Decimal) -> Decimal {
        let (a, b, digits) = self.aligned(other);
        Decimal { mantissa: div_round(&(a * b), &ten_pow(digits)), digits }
    }

    pub fn div(&self, other: &Decimal) -> Option<Decimal> {
        let (a, b, digits) = self.aligned(other);
        if b.is_zero() {
            return None;
        }
        Some(Decimal { mantissa: div_round(&(a * ten_pow(digits)), &b), digits })
    }

    pub fn sqrt(&self) -> Option<Decimal> {
        if self.is_negative() {
            return None;
        }
        Some(Decimal { mantissa: (&self.mantissa * ten_pow(self.digits)).sqrt(), digits: self.digits })
    }

    pub fn neg(&self) -> Decimal {
        Decimal { mantissa: -&self.mantissa, digits: self.digits }
    }

    pub fn abs_diff(&self, other: &Decimal) -> Decimal {
        let d = self.sub(other);
        Decimal { mantissa: d.mantissa.abs(), digits: d.digits }
    }

    pub fn to_f64(&self) -> f64 {
        let ratio = Rat::new(self.mantissa.clone(), ten_pow(self.digits));
        ratio.to_f64().unwrap_or(f64::NAN)
    }

    pub fn to_rat(&self) -> Rat {
        Rat::new(self.mantissa.clone(), ten_pow(self.digits))
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scale = ten_pow(self.digits);
        let magnitude = self.mantissa.abs();
        let (whole, frac) = magnitude.div_rem(&scale);
        if self.is_negative() {
            f.write_str("-")?;
        }
        if self.digits == 0 {
            return write!(f, "{whole}");
        }
        write!(f, "{whole}.{:0>width$}", frac.to_string(), width = self.digits as usize)
    }
}

impl PartialOrd for Decimal {
    fn partial_cmp(&self, other: &Decimal) -> Option<Ordering> {
        let (a, b, _) = self.aligned(other);
        Some(a.cmp(&b))
    }
}

/// `(4 - π) / (π - 2)^(3/2)`, the limiting skewness.
pub fn skewness_limit(digits: u32) -> Decimal {
    let work = digits + GUARD_DIGITS;
    let pi = Decimal::pi(work);
    let four = Decimal::from_int(4, work);
    let two = Decimal::from_int(2, work);
    let base = pi.sub(&two);
    let denom = base.mul(&base.sqrt().expect("pi exceeds 2"));
    four.sub(&pi).div(&denom).expect("nonzero").round_to(digits)
}

/// `(3π - 8)π / (π - 2)^2`, the limiting kurtosis.
pub fn kurtosis_limit(digits: u32) -> Decimal {
    let work = digits + GUARD_DIGITS;
    let pi = Decimal::pi(work);
    let numer = Decimal::from_int(3, work).mul(&pi).sub(&Decimal::from_int(8, work)).mul(&pi);
    let base = pi.sub(&Decimal::from_int(2, work));
    numer.div(&base.mul(&base)).expect("nonzero").round_to(digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn pi_digits() {
        assert_eq!(
            Decimal::pi(50).to_string(),
            "3.14159265358979323846264338327950288419716939937511"
        );
    }

    #[test]
    fn rational_rounding() {
        assert_eq!(Decimal::from_rat(&rat(2, 3), 4).to_string(), "0.6667");
        assert_eq!(Decimal::from_rat(&rat(-2, 3), 4).to_string(), "-0.6667");
        assert_eq!(Decimal::from_rat(&rat(15, 8), 3).to_string(), "1.875");
        assert_eq!(Decimal::from_rat(&rat(-1, 8), 1).to_string(), "-0.1");
        assert_eq!(Decimal::from_int(7, 0).to_string(), "7");
    }

    #[test]
    fn square_roots() {
        assert_eq!(Decimal::sqrt_rat(&rat(2, 1), 10).unwrap().to_string(), "1.4142135623");
        assert_eq!(Decimal::from_int(9, 5).sqrt().unwrap(), Decimal::from_int(3, 5));
        assert!(Decimal::sqrt_rat(&rat(-1, 1), 5).is_none());
    }

    #[test]
    fn limits() {
        assert_eq!(skewness_limit(6).to_string(), "0.703763");
        assert_eq!(kurtosis_limit(6).to_string(), "3.434589");
    }

    #[test]
    fn arithmetic() {
        let a = Decimal::from_rat(&rat(1, 4), 6);
        let b = Decimal::from_rat(&rat(1, 2), 3);
        assert_eq!(a.add(&b).to_string(), "0.750000");
        assert_eq!(a.mul(&b).to_string(), "0.125000");
        assert_eq!(a.div(&b).unwrap().to_string(), "0.500000");
        assert!(a.div(&Decimal::from_int(0, 2)).is_none());
        assert!(a < b);
    }
}
