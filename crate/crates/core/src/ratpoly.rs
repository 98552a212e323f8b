//! Polynomials in `L` with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{rat_int, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl RatPoly {
    pub fn zero() -> RatPoly {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> RatPoly {
        RatPoly::from_coeffs(vec![c])
    }

    /// The polynomial `L`.
    pub fn var() -> RatPoly {
        RatPoly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    /// Coefficients in ascending degree; trailing zeros are dropped.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> RatPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    /// Coefficients given as `(numerator, denominator)` pairs in ascending degree.
    pub fn from_fracs(pairs: &[(i64, i64)]) -> RatPoly {
        RatPoly::from_coeffs(
            pairs.iter().map(|&(p, q)| Rat::new(BigInt::from(p), BigInt::from(q))).collect(),
        )
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, at: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * at + c)
    }

    pub fn eval_int(&self, at: i64) -> Rat {
        self.eval(&rat_int(at))
    }

    pub fn scale(&self, by: &Rat) -> RatPoly {
        RatPoly::from_coeffs(self.coeffs.iter().map(|c| c * by).collect())
    }

    pub fn pow(&self, exp: u32) -> RatPoly {
        (0..exp).fold(RatPoly::constant(Rat::one()), |acc, _| &acc * self)
    }

    /// `p(L + delta)`.
    pub fn shift(&self, delta: i64) -> RatPoly {
        let step = RatPoly::from_coeffs(vec![rat_int(delta), Rat::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(RatPoly::zero(), |acc, c| &(&acc * &step) + &RatPoly::constant(c.clone()))
    }

    /// `p(L) / (L - root)` when the division is exact.
    pub fn divide_by_root(&self, root: &Rat) -> Option<RatPoly> {
        if self.is_zero() {
            return Some(RatPoly::zero());
        }
        let mut quotient = vec![Rat::zero(); self.coeffs.len() - 1];
        let mut carry = Rat::zero();
        for k in (0..self.coeffs.len()).rev() {
            let value = &self.coeffs[k] + &carry * root;
            if k == 0 {
                return value.is_zero().then(|| RatPoly::from_coeffs(quotient));
            }
            quotient[k - 1] = value.clone();
            carry = value;
        }
        unreachable!()
    }

    /// Human-readable form such as `4L^2 + 9L + 3` or `-9/2 L - 13/4`.
    pub fn display_spaced(&self, var: &str) -> String {
        self.render(var, true)
    }

    /// Dense form such as `4L+1`, used inside parentheses.
    pub fn display_compact(&self, var: &str) -> String {
        self.render(var, false)
    }

    fn render(&self, var: &str, spaced: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(match (negative, spaced) {
                    (true, true) => " - ",
                    (false, true) => " + ",
                    (true, false) => "-",
                    (false, false) => "+",
                });
            }
            let mag = c.abs();
            let monomial = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&monomial);
            } else if mag.is_integer() {
                out.push_str(&format!("{mag}{monomial}"));
            } else if spaced {
                out.push_str(&format!("{mag} {monomial}"));
            } else {
                out.push_str(&format!("({mag}){monomial}"));
            }
        }
        out
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_spaced("L"))
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;

    fn add(self, other: &RatPoly) -> RatPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        RatPoly::from_coeffs((0..len).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;

    fn sub(self, other: &RatPoly) -> RatPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        RatPoly::from_coeffs((0..len).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;

    fn mul(self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::from_coeffs(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;

    fn neg(self) -> RatPoly {
        RatPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    #[test]
    fn rendering() {
        let p = RatPoly::from_fracs(&[(3, 1), (9, 1), (4, 1)]);
        assert_eq!(p.to_string(), "4L^2 + 9L + 3");
        let q = RatPoly::from_fracs(&[(-13, 4), (-9, 2)]);
        assert_eq!(q.to_string(), "-9/2 L - 13/4");
        assert_eq!(RatPoly::from_fracs(&[(1, 1), (4, 1)]).display_compact("L"), "4L+1");
        assert_eq!(RatPoly::from_fracs(&[(-1, 2)]).to_string(), "-1/2");
        assert_eq!(RatPoly::from_fracs(&[(0, 1), (-1, 1)]).to_string(), "-L");
        assert_eq!(RatPoly::zero().to_string(), "0");
        assert_eq!(RatPoly::from_fracs(&[(1, 1), (1, 2)]).display_compact("L"), "(1/2)L+1");
    }

    #[test]
    fn evaluation_and_shift() {
        let p = RatPoly::from_fracs(&[(1, 2), (2, 1)]);
        assert_eq!(p.eval_int(3), rat(13, 2));
        assert_eq!(p.shift(1).eval_int(2), p.eval_int(3));
        assert_eq!(RatPoly::var().pow(3).degree(), Some(3));
        assert_eq!((&p - &p).degree(), None);
        let product = &p * &RatPoly::from_fracs(&[(1, 1), (1, 1)]);
        assert_eq!(product.divide_by_root(&rat(-1, 1)), Some(p.clone()));
        assert_eq!(p.divide_by_root(&rat(-1, 1)), None);
    }

    proptest! {
        #[test]
        fn ring_operations_agree_with_evaluation(
            a in prop::collection::vec(-20i64..20, 0..5),
            b in prop::collection::vec(-20i64..20, 0..5),
            x in -10i64..10,
        ) {
            let pa = RatPoly::from_coeffs(a.iter().map(|&c| rat(c, 3)).collect());
            let pb = RatPoly::from_coeffs(b.iter().map(|&c| rat(c, 2)).collect());
            let at = rat(x, 1);
            prop_assert_eq!((&pa * &pb).eval(&at), pa.eval(&at) * pb.eval(&at));
            prop_assert_eq!((&pa + &pb).eval(&at), pa.eval(&at) + pb.eval(&at));
            prop_assert_eq!(pa.shift(-2).eval(&at), pa.eval(&rat(x - 2, 1)));
        }
    }
}
