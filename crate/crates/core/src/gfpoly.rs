//! Dense polynomials in `q` with big-integer coefficients.
//!
//! A distribution-valued polynomial stores at index `i` the number of
//! outcomes with exactly `i` correct guesses.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GFPoly {
    coeffs: Vec<BigInt>,
}

impl GFPoly {
    pub fn zero() -> Self {
        GFPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        GFPoly::monomial(BigInt::one(), 0)
    }

    pub fn monomial(coeff: BigInt, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = coeff;
        GFPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = GFPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        GFPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Adds `q^shift * other` in place.
    pub fn add_shifted(&mut self, other: &GFPoly, shift: usize) {
        if other.is_zero() {
            return;
        }
        let needed = other.coeffs.len() + shift;
        if self.coeffs.len() < needed {
            self.coeffs.resize(needed, BigInt::zero());
        }
        for (dst, src) in self.coeffs[shift..].iter_mut().zip(&other.coeffs) {
            *dst += src;
        }
        self.trim();
    }

    /// Multiplies by `q^shift`.
    pub fn shifted(&self, shift: usize) -> GFPoly {
        if self.is_zero() {
            return GFPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); shift];
        coeffs.extend(self.coeffs.iter().cloned());
        GFPoly { coeffs }
    }

    /// `D t(q) = q t'(q)` applied `r` times: coefficient `i` is scaled by `i^r`.
    pub fn d_operator(&self, r: u32) -> GFPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * num_traits::pow(BigInt::from(i), r as usize))
            .collect();
        GFPoly::from_coeffs(coeffs)
    }

    /// Sum of the coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// `D^(r) p (1)` without materialising the intermediate polynomial.
    pub fn power_sum(&self, r: u32) -> BigInt {
        if r == 0 {
            return self.eval_at_one();
        }
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * num_traits::pow(BigInt::from(i), r as usize))
            .sum()
    }

    /// `power_sum(0..=max_r)` sharing the powers of each index.
    pub fn power_sums(&self, max_r: u32) -> Vec<BigInt> {
        let mut sums = vec![BigInt::zero(); max_r as usize + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = c.clone();
            for (r, sum) in sums.iter_mut().enumerate() {
                if r > 0 {
                    term *= i;
                }
                *sum += &term;
            }
        }
        sums
    }
}

impl AddAssign<&GFPoly> for GFPoly {
    fn add_assign(&mut self, rhs: &GFPoly) {
        self.add_shifted(rhs, 0);
    }
}

impl Add for &GFPoly {
    type Output = GFPoly;

    fn add(self, rhs: &GFPoly) -> GFPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &GFPoly {
    type Output = GFPoly;

    fn sub(self, rhs: &GFPoly) -> GFPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        GFPoly::from_coeffs(coeffs)
    }
}

impl Mul for &GFPoly {
    type Output = GFPoly;

    fn mul(self, rhs: &GFPoly) -> GFPoly {
        if self.is_zero() || rhs.is_zero() {
            return GFPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        GFPoly::from_coeffs(coeffs)
    }
}

/// Human-readable form such as `4 + 4q + 3q^2 + 5q^4`.
impl fmt::Display for GFPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    f.write_str("q")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f4() -> GFPoly {
        GFPoly::from_i64(&[4, 4, 3, 0, 5])
    }

    #[test]
    fn products() {
        let one_plus_q = GFPoly::from_i64(&[1, 1]);
        assert_eq!(&one_plus_q * &one_plus_q, GFPoly::from_i64(&[1, 2, 1]));
        let g = GFPoly::from_i64(&[0, 2, 4, 4]);
        assert_eq!(&g * &GFPoly::one(), g);
        assert!((&g * &GFPoly::zero()).is_zero());
    }

    #[test]
    fn moment_operator() {
        let cube = GFPoly::monomial(BigInt::one(), 3);
        assert_eq!(cube.d_operator(1), GFPoly::monomial(BigInt::from(3), 3));
        assert_eq!(cube.d_operator(2), GFPoly::monomial(BigInt::from(9), 3));
        assert_eq!(f4().d_operator(0), f4());
        assert_eq!(f4().eval_at_one(), BigInt::from(16));
        assert_eq!(f4().d_operator(1).eval_at_one(), BigInt::from(30));
        assert_eq!(f4().d_operator(2).eval_at_one(), BigInt::from(96));
        assert_eq!(
            f4().power_sums(2),
            vec![BigInt::from(16), BigInt::from(30), BigInt::from(96)]
        );
    }

    #[test]
    fn trims_and_displays() {
        assert_eq!(GFPoly::from_i64(&[1, 0, 0]).degree(), Some(0));
        assert_eq!(GFPoly::from_i64(&[0, 0]).degree(), None);
        assert_eq!(f4().to_string(), "4 + 4q + 3q^2 + 5q^4");
        assert_eq!(GFPoly::from_i64(&[0, 0, -2, -2, 4]).to_string(), "-2q^2 - 2q^3 + 4q^4");
        assert_eq!(GFPoly::from_i64(&[0, 1]).to_string(), "q");
    }

    proptest! {
        #[test]
        fn d_scales_each_coefficient(coeffs in prop::collection::vec(-1000i64..1000, 0..12), r in 0u32..6) {
            let p = GFPoly::from_i64(&coeffs);
            let d = p.d_operator(r);
            for i in 0..coeffs.len() {
                prop_assert_eq!(d.coeff(i), p.coeff(i) * num_traits::pow(BigInt::from(i), r as usize));
            }
            prop_assert_eq!(d.eval_at_one(), p.power_sum(r));
        }

        #[test]
        fn product_degree_adds(a in prop::collection::vec(1i64..50, 1..8), b in prop::collection::vec(1i64..50, 1..8)) {
            let (pa, pb) = (GFPoly::from_i64(&a), GFPoly::from_i64(&b));
            let prod = &pa * &pb;
            prop_assert_eq!(prod.degree().unwrap(), pa.degree().unwrap() + pb.degree().unwrap());
            prop_assert_eq!(prod.eval_at_one(), pa.eval_at_one() * pb.eval_at_one());
        }
    }
}
