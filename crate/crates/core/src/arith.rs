//! Exact arithmetic helpers shared by every module: rationals, binomial
//! coefficients and the problem parameters of a shuffled deck.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Rat = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rat_int<T: Into<BigInt>>(value: T) -> Rat {
    Rat::from_integer(value.into())
}

pub fn pow2(exp: u64) -> BigInt {
    BigInt::one() << exp
}

/// Binomial coefficient, zero whenever `k` lies outside `0..=n`.
pub fn binom(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc *= n - j;
        acc /= j + 1;
    }
    acc
}

/// `binom(2L, L) / 4^L`, the central-binomial ratio every closed form is written in.
pub fn central_ratio(l: u64) -> Rat {
    Rat::new(binom(2 * l, l as i64), pow2(2 * l))
}

/// `base^exp` with the `0^0 = 1` convention.
pub fn pow_u(base: u64, exp: u64) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

pub fn rat_pow(base: &Rat, exp: u32) -> Rat {
    num_traits::pow(base.clone(), exp as usize)
}

pub fn rat_to_f64(value: &Rat) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Parameters of one game: deck size and the number of increasing sequences
/// the shuffled deck is made of (`2^k` after `k` riffle shuffles).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ShuffleSpec {
    n: usize,
    sequences: u64,
}

impl ShuffleSpec {
    pub fn one_shuffle(n: usize) -> Result<Self> {
        Self::with_sequences(n, 2)
    }

    pub fn with_shuffles(n: usize, k: u32) -> Result<Self> {
        if k >= 63 {
            return Err(Error::InvalidInput(format!("shuffle count {k} is too large")));
        }
        Self::with_sequences(n, 1u64 << k)
    }

    pub fn with_sequences(n: usize, sequences: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDeck);
        }
        if sequences == 0 {
            return Err(Error::NoSequences);
        }
        Ok(ShuffleSpec { n, sequences })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of increasing sequences, `C`.
    pub fn sequences(&self) -> u64 {
        self.sequences
    }

    /// Shuffle count `k` when `C = 2^k`.
    pub fn shuffles(&self) -> Option<u32> {
        self.sequences
            .is_power_of_two()
            .then(|| self.sequences.trailing_zeros())
    }

    /// Length of the top half, `ceil(n / 2)`.
    pub fn top_len(&self) -> usize {
        self.n.div_ceil(2)
    }

    pub fn bottom_len(&self) -> usize {
        self.n - self.top_len()
    }

    pub fn quarter(&self) -> Quarter {
        Quarter::of(self.n as u64)
    }
}

/// The unique decomposition `n = 4L + alpha` with `alpha` in `{-1, 0, 1, 2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Quarter {
    pub l: u64,
    pub alpha: i8,
}

impl Quarter {
    pub fn of(n: u64) -> Quarter {
        match n % 4 {
            0 => Quarter { l: n / 4, alpha: 0 },
            1 => Quarter { l: n / 4, alpha: 1 },
            2 => Quarter { l: n / 4, alpha: 2 },
            _ => Quarter { l: n / 4 + 1, alpha: -1 },
        }
    }

    pub fn n(&self) -> u64 {
        (4 * self.l as i64 + self.alpha as i64) as u64
    }
}
