//! Expected number of correct guesses for a deck with `C` increasing sequences.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::arith::{binom, pow_u, Rat, ShuffleSpec};
use crate::decimal::Decimal;
use crate::error::{Error, Result};
use crate::shuffle::{self, SampleReport};

const GUARD_DIGITS: u32 = 10;

/// Number of words in which top-half position `i` holds the guessed card
/// `floor(i/C) + 1` taken from sequence `m`.
///
/// Sums `binom(i-1, T) m^T (C-m)^(i-1-T) binom(n-i, S) (m-1)^S (C-m+1)^(n-i-S)`
/// over `T + S = floor(i/C)` with `0^0 = 1`.
pub fn inner_count(n: u64, c: u64, i: u64, m: u64) -> BigInt {
    let v = i / c;
    let rest = n - i;
    let (a, b, cc, d) = (m, c - m, m - 1, c - m + 1);
    let mut lo = v.saturating_sub(rest);
    let mut hi = v.min(i - 1);
    if b == 0 {
        lo = lo.max(i - 1);
        hi = hi.min(i - 1);
    }
    if cc == 0 {
        lo = lo.max(v);
        hi = hi.min(v);
    }
    if lo > hi {
        return BigInt::zero();
    }
    let term = |t: u64| {
        let s = v - t;
        binom(i - 1, t as i64)
            * pow_u(a, t)
            * pow_u(b, i - 1 - t)
            * binom(rest, s as i64)
            * pow_u(cc, s)
            * pow_u(d, rest - s)
    };
    let mut current = term(lo);
    let mut total = current.clone();
    for t in lo..hi {
        let s = v - t;
        let numer = u128::from(i - 1 - t) * u128::from(a) * u128::from(s) * u128::from(d);
        let denom = u128::from(t + 1) * u128::from(b) * u128::from(rest - s + 1) * u128::from(cc);
        current = current * BigInt::from(numer) / BigInt::from(denom);
        total += &current;
    }
    total
}

/// [`inner_count`] as a probability over the `C^(n-1)` words that fix letter `i`.
pub fn inner_probability(n: u64, c: u64, i: u64, m: u64) -> Rat {
    Rat::new(inner_count(n, c, i, m), pow_u(c, n - 1))
}

fn half_sum(n: u64, c: u64, positions: u64) -> Rat {
    let total: BigInt = (1..=positions)
        .into_par_iter()
        .map(|i| (1..=c).map(|m| inner_count(n, c, i, m)).sum::<BigInt>())
        .sum();
    Rat::new(total, pow_u(c, n))
}

/// `E_C[Y]`, the expected correct guesses among the top `ceil(n/2)` positions.
pub fn expected_top_half(n: usize, c: u64) -> Result<Rat> {
    let spec = ShuffleSpec::with_sequences(n, c)?;
    Ok(half_sum(n as u64, c, spec.top_len() as u64))
}

/// `E_C[Z]` for the bottom `n - ceil(n/2)` positions, read off the mirrored deck.
pub fn expected_bottom_half(n: usize, c: u64) -> Result<Rat> {
    let spec = ShuffleSpec::with_sequences(n, c)?;
    Ok(half_sum(n as u64, c, spec.bottom_len() as u64))
}

/// `E_C[X] = E_C[Y] + E_C[Z]`.
pub fn expected_total(n: usize, c: u64) -> Result<Rat> {
    Ok(expected_top_half(n, c)? + expected_bottom_half(n, c)?)
}

/// `2 sqrt(n / ((C-1) pi))`, the leading behaviour of `E_C[X]`; the error is `O(1)`.
pub fn leading_term(n: usize, c: u64, digits: u32) -> Result<Decimal> {
    if c < 2 {
        return Err(Error::Undefined(format!("leading term needs C >= 2, got C = {c}")));
    }
    let work = digits + GUARD_DIGITS;
    let pi = Decimal::pi(work);
    let denom = Decimal::from_int(c - 1, work).mul(&pi);
    let ratio = Decimal::from_int(n as u64, work).div(&denom).expect("positive");
    let root = ratio.sqrt().expect("positive");
    Ok(root.mul(&Decimal::from_int(2, work)).round_to(digits))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KShuffleMode {
    Exact,
    Leading { digits: u32 },
    Simulate { trials: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KShuffleQuery {
    pub n: usize,
    pub sequences: u64,
    pub mode: KShuffleMode,
}

#[derive(Debug, Clone, PartialEq)]
pub enum KShuffleAnswer {
    Exact(Rat),
    Leading(Decimal),
    Simulated(SampleReport),
}

impl KShuffleQuery {
    pub fn with_shuffles(n: usize, k: u32, mode: KShuffleMode) -> Result<KShuffleQuery> {
        let spec = ShuffleSpec::with_shuffles(n, k)?;
        Ok(KShuffleQuery { n, sequences: spec.sequences(), mode })
    }

    pub fn run(&self) -> Result<KShuffleAnswer> {
        let spec = ShuffleSpec::with_sequences(self.n, self.sequences)?;
        match self.mode {
            KShuffleMode::Exact => expected_total(self.n, self.sequences).map(KShuffleAnswer::Exact),
            KShuffleMode::Leading { digits } => {
                leading_term(self.n, self.sequences, digits).map(KShuffleAnswer::Leading)
            }
            KShuffleMode::Simulate { trials, seed } => {
                shuffle::gsr_sample(&spec, trials, seed).map(KShuffleAnswer::Simulated)
            }
        }
    }
}

/// Sum of [`inner_probability`] over sequences `m`, i.e. the chance that position `i` is guessed right.
pub fn position_probability(n: u64, c: u64, i: u64) -> Rat {
    (1..=c).map(|m| inner_probability(n, c, i, m)).sum::<Rat>() / Rat::from_integer(BigInt::from(c))
}
