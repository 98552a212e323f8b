//! Exact raw, central and standardized moments of the number of correct guesses.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{binom, pow2, pow_u, Rat, ShuffleSpec};
use crate::closedform;
use crate::decimal::Decimal;
use crate::error::{Error, Result};
use crate::gf_fast::{self, Tier, FASTEST_MIN_N};
use crate::gfpoly::GFPoly;

/// Default number of decimal digits for standardized moments.
pub const DEFAULT_PRECISION: u32 = 50;

/// Decks at most this large get their moments straight from the generating function
/// in [`central_and_standardized`]; larger decks use the assembled closed forms.
pub const DIRECT_MAX_N: usize = 400;

fn scaled(power_sums: Vec<BigInt>, n: usize) -> Vec<Rat> {
    let total = pow2(n as u64);
    power_sums.into_iter().map(|c| Rat::new(c, total.clone())).collect()
}

/// `E[X^0], ..., E[X^max_r]` from `F_n` built with the given tier.
pub fn raw_moments(n: usize, max_r: u32, tier: Tier) -> Result<Vec<Rat>> {
    let generated = gf_fast::generate(n, tier)?;
    Ok(scaled(generated.poly.power_sums(max_r), n))
}

/// `E[X^r] = D^r F_n(1) / 2^n`.
pub fn raw_moment(n: usize, r: u32, tier: Tier) -> Result<Rat> {
    let generated = gf_fast::generate(n, tier)?;
    Ok(Rat::new(generated.poly.power_sum(r), pow2(n as u64)))
}

/// `e(r) = 4*4^r - 2(3^r + 2^r)`.
pub fn excess_e(r: u32) -> BigInt {
    let r = u64::from(r);
    pow_u(4, r) * 4 - (pow_u(3, r) + pow_u(2, r)) * 2
}

/// `(C[Y_A^r], C[Z_B^r])`, the outcome-weighted sums of powers of the
/// first-sequence hits in the top half and second-sequence hits in the bottom half.
pub fn half_moment_numeric(n: usize, r: u32) -> Result<(Rat, Rat)> {
    let spec = ShuffleSpec::one_shuffle(n)?;
    let (h, nb) = (spec.top_len(), spec.bottom_len());
    let top = gf_fast::f_a(h).power_sum(r) * pow2(nb as u64);
    let bottom = gf_fast::f_b(n, h).power_sum(r) * pow2(h as u64);
    Ok((Rat::from_integer(top), Rat::from_integer(bottom)))
}

/// `E[X^r]` from the independent halves plus the excess term.
pub fn assemble_raw_from_halves(n: usize, r: u32) -> Result<Rat> {
    if n < FASTEST_MIN_N {
        return Err(Error::SizeGuard {
            what: "half-deck assembly",
            detail: format!("needs n >= {FASTEST_MIN_N}, got {n}"),
        });
    }
    let h = n.div_ceil(2);
    let top = gf_fast::f_a(h).power_sums(r);
    let bottom = gf_fast::f_b(n, h).power_sums(r);
    let combined: BigInt = (0..=r)
        .map(|i| binom(u64::from(r), i64::from(i)) * &top[i as usize] * &bottom[(r - i) as usize])
        .sum();
    Ok(Rat::new(combined + excess_e(r), pow2(n as u64)))
}

/// Central moments from raw moments `raw[0..]` by binomial expansion about the mean.
pub fn central_from_raw(raw: &[Rat]) -> Vec<Rat> {
    let Some(mean) = raw.get(1).cloned() else {
        return raw.to_vec();
    };
    let neg_mean = -mean;
    (0..raw.len())
        .map(|r| {
            let mut power = Rat::one();
            let mut total = Rat::zero();
            for i in (0..=r).rev() {
                total += Rat::from_integer(binom(r as u64, i as i64)) * &raw[i] * &power;
                power *= &neg_mean;
            }
            total
        })
        .collect()
}

/// `central[r] / variance^(r/2)` to `digits` decimals; `None` when the variance is zero.
pub fn standardize(central: &[Rat], digits: u32) -> Option<Vec<Decimal>> {
    let variance = central.get(2)?;
    if !variance.is_positive() {
        return None;
    }
    Some(
        central
            .iter()
            .enumerate()
            .map(|(r, c)| {
                let squared = c * c / crate::arith::rat_pow(variance, r as u32);
                let magnitude = Decimal::sqrt_rat(&squared, digits).expect("non-negative");
                if c.is_negative() {
                    magnitude.neg()
                } else {
                    magnitude
                }
            })
            .collect(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentSource {
    GeneratingFunction(Tier),
    ClosedForm,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentReport {
    pub n: usize,
    pub max_r: u32,
    pub source: MomentSource,
    pub raw: Vec<Rat>,
    pub central: Vec<Rat>,
    pub standardized: Option<Vec<Decimal>>,
    pub precision: u32,
}

/// Raw moments through `max_r`, from the fastest generating function for
/// moderate decks and from the assembled closed forms beyond [`DIRECT_MAX_N`].
pub fn raw_moments_auto(n: usize, max_r: u32) -> Result<(Vec<Rat>, MomentSource)> {
    if n <= DIRECT_MAX_N || max_r > closedform::MAX_EXPRESSION_ORDER {
        let generated = gf_fast::generate(n, Tier::Fastest)?;
        return Ok((scaled(generated.poly.power_sums(max_r), n), MomentSource::GeneratingFunction(generated.used)));
    }
    let quarter = crate::arith::Quarter::of(n as u64);
    let mut raw = vec![Rat::one()];
    for r in 1..=max_r {
        raw.push(closedform::assemble_moment_expression(r, quarter.alpha)?.eval(quarter.l));
    }
    Ok((raw, MomentSource::ClosedForm))
}

pub fn central_and_standardized(n: usize, max_r: u32, precision: u32) -> Result<MomentReport> {
    if max_r < 2 {
        return Err(Error::InvalidInput(format!("max_r must be at least 2, got {max_r}")));
    }
    ShuffleSpec::one_shuffle(n)?;
    let (raw, source) = raw_moments_auto(n, max_r)?;
    let central = central_from_raw(&raw);
    let standardized = standardize(&central, precision);
    Ok(MomentReport { n, max_r, source, raw, central, standardized, precision })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionRow {
    pub guesses: usize,
    pub count: BigInt,
    pub probability: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionTable {
    pub n: usize,
    pub tier_used: Tier,
    pub rows: Vec<DistributionRow>,
    pub mean: Rat,
}

impl DistributionTable {
    pub fn from_poly(n: usize, tier_used: Tier, poly: &GFPoly) -> DistributionTable {
        let total = pow2(n as u64);
        let rows = (0..=n)
            .map(|i| {
                let count = poly.coeff(i);
                let probability = Rat::new(count.clone(), total.clone());
                DistributionRow { guesses: i, count, probability }
            })
            .collect();
        let mean = Rat::new(poly.power_sum(1), total);
        DistributionTable { n, tier_used, rows, mean }
    }
}

/// Every count `0..=n` with its number of outcomes and exact probability.
pub fn distribution_table(n: usize, tier: Tier) -> Result<DistributionTable> {
    let generated = gf_fast::generate(n, tier)?;
    Ok(DistributionTable::from_poly(n, generated.used, &generated.poly))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    #[test]
    fn four_card_moments() {
        assert_eq!(raw_moment(4, 1, Tier::Slow).unwrap(), rat(30, 16));
        assert_eq!(raw_moment(4, 2, Tier::Fastest).unwrap(), rat(6, 1));
        assert_eq!(raw_moments(1, 5, Tier::Fast).unwrap(), vec![rat(1, 1); 6]);
    }

    #[test]
    fn excess_values() {
        assert_eq!(excess_e(0), BigInt::from(0));
        assert_eq!(excess_e(1), BigInt::from(6));
        assert_eq!(excess_e(2), BigInt::from(38));
        let poly = gf_fast::excess_poly();
        for r in 0..=10 {
            assert_eq!(excess_e(r), poly.power_sum(r));
        }
    }

    #[test]
    fn halves_and_assembly() {
        let (top, bottom) = half_moment_numeric(4, 0).unwrap();
        assert_eq!(top, rat_int(16));
        assert_eq!(top, bottom);
        let (a, b) = half_moment_numeric(10, 3).unwrap();
        assert_eq!(a, b);
        for n in [4, 7, 8, 12] {
            for r in 0..=5 {
                assert_eq!(assemble_raw_from_halves(n, r).unwrap(), raw_moment(n, r, Tier::Fast).unwrap());
            }
        }
        assert!(assemble_raw_from_halves(3, 1).is_err());
    }

    #[test]
    fn central_moments_of_small_deck() {
        let raw = raw_moments(4, 4, Tier::Fast).unwrap();
        let central = central_from_raw(&raw);
        assert_eq!(central[0], rat(1, 1));
        assert_eq!(central[1], rat(0, 1));
        assert_eq!(central[2], rat(6, 1) - rat(225, 64));
        let std = standardize(&central, 20).unwrap();
        assert_eq!(std[2], Decimal::from_int(1, 20));
    }

    #[test]
    fn single_card_has_no_spread() {
        let report = central_and_standardized(1, 3, 10).unwrap();
        assert!(report.standardized.is_none());
        assert!(central_and_standardized(5, 1, 10).is_err());
    }

    #[test]
    fn four_card_table() {
        let table = distribution_table(4, Tier::Slow).unwrap();
        let probs: Vec<Rat> = table.rows.iter().map(|r| r.probability.clone()).collect();
        assert_eq!(probs, vec![rat(4, 16), rat(4, 16), rat(3, 16), rat(0, 1), rat(5, 16)]);
        assert_eq!(table.mean, rat(15, 8));
        assert_eq!(probs.iter().sum::<Rat>(), rat(1, 1));
    }

    #[test]
    fn standardized_moments_extrapolate_to_limits() {
        // errors shrink like 1/sqrt(L): two Richardson steps over L, 4L, 16L
        let digits = 30;
        let values: Vec<Vec<Decimal>> = [3000, 12000, 48000]
            .iter()
            .map(|&n| central_and_standardized(n, 4, digits).unwrap().standardized.unwrap())
            .collect();
        let two = Decimal::from_int(2, digits);
        let three = Decimal::from_int(3, digits);
        let four = Decimal::from_int(4, digits);
        let tol = Decimal::from_rat(&rat(1, 1000), digits);
        let limits = [crate::decimal::skewness_limit(digits), crate::decimal::kurtosis_limit(digits)];
        for (k, limit) in [3usize, 4].into_iter().zip(limits) {
            let first = two.mul(&values[1][k]).sub(&values[0][k]);
            let second = two.mul(&values[2][k]).sub(&values[1][k]);
            let extrapolated = four.mul(&second).sub(&first).div(&three).unwrap();
            assert!(extrapolated.abs_diff(&limit) < tol, "order {k}: {extrapolated} vs {limit}");
            assert!(values[1][k].abs_diff(&limit) > tol);
        }
    }
}
