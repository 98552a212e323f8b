//! Closed forms: index-product building blocks, their partition-weighted sums,
//! exact interpolation of half-deck moments and assembled moment expressions.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{binom, central_ratio, pow2, rat, rat_int, rat_pow, Quarter, Rat};
use crate::error::{Error, Result};
use crate::gf_fast;
use crate::linsolve;
use crate::moments;
use crate::ratpoly::RatPoly;

/// Largest top half accepted by [`m_r_bruteforce`] and [`partition_combine`].
pub const BRUTE_MAX_H: usize = 24;
/// Largest order accepted by [`m_r_bruteforce`] and [`partition_combine`].
pub const BRUTE_MAX_R: u32 = 4;
/// First `L` used when fitting half-deck moments.
pub const FIT_L0: u64 = 2;
/// Number of `L` values held out of every fit and checked afterwards.
pub const HOLDOUT: u64 = 2;
/// Smallest deck for which the closed form of `E[X]` is exact.
pub const CLOSED_FORM_EX_MIN_N: usize = 4;
/// Highest order accepted by [`assemble_moment_expression`].
pub const MAX_EXPRESSION_ORDER: u32 = 8;

fn floor_half(i: usize) -> i64 {
    (i / 2) as i64
}

/// `C[Y_{i1} ... Y_{ir}]` for top-half positions `i1 <= ... <= ir` of an `n`-card deck.
/// Repeated indices collapse since each `Y_i` is an indicator.
pub fn building_block(indices: &[usize], n: usize) -> Result<Rat> {
    let h = n.div_ceil(2);
    let bad = || Error::InvalidIndices { indices: indices.to_vec(), h };
    if indices.windows(2).any(|w| w[0] > w[1]) || indices.first().is_some_and(|&i| i == 0) {
        return Err(bad());
    }
    if indices.last().is_some_and(|&i| i > h) {
        return Err(bad());
    }
    let mut distinct = indices.to_vec();
    distinct.dedup();
    Ok(block_value(&distinct, n))
}

fn block_value(indices: &[usize], n: usize) -> Rat {
    let Some(&last) = indices.last() else {
        return rat_int(pow2(n as u64));
    };
    let mut product = binom(indices[0] as u64 - 1, floor_half(indices[0]));
    for w in indices.windows(2) {
        product *= binom((w[1] - w[0] - 1) as u64, floor_half(w[1]) - floor_half(w[0]) - 1);
    }
    Rat::new(product * pow2(n as u64), pow2(last as u64))
}

/// `C[Y_i]` by the double sum over the first-sequence length `a` in the top
/// half and the second-sequence length `b` in the bottom half.
pub fn c_yi_double_sum(i: usize, n: usize) -> BigInt {
    let h = n.div_ceil(2);
    let lead = binom(i as u64 - 1, floor_half(i));
    let mut total = BigInt::zero();
    for a in 0..=h as i64 {
        for b in 0..=(n - h) as i64 {
            total += &lead * binom((h - i) as u64, a - floor_half(i) - 1) * binom((n - h) as u64, b);
        }
    }
    total
}

fn guard(h: usize, r: u32) -> Result<()> {
    if h > BRUTE_MAX_H || r > BRUTE_MAX_R {
        return Err(Error::SizeGuard {
            what: "index-tuple summation",
            detail: format!("needs h <= {BRUTE_MAX_H} and r <= {BRUTE_MAX_R}, got h = {h}, r = {r}"),
        });
    }
    Ok(())
}

/// `M_r(h)`: the building block summed over all `1 <= i1 < ... < ir <= h`.
pub fn m_r_bruteforce(h: usize, r: u32, n: usize) -> Result<Rat> {
    guard(h, r)?;
    fn walk(start: usize, h: usize, left: u32, n: usize, picked: &mut Vec<usize>) -> Rat {
        if left == 0 {
            return block_value(picked, n);
        }
        let mut total = Rat::zero();
        for i in start..=h {
            picked.push(i);
            total += walk(i + 1, h, left - 1, n, picked);
            picked.pop();
        }
        total
    }
    Ok(walk(1, h, r, n, &mut Vec::new()))
}

/// Integer partitions of `r` as part multiplicities `part -> count`.
fn partitions(r: u32) -> Vec<BTreeMap<u32, u32>> {
    fn rec(left: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(current.clone());
            return;
        }
        for p in (1..=left.min(max)).rev() {
            current.push(p);
            rec(left - p, p, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(r, r, &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|parts| {
            let mut counts = BTreeMap::new();
            for p in parts {
                *counts.entry(p).or_insert(0) += 1;
            }
            counts
        })
        .collect()
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, x| acc * x)
}

/// Weight of `M_m` in `C[Y_A^r]`, for each number of parts `m`.
pub fn partition_weights(r: u32) -> BTreeMap<u32, BigInt> {
    let mut weights = BTreeMap::new();
    for counts in partitions(r) {
        let m: u32 = counts.values().sum();
        let mut denom = BigInt::one();
        for (&part, &mult) in &counts {
            denom *= num_traits::pow(factorial(part), mult as usize) * factorial(mult);
        }
        let weight = factorial(r) * factorial(m) / denom;
        *weights.entry(m).or_insert_with(BigInt::zero) += weight;
    }
    weights
}

/// `C[Y_A^r]` as the partition-weighted combination of `M_1(h), ..., M_r(h)`.
pub fn partition_combine(h: usize, r: u32, n: usize) -> Result<Rat> {
    guard(h, r)?;
    if r == 0 {
        return m_r_bruteforce(h, 0, n);
    }
    let mut total = Rat::zero();
    for (m, weight) in partition_weights(r) {
        total += Rat::from_integer(weight) * m_r_bruteforce(h, m, n)?;
    }
    Ok(total)
}

/// Parity of a half-deck length: `2L` or `2L - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn half_len(self, l: u64) -> u64 {
        match self {
            Parity::Even => 2 * l,
            Parity::Odd => 2 * l - 1,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl std::str::FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Parity> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            other => Err(Error::InvalidInput(format!("unknown parity {other:?}"))),
        }
    }
}

/// `D^r F_A(1)` as `P(L) binom(2L, L) + Q(L) 4^L` for a half of the given parity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedHalfMoment {
    pub r: u32,
    pub parity: Parity,
    pub p: RatPoly,
    pub q: RatPoly,
    pub fit_points: Vec<u64>,
    pub held_out: Vec<u64>,
}

impl ClosedHalfMoment {
    /// `D^r F_A(1)` for the half of length `2L` or `2L - 1`.
    pub fn eval(&self, l: u64) -> Rat {
        let at = rat_int(l);
        self.p.eval(&at) * rat_int(binom(2 * l, l as i64)) + self.q.eval(&at) * rat_int(pow2(2 * l))
    }

    /// `E[Y^r]`, i.e. [`Self::eval`] divided by `2^h`.
    pub fn expectation(&self, l: u64) -> Rat {
        self.eval(l) / rat_int(pow2(self.parity.half_len(l)))
    }

    pub fn degree_bounds(r: u32) -> (usize, usize) {
        (r.div_ceil(2) as usize, (r / 2) as usize)
    }
}

fn half_value(r: u32, parity: Parity, l: u64) -> Rat {
    rat_int(gf_fast::f_a(parity.half_len(l) as usize).power_sum(r))
}

fn basis_row(l: u64, dp: usize, dq: usize) -> Vec<Rat> {
    let central = rat_int(binom(2 * l, l as i64));
    let four = rat_int(pow2(2 * l));
    let at = rat_int(l);
    let mut row = Vec::with_capacity(dp + dq + 2);
    for k in 0..=dp {
        row.push(&central * rat_pow(&at, k as u32));
    }
    for k in 0..=dq {
        row.push(&four * rat_pow(&at, k as u32));
    }
    row
}

fn fit(r: u32, parity: Parity, dp: usize, dq: usize) -> Result<ClosedHalfMoment> {
    let unknowns = (dp + dq + 2) as u64;
    let fit_points: Vec<u64> = (FIT_L0..FIT_L0 + unknowns).collect();
    let held_out: Vec<u64> = (FIT_L0 + unknowns..FIT_L0 + unknowns + HOLDOUT).collect();
    let what = format!("order {r} {parity} half (deg P <= {dp}, deg Q <= {dq})");
    let a: Vec<Vec<Rat>> = fit_points.iter().map(|&l| basis_row(l, dp, dq)).collect();
    let b: Vec<Rat> = fit_points.iter().map(|&l| half_value(r, parity, l)).collect();
    let x = linsolve::solve(&a, &b).ok_or_else(|| Error::SingularSystem {
        what: what.clone(),
        l_first: fit_points[0],
        l_last: *fit_points.last().expect("nonempty"),
    })?;
    let closed = ClosedHalfMoment {
        r,
        parity,
        p: RatPoly::from_coeffs(x[..=dp].to_vec()),
        q: RatPoly::from_coeffs(x[dp + 1..].to_vec()),
        fit_points,
        held_out: held_out.clone(),
    };
    for &l in &held_out {
        if closed.eval(l) != half_value(r, parity, l) {
            return Err(Error::FitValidation { what, l });
        }
    }
    Ok(closed)
}

/// Recovers `P` and `Q` for `D^r F_A(1)` by an exact fit on `L = 2..r+3`,
/// validated on the next two values of `L`.
pub fn interpolate_half_moment(r: u32, parity: Parity) -> Result<ClosedHalfMoment> {
    let (dp, dq) = ClosedHalfMoment::degree_bounds(r);
    fit(r, parity, dp, dq)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeBoundCheck {
    pub r: u32,
    pub parity: Parity,
    pub widened: ClosedHalfMoment,
    pub holds: bool,
}

/// Refits with one extra degree in both `P` and `Q`; the bounds hold when
/// the extra leading coefficients vanish.
pub fn check_degree_bounds(r: u32, parity: Parity) -> Result<DegreeBoundCheck> {
    let (dp, dq) = ClosedHalfMoment::degree_bounds(r);
    let widened = fit(r, parity, dp + 1, dq + 1)?;
    let holds = widened.p.degree().is_none_or(|d| d <= dp) && widened.q.degree().is_none_or(|d| d <= dq);
    Ok(DegreeBoundCheck { r, parity, widened, holds })
}

/// `E[X]` for one shuffle, with a flag set when the deck is too small for
/// the closed form and the value came from the generating function instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormValue {
    pub value: Rat,
    pub delegated: bool,
}

/// `E[X] = (n + 1 - alpha/2) binom(2L, L)/4^L - 1 + 6/2^n` for `n = 4L + alpha`.
pub fn closed_form_ex(n: usize) -> Result<ClosedFormValue> {
    if n < CLOSED_FORM_EX_MIN_N {
        let value = moments::raw_moment(n, 1, gf_fast::Tier::Fast)?;
        return Ok(ClosedFormValue { value, delegated: true });
    }
    Ok(ClosedFormValue { value: closed_form_ex_formula(n as u64), delegated: false })
}

/// The closed form itself, with no small-deck routing.
pub fn closed_form_ex_formula(n: u64) -> Rat {
    let Quarter { l, alpha } = Quarter::of(n);
    let lead = rat_int(n + 1) - rat(i64::from(alpha), 2);
    lead * central_ratio(l) - Rat::one() + Rat::new(BigInt::from(6), pow2(n))
}

/// `sum_j terms[j](L) B^j / (2L+2)^denom_power + tail / 2^n` with `B = binom(2L, L)/4^L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentExpression {
    pub r: u32,
    pub alpha: i8,
    pub terms: Vec<RatPoly>,
    pub denom_power: u32,
    pub tail: Rat,
}

impl MomentExpression {
    pub fn eval(&self, l: u64) -> Rat {
        let n = Quarter { l, alpha: self.alpha }.n();
        let b = central_ratio(l);
        let at = rat_int(l);
        let mut b_power = Rat::one();
        let mut body = Rat::zero();
        for term in &self.terms {
            body += term.eval(&at) * &b_power;
            b_power *= &b;
        }
        let denom = rat_pow(&rat_int(2 * l + 2), self.denom_power);
        body / denom + &self.tail / rat_int(pow2(n))
    }

    /// `E[X^r]` at a specific deck size, which must share this expression's `alpha`.
    pub fn eval_at_n(&self, n: u64) -> Result<Rat> {
        let quarter = Quarter::of(n);
        if quarter.alpha != self.alpha {
            return Err(Error::InvalidInput(format!(
                "n = {n} has alpha = {}, expression is for alpha = {}",
                quarter.alpha, self.alpha
            )));
        }
        Ok(self.eval(quarter.l))
    }

    fn render_body(&self) -> String {
        let mut out = String::new();
        for (j, term) in self.terms.iter().enumerate().skip(1).rev() {
            if term.is_zero() {
                continue;
            }
            let lead = term.coeffs().last().expect("nonzero");
            let negative = lead.is_negative();
            let magnitude = if negative { -term } else { term.clone() };
            out.push_str(match (out.is_empty(), negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            });
            let atom = if j == 1 { "B".to_string() } else { format!("B^{j}") };
            match magnitude.degree() {
                Some(0) if magnitude.coeff(0).is_one() => {}
                Some(0) if magnitude.coeff(0).is_integer() => out.push_str(&magnitude.coeff(0).to_string()),
                _ => out.push_str(&format!("({})", magnitude.display_compact("L"))),
            }
            out.push_str(&atom);
        }
        if let Some(constant) = self.terms.first().filter(|t| !t.is_zero()) {
            let text = constant.display_spaced("L");
            if out.is_empty() {
                out = text;
            } else if let Some(rest) = text.strip_prefix('-') {
                out.push_str(&format!(" - {rest}"));
            } else {
                out.push_str(&format!(" + {text}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for MomentExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self.render_body();
        let mut out = match self.denom_power {
            0 => body,
            1 => format!("({body})/(2L+2)"),
            d => format!("({body})/(2L+2)^{d}"),
        };
        if !self.tail.is_zero() {
            let sign = if self.tail.is_negative() { '-' } else { '+' };
            out.push_str(&format!(" {sign} {}/2^n", self.tail.abs()));
        }
        f.write_str(&out)
    }
}

/// A polynomial in `B` over `Q[L]`, divided by `(2L+2)^denom`.
#[derive(Debug, Clone)]
struct BSeries {
    terms: Vec<RatPoly>,
    denom: u32,
}

impl BSeries {
    fn one() -> BSeries {
        BSeries { terms: vec![RatPoly::constant(Rat::one())], denom: 0 }
    }

    fn lift(&self, denom: u32) -> BSeries {
        let factor = RatPoly::from_fracs(&[(2, 1), (2, 1)]).pow(denom - self.denom);
        BSeries { terms: self.terms.iter().map(|t| t * &factor).collect(), denom }
    }

    fn mul(&self, other: &BSeries) -> BSeries {
        let mut terms = vec![RatPoly::zero(); self.terms.len() + other.terms.len() - 1];
        for (i, a) in self.terms.iter().enumerate() {
            for (j, b) in other.terms.iter().enumerate() {
                terms[i + j] = &terms[i + j] + &(a * b);
            }
        }
        BSeries { terms, denom: self.denom + other.denom }
    }

    fn add_scaled(&mut self, other: &BSeries, by: &Rat) {
        let denom = self.denom.max(other.denom);
        let mut left = self.lift(denom);
        let right = other.lift(denom);
        if left.terms.len() < right.terms.len() {
            left.terms.resize(right.terms.len(), RatPoly::zero());
        }
        for (k, t) in right.terms.iter().enumerate() {
            left.terms[k] = &left.terms[k] + &t.scale(by);
        }
        *self = left;
    }

    fn reduce(mut self) -> BSeries {
        let root = rat(-1, 1);
        while self.denom > 0 {
            let divided: Option<Vec<RatPoly>> = self.terms.iter().map(|t| t.divide_by_root(&root)).collect();
            let Some(divided) = divided else { break };
            self.terms = divided.iter().map(|t| t.scale(&rat(1, 2))).collect();
            self.denom -= 1;
        }
        while self.terms.len() > 1 && self.terms.last().is_some_and(RatPoly::is_zero) {
            self.terms.pop();
        }
        self
    }
}

/// `E[Y^i]` for a half of length `2L + offset`, `offset` in `{-1, 0, 1}`.
fn half_expectation(i: u32, offset: i64, fits: &mut BTreeMap<(u32, Parity), ClosedHalfMoment>) -> Result<BSeries> {
    if i == 0 {
        return Ok(BSeries::one());
    }
    let parity = if offset == 0 { Parity::Even } else { Parity::Odd };
    if !fits.contains_key(&(i, parity)) {
        fits.insert((i, parity), interpolate_half_moment(i, parity)?);
    }
    let fitted = &fits[&(i, parity)];
    Ok(match offset {
        0 => BSeries { terms: vec![fitted.q.clone(), fitted.p.clone()], denom: 0 },
        -1 => BSeries { terms: vec![fitted.q.scale(&rat(2, 1)), fitted.p.scale(&rat(2, 1))], denom: 0 },
        _ => {
            let two_l_plus_one = RatPoly::from_fracs(&[(1, 1), (2, 1)]);
            let two_l_plus_two = RatPoly::from_fracs(&[(2, 1), (2, 1)]);
            BSeries {
                terms: vec![
                    (&fitted.q.shift(1) * &two_l_plus_two).scale(&rat(2, 1)),
                    (&fitted.p.shift(1) * &two_l_plus_one).scale(&rat(2, 1)),
                ],
                denom: 1,
            }
        }
    })
}

/// `E[X^r]` for every `n = 4L + alpha` as an expression in `L`, `B` and `2^-n`.
pub fn assemble_moment_expression(r: u32, alpha: i8) -> Result<MomentExpression> {
    if r > MAX_EXPRESSION_ORDER {
        return Err(Error::InvalidInput(format!("order must be at most {MAX_EXPRESSION_ORDER}, got {r}")));
    }
    if !(-1..=2).contains(&alpha) {
        return Err(Error::InvalidInput(format!("alpha must be in -1..=2, got {alpha}")));
    }
    let top_offset = i64::from(alpha + 1).div_euclid(2);
    let bottom_offset = i64::from(alpha).div_euclid(2);
    let mut fits = BTreeMap::new();
    let mut total = BSeries { terms: vec![RatPoly::zero()], denom: 0 };
    for i in 0..=r {
        let top = half_expectation(i, top_offset, &mut fits)?;
        let bottom = half_expectation(r - i, bottom_offset, &mut fits)?;
        total.add_scaled(&top.mul(&bottom), &rat_int(binom(u64::from(r), i64::from(i))));
    }
    let total = total.reduce();
    Ok(MomentExpression {
        r,
        alpha,
        terms: total.terms,
        denom_power: total.denom,
        tail: rat_int(moments::excess_e(r)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf_fast::Tier;

    #[test]
    fn building_block_examples() {
        assert_eq!(building_block(&[1], 4).unwrap(), rat(8, 1));
        assert_eq!(building_block(&[1, 2], 4).unwrap(), rat(4, 1));
        assert_eq!(building_block(&[1, 1, 2], 4).unwrap(), rat(4, 1));
        for n in 1..12 {
            assert_eq!(building_block(&[1], n).unwrap(), rat_int(pow2(n as u64 - 1)));
        }
        assert!(building_block(&[2, 1], 4).is_err());
        assert!(building_block(&[3], 4).is_err());
        assert!(building_block(&[0], 4).is_err());
    }

    #[test]
    fn single_index_double_sum() {
        for n in 1..=24usize {
            let h = n.div_ceil(2);
            for i in 1..=h.min(12) {
                assert_eq!(rat_int(c_yi_double_sum(i, n)), building_block(&[i], n).unwrap());
            }
        }
    }

    #[test]
    fn bruteforce_sums() {
        assert_eq!(m_r_bruteforce(2, 1, 4).unwrap() / rat(16, 1), rat(3, 4));
        assert_eq!(m_r_bruteforce(1, 2, 4).unwrap(), rat(0, 1));
        assert!(m_r_bruteforce(25, 1, 50).is_err());
        assert!(m_r_bruteforce(10, 5, 20).is_err());
    }

    #[test]
    fn pair_sum_closed_form() {
        for l in 1..=12u64 {
            let n = 4 * l as usize;
            let got = m_r_bruteforce(2 * l as usize, 2, n).unwrap() / rat_int(pow2(n as u64));
            let b = central_ratio(l);
            let expected = rat_int(l) + rat(3, 2) - b * (rat_int(3 * l) + rat(3, 2));
            assert_eq!(got, expected, "L = {l}");
        }
    }

    #[test]
    fn weights_match_expansions() {
        let w = |r| partition_weights(r).into_values().collect::<Vec<_>>();
        assert_eq!(w(1), vec![BigInt::from(1)]);
        assert_eq!(w(2), vec![BigInt::from(1), BigInt::from(2)]);
        assert_eq!(w(3), vec![BigInt::from(1), BigInt::from(6), BigInt::from(6)]);
        assert_eq!(w(4), vec![BigInt::from(1), BigInt::from(14), BigInt::from(36), BigInt::from(24)]);
    }

    #[test]
    fn partition_combination_small() {
        assert_eq!(partition_combine(1, 2, 2).unwrap(), m_r_bruteforce(1, 1, 2).unwrap());
        let (top, _) = moments::half_moment_numeric(16, 3).unwrap();
        assert_eq!(partition_combine(8, 3, 16).unwrap(), top);
    }

    #[test]
    fn first_order_fits() {
        let even = interpolate_half_moment(1, Parity::Even).unwrap();
        assert_eq!(even.p, RatPoly::from_fracs(&[(1, 2), (2, 1)]));
        assert_eq!(even.q, RatPoly::from_fracs(&[(-1, 2)]));
        assert_eq!(even.fit_points, vec![2, 3, 4]);
        assert_eq!(even.held_out, vec![5, 6]);
        let odd = interpolate_half_moment(1, Parity::Odd).unwrap();
        assert_eq!(odd.p, RatPoly::from_fracs(&[(0, 1), (1, 1)]));
        assert_eq!(odd.q, RatPoly::from_fracs(&[(-1, 4)]));
        for l in 1..=8 {
            assert_eq!(odd.eval(l), half_value(1, Parity::Odd, l));
        }
    }

    #[test]
    fn zeroth_order_is_normalization() {
        let even = interpolate_half_moment(0, Parity::Even).unwrap();
        assert!(even.p.is_zero());
        assert_eq!(even.q, RatPoly::constant(rat(1, 1)));
        assert_eq!(interpolate_half_moment(0, Parity::Odd).unwrap().expectation(3), rat(1, 1));
    }

    #[test]
    fn closed_form_mean() {
        assert_eq!(closed_form_ex(4).unwrap(), ClosedFormValue { value: rat(30, 16), delegated: false });
        let small = closed_form_ex(3).unwrap();
        assert!(small.delegated);
        assert_eq!(small.value, rat(14, 8));
        assert_eq!(closed_form_ex_formula(3), rat(2, 1));
        for n in 4..=40 {
            assert_eq!(closed_form_ex(n).unwrap().value, moments::raw_moment(n, 1, Tier::Fastest).unwrap());
        }
    }

    #[test]
    fn expression_rendering() {
        assert_eq!(assemble_moment_expression(1, 0).unwrap().to_string(), "(4L+1)B - 1 + 6/2^n");
        assert_eq!(assemble_moment_expression(0, 0).unwrap().to_string(), "1");
        assert!(assemble_moment_expression(9, 0).is_err());
        assert!(assemble_moment_expression(1, 3).is_err());
    }

    #[test]
    fn expressions_match_generating_function() {
        for alpha in -1..=2i8 {
            for r in 1..=3 {
                let expr = assemble_moment_expression(r, alpha).unwrap();
                for l in 2..=5u64 {
                    let n = Quarter { l, alpha }.n() as usize;
                    assert_eq!(expr.eval(l), moments::raw_moment(n, r, Tier::Fastest).unwrap(), "alpha {alpha} r {r} n {n}");
                }
            }
        }
        let expr = assemble_moment_expression(2, 0).unwrap();
        assert!(expr.eval_at_n(13).is_err());
        assert_eq!(expr.eval_at_n(12).unwrap(), expr.eval(3));
    }
}
