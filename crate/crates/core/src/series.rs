//! Truncated power series in `y` with exact coefficients, and the coefficient
//! identities behind the half-deck closed forms.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{binom, central_ratio, pow2, rat, rat_int, rat_pow, Rat};
use crate::closedform;
use crate::error::{Error, Result};
use crate::linsolve;
use crate::ratpoly::RatPoly;

/// Coefficients of `y^0 ..= y^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesGF {
    coeffs: Vec<Rat>,
}

impl SeriesGF {
    pub fn from_coeffs(mut coeffs: Vec<Rat>, order: usize) -> SeriesGF {
        coeffs.resize(order + 1, Rat::zero());
        SeriesGF { coeffs }
    }

    pub fn zero(order: usize) -> SeriesGF {
        SeriesGF::from_coeffs(Vec::new(), order)
    }

    pub fn one(order: usize) -> SeriesGF {
        SeriesGF::from_coeffs(vec![Rat::one()], order)
    }

    /// `1 - y`.
    pub fn one_minus_y(order: usize) -> SeriesGF {
        SeriesGF::from_coeffs(vec![Rat::one(), -Rat::one()], order)
    }

    /// `y^k`.
    pub fn y_pow(k: usize, order: usize) -> SeriesGF {
        let mut coeffs = vec![Rat::zero(); order + 1];
        if k <= order {
            coeffs[k] = Rat::one();
        }
        SeriesGF { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, s: usize) -> &Rat {
        &self.coeffs[s]
    }

    pub fn add(&self, other: &SeriesGF) -> SeriesGF {
        let order = self.order().min(other.order());
        SeriesGF { coeffs: (0..=order).map(|s| &self.coeffs[s] + &other.coeffs[s]).collect() }
    }

    pub fn sub(&self, other: &SeriesGF) -> SeriesGF {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, by: &Rat) -> SeriesGF {
        SeriesGF { coeffs: self.coeffs.iter().map(|c| c * by).collect() }
    }

    pub fn mul(&self, other: &SeriesGF) -> SeriesGF {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|s| (0..=s).map(|j| &self.coeffs[j] * &other.coeffs[s - j]).sum())
            .collect();
        SeriesGF { coeffs }
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Option<SeriesGF> {
        let c0 = self.coeffs[0].clone();
        if c0.is_zero() {
            return None;
        }
        let mut out: Vec<Rat> = Vec::with_capacity(self.coeffs.len());
        out.push(c0.recip());
        for s in 1..self.coeffs.len() {
            let acc: Rat = (1..=s).map(|j| &self.coeffs[j] * &out[s - j]).sum();
            out.push(-acc / &c0);
        }
        Some(SeriesGF { coeffs: out })
    }

    /// Square root with constant term 1; needs the constant term to be 1.
    pub fn sqrt(&self) -> Option<SeriesGF> {
        if !self.coeffs[0].is_one() {
            return None;
        }
        let mut out: Vec<Rat> = vec![Rat::one()];
        for s in 1..self.coeffs.len() {
            let cross: Rat = (1..s).map(|j| &out[j] * &out[s - j]).sum();
            out.push((&self.coeffs[s] - cross) / rat(2, 1));
        }
        Some(SeriesGF { coeffs: out })
    }

    /// Divides by `y`, losing one order; needs a zero constant term.
    pub fn div_y(&self) -> Option<SeriesGF> {
        if !self.coeffs[0].is_zero() || self.coeffs.len() < 2 {
            return None;
        }
        Some(SeriesGF { coeffs: self.coeffs[1..].to_vec() })
    }

    pub fn pow(&self, exp: u32) -> SeriesGF {
        (0..exp).fold(SeriesGF::one(self.order()), |acc, _| acc.mul(self))
    }
}

/// `(1 - y)^(half / 2)` built from the series square root of `1 - y`.
pub fn one_minus_y_half_power(half: i32, order: usize) -> SeriesGF {
    let root = SeriesGF::one_minus_y(order).sqrt().expect("constant term 1");
    let powered = root.pow(half.unsigned_abs());
    if half < 0 {
        powered.inverse().expect("constant term 1")
    } else {
        powered
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesExpr {
    /// `(1-y)^(-1/2)`
    InvSqrt,
    /// `(1-y)^(-1)`
    Inv,
    /// `(1-y)^(-3/2)`
    InvThreeHalves,
    /// `(1-y)^(-2)`
    InvSquare,
    /// `sqrt(1-y)`
    Sqrt,
    /// `2(1 - sqrt(1-y)) / (y sqrt(1-y))`
    ShiftedUp,
    /// `(1 - sqrt(1-y))^2 / (y sqrt(1-y))`
    ShiftedDown,
    /// `(y+1) / (2(1-y)^(3/2)) - 1 / (2(1-y))`
    FirstOrder,
    /// `(3-y) / (2(1-y)^2) - 3 / (2(1-y)^(3/2))`
    SecondOrder,
}

pub fn series_expand(expr: SeriesExpr, order: usize) -> SeriesGF {
    let wide = order + 1;
    let y = SeriesGF::y_pow(1, wide);
    let half = |h: i32| one_minus_y_half_power(h, wide);
    let one = SeriesGF::one(wide);
    let full = match expr {
        SeriesExpr::InvSqrt => half(-1),
        SeriesExpr::Inv => half(-2),
        SeriesExpr::InvThreeHalves => half(-3),
        SeriesExpr::InvSquare => half(-4),
        SeriesExpr::Sqrt => half(1),
        SeriesExpr::ShiftedUp => {
            let numer = one.sub(&half(1)).scale(&rat(2, 1)).mul(&half(-1));
            return numer.div_y().expect("zero constant term");
        }
        SeriesExpr::ShiftedDown => {
            let gap = one.sub(&half(1));
            return gap.mul(&gap).mul(&half(-1)).div_y().expect("zero constant term");
        }
        SeriesExpr::FirstOrder => {
            let lead = y.add(&one).mul(&half(-3)).scale(&rat(1, 2));
            lead.sub(&half(-2).scale(&rat(1, 2)))
        }
        SeriesExpr::SecondOrder => {
            let lead = one.scale(&rat(3, 1)).sub(&y).mul(&half(-4)).scale(&rat(1, 2));
            lead.sub(&half(-3).scale(&rat(3, 2)))
        }
    };
    SeriesGF { coeffs: full.coeffs[..=order].to_vec() }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub index: u64,
    pub expected: Rat,
    pub actual: Rat,
}

/// Outcome of comparing two coefficient sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub name: String,
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.checked > 0
    }

    fn compare(name: impl Into<String>, pairs: impl IntoIterator<Item = (u64, Rat, Rat)>) -> IdentityReport {
        let mut checked = 0;
        let mut mismatches = Vec::new();
        for (index, expected, actual) in pairs {
            checked += 1;
            if expected != actual {
                mismatches.push(Mismatch { index, expected, actual });
            }
        }
        IdentityReport { name: name.into(), checked, mismatches }
    }
}

fn coefficient_identity(name: &str, expr: SeriesExpr, order: usize, closed: impl Fn(u64) -> Rat) -> IdentityReport {
    let series = series_expand(expr, order);
    IdentityReport::compare(
        name,
        (0..=order as u64).map(|s| (s, closed(s), series.coeff(s as usize).clone())),
    )
}

/// `[y^s] (1-y)^(-1/2) = binom(2s, s)/4^s`.
pub fn identity_a0(order: usize) -> IdentityReport {
    coefficient_identity("A[0]", SeriesExpr::InvSqrt, order, central_ratio)
}

/// `[y^s] 2(1 - sqrt(1-y))/(y sqrt(1-y)) = binom(2s+1, s)/4^s`.
pub fn identity_a1(order: usize) -> IdentityReport {
    coefficient_identity("A[1]", SeriesExpr::ShiftedUp, order, |s| {
        Rat::new(binom(2 * s + 1, s as i64), pow2(2 * s))
    })
}

/// `[y^s] (1 - sqrt(1-y))^2/(y sqrt(1-y)) = binom(2s, s-1)/4^s`.
pub fn identity_a_minus1(order: usize) -> IdentityReport {
    coefficient_identity("A[-1]", SeriesExpr::ShiftedDown, order, |s| {
        Rat::new(binom(2 * s, s as i64 - 1), pow2(2 * s))
    })
}

pub fn three_identities(order: usize) -> Vec<IdentityReport> {
    vec![identity_a0(order), identity_a1(order), identity_a_minus1(order)]
}

/// `M_r(2L) / 2^n` for `L = 0..=l_max`, by direct summation.
pub fn bruteforce_index_sums(r: u32, l_max: usize) -> Result<Vec<Rat>> {
    (0..=l_max)
        .map(|l| {
            let n = (4 * l).max(1);
            Ok(closedform::m_r_bruteforce(2 * l, r, n)? / rat_int(pow2(n as u64)))
        })
        .collect()
}

/// Coefficients of the first- and second-order generating functions against
/// the index sums `M_1(2L)/2^n` and `M_2(2L)/2^n`.
pub fn f1_f2_coefficient_check(l_max: usize) -> Result<Vec<IdentityReport>> {
    let mut reports = Vec::new();
    for (r, expr, name) in [(1, SeriesExpr::FirstOrder, "F1 vs M1"), (2, SeriesExpr::SecondOrder, "F2 vs M2")] {
        let series = series_expand(expr, l_max);
        let sums = bruteforce_index_sums(r, l_max)?;
        reports.push(IdentityReport::compare(
            name,
            sums.into_iter().enumerate().map(|(l, m)| (l as u64, m, series.coeff(l).clone())),
        ));
    }
    Ok(reports)
}

/// `F = P(y)/(1-y)^(1+r/2) + Q(y)/(1-y)^((1+r)/2)` fitted to a coefficient sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialFractionFit {
    pub r: u32,
    pub p: RatPoly,
    pub q: RatPoly,
    pub report: IdentityReport,
}

/// Fits the two-fraction form with `deg P <= ceil(r/2)`, `deg Q <= floor(r/2)`
/// to the index sums `M_r(2L)/2^n` and checks every remaining coefficient.
pub fn partial_fraction_check(r: u32, l_max: usize) -> Result<PartialFractionFit> {
    let (dp, dq) = (r.div_ceil(2) as usize, (r / 2) as usize);
    let unknowns = dp + dq + 2;
    if l_max + 1 <= unknowns {
        return Err(Error::InvalidInput(format!("need more than {unknowns} coefficients, got {}", l_max + 1)));
    }
    let targets = bruteforce_index_sums(r, l_max)?;
    let first = one_minus_y_half_power(-(2 + r as i32), l_max);
    let second = one_minus_y_half_power(-(1 + r as i32), l_max);
    let basis: Vec<SeriesGF> = (0..=dp)
        .map(|k| SeriesGF::y_pow(k, l_max).mul(&first))
        .chain((0..=dq).map(|k| SeriesGF::y_pow(k, l_max).mul(&second)))
        .collect();
    let a: Vec<Vec<Rat>> = (0..unknowns).map(|l| basis.iter().map(|b| b.coeff(l).clone()).collect()).collect();
    let x = linsolve::solve(&a, &targets[..unknowns]).ok_or_else(|| Error::SingularSystem {
        what: format!("partial fractions of order {r}"),
        l_first: 0,
        l_last: unknowns as u64 - 1,
    })?;
    let fitted = basis
        .iter()
        .zip(&x)
        .fold(SeriesGF::zero(l_max), |acc, (b, c)| acc.add(&b.scale(c)));
    let report = IdentityReport::compare(
        format!("partial fractions r={r}"),
        (unknowns..=l_max).map(|l| (l as u64, targets[l].clone(), fitted.coeff(l).clone())),
    );
    Ok(PartialFractionFit {
        r,
        p: RatPoly::from_coeffs(x[..=dp].to_vec()),
        q: RatPoly::from_coeffs(x[dp + 1..].to_vec()),
        report,
    })
}

/// `sum_{s<L} binom(2s, s)/4^s = 2L binom(2L, L)/4^L` for `L = 1..=l_max`.
pub fn binomial_identity_check(l_max: u64) -> IdentityReport {
    let mut partial = Rat::zero();
    let pairs: Vec<(u64, Rat, Rat)> = (1..=l_max)
        .map(|l| {
            partial += central_ratio(l - 1);
            (l, rat_int(2 * l) * central_ratio(l), partial.clone())
        })
        .collect();
    IdentityReport::compare("central binomial partial sums", pairs)
}

/// `[y^L] H(y)/(1-y)^(k+1)` for `L = 0..=l_max`.
pub fn extract_integer(h: &[Rat], k: u32, l_max: usize) -> Vec<Rat> {
    let h = SeriesGF::from_coeffs(h.to_vec(), l_max);
    h.mul(&one_minus_y_half_power(-2 * (k as i32 + 1), l_max)).coeffs
}

/// `[y^L] H(y)/(1-y)^(k+1/2)` for `L = 0..=l_max`.
pub fn extract_half(h: &[Rat], k: u32, l_max: usize) -> Vec<Rat> {
    let h = SeriesGF::from_coeffs(h.to_vec(), l_max);
    h.mul(&one_minus_y_half_power(-(2 * k as i32 + 1), l_max)).coeffs
}

/// Interpolating polynomial of the given degree through the first `degree + 1` points.
pub fn fit_polynomial(points: &[(Rat, Rat)], degree: usize) -> Option<RatPoly> {
    let used = points.get(..=degree)?;
    let a: Vec<Vec<Rat>> = used.iter().map(|(x, _)| (0..=degree).map(|j| rat_pow(x, j as u32)).collect()).collect();
    let b: Vec<Rat> = used.iter().map(|(_, y)| y.clone()).collect();
    linsolve::solve(&a, &b).map(RatPoly::from_coeffs)
}

fn polynomial_report(name: String, values: &[Rat], degree: usize) -> IdentityReport {
    let points: Vec<(Rat, Rat)> = values.iter().enumerate().map(|(l, v)| (rat_int(l as u64), v.clone())).collect();
    match fit_polynomial(&points, degree) {
        Some(poly) => IdentityReport::compare(
            name,
            points.iter().enumerate().map(|(l, (x, v))| (l as u64, v.clone(), poly.eval(x))),
        ),
        None => IdentityReport { name, checked: 0, mismatches: Vec::new() },
    }
}

/// For random integer `H` of each degree `k <= k_max`, checks that the `y^L`
/// coefficients of `H/(1-y)^(k+1)` are a polynomial in `L` of degree at most `k`,
/// and those of `H/(1-y)^(k+1/2)` are `binom(2L, L)/4^L` times one.
pub fn coefficient_extraction_check(k_max: u32, l_max: usize, seed: u64) -> Vec<IdentityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reports = Vec::new();
    for k in 0..=k_max {
        let mut h: Vec<Rat> = (0..=k).map(|_| rat(rng.gen_range(-9..=9), 1)).collect();
        if h[k as usize].is_zero() {
            h[k as usize] = Rat::one();
        }
        let integer = extract_integer(&h, k, l_max);
        reports.push(polynomial_report(format!("integer exponent k={k}"), &integer, k as usize));
        let half: Vec<Rat> = extract_half(&h, k, l_max)
            .into_iter()
            .enumerate()
            .map(|(l, c)| c / central_ratio(l as u64))
            .collect();
        reports.push(polynomial_report(format!("half exponent k={k}"), &half, k as usize));
    }
    reports
}

/// Everything above with the default orders.
pub fn full_suite() -> Result<Vec<IdentityReport>> {
    let mut reports = three_identities(60);
    reports.extend(f1_f2_coefficient_check(10)?);
    for r in 1..=2 {
        reports.push(partial_fraction_check(r, 10)?.report);
    }
    reports.push(binomial_identity_check(100));
    reports.extend(coefficient_extraction_check(4, 30, 0x5eed));
    Ok(reports)
}
