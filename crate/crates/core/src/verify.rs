//! Self-checks grouped into suites, each reporting pass or fail per check.

use std::fmt;
use std::str::FromStr;

use crate::arith::{pow2, Quarter, Rat, ShuffleSpec};
use crate::closedform::{self, Parity};
use crate::error::{Error, Result};
use crate::gf_fast::{self, Tier, FASTEST_MIN_N};
use crate::kshuffle;
use crate::moments;
use crate::ratpoly::RatPoly;
use crate::series;
use crate::shuffle;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), passed, detail: detail.into() }
    }

    fn from_result(name: impl Into<String>, result: Result<(bool, String)>) -> Check {
        match result {
            Ok((passed, detail)) => Check::new(name, passed, detail),
            Err(e) => Check::new(name, false, e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Tiers,
    ClosedForm,
    Series,
    KShuffle,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::All => "all",
            Suite::Tiers => "tiers",
            Suite::ClosedForm => "closedform",
            Suite::Series => "series",
            Suite::KShuffle => "kshuffle",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "all" => Ok(Suite::All),
            "tiers" => Ok(Suite::Tiers),
            "closedform" => Ok(Suite::ClosedForm),
            "series" => Ok(Suite::Series),
            "kshuffle" => Ok(Suite::KShuffle),
            other => Err(Error::InvalidInput(format!("unknown suite {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub fn run(suite: Suite) -> VerifyReport {
    let checks = match suite {
        Suite::All => [tiers(), closed_forms(), series_checks(), kshuffle_checks()].concat(),
        Suite::Tiers => tiers(),
        Suite::ClosedForm => closed_forms(),
        Suite::Series => series_checks(),
        Suite::KShuffle => kshuffle_checks(),
    };
    VerifyReport { suite, checks }
}

/// Largest deck compared across all three tiers.
pub const TIER_MAX_N: usize = 14;

fn tiers() -> Vec<Check> {
    (1..=TIER_MAX_N)
        .map(|n| {
            Check::from_result(format!("tiers n={n}"), (|| {
                let slow = shuffle::gen_slow(&ShuffleSpec::one_shuffle(n)?)?;
                let fast = gf_fast::f_full_fast(n);
                let fastest = gf_fast::f_full_fastest(n);
                let total_ok = [&slow, &fast, &fastest].iter().all(|p| p.eval_at_one() == pow2(n as u64));
                let fast_ok = slow == fast;
                let fastest_ok = n < FASTEST_MIN_N || slow == fastest;
                let detail = format!("slow=fast: {fast_ok}, slow=fastest: {fastest_ok}, sums to 2^n: {total_ok}");
                Ok((fast_ok && fastest_ok && total_ok, detail))
            })())
        })
        .collect()
}

/// The six half-deck fits `(r, parity, P, Q)` with known closed forms.
pub fn known_half_moments() -> Vec<(u32, Parity, RatPoly, RatPoly)> {
    vec![
        (1, Parity::Even, RatPoly::from_fracs(&[(1, 2), (2, 1)]), RatPoly::from_fracs(&[(-1, 2)])),
        (2, Parity::Even, RatPoly::from_fracs(&[(-5, 2), (-4, 1)]), RatPoly::from_fracs(&[(5, 2), (2, 1)])),
        (3, Parity::Even, RatPoly::from_fracs(&[(19, 2), (24, 1), (8, 1)]), RatPoly::from_fracs(&[(-19, 2), (-9, 1)])),
        (1, Parity::Odd, RatPoly::from_fracs(&[(0, 1), (1, 1)]), RatPoly::from_fracs(&[(-1, 4)])),
        (2, Parity::Odd, RatPoly::from_fracs(&[(-1, 1), (-2, 1)]), RatPoly::from_fracs(&[(3, 4), (1, 1)])),
        (3, Parity::Odd, RatPoly::from_fracs(&[(3, 1), (9, 1), (4, 1)]), RatPoly::from_fracs(&[(-13, 4), (-9, 2)])),
    ]
}

fn closed_forms() -> Vec<Check> {
    let mut checks = Vec::new();
    for (r, parity, p, q) in known_half_moments() {
        checks.push(Check::from_result(format!("half moment r={r} {parity}"), (|| {
            let fit = closedform::interpolate_half_moment(r, parity)?;
            Ok((fit.p == p && fit.q == q, format!("P(L) = {}, Q(L) = {}", fit.p, fit.q)))
        })()));
    }
    for r in 1..=closedform::MAX_EXPRESSION_ORDER {
        for parity in [Parity::Even, Parity::Odd] {
            checks.push(Check::from_result(format!("degree bounds r={r} {parity}"), (|| {
                let check = closedform::check_degree_bounds(r, parity)?;
                Ok((check.holds, format!("deg P = {:?}, deg Q = {:?}", check.widened.p.degree(), check.widened.q.degree())))
            })()));
        }
    }
    checks.push(Check::from_result("closed-form mean n=4..=60", (|| {
        let bad: Vec<usize> = (closedform::CLOSED_FORM_EX_MIN_N..=60)
            .filter(|&n| {
                closedform::closed_form_ex_formula(n as u64)
                    != moments::raw_moment(n, 1, Tier::Fastest).unwrap_or_default()
            })
            .collect();
        Ok((bad.is_empty(), format!("mismatches at {bad:?}")))
    })()));
    for alpha in -1..=2i8 {
        checks.push(Check::from_result(format!("moment expressions alpha={alpha}"), (|| {
            let mut bad = Vec::new();
            for r in 1..=4 {
                let expr = closedform::assemble_moment_expression(r, alpha)?;
                for l in 2..=8u64 {
                    let n = Quarter { l, alpha }.n() as usize;
                    if expr.eval(l) != moments::raw_moment(n, r, Tier::Fastest)? {
                        bad.push((r, n));
                    }
                }
            }
            Ok((bad.is_empty(), format!("mismatches (r, n): {bad:?}")))
        })()));
    }
    checks.push(Check::from_result("index sums vs half moments h<=10", (|| {
        let mut bad = Vec::new();
        for h in 1..=10usize {
            let n = 2 * h;
            for r in 0..=4 {
                let (top, _) = moments::half_moment_numeric(n, r)?;
                if closedform::partition_combine(h, r, n)? != top {
                    bad.push((h, r));
                }
            }
        }
        Ok((bad.is_empty(), format!("mismatches (h, r): {bad:?}")))
    })()));
    checks
}

fn series_checks() -> Vec<Check> {
    match series::full_suite() {
        Ok(reports) => reports
            .into_iter()
            .map(|r| {
                let detail = format!("{} coefficients, {} mismatches", r.checked, r.mismatches.len());
                Check::new(r.name.clone(), r.passed(), detail)
            })
            .collect(),
        Err(e) => vec![Check::new("series", false, e.to_string())],
    }
}

fn kshuffle_checks() -> Vec<Check> {
    let mut checks = vec![Check::from_result("two sequences vs one shuffle n<=40", (|| {
        let mut bad = Vec::new();
        for n in 1..=40 {
            if kshuffle::expected_total(n, 2)? != moments::raw_moment(n, 1, Tier::Fastest)? {
                bad.push(n);
            }
        }
        Ok((bad.is_empty(), format!("mismatches at {bad:?}")))
    })())];
    for (c, n_max) in [(3u64, 8usize), (4, 7)] {
        checks.push(Check::from_result(format!("enumeration C={c} n<={n_max}"), (|| {
            let mut bad = Vec::new();
            for n in 1..=n_max {
                let brute = shuffle::gen_slow_c(&ShuffleSpec::with_sequences(n, c)?)?;
                let exact: Rat = kshuffle::expected_total(n, c)?;
                if exact != brute.mean() {
                    bad.push(n);
                }
            }
            Ok((bad.is_empty(), format!("mismatches at {bad:?}")))
        })()));
    }
    checks
}
