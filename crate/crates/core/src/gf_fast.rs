//! Half-deck recurrences for one riffle shuffle.
//!
//! The fast tier tracks the start label `s` of the second sequence so that
//! correct guesses from either sequence are counted, then assembles the full
//! deck as a double sum of top-half times mirrored bottom-half factors. The
//! fastest tier drops `s`, counting only first-sequence hits in the top half
//! (and second-sequence hits in the mirrored bottom half); the full
//! distribution then factors as `F_A * F_B` plus a fixed correction for the
//! four near-identity outcomes it miscounts.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::arith::ShuffleSpec;
use crate::error::{Error, Result};
use crate::gfpoly::GFPoly;
use crate::shuffle;

/// Smallest deck for which the factorized form with the excess correction is exact.
/// Below it the fastest tier is routed to the fast tier.
pub const FASTEST_MIN_N: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tier {
    Slow,
    Fast,
    Fastest,
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tier::Slow => "slow",
            Tier::Fast => "fast",
            Tier::Fastest => "fastest",
        })
    }
}

impl FromStr for Tier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Tier> {
        match s {
            "slow" => Ok(Tier::Slow),
            "fast" => Ok(Tier::Fast),
            "fastest" => Ok(Tier::Fastest),
            other => Err(Error::InvalidInput(format!("unknown tier {other:?}"))),
        }
    }
}

/// Parameters of a top-half generating function: `a1` cards of the first
/// sequence, `a2` of the second, which starts at label `s` (absent in the
/// s-free recurrence).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HalfState {
    pub a1: usize,
    pub a2: usize,
    pub s: Option<u64>,
}

impl HalfState {
    pub fn generating_function(&self) -> GFPoly {
        half_diagonal(self.a1 + self.a2, self.s).swap_remove(self.a1)
    }
}

/// `G(a, len - a, s, q)` for every `a` in `0..=len`, filled diagonal by
/// diagonal (`a1 + a2` is the position of the last card placed).
pub fn half_diagonal(len: usize, s: Option<u64>) -> Vec<GFPoly> {
    let mut prev = vec![GFPoly::one()];
    for d in 1..=len {
        let guess = d / 2 + 1;
        let next = (0..=d)
            .map(|a1| {
                let a2 = d - a1;
                let mut g = GFPoly::zero();
                if a1 >= 1 {
                    g.add_shifted(&prev[a1 - 1], usize::from(guess == a1));
                }
                if a2 >= 1 {
                    let hit = s.is_some_and(|s| guess as u64 == s + a2 as u64 - 1);
                    g.add_shifted(&prev[a1], usize::from(hit));
                }
                g
            })
            .collect();
        prev = next;
    }
    prev
}

/// `G(a1, a2, s, q)`, the top-half generating function tracking both sequences.
pub fn g_half(a1: usize, a2: usize, s: u64) -> GFPoly {
    HalfState { a1, a2, s: Some(s) }.generating_function()
}

/// `G(a1, a2, q)`, counting only first-sequence hits.
pub fn g_half_ns(a1: usize, a2: usize) -> GFPoly {
    HalfState { a1, a2, s: None }.generating_function()
}

/// `F_A(q) = sum_a G(a, h - a, q)`.
pub fn f_a(h: usize) -> GFPoly {
    half_diagonal(h, None)
        .iter()
        .fold(GFPoly::zero(), |mut acc, g| {
            acc += g;
            acc
        })
}

/// `F_B(q)`: the mirrored bottom half of an `n`-card deck whose top half has `h` cards.
pub fn f_b(n: usize, h: usize) -> GFPoly {
    f_a(n - h)
}

/// `-2q^2 - 2q^3 + 4q^4`.
pub fn excess_poly() -> GFPoly {
    GFPoly::from_i64(&[0, 0, -2, -2, 4])
}

/// Full-deck distribution as the double sum over the first-sequence length
/// `a` in the top half and the second-sequence length `b` in the bottom half.
pub fn f_full_fast(n: usize) -> GFPoly {
    let h = n.div_ceil(2);
    let nb = n - h;
    let mut top: HashMap<u64, Vec<GFPoly>> = HashMap::new();
    let mut bottom: HashMap<u64, Vec<GFPoly>> = HashMap::new();
    let mut total = GFPoly::zero();
    for a in 0..=h {
        for b in 0..=nb {
            let s_top = (a + (nb - b) + 1) as u64;
            let s_bottom = (b + (h - a) + 1) as u64;
            let g_top = &top.entry(s_top).or_insert_with(|| half_diagonal(h, Some(s_top)))[a];
            let g_bottom =
                &bottom.entry(s_bottom).or_insert_with(|| half_diagonal(nb, Some(s_bottom)))[b];
            total += &(g_top * g_bottom);
        }
    }
    total
}

/// `F_A * F_B` plus the excess correction; routed to [`f_full_fast`] below
/// [`FASTEST_MIN_N`].
pub fn f_full_fastest(n: usize) -> GFPoly {
    if n < FASTEST_MIN_N {
        return f_full_fast(n);
    }
    let h = n.div_ceil(2);
    let fa = f_a(h);
    let fb = if n - h == h { fa.clone() } else { f_b(n, h) };
    let mut full = &fa * &fb;
    full += &excess_poly();
    full
}

/// A generated distribution together with the tier that actually produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generated {
    pub n: usize,
    pub requested: Tier,
    pub used: Tier,
    pub poly: GFPoly,
}

impl Generated {
    pub fn outcomes(&self) -> BigInt {
        self.poly.eval_at_one()
    }
}

/// `F_n(q)` for one shuffle using the requested tier.
pub fn generate(n: usize, tier: Tier) -> Result<Generated> {
    let spec = ShuffleSpec::one_shuffle(n)?;
    let (used, poly) = match tier {
        Tier::Slow => (Tier::Slow, shuffle::gen_slow(&spec)?),
        Tier::Fast => (Tier::Fast, f_full_fast(n)),
        Tier::Fastest if n < FASTEST_MIN_N => (Tier::Fast, f_full_fast(n)),
        Tier::Fastest => (Tier::Fastest, f_full_fastest(n)),
    };
    Ok(Generated { n, requested: tier, used, poly })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{binom, pow2};

    #[test]
    fn example_half_functions() {
        assert_eq!(g_half(0, 0, 7), GFPoly::one());
        assert_eq!(g_half(3, 2, 7), GFPoly::from_i64(&[0, 2, 4, 4]));
        let unrolled = &g_half(2, 2, 7).shifted(1) + &g_half(3, 1, 7);
        assert_eq!(g_half(3, 2, 7), unrolled);
        assert_eq!(g_half_ns(0, 0), GFPoly::one());
        assert_eq!(g_half_ns(1, 0), GFPoly::from_i64(&[0, 1]));
    }

    #[test]
    fn half_functions_count_interleavings() {
        for a1 in 0..=12 {
            for a2 in 0..=12 {
                let expected = binom((a1 + a2) as u64, a1 as i64);
                assert_eq!(g_half_ns(a1, a2).eval_at_one(), expected);
                for s in [a1 as u64 + 1, a1 as u64 + 3, 30] {
                    assert_eq!(g_half(a1, a2, s).eval_at_one(), expected);
                }
            }
        }
    }

    #[test]
    fn half_sums() {
        for h in 0..=20 {
            assert_eq!(f_a(h).eval_at_one(), pow2(h as u64));
        }
        for n in (2..=20).step_by(2) {
            assert_eq!(f_a(n / 2), f_b(n, n / 2));
        }
    }

    #[test]
    fn full_deck_small_cases() {
        let f4 = GFPoly::from_i64(&[4, 4, 3, 0, 5]);
        assert_eq!(f_full_fast(4), f4);
        assert_eq!(f_full_fastest(4), f4);
        assert_eq!(f_full_fast(1), GFPoly::from_i64(&[0, 2]));
        assert_eq!(excess_poly().eval_at_one(), BigInt::from(0));
    }

    #[test]
    fn fastest_threshold_is_sharp() {
        // the factorized form miscounts every deck below the threshold
        for n in 1..FASTEST_MIN_N {
            let h = n.div_ceil(2);
            let mut raw = &f_a(h) * &f_b(n, h);
            raw += &excess_poly();
            assert_ne!(raw, f_full_fast(n), "n = {n}");
            assert_eq!(f_full_fastest(n), f_full_fast(n));
        }
    }

    #[test]
    fn routing_is_reported() {
        let g = generate(3, Tier::Fastest).unwrap();
        assert_eq!(g.used, Tier::Fast);
        assert_eq!(generate(12, Tier::Fastest).unwrap().used, Tier::Fastest);
        assert!(generate(25, Tier::Slow).is_err());
        assert!("medium".parse::<Tier>().is_err());
    }

    #[test]
    fn zero_count_is_positive() {
        for n in 3..=40 {
            assert!(f_full_fastest(n).coeff(0) > BigInt::from(0), "n = {n}");
        }
    }
}
