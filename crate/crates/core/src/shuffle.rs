//! The Gilbert-Shannon-Reeds shuffle model.
//!
//! An outcome of `k` riffle shuffles is encoded as a word over `C = 2^k`
//! letters: letter `m` at position `j` means the card at `j` was dropped from
//! the `m`-th pile. Working with words rather than permutations keeps the
//! identity permutation with its full multiplicity.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{pow_u, Rat, ShuffleSpec};
use crate::error::{Error, Result};
use crate::gfpoly::GFPoly;

/// Largest deck the one-shuffle enumeration accepts.
pub const SLOW_MAX_N: usize = 20;
/// Largest sample space `C^n` the general enumeration accepts.
pub const BRUTE_FORCE_MAX_WORDS: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n];
        for &e in &entries {
            let slot = (e as usize)
                .checked_sub(1)
                .filter(|&i| i < n)
                .ok_or_else(|| Error::InvalidInput(format!("card {e} outside 1..={n}")))?;
            if std::mem::replace(&mut seen[slot], true) {
                return Err(Error::InvalidInput(format!("card {e} appears twice")));
            }
        }
        Ok(Permutation(entries))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u32).collect())
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Relabels `e -> n + 1 - e` and reverses positions.
    pub fn mirrored(&self) -> Permutation {
        let n = self.0.len() as u32;
        Permutation(self.0.iter().rev().map(|&e| n + 1 - e).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SequenceWord {
    letters: Vec<u32>,
    alphabet: u32,
}

impl SequenceWord {
    pub fn new(letters: Vec<u32>, alphabet: u32) -> Result<Self> {
        if alphabet == 0 {
            return Err(Error::NoSequences);
        }
        if let Some(bad) = letters.iter().find(|&&l| l == 0 || l > alphabet) {
            return Err(Error::InvalidInput(format!("letter {bad} outside 1..={alphabet}")));
        }
        Ok(SequenceWord { letters, alphabet })
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    /// Reverses the word and the letter order; the image of the mirrored permutation.
    pub fn mirrored(&self) -> SequenceWord {
        let letters = self.letters.iter().rev().map(|&l| self.alphabet + 1 - l).collect();
        SequenceWord { letters, alphabet: self.alphabet }
    }
}

/// The optimal no-feedback guess at 1-based position `i`: `floor(i/C) + 1` in
/// the top half, mirrored about the middle in the bottom half.
pub fn optimal_guess(spec: &ShuffleSpec, i: usize) -> Result<u32> {
    let n = spec.n();
    if i == 0 || i > n {
        return Err(Error::PositionOutOfRange { position: i, n });
    }
    Ok(guess_unchecked(n, spec.sequences(), i))
}

fn guess_unchecked(n: usize, c: u64, i: usize) -> u32 {
    if i <= n.div_ceil(2) {
        (i as u64 / c + 1) as u32
    } else {
        (n + 1) as u32 - guess_unchecked(n, c, n + 1 - i)
    }
}

/// All `n` guesses in position order.
pub fn guesses(spec: &ShuffleSpec) -> Vec<u32> {
    (1..=spec.n())
        .map(|i| guess_unchecked(spec.n(), spec.sequences(), i))
        .collect()
}

pub fn word_to_permutation(word: &SequenceWord) -> Permutation {
    let mut next = pile_starts(&word.letters, word.alphabet);
    let entries = word
        .letters
        .iter()
        .map(|&l| {
            let card = next[l as usize - 1];
            next[l as usize - 1] += 1;
            card
        })
        .collect();
    Permutation(entries)
}

// first card label of every pile
fn pile_starts(letters: &[u32], alphabet: u32) -> Vec<u32> {
    let mut counts = vec![0u32; alphabet as usize];
    for &l in letters {
        counts[l as usize - 1] += 1;
    }
    let mut start = 1;
    counts
        .into_iter()
        .map(|c| {
            let s = start;
            start += c;
            s
        })
        .collect()
}

/// Number of positions where the card equals the optimal guess.
///
/// Panics if the permutation length differs from the deck size.
pub fn count_correct(perm: &Permutation, spec: &ShuffleSpec) -> usize {
    assert_eq!(perm.len(), spec.n(), "permutation length must equal the deck size");
    perm.0
        .iter()
        .zip(guesses(spec))
        .filter(|(card, guess)| **card == *guess)
        .count()
}

/// Correct guesses split by half, straight from the word.
fn score_word(letters: &[u32], alphabet: u32, guesses: &[u32], top_len: usize) -> (usize, usize) {
    let mut next = pile_starts(letters, alphabet);
    let (mut top, mut bottom) = (0, 0);
    for (j, &l) in letters.iter().enumerate() {
        let card = next[l as usize - 1];
        next[l as usize - 1] += 1;
        if card == guesses[j] {
            if j < top_len {
                top += 1;
            } else {
                bottom += 1;
            }
        }
    }
    (top, bottom)
}

/// Exhaustive enumeration of the `C^n` sample space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForce {
    pub spec: ShuffleSpec,
    /// Coefficient `i` counts words with `i` correct guesses.
    pub distribution: GFPoly,
    /// Total correct guesses in the top half over all words.
    pub top_total: BigInt,
    /// Total correct guesses in the bottom half over all words.
    pub bottom_total: BigInt,
}

impl BruteForce {
    pub fn outcomes(&self) -> BigInt {
        self.distribution.eval_at_one()
    }

    pub fn raw_moment(&self, r: u32) -> Rat {
        Rat::new(self.distribution.power_sum(r), self.outcomes())
    }

    pub fn mean(&self) -> Rat {
        self.raw_moment(1)
    }

    pub fn top_mean(&self) -> Rat {
        Rat::new(self.top_total.clone(), self.outcomes())
    }

    pub fn bottom_mean(&self) -> Rat {
        Rat::new(self.bottom_total.clone(), self.outcomes())
    }
}

/// Distribution of correct guesses after one shuffle, by enumerating all `2^n` words.
pub fn gen_slow(spec: &ShuffleSpec) -> Result<GFPoly> {
    if spec.sequences() != 2 {
        return Err(Error::InvalidInput(
            "the one-shuffle enumeration needs C = 2".to_string(),
        ));
    }
    if spec.n() > SLOW_MAX_N {
        return Err(Error::SizeGuard {
            what: "slow enumeration",
            detail: format!("n = {} exceeds the limit {SLOW_MAX_N}", spec.n()),
        });
    }
    Ok(gen_slow_c(spec)?.distribution)
}

/// Brute force over every word in `{1..C}^n`.
pub fn gen_slow_c(spec: &ShuffleSpec) -> Result<BruteForce> {
    let n = spec.n();
    let c = spec.sequences();
    let words = (c as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if words > BRUTE_FORCE_MAX_WORDS as u128 {
        return Err(Error::SizeGuard {
            what: "brute-force enumeration",
            detail: format!("C^n = {c}^{n} exceeds {BRUTE_FORCE_MAX_WORDS}"),
        });
    }
    let alphabet = c as u32;
    let guesses = guesses(spec);
    let top_len = spec.top_len();

    // one parallel chunk per first letter
    let tally = (1..=alphabet)
        .into_par_iter()
        .map(|first| {
            let mut counts = vec![0u64; n + 1];
            let (mut top_total, mut bottom_total) = (0u64, 0u64);
            let mut word = vec![1u32; n];
            word[0] = first;
            loop {
                let (top, bottom) = score_word(&word, alphabet, &guesses, top_len);
                counts[top + bottom] += 1;
                top_total += top as u64;
                bottom_total += bottom as u64;
                // odometer over positions 1..n
                let mut j = n;
                loop {
                    j -= 1;
                    if j == 0 {
                        return (counts, top_total, bottom_total);
                    }
                    if word[j] < alphabet {
                        word[j] += 1;
                        break;
                    }
                    word[j] = 1;
                }
            }
        })
        .reduce(
            || (vec![0u64; n + 1], 0, 0),
            |(mut a, at, ab), (b, bt, bb)| {
                a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                (a, at + bt, ab + bb)
            },
        );
    let (counts, top_total, bottom_total) = tally;
    Ok(BruteForce {
        spec: *spec,
        distribution: GFPoly::from_coeffs(counts.into_iter().map(BigInt::from).collect()),
        top_total: top_total.into(),
        bottom_total: bottom_total.into(),
    })
}

/// Empirical results of a seeded Monte Carlo run.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleReport {
    pub spec: ShuffleSpec,
    pub trials: u64,
    pub seed: u64,
    /// Trial count per number of correct guesses.
    pub histogram: BTreeMap<usize, u64>,
    pub sum: u128,
    pub sum_squares: u128,
}

impl SampleReport {
    pub fn mean(&self) -> f64 {
        self.sum as f64 / self.trials as f64
    }

    pub fn second_moment(&self) -> f64 {
        self.sum_squares as f64 / self.trials as f64
    }

    /// Standard error of the mean from the sample variance.
    pub fn std_error(&self) -> f64 {
        if self.trials < 2 {
            return f64::NAN;
        }
        let t = self.trials as f64;
        let var = (self.sum_squares as f64 - (self.sum as f64).powi(2) / t) / (t - 1.0);
        (var / t).sqrt()
    }
}

/// The generator behind trial `index` of a run seeded with `seed`: ChaCha8 keyed
/// by `seed_from_u64(seed)`, stream `index`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Draws one uniform word in `{1..C}^n`, i.e. the outcome of `k` GSR shuffles.
pub fn sample_word<R: Rng>(spec: &ShuffleSpec, rng: &mut R) -> SequenceWord {
    let alphabet = spec.sequences() as u32;
    let letters = (0..spec.n()).map(|_| rng.gen_range(1..=alphabet)).collect();
    SequenceWord { letters, alphabet }
}

/// Monte Carlo estimate of the correct-guess distribution; deterministic in `seed`.
pub fn gsr_sample(spec: &ShuffleSpec, trials: u64, seed: u64) -> Result<SampleReport> {
    if trials == 0 {
        return Err(Error::InvalidInput("at least one trial is required".to_string()));
    }
    if spec.sequences() > u32::MAX as u64 {
        return Err(Error::InvalidInput("too many sequences to sample".to_string()));
    }
    let guesses = guesses(spec);
    let top_len = spec.top_len();
    let histogram = (0..trials)
        .into_par_iter()
        .fold(BTreeMap::new, |mut hist: BTreeMap<usize, u64>, index| {
            let word = sample_word(spec, &mut trial_rng(seed, index));
            let (top, bottom) = score_word(&word.letters, word.alphabet, &guesses, top_len);
            *hist.entry(top + bottom).or_default() += 1;
            hist
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    let sum = histogram.iter().map(|(&k, &v)| k as u128 * v as u128).sum();
    let sum_squares = histogram.iter().map(|(&k, &v)| (k * k) as u128 * v as u128).sum();
    Ok(SampleReport { spec: *spec, trials, seed, histogram, sum, sum_squares })
}

/// `C^n` as a big integer.
pub fn sample_space_size(spec: &ShuffleSpec) -> BigInt {
    pow_u(spec.sequences(), spec.n() as u64)
}
