//! Small brute-force oracles that share no code with the library.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;

pub fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut row = vec![BigInt::from(1)];
    for _ in 0..n {
        let mut next = vec![BigInt::from(1); row.len() + 1];
        for j in 1..row.len() {
            next[j] = &row[j - 1] + &row[j];
        }
        row = next;
    }
    row[k as usize].clone()
}

/// `binom(2s, s) / 4^s`.
pub fn central(s: u64) -> BigRational {
    BigRational::new(binom(2 * s, s), BigInt::from(1) << (2 * s))
}

/// Guess for 1-based position `i` of an `n`-card deck cut into `c` sequences.
pub fn guess(n: usize, c: usize, i: usize) -> usize {
    let h = n.div_ceil(2);
    if i <= h {
        i / c + 1
    } else {
        n + 1 - guess(n, c, n + 1 - i)
    }
}

/// Calls `visit` on every word in `{0..c}^n`.
pub fn for_each_word(n: usize, c: usize, mut visit: impl FnMut(&[usize])) {
    let mut word = vec![0usize; n];
    loop {
        visit(&word);
        let mut j = 0;
        loop {
            if j == n {
                return;
            }
            word[j] += 1;
            if word[j] < c {
                break;
            }
            word[j] = 0;
            j += 1;
        }
    }
}

/// Deck order produced by a word: sequence `m` owns the next block of labels.
pub fn deck(word: &[usize], c: usize) -> Vec<usize> {
    let mut counts = vec![0usize; c];
    for &m in word {
        counts[m] += 1;
    }
    let mut next = vec![1usize; c];
    for m in 1..c {
        next[m] = next[m - 1] + counts[m - 1];
    }
    word.iter()
        .map(|&m| {
            next[m] += 1;
            next[m] - 1
        })
        .collect()
}

pub fn correct(word: &[usize], c: usize) -> (usize, usize) {
    let n = word.len();
    let h = n.div_ceil(2);
    let cards = deck(word, c);
    let mut top = 0;
    let mut bottom = 0;
    for (j, &card) in cards.iter().enumerate() {
        if card == guess(n, c, j + 1) {
            if j < h {
                top += 1;
            } else {
                bottom += 1;
            }
        }
    }
    (top, bottom)
}

/// Number of words by number of correct guesses.
pub fn distribution(n: usize, c: usize) -> Vec<u64> {
    let mut counts = vec![0u64; n + 1];
    for_each_word(n, c, |w| {
        let (t, b) = correct(w, c);
        counts[t + b] += 1;
    });
    while counts.len() > 1 && counts.last() == Some(&0) {
        counts.pop();
    }
    counts
}

pub fn mean(n: usize, c: usize) -> BigRational {
    let mut total = 0u64;
    let mut words = 0u64;
    for_each_word(n, c, |w| {
        let (t, b) = correct(w, c);
        total += (t + b) as u64;
        words += 1;
    });
    BigRational::new(BigInt::from(total), BigInt::from(words))
}

/// Sum over all `2^n` one-shuffle words of `Y^r`, where `Y` counts top-half
/// positions guessed right with a card from the first sequence.
pub fn first_sequence_top_power_sum(n: usize, r: u32) -> BigInt {
    let h = n.div_ceil(2);
    let mut total = BigInt::from(0);
    for_each_word(h, 2, |w| {
        let mut ones = 0;
        let mut hits = 0u64;
        for (j, &m) in w.iter().enumerate() {
            if m == 0 {
                ones += 1;
                if ones == (j + 1) / 2 + 1 {
                    hits += 1;
                }
            }
        }
        total += BigInt::from(hits.pow(r));
    });
    total << (n - h)
}
