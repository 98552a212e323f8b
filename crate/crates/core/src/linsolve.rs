//! Exact square linear systems by fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::Rat;

/// Solves `a x = b`; `None` when `a` is singular or not square.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|row| row.len() != n) {
        return None;
    }
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let entries: Vec<&Rat> = row.iter().chain(std::iter::once(rhs)).collect();
            let lcm = entries.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            entries.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();

    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = (k..n).find(|&i| !m[i][k].is_zero())?;
        m.swap(k, pivot);
        for i in k + 1..n {
            for j in k + 1..=n {
                let value = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = value;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }

    let mut x = vec![Rat::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rat::from_integer(m[i][n].clone());
        for j in i + 1..n {
            acc -= Rat::from_integer(m[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rat::from_integer(m[i][i].clone());
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    #[test]
    fn small_system() {
        let a = vec![vec![rat(2, 1), rat(1, 1)], vec![rat(1, 3), rat(-1, 1)]];
        let b = vec![rat(3, 1), rat(-2, 3)];
        assert_eq!(solve(&a, &b).unwrap(), vec![rat(1, 1), rat(1, 1)]);
    }

    #[test]
    fn needs_pivoting() {
        let a = vec![vec![rat(0, 1), rat(1, 1)], vec![rat(1, 1), rat(0, 1)]];
        let b = vec![rat(5, 1), rat(7, 2)];
        assert_eq!(solve(&a, &b).unwrap(), vec![rat(7, 2), rat(5, 1)]);
    }

    #[test]
    fn singular_is_rejected() {
        let a = vec![vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)]];
        assert!(solve(&a, &[rat(1, 1), rat(2, 1)]).is_none());
        assert!(solve(&a, &[rat(1, 1)]).is_none());
    }

    proptest! {
        #[test]
        fn recovers_planted_solution(
            entries in prop::collection::vec(-9i64..10, 16),
            xs in prop::collection::vec(-9i64..10, 4),
        ) {
            let a: Vec<Vec<Rat>> = entries.chunks(4)
                .enumerate()
                .map(|(i, row)| row.iter().map(|&v| rat(v, i as i64 + 1)).collect())
                .collect();
            let x: Vec<Rat> = xs.iter().map(|&v| rat(v, 1)).collect();
            let b: Vec<Rat> = a.iter()
                .map(|row| row.iter().zip(&x).map(|(p, q)| p * q).sum())
                .collect();
            if let Some(sol) = solve(&a, &b) {
                prop_assert_eq!(sol, x);
            }
        }
    }
}
