//! Brute-force enumeration of symmetric groups and the statistics computed
//! over them. Everything here is computed by direct counting and serves as
//! the reference for the closed forms and series elsewhere in the crate.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{Integer, Rational};

/// Largest length enumerated when the caller opts in.
pub const HARD_GUARD: usize = 12;
/// Largest length enumerated by default.
pub const DEFAULT_GUARD: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("refusing to enumerate S_{n}: lengths above {guard} are guarded; raise the guard explicitly (e.g. --force allows up to {HARD_GUARD})")]
    Guard { n: usize, guard: usize },
    #[error("not a permutation of 1..{0}")]
    NotBijection(usize),
}

/// A permutation of `{1..n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn new(images: Vec<u8>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(PermError::NotBijection(n));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n as u8).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    /// Number of positions `i` with `σ(i) > i`.
    pub fn excedances(&self) -> usize {
        excedances(&self.images)
    }

    /// `σ(1) < σ(2) > σ(3) < ...`; vacuously true for lengths 0 and 1.
    pub fn is_alternating_up_down(&self) -> bool {
        is_up_down(&self.images)
    }

    /// `σ(i) ↦ n + 1 - σ(i)`.
    pub fn complement(&self) -> Permutation {
        let n = self.len() as u8;
        Permutation {
            images: self.images.iter().map(|&v| n + 1 - v).collect(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn excedances(images: &[u8]) -> usize {
    images
        .iter()
        .enumerate()
        .filter(|&(i, &v)| v as usize > i + 1)
        .count()
}

fn is_up_down(images: &[u8]) -> bool {
    images
        .windows(2)
        .enumerate()
        .all(|(i, w)| if i % 2 == 0 { w[0] < w[1] } else { w[0] > w[1] })
}

/// Lexicographic successor in place; false once `a` is the last permutation.
fn next_permutation(a: &mut [u8]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

fn check_guard(n: usize, guard: usize) -> Result<(), PermError> {
    let guard = guard.min(HARD_GUARD);
    if n > guard {
        Err(PermError::Guard { n, guard })
    } else {
        Ok(())
    }
}

/// Lexicographic iterator over `S_n`.
pub struct Permutations {
    current: Option<Vec<u8>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.current.as_mut()?;
        let out = Permutation {
            images: cur.clone(),
        };
        if !next_permutation(cur) {
            self.current = None;
        }
        Some(out)
    }
}

/// Every element of `S_n` exactly once, in lexicographic order.
pub fn enumerate_permutations(n: usize) -> Result<Permutations, PermError> {
    check_guard(n, HARD_GUARD)?;
    Ok(Permutations {
        current: Some((1..=n as u8).collect()),
    })
}

/// Folds `f` over every permutation of `S_n` in parallel, one task per value
/// of `σ(1)`, and combines the partial results in ascending order of `σ(1)`.
fn fold_partitioned<T, F>(
    n: usize,
    guard: usize,
    init: impl Fn() -> T + Sync,
    f: F,
    combine: impl Fn(T, T) -> T,
) -> Result<T, PermError>
where
    T: Send,
    F: Fn(&mut T, &[u8]) + Sync,
{
    check_guard(n, guard)?;
    if n == 0 {
        let mut acc = init();
        f(&mut acc, &[]);
        return Ok(acc);
    }
    let parts: Vec<T> = (1..=n as u8)
        .into_par_iter()
        .map(|first| {
            let mut acc = init();
            let mut images = Vec::with_capacity(n);
            images.push(first);
            images.extend((1..=n as u8).filter(|&v| v != first));
            loop {
                f(&mut acc, &images);
                if !next_permutation(&mut images[1..]) {
                    break;
                }
            }
            acc
        })
        .collect();
    Ok(parts.into_iter().reduce(combine).unwrap_or_else(init))
}

fn tally_excedances(n: usize, guard: usize) -> Result<Vec<u64>, PermError> {
    let width = n.max(1);
    fold_partitioned(
        n,
        guard,
        || vec![0u64; width],
        |acc, images| acc[excedances(images)] += 1,
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    )
}

/// Entry `k` counts permutations of `S_n` with exactly `k` excedances.
/// For `n = 0` the single entry counts the empty permutation.
pub fn excedance_distribution(n: usize, guard: usize) -> Result<Vec<Integer>, PermError> {
    Ok(tally_excedances(n, guard)?
        .into_iter()
        .map(Integer::from)
        .collect())
}

/// `S_n = sum over S_n of (-1)^exc(σ)`.
pub fn alternating_sum_bruteforce(n: usize, guard: usize) -> Result<Integer, PermError> {
    let total = fold_partitioned(
        n,
        guard,
        || 0i64,
        |acc, images| {
            if excedances(images).is_multiple_of(2) {
                *acc += 1
            } else {
                *acc -= 1
            }
        },
        |a, b| a + b,
    )?;
    Ok(Integer::from(total))
}

/// Number of up-down permutations of length `n`.
pub fn count_alternating(n: usize, guard: usize) -> Result<Integer, PermError> {
    count_matching(n, guard, is_up_down)
}

/// Number of down-up permutations (`σ(1) > σ(2) < ...`) of length `n`.
pub fn count_alternating_down_up(n: usize, guard: usize) -> Result<Integer, PermError> {
    count_matching(n, guard, |images| {
        images.windows(2).enumerate().all(
            |(i, w)| {
                if i % 2 == 0 {
                    w[0] > w[1]
                } else {
                    w[0] < w[1]
                }
            },
        )
    })
}

fn count_matching(
    n: usize,
    guard: usize,
    pred: impl Fn(&[u8]) -> bool + Sync,
) -> Result<Integer, PermError> {
    let total = fold_partitioned(
        n,
        guard,
        || 0u64,
        |acc, images| {
            if pred(images) {
                *acc += 1
            }
        },
        |a, b| a + b,
    )?;
    Ok(Integer::from(total))
}

/// Which power of `t` each permutation contributes to an Eulerian polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// `t^exc(σ)`
    Standard,
    /// `t^(exc(σ)+1)`, with the length-0 polynomial fixed to 1.
    Shifted,
}

/// Evaluates the Eulerian polynomial at `t` by summing over `S_n`.
pub fn eulerian_poly_bruteforce(
    n: usize,
    t: &Rational,
    convention: Convention,
    guard: usize,
) -> Result<Rational, PermError> {
    let tally = tally_excedances(n, guard)?;
    let standard: Rational = tally
        .iter()
        .enumerate()
        .map(|(k, &count)| Rational::from(Integer::from(count)) * t.pow(k as u32))
        .sum();
    Ok(match convention {
        Convention::Standard => standard,
        Convention::Shifted if n == 0 => Rational::one(),
        Convention::Shifted => standard * t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorial;

    fn perm(v: &[u8]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn excedance_examples() {
        assert_eq!(perm(&[2, 4, 1, 3]).excedances(), 2);
        assert_eq!(Permutation::identity(6).excedances(), 0);
        assert_eq!(perm(&[2, 3, 1]).excedances(), 2);
        assert_eq!(Permutation::identity(0).excedances(), 0);
    }

    #[test]
    fn up_down_examples() {
        assert!(perm(&[1, 3, 2]).is_alternating_up_down());
        assert!(!perm(&[1, 2, 3]).is_alternating_up_down());
        assert!(perm(&[2, 3, 1]).is_alternating_up_down());
        assert!(Permutation::identity(0).is_alternating_up_down());
        assert!(Permutation::identity(1).is_alternating_up_down());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![3, 1]).is_err());
    }

    #[test]
    fn enumeration_edges() {
        let empty: Vec<_> = enumerate_permutations(0).unwrap().collect();
        assert_eq!(empty, vec![Permutation::identity(0)]);
        let one: Vec<_> = enumerate_permutations(1).unwrap().collect();
        assert_eq!(one, vec![perm(&[1])]);
        let three: Vec<_> = enumerate_permutations(3).unwrap().collect();
        assert_eq!(three.len(), 6);
        assert_eq!(three[0], perm(&[1, 2, 3]));
        assert_eq!(three[5], perm(&[3, 2, 1]));
        assert!(matches!(
            enumerate_permutations(13),
            Err(PermError::Guard { n: 13, .. })
        ));
    }

    #[test]
    fn enumeration_is_exhaustive_and_sorted() {
        for n in 0..=8 {
            let all: Vec<_> = enumerate_permutations(n).unwrap().collect();
            assert_eq!(Integer::from(all.len()), factorial(n as u32));
            assert!(all.windows(2).all(|w| w[0] < w[1]));
            for p in &all {
                let mut sorted = p.images().to_vec();
                sorted.sort_unstable();
                assert_eq!(sorted, Permutation::identity(n).images());
            }
        }
    }

    #[test]
    fn enumeration_is_deterministic() {
        let a: Vec<_> = enumerate_permutations(6).unwrap().collect();
        let b: Vec<_> = enumerate_permutations(6).unwrap().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn distributions() {
        let ints = |v: &[i64]| v.iter().map(|&x| Integer::from(x)).collect::<Vec<_>>();
        assert_eq!(excedance_distribution(1, 8).unwrap(), ints(&[1]));
        assert_eq!(excedance_distribution(2, 8).unwrap(), ints(&[1, 1]));
        assert_eq!(excedance_distribution(3, 8).unwrap(), ints(&[1, 4, 1]));
        assert!(excedance_distribution(9, 8).is_err());
        assert!(excedance_distribution(9, 12).is_ok());
    }

    // The partitioned fold must agree with a plain sequential pass.
    #[test]
    fn partitioned_matches_sequential() {
        for n in 0..=7 {
            let mut tally = vec![Integer::from(0); n.max(1)];
            for p in enumerate_permutations(n).unwrap() {
                tally[p.excedances()] += 1;
            }
            assert_eq!(excedance_distribution(n, 8).unwrap(), tally);
        }
    }

    #[test]
    fn distribution_properties() {
        for n in 1..=8 {
            let d = excedance_distribution(n, 8).unwrap();
            assert_eq!(d.iter().sum::<Integer>(), factorial(n as u32));
            for k in 0..n {
                assert_eq!(d[k], d[n - 1 - k]);
            }
            let signed: Integer = d
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 0 { c.clone() } else { -c.clone() })
                .sum();
            assert_eq!(alternating_sum_bruteforce(n, 8).unwrap(), signed);
        }
    }

    #[test]
    fn alternating_sums() {
        assert_eq!(alternating_sum_bruteforce(0, 8).unwrap(), Integer::from(1));
        assert_eq!(alternating_sum_bruteforce(2, 8).unwrap(), Integer::from(0));
        assert_eq!(alternating_sum_bruteforce(3, 8).unwrap(), Integer::from(-2));
    }

    #[test]
    fn alternating_counts() {
        assert_eq!(count_alternating(1, 8).unwrap(), Integer::from(1));
        assert_eq!(count_alternating(3, 8).unwrap(), Integer::from(2));
        assert_eq!(count_alternating(5, 8).unwrap(), Integer::from(16));
    }

    #[test]
    fn complement_swaps_up_down_and_down_up() {
        for m in 1..=4 {
            let n = 2 * m;
            assert_eq!(
                count_alternating(n, 8).unwrap(),
                count_alternating_down_up(n, 8).unwrap()
            );
            let via_complement = enumerate_permutations(n)
                .unwrap()
                .filter(|p| p.complement().is_alternating_up_down())
                .count();
            assert_eq!(
                count_alternating_down_up(n, 8).unwrap(),
                Integer::from(via_complement)
            );
        }
    }

    #[test]
    fn eulerian_polynomial_evaluations() {
        let one = Rational::one();
        let minus_one = Rational::from(-1);
        assert_eq!(
            eulerian_poly_bruteforce(3, &one, Convention::Standard, 8).unwrap(),
            Rational::from(6)
        );
        assert_eq!(
            eulerian_poly_bruteforce(3, &one, Convention::Shifted, 8).unwrap(),
            Rational::from(6)
        );
        assert_eq!(
            eulerian_poly_bruteforce(3, &minus_one, Convention::Standard, 8).unwrap(),
            Rational::from(-2)
        );
        assert_eq!(
            eulerian_poly_bruteforce(3, &minus_one, Convention::Shifted, 8).unwrap(),
            Rational::from(2)
        );
        assert_eq!(
            eulerian_poly_bruteforce(0, &Rational::from(7), Convention::Shifted, 8).unwrap(),
            Rational::one()
        );
    }
}
