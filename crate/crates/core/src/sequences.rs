//! Eulerian, Bernoulli, tangent, Genocchi and alternating-sum sequences.
//!
//! Most sequences can be reached by more than one route (recurrence, power
//! series, brute-force counting). The routes are kept separate so they can be
//! compared against one another.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use thiserror::Error;

use crate::arith::{binomial, Integer, Rational};
use crate::perm::{self, Convention, PermError};
use crate::series;

/// Largest odd index the counting route for tangent numbers will enumerate.
pub const COUNTING_GUARD: usize = 11;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("tangent numbers are indexed by odd m, got {0}")]
    EvenIndex(usize),
    #[error("index must be at least {min}, got {index}")]
    IndexTooSmall { index: usize, min: usize },
    #[error("route {route} produced the non-integer {value} at index {index}")]
    NonInteger {
        route: Route,
        index: usize,
        value: Rational,
    },
    #[error("route {0} does not compute tangent numbers")]
    UnsupportedRoute(Route),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(
        "unknown sequence {0:?}; expected one of tangent, bernoulli, genocchi, eulerian, altsum"
    )]
    UnknownName(String),
}

/// How a value was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Route {
    /// Bernoulli numbers through the closed tangent formula.
    Bernoulli,
    /// Coefficient extraction from a generating function.
    Series,
    /// Exhaustive enumeration of permutations.
    Counting,
    /// Triangle or defining recurrence.
    Recurrence,
    /// Sign rule over tangent numbers.
    ClosedForm,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Bernoulli => "bernoulli",
            Route::Series => "series",
            Route::Counting => "counting",
            Route::Recurrence => "recurrence",
            Route::ClosedForm => "closed-form",
        })
    }
}

/// Rows of the Eulerian triangle: `E(n, k)` for `k = 0..n-1`, via
/// `E(n,k) = (k+1) E(n-1,k) + (n-k) E(n-1,k-1)`.
pub fn eulerian_numbers(n: usize) -> Vec<Integer> {
    if n == 0 {
        return Vec::new();
    }
    let mut row = vec![Integer::from(1)];
    for m in 2..=n {
        let mut next = Vec::with_capacity(m);
        for k in 0..m {
            let stay = row.get(k).map(|e| e * (k + 1)).unwrap_or_default();
            let grow = if k > 0 {
                &row[k - 1] * (m - k)
            } else {
                Integer::from(0)
            };
            next.push(stay + grow);
        }
        row = next;
    }
    row
}

/// Eulerian polynomial at `t` from the triangle.
pub fn eulerian_poly_at(n: usize, t: &Rational, convention: Convention) -> Rational {
    if n == 0 {
        return Rational::one();
    }
    let standard: Rational = eulerian_numbers(n)
        .into_iter()
        .enumerate()
        .map(|(k, e)| Rational::from(e) * t.pow(k as u32))
        .sum();
    match convention {
        Convention::Standard => standard,
        Convention::Shifted => standard * t,
    }
}

/// `B_0..=B_n` from `sum_{j=0..m} C(m+1, j) B_j = 0`, with `B_1 = -1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::one()];
    for m in 1..=n {
        let acc: Rational = (0..m)
            .filter(|&j| !out[j].is_zero())
            .map(|j| Rational::from(binomial(m as u32 + 1, j as i64)) * &out[j])
            .sum();
        out.push(-acc / Rational::from(m as i64 + 1));
    }
    out
}

pub fn bernoulli(n: usize) -> Rational {
    bernoulli_numbers(n).pop().expect("B_0 is always present")
}

/// `T_m` before the integrality check. The counting route is integral by
/// construction.
pub fn tangent_rational(m: usize, route: Route) -> Result<Rational, SequenceError> {
    if m.is_multiple_of(2) {
        return Err(SequenceError::EvenIndex(m));
    }
    let n = m.div_ceil(2);
    let sign = Rational::from(if n % 2 == 1 { 1 } else { -1 });
    match route {
        Route::Bernoulli => {
            let b = bernoulli(2 * n);
            let four_n = Rational::from(Integer::from(1) << (2 * n));
            let factor = &four_n * &(&four_n - &Rational::one()) / Rational::from(2 * n as i64);
            Ok(sign * factor * b)
        }
        Route::Series => {
            let coeff = series::tanh_series(m)
                .egf_coeff(m)
                .expect("order equals index");
            Ok(sign * coeff)
        }
        Route::Counting => Ok(perm::count_alternating(m, COUNTING_GUARD)?.into()),
        Route::Recurrence | Route::ClosedForm => Err(SequenceError::UnsupportedRoute(route)),
    }
}

/// `T_m` for odd `m`; errors if a rational route fails to land on an integer.
pub fn tangent(m: usize, route: Route) -> Result<Integer, SequenceError> {
    let value = tangent_rational(m, route)?;
    value.to_integer().ok_or(SequenceError::NonInteger {
        route,
        index: m,
        value,
    })
}

/// `G_1..=G_n` as raw rationals from the generating function.
pub fn genocchi_rationals(n: usize) -> Vec<Rational> {
    let s = series::genocchi_series(n);
    (1..=n)
        .map(|k| s.egf_coeff(k).expect("k <= order"))
        .collect()
}

pub fn genocchi(n: usize) -> Result<Integer, SequenceError> {
    if n == 0 {
        return Err(SequenceError::IndexTooSmall { index: 0, min: 1 });
    }
    let value = genocchi_rationals(n).pop().expect("n >= 1");
    value.to_integer().ok_or(SequenceError::NonInteger {
        route: Route::Series,
        index: n,
        value,
    })
}

/// `S_n` from the sign rule: `S_0 = 1`, `S_2n = 0`, `S_{2n-1} = (-1)^(n-1) T_{2n-1}`.
/// Tangent numbers come from the Bernoulli route.
pub fn alternating_sum(n: usize) -> Integer {
    if n == 0 {
        return Integer::from(1);
    }
    if n.is_multiple_of(2) {
        return Integer::from(0);
    }
    let half = n.div_ceil(2);
    let t = tangent(n, Route::Bernoulli).expect("odd index; Bernoulli route is integral");
    if half % 2 == 1 {
        t
    } else {
        -t
    }
}

/// Names accepted by [`SequenceName::from_str`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceName {
    Tangent,
    Bernoulli,
    Genocchi,
    Eulerian,
    AltSum,
}

impl FromStr for SequenceName {
    type Err = SequenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tangent" => Ok(SequenceName::Tangent),
            "bernoulli" => Ok(SequenceName::Bernoulli),
            "genocchi" => Ok(SequenceName::Genocchi),
            "eulerian" => Ok(SequenceName::Eulerian),
            "altsum" => Ok(SequenceName::AltSum),
            other => Err(SequenceError::UnknownName(other.to_string())),
        }
    }
}

impl fmt::Display for SequenceName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SequenceName::Tangent => "tangent",
            SequenceName::Bernoulli => "bernoulli",
            SequenceName::Genocchi => "genocchi",
            SequenceName::Eulerian => "eulerian",
            SequenceName::AltSum => "altsum",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry<V> {
    pub value: V,
    pub route: Route,
}

/// Memoized values of one sequence, keyed by index.
///
/// Entries are never replaced or evicted. The lock is held while a missing
/// value is computed, so each index is computed at most once; `compute`
/// must not touch the same table.
pub struct SequenceTable<V> {
    name: SequenceName,
    values: Mutex<BTreeMap<usize, Entry<V>>>,
}

impl<V: Clone> SequenceTable<V> {
    pub fn new(name: SequenceName) -> Self {
        SequenceTable {
            name,
            values: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn name(&self) -> SequenceName {
        self.name
    }

    pub fn get(&self, index: usize) -> Option<Entry<V>> {
        self.values.lock().expect("table lock").get(&index).cloned()
    }

    pub fn get_or_compute<E>(
        &self,
        index: usize,
        route: Route,
        compute: impl FnOnce(usize) -> Result<V, E>,
    ) -> Result<Entry<V>, E> {
        let mut values = self.values.lock().expect("table lock");
        if let Some(entry) = values.get(&index) {
            return Ok(entry.clone());
        }
        let entry = Entry {
            value: compute(index)?,
            route,
        };
        values.insert(index, entry.clone());
        Ok(entry)
    }

    pub fn len(&self) -> usize {
        self.values.lock().expect("table lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A rendered sequence: either a flat list or triangle rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Listing {
    Values(Vec<String>),
    Rows(Vec<Vec<String>>),
}

/// Memoized tables for every named sequence.
pub struct Catalog {
    tangent: SequenceTable<Integer>,
    bernoulli: SequenceTable<Rational>,
    genocchi: SequenceTable<Integer>,
    eulerian: SequenceTable<Vec<Integer>>,
    altsum: SequenceTable<Integer>,
}

impl Default for Catalog {
    fn default() -> Self {
        Catalog {
            tangent: SequenceTable::new(SequenceName::Tangent),
            bernoulli: SequenceTable::new(SequenceName::Bernoulli),
            genocchi: SequenceTable::new(SequenceName::Genocchi),
            eulerian: SequenceTable::new(SequenceName::Eulerian),
            altsum: SequenceTable::new(SequenceName::AltSum),
        }
    }
}

impl Catalog {
    /// First `count` values of `name`: `T_1, T_3, ...`; `B_0, B_1, ...`;
    /// `G_1, G_2, ...`; `S_0, S_1, ...`; Eulerian rows `n = 1..=count`.
    pub fn first(&self, name: SequenceName, count: usize) -> Result<Listing, SequenceError> {
        let strings = |v: Vec<String>| Ok(Listing::Values(v));
        match name {
            SequenceName::Tangent => strings(
                (0..count)
                    .map(|i| {
                        self.tangent
                            .get_or_compute(2 * i + 1, Route::Bernoulli, |m| {
                                tangent(m, Route::Bernoulli)
                            })
                            .map(|e| e.value.to_string())
                    })
                    .collect::<Result<_, _>>()?,
            ),
            SequenceName::Bernoulli => {
                if count > 0 && self.bernoulli.get(count - 1).is_none() {
                    let all = bernoulli_numbers(count - 1);
                    for (i, b) in all.into_iter().enumerate() {
                        self.bernoulli
                            .get_or_compute(i, Route::Recurrence, |_| Ok::<_, SequenceError>(b))?;
                    }
                }
                strings(
                    (0..count)
                        .map(|i| {
                            self.bernoulli
                                .get(i)
                                .expect("filled above")
                                .value
                                .to_string()
                        })
                        .collect(),
                )
            }
            SequenceName::Genocchi => {
                if count > 0 && self.genocchi.get(count).is_none() {
                    for (i, g) in genocchi_rationals(count).into_iter().enumerate() {
                        let index = i + 1;
                        self.genocchi.get_or_compute(index, Route::Series, |_| {
                            g.to_integer().ok_or(SequenceError::NonInteger {
                                route: Route::Series,
                                index,
                                value: g.clone(),
                            })
                        })?;
                    }
                }
                strings(
                    (1..=count)
                        .map(|i| {
                            self.genocchi
                                .get(i)
                                .expect("filled above")
                                .value
                                .to_string()
                        })
                        .collect(),
                )
            }
            SequenceName::AltSum => strings(
                (0..count)
                    .map(|n| {
                        self.altsum
                            .get_or_compute(n, Route::ClosedForm, |n| {
                                Ok::<_, SequenceError>(alternating_sum(n))
                            })
                            .map(|e| e.value.to_string())
                    })
                    .collect::<Result<_, _>>()?,
            ),
            SequenceName::Eulerian => Ok(Listing::Rows(
                (1..=count)
                    .map(|n| {
                        self.eulerian
                            .get_or_compute(n, Route::Recurrence, |n| {
                                Ok::<_, SequenceError>(eulerian_numbers(n))
                            })
                            .map(|e| e.value.iter().map(|v| v.to_string()).collect())
                    })
                    .collect::<Result<_, _>>()?,
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{alternating_sum_bruteforce, excedance_distribution, DEFAULT_GUARD};

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d).unwrap()
    }

    #[test]
    fn eulerian_rows() {
        assert_eq!(eulerian_numbers(0), Vec::<Integer>::new());
        assert_eq!(eulerian_numbers(1), ints(&[1]));
        assert_eq!(eulerian_numbers(3), ints(&[1, 4, 1]));
        assert_eq!(eulerian_numbers(4), ints(&[1, 11, 11, 1]));
        for n in 1..=DEFAULT_GUARD {
            assert_eq!(
                eulerian_numbers(n),
                excedance_distribution(n, DEFAULT_GUARD).unwrap()
            );
        }
    }

    #[test]
    fn eulerian_polynomial() {
        let one = Rational::one();
        assert_eq!(
            eulerian_poly_at(5, &one, Convention::Standard),
            Rational::from(120)
        );
        assert_eq!(
            eulerian_poly_at(5, &one, Convention::Shifted),
            Rational::from(120)
        );
        assert_eq!(
            eulerian_poly_at(5, &Rational::from(-1), Convention::Standard),
            Rational::from(16)
        );
        assert_eq!(
            eulerian_poly_at(0, &Rational::from(7), Convention::Standard),
            Rational::one()
        );
        assert_eq!(
            eulerian_poly_at(0, &Rational::from(7), Convention::Shifted),
            Rational::one()
        );
        for n in 0..=6 {
            for t in [q(-1, 1), q(2, 1), q(1, 2), q(-3, 1)] {
                for c in [Convention::Standard, Convention::Shifted] {
                    assert_eq!(
                        eulerian_poly_at(n, &t, c),
                        perm::eulerian_poly_bruteforce(n, &t, c, DEFAULT_GUARD).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), q(1, 1));
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(4), q(-1, 30));
        let s = series::bernoulli_series(20);
        for (n, b) in bernoulli_numbers(20).into_iter().enumerate() {
            assert_eq!(b, s.egf_coeff(n).unwrap(), "B_{n}");
            if n >= 3 && n % 2 == 1 {
                assert!(b.is_zero());
            }
        }
    }

    #[test]
    fn tangent_small_values() {
        for (m, t) in [(1, 1), (3, 2), (5, 16)] {
            for route in [Route::Bernoulli, Route::Series, Route::Counting] {
                assert_eq!(
                    tangent(m, route).unwrap(),
                    Integer::from(t),
                    "T_{m} via {route}"
                );
            }
        }
    }

    #[test]
    fn tangent_errors() {
        assert_eq!(tangent(4, Route::Series), Err(SequenceError::EvenIndex(4)));
        assert!(matches!(
            tangent(13, Route::Counting),
            Err(SequenceError::Perm(_))
        ));
    }

    #[test]
    fn tangent_rational_routes_agree_to_25() {
        for m in (1..=25).step_by(2) {
            let b = tangent(m, Route::Bernoulli).unwrap();
            assert_eq!(b, tangent(m, Route::Series).unwrap(), "T_{m}");
            assert!(b > Integer::from(0));
        }
    }

    #[test]
    fn genocchi_values() {
        assert_eq!(genocchi(1).unwrap(), Integer::from(1));
        assert_eq!(genocchi(3).unwrap(), Integer::from(0));
        assert_eq!(genocchi(6).unwrap(), Integer::from(-3));
        assert!(genocchi(0).is_err());
        for n in (3..=15).step_by(2) {
            assert_eq!(genocchi(n).unwrap(), Integer::from(0));
        }
    }

    #[test]
    fn alternating_sum_values() {
        assert_eq!(alternating_sum(0), Integer::from(1));
        assert_eq!(alternating_sum(4), Integer::from(0));
        assert_eq!(alternating_sum(3), Integer::from(-2));
        for n in 0..=DEFAULT_GUARD {
            assert_eq!(
                alternating_sum(n),
                alternating_sum_bruteforce(n, DEFAULT_GUARD).unwrap()
            );
        }
    }

    #[test]
    fn names_round_trip() {
        for name in ["tangent", "bernoulli", "genocchi", "eulerian", "altsum"] {
            assert_eq!(name.parse::<SequenceName>().unwrap().to_string(), name);
        }
        assert!("fibonacci".parse::<SequenceName>().is_err());
    }

    #[test]
    fn table_memoizes_once() {
        let table = SequenceTable::<Integer>::new(SequenceName::AltSum);
        let mut calls = 0;
        for _ in 0..3 {
            let e = table
                .get_or_compute(3, Route::ClosedForm, |n| {
                    calls += 1;
                    Ok::<_, SequenceError>(alternating_sum(n))
                })
                .unwrap();
            assert_eq!(e.value, Integer::from(-2));
            assert_eq!(e.route, Route::ClosedForm);
        }
        assert_eq!(calls, 1);
        assert_eq!(table.len(), 1);
    }

    #[test]
    fn catalog_listings() {
        let c = Catalog::default();
        let vals = |v: &[&str]| Listing::Values(v.iter().map(|s| s.to_string()).collect());
        assert_eq!(
            c.first(SequenceName::AltSum, 5).unwrap(),
            vals(&["1", "1", "0", "-2", "0"])
        );
        assert_eq!(
            c.first(SequenceName::Genocchi, 3).unwrap(),
            vals(&["1", "-1", "0"])
        );
        assert_eq!(
            c.first(SequenceName::Tangent, 3).unwrap(),
            vals(&["1", "2", "16"])
        );
        assert_eq!(
            c.first(SequenceName::Bernoulli, 3).unwrap(),
            vals(&["1", "-1/2", "1/6"])
        );
        assert_eq!(
            c.first(SequenceName::Eulerian, 3).unwrap(),
            Listing::Rows(vec![
                vec!["1".into()],
                vec!["1".into(), "1".into()],
                vec!["1".into(), "4".into(), "1".into()]
            ])
        );
        // second call hits the memo
        assert_eq!(
            c.first(SequenceName::Genocchi, 2).unwrap(),
            vals(&["1", "-1"])
        );
    }
}
