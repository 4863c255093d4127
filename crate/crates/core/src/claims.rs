//! Mechanical verification of the identities relating excedance sums,
//! tangent, Bernoulli and Genocchi numbers.
//!
//! Each [`Claim`] compares two independently computed sides over a finite
//! index range. Claims that turn out to be false are kept and reported as
//! `FAIL` with every counterexample found; nothing is corrected silently.

use std::fmt::Write as _;
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{binomial, mod_floor, sign_pow, Integer, Rational};
use crate::perm::{self, Convention, PermError, DEFAULT_GUARD, HARD_GUARD};
use crate::sequences::{self, Route, SequenceError, SequenceName, SequenceTable};
use crate::series::{self, Series};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClaimError {
    #[error("unknown claim id {0:?}")]
    UnknownId(String),
    #[error("max_n = {max_n} exceeds the brute-force guard {guard}; pass the override to allow up to {HARD_GUARD}")]
    Guard { max_n: usize, guard: usize },
    #[error("claim {0:?} has no source citation")]
    MissingCitation(String),
    #[error("duplicate claim id {0:?}")]
    DuplicateId(String),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        })
    }
}

/// One evaluated index: both sides of the identity and an optional label for
/// the sub-case (parameter value, route pair, congruence).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub n: usize,
    pub lhs: Rational,
    pub rhs: Rational,
    pub context: Option<String>,
}

impl Comparison {
    fn new(n: usize, lhs: impl Into<Rational>, rhs: impl Into<Rational>) -> Self {
        Comparison {
            n,
            lhs: lhs.into(),
            rhs: rhs.into(),
            context: None,
        }
    }

    fn with_context(mut self, context: impl Into<String>) -> Self {
        self.context = Some(context.into());
        self
    }

    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

impl std::fmt::Display for Comparison {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "n={}", self.n)?;
        if let Some(ctx) = &self.context {
            write!(f, " ({ctx})")?;
        }
        write!(f, ": lhs={} rhs={}", self.lhs, self.rhs)
    }
}

/// Inclusive index range; `None` when nothing was tested.
pub type IndexRange = Option<(usize, usize)>;

/// Shared state for one verification run.
pub struct EvalContext {
    guard: usize,
    brute_sums: SequenceTable<Integer>,
}

impl EvalContext {
    pub fn new(guard: usize) -> Self {
        EvalContext {
            guard,
            brute_sums: SequenceTable::new(SequenceName::AltSum),
        }
    }

    /// `S_n` by enumeration, memoized across claims.
    fn brute_sum(&self, n: usize) -> Result<Integer, ClaimError> {
        let guard = self.guard;
        Ok(self
            .brute_sums
            .get_or_compute(n, Route::Counting, |n| {
                perm::alternating_sum_bruteforce(n, guard)
            })?
            .value)
    }
}

type Evaluator = fn(&EvalContext, (usize, usize)) -> Result<Vec<Comparison>, ClaimError>;

/// A registered identity.
#[derive(Clone)]
pub struct Claim {
    pub id: &'static str,
    pub citation: &'static str,
    pub statement: &'static str,
    /// Declared inclusive index bounds.
    pub range: (usize, usize),
    /// Largest index `n` whose evaluation needs permutations of length
    /// `n + brute_offset`; the tested range is clipped accordingly.
    brute_offset: usize,
    /// First index at which the identity is known to fail, if any.
    pub fails_from: Option<usize>,
    pub notes: &'static str,
    evaluate: Evaluator,
}

impl std::fmt::Debug for Claim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Claim")
            .field("id", &self.id)
            .field("range", &self.range)
            .field("fails_from", &self.fails_from)
            .finish()
    }
}

impl Claim {
    /// The declared range clipped to `[0, max_n]`.
    pub fn tested_range(&self, max_n: usize) -> IndexRange {
        let (lo, hi) = self.range;
        let cap = max_n.checked_sub(self.brute_offset)?;
        let hi = hi.min(cap);
        (lo <= hi).then_some((lo, hi))
    }

    /// Verdict expected when testing `range`: FAIL exactly when the range
    /// reaches the first known failing index.
    pub fn expected_verdict(&self, range: IndexRange) -> Verdict {
        match (self.fails_from, range) {
            (Some(first), Some((lo, hi))) if lo <= first && first <= hi => Verdict::Fail,
            _ => Verdict::Pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimResult {
    pub id: String,
    pub citation: String,
    pub verdict: Verdict,
    pub expected: Verdict,
    pub range: IndexRange,
    pub counterexamples: Vec<Comparison>,
    pub notes: String,
}

impl ClaimResult {
    pub fn first_counterexample(&self) -> Option<&Comparison> {
        self.counterexamples.first()
    }

    pub fn matches_expectation(&self) -> bool {
        self.verdict == self.expected
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportMeta {
    pub generated_at_unix: u64,
    pub tool_version: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub max_n: usize,
    pub results: Vec<ClaimResult>,
    pub meta: ReportMeta,
}

impl Report {
    pub fn all_as_expected(&self) -> bool {
        self.results.iter().all(ClaimResult::matches_expectation)
    }

    pub fn any_failed(&self) -> bool {
        self.results.iter().any(|r| r.verdict == Verdict::Fail)
    }
}

/// An ordered collection of claims with unique ids and non-empty citations.
#[derive(Debug, Clone)]
pub struct Registry {
    claims: Vec<Claim>,
}

impl Registry {
    pub fn new(claims: Vec<Claim>) -> Result<Self, ClaimError> {
        for (i, c) in claims.iter().enumerate() {
            if c.citation.trim().is_empty() {
                return Err(ClaimError::MissingCitation(c.id.to_string()));
            }
            if claims[..i].iter().any(|d| d.id == c.id) {
                return Err(ClaimError::DuplicateId(c.id.to_string()));
            }
        }
        Ok(Registry { claims })
    }

    /// The thirteen identities, in reporting order.
    pub fn standard() -> Self {
        Registry::new(standard_claims()).expect("built-in claims are well formed")
    }

    pub fn claims(&self) -> &[Claim] {
        &self.claims
    }

    pub fn get(&self, id: &str) -> Result<&Claim, ClaimError> {
        self.claims
            .iter()
            .find(|c| c.id == id)
            .ok_or_else(|| ClaimError::UnknownId(id.to_string()))
    }

    pub fn verify_claim(
        &self,
        id: &str,
        max_n: usize,
        force: bool,
    ) -> Result<ClaimResult, ClaimError> {
        let claim = self.get(id)?;
        let ctx = EvalContext::new(guard_for(max_n, force)?);
        run_claim(claim, &ctx, max_n)
    }

    /// Verifies the given ids (all claims when `ids` is `None`) in parallel;
    /// results keep registry order when `ids` is `None`, request order otherwise.
    pub fn verify(
        &self,
        ids: Option<&[String]>,
        max_n: usize,
        force: bool,
    ) -> Result<Report, ClaimError> {
        let selected: Vec<&Claim> = match ids {
            None => self.claims.iter().collect(),
            Some(ids) => ids
                .iter()
                .map(|id| self.get(id))
                .collect::<Result<_, _>>()?,
        };
        let ctx = EvalContext::new(guard_for(max_n, force)?);
        let results = selected
            .par_iter()
            .map(|c| run_claim(c, &ctx, max_n))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Report {
            max_n,
            results,
            meta: ReportMeta {
                generated_at_unix: SystemTime::now()
                    .duration_since(UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0),
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
            },
        })
    }

    pub fn verify_all(&self, max_n: usize, force: bool) -> Result<Report, ClaimError> {
        self.verify(None, max_n, force)
    }
}

fn guard_for(max_n: usize, force: bool) -> Result<usize, ClaimError> {
    let guard = if force { HARD_GUARD } else { DEFAULT_GUARD };
    if max_n > guard {
        return Err(ClaimError::Guard { max_n, guard });
    }
    Ok(guard)
}

fn run_claim(claim: &Claim, ctx: &EvalContext, max_n: usize) -> Result<ClaimResult, ClaimError> {
    let range = claim.tested_range(max_n);
    let comparisons = match range {
        Some(r) => (claim.evaluate)(ctx, r)?,
        None => Vec::new(),
    };
    let counterexamples: Vec<Comparison> = comparisons.into_iter().filter(|c| !c.holds()).collect();
    Ok(ClaimResult {
        id: claim.id.to_string(),
        citation: claim.citation.to_string(),
        verdict: if counterexamples.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        expected: claim.expected_verdict(range),
        range,
        counterexamples,
        notes: claim.notes.to_string(),
    })
}

/// Parameter values at which the excedance generating function is checked.
pub fn phi_test_points() -> [Rational; 4] {
    [
        Rational::from(-1),
        Rational::from(2),
        Rational::new(1, 2).expect("nonzero"),
        Rational::from(-3),
    ]
}

fn egf_against_bruteforce(
    ctx: &EvalContext,
    (lo, hi): (usize, usize),
    convention: Convention,
) -> Result<Vec<Comparison>, ClaimError> {
    let mut out = Vec::new();
    let points = phi_test_points();
    let phis: Vec<Series> = points
        .iter()
        .map(|t| series::phi_series(t, hi).expect("test points avoid t = 1"))
        .collect();
    for n in lo..=hi {
        for (t, phi) in points.iter().zip(&phis) {
            let lhs = phi.egf_coeff(n).expect("n <= order");
            let rhs = perm::eulerian_poly_bruteforce(n, t, convention, ctx.guard)?;
            out.push(Comparison::new(n, lhs, rhs).with_context(format!("t={t}")));
        }
    }
    Ok(out)
}

fn signed(value: Integer, exponent: usize) -> Integer {
    value * sign_pow(exponent as u64)
}

fn standard_claims() -> Vec<Claim> {
    vec![
        Claim {
            id: "C1-egf-standard",
            citation: "Eulerian polynomials: exponential generating function",
            statement: "n! [x^n] (t-1)/(t - e^(x(t-1))) = sum over S_n of t^exc",
            range: (0, 7),
            brute_offset: 0,
            fails_from: None,
            notes: "",
            evaluate: |ctx, r| egf_against_bruteforce(ctx, r, Convention::Standard),
        },
        Claim {
            id: "C2-egf-shifted",
            citation: "Eulerian polynomials: +1 exponent convention read with the generating function",
            statement: "n! [x^n] (t-1)/(t - e^(x(t-1))) = sum over S_n of t^(exc+1)",
            range: (0, 7),
            brute_offset: 0,
            fails_from: Some(1),
            notes: "the generating function matches the unshifted convention (C1-egf-standard)",
            evaluate: |ctx, r| egf_against_bruteforce(ctx, r, Convention::Shifted),
        },
        Claim {
            id: "C3-phi-tanh",
            citation: "Alternating sum: generating function at t = -1",
            statement: "[x^k] phi(x,-1) = [x^k] (1 + tanh x), order 12",
            range: (0, 12),
            brute_offset: 0,
            fails_from: None,
            notes: "",
            evaluate: |_, (lo, hi)| {
                let phi = series::phi_series(&Rational::from(-1), 12).expect("t = -1 is admissible");
                let rhs = Series::one(12).add(&series::tanh_series(12));
                Ok((lo..=hi)
                    .map(|k| Comparison::new(k, phi.coeffs()[k].clone(), rhs.coeffs()[k].clone()))
                    .collect())
            },
        },
        Claim {
            id: "C4-sum-rule",
            citation: "Alternating sum: explicit sum rule",
            statement: "S_0 = 1, S_2n = 0, S_(2n-1) = (-1)^(n-1) T_(2n-1)",
            range: (0, 8),
            brute_offset: 0,
            fails_from: None,
            notes: "",
            evaluate: |ctx, (lo, hi)| {
                (lo..=hi)
                    .map(|n| Ok(Comparison::new(n, sequences::alternating_sum(n), ctx.brute_sum(n)?)))
                    .collect()
            },
        },
        Claim {
            id: "C5-parity",
            citation: "Derived properties: parity",
            statement: "S_2n = 0 for n >= 1",
            range: (2, 8),
            brute_offset: 0,
            fails_from: None,
            notes: "",
            evaluate: |ctx, (lo, hi)| {
                (lo..=hi)
                    .filter(|n| n % 2 == 0)
                    .map(|n| Ok(Comparison::new(n, ctx.brute_sum(n)?, Integer::from(0))))
                    .collect()
            },
        },
        Claim {
            id: "C6-tangent-bernoulli",
            citation: "Alternating sum: connection with Bernoulli numbers",
            statement: "T_m from Bernoulli numbers = T_m from tanh = number of up-down permutations of length m",
            range: (1, 11),
            brute_offset: 0,
            fails_from: None,
            notes: "",
            evaluate: |_, (lo, hi)| {
                let mut out = Vec::new();
                for m in (lo..=hi).filter(|m| m % 2 == 1) {
                    let via_bernoulli = sequences::tangent_rational(m, Route::Bernoulli)?;
                    let via_series = sequences::tangent_rational(m, Route::Series)?;
                    let via_counting = sequences::tangent_rational(m, Route::Counting)?;
                    out.push(Comparison::new(m, via_bernoulli.clone(), via_series).with_context("bernoulli vs series"));
                    out.push(Comparison::new(m, via_bernoulli, via_counting).with_context("bernoulli vs counting"));
                }
                Ok(out)
            },
        },
        Claim {
            id: "C7-integrality",
            citation: "Derived properties: integrality",
            statement: "T_m (odd m <= 25) and G_n (n <= 16) computed over the rationals have denominator 1",
            range: (1, 25),
            brute_offset: 0,
            fails_from: None,
            notes: "",
            evaluate: |_, (lo, hi)| {
                let mut out = Vec::new();
                let genocchi = sequences::genocchi_rationals(hi.min(16));
                for i in lo..=hi {
                    if i % 2 == 1 {
                        for route in [Route::Bernoulli, Route::Series] {
                            let t = sequences::tangent_rational(i, route)?;
                            out.push(
                                Comparison::new(i, t.denom().clone(), Integer::from(1))
                                    .with_context(format!("denominator of T via {route}")),
                            );
                        }
                    }
                    if i <= 16 {
                        let g = &genocchi[i - 1];
                        out.push(
                            Comparison::new(i, g.denom().clone(), Integer::from(1)).with_context("denominator of G"),
                        );
                    }
                }
                Ok(out)
            },
        },
        Claim {
            id: "C8-genocchi-relation",
            citation: "Derived properties: connection with Genocchi numbers",
            statement: "S_n = (-1)^floor((n+1)/2) G_(n+1)",
            range: (0, 8),
            brute_offset: 0,
            fails_from: Some(3),
            notes: "S_(2n-1) = -2^(2n-1) G_(2n) / (2n) holds instead",
            evaluate: |ctx, (lo, hi)| {
                let genocchi = series::genocchi_series(hi + 1);
                (lo..=hi)
                    .map(|n| {
                        let g = genocchi.egf_coeff(n + 1).expect("n + 1 <= order");
                        let rhs = g * Rational::from(sign_pow(n.div_ceil(2) as u64));
                        Ok(Comparison::new(n, ctx.brute_sum(n)?, rhs))
                    })
                    .collect()
            },
        },
        Claim {
            id: "C9-genocchi-recurrence",
            citation: "Derived properties: Genocchi recurrence",
            statement: "G_n = -sum_(k=1..n-1) C(n,k) G_k for n >= 2, G_1 = 1",
            range: (1, 12),
            brute_offset: 0,
            fails_from: Some(2),
            notes: "G_n = -(1/2) sum_(k=1..n-1) C(n,k) G_k holds instead",
            evaluate: |_, (lo, hi)| {
                let recurrence = genocchi_by_recurrence(hi, Rational::one());
                let series = series::genocchi_series(hi);
                Ok((lo..=hi)
                    .map(|n| Comparison::new(n, recurrence[n - 1].clone(), series.egf_coeff(n).expect("n <= order")))
                    .collect())
            },
        },
        Claim {
            id: "C10-congruences",
            citation: "Derived properties: congruences of alternating sums",
            statement: "S_(2n-1) even; S_(4n-1) = 0 mod 4; S_(4n+1) = 2 mod 4 (n >= 1)",
            range: (1, 13),
            brute_offset: 0,
            fails_from: Some(1),
            notes: "S_(2n-1) is even for n >= 2",
            evaluate: |_, (lo, hi)| {
                let mut out = Vec::new();
                for m in (lo..=hi).filter(|m| m % 2 == 1) {
                    let s = sequences::alternating_sum(m);
                    out.push(Comparison::new(m, mod_floor(&s, 2), Integer::from(0)).with_context("S mod 2"));
                    if m % 4 == 3 {
                        out.push(Comparison::new(m, mod_floor(&s, 4), Integer::from(0)).with_context("S mod 4"));
                    } else if m >= 5 {
                        out.push(Comparison::new(m, mod_floor(&s, 4), Integer::from(2)).with_context("S mod 4"));
                    }
                }
                Ok(out)
            },
        },
        Claim {
            id: "C11-signed-recurrence",
            citation: "Derived properties: recurrence induced on alternating sums",
            statement: "S_n = sum_(k=1..n-1) (-1)^f(n,k) C(n+1,k) S_k, f(n,k) = floor((n+1)/2) - floor((k+1)/2)",
            range: (2, 8),
            brute_offset: 0,
            fails_from: Some(2),
            notes: "",
            evaluate: |ctx, (lo, hi)| {
                (lo..=hi)
                    .map(|n| {
                        let lhs: Integer = (1..n)
                            .map(|k| {
                                let f = n.div_ceil(2) - k.div_ceil(2);
                                signed(binomial(n as u32 + 1, k as i64) * sequences::alternating_sum(k), f)
                            })
                            .sum();
                        Ok(Comparison::new(n, lhs, ctx.brute_sum(n)?))
                    })
                    .collect()
            },
        },
        Claim {
            id: "C12-insertion-recurrence",
            citation: "Derived properties: recurrence by inserting the largest element",
            statement: "S_(n+1) = sum_(k=0..n) (-1)^k C(n,k) S_k",
            range: (0, 7),
            brute_offset: 1,
            fails_from: Some(2),
            notes: "",
            evaluate: |ctx, (lo, hi)| {
                (lo..=hi)
                    .map(|n| {
                        let lhs: Integer = (0..=n)
                            .map(|k| signed(binomial(n as u32, k as i64) * sequences::alternating_sum(k), k))
                            .sum();
                        Ok(Comparison::new(n, lhs, ctx.brute_sum(n + 1)?))
                    })
                    .collect()
            },
        },
        Claim {
            id: "C13-odd-function",
            citation: "Derived properties: tanh is odd",
            statement: "[x^k] tanh x = 0 for even k <= 20",
            range: (0, 20),
            brute_offset: 0,
            fails_from: None,
            notes: "",
            evaluate: |_, (lo, hi)| {
                let tanh = series::tanh_series(20);
                Ok((lo..=hi)
                    .filter(|k| k % 2 == 0)
                    .map(|k| Comparison::new(k, tanh.coeffs()[k].clone(), Integer::from(0)))
                    .collect())
            },
        },
    ]
}

/// `G_1 = 1`, `G_n = -scale * sum_(k=1..n-1) C(n,k) G_k`.
fn genocchi_by_recurrence(n: usize, scale: Rational) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::with_capacity(n);
    for m in 1..=n {
        if m == 1 {
            out.push(Rational::one());
            continue;
        }
        let acc: Rational = (1..m)
            .map(|k| Rational::from(binomial(m as u32, k as i64)) * &out[k - 1])
            .sum();
        out.push(-(acc * &scale));
    }
    out
}

/// Output format for [`render_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Serialize)]
struct JsonCounterexample {
    n: usize,
    lhs: String,
    rhs: String,
}

#[derive(Serialize)]
struct JsonResult<'a> {
    id: &'a str,
    paper_ref: &'a str,
    verdict: Verdict,
    range: Vec<usize>,
    counterexamples: Vec<JsonCounterexample>,
    notes: &'a str,
}

#[derive(Serialize)]
struct JsonMeta<'a> {
    generated_at_unix: u64,
    tool_version: &'a str,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    max_n: usize,
    results: Vec<JsonResult<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    meta: Option<JsonMeta<'a>>,
}

fn range_text(range: IndexRange) -> String {
    match range {
        Some((lo, hi)) => format!("{lo}..{hi}"),
        None => "-".to_string(),
    }
}

/// Renders a report as a fixed-width table or as JSON. `with_meta` controls
/// whether the JSON carries the timestamp block; text output never does.
pub fn render_report(report: &Report, format: Format, with_meta: bool) -> String {
    match format {
        Format::Json => {
            let doc = JsonReport {
                max_n: report.max_n,
                results: report
                    .results
                    .iter()
                    .map(|r| JsonResult {
                        id: &r.id,
                        paper_ref: &r.citation,
                        verdict: r.verdict,
                        range: r.range.map(|(lo, hi)| vec![lo, hi]).unwrap_or_default(),
                        counterexamples: r
                            .counterexamples
                            .iter()
                            .map(|c| JsonCounterexample {
                                n: c.n,
                                lhs: c.lhs.to_string(),
                                rhs: c.rhs.to_string(),
                            })
                            .collect(),
                        notes: &r.notes,
                    })
                    .collect(),
                meta: with_meta.then(|| JsonMeta {
                    generated_at_unix: report.meta.generated_at_unix,
                    tool_version: &report.meta.tool_version,
                }),
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let id_w = report
                .results
                .iter()
                .map(|r| r.id.len())
                .max()
                .unwrap_or(0)
                .max(2);
            let ref_w = report
                .results
                .iter()
                .map(|r| r.citation.len())
                .max()
                .unwrap_or(0)
                .max(3);
            let mut s = String::new();
            let _ = writeln!(
                s,
                "{:<id_w$}  {:<ref_w$}  {:<7}  {:<7}  FIRST COUNTEREXAMPLE",
                "ID", "REF", "RANGE", "VERDICT"
            );
            for r in &report.results {
                let first = r
                    .first_counterexample()
                    .map(|c| c.to_string())
                    .unwrap_or_default();
                let line = format!(
                    "{:<id_w$}  {:<ref_w$}  {:<7}  {:<7}  {first}",
                    r.id,
                    r.citation,
                    range_text(r.range),
                    r.verdict.to_string()
                );
                let _ = writeln!(s, "{}", line.trim_end());
            }
            s
        }
    }
}
