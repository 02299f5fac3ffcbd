//! The conjectural characters `a_n`, `b_n` of an alternative algebra, computed
//! degree by degree from the sl3 defining equations, plus checks against the
//! published tables.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::laurent::{bigint_from_json, bigint_to_json, RatLaurent};
use crate::sl3char::{adjoint_character, weyl_factor, ADJOINT_EXTRACTION};
use crate::symfunc::{lambda_op, Basis, CoefficientAction, Partition, Scalar, SymFunc, SymFuncError};

/// Version stamp written into prediction caches.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum ConjectureError {
    #[error("degree {degree}: coefficient of s[{partition}] is {value}, not an integer")]
    NonIntegral { degree: usize, partition: Partition, value: String },
    #[error("degree {degree}: coefficient of s[{partition}] still depends on q1, q2")]
    NonScalar { degree: usize, partition: Partition },
    #[error("max degree must be at least 1")]
    EmptyRange,
    #[error(transparent)]
    SymFunc(#[from] SymFuncError),
    #[error("cache: {0}")]
    Cache(String),
    #[error("cache was written by version {found}, expected {expected}")]
    StaleCache { found: String, expected: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Knobs for perturbed runs used as negative controls.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PredictionOptions {
    pub action: CoefficientAction,
    /// Force `b_n = 0` for every `n` at or above this degree.
    pub zero_b_from: Option<usize>,
}

pub type SchurMap = BTreeMap<Partition, BigInt>;

/// `a_n`, `b_n` in the Schur basis for `n = 1..=max_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictionReport {
    pub max_degree: usize,
    /// `a[n - 1]` is the Schur expansion of `a_n`.
    pub a: Vec<SchurMap>,
    pub b: Vec<SchurMap>,
}

/// The degree-`n` coefficients of `weyl_factor · f`, read at one exponent.
fn extract(f: &SymFunc, n: usize, at: (i32, i32)) -> SymFunc {
    let w: Scalar = weyl_factor();
    f.degree_slice(n).map_coeffs(|c| Scalar::constant(RatLaurent::coeff_of_product(&w, c, at.0, at.1)))
}

fn integral_schur(f: &SymFunc, n: usize) -> Result<SchurMap, ConjectureError> {
    f.schur_coeffs(n)
        .into_iter()
        .map(|(lam, c)| {
            if !c.is_constant() {
                return Err(ConjectureError::NonScalar { degree: n, partition: lam });
            }
            let v = c.constant_term();
            if !v.is_integer() {
                return Err(ConjectureError::NonIntegral { degree: n, partition: lam, value: v.to_string() });
            }
            Ok((lam, v.to_integer()))
        })
        .collect()
}

fn from_schur(map: &SchurMap, max_degree: usize) -> SymFunc {
    SymFunc::from_terms(
        Basis::Schur,
        max_degree,
        map.iter().map(|(lam, c)| (lam.clone(), Scalar::constant(BigRational::from_integer(c.clone())))),
    )
}

/// `a_n · ad + b_n` as a symmetric function with Laurent coefficients.
fn generator_term(a: &SymFunc, b: &SymFunc) -> SymFunc {
    let ad: Scalar = adjoint_character();
    a.scale(&ad).add(b)
}

/// Runs the recursion with the standard conventions.
pub fn compute_prediction(max_degree: usize) -> Result<PredictionReport, ConjectureError> {
    compute_prediction_with(max_degree, PredictionOptions::default())
}

/// Starting from `a_1 = s_1`, `b_1 = 0`, `E = 1`: for each `i`, multiply `E` by
/// `λ(a_i·ad + b_i)` and read `a_{i+1}`, `b_{i+1}` from the degree-`(i+1)` part
/// of `weyl_factor · E` at the adjoint and trivial exponents.
pub fn compute_prediction_with(
    max_degree: usize,
    options: PredictionOptions,
) -> Result<PredictionReport, ConjectureError> {
    if max_degree == 0 {
        return Err(ConjectureError::EmptyRange);
    }
    let mut a_slices = vec![SymFunc::p(1, max_degree)];
    let mut b_slices = vec![SymFunc::zero(Basis::Power, max_degree)];
    let mut report = PredictionReport {
        max_degree,
        a: vec![integral_schur(&a_slices[0], 1)?],
        b: vec![SchurMap::new()],
    };
    let mut acc = SymFunc::one(max_degree);
    for i in 1..max_degree {
        let g = generator_term(&a_slices[i - 1], &b_slices[i - 1]);
        acc = acc.mul(&lambda_op(&g, options.action)?);
        let n = i + 1;
        let a_next = extract(&acc, n, ADJOINT_EXTRACTION);
        let mut b_next = extract(&acc, n, (0, 0));
        if options.zero_b_from.is_some_and(|d| n >= d) {
            b_next = SymFunc::zero(Basis::Power, max_degree);
        }
        report.a.push(integral_schur(&a_next, n)?);
        report.b.push(integral_schur(&b_next, n)?);
        a_slices.push(a_next);
        b_slices.push(b_next);
    }
    Ok(report)
}

impl PredictionReport {
    /// `a_n` as a symmetric function (Schur basis).
    pub fn a_n(&self, n: usize) -> SymFunc {
        from_schur(&self.a[n - 1], self.max_degree)
    }

    pub fn b_n(&self, n: usize) -> SymFunc {
        from_schur(&self.b[n - 1], self.max_degree)
    }

    /// Schur terms of `a_n` with negative coefficients, in partition order.
    pub fn negativity(&self, n: usize) -> Vec<(Partition, BigInt)> {
        self.a[n - 1].iter().filter(|(_, c)| c.is_negative()).map(|(p, c)| (p.clone(), c.clone())).collect()
    }

    /// Truncation to a smaller degree bound.
    pub fn truncate(&self, max_degree: usize) -> PredictionReport {
        let m = max_degree.min(self.max_degree);
        PredictionReport { max_degree: m, a: self.a[..m].to_vec(), b: self.b[..m].to_vec() }
    }

    pub fn to_json(&self) -> Value {
        fn side(v: &[SchurMap]) -> Value {
            Value::Array(v.iter().enumerate().map(|(i, m)| json!([i + 1, schur_map_json(m)])).collect())
        }
        json!({
            "max_degree": self.max_degree,
            "a": side(&self.a),
            "b": side(&self.b),
            "tool_version": TOOL_VERSION,
        })
    }

    /// Parses a cache written by [`PredictionReport::to_json`], rejecting
    /// caches from other tool versions.
    pub fn from_json(text: &str) -> Result<PredictionReport, ConjectureError> {
        let bad = |m: &str| ConjectureError::Cache(m.to_string());
        let v: Value = serde_json::from_str(text).map_err(|e| ConjectureError::Cache(e.to_string()))?;
        let found = v["tool_version"].as_str().ok_or_else(|| bad("missing tool_version"))?;
        if found != TOOL_VERSION {
            return Err(ConjectureError::StaleCache { found: found.to_string(), expected: TOOL_VERSION.to_string() });
        }
        let max_degree = v["max_degree"].as_u64().ok_or_else(|| bad("missing max_degree"))? as usize;
        let side = |key: &str| -> Result<Vec<SchurMap>, ConjectureError> {
            let arr = v[key].as_array().ok_or_else(|| bad("missing coefficient list"))?;
            if arr.len() != max_degree {
                return Err(bad("degree list does not match max_degree"));
            }
            arr.iter()
                .enumerate()
                .map(|(i, entry)| {
                    if entry[0].as_u64() != Some(i as u64 + 1) {
                        return Err(bad("degrees out of order"));
                    }
                    parse_schur_map(&entry[1], i + 1).ok_or_else(|| bad("malformed Schur map"))
                })
                .collect()
        };
        Ok(PredictionReport { max_degree, a: side("a")?, b: side("b")? })
    }
}

/// `[[partition, integer], ...]` in partition order.
pub fn schur_map_json(m: &SchurMap) -> Value {
    Value::Array(m.iter().map(|(p, c)| json!([p, bigint_to_json(c)])).collect())
}

fn parse_schur_map(v: &Value, degree: usize) -> Option<SchurMap> {
    let mut out = SchurMap::new();
    for entry in v.as_array()? {
        let lam: Partition = serde_json::from_value(entry.get(0)?.clone()).ok()?;
        let c = bigint_from_json(entry.get(1)?)?;
        if lam.weight() != degree || c.is_zero() || out.insert(lam, c).is_some() {
            return None;
        }
    }
    Some(out)
}

/// Outcome of [`verify_defining_equations`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefiningCheck {
    pub max_degree: usize,
    pub passed: bool,
    pub first_failure: Option<usize>,
}

/// Recomputes `λ(Σ_n a_n·ad + b_n)` and checks its trivial part is `1` and
/// its adjoint part is `-s_1`, with nothing else through `max_degree`.
pub fn verify_defining_equations(report: &PredictionReport, max_degree: usize) -> Result<DefiningCheck, ConjectureError> {
    let n_max = max_degree.min(report.max_degree);
    let mut g = SymFunc::zero(Basis::Power, n_max);
    for n in 1..=n_max {
        g = g.add(&generator_term(&report.a_n(n).truncate(n_max), &report.b_n(n).truncate(n_max)));
    }
    let lam = lambda_op(&g, CoefficientAction::PowerSubstitution)?;
    let one = SymFunc::one(n_max);
    let minus_s1 = SymFunc::p(1, n_max).neg();
    let mut first_failure = None;
    for n in 0..=n_max {
        let trivial = extract(&lam, n, (0, 0));
        let adjoint = extract(&lam, n, ADJOINT_EXTRACTION);
        let want_trivial = if n == 0 { one.clone() } else { SymFunc::zero(Basis::Power, n_max) };
        let want_adjoint = if n == 1 { minus_s1.clone() } else { SymFunc::zero(Basis::Power, n_max) };
        if !trivial.sub(&want_trivial).is_zero() || !adjoint.sub(&want_adjoint).is_zero() {
            first_failure = Some(n);
            break;
        }
    }
    Ok(DefiningCheck { max_degree: n_max, passed: first_failure.is_none(), first_failure })
}

/// A published Schur expansion of one `a_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub degree: usize,
    pub terms: SchurMap,
}

const LOW_DEGREE: [&[(&str, i64)]; 6] = [
    &[("1", 1)],
    &[("1^2", 1), ("2", 1)],
    &[("1^3", 2), ("2,1", 2), ("3", 1)],
    &[("1^4", 3), ("2,1^2", 5), ("2^2", 2), ("3,1", 3), ("4", 1)],
    &[("1^5", 4), ("2,1^3", 10), ("2^2,1", 7), ("3,1^2", 9), ("3,2", 5), ("4,1", 4), ("5", 1)],
    &[
        ("1^6", 6),
        ("2,1^4", 16),
        ("2^2,1^2", 18),
        ("2^3", 8),
        ("3,1^3", 20),
        ("3,2,1", 20),
        ("3^2", 5),
        ("4,1^2", 14),
        ("4,2", 9),
        ("5,1", 5),
        ("6", 1),
    ],
];

const DEGREE_TEN: &[(&str, i64)] = &[
    ("1^10", 12),
    ("2,1^8", 16),
    ("2^2,1^6", -12),
    ("2^3,1^4", -32),
    ("2^4,1^2", -27),
    ("2^5", -11),
    ("3,1^7", -2),
    ("3,2,1^5", -56),
    ("3,2^2,1^3", -41),
    ("3,2^3,1", 16),
    ("3^2,1^4", -16),
    ("3^2,2,1^2", 69),
    ("3^2,2^2", 67),
    ("3^3,1", 68),
    ("4,1^6", 26),
    ("4,2,1^4", 95),
    ("4,2^2,1^2", 226),
    ("4,2^3", 145),
    ("4,3,1^3", 251),
    ("4,3,2,1", 412),
    ("4,3^2", 124),
    ("4^2,1^2", 217),
    ("4^2,2", 179),
    ("5,1^5", 109),
    ("5,2,1^3", 356),
    ("5,2^2,1", 415),
    ("5,3,1^2", 472),
    ("5,3,2", 361),
    ("5,4,1", 268),
    ("5^2", 42),
    ("6,1^4", 151),
    ("6,2,1^2", 365),
    ("6,2^2", 218),
    ("6,3,1", 307),
    ("6,4", 90),
    ("7,1^3", 110),
    ("7,2,1", 172),
    ("7,3", 75),
    ("8,1^2", 44),
    ("8,2", 35),
    ("9,1", 9),
    ("10", 1),
];

/// The partitions of 10 with negative coefficient in the degree-10 table.
pub const DEGREE_TEN_NEGATIVE: [(&str, i64); 8] = [
    ("2^2,1^6", -12),
    ("2^3,1^4", -32),
    ("2^4,1^2", -27),
    ("2^5", -11),
    ("3,1^7", -2),
    ("3,2,1^5", -56),
    ("3,2^2,1^3", -41),
    ("3^2,1^4", -16),
];

fn parse_terms(terms: &[(&str, i64)]) -> SchurMap {
    terms.iter().map(|(p, c)| (p.parse().expect("fixture partition"), BigInt::from(*c))).collect()
}

/// All embedded fixtures: `alt-1` .. `alt-6` and `schur-10`.
pub fn fixtures() -> Vec<Fixture> {
    let mut out: Vec<Fixture> = LOW_DEGREE
        .iter()
        .enumerate()
        .map(|(i, t)| Fixture { name: format!("alt-{}", i + 1), degree: i + 1, terms: parse_terms(t) })
        .collect();
    out.push(Fixture { name: "schur-10".into(), degree: 10, terms: parse_terms(DEGREE_TEN) });
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermMismatch {
    pub partition: String,
    pub expected: String,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FixtureStatus {
    Match,
    Mismatch { terms: Vec<TermMismatch> },
    /// The report does not reach the fixture's degree.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureResult {
    pub name: String,
    pub degree: usize,
    #[serde(flatten)]
    pub status: FixtureStatus,
}

/// Exact comparison of every fixture the report reaches.
pub fn compare_fixtures(report: &PredictionReport) -> Vec<FixtureResult> {
    compare_against(report, &fixtures())
}

pub fn compare_against(report: &PredictionReport, fixtures: &[Fixture]) -> Vec<FixtureResult> {
    fixtures
        .iter()
        .map(|f| {
            let status = if f.degree > report.max_degree {
                FixtureStatus::Skipped
            } else {
                let got = &report.a[f.degree - 1];
                let mut keys: Vec<&Partition> = f.terms.keys().chain(got.keys()).collect();
                keys.sort();
                keys.dedup();
                let show = |m: &SchurMap, k: &Partition| m.get(k).map_or("0".to_string(), |c| c.to_string());
                let terms: Vec<TermMismatch> = keys
                    .into_iter()
                    .filter(|k| f.terms.get(*k) != got.get(*k))
                    .map(|k| TermMismatch { partition: k.to_string(), expected: show(&f.terms, k), found: show(got, k) })
                    .collect();
                if terms.is_empty() {
                    FixtureStatus::Match
                } else {
                    FixtureStatus::Mismatch { terms }
                }
            };
            FixtureResult { name: f.name.clone(), degree: f.degree, status }
        })
        .collect()
}

/// Where a cached prediction came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheOutcome {
    Hit,
    /// No usable cache (absent, stale, malformed or too shallow); recomputed and written.
    Recomputed,
}

/// Reads the prediction from `path` when it is current and deep enough,
/// otherwise recomputes and writes it back.
pub fn load_or_compute(
    path: &Path,
    max_degree: usize,
    force: bool,
) -> Result<(PredictionReport, CacheOutcome), ConjectureError> {
    if !force {
        if let Ok(text) = std::fs::read_to_string(path) {
            if let Ok(report) = PredictionReport::from_json(&text) {
                if report.max_degree >= max_degree {
                    return Ok((report.truncate(max_degree), CacheOutcome::Hit));
                }
            }
        }
    }
    let report = compute_prediction(max_degree)?;
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, serde_json::to_string(&report.to_json()).expect("json") + "\n")?;
    Ok((report, CacheOutcome::Recomputed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dims::solve_dims;

    fn map(terms: &[(&str, i64)]) -> SchurMap {
        parse_terms(terms)
    }

    #[test]
    fn first_degrees() {
        let r = compute_prediction(3).unwrap();
        assert_eq!(r.a[0], map(&[("1", 1)]));
        assert!(r.b[0].is_empty());
        assert_eq!(r.a[1], map(&[("2", 1), ("1^2", 1)]));
        assert_eq!(r.a[2], map(&[("3", 1), ("2,1", 2), ("1^3", 2)]));
    }

    #[test]
    fn low_degree_fixtures_and_equations() {
        let r = compute_prediction(6).unwrap();
        let diff = compare_fixtures(&r);
        for d in &diff[..6] {
            assert_eq!(d.status, FixtureStatus::Match, "{}", d.name);
        }
        assert_eq!(diff[6].status, FixtureStatus::Skipped);
        for n in 1..=6 {
            assert!(r.negativity(n).is_empty());
        }
        assert!(verify_defining_equations(&r, 6).unwrap().passed);
    }

    #[test]
    fn b2_is_exterior_square() {
        let r = compute_prediction(2).unwrap();
        assert_eq!(r.b[1], map(&[("1^2", 1)]));
        for p in 1..=4usize {
            assert_eq!(r.b_n(2).specialize_dims(2, p).unwrap(), BigInt::from(p * (p - 1) / 2));
        }
    }

    #[test]
    fn specializations_match_solver() {
        let r = compute_prediction(6).unwrap();
        for p in 1..=4u32 {
            let dims = solve_dims(p, 6).unwrap();
            for n in 1..=6 {
                assert_eq!(r.a_n(n).specialize_dims(n, p as usize).unwrap(), BigInt::from(dims[n - 1]), "n={n} p={p}");
            }
        }
        assert_eq!(r.a_n(6).specialize_dims(6, 3).unwrap(), BigInt::from(804));
        assert_eq!(r.a_n(3).specialize_dims(3, 1).unwrap(), BigInt::from(1));
    }

    #[test]
    fn zeroing_b_breaks_the_equations() {
        let opts = PredictionOptions { zero_b_from: Some(2), ..Default::default() };
        let r = compute_prediction_with(5, opts).unwrap();
        let check = verify_defining_equations(&r, 5).unwrap();
        assert!(!check.passed);
        assert_eq!(check.first_failure, Some(2));
    }

    #[test]
    fn fixed_coefficient_action_breaks_the_recursion() {
        let opts = PredictionOptions { action: CoefficientAction::Fixed, ..Default::default() };
        match compute_prediction_with(5, opts) {
            Err(ConjectureError::NonIntegral { .. } | ConjectureError::NonScalar { .. }) => {}
            Ok(r) => {
                assert!(!verify_defining_equations(&r, 5).unwrap().passed);
                let diff = compare_fixtures(&r);
                assert!(diff[..5].iter().any(|d| d.status != FixtureStatus::Match));
            }
            Err(e) => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn cache_round_trip_and_version_check() {
        let r = compute_prediction(4).unwrap();
        let text = r.to_json().to_string();
        assert_eq!(PredictionReport::from_json(&text).unwrap(), r);
        let stale = text.replace(TOOL_VERSION, "0.0.0-old");
        assert!(matches!(PredictionReport::from_json(&stale), Err(ConjectureError::StaleCache { .. })));
        assert!(PredictionReport::from_json("{}").is_err());
    }

    #[test]
    fn tampered_fixture_is_reported() {
        let r = compute_prediction(3).unwrap();
        let mut fx = fixtures();
        fx[2].terms.insert("2,1".parse().unwrap(), BigInt::from(3));
        let diff = compare_against(&r, &fx);
        match &diff[2].status {
            FixtureStatus::Mismatch { terms } => {
                assert_eq!(terms, &[TermMismatch { partition: "2,1".into(), expected: "3".into(), found: "2".into() }]);
            }
            other => panic!("expected mismatch, got {other:?}"),
        }
    }

    #[test]
    fn fixture_tables_are_complete() {
        let fx = fixtures();
        for f in &fx {
            assert!(f.terms.keys().all(|p| p.weight() == f.degree));
        }
        assert_eq!(fx[6].terms.len(), Partition::all(10).len());
        let neg: Vec<(Partition, BigInt)> =
            fx[6].terms.iter().filter(|(_, c)| c.is_negative()).map(|(p, c)| (p.clone(), c.clone())).collect();
        let listed: Vec<(Partition, BigInt)> = DEGREE_TEN_NEGATIVE
            .iter()
            .map(|(p, c)| (p.parse().unwrap(), BigInt::from(*c)))
            .collect();
        assert_eq!(neg, listed);
    }
}
