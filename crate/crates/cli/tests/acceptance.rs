//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use serde_json::Value;

use altchar_core::conjecture::{compute_prediction, verify_defining_equations};
use altchar_core::dims::{self, DimSequence};
use altchar_core::sl3char;
use altchar_core::symfunc::{lambda_op, Basis, CoefficientAction, Partition, Scalar, SymFunc};
use altchar_core::{IntLaurent, TruncatedSeries};

const PROPERTY_CASES: u32 = 1000;

/// The low-degree decompositions as printed, `V_λ^m` summands.
const LOW_DEGREE_DISPLAY: [&str; 6] = [
    r"V_1",
    r"V_{1^2}\oplus V_2",
    r"V_{1^3}^2\oplus V_{2,1}^2\oplus V_3",
    r"V_{1^4}^3\oplus V_{2,1^2}^5\oplus V_{2^2}^2\oplus V_{3,1}^3\oplus V_4",
    r"V_{1^5}^4\oplus V_{2,1^3}^{10}\oplus V_{2^2,1}^7\oplus V_{3,1^2}^9\oplus V_{3,2}^5\oplus V_{4,1}^4\oplus V_5",
    r"V_{1^6}^6\oplus V_{2,1^4}^{16}\oplus V_{2^2,1^2}^{18}\oplus V_{2^3}^8\oplus V_{3,1^3}^{20}\oplus V_{3,2,1}^{20}\oplus V_{3^2}^5\oplus V_{4,1^2}^{14}\oplus V_{4,2}^9\oplus V_{5,1}^5\oplus V_6",
];

/// The degree-10 Schur expansion as printed.
const DEGREE_TEN_DISPLAY: &str = r"12s_{1^{10}} + 16s_{2,1^8} + (-12)s_{2^2,1^6} + (-32)s_{2^3,1^4}+ (-27)s_{2^4,1^2} + (-11)s_{2^5}  + (-2)s_{3,1^7}
 + (-56)s_{3,2,1^5} + (-41)s_{3,2^2,1^3} + 16s_{3,2^3,1} + (-16)s_{3^2,1^4}+ 69s_{3^2,2,1^2} + 67s_{3^2,2^2}
  + 68s_{3^3,1} + 26s_{4,1^6} + 95s_{4,2,1^4} + 226s_{4,2^2,1^2} + 145s_{4,2^3} + 251s_{4,3,1^3} + 412s_{4,3,2,1}
+ 124s_{4,3^2} + 217s_{4^2,1^2}+ 179s_{4^2,2} + 109s_{5,1^5}+ 356s_{5,2,1^3} + 415s_{5,2^2,1}+ 472s_{5,3,1^2}
  + 361s_{5,3,2} + 268s_{5,4,1} + 42s_{5^2}  + 151s_{6,1^4} + 365s_{6,2,1^2} + 218s_{6,2^2}+ 307s_{6,3,1}
 + 90s_{6,4} + 110s_{7,1^3} + 172s_{7,2,1} + 75s_{7,3} + 44s_{8,1^2} + 35s_{8,2} + 9s_{9,1} + s_{10}";

const NEGATIVE_DISPLAY: &str = r"s_{2^2,1^6}, s_{2^3,1^4}, s_{2^4,1^2}, s_{2^5}, s_{3,1^7}, s_{3,2,1^5}, s_{3,2^2,1^3}, s_{3^2,1^4}";
const NEGATIVE_COEFFS: [i64; 8] = [-12, -32, -27, -11, -2, -56, -41, -16];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn partition_from_tex(s: &str) -> Partition {
    let plain: String = s.chars().filter(|c| !matches!(c, '{' | '}')).collect();
    plain.parse().unwrap_or_else(|e| panic!("bad partition {s:?}: {e}"))
}

/// `V_{λ}^{m}` summands joined by `\oplus`.
fn parse_modules(display: &str) -> BTreeMap<Partition, BigInt> {
    display
        .split(r"\oplus")
        .map(|t| {
            let body = t.trim().strip_prefix("V_").expect("V_ summand");
            let (lam, mult) = if let Some(rest) = body.strip_prefix('{') {
                let close = rest.find('}').expect("closing brace");
                (&rest[..close], rest[close + 1..].trim_start_matches('^'))
            } else {
                let end = body.find('^').unwrap_or(body.len());
                (&body[..end], body[end..].trim_start_matches('^'))
            };
            let mult: String = mult.chars().filter(|c| c.is_ascii_digit()).collect();
            let mult = if mult.is_empty() { 1 } else { mult.parse().unwrap() };
            (partition_from_tex(lam), BigInt::from(mult))
        })
        .collect()
}

/// `c s_{λ}` terms joined by `+`, with negative coefficients in parentheses.
fn parse_schur_display(display: &str) -> BTreeMap<Partition, BigInt> {
    let mut out = BTreeMap::new();
    let mut rest = display;
    while let Some(pos) = rest.find("s_{") {
        let head = &rest[..pos];
        let coeff: String = head.rsplit('+').next().unwrap().chars().filter(|c| c.is_ascii_digit() || *c == '-').collect();
        let coeff: i64 = if coeff.is_empty() { 1 } else { coeff.parse().unwrap() };
        let body = &rest[pos + 3..];
        // the partition ends at the brace matching "s_{"
        let mut depth = 1;
        let mut end = 0;
        for (i, ch) in body.char_indices() {
            match ch {
                '{' => depth += 1,
                '}' => {
                    depth -= 1;
                    if depth == 0 {
                        end = i;
                        break;
                    }
                }
                _ => {}
            }
        }
        out.insert(partition_from_tex(&body[..end]), BigInt::from(coeff));
        rest = &body[end + 1..];
    }
    out
}

fn parse_json_schur(v: &Value) -> BTreeMap<Partition, BigInt> {
    v.as_array()
        .expect("schur map")
        .iter()
        .map(|e| {
            let lam: Partition = serde_json::from_value(e[0].clone()).unwrap();
            let c = match &e[1] {
                Value::Number(n) => BigInt::from(n.as_i64().unwrap()),
                Value::String(s) => s.parse().unwrap(),
                other => panic!("bad coefficient {other}"),
            };
            (lam, c)
        })
        .collect()
}

fn run_cli(args: &[&str], cache_dir: &Path) -> Result<(Value, Duration), String> {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_altchar"))
        .args(args)
        .arg("--format")
        .arg("json")
        .env("ALTCHAR_CACHE_DIR", cache_dir)
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if !out.status.success() {
        return Err(format!("{args:?} exited with {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    let v = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    Ok((v, elapsed))
}

fn residue_criterion(family: &str, order: usize, expected: i64, budget: Duration, cache: &Path) -> Outcome {
    let (v, elapsed) = run_cli(&["check", family, "--order", &order.to_string()], cache)?;
    let residues = v["residues"].as_array().ok_or("no residues")?;
    ensure(residues.len() == order + 1, || format!("{} residues", residues.len()))?;
    for (k, r) in residues.iter().enumerate() {
        let want = if k == order { expected } else { 0 };
        ensure(r[0].as_u64() == Some(k as u64) && r[1].as_i64() == Some(want), || {
            format!("residue at k={k} is {}, expected {want}", r[1])
        })?;
    }
    ensure(elapsed < budget, || format!("took {elapsed:?}, budget {budget:?}"))?;
    Ok(format!("zero for k < {order}, {expected} at k = {order} ({:.2}s)", elapsed.as_secs_f64()))
}

fn iltyakov_criterion() -> Outcome {
    let asm = dims::iltyakov_assembly().map_err(|e| e.to_string())?;
    ensure(asm.identities.len() == 5, || format!("{} identities", asm.identities.len()))?;
    for id in &asm.identities {
        ensure(id.holds, || format!("identity {} fails", id.name))?;
    }
    let coeffs = dims::gf_expand(&asm.generating_function(), 7).map_err(|e| e.to_string())?;
    let expected: Vec<BigInt> = [1, 3, 9, 28, 87, 267, 804, 2388].into_iter().map(BigInt::from).collect();
    ensure(coeffs == expected, || format!("expansion {coeffs:?}"))?;
    let names: Vec<&str> = asm.identities.iter().map(|i| i.name).collect();
    Ok(format!("identities {names:?} hold; 1,3,9,28,87,267,804,2388"))
}

fn low_degree_criterion(cache: &Path) -> Outcome {
    let (v, _) = run_cli(&["predict", "--order", "6"], cache)?;
    for (i, display) in LOW_DEGREE_DISPLAY.iter().enumerate() {
        let n = i + 1;
        let entry = &v["a"][i];
        ensure(entry[0].as_u64() == Some(n as u64), || format!("degree index {}", entry[0]))?;
        let got = parse_json_schur(&entry[1]);
        let want = parse_modules(display);
        ensure(got == want, || format!("degree {n}: got {got:?}, want {want:?}"))?;
    }
    let v321 = parse_json_schur(&v["a"][5][1])[&Partition::from([3, 2, 1])].clone();
    ensure(v321 == BigInt::from(20), || format!("V_(3,2,1) multiplicity {v321}"))?;
    Ok("degrees 1..6 match the printed decompositions".into())
}

fn degree_ten_criterion(cache: &Path) -> Outcome {
    let (v, _) = run_cli(&["predict", "--order", "10"], cache)?;
    let got = parse_json_schur(&v["a"][9][1]);
    let want = parse_schur_display(DEGREE_TEN_DISPLAY);
    ensure(want.len() == 42, || format!("display parsed to {} terms", want.len()))?;
    ensure(got == want, || {
        let diff: Vec<String> = want
            .iter()
            .filter(|(p, c)| got.get(*p) != Some(*c))
            .map(|(p, c)| format!("{p}: want {c}, got {:?}", got.get(p)))
            .collect();
        format!("mismatches {diff:?}")
    })?;
    let negative = v["negative"].as_array().ok_or("no negativity list")?;
    let ten = negative.iter().find(|e| e[0].as_u64() == Some(10)).ok_or("no degree-10 negativity")?;
    let got_neg: Vec<(Partition, BigInt)> = parse_json_schur(&ten[1]).into_iter().collect();
    let want_neg: Vec<(Partition, BigInt)> = NEGATIVE_DISPLAY
        .split(", ")
        .map(|s| partition_from_tex(s.trim().strip_prefix("s_").unwrap()))
        .zip(NEGATIVE_COEFFS.iter().map(|&c| BigInt::from(c)))
        .collect();
    ensure(got_neg == want_neg, || format!("negativity {got_neg:?}"))?;
    ensure(negative.iter().all(|e| e[0].as_u64() == Some(10) || e[0].as_u64().unwrap() > 6), || {
        "negative terms below degree 7".into()
    })?;
    let fewest_rows = got_neg.iter().min_by_key(|(p, _)| p.len()).unwrap();
    ensure(fewest_rows.0 == Partition::from([2, 2, 2, 2, 2]), || format!("fewest rows {}", fewest_rows.0))?;
    Ok("42 coefficients and the eight negative terms match".into())
}

fn multidegree_criterion() -> Outcome {
    let report = compute_prediction(7).map_err(|e| e.to_string())?;
    let a7 = report.a_n(7);
    let m331 = a7.multidegree_coeff(7, &[3, 3, 1]).map_err(|e| e.to_string())?;
    let m322 = a7.multidegree_coeff(7, &[3, 2, 2]).map_err(|e| e.to_string())?;
    ensure(m331 == BigInt::from(152), || format!("(3,3,1) -> {m331}"))?;
    ensure(m322 == BigInt::from(233), || format!("(3,2,2) -> {m322}"))?;
    let weighted = (BigInt::from(154) - &m331) * 3 + (BigInt::from(236) - &m322) * 3;
    let p3 = sl3char::residue_check(&DimSequence::iltyakov3(7).map_err(|e| e.to_string())?, 3, 7, false)
        .map_err(|e| e.to_string())?;
    let residue = p3.residues[7].clone();
    ensure(weighted == residue.abs() && weighted == BigInt::from(15), || {
        format!("weighted mismatch {weighted}, residue {residue}")
    })?;
    Ok(format!("152, 233; 2*3 + 3*3 = {weighted} = |{residue}|"))
}

fn defining_criterion() -> Outcome {
    let report = compute_prediction(10).map_err(|e| e.to_string())?;
    for n in 1..=10 {
        let check = verify_defining_equations(&report.truncate(n), n).map_err(|e| e.to_string())?;
        ensure(check.passed, || format!("N={n}: first failure at degree {:?}", check.first_failure))?;
    }
    Ok("trivial part 1 and adjoint part -s1 exactly, for every N <= 10".into())
}

fn cross_oracle_criterion() -> Outcome {
    let report = compute_prediction(8).map_err(|e| e.to_string())?;
    for p in 1..=4u32 {
        let solved = dims::solve_dims(p, 8).map_err(|e| e.to_string())?;
        for n in 1..=8 {
            let specialized = report.a_n(n).specialize_dims(n, p as usize).map_err(|e| e.to_string())?;
            ensure(specialized == BigInt::from(solved[n - 1]), || format!("n={n} p={p}: {specialized} vs {}", solved[n - 1]))?;
        }
    }
    Ok("32 (n, p) pairs agree".into())
}

fn small_int_laurent() -> impl Strategy<Value = IntLaurent> {
    prop::collection::vec((-2i32..=2, -2i32..=2, -4i64..=4), 0..=4).prop_map(|t| IntLaurent::from_int_terms(&t))
}

fn small_scalar() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-1i32..=1, -1i32..=1, -2i64..=2), 0..=2).prop_map(|t| Scalar::from_int_terms(&t))
}

fn unit_series(order: usize) -> impl Strategy<Value = TruncatedSeries<BigInt>> {
    prop::collection::vec(small_int_laurent(), order).prop_map(move |rest| {
        TruncatedSeries::from_coeffs(order, std::iter::once(IntLaurent::one()).chain(rest))
    })
}

fn symfunc(basis: Basis, max_degree: usize, min_degree: usize) -> impl Strategy<Value = SymFunc> {
    let shapes: Vec<Partition> = (min_degree..=max_degree).flat_map(Partition::all).collect();
    let n = shapes.len();
    prop::collection::vec((0..n, small_scalar()), 0..=3).prop_map(move |terms| {
        SymFunc::from_terms(basis, max_degree, terms.into_iter().map(|(i, c)| (shapes[i].clone(), c)))
    })
}

fn property<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Outcome {
    let mut runner = TestRunner::new(Config { cases: PROPERTY_CASES, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| e.to_string())?;
    Ok(format!("{PROPERTY_CASES} cases"))
}

fn property_suites() -> Vec<(&'static str, Outcome)> {
    let act = CoefficientAction::PowerSubstitution;
    vec![
        (
            "ring axioms (Laurent)",
            property((small_int_laurent(), small_int_laurent(), small_int_laurent()), |(a, b, c)| {
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&a + &(-&a), IntLaurent::zero());
                prop_assert_eq!(&a * &IntLaurent::one(), a.clone());
                Ok(())
            }),
        ),
        (
            "series pow additivity",
            property((unit_series(4), -3i64..=3, -3i64..=3), |(s, a, b)| {
                let lhs = s.pow(a).unwrap().mul(&s.pow(b).unwrap()).unwrap();
                prop_assert_eq!(lhs, s.pow(a + b).unwrap());
                Ok(())
            }),
        ),
        (
            "series inverse laws",
            property((unit_series(4), 1i64..=3), |(s, k)| {
                let inv = s.inverse().unwrap();
                prop_assert!(s.mul(&inv).unwrap().is_one());
                prop_assert_eq!(s.pow(-k).unwrap(), inv.pow(k).unwrap());
                Ok(())
            }),
        ),
        (
            "p -> s -> p round trip",
            property(symfunc(Basis::Power, 6, 0), |f| {
                prop_assert_eq!(f.to_basis(Basis::Schur).to_basis(Basis::Power), f);
                Ok(())
            }),
        ),
        (
            "e -> p -> e round trip",
            property(symfunc(Basis::Elementary, 6, 0), |f| {
                prop_assert_eq!(f.to_basis(Basis::Power).to_basis(Basis::Elementary), f);
                Ok(())
            }),
        ),
        (
            "lambda multiplicativity",
            property((symfunc(Basis::Power, 4, 1), symfunc(Basis::Schur, 4, 1)), move |(g, h)| {
                let lhs = lambda_op(&g.add(&h), act).unwrap();
                let rhs = lambda_op(&g, act).unwrap().mul(&lambda_op(&h, act).unwrap());
                prop_assert!(lhs.sub(&rhs).to_basis(Basis::Power).is_zero());
                Ok(())
            }),
        ),
        (
            "plethysm endomorphism",
            property((symfunc(Basis::Power, 5, 0), symfunc(Basis::Power, 5, 0), 1usize..=3), move |(f, g, k)| {
                let lhs = f.mul(&g).plethysm_pk(k, act);
                let rhs = f.plethysm_pk(k, act).mul(&g.plethysm_pk(k, act));
                prop_assert_eq!(lhs, rhs);
                Ok(())
            }),
        ),
    ]
}

fn guarded(f: impl FnOnce() -> Outcome) -> Outcome {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(r) => r,
        Err(p) => Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panicked".into())),
    }
}

fn main() {
    let cache = tempfile::tempdir().expect("temp dir");
    let dir = cache.path();
    let mut results: Vec<(String, Outcome)> = vec![
        ("1 two-generator check".into(), guarded(|| residue_criterion("p2", 17, 2, Duration::from_secs(120), dir))),
        ("2 super check".into(), guarded(|| residue_criterion("super", 10, -2, Duration::from_secs(30), dir))),
        ("3 three-generator check".into(), guarded(|| residue_criterion("p3", 7, -15, Duration::from_secs(30), dir))),
        ("4 three-generator expansion".into(), guarded(iltyakov_criterion)),
        ("5 low-degree prediction table".into(), guarded(|| low_degree_criterion(dir))),
        ("6 degree-10 Schur table".into(), guarded(|| degree_ten_criterion(dir))),
        ("7 multidegree remark".into(), guarded(multidegree_criterion)),
        ("8 defining equations".into(), guarded(defining_criterion)),
        ("9 specialization vs solver".into(), guarded(cross_oracle_criterion)),
    ];
    for (name, outcome) in guarded_suites() {
        results.push((format!("10 property: {name}"), outcome));
    }
    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!("{} criteria, {failed} failed", results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn guarded_suites() -> Vec<(&'static str, Outcome)> {
    match catch_unwind(property_suites) {
        Ok(v) => v,
        Err(_) => vec![("suite setup", Err("panicked".into()))],
    }
}
