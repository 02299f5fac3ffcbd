//! The full set of published numerical checks, run in one pass.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;
use serde_json::{json, Value};

use altchar_core::conjecture::{self, FixtureStatus, PredictionReport, DEGREE_TEN_NEGATIVE};
use altchar_core::dims::{self, DimSequence};
use altchar_core::sl3char;
use altchar_core::symfunc::Partition;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatches: Option<Value>,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.to_string(), passed, detail: detail.into(), mismatches: None }
    }

    fn from_result(name: &str, r: Result<String, String>) -> Self {
        match r {
            Ok(d) => Check::new(name, true, d),
            Err(d) => Check::new(name, false, d),
        }
    }
}

/// Residues vanish below `order` and equal `expected` at `order`.
fn residue(name: &str, dims: Result<DimSequence, dims::DimsError>, order: usize, expected: i64) -> Check {
    let run = || -> Result<String, String> {
        let dims = dims.map_err(|e| e.to_string())?;
        let r = sl3char::residue_check(&dims, dims.default_prefactor(), order, dims.default_signed())
            .map_err(|e| e.to_string())?;
        let first = r.first_nonzero.clone();
        if first == Some((order, BigInt::from(expected))) {
            Ok(format!("residues vanish for k < {order}, residue {expected} at k = {order}"))
        } else {
            Err(format!("first nonzero residue {first:?}, expected ({order}, {expected})"))
        }
    };
    Check::from_result(name, run())
}

fn solve(name: &str, p: u32, expected: Vec<i64>) -> Check {
    let got = dims::solve_dims(p, expected.len());
    match got {
        Ok(v) if v == expected => Check::new(name, true, format!("{} terms match", v.len())),
        Ok(v) => Check::new(name, false, format!("got {v:?}, expected {expected:?}")),
        Err(e) => Check::new(name, false, e.to_string()),
    }
}

fn iltyakov() -> Vec<Check> {
    let expected: Vec<BigInt> = [1, 3, 9, 28, 87, 267, 804, 2388].into_iter().map(BigInt::from).collect();
    match dims::iltyakov_assembly() {
        Ok(asm) => {
            let failed: Vec<&str> = asm.identities.iter().filter(|i| !i.holds).map(|i| i.name).collect();
            let ids = Check::new(
                "iltyakov:identities",
                failed.is_empty() && asm.identities.len() == 5,
                format!("{} identities checked, failing: {failed:?}", asm.identities.len()),
            );
            let exp = match dims::gf_expand(&asm.generating_function(), 7) {
                Ok(c) if c == expected => Check::new("iltyakov:expansion", true, "1,3,9,28,87,267,804,2388"),
                Ok(c) => Check::new("iltyakov:expansion", false, format!("got {c:?}")),
                Err(e) => Check::new("iltyakov:expansion", false, e.to_string()),
            };
            vec![ids, exp]
        }
        Err(e) => vec![Check::new("iltyakov:identities", false, e.to_string())],
    }
}

fn fixtures(report: &PredictionReport) -> Vec<Check> {
    conjecture::compare_fixtures(report)
        .into_iter()
        .map(|f| {
            let name = format!("fixture:{}", f.name);
            match &f.status {
                FixtureStatus::Match => Check::new(&name, true, format!("degree {} matches", f.degree)),
                FixtureStatus::Skipped => Check::new(&name, false, format!("prediction does not reach degree {}", f.degree)),
                FixtureStatus::Mismatch { terms } => {
                    let mut c = Check::new(&name, false, format!("{} coefficients differ", terms.len()));
                    c.mismatches = Some(serde_json::to_value(terms).expect("json"));
                    c
                }
            }
        })
        .collect()
}

fn negativity(report: &PredictionReport) -> Vec<Check> {
    let expected: Vec<(Partition, BigInt)> =
        DEGREE_TEN_NEGATIVE.iter().map(|(p, c)| (p.parse().expect("partition"), BigInt::from(*c))).collect();
    let got = report.negativity(10);
    let ten = Check::new(
        "negativity:10",
        got == expected,
        got.iter().map(|(p, c)| format!("s[{p}]:{c}")).collect::<Vec<_>>().join(" "),
    );
    let low: Vec<usize> = (1..=6).filter(|&n| !report.negativity(n).is_empty()).collect();
    let low = Check::new("negativity:low-degree", low.is_empty(), format!("degrees with negative terms: {low:?}"));
    vec![ten, low]
}

fn multidegree(report: &PredictionReport) -> Check {
    let run = || -> Result<String, String> {
        let a7 = report.a_n(7);
        let m331 = a7.multidegree_coeff(7, &[3, 3, 1]).map_err(|e| e.to_string())?;
        let m322 = a7.multidegree_coeff(7, &[3, 2, 2]).map_err(|e| e.to_string())?;
        if m331 != BigInt::from(152) || m322 != BigInt::from(233) {
            return Err(format!("(3,3,1) -> {m331}, (3,2,2) -> {m322}"));
        }
        let mismatch = (BigInt::from(154) - &m331) * 3 + (BigInt::from(236) - &m322) * 3;
        let dims = DimSequence::iltyakov3(7).map_err(|e| e.to_string())?;
        let residue = sl3char::residue_check(&dims, 3, 7, false).map_err(|e| e.to_string())?.residues[7].clone();
        if mismatch != residue.abs() {
            return Err(format!("weighted mismatch {mismatch} vs residue {residue}"));
        }
        Ok(format!("(3,3,1) -> 152, (3,2,2) -> 233, mismatch {mismatch} = |{residue}|"))
    };
    Check::from_result("multidegree:7", run())
}

fn defining(report: &PredictionReport) -> Check {
    match conjecture::verify_defining_equations(report, 10) {
        Ok(c) if c.passed => Check::new("defining-equations:10", true, "trivial part 1, adjoint part -s[1]"),
        Ok(c) => Check::new("defining-equations:10", false, format!("first failure at degree {:?}", c.first_failure)),
        Err(e) => Check::new("defining-equations:10", false, e.to_string()),
    }
}

fn cross_oracle(report: &PredictionReport) -> Check {
    let run = || -> Result<String, String> {
        for p in 1..=4u32 {
            let solved = dims::solve_dims(p, 8).map_err(|e| e.to_string())?;
            for n in 1..=8 {
                let specialized = report.a_n(n).specialize_dims(n, p as usize).map_err(|e| e.to_string())?;
                if specialized != BigInt::from(solved[n - 1]) {
                    return Err(format!("n={n} p={p}: specialization {specialized}, solver {}", solved[n - 1]));
                }
            }
        }
        Ok("n <= 8, p <= 4 agree".into())
    };
    Check::from_result("cross-oracle:specialize-vs-solve", run())
}

fn exterior_square(report: &PredictionReport) -> Check {
    let run = || -> Result<String, String> {
        for p in 1..=4usize {
            let d = report.b_n(2).specialize_dims(2, p).map_err(|e| e.to_string())?;
            if d != BigInt::from(p * (p - 1) / 2) {
                return Err(format!("p={p}: dim b_2 = {d}"));
            }
        }
        Ok("dim b_2 = p(p-1)/2 for p <= 4".into())
    };
    Check::from_result("b2:exterior-square", run())
}

pub fn run_all(report: &PredictionReport) -> Vec<Check> {
    let mut out = vec![
        residue("residue:p2", Ok(DimSequence::assoc2(17)), 17, 2),
        residue("residue:super", Ok(DimSequence::super_odd(10)), 10, -2),
        residue("residue:p3", DimSequence::iltyakov3(7), 7, -15),
    ];
    out.extend(iltyakov());
    out.push(solve("solve:p1", 1, vec![1; 6]));
    out.push(solve("solve:p2", 2, (1..=16).map(|n| 1i64 << n).collect()));
    out.push(solve("solve:p3", 3, vec![3, 9, 28, 87, 267, 804]));
    out.extend(fixtures(report));
    out.extend(negativity(report));
    out.push(multidegree(report));
    out.push(defining(report));
    out.push(cross_oracle(report));
    out.push(exterior_square(report));
    out
}

pub fn summary(checks: &[Check]) -> Value {
    let failures: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    json!({
        "passed": failures.is_empty(),
        "checks": checks,
        "failures": failures,
    })
}
