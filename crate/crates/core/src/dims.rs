//! Dimension sequences fed into `Φ`: closed forms, the three-generator
//! generating function, and the degree-by-degree residue solver.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::sl3char::{factor_block, residue_at, weighted_prefactor, CheckError};
use crate::zseries::TruncatedSeries;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DimsError {
    #[error("denominator constant term must be ±1")]
    NonUnitDenominator,
    #[error("generating-function identity failed: {0}")]
    IdentityFailed(String),
    #[error("value at degree {degree} does not fit in 64 bits")]
    Overflow { degree: usize },
    #[error("degree {degree}: residue does not depend on the unknown dimension")]
    ZeroLinearCoefficient { degree: usize },
    #[error("degree {degree}: defect {defect} is not divisible by linear coefficient {linear}")]
    NonIntegral { degree: usize, defect: BigInt, linear: BigInt },
    #[error("malformed dimension list: {0}")]
    Malformed(String),
    #[error(transparent)]
    Check(#[from] CheckError),
}

/// Which dimension sequence a [`DimSequence`] holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// Free (alternative = associative) algebra on two generators: `2^n`.
    Assoc2,
    /// Free alternative superalgebra on one odd generator.
    SuperOdd1,
    /// Free alternative algebra on three generators.
    Iltyakov3,
    /// Output of [`solve_dims`] for `p` generators.
    Solved(u32),
    /// User-supplied values.
    External,
}

/// Per-degree dimensions `d_1, d_2, ...` (degree 0 is never stored).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimSequence {
    family: Family,
    values: Vec<i64>,
}

impl DimSequence {
    pub fn assoc2(order: usize) -> Self {
        DimSequence { family: Family::Assoc2, values: (1..=order).map(assoc2).collect() }
    }

    pub fn super_odd(order: usize) -> Self {
        DimSequence { family: Family::SuperOdd1, values: (1..=order).map(super_odd).collect() }
    }

    pub fn iltyakov3(order: usize) -> Result<Self, DimsError> {
        let gf = iltyakov_assembly()?.generating_function();
        let coeffs = gf_expand(&gf, order)?;
        let values = coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, c)| c.to_i64().ok_or(DimsError::Overflow { degree: n }))
            .collect::<Result<_, _>>()?;
        Ok(DimSequence { family: Family::Iltyakov3, values })
    }

    pub fn solved(p: u32, order: usize) -> Result<Self, DimsError> {
        Ok(DimSequence { family: Family::Solved(p), values: solve_dims(p, order)? })
    }

    pub fn external(values: Vec<i64>) -> Self {
        DimSequence { family: Family::External, values }
    }

    /// Parses a JSON array of integers (degree 1 first).
    pub fn from_json(text: &str) -> Result<Self, DimsError> {
        let values: Vec<i64> = serde_json::from_str(text).map_err(|e| DimsError::Malformed(e.to_string()))?;
        Ok(Self::external(values))
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// Dimension in degree `n >= 1`, if known.
    pub fn get(&self, n: usize) -> Option<i64> {
        n.checked_sub(1).and_then(|i| self.values.get(i)).copied()
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn label(&self) -> String {
        match self.family {
            Family::Assoc2 => "p2".into(),
            Family::SuperOdd1 => "super".into(),
            Family::Iltyakov3 => "p3".into(),
            Family::Solved(p) => format!("solved:{p}"),
            Family::External => "external".into(),
        }
    }

    /// Prefactor constant `c` in `q1 + c z q1^-1 q2^-1`: the (super)dimension
    /// of the generating space.
    pub fn default_prefactor(&self) -> i64 {
        match self.family {
            Family::Assoc2 => 2,
            Family::SuperOdd1 => -1,
            Family::Iltyakov3 => 3,
            Family::Solved(p) => p as i64,
            Family::External => self.values.first().copied().unwrap_or(0),
        }
    }

    /// Whether `Φ` takes the exponents `(-1)^n d_n`.
    pub fn default_signed(&self) -> bool {
        self.family == Family::SuperOdd1
    }
}

/// `2^n`.
pub fn assoc2(n: usize) -> i64 {
    1i64 << n
}

/// `1, 1, 2`, then `2(n-3) + (1 + (-1)^(n(n+1)/2)) / 2`.
pub fn super_odd(n: usize) -> i64 {
    match n {
        0 => 0,
        1 | 2 => 1,
        3 => 2,
        _ => {
            let n = n as i64;
            let parity_bonus = if (n * (n + 1) / 2) % 2 == 0 { 1 } else { 0 };
            2 * (n - 3) + parity_bonus
        }
    }
}

/// Dense univariate integer polynomial in `t`, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly(Vec<BigInt>);

impl UniPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = UniPoly(coeffs);
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64s(&[1])
    }

    /// `c · t^k`.
    pub fn term(c: i64, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = BigInt::from(c);
        Self::new(v)
    }

    /// `1 - c t^k`.
    pub fn one_minus(c: i64, k: usize) -> Self {
        &Self::one() - &Self::term(c, k)
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.0.get(k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl std::ops::Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.0.len().max(rhs.0.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl std::ops::Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.0.len().max(rhs.0.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl std::ops::Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::default();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

/// A rational generating function `numerator / denominator` in `t`.
#[derive(Clone, Debug)]
pub struct RationalGF {
    pub numerator: UniPoly,
    pub denominator: UniPoly,
}

impl RationalGF {
    pub fn new(numerator: UniPoly, denominator: UniPoly) -> Result<Self, DimsError> {
        if !denominator.coeff(0).abs().is_one() {
            return Err(DimsError::NonUnitDenominator);
        }
        Ok(RationalGF { numerator, denominator })
    }

    pub fn add(&self, other: &Self) -> Self {
        RationalGF {
            numerator: &(&self.numerator * &other.denominator) + &(&other.numerator * &self.denominator),
            denominator: &self.denominator * &other.denominator,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalGF {
            numerator: &self.numerator * &other.numerator,
            denominator: &self.denominator * &other.denominator,
        }
    }

    /// Equality as rational functions (cross-multiplication).
    pub fn same_function(&self, other: &Self) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }
}

/// Taylor coefficients `0..=order` of `gf`.
pub fn gf_expand(gf: &RationalGF, order: usize) -> Result<Vec<BigInt>, DimsError> {
    let d0 = gf.denominator.coeff(0);
    if !d0.abs().is_one() {
        return Err(DimsError::NonUnitDenominator);
    }
    let mut out: Vec<BigInt> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = gf.numerator.coeff(k);
        for i in 1..=k {
            acc -= gf.denominator.coeff(i) * &out[k - i];
        }
        out.push(acc * &d0);
    }
    Ok(out)
}

/// One intermediate identity of the three-generator assembly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub holds: bool,
}

/// The pieces of the generating function for `Alt(x1, x2, x3)` and the
/// identities connecting them.
#[derive(Clone, Debug)]
pub struct IltyakovAssembly {
    pub w0: RationalGF,
    pub w1: RationalGF,
    pub w2: RationalGF,
    pub w_prime: RationalGF,
    pub b: RationalGF,
    pub total: RationalGF,
    pub identities: Vec<IdentityCheck>,
}

impl IltyakovAssembly {
    pub fn generating_function(&self) -> RationalGF {
        self.total.clone()
    }
}

/// `1/(1-3t) + t^3/((1-t)^6 (1-t^2)^3 (1-t^3))`, written directly.
pub fn iltyakov_closed_form() -> RationalGF {
    let ass = RationalGF { numerator: UniPoly::one(), denominator: UniPoly::one_minus(3, 1) };
    let den = &(&UniPoly::one_minus(1, 1).pow(6) * &UniPoly::one_minus(1, 2).pow(3)) * &UniPoly::one_minus(1, 3);
    ass.add(&RationalGF { numerator: UniPoly::term(1, 3), denominator: den })
}

/// Builds the generating function from the basis pieces `W0, W1, W2, W'`
/// and the free right action, checking every intermediate simplification.
pub fn iltyakov_assembly() -> Result<IltyakovAssembly, DimsError> {
    let base = &UniPoly::one_minus(1, 2).pow(6) * &UniPoly::one_minus(1, 3);
    let over_base = |c: i64, k: usize| RationalGF { numerator: UniPoly::term(c, k), denominator: base.clone() };
    let w0 = over_base(1, 3);
    let w1 = over_base(3, 4);
    let w2 = over_base(3, 5);
    let w_prime = over_base(1, 6);
    let sum = w0.add(&w1).add(&w2).add(&w_prime);

    let cubic = UniPoly::from_i64s(&[1, 3, 3, 1]);
    let t3 = UniPoly::term(1, 3);
    let expanded = RationalGF { numerator: &t3 * &cubic, denominator: base.clone() };
    let factored = RationalGF { numerator: &t3 * &UniPoly::from_i64s(&[1, 1]).pow(3), denominator: base.clone() };
    let cancelled = RationalGF {
        numerator: t3.clone(),
        denominator: &(&UniPoly::one_minus(1, 1).pow(3) * &UniPoly::one_minus(1, 2).pow(3)) * &UniPoly::one_minus(1, 3),
    };
    let free_action = RationalGF { numerator: UniPoly::one(), denominator: UniPoly::one_minus(1, 1).pow(3) };
    let b = sum.mul(&free_action);
    let b_stated = RationalGF {
        numerator: t3,
        denominator: &(&UniPoly::one_minus(1, 1).pow(6) * &UniPoly::one_minus(1, 2).pow(3)) * &UniPoly::one_minus(1, 3),
    };
    let ass = RationalGF { numerator: UniPoly::one(), denominator: UniPoly::one_minus(3, 1) };
    let total = ass.add(&b);

    let identities = vec![
        IdentityCheck { name: "W0+W1+W2+W' = t^3(1+3t+3t^2+t^3)/((1-t^2)^6(1-t^3))", holds: sum.same_function(&expanded) },
        IdentityCheck { name: "t^3(1+3t+3t^2+t^3) = t^3(1+t)^3", holds: expanded.same_function(&factored) },
        IdentityCheck {
            name: "t^3(1+t)^3/((1-t^2)^6(1-t^3)) = t^3/((1-t)^3(1-t^2)^3(1-t^3))",
            holds: factored.same_function(&cancelled),
        },
        IdentityCheck { name: "B = t^3/((1-t)^6(1-t^2)^3(1-t^3))", holds: b.same_function(&b_stated) },
        IdentityCheck {
            name: "1/(1-3t) + B = 1/(1-3t) + t^3/((1-t)^6(1-t^2)^3(1-t^3))",
            holds: total.same_function(&iltyakov_closed_form()),
        },
    ];
    if let Some(bad) = identities.iter().find(|c| !c.holds) {
        return Err(DimsError::IdentityFailed(bad.name.to_string()));
    }
    Ok(IltyakovAssembly { w0, w1, w2, w_prime, b, total, identities })
}

/// `n`-th coefficient of the three-generator generating function.
pub fn iltyakov3(n: usize) -> Result<i64, DimsError> {
    DimSequence::iltyakov3(n)?.get(n).ok_or(DimsError::Overflow { degree: n })
}

/// The unique sequence `a_1..a_order` for which the residues of
/// `(q1 + p z q1^-1 q2^-1) · W · Φ` vanish in degrees `1..=order`.
pub fn solve_dims(p: u32, order: usize) -> Result<Vec<i64>, DimsError> {
    solve_exponents(p as i64, order)
}

/// Like [`solve_dims`] for an arbitrary prefactor constant; the results are
/// the exponents of the factor blocks, so for a superalgebra they are the
/// signed dimensions `(-1)^n d_n`.
pub fn solve_exponents(prefactor_c: i64, order: usize) -> Result<Vec<i64>, DimsError> {
    solve_with_product(prefactor_c, order).map(|(e, _)| e)
}

pub(crate) fn solve_with_product(
    prefactor_c: i64,
    order: usize,
) -> Result<(Vec<i64>, TruncatedSeries<BigInt>), DimsError> {
    let pre = weighted_prefactor(prefactor_c, order);
    let mut phi = TruncatedSeries::one(order);
    let mut out = Vec::with_capacity(order);
    for n in 1..=order {
        let block = factor_block(n, order);
        let defect = residue_at(&pre, &phi, n);
        // Only the linear term of block^a reaches z^n, so the residue is affine in a.
        let mut probe = TruncatedSeries::zero(n);
        probe.set_coeff(n, phi.product_coeff(&block, n));
        probe.set_coeff(n - 1, phi.coeff(n - 1).clone());
        let linear = residue_at(&pre.truncate(n), &probe, n) - &defect;
        if linear.is_zero() {
            return Err(DimsError::ZeroLinearCoefficient { degree: n });
        }
        let neg = -&defect;
        if !(&neg % &linear).is_zero() {
            return Err(DimsError::NonIntegral { degree: n, defect, linear });
        }
        let a = (neg / &linear).to_i64().ok_or(DimsError::Overflow { degree: n })?;
        phi = phi.mul(&block.pow(a).map_err(CheckError::from)?).map_err(CheckError::from)?;
        out.push(a);
    }
    Ok((out, phi))
}

/// The coefficient of `a_n` in the degree-`n` residue.
pub fn linear_coefficient(prefactor_c: i64, n: usize) -> BigInt {
    let pre = weighted_prefactor(prefactor_c, n);
    let block = factor_block(n, n);
    residue_at(&pre, &block, n) - residue_at(&pre, &TruncatedSeries::one(n), n)
}
