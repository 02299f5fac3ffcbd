//! Symmetric functions of bounded degree with Laurent-polynomial coefficients.
//!
//! Elements are stored in one of three bases (power sums `p`, elementary `e`,
//! Schur `s`). Multiplication and plethysm are done in the power-sum basis,
//! where `p_λ p_μ = p_{λ∪μ}` and `p_k[p_λ] = p_{kλ}`. The `q1`, `q2` in the
//! coefficients are treated as degree-one characters: `p_k` raises them to the
//! `k`-th power.

mod partition;
mod tableaux;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::laurent::RatLaurent;

pub use partition::Partition;
pub use tableaux::{character_table, kostka, schur_dimension, z_mu, CharacterTable};

/// Coefficient ring of [`SymFunc`].
pub type Scalar = RatLaurent;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymFuncError {
    #[error("coefficient of s[{0}] depends on q1, q2")]
    NonScalar(Partition),
    #[error("coefficient of s[{0}] is not an integer")]
    NonIntegral(Partition),
    #[error("argument has a nonzero degree-0 term")]
    HasConstantTerm,
    #[error("content {content:?} does not sum to {degree}")]
    ContentMismatch { degree: usize, content: Vec<usize> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    Power,
    Elementary,
    Schur,
}

impl Basis {
    fn symbol(self) -> &'static str {
        match self {
            Basis::Power => "p",
            Basis::Elementary => "e",
            Basis::Schur => "s",
        }
    }
}

/// How `p_k` acts on the Laurent coefficients during plethysm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CoefficientAction {
    /// `q1^i q2^j ↦ q1^(ki) q2^(kj)`.
    #[default]
    PowerSubstitution,
    /// Coefficients are left alone (treats `q1`, `q2` as constants).
    Fixed,
}

/// `Σ c_λ b_λ` over partitions of weight `<= max_degree` in basis `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymFunc {
    basis: Basis,
    max_degree: usize,
    terms: BTreeMap<Partition, Scalar>,
}

type RationalSym = BTreeMap<Partition, BigRational>;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl SymFunc {
    pub fn zero(basis: Basis, max_degree: usize) -> Self {
        SymFunc { basis, max_degree, terms: BTreeMap::new() }
    }

    pub fn one(max_degree: usize) -> Self {
        Self::term(Basis::Power, Partition::empty(), Scalar::one(), max_degree)
    }

    /// A single term; dropped when its weight exceeds `max_degree`.
    pub fn term(basis: Basis, partition: Partition, coeff: Scalar, max_degree: usize) -> Self {
        let mut f = Self::zero(basis, max_degree);
        f.add_term(partition, &coeff);
        f
    }

    pub fn from_terms(basis: Basis, max_degree: usize, terms: impl IntoIterator<Item = (Partition, Scalar)>) -> Self {
        let mut f = Self::zero(basis, max_degree);
        for (p, c) in terms {
            f.add_term(p, &c);
        }
        f
    }

    pub fn p(k: usize, max_degree: usize) -> Self {
        Self::term(Basis::Power, Partition::new(vec![k]), Scalar::one(), max_degree)
    }

    pub fn e(k: usize, max_degree: usize) -> Self {
        Self::term(Basis::Elementary, Partition::new(vec![k]), Scalar::one(), max_degree)
    }

    pub fn s(lambda: impl Into<Partition>, max_degree: usize) -> Self {
        Self::term(Basis::Schur, lambda.into(), Scalar::one(), max_degree)
    }

    fn add_term(&mut self, partition: Partition, coeff: &Scalar) {
        if coeff.is_zero() || partition.weight() > self.max_degree {
            return;
        }
        let entry = self.terms.entry(partition.clone()).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&partition);
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, lambda: &Partition) -> Scalar {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest weight with a nonzero term.
    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(Partition::weight).min()
    }

    pub fn degree_slice(&self, n: usize) -> SymFunc {
        SymFunc {
            basis: self.basis,
            max_degree: self.max_degree,
            terms: self.terms.iter().filter(|(p, _)| p.weight() == n).map(|(p, c)| (p.clone(), c.clone())).collect(),
        }
    }

    pub fn truncate(&self, max_degree: usize) -> SymFunc {
        SymFunc {
            basis: self.basis,
            max_degree,
            terms: self.terms.iter().filter(|(p, _)| p.weight() <= max_degree).map(|(p, c)| (p.clone(), c.clone())).collect(),
        }
    }

    /// Same element, different declared bound (terms above the bound are dropped).
    pub fn with_max_degree(&self, max_degree: usize) -> SymFunc {
        self.truncate(max_degree)
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> SymFunc {
        let mut out = Self::zero(self.basis, self.max_degree);
        for (p, c) in &self.terms {
            out.add_term(p.clone(), &f(c));
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> SymFunc {
        self.map_coeffs(|c| c * s)
    }

    pub fn add(&self, other: &SymFunc) -> SymFunc {
        let other = other.to_basis(self.basis);
        let mut out = self.truncate(self.max_degree.min(other.max_degree));
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &SymFunc) -> SymFunc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SymFunc {
        self.map_coeffs(|c| -c)
    }

    /// Product, truncated at the smaller of the two degree bounds; the result
    /// is in the basis of `self`.
    pub fn mul(&self, other: &SymFunc) -> SymFunc {
        let max_degree = self.max_degree.min(other.max_degree);
        let out_basis = self.basis;
        let (a, b) = match (self.basis, other.basis) {
            (Basis::Elementary, Basis::Elementary) => (self.clone(), other.clone()),
            _ => (self.to_basis(Basis::Power), other.to_basis(Basis::Power)),
        };
        let mut groups: HashMap<Partition, Vec<(&Scalar, &Scalar)>> = HashMap::new();
        for (pa, ca) in &a.terms {
            for (pb, cb) in &b.terms {
                if pa.weight() + pb.weight() <= max_degree {
                    groups.entry(pa.union(pb)).or_default().push((ca, cb));
                }
            }
        }
        let terms: BTreeMap<Partition, Scalar> = groups
            .into_par_iter()
            .map(|(p, pairs)| (p, <num_rational::BigRational as crate::laurent::Coeff>::sum_of_products(&pairs)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        SymFunc { basis: a.basis, max_degree, terms }.to_basis(out_basis)
    }

    pub fn to_basis(&self, target: Basis) -> SymFunc {
        if self.basis == target {
            return self.clone();
        }
        match (self.basis, target) {
            (Basis::Power, Basis::Schur) => self.power_to_schur(),
            (Basis::Schur, Basis::Power) => self.schur_to_power(),
            (Basis::Elementary, Basis::Power) => self.expand_multiplicative(Basis::Power, &elementary_in_power),
            (Basis::Power, Basis::Elementary) => self.expand_multiplicative(Basis::Elementary, &power_in_elementary),
            (_, _) => self.to_basis(Basis::Power).to_basis(target),
        }
    }

    /// Rewrites a multiplicative basis `b_λ = Π b_{λ_i}` given each `b_k`.
    fn expand_multiplicative(&self, target: Basis, single: &dyn Fn(usize) -> RationalSym) -> SymFunc {
        let mut cache: HashMap<Partition, RationalSym> = HashMap::new();
        let mut out = Self::zero(target, self.max_degree);
        for (lam, c) in &self.terms {
            let expansion = cache
                .entry(lam.clone())
                .or_insert_with(|| {
                    lam.parts().iter().fold(RationalSym::from([(Partition::empty(), rat(1))]), |acc, &k| {
                        rational_union_product(&acc, &single(k))
                    })
                })
                .clone();
            for (mu, r) in expansion {
                out.add_term(mu, &c.map_coeffs(|x| x * &r));
            }
        }
        out
    }

    fn power_to_schur(&self) -> SymFunc {
        let mut out = Self::zero(Basis::Schur, self.max_degree);
        for (mu, c) in &self.terms {
            let table = character_table(mu.weight());
            for lam in table.partitions() {
                let chi = table.value(lam, mu);
                if chi != 0 {
                    out.add_term(lam.clone(), &c.map_coeffs(|x| x * rat(chi)));
                }
            }
        }
        out
    }

    fn schur_to_power(&self) -> SymFunc {
        let mut out = Self::zero(Basis::Power, self.max_degree);
        for (lam, c) in &self.terms {
            let table = character_table(lam.weight());
            for mu in table.partitions() {
                let chi = table.value(lam, mu);
                if chi != 0 {
                    let r = BigRational::new(BigInt::from(chi), z_mu(mu));
                    out.add_term(mu.clone(), &c.map_coeffs(|x| x * &r));
                }
            }
        }
        out
    }

    /// `p_k[self]`: `p_λ ↦ p_{kλ}` and the coefficient action on `q1`, `q2`.
    pub fn plethysm_pk(&self, k: usize, action: CoefficientAction) -> SymFunc {
        assert!(k >= 1, "p_0 is not a plethystic power sum");
        let p = self.to_basis(Basis::Power);
        let mut out = Self::zero(Basis::Power, self.max_degree);
        for (lam, c) in &p.terms {
            let coeff = match action {
                CoefficientAction::PowerSubstitution => c.substitute_powers(k as u32),
                CoefficientAction::Fixed => c.clone(),
            };
            out.add_term(lam.scale(k), &coeff);
        }
        out
    }

    /// Degree-`n` Schur coefficients.
    pub fn schur_coeffs(&self, n: usize) -> BTreeMap<Partition, Scalar> {
        self.degree_slice(n).to_basis(Basis::Schur).terms
    }

    /// Degree-`n` Schur coefficients as integers; fails on any `q`-dependence
    /// or denominator.
    pub fn integral_schur_coeffs(&self, n: usize) -> Result<BTreeMap<Partition, BigInt>, SymFuncError> {
        self.schur_coeffs(n)
            .into_iter()
            .map(|(lam, c)| {
                if !c.is_constant() {
                    return Err(SymFuncError::NonScalar(lam));
                }
                let v = c.constant_term();
                if !v.is_integer() {
                    return Err(SymFuncError::NonIntegral(lam));
                }
                Ok((lam, v.to_integer()))
            })
            .collect()
    }

    /// Dimension of the degree-`n` part specialized to `p` variables:
    /// `Σ c_λ s_λ(1^p)`.
    pub fn specialize_dims(&self, n: usize, p: usize) -> Result<BigInt, SymFuncError> {
        let mut acc = BigRational::zero();
        for (lam, c) in self.schur_coeffs(n) {
            if !c.is_constant() {
                return Err(SymFuncError::NonScalar(lam));
            }
            acc += c.constant_term() * BigRational::from_integer(schur_dimension(&lam, p));
        }
        if !acc.is_integer() {
            return Err(SymFuncError::NonIntegral(Partition::empty()));
        }
        Ok(acc.to_integer())
    }

    /// Dimension of the multihomogeneous component with the given content:
    /// `Σ c_λ K_{λ,content}`.
    pub fn multidegree_coeff(&self, n: usize, content: &[usize]) -> Result<BigInt, SymFuncError> {
        if content.iter().sum::<usize>() != n {
            return Err(SymFuncError::ContentMismatch { degree: n, content: content.to_vec() });
        }
        let coeffs = self.integral_schur_coeffs(n)?;
        Ok(coeffs.iter().map(|(lam, c)| c * BigInt::from(kostka(lam, content))).sum())
    }
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let sym = self.basis.symbol();
        for (i, (lam, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{sym}[{lam}]")?;
            } else {
                write!(f, "({c})*{sym}[{lam}]")?;
            }
        }
        Ok(())
    }
}

fn rational_union_product(a: &RationalSym, b: &RationalSym) -> RationalSym {
    let mut out = RationalSym::new();
    for (pa, ca) in a {
        for (pb, cb) in b {
            let e = out.entry(pa.union(pb)).or_insert_with(BigRational::zero);
            *e += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Newton's identity `k e_k = Σ_{i=1..k} (-1)^(i-1) p_i e_{k-i}`, in the `p` basis.
fn elementary_in_power(k: usize) -> RationalSym {
    let mut es: Vec<RationalSym> = vec![RationalSym::from([(Partition::empty(), rat(1))])];
    for m in 1..=k {
        let mut acc = RationalSym::new();
        for i in 1..=m {
            let sign = if i % 2 == 1 { rat(1) } else { rat(-1) };
            let pi = RationalSym::from([(Partition::new(vec![i]), sign)]);
            for (p, c) in rational_union_product(&pi, &es[m - i]) {
                *acc.entry(p).or_insert_with(BigRational::zero) += c;
            }
        }
        let inv = BigRational::new(BigInt::one(), BigInt::from(m));
        acc.values_mut().for_each(|c| *c *= &inv);
        acc.retain(|_, c| !c.is_zero());
        es.push(acc);
    }
    es.pop().expect("non-empty")
}

/// `p_k = Σ_{i=1..k-1} (-1)^(i-1) e_i p_{k-i} + (-1)^(k-1) k e_k`, in the `e` basis.
fn power_in_elementary(k: usize) -> RationalSym {
    let mut ps: Vec<RationalSym> = vec![RationalSym::new()];
    for m in 1..=k {
        let mut acc = RationalSym::new();
        for i in 1..m {
            let sign = if i % 2 == 1 { rat(1) } else { rat(-1) };
            let ei = RationalSym::from([(Partition::new(vec![i]), sign)]);
            for (p, c) in rational_union_product(&ei, &ps[m - i]) {
                *acc.entry(p).or_insert_with(BigRational::zero) += c;
            }
        }
        let top = if m % 2 == 1 { rat(m as i64) } else { rat(-(m as i64)) };
        *acc.entry(Partition::new(vec![m])).or_insert_with(BigRational::zero) += top;
        acc.retain(|_, c| !c.is_zero());
        ps.push(acc);
    }
    ps.pop().expect("non-empty")
}

/// `[e_0[g], e_1[g], ..., e_K[g]]` up to the degree bound of `g`, by
/// `k e_k[g] = Σ_{i=1..k} (-1)^(i-1) p_i[g] e_{k-i}[g]`.
pub fn e_plethysm_all(g: &SymFunc, action: CoefficientAction) -> Result<Vec<SymFunc>, SymFuncError> {
    let g = g.to_basis(Basis::Power);
    let n = g.max_degree;
    if !g.coeff(&Partition::empty()).is_zero() {
        return Err(SymFuncError::HasConstantTerm);
    }
    let mut out = vec![SymFunc::one(n)];
    let Some(d) = g.min_degree() else { return Ok(out) };
    let top = n / d;
    let powers: Vec<SymFunc> = (1..=top).map(|i| g.plethysm_pk(i, action)).collect();
    for k in 1..=top {
        let mut acc = SymFunc::zero(Basis::Power, n);
        for i in 1..=k {
            let term = powers[i - 1].mul(&out[k - i]);
            acc = if i % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        }
        let inv = Scalar::constant(BigRational::new(BigInt::one(), BigInt::from(k)));
        out.push(acc.scale(&inv));
    }
    Ok(out)
}

/// `e_k[g]`, truncated at the degree bound of `g`.
pub fn e_plethysm(k: usize, g: &SymFunc, action: CoefficientAction) -> Result<SymFunc, SymFuncError> {
    let all = e_plethysm_all(g, action)?;
    Ok(all.get(k).cloned().unwrap_or_else(|| SymFunc::zero(Basis::Power, g.max_degree)))
}

/// `λ(g) = Σ_k (-1)^k e_k[g]`.
pub fn lambda_op(g: &SymFunc, action: CoefficientAction) -> Result<SymFunc, SymFuncError> {
    let all = e_plethysm_all(g, action)?;
    let mut acc = SymFunc::zero(Basis::Power, g.max_degree);
    for (k, ek) in all.iter().enumerate() {
        acc = if k % 2 == 0 { acc.add(ek) } else { acc.sub(ek) };
    }
    Ok(acc)
}
