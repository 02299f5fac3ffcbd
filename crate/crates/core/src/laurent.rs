//! Sparse bivariate Laurent polynomials in `q1`, `q2` with exact coefficients.
//!
//! Every character computation in this crate lives in `K[q1^±1, q2^±1]`. The
//! coefficient ring is abstracted by [`Coeff`] so that the hot truncated-series
//! paths can run over [`BigInt`] while the symmetric-function layer (which
//! divides by integers) runs over [`BigRational`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exponent pair `(i, j)` of the monomial `q1^i q2^j`.
pub type Exponent = (i32, i32);

/// Dense accumulation is used when the result bounding box is at most this
/// many times larger than the number of term pairs.
const DENSE_FILL_RATIO: usize = 16;
const DENSE_MIN_BOX: usize = 1 << 12;

/// Exact coefficient ring for [`LaurentPoly`].
pub trait Coeff:
    Clone + Zero + One + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn from_i64(v: i64) -> Self;
    fn from_bigint(v: BigInt) -> Self;
    fn add_to(&mut self, other: &Self);
    fn sub_from(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn to_ratio(&self) -> BigRational;

    fn add_product(&mut self, a: &Self, b: &Self) {
        self.add_to(&a.mul_ref(b));
    }

    /// `Σ a·b` over the given pairs. Implementors may override this with a
    /// cheaper strategy; the result must be identical.
    fn sum_of_products(pairs: &[(&LaurentPoly<Self>, &LaurentPoly<Self>)]) -> LaurentPoly<Self> {
        accumulate_products(pairs)
    }
}

impl Coeff for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn from_bigint(v: BigInt) -> Self {
        v
    }
    fn add_to(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_from(&mut self, other: &Self) {
        *self -= other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn to_ratio(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }
}

impl Coeff for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(v: BigInt) -> Self {
        BigRational::from_integer(v)
    }
    fn add_to(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_from(&mut self, other: &Self) {
        *self -= other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn to_ratio(&self) -> BigRational {
        self.clone()
    }

    // Clearing denominators first avoids a gcd normalization per term pair.
    fn sum_of_products(pairs: &[(&LaurentPoly<Self>, &LaurentPoly<Self>)]) -> LaurentPoly<Self> {
        let mut total = LaurentPoly::zero();
        for (a, b) in pairs {
            let (na, da) = a.clear_denominators();
            let (nb, db) = b.clear_denominators();
            let prod = accumulate_products(&[(&na, &nb)]);
            let den = da * db;
            let prod = prod.map_coeffs(|c| BigRational::new(c.clone(), den.clone()));
            total += &prod;
        }
        total
    }
}

/// A sparse Laurent polynomial `Σ c_(i,j) q1^i q2^j` with no stored zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly<C: Coeff = BigRational> {
    terms: BTreeMap<Exponent, C>,
}

/// Laurent polynomials over the integers.
pub type IntLaurent = LaurentPoly<BigInt>;
/// Laurent polynomials over the rationals.
pub type RatLaurent = LaurentPoly<BigRational>;

impl<C: Coeff> Default for LaurentPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(i: i32, j: i32, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        LaurentPoly { terms }
    }

    /// Builds a polynomial from possibly repeated terms, merging like terms.
    pub fn from_terms<I: IntoIterator<Item = (Exponent, C)>>(iter: I) -> Self {
        let mut terms: BTreeMap<Exponent, C> = BTreeMap::new();
        for (e, c) in iter {
            add_term(&mut terms, e, &c);
        }
        LaurentPoly { terms }
    }

    /// Convenience constructor from small integer coefficients.
    pub fn from_int_terms(terms: &[(i32, i32, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(i, j, c)| ((i, j), C::from_i64(c))))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| *c == C::one())
    }

    /// True when the support is contained in `{(0, 0)}`.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == (0, 0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (lexicographic in `(i, j)`) order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &C)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff_at(&self, i: i32, j: i32) -> C {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff_at(0, 0)
    }

    /// Coefficient of `q1^-1 q2^-1`.
    pub fn residue(&self) -> C {
        self.coeff_at(-1, -1)
    }

    /// `residue(a·b)` without forming the product.
    pub fn residue_of_product(a: &Self, b: &Self) -> C {
        let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        let mut acc = C::zero();
        for (&(i, j), c) in &small.terms {
            if let Some(d) = large.terms.get(&(-1 - i, -1 - j)) {
                acc.add_product(c, d);
            }
        }
        acc
    }

    /// Coefficient of `q1^i q2^j` in `a·b` without forming the product.
    pub fn coeff_of_product(a: &Self, b: &Self, i: i32, j: i32) -> C {
        let mut acc = C::zero();
        for (&(ai, aj), c) in &a.terms {
            if let Some(d) = b.terms.get(&(i - ai, j - aj)) {
                acc.add_product(c, d);
            }
        }
        acc
    }

    /// Replaces every monomial `q1^i q2^j` by `q1^(k·i) q2^(k·j)`.
    ///
    /// Panics if `k == 0`.
    pub fn substitute_powers(&self, k: u32) -> Self {
        assert!(k >= 1, "substitute_powers requires k >= 1");
        let k = k as i32;
        LaurentPoly {
            terms: self.terms.iter().map(|(&(i, j), c)| ((k * i, k * j), c.clone())).collect(),
        }
    }

    /// Multiplies by the monomial `q1^di q2^dj`.
    pub fn shift(&self, di: i32, dj: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&(i, j), c)| ((i + di, j + dj), c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, c.mul_ref(s))).collect() }
    }

    /// Applies `f` to each coefficient, dropping results that vanish.
    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter_map(|(e, c)| {
                    let d = f(c);
                    (!d.is_zero()).then_some((*e, d))
                })
                .collect(),
        }
    }

    /// Value at `q1 = q2 = 1`.
    pub fn eval_at_one(&self) -> C {
        let mut acc = C::zero();
        for c in self.terms.values() {
            acc.add_to(c);
        }
        acc
    }

    /// Inclusive bounding box `(i_min, i_max, j_min, j_max)` of the support.
    pub fn bounds(&self) -> Option<(i32, i32, i32, i32)> {
        let mut it = self.terms.keys();
        let &(i0, j0) = it.next()?;
        let mut b = (i0, i0, j0, j0);
        for &(i, j) in it {
            b.0 = b.0.min(i);
            b.1 = b.1.max(i);
            b.2 = b.2.min(j);
            b.3 = b.3.max(j);
        }
        Some(b)
    }

    pub fn to_rational(&self) -> RatLaurent {
        self.map_coeffs(|c| c.to_ratio())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }
}

impl RatLaurent {
    /// Returns `(N, d)` with integer `N` and positive `d` such that `self = N / d`.
    pub fn clear_denominators(&self) -> (IntLaurent, BigInt) {
        let den = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = self.map_coeffs(|c| (c.numer() * (&den / c.denom())).clone());
        (num, den)
    }

    /// The integer polynomial equal to `self`, if every coefficient is integral.
    pub fn to_integer(&self) -> Option<IntLaurent> {
        self.terms
            .values()
            .all(|c| c.is_integer())
            .then(|| self.map_coeffs(|c| c.to_integer()))
    }
}

fn add_term<C: Coeff>(terms: &mut BTreeMap<Exponent, C>, e: Exponent, c: &C) {
    if c.is_zero() {
        return;
    }
    match terms.entry(e) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c.clone());
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            o.get_mut().add_to(c);
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn accumulate_products<C: Coeff>(pairs: &[(&LaurentPoly<C>, &LaurentPoly<C>)]) -> LaurentPoly<C> {
    let mut bbox: Option<(i32, i32, i32, i32)> = None;
    let mut work = 0usize;
    for (a, b) in pairs {
        let (Some(ba), Some(bb)) = (a.bounds(), b.bounds()) else { continue };
        let r = (ba.0 + bb.0, ba.1 + bb.1, ba.2 + bb.2, ba.3 + bb.3);
        bbox = Some(match bbox {
            None => r,
            Some(x) => (x.0.min(r.0), x.1.max(r.1), x.2.min(r.2), x.3.max(r.3)),
        });
        work += a.len() * b.len();
    }
    let Some((i0, i1, j0, j1)) = bbox else { return LaurentPoly::zero() };
    let width = (i1 - i0 + 1) as usize;
    let height = (j1 - j0 + 1) as usize;
    let cells = width.saturating_mul(height);

    if cells <= DENSE_MIN_BOX.max(work.saturating_mul(DENSE_FILL_RATIO)) {
        let mut buf: Vec<C> = vec![C::zero(); cells];
        for (a, b) in pairs {
            for (&(ai, aj), ca) in &a.terms {
                for (&(bi, bj), cb) in &b.terms {
                    let idx = (ai + bi - i0) as usize * height + (aj + bj - j0) as usize;
                    buf[idx].add_product(ca, cb);
                }
            }
        }
        let terms = buf
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(idx, c)| (((idx / height) as i32 + i0, (idx % height) as i32 + j0), c))
            .collect();
        LaurentPoly { terms }
    } else {
        let mut terms = BTreeMap::new();
        for (a, b) in pairs {
            for (&(ai, aj), ca) in &a.terms {
                for (&(bi, bj), cb) in &b.terms {
                    add_term(&mut terms, (ai + bi, aj + bj), &ca.mul_ref(cb));
                }
            }
        }
        LaurentPoly { terms }
    }
}

impl<C: Coeff> AddAssign<&LaurentPoly<C>> for LaurentPoly<C> {
    fn add_assign(&mut self, rhs: &LaurentPoly<C>) {
        for (e, c) in &rhs.terms {
            add_term(&mut self.terms, *e, c);
        }
    }
}

impl<C: Coeff> SubAssign<&LaurentPoly<C>> for LaurentPoly<C> {
    fn sub_assign(&mut self, rhs: &LaurentPoly<C>) {
        for (e, c) in &rhs.terms {
            add_term(&mut self.terms, *e, &c.neg_ref());
        }
    }
}

impl<C: Coeff> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<C: Coeff> Add for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(mut self, rhs: LaurentPoly<C>) -> LaurentPoly<C> {
        self += &rhs;
        self
    }
}

impl<C: Coeff> Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<C: Coeff> Sub for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(mut self, rhs: LaurentPoly<C>) -> LaurentPoly<C> {
        self -= &rhs;
        self
    }
}

impl<C: Coeff> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, c.neg_ref())).collect() }
    }
}

impl<C: Coeff> Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        -&self
    }
}

impl<C: Coeff> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        C::sum_of_products(&[(self, rhs)])
    }
}

impl<C: Coeff> Mul for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: LaurentPoly<C>) -> LaurentPoly<C> {
        &self * &rhs
    }
}

impl<C: Coeff> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            let s = c.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if body != "1" || (i, j) == (0, 0) {
                factors.push(if body.contains('/') { format!("({body})") } else { body });
            }
            for (name, exp) in [("q1", i), ("q2", j)] {
                match exp {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{exp}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Writes an integer as a JSON number when it fits in `i64`, else as a string.
pub(crate) fn bigint_to_json(v: &BigInt) -> serde_json::Value {
    match v.to_i64() {
        Some(x) => serde_json::Value::from(x),
        None => serde_json::Value::String(v.to_string()),
    }
}

pub(crate) fn bigint_from_json(v: &serde_json::Value) -> Option<BigInt> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

/// JSON form: array of `[i, j, numerator, denominator]` in canonical order.
impl<C: Coeff> Serialize for LaurentPoly<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let quads: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(&(i, j), c)| {
                let r = c.to_ratio();
                serde_json::json!([i, j, bigint_to_json(r.numer()), bigint_to_json(r.denom())])
            })
            .collect();
        quads.serialize(serializer)
    }
}

impl<'de, C: Coeff> Deserialize<'de> for LaurentPoly<C>
where
    C: FromRatio,
{
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let quads: Vec<(i32, i32, serde_json::Value, serde_json::Value)> =
            Vec::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(quads.len());
        for (i, j, n, d) in quads {
            let n = bigint_from_json(&n).ok_or_else(|| D::Error::custom("bad numerator"))?;
            let d = bigint_from_json(&d).ok_or_else(|| D::Error::custom("bad denominator"))?;
            if d.is_zero() || d.is_negative() {
                return Err(D::Error::custom("denominator must be positive"));
            }
            let c = C::from_ratio(BigRational::new(n, d))
                .ok_or_else(|| D::Error::custom("coefficient not representable"))?;
            terms.push(((i, j), c));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

/// Conversion back from an exact rational, used by deserialization.
pub trait FromRatio: Sized {
    fn from_ratio(r: BigRational) -> Option<Self>;
}

impl FromRatio for BigInt {
    fn from_ratio(r: BigRational) -> Option<Self> {
        r.is_integer().then(|| r.to_integer())
    }
}

impl FromRatio for BigRational {
    fn from_ratio(r: BigRational) -> Option<Self> {
        Some(r)
    }
}
