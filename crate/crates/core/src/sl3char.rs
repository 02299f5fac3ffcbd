//! sl3 character machinery: the adjoint character, the Weyl factor, the
//! per-degree exterior-algebra factor blocks, the product `Φ` over a dimension
//! sequence, and trivial/adjoint multiplicity extraction.
//!
//! Weights are written multiplicatively as monomials `q1^i q2^j`. The positive
//! roots are `q1 q2^-1`, `q1 q2^2` and `q1^2 q2`; multiplying a character by
//! the Weyl factor `Π (1 - root)` leaves the multiplicity of the trivial module
//! at `q1^0 q2^0` and that of the adjoint module at `q1^-2 q2^-1`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::dims::DimSequence;
use crate::laurent::{bigint_to_json, Coeff, Exponent, IntLaurent, LaurentPoly};
use crate::zseries::{SeriesError, TruncatedSeries};

/// The positive roots; the adjoint weights are these and their inverses.
pub const POSITIVE_ROOTS: [Exponent; 3] = [(1, -1), (1, 2), (2, 1)];

/// Monomial at which the adjoint multiplicity is read off after multiplication
/// by the Weyl factor.
pub const ADJOINT_EXTRACTION: Exponent = (-2, -1);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error("dimension sequence has no value for degree {degree}")]
    MissingDegree { degree: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// `q1^2 q2 + q1 q2^-1 + q1^-1 q2 + q1 q2^2 + q1^-2 q2^-1 + q1^-1 q2^-2 + 2`.
pub fn adjoint_character<C: Coeff>() -> LaurentPoly<C> {
    let mut terms: Vec<(Exponent, C)> = POSITIVE_ROOTS
        .iter()
        .flat_map(|&(i, j)| [((i, j), C::one()), ((-i, -j), C::one())])
        .collect();
    terms.push(((0, 0), C::from_i64(2)));
    LaurentPoly::from_terms(terms)
}

/// `(1 - q1 q2^-1)(1 - q1 q2^2)(1 - q1^2 q2)`, expanded.
pub fn weyl_factor<C: Coeff>() -> LaurentPoly<C> {
    POSITIVE_ROOTS.iter().fold(LaurentPoly::one(), |acc, &(i, j)| {
        let f = LaurentPoly::one() - LaurentPoly::monomial(i, j, C::one());
        &acc * &f
    })
}

/// `Π_roots (1 - z^n (m + m^-1) + z^(2n))` modulo `z^(order+1)`: the
/// character of the exterior algebra on the six root spaces placed in degree `n`.
pub fn factor_block(n: usize, order: usize) -> TruncatedSeries<BigInt> {
    assert!(n >= 1, "factor blocks are indexed from 1");
    let mut block = TruncatedSeries::one(order);
    if n > order {
        return block;
    }
    for &(i, j) in &POSITIVE_ROOTS {
        let pair = IntLaurent::monomial(i, j, BigInt::from(1)) + IntLaurent::monomial(-i, -j, BigInt::from(1));
        let quad = TruncatedSeries::from_coeffs(
            order,
            (0..=2 * n).map(|k| match k {
                0 => IntLaurent::one(),
                k if k == n => -pair.clone(),
                k if k == 2 * n => IntLaurent::one(),
                _ => IntLaurent::zero(),
            }),
        );
        block = block.mul(&quad).expect("same order");
    }
    block
}

/// `Π_{n=1..=order} factor_block(n)^(e_n)` with `e_n = dims(n)`, or
/// `(-1)^n dims(n)` when `signed`.
pub fn phi_product(
    dims: &DimSequence,
    order: usize,
    signed: bool,
) -> Result<TruncatedSeries<BigInt>, CheckError> {
    let exponents = exponents_for(dims, order, signed)?;
    let powers: Vec<TruncatedSeries<BigInt>> = exponents
        .par_iter()
        .enumerate()
        .map(|(idx, &e)| factor_block(idx + 1, order).pow(e))
        .collect::<Result<_, _>>()?;
    // high-degree blocks are sparse, so fold them in first
    let mut acc = TruncatedSeries::one(order);
    for p in powers.iter().rev() {
        acc = acc.mul(p)?;
    }
    Ok(acc)
}

pub(crate) fn exponents_for(dims: &DimSequence, order: usize, signed: bool) -> Result<Vec<i64>, CheckError> {
    (1..=order)
        .map(|n| {
            let d = dims.get(n).ok_or(CheckError::MissingDegree { degree: n })?;
            Ok(if signed && n % 2 == 1 { -d } else { d })
        })
        .collect()
}

/// The series `(q1 + c z q1^-1 q2^-1) · weyl_factor`.
pub fn weighted_prefactor(c: i64, order: usize) -> TruncatedSeries<BigInt> {
    let w: IntLaurent = weyl_factor();
    TruncatedSeries::from_coeffs(order, [w.shift(1, 0), w.shift(-1, -1).scale(&BigInt::from(c))])
}

/// Residue of the `z^k` coefficient of `weighted_prefactor(c) · phi`.
pub(crate) fn residue_at(prefactor: &TruncatedSeries<BigInt>, phi: &TruncatedSeries<BigInt>, k: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for j in 0..=k.min(1) {
        acc += IntLaurent::residue_of_product(prefactor.coeff(j), phi.coeff(k - j));
    }
    acc
}

/// Per-degree residues of the weighted `Φ` product for one dimension sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub family: String,
    pub order: usize,
    pub signed: bool,
    pub prefactor_c: i64,
    pub residues: Vec<BigInt>,
    pub first_nonzero: Option<(usize, BigInt)>,
}

impl CheckReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "family": self.family,
            "order": self.order,
            "signed": self.signed,
            "prefactor_c": self.prefactor_c,
            "residues": self.residues.iter().enumerate()
                .map(|(k, r)| serde_json::json!([k, bigint_to_json(r)]))
                .collect::<Vec<_>>(),
            "first_nonzero": self.first_nonzero.as_ref()
                .map(|(k, r)| serde_json::json!([k, bigint_to_json(r)])),
        })
    }

    /// Residue at degree `k` as an `i64`, for convenience in tests and tables.
    pub fn residue_i64(&self, k: usize) -> Option<i64> {
        self.residues.get(k)?.to_i64()
    }
}

impl Serialize for CheckReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

/// Residues of `(q1 + c z q1^-1 q2^-1) · weyl_factor · Φ` at every `z`-degree
/// `0..=order`.
pub fn residue_check(
    dims: &DimSequence,
    prefactor_c: i64,
    order: usize,
    signed: bool,
) -> Result<CheckReport, CheckError> {
    let phi = phi_product(dims, order, signed)?;
    let pre = weighted_prefactor(prefactor_c, order);
    let residues: Vec<BigInt> = (0..=order).map(|k| residue_at(&pre, &phi, k)).collect();
    let first_nonzero = residues.iter().enumerate().find(|(_, r)| !r.is_zero()).map(|(k, r)| (k, r.clone()));
    Ok(CheckReport { family: dims.label(), order, signed, prefactor_c, residues, first_nonzero })
}

/// `(trivial multiplicity, adjoint multiplicity)` of the virtual sl3 module
/// with character `chi`, read off from `weyl_factor · chi`.
pub fn extract_trivial_adjoint<C: Coeff>(chi: &LaurentPoly<C>) -> (C, C) {
    let w: LaurentPoly<C> = weyl_factor();
    let (ai, aj) = ADJOINT_EXTRACTION;
    (LaurentPoly::coeff_of_product(&w, chi, 0, 0), LaurentPoly::coeff_of_product(&w, chi, ai, aj))
}

/// The same extraction phrased as residues: `Res q1^-1 q2^-1 W chi` and
/// `Res q1 W chi`.
pub fn extract_via_residue<C: Coeff>(chi: &LaurentPoly<C>) -> (C, C) {
    let w: LaurentPoly<C> = weyl_factor();
    let full = &w * chi;
    (full.shift(-1, -1).residue(), full.shift(1, 0).residue())
}
