//! Power series in `z` truncated modulo `z^(N+1)`, with Laurent-polynomial
//! coefficients.

use rayon::prelude::*;
use thiserror::Error;

use crate::laurent::{Coeff, LaurentPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("constant term is not the unit 1")]
    NonUnitConstant,
}

/// A power series `Σ_{k=0..=order} c_k z^k`, known modulo `z^(order+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries<C: Coeff> {
    coeffs: Vec<LaurentPoly<C>>,
}

impl<C: Coeff> TruncatedSeries<C> {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries { coeffs: vec![LaurentPoly::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = LaurentPoly::one();
        s
    }

    /// Builds a series from leading coefficients; missing degrees are zero and
    /// degrees above `order` are discarded.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = LaurentPoly<C>>) -> Self {
        let mut s = Self::zero(order);
        for (k, c) in coeffs.into_iter().enumerate().take(order + 1) {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &LaurentPoly<C> {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[LaurentPoly<C>] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, c: LaurentPoly<C>) {
        self.coeffs[k] = c;
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(LaurentPoly::is_zero)
    }

    /// The same series known only modulo `z^(m+1)`. Requires `m <= order`.
    pub fn truncate(&self, m: usize) -> Self {
        assert!(m <= self.order(), "cannot extend a truncated series");
        TruncatedSeries { coeffs: self.coeffs[..=m].to_vec() }
    }

    /// Multiplies every coefficient by the `z`-constant `c`.
    pub fn scale(&self, c: &LaurentPoly<C>) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    fn check_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        if self.is_one() {
            return Ok(other.clone());
        }
        if other.is_one() {
            return Ok(self.clone());
        }
        let coeffs = (0..=self.order())
            .into_par_iter()
            .map(|k| {
                let pairs: Vec<_> = (0..=k)
                    .filter(|&i| !self.coeffs[i].is_zero() && !other.coeffs[k - i].is_zero())
                    .map(|i| (&self.coeffs[i], &other.coeffs[k - i]))
                    .collect();
                C::sum_of_products(&pairs)
            })
            .collect();
        Ok(TruncatedSeries { coeffs })
    }

    /// The single coefficient of `z^k` in `self · other`.
    pub fn product_coeff(&self, other: &Self, k: usize) -> LaurentPoly<C> {
        let pairs: Vec<_> = (0..=k.min(self.order()))
            .filter(|&i| k - i <= other.order())
            .filter(|&i| !self.coeffs[i].is_zero() && !other.coeffs[k - i].is_zero())
            .map(|i| (&self.coeffs[i], &other.coeffs[k - i]))
            .collect();
        C::sum_of_products(&pairs)
    }

    /// `self · self`, using the symmetry of the Cauchy product.
    pub fn square(&self) -> Self {
        let coeffs = (0..=self.order())
            .into_par_iter()
            .map(|k| {
                let c = &self.coeffs;
                let cross: Vec<_> = (0..=k)
                    .filter(|&i| i < k - i && !c[i].is_zero() && !c[k - i].is_zero())
                    .map(|i| (&c[i], &c[k - i]))
                    .collect();
                let mut acc = C::sum_of_products(&cross);
                acc = &acc + &acc;
                if k % 2 == 0 && !c[k / 2].is_zero() {
                    acc += &(&c[k / 2] * &c[k / 2]);
                }
                acc
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Multiplicative inverse; the constant term must be exactly 1.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::NonUnitConstant);
        }
        let n = self.order();
        let mut inv: Vec<LaurentPoly<C>> = Vec::with_capacity(n + 1);
        inv.push(LaurentPoly::one());
        for k in 1..=n {
            let pairs: Vec<_> = (1..=k)
                .filter(|&i| !self.coeffs[i].is_zero() && !inv[k - i].is_zero())
                .map(|i| (&self.coeffs[i], &inv[k - i]))
                .collect();
            inv.push(-C::sum_of_products(&pairs));
        }
        Ok(TruncatedSeries { coeffs: inv })
    }

    /// Exact integer power by repeated squaring; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self, SeriesError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut result = Self::one(self.order());
        let mut base = base;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        Ok(result)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::IntLaurent;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type S = TruncatedSeries<BigInt>;

    fn c(v: i64) -> IntLaurent {
        IntLaurent::constant(BigInt::from(v))
    }

    fn q(i: i32, j: i32) -> IntLaurent {
        IntLaurent::monomial(i, j, BigInt::from(1))
    }

    fn ints(order: usize, vs: &[i64]) -> S {
        S::from_coeffs(order, vs.iter().map(|&v| c(v)))
    }

    #[test]
    fn mul_examples() {
        assert_eq!(ints(2, &[1, 1]).mul(&ints(2, &[1, -1])).unwrap(), ints(2, &[1, 0, -1]));
        let a = S::from_coeffs(1, [c(1), q(1, 0)]);
        let b = S::from_coeffs(1, [c(1), q(0, 1)]);
        assert_eq!(a.mul(&b).unwrap(), S::from_coeffs(1, [c(1), &q(1, 0) + &q(0, 1)]));
        let blk = crate::sl3char::factor_block(1, 2);
        assert_eq!(blk.mul(&blk).unwrap(), blk.pow(2).unwrap());
        assert_eq!(blk.square(), blk.pow(2).unwrap());
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let err = ints(2, &[1]).mul(&ints(3, &[1])).unwrap_err();
        assert_eq!(err, SeriesError::OrderMismatch { left: 2, right: 3 });
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(ints(2, &[1, -1]).inverse().unwrap(), ints(2, &[1, 1, 1]));
        assert_eq!(S::one(4).inverse().unwrap(), S::one(4));
        let blk = crate::sl3char::factor_block(1, 6);
        assert!(blk.inverse().unwrap().mul(&blk).unwrap().is_one());
        assert_eq!(ints(2, &[2, 1]).inverse(), Err(SeriesError::NonUnitConstant));
        assert!(ints(2, &[1, 1]).pow(-1).is_ok());
        assert_eq!(ints(2, &[3, 1]).pow(-2), Err(SeriesError::NonUnitConstant));
    }

    #[test]
    fn pow_examples() {
        assert_eq!(ints(3, &[1, 1]).pow(3).unwrap(), ints(3, &[1, 3, 3, 1]));
        assert!(ints(3, &[5, 1, 2]).pow(0).unwrap().is_one());
        let x = &q(1, -1) + &q(-1, 1);
        let a = S::from_coeffs(2, [c(1), -x.clone(), c(1)]);
        let fast = a.pow(32).unwrap();
        let mut slow = S::one(2);
        for _ in 0..32 {
            slow = slow.mul(&a).unwrap();
        }
        assert_eq!(fast, slow);
        assert_eq!(fast.coeff(1), &x.scale(&BigInt::from(-32)));
    }

    fn small_series(order: usize) -> impl Strategy<Value = S> {
        let poly = prop::collection::vec(((-2i32..=2, -2i32..=2), -3i64..=3), 0..3).prop_map(|ts| {
            IntLaurent::from_terms(ts.into_iter().map(|(e, v)| (e, BigInt::from(v))))
        });
        prop::collection::vec(poly, order).prop_map(move |tail| {
            S::from_coeffs(order, std::iter::once(IntLaurent::one()).chain(tail))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn pow_adds_exponents(a in small_series(3), m in 0i64..=8, n in 0i64..=8) {
            prop_assert_eq!(a.pow(m + n).unwrap(), a.pow(m).unwrap().mul(&a.pow(n).unwrap()).unwrap());
        }

        #[test]
        fn negative_pow_inverts(a in small_series(4), e in 1i64..=6) {
            prop_assert!(a.pow(-e).unwrap().mul(&a.pow(e).unwrap()).unwrap().is_one());
        }

        #[test]
        fn truncation_commutes(a in small_series(5), e in -4i64..=6) {
            prop_assert_eq!(a.pow(e).unwrap().truncate(3), a.truncate(3).pow(e).unwrap());
        }
    }
}
