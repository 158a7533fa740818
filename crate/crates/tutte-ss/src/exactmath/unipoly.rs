//! Univariate exact polynomials, generic over the coefficient ring and
//! Laurent-capable through signed exponents.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::Rational;

/// Coefficient ring for [`UniPoly`]: exact integers or rationals.
pub trait Coeff: Clone + PartialEq + core::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(k: i64) -> Self;
    fn add_assign_ref(&mut self, other: &Self);
    fn sub_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_val(&self) -> Self;
}

impl Coeff for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(k: i64) -> Self {
        BigInt::from(k)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_val(&self) -> Self {
        -self
    }
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(k: i64) -> Self {
        Rational::from(BigInt::from(k))
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_val(&self) -> Self {
        -self
    }
}

/// Sparse univariate polynomial with exponents in Z.
///
/// Nonnegative exponents give ordinary polynomials (chromatic in λ,
/// reliability in p); negative exponents give Laurent polynomials
/// (Ising partition functions in t). Zero coefficients are never
/// stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly<C: Coeff> {
    coeffs: BTreeMap<i64, C>,
}

impl<C: Coeff> Default for UniPoly<C> {
    fn default() -> Self {
        UniPoly::zero()
    }
}

impl<C: Coeff> UniPoly<C> {
    pub fn zero() -> Self {
        UniPoly {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        UniPoly::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        UniPoly::monomial(0, c)
    }

    pub fn monomial(e: i64, c: C) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        UniPoly { coeffs }
    }

    /// Builds from (exponent, coefficient) pairs, accumulating
    /// duplicates and eliding zeros.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = UniPoly::zero();
        for (e, c) in pairs {
            p.add_term(e, c);
        }
        p
    }

    /// Adds c · z^e in place.
    pub fn add_term(&mut self, e: i64, c: C) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    /// Terms in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (&i64, &C)> {
        self.coeffs.iter()
    }

    /// Coefficient of z^e (zero if absent).
    pub fn coeff(&self, e: i64) -> C {
        self.coeffs.get(&e).cloned().unwrap_or_else(C::zero)
    }

    /// Smallest exponent present, None for the zero polynomial.
    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Largest exponent present, None for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.coeffs.iter().next_back().map(|(_, c)| c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut acc = self.coeffs.clone();
        for (&e, c) in &other.coeffs {
            match acc.entry(e) {
                Entry::Vacant(v) => {
                    v.insert(c.clone());
                }
                Entry::Occupied(mut o) => {
                    o.get_mut().add_assign_ref(c);
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
            }
        }
        UniPoly { coeffs: acc }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut acc = self.coeffs.clone();
        for (&e, c) in &other.coeffs {
            match acc.entry(e) {
                Entry::Vacant(v) => {
                    v.insert(c.neg_val());
                }
                Entry::Occupied(mut o) => {
                    o.get_mut().sub_assign_ref(c);
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
            }
        }
        UniPoly { coeffs: acc }
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, c.neg_val())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let (small, big) = if self.coeffs.len() <= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc: BTreeMap<i64, C> = BTreeMap::new();
        for (&ea, ca) in &small.coeffs {
            for (&eb, cb) in &big.coeffs {
                let prod = ca.mul_ref(cb);
                match acc.entry(ea + eb) {
                    Entry::Vacant(v) => {
                        v.insert(prod);
                    }
                    Entry::Occupied(mut o) => {
                        o.get_mut().add_assign_ref(&prod);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        UniPoly { coeffs: acc }
    }

    pub fn mul_scalar(&self, c: &C) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|(&e, v)| (e, v.mul_ref(c))).collect(),
        }
    }

    /// Multiplies by z^delta.
    pub fn shift_exp(&self, delta: i64) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e + delta, c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        match k {
            0 => UniPoly::one(),
            _ => {
                let mut acc = self.clone();
                for _ in 1..k {
                    acc = acc.mul(self);
                }
                acc
            }
        }
    }

    /// Exact evaluation by sparse Horner. Negative exponents are not
    /// evaluable in a general ring and panic; Laurent values go through
    /// [`UniPoly::eval_laurent`] instead.
    pub fn eval(&self, x: &C) -> C {
        assert!(
            self.min_exp().is_none_or(|e| e >= 0),
            "eval on a Laurent polynomial"
        );
        let rows: Vec<(i64, &C)> = self.coeffs.iter().map(|(&e, c)| (e, c)).collect();
        let mut acc = C::zero();
        let mut upper: Option<i64> = None;
        for (e, c) in rows.into_iter().rev() {
            if let Some(hi) = upper {
                acc = acc.mul_ref(&pow_ref(x, (hi - e) as u64));
            }
            acc.add_assign_ref(c);
            upper = Some(e);
        }
        if let Some(lo) = upper {
            acc = acc.mul_ref(&pow_ref(x, lo as u64));
        }
        acc
    }
}

fn pow_ref<C: Coeff>(base: &C, mut k: u64) -> C {
    let mut acc = C::one();
    let mut sq = base.clone();
    while k > 0 {
        if k & 1 == 1 {
            acc = acc.mul_ref(&sq);
        }
        k >>= 1;
        if k > 0 {
            sq = sq.mul_ref(&sq);
        }
    }
    acc
}

impl UniPoly<Rational> {
    /// Exact evaluation allowing negative exponents; x must be nonzero
    /// when any are present.
    pub fn eval_laurent(&self, x: &Rational) -> Result<Rational> {
        let min = self.min_exp().unwrap_or(0);
        if min >= 0 {
            return Ok(self.eval(x));
        }
        if Zero::is_zero(x) {
            return Err(Error::DomainError {
                detail: "Laurent evaluation at 0",
            });
        }
        let shifted = self.shift_exp(-min);
        let value = shifted.eval(x);
        Ok(value * pow_ref(&x.recip(), (-min) as u64))
    }
}

impl UniPoly<BigInt> {
    pub fn to_rational(&self) -> UniPoly<Rational> {
        UniPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| (e, Rational::from(c.clone())))
                .collect(),
        }
    }

    /// Exact evaluation at a rational point, allowing negative
    /// exponents when x is nonzero.
    pub fn eval_rational(&self, x: &Rational) -> Result<Rational> {
        self.to_rational().eval_laurent(x)
    }

    /// Exact quotient self / div, Laurent-aware. Fails with
    /// `NotDivisible` when a leading-coefficient division is inexact or
    /// a remainder survives.
    pub fn divide_exact(&self, div: &Self) -> Result<Self> {
        if div.is_zero() {
            return Err(Error::NotDivisible {
                divisor: "zero polynomial",
                stage: 0,
            });
        }
        if self.is_zero() {
            return Ok(UniPoly::zero());
        }
        let smin = self.min_exp().unwrap();
        let dmin = div.min_exp().unwrap();
        let s = self.shift_exp(-smin);
        let d = div.shift_exp(-dmin);
        let dd = d.degree().unwrap();
        let dl = d.leading_coeff().unwrap().clone();
        let mut r = s;
        let mut q = UniPoly::zero();
        let mut stage = 0u32;
        while let Some(rd) = r.degree() {
            stage += 1;
            if rd < dd {
                return Err(Error::NotDivisible {
                    divisor: "univariate polynomial",
                    stage,
                });
            }
            let rl = r.leading_coeff().unwrap();
            let (qc, rem) = num_integer::Integer::div_rem(rl, &dl);
            if !Zero::is_zero(&rem) {
                return Err(Error::NotDivisible {
                    divisor: "univariate polynomial",
                    stage,
                });
            }
            let shift = rd - dd;
            r = r.sub(&d.shift_exp(shift).mul_scalar(&qc));
            q.add_term(shift, qc);
        }
        Ok(q.shift_exp(smin - dmin))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_poly(pairs: &[(i64, i64)]) -> UniPoly<BigInt> {
        UniPoly::from_pairs(pairs.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    #[test]
    fn arithmetic_round_trip() {
        let p = int_poly(&[(0, 1), (1, -3), (2, 2)]);
        let q = int_poly(&[(0, 2), (3, 5)]);
        assert_eq!(p.add(&q).sub(&q), p);
        assert_eq!(p.sub(&p), UniPoly::zero());
        let prod = p.mul(&q);
        assert_eq!(
            prod,
            int_poly(&[(0, 2), (1, -6), (2, 4), (3, 5), (4, -15), (5, 10)])
        );
    }

    #[test]
    fn eval_matches_horner() {
        let p = int_poly(&[(0, 2), (2, -1), (5, 3)]);
        let x = BigInt::from(3);
        assert_eq!(p.eval(&x), BigInt::from(2 - 9 + 3 * 243));
    }

    #[test]
    fn laurent_eval_uses_reciprocal() {
        let p = int_poly(&[(-2, 1), (1, 4)]);
        let x = Rational::new(BigInt::from(1), BigInt::from(2));
        // 1/x^2 + 4x at x = 1/2 is 4 + 2 = 6.
        assert_eq!(
            p.eval_rational(&x).unwrap(),
            Rational::from(BigInt::from(6))
        );
        assert!(p
            .eval_rational(&Rational::from(BigInt::from(0)))
            .is_err());
    }

    #[test]
    fn divide_exact_round_trips() {
        let p = int_poly(&[(0, 3), (1, -1), (4, 7)]);
        let d = int_poly(&[(0, -1), (2, 1)]);
        let prod = p.mul(&d);
        assert_eq!(prod.divide_exact(&d).unwrap(), p);
        // Laurent divisor.
        let dl = d.shift_exp(-1);
        assert_eq!(prod.divide_exact(&dl).unwrap(), p.shift_exp(1));
        assert!(p.divide_exact(&d).is_err());
    }

    #[test]
    fn divide_exact_checks_coefficients() {
        let p = int_poly(&[(1, 3)]);
        let d = int_poly(&[(0, 2)]);
        assert!(p.divide_exact(&d).is_err());
        assert_eq!(
            int_poly(&[(1, 4)]).divide_exact(&d).unwrap(),
            int_poly(&[(1, 2)])
        );
    }
}
