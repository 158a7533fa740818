//! Univariate rational functions over exact rationals.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactmath::{Rational, UniPoly};

/// Quotient of two univariate polynomials with rational coefficients.
///
/// The representation is normalized by scaling numerator and
/// denominator by the same constant so the denominator's leading
/// coefficient is 1. Common polynomial factors are not cancelled;
/// equality is decided by cross-multiplication, which needs no GCDs and
/// is always exact.
#[derive(Debug, Clone)]
pub struct RationalFn {
    num: UniPoly<Rational>,
    den: UniPoly<Rational>,
}

impl RationalFn {
    /// Builds num/den, normalizing to a monic denominator. The
    /// denominator must be nonzero.
    pub fn new(num: UniPoly<Rational>, den: UniPoly<Rational>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidParameter(alloc::string::String::from(
                "rational function with zero denominator",
            )));
        }
        if num.is_zero() {
            return Ok(RationalFn {
                num,
                den: UniPoly::one(),
            });
        }
        let lead = den.leading_coeff().expect("nonzero denominator").clone();
        let inv = lead.recip();
        Ok(RationalFn {
            num: num.mul_scalar(&inv),
            den: den.mul_scalar(&inv),
        })
    }

    pub fn from_poly(p: UniPoly<Rational>) -> Self {
        RationalFn {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        RationalFn::from_poly(UniPoly::constant(c))
    }

    pub fn zero() -> Self {
        RationalFn::from_poly(UniPoly::zero())
    }

    pub fn one() -> Self {
        RationalFn::from_poly(UniPoly::one())
    }

    pub fn num(&self) -> &UniPoly<Rational> {
        &self.num
    }

    pub fn den(&self) -> &UniPoly<Rational> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RationalFn::new(num, den).expect("product of nonzero denominators")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalFn::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("product of nonzero denominators")
    }

    pub fn mul_scalar(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return RationalFn::zero();
        }
        RationalFn {
            num: self.num.mul_scalar(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        match k {
            0 => RationalFn::one(),
            _ => {
                let mut acc = self.clone();
                for _ in 1..k {
                    acc = acc.mul(self);
                }
                acc
            }
        }
    }

    /// Exact value at y, failing on a zero of the stored denominator.
    pub fn eval(&self, y: &Rational) -> Result<Rational> {
        let den = self.den.eval(y);
        if den.is_zero() {
            return Err(Error::DomainError {
                detail: "rational function evaluated at a denominator zero",
            });
        }
        Ok(self.num.eval(y) / den)
    }
}

impl PartialEq for RationalFn {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for RationalFn {}
