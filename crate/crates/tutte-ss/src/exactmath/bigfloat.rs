//! Fixed-precision binary floating point on top of [`BigInt`], used for
//! logarithms (spanning-tree growth constants) and hyperbolic product
//! formulas where answers are transcendental.
//!
//! Values are mantissa · 2^exp with the mantissa truncated toward zero
//! to 512 bits (about 154 decimal digits) after every operation. That
//! leaves two orders of magnitude more headroom than the tightest
//! tolerance checked anywhere (1e−30 relative).

use core::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Roots;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::Rational;

/// Mantissa precision in bits.
pub const PRECISION_BITS: u64 = 512;

/// Arbitrary-range binary float with truncating arithmetic.
#[derive(Debug, Clone)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
}

impl BigFloat {
    pub fn zero() -> Self {
        BigFloat {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        BigFloat::normalized(v.clone(), 0)
    }

    pub fn from_i64(v: i64) -> Self {
        BigFloat::from_bigint(&BigInt::from(v))
    }

    pub fn from_rational(v: &Rational) -> Self {
        BigFloat::from_bigint(v.numer()).div(&BigFloat::from_bigint(v.denom()))
    }

    fn normalized(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return BigFloat::zero();
        }
        let bits = mant.magnitude().bits();
        if bits <= PRECISION_BITS {
            return BigFloat { mant, exp };
        }
        let shift = bits - PRECISION_BITS;
        BigFloat {
            mant: shr_trunc(&mant, shift),
            exp: exp + shift as i64,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    /// Exponent of the most significant bit plus one, a cheap proxy for
    /// log2 of the magnitude. i64::MIN for zero.
    fn mag_exp(&self) -> i64 {
        if self.is_zero() {
            return i64::MIN;
        }
        self.exp + self.mant.magnitude().bits() as i64
    }

    pub fn neg(&self) -> Self {
        BigFloat {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        BigFloat {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (hi, lo) = if self.exp >= other.exp {
            (self, other)
        } else {
            (other, self)
        };
        // An addend whose entire magnitude sits far below the other's
        // precision window cannot affect the truncated result, so skip
        // the potentially giant alignment shift. Otherwise the shift is
        // bounded by about twice the precision.
        if lo.mag_exp() < hi.mag_exp() - (PRECISION_BITS as i64 + 64) {
            return hi.clone();
        }
        if hi.mag_exp() < lo.mag_exp() - (PRECISION_BITS as i64 + 64) {
            return lo.clone();
        }
        let diff = (hi.exp - lo.exp) as u64;
        let mant = (&hi.mant << diff) + &lo.mant;
        BigFloat::normalized(mant, lo.exp)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        BigFloat::normalized(&self.mant * &other.mant, self.exp + other.exp)
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        BigFloat::normalized(&self.mant * BigInt::from(k), self.exp)
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "BigFloat division by zero");
        if self.is_zero() {
            return BigFloat::zero();
        }
        let num = &self.mant << PRECISION_BITS;
        let q = num / &other.mant;
        BigFloat::normalized(q, self.exp - other.exp - PRECISION_BITS as i64)
    }

    fn div_u32(&self, k: u32) -> Self {
        BigFloat::normalized(&self.mant / BigInt::from(k), self.exp)
    }

    pub fn powi(&self, mut k: u64) -> Self {
        let mut acc = BigFloat::from_i64(1);
        let mut sq = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    /// Truncated square root; the input must be nonnegative.
    pub fn sqrt(&self) -> Result<Self> {
        if self.is_negative() {
            return Err(Error::DomainError {
                detail: "square root of a negative value",
            });
        }
        if self.is_zero() {
            return Ok(BigFloat::zero());
        }
        let bits = self.mant.magnitude().bits();
        let mut scale = (2 * PRECISION_BITS).saturating_sub(bits);
        if (self.exp - scale as i64) % 2 != 0 {
            scale += 1;
        }
        let shifted = &self.mant << scale;
        let root = Roots::sqrt(&shifted);
        Ok(BigFloat::normalized(root, (self.exp - scale as i64) / 2))
    }

    /// Truncated natural logarithm; the input must be positive.
    pub fn ln(&self) -> Result<Self> {
        if self.is_zero() || self.is_negative() {
            return Err(Error::DomainError {
                detail: "logarithm of a nonpositive value",
            });
        }
        // Split off the power of two: value = x · 2^k with x in [1, 2).
        let bits = self.mant.magnitude().bits();
        let x = BigFloat {
            mant: self.mant.clone(),
            exp: -((bits - 1) as i64),
        };
        let k = self.exp + (bits - 1) as i64;
        let one = BigFloat::from_i64(1);
        let u = x.sub(&one).div(&x.add(&one));
        let ln_x = atanh_series(&u).mul_i64(2);
        Ok(ln_x.add(&ln2().mul_i64(k)))
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match self.sub(other).mant.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }

    /// Decimal rendering with exactly `digits` fractional digits, the
    /// last one rounded half away from zero.
    pub fn to_decimal_string(&self, digits: usize) -> alloc::string::String {
        use alloc::string::ToString;
        use num_traits::One;
        let ten_pow = num_traits::pow(BigInt::from(10), digits);
        let scaled_mag = self.mant.abs() * &ten_pow;
        let scaled = if self.exp >= 0 {
            scaled_mag << self.exp as u64
        } else {
            let shift = self.exp.unsigned_abs();
            (scaled_mag + (BigInt::one() << (shift - 1))) >> shift
        };
        let sign = if self.mant.is_negative() && !scaled.is_zero() {
            "-"
        } else {
            ""
        };
        let int_part = &scaled / &ten_pow;
        if digits == 0 {
            return alloc::format!("{sign}{int_part}");
        }
        let mut frac = (&scaled % &ten_pow).to_string();
        while frac.len() < digits {
            frac.insert(0, '0');
        }
        alloc::format!("{sign}{int_part}.{frac}")
    }

    /// Nearest f64, for display only.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.magnitude().bits();
        let shift = bits.saturating_sub(53);
        let top = shr_trunc(&self.mant, shift);
        let approx = num_traits::ToPrimitive::to_f64(&top).unwrap_or(f64::NAN);
        let e = self.exp + shift as i64;
        let e = e.clamp(i32::MIN as i64, i32::MAX as i64) as i32;
        approx * libm_exp2(e)
    }
}

/// 2^e without relying on std float math (exp2 is not in core).
fn libm_exp2(e: i32) -> f64 {
    // f64 powers of two are exact until overflow or underflow, and the
    // bit-level construction covers the normal range directly.
    if e >= 1024 {
        return f64::INFINITY;
    }
    if e < -1074 {
        return 0.0;
    }
    if e >= -1022 {
        f64::from_bits(((e + 1023) as u64) << 52)
    } else {
        // Subnormal range.
        f64::from_bits(1u64 << (e + 1074))
    }
}

fn shr_trunc(m: &BigInt, shift: u64) -> BigInt {
    let (sign, mag) = m.clone().into_parts();
    BigInt::from_biguint(sign, mag >> shift)
}

/// Σ u^(2k+1)/(2k+1), so 2·atanh(u); converges fast for |u| ≤ 1/3.
fn atanh_series(u: &BigFloat) -> BigFloat {
    if u.is_zero() {
        return BigFloat::zero();
    }
    let u2 = u.mul(u);
    let mut power = u.clone();
    let mut acc = BigFloat::zero();
    let mut n: u32 = 1;
    loop {
        let term = power.div_u32(n);
        acc = acc.add(&term);
        if term.is_zero() || term.mag_exp() < acc.mag_exp() - (PRECISION_BITS as i64 + 16) {
            return acc;
        }
        power = power.mul(&u2);
        n += 2;
    }
}

/// ln 2 = 2·atanh(1/3), recomputed on demand (a few hundred short
/// iterations, cheap next to everything around it).
fn ln2() -> BigFloat {
    let third = BigFloat::from_i64(1).div(&BigFloat::from_i64(3));
    atanh_series(&third).mul_i64(2)
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}
