//! Sparse bivariate polynomials over arbitrary-precision integers.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::Rational;

/// Polynomial in x and y with [`BigInt`] coefficients, stored as a map
/// from (x exponent, y exponent) to coefficient.
///
/// Zero coefficients are never stored, so structural equality of the
/// maps coincides with mathematical equality. Map iteration order is
/// ascending lexicographic in (x exponent, y exponent), which is also
/// the canonical serialization order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

#[cfg(feature = "parallel")]
const PAR_MUL_MIN_WORK: usize = 1 << 21;

impl BiPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        BiPoly::default()
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        BiPoly::constant(1)
    }

    /// A constant polynomial.
    pub fn constant(c: impl Into<BigInt>) -> Self {
        BiPoly::monomial(0, 0, c)
    }

    /// The single term c · x^xe · y^ye.
    pub fn monomial(xe: u32, ye: u32, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((xe, ye), c);
        }
        BiPoly { terms }
    }

    /// The polynomial x − 1.
    pub fn x_minus_one() -> Self {
        BiPoly::from_pairs([(1, 0, 1), (0, 0, -1)])
    }

    /// The polynomial y − 1.
    pub fn y_minus_one() -> Self {
        BiPoly::from_pairs([(0, 1, 1), (0, 0, -1)])
    }

    /// Builds from (x exponent, y exponent, coefficient) triples,
    /// accumulating duplicates and eliding zeros.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, u32, i64)>) -> Self {
        let mut p = BiPoly::zero();
        for (xe, ye, c) in pairs {
            p.add_term(xe, ye, BigInt::from(c));
        }
        p
    }

    /// Adds c · x^xe · y^ye in place.
    pub fn add_term(&mut self, xe: u32, ye: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((xe, ye)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&(0, 0))
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    /// Number of stored (nonzero) terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic (x exponent, y exponent) order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    /// Coefficient of x^xe · y^ye (zero if absent).
    pub fn coeff(&self, xe: u32, ye: u32) -> BigInt {
        self.terms.get(&(xe, ye)).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Highest x exponent present, 0 for the zero polynomial.
    pub fn x_degree(&self) -> u32 {
        self.terms.keys().map(|&(xe, _)| xe).max().unwrap_or(0)
    }

    /// Highest y exponent present, 0 for the zero polynomial.
    pub fn y_degree(&self) -> u32 {
        self.terms.keys().map(|&(_, ye)| ye).max().unwrap_or(0)
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let (mut acc, rest) = if self.terms.len() >= other.terms.len() {
            (self.terms.clone(), other)
        } else {
            (other.terms.clone(), self)
        };
        for (&key, c) in &rest.terms {
            match acc.entry(key) {
                Entry::Vacant(e) => {
                    e.insert(c.clone());
                }
                Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
        BiPoly { terms: acc }
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        let mut acc = self.terms.clone();
        for (&key, c) in &other.terms {
            match acc.entry(key) {
                Entry::Vacant(e) => {
                    e.insert(-c);
                }
                Entry::Occupied(mut e) => {
                    *e.get_mut() -= c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
        BiPoly { terms: acc }
    }

    /// Exact product. The accumulation map makes the result independent
    /// of term iteration order, and exact integer arithmetic makes the
    /// parallel path bit-identical to the sequential one.
    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() || other.is_zero() {
            return BiPoly::zero();
        }
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        #[cfg(feature = "parallel")]
        {
            let work = small.terms.len().saturating_mul(big.terms.len());
            if work >= PAR_MUL_MIN_WORK && rayon::current_num_threads() > 1 {
                return BiPoly::mul_parallel(small, big);
            }
        }
        let mut acc = BTreeMap::new();
        BiPoly::mul_accumulate(&mut acc, small.terms.iter(), big);
        acc.retain(|_, c: &mut BigInt| !c.is_zero());
        BiPoly { terms: acc }
    }

    fn mul_accumulate<'a>(
        acc: &mut BTreeMap<(u32, u32), BigInt>,
        outer: impl Iterator<Item = (&'a (u32, u32), &'a BigInt)>,
        big: &BiPoly,
    ) {
        for (&(ax, ay), ac) in outer {
            for (&(bx, by), bc) in &big.terms {
                let key = (ax + bx, ay + by);
                let prod = ac * bc;
                match acc.entry(key) {
                    Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    Entry::Occupied(mut e) => {
                        *e.get_mut() += prod;
                    }
                }
            }
        }
    }

    #[cfg(feature = "parallel")]
    fn mul_parallel(small: &BiPoly, big: &BiPoly) -> BiPoly {
        use rayon::prelude::*;
        let outer: Vec<(&(u32, u32), &BigInt)> = small.terms.iter().collect();
        let chunk = outer
            .len()
            .div_ceil(rayon::current_num_threads() * 4)
            .max(1);
        let partials: Vec<BTreeMap<(u32, u32), BigInt>> = outer
            .par_chunks(chunk)
            .map(|part| {
                let mut acc = BTreeMap::new();
                BiPoly::mul_accumulate(&mut acc, part.iter().copied(), big);
                acc
            })
            .collect();
        let mut acc = BTreeMap::new();
        for part in partials {
            for (key, c) in part {
                match acc.entry(key) {
                    Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    Entry::Occupied(mut e) => {
                        *e.get_mut() += c;
                    }
                }
            }
        }
        acc.retain(|_, c: &mut BigInt| !c.is_zero());
        BiPoly { terms: acc }
    }

    pub fn mul_scalar(&self, c: &BigInt) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    pub fn mul_i64(&self, c: i64) -> BiPoly {
        self.mul_scalar(&BigInt::from(c))
    }

    /// Multiplies by x^xe · y^ye.
    pub fn mul_monomial(&self, xe: u32, ye: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(ax, ay), c)| ((ax + xe, ay + ye), c.clone()))
                .collect(),
        }
    }

    /// Small-exponent power by repeated multiplication.
    pub fn pow(&self, k: u32) -> BiPoly {
        match k {
            0 => BiPoly::one(),
            _ => {
                let mut acc = self.clone();
                for _ in 1..k {
                    acc = acc.mul(self);
                }
                acc
            }
        }
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, x0: &Rational, y0: &Rational) -> Rational {
        // Inner sums per x exponent, then Horner in x over the sparse
        // exponent gaps.
        let mut ypows: Vec<Rational> = alloc::vec![Rational::one()];
        let mut rows: Vec<(u32, Rational)> = Vec::new();
        for (&(xe, ye), c) in &self.terms {
            while ypows.len() <= ye as usize {
                let next = ypows.last().unwrap() * y0;
                ypows.push(next);
            }
            let term = Rational::from(c.clone()) * &ypows[ye as usize];
            match rows.last_mut() {
                Some((rx, sum)) if *rx == xe => *sum += term,
                _ => rows.push((xe, term)),
            }
        }
        let mut acc = Rational::zero();
        let mut upper: Option<u32> = None;
        for (xe, sum) in rows.into_iter().rev() {
            if let Some(hi) = upper {
                acc *= rat_pow(x0, hi - xe);
            }
            acc += sum;
            upper = Some(xe);
        }
        if let Some(lo) = upper {
            acc *= rat_pow(x0, lo);
        }
        acc
    }

    /// Exact evaluation at an integer point.
    pub fn eval_int(&self, x0: &BigInt, y0: &BigInt) -> BigInt {
        let mut ypows: Vec<BigInt> = alloc::vec![BigInt::one()];
        let mut rows: Vec<(u32, BigInt)> = Vec::new();
        for (&(xe, ye), c) in &self.terms {
            while ypows.len() <= ye as usize {
                let next = ypows.last().unwrap() * y0;
                ypows.push(next);
            }
            let term = c * &ypows[ye as usize];
            match rows.last_mut() {
                Some((rx, sum)) if *rx == xe => *sum += term,
                _ => rows.push((xe, term)),
            }
        }
        let mut acc = BigInt::zero();
        let mut upper: Option<u32> = None;
        for (xe, sum) in rows.into_iter().rev() {
            if let Some(hi) = upper {
                acc *= int_pow(x0, hi - xe);
            }
            acc += sum;
            upper = Some(xe);
        }
        if let Some(lo) = upper {
            acc *= int_pow(x0, lo);
        }
        acc
    }

    /// Exact quotient by (x−1)^k, or `NotDivisible` naming the first
    /// stage whose remainder is nonzero.
    pub fn divide_exact_x_minus_1(&self, k: u32) -> Result<BiPoly> {
        if k == 0 || self.is_zero() {
            return Ok(self.clone());
        }
        // Rows of y-polynomials indexed by x exponent.
        let mut rows: BTreeMap<u32, BTreeMap<u32, BigInt>> = BTreeMap::new();
        for (&(xe, ye), c) in &self.terms {
            rows.entry(xe).or_default().insert(ye, c.clone());
        }
        for stage in 1..=k {
            rows = divide_rows_once(rows, stage)?;
            if rows.is_empty() {
                return Ok(BiPoly::zero());
            }
        }
        let mut terms = BTreeMap::new();
        for (xe, row) in rows {
            for (ye, c) in row {
                terms.insert((xe, ye), c);
            }
        }
        Ok(BiPoly { terms })
    }

    /// Sum of all coefficients, the value at (1, 1).
    pub fn coeff_sum(&self) -> BigInt {
        self.terms.values().sum()
    }
}

/// One synthetic-division stage by (x−1) on rows of y-polynomials:
/// q_(d−1) = a_d, then q_(j−1) = a_j + q_j downward, remainder a_0 + q_0.
fn divide_rows_once(
    mut rows: BTreeMap<u32, BTreeMap<u32, BigInt>>,
    stage: u32,
) -> Result<BTreeMap<u32, BTreeMap<u32, BigInt>>> {
    let not_divisible = Error::NotDivisible {
        divisor: "x - 1",
        stage,
    };
    let d = *rows.keys().next_back().expect("nonempty rows");
    if d == 0 {
        return Err(not_divisible);
    }
    let mut quotient: BTreeMap<u32, BTreeMap<u32, BigInt>> = BTreeMap::new();
    let mut carry = rows.remove(&d).expect("top row exists");
    quotient.insert(d - 1, carry.clone());
    for j in (1..d).rev() {
        if let Some(aj) = rows.remove(&j) {
            add_row(&mut carry, aj);
        }
        if !carry.is_empty() {
            quotient.insert(j - 1, carry.clone());
        }
    }
    if let Some(a0) = rows.remove(&0) {
        add_row(&mut carry, a0);
    }
    if !carry.is_empty() {
        return Err(not_divisible);
    }
    Ok(quotient)
}

fn add_row(acc: &mut BTreeMap<u32, BigInt>, other: BTreeMap<u32, BigInt>) {
    for (ye, c) in other {
        match acc.entry(ye) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

fn rat_pow(base: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    let mut sq = base.clone();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            acc *= &sq;
        }
        k >>= 1;
        if k > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}

fn int_pow(base: &BigInt, k: u32) -> BigInt {
    num_traits::pow::pow(base.clone(), k as usize)
}

impl core::ops::Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        BiPoly::add(self, rhs)
    }
}

impl core::ops::Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        BiPoly::sub(self, rhs)
    }
}

impl core::ops::Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        BiPoly::mul(self, rhs)
    }
}

impl core::ops::Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::neg(self)
    }
}

impl From<i64> for BiPoly {
    fn from(c: i64) -> Self {
        BiPoly::constant(c)
    }
}

impl core::fmt::Display for BiPoly {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&(xe, ye), c) in &self.terms {
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
                first = false;
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mag = c.magnitude();
            let unit_coeff = mag.is_one() && (xe, ye) != (0, 0);
            if !unit_coeff {
                write!(f, "{mag}")?;
            }
            if xe > 0 {
                if !unit_coeff {
                    f.write_str("*")?;
                }
                f.write_str("x")?;
                if xe > 1 {
                    write!(f, "^{xe}")?;
                }
            }
            if ye > 0 {
                if xe > 0 || !unit_coeff {
                    f.write_str("*")?;
                }
                f.write_str("y")?;
                if ye > 1 {
                    write!(f, "^{ye}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn add_cancels_to_zero() {
        let p = BiPoly::from_pairs([(1, 0, 1), (0, 0, -1)]);
        let q = p.neg();
        assert!(p.add(&q).is_zero());
        assert_eq!(p.add(&BiPoly::zero()), p);
    }

    #[test]
    fn add_builds_triangle_tutte() {
        // (y+2) + 3(x−1) + (x−1)^2 = x^2 + x + y
        let t2 = BiPoly::from_pairs([(0, 1, 1), (0, 0, 2)]);
        let t1 = BiPoly::x_minus_one().mul_i64(3);
        let t0 = BiPoly::x_minus_one().pow(2);
        let total = t2.add(&t1).add(&t0);
        assert_eq!(total, BiPoly::from_pairs([(2, 0, 1), (1, 0, 1), (0, 1, 1)]));
    }

    #[test]
    fn mul_expands_squares() {
        let p = BiPoly::x_minus_one();
        let q = BiPoly::from_pairs([(1, 0, 1), (0, 0, 1)]);
        assert_eq!(p.mul(&q), BiPoly::from_pairs([(2, 0, 1), (0, 0, -1)]));
        // (x^2+x+y)^2 = x^4 + 2x^3 + x^2 + 2x^2 y + 2xy + y^2
        let t = BiPoly::from_pairs([(2, 0, 1), (1, 0, 1), (0, 1, 1)]);
        let expected = BiPoly::from_pairs([
            (4, 0, 1),
            (3, 0, 2),
            (2, 0, 1),
            (2, 1, 2),
            (1, 1, 2),
            (0, 2, 1),
        ]);
        assert_eq!(t.pow(2), expected);
    }

    #[test]
    fn eval_triangle_points() {
        let t = BiPoly::from_pairs([(2, 0, 1), (1, 0, 1), (0, 1, 1)]);
        assert_eq!(t.eval(&rat(1, 1), &rat(1, 1)), rat(3, 1));
        assert_eq!(t.eval(&rat(2, 1), &rat(2, 1)), rat(8, 1));
        assert_eq!(t.eval(&rat(2, 1), &rat(0, 1)), rat(6, 1));
        assert_eq!(t.eval(&rat(1, 2), &rat(1, 3)), rat(13, 12));
        assert_eq!(
            t.eval_int(&BigInt::from(-3), &BigInt::from(5)),
            BigInt::from(11)
        );
    }

    #[test]
    fn divide_exact_round_trips() {
        let p = BiPoly::from_pairs([(2, 1, 3), (0, 3, -2), (1, 1, 7)]);
        let shifted = p.mul(&BiPoly::x_minus_one().pow(2));
        assert_eq!(shifted.divide_exact_x_minus_1(2).unwrap(), p);
        assert_eq!(
            BiPoly::x_minus_one().pow(2).divide_exact_x_minus_1(2).unwrap(),
            BiPoly::one()
        );
    }

    #[test]
    fn divide_inexact_reports_stage() {
        let err = BiPoly::x_minus_one().divide_exact_x_minus_1(2).unwrap_err();
        assert_eq!(
            err,
            Error::NotDivisible {
                divisor: "x - 1",
                stage: 2
            }
        );
        let err = BiPoly::from_pairs([(1, 0, 1)])
            .divide_exact_x_minus_1(1)
            .unwrap_err();
        assert_eq!(
            err,
            Error::NotDivisible {
                divisor: "x - 1",
                stage: 1
            }
        );
    }

    #[test]
    fn display_is_readable() {
        let t = BiPoly::from_pairs([(2, 0, 1), (1, 0, 1), (0, 1, 1), (0, 0, -4)]);
        assert_eq!(alloc::format!("{t}"), "-4 + y + x + x^2");
    }
}
