//! Exact arithmetic: big integers and rationals, sparse bivariate
//! polynomials over [`BigInt`], univariate (optionally Laurent)
//! polynomials, univariate rational functions, and a fixed-precision
//! binary big float for logarithmic and hyperbolic checks.

pub mod bigfloat;
pub mod bipoly;
pub mod ratfn;
pub mod unipoly;

pub use bigfloat::BigFloat;
pub use bipoly::BiPoly;
pub use ratfn::RationalFn;
pub use unipoly::{Coeff, UniPoly};

pub use num_bigint::BigInt;

/// Arbitrary-precision rational, always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

use crate::error::Result;

/// Termwise sum of two bivariate polynomials.
pub fn bipoly_add(a: &BiPoly, b: &BiPoly) -> BiPoly {
    a.add(b)
}

/// Exact product of two bivariate polynomials.
pub fn bipoly_mul(a: &BiPoly, b: &BiPoly) -> BiPoly {
    a.mul(b)
}

/// Exact value of `p` at the rational point (x0, y0).
pub fn bipoly_eval(p: &BiPoly, x0: &Rational, y0: &Rational) -> Rational {
    p.eval(x0, y0)
}

/// Exact quotient q with p = (x−1)^k · q, or `NotDivisible` if any of
/// the k division stages leaves a remainder.
pub fn divide_exact_x_minus_1(p: &BiPoly, k: u32) -> Result<BiPoly> {
    p.divide_exact_x_minus_1(k)
}

/// Substitutes y := 0 and x := 1 − λ, yielding a polynomial in λ.
///
/// Applied to a Tutte polynomial this produces the chromatic polynomial
/// up to the usual (−1)^rank · λ^components prefactor, which callers add
/// themselves.
pub fn subst_chromatic(p: &BiPoly) -> UniPoly<BigInt> {
    let mut out = UniPoly::zero();
    for (&(xe, ye), c) in p.terms() {
        if ye != 0 {
            continue;
        }
        // (1 − λ)^xe expanded with a running binomial coefficient.
        let mut binom = BigInt::from(1);
        for j in 0..=xe {
            let signed = if j % 2 == 0 { c * &binom } else { -(c * &binom) };
            out.add_term(j as i64, signed);
            if j < xe {
                binom = binom * BigInt::from((xe - j) as i64) / BigInt::from((j + 1) as i64);
            }
        }
    }
    out
}

/// Substitutes x := (y+1)/(y−1), yielding a rational function in y.
///
/// This restricts a Tutte polynomial to the hyperbola (x−1)(y−1) = 2,
/// the curve where the Ising partition function lives.
pub fn subst_hyperbola(p: &BiPoly) -> RationalFn {
    let d = p.x_degree();
    // p(x,y) = Σ a_i(y) x^i becomes Σ a_i(y) (y+1)^i (y−1)^(d−i) over
    // the common denominator (y−1)^d.
    let yp1: UniPoly<Rational> = two_term_poly(1, 1);
    let ym1: UniPoly<Rational> = two_term_poly(1, -1);
    let yp1_pows = power_table(&yp1, d);
    let ym1_pows = power_table(&ym1, d);
    let mut rows: alloc::collections::BTreeMap<u32, UniPoly<Rational>> =
        alloc::collections::BTreeMap::new();
    for (&(xe, ye), c) in p.terms() {
        rows.entry(xe)
            .or_insert_with(UniPoly::zero)
            .add_term(ye as i64, Rational::from(c.clone()));
    }
    let mut num = UniPoly::zero();
    for (xe, row) in rows {
        let part = row
            .mul(&yp1_pows[xe as usize])
            .mul(&ym1_pows[(d - xe) as usize]);
        num = num.add(&part);
    }
    RationalFn::new(num, ym1_pows[d as usize].clone()).expect("(y-1)^d is nonzero")
}

fn two_term_poly(lead: i64, constant: i64) -> UniPoly<Rational> {
    let mut p = UniPoly::zero();
    p.add_term(1, Rational::from(BigInt::from(lead)));
    p.add_term(0, Rational::from(BigInt::from(constant)));
    p
}

fn power_table(base: &UniPoly<Rational>, max: u32) -> alloc::vec::Vec<UniPoly<Rational>> {
    let mut pows = alloc::vec::Vec::with_capacity(max as usize + 1);
    pows.push(UniPoly::one());
    for _ in 0..max {
        let next = pows.last().unwrap().mul(base);
        pows.push(next);
    }
    pows
}
