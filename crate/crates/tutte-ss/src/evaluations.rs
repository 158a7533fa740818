//! Named specializations of the family polynomials: spanning-tree
//! counts and their closed forms, connected spanning subgraph and
//! forest counts, acyclic orientations, chromatic and reliability
//! polynomials, Ising partition functions, hyperbola restrictions, and
//! spanning-tree growth constants.
//!
//! Anything that needs only a number runs through the rational-point
//! backend of the recursion; whole-polynomial outputs (chromatic,
//! reliability, Ising) run the same recursion over univariate rings.
//! Where several independent routes to one value exist (recursion,
//! closed form, brute-force oracle), [`evaluation_report`] computes
//! every affordable route and insists the results agree.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{BigFloat, Rational, RationalFn, UniPoly};
use crate::graphs::{build_hanoi, build_sierpinski, Multigraph};
use crate::oracle;
use crate::recursion::{self, PointTriple};
use crate::{Family, DEFAULT_TERM_CAP};

/// Largest level whose graphs the exponential-time subset and coloring
/// oracles still accept (level 3 already has more than 20 edges).
const ORACLE_SUBSET_LEVEL: u32 = 2;

/// Largest level cross-checked against the matrix-tree oracle when
/// assembling a report.
const ORACLE_TREE_LEVEL: u32 = 4;

fn check_level(n: u32) -> Result<()> {
    if !(1..=recursion::MAX_LEVEL).contains(&n) {
        return Err(Error::LevelOutOfRange {
            level: n as u64,
            min: 1,
            max: recursion::MAX_LEVEL as u64,
        });
    }
    Ok(())
}

fn pow3(n: u32) -> i64 {
    3i64.pow(n)
}

fn family_vertex_count(family: Family, n: u32) -> i64 {
    match family {
        Family::Sierpinski => (pow3(n) + 3) / 2,
        Family::Hanoi => pow3(n),
    }
}

fn family_edge_count(family: Family, n: u32) -> i64 {
    match family {
        Family::Sierpinski => pow3(n),
        Family::Hanoi => (3 * pow3(n) - 3) / 2,
    }
}

fn family_rank(family: Family, n: u32) -> i64 {
    family_vertex_count(family, n) - 1
}

fn family_nullity(family: Family, n: u32) -> i64 {
    family_edge_count(family, n) - family_rank(family, n)
}

fn rat(k: i64) -> Rational {
    Rational::from_integer(BigInt::from(k))
}

fn expect_integer(v: &Rational) -> BigInt {
    assert!(
        v.is_integer(),
        "integer-point evaluation produced a fraction"
    );
    v.to_integer()
}

fn prime_power(base: u32, exp: i64) -> BigInt {
    assert!(exp >= 0, "negative closed-form exponent {exp}");
    num_traits::pow(BigInt::from(base), exp as usize)
}

fn half(v: i64) -> i64 {
    assert!(v >= 0 && v % 2 == 0, "exponent {v} is not an even integer");
    v / 2
}

fn quarter(v: i64) -> i64 {
    assert!(v >= 0 && v % 4 == 0, "exponent {v} is not divisible by 4");
    v / 4
}

fn rat_pow(base: &Rational, mut k: u64) -> Rational {
    let mut acc = Rational::one();
    let mut sq = base.clone();
    while k > 0 {
        if k & 1 == 1 {
            acc = &acc * &sq;
        }
        k >>= 1;
        if k > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}

fn cube(v: &BigInt) -> BigInt {
    v * v * v
}

/// Number of spanning trees, by point recursion at (1, 1).
pub fn complexity(family: Family, n: u32) -> Result<BigInt> {
    let one = rat(1);
    let pt = recursion::eval_triple_at_point(family, n, &one, &one)?;
    Ok(expect_integer(&pt.value))
}

/// Number of spanning trees from the closed-form prime factorization.
///
/// The exponents are transcribed formulas; [`closed_form_components`]
/// and the tests cross-check them against the recursion on the first
/// eight levels before they are trusted further out.
pub fn closed_form_complexity(family: Family, n: u32) -> Result<BigInt> {
    check_level(n)?;
    let k = n as i64;
    Ok(match family {
        Family::Sierpinski => {
            prime_power(2, half(pow3(n - 1) - 1))
                * prime_power(3, quarter(pow3(n) + 2 * k - 1))
                * prime_power(5, quarter(pow3(n - 1) - 2 * k + 1))
        }
        Family::Hanoi => {
            prime_power(3, quarter(pow3(n) + 2 * k - 1))
                * prime_power(5, quarter(pow3(n) - 2 * k - 1))
        }
    })
}

/// Closed forms for the reduced components N and M at (1, 1), in the
/// same factorized shape as [`closed_form_complexity`].
pub fn closed_form_components(family: Family, n: u32) -> Result<(BigInt, BigInt)> {
    check_level(n)?;
    let k = n as i64;
    Ok(match family {
        Family::Sierpinski => {
            let twos = prime_power(2, half(pow3(n - 1) - 1));
            let nn = &twos
                * prime_power(3, quarter(pow3(n) - 2 * k - 1))
                * prime_power(5, quarter(pow3(n - 1) + 2 * k - 3));
            let mm = &twos
                * prime_power(3, quarter(pow3(n) - 6 * k + 3))
                * prime_power(5, quarter(pow3(n - 1) + 6 * k - 7));
            (nn, mm)
        }
        Family::Hanoi => {
            let gap = (prime_power(5, k) - prime_power(3, k)) / BigInt::from(2);
            let fives = prime_power(5, quarter(pow3(n) - 2 * k - 1));
            let nn = prime_power(3, quarter(pow3(n) - 2 * k - 1)) * &fives * &gap;
            let mm = prime_power(3, quarter(pow3(n) - 6 * k + 3)) * &fives * &gap * &gap;
            (nn, mm)
        }
    })
}

fn point_count(family: Family, n: u32, x: i64, y: i64) -> Result<BigInt> {
    let pt = recursion::eval_triple_at_point(family, n, &rat(x), &rat(y))?;
    Ok(expect_integer(&pt.value))
}

/// Number of connected spanning subgraphs: the value at (1, 2).
pub fn connected_spanning_subgraphs(family: Family, n: u32) -> Result<BigInt> {
    point_count(family, n, 1, 2)
}

/// Number of spanning forests: the value at (2, 1).
pub fn spanning_forests(family: Family, n: u32) -> Result<BigInt> {
    point_count(family, n, 2, 1)
}

/// Number of acyclic orientations: the value at (2, 0).
///
/// Each level is recomputed from the aggregate recursion on the
/// previous level's components and must match the point recursion
/// exactly before the final value is returned.
pub fn acyclic_orientations(family: Family, n: u32) -> Result<BigInt> {
    check_level(n)?;
    let x = rat(2);
    let y = rat(0);
    let mut prev: Option<PointTriple> = None;
    let mut value = BigInt::zero();
    for k in 1..=n {
        let pt = recursion::eval_triple_at_point(family, k, &x, &y)?;
        let total = expect_integer(&pt.value);
        if let Some(p) = &prev {
            let p_total = expect_integer(&p.value);
            let joined = expect_integer(&(&p.t2 + &p.n));
            let expected = match family {
                Family::Sierpinski => cube(&p_total) - BigInt::from(2) * cube(&joined),
                Family::Hanoi => {
                    BigInt::from(8) * cube(&p_total) - BigInt::from(2) * cube(&joined)
                }
            };
            assert_eq!(
                total, expected,
                "aggregate acyclic-orientation recursion failed at level {k}"
            );
        }
        prev = Some(pt);
        value = total;
    }
    Ok(value)
}

/// Applies the connected-graph chromatic prefactor: the sign
/// (−1)^rank and one factor of λ.
fn chromatic_prefactor(family: Family, n: u32, p: UniPoly<BigInt>) -> UniPoly<BigInt> {
    let signed = if family_rank(family, n) % 2 == 0 {
        p
    } else {
        p.neg()
    };
    signed.shift_exp(1)
}

/// Chromatic polynomial in λ.
///
/// Runs the reduced recursion over polynomials in λ with x = 1 − λ and
/// y = 0, then applies the (−1)^rank · λ prefactor of a connected
/// graph.
pub fn chromatic_polynomial(family: Family, n: u32) -> Result<UniPoly<BigInt>> {
    chromatic_with_cap(family, n, DEFAULT_TERM_CAP)
}

/// [`chromatic_polynomial`] with an explicit term cap.
pub fn chromatic_with_cap(family: Family, n: u32, cap: usize) -> Result<UniPoly<BigInt>> {
    let u: UniPoly<BigInt> = UniPoly::monomial(1, BigInt::from(-1));
    let ym1: UniPoly<BigInt> = UniPoly::constant(BigInt::from(-1));
    let [t2, nn, mm] = recursion::run_reduced(family, n, &u, &ym1, cap)?;
    let p = t2
        .add(&u.mul(&nn).mul_scalar(&BigInt::from(3)))
        .add(&u.mul(&u).mul(&mm));
    Ok(chromatic_prefactor(family, n, p))
}

/// Value of the chromatic polynomial at an integer, by point recursion
/// at (1 − λ, 0).
fn chromatic_at(family: Family, n: u32, lambda: i64) -> Result<BigInt> {
    let pt = recursion::eval_triple_at_point(family, n, &rat(1 - lambda), &rat(0))?;
    let p = expect_integer(&pt.value);
    let signed = if family_rank(family, n) % 2 == 0 { p } else { -p };
    Ok(BigInt::from(lambda) * signed)
}

/// Certifies that the Sierpinski graph at one level admits exactly the
/// 3! = 6 proper 3-colorings, one color class permutation each.
///
/// The three component values at (x, y) = (−2, 0) must come out as the
/// signed triple ((−1)^(n+1)·2, (−1)^n·3, (−1)^(n+1)·9); the return
/// value reports whether the assembled coloring count equals 6.
pub fn unique_three_colorability_check(n: u32) -> Result<bool> {
    let pt = recursion::eval_triple_at_point(Family::Sierpinski, n, &rat(-2), &rat(0))?;
    let s: i64 = if n % 2 == 1 { 1 } else { -1 };
    let p2 = expect_integer(&pt.t2);
    let p1 = BigInt::from(-3) * expect_integer(&pt.n);
    let p0 = BigInt::from(9) * expect_integer(&pt.m);
    assert_eq!(p2, BigInt::from(2 * s), "two-corner value off at level {n}");
    assert_eq!(p1, BigInt::from(-3 * s), "one-corner value off at level {n}");
    assert_eq!(p0, BigInt::from(9 * s), "zero-corner value off at level {n}");
    let chi = chromatic_at(Family::Sierpinski, n, 3)?;
    Ok(chi == BigInt::from(6))
}

/// (1 − p)^k expanded with a running binomial coefficient.
fn one_minus_p_pow(k: i64) -> UniPoly<BigInt> {
    let mut out = UniPoly::zero();
    let mut binom = BigInt::one();
    for i in 0..=k {
        out.add_term(i, if i % 2 == 0 { binom.clone() } else { -&binom });
        if i < k {
            binom = binom * BigInt::from(k - i) / BigInt::from(i + 1);
        }
    }
    out
}

/// All-terminal reliability polynomial in the edge survival
/// probability p.
///
/// At x = 1 the one- and zero-corner components vanish, so the total in
/// y is the two-corner component alone; writing it as Σ a_j y^j, the
/// reliability is p^rank · Σ a_j (1 − p)^(nullity − j).
pub fn reliability_polynomial(family: Family, n: u32) -> Result<UniPoly<BigInt>> {
    reliability_with_cap(family, n, DEFAULT_TERM_CAP)
}

/// [`reliability_polynomial`] with an explicit term cap.
pub fn reliability_with_cap(family: Family, n: u32, cap: usize) -> Result<UniPoly<BigInt>> {
    let u: UniPoly<BigInt> = UniPoly::zero();
    let ym1 = UniPoly::from_pairs([(1, BigInt::one()), (0, BigInt::from(-1))]);
    let [t2, _, _] = recursion::run_reduced(family, n, &u, &ym1, cap)?;
    let nullity = family_nullity(family, n);
    assert!(
        t2.degree().unwrap_or(0) <= nullity,
        "connected-subgraph generating function exceeds the nullity degree bound"
    );
    let mut out = UniPoly::zero();
    for (&j, a) in t2.iter() {
        out = out.add(&one_minus_p_pow(nullity - j).mul_scalar(a));
    }
    Ok(out.shift_exp(family_rank(family, n)))
}

fn unipoly_powers(base: &UniPoly<BigInt>, max: u32) -> Vec<UniPoly<BigInt>> {
    let mut pows = Vec::with_capacity(max as usize + 1);
    pows.push(UniPoly::one());
    for _ in 0..max {
        let next = pows.last().unwrap().mul(base);
        pows.push(next);
    }
    pows
}

/// Ising partition function as an exact Laurent polynomial in
/// t = e^(βJ), matching a direct sum over spin configurations.
///
/// Substitutes x = (t²+1)/(t²−1) and y = t² into the total and clears
/// denominators with the prefactor 2(t²−1)^rank · t^(−|E|). The
/// x-degree of a total never exceeds the rank, so the clearing is exact;
/// if it ever is not, the leftover division failure surfaces as
/// [`Error::NotLaurent`].
pub fn ising_partition(family: Family, n: u32) -> Result<UniPoly<BigInt>> {
    ising_partition_with_cap(family, n, DEFAULT_TERM_CAP)
}

/// [`ising_partition`] with an explicit term cap.
pub fn ising_partition_with_cap(family: Family, n: u32, cap: usize) -> Result<UniPoly<BigInt>> {
    let total = recursion::reduced_with_cap(family, n, cap)?.total();
    let rank = family_rank(family, n);
    let edges = family_edge_count(family, n);
    let d = total.x_degree();
    let mut rows: BTreeMap<u32, UniPoly<BigInt>> = BTreeMap::new();
    for (&(xe, ye), c) in total.terms() {
        rows.entry(xe)
            .or_insert_with(UniPoly::zero)
            .add_term(2 * ye as i64, c.clone());
    }
    let tp1 = UniPoly::from_pairs([(2, BigInt::one()), (0, BigInt::one())]);
    let tm1 = UniPoly::from_pairs([(2, BigInt::one()), (0, BigInt::from(-1))]);
    let tp1_pows = unipoly_powers(&tp1, d);
    let tm1_pows = unipoly_powers(&tm1, d);
    let mut num = UniPoly::zero();
    for (xe, row) in &rows {
        let part = row
            .mul(&tp1_pows[*xe as usize])
            .mul(&tm1_pows[(d - xe) as usize]);
        num = num.add(&part);
    }
    let excess = rank - d as i64;
    let cleared = if excess >= 0 {
        num.mul(&tm1.pow(excess as u32))
    } else {
        num.divide_exact(&tm1.pow((-excess) as u32))
            .map_err(|_| Error::NotLaurent)?
    };
    Ok(cleared.mul_scalar(&BigInt::from(2)).shift_exp(-edges))
}

/// Ising partition value at a rational t, by point recursion. Defined
/// away from the poles t ∈ {0, 1, −1}.
pub fn ising_partition_value(family: Family, n: u32, t: &Rational) -> Result<Rational> {
    let tsq = t * t;
    let den = &tsq - rat(1);
    if t.is_zero() || den.is_zero() {
        return Err(Error::DomainError {
            detail: "Ising evaluation needs t outside {0, 1, -1}",
        });
    }
    let x0 = (&tsq + rat(1)) / &den;
    let pt = recursion::eval_triple_at_point(family, n, &x0, &tsq)?;
    let rank_pow = rat_pow(&den, family_rank(family, n) as u64);
    let t_pow = rat_pow(t, family_edge_count(family, n) as u64);
    Ok(rat(2) * rank_pow * &pt.value / t_pow)
}

/// Value of an Ising partition function: exact when the computation
/// stays inside the rational field, high-precision binary float when a
/// square root enters.
#[derive(Debug, Clone)]
pub enum IsingValue {
    Exact(Rational),
    Approximate(BigFloat),
}

/// One step of the shared quadratic factor map v ↦ v² − 3v + 4.
fn quad_map(v: &Rational) -> Rational {
    v * v - rat(3) * v + rat(4)
}

fn quad_map_float(v: &BigFloat) -> BigFloat {
    v.mul(v).sub(&v.mul_i64(3)).add(&BigFloat::from_i64(4))
}

/// Evaluates the telescoping product form of the Ising partition
/// function at t = e^(βJ) with t > 1.
///
/// The Hanoi product is rational in z = tanh(βJ) = (t²−1)/(t²+1) and is
/// evaluated exactly. The Sierpinski product involves z^(1/2), computed
/// as a high-precision positive square root, so that side returns a
/// 512-bit binary float (about 154 decimal digits).
pub fn ising_product_formula(family: Family, n: u32, t: &Rational) -> Result<IsingValue> {
    check_level(n)?;
    if *t <= rat(1) {
        return Err(Error::DomainError {
            detail: "product formula needs t > 1",
        });
    }
    let tsq = t * t;
    let z = (&tsq - rat(1)) / (&tsq + rat(1));
    let cosh = (&tsq + rat(1)) / (rat(2) * t);
    let levels = pow3(n) as u64;
    match family {
        Family::Hanoi => {
            let mut factor = (&z + rat(1)) / &z;
            let mut product = rat_pow(&z, levels);
            for k in 1..=n {
                product *= rat_pow(&factor, pow3(n - k) as u64);
                factor = quad_map(&factor);
            }
            product *= factor - rat(1);
            let spins = Rational::from_integer(BigInt::one() << levels);
            let cosh_pow = rat_pow(&cosh, family_edge_count(family, n) as u64);
            Ok(IsingValue::Exact(spins * cosh_pow * product))
        }
        Family::Sierpinski => {
            let zf = BigFloat::from_rational(&z);
            let sqrt_z = zf.sqrt()?;
            let one = BigFloat::from_i64(1);
            let factor2 = (&z * &z + rat(1)) / &z;
            let mut factor = zf.add(&one).div(&sqrt_z);
            let mut product = sqrt_z.powi(levels);
            for k in 1..=n {
                product = product.mul(&factor.powi(pow3(n - k) as u64));
                factor = if k == 1 {
                    BigFloat::from_rational(&factor2)
                } else {
                    quad_map_float(&factor)
                };
            }
            product = product.mul(&factor.sub(&one));
            let spins =
                BigFloat::from_bigint(&(BigInt::one() << ((levels + 3) / 2)));
            let cosh_pow = BigFloat::from_rational(&cosh).powi(levels);
            Ok(IsingValue::Approximate(spins.mul(&cosh_pow).mul(&product)))
        }
    }
}

fn rf_poly(pairs: &[(i64, i64)]) -> RationalFn {
    RationalFn::from_poly(UniPoly::from_pairs(
        pairs.iter().map(|&(e, c)| (e, rat(c))),
    ))
}

fn rf_inverse(pairs: &[(i64, i64)]) -> RationalFn {
    RationalFn::new(
        UniPoly::one(),
        UniPoly::from_pairs(pairs.iter().map(|&(e, c)| (e, rat(c)))),
    )
    .expect("nonzero denominator polynomial")
}

/// One level of the recursion satisfied by the hyperbola restrictions
/// (A, B) of a family.
fn hyperbola_step(family: Family, a: &RationalFn, b: &RationalFn) -> (RationalFn, RationalFn) {
    match family {
        Family::Sierpinski => {
            let half_ym1 = rf_poly(&[(1, 1), (0, -1)]).mul_scalar(&Rational::new(
                BigInt::one(),
                BigInt::from(2),
            ));
            let s = a.mul_scalar(&rat(2)).add(b);
            let a_next = half_ym1.mul(a).mul(a).mul(&s);
            let b_next = half_ym1.mul(b).mul(&s).mul(&a.add(b));
            (a_next, b_next)
        }
        Family::Hanoi => {
            let yp1 = rf_poly(&[(1, 1), (0, 1)]);
            let common = yp1.mul(b).add(&rf_poly(&[(1, 2)]).mul(a));
            let a_next = yp1
                .mul(a)
                .mul(a)
                .mul(&common)
                .mul(&rf_inverse(&[(1, 2), (0, -2)]));
            let inner = a
                .mul(b)
                .mul(&rf_poly(&[(2, 1), (1, 4), (0, 3)]))
                .add(&b.mul(b).mul(&rf_poly(&[(2, 1), (1, 2), (0, 1)])))
                .add(&a.mul(a).mul_scalar(&rat(4)));
            let b_next = common
                .mul(&inner)
                .mul(&rf_inverse(&[(2, 2), (1, -4), (0, 2)]));
            (a_next, b_next)
        }
    }
}

/// Restrictions of the corner aggregates A = t2 + t1 and B = 2·t1 + t0
/// to the hyperbola (x − 1)(y − 1) = 2, as exact rational functions in
/// y.
///
/// Every computed level is checked: level 1 against its closed form,
/// and each later level against the one-step recursion applied to the
/// previous pair, so the returned pair carries an induction proof of
/// its own correctness.
pub fn hyperbola_ab(family: Family, n: u32) -> Result<(RationalFn, RationalFn)> {
    hyperbola_ab_with_cap(family, n, DEFAULT_TERM_CAP)
}

/// [`hyperbola_ab`] with an explicit term cap.
pub fn hyperbola_ab_with_cap(
    family: Family,
    n: u32,
    cap: usize,
) -> Result<(RationalFn, RationalFn)> {
    check_level(n)?;
    let mut cache = recursion::TripleCache::new(cap);
    let mut prev: Option<(RationalFn, RationalFn)> = None;
    for k in 1..=n {
        let full = cache.reduced(family, k)?.expand();
        let a = crate::exactmath::subst_hyperbola(&full.t2.add(&full.t1));
        let b = crate::exactmath::subst_hyperbola(&full.t1.mul_i64(2).add(&full.t0));
        if k == 1 {
            let a1 = RationalFn::new(
                UniPoly::from_pairs([(2, rat(1)), (1, rat(1))]),
                UniPoly::from_pairs([(1, rat(1)), (0, rat(-1))]),
            )
            .expect("nonzero denominator");
            let b1 = RationalFn::new(
                UniPoly::monomial(1, rat(4)),
                UniPoly::from_pairs([(2, rat(1)), (1, rat(-2)), (0, rat(1))]),
            )
            .expect("nonzero denominator");
            assert_eq!(a, a1, "level-1 hyperbola restriction A is off");
            assert_eq!(b, b1, "level-1 hyperbola restriction B is off");
        }
        if let Some((pa, pb)) = &prev {
            let (ea, eb) = hyperbola_step(family, pa, pb);
            assert_eq!(a, ea, "hyperbola recursion for A failed at level {k}");
            assert_eq!(b, eb, "hyperbola recursion for B failed at level {k}");
        }
        prev = Some((a, b));
    }
    Ok(prev.expect("at least one level computed"))
}

/// One level's entry in a [`GrowthSeries`].
#[derive(Debug, Clone)]
pub struct GrowthEntry {
    pub level: u32,
    /// log τ / |V| at this level, 512-bit precision.
    pub log_complexity_over_v: BigFloat,
}

/// Per-level values of log τ / |V|, approaching the family's
/// spanning-tree growth constant.
#[derive(Debug, Clone)]
pub struct GrowthSeries {
    pub family: Family,
    pub entries: Vec<GrowthEntry>,
}

/// Computes log τ / |V| for every level up to `n_max` from the exact
/// integer spanning-tree counts.
pub fn growth_constant_series(family: Family, n_max: u32) -> Result<GrowthSeries> {
    check_level(n_max)?;
    let mut entries = Vec::with_capacity(n_max as usize);
    for k in 1..=n_max {
        let tau = complexity(family, k)?;
        let log_tau = BigFloat::from_bigint(&tau)
            .ln()
            .expect("spanning-tree counts are positive");
        let vertices = BigFloat::from_i64(family_vertex_count(family, k));
        entries.push(GrowthEntry {
            level: k,
            log_complexity_over_v: log_tau.div(&vertices),
        });
    }
    Ok(GrowthSeries { family, entries })
}

/// Limit of [`growth_constant_series`], read off the closed-form prime
/// factorization of the spanning-tree counts: each prime's exponent
/// grows linearly in the vertex count, with these coefficients.
pub fn growth_constant_limit(family: Family) -> BigFloat {
    let ln = |k: i64| {
        BigFloat::from_i64(k)
            .ln()
            .expect("logarithm of a positive integer")
    };
    match family {
        Family::Sierpinski => ln(2)
            .div(&BigFloat::from_i64(3))
            .add(&ln(3).div(&BigFloat::from_i64(2)))
            .add(&ln(5).div(&BigFloat::from_i64(6))),
        Family::Hanoi => ln(3).add(&ln(5)).div(&BigFloat::from_i64(4)),
    }
}

/// How a report entry's value was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Recursion,
    ClosedForm,
    Oracle,
}

impl Provenance {
    /// Stable tag used in serialized reports.
    pub fn name(self) -> &'static str {
        match self {
            Provenance::Recursion => "recursion",
            Provenance::ClosedForm => "closedForm",
            Provenance::Oracle => "oracle",
        }
    }
}

/// One counted quantity together with every independent computation
/// that produced it. All sources must agree exactly.
#[derive(Debug, Clone)]
pub struct ReportEntry {
    pub value: BigInt,
    pub provenance: Vec<Provenance>,
}

impl ReportEntry {
    fn new(value: BigInt, source: Provenance) -> Self {
        ReportEntry {
            value,
            provenance: alloc::vec![source],
        }
    }

    fn confirm(&mut self, value: BigInt, source: Provenance) {
        assert_eq!(
            self.value,
            value,
            "report sources disagree ({:?} vs {:?})",
            self.provenance,
            source
        );
        self.provenance.push(source);
    }
}

/// Counting evaluations of one family level, each value tagged with
/// the independent routes that confirmed it.
#[derive(Debug, Clone)]
pub struct EvaluationReport {
    pub family: Family,
    pub level: u32,
    pub complexity: ReportEntry,
    pub connected_spanning: ReportEntry,
    pub forests: ReportEntry,
    pub acyclic_orientations: ReportEntry,
    pub total_subgraphs: ReportEntry,
    pub chromatic_at_3: ReportEntry,
}

fn family_graph(family: Family, n: u32) -> Result<Multigraph> {
    Ok(match family {
        Family::Sierpinski => build_sierpinski(n)?.0,
        Family::Hanoi => build_hanoi(n, false)?.0,
    })
}

/// Assembles the counting report for one family level.
///
/// Every entry is computed by point recursion; the spanning-tree count
/// also from its closed form, the subgraph total also as a shifted
/// power of two, and on small levels everything also by the
/// brute-force oracles. Disagreement between any two routes panics.
pub fn evaluation_report(family: Family, n: u32) -> Result<EvaluationReport> {
    check_level(n)?;
    let mut complexity_entry = ReportEntry::new(complexity(family, n)?, Provenance::Recursion);
    complexity_entry.confirm(closed_form_complexity(family, n)?, Provenance::ClosedForm);
    let mut connected = ReportEntry::new(
        connected_spanning_subgraphs(family, n)?,
        Provenance::Recursion,
    );
    let mut forests = ReportEntry::new(spanning_forests(family, n)?, Provenance::Recursion);
    let mut acyclic = ReportEntry::new(acyclic_orientations(family, n)?, Provenance::Recursion);
    let mut total_subgraphs =
        ReportEntry::new(point_count(family, n, 2, 2)?, Provenance::Recursion);
    total_subgraphs.confirm(
        BigInt::one() << (family_edge_count(family, n) as u64),
        Provenance::ClosedForm,
    );
    let mut chromatic3 = ReportEntry::new(chromatic_at(family, n, 3)?, Provenance::Recursion);
    if n <= ORACLE_TREE_LEVEL {
        let g = family_graph(family, n)?;
        complexity_entry.confirm(oracle::spanning_tree_count(&g)?, Provenance::Oracle);
        if n <= ORACLE_SUBSET_LEVEL {
            connected.confirm(
                oracle::count_connected_spanning_subgraphs(&g)?,
                Provenance::Oracle,
            );
            forests.confirm(oracle::count_spanning_forests(&g)?, Provenance::Oracle);
            acyclic.confirm(oracle::count_acyclic_orientations(&g)?, Provenance::Oracle);
            chromatic3.confirm(oracle::count_proper_colorings(&g, 3)?, Provenance::Oracle);
        }
    }
    Ok(EvaluationReport {
        family,
        level: n,
        complexity: complexity_entry,
        connected_spanning: connected,
        forests,
        acyclic_orientations: acyclic,
        total_subgraphs,
        chromatic_at_3: chromatic3,
    })
}
