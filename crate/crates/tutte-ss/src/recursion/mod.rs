//! Level recursions for the corner-identification triples of both
//! families, with symbolic, univariate, and rational-point backends.
//!
//! The level-n triple splits the spanning-subgraph sum by which of the
//! three outer corners lie in a common component: t2 covers the
//! configurations with two corners joined, t1 (counted three ways by
//! rotational symmetry) one specific pair, t0 none. One recursion step
//! combines three level-n copies, so every right-hand side is a cubic
//! form in the previous triple; the term tables live in [`tables`].
//!
//! All engines run the division-free variant over (t2, n, m) with
//! t1 = (x−1)·n and t0 = (x−1)²·m, instantiated over whichever ring the
//! caller needs: bivariate polynomials for symbolic output, univariate
//! polynomials for chromatic and reliability specializations, integers
//! or rationals for point values.

pub mod tables;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{BiPoly, Coeff, Rational, UniPoly};
use crate::Family;
use tables::{ReducedTables, ReducedTerm};

/// Highest supported recursion level. Beyond this the exact values no
/// longer fit in reasonable memory even in point mode.
pub const MAX_LEVEL: u32 = 16;

fn rat_int(k: i64) -> Rational {
    Rational::from_integer(BigInt::from(k))
}

fn check_level(n: u32, min: u32) -> Result<()> {
    if n < min || n > MAX_LEVEL {
        return Err(Error::LevelOutOfRange {
            level: n as u64,
            min: min as u64,
            max: MAX_LEVEL as u64,
        });
    }
    Ok(())
}

/// Ring operations a recursion backend must provide. `term_count`
/// feeds the resource cap; scalars count as a single term.
pub(crate) trait Ring: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn mul_i64(&self, k: i64) -> Self;
    fn term_count(&self) -> usize {
        1
    }
}

impl Ring for BiPoly {
    fn zero() -> Self {
        BiPoly::zero()
    }
    fn one() -> Self {
        BiPoly::one()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn mul_i64(&self, k: i64) -> Self {
        BiPoly::mul_i64(self, k)
    }
    fn term_count(&self) -> usize {
        BiPoly::term_count(self)
    }
}

impl<C: Coeff> Ring for UniPoly<C> {
    fn zero() -> Self {
        UniPoly::zero()
    }
    fn one() -> Self {
        UniPoly::one()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn mul_i64(&self, k: i64) -> Self {
        self.mul_scalar(&C::from_i64(k))
    }
    fn term_count(&self) -> usize {
        UniPoly::term_count(self)
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn mul_i64(&self, k: i64) -> Self {
        self * BigInt::from(k)
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn mul_i64(&self, k: i64) -> Self {
        self * Rational::from_integer(BigInt::from(k))
    }
}

/// The ten monomials of total degree three in (t2, n, m), in the fixed
/// order the tables index into.
fn mono_index(pows: [u8; 3]) -> usize {
    match pows {
        [3, 0, 0] => 0,
        [2, 1, 0] => 1,
        [2, 0, 1] => 2,
        [1, 2, 0] => 3,
        [1, 1, 1] => 4,
        [1, 0, 2] => 5,
        [0, 3, 0] => 6,
        [0, 2, 1] => 7,
        [0, 1, 2] => 8,
        [0, 0, 3] => 9,
        _ => unreachable!("recursion tables only hold degree-3 monomials"),
    }
}

fn compute_monos<R: Ring>(cur: &[R; 3]) -> [R; 10] {
    let [t2, n, m] = cur;
    let s2 = t2.mul_ref(t2);
    let sn = n.mul_ref(n);
    let sm = m.mul_ref(m);
    let t2n = t2.mul_ref(n);
    [
        s2.mul_ref(t2),
        s2.mul_ref(n),
        s2.mul_ref(m),
        sn.mul_ref(t2),
        t2n.mul_ref(m),
        sm.mul_ref(t2),
        sn.mul_ref(n),
        sn.mul_ref(m),
        sm.mul_ref(n),
        sm.mul_ref(m),
    ]
}

fn ring_pows<R: Ring>(base: &R, max: u8) -> Vec<R> {
    let mut pows = Vec::with_capacity(max as usize + 1);
    pows.push(R::one());
    for _ in 0..max {
        let next = pows.last().unwrap().mul_ref(base);
        pows.push(next);
    }
    pows
}

fn eval_terms<R: Ring>(terms: &[ReducedTerm], monos: &[R; 10], u_pows: &[R], ym1: &R) -> R {
    let mut acc = R::zero();
    for t in terms {
        let mut val = monos[mono_index(t.pows)].mul_i64(t.coeff);
        if t.ym1 == 1 {
            val = val.mul_ref(ym1);
        }
        if t.u > 0 {
            val = val.mul_ref(&u_pows[t.u as usize]);
        }
        acc = acc.add_ref(&val);
    }
    acc
}

fn reduced_step<R: Ring>(tables: &ReducedTables, cur: &[R; 3], u_pows: &[R], ym1: &R) -> [R; 3] {
    let monos = compute_monos(cur);
    [
        eval_terms(&tables.t2, &monos, u_pows, ym1),
        eval_terms(&tables.n, &monos, u_pows, ym1),
        eval_terms(&tables.m, &monos, u_pows, ym1),
    ]
}

/// Level-1 triple in reduced form: t2 = y + 2 = (y−1) + 3, n = m = 1.
fn initial<R: Ring>(ym1: &R) -> [R; 3] {
    [ym1.add_ref(&R::one().mul_i64(3)), R::one(), R::one()]
}

/// Runs the division-free recursion from level 1 to level n over any
/// ring, given the images of x−1 and y−1 in that ring.
pub(crate) fn run_reduced<R: Ring>(
    family: Family,
    n: u32,
    u: &R,
    ym1: &R,
    cap: usize,
) -> Result<[R; 3]> {
    check_level(n, 1)?;
    let tables = ReducedTables::for_family(family);
    let u_pows = ring_pows(u, tables.max_u);
    let mut cur = initial(ym1);
    for _ in 1..n {
        cur = reduced_step(&tables, &cur, &u_pows, ym1);
        let needed: usize = cur.iter().map(Ring::term_count).sum();
        if needed > cap {
            return Err(Error::ResourceCap { cap, needed });
        }
    }
    Ok(cur)
}

/// The symbolic triple (t2, t1, t0) of a family at one level. t1 is
/// stored once; its rotational multiplicity 3 enters only in `total`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TutteTriple {
    pub family: Family,
    pub level: u32,
    pub t2: BiPoly,
    pub t1: BiPoly,
    pub t0: BiPoly,
}

impl TutteTriple {
    /// The graph's Tutte polynomial: t2 + 3·t1 + t0.
    pub fn total(&self) -> BiPoly {
        self.t2.add(&self.t1.mul_i64(3)).add(&self.t0)
    }
}

/// The division-free form of the triple: t1 = (x−1)·n, t0 = (x−1)²·m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedTriple {
    pub family: Family,
    pub level: u32,
    pub t2: BiPoly,
    pub n: BiPoly,
    pub m: BiPoly,
}

impl ReducedTriple {
    /// Reconstitutes the plain triple by multiplying the divisibility
    /// factors back in.
    pub fn expand(&self) -> TutteTriple {
        let u = BiPoly::x_minus_one();
        TutteTriple {
            family: self.family,
            level: self.level,
            t2: self.t2.clone(),
            t1: self.n.mul(&u),
            t0: self.m.mul(&u.mul(&u)),
        }
    }

    /// The graph's Tutte polynomial: t2 + 3(x−1)·n + (x−1)²·m.
    pub fn total(&self) -> BiPoly {
        let u = BiPoly::x_minus_one();
        self.t2
            .add(&self.n.mul(&u).mul_i64(3))
            .add(&self.m.mul(&u.mul(&u)))
    }
}

/// Exact values of the reduced triple at a fixed rational point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointTriple {
    pub family: Family,
    pub level: u32,
    pub x0: Rational,
    pub y0: Rational,
    pub t2: Rational,
    pub n: Rational,
    pub m: Rational,
    /// The combined value t2 + 3(x0−1)·n + (x0−1)²·m, assembled on the
    /// integer side during evaluation: combining the reduced rationals
    /// afterwards would redo huge gcd normalizations.
    pub value: Rational,
}

impl PointTriple {
    /// Value of the Tutte polynomial at (x0, y0).
    pub fn total(&self) -> Rational {
        self.value.clone()
    }
}

/// Reduced triple of the Sierpinski family at level n under the
/// default term cap.
pub fn sierpinski_reduced(n: u32) -> Result<ReducedTriple> {
    reduced_with_cap(Family::Sierpinski, n, crate::DEFAULT_TERM_CAP)
}

/// Reduced triple of the Hanoi family (loopless convention) at level n
/// under the default term cap.
pub fn hanoi_reduced(n: u32) -> Result<ReducedTriple> {
    reduced_with_cap(Family::Hanoi, n, crate::DEFAULT_TERM_CAP)
}

/// Reduced triple with an explicit symbolic term cap.
pub fn reduced_with_cap(family: Family, n: u32, cap: usize) -> Result<ReducedTriple> {
    let [t2, nn, m] = run_reduced(
        family,
        n,
        &BiPoly::x_minus_one(),
        &BiPoly::y_minus_one(),
        cap,
    )?;
    Ok(ReducedTriple {
        family,
        level: n,
        t2,
        n: nn,
        m,
    })
}

/// Symbolic triple of the Sierpinski family at level n.
pub fn sierpinski_triple(n: u32) -> Result<TutteTriple> {
    Ok(sierpinski_reduced(n)?.expand())
}

/// Symbolic triple of the Hanoi family at level n.
pub fn hanoi_triple(n: u32) -> Result<TutteTriple> {
    Ok(hanoi_reduced(n)?.expand())
}

/// Exact reduced-triple values at a rational point (x0, y0). Works at
/// x0 = 1 because the reduced recursion never divides.
///
/// Integer points run over plain big integers. Fractional points run
/// over scaled integer numerators against a tracked power of the
/// common denominator, so no intermediate gcd normalization happens;
/// the three results are reduced once at the end.
pub fn eval_triple_at_point(
    family: Family,
    n: u32,
    x0: &Rational,
    y0: &Rational,
) -> Result<PointTriple> {
    check_level(n, 1)?;
    let u = x0 - rat_int(1);
    let ym1 = y0 - rat_int(1);
    let (t2, nv, mv, value) = if u.is_integer() && ym1.is_integer() {
        let ui = u.to_integer();
        let [a, b, c] =
            run_reduced::<BigInt>(family, n, &ui, &ym1.to_integer(), usize::MAX)?;
        let value = &a + BigInt::from(3) * &ui * &b + &ui * &ui * &c;
        (
            Rational::from_integer(a),
            Rational::from_integer(b),
            Rational::from_integer(c),
            Rational::from_integer(value),
        )
    } else {
        eval_point_scaled(family, n, &u, &ym1)
    };
    Ok(PointTriple {
        family,
        level: n,
        x0: x0.clone(),
        y0: y0.clone(),
        t2,
        n: nv,
        m: mv,
        value,
    })
}

/// Per-term integer scalars for one family's tables at a fixed
/// rational point. The ring images of u and y−1 are constant across
/// levels, so each table term contributes through one precomputed
/// integer that also tops the term's denominators up to the common
/// scale of its level.
struct ScaledTables {
    component_scalars: [Vec<(usize, BigInt)>; 3],
    max_u: u8,
}

fn scaled_tables(
    tables: &ReducedTables,
    a: &BigInt,
    b: &BigInt,
    cu: &BigInt,
    cy: &BigInt,
) -> ScaledTables {
    let max_u = tables.max_u;
    let a_pows = int_pows(a, max_u);
    let b_pows = int_pows(b, 1);
    let cu_pows = int_pows(cu, max_u);
    let cy_pows = int_pows(cy, 1);
    let scalars = |terms: &[ReducedTerm]| -> Vec<(usize, BigInt)> {
        terms
            .iter()
            .map(|t| {
                let s = BigInt::from(t.coeff)
                    * &a_pows[t.u as usize]
                    * &b_pows[t.ym1 as usize]
                    * &cu_pows[(max_u - t.u) as usize]
                    * &cy_pows[(1 - t.ym1) as usize];
                (mono_index(t.pows), s)
            })
            .filter(|(_, s)| !Zero::is_zero(s))
            .collect()
    };
    ScaledTables {
        component_scalars: [
            scalars(&tables.t2),
            scalars(&tables.n),
            scalars(&tables.m),
        ],
        max_u,
    }
}

fn scaled_step(st: &ScaledTables, nums: &[BigInt; 3]) -> [BigInt; 3] {
    let monos = compute_monos(nums);
    let mut next = [BigInt::from(0), BigInt::from(0), BigInt::from(0)];
    for (slot, terms) in next.iter_mut().zip(&st.component_scalars) {
        for (idx, s) in terms {
            *slot += s * &monos[*idx];
        }
    }
    next
}

/// Reduces the scaled numerators over c_u^α·c_y^β into the three
/// component values plus the combined total, assembling the total on
/// the integer side: t2 + 3u·n + u²·m over the scale c_u^{α+2}·c_y^β.
fn finish_scaled(
    nums: [BigInt; 3],
    alpha: u64,
    beta: u64,
    a: &BigInt,
    cu: &BigInt,
    cy: &BigInt,
) -> (Rational, Rational, Rational, Rational) {
    let total_num = &nums[0] * cu * cu + BigInt::from(3) * a * cu * &nums[1] + a * a * &nums[2];
    let fu = factor_trial(cu);
    let fy = factor_trial(cy);
    let scales = [(&fu, alpha), (&fy, beta)];
    let total_scales = [(&fu, alpha + 2), (&fy, beta)];
    let [n0, n1, n2] = nums;
    (
        reduce_over_powers(n0, &scales),
        reduce_over_powers(n1, &scales),
        reduce_over_powers(n2, &scales),
        reduce_over_powers(total_num, &total_scales),
    )
}

/// Scaled-integer point recursion. With u = a/c_u and y−1 = b/c_y,
/// level-k component values are integer numerators over the scale
/// c_u^α·c_y^β, where α and β grow per level exactly as the component
/// degrees in x−1 and y−1 do. Keeping the two denominators separate
/// makes the tracked scale tight, so no intermediate normalization is
/// needed and the final reduction only removes the few factors the
/// point itself happens to cancel.
fn eval_point_scaled(
    family: Family,
    n: u32,
    u: &Rational,
    ym1: &Rational,
) -> (Rational, Rational, Rational, Rational) {
    let tables = ReducedTables::for_family(family);
    let (a, cu) = (u.numer(), u.denom());
    let (b, cy) = (ym1.numer(), ym1.denom());
    let st = scaled_tables(&tables, a, b, cu, cy);
    let mut nums = [b + 3 * cy, cy.clone(), cy.clone()];
    let mut alpha: u64 = 0;
    let mut beta: u64 = 1;
    for _ in 1..n {
        nums = scaled_step(&st, &nums);
        alpha = 3 * alpha + st.max_u as u64;
        beta = 3 * beta + 1;
    }
    finish_scaled(nums, alpha, beta, a, cu, cy)
}

fn int_pows(base: &BigInt, max: u8) -> Vec<BigInt> {
    let mut pows = Vec::with_capacity(max as usize + 1);
    pows.push(BigInt::from(1));
    for _ in 0..max {
        let next = pows.last().unwrap() * base;
        pows.push(next);
    }
    pows
}

struct BaseFactors {
    primes: Vec<(BigInt, u32)>,
    /// True when trial division left a cofactor that may be composite;
    /// a final gcd pass then guarantees full reduction.
    has_large_cofactor: bool,
}

fn factor_trial(c: &BigInt) -> BaseFactors {
    let mut rest = c.abs();
    let mut primes = Vec::new();
    let mut push = |p: u64, rest: &mut BigInt| {
        let pb = BigInt::from(p);
        let mut count = 0u32;
        loop {
            let (q, r) = rest.div_rem(&pb);
            if Zero::is_zero(&r) {
                *rest = q;
                count += 1;
            } else {
                break;
            }
        }
        if count > 0 {
            primes.push((pb, count));
        }
    };
    push(2, &mut rest);
    let mut p = 3u64;
    while p <= 1_000_000 && BigInt::from(p) * BigInt::from(p) <= rest {
        push(p, &mut rest);
        p += 2;
    }
    let has_large_cofactor = if rest > BigInt::from(1) {
        let large = rest > BigInt::from(1_000_000_000_000u64);
        primes.push((rest, 1));
        large
    } else {
        false
    };
    BaseFactors {
        primes,
        has_large_cofactor,
    }
}

/// Reduces num / Π c_i^{d_i} to lowest terms by extracting each prime
/// factor of the bases from the numerator directly; with the tight
/// scale tracking, the valuations to remove are tiny, so this avoids a
/// full gcd on huge operands.
fn reduce_over_powers(mut num: BigInt, scales: &[(&BaseFactors, u64)]) -> Rational {
    if Zero::is_zero(&num) {
        return rat_int(0);
    }
    let mut den = BigInt::from(1);
    let mut any_large_cofactor = false;
    for (factors, d) in scales {
        any_large_cofactor |= factors.has_large_cofactor;
        for (p, e) in &factors.primes {
            let cap = d * *e as u64;
            let mut v = 0u64;
            let chunk = (62 / p.bits()).max(1);
            if chunk > 1 {
                let q = Pow::pow(p, chunk);
                while v + chunk <= cap {
                    let (quot, r) = num.div_rem(&q);
                    if Zero::is_zero(&r) {
                        num = quot;
                        v += chunk;
                    } else {
                        break;
                    }
                }
            }
            while v < cap {
                let (quot, r) = num.div_rem(p);
                if Zero::is_zero(&r) {
                    num = quot;
                    v += 1;
                } else {
                    break;
                }
            }
            den *= Pow::pow(p, cap - v);
        }
    }
    if any_large_cofactor && !den.is_one() {
        let g = num.gcd(&den);
        if !g.is_one() {
            num /= &g;
            den /= &g;
        }
    }
    Rational::new_raw(num, den)
}

/// Tutte polynomial of the contracted family I_n: one step of the
/// Sierpinski-shaped recursion applied to the Hanoi triple of level
/// n−1, then summed.
pub fn contracted_tutte(n: u32) -> Result<BiPoly> {
    contracted_with_cap(n, crate::DEFAULT_TERM_CAP)
}

pub fn contracted_with_cap(n: u32, cap: usize) -> Result<BiPoly> {
    check_level(n, 2)?;
    let u = BiPoly::x_minus_one();
    let ym1 = BiPoly::y_minus_one();
    let base = run_reduced(Family::Hanoi, n - 1, &u, &ym1, cap)?;
    let tables = ReducedTables::for_family(Family::Sierpinski);
    let u_pows = ring_pows(&u, tables.max_u);
    let [t2, nn, m] = reduced_step(&tables, &base, &u_pows, &ym1);
    let needed = t2.term_count() + nn.term_count() + m.term_count();
    if needed > cap {
        return Err(Error::ResourceCap { cap, needed });
    }
    Ok(t2.add(&nn.mul(&u).mul_i64(3)).add(&m.mul(&u.mul(&u))))
}

/// Value of the contracted family's Tutte polynomial at a rational
/// point, by the same one-step construction over integer numerators.
pub fn contracted_eval_at_point(n: u32, x0: &Rational, y0: &Rational) -> Result<Rational> {
    check_level(n, 2)?;
    let u = x0 - rat_int(1);
    let ym1 = y0 - rat_int(1);
    let s_tables = ReducedTables::for_family(Family::Sierpinski);
    if u.is_integer() && ym1.is_integer() {
        let ui = u.to_integer();
        let base =
            run_reduced::<BigInt>(Family::Hanoi, n - 1, &ui, &ym1.to_integer(), usize::MAX)?;
        let u_pows = ring_pows(&ui, s_tables.max_u);
        let [t2, nn, m] = reduced_step(&s_tables, &base, &u_pows, &ym1.to_integer());
        let value = &t2 + BigInt::from(3) * &ui * &nn + &ui * &ui * &m;
        return Ok(Rational::from_integer(value));
    }
    let (a, cu) = (u.numer(), u.denom());
    let (b, cy) = (ym1.numer(), ym1.denom());
    let h_scaled = scaled_tables(&ReducedTables::for_family(Family::Hanoi), a, b, cu, cy);
    let mut nums = [b + 3 * cy, cy.clone(), cy.clone()];
    let mut alpha: u64 = 0;
    let mut beta: u64 = 1;
    for _ in 1..(n - 1) {
        nums = scaled_step(&h_scaled, &nums);
        alpha = 3 * alpha + h_scaled.max_u as u64;
        beta = 3 * beta + 1;
    }
    let s_scaled = scaled_tables(&s_tables, a, b, cu, cy);
    nums = scaled_step(&s_scaled, &nums);
    alpha = 3 * alpha + s_scaled.max_u as u64;
    beta = 3 * beta + 1;
    let (_, _, _, value) = finish_scaled(nums, alpha, beta, a, cu, cy);
    Ok(value)
}

/// The join identity defect H_{n+1} − (x²+x+1)·H_n³ − T(I_{n+1}),
/// which must be identically zero.
pub fn join_identity_residual(n: u32) -> Result<BiPoly> {
    check_level(n, 1)?;
    check_level(n + 1, 2)?;
    let h_next = hanoi_triple(n + 1)?.total();
    let h_cur = hanoi_triple(n)?.total();
    let join_factor = BiPoly::from_pairs([(2, 0, 1), (1, 0, 1), (0, 0, 1)]);
    let cube = h_cur.mul(&h_cur).mul(&h_cur);
    let contracted = contracted_tutte(n + 1)?;
    Ok(h_next.sub(&join_factor.mul(&cube)).sub(&contracted))
}

/// The join identity defect evaluated at one rational point.
pub fn join_identity_residual_at_point(n: u32, x0: &Rational, y0: &Rational) -> Result<Rational> {
    check_level(n, 1)?;
    check_level(n + 1, 2)?;
    let h_next = eval_triple_at_point(Family::Hanoi, n + 1, x0, y0)?.total();
    let h_cur = eval_triple_at_point(Family::Hanoi, n, x0, y0)?.total();
    let join_factor = x0 * x0 + x0 + rat_int(1);
    let contracted = contracted_eval_at_point(n + 1, x0, y0)?;
    Ok(h_next - join_factor * (&h_cur * &h_cur * &h_cur) - contracted)
}

/// Memoizing engine for symbolic reduced triples. Each level is
/// computed once per family and reused; level n+1 consumes the cached
/// level n.
pub struct TripleCache {
    cap: usize,
    store: BTreeMap<(Family, u32), ReducedTriple>,
}

impl TripleCache {
    pub fn new(cap: usize) -> Self {
        TripleCache {
            cap,
            store: BTreeMap::new(),
        }
    }

    pub fn with_default_cap() -> Self {
        Self::new(crate::DEFAULT_TERM_CAP)
    }

    pub fn term_cap(&self) -> usize {
        self.cap
    }

    /// Cached reduced triple, computing and storing any missing levels
    /// below n on the way.
    pub fn reduced(&mut self, family: Family, n: u32) -> Result<&ReducedTriple> {
        check_level(n, 1)?;
        if !self.store.contains_key(&(family, n)) {
            let tables = ReducedTables::for_family(family);
            let u = BiPoly::x_minus_one();
            let ym1 = BiPoly::y_minus_one();
            let u_pows = ring_pows(&u, tables.max_u);
            let base = (1..n)
                .rev()
                .find(|&l| self.store.contains_key(&(family, l)));
            let (mut level, mut cur) = match base {
                Some(l) => {
                    let t = &self.store[&(family, l)];
                    (l, [t.t2.clone(), t.n.clone(), t.m.clone()])
                }
                None => (1, initial(&ym1)),
            };
            loop {
                let needed: usize = cur.iter().map(Ring::term_count).sum();
                if needed > self.cap {
                    return Err(Error::ResourceCap {
                        cap: self.cap,
                        needed,
                    });
                }
                let [t2, nn, m] = cur.clone();
                self.store.entry((family, level)).or_insert(ReducedTriple {
                    family,
                    level,
                    t2,
                    n: nn,
                    m,
                });
                if level == n {
                    break;
                }
                cur = reduced_step(&tables, &cur, &u_pows, &ym1);
                level += 1;
            }
        }
        Ok(&self.store[&(family, n)])
    }
}

#[cfg(test)]
mod tests {
    use super::tables::{full_table, FullTerm};
    use super::*;
    use crate::graphs::{build_contracted, build_hanoi, build_sierpinski};
    use crate::oracle::{spanning_tree_count, tutte_subset_expansion};

    fn rat(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn ratio(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Runs one level of the published full recursion directly over
    /// bivariate polynomials, dividing the 1/(x−1) group exactly. Used
    /// to certify the mechanical reduction shift in the tables module.
    fn full_step(family: Family, cur: &[BiPoly; 3]) -> [BiPoly; 3] {
        let table = full_table(family);
        let u = BiPoly::x_minus_one();
        let ym1 = BiPoly::y_minus_one();
        let monos = compute_monos(cur);
        let apply = |terms: &[FullTerm]| -> BiPoly {
            let mut plain = BiPoly::zero();
            let mut divided = BiPoly::zero();
            for t in terms {
                let mut val = monos[mono_index(t.pows)].mul_i64(t.coeff);
                if t.ym1 == 1 {
                    val = val.mul(&ym1);
                }
                match t.xm1 {
                    -1 => divided = divided.add(&val),
                    0 => plain = plain.add(&val),
                    k => {
                        let mut up = u.clone();
                        for _ in 1..k {
                            up = up.mul(&u);
                        }
                        plain = plain.add(&val.mul(&up));
                    }
                }
            }
            plain.add(&divided.divide_exact_x_minus_1(1).expect("exact division"))
        };
        [apply(table.t2), apply(table.t1), apply(table.t0)]
    }

    #[test]
    fn level_1_totals_are_the_triangle() {
        let expected = BiPoly::from_pairs([(2, 0, 1), (1, 0, 1), (0, 1, 1)]);
        assert_eq!(sierpinski_triple(1).unwrap().total(), expected);
        assert_eq!(hanoi_triple(1).unwrap().total(), expected);
        let reduced = sierpinski_reduced(1).unwrap();
        assert!(reduced.n.is_one());
        assert!(reduced.m.is_one());
    }

    #[test]
    fn level_2_totals_match_the_subset_oracle() {
        let (g2, _) = build_sierpinski(2).unwrap();
        assert_eq!(
            sierpinski_triple(2).unwrap().total(),
            tutte_subset_expansion(&g2).unwrap()
        );
        let (s2, _) = build_hanoi(2, false).unwrap();
        assert_eq!(
            hanoi_triple(2).unwrap().total(),
            tutte_subset_expansion(&s2).unwrap()
        );
    }

    #[test]
    fn reduced_matches_published_full_recursion() {
        for family in [Family::Sierpinski, Family::Hanoi] {
            let ym1 = BiPoly::y_minus_one();
            let u = BiPoly::x_minus_one();
            let [i2, i1, i0] = initial::<BiPoly>(&ym1);
            let mut full = [i2, i1.mul(&u), i0.mul(&u.mul(&u))];
            for level in 2..=4 {
                full = full_step(family, &full);
                let reduced = reduced_with_cap(family, level, usize::MAX)
                    .unwrap()
                    .expand();
                assert_eq!(reduced.t2, full[0], "{family} level {level} t2");
                assert_eq!(reduced.t1, full[1], "{family} level {level} t1");
                assert_eq!(reduced.t0, full[2], "{family} level {level} t0");
            }
        }
    }

    #[test]
    fn expansion_reconstitutes_divisible_components() {
        for family in [Family::Sierpinski, Family::Hanoi] {
            for n in 1..=3 {
                let triple = reduced_with_cap(family, n, usize::MAX).unwrap().expand();
                assert_eq!(
                    triple.t1.divide_exact_x_minus_1(1).unwrap().mul(&BiPoly::x_minus_one()),
                    triple.t1
                );
                assert!(triple.t0.divide_exact_x_minus_1(2).is_ok());
            }
        }
    }

    #[test]
    fn known_point_values_level_2() {
        let p = eval_triple_at_point(Family::Sierpinski, 2, &rat(1), &rat(1)).unwrap();
        assert_eq!(p.total(), rat(54));
        assert_eq!(p.n, rat(30));
        assert_eq!(p.m, rat(50));
        let h = eval_triple_at_point(Family::Hanoi, 2, &rat(1), &rat(1)).unwrap();
        assert_eq!(h.total(), rat(135));
        assert_eq!(h.n, rat(120));
        assert_eq!(h.m, rat(320));
        let acyclic = eval_triple_at_point(Family::Sierpinski, 2, &rat(2), &rat(0)).unwrap();
        assert_eq!(acyclic.t2, rat(22));
        assert_eq!(acyclic.n, rat(23));
        assert_eq!(acyclic.m, rat(71));
        assert_eq!(acyclic.total(), rat(162));
        let h_acyclic = eval_triple_at_point(Family::Hanoi, 2, &rat(2), &rat(0)).unwrap();
        assert_eq!(h_acyclic.t2, rat(76));
        assert_eq!(h_acyclic.n, rat(158));
        assert_eq!(h_acyclic.m, rat(1124));
        assert_eq!(h_acyclic.total(), rat(1674));
    }

    #[test]
    fn powers_of_two_at_two_two() {
        for n in 1..=6u32 {
            let s = eval_triple_at_point(Family::Sierpinski, n, &rat(2), &rat(2)).unwrap();
            let edges = BigInt::from(3).pow(n);
            assert_eq!(
                s.total(),
                Rational::from_integer(BigInt::from(2).pow(u32::try_from(&edges).unwrap()))
            );
            let h = eval_triple_at_point(Family::Hanoi, n, &rat(2), &rat(2)).unwrap();
            let h_edges = (BigInt::from(3).pow(n + 1) - 3) / 2;
            assert_eq!(
                h.total(),
                Rational::from_integer(BigInt::from(2).pow(u32::try_from(&h_edges).unwrap()))
            );
        }
    }

    #[test]
    fn scaled_point_engine_matches_naive_rational_run() {
        let points = [
            (ratio(7, 2), ratio(-3, 5)),
            (ratio(1, 2), ratio(1, 3)),
            (rat(1), ratio(5, 7)),
            (ratio(-4, 3), rat(2)),
        ];
        for family in [Family::Sierpinski, Family::Hanoi] {
            for (x0, y0) in &points {
                let u = x0 - rat(1);
                let ym1 = y0 - rat(1);
                for n in 1..=4 {
                    let fast = eval_triple_at_point(family, n, x0, y0).unwrap();
                    let [t2, nn, m] =
                        run_reduced::<Rational>(family, n, &u, &ym1, usize::MAX).unwrap();
                    assert_eq!(fast.t2, t2, "{family} {n} t2 at ({x0},{y0})");
                    assert_eq!(fast.n, nn);
                    assert_eq!(fast.m, m);
                    assert_eq!(fast.total(), &t2 + rat(3) * &u * &nn + &u * &u * &m);
                }
            }
        }
    }

    #[test]
    fn point_engine_returns_canonical_rationals() {
        let p = eval_triple_at_point(Family::Hanoi, 3, &ratio(7, 2), &ratio(-3, 5)).unwrap();
        for v in [&p.t2, &p.n, &p.m] {
            assert!(v.denom().is_positive());
            assert!(v.numer().gcd(v.denom()).is_one());
        }
    }

    #[test]
    fn symbolic_and_point_agree_on_fractions() {
        for family in [Family::Sierpinski, Family::Hanoi] {
            let triple = reduced_with_cap(family, 3, usize::MAX).unwrap();
            let (x0, y0) = (ratio(3, 4), ratio(-5, 2));
            let point = eval_triple_at_point(family, 3, &x0, &y0).unwrap();
            assert_eq!(triple.t2.eval(&x0, &y0), point.t2);
            assert_eq!(triple.n.eval(&x0, &y0), point.n);
            assert_eq!(triple.m.eval(&x0, &y0), point.m);
            assert_eq!(triple.total().eval(&x0, &y0), point.total());
        }
    }

    #[test]
    fn contracted_level_2_equals_sierpinski() {
        let contracted = contracted_tutte(2).unwrap();
        assert_eq!(contracted, sierpinski_triple(2).unwrap().total());
        let (i2, _) = build_contracted(2).unwrap();
        assert_eq!(contracted, tutte_subset_expansion(&i2).unwrap());
    }

    #[test]
    fn contracted_complexity_matches_matrix_tree() {
        for n in [2u32, 3, 4] {
            let (graph, _) = build_contracted(n).unwrap();
            let tau = spanning_tree_count(&graph).unwrap();
            let value = contracted_eval_at_point(n, &rat(1), &rat(1)).unwrap();
            assert_eq!(value, Rational::from_integer(tau), "level {n}");
        }
        let symbolic = contracted_tutte(3).unwrap();
        let (i3, _) = build_contracted(3).unwrap();
        assert_eq!(
            symbolic.eval(&rat(1), &rat(1)),
            Rational::from_integer(spanning_tree_count(&i3).unwrap())
        );
    }

    #[test]
    fn join_identity_holds() {
        assert!(join_identity_residual(1).unwrap().is_zero());
        assert!(join_identity_residual(2).unwrap().is_zero());
        for (x0, y0) in [(ratio(5, 3), ratio(-1, 2)), (rat(2), rat(2)), (rat(1), rat(4))] {
            let r = join_identity_residual_at_point(3, &x0, &y0).unwrap();
            assert_eq!(r, rat(0), "nonzero residual at ({x0},{y0})");
        }
    }

    #[test]
    fn cache_reuses_lower_levels() {
        let mut cache = TripleCache::with_default_cap();
        let level3 = cache.reduced(Family::Sierpinski, 3).unwrap().clone();
        assert_eq!(level3, sierpinski_reduced(3).unwrap());
        let level2 = cache.reduced(Family::Sierpinski, 2).unwrap().clone();
        assert_eq!(level2, sierpinski_reduced(2).unwrap());
        assert_eq!(cache.store.len(), 3);
        cache.reduced(Family::Hanoi, 2).unwrap();
        assert_eq!(cache.store.len(), 5);
    }

    #[test]
    fn level_bounds_are_enforced() {
        assert!(matches!(
            sierpinski_triple(0),
            Err(Error::LevelOutOfRange { .. })
        ));
        assert!(matches!(
            eval_triple_at_point(Family::Hanoi, MAX_LEVEL + 1, &rat(1), &rat(1)),
            Err(Error::LevelOutOfRange { .. })
        ));
        assert!(matches!(
            contracted_tutte(1),
            Err(Error::LevelOutOfRange { .. })
        ));
    }

    #[test]
    fn term_cap_trips_on_symbolic_growth() {
        let err = reduced_with_cap(Family::Sierpinski, 4, 10).unwrap_err();
        assert!(matches!(err, Error::ResourceCap { cap: 10, .. }));
    }

    #[test]
    fn determinism_across_runs() {
        assert_eq!(
            sierpinski_reduced(3).unwrap(),
            sierpinski_reduced(3).unwrap()
        );
        let a = eval_triple_at_point(Family::Hanoi, 4, &ratio(7, 2), &ratio(-3, 5)).unwrap();
        let b = eval_triple_at_point(Family::Hanoi, 4, &ratio(7, 2), &ratio(-3, 5)).unwrap();
        assert_eq!(a, b);
    }
}
