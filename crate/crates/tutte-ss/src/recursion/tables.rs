//! Term tables for the level-(n+1) recursions of both families.
//!
//! Each right-hand side is a linear combination of the ten cubic
//! monomials in the level-n triple, with coefficients drawn from
//! {(y−1), (x−1)^k, 1/(x−1)} times small integers. The tables below
//! transcribe the published equations literally; the division-free
//! variant used by every engine is derived from them mechanically in
//! [`ReducedTables::for_family`], so a transcription slip cannot hide
//! in a second hand-written copy.

use alloc::vec::Vec;

use crate::Family;

/// One additive term of a full-recursion right-hand side:
/// `coeff · (y−1)^ym1 · (x−1)^xm1 · t2^p[0] t1^p[1] t0^p[2]`,
/// where `xm1 = −1` encodes the 1/(x−1) group.
#[derive(Debug, Clone, Copy)]
pub struct FullTerm {
    pub coeff: i64,
    pub ym1: u8,
    pub xm1: i8,
    pub pows: [u8; 3],
}

const fn ft(coeff: i64, ym1: u8, xm1: i8, pows: [u8; 3]) -> FullTerm {
    FullTerm {
        coeff,
        ym1,
        xm1,
        pows,
    }
}

/// The three right-hand sides producing (t2, t1, t0) at level n+1.
pub struct FullTable {
    pub t2: &'static [FullTerm],
    pub t1: &'static [FullTerm],
    pub t0: &'static [FullTerm],
}

pub static SIERPINSKI_FULL: FullTable = FullTable {
    t2: &[
        ft(1, 1, 0, [3, 0, 0]),
        ft(6, 0, -1, [2, 1, 0]),
        ft(3, 0, -1, [1, 2, 0]),
    ],
    t1: &[
        ft(1, 1, 0, [2, 1, 0]),
        ft(1, 0, -1, [2, 0, 1]),
        ft(7, 0, -1, [1, 2, 0]),
        ft(2, 0, -1, [1, 1, 1]),
        ft(4, 0, -1, [0, 3, 0]),
        ft(1, 0, -1, [0, 2, 1]),
    ],
    t0: &[
        ft(3, 1, 0, [1, 2, 0]),
        ft(1, 1, 0, [0, 3, 0]),
        ft(12, 0, -1, [1, 1, 1]),
        ft(3, 0, -1, [1, 0, 2]),
        ft(14, 0, -1, [0, 3, 0]),
        ft(24, 0, -1, [0, 2, 1]),
        ft(9, 0, -1, [0, 1, 2]),
        ft(1, 0, -1, [0, 0, 3]),
    ],
};

pub static HANOI_FULL: FullTable = FullTable {
    t2: &[
        ft(1, 1, 0, [3, 0, 0]),
        ft(6, 0, -1, [2, 1, 0]),
        ft(3, 0, -1, [1, 2, 0]),
        ft(3, 0, 0, [3, 0, 0]),
        ft(6, 0, 0, [2, 1, 0]),
        ft(3, 0, 0, [1, 2, 0]),
    ],
    t1: &[
        ft(1, 1, 0, [2, 1, 0]),
        ft(1, 0, -1, [2, 0, 1]),
        ft(7, 0, -1, [1, 2, 0]),
        ft(2, 0, -1, [1, 1, 1]),
        ft(4, 0, -1, [0, 3, 0]),
        ft(1, 0, -1, [0, 2, 1]),
        ft(7, 0, 0, [2, 1, 0]),
        ft(2, 0, 0, [2, 0, 1]),
        ft(14, 0, 0, [1, 2, 0]),
        ft(4, 0, 0, [1, 1, 1]),
        ft(7, 0, 0, [0, 3, 0]),
        ft(2, 0, 0, [0, 2, 1]),
        ft(1, 0, 1, [3, 0, 0]),
        ft(5, 0, 1, [2, 1, 0]),
        ft(1, 0, 1, [2, 0, 1]),
        ft(7, 0, 1, [1, 2, 0]),
        ft(2, 0, 1, [1, 1, 1]),
        ft(3, 0, 1, [0, 3, 0]),
        ft(1, 0, 1, [0, 2, 1]),
    ],
    t0: &[
        ft(3, 1, 0, [1, 2, 0]),
        ft(1, 1, 0, [0, 3, 0]),
        ft(12, 0, -1, [1, 1, 1]),
        ft(3, 0, -1, [1, 0, 2]),
        ft(14, 0, -1, [0, 3, 0]),
        ft(24, 0, -1, [0, 2, 1]),
        ft(9, 0, -1, [0, 1, 2]),
        ft(1, 0, -1, [0, 0, 3]),
        ft(3, 0, 0, [2, 0, 1]),
        ft(36, 0, 0, [1, 2, 0]),
        ft(42, 0, 0, [1, 1, 1]),
        ft(9, 0, 0, [1, 0, 2]),
        ft(60, 0, 0, [0, 3, 0]),
        ft(75, 0, 0, [0, 2, 1]),
        ft(27, 0, 0, [0, 1, 2]),
        ft(3, 0, 0, [0, 0, 3]),
        ft(12, 0, 1, [2, 1, 0]),
        ft(6, 0, 1, [2, 0, 1]),
        ft(60, 0, 1, [1, 2, 0]),
        ft(48, 0, 1, [1, 1, 1]),
        ft(9, 0, 1, [1, 0, 2]),
        ft(72, 0, 1, [0, 3, 0]),
        ft(78, 0, 1, [0, 2, 1]),
        ft(27, 0, 1, [0, 1, 2]),
        ft(3, 0, 1, [0, 0, 3]),
        ft(1, 0, 2, [3, 0, 0]),
        ft(9, 0, 2, [2, 1, 0]),
        ft(3, 0, 2, [2, 0, 1]),
        ft(27, 0, 2, [1, 2, 0]),
        ft(18, 0, 2, [1, 1, 1]),
        ft(3, 0, 2, [1, 0, 2]),
        ft(27, 0, 2, [0, 3, 0]),
        ft(27, 0, 2, [0, 2, 1]),
        ft(9, 0, 2, [0, 1, 2]),
        ft(1, 0, 2, [0, 0, 3]),
    ],
};

pub fn full_table(family: Family) -> &'static FullTable {
    match family {
        Family::Sierpinski => &SIERPINSKI_FULL,
        Family::Hanoi => &HANOI_FULL,
    }
}

/// One additive term of a division-free right-hand side:
/// `coeff · (y−1)^ym1 · (x−1)^u · t2^p[0] n^p[1] m^p[2]`.
#[derive(Debug, Clone, Copy)]
pub struct ReducedTerm {
    pub coeff: i64,
    pub ym1: u8,
    pub u: u8,
    pub pows: [u8; 3],
}

/// Division-free right-hand sides producing (t2, n, m) at level n+1,
/// where t1 = (x−1)·n and t0 = (x−1)²·m.
pub struct ReducedTables {
    pub t2: Vec<ReducedTerm>,
    pub n: Vec<ReducedTerm>,
    pub m: Vec<ReducedTerm>,
    /// Largest u-exponent appearing in any term. Point engines scale
    /// the x−1 denominator by this much per level.
    pub max_u: u8,
}

impl ReducedTables {
    /// Substituting t1 = (x−1)n and t0 = (x−1)²m into a full term
    /// multiplies it by (x−1)^(p1 + 2·p0); producing component s of
    /// the reduced triple divides by (x−1)^s. The net exponent must be
    /// nonnegative for every term: that is exactly the published
    /// divisibility statement, and it is asserted here rather than
    /// assumed.
    pub fn for_family(family: Family) -> ReducedTables {
        let full = full_table(family);
        let shift = |terms: &[FullTerm], s: i8| -> Vec<ReducedTerm> {
            terms
                .iter()
                .map(|t| {
                    let u = t.xm1 as i16 + t.pows[1] as i16 + 2 * t.pows[2] as i16 - s as i16;
                    assert!(u >= 0, "recursion term fails the divisibility shift");
                    ReducedTerm {
                        coeff: t.coeff,
                        ym1: t.ym1,
                        u: u as u8,
                        pows: t.pows,
                    }
                })
                .collect()
        };
        let t2 = shift(full.t2, 0);
        let n = shift(full.t1, 1);
        let m = shift(full.t0, 2);
        let max_u = t2
            .iter()
            .chain(&n)
            .chain(&m)
            .map(|t| t.u)
            .max()
            .unwrap_or(0);
        ReducedTables { t2, n, m, max_u }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_are_degree_three() {
        for table in [&SIERPINSKI_FULL, &HANOI_FULL] {
            for term in table.t2.iter().chain(table.t1).chain(table.t0) {
                assert_eq!(term.pows.iter().map(|&p| p as u32).sum::<u32>(), 3);
                assert!(term.ym1 <= 1);
                assert!((-1..=2).contains(&term.xm1));
                assert!(term.coeff > 0);
            }
        }
    }

    #[test]
    fn reduction_is_division_free() {
        let s = ReducedTables::for_family(Family::Sierpinski);
        let h = ReducedTables::for_family(Family::Hanoi);
        assert_eq!(s.max_u, 3);
        assert_eq!(h.max_u, 6);
        for tables in [&s, &h] {
            for t in tables.t2.iter().chain(&tables.n).chain(&tables.m) {
                assert!(t.u <= tables.max_u && t.ym1 <= 1);
            }
        }
    }

    #[test]
    fn sierpinski_reduced_t2_matches_hand_expansion() {
        // (y−1)t2³ + 6t2²n + 3(x−1)t2n², written down independently.
        let s = ReducedTables::for_family(Family::Sierpinski);
        let expected = [(1, 1, 0, [3, 0, 0]), (6, 0, 0, [2, 1, 0]), (3, 0, 1, [1, 2, 0])];
        assert_eq!(s.t2.len(), expected.len());
        for (term, &(c, y, u, p)) in s.t2.iter().zip(&expected) {
            assert_eq!((term.coeff, term.ym1, term.u, term.pows), (c, y, u, p));
        }
    }
}
