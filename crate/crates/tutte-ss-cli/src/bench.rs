//! Per-level timing of the two computation modes. Numeric columns are
//! deterministic across runs; only the wall-time column varies.

use std::time::Instant;

use tutte_ss::{evaluations, recursion, Family};

/// What a bench run times per level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchMode {
    /// Spanning-tree count by point recursion at (1, 1); size is the
    /// bit length of the count.
    Point,
    /// Reduced symbolic triple; size is the stored term count.
    Symbolic,
}

impl BenchMode {
    pub fn name(self) -> &'static str {
        match self {
            BenchMode::Point => "point",
            BenchMode::Symbolic => "symbolic",
        }
    }
}

/// One CSV row of a bench run.
pub struct BenchRow {
    pub family: Family,
    pub level: u32,
    pub mode: BenchMode,
    pub size: u64,
    pub millis: u128,
}

/// Times every level from 1 to `max_level` in the given mode.
pub fn run_bench(
    family: Family,
    max_level: u32,
    mode: BenchMode,
    cap: usize,
) -> tutte_ss::error::Result<Vec<BenchRow>> {
    let mut rows = Vec::with_capacity(max_level as usize);
    for level in 1..=max_level {
        let start = Instant::now();
        let size = match mode {
            BenchMode::Point => {
                let tau = evaluations::complexity(family, level)?;
                tau.bits()
            }
            BenchMode::Symbolic => {
                let triple = recursion::reduced_with_cap(family, level, cap)?;
                (triple.t2.term_count() + triple.n.term_count() + triple.m.term_count()) as u64
            }
        };
        rows.push(BenchRow {
            family,
            level,
            mode,
            size,
            millis: start.elapsed().as_millis(),
        });
    }
    Ok(rows)
}

/// CSV rendering with a header; timings land in the final column so
/// the deterministic prefix of each row is easy to compare.
pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("family,level,mode,size,millis\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.family.name(),
            row.level,
            row.mode.name(),
            row.size,
            row.millis
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_rows_are_reproducible_apart_from_time() {
        let a = run_bench(Family::Sierpinski, 4, BenchMode::Point, 1000).unwrap();
        let b = run_bench(Family::Sierpinski, 4, BenchMode::Point, 1000).unwrap();
        assert_eq!(a.len(), 4);
        for (ra, rb) in a.iter().zip(&b) {
            assert_eq!((ra.level, ra.size), (rb.level, rb.size));
        }
        // tau(Gamma_1) = 3 needs two bits.
        assert_eq!(a[0].size, 2);
    }

    #[test]
    fn symbolic_rows_report_term_counts() {
        let rows = run_bench(Family::Hanoi, 2, BenchMode::Symbolic, 100_000).unwrap();
        let csv = to_csv(&rows);
        assert!(csv.starts_with("family,level,mode,size,millis\n"));
        // Level 1 reduced triple: y + 2 plus two constants, four terms.
        assert_eq!(rows[0].size, 4);
        assert!(rows[1].size > rows[0].size);
    }
}
