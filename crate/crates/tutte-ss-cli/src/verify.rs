//! Verification suite: every cheap independent route to a value is
//! compared against the recursion. Levels clamp to what each oracle can
//! afford, so a large `max_level` only widens the recursion-side
//! identity checks.

use std::panic::{catch_unwind, AssertUnwindSafe};

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use tutte_ss::evaluations;
use tutte_ss::exactmath::Rational;
use tutte_ss::graphs::{build_contracted, build_hanoi, build_sierpinski, Multigraph};
use tutte_ss::{oracle, recursion, Family};

/// Result of one named check.
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

type CheckFn = Box<dyn Fn() -> Result<(), String> + Send + Sync>;

const FAMILIES: [Family; 2] = [Family::Sierpinski, Family::Hanoi];

/// Deepest level the exhaustive subset oracles accept.
const SUBSET_LEVEL: u32 = 2;
/// Deepest level cross-checked against the matrix-tree oracle.
const TREE_LEVEL: u32 = 4;
/// Deepest level for closed-form complexity cross-checks.
const CLOSED_FORM_LEVEL: u32 = 8;
/// Deepest level for the power-of-two identity at (2, 2).
const POWER_LEVEL: u32 = 12;
/// Deepest level for hyperbola restrictions (symbolic totals grow fast).
const HYPERBOLA_LEVEL: u32 = 3;
/// Deepest level for the chromatic corner values and acyclic aggregates.
const IDENTITY_LEVEL: u32 = 6;

fn family_graph(family: Family, n: u32) -> Result<Multigraph, String> {
    let built = match family {
        Family::Sierpinski => build_sierpinski(n),
        Family::Hanoi => build_hanoi(n, false),
    };
    built.map(|(g, _)| g).map_err(|e| e.to_string())
}

fn edge_count(family: Family, n: u32) -> u64 {
    let p = 3u64.pow(n);
    match family {
        Family::Sierpinski => p,
        Family::Hanoi => (3 * p - 3) / 2,
    }
}

fn lib_err(e: tutte_ss::Error) -> String {
    e.to_string()
}

fn expect_eq<T: PartialEq + core::fmt::Debug>(lhs: T, rhs: T, what: &str) -> Result<(), String> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{what}: {lhs:?} != {rhs:?}"))
    }
}

fn expect_true(cond: bool, what: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(String::from(what))
    }
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let numer: i64 = rng.gen_range(-9..=9);
    let denom: i64 = rng.gen_range(1..=9);
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

fn build_checks(max_level: u32, seed: u64, cap: usize) -> Vec<(String, CheckFn)> {
    let mut checks: Vec<(String, CheckFn)> = Vec::new();
    let mut add = |name: String, f: CheckFn| checks.push((name, f));

    for family in FAMILIES {
        for n in 1..=max_level.min(SUBSET_LEVEL) {
            add(
                format!("total-vs-oracles-{family}-{n}"),
                Box::new(move || {
                    let total = recursion::reduced_with_cap(family, n, cap)
                        .map_err(lib_err)?
                        .total();
                    let g = family_graph(family, n)?;
                    let subset = oracle::tutte_subset_expansion(&g).map_err(lib_err)?;
                    let delcon = oracle::tutte_deletion_contraction(&g).map_err(lib_err)?;
                    expect_true(total == subset, "recursion total differs from subset oracle")?;
                    expect_true(subset == delcon, "oracle engines disagree")
                }),
            );
        }
    }

    if max_level >= 2 {
        add(
            String::from("contracted-level-2-vs-oracle"),
            Box::new(move || {
                let poly = recursion::contracted_with_cap(2, cap).map_err(lib_err)?;
                let g = build_contracted(2).map_err(lib_err)?.0;
                let subset = oracle::tutte_subset_expansion(&g).map_err(lib_err)?;
                expect_true(poly == subset, "contracted recursion differs from subset oracle")
            }),
        );
    }

    for n in 1..=max_level.min(2) {
        add(
            format!("join-identity-symbolic-{n}"),
            Box::new(move || {
                let residual = recursion::join_identity_residual(n).map_err(lib_err)?;
                expect_true(residual.is_zero(), "join identity residual is nonzero")
            }),
        );
    }
    if max_level >= 3 {
        add(
            String::from("join-identity-points-3"),
            Box::new(move || {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..50 {
                    let x = small_rational(&mut rng);
                    let y = small_rational(&mut rng);
                    let r = recursion::join_identity_residual_at_point(3, &x, &y)
                        .map_err(lib_err)?;
                    if !num_traits::Zero::is_zero(&r) {
                        return Err(format!("nonzero join residual at ({x}, {y})"));
                    }
                }
                Ok(())
            }),
        );
    }

    for family in FAMILIES {
        for n in 1..=max_level.min(TREE_LEVEL) {
            add(
                format!("complexity-matrix-tree-{family}-{n}"),
                Box::new(move || {
                    let tau = evaluations::complexity(family, n).map_err(lib_err)?;
                    let g = family_graph(family, n)?;
                    let mt = oracle::spanning_tree_count(&g).map_err(lib_err)?;
                    expect_eq(tau, mt, "spanning-tree counts")
                }),
            );
        }
    }
    for n in 2..=max_level.min(TREE_LEVEL) {
        add(
            format!("complexity-matrix-tree-contracted-{n}"),
            Box::new(move || {
                let one = Rational::one();
                let tau = recursion::contracted_eval_at_point(n, &one, &one).map_err(lib_err)?;
                let g = build_contracted(n).map_err(lib_err)?.0;
                let mt = oracle::spanning_tree_count(&g).map_err(lib_err)?;
                expect_eq(tau, Rational::from_integer(mt), "contracted spanning-tree counts")
            }),
        );
    }

    for family in FAMILIES {
        for n in 1..=max_level.min(CLOSED_FORM_LEVEL) {
            add(
                format!("closed-form-complexity-{family}-{n}"),
                Box::new(move || {
                    let one = Rational::one();
                    let pt = recursion::eval_triple_at_point(family, n, &one, &one)
                        .map_err(lib_err)?;
                    let closed = evaluations::closed_form_complexity(family, n).map_err(lib_err)?;
                    let (nn, mm) = evaluations::closed_form_components(family, n).map_err(lib_err)?;
                    expect_eq(pt.value, Rational::from_integer(closed), "complexity closed form")?;
                    expect_eq(pt.n, Rational::from_integer(nn), "N component closed form")?;
                    expect_eq(pt.m, Rational::from_integer(mm), "M component closed form")
                }),
            );
        }
    }

    for family in FAMILIES {
        for n in 1..=max_level.min(SUBSET_LEVEL) {
            add(
                format!("counting-oracles-{family}-{n}"),
                Box::new(move || {
                    let g = family_graph(family, n)?;
                    expect_eq(
                        evaluations::connected_spanning_subgraphs(family, n).map_err(lib_err)?,
                        oracle::count_connected_spanning_subgraphs(&g).map_err(lib_err)?,
                        "connected spanning subgraphs",
                    )?;
                    expect_eq(
                        evaluations::spanning_forests(family, n).map_err(lib_err)?,
                        oracle::count_spanning_forests(&g).map_err(lib_err)?,
                        "spanning forests",
                    )?;
                    expect_eq(
                        evaluations::acyclic_orientations(family, n).map_err(lib_err)?,
                        oracle::count_acyclic_orientations(&g).map_err(lib_err)?,
                        "acyclic orientations",
                    )?;
                    let chrom = evaluations::chromatic_polynomial(family, n).map_err(lib_err)?;
                    expect_eq(
                        chrom.eval(&BigInt::from(3)),
                        oracle::count_proper_colorings(&g, 3).map_err(lib_err)?,
                        "proper 3-colorings",
                    )
                }),
            );
        }
    }

    for family in FAMILIES {
        for n in 1..=max_level.min(POWER_LEVEL) {
            add(
                format!("power-of-two-{family}-{n}"),
                Box::new(move || {
                    let two = Rational::from_integer(BigInt::from(2));
                    let pt = recursion::eval_triple_at_point(family, n, &two, &two)
                        .map_err(lib_err)?;
                    let expected = BigInt::one() << edge_count(family, n);
                    expect_true(
                        pt.value == Rational::from_integer(expected),
                        "subgraph total is not 2^|E|",
                    )
                }),
            );
        }
    }

    for family in FAMILIES {
        let n = max_level.min(HYPERBOLA_LEVEL);
        add(
            format!("hyperbola-recursions-{family}-{n}"),
            Box::new(move || {
                let (a, b) = evaluations::hyperbola_ab_with_cap(family, n, cap).map_err(lib_err)?;
                let y = Rational::from_integer(BigInt::from(3));
                let x = Rational::from_integer(BigInt::from(2));
                let on_curve = a.eval(&y).map_err(lib_err)? + b.eval(&y).map_err(lib_err)?;
                let pt = recursion::eval_triple_at_point(family, n, &x, &y).map_err(lib_err)?;
                expect_eq(on_curve, pt.value, "hyperbola total at y = 3")
            }),
        );
    }

    for n in 1..=max_level.min(IDENTITY_LEVEL) {
        add(
            format!("chromatic-corner-values-{n}"),
            Box::new(move || {
                let unique =
                    evaluations::unique_three_colorability_check(n).map_err(lib_err)?;
                expect_true(unique, "3-coloring count is not 6")
            }),
        );
    }

    for family in FAMILIES {
        let n = max_level.min(IDENTITY_LEVEL);
        add(
            format!("aggregate-acyclic-{family}-{n}"),
            Box::new(move || {
                evaluations::acyclic_orientations(family, n)
                    .map_err(lib_err)
                    .map(|_| ())
            }),
        );
    }

    checks
}

/// Runs the whole suite; check order and outcome bytes are independent
/// of thread count. Library panics inside a check are caught and
/// reported as failures.
pub fn run_suite(max_level: u32, seed: u64, cap: usize) -> Vec<CheckOutcome> {
    let checks = build_checks(max_level, seed, cap);
    let quiet_hook = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    let outcomes: Vec<CheckOutcome> = checks
        .into_par_iter()
        .map(|(name, check)| match catch_unwind(AssertUnwindSafe(&check)) {
            Ok(Ok(())) => CheckOutcome {
                name,
                passed: true,
                detail: String::new(),
            },
            Ok(Err(detail)) => CheckOutcome {
                name,
                passed: false,
                detail,
            },
            Err(payload) => CheckOutcome {
                name,
                passed: false,
                detail: panic_text(payload),
            },
        })
        .collect();
    std::panic::set_hook(quiet_hook);
    outcomes
}

fn panic_text(payload: Box<dyn core::any::Any + Send>) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        format!("panic: {s}")
    } else if let Some(s) = payload.downcast_ref::<String>() {
        format!("panic: {s}")
    } else {
        String::from("panic")
    }
}
