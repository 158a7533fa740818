//! Cross-checks between the recursion backends and the named evaluations:
//! reduced versus full triples, the rational point engine versus symbolic
//! evaluation, coefficient positivity and degree bounds of the totals, the
//! triple cache, and the cross-validated evaluation reports.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tutte_ss::evaluations::{closed_form_complexity, complexity, evaluation_report};
use tutte_ss::exactmath::{bipoly_eval, Rational};
use tutte_ss::recursion::{
    contracted_eval_at_point, contracted_tutte, eval_triple_at_point, hanoi_reduced,
    hanoi_triple, join_identity_residual, sierpinski_reduced, sierpinski_triple, TripleCache,
};
use tutte_ss::Family;

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn random_point(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

#[test]
fn reduced_triples_expand_to_full_triples() {
    for n in 1..=3 {
        let full = sierpinski_triple(n).unwrap();
        assert_eq!(sierpinski_reduced(n).unwrap().expand(), full);
        let full = hanoi_triple(n).unwrap();
        assert_eq!(hanoi_reduced(n).unwrap().expand(), full);
    }
}

#[test]
fn point_engine_matches_symbolic_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for family in [Family::Sierpinski, Family::Hanoi] {
        for n in 1..=3 {
            let (reduced, total) = match family {
                Family::Sierpinski => {
                    (sierpinski_reduced(n).unwrap(), sierpinski_triple(n).unwrap().total())
                }
                Family::Hanoi => (hanoi_reduced(n).unwrap(), hanoi_triple(n).unwrap().total()),
            };
            for _ in 0..20 {
                let x0 = random_point(&mut rng);
                let y0 = random_point(&mut rng);
                let point = eval_triple_at_point(family, n, &x0, &y0).unwrap();
                assert_eq!(point.t2, bipoly_eval(&reduced.t2, &x0, &y0));
                assert_eq!(point.n, bipoly_eval(&reduced.n, &x0, &y0));
                assert_eq!(point.m, bipoly_eval(&reduced.m, &x0, &y0));
                assert_eq!(point.total(), bipoly_eval(&total, &x0, &y0));
            }
        }
    }
}

#[test]
fn contracted_point_engine_matches_symbolic_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for n in 2..=3 {
        let tutte = contracted_tutte(n).unwrap();
        for _ in 0..10 {
            let x0 = random_point(&mut rng);
            let y0 = random_point(&mut rng);
            assert_eq!(
                contracted_eval_at_point(n, &x0, &y0).unwrap(),
                bipoly_eval(&tutte, &x0, &y0)
            );
        }
    }
}

#[test]
fn side_polynomials_vanish_at_x_equals_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let one = rat(1, 1);
    for family in [Family::Sierpinski, Family::Hanoi] {
        for n in 1..=3 {
            let full = match family {
                Family::Sierpinski => sierpinski_triple(n).unwrap(),
                Family::Hanoi => hanoi_triple(n).unwrap(),
            };
            for _ in 0..10 {
                let y0 = random_point(&mut rng);
                assert!(bipoly_eval(&full.t1, &one, &y0).is_zero());
                assert!(bipoly_eval(&full.t0, &one, &y0).is_zero());
            }
        }
    }
}

#[test]
fn totals_have_nonnegative_coefficients_and_tight_degrees() {
    for (family, n) in [
        (Family::Sierpinski, 1),
        (Family::Sierpinski, 2),
        (Family::Sierpinski, 3),
        (Family::Sierpinski, 4),
        (Family::Hanoi, 1),
        (Family::Hanoi, 2),
        (Family::Hanoi, 3),
        (Family::Hanoi, 4),
    ] {
        let pow3 = 3u32.pow(n);
        let (vertices, edges) = match family {
            Family::Sierpinski => ((pow3 + 3) / 2, pow3),
            Family::Hanoi => (pow3, (3 * pow3 - 3) / 2),
        };
        let total = match family {
            Family::Sierpinski => sierpinski_triple(n).unwrap().total(),
            Family::Hanoi => hanoi_triple(n).unwrap().total(),
        };
        for (_, c) in total.terms() {
            assert!(c > &BigInt::zero(), "{} level {n} has a negative coefficient", family.name());
        }
        assert_eq!(total.x_degree(), vertices - 1);
        assert_eq!(total.y_degree(), edges - vertices + 1);
    }
}

#[test]
fn triple_cache_matches_direct_computation() {
    let mut cache = TripleCache::with_default_cap();
    for n in [2, 1, 3] {
        assert_eq!(
            cache.reduced(Family::Sierpinski, n).unwrap(),
            &sierpinski_reduced(n).unwrap()
        );
        assert_eq!(cache.reduced(Family::Hanoi, n).unwrap(), &hanoi_reduced(n).unwrap());
    }
}

#[test]
fn join_identity_residual_is_zero_symbolically() {
    assert!(join_identity_residual(1).unwrap().is_zero());
}

#[test]
fn evaluation_reports_are_internally_consistent() {
    for family in [Family::Sierpinski, Family::Hanoi] {
        for n in 1..=3 {
            let report = evaluation_report(family, n).unwrap();
            assert_eq!(report.complexity.value, complexity(family, n).unwrap());
            assert_eq!(report.complexity.value, closed_form_complexity(family, n).unwrap());
            let triple = eval_triple_at_point(family, n, &rat(2, 1), &rat(2, 1)).unwrap();
            assert_eq!(report.total_subgraphs.value, triple.total().to_integer());
        }
    }
}
