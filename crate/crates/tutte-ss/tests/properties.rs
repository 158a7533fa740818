//! Randomized algebraic and combinatorial properties: ring axioms for the
//! polynomial types, evaluation homomorphisms, exact division roundtrips,
//! the hyperbola substitution, the generator action on words, and agreement
//! of the brute-force engines on arbitrary small multigraphs.

use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;
use tutte_ss::exactmath::{
    bipoly_eval, divide_exact_x_minus_1, subst_hyperbola, BiPoly, Rational, UniPoly,
};
use tutte_ss::graphs::{connected_components, generator_image, Generator, Multigraph};
use tutte_ss::oracle::{
    count_acyclic_orientations, count_connected_spanning_subgraphs, count_spanning_forests,
    spanning_tree_count, tutte_deletion_contraction_policy, tutte_subset_expansion, EdgePolicy,
};

fn small_bipoly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(((0u32..5, 0u32..5), -20i64..=20), 0..6)
        .prop_map(|terms| BiPoly::from_pairs(terms.into_iter().map(|((x, y), c)| (x, y, c))))
}

fn small_unipoly() -> impl Strategy<Value = UniPoly<BigInt>> {
    prop::collection::vec((-4i64..6, -20i64..=20), 0..6).prop_map(|terms| {
        UniPoly::from_pairs(terms.into_iter().map(|(e, c)| (e, BigInt::from(c))))
    })
}

fn rational_point() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=9).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

/// Connected multigraphs on up to five vertices with at most eight edges,
/// loops and parallel edges included: a random tree skeleton (vertex i
/// attaches to some earlier vertex) plus arbitrary extra edges.
fn small_graph() -> impl Strategy<Value = Multigraph> {
    (1usize..=5)
        .prop_flat_map(|v| {
            (
                prop::collection::vec(0usize..v, v - 1),
                prop::collection::vec((0usize..v, 0usize..v), 0..=4),
            )
                .prop_map(move |(attach, extra)| {
                    let mut edges: Vec<(usize, usize)> = attach
                        .into_iter()
                        .enumerate()
                        .map(|(i, a)| (i + 1, a % (i + 1)))
                        .collect();
                    edges.extend(extra);
                    Multigraph::new(v, edges).unwrap()
                })
        })
        .prop_filter("within edge budget", |g| g.edge_count() <= 8)
}

proptest! {
    #[test]
    fn bipoly_ring_axioms(a in small_bipoly(), b in small_bipoly(), c in small_bipoly()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&BiPoly::one()), a.clone());
    }

    #[test]
    fn bipoly_eval_is_a_ring_homomorphism(
        a in small_bipoly(),
        b in small_bipoly(),
        x0 in rational_point(),
        y0 in rational_point(),
    ) {
        let va = bipoly_eval(&a, &x0, &y0);
        let vb = bipoly_eval(&b, &x0, &y0);
        prop_assert_eq!(bipoly_eval(&a.add(&b), &x0, &y0), &va + &vb);
        prop_assert_eq!(bipoly_eval(&a.mul(&b), &x0, &y0), &va * &vb);
    }

    #[test]
    fn bipoly_division_by_x_minus_one_roundtrips(p in small_bipoly(), k in 0u32..=3) {
        let multiplied = p.mul(&BiPoly::x_minus_one().pow(k));
        prop_assert_eq!(divide_exact_x_minus_1(&multiplied, k).unwrap(), p);
    }

    #[test]
    fn bipoly_pow_matches_repeated_multiplication(p in small_bipoly(), k in 0u32..=4) {
        let mut expected = BiPoly::one();
        for _ in 0..k {
            expected = expected.mul(&p);
        }
        prop_assert_eq!(p.pow(k), expected);
    }

    #[test]
    fn hyperbola_substitution_respects_products(a in small_bipoly(), b in small_bipoly()) {
        let image_of_product = subst_hyperbola(&a.mul(&b));
        let product_of_images = subst_hyperbola(&a).mul(&subst_hyperbola(&b));
        prop_assert!(image_of_product.sub(&product_of_images).is_zero());
    }

    #[test]
    fn unipoly_ring_axioms(a in small_unipoly(), b in small_unipoly(), c in small_unipoly()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn unipoly_eval_matches_rational_evaluation(
        a in small_unipoly(),
        b in small_unipoly(),
        t in (1i64..=9, 1i64..=9).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d))),
    ) {
        let va = a.eval_rational(&t).unwrap();
        let vb = b.eval_rational(&t).unwrap();
        prop_assert_eq!(a.mul(&b).eval_rational(&t).unwrap(), &va * &vb);
        prop_assert_eq!(a.add(&b).eval_rational(&t).unwrap(), &va + &vb);
    }

    #[test]
    fn generator_action_is_an_involution(word in "[012]{1,6}", which in 0usize..3) {
        let g = [Generator::A, Generator::B, Generator::C][which];
        let image = generator_image(&word, g).unwrap();
        prop_assert_eq!(generator_image(&image, g).unwrap(), word);
    }

    #[test]
    fn oracle_engines_agree_on_random_multigraphs(g in small_graph()) {
        let subset = tutte_subset_expansion(&g).unwrap();
        let lowest = tutte_deletion_contraction_policy(&g, EdgePolicy::LowestIndex).unwrap();
        let highest = tutte_deletion_contraction_policy(&g, EdgePolicy::HighestIndex).unwrap();
        prop_assert_eq!(&subset, &lowest);
        prop_assert_eq!(&subset, &highest);
    }

    #[test]
    fn oracle_counts_match_tutte_evaluations(g in small_graph()) {
        let tutte = tutte_subset_expansion(&g).unwrap();
        let at = |x: i64, y: i64| {
            bipoly_eval(&tutte, &Rational::from(BigInt::from(x)), &Rational::from(BigInt::from(y)))
                .to_integer()
        };
        prop_assert_eq!(at(2, 2), BigInt::one() << g.edge_count());
        prop_assert_eq!(at(1, 1), spanning_tree_count(&g).unwrap());
        prop_assert_eq!(at(1, 2), count_connected_spanning_subgraphs(&g).unwrap());
        prop_assert_eq!(at(2, 1), count_spanning_forests(&g).unwrap());
        prop_assert_eq!(at(2, 0), count_acyclic_orientations(&g).unwrap());
    }

    #[test]
    fn one_point_join_multiplies_tutte_polynomials(g in small_graph(), h in small_graph()) {
        // Identify vertex 0 of both graphs; the remaining vertices of h are
        // shifted past the vertices of g.
        let offset = g.vertex_count() - 1;
        let shift = |v: usize| if v == 0 { 0 } else { v + offset };
        let mut edges = g.edges().to_vec();
        edges.extend(h.edges().iter().map(|&(u, v)| (shift(u), shift(v))));
        let joined = Multigraph::new(g.vertex_count() + h.vertex_count() - 1, edges).unwrap();
        let product = tutte_subset_expansion(&g).unwrap().mul(&tutte_subset_expansion(&h).unwrap());
        prop_assert_eq!(tutte_subset_expansion(&joined).unwrap(), product);
    }

    #[test]
    fn union_find_components_match_edge_reachability(g in small_graph()) {
        let all: Vec<usize> = (0..g.edge_count()).collect();
        let partition = connected_components(&g, &all);
        // Breadth-first reachability recomputed from scratch as a reference.
        let mut reached = vec![usize::MAX; g.vertex_count()];
        let mut next = 0;
        for start in 0..g.vertex_count() {
            if reached[start] != usize::MAX {
                continue;
            }
            reached[start] = next;
            let mut frontier = vec![start];
            while let Some(v) = frontier.pop() {
                for &(a, b) in g.edges() {
                    for (from, to) in [(a, b), (b, a)] {
                        if from == v && reached[to] == usize::MAX {
                            reached[to] = next;
                            frontier.push(to);
                        }
                    }
                }
            }
            next += 1;
        }
        // Both sides number components by first appearance in vertex order,
        // so the labelings match exactly, not just up to renaming.
        prop_assert_eq!(partition.component_count, next);
        prop_assert_eq!(partition.component_of, reached);
    }
}
