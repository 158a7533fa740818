//! Brute-force and classical reference computations on explicit
//! multigraphs. These certify the recursion engines on small instances;
//! every routine here is deliberately simple and exponential-time, with
//! hard input caps.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{BiPoly, UniPoly};
use crate::graphs::{Multigraph, UnionFind};

/// Edge cap for the 2^|E| subset and orientation enumerations.
pub const SUBSET_EDGE_CAP: usize = 20;
/// State cap for coloring enumeration (λ^|V| assignments).
pub const COLORING_CAP: u64 = 100_000_000;
/// State cap for spin enumeration (2^|V| configurations).
pub const SPIN_CAP: u64 = 1 << 24;

fn check_edge_cap(g: &Multigraph) -> Result<()> {
    if g.edge_count() > SUBSET_EDGE_CAP {
        return Err(Error::TooManyEdges {
            limit: SUBSET_EDGE_CAP,
            got: g.edge_count(),
        });
    }
    Ok(())
}

/// Tutte polynomial by the rank-nullity subset expansion: over all edge
/// subsets A, (x−1)^(r(G)−r(A)) (y−1)^(n(A)) with r(A) = |V|−k(A) and
/// n(A) = |A|−|V|+k(A).
pub fn tutte_subset_expansion(g: &Multigraph) -> Result<BiPoly> {
    check_edge_cap(g)?;
    if !g.is_connected() {
        return Err(Error::DisconnectedInput);
    }
    let m = g.edge_count();
    let nv = g.vertex_count();
    // Tally subsets by (rank deficit, nullity); the polynomial assembly
    // then costs one small multiplication per distinct pair.
    let mut tally: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
    for mask in 0u64..(1u64 << m) {
        let mut uf = UnionFind::new(nv);
        let mut size = 0u32;
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if mask >> e & 1 == 1 {
                size += 1;
                uf.union(u, v);
            }
        }
        let k = uf.component_count() as u32;
        let rank_deficit = k - 1;
        let nullity = size + k - nv as u32;
        *tally.entry((rank_deficit, nullity)).or_default() += 1;
    }
    let max_rd = tally.keys().map(|&(rd, _)| rd).max().unwrap_or(0);
    let max_nl = tally.keys().map(|&(_, nl)| nl).max().unwrap_or(0);
    let xm1_pows = pow_table(&BiPoly::x_minus_one(), max_rd);
    let ym1_pows = pow_table(&BiPoly::y_minus_one(), max_nl);
    let mut total = BiPoly::zero();
    for ((rd, nl), count) in tally {
        let term = xm1_pows[rd as usize]
            .mul(&ym1_pows[nl as usize])
            .mul_scalar(&count);
        total = total.add(&term);
    }
    Ok(total)
}

fn pow_table(base: &BiPoly, max: u32) -> Vec<BiPoly> {
    let mut pows = Vec::with_capacity(max as usize + 1);
    pows.push(BiPoly::one());
    for _ in 0..max {
        let next = pows.last().unwrap().mul(base);
        pows.push(next);
    }
    pows
}

/// Edge-selection policy for deletion-contraction. Both must give the
/// same polynomial; the second exists to test that.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgePolicy {
    LowestIndex,
    HighestIndex,
}

/// Tutte polynomial by deletion-contraction: loops contribute factors
/// of y, bridges factors of x (contracted away), and the policy edge e
/// splits into T(G∖e) + T(G/e).
pub fn tutte_deletion_contraction(g: &Multigraph) -> Result<BiPoly> {
    tutte_deletion_contraction_policy(g, EdgePolicy::LowestIndex)
}

pub fn tutte_deletion_contraction_policy(g: &Multigraph, policy: EdgePolicy) -> Result<BiPoly> {
    check_edge_cap(g)?;
    Ok(del_con(g.vertex_count(), g.edges().to_vec(), policy))
}

fn del_con(mut nv: usize, mut edges: Vec<(usize, usize)>, policy: EdgePolicy) -> BiPoly {
    let mut x_power = 0u32;
    let mut y_power = 0u32;
    // Peel loops and bridges greedily until a proper split edge exists.
    loop {
        let before = edges.len();
        let mut i = 0;
        while i < edges.len() {
            let (u, v) = edges[i];
            if u == v {
                y_power += 1;
                edges.remove(i);
            } else {
                i += 1;
            }
        }
        let mut b = 0;
        while b < edges.len() {
            if is_bridge(nv, &edges, b) {
                x_power += 1;
                let (u, v) = edges[b];
                edges.remove(b);
                contract_vertices(&mut nv, &mut edges, u, v);
                // Contraction can create new loops and bridges; restart
                // the peel scan.
                break;
            }
            b += 1;
        }
        if edges.len() == before {
            break;
        }
    }
    let base = BiPoly::monomial(x_power, y_power, 1);
    if edges.is_empty() {
        return base;
    }
    let pick = match policy {
        EdgePolicy::LowestIndex => 0,
        EdgePolicy::HighestIndex => edges.len() - 1,
    };
    let (u, v) = edges[pick];
    edges.remove(pick);
    let del_poly = del_con(nv, edges.clone(), policy);
    contract_vertices(&mut nv, &mut edges, u, v);
    let con_poly = del_con(nv, edges, policy);
    base.mul(&del_poly.add(&con_poly))
}

fn is_bridge(nv: usize, edges: &[(usize, usize)], skip: usize) -> bool {
    let (su, sv) = edges[skip];
    if su == sv {
        return false;
    }
    let mut uf = UnionFind::new(nv);
    for (i, &(u, v)) in edges.iter().enumerate() {
        if i != skip {
            uf.union(u, v);
        }
    }
    uf.find(su) != uf.find(sv)
}

/// Merges v into u (keeping min(u, v)), decrements ids above the
/// removed vertex, and rewrites edges order-stably. The contracted edge
/// itself must already be removed; parallel partners become loops.
fn contract_vertices(nv: &mut usize, edges: &mut [(usize, usize)], u: usize, v: usize) {
    let keep = u.min(v);
    let gone = u.max(v);
    for e in edges.iter_mut() {
        let map = |w: usize| {
            if w == gone {
                keep
            } else if w > gone {
                w - 1
            } else {
                w
            }
        };
        *e = (map(e.0), map(e.1));
    }
    *nv -= 1;
}

/// Spanning tree count via a reduced-Laplacian determinant computed
/// with fraction-free Bareiss elimination over exact integers. Loops
/// are ignored.
pub fn spanning_tree_count(g: &Multigraph) -> Result<BigInt> {
    if !g.is_connected() {
        return Err(Error::DisconnectedInput);
    }
    let nv = g.vertex_count();
    if nv <= 1 {
        return Ok(BigInt::one());
    }
    let k = nv - 1;
    let mut m = alloc::vec![alloc::vec![BigInt::zero(); k]; k];
    for &(u, v) in g.edges() {
        if u == v {
            continue;
        }
        if u > 0 {
            m[u - 1][u - 1] += 1;
        }
        if v > 0 {
            m[v - 1][v - 1] += 1;
        }
        if u > 0 && v > 0 {
            m[u - 1][v - 1] -= 1;
            m[v - 1][u - 1] -= 1;
        }
    }
    Ok(bareiss_determinant(&mut m))
}

fn bareiss_determinant(m: &mut [Vec<BigInt>]) -> BigInt {
    let k = m.len();
    if k == 0 {
        return BigInt::one();
    }
    let mut sign = 1i64;
    let mut prev = BigInt::one();
    for i in 0..k - 1 {
        if m[i][i].is_zero() {
            let Some(swap) = (i + 1..k).find(|&r| !m[r][i].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(i, swap);
            sign = -sign;
        }
        for r in i + 1..k {
            for c in i + 1..k {
                let num = &m[r][c] * &m[i][i] - &m[r][i] * &m[i][c];
                m[r][c] = num / &prev;
            }
            m[r][i] = BigInt::zero();
        }
        prev = m[i][i].clone();
    }
    m[k - 1][k - 1].clone() * sign
}

/// Number of edge subsets whose spanning subgraph is connected.
pub fn count_connected_spanning_subgraphs(g: &Multigraph) -> Result<BigInt> {
    check_edge_cap(g)?;
    let m = g.edge_count();
    let nv = g.vertex_count();
    let mut count = BigInt::zero();
    for mask in 0u64..(1u64 << m) {
        let mut uf = UnionFind::new(nv);
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if mask >> e & 1 == 1 {
                uf.union(u, v);
            }
        }
        if uf.component_count() == 1 {
            count += 1;
        }
    }
    Ok(count)
}

/// Number of edge subsets containing no cycle (loops are cycles).
pub fn count_spanning_forests(g: &Multigraph) -> Result<BigInt> {
    check_edge_cap(g)?;
    let m = g.edge_count();
    let nv = g.vertex_count();
    let mut count = BigInt::zero();
    'subsets: for mask in 0u64..(1u64 << m) {
        let mut uf = UnionFind::new(nv);
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if mask >> e & 1 == 1 && !uf.union(u, v) {
                continue 'subsets;
            }
        }
        count += 1;
    }
    Ok(count)
}

/// Number of acyclic orientations; zero as soon as a loop exists.
pub fn count_acyclic_orientations(g: &Multigraph) -> Result<BigInt> {
    check_edge_cap(g)?;
    if g.loop_count() > 0 {
        return Ok(BigInt::zero());
    }
    let m = g.edge_count();
    let nv = g.vertex_count();
    let mut count = BigInt::zero();
    let mut indegree = alloc::vec![0usize; nv];
    let mut out = alloc::vec![Vec::new(); nv];
    let mut queue = Vec::with_capacity(nv);
    for mask in 0u64..(1u64 << m) {
        indegree.iter_mut().for_each(|d| *d = 0);
        out.iter_mut().for_each(Vec::clear);
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let (from, to) = if mask >> e & 1 == 1 { (u, v) } else { (v, u) };
            out[from].push(to);
            indegree[to] += 1;
        }
        // Kahn's algorithm; acyclic iff every vertex drains.
        queue.clear();
        queue.extend((0..nv).filter(|&v| indegree[v] == 0));
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for &w in &out[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    queue.push(w);
                }
            }
        }
        if seen == nv {
            count += 1;
        }
    }
    Ok(count)
}

/// Number of proper colorings with colors 1..λ by exhaustive
/// assignment.
pub fn count_proper_colorings(g: &Multigraph, lambda: u32) -> Result<BigInt> {
    let nv = g.vertex_count() as u32;
    let states = (lambda as u64).checked_pow(nv).filter(|&s| s <= COLORING_CAP);
    let Some(states) = states else {
        return Err(Error::TooLarge {
            detail: "coloring assignment space exceeds cap",
        });
    };
    if lambda == 0 {
        return Ok(if nv == 0 { BigInt::one() } else { BigInt::zero() });
    }
    let mut colors = alloc::vec![0u32; nv as usize];
    let mut count = BigInt::zero();
    for _ in 0..states {
        if g
            .edges()
            .iter()
            .all(|&(u, v)| colors[u] != colors[v])
        {
            count += 1;
        }
        for slot in colors.iter_mut() {
            *slot += 1;
            if *slot == lambda {
                *slot = 0;
            } else {
                break;
            }
        }
    }
    Ok(count)
}

/// All-terminal reliability: Σ over connected spanning subsets A of
/// p^|A| (1−p)^(|E|−|A|), expanded exactly as a polynomial in p.
pub fn reliability_exact(g: &Multigraph) -> Result<UniPoly<BigInt>> {
    check_edge_cap(g)?;
    let m = g.edge_count();
    let nv = g.vertex_count();
    let mut by_size = alloc::vec![BigInt::zero(); m + 1];
    for mask in 0u64..(1u64 << m) {
        let mut uf = UnionFind::new(nv);
        let mut size = 0usize;
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if mask >> e & 1 == 1 {
                size += 1;
                uf.union(u, v);
            }
        }
        if uf.component_count() == 1 {
            by_size[size] += 1;
        }
    }
    let one_minus_p = UniPoly::from_pairs([(0, BigInt::one()), (1, -BigInt::one())]);
    let mut pows = Vec::with_capacity(m + 1);
    pows.push(UniPoly::one());
    for _ in 0..m {
        let next: UniPoly<BigInt> = pows.last().unwrap().mul(&one_minus_p);
        pows.push(next);
    }
    let mut total = UniPoly::zero();
    for (size, count) in by_size.iter().enumerate() {
        if count.is_zero() {
            continue;
        }
        let term = pows[m - size].mul_scalar(count).shift_exp(size as i64);
        total = total.add(&term);
    }
    Ok(total)
}

/// Ising partition function as a Laurent polynomial in t = e^(βJ):
/// Σ over spin assignments σ ∈ {±1}^|V| of t^(Σ_{uv∈E} σ_u σ_v).
pub fn ising_partition_exact(g: &Multigraph) -> Result<UniPoly<BigInt>> {
    let nv = g.vertex_count();
    if nv as u32 >= 63 || 1u64 << nv > SPIN_CAP {
        return Err(Error::TooLarge {
            detail: "spin configuration space exceeds cap",
        });
    }
    let mut z = UniPoly::zero();
    for mask in 0u64..(1u64 << nv) {
        let mut energy = 0i64;
        for &(u, v) in g.edges() {
            let aligned = (mask >> u & 1) == (mask >> v & 1);
            energy += if aligned { 1 } else { -1 };
        }
        z.add_term(energy, BigInt::one());
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Rational;
    use crate::graphs::{build_contracted, build_hanoi, build_sierpinski};

    fn triangle_tutte() -> BiPoly {
        BiPoly::from_pairs([(2, 0, 1), (1, 0, 1), (0, 1, 1)])
    }

    fn rat(n: i64) -> Rational {
        Rational::from(BigInt::from(n))
    }

    #[test]
    fn subset_expansion_base_cases() {
        let (k3, _) = build_sierpinski(1).unwrap();
        assert_eq!(tutte_subset_expansion(&k3).unwrap(), triangle_tutte());
        let edge = Multigraph::new(2, alloc::vec![(0, 1)]).unwrap();
        assert_eq!(
            tutte_subset_expansion(&edge).unwrap(),
            BiPoly::monomial(1, 0, 1)
        );
        let loop_graph = Multigraph::new(1, alloc::vec![(0, 0)]).unwrap();
        assert_eq!(
            tutte_subset_expansion(&loop_graph).unwrap(),
            BiPoly::monomial(0, 1, 1)
        );
        let disconnected = Multigraph::new(3, alloc::vec![(0, 1)]).unwrap();
        assert!(tutte_subset_expansion(&disconnected).is_err());
    }

    #[test]
    fn deletion_contraction_base_cases() {
        let parallel = Multigraph::new(2, alloc::vec![(0, 1), (0, 1)]).unwrap();
        assert_eq!(
            tutte_deletion_contraction(&parallel).unwrap(),
            BiPoly::from_pairs([(1, 0, 1), (0, 1, 1)])
        );
        let (k3, _) = build_sierpinski(1).unwrap();
        assert_eq!(tutte_deletion_contraction(&k3).unwrap(), triangle_tutte());
        let looped = Multigraph::new(3, alloc::vec![(0, 1), (0, 2), (1, 2), (1, 1)]).unwrap();
        assert_eq!(
            tutte_deletion_contraction(&looped).unwrap(),
            triangle_tutte().mul(&BiPoly::monomial(0, 1, 1))
        );
    }

    #[test]
    fn engines_agree_on_families() {
        for g in [
            build_sierpinski(1).unwrap().0,
            build_sierpinski(2).unwrap().0,
            build_hanoi(1, true).unwrap().0,
            build_hanoi(2, false).unwrap().0,
            build_contracted(2).unwrap().0,
        ] {
            let subset = tutte_subset_expansion(&g).unwrap();
            let delcon = tutte_deletion_contraction(&g).unwrap();
            let delcon_hi =
                tutte_deletion_contraction_policy(&g, EdgePolicy::HighestIndex).unwrap();
            assert_eq!(subset, delcon);
            assert_eq!(subset, delcon_hi);
        }
    }

    #[test]
    fn loops_multiply_by_y() {
        let loopless = build_hanoi(2, false).unwrap().0;
        let looped = build_hanoi(2, true).unwrap().0;
        let t_loopless = tutte_subset_expansion(&loopless).unwrap();
        let t_looped = tutte_subset_expansion(&looped).unwrap();
        assert_eq!(t_looped, t_loopless.mul(&BiPoly::monomial(0, 3, 1)));
    }

    #[test]
    fn matrix_tree_matches_known_counts() {
        let (k3, _) = build_sierpinski(1).unwrap();
        assert_eq!(spanning_tree_count(&k3).unwrap(), BigInt::from(3));
        let (g2, _) = build_sierpinski(2).unwrap();
        assert_eq!(spanning_tree_count(&g2).unwrap(), BigInt::from(54));
        let (s2, _) = build_hanoi(2, false).unwrap();
        assert_eq!(spanning_tree_count(&s2).unwrap(), BigInt::from(135));
        let (s2l, _) = build_hanoi(2, true).unwrap();
        assert_eq!(spanning_tree_count(&s2l).unwrap(), BigInt::from(135));
    }

    #[test]
    fn subgraph_counts_match_known_values() {
        let (k3, _) = build_sierpinski(1).unwrap();
        assert_eq!(
            count_connected_spanning_subgraphs(&k3).unwrap(),
            BigInt::from(4)
        );
        assert_eq!(count_spanning_forests(&k3).unwrap(), BigInt::from(7));
        assert_eq!(count_acyclic_orientations(&k3).unwrap(), BigInt::from(6));
        let (g2, _) = build_sierpinski(2).unwrap();
        assert_eq!(
            count_connected_spanning_subgraphs(&g2).unwrap(),
            BigInt::from(160)
        );
        assert_eq!(count_spanning_forests(&g2).unwrap(), BigInt::from(279));
        assert_eq!(count_acyclic_orientations(&g2).unwrap(), BigInt::from(162));
        let parallel = Multigraph::new(2, alloc::vec![(0, 1), (0, 1)]).unwrap();
        assert_eq!(
            count_acyclic_orientations(&parallel).unwrap(),
            BigInt::from(2)
        );
    }

    #[test]
    fn hanoi_level_2_counts() {
        let (s2, _) = build_hanoi(2, false).unwrap();
        assert_eq!(
            count_connected_spanning_subgraphs(&s2).unwrap(),
            BigInt::from(352)
        );
        assert_eq!(count_spanning_forests(&s2).unwrap(), BigInt::from(2680));
        assert_eq!(count_acyclic_orientations(&s2).unwrap(), BigInt::from(1674));
    }

    #[test]
    fn oracle_counts_match_tutte_evaluations() {
        for g in [
            build_sierpinski(2).unwrap().0,
            build_hanoi(2, false).unwrap().0,
        ] {
            let t = tutte_subset_expansion(&g).unwrap();
            let ev = |x: i64, y: i64| t.eval(&rat(x), &rat(y));
            assert_eq!(
                Rational::from(spanning_tree_count(&g).unwrap()),
                ev(1, 1)
            );
            assert_eq!(
                Rational::from(count_connected_spanning_subgraphs(&g).unwrap()),
                ev(1, 2)
            );
            assert_eq!(
                Rational::from(count_spanning_forests(&g).unwrap()),
                ev(2, 1)
            );
            assert_eq!(
                Rational::from(count_acyclic_orientations(&g).unwrap()),
                ev(2, 0)
            );
            assert_eq!(
                ev(2, 2),
                Rational::from(BigInt::from(2).pow(g.edge_count() as u32))
            );
        }
    }

    #[test]
    fn coloring_counts() {
        let (k3, _) = build_sierpinski(1).unwrap();
        assert_eq!(count_proper_colorings(&k3, 3).unwrap(), BigInt::from(6));
        assert_eq!(count_proper_colorings(&k3, 2).unwrap(), BigInt::zero());
        let (g2, _) = build_sierpinski(2).unwrap();
        assert_eq!(count_proper_colorings(&g2, 3).unwrap(), BigInt::from(6));
        let looped = Multigraph::new(1, alloc::vec![(0, 0)]).unwrap();
        assert_eq!(count_proper_colorings(&looped, 5).unwrap(), BigInt::zero());
    }

    #[test]
    fn reliability_small_cases() {
        let edge = Multigraph::new(2, alloc::vec![(0, 1)]).unwrap();
        assert_eq!(
            reliability_exact(&edge).unwrap(),
            UniPoly::monomial(1, BigInt::one())
        );
        let (k3, _) = build_sierpinski(1).unwrap();
        let expected = UniPoly::from_pairs([(2, BigInt::from(3)), (3, BigInt::from(-2))]);
        assert_eq!(reliability_exact(&k3).unwrap(), expected);
    }

    #[test]
    fn ising_small_cases() {
        let edge = Multigraph::new(2, alloc::vec![(0, 1)]).unwrap();
        assert_eq!(
            ising_partition_exact(&edge).unwrap(),
            UniPoly::from_pairs([(1, BigInt::from(2)), (-1, BigInt::from(2))])
        );
        let isolated = Multigraph::new(1, alloc::vec![]).unwrap();
        assert_eq!(
            ising_partition_exact(&isolated).unwrap(),
            UniPoly::constant(BigInt::from(2))
        );
        let (k3, _) = build_sierpinski(1).unwrap();
        assert_eq!(
            ising_partition_exact(&k3).unwrap(),
            UniPoly::from_pairs([(3, BigInt::from(2)), (-1, BigInt::from(6))])
        );
    }
}
