//! Explicit multigraph construction of the Sierpinski approximants Γ_n,
//! the Hanoi-Towers Schreier graphs Σ_n, and the contracted family I_n,
//! plus the generic multigraph utilities the oracles build on.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest level explicit builders accept. Σ_12 already has 531441
/// vertices; the recursion engines go far beyond this without ever
/// materializing a graph.
pub const MAX_BUILD_LEVEL: u32 = 12;

/// The three involutive generators of the Hanoi Towers group action on
/// ternary words. Each swaps two first letters and recurses into the
/// word under its fixed letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    A,
    B,
    C,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::A, Generator::B, Generator::C];

    pub fn name(self) -> &'static str {
        match self {
            Generator::A => "a",
            Generator::B => "b",
            Generator::C => "c",
        }
    }

    /// The letter whose subtree this generator recurses into: a fixes 2,
    /// b fixes 1, c fixes 0. The fixed letter's power word carries this
    /// generator's loop.
    pub fn fixed_letter(self) -> u8 {
        match self {
            Generator::A => 2,
            Generator::B => 1,
            Generator::C => 0,
        }
    }

    /// The image of a non-fixed letter under the top-level swap.
    fn swap_letter(self, letter: u8) -> u8 {
        let f = self.fixed_letter();
        debug_assert!(letter != f && letter < 3);
        3 - f - letter
    }
}

impl core::fmt::Display for Generator {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// The three outmost vertices of a self-similar graph, in the figure
/// orientation (apex on top).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CornerTriple {
    pub up: usize,
    pub left: usize,
    pub right: usize,
}

/// Undirected multigraph: loops and parallel edges allowed, vertices
/// are 0..vertex_count, edge order is part of the value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    vertex_labels: Option<Vec<String>>,
    edge_labels: Option<Vec<Generator>>,
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        Multigraph::with_labels(vertex_count, edges, None, None)
    }

    pub fn with_labels(
        vertex_count: usize,
        edges: Vec<(usize, usize)>,
        vertex_labels: Option<Vec<String>>,
        edge_labels: Option<Vec<Generator>>,
    ) -> Result<Self> {
        for &(u, v) in &edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidParameter(alloc::format!(
                    "edge ({u}, {v}) exceeds vertex count {vertex_count}"
                )));
            }
        }
        if let Some(labels) = &vertex_labels {
            if labels.len() != vertex_count {
                return Err(Error::InvalidParameter(String::from(
                    "vertex label count mismatch",
                )));
            }
        }
        if let Some(labels) = &edge_labels {
            if labels.len() != edges.len() {
                return Err(Error::InvalidParameter(String::from(
                    "edge label count mismatch",
                )));
            }
        }
        Ok(Multigraph {
            vertex_count,
            edges,
            vertex_labels,
            edge_labels,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_labels(&self) -> Option<&[String]> {
        self.vertex_labels.as_deref()
    }

    pub fn edge_labels(&self) -> Option<&[Generator]> {
        self.edge_labels.as_deref()
    }

    pub fn is_loop(&self, edge: usize) -> bool {
        let (u, v) = self.edges[edge];
        u == v
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|&&(u, v)| u == v).count()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count <= 1 {
            return true;
        }
        let all: Vec<usize> = (0..self.edges.len()).collect();
        connected_components(self, &all).component_count == 1
    }

    /// A copy with all loops removed (labels kept aligned).
    pub fn without_loops(&self) -> Multigraph {
        let mut edges = Vec::new();
        let mut labels = self.edge_labels.as_ref().map(|_| Vec::new());
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if u != v {
                edges.push((u, v));
                if let (Some(out), Some(src)) = (&mut labels, &self.edge_labels) {
                    out.push(src[i]);
                }
            }
        }
        Multigraph {
            vertex_count: self.vertex_count,
            edges,
            vertex_labels: self.vertex_labels.clone(),
            edge_labels: labels,
        }
    }
}

/// Partition of all vertices induced by a subset of edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartition {
    /// Component index per vertex, numbered by first appearance in
    /// vertex id order.
    pub component_of: Vec<usize>,
    pub component_count: usize,
}

/// Union-find partition of the vertices using only the listed edges.
pub fn connected_components(g: &Multigraph, active_edges: &[usize]) -> VertexPartition {
    let mut uf = UnionFind::new(g.vertex_count);
    for &e in active_edges {
        let (u, v) = g.edges[e];
        uf.union(u, v);
    }
    uf.into_partition()
}

/// Plain union-find with path compression and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: alloc::vec![1; n],
            components: n,
        }
    }

    pub fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Returns true when the edge merged two components.
    pub fn union(&mut self, u: usize, v: usize) -> bool {
        let (mut ru, mut rv) = (self.find(u), self.find(v));
        if ru == rv {
            return false;
        }
        if self.size[ru] < self.size[rv] {
            core::mem::swap(&mut ru, &mut rv);
        }
        self.parent[rv] = ru;
        self.size[ru] += self.size[rv];
        self.components -= 1;
        true
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn into_partition(mut self) -> VertexPartition {
        let n = self.parent.len();
        let mut index_of_root = alloc::vec![usize::MAX; n];
        let mut component_of = Vec::with_capacity(n);
        let mut next = 0;
        for v in 0..n {
            let r = self.find(v);
            if index_of_root[r] == usize::MAX {
                index_of_root[r] = next;
                next += 1;
            }
            component_of.push(index_of_root[r]);
        }
        VertexPartition {
            component_of,
            component_count: next,
        }
    }
}

fn check_level(n: u32, min: u32) -> Result<()> {
    if n < min || n > MAX_BUILD_LEVEL {
        return Err(Error::LevelOutOfRange {
            level: n as u64,
            min: min as u64,
            max: MAX_BUILD_LEVEL as u64,
        });
    }
    Ok(())
}

/// Builds the Sierpinski gasket approximant Γ_n with its corner triple:
/// Γ_1 is the triangle, and Γ_(n+1) glues a top, a bottom-left, and a
/// bottom-right copy of Γ_n pairwise at corners (top's left corner to
/// the left copy's apex, top's right corner to the right copy's apex,
/// left copy's right corner to the right copy's left corner).
pub fn build_sierpinski(n: u32) -> Result<(Multigraph, CornerTriple)> {
    check_level(n, 1)?;
    let mut g = Multigraph::new(3, alloc::vec![(0, 1), (0, 2), (1, 2)])?;
    let mut corners = CornerTriple {
        up: 0,
        left: 1,
        right: 2,
    };
    for _ in 1..n {
        let (next_g, next_c) = glue_three_copies(
            &g,
            [
                // (copy, corner) pairs identified, priority order first.
                ((0, corners.left), (1, corners.up)),
                ((0, corners.right), (2, corners.up)),
                ((1, corners.right), (2, corners.left)),
            ],
            [(0, corners.up), (1, corners.left), (2, corners.right)],
        );
        g = next_g;
        corners = next_c;
    }
    Ok((g, corners))
}

/// Glues three copies of g at the given (copy, vertex) pairs. Fresh ids
/// are assigned scanning copies 0, 1, 2 and original vertex ids in
/// ascending order; an identified pair takes the id of its first
/// member. The new corners are the images of the given (copy, vertex)
/// positions in (up, left, right) order.
fn glue_three_copies(
    g: &Multigraph,
    identify: [((usize, usize), (usize, usize)); 3],
    corners: [(usize, usize); 3],
) -> (Multigraph, CornerTriple) {
    let nv = g.vertex_count;
    let mut new_id = alloc::vec![usize::MAX; 3 * nv];
    let mut next = 0;
    for copy in 0..3 {
        for v in 0..nv {
            let slot = copy * nv + v;
            if new_id[slot] != usize::MAX {
                continue;
            }
            new_id[slot] = next;
            for &((c1, v1), (c2, v2)) in &identify {
                if (c1, v1) == (copy, v) {
                    new_id[c2 * nv + v2] = next;
                } else if (c2, v2) == (copy, v) {
                    new_id[c1 * nv + v1] = next;
                }
            }
            next += 1;
        }
    }
    let mut edges = Vec::with_capacity(3 * g.edges.len());
    for copy in 0..3 {
        for &(u, v) in &g.edges {
            edges.push((new_id[copy * nv + u], new_id[copy * nv + v]));
        }
    }
    let graph = Multigraph::new(next, edges).expect("glued ids are in range");
    let c = CornerTriple {
        up: new_id[corners[0].0 * nv + corners[0].1],
        left: new_id[corners[1].0 * nv + corners[1].1],
        right: new_id[corners[2].0 * nv + corners[2].1],
    };
    (graph, c)
}

/// Image of a ternary word under a generator: the generator swaps the
/// first letter it can act on and leaves everything after untouched,
/// recursing through copies of its fixed letter. Words consisting
/// entirely of the fixed letter are fixed (these carry the loops).
pub fn generator_image(word: &str, g: Generator) -> Result<String> {
    if word.is_empty() {
        return Err(Error::InvalidAlphabet(String::from("empty word")));
    }
    let mut digits = word_digits(word)?;
    apply_generator(&mut digits, g);
    Ok(digits_word(&digits))
}

fn word_digits(word: &str) -> Result<Vec<u8>> {
    word.chars()
        .map(|ch| match ch {
            '0' => Ok(0),
            '1' => Ok(1),
            '2' => Ok(2),
            other => Err(Error::InvalidAlphabet(alloc::format!(
                "letter '{other}' outside {{0, 1, 2}}"
            ))),
        })
        .collect()
}

fn digits_word(digits: &[u8]) -> String {
    digits.iter().map(|&d| (b'0' + d) as char).collect()
}

fn apply_generator(digits: &mut [u8], g: Generator) {
    let fixed = g.fixed_letter();
    for d in digits.iter_mut() {
        if *d != fixed {
            *d = g.swap_letter(*d);
            return;
        }
    }
}

/// Builds the Hanoi-Towers Schreier graph Σ_n: vertices are ternary
/// words of length n (ids read in base 3, most significant letter
/// first), with one edge {w, g(w)} per generator and unordered pair,
/// plus, when requested, the three loops at 0^n, 1^n, 2^n labeled c, b,
/// a. Corners are up = 1^n, left = 0^n, right = 2^n in the figure
/// orientation.
pub fn build_hanoi(n: u32, include_loops: bool) -> Result<(Multigraph, CornerTriple)> {
    check_level(n, 1)?;
    let size = 3usize.pow(n);
    let mut labels = Vec::with_capacity(size);
    let mut edges = Vec::new();
    let mut edge_labels = Vec::new();
    let mut digits = alloc::vec![0u8; n as usize];
    for id in 0..size {
        id_digits(id, &mut digits);
        labels.push(digits_word(&digits));
        for g in Generator::ALL {
            let mut image = digits.clone();
            apply_generator(&mut image, g);
            let image_id = digits_id(&image);
            if image_id == id {
                if include_loops {
                    edges.push((id, id));
                    edge_labels.push(g);
                }
            } else if image_id > id {
                edges.push((id, image_id));
                edge_labels.push(g);
            }
        }
    }
    let g = Multigraph::with_labels(size, edges, Some(labels), Some(edge_labels))?;
    let corners = CornerTriple {
        up: word_power_id(1, n),
        left: 0,
        right: word_power_id(2, n),
    };
    Ok((g, corners))
}

fn id_digits(mut id: usize, digits: &mut [u8]) {
    for slot in digits.iter_mut().rev() {
        *slot = (id % 3) as u8;
        id /= 3;
    }
}

fn digits_id(digits: &[u8]) -> usize {
    digits.iter().fold(0, |acc, &d| acc * 3 + d as usize)
}

/// Id of the word letter^n.
fn word_power_id(letter: usize, n: u32) -> usize {
    // letter · (3^n − 1) / 2, the base-3 repunit scaled by the letter.
    letter * (3usize.pow(n) - 1) / 2
}

/// Builds I_n: the loopless Σ_n with its three special edges
/// contracted. The special edges are the a-edge {2^(n−1)0, 2^(n−1)1},
/// the b-edge {1^(n−1)0, 1^(n−1)2}, and the c-edge {0^(n−1)1,
/// 0^(n−1)2}; each contraction keeps the smaller vertex id and its
/// word label, and ids are compacted preserving order. Corners are the
/// images of 1^n (up), 0^n (left), 2^n (right).
pub fn build_contracted(n: u32) -> Result<(Multigraph, CornerTriple)> {
    check_level(n, 2)?;
    let (sigma, sigma_corners) = build_hanoi(n, false)?;
    let special = special_edge_pairs(n);
    let mut uf = UnionFind::new(sigma.vertex_count());
    for &(u, v) in &special {
        uf.union(u, v);
    }
    // Contracted vertex keeps the smaller id in its class; compact ids
    // order-stably over the survivors.
    let mut compact = alloc::vec![usize::MAX; sigma.vertex_count()];
    let mut labels = Vec::new();
    let mut next = 0;
    for (v, slot) in compact.iter_mut().enumerate() {
        if uf.find(v) == v {
            *slot = next;
            labels.push(sigma.vertex_labels().expect("built with labels")[v].clone());
            next += 1;
        }
    }
    let map = |uf: &mut UnionFind, v: usize| compact[uf.find(v)];
    let mut edges = Vec::new();
    let mut edge_labels = Vec::new();
    for (i, &(u, v)) in sigma.edges().iter().enumerate() {
        if special.contains(&(u, v)) {
            continue;
        }
        edges.push((map(&mut uf, u), map(&mut uf, v)));
        edge_labels.push(sigma.edge_labels().expect("built with labels")[i]);
    }
    let corners = CornerTriple {
        up: map(&mut uf, sigma_corners.up),
        left: map(&mut uf, sigma_corners.left),
        right: map(&mut uf, sigma_corners.right),
    };
    let g = Multigraph::with_labels(next, edges, Some(labels), Some(edge_labels))?;
    Ok((g, corners))
}

/// The three special edges of Σ_n as (smaller id, larger id) pairs.
/// Union-find on the smaller-id side makes the root equal min(u, v)
/// because find roots never exceed their class minimum here.
fn special_edge_pairs(n: u32) -> [(usize, usize); 3] {
    let prefix = |letter: usize| word_power_id(letter, n - 1) * 3;
    // a joins 2^(n−1)0 and 2^(n−1)1; b joins 1^(n−1)0 and 1^(n−1)2;
    // c joins 0^(n−1)1 and 0^(n−1)2.
    [
        (prefix(2), prefix(2) + 1),
        (prefix(1), prefix(1) + 2),
        (prefix(0) + 1, prefix(0) + 2),
    ]
}

/// Exhaustive isomorphism check for small graphs by minimizing the
/// sorted edge multiset over all vertex permutations. Intended for the
/// I_2 against Γ_2 check only; refuses more than 8 vertices.
pub fn isomorphic_small(a: &Multigraph, b: &Multigraph) -> Result<bool> {
    if a.vertex_count() > 8 || b.vertex_count() > 8 {
        return Err(Error::TooLarge {
            detail: "isomorphism check supports at most 8 vertices",
        });
    }
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_edge_multiset(a) == canonical_edge_multiset(b))
}

fn canonical_edge_multiset(g: &Multigraph) -> Vec<(usize, usize)> {
    let n = g.vertex_count();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    permute_all(&mut perm, 0, &mut |p| {
        let mut edges: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .map(|&(u, v)| {
                let (pu, pv) = (p[u], p[v]);
                (pu.min(pv), pu.max(pv))
            })
            .collect();
        edges.sort_unstable();
        match &best {
            Some(cur) if *cur <= edges => {}
            _ => best = Some(edges),
        }
    });
    best.unwrap_or_default()
}

fn permute_all(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute_all(perm, k + 1, visit);
        perm.swap(k, i);
    }
}
