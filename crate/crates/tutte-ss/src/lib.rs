//! Exact Tutte polynomials of two self-similar graph families: the
//! Sierpinski gasket approximants Γ_n and the Hanoi-Towers Schreier
//! graphs Σ_n.
//!
//! The Tutte polynomial of a graph with m edges has 2^m subgraph terms,
//! so direct expansion dies around twenty edges. Both families here are
//! built from three copies of the previous level glued at corner
//! vertices, and that self-similarity collapses the computation: the
//! pair (graph, two/one/zero corners identified) satisfies a closed
//! cubic recursion on a triple of polynomials. One level costs a fixed
//! number of polynomial multiplications, so exact symbolic results
//! reach level 5 and exact point evaluations reach level 12 and beyond.
//!
//! Module layout:
//!
//! * [`exactmath`]: big integers and rationals, sparse bivariate
//!   polynomials, univariate (and Laurent) polynomials, rational
//!   functions, and a high-precision binary float for logarithmic and
//!   hyperbolic checks.
//! * [`graphs`]: explicit multigraph construction of Γ_n, Σ_n (with or
//!   without the three generator loops), and the contracted family I_n.
//! * [`recursion`]: the triple recursions themselves, in full and
//!   reduced form, with symbolic, univariate, and rational-point
//!   evaluation backends.
//! * [`oracle`]: brute-force reference implementations (subset
//!   expansion, deletion-contraction, matrix-tree, direct counting)
//!   used to validate everything else on small instances.
//! * [`evaluations`]: the named specializations: spanning tree counts
//!   and their closed forms, forests, acyclic orientations, chromatic
//!   and reliability polynomials, Ising partition functions, and
//!   spanning-tree growth constants.
//!
//! The crate is `no_std`-compatible (with `alloc`); the default `std`
//! feature only forwards to the arithmetic dependencies. The optional
//! `parallel` feature lets large polynomial multiplications use a rayon
//! pool while keeping results bit-identical to sequential execution.

#![cfg_attr(not(any(feature = "std", test)), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod error;
pub mod evaluations;
pub mod exactmath;
pub mod graphs;
pub mod oracle;
pub mod recursion;

pub use error::Error;

/// Families covered by the recursions: Sierpinski gasket graphs Γ_n and
/// Hanoi-Towers Schreier graphs Σ_n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Sierpinski,
    Hanoi,
}

impl Family {
    /// Stable lowercase name, used in JSON output and CLI arguments.
    pub fn name(self) -> &'static str {
        match self {
            Family::Sierpinski => "sierpinski",
            Family::Hanoi => "hanoi",
        }
    }
}

impl core::fmt::Display for Family {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// Hard bound on the number of stored terms in symbolic polynomials, to
/// fail cleanly instead of eating all memory. Level 5 totals stay well
/// under this; level 6 does not.
pub const DEFAULT_TERM_CAP: usize = 50_000_000;
