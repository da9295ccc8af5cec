//! Graph stability through two-fold automorphisms.
//!
//! A pair of vertex permutations `(alpha, beta)` is a two-fold (TF)
//! automorphism of `G` when `(u, v)` is an arc exactly when
//! `(alpha(u), beta(v))` is. TF-automorphisms of `G` correspond to the
//! automorphisms of the canonical double cover `B(G)` that fix its colour
//! classes, and a graph is unstable exactly when `Aut B(G)` is larger than
//! `Aut(G) x Z2`. This crate computes all of these objects exactly, classifies
//! what TF-maps do to triangles, and builds layered graphs of large diameter
//! that carry non-trivial TF-automorphisms.
//!
//! Permutations compose right-to-left: `p.compose(&q)` applies `q` first.

pub mod aut;
pub mod census;
pub mod construct;
pub mod cover;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod perm;
pub mod tf;
pub mod ztrail;

pub use aut::{automorphism_group, colour_class_stabiliser, is_automorphism, AutGroup, VertexColouring};
pub use cover::DoubleCover;
pub use error::{Error, Result};
pub use graph::{Arc, Diameter, Graph, MixedGraph, VertexLabeling};
pub use perm::Permutation;
pub use tf::{StabilityReport, TfGroup, TfMap};
pub use ztrail::{ClosureClass, TriangleImageConfig, ZTrail};

/// Resource limits shared by the search routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Groups up to this order have their elements listed explicitly.
    pub enum_cap: u128,
    /// Largest vertex count for the exhaustive `Sym(n) x Sym(n)` oracle.
    pub oracle_bound: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enum_cap: 1_000_000,
            oracle_bound: 7,
        }
    }
}
