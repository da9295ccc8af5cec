//! The canonical double cover `B(G)`.
//!
//! Vertex `(v, c)` of the cover is stored at index `v + c * n`, so the colour
//! class `V_0` is exactly the indices below `n`.

use crate::aut::is_automorphism;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCover {
    base: Graph,
    graph: Graph,
}

impl DoubleCover {
    pub fn build(base: &Graph) -> Self {
        let n = base.n();
        let mut graph = Graph::empty(2 * n);
        for (u, v) in base.arcs() {
            graph
                .add_edge(u, v + n)
                .expect("cover indices are in range and distinct");
        }
        DoubleCover {
            base: base.clone(),
            graph,
        }
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn base_n(&self) -> usize {
        self.base.n()
    }

    #[inline]
    pub fn index(&self, v: usize, colour: u8) -> usize {
        v + colour as usize * self.base.n()
    }

    #[inline]
    pub fn in_v0(&self, index: usize) -> bool {
        index < self.base.n()
    }

    /// Inverse of the index encoding: `(base vertex, colour)`.
    pub fn project(&self, index: usize) -> Result<(usize, u8)> {
        let n = self.base.n();
        if index >= 2 * n {
            return Err(Error::VertexOutOfRange {
                vertex: index,
                n: 2 * n,
            });
        }
        Ok((index % n, (index / n) as u8))
    }

    /// The involution `(v, c) -> (v, c + 1)`.
    pub fn swap_map(&self) -> Permutation {
        let n = self.base.n();
        let images: Vec<usize> = (0..2 * n).map(|i| (i + n) % (2 * n)).collect();
        Permutation::from_images(images).expect("swap is a bijection")
    }

    /// Lifts an automorphism `a` of the base to `(v, c) -> (a(v), c)`, or to
    /// `(v, c) -> (a(v), c + 1)` when `swap` is set.
    pub fn lift_automorphism(&self, a: &Permutation, swap: bool) -> Result<Permutation> {
        if !is_automorphism(&self.base, a)? {
            return Err(Error::NotAnAutomorphism(format!(
                "{a} is not an automorphism of the base graph"
            )));
        }
        Ok(self.lift_pair(a, a, swap))
    }

    /// `(v, 0) -> (alpha(v), s)`, `(v, 1) -> (beta(v), 1 - s)` where `s` is
    /// the swap bit. No validation.
    pub(crate) fn lift_pair(&self, alpha: &Permutation, beta: &Permutation, swap: bool) -> Permutation {
        let n = self.base.n();
        let (c0, c1) = if swap { (1u8, 0u8) } else { (0, 1) };
        let mut images = vec![0usize; 2 * n];
        for v in 0..n {
            images[v] = self.index(alpha.apply(v), c0);
            images[v + n] = self.index(beta.apply(v), c1);
        }
        Permutation::from_images(images).expect("lift is a bijection")
    }

    /// Whether `sigma` maps `V_0` onto itself.
    pub fn preserves_classes(&self, sigma: &Permutation) -> bool {
        (0..self.base.n()).all(|v| self.in_v0(sigma.apply(v)))
    }

    /// Whether `sigma` is one of the `2 |Aut G|` expected lifts.
    pub fn is_expected_lift(&self, sigma: &Permutation) -> bool {
        let n = self.base.n();
        if sigma.len() != 2 * n {
            return false;
        }
        if n == 0 {
            return true;
        }
        let swap = !self.in_v0(sigma.apply(0));
        let mut a = vec![0usize; n];
        for v in 0..n {
            let (x, c) = self.project(sigma.apply(v)).expect("in range");
            let (y, d) = self.project(sigma.apply(v + n)).expect("in range");
            if c != swap as u8 || d != 1 - swap as u8 || x != y {
                return false;
            }
            a[v] = x;
        }
        let a = match Permutation::from_images(a) {
            Ok(a) => a,
            Err(_) => return false,
        };
        is_automorphism(&self.base, &a).unwrap_or(false)
    }
}
