//! Simple undirected graphs on dense vertex indices, stored as one bit row per
//! vertex, plus the mixed-graph and labeling types used around them.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default upper bound on the number of vertices accepted from external input.
pub const DEFAULT_MAX_VERTICES: usize = 512;

pub type Arc = (usize, usize);

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = words_for(n);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    /// Builds a graph from unordered pairs. Duplicates collapse.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: x,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::Loop(u));
        }
        self.set(u, v);
        self.set(v, u);
        Ok(())
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1u64 << (v % 64);
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edge_list(n, &edges).expect("cycle needs n >= 3")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edge_list(n, &edges).expect("valid path")
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.set(u, v);
                g.set(v, u);
            }
        }
        g
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::empty(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.set(u, v);
                g.set(v, u);
            }
        }
        g
    }

    /// Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5.
    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Self::from_edge_list(10, &edges).expect("valid petersen")
    }

    /// Parses names such as `cycle:8`, `path:3`, `complete:4`, `empty:2`,
    /// `bipartite:2,3` and `petersen`.
    pub fn named(spec: &str) -> Result<Self> {
        let (kind, arg) = match spec.split_once(':') {
            Some((k, a)) => (k.trim(), Some(a.trim())),
            None => (spec.trim(), None),
        };
        let num = |a: Option<&str>| -> Result<usize> {
            a.ok_or_else(|| Error::malformed(format!("'{spec}' needs a size")))?
                .parse::<usize>()
                .map_err(|_| Error::malformed(format!("bad size in '{spec}'")))
        };
        match kind {
            "cycle" | "C" => {
                let n = num(arg)?;
                if n < 3 {
                    return Err(Error::malformed("cycle needs at least 3 vertices"));
                }
                Ok(Self::cycle(n))
            }
            "path" | "P" => Ok(Self::path(num(arg)?)),
            "complete" | "K" => Ok(Self::complete(num(arg)?)),
            "empty" => Ok(Self::empty(num(arg)?)),
            "bipartite" => {
                let a = arg.ok_or_else(|| Error::malformed("bipartite needs a,b"))?;
                let (x, y) = a
                    .split_once(',')
                    .ok_or_else(|| Error::malformed("bipartite needs a,b"))?;
                let x = x.trim().parse().map_err(|_| Error::malformed("bad size"))?;
                let y = y.trim().parse().map_err(|_| Error::malformed("bad size"))?;
                Ok(Self::complete_bipartite(x, y))
            }
            "petersen" => Ok(Self::petersen()),
            _ => Err(Error::malformed(format!("unknown named graph '{spec}'"))),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub(crate) fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (self.bits[u * self.words + v / 64] >> (v % 64)) & 1 == 1
    }

    /// Bit row of `v`: bit `x` is set iff `v ~ x`.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn neighborhood(&self, v: usize) -> Vec<usize> {
        iter_bits(self.row(v)).collect()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| iter_bits(self.row(u)).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Both orientations of every edge.
    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        (0..self.n).flat_map(move |u| iter_bits(self.row(u)).map(move |v| (u, v)))
    }

    /// The graph with vertex `v` renamed to `p(v)`.
    pub fn permuted(&self, p: &Permutation) -> Result<Graph> {
        if p.len() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                actual: p.len(),
            });
        }
        let mut g = Graph::empty(self.n);
        for (u, v) in self.arcs() {
            g.set(p.apply(u), p.apply(v));
        }
        Ok(g)
    }

    /// Checks symmetry and irreflexivity over all pairs.
    pub fn validate(&self) -> bool {
        (0..self.n).all(|u| {
            !self.has_edge(u, u) && (0..self.n).all(|v| self.has_edge(u, v) == self.has_edge(v, u))
        })
    }

    pub fn is_vertex_determining(&self) -> bool {
        let mut rows: Vec<&[u64]> = (0..self.n).map(|v| self.row(v)).collect();
        rows.sort_unstable();
        rows.windows(2).all(|w| w[0] != w[1])
    }

    /// All triangles as sorted triples, in lexicographic order.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for (u, v) in self.edges() {
            let common = self.row(u).iter().zip(self.row(v)).map(|(a, b)| a & b);
            for (wi, word) in common.enumerate() {
                let mut word = word;
                while word != 0 {
                    let w = wi * 64 + word.trailing_zeros() as usize;
                    word &= word - 1;
                    if w > v {
                        out.push([u, v, w]);
                    }
                }
            }
        }
        out
    }

    pub fn is_triangle(&self, tri: [usize; 3]) -> bool {
        let [a, b, c] = tri;
        a < self.n
            && b < self.n
            && c < self.n
            && self.has_edge(a, b)
            && self.has_edge(b, c)
            && self.has_edge(a, c)
    }

    pub fn every_edge_on_triangle(&self) -> bool {
        self.edges().all(|(u, v)| {
            self.row(u)
                .iter()
                .zip(self.row(v))
                .any(|(a, b)| a & b != 0)
        })
    }

    /// Breadth-first distances from `source`; `None` marks unreachable vertices.
    pub fn bfs(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for v in iter_bits(self.row(u)) {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn diameter(&self) -> Diameter {
        let mut best = 0;
        for s in 0..self.n {
            for d in self.bfs(s) {
                match d {
                    Some(d) => best = best.max(d),
                    None => return Diameter::Infinite,
                }
            }
        }
        Diameter::Finite(best)
    }

    /// Component index per vertex, numbered in order of least vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            for (v, d) in self.bfs(s).into_iter().enumerate() {
                if d.is_some() {
                    comp[v] = next;
                }
            }
            next += 1;
        }
        comp
    }

    pub fn component_count(&self) -> usize {
        self.components().into_iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// A proper 2-colouring if one exists. Each component's least vertex gets
    /// colour 0.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut colour = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for v in iter_bits(self.row(u)) {
                    if colour[v] == u8::MAX {
                        colour[v] = 1 - colour[u];
                        queue.push_back(v);
                    } else if colour[v] == colour[u] {
                        return None;
                    }
                }
            }
        }
        Some(colour)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self.edges().collect();
        write!(f, "Graph(n={}, edges={:?})", self.n, edges)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Diameter {
    Finite(usize),
    Infinite,
}

impl Diameter {
    pub fn finite(self) -> Option<usize> {
        match self {
            Diameter::Finite(d) => Some(d),
            Diameter::Infinite => None,
        }
    }
}

pub(crate) fn iter_bits(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(wi, &word)| {
        let mut word = word;
        std::iter::from_fn(move || {
            if word == 0 {
                None
            } else {
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(wi * 64 + b)
            }
        })
    })
}

/// A set of arcs without loops or repeats. Used for images of subgraphs under
/// pairs of maps, which need not be self-paired.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MixedGraph {
    n: usize,
    arcs: BTreeSet<Arc>,
}

impl MixedGraph {
    pub fn new(n: usize) -> Self {
        MixedGraph {
            n,
            arcs: BTreeSet::new(),
        }
    }

    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = Arc>) -> Result<Self> {
        let mut m = MixedGraph::new(n);
        for a in arcs {
            m.insert(a)?;
        }
        Ok(m)
    }

    /// Returns false if the arc was already present.
    pub fn insert(&mut self, (u, v): Arc) -> Result<bool> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: x,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::Loop(u));
        }
        Ok(self.arcs.insert((u, v)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, a: Arc) -> bool {
        self.arcs.contains(&a)
    }

    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.arcs.iter().copied()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn out_neighbours(&self, v: usize) -> Vec<usize> {
        self.arcs.iter().filter(|a| a.0 == v).map(|a| a.1).collect()
    }

    pub fn in_neighbours(&self, v: usize) -> Vec<usize> {
        self.arcs.iter().filter(|a| a.1 == v).map(|a| a.0).collect()
    }

    /// Vertices incident with at least one arc.
    pub fn support(&self) -> BTreeSet<usize> {
        self.arcs.iter().flat_map(|&(u, v)| [u, v]).collect()
    }

    /// Underlying undirected edges `(min, max)`.
    pub fn underlying_edges(&self) -> BTreeSet<(usize, usize)> {
        self.arcs.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect()
    }

    /// Edges carried in both directions.
    pub fn undirected_edges(&self) -> BTreeSet<(usize, usize)> {
        self.arcs
            .iter()
            .filter(|&&(u, v)| u < v && self.arcs.contains(&(v, u)))
            .copied()
            .collect()
    }
}

/// External names for dense vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexLabeling {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl VertexLabeling {
    pub fn new(names: Vec<String>) -> Result<Self> {
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::malformed(format!("duplicate vertex name '{name}'")));
            }
        }
        Ok(VertexLabeling { names, index })
    }

    pub fn numeric(n: usize) -> Self {
        Self::new((0..n).map(|i| i.to_string()).collect()).expect("distinct")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diamond() -> Graph {
        // K4 minus {2,3}
        Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
    }

    #[test]
    fn edge_list_basics() {
        let k3 = Graph::from_edge_list(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(k3.edge_count(), 3);
        assert_eq!(k3, Graph::complete(3));
        let k2 = Graph::from_edge_list(2, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(k2.edge_count(), 1);
    }

    #[test]
    fn loops_and_range_rejected() {
        let err = Graph::from_edge_list(2, &[(0, 0)]).unwrap_err();
        assert_eq!(err, Error::Loop(0));
        assert!(err.to_string().contains("loop not allowed"));
        assert!(matches!(
            Graph::from_edge_list(2, &[(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn neighbourhoods() {
        assert_eq!(Graph::cycle(4).neighborhood(0), vec![1, 3]);
        assert_eq!(Graph::complete(3).neighborhood(2), vec![0, 1]);
        assert!(Graph::empty(3).neighborhood(1).is_empty());
    }

    #[test]
    fn vertex_determining() {
        assert!(!Graph::complete_bipartite(2, 2).is_vertex_determining());
        assert!(!Graph::path(3).is_vertex_determining());
        assert!(Graph::cycle(5).is_vertex_determining());
    }

    #[test]
    fn triangle_listing() {
        assert_eq!(Graph::complete(4).triangles().len(), 4);
        assert!(Graph::cycle(6).triangles().is_empty());
        assert_eq!(Graph::complete(3).triangles(), vec![[0, 1, 2]]);
    }

    #[test]
    fn edges_on_triangles() {
        assert!(Graph::complete(3).every_edge_on_triangle());
        assert!(!Graph::cycle(6).every_edge_on_triangle());
        assert!(diamond().every_edge_on_triangle());
    }

    #[test]
    fn diameters() {
        assert_eq!(Graph::complete(3).diameter(), Diameter::Finite(1));
        assert_eq!(Graph::cycle(8).diameter(), Diameter::Finite(4));
        let two_k2 = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(two_k2.diameter(), Diameter::Infinite);
    }

    #[test]
    fn cycle_diameter_law() {
        for n in 3..=32 {
            assert_eq!(Graph::cycle(n).diameter(), Diameter::Finite(n / 2), "C{n}");
        }
    }

    #[test]
    fn bipartitions() {
        assert_eq!(Graph::cycle(6).bipartition(), Some(vec![0, 1, 0, 1, 0, 1]));
        assert_eq!(Graph::complete(3).bipartition(), None);
        assert_eq!(
            Graph::cycle(8).bipartition(),
            Some(vec![0, 1, 0, 1, 0, 1, 0, 1])
        );
    }

    #[test]
    fn petersen_shape() {
        let p = Graph::petersen();
        assert_eq!(p.edge_count(), 15);
        assert!((0..10).all(|v| p.degree(v) == 3));
        assert_eq!(p.diameter(), Diameter::Finite(2));
        assert!(p.triangles().is_empty());
    }

    #[test]
    fn wide_rows() {
        let c = Graph::cycle(130);
        assert!(c.has_edge(129, 0));
        assert!(c.has_edge(63, 64));
        assert_eq!(c.neighborhood(64), vec![63, 65]);
        assert_eq!(c.diameter(), Diameter::Finite(65));
        assert!(c.validate());
    }

    #[test]
    fn named_graphs() {
        assert_eq!(Graph::named("cycle:8").unwrap(), Graph::cycle(8));
        assert_eq!(Graph::named("K:3").unwrap(), Graph::complete(3));
        assert!(Graph::named("cycle:2").is_err());
        assert!(Graph::named("nonsense").is_err());
    }

    #[test]
    fn mixed_graph_neighbourhoods() {
        let m = MixedGraph::from_arcs(4, [(0, 1), (2, 1), (1, 3)]).unwrap();
        assert_eq!(m.in_neighbours(1), vec![0, 2]);
        assert_eq!(m.out_neighbours(1), vec![3]);
        assert!(MixedGraph::from_arcs(2, [(1, 1)]).is_err());
        assert!(m.undirected_edges().is_empty());
    }

    #[test]
    fn labeling_bijective() {
        let l = VertexLabeling::new(vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(l.index_of("b"), Some(1));
        assert_eq!(l.name(0), "a");
        assert!(VertexLabeling::new(vec!["a".into(), "a".into()]).is_err());
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (2..max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut g = Graph::empty(n);
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[k] {
                            g.add_edge(u, v).unwrap();
                        }
                        k += 1;
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn generated_graphs_validate(g in arb_graph(70)) {
            prop_assert!(g.validate());
            prop_assert_eq!(g.arcs().count(), 2 * g.edge_count());
        }

        #[test]
        fn planted_twins_break_vertex_determining(g in arb_graph(16), seed in any::<u64>()) {
            // make vertex y a copy of x (non-adjacent twins)
            let n = g.n();
            let x = (seed as usize) % n;
            let y = (x + 1 + (seed as usize / 7) % (n - 1)) % n;
            let mut edges: Vec<_> = g.edges().filter(|&(a, b)| a != y && b != y).collect();
            for w in g.neighborhood(x) {
                if w != y {
                    edges.push((y, w));
                }
            }
            edges.retain(|&(a, b)| !((a == x && b == y) || (a == y && b == x)));
            let twin = Graph::from_edge_list(n, &edges).unwrap();
            prop_assert!(!twin.is_vertex_determining());
        }

        #[test]
        fn triangle_edge_criterion(g in arb_graph(14)) {
            let by_arcs = g.arcs().all(|(u, v)| {
                g.neighborhood(u).iter().any(|w| g.has_edge(*w, v))
            });
            prop_assert_eq!(g.every_edge_on_triangle(), by_arcs);
        }
    }
}
