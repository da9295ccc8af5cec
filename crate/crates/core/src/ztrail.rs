//! Alternating trails (Z-trails) and what TF-maps do to triangles.
//!
//! A Z-trail is a sequence of distinct arcs in which consecutive arcs meet
//! alternately head-to-head and tail-to-tail. Read as a walk `p0 .. pk` whose
//! steps alternate in direction, it is open when `p0 != pk`, and otherwise
//! semi-closed or closed according to whether `k` is odd or even.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Arc, Graph};
use crate::tf::{is_tf_automorphism, TfMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClosureClass {
    Open,
    SemiClosed,
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Junction {
    Head,
    Tail,
}

/// A validated Z-trail. Equality compares arc sets and closure class, since
/// the same trail can be listed in more than one order.
#[derive(Debug, Clone, Serialize)]
pub struct ZTrail {
    arcs: Vec<Arc>,
    #[serde(skip)]
    walk: Vec<usize>,
}

impl ZTrail {
    pub fn validate(arcs: Vec<Arc>) -> Result<Self> {
        if arcs.is_empty() {
            return Err(Error::InvalidTrail("no arcs".into()));
        }
        let mut seen = BTreeSet::new();
        for &(u, v) in &arcs {
            if u == v {
                return Err(Error::Loop(u));
            }
            if !seen.insert((u, v)) {
                return Err(Error::InvalidTrail(format!("arc ({u},{v}) repeated")));
            }
        }
        let mut previous: Option<Junction> = None;
        for (i, w) in arcs.windows(2).enumerate() {
            let (a, b) = (w[0], w[1]);
            let j = if a.1 == b.1 {
                Junction::Head
            } else if a.0 == b.0 {
                Junction::Tail
            } else {
                return Err(Error::InvalidTrail(format!(
                    "arcs {i} and {} share neither head nor tail",
                    i + 1
                )));
            };
            if previous == Some(j) {
                return Err(Error::InvalidTrail(format!(
                    "junctions {} and {} have the same type",
                    i,
                    i + 1
                )));
            }
            previous = Some(j);
        }
        // the first arc is walked forward unless it opens tail-to-tail
        let forward = arcs.len() == 1 || arcs[0].1 == arcs[1].1;
        let mut walk = Vec::with_capacity(arcs.len() + 1);
        for (i, &(u, v)) in arcs.iter().enumerate() {
            let fwd = forward == (i % 2 == 0);
            let (from, to) = if fwd { (u, v) } else { (v, u) };
            if i == 0 {
                walk.push(from);
            }
            walk.push(to);
        }
        Ok(ZTrail { arcs, walk })
    }

    /// Validates and also checks every arc is present in `g`.
    pub fn validate_in(g: &Graph, arcs: Vec<Arc>) -> Result<Self> {
        for &(u, v) in &arcs {
            for x in [u, v] {
                if x >= g.n() {
                    return Err(Error::VertexOutOfRange { vertex: x, n: g.n() });
                }
            }
            if !g.has_edge(u, v) {
                return Err(Error::InvalidTrail(format!("({u},{v}) is not an arc")));
            }
        }
        ZTrail::validate(arcs)
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// The vertices `p0 .. pk` of the underlying alternating walk.
    pub fn walk(&self) -> &[usize] {
        &self.walk
    }

    pub fn closure_class(&self) -> ClosureClass {
        let k = self.arcs.len();
        if self.walk[0] != self.walk[k] {
            ClosureClass::Open
        } else if k % 2 == 1 {
            ClosureClass::SemiClosed
        } else {
            ClosureClass::Closed
        }
    }

    pub fn arc_set(&self) -> BTreeSet<Arc> {
        self.arcs.iter().copied().collect()
    }
}

impl PartialEq for ZTrail {
    fn eq(&self, other: &Self) -> bool {
        self.arc_set() == other.arc_set() && self.closure_class() == other.closure_class()
    }
}

impl Eq for ZTrail {}

pub fn classify_ztrail(z: &ZTrail) -> ClosureClass {
    z.closure_class()
}

/// Replaces each arc `(u, v)` by `(alpha(u), beta(v))` and checks the image
/// arcs are present in `g`. The closure class of the result is recomputed,
/// not copied.
pub fn map_ztrail(g: &Graph, t: &TfMap, z: &ZTrail) -> Result<ZTrail> {
    if t.n() != g.n() {
        return Err(Error::SizeMismatch {
            expected: g.n(),
            actual: t.n(),
        });
    }
    let mut image = Vec::with_capacity(z.len());
    for &a in z.arcs() {
        let (x, y) = t.image(a);
        if a.0 >= g.n() || a.1 >= g.n() || !g.has_edge(x, y) {
            return Err(Error::NotAnAutomorphism(format!(
                "image ({x},{y}) of arc ({},{}) is not an arc",
                a.0, a.1
            )));
        }
        image.push((x, y));
    }
    ZTrail::validate(image)
}

/// The two semi-closed trails `a->b<-c->a` and `a<-b->c<-a` covering the six
/// arcs of the triangle, with `a < b < c`.
pub fn triangle_to_ztrails(g: &Graph, tri: [usize; 3]) -> Result<[ZTrail; 2]> {
    let [a, b, c] = sorted(tri);
    if c >= g.n() || !g.is_triangle(tri) {
        return Err(Error::precondition(format!("{{{a},{b},{c}}} is not a triangle")));
    }
    Ok([
        ZTrail::validate(vec![(a, b), (c, b), (c, a)])?,
        ZTrail::validate(vec![(b, a), (b, c), (a, c)])?,
    ])
}

fn sorted(mut tri: [usize; 3]) -> [usize; 3] {
    tri.sort_unstable();
    tri
}

/// What the six arcs of a triangle become under a TF-map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TriangleImageConfig {
    /// (a) a closed Z-trail of length 6 on six distinct vertices.
    ClosedZ6,
    /// (b) two oriented triangles with exactly one common vertex.
    TwoTrianglesSharedVertex,
    /// (c) two oriented triangles with exactly two common vertices.
    TwoTrianglesSharedEdge,
    /// (d) an undirected triangle.
    UndirectedTriangle,
}

impl TriangleImageConfig {
    pub const ALL: [TriangleImageConfig; 4] = [
        TriangleImageConfig::ClosedZ6,
        TriangleImageConfig::TwoTrianglesSharedVertex,
        TriangleImageConfig::TwoTrianglesSharedEdge,
        TriangleImageConfig::UndirectedTriangle,
    ];

    pub fn letter(self) -> char {
        match self {
            TriangleImageConfig::ClosedZ6 => 'a',
            TriangleImageConfig::TwoTrianglesSharedVertex => 'b',
            TriangleImageConfig::TwoTrianglesSharedEdge => 'c',
            TriangleImageConfig::UndirectedTriangle => 'd',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.letter() == c)
    }

    fn from_agreements(k: usize) -> Self {
        match k {
            0 => TriangleImageConfig::ClosedZ6,
            1 => TriangleImageConfig::TwoTrianglesSharedVertex,
            2 => TriangleImageConfig::TwoTrianglesSharedEdge,
            _ => TriangleImageConfig::UndirectedTriangle,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleImage {
    pub triangle: [usize; 3],
    pub config: TriangleImageConfig,
    /// Triangle vertices where `alpha` and `beta` agree.
    pub agreements: Vec<usize>,
    /// Images of `(x, y)` for the six ordered pairs of triangle vertices.
    pub arcs: Vec<Arc>,
    pub vertices: Vec<usize>,
    /// Edges of the host graph among `vertices` not covered by `arcs`.
    pub host_chords: usize,
}

fn ordered_pairs([a, b, c]: [usize; 3]) -> [Arc; 6] {
    [(a, b), (b, a), (a, c), (c, a), (b, c), (c, b)]
}

/// Classifies the image of a triangle from the number of its vertices on
/// which `alpha` and `beta` agree, then checks the image arcs have the shape
/// that configuration describes.
pub fn classify_triangle_image(g: &Graph, t: &TfMap, tri: [usize; 3]) -> Result<TriangleImage> {
    let tri = sorted(tri);
    if tri[2] >= g.n() || !g.is_triangle(tri) {
        return Err(Error::precondition(format!("{tri:?} is not a triangle")));
    }
    if !is_tf_automorphism(g, t)? {
        return Err(Error::precondition("map is not a TF-automorphism"));
    }
    let agreements: Vec<usize> = tri
        .iter()
        .copied()
        .filter(|&v| t.alpha.apply(v) == t.beta.apply(v))
        .collect();
    let config = TriangleImageConfig::from_agreements(agreements.len());
    let arcs: Vec<Arc> = ordered_pairs(tri).iter().map(|&a| t.image(a)).collect();
    let vertices: BTreeSet<usize> = arcs.iter().flat_map(|&(u, v)| [u, v]).collect();
    let edges: BTreeSet<(usize, usize)> = arcs.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    let bidirected = arcs.iter().filter(|&&(u, v)| arcs.contains(&(v, u))).count() / 2;

    let (want_v, want_e, want_bi) = match config {
        TriangleImageConfig::UndirectedTriangle => (3, 3, 3),
        TriangleImageConfig::TwoTrianglesSharedEdge => (4, 5, 1),
        TriangleImageConfig::TwoTrianglesSharedVertex => (5, 6, 0),
        TriangleImageConfig::ClosedZ6 => (6, 6, 0),
    };
    let shape_ok = vertices.len() == want_v
        && edges.len() == want_e
        && bidirected == want_bi
        && match config {
            TriangleImageConfig::ClosedZ6 => is_single_cycle(&vertices, &edges),
            TriangleImageConfig::TwoTrianglesSharedVertex => {
                let hub = t.alpha.apply(agreements[0]);
                edges.iter().filter(|&&(u, v)| u == hub || v == hub).count() == 4
            }
            _ => true,
        };
    if !shape_ok {
        return Err(Error::Falsified(format!(
            "image of {tri:?} has {} vertices and {} edges, not the shape of configuration ({})",
            vertices.len(),
            edges.len(),
            config.letter()
        )));
    }
    let vs: Vec<usize> = vertices.into_iter().collect();
    let mut host_chords = 0;
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            if g.has_edge(u, v) && !edges.contains(&(u, v)) {
                host_chords += 1;
            }
        }
    }
    Ok(TriangleImage {
        triangle: tri,
        config,
        agreements,
        arcs,
        vertices: vs,
        host_chords,
    })
}

fn is_single_cycle(vertices: &BTreeSet<usize>, edges: &BTreeSet<(usize, usize)>) -> bool {
    let deg = |x: usize| edges.iter().filter(|&&(u, v)| u == x || v == x).count();
    if !vertices.iter().all(|&x| deg(x) == 2) {
        return false;
    }
    // a 2-regular graph is one cycle when a walk from any vertex sees them all
    let start = *vertices.iter().next().expect("nonempty");
    let (mut prev, mut cur, mut steps) = (usize::MAX, start, 0);
    loop {
        let next = edges
            .iter()
            .filter_map(|&(u, v)| {
                if u == cur && v != prev {
                    Some(v)
                } else if v == cur && u != prev {
                    Some(u)
                } else {
                    None
                }
            })
            .next()
            .expect("degree two");
        prev = cur;
        cur = next;
        steps += 1;
        if cur == start {
            return steps == vertices.len();
        }
    }
}

/// The structure whose image supplies the arcs of the image's underlying
/// undirected graph that the triangle itself does not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Partner {
    /// Case (a) with the pulled-back arcs forming a triangle.
    Triangle { vertices: [usize; 3], disjoint: bool },
    /// Case (a) otherwise: a closed Z-trail of length 6.
    ClosedZTrail { arcs: Vec<Arc>, vertices: Vec<usize> },
    /// Cases (b) and (c).
    TrianglePair {
        image_triangles: [[usize; 3]; 2],
        shared_vertices: Vec<usize>,
        partner_arcs: Vec<Arc>,
        connected: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartnerReport {
    pub triangle: [usize; 3],
    pub config: TriangleImageConfig,
    pub partner: Partner,
}

/// Pulls back, through `t`, the arcs `(q, p)` with `(p, q)` an image arc of
/// the triangle and `(q, p)` not one, and describes what they form.
pub fn find_image_partner(g: &Graph, t: &TfMap, tri: [usize; 3]) -> Result<PartnerReport> {
    let image = classify_triangle_image(g, t, tri)?;
    let tri = image.triangle;
    let inv = t.inverse();
    let missing: Vec<Arc> = image
        .arcs
        .iter()
        .map(|&(p, q)| (q, p))
        .filter(|r| !image.arcs.contains(r))
        .collect();
    let pull = |(p, q): Arc| inv.image((p, q));

    let partner = match image.config {
        TriangleImageConfig::UndirectedTriangle => {
            return Err(Error::precondition(
                "an undirected triangle image has no partner",
            ))
        }
        TriangleImageConfig::ClosedZ6 => {
            // walk the image cycle a1 b2 a3 b1 a2 b3 and reverse each edge
            let [x, y, z] = tri;
            let (a, b) = (|v| t.alpha.apply(v), |v| t.beta.apply(v));
            let reversed = [
                (b(y), a(x)),
                (b(y), a(z)),
                (b(x), a(z)),
                (b(x), a(y)),
                (b(z), a(y)),
                (b(z), a(x)),
            ];
            let arcs: Vec<Arc> = reversed.iter().map(|&r| pull(r)).collect();
            let trail = ZTrail::validate(arcs.clone()).map_err(|e| {
                Error::Falsified(format!("pulled-back arcs of {tri:?} are not a Z-trail: {e}"))
            })?;
            if trail.closure_class() != ClosureClass::Closed {
                return Err(Error::Falsified(format!(
                    "pulled-back arcs of {tri:?} do not close up"
                )));
            }
            let vs: BTreeSet<usize> = arcs.iter().flat_map(|&(u, v)| [u, v]).collect();
            if vs.len() == 3 {
                let mut it = vs.iter().copied();
                let k = [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()];
                Partner::Triangle {
                    vertices: k,
                    disjoint: k.iter().all(|v| !tri.contains(v)),
                }
            } else {
                Partner::ClosedZTrail {
                    arcs,
                    vertices: vs.into_iter().collect(),
                }
            }
        }
        TriangleImageConfig::TwoTrianglesSharedEdge | TriangleImageConfig::TwoTrianglesSharedVertex => {
            let edges: BTreeSet<(usize, usize)> =
                image.arcs.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
            let vs = &image.vertices;
            let mut found = Vec::new();
            for i in 0..vs.len() {
                for j in i + 1..vs.len() {
                    for k in j + 1..vs.len() {
                        let (p, q, r) = (vs[i], vs[j], vs[k]);
                        if edges.contains(&(p, q)) && edges.contains(&(p, r)) && edges.contains(&(q, r)) {
                            found.push([p, q, r]);
                        }
                    }
                }
            }
            if found.len() != 2 {
                return Err(Error::Falsified(format!(
                    "image of {tri:?} contains {} triangles, expected 2",
                    found.len()
                )));
            }
            let shared: Vec<usize> = found[0]
                .iter()
                .copied()
                .filter(|v| found[1].contains(v))
                .collect();
            let partner_arcs: Vec<Arc> = {
                let mut v: Vec<Arc> = missing.iter().map(|&r| pull(r)).collect();
                v.sort_unstable();
                v
            };
            let mut pieces: Vec<(usize, usize)> = vec![(tri[0], tri[1]), (tri[0], tri[2])];
            pieces.extend(partner_arcs.iter().copied());
            Partner::TrianglePair {
                image_triangles: [found[0], found[1]],
                shared_vertices: shared,
                connected: edges_connected(&pieces),
                partner_arcs,
            }
        }
    };
    Ok(PartnerReport {
        triangle: tri,
        config: image.config,
        partner,
    })
}

fn edges_connected(edges: &[(usize, usize)]) -> bool {
    let vs: BTreeSet<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    let Some(&start) = vs.iter().next() else {
        return true;
    };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for &(u, v) in edges {
            for (p, q) in [(u, v), (v, u)] {
                if p == x && seen.insert(q) {
                    stack.push(q);
                }
            }
        }
    }
    seen.len() == vs.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;
    use crate::tf::{cycle_parity_shift, tf_group_brute_force};
    use crate::Limits;

    fn diamond() -> Graph {
        // K4 minus the edge {2,3}; twins 2 and 3
        Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
    }

    #[test]
    fn validation() {
        let z = ZTrail::validate(vec![(5, 6), (1, 6), (1, 2)]).unwrap();
        assert_eq!(z.walk(), &[5, 6, 1, 2]);
        assert_eq!(z.closure_class(), ClosureClass::Open);
        assert!(ZTrail::validate(vec![(0, 1), (0, 1)]).is_err());
        assert!(ZTrail::validate(vec![(0, 1), (2, 3)]).is_err());
        assert!(ZTrail::validate(vec![(0, 1), (2, 1), (3, 1)]).is_err());
        assert!(ZTrail::validate(vec![(0, 1), (1, 0)]).is_err());
        assert!(ZTrail::validate(vec![]).is_err());
    }

    #[test]
    fn closure_classes() {
        assert_eq!(classify_ztrail(&ZTrail::validate(vec![(0, 1)]).unwrap()), ClosureClass::Open);
        let tri = ZTrail::validate(vec![(1, 2), (3, 2), (3, 1)]).unwrap();
        assert_eq!(tri.closure_class(), ClosureClass::SemiClosed);
        assert_eq!(tri.len() % 2, 1);
        let c6 = ZTrail::validate(vec![(0, 1), (2, 1), (2, 3), (4, 3), (4, 5), (0, 5)]).unwrap();
        assert_eq!(c6.closure_class(), ClosureClass::Closed);
        // opening tail-to-tail
        let back = ZTrail::validate(vec![(1, 0), (1, 2), (3, 2), (3, 0)]).unwrap();
        assert_eq!(back.walk(), &[0, 1, 2, 3, 0]);
        assert_eq!(back.closure_class(), ClosureClass::Closed);
    }

    #[test]
    fn equality_ignores_order() {
        let a = ZTrail::validate(vec![(0, 1), (2, 1), (2, 3)]).unwrap();
        let b = ZTrail::validate(vec![(2, 3), (2, 1), (0, 1)]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn mapping() {
        let c4 = Graph::cycle(4);
        let z = ZTrail::validate_in(&c4, vec![(0, 1), (2, 1)]).unwrap();
        assert_eq!(map_ztrail(&c4, &TfMap::identity(4), &z).unwrap().arcs(), z.arcs());
        let t = TfMap::new(Permutation::from_cycles(4, &[&[0, 2]]).unwrap(), Permutation::identity(4)).unwrap();
        let m = map_ztrail(&c4, &t, &z).unwrap();
        assert_eq!(m.arcs(), &[(2, 1), (0, 1)]);
        assert_eq!(m.closure_class(), ClosureClass::Open);

        let c8 = Graph::cycle(8);
        let s = cycle_parity_shift(8).unwrap();
        let z8 = ZTrail::validate_in(&c8, vec![(0, 1), (2, 1)]).unwrap();
        let m8 = map_ztrail(&c8, &s, &z8).unwrap();
        assert_eq!(m8.arcs(), &[(2, 3), (4, 3)]);
        assert_eq!(m8.closure_class(), ClosureClass::Open);

        let bad = TfMap::new(Permutation::from_cycles(4, &[&[0, 1]]).unwrap(), Permutation::identity(4)).unwrap();
        assert!(map_ztrail(&c4, &bad, &z).is_err());
    }

    #[test]
    fn triangle_trails() {
        let k4 = Graph::complete(4);
        let [p, q] = triangle_to_ztrails(&k4, [1, 2, 3]).unwrap();
        assert_eq!(p.arc_set(), [(1, 2), (3, 2), (3, 1)].into_iter().collect());
        assert_eq!(q.arc_set(), [(2, 1), (2, 3), (1, 3)].into_iter().collect());
        assert_eq!(p.closure_class(), ClosureClass::SemiClosed);
        assert_eq!(q.closure_class(), ClosureClass::SemiClosed);
        let all: BTreeSet<Arc> = p.arc_set().union(&q.arc_set()).copied().collect();
        assert_eq!(all.len(), 6);
        assert!(triangle_to_ztrails(&Graph::cycle(4), [0, 1, 2]).is_err());
    }

    #[test]
    fn diagonal_gives_undirected_triangle() {
        let k3 = Graph::complete(3);
        let r = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let img = classify_triangle_image(&k3, &TfMap::diagonal(&r), [0, 1, 2]).unwrap();
        assert_eq!(img.config, TriangleImageConfig::UndirectedTriangle);
        assert!(find_image_partner(&k3, &TfMap::diagonal(&r), [0, 1, 2]).is_err());
    }

    #[test]
    fn diamond_twin_swap() {
        let g = diamond();
        let t = TfMap::new(Permutation::from_cycles(4, &[&[2, 3]]).unwrap(), Permutation::identity(4)).unwrap();
        let img = classify_triangle_image(&g, &t, [0, 1, 2]).unwrap();
        assert_eq!(img.config, TriangleImageConfig::TwoTrianglesSharedEdge);
        let mut arcs = img.arcs.clone();
        arcs.sort_unstable();
        assert_eq!(arcs, vec![(0, 1), (0, 2), (1, 0), (1, 2), (3, 0), (3, 1)]);
        let rep = find_image_partner(&g, &t, [0, 1, 2]).unwrap();
        match rep.partner {
            Partner::TrianglePair { image_triangles, shared_vertices, connected, .. } => {
                assert_eq!(image_triangles, [[0, 1, 2], [0, 1, 3]]);
                assert_eq!(shared_vertices, vec![0, 1]);
                assert!(connected);
            }
            other => panic!("unexpected partner {other:?}"),
        }
    }

    #[test]
    fn closed_z6_with_disjoint_partner() {
        // smallest instance in the n <= 6 corpus
        let g = crate::graph6::parse_graph6("EhNG").unwrap();
        let t = TfMap::new(
            Permutation::from_cycles(6, &[&[1, 2], &[4, 5]]).unwrap(),
            Permutation::from_cycles(6, &[&[0, 3], &[1, 5], &[2, 4]]).unwrap(),
        )
        .unwrap();
        let img = classify_triangle_image(&g, &t, [2, 3, 4]).unwrap();
        assert_eq!(img.config, TriangleImageConfig::ClosedZ6);
        assert_eq!(img.vertices.len(), 6);
        assert!(img.agreements.is_empty());
        let rep = find_image_partner(&g, &t, [2, 3, 4]).unwrap();
        assert_eq!(
            rep.partner,
            Partner::Triangle {
                vertices: [0, 1, 5],
                disjoint: true
            }
        );
    }

    #[test]
    fn every_triangle_image_is_classified_on_small_graphs() {
        let lim = Limits::default();
        let graphs = [Graph::complete(4), diamond(), Graph::complete(5)];
        for g in graphs {
            let tf = tf_group_brute_force(&g, &lim).unwrap();
            for t in tf.nontrivial() {
                for tri in g.triangles() {
                    let img = classify_triangle_image(&g, t, tri).unwrap();
                    let agree = tri.iter().all(|&v| t.alpha.apply(v) == t.beta.apply(v));
                    assert_eq!(img.config == TriangleImageConfig::UndirectedTriangle, agree);
                }
            }
        }
    }

    #[test]
    fn config_letters() {
        for c in TriangleImageConfig::ALL {
            assert_eq!(TriangleImageConfig::from_letter(c.letter()), Some(c));
        }
        assert_eq!(TriangleImageConfig::from_letter('e'), None);
    }
}
