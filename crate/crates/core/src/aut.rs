//! Automorphism groups of vertex-coloured graphs.
//!
//! The search refines an ordered partition to an equitable one, then follows a
//! reference path of individualisations down to a discrete partition. Working
//! from the deepest level up, it asks for each vertex `v` of the target cell
//! whether some automorphism fixing the earlier base points sends the base point
//! of that level to `v`. Orbits of the generators found so far prune these
//! queries, and the product of the base-point orbit sizes is the group order.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::hash::{Hash, Hasher};

use crate::cover::DoubleCover;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::Permutation;
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexColouring {
    colours: Vec<usize>,
    classes: usize,
}

impl VertexColouring {
    /// Colours must be `0..k` with every class nonempty.
    pub fn new(colours: Vec<usize>) -> Result<Self> {
        let classes = colours.iter().max().map_or(0, |&m| m + 1);
        let mut used = vec![false; classes];
        for &c in &colours {
            used[c] = true;
        }
        if let Some(missing) = used.iter().position(|&u| !u) {
            return Err(Error::malformed(format!("colour class {missing} is empty")));
        }
        Ok(VertexColouring { colours, classes })
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    pub fn colour(&self, v: usize) -> usize {
        self.colours[v]
    }

    pub fn classes(&self) -> usize {
        self.classes
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutGroup {
    n: usize,
    generators: Vec<Permutation>,
    elements: Option<Vec<Permutation>>,
    order: u128,
}

impl AutGroup {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Sorted lexicographically by image array.
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// All elements, sorted, when the order is within the enumeration cap.
    pub fn elements(&self) -> Option<&[Permutation]> {
        self.elements.as_deref()
    }

    pub fn order(&self) -> u128 {
        self.order
    }
}

pub fn group_order(group: &AutGroup) -> u128 {
    group.order
}

pub fn is_automorphism(g: &Graph, p: &Permutation) -> Result<bool> {
    if p.len() != g.n() {
        return Err(Error::SizeMismatch {
            expected: g.n(),
            actual: p.len(),
        });
    }
    Ok(g.arcs().all(|(u, v)| g.has_edge(p.apply(u), p.apply(v))))
}

/// The full group of colour-preserving automorphisms of `g`.
pub fn automorphism_group(
    g: &Graph,
    colouring: Option<&VertexColouring>,
    limits: &Limits,
) -> Result<AutGroup> {
    let n = g.n();
    let initial: Vec<Vec<usize>> = match colouring {
        Some(c) => {
            if c.len() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    actual: c.len(),
                });
            }
            let mut cells = vec![Vec::new(); c.classes()];
            for v in 0..n {
                cells[c.colour(v)].push(v);
            }
            cells
        }
        None if n == 0 => Vec::new(),
        None => vec![(0..n).collect()],
    };

    let search = Search::new(g, initial);
    let (generators, order) = search.run()?;
    let elements = if order <= limits.enum_cap {
        let elems = close(n, &generators);
        if elems.len() as u128 != order {
            return Err(Error::Falsified(format!(
                "closure of generators has {} elements but orbit counting gives {order}",
                elems.len()
            )));
        }
        Some(elems)
    } else {
        None
    };
    Ok(AutGroup {
        n,
        generators,
        elements,
        order,
    })
}

/// Automorphisms of `B(G)` mapping `V_0` onto itself.
pub fn colour_class_stabiliser(dc: &DoubleCover, limits: &Limits) -> Result<AutGroup> {
    let n = dc.base_n();
    if n == 0 {
        return automorphism_group(dc.graph(), None, limits);
    }
    let colours: Vec<usize> = (0..2 * n).map(|i| usize::from(!dc.in_v0(i))).collect();
    let colouring = VertexColouring::new(colours)?;
    automorphism_group(dc.graph(), Some(&colouring), limits)
}

/// Every element of the group generated by `gens`, sorted.
fn close(n: usize, gens: &[Permutation]) -> Vec<Permutation> {
    let id = Permutation::identity(n);
    let mut seen: HashSet<Permutation> = HashSet::new();
    seen.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = g.compose_unchecked(&x);
            if !seen.contains(&y) {
                seen.insert(y.clone());
                frontier.push(y);
            }
        }
    }
    let mut out: Vec<Permutation> = seen.into_iter().collect();
    out.sort();
    out
}

type Cells = Vec<Vec<usize>>;

/// Isomorphism-invariant summary of an equitable partition.
#[derive(Debug, Clone, PartialEq, Eq)]
struct NodeInvariant {
    sizes: Vec<u32>,
    quotient: u64,
}

struct Level {
    cells: Cells,
    target: usize,
    base: usize,
}

struct Search<'a> {
    g: &'a Graph,
    levels: Vec<Level>,
    /// `invariants[d]` describes the reference partition at depth `d`.
    invariants: Vec<NodeInvariant>,
    /// Vertex order of the reference leaf.
    leaf: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, initial: Cells) -> Self {
        let mut cells = initial;
        refine(g, &mut cells);
        let mut levels = Vec::new();
        let mut invariants = vec![invariant(g, &cells)];
        while let Some(target) = target_cell(&cells) {
            let base = cells[target][0];
            let next = individualise(&cells, target, base);
            levels.push(Level {
                cells,
                target,
                base,
            });
            cells = next;
            refine(g, &mut cells);
            invariants.push(invariant(g, &cells));
        }
        let leaf = cells.iter().map(|c| c[0]).collect();
        Search {
            g,
            levels,
            invariants,
            leaf,
        }
    }

    fn run(&self) -> Result<(Vec<Permutation>, u128)> {
        let n = self.g.n();
        let mut generators: Vec<(usize, Permutation)> = Vec::new();
        let mut order: u128 = 1;
        for i in (0..self.levels.len()).rev() {
            let level = &self.levels[i];
            let base = level.base;
            let mut orbits = UnionFind::new(n);
            for (_, p) in generators.iter().filter(|(l, _)| *l >= i) {
                orbits.absorb(p);
            }
            let mut failed: Vec<usize> = Vec::new();
            for &v in &level.cells[level.target] {
                if v == base || orbits.same(v, base) {
                    continue;
                }
                if failed.iter().any(|&w| orbits.same(v, w)) {
                    continue;
                }
                match self.find_mapping(i, v) {
                    Some(p) => {
                        orbits.absorb(&p);
                        generators.push((i, p));
                    }
                    None => failed.push(v),
                }
            }
            let orbit = level.cells[level.target]
                .iter()
                .filter(|&&v| orbits.same(v, base))
                .count() as u128;
            order = order.checked_mul(orbit).ok_or_else(|| {
                Error::CapExceeded("automorphism group order overflows 128 bits".into())
            })?;
        }
        let mut gens: Vec<Permutation> = generators.into_iter().map(|(_, p)| p).collect();
        gens.sort();
        gens.dedup();
        Ok((gens, order))
    }

    /// An automorphism fixing the base points above level `i` and sending the
    /// level-`i` base point to `v`, if one exists.
    fn find_mapping(&self, i: usize, v: usize) -> Option<Permutation> {
        let level = &self.levels[i];
        let mut cells = individualise(&level.cells, level.target, v);
        refine(self.g, &mut cells);
        if invariant(self.g, &cells) != self.invariants[i + 1] {
            return None;
        }
        self.descend(i + 1, cells)
    }

    fn descend(&self, depth: usize, cells: Cells) -> Option<Permutation> {
        if depth == self.levels.len() {
            let mut images = vec![0usize; self.g.n()];
            for (k, cell) in cells.iter().enumerate() {
                images[self.leaf[k]] = cell[0];
            }
            let p = Permutation::from_images(images).ok()?;
            return is_automorphism(self.g, &p).unwrap_or(false).then_some(p);
        }
        let target = self.levels[depth].target;
        for &w in &cells[target] {
            let mut next = individualise(&cells, target, w);
            refine(self.g, &mut next);
            if invariant(self.g, &next) != self.invariants[depth + 1] {
                continue;
            }
            if let Some(p) = self.descend(depth + 1, next) {
                return Some(p);
            }
        }
        None
    }
}

/// First smallest non-singleton cell.
fn target_cell(cells: &Cells) -> Option<usize> {
    cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .min_by_key(|(i, c)| (c.len(), *i))
        .map(|(i, _)| i)
}

fn individualise(cells: &Cells, target: usize, v: usize) -> Cells {
    let mut out = Vec::with_capacity(cells.len() + 1);
    for (i, cell) in cells.iter().enumerate() {
        if i == target {
            out.push(vec![v]);
            out.push(cell.iter().copied().filter(|&x| x != v).collect());
        } else {
            out.push(cell.clone());
        }
    }
    out
}

/// Splits cells by neighbour counts into each cell until the partition is
/// equitable. New subcells replace their parent in order of increasing count.
fn refine(g: &Graph, cells: &mut Cells) {
    let mut mask = vec![0u64; g.words()];
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            mask.iter_mut().for_each(|w| *w = 0);
            for &v in &cells[s] {
                mask[v / 64] |= 1u64 << (v % 64);
            }
            let mut next: Cells = Vec::with_capacity(cells.len());
            for cell in cells.drain(..) {
                if cell.len() == 1 {
                    next.push(cell);
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> =
                    cell.iter().map(|&v| (count_in(g.row(v), &mask), v)).collect();
                if keyed.iter().all(|k| k.0 == keyed[0].0) {
                    next.push(cell);
                    continue;
                }
                changed = true;
                keyed.sort_by_key(|k| k.0);
                let mut start = 0;
                for end in 1..=keyed.len() {
                    if end == keyed.len() || keyed[end].0 != keyed[start].0 {
                        next.push(keyed[start..end].iter().map(|k| k.1).collect());
                        start = end;
                    }
                }
            }
            *cells = next;
            s += 1;
        }
        if !changed {
            break;
        }
    }
}

#[inline]
fn count_in(row: &[u64], mask: &[u64]) -> u32 {
    row.iter().zip(mask).map(|(a, b)| (a & b).count_ones()).sum()
}

fn invariant(g: &Graph, cells: &Cells) -> NodeInvariant {
    let sizes = cells.iter().map(|c| c.len() as u32).collect();
    let mut masks: Vec<Vec<u64>> = Vec::with_capacity(cells.len());
    for cell in cells {
        let mut m = vec![0u64; g.words()];
        for &v in cell {
            m[v / 64] |= 1u64 << (v % 64);
        }
        masks.push(m);
    }
    let mut h = DefaultHasher::new();
    for cell in cells {
        let row = g.row(cell[0]);
        for m in &masks {
            count_in(row, m).hash(&mut h);
        }
    }
    NodeInvariant {
        sizes,
        quotient: h.finish(),
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    fn absorb(&mut self, p: &Permutation) {
        for x in 0..p.len() {
            self.union(x, p.apply(x));
        }
    }
}
