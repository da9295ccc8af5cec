//! Cyclic layered graphs `[H_0, ..., H_{m-1}]` and the TF-automorphisms
//! assembled from links between consecutive layers.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::{parse_graph6, write_graph6};
use crate::perm::Permutation;
use crate::tf::{cycle_parity_shift, is_tf_automorphism, is_tf_isomorphism, stability_verdict, TfMap};
use crate::Limits;

/// Layers plus links; link `i` maps layer `i` to layer `i + 1 (mod m)` in
/// layer-local indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredSpec {
    pub layers: Vec<Graph>,
    pub links: Vec<TfMap>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredGraph {
    graph: Graph,
    layer_of: Vec<usize>,
    offsets: Vec<usize>,
}

impl LayeredGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn m(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn layer_of(&self, v: usize) -> usize {
        self.layer_of[v]
    }

    /// Global index of local vertex `x` in layer `i`.
    pub fn global(&self, i: usize, x: usize) -> usize {
        self.offsets[i] + x
    }

    pub fn local(&self, v: usize) -> usize {
        v - self.offsets[self.layer_of[v]]
    }

    pub fn layer_size(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }
}

pub fn build_layered_graph(layers: &[Graph]) -> Result<LayeredGraph> {
    let m = layers.len();
    if m < 3 {
        return Err(Error::precondition(format!(
            "a layered graph needs at least 3 layers, got {m}"
        )));
    }
    for (i, h) in layers.iter().enumerate() {
        if h.n() == 0 {
            return Err(Error::precondition(format!("layer {i} is empty")));
        }
        if let Some(v) = (0..h.n()).find(|&v| h.degree(v) == 0) {
            return Err(Error::precondition(format!(
                "vertex {v} of layer {i} is isolated"
            )));
        }
    }
    let mut offsets = vec![0];
    for h in layers {
        offsets.push(offsets.last().unwrap() + h.n());
    }
    let total = offsets[m];
    let mut graph = Graph::empty(total);
    let mut layer_of = Vec::with_capacity(total);
    for (i, h) in layers.iter().enumerate() {
        layer_of.extend(std::iter::repeat(i).take(h.n()));
        for (u, v) in h.edges() {
            graph.add_edge(offsets[i] + u, offsets[i] + v)?;
        }
        let j = (i + 1) % m;
        for u in offsets[i]..offsets[i + 1] {
            for v in offsets[j]..offsets[j + 1] {
                graph.add_edge(u, v)?;
            }
        }
    }
    Ok(LayeredGraph {
        graph,
        layer_of,
        offsets,
    })
}

/// `links[0] links[1] ... links[m-1]`, composed right to left.
pub fn cyclic_product(links: &[TfMap]) -> Result<TfMap> {
    let n = links
        .first()
        .ok_or_else(|| Error::precondition("no links"))?
        .n();
    links
        .iter()
        .try_fold(TfMap::identity(n), |acc, l| acc.compose(l))
}

/// Given links `1 .. m-1`, the link 0 that makes the cyclic product the identity.
pub fn complete_link_cycle(rest: &[TfMap]) -> Result<TfMap> {
    Ok(cyclic_product(rest)?.inverse())
}

impl LayeredSpec {
    /// Checks the link count, that every link is a TF-isomorphism between
    /// consecutive layers, and that the cyclic product is the identity.
    pub fn new(layers: Vec<Graph>, links: Vec<TfMap>) -> Result<Self> {
        let m = layers.len();
        if links.len() != m {
            return Err(Error::SizeMismatch {
                expected: m,
                actual: links.len(),
            });
        }
        for (i, link) in links.iter().enumerate() {
            let (h, k) = (&layers[i], &layers[(i + 1) % m]);
            if link.n() != h.n() || h.n() != k.n() {
                return Err(Error::precondition(format!(
                    "link {i} has size {} between layers of sizes {} and {}",
                    link.n(),
                    h.n(),
                    k.n()
                )));
            }
            if !is_tf_isomorphism(h, k, link)? {
                return Err(Error::precondition(format!(
                    "link {i} is not a TF-isomorphism from layer {i} to layer {}",
                    (i + 1) % m
                )));
            }
        }
        let product = cyclic_product(&links)?;
        if product != TfMap::identity(product.n()) {
            return Err(Error::precondition("cyclic product of links is not the identity"));
        }
        Ok(LayeredSpec { layers, links })
    }

    /// Same as `new`, with link 0 supplied by `complete_link_cycle`.
    pub fn with_completed_links(layers: Vec<Graph>, rest: Vec<TfMap>) -> Result<Self> {
        let mut links = vec![complete_link_cycle(&rest)?];
        links.extend(rest);
        LayeredSpec::new(layers, links)
    }

    pub fn m(&self) -> usize {
        self.layers.len()
    }

    /// Parses: `m`, then `m` graph6 lines, then two permutation lines per
    /// link (alpha, beta). Link 0 may instead be the single line `auto`.
    /// Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let mut next = |what: &str| {
            lines
                .next()
                .ok_or_else(|| Error::malformed(format!("layered spec ends before {what}")))
        };
        let m: usize = next("the layer count")?
            .parse()
            .map_err(|_| Error::malformed("first line must be the layer count"))?;
        let mut layers = Vec::with_capacity(m);
        for i in 0..m {
            layers.push(parse_graph6(next(&format!("layer {i}"))?)?);
        }
        let mut links = Vec::with_capacity(m);
        let mut auto = false;
        for i in 0..m {
            let first = next(&format!("link {i}"))?;
            if i == 0 && first.eq_ignore_ascii_case("auto") {
                auto = true;
                continue;
            }
            let n = layers.get(i).map_or(0, Graph::n);
            let alpha = Permutation::parse(first, n, None)?;
            let beta = Permutation::parse(next(&format!("beta of link {i}"))?, n, None)?;
            links.push(TfMap::new(alpha, beta)?);
        }
        if lines.next().is_some() {
            return Err(Error::malformed("trailing lines after the last link"));
        }
        if auto {
            LayeredSpec::with_completed_links(layers, links)
        } else {
            LayeredSpec::new(layers, links)
        }
    }

    pub fn write(&self) -> String {
        let mut out = format!("{}\n", self.m());
        for h in &self.layers {
            out.push_str(&write_graph6(h));
            out.push('\n');
        }
        for l in &self.links {
            out.push_str(&format!("{}\n{}\n", l.alpha, l.beta));
        }
        out
    }
}

/// `alpha(v) = alpha_i(v)`, `beta(v) = beta_i(v)` for `v` in layer `i`,
/// landing in layer `i + 1`. Fails if the result does not preserve arcs.
pub fn assemble_tf(spec: &LayeredSpec, lg: &LayeredGraph) -> Result<TfMap> {
    let t = assemble_unchecked(spec, lg)?;
    if !is_tf_automorphism(lg.graph(), &t)? {
        return Err(Error::Falsified(
            "assembled pair is not a TF-automorphism of the layered graph".into(),
        ));
    }
    Ok(t)
}

fn assemble_unchecked(spec: &LayeredSpec, lg: &LayeredGraph) -> Result<TfMap> {
    let m = spec.m();
    if lg.m() != m {
        return Err(Error::SizeMismatch {
            expected: m,
            actual: lg.m(),
        });
    }
    let total = lg.graph().n();
    let (mut a, mut b) = (vec![0usize; total], vec![0usize; total]);
    for v in 0..total {
        let i = lg.layer_of(v);
        let x = lg.local(v);
        let j = (i + 1) % m;
        a[v] = lg.global(j, spec.links[i].alpha.apply(x));
        b[v] = lg.global(j, spec.links[i].beta.apply(x));
    }
    TfMap::new(Permutation::from_images(a)?, Permutation::from_images(b)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionReport {
    pub m: usize,
    pub vertices: usize,
    pub edges: usize,
    pub tf_valid: bool,
    pub tf_nontrivial: bool,
    /// `None` when the graph is disconnected.
    pub diameter: Option<usize>,
    /// `(m + e) / 2` with `e = m mod 2`.
    pub printed_formula: usize,
    /// `(m - e) / 2`, equal to `floor(m / 2)`.
    pub derived_formula: usize,
    pub printed_formula_matches: bool,
    pub derived_formula_matches: bool,
    pub every_edge_on_triangle: bool,
    /// Every `w` at distance `diam - 1` from some `v` has a neighbour at
    /// distance `diam` from `v`.
    pub eccentricity_growth: bool,
}

impl ConstructionReport {
    pub fn all_pass(&self) -> bool {
        self.tf_valid
            && self.derived_formula_matches
            && self.printed_formula_matches
            && self.every_edge_on_triangle
            && self.eccentricity_growth
    }
}

pub fn verify_construction(lg: &LayeredGraph, t: &TfMap) -> Result<ConstructionReport> {
    let g = lg.graph();
    let m = lg.m();
    let e = m % 2;
    let diameter = g.diameter().finite();
    let dist: Vec<Vec<Option<usize>>> = (0..g.n()).map(|v| g.bfs(v)).collect();
    let eccentricity_growth = match diameter {
        Some(k) if k >= 1 => (0..g.n()).all(|v| {
            (0..g.n())
                .filter(|&w| dist[v][w] == Some(k - 1))
                .all(|w| g.neighborhood(w).iter().any(|&u| dist[v][u] == Some(k)))
        }),
        _ => false,
    };
    let printed = (m + e) / 2;
    let derived = (m - e) / 2;
    Ok(ConstructionReport {
        m,
        vertices: g.n(),
        edges: g.edge_count(),
        tf_valid: is_tf_automorphism(g, t)?,
        tf_nontrivial: !t.is_trivial(),
        diameter,
        printed_formula: printed,
        derived_formula: derived,
        printed_formula_matches: diameter == Some(printed),
        derived_formula_matches: diameter == Some(derived),
        every_edge_on_triangle: g.every_edge_on_triangle(),
        eccentricity_growth,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CounterexampleSummary {
    pub vertices: usize,
    pub connected: bool,
    pub diameter: Option<usize>,
    pub diameter_at_least_four: bool,
    pub every_edge_on_triangle: bool,
    pub vertex_determining: bool,
    /// The exhibited pair is a non-trivial TF-automorphism, which makes the
    /// graph unstable.
    pub unstable: bool,
}

impl CounterexampleSummary {
    pub fn failed_checks(&self) -> Vec<&'static str> {
        [
            (self.connected, "connected"),
            (self.diameter_at_least_four, "diameter >= 4"),
            (self.every_edge_on_triangle, "every edge on a triangle"),
            (self.vertex_determining, "vertex-determining"),
            (self.unstable, "non-trivial TF-automorphism"),
        ]
        .into_iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, name)| name)
        .collect()
    }

    pub fn all_pass(&self) -> bool {
        self.failed_checks().is_empty()
    }
}

/// Runs the five checks on a graph and an exhibited TF-map, without failing.
pub fn assess_counterexample(g: &Graph, t: &TfMap) -> Result<CounterexampleSummary> {
    let diameter = g.diameter().finite();
    Ok(CounterexampleSummary {
        vertices: g.n(),
        connected: g.is_connected(),
        diameter,
        diameter_at_least_four: diameter.is_some_and(|d| d >= 4),
        every_edge_on_triangle: g.every_edge_on_triangle(),
        vertex_determining: g.is_vertex_determining(),
        unstable: !t.is_trivial() && is_tf_automorphism(g, t)?,
    })
}

#[derive(Debug, Clone)]
pub struct Counterexample {
    pub spec: LayeredSpec,
    pub layered: LayeredGraph,
    pub tf: TfMap,
    pub summary: CounterexampleSummary,
}

/// `m` copies of `layer`, link 1 = `link^-1`, links 2.. identity, link 0
/// completing the cycle (so link 0 = `link`).
pub fn layered_from_link(m: usize, layer: &Graph, link: &TfMap) -> Result<(LayeredSpec, LayeredGraph, TfMap)> {
    if m < 3 {
        return Err(Error::precondition(format!(
            "a layered graph needs at least 3 layers, got {m}"
        )));
    }
    let mut rest = vec![link.inverse()];
    rest.extend(std::iter::repeat(TfMap::identity(layer.n())).take(m - 2));
    let spec = LayeredSpec::with_completed_links(vec![layer.clone(); m], rest)?;
    let lg = build_layered_graph(&spec.layers)?;
    let t = assemble_tf(&spec, &lg)?;
    Ok((spec, lg, t))
}

/// Builds the layered graph on `m` copies of `layer` and errors naming each
/// check that fails.
pub fn build_counterexample(m: usize, layer: &Graph, link: &TfMap) -> Result<Counterexample> {
    if !layer.is_connected() {
        return Err(Error::precondition("layer is not connected"));
    }
    if !layer.is_vertex_determining() {
        return Err(Error::precondition("layer is not vertex-determining"));
    }
    if link.is_trivial() || !is_tf_automorphism(layer, link)? {
        return Err(Error::precondition(
            "link is not a non-trivial TF-automorphism of the layer",
        ));
    }
    let (spec, layered, tf) = layered_from_link(m, layer, link)?;
    let summary = assess_counterexample(layered.graph(), &tf)?;
    let failed = summary.failed_checks();
    if !failed.is_empty() {
        return Err(Error::Falsified(format!(
            "m = {m} fails: {} (diameter {:?})",
            failed.join(", "),
            summary.diameter
        )));
    }
    Ok(Counterexample {
        spec,
        layered,
        tf,
        summary,
    })
}

/// A non-trivial TF-automorphism to use as the demo link: the parity shift
/// for an even cycle, otherwise the stability certificate.
pub fn default_link(base: &Graph) -> Result<TfMap> {
    let n = base.n();
    if n >= 4 && n % 2 == 0 && *base == Graph::cycle(n) {
        return cycle_parity_shift(n);
    }
    stability_verdict(base, &Limits::default())?
        .tf_certificate
        .ok_or_else(|| Error::precondition("base graph has no non-trivial TF-automorphism"))
}

pub fn demo(m: usize, base: &Graph) -> Result<(LayeredSpec, LayeredGraph, TfMap)> {
    layered_from_link(m, base, &default_link(base)?)
}
