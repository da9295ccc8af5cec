//! Two-fold automorphisms, their groups, and stability verdicts.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::aut::{automorphism_group, colour_class_stabiliser, is_automorphism};
use crate::cover::DoubleCover;
use crate::error::{Error, Result};
use crate::graph::{Arc, Graph};
use crate::perm::{all_permutations, Permutation};
use crate::Limits;

/// A pair of vertex permutations acting on arcs by `(u, v) -> (alpha(u), beta(v))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TfMap {
    pub alpha: Permutation,
    pub beta: Permutation,
}

impl TfMap {
    pub fn new(alpha: Permutation, beta: Permutation) -> Result<Self> {
        if alpha.len() != beta.len() {
            return Err(Error::SizeMismatch {
                expected: alpha.len(),
                actual: beta.len(),
            });
        }
        Ok(TfMap { alpha, beta })
    }

    pub fn identity(n: usize) -> Self {
        TfMap {
            alpha: Permutation::identity(n),
            beta: Permutation::identity(n),
        }
    }

    pub fn diagonal(a: &Permutation) -> Self {
        TfMap {
            alpha: a.clone(),
            beta: a.clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.alpha == self.beta
    }

    /// `(a1, b1)(a2, b2) = (a1 a2, b1 b2)`, right factor applied first.
    pub fn compose(&self, other: &TfMap) -> Result<TfMap> {
        Ok(TfMap {
            alpha: self.alpha.compose(&other.alpha)?,
            beta: self.beta.compose(&other.beta)?,
        })
    }

    pub fn inverse(&self) -> TfMap {
        TfMap {
            alpha: self.alpha.inverse(),
            beta: self.beta.inverse(),
        }
    }

    #[inline]
    pub fn image(&self, (u, v): Arc) -> Arc {
        (self.alpha.apply(u), self.beta.apply(v))
    }

    /// Certificate ordering: smallest `beta` first, then smallest `alpha`,
    /// each compared by its canonical cycle list. Maps of the form
    /// `(alpha, id)` therefore come first.
    pub fn certificate_cmp(&self, other: &TfMap) -> Ordering {
        (self.beta.cycles(), self.alpha.cycles()).cmp(&(other.beta.cycles(), other.alpha.cycles()))
    }
}

/// Whether `(u, v) -> (alpha(u), beta(v))` permutes the arcs of `g`.
pub fn is_tf_automorphism(g: &Graph, t: &TfMap) -> Result<bool> {
    is_tf_isomorphism(g, g, t)
}

/// Whether `t` is a TF-isomorphism from `g` onto `h`.
pub fn is_tf_isomorphism(g: &Graph, h: &Graph, t: &TfMap) -> Result<bool> {
    for (p, graph) in [(&t.alpha, g), (&t.beta, g)] {
        if p.len() != graph.n() {
            return Err(Error::SizeMismatch {
                expected: graph.n(),
                actual: p.len(),
            });
        }
    }
    if g.n() != h.n() {
        return Err(Error::SizeMismatch {
            expected: g.n(),
            actual: h.n(),
        });
    }
    // alpha, beta are bijections, so an injective arc map onto a set of the
    // same size is a bijection.
    Ok(g.edge_count() == h.edge_count()
        && g.arcs().all(|a| {
            let (x, y) = t.image(a);
            h.has_edge(x, y)
        }))
}

/// Splits `sigma` into its actions on the two colour classes.
pub fn extract_tf_from_sigma(dc: &DoubleCover, sigma: &Permutation) -> Result<TfMap> {
    if !is_automorphism(dc.graph(), sigma)? {
        return Err(Error::NotAnAutomorphism(format!(
            "{sigma} is not an automorphism of the double cover"
        )));
    }
    if !dc.preserves_classes(sigma) {
        return Err(Error::precondition(format!(
            "{sigma} does not map V_0 onto itself"
        )));
    }
    Ok(split_sigma(dc, sigma))
}

fn split_sigma(dc: &DoubleCover, sigma: &Permutation) -> TfMap {
    let n = dc.base_n();
    let alpha = (0..n).map(|v| sigma.apply(v)).collect();
    let beta = (0..n).map(|v| sigma.apply(v + n) - n).collect();
    TfMap {
        alpha: Permutation::from_images(alpha).expect("sigma fixes V_0"),
        beta: Permutation::from_images(beta).expect("sigma fixes V_1"),
    }
}

/// The TF-automorphism group of a graph, elements sorted by `(alpha, beta)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TfGroup {
    n: usize,
    elements: Vec<TfMap>,
}

impl TfGroup {
    fn from_unsorted(n: usize, mut elements: Vec<TfMap>) -> Self {
        elements.sort();
        elements.dedup();
        TfGroup { n, elements }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u128 {
        self.elements.len() as u128
    }

    pub fn elements(&self) -> &[TfMap] {
        &self.elements
    }

    pub fn contains(&self, t: &TfMap) -> bool {
        self.elements.binary_search(t).is_ok()
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = &TfMap> {
        self.elements.iter().filter(|t| !t.is_trivial())
    }

    /// Checks identity, inverses and products over all pairs.
    pub fn is_closed(&self) -> bool {
        if !self.contains(&TfMap::identity(self.n)) {
            return false;
        }
        self.elements.iter().all(|a| {
            self.contains(&a.inverse())
                && self
                    .elements
                    .iter()
                    .all(|b| self.contains(&a.compose(b).expect("same size")))
        })
    }
}

/// Every `(alpha, beta)` obtained by splitting an element of the colour-class
/// stabiliser of `B(G)`.
pub fn tf_group_via_cover(g: &Graph, limits: &Limits) -> Result<TfGroup> {
    let dc = DoubleCover::build(g);
    let sigma = colour_class_stabiliser(&dc, limits)?;
    let elements = sigma.elements().ok_or_else(|| {
        Error::CapExceeded(format!(
            "class stabiliser has order {} above the enumeration cap {}",
            sigma.order(),
            limits.enum_cap
        ))
    })?;
    let maps = elements.iter().map(|s| split_sigma(&dc, s)).collect();
    Ok(TfGroup::from_unsorted(g.n(), maps))
}

/// Order of the TF-automorphism group via the cover, without listing elements.
pub fn tf_order_via_cover(g: &Graph) -> Result<u128> {
    let dc = DoubleCover::build(g);
    let no_enum = Limits {
        enum_cap: 0,
        ..Limits::default()
    };
    Ok(colour_class_stabiliser(&dc, &no_enum)?.order())
}

/// Calls `visit` on every pair `(alpha, beta)` in `Sym(n) x Sym(n)` satisfying
/// the arc condition directly; returns how many there were.
///
/// For each `alpha`, `beta` is built one vertex at a time: `beta(v)` must be a
/// vertex whose neighbourhood is `alpha(N(v))`, so a partial `beta` is dropped
/// as soon as one coordinate fails. Nothing here touches the double cover.
pub fn visit_tf_brute_force(
    g: &Graph,
    limits: &Limits,
    mut visit: impl FnMut(&[u32], &[u32]),
) -> Result<u128> {
    let n = g.n();
    if n > limits.oracle_bound || n > 64 {
        return Err(Error::CapExceeded(format!(
            "{n} vertices is above the brute-force bound {}",
            limits.oracle_bound.min(64)
        )));
    }
    let rows: Vec<u64> = (0..n).map(|v| g.row(v)[0]).collect();
    let mut count = 0u128;
    let mut target = vec![0u64; n];
    let mut beta = vec![0u32; n];
    let mut used = vec![false; n];
    for alpha in all_permutations(n) {
        for v in 0..n {
            let mut m = 0u64;
            let mut r = rows[v];
            while r != 0 {
                let x = r.trailing_zeros() as usize;
                r &= r - 1;
                m |= 1u64 << alpha[x];
            }
            target[v] = m;
        }
        extend_beta(0, &rows, &target, &mut beta, &mut used, &mut |b| {
            count += 1;
            visit(&alpha, b);
        });
    }
    Ok(count)
}

fn extend_beta(
    v: usize,
    rows: &[u64],
    target: &[u64],
    beta: &mut [u32],
    used: &mut [bool],
    emit: &mut dyn FnMut(&[u32]),
) {
    if v == rows.len() {
        emit(beta);
        return;
    }
    for w in 0..rows.len() {
        if !used[w] && rows[w] == target[v] {
            used[w] = true;
            beta[v] = w as u32;
            extend_beta(v + 1, rows, target, beta, used, emit);
            used[w] = false;
        }
    }
}

pub fn tf_order_brute_force(g: &Graph, limits: &Limits) -> Result<u128> {
    visit_tf_brute_force(g, limits, |_, _| {})
}

/// The TF-automorphism group by exhaustive search over `Sym(n) x Sym(n)`.
pub fn tf_group_brute_force(g: &Graph, limits: &Limits) -> Result<TfGroup> {
    let order = tf_order_brute_force(g, limits)?;
    if order > limits.enum_cap {
        return Err(Error::CapExceeded(format!(
            "TF group order {order} is above the enumeration cap {}",
            limits.enum_cap
        )));
    }
    let mut elements = Vec::with_capacity(order as usize);
    visit_tf_brute_force(g, limits, |a, b| {
        elements.push(TfMap {
            alpha: Permutation::from_u32(a.to_vec()).expect("permutation"),
            beta: Permutation::from_u32(b.to_vec()).expect("permutation"),
        })
    })?;
    Ok(TfGroup::from_unsorted(g.n(), elements))
}

/// Group orders and verdicts from both the definition of instability and the
/// TF criterion, with certificates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub n: usize,
    pub aut_order: u128,
    pub cover_aut_order: u128,
    pub tf_order: u128,
    /// `|Aut B(G)| > 2 |Aut G|`.
    pub unstable_by_definition: bool,
    /// `|Aut^TF G| > |Aut G|`.
    pub has_nontrivial_tf: bool,
    /// The two verdicts agree.
    pub tf_criterion_consistent: bool,
    pub tf_certificate: Option<TfMap>,
    /// An automorphism of `B(G)` that is not a lift, when no non-trivial
    /// TF-map exists but the cover is still too large.
    pub unexpected_automorphism: Option<Permutation>,
}

impl StabilityReport {
    pub fn is_stable(&self) -> bool {
        !self.unstable_by_definition && !self.has_nontrivial_tf
    }
}

pub fn stability_verdict(g: &Graph, limits: &Limits) -> Result<StabilityReport> {
    let no_enum = Limits {
        enum_cap: 0,
        ..*limits
    };
    let aut_order = automorphism_group(g, None, &no_enum)?.order();
    let dc = DoubleCover::build(g);
    let cover = automorphism_group(dc.graph(), None, &no_enum)?;
    let sigma = colour_class_stabiliser(&dc, limits)?;
    let cover_aut_order = cover.order();
    let tf_order = sigma.order();
    let unstable_by_definition = cover_aut_order > 2 * aut_order;
    let has_nontrivial_tf = tf_order > aut_order;

    let tf_certificate = if has_nontrivial_tf {
        // Without the element list, some generator must still split into a
        // non-trivial pair: the diagonal pairs form a subgroup.
        let pool = sigma.elements().unwrap_or(sigma.generators());
        let best = pool
            .iter()
            .map(|s| split_sigma(&dc, s))
            .filter(|t| !t.is_trivial())
            .min_by(|a, b| a.certificate_cmp(b));
        Some(best.ok_or_else(|| {
            Error::Falsified("TF group exceeds Aut(G) but no non-trivial pair found".into())
        })?)
    } else {
        None
    };

    let unexpected_automorphism = if unstable_by_definition && tf_certificate.is_none() {
        let witness = cover
            .generators()
            .iter()
            .find(|s| !dc.is_expected_lift(s))
            .cloned();
        Some(witness.ok_or_else(|| {
            Error::Falsified("cover group is too large but every generator is a lift".into())
        })?)
    } else {
        None
    };

    Ok(StabilityReport {
        n: g.n(),
        aut_order,
        cover_aut_order,
        tf_order,
        unstable_by_definition,
        has_nontrivial_tf,
        tf_criterion_consistent: unstable_by_definition == has_nontrivial_tf,
        tf_certificate,
        unexpected_automorphism,
    })
}

/// `gamma = alpha beta^-1`.
pub fn anti_automorphism_from_tf(t: &TfMap) -> Permutation {
    t.alpha.compose_unchecked(&t.beta.inverse())
}

/// Whether `{gamma(x), gamma^-1(y)}` is an edge for every arc `(x, y)`.
pub fn is_anti_automorphism(g: &Graph, gamma: &Permutation) -> Result<bool> {
    if gamma.len() != g.n() {
        return Err(Error::SizeMismatch {
            expected: g.n(),
            actual: gamma.len(),
        });
    }
    let inv = gamma.inverse();
    Ok(g.arcs().all(|(x, y)| g.has_edge(gamma.apply(x), inv.apply(y))))
}

/// The non-trivial TF-map `(gamma, gamma^-1)` when `gamma` has order other
/// than 1 or 2.
pub fn instability_from_anti(g: &Graph, gamma: &Permutation) -> Result<Option<TfMap>> {
    if !is_anti_automorphism(g, gamma)? {
        return Err(Error::precondition(format!(
            "{gamma} is not an anti-automorphism"
        )));
    }
    if gamma.order() <= 2 {
        return Ok(None);
    }
    let t = TfMap {
        alpha: gamma.clone(),
        beta: gamma.inverse(),
    };
    if !is_tf_automorphism(g, &t)? {
        return Err(Error::Falsified(format!(
            "({gamma}, {}) does not preserve the arcs",
            t.beta
        )));
    }
    Ok(Some(t))
}

/// All anti-automorphisms, by scanning `Sym(n)`.
pub fn anti_automorphisms_brute_force(g: &Graph, limits: &Limits) -> Result<Vec<Permutation>> {
    if g.n() > limits.oracle_bound {
        return Err(Error::CapExceeded(format!(
            "{} vertices is above the brute-force bound {}",
            g.n(),
            limits.oracle_bound
        )));
    }
    let mut out = Vec::new();
    for images in all_permutations(g.n()) {
        let gamma = Permutation::from_u32(images).expect("permutation");
        if is_anti_automorphism(g, &gamma)? {
            out.push(gamma);
        }
    }
    Ok(out)
}

/// A non-trivial TF-automorphism that a vertex-determining graph cannot have.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub map: TfMap,
    pub both_automorphisms: bool,
    pub alpha_order: u128,
    pub beta_order: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum VertexDeterminingCheck {
    /// The graph has twins, so nothing is constrained.
    NotApplicable,
    Checked { violations: Vec<Violation> },
}

impl VertexDeterminingCheck {
    pub fn violations(&self) -> &[Violation] {
        match self {
            VertexDeterminingCheck::NotApplicable => &[],
            VertexDeterminingCheck::Checked { violations } => violations,
        }
    }
}

/// In a twin-free graph no non-trivial TF-automorphism has both components
/// automorphisms, and the two components have equal order. Lists every
/// element of `tf` breaking either rule.
pub fn check_vertex_determining_constraints(g: &Graph, tf: &TfGroup) -> Result<VertexDeterminingCheck> {
    if !g.is_vertex_determining() {
        return Ok(VertexDeterminingCheck::NotApplicable);
    }
    let mut violations = Vec::new();
    for t in tf.nontrivial() {
        let both = is_automorphism(g, &t.alpha)? && is_automorphism(g, &t.beta)?;
        let (oa, ob) = (t.alpha.order(), t.beta.order());
        if both || oa != ob {
            violations.push(Violation {
                map: t.clone(),
                both_automorphisms: both,
                alpha_order: oa,
                beta_order: ob,
            });
        }
    }
    Ok(VertexDeterminingCheck::Checked { violations })
}

/// For `C_n` with even `n`: `alpha` adds 2 on even vertices and fixes odd
/// ones, `beta` adds 2 on odd vertices and fixes even ones.
pub fn cycle_parity_shift(n: usize) -> Result<TfMap> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::precondition("parity shift needs an even cycle of length at least 4"));
    }
    let alpha = (0..n).map(|v| if v % 2 == 0 { (v + 2) % n } else { v }).collect();
    let beta = (0..n).map(|v| if v % 2 == 1 { (v + 2) % n } else { v }).collect();
    TfMap::new(Permutation::from_images(alpha)?, Permutation::from_images(beta)?)
}
