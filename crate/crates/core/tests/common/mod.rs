#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::Rng;
use twofold::graph6::parse_graph6;
use twofold::{Arc, Graph, ZTrail};

/// Every graph on `n` vertices, one per isomorphism class.
pub fn corpus(n: usize) -> Vec<Graph> {
    corpus_lines(n).iter().map(|l| parse_graph6(l).unwrap()).collect()
}

pub fn corpus_lines(n: usize) -> Vec<String> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("graphs_n{n}.g6"));
    std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{}: {e}", path.display()))
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.trim().to_string())
        .collect()
}

pub fn corpus_range(lo: usize, hi: usize) -> Vec<Graph> {
    (lo..=hi).flat_map(corpus).collect()
}

/// Prints the one-line verdict for an acceptance criterion.
pub fn verdict(id: u32, name: &str, pass: bool, detail: &str) {
    println!(
        "criterion {id:>2} [{}] {name}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

/// A random alternating trail in `g`: a walk whose steps alternate between
/// following an arc forwards and backwards, never reusing an arc. Stops at a
/// random length, or only when stuck if `maximal` is set.
pub fn random_ztrail<R: Rng>(g: &Graph, rng: &mut R, maximal: bool) -> Option<ZTrail> {
    let arcs: Vec<Arc> = g.arcs().collect();
    let &(u, v) = arcs.choose(rng)?;
    let target = if maximal {
        usize::MAX
    } else {
        rng.gen_range(1..=arcs.len())
    };
    let first_forward = rng.gen_bool(0.5);
    let (mut cur, first) = if first_forward { (v, (u, v)) } else { (u, (u, v)) };
    let mut used: BTreeSet<Arc> = BTreeSet::from([first]);
    let mut trail = vec![first];
    // the step after a forward arc goes backward and vice versa
    let mut forward = !first_forward;
    while trail.len() < target {
        let options: Vec<Arc> = g
            .neighborhood(cur)
            .into_iter()
            .map(|w| if forward { (cur, w) } else { (w, cur) })
            .filter(|a| !used.contains(a))
            .collect();
        let Some(&next) = options.choose(rng) else {
            break;
        };
        used.insert(next);
        trail.push(next);
        cur = if forward { next.1 } else { next.0 };
        forward = !forward;
    }
    Some(ZTrail::validate(trail).expect("generator builds alternating trails"))
}
