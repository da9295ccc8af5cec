//! Acceptance criteria, one test each. Every test prints a single
//! `criterion NN [PASS|FAIL]` line; run with `--nocapture` to see them.

mod common;

use std::collections::BTreeMap;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::{corpus, corpus_lines, corpus_range, random_ztrail, verdict};
use twofold::construct::{build_layered_graph, demo, verify_construction};
use twofold::graph6::{parse_graph6, write_graph6};
use twofold::tf::{
    anti_automorphisms_brute_force, check_vertex_determining_constraints, extract_tf_from_sigma,
    instability_from_anti, stability_verdict, tf_group_brute_force, tf_group_via_cover,
    tf_order_brute_force,
};
use twofold::ztrail::{classify_triangle_image, map_ztrail, triangle_to_ztrails};
use twofold::{
    automorphism_group, ClosureClass, DoubleCover, Graph, Limits, Permutation, TriangleImageConfig,
    VertexLabeling,
};

fn no_enum() -> Limits {
    Limits {
        enum_cap: 0,
        ..Limits::default()
    }
}

fn connected_non_bipartite(lo: usize, hi: usize) -> Vec<Graph> {
    corpus_range(lo, hi)
        .into_iter()
        .filter(|g| g.is_connected() && !g.is_bipartite())
        .collect()
}

#[test]
fn criterion_01_cover_order_is_twice_tf_order() {
    let start = Instant::now();
    let graphs = connected_non_bipartite(3, 7);
    let mut failures = Vec::new();
    for g in &graphs {
        let dc = DoubleCover::build(g);
        let cover = automorphism_group(dc.graph(), None, &no_enum()).unwrap().order();
        let tf = tf_order_brute_force(g, &Limits::default()).unwrap();
        if cover != 2 * tf {
            failures.push(write_graph6(g));
        }
    }
    let pass = failures.is_empty();
    verdict(
        1,
        "|Aut B(G)| = 2 |Aut^TF G|",
        pass,
        &format!(
            "{} connected non-bipartite graphs, 3 <= n <= 7, {} exceptions, {:.1?}",
            graphs.len(),
            failures.len(),
            start.elapsed()
        ),
    );
    assert!(pass, "exceptions: {failures:?}");
}

#[test]
fn criterion_02_instability_iff_nontrivial_tf() {
    let graphs = connected_non_bipartite(3, 7);
    let limits = Limits::default();
    let mut failures = Vec::new();
    let mut unstable = 0;
    for g in &graphs {
        let r = stability_verdict(g, &no_enum()).unwrap();
        let brute_nontrivial = tf_order_brute_force(g, &limits).unwrap() > r.aut_order;
        unstable += r.unstable_by_definition as usize;
        if r.unstable_by_definition != r.has_nontrivial_tf || brute_nontrivial != r.has_nontrivial_tf {
            failures.push(write_graph6(g));
        }
    }
    let k2 = stability_verdict(&Graph::complete(2), &limits).unwrap();
    let k2_brute = tf_group_brute_force(&Graph::complete(2), &limits).unwrap();
    let k2_ok = k2.unstable_by_definition
        && !k2.has_nontrivial_tf
        && k2_brute.nontrivial().count() == 0
        && k2.cover_aut_order == 8;
    let pass = failures.is_empty() && k2_ok;
    verdict(
        2,
        "unstable <=> non-trivial TF-automorphism",
        pass,
        &format!(
            "{} graphs ({} unstable), {} exceptions; K2 unstable without non-trivial TF: {}",
            graphs.len(),
            unstable,
            failures.len(),
            k2_ok
        ),
    );
    assert!(pass, "exceptions: {failures:?}");
}

#[test]
fn criterion_03_brute_force_equals_cover_route() {
    let start = Instant::now();
    let limits = Limits::default();
    let graphs: Vec<Graph> = corpus_range(3, 6).into_iter().filter(|g| g.is_connected()).collect();
    let mut failures = Vec::new();
    let mut elements = 0u128;
    for g in &graphs {
        let brute = tf_group_brute_force(g, &limits).unwrap();
        let cover = tf_group_via_cover(g, &limits).unwrap();
        elements += brute.order();
        if brute != cover {
            failures.push(write_graph6(g));
        }
    }
    let pass = failures.is_empty();
    verdict(
        3,
        "exhaustive TF group = cover TF group",
        pass,
        &format!(
            "{} connected graphs, 3 <= n <= 6, {} TF-maps compared, {} mismatches, {:.1?}",
            graphs.len(),
            elements,
            failures.len(),
            start.elapsed()
        ),
    );
    assert!(pass, "mismatches: {failures:?}");
}

#[test]
fn criterion_04_petersen_is_stable() {
    let start = Instant::now();
    let r = stability_verdict(&Graph::petersen(), &Limits::default()).unwrap();
    let elapsed = start.elapsed();
    let pass = r.is_stable()
        && r.aut_order == 120
        && r.cover_aut_order == 240
        && r.tf_order == 120
        && elapsed.as_secs_f64() < 5.0;
    verdict(
        4,
        "Petersen graph stable",
        pass,
        &format!(
            "aut {}, cover {}, tf {}, stable {}, {:.1?}",
            r.aut_order,
            r.cover_aut_order,
            r.tf_order,
            r.is_stable(),
            elapsed
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_05_sigma_splits_into_the_quoted_pair() {
    let names: Vec<String> = ["a", "b", "c", "d", "e"].iter().map(|s| s.to_string()).collect();
    let labels = VertexLabeling::new(names).unwrap();
    let g = Graph::path(5);
    let dc = DoubleCover::build(&g);
    let v = |name: &str, colour: u8| dc.index(labels.index_of(name).unwrap(), colour);
    let sigma = Permutation::from_cycles(10, &[&[v("a", 1), v("e", 1)], &[v("b", 0), v("d", 0)]]).unwrap();
    let t = extract_tf_from_sigma(&dc, &sigma).unwrap();
    let alpha = t.alpha.to_cycle_string(Some(&labels));
    let beta = t.beta.to_cycle_string(Some(&labels));
    let pass = alpha == "(b d)" && beta == "(a e)";
    verdict(5, "sigma splits into (b d), (a e)", pass, &format!("alpha = {alpha}, beta = {beta}"));
    assert!(pass);
}

#[test]
fn criterion_06_every_triangle_image_is_classified() {
    let limits = Limits::default();
    let mut counts: BTreeMap<TriangleImageConfig, u64> = BTreeMap::new();
    let mut unclassified = Vec::new();
    let mut graphs = 0;
    for g in corpus_range(3, 6) {
        let triangles = g.triangles();
        if triangles.is_empty() {
            continue;
        }
        graphs += 1;
        let tf = tf_group_brute_force(&g, &limits).unwrap();
        for t in tf.nontrivial() {
            for &tri in &triangles {
                match classify_triangle_image(&g, t, tri) {
                    Ok(img) => *counts.entry(img.config).or_default() += 1,
                    Err(e) => unclassified.push(format!("{} {tri:?}: {e}", write_graph6(&g))),
                }
            }
        }
    }
    let pass = unclassified.is_empty();
    let summary: Vec<String> = counts.iter().map(|(c, k)| format!("({}) {k}", c.letter())).collect();
    verdict(
        6,
        "triangle images fall in exactly one configuration",
        pass,
        &format!(
            "{graphs} graphs with triangles, n <= 6; {}; {} unclassified",
            summary.join(", "),
            unclassified.len()
        ),
    );
    assert!(pass, "{unclassified:?}");
}

#[test]
fn criterion_07_vertex_determining_constraints() {
    let limits = Limits::default();
    let mut checked = 0;
    let mut violations = Vec::new();
    for g in corpus_range(1, 7) {
        if !g.is_vertex_determining() {
            continue;
        }
        let tf = tf_group_via_cover(&g, &limits).unwrap();
        if tf.nontrivial().next().is_none() {
            continue;
        }
        checked += 1;
        let report = check_vertex_determining_constraints(&g, &tf).unwrap();
        if !report.violations().is_empty() {
            violations.push(write_graph6(&g));
        }
    }
    let pass = violations.is_empty();
    verdict(
        7,
        "twin-free graphs: no non-trivial pair of automorphisms, equal orders",
        pass,
        &format!("{checked} vertex-determining graphs with non-trivial TF-maps, n <= 7, {} with violations", violations.len()),
    );
    assert!(pass, "{violations:?}");
}

#[test]
#[ignore = "unattainable: graphs with twins such as P3 are unstable but have no anti-automorphism of order above 2"]
fn criterion_08_anti_automorphism_criterion() {
    let limits = Limits::default();
    let c4 = Graph::cycle(4);
    let rot = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
    let fixture = instability_from_anti(&c4, &rot).unwrap();
    let fixture_ok = fixture.as_ref().is_some_and(|t| {
        t.alpha.to_cycle_string(None) == "(0 1 2 3)" && t.beta.to_cycle_string(None) == "(0 3 2 1)"
    });
    let mut graphs = 0;
    let mut mismatches = Vec::new();
    let mut in_connected_non_bipartite = 0;
    for g in corpus_range(1, 6) {
        graphs += 1;
        let anti = anti_automorphisms_brute_force(&g, &limits).unwrap();
        let high_order = anti.iter().any(|p| p.order() > 2);
        let nontrivial = stability_verdict(&g, &no_enum()).unwrap().has_nontrivial_tf;
        if high_order != nontrivial {
            in_connected_non_bipartite += (g.is_connected() && !g.is_bipartite()) as usize;
            mismatches.push(format!("{} (anti>2: {high_order}, non-trivial TF: {nontrivial})", write_graph6(&g)));
        }
    }
    let pass = fixture_ok && mismatches.is_empty();
    verdict(
        8,
        "anti-automorphism of order > 2 <=> non-trivial TF-automorphism",
        pass,
        &format!(
            "C4 rotation fixture {}; {graphs} graphs n <= 6, {} mismatches ({} connected non-bipartite), first: {:?}",
            if fixture_ok { "ok" } else { "wrong" },
            mismatches.len(),
            in_connected_non_bipartite,
            mismatches.first()
        ),
    );
    assert!(pass, "{:?}", &mismatches[..mismatches.len().min(5)]);
}

#[test]
fn criterion_09_layered_demo() {
    let start = Instant::now();
    let (_, lg, t) = demo(8, &Graph::cycle(8)).unwrap();
    let r8 = verify_construction(&lg, &t).unwrap();
    let ok8 = r8.vertices == 64
        && r8.tf_valid
        && r8.tf_nontrivial
        && r8.diameter == Some(4)
        && r8.every_edge_on_triangle
        && lg.graph().is_vertex_determining();
    let elapsed = start.elapsed();
    let (_, lg7, t7) = demo(7, &Graph::cycle(8)).unwrap();
    let r7 = verify_construction(&lg7, &t7).unwrap();
    let ok7 = r7.diameter == Some(3) && !r7.printed_formula_matches && r7.derived_formula_matches;
    let pass = ok8 && ok7 && elapsed.as_secs_f64() < 10.0;
    verdict(
        9,
        "layered demo on eight octagons",
        pass,
        &format!(
            "m=8: 64 vertices, TF valid {}, diameter {:?}, triangles {}, twin-free {}, {:.1?}; m=7: diameter {:?}, printed (m+e)/2 = {} flagged",
            r8.tf_valid,
            r8.diameter,
            r8.every_edge_on_triangle,
            lg.graph().is_vertex_determining(),
            elapsed,
            r7.diameter,
            r7.printed_formula
        ),
    );
    assert!(pass, "{r8:?} {r7:?}");
}

#[test]
fn criterion_10_diameter_law() {
    let layers = [
        ("K2", Graph::complete(2)),
        ("P3", Graph::path(3)),
        ("C4", Graph::cycle(4)),
        ("C8", Graph::cycle(8)),
    ];
    let mut cases = 0;
    let mut failures = Vec::new();
    for m in 4..=12 {
        for (name, h) in &layers {
            cases += 1;
            let lg = build_layered_graph(&vec![h.clone(); m]).unwrap();
            let d = lg.graph().diameter().finite();
            if d != Some(m / 2) {
                failures.push(format!("m={m} {name}: {d:?}"));
            }
        }
    }
    let pass = failures.is_empty();
    verdict(
        10,
        "BFS diameter = floor(m/2)",
        pass,
        &format!("{cases} layered graphs, m in 4..=12, layers K2 P3 C4 C8, {} failures", failures.len()),
    );
    assert!(pass, "{failures:?}");
}

#[test]
#[ignore = "unattainable: a semi-closed trail through a vertex where alpha and beta differ maps to an open trail"]
fn criterion_11_ztrail_invariance() {
    let limits = Limits::default();
    let mut rng = StdRng::seed_from_u64(0x2f01d);
    let mut mapped = 0u64;
    let mut class_changes: BTreeMap<(ClosureClass, ClosureClass), u64> = BTreeMap::new();
    let mut length_changes = 0u64;
    let mut parity_violations = 0u64;
    let parity_ok = |z: &twofold::ZTrail| match z.closure_class() {
        ClosureClass::SemiClosed => z.len() % 2 == 1,
        ClosureClass::Closed => z.len() % 2 == 0,
        ClosureClass::Open => true,
    };
    for g in corpus_range(1, 6) {
        if g.edge_count() == 0 {
            continue;
        }
        let mut trails: Vec<twofold::ZTrail> = (0..100)
            .map(|i| random_ztrail(&g, &mut rng, i % 2 == 0).unwrap())
            .collect();
        for tri in g.triangles() {
            trails.extend(triangle_to_ztrails(&g, tri).unwrap());
        }
        let tf = tf_group_brute_force(&g, &limits).unwrap();
        for t in tf.elements() {
            for z in &trails {
                let image = map_ztrail(&g, t, z).unwrap();
                mapped += 1;
                parity_violations += (!parity_ok(z)) as u64 + (!parity_ok(&image)) as u64;
                length_changes += (image.len() != z.len()) as u64;
                if image.closure_class() != z.closure_class() {
                    *class_changes.entry((z.closure_class(), image.closure_class())).or_default() += 1;
                }
            }
        }
    }
    let changed: u64 = class_changes.values().sum();
    let pass = changed == 0 && length_changes == 0 && parity_violations == 0;
    verdict(
        11,
        "Z-trail closure class and length preserved by TF-maps",
        pass,
        &format!(
            "{mapped} trail images, n <= 6; {changed} class changes {class_changes:?}, {length_changes} length changes, {parity_violations} parity violations"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_12_graph6_roundtrip() {
    let mut corpus_count = 0;
    let mut failures = 0;
    for n in 1..=7 {
        for line in corpus_lines(n) {
            corpus_count += 1;
            let g = parse_graph6(&line).unwrap();
            if write_graph6(&g) != line || g.n() != n {
                failures += 1;
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(12);
    for _ in 0..10_000 {
        let n = rng.gen_range(0..=100);
        let p: f64 = rng.gen();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edge_list(n, &edges).unwrap();
        let s = write_graph6(&g);
        let back = parse_graph6(&s).unwrap();
        if back != g || write_graph6(&back) != s {
            failures += 1;
        }
    }
    let pass = failures == 0 && corpus_count == 1 + 2 + 4 + 11 + 34 + 156 + 1044;
    verdict(
        12,
        "graph6 round trip",
        pass,
        &format!("{corpus_count} corpus graphs n <= 7 and 10000 random graphs n <= 100, {failures} failures"),
    );
    assert!(pass);
}

#[test]
fn corpus_sizes() {
    let sizes: Vec<usize> = (1..=7).map(|n| corpus(n).len()).collect();
    assert_eq!(sizes, vec![1, 2, 4, 11, 34, 156, 1044]);
}
