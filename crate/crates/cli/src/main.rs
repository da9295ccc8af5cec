use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use twofold::census::{find_minimal, run_census, CensusRecord, Predicate};
use twofold::construct::{
    assemble_tf, assess_counterexample, build_layered_graph, demo, verify_construction, LayeredGraph,
    LayeredSpec,
};
use twofold::graph6::{parse_edge_list, parse_graph6_bounded, write_edge_list, write_graph6};
use twofold::tf::{stability_verdict, tf_group_brute_force, tf_group_via_cover};
use twofold::ztrail::{classify_triangle_image, find_image_partner, map_ztrail, ZTrail};
use twofold::{automorphism_group, DoubleCover, Error, Graph, Limits, Permutation, TfMap, VertexLabeling};

#[derive(Parser)]
#[command(name = "twofold", version, about = "Graph stability via two-fold automorphisms")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Largest n for the exhaustive Sym(n) x Sym(n) search.
    #[arg(long, global = true, default_value_t = 7)]
    oracle_bound: usize,
    /// Groups up to this order are listed element by element.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    enum_cap: u128,
    /// Graph text format for input files and graph output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Auto)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for the census.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Reject graphs with more vertices than this.
    #[arg(long, global = true, default_value_t = twofold::graph::DEFAULT_MAX_VERTICES)]
    max_vertices: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Auto,
    G6,
    Edgelist,
}

#[derive(Args)]
struct GraphInput {
    /// File holding the graph; stdin when absent.
    file: Option<PathBuf>,
    /// Graph as a graph6 string.
    #[arg(long, conflicts_with_all = ["file", "named"])]
    g6: Option<String>,
    /// Named graph: cycle:K, path:K, complete:K, empty:K, bipartite:A,B, petersen.
    #[arg(long, conflicts_with = "file")]
    named: Option<String>,
}

#[derive(Args)]
struct PairArgs {
    /// First component of the TF-map, in cycle notation or as an image list.
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    /// Second component of the TF-map.
    #[arg(long, allow_hyphen_values = true)]
    beta: String,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical double cover.
    Cover(GraphInput),
    /// Automorphism group order and generators.
    Aut(GraphInput),
    /// The TF-automorphism group.
    Tf {
        #[command(flatten)]
        input: GraphInput,
        /// Exhaustive search over Sym(n) x Sym(n).
        #[arg(long, conflicts_with = "via_cover")]
        brute_force: bool,
        /// Split the colour-class stabiliser of the double cover (default).
        #[arg(long)]
        via_cover: bool,
    },
    /// Stability report with certificate.
    Stability(GraphInput),
    /// Classify the image of every triangle under a TF-map.
    Triangles {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        pair: PairArgs,
        /// Also locate the structure supplying the rest of each image.
        #[arg(long)]
        partners: bool,
    },
    /// Validate and classify a Z-trail, and optionally map it.
    Ztrail {
        #[command(flatten)]
        input: GraphInput,
        /// Arcs as `u,v` pairs separated by spaces or semicolons.
        #[arg(long)]
        arcs: String,
        #[arg(long, requires = "beta", allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, requires = "alpha", allow_hyphen_values = true)]
        beta: Option<String>,
    },
    /// Build a layered graph and verify its TF-automorphism.
    Construct {
        #[command(subcommand)]
        source: ConstructSource,
        /// Write the layered spec to this file as well.
        #[arg(long)]
        spec_out: Option<PathBuf>,
    },
    /// Census records, one JSON object per line.
    Census {
        /// graph6 corpus; stdin when absent.
        file: Option<PathBuf>,
    },
    /// Records of least order and size matching a predicate.
    FindMinimal {
        /// graph6 corpus, or census output with --records; stdin when absent.
        file: Option<PathBuf>,
        /// e.g. `unstable & has_triangle & config:b`.
        #[arg(long)]
        predicate: String,
        /// Input is census JSON lines rather than graph6.
        #[arg(long)]
        records: bool,
    },
    /// Check a layered graph is a diameter >= 4 counterexample.
    VerifyCounterexample {
        /// Layered spec file; otherwise the demo built from --m and --base.
        #[arg(long, conflicts_with_all = ["m", "base"])]
        spec: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        m: usize,
        #[arg(long, default_value = "cycle:8")]
        base: String,
    },
}

#[derive(Subcommand)]
enum ConstructSource {
    /// Copies of one base graph linked by a non-trivial TF-automorphism of it.
    Demo {
        #[arg(long, default_value_t = 8)]
        m: usize,
        #[arg(long, default_value = "cycle:8")]
        base: String,
    },
    /// A layered spec file.
    File { path: PathBuf },
}

struct Loaded {
    graph: Graph,
    labeling: Option<VertexLabeling>,
}

impl Global {
    fn limits(&self) -> Limits {
        Limits {
            enum_cap: self.enum_cap,
            oracle_bound: self.oracle_bound,
        }
    }

    fn emit(&self, text: &str) -> anyhow::Result<()> {
        match &self.out {
            Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
            None => io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    }

    fn emit_json(&self, v: &Value) -> anyhow::Result<()> {
        self.emit(&format!("{}\n", serde_json::to_string_pretty(v)?))
    }

    fn write_graph(&self, g: &Graph) -> String {
        match self.format {
            Format::Edgelist => write_edge_list(g),
            _ => format!("{}\n", write_graph6(g)),
        }
    }
}

fn read_source(file: Option<&PathBuf>) -> anyhow::Result<String> {
    match file {
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn looks_like_edge_list(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.split_whitespace().count() == 2)
}

fn load(input: &GraphInput, global: &Global) -> anyhow::Result<Loaded> {
    if let Some(s) = &input.g6 {
        return Ok(Loaded {
            graph: parse_graph6_bounded(s.trim(), global.max_vertices)?,
            labeling: None,
        });
    }
    if let Some(s) = &input.named {
        let graph = Graph::named(s)?;
        if graph.n() > global.max_vertices {
            bail!(Error::Malformed(format!("{} vertices is above the bound", graph.n())));
        }
        return Ok(Loaded { graph, labeling: None });
    }
    let text = read_source(input.file.as_ref())?;
    let edge_list = match global.format {
        Format::Edgelist => true,
        Format::G6 => false,
        Format::Auto => looks_like_edge_list(&text),
    };
    if edge_list {
        let lg = parse_edge_list(&text, global.max_vertices)?;
        return Ok(Loaded {
            graph: lg.graph,
            labeling: lg.labeling,
        });
    }
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let line = lines
        .next()
        .ok_or_else(|| Error::Malformed("no graph in input".into()))?;
    if lines.next().is_some() {
        bail!(Error::Malformed("expected a single graph6 line".into()));
    }
    Ok(Loaded {
        graph: parse_graph6_bounded(line, global.max_vertices)?,
        labeling: None,
    })
}

fn perm_json(p: &Permutation, labeling: Option<&VertexLabeling>) -> Value {
    json!({ "images": p.images(), "cycles": p.to_cycle_string(labeling) })
}

fn tf_json(t: &TfMap, labeling: Option<&VertexLabeling>) -> Value {
    json!({ "alpha": perm_json(&t.alpha, labeling), "beta": perm_json(&t.beta, labeling) })
}

fn parse_pair(alpha: &str, beta: &str, loaded: &Loaded) -> anyhow::Result<TfMap> {
    let n = loaded.graph.n();
    let l = loaded.labeling.as_ref();
    Ok(TfMap::new(Permutation::parse(alpha, n, l)?, Permutation::parse(beta, n, l)?)?)
}

fn parse_arcs(s: &str, loaded: &Loaded) -> anyhow::Result<Vec<(usize, usize)>> {
    let resolve = |tok: &str| -> anyhow::Result<usize> {
        if let Some(v) = loaded.labeling.as_ref().and_then(|l| l.index_of(tok)) {
            return Ok(v);
        }
        tok.parse()
            .map_err(|_| anyhow!(Error::Malformed(format!("unknown vertex '{tok}'"))))
    };
    s.split(|c: char| c.is_whitespace() || c == ';')
        .filter(|t| !t.is_empty())
        .map(|pair| {
            let (u, v) = pair
                .trim_matches(|c| c == '(' || c == ')')
                .split_once(',')
                .ok_or_else(|| anyhow!(Error::Malformed(format!("arc '{pair}' is not u,v"))))?;
            Ok((resolve(u.trim())?, resolve(v.trim())?))
        })
        .collect()
}

fn report_json(lg: &LayeredGraph, t: &TfMap) -> anyhow::Result<Value> {
    let report = verify_construction(lg, t)?;
    Ok(json!({
        "report": report,
        "all_pass": report.all_pass(),
        "graph6": write_graph6(lg.graph()),
        "tf": tf_json(t, None),
    }))
}

/// Exit code carried by an error: 1 falsified, 3 cap exceeded, 2 otherwise.
fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::Falsified(_)) => 1,
        Some(Error::CapExceeded(_)) => 3,
        _ => 2,
    }
}

fn code_of(e: &Error) -> u8 {
    match e {
        Error::Falsified(_) => 1,
        Error::CapExceeded(_) => 3,
        _ => 2,
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let g = &cli.global;
    let limits = g.limits();
    match cli.command {
        Command::Cover(input) => {
            let loaded = load(&input, g)?;
            g.emit(&g.write_graph(DoubleCover::build(&loaded.graph).graph()))?;
        }
        Command::Aut(input) => {
            let loaded = load(&input, g)?;
            let group = automorphism_group(&loaded.graph, None, &limits)?;
            let l = loaded.labeling.as_ref();
            g.emit_json(&json!({
                "n": loaded.graph.n(),
                "order": group.order(),
                "generators": group.generators().iter().map(|p| perm_json(p, l)).collect::<Vec<_>>(),
            }))?;
        }
        Command::Tf {
            input,
            brute_force,
            via_cover: _,
        } => {
            let loaded = load(&input, g)?;
            let group = if brute_force {
                tf_group_brute_force(&loaded.graph, &limits)?
            } else {
                tf_group_via_cover(&loaded.graph, &limits)?
            };
            let l = loaded.labeling.as_ref();
            g.emit_json(&json!({
                "method": if brute_force { "brute-force" } else { "via-cover" },
                "order": group.order(),
                "nontrivial": group.nontrivial().count(),
                "elements": group.elements().iter().map(|t| tf_json(t, l)).collect::<Vec<_>>(),
            }))?;
        }
        Command::Stability(input) => {
            let loaded = load(&input, g)?;
            let r = stability_verdict(&loaded.graph, &limits)?;
            let l = loaded.labeling.as_ref();
            let mut v = serde_json::to_value(&r)?;
            v["stable"] = json!(r.is_stable());
            v["tf_certificate"] = r.tf_certificate.as_ref().map_or(Value::Null, |t| tf_json(t, l));
            v["unexpected_automorphism"] = r
                .unexpected_automorphism
                .as_ref()
                .map_or(Value::Null, |p| perm_json(p, None));
            g.emit_json(&v)?;
        }
        Command::Triangles { input, pair, partners } => {
            let loaded = load(&input, g)?;
            let t = parse_pair(&pair.alpha, &pair.beta, &loaded)?;
            let mut rows = Vec::new();
            for tri in loaded.graph.triangles() {
                let img = classify_triangle_image(&loaded.graph, &t, tri)?;
                let mut row = serde_json::to_value(&img)?;
                row["letter"] = json!(img.config.letter().to_string());
                if partners && img.config != twofold::TriangleImageConfig::UndirectedTriangle {
                    row["partner"] = serde_json::to_value(find_image_partner(&loaded.graph, &t, tri)?)?;
                }
                rows.push(row);
            }
            g.emit_json(&json!({ "tf": tf_json(&t, loaded.labeling.as_ref()), "triangles": rows }))?;
        }
        Command::Ztrail { input, arcs, alpha, beta } => {
            let loaded = load(&input, g)?;
            let z = ZTrail::validate_in(&loaded.graph, parse_arcs(&arcs, &loaded)?)?;
            let mut v = json!({
                "arcs": z.arcs(),
                "walk": z.walk(),
                "length": z.len(),
                "closure": z.closure_class(),
            });
            if let (Some(a), Some(b)) = (alpha, beta) {
                let t = parse_pair(&a, &b, &loaded)?;
                let m = map_ztrail(&loaded.graph, &t, &z)?;
                v["image"] = json!({
                    "arcs": m.arcs(),
                    "walk": m.walk(),
                    "length": m.len(),
                    "closure": m.closure_class(),
                    "closure_preserved": m.closure_class() == z.closure_class(),
                });
            }
            g.emit_json(&v)?;
        }
        Command::Construct { source, spec_out } => {
            let (spec, lg, t) = match source {
                ConstructSource::Demo { m, base } => demo(m, &Graph::named(&base)?)?,
                ConstructSource::File { path } => {
                    let spec = LayeredSpec::parse(&read_source(Some(&path))?)?;
                    let lg = build_layered_graph(&spec.layers)?;
                    let t = assemble_tf(&spec, &lg)?;
                    (spec, lg, t)
                }
            };
            if let Some(p) = spec_out {
                fs::write(&p, spec.write()).with_context(|| format!("writing {}", p.display()))?;
            }
            let v = report_json(&lg, &t)?;
            g.emit_json(&v)?;
        }
        Command::Census { file } => {
            let text = read_source(file.as_ref())?;
            let entries = run_census(&text, &limits, g.max_vertices, g.jobs)?;
            let mut out = String::new();
            let mut code = 0u8;
            for e in entries {
                match e {
                    Ok(r) => {
                        out.push_str(&serde_json::to_string(&r)?);
                        out.push('\n');
                    }
                    Err(le) => {
                        eprintln!("line {}: {}", le.line, le.error);
                        code = code.max(code_of(&le.error));
                    }
                }
            }
            g.emit(&out)?;
            return Ok(code);
        }
        Command::FindMinimal { file, predicate, records } => {
            let pred = Predicate::parse(&predicate)?;
            let text = read_source(file.as_ref())?;
            let mut code = 0u8;
            let all: Vec<CensusRecord> = if records {
                text.lines()
                    .filter(|l| !l.trim().is_empty())
                    .enumerate()
                    .map(|(i, l)| {
                        serde_json::from_str(l)
                            .map_err(|e| anyhow!(Error::Malformed(format!("record {}: {e}", i + 1))))
                    })
                    .collect::<anyhow::Result<_>>()?
            } else {
                let mut v = Vec::new();
                for e in run_census(&text, &limits, g.max_vertices, g.jobs)? {
                    match e {
                        Ok(r) => v.push(r),
                        Err(le) => {
                            eprintln!("line {}: {}", le.line, le.error);
                            code = code.max(code_of(&le.error));
                        }
                    }
                }
                v
            };
            let found = find_minimal(&all, &pred)?;
            let mut out = String::new();
            for r in found {
                out.push_str(&serde_json::to_string(r)?);
                out.push('\n');
            }
            g.emit(&out)?;
            return Ok(code);
        }
        Command::VerifyCounterexample { spec, m, base } => {
            let (lg, t) = match spec {
                Some(path) => {
                    let spec = LayeredSpec::parse(&read_source(Some(&path))?)?;
                    let lg = build_layered_graph(&spec.layers)?;
                    let t = assemble_tf(&spec, &lg)?;
                    (lg, t)
                }
                None => {
                    let (_, lg, t) = demo(m, &Graph::named(&base)?)?;
                    (lg, t)
                }
            };
            let summary = assess_counterexample(lg.graph(), &t)?;
            g.emit_json(&json!({
                "summary": summary,
                "failed_checks": summary.failed_checks(),
                "all_pass": summary.all_pass(),
            }))?;
            return Ok(if summary.all_pass() { 0 } else { 1 });
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
