//! Per-graph records over graph6 corpora, and queries over them.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::{parse_graph6_bounded, write_graph6};
use crate::tf::{stability_verdict, tf_group_brute_force, tf_group_via_cover, tf_order_brute_force, TfGroup};
use crate::ztrail::{classify_triangle_image, TriangleImageConfig};
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    /// Zero-based position among the non-blank input lines.
    pub index: usize,
    pub graph6: String,
    pub n: usize,
    pub edge_count: usize,
    pub connected: bool,
    pub bipartite: bool,
    pub vertex_determining: bool,
    pub every_edge_on_triangle: bool,
    pub has_triangle: bool,
    pub aut_order: u128,
    pub cover_aut_order: u128,
    pub tf_order: u128,
    pub unstable_by_definition: bool,
    pub has_nontrivial_tf: bool,
    pub tf_criterion_consistent: bool,
    /// Configurations over every triangle and every non-trivial
    /// TF-automorphism; absent when the TF group is too large to list.
    pub triangle_config_counts: Option<BTreeMap<TriangleImageConfig, u64>>,
}

#[derive(Debug)]
pub struct LineError {
    /// One-based line number in the input.
    pub line: usize,
    pub error: Error,
}

pub type CensusEntry = std::result::Result<CensusRecord, LineError>;

/// Builds the record for one graph. The TF order comes from the exhaustive
/// search when `n` is within the oracle bound and is then required to equal
/// the cover route's answer.
pub fn census_record(index: usize, g: &Graph, limits: &Limits) -> Result<CensusRecord> {
    let report = stability_verdict(g, limits)?;
    let tf_order = if g.n() <= limits.oracle_bound {
        let brute = tf_order_brute_force(g, limits)?;
        if brute != report.tf_order {
            return Err(Error::Falsified(format!(
                "TF order {brute} by exhaustive search but {} via the cover",
                report.tf_order
            )));
        }
        brute
    } else {
        report.tf_order
    };
    let triangles = g.triangles();
    let zero = || TriangleImageConfig::ALL.iter().map(|&c| (c, 0)).collect();
    let triangle_config_counts = if triangles.is_empty() {
        Some(zero())
    } else if tf_order <= limits.enum_cap {
        let group: TfGroup = if g.n() <= limits.oracle_bound {
            tf_group_brute_force(g, limits)?
        } else {
            tf_group_via_cover(g, limits)?
        };
        let mut counts: BTreeMap<TriangleImageConfig, u64> = zero();
        for t in group.nontrivial() {
            for &tri in &triangles {
                *counts.get_mut(&classify_triangle_image(g, t, tri)?.config).unwrap() += 1;
            }
        }
        Some(counts)
    } else {
        None
    };
    Ok(CensusRecord {
        index,
        graph6: write_graph6(g),
        n: g.n(),
        edge_count: g.edge_count(),
        connected: g.is_connected(),
        bipartite: g.is_bipartite(),
        vertex_determining: g.is_vertex_determining(),
        every_edge_on_triangle: g.every_edge_on_triangle(),
        has_triangle: !triangles.is_empty(),
        aut_order: report.aut_order,
        cover_aut_order: report.cover_aut_order,
        tf_order,
        unstable_by_definition: report.unstable_by_definition,
        has_nontrivial_tf: report.has_nontrivial_tf,
        tf_criterion_consistent: report.tf_criterion_consistent,
        triangle_config_counts,
    })
}

/// One entry per non-blank line, in input order. A line that fails to parse
/// or to process yields a `LineError` and the rest carry on.
pub fn run_census(text: &str, limits: &Limits, max_n: usize, jobs: usize) -> Result<Vec<CensusEntry>> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let work = |(index, &(line, s)): (usize, &(usize, &str))| -> CensusEntry {
        parse_graph6_bounded(s, max_n)
            .and_then(|g| census_record(index, &g, limits))
            .map_err(|error| LineError { line, error })
    };
    if jobs <= 1 {
        return Ok(lines.iter().enumerate().map(work).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::precondition(format!("thread pool: {e}")))?;
    Ok(pool.install(|| lines.par_iter().enumerate().map(work).collect()))
}

/// A boolean query over record fields, e.g. `unstable & !bipartite | config:b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Predicate {
    True,
    Field(Field),
    Config(TriangleImageConfig),
    Not(Box<Predicate>),
    And(Box<Predicate>, Box<Predicate>),
    Or(Box<Predicate>, Box<Predicate>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Connected,
    Bipartite,
    VertexDetermining,
    EveryEdgeOnTriangle,
    HasTriangle,
    Unstable,
    HasNontrivialTf,
    TfCriterionConsistent,
}

impl Field {
    fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "connected" => Field::Connected,
            "bipartite" => Field::Bipartite,
            "vertex_determining" => Field::VertexDetermining,
            "every_edge_on_triangle" => Field::EveryEdgeOnTriangle,
            "has_triangle" | "triangle" => Field::HasTriangle,
            "unstable" | "unstable_by_definition" => Field::Unstable,
            "has_nontrivial_tf" | "nontrivial_tf" => Field::HasNontrivialTf,
            "tf_criterion_consistent" | "consistent" => Field::TfCriterionConsistent,
            _ => return None,
        })
    }

    fn get(self, r: &CensusRecord) -> bool {
        match self {
            Field::Connected => r.connected,
            Field::Bipartite => r.bipartite,
            Field::VertexDetermining => r.vertex_determining,
            Field::EveryEdgeOnTriangle => r.every_edge_on_triangle,
            Field::HasTriangle => r.has_triangle,
            Field::Unstable => r.unstable_by_definition,
            Field::HasNontrivialTf => r.has_nontrivial_tf,
            Field::TfCriterionConsistent => r.tf_criterion_consistent,
        }
    }
}

impl Predicate {
    pub fn parse(s: &str) -> Result<Self> {
        let tokens = tokenize(s)?;
        let mut p = Parser { tokens, pos: 0 };
        let e = p.or()?;
        if p.pos != p.tokens.len() {
            return Err(Error::malformed(format!(
                "unexpected '{}' in predicate",
                p.tokens[p.pos]
            )));
        }
        Ok(e)
    }

    pub fn eval(&self, r: &CensusRecord) -> bool {
        match self {
            Predicate::True => true,
            Predicate::Field(f) => f.get(r),
            Predicate::Config(c) => r
                .triangle_config_counts
                .as_ref()
                .is_some_and(|m| m.get(c).copied().unwrap_or(0) > 0),
            Predicate::Not(p) => !p.eval(r),
            Predicate::And(a, b) => a.eval(r) && b.eval(r),
            Predicate::Or(a, b) => a.eval(r) || b.eval(r),
        }
    }
}

fn tokenize(s: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '&' | '|' => {
                chars.next();
                if chars.peek() == Some(&c) {
                    chars.next();
                }
                out.push(c.to_string());
            }
            '!' | '(' | ')' => {
                chars.next();
                out.push(c.to_string());
            }
            c if c.is_ascii_alphanumeric() || c == '_' || c == ':' => {
                let mut word = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' || d == ':' {
                        word.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(match word.as_str() {
                    "and" => "&".into(),
                    "or" => "|".into(),
                    "not" => "!".into(),
                    _ => word,
                });
            }
            other => return Err(Error::malformed(format!("unexpected '{other}' in predicate"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<String>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&str> {
        self.tokens.get(self.pos).map(String::as_str)
    }

    fn or(&mut self) -> Result<Predicate> {
        let mut left = self.and()?;
        while self.peek() == Some("|") {
            self.pos += 1;
            left = Predicate::Or(Box::new(left), Box::new(self.and()?));
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<Predicate> {
        let mut left = self.unary()?;
        while self.peek() == Some("&") {
            self.pos += 1;
            left = Predicate::And(Box::new(left), Box::new(self.unary()?));
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Predicate> {
        let tok = self
            .peek()
            .ok_or_else(|| Error::malformed("predicate ends unexpectedly"))?
            .to_string();
        self.pos += 1;
        match tok.as_str() {
            "!" => Ok(Predicate::Not(Box::new(self.unary()?))),
            "(" => {
                let e = self.or()?;
                if self.peek() != Some(")") {
                    return Err(Error::malformed("missing ')' in predicate"));
                }
                self.pos += 1;
                Ok(e)
            }
            "true" => Ok(Predicate::True),
            "stable" => Ok(Predicate::Not(Box::new(Predicate::Field(Field::Unstable)))),
            word => {
                if let Some(letter) = word.strip_prefix("config:") {
                    let mut cs = letter.chars();
                    return match (cs.next().and_then(TriangleImageConfig::from_letter), cs.next()) {
                        (Some(c), None) => Ok(Predicate::Config(c)),
                        _ => Err(Error::malformed(format!("unknown configuration '{letter}'"))),
                    };
                }
                Field::from_name(word)
                    .map(Predicate::Field)
                    .ok_or_else(|| Error::malformed(format!("unknown field '{word}'")))
            }
        }
    }
}

/// Matching records of least order, then least size, sorted by graph6.
pub fn find_minimal<'a>(records: &'a [CensusRecord], pred: &Predicate) -> Result<Vec<&'a CensusRecord>> {
    if records.is_empty() {
        return Err(Error::precondition("empty corpus"));
    }
    let matching: Vec<&CensusRecord> = records.iter().filter(|r| pred.eval(r)).collect();
    let Some(best) = matching.iter().map(|r| (r.n, r.edge_count)).min() else {
        return Ok(Vec::new());
    };
    let mut out: Vec<&CensusRecord> = matching
        .into_iter()
        .filter(|r| (r.n, r.edge_count) == best)
        .collect();
    out.sort_by(|a, b| a.graph6.cmp(&b.graph6));
    Ok(out)
}
