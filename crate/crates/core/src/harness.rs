//! Named verification claims, their reports, and the witness checker used
//! by the `distk` tool.
//!
//! Each claim evaluates one row per `n`. Rows whose value comes from
//! graphs persist those graphs as graph6 so that [`certify`] can re-derive
//! the value without trusting the report.

use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{json, Value};

use crate::canon::{canonical_form, is_isomorphic};
use crate::clique::clique_number;
use crate::constructions::{ex2_bound, ex3_bound, kp_nonbipartite_bound, ConstructionSpec};
use crate::distance::{distance_k_edge_count, distance_k_graph};
use crate::error::SearchError;
use crate::graph::Graph;
use crate::graph6;
use crate::search::{
    characterize_with, solve_nonbipartite_triangle_free_with, solve_with, SearchProblem, SolveOptions,
};

/// Exact `ex₃(8, K₃)`, recorded from the first verified exhaustive run and
/// confirmed by brute force over all labelled graphs.
pub const EX3_N8: usize = 9;

/// Environment variable overriding the worker count.
pub const THREADS_ENV: &str = "DISTK_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Claim {
    Ex2Formula,
    Ex2Characterization,
    Ex3LowerBound,
    Ex3NonIsomorphic,
    Ex3N8Exception,
    Ex3SmallN,
    NonbipartiteBound,
}

impl Claim {
    pub const ALL: [Claim; 7] = [
        Claim::Ex2Formula,
        Claim::Ex2Characterization,
        Claim::Ex3LowerBound,
        Claim::Ex3NonIsomorphic,
        Claim::Ex3N8Exception,
        Claim::Ex3SmallN,
        Claim::NonbipartiteBound,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::Ex2Formula => "ex2-formula",
            Claim::Ex2Characterization => "ex2-characterization",
            Claim::Ex3LowerBound => "ex3-lower-bound",
            Claim::Ex3NonIsomorphic => "ex3-noniso",
            Claim::Ex3N8Exception => "ex3-n8-exception",
            Claim::Ex3SmallN => "ex3-small-n",
            Claim::NonbipartiteBound => "nonbipartite-bound",
        }
    }

    pub fn parse(id: &str) -> Option<Claim> {
        Claim::ALL.into_iter().find(|c| c.id() == id)
    }

    pub fn default_range(self) -> Vec<usize> {
        match self {
            Claim::Ex2Formula => (5..=9).collect(),
            Claim::Ex2Characterization | Claim::NonbipartiteBound => (5..=8).collect(),
            Claim::Ex3LowerBound => (5..=12).collect(),
            Claim::Ex3NonIsomorphic => vec![9],
            Claim::Ex3N8Exception => vec![8],
            Claim::Ex3SmallN => vec![4, 5, 6, 7, 9],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub n: usize,
    pub computed: Value,
    pub expected: Value,
    #[serde(rename = "match")]
    pub matches: bool,
    /// Distance and clique bound under which the witnesses certify the
    /// computed value.
    pub k: usize,
    pub t: usize,
    pub witnesses_path: Option<String>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub tool_version: String,
    pub timestamp: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub claim_id: String,
    pub n_range: Vec<usize>,
    pub rows: Vec<Row>,
    pub overall: String,
    pub provenance: Provenance,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.overall == "pass"
    }

    /// One line per row: `claim_id,n,computed,expected,match,witnesses_path`.
    pub fn to_csv(&self) -> Result<String, SearchError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| SearchError::Io(e.into());
        w.write_record(["claim_id", "n", "computed", "expected", "match", "witnesses_path"]).map_err(io)?;
        for row in &self.rows {
            w.write_record([
                self.claim_id.clone(),
                row.n.to_string(),
                plain(&row.computed),
                plain(&row.expected),
                row.matches.to_string(),
                row.witnesses_path.clone().unwrap_or_default(),
            ])
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| SearchError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Solver options with the worker count taken from [`THREADS_ENV`].
pub fn options_from_env() -> SolveOptions {
    let threads = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse().ok()).filter(|&t| t > 0);
    SolveOptions { threads, ..SolveOptions::default() }
}

/// Where a verification run writes witness files.
#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub solve: SolveOptions,
    pub witness_dir: Option<PathBuf>,
}

fn write_witnesses(
    dir: Option<&Path>,
    claim: Claim,
    n: usize,
    graphs: impl IntoIterator<Item = String>,
) -> Result<Option<String>, SearchError> {
    let Some(dir) = dir else { return Ok(None) };
    fs::create_dir_all(dir)?;
    let path = dir.join(format!("{}-n{n}.g6", claim.id()));
    let mut text = String::new();
    for line in graphs {
        text.push_str(&line);
        text.push('\n');
    }
    fs::write(&path, text)?;
    Ok(Some(path.display().to_string()))
}

/// Distance-3 lower-bound constructions for `n`: every balanced double
/// broom orientation and the spiders with legs of length at most two and
/// `⌊n/2⌋` or `⌈n/2⌉` legs.
pub fn ex3_constructions(n: usize) -> Result<Vec<ConstructionSpec>, SearchError> {
    let mut specs = Vec::new();
    let leaves = n
        .checked_sub(2)
        .filter(|&l| l >= 2)
        .ok_or_else(|| SearchError::InvalidProblem(format!("distance-3 constructions need n >= 4 (got {n})")))?;
    let (a, b) = (leaves / 2, leaves - leaves / 2);
    specs.push(ConstructionSpec::DoubleBroom { n, k: 3, a, b });
    if a != b {
        specs.push(ConstructionSpec::DoubleBroom { n, k: 3, a: b, b: a });
    }
    let mut legs = vec![n / 2];
    if n % 2 == 1 {
        legs.push(n / 2 + 1);
    }
    for l in legs {
        let spec = ConstructionSpec::spider_round_robin(n, l)?;
        if let ConstructionSpec::Spider { attachment_counts, .. } = &spec {
            if attachment_counts.iter().all(|&c| c <= 1) {
                specs.push(spec);
            }
        }
    }
    for s in &specs {
        s.validate()?;
    }
    Ok(specs)
}

fn row(n: usize, k: usize, computed: Value, expected: Value, matches: bool) -> Row {
    Row { n, computed, expected, matches, k, t: 2, witnesses_path: None, note: None }
}

fn verify_row(claim: Claim, n: usize, opts: &VerifyOptions) -> Result<Row, SearchError> {
    let dir = opts.witness_dir.as_deref();
    let r = match claim {
        Claim::Ex2Formula => {
            let expected = ex2_bound(n as u64)?;
            let out = solve_with(&SearchProblem::new(n, 2, 2), &opts.solve)?;
            let mut r = row(n, 2, json!(out.optimum), json!(expected), out.optimum as u64 == expected);
            r.witnesses_path = write_witnesses(dir, claim, n, out.witness_g6())?;
            r
        }
        Claim::Ex2Characterization => {
            let c = characterize_with(n, &opts.solve)?;
            let found: Vec<String> = c.found.iter().map(|f| f.graph6().to_owned()).collect();
            let family: Vec<String> = c.family.iter().map(|f| f.graph6().to_owned()).collect();
            let mut r = row(n, 2, json!(found), json!(family), c.equal() && c.optimum as u64 == c.formula_value);
            r.note = Some(format!(
                "optimum {}, {} extremal classes, {} family classes",
                c.optimum,
                c.found.len(),
                c.family.len()
            ));
            r.witnesses_path = write_witnesses(dir, claim, n, found)?;
            r
        }
        Claim::Ex3LowerBound => {
            let expected = ex3_bound(n as u64)?.value as usize;
            let mut values = Vec::new();
            let mut lines = Vec::new();
            let mut ok = true;
            for spec in ex3_constructions(n)? {
                let g = spec.build()?;
                let g3 = distance_k_graph(&g, 3)?;
                let edges = g3.edge_count();
                ok &= edges == expected && g3.is_triangle_free();
                values.push(
                    json!({ "variant": spec.variant_name(), "edges": edges, "triangle_free": g3.is_triangle_free() }),
                );
                lines.push(graph6::emit(&g));
            }
            let mut r = row(n, 3, Value::Array(values), json!(expected), ok);
            r.witnesses_path = write_witnesses(dir, claim, n, lines)?;
            r
        }
        Claim::Ex3NonIsomorphic => {
            let broom = ConstructionSpec::balanced_double_broom(n, 3)?.build()?;
            let spider = ConstructionSpec::spider_round_robin(n, n / 2)?.build()?;
            let (b3, s3) = (distance_k_graph(&broom, 3)?, distance_k_graph(&spider, 3)?);
            let iso = is_isomorphic(&b3, &s3);
            let expected_edges = ex3_bound(n as u64)?.value as usize;
            let ok = !iso && b3.edge_count() == expected_edges && s3.edge_count() == expected_edges;
            let mut r = row(
                n,
                3,
                json!({ "double_broom_edges": b3.edge_count(), "spider_edges": s3.edge_count(), "isomorphic": iso }),
                json!({ "double_broom_edges": expected_edges, "spider_edges": expected_edges, "isomorphic": false }),
                ok,
            );
            r.witnesses_path = write_witnesses(dir, claim, n, [graph6::emit(&broom), graph6::emit(&spider)])?;
            r
        }
        Claim::Ex3N8Exception => {
            if n != 8 {
                return Err(SearchError::InvalidProblem(format!("{} is defined for n = 8 only", claim.id())));
            }
            let bound = ex3_bound(8)?.value as usize;
            let out = solve_with(&SearchProblem::new(8, 3, 2), &opts.solve)?;
            let mut r = row(n, 3, json!(out.optimum), json!(format!("> {bound}")), out.optimum > bound);
            r.note = Some(format!(
                "exact value {} over {} extremal classes; recorded constant {EX3_N8}",
                out.optimum,
                out.extremal.len()
            ));
            r.witnesses_path = write_witnesses(dir, claim, n, out.witness_g6())?;
            r
        }
        Claim::Ex3SmallN => {
            if n == 8 {
                return Err(SearchError::InvalidProblem("n = 8 is excluded here; see ex3-n8-exception".into()));
            }
            let expected = ex3_bound(n as u64)?.value as usize;
            let out = solve_with(&SearchProblem::new(n, 3, 2), &opts.solve)?;
            let mut r = row(n, 3, json!(out.optimum), json!(expected), out.optimum == expected);
            if !ex3_bound(n as u64)?.proven {
                r.note = Some("below the proven range; conjectured value".into());
            }
            r.witnesses_path = write_witnesses(dir, claim, n, out.witness_g6())?;
            r
        }
        Claim::NonbipartiteBound => {
            let expected = kp_nonbipartite_bound(n as u64)?;
            let out = solve_nonbipartite_triangle_free_with(n, &opts.solve)?;
            let mut ok = out.optimum as u64 == expected;
            if n == 5 {
                let c5 = canonical_form(&Graph::cycle(5)?);
                ok &= out.extremal == [c5];
            }
            let mut r = row(n, 1, json!(out.optimum), json!(expected), ok);
            r.note = Some(format!("{} extremal classes", out.extremal.len()));
            r.witnesses_path = write_witnesses(dir, claim, n, out.witness_g6())?;
            r
        }
    };
    Ok(r)
}

/// Runs `claim` for every `n` in `range` (the claim's default when empty).
pub fn verify(claim: Claim, range: &[usize], opts: &VerifyOptions) -> Result<VerificationReport, SearchError> {
    let n_range = if range.is_empty() { claim.default_range() } else { range.to_vec() };
    let rows = n_range.iter().map(|&n| verify_row(claim, n, opts)).collect::<Result<Vec<_>, _>>()?;
    let overall = if rows.iter().all(|r| r.matches) { "pass" } else { "fail" };
    Ok(VerificationReport {
        claim_id: claim.id().to_owned(),
        n_range,
        rows,
        overall: overall.to_owned(),
        provenance: Provenance {
            tool_version: env!("CARGO_PKG_VERSION").to_owned(),
            timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
        },
    })
}

/// Verdict for one graph given to [`certify`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub line: usize,
    pub clique_number: usize,
    pub edges: usize,
    pub pass: bool,
}

/// Checks `ω(G_k) <= t` and `|E(G_k)| = claim` for every graph in a graph6
/// stream.
pub fn certify<R: BufRead>(reader: R, k: usize, t: usize, claim: usize) -> Result<Vec<Certificate>, SearchError> {
    if k == 0 {
        return Err(SearchError::InvalidProblem("k must be at least 1".into()));
    }
    let mut out = Vec::new();
    for item in crate::search::ingest_graph6_stream(reader, false) {
        let item = item?;
        let gk = distance_k_graph(&item.graph, k)?;
        let omega = clique_number(&gk);
        let edges = gk.edge_count();
        out.push(Certificate { line: item.line, clique_number: omega, edges, pass: omega <= t && edges == claim });
    }
    Ok(out)
}

/// Writes `G_k` of every input graph, one graph6 line each.
pub fn transform<R: BufRead, W: Write>(reader: R, mut writer: W, k: usize) -> Result<usize, SearchError> {
    if k == 0 {
        return Err(SearchError::InvalidProblem("k must be at least 1".into()));
    }
    let mut count = 0;
    for item in crate::search::ingest_graph6_stream(reader, false) {
        let g = item?.graph;
        writeln!(writer, "{}", graph6::emit(&distance_k_graph(&g, k)?))?;
        count += 1;
    }
    Ok(count)
}

/// `n`, `|E(G)|` and `|E(G_k)|` for a built construction.
pub fn construction_summary(g: &Graph, k: usize) -> Result<String, SearchError> {
    Ok(format!("n={} edges={} k={k} distance_edges={}", g.n(), g.edge_count(), distance_k_edge_count(g, k)?))
}
