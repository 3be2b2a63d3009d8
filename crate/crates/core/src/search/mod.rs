//! Exact computation of `ex_k(n, K_{t+1})` by exhaustive isomorph-free
//! search.
//!
//! Every enumerated graph is evaluated in full: adding an edge can shorten
//! distances, so neither `|E(G_k)|` nor the clique number of `G_k` is
//! monotone along the generation tree and nothing is pruned by objective.
//!
//! Work is split into shards by the classes at a fixed generation level;
//! each shard expands its roots independently and the partial outcomes are
//! combined with [`Partial::merge`], which is associative and commutative,
//! so the result does not depend on the shard count or thread schedule.

pub mod generate;
pub mod stream;

use std::collections::BTreeSet;
use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, CanonicalForm};
use crate::clique::clique_number_at_most;
use crate::constructions::{ex2_bound, g2_extremal_classes};
use crate::distance::distance_k_edge_count;
use crate::error::SearchError;
use crate::graph::{Graph, MAX_VERTICES};

pub use generate::{Family, Generator};
pub use stream::{ingest_graph6_stream, Graph6Stream, Ingested};

/// Default largest order for internal generation.
pub const DEFAULT_INTERNAL_CAP: usize = 10;

/// Generation level whose classes become shard roots.
const SPLIT_LEVEL: usize = 6;

/// Which graphs `G` are searched over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassFilter {
    All,
    Connected,
    /// `G` itself triangle-free and not bipartite. With `k = 1` and `t = 2`
    /// the search maximises `|E(G)|` over this class directly.
    TriangleFreeNonbipartite,
}

impl ClassFilter {
    fn family(self) -> Family {
        match self {
            ClassFilter::All | ClassFilter::Connected => Family::All,
            ClassFilter::TriangleFreeNonbipartite => Family::TriangleFree,
        }
    }

    pub fn admits(self, g: &Graph) -> bool {
        match self {
            ClassFilter::All => true,
            ClassFilter::Connected => g.is_connected(),
            ClassFilter::TriangleFreeNonbipartite => g.is_triangle_free() && !g.is_bipartite(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Internal,
    /// graph6 file, one graph per line, all on `n` vertices.
    Graph6File(PathBuf),
}

/// One extremal computation: maximise `|E(G_k)|` over `n`-vertex graphs in
/// the class subject to `ω(G_k) <= t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SearchProblem {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub class: ClassFilter,
    pub source: Source,
}

impl SearchProblem {
    /// Problem over all graphs from the internal generator.
    pub fn new(n: usize, k: usize, t: usize) -> Self {
        SearchProblem { n, k, t, class: ClassFilter::All, source: Source::Internal }
    }

    pub fn with_class(mut self, class: ClassFilter) -> Self {
        self.class = class;
        self
    }

    pub fn with_source(mut self, source: Source) -> Self {
        self.source = source;
        self
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.k == 0 {
            return Err(SearchError::InvalidProblem("k must be at least 1".into()));
        }
        if self.t < 2 {
            return Err(SearchError::InvalidProblem(format!("t must be at least 2 (got {})", self.t)));
        }
        let min_n = (self.k + 1).max(2);
        if self.n < min_n {
            return Err(SearchError::InvalidProblem(format!(
                "n = {} is too small: distance {} needs at least {min_n} vertices",
                self.n, self.k
            )));
        }
        if self.n > MAX_VERTICES {
            return Err(SearchError::InvalidProblem(format!("n = {} exceeds 64", self.n)));
        }
        Ok(())
    }
}

/// Execution knobs. None of them affects the outcome.
#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub shards: usize,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    pub internal_cap: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { shards: 8, threads: None, internal_cap: DEFAULT_INTERNAL_CAP }
    }
}

/// Outcome of a shard or of a merge of shards.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Partial {
    pub optimum: Option<usize>,
    pub extremal: BTreeSet<CanonicalForm>,
    pub enumerated: u64,
}

impl Partial {
    /// Max on the optimum; certificate sets are united on ties and the
    /// losing side's set is dropped otherwise.
    pub fn merge(mut self, other: Partial) -> Partial {
        self.enumerated += other.enumerated;
        match self.optimum.cmp(&other.optimum) {
            std::cmp::Ordering::Less => {
                self.optimum = other.optimum;
                self.extremal = other.extremal;
            }
            std::cmp::Ordering::Equal => self.extremal.extend(other.extremal),
            std::cmp::Ordering::Greater => {}
        }
        self
    }

    fn offer(&mut self, g: &Graph, k: usize, t: usize) {
        self.enumerated += 1;
        let value = distance_k_edge_count(g, k).expect("k validated");
        if matches!(self.optimum, Some(best) if value < best) {
            return;
        }
        let gk = if k == 1 { g.clone() } else { crate::distance::distance_k_graph(g, k).expect("k validated") };
        if !clique_number_at_most(&gk, t) {
            return;
        }
        if self.optimum != Some(value) {
            self.optimum = Some(value);
            self.extremal.clear();
        }
        self.extremal.insert(canonical_form(g));
    }
}

/// Result of [`solve`].
#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub problem: SearchProblem,
    pub optimum: usize,
    /// Certificates of all extremal graphs, ascending.
    pub extremal: Vec<CanonicalForm>,
    /// Isomorphism classes (or input lines) that passed the class filter.
    pub enumerated: u64,
    pub elapsed: Duration,
}

impl SearchOutcome {
    /// Witness graph6 lines in certificate order; each is the canonical
    /// representative of its class.
    pub fn witness_g6(&self) -> Vec<String> {
        self.extremal.iter().map(|c| c.graph6().to_owned()).collect()
    }

    pub fn witnesses(&self) -> Vec<Graph> {
        self.extremal.iter().map(CanonicalForm::to_graph).collect()
    }

    /// Everything except wall time, for determinism checks.
    pub fn fingerprint(&self) -> (usize, Vec<CanonicalForm>, u64) {
        (self.optimum, self.extremal.clone(), self.enumerated)
    }
}

/// One representative per isomorphism class of `n`-vertex graphs in the
/// class, in deterministic depth-first order.
pub fn enumerate(n: usize, class: ClassFilter) -> Result<impl Iterator<Item = Graph>, SearchError> {
    enumerate_capped(n, class, DEFAULT_INTERNAL_CAP)
}

pub fn enumerate_capped(n: usize, class: ClassFilter, cap: usize) -> Result<impl Iterator<Item = Graph>, SearchError> {
    if n > cap {
        return Err(SearchError::OverCap { n, cap });
    }
    if n == 0 {
        return Err(SearchError::InvalidProblem("n must be at least 1".into()));
    }
    Ok(Generator::new(n, class.family()).filter(move |g| class.admits(g)))
}

fn run_in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(count) => {
            rayon::ThreadPoolBuilder::new().num_threads(count.max(1)).build().expect("thread pool").install(f)
        }
        None => f(),
    }
}

fn solve_internal(p: &SearchProblem, opts: &SolveOptions) -> Result<Partial, SearchError> {
    if p.n > opts.internal_cap {
        return Err(SearchError::OverCap { n: p.n, cap: opts.internal_cap });
    }
    let family = p.class.family();
    let split = p.n.min(SPLIT_LEVEL);
    let roots: Vec<Graph> = Generator::new(split, family).collect();
    let shards = opts.shards.max(1);
    let partial = run_in_pool(opts.threads, || {
        (0..shards)
            .into_par_iter()
            .map(|shard| {
                let mut partial = Partial::default();
                for root in roots.iter().skip(shard).step_by(shards) {
                    for g in Generator::from_root(root.clone(), p.n, family) {
                        if p.class.admits(&g) {
                            partial.offer(&g, p.k, p.t);
                        }
                    }
                }
                partial
            })
            .reduce(Partial::default, Partial::merge)
    });
    Ok(partial)
}

const BATCH: usize = 1 << 14;

fn solve_file(p: &SearchProblem, path: &PathBuf, opts: &SolveOptions) -> Result<Partial, SearchError> {
    let reader = BufReader::new(File::open(path)?);
    let mut stream = ingest_graph6_stream(reader, false);
    let mut total = Partial::default();
    loop {
        let mut batch = Vec::with_capacity(BATCH);
        for item in stream.by_ref().take(BATCH) {
            let item = item?;
            if item.graph.n() != p.n {
                return Err(SearchError::WrongOrder { line: item.line, expected: p.n, found: item.graph.n() });
            }
            batch.push(item.graph);
        }
        if batch.is_empty() {
            break;
        }
        let shards = opts.shards.max(1);
        let part = run_in_pool(opts.threads, || {
            (0..shards)
                .into_par_iter()
                .map(|shard| {
                    let mut partial = Partial::default();
                    for g in batch.iter().skip(shard).step_by(shards) {
                        if p.class.admits(g) {
                            partial.offer(g, p.k, p.t);
                        }
                    }
                    partial
                })
                .reduce(Partial::default, Partial::merge)
        });
        total = total.merge(part);
    }
    Ok(total)
}

/// Exact optimum with all extremal classes.
pub fn solve(p: &SearchProblem) -> Result<SearchOutcome, SearchError> {
    solve_with(p, &SolveOptions::default())
}

pub fn solve_with(p: &SearchProblem, opts: &SolveOptions) -> Result<SearchOutcome, SearchError> {
    p.validate()?;
    let start = Instant::now();
    let partial = match &p.source {
        Source::Internal => solve_internal(p, opts)?,
        Source::Graph6File(path) => solve_file(p, path, opts)?,
    };
    let optimum = partial.optimum.ok_or(SearchError::Infeasible)?;
    Ok(SearchOutcome {
        problem: p.clone(),
        optimum,
        extremal: partial.extremal.into_iter().collect(),
        enumerated: partial.enumerated,
        elapsed: start.elapsed(),
    })
}

/// Maximum `|E(G)|` over triangle-free non-bipartite graphs on `n >= 5`
/// vertices.
pub fn solve_nonbipartite_triangle_free(n: usize) -> Result<SearchOutcome, SearchError> {
    solve_nonbipartite_triangle_free_with(n, &SolveOptions::default())
}

pub fn solve_nonbipartite_triangle_free_with(n: usize, opts: &SolveOptions) -> Result<SearchOutcome, SearchError> {
    if n < 5 {
        return Err(SearchError::InvalidProblem(format!("need n >= 5 (got {n})")));
    }
    solve_with(&SearchProblem::new(n, 1, 2).with_class(ClassFilter::TriangleFreeNonbipartite), opts)
}

/// Comparison of the distance-2 extremal classes found by search with the
/// constructed family.
#[derive(Clone, Debug, Serialize)]
pub struct Characterization {
    pub n: usize,
    pub optimum: usize,
    pub formula_value: u64,
    pub found: Vec<CanonicalForm>,
    pub family: Vec<CanonicalForm>,
    /// In the family but not found by search.
    pub missing: Vec<CanonicalForm>,
    /// Found by search but not in the family.
    pub extra: Vec<CanonicalForm>,
}

impl Characterization {
    pub fn equal(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

pub fn characterize(n: usize) -> Result<Characterization, SearchError> {
    characterize_with(n, &SolveOptions::default())
}

pub fn characterize_with(n: usize, opts: &SolveOptions) -> Result<Characterization, SearchError> {
    let formula_value = ex2_bound(n as u64)?;
    let outcome = solve_with(&SearchProblem::new(n, 2, 2), opts)?;
    let found: BTreeSet<CanonicalForm> = outcome.extremal.iter().cloned().collect();
    let family: BTreeSet<CanonicalForm> = g2_extremal_classes(n)?.into_keys().collect();
    Ok(Characterization {
        n,
        optimum: outcome.optimum,
        formula_value,
        missing: family.difference(&found).cloned().collect(),
        extra: found.difference(&family).cloned().collect(),
        found: found.into_iter().collect(),
        family: family.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerate_small_orders() {
        assert_eq!(enumerate(1, ClassFilter::All).unwrap().count(), 1);
        assert_eq!(enumerate(4, ClassFilter::All).unwrap().count(), 11);
        assert_eq!(enumerate(5, ClassFilter::All).unwrap().count(), 34);
        // connected graphs, OEIS A001349
        assert_eq!(enumerate(5, ClassFilter::Connected).unwrap().count(), 21);
        assert_eq!(enumerate(6, ClassFilter::Connected).unwrap().count(), 112);
        assert!(matches!(enumerate(11, ClassFilter::All), Err(SearchError::OverCap { n: 11, cap: 10 })));
    }

    #[test]
    fn merge_is_order_independent() {
        let c = |s: &str| canonical_form(&crate::graph6::parse(s).unwrap());
        let a = Partial { optimum: Some(3), extremal: [c("Bw")].into(), enumerated: 2 };
        let b = Partial { optimum: Some(3), extremal: [c("Bo")].into(), enumerated: 5 };
        let d = Partial { optimum: Some(1), extremal: [c("B?")].into(), enumerated: 1 };
        let e = Partial::default();
        let left = a.clone().merge(b.clone()).merge(d.clone()).merge(e.clone());
        let right = e.merge(d.merge(b.merge(a)));
        assert_eq!(left, right);
        assert_eq!(left.optimum, Some(3));
        assert_eq!(left.extremal.len(), 2);
        assert_eq!(left.enumerated, 8);
    }

    #[test]
    fn small_solves() {
        let out = solve(&SearchProblem::new(5, 2, 2)).unwrap();
        assert_eq!(out.optimum, 5);
        let out = solve(&SearchProblem::new(6, 3, 2)).unwrap();
        assert_eq!(out.optimum, 4);
    }

    #[test]
    fn invalid_problems() {
        assert!(matches!(solve(&SearchProblem::new(5, 0, 2)), Err(SearchError::InvalidProblem(_))));
        assert!(matches!(solve(&SearchProblem::new(5, 2, 1)), Err(SearchError::InvalidProblem(_))));
        assert!(matches!(solve(&SearchProblem::new(3, 3, 2)), Err(SearchError::InvalidProblem(_))));
        assert!(matches!(solve(&SearchProblem::new(11, 3, 2)), Err(SearchError::OverCap { .. })));
        assert!(solve_nonbipartite_triangle_free(4).is_err());
    }

    #[test]
    fn empty_class_is_infeasible() {
        // No triangle-free non-bipartite graph has fewer than 5 vertices.
        let p = SearchProblem::new(4, 1, 2).with_class(ClassFilter::TriangleFreeNonbipartite);
        assert!(matches!(solve(&p), Err(SearchError::Infeasible)));
    }
}
