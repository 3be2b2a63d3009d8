//! Canonical labelling by colour refinement and individualisation.
//!
//! The unit partition is refined to the coarsest equitable ordered
//! partition; non-discrete partitions are resolved by individualising each
//! vertex of the first smallest non-singleton cell in turn. Every discrete
//! leaf induces a relabelling, and the canonical form is the relabelled
//! graph whose upper-triangle bitstring (graph6 column order) is
//! lexicographically least. Leaves that reproduce an earlier leaf's graph
//! yield automorphisms, which prune sibling branches lying in the same
//! orbit of the pointwise stabiliser of the current prefix.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::graph::{bits, mask_below, Graph};
use crate::graph6;

/// Relabelling-invariant certificate of an isomorphism class.
///
/// The certificate bytes are the graph6 encoding of the canonically
/// relabelled graph, so certificates of different orders never collide and
/// the certificate doubles as a printable representative.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    n: usize,
    certificate: Vec<u8>,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn certificate(&self) -> &[u8] {
        &self.certificate
    }

    /// The canonical representative as a graph6 line (without newline).
    pub fn graph6(&self) -> &str {
        std::str::from_utf8(&self.certificate).expect("graph6 is printable ASCII")
    }

    /// Decodes the canonical representative.
    pub fn to_graph(&self) -> Graph {
        graph6::parse(self.graph6()).expect("certificate is valid graph6")
    }
}

impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.certificate.cmp(&other.certificate)
    }
}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.graph6())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.graph6())
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.graph6())
    }
}

/// Result of a canonical labelling run.
#[derive(Clone, Debug)]
pub struct Labeling {
    pub form: CanonicalForm,
    /// `position[v]` is the canonical label of vertex `v`.
    pub position: Vec<usize>,
    /// Automorphisms found during the search; they generate the full
    /// automorphism group.
    pub generators: Vec<Vec<usize>>,
}

impl Labeling {
    /// Orbit representative (smallest vertex) of every vertex under the
    /// automorphism group.
    pub fn orbits(&self) -> Vec<usize> {
        let n = self.position.len();
        let mut uf = UnionFind::new(n);
        for gamma in &self.generators {
            for (v, &w) in gamma.iter().enumerate() {
                uf.union(v, w);
            }
        }
        (0..n).map(|v| uf.min_of(v)).collect()
    }

    /// Vertex receiving canonical label `label`.
    pub fn vertex_at(&self, label: usize) -> usize {
        self.position.iter().position(|&p| p == label).expect("labels form a permutation")
    }
}

/// Splits every cell by neighbour counts into each splitter until the
/// ordered partition is equitable. Sub-cells are ordered by ascending count
/// and replace their parent in place.
pub(crate) fn refine(g: &Graph, cells: &mut Vec<u64>) {
    let mut counts = [0u8; 64];
    let mut changed = true;
    while changed {
        changed = false;
        let mut s = 0;
        while s < cells.len() {
            let splitter = cells[s];
            let mut i = 0;
            while i < cells.len() {
                let cell = cells[i];
                if cell & (cell - 1) == 0 {
                    i += 1;
                    continue;
                }
                let mut lo = u8::MAX;
                let mut hi = 0u8;
                for v in bits(cell) {
                    let c = (g.neighbors(v) & splitter).count_ones() as u8;
                    counts[v] = c;
                    lo = lo.min(c);
                    hi = hi.max(c);
                }
                if lo == hi {
                    i += 1;
                    continue;
                }
                let mut parts: Vec<u64> = Vec::new();
                for c in lo..=hi {
                    let part = bits(cell).filter(|&v| counts[v] == c).fold(0u64, |m, v| m | 1 << v);
                    if part != 0 {
                        parts.push(part);
                    }
                }
                let added = parts.len();
                cells.splice(i..=i, parts);
                i += added;
                changed = true;
            }
            s += 1;
        }
    }
}

/// Coarsest equitable refinement of the unit partition.
pub(crate) fn equitable_partition(g: &Graph) -> Vec<u64> {
    let mut cells = vec![mask_below(g.n())];
    refine(g, &mut cells);
    cells
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    // Roots are always the smallest member.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }

    fn min_of(&mut self, v: usize) -> usize {
        self.find(v)
    }
}

#[derive(Clone)]
struct Leaf {
    columns: Vec<u64>,
    /// `order[p]` is the vertex placed at position `p`.
    order: Vec<usize>,
    /// Individualised vertices on the path to this leaf.
    path: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
}

/// Column `j` holds bits `x(i, j)` for `i < j`, with `x(0, j)` most
/// significant, so comparing column vectors lexicographically compares the
/// graph6 bitstrings.
fn leaf_columns(g: &Graph, order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let mut pos = [0usize; 64];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    let mut columns = vec![0u64; n];
    for (j, &v) in order.iter().enumerate() {
        let mut word = 0u64;
        for u in bits(g.neighbors(v)) {
            let i = pos[u];
            if i < j {
                word |= 1u64 << (63 - i);
            }
        }
        columns[j] = word;
    }
    columns
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl Search<'_> {
    /// Explores the subtree below `cells`. Returns `Some(depth)` when an
    /// automorphism shows that everything below the ancestor at `depth` on
    /// the current path has already been covered.
    fn visit(&mut self, cells: Vec<u64>, prefix: &mut Vec<usize>) -> Option<usize> {
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.count_ones() > 1)
            .min_by_key(|(i, c)| (c.count_ones(), *i))
            .map(|(i, _)| i);
        let Some(t) = target else {
            let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
            return self.leaf(order, prefix);
        };
        let depth = prefix.len();
        let cell = cells[t];
        let mut explored: Vec<usize> = Vec::new();
        for v in bits(cell) {
            if !explored.is_empty() && self.equivalent_to_explored(v, &explored, prefix) {
                continue;
            }
            explored.push(v);
            let mut child = cells.clone();
            child.splice(t..=t, [1u64 << v, cell & !(1u64 << v)]);
            refine(self.g, &mut child);
            prefix.push(v);
            let jump = self.visit(child, prefix);
            prefix.pop();
            if let Some(level) = jump {
                if level < depth {
                    return jump;
                }
            }
        }
        None
    }

    fn equivalent_to_explored(&self, v: usize, explored: &[usize], prefix: &[usize]) -> bool {
        let n = self.g.n();
        let mut uf = UnionFind::new(n);
        let mut any = false;
        for gamma in &self.generators {
            if prefix.iter().all(|&p| gamma[p] == p) {
                any = true;
                for (a, &b) in gamma.iter().enumerate() {
                    uf.union(a, b);
                }
            }
        }
        if !any {
            return false;
        }
        let rv = uf.find(v);
        explored.iter().any(|&e| uf.find(e) == rv)
    }

    fn leaf(&mut self, order: Vec<usize>, path: &[usize]) -> Option<usize> {
        let columns = leaf_columns(self.g, &order);
        let Some(first) = &self.first else {
            let leaf = Leaf { columns, order, path: path.to_vec() };
            self.best = Some(leaf.clone());
            self.first = Some(leaf);
            return None;
        };
        let best = self.best.as_ref().expect("best is set with first");
        let reference = if columns == first.columns {
            Some(first)
        } else if columns == best.columns {
            Some(best)
        } else {
            None
        };
        if let Some(reference) = reference {
            // Both orders produce the same labelled graph, so mapping the
            // vertex at each position to the reference vertex at that
            // position is an automorphism. It fixes the shared part of the
            // two paths and carries the reference subtree onto ours.
            let mut gamma = vec![0usize; order.len()];
            for (p, &v) in order.iter().enumerate() {
                gamma[v] = reference.order[p];
            }
            let level = common_prefix(&reference.path, path);
            if gamma.iter().enumerate().any(|(v, &w)| v != w) {
                self.generators.push(gamma);
            }
            return Some(level);
        }
        if columns < best.columns {
            self.best = Some(Leaf { columns, order, path: path.to_vec() });
        }
        None
    }
}

/// Canonical labelling together with automorphism generators.
pub fn canonical_labeling(g: &Graph) -> Labeling {
    let mut search = Search { g, first: None, best: None, generators: Vec::new() };
    let cells = equitable_partition(g);
    let _ = search.visit(cells, &mut Vec::new());
    let best = search.best.expect("search reaches at least one leaf");
    let mut position = vec![0usize; g.n()];
    for (p, &v) in best.order.iter().enumerate() {
        position[v] = p;
    }
    let canonical = g.permute(&position);
    let form = CanonicalForm { n: g.n(), certificate: graph6::emit(&canonical).into_bytes() };
    Labeling { form, position, generators: search.generators }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).form
}

/// Isomorphism test by certificate comparison.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n() && g.edge_count() == h.edge_count() && canonical_form(g) == canonical_form(h)
}

/// Orbit representative (smallest vertex) for every vertex.
pub fn automorphism_orbits(g: &Graph) -> Vec<usize> {
    canonical_labeling(g).orbits()
}
