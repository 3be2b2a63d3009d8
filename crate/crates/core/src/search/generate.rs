//! Isomorph-free generation by canonical vertex augmentation.
//!
//! A graph on `m + 1` vertices is produced from a parent on `m` vertices
//! by appending a vertex with an arbitrary neighbourhood. The child is kept
//! only if the appended vertex lies in the automorphism orbit of the
//! child's canonical deletion vertex: the vertex that receives the last
//! canonical label. Since canonical labels respect the equitable partition,
//! that vertex has maximum degree and sits in the last cell, which gives
//! two cheap rejection tests before any labelling is done. Children of one
//! parent that survive are deduplicated by certificate.

use std::collections::HashSet;

use crate::canon::{canonical_labeling, equitable_partition, CanonicalForm};
use crate::graph::{bits, Graph};

/// Hereditary class the generator is restricted to. Restricting works
/// because the canonical parent is an induced subgraph of the child.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    All,
    TriangleFree,
}

/// Result of offering one augmentation to the acceptance test.
fn accept(child: &Graph, family: Family) -> Option<CanonicalForm> {
    let new = child.n() - 1;
    let nbrs = child.neighbors(new);
    if family == Family::TriangleFree && bits(nbrs).any(|v| child.neighbors(v) & nbrs != 0) {
        return None;
    }
    let deg = nbrs.count_ones();
    if child.rows().iter().any(|r| r.count_ones() > deg) {
        return None;
    }
    let cells = equitable_partition(child);
    let last = *cells.last().expect("at least one cell");
    if last >> new & 1 == 0 {
        return None;
    }
    let labeling = canonical_labeling(child);
    if last.count_ones() > 1 {
        let deletion = labeling.vertex_at(new);
        if deletion != new {
            let orbits = labeling.orbits();
            if orbits[deletion] != orbits[new] {
                return None;
            }
        }
    }
    Some(labeling.form)
}

/// Canonical children of `parent` on one more vertex, in order of the
/// neighbourhood bitmask of the appended vertex.
pub fn children(parent: &Graph, family: Family) -> Vec<Graph> {
    let m = parent.n();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut child = parent.clone();
    for nbrs in 0u64..1 << m {
        child.clone_from(parent);
        child.push_vertex(nbrs);
        if let Some(form) = accept(&child, family) {
            if seen.insert(form) {
                out.push(child.clone());
            }
        }
    }
    out
}

struct Frame {
    children: std::vec::IntoIter<Graph>,
}

/// Depth-first stream of one representative per isomorphism class of
/// `target`-vertex graphs descending from a root.
pub struct Generator {
    target: usize,
    family: Family,
    stack: Vec<Frame>,
    pending_root: Option<Graph>,
}

impl Generator {
    /// All classes on `target` vertices. `target` must be at least 1.
    pub fn new(target: usize, family: Family) -> Self {
        Generator::from_root(Graph::empty(1).expect("one vertex"), target, family)
    }

    /// Classes on `target` vertices whose canonical ancestor at the root's
    /// order is `root`. Roots must themselves come from a generator run so
    /// that every class has exactly one ancestor among them.
    pub fn from_root(root: Graph, target: usize, family: Family) -> Self {
        assert!(root.n() <= target, "root is larger than the target order");
        Generator { target, family, stack: Vec::new(), pending_root: Some(root) }
    }
}

impl Iterator for Generator {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if let Some(root) = self.pending_root.take() {
            if root.n() == self.target {
                return Some(root);
            }
            let children = children(&root, self.family);
            self.stack.push(Frame { children: children.into_iter() });
        }
        loop {
            let frame = self.stack.last_mut()?;
            match frame.children.next() {
                None => {
                    self.stack.pop();
                }
                Some(g) if g.n() == self.target => return Some(g),
                Some(g) => {
                    let children = children(&g, self.family);
                    self.stack.push(Frame { children: children.into_iter() });
                }
            }
        }
    }
}
