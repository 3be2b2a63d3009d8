//! Simple undirected graphs on at most 64 vertices, one adjacency word per
//! vertex.

use std::fmt;

use crate::error::GraphError;

/// Largest supported vertex count. Each adjacency row is a single `u64`.
pub const MAX_VERTICES: usize = 64;

/// A simple undirected graph on vertices `0..n`.
///
/// Bit `u` of `rows[v]` is set iff `{u, v}` is an edge. Rows are kept
/// symmetric and loop-free by every constructor and mutator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

#[inline]
pub(crate) fn mask_below(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of a word, lowest first.
#[inline]
pub(crate) fn bits(mut word: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if word == 0 {
            None
        } else {
            let b = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(b)
        }
    })
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph { n, rows: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        let all = mask_below(n);
        for v in 0..n {
            g.rows[v] = all & !(1u64 << v);
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Path on `n` vertices `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::Invalid(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Complete bipartite graph with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(a + b)?;
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency rows, checking symmetry and loops.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self, GraphError> {
        let n = rows.len();
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let valid = mask_below(n);
        for (v, &row) in rows.iter().enumerate() {
            if row & !valid != 0 {
                return Err(GraphError::VertexOutOfRange { vertex: 63 - (row & !valid).leading_zeros() as usize, n });
            }
            if row >> v & 1 == 1 {
                return Err(GraphError::SelfLoop(v));
            }
            for u in bits(row) {
                if rows[u] >> v & 1 == 0 {
                    return Err(GraphError::Asymmetric(u, v));
                }
            }
        }
        Ok(Graph { n, rows })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Adjacency rows; bit `u` of entry `v` marks the edge `{u, v}`.
    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.rows[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.add_edge(u, v);
        Ok(())
    }

    /// Panics on out-of-range vertices; loops are ignored by the caller's
    /// contract (debug-asserted).
    #[inline]
    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
    }

    #[inline]
    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u] &= !(1 << v);
        self.rows[v] &= !(1 << u);
    }

    /// Unordered adjacent pairs in ascending `(u, v)` order with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |v| bits(self.rows[v] & mask_below(v)).map(move |u| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn complement(&self) -> Graph {
        let all = mask_below(self.n);
        let rows = self.rows.iter().enumerate().map(|(v, &r)| !r & all & !(1u64 << v)).collect();
        Graph { n: self.n, rows }
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges().all(|(u, v)| self.rows[u] & self.rows[v] == 0)
    }

    /// 2-colourability via BFS layering of each component.
    pub fn is_bipartite(&self) -> bool {
        let mut seen = 0u64;
        for start in 0..self.n {
            if seen >> start & 1 == 1 {
                continue;
            }
            seen |= 1 << start;
            let mut frontier = 1u64 << start;
            while frontier != 0 {
                let mut next = 0u64;
                for v in bits(frontier) {
                    next |= self.rows[v];
                }
                // An edge inside the current layer closes an odd cycle.
                for v in bits(frontier) {
                    if self.rows[v] & frontier != 0 {
                        return false;
                    }
                }
                next &= !seen;
                seen |= next;
                frontier = next;
            }
        }
        true
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen >> start & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0u64;
                for v in bits(frontier) {
                    next |= self.rows[v];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length must equal n");
        let mut rows = vec![0u64; self.n];
        for v in 0..self.n {
            let mut row = 0u64;
            for u in bits(self.rows[v]) {
                row |= 1 << perm[u];
            }
            rows[perm[v]] = row;
        }
        Graph { n: self.n, rows }
    }

    /// Subgraph induced by the vertices in `keep`, relabelled in
    /// ascending order.
    pub fn induced(&self, keep: u64) -> Result<Graph, GraphError> {
        let verts: Vec<usize> = bits(keep & mask_below(self.n)).collect();
        let mut g = Graph::empty(verts.len())?;
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(self.n + other.n)?;
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n);
        }
        Ok(g)
    }

    /// Appends a vertex adjacent to exactly the vertices in `nbrs`.
    pub(crate) fn push_vertex(&mut self, nbrs: u64) {
        let v = self.n;
        debug_assert!(v < MAX_VERTICES);
        debug_assert_eq!(nbrs & !mask_below(v), 0);
        for u in bits(nbrs) {
            self.rows[u] |= 1 << v;
        }
        self.rows.push(nbrs);
        self.n += 1;
    }

    /// Maximum vertex degree (0 for an edgeless graph).
    pub fn max_degree(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).max().unwrap_or(0)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self.edges().collect();
        f.debug_struct("Graph").field("n", &self.n).field("edges", &edges).finish()
    }
}
