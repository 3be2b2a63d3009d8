//! Shortest-path distances and the distance-k transform.

use crate::error::GraphError;
use crate::graph::{bits, Graph};

const UNREACHABLE: u8 = u8::MAX;

/// All-pairs shortest-path lengths of an unweighted graph.
///
/// Pairs in different components have no finite distance; [`get`] returns
/// `None` for them, so they never compare equal to any `k`.
///
/// [`get`]: DistanceMatrix::get
#[derive(Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u8>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        match self.dist[u * self.n + v] {
            UNREACHABLE => None,
            d => Some(d as usize),
        }
    }

    /// Largest finite distance, i.e. the maximum eccentricity over
    /// components.
    pub fn max_finite(&self) -> usize {
        self.dist.iter().filter(|&&d| d != UNREACHABLE).map(|&d| d as usize).max().unwrap_or(0)
    }

    /// Diameter in the usual sense: `None` when the graph is disconnected.
    pub fn diameter(&self) -> Option<usize> {
        if self.dist.contains(&UNREACHABLE) {
            None
        } else {
            Some(self.max_finite())
        }
    }
}

impl std::fmt::Debug for DistanceMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<Vec<Option<usize>>> =
            (0..self.n).map(|u| (0..self.n).map(|v| self.get(u, v)).collect()).collect();
        f.debug_struct("DistanceMatrix").field("dist", &rows).finish()
    }
}

/// BFS from every vertex using word-parallel frontier expansion.
pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.n();
    let mut dist = vec![UNREACHABLE; n * n];
    for s in 0..n {
        let row = &mut dist[s * n..(s + 1) * n];
        row[s] = 0;
        let mut seen = 1u64 << s;
        let mut frontier = seen;
        let mut d = 0u8;
        while frontier != 0 {
            d += 1;
            let mut next = 0u64;
            for v in bits(frontier) {
                next |= g.neighbors(v);
            }
            next &= !seen;
            for v in bits(next) {
                row[v] = d;
            }
            seen |= next;
            frontier = next;
        }
    }
    DistanceMatrix { n, dist }
}

/// Vertices at distance exactly `k` from `source`, as a bitmask.
#[inline]
pub(crate) fn sphere(g: &Graph, source: usize, k: usize) -> u64 {
    let mut seen = 1u64 << source;
    let mut frontier = seen;
    for _ in 0..k {
        let mut next = 0u64;
        for v in bits(frontier) {
            next |= g.neighbors(v);
        }
        next &= !seen;
        if next == 0 {
            return 0;
        }
        seen |= next;
        frontier = next;
    }
    frontier
}

/// The graph on the same vertex set joining pairs at distance exactly `k`.
pub fn distance_k_graph(g: &Graph, k: usize) -> Result<Graph, GraphError> {
    if k == 0 {
        return Err(GraphError::ZeroDistance);
    }
    let rows = (0..g.n()).map(|s| sphere(g, s, k)).collect();
    Ok(Graph::from_rows(rows).expect("distance-k spheres are symmetric and loop-free"))
}

/// `|E(G_k)|` without materialising `G_k`.
pub fn distance_k_edge_count(g: &Graph, k: usize) -> Result<usize, GraphError> {
    if k == 0 {
        return Err(GraphError::ZeroDistance);
    }
    let twice: usize = (0..g.n()).map(|s| sphere(g, s, k).count_ones() as usize).sum();
    Ok(twice / 2)
}
