//! Brute-force oracles that share no code with the library's search,
//! distance or canonical-labelling paths.

#![allow(dead_code, clippy::needless_range_loop)]

use distk_core::Graph;

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { return out };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Upper-triangle adjacency bits of a labelled graph, pair `(i, j)` with
/// `i < j` at index `j(j-1)/2 + i`.
pub fn pair_index(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    j * (j - 1) / 2 + i
}

pub fn from_mask(n: usize, mask: u64) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; n]; n];
    for j in 1..n {
        for i in 0..j {
            if mask >> pair_index(i, j) & 1 == 1 {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
    }
    adj
}

pub fn to_graph(adj: &[Vec<bool>]) -> Graph {
    let n = adj.len();
    let mut g = Graph::empty(n).unwrap();
    for j in 1..n {
        for i in 0..j {
            if adj[i][j] {
                g.add_edge(i, j);
            }
        }
    }
    g
}

pub fn to_matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.n();
    (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect()
}

/// Smallest adjacency mask over all relabellings: a complete invariant.
pub fn min_relabelled_mask(adj: &[Vec<bool>], perms: &[Vec<usize>]) -> u64 {
    let n = adj.len();
    let mut best = u64::MAX;
    for p in perms {
        let mut mask = 0u64;
        for j in 1..n {
            for i in 0..j {
                if adj[i][j] {
                    mask |= 1 << pair_index(p[i], p[j]);
                }
            }
        }
        best = best.min(mask);
    }
    best
}

/// Number of isomorphism classes on `n` vertices from labelled enumeration.
pub fn labelled_class_count(n: usize) -> usize {
    let perms = permutations(n);
    let pairs = n * n.saturating_sub(1) / 2;
    let mut classes = std::collections::HashSet::new();
    for mask in 0u64..1 << pairs {
        classes.insert(min_relabelled_mask(&from_mask(n, mask), &perms));
    }
    classes.len()
}

/// Floyd–Warshall distances; `usize::MAX` when unreachable.
pub fn floyd(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let inf = usize::MAX;
    let mut d = vec![vec![inf; n]; n];
    for u in 0..n {
        for v in 0..n {
            d[u][v] = if u == v {
                0
            } else if adj[u][v] {
                1
            } else {
                inf
            };
        }
    }
    for w in 0..n {
        for u in 0..n {
            for v in 0..n {
                if d[u][w] != inf && d[w][v] != inf && d[u][w] + d[w][v] < d[u][v] {
                    d[u][v] = d[u][w] + d[w][v];
                }
            }
        }
    }
    d
}

pub fn distance_k(adj: &[Vec<bool>], k: usize) -> Vec<Vec<bool>> {
    let d = floyd(adj);
    d.iter().map(|row| row.iter().map(|&x| x == k).collect()).collect()
}

/// Clique number by subset enumeration.
pub fn brute_clique(adj: &[Vec<bool>]) -> usize {
    let n = adj.len();
    let mut best = 0;
    for s in 0u32..1 << n {
        let size = s.count_ones() as usize;
        if size <= best {
            continue;
        }
        let vs: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
        if vs.iter().enumerate().all(|(a, &u)| vs[a + 1..].iter().all(|&v| adj[u][v])) {
            best = size;
        }
    }
    best
}

pub fn edge_count(adj: &[Vec<bool>]) -> usize {
    adj.iter().map(|r| r.iter().filter(|&&b| b).count()).sum::<usize>() / 2
}

/// `max |E(G_k)|` over all labelled `n`-vertex graphs with `ω(G_k) <= t`.
pub fn brute_ex(n: usize, k: usize, t: usize) -> usize {
    let pairs = n * (n - 1) / 2;
    let mut best = 0;
    for mask in 0u64..1 << pairs {
        let gk = distance_k(&from_mask(n, mask), k);
        let e = edge_count(&gk);
        if e > best && brute_clique(&gk) <= t {
            best = e;
        }
    }
    best
}

/// `max |E(G)|` over labelled triangle-free non-bipartite graphs.
pub fn brute_nonbipartite(n: usize) -> usize {
    let pairs = n * (n - 1) / 2;
    let mut best = 0;
    for mask in 0u64..1 << pairs {
        let adj = from_mask(n, mask);
        let e = edge_count(&adj);
        if e > best && brute_clique(&adj) <= 2 && has_odd_cycle(&adj) {
            best = e;
        }
    }
    best
}

/// Two-colouring by DFS.
pub fn has_odd_cycle(adj: &[Vec<bool>]) -> bool {
    let n = adj.len();
    let mut colour = vec![None; n];
    for s in 0..n {
        if colour[s].is_some() {
            continue;
        }
        colour[s] = Some(false);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let cu = colour[u].unwrap();
            for v in 0..n {
                if adj[u][v] {
                    match colour[v] {
                        None => {
                            colour[v] = Some(!cu);
                            stack.push(v);
                        }
                        Some(cv) if cv == cu => return true,
                        _ => {}
                    }
                }
            }
        }
    }
    false
}
