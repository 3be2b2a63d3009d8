//! Exact maximum clique by branch and bound with greedy colouring bounds.

use crate::graph::{mask_below, Graph};

/// Size of a largest clique. Every graph here has at least one vertex, so
/// the result is at least 1.
pub fn clique_number(g: &Graph) -> usize {
    let mut best = 0;
    expand(g, mask_below(g.n()), 0, &mut best, usize::MAX);
    best
}

/// `true` iff `g` has no clique on `t + 1` vertices. Stops as soon as one
/// is found.
pub fn clique_number_at_most(g: &Graph, t: usize) -> bool {
    if t >= g.n() {
        return true;
    }
    if t == 2 {
        return g.is_triangle_free();
    }
    let mut best = 0;
    expand(g, mask_below(g.n()), 0, &mut best, t + 1);
    best <= t
}

/// Greedy sequential colouring of `candidates`: returns vertices in order of
/// nondecreasing colour together with their colour (1-based).
fn colour_sort(g: &Graph, candidates: u64, order: &mut Vec<(usize, usize)>) {
    order.clear();
    let mut uncoloured = candidates;
    let mut colour = 0;
    while uncoloured != 0 {
        colour += 1;
        let mut free = uncoloured;
        while free != 0 {
            let v = free.trailing_zeros() as usize;
            free &= !(1u64 << v) & !g.neighbors(v);
            uncoloured &= !(1u64 << v);
            order.push((v, colour));
        }
    }
}

fn expand(g: &Graph, mut candidates: u64, size: usize, best: &mut usize, stop_at: usize) {
    let mut order = Vec::with_capacity(candidates.count_ones() as usize);
    colour_sort(g, candidates, &mut order);
    for &(v, colour) in order.iter().rev() {
        if size + colour <= *best || *best >= stop_at {
            return;
        }
        let next = candidates & g.neighbors(v);
        if next == 0 {
            if size + 1 > *best {
                *best = size + 1;
            }
        } else {
            expand(g, next, size + 1, best, stop_at);
        }
        candidates &= !(1u64 << v);
    }
}
