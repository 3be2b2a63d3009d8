//! Builders for the extremal families and the closed-form bounds they are
//! measured against.
//!
//! Vertex labels are deterministic; each variant documents its order.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{BoundError, ConstructionError};
use crate::graph::{Graph, MAX_VERTICES};

/// One instance of a named construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant")]
pub enum ConstructionSpec {
    /// Complete `r`-partite graph with parts as equal as possible. Parts are
    /// consecutive label ranges, larger parts first.
    Turan { n: usize, r: usize },
    /// Extremal graph for triangle-free distance-2 graphs: the complement of
    /// a balanced complete bipartite graph on `n - 1` vertices with parts
    /// `A` (containing `a1`) and `B = B' ∪ B''`, where the edges `a1–B'`
    /// are removed and a vertex `a2` joined to `{a1} ∪ B'` is added.
    ///
    /// Labels: `a1 = 0`, the rest of `A`, then `B'`, then `B''`, then `a2`.
    G2Extremal { n: usize, size_a: usize, size_b_prime: usize },
    /// Path on `k - 1` vertices (labels `0..k-1`) with `a` leaves on its
    /// first vertex and `b` leaves on its last, in that label order. Leaves
    /// in opposite bunches are at distance exactly `k`.
    DoubleBroom { n: usize, k: usize, a: usize, b: usize },
    /// `t`-broom for distance `k`. Even `k`: a centre (label 0) joined to
    /// one end of each of `t` paths on `(k-2)/2` vertices. Odd `k`: a
    /// `t`-clique (labels `0..t`) whose vertices each start a path on
    /// `(k-3)/2` vertices; for `k = 3` the paths are empty and leaves hang
    /// directly off the clique. `leaf_counts[i]` leaves are attached to the
    /// far end of arm `i`. Arm vertices follow the core, leaves come last.
    TBroom { k: usize, t: usize, leaf_counts: Vec<usize> },
    /// Star with `legs` leaves (labels `1..=legs`, centre 0) where
    /// `attachment_counts[i]` further vertices hang off leaf `i + 1`,
    /// labelled leg by leg after the leaves.
    Spider { n: usize, legs: usize, attachment_counts: Vec<usize> },
}

fn invalid(variant: &'static str, constraint: impl Into<String>) -> ConstructionError {
    ConstructionError::Invalid { variant, constraint: constraint.into() }
}

impl ConstructionSpec {
    /// Spider whose attachments are spread round-robin over the legs.
    pub fn spider_round_robin(n: usize, legs: usize) -> Result<Self, ConstructionError> {
        if legs == 0 || legs + 1 > n {
            return Err(invalid("Spider", format!("legs = {legs} does not fit n = {n}")));
        }
        let rest = n - 1 - legs;
        let attachment_counts = (0..legs).map(|i| rest / legs + usize::from(i < rest % legs)).collect();
        let spec = ConstructionSpec::Spider { n, legs, attachment_counts };
        spec.validate()?;
        Ok(spec)
    }

    /// Double broom with leaf bunches as equal as possible (`a <= b`).
    pub fn balanced_double_broom(n: usize, k: usize) -> Result<Self, ConstructionError> {
        if k < 3 || n < k + 1 {
            return Err(invalid("DoubleBroom", format!("need k >= 3 and n >= k + 1 (got n = {n}, k = {k})")));
        }
        let leaves = n - (k - 1);
        let spec = ConstructionSpec::DoubleBroom { n, k, a: leaves / 2, b: leaves - leaves / 2 };
        spec.validate()?;
        Ok(spec)
    }

    pub fn variant_name(&self) -> &'static str {
        match self {
            ConstructionSpec::Turan { .. } => "Turan",
            ConstructionSpec::G2Extremal { .. } => "G2Extremal",
            ConstructionSpec::DoubleBroom { .. } => "DoubleBroom",
            ConstructionSpec::TBroom { .. } => "TBroom",
            ConstructionSpec::Spider { .. } => "Spider",
        }
    }

    /// Number of vertices of the built graph.
    pub fn order(&self) -> usize {
        match self {
            ConstructionSpec::Turan { n, .. }
            | ConstructionSpec::G2Extremal { n, .. }
            | ConstructionSpec::DoubleBroom { n, .. }
            | ConstructionSpec::Spider { n, .. } => *n,
            ConstructionSpec::TBroom { k, t, leaf_counts } => {
                let core = if k % 2 == 0 { 1 + t * (k - 2) / 2 } else { t + t * (k.saturating_sub(3)) / 2 };
                core + leaf_counts.iter().sum::<usize>()
            }
        }
    }

    pub fn validate(&self) -> Result<(), ConstructionError> {
        let name = self.variant_name();
        match self {
            ConstructionSpec::Turan { n, r } => {
                if *n == 0 || *r == 0 || r > n {
                    return Err(invalid(name, format!("need 1 <= r <= n (got n = {n}, r = {r})")));
                }
            }
            ConstructionSpec::G2Extremal { n, size_a, size_b_prime } => {
                if *n < 5 {
                    return Err(invalid(name, format!("need n >= 5 (got {n})")));
                }
                if *size_a == 0 || *size_a >= *n - 1 {
                    return Err(invalid(name, format!("need 1 <= size_a < n - 1 (got {size_a})")));
                }
                let size_b = n - 1 - size_a;
                if size_a.abs_diff(size_b) > 1 {
                    return Err(invalid(name, format!("parts must be balanced: size_a = {size_a}, size_b = {size_b}")));
                }
                if *size_b_prime == 0 || *size_b_prime >= size_b {
                    return Err(invalid(
                        name,
                        format!(
                            "B' must be a non-trivial part of B: need 1 <= size_b_prime <= {} (got {size_b_prime})",
                            size_b - 1
                        ),
                    ));
                }
            }
            ConstructionSpec::DoubleBroom { n, k, a, b } => {
                if *k < 3 {
                    return Err(invalid(name, format!("need k >= 3 (got {k})")));
                }
                if *a == 0 || *b == 0 {
                    return Err(invalid(name, "both leaf bunches need at least one leaf"));
                }
                if a + b + k - 1 != *n {
                    return Err(invalid(name, format!("need a + b + k - 1 = n (got {a} + {b} + {} != {n})", k - 1)));
                }
            }
            ConstructionSpec::TBroom { k, t, leaf_counts } => {
                if *k < 3 {
                    return Err(invalid(name, format!("need even k >= 4 or odd k >= 3 (got {k})")));
                }
                if *t == 0 {
                    return Err(invalid(name, "need t >= 1"));
                }
                if leaf_counts.len() != *t {
                    return Err(invalid(name, format!("need {t} leaf counts (got {})", leaf_counts.len())));
                }
                if leaf_counts.contains(&0) {
                    return Err(invalid(name, "every arm needs at least one leaf"));
                }
            }
            ConstructionSpec::Spider { n, legs, attachment_counts } => {
                if *n < 2 {
                    return Err(invalid(name, format!("need n >= 2 (got {n})")));
                }
                if *legs != n / 2 && *legs != n.div_ceil(2) {
                    return Err(invalid(name, format!("legs must be {} or {} (got {legs})", n / 2, n.div_ceil(2))));
                }
                if attachment_counts.len() != *legs {
                    return Err(invalid(
                        name,
                        format!("need {legs} attachment counts (got {})", attachment_counts.len()),
                    ));
                }
                let total: usize = attachment_counts.iter().sum();
                if total + legs + 1 != *n {
                    return Err(invalid(
                        name,
                        format!("attachment counts must sum to n - 1 - legs = {} (got {total})", n - 1 - legs),
                    ));
                }
            }
        }
        if self.order() > MAX_VERTICES {
            return Err(invalid(name, format!("{} vertices exceeds the cap of {MAX_VERTICES}", self.order())));
        }
        Ok(())
    }

    /// Builds the graph. For `G2Extremal` this is the extremal graph itself
    /// (the complement of the auxiliary graph; see [`Self::g2_auxiliary`]).
    pub fn build(&self) -> Result<Graph, ConstructionError> {
        self.validate()?;
        let g = match self {
            ConstructionSpec::Turan { n, r } => {
                let mut part = Vec::with_capacity(*n);
                for i in 0..*r {
                    let size = n / r + usize::from(i < n % r);
                    part.extend(std::iter::repeat_n(i, size));
                }
                let mut g = Graph::empty(*n)?;
                for u in 0..*n {
                    for v in u + 1..*n {
                        if part[u] != part[v] {
                            g.add_edge(u, v);
                        }
                    }
                }
                g
            }
            ConstructionSpec::G2Extremal { .. } => self.g2_auxiliary()?.complement(),
            ConstructionSpec::DoubleBroom { n, k, a, .. } => {
                let path_len = k - 1;
                let mut g = Graph::empty(*n)?;
                for v in 1..path_len {
                    g.add_edge(v - 1, v);
                }
                for leaf in path_len..path_len + a {
                    g.add_edge(0, leaf);
                }
                for leaf in path_len + a..*n {
                    g.add_edge(path_len - 1, leaf);
                }
                g
            }
            ConstructionSpec::TBroom { k, t, leaf_counts } => {
                let mut g = Graph::empty(self.order())?;
                let (arm_roots, arm_len, mut next) = if k % 2 == 0 {
                    (vec![0; *t], (k - 2) / 2, 1)
                } else {
                    for u in 0..*t {
                        for v in u + 1..*t {
                            g.add_edge(u, v);
                        }
                    }
                    ((0..*t).collect::<Vec<_>>(), (k - 3) / 2, *t)
                };
                let mut tips = Vec::with_capacity(*t);
                for &root in &arm_roots {
                    let mut prev = root;
                    for _ in 0..arm_len {
                        g.add_edge(prev, next);
                        prev = next;
                        next += 1;
                    }
                    tips.push(prev);
                }
                for (tip, &count) in tips.iter().zip(leaf_counts) {
                    for _ in 0..count {
                        g.add_edge(*tip, next);
                        next += 1;
                    }
                }
                g
            }
            ConstructionSpec::Spider { n, legs, attachment_counts } => {
                let mut g = Graph::empty(*n)?;
                for leaf in 1..=*legs {
                    g.add_edge(0, leaf);
                }
                let mut next = legs + 1;
                for (i, &count) in attachment_counts.iter().enumerate() {
                    for _ in 0..count {
                        g.add_edge(i + 1, next);
                        next += 1;
                    }
                }
                g
            }
        };
        Ok(g)
    }

    /// The auxiliary triangle-free graph whose complement `G2Extremal`
    /// builds. Errors for the other variants.
    pub fn g2_auxiliary(&self) -> Result<Graph, ConstructionError> {
        let ConstructionSpec::G2Extremal { n, size_a, size_b_prime } = *self else {
            return Err(invalid(self.variant_name(), "only G2Extremal has an auxiliary graph"));
        };
        self.validate()?;
        let a1 = 0;
        let b_start = size_a;
        let b_second = size_a + size_b_prime;
        let a2 = n - 1;
        let mut h = Graph::empty(n)?;
        for a in 0..size_a {
            for b in b_start..a2 {
                if !(a == a1 && b < b_second) {
                    h.add_edge(a, b);
                }
            }
        }
        h.add_edge(a2, a1);
        for b in b_start..b_second {
            h.add_edge(a2, b);
        }
        Ok(h)
    }
}

fn bound_error(bound: &'static str, requirement: &'static str, got: String) -> BoundError {
    BoundError { bound, requirement, got }
}

/// `⌊(n-1)²/4⌋ + 1`, the maximum number of distance-2 pairs forming a
/// triangle-free graph on `n >= 5` vertices.
pub fn ex2_bound(n: u64) -> Result<u64, BoundError> {
    if n < 5 {
        return Err(bound_error("ex2_bound", "n >= 5", format!("n = {n}")));
    }
    Ok((n - 1) * (n - 1) / 4 + 1)
}

/// Value of `⌊(n-2)²/4⌋` for triangle-free distance-3 graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Ex3Bound {
    pub value: u64,
    /// `true` when `n >= 18`, the range where the value is known to be the
    /// maximum. Below that it is a lower bound from the constructions.
    pub proven: bool,
}

pub fn ex3_bound(n: u64) -> Result<Ex3Bound, BoundError> {
    if n < 4 {
        return Err(bound_error("ex3_bound", "n >= 4", format!("n = {n}")));
    }
    Ok(Ex3Bound { value: (n - 2) * (n - 2) / 4, proven: n >= 18 })
}

/// `(n - k + 1)² / 4` as an exact rational, for `k >= 3` and `n >= k + 1`.
pub fn tu_bound(n: u64, k: u64) -> Result<Ratio<u64>, BoundError> {
    if k < 3 || n < k + 1 {
        return Err(bound_error("tu_bound", "k >= 3 and n >= k + 1", format!("n = {n}, k = {k}")));
    }
    let m = n - k + 1;
    Ok(Ratio::new(m * m, 4))
}

/// `⌊(n-1)²/4⌋ + 1`, the maximum size of a triangle-free non-bipartite
/// graph on `n >= 5` vertices.
pub fn kp_nonbipartite_bound(n: u64) -> Result<u64, BoundError> {
    if n < 5 {
        return Err(bound_error("kp_nonbipartite_bound", "n >= 5", format!("n = {n}")));
    }
    Ok((n - 1) * (n - 1) / 4 + 1)
}

/// Every valid `G2Extremal` parameter choice for `n`, covering both
/// orientations of the bipartition when `n - 1` is odd.
pub fn g2_extremal_specs(n: usize) -> Vec<ConstructionSpec> {
    if n < 5 {
        return Vec::new();
    }
    let m = n - 1;
    let mut sizes = vec![m / 2];
    if m % 2 == 1 {
        sizes.push(m - m / 2);
    }
    let mut specs = Vec::new();
    for size_a in sizes {
        let size_b = m - size_a;
        for size_b_prime in 1..size_b {
            specs.push(ConstructionSpec::G2Extremal { n, size_a, size_b_prime });
        }
    }
    specs
}

/// The distance-2 extremal family for `n`, one graph per isomorphism
/// class, ordered by canonical form.
pub fn enumerate_g2_extremal_family(n: usize) -> Result<Vec<Graph>, ConstructionError> {
    Ok(g2_extremal_classes(n)?.into_values().collect())
}

/// Canonical forms of the distance-2 extremal family, mapped to the first
/// built member of each class.
pub fn g2_extremal_classes(n: usize) -> Result<BTreeMap<CanonicalForm, Graph>, ConstructionError> {
    if n < 5 {
        return Err(invalid("G2Extremal", format!("need n >= 5 (got {n})")));
    }
    let mut classes = BTreeMap::new();
    for spec in g2_extremal_specs(n) {
        let g = spec.build()?;
        classes.entry(canonical_form(&g)).or_insert(g);
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::distance::{all_pairs_distances, distance_k_graph};

    #[test]
    fn g2_extremal_n5_is_c5() {
        let g = ConstructionSpec::G2Extremal { n: 5, size_a: 2, size_b_prime: 1 }.build().unwrap();
        assert!(is_isomorphic(&g, &Graph::cycle(5).unwrap()));
        let g2 = distance_k_graph(&g, 2).unwrap();
        assert_eq!(g2.edge_count(), 5);
        assert!(g2.is_triangle_free());
    }

    #[test]
    fn g2_auxiliary_shape() {
        let spec = ConstructionSpec::G2Extremal { n: 8, size_a: 3, size_b_prime: 2 };
        let h = spec.g2_auxiliary().unwrap();
        assert_eq!(h.edge_count(), 3 * 4 + 1);
        assert!(h.is_triangle_free());
        assert!(!h.is_bipartite());
        assert_eq!(spec.build().unwrap(), h.complement());
        assert!(ConstructionSpec::Turan { n: 4, r: 2 }.g2_auxiliary().is_err());
    }

    #[test]
    fn double_broom_n9() {
        let g = ConstructionSpec::DoubleBroom { n: 9, k: 3, a: 3, b: 4 }.build().unwrap();
        assert_eq!(g.edge_count(), 8);
        assert!(g.is_connected());
        let d = all_pairs_distances(&g);
        let pairs = (0..9).flat_map(|u| (u + 1..9).map(move |v| (u, v)));
        let at3 = pairs.filter(|&(u, v)| d.get(u, v) == Some(3)).count();
        assert_eq!(at3, 12);
        let g3 = distance_k_graph(&g, 3).unwrap();
        let target = Graph::complete_bipartite(3, 4).unwrap().disjoint_union(&Graph::empty(2).unwrap()).unwrap();
        assert!(is_isomorphic(&g3, &target));
    }

    #[test]
    fn spider_n9() {
        let spec = ConstructionSpec::Spider { n: 9, legs: 4, attachment_counts: vec![1, 1, 1, 1] };
        assert_eq!(ConstructionSpec::spider_round_robin(9, 4).unwrap(), spec);
        let g = spec.build().unwrap();
        assert_eq!(g.edge_count(), 8);
        let g3 = distance_k_graph(&g, 3).unwrap();
        let mut target = Graph::complete_bipartite(4, 4).unwrap();
        for i in 0..4 {
            target.remove_edge(i, 4 + i);
        }
        let target = target.disjoint_union(&Graph::empty(1).unwrap()).unwrap();
        assert!(is_isomorphic(&g3, &target));
    }

    #[test]
    fn t_brooms() {
        // k = 3, t = 3: triangle with leaves; leaves on different clique
        // vertices are at distance 3.
        let spec = ConstructionSpec::TBroom { k: 3, t: 3, leaf_counts: vec![1, 2, 2] };
        assert_eq!(spec.order(), 8);
        let g3 = distance_k_graph(&spec.build().unwrap(), 3).unwrap();
        assert_eq!(g3.edge_count(), 2 + 2 + 4);
        assert_eq!(crate::clique::clique_number(&g3), 3);
        // k = 4: centre plus arms of one vertex each
        let spec = ConstructionSpec::TBroom { k: 4, t: 2, leaf_counts: vec![2, 3] };
        assert_eq!(spec.order(), 1 + 2 + 5);
        let g4 = distance_k_graph(&spec.build().unwrap(), 4).unwrap();
        assert_eq!(g4.edge_count(), 6);
        // k = 5, t = 2: edge, arms of one vertex, leaves at distance 5
        let spec = ConstructionSpec::TBroom { k: 5, t: 2, leaf_counts: vec![1, 1] };
        let g = spec.build().unwrap();
        assert_eq!(g, Graph::path(6).unwrap().permute(&[4, 2, 0, 1, 3, 5]));
        assert_eq!(distance_k_graph(&g, 5).unwrap().edge_count(), 1);
    }

    #[test]
    fn turan_graph() {
        let g = ConstructionSpec::Turan { n: 7, r: 3 }.build().unwrap();
        assert_eq!(g.edge_count(), 21 - (3 + 1 + 1));
        assert_eq!(crate::clique::clique_number(&g), 3);
        let t = ConstructionSpec::Turan { n: 4, r: 4 }.build().unwrap();
        assert_eq!(t, Graph::complete(4).unwrap());
    }

    #[test]
    fn validation_names_the_constraint() {
        let cases = [
            ConstructionSpec::Turan { n: 3, r: 4 },
            ConstructionSpec::G2Extremal { n: 4, size_a: 2, size_b_prime: 1 },
            ConstructionSpec::G2Extremal { n: 8, size_a: 2, size_b_prime: 1 },
            ConstructionSpec::G2Extremal { n: 8, size_a: 3, size_b_prime: 4 },
            ConstructionSpec::G2Extremal { n: 8, size_a: 3, size_b_prime: 0 },
            ConstructionSpec::DoubleBroom { n: 9, k: 3, a: 3, b: 3 },
            ConstructionSpec::DoubleBroom { n: 9, k: 2, a: 4, b: 4 },
            ConstructionSpec::DoubleBroom { n: 9, k: 3, a: 0, b: 7 },
            ConstructionSpec::TBroom { k: 2, t: 2, leaf_counts: vec![1, 1] },
            ConstructionSpec::TBroom { k: 4, t: 2, leaf_counts: vec![1] },
            ConstructionSpec::TBroom { k: 4, t: 2, leaf_counts: vec![1, 0] },
            ConstructionSpec::Spider { n: 9, legs: 3, attachment_counts: vec![2, 2, 1] },
            ConstructionSpec::Spider { n: 9, legs: 4, attachment_counts: vec![1, 1, 1] },
            ConstructionSpec::Spider { n: 9, legs: 4, attachment_counts: vec![1, 1, 1, 2] },
            ConstructionSpec::TBroom { k: 3, t: 40, leaf_counts: vec![1; 40] },
        ];
        for spec in cases {
            match spec.build() {
                Err(ConstructionError::Invalid { variant, constraint }) => {
                    assert_eq!(variant, spec.variant_name());
                    assert!(!constraint.is_empty());
                }
                other => panic!("{spec:?} should be rejected, got {other:?}"),
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let spec: ConstructionSpec =
            serde_json::from_str(r#"{"variant":"DoubleBroom","n":9,"k":3,"a":3,"b":4}"#).unwrap();
        assert_eq!(spec, ConstructionSpec::DoubleBroom { n: 9, k: 3, a: 3, b: 4 });
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<ConstructionSpec>(&text).unwrap(), spec);
    }

    #[test]
    fn bounds() {
        assert_eq!(ex2_bound(5).unwrap(), 5);
        assert_eq!(ex2_bound(6).unwrap(), 7);
        assert_eq!(ex2_bound(9).unwrap(), 17);
        assert!(ex2_bound(4).is_err());
        assert_eq!(ex3_bound(18).unwrap(), Ex3Bound { value: 64, proven: true });
        assert_eq!(ex3_bound(9).unwrap(), Ex3Bound { value: 12, proven: false });
        assert_eq!(ex3_bound(4).unwrap().value, 1);
        assert!(ex3_bound(3).is_err());
        assert_eq!(tu_bound(9, 3).unwrap(), Ratio::new(49, 4));
        assert_eq!(tu_bound(8, 3).unwrap(), Ratio::from_integer(9));
        for k in 3..20 {
            assert_eq!(tu_bound(k + 1, k).unwrap(), Ratio::from_integer(1));
        }
        assert!(tu_bound(3, 3).is_err());
        assert!(tu_bound(9, 2).is_err());
        assert_eq!(kp_nonbipartite_bound(5).unwrap(), 5);
        assert_eq!(kp_nonbipartite_bound(7).unwrap(), 10);
        assert_eq!(kp_nonbipartite_bound(9).unwrap(), 17);
        for n in 5..200 {
            assert_eq!(ex2_bound(n), kp_nonbipartite_bound(n));
            assert_eq!(tu_bound(n, 3).unwrap().floor().to_integer(), ex3_bound(n).unwrap().value);
        }
    }

    #[test]
    fn g2_specs_cover_orientations() {
        let specs = g2_extremal_specs(6);
        assert_eq!(
            specs,
            vec![
                ConstructionSpec::G2Extremal { n: 6, size_a: 2, size_b_prime: 1 },
                ConstructionSpec::G2Extremal { n: 6, size_a: 2, size_b_prime: 2 },
                ConstructionSpec::G2Extremal { n: 6, size_a: 3, size_b_prime: 1 },
            ]
        );
        assert_eq!(g2_extremal_specs(7).len(), 2);
    }
}
