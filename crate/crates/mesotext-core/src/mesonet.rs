//! The mesoscopic network: pairwise window similarities and their pruning
//! into an unweighted graph.
//!
//! The weighted graph is the full symmetric matrix of cosine similarities
//! between window vectors, zero diagonal, each unordered pair computed once.
//! Pruning keeps either every edge strictly above a fixed threshold or a
//! fixed fraction of the strongest edges; after pruning the weights are
//! discarded and only the adjacency structure remains. Nodes are never
//! dropped: a window that loses all its edges stays as an isolated node.

use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::{ClassLabel, OrganizedText};
use crate::error::{Error, Result};
use crate::vectorizer::{cosine_similarity, TfIdfVector};

// -------------------------------------------------------- weighted graph --

/// Symmetric matrix of window-pair similarities.
pub struct WeightedSimilarityGraph {
    n: usize,
    weights: Vec<f64>,
    zero_vectors: usize,
}

impl WeightedSimilarityGraph {
    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.weights[i * self.n + j]
    }

    /// Number of window vectors that were all-zero (their similarities are
    /// all zero by convention).
    pub fn zero_vector_count(&self) -> usize {
        self.zero_vectors
    }

    /// Upper-triangle entries (i < j) in row-major order.
    pub fn off_diagonal(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |i| {
            ((i + 1)..self.n).map(move |j| (i, j, self.weight(i, j)))
        })
    }

    pub fn pair_count(&self) -> usize {
        self.n * (self.n - 1) / 2
    }
}

/// Computes all pairwise cosine similarities. Each unordered pair is
/// computed once and mirrored, so symmetry is exact by construction. Rows
/// are independent, which makes the computation parallel without affecting
/// any value.
pub fn build_similarity_graph(vectors: &[TfIdfVector]) -> WeightedSimilarityGraph {
    let n = vectors.len();
    let zero_vectors = vectors.iter().filter(|v| v.is_zero()).count();
    if zero_vectors > 0 {
        log::warn!("{zero_vectors} of {n} window vectors are all-zero; their similarities default to 0");
    }
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            ((i + 1)..n)
                .map(|j| cosine_similarity(&vectors[i], &vectors[j]))
                .collect()
        })
        .collect();
    let mut weights = vec![0.0; n * n];
    for (i, row) in rows.iter().enumerate() {
        for (offset, &w) in row.iter().enumerate() {
            let j = i + 1 + offset;
            weights[i * n + j] = w;
            weights[j * n + i] = w;
        }
    }
    WeightedSimilarityGraph { n, weights, zero_vectors }
}

// ----------------------------------------------------------------- prune --

/// How the weighted graph is cut down to an unweighted one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PruneRule {
    /// Keep edges with weight strictly above this value.
    Threshold(f64),
    /// Keep exactly round(q * n(n-1)/2) of the strongest edges,
    /// 0 <= q <= 1. Ties are broken by the (weight, i, j) order, so the
    /// result is deterministic.
    Retention(f64),
}

/// Identity of a network: where it came from and how it was built.
#[derive(Debug, Clone, Serialize)]
pub struct NetworkMeta {
    pub source_id: String,
    pub class_label: ClassLabel,
    pub delta: usize,
    /// Per-node chapter labels (chapter of the window's start paragraph).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chapters: Option<Vec<String>>,
}

impl NetworkMeta {
    /// Meta for a network of `node_count` windows over `source`: node k is
    /// labeled with the chapter of paragraph k.
    pub fn from_text(source: &OrganizedText, delta: usize, node_count: usize) -> Self {
        NetworkMeta {
            source_id: source.source_id.clone(),
            class_label: source.class_label,
            delta,
            chapters: source
                .chapters
                .as_ref()
                .map(|c| c[..node_count].to_vec()),
        }
    }
}

/// An unweighted window network plus provenance.
pub struct MesoscopicNetwork {
    neighbors: Vec<Vec<u32>>,
    edge_count: usize,
    /// Effective threshold: the rule's value in threshold mode, the weight
    /// of the weakest kept edge in retention mode (1.0 when nothing is
    /// kept, since no similarity exceeds 1).
    pub threshold: f64,
    /// Fraction of possible edges actually kept.
    pub retention: f64,
    pub meta: NetworkMeta,
}

impl MesoscopicNetwork {
    pub fn node_count(&self) -> usize {
        self.neighbors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors[i].len()
    }

    /// Sorted neighbor list of node i.
    pub fn neighbors(&self, i: usize) -> &[u32] {
        &self.neighbors[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.neighbors[i].binary_search(&(j as u32)).is_ok()
    }

    /// Undirected edges as (i, j) with i < j, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.neighbors.iter().enumerate().flat_map(|(i, ns)| {
            ns.iter()
                .filter(move |&&j| (i as u32) < j)
                .map(move |&j| (i as u32, j))
        })
    }

    /// Builds a network directly from an explicit edge list (testing and
    /// baseline tooling; pipeline networks come from [`prune`]).
    pub fn from_edges(n: usize, edges: &[(u32, u32)], meta: NetworkMeta) -> Self {
        let mut neighbors = vec![Vec::new(); n];
        let mut count = 0;
        for &(i, j) in edges {
            debug_assert!(i != j, "self loops are not representable");
            neighbors[i as usize].push(j);
            neighbors[j as usize].push(i);
            count += 1;
        }
        for ns in &mut neighbors {
            ns.sort_unstable();
            ns.dedup();
        }
        let edge_count = count.min(neighbors.iter().map(Vec::len).sum::<usize>() / 2);
        MesoscopicNetwork {
            neighbors,
            edge_count,
            threshold: 0.0,
            retention: 0.0,
            meta,
        }
    }
}

/// Prunes the weighted graph into an unweighted network.
pub fn prune(
    g: &WeightedSimilarityGraph,
    rule: PruneRule,
    meta: NetworkMeta,
) -> Result<MesoscopicNetwork> {
    let n = g.node_count();
    let kept: Vec<(usize, usize)>;
    let threshold;
    match rule {
        PruneRule::Threshold(t) => {
            if !t.is_finite() {
                return Err(Error::InvalidParameter("threshold must be finite".into()));
            }
            kept = g
                .off_diagonal()
                .filter(|&(_, _, w)| w > t)
                .map(|(i, j, _)| (i, j))
                .collect();
            threshold = t;
        }
        PruneRule::Retention(q) => {
            if !(0.0..=1.0).contains(&q) {
                return Err(Error::InvalidParameter(format!(
                    "retention fraction must be in [0, 1], got {q}"
                )));
            }
            let target = (q * g.pair_count() as f64).round() as usize;
            if target == 0 {
                log::warn!("retention {q} keeps no edges of {}", g.pair_count());
            }
            let mut pairs: Vec<(f64, usize, usize)> =
                g.off_diagonal().map(|(i, j, w)| (w, i, j)).collect();
            // Descending (weight, i, j): a deterministic total order, so a
            // larger target always extends a smaller one.
            pairs.sort_unstable_by(|a, b| {
                b.0.total_cmp(&a.0).then(b.1.cmp(&a.1)).then(b.2.cmp(&a.2))
            });
            threshold = if target == 0 { 1.0 } else { pairs[target - 1].0 };
            kept = pairs[..target].iter().map(|&(_, i, j)| (i, j)).collect();
        }
    }

    let mut neighbors = vec![Vec::new(); n];
    for &(i, j) in &kept {
        neighbors[i].push(j as u32);
        neighbors[j].push(i as u32);
    }
    for ns in &mut neighbors {
        ns.sort_unstable();
    }
    let retention = if g.pair_count() == 0 {
        0.0
    } else {
        kept.len() as f64 / g.pair_count() as f64
    };
    Ok(MesoscopicNetwork {
        neighbors,
        edge_count: kept.len(),
        threshold,
        retention,
        meta,
    })
}

// ----------------------------------------------------------------- tests --


#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn meta() -> NetworkMeta {
        NetworkMeta {
            source_id: "t".into(),
            class_label: ClassLabel::Real,
            delta: 1,
            chapters: None,
        }
    }

    fn graph_from(vectors: Vec<Vec<(u32, f64)>>) -> WeightedSimilarityGraph {
        let vs: Vec<TfIdfVector> = vectors.into_iter().map(TfIdfVector::from_entries).collect();
        build_similarity_graph(&vs)
    }

    #[test]
    fn similarity_matrix_is_symmetric_with_zero_diagonal() {
        let g = graph_from(vec![
            vec![(0, 1.0), (1, 2.0)],
            vec![(1, 1.0), (2, 3.0)],
            vec![(0, 5.0)],
        ]);
        for i in 0..3 {
            assert_eq!(g.weight(i, i), 0.0);
            for j in 0..3 {
                assert_eq!(g.weight(i, j).to_bits(), g.weight(j, i).to_bits());
            }
        }
    }

    #[test]
    fn oracle_pairwise_check() {
        // Direct dense recomputation of every pair, independent of the
        // row-parallel path.
        let vectors: Vec<TfIdfVector> = (0..6)
            .map(|i| {
                TfIdfVector::from_entries(
                    (0..4).map(|k| ((i + k) % 7, (1 + (i * k) % 5) as f64)).collect(),
                )
            })
            .collect();
        let g = build_similarity_graph(&vectors);
        for i in 0..6 {
            for j in 0..6 {
                let expect = if i == j {
                    0.0
                } else {
                    cosine_similarity(&vectors[i], &vectors[j])
                };
                assert_eq!(g.weight(i, j).to_bits(), expect.to_bits());
            }
        }
    }

    #[test]
    fn zero_vectors_are_counted() {
        let g = graph_from(vec![vec![(0, 1.0)], vec![], vec![]]);
        assert_eq!(g.zero_vector_count(), 2);
        assert_eq!(g.weight(0, 1), 0.0);
    }

    fn line_graph_weights(n: usize) -> WeightedSimilarityGraph {
        // Weight between i and j decays with distance; handy known order.
        let mut weights = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    weights[i * n + j] = 1.0 / (i.abs_diff(j) as f64);
                }
            }
        }
        WeightedSimilarityGraph { n, weights, zero_vectors: 0 }
    }

    #[test]
    fn threshold_keeps_strictly_greater() {
        let g = line_graph_weights(4);
        // Distance-1 pairs weigh 1.0, distance-2 pairs 0.5.
        let net = prune(&g, PruneRule::Threshold(0.5), meta()).unwrap();
        let edges: Vec<_> = net.edges().collect();
        assert_eq!(edges, vec![(0, 1), (1, 2), (2, 3)]);
        // Strictness: nothing at exactly the threshold survives.
        let none = prune(&g, PruneRule::Threshold(1.0), meta()).unwrap();
        assert_eq!(none.edge_count(), 0);
        assert_eq!(none.node_count(), 4);
    }

    #[test]
    fn retention_keeps_exact_count_with_tie_rule() {
        // All weights equal: only the tie rule decides.
        let n = 4;
        let weights = (0..n * n)
            .map(|ix| if ix / n == ix % n { 0.0 } else { 0.7 })
            .collect();
        let g = WeightedSimilarityGraph { n, weights, zero_vectors: 0 };
        let net = prune(&g, PruneRule::Retention(0.5), meta()).unwrap();
        // round(0.5 * 6) = 3 edges; descending (weight, i, j) picks the
        // largest (i, j) pairs first: (2,3), (1,3), (1,2).
        assert_eq!(net.edge_count(), 3);
        let edges: Vec<_> = net.edges().collect();
        assert_eq!(edges, vec![(1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn retention_full_and_empty() {
        let g = line_graph_weights(5);
        let all = prune(&g, PruneRule::Retention(1.0), meta()).unwrap();
        assert_eq!(all.edge_count(), 10);
        let none = prune(&g, PruneRule::Retention(0.0), meta()).unwrap();
        assert_eq!(none.edge_count(), 0);
        assert!(prune(&g, PruneRule::Retention(1.5), meta()).is_err());
    }

    #[test]
    fn retention_reports_weakest_kept_weight_as_threshold() {
        let g = line_graph_weights(5);
        let net = prune(&g, PruneRule::Retention(0.4), meta()).unwrap();
        assert_eq!(net.edge_count(), 4);
        assert_abs_diff_eq!(net.threshold, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(net.retention, 0.4, epsilon = 1e-12);
    }

    #[test]
    fn threshold_monotonicity() {
        let g = line_graph_weights(8);
        let tight = prune(&g, PruneRule::Threshold(0.6), meta()).unwrap();
        let loose = prune(&g, PruneRule::Threshold(0.3), meta()).unwrap();
        for (i, j) in tight.edges() {
            assert!(loose.has_edge(i as usize, j as usize));
        }
        assert!(loose.edge_count() >= tight.edge_count());
    }

    #[test]
    fn isolated_nodes_are_retained() {
        let mut weights = vec![0.0; 9];
        weights[1] = 0.9;
        weights[3] = 0.9; // edge (0,1) only; node 2 isolated
        let g = WeightedSimilarityGraph { n: 3, weights, zero_vectors: 0 };
        let net = prune(&g, PruneRule::Threshold(0.5), meta()).unwrap();
        assert_eq!(net.node_count(), 3);
        assert_eq!(net.degree(2), 0);
    }

    #[test]
    fn from_edges_builds_sorted_adjacency() {
        let net = MesoscopicNetwork::from_edges(4, &[(2, 0), (1, 2), (0, 1)], meta());
        assert_eq!(net.edge_count(), 3);
        assert_eq!(net.neighbors(2), &[0, 1]);
        assert!(net.has_edge(0, 2));
        assert!(!net.has_edge(0, 3));
    }
}
