//! Per-node and per-edge structure measures of the pruned network, and the
//! canonical orderings that turn them into series.
//!
//! The clustering coefficient of node i is the fraction of its neighbor
//! pairs that are themselves linked: N_triangles(i) / (deg(i) choose 2),
//! zero below degree 2. The matching index of edge (i, j) counts common
//! neighbors against the total other-neighbor count deg(i) + deg(j) - 2,
//! zero when that denominator vanishes (an isolated dyad).
//!
//! Edge measures are read out in a fixed order: scan the full adjacency
//! matrix row by row and emit every ordered pair that is an edge, so each
//! undirected edge appears twice and the series has 2|E| entries. Node
//! measures are read out in node order.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::mesonet::{MesoscopicNetwork, WeightedSimilarityGraph};

/// A value per node, in node order.
#[derive(Debug, Clone)]
pub struct NodeSeries {
    pub name: String,
    pub values: Vec<f64>,
}

/// A value per ordered edge appearance, in matrix scan order.
#[derive(Debug, Clone)]
pub struct EdgeSeries {
    pub name: String,
    /// (i, j, value); every undirected edge contributes (i, j) and (j, i).
    pub entries: Vec<(u32, u32, f64)>,
}

impl EdgeSeries {
    pub fn values(&self) -> Vec<f64> {
        self.entries.iter().map(|&(_, _, v)| v).collect()
    }
}

// --------------------------------------------------------------- metrics --

/// Clustering coefficients over sorted adjacency lists. Shared by the
/// window networks and the word-adjacency baseline.
pub fn clustering_values(adjacency: &[Vec<u32>]) -> Vec<f64> {
    adjacency
        .iter()
        .map(|neighbors| {
            let deg = neighbors.len();
            if deg < 2 {
                return 0.0;
            }
            // Each triangle at i is a linked neighbor pair; count via
            // sorted-list intersections, halved for double counting.
            let linked: usize = neighbors
                .iter()
                .map(|&u| sorted_intersection_size(neighbors, &adjacency[u as usize]))
                .sum();
            let triangles = linked / 2;
            triangles as f64 / (deg * (deg - 1) / 2) as f64
        })
        .collect()
}

fn sorted_intersection_size(a: &[u32], b: &[u32]) -> usize {
    let (mut ia, mut ib, mut count) = (0, 0, 0);
    while ia < a.len() && ib < b.len() {
        match a[ia].cmp(&b[ib]) {
            std::cmp::Ordering::Less => ia += 1,
            std::cmp::Ordering::Greater => ib += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                ia += 1;
                ib += 1;
            }
        }
    }
    count
}

/// Clustering coefficient of every node of the pruned network.
pub fn clustering_coefficient(net: &MesoscopicNetwork) -> NodeSeries {
    let adjacency: Vec<Vec<u32>> = (0..net.node_count())
        .map(|i| net.neighbors(i).to_vec())
        .collect();
    NodeSeries {
        name: "clustering".into(),
        values: clustering_values(&adjacency),
    }
}

/// Matching index of every edge, emitted in matrix scan order (2|E|
/// entries).
pub fn matching_index(net: &MesoscopicNetwork) -> EdgeSeries {
    let mut per_edge = HashMap::new();
    for (i, j) in net.edges() {
        let (ni, nj) = (net.neighbors(i as usize), net.neighbors(j as usize));
        // No self loops, so the intersection can contain neither i nor j.
        let common = sorted_intersection_size(ni, nj);
        let denom = ni.len() + nj.len() - 2;
        let value = if denom == 0 {
            0.0
        } else {
            common as f64 / denom as f64
        };
        per_edge.insert((i, j), value);
    }
    edge_series_order(net, "matching", &per_edge)
}

/// Expands per-undirected-edge values (keyed (i, j) with i < j) into the
/// canonical ordered-pair series.
pub fn edge_series_order(
    net: &MesoscopicNetwork,
    name: &str,
    per_edge: &HashMap<(u32, u32), f64>,
) -> EdgeSeries {
    let n = net.node_count();
    let mut entries = Vec::new();
    for i in 0..n {
        for &j in net.neighbors(i) {
            let key = (i.min(j as usize) as u32, i.max(j as usize) as u32);
            let value = *per_edge
                .get(&key)
                .expect("every edge of the network has a value");
            entries.push((i as u32, j, value));
        }
    }
    EdgeSeries { name: name.into(), entries }
}

// ------------------------------------------------------------ long range --

/// Node-index span beyond which an edge counts as long-range.
pub const LONG_RANGE_SPAN: u32 = 100;

/// One retained edge with its index span and original weight.
#[derive(Debug, Clone, Copy)]
pub struct LongRangeEntry {
    pub i: u32,
    pub j: u32,
    /// |i - j|, at least 1.
    pub span: u32,
    pub weight: f64,
    /// span > [`LONG_RANGE_SPAN`].
    pub long_range: bool,
}

/// Pairs every retained edge with its similarity weight and index span.
/// The weighted graph must be the one the network was pruned from.
pub fn long_range_profile(
    g: &WeightedSimilarityGraph,
    net: &MesoscopicNetwork,
) -> Result<Vec<LongRangeEntry>> {
    if g.node_count() != net.node_count() {
        return Err(Error::InvalidParameter(format!(
            "weighted graph has {} nodes, network has {}",
            g.node_count(),
            net.node_count()
        )));
    }
    Ok(net
        .edges()
        .map(|(i, j)| {
            let span = j - i;
            LongRangeEntry {
                i,
                j,
                span,
                weight: g.weight(i as usize, j as usize),
                long_range: span > LONG_RANGE_SPAN,
            }
        })
        .collect())
}

// ----------------------------------------------------------------- tests --
