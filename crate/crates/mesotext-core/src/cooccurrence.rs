//! Word-adjacency baseline: one network per text, nodes are distinct words,
//! edges link words that appear next to each other inside a paragraph.
//! Edges never cross paragraph boundaries, repeats collapse, and a word is
//! never linked to itself.
//!
//! Because network size tracks vocabulary size, texts are first trimmed to
//! the common token count so the networks are comparable. Each network is
//! then reduced to a fixed 34-value summary: eight per-node measures
//! (degree, clustering, betweenness, harmonic closeness, eccentricity,
//! eigenvector centrality, PageRank, neighborhood connectivity), each
//! summarized by max, median, min and standard deviation, plus the
//! modularity of a greedy agglomerative partition and the node count.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use crate::corpus::{ClassLabel, OrganizedText};
use crate::error::{Error, Result};
use crate::graphmetrics::clustering_values;
use crate::util::{median, pop_std};

// -------------------------------------------------------------- trimming --

/// Truncates every text to the smallest total token count in the set,
/// preserving paragraph structure up to the cut. The paragraph containing
/// the cut is truncated; later paragraphs (and their chapter labels) are
/// dropped.
pub fn trim_to_common_length(texts: &[OrganizedText]) -> Result<Vec<OrganizedText>> {
    let min = texts
        .iter()
        .map(OrganizedText::token_count)
        .min()
        .ok_or_else(|| Error::DegenerateCorpus("no texts to trim".into()))?;
    Ok(texts
        .iter()
        .map(|o| {
            let mut remaining = min;
            let mut paragraphs = Vec::new();
            for p in &o.paragraphs {
                if remaining == 0 {
                    break;
                }
                let take = p.len().min(remaining);
                paragraphs.push(p[..take].to_vec());
                remaining -= take;
            }
            let chapters = o.chapters.as_ref().map(|c| c[..paragraphs.len()].to_vec());
            OrganizedText {
                source_id: o.source_id.clone(),
                class_label: o.class_label,
                paragraphs,
                chapters,
            }
        })
        .collect())
}

// ---------------------------------------------------------- construction --

/// Unweighted word-adjacency network of one text.
pub struct CoOccurrenceNetwork {
    words: Vec<String>,
    neighbors: Vec<Vec<u32>>,
    pub source_id: String,
    pub class_label: ClassLabel,
}

impl CoOccurrenceNetwork {
    pub fn node_count(&self) -> usize {
        self.words.len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn word(&self, ix: u32) -> &str {
        &self.words[ix as usize]
    }

    pub fn index_of(&self, word: &str) -> Option<u32> {
        self.words.iter().position(|w| w == word).map(|i| i as u32)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors[i].len()
    }

    /// Sorted adjacency lists.
    pub fn adjacency(&self) -> &[Vec<u32>] {
        &self.neighbors
    }

    /// Undirected edges (i, j) with i < j, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.neighbors.iter().enumerate().flat_map(|(i, ns)| {
            ns.iter()
                .filter(move |&&j| (i as u32) < j)
                .map(move |&j| (i as u32, j))
        })
    }
}

/// Builds the word-adjacency network. Node indices follow first occurrence
/// of each word, so the construction is a pure function of the text.
pub fn build_cooccurrence(o: &OrganizedText) -> CoOccurrenceNetwork {
    let mut words = Vec::new();
    let mut index: HashMap<&str, u32> = HashMap::new();
    for token in o.tokens() {
        if !index.contains_key(token) {
            index.insert(token, words.len() as u32);
            words.push(token.to_string());
        }
    }
    let mut edges: HashSet<(u32, u32)> = HashSet::new();
    for paragraph in &o.paragraphs {
        for pair in paragraph.windows(2) {
            let a = index[pair[0].as_str()];
            let b = index[pair[1].as_str()];
            if a != b {
                edges.insert((a.min(b), a.max(b)));
            }
        }
    }
    let mut neighbors = vec![Vec::new(); words.len()];
    for &(a, b) in &edges {
        neighbors[a as usize].push(b);
        neighbors[b as usize].push(a);
    }
    for ns in &mut neighbors {
        ns.sort_unstable();
    }
    CoOccurrenceNetwork {
        words,
        neighbors,
        source_id: o.source_id.clone(),
        class_label: o.class_label,
    }
}

// ------------------------------------------------------- path measures --

/// Betweenness, harmonic closeness and eccentricity from one BFS sweep per
/// source. Betweenness counts each unordered pair once; closeness is the
/// sum of inverse distances to reachable nodes; eccentricity is the largest
/// distance within the node's component.
pub struct PathMeasures {
    pub betweenness: Vec<f64>,
    pub closeness: Vec<f64>,
    pub eccentricity: Vec<f64>,
}

pub fn path_measures(adjacency: &[Vec<u32>]) -> PathMeasures {
    let n = adjacency.len();
    // Sources are processed in fixed chunks and the per-chunk betweenness
    // contributions are added in chunk order, so the floating-point result
    // does not depend on thread scheduling.
    let sources: Vec<usize> = (0..n).collect();
    let chunk_results: Vec<(Vec<f64>, Vec<(usize, f64, f64)>)> = sources
        .par_chunks(64)
        .map(|chunk| {
            let mut bc = vec![0.0; n];
            let mut per_source = Vec::with_capacity(chunk.len());
            for &s in chunk {
                let (closeness, eccentricity) = brandes_from(adjacency, s, &mut bc);
                per_source.push((s, closeness, eccentricity));
            }
            (bc, per_source)
        })
        .collect();
    let mut betweenness = vec![0.0; n];
    let mut closeness = vec![0.0; n];
    let mut eccentricity = vec![0.0; n];
    for (bc, per_source) in chunk_results {
        for (i, v) in bc.into_iter().enumerate() {
            betweenness[i] += v;
        }
        for (s, c, e) in per_source {
            closeness[s] = c;
            eccentricity[s] = e;
        }
    }
    // Each unordered pair was seen from both endpoints.
    for v in &mut betweenness {
        *v /= 2.0;
    }
    PathMeasures { betweenness, closeness, eccentricity }
}

/// One source sweep: accumulates betweenness into `bc`, returns the
/// source's (harmonic closeness, eccentricity).
fn brandes_from(adjacency: &[Vec<u32>], s: usize, bc: &mut [f64]) -> (f64, f64) {
    let n = adjacency.len();
    let mut dist = vec![usize::MAX; n];
    let mut sigma = vec![0.0f64; n];
    let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let mut queue = std::collections::VecDeque::new();
    dist[s] = 0;
    sigma[s] = 1.0;
    queue.push_back(s);
    let mut closeness = 0.0;
    let mut eccentricity = 0usize;
    while let Some(v) = queue.pop_front() {
        order.push(v);
        if dist[v] > 0 {
            closeness += 1.0 / dist[v] as f64;
            eccentricity = eccentricity.max(dist[v]);
        }
        for &w in &adjacency[v] {
            let w = w as usize;
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[v] + 1 {
                sigma[w] += sigma[v];
                preds[w].push(v as u32);
            }
        }
    }
    let mut delta = vec![0.0f64; n];
    for &w in order.iter().rev() {
        for &v in &preds[w] {
            let v = v as usize;
            delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
        }
        if w != s {
            bc[w] += delta[w];
        }
    }
    (closeness, eccentricity as f64)
}

// ------------------------------------------------- eigenvector, pagerank --

/// Connected components; returns (membership, component sizes).
fn components(adjacency: &[Vec<u32>]) -> (Vec<usize>, Vec<usize>) {
    let n = adjacency.len();
    let mut membership = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    for start in 0..n {
        if membership[start] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        let mut size = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        membership[start] = id;
        while let Some(v) = queue.pop_front() {
            size += 1;
            for &w in &adjacency[v] {
                let w = w as usize;
                if membership[w] == usize::MAX {
                    membership[w] = id;
                    queue.push_back(w);
                }
            }
        }
        sizes.push(size);
    }
    (membership, sizes)
}

const ITERATION_TOLERANCE: f64 = 1e-10;
const MAX_ITERATIONS: usize = 100_000;

/// Eigenvector centrality of the largest connected component (ties go to
/// the component discovered first), zero elsewhere, normalized to unit
/// Euclidean norm. Power iteration on A + I, which has the same principal
/// eigenvector and converges on bipartite components too.
pub fn eigenvector_values(adjacency: &[Vec<u32>]) -> Vec<f64> {
    let n = adjacency.len();
    if n == 0 {
        return Vec::new();
    }
    let (membership, sizes) = components(adjacency);
    let largest = sizes
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .map(|(id, _)| id)
        .expect("at least one component");
    let in_comp: Vec<bool> = membership.iter().map(|&m| m == largest).collect();
    let mut x: Vec<f64> = in_comp.iter().map(|&c| if c { 1.0 } else { 0.0 }).collect();
    normalize_l2(&mut x);
    for it in 0..MAX_ITERATIONS {
        let mut next = vec![0.0; n];
        for v in 0..n {
            if !in_comp[v] {
                continue;
            }
            let mut sum = x[v]; // the +I shift
            for &w in &adjacency[v] {
                sum += x[w as usize];
            }
            next[v] = sum;
        }
        normalize_l2(&mut next);
        let diff = x
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        x = next;
        if diff < ITERATION_TOLERANCE {
            return x;
        }
        if it == MAX_ITERATIONS - 1 {
            log::warn!("eigenvector iteration hit the cap without converging");
        }
    }
    x
}

fn normalize_l2(x: &mut [f64]) {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        for v in x {
            *v /= norm;
        }
    }
}

/// PageRank with damping 0.85 and uniform teleport; edges act in both
/// directions and degree-zero nodes spread their mass uniformly. The
/// result sums to 1.
pub fn pagerank_values(adjacency: &[Vec<u32>]) -> Vec<f64> {
    let n = adjacency.len();
    if n == 0 {
        return Vec::new();
    }
    let d = 0.85;
    let mut x = vec![1.0 / n as f64; n];
    for it in 0..MAX_ITERATIONS {
        let dangling: f64 = (0..n)
            .filter(|&v| adjacency[v].is_empty())
            .map(|v| x[v])
            .sum();
        let base = (1.0 - d) / n as f64 + d * dangling / n as f64;
        let mut next = vec![base; n];
        for v in 0..n {
            if adjacency[v].is_empty() {
                continue;
            }
            let share = d * x[v] / adjacency[v].len() as f64;
            for &w in &adjacency[v] {
                next[w as usize] += share;
            }
        }
        let diff: f64 = x.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        x = next;
        if diff < ITERATION_TOLERANCE {
            break;
        }
        if it == MAX_ITERATIONS - 1 {
            log::warn!("pagerank iteration hit the cap without converging");
        }
    }
    x
}

/// Mean degree of each node's neighbors; 0 for isolated nodes.
pub fn neighborhood_connectivity_values(adjacency: &[Vec<u32>]) -> Vec<f64> {
    adjacency
        .iter()
        .map(|ns| {
            if ns.is_empty() {
                0.0
            } else {
                ns.iter().map(|&w| adjacency[w as usize].len() as f64).sum::<f64>()
                    / ns.len() as f64
            }
        })
        .collect()
}

// ------------------------------------------------------------ modularity --

/// A community partition and its modularity.
pub struct ModularityResult {
    pub membership: Vec<usize>,
    pub q: f64,
}

/// Modularity of an explicit partition: sum over communities of
/// (internal edge fraction) - (endpoint fraction)^2.
pub fn modularity(adjacency: &[Vec<u32>], membership: &[usize]) -> f64 {
    let m2: f64 = adjacency.iter().map(|ns| ns.len() as f64).sum();
    if m2 == 0.0 {
        return 0.0;
    }
    let communities = membership.iter().max().map_or(0, |&c| c + 1);
    let mut internal = vec![0.0f64; communities];
    let mut endpoints = vec![0.0f64; communities];
    for (v, ns) in adjacency.iter().enumerate() {
        endpoints[membership[v]] += ns.len() as f64;
        for &w in ns {
            if membership[v] == membership[w as usize] {
                internal[membership[v]] += 1.0; // counts each inner edge twice
            }
        }
    }
    (0..communities)
        .map(|c| internal[c] / m2 - (endpoints[c] / m2) * (endpoints[c] / m2))
        .sum()
}

/// Greedy agglomerative community search: start from singletons, repeatedly
/// merge the connected community pair with the largest modularity gain,
/// stop when no merge gains. Ties break toward the lowest community ids,
/// so the partition is deterministic.
pub fn greedy_modularity(adjacency: &[Vec<u32>]) -> ModularityResult {
    let n = adjacency.len();
    let m2: f64 = adjacency.iter().map(|ns| ns.len() as f64).sum();
    if m2 == 0.0 {
        return ModularityResult { membership: (0..n).collect(), q: 0.0 };
    }
    let m = m2 / 2.0;
    // Community state, indexed by original node id; merged-away slots None.
    struct Community {
        neighbors: HashMap<usize, f64>, // edge fractions to other communities
        internal: f64,                  // fraction of edges inside
        endpoints: f64,                 // fraction of endpoints
        members: Vec<u32>,
    }
    let mut comms: Vec<Option<Community>> = (0..n)
        .map(|v| {
            let mut neighbors = HashMap::new();
            for &w in &adjacency[v] {
                *neighbors.entry(w as usize).or_insert(0.0) += 1.0 / m;
            }
            Some(Community {
                neighbors,
                internal: 0.0,
                endpoints: adjacency[v].len() as f64 / m2,
                members: vec![v as u32],
            })
        })
        .collect();

    loop {
        // Best positive gain; ties resolved by the smallest (i, j).
        let mut best: Option<(f64, usize, usize)> = None;
        for i in 0..n {
            let Some(ci) = comms[i].as_ref() else { continue };
            let mut js: Vec<usize> = ci.neighbors.keys().copied().filter(|&j| j > i).collect();
            js.sort_unstable();
            for j in js {
                let cj = comms[j].as_ref().expect("neighbor communities are live");
                let gain = ci.neighbors[&j] - 2.0 * ci.endpoints * cj.endpoints;
                // Pairs are visited in lexicographic order, so requiring a
                // strict improvement leaves ties with the lowest (i, j).
                let better = match best {
                    None => true,
                    Some((bg, _, _)) => gain > bg,
                };
                if better && gain > 0.0 {
                    best = Some((gain, i, j));
                }
            }
        }
        let Some((_, i, j)) = best else { break };
        let cj = comms[j].take().expect("chosen community is live");
        let mut moved: Vec<(usize, f64)> =
            cj.neighbors.into_iter().filter(|&(k, _)| k != i).collect();
        moved.sort_unstable_by_key(|&(k, _)| k);
        {
            let ci = comms[i].as_mut().expect("chosen community is live");
            let between = ci.neighbors.remove(&j).unwrap_or(0.0);
            ci.internal += cj.internal + between;
            ci.endpoints += cj.endpoints;
            ci.members.extend(cj.members);
            for &(k, w) in &moved {
                *ci.neighbors.entry(k).or_insert(0.0) += w;
            }
        }
        for (k, w) in moved {
            let ck = comms[k].as_mut().expect("neighbor communities are live");
            ck.neighbors.remove(&j);
            *ck.neighbors.entry(i).or_insert(0.0) += w;
        }
    }

    let mut membership = vec![0usize; n];
    let mut next_id = 0;
    for slot in comms.iter().flatten() {
        for &v in &slot.members {
            membership[v as usize] = next_id;
        }
        next_id += 1;
    }
    // Score the final partition directly so the reported value and the
    // membership are in exact agreement.
    let q = modularity(adjacency, &membership);
    ModularityResult { membership, q }
}

// --------------------------------------------------------------- summary --

/// Fixed column order of [`centrality_summary`].
pub const SUMMARY_HEADERS: [&str; 34] = [
    "degree_max",
    "degree_median",
    "degree_min",
    "degree_std",
    "clustering_max",
    "clustering_median",
    "clustering_min",
    "clustering_std",
    "betweenness_max",
    "betweenness_median",
    "betweenness_min",
    "betweenness_std",
    "closeness_max",
    "closeness_median",
    "closeness_min",
    "closeness_std",
    "eccentricity_max",
    "eccentricity_median",
    "eccentricity_min",
    "eccentricity_std",
    "eigenvector_max",
    "eigenvector_median",
    "eigenvector_min",
    "eigenvector_std",
    "pagerank_max",
    "pagerank_median",
    "pagerank_min",
    "pagerank_std",
    "neighborhood_connectivity_max",
    "neighborhood_connectivity_median",
    "neighborhood_connectivity_min",
    "neighborhood_connectivity_std",
    "modularity",
    "node_count",
];

/// The 34 summary values of one network, ordered as [`SUMMARY_HEADERS`].
#[derive(Debug, Clone)]
pub struct CentralitySummary {
    pub values: Vec<f64>,
}

pub fn centrality_summary(net: &CoOccurrenceNetwork) -> Result<CentralitySummary> {
    let adjacency = net.adjacency();
    let n = adjacency.len();
    if n == 0 {
        return Err(Error::DegenerateCorpus(format!(
            "text '{}' produced an empty network",
            net.source_id
        )));
    }
    let degree: Vec<f64> = adjacency.iter().map(|ns| ns.len() as f64).collect();
    let clustering = clustering_values(adjacency);
    let paths = path_measures(adjacency);
    let eigenvector = eigenvector_values(adjacency);
    let pagerank = pagerank_values(adjacency);
    let nc = neighborhood_connectivity_values(adjacency);

    let mut values = Vec::with_capacity(34);
    for series in [
        &degree,
        &clustering,
        &paths.betweenness,
        &paths.closeness,
        &paths.eccentricity,
        &eigenvector,
        &pagerank,
        &nc,
    ] {
        values.extend(summarize(series));
    }
    values.push(greedy_modularity(adjacency).q);
    values.push(n as f64);
    Ok(CentralitySummary { values })
}

fn summarize(xs: &[f64]) -> [f64; 4] {
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = xs.iter().copied().fold(f64::INFINITY, f64::min);
    [max, median(xs), min, pop_std(xs)]
}

// ----------------------------------------------------------------- tests --

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::Rng;

    fn text(id: &str, paragraphs: &[&[&str]]) -> OrganizedText {
        OrganizedText {
            source_id: id.into(),
            class_label: ClassLabel::Real,
            paragraphs: paragraphs
                .iter()
                .map(|p| p.iter().map(|w| w.to_string()).collect())
                .collect(),
            chapters: None,
        }
    }

    fn adjacency(n: usize, edges: &[(u32, u32)]) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for ns in &mut adj {
            ns.sort_unstable();
        }
        adj
    }

    #[test]
    fn trimming_equalizes_token_counts() {
        let texts = vec![
            text("a", &[&["x"; 4], &["y"; 4], &["z"; 2]]), // 10 tokens
            text("b", &[&["p"; 7]]),                       // 7 tokens
            text("c", &[&["q"; 5], &["r"; 4]]),            // 9 tokens
        ];
        let trimmed = trim_to_common_length(&texts).unwrap();
        for t in &trimmed {
            assert_eq!(t.token_count(), 7);
        }
        // Mid-paragraph cut: second paragraph of "a" keeps 3 of 4 tokens,
        // the third paragraph is gone.
        assert_eq!(trimmed[0].paragraphs.len(), 2);
        assert_eq!(trimmed[0].paragraphs[1].len(), 3);
        // Prefix preserved verbatim.
        assert_eq!(trimmed[2].paragraphs[0], texts[2].paragraphs[0]);
    }

    #[test]
    fn edges_stay_inside_paragraphs_and_collapse() {
        let o = text("t", &[&["a", "b", "a", "b"], &["c", "c", "d"]]);
        let net = build_cooccurrence(&o);
        // Consecutive-pair oracle: independent scan of the token stream.
        let mut expected = HashSet::new();
        for p in &o.paragraphs {
            for w in p.windows(2) {
                if w[0] != w[1] {
                    let a = net.index_of(&w[0]).unwrap();
                    let b = net.index_of(&w[1]).unwrap();
                    expected.insert((a.min(b), a.max(b)));
                }
            }
        }
        let got: HashSet<(u32, u32)> = net.edges().collect();
        assert_eq!(got, expected);
        // (a,b) repeated collapses to one edge; "c c" makes no self loop;
        // "b"/"c" never touch across the boundary.
        assert_eq!(net.edge_count(), 2);
        let b = net.index_of("b").unwrap() as usize;
        let c = net.index_of("c").unwrap();
        assert!(!net.adjacency()[b].contains(&c));
    }

    #[test]
    fn single_word_paragraphs_make_isolated_nodes() {
        let o = text("t", &[&["lonely"], &["a", "b"]]);
        let net = build_cooccurrence(&o);
        assert_eq!(net.node_count(), 3);
        assert_eq!(net.degree(net.index_of("lonely").unwrap() as usize), 0);
    }

    /// Exhaustive shortest-path enumeration: expand every shortest path
    /// from s to t over the BFS distance field, crediting interior nodes.
    fn brute_betweenness(adj: &[Vec<u32>]) -> Vec<f64> {
        let n = adj.len();
        let mut bc = vec![0.0; n];
        for s in 0..n {
            // BFS distances from s.
            let mut dist = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if dist[w as usize] == usize::MAX {
                        dist[w as usize] = dist[v] + 1;
                        queue.push_back(w as usize);
                    }
                }
            }
            for t in (s + 1)..n {
                if dist[t] == usize::MAX {
                    continue;
                }
                // All shortest s-t paths, built backwards from t.
                let mut paths: Vec<Vec<usize>> = Vec::new();
                let mut stack = vec![vec![t]];
                while let Some(path) = stack.pop() {
                    let head = *path.last().unwrap();
                    if head == s {
                        paths.push(path);
                        continue;
                    }
                    for &u in &adj[head] {
                        if dist[u as usize] + 1 == dist[head] {
                            let mut next = path.clone();
                            next.push(u as usize);
                            stack.push(next);
                        }
                    }
                }
                let share = 1.0 / paths.len() as f64;
                for path in &paths {
                    for &v in &path[1..path.len() - 1] {
                        bc[v] += share;
                    }
                }
            }
        }
        bc
    }

    #[test]
    fn path_graph_betweenness_matches_hand_values() {
        let adj = adjacency(4, &[(0, 1), (1, 2), (2, 3)]);
        let m = path_measures(&adj);
        assert_eq!(m.betweenness, vec![0.0, 2.0, 2.0, 0.0]);
    }

    #[test]
    fn betweenness_matches_exhaustive_enumeration() {
        let mut rng = crate::util::seeded_rng(99);
        for _ in 0..25 {
            let n = rng.random_range(2..=14);
            let mut edges = Vec::new();
            for i in 0..n as u32 {
                for j in (i + 1)..n as u32 {
                    if rng.random_bool(0.3) {
                        edges.push((i, j));
                    }
                }
            }
            let adj = adjacency(n, &edges);
            let fast = path_measures(&adj).betweenness;
            let slow = brute_betweenness(&adj);
            for (a, b) in fast.iter().zip(&slow) {
                assert_abs_diff_eq!(a, b, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn leaves_have_zero_betweenness() {
        let mut rng = crate::util::seeded_rng(5);
        for _ in 0..10 {
            let n = rng.random_range(3..=20);
            let mut edges = Vec::new();
            for i in 0..n as u32 {
                for j in (i + 1)..n as u32 {
                    if rng.random_bool(0.25) {
                        edges.push((i, j));
                    }
                }
            }
            let adj = adjacency(n, &edges);
            let bc = path_measures(&adj).betweenness;
            for v in 0..n {
                if adj[v].len() <= 1 {
                    assert_eq!(bc[v], 0.0);
                }
            }
        }
    }

    #[test]
    fn closeness_and_eccentricity_on_path_and_components() {
        let adj = adjacency(3, &[(0, 1), (1, 2)]);
        let m = path_measures(&adj);
        assert_abs_diff_eq!(m.closeness[1], 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m.closeness[0], 1.5, epsilon = 1e-12);
        assert_eq!(m.eccentricity, vec![2.0, 1.0, 2.0]);

        // Two components: measures stay within each.
        let adj = adjacency(5, &[(0, 1), (1, 2), (3, 4)]);
        let m = path_measures(&adj);
        assert_abs_diff_eq!(m.closeness[3], 1.0, epsilon = 1e-12);
        assert_eq!(m.eccentricity[3], 1.0);
        assert_eq!(m.eccentricity[0], 2.0);
    }

    #[test]
    fn eigenvector_on_triangle_and_star() {
        let k3 = adjacency(3, &[(0, 1), (1, 2), (0, 2)]);
        for v in eigenvector_values(&k3) {
            assert_abs_diff_eq!(v, 1.0 / 3f64.sqrt(), epsilon = 1e-8);
        }
        // The star is bipartite; the shifted iteration must still converge.
        let star = adjacency(4, &[(0, 1), (0, 2), (0, 3)]);
        let x = eigenvector_values(&star);
        assert_abs_diff_eq!(x[0], 1.0 / 2f64.sqrt(), epsilon = 1e-8);
        for &leaf in &x[1..] {
            assert_abs_diff_eq!(leaf, 1.0 / 6f64.sqrt(), epsilon = 1e-8);
        }
    }

    #[test]
    fn eigenvector_is_zero_off_the_largest_component() {
        let adj = adjacency(6, &[(0, 1), (1, 2), (2, 0), (4, 5)]);
        let x = eigenvector_values(&adj);
        assert_eq!(x[3], 0.0);
        assert_eq!(x[4], 0.0);
        assert!(x[0] > 0.0);
        let norm: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-8);
    }

    #[test]
    fn pagerank_on_path_matches_hand_solution() {
        let adj = adjacency(3, &[(0, 1), (1, 2)]);
        let x = pagerank_values(&adj);
        assert_abs_diff_eq!(x[1], 0.9 / 1.85, epsilon = 1e-6);
        assert_abs_diff_eq!(x[0], (1.0 - 0.9 / 1.85) / 2.0, epsilon = 1e-6);
        assert_abs_diff_eq!(x.iter().sum::<f64>(), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn pagerank_handles_isolated_nodes_and_sums_to_one() {
        let adj = adjacency(4, &[(0, 1)]);
        let x = pagerank_values(&adj);
        assert_abs_diff_eq!(x.iter().sum::<f64>(), 1.0, epsilon = 1e-10);
        assert!(x[2] > 0.0);
        assert_abs_diff_eq!(x[2], x[3], epsilon = 1e-12);
    }

    #[test]
    fn neighborhood_connectivity_on_star() {
        let star = adjacency(4, &[(0, 1), (0, 2), (0, 3)]);
        let nc = neighborhood_connectivity_values(&star);
        assert_eq!(nc, vec![1.0, 3.0, 3.0, 3.0]);
        let with_isolated = adjacency(2, &[]);
        assert_eq!(neighborhood_connectivity_values(&with_isolated), vec![0.0, 0.0]);
    }

    #[test]
    fn greedy_modularity_finds_two_triangles() {
        let adj = adjacency(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        let result = greedy_modularity(&adj);
        assert_abs_diff_eq!(result.q, 0.5, epsilon = 1e-12);
        assert_eq!(result.membership[0], result.membership[1]);
        assert_eq!(result.membership[0], result.membership[2]);
        assert_eq!(result.membership[3], result.membership[4]);
        assert_ne!(result.membership[0], result.membership[3]);
    }

    #[test]
    fn greedy_modularity_never_loses_to_singletons() {
        let mut rng = crate::util::seeded_rng(3);
        for _ in 0..15 {
            let n = rng.random_range(2..=18);
            let mut edges = Vec::new();
            for i in 0..n as u32 {
                for j in (i + 1)..n as u32 {
                    if rng.random_bool(0.2) {
                        edges.push((i, j));
                    }
                }
            }
            let adj = adjacency(n, &edges);
            let result = greedy_modularity(&adj);
            let singletons: Vec<usize> = (0..n).collect();
            assert!(result.q >= modularity(&adj, &singletons) - 1e-12);
            assert!((-0.5..=1.0).contains(&result.q), "q = {}", result.q);
            assert_abs_diff_eq!(
                result.q,
                modularity(&adj, &result.membership),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn empty_edge_set_has_zero_modularity() {
        let adj = adjacency(3, &[]);
        assert_eq!(greedy_modularity(&adj).q, 0.0);
    }

    #[test]
    fn summary_of_path_graph_matches_hand_computation() {
        let o = text("t", &[&["a", "b", "c"]]);
        let net = build_cooccurrence(&o);
        let summary = centrality_summary(&net).unwrap().values;
        assert_eq!(summary.len(), 34);
        let expect = |name: &str| {
            SUMMARY_HEADERS.iter().position(|h| *h == name).unwrap()
        };
        // Degrees 1, 2, 1.
        assert_eq!(summary[expect("degree_max")], 2.0);
        assert_eq!(summary[expect("degree_median")], 1.0);
        assert_eq!(summary[expect("degree_min")], 1.0);
        assert_abs_diff_eq!(summary[expect("degree_std")], 2f64.sqrt() / 3.0, epsilon = 1e-12);
        assert_eq!(summary[expect("clustering_max")], 0.0);
        assert_eq!(summary[expect("betweenness_max")], 1.0);
        assert_eq!(summary[expect("betweenness_min")], 0.0);
        assert_abs_diff_eq!(summary[expect("closeness_max")], 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(summary[expect("closeness_min")], 1.5, epsilon = 1e-12);
        assert_eq!(summary[expect("eccentricity_max")], 2.0);
        assert_eq!(summary[expect("eccentricity_min")], 1.0);
        assert_abs_diff_eq!(summary[expect("eigenvector_max")], 0.5 * 2f64.sqrt(), epsilon = 1e-7);
        assert_abs_diff_eq!(summary[expect("eigenvector_min")], 0.5, epsilon = 1e-7);
        assert_abs_diff_eq!(summary[expect("pagerank_max")], 0.9 / 1.85, epsilon = 1e-6);
        assert_eq!(summary[expect("neighborhood_connectivity_max")], 2.0);
        assert_eq!(summary[expect("neighborhood_connectivity_min")], 1.0);
        // Greedy merging of a 3-path ends in one community: q = 0.
        assert_abs_diff_eq!(summary[expect("modularity")], 0.0, epsilon = 1e-12);
        assert_eq!(summary[expect("node_count")], 3.0);
    }

    #[test]
    fn summary_invariants_on_random_texts() {
        let mut rng = crate::util::seeded_rng(21);
        for round in 0..5 {
            let paragraphs: Vec<Vec<String>> = (0..12)
                .map(|_| {
                    (0..rng.random_range(3..30))
                        .map(|_| format!("w{}", rng.random_range(0..40)))
                        .collect()
                })
                .collect();
            let o = OrganizedText {
                source_id: format!("r{round}"),
                class_label: ClassLabel::Real,
                paragraphs,
                chapters: None,
            };
            let net = build_cooccurrence(&o);
            let adj = net.adjacency();
            let pr = pagerank_values(adj);
            assert_abs_diff_eq!(pr.iter().sum::<f64>(), 1.0, epsilon = 1e-8);
            let ev = eigenvector_values(adj);
            assert!(ev.iter().all(|&v| v >= 0.0));
            assert_abs_diff_eq!(
                ev.iter().map(|v| v * v).sum::<f64>().sqrt(),
                1.0,
                epsilon = 1e-8
            );
            let q = greedy_modularity(adj).q;
            assert!((-0.5..=1.0).contains(&q));
        }
    }
}
