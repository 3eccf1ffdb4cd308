//! Pieces shared by the subcommands: language resources, the
//! organized-text cache, the window network recipe, and the projection /
//! clustering evaluation that both analysis commands report.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use mesotext_core::analysis::{self, KMeansResult};
use mesotext_core::corpus::{self, ClassLabel, OrganizedText};
use mesotext_core::export;
use mesotext_core::mesonet::{self, MesoscopicNetwork, NetworkMeta, WeightedSimilarityGraph};
use mesotext_core::vectorizer;
use serde::{Deserialize, Serialize};

use crate::config::{AnalysisConfig, NetworkConfig, RunConfig};

/// Stopword set and lemma table for the configured language: explicit
/// files when given, the built-in English resources otherwise.
pub fn language_resources(
    cfg: &RunConfig,
) -> Result<(HashSet<String>, HashMap<String, String>)> {
    let stopwords = match &cfg.corpus.stopwords {
        Some(path) => corpus::load_stopwords(path)
            .with_context(|| format!("loading stopwords from {}", path.display()))?,
        None if cfg.corpus.language == "english" => corpus::english_stopwords(),
        None => {
            log::warn!(
                "no stopword list for language '{}'; proceeding without one",
                cfg.corpus.language
            );
            HashSet::new()
        }
    };
    let lemmas = match &cfg.corpus.lemmas {
        Some(path) => corpus::load_lemmas(path)
            .with_context(|| format!("loading lemmas from {}", path.display()))?,
        None if cfg.corpus.language == "english" => corpus::english_lemmas(),
        None => HashMap::new(),
    };
    Ok((stopwords, lemmas))
}

// ------------------------------------------------------------- the cache --

pub fn organized_rel(id: &str, class: ClassLabel) -> String {
    format!("organized/{id}.{}.json", class.as_str())
}

pub fn chapters_rel(id: &str, class: ClassLabel) -> String {
    format!("organized/{id}.{}.chapters.json", class.as_str())
}

/// Loads one cached organized text, reattaching the chapter sidecar when
/// present. Missing cache files point back at the build step.
pub fn load_organized(output: &Path, id: &str, class: ClassLabel) -> Result<OrganizedText> {
    let path = output.join(organized_rel(id, class));
    let json = fs::read_to_string(&path).map_err(|e| {
        anyhow!(
            "cannot read {} ({e}); run `mesotext build` to produce the text cache",
            path.display()
        )
    })?;
    let mut organized = OrganizedText::from_paragraphs_json(id, class, &json)
        .with_context(|| format!("parsing {}", path.display()))?;
    let sidecar = output.join(chapters_rel(id, class));
    if sidecar.is_file() {
        let text = fs::read_to_string(&sidecar)
            .with_context(|| format!("reading {}", sidecar.display()))?;
        let chapters: Vec<String> = serde_json::from_str(&text)
            .with_context(|| format!("parsing {}", sidecar.display()))?;
        if chapters.len() != organized.paragraph_count() {
            bail!(
                "{} lists {} chapters for {} paragraphs; re-run `mesotext build`",
                sidecar.display(),
                chapters.len(),
                organized.paragraph_count()
            );
        }
        organized.chapters = Some(chapters);
    }
    Ok(organized)
}

// -------------------------------------------------------- window network --

/// Windows, tf-idf, cosine similarity, pruning: the full recipe from an
/// organized text to its network, as configured.
pub fn window_network(
    o: &OrganizedText,
    net_cfg: &NetworkConfig,
) -> Result<(WeightedSimilarityGraph, MesoscopicNetwork)> {
    let wc = vectorizer::build_windows(o, net_cfg.delta)?;
    if wc.is_empty() {
        bail!(
            "document '{}' has {} paragraphs, fewer than the window length {}",
            o.source_id,
            o.paragraph_count(),
            net_cfg.delta
        );
    }
    let vectors = vectorizer::compute_tfidf_with(&wc, net_cfg.idf());
    let graph = mesonet::build_similarity_graph(&vectors);
    let meta = NetworkMeta::from_text(o, net_cfg.delta, graph.node_count());
    let network = mesonet::prune(&graph, net_cfg.prune.rule(), meta)?;
    Ok((graph, network))
}

// ------------------------------------------------------------ evaluation --

#[derive(Debug, Serialize, Deserialize)]
pub struct KmeansReport {
    pub clusters: usize,
    pub wcss: f64,
    pub restart: usize,
    pub iterations: usize,
    pub adjusted_rand_index: f64,
    pub accuracy: f64,
    pub misclustered: f64,
}

/// What a projection-and-clustering pass found, serialized as the report.
#[derive(Debug, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub rows: usize,
    pub feature_count: usize,
    pub components: usize,
    pub explained_variance: Vec<f64>,
    pub class_order: Vec<String>,
    /// Mean pairwise distance between classes in the two leading
    /// components; indexed by `class_order`.
    pub class_distances: Vec<Vec<f64>>,
    pub kmeans: KmeansReport,
    pub warnings: Vec<String>,
}

pub struct Evaluation {
    pub report: AnalysisReport,
    pub scatter_csv: String,
    pub distance_csv: String,
}

/// Projects the feature rows, measures class separation, clusters, and
/// scores the clusters against the true class labels.
pub fn evaluate(
    ids: &[String],
    labels: &[ClassLabel],
    rows: &[Vec<f64>],
    column_names: &[String],
    components: usize,
    cfg: &AnalysisConfig,
) -> Result<Evaluation> {
    let n = rows.len();
    if n < 2 {
        bail!("analysis needs at least 2 feature rows, got {n}");
    }
    let d = rows[0].len();
    let mut warnings = Vec::new();

    // Constant columns carry no information; count them up front so the
    // component request can be capped at the matrix rank instead of
    // failing outright on degenerate corpora.
    let mut varying = 0usize;
    let mut dropped = Vec::new();
    for j in 0..d {
        let m = rows.iter().map(|r| r[j]).sum::<f64>() / n as f64;
        let var = rows.iter().map(|r| (r[j] - m).powi(2)).sum::<f64>() / n as f64;
        if var.sqrt() > 0.0 {
            varying += 1;
        } else {
            dropped.push(column_names.get(j).cloned().unwrap_or_else(|| format!("column {j}")));
        }
    }
    if !dropped.is_empty() {
        let shown = dropped.iter().take(8).cloned().collect::<Vec<_>>().join(", ");
        let more = if dropped.len() > 8 { ", ..." } else { "" };
        warnings.push(format!(
            "{} feature columns have zero variance and were dropped: {shown}{more}",
            dropped.len()
        ));
    }
    for class in ClassLabel::ALL {
        let group: Vec<&Vec<f64>> = rows
            .iter()
            .zip(labels)
            .filter(|(_, l)| **l == class)
            .map(|(r, _)| r)
            .collect();
        if group.len() >= 2 && group.iter().all(|r| *r == group[0]) {
            warnings.push(format!(
                "features have zero variance within class {}; the corpus may contain \
                 identical texts",
                class.as_str()
            ));
        }
    }

    let rank_cap = varying.min(n - 1);
    if rank_cap == 0 {
        bail!("every feature column is constant; nothing to analyze");
    }
    let k = components.min(rank_cap);
    if k < components {
        warnings.push(format!(
            "matrix rank supports only {k} components; {components} were requested"
        ));
    }
    for w in &warnings {
        log::warn!("{w}");
    }

    let proj = analysis::pca(rows, k)?;
    let table = analysis::class_distance_table(&proj.coords, labels)?;
    let km: KMeansResult = analysis::kmeans(
        &proj.coords,
        cfg.clusters,
        cfg.kmeans_restarts,
        cfg.kmeans_max_iter,
        cfg.kmeans_seed,
    )?;
    let truth: Vec<usize> = labels
        .iter()
        .map(|l| ClassLabel::ALL.iter().position(|c| c == l).expect("label set is closed"))
        .collect();
    let ari = analysis::adjusted_rand_index(&km.assignments, &truth)?;
    let accuracy = analysis::clustering_accuracy(&km.assignments, &truth, cfg.clusters)?;

    let report = AnalysisReport {
        rows: n,
        feature_count: d,
        components: k,
        explained_variance: proj.explained.clone(),
        class_order: ClassLabel::ALL.iter().map(|c| c.as_str().to_string()).collect(),
        class_distances: table.clone(),
        kmeans: KmeansReport {
            clusters: cfg.clusters,
            wcss: km.wcss,
            restart: km.restart,
            iterations: km.iterations,
            adjusted_rand_index: ari,
            accuracy,
            misclustered: 1.0 - accuracy,
        },
        warnings,
    };
    Ok(Evaluation {
        report,
        scatter_csv: export::scatter_csv(ids, labels, &proj.coords)?,
        distance_csv: export::distance_csv(&table)?,
    })
}

/// Builds the run's thread pool: `workers` threads, or one per core when 0.
pub fn thread_pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .context("building worker pool")
}
