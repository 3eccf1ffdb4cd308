//! Run configuration: one declarative TOML file, optionally overridden by
//! command line flags. Loading resolves every default, so the config that
//! lands in the manifest is complete; a run can be reproduced from the
//! manifest alone. Validation failures map to exit code 2.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;
use mesotext_core::corpus::SegmentMode;
use mesotext_core::mesonet::PruneRule;
use mesotext_core::vectorizer::IdfUnit;
use serde::{Deserialize, Serialize};

/// A configuration problem: bad value, missing file, contradictory flags.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid configuration: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn bad<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

// ----------------------------------------------------------- toml shape --

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    #[serde(default)]
    corpus: FileCorpus,
    #[serde(default)]
    network: FileNetwork,
    #[serde(default)]
    features: FileFeatures,
    #[serde(default)]
    analysis: FileAnalysis,
    #[serde(default)]
    layout: FileLayout,
    #[serde(default)]
    run: FileRun,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileCorpus {
    paths: Option<Vec<PathBuf>>,
    language: Option<String>,
    stopwords: Option<PathBuf>,
    lemmas: Option<PathBuf>,
    /// "blank-line" or a word count for fixed-size chunks.
    segment: Option<toml::Value>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileNetwork {
    delta: Option<usize>,
    threshold: Option<f64>,
    retention: Option<f64>,
    idf_unit: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileFeatures {
    deltas: Option<Vec<usize>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileAnalysis {
    meso_components: Option<usize>,
    cooc_components: Option<usize>,
    clusters: Option<usize>,
    kmeans_restarts: Option<usize>,
    kmeans_max_iter: Option<usize>,
    kmeans_seed: Option<u64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileLayout {
    iterations: Option<usize>,
    seed: Option<u64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileRun {
    seed: Option<u64>,
    workers: Option<usize>,
    output: Option<PathBuf>,
}

// -------------------------------------------------------- command flags --

/// Flags shared by every subcommand; each one overrides the matching
/// config file field.
#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// Path to the run configuration file.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Input text file or directory of .txt files; repeatable.
    #[arg(long = "corpus", value_name = "PATH")]
    pub corpus: Vec<PathBuf>,

    /// Stopword list, one word per line.
    #[arg(long, value_name = "FILE")]
    pub stopwords: Option<PathBuf>,

    /// Lemma table, "form lemma" per line.
    #[arg(long, value_name = "FILE")]
    pub lemmas: Option<PathBuf>,

    /// Window length in paragraphs.
    #[arg(long, value_name = "N")]
    pub delta: Option<usize>,

    /// Keep edges with similarity strictly above this value.
    #[arg(long, value_name = "T", conflicts_with = "retention")]
    pub threshold: Option<f64>,

    /// Keep this fraction of the strongest edges instead of thresholding.
    #[arg(long, value_name = "Q")]
    pub retention: Option<f64>,

    /// Base seed for the shuffled null texts.
    #[arg(long, value_name = "SEED")]
    pub seed: Option<u64>,

    /// Worker thread cap; 0 means one per core.
    #[arg(long, value_name = "N")]
    pub workers: Option<usize>,

    /// Output directory for all artifacts.
    #[arg(long, value_name = "DIR")]
    pub output: Option<PathBuf>,
}

// ------------------------------------------------------- resolved config --

/// Paragraph segmentation rule, in serializable form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "mode", content = "words")]
pub enum SegmentConfig {
    BlankLine,
    FixedWordCount(usize),
}

impl SegmentConfig {
    pub fn mode(self) -> SegmentMode {
        match self {
            SegmentConfig::BlankLine => SegmentMode::BlankLine,
            SegmentConfig::FixedWordCount(n) => SegmentMode::FixedWordCount(n),
        }
    }
}

/// Edge pruning rule, in serializable form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "rule", content = "value")]
pub enum PruneConfig {
    Threshold(f64),
    Retention(f64),
}

impl PruneConfig {
    pub fn rule(self) -> PruneRule {
        match self {
            PruneConfig::Threshold(t) => PruneRule::Threshold(t),
            PruneConfig::Retention(q) => PruneRule::Retention(q),
        }
    }
}

/// The fully resolved configuration: every field explicit, serialized
/// verbatim into the run manifest.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub corpus: CorpusConfig,
    pub network: NetworkConfig,
    pub features: FeaturesConfig,
    pub analysis: AnalysisConfig,
    pub layout: LayoutConfig,
    pub run: RunSection,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusConfig {
    /// One entry per document, resolved from files and directories.
    pub documents: Vec<DocumentEntry>,
    pub language: String,
    /// Absent means the built-in list for the configured language.
    pub stopwords: Option<PathBuf>,
    pub lemmas: Option<PathBuf>,
    pub segment: SegmentConfig,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DocumentEntry {
    pub id: String,
    pub path: PathBuf,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NetworkConfig {
    pub delta: usize,
    pub prune: PruneConfig,
    pub idf_unit: String,
}

impl NetworkConfig {
    pub fn idf(&self) -> IdfUnit {
        match self.idf_unit.as_str() {
            "paragraph" => IdfUnit::Paragraph,
            _ => IdfUnit::Window,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FeaturesConfig {
    pub deltas: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalysisConfig {
    pub meso_components: usize,
    pub cooc_components: usize,
    pub clusters: usize,
    pub kmeans_restarts: usize,
    pub kmeans_max_iter: usize,
    pub kmeans_seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LayoutConfig {
    pub iterations: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunSection {
    pub seed: u64,
    pub workers: usize,
    pub output: PathBuf,
}

// ------------------------------------------------------------ resolution --

fn parse_segment(value: &toml::Value) -> Result<SegmentConfig, ConfigError> {
    match value {
        toml::Value::String(s) if s == "blank-line" => Ok(SegmentConfig::BlankLine),
        toml::Value::Integer(n) if *n >= 1 => Ok(SegmentConfig::FixedWordCount(*n as usize)),
        other => bad(format!(
            "corpus.segment must be \"blank-line\" or a positive word count, got {other}"
        )),
    }
}

/// Expands a corpus path: a file stands for itself, a directory for its
/// .txt files in name order.
fn expand_corpus_path(path: &Path) -> Result<Vec<PathBuf>, ConfigError> {
    let meta = match fs::metadata(path) {
        Ok(m) => m,
        Err(e) => return bad(format!("corpus path {}: {e}", path.display())),
    };
    if meta.is_file() {
        return Ok(vec![path.to_path_buf()]);
    }
    let mut files: Vec<PathBuf> = match fs::read_dir(path) {
        Ok(entries) => entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "txt"))
            .collect(),
        Err(e) => return bad(format!("corpus directory {}: {e}", path.display())),
    };
    files.sort();
    if files.is_empty() {
        return bad(format!(
            "corpus directory {} contains no .txt files",
            path.display()
        ));
    }
    Ok(files)
}

fn document_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.to_string_lossy().into_owned())
}

/// Loads the config file (when given), applies flag overrides, fills in
/// defaults, and validates the result. `need_corpus` is false for commands
/// that only consume previous outputs.
pub fn resolve(args: &ConfigArgs, need_corpus: bool) -> Result<RunConfig, ConfigError> {
    let file: FileConfig = match &args.config {
        Some(path) => {
            let text = match fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return bad(format!("cannot read {}: {e}", path.display())),
            };
            match toml::from_str(&text) {
                Ok(c) => c,
                Err(e) => return bad(format!("{}: {e}", path.display())),
            }
        }
        None => FileConfig::default(),
    };

    // Corpus paths: flags replace the file list entirely when given.
    let raw_paths: Vec<PathBuf> = if args.corpus.is_empty() {
        file.corpus.paths.unwrap_or_default()
    } else {
        args.corpus.clone()
    };
    let mut documents = Vec::new();
    for p in &raw_paths {
        for f in expand_corpus_path(p)? {
            documents.push(DocumentEntry {
                id: document_id(&f),
                path: f,
            });
        }
    }
    if need_corpus && documents.is_empty() {
        return bad("no corpus given: set [corpus] paths or pass --corpus");
    }
    let mut seen = BTreeSet::new();
    for d in &documents {
        if !seen.insert(d.id.clone()) {
            return bad(format!(
                "duplicate document id '{}'; rename one of the input files",
                d.id
            ));
        }
    }

    let stopwords = args.stopwords.clone().or(file.corpus.stopwords);
    let lemmas = args.lemmas.clone().or(file.corpus.lemmas);
    for path in [&stopwords, &lemmas].into_iter().flatten() {
        if !path.is_file() {
            return bad(format!("language resource {} does not exist", path.display()));
        }
    }

    let segment = match &file.corpus.segment {
        Some(v) => parse_segment(v)?,
        None => SegmentConfig::BlankLine,
    };

    let delta = args.delta.or(file.network.delta).unwrap_or(20);
    if delta < 1 {
        return bad("network.delta must be at least 1");
    }

    let threshold = args.threshold.or(file.network.threshold);
    let retention = args.retention.or(file.network.retention);
    let prune = match (threshold, retention) {
        (Some(_), Some(_)) => {
            return bad("give either network.threshold or network.retention, not both")
        }
        (Some(t), None) => {
            if !(0.0..=1.0).contains(&t) {
                return bad(format!("network.threshold {t} outside [0, 1]"));
            }
            PruneConfig::Threshold(t)
        }
        (None, Some(q)) => {
            if !(0.0..=1.0).contains(&q) {
                return bad(format!("network.retention {q} outside [0, 1]"));
            }
            PruneConfig::Retention(q)
        }
        (None, None) => PruneConfig::Retention(0.05),
    };

    let idf_unit = file.network.idf_unit.unwrap_or_else(|| "window".into());
    if idf_unit != "window" && idf_unit != "paragraph" {
        return bad(format!(
            "network.idf_unit must be \"window\" or \"paragraph\", got \"{idf_unit}\""
        ));
    }

    let deltas = file
        .features
        .deltas
        .unwrap_or_else(|| mesotext_core::features::DEFAULT_CV_DELTAS.to_vec());
    if deltas.is_empty() {
        return bad("features.deltas must not be empty");
    }
    if let Some(d) = deltas.iter().find(|&&d| d < 2) {
        return bad(format!("features.deltas entry {d} is below the minimum of 2"));
    }

    let analysis = AnalysisConfig {
        meso_components: file.analysis.meso_components.unwrap_or(6),
        cooc_components: file.analysis.cooc_components.unwrap_or(10),
        clusters: file.analysis.clusters.unwrap_or(3),
        kmeans_restarts: file.analysis.kmeans_restarts.unwrap_or(16),
        kmeans_max_iter: file.analysis.kmeans_max_iter.unwrap_or(200),
        kmeans_seed: file.analysis.kmeans_seed.unwrap_or(17),
    };
    for (name, v) in [
        ("analysis.meso_components", analysis.meso_components),
        ("analysis.cooc_components", analysis.cooc_components),
        ("analysis.clusters", analysis.clusters),
        ("analysis.kmeans_restarts", analysis.kmeans_restarts),
        ("analysis.kmeans_max_iter", analysis.kmeans_max_iter),
    ] {
        if v == 0 {
            return bad(format!("{name} must be at least 1"));
        }
    }

    let layout = LayoutConfig {
        iterations: file.layout.iterations.unwrap_or(500),
        seed: file.layout.seed.unwrap_or(7),
    };
    if layout.iterations == 0 {
        return bad("layout.iterations must be at least 1");
    }

    let run = RunSection {
        seed: args.seed.or(file.run.seed).unwrap_or(0),
        workers: args.workers.or(file.run.workers).unwrap_or(0),
        output: args
            .output
            .clone()
            .or(file.run.output)
            .unwrap_or_else(|| PathBuf::from("out")),
    };

    Ok(RunConfig {
        corpus: CorpusConfig {
            documents,
            language: file.corpus.language.unwrap_or_else(|| "english".into()),
            stopwords,
            lemmas,
            segment,
        },
        network: NetworkConfig {
            delta,
            prune,
            idf_unit,
        },
        features: FeaturesConfig { deltas },
        analysis,
        layout,
        run,
    })
}
