//! The build step: read every corpus document, organize it, derive the
//! two shuffled null texts, and write the text caches plus one network
//! per (document, class) pair. A document that fails is reported and
//! skipped; the run carries on and exits nonzero at the end.

use std::fs;
use std::path::Path;

use anyhow::Result;
use clap::Args;
use mesotext_core::corpus::{self, ClassLabel, RawDocument};
use mesotext_core::export;
use mesotext_core::graphmetrics;
use rayon::prelude::*;

use crate::config::{self, ConfigArgs, RunConfig};
use crate::manifest::{class_seed, hex_digest, DocumentStatus, Manifest};
use crate::pipeline;

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub cfg: ConfigArgs,
}

/// Relative path and contents of one artifact, hashed by the caller.
type Artifact = (String, Vec<u8>);

fn build_document(
    cfg: &RunConfig,
    id: &str,
    path: &Path,
    stopwords: &std::collections::HashSet<String>,
    lemmas: &std::collections::HashMap<String, String>,
) -> Result<Vec<Artifact>> {
    let text = fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?;
    let doc = RawDocument::new(id, &cfg.corpus.language, text);
    let (paragraphs, chapters) =
        corpus::segment_with_chapters(&doc, cfg.corpus.segment.mode())?;
    let organized = corpus::normalize(id, &paragraphs, chapters.as_deref(), stopwords, lemmas);
    if organized.paragraph_count() == 0 {
        anyhow::bail!("document '{id}' has no content after normalization");
    }

    let mut artifacts = Vec::new();
    for class in ClassLabel::ALL {
        let seed = class_seed(cfg.run.seed, id, class.as_str());
        let variant = corpus::as_class(&organized, class, seed);
        artifacts.push((
            pipeline::organized_rel(id, class),
            variant.paragraphs_json()?.into_bytes(),
        ));
        if let Some(ch) = &variant.chapters {
            artifacts.push((
                pipeline::chapters_rel(id, class),
                serde_json::to_string(ch)?.into_bytes(),
            ));
        }

        let (graph, network) = pipeline::window_network(&variant, &cfg.network)?;
        artifacts.push((
            format!("networks/{id}.{}.graphml", class.as_str()),
            export::meso_graphml(&network).into_bytes(),
        ));
        let profile = graphmetrics::long_range_profile(&graph, &network)?;
        artifacts.push((
            format!("networks/{id}.{}.edges.csv", class.as_str()),
            export::long_range_csv(&profile)?.into_bytes(),
        ));
    }
    Ok(artifacts)
}

pub fn run(args: &BuildArgs) -> Result<i32> {
    let cfg = config::resolve(&args.cfg, true)?;
    let (stopwords, lemmas) = pipeline::language_resources(&cfg)?;
    let output = cfg.run.output.clone();
    fs::create_dir_all(&output)?;

    let pool = pipeline::thread_pool(cfg.run.workers)?;
    let results: Vec<(DocumentStatus, Vec<Artifact>)> = pool.install(|| {
        cfg.corpus
            .documents
            .par_iter()
            .map(|doc| {
                match build_document(&cfg, &doc.id, &doc.path, &stopwords, &lemmas) {
                    Ok(artifacts) => (
                        DocumentStatus {
                            id: doc.id.clone(),
                            path: doc.path.clone(),
                            status: "ok".into(),
                        },
                        artifacts,
                    ),
                    Err(e) => {
                        log::error!("{}: {e:#}", doc.id);
                        (
                            DocumentStatus {
                                id: doc.id.clone(),
                                path: doc.path.clone(),
                                status: format!("failed: {e:#}"),
                            },
                            Vec::new(),
                        )
                    }
                }
            })
            .collect()
    });

    let mut manifest = Manifest::new(cfg);
    let mut network_count = 0usize;
    for (status, artifacts) in results {
        manifest.documents.push(status);
        for (rel, contents) in artifacts {
            if rel.ends_with(".graphml") {
                network_count += 1;
            }
            let path = output.join(&rel);
            if let Some(parent) = path.parent() {
                fs::create_dir_all(parent)?;
            }
            export::write_atomic(&path, &contents)?;
            manifest.files.insert(rel, hex_digest(&contents));
        }
    }
    manifest.save(&output)?;

    let failed = manifest
        .documents
        .iter()
        .filter(|d| d.status != "ok")
        .count();
    let ok = manifest.documents.len() - failed;
    println!(
        "built {network_count} networks from {ok} documents into {} ({failed} failed)",
        output.display()
    );
    Ok(if failed > 0 { 1 } else { 0 })
}
