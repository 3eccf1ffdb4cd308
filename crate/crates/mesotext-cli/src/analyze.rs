//! The analysis step: window-network features for every cached text, then
//! projection, class distances, and clustering against the true labels.
//! Consumes the build outputs; never touches the raw corpus.

use anyhow::{Context, Result};
use clap::Args;
use mesotext_core::corpus::ClassLabel;
use mesotext_core::export;
use mesotext_core::features::{self, FeatureVector};
use mesotext_core::graphmetrics;
use rayon::prelude::*;

use crate::config::{self, ConfigArgs, RunConfig};
use crate::manifest::{write_tracked, Manifest};
use crate::pipeline;

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub cfg: ConfigArgs,
}

fn features_for(cfg: &RunConfig, id: &str, class: ClassLabel) -> Result<FeatureVector> {
    let organized = pipeline::load_organized(&cfg.run.output, id, class)?;
    let (_, network) = pipeline::window_network(&organized, &cfg.network)?;
    let clustering = graphmetrics::clustering_coefficient(&network);
    let matching = graphmetrics::matching_index(&network);
    features::feature_vector(
        id,
        class,
        cfg.network.delta,
        network.threshold,
        &clustering,
        &matching,
        &cfg.features.deltas,
    )
    .with_context(|| format!("features for {id} ({})", class.as_str()))
}

pub fn run(args: &AnalyzeArgs) -> Result<i32> {
    let cfg = config::resolve(&args.cfg, false)?;
    let output = cfg.run.output.clone();
    let mut manifest = Manifest::load(&output)?;
    let ids = manifest.ok_documents();
    if ids.is_empty() {
        anyhow::bail!(
            "the manifest lists no successfully built documents; fix the corpus and \
             re-run `mesotext build`"
        );
    }

    let tasks: Vec<(String, ClassLabel)> = ids
        .iter()
        .flat_map(|id| ClassLabel::ALL.iter().map(move |&c| (id.clone(), c)))
        .collect();
    let pool = pipeline::thread_pool(cfg.run.workers)?;
    let rows: Vec<FeatureVector> = pool
        .install(|| {
            tasks
                .par_iter()
                .map(|(id, class)| features_for(&cfg, id, *class))
                .collect::<Result<Vec<_>>>()
        })?;

    let row_ids: Vec<String> = rows.iter().map(|r| r.source_id.clone()).collect();
    let labels: Vec<ClassLabel> = rows.iter().map(|r| r.class_label).collect();
    let matrix: Vec<Vec<f64>> = rows.iter().map(|r| r.values.clone()).collect();
    let names = features::feature_names(&cfg.features.deltas);

    let evaluation = pipeline::evaluate(
        &row_ids,
        &labels,
        &matrix,
        &names,
        cfg.analysis.meso_components,
        &cfg.analysis,
    )?;

    let feature_csv = export::feature_csv(&rows, &cfg.features.deltas)?;
    write_tracked(&mut manifest, &output, "features.csv", feature_csv.as_bytes())?;
    write_tracked(
        &mut manifest,
        &output,
        "scatter.csv",
        evaluation.scatter_csv.as_bytes(),
    )?;
    write_tracked(
        &mut manifest,
        &output,
        "distances.csv",
        evaluation.distance_csv.as_bytes(),
    )?;
    let report_json = serde_json::to_string_pretty(&evaluation.report)?;
    write_tracked(&mut manifest, &output, "report.json", report_json.as_bytes())?;
    manifest.save(&output)?;

    let r = &evaluation.report;
    println!(
        "analyzed {} texts: {} components, rand index {:.3}, accuracy {:.3}",
        r.rows, r.components, r.kmeans.adjusted_rand_index, r.kmeans.accuracy
    );
    Ok(0)
}
