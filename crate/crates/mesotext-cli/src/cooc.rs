//! The word co-occurrence baseline: global networks over equal-length
//! texts, centrality summaries, and the same projection-and-clustering
//! evaluation the window features get, for a side-by-side comparison.
//!
//! Null texts are re-derived here from the cached real texts so the
//! length trim sees all classes of all documents at once; the shuffle
//! seeds match the build step, keeping the two views of each null text
//! consistent.

use anyhow::Result;
use clap::Args;
use mesotext_core::cooccurrence::{self, CentralitySummary, SUMMARY_HEADERS};
use mesotext_core::corpus::{self, ClassLabel, OrganizedText};
use mesotext_core::export;
use rayon::prelude::*;

use crate::config::{self, ConfigArgs};
use crate::manifest::{class_seed, write_tracked, Manifest};
use crate::pipeline;

#[derive(Debug, Args)]
pub struct CoocArgs {
    #[command(flatten)]
    pub cfg: ConfigArgs,

    /// Also write one GraphML file per co-occurrence network.
    #[arg(long)]
    pub graphml: bool,
}

pub fn run(args: &CoocArgs) -> Result<i32> {
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

    // All classes of all documents, then one corpus-wide trim so every
    // network is built over the same number of tokens.
    let pool = pipeline::thread_pool(cfg.run.workers)?;
    let texts: Vec<OrganizedText> = pool.install(|| {
        ids.par_iter()
            .map(|id| {
                let rt = pipeline::load_organized(&output, id, ClassLabel::Real)?;
                Ok(ClassLabel::ALL
                    .iter()
                    .map(|&class| {
                        corpus::as_class(&rt, class, class_seed(cfg.run.seed, id, class.as_str()))
                    })
                    .collect::<Vec<_>>())
            })
            .collect::<Result<Vec<_>>>()
            .map(|per_doc| per_doc.into_iter().flatten().collect())
    })?;
    let trimmed = cooccurrence::trim_to_common_length(&texts)?;

    let summarized: Vec<(CentralitySummary, Option<String>)> = pool.install(|| {
        trimmed
            .par_iter()
            .map(|o| {
                let net = cooccurrence::build_cooccurrence(o);
                let graphml = args.graphml.then(|| export::cooccurrence_graphml(&net));
                let summary = cooccurrence::centrality_summary(&net)?;
                Ok((summary, graphml))
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let mut summaries = Vec::with_capacity(summarized.len());
    for ((summary, graphml), o) in summarized.into_iter().zip(&trimmed) {
        if let Some(doc) = graphml {
            let rel = format!(
                "cooc/networks/{}.{}.graphml",
                o.source_id,
                o.class_label.as_str()
            );
            write_tracked(&mut manifest, &output, &rel, doc.as_bytes())?;
        }
        summaries.push(summary);
    }

    let row_ids: Vec<String> = trimmed.iter().map(|o| o.source_id.clone()).collect();
    let labels: Vec<ClassLabel> = trimmed.iter().map(|o| o.class_label).collect();
    let matrix: Vec<Vec<f64>> = summaries.iter().map(|s| s.values.clone()).collect();
    let names: Vec<String> = SUMMARY_HEADERS.iter().map(|s| s.to_string()).collect();

    let evaluation = pipeline::evaluate(
        &row_ids,
        &labels,
        &matrix,
        &names,
        cfg.analysis.cooc_components,
        &cfg.analysis,
    )?;

    let rows: Vec<(String, ClassLabel, CentralitySummary)> = row_ids
        .iter()
        .cloned()
        .zip(labels.iter().copied())
        .zip(summaries)
        .map(|((id, label), summary)| (id, label, summary))
        .collect();
    let centrality = export::centrality_csv(&rows)?;
    write_tracked(&mut manifest, &output, "cooc/centrality.csv", centrality.as_bytes())?;
    write_tracked(
        &mut manifest,
        &output,
        "cooc/scatter.csv",
        evaluation.scatter_csv.as_bytes(),
    )?;
    write_tracked(
        &mut manifest,
        &output,
        "cooc/distances.csv",
        evaluation.distance_csv.as_bytes(),
    )?;
    let report_json = serde_json::to_string_pretty(&evaluation.report)?;
    write_tracked(&mut manifest, &output, "cooc/report.json", report_json.as_bytes())?;
    manifest.save(&output)?;

    let r = &evaluation.report;
    println!(
        "summarized {} co-occurrence networks: {} components, rand index {:.3}, accuracy {:.3}",
        r.rows, r.components, r.kmeans.adjusted_rand_index, r.kmeans.accuracy
    );
    Ok(0)
}
