//! The report step: fold the run's JSON reports into one plain-text
//! summary, printed and saved alongside the other artifacts.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use clap::Args;

use crate::config::{self, ConfigArgs, PruneConfig};
use crate::manifest::{write_tracked, Manifest};
use crate::pipeline::AnalysisReport;

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub cfg: ConfigArgs,
}

fn load_report(output: &Path, rel: &str) -> Result<Option<AnalysisReport>> {
    let path = output.join(rel);
    if !path.is_file() {
        return Ok(None);
    }
    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    let report = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(Some(report))
}

fn section(out: &mut String, title: &str, report: &AnalysisReport) {
    let _ = writeln!(out, "{title}");
    let _ = writeln!(
        out,
        "  {} rows x {} features, projected to {} components",
        report.rows, report.feature_count, report.components
    );
    let shown: Vec<String> = report
        .explained_variance
        .iter()
        .map(|v| format!("{:.1}%", 100.0 * v))
        .collect();
    let _ = writeln!(out, "  explained variance: {}", shown.join(" "));
    let k = &report.kmeans;
    let _ = writeln!(
        out,
        "  k-means ({} clusters): accuracy {:.3}, misclustered {:.3}, adjusted rand index {:.3}",
        k.clusters, k.accuracy, k.misclustered, k.adjusted_rand_index
    );
    let _ = writeln!(out, "  class distances (two leading components):");
    for (i, a) in report.class_order.iter().enumerate() {
        for (j, b) in report.class_order.iter().enumerate() {
            if i < j {
                let _ = writeln!(
                    out,
                    "    {a} - {b}: {:.4}",
                    report.class_distances[i][j]
                );
            }
        }
    }
    for w in &report.warnings {
        let _ = writeln!(out, "  warning: {w}");
    }
    let _ = writeln!(out);
}

pub fn run(args: &ReportArgs) -> Result<i32> {
    let cfg = config::resolve(&args.cfg, false)?;
    let output = cfg.run.output.clone();
    let mut manifest = Manifest::load(&output)?;

    let mut out = String::new();
    let _ = writeln!(out, "run summary: {}", output.display());
    let _ = writeln!(out);

    let c = &manifest.config;
    let prune = match c.network.prune {
        PruneConfig::Threshold(t) => format!("similarity threshold {t}"),
        PruneConfig::Retention(q) => format!("retention of the top {:.1}% of edges", 100.0 * q),
    };
    let _ = writeln!(
        out,
        "configuration: windows of {} paragraphs, {prune}, idf over {}s",
        c.network.delta, c.network.idf_unit
    );
    let ok = manifest.ok_documents().len();
    let failed = manifest.documents.len() - ok;
    let _ = writeln!(out, "corpus: {ok} documents built, {failed} failed");
    for d in manifest.documents.iter().filter(|d| d.status != "ok") {
        let _ = writeln!(out, "  {}: {}", d.id, d.status);
    }
    let _ = writeln!(out);

    match load_report(&output, "report.json")? {
        Some(report) => section(&mut out, "window network features", &report),
        None => {
            let _ = writeln!(
                out,
                "window network features: not analyzed yet (run `mesotext analyze`)\n"
            );
        }
    }
    match load_report(&output, "cooc/report.json")? {
        Some(report) => section(&mut out, "co-occurrence baseline", &report),
        None => {
            let _ = writeln!(
                out,
                "co-occurrence baseline: not analyzed yet (run `mesotext cooccurrence`)\n"
            );
        }
    }

    let _ = writeln!(out, "artifacts: {} files in the manifest", manifest.files.len());

    print!("{out}");
    write_tracked(&mut manifest, &output, "report.txt", out.as_bytes())?;
    manifest.save(&output)?;
    Ok(0)
}
