//! The layout step: spring-embed one document's window network and draw
//! it. The chain structure of a real text shows up as an arc once the
//! node coloring follows the text position.

use anyhow::{bail, Result};
use clap::{Args, ValueEnum};
use mesotext_core::corpus::ClassLabel;
use mesotext_core::export;
use mesotext_core::graphmetrics;
use mesotext_core::layout::{self, Coloring};

use crate::config::{self, ConfigArgs};
use crate::manifest::{write_tracked, Manifest};
use crate::pipeline;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ColorRule {
    /// Gradient along the node index, start to end of the text.
    Position,
    /// One color per chapter; needs chapter headings in the source.
    Chapter,
    /// Gradient over the local clustering coefficient.
    Clustering,
}

#[derive(Debug, Args)]
pub struct LayoutArgs {
    #[command(flatten)]
    pub cfg: ConfigArgs,

    /// Document to lay out; defaults to the first built document.
    #[arg(long, value_name = "ID")]
    pub doc: Option<String>,

    /// Which text class to draw.
    #[arg(long, value_name = "CLASS", default_value = "RT")]
    pub class: String,

    /// Node coloring rule.
    #[arg(long, value_enum, default_value_t = ColorRule::Position)]
    pub color: ColorRule,
}

pub fn run(args: &LayoutArgs) -> Result<i32> {
    let cfg = config::resolve(&args.cfg, false)?;
    let output = cfg.run.output.clone();
    let mut manifest = Manifest::load(&output)?;
    let class = ClassLabel::parse(&args.class)
        .map_err(|e| config::ConfigError(e.to_string()))?;
    let id = match &args.doc {
        Some(id) => {
            if !manifest.documents.iter().any(|d| d.id == *id && d.status == "ok") {
                bail!(
                    "document '{id}' is not in the manifest as built; check the id or \
                     re-run `mesotext build`"
                );
            }
            id.clone()
        }
        None => match manifest.ok_documents().first() {
            Some(first) => first.clone(),
            None => bail!(
                "the manifest lists no successfully built documents; fix the corpus and \
                 re-run `mesotext build`"
            ),
        },
    };

    let organized = pipeline::load_organized(&output, &id, class)?;
    let (_, network) = pipeline::window_network(&organized, &cfg.network)?;
    let edges: Vec<(u32, u32)> = network.edges().collect();
    let positions = layout::fr_layout(
        network.node_count(),
        &edges,
        cfg.layout.iterations,
        cfg.layout.seed,
    )?;

    let clustering;
    let coloring = match args.color {
        ColorRule::Position => Coloring::Position,
        ColorRule::Chapter => match &network.meta.chapters {
            Some(labels) => Coloring::Chapter(labels),
            None => bail!(
                "document '{id}' has no chapter metadata; use --color position or \
                 a source with chapter headings"
            ),
        },
        ColorRule::Clustering => {
            clustering = graphmetrics::clustering_coefficient(&network);
            Coloring::Values {
                values: &clustering.values,
                caption: "clustering coefficient",
            }
        }
    };

    let title = format!("{id} ({})", class.as_str());
    let svg = layout::render_svg(&positions, &edges, &coloring, &title)?;
    let positions_csv = export::positions_csv(&positions)?;
    let svg_rel = format!("layout/{id}.{}.svg", class.as_str());
    let csv_rel = format!("layout/{id}.{}.positions.csv", class.as_str());
    write_tracked(&mut manifest, &output, &svg_rel, svg.as_bytes())?;
    write_tracked(&mut manifest, &output, &csv_rel, positions_csv.as_bytes())?;
    manifest.save(&output)?;

    println!(
        "laid out {} nodes and {} edges into {}",
        network.node_count(),
        edges.len(),
        output.join(&svg_rel).display()
    );
    Ok(0)
}
