//! Serialization of networks and derived tables.
//!
//! All floating-point values are written with 12 significant digits, and
//! every writer is a pure function of its inputs, so a rerun of the same
//! pipeline yields byte-identical files. Writes go through a temp file and
//! rename, never leaving a half-written artifact behind.

use std::io::Write;
use std::path::Path;

use crate::cooccurrence::{CentralitySummary, CoOccurrenceNetwork, SUMMARY_HEADERS};
use crate::corpus::ClassLabel;
use crate::error::{Error, Result};
use crate::features::{feature_names, FeatureVector};
use crate::graphmetrics::LongRangeEntry;
use crate::mesonet::MesoscopicNetwork;
use crate::util::{fmt_sig12, xml_escape};

/// Writes via a temporary file in the same directory plus an atomic rename.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    std::fs::create_dir_all(dir)?;
    let name = path
        .file_name()
        .ok_or_else(|| Error::InvalidParameter(format!("not a file path: {}", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp", name.to_string_lossy()));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}

// --------------------------------------------------------------- graphml --

/// GraphML for a window-similarity network. Nodes carry their starting
/// paragraph index and, when known, the chapter label; the graph carries
/// its construction parameters.
pub fn meso_graphml(net: &MesoscopicNetwork) -> String {
    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n");
    out.push_str("<key id=\"d0\" for=\"node\" attr.name=\"start_paragraph\" attr.type=\"int\"/>\n");
    out.push_str("<key id=\"d1\" for=\"node\" attr.name=\"chapter\" attr.type=\"string\"/>\n");
    out.push_str("<key id=\"g0\" for=\"graph\" attr.name=\"source_id\" attr.type=\"string\"/>\n");
    out.push_str("<key id=\"g1\" for=\"graph\" attr.name=\"class_label\" attr.type=\"string\"/>\n");
    out.push_str("<key id=\"g2\" for=\"graph\" attr.name=\"window_delta\" attr.type=\"int\"/>\n");
    out.push_str("<key id=\"g3\" for=\"graph\" attr.name=\"threshold\" attr.type=\"double\"/>\n");
    out.push_str("<key id=\"g4\" for=\"graph\" attr.name=\"retention\" attr.type=\"double\"/>\n");
    out.push_str("<graph id=\"G\" edgedefault=\"undirected\">\n");
    out.push_str(&format!(
        "<data key=\"g0\">{}</data>\n",
        xml_escape(&net.meta.source_id)
    ));
    out.push_str(&format!(
        "<data key=\"g1\">{}</data>\n",
        net.meta.class_label.as_str()
    ));
    out.push_str(&format!("<data key=\"g2\">{}</data>\n", net.meta.delta));
    out.push_str(&format!("<data key=\"g3\">{}</data>\n", fmt_sig12(net.threshold)));
    out.push_str(&format!("<data key=\"g4\">{}</data>\n", fmt_sig12(net.retention)));
    for i in 0..net.node_count() {
        out.push_str(&format!("<node id=\"n{i}\"><data key=\"d0\">{i}</data>"));
        if let Some(chapters) = &net.meta.chapters {
            out.push_str(&format!(
                "<data key=\"d1\">{}</data>",
                xml_escape(&chapters[i])
            ));
        }
        out.push_str("</node>\n");
    }
    for (a, b) in net.edges() {
        out.push_str(&format!("<edge source=\"n{a}\" target=\"n{b}\"/>\n"));
    }
    out.push_str("</graph>\n</graphml>\n");
    out
}

/// GraphML for a word-adjacency network; each node carries its word.
pub fn cooccurrence_graphml(net: &CoOccurrenceNetwork) -> String {
    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n");
    out.push_str("<key id=\"d0\" for=\"node\" attr.name=\"word\" attr.type=\"string\"/>\n");
    out.push_str("<key id=\"g0\" for=\"graph\" attr.name=\"source_id\" attr.type=\"string\"/>\n");
    out.push_str("<key id=\"g1\" for=\"graph\" attr.name=\"class_label\" attr.type=\"string\"/>\n");
    out.push_str("<graph id=\"G\" edgedefault=\"undirected\">\n");
    out.push_str(&format!(
        "<data key=\"g0\">{}</data>\n",
        xml_escape(&net.source_id)
    ));
    out.push_str(&format!(
        "<data key=\"g1\">{}</data>\n",
        net.class_label.as_str()
    ));
    for i in 0..net.node_count() {
        out.push_str(&format!(
            "<node id=\"n{i}\"><data key=\"d0\">{}</data></node>\n",
            xml_escape(net.word(i as u32))
        ));
    }
    for (a, b) in net.edges() {
        out.push_str(&format!("<edge source=\"n{a}\" target=\"n{b}\"/>\n"));
    }
    out.push_str("</graph>\n</graphml>\n");
    out
}

// ------------------------------------------------------------------- csv --

fn into_csv_string(writer: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::MalformedResource(format!("csv flush: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::MalformedResource(format!("csv utf8: {e}")))
}

/// One row per text: id, class, then the fluctuation features in the order
/// of [`feature_names`]. All rows must use the same window ladder.
pub fn feature_csv(rows: &[FeatureVector], deltas: &[usize]) -> Result<String> {
    let names = feature_names(deltas);
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["id".to_string(), "class".to_string()];
    header.extend(names.iter().cloned());
    w.write_record(&header)?;
    for row in rows {
        if row.values.len() != names.len() {
            return Err(Error::LabelMismatch(format!(
                "feature row '{}' has {} values, header has {}",
                row.source_id,
                row.values.len(),
                names.len()
            )));
        }
        let mut record = vec![row.source_id.clone(), row.class_label.as_str().to_string()];
        record.extend(row.values.iter().map(|&v| fmt_sig12(v)));
        w.write_record(&record)?;
    }
    into_csv_string(w)
}

/// One row per text: id, class, then the 34 network summary columns.
pub fn centrality_csv(rows: &[(String, ClassLabel, CentralitySummary)]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["id".to_string(), "class".to_string()];
    header.extend(SUMMARY_HEADERS.iter().map(|s| s.to_string()));
    w.write_record(&header)?;
    for (id, class, summary) in rows {
        let mut record = vec![id.clone(), class.as_str().to_string()];
        record.extend(summary.values.iter().map(|&v| fmt_sig12(v)));
        w.write_record(&record)?;
    }
    into_csv_string(w)
}

/// Projection scatter: id, class, then the first `k` coordinates.
pub fn scatter_csv(
    ids: &[String],
    labels: &[ClassLabel],
    coords: &[Vec<f64>],
) -> Result<String> {
    if ids.len() != labels.len() || ids.len() != coords.len() {
        return Err(Error::LabelMismatch(format!(
            "{} ids, {} labels, {} coordinate rows",
            ids.len(),
            labels.len(),
            coords.len()
        )));
    }
    let k = coords.first().map_or(0, Vec::len);
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["id".to_string(), "class".to_string()];
    header.extend((1..=k).map(|i| format!("pc{i}")));
    w.write_record(&header)?;
    for ((id, label), row) in ids.iter().zip(labels).zip(coords) {
        let mut record = vec![id.clone(), label.as_str().to_string()];
        record.extend(row.iter().map(|&v| fmt_sig12(v)));
        w.write_record(&record)?;
    }
    into_csv_string(w)
}

/// Class-to-class mean distance table with labeled rows and columns.
pub fn distance_csv(table: &[Vec<f64>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["class".to_string()];
    header.extend(ClassLabel::ALL.iter().map(|c| c.as_str().to_string()));
    w.write_record(&header)?;
    for (class, row) in ClassLabel::ALL.iter().zip(table) {
        let mut record = vec![class.as_str().to_string()];
        record.extend(row.iter().map(|&v| fmt_sig12(v)));
        w.write_record(&record)?;
    }
    into_csv_string(w)
}

/// Node positions: node index, x, y.
pub fn positions_csv(positions: &[(f64, f64)]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["node", "x", "y"])?;
    for (i, &(x, y)) in positions.iter().enumerate() {
        w.write_record([i.to_string(), fmt_sig12(x), fmt_sig12(y)])?;
    }
    into_csv_string(w)
}

/// Edge span profile: endpoints, paragraph span, similarity, and whether
/// the edge crosses the long-range span threshold.
pub fn long_range_csv(entries: &[LongRangeEntry]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["i", "j", "span", "weight", "long_range"])?;
    for e in entries {
        w.write_record([
            e.i.to_string(),
            e.j.to_string(),
            e.span.to_string(),
            fmt_sig12(e.weight),
            e.long_range.to_string(),
        ])?;
    }
    into_csv_string(w)
}

// ----------------------------------------------------------------- tests --

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::OrganizedText;
    use crate::mesonet::NetworkMeta;

    fn sample_net() -> MesoscopicNetwork {
        let meta = NetworkMeta {
            source_id: "book & co".into(),
            class_label: ClassLabel::Real,
            delta: 20,
            chapters: Some(vec!["CHAPTER I".into(), "CHAPTER I".into(), "CHAPTER <2>".into()]),
        };
        MesoscopicNetwork::from_edges(3, &[(0, 1), (1, 2)], meta)
    }

    #[test]
    fn meso_graphml_has_nodes_edges_and_escaped_attributes() {
        let xml = meso_graphml(&sample_net());
        assert_eq!(xml.matches("<node ").count(), 3);
        assert_eq!(xml.matches("<edge ").count(), 2);
        assert!(xml.contains("book &amp; co"));
        assert!(xml.contains("CHAPTER &lt;2&gt;"));
        assert!(xml.contains("edgedefault=\"undirected\""));
        assert!(xml.contains("attr.name=\"start_paragraph\""));
    }

    #[test]
    fn cooccurrence_graphml_carries_words() {
        let o = OrganizedText {
            source_id: "t".into(),
            class_label: ClassLabel::ShuffledWords,
            paragraphs: vec![vec!["alpha".into(), "beta".into()]],
            chapters: None,
        };
        let net = crate::cooccurrence::build_cooccurrence(&o);
        let xml = cooccurrence_graphml(&net);
        assert!(xml.contains(">alpha</data>"));
        assert!(xml.contains(">beta</data>"));
        assert_eq!(xml.matches("<edge ").count(), 1);
        assert!(xml.contains("<data key=\"g1\">SW</data>"));
    }

    #[test]
    fn feature_csv_round_trips_and_validates_width() {
        let deltas = [2, 3];
        let rows = vec![FeatureVector {
            source_id: "id,with,commas".into(),
            class_label: ClassLabel::Real,
            window_delta: 20,
            threshold: 0.31,
            values: vec![0.5, 0.25, 0.125, 1.0],
        }];
        let text = feature_csv(&rows, &deltas).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "id,class,cv_clustering_2,cv_clustering_3,cv_matching_2,cv_matching_3"
        );
        let body = lines.next().unwrap();
        assert!(body.starts_with("\"id,with,commas\",RT,"));
        assert!(body.contains("5.00000000000e-1"));

        let bad = vec![FeatureVector { values: vec![1.0], ..rows[0].clone() }];
        assert!(feature_csv(&bad, &deltas).is_err());
    }

    #[test]
    fn centrality_csv_has_36_columns() {
        let summary = CentralitySummary { values: (0..34).map(|i| i as f64).collect() };
        let rows = vec![("b1".to_string(), ClassLabel::ShuffledParagraphs, summary)];
        let text = centrality_csv(&rows).unwrap();
        let header = text.lines().next().unwrap();
        assert_eq!(header.split(',').count(), 36);
        assert!(header.ends_with("modularity,node_count"));
        assert!(text.lines().nth(1).unwrap().starts_with("b1,SP,"));
    }

    #[test]
    fn scatter_distance_positions_and_long_range_rows() {
        let ids = vec!["a".to_string(), "b".to_string()];
        let labels = vec![ClassLabel::Real, ClassLabel::ShuffledWords];
        let coords = vec![vec![1.0, 2.0], vec![3.0, 4.0]];
        let scatter = scatter_csv(&ids, &labels, &coords).unwrap();
        assert!(scatter.starts_with("id,class,pc1,pc2\n"));
        assert!(scatter_csv(&ids, &labels[..1], &coords).is_err());

        let table = vec![vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 3.0], vec![2.0, 3.0, 0.0]];
        let dist = distance_csv(&table).unwrap();
        assert!(dist.starts_with("class,RT,SW,SP\n"));
        assert_eq!(dist.lines().count(), 4);

        let pos = positions_csv(&[(0.25, 0.75)]).unwrap();
        assert!(pos.contains("0,2.50000000000e-1,7.50000000000e-1"));

        let lr = long_range_csv(&[LongRangeEntry {
            i: 0,
            j: 150,
            span: 150,
            weight: 0.5,
            long_range: true,
        }])
        .unwrap();
        assert!(lr.contains("0,150,150,5.00000000000e-1,true"));
    }

    #[test]
    fn atomic_write_replaces_and_leaves_no_temp() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_atomic(&path, b"one").unwrap();
        write_atomic(&path, b"two").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "two");
        let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
        assert_eq!(entries.len(), 1);
    }
}
