//! Scratch rehearsal of the desk-scale discrimination run. Not part of the
//! test suite.

use std::time::Instant;

use mesotext_core::analysis;
use mesotext_core::cooccurrence;
use mesotext_core::corpus::{self, ClassLabel, OrganizedText, RawDocument, SegmentMode};
use mesotext_core::features::{self, DEFAULT_CV_DELTAS};
use mesotext_core::graphmetrics;
use mesotext_core::mesonet::{build_similarity_graph, prune, NetworkMeta, PruneRule};
use mesotext_core::util::sub_seed;
use mesotext_core::vectorizer::{build_windows, compute_tfidf};
use rayon::prelude::*;

fn organize(text: &str, id: &str) -> OrganizedText {
    let doc = RawDocument::new(id, "english", text);
    let (paragraphs, chapters) =
        corpus::segment_with_chapters(&doc, SegmentMode::BlankLine).unwrap();
    corpus::normalize(
        id,
        &paragraphs,
        chapters.as_deref(),
        &corpus::english_stopwords(),
        &corpus::english_lemmas(),
    )
}

fn meso_features(o: &OrganizedText, delta: usize, threshold: f64) -> Vec<f64> {
    let wc = build_windows(o, delta).unwrap();
    let vectors = compute_tfidf(&wc);
    let g = build_similarity_graph(&vectors);
    let meta = NetworkMeta::from_text(o, delta, g.node_count());
    let net = prune(&g, PruneRule::Threshold(threshold), meta).unwrap();
    let clustering = graphmetrics::clustering_coefficient(&net);
    let matching = graphmetrics::matching_index(&net);
    features::feature_vector(
        &o.source_id,
        o.class_label,
        delta,
        threshold,
        &clustering,
        &matching,
        &DEFAULT_CV_DELTAS,
    )
    .unwrap()
    .values
}

fn evaluate(
    tag: &str,
    rows: &[Vec<f64>],
    labels: &[ClassLabel],
    pcs: usize,
) -> (f64, f64, f64, f64) {
    let truth: Vec<usize> = labels
        .iter()
        .map(|l| ClassLabel::ALL.iter().position(|c| c == l).unwrap())
        .collect();
    let proj = analysis::pca(rows, pcs).unwrap();
    let km = analysis::kmeans(&proj.coords, 3, 20, 300, 0xA11CE).unwrap();
    let ari = analysis::adjusted_rand_index(&km.assignments, &truth).unwrap();
    let acc = analysis::clustering_accuracy(&km.assignments, &truth, 3).unwrap();
    let mut confusion = [[0usize; 3]; 3];
    for (a, t) in km.assignments.iter().zip(&truth) {
        confusion[*t][*a] += 1;
    }
    println!("{tag} confusion rows RT/SW/SP x clusters: {confusion:?}");
    for (ci, class) in ClassLabel::ALL.iter().enumerate() {
        let pts: Vec<&Vec<f64>> = proj
            .coords
            .iter()
            .zip(&truth)
            .filter(|(_, t)| **t == ci)
            .map(|(c, _)| c)
            .collect();
        let dim = pts[0].len().min(3);
        let mean: Vec<f64> = (0..dim)
            .map(|d| pts.iter().map(|p| p[d]).sum::<f64>() / pts.len() as f64)
            .collect();
        let sd: Vec<f64> = (0..dim)
            .map(|d| {
                (pts.iter().map(|p| (p[d] - mean[d]).powi(2)).sum::<f64>() / pts.len() as f64)
                    .sqrt()
            })
            .collect();
        let fm: Vec<String> = mean.iter().map(|v| format!("{v:7.2}")).collect();
        let fs: Vec<String> = sd.iter().map(|v| format!("{v:6.2}")).collect();
        println!("{tag} {class:?}: pc mean [{}]  sd [{}]", fm.join(" "), fs.join(" "));
    }
    let dist = analysis::class_distance_table(&proj.coords, labels).unwrap();
    let rt_sw = dist[0][1];
    let rt_sp = dist[0][2];
    println!(
        "{tag}: ari {ari:.3} acc {acc:.3} misclustered {:.3}  RT-SW {rt_sw:.3} RT-SP {rt_sp:.3} ratio {:.3}",
        1.0 - acc,
        rt_sp / rt_sw,
    );
    (ari, acc, rt_sw, rt_sp)
}

fn main() {
    let start = Instant::now();
    let corpus_seed: u64 = std::env::var("DESK_SEED")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(0xD15C0);
    let books = mesotext_fixtures::desk_corpus(32, corpus_seed);
    let master = 0xF00D_u64;

    // One organized text per (book, class), grouped per book.
    let texts: Vec<Vec<OrganizedText>> = books
        .par_iter()
        .enumerate()
        .map(|(ix, (id, text))| {
            let rt = organize(text, id);
            let sw = corpus::as_class(&rt, ClassLabel::ShuffledWords, sub_seed(master, ix as u64));
            let sp = corpus::as_class(
                &rt,
                ClassLabel::ShuffledParagraphs,
                sub_seed(master, 1000 + ix as u64),
            );
            vec![rt, sw, sp]
        })
        .collect();
    let flat: Vec<&OrganizedText> = texts.iter().flatten().collect();
    let labels: Vec<ClassLabel> = flat.iter().map(|o| o.class_label).collect();
    println!("organized {} texts in {:.1?}", flat.len(), start.elapsed());

    let t = Instant::now();
    let meso_rows: Vec<Vec<f64>> =
        flat.par_iter().map(|o| meso_features(o, 20, 0.31)).collect();
    println!("meso features in {:.1?}", t.elapsed());

    let t = Instant::now();
    let owned: Vec<OrganizedText> = flat.iter().map(|&o| o.clone()).collect();
    let counts: Vec<usize> = owned.iter().map(|o| o.token_count()).collect();
    println!(
        "token counts: min {} max {}",
        counts.iter().min().unwrap(),
        counts.iter().max().unwrap()
    );
    let trimmed = cooccurrence::trim_to_common_length(&owned).unwrap();
    let co_rows: Vec<Vec<f64>> = trimmed
        .par_iter()
        .map(|o| {
            let net = cooccurrence::build_cooccurrence(o);
            cooccurrence::centrality_summary(&net).unwrap().values
        })
        .collect();
    println!("cooccurrence summaries in {:.1?}", t.elapsed());

    let class_stats = |tag: &str, rows: &[Vec<f64>], ix: usize, name: &str| {
        let mut line = format!("{tag} {name:<16}");
        for class in ClassLabel::ALL {
            let vals: Vec<f64> = rows
                .iter()
                .zip(&labels)
                .filter(|(_, l)| **l == class)
                .map(|(r, _)| r[ix])
                .collect();
            let mean = vals.iter().sum::<f64>() / vals.len() as f64;
            let sd = (vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>()
                / vals.len() as f64)
                .sqrt();
            line.push_str(&format!("  {mean:9.3} ({sd:7.3})"));
        }
        println!("{line}");
    };
    println!("--- raw cooc features, mean (sd) for RT / SW / SP ---");
    class_stats("cooc", &co_rows, 33, "node_count");
    class_stats("cooc", &co_rows, 32, "modularity");
    class_stats("cooc", &co_rows, 0, "degree_max");
    class_stats("cooc", &co_rows, 8, "betweenness_max");
    class_stats("cooc", &co_rows, 17, "eccentricity_med");
    println!("--- cooc feature table: noise share and standardized gaps ---");
    let d = co_rows[0].len();
    let mut table: Vec<(f64, String)> = Vec::new();
    for ix in 0..d {
        let all: Vec<f64> = co_rows.iter().map(|r| r[ix]).collect();
        let gm = all.iter().sum::<f64>() / all.len() as f64;
        let total_var = all.iter().map(|v| (v - gm).powi(2)).sum::<f64>() / all.len() as f64;
        if total_var == 0.0 {
            continue;
        }
        let mut within = 0.0;
        let mut means = [0.0f64; 3];
        for (ci, class) in ClassLabel::ALL.iter().enumerate() {
            let vals: Vec<f64> = co_rows
                .iter()
                .zip(&labels)
                .filter(|(_, l)| *l == class)
                .map(|(r, _)| r[ix])
                .collect();
            let m = vals.iter().sum::<f64>() / vals.len() as f64;
            means[ci] = m;
            within += vals.iter().map(|v| (v - m).powi(2)).sum::<f64>();
        }
        within /= co_rows.len() as f64;
        let sd = total_var.sqrt();
        let noise = within / total_var;
        let rt_vals: Vec<f64> = co_rows
            .iter()
            .zip(&labels)
            .filter(|(_, l)| **l == ClassLabel::Real)
            .map(|(r, _)| r[ix])
            .collect();
        let rt_m = rt_vals.iter().sum::<f64>() / rt_vals.len() as f64;
        let rt_var =
            rt_vals.iter().map(|v| (v - rt_m).powi(2)).sum::<f64>() / rt_vals.len() as f64;
        let rt_share = rt_var / total_var;
        let rt_sp = (means[0] - means[2]).abs() / sd;
        let rt_sw = (means[0] - means[1]).abs() / sd;
        table.push((
            rt_share,
            format!(
                "{:<28} rtvar {rt_share:5.2}  noise {noise:5.2}  |RT-SW| {rt_sw:5.2}  |RT-SP| {rt_sp:5.2}",
                cooccurrence::SUMMARY_HEADERS[ix]
            ),
        ));
    }
    table.sort_by(|a, b| b.0.total_cmp(&a.0));
    for (_, line) in &table {
        println!("cooc {line}");
    }
    println!("--- raw meso features, mean (sd) for RT / SW / SP ---");
    class_stats("meso", &meso_rows, 0, "cv_clu_3");
    class_stats("meso", &meso_rows, 5, "cv_clu_20");
    class_stats("meso", &meso_rows, 10, "cv_clu_50");
    class_stats("meso", &meso_rows, 11, "cv_mat_3");
    class_stats("meso", &meso_rows, 16, "cv_mat_20");
    class_stats("meso", &meso_rows, 21, "cv_mat_50");

    let (m_ari, m_acc, m_rt_sw, m_rt_sp) = evaluate("meso ", &meso_rows, &labels, 6);
    let (c_ari, c_acc, c_rt_sw, c_rt_sp) = evaluate("cooc ", &co_rows, &labels, 10);

    println!("--- criterion checks ---");
    println!("meso misclustered {:.3} < 0.20: {}", 1.0 - m_acc, 1.0 - m_acc < 0.20);
    println!("meso ari > cooc ari: {m_ari:.3} > {c_ari:.3}: {}", m_ari > c_ari);
    println!("meso acc > cooc acc: {m_acc:.3} > {c_acc:.3}: {}", m_acc > c_acc);
    println!(
        "cooc RT-SP < 10% of RT-SW: {:.4} < {:.4}: {}",
        c_rt_sp,
        0.10 * c_rt_sw,
        c_rt_sp < 0.10 * c_rt_sw
    );
    println!(
        "meso RT-SP > 50% of RT-SW: {:.4} > {:.4}: {}",
        m_rt_sp,
        0.50 * m_rt_sw,
        m_rt_sp > 0.50 * m_rt_sw
    );
    println!("total {:.1?}", start.elapsed());
}
