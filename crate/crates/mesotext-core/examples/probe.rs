//! Scratch probe for fixture calibration. Not part of the test suite.

use mesotext_core::corpus::{self, ClassLabel, RawDocument, SegmentMode};
use mesotext_core::graphmetrics;
use mesotext_core::layout;
use mesotext_core::mesonet::{build_similarity_graph, prune, NetworkMeta, PruneRule};
use mesotext_core::util::spearman;
use mesotext_core::vectorizer::{build_windows, compute_tfidf};
use mesotext_fixtures::BookSpec;

fn organize(text: &str, id: &str) -> corpus::OrganizedText {
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

fn main() {
    let candidates = [
        (8.0, 0.18, 6usize, (30, 90), (8, 28)),
        (9.0, 0.18, 6, (30, 90), (8, 28)),
        (10.0, 0.18, 6, (30, 90), (8, 28)),
    ];
    for (scale, weight, fb, narr, dia) in candidates {
        let nonce = 0.05;
        let spec = BookSpec {
            topic_scale: scale,
            topic_weight: weight,
            nonce_weight: nonce,
            flashbacks: vec![(0.62, 0.473, fb), (0.85, 0.703, fb)],
            flashback_recall: 1.0,
            narration_words: narr,
            dialogue_words: dia,
            ..BookSpec::default()
        };
        let text = mesotext_fixtures::generate_book(&spec, mesotext_fixtures::CASE_STUDY_SEED);
        let o = organize(&text, "case");
        let delta = 20;
        let wc = build_windows(&o, delta).unwrap();
        let vectors = compute_tfidf(&wc);
        let g = build_similarity_graph(&vectors);
        let n = g.node_count();

        let mut weights: Vec<f64> = g.off_diagonal().map(|(_, _, w)| w).collect();
        weights.sort_by(f64::total_cmp);
        let frac_above = |t: f64| {
            let pos = weights.partition_point(|&w| w <= t);
            (weights.len() - pos) as f64 / weights.len() as f64
        };

        let meta = NetworkMeta::from_text(&o, delta, n);
        let net5 = prune(&g, PruneRule::Retention(0.05), meta.clone()).unwrap();
        let clustering = graphmetrics::clustering_coefficient(&net5);
        let mean_c = clustering.values.iter().sum::<f64>() / clustering.values.len() as f64;

        let net10 = prune(&g, PruneRule::Retention(0.10), meta.clone()).unwrap();
        let consecutive =
            (0..n - 1).filter(|&i| net10.has_edge(i, i + 1)).count() as f64 / (n - 1) as f64;
        let mut spans = [0usize; 4];
        for (i, j) in net10.edges() {
            let d = (j - i) as usize;
            let b = if d < 20 {
                0
            } else if d < 60 {
                1
            } else if d < 200 {
                2
            } else {
                3
            };
            spans[b] += 1;
        }
        let edges: Vec<(u32, u32)> = net10.edges().collect();
        let index: Vec<f64> = (0..n).map(|i| i as f64).collect();
        let mut rhos = Vec::new();
        for (iters, s) in [(800usize, 7u64), (2400, 7), (2400, 11), (4800, 7)] {
            let pos = layout::fr_layout(n, &edges, iters, s).unwrap();
            let proj = layout::principal_axis_projection(&pos);
            rhos.push(spearman(&proj, &index).abs());
        }
        let rho = rhos[0];

        let lr_max = |o: &corpus::OrganizedText| -> f64 {
            let wc = build_windows(o, delta).unwrap();
            let vectors = compute_tfidf(&wc);
            let g = build_similarity_graph(&vectors);
            let mut best: f64 = 0.0;
            for (i, j, w) in g.off_diagonal() {
                if (j - i) as u32 > graphmetrics::LONG_RANGE_SPAN {
                    best = best.max(w);
                }
            }
            best
        };
        let rt = lr_max(&o);
        let mut worst_null: f64 = 0.0;
        for seed in 0..5u64 {
            let sw = corpus::as_class(&o, ClassLabel::ShuffledWords, seed);
            let sp = corpus::as_class(&o, ClassLabel::ShuffledParagraphs, seed);
            worst_null = worst_null.max(lr_max(&sw)).max(lr_max(&sp));
        }

        // Far-pair (d > 40) similarity floors of one null realization each:
        // the texture the desk experiment separates classes by.
        let floor = |o: &corpus::OrganizedText| -> (f64, f64, f64) {
            let wc = build_windows(o, delta).unwrap();
            let vectors = compute_tfidf(&wc);
            let g = build_similarity_graph(&vectors);
            let far: Vec<f64> = g
                .off_diagonal()
                .filter(|(i, j, _)| j - i > 40)
                .map(|(_, _, w)| w)
                .collect();
            let mean = far.iter().sum::<f64>() / far.len() as f64;
            let sd = (far.iter().map(|w| (w - mean).powi(2)).sum::<f64>() / far.len() as f64)
                .sqrt();
            let above = far.iter().filter(|&&w| w > 0.31).count() as f64 / far.len() as f64;
            (mean, sd, above)
        };
        let sw0 = corpus::as_class(&o, ClassLabel::ShuffledWords, 0);
        let sp0 = corpus::as_class(&o, ClassLabel::ShuffledParagraphs, 0);
        let (sw_m, sw_s, sw_a) = floor(&sw0);
        let (sp_m, sp_s, sp_a) = floor(&sp0);

        println!(
            "scale {scale:>4} fb {fb} narr {narr:?} dia {dia:?}: r31 {:.3} [.03,.07]  r18 {:.3} [.07,.13]  C {:.3} [.68,.88]  consec {:.3}  rho {:.3}  spans {spans:?}  rhos {rhos:?}  lr RT {:.2} null {:.2}  SW {:.2}/{:.2} a{:.2}  SP {:.2}/{:.2} a{:.2}",
            frac_above(0.31),
            frac_above(0.18),
            mean_c,
            consecutive,
            rho,
            rt,
            worst_null,
            sw_m, sw_s, sw_a,
            sp_m, sp_s, sp_a,
        );
    }
}
