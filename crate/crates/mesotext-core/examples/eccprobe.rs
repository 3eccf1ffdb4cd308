//! Scratch probe of per-book eccentricity and degree distributions. Not part
//! of the test suite.

use mesotext_core::cooccurrence::{build_cooccurrence, path_measures};
use mesotext_core::corpus::{self, RawDocument, SegmentMode};
use mesotext_fixtures::desk_corpus;

fn main() {
    let books = desk_corpus(8, 0xD15C0);
    for (id, text) in &books {
        let doc = RawDocument::new(id, "english", text);
        let (paragraphs, chapters) =
            corpus::segment_with_chapters(&doc, SegmentMode::BlankLine).unwrap();
        let o = corpus::normalize(
            id,
            &paragraphs,
            chapters.as_deref(),
            &corpus::english_stopwords(),
            &corpus::english_lemmas(),
        );
        let net = build_cooccurrence(&o);
        let pm = path_measures(net.adjacency());
        let mut hist = std::collections::BTreeMap::new();
        for &e in &pm.eccentricity {
            *hist.entry(e as usize).or_insert(0usize) += 1;
        }
        let mut occ_low = [0usize; 10];
        let mut deg_low = [0usize; 10];
        for i in 0..net.node_count() {
            let d = net.degree(i);
            if d < 10 {
                deg_low[d] += 1;
            }
        }
        let mut counts: std::collections::HashMap<&str, usize> = std::collections::HashMap::new();
        for para in &o.paragraphs {
            for w in para {
                *counts.entry(w.as_str()).or_default() += 1;
            }
        }
        for &c in counts.values() {
            if c < 10 {
                occ_low[c] += 1;
            }
        }
        println!("{id}: ecc {hist:?}");
        println!("   deg<10 {deg_low:?}  occ<10 {occ_low:?}");
        // distances among the four highest-degree nodes, and the profile of
        // the deepest nodes
        let mut by_deg: Vec<usize> = (0..net.node_count()).collect();
        by_deg.sort_by_key(|&i| std::cmp::Reverse(net.degree(i)));
        let hubs: Vec<usize> = by_deg[..4].to_vec();
        let adj = net.adjacency();
        let bfs = |src: usize| -> Vec<i32> {
            let mut dist = vec![-1i32; adj.len()];
            dist[src] = 0;
            let mut q = std::collections::VecDeque::from([src]);
            while let Some(u) = q.pop_front() {
                for &v in &adj[u] {
                    if dist[v as usize] < 0 {
                        dist[v as usize] = dist[u] + 1;
                        q.push_back(v as usize);
                    }
                }
            }
            dist
        };
        let hd: Vec<Vec<i32>> = hubs.iter().map(|&h| bfs(h)).collect();
        print!("   hub dists:");
        for a in 0..4 {
            for b in (a + 1)..4 {
                print!(" {}", hd[a][hubs[b]]);
            }
        }
        println!();
        let worst = pm
            .eccentricity
            .iter()
            .cloned()
            .fold(0.0f64, f64::max) as usize;
        let mut shown = 0;
        for i in 0..net.node_count() {
            if pm.eccentricity[i] as usize == worst && shown < 6 {
                let min_hub: i32 = (0..4).map(|a| hd[a][i]).filter(|&d| d >= 0).min().unwrap_or(-1);
                println!(
                    "   ecc{} node {} deg {} hubdist {}",
                    worst,
                    net.word(i as u32),
                    net.degree(i),
                    min_hub
                );
                shown += 1;
            }
        }
    }
}
