use std::collections::HashSet;

use mesotext_core::corpus::{
    self, english_lemmas, english_stopwords, RawDocument, SegmentMode,
};
use mesotext_fixtures::desk_corpus;

fn main() {
    let stop = english_stopwords();
    let lem = english_lemmas();
    for (id, text) in desk_corpus(3, 0xD15C0) {
        let doc = RawDocument { id: id.clone(), language: "english".into(), text };
        let (paras, chapters) = corpus::segment_with_chapters(&doc, SegmentMode::BlankLine).unwrap();
        let o = corpus::normalize(&id, &paras, chapters.as_deref(), &stop, &lem);
        let distinct: HashSet<&str> =
            o.paragraphs.iter().flatten().map(String::as_str).collect();
        let hapax = {
            let mut counts = std::collections::HashMap::new();
            for t in o.tokens() {
                *counts.entry(t).or_insert(0u32) += 1;
            }
            counts.values().filter(|&&c| c == 1).count()
        };
        println!(
            "{id}: tokens {} distinct {} hapax {} paragraphs {}",
            o.token_count(),
            distinct.len(),
            hapax,
            o.paragraphs.len()
        );
        // Raw words that never surface as normalized tokens, beyond the
        // expected function words and heading furniture.
        let mut raw_distinct: HashSet<String> = HashSet::new();
        for p in &paras {
            let mut cur = String::new();
            for ch in p.chars() {
                if ch.is_alphabetic() {
                    cur.extend(ch.to_lowercase());
                } else if !cur.is_empty() {
                    raw_distinct.insert(std::mem::take(&mut cur));
                }
            }
            if !cur.is_empty() {
                raw_distinct.insert(cur);
            }
        }
        let vanished: Vec<&String> = raw_distinct
            .iter()
            .filter(|w| !distinct.contains(w.as_str()) && !stop.contains(w.as_str()))
            .collect();
        println!("  vanished: {vanished:?}");
        let mut sorted: Vec<&str> = distinct.iter().copied().collect();
        sorted.sort_unstable();
        eprintln!("TOKENS {}", sorted.join(" "));
    }
}
