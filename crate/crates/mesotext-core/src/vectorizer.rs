//! Paragraph windows and their tf-idf vector representation.
//!
//! A window is delta consecutive paragraphs; windows advance one paragraph
//! at a time, so a text with P paragraphs yields max(0, P - delta + 1)
//! windows and adjacent windows share delta - 1 paragraphs. Each window
//! becomes a sparse tf-idf vector: term count in the window times
//! ln(|D| / f_w), where D is the document collection the idf is computed
//! over (the windows themselves by default, the paragraphs optionally) and
//! f_w counts the documents containing the word. Words present in every
//! document get weight zero and are not stored.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::corpus::OrganizedText;
use crate::error::{Error, Result};

// --------------------------------------------------------------- windows --

/// A view of a text as overlapping paragraph windows.
pub struct WindowCorpus<'a> {
    source: &'a OrganizedText,
    delta: usize,
}

impl<'a> WindowCorpus<'a> {
    pub fn source(&self) -> &'a OrganizedText {
        self.source
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    /// Number of windows: max(0, P - delta + 1).
    pub fn len(&self) -> usize {
        let p = self.source.paragraph_count();
        if p >= self.delta {
            p - self.delta + 1
        } else {
            0
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Tokens of window k: paragraphs k .. k + delta - 1 in text order.
    pub fn window_tokens(&self, k: usize) -> impl Iterator<Item = &'a str> + '_ {
        self.source.paragraphs[k..k + self.delta]
            .iter()
            .flatten()
            .map(String::as_str)
    }
}

/// Builds the stride-1 window cover of a text.
pub fn build_windows(source: &OrganizedText, delta: usize) -> Result<WindowCorpus<'_>> {
    if delta == 0 {
        return Err(Error::InvalidParameter("window size delta must be >= 1".into()));
    }
    Ok(WindowCorpus { source, delta })
}

// ------------------------------------------------------------ vocabulary --

/// Word <-> index mapping, indices assigned in first-occurrence order so the
/// mapping is a pure function of the text.
pub struct Vocabulary {
    words: Vec<String>,
    index: HashMap<String, u32>,
}

impl Vocabulary {
    pub fn build(source: &OrganizedText) -> Self {
        let mut words = Vec::new();
        let mut index = HashMap::new();
        for token in source.tokens() {
            if !index.contains_key(token) {
                index.insert(token.to_string(), words.len() as u32);
                words.push(token.to_string());
            }
        }
        Vocabulary { words, index }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn word(&self, ix: u32) -> &str {
        &self.words[ix as usize]
    }

    pub fn index_of(&self, word: &str) -> Option<u32> {
        self.index.get(word).copied()
    }
}

// --------------------------------------------------------------- vectors --

/// A sparse nonnegative vector over word indices. Entries are sorted by
/// index and strictly positive; the Euclidean norm is cached.
#[derive(Debug, Clone, PartialEq)]
pub struct TfIdfVector {
    entries: Vec<(u32, f64)>,
    norm: f64,
}

impl TfIdfVector {
    /// Builds a vector from (index, weight) pairs. Zero and negative
    /// weights are dropped; entries need not arrive sorted.
    pub fn from_entries(mut entries: Vec<(u32, f64)>) -> Self {
        entries.retain(|&(_, w)| w > 0.0);
        entries.sort_unstable_by_key(|&(i, _)| i);
        let norm = entries.iter().map(|&(_, w)| w * w).sum::<f64>().sqrt();
        TfIdfVector { entries, norm }
    }

    pub fn entries(&self) -> &[(u32, f64)] {
        &self.entries
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sparse dot product by merge join; both entry lists are sorted.
    pub fn dot(&self, other: &TfIdfVector) -> f64 {
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        let mut sum = 0.0;
        while let (Some(&&(ia, wa)), Some(&&(ib, wb))) = (a.peek(), b.peek()) {
            match ia.cmp(&ib) {
                std::cmp::Ordering::Less => {
                    a.next();
                }
                std::cmp::Ordering::Greater => {
                    b.next();
                }
                std::cmp::Ordering::Equal => {
                    sum += wa * wb;
                    a.next();
                    b.next();
                }
            }
        }
        sum
    }
}

/// Which document collection the idf denominator counts over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdfUnit {
    /// D = the windows themselves (the default).
    Window,
    /// D = the underlying paragraphs.
    Paragraph,
}

impl Default for IdfUnit {
    fn default() -> Self {
        IdfUnit::Window
    }
}

/// tf-idf vectors for every window, idf over windows.
pub fn compute_tfidf(wc: &WindowCorpus<'_>) -> Vec<TfIdfVector> {
    compute_tfidf_with(wc, IdfUnit::Window)
}

/// tf-idf vectors for every window with an explicit idf unit.
pub fn compute_tfidf_with(wc: &WindowCorpus<'_>, unit: IdfUnit) -> Vec<TfIdfVector> {
    let n = wc.len();
    if n == 0 {
        return Vec::new();
    }
    let vocab = Vocabulary::build(wc.source());

    // Per-window term counts, reused below for the weights.
    let mut window_counts: Vec<HashMap<u32, u32>> = Vec::with_capacity(n);
    for k in 0..n {
        let mut counts = HashMap::new();
        for token in wc.window_tokens(k) {
            let ix = vocab.index_of(token).expect("window token is in vocabulary");
            *counts.entry(ix).or_insert(0u32) += 1;
        }
        window_counts.push(counts);
    }

    // Document frequencies over the chosen unit.
    let mut df = vec![0u32; vocab.len()];
    let collection_size = match unit {
        IdfUnit::Window => {
            for counts in &window_counts {
                for &ix in counts.keys() {
                    df[ix as usize] += 1;
                }
            }
            n
        }
        IdfUnit::Paragraph => {
            let mut seen = vec![u32::MAX; vocab.len()];
            for (p, paragraph) in wc.source().paragraphs.iter().enumerate() {
                for token in paragraph {
                    let ix = vocab.index_of(token).expect("token is in vocabulary") as usize;
                    if seen[ix] != p as u32 {
                        seen[ix] = p as u32;
                        df[ix] += 1;
                    }
                }
            }
            wc.source().paragraph_count()
        }
    };

    let idf: Vec<f64> = df
        .iter()
        .map(|&f| {
            if f == 0 {
                0.0
            } else {
                (collection_size as f64 / f as f64).ln()
            }
        })
        .collect();

    window_counts
        .into_iter()
        .map(|counts| {
            let entries = counts
                .into_iter()
                .map(|(ix, c)| (ix, c as f64 * idf[ix as usize]))
                .collect();
            TfIdfVector::from_entries(entries)
        })
        .collect()
}

// -------------------------------------------------------------- cosine --

/// Cosine similarity of two sparse nonnegative vectors, in [0, 1]. An
/// all-zero operand yields 0; callers that care count those occurrences.
pub fn cosine_similarity(a: &TfIdfVector, b: &TfIdfVector) -> f64 {
    if a.is_zero() || b.is_zero() {
        return 0.0;
    }
    // Nonnegative entries make the ratio nonnegative; clamp the top end
    // against rounding just past 1.
    (a.dot(b) / (a.norm() * b.norm())).min(1.0)
}

// ----------------------------------------------------------------- tests --

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::ClassLabel;
    use approx::assert_abs_diff_eq;

    fn text(paragraphs: &[&[&str]]) -> OrganizedText {
        OrganizedText {
            source_id: "t".into(),
            class_label: ClassLabel::Real,
            paragraphs: paragraphs
                .iter()
                .map(|p| p.iter().map(|w| w.to_string()).collect())
                .collect(),
            chapters: None,
        }
    }

    #[test]
    fn window_count_and_contents() {
        let o = text(&[&["a"], &["b"], &["c"], &["d"], &["e"]]);
        let wc = build_windows(&o, 3).unwrap();
        assert_eq!(wc.len(), 3);
        let w1: Vec<&str> = wc.window_tokens(1).collect();
        assert_eq!(w1, ["b", "c", "d"]);
    }

    #[test]
    fn delta_one_windows_are_paragraphs() {
        let o = text(&[&["a", "b"], &["c"]]);
        let wc = build_windows(&o, 1).unwrap();
        assert_eq!(wc.len(), 2);
        assert_eq!(wc.window_tokens(0).collect::<Vec<_>>(), ["a", "b"]);
    }

    #[test]
    fn too_few_paragraphs_yield_no_windows() {
        let o = text(&[&["a"], &["b"]]);
        let wc = build_windows(&o, 3).unwrap();
        assert_eq!(wc.len(), 0);
        assert!(build_windows(&o, 0).is_err());
    }

    #[test]
    fn single_window_text_gets_all_zero_vectors() {
        // With one document in the collection every idf is ln(1) = 0.
        let o = text(&[&["a", "b"], &["b", "c"]]);
        let wc = build_windows(&o, 2).unwrap();
        let vectors = compute_tfidf(&wc);
        assert_eq!(vectors.len(), 1);
        assert!(vectors[0].is_zero());
    }

    /// Dense reference computation: per-word scans, no shared counting code.
    fn dense_tfidf_oracle(o: &OrganizedText, delta: usize) -> Vec<Vec<f64>> {
        let n = o.paragraph_count() + 1 - delta;
        let mut all_words: Vec<String> = o.tokens().map(str::to_string).collect();
        all_words.sort();
        all_words.dedup();
        let window_tokens: Vec<Vec<&str>> = (0..n)
            .map(|k| {
                o.paragraphs[k..k + delta]
                    .iter()
                    .flatten()
                    .map(String::as_str)
                    .collect()
            })
            .collect();
        let mut out = vec![vec![0.0; all_words.len()]; n];
        for (wi, word) in all_words.iter().enumerate() {
            let f = window_tokens
                .iter()
                .filter(|toks| toks.iter().any(|t| *t == word))
                .count();
            let idf = ((n as f64) / (f as f64)).ln();
            for k in 0..n {
                let count = window_tokens[k].iter().filter(|t| **t == word).count();
                out[k][wi] = count as f64 * idf;
            }
        }
        out
    }

    #[test]
    fn tfidf_matches_dense_oracle() {
        let o = text(&[
            &["cat", "dog", "cat"],
            &["dog", "fish"],
            &["fish", "bird", "cat"],
            &["bird", "bird"],
            &["cat", "fish"],
        ]);
        let wc = build_windows(&o, 2).unwrap();
        let vectors = compute_tfidf(&wc);
        let oracle = dense_tfidf_oracle(&o, 2);
        let vocab = Vocabulary::build(&o);
        let mut sorted_words: Vec<String> = (0..vocab.len() as u32)
            .map(|i| vocab.word(i).to_string())
            .collect();
        sorted_words.sort();
        for (k, vector) in vectors.iter().enumerate() {
            for (wi, word) in sorted_words.iter().enumerate() {
                let dense = oracle[k][wi];
                let sparse = vocab
                    .index_of(word)
                    .and_then(|ix| {
                        vector.entries().iter().find(|&&(i, _)| i == ix).map(|&(_, w)| w)
                    })
                    .unwrap_or(0.0);
                assert_abs_diff_eq!(dense, sparse, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn words_in_every_window_are_dropped() {
        let o = text(&[&["a", "b"], &["a", "c"], &["a", "b"]]);
        let wc = build_windows(&o, 1).unwrap();
        let vocab = Vocabulary::build(&o);
        let a = vocab.index_of("a").unwrap();
        for v in compute_tfidf(&wc) {
            assert!(v.entries().iter().all(|&(i, _)| i != a));
        }
    }

    #[test]
    fn paragraph_idf_unit_changes_the_denominator() {
        // "b" is in 2 of 3 paragraphs but in both windows: window-unit idf
        // is 0, paragraph-unit idf is ln(3/2) > 0. Window 0 holds "b"
        // twice, so its weight is 2 ln(3/2).
        let o = text(&[&["a", "b"], &["b"], &["c"]]);
        let wc = build_windows(&o, 2).unwrap();
        let vocab = Vocabulary::build(&o);
        let b = vocab.index_of("b").unwrap();
        let by_window = compute_tfidf_with(&wc, IdfUnit::Window);
        let by_paragraph = compute_tfidf_with(&wc, IdfUnit::Paragraph);
        assert!(by_window[0].entries().iter().all(|&(i, _)| i != b));
        let weight = by_paragraph[0]
            .entries()
            .iter()
            .find(|&&(i, _)| i == b)
            .map(|&(_, w)| w)
            .unwrap();
        assert_abs_diff_eq!(weight, 2.0 * (3.0f64 / 2.0).ln(), epsilon = 1e-12);
    }

    #[test]
    fn cosine_of_unit_overlap_is_inverse_sqrt_two() {
        let a = TfIdfVector::from_entries(vec![(0, 1.0), (1, 1.0)]);
        let b = TfIdfVector::from_entries(vec![(0, 1.0)]);
        assert_abs_diff_eq!(cosine_similarity(&a, &b), 1.0 / 2f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn cosine_handles_zero_vectors_and_identity() {
        let a = TfIdfVector::from_entries(vec![(0, 2.0), (3, 1.0)]);
        let zero = TfIdfVector::from_entries(vec![]);
        assert_eq!(cosine_similarity(&a, &zero), 0.0);
        assert_eq!(cosine_similarity(&zero, &zero), 0.0);
        assert_abs_diff_eq!(cosine_similarity(&a, &a), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn cosine_is_exactly_symmetric_and_scale_invariant() {
        let a = TfIdfVector::from_entries(vec![(0, 0.3), (2, 1.7), (5, 0.2)]);
        let b = TfIdfVector::from_entries(vec![(2, 2.1), (5, 0.9), (7, 3.0)]);
        assert_eq!(cosine_similarity(&a, &b).to_bits(), cosine_similarity(&b, &a).to_bits());
        let scaled = TfIdfVector::from_entries(
            a.entries().iter().map(|&(i, w)| (i, w * 1e6)).collect(),
        );
        assert_abs_diff_eq!(
            cosine_similarity(&a, &b),
            cosine_similarity(&scaled, &b),
            epsilon = 1e-12
        );
    }

    #[test]
    fn from_entries_drops_nonpositive_and_sorts() {
        let v = TfIdfVector::from_entries(vec![(5, 1.0), (1, 0.0), (3, 2.0), (2, -1.0)]);
        assert_eq!(v.entries(), &[(3, 2.0), (5, 1.0)]);
    }
}
