//! Mesoscopic text network analysis.
//!
//! A text is segmented into paragraphs, normalized, and covered with
//! overlapping windows of consecutive paragraphs. Windows become nodes of a
//! network whose edges link windows with high tf-idf cosine similarity; the
//! structure of that network (clustering, matching index, long-range links)
//! carries a signature of the text's large-scale organization that survives
//! in none of the shuffled null models.
//!
//! Modules follow the pipeline order:
//!
//! * [`corpus`]: segmentation, token normalization, null-model shuffles
//! * [`vectorizer`]: paragraph windows, tf-idf vectors, cosine similarity
//! * [`mesonet`]: the weighted similarity graph and its pruned network
//! * [`graphmetrics`]: clustering coefficient, matching index, edge series,
//!   long-range profile
//! * [`features`]: coefficient-of-variation fluctuation features
//! * [`cooccurrence`]: word-adjacency baseline networks and their centrality
//!   summaries
//! * [`analysis`]: PCA, class distance tables, k-means, agreement scores
//! * [`layout`]: force-directed drawing and SVG export
//! * [`export`]: GraphML / CSV / JSON writers shared by the CLI

pub mod analysis;
pub mod cooccurrence;
pub mod corpus;
pub mod error;
pub mod export;
pub mod features;
pub mod graphmetrics;
pub mod layout;
pub mod mesonet;
pub mod util;
pub mod vectorizer;

pub use error::{Error, Result};
