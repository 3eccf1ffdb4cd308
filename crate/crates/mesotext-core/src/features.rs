//! Fluctuation features: how strongly a structure measure varies along the
//! text, observed at several scales.
//!
//! The base quantity is the coefficient of variation c_v = sigma / mean
//! (population sigma). The windowed variant slides a length-delta window
//! over a series with stride 1, takes c_v inside each window, and averages;
//! windows whose mean is zero have no c_v and are skipped, shrinking the
//! divisor. A feature vector stacks the windowed c_v of the clustering
//! series and of the matching series at a ladder of window lengths.

use serde::Serialize;

use crate::corpus::ClassLabel;
use crate::error::{Error, Result};
use crate::graphmetrics::{EdgeSeries, NodeSeries};
use crate::util::{mean, pop_std};

/// Window lengths of the standard feature ladder; two series times eleven
/// lengths give the 22 standard features.
pub const DEFAULT_CV_DELTAS: [usize; 11] = [3, 5, 7, 10, 15, 20, 25, 30, 35, 40, 50];

/// Coefficient of variation of a whole series: population sigma over mean.
/// A zero mean leaves it undefined.
pub fn coefficient_of_variation(xs: &[f64]) -> Result<f64> {
    if xs.is_empty() {
        return Err(Error::InvalidParameter(
            "coefficient of variation needs at least one value".into(),
        ));
    }
    let m = mean(xs);
    if m == 0.0 {
        return Err(Error::ZeroMeanSeries);
    }
    Ok(pop_std(xs) / m)
}

/// Mean coefficient of variation over all stride-1 windows of length
/// `delta`. Zero-mean windows are skipped and the divisor reduced; if every
/// window is skipped the feature is 0.
pub fn windowed_cv(xs: &[f64], delta: usize) -> Result<f64> {
    Ok(windowed_cv_detailed(xs, delta)?.0)
}

/// Like [`windowed_cv`], also reporting how many windows were skipped.
pub fn windowed_cv_detailed(xs: &[f64], delta: usize) -> Result<(f64, usize)> {
    if delta == 0 {
        return Err(Error::InvalidParameter("window length must be >= 1".into()));
    }
    if xs.len() < delta {
        return Err(Error::SeriesTooShort {
            series: "series".into(),
            len: xs.len(),
            delta,
        });
    }
    let mut sum = 0.0;
    let mut used = 0usize;
    let mut skipped = 0usize;
    for window in xs.windows(delta) {
        match coefficient_of_variation(window) {
            Ok(cv) => {
                sum += cv;
                used += 1;
            }
            Err(Error::ZeroMeanSeries) => skipped += 1,
            Err(e) => return Err(e),
        }
    }
    if skipped > 0 {
        log::debug!(
            "windowed cv (delta {delta}): skipped {skipped} zero-mean windows of {}",
            used + skipped
        );
    }
    let value = if used == 0 { 0.0 } else { sum / used as f64 };
    Ok((value, skipped))
}

/// One document-network reduced to its feature values plus identity.
#[derive(Debug, Clone, Serialize)]
pub struct FeatureVector {
    pub source_id: String,
    pub class_label: ClassLabel,
    /// Paragraph-window size the network was built with.
    pub window_delta: usize,
    /// Effective pruning threshold of the network.
    pub threshold: f64,
    pub values: Vec<f64>,
}

/// Column names matching [`feature_vector`] output order.
pub fn feature_names(deltas: &[usize]) -> Vec<String> {
    let mut names: Vec<String> = deltas.iter().map(|d| format!("cv_clustering_{d}")).collect();
    names.extend(deltas.iter().map(|d| format!("cv_matching_{d}")));
    names
}

/// Stacks windowed-c_v values of the clustering and matching series at each
/// ladder length: clustering features first, then matching features.
pub fn feature_vector(
    source_id: &str,
    class_label: ClassLabel,
    window_delta: usize,
    threshold: f64,
    clustering: &NodeSeries,
    matching: &EdgeSeries,
    deltas: &[usize],
) -> Result<FeatureVector> {
    let matching_values = matching.values();
    let mut values = Vec::with_capacity(2 * deltas.len());
    for &d in deltas {
        values.push(named_windowed_cv(&clustering.values, d, &clustering.name)?);
    }
    for &d in deltas {
        values.push(named_windowed_cv(&matching_values, d, &matching.name)?);
    }
    Ok(FeatureVector {
        source_id: source_id.to_string(),
        class_label,
        window_delta,
        threshold,
        values,
    })
}

fn named_windowed_cv(xs: &[f64], delta: usize, name: &str) -> Result<f64> {
    windowed_cv(xs, delta).map_err(|e| match e {
        Error::SeriesTooShort { len, delta, .. } => Error::SeriesTooShort {
            series: name.to_string(),
            len,
            delta,
        },
        other => other,
    })
}

// ----------------------------------------------------------------- tests --

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn known_cv_values() {
        assert_abs_diff_eq!(coefficient_of_variation(&[1.0, 3.0]).unwrap(), 0.5);
        assert_abs_diff_eq!(
            coefficient_of_variation(&[2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0]).unwrap(),
            0.4,
            epsilon = 1e-12
        );
    }

    #[test]
    fn cv_edge_cases() {
        assert!(matches!(
            coefficient_of_variation(&[0.0, 0.0]),
            Err(Error::ZeroMeanSeries)
        ));
        assert!(coefficient_of_variation(&[]).is_err());
        // Constant nonzero series: sigma 0, so c_v 0.
        assert_eq!(coefficient_of_variation(&[4.0; 6]).unwrap(), 0.0);
    }

    #[test]
    fn windowed_cv_known_value() {
        // Windows [1,3], [3,1], [1,3] all have c_v 0.5.
        assert_abs_diff_eq!(
            windowed_cv(&[1.0, 3.0, 1.0, 3.0], 2).unwrap(),
            0.5,
            epsilon = 1e-12
        );
    }

    #[test]
    fn windowed_cv_whole_series_window_equals_plain_cv() {
        let xs = [2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0];
        assert_abs_diff_eq!(
            windowed_cv(&xs, xs.len()).unwrap(),
            coefficient_of_variation(&xs).unwrap(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn zero_mean_windows_are_skipped_and_counted() {
        let (value, skipped) = windowed_cv_detailed(&[0.0, 0.0, 1.0, 2.0], 2).unwrap();
        assert_eq!(skipped, 1);
        // Remaining windows: [0,1] -> 1.0, [1,2] -> (0.5)/(1.5).
        assert_abs_diff_eq!(value, (1.0 + 1.0 / 3.0) / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn all_windows_skipped_yields_zero() {
        let (value, skipped) = windowed_cv_detailed(&[0.0; 5], 3).unwrap();
        assert_eq!(value, 0.0);
        assert_eq!(skipped, 3);
    }

    #[test]
    fn constant_series_has_zero_windowed_cv() {
        for d in [1usize, 2, 3] {
            assert_eq!(windowed_cv(&[7.0; 6], d).unwrap(), 0.0);
        }
    }

    #[test]
    fn short_series_is_reported_with_its_length() {
        match windowed_cv(&[1.0, 2.0], 5) {
            Err(Error::SeriesTooShort { len, delta, .. }) => {
                assert_eq!((len, delta), (2, 5));
            }
            other => panic!("expected SeriesTooShort, got {other:?}"),
        }
    }

    #[test]
    fn windowed_cv_is_scale_invariant() {
        let xs: Vec<f64> = (1..40).map(|i| ((i * 37) % 11) as f64 + 1.0).collect();
        let scaled: Vec<f64> = xs.iter().map(|x| x * 123.4).collect();
        for d in [2usize, 5, 9] {
            assert_abs_diff_eq!(
                windowed_cv(&xs, d).unwrap(),
                windowed_cv(&scaled, d).unwrap(),
                epsilon = 1e-12
            );
        }
    }

    fn toy_series() -> (NodeSeries, EdgeSeries) {
        let clustering = NodeSeries {
            name: "clustering".into(),
            values: (0..60).map(|i| 0.2 + 0.01 * ((i * 13) % 7) as f64).collect(),
        };
        let matching = EdgeSeries {
            name: "matching".into(),
            entries: (0..80)
                .map(|i| (i as u32, (i + 1) as u32, 0.1 + 0.02 * ((i * 5) % 9) as f64))
                .collect(),
        };
        (clustering, matching)
    }

    #[test]
    fn default_ladder_yields_22_features() {
        let (clustering, matching) = toy_series();
        let fv = feature_vector(
            "doc",
            ClassLabel::Real,
            20,
            0.3,
            &clustering,
            &matching,
            &DEFAULT_CV_DELTAS,
        )
        .unwrap();
        assert_eq!(fv.values.len(), 22);
        assert!(fv.values.iter().all(|v| v.is_finite() && *v >= 0.0));
        assert_eq!(feature_names(&DEFAULT_CV_DELTAS).len(), 22);
        assert_eq!(feature_names(&[3, 5])[..], ["cv_clustering_3", "cv_clustering_5", "cv_matching_3", "cv_matching_5"]);
    }

    #[test]
    fn short_series_error_names_the_series() {
        let (clustering, matching) = toy_series();
        let short = NodeSeries { name: "clustering".into(), values: vec![0.5; 4] };
        match feature_vector("d", ClassLabel::Real, 20, 0.3, &short, &matching, &[10]) {
            Err(Error::SeriesTooShort { series, .. }) => assert_eq!(series, "clustering"),
            other => panic!("expected SeriesTooShort, got {other:?}"),
        }
        let short_edges = EdgeSeries { name: "matching".into(), entries: vec![(0, 1, 0.5)] };
        match feature_vector("d", ClassLabel::Real, 20, 0.3, &clustering, &short_edges, &[10]) {
            Err(Error::SeriesTooShort { series, .. }) => assert_eq!(series, "matching"),
            other => panic!("expected SeriesTooShort, got {other:?}"),
        }
    }
}
