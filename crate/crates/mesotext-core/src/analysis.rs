//! Feature-space analysis: PCA on standardized columns, k-means with
//! careful seeding and restarts, and partition agreement scores.
//!
//! Everything here is deterministic for a fixed seed. Restarts draw
//! independent generators derived from the base seed, run in parallel, and
//! the winner is picked by a sequential scan, so thread scheduling cannot
//! change any result.

use rayon::prelude::*;

use crate::corpus::ClassLabel;
use crate::error::{Error, Result};
use crate::util::{mean, pop_std, seeded_rng, sub_seed};
use rand::Rng;

// ------------------------------------------------------------------- pca --

/// Result of a principal component projection.
pub struct Projection {
    /// Row coordinates in component space, n rows of k values.
    pub coords: Vec<Vec<f64>>,
    /// Component loadings, k rows over the kept columns.
    pub components: Vec<Vec<f64>>,
    /// Fraction of total variance carried by each component.
    pub explained: Vec<f64>,
    /// Indices of input columns that survived (non-constant columns).
    pub kept_columns: Vec<usize>,
    /// Per kept column: mean and standard deviation used to standardize.
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
}

/// PCA of the row matrix: columns are standardized to zero mean and unit
/// variance (constant columns are dropped), the correlation matrix is
/// eigendecomposed, and rows are projected onto the top `k` components.
///
/// Each component's sign is chosen so its largest-magnitude loading is
/// positive. Requires `k <= min(n - 1, kept columns)`: beyond that the
/// correlation matrix is rank deficient and the directions are noise.
pub fn pca(rows: &[Vec<f64>], k: usize) -> Result<Projection> {
    let n = rows.len();
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "pca needs at least 2 rows, got {n}"
        )));
    }
    let d = rows[0].len();
    if rows.iter().any(|r| r.len() != d) {
        return Err(Error::InvalidParameter("pca rows have unequal lengths".into()));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("pca needs at least 1 component".into()));
    }

    let mut kept_columns = Vec::new();
    let mut means = Vec::new();
    let mut stds = Vec::new();
    for j in 0..d {
        let column: Vec<f64> = rows.iter().map(|r| r[j]).collect();
        let s = pop_std(&column);
        if s > 0.0 {
            kept_columns.push(j);
            means.push(mean(&column));
            stds.push(s);
        } else {
            log::debug!("pca: dropping constant column {j}");
        }
    }
    let dk = kept_columns.len();
    let rank_cap = dk.min(n - 1);
    if k > rank_cap {
        return Err(Error::InvalidParameter(format!(
            "pca rank supports at most {rank_cap} components ({n} rows, {dk} varying columns), requested {k}"
        )));
    }

    // Standardized matrix Z, then the correlation matrix Z'Z / n.
    let z = nalgebra::DMatrix::from_fn(n, dk, |i, j| {
        (rows[i][kept_columns[j]] - means[j]) / stds[j]
    });
    let corr = z.transpose() * &z / n as f64;
    let eig = corr.symmetric_eigen();

    let mut order: Vec<usize> = (0..dk).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .total_cmp(&eig.eigenvalues[a])
            .then(a.cmp(&b))
    });
    let total: f64 = eig.eigenvalues.iter().map(|&v| v.max(0.0)).sum();

    let mut components = Vec::with_capacity(k);
    let mut explained = Vec::with_capacity(k);
    for &e in order.iter().take(k) {
        let mut component: Vec<f64> = eig.eigenvectors.column(e).iter().copied().collect();
        let lead = component
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()).then(b.0.cmp(&a.0)))
            .map(|(i, _)| i)
            .expect("component has entries");
        if component[lead] < 0.0 {
            for v in &mut component {
                *v = -*v;
            }
        }
        explained.push(if total > 0.0 {
            eig.eigenvalues[e].max(0.0) / total
        } else {
            0.0
        });
        components.push(component);
    }

    let coords = (0..n)
        .map(|i| {
            components
                .iter()
                .map(|w| (0..dk).map(|j| z[(i, j)] * w[j]).sum())
                .collect()
        })
        .collect();

    Ok(Projection { coords, components, explained, kept_columns, means, stds })
}

/// Mean Euclidean distance between classes on the first two projection
/// coordinates. Rows align with `labels`; classes are ordered
/// Real, ShuffledWords, ShuffledParagraphs and the diagonal is zero.
pub fn class_distance_table(
    coords: &[Vec<f64>],
    labels: &[ClassLabel],
) -> Result<Vec<Vec<f64>>> {
    if coords.len() != labels.len() {
        return Err(Error::LabelMismatch(format!(
            "{} coordinate rows vs {} labels",
            coords.len(),
            labels.len()
        )));
    }
    if coords.iter().any(|c| c.len() < 2) {
        return Err(Error::InvalidParameter(
            "class distances need at least 2 projection coordinates per row".into(),
        ));
    }
    let groups: Vec<Vec<&[f64]>> = ClassLabel::ALL
        .iter()
        .map(|&class| {
            coords
                .iter()
                .zip(labels)
                .filter(|&(_, &l)| l == class)
                .map(|(c, _)| &c[..2])
                .collect()
        })
        .collect();
    for (class, group) in ClassLabel::ALL.iter().zip(&groups) {
        if group.is_empty() {
            return Err(Error::LabelMismatch(format!(
                "no rows labeled {class}"
            )));
        }
    }
    let k = ClassLabel::ALL.len();
    let mut table = vec![vec![0.0; k]; k];
    for a in 0..k {
        for b in (a + 1)..k {
            let mut sum = 0.0;
            for pa in &groups[a] {
                for pb in &groups[b] {
                    sum += ((pa[0] - pb[0]).powi(2) + (pa[1] - pb[1]).powi(2)).sqrt();
                }
            }
            let d = sum / (groups[a].len() * groups[b].len()) as f64;
            table[a][b] = d;
            table[b][a] = d;
        }
    }
    Ok(table)
}

// ---------------------------------------------------------------- kmeans --

/// Outcome of the best k-means restart.
pub struct KMeansResult {
    pub assignments: Vec<usize>,
    pub centroids: Vec<Vec<f64>>,
    pub wcss: f64,
    /// Which restart won and how many Lloyd iterations it took.
    pub restart: usize,
    pub iterations: usize,
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Lloyd's algorithm with distance-weighted seeding, run `restarts` times
/// from generators derived from `seed`; returns the restart with the
/// smallest within-cluster sum of squares (ties keep the earliest).
///
/// Assignment ties go to the lowest centroid index and a cluster that loses
/// all its points keeps its previous centroid, so every restart is fully
/// deterministic.
pub fn kmeans(
    rows: &[Vec<f64>],
    k: usize,
    restarts: usize,
    max_iter: usize,
    seed: u64,
) -> Result<KMeansResult> {
    let n = rows.len();
    if k == 0 || restarts == 0 || max_iter == 0 {
        return Err(Error::InvalidParameter(
            "kmeans needs k, restarts and max_iter of at least 1".into(),
        ));
    }
    if n < k {
        return Err(Error::InvalidParameter(format!(
            "kmeans with k = {k} needs at least {k} rows, got {n}"
        )));
    }
    let d = rows[0].len();
    if rows.iter().any(|r| r.len() != d) {
        return Err(Error::InvalidParameter("kmeans rows have unequal lengths".into()));
    }

    let runs: Vec<(f64, Vec<usize>, Vec<Vec<f64>>, usize)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = seeded_rng(sub_seed(seed, r as u64));
            let mut centroids = seed_centroids(rows, k, &mut rng);
            let mut assignments = vec![usize::MAX; n];
            let mut iterations = 0;
            for _ in 0..max_iter {
                iterations += 1;
                let mut changed = false;
                for (i, row) in rows.iter().enumerate() {
                    let mut best = 0;
                    let mut best_d = dist2(row, &centroids[0]);
                    for (c, centroid) in centroids.iter().enumerate().skip(1) {
                        let dd = dist2(row, centroid);
                        if dd < best_d {
                            best_d = dd;
                            best = c;
                        }
                    }
                    if assignments[i] != best {
                        assignments[i] = best;
                        changed = true;
                    }
                }
                if !changed {
                    break;
                }
                for c in 0..k {
                    let members: Vec<&Vec<f64>> = rows
                        .iter()
                        .zip(&assignments)
                        .filter(|&(_, &a)| a == c)
                        .map(|(row, _)| row)
                        .collect();
                    if members.is_empty() {
                        continue; // keep the previous centroid
                    }
                    for j in 0..d {
                        centroids[c][j] =
                            members.iter().map(|m| m[j]).sum::<f64>() / members.len() as f64;
                    }
                }
            }
            let wcss = rows
                .iter()
                .zip(&assignments)
                .map(|(row, &a)| dist2(row, &centroids[a]))
                .sum();
            (wcss, assignments, centroids, iterations)
        })
        .collect();

    let mut best = 0;
    for r in 1..runs.len() {
        if runs[r].0 < runs[best].0 {
            best = r;
        }
    }
    let (wcss, assignments, centroids, iterations) = runs.into_iter().nth(best).expect("restarts > 0");
    Ok(KMeansResult { assignments, centroids, wcss, restart: best, iterations })
}

/// Distance-weighted seeding: the first centroid is uniform, each next one
/// is drawn with probability proportional to the squared distance to the
/// nearest centroid so far. If every remaining distance is zero the lowest
/// unchosen row index is taken.
fn seed_centroids(rows: &[Vec<f64>], k: usize, rng: &mut impl Rng) -> Vec<Vec<f64>> {
    let n = rows.len();
    let mut chosen = vec![rng.random_range(0..n)];
    let mut d2: Vec<f64> = rows.iter().map(|r| dist2(r, &rows[chosen[0]])).collect();
    while chosen.len() < k {
        let total: f64 = d2.iter().sum();
        let next = if total > 0.0 {
            let mut x = rng.random_range(0.0..total);
            let mut pick = n - 1;
            for (i, &w) in d2.iter().enumerate() {
                if x < w {
                    pick = i;
                    break;
                }
                x -= w;
            }
            pick
        } else {
            (0..n)
                .find(|i| !chosen.contains(i))
                .expect("k <= n leaves an unchosen row")
        };
        chosen.push(next);
        for (i, row) in rows.iter().enumerate() {
            let dd = dist2(row, &rows[next]);
            if dd < d2[i] {
                d2[i] = dd;
            }
        }
    }
    chosen.into_iter().map(|i| rows[i].clone()).collect()
}

// ------------------------------------------------------ partition scores --

fn pairs2(x: u128) -> u128 {
    x * x.saturating_sub(1) / 2
}

/// Chance-adjusted agreement between two labelings of the same rows.
/// 1 means identical partitions, 0 is the chance level, and values below 0
/// mean worse than chance. If the adjustment denominator vanishes the
/// score is 1 for identical partitions and 0 otherwise.
pub fn adjusted_rand_index(a: &[usize], b: &[usize]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LabelMismatch(format!(
            "{} vs {} labels",
            a.len(),
            b.len()
        )));
    }
    if a.is_empty() {
        return Err(Error::LabelMismatch("empty labelings".into()));
    }
    let ka = a.iter().max().unwrap() + 1;
    let kb = b.iter().max().unwrap() + 1;
    let mut contingency = vec![vec![0u128; kb]; ka];
    for (&x, &y) in a.iter().zip(b) {
        contingency[x][y] += 1;
    }
    let index: u128 = contingency
        .iter()
        .flat_map(|row| row.iter().map(|&c| pairs2(c)))
        .sum();
    let sum_a: u128 = contingency
        .iter()
        .map(|row| pairs2(row.iter().sum()))
        .sum();
    let sum_b: u128 = (0..kb)
        .map(|j| pairs2(contingency.iter().map(|row| row[j]).sum()))
        .sum();
    let total = pairs2(a.len() as u128);
    if total == 0 {
        // A single row has no pairs to agree on.
        return Ok(1.0);
    }

    let expected = sum_a as f64 * sum_b as f64 / total as f64;
    let maximum = (sum_a + sum_b) as f64 / 2.0;
    let denom = maximum - expected;
    if denom == 0.0 {
        return Ok(if same_partition(a, b) { 1.0 } else { 0.0 });
    }
    Ok((index as f64 - expected) / denom)
}

/// True when the two labelings induce the same partition up to renaming.
fn same_partition(a: &[usize], b: &[usize]) -> bool {
    canonical(a) == canonical(b)
}

fn canonical(labels: &[usize]) -> Vec<usize> {
    let mut rename = std::collections::HashMap::new();
    labels
        .iter()
        .map(|&l| {
            let next = rename.len();
            *rename.entry(l).or_insert(next)
        })
        .collect()
}

/// Fraction of rows placed correctly under the best one-to-one relabeling
/// of the `k` cluster ids. Both inputs must use ids below `k`.
pub fn clustering_accuracy(assignments: &[usize], truth: &[usize], k: usize) -> Result<f64> {
    if assignments.len() != truth.len() {
        return Err(Error::LabelMismatch(format!(
            "{} assignments vs {} true labels",
            assignments.len(),
            truth.len()
        )));
    }
    if assignments.is_empty() {
        return Err(Error::LabelMismatch("empty labelings".into()));
    }
    if assignments.iter().chain(truth).any(|&l| l >= k) {
        return Err(Error::LabelMismatch(format!("label out of range 0..{k}")));
    }
    if k > 8 {
        return Err(Error::InvalidParameter(
            "relabeling search supports at most 8 clusters".into(),
        ));
    }
    let mut best = 0usize;
    for perm in permutations(k) {
        let hits = assignments
            .iter()
            .zip(truth)
            .filter(|&(&a, &t)| perm[a] == t)
            .count();
        best = best.max(hits);
    }
    Ok(best as f64 / assignments.len() as f64)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut arr: Vec<usize> = (0..k).collect();
    fn recurse(m: usize, arr: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if m <= 1 {
            out.push(arr.clone());
            return;
        }
        for i in 0..m {
            recurse(m - 1, arr, out);
            if m % 2 == 0 {
                arr.swap(i, m - 1);
            } else {
                arr.swap(0, m - 1);
            }
        }
    }
    recurse(k, &mut arr, &mut out);
    out
}

// ----------------------------------------------------------------- tests --

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn pca_on_correlated_pair_matches_hand_solution() {
        // Correlation 0.8 between the columns: eigenvalues 1.8 and 0.2.
        let rows = vec![
            vec![1.0, 1.0],
            vec![2.0, 3.0],
            vec![3.0, 2.0],
            vec![4.0, 4.0],
        ];
        let p = pca(&rows, 2).unwrap();
        assert_abs_diff_eq!(p.explained[0], 0.9, epsilon = 1e-12);
        assert_abs_diff_eq!(p.explained[1], 0.1, epsilon = 1e-12);
        let s = 0.5f64.sqrt();
        assert_abs_diff_eq!(p.components[0][0], s, epsilon = 1e-10);
        assert_abs_diff_eq!(p.components[0][1], s, epsilon = 1e-10);
        // Second component is (1, -1)/sqrt(2) after the sign rule.
        assert_abs_diff_eq!(p.components[1][0], s, epsilon = 1e-10);
        assert_abs_diff_eq!(p.components[1][1], -s, epsilon = 1e-10);
    }

    #[test]
    fn pca_drops_constant_columns() {
        let rows = vec![
            vec![1.0, 7.0, 5.0],
            vec![2.0, 7.0, 4.0],
            vec![3.0, 7.0, 3.0],
        ];
        let p = pca(&rows, 1).unwrap();
        assert_eq!(p.kept_columns, vec![0, 2]);
        assert_eq!(p.components[0].len(), 2);
    }

    #[test]
    fn pca_round_trips_at_full_rank() {
        let rows = vec![
            vec![1.0, 5.0, 2.0],
            vec![2.0, 3.0, 8.0],
            vec![4.0, 4.0, 1.0],
            vec![7.0, 1.0, 3.0],
            vec![5.0, 9.0, 9.0],
        ];
        let p = pca(&rows, 3).unwrap();
        // Reconstruct standardized values: z = coords * components.
        for (i, row) in rows.iter().enumerate() {
            for (jj, &j) in p.kept_columns.iter().enumerate() {
                let z = (row[j] - p.means[jj]) / p.stds[jj];
                let back: f64 = (0..3).map(|c| p.coords[i][c] * p.components[c][jj]).sum();
                assert_abs_diff_eq!(z, back, epsilon = 1e-8);
            }
        }
        // Explained fractions are sorted and sum to 1.
        assert!(p.explained[0] >= p.explained[1] && p.explained[1] >= p.explained[2]);
        assert_abs_diff_eq!(p.explained.iter().sum::<f64>(), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn pca_rejects_uninformative_requests() {
        let rows = vec![vec![1.0, 2.0], vec![3.0, 4.0], vec![5.0, 6.0]];
        assert!(pca(&rows, 3).is_err()); // rank cap is min(n - 1, 2) = 2
        assert!(pca(&rows[..1], 1).is_err());
        assert!(pca(&rows, 0).is_err());
        let constant = vec![vec![1.0], vec![1.0], vec![1.0]];
        assert!(pca(&constant, 1).is_err()); // every column dropped
    }

    #[test]
    fn pca_sign_rule_makes_leading_loadings_positive() {
        let rows = vec![
            vec![-1.0, 2.0],
            vec![-2.0, 4.1],
            vec![-3.0, 5.9],
            vec![-4.0, 8.0],
        ];
        let p = pca(&rows, 1).unwrap();
        let lead = p.components[0]
            .iter()
            .cloned()
            .fold(0.0f64, |a, b| if b.abs() > a.abs() { b } else { a });
        assert!(lead > 0.0);
    }

    #[test]
    fn class_distances_are_symmetric_with_zero_diagonal() {
        use ClassLabel::*;
        let coords = vec![
            vec![0.0, 0.0],
            vec![0.0, 1.0],
            vec![10.0, 0.0],
            vec![10.0, 1.0],
            vec![0.0, 10.0],
        ];
        let labels = vec![Real, Real, ShuffledWords, ShuffledWords, ShuffledParagraphs];
        let t = class_distance_table(&coords, &labels).unwrap();
        for i in 0..3 {
            assert_eq!(t[i][i], 0.0);
            for j in 0..3 {
                assert_eq!(t[i][j], t[j][i]);
            }
        }
        // Real rows {(0,0),(0,1)} vs word-shuffled {(10,0),(10,1)}:
        // distances 10, sqrt(101), sqrt(101), 10.
        let expect = (10.0 + 101f64.sqrt()) / 2.0;
        assert_abs_diff_eq!(t[0][1], expect, epsilon = 1e-12);
        assert!(t[0][2] > 9.0);

        let missing = vec![Real, Real, Real, Real, Real];
        assert!(class_distance_table(&coords, &missing).is_err());
    }

    fn blob(cx: f64, cy: f64, spread: f64, count: usize, offset: usize) -> Vec<Vec<f64>> {
        (0..count)
            .map(|i| {
                let a = ((i + offset) % 7) as f64 / 7.0 - 0.5;
                let b = ((i + offset) % 5) as f64 / 5.0 - 0.5;
                vec![cx + spread * a, cy + spread * b]
            })
            .collect()
    }

    #[test]
    fn kmeans_recovers_separated_blobs() {
        let mut rows = blob(0.0, 0.0, 0.5, 12, 0);
        rows.extend(blob(10.0, 0.0, 0.5, 12, 3));
        rows.extend(blob(0.0, 10.0, 0.5, 12, 5));
        let result = kmeans(&rows, 3, 20, 300, 42).unwrap();
        let truth: Vec<usize> = (0..36).map(|i| i / 12).collect();
        assert_abs_diff_eq!(
            adjusted_rand_index(&result.assignments, &truth).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        // Tight blobs: within-cluster scatter stays below the blob spread.
        assert!(result.wcss < 36.0 * 0.5);
    }

    #[test]
    fn kmeans_is_deterministic_and_validates() {
        let rows = blob(0.0, 0.0, 2.0, 10, 0);
        let a = kmeans(&rows, 2, 5, 100, 7).unwrap();
        let b = kmeans(&rows, 2, 5, 100, 7).unwrap();
        assert_eq!(a.assignments, b.assignments);
        assert_eq!(a.wcss.to_bits(), b.wcss.to_bits());
        assert!(kmeans(&rows, 11, 5, 100, 7).is_err());
        assert!(kmeans(&rows, 0, 5, 100, 7).is_err());
    }

    #[test]
    fn kmeans_seeding_survives_duplicate_rows() {
        // All rows identical: distance weights are all zero, so seeding
        // must fall back to picking unchosen indices.
        let rows = vec![vec![1.0, 1.0]; 6];
        let result = kmeans(&rows, 3, 4, 50, 9).unwrap();
        assert_eq!(result.assignments.len(), 6);
        assert_abs_diff_eq!(result.wcss, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn ari_matches_frozen_cases() {
        // Split one cluster of a two-cluster partition: 4/7.
        let a = vec![0, 0, 1, 1];
        let b = vec![0, 0, 1, 2];
        assert_abs_diff_eq!(adjusted_rand_index(&a, &b).unwrap(), 4.0 / 7.0, epsilon = 1e-12);
        // Maximally discordant pairing of two halves: -1/2.
        let a = vec![0, 0, 1, 1];
        let b = vec![0, 1, 0, 1];
        assert_abs_diff_eq!(adjusted_rand_index(&a, &b).unwrap(), -0.5, epsilon = 1e-12);
    }

    #[test]
    fn ari_degenerate_partitions() {
        // Both all-singletons: identical partitions, score 1.
        let a = vec![0, 1, 2, 3];
        let b = vec![3, 2, 1, 0];
        assert_abs_diff_eq!(adjusted_rand_index(&a, &b).unwrap(), 1.0, epsilon = 1e-12);
        // Both one cluster.
        let a = vec![0, 0, 0];
        assert_abs_diff_eq!(adjusted_rand_index(&a, &a).unwrap(), 1.0, epsilon = 1e-12);
        // One cluster against singletons: no agreement beyond chance.
        let a = vec![0, 0, 0];
        let b = vec![0, 1, 2];
        assert_abs_diff_eq!(adjusted_rand_index(&a, &b).unwrap(), 0.0, epsilon = 1e-12);
        assert!(adjusted_rand_index(&[0], &[0, 1]).is_err());
        assert!(adjusted_rand_index(&[], &[]).is_err());
    }

    #[test]
    fn accuracy_finds_the_best_relabeling() {
        assert_abs_diff_eq!(
            clustering_accuracy(&[0, 0, 1, 2], &[1, 1, 0, 2], 3).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            clustering_accuracy(&[0, 1, 2, 0], &[0, 0, 2, 2], 3).unwrap(),
            0.5,
            epsilon = 1e-12
        );
        assert!(clustering_accuracy(&[0, 3], &[0, 1], 3).is_err());
        assert!(clustering_accuracy(&[0], &[0, 1], 2).is_err());
    }

    proptest! {
        #[test]
        fn ari_is_one_on_any_relabeling(labels in proptest::collection::vec(0usize..4, 1..40)) {
            let renamed: Vec<usize> = labels.iter().map(|&l| 3 - l).collect();
            let score = adjusted_rand_index(&labels, &renamed).unwrap();
            prop_assert!((score - 1.0).abs() < 1e-9);
        }

        #[test]
        fn ari_is_symmetric(
            a in proptest::collection::vec(0usize..3, 1..30),
            bs in proptest::collection::vec(0usize..3, 1..30),
        ) {
            let n = a.len().min(bs.len());
            let x = adjusted_rand_index(&a[..n], &bs[..n]).unwrap();
            let y = adjusted_rand_index(&bs[..n], &a[..n]).unwrap();
            prop_assert!((x - y).abs() < 1e-9);
        }

        #[test]
        fn accuracy_is_at_least_the_largest_class_share(
            truth in proptest::collection::vec(0usize..3, 3..30),
        ) {
            // Assigning everything to one cluster scores the majority share;
            // the best relabeling can never do worse.
            let assignments = vec![0usize; truth.len()];
            let acc = clustering_accuracy(&assignments, &truth, 3).unwrap();
            let mut counts = [0usize; 3];
            for &t in &truth { counts[t] += 1; }
            let majority = *counts.iter().max().unwrap() as f64 / truth.len() as f64;
            prop_assert!(acc >= majority - 1e-12);
        }
    }
}
