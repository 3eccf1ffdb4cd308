//! Force-directed placement and SVG rendering.
//!
//! The layout balances spring attraction along edges against pairwise
//! repulsion, with a linearly cooling step cap. Node updates read only the
//! previous iteration's positions, so the computation parallelizes without
//! affecting the result. Positions are finally shifted, and shrunk if
//! needed, into the unit square; natural scale is kept for small layouts.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::util::seeded_rng;
use rand::Rng;

const INITIAL_TEMPERATURE: f64 = 0.1;
const MIN_DISTANCE: f64 = 1e-9;

/// Spring layout of an undirected graph. `edges` hold node indices below
/// `n`; duplicate and reversed entries are tolerated (forces just add).
/// The same `(n, edges, iterations, seed)` always produces identical
/// positions, bit for bit.
pub fn fr_layout(
    n: usize,
    edges: &[(u32, u32)],
    iterations: usize,
    seed: u64,
) -> Result<Vec<(f64, f64)>> {
    if iterations == 0 {
        return Err(Error::InvalidParameter("layout needs at least 1 iteration".into()));
    }
    if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a as usize >= n || b as usize >= n) {
        return Err(Error::InvalidParameter(format!(
            "edge ({a}, {b}) exceeds node count {n}"
        )));
    }
    if n == 0 {
        return Ok(Vec::new());
    }

    let k = (1.0 / n as f64).sqrt();
    let mut rng = seeded_rng(seed);
    let mut pos: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng.random_range(0.0..1.0), rng.random_range(0.0..1.0)))
        .collect();

    let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); n];
    for &(a, b) in edges {
        if a != b {
            adjacency[a as usize].push(b);
            adjacency[b as usize].push(a);
        }
    }

    for it in 0..iterations {
        let t = INITIAL_TEMPERATURE * (1.0 - it as f64 / iterations as f64);
        let next: Vec<(f64, f64)> = (0..n)
            .into_par_iter()
            .map(|i| {
                let (xi, yi) = pos[i];
                let mut dx = 0.0;
                let mut dy = 0.0;
                for j in 0..n {
                    if j == i {
                        continue;
                    }
                    let (ux, uy, d) = direction(pos[i], pos[j], i < j);
                    let f = k * k / d;
                    dx += ux * f;
                    dy += uy * f;
                }
                for &j in &adjacency[i] {
                    let (ux, uy, d) = direction(pos[i], pos[j as usize], i < j as usize);
                    let f = d * d / k;
                    dx -= ux * f;
                    dy -= uy * f;
                }
                let len = (dx * dx + dy * dy).sqrt();
                if len > 0.0 {
                    let step = len.min(t) / len;
                    (xi + dx * step, yi + dy * step)
                } else {
                    (xi, yi)
                }
            })
            .collect();
        pos = next;
    }

    Ok(fit_to_unit_square(pos))
}

/// Unit vector from `b` toward `a` and the distance, with a deterministic
/// tie-break when the points coincide: the lower index pushes +x, the
/// higher -x, so coincident nodes separate instead of drifting together.
fn direction(a: (f64, f64), b: (f64, f64), lower_index: bool) -> (f64, f64, f64) {
    let dx = a.0 - b.0;
    let dy = a.1 - b.1;
    let d = (dx * dx + dy * dy).sqrt();
    if d < MIN_DISTANCE {
        let sign = if lower_index { 1.0 } else { -1.0 };
        (sign, 0.0, MIN_DISTANCE)
    } else {
        (dx / d, dy / d, d)
    }
}

/// Translates the bounding box to the origin and, only when it exceeds the
/// unit square, shrinks it uniformly to fit; the result is centered.
fn fit_to_unit_square(pos: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    let min_x = pos.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let max_x = pos.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let min_y = pos.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let max_y = pos.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let extent = (max_x - min_x).max(max_y - min_y);
    let scale = if extent > 1.0 { 1.0 / extent } else { 1.0 };
    let w = (max_x - min_x) * scale;
    let h = (max_y - min_y) * scale;
    pos.into_iter()
        .map(|(x, y)| {
            (
                (x - min_x) * scale + (1.0 - w) / 2.0,
                (y - min_y) * scale + (1.0 - h) / 2.0,
            )
        })
        .collect()
}

/// Projects positions onto the principal axis of their 2D spread; used to
/// compare layout order against node order.
pub fn principal_axis_projection(positions: &[(f64, f64)]) -> Vec<f64> {
    let n = positions.len();
    if n == 0 {
        return Vec::new();
    }
    let mx = positions.iter().map(|p| p.0).sum::<f64>() / n as f64;
    let my = positions.iter().map(|p| p.1).sum::<f64>() / n as f64;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    let mut sxy = 0.0;
    for &(x, y) in positions {
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
        sxy += (x - mx) * (y - my);
    }
    // Leading eigenvector of [[sxx, sxy], [sxy, syy]] in closed form.
    let lambda = 0.5 * (sxx + syy) + (0.25 * (sxx - syy) * (sxx - syy) + sxy * sxy).sqrt();
    let (mut vx, mut vy) = if sxy.abs() > 1e-15 {
        (sxy, lambda - sxx)
    } else if sxx >= syy {
        (1.0, 0.0)
    } else {
        (0.0, 1.0)
    };
    let norm = (vx * vx + vy * vy).sqrt();
    if norm > 0.0 {
        vx /= norm;
        vy /= norm;
    }
    positions
        .iter()
        .map(|&(x, y)| (x - mx) * vx + (y - my) * vy)
        .collect()
}

// ------------------------------------------------------------------- svg --

/// Node color rule for [`render_svg`].
pub enum Coloring<'a> {
    /// Gradient along node index: start blue, end orange.
    Position,
    /// One color per chapter label, with a legend; one label per node.
    Chapter(&'a [String]),
    /// Gradient over a numeric value per node; the caption names it.
    Values { values: &'a [f64], caption: &'a str },
}

const VIEW: f64 = 1000.0;
const MARGIN: f64 = 40.0;

const GRADIENT_LOW: (u8, u8, u8) = (31, 119, 180); // blue
const GRADIENT_HIGH: (u8, u8, u8) = (255, 127, 14); // orange

const PALETTE: [&str; 12] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
];

fn gradient(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let mix = |a: u8, b: u8| (a as f64 + t * (b as f64 - a as f64)).round() as u8;
    format!(
        "#{:02x}{:02x}{:02x}",
        mix(GRADIENT_LOW.0, GRADIENT_HIGH.0),
        mix(GRADIENT_LOW.1, GRADIENT_HIGH.1),
        mix(GRADIENT_LOW.2, GRADIENT_HIGH.2),
    )
}

use crate::util::xml_escape;

/// Renders positions and edges to a standalone SVG document. Positions are
/// expected in the unit square; the drawing area is 1000x1000 with a 40
/// pixel margin. Output is deterministic for identical inputs.
pub fn render_svg(
    positions: &[(f64, f64)],
    edges: &[(u32, u32)],
    coloring: &Coloring<'_>,
    title: &str,
) -> Result<String> {
    let n = positions.len();
    if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a as usize >= n || b as usize >= n) {
        return Err(Error::InvalidParameter(format!(
            "edge ({a}, {b}) exceeds node count {n}"
        )));
    }
    match coloring {
        Coloring::Chapter(labels) if labels.len() != n => {
            return Err(Error::LabelMismatch(format!(
                "{} chapter labels for {} nodes",
                labels.len(),
                n
            )));
        }
        Coloring::Values { values, .. } if values.len() != n => {
            return Err(Error::LabelMismatch(format!(
                "{} values for {} nodes",
                values.len(),
                n
            )));
        }
        _ => {}
    }

    let px = |p: f64| MARGIN + p * (VIEW - 2.0 * MARGIN);
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{VIEW}\" height=\"{VIEW}\" viewBox=\"0 0 {VIEW} {VIEW}\">\n"
    ));
    svg.push_str("<rect width=\"1000\" height=\"1000\" fill=\"#ffffff\"/>\n");
    svg.push_str(&format!(
        "<text x=\"20\" y=\"26\" font-family=\"sans-serif\" font-size=\"18\">{}</text>\n",
        xml_escape(title)
    ));

    svg.push_str("<g stroke=\"#999999\" stroke-opacity=\"0.35\" stroke-width=\"0.7\">\n");
    for &(a, b) in edges {
        let pa = positions[a as usize];
        let pb = positions[b as usize];
        svg.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"/>\n",
            px(pa.0),
            px(pa.1),
            px(pb.0),
            px(pb.1)
        ));
    }
    svg.push_str("</g>\n");

    let colors: Vec<String> = match coloring {
        Coloring::Position => (0..n)
            .map(|i| gradient(if n > 1 { i as f64 / (n - 1) as f64 } else { 0.0 }))
            .collect(),
        Coloring::Chapter(labels) => {
            let mut distinct: Vec<&str> = Vec::new();
            for l in labels.iter() {
                if !distinct.contains(&l.as_str()) {
                    distinct.push(l);
                }
            }
            labels
                .iter()
                .map(|l| {
                    let ix = distinct.iter().position(|d| d == l).expect("label seen");
                    PALETTE[ix % PALETTE.len()].to_string()
                })
                .collect()
        }
        Coloring::Values { values, .. } => {
            let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let span = hi - lo;
            values
                .iter()
                .map(|&v| gradient(if span > 0.0 { (v - lo) / span } else { 0.5 }))
                .collect()
        }
    };

    svg.push_str("<g stroke=\"#333333\" stroke-width=\"0.4\">\n");
    for (i, &(x, y)) in positions.iter().enumerate() {
        svg.push_str(&format!(
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"{}\"/>\n",
            px(x),
            px(y),
            colors[i]
        ));
    }
    svg.push_str("</g>\n");

    // Legend in the top-right corner.
    svg.push_str("<g font-family=\"sans-serif\" font-size=\"12\">\n");
    let legend_x = VIEW - 190.0;
    match coloring {
        Coloring::Position => {
            for (row, (label, t)) in [("first node", 0.0), ("last node", 1.0)].iter().enumerate() {
                let y = 40.0 + row as f64 * 18.0;
                svg.push_str(&format!(
                    "<g class=\"legend-entry\"><rect x=\"{legend_x}\" y=\"{y}\" width=\"12\" height=\"12\" fill=\"{}\"/><text x=\"{}\" y=\"{}\">{}</text></g>\n",
                    gradient(*t),
                    legend_x + 18.0,
                    y + 10.0,
                    label
                ));
            }
        }
        Coloring::Chapter(labels) => {
            let mut distinct: Vec<&str> = Vec::new();
            for l in labels.iter() {
                if !distinct.contains(&l.as_str()) {
                    distinct.push(l);
                }
            }
            for (row, label) in distinct.iter().enumerate() {
                let y = 40.0 + row as f64 * 18.0;
                svg.push_str(&format!(
                    "<g class=\"legend-entry\"><rect x=\"{legend_x}\" y=\"{y}\" width=\"12\" height=\"12\" fill=\"{}\"/><text x=\"{}\" y=\"{}\">{}</text></g>\n",
                    PALETTE[row % PALETTE.len()],
                    legend_x + 18.0,
                    y + 10.0,
                    xml_escape(label)
                ));
            }
        }
        Coloring::Values { values, caption } => {
            let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            for (row, (label, t)) in
                [(format!("{} = {:.3}", caption, lo), 0.0), (format!("{} = {:.3}", caption, hi), 1.0)]
                    .iter()
                    .enumerate()
            {
                let y = 40.0 + row as f64 * 18.0;
                svg.push_str(&format!(
                    "<g class=\"legend-entry\"><rect x=\"{legend_x}\" y=\"{y}\" width=\"12\" height=\"12\" fill=\"{}\"/><text x=\"{}\" y=\"{}\">{}</text></g>\n",
                    gradient(*t),
                    legend_x + 18.0,
                    y + 10.0,
                    xml_escape(label)
                ));
            }
        }
    }
    svg.push_str("</g>\n</svg>\n");
    Ok(svg)
}

// ----------------------------------------------------------------- tests --

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::spearman;

    fn path_edges(n: u32) -> Vec<(u32, u32)> {
        (0..n - 1).map(|i| (i, i + 1)).collect()
    }

    #[test]
    fn linked_pair_settles_near_the_natural_length() {
        let pos = fr_layout(2, &[(0, 1)], 300, 17).unwrap();
        let d = ((pos[0].0 - pos[1].0).powi(2) + (pos[0].1 - pos[1].1).powi(2)).sqrt();
        let k = (1.0f64 / 2.0).sqrt();
        // Attraction and repulsion balance at distance k.
        assert!(d > 0.5 * k && d < 2.0 * k, "distance {d} vs natural {k}");
    }

    #[test]
    fn chain_layout_follows_chain_order() {
        let n = 40;
        let pos = fr_layout(n, &path_edges(n as u32), 600, 11).unwrap();
        let projected = principal_axis_projection(&pos);
        let index: Vec<f64> = (0..n).map(|i| i as f64).collect();
        let rho = spearman(&projected, &index);
        assert!(rho.abs() > 0.9, "layout order correlation {rho}");
    }

    #[test]
    fn positions_stay_in_the_unit_square_and_rerun_identically() {
        let edges: Vec<(u32, u32)> = (0..30u32)
            .flat_map(|i| ((i + 1)..30).filter(move |j| (i + j) % 5 == 0).map(move |j| (i, j)))
            .collect();
        let a = fr_layout(30, &edges, 150, 3).unwrap();
        let b = fr_layout(30, &edges, 150, 3).unwrap();
        for (pa, pb) in a.iter().zip(&b) {
            assert_eq!(pa.0.to_bits(), pb.0.to_bits());
            assert_eq!(pa.1.to_bits(), pb.1.to_bits());
            assert!((0.0..=1.0).contains(&pa.0) && (0.0..=1.0).contains(&pa.1));
        }
    }

    #[test]
    fn lonely_and_coincident_nodes_are_handled() {
        let single = fr_layout(1, &[], 50, 5).unwrap();
        assert_eq!(single.len(), 1);
        assert!(single[0].0.is_finite());
        // Two isolated nodes repel even if they start on top of each other;
        // any seed gives distinct random starts, so force a tiny graph and
        // just check the result is finite and separated.
        let pair = fr_layout(2, &[], 50, 5).unwrap();
        let d = ((pair[0].0 - pair[1].0).powi(2) + (pair[0].1 - pair[1].1).powi(2)).sqrt();
        assert!(d > 1e-6);
    }

    #[test]
    fn rejects_bad_edges_and_zero_iterations() {
        assert!(fr_layout(2, &[(0, 5)], 10, 1).is_err());
        assert!(fr_layout(2, &[], 0, 1).is_err());
    }

    #[test]
    fn svg_draws_every_node_inside_the_frame() {
        let n = 24;
        let pos = fr_layout(n, &path_edges(n as u32), 100, 2).unwrap();
        let chapters: Vec<String> = (0..n).map(|i| format!("CHAPTER {}", i / 2 + 1)).collect();
        let svg = render_svg(&pos, &path_edges(n as u32), &Coloring::Chapter(&chapters), "chain").unwrap();
        assert_eq!(svg.matches("<circle").count(), n);
        assert_eq!(svg.matches("<line").count(), n - 1);
        assert_eq!(svg.matches("legend-entry").count(), 12);
        for cap in svg.split("cx=\"").skip(1) {
            let v: f64 = cap.split('"').next().unwrap().parse().unwrap();
            assert!((MARGIN..=VIEW - MARGIN).contains(&v));
        }
    }

    #[test]
    fn svg_coloring_variants_and_validation() {
        let pos = vec![(0.0, 0.0), (0.5, 0.5), (1.0, 1.0)];
        let svg = render_svg(&pos, &[(0, 1)], &Coloring::Position, "t").unwrap();
        assert!(svg.contains("#1f77b4"));
        assert!(svg.contains("first node"));

        let values = vec![0.0, 0.5, 1.0];
        let svg = render_svg(
            &pos,
            &[],
            &Coloring::Values { values: &values, caption: "clustering" },
            "t",
        )
        .unwrap();
        assert!(svg.contains("clustering = 0.000"));
        assert!(svg.contains("clustering = 1.000"));

        let short: Vec<String> = vec!["a".into()];
        assert!(render_svg(&pos, &[], &Coloring::Chapter(&short), "t").is_err());
        assert!(render_svg(&pos, &[(0, 9)], &Coloring::Position, "t").is_err());
        // Titles are escaped, not injected.
        let svg = render_svg(&pos, &[], &Coloring::Position, "a<b&c").unwrap();
        assert!(svg.contains("a&lt;b&amp;c"));
    }
}
