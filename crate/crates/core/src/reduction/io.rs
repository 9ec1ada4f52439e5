//! JSON, CSV and SVG output of reduced solutions.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::grassmann::Supernumber;

use super::profile::SLOTS;
use super::ReducedSolution;

pub fn to_json(r: &ReducedSolution) -> Result<String> {
    serde_json::to_string_pretty(r)
        .map_err(|e| Error::Configuration(format!("cannot serialise solution: {e}")))
}

/// Parses a solution written by [`to_json`] and re-embeds its literals in
/// the declared ring.
pub fn from_json(text: &str) -> Result<ReducedSolution> {
    let r: ReducedSolution = serde_json::from_str(text)
        .map_err(|e| Error::Configuration(format!("invalid solution JSON: {e}")))?;
    r.normalize()
}

/// Grassmann masks occurring anywhere in a sampled slot; the body (mask 0)
/// is always listed for even slots.
fn masks(grid: &[Supernumber], even: bool) -> Vec<u16> {
    let mut set: BTreeSet<u16> = grid
        .iter()
        .flat_map(|v| v.terms().iter().map(|(m, _)| *m))
        .collect();
    if even {
        set.insert(0);
    }
    set.into_iter().collect()
}

/// One row per node: `sigma`, then `<slot>_<mask>` for every Grassmann
/// monomial that occurs in that slot.
pub fn to_csv(r: &ReducedSolution) -> Result<String> {
    let columns: Vec<(usize, u16)> = r
        .slots()
        .iter()
        .enumerate()
        .flat_map(|(k, grid)| {
            masks(grid, k == 0 || k == 3)
                .into_iter()
                .map(move |m| (k, m))
        })
        .collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Error::Configuration(format!("CSV output failed: {e}"));
    let mut header = vec!["sigma".to_string()];
    header.extend(columns.iter().map(|(k, m)| format!("{}_{m}", SLOTS[*k])));
    w.write_record(&header).map_err(err)?;
    let slots = r.slots();
    for i in 0..r.len() {
        let mut row = vec![format!("{:e}", r.sigma[i])];
        row.extend(
            columns
                .iter()
                .map(|(k, m)| format!("{:e}", slots[*k][i].coeff(*m))),
        );
        w.write_record(&row).map_err(err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Configuration(format!("CSV output failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Configuration(e.to_string()))
}

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

/// Line plot of every Grassmann coefficient of every slot against σ: the
/// bodies of `α` and `β`, then one curve per nilpotent monomial.
pub fn to_svg(r: &ReducedSolution) -> String {
    let (w, h, m) = (900.0, 520.0, 60.0);
    let slots = r.slots();
    let mut curves: Vec<(String, Vec<f64>)> = Vec::new();
    for (k, grid) in slots.iter().enumerate() {
        for mask in masks(grid, k == 0 || k == 3) {
            let label = if mask == 0 {
                format!("body {}", SLOTS[k])
            } else {
                format!("{} [{mask}]", SLOTS[k])
            };
            curves.push((label, grid.iter().map(|v| v.coeff(mask)).collect()));
        }
    }
    let (x0, x1) = (r.grid.min, r.grid.max);
    let (mut y0, mut y1) = curves
        .iter()
        .flat_map(|(_, v)| v.iter().copied())
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
            (a.min(v), b.max(v))
        });
    if !(y0.is_finite() && y1.is_finite()) || y1 - y0 < 1e-12 {
        y0 = y0.min(0.0) - 1.0;
        y1 = y1.max(0.0) + 1.0;
    }
    let px = |x: f64| m + (x - x0) / (x1 - x0) * (w - 2.0 * m);
    let py = |y: f64| h - m - (y - y0) / (y1 - y0) * (h - 2.0 * m);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{m}" y="{m}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        w - 2.0 * m,
        h - 2.0 * m
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">σ  ({})</text>"#,
        w / 2.0,
        h - 20.0,
        r.subalgebra
    );
    for (x, anchor) in [(x0, "start"), (x1, "end")] {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="{anchor}">{x}</text>"#,
            px(x),
            h - m + 16.0
        );
    }
    for y in [y0, y1] {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="end">{y:.3e}</text>"#,
            m - 4.0,
            py(y) + 4.0
        );
    }
    for (c, (label, values)) in curves.iter().enumerate() {
        let colour = PALETTE[c % PALETTE.len()];
        let points: Vec<String> = r
            .sigma
            .iter()
            .zip(values)
            .filter(|(_, v)| v.is_finite())
            .map(|(x, v)| format!("{:.2},{:.2}", px(*x), py(*v)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{}"/>"#,
            points.join(" ")
        );
        let ly = m + 16.0 * (c as f64 + 1.0);
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{ly}" fill="{colour}">{label}</text>"#,
            w - m - 150.0
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::{solve_s4, OddInitial, SigmaGrid};

    fn sample() -> ReducedSolution {
        let n = 4;
        let c0 = Supernumber::monomial(n, 0b0011, 0.5);
        let g = SigmaGrid::new(-1.0, 1.0, 21).unwrap();
        solve_s4(
            1.0,
            &c0,
            None,
            &Supernumber::scalar(n, 0.3),
            &Supernumber::zero(n),
            OddInitial::Auto,
            g,
        )
        .unwrap()
    }

    #[test]
    fn json_round_trip_keeps_the_ring() {
        let r = sample();
        let back = from_json(&to_json(&r).unwrap()).unwrap();
        assert_eq!(back.generators, 4);
        assert_eq!(back.alpha[3].generators(), 4);
        assert_eq!(back.alpha, r.alpha);
    }

    #[test]
    fn csv_has_per_monomial_columns() {
        let text = to_csv(&sample()).unwrap();
        let header = text.lines().next().unwrap();
        assert!(header.starts_with("sigma,alpha_0,alpha_3"));
        assert!(header.contains("eta_1") && header.contains("beta_0"));
        assert_eq!(text.lines().count(), 22);
    }

    #[test]
    fn svg_lists_every_curve() {
        let svg = to_svg(&sample());
        assert!(
            svg.contains("body alpha") && svg.contains("alpha [3]") && svg.contains("body beta")
        );
        assert!(svg.trim_end().ends_with("</svg>"));
    }
}
