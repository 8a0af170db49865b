use std::fmt::Write;

use crate::record::{Bundle, StateRecord};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 48.0;

fn colour(b: Bundle) -> &'static str {
    match b {
        Bundle::Separable => "#d62728",
        Bundle::Q1 => "#9ecae1",
        Bundle::Q2 => "#4292c6",
        Bundle::Q3 => "#2171b5",
        Bundle::Q4 => "#08306b",
    }
}

/// Minimal static scatter of column `y` against column `x`, coloured by bundle.
pub fn scatter(records: &[StateRecord], x: &str, y: &str, title: &str) -> String {
    let pts: Vec<(f64, f64, Bundle)> = records
        .iter()
        .filter_map(|r| Some((r.cell(x)?.as_f64()?, r.cell(y)?.as_f64()?, r.bundle)))
        .collect();
    let range = |vals: &mut dyn Iterator<Item = f64>| {
        let (lo, hi) = vals.fold((0.0f64, 0.0f64), |(lo, hi), v| (lo.min(v), hi.max(v)));
        if hi > lo { (lo, hi) } else { (lo, lo + 1.0) }
    };
    let (x0, x1) = range(&mut pts.iter().map(|p| p.0));
    let (y0, y1) = range(&mut pts.iter().map(|p| p.1));
    let span = SIZE - 2.0 * MARGIN;
    let px = |v: f64| MARGIN + (v - x0) / (x1 - x0) * span;
    let py = |v: f64| SIZE - MARGIN - (v - y0) / (y1 - y0) * span;

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" font-family="sans-serif" font-size="12">"#);
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{span}" height="{span}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(s, r#"<text x="{}" y="20" text-anchor="middle">{title}</text>"#, SIZE / 2.0);
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{x}</text>"#, SIZE / 2.0, SIZE - 12.0);
    let _ = writeln!(s, r#"<text x="14" y="{}" transform="rotate(-90 14 {})" text-anchor="middle">{y}</text>"#, SIZE / 2.0, SIZE / 2.0);
    for (v, anchor) in [(x0, "start"), (x1, "end")] {
        let _ = writeln!(s, r#"<text x="{:.1}" y="{}" text-anchor="{anchor}">{v:.3}</text>"#, px(v), SIZE - MARGIN + 14.0);
    }
    for v in [y0, y1] {
        let _ = writeln!(s, r#"<text x="{}" y="{:.1}" text-anchor="end">{v:.3}</text>"#, MARGIN - 4.0, py(v) + 4.0);
    }
    for (a, b, bundle) in &pts {
        let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="1.2" fill="{}"/>"#, px(*a), py(*b), colour(*bundle));
    }
    s.push_str("</svg>\n");
    s
}
