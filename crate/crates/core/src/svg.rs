//! SVG pictures of the crosscap model under stereographic projection from the
//! south pole. Crosscaps are drawn as hatched discs; a curve is broken where
//! it passes through one (entering at a point, leaving at the antipode).

use std::fmt::Write as _;

use crate::error::Result;
use crate::geometry::Vec3;
use crate::model::Model;

const SIZE: f64 = 640.0;
const SCALE: f64 = 220.0;
/// Points this close to the projection pole are clipped.
const POLE_CLIP: f64 = 0.02;
const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"];

fn project(p: Vec3) -> Option<(f64, f64)> {
    let d = 1.0 + p[2];
    if d < POLE_CLIP {
        return None;
    }
    Some((SIZE / 2.0 + SCALE * p[0] / d, SIZE / 2.0 - SCALE * p[1] / d))
}

fn polyline(points: &[Vec3]) -> Vec<String> {
    // Split wherever a point is clipped.
    let mut runs = Vec::new();
    let mut cur = String::new();
    for &p in points {
        match project(p) {
            Some((x, y)) => {
                let _ = write!(cur, "{}{x:.2},{y:.2}", if cur.is_empty() { "" } else { " " });
            }
            None if !cur.is_empty() => runs.push(std::mem::take(&mut cur)),
            None => {}
        }
    }
    if !cur.is_empty() {
        runs.push(cur);
    }
    runs
}

/// Accepts `a1` for `a_1` and `delta2` for `delta_2`.
pub fn canonical_curve_name(name: &str) -> String {
    match name.find(|c: char| c.is_ascii_digit()) {
        Some(i) if i > 0 && !name.contains('_') && name != "b0" => format!("{}_{}", &name[..i], &name[i..]),
        _ => name.to_string(),
    }
}

/// Renders the model with the named curves drawn on it.
pub fn render(model: &Model, curves: &[String]) -> Result<String> {
    let g = model.genus();
    let data = curves
        .iter()
        .map(|n| model.standard_curve(&canonical_curve_name(n)))
        .collect::<Result<Vec<_>>>()?;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}" font-family="sans-serif">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r##"<defs><pattern id="hatch" width="5" height="5" patternUnits="userSpaceOnUse" patternTransform="rotate(45)"><line x1="0" y1="0" x2="0" y2="5" stroke="#888" stroke-width="1.5"/></pattern></defs>"##);
    let _ = writeln!(
        s,
        r##"<circle cx="{c}" cy="{c}" r="{SCALE}" fill="none" stroke="#ccc" stroke-dasharray="4 4"/>"##,
        c = SIZE / 2.0
    );

    let geo = &model.geometry;
    for k in 0..g {
        let rim: Vec<Vec3> =
            (0..=48).map(|i| geo.hole_point(k, geo.rho, i as f64 * std::f64::consts::TAU / 48.0)).collect();
        for run in polyline(&rim) {
            let _ = writeln!(s, r##"<polygon points="{run}" fill="url(#hatch)" stroke="#444"/>"##);
        }
        if let Some((x, y)) = project(geo.hole_point(k, 2.2 * geo.rho, 0.0)) {
            let _ = writeln!(s, r#"<text x="{x:.2}" y="{y:.2}" font-size="13" text-anchor="middle" dominant-baseline="middle">{}</text>"#, k + 1);
        }
    }

    for (i, c) in data.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        let _ = writeln!(s, r#"<g id="curve-{}" stroke="{colour}" fill="none" stroke-width="2">"#, c.name);
        if let Some(path) = &c.path {
            for piece in &path.pieces {
                for run in polyline(piece) {
                    let _ = writeln!(s, r#"<polyline points="{run}"/>"#);
                }
            }
        }
        let _ = writeln!(s, "</g>");
        let _ = writeln!(
            s,
            r#"<text x="12" y="{:.0}" font-size="13" fill="{colour}">{} ({})</text>"#,
            20.0 + 16.0 * i as f64,
            c.name,
            if c.two_sided { "two-sided" } else { "one-sided" }
        );
    }
    let _ = writeln!(s, "</svg>");
    Ok(s)
}
