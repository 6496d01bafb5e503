use std::fmt::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::TilingPatch;
use crate::error::Result;
use crate::exec::Strategy;
use crate::json;

#[derive(Debug, Clone, PartialEq)]
pub struct SvgOptions {
    /// Pixels per unit length.
    pub scale: f64,
    /// Blank border in pixels.
    pub margin: f64,
    pub overlay: bool,
    pub stroke_width: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            scale: 80.0,
            margin: 10.0,
            overlay: false,
            stroke_width: 1.0,
        }
    }
}

fn hue(label: i64) -> u64 {
    ((label as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 32) % 360
}

fn fill(label: i64) -> String {
    format!("hsl({},65%,62%)", hue(label))
}

/// Render the patch, flipping `y` so counter-clockwise stays counter-clockwise.
pub fn export_svg(patch: &TilingPatch, options: &SvgOptions) -> String {
    let cells = patch.cells(Strategy::default());
    let lines: Vec<Vec<Complex64>> = match (&patch.zone_polylines, options.overlay) {
        (Some(base), true) => patch
            .copies
            .iter()
            .flat_map(|copy| {
                base.iter()
                    .map(move |line| line.iter().map(|z| z + copy.translate).collect())
            })
            .collect(),
        _ => Vec::new(),
    };

    let all = cells
        .iter()
        .flat_map(|c| c.corners.iter())
        .chain(lines.iter().flatten());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for z in all {
        x0 = x0.min(z.re);
        x1 = x1.max(z.re);
        y0 = y0.min(z.im);
        y1 = y1.max(z.im);
    }
    if x0 > x1 {
        (x0, x1, y0, y1) = (0.0, 0.0, 0.0, 0.0);
    }
    let s = options.scale;
    let m = options.margin;
    let px = |z: &Complex64| ((z.re - x0) * s + m, (y1 - z.im) * s + m);
    let width = (x1 - x0) * s + 2.0 * m;
    let height = (y1 - y0) * s + 2.0 * m;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.2}" height="{height:.2}" viewBox="0 0 {width:.2} {height:.2}">"#
    );
    for cell in &cells {
        let pts: Vec<String> = cell
            .corners
            .iter()
            .map(|z| {
                let (x, y) = px(z);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            out,
            r#"<polygon points="{}" fill="{}" stroke="black" stroke-width="{}"/>"#,
            pts.join(" "),
            fill(cell.label),
            options.stroke_width
        );
    }
    for line in &lines {
        let pts: Vec<String> = line
            .iter()
            .map(|z| {
                let (x, y) = px(z);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline points="{}" fill="none" stroke="black" stroke-width="{}"/>"#,
            pts.join(" "),
            options.stroke_width * 1.5
        );
    }
    out.push_str("</svg>\n");
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellJson {
    pub label: i64,
    pub copy: [i64; 2],
    pub center: [f64; 2],
    pub corners: [[f64; 2]; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatchJson {
    pub lattice: [[f64; 2]; 2],
    pub cells: Vec<CellJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polylines: Option<Vec<Vec<[f64; 2]>>>,
}

impl PatchJson {
    pub fn from_patch(patch: &TilingPatch) -> Self {
        let cells = patch
            .copies
            .iter()
            .flat_map(|copy| {
                patch.domain.parallelograms.iter().map(move |cell| {
                    let placed = cell.translated(copy.translate);
                    CellJson {
                        label: placed.label,
                        copy: [copy.p, copy.q],
                        center: json::pair(placed.center),
                        corners: placed.corners.map(json::pair),
                    }
                })
            })
            .collect();
        PatchJson {
            lattice: [
                json::pair(patch.domain.lattice.a),
                json::pair(patch.domain.lattice.b),
            ],
            cells,
            polylines: patch
                .zone_polylines
                .as_ref()
                .map(|ls| ls.iter().map(|l| json::pairs(l)).collect()),
        }
    }
}

pub fn export_json(patch: &TilingPatch) -> String {
    json::to_string(&PatchJson::from_patch(patch))
}

pub fn import_json(text: &str) -> Result<PatchJson> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ccs::parse_curve_system;
    use crate::geometry::EdgeData;
    use crate::tiler::{develop, replicate};

    #[test]
    fn one_square_one_polygon() {
        let s = parse_curve_system("1\n-1\n").unwrap();
        let fd = develop(
            &s,
            &EdgeData::new(vec![Complex64::new(1., 0.), Complex64::i()]).unwrap(),
        )
        .unwrap();
        let patch = replicate(&fd, 0..1, 0..1).unwrap();
        let svg = export_svg(&patch, &SvgOptions::default());
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert_eq!(svg.matches("<polyline").count(), 0);
        let back = import_json(&export_json(&patch)).unwrap();
        assert_eq!(back, PatchJson::from_patch(&patch));
        assert_eq!(back.cells[0].corners[0], [-0.5, -0.5]);
    }

    #[test]
    fn palette_is_deterministic() {
        assert_eq!(fill(3), fill(3));
        assert!(hue(7) < 360);
    }
}
