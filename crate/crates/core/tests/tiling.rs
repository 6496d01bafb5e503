mod common;

use common::*;
use num_complex::Complex64;
use zonetile::geometry::{canonical_edge_data, det, zone_vectors};
use zonetile::homology::intersection_matrix;
use zonetile::tiler::{
    develop, export_json, export_svg, import_json, replicate, zone_polyline, PatchJson, SvgOptions,
};
use zonetile::{EdgeData, Strategy};

fn square_domain() -> zonetile::FundamentalDomain {
    let e = EdgeData::new(vec![Complex64::new(1.0, 0.0), Complex64::i()]).unwrap();
    develop(&sys(SQUARE), &e).unwrap()
}

#[test]
fn square_lattice_and_area() {
    let fd = square_domain();
    assert!((fd.lattice.a - Complex64::i()).norm() < 1e-12);
    assert!((fd.lattice.b - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
    assert!((fd.total_area - 1.0).abs() < 1e-12);
}

#[test]
fn two_by_two_squares_tile_without_overlap() {
    let patch = replicate(&square_domain(), 0..2, 0..2).unwrap();
    let cells = patch.cells(Strategy::Sequential);
    assert_eq!(cells.len(), 4);
    // unit squares with distinct lattice-integral centers never overlap
    for (i, a) in cells.iter().enumerate() {
        for b in &cells[i + 1..] {
            let d = a.center - b.center;
            assert!(d.re.abs() >= 1.0 - 1e-9 || d.im.abs() >= 1.0 - 1e-9);
        }
    }
    let area: f64 = cells.iter().map(|c| c.signed_area()).sum();
    assert!((area - 4.0).abs() < 1e-12);
}

#[test]
fn six_cell_patches() {
    let s = sys(SIX);
    let e = canonical_edge_data(&s).unwrap();
    let fd = develop(&s, &e).unwrap();
    let patch = replicate(&fd, 0..3, 0..3).unwrap();
    assert_eq!(patch.cell_count(), 54);
    assert_eq!(patch.cells(Strategy::Parallel).len(), 54);

    let small = replicate(&fd, 0..2, 0..2).unwrap().with_overlay();
    let svg = export_svg(
        &small,
        &SvgOptions {
            overlay: true,
            ..SvgOptions::default()
        },
    );
    assert_eq!(svg.matches("<polygon").count(), 24);
    assert_eq!(svg.matches("<polyline").count(), 4 * 4);
    assert_eq!(
        svg,
        export_svg(
            &small,
            &SvgOptions {
                overlay: true,
                ..SvgOptions::default()
            }
        )
    );
}

#[test]
fn polylines_span_zone_vectors() {
    let s = sys(SIX);
    let e = canonical_edge_data(&s).unwrap();
    let fd = develop(&s, &e).unwrap();
    let z = zone_vectors(&intersection_matrix(&s), &e).unwrap();
    for (i, zi) in z.0.iter().enumerate() {
        let line = zone_polyline(&fd, i).unwrap();
        assert_eq!(line.len(), s.curves()[i].len() + 1);
        assert!((line[line.len() - 1] - line[0] - zi).norm() < 1e-9);
    }
}

#[test]
fn square_polyline_crosses_vertically() {
    let line = zone_polyline(&square_domain(), 0).unwrap();
    assert_eq!(line.len(), 2);
    assert!((line[1] - line[0] - Complex64::i()).norm() < 1e-12);
}

fn segments_cross(p: Complex64, q: Complex64, r: Complex64, t: Complex64) -> bool {
    let d1 = det(q - p, r - p);
    let d2 = det(q - p, t - p);
    let d3 = det(t - r, p - r);
    let d4 = det(t - r, q - r);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

#[test]
fn polylines_cross_exactly_at_shared_labels() {
    let s = sys(CURVE_EX);
    let e = canonical_edge_data(&s).unwrap();
    let fd = develop(&s, &e).unwrap();
    let patch = replicate(&fd, -1..2, -1..2).unwrap();
    let c = intersection_matrix(&s);
    for i in 0..s.curve_count() {
        for j in i + 1..s.curve_count() {
            let li = zone_polyline(&fd, i).unwrap();
            let mut crossings = 0;
            for copy in &patch.copies {
                let lj: Vec<Complex64> = zone_polyline(&fd, j)
                    .unwrap()
                    .iter()
                    .map(|z| z + copy.translate)
                    .collect();
                for a in li.windows(2) {
                    for b in lj.windows(2) {
                        crossings += segments_cross(a[0], a[1], b[0], b[1]) as i64;
                    }
                }
            }
            // each shared label is one crossing inside its parallelogram
            assert_eq!(crossings, c.get(i, j).abs(), "curves {i} and {j}");
        }
    }
}

#[test]
fn json_round_trip() {
    let s = sys(SIX);
    let fd = develop(&s, &canonical_edge_data(&s).unwrap()).unwrap();
    let patch = replicate(&fd, 0..2, 0..1).unwrap().with_overlay();
    let text = export_json(&patch);
    let back = import_json(&text).unwrap();
    assert_eq!(back, PatchJson::from_patch(&patch));
    assert_eq!(back.cells.len(), 12);
    assert_eq!(export_json(&patch), text);
}
