//! Development of an essential genus-1 system with admissible edge data into a
//! fundamental domain of parallelograms.
//!
//! The parallelogram of label `k` (curve `i` through `+k`, curve `j` through
//! `-k`) has edges `e_i`, `e_j` and is anchored at its center. Walking along
//! curve `i` from `x` to its successor `x⁺` moves the center by
//! `(σ(x) e_{j(x)} + σ(x⁺) e_{j(x⁺)}) / 2`, where `σ` is the entry sign and
//! `j(x)` the other curve through `x`. Summed around a curve this telescopes to
//! `(C e)_i`.

mod export;
mod patch;

use std::collections::VecDeque;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ccs::CurveSystem;
use crate::error::{Error, Result};
use crate::geometry::{admissible, area, det, lattice_basis, EdgeData, LatticeBasis};
use crate::homology::{
    apply_matrix, essentiality, homology_coordinates, intersection_matrix, IntersectionMatrix,
};

pub use export::{export_json, export_svg, import_json, CellJson, PatchJson, SvgOptions};
pub use patch::{replicate, zone_polyline, TileCopy, TilingPatch};

/// Tolerance for cone angles, closure and area checks.
pub const DEVELOP_TOL: f64 = 1e-9;

/// Corner offsets in units of `(e_i/2, e_j/2)`, counter-clockwise when
/// `det(e_i, e_j) > 0`. Successor rule `r` turns at corner `r - 1`.
const CORNER_SIGNS: [(f64, f64); 4] = [(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlacedParallelogram {
    pub label: i64,
    /// Curve through `+label`.
    pub curve_i: usize,
    /// Curve through `-label`.
    pub curve_j: usize,
    pub center: Complex64,
    pub corners: [Complex64; 4],
}

impl PlacedParallelogram {
    pub fn signed_area(&self) -> f64 {
        det(
            self.corners[1] - self.corners[0],
            self.corners[3] - self.corners[0],
        )
    }

    pub fn translated(&self, by: Complex64) -> Self {
        PlacedParallelogram {
            center: self.center + by,
            corners: self.corners.map(|c| c + by),
            ..self.clone()
        }
    }

    /// Interior angle at corner `k`.
    pub fn corner_angle(&self, k: usize) -> f64 {
        let here = self.corners[k];
        let u = self.corners[(k + 1) % 4] - here;
        let v = self.corners[(k + 3) % 4] - here;
        det(u, v).abs().atan2(u.re * v.re + u.im * v.im)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FundamentalDomain {
    /// One parallelogram per label, in increasing label order.
    pub parallelograms: Vec<PlacedParallelogram>,
    pub lattice: LatticeBasis,
    /// Total angle at each tiling vertex, indexed like the system's face loops.
    pub vertex_angles: Vec<f64>,
    pub total_area: f64,
    pub system: CurveSystemData,
    pub edge_data: Vec<Complex64>,
}

/// Signed curve entries, kept so a domain can be inspected without its system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSystemData {
    pub curves: Vec<Vec<i64>>,
}

impl FundamentalDomain {
    pub fn curve_system(&self) -> CurveSystem {
        CurveSystem::from_values(&self.system.curves).expect("domain stores a validated system")
    }

    /// `Σ_v (2π − φ_v)`.
    pub fn gauss_bonnet_defect(&self) -> f64 {
        self.vertex_angles.iter().map(|phi| 2.0 * PI - phi).sum()
    }
}

/// Center displacement from the entry at `pos` of `curve` to the next entry.
pub(crate) fn step(system: &CurveSystem, e: &[Complex64], curve: usize, pos: usize) -> Complex64 {
    let half = |pos: usize| {
        let x = system.curves()[curve].at(pos);
        let partner = system.partner_curve(x).expect("validated system");
        e[partner] * x.sign()
    };
    (half(pos) + half(pos + 1)) / 2.0
}

/// Lay out one parallelogram per label, verifying closure, cone angles and area.
pub fn develop(system: &CurveSystem, e: &EdgeData) -> Result<FundamentalDomain> {
    let ess = essentiality(system);
    if !ess.essential {
        return Err(Error::NotEssential(ess.reasons));
    }
    let c = intersection_matrix(system);
    if !admissible(&c, e)?.admissible {
        return Err(Error::NotAdmissible);
    }
    let hc = homology_coordinates(system)?;
    let lattice = lattice_basis(&hc, &c, e)?;
    let ev = e.as_slice();
    let n = system.label_count();

    // adjacency along curve segments: (from, to, displacement)
    let mut adj: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); n];
    let mut segments = Vec::with_capacity(system.edge_count());
    for (ci, curve) in system.curves().iter().enumerate() {
        for pos in 0..curve.len() {
            let from = system.label_index(curve.at(pos).label()).unwrap();
            let to = system.label_index(curve.at(pos + 1).label()).unwrap();
            let d = step(system, ev, ci, pos);
            adj[from].push((to, d));
            adj[to].push((from, -d));
            segments.push((from, to, d));
        }
    }

    let mut center: Vec<Option<Complex64>> = vec![None; n];
    center[0] = Some(Complex64::new(0.0, 0.0));
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        let cu = center[u].unwrap();
        for &(v, d) in &adj[u] {
            if center[v].is_none() {
                center[v] = Some(cu + d);
                queue.push_back(v);
            }
        }
    }
    let center: Vec<Complex64> = center
        .into_iter()
        .map(|c| c.ok_or_else(|| Error::ClosureFailure("adjacency graph is disconnected".into())))
        .collect::<Result<_>>()?;

    // every segment, tree or not, must close up to a lattice translation
    let scale = lattice.a.norm() + lattice.b.norm();
    for &(from, to, d) in &segments {
        let gap = center[from] + d - center[to];
        let (u, v) = lattice.coordinates(gap);
        let off = (gap - lattice.translate(u.round() as i64, v.round() as i64)).norm();
        if off > DEVELOP_TOL * scale {
            return Err(Error::ClosureFailure(format!(
                "segment {} -> {} misses the lattice by {off:e}",
                system.labels()[from],
                system.labels()[to]
            )));
        }
    }

    let parallelograms: Vec<PlacedParallelogram> = (0..n)
        .map(|idx| {
            let (ci, cj) = system.crossing_curves(idx);
            let (ei, ej) = (ev[ci], ev[cj]);
            PlacedParallelogram {
                label: system.labels()[idx],
                curve_i: ci,
                curve_j: cj,
                center: center[idx],
                corners: CORNER_SIGNS.map(|(s, t)| center[idx] + (ei * s + ej * t) / 2.0),
            }
        })
        .collect();

    let vertex_angles: Vec<f64> = system
        .face_ids()
        .iter()
        .map(|face| {
            system
                .face_turns(face)
                .iter()
                .map(|turn| parallelograms[turn.label].corner_angle(turn.case as usize - 1))
                .sum()
        })
        .collect();
    for (vertex, &angle) in vertex_angles.iter().enumerate() {
        if (angle - 2.0 * PI).abs() > DEVELOP_TOL {
            return Err(Error::ConeAngle { vertex, angle });
        }
    }

    let total_area: f64 = parallelograms.iter().map(|p| p.signed_area().abs()).sum();
    let form = area(&c, e)?;
    if (total_area - form).abs() > DEVELOP_TOL * form.abs().max(1e-300) {
        return Err(Error::ClosureFailure(format!(
            "cell area {total_area} differs from the area form {form}"
        )));
    }

    Ok(FundamentalDomain {
        parallelograms,
        lattice,
        vertex_angles,
        total_area,
        system: CurveSystemData {
            curves: system
                .curves()
                .iter()
                .map(|c| c.entries().iter().map(|x| x.value()).collect())
                .collect(),
        },
        edge_data: ev.to_vec(),
    })
}

/// Residuals of the development checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosureReport {
    /// `|Σ steps along γ_i − (C e)_i|` per curve.
    pub curve_residuals: Vec<f64>,
    /// Largest corner mismatch along each face walk.
    pub face_residuals: Vec<f64>,
}

impl ClosureReport {
    pub fn max_curve_residual(&self) -> f64 {
        self.curve_residuals.iter().copied().fold(0.0, f64::max)
    }

    pub fn max_face_residual(&self) -> f64 {
        self.face_residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Recompute each curve's developed displacement and walk each face, checking
/// that consecutive corners along the walk coincide.
pub fn verify_closure(
    fd: &FundamentalDomain,
    c: &IntersectionMatrix,
    e: &EdgeData,
) -> Result<ClosureReport> {
    let system = fd.curve_system();
    if c.n() != e.len() || c.n() != system.curve_count() {
        return Err(Error::LengthMismatch {
            expected: system.curve_count(),
            found: e.len(),
        });
    }
    let ev = e.as_slice();
    let z = apply_matrix(c, ev);
    let curve_residuals = system
        .curves()
        .iter()
        .enumerate()
        .map(|(ci, curve)| {
            let total: Complex64 = (0..curve.len()).map(|p| step(&system, ev, ci, p)).sum();
            (total - z[ci]).norm()
        })
        .collect();

    let offset = |label: usize, case: u8| -> Complex64 {
        let cell = &fd.parallelograms[label];
        cell.corners[case as usize - 1] - cell.center
    };
    let face_residuals = system
        .face_ids()
        .iter()
        .map(|face| {
            let turns = system.face_turns(face);
            let k = face.len();
            (0..k)
                .map(|w| {
                    let id = face[w];
                    let enter = turns[(w + k - 1) % k];
                    let exit = turns[w];
                    let d = step(&system, ev, id.curve, id.pos);
                    let gap = if id.right {
                        // walked from x⁺ back to x
                        d + offset(enter.label, enter.case) - offset(exit.label, exit.case)
                    } else {
                        offset(enter.label, enter.case) - d - offset(exit.label, exit.case)
                    };
                    gap.norm()
                })
                .fold(0.0, f64::max)
        })
        .collect();
    Ok(ClosureReport {
        curve_residuals,
        face_residuals,
    })
}
