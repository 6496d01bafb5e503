//! Integral first homology of the surface rebuilt from a genus-1 system.
//!
//! Cells: one vertex per label, one edge per curve segment, one face per face
//! loop. H₁ is computed as ker ∂₁ / im ∂₂ through two Smith normal forms, and
//! each curve's class is read off in the resulting basis.

use serde::{Deserialize, Serialize};

use super::snf::{smith_normal_form, IntMatrix};
use super::{intersection_matrix, IntersectionMatrix};
use crate::ccs::{surface_report, CurveSystem};
use crate::error::{Error, Result};

/// Integer coefficients `γ_i = A_i α + B_i β` in a homology basis with `α·β = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyCoordinates {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
}

impl HomologyCoordinates {
    /// `A Bᵗ - B Aᵗ`.
    pub fn intersection_form(&self) -> Vec<Vec<i64>> {
        let n = self.a.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.a[i] * self.b[j] - self.b[i] * self.a[j])
                    .collect()
            })
            .collect()
    }

    /// Whether `A` and `B` are linearly independent.
    pub fn independent(&self) -> bool {
        self.intersection_form().iter().flatten().any(|&v| v != 0)
    }
}

/// Boundary map from edges to vertices (`n × 2n`).
fn edge_boundary(system: &CurveSystem) -> IntMatrix {
    let mut d1 = IntMatrix::zeros(system.label_count(), system.edge_count());
    for (ci, c) in system.curves().iter().enumerate() {
        for pos in 0..c.len() {
            let e = system.edge_index(ci, pos);
            let tail = system.label_index(c.at(pos).label()).unwrap();
            let head = system.label_index(c.at(pos + 1).label()).unwrap();
            d1.set(head, e, d1.get(head, e) + 1);
            d1.set(tail, e, d1.get(tail, e) - 1);
        }
    }
    d1
}

/// Boundary map from faces to edges: left borders count `+1`, right borders `-1`.
fn face_boundary(system: &CurveSystem) -> IntMatrix {
    let faces = system.face_ids();
    let mut d2 = IntMatrix::zeros(system.edge_count(), faces.len());
    for (fi, face) in faces.iter().enumerate() {
        for id in face {
            let e = system.edge_index(id.curve, id.pos);
            let s = if id.right { -1 } else { 1 };
            d2.set(e, fi, d2.get(e, fi) + s);
        }
    }
    d2
}

/// Homology coordinates of every curve, oriented so that `A Bᵗ - B Aᵗ = C`.
pub fn homology_coordinates(system: &CurveSystem) -> Result<HomologyCoordinates> {
    let report = surface_report(system);
    if !report.connected {
        return Err(Error::NotConnected);
    }
    if report.genus[0] != 1 {
        return Err(Error::NotGenus1(report.genus[0]));
    }

    let d1 = edge_boundary(system);
    let d2 = face_boundary(system);

    // Cycles: the last (E - r1) columns of q1 span ker ∂₁; q1⁻¹ gives coordinates.
    let s1 = smith_normal_form(&d1)?;
    let to_cycle_coords = s1.q_inv.row_tail(s1.rank);
    // ∂₂ in cycle coordinates, then quotient by its image.
    let w = to_cycle_coords.mul(&d2)?;
    let s2 = smith_normal_form(&w)?;
    if s2.diagonal().iter().any(|&d| d != 1) {
        return Err(Error::HomologyShape(w.rows() - s2.rank));
    }
    let to_h1 = s2.p.row_tail(s2.rank).mul(&to_cycle_coords)?;
    if to_h1.rows() != 2 {
        return Err(Error::HomologyShape(to_h1.rows()));
    }

    let mut a = Vec::with_capacity(system.curve_count());
    let mut b = Vec::with_capacity(system.curve_count());
    for (ci, c) in system.curves().iter().enumerate() {
        let mut chain = vec![0i64; system.edge_count()];
        for pos in 0..c.len() {
            chain[system.edge_index(ci, pos)] = 1;
        }
        let h = to_h1.mul_vec(&chain)?;
        a.push(h[0]);
        b.push(h[1]);
    }

    let c = intersection_matrix(system);
    let mut hc = HomologyCoordinates { a, b };
    if matches_form(&hc, &c, 1) {
        Ok(hc)
    } else if matches_form(&hc, &c, -1) {
        std::mem::swap(&mut hc.a, &mut hc.b);
        Ok(hc)
    } else {
        Err(Error::BasisOrientation)
    }
}

fn matches_form(hc: &HomologyCoordinates, c: &IntersectionMatrix, sign: i64) -> bool {
    hc.intersection_form().iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, &v)| v == sign * c.get(i, j))
    })
}
