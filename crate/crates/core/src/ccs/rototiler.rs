//! Rototiler moves: a triangular face corresponds to three parallelograms forming
//! a hexagon, whose subdivision can be flipped without changing the
//! generalized intersection matrix.

use std::collections::BTreeSet;

use super::border::FaceLoop;
use super::{build_faces, Curve, CurveSystem};
use crate::error::{Error, Result};

/// Faces bounded by exactly three borders.
pub fn find_rototiler_moves(system: &CurveSystem) -> Vec<FaceLoop> {
    build_faces(system)
        .into_iter()
        .filter(|f| f.len() == 3)
        .collect()
}

/// Flip the hexagon around a triangular face.
///
/// On each of the three curves bounding the triangle, the two triangle corners
/// are consecutive entries; they trade places and keep their signs.
pub fn apply_rototiler(system: &CurveSystem, face: &FaceLoop) -> Result<CurveSystem> {
    if face.len() != 3 {
        return Err(Error::NotATriangle(face.len()));
    }
    let ids = face
        .borders
        .iter()
        .map(|b| system.border_id(b))
        .collect::<Result<Vec<_>>>()?;
    for (w, &id) in ids.iter().enumerate() {
        if system.successor_id(id).0 != ids[(w + 1) % 3] {
            return Err(Error::DegenerateHexagon(
                "borders do not form a face loop".into(),
            ));
        }
    }
    let curves: BTreeSet<usize> = ids.iter().map(|id| id.curve).collect();
    if curves.len() != 3 {
        return Err(Error::DegenerateHexagon(format!(
            "triangle touches {} distinct curves",
            curves.len()
        )));
    }
    let corners: BTreeSet<i64> = face
        .borders
        .iter()
        .flat_map(|b| [b.start.label(), b.end.label()])
        .collect();
    if corners.len() != 3
        || face
            .borders
            .iter()
            .any(|b| b.start.label() == b.end.label())
    {
        return Err(Error::DegenerateHexagon(format!(
            "triangle has {} distinct corners",
            corners.len()
        )));
    }

    let mut entries: Vec<Vec<_>> = system
        .curves()
        .iter()
        .map(|c| c.entries().to_vec())
        .collect();
    for id in &ids {
        let len = entries[id.curve].len();
        let (p, q) = (id.pos, (id.pos + 1) % len);
        entries[id.curve].swap(p, q);
    }
    CurveSystem::new(entries.into_iter().map(Curve::new).collect())
}
