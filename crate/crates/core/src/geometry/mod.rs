//! Edge data and the geometry of the deformation space.
//!
//! Plane vectors are complex numbers; `det(u, v) = Im(conj(u) v)`.

mod deform;
mod lattice;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ccs::CurveSystem;
use crate::error::{Error, Result};
use crate::homology::{essentiality, intersection_matrix, spectral_pair, IntersectionMatrix};

pub use deform::{
    classify_boundary, deformation_path, deformation_path_with, kernel_direction, push_inward,
    random_kernel_endpoint, star_shape_sweep, BoundaryHit, StarShapeReport, BOUNDARY_TOL,
};
pub use lattice::{lattice_basis, normalize_to_standard_lattice, LatticeBasis, LATTICE_TOL};

/// Real determinant of two plane vectors.
#[inline]
pub fn det(u: Complex64, v: Complex64) -> f64 {
    u.re * v.im - u.im * v.re
}

/// One edge vector per curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<[f64; 2]>", into = "Vec<[f64; 2]>")]
pub struct EdgeData(Vec<Complex64>);

impl EdgeData {
    /// Fails if any entry is zero.
    pub fn new(e: Vec<Complex64>) -> Result<Self> {
        if let Some(i) = e.iter().position(|z| *z == Complex64::new(0.0, 0.0)) {
            return Err(Error::ZeroEdgeVector(i));
        }
        Ok(EdgeData(e))
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Multiply every entry by a complex scalar.
    pub fn scaled(&self, mu: Complex64) -> Result<Self> {
        EdgeData::new(self.0.iter().map(|z| z * mu).collect())
    }

    /// `(1 - t) self + t other`.
    pub fn lerp(&self, other: &EdgeData, t: f64) -> Vec<Complex64> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a * (1.0 - t) + b * t)
            .collect()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let pairs: Vec<[f64; 2]> = serde_json::from_str(text)?;
        EdgeData::new(crate::json::from_pairs(&pairs))
    }

    pub fn to_json(&self) -> String {
        crate::json::to_string(&crate::json::pairs(&self.0))
    }
}

impl TryFrom<Vec<[f64; 2]>> for EdgeData {
    type Error = Error;
    fn try_from(v: Vec<[f64; 2]>) -> Result<Self> {
        EdgeData::new(crate::json::from_pairs(&v))
    }
}

impl From<EdgeData> for Vec<[f64; 2]> {
    fn from(e: EdgeData) -> Self {
        crate::json::pairs(&e.0)
    }
}

fn check_len(c: &IntersectionMatrix, len: usize) -> Result<()> {
    if c.n() != len {
        return Err(Error::LengthMismatch {
            expected: c.n(),
            found: len,
        });
    }
    Ok(())
}

/// Verdict of the admissibility test `c_ij det(e_i, e_j) > 0` over constrained pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    /// Constrained pairs `(i, j)`, `i < j`, with `c_ij det(e_i, e_j) <= 0`.
    pub violations: Vec<(usize, usize)>,
    /// Minimum of `c_ij det(e_i, e_j)` over constrained pairs (`+∞` if none).
    pub margin: f64,
}

pub(crate) fn admissibility_of(c: &IntersectionMatrix, e: &[Complex64]) -> AdmissibilityReport {
    let mut violations = Vec::new();
    let mut margin = f64::INFINITY;
    for (i, j) in c.constrained_pairs() {
        let v = c.get(i, j) as f64 * det(e[i], e[j]);
        margin = margin.min(v);
        if v <= 0.0 {
            violations.push((i, j));
        }
    }
    AdmissibilityReport {
        admissible: violations.is_empty(),
        violations,
        margin,
    }
}

pub fn admissible(c: &IntersectionMatrix, e: &EdgeData) -> Result<AdmissibilityReport> {
    check_len(c, e.len())?;
    Ok(admissibility_of(c, e.as_slice()))
}

/// Zone vectors `z = C e`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZoneVectors(pub Vec<Complex64>);

pub fn zone_vectors(c: &IntersectionMatrix, e: &EdgeData) -> Result<ZoneVectors> {
    check_len(c, e.len())?;
    Ok(ZoneVectors(crate::homology::apply_matrix(c, e.as_slice())))
}

/// Area form `½ Im(e* C e)`, the area of a fundamental domain.
pub fn area(c: &IntersectionMatrix, e: &EdgeData) -> Result<f64> {
    check_len(c, e.len())?;
    let e = e.as_slice();
    let ce = crate::homology::apply_matrix(c, e);
    let quad: Complex64 = e.iter().zip(&ce).map(|(a, b)| a.conj() * b).sum();
    Ok(0.5 * quad.im)
}

/// A 2×2 real matrix acting on plane vectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealLinearMap {
    pub m: [[f64; 2]; 2],
}

impl RealLinearMap {
    pub fn identity() -> Self {
        RealLinearMap {
            m: [[1.0, 0.0], [0.0, 1.0]],
        }
    }

    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        RealLinearMap {
            m: [[c, -s], [s, c]],
        }
    }

    /// The map whose columns are the images of `1` and `i`.
    pub fn from_columns(u: Complex64, v: Complex64) -> Self {
        RealLinearMap {
            m: [[u.re, v.re], [u.im, v.im]],
        }
    }

    pub fn det(&self) -> f64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        Complex64::new(
            self.m[0][0] * z.re + self.m[0][1] * z.im,
            self.m[1][0] * z.re + self.m[1][1] * z.im,
        )
    }

    pub fn inverse(&self) -> Result<Self> {
        let d = self.det();
        if d == 0.0 || !d.is_finite() {
            return Err(Error::SingularMap);
        }
        let [[a, b], [c, dd]] = self.m;
        Ok(RealLinearMap {
            m: [[dd / d, -b / d], [-c / d, a / d]],
        })
    }
}

pub fn apply_real_linear(m: &RealLinearMap, e: &EdgeData) -> Result<EdgeData> {
    if m.det() == 0.0 {
        return Err(Error::SingularMap);
    }
    EdgeData::new(e.as_slice().iter().map(|&z| m.apply(z)).collect())
}

/// Radius of a ball around admissible `e` (Euclidean norm on `ℂⁿ`) that stays
/// admissible: `margin / (2 · max|c_ij| · max|e_i|)`.
pub fn openness_radius(c: &IntersectionMatrix, e: &EdgeData) -> Result<f64> {
    let rep = admissible(c, e)?;
    if !rep.admissible {
        return Ok(0.0);
    }
    Ok(rep.margin / (2.0 * c.max_abs() as f64 * e.max_abs()))
}

/// The eigenvector of `C` for `iλ`, `λ > 0`, as edge data.
pub fn canonical_edge_data(system: &CurveSystem) -> Result<EdgeData> {
    let report = essentiality(system);
    if !report.essential {
        return Err(Error::NotEssential(report.reasons));
    }
    let c = intersection_matrix(system);
    let sp = spectral_pair(&c)?;
    let e = EdgeData::new(sp.e0)?;
    let rep = admissible(&c, &e)?;
    if !rep.admissible {
        return Err(Error::AdmissibilityAssertion(rep.margin));
    }
    Ok(e)
}
