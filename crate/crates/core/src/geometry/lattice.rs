//! Period lattice of a developed tiling and normalization of the marking.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{admissible, det, EdgeData, RealLinearMap};
use crate::error::{Error, Result};
use crate::homology::{apply_matrix, HomologyCoordinates, IntersectionMatrix};

/// Relative tolerance for the overdetermined lattice solve.
pub const LATTICE_TOL: f64 = 1e-9;

/// Developed images `a`, `b` of the homology basis `α`, `β`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeBasis {
    pub a: Complex64,
    pub b: Complex64,
}

impl LatticeBasis {
    pub fn det(&self) -> f64 {
        det(self.a, self.b)
    }

    /// `+1` for a positively oriented basis, `-1` otherwise.
    pub fn orientation(&self) -> i8 {
        if self.det() > 0.0 {
            1
        } else {
            -1
        }
    }

    pub fn translate(&self, p: i64, q: i64) -> Complex64 {
        self.a * p as f64 + self.b * q as f64
    }

    /// Real coordinates `(u, v)` with `z = u a + v b`.
    pub fn coordinates(&self, z: Complex64) -> (f64, f64) {
        let d = self.det();
        (det(z, self.b) / d, det(self.a, z) / d)
    }
}

/// Solve `a A + b B = C e` for the lattice basis.
///
/// Two rows with the largest invertible minor of `(A | B)` determine `(a, b)`;
/// the remaining rows certify the solution.
pub fn lattice_basis(
    hc: &HomologyCoordinates,
    c: &IntersectionMatrix,
    e: &EdgeData,
) -> Result<LatticeBasis> {
    let n = c.n();
    for len in [hc.a.len(), hc.b.len(), e.len()] {
        if len != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: len,
            });
        }
    }
    let z = apply_matrix(c, e.as_slice());
    let mut best: Option<(usize, usize, i64)> = None;
    for p in 0..n {
        for q in p + 1..n {
            let minor = hc.a[p] * hc.b[q] - hc.a[q] * hc.b[p];
            if minor != 0 && best.is_none_or(|(_, _, m)| minor.abs() > m.abs()) {
                best = Some((p, q, minor));
            }
        }
    }
    let (p, q, minor) = best.ok_or(Error::NoInvertibleMinor)?;
    let minor = minor as f64;
    let a = (z[p] * hc.b[q] as f64 - z[q] * hc.b[p] as f64) / minor;
    let b = (z[q] * hc.a[p] as f64 - z[p] * hc.a[q] as f64) / minor;

    let znorm = z.iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt();
    let residual = z
        .iter()
        .enumerate()
        .map(|(i, zi)| (a * hc.a[i] as f64 + b * hc.b[i] as f64 - zi).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let bound = LATTICE_TOL * znorm;
    if residual > bound {
        return Err(Error::ResidualExceeded { residual, bound });
    }
    Ok(LatticeBasis { a, b })
}

/// Move admissible edge data by the real-linear map sending the lattice basis
/// to `(1, i)`.
pub fn normalize_to_standard_lattice(
    hc: &HomologyCoordinates,
    c: &IntersectionMatrix,
    e: &EdgeData,
) -> Result<EdgeData> {
    if !admissible(c, e)?.admissible {
        return Err(Error::NotAdmissible);
    }
    let mut lat = lattice_basis(hc, c, e)?;
    if lat.det() == 0.0 || !lat.det().is_finite() {
        return Err(Error::DegenerateLattice);
    }
    if lat.det() < 0.0 {
        std::mem::swap(&mut lat.a, &mut lat.b);
    }
    let to_standard = RealLinearMap::from_columns(lat.a, lat.b)
        .inverse()
        .map_err(|_| Error::DegenerateLattice)?;
    EdgeData::new(e.as_slice().iter().map(|&v| to_standard.apply(v)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ccs::parse_curve_system;
    use crate::geometry::{area, canonical_edge_data};
    use crate::homology::{homology_coordinates, intersection_matrix};

    fn z(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn square_lattice() {
        let hc = HomologyCoordinates {
            a: vec![1, 0],
            b: vec![0, 1],
        };
        let c = IntersectionMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap();
        let e = EdgeData::new(vec![z(1., 0.), z(0., 1.)]).unwrap();
        let lat = lattice_basis(&hc, &c, &e).unwrap();
        assert_eq!((lat.a, lat.b), (z(0., 1.), z(-1., 0.)));

        let mu = z(0.3, -2.0);
        let lat2 = lattice_basis(&hc, &c, &e.scaled(mu).unwrap()).unwrap();
        assert!((lat2.a - mu * lat.a).norm() < 1e-12 && (lat2.b - mu * lat.b).norm() < 1e-12);

        let norm = normalize_to_standard_lattice(&hc, &c, &e).unwrap();
        let l = lattice_basis(&hc, &c, &norm).unwrap();
        assert!((l.a - z(1., 0.)).norm() < 1e-12 && (l.b - z(0., 1.)).norm() < 1e-12);
        assert!(admissible(&c, &norm).unwrap().admissible);
    }

    #[test]
    fn kernel_shift_keeps_lattice() {
        let s = parse_curve_system("1 2 3 4\n-1 5\n-3 6\n-2 -5 -4 -6\n").unwrap();
        let c = intersection_matrix(&s);
        let hc = homology_coordinates(&s).unwrap();
        let e = canonical_edge_data(&s).unwrap();
        // columns 2 and 3 of C coincide, so (0, 1, -1, 0) spans part of the kernel
        let k = [z(0., 0.), z(0.05, 0.02), z(-0.05, -0.02), z(0., 0.)];
        let shifted =
            EdgeData::new(e.as_slice().iter().zip(k).map(|(a, b)| a + b).collect()).unwrap();
        let (l1, l2) = (
            lattice_basis(&hc, &c, &e).unwrap(),
            lattice_basis(&hc, &c, &shifted).unwrap(),
        );
        assert!((l1.a - l2.a).norm() < 1e-12 && (l1.b - l2.b).norm() < 1e-12);
        // area of the fundamental domain equals the covolume of the lattice
        assert!((area(&c, &e).unwrap() - l1.det().abs()).abs() < 1e-9);
    }

    #[test]
    fn normalization_is_idempotent() {
        let s = parse_curve_system("1 2 3\n-1 -4\n-2 -5\n-3 4 5\n").unwrap();
        let c = intersection_matrix(&s);
        let hc = homology_coordinates(&s).unwrap();
        let e = canonical_edge_data(&s).unwrap();
        let once = normalize_to_standard_lattice(&hc, &c, &e).unwrap();
        let twice = normalize_to_standard_lattice(&hc, &c, &once).unwrap();
        for (x, y) in once.as_slice().iter().zip(twice.as_slice()) {
            assert!((x - y).norm() < 1e-9);
        }
        let l = lattice_basis(&hc, &c, &once).unwrap();
        assert!((l.a - z(1., 0.)).norm() < 1e-9 && (l.b - z(0., 1.)).norm() < 1e-9);
    }

    #[test]
    fn missing_minor() {
        let hc = HomologyCoordinates {
            a: vec![1, 2],
            b: vec![2, 4],
        };
        let c = IntersectionMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap();
        let e = EdgeData::new(vec![z(1., 0.), z(0., 1.)]).unwrap();
        assert_eq!(lattice_basis(&hc, &c, &e), Err(Error::NoInvertibleMinor));
    }
}
