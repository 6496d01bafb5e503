//! Deformations inside the space of admissible edge data and its boundary strata.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{admissibility_of, check_len, det, AdmissibilityReport, EdgeData};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::homology::{apply_matrix, IntersectionMatrix};

/// Absolute tolerance on determinants when locating boundary hypersurfaces.
pub const BOUNDARY_TOL: f64 = 1e-12;

const KERNEL_TOL: f64 = 1e-9;

fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Sample `e^t = (1 - t) e_start + t e_end` at `t = 0, 1/steps, …, 1`.
pub fn deformation_path(
    c: &IntersectionMatrix,
    start: &EdgeData,
    end: &EdgeData,
    steps: usize,
) -> Result<Vec<(f64, AdmissibilityReport)>> {
    deformation_path_with(Strategy::default(), c, start, end, steps)
}

pub fn deformation_path_with(
    strategy: Strategy,
    c: &IntersectionMatrix,
    start: &EdgeData,
    end: &EdgeData,
    steps: usize,
) -> Result<Vec<(f64, AdmissibilityReport)>> {
    check_len(c, start.len())?;
    check_len(c, end.len())?;
    if steps == 0 {
        return Err(Error::ZeroSteps);
    }
    let diff: Vec<Complex64> = end
        .as_slice()
        .iter()
        .zip(start.as_slice())
        .map(|(a, b)| a - b)
        .collect();
    let residual = vec_norm(&apply_matrix(c, &diff));
    let bound = KERNEL_TOL * vec_norm(&apply_matrix(c, start.as_slice()));
    if residual > bound {
        return Err(Error::KernelConditionViolated { residual, bound });
    }
    Ok(strategy.map_range(steps + 1, |k| {
        let t = k as f64 / steps as f64;
        (t, admissibility_of(c, &start.lerp(end, t)))
    }))
}

/// Orthonormal basis of the real column space of `C`.
fn image_basis(c: &IntersectionMatrix) -> Vec<Vec<f64>> {
    let n = c.n();
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for j in 0..n {
        let mut v: Vec<f64> = (0..n).map(|i| c.get(i, j) as f64).collect();
        for _ in 0..2 {
            for b in &basis {
                let d: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
                v.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-9 {
            basis.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    basis
}

/// A random unit vector in the complex kernel of `C`, or `None` if the kernel is trivial.
///
/// For skew `C` the kernel is the orthogonal complement of the image, so uniform
/// coefficients are projected off an orthonormal image basis (real and imaginary
/// parts separately).
pub fn kernel_direction<R: Rng + ?Sized>(
    c: &IntersectionMatrix,
    rng: &mut R,
) -> Option<Vec<Complex64>> {
    let n = c.n();
    let image = image_basis(c);
    if image.len() >= n {
        return None;
    }
    let mut re: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    let mut im: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    for part in [&mut re, &mut im] {
        for _ in 0..2 {
            for b in &image {
                let d: f64 = part.iter().zip(b).map(|(x, y)| x * y).sum();
                part.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
            }
        }
    }
    let k: Vec<Complex64> = re
        .into_iter()
        .zip(im)
        .map(|(a, b)| Complex64::new(a, b))
        .collect();
    let norm = vec_norm(&k);
    (norm > 1e-12).then(|| k.into_iter().map(|z| z / norm).collect())
}

/// A random admissible point `start + s k` with `k` in the kernel of `C`.
///
/// The scale `s` starts uniform in `(0, 2‖start‖]` and is halved until the
/// point is admissible.
pub fn random_kernel_endpoint<R: Rng + ?Sized>(
    c: &IntersectionMatrix,
    start: &EdgeData,
    rng: &mut R,
) -> Option<EdgeData> {
    let k = kernel_direction(c, rng)?;
    let mut s = rng.gen_range(f64::EPSILON..=2.0) * start.norm();
    for _ in 0..64 {
        let cand: Vec<Complex64> = start
            .as_slice()
            .iter()
            .zip(&k)
            .map(|(e, d)| e + d * s)
            .collect();
        if admissibility_of(c, &cand).admissible {
            return EdgeData::new(cand).ok();
        }
        s /= 2.0;
    }
    None
}

/// Outcome of sampling segments from a center to random kernel-slice endpoints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StarShapeReport {
    pub endpoints: usize,
    pub samples: usize,
    /// `(endpoint index, t)` of every inadmissible sample.
    pub failures: Vec<(usize, f64)>,
    pub min_margin: f64,
}

impl StarShapeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.min_margin > 0.0
    }
}

/// Draw `endpoints` admissible kernel-slice endpoints around `center` and check
/// `grid` evenly spaced samples on each segment. Endpoint `i` uses its own
/// ChaCha stream, so the result does not depend on the strategy.
pub fn star_shape_sweep(
    strategy: Strategy,
    c: &IntersectionMatrix,
    center: &EdgeData,
    endpoints: usize,
    grid: usize,
    seed: u64,
) -> Result<StarShapeReport> {
    check_len(c, center.len())?;
    let steps = grid.max(2) - 1;
    let per_endpoint = strategy.map_range(endpoints, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let Some(end) = random_kernel_endpoint(c, center, &mut rng) else {
            return (Vec::new(), f64::INFINITY, 0);
        };
        let mut failures = Vec::new();
        let mut min_margin = f64::INFINITY;
        for k in 0..=steps {
            let t = k as f64 / steps as f64;
            let rep = admissibility_of(c, &center.lerp(&end, t));
            min_margin = min_margin.min(rep.margin);
            if !rep.admissible {
                failures.push((i, t));
            }
        }
        (failures, min_margin, steps + 1)
    });
    let mut report = StarShapeReport {
        endpoints,
        samples: 0,
        failures: Vec::new(),
        min_margin: f64::INFINITY,
    };
    for (f, m, s) in per_endpoint {
        report.failures.extend(f);
        report.min_margin = report.min_margin.min(m);
        report.samples += s;
    }
    Ok(report)
}

/// A constrained pair whose determinant vanishes (within tolerance).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryHit {
    pub pair: (usize, usize),
    /// Whether every other constrained pair is strictly admissible.
    pub in_stratum: bool,
}

/// Locate `e` on the hypersurfaces `det(e_r, e_s) = 0` and test membership in
/// the corresponding boundary strata.
pub fn classify_boundary(
    c: &IntersectionMatrix,
    e: &EdgeData,
    tol: f64,
) -> Result<Vec<BoundaryHit>> {
    check_len(c, e.len())?;
    let e = e.as_slice();
    let pairs: Vec<(usize, usize)> = c.constrained_pairs().collect();
    let hits = pairs
        .iter()
        .filter(|&&(r, s)| det(e[r], e[s]).abs() <= tol)
        .map(|&(r, s)| BoundaryHit {
            pair: (r, s),
            in_stratum: pairs
                .iter()
                .filter(|&&p| p != (r, s))
                .all(|&(i, j)| c.get(i, j) as f64 * det(e[i], e[j]) > 0.0),
        })
        .collect();
    Ok(hits)
}

/// Push a point of the stratum `det(e_r, e_s) = 0` back into the admissible set.
///
/// The step has length half the openness radius of the remaining constraints and
/// points along `±i e_s` on the `r` coordinate, which makes `c_rs det(e_r, e_s)`
/// positive while keeping every other constrained pair positive. Returns the new
/// point and the radius used.
pub fn push_inward(
    c: &IntersectionMatrix,
    e: &EdgeData,
    (r, s): (usize, usize),
) -> Result<(EdgeData, f64)> {
    check_len(c, e.len())?;
    let n = c.n();
    if r >= n || s >= n || c.get(r, s) == 0 {
        return Err(Error::BadIndex {
            index: r.max(s),
            len: n,
        });
    }
    let ev = e.as_slice();
    let others = c
        .constrained_pairs()
        .filter(|&p| p != (r, s) && p != (s, r))
        .map(|(i, j)| c.get(i, j) as f64 * det(ev[i], ev[j]))
        .fold(f64::INFINITY, f64::min);
    if others <= 0.0 {
        return Err(Error::NotAdmissible);
    }
    let emax = ev.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let radius = if others.is_finite() {
        others / (2.0 * c.max_abs() as f64 * emax)
    } else {
        emax
    };
    let unit_s = ev[s] / ev[s].norm();
    let dir = -Complex64::i() * unit_s * (c.get(r, s).signum() as f64);
    let mut moved = ev.to_vec();
    moved[r] += dir * (radius / 2.0);
    Ok((EdgeData::new(moved)?, radius))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ccs::parse_curve_system;
    use crate::geometry::canonical_edge_data;
    use crate::homology::intersection_matrix;

    fn z(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn square_boundary_point() {
        let c = IntersectionMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap();
        let e = EdgeData::new(vec![z(1., 0.), z(1., 0.)]).unwrap();
        let hits = classify_boundary(&c, &e, BOUNDARY_TOL).unwrap();
        assert_eq!(
            hits,
            vec![BoundaryHit {
                pair: (0, 1),
                in_stratum: true
            }]
        );
    }

    #[test]
    fn canonical_data_is_interior() {
        let s = parse_curve_system("1 2 3 4\n-1 5\n-3 6\n-2 -5 -4 -6\n").unwrap();
        let c = intersection_matrix(&s);
        let e = canonical_edge_data(&s).unwrap();
        assert!(classify_boundary(&c, &e, BOUNDARY_TOL).unwrap().is_empty());
    }

    #[test]
    fn path_checks_kernel_condition() {
        let s = parse_curve_system("1 2 3 4\n-1 5\n-3 6\n-2 -5 -4 -6\n").unwrap();
        let c = intersection_matrix(&s);
        let e = canonical_edge_data(&s).unwrap();
        let same = deformation_path(&c, &e, &e, 4).unwrap();
        assert_eq!(same.len(), 5);
        assert!(same.iter().all(|(_, r)| r.admissible));

        let off = e.scaled(z(1.1, 0.0)).unwrap();
        assert!(matches!(
            deformation_path(&c, &e, &off, 4),
            Err(Error::KernelConditionViolated { .. })
        ));
        assert_eq!(deformation_path(&c, &e, &e, 0), Err(Error::ZeroSteps));
    }

    #[test]
    fn kernel_endpoints_are_admissible_and_in_slice() {
        let s = parse_curve_system("1 2 3 4\n-1 5\n-3 6\n-2 -5 -4 -6\n").unwrap();
        let c = intersection_matrix(&s);
        let e = canonical_edge_data(&s).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let end = random_kernel_endpoint(&c, &e, &mut rng).unwrap();
            let path = deformation_path(&c, &e, &end, 10).unwrap();
            assert!(path.last().unwrap().1.admissible);
        }
    }

    #[test]
    fn sweep_is_strategy_independent() {
        let s = parse_curve_system("1 2 3\n-1 -4\n-2 -5\n-3 4 5\n").unwrap();
        let c = intersection_matrix(&s);
        let e = canonical_edge_data(&s).unwrap();
        let a = star_shape_sweep(Strategy::Sequential, &c, &e, 16, 11, 3).unwrap();
        let b = star_shape_sweep(Strategy::Parallel, &c, &e, 16, 11, 3).unwrap();
        assert_eq!(a, b);
        assert!(a.passed());
        assert_eq!(a.samples, 16 * 11);
    }

    #[test]
    fn square_push_inward() {
        let c = IntersectionMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap();
        let e = EdgeData::new(vec![z(1., 0.), z(1., 0.)]).unwrap();
        let (back, radius) = push_inward(&c, &e, (0, 1)).unwrap();
        assert_eq!(radius, 1.0);
        assert_eq!(back.as_slice()[0], z(1., -0.5));
        assert!(admissibility_of(&c, back.as_slice()).admissible);
    }

    #[test]
    fn trivial_kernel() {
        let c = IntersectionMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(kernel_direction(&c, &mut rng).is_none());
    }
}
