use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{matrix_rank, IntersectionMatrix};
use crate::error::{Error, Result};

/// Relative tolerance for eigen residual certificates.
pub const EIGEN_TOL: f64 = 1e-9;

/// The eigenvalue `iλ` (`λ > 0`) of a rank-2 skew matrix and a unit eigenvector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralPair {
    pub lambda: f64,
    pub e0: Vec<Complex64>,
}

impl SpectralPair {
    /// `‖C e0 − iλ e0‖`.
    pub fn residual(&self, c: &IntersectionMatrix) -> f64 {
        let ce = apply(c, &self.e0);
        ce.iter()
            .zip(&self.e0)
            .map(|(z, e)| (z - Complex64::i() * self.lambda * e).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// `C v` for complex `v`.
pub fn apply(c: &IntersectionMatrix, v: &[Complex64]) -> Vec<Complex64> {
    (0..c.n())
        .map(|i| {
            c.row(i)
                .iter()
                .zip(v)
                .filter(|(&cij, _)| cij != 0)
                .map(|(&cij, &vj)| vj * cij as f64)
                .sum()
        })
        .collect()
}

fn apply_real(c: &IntersectionMatrix, v: &[f64]) -> Vec<f64> {
    (0..c.n())
        .map(|i| c.row(i).iter().zip(v).map(|(&a, &b)| a as f64 * b).sum())
        .collect()
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Scale to unit norm with the first non-negligible component real and positive.
pub(crate) fn normalize_phase(v: &mut [Complex64]) {
    let total = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if total == 0.0 {
        return;
    }
    let big = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let lead = v
        .iter()
        .find(|z| z.norm() > 1e-12 * big)
        .copied()
        .unwrap_or(Complex64::new(1.0, 0.0));
    let phase = lead.conj() / lead.norm();
    for z in v.iter_mut() {
        *z = *z * phase / total;
    }
}

/// Eigenpair for the positive-imaginary eigenvalue of a rank-2 skew matrix.
///
/// On the image of `C`, `C² = −λ²`, so for any `x = C v` the vector
/// `x − i C x / λ` is an eigenvector for `iλ`. The result is certified by
/// its residual and by `λ² = ½‖C‖²_F`.
pub fn spectral_pair(c: &IntersectionMatrix) -> Result<SpectralPair> {
    let rank = matrix_rank(c);
    if rank != 2 {
        return Err(Error::RankNot2(rank));
    }
    let n = c.n();
    // seed: the unit vector picking the heaviest column
    let seed = (0..n)
        .max_by_key(|&j| (0..n).map(|i| c.get(i, j) * c.get(i, j)).sum::<i64>())
        .expect("rank 2 implies n >= 2");
    let mut v = vec![0.0; n];
    v[seed] = 1.0;
    let x = apply_real(c, &v);
    let cx = apply_real(c, &x);

    let lambda = (c.frobenius_sq() as f64 / 2.0).sqrt();
    let lambda_iter = norm(&cx) / norm(&x);
    if (lambda - lambda_iter).abs() > EIGEN_TOL * lambda {
        return Err(Error::ResidualExceeded {
            residual: (lambda - lambda_iter).abs(),
            bound: EIGEN_TOL * lambda,
        });
    }

    let mut e0: Vec<Complex64> = x
        .iter()
        .zip(&cx)
        .map(|(&xr, &cxr)| Complex64::new(xr, -cxr / lambda))
        .collect();
    normalize_phase(&mut e0);

    let pair = SpectralPair { lambda, e0 };
    let residual = pair.residual(c);
    if residual > EIGEN_TOL * lambda {
        return Err(Error::ResidualExceeded {
            residual,
            bound: EIGEN_TOL * lambda,
        });
    }
    Ok(pair)
}

/// `‖u − proj_v u‖ / ‖u‖`: zero iff `u` is a complex multiple of `v`.
pub fn collinearity_residual(u: &[Complex64], v: &[Complex64]) -> f64 {
    let vv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    let uu: f64 = u.iter().map(|z| z.norm_sqr()).sum();
    let vu: Complex64 = v.iter().zip(u).map(|(a, b)| a.conj() * b).sum();
    let mu = vu / vv;
    let r: f64 = u.iter().zip(v).map(|(a, b)| (a - mu * b).norm_sqr()).sum();
    (r / uu).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntersectionMatrix {
        IntersectionMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn six_parallelogram_eigenvector() {
        let c = m(&[
            vec![0, 1, 1, 2],
            vec![-1, 0, 0, 1],
            vec![-1, 0, 0, 1],
            vec![-2, -1, -1, 0],
        ]);
        let sp = spectral_pair(&c).unwrap();
        let r2 = 2f64.sqrt();
        assert!((sp.lambda - 2.0 * r2).abs() < 1e-9 * sp.lambda);
        let expected = [
            Complex64::new(-1.0, -2.0 * r2),
            Complex64::new(1.0, -r2),
            Complex64::new(1.0, -r2),
            Complex64::new(3.0, 0.0),
        ];
        assert!(collinearity_residual(&sp.e0, &expected) < 1e-9);
        let norm: f64 = sp.e0.iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
        assert!(sp.e0[0].im.abs() < 1e-15 && sp.e0[0].re > 0.0);
    }

    #[test]
    fn square_eigenvector() {
        let sp = spectral_pair(&m(&[vec![0, 1], vec![-1, 0]])).unwrap();
        assert!((sp.lambda - 1.0).abs() < 1e-12);
        let expected = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)];
        assert!(collinearity_residual(&sp.e0, &expected) < 1e-12);
    }

    #[test]
    fn genus_three_lambda() {
        let sp = spectral_pair(&m(&[
            vec![0, 1, 1, 1],
            vec![-1, 0, 0, -1],
            vec![-1, 0, 0, -1],
            vec![-1, 1, 1, 0],
        ]))
        .unwrap();
        assert!((sp.lambda - 5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn wrong_rank_is_rejected() {
        let c = m(&[
            vec![0, 1, 0, 0],
            vec![-1, 0, 0, 0],
            vec![0, 0, 0, 1],
            vec![0, 0, -1, 0],
        ]);
        assert_eq!(spectral_pair(&c), Err(Error::RankNot2(4)));
        assert_eq!(
            spectral_pair(&m(&[vec![0, 0], vec![0, 0]])),
            Err(Error::RankNot2(0))
        );
    }
}
