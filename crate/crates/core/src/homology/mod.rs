//! Generalized intersection matrix, exact rank, integral homology coordinates,
//! essentiality and the spectral pair used for canonical edge data.

mod cellular;
mod snf;
mod spectral;

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::ccs::{surface_report, CurveSystem};
use crate::error::{Error, Result};

pub use cellular::{homology_coordinates, HomologyCoordinates};
pub use snf::{smith_normal_form, IntMatrix, Snf};
pub use spectral::{
    apply as apply_matrix, collinearity_residual, spectral_pair, SpectralPair, EIGEN_TOL,
};

/// Skew-symmetric integer matrix of algebraic intersection numbers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntersectionMatrix {
    n: usize,
    c: Vec<i64>,
}

impl IntersectionMatrix {
    /// Build from rows; fails unless square, skew-symmetric with zero diagonal.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSkew);
        }
        let c: Vec<i64> = rows.iter().flatten().copied().collect();
        let m = IntersectionMatrix { n, c };
        for i in 0..n {
            for j in 0..n {
                if m.get(i, j) != -m.get(j, i) {
                    return Err(Error::NotSkew);
                }
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.c[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.c.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.c[i * self.n..(i + 1) * self.n]
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> i64 {
        self.c.iter().map(|v| v.abs()).max().unwrap_or(0)
    }

    /// Sum of squares of all entries.
    pub fn frobenius_sq(&self) -> i64 {
        self.c.iter().map(|v| v * v).sum()
    }

    /// Pairs `i < j` with `c_ij != 0`.
    pub fn constrained_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n)
            .flat_map(move |i| (i + 1..self.n).map(move |j| (i, j)))
            .filter(move |&(i, j)| self.get(i, j) != 0)
    }

    /// Conjugate by a permutation: entry `(i, j)` of the result is `c[p[i]][p[j]]`.
    pub fn permuted(&self, p: &[usize]) -> Self {
        let n = self.n;
        let mut c = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                c[i * n + j] = self.get(p[i], p[j]);
            }
        }
        IntersectionMatrix { n, c }
    }
}

impl fmt::Display for IntersectionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|v| format!("{v:3}")).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// `c_ij` = #(+k on i, -k on j) - #(-k on i, +k on j).
pub fn intersection_matrix(system: &CurveSystem) -> IntersectionMatrix {
    let n = system.curve_count();
    let mut c = vec![0i64; n * n];
    for idx in 0..system.label_count() {
        let (plus, minus) = system.crossing_curves(idx);
        c[plus * n + minus] += 1;
        c[minus * n + plus] -= 1;
    }
    IntersectionMatrix { n, c }
}

/// Exact rank over the rationals (fraction-free Bareiss elimination).
pub fn matrix_rank(m: &IntersectionMatrix) -> usize {
    let n = m.n();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| m.row(i).iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..n {
        let Some(p) = (rank..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..n {
            for k in col + 1..n {
                let v = (&a[rank][col] * &a[r][k] - &a[r][col] * &a[rank][k]) / &prev;
                a[r][k] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
        if rank == n {
            break;
        }
    }
    rank
}

/// Why a system fails to be essential.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EssentialityFailure {
    NotConnected,
    #[serde(rename = "genus-not-1")]
    GenusNot1 {
        genus: i64,
    },
    RankNot2 {
        rank: usize,
    },
    NullHomologousCurve {
        curve: usize,
    },
    OppositeSignPair {
        i: usize,
        j: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EssentialityReport {
    pub essential: bool,
    pub reasons: Vec<EssentialityFailure>,
}

/// Decide essentiality algebraically: connected, genus 1, rank 2, no zero row,
/// and every pair of curves crosses with a single sign.
pub fn essentiality(system: &CurveSystem) -> EssentialityReport {
    let mut reasons = Vec::new();
    let report = surface_report(system);
    if !report.connected {
        reasons.push(EssentialityFailure::NotConnected);
    }
    if report.genus.iter().any(|&g| g != 1) {
        reasons.push(EssentialityFailure::GenusNot1 {
            genus: report.total_genus(),
        });
    }
    let c = intersection_matrix(system);
    let rank = matrix_rank(&c);
    if rank != 2 {
        reasons.push(EssentialityFailure::RankNot2 { rank });
    }
    for i in 0..c.n() {
        if c.row(i).iter().all(|&v| v == 0) {
            reasons.push(EssentialityFailure::NullHomologousCurve { curve: i });
        }
    }
    let m = system.curve_count();
    let mut positive = vec![false; m * m];
    for idx in 0..system.label_count() {
        let (p, q) = system.crossing_curves(idx);
        positive[p * m + q] = true;
    }
    for i in 0..m {
        for j in i + 1..m {
            if positive[i * m + j] && positive[j * m + i] {
                reasons.push(EssentialityFailure::OppositeSignPair { i, j });
            }
        }
    }
    EssentialityReport {
        essential: reasons.is_empty(),
        reasons,
    }
}
