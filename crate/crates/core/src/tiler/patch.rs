use std::ops::Range;

use num_complex::Complex64;

use super::{step, FundamentalDomain, PlacedParallelogram};
use crate::error::{Error, Result};
use crate::exec::Strategy;

/// One translated copy of the fundamental domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TileCopy {
    pub p: i64,
    pub q: i64,
    pub translate: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TilingPatch {
    pub domain: FundamentalDomain,
    pub copies: Vec<TileCopy>,
    /// Zone polylines of the base copy, one per curve, when requested.
    pub zone_polylines: Option<Vec<Vec<Complex64>>>,
}

impl TilingPatch {
    pub fn cell_count(&self) -> usize {
        self.copies.len() * self.domain.parallelograms.len()
    }

    /// Every placed parallelogram, copy by copy.
    pub fn cells(&self, strategy: Strategy) -> Vec<PlacedParallelogram> {
        let per_copy = strategy.map(&self.copies, |copy| {
            self.domain
                .parallelograms
                .iter()
                .map(|cell| cell.translated(copy.translate))
                .collect::<Vec<_>>()
        });
        per_copy.into_iter().flatten().collect()
    }

    /// Attach a polyline for every curve.
    pub fn with_overlay(mut self) -> Self {
        let lines = (0..self.domain.system.curves.len())
            .map(|i| zone_polyline(&self.domain, i).expect("index in range"))
            .collect();
        self.zone_polylines = Some(lines);
        self
    }
}

/// Copies at `p a + q b` for `p` in `p_range` and `q` in `q_range`.
pub fn replicate(
    fd: &FundamentalDomain,
    p_range: Range<i64>,
    q_range: Range<i64>,
) -> Result<TilingPatch> {
    if p_range.is_empty() || q_range.is_empty() {
        return Err(Error::EmptyRange);
    }
    let copies = p_range
        .flat_map(|p| q_range.clone().map(move |q| (p, q)))
        .map(|(p, q)| TileCopy {
            p,
            q,
            translate: fd.lattice.translate(p, q),
        })
        .collect();
    Ok(TilingPatch {
        domain: fd.clone(),
        copies,
        zone_polylines: None,
    })
}

/// Midpoints of the edges crossed by curve `i`, starting where it enters the
/// parallelogram of its first entry and ending one full period later.
pub fn zone_polyline(fd: &FundamentalDomain, i: usize) -> Result<Vec<Complex64>> {
    let len = fd.system.curves.len();
    if i >= len {
        return Err(Error::BadIndex { index: i, len });
    }
    let system = fd.curve_system();
    let e = &fd.edge_data;
    let curve = &system.curves()[i];
    let half = |pos: usize| {
        let x = curve.at(pos);
        e[system.partner_curve(x).expect("validated system")] * x.sign() / 2.0
    };
    let first = system
        .label_index(curve.at(0).label())
        .expect("label present");
    let mut center = fd.parallelograms[first].center;
    let mut points = Vec::with_capacity(curve.len() + 1);
    points.push(center - half(0));
    for pos in 0..curve.len() {
        points.push(center + half(pos));
        center += step(&system, e, i, pos);
    }
    Ok(points)
}
