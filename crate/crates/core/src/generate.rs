//! Random curve systems for property tests and the `gen` subcommand.
//!
//! [`random_system`] draws an arbitrary valid system. [`random_essential_system`]
//! draws straight closed geodesics of rational slope on the square torus and
//! reads off their crossing pattern, then filters by the essentiality predicate.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::ccs::{Curve, CurveSystem, SignedLabel};
use crate::error::{Error, Result};
use crate::homology::essentiality;

fn build(curves: Vec<Vec<i64>>) -> Result<CurveSystem> {
    CurveSystem::new(
        curves
            .into_iter()
            .map(|c| Curve::from_values(&c).ok_or_else(|| Error::Generation("zero label".into())))
            .collect::<Result<_>>()?,
    )
}

/// Attempt cap used by the command line generator.
pub const DEFAULT_ATTEMPTS: usize = 200_000;

/// A uniformly shuffled valid system with `m` curves and labels `1..=n`.
pub fn random_system<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> Result<CurveSystem> {
    if m < 2 || 2 * n < m {
        return Err(Error::Generation(format!(
            "cannot place {n} labels on {m} curves"
        )));
    }
    let mut curves: Vec<Vec<i64>> = vec![Vec::new(); m];
    // cover every curve first, then scatter the rest
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(rng);
    let mut cover = order.into_iter();
    for k in 1..=n as i64 {
        let i = cover.next().unwrap_or_else(|| rng.gen_range(0..m));
        let j = match cover.next() {
            Some(j) => j,
            None => {
                let j = rng.gen_range(0..m - 1);
                if j >= i {
                    j + 1
                } else {
                    j
                }
            }
        };
        curves[i].push(k);
        curves[j].push(-k);
    }
    for c in &mut curves {
        c.shuffle(rng);
    }
    build(curves)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn cross(u: (i64, i64), v: (i64, i64)) -> i64 {
    u.0 * v.1 - u.1 * v.0
}

fn random_direction<R: Rng + ?Sized>(bound: i64, rng: &mut R) -> (i64, i64) {
    loop {
        let v = (rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound));
        if gcd(v.0, v.1) == 1 {
            return v;
        }
    }
}

/// Crossing parameters `(s_i, s_j)` in `[0,1)²` of two closed geodesics
/// `o + s v` on `ℝ²/ℤ²`.
fn crossings(
    (oi, vi): ((f64, f64), (i64, i64)),
    (oj, vj): ((f64, f64), (i64, i64)),
) -> Vec<(f64, f64)> {
    let d = cross(vi, vj) as f64;
    if d == 0.0 {
        return Vec::new();
    }
    let w = vi.0.abs().max(vi.1.abs()) + vj.0.abs().max(vj.1.abs()) + 1;
    let mut out = Vec::new();
    for a in -w..=w {
        for b in -w..=w {
            // s vi - t vj = r
            let r = (oj.0 - oi.0 + a as f64, oj.1 - oi.1 + b as f64);
            let s = (r.0 * vj.1 as f64 - r.1 * vj.0 as f64) / d;
            let t = -(vi.0 as f64 * r.1 - vi.1 as f64 * r.0) / d;
            if (0.0..1.0).contains(&s) && (0.0..1.0).contains(&t) {
                out.push((s, t));
            }
        }
    }
    out
}

/// One attempt at an arrangement of `m` geodesics with exactly `n` crossings.
fn geodesic_arrangement<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> Option<Vec<Vec<i64>>> {
    let pairs = (m * (m - 1) / 2).max(1) as f64;
    let bound = ((n as f64 / pairs).sqrt().ceil() as i64 + 1).max(1);
    let dirs: Vec<(i64, i64)> = (0..m).map(|_| random_direction(bound, rng)).collect();
    let mut total = 0i64;
    for i in 0..m {
        for j in i + 1..m {
            total += cross(dirs[i], dirs[j]).abs();
        }
    }
    if total != n as i64 {
        return None;
    }
    let lines: Vec<((f64, f64), (i64, i64))> = dirs
        .iter()
        .map(|&v| ((rng.gen::<f64>(), rng.gen::<f64>()), v))
        .collect();
    let mut labels: Vec<i64> = (1..=n as i64).collect();
    labels.shuffle(rng);
    let mut next = labels.into_iter();
    let mut on_curve: Vec<Vec<(f64, i64)>> = vec![Vec::new(); m];
    for i in 0..m {
        for j in i + 1..m {
            let hits = crossings(lines[i], lines[j]);
            if hits.len() as i64 != cross(dirs[i], dirs[j]).abs() {
                return None;
            }
            let sign = cross(dirs[i], dirs[j]).signum();
            for (s, t) in hits {
                let k = next.next()?;
                on_curve[i].push((s, sign * k));
                on_curve[j].push((t, -sign * k));
            }
        }
    }
    let mut curves = Vec::with_capacity(m);
    for mut entries in on_curve {
        if entries.is_empty() {
            return None;
        }
        entries.sort_by(|a, b| a.0.total_cmp(&b.0));
        let len = entries.len();
        for w in 0..len {
            let gap = (entries[(w + 1) % len].0 - entries[w].0).rem_euclid(1.0);
            if len > 1 && !(1e-9..=1.0 - 1e-9).contains(&gap) {
                return None;
            }
        }
        curves.push(entries.into_iter().map(|(_, k)| k).collect());
    }
    Some(curves)
}

/// An essential genus-1 system with `m` curves and `n` labels, drawn by
/// rejection sampling over geodesic arrangements.
pub fn random_essential_system<R: Rng + ?Sized>(
    m: usize,
    n: usize,
    rng: &mut R,
    max_attempts: usize,
) -> Result<CurveSystem> {
    if m < 2 || n == 0 {
        return Err(Error::Generation(format!(
            "no essential system with {m} curves and {n} labels"
        )));
    }
    for _ in 0..max_attempts {
        let Some(curves) = geodesic_arrangement(m, n, rng) else {
            continue;
        };
        let system = build(curves)?;
        if essentiality(&system).essential {
            return Ok(system);
        }
    }
    Err(Error::Generation(format!(
        "no essential system with {m} curves and {n} labels after {max_attempts} attempts"
    )))
}

/// `SignedLabel` values of a system, for quick inspection in tests.
pub fn entry_values(system: &CurveSystem) -> Vec<Vec<i64>> {
    system
        .curves()
        .iter()
        .map(|c| {
            c.entries()
                .iter()
                .map(|x: &SignedLabel| x.value())
                .collect()
        })
        .collect()
}
