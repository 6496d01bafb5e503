#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zonetile::ccs::{build_faces, parse_curve_system, Border};
use zonetile::generate::{random_essential_system, random_system, DEFAULT_ATTEMPTS};
use zonetile::{CurveSystem, SignedLabel};

pub const CURVE_EX: &str = "1 2 3\n-1 -4\n-2 -5\n-3 4 5\n";
pub const GENUS3: &str = "1 4 3\n-1 -2\n-4 -5\n2 -3 5\n";
pub const SQUARE: &str = "1\n-1\n";
pub const SIX: &str = "1 2 3 4\n-1 5\n-3 6\n-2 -5 -4 -6\n";

pub fn sys(text: &str) -> CurveSystem {
    parse_curve_system(text).unwrap()
}

/// Curve and label counts used for the essential system of a given seed.
/// Five curves with five labels has no torus realization and is replaced by six labels.
pub fn essential_shape(seed: u64) -> (usize, usize) {
    let m = 2 + (seed % 4) as usize;
    let n = m - 1 + ((seed / 4) % 12) as usize;
    if (m, n) == (5, 5) {
        (m, 6)
    } else {
        (m, n)
    }
}

/// The system `zonetile gen --essential` prints for this seed and shape.
pub fn essential_for_seed(seed: u64) -> CurveSystem {
    let (m, n) = essential_shape(seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_essential_system(m, n, &mut rng, DEFAULT_ATTEMPTS)
        .unwrap_or_else(|e| panic!("seed {seed} ({m} curves, {n} labels): {e}"))
}

pub fn random_for_seed(seed: u64) -> CurveSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = 2 + (seed % 5) as usize;
    let n = m + ((seed / 5) % 12) as usize;
    random_system(m, n, &mut rng).unwrap()
}

/// A dart runs along a curve edge: `(curve, pos, forward)` is the edge from
/// entry `pos` to entry `pos + 1`, traversed forward or backward.
type Dart = (usize, usize, bool);

/// Faces of the combinatorial map traced by a rotation system. Around the
/// crossing `k` (curve `i` through `+k`, curve `j` through `-k`) the outgoing
/// darts in counter-clockwise order are: forward on `i`, forward on `j`,
/// backward on `i`, backward on `j`. Each face follows a dart, reverses it at
/// the far vertex, and takes the clockwise neighbour.
pub fn rotation_system_faces(system: &CurveSystem) -> Vec<Vec<Border>> {
    let curves: Vec<Vec<SignedLabel>> = system
        .curves()
        .iter()
        .map(|c| c.entries().to_vec())
        .collect();
    let mut where_is = std::collections::HashMap::new();
    for (c, entries) in curves.iter().enumerate() {
        for (p, x) in entries.iter().enumerate() {
            where_is.insert(x.value(), (c, p));
        }
    }
    let len = |c: usize| curves[c].len();
    // darts leaving the entry (c, p)
    let leaving =
        |c: usize, p: usize| -> [Dart; 2] { [(c, p, true), (c, (p + len(c) - 1) % len(c), false)] };
    let rotation = |x: SignedLabel| -> [Dart; 4] {
        let k = x.label();
        let (ci, pi) = where_is[&k];
        let (cj, pj) = where_is[&-k];
        let [fi, bi] = leaving(ci, pi);
        let [fj, bj] = leaving(cj, pj);
        [fi, fj, bi, bj]
    };
    let head = |d: Dart| -> SignedLabel {
        let (c, p, fwd) = d;
        if fwd {
            curves[c][(p + 1) % len(c)]
        } else {
            curves[c][p]
        }
    };
    let reverse = |d: Dart| -> Dart { (d.0, d.1, !d.2) };
    let next = |d: Dart| -> Dart {
        let r = reverse(d);
        let rot = rotation(head(d));
        let at = rot
            .iter()
            .position(|&x| x == r)
            .expect("dart at its vertex");
        rot[(at + 3) % 4]
    };
    let border = |d: Dart| -> Border {
        let (c, p, fwd) = d;
        Border {
            negated: !fwd,
            start: curves[c][p],
            end: curves[c][(p + 1) % len(c)],
        }
    };

    let mut seen = std::collections::HashSet::new();
    let mut faces = Vec::new();
    for c in 0..curves.len() {
        for p in 0..len(c) {
            for fwd in [true, false] {
                let start = (c, p, fwd);
                if seen.contains(&start) {
                    continue;
                }
                let mut face = Vec::new();
                let mut d = start;
                while seen.insert(d) {
                    face.push(border(d));
                    d = next(d);
                }
                faces.push(face);
            }
        }
    }
    normalize(faces)
}

/// Faces from the successor rules, in the same normal form.
pub fn successor_faces(system: &CurveSystem) -> Vec<Vec<Border>> {
    normalize(build_faces(system).into_iter().map(|f| f.borders).collect())
}

fn normalize(mut faces: Vec<Vec<Border>>) -> Vec<Vec<Border>> {
    for f in &mut faces {
        let at = (0..f.len()).min_by_key(|&i| f[i]).unwrap_or(0);
        f.rotate_left(at);
    }
    faces.sort();
    faces
}
