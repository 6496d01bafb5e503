use serde::{Deserialize, Serialize};

use super::border::FaceLoop;
use super::{build_faces, CurveSystem};

/// Cell counts, components and genus of the surface rebuilt from a system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceReport {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub faces: Vec<FaceLoop>,
    /// Component id of each curve, numbered by first appearance.
    pub component_assignment: Vec<usize>,
    /// Genus of each component.
    pub genus: Vec<i64>,
    pub connected: bool,
}

impl SurfaceReport {
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edge_count as i64 + self.faces.len() as i64
    }

    /// Sum of the component genera.
    pub fn total_genus(&self) -> i64 {
        self.genus.iter().sum()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Components by union-find on curves sharing a label.
pub(crate) fn curve_components(system: &CurveSystem) -> Vec<usize> {
    let m = system.curve_count();
    let mut uf = UnionFind((0..m).collect());
    for idx in 0..system.label_count() {
        let (a, b) = system.crossing_curves(idx);
        uf.union(a, b);
    }
    let mut ids = vec![usize::MAX; m];
    let mut next = 0;
    (0..m)
        .map(|c| {
            let r = uf.find(c);
            if ids[r] == usize::MAX {
                ids[r] = next;
                next += 1;
            }
            ids[r]
        })
        .collect()
}

pub fn surface_report(system: &CurveSystem) -> SurfaceReport {
    let faces = build_faces(system);
    let face_ids = system.face_ids();
    let comp = curve_components(system);
    let count = comp.iter().copied().max().map_or(0, |c| c + 1);

    let mut v = vec![0i64; count];
    let mut e = vec![0i64; count];
    let mut f = vec![0i64; count];
    for idx in 0..system.label_count() {
        v[comp[system.crossing_curves(idx).0]] += 1;
    }
    for (ci, c) in system.curves().iter().enumerate() {
        e[comp[ci]] += c.len() as i64;
    }
    for face in &face_ids {
        f[comp[face[0].curve]] += 1;
    }
    let genus = (0..count)
        .map(|c| {
            let chi = v[c] - e[c] + f[c];
            debug_assert!(
                chi % 2 == 0 && chi <= 2,
                "component Euler characteristic {chi}"
            );
            (2 - chi) / 2
        })
        .collect();

    SurfaceReport {
        vertex_count: system.label_count(),
        edge_count: system.edge_count(),
        faces,
        component_assignment: comp,
        genus,
        connected: count == 1,
    }
}
