//! Borders, the successor operation and face loops.
//!
//! Every curve edge `[x, x⁺]` has a left border and a right border `-[x, x⁺]`.
//! Following a border to its end and turning left at the crossing gives its
//! successor; the orbits of the successor map are the boundaries of the faces.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{CurveSystem, SignedLabel};
use crate::error::{Error, Result};

/// A left (`negated == false`) or right border of the curve edge `start -> end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Border {
    pub negated: bool,
    pub start: SignedLabel,
    pub end: SignedLabel,
}

impl fmt::Display for Border {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.negated { "-" } else { "" };
        write!(f, "{sign}[{},{}]", self.start, self.end)
    }
}

/// Position-based border handle: the edge leaving `pos` on `curve`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct BorderId {
    pub curve: usize,
    pub pos: usize,
    pub right: bool,
}

/// The crossing at which a border hands over to its successor, and which of the
/// four successor rules applied (1..=4).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Turn {
    /// Internal label index.
    pub label: usize,
    pub case: u8,
}

/// A cyclic sequence of borders closed under the successor map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceLoop {
    pub borders: Vec<Border>,
}

impl FaceLoop {
    pub fn len(&self) -> usize {
        self.borders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.borders.is_empty()
    }
}

impl fmt::Display for FaceLoop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.borders.iter().map(|b| b.to_string()).collect();
        write!(f, "{}", parts.join(" -> "))
    }
}

impl CurveSystem {
    pub(crate) fn border_ids(&self) -> Vec<BorderId> {
        let mut out = Vec::with_capacity(2 * self.edge_count());
        for right in [false, true] {
            for (curve, c) in self.curves.iter().enumerate() {
                for pos in 0..c.len() {
                    out.push(BorderId { curve, pos, right });
                }
            }
        }
        out
    }

    pub(crate) fn border(&self, id: BorderId) -> Border {
        Border {
            negated: id.right,
            start: self.entry(id.curve, id.pos),
            end: self.entry(id.curve, id.pos + 1),
        }
    }

    pub(crate) fn border_id(&self, b: &Border) -> Result<BorderId> {
        let slot = self.slot(b.start)?;
        let end = self.entry(slot.curve, slot.pos + 1);
        if end != b.end {
            self.slot(b.end)?;
            return Err(Error::LabelNotFound(b.end.value()));
        }
        Ok(BorderId {
            curve: slot.curve,
            pos: slot.pos,
            right: b.negated,
        })
    }

    /// Successor of a border together with the turn taken.
    pub(crate) fn successor_id(&self, id: BorderId) -> (BorderId, Turn) {
        if !id.right {
            // Left borders hand over at their end point.
            let end = self.entry(id.curve, id.pos + 1);
            let idx = self.index[&end.label()];
            let [plus, minus] = self.slots_of(idx);
            if end.is_positive() {
                // [k⁻, k] -> [-k, (-k)⁺]
                let next = BorderId {
                    curve: minus.curve,
                    pos: minus.pos,
                    right: false,
                };
                (
                    next,
                    Turn {
                        label: idx,
                        case: 1,
                    },
                )
            } else {
                // [(-k)⁻, -k] -> -[k⁻, k]
                let next = BorderId {
                    curve: plus.curve,
                    pos: self.prev_pos(plus.curve, plus.pos),
                    right: true,
                };
                (
                    next,
                    Turn {
                        label: idx,
                        case: 2,
                    },
                )
            }
        } else {
            // Right borders are walked backwards and hand over at their start.
            let start = self.entry(id.curve, id.pos);
            let idx = self.index[&start.label()];
            let [plus, minus] = self.slots_of(idx);
            if start.is_positive() {
                // -[k, k⁺] -> -[(-k)⁻, -k]
                let next = BorderId {
                    curve: minus.curve,
                    pos: self.prev_pos(minus.curve, minus.pos),
                    right: true,
                };
                (
                    next,
                    Turn {
                        label: idx,
                        case: 3,
                    },
                )
            } else {
                // -[-k, (-k)⁺] -> [k, k⁺]
                let next = BorderId {
                    curve: plus.curve,
                    pos: plus.pos,
                    right: false,
                };
                (
                    next,
                    Turn {
                        label: idx,
                        case: 4,
                    },
                )
            }
        }
    }

    pub(crate) fn predecessor_id(&self, id: BorderId) -> BorderId {
        if !id.right {
            let start = self.entry(id.curve, id.pos);
            let [plus, minus] = self.slots_of(self.index[&start.label()]);
            if start.is_positive() {
                // came from -[-k, (-k)⁺]
                BorderId {
                    curve: minus.curve,
                    pos: minus.pos,
                    right: true,
                }
            } else {
                // came from [k⁻, k]
                BorderId {
                    curve: plus.curve,
                    pos: self.prev_pos(plus.curve, plus.pos),
                    right: false,
                }
            }
        } else {
            let end = self.entry(id.curve, id.pos + 1);
            let [plus, minus] = self.slots_of(self.index[&end.label()]);
            if end.is_positive() {
                // came from [(-k)⁻, -k]
                BorderId {
                    curve: minus.curve,
                    pos: self.prev_pos(minus.curve, minus.pos),
                    right: false,
                }
            } else {
                // came from -[k, k⁺]
                BorderId {
                    curve: plus.curve,
                    pos: plus.pos,
                    right: true,
                }
            }
        }
    }

    /// Successor of `b`.
    pub fn successor(&self, b: &Border) -> Result<Border> {
        let id = self.border_id(b)?;
        Ok(self.border(self.successor_id(id).0))
    }

    /// Inverse of [`CurveSystem::successor`].
    pub fn predecessor(&self, b: &Border) -> Result<Border> {
        let id = self.border_id(b)?;
        Ok(self.border(self.predecessor_id(id)))
    }

    /// All `4n` borders.
    pub fn borders(&self) -> Vec<Border> {
        self.border_ids()
            .into_iter()
            .map(|id| self.border(id))
            .collect()
    }

    /// Face loops as border handles, each rotated to start at its minimal border,
    /// sorted by that border.
    pub(crate) fn face_ids(&self) -> Vec<Vec<BorderId>> {
        let ids = self.border_ids();
        let pos_of = |id: BorderId| -> usize {
            let base = self.edge_index(id.curve, id.pos);
            if id.right {
                base + self.edge_count()
            } else {
                base
            }
        };
        let mut seen = vec![false; ids.len()];
        let mut faces = Vec::new();
        for &start in &ids {
            if seen[pos_of(start)] {
                continue;
            }
            let mut face = Vec::new();
            let mut cur = start;
            while !seen[pos_of(cur)] {
                seen[pos_of(cur)] = true;
                face.push(cur);
                cur = self.successor_id(cur).0;
            }
            debug_assert_eq!(cur, start, "successor orbit must close at its start");
            let min_at = (0..face.len())
                .min_by_key(|&i| self.border(face[i]))
                .unwrap_or(0);
            face.rotate_left(min_at);
            faces.push(face);
        }
        faces.sort_by_key(|f| self.border(f[0]));
        faces
    }

    /// Turns taken around a face: `turns[t]` is the hand-over from `face[t]` to `face[t+1]`.
    pub(crate) fn face_turns(&self, face: &[BorderId]) -> Vec<Turn> {
        face.iter().map(|&b| self.successor_id(b).1).collect()
    }
}

/// Face loops of the reconstructed surface, in deterministic order.
pub fn build_faces(system: &CurveSystem) -> Vec<FaceLoop> {
    system
        .face_ids()
        .into_iter()
        .map(|f| FaceLoop {
            borders: f.into_iter().map(|id| system.border(id)).collect(),
        })
        .collect()
}
