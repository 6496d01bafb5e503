//! Combinatorial curve systems.
//!
//! A system is a list of cyclic vectors of signed intersection labels. Every
//! `±k` occurs exactly once overall and `+k`, `-k` never share a curve.

mod border;
mod rototiler;
mod surface;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use border::{build_faces, Border, FaceLoop, Turn};
pub use rototiler::{apply_rototiler, find_rototiler_moves};
pub use surface::{surface_report, SurfaceReport};

/// A nonzero intersection label whose sign records the crossing sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct SignedLabel(i64);

impl SignedLabel {
    pub fn new(value: i64) -> Option<Self> {
        (value != 0).then_some(SignedLabel(value))
    }

    pub fn value(self) -> i64 {
        self.0
    }

    /// The unsigned intersection label.
    pub fn label(self) -> i64 {
        self.0.abs()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    /// `+1.0` or `-1.0`.
    pub fn sign(self) -> f64 {
        if self.0 > 0 {
            1.0
        } else {
            -1.0
        }
    }
}

impl std::ops::Neg for SignedLabel {
    type Output = SignedLabel;
    fn neg(self) -> SignedLabel {
        SignedLabel(-self.0)
    }
}

impl TryFrom<i64> for SignedLabel {
    type Error = &'static str;
    fn try_from(v: i64) -> std::result::Result<Self, Self::Error> {
        SignedLabel::new(v).ok_or("labels must be nonzero")
    }
}

impl From<SignedLabel> for i64 {
    fn from(s: SignedLabel) -> i64 {
        s.0
    }
}

impl fmt::Display for SignedLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A cyclic sequence of signed labels. Equality and hashing ignore rotation.
#[derive(Debug, Clone, Eq, Serialize, Deserialize)]
pub struct Curve {
    entries: Vec<SignedLabel>,
}

impl Curve {
    pub fn new(entries: Vec<SignedLabel>) -> Self {
        Curve { entries }
    }

    /// Build from raw integers; `None` if any entry is zero.
    pub fn from_values(values: &[i64]) -> Option<Self> {
        values
            .iter()
            .map(|&v| SignedLabel::new(v))
            .collect::<Option<Vec<_>>>()
            .map(Curve::new)
    }

    pub fn entries(&self) -> &[SignedLabel] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry at cyclic position `pos`.
    pub fn at(&self, pos: usize) -> SignedLabel {
        self.entries[pos % self.entries.len()]
    }

    /// The lexicographically minimal rotation.
    pub fn canonical(&self) -> Vec<i64> {
        let vals: Vec<i64> = self.entries.iter().map(|e| e.0).collect();
        let n = vals.len();
        (0..n)
            .map(|r| {
                let mut v = vals[r..].to_vec();
                v.extend_from_slice(&vals[..r]);
                v
            })
            .min()
            .unwrap_or_default()
    }
}

impl PartialEq for Curve {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.canonical() == other.canonical()
    }
}

impl Hash for Curve {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical().hash(state);
    }
}

/// One failed condition of the curve-system definition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    TooFewCurves { found: usize },
    EmptyCurve { curve: usize },
    Duplicate { entry: i64 },
    Missing { entry: i64 },
    SameCurve { label: i64, curve: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewCurves { found } => write!(f, "need at least 2 curves, found {found}"),
            Violation::EmptyCurve { curve } => write!(f, "curve {curve} is empty"),
            Violation::Duplicate { entry } => write!(f, "{entry} appears more than once"),
            Violation::Missing { entry } => write!(f, "{entry} never appears"),
            Violation::SameCurve { label, curve } => {
                write!(f, "+{label} and -{label} both appear in curve {curve}")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Check both definition conditions and `m >= 2`.
pub fn validate(curves: &[Curve]) -> ValidationReport {
    let mut violations = Vec::new();
    if curves.len() < 2 {
        violations.push(Violation::TooFewCurves {
            found: curves.len(),
        });
    }
    let mut seen: HashMap<i64, usize> = HashMap::new();
    let mut duplicates = Vec::new();
    for (ci, curve) in curves.iter().enumerate() {
        if curve.is_empty() {
            violations.push(Violation::EmptyCurve { curve: ci });
        }
        for e in curve.entries() {
            if seen.insert(e.0, ci).is_some() && !duplicates.contains(&e.0) {
                duplicates.push(e.0);
            }
        }
    }
    duplicates.sort_unstable();
    violations.extend(
        duplicates
            .into_iter()
            .map(|entry| Violation::Duplicate { entry }),
    );

    let mut labels: Vec<i64> = seen.keys().map(|v| v.abs()).collect();
    labels.sort_unstable();
    labels.dedup();
    for &k in &labels {
        match (seen.get(&k), seen.get(&-k)) {
            (Some(&a), Some(&b)) if a == b => {
                violations.push(Violation::SameCurve { label: k, curve: a })
            }
            (Some(_), None) => violations.push(Violation::Missing { entry: -k }),
            (None, Some(_)) => violations.push(Violation::Missing { entry: k }),
            _ => {}
        }
    }
    ValidationReport { violations }
}

/// Where a signed entry sits: curve index and position within the curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Slot {
    pub curve: usize,
    pub pos: usize,
}

/// A validated combinatorial curve system.
///
/// Labels may be arbitrary distinct positive integers; internally they are
/// re-indexed `0..n` in increasing order and every output reports the originals.
#[derive(Debug, Clone)]
pub struct CurveSystem {
    curves: Vec<Curve>,
    labels: Vec<i64>,
    index: HashMap<i64, usize>,
    // slots[idx] = [slot of +k, slot of -k]
    slots: Vec<[Slot; 2]>,
}

impl PartialEq for CurveSystem {
    fn eq(&self, other: &Self) -> bool {
        self.curves == other.curves
    }
}

impl CurveSystem {
    pub fn new(curves: Vec<Curve>) -> Result<Self> {
        let report = validate(&curves);
        if !report.is_ok() {
            return Err(Error::Invalid(report));
        }
        let mut labels: Vec<i64> = curves
            .iter()
            .flat_map(|c| c.entries().iter().map(|e| e.label()))
            .collect();
        labels.sort_unstable();
        labels.dedup();
        let index: HashMap<i64, usize> = labels.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let placeholder = Slot { curve: 0, pos: 0 };
        let mut slots = vec![[placeholder; 2]; labels.len()];
        for (ci, curve) in curves.iter().enumerate() {
            for (pos, e) in curve.entries().iter().enumerate() {
                let side = if e.is_positive() { 0 } else { 1 };
                slots[index[&e.label()]][side] = Slot { curve: ci, pos };
            }
        }
        Ok(CurveSystem {
            curves,
            labels,
            index,
            slots,
        })
    }

    /// Build from nested integer vectors.
    pub fn from_values(curves: &[Vec<i64>]) -> Result<Self> {
        let mut out = Vec::with_capacity(curves.len());
        for (line, c) in curves.iter().enumerate() {
            let curve = Curve::from_values(c).ok_or_else(|| Error::Syntax {
                line: line + 1,
                column: 0,
                message: "labels must be nonzero".into(),
            })?;
            out.push(curve);
        }
        CurveSystem::new(out)
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn curve_count(&self) -> usize {
        self.curves.len()
    }

    /// Number of intersection labels `n`.
    pub fn label_count(&self) -> usize {
        self.labels.len()
    }

    /// Original labels in increasing order; position = internal index.
    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn label_index(&self, label: i64) -> Option<usize> {
        self.index.get(&label.abs()).copied()
    }

    pub(crate) fn slot(&self, entry: SignedLabel) -> Result<Slot> {
        let idx = self
            .label_index(entry.label())
            .ok_or(Error::LabelNotFound(entry.value()))?;
        Ok(self.slots[idx][if entry.is_positive() { 0 } else { 1 }])
    }

    /// Curve holding `+k` and curve holding `-k` for the label with internal index `idx`.
    pub fn crossing_curves(&self, idx: usize) -> (usize, usize) {
        (self.slots[idx][0].curve, self.slots[idx][1].curve)
    }

    pub(crate) fn slots_of(&self, idx: usize) -> [Slot; 2] {
        self.slots[idx]
    }

    /// The curve through the other branch of `entry`'s crossing.
    pub fn partner_curve(&self, entry: SignedLabel) -> Result<usize> {
        Ok(self.slot(-entry)?.curve)
    }

    pub(crate) fn entry(&self, curve: usize, pos: usize) -> SignedLabel {
        self.curves[curve].at(pos)
    }

    pub(crate) fn prev_pos(&self, curve: usize, pos: usize) -> usize {
        let len = self.curves[curve].len();
        (pos + len - 1) % len
    }

    /// Total number of curve edges, `2n`.
    pub fn edge_count(&self) -> usize {
        self.curves.iter().map(|c| c.len()).sum()
    }

    /// Flat edge index of the edge leaving position `pos` of `curve`.
    pub(crate) fn edge_index(&self, curve: usize, pos: usize) -> usize {
        self.curves[..curve].iter().map(|c| c.len()).sum::<usize>() + pos
    }

    /// Canonical `.ccs` text: one curve per line, minimal rotation, input order.
    pub fn to_ccs(&self) -> String {
        let mut out = String::new();
        for c in &self.curves {
            let line: Vec<String> = c.canonical().iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for CurveSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .curves
            .iter()
            .map(|c| {
                let vals: Vec<String> = c.entries().iter().map(|e| e.to_string()).collect();
                format!("({})", vals.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parse `.ccs` text: one curve per line, whitespace separated signed integers,
/// `#` comments, blank lines ignored.
pub fn parse_curve_system(text: &str) -> Result<CurveSystem> {
    let mut curves = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut entries = Vec::new();
        let mut rest = line;
        let mut offset = 0;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let tail = &rest[start..];
            let end = tail.find(char::is_whitespace).unwrap_or(tail.len());
            let token = &tail[..end];
            let column = line[..offset + start].chars().count() + 1;
            let value: i64 = token.parse().map_err(|_| Error::Syntax {
                line: ln + 1,
                column,
                message: format!("expected a signed integer, found {token:?}"),
            })?;
            let entry = SignedLabel::new(value).ok_or_else(|| Error::Syntax {
                line: ln + 1,
                column,
                message: "labels must be nonzero".into(),
            })?;
            entries.push(entry);
            offset += start + end;
            rest = &tail[end..];
        }
        if !entries.is_empty() {
            curves.push(Curve::new(entries));
        }
    }
    CurveSystem::new(curves)
}
