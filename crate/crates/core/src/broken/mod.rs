//! Combinatorial types of broken strips and discs, their virtual dimension and the
//! rigidity classification.
//!
//! Levels run from the innermost (`in`) through the necks (1, 2, …) to `out`.

mod enumerate;

pub use enumerate::{enumerate_types, enumerate_types_of_kind, EnumerationBounds, MAX_TYPES};

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::index::{disc_index, IndexData};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Strip,
    DiscWithPointConstraint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Disc,
    Sphere,
    Strip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LevelLabel {
    In,
    Neck(u32),
    Out,
}

impl fmt::Display for LevelLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelLabel::In => f.write_str("in"),
            LevelLabel::Neck(k) => write!(f, "{k}"),
            LevelLabel::Out => f.write_str("out"),
        }
    }
}

impl Serialize for LevelLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            LevelLabel::Neck(k) => s.serialize_u32(*k),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for LevelLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(u32),
            Name(String),
        }
        match Raw::deserialize(d)? {
            Raw::Number(0) => Err(serde::de::Error::custom("neck labels start at 1")),
            Raw::Number(k) => Ok(LevelLabel::Neck(k)),
            Raw::Name(s) if s == "in" => Ok(LevelLabel::In),
            Raw::Name(s) if s == "out" => Ok(LevelLabel::Out),
            Raw::Name(s) => s
                .parse::<u32>()
                .ok()
                .filter(|k| *k > 0)
                .map(LevelLabel::Neck)
                .ok_or_else(|| serde::de::Error::custom(format!("unknown level label {s:?}"))),
        }
    }
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub shape: Shape,
    /// Reeb chord multiplicities.
    #[serde(default)]
    pub boundary_punctures: Vec<u32>,
    /// Reeb orbit multiplicities.
    #[serde(default)]
    pub interior_punctures: Vec<u32>,
    #[serde(default = "yes")]
    pub nontrivial: bool,
    #[serde(default)]
    pub touches_critical_locus: bool,
    #[serde(default)]
    pub markings: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index_data: Option<IndexData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<i64>,
    #[serde(default)]
    pub aut: u64,
}

impl Component {
    /// Explicit index wins over index data.
    pub fn index_value(&self, n: u32) -> Result<i64> {
        if let Some(i) = self.index {
            return Ok(i);
        }
        let Some(d) = &self.index_data else {
            return Err(Error::Structural("component carries neither index data nor an index".into()));
        };
        d.validate()?;
        if d.n != n {
            return Err(Error::Structural(format!("index data has n = {}, expected {n}", d.n)));
        }
        Ok(disc_index(d))
    }

    fn stabilizes(&self) -> bool {
        self.nontrivial || self.markings >= 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Level {
    pub label: LevelLabel,
    pub components: Vec<Component>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PunctureKind {
    #[default]
    Boundary,
    Interior,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PunctureRef {
    pub level: usize,
    pub component: usize,
    pub puncture: usize,
    #[serde(default)]
    pub kind: PunctureKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    pub lower: PunctureRef,
    pub upper: PunctureRef,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombType {
    pub kind: Kind,
    pub levels: Vec<Level>,
    #[serde(default)]
    pub matchings: Vec<Matching>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<String>,
}

fn rank(label: LevelLabel, necks: u32) -> u32 {
    match label {
        LevelLabel::In => 0,
        LevelLabel::Neck(k) => k,
        LevelLabel::Out => necks + 1,
    }
}

impl CombType {
    fn neck_count(&self) -> u32 {
        self.levels
            .iter()
            .filter(|l| matches!(l.label, LevelLabel::Neck(_)))
            .count() as u32
    }

    fn multiplicity(&self, r: &PunctureRef) -> Option<u32> {
        let c = self.levels.get(r.level)?.components.get(r.component)?;
        match r.kind {
            PunctureKind::Boundary => c.boundary_punctures.get(r.puncture).copied(),
            PunctureKind::Interior => c.interior_punctures.get(r.puncture).copied(),
        }
    }

    pub fn puncture_count(&self) -> usize {
        self.matchings.len()
    }

    /// Components of the innermost level, when it is labelled `in`.
    fn inner(&self) -> &[Component] {
        match self.levels.first() {
            Some(l) if l.label == LevelLabel::In => &l.components,
            _ => &[],
        }
    }
}

pub fn validate_type(t: &CombType) -> ValidationReport {
    let mut v = Vec::new();
    if t.levels.is_empty() {
        v.push("a type needs at least one level".to_string());
    }
    let necks = t.neck_count();

    // Labels: in < 1 < 2 < … < out, necks numbered consecutively.
    let ranks: Vec<u32> = t.levels.iter().map(|l| rank(l.label, necks)).collect();
    if ranks.windows(2).any(|w| w[0] >= w[1]) {
        v.push("level labels must run in, 1, 2, ..., out without repeats".into());
    }
    let neck_labels: Vec<u32> = t
        .levels
        .iter()
        .filter_map(|l| match l.label {
            LevelLabel::Neck(k) => Some(k),
            _ => None,
        })
        .collect();
    if neck_labels.iter().enumerate().any(|(i, k)| *k != i as u32 + 1) {
        v.push("neck levels must be numbered 1..k".into());
    }
    for (i, l) in t.levels.iter().enumerate() {
        if l.components.is_empty() {
            v.push(format!("level {} has no components", l.label));
        }
        for (j, c) in l.components.iter().enumerate() {
            if c.boundary_punctures.iter().chain(&c.interior_punctures).any(|m| *m == 0) {
                v.push(format!("component {j} of level {} has a puncture of multiplicity 0", l.label));
            }
            if let Some(d) = &c.index_data {
                if let Err(e) = d.validate() {
                    v.push(format!("component {j} of level {}: {e}", l.label));
                }
            }
            if c.shape == Shape::Strip && i + 1 != t.levels.len() {
                v.push(format!("strip component {j} sits in level {}, not the outer level", l.label));
            }
        }
    }

    // Matchings.
    let mut used = BTreeSet::new();
    for (m, pair) in t.matchings.iter().enumerate() {
        let (a, b) = (t.multiplicity(&pair.lower), t.multiplicity(&pair.upper));
        let (Some(a), Some(b)) = (a, b) else {
            v.push(format!("matching {m} references a missing puncture"));
            continue;
        };
        for end in [pair.lower, pair.upper] {
            if !used.insert(end) {
                v.push(format!("matching {m} reuses puncture {end:?}"));
            }
        }
        if pair.lower.kind != pair.upper.kind {
            v.push(format!("matching {m}: asymptote mismatch, chord matched to orbit"));
        } else if a != b {
            v.push(format!("matching {m}: asymptote mismatch, multiplicities {a} and {b}"));
        }
        let (ra, rb) = (ranks[pair.lower.level], ranks[pair.upper.level]);
        if ra == rb {
            v.push(format!("matching {m} joins two punctures in the same level"));
        } else if ra.abs_diff(rb) > 1 {
            v.push(format!("matching {m}: labels differ by more than 1"));
        }
    }
    for (i, l) in t.levels.iter().enumerate() {
        for (j, c) in l.components.iter().enumerate() {
            let refs = (0..c.boundary_punctures.len())
                .map(|p| (p, PunctureKind::Boundary))
                .chain((0..c.interior_punctures.len()).map(|p| (p, PunctureKind::Interior)));
            for (p, kind) in refs {
                let r = PunctureRef { level: i, component: j, puncture: p, kind };
                if !used.contains(&r) {
                    v.push(format!("puncture {p} of component {j} in level {} is unmatched", l.label));
                }
            }
        }
    }

    // Outer piece.
    let strips = t
        .levels
        .iter()
        .flat_map(|l| &l.components)
        .filter(|c| c.shape == Shape::Strip)
        .count();
    match t.kind {
        Kind::Strip => {
            let outer_strip = t
                .levels
                .last()
                .is_some_and(|l| l.components.iter().any(|c| c.shape == Shape::Strip));
            if strips != 1 || !outer_strip {
                v.push(format!("a broken strip needs exactly one outer strip component, found {strips}"));
            }
        }
        Kind::DiscWithPointConstraint => {
            if strips != 0 {
                v.push("a broken disc has no strip components".into());
            }
        }
    }

    // Stability of neck levels.
    for l in &t.levels {
        if matches!(l.label, LevelLabel::Neck(_)) && !l.components.iter().any(Component::stabilizes) {
            v.push(format!(
                "stability clause: neck level {} has only trivial components and no markings",
                l.label
            ));
        }
    }

    // Connectivity through the matchings.
    let nodes: Vec<(usize, usize)> = t
        .levels
        .iter()
        .enumerate()
        .flat_map(|(i, l)| (0..l.components.len()).map(move |j| (i, j)))
        .collect();
    if !nodes.is_empty() {
        let mut seen = BTreeSet::from([nodes[0]]);
        let mut stack = vec![nodes[0]];
        while let Some(x) = stack.pop() {
            for m in &t.matchings {
                let (a, b) = ((m.lower.level, m.lower.component), (m.upper.level, m.upper.component));
                for (from, to) in [(a, b), (b, a)] {
                    if from == x && seen.insert(to) {
                        stack.push(to);
                    }
                }
            }
        }
        if seen.len() != nodes.len() {
            v.push("components are not connected by the matchings".into());
        }
    }

    ValidationReport {
        valid: v.is_empty(),
        violations: v,
    }
}

/// Σ ind − |P|(n − 1) − Σ aut, and a further −n for a point constraint.
/// Rigid means this is 0.
pub fn type_virtual_dimension(t: &CombType, n: u32) -> Result<i64> {
    if n < 2 {
        return Err(Error::Domain(format!("n must be at least 2, got {n}")));
    }
    let mut total = 0i64;
    for l in &t.levels {
        for c in &l.components {
            total += c.index_value(n)? - c.aut as i64;
        }
    }
    total -= t.puncture_count() as i64 * (n as i64 - 1);
    if t.kind == Kind::DiscWithPointConstraint {
        total -= n as i64;
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "PascalCase")]
pub enum Status {
    Rigid,
    HighIndex,
    Excluded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReasonTag {
    /// Rigid, with only elementary inner discs.
    Elementary,
    /// Expected dimension above zero.
    IndexAboveThreshold,
    /// Expected dimension below zero: empty for regular data.
    NegativeIndex,
    /// A stable neck level can be translated, giving a one-parameter family.
    TranslationDeformation,
    /// An inner piece meets the critical locus of π_m.
    CriticalLocus,
    /// An inner disc has other than one puncture, or a non-minimal chord.
    NonElementaryInner,
}

impl fmt::Display for ReasonTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReasonTag::Elementary => "elementary",
            ReasonTag::IndexAboveThreshold => "index above threshold",
            ReasonTag::NegativeIndex => "negative index",
            ReasonTag::TranslationDeformation => "translation deformation",
            ReasonTag::CriticalLocus => "critical locus",
            ReasonTag::NonElementaryInner => "non-elementary inner",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub reason: ReasonTag,
    pub detail: String,
    /// Expected dimension from [`type_virtual_dimension`].
    pub dimension: i64,
}

/// Classifies a valid type. Rigid-by-index types are checked in order for level
/// count, critical contact and elementary inner discs.
pub fn classify(t: &CombType, n: u32) -> Result<Verdict> {
    let report = validate_type(t);
    if !report.valid {
        return Err(Error::Structural(format!("invalid type: {}", report.violations.join("; "))));
    }
    let dim = type_virtual_dimension(t, n)?;
    let verdict = |status, reason, detail: String| Verdict { status, reason, detail, dimension: dim };
    if dim > 0 {
        return Ok(verdict(Status::HighIndex, ReasonTag::IndexAboveThreshold, format!("expected dimension {dim}")));
    }
    if dim < 0 {
        return Ok(verdict(Status::Excluded, ReasonTag::NegativeIndex, format!("expected dimension {dim}")));
    }
    let stable_necks = t
        .levels
        .iter()
        .filter(|l| matches!(l.label, LevelLabel::Neck(_)) && l.components.iter().any(Component::stabilizes))
        .count();
    if t.levels.len() > 2 && stable_necks > 0 {
        return Ok(verdict(
            Status::Excluded,
            ReasonTag::TranslationDeformation,
            format!("{} levels; translating a neck level deforms the type", t.levels.len()),
        ));
    }
    if let Some(j) = t.inner().iter().position(|c| c.touches_critical_locus) {
        return Ok(verdict(
            Status::Excluded,
            ReasonTag::CriticalLocus,
            format!("inner component {j} touches the critical locus"),
        ));
    }
    for (j, c) in t.inner().iter().enumerate() {
        if c.shape != Shape::Disc {
            continue;
        }
        if c.boundary_punctures.len() != 1 || c.boundary_punctures[0] > 1 {
            return Ok(verdict(
                Status::Excluded,
                ReasonTag::NonElementaryInner,
                format!("inner disc {j} has boundary punctures {:?}", c.boundary_punctures),
            ));
        }
    }
    Ok(verdict(Status::Rigid, ReasonTag::Elementary, "two levels with elementary inner discs".into()))
}
