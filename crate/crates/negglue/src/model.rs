//! Tiles, glues, tile sets and tile systems.
//!
//! A glue is a labeled integer strength. The glue function is diagonal: two
//! facing sides interact only when both label and declared strength agree.
//! A system may declare one negative label whose effective strength is a
//! system-level parameter (`neg_strength`), which is how prgTAS systems model
//! a repulsive force that is only guaranteed to be at least 1 in magnitude.

use crate::grid::{Dir, DIRS};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("malformed tile set: label `{label}` declared with strengths {a} and {b}")]
    MalformedTileSet { label: String, a: i32, b: i32 },
    #[error("duplicate tile id `{0}`")]
    DuplicateTileId(String),
    #[error("unknown tile id `{0}`")]
    UnknownTile(String),
    #[error("position ({x},{y}) is already occupied")]
    OccupiedPosition { x: i32, y: i32 },
    #[error("seed placement conflict at ({x},{y})")]
    SeedConflict { x: i32, y: i32 },
    #[error("row {0} is not fully formed")]
    IncompleteRow(i32),
    #[error("{0}")]
    Invalid(String),
}

/// A glue as it appears on one tile side: a label plus declared strength.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Glue {
    pub label: String,
    pub strength: i32,
}

impl Glue {
    pub fn new(label: impl Into<String>, strength: i32) -> Self {
        Glue { label: label.into(), strength }
    }
}

/// Standalone diagonal glue interaction. `neg` optionally names the system's
/// negative label together with its effective strength.
///
/// Returns 0 when either side is empty or the labels differ. Matching labels
/// with mismatched declared strengths make the tile set malformed.
pub fn interaction_strength(
    a: Option<&Glue>,
    b: Option<&Glue>,
    neg: Option<(&str, i32)>,
) -> Result<i32, ModelError> {
    match (a, b) {
        (Some(a), Some(b)) if a.label == b.label => {
            if a.strength != b.strength {
                return Err(ModelError::MalformedTileSet {
                    label: a.label.clone(),
                    a: a.strength,
                    b: b.strength,
                });
            }
            match neg {
                Some((label, s_neg)) if label == a.label => Ok(s_neg),
                _ => Ok(a.strength),
            }
        }
        _ => Ok(0),
    }
}

pub type LabelId = u32;
pub type TileId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SideGlue {
    pub label: LabelId,
    pub strength: i32,
}

#[derive(Clone, Debug)]
pub struct TileData {
    pub name: String,
    pub sides: [Option<SideGlue>; 4],
}

impl TileData {
    pub fn side(&self, d: Dir) -> Option<&SideGlue> {
        self.sides[d.index()].as_ref()
    }
}

/// An interned tile set with a validated diagonal glue function: every label
/// carries exactly one declared strength across the whole set.
#[derive(Clone, Debug, Default)]
pub struct TileSet {
    labels: Vec<String>,
    label_lookup: HashMap<String, LabelId>,
    label_strength: Vec<i32>,
    tiles: Vec<TileData>,
    tile_lookup: HashMap<String, TileId>,
    // tiles indexed by (side, label) for frontier candidate lookups
    by_side_label: HashMap<(usize, LabelId), Vec<TileId>>,
    // rank of each tile in lexicographic id order, for deterministic tie-breaks
    lex_rank: Vec<u32>,
}

impl TileSet {
    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn tile(&self, id: TileId) -> &TileData {
        &self.tiles[id as usize]
    }

    pub fn tiles(&self) -> impl Iterator<Item = (TileId, &TileData)> {
        self.tiles.iter().enumerate().map(|(i, t)| (i as TileId, t))
    }

    pub fn tile_by_name(&self, name: &str) -> Option<TileId> {
        self.tile_lookup.get(name).copied()
    }

    pub fn label_name(&self, id: LabelId) -> &str {
        &self.labels[id as usize]
    }

    pub fn label_id(&self, name: &str) -> Option<LabelId> {
        self.label_lookup.get(name).copied()
    }

    pub fn label_count(&self) -> usize {
        self.labels.len()
    }

    pub fn declared_strength(&self, id: LabelId) -> i32 {
        self.label_strength[id as usize]
    }

    pub fn lex_rank(&self, id: TileId) -> u32 {
        self.lex_rank[id as usize]
    }

    pub fn candidates(&self, side: Dir, label: LabelId) -> &[TileId] {
        self.by_side_label
            .get(&(side.index(), label))
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    /// Glue of a tile side in public (label string, strength) form.
    pub fn glue_of(&self, tile: TileId, d: Dir) -> Option<Glue> {
        self.tile(tile).side(d).map(|s| Glue {
            label: self.labels[s.label as usize].clone(),
            strength: s.strength,
        })
    }
}

/// Builder for [`TileSet`]; rejects duplicate ids and inconsistent labels.
#[derive(Default)]
pub struct TileSetBuilder {
    set: TileSet,
}

impl TileSetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern_label(&mut self, label: &str, strength: i32) -> Result<LabelId, ModelError> {
        if let Some(&id) = self.set.label_lookup.get(label) {
            let declared = self.set.label_strength[id as usize];
            if declared != strength {
                return Err(ModelError::MalformedTileSet {
                    label: label.to_string(),
                    a: declared,
                    b: strength,
                });
            }
            return Ok(id);
        }
        let id = self.set.labels.len() as LabelId;
        self.set.labels.push(label.to_string());
        self.set.label_strength.push(strength);
        self.set.label_lookup.insert(label.to_string(), id);
        Ok(id)
    }

    pub fn add_tile(
        &mut self,
        name: impl Into<String>,
        sides: [Option<Glue>; 4],
    ) -> Result<TileId, ModelError> {
        let name = name.into();
        if self.set.tile_lookup.contains_key(&name) {
            return Err(ModelError::DuplicateTileId(name));
        }
        let mut interned: [Option<SideGlue>; 4] = [None, None, None, None];
        for (i, g) in sides.into_iter().enumerate() {
            if let Some(g) = g {
                let label = self.intern_label(&g.label, g.strength)?;
                interned[i] = Some(SideGlue { label, strength: g.strength });
            }
        }
        let id = self.set.tiles.len() as TileId;
        for d in DIRS {
            if let Some(s) = interned[d.index()] {
                self.set
                    .by_side_label
                    .entry((d.index(), s.label))
                    .or_default()
                    .push(id);
            }
        }
        self.set.tiles.push(TileData { name: name.clone(), sides: interned });
        self.set.tile_lookup.insert(name, id);
        Ok(id)
    }

    pub fn finish(mut self) -> TileSet {
        let mut order: Vec<TileId> = (0..self.set.tiles.len() as TileId).collect();
        order.sort_by(|&a, &b| self.set.tiles[a as usize].name.cmp(&self.set.tiles[b as usize].name));
        let mut rank = vec![0u32; self.set.tiles.len()];
        for (r, id) in order.into_iter().enumerate() {
            rank[id as usize] = r as u32;
        }
        self.set.lex_rank = rank;
        self.set
    }
}

/// Model class tag of a tile system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SystemClass {
    Plain,
    RgTas,
    PrgTas,
}

impl SystemClass {
    pub fn as_str(self) -> &'static str {
        match self {
            SystemClass::Plain => "plain",
            SystemClass::RgTas => "rgtas",
            SystemClass::PrgTas => "prgtas",
        }
    }
}

/// A tile system: tile set, seed assembly, temperature and class metadata.
#[derive(Clone, Debug)]
pub struct TileSystem {
    pub tiles: TileSet,
    pub seed: Vec<(crate::grid::Point, TileId)>,
    pub temperature: i32,
    pub class: SystemClass,
    pub neg_label: Option<LabelId>,
    /// Effective strength of the negative glue. For an rgTAS this is -1; a
    /// prgTAS only guarantees it is <= -1 and correctness must not depend on
    /// its magnitude.
    pub neg_strength: i32,
}

impl TileSystem {
    /// Effective interaction strength between two interned sides.
    pub fn side_interaction(&self, a: Option<&SideGlue>, b: Option<&SideGlue>) -> i32 {
        match (a, b) {
            (Some(a), Some(b)) if a.label == b.label && a.strength == b.strength => {
                if Some(a.label) == self.neg_label {
                    self.neg_strength
                } else {
                    a.strength
                }
            }
            _ => 0,
        }
    }

    pub fn neg_label_name(&self) -> Option<&str> {
        self.neg_label.map(|l| self.tiles.label_name(l))
    }

    /// Re-parameterize the negative glue strength (prgTAS robustness sweeps).
    pub fn with_neg_strength(&self, s: i32) -> TileSystem {
        let mut out = self.clone();
        out.neg_strength = s;
        out
    }
}

/// One violation found by [`validate_class`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ViolationKind {
    StrengthMagnitude,
    NoNegativeGlue,
    MultipleNegativeGlues,
    NegStrengthParam,
    Temperature,
    NegLabelMismatch,
}

/// Check the constraints of the system's class tag and return all violations.
///
/// rgTAS: every declared strength has magnitude 1, there is exactly one
/// negative label, temperature is 1 and the effective negative strength is
/// exactly -1. prgTAS relaxes only the last point to <= -1. The diagonal glue
/// function itself is enforced structurally by [`TileSet`] interning.
pub fn validate_class(sys: &TileSystem) -> Vec<Violation> {
    let mut out = Vec::new();
    let restricted = matches!(sys.class, SystemClass::RgTas | SystemClass::PrgTas);
    if !restricted {
        return out;
    }
    if sys.temperature != 1 {
        out.push(Violation {
            kind: ViolationKind::Temperature,
            detail: format!("temperature {} != 1", sys.temperature),
        });
    }
    let mut neg_labels = Vec::new();
    for id in 0..sys.tiles.label_count() as LabelId {
        let s = sys.tiles.declared_strength(id);
        if s.abs() != 1 {
            out.push(Violation {
                kind: ViolationKind::StrengthMagnitude,
                detail: format!(
                    "glue `{}` has strength magnitude {} != 1",
                    sys.tiles.label_name(id),
                    s
                ),
            });
        }
        if s < 0 {
            neg_labels.push(id);
        }
    }
    match neg_labels.len() {
        0 => out.push(Violation {
            kind: ViolationKind::NoNegativeGlue,
            detail: "no negative glue type declared".into(),
        }),
        1 => {
            if sys.neg_label != Some(neg_labels[0]) {
                out.push(Violation {
                    kind: ViolationKind::NegLabelMismatch,
                    detail: format!(
                        "declared negative label does not match system negLabel (`{:?}`)",
                        sys.neg_label_name()
                    ),
                });
            }
        }
        _ => out.push(Violation {
            kind: ViolationKind::MultipleNegativeGlues,
            detail: format!(
                "multiple negative glue types: {}",
                neg_labels
                    .iter()
                    .map(|&l| sys.tiles.label_name(l))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        }),
    }
    let ok_param = match sys.class {
        SystemClass::RgTas => sys.neg_strength == -1,
        SystemClass::PrgTas => sys.neg_strength <= -1,
        SystemClass::Plain => true,
    };
    if !ok_param {
        out.push(Violation {
            kind: ViolationKind::NegStrengthParam,
            detail: format!(
                "negative strength parameter {} invalid for class {}",
                sys.neg_strength,
                sys.class.as_str()
            ),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::pt;

    fn glue(l: &str, s: i32) -> Option<Glue> {
        Some(Glue::new(l, s))
    }

    #[test]
    fn interaction_is_diagonal() {
        let a = Glue::new("a", 1);
        let b = Glue::new("b", 1);
        assert_eq!(interaction_strength(Some(&a), Some(&a), None).unwrap(), 1);
        assert_eq!(interaction_strength(Some(&a), Some(&b), None).unwrap(), 0);
        assert_eq!(interaction_strength(None, Some(&a), None).unwrap(), 0);
        assert_eq!(interaction_strength(None, None, None).unwrap(), 0);
    }

    #[test]
    fn neg_label_takes_system_strength() {
        let n = Glue::new("neg", -1);
        assert_eq!(
            interaction_strength(Some(&n), Some(&n), Some(("neg", -3))).unwrap(),
            -3
        );
    }

    #[test]
    fn mismatched_strengths_are_malformed() {
        let a = Glue::new("a", 1);
        let b = Glue::new("a", 2);
        assert!(interaction_strength(Some(&a), Some(&b), None).is_err());
    }

    #[test]
    fn builder_rejects_inconsistent_labels() {
        let mut b = TileSetBuilder::new();
        b.add_tile("t0", [glue("a", 1), None, None, None]).unwrap();
        let err = b.add_tile("t1", [glue("a", 2), None, None, None]);
        assert!(err.is_err());
    }

    #[test]
    fn validate_class_flags_magnitude_and_neg_count() {
        let mut b = TileSetBuilder::new();
        b.add_tile("t0", [glue("a", 2), glue("n1", -1), glue("n2", -1), None]).unwrap();
        let tiles = b.finish();
        let neg = tiles.label_id("n1");
        let sys = TileSystem {
            tiles,
            seed: vec![(pt(0, 0), 0)],
            temperature: 1,
            class: SystemClass::RgTas,
            neg_label: neg,
            neg_strength: -1,
        };
        let v = validate_class(&sys);
        assert!(v.iter().any(|v| v.kind == ViolationKind::StrengthMagnitude));
        assert!(v.iter().any(|v| v.kind == ViolationKind::MultipleNegativeGlues));
    }
}
