//! JSON interchange formats.
//!
//! Field names here are normative for the repo: tile sets, assembly dumps,
//! Turing machine descriptions and macro-tile maps all round-trip through
//! these structures. Object schemas carry a `formatVersion`.

use crate::assembly::Assembly;
use crate::grid::{pt, Dir, Point};
use crate::model::{Glue, ModelError, SystemClass, TileSetBuilder, TileSystem};
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct GlueJson {
    pub label: String,
    pub strength: i32,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct TileJson {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub north: Option<GlueJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub east: Option<GlueJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub south: Option<GlueJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub west: Option<GlueJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct SeedJson {
    pub x: i32,
    pub y: i32,
    pub tile: String,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct TileSystemJson {
    #[serde(rename = "formatVersion", default = "default_version")]
    pub format_version: u32,
    pub class: String,
    pub temperature: i32,
    #[serde(rename = "negLabel")]
    pub neg_label: Option<String>,
    #[serde(rename = "negStrength")]
    pub neg_strength: i32,
    pub tiles: Vec<TileJson>,
    pub seed: Vec<SeedJson>,
}

fn default_version() -> u32 {
    FORMAT_VERSION
}

fn glue_json(g: Option<Glue>) -> Option<GlueJson> {
    g.map(|g| GlueJson { label: g.label, strength: g.strength })
}

pub fn system_to_json(sys: &TileSystem) -> TileSystemJson {
    let mut tiles = Vec::new();
    for (id, data) in sys.tiles.tiles() {
        tiles.push(TileJson {
            id: data.name.clone(),
            north: glue_json(sys.tiles.glue_of(id, Dir::North)),
            east: glue_json(sys.tiles.glue_of(id, Dir::East)),
            south: glue_json(sys.tiles.glue_of(id, Dir::South)),
            west: glue_json(sys.tiles.glue_of(id, Dir::West)),
        });
    }
    let seed = sys
        .seed
        .iter()
        .map(|&(p, t)| SeedJson { x: p.x, y: p.y, tile: sys.tiles.tile(t).name.clone() })
        .collect();
    TileSystemJson {
        format_version: FORMAT_VERSION,
        class: sys.class.as_str().to_string(),
        temperature: sys.temperature,
        neg_label: sys.neg_label_name().map(|s| s.to_string()),
        neg_strength: sys.neg_strength,
        tiles,
        seed,
    }
}

pub fn system_from_json(j: &TileSystemJson) -> Result<TileSystem, ModelError> {
    let class = match j.class.as_str() {
        "rgtas" => SystemClass::RgTas,
        "prgtas" => SystemClass::PrgTas,
        "plain" => SystemClass::Plain,
        other => return Err(ModelError::Invalid(format!("unknown class `{other}`"))),
    };
    let mut b = TileSetBuilder::new();
    let to_glue = |g: &Option<GlueJson>| g.as_ref().map(|g| Glue::new(g.label.clone(), g.strength));
    for t in &j.tiles {
        b.add_tile(
            t.id.clone(),
            [to_glue(&t.north), to_glue(&t.east), to_glue(&t.south), to_glue(&t.west)],
        )?;
    }
    let tiles = b.finish();
    let neg_label = match &j.neg_label {
        Some(name) => Some(
            tiles
                .label_id(name)
                .ok_or_else(|| ModelError::Invalid(format!("negLabel `{name}` not used by any tile")))?,
        ),
        None => None,
    };
    let mut seed = Vec::new();
    for s in &j.seed {
        let t = tiles
            .tile_by_name(&s.tile)
            .ok_or_else(|| ModelError::UnknownTile(s.tile.clone()))?;
        seed.push((pt(s.x, s.y), t));
    }
    Ok(TileSystem { tiles, seed, temperature: j.temperature, class, neg_label, neg_strength: j.neg_strength })
}

/// One placement of an assembly dump. `step` is the placement index in the
/// run order (seed tiles keep their seed index).
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct PlacementJson {
    pub x: i32,
    pub y: i32,
    pub tile: String,
    pub step: usize,
}

/// Assembly dump: a bare array of placements, in placement order.
pub fn assembly_to_json(sys: &TileSystem, asm: &Assembly) -> Vec<PlacementJson> {
    asm.order()
        .iter()
        .enumerate()
        .map(|(step, &(p, t))| PlacementJson {
            x: p.x,
            y: p.y,
            tile: sys.tiles.tile(t).name.clone(),
            step,
        })
        .collect()
}

/// Construction plan: the intended tile for every position of the target
/// assembly. Used by the no-unintended-attachment checks.
#[derive(Serialize, Deserialize, Clone, Debug, Default)]
pub struct PlanJson {
    #[serde(rename = "formatVersion", default = "default_version")]
    pub format_version: u32,
    pub placements: Vec<PlanEntryJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct PlanEntryJson {
    pub x: i32,
    pub y: i32,
    pub tile: String,
}

/// Turing machine description.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct TmJson {
    #[serde(rename = "formatVersion", default = "default_version")]
    pub format_version: u32,
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    pub blank: String,
    pub start: String,
    pub halts: Vec<String>,
    pub delta: Vec<TmRuleJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct TmRuleJson {
    pub state: String,
    pub read: String,
    pub write: String,
    /// "L" or "R"
    pub r#move: String,
    pub next: String,
}

/// Macro-tile map: segment boundaries and the simulated placement per segment.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct MacroMapJson {
    #[serde(rename = "formatVersion", default = "default_version")]
    pub format_version: u32,
    pub scale: usize,
    pub boundaries: Vec<usize>,
    pub segments: Vec<SegmentJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct SegmentJson {
    #[serde(rename = "srcTile")]
    pub src_tile: String,
    pub x: i32,
    pub y: i32,
}

pub fn plan_to_json(sys: &TileSystem, plan: &[(Point, crate::model::TileId)]) -> PlanJson {
    PlanJson {
        format_version: FORMAT_VERSION,
        placements: plan
            .iter()
            .map(|&(p, t)| PlanEntryJson { x: p.x, y: p.y, tile: sys.tiles.tile(t).name.clone() })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::pt;

    #[test]
    fn tile_system_round_trips() {
        let mut b = TileSetBuilder::new();
        b.add_tile(
            "seed",
            [Some(Glue::new("up", 1)), Some(Glue::new("neg", -1)), None, None],
        )
        .unwrap();
        b.add_tile("t", [None, None, Some(Glue::new("up", 1)), None]).unwrap();
        let tiles = b.finish();
        let neg = tiles.label_id("neg");
        let sys = TileSystem {
            tiles,
            seed: vec![(pt(0, 0), 0)],
            temperature: 1,
            class: SystemClass::PrgTas,
            neg_label: neg,
            neg_strength: -2,
        };
        let j = system_to_json(&sys);
        let text = serde_json::to_string_pretty(&j).unwrap();
        let j2: TileSystemJson = serde_json::from_str(&text).unwrap();
        let sys2 = system_from_json(&j2).unwrap();
        assert_eq!(sys2.temperature, 1);
        assert_eq!(sys2.class, SystemClass::PrgTas);
        assert_eq!(sys2.neg_strength, -2);
        assert_eq!(sys2.tiles.len(), 2);
        assert_eq!(sys2.seed.len(), 1);
        let j3 = system_to_json(&sys2);
        assert_eq!(serde_json::to_string(&j).unwrap(), serde_json::to_string(&j3).unwrap());
    }
}
