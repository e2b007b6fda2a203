//! N x N square generators for the restricted-glue classes, plus the shared
//! emission machinery and the hard-coded small-N fallback.

pub mod debug;
pub mod prg;
pub mod rg;

use crate::grid::{pt, Dir, Point};
use crate::model::{Glue, ModelError, SystemClass, TileSetBuilder, TileSystem};
use std::collections::HashMap;

/// The single negative glue label shared by all generated systems.
pub const NEG_LABEL: &str = "neg";

pub fn neg_glue() -> Glue {
    Glue::new(NEG_LABEL, -1)
}

/// Placement of a counter in the plane: a logical frame whose x grows along
/// the counter's width and y along its growth direction.
#[derive(Clone, Copy, Debug)]
pub enum Orient {
    /// logical (x, y) -> origin + (x, y); counter grows north.
    Upright { origin: Point },
    /// logical (x, y) -> (origin.x + y, origin.y - x); counter grows east
    /// with its logical-west margin on the global north side.
    EastTransposed { origin: Point },
}

impl Orient {
    pub fn point(&self, lx: i32, ly: i32) -> Point {
        match *self {
            Orient::Upright { origin } => pt(origin.x + lx, origin.y + ly),
            Orient::EastTransposed { origin } => pt(origin.x + ly, origin.y - lx),
        }
    }

    pub fn dir(&self, d: Dir) -> Dir {
        match self {
            Orient::Upright { .. } => d,
            Orient::EastTransposed { .. } => match d {
                Dir::North => Dir::East,
                Dir::East => Dir::South,
                Dir::South => Dir::West,
                Dir::West => Dir::North,
            },
        }
    }
}

/// Logical side glues of a tile before orientation.
#[derive(Clone, Debug, Default)]
pub struct LSides {
    pub n: Option<Glue>,
    pub e: Option<Glue>,
    pub s: Option<Glue>,
    pub w: Option<Glue>,
}

impl LSides {
    pub fn new(n: Option<Glue>, e: Option<Glue>, s: Option<Glue>, w: Option<Glue>) -> Self {
        LSides { n, e, s, w }
    }
}

/// Accumulates tile types (idempotently, with consistency checks) and the
/// construction plan mapping every target position to its intended tile.
pub struct Emitter {
    builder: TileSetBuilder,
    types: HashMap<String, [Option<Glue>; 4]>,
    pub plan: HashMap<Point, String>,
    pub seed: Vec<(Point, String)>,
}

impl Emitter {
    pub fn new() -> Self {
        Emitter {
            builder: TileSetBuilder::new(),
            types: HashMap::new(),
            plan: HashMap::new(),
            seed: Vec::new(),
        }
    }

    /// Register a tile type with global side glues [N, E, S, W].
    pub fn add_type(&mut self, name: &str, sides: [Option<Glue>; 4]) -> Result<(), ModelError> {
        if let Some(prev) = self.types.get(name) {
            if *prev != sides {
                return Err(ModelError::Invalid(format!(
                    "tile type `{name}` re-declared with different sides"
                )));
            }
            return Ok(());
        }
        self.builder.add_tile(name.to_string(), sides.clone())?;
        self.types.insert(name.to_string(), sides);
        Ok(())
    }

    pub fn place(&mut self, p: Point, name: &str) -> Result<(), ModelError> {
        if let Some(prev) = self.plan.insert(p, name.to_string()) {
            return Err(ModelError::Invalid(format!(
                "plan conflict at ({},{}): `{prev}` vs `{name}`",
                p.x, p.y
            )));
        }
        Ok(())
    }

    pub fn place_seed(&mut self, p: Point, name: &str) -> Result<(), ModelError> {
        self.place(p, name)?;
        self.seed.push((p, name.to_string()));
        Ok(())
    }

    pub fn finish(self, class: SystemClass, neg_strength: i32) -> Result<TileSystem, ModelError> {
        let tiles = self.builder.finish();
        let neg_label = tiles.label_id(NEG_LABEL);
        let mut seed = Vec::new();
        for (p, name) in &self.seed {
            let t = tiles
                .tile_by_name(name)
                .ok_or_else(|| ModelError::UnknownTile(name.clone()))?;
            seed.push((*p, t));
        }
        Ok(TileSystem { tiles, seed, temperature: 1, class, neg_label, neg_strength })
    }
}

/// Oriented view over an emitter for one counter.
pub struct Ctx<'a> {
    pub em: &'a mut Emitter,
    pub orient: Orient,
    pub ns: String,
}

impl<'a> Ctx<'a> {
    /// Namespaced strength-1 glue.
    pub fn g(&self, label: impl AsRef<str>) -> Option<Glue> {
        Some(Glue::new(format!("{}/{}", self.ns, label.as_ref()), 1))
    }

    pub fn neg(&self) -> Option<Glue> {
        Some(neg_glue())
    }

    pub fn name(&self, s: impl AsRef<str>) -> String {
        format!("{}/{}", self.ns, s.as_ref())
    }

    fn oriented(&self, l: &LSides) -> [Option<Glue>; 4] {
        let mut out: [Option<Glue>; 4] = [None, None, None, None];
        let pairs = [
            (Dir::North, l.n.clone()),
            (Dir::East, l.e.clone()),
            (Dir::South, l.s.clone()),
            (Dir::West, l.w.clone()),
        ];
        for (d, g) in pairs {
            out[self.orient.dir(d).index()] = g;
        }
        out
    }

    /// Register a type (logical sides) and place it at a logical cell.
    pub fn put(&mut self, lx: i32, ly: i32, name: &str, sides: LSides) -> Result<(), ModelError> {
        let full = self.name(name);
        self.em.add_type(&full, self.oriented(&sides))?;
        self.em.place(self.orient.point(lx, ly), &full)
    }

    /// Register a type only (shared across placements).
    pub fn ty(&mut self, name: &str, sides: LSides) -> Result<(), ModelError> {
        let full = self.name(name);
        self.em.add_type(&full, self.oriented(&sides))
    }

    /// Place a previously registered type.
    pub fn at(&mut self, lx: i32, ly: i32, name: &str) -> Result<(), ModelError> {
        let full = self.name(name);
        if !self.em.types.contains_key(&full) {
            return Err(ModelError::UnknownTile(full));
        }
        self.em.place(self.orient.point(lx, ly), &full)
    }
}

/// Hard-coded spanning-tree square for sizes below a construction's minimum:
/// a west spine with eastward teeth, 2N + O(1) tile types, directed and
/// independent of the negative glue strength. One decorative negative glue on
/// the spine top keeps the class constraint of exactly one negative label.
pub fn fallback_square(n: u32, class: SystemClass, neg_strength: i32) -> Result<TileSystem, ModelError> {
    assert!(n >= 1);
    let n = n as i32;
    let mut b = TileSetBuilder::new();
    let g = |s: String| Some(Glue::new(s, 1));
    for y in 0..n {
        let north = if y + 1 < n {
            g(format!("fb/spine/{}", y + 1))
        } else {
            Some(neg_glue())
        };
        let south = (y > 0).then(|| Glue::new(format!("fb/spine/{y}"), 1));
        let east = (n > 1).then(|| Glue::new("fb/row/1".to_string(), 1));
        b.add_tile(format!("fb/s{y}"), [north, east, south, None])?;
    }
    for x in 1..n {
        let west = g(format!("fb/row/{x}"));
        let east = (x + 1 < n).then(|| Glue::new(format!("fb/row/{}", x + 1), 1));
        b.add_tile(format!("fb/r{x}"), [None, east, None, west])?;
    }
    let tiles = b.finish();
    let neg_label = tiles.label_id(NEG_LABEL);
    Ok(TileSystem {
        tiles,
        seed: vec![(pt(0, 0), 0)],
        temperature: 1,
        class,
        neg_label,
        neg_strength,
    })
}

/// Check that an assembly's domain is exactly {0..n-1}^2; returns the missing
/// and unexpected points otherwise.
pub fn square_diff(asm: &crate::assembly::Assembly, n: u32) -> (Vec<Point>, Vec<Point>) {
    let n = n as i32;
    let mut missing = Vec::new();
    for y in 0..n {
        for x in 0..n {
            if !asm.occupied(pt(x, y)) {
                missing.push(pt(x, y));
            }
        }
    }
    let mut extra: Vec<Point> = asm
        .points()
        .map(|(&p, _)| p)
        .filter(|p| p.x < 0 || p.y < 0 || p.x >= n || p.y >= n)
        .collect();
    extra.sort();
    missing.truncate(50);
    extra.truncate(50);
    (missing, extra)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::directed::{check_directed, DirectedOptions, Directedness};
    use crate::model::validate_class;
    use crate::sim::{run, Policy, Termination};

    #[test]
    fn fallback_square_is_exact_and_directed() {
        for n in [1u32, 2, 5, 11, 15] {
            let sys = fallback_square(n, SystemClass::PrgTas, -3).unwrap();
            assert!(validate_class(&sys).is_empty(), "n={n}");
            let out = run(&sys, Policy::Deterministic, (n * n * 4) as usize);
            assert_eq!(out.reason, Termination::Terminal, "n={n}");
            let (missing, extra) = square_diff(&out.assembly, n);
            assert!(missing.is_empty() && extra.is_empty(), "n={n}");
            match check_directed(&sys, DirectedOptions::default()) {
                Directedness::Directed { terminal, .. } => {
                    assert_eq!(terminal.len() as u32, n * n)
                }
                other => panic!("n={n}: {other:?}"),
            }
        }
    }

    #[test]
    fn fallback_tile_count_is_linear() {
        let sys = fallback_square(25, SystemClass::RgTas, -1).unwrap();
        assert!(sys.tiles.len() <= 2 * 25 + 2);
    }
}
