//! Assemblies: partial maps from lattice points to tile types, with binding
//! strength queries and tau-stability via min-cut of the binding graph.

use crate::grid::{pt, Dir, Point, DIRS};
use crate::model::{ModelError, TileId, TileSystem};
use std::collections::HashMap;

/// A finite assembly together with its placement history. The first
/// `seed_len` entries of `order` are the seed and never change.
#[derive(Clone, Debug, Default)]
pub struct Assembly {
    placements: HashMap<Point, TileId>,
    order: Vec<(Point, TileId)>,
    seed_len: usize,
}

impl Assembly {
    pub fn from_seed(seed: &[(Point, TileId)]) -> Result<Self, ModelError> {
        let mut a = Assembly::default();
        for &(p, t) in seed {
            if a.placements.insert(p, t).is_some() {
                return Err(ModelError::SeedConflict { x: p.x, y: p.y });
            }
            a.order.push((p, t));
        }
        a.seed_len = a.order.len();
        Ok(a)
    }

    pub fn len(&self) -> usize {
        self.placements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placements.is_empty()
    }

    pub fn seed_len(&self) -> usize {
        self.seed_len
    }

    pub fn tile_at(&self, p: Point) -> Option<TileId> {
        self.placements.get(&p).copied()
    }

    pub fn occupied(&self, p: Point) -> bool {
        self.placements.contains_key(&p)
    }

    pub fn place(&mut self, p: Point, t: TileId) -> Result<(), ModelError> {
        if self.placements.insert(p, t).is_some() {
            return Err(ModelError::OccupiedPosition { x: p.x, y: p.y });
        }
        self.order.push((p, t));
        Ok(())
    }

    /// Placement order including the seed prefix.
    pub fn order(&self) -> &[(Point, TileId)] {
        &self.order
    }

    /// Growth steps only (seed excluded).
    pub fn steps(&self) -> &[(Point, TileId)] {
        &self.order[self.seed_len..]
    }

    pub fn points(&self) -> impl Iterator<Item = (&Point, &TileId)> {
        self.placements.iter()
    }

    /// Index of first placement at `p`, the alpha-index.
    pub fn alpha_index(&self, p: Point) -> Option<usize> {
        self.order.iter().position(|&(q, _)| q == p)
    }

    pub fn bounding_box(&self) -> Option<(Point, Point)> {
        let mut it = self.placements.keys();
        let first = *it.next()?;
        let mut lo = first;
        let mut hi = first;
        for p in it {
            lo = pt(lo.x.min(p.x), lo.y.min(p.y));
            hi = pt(hi.x.max(p.x), hi.y.max(p.y));
        }
        Some((lo, hi))
    }

    /// Canonical sorted placement list; the memo key for exhaustive search.
    pub fn canonical(&self) -> Vec<(Point, TileId)> {
        let mut v: Vec<_> = self.placements.iter().map(|(&p, &t)| (p, t)).collect();
        v.sort();
        v
    }

    /// Input sides of the tile placed at order index `i`: the sides through
    /// which it interacts positively with tiles placed strictly earlier.
    pub fn input_sides(&self, sys: &TileSystem, i: usize) -> Vec<Dir> {
        let (p, t) = self.order[i];
        let mut before: HashMap<Point, TileId> = HashMap::new();
        for &(q, u) in &self.order[..i] {
            before.insert(q, u);
        }
        let mut dirs = Vec::new();
        for d in DIRS {
            let q = p.neighbor(d);
            if let Some(&u) = before.get(&q) {
                let mine = sys.tiles.tile(t).side(d);
                let theirs = sys.tiles.tile(u).side(d.opposite());
                if sys.side_interaction(mine, theirs) > 0 {
                    dirs.push(d);
                }
            }
        }
        dirs
    }
}

/// Net binding strength of tile `t` at empty position `p`, the sum of
/// effective interactions with the (up to four) occupied neighbors.
pub fn binding_strength(
    sys: &TileSystem,
    asm: &Assembly,
    p: Point,
    t: TileId,
) -> Result<i32, ModelError> {
    if asm.occupied(p) {
        return Err(ModelError::OccupiedPosition { x: p.x, y: p.y });
    }
    Ok(binding_strength_unchecked(sys, asm, p, t))
}

pub(crate) fn binding_strength_unchecked(
    sys: &TileSystem,
    asm: &Assembly,
    p: Point,
    t: TileId,
) -> i32 {
    let data = sys.tiles.tile(t);
    let mut total = 0;
    for d in DIRS {
        if let Some(u) = asm.tile_at(p.neighbor(d)) {
            let theirs = sys.tiles.tile(u).side(d.opposite());
            total += sys.side_interaction(data.side(d), theirs);
        }
    }
    total
}

/// Edges of the binding graph: adjacent tiles whose facing sides match in
/// label and strength with strength > 0.
pub fn binding_graph(sys: &TileSystem, asm: &Assembly) -> Vec<(Point, Point, i32)> {
    let mut edges = Vec::new();
    for (&p, &t) in asm.points() {
        for d in [Dir::North, Dir::East] {
            let q = p.neighbor(d);
            if let Some(u) = asm.tile_at(q) {
                let mine = sys.tiles.tile(t).side(d);
                let theirs = sys.tiles.tile(u).side(d.opposite());
                if let (Some(a), Some(b)) = (mine, theirs) {
                    if a.label == b.label && a.strength == b.strength && a.strength > 0 {
                        edges.push((p, q, a.strength));
                    }
                }
            }
        }
    }
    edges
}

/// True iff every cut of the binding graph has total strength >= tau.
/// A disconnected binding graph on two or more tiles is never stable.
pub fn is_tau_stable(sys: &TileSystem, asm: &Assembly, tau: i32) -> bool {
    let n = asm.len();
    if n <= 1 {
        return true;
    }
    let mut index: HashMap<Point, usize> = HashMap::new();
    for (i, (&p, _)) in asm.points().enumerate() {
        index.insert(p, i);
    }
    let edges = binding_graph(sys, asm);
    // connectivity first
    let mut dsu: Vec<usize> = (0..n).collect();
    fn find(dsu: &mut Vec<usize>, i: usize) -> usize {
        if dsu[i] != i {
            let r = find(dsu, dsu[i]);
            dsu[i] = r;
        }
        dsu[i]
    }
    for &(p, q, _) in &edges {
        let (a, b) = (index[&p], index[&q]);
        let (ra, rb) = (find(&mut dsu, a), find(&mut dsu, b));
        if ra != rb {
            dsu[ra] = rb;
        }
    }
    let root = find(&mut dsu, 0);
    for i in 1..n {
        if find(&mut dsu, i) != root {
            return false;
        }
    }
    if tau <= 1 {
        return true;
    }
    min_cut(n, &edges, &index) >= tau as i64
}

/// Stoer-Wagner global min cut on the weighted binding graph.
fn min_cut(n: usize, edges: &[(Point, Point, i32)], index: &HashMap<Point, usize>) -> i64 {
    let mut w = vec![vec![0i64; n]; n];
    for &(p, q, s) in edges {
        let (a, b) = (index[&p], index[&q]);
        w[a][b] += s as i64;
        w[b][a] += s as i64;
    }
    let mut active: Vec<usize> = (0..n).collect();
    let mut best = i64::MAX;
    while active.len() > 1 {
        let m = active.len();
        let mut added = vec![false; m];
        let mut weight = vec![0i64; m];
        let mut prev = 0usize;
        let mut last = 0usize;
        for it in 0..m {
            let mut sel = usize::MAX;
            for i in 0..m {
                if !added[i] && (sel == usize::MAX || weight[i] > weight[sel]) {
                    sel = i;
                }
            }
            added[sel] = true;
            if it == m - 1 {
                best = best.min(weight[sel]);
                prev = last;
                last = sel;
                break;
            }
            for i in 0..m {
                if !added[i] {
                    weight[i] += w[active[sel]][active[i]];
                }
            }
            prev = last;
            last = sel;
        }
        // merge `last` into `prev`
        let (a, b) = (active[prev], active[last]);
        for i in 0..n {
            w[a][i] += w[b][i];
            w[i][a] += w[i][b];
        }
        active.remove(last);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::pt;
    use crate::model::{Glue, SystemClass, TileSetBuilder, TileSystem};

    fn g(l: &str, s: i32) -> Option<Glue> {
        Some(Glue::new(l, s))
    }

    // sides order: [north, east, south, west]
    fn two_tile_system(match_labels: bool) -> TileSystem {
        let mut b = TileSetBuilder::new();
        b.add_tile("seed", [None, g("a", 1), None, None]).unwrap();
        let east_label = if match_labels { "a" } else { "b" };
        b.add_tile("t", [None, None, None, g(east_label, 1)]).unwrap();
        let tiles = b.finish();
        TileSystem {
            tiles,
            seed: vec![(pt(0, 0), 0)],
            temperature: 1,
            class: SystemClass::Plain,
            neg_label: None,
            neg_strength: -1,
        }
    }

    #[test]
    fn single_tile_is_stable() {
        let sys = two_tile_system(true);
        let asm = Assembly::from_seed(&sys.seed).unwrap();
        assert!(is_tau_stable(&sys, &asm, 1));
    }

    #[test]
    fn matched_bond_is_stable_mismatch_is_not() {
        for (matched, expect) in [(true, true), (false, false)] {
            let sys = two_tile_system(matched);
            let mut asm = Assembly::from_seed(&sys.seed).unwrap();
            asm.place(pt(1, 0), 1).unwrap();
            assert_eq!(is_tau_stable(&sys, &asm, 1), expect);
        }
    }

    #[test]
    fn binding_strength_sums_neighbors() {
        // seed exposes east a(+1); a second fixed tile exposes north n(+1);
        // candidate matches both plus a negative glue pocket.
        let mut b = TileSetBuilder::new();
        b.add_tile("seed", [None, g("a", 1), None, None]).unwrap();
        b.add_tile("below", [g("b", 1), None, None, None]).unwrap();
        b.add_tile("negarm", [None, None, None, g("neg", -1)]).unwrap();
        b.add_tile("cand", [None, g("neg", -1), g("b", 1), g("a", 1)]).unwrap();
        let tiles = b.finish();
        let neg = tiles.label_id("neg");
        let sys = TileSystem {
            tiles,
            seed: vec![(pt(0, 0), 0)],
            temperature: 1,
            class: SystemClass::RgTas,
            neg_label: neg,
            neg_strength: -1,
        };
        let mut asm = Assembly::from_seed(&sys.seed).unwrap();
        asm.place(pt(1, -1), 1).unwrap();
        asm.place(pt(2, 0), 2).unwrap();
        // candidate at (1,0): west a(+1), south b(+1), east neg(-1)
        assert_eq!(binding_strength(&sys, &asm, pt(1, 0), 3).unwrap(), 1);
        let sys2 = sys.with_neg_strength(-2);
        assert_eq!(binding_strength(&sys2, &asm, pt(1, 0), 3).unwrap(), 0);
        assert!(binding_strength(&sys, &asm, pt(0, 0), 3).is_err());
    }
}
