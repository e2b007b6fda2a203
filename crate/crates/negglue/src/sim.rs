//! Attachment simulation: frontier maintenance, runs under different
//! attachment policies, and the single-sequence check.

use crate::assembly::{binding_strength_unchecked, Assembly};
use crate::grid::{Point, DIRS};
use crate::model::{TileId, TileSystem};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};

/// A frontier attachment, ordered by (y, x, lexicographic tile rank) so the
/// deterministic policy is reproducible across runs and platforms.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct Key {
    y: i32,
    x: i32,
    rank: u32,
    tile: TileId,
}

/// Incremental simulation state for one tile system.
pub struct Simulation<'a> {
    pub sys: &'a TileSystem,
    pub asm: Assembly,
    frontier: BTreeSet<Key>,
    at: HashMap<Point, Vec<TileId>>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Termination {
    Terminal,
    StepCap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Policy {
    /// Least (y, x, tile id) attachment each step.
    Deterministic,
    /// Uniform choice among eligible attachments, seeded.
    Random(u64),
}

#[derive(Debug)]
pub struct RunOutcome {
    pub assembly: Assembly,
    pub reason: Termination,
    pub steps: usize,
}

impl<'a> Simulation<'a> {
    pub fn new(sys: &'a TileSystem) -> Self {
        let asm = Assembly::from_seed(&sys.seed).expect("seed placements conflict");
        let mut s = Simulation { sys, asm, frontier: BTreeSet::new(), at: HashMap::new() };
        let seed_points: Vec<Point> = s.asm.points().map(|(&p, _)| p).collect();
        for p in seed_points {
            for d in DIRS {
                s.refresh_site(p.neighbor(d));
            }
        }
        s
    }

    pub fn from_assembly(sys: &'a TileSystem, asm: Assembly) -> Self {
        let mut s = Simulation { sys, asm, frontier: BTreeSet::new(), at: HashMap::new() };
        let pts: Vec<Point> = s.asm.points().map(|(&p, _)| p).collect();
        for p in pts {
            for d in DIRS {
                s.refresh_site(p.neighbor(d));
            }
        }
        s
    }

    fn refresh_site(&mut self, p: Point) {
        if let Some(old) = self.at.remove(&p) {
            for t in old {
                self.frontier.remove(&Key {
                    y: p.y,
                    x: p.x,
                    rank: self.sys.tiles.lex_rank(t),
                    tile: t,
                });
            }
        }
        if self.asm.occupied(p) {
            return;
        }
        let mut cands: Vec<TileId> = Vec::new();
        for d in DIRS {
            let q = p.neighbor(d);
            if let Some(u) = self.asm.tile_at(q) {
                if let Some(side) = self.sys.tiles.tile(u).side(d.opposite()) {
                    for &t in self.sys.tiles.candidates(d, side.label) {
                        if !cands.contains(&t) {
                            cands.push(t);
                        }
                    }
                }
            }
        }
        let mut kept = Vec::new();
        for t in cands {
            if binding_strength_unchecked(self.sys, &self.asm, p, t) >= self.sys.temperature {
                self.frontier.insert(Key {
                    y: p.y,
                    x: p.x,
                    rank: self.sys.tiles.lex_rank(t),
                    tile: t,
                });
                kept.push(t);
            }
        }
        if !kept.is_empty() {
            self.at.insert(p, kept);
        }
    }

    pub fn frontier_len(&self) -> usize {
        self.frontier.len()
    }

    /// Current frontier as (point, tile) pairs in deterministic order.
    pub fn frontier(&self) -> Vec<(Point, TileId)> {
        self.frontier
            .iter()
            .map(|k| (Point::new(k.x, k.y), k.tile))
            .collect()
    }

    pub fn place(&mut self, p: Point, t: TileId) {
        self.asm.place(p, t).expect("placement on occupied site");
        self.refresh_site(p);
        for d in DIRS {
            self.refresh_site(p.neighbor(d));
        }
    }

    /// Perform one attachment under `policy`. Returns the placement, or None
    /// when the assembly is terminal.
    pub fn step(&mut self, policy: Policy, rng: &mut ChaCha8Rng) -> Option<(Point, TileId)> {
        let key = match policy {
            Policy::Deterministic => self.frontier.iter().next().copied()?,
            Policy::Random(_) => {
                if self.frontier.is_empty() {
                    return None;
                }
                let n = rng.random_range(0..self.frontier.len());
                self.frontier.iter().nth(n).copied()?
            }
        };
        let p = Point::new(key.x, key.y);
        self.place(p, key.tile);
        Some((p, key.tile))
    }
}

/// Snapshot of the eligible attachments at `asm` under `sys`.
pub fn frontier(sys: &TileSystem, asm: &Assembly) -> Vec<(Point, TileId)> {
    Simulation::from_assembly(sys, asm.clone()).frontier()
}

/// Run at most `max_steps` attachments under `policy`.
pub fn run(sys: &TileSystem, policy: Policy, max_steps: usize) -> RunOutcome {
    let mut sim = Simulation::new(sys);
    let seed = match policy {
        Policy::Random(s) => s,
        Policy::Deterministic => 0,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut steps = 0;
    while steps < max_steps {
        if sim.step(policy, &mut rng).is_none() {
            return RunOutcome { assembly: sim.asm, reason: Termination::Terminal, steps };
        }
        steps += 1;
    }
    let reason = if sim.frontier_len() == 0 { Termination::Terminal } else { Termination::StepCap };
    RunOutcome { assembly: sim.asm, reason, steps }
}

/// Result of the single-assembly-sequence check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingleSequence {
    pub single: bool,
    /// Step index (0-based attachment count) of the first branching frontier.
    pub first_branch: Option<usize>,
    pub reason: Termination,
    pub assembly_len: usize,
}

/// True iff the frontier holds exactly one attachment at every step until the
/// assembly is terminal (or the cap is reached). Vacuously true on a seed-only
/// terminal system.
pub fn check_single_sequence(sys: &TileSystem, max_steps: usize) -> SingleSequence {
    let mut sim = Simulation::new(sys);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut step = 0;
    loop {
        let n = sim.frontier_len();
        if n == 0 {
            return SingleSequence {
                single: true,
                first_branch: None,
                reason: Termination::Terminal,
                assembly_len: sim.asm.len(),
            };
        }
        if n > 1 {
            return SingleSequence {
                single: false,
                first_branch: Some(step),
                reason: Termination::StepCap,
                assembly_len: sim.asm.len(),
            };
        }
        if step >= max_steps {
            return SingleSequence {
                single: true,
                first_branch: None,
                reason: Termination::StepCap,
                assembly_len: sim.asm.len(),
            };
        }
        sim.step(Policy::Deterministic, &mut rng);
        step += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::pt;
    use crate::model::{Glue, SystemClass, TileSetBuilder, TileSystem};

    fn g(l: &str, s: i32) -> Option<Glue> {
        Some(Glue::new(l, s))
    }

    /// seed at origin growing an east chain of length 3.
    fn chain_system() -> TileSystem {
        let mut b = TileSetBuilder::new();
        b.add_tile("seed", [None, g("s1", 1), None, None]).unwrap();
        b.add_tile("c1", [None, g("s2", 1), None, g("s1", 1)]).unwrap();
        b.add_tile("c2", [None, None, None, g("s2", 1)]).unwrap();
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
    fn chain_runs_to_terminal() {
        let sys = chain_system();
        let out = run(&sys, Policy::Deterministic, 100);
        assert_eq!(out.reason, Termination::Terminal);
        assert_eq!(out.assembly.len(), 3);
        assert_eq!(out.assembly.tile_at(pt(2, 0)), Some(2));
    }

    #[test]
    fn zero_steps_is_step_cap() {
        let sys = chain_system();
        let out = run(&sys, Policy::Deterministic, 0);
        assert_eq!(out.reason, Termination::StepCap);
        assert_eq!(out.assembly.len(), 1);
    }

    #[test]
    fn chain_is_single_sequence() {
        let sys = chain_system();
        let r = check_single_sequence(&sys, 100);
        assert!(r.single);
        assert_eq!(r.reason, Termination::Terminal);
    }

    #[test]
    fn fork_detected() {
        let mut b = TileSetBuilder::new();
        b.add_tile("seed", [None, g("s", 1), None, None]).unwrap();
        b.add_tile("a", [None, None, None, g("s", 1)]).unwrap();
        b.add_tile("b", [None, None, None, g("s", 1)]).unwrap();
        let tiles = b.finish();
        let sys = TileSystem {
            tiles,
            seed: vec![(pt(0, 0), 0)],
            temperature: 1,
            class: SystemClass::Plain,
            neg_label: None,
            neg_strength: -1,
        };
        let r = check_single_sequence(&sys, 100);
        assert!(!r.single);
        assert_eq!(r.first_branch, Some(0));
    }

    #[test]
    fn random_policy_reaches_same_terminal_on_directed_chain() {
        let sys = chain_system();
        let a = run(&sys, Policy::Deterministic, 100);
        let b = run(&sys, Policy::Random(42), 100);
        assert_eq!(a.assembly.canonical(), b.assembly.canonical());
    }
}
