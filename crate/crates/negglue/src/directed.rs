//! Exhaustive exploration of the producible-assembly space, memoized on the
//! set of placements, to decide directedness up to a size bound.

use crate::assembly::Assembly;
use crate::grid::Point;
use crate::model::{TileId, TileSystem};
use crate::sim::Simulation;
use rand_chacha::rand_core::SeedableRng;
use std::collections::HashSet;

#[derive(Debug, Clone)]
pub enum Directedness {
    /// Exactly one terminal assembly reachable within the bound.
    Directed { terminal: Assembly, states_explored: usize },
    /// Two distinct terminal assemblies found.
    NotDirected { witness: Box<(Assembly, Assembly)> },
    /// A bound was hit with branches still open.
    Inconclusive { states_explored: usize },
}

pub struct DirectedOptions {
    /// Assemblies larger than this leave the exploration open (inconclusive).
    pub max_assembly_size: usize,
    /// Cap on distinct assemblies visited before giving up.
    pub max_states: usize,
}

impl Default for DirectedOptions {
    fn default() -> Self {
        DirectedOptions { max_assembly_size: 10_000, max_states: 5_000_000 }
    }
}

struct Search<'a> {
    sys: &'a TileSystem,
    seen: HashSet<Vec<(Point, TileId)>>,
    terminals: Vec<Assembly>,
    opts: DirectedOptions,
    truncated: bool,
    states: usize,
}

impl<'a> Search<'a> {
    fn explore(&mut self, asm: Assembly) -> bool {
        let key = asm.canonical();
        if !self.seen.insert(key) {
            return true;
        }
        self.states += 1;
        if self.states > self.opts.max_states {
            self.truncated = true;
            return false;
        }
        let sim = Simulation::from_assembly(self.sys, asm);
        let frontier = sim.frontier();
        let asm = sim.asm;
        if frontier.is_empty() {
            if !self.terminals.iter().any(|t| t.canonical() == asm.canonical()) {
                self.terminals.push(asm);
            }
            return self.terminals.len() < 2;
        }
        if asm.len() >= self.opts.max_assembly_size {
            self.truncated = true;
            return true;
        }
        for (p, t) in frontier {
            let mut next = asm.clone();
            next.place(p, t).expect("frontier site occupied");
            if !self.explore(next) {
                return false;
            }
        }
        true
    }
}

/// True when no two tile sides carrying the negative glue can ever face each
/// other. Attachment eligibility is then monotone: a site's binding strength
/// never decreases as the assembly grows.
pub fn is_monotone(sys: &TileSystem) -> bool {
    let Some(neg) = sys.neg_label else {
        return true;
    };
    for d in crate::grid::DIRS {
        let mut out = false;
        let mut back = false;
        for (_, t) in sys.tiles.tiles() {
            if t.side(d).map_or(false, |g| g.label == neg) {
                out = true;
            }
            if t.side(d.opposite()).map_or(false, |g| g.label == neg) {
                back = true;
            }
        }
        if out && back {
            return false;
        }
    }
    true
}

/// Complete directedness decision for monotone systems.
///
/// In a monotone system the producible assemblies form a lattice whose top is
/// the closure of all ever-eligible attachments, so the system is directed
/// iff no position ever admits two distinct tile types during saturation.
/// This decides exactly the same question as enumerating every producible
/// assembly, without walking the (exponentially many) order ideals.
fn check_directed_monotone(sys: &TileSystem, opts: &DirectedOptions) -> Directedness {
    let mut sim = Simulation::from_assembly(
        sys,
        Assembly::from_seed(&sys.seed).expect("seed conflict"),
    );
    let mut states = 0usize;
    loop {
        let frontier = sim.frontier();
        if frontier.is_empty() {
            return Directedness::Directed { terminal: sim.asm, states_explored: states };
        }
        // two tiles for one site diverge forever: build the two witnesses
        for w in frontier.windows(2) {
            if w[0].0 == w[1].0 {
                let mut a = sim.asm.clone();
                a.place(w[0].0, w[0].1).unwrap();
                let mut b = sim.asm.clone();
                b.place(w[1].0, w[1].1).unwrap();
                let run = |start: Assembly| {
                    let mut s = Simulation::from_assembly(sys, start);
                    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
                    while s.asm.len() < opts.max_assembly_size {
                        if s.step(crate::sim::Policy::Deterministic, &mut rng).is_none() {
                            break;
                        }
                    }
                    s.asm
                };
                return Directedness::NotDirected { witness: Box::new((run(a), run(b))) };
            }
        }
        if sim.asm.len() >= opts.max_assembly_size {
            return Directedness::Inconclusive { states_explored: states };
        }
        let (p, t) = frontier[0];
        sim.place(p, t);
        states += 1;
    }
}

/// Exhaustively explore producible assemblies and classify directedness.
///
/// Monotone systems (no facing negative-glue pair possible) are decided by
/// lattice closure, which covers the full producible space exactly. Otherwise
/// the search walks distinct assemblies, memoized on the placement set; with
/// the `parallel` feature the top-level frontier branches fan out to worker
/// threads, each owning an independent copy of the search state, and terminal
/// assemblies merge at the end.
pub fn check_directed(sys: &TileSystem, opts: DirectedOptions) -> Directedness {
    if is_monotone(sys) {
        return check_directed_monotone(sys, &opts);
    }
    let root = Assembly::from_seed(&sys.seed).expect("seed conflict");
    let root_sim = Simulation::from_assembly(sys, root.clone());
    let branches = root_sim.frontier();

    #[cfg(feature = "parallel")]
    if branches.len() > 1 {
        use rayon::prelude::*;
        let per_branch = DirectedOptions {
            max_assembly_size: opts.max_assembly_size,
            max_states: opts.max_states / branches.len().max(1),
        };
        let results: Vec<(Vec<Assembly>, bool, usize)> = branches
            .par_iter()
            .map(|&(p, t)| {
                let mut asm = root.clone();
                asm.place(p, t).unwrap();
                let mut s = Search {
                    sys,
                    seen: HashSet::new(),
                    terminals: Vec::new(),
                    opts: DirectedOptions {
                        max_assembly_size: per_branch.max_assembly_size,
                        max_states: per_branch.max_states,
                    },
                    truncated: false,
                    states: 0,
                };
                s.explore(asm);
                (s.terminals, s.truncated, s.states)
            })
            .collect();
        let mut terminals: Vec<Assembly> = Vec::new();
        let mut truncated = false;
        let mut states = 0;
        for (ts, tr, st) in results {
            truncated |= tr;
            states += st;
            for t in ts {
                if !terminals.iter().any(|u| u.canonical() == t.canonical()) {
                    terminals.push(t);
                }
            }
        }
        return classify(terminals, truncated, states);
    }

    let mut s = Search { sys, seen: HashSet::new(), terminals: Vec::new(), opts, truncated: false, states: 0 };
    s.explore(root);
    classify(s.terminals, s.truncated, s.states)
}

fn classify(mut terminals: Vec<Assembly>, truncated: bool, states: usize) -> Directedness {
    if terminals.len() >= 2 {
        let b = terminals.swap_remove(1);
        let a = terminals.swap_remove(0);
        return Directedness::NotDirected { witness: Box::new((a, b)) };
    }
    if truncated {
        return Directedness::Inconclusive { states_explored: states };
    }
    match terminals.pop() {
        Some(t) => Directedness::Directed { terminal: t, states_explored: states },
        None => Directedness::Inconclusive { states_explored: states },
    }
}

/// Depth-first run to the first terminal assembly found; used as the
/// `exhaustive` run policy. On a directed system this reaches the unique
/// terminal assembly regardless of branch order.
pub fn first_terminal(sys: &TileSystem, max_size: usize) -> Option<Assembly> {
    let root = Assembly::from_seed(&sys.seed).ok()?;
    let mut stack = vec![root];
    let mut seen: HashSet<Vec<(Point, TileId)>> = HashSet::new();
    while let Some(asm) = stack.pop() {
        if !seen.insert(asm.canonical()) {
            continue;
        }
        let sim = Simulation::from_assembly(sys, asm);
        let frontier = sim.frontier();
        let asm = sim.asm;
        if frontier.is_empty() {
            return Some(asm);
        }
        if asm.len() >= max_size {
            continue;
        }
        for (p, t) in frontier.into_iter().rev() {
            let mut next = asm.clone();
            next.place(p, t).unwrap();
            stack.push(next);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::pt;
    use crate::model::{Glue, SystemClass, TileSetBuilder, TileSystem};

    fn g(l: &str, s: i32) -> Option<Glue> {
        Some(Glue::new(l, s))
    }

    fn sys_with(tiles: Vec<(&str, [Option<Glue>; 4])>) -> TileSystem {
        let mut b = TileSetBuilder::new();
        for (name, sides) in tiles {
            b.add_tile(name, sides).unwrap();
        }
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
    fn two_tiles_for_one_site_is_not_directed() {
        let sys = sys_with(vec![
            ("seed", [None, g("s", 1), None, None]),
            ("a", [None, None, None, g("s", 1)]),
            ("b", [None, None, None, g("s", 1)]),
        ]);
        match check_directed(&sys, DirectedOptions::default()) {
            Directedness::NotDirected { witness } => {
                assert_ne!(witness.0.canonical(), witness.1.canonical());
            }
            other => panic!("expected NotDirected, got {other:?}"),
        }
    }

    #[test]
    fn chain_is_directed() {
        let sys = sys_with(vec![
            ("seed", [None, g("s1", 1), None, None]),
            ("c1", [None, g("s2", 1), None, g("s1", 1)]),
            ("c2", [None, None, None, g("s2", 1)]),
        ]);
        match check_directed(&sys, DirectedOptions::default()) {
            Directedness::Directed { terminal, .. } => assert_eq!(terminal.len(), 3),
            other => panic!("expected Directed, got {other:?}"),
        }
    }

    #[test]
    fn bound_below_terminal_is_inconclusive() {
        let sys = sys_with(vec![
            ("seed", [None, g("s1", 1), None, None]),
            ("c1", [None, g("s2", 1), None, g("s1", 1)]),
            ("c2", [None, None, None, g("s2", 1)]),
        ]);
        let opts = DirectedOptions { max_assembly_size: 2, max_states: 1000 };
        match check_directed(&sys, opts) {
            Directedness::Inconclusive { .. } => {}
            other => panic!("expected Inconclusive, got {other:?}"),
        }
    }

    #[test]
    fn order_free_fills_converge() {
        // seed with two independent arms; 4 interleavings, one terminal.
        let sys = sys_with(vec![
            ("seed", [g("n", 1), g("e", 1), None, None]),
            ("up", [g("n2", 1), None, g("n", 1), None]),
            ("up2", [None, None, g("n2", 1), None]),
            ("right", [None, None, None, g("e", 1)]),
        ]);
        match check_directed(&sys, DirectedOptions::default()) {
            Directedness::Directed { terminal, .. } => assert_eq!(terminal.len(), 4),
            other => panic!("expected Directed, got {other:?}"),
        }
    }
}
