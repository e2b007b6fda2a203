//! Diagnostics for square constructions: runs the deterministic sequence and
//! reports the first divergence from the construction plan, stalls before the
//! square completes, and holes in the terminal assembly.

use super::square_diff;
use crate::grid::Point;
use crate::model::TileSystem;
use crate::sim::{Policy, Simulation};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

#[derive(Debug)]
pub struct SquareRunReport {
    pub ok: bool,
    pub placed: usize,
    pub problems: Vec<String>,
}

/// Run to terminal under the deterministic policy, checking every frontier
/// attachment against the plan when one is given.
pub fn diagnose_square(
    sys: &TileSystem,
    n: u32,
    plan: &[(Point, String)],
    max_problems: usize,
) -> SquareRunReport {
    let plan_map: HashMap<Point, &str> =
        plan.iter().map(|(p, s)| (*p, s.as_str())).collect();
    let mut problems = Vec::new();
    let mut sim = Simulation::new(sys);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let cap = (n as usize * n as usize) * 4 + 64;
    for step in 0..cap {
        if !plan_map.is_empty() {
            for (p, t) in sim.frontier() {
                let name = &sys.tiles.tile(t).name;
                match plan_map.get(&p) {
                    Some(want) if *want == name.as_str() => {}
                    Some(want) => problems.push(format!(
                        "step {step}: frontier offers `{name}` at ({},{}) but plan wants `{want}`",
                        p.x, p.y
                    )),
                    None => problems.push(format!(
                        "step {step}: frontier offers `{name}` at unplanned ({},{})",
                        p.x, p.y
                    )),
                }
                if problems.len() >= max_problems {
                    return SquareRunReport { ok: false, placed: sim.asm.len(), problems };
                }
            }
        }
        if sim.step(Policy::Deterministic, &mut rng).is_none() {
            break;
        }
    }
    if sim.frontier_len() != 0 {
        problems.push(format!("not terminal after {cap} steps"));
    }
    let (missing, extra) = square_diff(&sim.asm, n);
    if !missing.is_empty() {
        // report neighbors of the first few missing cells to localize stalls
        for p in missing.iter().take(6) {
            let mut ctx = String::new();
            for d in crate::grid::DIRS {
                let q = p.neighbor(d);
                if let Some(t) = sim.asm.tile_at(q) {
                    ctx.push_str(&format!(" {d}:{}", sys.tiles.tile(t).name));
                }
            }
            problems.push(format!("missing ({},{});{ctx}", p.x, p.y));
        }
        problems.push(format!("total missing: {}", missing.len()));
    }
    for p in extra.iter().take(6) {
        let t = sim.asm.tile_at(*p).unwrap();
        problems.push(format!("extra ({},{}): {}", p.x, p.y, sys.tiles.tile(t).name));
    }
    SquareRunReport { ok: problems.is_empty(), placed: sim.asm.len(), problems }
}
