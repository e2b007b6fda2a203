//! Compact zig-zag temperature-2 systems: the defining predicates, a
//! compiler from Turing machines, and configuration read-back.
//!
//! The compiled system grows one horizontal row per sweep, alternating
//! left-to-right and right-to-left, each row one tile wider than the last.
//! A row applies at most one TM transition: right-moves in left-to-right
//! rows, left-moves in right-to-left rows; a transition whose direction does
//! not match the row is skipped and picked up by the next row.

use crate::assembly::Assembly;
use crate::grid::{pt, Dir, Point};
use crate::model::{Glue, ModelError, SystemClass, TileId, TileSetBuilder, TileSystem};
use crate::sim::{Policy, Simulation};
use crate::tm::{Config, Move, TuringMachine};
use rand_chacha::ChaCha8Rng;
use rand_chacha::rand_core::SeedableRng;
use std::collections::HashMap;

/// One tape cell of an encoded configuration row.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Cell {
    Sym(usize),
    Head(usize, usize),
}

/// Horizontal scan payload carried along a growing row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Scan {
    Copy,
    Dep(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum RowDir {
    Lr,
    Rl,
}

impl RowDir {
    fn tag(self) -> &'static str {
        match self {
            RowDir::Lr => "lr",
            RowDir::Rl => "rl",
        }
    }
    fn flip(self) -> RowDir {
        match self {
            RowDir::Lr => RowDir::Rl,
            RowDir::Rl => RowDir::Lr,
        }
    }
    /// Side the scan glue leaves a tile (direction of row growth).
    fn ahead(self) -> Dir {
        match self {
            RowDir::Lr => Dir::East,
            RowDir::Rl => Dir::West,
        }
    }
}

/// Decoder metadata for a compiled system.
#[derive(Clone, Debug, Default)]
pub struct ZigZagCodec {
    pub content_of: HashMap<String, Cell>,
    pub symbols: Vec<String>,
    pub states: Vec<String>,
    /// Seed row width.
    pub width0: usize,
}

impl ZigZagCodec {
    /// Inclusive column extent of row `row`.
    pub fn row_extent(&self, row: i32) -> (i32, i32) {
        let j = row as i64;
        let lo = -((j + 1) / 2);
        let hi = self.width0 as i64 - 1 + j / 2;
        (lo as i32, hi as i32)
    }
}

fn ckey(c: &Cell) -> String {
    match c {
        Cell::Sym(a) => format!("s{a}"),
        Cell::Head(q, a) => format!("h{q}-{a}"),
    }
}

fn skey(s: &Scan) -> String {
    match s {
        Scan::Copy => "c".to_string(),
        Scan::Dep(q) => format!("d{q}"),
    }
}

enum Action {
    Halt,
    Out(Cell, Scan),
}

struct Compiler<'a> {
    tm: &'a TuringMachine,
    builder: TileSetBuilder,
    codec: ZigZagCodec,
}

impl<'a> Compiler<'a> {
    fn sym_ix(&self, s: &str) -> usize {
        self.tm.alphabet.iter().position(|x| x == s).expect("symbol in alphabet")
    }

    fn state_ix(&self, q: &str) -> usize {
        self.tm.states.iter().position(|x| x == q).expect("state listed")
    }

    /// Process the cell content under the incoming scan for a row of
    /// direction `d`.
    fn process(&self, d: RowDir, content: &Cell, scan_in: Scan) -> Option<Action> {
        match (content, scan_in) {
            (Cell::Sym(a), Scan::Copy) => Some(Action::Out(Cell::Sym(*a), Scan::Copy)),
            (Cell::Sym(a), Scan::Dep(q)) => Some(Action::Out(Cell::Head(q, *a), Scan::Copy)),
            (Cell::Head(_, _), Scan::Dep(_)) => None, // two heads cannot occur
            (Cell::Head(q, a), Scan::Copy) => {
                let qs = &self.tm.states[*q];
                let asym = &self.tm.alphabet[*a];
                match self.tm.rule(qs, asym) {
                    None => Some(Action::Halt),
                    Some(rule) => {
                        let applies = matches!(
                            (rule.mv, d),
                            (Move::Right, RowDir::Lr) | (Move::Left, RowDir::Rl)
                        );
                        if applies {
                            let w = self.sym_ix(&rule.write);
                            let nq = self.state_ix(&rule.next);
                            Some(Action::Out(Cell::Sym(w), Scan::Dep(nq)))
                        } else {
                            Some(Action::Out(Cell::Head(*q, *a), Scan::Copy))
                        }
                    }
                }
            }
        }
    }

    fn up(&self, d: RowDir, c: &Cell, end: bool) -> Glue {
        Glue::new(format!("zz/up/{}/{}/{}", d.tag(), ckey(c), end as u8), 1)
    }
    fn scan(&self, d: RowDir, s: &Scan) -> Glue {
        Glue::new(format!("zz/scan/{}/{}", d.tag(), skey(s)), 1)
    }
    fn ext(&self, d: RowDir, s: &Scan) -> Glue {
        Glue::new(format!("zz/ext/{}/{}", d.tag(), skey(s)), 2)
    }
    fn step(&self, d: RowDir, c: &Cell, end: bool) -> Glue {
        Glue::new(format!("zz/step/{}/{}/{}", d.tag(), ckey(c), end as u8), 2)
    }

    fn add(&mut self, name: String, content: Option<Cell>, sides: [Option<Glue>; 4]) {
        if let Some(c) = content {
            self.codec.content_of.insert(name.clone(), c);
        }
        self.builder.add_tile(name, sides).expect("unique tile names");
    }

    fn all_cells(&self) -> Vec<Cell> {
        let mut v = Vec::new();
        for a in 0..self.tm.alphabet.len() {
            v.push(Cell::Sym(a));
        }
        for q in 0..self.tm.states.len() {
            for a in 0..self.tm.alphabet.len() {
                v.push(Cell::Head(q, a));
            }
        }
        v
    }

    fn all_scans(&self) -> Vec<Scan> {
        let mut v = vec![Scan::Copy];
        for q in 0..self.tm.states.len() {
            v.push(Scan::Dep(q));
        }
        v
    }

    fn sides(
        &self,
        d: RowDir,
        north: Option<Glue>,
        south: Option<Glue>,
        back: Option<Glue>,
        ahead: Option<Glue>,
    ) -> [Option<Glue>; 4] {
        // back = side facing the already-built part of the row
        let mut out: [Option<Glue>; 4] = [None, None, None, None];
        out[Dir::North.index()] = north;
        out[Dir::South.index()] = south;
        match d {
            RowDir::Lr => {
                out[Dir::West.index()] = back;
                out[Dir::East.index()] = ahead;
            }
            RowDir::Rl => {
                out[Dir::East.index()] = back;
                out[Dir::West.index()] = ahead;
            }
        }
        out
    }

    fn emit_families(&mut self) {
        for d in [RowDir::Lr, RowDir::Rl] {
            let up_d = d.flip(); // up glues this row emits are consumed by the next row
            for c in self.all_cells() {
                // Step-up tiles: first tile of a row, above the previous
                // row's extension; no incoming scan.
                for end in [false, true] {
                    let name = format!("zz/step/{}/{}/{}", d.tag(), ckey(&c), end as u8);
                    match self.process(d, &c, Scan::Copy) {
                        Some(Action::Halt) => {
                            let sides =
                                self.sides(d, None, Some(self.step(d, &c, end)), None, None);
                            self.add(name, Some(c.clone()), sides);
                        }
                        Some(Action::Out(c2, s2)) => {
                            let ahead = if end {
                                Some(self.ext(d, &s2))
                            } else {
                                Some(self.scan(d, &s2))
                            };
                            let sides = self.sides(
                                d,
                                Some(self.up(up_d, &c2, true)),
                                Some(self.step(d, &c, end)),
                                None,
                                ahead,
                            );
                            self.add(name, Some(c2), sides);
                        }
                        None => {}
                    }
                }
                // Interior tiles.
                for s_in in self.all_scans() {
                    for end in [false, true] {
                        match self.process(d, &c, s_in) {
                            None => {}
                            Some(Action::Halt) => {
                                let name = format!(
                                    "zz/halt/{}/{}/{}/{}",
                                    d.tag(),
                                    ckey(&c),
                                    skey(&s_in),
                                    end as u8
                                );
                                let sides = self.sides(
                                    d,
                                    None,
                                    Some(self.up(d, &c, end)),
                                    Some(self.scan(d, &s_in)),
                                    None,
                                );
                                self.add(name, Some(c.clone()), sides);
                            }
                            Some(Action::Out(c2, s2)) => {
                                let name = format!(
                                    "zz/int/{}/{}/{}/{}",
                                    d.tag(),
                                    ckey(&c),
                                    skey(&s_in),
                                    end as u8
                                );
                                let ahead = if end {
                                    Some(self.ext(d, &s2))
                                } else {
                                    Some(self.scan(d, &s2))
                                };
                                let sides = self.sides(
                                    d,
                                    Some(self.up(up_d, &c2, false)),
                                    Some(self.up(d, &c, end)),
                                    Some(self.scan(d, &s_in)),
                                    ahead,
                                );
                                self.add(name, Some(c2), sides);
                            }
                        }
                    }
                }
            }
            // Extension tiles: the one fresh blank cell at the row's leading
            // end; carries the step glue for the next row.
            let blank = Cell::Sym(self.sym_ix(&self.tm.blank));
            for s in self.all_scans() {
                let content = match s {
                    Scan::Copy => blank.clone(),
                    Scan::Dep(q) => Cell::Head(q, self.sym_ix(&self.tm.blank)),
                };
                let name = format!("zz/ext/{}/{}", d.tag(), skey(&s));
                let sides = self.sides(
                    d,
                    Some(self.step(d.flip(), &content, false)),
                    None,
                    Some(self.ext(d, &s)),
                    None,
                );
                self.add(name, Some(content), sides);
            }
        }
    }

    fn emit_seed(&mut self, input: &[String]) -> Vec<(Point, String)> {
        let blank_ix = self.sym_ix(&self.tm.blank.clone());
        let start_ix = self.state_ix(&self.tm.start.clone());
        let mut contents: Vec<Cell> = Vec::new();
        if input.is_empty() {
            contents.push(Cell::Head(start_ix, blank_ix));
        } else {
            for (i, s) in input.iter().enumerate() {
                let a = self.sym_ix(s);
                contents.push(if i == 0 { Cell::Head(start_ix, a) } else { Cell::Sym(a) });
            }
        }
        let m = contents.len();
        self.codec.width0 = m;
        let mut placements = Vec::new();
        for (i, c) in contents.iter().enumerate() {
            let name = format!("zz/seed/{i}");
            let west = (i > 0).then(|| Glue::new(format!("zz/seedbond/{}", i - 1), 2));
            let east = (i + 1 < m).then(|| Glue::new(format!("zz/seedbond/{i}"), 2));
            let north = if i + 1 == m {
                Some(self.step(RowDir::Rl, c, m == 1))
            } else {
                Some(self.up(RowDir::Rl, c, i == 0))
            };
            let mut sides: [Option<Glue>; 4] = [None, None, None, None];
            sides[Dir::North.index()] = north;
            sides[Dir::East.index()] = east;
            sides[Dir::West.index()] = west;
            self.add(name.clone(), Some(c.clone()), sides);
            placements.push((pt(i as i32, 0), name));
        }
        placements
    }
}

/// Compile a deterministic TM and input into a compact zig-zag TAS at
/// temperature 2, with a codec for reading configurations back.
pub fn compile_tm_to_zigzag(
    tm: &TuringMachine,
    input: &[String],
) -> Result<(TileSystem, ZigZagCodec), ModelError> {
    for s in input {
        if !tm.alphabet.contains(s) {
            return Err(ModelError::Invalid(format!("input symbol `{s}` not in alphabet")));
        }
    }
    let mut c = Compiler {
        tm,
        builder: TileSetBuilder::new(),
        codec: ZigZagCodec {
            content_of: HashMap::new(),
            symbols: tm.alphabet.clone(),
            states: tm.states.clone(),
            width0: 0,
        },
    };
    c.emit_families();
    let seed_names = c.emit_seed(input);
    let tiles = c.builder.finish();
    let seed = seed_names
        .into_iter()
        .map(|(p, name)| (p, tiles.tile_by_name(&name).unwrap()))
        .collect();
    let sys = TileSystem {
        tiles,
        seed,
        temperature: 2,
        class: SystemClass::Plain,
        neg_label: None,
        neg_strength: -1,
    };
    Ok((sys, c.codec))
}

/// Violations found while checking the zig-zag predicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigZagViolation {
    pub step: usize,
    pub at: Point,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct ZigZagReport {
    pub is_zigzag: bool,
    pub is_compact: bool,
    pub violations: Vec<ZigZagViolation>,
    /// Whether the unique sequence reached a terminal assembly within the cap.
    pub terminal: bool,
    pub assembly: Assembly,
}

/// Check the zig-zag and compactness predicates by running the system's
/// (asserted unique) assembly sequence up to `max_steps` attachments.
///
/// Seed tiles are exempt from the compactness scan: a multi-tile seed row
/// needs strength-2 bonds on both horizontal sides to be 2-stable at all.
pub fn check_zigzag(sys: &TileSystem, max_steps: usize) -> ZigZagReport {
    let mut violations = Vec::new();
    if sys.temperature != 2 {
        violations.push(ZigZagViolation {
            step: 0,
            at: pt(0, 0),
            reason: format!("temperature {} != 2", sys.temperature),
        });
    }
    let mut sim = Simulation::new(sys);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut single = true;
    let mut no_north_input = true;
    let mut compact = true;
    let mut terminal = false;
    for step in 0..max_steps {
        let n = sim.frontier_len();
        if n == 0 {
            terminal = true;
            break;
        }
        if n > 1 {
            single = false;
            violations.push(ZigZagViolation {
                step,
                at: sim.frontier()[0].0,
                reason: format!("multiple frontier choices ({n}) at step {step}"),
            });
            break;
        }
        let (p, t) = sim.frontier()[0];
        // inputs of this placement: sides with positive interaction now
        for d in crate::grid::DIRS {
            let q = p.neighbor(d);
            if let Some(u) = sim.asm.tile_at(q) {
                let mine = sys.tiles.tile(t).side(d);
                let theirs = sys.tiles.tile(u).side(d.opposite());
                if sys.side_interaction(mine, theirs) > 0 && d == Dir::North {
                    no_north_input = false;
                    violations.push(ZigZagViolation {
                        step,
                        at: p,
                        reason: "tile attaches with a north input side".into(),
                    });
                }
            }
        }
        // compactness of the placed tile type
        let data = sys.tiles.tile(t);
        for (a, b) in [(Dir::North, Dir::South), (Dir::East, Dir::West)] {
            let sa = data.side(a).map(|g| g.strength).unwrap_or(0);
            let sb = data.side(b).map(|g| g.strength).unwrap_or(0);
            if sa + sb >= 4 {
                compact = false;
                violations.push(ZigZagViolation {
                    step,
                    at: p,
                    reason: format!("opposite-side strengths {sa}+{sb} >= 4 on `{}`", data.name),
                });
            }
        }
        sim.step(Policy::Deterministic, &mut rng);
    }
    if sim.frontier_len() == 0 {
        terminal = true;
    }
    let is_zigzag = single && no_north_input && sys.temperature == 2;
    ZigZagReport {
        is_zigzag,
        is_compact: is_zigzag && compact,
        violations,
        terminal,
        assembly: sim.asm,
    }
}

/// Decode the configuration encoded by a fully formed row of a compiled
/// assembly: (state if the head is in this row, head position, tape window
/// over the row's extent).
pub fn extract_configuration(
    sys: &TileSystem,
    asm: &Assembly,
    row: i32,
    codec: &ZigZagCodec,
) -> Result<(String, i64, Vec<String>), ModelError> {
    let (lo, hi) = codec.row_extent(row);
    let mut window = Vec::new();
    let mut head: Option<(i64, usize)> = None;
    for x in lo..=hi {
        let Some(t) = asm.tile_at(pt(x, row)) else {
            return Err(ModelError::IncompleteRow(row));
        };
        let name = &sys.tiles.tile(t).name;
        let Some(cell) = codec.content_of.get(name) else {
            return Err(ModelError::Invalid(format!("tile `{name}` has no content")));
        };
        match cell {
            Cell::Sym(a) => window.push(codec.symbols[*a].clone()),
            Cell::Head(q, a) => {
                window.push(codec.symbols[*a].clone());
                head = Some((x as i64, *q));
            }
        }
    }
    let Some((pos, q)) = head else {
        return Err(ModelError::Invalid(format!("row {row} has no head cell")));
    };
    Ok((codec.states[q].clone(), pos, window))
}

/// Number of complete rows in a compiled assembly (row indices 0..n).
pub fn complete_rows(asm: &Assembly, codec: &ZigZagCodec) -> i32 {
    let mut row = 0;
    loop {
        let (lo, hi) = codec.row_extent(row);
        let full = (lo..=hi).all(|x| asm.occupied(pt(x, row)));
        if !full {
            return row;
        }
        row += 1;
    }
}

/// The expected per-row configurations: each row applies the pending
/// transition only when its direction matches the row's sweep direction.
pub fn expected_row_configs(tm: &TuringMachine, input: &[String], rows: i32) -> Vec<Config> {
    let mut cfg = Config::initial(tm, input);
    let mut out = vec![cfg.clone()];
    for row in 1..rows {
        let dir = if row % 2 == 1 { RowDir::Rl } else { RowDir::Lr };
        let sym = cfg.read(tm, cfg.head);
        if let Some(rule) = tm.rule(&cfg.state, &sym) {
            let applies =
                matches!((rule.mv, dir), (Move::Right, RowDir::Lr) | (Move::Left, RowDir::Rl));
            if applies {
                cfg.step(tm);
            }
        }
        out.push(cfg.clone());
    }
    out
}

/// Decoded rows with stutter (skip rows) collapsed; equals the interpreter
/// trace prefix on a faithful compilation.
pub fn collapsed_trace(
    sys: &TileSystem,
    asm: &Assembly,
    codec: &ZigZagCodec,
) -> Result<Vec<(String, i64, HashMap<i64, String>)>, ModelError> {
    let rows = complete_rows(asm, codec);
    let mut out: Vec<(String, i64, HashMap<i64, String>)> = Vec::new();
    for row in 0..rows {
        let (state, head, window) = extract_configuration(sys, asm, row, codec)?;
        let (lo, _) = codec.row_extent(row);
        let mut tape = HashMap::new();
        for (i, s) in window.iter().enumerate() {
            tape.insert(lo as i64 + i as i64, s.clone());
        }
        let entry = (state, head, tape);
        let is_dup = out.last().map_or(false, |prev| {
            prev.0 == entry.0
                && prev.1 == entry.1
                && entry.2.iter().all(|(k, v)| {
                    prev.2.get(k).map_or(v == &codec.symbols[0] || true, |pv| pv == v)
                })
        });
        // duplicate detection must ignore cells the earlier row did not cover
        let is_dup = is_dup && {
            let prev = out.last().unwrap();
            prev.2.iter().all(|(k, v)| entry.2.get(k) == Some(v))
        };
        if !is_dup {
            out.push(entry);
        }
    }
    Ok(out)
}

pub use self::tests_support::*;

mod tests_support {
    use super::*;
    use crate::tm::interpret;

    /// End-to-end fidelity check of a compiled zig-zag system against the
    /// direct interpreter, over every complete row of `asm`.
    pub fn verify_zigzag_fidelity(
        tm: &TuringMachine,
        input: &[String],
        sys: &TileSystem,
        asm: &Assembly,
        codec: &ZigZagCodec,
    ) -> Result<usize, String> {
        let rows = complete_rows(asm, codec);
        if rows == 0 {
            return Err("no complete rows".into());
        }
        let expected = expected_row_configs(tm, input, rows);
        for row in 0..rows {
            let (state, head, window) =
                extract_configuration(sys, asm, row, codec).map_err(|e| e.to_string())?;
            let exp = &expected[row as usize];
            let (lo, hi) = codec.row_extent(row);
            if state != exp.state || head != exp.head {
                return Err(format!(
                    "row {row}: decoded ({state}, {head}) expected ({}, {})",
                    exp.state, exp.head
                ));
            }
            let exp_window = exp.window(tm, lo as i64, hi as i64);
            if window != exp_window {
                return Err(format!("row {row}: tape {window:?} expected {exp_window:?}"));
            }
        }
        // the interpreter trace must be fully covered when the run halted
        let (trace, halted) = interpret(tm, input, 100_000);
        if halted {
            let final_rowcfg = &expected[(rows - 1) as usize];
            let fin = trace.last().unwrap();
            if final_rowcfg.state != fin.state || final_rowcfg.head != fin.head {
                return Err("final complete row does not show the halting configuration".into());
            }
        }
        Ok(rows as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_class;
    use crate::sim::{run, Termination};
    use crate::tm::fixtures;

    fn compile_and_run(
        tm: &TuringMachine,
        input: &str,
        cap: usize,
    ) -> (TileSystem, ZigZagCodec, Assembly, Termination) {
        let input = fixtures::input(input);
        let (sys, codec) = compile_tm_to_zigzag(tm, &input).unwrap();
        let out = run(&sys, Policy::Deterministic, cap);
        (sys, codec, out.assembly, out.reason)
    }

    #[test]
    fn compiled_system_is_compact_zigzag() {
        let tm = fixtures::unary_incrementer();
        let input = fixtures::input("111");
        let (sys, _codec) = compile_tm_to_zigzag(&tm, &input).unwrap();
        let report = check_zigzag(&sys, 10_000);
        assert!(report.is_zigzag, "violations: {:?}", report.violations);
        assert!(report.is_compact, "violations: {:?}", report.violations);
        assert!(report.terminal);
    }

    #[test]
    fn unary_incrementer_tape_readback() {
        let tm = fixtures::unary_incrementer();
        let (sys, codec, asm, reason) = compile_and_run(&tm, "111", 10_000);
        assert_eq!(reason, Termination::Terminal);
        let rows = complete_rows(&asm, &codec);
        assert!(rows >= 2);
        verify_zigzag_fidelity(&tm, &fixtures::input("111"), &sys, &asm, &codec).unwrap();
        // final complete row must read back 1111
        let (_, _, window) = extract_configuration(&sys, &asm, rows - 1, &codec).unwrap();
        let ones: Vec<&String> = window.iter().filter(|s| s.as_str() == "1").collect();
        assert_eq!(ones.len(), 4);
    }

    #[test]
    fn parity_checker_reaches_accepting_state() {
        let tm = fixtures::parity_checker();
        let (sys, codec, asm, reason) = compile_and_run(&tm, "1011", 20_000);
        assert_eq!(reason, Termination::Terminal);
        let rows = complete_rows(&asm, &codec);
        let (trace, halted) = crate::tm::interpret(&tm, &fixtures::input("1011"), 10_000);
        assert!(halted);
        assert!(rows as usize >= trace.len() - 1, "row count >= TM step count");
        verify_zigzag_fidelity(&tm, &fixtures::input("1011"), &sys, &asm, &codec).unwrap();
        let (state, _, _) = extract_configuration(&sys, &asm, rows - 1, &codec).unwrap();
        assert_eq!(state, "acc-odd");
    }

    #[test]
    fn copier_handles_deferred_left_moves() {
        let tm = fixtures::three_symbol_copier();
        let (sys, codec, asm, reason) = compile_and_run(&tm, "abc", 20_000);
        assert_eq!(reason, Termination::Terminal);
        verify_zigzag_fidelity(&tm, &fixtures::input("abc"), &sys, &asm, &codec).unwrap();
    }

    #[test]
    fn immediate_halt_is_finite() {
        // machine with no rules halts at once
        let tm = TuringMachine {
            states: vec!["q".into()],
            alphabet: vec!["_".into()],
            blank: "_".into(),
            start: "q".into(),
            halts: vec![],
            delta: HashMap::new(),
        };
        let (sys, _codec) = compile_tm_to_zigzag(&tm, &[]).unwrap();
        let out = run(&sys, Policy::Deterministic, 1000);
        assert_eq!(out.reason, Termination::Terminal);
        assert!(out.assembly.len() <= 3);
    }

    #[test]
    fn compiled_tile_count_is_linear_in_states_times_symbols(){
        for (tm, name, input) in [
            (fixtures::unary_incrementer(), "inc", "11"),
            (fixtures::parity_checker(), "parity", "11"),
            (fixtures::three_symbol_copier(), "copier", "ab"),
        ] {
            let input = fixtures::input(input);
            let (sys, _) = compile_tm_to_zigzag(&tm, &input).unwrap();
            let qg = tm.states.len() * tm.alphabet.len();
            assert!(
                sys.tiles.len() <= 16 * qg + 64,
                "{name}: {} tiles for |Q||G|={qg}",
                sys.tiles.len()
            );
        }
    }

    #[test]
    fn plain_class_has_no_violations() {
        let tm = fixtures::unary_incrementer();
        let (sys, _) = compile_tm_to_zigzag(&tm, &fixtures::input("1")).unwrap();
        assert!(validate_class(&sys).is_empty());
    }

    #[test]
    fn north_input_flagged() {
        // single tile binding via its north side: not zig-zag
        let mut b = TileSetBuilder::new();
        b.add_tile("seed", [None, None, Some(Glue::new("dn", 2)), None]).unwrap();
        b.add_tile("below", [Some(Glue::new("dn", 2)), None, None, None]).unwrap();
        let tiles = b.finish();
        let sys = TileSystem {
            tiles,
            seed: vec![(pt(0, 0), 0)],
            temperature: 2,
            class: SystemClass::Plain,
            neg_label: None,
            neg_strength: -1,
        };
        let report = check_zigzag(&sys, 100);
        assert!(!report.is_zigzag);
    }
}
