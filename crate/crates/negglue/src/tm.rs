//! Deterministic single-tape Turing machines and a direct interpreter, used
//! as the oracle for the zig-zag compilation pipeline.

use crate::io::TmJson;
use crate::model::ModelError;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub write: String,
    pub mv: Move,
    pub next: String,
}

#[derive(Clone, Debug)]
pub struct TuringMachine {
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    pub blank: String,
    pub start: String,
    pub halts: Vec<String>,
    pub delta: HashMap<(String, String), Rule>,
}

impl TuringMachine {
    pub fn from_json(j: &TmJson) -> Result<Self, ModelError> {
        let mut delta = HashMap::new();
        for r in &j.delta {
            let mv = match r.r#move.as_str() {
                "L" => Move::Left,
                "R" => Move::Right,
                other => return Err(ModelError::Invalid(format!("bad move `{other}`"))),
            };
            let key = (r.state.clone(), r.read.clone());
            if delta
                .insert(key.clone(), Rule { write: r.write.clone(), mv, next: r.next.clone() })
                .is_some()
            {
                return Err(ModelError::Invalid(format!(
                    "nondeterministic machine: duplicate rule for ({}, {})",
                    key.0, key.1
                )));
            }
        }
        if !j.alphabet.contains(&j.blank) {
            return Err(ModelError::Invalid("blank symbol not in alphabet".into()));
        }
        Ok(TuringMachine {
            states: j.states.clone(),
            alphabet: j.alphabet.clone(),
            blank: j.blank.clone(),
            start: j.start.clone(),
            halts: j.halts.clone(),
            delta,
        })
    }

    pub fn to_json(&self) -> TmJson {
        let mut delta: Vec<_> = self
            .delta
            .iter()
            .map(|((q, a), r)| crate::io::TmRuleJson {
                state: q.clone(),
                read: a.clone(),
                write: r.write.clone(),
                r#move: match r.mv {
                    Move::Left => "L".into(),
                    Move::Right => "R".into(),
                },
                next: r.next.clone(),
            })
            .collect();
        delta.sort_by(|a, b| (&a.state, &a.read).cmp(&(&b.state, &b.read)));
        TmJson {
            format_version: crate::io::FORMAT_VERSION,
            states: self.states.clone(),
            alphabet: self.alphabet.clone(),
            blank: self.blank.clone(),
            start: self.start.clone(),
            halts: self.halts.clone(),
            delta,
        }
    }

    pub fn is_halt_state(&self, q: &str) -> bool {
        self.halts.iter().any(|h| h == q)
    }

    /// A configuration halts when its state is a halt state or no rule applies.
    pub fn rule(&self, q: &str, a: &str) -> Option<&Rule> {
        if self.is_halt_state(q) {
            return None;
        }
        self.delta.get(&(q.to_string(), a.to_string()))
    }
}

/// A TM configuration: state, head position and the written tape cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub state: String,
    pub head: i64,
    pub tape: HashMap<i64, String>,
}

impl Config {
    pub fn initial(tm: &TuringMachine, input: &[String]) -> Config {
        let mut tape = HashMap::new();
        for (i, s) in input.iter().enumerate() {
            tape.insert(i as i64, s.clone());
        }
        Config { state: tm.start.clone(), head: 0, tape }
    }

    pub fn read(&self, tm: &TuringMachine, pos: i64) -> String {
        self.tape.get(&pos).cloned().unwrap_or_else(|| tm.blank.clone())
    }

    pub fn halted(&self, tm: &TuringMachine) -> bool {
        tm.rule(&self.state, &self.read(tm, self.head)).is_none()
    }

    /// One TM step; returns false when already halted.
    pub fn step(&mut self, tm: &TuringMachine) -> bool {
        let sym = self.read(tm, self.head);
        let Some(rule) = tm.rule(&self.state, &sym) else {
            return false;
        };
        let rule = rule.clone();
        self.tape.insert(self.head, rule.write);
        self.head += match rule.mv {
            Move::Left => -1,
            Move::Right => 1,
        };
        self.state = rule.next;
        true
    }

    /// Tape contents over an inclusive window.
    pub fn window(&self, tm: &TuringMachine, lo: i64, hi: i64) -> Vec<String> {
        (lo..=hi).map(|i| self.read(tm, i)).collect()
    }
}

/// Run to halt or `max_steps`; returns the trace of configurations
/// (`trace[t]` is the configuration after `t` steps) and whether it halted.
pub fn interpret(tm: &TuringMachine, input: &[String], max_steps: usize) -> (Vec<Config>, bool) {
    let mut cfg = Config::initial(tm, input);
    let mut trace = vec![cfg.clone()];
    for _ in 0..max_steps {
        if !cfg.step(tm) {
            return (trace, true);
        }
        trace.push(cfg.clone());
    }
    let halted = cfg.halted(tm);
    (trace, halted)
}

/// Bundled fixture machines used across the test and acceptance suites.
pub mod fixtures {
    use super::*;

    fn syms(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    pub fn input(s: &str) -> Vec<String> {
        s.chars().map(|c| c.to_string()).collect()
    }

    /// Walks right over a block of 1s and appends one more, then halts.
    pub fn unary_incrementer() -> TuringMachine {
        let mut delta = HashMap::new();
        delta.insert(
            ("scan".into(), "1".into()),
            Rule { write: "1".into(), mv: Move::Right, next: "scan".into() },
        );
        delta.insert(
            ("scan".into(), "_".into()),
            Rule { write: "1".into(), mv: Move::Right, next: "done".into() },
        );
        TuringMachine {
            states: syms(&["scan", "done"]),
            alphabet: syms(&["1", "_"]),
            blank: "_".into(),
            start: "scan".into(),
            halts: syms(&["done"]),
            delta,
        }
    }

    /// Computes the parity of the 1s in the input, halting in `even`/`odd`.
    pub fn parity_checker() -> TuringMachine {
        let mut delta = HashMap::new();
        for (q, flip) in [("even", "odd"), ("odd", "even")] {
            delta.insert(
                (q.to_string(), "1".into()),
                Rule { write: "1".into(), mv: Move::Right, next: flip.into() },
            );
            delta.insert(
                (q.to_string(), "0".into()),
                Rule { write: "0".into(), mv: Move::Right, next: q.into() },
            );
        }
        delta.insert(
            ("even".into(), "_".into()),
            Rule { write: "_".into(), mv: Move::Left, next: "acc-even".into() },
        );
        delta.insert(
            ("odd".into(), "_".into()),
            Rule { write: "_".into(), mv: Move::Left, next: "acc-odd".into() },
        );
        TuringMachine {
            states: syms(&["even", "odd", "acc-even", "acc-odd"]),
            alphabet: syms(&["0", "1", "_"]),
            blank: "_".into(),
            start: "even".into(),
            halts: syms(&["acc-even", "acc-odd"]),
            delta,
        }
    }

    /// Copies a block over {a,b,c} one cell to the right, moving left to
    /// fetch each symbol; exercises deferred left-moves in the zig-zag rows.
    pub fn three_symbol_copier() -> TuringMachine {
        let mut delta = HashMap::new();
        // Walk right to the end of the block, remembering nothing; at the
        // blank, step left, read the last symbol, erase it and re-write it one
        // cell right, then halt. Small but uses both head directions.
        delta.insert(
            ("fwd".into(), "a".into()),
            Rule { write: "a".into(), mv: Move::Right, next: "fwd".into() },
        );
        delta.insert(
            ("fwd".into(), "b".into()),
            Rule { write: "b".into(), mv: Move::Right, next: "fwd".into() },
        );
        delta.insert(
            ("fwd".into(), "c".into()),
            Rule { write: "c".into(), mv: Move::Right, next: "fwd".into() },
        );
        delta.insert(
            ("fwd".into(), "_".into()),
            Rule { write: "_".into(), mv: Move::Left, next: "grab".into() },
        );
        for s in ["a", "b", "c"] {
            delta.insert(
                ("grab".into(), s.into()),
                Rule { write: "_".into(), mv: Move::Right, next: format!("put-{s}") },
            );
            delta.insert(
                (format!("put-{s}"), "_".into()),
                Rule { write: s.into(), mv: Move::Right, next: "done".into() },
            );
        }
        TuringMachine {
            states: syms(&["fwd", "grab", "put-a", "put-b", "put-c", "done"]),
            alphabet: syms(&["a", "b", "c", "_"]),
            blank: "_".into(),
            start: "fwd".into(),
            halts: syms(&["done"]),
            delta,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unary_incrementer_appends_one() {
        let tm = fixtures::unary_incrementer();
        let (trace, halted) = interpret(&tm, &fixtures::input("111"), 100);
        assert!(halted);
        let last = trace.last().unwrap();
        assert_eq!(last.window(&tm, 0, 3), vec!["1", "1", "1", "1"]);
    }

    #[test]
    fn parity_checker_counts_ones() {
        let tm = fixtures::parity_checker();
        let (trace, halted) = interpret(&tm, &fixtures::input("1011"), 100);
        assert!(halted);
        assert_eq!(trace.last().unwrap().state, "acc-odd");
        let (trace, _) = interpret(&tm, &fixtures::input("11"), 100);
        assert_eq!(trace.last().unwrap().state, "acc-even");
    }

    #[test]
    fn copier_moves_last_symbol() {
        let tm = fixtures::three_symbol_copier();
        let (trace, halted) = interpret(&tm, &fixtures::input("abc"), 100);
        assert!(halted);
        let last = trace.last().unwrap();
        assert_eq!(last.window(&tm, 0, 3), vec!["a", "b", "_", "c"]);
    }
}
