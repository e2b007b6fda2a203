//! The O(log N) prgTAS square: three bump/dent binary counters forming a
//! `U`, comb teeth, a crawler keyed by overhang glues, cap bands and a
//! generic filler flood. Every bit read uses a two-candidate probe where the
//! wrong candidate overlaps the negative glue (net <= 0 for every
//! neg strength <= -1) and the right candidate never touches it (net exactly
//! +1), so the terminal assembly is independent of the negative strength.
//!
//! Counter layout (logical coordinates; x across the width W = 4k+5 for the
//! first counter, y along growth):
//!
//! * rows 0..1: seed band (floor + profile walls) displaying n0;
//! * per round: increment band (3 rows, right-to-left travel) then copy band
//!   (2 rows, left-to-right travel);
//! * a 3-row termination band after the copy that reads all ones;
//! * `cap` flat rows on top.
//!
//! Profiles alternate between two dent conventions: seed/copy bands write
//! "A" profiles (dent at 5+4i, wall east of it) read by increment bands
//! travelling west; increment bands write "B" profiles (dent at 4+4i, wall
//! west of it) read by copy bands travelling east. Bands fill the previous
//! profile's gap cells as they read, so the terminal assembly has no holes.

use super::{fallback_square, Ctx, Emitter, LSides, Orient};
use crate::grid::pt;
use crate::model::{Glue, ModelError, SystemClass, TileSystem};
use serde::{Deserialize, Serialize};

/// Parameters of the construction for a target square size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrgSquareParams {
    /// Target dimension N.
    pub big_n: u32,
    /// n = floor((N-1)/5), the count/increment row-pair budget.
    pub n: u32,
    /// k = ceil(log2 n), logical counter width in bits.
    pub k: u32,
    /// K = 5 + 4k, actual counter width in tiles.
    pub kk: u32,
    /// Initial value of the first counter.
    pub n0: u64,
    /// Rows of cap tiles above the first counter.
    pub x: u32,
    /// Displayed values of the first counter: n0 .. 2^k - 1.
    pub rounds: u32,
}

fn ceil_div(a: u32, b: u32) -> u32 {
    a.div_ceil(b)
}

fn ceil_log2(n: u32) -> u32 {
    assert!(n >= 1);
    32 - (n - 1).leading_zeros()
}

/// Evaluate the closed-form parameters. Errors when N is below the
/// construction's minimum ([`prg_n_min`]); callers fall back to the
/// hard-coded small square.
pub fn prg_square_params(big_n: u32) -> Result<PrgSquareParams, ModelError> {
    if big_n < 6 {
        return Err(ModelError::Invalid(format!("N={big_n} unsupported")));
    }
    let n = (big_n - 1) / 5;
    if n < 2 {
        return Err(ModelError::Invalid(format!("N={big_n}: n={n} too small")));
    }
    let k = ceil_log2(n).max(1);
    let kk = 5 + 4 * k;
    let rounds_i = n as i64 - ceil_div(kk, 5) as i64;
    let x_i = big_n as i64 - (kk as i64 + 5 * rounds_i);
    let n0 = (1i64 << k) - rounds_i;
    if rounds_i < 1 || !(1..=9).contains(&x_i) || n0 < 0 {
        return Err(ModelError::Invalid(format!(
            "N={big_n}: parameters out of range (rounds={rounds_i}, x={x_i})"
        )));
    }
    // the three-counter layout also needs room for the base and right arm
    let l2 = big_n as i64 - kk as i64 - 2;
    if l2 < 6 || big_n as i64 - (kk as i64 + 2) < kk as i64 + 2 {
        return Err(ModelError::Invalid(format!("N={big_n}: no room for the U layout")));
    }
    Ok(PrgSquareParams {
        big_n,
        n,
        k,
        kk,
        n0: n0 as u64,
        x: x_i as u32,
        rounds: rounds_i as u32,
    })
}

/// Smallest N the three-counter construction supports; below this the
/// generator emits the hard-coded fallback.
pub fn prg_n_min() -> u32 {
    for n in 6..10_000 {
        if prg_square_params(n).is_ok() {
            return n;
        }
    }
    unreachable!("construction supports all large N")
}

/// Size parameters of one counter emission.
struct CounterCfg {
    k: u32,
    /// Logical width in columns: 2 + 4k + east_margin.
    width: i32,
    /// Displayed values n0 .. 2^k - 1.
    rounds: u32,
    n0: u64,
    /// Flat rows on top of the termination band.
    cap: u32,
    /// First counter extras.
    teeth: Option<u32>,
    overhangs: bool,
    /// Which end of the cap carries the special hook column.
    hook_east: bool,
}

impl CounterCfg {
    fn em(&self) -> i32 {
        self.width - 2 - 4 * self.k as i32
    }
    fn bit(&self, v: u64, unit: u32) -> u8 {
        ((v >> (self.k - 1 - unit)) & 1) as u8
    }
    /// Travel row of round j's increment band (j = 1..rounds-1).
    fn y_inc(&self, j: u32) -> i32 {
        2 + 5 * (j as i32 - 1)
    }
    fn y_term(&self) -> i32 {
        2 + 5 * (self.rounds as i32 - 1)
    }
    fn cap_top(&self) -> i32 {
        self.y_term() + 2 + self.cap as i32
    }
}

struct CounterEmitter<'a, 'e> {
    cx: &'a mut Ctx<'e>,
    cfg: CounterCfg,
}

type R = Result<(), ModelError>;

impl<'a, 'e> CounterEmitter<'a, 'e> {
    fn g(&self, s: String) -> Option<Glue> {
        self.cx.g(s)
    }

    fn sides(
        &self,
        n: Option<Glue>,
        e: Option<Glue>,
        s: Option<Glue>,
        w: Option<Glue>,
    ) -> LSides {
        LSides::new(n, e, s, w)
    }

    /// Seed band: floor row 0 chained westward from the per-counter anchor,
    /// profile walls on row 1 bound from floor anchors, margin climbs, and
    /// the handoff toward the first reader band.
    fn emit_seed_band(&mut self, anchor: FloorAnchor) -> R {
        let w = self.cfg.width;
        let k = self.cfg.k as i32;
        let em = self.cfg.em();
        let n0 = self.cfg.n0;
        for x in (0..w).rev() {
            let mut north = None;
            let mut name = format!("sf/{x}");
            for i in 0..k {
                if x == 5 + 4 * i {
                    // dent floor: bit-0 marker
                    let b = self.cfg.bit(n0, i as u32);
                    if b == 0 {
                        north = self.cx.neg();
                    }
                    name = format!("sf/{x}/b{b}");
                } else if x == 6 + 4 * i {
                    north = self.g(format!("swA/{i}"));
                }
            }
            if x == 0 {
                north = self.g("swc/w0".into());
            }
            if x == w - 2 {
                north = self.g("swc/e0".into());
            }
            let mut east = (x < w - 1).then(|| self.g(format!("sf/{}", x + 1)).unwrap());
            let mut south = None;
            if x == w - 1 {
                match &anchor {
                    FloorAnchor::East(label) => east = Some(Glue::new(label.clone(), 1)),
                    FloorAnchor::South(label) => south = Some(Glue::new(label.clone(), 1)),
                }
            }
            if south.is_none() && self.cfg.teeth.is_some() {
                south = if x == w - 1 {
                    self.g("toothR/0".into())
                } else {
                    self.g("tooth/0".into())
                };
            }
            let west = (x > 0).then(|| self.g(format!("sf/{x}")).unwrap());
            self.cx.put(x, 0, &name, self.sides(north, east, south, west))?;
        }
        // profile walls, bit-1 markers on the west face
        for i in 0..k {
            let b = self.cfg.bit(n0, i as u32);
            let west = (b == 1).then(|| super::neg_glue());
            self.cx.put(
                6 + 4 * i,
                1,
                &format!("sw/{i}/b{b}"),
                self.sides(None, None, self.g(format!("swA/{i}")), west),
            )?;
        }
        // west margin of the profile row
        self.cx.put(
            0,
            1,
            "sp/0",
            self.sides(None, self.g("sp/1".into()), self.g("swc/w0".into()), None),
        )?;
        self.cx.put(1, 1, "sp/1", self.sides(None, None, None, self.g("sp/1".into())))?;
        // east margin climb: anchored over W-2, fills W-1, runs west to
        // W-em+1 whose north carries the handoff
        let handoff = if self.cfg.rounds == 1 { "hand/term" } else { "hand/inc" };
        self.cx.put(
            w - 2,
            1,
            "se/a",
            self.sides(
                if em == 3 { self.g(handoff.into()) } else { None },
                self.g("se/f".into()),
                self.g("swc/e0".into()),
                if em > 3 { self.g("se/r0".into()) } else { None },
            ),
        )?;
        self.cx.put(w - 1, 1, "se/f", self.sides(None, None, None, self.g("se/f".into())))?;
        // for wider east margins run further west to the handoff column
        let mut x = w - 3;
        let mut j = 0;
        while x >= w - em + 1 {
            let last = x == w - em + 1;
            self.cx.put(
                x,
                1,
                &format!("se/r{j}"),
                self.sides(
                    if last { self.g(handoff.into()) } else { None },
                    self.g(format!("se/r{j}")),
                    None,
                    if last { None } else { self.g(format!("se/r{}", j + 1)) },
                ),
            )?;
            x -= 1;
            j += 1;
        }
        Ok(())
    }

    /// Increment band: 3 rows starting at travel row `y`, reading the A
    /// profile below (value `v`), writing the B profile of `v+1`.
    fn emit_inc_band(&mut self, y: i32, v: u64) -> R {
        let w = self.cfg.width;
        let em = self.cfg.em();
        let k = self.cfg.k as i32;
        // east turn-in consumes the handoff below
        self.cx.put(
            w - em + 1,
            y,
            "ti/1",
            self.sides(
                None,
                if em > 3 { self.g("ti/r0".into()) } else { self.g("ti/f".into()) },
                self.g("hand/inc".into()),
                self.g("ti/2".into()),
            ),
        )?;
        // east run filling the rest of the travel row margin
        if em == 3 {
            self.cx.put(w - 1, y, "ti/f", self.sides(None, None, None, self.g("ti/f".into())))?;
        } else {
            for (j, x) in (w - em + 2..w).enumerate() {
                let lastr = x == w - 1;
                self.cx.put(
                    x,
                    y,
                    &format!("ti/r{j}"),
                    self.sides(
                        None,
                        if lastr { None } else { self.g(format!("ti/r{}", j + 1)) },
                        None,
                        self.g(format!("ti/r{j}")),
                    ),
                )?;
            }
        }
        self.cx.put(
            w - em,
            y,
            "ti/2",
            self.sides(
                self.g("mi/0".into()),
                self.g("ti/2".into()),
                None,
                self.g(format!("wb/in/{}/1", k - 1)),
            ),
        )?;
        // east margin fills of the floor and B-profile rows
        for (j, x) in (w - em..w).enumerate() {
            let last = x == w - 1;
            self.cx.put(
                x,
                y + 1,
                &format!("mi/{j}"),
                self.sides(
                    if last { self.g("mi/up".into()) } else { None },
                    if last { None } else { self.g(format!("mi/{}", j + 1)) },
                    if j == 0 { self.g("mi/0".into()) } else { None },
                    if j == 0 { None } else { self.g(format!("mi/{j}")) },
                ),
            )?;
        }
        for (j, x) in (w - em + 1..w).rev().enumerate() {
            let last = x == w - em + 1;
            self.cx.put(
                x,
                y + 2,
                &format!("mt/{j}"),
                self.sides(
                    None,
                    if j == 0 { None } else { self.g(format!("mt/{j}")) },
                    if j == 0 { self.g("mi/up".into()) } else { None },
                    if last { None } else { self.g(format!("mt/{}", j + 1)) },
                ),
            )?;
        }
        // units east to west, carry rippling west. Travel-row cells per unit:
        // launcher over the dent, a fill, the compute cell, and the over-wall
        // cell feeding the next unit.
        let mut carry: u8 = 1;
        for i in (0..k).rev() {
            let a = 5 + 4 * i;
            let b = self.cfg.bit(v, i as u32);
            let c = carry;
            let bp = b ^ c;
            let c_out = b & c;
            self.cx.put(
                a,
                y,
                &format!("wb/l/{i}/{c}"),
                self.sides(None, self.g(format!("wb/in/{i}/{c}")), self.g(format!("wb/pr/{i}/{c}")), None),
            )?;
            // both probe candidates exist; only the matching one can attach
            for bb in [0u8, 1] {
                self.cx.ty(
                    &format!("wb/p/{i}/{c}/{bb}"),
                    self.sides(
                        self.g(format!("wb/pr/{i}/{c}")),
                        if bb == 0 { self.cx.neg() } else { None },
                        if bb == 1 { self.cx.neg() } else { None },
                        self.g(format!("wb/af/{i}/{c}/{bb}")),
                    ),
                )?;
            }
            self.cx.at(a, y - 1, &format!("wb/p/{i}/{c}/{b}"))?;
            self.cx.put(
                a - 1,
                y - 1,
                &format!("wb/g3/{i}/{c}/{b}"),
                self.sides(
                    self.g(format!("wb/f3/{i}")),
                    self.g(format!("wb/af/{i}/{c}/{b}")),
                    None,
                    self.g(format!("wb/g4/{i}/{c}/{b}")),
                ),
            )?;
            self.cx.put(
                a - 1,
                y,
                &format!("wb/f3/{i}"),
                self.sides(None, None, self.g(format!("wb/f3/{i}")), None),
            )?;
            self.cx.put(
                a - 2,
                y - 1,
                &format!("wb/g4/{i}/{c}/{b}"),
                self.sides(
                    self.g(format!("wb/rise/{i}/{c}/{b}")),
                    self.g(format!("wb/g4/{i}/{c}/{b}")),
                    None,
                    None,
                ),
            )?;
            self.cx.put(
                a - 2,
                y,
                &format!("wb/t/{i}/{c}/{b}"),
                self.sides(
                    self.g(format!("wb/v1/{i}/{bp}")),
                    None,
                    self.g(format!("wb/rise/{i}/{c}/{b}")),
                    self.g(format!("wb/ow/{i}/{c_out}")),
                ),
            )?;
            let west_out = if i > 0 {
                self.g(format!("wb/in/{}/{c_out}", i - 1))
            } else {
                self.g(format!("wb/west/{c_out}"))
            };
            self.cx.put(
                a - 3,
                y,
                &format!("wb/ow/{i}/{c_out}"),
                self.sides(
                    None,
                    self.g(format!("wb/ow/{i}/{c_out}")),
                    if i == 0 { self.g("wb/dip".into()) } else { None },
                    west_out,
                ),
            )?;
            if i == 0 {
                self.cx.put(
                    2,
                    y - 1,
                    "wb/dip",
                    self.sides(self.g("wb/dip".into()), None, None, None),
                )?;
            }
            // write chain: floor row, then the B wall over the compute column
            self.cx.put(
                a - 2,
                y + 1,
                &format!("wb/v1/{i}/{bp}"),
                self.sides(
                    self.g(format!("wb/wl/{i}/{bp}")),
                    self.g(format!("wb/v2/{i}/{bp}")),
                    self.g(format!("wb/v1/{i}/{bp}")),
                    self.g(format!("wb/v0/{i}")),
                ),
            )?;
            self.cx.put(
                a - 3,
                y + 1,
                &format!("wb/v0/{i}"),
                self.sides(None, self.g(format!("wb/v0/{i}")), None, None),
            )?;
            self.cx.put(
                a - 1,
                y + 1,
                &format!("wb/v2/{i}/{bp}"),
                self.sides(
                    if bp == 0 { self.cx.neg() } else { None },
                    self.g(format!("wb/v3/{i}")),
                    None,
                    self.g(format!("wb/v2/{i}/{bp}")),
                ),
            )?;
            self.cx.put(
                a,
                y + 1,
                &format!("wb/v3/{i}"),
                self.sides(None, None, None, self.g(format!("wb/v3/{i}"))),
            )?;
            self.cx.put(
                a - 2,
                y + 2,
                &format!("wb/w/{i}/{bp}"),
                self.sides(
                    None,
                    if bp == 1 { self.cx.neg() } else { None },
                    self.g(format!("wb/wl/{i}/{bp}")),
                    None,
                ),
            )?;
            carry = c_out;
        }
        assert_eq!(carry, 0, "increment overflow: detection must precede it");
        // west turn-out into the copy band
        self.emit_west_turn(y, false)
    }

    /// West margin chain of an increment (or termination) band, climbing into
    /// the next band's travel row. For the termination band the chain ends
    /// with cap anchors instead of starting a copy band.
    fn emit_west_turn(&mut self, y: i32, term: bool) -> R {
        let p = if term { "ut" } else { "uw" };
        let west_in = if term { "tm/west".to_string() } else { "wb/west/0".to_string() };
        self.cx.put(
            1,
            y,
            &format!("{p}/1"),
            self.sides(None, self.g(west_in), None, self.g(format!("{p}/w1"))),
        )?;
        self.cx.put(
            0,
            y,
            &format!("{p}/2"),
            self.sides(self.g(format!("{p}/w2")), self.g(format!("{p}/w1")), None, None),
        )?;
        self.cx.put(
            0,
            y + 1,
            &format!("{p}/3"),
            self.sides(None, self.g(format!("{p}/w3")), self.g(format!("{p}/w2")), None),
        )?;
        self.cx.put(
            1,
            y + 1,
            &format!("{p}/4"),
            self.sides(self.g(format!("{p}/w4")), None, None, self.g(format!("{p}/w3"))),
        )?;
        if term {
            // top row cells carry cap anchors
            let hook_w = !self.cfg.hook_east;
            self.cx.put(
                1,
                y + 2,
                "ut/5",
                self.sides(self.g("cap/0".into()), None, self.g("ut/w4".into()), self.g("ut/w5".into())),
            )?;
            self.cx.put(
                0,
                y + 2,
                "ut/6",
                self.sides(
                    if hook_w { self.g("caph/0".into()) } else { self.g("cap/0".into()) },
                    self.g("ut/w5".into()),
                    None,
                    None,
                ),
            )?;
            return Ok(());
        }
        self.cx.put(
            1,
            y + 2,
            "uw/5",
            self.sides(None, self.g("uw/w5b".into()), self.g("uw/w4".into()), self.g("uw/w5".into())),
        )?;
        self.cx.put(2, y + 2, "uw/5b", self.sides(None, None, None, self.g("uw/w5b".into())))?;
        self.cx.put(
            0,
            y + 2,
            "uw/6",
            self.sides(self.g("uw/w6".into()), self.g("uw/w5".into()), None, None),
        )?;
        self.cx.put(
            0,
            y + 3,
            "uw/7",
            self.sides(None, self.g("uw/w7".into()), self.g("uw/w6".into()), None),
        )?;
        self.cx.put(
            1,
            y + 3,
            "uw/8",
            self.sides(self.g("uw/w9".into()), self.g("uw/w8".into()), None, self.g("uw/w7".into())),
        )?;
        self.cx.put(
            2,
            y + 3,
            "uw/9",
            self.sides(None, self.g("uw/w10".into()), None, self.g("uw/w8".into())),
        )?;
        self.cx.put(
            3,
            y + 3,
            "uw/10",
            self.sides(None, self.g("eb/in/0/1".into()), None, self.g("uw/w10".into())),
        )?;
        self.cx.put(
            1,
            y + 4,
            "uw/11",
            self.sides(None, None, self.g("uw/w9".into()), self.g("uw/w11".into())),
        )?;
        self.cx.put(0, y + 4, "uw/12", self.sides(None, self.g("uw/w11".into()), None, None))?;
        Ok(())
    }

    /// Copy band: 2 rows starting at travel row `yc`, reading the B profile
    /// of value `v` below, re-displaying it as an A profile, and carrying the
    /// all-ones flag east.
    fn emit_copy_band(&mut self, yc: i32, v: u64) -> R {
        let w = self.cfg.width;
        let em = self.cfg.em();
        let k = self.cfg.k as i32;
        let mut flag: u8 = 1;
        for i in 0..k {
            let d = 4 + 4 * i;
            let b = self.cfg.bit(v, i as u32);
            let f = flag;
            let f2 = f & b;
            // over-wall entry cell; for unit 0 the west turn provides it
            if i > 0 {
                self.cx.put(
                    d - 1,
                    yc,
                    &format!("eb/ow/{i}/{f}"),
                    self.sides(None, self.g(format!("eb/in/{i}/{f}")), None, self.g(format!("eb/ow/{i}/{f}"))),
                )?;
            }
            self.cx.put(
                d,
                yc,
                &format!("eb/l/{i}/{f}"),
                self.sides(None, None, self.g(format!("eb/pr/{i}/{f}")), self.g(format!("eb/in/{i}/{f}"))),
            )?;
            for bb in [0u8, 1] {
                self.cx.ty(
                    &format!("eb/p/{i}/{f}/{bb}"),
                    self.sides(
                        self.g(format!("eb/pr/{i}/{f}")),
                        self.g(format!("eb/af/{i}/{f}/{bb}")),
                        if bb == 1 { self.cx.neg() } else { None },
                        if bb == 0 { self.cx.neg() } else { None },
                    ),
                )?;
            }
            self.cx.at(d, yc - 1, &format!("eb/p/{i}/{f}/{b}"))?;
            self.cx.put(
                d + 1,
                yc - 1,
                &format!("eb/g3/{i}/{f}/{b}"),
                self.sides(
                    self.g(format!("eb/f5/{i}/{f}/{b}")),
                    self.g(format!("eb/g4/{i}")),
                    None,
                    self.g(format!("eb/af/{i}/{f}/{b}")),
                ),
            )?;
            self.cx.put(
                d + 2,
                yc - 1,
                &format!("eb/g4/{i}"),
                self.sides(None, None, None, self.g(format!("eb/g4/{i}"))),
            )?;
            self.cx.put(
                d + 1,
                yc,
                &format!("eb/f5/{i}/{f}/{b}"),
                self.sides(
                    if b == 0 { self.cx.neg() } else { None },
                    self.g(format!("eb/t5/{i}/{f}/{b}")),
                    self.g(format!("eb/f5/{i}/{f}/{b}")),
                    None,
                ),
            )?;
            let e_out = if i + 1 < k {
                self.g(format!("eb/ow/{}/{f2}", i + 1))
            } else {
                self.g(format!("eb/end/{f2}"))
            };
            self.cx.put(
                d + 2,
                yc,
                &format!("eb/t5/{i}/{f}/{b}"),
                self.sides(
                    self.g(format!("eb/wl/{i}/{b}")),
                    e_out,
                    None,
                    self.g(format!("eb/t5/{i}/{f}/{b}")),
                ),
            )?;
            self.cx.put(
                d + 2,
                yc + 1,
                &format!("eb/aw/{i}/{b}"),
                self.sides(
                    None,
                    None,
                    self.g(format!("eb/wl/{i}/{b}")),
                    if b == 1 { self.cx.neg() } else { None },
                ),
            )?;
            flag = f2;
        }
        // east turn-out: margin run, optional overhang, climb, handoff
        let f = flag;
        for (j, x) in (w - em + 1..w).enumerate() {
            let first = j == 0;
            let last = x == w - 1;
            let east = if last {
                self.cfg.overhangs.then(|| self.g("cr/ov".into()).unwrap())
            } else {
                self.g(format!("tr/{f}/{}", j + 1))
            };
            self.cx.put(
                x,
                yc,
                &format!("tr/{f}/{j}"),
                self.sides(
                    if last { self.g(format!("tc/{f}/0")) } else { None },
                    east,
                    None,
                    if first {
                        self.g(format!("eb/end/{f}"))
                    } else {
                        self.g(format!("tr/{f}/{j}"))
                    },
                ),
            )?;
        }
        if self.cfg.overhangs {
            self.cx.put(
                self.cfg.width,
                yc,
                "cr/ov",
                self.sides(None, None, self.cx.neg(), self.g("cr/ov".into())),
            )?;
        }
        let handoff = if f == 1 { "hand/term" } else { "hand/inc" };
        for (j, x) in (w - em + 1..w).rev().enumerate() {
            let first = j == 0;
            let last = x == w - em + 1;
            self.cx.put(
                x,
                yc + 1,
                &format!("tc/{f}/{j}"),
                self.sides(
                    if last { self.g(handoff.into()) } else { None },
                    if first { None } else { self.g(format!("tc/{f}/{j}")) },
                    if first { self.g(format!("tc/{f}/0")) } else { None },
                    if last { None } else { self.g(format!("tc/{f}/{}", j + 1)) },
                ),
            )?;
        }
        Ok(())
    }

    /// Termination band: reads the final A profile with value-agnostic
    /// probes, fills three solid rows, and anchors the cap everywhere on top.
    fn emit_term_band(&mut self, y: i32) -> R {
        let w = self.cfg.width;
        let em = self.cfg.em();
        let k = self.cfg.k as i32;
        self.cx.put(
            w - em + 1,
            y,
            "tt/1",
            self.sides(
                None,
                if em > 3 { self.g("tt/r0".into()) } else { self.g("tt/f".into()) },
                self.g("hand/term".into()),
                self.g("tt/2".into()),
            ),
        )?;
        if em == 3 {
            self.cx.put(w - 1, y, "tt/f", self.sides(None, None, None, self.g("tt/f".into())))?;
        } else {
            for (j, x) in (w - em + 2..w).enumerate() {
                let lastr = x == w - 1;
                self.cx.put(
                    x,
                    y,
                    &format!("tt/r{j}"),
                    self.sides(
                        None,
                        if lastr { None } else { self.g(format!("tt/r{}", j + 1)) },
                        None,
                        self.g(format!("tt/r{j}")),
                    ),
                )?;
            }
        }
        self.cx.put(
            w - em,
            y,
            "tt/2",
            self.sides(
                self.g("tn/0".into()),
                self.g("tt/2".into()),
                None,
                self.g(format!("tm/in/{}", k - 1)),
            ),
        )?;
        for (j, x) in (w - em..w).enumerate() {
            let last = x == w - 1;
            self.cx.put(
                x,
                y + 1,
                &format!("tn/{j}"),
                self.sides(
                    if last { self.g("tn/up".into()) } else { None },
                    if last { None } else { self.g(format!("tn/{}", j + 1)) },
                    if j == 0 { self.g("tn/0".into()) } else { None },
                    if j == 0 { None } else { self.g(format!("tn/{j}")) },
                ),
            )?;
        }
        // top margin cells carry cap anchors; the east hook column uses its
        // own anchor label when this counter's hook is on the east side
        for (j, x) in (w - em..w).rev().enumerate() {
            let last = x == w - em;
            let capn = if x == w - 1 && self.cfg.hook_east { "caph/0" } else { "cap/0" };
            self.cx.put(
                x,
                y + 2,
                &format!("tp/{j}"),
                self.sides(
                    self.g(capn.into()),
                    if j == 0 { None } else { self.g(format!("tp/{j}")) },
                    if j == 0 { self.g("tn/up".into()) } else { None },
                    if last { None } else { self.g(format!("tp/{}", j + 1)) },
                ),
            )?;
        }
        for i in (0..k).rev() {
            let a = 5 + 4 * i;
            self.cx.put(
                a,
                y,
                &format!("tm/l/{i}"),
                self.sides(None, self.g(format!("tm/in/{i}")), self.g(format!("tm/pr/{i}")), None),
            )?;
            // value-agnostic probe: touches no marker faces
            self.cx.put(
                a,
                y - 1,
                &format!("tm/p/{i}"),
                self.sides(self.g(format!("tm/pr/{i}")), None, None, self.g(format!("tm/af/{i}"))),
            )?;
            self.cx.put(
                a - 1,
                y - 1,
                &format!("tm/g3/{i}"),
                self.sides(
                    self.g(format!("tm/f3/{i}")),
                    self.g(format!("tm/af/{i}")),
                    None,
                    self.g(format!("tm/g4/{i}")),
                ),
            )?;
            self.cx.put(
                a - 1,
                y,
                &format!("tm/f3/{i}"),
                self.sides(None, None, self.g(format!("tm/f3/{i}")), None),
            )?;
            self.cx.put(
                a - 2,
                y - 1,
                &format!("tm/g4/{i}"),
                self.sides(self.g(format!("tm/rise/{i}")), self.g(format!("tm/g4/{i}")), None, None),
            )?;
            self.cx.put(
                a - 2,
                y,
                &format!("tm/t/{i}"),
                self.sides(
                    self.g(format!("tm/v1/{i}")),
                    None,
                    self.g(format!("tm/rise/{i}")),
                    self.g(format!("tm/ow/{i}")),
                ),
            )?;
            let west_out = if i > 0 {
                self.g(format!("tm/in/{}", i - 1))
            } else {
                self.g("tm/west".into())
            };
            self.cx.put(
                a - 3,
                y,
                &format!("tm/ow/{i}"),
                self.sides(
                    None,
                    self.g(format!("tm/ow/{i}")),
                    if i == 0 { self.g("tm/dip".into()) } else { None },
                    west_out,
                ),
            )?;
            if i == 0 {
                self.cx.put(2, y - 1, "tm/dip", self.sides(self.g("tm/dip".into()), None, None, None))?;
            }
            // floor row and the fully filled top row
            self.cx.put(
                a - 2,
                y + 1,
                &format!("tm/v1/{i}"),
                self.sides(
                    self.g(format!("tm/c1/{i}")),
                    self.g(format!("tm/v2/{i}")),
                    self.g(format!("tm/v1/{i}")),
                    self.g(format!("tm/v0/{i}")),
                ),
            )?;
            self.cx.put(
                a - 3,
                y + 1,
                &format!("tm/v0/{i}"),
                self.sides(self.g(format!("tm/c0/{i}")), self.g(format!("tm/v0/{i}")), None, None),
            )?;
            self.cx.put(
                a - 1,
                y + 1,
                &format!("tm/v2/{i}"),
                self.sides(
                    self.g(format!("tm/c2/{i}")),
                    self.g(format!("tm/v3/{i}")),
                    None,
                    self.g(format!("tm/v2/{i}")),
                ),
            )?;
            self.cx.put(
                a,
                y + 1,
                &format!("tm/v3/{i}"),
                self.sides(self.g(format!("tm/c3/{i}")), None, None, self.g(format!("tm/v3/{i}"))),
            )?;
            for (ix, dx) in [(0i32, -3i32), (1, -2), (2, -1), (3, 0)] {
                self.cx.put(
                    a + dx,
                    y + 2,
                    &format!("tm/c{ix}/{i}"),
                    self.sides(self.g("cap/0".into()), None, self.g(format!("tm/c{ix}/{i}")), None),
                )?;
            }
        }
        self.emit_west_turn(y, true)
    }

    /// Flat cap rows; the hook column chains separately and ends in the
    /// per-counter hook exposure.
    fn emit_cap(&mut self, hook: &str) -> R {
        let w = self.cfg.width;
        let y0 = self.cfg.y_term() + 3;
        let cap = self.cfg.cap as i32;
        let hook_col = if self.cfg.hook_east { w - 1 } else { 0 };
        for r in 0..cap {
            let north = (r + 1 < cap).then(|| self.g(format!("cap/{}", r + 1)).unwrap());
            self.cx.ty(
                &format!("cap/{r}"),
                self.sides(north, None, self.g(format!("cap/{r}")), None),
            )?;
            let hn = (r + 1 < cap).then(|| self.g(format!("caph/{}", r + 1)).unwrap());
            // the top hook tile exposes the junction glue sideways
            let hook_exp =
                (r + 1 == cap && !hook.is_empty()).then(|| Glue::new(hook.to_string(), 1));
            let (he, hw) =
                if self.cfg.hook_east { (hook_exp.clone(), None) } else { (None, hook_exp) };
            self.cx.ty(
                &format!("caph/{r}"),
                self.sides(hn, he, self.g(format!("caph/{r}")), hw),
            )?;
            for x in 0..w {
                let name = if x == hook_col { format!("caph/{r}") } else { format!("cap/{r}") };
                self.cx.at(x, y0 + r, &name)?;
            }
        }
        Ok(())
    }

    /// Comb teeth below the seed row of the first counter.
    fn emit_teeth(&mut self) -> R {
        let Some(depth) = self.cfg.teeth else {
            return Ok(());
        };
        let w = self.cfg.width;
        for d in 0..depth as i32 {
            for (fam, neg_east) in [("tooth", false), ("toothR", d == 0)] {
                let south = (d + 1 < depth as i32).then(|| self.g(format!("{fam}/{}", d + 1)).unwrap());
                self.cx.ty(
                    &format!("{fam}/{d}"),
                    self.sides(
                        self.g(format!("{fam}/{d}")),
                        if neg_east { self.cx.neg() } else { None },
                        south,
                        None,
                    ),
                )?;
            }
            for x in 0..w {
                let fam = if x == w - 1 { "toothR" } else { "tooth" };
                self.cx.at(x, -1 - d, &format!("{fam}/{d}"))?;
            }
        }
        Ok(())
    }

    /// Crawler down the east side of the first counter: plain descent in the
    /// lane, an excursion around every copy-row overhang, and a robust
    /// go/stop selection under each overhang. Ends with the stop tile below
    /// the seed and a two-column descent to the base anchor.
    fn emit_crawler(&mut self, anchor_out: &str) -> R {
        let w = self.cfg.width;
        let cap_top = self.cfg.cap_top();
        let x = self.cfg.cap as i32;
        // start tile bound from the cap hook, then the entry descent
        self.cx.put(
            w,
            cap_top,
            "cr/0",
            self.sides(None, self.g("cr/cap0".into()), self.g("cr/e0".into()), self.g("cr/start".into())),
        )?;
        // indexed chain down the outer column, sealing it above the
        // topmost excursion; its head also blocks the off-shoot row
        self.cx.put(
            w + 1,
            cap_top,
            "cr/c0",
            self.sides(None, None, self.g("cr/cap1".into()), self.g("cr/cap0".into())),
        )?;
        for j in 1..=x {
            let last = j == x;
            self.cx.put(
                w + 1,
                cap_top - j,
                &format!("cr/c{j}"),
                self.sides(
                    self.g(format!("cr/cap{j}")),
                    None,
                    if last { None } else { self.g(format!("cr/cap{}", j + 1)) },
                    None,
                ),
            )?;
        }
        for j in 0..=(x + 2) {
            let last = j == x + 2;
            self.cx.put(
                w,
                cap_top - 1 - j,
                &format!("cr/e{j}"),
                self.sides(
                    self.g(format!("cr/e{j}")),
                    if last { self.g("cr/x1".into()) } else { None },
                    if last { None } else { self.g(format!("cr/e{}", j + 1)) },
                    None,
                ),
            )?;
        }
        // shared excursion + selection + descent cycle
        self.cx.ty(
            "cr/x1",
            self.sides(self.g("cr/u1".into()), None, self.g("cr/x2".into()), self.g("cr/x1".into())),
        )?;
        self.cx.ty("cr/u1f", self.sides(self.g("cr/u2".into()), None, self.g("cr/u1".into()), None))?;
        self.cx.ty("cr/u2f", self.sides(None, None, self.g("cr/u2".into()), None))?;
        self.cx.ty("cr/x2", self.sides(self.g("cr/x2".into()), None, self.g("cr/x3".into()), None))?;
        self.cx.ty(
            "cr/x3",
            self.sides(self.g("cr/x3".into()), None, None, self.g("cr/sel".into())),
        )?;
        self.cx.ty(
            "cr/go",
            self.sides(None, self.g("cr/sel".into()), self.g("cr/d1".into()), self.cx.neg()),
        )?;
        self.cx.ty(
            "cr/stop",
            self.sides(self.cx.neg(), self.g("cr/sel".into()), self.g("cr/bd0".into()), None),
        )?;
        self.cx.ty("cr/d1", self.sides(self.g("cr/d1".into()), None, self.g("cr/d2".into()), None))?;
        self.cx.ty("cr/d2", self.sides(self.g("cr/d2".into()), None, self.g("cr/d3".into()), None))?;
        self.cx.ty("cr/d3", self.sides(self.g("cr/d3".into()), self.g("cr/x1".into()), None, None))?;
        let v_top = 5 * (self.cfg.rounds as i32 - 1);
        let mut v = v_top;
        while v >= 0 {
            self.cx.at(w + 1, v + 1, "cr/x1")?;
            self.cx.at(w + 1, v + 2, "cr/u1f")?;
            self.cx.at(w + 1, v + 3, "cr/u2f")?;
            self.cx.at(w + 1, v, "cr/x2")?;
            self.cx.at(w + 1, v - 1, "cr/x3")?;
            if v > 0 {
                self.cx.at(w, v - 1, "cr/go")?;
                self.cx.at(w, v - 2, "cr/d1")?;
                self.cx.at(w, v - 3, "cr/d2")?;
                self.cx.at(w, v - 4, "cr/d3")?;
            } else {
                self.cx.at(w, -1, "cr/stop")?;
            }
            v -= 5;
        }
        // single-column descent filling the strip left of the base, with
        // indexed side fills covering the outer column; the last side fill
        // anchors the second counter's floor chain
        let depth = self.cfg.teeth.unwrap() as i32; // rows -2 .. -depth
        for j in 0..depth - 1 {
            let row = -2 - j;
            let last = j == depth - 2;
            self.cx.put(
                w,
                row,
                &format!("cr/bw{j}"),
                self.sides(
                    self.g(format!("cr/bd{j}")),
                    self.g(format!("cr/bde{j}")),
                    if last { None } else { self.g(format!("cr/bd{}", j + 1)) },
                    None,
                ),
            )?;
            self.cx.put(
                w + 1,
                row,
                &format!("cr/be{j}"),
                self.sides(
                    None,
                    last.then(|| Glue::new(anchor_out.to_string(), 1)),
                    None,
                    self.g(format!("cr/bde{j}")),
                ),
            )?;
        }
        Ok(())
    }

    fn emit_counter(&mut self, anchor: FloorAnchor, hook: &str) -> R {
        self.emit_seed_band(anchor)?;
        let r = self.cfg.rounds;
        for j in 1..r {
            let v = self.cfg.n0 + (j as u64 - 1);
            let y = self.cfg.y_inc(j);
            self.emit_inc_band(y, v)?;
            self.emit_copy_band(y + 3, v + 1)?;
        }
        self.emit_term_band(self.cfg.y_term())?;
        self.emit_cap(hook)?;
        self.emit_teeth()?;
        Ok(())
    }
}

enum FloorAnchor {
    /// The floor chain binds an east exposure on its logical-east end.
    East(String),
    /// The east-end floor tile binds a south exposure: the global-south
    /// face for the third counter, the global-west face for the transposed
    /// second counter.
    South(String),
}

/// Generate the prgTAS square for N with the given negative glue strength.
/// Sizes below [`prg_n_min`] use the hard-coded fallback.
pub fn generate_prg_square(big_n: u32, neg_strength: i32) -> Result<TileSystem, ModelError> {
    match prg_square_params(big_n) {
        Ok(p) => generate_from_params(&p, neg_strength).map(|(sys, _)| sys),
        Err(_) => fallback_square(big_n, SystemClass::PrgTas, neg_strength),
    }
}

/// As [`generate_prg_square`] but also returning the construction plan.
pub fn generate_prg_square_with_plan(
    big_n: u32,
    neg_strength: i32,
) -> Result<(TileSystem, Vec<(crate::grid::Point, String)>), ModelError> {
    match prg_square_params(big_n) {
        Ok(p) => {
            let (sys, plan) = generate_from_params(&p, neg_strength)?;
            Ok((sys, plan))
        }
        Err(_) => {
            let sys = fallback_square(big_n, SystemClass::PrgTas, neg_strength)?;
            Ok((sys, Vec::new()))
        }
    }
}

fn generate_from_params(
    p: &PrgSquareParams,
    neg_strength: i32,
) -> Result<(TileSystem, Vec<(crate::grid::Point, String)>), ModelError> {
    let nn = p.big_n as i32;
    let kk = p.kk as i32;
    let k = p.k;
    let mut em = Emitter::new();

    // ---- first counter (left arm), upright at (0, K) ----
    let l2 = (nn - kk - 2) as u32;
    let r2 = (l2 - 1) / 5;
    let x2 = l2 - 5 * r2;
    {
        let mut cx = Ctx { em: &mut em, orient: Orient::Upright { origin: pt(0, kk) }, ns: "c1".into() };
        let mut ce = CounterEmitter {
            cx: &mut cx,
            cfg: CounterCfg {
                k,
                width: kk,
                rounds: p.rounds,
                n0: p.n0,
                cap: p.x,
                teeth: Some(p.kk),
                overhangs: true,
                hook_east: true,
            },
        };
        ce.emit_counter(FloorAnchor::East("c1/seedW".into()), "c1/cr/start")?;
        ce.emit_crawler("c2/sfA")?;
    }
    // the system seed: the black corner tile east of the first counter's
    // floor row. Its west face anchors the floor chain, its null south face
    // and negative east face are the crawler's stop markers.
    em.add_type(
        "c1/seed",
        [None, Some(super::neg_glue()), None, Some(Glue::new("c1/seedW".to_string(), 1))],
    )?;
    em.place_seed(pt(kk, kk), "c1/seed")?;

    // ---- second counter (base), east-transposed at (K+2, K+1) ----
    {
        let mut cx = Ctx {
            em: &mut em,
            orient: Orient::EastTransposed { origin: pt(kk + 2, kk + 1) },
            ns: "c2".into(),
        };
        let mut ce = CounterEmitter {
            cx: &mut cx,
            cfg: CounterCfg {
                k,
                width: kk + 2,
                rounds: r2,
                n0: (1u64 << k) - r2 as u64,
                cap: x2,
                teeth: None,
                overhangs: false,
                hook_east: false,
            },
        };
        ce.emit_counter(FloorAnchor::South("c2/sfA".into()), "c3/anchor")?;
    }

    // ---- third counter (right arm), upright at (N-K-2, K+2) ----
    {
        let mut cx = Ctx {
            em: &mut em,
            orient: Orient::Upright { origin: pt(nn - kk - 2, kk + 2) },
            ns: "c3".into(),
        };
        let mut ce = CounterEmitter {
            cx: &mut cx,
            cfg: CounterCfg {
                k,
                width: kk + 2,
                rounds: r2,
                n0: (1u64 << k) - r2 as u64,
                cap: x2,
                teeth: None,
                overhangs: false,
                hook_east: false,
            },
        };
        ce.emit_counter(FloorAnchor::South("c3/anchor".into()), "fl/start")?;
    }

    // ---- off-shoot along the top of the interior. Shoot tiles expose a
    // dedicated drop glue south; the interior fills as pure vertical chains
    // (top filler under each shoot, generic fillers below), so every
    // interior cell admits exactly one tile type regardless of order.
    em.add_type(
        "fl/shootd",
        [
            None,
            Some(Glue::new("fl/start".to_string(), 1)),
            Some(Glue::new("fl/drop".to_string(), 1)),
            Some(Glue::new("fl/shoot".to_string(), 1)),
        ],
    )?;
    em.add_type(
        "fl/shoot",
        [
            None,
            Some(Glue::new("fl/shoot".to_string(), 1)),
            Some(Glue::new("fl/drop".to_string(), 1)),
            Some(Glue::new("fl/shoot".to_string(), 1)),
        ],
    )?;
    let shoot_first = nn - kk - 3;
    for x in (kk + 2)..(nn - kk - 2) {
        em.place(pt(x, nn - 1), if x == shoot_first { "fl/shootd" } else { "fl/shoot" })?;
    }
    let v = || Some(Glue::new("fl/v".to_string(), 1));
    em.add_type("fl/top", [Some(Glue::new("fl/drop".to_string(), 1)), None, v(), None])?;
    em.add_type("fl/f", [v(), None, v(), None])?;
    for x in (kk + 2)..(nn - kk - 2) {
        em.place(pt(x, nn - 2), "fl/top")?;
        for y in (kk + 2)..(nn - 2) {
            em.place(pt(x, y), "fl/f")?;
        }
    }

    let plan: Vec<(crate::grid::Point, String)> =
        em.plan.iter().map(|(&p, n)| (p, n.clone())).collect();
    let sys = em.finish(SystemClass::PrgTas, neg_strength)?;
    Ok((sys, plan))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_match_paper_figure() {
        let p = prg_square_params(41).unwrap();
        assert_eq!((p.n, p.k, p.kk, p.n0, p.x), (8, 3, 17, 4, 4));
    }

    #[test]
    fn params_formula_examples() {
        let p = prg_square_params(100).unwrap();
        assert_eq!((p.n, p.k, p.kk, p.n0, p.x), (19, 5, 25, 18, 5));
    }

    #[test]
    fn x_is_always_small() {
        for n in prg_n_min()..600 {
            if let Ok(p) = prg_square_params(n) {
                assert!((1..=9).contains(&p.x), "N={n}: x={}", p.x);
            }
        }
    }
}
