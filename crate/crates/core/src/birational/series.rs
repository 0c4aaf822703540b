//! Move scripts for the four-cusp series on `F_e` and the curves obtained
//! from the plane quintic by a single blow-up.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::script::{Move, MoveScript, Predicate, StartSpec};
use super::{run_script, CurveState, FiberMark, MoveError, PointSpec, TraceEntry};
use crate::cusp::{self, MultiplicitySequence};
use crate::picard::{DivisorClass, SurfaceId};

/// A generated curve with the script that builds it.
#[derive(Debug, Clone)]
pub struct Generated {
    pub state: CurveState,
    pub script: MoveScript,
    pub trace: Vec<TraceEntry>,
}

/// `[head_count, tail...]` written out, e.g. `run(4, 2, &[2, 2, 2])` is `[4_2,2_3]`.
fn run(head: u32, count: usize, tail: &[u32]) -> MultiplicitySequence {
    let mut entries = vec![head; count];
    entries.extend_from_slice(tail);
    MultiplicitySequence::new(entries).expect("series sequences are valid")
}

fn ordinary(n: usize) -> MultiplicitySequence {
    MultiplicitySequence::ordinary_run(n)
}

type Expected = (SurfaceId, DivisorClass, Vec<MultiplicitySequence>);

fn sorted(mut config: Vec<MultiplicitySequence>) -> Vec<MultiplicitySequence> {
    cusp::sort_config(&mut config);
    config
}

/// Type `(2k+1,4)` on `F_e` with `[4_{k-1+e},2_3],[2],[2],[2]`.
pub fn expected_row1(e: u32, k: u32) -> Expected {
    let fours = (k + e) as usize - 1;
    let config = vec![run(4, fours, &[2, 2, 2]), ordinary(1), ordinary(1), ordinary(1)];
    (SurfaceId(e), DivisorClass::new(2 * i64::from(k) + 1, 4), sorted(config))
}

/// Type `(3k+1-h,5)` on `F_h` with `[4_{2k-1+h},2_3],[2],[2],[2]`.
pub fn expected_row2(h: u32, k: u32) -> Expected {
    let fours = (2 * k + h) as usize - 1;
    let config = vec![run(4, fours, &[2, 2, 2]), ordinary(1), ordinary(1), ordinary(1)];
    (SurfaceId(h), DivisorClass::new(3 * i64::from(k) + 1 - i64::from(h), 5), sorted(config))
}

/// Type `(2k+2-h,4)` on `F_h` with `[3_{2k-1+h},2],[2_3],[2],[2]`.
pub fn expected_row3(h: u32, k: u32) -> Expected {
    let threes = (2 * k + h) as usize - 1;
    let config = vec![run(3, threes, &[2]), ordinary(3), ordinary(1), ordinary(1)];
    (SurfaceId(h), DivisorClass::new(2 * i64::from(k) + 2 - i64::from(h), 4), sorted(config))
}

/// Type `(k+1-h,3)` on `F_h` with `[2_{n_1}],...,[2_{n_4}]` (zeros omitted).
pub fn expected_row4(h: u32, k: u32, n: [u32; 4]) -> Expected {
    let config = n.iter().filter(|&&nj| nj > 0).map(|&nj| ordinary(nj as usize)).collect();
    (SurfaceId(h), DivisorClass::new(i64::from(k) + 1 - i64::from(h), 3), sorted(config))
}

fn quintic_start(script: &mut MoveScript) {
    let config = cusp::parse_config("[2_3],[2],[2],[2]").expect("static config");
    script.push(Move::Start(StartSpec::Plane { degree: 5, config }));
}

fn mark(script: &mut MoveScript, id: &str, pattern: &[(&str, u32)]) {
    script.push(Move::Mark(FiberMark::new(id, pattern)));
}

fn elm(script: &mut MoveScript, fiber: &str, at: PointSpec) {
    script.push(Move::Elm { fiber: String::from(fiber), at });
}

fn finish(mut script: MoveScript, expected: Expected) -> Result<Generated, MoveError> {
    let (surface, cls, config) = expected;
    script.push(Move::Assert(vec![Predicate::Surface(surface), Predicate::Type(cls), Predicate::Config(config)]));
    let (state, trace) = run_script(None, &script).map_err(|e| MoveError::Script(Box::new(e)))?;
    Ok(Generated { state, script, trace })
}

/// Fresh names for off-curve points.
struct Names(u32);

impl Names {
    fn next(&mut self, stem: &str) -> String {
        self.0 += 1;
        format!("{stem}{}", self.0)
    }
}

/// The quintic blown up at `r`, where `T = 4p1 + r`: `(1,4)` on `F_1` with
/// `T = 4p1` and `E` through `r`.
fn row1_base(script: &mut MoveScript) {
    quintic_start(script);
    mark(script, "T", &[("p1", 4), ("r", 1)]);
    script.comment("blow up the smooth point r on the tangent at p1");
    script.push(Move::FromPlane(PointSpec::new("r")));
}

fn row1_on_f1(script: &mut MoveScript, names: &mut Names, k: u32) {
    if k == 0 {
        row1_base(script);
        return;
    }
    row1_on_f0(script, names, k);
    script.comment(&format!("F0 -> F1, k = {k}"));
    elm(script, "T", PointSpec::new(&names.next("s")));
}

fn row1_on_f0(script: &mut MoveScript, names: &mut Names, k: u32) {
    if k == 1 {
        row1_on_f1(script, names, 0);
        script.comment("F1 -> F0 through the cusp p1");
        elm(script, "T", PointSpec::new("p1").off_e());
    } else {
        row1_on_f1(script, names, k - 2);
        script.comment(&format!("F1 -> F0 at a point of T off E and off the curve, k = {k}"));
        elm(script, "T", PointSpec::new(&names.next("t")).off_e());
    }
}

/// Type `(2k+1,4)` on `F_e` with four cusps; `(e,k) = (0,0)` is excluded.
pub fn series_row1(e: u32, k: u32) -> Result<Generated, MoveError> {
    if (e, k) == (0, 0) {
        return Err(MoveError::BadParameters(String::from("(e,k) = (0,0) is excluded")));
    }
    let mut script = MoveScript::new();
    let mut names = Names(0);
    if e == 0 {
        row1_on_f0(&mut script, &mut names, k);
    } else {
        row1_on_f1(&mut script, &mut names, k);
        for target in 2..=e {
            script.comment(&format!("up to F{target} at E meet T"));
            elm(&mut script, "T", PointSpec::new(&names.next("s")).on_e());
        }
    }
    finish(script, expected_row1(e, k))
}

/// Shared induction of rows 2 and 3: alternate `elm T at r` down to `F_0`
/// and up to `F_1`, starting from the base curve on `F_1`.
fn alternate_at_r(script: &mut MoveScript, h: u32, k: u32) {
    for step in 1..=k {
        script.comment(&format!("F1 -> F0, k = {step}"));
        elm(script, "T", PointSpec::new("r").off_e());
        if step < k || h == 1 {
            script.comment(&format!("F0 -> F1, k = {step}"));
            elm(script, "T", PointSpec::new("r"));
        }
    }
}

fn check_hk(h: u32, k: u32) -> Result<(), MoveError> {
    if h > 1 {
        return Err(MoveError::BadParameters(format!("h must be 0 or 1, got {h}")));
    }
    if (h, k) == (0, 0) {
        return Err(MoveError::BadParameters(String::from("(h,k) = (0,0) is excluded")));
    }
    Ok(())
}

/// Type `(3k+1-h,5)` on `F_h`.
pub fn series_row2(h: u32, k: u32) -> Result<Generated, MoveError> {
    check_hk(h, k)?;
    let mut script = MoveScript::new();
    quintic_start(&mut script);
    mark(&mut script, "T", &[("p1", 4), ("r", 1)]);
    script.comment("blow up a point of T off the curve");
    script.push(Move::FromPlane(PointSpec::new("t").through("T")));
    alternate_at_r(&mut script, h, k);
    finish(script, expected_row2(h, k))
}

/// Type `(2k+2-h,4)` on `F_h`.
pub fn series_row3(h: u32, k: u32) -> Result<Generated, MoveError> {
    check_hk(h, k)?;
    let mut script = MoveScript::new();
    quintic_start(&mut script);
    mark(&mut script, "T", &[("p2", 3), ("r", 1), ("s", 1)]);
    script.comment("blow up s on the tangent at the ordinary cusp p2");
    script.push(Move::FromPlane(PointSpec::new("s")));
    alternate_at_r(&mut script, h, k);
    finish(script, expected_row3(h, k))
}

/// Type `(k+1-h,3)` on `F_h` with `[2_{n_1}],...,[2_{n_4}]`, `sum n_j = 2k+h`.
/// Entries `n_j = 0` remove the cusp (fewer than four cusps).
pub fn series_row4(h: u32, k: u32, n: [u32; 4]) -> Result<Generated, MoveError> {
    if h > 1 {
        return Err(MoveError::BadParameters(format!("h must be 0 or 1, got {h}")));
    }
    let total: u32 = n.iter().sum();
    if total != 2 * k + h {
        return Err(MoveError::BadParameters(format!(
            "partition {n:?} sums to {total}, expected 2k+h = {}",
            2 * k + h
        )));
    }
    let mut script = MoveScript::new();
    let config = cusp::parse_config("[2],[2],[2]").expect("static config");
    script.push(Move::Start(StartSpec::Plane { degree: 4, config }));
    mark(&mut script, "L4", &[("p4", 2), ("t1", 1), ("r4", 1)]);
    for j in 1..=3 {
        let (p, r) = (format!("p{j}"), format!("r{j}"));
        mark(&mut script, &format!("L{j}"), &[(&p, 2), ("t1", 1), (&r, 1)]);
    }
    script.comment("blow up t1 on the tangent L4 at the smooth point p4");
    script.push(Move::FromPlane(PointSpec::new("t1")));
    script.comment("down to F0: (3,3) with four ordinary cusps");
    elm(&mut script, "L4", PointSpec::new("r4").off_e());
    let mut e = 0;
    let side = |e: u32, x: PointSpec| if e == 1 { x.off_e() } else { x };
    for j in 1..=4 {
        if n[j - 1] == 0 {
            script.comment(&format!("remove the cusp p{j}"));
            elm(&mut script, &format!("L{j}"), side(e, PointSpec::new(&format!("p{j}"))));
            e = 1 - e;
        }
    }
    for j in 1..=4 {
        for _ in 1..n[j - 1] {
            script.comment(&format!("grow p{j}"));
            elm(&mut script, &format!("L{j}"), side(e, PointSpec::new(&format!("r{j}"))));
            e = 1 - e;
        }
    }
    finish(script, expected_row4(h, k, n))
}

/// The `(0,3)` curve on `F_2` with four ordinary cusps.
pub fn curve_f2() -> Result<Generated, MoveError> {
    let mut script = MoveScript::new();
    quintic_start(&mut script);
    mark(&mut script, "T", &[("p1", 4), ("s", 1)]);
    script.comment("blow up the cusp p1: (2,3) on F1, T stays tangent at p1 on E");
    script.push(Move::FromPlane(PointSpec::new("p1")));
    elm(&mut script, "T", PointSpec::new("p1").on_e());
    let config = cusp::parse_config("[2],[2],[2],[2]").expect("static config");
    finish(script, (SurfaceId(2), DivisorClass::new(0, 3), config))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingleBlowup {
    OffCurve,
    SmoothPoint,
    Cusp,
}

/// The quintic blown up once: at a point off the curve `(0,5)`, at a smooth
/// point `(1,4)`, or at the `[2_3]` cusp `(2,3)`.
pub fn single_blowup(kind: SingleBlowup) -> Result<Generated, MoveError> {
    let mut script = MoveScript::new();
    quintic_start(&mut script);
    let (point, expected) = match kind {
        SingleBlowup::OffCurve => ("x", ((0, 5), "[2_3],[2],[2],[2]")),
        SingleBlowup::SmoothPoint => ("r", ((1, 4), "[2_3],[2],[2],[2]")),
        SingleBlowup::Cusp => ("p1", ((2, 3), "[2_2],[2],[2],[2]")),
    };
    if kind == SingleBlowup::SmoothPoint {
        mark(&mut script, "T", &[("p1", 4), ("r", 1)]);
    }
    script.push(Move::Blowup(PointSpec::new(point)));
    let ((a, b), config) = expected;
    let config = cusp::parse_config(config).expect("static config");
    finish(script, (SurfaceId(1), DivisorClass::new(a, b), config))
}
