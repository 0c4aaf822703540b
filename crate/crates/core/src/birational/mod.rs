//! A curve-state machine for blow-ups, fiber contractions and elementary
//! transformations between the plane and the surfaces `F_e`.
//!
//! The engine does not carry equations. A state records the class of the
//! curve, its cusps and smooth marked points by name, a list of marked fibers
//! (or lines, in the plane) with their contact patterns, and, when known, how
//! the special section `E` meets the curve. Moves update all of this and
//! reject incidence claims that the bookkeeping can refute.

mod script;
mod series;

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::cusp::{self, CuspError, MultiplicitySequence};
use crate::feasibility::CurveSpec;
use crate::picard::{DivisorClass, SurfaceId};

pub use script::{
    parse_class, parse_pattern, parse_script, parse_surface, Move, MoveScript, Predicate, ScriptLine, StartSpec,
};
pub use series::{
    curve_f2, expected_row1, expected_row2, expected_row3, expected_row4, series_row1, series_row2, series_row3,
    series_row4, single_blowup, Generated, SingleBlowup,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("{0} needs a plane curve")]
    NeedsPlane(&'static str),
    #[error("{0} needs a curve on a Hirzebruch surface")]
    NeedsSurface(&'static str),
    #[error("to_plane needs F1, the curve is on {0}")]
    NeedsF1(SurfaceId),
    #[error("swap_rulings needs F0, the curve is on {0}")]
    NeedsF0(SurfaceId),
    #[error("no marked fiber or line named {0}")]
    UnknownMark(String),
    #[error("point {point} is a curve point but {mark} does not pass through it")]
    NotOnMark { point: String, mark: String },
    #[error("multiplicity {m} exceeds the degree {d}")]
    MultiplicityTooLarge { m: u32, d: i64 },
    #[error("contact of {mark} is spread over {points:?}; contracting it would not give a cusp")]
    SpreadContact { mark: String, points: Vec<String> },
    #[error("the special section meets the curve at {0:?}; contracting it would not give a cusp")]
    SpreadSpecialSection(Vec<String>),
    #[error("the intersection of the special section with the curve is unknown")]
    SpecialSectionUnknown,
    #[error("{0}: declare onE or offE")]
    UndeclaredSide(String),
    #[error("F0 has no special section; {0} cannot be onE")]
    NoSpecialSection(String),
    #[error("no special section below F0: the elementary transformation off E needs e >= 1")]
    NegativeE,
    #[error("inconsistent incidence: {0}")]
    Inconsistent(String),
    #[error("cusp at {point}: {source}")]
    Sequence { point: String, source: CuspError },
    #[error("{mark} meets the curve with total contact {sum}, expected {expected}")]
    PatternSum { mark: String, sum: i64, expected: i64 },
    #[error("{mark} has contact {contact} at {point}, below its multiplicity {multiplicity}")]
    ContactBelowMultiplicity { mark: String, point: String, contact: u32, multiplicity: u32 },
    #[error("fibers {0} and {1} share the point {2}")]
    FibersMeet(String, String, String),
    #[error("lines {0} and {1} share more than one point")]
    LinesShareTwoPoints(String, String),
    #[error("curve is not rational (genus {0})")]
    NotRational(i64),
    #[error("assertion failed: {what} expected {expected}, found {found}")]
    AssertionFailed { what: String, expected: String, found: String },
    #[error("contract without a preceding blowup")]
    NoPendingBlowup,
    #[error("a blowup at {0} is pending; the next move must contract a fiber through it")]
    PendingBlowup(String),
    #[error("script has no start line")]
    MissingStart,
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("{0}")]
    Script(Box<ScriptError>),
}

/// A move failure located in a script.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line} ({text}): {error}")]
pub struct ScriptError {
    pub line: usize,
    pub text: String,
    pub error: Box<MoveError>,
}

/// Whether a point is declared on the special section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSpec {
    pub id: String,
    pub on_e: Option<bool>,
    /// Marks declared to pass through the point (needed for off-curve points).
    pub on: Vec<String>,
}

impl PointSpec {
    pub fn new(id: &str) -> Self {
        PointSpec { id: id.to_owned(), on_e: None, on: Vec::new() }
    }

    pub fn on_e(mut self) -> Self {
        self.on_e = Some(true);
        self
    }

    pub fn off_e(mut self) -> Self {
        self.on_e = Some(false);
        self
    }

    pub fn through(mut self, mark: &str) -> Self {
        self.on.push(mark.to_owned());
        self
    }
}

impl fmt::Display for PointSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id)?;
        match self.on_e {
            Some(true) => f.write_str(" onE")?,
            Some(false) => f.write_str(" offE")?,
            None => {}
        }
        if !self.on.is_empty() {
            write!(f, " on={}", self.on.join(","))?;
        }
        Ok(())
    }
}

/// `(point id, contact order)` pairs.
pub type Pattern = Vec<(String, u32)>;

pub fn format_pattern(pattern: &[(String, u32)]) -> String {
    if pattern.is_empty() {
        return String::from("-");
    }
    let parts: Vec<String> = pattern.iter().map(|(p, c)| format!("{c}*{p}")).collect();
    parts.join("+")
}

/// A fiber (or a line, in the plane) with its intersection with the curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberMark {
    pub id: String,
    pub pattern: Pattern,
    /// The curve point where the fiber meets `E`; `None` when they meet off
    /// the curve (or `E` is not tracked).
    pub on_special_section: Option<String>,
}

impl FiberMark {
    pub fn new(id: &str, pattern: &[(&str, u32)]) -> Self {
        FiberMark {
            id: id.to_owned(),
            pattern: pattern.iter().map(|&(p, c)| (p.to_owned(), c)).collect(),
            on_special_section: None,
        }
    }

    pub fn contact_at(&self, point: &str) -> u32 {
        self.pattern.iter().find(|(p, _)| p == point).map_or(0, |&(_, c)| c)
    }

    pub fn total_contact(&self) -> i64 {
        self.pattern.iter().map(|&(_, c)| i64::from(c)).sum()
    }
}

/// A named point of the curve; `seq` is `None` for a smooth point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvePoint {
    pub id: String,
    pub seq: Option<MultiplicitySequence>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ambient {
    Plane { degree: i64 },
    Surface { surface: SurfaceId, cls: DivisorClass },
}

/// Multiplicity at the blown-up point and the contact concentrated by the
/// contraction (prepended to the surviving point when at least 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StepData {
    pub m_x: u32,
    pub n: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveState {
    pub ambient: Ambient,
    pub points: Vec<CurvePoint>,
    pub marks: Vec<FiberMark>,
    /// `E.C` as a pattern, when known. Always `None` on `F_0` and in the plane.
    pub special: Option<Pattern>,
    pending: Option<PointSpec>,
}

fn add_contact(pattern: &mut Pattern, point: &str, contact: i64) {
    if contact == 0 {
        return;
    }
    if let Some(entry) = pattern.iter_mut().find(|(p, _)| p == point) {
        entry.1 = (i64::from(entry.1) + contact) as u32;
    } else {
        pattern.push((point.to_owned(), contact as u32));
    }
    pattern.retain(|&(_, c)| c > 0);
}

impl CurveState {
    fn with_cusps(ambient: Ambient, config: &[MultiplicitySequence]) -> Self {
        let points = config
            .iter()
            .enumerate()
            .map(|(i, s)| CurvePoint { id: format!("p{}", i + 1), seq: Some(s.clone()) })
            .collect();
        CurveState { ambient, points, marks: Vec::new(), special: None, pending: None }
    }

    /// A plane curve of degree `d`; cusps are named `p1, p2, ...` in order.
    pub fn plane(degree: i64, config: &[MultiplicitySequence]) -> Self {
        Self::with_cusps(Ambient::Plane { degree }, config)
    }

    /// A curve on `F_e`; cusps are named `p1, p2, ...` in order. `E.C` is
    /// known to be empty when `a = 0`, unknown otherwise.
    pub fn surface(surface: SurfaceId, cls: DivisorClass, config: &[MultiplicitySequence]) -> Self {
        let mut state = Self::with_cusps(Ambient::Surface { surface, cls }, config);
        if surface.0 >= 1 && cls.a == 0 {
            state.special = Some(Vec::new());
        }
        state
    }

    /// The rational cuspidal quintic `[2_3],[2],[2],[2]` with its two
    /// distinguished lines: `T = 4p1 + r` tangent at the `[2_3]` cusp and
    /// `Q = 3p2 + u + v` tangent at an ordinary cusp.
    pub fn quintic() -> Self {
        let config = cusp::parse_config("[2_3],[2],[2],[2]").expect("static config");
        let mut state = Self::plane(5, &config);
        state.add_smooth("r");
        state.add_smooth("u");
        state.add_smooth("v");
        state.marks.push(FiberMark::new("T", &[("p1", 4), ("r", 1)]));
        state.marks.push(FiberMark::new("Q", &[("p2", 3), ("u", 1), ("v", 1)]));
        state
    }

    /// The tricuspidal quartic with cusps `p1..p3`, a smooth point `p4`, the
    /// tangent `T = 2p4 + t1 + t2` and the lines `L_j = 2p_j + t1 + r_j`.
    pub fn quartic() -> Self {
        let config = cusp::parse_config("[2],[2],[2]").expect("static config");
        let mut state = Self::plane(4, &config);
        for id in ["p4", "t1", "t2", "r1", "r2", "r3"] {
            state.add_smooth(id);
        }
        state.marks.push(FiberMark::new("T", &[("p4", 2), ("t1", 1), ("t2", 1)]));
        for j in 1..=3 {
            let (p, r) = (format!("p{j}"), format!("r{j}"));
            state.marks.push(FiberMark::new(&format!("L{j}"), &[(&p, 2), ("t1", 1), (&r, 1)]));
        }
        state
    }

    fn add_smooth(&mut self, id: &str) {
        if self.point(id).is_none() {
            self.points.push(CurvePoint { id: id.to_owned(), seq: None });
        }
    }

    pub fn point(&self, id: &str) -> Option<&CurvePoint> {
        self.points.iter().find(|p| p.id == id)
    }

    fn point_mut(&mut self, id: &str) -> Option<&mut CurvePoint> {
        self.points.iter_mut().find(|p| p.id == id)
    }

    pub fn is_curve_point(&self, id: &str) -> bool {
        self.point(id).is_some()
    }

    /// 0 off the curve, 1 at a smooth point.
    pub fn multiplicity(&self, id: &str) -> u32 {
        match self.point(id) {
            None => 0,
            Some(CurvePoint { seq: None, .. }) => 1,
            Some(CurvePoint { seq: Some(s), .. }) => s.multiplicity(),
        }
    }

    pub fn mark(&self, id: &str) -> Option<&FiberMark> {
        self.marks.iter().find(|m| m.id == id)
    }

    /// Cusps in canonical order.
    pub fn config(&self) -> Vec<MultiplicitySequence> {
        let mut config: Vec<_> = self.points.iter().filter_map(|p| p.seq.clone()).collect();
        cusp::sort_config(&mut config);
        config
    }

    pub fn total_delta(&self) -> i64 {
        self.points.iter().filter_map(|p| p.seq.as_ref()).map(|s| s.delta()).sum()
    }

    pub fn genus(&self) -> i64 {
        match self.ambient {
            Ambient::Plane { degree: d } => (d - 1) * (d - 2) / 2 - self.total_delta(),
            Ambient::Surface { .. } => self.spec().expect("surface").genus(),
        }
    }

    /// `d^2` in the plane, `2ab + b^2 e` on `F_e`.
    pub fn self_intersection(&self) -> i64 {
        match self.ambient {
            Ambient::Plane { degree: d } => d * d,
            Ambient::Surface { surface, cls } => surface.self_intersection(cls),
        }
    }

    pub fn surface_id(&self) -> Option<SurfaceId> {
        match self.ambient {
            Ambient::Surface { surface, .. } => Some(surface),
            Ambient::Plane { .. } => None,
        }
    }

    pub fn class(&self) -> Option<DivisorClass> {
        match self.ambient {
            Ambient::Surface { cls, .. } => Some(cls),
            Ambient::Plane { .. } => None,
        }
    }

    pub fn degree(&self) -> Option<i64> {
        match self.ambient {
            Ambient::Plane { degree } => Some(degree),
            Ambient::Surface { .. } => None,
        }
    }

    /// The feasibility spec of a surface curve.
    pub fn spec(&self) -> Option<CurveSpec> {
        let Ambient::Surface { surface, cls } = self.ambient else {
            return None;
        };
        Some(CurveSpec { surface, cls, config: self.config(), kodaira_nonneg: false })
    }

    /// One-line description, e.g. `F2 (1,4) [4,2_3],[2],[2],[2]`.
    pub fn summary(&self) -> String {
        let config = cusp::format_config(&self.config());
        let config = if config.is_empty() { String::from("-") } else { config };
        match self.ambient {
            Ambient::Plane { degree } => format!("plane degree {degree} {config}"),
            Ambient::Surface { surface, cls } => format!("{surface} {cls} {config}"),
        }
    }

    /// Checks every invariant the bookkeeping can see.
    pub fn validate(&self) -> Result<(), MoveError> {
        let g = self.genus();
        if g != 0 {
            return Err(MoveError::NotRational(g));
        }
        let (expected, plane) = match self.ambient {
            Ambient::Plane { degree } => (degree, true),
            Ambient::Surface { cls, .. } => (cls.b, false),
        };
        for mark in &self.marks {
            self.check_pattern(&mark.id, &mark.pattern, expected)?;
            if let Some(y) = &mark.on_special_section {
                let on_e = self.special.as_ref().is_none_or(|e| e.iter().any(|(p, _)| p == y));
                if !on_e || mark.contact_at(y) == 0 {
                    return Err(MoveError::Inconsistent(format!(
                        "{} is said to meet E at {y}, but E or {} misses {y}",
                        mark.id, mark.id
                    )));
                }
            }
        }
        for (i, m1) in self.marks.iter().enumerate() {
            for m2 in &self.marks[i + 1..] {
                let shared: Vec<&String> = m1.pattern.iter().map(|(p, _)| p).filter(|p| m2.contact_at(p) > 0).collect();
                if plane && shared.len() > 1 {
                    return Err(MoveError::LinesShareTwoPoints(m1.id.clone(), m2.id.clone()));
                }
                if !plane && !shared.is_empty() {
                    return Err(MoveError::FibersMeet(m1.id.clone(), m2.id.clone(), shared[0].clone()));
                }
            }
        }
        if let (Some(e), Ambient::Surface { cls, .. }) = (&self.special, self.ambient) {
            self.check_pattern("E", e, cls.a)?;
        }
        Ok(())
    }

    fn check_pattern(&self, mark: &str, pattern: &[(String, u32)], expected: i64) -> Result<(), MoveError> {
        let sum: i64 = pattern.iter().map(|&(_, c)| i64::from(c)).sum();
        if sum != expected {
            return Err(MoveError::PatternSum { mark: mark.to_owned(), sum, expected });
        }
        for (point, contact) in pattern {
            if !self.is_curve_point(point) {
                return Err(MoveError::Inconsistent(format!("{mark} lists {point}, which is not on the curve")));
            }
            let multiplicity = self.multiplicity(point);
            if *contact < multiplicity {
                return Err(MoveError::ContactBelowMultiplicity {
                    mark: mark.to_owned(),
                    point: point.clone(),
                    contact: *contact,
                    multiplicity,
                });
            }
        }
        Ok(())
    }

    /// Drops the head of the sequence at `id` (the point moves to the
    /// exceptional curve).
    fn drop_head(&mut self, id: &str) {
        if let Some(p) = self.point_mut(id) {
            p.seq = p.seq.as_ref().and_then(|s| s.tail());
        }
    }

    fn prepend(&mut self, id: &str, n: i64) -> Result<(), MoveError> {
        if n < 2 {
            return Ok(());
        }
        let point = self.point_mut(id).expect("contracted contact sits on a curve point");
        let seq = MultiplicitySequence::prepend(n as u32, point.seq.as_ref())
            .map_err(|source| MoveError::Sequence { point: id.to_owned(), source })?;
        point.seq = Some(seq);
        Ok(())
    }

    fn require_not_pending(&self) -> Result<(), MoveError> {
        match &self.pending {
            Some(x) => Err(MoveError::PendingBlowup(x.id.clone())),
            None => Ok(()),
        }
    }

    /// Blows up a plane point; the result lives on `F_1`.
    pub fn from_plane(&self, x: &PointSpec) -> Result<(CurveState, StepData), MoveError> {
        self.require_not_pending()?;
        let Ambient::Plane { degree: d } = self.ambient else {
            return Err(MoveError::NeedsPlane("from_plane"));
        };
        let m = self.multiplicity(&x.id);
        if i64::from(m) > d {
            return Err(MoveError::MultiplicityTooLarge { m, d });
        }
        for name in &x.on {
            let mark = self.mark(name).ok_or_else(|| MoveError::UnknownMark(name.clone()))?;
            if self.is_curve_point(&x.id) && mark.contact_at(&x.id) == 0 {
                return Err(MoveError::NotOnMark { point: x.id.clone(), mark: name.clone() });
            }
        }
        let mut next = self.clone();
        next.ambient =
            Ambient::Surface { surface: SurfaceId(1), cls: DivisorClass::new(i64::from(m), d - i64::from(m)) };
        next.drop_head(&x.id);
        next.marks.clear();
        let mut tangent = Vec::new();
        for mark in &self.marks {
            let through = mark.contact_at(&x.id) > 0 || x.on.iter().any(|n| n == &mark.id);
            if !through {
                continue;
            }
            let mut fiber = mark.clone();
            let residual = i64::from(mark.contact_at(&x.id)) - i64::from(m);
            add_contact(&mut fiber.pattern, &x.id, -i64::from(m).min(i64::from(mark.contact_at(&x.id))));
            fiber.on_special_section = (residual > 0).then(|| x.id.clone());
            if residual > 0 {
                tangent.push(mark.id.clone());
            }
            next.marks.push(fiber);
        }
        if tangent.len() > 1 {
            return Err(MoveError::Inconsistent(format!(
                "{tangent:?} all stay tangent at {}, but a cusp has one tangent direction",
                x.id
            )));
        }
        next.special = Some(if m > 0 { alloc::vec![(x.id.clone(), m)] } else { Vec::new() });
        next.validate()?;
        Ok((next, StepData { m_x: m, n: 0 }))
    }

    /// Contracts the special section of `F_1`.
    pub fn to_plane(&self) -> Result<(CurveState, StepData), MoveError> {
        self.require_not_pending()?;
        let Ambient::Surface { surface, cls } = self.ambient else {
            return Err(MoveError::NeedsSurface("to_plane"));
        };
        if surface.0 != 1 {
            return Err(MoveError::NeedsF1(surface));
        }
        let e_pattern = self.special.as_ref().ok_or(MoveError::SpecialSectionUnknown)?;
        if e_pattern.len() > 1 {
            return Err(MoveError::SpreadSpecialSection(e_pattern.iter().map(|(p, _)| p.clone()).collect()));
        }
        let mut next = self.clone();
        next.ambient = Ambient::Plane { degree: cls.a + cls.b };
        next.special = None;
        if let Some((q, _)) = e_pattern.first() {
            next.prepend(q, cls.a)?;
            for mark in &mut next.marks {
                add_contact(&mut mark.pattern, q, cls.a);
                mark.on_special_section = None;
            }
        } else {
            for mark in &mut next.marks {
                mark.on_special_section = None;
            }
        }
        next.validate()?;
        Ok((next, StepData { m_x: 0, n: cls.a }))
    }

    /// Decides whether `x` lies on `E`, combining the declaration with what
    /// the state knows.
    fn side_of_e(&self, surface: SurfaceId, fiber: &FiberMark, x: &PointSpec) -> Result<bool, MoveError> {
        if surface.0 == 0 {
            if x.on_e == Some(true) {
                return Err(MoveError::NoSpecialSection(x.id.clone()));
            }
            return Ok(false);
        }
        let known = match &self.special {
            None => None,
            Some(e) if self.is_curve_point(&x.id) => Some(e.iter().any(|(p, _)| p == &x.id)),
            // E meets the fiber at a curve point, so an off-curve point is off E.
            Some(_) if fiber.on_special_section.is_some() => Some(false),
            Some(_) => None,
        };
        match (known, x.on_e) {
            (Some(k), Some(d)) if k != d => Err(MoveError::Inconsistent(format!(
                "{} is declared {} but the state has it {}",
                x.id,
                if d { "onE" } else { "offE" },
                if k { "on E" } else { "off E" }
            ))),
            (Some(k), _) => Ok(k),
            (None, Some(d)) => Ok(d),
            (None, None) => Err(MoveError::UndeclaredSide(x.id.clone())),
        }
    }

    /// Blows up `x` on the fiber `fiber_id` and contracts the fiber's strict
    /// transform. Up (`e+1`) when `x` is on `E`, down (`e-1`) otherwise; from
    /// `F_0` always to `F_1`.
    pub fn elm(&self, fiber_id: &str, x: &PointSpec) -> Result<(CurveState, StepData), MoveError> {
        self.require_not_pending()?;
        let Ambient::Surface { surface, cls } = self.ambient else {
            return Err(MoveError::NeedsSurface("elm"));
        };
        let fiber = self.mark(fiber_id).ok_or_else(|| MoveError::UnknownMark(fiber_id.to_owned()))?;
        if self.is_curve_point(&x.id) && fiber.contact_at(&x.id) == 0 {
            return Err(MoveError::NotOnMark { point: x.id.clone(), mark: fiber_id.to_owned() });
        }
        let up = self.side_of_e(surface, fiber, x)? || surface.0 == 0;
        if up && surface.0 >= 1 {
            if let Some(y) = &fiber.on_special_section {
                if y != &x.id {
                    return Err(MoveError::Inconsistent(format!("{fiber_id} meets E at {y}, not at {}", x.id)));
                }
            }
        }
        let m_x = self.multiplicity(&x.id);
        let residual: Pattern = fiber
            .pattern
            .iter()
            .map(|(p, c)| (p.clone(), if p == &x.id { c - m_x } else { *c }))
            .filter(|&(_, c)| c > 0)
            .collect();
        if residual.len() > 1 {
            return Err(MoveError::SpreadContact {
                mark: fiber_id.to_owned(),
                points: residual.iter().map(|(p, _)| p.clone()).collect(),
            });
        }
        let n = cls.b - i64::from(m_x);
        let target = residual.first().map(|(p, _)| p.clone());

        let mut next = self.clone();
        next.drop_head(&x.id);
        if let Some(p) = &target {
            next.prepend(p, n)?;
        }
        let (new_surface, new_cls) = if up {
            (SurfaceId(surface.0 + 1), DivisorClass::new(cls.a - i64::from(m_x), cls.b))
        } else {
            if surface.0 == 0 {
                return Err(MoveError::NegativeE);
            }
            (SurfaceId(surface.0 - 1), DivisorClass::new(cls.a + cls.b - i64::from(m_x), cls.b))
        };
        next.ambient = Ambient::Surface { surface: new_surface, cls: new_cls };

        let mut new_fiber = FiberMark { id: fiber_id.to_owned(), pattern: Vec::new(), on_special_section: None };
        if let Some(p) = &target {
            add_contact(&mut new_fiber.pattern, p, n);
        }
        add_contact(&mut new_fiber.pattern, &x.id, i64::from(m_x));

        next.special = match (&self.special, up, surface.0) {
            (_, _, _) if new_surface.0 == 0 => None,
            (_, true, 0) => (new_cls.a == 0).then(Vec::new),
            (Some(e), true, _) => {
                let mut e = e.clone();
                let drop = m_x.min(contact_in(&e, &x.id));
                add_contact(&mut e, &x.id, -i64::from(drop));
                if contact_in(&e, &x.id) > 0 {
                    new_fiber.on_special_section = Some(x.id.clone());
                }
                Some(e)
            }
            (Some(e), false, _) => {
                let mut e: Pattern = e.iter().filter(|(p, _)| fiber.contact_at(p) == 0).cloned().collect();
                let rest: i64 = e.iter().map(|&(_, c)| i64::from(c)).sum();
                let at_q = new_cls.a - rest;
                // the image of E passes through the contracted point Q.
                match (&target, at_q) {
                    (Some(q), c) if c > 0 => {
                        add_contact(&mut e, q, c);
                        new_fiber.on_special_section = Some(q.clone());
                    }
                    (None, 0) => {}
                    _ => {
                        return Err(MoveError::Inconsistent(format!(
                            "E would meet the curve with contact {at_q} at the contracted point"
                        )))
                    }
                }
                Some(e)
            }
            (None, _, _) => None,
        };
        if next.special.is_none() {
            for mark in &mut next.marks {
                mark.on_special_section = None;
            }
        }
        let slot = next.marks.iter_mut().find(|m| m.id == fiber_id).expect("fiber exists");
        *slot = new_fiber;
        next.validate()?;
        Ok((next, StepData { m_x, n }))
    }

    /// Exchanges the rulings of `F_0`. Marked fibers belong to the old ruling
    /// and are dropped.
    pub fn swap_rulings(&self) -> Result<CurveState, MoveError> {
        self.require_not_pending()?;
        let Ambient::Surface { surface, cls } = self.ambient else {
            return Err(MoveError::NeedsSurface("swap_rulings"));
        };
        if !surface.is_quadric() {
            return Err(MoveError::NeedsF0(surface));
        }
        let mut next = self.clone();
        next.ambient = Ambient::Surface { surface, cls: cls.swapped() };
        next.marks.clear();
        next.validate()?;
        Ok(next)
    }

    /// Adds or replaces a mark; unknown point names become smooth points.
    pub fn with_mark(&self, mark: FiberMark) -> Result<CurveState, MoveError> {
        self.require_not_pending()?;
        let mut next = self.clone();
        for (p, _) in &mark.pattern {
            next.add_smooth(p);
        }
        next.marks.retain(|m| m.id != mark.id);
        next.marks.push(mark);
        next.validate()?;
        Ok(next)
    }

    /// Declares `E.C`; only meaningful on `F_e` with `e >= 1`.
    pub fn with_special(&self, pattern: Pattern) -> Result<CurveState, MoveError> {
        self.require_not_pending()?;
        match self.ambient {
            Ambient::Surface { surface, .. } if surface.0 >= 1 => {}
            Ambient::Surface { surface, .. } => return Err(MoveError::NeedsF1(surface)),
            Ambient::Plane { .. } => return Err(MoveError::NeedsSurface("special")),
        }
        let mut next = self.clone();
        for (p, _) in &pattern {
            next.add_smooth(p);
        }
        next.special = Some(pattern);
        next.validate()?;
        Ok(next)
    }

    /// Applies one move. `blowup` on a surface only records the point; the
    /// following `contract` performs the elementary transformation.
    pub fn apply(&self, mv: &Move) -> Result<(CurveState, StepData), MoveError> {
        let plain = |s: CurveState| Ok((s, StepData::default()));
        match mv {
            Move::Start(start) => plain(start.state()),
            Move::Mark(mark) => plain(self.with_mark(mark.clone())?),
            Move::Special(pattern) => plain(self.with_special(pattern.clone())?),
            Move::Blowup(x) => match self.ambient {
                Ambient::Plane { .. } => self.from_plane(x),
                Ambient::Surface { .. } => {
                    self.require_not_pending()?;
                    let mut next = self.clone();
                    next.pending = Some(x.clone());
                    Ok((next, StepData::default()))
                }
            },
            Move::Contract(fiber) => {
                let x = self.pending.clone().ok_or(MoveError::NoPendingBlowup)?;
                let mut base = self.clone();
                base.pending = None;
                base.elm(fiber, &x)
            }
            Move::Elm { fiber, at } => self.elm(fiber, at),
            Move::ToPlane => self.to_plane(),
            Move::FromPlane(x) => self.from_plane(x),
            Move::SwapRulings => plain(self.swap_rulings()?),
            Move::Assert(predicates) => {
                for p in predicates {
                    self.check(p)?;
                }
                plain(self.clone())
            }
        }
    }

    /// Evaluates one `assert` predicate.
    pub fn check(&self, predicate: &Predicate) -> Result<(), MoveError> {
        let fail = |what: &str, expected: String, found: String| {
            Err(MoveError::AssertionFailed { what: what.to_owned(), expected, found })
        };
        match predicate {
            Predicate::Surface(s) => match self.surface_id() {
                Some(found) if found == *s => Ok(()),
                found => fail("surface", format!("{s}"), found.map_or(String::from("plane"), |f| format!("{f}"))),
            },
            Predicate::Type(c) => match self.class() {
                Some(found) if found == *c => Ok(()),
                found => fail("type", format!("{c}"), found.map_or(String::from("plane"), |f| format!("{f}"))),
            },
            Predicate::Degree(d) => match self.degree() {
                Some(found) if found == *d => Ok(()),
                found => fail("degree", format!("{d}"), found.map_or(String::from("surface"), |f| format!("{f}"))),
            },
            Predicate::Config(config) => {
                let (want, have) = (cusp::format_config(config), cusp::format_config(&self.config()));
                if want == have {
                    Ok(())
                } else {
                    fail("config", want, have)
                }
            }
            Predicate::Chi(chi) => match self.spec() {
                Some(spec) if spec.chi_log() == *chi => Ok(()),
                Some(spec) => fail("chi", format!("{chi}"), format!("{}", spec.chi_log())),
                None => Err(MoveError::NeedsSurface("assert chi")),
            },
            Predicate::Genus(g) => {
                if self.genus() == *g {
                    Ok(())
                } else {
                    fail("genus", format!("{g}"), format!("{}", self.genus()))
                }
            }
            Predicate::Cusps(n) => {
                let found = self.config().len();
                if found == *n {
                    Ok(())
                } else {
                    fail("cusps", format!("{n}"), format!("{found}"))
                }
            }
            Predicate::Pattern(mark, pattern) => {
                let m = self.mark(mark).ok_or_else(|| MoveError::UnknownMark(mark.clone()))?;
                let mut want = pattern.clone();
                let mut have = m.pattern.clone();
                want.sort();
                have.sort();
                if want == have {
                    Ok(())
                } else {
                    fail(&format!("pattern.{mark}"), format_pattern(&want), format_pattern(&have))
                }
            }
        }
    }
}

fn contact_in(pattern: &[(String, u32)], point: &str) -> u32 {
    pattern.iter().find(|(p, _)| p == point).map_or(0, |&(_, c)| c)
}

/// One applied move in a trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub line: usize,
    pub text: String,
    pub summary: String,
    pub self_intersection: i64,
    pub step: StepData,
}

/// Applies the moves of `script` in order, starting from `initial` (a `start`
/// line replaces the state). Every intermediate state is validated.
pub fn run_script(
    initial: Option<CurveState>,
    script: &MoveScript,
) -> Result<(CurveState, Vec<TraceEntry>), ScriptError> {
    let mut state = initial;
    let mut trace = Vec::new();
    for line in &script.lines {
        let located =
            |error: MoveError| ScriptError { line: line.line, text: format!("{}", line.mv), error: Box::new(error) };
        let current = match (&state, &line.mv) {
            (_, Move::Start(start)) => start.state(),
            (Some(s), _) => s.clone(),
            (None, _) => return Err(located(MoveError::MissingStart)),
        };
        let (next, step) = current.apply(&line.mv).map_err(located)?;
        trace.push(TraceEntry {
            line: line.line,
            text: format!("{}", line.mv),
            summary: next.summary(),
            self_intersection: next.self_intersection(),
            step,
        });
        state = Some(next);
    }
    let state = state.ok_or(ScriptError { line: 0, text: String::new(), error: Box::new(MoveError::MissingStart) })?;
    if let Some(x) = &state.pending {
        return Err(ScriptError {
            line: script.lines.last().map_or(0, |l| l.line),
            text: String::from("end of script"),
            error: Box::new(MoveError::PendingBlowup(x.id.clone())),
        });
    }
    Ok((state, trace))
}
