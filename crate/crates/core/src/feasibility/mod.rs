//! Constraint checks and invariant reports for a candidate cuspidal
//! configuration on `F_e`.
//!
//! Every check is exact integer arithmetic. Square-root thresholds are
//! compared by sign analysis and squaring (see [`Surd`]).

mod bound;
mod enumerate;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::cusp::{self, MultiplicitySequence};
use crate::picard::{DivisorClass, SurfaceId};

pub use bound::{LowerBound, LowerBoundMode, Surd};
pub use enumerate::{enumerate_configs, EnumerationLimits, DEFAULT_MAX_CANDIDATES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FeasibilityError {
    #[error("class {0} is not the class of an irreducible curve (need b > 0, a >= 0)")]
    NotACurveClass(DivisorClass),
    #[error("arithmetic genus {0} is negative")]
    NegativeArithmeticGenus(i64),
    #[error("curve is not rational (geometric genus {0})")]
    NotRational(i64),
    #[error("chi paths disagree: 6-r-D^2 = {via_resolution}, 7-2(a+b)-be+sum M = {via_formula}")]
    InvariantBreach { via_resolution: i64, via_formula: i64 },
    #[error("enumeration tested more than {0} candidates")]
    CapExceeded(u64),
}

/// One cuspidal-configuration candidate: a class on `F_e` and its cusps.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CurveSpec {
    pub surface: SurfaceId,
    pub cls: DivisorClass,
    pub config: Vec<MultiplicitySequence>,
    /// Caller's assertion that the complement has non-negative log Kodaira dimension.
    pub kodaira_nonneg: bool,
}

impl CurveSpec {
    /// Builds a spec with the configuration in canonical (descending) order.
    pub fn new(
        surface: SurfaceId,
        cls: DivisorClass,
        mut config: Vec<MultiplicitySequence>,
    ) -> Result<Self, FeasibilityError> {
        if !cls.is_curve_class() {
            return Err(FeasibilityError::NotACurveClass(cls));
        }
        cusp::sort_config(&mut config);
        Ok(CurveSpec { surface, cls, config, kodaira_nonneg: false })
    }

    pub fn with_kodaira_nonneg(mut self, flag: bool) -> Self {
        self.kodaira_nonneg = flag;
        self
    }

    pub fn cusp_count(&self) -> usize {
        self.config.len()
    }

    /// The flag actually used by the checks: two or more cusps force
    /// non-negative log Kodaira dimension.
    pub fn kodaira_effective(&self) -> bool {
        self.kodaira_nonneg || self.config.len() >= 2
    }

    /// Exchanges the rulings of `F_0`. Other surfaces are returned unchanged.
    pub fn swap_rulings(&self) -> CurveSpec {
        if !self.surface.is_quadric() {
            return self.clone();
        }
        CurveSpec { cls: self.cls.swapped(), ..self.clone() }
    }

    fn e(&self) -> i64 {
        self.surface.e()
    }

    /// `(b-1)(2a-2+be)/2`, without rejecting negative values.
    pub fn arithmetic_genus_raw(&self) -> i64 {
        (self.cls.b - 1) * (2 * self.cls.a - 2 + self.cls.b * self.e()) / 2
    }

    pub fn total_delta(&self) -> i64 {
        self.config.iter().map(|s| s.delta()).sum()
    }

    /// Arithmetic genus minus total delta; negative when delta overshoots.
    pub fn genus(&self) -> i64 {
        self.arithmetic_genus_raw() - self.total_delta()
    }

    pub fn m_sum(&self) -> i64 {
        self.config.iter().map(|s| s.m_number()).sum()
    }

    pub fn max_multiplicity(&self) -> Option<u32> {
        self.config.iter().map(|s| s.multiplicity()).max()
    }

    /// `K.(K+C) = 8 - 2a - 2b - be`.
    pub fn k_dot_kc(&self) -> i64 {
        let k = self.surface.canonical();
        self.surface.intersect(k, k + self.cls)
    }

    /// `chi(Theta_V<D>) = 7 - 2a - 2b - be + sum M_j`.
    pub fn chi_log(&self) -> i64 {
        self.k_dot_kc() - 1 + self.m_sum()
    }

    /// Degree of the ruling used by the ramification count: `b`, or
    /// `min(a, b)` on `F_0`.
    fn projection_degree(&self) -> i64 {
        if self.surface.is_quadric() {
            self.cls.a.min(self.cls.b)
        } else {
            self.cls.b
        }
    }

    /// `2b + 2g - 2` (with `min(a, b)` for `b` on `F_0`).
    pub fn ramification_budget(&self) -> i64 {
        2 * self.projection_degree() + 2 * self.genus() - 2
    }

    pub fn check_rationality(&self) -> Verdict {
        let g = self.genus();
        let detail = format!("genus = {g}");
        if g == 0 {
            Verdict::pass("rationality", detail)
        } else {
            Verdict::fail("rationality", detail)
        }
    }

    pub fn check_mult_vs_b(&self) -> Verdict {
        let b = self.cls.b;
        match self.config.iter().find(|s| i64::from(s.multiplicity()) > b) {
            Some(s) => Verdict::fail("mult_vs_b", format!("cusp {s} has multiplicity {} > b = {b}", s.multiplicity())),
            None => Verdict::pass(
                "mult_vs_b",
                format!("max multiplicity {} <= b = {b}", self.max_multiplicity().unwrap_or(1)),
            ),
        }
    }

    pub fn check_hurwitz(&self) -> Verdict {
        if self.config.is_empty() {
            return Verdict::skipped("hurwitz", "no cusps");
        }
        let sum: i64 = self.config.iter().map(|s| i64::from(s.multiplicity()) - 1).sum();
        let budget = self.ramification_budget();
        let detail = format!("sum(m_j - 1) = {sum}, budget = {budget}");
        if sum <= budget {
            Verdict::pass("hurwitz", detail)
        } else {
            Verdict::fail("hurwitz", detail)
        }
    }

    /// `2(a+b) + be`.
    pub fn m_sum_limit(&self) -> i64 {
        2 * (self.cls.a + self.cls.b) + self.cls.b * self.e()
    }

    pub fn check_m_sum_bound(&self) -> Verdict {
        if !self.kodaira_effective() {
            return Verdict::skipped("m_sum_bound", "log Kodaira dimension not asserted non-negative");
        }
        let (sum, limit) = (self.m_sum(), self.m_sum_limit());
        let detail = format!("sum M = {sum}, limit = {limit}");
        if sum <= limit {
            Verdict::pass("m_sum_bound", detail)
        } else {
            Verdict::fail("m_sum_bound", detail)
        }
    }

    /// Data for the lower bound on the largest multiplicity, or `None` when
    /// the check does not apply (no cusps, or neither two cusps nor the flag).
    pub fn lower_bound(&self) -> Option<LowerBound> {
        let m = self.max_multiplicity()?;
        if !self.kodaira_effective() {
            return None;
        }
        Some(LowerBound::evaluate(self.surface, self.cls, i64::from(m)))
    }

    pub fn check_mult_lower_bound(&self, mode: LowerBoundMode) -> Verdict {
        let name = mode.check_name();
        if self.config.is_empty() {
            return Verdict::skipped(name, "no cusps");
        }
        let Some(bound) = self.lower_bound() else {
            return Verdict::skipped(name, "needs two cusps or the Kodaira flag");
        };
        bound.verdict(mode)
    }

    pub fn resolution_report(&self) -> Result<ResolutionReport, FeasibilityError> {
        let g = self.genus();
        if g != 0 {
            return Err(FeasibilityError::NotRational(g));
        }
        let (a, b, e) = (self.cls.a, self.cls.b, self.e());
        let s = self.config.len() as i64;
        let t_total: i64 = self.config.iter().map(|c| c.resolution_length() as i64).sum();
        let r = t_total + 1;
        let c_tilde_sq = b * b * e + 2 * a * b - self.config.iter().map(|c| c.full_square_sum()).sum::<i64>();
        let d_sq = c_tilde_sq + 2 * s - self.config.iter().map(|c| c.omega() + 1).sum::<i64>();
        let sum_di_sq = d_sq - 2 * r + 2;
        let chi_theta_v = 8 - 2 * r;
        let chi_normal_sum = r + sum_di_sq;
        let chi_log = 6 - r - d_sq;
        let via_sheaves = chi_theta_v - chi_normal_sum;
        let via_formula = self.chi_log();
        if chi_log != via_sheaves || chi_log != via_formula {
            return Err(FeasibilityError::InvariantBreach { via_resolution: chi_log, via_formula });
        }
        Ok(ResolutionReport {
            r,
            t_total,
            k_v_sq: 9 - r,
            c2: 3 + r,
            chi_theta_v,
            c_tilde_sq,
            d_sq,
            sum_di_sq,
            chi_normal_sum,
            chi_log,
        })
    }

    /// Runs every check; never stops at the first failure.
    pub fn full_report(&self) -> FeasibilityReport {
        let resolution = self.resolution_report();
        FeasibilityReport {
            genus: self.genus(),
            chi: self.chi_log(),
            k_dot_kc: self.k_dot_kc(),
            m_sum: self.m_sum(),
            rationality: self.check_rationality(),
            mult_vs_b: self.check_mult_vs_b(),
            hurwitz: self.check_hurwitz(),
            m_sum_bound: self.check_m_sum_bound(),
            mult_lower_bound: self.check_mult_lower_bound(LowerBoundMode::Quadratic),
            mult_lower_bound_closed_form: self.check_mult_lower_bound(LowerBoundMode::ClosedForm),
            lower_bound: self.lower_bound(),
            resolution: resolution.as_ref().ok().copied(),
            resolution_error: resolution.err(),
        }
    }
}

impl fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let config = cusp::format_config(&self.config);
        write!(f, "{} type {} config {}", self.surface, self.cls, if config.is_empty() { "-" } else { &config })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Skipped => "skipped",
        }
    }
}

/// Result of one check with a human-readable witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub name: &'static str,
    pub outcome: Outcome,
    pub detail: String,
}

impl Verdict {
    pub fn pass(name: &'static str, detail: impl Into<String>) -> Self {
        Verdict { name, outcome: Outcome::Pass, detail: detail.into() }
    }

    pub fn fail(name: &'static str, detail: impl Into<String>) -> Self {
        Verdict { name, outcome: Outcome::Fail, detail: detail.into() }
    }

    pub fn skipped(name: &'static str, detail: impl Into<String>) -> Self {
        Verdict { name, outcome: Outcome::Skipped, detail: detail.into() }
    }

    pub fn failed(&self) -> bool {
        self.outcome == Outcome::Fail
    }
}

/// Resolution-side numbers for a rational curve: `r` components of `D`,
/// `K_V^2`, `c_2`, `chi(Theta_V)`, `C~^2`, `D^2`, `sum D_i^2`,
/// `chi(+N_{D_i/V})` and `chi(Theta_V<D>)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResolutionReport {
    pub r: i64,
    pub t_total: i64,
    pub k_v_sq: i64,
    pub c2: i64,
    pub chi_theta_v: i64,
    pub c_tilde_sq: i64,
    pub d_sq: i64,
    pub sum_di_sq: i64,
    pub chi_normal_sum: i64,
    pub chi_log: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub genus: i64,
    pub chi: i64,
    pub k_dot_kc: i64,
    pub m_sum: i64,
    pub rationality: Verdict,
    pub mult_vs_b: Verdict,
    pub hurwitz: Verdict,
    pub m_sum_bound: Verdict,
    /// Quadratic form of the multiplicity bound (binding).
    pub mult_lower_bound: Verdict,
    /// Closed-form radical threshold; reported, never binding.
    pub mult_lower_bound_closed_form: Verdict,
    pub lower_bound: Option<LowerBound>,
    pub resolution: Option<ResolutionReport>,
    pub resolution_error: Option<FeasibilityError>,
}

impl FeasibilityReport {
    /// Every verdict in a fixed order.
    pub fn verdicts(&self) -> [&Verdict; 6] {
        [
            &self.rationality,
            &self.mult_vs_b,
            &self.hurwitz,
            &self.m_sum_bound,
            &self.mult_lower_bound,
            &self.mult_lower_bound_closed_form,
        ]
    }

    /// The checks that decide feasibility.
    pub fn binding_verdicts(&self) -> [&Verdict; 5] {
        [&self.rationality, &self.mult_vs_b, &self.hurwitz, &self.m_sum_bound, &self.mult_lower_bound]
    }

    pub fn all_pass(&self) -> bool {
        self.binding_verdicts().iter().all(|v| !v.failed())
    }

    pub fn bound_modes_disagree(&self) -> bool {
        self.lower_bound.as_ref().is_some_and(|b| b.disagreement())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cusp::parse_config;

    fn spec(e: u32, a: i64, b: i64, config: &str) -> CurveSpec {
        CurveSpec::new(SurfaceId(e), DivisorClass::new(a, b), parse_config(config).unwrap()).unwrap()
    }

    #[test]
    fn rationality_examples() {
        assert_eq!(spec(1, 1, 4, "[2_3],[2],[2],[2]").check_rationality().outcome, Outcome::Pass);
        assert_eq!(spec(0, 3, 3, "[2],[2],[2],[2]").check_rationality().outcome, Outcome::Pass);
        let v = spec(1, 1, 4, "[2],[2]").check_rationality();
        assert_eq!(v.outcome, Outcome::Fail);
        assert_eq!(v.detail, "genus = 4");
        assert_eq!(spec(1, 1, 4, "[3],[3],[2]").genus(), -1);
    }

    #[test]
    fn mult_vs_b_examples() {
        assert_eq!(spec(1, 3, 4, "[4,2_3]").check_mult_vs_b().outcome, Outcome::Pass);
        assert_eq!(spec(1, 3, 3, "[4]").check_mult_vs_b().outcome, Outcome::Fail);
        assert_eq!(spec(1, 3, 5, "[2]").check_mult_vs_b().outcome, Outcome::Pass);
    }

    #[test]
    fn hurwitz_examples() {
        let s = spec(1, 1, 4, "[2_3],[2],[2],[2]");
        assert_eq!(s.ramification_budget(), 6);
        assert_eq!(s.check_hurwitz().detail, "sum(m_j - 1) = 4, budget = 6");
        for k in 1..5 {
            let s = spec(1, 2 * k + 1, 4, &format!("[4_{k},2_3],[2],[2],[2]"));
            assert_eq!(s.check_hurwitz().detail, "sum(m_j - 1) = 6, budget = 6");
        }
        for k in 2..6 {
            let s = spec(0, k + 1, 3, &format!("[2_{}],[2],[2],[2]", 2 * k - 3));
            assert_eq!(s.check_hurwitz().detail, "sum(m_j - 1) = 4, budget = 4");
        }
        assert_eq!(spec(1, 0, 1, "").check_hurwitz().outcome, Outcome::Skipped);
    }

    #[test]
    fn m_sum_examples() {
        let s = spec(2, 0, 3, "[2],[2],[2],[2]");
        assert_eq!(s.check_m_sum_bound().detail, "sum M = 4, limit = 12");
        let s = spec(1, 3, 4, "[4,2_3],[2],[2],[2]");
        assert_eq!(s.check_m_sum_bound().detail, "sum M = 10, limit = 18");
        assert_eq!(spec(1, 3, 4, "[4,2_3]").check_m_sum_bound().outcome, Outcome::Skipped);
        assert_eq!(spec(1, 3, 4, "[4,2_3]").with_kodaira_nonneg(true).check_m_sum_bound().outcome, Outcome::Pass);
    }

    #[test]
    fn chi_examples() {
        assert_eq!(spec(2, 0, 3, "[2],[2],[2],[2]").chi_log(), -1);
        assert_eq!(spec(1, 3, 4, "[4,2_3],[2],[2],[2]").chi_log(), -1);
        assert_eq!(spec(0, 4, 4, "[3,2],[2_3],[2],[2]").chi_log(), 0);
        assert_eq!(spec(2, 0, 3, "").k_dot_kc(), 8 - 6 - 6);
    }

    #[test]
    fn resolution_examples() {
        let rep = spec(2, 0, 3, "[2],[2],[2],[2]").resolution_report().unwrap();
        assert_eq!((rep.r, rep.k_v_sq, rep.c2, rep.chi_theta_v), (13, -4, 16, -18));
        assert_eq!((rep.c_tilde_sq, rep.d_sq, rep.chi_log), (-6, -6, -1));
        assert_eq!(rep.chi_normal_sum, -17);
        let rep = spec(0, 4, 4, "[3,2],[2_3],[2],[2]").resolution_report().unwrap();
        assert_eq!((rep.r, rep.d_sq, rep.chi_log), (16, -10, 0));
        let rep = spec(1, 0, 1, "").resolution_report().unwrap();
        assert_eq!((rep.r, rep.k_v_sq, rep.c2, rep.chi_theta_v), (1, 8, 4, 6));
        assert_eq!(spec(1, 1, 4, "[2],[2]").resolution_report(), Err(FeasibilityError::NotRational(4)));
    }

    #[test]
    fn full_report_examples() {
        let rep = spec(1, 1, 4, "[5]").full_report();
        assert!(rep.mult_vs_b.failed());
        assert!(!rep.all_pass());
        let rep = spec(1, 1, 4, "[2],[2]").full_report();
        assert!(rep.rationality.failed());
        assert_eq!(rep.genus, 4);
        assert!(rep.resolution.is_none());
        let rep = spec(2, 0, 3, "[2],[2],[2],[2]").full_report();
        assert!(rep.all_pass());
        assert_eq!(rep.chi, rep.k_dot_kc + rep.m_sum - 1);
    }

    #[test]
    fn quadric_swap() {
        let s = spec(0, 4, 3, "[2_4],[2],[2],[2]");
        let t = s.swap_rulings();
        assert_eq!(t.cls, DivisorClass::new(3, 4));
        assert_eq!(spec(1, 4, 3, "").swap_rulings().cls, DivisorClass::new(4, 3));
        assert!(CurveSpec::new(SurfaceId(0), DivisorClass::new(1, 0), Vec::new()).is_err());
    }
}
