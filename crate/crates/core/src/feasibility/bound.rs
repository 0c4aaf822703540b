//! The lower bound on the largest cusp multiplicity, in two forms.
//!
//! The quadratic form asks `m^2 - B m + N < 0` with
//! `B = 3 + 2(a+b) + be` and `N = 2ab - 2(a+b) + 2 + b^2 e - be`.
//! The closed form asks `m > (3 + 2(a+b) - sqrt(R)) / 2` with
//! `R = 1 + 20(a+b) + 4(a^2+b^2) + 4be(1-b)`. On `F_0`, `R = B^2 - 4N` and the
//! two agree; for `e > 0` they do not, so both are evaluated and compared.

use alloc::format;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;

use num_integer::Roots;

use super::Verdict;
use crate::picard::{DivisorClass, SurfaceId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LowerBoundMode {
    Quadratic,
    ClosedForm,
}

impl LowerBoundMode {
    pub fn check_name(self) -> &'static str {
        match self {
            LowerBoundMode::Quadratic => "mult_lower_bound",
            LowerBoundMode::ClosedForm => "mult_lower_bound_closed_form",
        }
    }
}

/// The real number `(p + sign * sqrt(d)) / 2` with `d >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Surd {
    pub p: i64,
    pub d: i64,
    pub plus: bool,
}

impl Surd {
    pub fn lower(p: i64, d: i64) -> Self {
        Surd { p, d, plus: false }
    }

    pub fn upper(p: i64, d: i64) -> Self {
        Surd { p, d, plus: true }
    }

    fn exact_root(self) -> Option<i64> {
        let s = self.d.sqrt();
        (s * s == self.d).then_some(s)
    }

    /// Exact comparison with an integer.
    pub fn cmp_int(self, k: i64) -> Ordering {
        // (p ± sqrt d)/2 vs k  <=>  ±sqrt d vs 2k - p.
        let x = i128::from(2 * k - self.p);
        let d = i128::from(self.d);
        let root_vs_x = if x < 0 { Ordering::Greater } else { d.cmp(&(x * x)) };
        if self.plus {
            root_vs_x
        } else {
            // -sqrt d vs x: reverse of sqrt d vs -x.
            let neg_x = -x;
            let c = if neg_x < 0 { Ordering::Greater } else { d.cmp(&(neg_x * neg_x)) };
            c.reverse()
        }
    }

    /// `true` when both describe the same real number.
    pub fn same_value(self, other: Surd) -> bool {
        match (self.exact_root(), other.exact_root()) {
            (Some(r), Some(s)) => {
                let v = |z: Surd, r: i64| if z.plus { z.p + r } else { z.p - r };
                v(self, r) == v(other, s)
            }
            (None, None) => self == other,
            _ => false,
        }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact_root() {
            Some(r) => {
                let n = if self.plus { self.p + r } else { self.p - r };
                if n % 2 == 0 {
                    write!(f, "{}", n / 2)
                } else {
                    write!(f, "{n}/2")
                }
            }
            None => write!(f, "({} {} sqrt({}))/2", self.p, if self.plus { "+" } else { "-" }, self.d),
        }
    }
}

/// Both forms of the bound evaluated at one class and multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LowerBound {
    pub m: i64,
    /// `B`.
    pub b_coef: i64,
    /// `N`.
    pub n_coef: i64,
    /// `m^2 - B m + N`.
    pub quadratic_value: i64,
    /// `B^2 - 4N`.
    pub discriminant: i64,
    /// `3 + 2(a+b)`.
    pub closed_linear: i64,
    /// `R`.
    pub radicand: i64,
    pub quadratic_pass: bool,
    /// `None` when `R < 0` and the closed form has no real threshold.
    pub closed_pass: Option<bool>,
}

impl LowerBound {
    pub fn evaluate(surface: SurfaceId, cls: DivisorClass, m: i64) -> Self {
        let (a, b, e) = (cls.a, cls.b, surface.e());
        let s = a + b;
        let b_coef = 3 + 2 * s + b * e;
        let n_coef = 2 * a * b - 2 * s + 2 + b * b * e - b * e;
        let quadratic_value = m * m - b_coef * m + n_coef;
        let closed_linear = 3 + 2 * s;
        let radicand = 1 + 20 * s + 4 * (a * a + b * b) + 4 * b * e * (1 - b);
        let closed_pass = (radicand >= 0).then(|| Surd::lower(closed_linear, radicand).cmp_int(m) == Ordering::Less);
        LowerBound {
            m,
            b_coef,
            n_coef,
            quadratic_value,
            discriminant: b_coef * b_coef - 4 * n_coef,
            closed_linear,
            radicand,
            quadratic_pass: quadratic_value < 0,
            closed_pass,
        }
    }

    /// Roots of the quadratic; `None` when there are no real roots.
    pub fn quadratic_roots(&self) -> Option<(Surd, Surd)> {
        (self.discriminant >= 0)
            .then(|| (Surd::lower(self.b_coef, self.discriminant), Surd::upper(self.b_coef, self.discriminant)))
    }

    pub fn closed_threshold(&self) -> Option<Surd> {
        (self.radicand >= 0).then(|| Surd::lower(self.closed_linear, self.radicand))
    }

    pub fn verdicts_differ(&self) -> bool {
        self.closed_pass.is_some_and(|c| c != self.quadratic_pass)
    }

    /// The closed-form threshold differs from the quadratic's lower root, or
    /// the two verdicts differ.
    pub fn disagreement(&self) -> bool {
        let thresholds_match = match (self.quadratic_roots(), self.closed_threshold()) {
            (Some((lo, _)), Some(t)) => lo.same_value(t),
            (None, None) => true,
            _ => false,
        };
        !thresholds_match || self.verdicts_differ()
    }

    pub fn verdict(&self, mode: LowerBoundMode) -> Verdict {
        let name = mode.check_name();
        match mode {
            LowerBoundMode::Quadratic => {
                let roots = match self.quadratic_roots() {
                    Some((lo, hi)) => format!("roots {lo}, {hi}"),
                    None => String::from("no real roots"),
                };
                let detail = format!(
                    "m = {}, m^2 - {}m + {} = {}, {roots}",
                    self.m, self.b_coef, self.n_coef, self.quadratic_value
                );
                if self.quadratic_pass {
                    Verdict::pass(name, detail)
                } else {
                    Verdict::fail(name, detail)
                }
            }
            LowerBoundMode::ClosedForm => match (self.closed_pass, self.closed_threshold()) {
                (Some(pass), Some(t)) => {
                    let detail = format!("m = {}, threshold = {t}", self.m);
                    if pass {
                        Verdict::pass(name, detail)
                    } else {
                        Verdict::fail(name, detail)
                    }
                }
                _ => Verdict::skipped(name, format!("radicand {} is negative", self.radicand)),
            },
        }
    }
}
