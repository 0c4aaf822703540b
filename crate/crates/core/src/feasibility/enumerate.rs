//! Exhaustive search for cusp configurations passing every binding check.

use alloc::vec::Vec;

use super::{CurveSpec, FeasibilityError};
use crate::cusp::{self, MultiplicitySequence};
use crate::picard::{DivisorClass, SurfaceId};

pub const DEFAULT_MAX_CANDIDATES: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub min_cusps: usize,
    pub kodaira_nonneg: bool,
    /// Abort once this many complete candidate configurations have been tested.
    pub max_candidates: u64,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits { min_cusps: 1, kodaira_nonneg: false, max_candidates: DEFAULT_MAX_CANDIDATES }
    }
}

struct Search<'a> {
    spec: CurveSpec,
    candidates: &'a [MultiplicitySequence],
    limits: EnumerationLimits,
    hurwitz_budget: i64,
    m_limit: i64,
    visited: u64,
    found: Vec<CurveSpec>,
}

impl Search<'_> {
    // Candidates are sorted ascending; picking indices in non-increasing
    // order yields each multiset once, already in canonical order.
    fn walk(
        &mut self,
        max_index: usize,
        delta_left: i64,
        hurwitz_used: i64,
        m_used: i64,
    ) -> Result<(), FeasibilityError> {
        let count = self.spec.config.len();
        if delta_left == 0 {
            self.visited += 1;
            if self.visited > self.limits.max_candidates {
                return Err(FeasibilityError::CapExceeded(self.limits.max_candidates));
            }
            if count >= self.limits.min_cusps && self.spec.full_report().all_pass() {
                self.found.push(self.spec.clone());
            }
            return Ok(());
        }
        let needed = self.limits.min_cusps.saturating_sub(count + 1) as i64;
        let m_binding = self.limits.kodaira_nonneg || count + 1 >= 2;
        for i in (0..max_index).rev() {
            let seq = &self.candidates[i];
            let delta = seq.delta();
            if delta > delta_left {
                continue;
            }
            let h = hurwitz_used + i64::from(seq.multiplicity()) - 1;
            // every further cusp costs at least one unit of the budget.
            if h + needed > self.hurwitz_budget {
                continue;
            }
            let m = m_used + seq.m_number();
            if m_binding && m + needed > self.m_limit {
                continue;
            }
            self.spec.config.push(seq.clone());
            let r = self.walk(i + 1, delta_left - delta, h, m);
            self.spec.config.pop();
            r?;
        }
        Ok(())
    }
}

/// All configurations on a rational curve of class `cls` that pass the
/// binding checks, each in canonical order, sorted.
pub fn enumerate_configs(
    surface: SurfaceId,
    cls: DivisorClass,
    limits: EnumerationLimits,
) -> Result<Vec<CurveSpec>, FeasibilityError> {
    let base = CurveSpec::new(surface, cls, Vec::new())?.with_kodaira_nonneg(limits.kodaira_nonneg);
    let p_a = base.arithmetic_genus_raw();
    if p_a < 0 {
        return Err(FeasibilityError::NegativeArithmeticGenus(p_a));
    }
    let mut candidates: Vec<MultiplicitySequence> = match p_a {
        0 => Vec::new(),
        _ => cusp::enumerate_valid(p_a)
            .expect("budget is positive")
            .into_iter()
            .filter(|s| i64::from(s.multiplicity()) <= cls.b)
            .collect(),
    };
    candidates.sort();
    let mut search = Search {
        // the empty spec has genus p_a; the survivors have genus 0.
        hurwitz_budget: base.ramification_budget() - 2 * p_a,
        m_limit: base.m_sum_limit(),
        spec: base,
        candidates: &candidates,
        limits,
        visited: 0,
        found: Vec::new(),
    };
    search.walk(candidates.len(), p_a, 0, 0)?;
    let mut found = search.found;
    found.sort_by(|x, y| x.config.len().cmp(&y.config.len()).then_with(|| x.config.cmp(&y.config)));
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cusp::parse_config;

    fn limits(min_cusps: usize) -> EnumerationLimits {
        EnumerationLimits { min_cusps, ..EnumerationLimits::default() }
    }

    #[test]
    fn f2_class_has_four_cusp_curve() {
        let found = enumerate_configs(SurfaceId(2), DivisorClass::new(0, 3), limits(4)).unwrap();
        let target = parse_config("[2],[2],[2],[2]").unwrap();
        assert!(found.iter().any(|s| s.config == target));
        assert!(found.iter().all(|s| s.cusp_count() >= 4));
    }

    #[test]
    fn genus_zero_class_has_only_empty_config() {
        let found = enumerate_configs(SurfaceId(1), DivisorClass::new(3, 1), limits(0)).unwrap();
        assert_eq!(found.len(), 1);
        assert!(found[0].config.is_empty());
        assert!(enumerate_configs(SurfaceId(1), DivisorClass::new(3, 1), limits(1)).unwrap().is_empty());
    }

    #[test]
    fn cap_is_enforced() {
        let tight = EnumerationLimits { max_candidates: 3, ..limits(1) };
        assert_eq!(
            enumerate_configs(SurfaceId(1), DivisorClass::new(1, 4), tight),
            Err(FeasibilityError::CapExceeded(3))
        );
    }

    #[test]
    fn negative_genus_rejected() {
        assert_eq!(
            enumerate_configs(SurfaceId(0), DivisorClass::new(0, 3), limits(0)),
            Err(FeasibilityError::NegativeArithmeticGenus(-2))
        );
    }
}
