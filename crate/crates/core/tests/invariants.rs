use std::collections::BTreeSet;

use hirzebruch_core::birational::{
    expected_row1, expected_row2, expected_row3, expected_row4, parse_script, run_script, series_row1, series_row2,
    series_row3, series_row4,
};
use hirzebruch_core::cusp::{self, validate};
use hirzebruch_core::feasibility::{enumerate_configs, EnumerationLimits};
use hirzebruch_core::{CurveSpec, DivisorClass, MultiplicitySequence, SurfaceId};
use proptest::prelude::*;

fn p_a(e: u32, a: i64, b: i64) -> i64 {
    (b - 1) * (2 * a - 2 + b * i64::from(e)) / 2
}

/// Entry strings with `sum m(m-1)/2 <= budget` that pass `validate`.
fn valid_sequences(budget: i64) -> Vec<MultiplicitySequence> {
    let mut out = Vec::new();
    let mut stack = vec![Vec::<u32>::new()];
    while let Some(prefix) = stack.pop() {
        let used: i64 = prefix.iter().map(|&m| i64::from(m * (m - 1) / 2)).sum();
        if !prefix.is_empty() && validate(&prefix).is_ok() {
            out.push(MultiplicitySequence::new(prefix.clone()).unwrap());
        }
        for m in 2u32.. {
            if used + i64::from(m * (m - 1) / 2) > budget {
                break;
            }
            let mut next = prefix.clone();
            next.push(m);
            stack.push(next);
        }
    }
    out.sort();
    out
}

fn multisets(
    pool: &[MultiplicitySequence],
    from: usize,
    left: i64,
    cur: &mut Vec<MultiplicitySequence>,
    out: &mut Vec<Vec<MultiplicitySequence>>,
) {
    if left == 0 {
        out.push(cur.clone());
        return;
    }
    for i in from..pool.len() {
        if pool[i].delta() <= left {
            cur.push(pool[i].clone());
            multisets(pool, i, left - pool[i].delta(), cur, out);
            cur.pop();
        }
    }
}

#[test]
fn enumerate_valid_matches_filtered_strings() {
    for budget in 1..=8 {
        let mut listed = cusp::enumerate_valid(budget).unwrap();
        listed.sort();
        assert_eq!(listed, valid_sequences(budget), "budget {budget}");
    }
}

#[test]
fn enumerator_matches_brute_force() {
    let pool = valid_sequences(6);
    for e in 0..=3u32 {
        for a in 0..=6 {
            for b in 1..=4 {
                let genus = p_a(e, a, b);
                if !(0..=6).contains(&genus) {
                    continue;
                }
                let (s, c) = (SurfaceId(e), DivisorClass::new(a, b));
                for (min_cusps, kodaira_nonneg) in [(1, false), (1, true), (3, false)] {
                    let mut all = Vec::new();
                    multisets(&pool, 0, genus, &mut Vec::new(), &mut all);
                    let oracle: BTreeSet<CurveSpec> = all
                        .into_iter()
                        .filter(|cfg| cfg.len() >= min_cusps)
                        .map(|cfg| CurveSpec::new(s, c, cfg).unwrap().with_kodaira_nonneg(kodaira_nonneg))
                        .filter(|spec| spec.full_report().all_pass())
                        .collect();
                    let limits = EnumerationLimits { min_cusps, kodaira_nonneg, ..EnumerationLimits::default() };
                    let found: BTreeSet<CurveSpec> = enumerate_configs(s, c, limits).unwrap().into_iter().collect();
                    assert_eq!(found, oracle, "{s} {c} min {min_cusps} kodaira {kodaira_nonneg}");
                }
            }
        }
    }
}

#[test]
fn generators_reach_their_tables() {
    for k in 0..=4 {
        for e in 0..=4 {
            if (e, k) == (0, 0) {
                continue;
            }
            let g = series_row1(e, k).unwrap();
            let (s, c, cfg) = expected_row1(e, k);
            assert_eq!((g.state.surface_id(), g.state.class(), g.state.config()), (Some(s), Some(c), cfg));
        }
        for h in 0..=1 {
            if (h, k) != (0, 0) {
                let g = series_row2(h, k).unwrap();
                let (s, c, cfg) = expected_row2(h, k);
                assert_eq!((g.state.surface_id(), g.state.class(), g.state.config()), (Some(s), Some(c), cfg));
                let g = series_row3(h, k).unwrap();
                let (s, c, cfg) = expected_row3(h, k);
                assert_eq!((g.state.surface_id(), g.state.class(), g.state.config()), (Some(s), Some(c), cfg));
            }
        }
    }
}

fn feasible_spec() -> impl Strategy<Value = CurveSpec> {
    (0u32..=4, 0i64..=8, 1i64..=5, any::<bool>(), proptest::collection::vec(any::<prop::sample::Index>(), 12))
        .prop_filter_map("needs a feasible configuration", |(e, a, b, kodaira, picks)| {
            let genus = p_a(e, a, b);
            if !(1..=10).contains(&genus) {
                return None;
            }
            let pool = cusp::enumerate_valid(genus).unwrap();
            let mut left = genus;
            let mut config = Vec::new();
            for pick in &picks {
                if left == 0 {
                    break;
                }
                let fits: Vec<_> =
                    pool.iter().filter(|s| s.delta() <= left && i64::from(s.multiplicity()) <= b).collect();
                let s = pick.get(&fits);
                left -= s.delta();
                config.push((*s).clone());
            }
            let spec = CurveSpec::new(SurfaceId(e), DivisorClass::new(a, b), config).ok()?.with_kodaira_nonneg(kodaira);
            (left == 0 && spec.full_report().all_pass()).then_some(spec)
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, max_global_rejects: 100_000, ..ProptestConfig::default() })]

    #[test]
    fn chi_three_ways(spec in feasible_spec()) {
        let res = spec.resolution_report().unwrap();
        let sum_m: i64 = spec.config.iter().map(MultiplicitySequence::m_number).sum();
        let formula = 7 - 2 * (spec.cls.a + spec.cls.b) - spec.cls.b * spec.surface.e() + sum_m;
        prop_assert_eq!(6 - res.r - res.d_sq, formula);
        prop_assert_eq!(res.chi_theta_v - res.chi_normal_sum, formula);
        prop_assert_eq!(res.chi_log, formula);
        prop_assert_eq!(res.k_v_sq, 9 - res.r);
        prop_assert_eq!(res.chi_theta_v, 8 - 2 * res.r);
    }

    #[test]
    fn quadric_checks_ignore_ruling_order(spec in feasible_spec()) {
        prop_assume!(spec.surface.is_quadric());
        let swapped = spec.swap_rulings();
        prop_assert_eq!(swapped.cls, spec.cls.swapped());
        let (x, y) = (spec.full_report(), swapped.full_report());
        // m <= b reads only the ruling that is called the fiber
        for (u, v) in x.verdicts().iter().zip(y.verdicts()).filter(|(u, _)| u.name != "mult_vs_b") {
            prop_assert_eq!(u.outcome, v.outcome, "{}", u.name);
        }
        prop_assert_eq!(x.chi, y.chi);
    }

    #[test]
    fn row4_scripts_print_and_replay(h in 0u32..=1, k in 0u32..=4, cut in proptest::collection::vec(0u32..=100, 3)) {
        let total = 2 * k + h;
        let mut marks: Vec<u32> = cut.iter().map(|c| c * total / 100).collect();
        marks.sort_unstable();
        let n = [marks[0], marks[1] - marks[0], marks[2] - marks[1], total - marks[2]];
        let g = series_row4(h, k, n).unwrap();
        let (s, c, cfg) = expected_row4(h, k, n);
        prop_assert_eq!((g.state.surface_id(), g.state.class(), g.state.config()), (Some(s), Some(c), cfg));
        let (state, _) = run_script(None, &parse_script(&g.script.to_string()).unwrap()).unwrap();
        prop_assert_eq!(state.summary(), g.state.summary());
    }
}
