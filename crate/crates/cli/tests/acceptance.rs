//! Acceptance run: one `PASS`/`FAIL` line per criterion, with the elapsed time
//! against its budget and a short witness. Exits non-zero if any line fails.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use hirzebruch::fixtures::{
    self, load, quartic_tangent_points, F1_QUINTIC, F2_QUINTIC, REAL_QUARTIC, REAL_QUARTIC_TANGENT,
};
use hirzebruch_core::birational::{
    curve_f2, expected_row1, expected_row2, expected_row3, expected_row4, parse_script, run_script, series_row1,
    series_row2, series_row3, series_row4, single_blowup, CurvePoint, Generated, SingleBlowup,
};
use hirzebruch_core::cusp::{self, parse_config};
use hirzebruch_core::feasibility::{enumerate_configs, EnumerationLimits, LowerBound};
use hirzebruch_core::polyengine::{
    binomial_germ, contact_order, delta_audit, embedded_resolution, local_resolution, multiplicity_at, Chart,
    ChartPoint,
};
use hirzebruch_core::{CurveSpec, CurveState, DivisorClass, MultiplicitySequence, PointSpec, SurfaceId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Pinned tolerances. Every comparison below is exact integer or rational
// equality, so the numeric tolerance is zero throughout.
const TOLERANCE: i64 = 0;
const SEED: u64 = 0x00c0_ffee;
const RANDOM_SPECS: usize = 1000;
const ROUND_TRIPS: usize = 500;
const GRID_E: u32 = 6;
const GRID_K: u32 = 6;

type Expected = (SurfaceId, DivisorClass, Vec<MultiplicitySequence>);
type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn exact(lhs: i64, rhs: i64) -> bool {
    (lhs - rhs).abs() <= TOLERANCE
}

/// Independent arithmetic genus `(b-1)(2a-2+be)/2`.
fn oracle_p_a(e: i64, a: i64, b: i64) -> i64 {
    (b - 1) * (2 * a - 2 + b * e) / 2
}

/// Independent delta: `sum m(m-1)/2` over the written entries.
fn oracle_delta(config: &[MultiplicitySequence]) -> i64 {
    config.iter().flat_map(|s| s.entries().iter()).map(|&m| i64::from(m) * i64::from(m - 1) / 2).sum()
}

fn oracle_chi(e: i64, a: i64, b: i64, config: &[MultiplicitySequence]) -> i64 {
    7 - 2 * (a + b) - b * e + config.iter().map(MultiplicitySequence::m_number).sum::<i64>()
}

fn show(x: &Expected) -> String {
    format!("{} {} {}", x.0, x.1, cusp::format_config(&x.2))
}

/// Ordered `[n1,n2,n3,n4]` with the given sum.
fn compositions(total: u32) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for n1 in 0..=total {
        for n2 in 0..=total - n1 {
            for n3 in 0..=total - n1 - n2 {
                out.push([n1, n2, n3, total - n1 - n2 - n3]);
            }
        }
    }
    out
}

struct Instance {
    label: String,
    expected: Expected,
    /// At least one block in the leading run.
    nondegenerate: bool,
    table_chi: i64,
}

fn table_instances(max_e: u32, max_k: u32) -> Vec<Instance> {
    let mut out = Vec::new();
    for e in 0..=max_e {
        for k in 0..=max_k {
            if (e, k) != (0, 0) {
                out.push(Instance {
                    label: format!("row1 e={e} k={k}"),
                    expected: expected_row1(e, k),
                    nondegenerate: k + e >= 2,
                    table_chi: 1 - i64::from(k) - i64::from(e),
                });
            }
        }
    }
    for h in 0..=1 {
        for k in 0..=max_k {
            if (h, k) != (0, 0) {
                let nondegenerate = 2 * k + h >= 2;
                out.push(Instance {
                    label: format!("row2 h={h} k={k}"),
                    expected: expected_row2(h, k),
                    nondegenerate,
                    table_chi: -1,
                });
                out.push(Instance {
                    label: format!("row3 h={h} k={k}"),
                    expected: expected_row3(h, k),
                    nondegenerate,
                    table_chi: 0,
                });
            }
            for n in compositions(2 * k + h) {
                out.push(Instance {
                    label: format!("row4 h={h} k={k} n={n:?}"),
                    expected: expected_row4(h, k, n),
                    nondegenerate: k >= 2,
                    table_chi: -1,
                });
            }
        }
    }
    out.push(Instance {
        label: String::from("row5"),
        expected: (SurfaceId(2), DivisorClass::new(0, 3), parse_config("[2],[2],[2],[2]").unwrap()),
        nondegenerate: true,
        table_chi: -1,
    });
    out
}

fn spec_of(x: &Expected) -> CurveSpec {
    CurveSpec::new(x.0, x.1, x.2.clone()).expect("table classes are curve classes")
}

fn lattice() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut pairs = 0;
    for e in 0..=50u32 {
        let s = SurfaceId(e);
        let gram = [[0, 1], [1, i64::from(e)]];
        let oracle = |d1: DivisorClass, d2: DivisorClass| {
            let (u, v) = ([d1.a, d1.b], [d2.a, d2.b]);
            (0..2).map(|i| (0..2).map(|j| u[i] * gram[i][j] * v[j]).sum::<i64>()).sum::<i64>()
        };
        let k = s.canonical();
        ensure!(exact(s.self_intersection(k), 8) && exact(oracle(k, k), 8), "K^2 = {} on F{e}", s.self_intersection(k));
        for _ in 0..200 {
            let mut class = || DivisorClass::new(rng.gen_range(-30..=30), rng.gen_range(-30..=30));
            let (d1, d2, d3) = (class(), class(), class());
            let c: i64 = rng.gen_range(-9..=9);
            let combo = DivisorClass::new(d1.a + c * d2.a, d1.b + c * d2.b);
            ensure!(s.intersect(d1, d2) == s.intersect(d2, d1), "asymmetric on F{e}: {d1} {d2}");
            ensure!(s.intersect(d1, d2) == oracle(d1, d2), "pairing differs from the Gram matrix on F{e}");
            ensure!(
                s.intersect(combo, d3) == s.intersect(d1, d3) + c * s.intersect(d2, d3),
                "not linear on F{e}: {d1} + {c} {d2} against {d3}"
            );
            pairs += 1;
        }
    }
    Ok(format!("K^2 = 8 on F0..F50; {pairs} random triples bilinear and symmetric"))
}

fn genus() -> Outcome {
    let instances = table_instances(GRID_E, GRID_K);
    let mut boundary = 0;
    for inst in &instances {
        let (s, c, config) = &inst.expected;
        let g = oracle_p_a(s.e(), c.a, c.b) - oracle_delta(config);
        ensure!(g == 0, "{}: {} has geometric genus {g}", inst.label, show(&inst.expected));
        let spec = spec_of(&inst.expected);
        ensure!(spec.genus() == 0, "{}: library genus {}", inst.label, spec.genus());
        boundary += usize::from(!inst.nondegenerate);
    }
    Ok(format!("{} instances rational, {boundary} of them boundary", instances.len()))
}

fn chi_table() -> Outcome {
    let instances = table_instances(GRID_E, GRID_K);
    let mut checked = 0;
    let mut deviations: BTreeMap<String, i64> = BTreeMap::new();
    for inst in &instances {
        let chi = spec_of(&inst.expected).chi_log();
        let is_row4 = inst.label.starts_with("row4");
        if inst.nondegenerate {
            ensure!(exact(chi, inst.table_chi), "{}: chi {chi}, table {}", inst.label, inst.table_chi);
            checked += 1;
        } else if !is_row4 && chi != inst.table_chi {
            deviations.insert(show(&inst.expected), chi);
        }
    }
    let documented: BTreeMap<String, i64> =
        [("F0 (3,4) [2_3],[2],[2],[2]", -1), ("F1 (0,5) [2_3],[2],[2],[2]", -2), ("F1 (1,4) [2_3],[2],[2],[2]", -1)]
            .into_iter()
            .map(|(k, v)| (k.to_owned(), v))
            .collect();
    ensure!(deviations == documented, "boundary deviations {deviations:?}, documented {documented:?}");
    let listed: Vec<String> = deviations.iter().map(|(k, v)| format!("{k} -> {v}")).collect();
    Ok(format!("{checked} instances match; boundary deviations: {}", listed.join("; ")))
}

fn generated_curves() -> Vec<(String, Generated)> {
    let mut out = Vec::new();
    for e in 0..=GRID_E {
        for k in 0..=GRID_K {
            if let Ok(g) = series_row1(e, k) {
                out.push((format!("row1 e={e} k={k}"), g));
            }
        }
    }
    for h in 0..=1 {
        for k in 0..=GRID_K {
            if let Ok(g) = series_row2(h, k) {
                out.push((format!("row2 h={h} k={k}"), g));
            }
            if let Ok(g) = series_row3(h, k) {
                out.push((format!("row3 h={h} k={k}"), g));
            }
        }
        for k in 0..=3 {
            for n in compositions(2 * k + h) {
                out.push((format!("row4 h={h} k={k} n={n:?}"), series_row4(h, k, n).expect("row 4 generator")));
            }
        }
    }
    out.push((String::from("f2"), curve_f2().expect("f2 generator")));
    for kind in [SingleBlowup::OffCurve, SingleBlowup::SmoothPoint, SingleBlowup::Cusp] {
        out.push((format!("{kind:?}"), single_blowup(kind).expect("single blowup")));
    }
    out
}

fn three_paths(spec: &CurveSpec) -> Result<(), String> {
    let res = spec
        .resolution_report()
        .map_err(|e| format!("{} {} {}: {e}", spec.surface, spec.cls, cusp::format_config(&spec.config)))?;
    let via_resolution = 6 - res.r - res.d_sq;
    let via_sheaves = res.chi_theta_v - res.chi_normal_sum;
    let via_formula = oracle_chi(spec.surface.e(), spec.cls.a, spec.cls.b, &spec.config);
    ensure!(
        via_resolution == via_sheaves && via_sheaves == via_formula && via_formula == spec.chi_log(),
        "{} {} {}: {via_resolution} / {via_sheaves} / {via_formula}",
        spec.surface,
        spec.cls,
        cusp::format_config(&spec.config)
    );
    Ok(())
}

fn random_feasible_specs(count: usize) -> Vec<CurveSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 4);
    let mut pools: BTreeMap<i64, Vec<MultiplicitySequence>> = BTreeMap::new();
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for _ in 0..400_000 {
        if out.len() == count {
            break;
        }
        let (e, a, b) = (rng.gen_range(0..=5u32), rng.gen_range(0..=10i64), rng.gen_range(1..=6i64));
        let p_a = oracle_p_a(i64::from(e), a, b);
        if !(1..=14).contains(&p_a) {
            continue;
        }
        let pool = pools.entry(p_a).or_insert_with(|| cusp::enumerate_valid(p_a).expect("positive budget"));
        let mut config = Vec::new();
        let mut left = p_a;
        while left > 0 {
            let fits: Vec<&MultiplicitySequence> =
                pool.iter().filter(|s| s.delta() <= left && i64::from(s.multiplicity()) <= b).collect();
            let pick = fits.choose(&mut rng).expect("[2] always fits");
            left -= pick.delta();
            config.push((*pick).clone());
        }
        let kodaira = rng.gen_bool(0.5);
        let spec = CurveSpec::new(SurfaceId(e), DivisorClass::new(a, b), config).unwrap().with_kodaira_nonneg(kodaira);
        if spec.full_report().all_pass() && seen.insert(spec.clone()) {
            out.push(spec);
        }
    }
    out
}

fn chi_consistency() -> Outcome {
    let generated = generated_curves();
    for (label, g) in &generated {
        let spec = g.state.spec().ok_or_else(|| format!("{label}: not on a Hirzebruch surface"))?;
        three_paths(&spec).map_err(|e| format!("{label}: {e}"))?;
    }
    let random = random_feasible_specs(RANDOM_SPECS);
    ensure!(random.len() == RANDOM_SPECS, "only {} random feasible specs found", random.len());
    for spec in &random {
        three_paths(spec)?;
    }
    Ok(format!(
        "{} generated curves and {} random feasible specs agree on all three paths",
        generated.len(),
        random.len()
    ))
}

fn m_numbers() -> Outcome {
    let mut cases = vec![(2, 3, "[2]"), (2, 7, "[2_3]"), (3, 5, "[3,2]")];
    let family: Vec<String> = (1..=10).map(|n| format!("[2_{n}]")).collect();
    for (n, text) in family.iter().enumerate() {
        cases.push((2, 2 * (n as u32 + 1) + 1, text.as_str()));
    }
    for (p, q, text) in &cases {
        let res = embedded_resolution(&binomial_germ(*p, *q)).map_err(|e| format!("y^{p} = x^{q}: {e}"))?;
        let seq = parse_config(text).unwrap().remove(0);
        let (eta, omega) = (res.eta(), res.omega());
        ensure!(
            res.sequence().as_ref() == Ok(&seq),
            "y^{p} = x^{q}: resolved {:?}, expected {seq}",
            res.multiplicities
        );
        ensure!(
            exact(eta + omega - 1, seq.m_number()),
            "y^{p} = x^{q}: eta + omega - 1 = {}, M = {}",
            eta + omega - 1,
            seq.m_number()
        );
    }
    Ok(format!("{} germs resolved; eta + omega - 1 matches M for each", cases.len()))
}

fn hurwitz() -> Outcome {
    let ramification =
        |config: &[MultiplicitySequence]| config.iter().map(|s| i64::from(s.multiplicity()) - 1).sum::<i64>();
    let mut count = 0;
    for e in 0..=GRID_E {
        for k in 0..=GRID_K {
            if k + e < 2 {
                continue;
            }
            let x = expected_row1(e, k);
            let (used, b) = (ramification(&x.2), x.1.b);
            let budget = if e == 0 { 2 * x.1.a.min(b) - 2 } else { 2 * b - 2 };
            ensure!(
                used == 6 && budget == 6 && spec_of(&x).ramification_budget() == 6,
                "{}: {used} of {budget}",
                show(&x)
            );
            count += 1;
        }
    }
    for k in 2..=GRID_K {
        for n in compositions(2 * k).into_iter().filter(|n| n.iter().all(|&v| v > 0)) {
            let x = expected_row4(0, k, n);
            let used = ramification(&x.2);
            let budget = 2 * x.1.a.min(x.1.b) - 2;
            ensure!(
                used == 4 && budget == 4 && spec_of(&x).ramification_budget() == 4,
                "{}: {used} of {budget}",
                show(&x)
            );
            count += 1;
        }
    }
    Ok(format!("{count} instances hit the budget exactly"))
}

fn bound_modes() -> Outcome {
    let mut grid = 0;
    for a in 1..=20 {
        for b in 1..=20 {
            for m in 1..=b {
                let lb = LowerBound::evaluate(SurfaceId(0), DivisorClass::new(a, b), m);
                ensure!(lb.closed_pass == Some(lb.quadratic_pass), "F0 ({a},{b}) m={m}: verdicts differ");
                ensure!(!lb.disagreement(), "F0 ({a},{b}) m={m}: thresholds differ");
                grid += 1;
            }
        }
    }
    let mut flagged = Vec::new();
    for a in 6..=20 {
        let lb = LowerBound::evaluate(SurfaceId(1), DivisorClass::new(a, 4), 2);
        let t = lb.closed_threshold().ok_or_else(|| format!("F1 ({a},4): no closed threshold"))?;
        ensure!(t.cmp_int(2) != std::cmp::Ordering::Less, "F1 ({a},4): closed threshold {t} < 2");
        ensure!(lb.disagreement(), "F1 ({a},4): disagreement flag not raised");
        flagged.push(a);
    }
    Ok(format!("{grid} F0 cases agree; F1 (a,4) for a in 6..=20: closed threshold >= 2 and flagged"))
}

struct Shipped {
    file: &'static str,
    text: &'static str,
    expected: fn() -> Expected,
}

macro_rules! shipped {
    ($file:literal, $expected:expr) => {
        Shipped { file: $file, text: include_str!(concat!("../scripts/", $file)), expected: || $expected }
    };
}

fn blowup_expected(a: i64, b: i64, config: &str) -> Expected {
    (SurfaceId(1), DivisorClass::new(a, b), parse_config(config).unwrap())
}

fn shipped_scripts() -> Vec<Shipped> {
    vec![
        shipped!("row1_e1_k2.txt", expected_row1(1, 2)),
        shipped!("row1_e3_k1.txt", expected_row1(3, 1)),
        shipped!("row2_h0_k2.txt", expected_row2(0, 2)),
        shipped!("row2_h1_k1.txt", expected_row2(1, 1)),
        shipped!("row3_h0_k1.txt", expected_row3(0, 1)),
        shipped!("row3_h1_k2.txt", expected_row3(1, 2)),
        shipped!("row4_h0_k2.txt", expected_row4(0, 2, [1, 1, 1, 1])),
        shipped!("row4_h1_k3.txt", expected_row4(1, 3, [3, 2, 1, 1])),
        shipped!(
            "f2_four_ordinary.txt",
            (SurfaceId(2), DivisorClass::new(0, 3), parse_config("[2],[2],[2],[2]").unwrap())
        ),
        shipped!("single_blowup_c1.txt", blowup_expected(0, 5, "[2_3],[2],[2],[2]")),
        shipped!("single_blowup_c2.txt", blowup_expected(1, 4, "[2_3],[2],[2],[2]")),
        shipped!("single_blowup_c3.txt", blowup_expected(2, 3, "[2_2],[2],[2],[2]")),
    ]
}

fn legal_pool() -> Vec<CurveState> {
    let mut pool = Vec::new();
    for k in 0..=4 {
        for e in 1..=4 {
            pool.push(series_row1(e, k).unwrap().state);
        }
        pool.push(series_row1(0, k + 1).unwrap().state);
        pool.push(series_row2(1, k).unwrap().state);
        pool.push(series_row3(0, k + 1).unwrap().state);
        pool.push(series_row4(0, 2 + k, [1, 1 + k, 1 + k, 1]).unwrap().state);
        pool.push(series_row4(1, 2 + k, [2 + k, 1, k, 2]).unwrap().state);
    }
    pool.push(curve_f2().unwrap().state);
    pool
}

/// `elm` at a chosen point of a marked fiber, then back at the other point.
fn elm_round_trip(state: &CurveState, rng: &mut ChaCha8Rng) -> Option<Result<(), String>> {
    let (surface, cls) = (state.surface_id()?, state.class()?);
    let fiber = state.marks.choose(rng)?.clone();
    let names: Vec<String> = fiber.pattern.iter().map(|(p, _)| p.clone()).chain([String::from("fresh")]).collect();
    let name = names.choose(rng)?;
    let m_x = state.multiplicity(name);
    let residual: Vec<_> = fiber.pattern.iter().filter(|(p, c)| p != name || *c > m_x).collect();
    if residual.len() != 1 {
        return None;
    }
    let x = PointSpec::new(name);
    let x = match (surface.0, state.is_curve_point(name) && state.special.is_some()) {
        (0, _) | (_, true) => x,
        _ if rng.gen_bool(0.5) => x.on_e(),
        _ => x.off_e(),
    };
    let (moved, step) = state.elm(&fiber.id, &x).ok()?;
    let target = &residual[0].0;
    let back_point = match moved.surface_id()?.0 {
        0 => PointSpec::new(target),
        e if e > surface.0 => PointSpec::new(target).off_e(),
        _ => PointSpec::new(target).on_e(),
    };
    let check = || {
        let (back, back_step) =
            moved.elm(&fiber.id, &back_point).map_err(|e| format!("{}: inverse elm failed: {e}", state.summary()))?;
        ensure!(
            back.surface_id() == Some(surface) && back.class() == Some(cls) && back.config() == state.config(),
            "{} via {} came back as {}",
            state.summary(),
            moved.summary(),
            back.summary()
        );
        ensure!(
            back.multiplicity(name) == m_x && back_step.n == i64::from(step.m_x),
            "{}: multiplicities not restored",
            state.summary()
        );
        Ok(())
    };
    Some(check())
}

fn plane_round_trip(plane: &CurveState, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let names: Vec<&str> = plane.points.iter().map(|p: &CurvePoint| p.id.as_str()).chain(["off"]).collect();
    let point = names.choose(rng).expect("non-empty");
    let (s, step) = plane.from_plane(&PointSpec::new(point)).map_err(|e| format!("from_plane at {point}: {e}"))?;
    ensure!(
        s.self_intersection() == plane.self_intersection() - i64::from(step.m_x).pow(2),
        "from_plane at {point}: self-intersection off"
    );
    let (back, _) = s.to_plane().map_err(|e| format!("to_plane after {point}: {e}"))?;
    ensure!(
        back.degree() == plane.degree() && back.config() == plane.config(),
        "plane round trip at {point} gave {}",
        back.summary()
    );
    Ok(())
}

fn replays() -> Outcome {
    let scripts = shipped_scripts();
    for s in &scripts {
        let script = parse_script(s.text).map_err(|e| format!("{}: {e}", s.file))?;
        let (state, _) = run_script(None, &script).map_err(|e| format!("{}: {e}", s.file))?;
        let expected = (s.expected)();
        let found = (state.surface_id(), state.class(), state.config());
        ensure!(
            found == (Some(expected.0), Some(expected.1), expected.2.clone()),
            "{}: ended at {}",
            s.file,
            state.summary()
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let planes = [CurveState::quintic(), CurveState::quartic()];
    for _ in 0..ROUND_TRIPS {
        plane_round_trip(planes.choose(&mut rng).unwrap(), &mut rng)?;
    }
    let pool = legal_pool();
    let (mut done, mut attempts) = (0, 0);
    while done < ROUND_TRIPS && attempts < 200 * ROUND_TRIPS {
        attempts += 1;
        if let Some(r) = elm_round_trip(pool.choose(&mut rng).unwrap(), &mut rng) {
            r?;
            done += 1;
        }
    }
    ensure!(done == ROUND_TRIPS, "only {done} legal elm moves in {attempts} attempts");
    Ok(format!("{} shipped scripts replay; {ROUND_TRIPS} plane and {ROUND_TRIPS} elm round trips", scripts.len()))
}

fn polynomial_fixtures() -> Outcome {
    let [f1, f2, _] = fixtures::quintic_chain().map_err(|e| e.to_string())?;
    for (name, t, text) in [("F1", &f1, F1_QUINTIC), ("F2", &f2, F2_QUINTIC)] {
        let printed = load(text).poly;
        ensure!(
            t.curve.poly == printed || t.curve.poly == -&printed,
            "{name} transform differs from the printed polynomial"
        );
    }
    let origin = ChartPoint::affine(Default::default(), Default::default());
    let rows = [
        ("F1", load(F1_QUINTIC), Chart::surface(SurfaceId(1), 1, 1), 2, 3, "[2_3]"),
        ("F2", load(F2_QUINTIC), Chart::surface(SurfaceId(2), 1, 1), 4, 9, "[4,2_3]"),
    ];
    for (name, f, chart, m, delta, seq) in &rows {
        let found = multiplicity_at(f, chart, &origin).map_err(|e| format!("{name}: {e}"))?;
        ensure!(found == *m, "{name}: multiplicity {found}, expected {m}");
        let s = local_resolution(f, chart, &origin).map_err(|e| format!("{name}: {e}"))?;
        ensure!(s.to_string() == *seq && s.delta() == *delta, "{name}: resolved {s} with delta {}", s.delta());
        let audit = delta_audit(f, &[(chart.clone(), origin.clone())]).map_err(|e| format!("{name}: {e}"))?;
        ensure!(exact(audit.residual, 3), "{name}: residual {}", audit.residual);
    }
    let plain = local_resolution(&rows[0].1, &rows[0].2, &origin).unwrap();
    ensure!(plain.full_sequence().iter().filter(|&&m| m > 1).eq([2, 2, 2].iter()), "F1 cusp sequence {plain}");
    Ok(String::from("F1 and F2 transforms match; (2, delta 3) and (4, delta 9); [2,2,2]; residuals 3 and 3"))
}

fn real_quartic() -> Outcome {
    let (quartic, tangent) = (load(REAL_QUARTIC), load(REAL_QUARTIC_TANGENT));
    let mut seen = Vec::new();
    for (point, k) in quartic_tangent_points() {
        let found = contact_order(&quartic, &tangent, &Chart::plane(2), &point).map_err(|e| e.to_string())?;
        ensure!(found == k, "contact {found} at {point}, expected {k}");
        seen.push(format!("{k} at {point}"));
    }
    Ok(seen.join("; "))
}

/// Every valid sequence with delta at most `budget`, by listing all entry
/// strings and filtering.
fn brute_sequences(budget: i64) -> Vec<MultiplicitySequence> {
    fn grow(prefix: &mut Vec<u32>, left: i64, out: &mut Vec<MultiplicitySequence>) {
        if !prefix.is_empty() && cusp::validate(prefix).is_ok() {
            out.push(MultiplicitySequence::new(prefix.clone()).unwrap());
        }
        for m in 2u32.. {
            let d = i64::from(m * (m - 1) / 2);
            if d > left {
                break;
            }
            prefix.push(m);
            grow(prefix, left - d, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), budget, &mut out);
    out.sort();
    out
}

/// Multisets of `pool` with total delta exactly `target`.
fn brute_configs(pool: &[MultiplicitySequence], target: i64) -> Vec<Vec<MultiplicitySequence>> {
    fn go(
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
                go(pool, i, left - pool[i].delta(), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(pool, 0, target, &mut Vec::new(), &mut out);
    out
}

fn enumerator() -> Outcome {
    let pool = brute_sequences(8);
    let limits = EnumerationLimits { min_cusps: 1, ..EnumerationLimits::default() };
    let mut classes = 0;
    let mut configs = 0;
    for e in 0..=3u32 {
        for a in 0..=8 {
            for b in 1..=5 {
                let p_a = oracle_p_a(i64::from(e), a, b);
                if !(0..=8).contains(&p_a) {
                    continue;
                }
                let (s, c) = (SurfaceId(e), DivisorClass::new(a, b));
                let oracle: BTreeSet<CurveSpec> = brute_configs(&pool, p_a)
                    .into_iter()
                    .filter(|cfg| !cfg.is_empty())
                    .map(|cfg| CurveSpec::new(s, c, cfg).unwrap())
                    .filter(|spec| spec.full_report().all_pass())
                    .collect();
                let found: BTreeSet<CurveSpec> =
                    enumerate_configs(s, c, limits).map_err(|err| format!("{s} {c}: {err}"))?.into_iter().collect();
                ensure!(found == oracle, "{s} {c}: enumerator {} configs, oracle {}", found.len(), oracle.len());
                classes += 1;
                configs += found.len();
            }
        }
    }
    let mut instances: Vec<Expected> = table_instances(3, 7)
        .into_iter()
        .map(|i| i.expected)
        .filter(|x| x.1.a <= 8 && x.1.b <= 5 && !x.2.is_empty())
        .collect();
    instances.extend([
        blowup_expected(0, 5, "[2_3],[2],[2],[2]"),
        blowup_expected(1, 4, "[2_3],[2],[2],[2]"),
        blowup_expected(2, 3, "[2_2],[2],[2],[2]"),
    ]);
    let mut by_class: BTreeMap<(SurfaceId, DivisorClass), Vec<Vec<MultiplicitySequence>>> = BTreeMap::new();
    for x in instances {
        let spec = spec_of(&x);
        by_class.entry((spec.surface, spec.cls)).or_default().push(spec.config);
    }
    let mut present = 0;
    for ((s, c), wanted) in &by_class {
        let found: BTreeSet<Vec<MultiplicitySequence>> = enumerate_configs(*s, *c, limits)
            .map_err(|err| format!("{s} {c}: {err}"))?
            .into_iter()
            .map(|x| x.config)
            .collect();
        for w in wanted {
            ensure!(found.contains(w), "{s} {c} {} missing from the enumeration", cusp::format_config(w));
            present += 1;
        }
    }
    Ok(format!(
        "{classes} classes with p_a <= 8 match the oracle ({configs} configs); {present} table instances present"
    ))
}

struct Criterion {
    id: u8,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

const CRITERIA: [Criterion; 11] = [
    Criterion { id: 1, name: "lattice identities", budget: secs(1), run: lattice },
    Criterion { id: 2, name: "genus of the table families", budget: secs(5), run: genus },
    Criterion { id: 3, name: "chi table", budget: secs(5), run: chi_table },
    Criterion { id: 4, name: "three-path chi", budget: secs(10), run: chi_consistency },
    Criterion { id: 5, name: "M-number oracle", budget: secs(5), run: m_numbers },
    Criterion { id: 6, name: "Hurwitz tightness", budget: secs(1), run: hurwitz },
    Criterion { id: 7, name: "bound dual mode", budget: secs(2), run: bound_modes },
    Criterion { id: 8, name: "construction replays", budget: secs(10), run: replays },
    Criterion { id: 9, name: "polynomial fixtures", budget: secs(5), run: polynomial_fixtures },
    Criterion { id: 10, name: "real quartic contact", budget: secs(1), run: real_quartic },
    Criterion { id: 11, name: "enumerator vs oracle", budget: secs(60), run: enumerator },
];

fn main() {
    let mut failed = 0;
    for c in &CRITERIA {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (mark, detail) = match outcome {
            Ok(_) if elapsed > c.budget => {
                ("FAIL", format!("over budget: {:.2}s > {}s", elapsed.as_secs_f64(), c.budget.as_secs()))
            }
            Ok(w) => ("PASS", w),
            Err(e) => ("FAIL", e),
        };
        failed += usize::from(mark == "FAIL");
        println!(
            "{mark} {:>2} {:<28} {:>6.2}s/{:>2}s  {detail}",
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
    }
    println!("{} of {} criteria pass", CRITERIA.len() - failed, CRITERIA.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
