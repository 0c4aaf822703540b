//! Shipped polynomial data and the map chains that produce it.

use hirzebruch_core::polyengine::{
    apply_map, contact_order, delta_audit, local_resolution, multiplicity_at, ratio, BigradedPolynomial, Chart,
    ChartPoint, Grading, PolyError, SubstitutionMap, Transformed,
};
use hirzebruch_core::SurfaceId;

use crate::polyfile::parse_poly_file;

pub const PLANE_QUINTIC: &str = include_str!("../fixtures/plane_quintic.txt");
pub const F1_QUINTIC: &str = include_str!("../fixtures/f1_quintic_transform.txt");
pub const F2_QUINTIC: &str = include_str!("../fixtures/f2_quintic_transform.txt");
pub const F0_QUINTIC: &str = include_str!("../fixtures/f0_quintic_transform.txt");
pub const REAL_QUARTIC: &str = include_str!("../fixtures/real_quartic.txt");
pub const REAL_QUARTIC_TANGENT: &str = include_str!("../fixtures/real_quartic_tangent.txt");

/// Name, file contents, and the rational cusps known on the curve.
pub struct Fixture {
    pub name: &'static str,
    pub text: &'static str,
    pub cusps: fn() -> Vec<(Chart, ChartPoint)>,
}

fn origin() -> ChartPoint {
    ChartPoint::affine(ratio(0, 1), ratio(0, 1))
}

fn quintic_cusps() -> Vec<(Chart, ChartPoint)> {
    vec![(Chart::plane(2), origin())]
}

fn f1_cusps() -> Vec<(Chart, ChartPoint)> {
    vec![(Chart::surface(SurfaceId(1), 1, 1), origin())]
}

fn f2_cusps() -> Vec<(Chart, ChartPoint)> {
    vec![(Chart::surface(SurfaceId(2), 1, 1), origin())]
}

fn f0_cusps() -> Vec<(Chart, ChartPoint)> {
    vec![(Chart::surface(SurfaceId(0), 1, 0), origin())]
}

fn quartic_cusps() -> Vec<(Chart, ChartPoint)> {
    vec![(Chart::plane(2), origin()), (Chart::plane(0), origin()), (Chart::plane(1), origin())]
}

fn no_cusps() -> Vec<(Chart, ChartPoint)> {
    Vec::new()
}

pub const FIXTURES: [Fixture; 6] = [
    Fixture { name: "plane-quintic", text: PLANE_QUINTIC, cusps: quintic_cusps },
    Fixture { name: "f1-quintic", text: F1_QUINTIC, cusps: f1_cusps },
    Fixture { name: "f2-quintic", text: F2_QUINTIC, cusps: f2_cusps },
    Fixture { name: "f0-quintic", text: F0_QUINTIC, cusps: f0_cusps },
    Fixture { name: "real-quartic", text: REAL_QUARTIC, cusps: quartic_cusps },
    Fixture { name: "real-quartic-tangent", text: REAL_QUARTIC_TANGENT, cusps: no_cusps },
];

pub fn fixture(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}

pub fn load(text: &str) -> BigradedPolynomial {
    parse_poly_file(text, None).expect("shipped fixture parses")
}

/// `y0 := y0 - x1*y1` on `F_1`, moving the cusp at `(0:1;0:1)` to `(0:1;1:1)`.
pub fn f1_shift() -> SubstitutionMap {
    let g = Grading::Surface(SurfaceId(1));
    SubstitutionMap::parse("shift", g, g, &["x0", "x1", "y0 - x1*y1", "y1"]).expect("static map")
}

/// The quintic carried to `F_1`, `F_2` and `F_0` along the maps behind the shipped files.
pub fn quintic_chain() -> Result<[Transformed; 3], PolyError> {
    let plane = load(PLANE_QUINTIC);
    let f1 = apply_map(&plane, &SubstitutionMap::plane_to_f1())?;
    let f2 = apply_map(&f1.curve, &SubstitutionMap::elm_up(1))?;
    let down = f1_shift().then(&SubstitutionMap::elm_down(1)?)?;
    let f0 = apply_map(&f1.curve, &down)?;
    Ok([f1, f2, f0])
}

/// The coordinate change taking the tangent line to `x = 0` and the two
/// transversal points to `(0:0:1)` and `(0:1:0)`.
pub fn real_quartic_change() -> SubstitutionMap {
    let a = [
        [ratio(-27, 512), ratio(-125, 512), ratio(1, 1)],
        [ratio(16, 25), ratio(-16, 1), ratio(0, 1)],
        [ratio(4, 1), ratio(-4, 9), ratio(0, 1)],
    ];
    SubstitutionMap::plane_linear("real-change", &a).expect("invertible")
}

/// The real quartic carried to a `(3,3)` curve on `F_0`.
pub fn real_quadric_curve() -> Result<Transformed, PolyError> {
    let map = real_quartic_change().then(&SubstitutionMap::plane_to_quadric())?;
    apply_map(&load(REAL_QUARTIC), &map)
}

/// Rational cusps of the `(3,3)` curve: images of the three plane cusps and
/// of the contracted tangent line.
pub fn real_quadric_cusps() -> Vec<(Chart, ChartPoint)> {
    let s = SurfaceId(0);
    vec![
        (Chart::surface(s, 0, 0), ChartPoint::affine(ratio(-8192, 675), ratio(-27, 2048))),
        (Chart::surface(s, 0, 0), ChartPoint::affine(ratio(8192, 125), ratio(1125, 2048))),
        (Chart::surface(s, 0, 1), origin()),
        (Chart::surface(s, 1, 0), origin()),
    ]
}

/// Points where the tangent line meets the real quartic, in the chart `z = 1`,
/// with the expected contact orders.
pub fn quartic_tangent_points() -> Vec<(ChartPoint, u32)> {
    vec![
        (ChartPoint::affine(ratio(64, 9), ratio(64, 25)), 2),
        (ChartPoint::affine(ratio(16, 1), ratio(16, 25)), 1),
        (ChartPoint::affine(ratio(4, 9), ratio(4, 1)), 1),
    ]
}

/// One line of `poly verify`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureCheck {
    pub name: String,
    pub expected: String,
    pub found: String,
}

impl FixtureCheck {
    fn new(name: impl Into<String>, expected: impl ToString, found: impl ToString) -> Self {
        FixtureCheck { name: name.into(), expected: expected.to_string(), found: found.to_string() }
    }

    pub fn passed(&self) -> bool {
        self.expected == self.found
    }
}

fn shown<T: ToString>(r: Result<T, PolyError>) -> String {
    r.map_or_else(|e| format!("error: {e}"), |v| v.to_string())
}

/// Re-derives the shipped transforms and checks every recorded singularity.
pub fn verify_checks() -> Vec<FixtureCheck> {
    let mut out = Vec::new();
    match quintic_chain() {
        Ok(chain) => {
            let files = [
                ("f1-quintic", F1_QUINTIC, "(1,4)"),
                ("f2-quintic", F2_QUINTIC, "(1,4)"),
                ("f0-quintic", F0_QUINTIC, "(5,4)"),
            ];
            for (t, (name, text, degree)) in chain.iter().zip(files) {
                out.push(FixtureCheck::new(format!("{name} matches transform"), true, t.curve.same_curve(&load(text))));
                out.push(FixtureCheck::new(format!("{name} bidegree"), degree, shown(t.curve.bidegree())));
            }
        }
        Err(e) => out.push(FixtureCheck::new("quintic transforms", "ok", format!("error: {e}"))),
    }
    let expected: [(&str, u32, &str, i64); 5] = [
        ("plane-quintic", 2, "[2_3]", 3),
        ("f1-quintic", 2, "[2_3]", 3),
        ("f2-quintic", 4, "[4,2_3]", 3),
        ("f0-quintic", 4, "[4,2_3]", 3),
        ("real-quartic", 2, "[2]", 0),
    ];
    for (name, m, seq, residual) in expected {
        let f = fixture(name).expect("listed fixture");
        let p = load(f.text);
        let cusps = (f.cusps)();
        for (chart, point) in &cusps {
            let at = format!("{name} {chart} {point}");
            out.push(FixtureCheck::new(format!("{at} multiplicity"), m, shown(multiplicity_at(&p, chart, point))));
            out.push(FixtureCheck::new(format!("{at} sequence"), seq, shown(local_resolution(&p, chart, point))));
        }
        out.push(FixtureCheck::new(
            format!("{name} delta residual"),
            residual,
            shown(delta_audit(&p, &cusps).map(|a| a.residual)),
        ));
    }
    let quartic = load(REAL_QUARTIC);
    let tangent = load(REAL_QUARTIC_TANGENT);
    for (point, k) in quartic_tangent_points() {
        out.push(FixtureCheck::new(
            format!("tangent contact at {point}"),
            k,
            shown(contact_order(&quartic, &tangent, &Chart::plane(2), &point)),
        ));
    }
    match real_quadric_curve() {
        Ok(t) => {
            out.push(FixtureCheck::new("real quadric bidegree", "(3,3)", shown(t.curve.bidegree())));
            let cusps = real_quadric_cusps();
            for (chart, point) in &cusps {
                out.push(FixtureCheck::new(
                    format!("real quadric {chart} {point}"),
                    "[2]",
                    shown(local_resolution(&t.curve, chart, point)),
                ));
            }
            out.push(FixtureCheck::new(
                "real quadric delta residual",
                0,
                shown(delta_audit(&t.curve, &cusps).map(|a| a.residual)),
            ));
        }
        Err(e) => out.push(FixtureCheck::new("real quadric", "ok", format!("error: {e}"))),
    }
    out
}
