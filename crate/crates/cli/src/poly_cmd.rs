use std::io::Read;

use hirzebruch_core::polyengine::{
    apply_map, contact_order, delta_audit, embedded_resolution, local_equation, multiplicity_at, BigradedPolynomial,
    Chart, ChartPoint, Grading, PolyError, SubstitutionMap,
};

use crate::args::{Locus, PolyCommand, Source};
use crate::commands::{read_source, InputError, Output, Status};
use crate::fixtures::{self, f1_shift, real_quartic_change, FIXTURES};
use crate::polyfile::{parse_grading, parse_poly_file};
use crate::report::{horizontal_table, render_many, render_one, vertical_table, Format, Record};

pub const MAP_NAMES: [&str; 7] =
    ["plane-to-f1", "plane-to-quadric", "quadric-to-plane", "elm-up", "elm-down", "f1-shift", "real-change"];

struct Loaded {
    curve: BigradedPolynomial,
    cusps: Vec<(Chart, ChartPoint)>,
}

fn load(src: &str, grading: Option<&str>, stdin: &mut dyn Read) -> Result<Loaded, InputError> {
    let default = grading.map(parse_grading).transpose().map_err(|e| InputError::flag("grading", e))?;
    let (text, cusps) = if let Some(name) = src.strip_prefix("fixture:") {
        let f = fixtures::fixture(name).ok_or_else(|| {
            let known: Vec<&str> = FIXTURES.iter().map(|f| f.name).collect();
            InputError(format!("unknown fixture {name:?}; known: {}", known.join(", ")))
        })?;
        (f.text.to_owned(), (f.cusps)())
    } else {
        let path = std::path::Path::new(src);
        (read_source(Some(path), stdin)?, Vec::new())
    };
    let curve = parse_poly_file(&text, default).map_err(|e| InputError(format!("{src}: {e}")))?;
    Ok(Loaded { curve, cusps })
}

fn load_source(s: &Source, stdin: &mut dyn Read) -> Result<Loaded, InputError> {
    load(&s.source, s.grading.as_deref(), stdin)
}

fn poly_err(e: PolyError) -> InputError {
    InputError(e.to_string())
}

fn locus(grading: Grading, at: &Locus) -> Result<(Chart, ChartPoint), InputError> {
    let chart = Chart::parse(grading, &at.chart).map_err(|e| InputError::flag("chart", e))?;
    let point = ChartPoint::parse(&at.point).map_err(|e| InputError::flag("point", e))?;
    Ok((chart, point))
}

fn named_map(name: &str, source: Grading) -> Result<SubstitutionMap, InputError> {
    let surface_e = || match source {
        Grading::Surface(s) => Ok(s.0),
        Grading::Plane => Err(InputError(format!("map {name} needs a surface polynomial"))),
    };
    Ok(match name {
        "plane-to-f1" => SubstitutionMap::plane_to_f1(),
        "plane-to-quadric" => SubstitutionMap::plane_to_quadric(),
        "quadric-to-plane" => SubstitutionMap::quadric_to_plane(),
        "elm-up" => SubstitutionMap::elm_up(surface_e()?),
        "elm-down" => SubstitutionMap::elm_down(surface_e()?).map_err(poly_err)?,
        "f1-shift" => f1_shift(),
        "real-change" => real_quartic_change(),
        other => {
            return Err(InputError::flag("map", format!("unknown map {other:?}; known: {}", MAP_NAMES.join(", "))))
        }
    })
}

fn degree_text(f: &BigradedPolynomial) -> String {
    f.degree().map_or_else(
        |e| format!("error: {e}"),
        |d| match f.grading {
            Grading::Plane => d.a.to_string(),
            Grading::Surface(_) => d.to_string(),
        },
    )
}

fn describe(f: &BigradedPolynomial) -> Record {
    let mut r =
        Record::new().with("grading", f.grading.to_string()).with("degree", degree_text(f)).with("terms", f.poly.len());
    if let Ok(p_a) = f.arithmetic_genus() {
        r.push("arithmetic_genus", p_a);
    }
    r
}

/// A polynomial file that `parse_poly_file` reads back.
fn as_file(f: &BigradedPolynomial) -> String {
    format!("# grading: {}\n# names: {}\n{f}\n", f.grading, f.grading.names().join(" "))
}

pub fn execute(cmd: &PolyCommand, format: Format, stdin: &mut dyn Read) -> Result<Output, InputError> {
    match cmd {
        PolyCommand::Fixtures => {
            let rows: Vec<Record> = FIXTURES
                .iter()
                .map(|f| {
                    let p = fixtures::load(f.text);
                    describe(&p).with("name", f.name).with("known_cusps", (f.cusps)().len())
                })
                .collect();
            Ok(Output::new(render_many(&rows, format), Status::Pass))
        }
        PolyCommand::Show(src) => {
            let l = load_source(src, stdin)?;
            let text = match format {
                Format::Table => format!("{}\n{}", vertical_table(&describe(&l.curve)), as_file(&l.curve)),
                _ => render_one(&describe(&l.curve).with("polynomial", l.curve.to_string()), format),
            };
            Ok(Output::new(text, Status::Pass))
        }
        PolyCommand::Map { input, maps } => {
            let l = load_source(input, stdin)?;
            let mut curve = l.curve;
            let mut stripped = Vec::new();
            for name in maps {
                let map = named_map(name, curve.grading)?;
                let t = apply_map(&curve, &map).map_err(|e| InputError(format!("{name}: {e}")))?;
                stripped.push(format!("{name}:{:?}", t.stripped));
                curve = t.curve;
            }
            let text = match format {
                Format::Table => as_file(&curve),
                _ => render_one(
                    &describe(&curve).with("stripped", stripped.join(" ")).with("polynomial", curve.to_string()),
                    format,
                ),
            };
            Ok(Output::new(text, Status::Pass))
        }
        PolyCommand::Mult { input, at } => {
            let l = load_source(input, stdin)?;
            let (chart, point) = locus(l.curve.grading, at)?;
            let m = multiplicity_at(&l.curve, &chart, &point).map_err(poly_err)?;
            let r =
                Record::new().with("chart", chart.to_string()).with("point", point.to_string()).with("multiplicity", m);
            Ok(Output::new(render_one(&r, format), Status::Pass))
        }
        PolyCommand::Contact { input, other, at } => {
            let l = load_source(input, stdin)?;
            let g = load(other, input.grading.as_deref(), stdin)?;
            let (chart, point) = locus(l.curve.grading, at)?;
            let k = contact_order(&l.curve, &g.curve, &chart, &point).map_err(poly_err)?;
            let r = Record::new().with("chart", chart.to_string()).with("point", point.to_string()).with("contact", k);
            Ok(Output::new(render_one(&r, format), Status::Pass))
        }
        PolyCommand::Resolve { input, at } => {
            let l = load_source(input, stdin)?;
            let (chart, point) = locus(l.curve.grading, at)?;
            let germ = local_equation(&l.curve, &chart, &point).map_err(poly_err)?;
            let res = embedded_resolution(&germ).map_err(poly_err)?;
            let seq = res.sequence().map_err(poly_err)?;
            let r = Record::new()
                .with("chart", chart.to_string())
                .with("point", point.to_string())
                .with("sequence", seq.to_string())
                .with("delta", res.delta())
                .with("eta", res.eta())
                .with("omega", res.omega())
                .with("M", res.m_number());
            Ok(Output::new(render_one(&r, format), Status::Pass))
        }
        PolyCommand::Audit { input, cusps } => {
            let l = load_source(input, stdin)?;
            let points = if cusps.is_empty() {
                l.cusps
            } else {
                cusps
                    .iter()
                    .map(|c| {
                        let (chart, point) = c
                            .split_once('@')
                            .ok_or_else(|| InputError::flag("cusp", format!("{c:?} is not chart@point")))?;
                        locus(l.curve.grading, &Locus { chart: chart.to_owned(), point: point.to_owned() })
                    })
                    .collect::<Result<_, _>>()?
            };
            let audit = delta_audit(&l.curve, &points).map_err(poly_err)?;
            let rows: Vec<Record> = audit
                .cusps
                .iter()
                .map(|c| {
                    Record::new()
                        .with("chart", c.chart.to_string())
                        .with("point", c.point.to_string())
                        .with("multiplicity", c.multiplicity)
                        .with("sequence", c.sequence.to_string())
                        .with("delta", c.sequence.delta())
                })
                .collect();
            let summary = Record::new()
                .with("arithmetic_genus", audit.arithmetic_genus)
                .with("resolved_delta", audit.resolved_delta)
                .with("residual", audit.residual);
            let text = match format {
                Format::Table => format!("{}\n{}", horizontal_table(&rows), vertical_table(&summary)),
                _ => format!(
                    "{}{}{}",
                    render_many(&rows, format),
                    if format == Format::Kv { "\n\n" } else { "" },
                    render_one(&summary, format)
                ),
            };
            Ok(Output::new(text, Status::Pass))
        }
        PolyCommand::Verify => {
            let checks = fixtures::verify_checks();
            let rows: Vec<Record> = checks
                .iter()
                .map(|c| {
                    Record::new()
                        .with("check", c.name.clone())
                        .with("expected", c.expected.clone())
                        .with("found", c.found.clone())
                        .with("outcome", if c.passed() { "pass" } else { "fail" })
                })
                .collect();
            Ok(Output::new(render_many(&rows, format), Status::from_pass(checks.iter().all(|c| c.passed()))))
        }
    }
}
