use std::fmt::Write as _;
use std::io::Read;

use hirzebruch_core::birational::{
    curve_f2, parse_class, parse_script, parse_surface, run_script, series_row1, series_row2, series_row3, series_row4,
    single_blowup, Generated, MoveError, SingleBlowup, TraceEntry,
};
use hirzebruch_core::cusp::{format_config, parse_config};
use hirzebruch_core::feasibility::{enumerate_configs, EnumerationLimits, FeasibilityError, DEFAULT_MAX_CANDIDATES};
use hirzebruch_core::{CurveSpec, CurveState, DivisorClass, FeasibilityReport, SurfaceId};
use serde_json::Value;

use crate::args::{Cli, Command, CurveArgs, EnumerateArgs, Row, RunScriptArgs, SeriesArgs};
use crate::poly_cmd;
use crate::report::{horizontal_table, render_many, render_one, vertical_table, Format, Record};

pub const MAX_ENUM_VAR: &str = "CUSPIDAL_MAX_ENUM";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
        }
    }

    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub status: Status,
    /// Written to stderr.
    pub diagnostic: Option<String>,
}

impl Output {
    pub fn new(text: String, status: Status) -> Self {
        Output { text, status, diagnostic: None }
    }
}

/// Bad flags, unreadable input, or malformed text: exit code 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct InputError(pub String);

impl InputError {
    pub fn flag(flag: &str, msg: impl std::fmt::Display) -> Self {
        InputError(format!("--{flag}: {msg}"))
    }
}

pub fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Output, InputError> {
    let format = cli.format;
    match &cli.command {
        Command::Check(args) => check(args, format, false),
        Command::Report(args) => check(args, format, true),
        Command::Chi(args) => chi(args, format),
        Command::Enumerate(args) => enumerate(args, format),
        Command::Series(args) => series(args, format),
        Command::RunScript(args) => replay(args, format, stdin),
        Command::Poly(cmd) => poly_cmd::execute(cmd, format, stdin),
    }
}

pub fn read_source(path: Option<&std::path::Path>, stdin: &mut dyn Read) -> Result<String, InputError> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p).map_err(|e| InputError(format!("{}: {e}", p.display())))?;
        }
        _ => {
            stdin.read_to_string(&mut text).map_err(|e| InputError(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn curve_spec(args: &CurveArgs) -> Result<CurveSpec, InputError> {
    let surface = parse_surface(&args.surface).map_err(|e| InputError::flag("surface", e))?;
    let cls = parse_class(&args.class).map_err(|e| InputError::flag("type", e))?;
    let config = parse_config(&args.config).map_err(|e| InputError::flag("config", e))?;
    let spec = CurveSpec::new(surface, cls, config).map_err(|e| InputError::flag("type", e))?;
    Ok(spec.with_kodaira_nonneg(args.kodaira_nonneg))
}

fn curve_fields(spec: &CurveSpec) -> Record {
    Record::new()
        .with("surface", spec.surface.to_string())
        .with("type", spec.cls.to_string())
        .with("config", config_text(&spec.config))
        .with("cusps", spec.cusp_count())
}

fn config_text(config: &[hirzebruch_core::MultiplicitySequence]) -> String {
    if config.is_empty() {
        String::from("-")
    } else {
        format_config(config)
    }
}

fn opt<T: Into<Value>>(v: Option<T>) -> Value {
    v.map_or(Value::Null, Into::into)
}

/// The flat record behind `check` and `report`.
pub fn check_record(spec: &CurveSpec, report: &FeasibilityReport, extended: bool) -> Record {
    let mut r = curve_fields(spec);
    r.push("kodaira_nonneg", spec.kodaira_effective());
    r.push("genus", report.genus);
    r.push("chi", report.chi);
    r.push("k_dot_kc", report.k_dot_kc);
    r.push("m_sum", report.m_sum);
    let res = report.resolution;
    r.push("r", opt(res.map(|x| x.r)));
    r.push("D_sq", opt(res.map(|x| x.d_sq)));
    if extended {
        r.push("t_total", opt(res.map(|x| x.t_total)));
        r.push("K_V_sq", opt(res.map(|x| x.k_v_sq)));
        r.push("c2", opt(res.map(|x| x.c2)));
        r.push("chi_theta_V", opt(res.map(|x| x.chi_theta_v)));
        r.push("C_tilde_sq", opt(res.map(|x| x.c_tilde_sq)));
        r.push("sum_Di_sq", opt(res.map(|x| x.sum_di_sq)));
        r.push("chi_normal_sum", opt(res.map(|x| x.chi_normal_sum)));
        r.push("chi_log", opt(res.map(|x| x.chi_log)));
        if let Some(e) = &report.resolution_error {
            r.push("resolution_error", e.to_string());
        }
        if let Some(lb) = &report.lower_bound {
            r.push("bound.m", lb.m);
            r.push("bound.B", lb.b_coef);
            r.push("bound.N", lb.n_coef);
            r.push("bound.quadratic_value", lb.quadratic_value);
            r.push("bound.radicand", lb.radicand);
            r.push("bound.closed_threshold", opt(lb.closed_threshold().map(|s| s.to_string())));
            r.push("bound.modes_disagree", lb.disagreement());
        }
    }
    for v in report.verdicts() {
        r.push(&format!("verdict.{}", v.name), v.outcome.as_str());
    }
    for v in report.verdicts() {
        r.push(&format!("detail.{}", v.name), v.detail.clone());
    }
    r.push("all_pass", report.all_pass());
    r
}

fn check(args: &CurveArgs, format: Format, extended: bool) -> Result<Output, InputError> {
    let spec = curve_spec(args)?;
    let report = spec.full_report();
    let record = check_record(&spec, &report, extended);
    let text = match format {
        Format::Table => {
            let mut head = Record::new();
            for k in record.keys().filter(|k| !k.starts_with("verdict.") && !k.starts_with("detail.")) {
                head.push(k, record.get(k).cloned().unwrap_or(Value::Null));
            }
            let rows: Vec<Record> = report
                .verdicts()
                .iter()
                .map(|v| {
                    Record::new()
                        .with("check", v.name)
                        .with("outcome", v.outcome.as_str())
                        .with("detail", v.detail.clone())
                })
                .collect();
            format!("{}\n{}", vertical_table(&head), horizontal_table(&rows))
        }
        _ => render_one(&record, format),
    };
    Ok(Output::new(text, Status::from_pass(report.all_pass())))
}

fn chi(args: &CurveArgs, format: Format) -> Result<Output, InputError> {
    let spec = curve_spec(args)?;
    let mut r = curve_fields(&spec);
    r.push("chi", spec.chi_log());
    r.push("k_dot_kc", spec.k_dot_kc());
    r.push("m_sum", spec.m_sum());
    let (status, diagnostic) = match spec.resolution_report() {
        Ok(res) => {
            r.push("r", res.r);
            r.push("D_sq", res.d_sq);
            r.push("chi_via_resolution", 6 - res.r - res.d_sq);
            r.push("chi_theta_V", res.chi_theta_v);
            r.push("chi_normal_sum", res.chi_normal_sum);
            r.push("chi_via_sheaves", res.chi_theta_v - res.chi_normal_sum);
            r.push("consistent", true);
            (Status::Pass, None)
        }
        Err(e) => {
            r.push("consistent", false);
            (Status::Fail, Some(e.to_string()))
        }
    };
    Ok(Output { text: render_one(&r, format), status, diagnostic })
}

fn enumeration_cap() -> Result<u64, InputError> {
    match std::env::var(MAX_ENUM_VAR) {
        Ok(v) => {
            v.trim().parse::<u64>().map_err(|_| InputError(format!("{MAX_ENUM_VAR}={v:?} is not a candidate count")))
        }
        Err(_) => Ok(DEFAULT_MAX_CANDIDATES),
    }
}

fn enumerate(args: &EnumerateArgs, format: Format) -> Result<Output, InputError> {
    let limits = EnumerationLimits {
        min_cusps: args.min_cusps,
        kodaira_nonneg: args.kodaira_nonneg,
        max_candidates: enumeration_cap()?,
    };
    let classes: Vec<(SurfaceId, DivisorClass)> = match (&args.surface, &args.class) {
        (Some(s), Some(c)) => vec![(
            parse_surface(s).map_err(|e| InputError::flag("surface", e))?,
            parse_class(c).map_err(|e| InputError::flag("type", e))?,
        )],
        _ => (0..=args.max_e)
            .flat_map(|e| {
                (1..=args.max_b)
                    .flat_map(move |b| (0..=args.max_a).map(move |a| (SurfaceId(e), DivisorClass::new(a, b))))
            })
            .collect(),
    };
    let single = classes.len() == 1;
    let mut rows = Vec::new();
    for (surface, cls) in classes {
        let found = match enumerate_configs(surface, cls, limits) {
            Ok(found) => found,
            Err(FeasibilityError::NegativeArithmeticGenus(_)) if !single => continue,
            Err(FeasibilityError::CapExceeded(n)) => {
                return Err(InputError(format!("{surface} {cls}: more than {n} candidates; raise {MAX_ENUM_VAR}")))
            }
            Err(e) => return Err(InputError(format!("{surface} {cls}: {e}"))),
        };
        for spec in found {
            rows.push(curve_fields(&spec).with("chi", spec.chi_log()));
        }
    }
    let text = if rows.is_empty() && format == Format::Table {
        String::from("no configurations\n")
    } else {
        render_many(&rows, format)
    };
    Ok(Output::new(text, Status::Pass))
}

fn parse_runs(text: &str) -> Result<[u32; 4], InputError> {
    let parts: Vec<u32> = text
        .split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| InputError::flag("n", format!("{text:?} is not n1,n2,n3,n4")))?;
    parts.try_into().map_err(|_| InputError::flag("n", format!("{text:?} needs four entries")))
}

fn generate(args: &SeriesArgs) -> Result<(Generated, Record), InputError> {
    let need = |v: Option<u32>, flag: &str| v.ok_or_else(|| InputError::flag(flag, "required for this row"));
    let mut params = Record::new();
    let built = match args.row {
        Row::One => {
            let e = need(args.e, "e")?;
            params = params.with("row", "1").with("e", e).with("k", args.k);
            series_row1(e, args.k)
        }
        Row::Two | Row::Three => {
            let h = need(args.h, "h")?;
            let name = if args.row == Row::Two { "2" } else { "3" };
            params = params.with("row", name).with("h", h).with("k", args.k);
            if args.row == Row::Two {
                series_row2(h, args.k)
            } else {
                series_row3(h, args.k)
            }
        }
        Row::Four => {
            let h = need(args.h, "h")?;
            let n = parse_runs(args.n.as_deref().ok_or_else(|| InputError::flag("n", "required for row 4"))?)?;
            let runs = n.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
            params = params.with("row", "4").with("h", h).with("k", args.k).with("n", runs);
            series_row4(h, args.k, n)
        }
        Row::F2 => {
            params = params.with("row", "f2");
            curve_f2()
        }
        Row::C1 | Row::C2 | Row::C3 => {
            let (name, kind) = match args.row {
                Row::C1 => ("c1", SingleBlowup::OffCurve),
                Row::C2 => ("c2", SingleBlowup::SmoothPoint),
                _ => ("c3", SingleBlowup::Cusp),
            };
            params = params.with("row", name);
            single_blowup(kind)
        }
    };
    let generated = built.map_err(|e| match e {
        MoveError::BadParameters(msg) => InputError(format!("bad series parameters: {msg}")),
        other => InputError(other.to_string()),
    })?;
    Ok((generated, params))
}

fn state_fields(state: &CurveState) -> Record {
    match state.spec() {
        Some(spec) => curve_fields(&spec).with("chi", spec.chi_log()),
        None => Record::new().with("state", state.summary()),
    }
}

fn trace_rows(trace: &[TraceEntry]) -> Vec<Record> {
    trace
        .iter()
        .map(|t| {
            Record::new()
                .with("line", t.line)
                .with("move", t.text.clone())
                .with("state", t.summary.clone())
                .with("C_sq", t.self_intersection)
        })
        .collect()
}

fn series(args: &SeriesArgs, format: Format) -> Result<Output, InputError> {
    let (g, params) = generate(args)?;
    let mut record = params;
    let fields = state_fields(&g.state);
    for k in fields.keys() {
        record.push(k, fields.get(k).cloned().unwrap_or(Value::Null));
    }
    record.push("moves", g.script.moves().count());
    let pass = g.state.spec().is_some_and(|s| s.full_report().all_pass());
    let script = g.script.to_string();
    let text = match format {
        Format::Table => {
            // header as comments, so the whole output replays as a script
            let mut out = String::new();
            for line in vertical_table(&record).lines() {
                let _ = writeln!(out, "# {line}");
            }
            if args.trace {
                for line in horizontal_table(&trace_rows(&g.trace)).lines() {
                    let _ = writeln!(out, "# {line}");
                }
            }
            out.push_str(&script);
            out
        }
        Format::Kv => format!("{}\n{script}", render_one(&record, Format::Kv)),
        Format::Records => {
            record.push("script", script);
            if args.trace {
                let steps: Vec<Value> = trace_rows(&g.trace)
                    .iter()
                    .map(|r| serde_json::from_str(&r.to_json()).expect("valid json"))
                    .collect();
                record.push("trace", steps);
            }
            render_one(&record, Format::Records)
        }
    };
    Ok(Output::new(text, Status::from_pass(pass)))
}

fn replay(args: &RunScriptArgs, format: Format, stdin: &mut dyn Read) -> Result<Output, InputError> {
    let text = read_source(args.path.as_deref(), stdin)?;
    let script = parse_script(&text).map_err(|e| InputError(format!("script: {e}")))?;
    let (state, trace) = match run_script(None, &script) {
        Ok(done) => done,
        Err(e) if matches!(*e.error, MoveError::AssertionFailed { .. }) => {
            return Ok(Output { text: String::new(), status: Status::Fail, diagnostic: Some(e.to_string()) });
        }
        Err(e) => return Err(InputError(e.to_string())),
    };
    let rows = trace_rows(&trace);
    let final_record = state_fields(&state).with("summary", state.summary());
    let text = match format {
        Format::Table => format!("{}\n{}", horizontal_table(&rows), vertical_table(&final_record)),
        Format::Kv => format!("{}\n\n{}", render_many(&rows, Format::Kv), render_one(&final_record, Format::Kv)),
        Format::Records => {
            format!("{}{}", render_many(&rows, Format::Records), render_one(&final_record, Format::Records))
        }
    };
    Ok(Output::new(text, Status::Pass))
}
