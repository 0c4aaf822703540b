//! The line-oriented move-script language.
//!
//! ```text
//! start plane degree=5 config=[2_3],[2],[2],[2]
//! mark T pattern=4*p1+1*r
//! from_plane at r
//! elm T at s onE
//! assert surface=F2 type=(1,4) config=[4,2_3],[2],[2],[2] chi=-1
//! ```
//!
//! Other moves: `start surface=F1 type=(1,4) config=...`, `special pattern=...`
//! (declares `E.C`), `blowup x` followed by `contract T`, `to_plane`,
//! `swap_rulings`. A point is `ID [onE|offE] [on=ID,...]`. `#` starts a comment.

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{format_pattern, CurveState, FiberMark, MoveError, Pattern, PointSpec};
use crate::cusp::{self, MultiplicitySequence};
use crate::picard::{DivisorClass, SurfaceId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StartSpec {
    Plane { degree: i64, config: Vec<MultiplicitySequence> },
    Surface { surface: SurfaceId, cls: DivisorClass, config: Vec<MultiplicitySequence> },
}

impl StartSpec {
    pub fn state(&self) -> CurveState {
        match self {
            StartSpec::Plane { degree, config } => CurveState::plane(*degree, config),
            StartSpec::Surface { surface, cls, config } => CurveState::surface(*surface, *cls, config),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Predicate {
    Surface(SurfaceId),
    Type(DivisorClass),
    Degree(i64),
    Config(Vec<MultiplicitySequence>),
    Chi(i64),
    Genus(i64),
    Cusps(usize),
    Pattern(String, Pattern),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    Start(StartSpec),
    Mark(FiberMark),
    Special(Pattern),
    Blowup(PointSpec),
    Contract(String),
    Elm { fiber: String, at: PointSpec },
    ToPlane,
    FromPlane(PointSpec),
    SwapRulings,
    Assert(Vec<Predicate>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptLine {
    pub line: usize,
    pub mv: Move,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MoveScript {
    pub lines: Vec<ScriptLine>,
    /// Comment lines kept for printing, keyed by the index of the move they precede.
    pub comments: Vec<(usize, String)>,
}

impl MoveScript {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a move, numbering lines consecutively.
    pub fn push(&mut self, mv: Move) -> &mut Self {
        let line = self.lines.len() + self.comments.len() + 1;
        self.lines.push(ScriptLine { line, mv });
        self
    }

    pub fn comment(&mut self, text: &str) -> &mut Self {
        self.comments.push((self.lines.len(), text.to_owned()));
        self
    }

    pub fn moves(&self) -> impl Iterator<Item = &Move> {
        self.lines.iter().map(|l| &l.mv)
    }
}

impl fmt::Display for MoveScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut comments = self.comments.iter().peekable();
        for (i, line) in self.lines.iter().enumerate() {
            while let Some((_, text)) = comments.next_if(|(at, _)| *at <= i) {
                writeln!(f, "# {text}")?;
            }
            writeln!(f, "{}", line.mv)?;
        }
        for (_, text) in comments {
            writeln!(f, "# {text}")?;
        }
        Ok(())
    }
}

fn config_text(config: &[MultiplicitySequence]) -> String {
    let text = cusp::format_config(config);
    if text.is_empty() {
        String::from("-")
    } else {
        text
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::Surface(s) => write!(f, "surface={s}"),
            Predicate::Type(c) => write!(f, "type={c}"),
            Predicate::Degree(d) => write!(f, "degree={d}"),
            Predicate::Config(c) => write!(f, "config={}", config_text(c)),
            Predicate::Chi(c) => write!(f, "chi={c}"),
            Predicate::Genus(g) => write!(f, "genus={g}"),
            Predicate::Cusps(n) => write!(f, "cusps={n}"),
            Predicate::Pattern(m, p) => write!(f, "pattern.{m}={}", format_pattern(p)),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Start(StartSpec::Plane { degree, config }) => {
                write!(f, "start plane degree={degree} config={}", config_text(config))
            }
            Move::Start(StartSpec::Surface { surface, cls, config }) => {
                write!(f, "start surface={surface} type={cls} config={}", config_text(config))
            }
            Move::Mark(mark) => {
                write!(f, "mark {} pattern={}", mark.id, format_pattern(&mark.pattern))?;
                if let Some(y) = &mark.on_special_section {
                    write!(f, " onE={y}")?;
                }
                Ok(())
            }
            Move::Special(p) => write!(f, "special pattern={}", format_pattern(p)),
            Move::Blowup(x) => write!(f, "blowup {x}"),
            Move::Contract(t) => write!(f, "contract {t}"),
            Move::Elm { fiber, at } => write!(f, "elm {fiber} at {at}"),
            Move::ToPlane => f.write_str("to_plane"),
            Move::FromPlane(x) => write!(f, "from_plane at {x}"),
            Move::SwapRulings => f.write_str("swap_rulings"),
            Move::Assert(ps) => {
                f.write_str("assert")?;
                for p in ps {
                    write!(f, " {p}")?;
                }
                Ok(())
            }
        }
    }
}

struct LineParser<'a> {
    line: usize,
    words: Vec<&'a str>,
    pos: usize,
}

impl<'a> LineParser<'a> {
    fn err(&self, msg: impl Into<String>) -> MoveError {
        MoveError::Syntax { line: self.line, msg: msg.into() }
    }

    fn next(&mut self, what: &str) -> Result<&'a str, MoveError> {
        let w = self.words.get(self.pos).copied().ok_or_else(|| self.err(format!("expected {what}")))?;
        self.pos += 1;
        Ok(w)
    }

    fn peek(&self) -> Option<&'a str> {
        self.words.get(self.pos).copied()
    }

    fn ident(&mut self, what: &str) -> Result<String, MoveError> {
        let w = self.next(what)?;
        check_ident(w).map_err(|m| self.err(m))?;
        Ok(w.to_owned())
    }

    fn keyword(&mut self, kw: &str) -> Result<(), MoveError> {
        let w = self.next(kw)?;
        if w == kw {
            Ok(())
        } else {
            Err(self.err(format!("expected '{kw}', found '{w}'")))
        }
    }

    fn point(&mut self) -> Result<PointSpec, MoveError> {
        let mut spec = PointSpec::new(&self.ident("a point name")?);
        while let Some(w) = self.peek() {
            match w {
                "onE" | "offE" if spec.on_e.is_none() => spec.on_e = Some(w == "onE"),
                _ if w.starts_with("on=") && spec.on.is_empty() => {
                    for name in w["on=".len()..].split(',') {
                        check_ident(name).map_err(|m| self.err(m))?;
                        spec.on.push(name.to_owned());
                    }
                }
                _ => return Err(self.err(format!("unexpected '{w}' (point grammar: ID [onE|offE] [on=ID,...])"))),
            }
            self.pos += 1;
        }
        Ok(spec)
    }

    fn key_values(&mut self) -> Result<Vec<(&'a str, &'a str)>, MoveError> {
        let mut out = Vec::new();
        while let Some(w) = self.peek() {
            let (k, v) = w.split_once('=').ok_or_else(|| self.err(format!("expected key=value, found '{w}'")))?;
            out.push((k, v));
            self.pos += 1;
        }
        Ok(out)
    }

    fn finish(&self) -> Result<(), MoveError> {
        match self.peek() {
            Some(w) => Err(self.err(format!("unexpected '{w}'"))),
            None => Ok(()),
        }
    }
}

fn check_ident(w: &str) -> Result<(), String> {
    let mut chars = w.chars();
    let ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    if ok {
        Ok(())
    } else {
        Err(format!("'{w}' is not an identifier ([A-Za-z_][A-Za-z0-9_]*)"))
    }
}

pub fn parse_surface(text: &str) -> Result<SurfaceId, String> {
    text.strip_prefix('F')
        .and_then(|e| e.parse::<u32>().ok())
        .map(SurfaceId)
        .ok_or_else(|| format!("'{text}' is not a surface (grammar: F<e>)"))
}

/// `(a,b)` or `a,b`.
pub fn parse_class(text: &str) -> Result<DivisorClass, String> {
    let inner = text.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(text);
    let bad = || format!("'{text}' is not a class (grammar: (a,b))");
    let (a, b) = inner.split_once(',').ok_or_else(bad)?;
    let a = a.trim().parse::<i64>().map_err(|_| bad())?;
    let b = b.trim().parse::<i64>().map_err(|_| bad())?;
    Ok(DivisorClass::new(a, b))
}

/// `c*ID+c*ID+...`, a bare `ID` meaning `1*ID`; `-` is empty.
pub fn parse_pattern(text: &str) -> Result<Pattern, String> {
    if text == "-" {
        return Ok(Vec::new());
    }
    let mut out: Pattern = Vec::new();
    for term in text.split('+') {
        let (c, id) = match term.split_once('*') {
            Some((c, id)) => {
                let c = c.parse::<u32>().map_err(|_| format!("bad contact order in '{term}'"))?;
                (c, id)
            }
            None => (1, term),
        };
        check_ident(id)?;
        if c == 0 {
            return Err(format!("contact order 0 in '{term}'"));
        }
        if out.iter().any(|(p, _)| p == id) {
            return Err(format!("point {id} listed twice"));
        }
        out.push((id.to_owned(), c));
    }
    Ok(out)
}

fn parse_line(line: usize, text: &str) -> Result<Option<Move>, MoveError> {
    let text = text.split('#').next().unwrap_or("");
    let words: Vec<&str> = text.split_whitespace().collect();
    if words.is_empty() {
        return Ok(None);
    }
    let mut p = LineParser { line, words, pos: 1 };
    let syntax = |msg: String| MoveError::Syntax { line, msg };
    let config = |v: &str| cusp::parse_config(v).map_err(|e| syntax(format!("{e}")));
    let mv = match p.words[0] {
        "start" => {
            let plane = p.peek() == Some("plane");
            if plane {
                p.pos += 1;
            }
            let kvs = p.key_values()?;
            let get = |k: &str| kvs.iter().find(|(key, _)| *key == k).map(|&(_, v)| v);
            for (k, _) in &kvs {
                if !["degree", "surface", "type", "config"].contains(k) {
                    return Err(syntax(format!("unknown start key '{k}'")));
                }
            }
            let cfg = get("config").map(config).transpose()?.unwrap_or_default();
            if plane {
                let d = get("degree").ok_or_else(|| syntax(String::from("start plane needs degree=")))?;
                let degree = d.parse::<i64>().map_err(|_| syntax(format!("bad degree '{d}'")))?;
                if degree < 1 {
                    return Err(syntax(format!("degree must be positive, got {degree}")));
                }
                Move::Start(StartSpec::Plane { degree, config: cfg })
            } else {
                let s = get("surface").ok_or_else(|| syntax(String::from("start needs 'plane' or surface=")))?;
                let t = get("type").ok_or_else(|| syntax(String::from("start surface needs type=")))?;
                let cls = parse_class(t).map_err(syntax)?;
                if !cls.is_curve_class() {
                    return Err(syntax(format!("type {cls} needs b > 0 and a >= 0")));
                }
                Move::Start(StartSpec::Surface { surface: parse_surface(s).map_err(syntax)?, cls, config: cfg })
            }
        }
        "mark" => {
            let id = p.ident("a mark name")?;
            let kvs = p.key_values()?;
            let mut mark = FiberMark { id, pattern: Vec::new(), on_special_section: None };
            let mut seen_pattern = false;
            for (k, v) in kvs {
                match k {
                    "pattern" => {
                        mark.pattern = parse_pattern(v).map_err(syntax)?;
                        seen_pattern = true;
                    }
                    "onE" => {
                        check_ident(v).map_err(syntax)?;
                        mark.on_special_section = Some(v.to_owned());
                    }
                    _ => return Err(syntax(format!("unknown mark key '{k}'"))),
                }
            }
            if !seen_pattern {
                return Err(syntax(String::from("mark needs pattern=")));
            }
            Move::Mark(mark)
        }
        "special" => {
            let kvs = p.key_values()?;
            match kvs.as_slice() {
                [("pattern", v)] => Move::Special(parse_pattern(v).map_err(syntax)?),
                _ => return Err(syntax(String::from("special takes exactly pattern="))),
            }
        }
        "blowup" => Move::Blowup(p.point()?),
        "contract" => {
            let t = p.ident("a fiber name")?;
            p.finish()?;
            Move::Contract(t)
        }
        "elm" => {
            let fiber = p.ident("a fiber name")?;
            p.keyword("at")?;
            Move::Elm { fiber, at: p.point()? }
        }
        "to_plane" => {
            p.finish()?;
            Move::ToPlane
        }
        "from_plane" => {
            p.keyword("at")?;
            Move::FromPlane(p.point()?)
        }
        "swap_rulings" => {
            p.finish()?;
            Move::SwapRulings
        }
        "assert" => {
            let mut preds = Vec::new();
            for (k, v) in p.key_values()? {
                let int = |v: &str| v.parse::<i64>().map_err(|_| syntax(format!("'{v}' is not an integer")));
                preds.push(match k {
                    "surface" => Predicate::Surface(parse_surface(v).map_err(syntax)?),
                    "type" => Predicate::Type(parse_class(v).map_err(syntax)?),
                    "degree" => Predicate::Degree(int(v)?),
                    "config" => Predicate::Config(config(v)?),
                    "chi" => Predicate::Chi(int(v)?),
                    "genus" => Predicate::Genus(int(v)?),
                    "cusps" => Predicate::Cusps(int(v)?.max(0) as usize),
                    _ if k.starts_with("pattern.") => {
                        let mark = &k["pattern.".len()..];
                        check_ident(mark).map_err(syntax)?;
                        Predicate::Pattern(mark.to_owned(), parse_pattern(v).map_err(syntax)?)
                    }
                    _ => return Err(syntax(format!("unknown assert key '{k}'"))),
                });
            }
            if preds.is_empty() {
                return Err(syntax(String::from("assert needs at least one key=value")));
            }
            Move::Assert(preds)
        }
        w => {
            return Err(syntax(format!(
                "unknown move '{w}' (expected start, mark, special, blowup, contract, elm, to_plane, from_plane, swap_rulings, assert)"
            )))
        }
    };
    Ok(Some(mv))
}

/// Parses a script; errors carry the 1-based line number.
pub fn parse_script(text: &str) -> Result<MoveScript, MoveError> {
    let mut script = MoveScript::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if let Some(comment) = raw.trim_start().strip_prefix('#') {
            script.comments.push((script.lines.len(), comment.trim().to_owned()));
            continue;
        }
        if let Some(mv) = parse_line(line, raw)? {
            script.lines.push(ScriptLine { line, mv });
        }
    }
    Ok(script)
}
