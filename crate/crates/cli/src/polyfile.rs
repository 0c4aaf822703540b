//! Polynomial files: `#` comment lines, optional `# grading: F1` and
//! `# names: x0 x1 y0 y1` headers, then the polynomial, possibly wrapped.

use std::fmt::Write as _;

use hirzebruch_core::birational::parse_surface;
use hirzebruch_core::polyengine::{BigradedPolynomial, Grading, PolyError};

#[derive(Debug, thiserror::Error)]
pub enum PolyFileError {
    #[error("missing '# grading:' header")]
    MissingGrading,
    #[error("bad grading {0:?}; expected P2 or F<e>")]
    BadGrading(String),
    #[error("'# names:' lists {found} names, the grading needs {expected}")]
    NameCount { expected: usize, found: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

pub fn parse_grading(text: &str) -> Result<Grading, PolyFileError> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("p2") || t.eq_ignore_ascii_case("plane") {
        return Ok(Grading::Plane);
    }
    parse_surface(t).map(Grading::Surface).map_err(|_| PolyFileError::BadGrading(t.to_owned()))
}

/// Reads a polynomial file. `default` is used when the file has no grading header.
pub fn parse_poly_file(text: &str, default: Option<Grading>) -> Result<BigradedPolynomial, PolyFileError> {
    let mut grading = default;
    let mut names: Option<Vec<String>> = None;
    let mut body = String::new();
    for line in text.lines() {
        let line = line.trim();
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(g) = comment.strip_prefix("grading:") {
                grading = Some(parse_grading(g)?);
            } else if let Some(n) = comment.strip_prefix("names:") {
                names = Some(n.split_whitespace().map(str::to_owned).collect());
            }
            continue;
        }
        let _ = write!(body, "{line} ");
    }
    let grading = grading.ok_or(PolyFileError::MissingGrading)?;
    let names: Vec<String> = names.unwrap_or_else(|| grading.names().iter().map(|s| (*s).to_owned()).collect());
    if names.len() != grading.nvars() {
        return Err(PolyFileError::NameCount { expected: grading.nvars(), found: names.len() });
    }
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    Ok(BigradedPolynomial::parse_named(grading, &body, &refs)?)
}
