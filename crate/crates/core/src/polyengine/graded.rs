//! Polynomials in the Cox coordinates of `F_e` (or of the plane), their
//! grading, and the substitution maps between them.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::text::{format_poly, parse_poly};
use super::PolyError;
use crate::picard::{DivisorClass, SurfaceId};

pub const PLANE_NAMES: [&str; 3] = ["x", "y", "z"];
pub const SURFACE_NAMES: [&str; 4] = ["x0", "x1", "y0", "y1"];

/// Where a polynomial lives: the plane with coordinates `x, y, z`, or `F_e`
/// with `x0, x1` of degree `(1,0)`, `y0` of degree `(0,1)` and `y1` of
/// degree `(-e,1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Grading {
    Plane,
    Surface(SurfaceId),
}

impl Grading {
    pub fn nvars(self) -> usize {
        self.names().len()
    }

    pub fn names(self) -> &'static [&'static str] {
        match self {
            Grading::Plane => &PLANE_NAMES,
            Grading::Surface(_) => &SURFACE_NAMES,
        }
    }

    /// Degree of a single monomial: `(d, 0)` in the plane.
    pub fn monomial_degree(self, exps: &[u32]) -> DivisorClass {
        let e = |i: usize| i64::from(exps[i]);
        match self {
            Grading::Plane => DivisorClass::new(e(0) + e(1) + e(2), 0),
            Grading::Surface(s) => DivisorClass::new(e(0) + e(1) - s.e() * e(3), e(2) + e(3)),
        }
    }
}

impl fmt::Display for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grading::Plane => f.write_str("P2"),
            Grading::Surface(s) => write!(f, "{s}"),
        }
    }
}

/// A polynomial together with the grading it is read in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigradedPolynomial {
    pub grading: Grading,
    pub poly: Poly,
}

impl BigradedPolynomial {
    pub fn new(grading: Grading, poly: Poly) -> Result<Self, PolyError> {
        if poly.nvars() != grading.nvars() {
            return Err(PolyError::Arity { expected: grading.nvars(), found: poly.nvars() });
        }
        Ok(BigradedPolynomial { grading, poly })
    }

    pub fn parse(grading: Grading, text: &str) -> Result<Self, PolyError> {
        Self::parse_named(grading, text, grading.names())
    }

    /// Parses with custom variable names, listed in the standard order
    /// (`x0, x1, y0, y1` or `x, y, z`).
    pub fn parse_named(grading: Grading, text: &str, names: &[&str]) -> Result<Self, PolyError> {
        if names.len() != grading.nvars() {
            return Err(PolyError::Arity { expected: grading.nvars(), found: names.len() });
        }
        Ok(BigradedPolynomial { grading, poly: parse_poly(text, names)? })
    }

    /// The common degree of all terms; `(d, 0)` for a plane polynomial of degree `d`.
    pub fn degree(&self) -> Result<DivisorClass, PolyError> {
        let mut terms = self.poly.terms();
        let (first, _) = terms.next().ok_or(PolyError::ZeroPolynomial)?;
        let want = self.grading.monomial_degree(first);
        for (exps, _) in terms {
            let got = self.grading.monomial_degree(exps);
            if got != want {
                return Err(PolyError::MixedDegree {
                    first: self.monomial_text(first),
                    first_degree: want,
                    second: self.monomial_text(exps),
                    second_degree: got,
                });
            }
        }
        Ok(want)
    }

    /// The class `(a,b)` of the curve on `F_e`.
    pub fn bidegree(&self) -> Result<DivisorClass, PolyError> {
        match self.grading {
            Grading::Plane => Err(PolyError::NotBigraded),
            Grading::Surface(_) => self.degree(),
        }
    }

    pub fn arithmetic_genus(&self) -> Result<i64, PolyError> {
        let d = self.degree()?;
        match self.grading {
            Grading::Plane => Ok((d.a - 1) * (d.a - 2) / 2),
            Grading::Surface(s) => s.arithmetic_genus(d).map_err(|_| PolyError::NotACurve(d)),
        }
    }

    fn monomial_text(&self, exps: &[u32]) -> String {
        format_poly(&Poly::monomial(exps.to_vec(), BigRational::one()), self.grading.names())
    }

    /// Equal up to an overall nonzero scalar and term order.
    pub fn same_curve(&self, other: &BigradedPolynomial) -> bool {
        self.grading == other.grading && self.poly.proportional(&other.poly)
    }

    pub fn format_named(&self, names: &[&str]) -> String {
        format_poly(&self.poly, names)
    }
}

impl fmt::Display for BigradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_poly(&self.poly, self.grading.names()))
    }
}

/// Exponent vectors `(α0, α1, β0, β1)` of the monomials of degree `(a,b)` on `F_e`.
pub fn monomials(surface: SurfaceId, a: i64, b: i64) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    if b < 0 {
        return out;
    }
    for b1 in 0..=b {
        let x_deg = a + surface.e() * b1;
        if x_deg < 0 {
            continue;
        }
        for a1 in 0..=x_deg {
            out.push([(x_deg - a1) as u32, a1 as u32, (b - b1) as u32, b1 as u32]);
        }
    }
    out
}

/// A substitution `v_i := image_i` from one coordinate ring to another,
/// followed by removal of the largest monomial factor (the exceptional
/// components of the underlying birational map are coordinate lines).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstitutionMap {
    pub name: String,
    pub source: Grading,
    pub target: Grading,
    pub images: Vec<Poly>,
}

/// The result of [`apply_map`]: the strict transform and the exponents of
/// the stripped monomial factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transformed {
    pub curve: BigradedPolynomial,
    pub stripped: Vec<u32>,
}

impl SubstitutionMap {
    pub fn new(name: &str, source: Grading, target: Grading, images: Vec<Poly>) -> Result<Self, PolyError> {
        if images.len() != source.nvars() {
            return Err(PolyError::Arity { expected: source.nvars(), found: images.len() });
        }
        if let Some(p) = images.iter().find(|p| p.nvars() != target.nvars()) {
            return Err(PolyError::Arity { expected: target.nvars(), found: p.nvars() });
        }
        Ok(SubstitutionMap { name: name.to_string(), source, target, images })
    }

    /// Images written in the target's standard variable names.
    pub fn parse(name: &str, source: Grading, target: Grading, images: &[&str]) -> Result<Self, PolyError> {
        let polys = images.iter().map(|t| parse_poly(t, target.names())).collect::<Result<Vec<_>, _>>()?;
        Self::new(name, source, target, polys)
    }

    /// Blow-up of a plane point onto `F_1`: `x := x0*y1, y := y0, z := x1*y1`.
    pub fn plane_to_f1() -> Self {
        Self::parse("plane-to-F1", Grading::Plane, Grading::Surface(SurfaceId(1)), &["x0*y1", "y0", "x1*y1"])
            .expect("static map")
    }

    /// The inverse of `(x:y:z) -> (x:y;z:x)`, pulling plane curves back to `F_0`:
    /// `x := x0*y1, y := x1*y1, z := x0*y0`.
    pub fn plane_to_quadric() -> Self {
        Self::parse("plane-to-F0", Grading::Plane, Grading::Surface(SurfaceId(0)), &["x0*y1", "x1*y1", "x0*y0"])
            .expect("static map")
    }

    /// `(x:y:z) -> (x:y;z:x)` read as a substitution of `F_0` coordinates.
    pub fn quadric_to_plane() -> Self {
        Self::parse("F0-to-plane", Grading::Surface(SurfaceId(0)), Grading::Plane, &["x", "y", "z", "x"])
            .expect("static map")
    }

    /// Elementary transformation `F_e -> F_{e+1}` centered on `x0 = y1 = 0`'s
    /// fiber: `y1 := x0*y1`.
    pub fn elm_up(e: u32) -> Self {
        Self::parse(
            "elm-up",
            Grading::Surface(SurfaceId(e)),
            Grading::Surface(SurfaceId(e + 1)),
            &["x0", "x1", "y0", "x0*y1"],
        )
        .expect("static map")
    }

    /// Elementary transformation `F_e -> F_{e-1}`: `y0 := x0*y0`.
    pub fn elm_down(e: u32) -> Result<Self, PolyError> {
        if e == 0 {
            return Err(PolyError::NegativeTarget);
        }
        Self::parse(
            "elm-down",
            Grading::Surface(SurfaceId(e)),
            Grading::Surface(SurfaceId(e - 1)),
            &["x0", "x1", "x0*y0", "y1"],
        )
    }

    /// Plane coordinate change `new = A * old`; the substitution writes the
    /// old coordinates in terms of the new ones.
    pub fn plane_linear(name: &str, a: &[[BigRational; 3]; 3]) -> Result<Self, PolyError> {
        let inv = invert3(a).ok_or(PolyError::SingularMatrix)?;
        let images = inv
            .iter()
            .map(|row| {
                let mut p = Poly::zero(3);
                for (j, c) in row.iter().enumerate() {
                    p = &p + &Poly::var(3, j).scale(c);
                }
                p
            })
            .collect();
        Self::new(name, Grading::Plane, Grading::Plane, images)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &SubstitutionMap) -> Result<Self, PolyError> {
        if self.target != next.source {
            return Err(PolyError::GradingMismatch { expected: next.source, found: self.target });
        }
        let images = self.images.iter().map(|p| p.substitute(&next.images)).collect();
        Self::new(&format!("{} ; {}", self.name, next.name), self.source, next.target, images)
    }
}

impl fmt::Display for SubstitutionMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} -> {}):", self.name, self.source, self.target)?;
        for (v, p) in self.source.names().iter().zip(&self.images) {
            write!(f, " {v} := {};", format_poly(p, self.target.names()))?;
        }
        Ok(())
    }
}

/// Substitutes and strips the monomial factor; checks homogeneity on both sides.
pub fn apply_map(f: &BigradedPolynomial, map: &SubstitutionMap) -> Result<Transformed, PolyError> {
    if f.grading != map.source {
        return Err(PolyError::GradingMismatch { expected: map.source, found: f.grading });
    }
    f.degree()?;
    let image = f.poly.substitute(&map.images);
    if image.is_zero() {
        return Err(PolyError::ExceptionalImage);
    }
    let stripped = image.monomial_content();
    let curve = BigradedPolynomial::new(map.target, image.divide_monomial(&stripped))?;
    curve.degree()?;
    Ok(Transformed { curve, stripped })
}

fn invert3(a: &[[BigRational; 3]; 3]) -> Option<[[BigRational; 3]; 3]> {
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.to_vec();
            r.extend((0..3).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for col in 0..3 {
        let pivot = (col..3).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x /= &p;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let factor = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &factor * p;
                }
            }
        }
    }
    let row = |i: usize| [m[i][3].clone(), m[i][4].clone(), m[i][5].clone()];
    Some([row(0), row(1), row(2)])
}

/// An affine chart: the listed coordinates are set to 1 and the remaining
/// two, in standard order, are the affine coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chart {
    pub grading: Grading,
    pub unit: Vec<usize>,
}

impl Chart {
    /// `x_i = 1, y_j = 1` on `F_e`; affine coordinates `(x_{1-i}, y_{1-j})`.
    pub fn surface(surface: SurfaceId, x_unit: usize, y_unit: usize) -> Self {
        assert!(x_unit < 2 && y_unit < 2);
        Chart { grading: Grading::Surface(surface), unit: vec![x_unit, 2 + y_unit] }
    }

    /// One plane coordinate set to 1.
    pub fn plane(unit: usize) -> Self {
        assert!(unit < 3);
        Chart { grading: Grading::Plane, unit: vec![unit] }
    }

    /// The four charts of `F_e`, or the three of the plane.
    pub fn all(grading: Grading) -> Vec<Chart> {
        match grading {
            Grading::Plane => (0..3).map(Chart::plane).collect(),
            Grading::Surface(s) => {
                [(0, 0), (0, 1), (1, 0), (1, 1)].iter().map(|&(i, j)| Chart::surface(s, i, j)).collect()
            }
        }
    }

    /// Parses `x1=1,y1=1` (or `z=1` in the plane).
    pub fn parse(grading: Grading, text: &str) -> Result<Self, PolyError> {
        let mut unit = Vec::new();
        for part in text.split(',') {
            let (name, value) = part.split_once('=').ok_or_else(|| PolyError::BadChart(text.to_string()))?;
            let index = grading
                .names()
                .iter()
                .position(|n| *n == name.trim())
                .ok_or_else(|| PolyError::BadChart(text.to_string()))?;
            if value.trim() != "1" {
                return Err(PolyError::BadChart(text.to_string()));
            }
            unit.push(index);
        }
        unit.sort_unstable();
        let chart = Chart { grading, unit };
        if Chart::all(grading).contains(&chart) {
            Ok(chart)
        } else {
            Err(PolyError::BadChart(text.to_string()))
        }
    }

    pub fn affine_vars(&self) -> Vec<usize> {
        (0..self.grading.nvars()).filter(|i| !self.unit.contains(i)).collect()
    }

    /// The two-variable local equation in this chart.
    pub fn dehomogenize(&self, f: &BigradedPolynomial) -> Result<Poly, PolyError> {
        if f.grading != self.grading {
            return Err(PolyError::GradingMismatch { expected: self.grading, found: f.grading });
        }
        let fixed: Vec<(usize, BigRational)> = self.unit.iter().map(|&i| (i, BigRational::one())).collect();
        Ok(f.poly.specialize(&fixed))
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.grading.names();
        let parts: Vec<String> = self.unit.iter().map(|&i| format!("{}=1", names[i])).collect();
        f.write_str(&parts.join(","))
    }
}

/// A point of a chart in the projective notation `[u, v, w]` of the
/// chart's affine plane; `w = 0` is off the chart.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChartPoint {
    pub coords: [BigRational; 3],
}

impl ChartPoint {
    pub fn affine(u: BigRational, v: BigRational) -> Self {
        ChartPoint { coords: [u, v, BigRational::one()] }
    }

    pub fn projective(u: BigRational, v: BigRational, w: BigRational) -> Self {
        ChartPoint { coords: [u, v, w] }
    }

    /// Affine coordinates, or an error at infinity.
    pub fn local(&self) -> Result<[BigRational; 2], PolyError> {
        let [u, v, w] = &self.coords;
        if w.is_zero() {
            return Err(PolyError::BoundaryPoint(self.to_string()));
        }
        Ok([u / w, v / w])
    }

    /// Parses `[u,v,w]` or `(u,v)`, entries integers or fractions.
    pub fn parse(text: &str) -> Result<Self, PolyError> {
        let t = text.trim();
        let bad = || PolyError::BadPoint(text.to_string());
        let (inner, projective) = if let Some(s) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            (s, true)
        } else if let Some(s) = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
            (s, false)
        } else {
            return Err(bad());
        };
        let parts = inner
            .split(',')
            .map(|p| parse_poly(p, &[]).ok().and_then(|c| c.as_constant()))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(bad)?;
        match (projective, parts.as_slice()) {
            (true, [u, v, w]) => Ok(ChartPoint::projective(u.clone(), v.clone(), w.clone())),
            (false, [u, v]) => Ok(ChartPoint::affine(u.clone(), v.clone())),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for ChartPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |c: &BigRational| {
            if c.is_integer() {
                c.to_integer().to_string()
            } else {
                format!("{}{}/{}", if c.is_negative() { "-" } else { "" }, c.numer().abs(), c.denom())
            }
        };
        write!(f, "[{}, {}, {}]", show(&self.coords[0]), show(&self.coords[1]), show(&self.coords[2]))
    }
}
