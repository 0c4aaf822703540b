//! Local questions at rational points: multiplicity, contact with a line,
//! and resolution of a unibranch germ with rational tangents by blowing up.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::graded::{BigradedPolynomial, Chart, ChartPoint};
use super::poly::{pow_rat, Poly};
use super::PolyError;
use crate::cusp::MultiplicitySequence;

fn u() -> Poly {
    Poly::var(2, 0)
}

fn v() -> Poly {
    Poly::var(2, 1)
}

/// `g(u + p0, v + p1)`: the germ at `p` moved to the origin.
pub fn translate(g: &Poly, p: &[BigRational; 2]) -> Poly {
    g.substitute(&[&u() + &Poly::constant(2, p[0].clone()), &v() + &Poly::constant(2, p[1].clone())])
}

/// Local equation of `f` at `point`, centered at the origin.
pub fn local_equation(f: &BigradedPolynomial, chart: &Chart, point: &ChartPoint) -> Result<Poly, PolyError> {
    let p = point.local()?;
    Ok(translate(&chart.dehomogenize(f)?, &p))
}

/// Order of vanishing of `g` at the origin; 0 when `g(0) != 0`.
pub fn germ_multiplicity(g: &Poly) -> Result<u32, PolyError> {
    g.order().ok_or(PolyError::ZeroPolynomial)
}

pub fn multiplicity_at(f: &BigradedPolynomial, chart: &Chart, point: &ChartPoint) -> Result<u32, PolyError> {
    germ_multiplicity(&local_equation(f, chart, point)?)
}

/// Intersection multiplicity of `f` with a curve `g` of local degree at most
/// one at `point`, computed by restricting `f` to a parametrization of `g`.
pub fn contact_order(
    f: &BigradedPolynomial,
    g: &BigradedPolynomial,
    chart: &Chart,
    point: &ChartPoint,
) -> Result<u32, PolyError> {
    let local_g = local_equation(g, chart, point)?;
    if local_g.degree().unwrap_or(0) > 1 {
        return Err(PolyError::NotLinear);
    }
    if local_g.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if !local_g.coeff(&[0, 0]).is_zero() {
        return Err(PolyError::PointOffCurve(Box::new(point.clone())));
    }
    let (a, b) = (local_g.coeff(&[1, 0]), local_g.coeff(&[0, 1]));
    // direction (-b, a) spans the line a u + b v = 0
    let t = Poly::var(1, 0);
    let restricted = local_equation(f, chart, point)?.substitute(&[t.scale(&-b), t.scale(&a)]);
    restricted.order().ok_or(PolyError::VanishesOnCurve)
}

/// One step of a resolution: the current germ at the origin and the
/// exceptional curves through it, each a line `αu + βv = 0`.
#[derive(Debug, Clone)]
struct Stage {
    germ: Poly,
    exceptional: Vec<[BigRational; 2]>,
}

/// Multiplicities and inner blow-ups of the minimal embedded resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedResolution {
    /// Multiplicity of the strict transform at every center, 1s included.
    pub multiplicities: Vec<u32>,
    /// Centers lying on two exceptional curves.
    pub inner: usize,
}

impl EmbeddedResolution {
    pub fn eta(&self) -> i64 {
        self.multiplicities.iter().map(|&m| i64::from(m) - 1).sum()
    }

    pub fn omega(&self) -> i64 {
        self.inner as i64
    }

    pub fn m_number(&self) -> i64 {
        self.eta() + self.omega() - 1
    }

    pub fn delta(&self) -> i64 {
        self.multiplicities.iter().map(|&m| i64::from(m) * (i64::from(m) - 1) / 2).sum()
    }

    /// The compact sequence, trailing 1s dropped.
    pub fn sequence(&self) -> Result<MultiplicitySequence, PolyError> {
        let entries: Vec<u32> = self.multiplicities.iter().copied().filter(|&m| m > 1).collect();
        if entries.is_empty() {
            return Err(PolyError::NotSingular);
        }
        MultiplicitySequence::new(entries).map_err(PolyError::Sequence)
    }
}

/// The tangent cone as `c * (α u + β v)^m`, returned as `(α, β)`.
fn tangent_line(g: &Poly, m: u32) -> Result<[BigRational; 2], PolyError> {
    let cone = g.homogeneous_part(m);
    let head = cone.coeff(&[m, 0]);
    let (alpha, beta) = if head.is_zero() {
        (BigRational::zero(), BigRational::one())
    } else {
        // (u + λ v)^m with λ from the u^(m-1) v coefficient
        let lambda = cone.coeff(&[m - 1, 1]) / (&head * BigRational::from_integer(m.into()));
        (BigRational::one(), lambda)
    };
    let line = &u().scale(&alpha) + &v().scale(&beta);
    let lead = if head.is_zero() { cone.coeff(&[0, m]) } else { head };
    if line.pow(m).scale(&lead) != cone {
        return Err(PolyError::UnsupportedGerm { stage: 0 });
    }
    Ok([alpha, beta])
}

fn proportional_lines(x: &[BigRational; 2], y: &[BigRational; 2]) -> bool {
    &x[0] * &y[1] == &x[1] * &y[0]
}

/// Blows up the origin and moves to the point of the exceptional curve in
/// the tangent direction `tangent`.
fn blow_up(stage: &Stage, m: u32, tangent: &[BigRational; 2]) -> Stage {
    let [alpha, beta] = tangent;
    // linear change making the tangent line v' = 0:
    // if α != 0: u = v' - (β/α) u', v = u'; otherwise (tangent v = 0) keep.
    let (images, transform): ([Poly; 2], [[BigRational; 2]; 2]) = if alpha.is_zero() {
        ([u(), v()], [[BigRational::one(), BigRational::zero()], [BigRational::zero(), BigRational::one()]])
    } else {
        let l = beta / alpha;
        ([&v() - &u().scale(&l), u()], [[-l.clone(), BigRational::one()], [BigRational::one(), BigRational::zero()]])
    };
    let g = stage.germ.substitute(&images);
    // a line a u + b v in old coordinates becomes a' u' + b' v'
    let moved: Vec<[BigRational; 2]> = stage
        .exceptional
        .iter()
        .map(|[a, b]| [a * &transform[0][0] + b * &transform[1][0], a * &transform[0][1] + b * &transform[1][1]])
        .collect();
    // chart v' = u' v1, germ divided by u'^m
    let blown = g.substitute(&[u(), &u() * &v()]);
    let germ = blown.divide_monomial(&[m, 0]);
    let mut exceptional = vec![[BigRational::one(), BigRational::zero()]];
    for [a, _] in &moved {
        if a.is_zero() {
            exceptional.push([BigRational::zero(), BigRational::one()]);
        }
    }
    Stage { germ, exceptional }
}

fn step_limit(g: &Poly) -> usize {
    let d = g.degree().unwrap_or(0) as usize;
    d * d + 4
}

/// Blows up until the strict transform is smooth and meets the exceptional
/// divisor transversally at a point of a single exceptional curve.
pub fn embedded_resolution(germ: &Poly) -> Result<EmbeddedResolution, PolyError> {
    if !germ.coeff(&[0, 0]).is_zero() {
        return Err(PolyError::NotSingular);
    }
    let limit = step_limit(germ);
    let mut stage = Stage { germ: germ.clone(), exceptional: Vec::new() };
    let mut out = EmbeddedResolution { multiplicities: Vec::new(), inner: 0 };
    loop {
        let m = germ_multiplicity(&stage.germ)?;
        let tangent =
            tangent_line(&stage.germ, m).map_err(|_| PolyError::UnsupportedGerm { stage: out.multiplicities.len() })?;
        if m == 1 && stage.exceptional.len() <= 1 && stage.exceptional.iter().all(|e| !proportional_lines(e, &tangent))
        {
            return Ok(out);
        }
        if out.multiplicities.len() >= limit {
            return Err(PolyError::NonTermination(limit));
        }
        out.multiplicities.push(m);
        if stage.exceptional.len() == 2 {
            out.inner += 1;
        }
        stage = blow_up(&stage, m, &tangent);
    }
}

/// Multiplicity sequence of the germ at the origin, stopping at multiplicity 1.
pub fn resolve_germ(germ: &Poly) -> Result<MultiplicitySequence, PolyError> {
    if !germ.coeff(&[0, 0]).is_zero() {
        return Err(PolyError::NotSingular);
    }
    let limit = step_limit(germ);
    let mut stage = Stage { germ: germ.clone(), exceptional: Vec::new() };
    let mut entries = Vec::new();
    loop {
        let m = germ_multiplicity(&stage.germ)?;
        if m <= 1 {
            break;
        }
        if entries.len() >= limit {
            return Err(PolyError::NonTermination(limit));
        }
        let tangent = tangent_line(&stage.germ, m).map_err(|_| PolyError::UnsupportedGerm { stage: entries.len() })?;
        entries.push(m);
        stage = blow_up(&stage, m, &tangent);
    }
    if entries.is_empty() {
        return Err(PolyError::NotSingular);
    }
    MultiplicitySequence::new(entries).map_err(PolyError::Sequence)
}

pub fn local_resolution(
    f: &BigradedPolynomial,
    chart: &Chart,
    point: &ChartPoint,
) -> Result<MultiplicitySequence, PolyError> {
    resolve_germ(&local_equation(f, chart, point)?)
}

/// A resolved rational cusp in a [`DeltaAudit`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditedCusp {
    pub chart: Chart,
    pub point: ChartPoint,
    pub multiplicity: u32,
    pub sequence: MultiplicitySequence,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaAudit {
    pub arithmetic_genus: i64,
    pub cusps: Vec<AuditedCusp>,
    pub resolved_delta: i64,
    /// Delta left for singularities at non-rational points.
    pub residual: i64,
}

/// Resolves the listed rational cusps and compares their total delta with
/// the arithmetic genus.
pub fn delta_audit(f: &BigradedPolynomial, cusps: &[(Chart, ChartPoint)]) -> Result<DeltaAudit, PolyError> {
    let arithmetic_genus = f.arithmetic_genus()?;
    let mut audited = Vec::new();
    for (chart, point) in cusps {
        let germ = local_equation(f, chart, point)?;
        let multiplicity = germ_multiplicity(&germ)?;
        let sequence = resolve_germ(&germ)?;
        audited.push(AuditedCusp { chart: chart.clone(), point: point.clone(), multiplicity, sequence });
    }
    let resolved_delta: i64 = audited.iter().map(|c| c.sequence.delta()).sum();
    let residual = arithmetic_genus - resolved_delta;
    if residual < 0 {
        return Err(PolyError::NegativeResidual(residual));
    }
    Ok(DeltaAudit { arithmetic_genus, cusps: audited, resolved_delta, residual })
}

/// `y^p - x^q` as a germ in `(x, y)`.
pub fn binomial_germ(p: u32, q: u32) -> Poly {
    &v().pow(p) - &u().pow(q)
}

/// Evaluates `f` at a point of the chart.
pub fn value_at(f: &BigradedPolynomial, chart: &Chart, point: &ChartPoint) -> Result<BigRational, PolyError> {
    let p = point.local()?;
    let g = chart.dehomogenize(f)?;
    let mut acc = BigRational::zero();
    for (e, c) in g.terms() {
        acc += c * pow_rat(&p[0], e[0]) * pow_rat(&p[1], e[1]);
    }
    Ok(acc)
}
