//! Exact polynomial arithmetic for curves in the plane and on `F_e`:
//! coordinate maps with strict transforms, multiplicities, contact orders
//! and resolution of rational cusps.

mod graded;
mod local;
mod poly;
mod text;

pub use graded::{
    apply_map, monomials, BigradedPolynomial, Chart, ChartPoint, Grading, SubstitutionMap, Transformed, PLANE_NAMES,
    SURFACE_NAMES,
};
pub use local::{
    binomial_germ, contact_order, delta_audit, embedded_resolution, germ_multiplicity, local_equation,
    local_resolution, multiplicity_at, resolve_germ, translate, value_at, AuditedCusp, DeltaAudit, EmbeddedResolution,
};
pub use poly::{rat, ratio, Poly};
pub use text::{format_poly, parse_poly};

use alloc::boxed::Box;
use alloc::string::String;

use crate::cusp::CuspError;
use crate::picard::DivisorClass;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("polynomial syntax at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable {name:?}; expected one of {expected}")]
    UnknownVariable { name: String, expected: String },
    #[error("expected {expected} variables, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("mixed degrees: {first} has degree {first_degree}, {second} has degree {second_degree}")]
    MixedDegree { first: String, first_degree: DivisorClass, second: String, second_degree: DivisorClass },
    #[error("a plane polynomial has no bidegree")]
    NotBigraded,
    #[error("{0} is not the class of a curve")]
    NotACurve(DivisorClass),
    #[error("map expects a polynomial on {expected}, got one on {found}")]
    GradingMismatch { expected: Grading, found: Grading },
    #[error("the image vanishes identically: the curve lies in the exceptional locus")]
    ExceptionalImage,
    #[error("no elementary transformation down from F0")]
    NegativeTarget,
    #[error("coordinate change matrix is singular")]
    SingularMatrix,
    #[error("unknown chart {0:?}; write e.g. x1=1,y1=1")]
    BadChart(String),
    #[error("bad point {0:?}; write [u,v,w] or (u,v)")]
    BadPoint(String),
    #[error("point {0} lies on the chart boundary")]
    BoundaryPoint(String),
    #[error("the second curve is not of degree at most one in this chart")]
    NotLinear,
    #[error("point {0} is not on the second curve")]
    PointOffCurve(Box<ChartPoint>),
    #[error("the polynomial vanishes identically on the second curve")]
    VanishesOnCurve,
    #[error("germ after {stage} blow-ups has a tangent cone that is not a power of a rational line")]
    UnsupportedGerm { stage: usize },
    #[error("point is not singular")]
    NotSingular,
    #[error("no resolution after {0} blow-ups")]
    NonTermination(usize),
    #[error(transparent)]
    Sequence(CuspError),
    #[error("resolved delta exceeds the arithmetic genus by {}", -.0)]
    NegativeResidual(i64),
}
