//! Exact combinatorics and algebra for rational cuspidal curves on the
//! Hirzebruch surfaces `F_e`.
//!
//! The crate is `no_std` (it needs `alloc`). Everything is exact: integers for
//! the lattice and cusp invariants, big rationals for polynomial coefficients.
//!
//! - [`picard`]: the Picard lattice `Z L + Z M`, canonical class, genus, graded pieces.
//! - [`cusp`]: multiplicity sequences and their invariants.
//! - [`feasibility`]: constraint checks, `chi(Theta_V<D>)`, resolution bookkeeping,
//!   configuration enumeration.
//! - [`birational`]: a curve-state machine for blow-ups, contractions and
//!   elementary transformations, plus generators for the four-cusp series.
//! - [`polyengine`]: bigraded polynomials, substitution maps, multiplicities,
//!   contact orders and local resolution at rational points.

#![no_std]

extern crate alloc;

pub mod birational;
pub mod cusp;
pub mod feasibility;
pub mod picard;
pub mod polyengine;

pub use birational::{CurveState, FiberMark, Move, MoveError, MoveScript, PointSpec};
pub use cusp::{CuspError, CuspInvariants, MultiplicitySequence};
pub use feasibility::{CurveSpec, FeasibilityReport, ResolutionReport, Verdict};
pub use picard::{DivisorClass, PicardError, SurfaceId};
