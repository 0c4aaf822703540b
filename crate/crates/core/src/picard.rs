//! Intersection theory on `F_e`.
//!
//! `Pic(F_e)` is generated by a fiber `L` and a section `M ~ eL + M_0`, with
//! `L^2 = 0`, `L.M = 1` and `M^2 = e`. A class `aL + bM` is written `(a, b)`.

use core::fmt;

use thiserror::Error;

use crate::cusp::MultiplicitySequence;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PicardError {
    #[error("class ({a},{b}) on F{e} has negative arithmetic genus {value}")]
    MalformedClass { e: u32, a: i64, b: i64, value: i64 },
    #[error("configuration needs delta {delta} but the class only has arithmetic genus {genus}")]
    ImpossibleConfiguration { genus: i64, delta: i64 },
}

/// A Hirzebruch surface `F_e`. `F_0` is `P^1 x P^1`, `F_1` the plane blown up in a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SurfaceId(pub u32);

impl SurfaceId {
    pub fn new(e: u32) -> Self {
        SurfaceId(e)
    }

    pub fn e(self) -> i64 {
        i64::from(self.0)
    }

    pub fn is_quadric(self) -> bool {
        self.0 == 0
    }

    /// Bilinear pairing `(a1 L + b1 M).(a2 L + b2 M) = a1 b2 + a2 b1 + e b1 b2`.
    pub fn intersect(self, d1: DivisorClass, d2: DivisorClass) -> i64 {
        d1.a * d2.b + d2.a * d1.b + self.e() * d1.b * d2.b
    }

    /// `K ~ (e-2)L - 2M`.
    pub fn canonical(self) -> DivisorClass {
        DivisorClass::new(self.e() - 2, -2)
    }

    pub fn self_intersection(self, d: DivisorClass) -> i64 {
        self.intersect(d, d)
    }

    /// `(b-1)(2a-2+be)/2`, the genus of a smooth curve in the class.
    pub fn arithmetic_genus(self, c: DivisorClass) -> Result<i64, PicardError> {
        // (b-1)(2a-2+be) is always even: one of b-1, be is even.
        let value = (c.b - 1) * (2 * c.a - 2 + c.b * self.e()) / 2;
        if value < 0 {
            return Err(PicardError::MalformedClass { e: self.0, a: c.a, b: c.b, value });
        }
        Ok(value)
    }

    /// Arithmetic genus minus the total delta invariant of the cusps.
    pub fn geometric_genus(self, c: DivisorClass, config: &[MultiplicitySequence]) -> Result<i64, PicardError> {
        let genus = self.arithmetic_genus(c)?;
        let delta: i64 = config.iter().map(|s| s.delta()).sum();
        if delta > genus {
            return Err(PicardError::ImpossibleConfiguration { genus, delta });
        }
        Ok(genus - delta)
    }

    /// Number of monomials `x0^a0 x1^a1 y0^b0 y1^b1` with `a0+a1-e*b1 = a` and
    /// `b0+b1 = b`, i.e. the dimension of `S_e(a, b)`.
    pub fn graded_dimension(self, a: i64, b: i64) -> u64 {
        if b < 0 {
            return 0;
        }
        (0..=b).map(|b1| a + self.e() * b1).filter(|&x_deg| x_deg >= 0).map(|x_deg| (x_deg + 1) as u64).sum()
    }
}

impl fmt::Display for SurfaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.0)
    }
}

/// The class `aL + bM`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DivisorClass {
    pub a: i64,
    pub b: i64,
}

impl DivisorClass {
    pub const FIBER: DivisorClass = DivisorClass { a: 1, b: 0 };
    pub const SECTION: DivisorClass = DivisorClass { a: 0, b: 1 };

    pub fn new(a: i64, b: i64) -> Self {
        DivisorClass { a, b }
    }

    /// `b > 0` and `a >= 0`: the shape of the class of every irreducible curve
    /// other than a fiber or the special section.
    pub fn is_curve_class(self) -> bool {
        self.b > 0 && self.a >= 0
    }

    /// The involution exchanging the two rulings of `F_0`.
    pub fn swapped(self) -> Self {
        DivisorClass::new(self.b, self.a)
    }
}

impl core::ops::Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: Self) -> Self {
        DivisorClass::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl core::ops::Mul<DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: DivisorClass) -> DivisorClass {
        DivisorClass::new(self * rhs.a, self * rhs.b)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}
