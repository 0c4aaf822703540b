//! Sparse multivariate polynomials with exact rational coefficients.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Integer as an exact rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `n / d`; panics on a zero denominator.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable {index} out of range");
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Self::monomial(exps, BigRational::one())
    }

    pub fn monomial(exps: Vec<u32>, c: BigRational) -> Self {
        let mut p = Poly::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigRational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    pub(crate) fn add_term(&mut self, exps: Vec<u32>, c: BigRational) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The constant value, if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&vec![0; self.nvars]).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(exps: &[u32]) -> u32 {
        exps.iter().sum()
    }

    /// Lowest total degree of a term; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| Self::total_degree(e)).min()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| Self::total_degree(e)).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// The part of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| Self::total_degree(e) == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Componentwise minimum of the exponents: the largest monomial factor.
    pub fn monomial_content(&self) -> Vec<u32> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.nvars];
        };
        let mut content = first.clone();
        for e in it {
            for (c, &x) in content.iter_mut().zip(e) {
                *c = (*c).min(x);
            }
        }
        content
    }

    /// Divides by the monomial with exponents `exps`; each term must be divisible.
    pub fn divide_monomial(&self, exps: &[u32]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let e: Vec<u32> =
                    e.iter().zip(exps).map(|(&x, &y)| x.checked_sub(y).expect("monomial divides every term")).collect();
                (e, c.clone())
            })
            .collect();
        Poly { nvars: self.nvars, terms }
    }

    /// Substitutes `images[i]` for variable `i`. All images share one arity,
    /// which becomes the arity of the result.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target = images.first().map_or(0, Poly::nvars);
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(target), p.clone()]).collect();
        let mut out = Poly::zero(target);
        for (exps, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &k) in exps.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let table = &mut powers[i];
                while table.len() <= k as usize {
                    let next = &table[table.len() - 1] * &images[i];
                    table.push(next);
                }
                term = &term * &table[k as usize];
            }
            out = &out + &term;
        }
        out
    }

    /// Sets the variables in `fixed` to the given values and drops them.
    pub fn specialize(&self, fixed: &[(usize, BigRational)]) -> Poly {
        let keep: Vec<usize> = (0..self.nvars).filter(|i| fixed.iter().all(|(j, _)| j != i)).collect();
        let mut out = Poly::zero(keep.len());
        for (exps, c) in &self.terms {
            let mut c = c.clone();
            for (j, value) in fixed {
                c *= pow_rat(value, exps[*j]);
            }
            out.add_term(keep.iter().map(|&i| exps[i]).collect(), c);
        }
        out
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars);
        let fixed: Vec<(usize, BigRational)> = point.iter().cloned().enumerate().collect();
        self.specialize(&fixed).as_constant().expect("all variables fixed")
    }

    /// The leading term under degree-then-lexicographic order, used to
    /// normalize signs.
    pub fn leading(&self) -> Option<(&[u32], &BigRational)> {
        self.terms.iter().max_by(|a, b| term_order(a.0, b.0)).map(|(e, c)| (e.as_slice(), c))
    }

    /// Equal up to multiplication by a nonzero rational.
    pub fn proportional(&self, other: &Poly) -> bool {
        match (self.leading(), other.leading()) {
            (None, None) => true,
            (Some((e1, c1)), Some((e2, c2))) if e1 == e2 => self.scale(c2) == other.scale(c1),
            _ => false,
        }
    }

    /// Terms sorted by descending total degree, then descending exponents.
    pub fn sorted_terms(&self) -> Vec<(&[u32], &BigRational)> {
        let mut out: Vec<_> = self.terms().collect();
        out.sort_by(|a, b| term_order(b.0, a.0));
        out
    }

    pub fn is_negative_leading(&self) -> bool {
        self.leading().is_some_and(|(_, c)| c.is_negative())
    }
}

fn term_order(a: &[u32], b: &[u32]) -> Ordering {
    Poly::total_degree(a).cmp(&Poly::total_degree(b)).then_with(|| a.cmp(b))
}

pub(crate) fn pow_rat(x: &BigRational, k: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
