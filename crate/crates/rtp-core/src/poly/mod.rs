//! Sparse multivariate polynomials over the integers.

mod gcd;
mod matrix;
mod parse;

pub use gcd::{poly_gcd, poly_is_reduced};
pub use matrix::{poly_det_bareiss, LinearFormMatrix, DEFAULT_DET_GUARD};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("exact division failed: divisor does not divide dividend")]
    NotDivisible,
    #[error("zero determinant: chosen generator complement is degenerate")]
    ZeroPolynomial,
    #[error("matrix dimension {dim} exceeds the determinant guard {max}")]
    TooLarge { dim: usize, max: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("entry ({row},{col}) is not a linear form")]
    NotLinear { row: usize, col: usize },
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// Exponent vector, ordered graded-lexicographically (x0 > x1 > ...).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial {
            degree,
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial::new(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    fn widened(&self, nvars: usize) -> Monomial {
        if self.exps.len() == nvars {
            return self.clone();
        }
        let mut e = self.exps.to_vec();
        e.resize(nvars, 0);
        Monomial::new(e)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u32> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a + b)
            .collect();
        Monomial {
            degree: self.degree + other.degree,
            exps: exps.into_boxed_slice(),
        }
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u32> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a - b)
            .collect();
        Monomial {
            degree: self.degree - other.degree,
            exps: exps.into_boxed_slice(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparsePolynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl SparsePolynomial {
    pub fn zero(nvars: usize) -> Self {
        SparsePolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    /// The variable `x_i` in a ring of `nvars` variables.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable x{i} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, BigInt::one())
    }

    pub fn monomial(exps: Vec<u32>, c: impl Into<BigInt>) -> Self {
        let nvars = exps.len();
        let c = c.into();
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::new(exps), c);
        }
        p
    }

    /// Builds a polynomial from (exponents, coefficient) pairs, merging duplicates.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length must equal nvars");
            p.add_term(Monomial::new(e), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree == 0)
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> BigInt {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigInt::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exps.get(var).copied().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    /// Indices of variables that occur with positive exponent.
    pub fn variables(&self) -> Vec<usize> {
        let mut seen = vec![false; self.nvars];
        for m in self.terms.keys() {
            for (i, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    seen[i] = true;
                }
            }
        }
        seen.iter()
            .enumerate()
            .filter_map(|(i, &s)| s.then_some(i))
            .collect()
    }

    /// Smallest exponent of `var` over all terms.
    pub fn min_degree_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exps.get(var).copied().unwrap_or(0))
            .min()
            .unwrap_or(0)
    }

    /// Positive gcd of the integer coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the integer content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading_coefficient().is_negative() {
            g = -g;
        }
        self.div_scalar(&g)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        SparsePolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    /// Divides every coefficient by `c`; caller guarantees exactness.
    fn div_scalar(&self, c: &BigInt) -> Self {
        SparsePolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v / c))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps.get(var).copied().unwrap_or(0);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.to_vec();
            exps[var] -= 1;
            out.terms.insert(Monomial::new(exps), c * BigInt::from(e));
        }
        out
    }

    /// Evaluates at integer values for every variable.
    pub fn evaluate(&self, point: &[BigInt]) -> BigInt {
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(m, c)| {
                m.exps
                    .iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&e, x)| acc * num_traits::pow(x.clone(), e as usize))
            })
            .sum()
    }

    /// Re-embeds into a ring with more variables.
    pub fn widen(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars, "cannot shrink variable count");
        if nvars == self.nvars {
            return self.clone();
        }
        SparsePolynomial {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.widened(nvars), c.clone()))
                .collect(),
        }
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn aligned<'a>(&'a self, other: &'a Self) -> (usize, std::borrow::Cow<'a, Self>, std::borrow::Cow<'a, Self>) {
        use std::borrow::Cow;
        let n = self.nvars.max(other.nvars);
        let a = if self.nvars == n { Cow::Borrowed(self) } else { Cow::Owned(self.widen(n)) };
        let b = if other.nvars == n { Cow::Borrowed(other) } else { Cow::Owned(other.widen(n)) };
        (n, a, b)
    }

    /// Exact division; fails unless `divisor` divides `self` in Z[x].
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::NotDivisible);
        }
        let (n, a, d) = self.aligned(divisor);
        if let Some(c) = d.constant_value() {
            if a.terms.values().any(|v| !v.is_multiple_of(&c)) {
                return Err(PolyError::NotDivisible);
            }
            return Ok(a.div_scalar(&c));
        }
        let (dm, dc) = d.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = a.into_owned();
        let mut quot = Self::zero(n);
        while let Some((m, c)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            if !dm.divides(&m) {
                return Err(PolyError::NotDivisible);
            }
            let (q, r) = c.div_rem(&dc);
            if !r.is_zero() {
                return Err(PolyError::NotDivisible);
            }
            let qm = m.div(&dm);
            for (tm, tc) in &d.terms {
                rem.add_term(tm.mul(&qm), -(tc * &q));
            }
            quot.add_term(qm, q);
        }
        Ok(quot)
    }

    /// Checked division used on hot paths where exactness is a precondition.
    pub(crate) fn div_exact_unchecked(&self, divisor: &Self) -> Self {
        self.div_exact(divisor)
            .expect("exact division precondition violated")
    }
}

impl Add for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn add(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let (_, a, b) = self.aligned(rhs);
        let mut out = a.into_owned();
        for (m, c) in &b.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn sub(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let (_, a, b) = self.aligned(rhs);
        let mut out = a.into_owned();
        for (m, c) in &b.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn mul(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let (n, a, b) = self.aligned(rhs);
        let mut acc: std::collections::HashMap<Monomial, BigInt> =
            std::collections::HashMap::with_capacity(a.terms.len() * b.terms.len());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        SparsePolynomial {
            nvars: n,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn neg(self) -> SparsePolynomial {
        SparsePolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr for SparsePolynomial {
            type Output = SparsePolynomial;
            fn $f(self, rhs: SparsePolynomial) -> SparsePolynomial {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&SparsePolynomial> for SparsePolynomial {
            type Output = SparsePolynomial;
            fn $f(self, rhs: &SparsePolynomial) -> SparsePolynomial {
                (&self).$f(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for SparsePolynomial {
    type Output = SparsePolynomial;
    fn neg(self) -> SparsePolynomial {
        -&self
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.degree == 0 {
                factors.push(mag.to_string());
            }
            for (i, &e) in m.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{i}")),
                    _ => factors.push(format!("x{i}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SparsePolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn products() {
        assert_eq!((p("x0").widen(2) * p("x1")).to_string(), "x0*x1");
        assert_eq!((p("x0 + 1") * p("x0 - 1")).to_string(), "x0^2 - 1");
        assert_eq!(
            (p("x0 + x1") * p("x0 + x1")).to_string(),
            "x0^2 + 2*x0*x1 + x1^2"
        );
    }

    #[test]
    fn grlex_order() {
        let q = p("x1^3 + x0*x1 + x0^2 + 7 + x2");
        assert_eq!(q.to_string(), "x1^3 + x0^2 + x0*x1 + x2 + 7");
    }

    #[test]
    fn exact_division() {
        let a = p("x0^2 - x1^2");
        let b = p("x0 + x1");
        assert_eq!(a.div_exact(&b).unwrap(), p("x0 - x1"));
        assert_eq!(p("x0^2 + 1").div_exact(&p("x0 + 1")), Err(PolyError::NotDivisible));
        assert_eq!(p("6*x0 + 4").div_exact(&p("2")).unwrap(), p("3*x0 + 2"));
    }

    #[test]
    fn derivative_and_degree() {
        let q = p("x0^3*x1 - 2*x1^2");
        assert_eq!(q.derivative(0), p("3*x0^2*x1"));
        assert_eq!(q.derivative(1), p("x0^3 - 4*x1").widen(2));
        assert_eq!(q.total_degree(), Some(4));
        assert!(!q.is_homogeneous());
        assert_eq!(q.degree_in(1), 2);
    }
}
