//! Sparse Laurent polynomials in the group algebra of a coweight lattice,
//! generic over the coefficient ring.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::laurent::Laurent;

/// The handful of ring operations the polynomial code needs.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(c: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add_to(&mut self, other: &Self);
    fn sub_from(&mut self, other: &Self);
    fn product(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
}

impl Ring for Laurent {
    fn zero() -> Self {
        Laurent::zero()
    }
    fn one() -> Self {
        Laurent::one()
    }
    fn from_int(c: i64) -> Self {
        Laurent::constant(c)
    }
    fn is_zero(&self) -> bool {
        Laurent::is_zero(self)
    }
    fn add_to(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_from(&mut self, other: &Self) {
        *self -= other;
    }
    fn product(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
}

impl Ring for Coeff {
    fn zero() -> Self {
        Coeff::zero()
    }
    fn one() -> Self {
        Coeff::one()
    }
    fn from_int(c: i64) -> Self {
        Coeff::from_int(c)
    }
    fn is_zero(&self) -> bool {
        Coeff::is_zero(self)
    }
    fn add_to(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_from(&mut self, other: &Self) {
        *self -= other;
    }
    fn product(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
}

/// Coweight coordinates (simple-coroot basis).
pub type Weight = Vec<i32>;

/// Finitely supported map `Y -> R`, read as `sum c_w Y_w`.
#[derive(Clone, PartialEq)]
pub struct LPoly<R> {
    terms: BTreeMap<Weight, R>,
}

impl<R: Ring> Default for LPoly<R> {
    fn default() -> Self {
        LPoly {
            terms: BTreeMap::new(),
        }
    }
}

pub fn add_w(a: &[i32], b: &[i32]) -> Weight {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_w(a: &[i32], b: &[i32]) -> Weight {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg_w(a: &[i32]) -> Weight {
    a.iter().map(|x| -x).collect()
}

pub fn scale_w(a: &[i32], k: i32) -> Weight {
    a.iter().map(|x| x * k).collect()
}

impl<R: Ring> LPoly<R> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c * Y_w`.
    pub fn mono(w: Weight, c: R) -> Self {
        let mut out = Self::zero();
        out.add_term(w, &c);
        out
    }

    /// `Y_w`.
    pub fn y(w: Weight) -> Self {
        Self::mono(w, R::one())
    }

    pub fn constant(rank: usize, c: R) -> Self {
        Self::mono(vec![0; rank], c)
    }

    pub fn add_term(&mut self, w: Weight, c: &R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(slot) => {
                slot.add_to(c);
                if slot.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Weight, &R)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Weight, R> {
        self.terms
    }

    pub fn coeff(&self, w: &[i32]) -> R {
        self.terms.get(w).cloned().unwrap_or_else(R::zero)
    }

    pub fn get(&self, w: &[i32]) -> Option<&R> {
        self.terms.get(w)
    }

    pub fn leading(&self) -> Option<(&Weight, &R)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn sub_assign(&mut self, other: &Self) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), &c.negated());
        }
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.negated())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(add_w(w1, w2), &c1.product(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero();
        if c.is_zero() {
            return out;
        }
        for (w, v) in &self.terms {
            out.add_term(w.clone(), &v.product(c));
        }
        out
    }

    /// Multiply by `Y_b`.
    pub fn shift(&self, b: &[i32]) -> Self {
        LPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (add_w(w, b), c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&R) -> R) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &f(c));
        }
        out
    }

    pub fn map_keys(&self, f: impl Fn(&[i32]) -> Weight) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(f(w), c);
        }
        out
    }

    /// Exact quotient by `1 - Y_gamma` (`gamma != 0`).
    pub fn div_one_minus(&self, gamma: &[i32]) -> Result<Self> {
        assert!(gamma.iter().any(|&x| x != 0), "division by 1 - Y_0");
        let zero = vec![0; gamma.len()];
        if gamma > &zero[..] {
            // 1 - Y_g = -Y_g (1 - Y_{-g})
            let mg = neg_w(gamma);
            return Ok(self.div_one_minus(&mg)?.shift(&mg).neg());
        }
        // gamma is lex-negative: the top term of q survives in q(1 - Y_gamma).
        let mut rem = self.clone();
        let mut q = Self::zero();
        let floor = match self.terms.keys().next() {
            Some(lo) => sub_w(lo, gamma),
            None => return Ok(q),
        };
        while let Some((top, c)) = rem.leading() {
            if *top < floor {
                return Err(Error::DivisionNotExact(format!(
                    "remainder at {top:?} dividing by 1 - Y{gamma:?}"
                )));
            }
            let (top, c) = (top.clone(), c.clone());
            rem.add_term(top.clone(), &c.negated());
            rem.add_term(add_w(&top, gamma), &c);
            q.add_term(top, &c);
        }
        Ok(q)
    }
}

impl<R: Ring> fmt::Display for LPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("({c})*Y{w:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<R: Ring> fmt::Debug for LPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LPoly({self})")
    }
}

/// A formal quotient `num / den` of polynomials, compared by cross-multiplication.
#[derive(Clone)]
pub struct Frac<R> {
    pub num: LPoly<R>,
    pub den: LPoly<R>,
}

impl<R: Ring> Frac<R> {
    pub fn new(num: LPoly<R>, den: LPoly<R>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Frac { num, den }
    }

    pub fn from_poly(p: LPoly<R>, rank: usize) -> Self {
        Frac {
            num: p,
            den: LPoly::constant(rank, R::one()),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Frac::new(self.num.add(&o.num), self.den.clone());
        }
        Frac::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn mul_poly(&self, p: &LPoly<R>) -> Self {
        Frac::new(self.num.mul(p), self.den.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Frac::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<R: Ring> fmt::Debug for Frac<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl<R: Ring> PartialEq for Frac<R> {
    fn eq(&self, o: &Self) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}
