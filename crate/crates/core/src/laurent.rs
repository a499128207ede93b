//! Laurent polynomials in a single variable `tau` with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// Sparse Laurent polynomial `sum c_e tau^e`. Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Laurent {
    terms: BTreeMap<i32, i64>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Laurent::mono(c, 0)
    }

    /// `c * tau^e`.
    pub fn mono(c: i64, e: i32) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(e, c);
        }
        Laurent { terms }
    }

    /// `tau^e`.
    pub fn tau(e: i32) -> Self {
        Laurent::mono(1, e)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(it: I) -> Self {
        let mut out = Laurent::zero();
        for (e, c) in it {
            out.add_term(e, c);
        }
        out
    }

    pub fn add_term(&mut self, e: i32, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(e).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0) == Some(&1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn coeff(&self, e: i32) -> i64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// `tau -> tau^{-1}`.
    pub fn bar(&self) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }

    /// `tau -> -tau^{-1}`, the ring map exchanging the two sign classes.
    pub fn flip(&self) -> Self {
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(&e, &c)| (-e, if e.rem_euclid(2) == 0 { c } else { -c }))
                .collect(),
        }
    }

    /// Multiply by `tau^k`.
    pub fn shift(&self, k: i32) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Laurent::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(&e, &v)| (e, v * c)).collect(),
        }
    }

    /// True iff every exponent is `>= 1` (the class `tau Z[tau]`).
    pub fn in_plus(&self) -> bool {
        self.terms.keys().all(|&e| e >= 1)
    }

    /// True iff every exponent is `<= -1` (the class `tau^{-1} Z[tau^{-1}]`).
    pub fn in_minus(&self) -> bool {
        self.terms.keys().all(|&e| e <= -1)
    }

    /// Part with strictly positive exponents.
    pub fn positive_part(&self) -> Self {
        Laurent {
            terms: self.terms.range(1..).map(|(&e, &c)| (e, c)).collect(),
        }
    }

    /// Part with strictly negative exponents.
    pub fn negative_part(&self) -> Self {
        Laurent {
            terms: self.terms.range(..0).map(|(&e, &c)| (e, c)).collect(),
        }
    }

    /// If this is `±tau^k`, returns `(sign, k)`.
    pub fn as_signed_power(&self) -> Option<(i64, i32)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&e, &c) = self.terms.iter().next().unwrap();
        if c == 1 || c == -1 {
            Some((c, e))
        } else {
            None
        }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Laurent) -> Option<Laurent> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        let (dlo, dhi) = (d.min_degree().unwrap(), d.max_degree().unwrap());
        let dlead = d.coeff(dhi);
        let mut rem = self.clone();
        let mut q = Laurent::zero();
        let floor = self.min_degree().unwrap() - dlo;
        while let Some(top) = rem.max_degree() {
            let c = rem.coeff(top);
            if c % dlead != 0 {
                return None;
            }
            let e = top - dhi;
            if e < floor {
                return None;
            }
            let t = Laurent::mono(c / dlead, e);
            rem -= &(&t * d);
            q += &t;
        }
        Some(q)
    }

    /// Evaluate at a real number.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.terms.iter().map(|(&e, &c)| c as f64 * x.powi(e)).sum()
    }

    /// Substitute `tau -> tau^k` (used for Poincare polynomials in `tau^2`).
    pub fn dilate(&self, k: i32) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(&e, &c)| (e * k, c)).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Laurent::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, &c)) in self.terms.iter().enumerate() {
            let abs = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let body = match e {
                0 => String::new(),
                1 => "tau".to_string(),
                _ => format!("tau^{e}"),
            };
            if body.is_empty() {
                write!(f, "{abs}")?;
            } else if abs == 1 {
                write!(f, "{body}")?;
            } else {
                write!(f, "{abs}*{body}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        for (&e, &c) in &rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl SubAssign<&Laurent> for Laurent {
    fn sub_assign(&mut self, rhs: &Laurent) {
        for (&e, &c) in &rhs.terms {
            self.add_term(e, -c);
        }
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        self.scale(-1)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Laurent {
            type Output = Laurent;
            fn $m(self, rhs: Laurent) -> Laurent {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        self.scale(-1)
    }
}
