//! The generic coefficient ring `Z[tau^±1, g_k]` with the relations
//! `g_0 = -1`, `g_k = g_{k mod n}` and `g_k g_{-k} = tau^2`.
//!
//! Elements are kept in a reduced normal form: only `g_k` with `2k < n`
//! carry arbitrary exponents, `g_k` with `2k > n` are rewritten as
//! `tau^2 g_{n-k}^{-1}`, and (for even `n`) `g_{n/2}` has exponent 0 or 1.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};
use crate::laurent::Laurent;

/// A monomial `tau^tau * prod g_k^{g[k-1]}` in normal form for a fixed `n`.
///
/// The derived order (tau exponent first, then the g-exponent vector) is the
/// order used by the text rendering.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    pub tau: i32,
    pub g: Vec<i32>,
}

impl Mono {
    pub fn trivial(n: u32) -> Self {
        Mono {
            tau: 0,
            g: vec![0; n.saturating_sub(1) as usize],
        }
    }

    pub fn is_tau_pure(&self) -> bool {
        self.g.iter().all(|&e| e == 0)
    }

    fn fold_half(&mut self, n: u32) {
        if n % 2 == 0 && n >= 2 {
            let h = (n / 2) as usize;
            let e = self.g[h - 1];
            self.tau += 2 * e.div_euclid(2);
            self.g[h - 1] = e.rem_euclid(2);
        }
    }

    fn mul(&self, other: &Mono, n: u32) -> Mono {
        let mut out = Mono {
            tau: self.tau + other.tau,
            g: self.g.iter().zip(&other.g).map(|(a, b)| a + b).collect(),
        };
        out.fold_half(n);
        out
    }

    /// Inverse monomial. This is also the bar involution on monomials, since
    /// bar inverts `tau` and every `g_k`.
    fn inverse(&self, n: u32) -> Mono {
        let mut out = Mono {
            tau: -self.tau,
            g: self.g.iter().map(|e| -e).collect(),
        };
        out.fold_half(n);
        out
    }
}

/// Reduce a raw monomial `tau^tau * prod g_k^e` (arbitrary integer `k`) to normal
/// form. Returns the sign contributed by powers of `g_0 = -1`.
pub fn normalize(n: u32, tau: i32, raw: &[(i64, i32)]) -> (i64, Mono) {
    assert!(n >= 1, "cover degree must be positive");
    let mut m = Mono {
        tau,
        g: vec![0; (n - 1) as usize],
    };
    let mut sign = 1i64;
    for &(k, e) in raw {
        let k = k.rem_euclid(n as i64) as u32;
        if k == 0 {
            if e.rem_euclid(2) == 1 {
                sign = -sign;
            }
        } else if 2 * k < n {
            m.g[(k - 1) as usize] += e;
        } else if 2 * k > n {
            m.tau += 2 * e;
            m.g[(n - k - 1) as usize] -= e;
        } else {
            m.g[(k - 1) as usize] += e;
        }
    }
    m.fold_half(n);
    (sign, m)
}

/// Element of the coefficient ring. `n` is the cover degree; coefficients
/// without any `g` are compatible with every `n` and are promoted on demand.
#[derive(Clone)]
pub struct Coeff {
    n: u32,
    terms: BTreeMap<Mono, i64>,
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff {
            n: 1,
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Coeff::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        let mut out = Coeff::zero();
        out.add_mono(Mono::trivial(1), c);
        out
    }

    /// `c * tau^e`.
    pub fn tau_mono(c: i64, e: i32) -> Self {
        let mut out = Coeff::zero();
        out.add_mono(Mono { tau: e, g: vec![] }, c);
        out
    }

    pub fn tau(e: i32) -> Self {
        Coeff::tau_mono(1, e)
    }

    /// The formal Gauss sum `g_k` for cover degree `n` (any integer `k`).
    pub fn g(n: u32, k: i64) -> Self {
        Coeff::monomial(n, 1, 0, &[(k, 1)])
    }

    /// `c * tau^tau * prod g_k^e`, normalized.
    pub fn monomial(n: u32, c: i64, tau: i32, raw: &[(i64, i32)]) -> Self {
        let (s, m) = normalize(n, tau, raw);
        let mut out = Coeff {
            n,
            terms: BTreeMap::new(),
        };
        out.add_mono(m, s * c);
        out
    }

    pub fn from_laurent(l: &Laurent) -> Self {
        let mut out = Coeff::zero();
        for (e, c) in l.terms() {
            out.add_mono(Mono { tau: e, g: vec![] }, c);
        }
        out
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, &c)| c == 1 && m.tau == 0 && m.is_tau_pure())
                .unwrap_or(false)
    }

    pub fn is_tau_pure(&self) -> bool {
        self.terms.keys().all(Mono::is_tau_pure)
    }

    fn add_mono(&mut self, m: Mono, c: i64) {
        if c == 0 {
            return;
        }
        let m = if m.g.len() + 1 == self.n as usize || (m.g.is_empty() && self.n <= 1) {
            m
        } else {
            debug_assert!(m.is_tau_pure());
            Mono {
                tau: m.tau,
                g: vec![0; self.n.saturating_sub(1) as usize],
            }
        };
        let slot = self.terms.entry(m.clone()).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&m);
        }
    }

    /// Re-home a coefficient on cover degree `n`. Only `g`-free coefficients
    /// may change their degree.
    pub fn with_n(&self, n: u32) -> Coeff {
        if n == self.n {
            return self.clone();
        }
        assert!(
            self.is_tau_pure(),
            "cannot move a coefficient involving g from n={} to n={}",
            self.n,
            n
        );
        let mut out = Coeff {
            n,
            terms: BTreeMap::new(),
        };
        for (m, &c) in &self.terms {
            out.add_mono(
                Mono {
                    tau: m.tau,
                    g: vec![0; n.saturating_sub(1) as usize],
                },
                c,
            );
        }
        out
    }

    fn common_n(&self, other: &Coeff) -> u32 {
        if self.n == other.n {
            self.n
        } else if self.is_tau_pure() {
            other.n
        } else if other.is_tau_pure() {
            self.n
        } else {
            panic!(
                "mixing coefficients for different cover degrees {} and {}",
                self.n, other.n
            )
        }
    }

    pub fn scale(&self, c: i64) -> Coeff {
        if c == 0 {
            return Coeff::zero();
        }
        Coeff {
            n: self.n,
            terms: self.terms.iter().map(|(m, &v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Multiply by `tau^k`.
    pub fn shift_tau(&self, k: i32) -> Coeff {
        Coeff {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, &v)| {
                    (
                        Mono {
                            tau: m.tau + k,
                            g: m.g.clone(),
                        },
                        v,
                    )
                })
                .collect(),
        }
    }

    /// Ring involution with `tau -> tau^{-1}` and `g_k -> g_k^{-1} = tau^{-2} g_{n-k}`.
    pub fn bar(&self) -> Coeff {
        let mut out = Coeff {
            n: self.n,
            terms: BTreeMap::new(),
        };
        for (m, &c) in &self.terms {
            out.add_mono(m.inverse(self.n), c);
        }
        out
    }

    /// Inverse of a unit `±tau^a prod g_k^e`.
    pub fn invert_unit(&self) -> Result<Coeff> {
        if self.terms.len() != 1 {
            return Err(Error::NotAUnit(self.to_string()));
        }
        let (m, &c) = self.terms.iter().next().unwrap();
        if c != 1 && c != -1 {
            return Err(Error::NotAUnit(self.to_string()));
        }
        let mut out = Coeff {
            n: self.n,
            terms: BTreeMap::new(),
        };
        out.add_mono(m.inverse(self.n), c);
        Ok(out)
    }

    /// The underlying Laurent polynomial if no `g` occurs.
    pub fn to_laurent(&self) -> Option<Laurent> {
        if !self.is_tau_pure() {
            return None;
        }
        Some(Laurent::from_terms(self.terms.iter().map(|(m, &c)| (m.tau, c))))
    }

    /// Membership in `tau Z[tau]` (plus) or `tau^{-1} Z[tau^{-1}]` (minus).
    pub fn sign_class(&self, side: Side) -> Result<bool> {
        let l = self.to_laurent().ok_or(Error::NotTauPure)?;
        Ok(match side {
            Side::Plus => l.in_plus(),
            Side::Minus => l.in_minus(),
        })
    }

    /// Quantum specialization `g_k -> tau` for `k != 0`.
    pub fn quantum(&self) -> Laurent {
        let mut out = Laurent::zero();
        for (m, &c) in &self.terms {
            let e = m.tau + m.g.iter().sum::<i32>();
            out.add_term(e, c);
        }
        out
    }

    /// Parse the canonical text rendering (any equivalent spelling is accepted
    /// and normalized).
    pub fn parse(s: &str, n: u32) -> Result<Coeff> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty coefficient".into()));
        }
        let mut pieces: Vec<(i64, String)> = Vec::new();
        let mut cur = String::new();
        let mut sign = 1i64;
        let mut prev: Option<char> = None;
        for ch in s.chars() {
            if (ch == '+' || ch == '-') && prev != Some('^') && !cur.trim().is_empty() {
                pieces.push((sign, std::mem::take(&mut cur)));
                sign = if ch == '-' { -1 } else { 1 };
            } else if (ch == '+' || ch == '-') && prev != Some('^') && cur.trim().is_empty() {
                if ch == '-' {
                    sign = -sign;
                }
            } else {
                cur.push(ch);
            }
            if !ch.is_whitespace() {
                prev = Some(ch);
            }
        }
        pieces.push((sign, cur));
        let mut out = Coeff {
            n,
            terms: BTreeMap::new(),
        };
        for (sign, body) in pieces {
            let body = body.trim();
            if body.is_empty() {
                return Err(Error::Parse(format!("dangling sign in {s:?}")));
            }
            let mut c = sign;
            let mut tau = 0i32;
            let mut raw = Vec::new();
            for f in body.split('*') {
                let f = f.trim();
                let (base, exp) = match f.split_once('^') {
                    Some((b, e)) => (
                        b.trim(),
                        e.trim()
                            .parse::<i32>()
                            .map_err(|_| Error::Parse(format!("bad exponent in {f:?}")))?,
                    ),
                    None => (f, 1),
                };
                if base == "tau" {
                    tau += exp;
                } else if let Some(k) = base.strip_prefix('g') {
                    let k: i64 = k
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad Gauss index in {f:?}")))?;
                    raw.push((k, exp));
                } else if f.contains('^') {
                    return Err(Error::Parse(format!("unexpected factor {f:?}")));
                } else {
                    let v: i64 = base
                        .parse()
                        .map_err(|_| Error::Parse(format!("unexpected factor {f:?}")))?;
                    c *= v;
                }
            }
            let (sg, m) = normalize(n, tau, &raw);
            out.add_mono(m, c * sg);
        }
        Ok(out)
    }
}

/// Sign class selector for `tau Z[tau]` versus `tau^{-1} Z[tau^{-1}]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Plus,
    Minus,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Plus => "plus",
            Side::Minus => "minus",
        })
    }
}

impl PartialEq for Coeff {
    fn eq(&self, other: &Coeff) -> bool {
        if self.n == other.n {
            return self.terms == other.terms;
        }
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        if self.is_tau_pure() && other.is_tau_pure() {
            return self.to_laurent() == other.to_laurent();
        }
        false
    }
}

impl Eq for Coeff {}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, &c)) in self.terms.iter().enumerate() {
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
            let mut factors: Vec<String> = Vec::new();
            match m.tau {
                0 => {}
                1 => factors.push("tau".into()),
                a => factors.push(format!("tau^{a}")),
            }
            for (k, &e) in m.g.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("g{}", k + 1)),
                    e => factors.push(format!("g{}^{}", k + 1, e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs == 1 {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coeff[n={}]({self})", self.n)
    }
}

impl AddAssign<&Coeff> for Coeff {
    fn add_assign(&mut self, rhs: &Coeff) {
        if rhs.terms.is_empty() {
            return;
        }
        let n = self.common_n(rhs);
        if n != self.n {
            *self = self.with_n(n);
        }
        for (m, &c) in &rhs.terms {
            self.add_mono(m.clone(), c);
        }
    }
}

impl SubAssign<&Coeff> for Coeff {
    fn sub_assign(&mut self, rhs: &Coeff) {
        if rhs.terms.is_empty() {
            return;
        }
        let n = self.common_n(rhs);
        if n != self.n {
            *self = self.with_n(n);
        }
        for (m, &c) in &rhs.terms {
            self.add_mono(m.clone(), -c);
        }
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        if self.terms.is_empty() || rhs.terms.is_empty() {
            return Coeff::zero();
        }
        let n = self.common_n(rhs);
        let a = if self.n == n { None } else { Some(self.with_n(n)) };
        let b = if rhs.n == n { None } else { Some(rhs.with_n(n)) };
        let a = a.as_ref().unwrap_or(self);
        let b = b.as_ref().unwrap_or(rhs);
        let mut out = Coeff {
            n,
            terms: BTreeMap::new(),
        };
        for (m1, &c1) in &a.terms {
            for (m2, &c2) in &b.terms {
                out.add_mono(m1.mul(m2, n), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        self.scale(-1)
    }
}

impl Add for Coeff {
    type Output = Coeff;
    fn add(self, rhs: Coeff) -> Coeff {
        &self + &rhs
    }
}

impl Sub for Coeff {
    type Output = Coeff;
    fn sub(self, rhs: Coeff) -> Coeff {
        &self - &rhs
    }
}

impl Mul for Coeff {
    type Output = Coeff;
    fn mul(self, rhs: Coeff) -> Coeff {
        &self * &rhs
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        self.scale(-1)
    }
}

impl From<&Laurent> for Coeff {
    fn from(l: &Laurent) -> Coeff {
        Coeff::from_laurent(l)
    }
}
