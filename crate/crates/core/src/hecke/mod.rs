//! Hecke algebras of the (affine) Weyl groups in the normalization
//! `(H_s - tau)(H_s + tau^{-1}) = 0`, their Kazhdan-Lusztig bases, the
//! parabolic modules, the Bernstein presentation and the character theory
//! of the polynomial representation.

pub mod bernstein;
pub mod canonical;
pub mod characters;
pub mod parabolic;

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use crate::coeff::Side;
use crate::error::Result;
use crate::laurent::Laurent;
use crate::weyl::{AffElem, AffineWeyl};

/// Coordinates in the standard basis `{H_x}` (or `{N_x}`, `{M_x}`, `{O_x}` for
/// the parabolic modules). Zero coefficients are never stored.
pub type HElem = BTreeMap<AffElem, Laurent>;

/// Add `c * v` into `acc`, dropping cancelled terms.
pub fn add_scaled(acc: &mut HElem, v: &HElem, c: &Laurent) {
    for (x, a) in v {
        add_term(acc, x.clone(), &(a * c));
    }
}

pub fn add_term(acc: &mut HElem, x: AffElem, c: &Laurent) {
    if c.is_zero() {
        return;
    }
    let slot = acc.entry(x.clone()).or_default();
    *slot += c;
    if slot.is_zero() {
        acc.remove(&x);
    }
}

pub fn scaled(v: &HElem, c: &Laurent) -> HElem {
    let mut out = HElem::new();
    add_scaled(&mut out, v, c);
    out
}

/// `tau - tau^{-1}`.
pub fn tau_diff() -> Laurent {
    Laurent::from_terms([(1, 1), (-1, -1)])
}

/// The Hecke algebra of the Coxeter group generated by `g.gens`, with
/// per-instance memo tables (the type is deliberately not `Sync`).
pub struct Hecke {
    pub g: AffineWeyl,
    lengths: RefCell<HashMap<AffElem, u32>>,
    bars: RefCell<HashMap<AffElem, HElem>>,
    kl: RefCell<HashMap<(AffElem, Side), HElem>>,
}

impl Hecke {
    pub fn new(g: AffineWeyl) -> Self {
        Hecke {
            g,
            lengths: RefCell::default(),
            bars: RefCell::default(),
            kl: RefCell::default(),
        }
    }

    pub fn len(&self, x: &AffElem) -> u32 {
        if let Some(&l) = self.lengths.borrow().get(x) {
            return l;
        }
        let l = self.g.length(x);
        self.lengths.borrow_mut().insert(x.clone(), l);
        l
    }

    pub fn basis(&self, x: &AffElem) -> HElem {
        HElem::from([(x.clone(), Laurent::one())])
    }

    pub fn one(&self) -> HElem {
        self.basis(&self.g.identity())
    }

    /// `H_x` for the group element spelled by `word`.
    pub fn word(&self, word: &[usize]) -> HElem {
        self.basis(&self.g.from_word(word))
    }

    /// `h * H_s`.
    pub fn mul_gen(&self, h: &HElem, s: usize) -> HElem {
        let mut out = HElem::new();
        for (x, c) in h {
            let xs = x.mul(&self.g.gens[s]);
            let up = self.len(&xs) > self.len(x);
            add_term(&mut out, xs, c);
            if !up {
                add_term(&mut out, x.clone(), &(c * &tau_diff()));
            }
        }
        out
    }

    /// `H_s * h`.
    pub fn gen_mul(&self, s: usize, h: &HElem) -> HElem {
        let mut out = HElem::new();
        for (x, c) in h {
            let sx = self.g.gens[s].mul(x);
            let up = self.len(&sx) > self.len(x);
            add_term(&mut out, sx, c);
            if !up {
                add_term(&mut out, x.clone(), &(c * &tau_diff()));
            }
        }
        out
    }

    /// `h * (H_s)^{-1} = h * (H_s + tau^{-1} - tau)`.
    pub fn mul_gen_inv(&self, h: &HElem, s: usize) -> HElem {
        let mut out = self.mul_gen(h, s);
        add_scaled(&mut out, h, &-tau_diff());
        out
    }

    pub fn mul(&self, a: &HElem, b: &HElem) -> HElem {
        let mut out = HElem::new();
        for (y, c) in b {
            let mut t = a.clone();
            for &s in &self.g.reduced_word(y) {
                t = self.mul_gen(&t, s);
            }
            add_scaled(&mut out, &t, c);
        }
        out
    }

    pub fn add(&self, a: &HElem, b: &HElem) -> HElem {
        let mut out = a.clone();
        add_scaled(&mut out, b, &Laurent::one());
        out
    }

    /// `(H_x)^{-1}`.
    pub fn inverse_basis(&self, x: &AffElem) -> HElem {
        let mut t = self.one();
        for &s in self.g.reduced_word(x).iter().rev() {
            t = self.mul_gen_inv(&t, s);
        }
        t
    }

    /// `d(H_x) = (H_{x^{-1}})^{-1}`, built from `d(H_{xs}) = d(H_x) d(H_s)`.
    pub fn bar_basis(&self, x: &AffElem) -> HElem {
        if let Some(v) = self.bars.borrow().get(x) {
            return v.clone();
        }
        let out = if self.len(x) == 0 {
            self.one()
        } else {
            let s = (0..self.g.gens.len())
                .find(|&s| self.g.is_right_descent(x, s))
                .expect("descent");
            let prev = self.bar_basis(&x.mul(&self.g.gens[s]));
            self.mul_gen_inv(&prev, s)
        };
        self.bars.borrow_mut().insert(x.clone(), out.clone());
        out
    }

    pub fn bar(&self, h: &HElem) -> HElem {
        let mut out = HElem::new();
        for (x, c) in h {
            add_scaled(&mut out, &self.bar_basis(x), &c.bar());
        }
        out
    }

    /// Kazhdan-Lusztig element `H_w + sum_{y<w} h^{±}_{y,w} H_y`, self-dual with
    /// lower coefficients in `tau Z[tau]` (plus) or `tau^{-1} Z[tau^{-1}]` (minus).
    pub fn kl_basis(&self, w: &AffElem, side: Side) -> Result<HElem> {
        let key = (w.clone(), side);
        if let Some(v) = self.kl.borrow().get(&key) {
            return Ok(v.clone());
        }
        let out = canonical::solve(
            w.clone(),
            side,
            |x| self.len(x) as i64,
            |x| Ok(self.bar_basis(x)),
        )?;
        self.kl.borrow_mut().insert(key, out.clone());
        Ok(out)
    }

    /// The coefficient `h^{±}_{y,w}`.
    pub fn kl_coeff(&self, y: &AffElem, w: &AffElem, side: Side) -> Result<Laurent> {
        Ok(self
            .kl_basis(w, side)?
            .get(y)
            .cloned()
            .unwrap_or_default())
    }

    /// The classical polynomial `P_{y,w} = tau^{l(w)-l(y)} h^-_{y,w}`.
    pub fn kl_polynomial(&self, y: &AffElem, w: &AffElem) -> Result<Laurent> {
        let h = self.kl_coeff(y, w, Side::Minus)?;
        Ok(h.shift(self.len(w) as i32 - self.len(y) as i32))
    }

    /// `eps_J^+ = tau^{-l(w_J)} sum tau^{l(w)} H_w` and
    /// `eps_J^- = (-tau)^{l(w_J)} sum (-tau^{-1})^{l(w)} H_w`.
    pub fn symmetrizer(&self, j: &[usize], side: Side) -> Result<HElem> {
        let els = self.g.parabolic_elements(j)?;
        let top = els.iter().map(|x| self.len(x)).max().unwrap_or(0) as i32;
        let mut out = HElem::new();
        for x in els {
            let l = self.len(&x) as i32;
            let c = match side {
                Side::Plus => Laurent::tau(l - top),
                Side::Minus => Laurent::mono(if (l + top) % 2 == 0 { 1 } else { -1 }, top - l),
            };
            add_term(&mut out, x, &c);
        }
        Ok(out)
    }

    pub fn format(&self, h: &HElem) -> String {
        if h.is_empty() {
            return "0".into();
        }
        h.iter()
            .map(|(x, c)| format!("({c})*H[{}]", self.g.format(x)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}
