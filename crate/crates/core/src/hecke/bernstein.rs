//! The Bernstein presentation `H_W (x) Z_tau[Y~]` of the (twisted) affine
//! Hecke algebra, its polynomial representation, and the comparison with the
//! Iwahori-Matsumoto realization.
//!
//! Elements are kept in the normal form `sum_w H_w P_w(Y)`; moving a
//! polynomial past a generator uses
//! `P H_s = H_s P^s + (tau^{-1} - tau) (P^s - P) / (1 - Y_{-X_s})`,
//! which is the commutation relation rewritten with `Y` on the right.

use std::collections::BTreeMap;

use super::{tau_diff, HElem, Hecke};
use crate::error::Result;
use crate::laurent::Laurent;
use crate::poly::{neg_w, sub_w, LPoly, Weight};
use crate::weyl::{AffElem, AffineWeyl};

pub type GPoly = LPoly<Laurent>;

/// `sum_w H_w P_w(Y)` with `w` in the finite Weyl group.
pub type BElem = BTreeMap<AffElem, GPoly>;

fn add_into(acc: &mut BElem, w: AffElem, p: &GPoly) {
    if p.is_zero() {
        return;
    }
    let slot = acc.entry(w.clone()).or_default();
    slot.add_assign(p);
    if slot.is_zero() {
        acc.remove(&w);
    }
}

pub struct Bernstein {
    pub h: Hecke,
    /// `X_i`, the simple coroots of the translation lattice.
    pub xs: Vec<Weight>,
}

impl Bernstein {
    pub fn new(g: AffineWeyl) -> Self {
        let xs = (0..g.r).map(|i| g.x_coroot(g.simple_root_index(i))).collect();
        Bernstein { h: Hecke::new(g), xs }
    }

    pub fn rank(&self) -> usize {
        self.h.g.r
    }

    pub fn y(&self, beta: &[i32]) -> BElem {
        BElem::from([(self.h.g.identity(), GPoly::y(beta.to_vec()))])
    }

    pub fn hw(&self, word: &[usize]) -> BElem {
        BElem::from([(
            self.h.g.from_word(word),
            GPoly::constant(self.rank(), Laurent::one()),
        )])
    }

    pub fn from_poly(&self, p: &GPoly) -> BElem {
        let mut out = BElem::new();
        add_into(&mut out, self.h.g.identity(), p);
        out
    }

    /// `P^s`, the linear action of `s_i` on exponents.
    pub fn reflect(&self, p: &GPoly, i: usize) -> GPoly {
        let s = &self.h.g.gens[i];
        p.map_keys(|mu| s.act_linear(mu))
    }

    /// `(P^s - P) / (1 - Y_{-X_i})`, always a polynomial.
    pub fn divided_difference(&self, p: &GPoly, i: usize) -> Result<GPoly> {
        self.reflect(p, i).sub(p).div_one_minus(&neg_w(&self.xs[i]))
    }

    /// `b * H_s`.
    pub fn mul_gen(&self, b: &BElem, i: usize) -> Result<BElem> {
        let mut out = BElem::new();
        let coef = -tau_diff();
        for (u, p) in b {
            let us = self.h.mul_gen(&self.h.basis(u), i);
            let ps = self.reflect(p, i);
            for (x, c) in &us {
                add_into(&mut out, x.clone(), &ps.scale(c));
            }
            let corr = self.divided_difference(p, i)?.scale(&coef);
            add_into(&mut out, u.clone(), &corr);
        }
        Ok(out)
    }

    /// `H_w * b`.
    pub fn left_basis(&self, w: &AffElem, b: &BElem) -> BElem {
        let hw = self.h.basis(w);
        let mut out = BElem::new();
        for (u, p) in b {
            for (x, c) in self.h.mul(&hw, &self.h.basis(u)) {
                add_into(&mut out, x, &p.scale(&c));
            }
        }
        out
    }

    pub fn mul(&self, a: &BElem, b: &BElem) -> Result<BElem> {
        let mut out = BElem::new();
        for (w, p) in a {
            for (v, q) in b {
                let mut t = self.from_poly(p);
                for &s in &self.h.g.reduced_word(v) {
                    t = self.mul_gen(&t, s)?;
                }
                for (x, r) in self.left_basis(w, &t) {
                    add_into(&mut out, x, &r.mul(q));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, a: &BElem, b: &BElem) -> BElem {
        let mut out = a.clone();
        for (w, p) in b {
            add_into(&mut out, w.clone(), p);
        }
        out
    }

    pub fn sub(&self, a: &BElem, b: &BElem) -> BElem {
        let mut out = a.clone();
        for (w, p) in b {
            add_into(&mut out, w.clone(), &p.neg());
        }
        out
    }

    /// `H_s Y_beta - Y_{s beta} H_s`, computed inside the presentation.
    pub fn commutator(&self, beta: &[i32], i: usize) -> Result<BElem> {
        let lhs = self.mul(&self.hw(&[i]), &self.y(beta))?;
        let sb = self.h.g.gens[i].act_linear(beta);
        let rhs = self.mul(&self.y(&sb), &self.hw(&[i]))?;
        Ok(self.sub(&lhs, &rhs))
    }

    /// The right side `(tau^{-1} - tau)(Y_{s beta} - Y_beta)/(1 - Y_{-X_s})`.
    pub fn commutator_rhs(&self, beta: &[i32], i: usize) -> Result<GPoly> {
        Ok(self
            .divided_difference(&GPoly::y(beta.to_vec()), i)?
            .scale(&-tau_diff()))
    }

    // ---- polynomial representation ---------------------------------------

    /// `p . H_s` in `Z_tau[Y~] = H eps_I^+`:
    /// `Y_mu . H_s = ((tau^{-1} - tau Y_{-X}) Y_{s mu} + (tau - tau^{-1}) Y_mu) / (1 - Y_{-X})`.
    pub fn poly_act(&self, p: &GPoly, i: usize) -> Result<GPoly> {
        let r = self.rank();
        let mx = neg_w(&self.xs[i]);
        let a = GPoly::constant(r, Laurent::tau(-1)).sub(&GPoly::mono(mx.clone(), Laurent::tau(1)));
        let num = a.mul(&self.reflect(p, i)).add(&p.scale(&tau_diff()));
        num.div_one_minus(&mx)
    }

    pub fn poly_act_word(&self, p: &GPoly, word: &[usize]) -> Result<GPoly> {
        word.iter().try_fold(p.clone(), |acc, &i| self.poly_act(&acc, i))
    }

    // ---- Iwahori-Matsumoto realization -----------------------------------

    /// `Y_beta` inside the Coxeter presentation of the affine Hecke algebra:
    /// `H_{t(beta1)} H_{t(beta2)}^{-1}` with `beta = beta1 - beta2` and both
    /// `beta1`, `beta2` dominant, where `t(gamma)` is the translation
    /// `v -> v - gamma`.
    pub fn im_y(&self, beta: &[i32]) -> HElem {
        let g = &self.h.g;
        let two_rho: Weight = (0..g.roots.len()).fold(vec![0; g.r], |acc, k| {
            crate::poly::add_w(&acc, &g.x_coroot(k))
        });
        let dominant = |v: &[i32]| (0..g.r).all(|i| g.pairing(v, g.simple_root_index(i)) >= 0);
        let mut b2 = vec![0; g.r];
        while !dominant(&crate::poly::add_w(beta, &b2)) {
            b2 = crate::poly::add_w(&b2, &two_rho);
        }
        let b1 = crate::poly::add_w(beta, &b2);
        let t1 = AffElem::translation(neg_w(&b1));
        let t2 = AffElem::translation(neg_w(&b2));
        self.h.mul(&self.h.basis(&t1), &self.h.inverse_basis(&t2))
    }

    pub fn im_poly(&self, p: &GPoly) -> HElem {
        let mut out = HElem::new();
        for (w, c) in p.terms() {
            super::add_scaled(&mut out, &self.im_y(w), c);
        }
        out
    }

    /// Image of a Bernstein normal form `sum H_w P_w` in the Coxeter
    /// presentation.
    pub fn im(&self, b: &BElem) -> HElem {
        let mut out = HElem::new();
        for (w, p) in b {
            let t = self.h.mul(&self.h.basis(w), &self.im_poly(p));
            super::add_scaled(&mut out, &t, &Laurent::one());
        }
        out
    }

    /// Whether the commutation relation holds for `Y_beta` and `H_s` in the
    /// Coxeter presentation.
    pub fn im_relation_holds(&self, beta: &[i32], i: usize) -> Result<bool> {
        let hs = self.h.word(&[i]);
        let sb = self.h.g.gens[i].act_linear(beta);
        let mut lhs = self.h.mul(&hs, &self.im_y(beta));
        let rhs = self.h.mul(&self.im_y(&sb), &hs);
        super::add_scaled(&mut lhs, &rhs, &Laurent::constant(-1));
        Ok(lhs == self.im_poly(&self.commutator_rhs(beta, i)?))
    }

    /// `beta - s beta`, handy for tests.
    pub fn root_string(&self, beta: &[i32], i: usize) -> Weight {
        sub_w(beta, &self.h.g.gens[i].act_linear(beta))
    }
}
