//! Weyl characters, Littlewood-Richardson peeling, Hall-Littlewood
//! polynomials and the Satake transition matrix, all for the finite Weyl
//! group of an [`AffineWeyl`] and its (possibly twisted) coroots
//! `X_a = m(a) a^vee`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::poly::{add_w, neg_w, scale_w, sub_w, LPoly, Weight};
use crate::root::RootContext;
use crate::weyl::{AffElem, AffineWeyl};

pub type GPoly = LPoly<Laurent>;

/// The finite root system used for characters.
pub struct CharSystem {
    pub g: AffineWeyl,
    /// Finite Weyl group elements with their lengths.
    pub w: Vec<(AffElem, u32)>,
    /// `2 rho~^vee = sum_a X_a`.
    pub two_rho: Weight,
}

impl CharSystem {
    pub fn new(g: AffineWeyl) -> Self {
        let nodes: Vec<usize> = (0..g.r).collect();
        let w = g
            .parabolic_elements(&nodes)
            .expect("finite Weyl group")
            .into_iter()
            .map(|x| {
                let l = g.length(&x);
                (x, l)
            })
            .collect();
        let mut two_rho = vec![0; g.r];
        for k in 0..g.roots.len() {
            two_rho = add_w(&two_rho, &g.x_coroot(k));
        }
        CharSystem { g, w, two_rho }
    }

    pub fn rank(&self) -> usize {
        self.g.r
    }

    /// `(lambda + rho~^vee) w - rho~^vee`.
    pub fn dot(&self, lambda: &[i32], w: &AffElem) -> Weight {
        let v = add_w(&scale_w(lambda, 2), &self.two_rho);
        sub_w(&w.act_linear(&v), &self.two_rho)
            .into_iter()
            .map(|c| {
                debug_assert_eq!(c % 2, 0);
                c / 2
            })
            .collect()
    }

    pub fn is_dominant(&self, lambda: &[i32]) -> bool {
        (0..self.g.r).all(|i| self.g.pairing(lambda, self.g.simple_root_index(i)) >= 0)
    }

    /// Divide by `prod_{a>0} (1 - Y_{-X_a})`, one factor at a time.
    pub fn divide_by_delta(&self, p: &GPoly) -> Result<GPoly> {
        let mut q = p.clone();
        for k in 0..self.g.roots.len() {
            q = q.div_one_minus(&neg_w(&self.g.x_coroot(k)))?;
        }
        Ok(q)
    }

    /// `sum_w (-1)^{l(w)} f.w` for the dot action on exponents.
    pub fn alternate(&self, f: &GPoly) -> GPoly {
        let mut out = GPoly::zero();
        for (w, l) in &self.w {
            for (mu, c) in f.terms() {
                let c = if l % 2 == 0 { c.clone() } else { -c };
                out.add_term(self.dot(mu, w), &c);
            }
        }
        out
    }

    pub fn character(&self, lambda: &[i32]) -> Result<GPoly> {
        if !self.is_dominant(lambda) {
            return Err(Error::NotDominant(lambda.to_vec()));
        }
        self.divide_by_delta(&self.alternate(&GPoly::y(lambda.to_vec())))
    }

    /// Weyl-group orbit invariance test for a polynomial.
    pub fn is_invariant(&self, p: &GPoly) -> bool {
        self.w
            .iter()
            .all(|(w, _)| p.map_keys(|mu| w.act_linear(mu)) == *p)
    }

    /// Decompose a `W`-invariant polynomial into characters by repeatedly
    /// removing the character of a dominance-maximal dominant term (ties
    /// broken by the lexicographically largest weight).
    pub fn peel(&self, p: &GPoly) -> Result<BTreeMap<Weight, Laurent>> {
        let mut rem = p.clone();
        let mut out = BTreeMap::new();
        let mut steps = 0;
        while !rem.is_zero() {
            steps += 1;
            if steps > 100_000 {
                return Err(Error::PeelingFailure("too many steps".into()));
            }
            let dom: Vec<&Weight> = rem.terms().map(|(w, _)| w).filter(|w| self.is_dominant(w)).collect();
            let top = dom
                .iter()
                .rev()
                .find(|mu| {
                    !dom.iter()
                        .any(|nu| nu != *mu && RootContext::dominance_leq(mu, nu))
                })
                .map(|w| (*w).clone())
                .ok_or_else(|| Error::PeelingFailure(format!("no dominant term in {rem}")))?;
            let c = rem.coeff(&top);
            let chi = self.character(&top)?;
            rem.sub_assign(&chi.scale(&c));
            out.insert(top, c);
        }
        Ok(out)
    }

    /// Littlewood-Richardson coefficients `chi_mu chi_lambda = sum c chi_zeta`.
    pub fn lr_coeffs(&self, mu: &[i32], lambda: &[i32]) -> Result<BTreeMap<Weight, i64>> {
        let prod = self.character(mu)?.mul(&self.character(lambda)?);
        let mut out = BTreeMap::new();
        for (w, c) in self.peel(&prod)? {
            let v = c.coeff(0);
            if c.len() != 1 || v <= 0 {
                return Err(Error::PeelingFailure(format!(
                    "coefficient {c} at {w:?} is not a positive integer"
                )));
            }
            out.insert(w, v);
        }
        Ok(out)
    }

    /// `<mu, 2 rho~> = sum_a <mu, a> / m(a)`.
    pub fn two_rho_pairing(&self, mu: &[i32]) -> i32 {
        (0..self.g.roots.len())
            .map(|k| self.g.pairing(mu, k) / self.g.roots[k].m)
            .sum()
    }

    /// Poincare polynomial of the stabilizer of a dominant `mu`, evaluated at
    /// `tau^{-2}`.
    pub fn stabilizer_poincare(&self, mu: &[i32]) -> Laurent {
        let mut p = Laurent::zero();
        for (w, l) in &self.w {
            if w.act_linear(mu) == mu {
                p.add_term(-2 * *l as i32, 1);
            }
        }
        p
    }

    /// `S(h_mu) = tau^{<mu,2rho~>} / P_{W_mu}(tau^{-2}) *
    /// sum_w (-1)^{l(w)} (Y_mu prod_a (1 - tau^{-2} Y_{-X_a})).w / Delta`.
    pub fn hall_littlewood(&self, mu: &[i32]) -> Result<GPoly> {
        if !self.is_dominant(mu) {
            return Err(Error::NotDominant(mu.to_vec()));
        }
        let r = self.rank();
        let mut f = GPoly::y(mu.to_vec());
        for k in 0..self.g.roots.len() {
            let fac = GPoly::constant(r, Laurent::one())
                .sub(&GPoly::mono(neg_w(&self.g.x_coroot(k)), Laurent::tau(-2)));
            f = f.mul(&fac);
        }
        let q = self.divide_by_delta(&self.alternate(&f))?;
        let p = self.stabilizer_poincare(mu);
        let shift = self.two_rho_pairing(mu);
        let mut out = GPoly::zero();
        for (w, c) in q.terms() {
            let c = c.div_exact(&p).ok_or_else(|| {
                Error::DivisionNotExact(format!("{c} by Poincare polynomial {p}"))
            })?;
            out.add_term(w.clone(), &c.shift(shift));
        }
        Ok(out)
    }

    /// Coefficients `p_{mu,lambda}` with `chi_lambda = sum p_{mu,lambda} S(h_mu)`.
    pub fn satake_transition(&self, lambda: &[i32]) -> Result<BTreeMap<Weight, Laurent>> {
        let mut rem = self.character(lambda)?;
        let mut out = BTreeMap::new();
        while !rem.is_zero() {
            let dom: Vec<&Weight> = rem.terms().map(|(w, _)| w).filter(|w| self.is_dominant(w)).collect();
            let top = dom
                .iter()
                .rev()
                .find(|mu| {
                    !dom.iter()
                        .any(|nu| nu != *mu && RootContext::dominance_leq(mu, nu))
                })
                .map(|w| (*w).clone())
                .ok_or_else(|| Error::PeelingFailure(format!("no dominant term in {rem}")))?;
            let s = self.hall_littlewood(&top)?;
            let lead = s.coeff(&top);
            let c = rem.coeff(&top).div_exact(&lead).ok_or_else(|| {
                Error::DivisionNotExact(format!("transition coefficient at {top:?}"))
            })?;
            rem.sub_assign(&s.scale(&c));
            out.insert(top, c);
        }
        Ok(out)
    }

    /// The transition coefficients rescaled by `tau^{<lambda, 2rho~>}`, which
    /// makes the diagonal entry equal to one.
    pub fn satake_transition_normalized(
        &self,
        lambda: &[i32],
    ) -> Result<BTreeMap<Weight, Laurent>> {
        let k = self.two_rho_pairing(lambda);
        Ok(self
            .satake_transition(lambda)?
            .into_iter()
            .map(|(w, c)| (w, c.shift(k)))
            .collect())
    }
}
