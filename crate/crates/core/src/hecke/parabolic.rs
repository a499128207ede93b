//! The parabolic modules `M_J = H eps_J^+` (basis `M_w = H_w eps_J^+`,
//! `w` minimal in `w W_J`), `_JN = eps_J^- H` (basis `N_x = eps_J^- H_x`, `x`
//! minimal in `W_J x`) and `_JO_K = eps_J^- H eps_K^+` (basis `O_t`, `t`
//! minimal in a regular double coset), with their canonical bases.

use std::cell::RefCell;
use std::collections::HashMap;

use super::{add_scaled, add_term, canonical, tau_diff, HElem, Hecke};
use crate::coeff::Side;
use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::weyl::AffElem;

/// The right module `_JN`.
pub struct NModule<'h> {
    pub h: &'h Hecke,
    pub j: Vec<usize>,
    duals: RefCell<HashMap<AffElem, HElem>>,
}

impl<'h> NModule<'h> {
    pub fn new(h: &'h Hecke, j: &[usize]) -> Result<Self> {
        h.g.parabolic_elements(j)?;
        Ok(NModule {
            h,
            j: j.to_vec(),
            duals: RefCell::default(),
        })
    }

    /// `x` has no left descent in `J`.
    pub fn is_rep(&self, x: &AffElem) -> bool {
        self.j.iter().all(|&i| !self.h.g.is_left_descent(x, i))
    }

    fn require_rep(&self, x: &AffElem) -> Result<()> {
        if self.is_rep(x) {
            Ok(())
        } else {
            Err(Error::IllegalRepresentative(format!(
                "{} is not minimal in its left coset",
                self.h.g.format(x)
            )))
        }
    }

    /// `v * H_s` by the three-case rule.
    pub fn act_gen(&self, v: &HElem, s: usize) -> HElem {
        let mut out = HElem::new();
        for (x, c) in v {
            let xs = x.mul(&self.h.g.gens[s]);
            if !self.is_rep(&xs) {
                add_term(&mut out, x.clone(), &(c * &Laurent::mono(-1, -1)));
            } else if self.h.len(&xs) > self.h.len(x) {
                add_term(&mut out, xs, c);
            } else {
                add_term(&mut out, xs, c);
                add_term(&mut out, x.clone(), &(c * &tau_diff()));
            }
        }
        out
    }

    /// `v * h` for an arbitrary Hecke element.
    pub fn act(&self, v: &HElem, h: &HElem) -> HElem {
        let mut out = HElem::new();
        for (y, c) in h {
            let mut t = v.clone();
            for &s in &self.h.g.reduced_word(y) {
                t = self.act_gen(&t, s);
            }
            add_scaled(&mut out, &t, c);
        }
        out
    }

    pub fn dual_basis(&self, x: &AffElem) -> HElem {
        if let Some(v) = self.duals.borrow().get(x) {
            return v.clone();
        }
        let out = if self.h.len(x) == 0 {
            self.h.one()
        } else {
            let s = (0..self.h.g.gens.len())
                .find(|&s| self.h.g.is_right_descent(x, s))
                .expect("descent");
            let prev = self.dual_basis(&x.mul(&self.h.g.gens[s]));
            let mut t = self.act_gen(&prev, s);
            add_scaled(&mut t, &prev, &-tau_diff());
            t
        };
        self.duals.borrow_mut().insert(x.clone(), out.clone());
        out
    }

    pub fn dual(&self, v: &HElem) -> HElem {
        let mut out = HElem::new();
        for (x, c) in v {
            add_scaled(&mut out, &self.dual_basis(x), &c.bar());
        }
        out
    }

    /// `N_w + sum n^{±}_{y,w} N_y`.
    pub fn kl_basis(&self, w: &AffElem, side: Side) -> Result<HElem> {
        self.require_rep(w)?;
        canonical::solve(
            w.clone(),
            side,
            |x| self.h.len(x) as i64,
            |x| Ok(self.dual_basis(x)),
        )
    }
}

/// The left module `M_J`.
pub struct MModule<'h> {
    pub h: &'h Hecke,
    pub j: Vec<usize>,
    duals: RefCell<HashMap<AffElem, HElem>>,
}

impl<'h> MModule<'h> {
    pub fn new(h: &'h Hecke, j: &[usize]) -> Result<Self> {
        h.g.parabolic_elements(j)?;
        Ok(MModule {
            h,
            j: j.to_vec(),
            duals: RefCell::default(),
        })
    }

    /// `w` has no right descent in `J`.
    pub fn is_rep(&self, w: &AffElem) -> bool {
        self.j.iter().all(|&i| !self.h.g.is_right_descent(w, i))
    }

    /// `H_s * v`.
    pub fn act_gen(&self, s: usize, v: &HElem) -> HElem {
        let mut out = HElem::new();
        for (w, c) in v {
            let sw = self.h.g.gens[s].mul(w);
            if !self.is_rep(&sw) {
                add_term(&mut out, w.clone(), &(c * &Laurent::tau(1)));
            } else if self.h.len(&sw) > self.h.len(w) {
                add_term(&mut out, sw, c);
            } else {
                add_term(&mut out, sw, c);
                add_term(&mut out, w.clone(), &(c * &tau_diff()));
            }
        }
        out
    }

    pub fn dual_basis(&self, w: &AffElem) -> HElem {
        if let Some(v) = self.duals.borrow().get(w) {
            return v.clone();
        }
        let out = if self.h.len(w) == 0 {
            self.h.one()
        } else {
            let s = (0..self.h.g.gens.len())
                .find(|&s| self.h.g.is_left_descent(w, s))
                .expect("descent");
            let prev = self.dual_basis(&self.h.g.gens[s].mul(w));
            let mut t = self.act_gen(s, &prev);
            add_scaled(&mut t, &prev, &-tau_diff());
            t
        };
        self.duals.borrow_mut().insert(w.clone(), out.clone());
        out
    }

    /// `M_w + sum m^{±}_{y,w} M_y`.
    pub fn kl_basis(&self, w: &AffElem, side: Side) -> Result<HElem> {
        if !self.is_rep(w) {
            return Err(Error::IllegalRepresentative(format!(
                "{} is not minimal in its right coset",
                self.h.g.format(w)
            )));
        }
        canonical::solve(
            w.clone(),
            side,
            |x| self.h.len(x) as i64,
            |x| Ok(self.dual_basis(x)),
        )
    }
}

/// The module `_JO_K`, realized as the image of `_JN` under right
/// multiplication by `eps_K^+`: `N_{tz} eps_K^+ = tau^{l(z)} O_t` for `t`
/// minimal in a regular double coset and `z` in `W_K`, and zero on the
/// non-regular double cosets.
pub struct OModule<'h> {
    pub n: NModule<'h>,
    pub k: Vec<usize>,
    regular: RefCell<HashMap<AffElem, bool>>,
}

impl<'h> OModule<'h> {
    pub fn new(h: &'h Hecke, j: &[usize], k: &[usize]) -> Result<Self> {
        h.g.parabolic_elements(k)?;
        Ok(OModule {
            n: NModule::new(h, j)?,
            k: k.to_vec(),
            regular: RefCell::default(),
        })
    }

    fn is_regular(&self, t: &AffElem) -> Result<bool> {
        if let Some(&b) = self.regular.borrow().get(t) {
            return Ok(b);
        }
        let b = self.n.h.g.regular_double_coset(t, &self.n.j, &self.k)?;
        self.regular.borrow_mut().insert(t.clone(), b);
        Ok(b)
    }

    /// Minimal in its double coset and the coset is regular.
    pub fn is_rep(&self, t: &AffElem) -> Result<bool> {
        let g = &self.n.h.g;
        Ok(self.n.is_rep(t)
            && self.k.iter().all(|&i| !g.is_right_descent(t, i))
            && self.is_regular(t)?)
    }

    /// Right multiplication by `eps_K^+`, from `_JN` to `_JO_K`.
    pub fn project(&self, v: &HElem) -> Result<HElem> {
        let g = &self.n.h.g;
        let mut out = HElem::new();
        for (y, c) in v {
            let t = g.min_right_coset(&self.k, y);
            if !self.is_regular(&t)? {
                continue;
            }
            debug_assert!(self.n.is_rep(&t));
            let lz = self.n.h.len(y) as i32 - self.n.h.len(&t) as i32;
            add_term(&mut out, t, &c.shift(lz));
        }
        Ok(out)
    }

    pub fn dual_basis(&self, t: &AffElem) -> Result<HElem> {
        self.project(&self.n.dual_basis(t))
    }

    /// `O_u + sum o^{±}_{t,u} O_t`.
    pub fn kl_basis(&self, u: &AffElem, side: Side) -> Result<HElem> {
        if !self.is_rep(u)? {
            return Err(Error::IllegalRepresentative(format!(
                "{} is not minimal in a regular double coset",
                self.n.h.g.format(u)
            )));
        }
        canonical::solve(
            u.clone(),
            side,
            |x| self.n.h.len(x) as i64,
            |x| self.dual_basis(x),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root::RootContext;
    use crate::weyl::AffineWeyl;

    fn a2() -> Hecke {
        let ctx = RootContext::primitive("A2", 1).unwrap();
        Hecke::new(AffineWeyl::new(&ctx, false))
    }

    #[test]
    fn three_case_rule() {
        let h = a2();
        let n = NModule::new(&h, &[0]).unwrap();
        let e = h.g.identity();
        let ne = h.basis(&e);
        assert_eq!(n.act_gen(&ne, 0), HElem::from([(e.clone(), Laurent::mono(-1, -1))]));
        let s2 = h.g.gens[1].clone();
        assert_eq!(n.act_gen(&ne, 1), h.basis(&s2));
        let got = n.act_gen(&h.basis(&s2), 1);
        let expect = HElem::from([(e, Laurent::one()), (s2, tau_diff())]);
        assert_eq!(got, expect);
    }

    #[test]
    fn empty_parabolic_is_kl() {
        let h = a2();
        let n = NModule::new(&h, &[]).unwrap();
        let (w0, _, _) = h.g.parabolic_data(&[0, 1]).unwrap();
        for side in [Side::Plus, Side::Minus] {
            assert_eq!(n.kl_basis(&w0, side).unwrap(), h.kl_basis(&w0, side).unwrap());
        }
    }

    #[test]
    fn illegal_representative() {
        let h = a2();
        let n = NModule::new(&h, &[0]).unwrap();
        assert!(matches!(
            n.kl_basis(&h.g.gens[0], Side::Minus),
            Err(Error::IllegalRepresentative(_))
        ));
    }
}
