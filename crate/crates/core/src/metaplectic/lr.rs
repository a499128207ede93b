//! Twisted Littlewood-Richardson polynomials, the action of the spherical
//! Hecke algebra on `V_sph`, and the tensor-product and Steinberg-point
//! identities.
//!
//! `[f] * c~_lambda = [f chi_lambda]` where `chi_lambda` is the character of
//! the twisted root system; the Hall-Littlewood elements act through
//! `S(h_lambda)`.

use std::collections::BTreeMap;
use std::fmt;

use super::{lift, Coords, Metaplectic, PolyElement, QPoly, SphericalElement};
use crate::coeff::{Coeff, Side};
use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::poly::{add_w, scale_w, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorVariant {
    /// `G^-_{lambda0} * c~_zeta = G^-_{lambda0 + zeta}`.
    Minus,
    /// `G^+_{lambda0^dagger} * c~_zeta = G^+_{lambda0^dagger + zeta}`.
    PlusDagger,
}

impl fmt::Display for TensorVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TensorVariant::Minus => "minus",
            TensorVariant::PlusDagger => "plus-dagger",
        })
    }
}

/// Outcome of a tensor-product check, with both sides in v-coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorCheck {
    pub holds: bool,
    /// The weight whose canonical basis element is multiplied.
    pub base: Weight,
    pub lhs: BTreeMap<Weight, Laurent>,
    pub rhs: BTreeMap<Weight, Laurent>,
}

impl Metaplectic {
    fn require_tilde_dominant(&self, lambda: &[i32]) -> Result<()> {
        self.ctx.require_dominant(lambda)?;
        if !self.ctx.in_tilde(lambda) {
            return Err(Error::NotInTildeLattice(lambda.to_vec()));
        }
        Ok(())
    }

    /// `Y_mu chi_lambda` before straightening.
    fn times_character(&self, mu: &[i32], lambda: &[i32]) -> Result<QPoly> {
        self.require_tilde_dominant(lambda)?;
        Ok(self.chars.character(lambda)?.shift(mu))
    }

    /// `[Y_mu] * c~_lambda = sum_zeta gQ^lambda_{zeta,mu} [Y_zeta]`.
    pub fn glr(&self, mu: &[i32], lambda: &[i32]) -> Result<BTreeMap<Weight, Coeff>> {
        self.ctx.require_dominant(mu)?;
        let f = lift(&self.times_character(mu, lambda)?);
        Ok(self.straighten(&f, Coords::Y)?.terms.into_terms())
    }

    /// The quantum polynomials: `[v_mu] * c~_lambda = sum_zeta Q^lambda_{zeta,mu} [v_zeta]`.
    pub fn glr_quantum(&self, mu: &[i32], lambda: &[i32]) -> Result<BTreeMap<Weight, Laurent>> {
        self.ctx.require_dominant(mu)?;
        Ok(self
            .straighten_v(&self.times_character(mu, lambda)?)?
            .into_terms())
    }

    /// `[Y_mu] * h~_lambda = [Y_mu S(h_lambda)]`.
    pub fn h_action(&self, mu: &[i32], lambda: &[i32]) -> Result<SphericalElement> {
        self.ctx.require_dominant(mu)?;
        self.require_tilde_dominant(lambda)?;
        let hl = self.chars.hall_littlewood(lambda)?.shift(mu);
        self.straighten(&lift(&hl), Coords::Y)
    }

    /// `x * c~_zeta` for `x` in v-coordinates, using `[v_mu] Y_beta = [v_{mu+beta}]`.
    pub fn c_action_v(
        &self,
        x: &BTreeMap<Weight, Laurent>,
        zeta: &[i32],
    ) -> Result<BTreeMap<Weight, Laurent>> {
        let mut f = QPoly::zero();
        for (mu, c) in x {
            f.add_assign(&self.times_character(mu, zeta)?.scale(c));
        }
        Ok(self.straighten_v(&f)?.into_terms())
    }

    /// `lambda0 w_0 + 2(rho~^vee - rho^vee)`.
    pub fn dagger(&self, lambda0: &[i32]) -> Result<Weight> {
        let st = self.ctx.steinberg_point()?;
        let w0 = &self.chars.w.iter().max_by_key(|(_, l)| *l).unwrap().0;
        Ok(add_w(&w0.act_linear(lambda0), &scale_w(&st, 2)))
    }

    pub fn tensor_product_check(
        &self,
        lambda0: &[i32],
        zeta: &[i32],
        variant: TensorVariant,
    ) -> Result<TensorCheck> {
        self.ctx.require_sc()?;
        if !self.ctx.in_box(lambda0) {
            return Err(Error::NotInBox(lambda0.to_vec()));
        }
        self.require_tilde_dominant(zeta)?;
        let (base, side) = match variant {
            TensorVariant::Minus => (lambda0.to_vec(), Side::Minus),
            TensorVariant::PlusDagger => (self.dagger(lambda0)?, Side::Plus),
        };
        let g = self.canonical_basis(&base, side)?.o();
        let lhs = self.c_action_v(&g, zeta)?;
        let rhs = self.canonical_basis(&add_w(&base, zeta), side)?.o();
        Ok(TensorCheck {
            holds: lhs == rhs,
            base,
            lhs,
            rhs,
        })
    }

    /// `[Y_st] * c~_mu` against `[Y_{st + mu}]` at the Steinberg point `st`.
    pub fn steinberg_check(&self, mu: &[i32]) -> Result<(bool, BTreeMap<Weight, Coeff>)> {
        let st = self.ctx.steinberg_point()?;
        let got = self.glr(&st, mu)?;
        let expect = BTreeMap::from([(add_w(&st, mu), Coeff::one())]);
        Ok((got == expect, got))
    }
}

/// `sum c [Y_w]` as a polynomial, for callers holding a map.
pub fn to_poly(m: &BTreeMap<Weight, Coeff>) -> PolyElement {
    let mut p = PolyElement::zero();
    for (w, c) in m {
        p.add_term(w.clone(), c);
    }
    p
}
