//! Straightening onto the spherical module `V_sph`, realized as the free
//! module on dominant coweights with the quotient map `f -> [f]`.
//!
//! A non-dominant `[Y_mu]` with `p = <mu + rho^vee, a_i> <= 0` for some simple
//! root is rewritten in terms of weights strictly above it:
//!
//! * `p = 0`: `[Y_mu] = 0`;
//! * `j = -p` divisible by `n(a^vee)`: `[Y_mu] = -[Y_lambda]`, `lambda = mu + j a^vee`;
//! * `0 < j < n(a^vee)`: `[Y_mu] = G(j)^{-1} [Y_lambda]`;
//! * otherwise, with `lambda1 = lambda - r a^vee` and `r` the residue of `j`:
//!   `[Y_mu] = G(j)^{-1} ([Y_lambda] + [Y_{lambda1 . s}]) - [Y_lambda1]`.
//!
//! Here `G(j) = g_{j Q(a^vee)}` in Y-coordinates and `tau` in v-coordinates.

use std::collections::BTreeMap;
use std::fmt;

use super::{lift, tau_pure, Metaplectic, PolyElement, QPoly};
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::poly::{add_w, scale_w, LPoly, Ring, Weight};

const MAX_REWRITES: usize = 1_000_000;

/// Which basis the coefficients of a [`SphericalElement`] refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coords {
    Y,
    V,
}

impl fmt::Display for Coords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coords::Y => "Y",
            Coords::V => "v",
        })
    }
}

/// Order in which offending terms are rewritten.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Lexicographically smallest non-dominant weight, most negative simple root.
    #[default]
    MostNegativeFirst,
    /// Non-dominant weight of smallest height, first violated simple root.
    LowestWeightFirst,
}

/// `sum c_mu [Y_mu]` or `sum c_mu [v_mu]` over dominant `mu`.
#[derive(Clone, Debug, PartialEq)]
pub struct SphericalElement {
    pub coords: Coords,
    pub terms: PolyElement,
}

impl SphericalElement {
    pub fn zero(coords: Coords) -> Self {
        SphericalElement {
            coords,
            terms: PolyElement::zero(),
        }
    }

    pub fn coeff(&self, mu: &[i32]) -> Coeff {
        self.terms.coeff(mu)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }
}

impl fmt::Display for SphericalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .terms()
            .map(|(w, c)| format!("({c})[{}{w:?}]", self.coords))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Metaplectic {
    fn pick(&self, cur: &BTreeMap<Weight, impl Ring>, strategy: Strategy) -> Option<(Weight, usize)> {
        let r = self.rank();
        let violated = |w: &Weight| -> Option<usize> {
            let ps: Vec<i32> = (0..r).map(|i| self.pairing(w, i)).collect();
            match strategy {
                Strategy::MostNegativeFirst => (0..r)
                    .filter(|&i| ps[i] < 0)
                    .min_by_key(|&i| (ps[i], i)),
                Strategy::LowestWeightFirst => (0..r).find(|&i| ps[i] < 0),
            }
        };
        match strategy {
            Strategy::MostNegativeFirst => cur
                .keys()
                .find_map(|w| violated(w).map(|i| (w.clone(), i))),
            Strategy::LowestWeightFirst => cur
                .keys()
                .filter_map(|w| violated(w).map(|i| (w.clone(), i)))
                .min_by_key(|(w, _)| (w.iter().sum::<i32>(), w.clone())),
        }
    }

    /// The rewriting engine, generic in the coefficient ring; `inv(i, j)`
    /// supplies `G(j)^{-1}` for the simple root `i`.
    pub(crate) fn straighten_generic<R: Ring>(
        &self,
        f: &LPoly<R>,
        strategy: Strategy,
        inv: impl Fn(usize, i32) -> Result<R>,
    ) -> Result<LPoly<R>> {
        let mut cur: BTreeMap<Weight, R> = f.clone().into_terms();
        let add = |cur: &mut BTreeMap<Weight, R>, w: Weight, c: R| {
            if c.is_zero() {
                return;
            }
            match cur.get_mut(&w) {
                Some(slot) => {
                    slot.add_to(&c);
                    if slot.is_zero() {
                        cur.remove(&w);
                    }
                }
                None => {
                    cur.insert(w, c);
                }
            }
        };
        let mut steps = 0usize;
        while let Some((mu, i)) = self.pick(&cur, strategy) {
            steps += 1;
            if steps > MAX_REWRITES {
                return Err(Error::NonTermination(format!(
                    "straightening exceeded {MAX_REWRITES} rewrites"
                )));
            }
            let c = cur.remove(&mu).unwrap();
            let p = self.pairing(&mu, i) + 1;
            if p == 0 {
                continue;
            }
            let j = -p;
            let m = self.n_simple(i);
            let e = self.ctx.unit(i);
            let lambda = add_w(&mu, &scale_w(&e, j));
            if j % m == 0 {
                add(&mut cur, lambda, c.negated());
            } else if j < m {
                add(&mut cur, lambda, c.product(&inv(i, j)?));
            } else {
                let r = j % m;
                let lambda1 = add_w(&lambda, &scale_w(&e, -r));
                let partner = add_w(&mu, &scale_w(&e, r));
                let ci = c.product(&inv(i, j)?);
                add(&mut cur, lambda, ci.clone());
                add(&mut cur, partner, ci);
                add(&mut cur, lambda1, c.negated());
            }
        }
        let mut out = LPoly::zero();
        for (w, c) in cur {
            out.add_term(w, &c);
        }
        Ok(out)
    }

    /// `[f]` with the default strategy.
    pub fn straighten(&self, f: &PolyElement, coords: Coords) -> Result<SphericalElement> {
        self.straighten_with(f, coords, Strategy::default())
    }

    pub fn straighten_with(
        &self,
        f: &PolyElement,
        coords: Coords,
        strategy: Strategy,
    ) -> Result<SphericalElement> {
        self.ctx.require_sc()?;
        let terms = match coords {
            Coords::Y => self.straighten_generic(f, strategy, |i, j| {
                self.gauss(j as i64 * self.q_simple(i)).invert_unit()
            })?,
            Coords::V => self.straighten_generic(f, strategy, |_, _| Ok(Coeff::tau(-1)))?,
        };
        Ok(SphericalElement { coords, terms })
    }

    /// The quantum (v-coordinate) straightening of a `tau`-Laurent polynomial.
    pub fn straighten_v(&self, f: &QPoly) -> Result<QPoly> {
        self.ctx.require_sc()?;
        self.straighten_generic(f, Strategy::default(), |_, _| Ok(Laurent::tau(-1)))
    }

    pub fn to_v_coords(&self, x: &SphericalElement) -> Result<SphericalElement> {
        match x.coords {
            Coords::V => Ok(x.clone()),
            Coords::Y => Ok(SphericalElement {
                coords: Coords::V,
                terms: self.y_to_v(&x.terms)?,
            }),
        }
    }

    pub fn to_y_coords(&self, x: &SphericalElement) -> Result<SphericalElement> {
        match x.coords {
            Coords::Y => Ok(x.clone()),
            Coords::V => Ok(SphericalElement {
                coords: Coords::Y,
                terms: self.v_to_y(&x.terms)?,
            }),
        }
    }

    /// A v-coordinate element as `tau`-Laurent data.
    pub fn v_terms(&self, x: &SphericalElement) -> Result<BTreeMap<Weight, Laurent>> {
        Ok(tau_pure(&self.to_v_coords(x)?.terms)?.into_terms())
    }

    pub fn from_v_terms(&self, t: &BTreeMap<Weight, Laurent>) -> SphericalElement {
        let mut p = QPoly::zero();
        for (w, c) in t {
            p.add_term(w.clone(), c);
        }
        SphericalElement {
            coords: Coords::V,
            terms: lift(&p),
        }
    }
}
