//! Blocks of the spherical module, the bar involution `D` and the twisted
//! canonical bases, plus the strong-linkage predicate.
//!
//! In v-coordinates the raw involution is
//! `[v_lambda] -> (-1)^{l(w_0^J)} tau^{-l(w_0) - l(w_0^J)} [v_{lambda . w_0}]`.
//! It is unitriangular only up to a constant `±tau^{2k}` per block, which we
//! divide out so that `D` fixes the minimal dominant element of the block.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{Coords, Metaplectic, PolyElement, QPoly, SphericalElement};
use crate::coeff::{Coeff, Side};
use crate::error::{Error, Result};
use crate::hecke::canonical;
use crate::laurent::Laurent;
use crate::poly::{scale_w, sub_w, Weight};
use crate::root::RootContext;
use crate::weyl::AffElem;

/// A block `V(eta)`: the alcove point and its stabilizer type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDescriptor {
    pub eta: Weight,
    /// Stabilizer nodes; `rank` stands for the affine node.
    pub j: Vec<usize>,
    pub l_w0j: u32,
}

/// `G^±_lambda` together with its v-expansion and the twisted polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalBasisRecord {
    pub weight: Weight,
    pub sign: Side,
    /// `bold G^±_lambda = sum o^±_{mu,lambda} [v_mu]`.
    pub v_expansion: SphericalElement,
    /// `G^±_lambda = bold G^±_lambda / kappa(lambda)` in Y-coordinates.
    pub expansion: SphericalElement,
    /// `mu -> (kappa(mu)/kappa(lambda)) o^±_{mu,lambda}`.
    pub g_twisted_kl: BTreeMap<Weight, Coeff>,
}

impl CanonicalBasisRecord {
    /// The quantum polynomials `o^±_{mu,lambda}`.
    pub fn o(&self) -> BTreeMap<Weight, Laurent> {
        self.v_expansion
            .terms
            .terms()
            .map(|(w, c)| (w.clone(), c.to_laurent().expect("v-expansion is tau-pure")))
            .collect()
    }
}

fn height(w: &[i32]) -> i64 {
    w.iter().map(|&x| x as i64).sum()
}

impl Metaplectic {
    /// The block of a coweight.
    pub fn block_descriptor(&self, lambda: &[i32]) -> Result<BlockDescriptor> {
        let rep = self.g.alcove_rep(lambda)?;
        let (_, l, _) = self.g.parabolic_data(&rep.j)?;
        Ok(BlockDescriptor {
            eta: rep.eta,
            j: rep.j,
            l_w0j: l,
        })
    }

    /// The block of a dominant `lambda` and its dominant elements below
    /// `lambda`, sorted by height and then lexicographically.
    pub fn block_of(&self, lambda: &[i32]) -> Result<(BlockDescriptor, Vec<Weight>)> {
        self.ctx.require_sc()?;
        self.ctx.require_dominant(lambda)?;
        let desc = self.block_descriptor(lambda)?;
        let mut out = Vec::new();
        let r = self.rank();
        let mut nu = vec![0i32; r];
        'outer: loop {
            if self.is_dominant(&nu) && self.g.alcove_rep(&nu)?.eta == desc.eta {
                out.push(nu.clone());
            }
            let mut i = 0;
            loop {
                if i == r {
                    break 'outer;
                }
                nu[i] += 1;
                if nu[i] <= lambda[i] {
                    break;
                }
                nu[i] = 0;
                i += 1;
            }
        }
        out.sort_by_key(|w| (height(w), w.clone()));
        Ok((desc, out))
    }

    fn finite_w0(&self) -> &AffElem {
        &self.chars.w.iter().max_by_key(|(_, l)| *l).unwrap().0
    }

    /// The unnormalized involution applied to `[v_lambda]`.
    pub fn raw_dual(&self, lambda: &[i32]) -> Result<BTreeMap<Weight, Laurent>> {
        self.ctx.require_sc()?;
        let desc = self.block_descriptor(lambda)?;
        let target = self.g.dot(lambda, self.finite_w0());
        let s = self.straighten_v(&QPoly::y(target))?;
        let k = -(self.l_w0() as i32) - desc.l_w0j as i32;
        let sign = if desc.l_w0j % 2 == 0 { 1 } else { -1 };
        Ok(s.terms()
            .map(|(w, c)| (w.clone(), c.shift(k).scale(sign)))
            .collect())
    }

    /// The constant `±tau^{2k}` by which the raw involution acts on the
    /// minimal dominant element of the block of `lambda`.
    fn block_constant(&self, lambda: &[i32]) -> Result<Laurent> {
        let eta = self.g.alcove_rep(lambda)?.eta;
        if let Some(c) = self.block_consts.borrow().get(&eta) {
            return Ok(c.clone());
        }
        let (desc, elems) = self.block_of(lambda)?;
        let anchor = elems
            .iter()
            .find(|m| {
                !elems
                    .iter()
                    .any(|o| o != *m && RootContext::dominance_leq(o, m))
            })
            .expect("nonempty block")
            .clone();
        let raw = self.raw_dual(&anchor)?;
        let c = match raw.get(&anchor) {
            Some(c) if raw.len() == 1 => c.clone(),
            _ => {
                return Err(Error::NormalizationFailure(format!(
                    "raw involution at the minimal element {anchor:?} is not diagonal"
                )))
            }
        };
        match c.as_signed_power() {
            Some((_, e)) if e % 2 == 0 => {}
            _ => {
                return Err(Error::NormalizationFailure(format!(
                    "block constant {c} is not of the form ±tau^(2k)"
                )))
            }
        }
        self.block_consts
            .borrow_mut()
            .insert(desc.eta.clone(), c.clone());
        Ok(c)
    }

    /// The normalized involution `D[v_lambda]`, checked to be unitriangular.
    pub fn dual_v(&self, lambda: &[i32]) -> Result<BTreeMap<Weight, Laurent>> {
        if let Some(d) = self.duals.borrow().get(lambda) {
            return Ok(d.clone());
        }
        let c = self.block_constant(lambda)?;
        let (sign, e) = c.as_signed_power().unwrap();
        let raw = self.raw_dual(lambda)?;
        let d: BTreeMap<Weight, Laurent> = raw
            .into_iter()
            .map(|(w, v)| (w, v.shift(-e).scale(sign)))
            .collect();
        if d.get(lambda).map(|c| c.is_one()) != Some(true) {
            return Err(Error::NormalizationFailure(format!(
                "diagonal entry of D at {lambda:?} is {}",
                d.get(lambda).cloned().unwrap_or_default()
            )));
        }
        if let Some(w) = d
            .keys()
            .find(|w| w.as_slice() != lambda && !RootContext::dominance_leq(w, lambda))
        {
            return Err(Error::NormalizationFailure(format!(
                "D[v{lambda:?}] involves {w:?}, which is not below it"
            )));
        }
        self.duals.borrow_mut().insert(lambda.to_vec(), d.clone());
        Ok(d)
    }

    /// `D`, extended semilinearly; the result is in v-coordinates.
    pub fn bar_spherical(&self, x: &SphericalElement) -> Result<SphericalElement> {
        let xv = self.to_v_coords(x)?;
        let mut out = PolyElement::zero();
        for (w, c) in xv.terms.terms() {
            let cb = c.bar();
            for (y, d) in self.dual_v(w)? {
                out.add_term(y, &(&cb * &Coeff::from_laurent(&d)));
            }
        }
        Ok(SphericalElement {
            coords: Coords::V,
            terms: out,
        })
    }

    /// `bold G^±_lambda` and `G^±_lambda`.
    pub fn canonical_basis(&self, lambda: &[i32], side: Side) -> Result<CanonicalBasisRecord> {
        self.ctx.require_sc()?;
        self.ctx.require_dominant(lambda)?;
        let o = canonical::solve(lambda.to_vec(), side, |w| height(w), |w| self.dual_v(w))?;
        let kl = self.kappa_inverse(lambda)?;
        let mut v = PolyElement::zero();
        let mut y = PolyElement::zero();
        let mut twisted = BTreeMap::new();
        for (w, c) in &o {
            let c = Coeff::from_laurent(c);
            v.add_term(w.clone(), &c);
            let t = &(&c * &self.kappa(w)?) * &kl;
            y.add_term(w.clone(), &t);
            twisted.insert(w.clone(), t);
        }
        Ok(CanonicalBasisRecord {
            weight: lambda.to_vec(),
            sign: side,
            v_expansion: SphericalElement {
                coords: Coords::V,
                terms: v,
            },
            expansion: SphericalElement {
                coords: Coords::Y,
                terms: y,
            },
            g_twisted_kl: twisted,
        })
    }

    /// The element `t_lambda` of the twisted affine Weyl group matching
    /// `[v_lambda]`: the minimal representative of `x W` for the minimal
    /// `x` with `lambda = eta . x`.
    pub fn hecke_representative(&self, lambda: &[i32]) -> Result<AffElem> {
        let rep = self.g.alcove_rep(lambda)?;
        let finite: Vec<usize> = (0..self.rank()).collect();
        Ok(self.g.min_right_coset(&finite, &rep.x))
    }

    /// Whether `mu` is strongly linked to `lambda`: reachable by a chain of
    /// steps `nu -> nu . s_beta + m l_beta beta^vee` going strictly down in
    /// dominance order. As in the quantum-group setting the intermediate
    /// coweights need not be dominant; they range over `mu <= nu <= lambda`.
    pub fn strongly_linked(&self, mu: &[i32], lambda: &[i32]) -> Result<bool> {
        self.linkage_search(mu, lambda, false)
    }

    /// The stricter variant in which every link of the chain is dominant.
    pub fn strongly_linked_dominant_chain(&self, mu: &[i32], lambda: &[i32]) -> Result<bool> {
        self.linkage_search(mu, lambda, true)
    }

    fn linkage_search(&self, mu: &[i32], lambda: &[i32], dominant_only: bool) -> Result<bool> {
        self.ctx.require_dominant(mu)?;
        self.ctx.require_dominant(lambda)?;
        if mu == lambda {
            return Ok(true);
        }
        if !RootContext::dominance_leq(mu, lambda) {
            return Ok(false);
        }
        let mut seen: BTreeSet<Weight> = BTreeSet::new();
        let mut queue = VecDeque::from([lambda.to_vec()]);
        seen.insert(lambda.to_vec());
        while let Some(nu) = queue.pop_front() {
            for (k, rt) in self.g.roots.iter().enumerate() {
                let l = rt.m;
                let p = self.g.shifted_pairing(&nu, k);
                let mut step = p.rem_euclid(l);
                if step == 0 {
                    step = l;
                }
                loop {
                    let next = sub_w(&nu, &scale_w(&rt.coroot, step));
                    if !RootContext::dominance_leq(mu, &next) {
                        break;
                    }
                    if (!dominant_only || self.is_dominant(&next)) && seen.insert(next.clone()) {
                        if next == mu {
                            return Ok(true);
                        }
                        queue.push_back(next);
                    }
                    step += l;
                }
            }
        }
        Ok(false)
    }
}
