//! The metaplectic polynomial representation `V = Z_{tau,g}[Y]`.
//!
//! This module holds the Chinta-Gunnells action, the Demazure-Lusztig
//! operators `T~_a` with Gauss-sum coefficients, the action of words in the
//! Hecke algebra, the symmetrizer `eps_I^+` and the rescaled basis
//! `v_mu = kappa(mu) Y_mu`. Straightening onto the spherical module lives in
//! [`straighten`], the bar involution and the canonical bases in
//! [`canonical`], and the twisted Littlewood-Richardson machinery in [`lr`].

pub mod canonical;
pub mod lr;
pub mod straighten;

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::hecke::characters::CharSystem;
use crate::laurent::Laurent;
use crate::poly::{add_w, neg_w, scale_w, Frac, LPoly, Weight};
use crate::root::RootContext;
use crate::weyl::{AffElem, AffineWeyl};

pub use canonical::{BlockDescriptor, CanonicalBasisRecord};
pub use lr::{TensorCheck, TensorVariant};
pub use straighten::{Coords, SphericalElement, Strategy};

/// An element of `V`, `sum c_mu Y_mu` with generic coefficients.
pub type PolyElement = LPoly<Coeff>;

/// A polynomial with `tau`-Laurent coefficients (quantum side, v-coordinates).
pub type QPoly = LPoly<Laurent>;

/// One letter of a word acting on the right of `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Letter {
    /// `H_{s_i} = tau^{-1} T~_{a_i}`.
    H(usize),
    /// `H_{s_i}^{-1}`.
    HInv(usize),
    /// Translation by `Y_beta`, `beta` in the twisted lattice.
    Y(Weight),
}

pub struct Metaplectic {
    pub ctx: RootContext,
    /// The affine Weyl group of the twisted system.
    pub g: AffineWeyl,
    pub chars: CharSystem,
    kappa_cache: RefCell<HashMap<Weight, Coeff>>,
    block_consts: RefCell<HashMap<Weight, Laurent>>,
    duals: RefCell<HashMap<Weight, BTreeMap<Weight, Laurent>>>,
}

impl Metaplectic {
    pub fn new(ctx: RootContext) -> Self {
        let g = AffineWeyl::new(&ctx, true);
        let chars = CharSystem::new(g.clone());
        Metaplectic {
            ctx,
            g,
            chars,
            kappa_cache: RefCell::default(),
            block_consts: RefCell::default(),
            duals: RefCell::default(),
        }
    }

    /// Primitive twist of a named Cartan type.
    pub fn primitive(name: &str, n: u32) -> Result<Self> {
        Ok(Self::new(RootContext::primitive(name, n)?))
    }

    pub fn rank(&self) -> usize {
        self.ctx.rank()
    }

    pub fn n(&self) -> u32 {
        self.ctx.n
    }

    fn root_of(&self, i: usize) -> usize {
        assert!(i < self.rank(), "simple root index {i} out of range");
        self.g.simple_root_index(i)
    }

    /// `n(a_i^vee)`.
    pub fn n_simple(&self, i: usize) -> i32 {
        self.g.roots[self.root_of(i)].m
    }

    /// `Q(a_i^vee)`.
    pub fn q_simple(&self, i: usize) -> i64 {
        self.ctx.roots[self.root_of(i)].q
    }

    /// `<lambda, a_i>`.
    pub fn pairing(&self, lambda: &[i32], i: usize) -> i32 {
        self.g.pairing(lambda, self.root_of(i))
    }

    pub fn is_dominant(&self, lambda: &[i32]) -> bool {
        self.ctx.is_dominant(lambda)
    }

    pub fn gauss(&self, k: i64) -> Coeff {
        Coeff::g(self.n(), k)
    }

    /// The quantum value of `g_k`: `-1` when `n | k`, otherwise `tau`.
    pub fn upsilon(&self, k: i64) -> Laurent {
        if k.rem_euclid(self.n() as i64) == 0 {
            Laurent::constant(-1)
        } else {
            Laurent::tau(1)
        }
    }

    /// Factor contributed to `kappa` by a root with `Q`-weighted pairing `k`:
    /// `tau^{-1} g_k`, or 1 when `n | k` (there `g_k` and its quantum value
    /// cancel).
    fn kappa_factor(&self, k: i64) -> Coeff {
        if k.rem_euclid(self.n() as i64) == 0 {
            Coeff::one()
        } else {
            self.gauss(k).shift_tau(-1)
        }
    }

    // ---- Demazure-Lusztig operators -----------------------------------

    /// `Y_lambda T~_{a_i}` in closed form.
    pub fn dl_mono(&self, lambda: &[i32], i: usize) -> PolyElement {
        let p = self.pairing(lambda, i);
        let m = self.n_simple(i);
        let e = self.ctx.unit(i);
        let mut out = PolyElement::zero();
        out.add_term(
            self.g.dot_gen(lambda, i),
            &self.gauss((p as i64 + 1) * self.q_simple(i)),
        );
        let t = Coeff::tau(2) - Coeff::one();
        if p >= 0 {
            let mut k = 0;
            while k * m <= p {
                out.add_term(add_w(lambda, &scale_w(&e, -k * m)), &t);
                k += 1;
            }
        } else {
            let t = -t;
            let mut k = 1;
            while k * m < -p {
                out.add_term(add_w(lambda, &scale_w(&e, k * m)), &t);
                k += 1;
            }
        }
        out
    }

    /// The quantum operator on the v-basis: `v_lambda T_{a_i}`, with every
    /// Gauss sum replaced by its quantum value.
    pub fn quantum_dl_mono(&self, lambda: &[i32], i: usize) -> QPoly {
        let p = self.pairing(lambda, i);
        let m = self.n_simple(i);
        let e = self.ctx.unit(i);
        let mut out = QPoly::zero();
        out.add_term(
            self.g.dot_gen(lambda, i),
            &self.upsilon((p as i64 + 1) * self.q_simple(i)),
        );
        let t = Laurent::from_terms([(2, 1), (0, -1)]);
        if p >= 0 {
            let mut k = 0;
            while k * m <= p {
                out.add_term(add_w(lambda, &scale_w(&e, -k * m)), &t);
                k += 1;
            }
        } else {
            let t = -&t;
            let mut k = 1;
            while k * m < -p {
                out.add_term(add_w(lambda, &scale_w(&e, k * m)), &t);
                k += 1;
            }
        }
        out
    }

    /// `f T~_{a_i}`.
    pub fn dl_act(&self, f: &PolyElement, i: usize) -> PolyElement {
        let mut out = PolyElement::zero();
        for (w, c) in f.terms() {
            out.add_assign(&self.dl_mono(w, i).scale(c));
        }
        out
    }

    /// `f H_{s_i} = tau^{-1} f T~_{a_i}`.
    pub fn h_act(&self, f: &PolyElement, i: usize) -> PolyElement {
        self.dl_act(f, i).map_coeffs(|c| c.shift_tau(-1))
    }

    /// `f H_{s_i}^{-1} = f H_{s_i} - (tau - tau^{-1}) f`.
    pub fn h_inv_act(&self, f: &PolyElement, i: usize) -> PolyElement {
        let d = Coeff::tau(1) - Coeff::tau(-1);
        self.h_act(f, i).sub(&f.scale(&d))
    }

    /// `f Y_beta` for `beta` in the twisted lattice.
    pub fn translate(&self, f: &PolyElement, beta: &[i32]) -> Result<PolyElement> {
        if !self.ctx.in_tilde(beta) {
            return Err(Error::NotInTildeLattice(beta.to_vec()));
        }
        Ok(f.shift(beta))
    }

    /// Act by a word, letters applied left to right.
    pub fn hecke_word_act(&self, f: &PolyElement, word: &[Letter]) -> Result<PolyElement> {
        let mut cur = f.clone();
        for l in word {
            cur = match l {
                Letter::H(i) => self.h_act(&cur, *i),
                Letter::HInv(i) => self.h_inv_act(&cur, *i),
                Letter::Y(b) => self.translate(&cur, b)?,
            };
        }
        Ok(cur)
    }

    /// `f H_w` for a finite Weyl group element.
    pub fn h_word(&self, f: &PolyElement, w: &AffElem) -> PolyElement {
        self.g
            .reduced_word(w)
            .iter()
            .fold(f.clone(), |acc, &i| self.h_act(&acc, i))
    }

    // ---- Chinta-Gunnells action ---------------------------------------

    fn x_simple(&self, i: usize) -> Weight {
        self.ctx.tilde_simple(i)
    }

    /// `1 - tau^{-2} Y_{-X}`.
    fn cg_denominator(&self, i: usize) -> PolyElement {
        let r = self.rank();
        PolyElement::constant(r, Coeff::one())
            .sub(&PolyElement::mono(neg_w(&self.x_simple(i)), Coeff::tau(-2)))
    }

    /// Numerator of `Y_lambda * s_i` over `1 - tau^{-2} Y_{-X}`:
    /// `Y_{lambda s} [(1 - v) Y_{r a^vee} - v g_{Q(1 + <lambda,a>)} Y_{X - a^vee} (1 - Y_{-X})]`
    /// with `v = tau^{-2}` and `r` the residue of `<lambda, a>` mod `n(a^vee)`.
    fn cg_numerator(&self, lambda: &[i32], i: usize) -> PolyElement {
        let r = self.rank();
        let p = self.pairing(lambda, i);
        let m = self.n_simple(i);
        let e = self.ctx.unit(i);
        let x = self.x_simple(i);
        let ls = add_w(lambda, &scale_w(&e, -p));
        let one_minus_v = Coeff::one() - Coeff::tau(-2);
        let mut out = PolyElement::mono(add_w(&ls, &scale_w(&e, p.rem_euclid(m))), one_minus_v);
        let c = -self.gauss(self.q_simple(i) * (1 + p as i64)).shift_tau(-2);
        let tail = PolyElement::constant(r, Coeff::one()).sub(&PolyElement::y(neg_w(&x)));
        let lead = add_w(&ls, &add_w(&x, &neg_w(&e)));
        out.add_assign(&tail.shift(&lead).scale(&c));
        out
    }

    /// `(f / h) * s_i = (f * s_i) / h^{s_i}`; the denominator must be
    /// supported on the twisted lattice, where the action is linear.
    pub fn cg_reflect(&self, x: &Frac<Coeff>, i: usize) -> Result<Frac<Coeff>> {
        if let Some((w, _)) = x.den.terms().find(|(w, _)| !self.ctx.in_tilde(w)) {
            return Err(Error::IllegalDenominator(format!(
                "denominator term Y{w:?} is outside the twisted lattice"
            )));
        }
        let mut num = PolyElement::zero();
        for (w, c) in x.num.terms() {
            num.add_assign(&self.cg_numerator(w, i).scale(c));
        }
        let s = &self.g.gens[i];
        let den = x.den.map_keys(|w| s.act_linear(w));
        Ok(Frac::new(num, self.cg_denominator(i).mul(&den)))
    }

    pub fn cg_act(&self, f: &PolyElement, i: usize) -> Result<Frac<Coeff>> {
        self.cg_reflect(&Frac::from_poly(f.clone(), self.rank()), i)
    }

    /// `T~_a = c(X) * s_a + b(X)` with `c = (tau^2 - Y_{-X})/(1 - Y_X)` and
    /// `b = (tau^2 - 1)/(1 - Y_{-X})`, evaluated in the fraction field.
    pub fn dl_via_cg(&self, f: &PolyElement, i: usize) -> Result<Frac<Coeff>> {
        let r = self.rank();
        let x = self.x_simple(i);
        let one = PolyElement::constant(r, Coeff::one());
        let c = Frac::new(
            PolyElement::constant(r, Coeff::tau(2)).sub(&PolyElement::y(neg_w(&x))),
            one.sub(&PolyElement::y(x.clone())),
        );
        let b = Frac::new(
            PolyElement::constant(r, Coeff::tau(2) - Coeff::one()),
            one.sub(&PolyElement::y(neg_w(&x))),
        );
        let fs = self.cg_act(f, i)?;
        Ok(c.mul(&fs).add(&b.mul_poly(f)))
    }

    // ---- symmetrizer ---------------------------------------------------

    /// `l(w_0)`.
    pub fn l_w0(&self) -> u32 {
        self.ctx.num_positive() as u32
    }

    /// `f eps_I^+ = sum_w tau^{l(w) - l(w_0)} f H_w`.
    pub fn symmetrize(&self, f: &PolyElement) -> PolyElement {
        let l0 = self.l_w0() as i32;
        let mut memo: HashMap<AffElem, PolyElement> = HashMap::new();
        memo.insert(self.g.identity(), f.clone());
        let mut out = PolyElement::zero();
        for (w, l) in &self.chars.w {
            let fw = match memo.get(w) {
                Some(v) => v.clone(),
                None => {
                    let word = self.g.reduced_word(w);
                    let last = *word.last().unwrap();
                    let prev = w.mul(&self.g.gens[last]);
                    let v = match memo.get(&prev) {
                        Some(p) => self.h_act(p, last),
                        None => self.h_word(f, w),
                    };
                    memo.insert(w.clone(), v.clone());
                    v
                }
            };
            out.add_assign(&fw.map_coeffs(|c| c.shift_tau(*l as i32 - l0)));
        }
        out
    }

    /// `P_W(tau^2) = sum_w tau^{2 l(w)}`.
    pub fn poincare_tau2(&self) -> Laurent {
        let mut p = Laurent::zero();
        for (_, l) in &self.chars.w {
            p.add_term(2 * *l as i32, 1);
        }
        p
    }

    // ---- the v-basis ---------------------------------------------------

    /// `v_mu = Y_eta H_sigma Y_beta` computed literally, for
    /// `mu = eta . sigma t(beta)` with `sigma t(beta)` minimal.
    pub fn v_vector(&self, mu: &[i32]) -> Result<PolyElement> {
        let rep = self.g.alcove_rep(mu)?;
        let sigma = rep.x.finite_part();
        let f = self.h_word(&PolyElement::y(rep.eta), &sigma);
        self.translate(&f, &rep.x.b)
    }

    /// `kappa(mu)`, the product along a reduced word of `sigma` of
    /// `tau^{-1} g_{p Q}`, `p` the shifted pairing at each step, with unit
    /// factors where `n | pQ`.
    pub fn kappa(&self, mu: &[i32]) -> Result<Coeff> {
        self.ctx.require_sc()?;
        if let Some(c) = self.kappa_cache.borrow().get(mu) {
            return Ok(c.clone());
        }
        let rep = self.g.alcove_rep(mu)?;
        let sigma = rep.x.finite_part();
        let mut lam = rep.eta;
        let mut c = Coeff::one();
        for i in self.g.reduced_word(&sigma) {
            let p = self.g.shifted_pairing(&lam, self.root_of(i)) as i64;
            c = c * self.kappa_factor(p * self.q_simple(i));
            lam = self.g.dot_gen(&lam, i);
        }
        self.kappa_cache.borrow_mut().insert(mu.to_vec(), c.clone());
        Ok(c)
    }

    pub fn kappa_inverse(&self, mu: &[i32]) -> Result<Coeff> {
        self.kappa(mu)?.invert_unit()
    }

    /// Coefficients in the v-basis to coefficients in the Y-basis.
    pub fn v_to_y(&self, f: &PolyElement) -> Result<PolyElement> {
        let mut out = PolyElement::zero();
        for (w, c) in f.terms() {
            out.add_term(w.clone(), &(c * &self.kappa(w)?));
        }
        Ok(out)
    }

    pub fn y_to_v(&self, f: &PolyElement) -> Result<PolyElement> {
        let mut out = PolyElement::zero();
        for (w, c) in f.terms() {
            out.add_term(w.clone(), &(c * &self.kappa_inverse(w)?));
        }
        Ok(out)
    }
}

/// Lift a `tau`-Laurent polynomial to generic coefficients.
pub fn lift(p: &QPoly) -> PolyElement {
    let mut out = PolyElement::zero();
    for (w, c) in p.terms() {
        out.add_term(w.clone(), &Coeff::from_laurent(c));
    }
    out
}

/// The `tau`-Laurent polynomial underlying `p`, if no Gauss sum occurs.
pub fn tau_pure(p: &PolyElement) -> Result<QPoly> {
    let mut out = QPoly::zero();
    for (w, c) in p.terms() {
        out.add_term(w.clone(), &c.to_laurent().ok_or(Error::NotTauPure)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> Metaplectic {
        Metaplectic::primitive("A1", 3).unwrap()
    }

    fn g(n: u32, k: i64) -> Coeff {
        Coeff::g(n, k)
    }

    fn t(e: i32) -> Coeff {
        Coeff::tau(e)
    }

    fn poly(terms: &[(&[i32], Coeff)]) -> PolyElement {
        let mut p = PolyElement::zero();
        for (w, c) in terms {
            p.add_term(w.to_vec(), c);
        }
        p
    }

    #[test]
    fn dl_examples() {
        let m = a1();
        let t2m1 = t(2) - Coeff::one();
        assert_eq!(
            m.dl_mono(&[0], 0),
            poly(&[(&[-1], g(3, 1)), (&[0], t2m1.clone())])
        );
        assert_eq!(m.dl_mono(&[-1], 0), poly(&[(&[0], g(3, 2))]));
        assert_eq!(
            m.dl_mono(&[1], 0),
            poly(&[(&[-2], Coeff::from_int(-1)), (&[1], t2m1)])
        );
    }

    #[test]
    fn h_action_example() {
        let m = a1();
        let got = m.hecke_word_act(&PolyElement::y(vec![0]), &[Letter::H(0)]).unwrap();
        let expect = poly(&[(&[-1], g(3, 1).shift_tau(-1)), (&[0], t(1) - t(-1))]);
        assert_eq!(got, expect);
        let back = m
            .hecke_word_act(&got, &[Letter::HInv(0)])
            .unwrap();
        assert_eq!(back, PolyElement::y(vec![0]));
        assert!(matches!(
            m.hecke_word_act(&got, &[Letter::Y(vec![1])]),
            Err(Error::NotInTildeLattice(_))
        ));
    }

    #[test]
    fn cg_example_and_involutivity() {
        let m = a1();
        let y0 = PolyElement::y(vec![0]);
        let got = m.cg_act(&y0, 0).unwrap();
        let num = poly(&[(&[0], Coeff::one() - t(-2))]).sub(
            &poly(&[(&[2], Coeff::one()), (&[-1], Coeff::from_int(-1))]).scale(&g(3, 1).shift_tau(-2)),
        );
        let den = poly(&[(&[0], Coeff::one()), (&[-3], -t(-2))]);
        assert_eq!(got, Frac::new(num, den));
        assert_eq!(m.cg_reflect(&got, 0).unwrap(), Frac::from_poly(y0.clone(), 1));
        let shifted = m.cg_act(&PolyElement::y(vec![3]), 0).unwrap();
        assert_eq!(shifted, got.mul_poly(&PolyElement::y(vec![-3])));
        let bad = Frac::new(y0.clone(), poly(&[(&[0], Coeff::one()), (&[1], Coeff::one())]));
        assert!(matches!(m.cg_reflect(&bad, 0), Err(Error::IllegalDenominator(_))));
    }

    #[test]
    fn dl_agrees_with_cg() {
        let m = a1();
        for l in -4..=4 {
            let f = PolyElement::y(vec![l]);
            let got = m.dl_via_cg(&f, 0).unwrap();
            assert_eq!(got, Frac::from_poly(m.dl_act(&f, 0), 1), "lambda = {l}");
        }
    }

    #[test]
    fn symmetrize_examples() {
        let m = a1();
        let got = m.symmetrize(&PolyElement::y(vec![0]));
        assert_eq!(got, poly(&[(&[0], t(1)), (&[-1], g(3, 1).shift_tau(-1))]));
        let m1 = Metaplectic::primitive("A1", 1).unwrap();
        let got = m1.symmetrize(&PolyElement::y(vec![0]));
        assert_eq!(got, poly(&[(&[0], t(1)), (&[-1], -t(-1))]));
    }

    #[test]
    fn kappa_examples() {
        let m = a1();
        assert_eq!(m.kappa(&[0]).unwrap(), g(3, 2).shift_tau(-1));
        assert!(m.kappa(&[-1]).unwrap().is_one());
        assert!(m.kappa(&[2]).unwrap().is_one());
        assert_eq!(m.kappa(&[3]).unwrap(), g(3, 2).shift_tau(-1));
        // the literal product agrees off the affine wall
        assert_eq!(m.v_vector(&[3]).unwrap(), poly(&[(&[3], m.kappa(&[3]).unwrap())]));
    }
}
