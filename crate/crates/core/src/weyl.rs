//! Finite and affine Weyl groups acting on coweights from the right.
//!
//! An element `(sigma, beta)` acts by `v -> v sigma + beta`, so products read
//! left to right: `(s1, b1)(s2, b2) = (s1 s2, b1 s2 + b2)`. The affine
//! generator is the reflection in the wall `<v, theta~> = -1` (with `theta~` the
//! highest twisted root), so the fundamental alcove is the anti-dominant one.
//! Node `r` (the rank) is the affine node; it is displayed as `0`.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::poly::{add_w, sub_w, Weight};
use crate::root::RootContext;

/// Element of `W x Y`, acting by `v -> v sigma + beta`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffElem {
    /// Row-major `r x r` matrix of the right action on coroot coordinates.
    pub m: Vec<i32>,
    pub b: Weight,
}

impl AffElem {
    pub fn identity(r: usize) -> Self {
        let mut m = vec![0; r * r];
        for i in 0..r {
            m[i * r + i] = 1;
        }
        AffElem { m, b: vec![0; r] }
    }

    pub fn translation(beta: Weight) -> Self {
        let mut x = Self::identity(beta.len());
        x.b = beta;
        x
    }

    pub fn rank(&self) -> usize {
        self.b.len()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rank())
    }

    /// `v sigma` (linear part only).
    pub fn act_linear(&self, v: &[i32]) -> Weight {
        let r = self.rank();
        (0..r)
            .map(|k| (0..r).map(|j| v[j] * self.m[j * r + k]).sum())
            .collect()
    }

    /// `v sigma + beta`.
    pub fn apply(&self, v: &[i32]) -> Weight {
        add_w(&self.act_linear(v), &self.b)
    }

    pub fn mul(&self, other: &AffElem) -> AffElem {
        let r = self.rank();
        let mut m = vec![0; r * r];
        for i in 0..r {
            for k in 0..r {
                m[i * r + k] = (0..r).map(|j| self.m[i * r + j] * other.m[j * r + k]).sum();
            }
        }
        AffElem {
            m,
            b: other.apply(&self.b),
        }
    }

    /// `sigma M` applied to a column vector, i.e. the dual action on roots
    /// written in the coordinates `<a_j^vee, .>`.
    pub fn act_column(&self, c: &[i32]) -> Weight {
        let r = self.rank();
        (0..r)
            .map(|j| (0..r).map(|k| self.m[j * r + k] * c[k]).sum())
            .collect()
    }

    /// Finite part `(sigma, 0)`.
    pub fn finite_part(&self) -> AffElem {
        AffElem {
            m: self.m.clone(),
            b: vec![0; self.rank()],
        }
    }
}

/// Positive root data as used by the group.
#[derive(Clone, Debug)]
pub struct WRoot {
    pub root: Weight,
    pub coroot: Weight,
    pub height: i32,
    /// Scaling of the coroot in the translation lattice (1 when untwisted).
    pub m: i32,
    /// `A root`: pairing `<v, a> = v . ar`.
    pub ar: Weight,
}

/// A finite Weyl group together with its (possibly twisted) affinization.
#[derive(Clone, Debug)]
pub struct AffineWeyl {
    pub r: usize,
    pub a: Vec<Vec<i32>>,
    pub roots: Vec<WRoot>,
    /// `r` simple reflections followed by the affine generator.
    pub gens: Vec<AffElem>,
    /// Index of the root defining the affine wall.
    pub theta: usize,
    pub two_rho: Weight,
    pub twisted: bool,
}

/// Result of reducing a coweight to the closed fundamental alcove.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlcoveRep {
    pub eta: Weight,
    /// Stabilizer type: simple nodes plus possibly the affine node `r`.
    pub j: Vec<usize>,
    /// Minimal element of `W_J x` with `lambda = eta . x`.
    pub x: AffElem,
}

impl AffineWeyl {
    pub fn new(ctx: &RootContext, twisted: bool) -> Self {
        let r = ctx.rank();
        let a = ctx.a().clone();
        let roots: Vec<WRoot> = ctx
            .roots
            .iter()
            .map(|rt| WRoot {
                root: rt.root.clone(),
                coroot: rt.coroot.clone(),
                height: rt.height,
                m: if twisted { rt.m } else { 1 },
                ar: (0..r)
                    .map(|j| (0..r).map(|k| a[j][k] * rt.root[k]).sum())
                    .collect(),
            })
            .collect();
        let theta = if twisted { ctx.twisted_highest } else { ctx.highest };
        let mut g = AffineWeyl {
            r,
            a,
            roots,
            gens: Vec::new(),
            theta,
            two_rho: ctx.two_rho_vee(),
            twisted,
        };
        let mut gens: Vec<AffElem> = (0..r).map(|i| g.simple(i)).collect();
        let th = &g.roots[theta];
        let mut s0 = g.reflection(theta);
        s0.b = th.coroot.iter().map(|&c| -c * th.m).collect();
        gens.push(s0);
        g.gens = gens;
        g
    }

    pub fn identity(&self) -> AffElem {
        AffElem::identity(self.r)
    }

    fn simple(&self, i: usize) -> AffElem {
        let r = self.r;
        let mut m = vec![0; r * r];
        for j in 0..r {
            for k in 0..r {
                m[j * r + k] = (j == k) as i32 - if k == i { self.a[j][i] } else { 0 };
            }
        }
        AffElem { m, b: vec![0; r] }
    }

    /// Linear reflection `v -> v - <v, a> a^vee` for the positive root `k`.
    pub fn reflection(&self, k: usize) -> AffElem {
        let r = self.r;
        let rt = &self.roots[k];
        let mut m = vec![0; r * r];
        for j in 0..r {
            for l in 0..r {
                m[j * r + l] = (j == l) as i32 - rt.ar[j] * rt.coroot[l];
            }
        }
        AffElem { m, b: vec![0; r] }
    }

    pub fn gen(&self, i: usize) -> &AffElem {
        &self.gens[i]
    }

    /// Product of generators in the given order.
    pub fn from_word(&self, word: &[usize]) -> AffElem {
        word.iter()
            .fold(self.identity(), |acc, &i| acc.mul(&self.gens[i]))
    }

    /// `X_a = m(a) a^vee`, the coroot of the (twisted) system.
    pub fn x_coroot(&self, k: usize) -> Weight {
        let rt = &self.roots[k];
        rt.coroot.iter().map(|&c| c * rt.m).collect()
    }

    pub fn pairing(&self, v: &[i32], k: usize) -> i32 {
        v.iter().zip(&self.roots[k].ar).map(|(x, y)| x * y).sum()
    }

    /// Sign of `sigma a` for the positive root `k`.
    fn sends_positive(&self, x: &AffElem, k: usize) -> bool {
        let img = x.act_column(&self.roots[k].ar);
        let s: i32 = self.two_rho.iter().zip(&img).map(|(x, y)| x * y).sum();
        debug_assert!(s != 0);
        s > 0
    }

    /// Iwahori-Matsumoto length.
    pub fn length(&self, x: &AffElem) -> u32 {
        let mut l = 0i64;
        for k in 0..self.roots.len() {
            let p = self.pairing(&x.b, k);
            let m = self.roots[k].m;
            debug_assert_eq!(p % m, 0, "translation outside the lattice");
            let p = (p / m) as i64;
            l += if self.sends_positive(x, k) {
                p.abs()
            } else {
                (1 + p).abs()
            };
        }
        l as u32
    }

    pub fn inverse(&self, x: &AffElem) -> AffElem {
        // Inverse of an integer matrix in W: the group is finite, so iterate.
        let r = self.r;
        let fin = x.finite_part();
        let mut pow = fin.clone();
        let id = AffElem::identity(r);
        let mut prev = id.clone();
        while pow != id {
            prev = pow.clone();
            pow = pow.mul(&fin);
        }
        let inv_sigma = if fin == id { id } else { prev };
        let b: Weight = inv_sigma.act_linear(&x.b).iter().map(|&v| -v).collect();
        AffElem { m: inv_sigma.m, b }
    }

    pub fn is_right_descent(&self, x: &AffElem, i: usize) -> bool {
        self.length(&x.mul(&self.gens[i])) < self.length(x)
    }

    pub fn is_left_descent(&self, x: &AffElem, i: usize) -> bool {
        self.length(&self.gens[i].mul(x)) < self.length(x)
    }

    pub fn all_nodes(&self) -> Vec<usize> {
        (0..=self.r).collect()
    }

    /// A reduced word for `x`, found by stripping right descents.
    pub fn reduced_word(&self, x: &AffElem) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = x.clone();
        let mut len = self.length(&cur);
        while len > 0 {
            let i = (0..=self.r)
                .find(|&i| self.length(&cur.mul(&self.gens[i])) < len)
                .expect("nontrivial element has a descent");
            cur = cur.mul(&self.gens[i]);
            len -= 1;
            word.push(i);
        }
        word.reverse();
        word
    }

    pub fn node_label(&self, i: usize) -> usize {
        if i == self.r {
            0
        } else {
            i + 1
        }
    }

    /// Human-readable word, e.g. `s1*s0` or `e`.
    pub fn format(&self, x: &AffElem) -> String {
        let w = self.reduced_word(x);
        if w.is_empty() {
            return "e".into();
        }
        w.iter()
            .map(|&i| format!("s{}", self.node_label(i)))
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Bruhat order via the lifting property.
    pub fn bruhat_leq(&self, x: &AffElem, y: &AffElem) -> bool {
        let ly = self.length(y);
        let lx = self.length(x);
        if lx > ly {
            return false;
        }
        if ly == 0 {
            return x == y;
        }
        let s = (0..=self.r)
            .find(|&i| self.length(&y.mul(&self.gens[i])) < ly)
            .unwrap();
        let ys = y.mul(&self.gens[s]);
        let xs = x.mul(&self.gens[s]);
        if self.length(&xs) < lx {
            self.bruhat_leq(&xs, &ys)
        } else {
            self.bruhat_leq(x, &ys)
        }
    }

    /// All elements generated by the nodes in `nodes` of length at most `bound`.
    pub fn elements_up_to(&self, nodes: &[usize], bound: u32) -> Vec<AffElem> {
        let mut seen: HashSet<AffElem> = HashSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        let e = self.identity();
        seen.insert(e.clone());
        queue.push_back((e, 0u32));
        while let Some((x, l)) = queue.pop_front() {
            out.push(x.clone());
            if l == bound {
                continue;
            }
            for &i in nodes {
                let y = x.mul(&self.gens[i]);
                if !seen.contains(&y) && self.length(&y) == l + 1 {
                    seen.insert(y.clone());
                    queue.push_back((y, l + 1));
                }
            }
        }
        out.sort_by_key(|x| (self.length(x), x.clone()));
        out
    }

    fn check_finite(&self, j: &[usize]) -> Result<()> {
        let set: BTreeSet<usize> = j.iter().copied().collect();
        if set.len() == self.r + 1 {
            return Err(Error::InfiniteParabolic(j.to_vec()));
        }
        Ok(())
    }

    /// All elements of the finite parabolic subgroup `W_J`.
    pub fn parabolic_elements(&self, j: &[usize]) -> Result<Vec<AffElem>> {
        self.check_finite(j)?;
        Ok(self.elements_up_to(j, u32::MAX))
    }

    /// Longest element, its length and the Poincare polynomial `sum q^l(w)`
    /// (as a Laurent polynomial in the variable `q`).
    pub fn parabolic_data(&self, j: &[usize]) -> Result<(AffElem, u32, Laurent)> {
        let els = self.parabolic_elements(j)?;
        let mut p = Laurent::zero();
        for x in &els {
            p.add_term(self.length(x) as i32, 1);
        }
        let w0 = els.last().unwrap().clone();
        let l = self.length(&w0);
        Ok((w0, l, p))
    }

    /// Elements `x` with `l(s_j x) > l(x)` for all `j` in `J`, up to length `bound`.
    pub fn minimal_left_reps(&self, j: &[usize], bound: u32) -> Result<Vec<AffElem>> {
        self.check_finite(j)?;
        Ok(self
            .elements_up_to(&self.all_nodes(), bound)
            .into_iter()
            .filter(|x| j.iter().all(|&i| !self.is_left_descent(x, i)))
            .collect())
    }

    /// Elements `x` with `l(x s_j) > l(x)` for all `j` in `J`, up to length `bound`.
    pub fn minimal_right_reps(&self, j: &[usize], bound: u32) -> Result<Vec<AffElem>> {
        self.check_finite(j)?;
        Ok(self
            .elements_up_to(&self.all_nodes(), bound)
            .into_iter()
            .filter(|x| j.iter().all(|&i| !self.is_right_descent(x, i)))
            .collect())
    }

    /// The double coset `W_J x W_K` is regular when `x^{-1} W_J x` meets `W_K`
    /// only in the identity.
    pub fn regular_double_coset(&self, x: &AffElem, j: &[usize], k: &[usize]) -> Result<bool> {
        let wj = self.parabolic_elements(j)?;
        let wk: HashSet<AffElem> = self.parabolic_elements(k)?.into_iter().collect();
        let xi = self.inverse(x);
        Ok(wj
            .iter()
            .filter(|a| !a.is_identity())
            .all(|a| !wk.contains(&xi.mul(a).mul(x))))
    }

    /// Minimal representative of `W_J x` obtained by removing left descents in `J`.
    pub fn min_left_coset(&self, j: &[usize], x: &AffElem) -> AffElem {
        let mut cur = x.clone();
        loop {
            let l = self.length(&cur);
            match j
                .iter()
                .map(|&i| self.gens[i].mul(&cur))
                .find(|y| self.length(y) < l)
            {
                Some(y) => cur = y,
                None => return cur,
            }
        }
    }

    /// Minimal representative of `x W_K`.
    pub fn min_right_coset(&self, k: &[usize], x: &AffElem) -> AffElem {
        let mut cur = x.clone();
        loop {
            let l = self.length(&cur);
            match k
                .iter()
                .map(|&i| cur.mul(&self.gens[i]))
                .find(|y| self.length(y) < l)
            {
                Some(y) => cur = y,
                None => return cur,
            }
        }
    }

    // ---- dot action ----------------------------------------------------

    /// `lambda . x = (lambda + rho^vee) sigma - rho^vee + beta`.
    pub fn dot(&self, lambda: &[i32], x: &AffElem) -> Weight {
        let shift: Weight = sub_w(&x.act_linear(&self.two_rho), &self.two_rho)
            .into_iter()
            .map(|v| {
                debug_assert_eq!(v % 2, 0);
                v / 2
            })
            .collect();
        add_w(&add_w(&x.act_linear(lambda), &shift), &x.b)
    }

    /// `<lambda + rho^vee, a>` for the positive root `k`.
    pub fn shifted_pairing(&self, lambda: &[i32], k: usize) -> i32 {
        self.pairing(lambda, k) + self.roots[k].height
    }

    /// `lambda . s_i` for a simple node or the affine node.
    pub fn dot_gen(&self, lambda: &[i32], i: usize) -> Weight {
        let (k, shift) = if i == self.r {
            (self.theta, self.roots[self.theta].m)
        } else {
            (self.simple_root_index(i), 0)
        };
        let p = self.shifted_pairing(lambda, k) + shift;
        lambda
            .iter()
            .zip(&self.roots[k].coroot)
            .map(|(&l, &c)| l - p * c)
            .collect()
    }

    pub fn simple_root_index(&self, i: usize) -> usize {
        self.roots
            .iter()
            .position(|rt| rt.height == 1 && rt.root[i] == 1)
            .expect("simple root present")
    }

    /// Membership in the closed anti-dominant alcove for the dot action.
    pub fn in_closed_alcove(&self, v: &[i32]) -> bool {
        (0..self.roots.len()).all(|k| {
            let p = self.shifted_pairing(v, k);
            -self.roots[k].m <= p && p <= 0
        })
    }

    /// Walk `lambda` into the closed alcove, read off the stabilizer type and
    /// shorten the walk to the minimal coset representative.
    pub fn alcove_rep(&self, lambda: &[i32]) -> Result<AlcoveRep> {
        let size: i32 = lambda.iter().map(|x| x.abs()).sum();
        let cap = 10 * (1 + size as usize) * self.roots.len().max(1);
        let mut v = lambda.to_vec();
        let mut x = self.identity();
        let mut steps = 0usize;
        let th = self.theta;
        let mth = self.roots[th].m;
        loop {
            let simple = (0..self.r).find(|&i| {
                let k = self.simple_root_index(i);
                self.shifted_pairing(&v, k) > 0
            });
            let node = match simple {
                Some(i) => Some(i),
                None if self.shifted_pairing(&v, th) < -mth => Some(self.r),
                None => None,
            };
            let Some(i) = node else { break };
            v = self.dot_gen(&v, i);
            x = self.gens[i].mul(&x);
            steps += 1;
            if steps > cap {
                return Err(Error::NonTermination(format!(
                    "alcove walk from {lambda:?} exceeded {cap} steps"
                )));
            }
        }
        let mut j: Vec<usize> = (0..self.r)
            .filter(|&i| self.shifted_pairing(&v, self.simple_root_index(i)) == 0)
            .collect();
        if self.shifted_pairing(&v, th) == -mth {
            j.push(self.r);
        }
        let x = self.min_left_coset(&j, &x);
        debug_assert_eq!(self.dot(&v, &x), lambda);
        Ok(AlcoveRep { eta: v, j, x })
    }
}
