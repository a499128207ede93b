use std::collections::BTreeMap;

use metahecke::hecke::parabolic::OModule;
use metahecke::hecke::Hecke;
use metahecke::metaplectic::{lift, Coords, Letter, Metaplectic, PolyElement, QPoly, Strategy};
use metahecke::{Coeff, Laurent, Side, Weight};
use proptest::prelude::*;

fn dominant_up_to(m: &Metaplectic, total: i32) -> Vec<Weight> {
    let r = m.rank();
    let mut out = Vec::new();
    let mut w = vec![0; r];
    loop {
        if w.iter().sum::<i32>() <= total && m.is_dominant(&w) {
            out.push(w.clone());
        }
        let mut i = 0;
        loop {
            if i == r {
                return out;
            }
            w[i] += 1;
            if w[i] <= total {
                break;
            }
            w[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn kappa_intertwines_quantum_operators() {
    // kappa(mu) Y_mu T~ = sum over the quantum formula of kappa(nu) Y_nu
    for (name, n) in [("A1", 3), ("A1", 2), ("A2", 2), ("A2", 4), ("C2", 2)] {
        let m = Metaplectic::primitive(name, n).unwrap();
        if !m.ctx.simply_connected {
            continue;
        }
        let r = m.rank();
        let range: Vec<i32> = (-4..=4).collect();
        let weights: Vec<Weight> = if r == 1 {
            range.iter().map(|&a| vec![a]).collect()
        } else {
            range
                .iter()
                .flat_map(|&a| range.iter().map(move |&b| vec![a, b]))
                .collect()
        };
        for mu in &weights {
            for i in 0..r {
                let lhs = m.dl_mono(mu, i).scale(&m.kappa(mu).unwrap());
                let mut rhs = PolyElement::zero();
                for (nu, c) in m.quantum_dl_mono(mu, i).terms() {
                    rhs.add_term(nu.clone(), &(&Coeff::from_laurent(c) * &m.kappa(nu).unwrap()));
                }
                assert_eq!(lhs, rhs, "{name} n={n} mu={mu:?} s{i}");
            }
        }
    }
}

#[test]
fn kappa_is_translation_invariant() {
    for (name, n) in [("A1", 3), ("A2", 2)] {
        let m = Metaplectic::primitive(name, n).unwrap();
        let xs: Vec<Weight> = (0..m.rank()).map(|i| m.ctx.tilde_simple(i)).collect();
        for mu in dominant_up_to(&m, 5) {
            let k = m.kappa(&mu).unwrap();
            for x in &xs {
                for sgn in [-1, 1] {
                    let nu: Weight = mu.iter().zip(x).map(|(a, b)| a + sgn * b).collect();
                    assert_eq!(m.kappa(&nu).unwrap(), k, "{name} {mu:?} + {sgn}{x:?}");
                }
            }
        }
    }
}

#[test]
fn kappa_matches_walk_off_the_affine_wall() {
    let m = Metaplectic::primitive("A2", 2).unwrap();
    for mu in dominant_up_to(&m, 6) {
        let rep = m.g.alcove_rep(&mu).unwrap();
        if rep.j.contains(&m.rank()) {
            continue;
        }
        let v = m.v_vector(&mu).unwrap();
        assert_eq!(v, PolyElement::mono(mu.clone(), m.kappa(&mu).unwrap()), "{mu:?}");
    }
}

#[test]
fn y_and_v_straightening_agree() {
    for (name, n) in [("A1", 3), ("A2", 2)] {
        let m = Metaplectic::primitive(name, n).unwrap();
        let r = m.rank();
        for a in -5..=5 {
            for b in -5..=5 {
                if r == 1 && b != 0 {
                    continue;
                }
                let mu: Weight = if r == 1 { vec![a] } else { vec![a, b] };
                let y = m.straighten(&PolyElement::y(mu.clone()), Coords::Y).unwrap();
                let via_y = m.to_v_coords(&y).unwrap();
                let v = m
                    .straighten(&PolyElement::mono(mu.clone(), m.kappa_inverse(&mu).unwrap()), Coords::V)
                    .unwrap();
                assert_eq!(via_y, v, "{name} {mu:?}");
                let pure = m.straighten(&PolyElement::y(mu.clone()), Coords::V).unwrap();
                assert!(pure.terms.terms().all(|(_, c)| c.is_tau_pure()));
            }
        }
    }
}

#[test]
fn involution_and_hecke_cross_check() {
    for (name, n, total) in [("A1", 3, 12), ("A2", 2, 8)] {
        let m = Metaplectic::primitive(name, n).unwrap();
        let h = Hecke::new(m.g.clone());
        let finite: Vec<usize> = (0..m.rank()).collect();
        let mut nontrivial = 0;
        for lam in dominant_up_to(&m, total) {
            let rec = m.canonical_basis(&lam, Side::Minus).unwrap();
            let rep = m.g.alcove_rep(&lam).unwrap();
            let o = OModule::new(&h, &rep.j, &finite).unwrap();
            let tl = m.hecke_representative(&lam).unwrap();
            let hk = o.kl_basis(&tl, Side::Minus).unwrap();
            let mut got: BTreeMap<_, Laurent> = BTreeMap::new();
            for (mu, c) in rec.o() {
                got.insert(m.hecke_representative(&mu).unwrap(), c);
            }
            assert_eq!(got, hk, "{name} lambda={lam:?}");
            nontrivial += got.len() - 1;
        }
        assert!(nontrivial > 10, "{name}: only {nontrivial} off-diagonal entries");
        eprintln!("{name}: {nontrivial} off-diagonal entries");
    }
}

#[test]
fn canonical_examples() {
    let m = Metaplectic::primitive("A1", 3).unwrap();
    let rec = m.canonical_basis(&[2], Side::Minus).unwrap();
    assert_eq!(rec.o(), BTreeMap::from([(vec![0], Laurent::tau(-1)), (vec![2], Laurent::one())]));
    let d = m.bar_spherical(&rec.v_expansion).unwrap();
    assert_eq!(d, rec.v_expansion);
}

#[test]
fn straighten_respects_symmetrizer() {
    for (name, n) in [("A1", 3), ("A2", 2)] {
        let m = Metaplectic::primitive(name, n).unwrap();
        let scale = Coeff::from_laurent(&m.poincare_tau2().shift(-(m.l_w0() as i32)));
        for mu in [vec![0; m.rank()], vec![-2; m.rank()], vec![3; m.rank()]] {
            let f = PolyElement::y(mu.clone());
            let a = m.straighten(&m.symmetrize(&f), Coords::Y).unwrap().terms;
            let b = m.straighten(&f, Coords::Y).unwrap().terms.scale(&scale);
            assert_eq!(a, b, "{name} {mu:?}");
            let ff = m.symmetrize(&f);
            assert_eq!(m.symmetrize(&ff), ff.scale(&scale));
        }
    }
}

#[test]
fn hecke_words_satisfy_braid_relation() {
    let m = Metaplectic::primitive("C2", 2).unwrap();
    let f = PolyElement::y(vec![1, -2]);
    let a = m
        .hecke_word_act(&f, &[Letter::H(0), Letter::H(1), Letter::H(0), Letter::H(1)])
        .unwrap();
    let b = m
        .hecke_word_act(&f, &[Letter::H(1), Letter::H(0), Letter::H(1), Letter::H(0)])
        .unwrap();
    assert_eq!(a, b);
}

#[test]
fn stable_regime_has_no_straightening() {
    let m = Metaplectic::primitive("A2", 2).unwrap();
    let lam = vec![2, 2];
    let chi = m.chars.character(&lam).unwrap();
    let mu = vec![6, 6];
    let got = m.glr(&mu, &lam).unwrap();
    let k = m.kappa(&mu).unwrap();
    for (z, c) in chi.terms() {
        let zeta: Weight = z.iter().zip(&mu).map(|(a, b)| a + b).collect();
        let expect = &(&m.kappa(&zeta).unwrap() * &k.invert_unit().unwrap()) * &Coeff::from_laurent(c);
        assert_eq!(got[&zeta], expect);
    }
    assert_eq!(got.len(), chi.len());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn strategies_are_confluent(terms in prop::collection::vec((-6i32..=6, -6i32..=6, 0i64..6, -3i32..=3), 1..6)) {
        let m = Metaplectic::primitive("A2", 2).unwrap();
        let mut f = PolyElement::zero();
        for (a, b, k, e) in terms {
            f.add_term(vec![a, b], &Coeff::g(2, k).shift_tau(e));
        }
        let x = m.straighten_with(&f, Coords::Y, Strategy::MostNegativeFirst).unwrap();
        let y = m.straighten_with(&f, Coords::Y, Strategy::LowestWeightFirst).unwrap();
        prop_assert_eq!(&x, &y);
        prop_assert!(x.terms.terms().all(|(w, _)| m.is_dominant(w)));
        let again = m.straighten(&x.terms, Coords::Y).unwrap();
        prop_assert_eq!(again, x);
    }

    #[test]
    fn quadratic_relation(a in -4i32..=4, k in 0i64..3) {
        let m = Metaplectic::primitive("A1", 3).unwrap();
        let f = PolyElement::mono(vec![a], Coeff::g(3, k));
        let t = m.dl_act(&f, 0);
        let tt = m.dl_act(&t, 0);
        let rhs = t.scale(&(Coeff::tau(2) - Coeff::one())).add(&f.scale(&Coeff::tau(2)));
        prop_assert_eq!(tt, rhs);
    }

    #[test]
    fn cg_is_an_involution(a in -5i32..=5, b in -5i32..=5, i in 0usize..2) {
        let m = Metaplectic::primitive("A2", 2).unwrap();
        let f = PolyElement::y(vec![a, b]);
        let once = m.cg_act(&f, i).unwrap();
        let twice = m.cg_reflect(&once, i).unwrap();
        prop_assert_eq!(twice, metahecke::poly::Frac::from_poly(f.clone(), 2));
        prop_assert_eq!(m.dl_via_cg(&f, i).unwrap(), metahecke::poly::Frac::from_poly(m.dl_act(&f, i), 2));
    }

    #[test]
    fn involution_is_semilinear(c in -3i32..=3, lam in 0i32..=8) {
        let m = Metaplectic::primitive("A1", 3).unwrap();
        let x = m.canonical_basis(&[lam], Side::Minus).unwrap().v_expansion;
        let mut y = x.clone();
        y.terms = x.terms.scale(&Coeff::tau(c));
        let dy = m.bar_spherical(&y).unwrap();
        let dx = m.bar_spherical(&x).unwrap();
        prop_assert_eq!(dy.terms, dx.terms.scale(&Coeff::tau(-c)));
    }
}

#[test]
fn quantum_glr_is_tau_pure_lift() {
    let m = Metaplectic::primitive("A1", 3).unwrap();
    let q = m.glr_quantum(&[0], &[3]).unwrap();
    let mut p = QPoly::zero();
    for (w, c) in &q {
        p.add_term(w.clone(), c);
    }
    let y = m.v_to_y(&lift(&p)).unwrap();
    let g = m.glr(&[0], &[3]).unwrap();
    let k = m.kappa_inverse(&[0]).unwrap();
    for (w, c) in y.terms() {
        assert_eq!(&g[w], &(c * &k));
    }
}
