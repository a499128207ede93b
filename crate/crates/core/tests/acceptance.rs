//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits with a
//! nonzero status if any criterion fails.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::time::Instant;

use num_complex::Complex64;
use num_rational::Rational64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use metahecke::gauss::PadicContext;
use metahecke::hecke::bernstein::Bernstein;
use metahecke::hecke::parabolic::{MModule, NModule, OModule};
use metahecke::hecke::Hecke;
use metahecke::metaplectic::{
    lift, Coords, Metaplectic, PolyElement, QPoly, Strategy, TensorVariant,
};
use metahecke::poly::add_w;
use metahecke::weyl::AffineWeyl;
use metahecke::{AffElem, CartanDatum, Coeff, Laurent, RootContext, Side, Twist, Weight};

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}

fn lib<T>(r: metahecke::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{}: {e}", e.name()))
}

// ---- helpers ---------------------------------------------------------------

fn box_weights(r: usize, lo: i32, hi: i32) -> Vec<Weight> {
    let mut out = vec![vec![]];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|w: Weight| {
                (lo..=hi).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

fn dominant_up_to(m: &Metaplectic, total: i32) -> Vec<Weight> {
    box_weights(m.rank(), 0, total)
        .into_iter()
        .filter(|w| w.iter().sum::<i32>() <= total && m.is_dominant(w))
        .collect()
}

/// Generators of the dominant cone of the twisted lattice used by the suite.
fn tilde_generators(name: &str) -> Vec<Weight> {
    match name {
        "A1" => vec![vec![3]],
        "A2" => vec![vec![2, 2], vec![4, 2], vec![2, 4]],
        _ => unreachable!(),
    }
}

/// Generators of the dominant cone of the coweight lattice.
fn fundamentals(name: &str) -> Vec<Weight> {
    match name {
        "A1" => vec![vec![1]],
        "A2" => vec![vec![1, 1], vec![2, 1], vec![1, 2]],
        _ => unreachable!(),
    }
}

/// All sums of at most `total` generators.
fn cone_sums(gens: &[Weight], total: i32) -> BTreeSet<Weight> {
    let mut out = BTreeSet::new();
    for c in box_weights(gens.len(), 0, total) {
        if c.iter().sum::<i32>() > total {
            continue;
        }
        let mut w = vec![0; gens[0].len()];
        for (ci, g) in c.iter().zip(gens) {
            w = add_w(&w, &g.iter().map(|x| x * ci).collect::<Vec<_>>());
        }
        out.insert(w);
    }
    out
}

fn zetas(name: &str) -> Vec<Weight> {
    let gens = tilde_generators(name);
    let mut out = BTreeSet::new();
    out.insert(vec![0; gens[0].len()]);
    for (i, a) in gens.iter().enumerate() {
        out.insert(a.clone());
        for b in &gens[i..] {
            out.insert(add_w(a, b));
        }
    }
    out.into_iter().collect()
}

fn braid_order(a: &[Vec<i32>], i: usize, j: usize) -> usize {
    match a[i][j] * a[j][i] {
        0 => 2,
        1 => 3,
        2 => 4,
        3 => 6,
        _ => unreachable!(),
    }
}

fn random_coeff(rng: &mut StdRng, n: u32) -> Coeff {
    let c = Coeff::g(n, rng.gen_range(0..n as i64 + 1)).shift_tau(rng.gen_range(-3..=3));
    if rng.gen_bool(0.5) {
        c
    } else {
        -c
    }
}

fn random_laurent(rng: &mut StdRng) -> Laurent {
    let mut l = Laurent::zero();
    for _ in 0..rng.gen_range(1..4) {
        l.add_term(rng.gen_range(-4..=4), rng.gen_range(-3..=3));
    }
    if l.is_zero() {
        Laurent::one()
    } else {
        l
    }
}

// ---- Freudenthal oracle -------------------------------------------------

/// Weight multiplicities of the irreducible representation of the twisted
/// system with highest weight `lambda`, by Freudenthal's formula over the
/// rationals. The invariant form is `B`, the roots are the twisted coroots.
fn freudenthal(m: &Metaplectic, lambda: &[i32]) -> BTreeMap<Weight, i64> {
    let g = &m.g;
    let ctx = &m.ctx;
    let xs: Vec<Weight> = (0..g.roots.len()).map(|k| g.x_coroot(k)).collect();
    let two_rho = xs.iter().fold(ctx.zero(), |a, x| add_w(&a, x));
    let form = |a: &[i32], b: &[i32]| ctx.b_form(a, b);
    let norm_l = form(lambda, lambda);
    let ns: Vec<i32> = (0..m.rank()).map(|i| m.n_simple(i)).collect();
    let dominant_rep = |v: &Weight| -> Weight {
        m.chars
            .w
            .iter()
            .map(|(w, _)| w.act_linear(v))
            .find(|u| m.is_dominant(u))
            .unwrap()
    };
    let below = |d: &Weight| -> bool {
        lambda
            .iter()
            .zip(d)
            .zip(&ns)
            .all(|((l, x), n)| (l - x) >= 0 && (l - x) % n == 0)
    };
    let mut memo: HashMap<Weight, Rational64> = HashMap::new();
    // iterative evaluation over dominant weights in decreasing height
    let mut dom: Vec<Weight> = box_weights(m.rank(), 0, *lambda.iter().max().unwrap())
        .into_iter()
        .filter(|d| m.is_dominant(d) && below(d))
        .collect();
    dom.sort_by_key(|d| -d.iter().sum::<i32>());
    for mu in &dom {
        if mu.as_slice() == lambda {
            memo.insert(mu.clone(), Rational64::from_integer(1));
            continue;
        }
        let mut num = Rational64::from_integer(0);
        for x in &xs {
            let mut k = 1;
            loop {
                let v: Weight = mu.iter().zip(x).map(|(a, b)| a + k * b).collect();
                if form(&v, &v) > norm_l {
                    break;
                }
                let d = dominant_rep(&v);
                let mv = if below(&d) {
                    *memo.get(&d).unwrap_or(&Rational64::from_integer(0))
                } else {
                    Rational64::from_integer(0)
                };
                num += mv * Rational64::from_integer(form(&v, x));
                k += 1;
            }
        }
        let sum_lm = add_w(lambda, mu);
        let diff: Weight = lambda.iter().zip(mu).map(|(a, b)| a - b).collect();
        let den = form(&diff, &add_w(&sum_lm, &two_rho));
        let val = num * Rational64::from_integer(2) / Rational64::from_integer(den);
        memo.insert(mu.clone(), val);
    }
    let mut out = BTreeMap::new();
    for mu in &dom {
        let v = memo[mu];
        if *v.numer() == 0 {
            continue;
        }
        assert!(v.is_integer(), "non-integral multiplicity {v}");
        let orbit: BTreeSet<Weight> = m.chars.w.iter().map(|(w, _)| w.act_linear(mu)).collect();
        for o in orbit {
            out.insert(o, v.to_integer());
        }
    }
    out
}

// ---- criteria ------------------------------------------------------------

fn c1_operator_relations() -> Check {
    let mut contexts = 0;
    let mut monos = 0;
    for name in ["A1", "A2", "C2"] {
        let datum = lib(CartanDatum::parse(name))?;
        let prim = datum.primitive_q();
        for n in 1..=3u32 {
            for twist in [
                Twist::Primitive,
                Twist::Explicit(prim.iter().map(|q| 2 * q).collect()),
            ] {
                let ctx = match RootContext::new(datum.clone(), twist.clone(), n) {
                    Ok(c) => c,
                    Err(_) => continue,
                };
                contexts += 1;
                let m = Metaplectic::new(ctx);
                let r = m.rank();
                let a = m.ctx.a().clone();
                let t2 = Coeff::tau(2);
                let t2m1 = &t2 - &Coeff::one();
                for w in box_weights(r, -3, 3) {
                    monos += 1;
                    let f = PolyElement::y(w.clone());
                    for i in 0..r {
                        let t = m.dl_act(&f, i);
                        let lhs = m.dl_act(&t, i);
                        let rhs = t.scale(&t2m1).add(&f.scale(&t2));
                        ensure!(lhs == rhs, "quadratic relation fails: {name} n={n} {twist:?} Y{w:?} s{i}");
                        for j in i + 1..r {
                            let k = braid_order(&a, i, j);
                            let (mut x, mut y) = (f.clone(), f.clone());
                            for step in 0..k {
                                let (p, q) = if step % 2 == 0 { (i, j) } else { (j, i) };
                                x = m.dl_act(&x, p);
                                y = m.dl_act(&y, q);
                            }
                            ensure!(x == y, "braid relation fails: {name} n={n} {twist:?} Y{w:?} s{i} s{j}");
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{contexts} contexts, {monos} monomials"))
}

fn c2_pgl3_values() -> Check {
    let mut failures = Vec::new();
    let mut off_block = BTreeSet::new();
    for q in [1i64, 5, 7] {
        let datum = lib(CartanDatum::parse("A2"))?;
        let ctx = lib(RootContext::new(datum, Twist::Explicit(vec![q, q]), 6))?;
        let m = Metaplectic::new(ctx);
        let g = |k: i64| Coeff::g(6, k);
        let expect: Vec<(Weight, Coeff, Weight)> = vec![
            (vec![-1, -2], g(-q).shift_tau(-1), vec![-2, -2]),
            (vec![0, 0], (&(&g(-q) * &g(-2 * q)) * &g(-q)).shift_tau(-3), vec![-2, -2]),
            (vec![0, -2], g(-3 * q).shift_tau(-1), vec![-3, -2]),
            (vec![2, 3], (&g(-3 * q) * &g(-3 * q)).shift_tau(-2), vec![-3, -2]),
        ];
        for (mu, c, eta) in &expect {
            let v = lib(m.v_vector(mu))?;
            let want = PolyElement::mono(mu.clone(), c.clone());
            if v != want {
                failures.push(format!("Q={q}: v{mu:?} = {v}, expected {want}"));
            }
            if lib(m.g.alcove_rep(mu))?.eta != *eta {
                off_block.insert(mu.clone());
            }
        }
    }
    ensure!(failures.is_empty(), "{}", failures.join("; "));
    let mut detail = "four stated values reproduced for Q in {1, 5, 7}".to_string();
    for mu in off_block {
        detail += &format!("; note: {mu:?} lies outside the stated block, the value holds there anyway");
    }
    Ok(detail)
}

fn straighten_contexts() -> Vec<(&'static str, u32)> {
    vec![("A1", 2), ("A1", 3), ("A2", 2), ("A2", 4), ("C2", 2)]
}

fn c3_straightening() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut used = 0;
    for (name, n) in straighten_contexts() {
        let m = lib(Metaplectic::primitive(name, n))?;
        if !m.ctx.simply_connected {
            continue;
        }
        used += 1;
        let r = m.rank();
        for _ in 0..200 {
            let mut f = PolyElement::zero();
            for _ in 0..rng.gen_range(1..=5) {
                let w: Weight = (0..r).map(|_| rng.gen_range(-6..=6)).collect();
                f.add_term(w, &random_coeff(&mut rng, n));
            }
            let a = lib(m.straighten_with(&f, Coords::Y, Strategy::MostNegativeFirst))?;
            let b = lib(m.straighten_with(&f, Coords::Y, Strategy::LowestWeightFirst))?;
            ensure!(a == b, "{name} n={n}: strategies disagree on {f}");
            ensure!(
                a.terms.terms().all(|(w, _)| m.is_dominant(w)),
                "{name} n={n}: non-dominant output"
            );
            let again = lib(m.straighten(&a.terms, Coords::Y))?;
            ensure!(again == a, "{name} n={n}: not idempotent on {f}");
            // Y- and v-coordinate rules agree through kappa
            let fv = lib(m.y_to_v(&f))?;
            let via_v = lib(m.straighten(&fv, Coords::V))?;
            ensure!(
                lib(m.to_v_coords(&a))? == via_v,
                "{name} n={n}: Y and v straightening disagree on {f}"
            );
        }
        for w in box_weights(r, -4, 4) {
            if (0..r).any(|i| m.pairing(&w, i) == -1) {
                let s = lib(m.straighten(&PolyElement::y(w.clone()), Coords::Y))?;
                ensure!(s.is_zero(), "{name} n={n}: dot-fixed {w:?} gives {s}");
            }
        }
    }
    let m = lib(Metaplectic::primitive("A1", 3))?;
    let g = |k| Coeff::g(3, k);
    let sy = |w: i32| lib(m.straighten(&PolyElement::y(vec![w]), Coords::Y)).map(|s| s.terms);
    ensure!(sy(-1)? == PolyElement::mono(vec![0], g(2).shift_tau(-2)), "table entry Y[-1]");
    ensure!(sy(-2)? == PolyElement::mono(vec![1], Coeff::from_int(-1)), "table entry Y[-2]");
    let mut e3 = PolyElement::mono(vec![2], g(1).shift_tau(-2));
    e3.add_term(vec![0], &(Coeff::tau(-2) - Coeff::one()));
    ensure!(sy(-3)? == e3, "table entry Y[-3]");
    Ok(format!("{used} contexts x 200 random inputs, A1/n=3 table"))
}

fn c4_involution() -> Check {
    let mut rng = StdRng::seed_from_u64(4);
    let mut count = 0;
    for (name, n) in [("A1", 3), ("A2", 2)] {
        let m = lib(Metaplectic::primitive(name, n))?;
        let weights = dominant_up_to(&m, 12);
        for lam in &weights {
            count += 1;
            // dual_v asserts unitriangularity with diagonal 1
            lib(m.dual_v(lam))?;
            let x = m.from_v_terms(&BTreeMap::from([(lam.clone(), Laurent::one())]));
            let dd = lib(m.bar_spherical(&lib(m.bar_spherical(&x))?))?;
            ensure!(dd == x, "{name}: D^2 != id at {lam:?}");
        }
        for _ in 0..50 {
            let a = &weights[rng.gen_range(0..weights.len())];
            let b = &weights[rng.gen_range(0..weights.len())];
            if lib(m.block_descriptor(a))?.eta != lib(m.block_descriptor(b))?.eta {
                continue;
            }
            let (ca, cb) = (random_laurent(&mut rng), random_laurent(&mut rng));
            let mut t = BTreeMap::new();
            t.insert(a.clone(), ca.clone());
            *t.entry(b.clone()).or_insert_with(Laurent::zero) += &cb;
            let lhs = lib(m.bar_spherical(&m.from_v_terms(&t)))?;
            let da = lib(m.dual_v(a))?;
            let db = lib(m.dual_v(b))?;
            let mut rhs = QPoly::zero();
            for (w, c) in da {
                rhs.add_term(w, &(&ca.bar() * &c));
            }
            for (w, c) in db {
                rhs.add_term(w, &(&cb.bar() * &c));
            }
            ensure!(lhs.terms == lift(&rhs), "{name}: D is not semilinear");
        }
    }
    Ok(format!("{count} dominant weights with coordinate sum <= 12"))
}

fn c5_cross_validation() -> Check {
    let mut pairs = 0;
    for (name, n) in [("A1", 3), ("A2", 2)] {
        let m = lib(Metaplectic::primitive(name, n))?;
        let h = Hecke::new(m.g.clone());
        let finite: Vec<usize> = (0..m.rank()).collect();
        let mut modules: HashMap<Vec<usize>, OModule> = HashMap::new();
        for lam in dominant_up_to(&m, 12) {
            let rec = lib(m.canonical_basis(&lam, Side::Minus))?;
            let rep = lib(m.g.alcove_rep(&lam))?;
            if !modules.contains_key(&rep.j) {
                modules.insert(rep.j.clone(), lib(OModule::new(&h, &rep.j, &finite))?);
            }
            let o = &modules[&rep.j];
            let tl = lib(m.hecke_representative(&lam))?;
            let hk = lib(o.kl_basis(&tl, Side::Minus))?;
            let (_, block) = lib(m.block_of(&lam))?;
            let ours = rec.o();
            for mu in &block {
                pairs += 1;
                let t = lib(m.hecke_representative(mu))?;
                let a = ours.get(mu).cloned().unwrap_or_default();
                let b = hk.get(&t).cloned().unwrap_or_default();
                ensure!(a == b, "{name}: o^-({mu:?}, {lam:?}) = {a} but the Hecke side gives {b}");
            }
            let hecke_support: BTreeSet<&AffElem> = hk.keys().collect();
            ensure!(
                hecke_support.len() == ours.len(),
                "{name}: support sizes differ at {lam:?}"
            );
        }
    }
    let m = lib(Metaplectic::primitive("A1", 3))?;
    let o = lib(m.canonical_basis(&[2], Side::Minus))?.o();
    ensure!(
        o == BTreeMap::from([(vec![0], Laurent::tau(-1)), (vec![2], Laurent::one())]),
        "G^-_2 = {o:?}"
    );
    Ok(format!("{pairs} pairs agree"))
}

fn c6_glr() -> Check {
    let mut count = 0;
    // (a) kappa-ratio identity and (c) positivity
    for (name, n) in [("A1", 3), ("A2", 2)] {
        let m = lib(Metaplectic::primitive(name, n))?;
        // mu <= 4 fund: sums of at most four fundamental generators, together
        // with every dominant mu whose coordinates are at most 4
        let mut mus = cone_sums(&fundamentals(name), 4);
        mus.extend(
            dominant_up_to(&m, 4 * m.rank() as i32)
                .into_iter()
                .filter(|mu| mu.iter().all(|&x| x <= 4)),
        );
        for mu in mus {
            for lam in zetas(name) {
                count += 1;
                let g = lib(m.glr(&mu, &lam))?;
                let q = lib(m.glr_quantum(&mu, &lam))?;
                ensure!(
                    g.keys().collect::<Vec<_>>() == q.keys().collect::<Vec<_>>(),
                    "{name}: supports differ for ({mu:?}, {lam:?})"
                );
                let km = lib(m.kappa_inverse(&mu))?;
                for (z, c) in &q {
                    let expect = &(&lib(m.kappa(z))? * &km) * &Coeff::from_laurent(c);
                    ensure!(g[z] == expect, "{name}: kappa ratio fails at {z:?} for ({mu:?}, {lam:?})");
                    ensure!(
                        c.terms().all(|(_, v)| v >= 0),
                        "{name}: negative coefficient {c} at {z:?} for ({mu:?}, {lam:?})"
                    );
                }
            }
        }
    }
    // (b) n = 1 against classical Littlewood-Richardson by peeling, with the
    // characters checked against Freudenthal's formula
    for name in ["A1", "A2"] {
        let m = lib(Metaplectic::primitive(name, 1))?;
        for lam in dominant_up_to(&m, 4) {
            let chi = lib(m.chars.character(&lam))?;
            let fr = freudenthal(&m, &lam);
            let ours: BTreeMap<Weight, i64> =
                chi.terms().map(|(w, c)| (w.clone(), c.coeff(0))).collect();
            ensure!(ours == fr, "{name}: character of {lam:?} disagrees with Freudenthal");
            for mu in dominant_up_to(&m, 4) {
                count += 1;
                let g = lib(m.glr(&mu, &lam))?;
                let lr = lib(m.chars.lr_coeffs(&mu, &lam))?;
                let lr: BTreeMap<Weight, Coeff> =
                    lr.into_iter().map(|(w, c)| (w, Coeff::from_int(c))).collect();
                ensure!(g == lr, "{name}: n=1 gLR({mu:?}, {lam:?}) differs from LR");
            }
        }
    }
    for (name, n) in [("A1", 3), ("A2", 2)] {
        let m = lib(Metaplectic::primitive(name, n))?;
        for lam in zetas(name) {
            let chi = lib(m.chars.character(&lam))?;
            let ours: BTreeMap<Weight, i64> =
                chi.terms().map(|(w, c)| (w.clone(), c.coeff(0))).collect();
            ensure!(ours == freudenthal(&m, &lam), "{name}: twisted character of {lam:?}");
        }
    }
    // (d)
    let m = lib(Metaplectic::primitive("A1", 3))?;
    let got = lib(m.glr(&[0], &[3]))?;
    let expect = BTreeMap::from([
        (vec![3], Coeff::one()),
        (vec![2], Coeff::g(3, 1).shift_tau(-2)),
        (vec![0], Coeff::tau(-2)),
    ]);
    ensure!(got == expect, "gLR(0, 3) = {got:?}");
    Ok(format!("{count} (mu, lambda) pairs"))
}

fn c7_tensor() -> Check {
    let mut count = 0;
    for (name, n) in [("A1", 3), ("A2", 2)] {
        let m = lib(Metaplectic::primitive(name, n))?;
        for l0 in m.ctx.box_elements() {
            for z in zetas(name) {
                for v in [TensorVariant::Minus, TensorVariant::PlusDagger] {
                    count += 1;
                    let c = lib(m.tensor_product_check(&l0, &z, v))?;
                    ensure!(
                        c.holds,
                        "{name} {v}: lambda0={l0:?} zeta={z:?}: {:?} vs {:?}",
                        c.lhs,
                        c.rhs
                    );
                }
            }
        }
    }
    Ok(format!("{count} checks"))
}

fn c8_steinberg() -> Check {
    let mut count = 0;
    for (name, n) in [("A1", 3), ("A2", 2)] {
        let m = lib(Metaplectic::primitive(name, n))?;
        let gens = tilde_generators(name);
        let st = lib(m.ctx.steinberg_point())?;
        // sums of at most three cone generators, and every dominant element
        // with coordinates at most 3 in the basis n(a_i) a_i^vee
        let mut mus = cone_sums(&gens, 3);
        for c in box_weights(m.rank(), 0, 3) {
            let w: Weight = c.iter().enumerate().map(|(i, x)| x * m.n_simple(i)).collect();
            ensure!(m.ctx.in_tilde(&w), "{name}: {w:?} is not in the twisted lattice");
            if m.is_dominant(&w) {
                mus.insert(w);
            }
        }
        for mu in mus {
            count += 1;
            let (ok, got) = lib(m.steinberg_check(&mu))?;
            ensure!(ok, "{name}: [Y_st] * c_{mu:?} = {got:?}");
            let top = add_w(&st, &mu);
            for side in [Side::Minus, Side::Plus] {
                let rec = lib(m.canonical_basis(&top, side))?;
                ensure!(
                    rec.expansion.terms == PolyElement::y(top.clone()),
                    "{name}: G^{side}_{top:?} = {}",
                    rec.expansion
                );
            }
        }
    }
    Ok(format!("{count} weights"))
}

fn c9_gauss() -> Check {
    let mut rng = StdRng::seed_from_u64(9);
    for q in [7u64, 13] {
        let ctx = lib(PadicContext::new(q, 3))?;
        ensure!(ctx.gauss(0) == Complex64::new(-1.0, 0.0), "g_0 != -1 for q={q}");
        for k in 1..3 {
            let prod = ctx.gauss(k) * ctx.gauss(3 - k);
            ensure!((prod - q as f64).norm() <= 1e-9, "g_k g_(n-k) = {prod} for q={q}");
            ensure!(
                (ctx.gauss(k).norm() - (q as f64).sqrt()).abs() <= 1e-9,
                "|g_{k}| for q={q}"
            );
        }
        for _ in 0..100 {
            let a = random_coeff(&mut rng, 3) + random_coeff(&mut rng, 3);
            let b = random_coeff(&mut rng, 3);
            let lhs = ctx.specialize(&(&a * &b));
            let rhs = ctx.specialize(&a) * ctx.specialize(&b);
            let scale = lhs.norm().max(rhs.norm()).max(1.0);
            ensure!((lhs - rhs).norm() / scale <= 1e-9, "not multiplicative: {a} * {b}");
        }
    }
    Ok("q in {7, 13}, n = 3".into())
}

fn sign_power(l: u32) -> Laurent {
    Laurent::mono(if l % 2 == 0 { 1 } else { -1 }, -(l as i32))
}

fn c10_hecke() -> Check {
    // KL bases
    let ctx = lib(RootContext::primitive("A2", 1))?;
    let h = Hecke::new(AffineWeyl::new(&ctx, false));
    for w in h.g.elements_up_to(&h.g.all_nodes(), 4) {
        for side in [Side::Plus, Side::Minus] {
            let c = lib(h.kl_basis(&w, side))?;
            ensure!(h.bar(&c) == c, "KL element not self-dual");
            for (y, a) in &c {
                if *y == w {
                    ensure!(a.is_one(), "diagonal");
                } else {
                    ensure!(h.g.bruhat_leq(y, &w), "not triangular");
                    ensure!(
                        if side == Side::Plus { a.in_plus() } else { a.in_minus() },
                        "sign class"
                    );
                }
            }
        }
    }
    // KL polynomials of A3
    let ctx = lib(RootContext::primitive("A3", 1))?;
    let h = Hecke::new(AffineWeyl::new(&ctx, false));
    let els = lib(h.g.parabolic_elements(&[0, 1, 2]))?;
    ensure!(els.len() == 24, "|W(A3)| = {}", els.len());
    for w in &els {
        for y in &els {
            if !h.g.bruhat_leq(y, w) {
                continue;
            }
            let p = lib(h.kl_polynomial(y, w))?.bar();
            ensure!(p.coeff(0) == 1, "constant term of P");
            ensure!(p.terms().all(|(e, _)| e <= 0 && e % 2 == 0), "P = {p} not in Z[tau^-2]");
        }
    }
    // parabolic identities
    for (name, bound) in [("A1", 6), ("A2", 6)] {
        let ctx = lib(RootContext::primitive(name, 1))?;
        let h = Hecke::new(AffineWeyl::new(&ctx, false));
        let g = &h.g;
        let all = g.elements_up_to(&g.all_nodes(), bound);
        let subsets: Vec<Vec<usize>> = (0..(1u32 << (g.r + 1)))
            .map(|mk| (0..=g.r).filter(|i| mk & (1 << i) != 0).collect::<Vec<_>>())
            .filter(|s: &Vec<usize>| s.len() <= g.r)
            .collect();
        for j in subsets {
            let (w0j, _, _) = lib(g.parabolic_data(&j))?;
            let wj = lib(g.parabolic_elements(&j))?;
            let m = lib(MModule::new(&h, &j))?;
            let nm = lib(NModule::new(&h, &j))?;
            let lb = h.len(&w0j);
            let mreps: Vec<&AffElem> = all.iter().filter(|x| m.is_rep(x)).collect();
            for w in mreps.iter().filter(|w| h.len(w) + lb <= bound) {
                let mm = lib(m.kl_basis(w, Side::Minus))?;
                let mp = lib(m.kl_basis(w, Side::Plus))?;
                let nm_inv = lib(nm.kl_basis(&g.inverse(w), Side::Minus))?;
                for y in &mreps {
                    let a = mm.get(*y).cloned().unwrap_or_default();
                    let b = lib(h.kl_coeff(&y.mul(&w0j), &w.mul(&w0j), Side::Minus))?;
                    ensure!(a == b, "{name}: m^- identity, J={j:?}");
                    let sign = if (h.len(y) + h.len(w)) % 2 == 0 { 1 } else { -1 };
                    let n_inv = nm_inv.get(&g.inverse(y)).cloned().unwrap_or_default();
                    let mpos = mp.get(*y).cloned().unwrap_or_default();
                    ensure!(mpos == n_inv.bar().scale(sign), "{name}: m/n identity, J={j:?}");
                }
            }
            let nreps: Vec<&AffElem> = all.iter().filter(|x| nm.is_rep(x)).collect();
            for w in &nreps {
                let nmw = lib(nm.kl_basis(w, Side::Minus))?;
                for y in &nreps {
                    let got = nmw.get(*y).cloned().unwrap_or_default();
                    let mut expect = Laurent::zero();
                    for z in &wj {
                        let c = lib(h.kl_coeff(&z.mul(y), w, Side::Minus))?;
                        expect += &(&c * &sign_power(h.len(z)));
                    }
                    ensure!(got == expect, "{name}: n^- identity, J={j:?}");
                }
            }
        }
    }
    // Bernstein relation
    for (name, n, tw) in [("A1", 1, false), ("A1", 3, true), ("A2", 1, false), ("C2", 1, false)] {
        let ctx = lib(RootContext::primitive(name, n))?;
        let b = Bernstein::new(AffineWeyl::new(&ctx, tw));
        let r = ctx.rank();
        for coeffs in box_weights(r, -1, 1) {
            let mut beta = vec![0; r];
            for (c, x) in coeffs.iter().zip(&b.xs) {
                beta = add_w(&beta, &x.iter().map(|v| v * c).collect::<Vec<_>>());
            }
            for i in 0..r {
                ensure!(lib(b.im_relation_holds(&beta, i))?, "{name}: BLR at {beta:?} s{i}");
            }
        }
    }
    Ok("KL bases, A3 polynomials, parabolic identities, Bernstein relation".into())
}

fn c11_casselman_shalika() -> Check {
    for (name, funds) in [
        ("A1", vec![vec![1]]),
        ("A2", vec![vec![1, 1], vec![2, 1], vec![1, 2]]),
    ] {
        let m = lib(Metaplectic::primitive(name, 1))?;
        let r = m.rank();
        let mut mus = vec![vec![0; r]];
        for f in &funds {
            mus.push(f.clone());
            mus.push(f.iter().map(|x| 2 * x).collect());
        }
        let mut delta = QPoly::constant(r, Laurent::one());
        for rt in &m.g.roots {
            let fac = QPoly::constant(r, Laurent::one())
                .sub(&QPoly::mono(rt.coroot.iter().map(|c| -c).collect(), Laurent::tau(-2)));
            delta = delta.mul(&fac);
        }
        for mu in mus {
            let got = m.symmetrize(&PolyElement::y(mu.clone()));
            let chi = lib(m.chars.character(&mu))?;
            let expect = delta.mul(&chi).scale(&Laurent::tau(m.l_w0() as i32));
            ensure!(got == lift(&expect), "{name}: Y_{mu:?} eps differs");
        }
    }
    Ok("tau^{l(w0)} prod (1 - tau^-2 Y_-a) chi_mu".into())
}

fn c12_linkage() -> Check {
    let mut count = 0;
    let mut strict = 0;
    for (name, n) in [("A1", 3), ("A2", 2)] {
        let m = lib(Metaplectic::primitive(name, n))?;
        let mut inverse: BTreeMap<Weight, BTreeMap<Weight, Laurent>> = BTreeMap::new();
        for lam in dominant_up_to(&m, 12) {
            let o = lib(m.canonical_basis(&lam, Side::Minus))?.o();
            for (mu, c) in &o {
                if !c.is_zero() {
                    count += 1;
                    ensure!(
                        lib(m.strongly_linked(mu, &lam))?,
                        "{name}: G^-_{lam:?} involves {mu:?} but they are not strongly linked"
                    );
                }
            }
            // [v_lam] = G_lam - sum_{mu < lam} o_mu [v_mu], expanded in G's
            let mut d: BTreeMap<Weight, Laurent> = BTreeMap::from([(lam.clone(), Laurent::one())]);
            for (mu, c) in &o {
                if *mu == lam {
                    continue;
                }
                for (nu, e) in &inverse[mu] {
                    *d.entry(nu.clone()).or_insert_with(Laurent::zero) -= &(c * e);
                }
            }
            d.retain(|_, c| !c.is_zero());
            for mu in d.keys() {
                count += 1;
                ensure!(
                    lib(m.strongly_linked(mu, &lam))?,
                    "{name}: [v_{lam:?}] involves G^-_{mu:?} but they are not strongly linked"
                );
            }
            strict += o
                .keys()
                .chain(d.keys())
                .filter(|mu| !m.strongly_linked_dominant_chain(mu, &lam).unwrap_or(false))
                .count();
            inverse.insert(lam, d);
        }
    }
    Ok(format!(
        "{count} nonzero transition coefficients; {strict} of them need a non-dominant link"
    ))
}

fn main() {
    let criteria: Vec<(&str, fn() -> Check)> = vec![
        ("operator relations", c1_operator_relations),
        ("PGL3 n=6 v-basis values", c2_pgl3_values),
        ("straightening", c3_straightening),
        ("involution suite", c4_involution),
        ("canonical basis vs parabolic KL", c5_cross_validation),
        ("twisted LR suite", c6_glr),
        ("tensor-product theorems", c7_tensor),
        ("Steinberg-point identity", c8_steinberg),
        ("Gauss sums", c9_gauss),
        ("Hecke backbone", c10_hecke),
        ("Casselman-Shalika degeneration", c11_casselman_shalika),
        ("strong-linkage necessity", c12_linkage),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        let idx = i + 1;
        let start = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("criterion {idx:>2}: PASS  {name} ({detail}) [{secs:.1}s]"),
            Err(why) => {
                println!("criterion {idx:>2}: FAIL  {name}: {why} [{secs:.1}s]");
                failed.push(idx);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
