//! Dispatch of validated jobs to the library.

use std::collections::BTreeMap;

use num_complex::Complex64;

use metahecke::gauss::PadicContext;
use metahecke::hecke::parabolic::{MModule, NModule, OModule};
use metahecke::hecke::{HElem, Hecke};
use metahecke::metaplectic::{Metaplectic, PolyElement, SphericalElement};
use metahecke::weyl::AffineWeyl;
use metahecke::{Coeff, Laurent, Weight};

use crate::config::{Command, DlOp, JobConfig, ModuleKind, Specialization};
use crate::output::{Key, Record, Value};
use crate::CliError;

/// A result entry before rendering.
enum Val {
    Coeff(Coeff),
    Laurent(Laurent),
    Text(String),
    Complex(Complex64),
}

fn complex(z: Complex64) -> Value {
    Value::Complex([z.re, z.im])
}

fn render(v: Val, sp: &Specialization) -> Value {
    match (v, sp) {
        (Val::Text(s), _) => Value::Text(s),
        (Val::Complex(z), _) => complex(z),
        (Val::Coeff(c), Specialization::None) => Value::Text(c.to_string()),
        (Val::Coeff(c), Specialization::Quantum) => Value::Text(c.quantum().to_string()),
        (Val::Coeff(c), Specialization::Padic(p)) => complex(p.specialize(&c)),
        (Val::Laurent(l), Specialization::Padic(p)) => complex(p.specialize(&Coeff::from_laurent(&l))),
        (Val::Laurent(l), _) => Value::Text(l.to_string()),
    }
}

fn weight_entries(p: &PolyElement) -> Vec<(Key, Val)> {
    p.terms()
        .map(|(w, c)| (Key::Weight(w.clone()), Val::Coeff(c.clone())))
        .collect()
}

fn laurent_entries(m: BTreeMap<Weight, Laurent>) -> Vec<(Key, Val)> {
    m.into_iter()
        .map(|(w, c)| (Key::Weight(w), Val::Laurent(c)))
        .collect()
}

fn spherical_entries(x: &SphericalElement) -> Vec<(Key, Val)> {
    weight_entries(&x.terms)
}

fn label(s: impl Into<String>, v: impl Into<String>) -> (Key, Val) {
    (Key::Label(s.into()), Val::Text(v.into()))
}

fn join_weights(ws: &[Weight], sep: &str) -> String {
    ws.iter()
        .map(|w| w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(sep)
}

/// Hecke algebra elements, ordered by length and then by reduced word.
fn hecke_entries(g: &AffineWeyl, h: &HElem) -> Vec<(Key, Val)> {
    let mut terms: Vec<(u32, String, Laurent)> = h
        .iter()
        .map(|(x, c)| (g.length(x), g.format(x), c.clone()))
        .collect();
    terms.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    terms
        .into_iter()
        .map(|(_, w, c)| (Key::Label(w), Val::Laurent(c)))
        .collect()
}

/// Run one job and return its records, in deterministic order.
pub fn execute(cfg: &JobConfig) -> Result<Vec<Record>, CliError> {
    let ctx = &cfg.ctx;
    let entries: Vec<(Key, Val)> = match &cfg.command {
        Command::Info => {
            let mut out = vec![
                label("type", ctx.datum.name()),
                label("Q", join_weights(&[ctx.q.iter().map(|&q| q as i32).collect()], "")),
                label("n", ctx.n.to_string()),
                label("n_coroot", join_weights(&[ctx.n_coroot.clone()], "")),
                label("tilde_basis", join_weights(&ctx.tilde_basis, ";")),
                label("box", join_weights(&ctx.box_elements(), ";")),
                label("simply_connected", ctx.simply_connected.to_string()),
            ];
            if let Ok(st) = ctx.steinberg_point() {
                out.push(label("steinberg_point", join_weights(&[st], "")));
            }
            out
        }
        Command::Kl { w, y, side, twisted } => {
            let h = Hecke::new(AffineWeyl::new(ctx, *twisted));
            let w = h.g.from_word(w);
            match y {
                Some(y) => {
                    let y = h.g.from_word(y);
                    let c = h.kl_coeff(&y, &w, *side)?;
                    vec![(Key::Label(h.g.format(&y)), Val::Laurent(c))]
                }
                None => hecke_entries(&h.g, &h.kl_basis(&w, *side)?),
            }
        }
        Command::ParabolicKl {
            module,
            j,
            k,
            w,
            side,
            twisted,
        } => {
            let h = Hecke::new(AffineWeyl::new(ctx, *twisted));
            let w = h.g.from_word(w);
            let basis = match module {
                ModuleKind::M => MModule::new(&h, j)?.kl_basis(&w, *side)?,
                ModuleKind::N => NModule::new(&h, j)?.kl_basis(&w, *side)?,
                ModuleKind::O => OModule::new(&h, j, k)?.kl_basis(&w, *side)?,
            };
            hecke_entries(&h.g, &basis)
        }
        Command::DlAct { weight, word, op } => {
            let m = Metaplectic::new(ctx.clone());
            let mut f = PolyElement::y(weight.clone());
            for &i in word {
                f = match op {
                    DlOp::T => m.dl_act(&f, i),
                    DlOp::H => m.h_act(&f, i),
                    DlOp::HInv => m.h_inv_act(&f, i),
                };
            }
            weight_entries(&f)
        }
        Command::Straighten {
            weight,
            coords,
            strategy,
        } => {
            let m = Metaplectic::new(ctx.clone());
            spherical_entries(&m.straighten_with(&PolyElement::y(weight.clone()), *coords, *strategy)?)
        }
        Command::Kappa { weight } => {
            let m = Metaplectic::new(ctx.clone());
            vec![(Key::Weight(weight.clone()), Val::Coeff(m.kappa(weight)?))]
        }
        Command::Cs { weight } => {
            let m = Metaplectic::new(ctx.clone());
            weight_entries(&m.symmetrize(&PolyElement::y(weight.clone())))
        }
        Command::Canonical { lambda, side, coords } => {
            let m = Metaplectic::new(ctx.clone());
            let rec = m.canonical_basis(lambda, *side)?;
            match coords {
                metahecke::metaplectic::Coords::Y => spherical_entries(&rec.expansion),
                metahecke::metaplectic::Coords::V => laurent_entries(rec.o()),
            }
        }
        Command::Glr { mu, lambda, coords } => {
            let m = Metaplectic::new(ctx.clone());
            match coords {
                metahecke::metaplectic::Coords::Y => m
                    .glr(mu, lambda)?
                    .into_iter()
                    .map(|(w, c)| (Key::Weight(w), Val::Coeff(c)))
                    .collect(),
                metahecke::metaplectic::Coords::V => laurent_entries(m.glr_quantum(mu, lambda)?),
            }
        }
        Command::HAct { mu, lambda } => {
            let m = Metaplectic::new(ctx.clone());
            spherical_entries(&m.h_action(mu, lambda)?)
        }
        Command::TensorCheck {
            lambda0,
            zeta,
            variant,
        } => {
            let m = Metaplectic::new(ctx.clone());
            let c = m.tensor_product_check(lambda0, zeta, *variant)?;
            let mut out = vec![
                label("holds", c.holds.to_string()),
                label("base", join_weights(&[c.base.clone()], "")),
            ];
            out.extend(laurent_entries(c.lhs.clone()));
            if !c.holds {
                for (w, v) in c.rhs {
                    out.push((Key::Label(format!("expected {}", join_weights(&[w], ""))), Val::Laurent(v)));
                }
            }
            out
        }
        Command::Linkage { mu, lambda } => {
            let m = Metaplectic::new(ctx.clone());
            vec![label("linked", m.strongly_linked(mu, lambda)?.to_string())]
        }
        Command::GaussSums { q, bound } => {
            let p = match bound {
                Some(b) => PadicContext::with_bound(*q, ctx.n, *b)?,
                None => PadicContext::new(*q, ctx.n)?,
            };
            (0..ctx.n as i64)
                .map(|k| (Key::Label(format!("g{k}")), Val::Complex(p.gauss(k))))
                .collect()
        }
        Command::Specialize { coeff, q } => {
            let c = Coeff::parse(coeff, ctx.n)?;
            let p = PadicContext::new(*q, ctx.n)?;
            vec![(Key::Label(c.to_string()), Val::Complex(p.specialize(&c)))]
        }
    };
    let context = ctx.describe();
    Ok(entries
        .into_iter()
        .map(|(key, v)| Record {
            command: cfg.cmd.clone(),
            context: context.clone(),
            key,
            coefficient: render(v, &cfg.specialization),
        })
        .collect())
}
