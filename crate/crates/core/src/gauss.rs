//! Numerical Gauss sums over prime fields and the p-adic specialization
//! `tau -> sqrt(q)`, `g_k -> g_k(q)`.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::coeff::Coeff;
use crate::error::{Error, Result};

/// Largest residue field size accepted by [`PadicContext::new`].
pub const DEFAULT_Q_BOUND: u64 = 1_000_000;

/// Identity tolerance used by the checks in this module.
pub const TOLERANCE: f64 = 1e-9;

/// Numerical data of a residue field `F_q` together with an `n`-th order
/// character. `values[k]` is the Gauss sum of the `k`-th power of the character.
#[derive(Clone, Debug)]
pub struct PadicContext {
    pub q: u64,
    pub n: u32,
    pub generator: u64,
    pub values: Vec<Complex64>,
}

fn smallest_factor(m: u64) -> u64 {
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            return d;
        }
        d += 1;
    }
    m
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Smallest generator of `(Z/p)^*` for a prime `p`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let phi = p - 1;
    let mut factors = Vec::new();
    let mut m = phi;
    while m > 1 {
        let f = smallest_factor(m);
        factors.push(f);
        while m % f == 0 {
            m /= f;
        }
    }
    (2..p)
        .find(|&r| factors.iter().all(|&f| pow_mod(r, phi / f, p) != 1))
        .expect("prime has a primitive root")
}

impl PadicContext {
    pub fn new(q: u64, n: u32) -> Result<Self> {
        Self::with_bound(q, n, DEFAULT_Q_BOUND)
    }

    pub fn with_bound(q: u64, n: u32, bound: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::NotPrimePower(q));
        }
        let p = smallest_factor(q);
        if p != q {
            let mut m = q;
            while m % p == 0 {
                m /= p;
            }
            return Err(if m == 1 {
                Error::UnsupportedPrimePower(q)
            } else {
                Error::NotPrimePower(q)
            });
        }
        let modulus = 2 * n as u64;
        if q % modulus != 1 % modulus {
            return Err(Error::BadCongruence { q, modulus });
        }
        if q > bound {
            return Err(Error::BoundExceeded { q, bound });
        }
        let r = primitive_root(q);
        let mut values = Vec::with_capacity(n as usize);
        values.push(Complex64::new(-1.0, 0.0));
        for k in 1..n as u64 {
            let mut sum = Complex64::new(0.0, 0.0);
            let mut x = 1u64;
            for m in 0..q - 1 {
                let chi = 2.0 * PI * ((m * k) % n as u64) as f64 / n as f64;
                // psi(-x) = exp(-2 pi i x / p)
                let psi = -2.0 * PI * x as f64 / q as f64;
                sum += Complex64::from_polar(1.0, chi + psi);
                x = x * r % q;
            }
            values.push(sum);
        }
        Ok(PadicContext {
            q,
            n,
            generator: r,
            values,
        })
    }

    /// The value of `g_k` for any integer `k`.
    pub fn gauss(&self, k: i64) -> Complex64 {
        self.values[k.rem_euclid(self.n as i64) as usize]
    }

    /// Evaluate a coefficient at `tau = sqrt(q)`, `g_k = values[k]`.
    pub fn specialize(&self, c: &Coeff) -> Complex64 {
        assert!(
            c.is_tau_pure() || c.n() == self.n,
            "coefficient for n={} evaluated in a context with n={}",
            c.n(),
            self.n
        );
        let sq = (self.q as f64).sqrt();
        let mut out = Complex64::new(0.0, 0.0);
        for (m, v) in c.terms() {
            let mut t = Complex64::new(v as f64 * sq.powi(m.tau), 0.0);
            for (k, &e) in m.g.iter().enumerate() {
                if e != 0 {
                    t *= self.values[k + 1].powi(e);
                }
            }
            out += t;
        }
        out
    }
}
