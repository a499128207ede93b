//! Cartan data, root data and their `(Q, n)`-twists.
//!
//! Coweights are integer vectors in the basis of simple coroots, and the
//! pairing with simple roots is `<lambda, a_j> = sum_i lambda_i a_ij` with
//! `a_ij = <a_i^vee, a_j>`.
//!
//! Node conventions follow Bourbaki: in `B_n` the last node is short, in `C_n`
//! the last node is long, in `F4` nodes 1 and 2 are long, and in `G2` the
//! second node is long (`a_12 = -3`).

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Weight;

/// A finite-type Cartan matrix together with its minimal symmetrizer, so that
/// `i . j = d_i a_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanDatum {
    pub family: char,
    pub rank: usize,
    pub a: Vec<Vec<i32>>,
    pub d: Vec<i32>,
}

/// The Cartan matrix of an irreducible finite type.
pub fn cartan_matrix(family: char, rank: usize) -> Result<Vec<Vec<i32>>> {
    let bad = || Error::UnknownType(format!("{family}{rank}"));
    let ok = match family {
        'A' => rank >= 1,
        'B' | 'C' => rank >= 2,
        'D' => rank >= 4,
        'E' => (6..=8).contains(&rank),
        'F' => rank == 4,
        'G' => rank == 2,
        _ => false,
    };
    if !ok {
        return Err(bad());
    }
    let mut a = vec![vec![0; rank]; rank];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match family {
        'A' | 'B' | 'C' | 'F' => {
            for i in 0..rank - 1 {
                link(i, i + 1);
            }
        }
        'D' => {
            for i in 0..rank - 2 {
                link(i, i + 1);
            }
            link(rank - 3, rank - 1);
        }
        'E' => {
            link(0, 2);
            link(1, 3);
            link(2, 3);
            for i in 3..rank - 1 {
                link(i, i + 1);
            }
        }
        'G' => link(0, 1),
        _ => unreachable!(),
    }
    match family {
        'B' => a[rank - 1][rank - 2] = -2,
        'C' => a[rank - 2][rank - 1] = -2,
        'F' => a[2][1] = -2,
        'G' => a[0][1] = -3,
        _ => {}
    }
    Ok(a)
}

/// Positive roots of a Cartan matrix as pairs (root coordinates, coroot
/// coordinates), obtained as the Weyl orbit of the simple pairs.
pub fn positive_root_pairs(a: &[Vec<i32>]) -> Result<Vec<(Weight, Weight)>> {
    let r = a.len();
    let mut seen: Vec<(Weight, Weight)> = Vec::new();
    let mut queue: Vec<(Weight, Weight)> = (0..r)
        .map(|i| {
            let mut e = vec![0; r];
            e[i] = 1;
            (e.clone(), e)
        })
        .collect();
    while let Some((root, co)) = queue.pop() {
        if seen.iter().any(|(x, _)| *x == root) {
            continue;
        }
        for i in 0..r {
            let p: i32 = (0..r).map(|j| a[i][j] * root[j]).sum();
            let q: i32 = (0..r).map(|j| a[j][i] * co[j]).sum();
            let mut nr = root.clone();
            nr[i] -= p;
            let mut nc = co.clone();
            nc[i] -= q;
            if nr.iter().all(|&x| x >= 0) && nr.iter().any(|&x| x > 0) {
                queue.push((nr, nc));
            }
        }
        seen.push((root, co));
        if seen.len() > 500 {
            return Err(Error::UnknownType("Cartan matrix is not of finite type".into()));
        }
    }
    seen.sort_by(|x, y| {
        let hx: i32 = x.0.iter().sum();
        let hy: i32 = y.0.iter().sum();
        hx.cmp(&hy).then(x.0.cmp(&y.0))
    });
    Ok(seen)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

/// The coprime positive vector `d` with `diag(d) A` symmetric, read off from the
/// marks and comarks of the highest root (`d_i` is proportional to `comark_i / mark_i`).
pub fn minimal_symmetrizer(a: &[Vec<i32>]) -> Result<Vec<i32>> {
    let roots = positive_root_pairs(a)?;
    let (marks, comarks) = roots.last().expect("nonempty root system").clone();
    let l = marks.iter().fold(1i64, |acc, &m| lcm(acc, m as i64));
    let raw: Vec<i64> = marks
        .iter()
        .zip(&comarks)
        .map(|(&m, &c)| c as i64 * (l / m as i64))
        .collect();
    let g = raw.iter().fold(0, |acc, &x| gcd(acc, x));
    let d: Vec<i32> = raw.iter().map(|&x| (x / g) as i32).collect();
    let r = a.len();
    for i in 0..r {
        for j in 0..r {
            if d[i] * a[i][j] != d[j] * a[j][i] {
                return Err(Error::NotSymmetrizable);
            }
        }
    }
    Ok(d)
}

impl CartanDatum {
    pub fn from_type(family: char, rank: usize) -> Result<Self> {
        let a = cartan_matrix(family, rank)?;
        let d = minimal_symmetrizer(&a)?;
        Ok(CartanDatum {
            family,
            rank,
            a,
            d,
        })
    }

    /// Parse names like `A2`, `c3`, `G2`.
    pub fn parse(name: &str) -> Result<Self> {
        let name = name.trim();
        let mut chars = name.chars();
        let family = chars
            .next()
            .ok_or_else(|| Error::UnknownType(name.into()))?
            .to_ascii_uppercase();
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::UnknownType(name.into()))?;
        Self::from_type(family, rank)
    }

    /// `i . j = d_i a_ij`.
    pub fn pairing(&self, i: usize, j: usize) -> i32 {
        self.d[i] * self.a[i][j]
    }

    /// The dual datum, whose Cartan matrix is the transpose.
    pub fn dual(&self) -> CartanDatum {
        let r = self.rank;
        let a: Vec<Vec<i32>> = (0..r).map(|i| (0..r).map(|j| self.a[j][i]).collect()).collect();
        let d = minimal_symmetrizer(&a).expect("transpose of a finite Cartan matrix");
        let family = match self.family {
            'B' => 'C',
            'C' => 'B',
            f => f,
        };
        CartanDatum {
            family,
            rank: r,
            a,
            d,
        }
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    /// Values of the primitive quadratic form on simple coroots: 1 on short
    /// coroots, which are the coroots of long roots.
    pub fn primitive_q(&self) -> Vec<i64> {
        let l = self.d.iter().fold(1i64, |acc, &x| lcm(acc, x as i64));
        self.d.iter().map(|&x| l / x as i64).collect()
    }
}

impl fmt::Display for CartanDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// How the quadratic form is specified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Twist {
    Primitive,
    Explicit(Vec<i64>),
}

/// A positive root together with its coroot and twisted data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// Coordinates in simple roots.
    pub root: Weight,
    /// Coordinates of the coroot in simple coroots.
    pub coroot: Weight,
    /// `<rho^vee, a>`.
    pub height: i32,
    /// `Q` of the coroot.
    pub q: i64,
    /// `n` of the coroot: the least positive `m` with `n | m Q`.
    pub m: i32,
    /// Height in the twisted root system.
    pub twisted_height: i32,
}

/// A root datum with simply-connected coweight lattice plus a `(Q, n)`-twist,
/// and everything derived from it.
#[derive(Clone, Debug)]
pub struct RootContext {
    pub datum: CartanDatum,
    pub q: Vec<i64>,
    pub n: u32,
    pub n_coroot: Vec<i32>,
    /// `B(a_i^vee, a_j^vee) = Q_i a_ji`.
    pub b: Vec<Vec<i64>>,
    pub twisted_cartan: Vec<Vec<i32>>,
    /// Hermite basis (rows) of the twisted lattice.
    pub tilde_basis: Vec<Weight>,
    pub simply_connected: bool,
    /// Positive roots sorted by height, then lexicographically.
    pub roots: Vec<Root>,
    /// Index of the highest root.
    pub highest: usize,
    /// Index of the root whose rescaling is the highest root of the twisted system.
    pub twisted_highest: usize,
}

/// Diagonalize an integer matrix by unimodular row and column operations.
/// Returns the diagonal and the row transform `P` (so `P B R = D`).
pub fn diagonalize(b: &[Vec<i64>]) -> (Vec<i64>, Vec<Vec<i64>>) {
    let r = b.len();
    let c = if r == 0 { 0 } else { b[0].len() };
    let mut m: Vec<Vec<i64>> = b.to_vec();
    let mut p: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| (i == j) as i64).collect())
        .collect();
    let k = r.min(c);
    for t in 0..k {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if m[i][j] != 0
                        && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            m.swap(t, bi);
            p.swap(t, bi);
            for row in m.iter_mut() {
                row.swap(t, bj);
            }
            let piv = m[t][t];
            let mut clean = true;
            for i in t + 1..r {
                let f = m[i][t] / piv;
                if f != 0 {
                    for j in 0..c {
                        m[i][j] -= f * m[t][j];
                    }
                    for j in 0..r {
                        p[i][j] -= f * p[t][j];
                    }
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..c {
                let f = m[t][j] / piv;
                if f != 0 {
                    for row in m.iter_mut() {
                        row[j] -= f * row[t];
                    }
                }
                clean &= m[t][j] == 0;
            }
            if clean {
                break;
            }
        }
    }
    let diag = (0..r).map(|i| if i < c { m[i][i] } else { 0 }).collect();
    (diag, p)
}

/// Row-style Hermite normal form of a full-rank lattice basis.
pub fn hermite(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut m = rows.to_vec();
    let r = m.len();
    let c = if r == 0 { 0 } else { m[0].len() };
    let mut row = 0;
    for col in 0..c {
        if row >= r {
            break;
        }
        loop {
            let piv = (row..r)
                .filter(|&i| m[i][col] != 0)
                .min_by_key(|&i| m[i][col].abs());
            let Some(pi) = piv else { break };
            m.swap(row, pi);
            let mut done = true;
            for i in row + 1..r {
                let f = m[i][col] / m[row][col];
                for j in 0..c {
                    m[i][j] -= f * m[row][j];
                }
                done &= m[i][col] == 0;
            }
            if done {
                break;
            }
        }
        if m[row][col] == 0 {
            continue;
        }
        if m[row][col] < 0 {
            for x in m[row].iter_mut() {
                *x = -*x;
            }
        }
        for i in 0..row {
            let f = m[i][col].div_euclid(m[row][col]);
            for j in 0..c {
                m[i][j] -= f * m[row][j];
            }
        }
        row += 1;
    }
    m
}

/// Determinant by fraction-free elimination.
pub fn determinant(a: &[Vec<i64>]) -> i64 {
    let n = a.len();
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    if n == 0 {
        return 1;
    }
    (sign * m[n - 1][n - 1]) as i64
}

/// Solve `M x = rhs` over the integers, if the rational solution is integral.
pub fn solve_integral(m: &[Vec<i64>], rhs: &[i64]) -> Option<Vec<i64>> {
    let det = determinant(m);
    assert!(det != 0, "singular system");
    let n = m.len();
    let mut out = Vec::with_capacity(n);
    for col in 0..n {
        let mut mc = m.to_vec();
        for i in 0..n {
            mc[i][col] = rhs[i];
        }
        let num = determinant(&mc);
        if num % det != 0 {
            return None;
        }
        out.push(num / det);
    }
    Some(out)
}

impl RootContext {
    pub fn new(datum: CartanDatum, twist: Twist, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InconsistentQ("n must be positive".into()));
        }
        let r = datum.rank;
        let q = match twist {
            Twist::Primitive => datum.primitive_q(),
            Twist::Explicit(v) => v,
        };
        if q.len() != r {
            return Err(Error::InconsistentQ(format!(
                "expected {r} values, got {}",
                q.len()
            )));
        }
        if q.iter().any(|&x| x <= 0) {
            return Err(Error::InconsistentQ(format!("{q:?} must be positive")));
        }
        let a = &datum.a;
        for i in 0..r {
            for j in 0..r {
                if q[i] * a[j][i] as i64 != q[j] * a[i][j] as i64 {
                    return Err(Error::InconsistentQ(format!(
                        "{q:?} is not Weyl invariant (nodes {} and {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let nn = n as i64;
        let n_coroot: Vec<i32> = q.iter().map(|&x| (nn / gcd(nn, x)) as i32).collect();
        let b: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..r).map(|j| q[i] * a[j][i] as i64).collect())
            .collect();
        let twisted_cartan = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let num = n_coroot[i] * a[i][j];
                        debug_assert_eq!(num % n_coroot[j], 0);
                        num / n_coroot[j]
                    })
                    .collect()
            })
            .collect();
        let (diag, p) = diagonalize(&b);
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|k| {
                let f = nn / gcd(nn, diag[k]);
                p[k].iter().map(|&x| x * f).collect()
            })
            .collect();
        let index: i64 = diag.iter().map(|&dk| nn / gcd(nn, dk)).product();
        let span: i64 = n_coroot.iter().map(|&x| x as i64).product();
        let tilde_basis = hermite(&rows)
            .into_iter()
            .map(|row| row.into_iter().map(|x| x as i32).collect())
            .collect();

        let pairs = positive_root_pairs(a)?;
        let qform = |c: &[i32]| -> i64 {
            let mut s = 0;
            for i in 0..r {
                for j in 0..r {
                    s += c[i] as i64 * c[j] as i64 * b[i][j];
                }
            }
            s / 2
        };
        let roots: Vec<Root> = pairs
            .into_iter()
            .map(|(root, coroot)| {
                let qv = qform(&coroot);
                let m = (nn / gcd(nn, qv)) as i32;
                let th: i32 = root.iter().zip(&n_coroot).map(|(x, y)| x * y).sum();
                debug_assert_eq!(th % m, 0);
                Root {
                    height: root.iter().sum(),
                    twisted_height: th / m,
                    q: qv,
                    m,
                    root,
                    coroot,
                }
            })
            .collect();
        let highest = roots.len() - 1;
        let twisted_highest = (0..roots.len())
            .max_by_key(|&k| (roots[k].twisted_height, k))
            .unwrap();
        Ok(RootContext {
            datum,
            q,
            n,
            n_coroot,
            b,
            twisted_cartan,
            tilde_basis,
            simply_connected: index == span,
            roots,
            highest,
            twisted_highest,
        })
    }

    /// Build from a type name such as `A2` with the primitive twist.
    pub fn primitive(name: &str, n: u32) -> Result<Self> {
        Self::new(CartanDatum::parse(name)?, Twist::Primitive, n)
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    pub fn a(&self) -> &Vec<Vec<i32>> {
        &self.datum.a
    }

    pub fn zero(&self) -> Weight {
        vec![0; self.rank()]
    }

    pub fn unit(&self, i: usize) -> Weight {
        let mut e = self.zero();
        e[i] = 1;
        e
    }

    pub fn require_sc(&self) -> Result<()> {
        if self.simply_connected {
            Ok(())
        } else {
            Err(Error::TwistNotSimplyConnected)
        }
    }

    /// `<lambda, a_j>`.
    pub fn pairing(&self, lambda: &[i32], j: usize) -> i32 {
        let a = self.a();
        (0..self.rank()).map(|i| lambda[i] * a[i][j]).sum()
    }

    pub fn pairings(&self, lambda: &[i32]) -> Vec<i32> {
        (0..self.rank()).map(|j| self.pairing(lambda, j)).collect()
    }

    /// `<lambda, a>` for a root given in simple-root coordinates.
    pub fn pairing_root(&self, lambda: &[i32], root: &[i32]) -> i32 {
        let p = self.pairings(lambda);
        p.iter().zip(root).map(|(x, y)| x * y).sum()
    }

    pub fn is_dominant(&self, lambda: &[i32]) -> bool {
        (0..self.rank()).all(|j| self.pairing(lambda, j) >= 0)
    }

    pub fn require_dominant(&self, lambda: &[i32]) -> Result<()> {
        if self.is_dominant(lambda) {
            Ok(())
        } else {
            Err(Error::NotDominant(lambda.to_vec()))
        }
    }

    /// `B(x, y)`.
    pub fn b_form(&self, x: &[i32], y: &[i32]) -> i64 {
        let r = self.rank();
        let mut s = 0;
        for i in 0..r {
            for j in 0..r {
                s += x[i] as i64 * y[j] as i64 * self.b[i][j];
            }
        }
        s
    }

    /// Membership in the twisted lattice: `B(y, .)` takes values in `nZ`.
    pub fn in_tilde(&self, y: &[i32]) -> bool {
        let nn = self.n as i64;
        (0..self.rank()).all(|j| {
            let s: i64 = (0..self.rank()).map(|i| y[i] as i64 * self.b[i][j]).sum();
            s % nn == 0
        })
    }

    /// The coweight with prescribed pairings, if integral.
    pub fn from_pairings(&self, p: &[i32]) -> Option<Weight> {
        let r = self.rank();
        let at: Vec<Vec<i64>> = (0..r)
            .map(|j| (0..r).map(|i| self.a()[i][j] as i64).collect())
            .collect();
        let rhs: Vec<i64> = p.iter().map(|&x| x as i64).collect();
        solve_integral(&at, &rhs).map(|v| v.into_iter().map(|x| x as i32).collect())
    }

    /// `2 rho^vee`, the sum of positive coroots.
    pub fn two_rho_vee(&self) -> Weight {
        let mut s = self.zero();
        for root in &self.roots {
            for (x, y) in s.iter_mut().zip(&root.coroot) {
                *x += y;
            }
        }
        s
    }

    /// `rho~^vee - rho^vee`, the coweight with pairings `n_i - 1`.
    pub fn steinberg_point(&self) -> Result<Weight> {
        let p: Vec<i32> = self.n_coroot.iter().map(|&x| x - 1).collect();
        self.from_pairings(&p)
            .ok_or_else(|| Error::NotInTildeLattice(p.clone()))
    }

    /// `<mu, 2 rho~>` for the twisted system: `sum over a > 0 of <mu, a> / n(a)`.
    pub fn twisted_two_rho_pairing(&self, mu: &[i32]) -> i32 {
        self.roots
            .iter()
            .map(|rt| {
                let p = self.pairing_root(mu, &rt.root);
                debug_assert_eq!(p % rt.m, 0);
                p / rt.m
            })
            .sum()
    }

    /// `mu <= lambda` in dominance order.
    pub fn dominance_leq(mu: &[i32], lambda: &[i32]) -> bool {
        mu.iter().zip(lambda).all(|(m, l)| l - m >= 0)
    }

    /// Restricted coweights `0 <= <lambda, a_i> < n(a_i)`, sorted.
    pub fn box_elements(&self) -> Vec<Weight> {
        let r = self.rank();
        let mut out = Vec::new();
        let mut p = vec![0i32; r];
        loop {
            if let Some(l) = self.from_pairings(&p) {
                out.push(l);
            }
            let mut i = 0;
            loop {
                if i == r {
                    out.sort();
                    return out;
                }
                p[i] += 1;
                if p[i] < self.n_coroot[i] {
                    break;
                }
                p[i] = 0;
                i += 1;
            }
        }
    }

    pub fn in_box(&self, lambda: &[i32]) -> bool {
        (0..self.rank()).all(|j| {
            let p = self.pairing(lambda, j);
            p >= 0 && p < self.n_coroot[j]
        })
    }

    /// Split a dominant coweight as a restricted coweight plus a dominant
    /// element of the twisted lattice.
    pub fn box_decompose(&self, lambda: &[i32]) -> Result<(Weight, Weight)> {
        self.require_dominant(lambda)?;
        self.require_sc()?;
        for l0 in self.box_elements() {
            let zeta: Weight = lambda.iter().zip(&l0).map(|(x, y)| x - y).collect();
            if self.in_tilde(&zeta) && self.is_dominant(&zeta) {
                return Ok((l0, zeta));
            }
        }
        Err(Error::NotInTildeLattice(lambda.to_vec()))
    }

    /// `n(a_i^vee) a_i^vee`.
    pub fn tilde_simple(&self, i: usize) -> Weight {
        let mut e = self.zero();
        e[i] = self.n_coroot[i];
        e
    }

    /// Number of positive roots, which is the length of the longest element.
    pub fn num_positive(&self) -> usize {
        self.roots.len()
    }

    /// One-line description used by the command-line tool.
    pub fn describe(&self) -> String {
        format!("{} Q={:?} n={}", self.datum.name(), self.q, self.n)
    }
}

/// Lusztig's `l`-twist: returns `l_i = l / gcd(l, d_i)` and the primitive
/// `(Q, l)`-twist of the dual datum, whose `n(x_i)` are the `l_i`.
pub fn l_twist(datum: &CartanDatum, l: u32) -> Result<(Vec<i32>, RootContext)> {
    let li: Vec<i32> = datum
        .d
        .iter()
        .map(|&d| (l as i64 / gcd(l as i64, d as i64)) as i32)
        .collect();
    let ctx = RootContext::new(datum.dual(), Twist::Primitive, l)?;
    Ok((li, ctx))
}
