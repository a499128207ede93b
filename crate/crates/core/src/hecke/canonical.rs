//! The bar-defect recursion shared by every canonical basis in the crate.
//!
//! Given a module with a standard basis `{b_x}` and a semilinear involution
//! `d(b_x) = b_x + sum_{y} r_{y,x} b_y` that is unitriangular with respect to a
//! rank function (`r_{y,x} != 0` only when `rank(y) < rank(x)`), there is a
//! unique self-dual `b_w + sum a_y b_y` with all `a_y` in one sign class.
//! Comparing coefficients of `b_y` gives `a_y - bar(a_y) = sum_{v>y}
//! bar(a_v) r_{y,v}`, which determines `a_y` as the positive or negative part
//! of the right-hand side.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet};

use crate::coeff::Side;
use crate::error::{Error, Result};
use crate::laurent::Laurent;

pub fn solve<K, R, D>(top: K, side: Side, rank: R, mut dual: D) -> Result<BTreeMap<K, Laurent>>
where
    K: Ord + Clone + std::fmt::Debug,
    R: Fn(&K) -> i64,
    D: FnMut(&K) -> Result<BTreeMap<K, Laurent>>,
{
    let mut out = BTreeMap::new();
    let mut acc: BTreeMap<K, Laurent> = BTreeMap::new();
    let mut pending: BTreeSet<(Reverse<i64>, K)> = BTreeSet::new();
    pending.insert((Reverse(rank(&top)), top.clone()));
    while let Some((Reverse(rk), y)) = pending.pop_first() {
        let a = if y == top {
            Laurent::one()
        } else {
            let rhs = acc.remove(&y).unwrap_or_default();
            let a = match side {
                Side::Plus => rhs.positive_part(),
                Side::Minus => rhs.negative_part(),
            };
            if &a - &a.bar() != rhs {
                return Err(Error::NormalizationFailure(format!(
                    "bar defect {rhs} at {y:?} is not antisymmetric"
                )));
            }
            a
        };
        if a.is_zero() {
            continue;
        }
        let d = dual(&y)?;
        if d.get(&y).map(|c| c.is_one()) != Some(true) {
            return Err(Error::NormalizationFailure(format!(
                "involution is not unitriangular at {y:?}"
            )));
        }
        let ab = a.bar();
        for (x, r) in d {
            if x == y {
                continue;
            }
            let rx = rank(&x);
            if rx >= rk {
                return Err(Error::NormalizationFailure(format!(
                    "involution is not triangular: {x:?} appears in d({y:?})"
                )));
            }
            *acc.entry(x.clone()).or_default() += &(&ab * &r);
            pending.insert((Reverse(rx), x));
        }
        out.insert(y, a);
    }
    Ok(out)
}
