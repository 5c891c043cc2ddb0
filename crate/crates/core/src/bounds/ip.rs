//! Depth-first enumeration of nonnegative integer solutions of `A x = b`
//! with a fixed 1-norm.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use std::collections::HashSet;

pub(crate) fn narrow(v: &[BigInt]) -> Result<Vec<i128>> {
    v.iter()
        .map(|x| {
            x.to_i128()
                .filter(|y| y.unsigned_abs() < 1 << 100)
                .ok_or_else(|| Error::InvalidInput("entry too large for integer enumeration".into()))
        })
        .collect()
}

/// Columns of `A` as machine integers, plus per-column sign information.
pub(crate) struct Enumerator {
    cols: Vec<Vec<i128>>,
    rows: usize,
    nonneg: Vec<bool>,
}

impl Enumerator {
    pub fn new(columns: &[Vec<BigInt>], rows: usize) -> Result<Self> {
        let cols = columns.iter().map(|c| narrow(c)).collect::<Result<Vec<_>>>()?;
        let nonneg = cols.iter().map(|c| c.iter().all(|&x| x >= 0)).collect();
        Ok(Enumerator { cols, rows, nonneg })
    }

    /// Some `x >= 0` supported on `allowed` with `A x = rhs` and
    /// `Σ x = total`.
    pub fn feasible(&self, allowed: &[usize], rhs: &[i128], total: i128) -> Option<Vec<i128>> {
        if total < 0 {
            return None;
        }
        let all_nonneg = allowed.iter().all(|&j| self.nonneg[j]);
        // Rows that the columns from position p onwards can still change.
        let mut live = vec![vec![false; self.rows]; allowed.len() + 1];
        for p in (0..allowed.len()).rev() {
            let mut row = live[p + 1].clone();
            for (r, x) in self.cols[allowed[p]].iter().enumerate() {
                row[r] |= *x != 0;
            }
            live[p] = row;
        }
        let mut search = Search {
            e: self,
            allowed,
            live: &live,
            all_nonneg,
            dead: HashSet::new(),
            x: vec![0; self.cols.len()],
        };
        let mut res = rhs.to_vec();
        if search.go(0, &mut res, total) {
            Some(search.x)
        } else {
            None
        }
    }
}

struct Search<'a> {
    e: &'a Enumerator,
    allowed: &'a [usize],
    live: &'a [Vec<bool>],
    all_nonneg: bool,
    dead: HashSet<(usize, Vec<i128>, i128)>,
    x: Vec<i128>,
}

impl Search<'_> {
    fn go(&mut self, p: usize, res: &mut Vec<i128>, left: i128) -> bool {
        if p == self.allowed.len() {
            return left == 0 && res.iter().all(|&r| r == 0);
        }
        if self.all_nonneg && res.iter().any(|&r| r < 0) {
            return false;
        }
        if res.iter().zip(&self.live[p]).any(|(&r, &l)| r != 0 && !l) {
            return false;
        }
        let key = (p, res.clone(), left);
        if self.dead.contains(&key) {
            return false;
        }
        let j = self.allowed[p];
        let col = &self.e.cols[j];
        let mut hi = left;
        if self.all_nonneg {
            for (r, &a) in col.iter().enumerate() {
                if a > 0 {
                    hi = hi.min(res[r] / a);
                }
            }
        }
        for v in (0..=hi).rev() {
            for (r, &a) in col.iter().enumerate() {
                res[r] -= a * v;
            }
            self.x[j] = v;
            let ok = self.go(p + 1, res, left - v);
            for (r, &a) in col.iter().enumerate() {
                res[r] += a * v;
            }
            if ok {
                return true;
            }
        }
        self.x[j] = 0;
        self.dead.insert(key);
        false
    }
}
