//! Lattice automorphisms of point configurations, found by extending a
//! point correspondence over an affine frame.

use super::{PointConfiguration, Triangulation};
use crate::error::Result;
use crate::exact::ring::rank_of;
use crate::exact::{solve_rational, sub_vec, Rational};
use crate::polytope::LatticePolytope;
use num_bigint::BigInt;
use num_traits::{One, Signed};
use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

/// Default node budget for one automorphism search.
pub const SYMMETRY_NODE_BUDGET: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutomorphismSearch {
    /// Permutation of point indices induced by the map.
    Found(Vec<usize>),
    NotFound,
    BudgetExhausted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetryVerdict {
    Compressed,
    NotCompressed,
    Inapplicable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryReport {
    pub verdict: SymmetryVerdict,
    pub transitive: bool,
    /// The single triangulation tested when the group is transitive.
    pub triangulation: Option<Triangulation>,
    pub bad_cell: Option<Vec<usize>>,
}

struct Signatures {
    point: Vec<u64>,
    pair: Vec<Vec<u64>>,
}

fn hash_of<T: Hash>(v: &T) -> u64 {
    let mut h = DefaultHasher::new();
    v.hash(&mut h);
    h.finish()
}

fn signatures(config: &PointConfiguration) -> Signatures {
    let s = config.slacks();
    let n = s.len();
    let point = s
        .iter()
        .map(|row| {
            let mut r = row.clone();
            r.sort();
            hash_of(&r)
        })
        .collect();
    let pair = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let mut v: Vec<(&BigInt, &BigInt)> = s[a].iter().zip(&s[b]).collect();
                    v.sort();
                    hash_of(&v)
                })
                .collect()
        })
        .collect();
    Signatures { point, pair }
}

/// Affinely independent frame starting at `start`.
fn frame(config: &PointConfiguration, start: usize) -> Vec<usize> {
    let c = config.coords();
    let mut f = vec![start];
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..c.len() {
        if f.len() == config.dim() + 1 {
            break;
        }
        if i == start {
            continue;
        }
        rows.push(sub_vec(&c[i], &c[start]));
        if rank_of(&rows) == rows.len() {
            f.push(i);
        } else {
            rows.pop();
        }
    }
    f
}

struct Search<'a> {
    config: &'a PointConfiguration,
    sig: &'a Signatures,
    frame: Vec<usize>,
    image: Vec<usize>,
    used: Vec<bool>,
    nodes: usize,
    budget: usize,
    index: HashMap<Vec<BigInt>, usize>,
}

impl Search<'_> {
    fn extend(&mut self) -> Option<Option<Vec<usize>>> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let depth = self.image.len();
        if depth == self.frame.len() {
            return Some(self.complete());
        }
        let src = self.frame[depth];
        for t in 0..self.config.len() {
            if self.used[t] || self.sig.point[t] != self.sig.point[src] {
                continue;
            }
            let consistent = (0..depth).all(|j| {
                self.sig.pair[self.frame[j]][src] == self.sig.pair[self.image[j]][t]
            });
            if !consistent {
                continue;
            }
            self.image.push(t);
            self.used[t] = true;
            let r = self.extend();
            self.used[t] = false;
            self.image.pop();
            match r {
                None => return None,
                Some(Some(p)) => return Some(Some(p)),
                Some(None) => {}
            }
        }
        Some(None)
    }

    /// Solve the affine map fixed by the frame correspondence and check it
    /// is a lattice automorphism permuting the points.
    fn complete(&self) -> Option<Vec<usize>> {
        let c = self.config.coords();
        let k = self.config.dim();
        let f0 = &c[self.frame[0]];
        let g0 = &c[self.image[0]];
        let d: Vec<Vec<BigInt>> = self.frame[1..].iter().map(|&i| sub_vec(&c[i], f0)).collect();
        let e: Vec<Vec<BigInt>> = self.image[1..].iter().map(|&i| sub_vec(&c[i], g0)).collect();
        // M d_j = e_j for each frame vector: row r of M solves D m_r = (e_j[r])_j.
        let dm: Vec<Vec<Rational>> = d
            .iter()
            .map(|row| row.iter().map(|x| Rational::from_integer(x.clone())).collect())
            .collect();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(k);
        for r in 0..k {
            let rhs: Vec<Rational> = e.iter().map(|v| Rational::from_integer(v[r].clone())).collect();
            let row = solve_rational(&dm, &rhs)?;
            let row: Option<Vec<BigInt>> = row
                .into_iter()
                .map(|x| x.is_integer().then(|| x.to_integer()))
                .collect();
            m.push(row?);
        }
        if k > 0 && !crate::exact::ring::det_of(&m).abs().is_one() {
            return None;
        }
        let mut perm = Vec::with_capacity(c.len());
        let mut hit = vec![false; c.len()];
        for x in c {
            let rel = sub_vec(x, f0);
            let y: Vec<BigInt> = (0..k)
                .map(|r| {
                    let s: BigInt = m[r].iter().zip(&rel).map(|(a, b)| a * b).sum();
                    s + &g0[r]
                })
                .collect();
            let &j = self.index.get(&y)?;
            if hit[j] {
                return None;
            }
            hit[j] = true;
            perm.push(j);
        }
        Some(perm)
    }
}

/// Search for a lattice automorphism of the configuration sending point
/// `from` to point `to`.
pub fn find_automorphism(config: &PointConfiguration, from: usize, to: usize, budget: usize) -> AutomorphismSearch {
    let sig = signatures(config);
    find_with(config, &sig, from, to, budget)
}

fn find_with(config: &PointConfiguration, sig: &Signatures, from: usize, to: usize, budget: usize) -> AutomorphismSearch {
    if sig.point[from] != sig.point[to] {
        return AutomorphismSearch::NotFound;
    }
    let index = config
        .coords()
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), i))
        .collect();
    let mut used = vec![false; config.len()];
    used[to] = true;
    let mut s = Search {
        config,
        sig,
        frame: frame(config, from),
        image: vec![to],
        used,
        nodes: 0,
        budget,
        index,
    };
    match s.extend() {
        None => AutomorphismSearch::BudgetExhausted,
        Some(Some(p)) => AutomorphismSearch::Found(p),
        Some(None) => AutomorphismSearch::NotFound,
    }
}

/// Orbit representative (smallest index) of every point under the
/// automorphisms found. Points whose search runs out of budget are left in
/// their own orbit, which only weakens the reduction.
pub fn automorphism_orbits(config: &PointConfiguration, budget: usize) -> Vec<usize> {
    let sig = signatures(config);
    let n = config.len();
    let mut rep: Vec<usize> = (0..n).collect();
    for t in 0..n {
        for s in 0..t {
            if rep[s] != s {
                continue;
            }
            if let AutomorphismSearch::Found(_) = find_with(config, &sig, s, t, budget) {
                rep[t] = s;
                break;
            }
        }
    }
    rep
}

/// For a polytope whose automorphism group acts transitively on its lattice
/// points, one pulling triangulation decides compressedness.
pub fn transitive_symmetry_shortcut(p: &LatticePolytope) -> Result<SymmetryReport> {
    let config = PointConfiguration::lattice_points_of(p)?;
    let sig = signatures(&config);
    let n = config.len();
    let transitive = (1..n).all(|t| matches!(find_with(&config, &sig, 0, t, SYMMETRY_NODE_BUDGET), AutomorphismSearch::Found(_)));
    if !transitive {
        return Ok(SymmetryReport {
            verdict: SymmetryVerdict::Inapplicable,
            transitive: false,
            triangulation: None,
            bad_cell: None,
        });
    }
    let order: Vec<usize> = (0..n).collect();
    let t = config.pulling_triangulation(&order)?;
    let bad = config.unimodular_for_order(&order)?;
    let verdict = if bad.is_none() {
        SymmetryVerdict::Compressed
    } else {
        SymmetryVerdict::NotCompressed
    };
    Ok(SymmetryReport {
        verdict,
        transitive: true,
        triangulation: Some(t),
        bad_cell: bad,
    })
}
