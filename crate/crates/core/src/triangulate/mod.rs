//! Pulling triangulations of point configurations.
//!
//! A configuration is a finite point set (at most 128 points) inside a
//! lattice polytope; cells are stored as bitmasks over the point list.

mod symmetry;

pub use symmetry::{
    automorphism_orbits, find_automorphism, transitive_symmetry_shortcut, AutomorphismSearch,
    SymmetryReport, SymmetryVerdict, SYMMETRY_NODE_BUDGET,
};

use crate::error::{Error, Result};
use crate::exact::ring::{det_of, rank_of};
use crate::exact::{sub_vec, AffineLattice};
use crate::polytope::LatticePolytope;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::RwLock;

pub const MAX_CONFIGURATION_POINTS: usize = 128;

/// Default point count up to which every ordering is enumerated.
pub const DEFAULT_ORDERING_CAP: usize = 9;

/// A triangulation as index sets into the configuration's point list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    pub simplices: Vec<Vec<usize>>,
    pub point_order: Vec<usize>,
}

/// Points of a lattice polytope used as the vertex pool for triangulations.
#[derive(Debug)]
pub struct PointConfiguration {
    points: Vec<Vec<BigInt>>,
    coords: Vec<Vec<BigInt>>,
    dim: usize,
    lattice: AffineLattice,
    facet_masks: Vec<u128>,
    slacks: Vec<Vec<BigInt>>,
    face_facets: RwLock<HashMap<u128, Vec<u128>>>,
    unimodular: RwLock<HashMap<u128, bool>>,
}

fn bits(mask: u128) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

pub fn mask_to_indices(mask: u128) -> Vec<usize> {
    bits(mask).collect()
}

impl PointConfiguration {
    /// The lattice points of `p`.
    pub fn lattice_points_of(p: &LatticePolytope) -> Result<Self> {
        Self::from_points(p, p.lattice_points()?.to_vec())
    }

    /// The generators of `p` (vertices plus any further given points).
    pub fn generators_of(p: &LatticePolytope) -> Result<Self> {
        Self::from_points(p, p.generators().to_vec())
    }

    fn from_points(p: &LatticePolytope, points: Vec<Vec<BigInt>>) -> Result<Self> {
        if points.len() > MAX_CONFIGURATION_POINTS {
            return Err(Error::CapExceeded {
                what: "configuration points",
                size: points.len(),
                cap: MAX_CONFIGURATION_POINTS,
            });
        }
        let lattice = p.point_lattice()?.clone();
        let coords = points
            .iter()
            .map(|x| lattice.coords(x).ok_or(Error::NotInLattice))
            .collect::<Result<Vec<_>>>()?;
        // Per-facet slacks scaled by their gcd over the points, so they are
        // invariant under affine automorphisms of the configuration.
        let mut slacks: Vec<Vec<BigInt>> = points
            .iter()
            .map(|x| p.facets().iter().map(|f| f.slack(x)).collect())
            .collect();
        for j in 0..p.facets().len() {
            let g = slacks.iter().fold(BigInt::zero(), |g, s| g.gcd(&s[j]));
            if !g.is_zero() {
                for s in slacks.iter_mut() {
                    s[j] = &s[j] / &g;
                }
            }
        }
        let facet_masks = (0..p.facets().len())
            .map(|j| {
                slacks
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| s[j].sign() == num_bigint::Sign::NoSign)
                    .fold(0u128, |m, (i, _)| m | (1u128 << i))
            })
            .collect();
        Ok(PointConfiguration {
            points,
            coords,
            dim: p.dim(),
            lattice,
            facet_masks,
            slacks,
            face_facets: RwLock::new(HashMap::new()),
            unimodular: RwLock::new(HashMap::new()),
        })
    }

    pub fn points(&self) -> &[Vec<BigInt>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lattice(&self) -> &AffineLattice {
        &self.lattice
    }

    pub(crate) fn coords(&self) -> &[Vec<BigInt>] {
        &self.coords
    }

    /// Lattice levels of each point over each facet of the hull.
    pub(crate) fn slacks(&self) -> &[Vec<BigInt>] {
        &self.slacks
    }

    fn full_mask(&self) -> u128 {
        if self.len() == 128 {
            u128::MAX
        } else {
            (1u128 << self.len()) - 1
        }
    }

    fn affine_dim(&self, mask: u128) -> usize {
        let mut it = bits(mask);
        let Some(first) = it.next() else { return 0 };
        let rows: Vec<Vec<BigInt>> = it.map(|j| sub_vec(&self.coords[j], &self.coords[first])).collect();
        rank_of(&rows)
    }

    /// Facets of the face `mask` (of dimension `dim`), as point masks.
    fn facets_of_face(&self, mask: u128, dim: usize) -> Vec<u128> {
        if let Some(f) = self.face_facets.read().unwrap().get(&mask) {
            return f.clone();
        }
        let mut out: Vec<u128> = Vec::new();
        for &g in &self.facet_masks {
            let c = mask & g;
            if c == mask || c == 0 || out.contains(&c) {
                continue;
            }
            if self.affine_dim(c) + 1 == dim {
                out.push(c);
            }
        }
        out.sort_unstable();
        self.face_facets.write().unwrap().insert(mask, out.clone());
        out
    }

    fn pull(&self, mask: u128, dim: usize, rank: &[usize], memo: &mut HashMap<u128, Vec<u128>>) -> Vec<u128> {
        if mask.count_ones() as usize == dim + 1 {
            return vec![mask];
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let p = bits(mask).min_by_key(|&i| rank[i]).expect("nonempty face");
        let pbit = 1u128 << p;
        let mut out = Vec::new();
        for g in self.facets_of_face(mask, dim) {
            if g & pbit != 0 {
                continue;
            }
            for s in self.pull(g, dim - 1, rank, memo) {
                out.push(s | pbit);
            }
        }
        memo.insert(mask, out.clone());
        out
    }

    fn check_order(&self, order: &[usize]) -> Result<Vec<usize>> {
        let n = self.len();
        let mut rank = vec![usize::MAX; n];
        if order.len() != n {
            return Err(Error::InvalidInput(format!(
                "ordering has {} entries, expected {n}",
                order.len()
            )));
        }
        for (pos, &i) in order.iter().enumerate() {
            if i >= n || rank[i] != usize::MAX {
                return Err(Error::InvalidInput("ordering is not a permutation".into()));
            }
            rank[i] = pos;
        }
        Ok(rank)
    }

    fn triangulate_masks(&self, rank: &[usize]) -> Vec<u128> {
        let mut memo = HashMap::new();
        let mut cells = self.pull(self.full_mask(), self.dim, rank, &mut memo);
        cells.sort_unstable_by_key(|&m| mask_to_indices(m));
        cells
    }

    /// Pulling triangulation induced by `order` (a permutation of point indices).
    pub fn pulling_triangulation(&self, order: &[usize]) -> Result<Triangulation> {
        let rank = self.check_order(order)?;
        Ok(Triangulation {
            simplices: self.triangulate_masks(&rank).into_iter().map(mask_to_indices).collect(),
            point_order: order.to_vec(),
        })
    }

    /// Normalized volume of a full-dimensional cell.
    pub fn cell_volume(&self, cell: &[usize]) -> Result<BigInt> {
        if cell.len() != self.dim + 1 {
            return Err(Error::DegenerateSimplex);
        }
        let rows: Vec<Vec<BigInt>> = cell[1..]
            .iter()
            .map(|&j| sub_vec(&self.coords[j], &self.coords[cell[0]]))
            .collect();
        let d = det_of(&rows).abs();
        if d.sign() == num_bigint::Sign::NoSign {
            return Err(Error::DegenerateSimplex);
        }
        Ok(d)
    }

    fn mask_unimodular(&self, mask: u128) -> bool {
        if let Some(&u) = self.unimodular.read().unwrap().get(&mask) {
            return u;
        }
        let u = self.cell_volume(&mask_to_indices(mask)).map(|v| v.is_one()).unwrap_or(false);
        self.unimodular.write().unwrap().insert(mask, u);
        u
    }

    /// First (in sorted order) non-unimodular cell of the triangulation for `rank`.
    fn first_bad_cell(&self, rank: &[usize]) -> Option<Vec<usize>> {
        self.triangulate_masks(rank)
            .into_iter()
            .find(|&m| !self.mask_unimodular(m))
            .map(mask_to_indices)
    }

    /// Whether the triangulation for `order` is unimodular, with the first
    /// offending cell otherwise.
    pub fn unimodular_for_order(&self, order: &[usize]) -> Result<Option<Vec<usize>>> {
        let rank = self.check_order(order)?;
        Ok(self.first_bad_cell(&rank))
    }
}

/// Unimodularity verdict for a triangulation: `(true, None)` or
/// `(false, Some(first offending cell))`.
pub fn is_unimodular(t: &Triangulation, config: &PointConfiguration) -> Result<(bool, Option<Vec<usize>>)> {
    for s in &t.simplices {
        if !config.cell_volume(s)?.is_one() {
            return Ok((false, Some(s.clone())));
        }
    }
    Ok((true, None))
}

/// Pulling triangulation of the lattice points of `p`; `order` indexes
/// `p.lattice_points()`.
pub fn pulling_triangulation(p: &LatticePolytope, order: &[usize]) -> Result<Triangulation> {
    PointConfiguration::lattice_points_of(p)?.pulling_triangulation(order)
}

/// `|det|` of the edge vectors of `simplex` in `L ∩ aff(simplex)`.
pub fn normalized_volume(simplex: &[Vec<BigInt>], l: &AffineLattice) -> Result<BigInt> {
    let first = simplex.first().ok_or(Error::Empty("simplex"))?;
    let sub = l.restrict_to_hull(simplex)?;
    if sub.dim() + 1 != simplex.len() {
        return Err(Error::DegenerateSimplex);
    }
    let base = sub.coords(first).ok_or(Error::NotInLattice)?;
    let rows = simplex[1..]
        .iter()
        .map(|x| sub.coords(x).map(|c| sub_vec(&c, &base)).ok_or(Error::NotInLattice))
        .collect::<Result<Vec<_>>>()?;
    Ok(det_of(&rows).abs())
}

/// How [`all_pulling_unimodular`] treats configurations above the cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderingOptions {
    pub cap: usize,
    /// Allow the vertex-transitive shortcut above the cap.
    pub symmetry: bool,
    /// Test this many seeded random orderings above the cap.
    pub sample: Option<(usize, u64)>,
}

impl Default for OrderingOptions {
    fn default() -> Self {
        OrderingOptions {
            cap: DEFAULT_ORDERING_CAP,
            symmetry: true,
            sample: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderingMethod {
    Exhaustive,
    Symmetry,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderingReport {
    pub all_unimodular: bool,
    pub method: OrderingMethod,
    pub orderings_checked: usize,
    /// Offending ordering and cell.
    pub counterexample: Option<(Vec<usize>, Vec<usize>)>,
}

/// Whether every pulling triangulation of the lattice points of `p` is
/// unimodular.
pub fn all_pulling_unimodular(p: &LatticePolytope, opts: &OrderingOptions) -> Result<OrderingReport> {
    let config = PointConfiguration::lattice_points_of(p)?;
    let n = config.len();
    if n <= opts.cap {
        let orbits = automorphism_orbits(&config, SYMMETRY_NODE_BUDGET);
        let mut reps: Vec<usize> = Vec::new();
        for i in 0..n {
            if orbits[i] == i {
                reps.push(i);
            }
        }
        return Ok(exhaustive(&config, &reps, None));
    }
    if opts.symmetry {
        let rep = transitive_symmetry_shortcut(p)?;
        match rep.verdict {
            SymmetryVerdict::Compressed | SymmetryVerdict::NotCompressed => {
                let order: Vec<usize> = (0..n).collect();
                let bad = config.unimodular_for_order(&order)?;
                return Ok(OrderingReport {
                    all_unimodular: bad.is_none(),
                    method: OrderingMethod::Symmetry,
                    orderings_checked: 1,
                    counterexample: bad.map(|c| (order, c)),
                });
            }
            SymmetryVerdict::Inapplicable => {}
        }
    }
    if let Some((count, seed)) = opts.sample {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<usize> = (0..n).collect();
        for k in 0..count {
            order.shuffle(&mut rng);
            if let Some(c) = config.unimodular_for_order(&order)? {
                return Ok(OrderingReport {
                    all_unimodular: false,
                    method: OrderingMethod::Sampled,
                    orderings_checked: k + 1,
                    counterexample: Some((order, c)),
                });
            }
        }
        return Ok(OrderingReport {
            all_unimodular: true,
            method: OrderingMethod::Sampled,
            orderings_checked: count,
            counterexample: None,
        });
    }
    Err(Error::CapExceeded {
        what: "lattice points for ordering enumeration",
        size: n,
        cap: opts.cap,
    })
}

/// Enumerate every ordering whose first entry is one of `firsts`, in
/// lexicographic order. With `stop_on_success` the search looks for a
/// unimodular triangulation instead of a counterexample.
fn exhaustive(config: &PointConfiguration, firsts: &[usize], stop_on_success: Option<()>) -> OrderingReport {
    let n = config.len();
    let mut jobs: Vec<(usize, usize)> = Vec::new();
    for &f in firsts {
        if n == 1 {
            jobs.push((f, usize::MAX));
        }
        for s in (0..n).filter(|&s| s != f) {
            jobs.push((f, s));
        }
    }
    let best = AtomicUsize::new(usize::MAX);
    let checked = AtomicUsize::new(0);
    let results: Vec<Option<(Vec<usize>, Option<Vec<usize>>)>> = jobs
        .par_iter()
        .enumerate()
        .map(|(job, &(f, s))| {
            let mut rest: Vec<usize> = (0..n).filter(|&i| i != f && i != s).collect();
            let mut order = Vec::with_capacity(n);
            loop {
                if best.load(Ordering::Relaxed) < job {
                    return None;
                }
                order.clear();
                order.push(f);
                if s != usize::MAX {
                    order.push(s);
                }
                order.extend_from_slice(&rest);
                let mut rank = vec![0; n];
                for (pos, &i) in order.iter().enumerate() {
                    rank[i] = pos;
                }
                checked.fetch_add(1, Ordering::Relaxed);
                let bad = config.first_bad_cell(&rank);
                let hit = match stop_on_success {
                    None => bad.is_some(),
                    Some(()) => bad.is_none(),
                };
                if hit {
                    best.fetch_min(job, Ordering::Relaxed);
                    return Some((order.clone(), bad));
                }
                if !next_permutation(&mut rest) {
                    return None;
                }
            }
        })
        .collect();
    let found = results.into_iter().flatten().next();
    let orderings_checked = checked.load(Ordering::Relaxed);
    match (stop_on_success, found) {
        (None, Some((order, bad))) => OrderingReport {
            all_unimodular: false,
            method: OrderingMethod::Exhaustive,
            orderings_checked,
            counterexample: Some((order, bad.expect("counterexample has a cell"))),
        },
        (None, None) => OrderingReport {
            all_unimodular: true,
            method: OrderingMethod::Exhaustive,
            orderings_checked,
            counterexample: None,
        },
        (Some(()), Some((order, _))) => OrderingReport {
            all_unimodular: true,
            method: OrderingMethod::Exhaustive,
            orderings_checked,
            counterexample: Some((order, Vec::new())),
        },
        (Some(()), None) => OrderingReport {
            all_unimodular: false,
            method: OrderingMethod::Exhaustive,
            orderings_checked,
            counterexample: None,
        },
    }
}

/// Search for an ordering starting with point `first` whose pulling
/// triangulation is unimodular. Returns the ordering if one exists.
pub fn unimodular_ordering_with_first(
    config: &PointConfiguration,
    first: usize,
    cap: usize,
) -> Result<Option<Vec<usize>>> {
    if config.len() > cap {
        return Err(Error::CapExceeded {
            what: "points for ordering enumeration",
            size: config.len(),
            cap,
        });
    }
    if first >= config.len() {
        return Err(Error::InvalidInput(format!("point index {first} out of range")));
    }
    let r = exhaustive(config, &[first], Some(()));
    Ok(r.counterexample.map(|(order, _)| order))
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
