//! Cut polytopes of graphs and the graph tests that classify when they are
//! compressed.

mod minor;

pub use minor::{has_complete_minor, induced_cycles};

use crate::error::{Error, Result};
use crate::exact::ring::rank_of;
use crate::exact::sub_vec;
use crate::polytope::{FacetIneq, LatticeMode, LatticePolytope};
use num_bigint::BigInt;
use std::collections::BTreeSet;

/// Largest vertex count supported by the bitmask representation.
pub const MAX_GRAPH_VERTICES: usize = 64;

/// Default vertex cap for building cut polytopes.
pub const DEFAULT_CUT_POLYTOPE_CAP: usize = 7;

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<u64>,
}

impl Graph {
    /// Edges are normalized to `(min, max)` and sorted.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_GRAPH_VERTICES {
            return Err(Error::CapExceeded {
                what: "graph vertices",
                size: n,
                cap: MAX_GRAPH_VERTICES,
            });
        }
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidInput(format!("edge ({a},{b}) out of range")));
            }
            if a == b {
                return Err(Error::InvalidInput(format!("loop at vertex {a}")));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidInput(format!("repeated edge ({a},{b})")));
            }
        }
        Ok(Self::from_set(n, set))
    }

    fn from_set(n: usize, set: BTreeSet<(usize, usize)>) -> Self {
        let mut adj = vec![0u64; n];
        for &(a, b) in &set {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        Graph {
            n,
            edges: set.into_iter().collect(),
            adj,
        }
    }

    pub fn complete(n: usize) -> Self {
        let set = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        Self::from_set(n, set)
    }

    pub fn cycle(n: usize) -> Self {
        let set = (0..n).map(|i| {
            let j = (i + 1) % n;
            (i.min(j), i.max(j))
        });
        Self::from_set(n, set.collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adj(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && self.adj[a] >> b & 1 == 1
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.edges.binary_search(&(a.min(b), a.max(b))).ok()
    }

    pub(crate) fn vertex_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub(crate) fn neighbourhood(&self, set: u64) -> u64 {
        (0..self.n)
            .filter(|&v| set >> v & 1 == 1)
            .fold(0, |m, v| m | self.adj[v])
    }

    pub(crate) fn is_connected_within(&self, set: u64) -> bool {
        if set == 0 {
            return false;
        }
        let start = set.trailing_zeros() as usize;
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let next = self.neighbourhood(frontier) & set & !seen;
            seen |= next;
            frontier = next;
        }
        seen == set
    }

    pub(crate) fn components_within(&self, set: u64) -> Vec<u64> {
        let mut left = set;
        let mut out = Vec::new();
        while left != 0 {
            let start = left.trailing_zeros() as usize;
            let mut seen = 1u64 << start;
            let mut frontier = seen;
            while frontier != 0 {
                let next = self.neighbourhood(frontier) & set & !seen;
                seen |= next;
                frontier = next;
            }
            out.push(seen);
            left &= !seen;
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.is_connected_within(self.vertex_mask())
    }

    /// Contract edge `(a, b)`: `b` is merged into `a`, loops and parallel
    /// edges are dropped, and vertices above `b` shift down by one.
    pub fn contract(&self, a: usize, b: usize) -> Result<Graph> {
        if !self.has_edge(a, b) {
            return Err(Error::InvalidInput(format!("({a},{b}) is not an edge")));
        }
        let rename = |v: usize| {
            let v = if v == b { a } else { v };
            if v > b {
                v - 1
            } else {
                v
            }
        };
        let set = self
            .edges
            .iter()
            .map(|&(x, y)| (rename(x), rename(y)))
            .filter(|(x, y)| x != y)
            .map(|(x, y)| (x.min(y), x.max(y)))
            .collect();
        Ok(Self::from_set(self.n - 1, set))
    }

    /// Subgraph induced on `keep` (relabelled in increasing order).
    pub fn induced_subgraph(&self, keep: &[usize]) -> Result<Graph> {
        let keep: BTreeSet<usize> = keep.iter().copied().collect();
        if keep.iter().any(|&v| v >= self.n) {
            return Err(Error::InvalidInput("vertex out of range".into()));
        }
        let pos: Vec<Option<usize>> = (0..self.n)
            .map(|v| keep.contains(&v).then(|| keep.range(..v).count()))
            .collect();
        let set = self
            .edges
            .iter()
            .filter_map(|&(x, y)| Some((pos[x]?, pos[y]?)))
            .collect();
        Ok(Self::from_set(keep.len(), set))
    }
}

/// Cut vector `δ(S)` of a vertex subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutVector {
    pub set: Vec<usize>,
    pub coords: Vec<BigInt>,
}

pub fn cut_semimetric(g: &Graph, set: &[usize]) -> Result<CutVector> {
    let mut mask = 0u64;
    for &v in set {
        if v >= g.n() {
            return Err(Error::InvalidInput(format!("vertex {v} out of range")));
        }
        mask |= 1 << v;
    }
    let mut s: Vec<usize> = set.to_vec();
    s.sort_unstable();
    s.dedup();
    Ok(CutVector {
        set: s,
        coords: cut_of_mask(g, mask),
    })
}

fn cut_of_mask(g: &Graph, mask: u64) -> Vec<BigInt> {
    g.edges()
        .iter()
        .map(|&(a, b)| BigInt::from((mask >> a & 1) ^ (mask >> b & 1)))
        .collect()
}

/// All distinct cut vectors, in the order of the subsets containing vertex 0
/// as a non-member (`S ⊆ {1..n-1}` enumerated by bitmask).
pub fn cut_vectors(g: &Graph) -> Vec<Vec<BigInt>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let half = if g.n() == 0 { 1u64 } else { 1u64 << (g.n() - 1) };
    for m in 0..half {
        let v = cut_of_mask(g, m << 1);
        if seen.insert(v.clone()) {
            out.push(v);
        }
    }
    out
}

/// `Cut(G)` measured in the lattice generated by its vertices.
pub fn cut_polytope(g: &Graph) -> Result<LatticePolytope> {
    cut_polytope_with_cap(g, DEFAULT_CUT_POLYTOPE_CAP)
}

pub fn cut_polytope_with_cap(g: &Graph, cap: usize) -> Result<LatticePolytope> {
    if g.n() > cap {
        return Err(Error::CapExceeded {
            what: "cut polytope vertices",
            size: g.n(),
            cap,
        });
    }
    if g.edges().is_empty() {
        return Err(Error::Empty("edge set"));
    }
    LatticePolytope::new(&cut_vectors(g), LatticeMode::Generated)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Minor {
    K4,
    K5,
}

pub fn has_minor(g: &Graph, h: Minor) -> bool {
    match h {
        Minor::K4 => has_complete_minor(g, 4),
        Minor::K5 => has_complete_minor(g, 5),
    }
}

/// Length of the longest chordless cycle, 0 for a forest.
pub fn max_induced_cycle(g: &Graph) -> usize {
    induced_cycles(g).iter().map(Vec::len).max().unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutClassification {
    pub compressed: bool,
    pub k5_minor: bool,
    pub max_induced_cycle: usize,
}

pub fn cut_classify(g: &Graph) -> CutClassification {
    let k5_minor = has_minor(g, Minor::K5);
    let max_induced_cycle = max_induced_cycle(g);
    CutClassification {
        compressed: !k5_minor && max_induced_cycle <= 4,
        k5_minor,
        max_induced_cycle,
    }
}

pub fn cut_compressed(g: &Graph) -> bool {
    cut_classify(g).compressed
}

/// Cycle inequality `Σ_{C∖F} x − Σ_F x ≥ 1 − |F|` for edge sets `cycle`, `odd`.
fn cycle_inequality(m: usize, cycle: &[usize], odd: &[usize]) -> FacetIneq {
    let mut normal = vec![BigInt::from(0); m];
    for &e in cycle {
        normal[e] = BigInt::from(1);
    }
    for &e in odd {
        normal[e] = BigInt::from(-1);
    }
    FacetIneq::new(normal, BigInt::from(1) - BigInt::from(odd.len()))
}

/// Box inequalities that define facets, plus every cycle inequality over
/// chordless cycles; valid for graphs without a `K5` minor.
pub fn k5free_facets(g: &Graph) -> Result<Vec<FacetIneq>> {
    if has_minor(g, Minor::K5) {
        return Err(Error::HasK5Minor);
    }
    let m = g.edges().len();
    let cuts = cut_vectors(g);
    let mut out = BTreeSet::new();
    for e in 0..m {
        let mut lower = vec![BigInt::from(0); m];
        lower[e] = BigInt::from(1);
        let mut upper = vec![BigInt::from(0); m];
        upper[e] = BigInt::from(-1);
        for f in [FacetIneq::new(lower, BigInt::from(0)), FacetIneq::new(upper, BigInt::from(-1))] {
            let tight: Vec<&Vec<BigInt>> = cuts.iter().filter(|x| f.is_tight(x)).collect();
            if tight.is_empty() {
                continue;
            }
            let rows: Vec<Vec<BigInt>> = tight[1..].iter().map(|x| sub_vec(x, tight[0])).collect();
            if rank_of(&rows) + 1 == m {
                out.insert(f);
            }
        }
    }
    for cyc in induced_cycles(g) {
        let edges: Vec<usize> = (0..cyc.len())
            .map(|i| g.edge_index(cyc[i], cyc[(i + 1) % cyc.len()]).expect("cycle edge"))
            .collect();
        for mask in 0u64..(1 << edges.len()) {
            if mask.count_ones() % 2 == 1 {
                let odd: Vec<usize> = (0..edges.len()).filter(|&i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
                out.insert(cycle_inequality(m, &edges, &odd));
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Levels of one cycle inequality over all cuts of the cycle `C_c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleLevels {
    pub cycle_length: usize,
    pub odd_edges: Vec<usize>,
    pub levels: Vec<BigInt>,
    /// `floor(c/2) - 1`, the count stated for this family.
    pub stated_count: usize,
    pub discrepancy: bool,
}

/// `odd` indexes the edges `(i, i+1 mod c)` of the cycle.
pub fn cycle_facet_levels(c: usize, odd: &[usize]) -> Result<CycleLevels> {
    if c < 3 {
        return Err(Error::InvalidInput("cycle length must be at least 3".into()));
    }
    let odd: BTreeSet<usize> = odd.iter().copied().collect();
    if odd.len().is_multiple_of(2) || odd.iter().any(|&e| e >= c) {
        return Err(Error::InvalidInput("F must be an odd set of cycle edges".into()));
    }
    let g = Graph::cycle(c);
    let edge_of = |i: usize| g.edge_index(i, (i + 1) % c).expect("cycle edge");
    let cycle_edges: Vec<usize> = (0..c).map(edge_of).collect();
    let odd_edges: Vec<usize> = odd.iter().map(|&i| edge_of(i)).collect();
    let ineq = cycle_inequality(c, &cycle_edges, &odd_edges);
    let mut levels = BTreeSet::new();
    for mask in 0u64..(1 << c) {
        let s = ineq.slack(&cut_of_mask(&g, mask));
        assert!(s >= BigInt::from(0), "cycle inequality is valid on every cut");
        if s != BigInt::from(0) {
            levels.insert(s);
        }
    }
    let stated_count = c / 2 - 1;
    let levels: Vec<BigInt> = levels.into_iter().collect();
    Ok(CycleLevels {
        cycle_length: c,
        odd_edges: odd.into_iter().collect(),
        discrepancy: levels.len() != stated_count,
        levels,
        stated_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ints;
    use crate::polytope::facet_enumeration;

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::new(n, e).unwrap()
    }

    #[test]
    fn cut_vectors_examples() {
        let k3 = Graph::complete(3);
        assert_eq!(cut_semimetric(&k3, &[0]).unwrap().coords, ints(&[1, 1, 0]));
        assert_eq!(cut_semimetric(&k3, &[]).unwrap().coords, ints(&[0, 0, 0]));
        let k5 = Graph::complete(5);
        let b = [1i64, 1, 1, -1, -1];
        let value = |s: &[usize]| -> BigInt {
            let d = cut_semimetric(&k5, s).unwrap().coords;
            k5.edges()
                .iter()
                .zip(&d)
                .map(|(&(i, j), x)| BigInt::from(b[i] * b[j]) * x)
                .sum()
        };
        assert_eq!(value(&[0, 1, 2]), BigInt::from(-6));
        assert_eq!(value(&[0, 1]), BigInt::from(-2));
    }

    #[test]
    fn cut_polytope_sizes() {
        assert_eq!(cut_polytope(&Graph::complete(3)).unwrap().generators().len(), 4);
        let k2 = cut_polytope(&Graph::complete(2)).unwrap();
        assert_eq!(k2.generators(), &[ints(&[0]), ints(&[1])][..]);
        let c4 = cut_polytope(&Graph::cycle(4)).unwrap();
        assert_eq!(c4.generators().len(), 8);
        assert_eq!(c4.ambient_dim(), 4);
        assert!(cut_polytope(&Graph::complete(8)).is_err());
    }

    #[test]
    fn minors() {
        assert!(has_minor(&Graph::complete(5), Minor::K5));
        assert!(!has_minor(&Graph::cycle(5), Minor::K4));
        assert!(has_minor(&Graph::complete(4), Minor::K4));
        assert!(!has_minor(&Graph::complete(4), Minor::K5));
        // wheel W5 (hub + C5) has a K4 minor
        let mut e: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        e.extend((0..5).map(|i| (i, 5)));
        assert!(has_minor(&g(6, &e), Minor::K4));
        // K_{3,3} has no K5 minor but does have K4
        let mut k33 = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                k33.push((a, b));
            }
        }
        assert!(!has_minor(&g(6, &k33), Minor::K5));
        assert!(has_minor(&g(6, &k33), Minor::K4));
    }

    #[test]
    fn induced_cycle_lengths() {
        assert_eq!(max_induced_cycle(&Graph::cycle(5)), 5);
        assert_eq!(max_induced_cycle(&Graph::complete(4)), 3);
        assert_eq!(max_induced_cycle(&g(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4)])), 4);
        assert_eq!(max_induced_cycle(&g(4, &[(0, 1), (1, 2), (2, 3)])), 0);
        assert_eq!(induced_cycles(&Graph::complete(4)).len(), 4);
    }

    #[test]
    fn classification() {
        assert!(cut_compressed(&Graph::complete(3)));
        assert!(!cut_compressed(&Graph::cycle(5)));
        let k5 = cut_classify(&Graph::complete(5));
        assert!(!k5.compressed && k5.k5_minor);
    }

    #[test]
    fn contraction_and_induced() {
        let c4 = Graph::cycle(4);
        assert_eq!(c4.contract(0, 1).unwrap(), Graph::cycle(3));
        let k4 = Graph::complete(5).induced_subgraph(&[0, 1, 2, 3]).unwrap();
        assert_eq!(k4, Graph::complete(4));
        let c5 = Graph::cycle(5);
        let c = c5.contract(0, 1).unwrap();
        assert_eq!(c, Graph::cycle(4));
        assert!(!cut_compressed(&c5) && cut_compressed(&c));
    }

    #[test]
    fn facet_descriptions() {
        let k2 = k5free_facets(&Graph::complete(2)).unwrap();
        assert_eq!(
            k2,
            vec![FacetIneq::new(ints(&[-1]), BigInt::from(-1)), FacetIneq::new(ints(&[1]), BigInt::from(0))]
        );
        let c4 = k5free_facets(&Graph::cycle(4)).unwrap();
        let cycle_count = c4.iter().filter(|f| f.normal.iter().all(|x| x != &BigInt::from(0))).count();
        assert_eq!(cycle_count, 8);
        for graph in [Graph::cycle(3), Graph::cycle(4), Graph::complete(4)] {
            let expect = facet_enumeration(&cut_vectors(&graph)).unwrap().facets;
            assert_eq!(k5free_facets(&graph).unwrap(), expect);
        }
        assert_eq!(k5free_facets(&Graph::complete(5)).unwrap_err(), Error::HasK5Minor);
    }

    #[test]
    fn cycle_levels() {
        let l4 = cycle_facet_levels(4, &[0]).unwrap();
        assert_eq!(l4.levels, ints(&[2]));
        assert!(!l4.discrepancy);
        assert_eq!(cycle_facet_levels(6, &[0]).unwrap().levels, ints(&[2, 4]));
        let l5 = cycle_facet_levels(5, &[0]).unwrap();
        assert_eq!(l5.levels, ints(&[2, 4]));
        assert!(l5.discrepancy);
        assert!(cycle_facet_levels(4, &[0, 1]).is_err());
    }
}
