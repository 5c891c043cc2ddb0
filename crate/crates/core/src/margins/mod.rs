//! Hierarchical marginal models: marginal matrices, decomposability, and
//! the classification cascade for compressed marginal polytopes.

mod covariance;

pub use covariance::{covariance_check, covariance_map, tilde_graph, CovarianceReport};

use crate::compressed::is_compressed;
use crate::cutpoly::{has_minor, max_induced_cycle, Graph, Minor};
use crate::error::{Error, Result};
use crate::exact::IntMatrix;
use crate::polytope::{LatticeMode, LatticePolytope};
use num_bigint::BigInt;
use std::collections::{BTreeSet, HashMap};

/// Default column cap for the brute-force certifier fallback.
pub const DEFAULT_CERTIFIER_COLUMN_CAP: usize = 512;

/// Largest table (column count) a marginal matrix may have.
pub const MAX_TABLE_CELLS: usize = 1 << 16;

/// Simplicial complex on `0..n`, stored by its inclusion-maximal faces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Faces are reduced to the inclusion-maximal ones; every vertex must
    /// appear in some face.
    pub fn new(n: usize, faces: &[Vec<usize>]) -> Result<Self> {
        let mut sets: Vec<BTreeSet<usize>> = Vec::new();
        for f in faces {
            if f.is_empty() {
                continue;
            }
            if let Some(&v) = f.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidInput(format!("vertex {v} out of range")));
            }
            sets.push(f.iter().copied().collect());
        }
        let mut covered = vec![false; n];
        for s in &sets {
            for &v in s {
                covered[v] = true;
            }
        }
        if let Some(v) = covered.iter().position(|c| !c) {
            return Err(Error::InvalidInput(format!("vertex {v} lies in no face")));
        }
        Ok(Self::from_sets(n, sets))
    }

    fn from_sets(n: usize, sets: Vec<BTreeSet<usize>>) -> Self {
        let mut facets: Vec<Vec<usize>> = sets
            .iter()
            .enumerate()
            .filter(|(i, s)| {
                !sets
                    .iter()
                    .enumerate()
                    .any(|(j, t)| (s.is_subset(t) && s.len() < t.len()) || (*s == t && j < *i))
            })
            .map(|(_, s)| s.iter().copied().collect())
            .collect();
        facets.sort();
        SimplicialComplex { n, facets }
    }

    pub fn simplex(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: if n == 0 { vec![] } else { vec![(0..n).collect()] },
        }
    }

    /// All `(n-1)`-subsets of `0..n`.
    pub fn simplex_boundary(n: usize) -> Self {
        let sets = (0..n).map(|skip| (0..n).filter(|&v| v != skip).collect()).collect();
        Self::from_sets(n, sets)
    }

    /// Edges and isolated vertices of a graph.
    pub fn from_graph(g: &Graph) -> Self {
        let mut sets: Vec<BTreeSet<usize>> = g.edges().iter().map(|&(a, b)| [a, b].into()).collect();
        for v in 0..g.n() {
            if g.adj(v) == 0 {
                sets.push([v].into());
            }
        }
        Self::from_sets(g.n(), sets)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn is_simplex(&self) -> bool {
        self.facets.len() <= 1
    }

    pub fn is_face(&self, s: &[usize]) -> bool {
        self.facets.iter().any(|f| s.iter().all(|v| f.contains(v)))
    }

    /// Whether every facet has at most two vertices.
    pub fn is_graph(&self) -> bool {
        self.facets.iter().all(|f| f.len() <= 2)
    }

    pub fn is_simplex_boundary(&self) -> bool {
        self.n >= 3 && *self == Self::simplex_boundary(self.n)
    }

    /// Subcomplex induced on `keep`, relabelled in increasing order.
    pub fn induced(&self, keep: &[usize]) -> SimplicialComplex {
        let keep: Vec<usize> = keep.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let pos = |v: usize| keep.binary_search(&v).ok();
        let sets = self
            .facets
            .iter()
            .map(|f| f.iter().filter_map(|&v| pos(v)).collect::<BTreeSet<usize>>())
            .filter(|s| !s.is_empty())
            .collect();
        Self::from_sets(keep.len(), sets)
    }

    /// A vertex lying in every facet, if any.
    pub fn apex(&self) -> Option<usize> {
        (0..self.n).find(|v| self.facets.iter().all(|f| f.contains(v)))
    }

    /// Graph on the vertices with an edge whenever two vertices share a facet.
    pub fn two_section(&self) -> Graph {
        let mut edges = BTreeSet::new();
        for f in &self.facets {
            for (i, &a) in f.iter().enumerate() {
                for &b in &f[i + 1..] {
                    edges.insert((a, b));
                }
            }
        }
        Graph::new(self.n, &edges.into_iter().collect::<Vec<_>>()).expect("two-section is simple")
    }
}

/// A decomposition `(Δ₁, S, Δ₂)`; `v1` and `v2` are the vertex sets of the
/// parts in the original labelling, `delta1`/`delta2` are relabelled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub separator: Vec<usize>,
    pub v1: Vec<usize>,
    pub v2: Vec<usize>,
    pub delta1: SimplicialComplex,
    pub delta2: SimplicialComplex,
}

/// Every decomposition with `S` a face, ordered by `|S|`, then `S`, then
/// the split-off component.
pub fn reductions(delta: &SimplicialComplex) -> Vec<Reduction> {
    let n = delta.n();
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    faces.insert(Vec::new());
    for f in delta.facets() {
        for mask in 1u64..(1 << f.len()) {
            faces.insert((0..f.len()).filter(|&i| mask >> i & 1 == 1).map(|i| f[i]).collect());
        }
    }
    let mut faces: Vec<Vec<usize>> = faces.into_iter().collect();
    faces.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    let mut out = Vec::new();
    for s in faces {
        let rest: Vec<usize> = (0..n).filter(|v| !s.contains(v)).collect();
        let comps = components_avoiding(delta, &s, &rest);
        if comps.len() < 2 {
            continue;
        }
        for comp in &comps {
            let mut v1: Vec<usize> = s.iter().chain(comp).copied().collect();
            v1.sort_unstable();
            let v2: Vec<usize> = (0..n).filter(|v| !comp.contains(v)).collect();
            out.push(Reduction {
                separator: s.clone(),
                delta1: delta.induced(&v1),
                delta2: delta.induced(&v2),
                v1,
                v2,
            });
        }
    }
    out
}

pub fn is_reducible(delta: &SimplicialComplex) -> Option<Reduction> {
    reductions(delta).into_iter().next()
}

/// Connected components of `rest` where two vertices are joined when they
/// share a facet (after deleting `s`).
fn components_avoiding(delta: &SimplicialComplex, s: &[usize], rest: &[usize]) -> Vec<Vec<usize>> {
    let mut parent: HashMap<usize, usize> = rest.iter().map(|&v| (v, v)).collect();
    fn find(p: &mut HashMap<usize, usize>, v: usize) -> usize {
        let mut r = v;
        while p[&r] != r {
            r = p[&r];
        }
        p.insert(v, r);
        r
    }
    for f in delta.facets() {
        let vs: Vec<usize> = f.iter().copied().filter(|v| !s.contains(v)).collect();
        for w in vs.windows(2) {
            let a = find(&mut parent, w[0]);
            let b = find(&mut parent, w[1]);
            if a != b {
                parent.insert(a.max(b), a.min(b));
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for &v in rest {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }
    groups.into_values().collect()
}

pub fn is_decomposable(delta: &SimplicialComplex) -> bool {
    decomposable_memo(delta, &mut HashMap::new())
}

fn decomposable_memo(delta: &SimplicialComplex, memo: &mut HashMap<SimplicialComplex, bool>) -> bool {
    if delta.is_simplex() {
        return true;
    }
    if let Some(&r) = memo.get(delta) {
        return r;
    }
    let r = reductions(delta)
        .iter()
        .any(|red| decomposable_memo(&red.delta1, memo) && decomposable_memo(&red.delta2, memo));
    memo.insert(delta.clone(), r);
    r
}

/// `A_Δ` with its cell indexing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarginalModel {
    pub complex: SimplicialComplex,
    pub d: Vec<usize>,
    pub a: IntMatrix,
    /// Table cell of each column, lexicographic with the first coordinate
    /// most significant.
    pub cells: Vec<Vec<usize>>,
    /// `(facet index, marginal cell)` of each row.
    pub rows: Vec<(usize, Vec<usize>)>,
}

impl MarginalModel {
    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        self.a.columns()
    }

    /// Indicator of the first facet's row block: `wᵀAⱼ = 1` for every column.
    pub fn block_weight(&self) -> Vec<BigInt> {
        self.rows
            .iter()
            .map(|(f, _)| BigInt::from(u8::from(*f == 0)))
            .collect()
    }

    /// Convex hull of the columns in the lattice they generate.
    pub fn polytope(&self) -> Result<LatticePolytope> {
        LatticePolytope::new(&self.columns(), LatticeMode::Generated)
    }
}

fn product_cells(d: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &k in d {
        out = out
            .into_iter()
            .flat_map(|c| {
                (0..k).map(move |v| {
                    let mut c2 = c.clone();
                    c2.push(v);
                    c2
                })
            })
            .collect();
    }
    out
}

pub fn marginal_matrix(delta: &SimplicialComplex, d: &[usize]) -> Result<MarginalModel> {
    if d.len() != delta.n() {
        return Err(Error::DimensionMismatch {
            expected: delta.n(),
            got: d.len(),
        });
    }
    if d.contains(&0) {
        return Err(Error::InvalidInput("table dimensions must be positive".into()));
    }
    if delta.facets().is_empty() {
        return Err(Error::Empty("facet list"));
    }
    let size = d.iter().try_fold(1usize, |acc, &k| acc.checked_mul(k)).unwrap_or(usize::MAX);
    if size > MAX_TABLE_CELLS {
        return Err(Error::CapExceeded {
            what: "table cells",
            size,
            cap: MAX_TABLE_CELLS,
        });
    }
    let cells = product_cells(d);
    let mut rows = Vec::new();
    for (fi, f) in delta.facets().iter().enumerate() {
        let dims: Vec<usize> = f.iter().map(|&v| d[v]).collect();
        for mc in product_cells(&dims) {
            rows.push((fi, mc));
        }
    }
    let mut a = IntMatrix::zeros(rows.len(), cells.len());
    for (r, (fi, mc)) in rows.iter().enumerate() {
        let f = &delta.facets()[*fi];
        for (c, cell) in cells.iter().enumerate() {
            if f.iter().zip(mc).all(|(&v, &x)| cell[v] == x) {
                a.set(r, c, BigInt::from(1));
            }
        }
    }
    Ok(MarginalModel {
        complex: delta.clone(),
        d: d.to_vec(),
        a,
        cells,
        rows,
    })
}

/// Cone over `delta` with a new vertex `n` of dimension `d_new`.
pub fn cone_model(delta: &SimplicialComplex, d: &[usize], d_new: usize) -> Result<MarginalModel> {
    let (cone, d2) = cone_complex(delta, d, d_new);
    marginal_matrix(&cone, &d2)
}

pub fn cone_complex(delta: &SimplicialComplex, d: &[usize], d_new: usize) -> (SimplicialComplex, Vec<usize>) {
    let n = delta.n();
    let sets = if delta.facets().is_empty() {
        vec![[n].into()]
    } else {
        delta
            .facets()
            .iter()
            .map(|f| f.iter().copied().chain([n]).collect())
            .collect()
    };
    let mut d2 = d.to_vec();
    d2.push(d_new);
    (SimplicialComplex::from_sets(n + 1, sets), d2)
}

/// Closed-form rule for the boundary of a simplex on `d.len()` vertices.
pub fn boundary_simplex_classifier(d: &[usize]) -> Result<bool> {
    if d.len() < 3 {
        return Err(Error::InvalidInput("boundary classifier needs n >= 3".into()));
    }
    let big = d.iter().filter(|&&k| k > 2).count();
    let mut sorted = d.to_vec();
    sorted.sort_unstable();
    Ok(big <= 2 || (d.len() == 3 && sorted[0] == 3 && sorted[1] == 3))
}

/// Closed-form rule for graphs with binary variables.
pub fn binary_graph_classifier(delta: &SimplicialComplex) -> Result<bool> {
    if !delta.is_graph() {
        return Err(Error::NotAGraph);
    }
    let g = delta.two_section();
    Ok(!has_minor(&g, Minor::K4) && max_induced_cycle(&g) <= 4)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
    Unknown,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Unknown => "unknown",
        }
    }

    fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarginClassification {
    pub verdict: Verdict,
    pub rule: String,
}

impl MarginClassification {
    fn new(verdict: Verdict, rule: &str) -> Self {
        MarginClassification {
            verdict,
            rule: rule.to_string(),
        }
    }
}

pub fn margins_compressed(delta: &SimplicialComplex, d: &[usize]) -> Result<MarginClassification> {
    margins_compressed_with_cap(delta, d, DEFAULT_CERTIFIER_COLUMN_CAP)
}

pub fn margins_compressed_with_cap(
    delta: &SimplicialComplex,
    d: &[usize],
    cap: usize,
) -> Result<MarginClassification> {
    if d.len() != delta.n() {
        return Err(Error::DimensionMismatch {
            expected: delta.n(),
            got: d.len(),
        });
    }
    if d.contains(&0) {
        return Err(Error::InvalidInput("table dimensions must be positive".into()));
    }
    classify(delta, d, cap)
}

fn classify(delta: &SimplicialComplex, d: &[usize], cap: usize) -> Result<MarginClassification> {
    if let Some(i) = d.iter().position(|&k| k == 1) {
        let keep: Vec<usize> = (0..delta.n()).filter(|&v| v != i).collect();
        let sub_d: Vec<usize> = keep.iter().map(|&v| d[v]).collect();
        return classify(&delta.induced(&keep), &sub_d, cap);
    }
    if is_decomposable(delta) {
        return Ok(MarginClassification::new(Verdict::True, "decomposable"));
    }
    for red in reductions(delta) {
        let d1: Vec<usize> = red.v1.iter().map(|&v| d[v]).collect();
        let d2: Vec<usize> = red.v2.iter().map(|&v| d[v]).collect();
        if classify(&red.delta1, &d1, cap)?.verdict == Verdict::True
            && classify(&red.delta2, &d2, cap)?.verdict == Verdict::True
        {
            return Ok(MarginClassification::new(Verdict::True, "reducible"));
        }
    }
    if let Some(v) = delta.apex() {
        let keep: Vec<usize> = (0..delta.n()).filter(|&u| u != v).collect();
        let link = delta.induced(&keep);
        let sub_d: Vec<usize> = keep.iter().map(|&u| d[u]).collect();
        let inner = classify(&link, &sub_d, cap)?;
        if inner.verdict != Verdict::Unknown {
            return Ok(MarginClassification::new(inner.verdict, "cone"));
        }
    }
    if delta.is_simplex_boundary() {
        return Ok(MarginClassification::new(
            Verdict::from_bool(boundary_simplex_classifier(d)?),
            "boundary-of-simplex",
        ));
    }
    if delta.is_graph() && d.iter().all(|&k| k == 2) {
        return Ok(MarginClassification::new(
            Verdict::from_bool(binary_graph_classifier(delta)?),
            "binary-graph",
        ));
    }
    let columns: usize = d.iter().product();
    if columns <= cap {
        let model = marginal_matrix(delta, d)?;
        let cert = is_compressed(&model.polytope()?)?;
        return Ok(MarginClassification::new(Verdict::from_bool(cert.verdict), "certifier"));
    }
    Ok(MarginClassification::new(Verdict::Unknown, "none"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(n: usize, f: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::new(n, &f.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn complex_normalization() {
        let c = cx(3, &[&[0, 1], &[1], &[1, 2], &[0, 1]]);
        assert_eq!(c.facets(), &[vec![0, 1], vec![1, 2]]);
        assert!(SimplicialComplex::new(3, &[vec![0, 1]]).is_err());
        assert_eq!(SimplicialComplex::simplex_boundary(3).facets().len(), 3);
    }

    #[test]
    fn marginal_matrix_examples() {
        let m = marginal_matrix(&cx(2, &[&[0], &[1]]), &[2, 2]).unwrap();
        assert_eq!(
            m.a,
            IntMatrix::from_i64(&[&[1, 1, 0, 0], &[0, 0, 1, 1], &[1, 0, 1, 0], &[0, 1, 0, 1]])
        );
        let full = marginal_matrix(&cx(2, &[&[0, 1]]), &[2, 2]).unwrap();
        assert_eq!(full.a, IntMatrix::identity(4));
        let b = marginal_matrix(&SimplicialComplex::simplex_boundary(3), &[2, 2, 2]).unwrap();
        assert_eq!((b.a.rows(), b.a.cols()), (12, 8));
    }

    #[test]
    fn decomposability() {
        let path = cx(3, &[&[0, 1], &[1, 2]]);
        let r = is_reducible(&path).unwrap();
        assert_eq!(r.separator, vec![1]);
        assert!(is_decomposable(&path));
        let bd = SimplicialComplex::simplex_boundary(3);
        assert!(is_reducible(&bd).is_none());
        assert!(!is_decomposable(&bd));
        assert!(is_decomposable(&SimplicialComplex::simplex(3)));
        // disjoint union splits over the empty face
        assert!(is_decomposable(&cx(4, &[&[0, 1], &[2, 3]])));
    }

    #[test]
    fn cascade_examples() {
        let path = cx(3, &[&[0, 1], &[1, 2]]);
        let c = margins_compressed(&path, &[3, 3, 3]).unwrap();
        assert_eq!((c.verdict, c.rule.as_str()), (Verdict::True, "decomposable"));
        let c5 = SimplicialComplex::from_graph(&Graph::cycle(5));
        let c = margins_compressed(&c5, &[2; 5]).unwrap();
        assert_eq!((c.verdict, c.rule.as_str()), (Verdict::False, "binary-graph"));
        let bd = SimplicialComplex::simplex_boundary(3);
        let c = margins_compressed(&bd, &[3, 4, 4]).unwrap();
        assert_eq!((c.verdict, c.rule.as_str()), (Verdict::False, "boundary-of-simplex"));
    }

    #[test]
    fn boundary_rule() {
        assert!(boundary_simplex_classifier(&[3, 3, 7]).unwrap());
        assert!(!boundary_simplex_classifier(&[3, 4, 4]).unwrap());
        assert!(!boundary_simplex_classifier(&[2, 3, 3, 3]).unwrap());
        assert!(boundary_simplex_classifier(&[2, 2, 9, 9]).unwrap());
    }

    #[test]
    fn binary_graph_rule() {
        let c4 = SimplicialComplex::from_graph(&Graph::cycle(4));
        assert!(binary_graph_classifier(&c4).unwrap());
        let k4 = SimplicialComplex::from_graph(&Graph::complete(4));
        assert!(!binary_graph_classifier(&k4).unwrap());
        assert_eq!(
            binary_graph_classifier(&SimplicialComplex::simplex(3)).unwrap_err(),
            Error::NotAGraph
        );
    }

    #[test]
    fn cones() {
        let (c, d) = cone_complex(&cx(1, &[&[0]]), &[2], 2);
        assert_eq!(c.facets(), &[vec![0, 1]]);
        assert_eq!(d, vec![2, 2]);
        let m = cone_model(&cx(1, &[&[0]]), &[2], 2).unwrap();
        assert_eq!(m.a, IntMatrix::identity(4));
        let (cp, dp) = cone_complex(&cx(3, &[&[0, 1], &[1, 2]]), &[2, 2, 2], 3);
        assert!(is_decomposable(&cp));
        assert_eq!(margins_compressed(&cp, &dp).unwrap().verdict, Verdict::True);
        let flat = cone_model(&cx(2, &[&[0], &[1]]), &[2, 2], 1).unwrap();
        let base = marginal_matrix(&cx(2, &[&[0], &[1]]), &[2, 2]).unwrap();
        assert_eq!(flat.a, base.a);
    }
}
