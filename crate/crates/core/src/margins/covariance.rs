//! The covariance map from binary graph models to cut polytopes.

use super::{marginal_matrix, SimplicialComplex};
use crate::cutpoly::{cut_vectors, Graph};
use crate::error::{Error, Result};
use crate::exact::ring::rank_of;
use crate::exact::sub_vec;
use num_bigint::BigInt;
use std::collections::BTreeSet;

/// `Δ` plus an apex vertex `n` joined to every vertex.
pub fn tilde_graph(delta: &SimplicialComplex) -> Result<Graph> {
    if !delta.is_graph() {
        return Err(Error::NotAGraph);
    }
    let n = delta.n();
    let mut edges: Vec<(usize, usize)> = delta
        .facets()
        .iter()
        .filter(|f| f.len() == 2)
        .map(|f| (f[0], f[1]))
        .collect();
    edges.extend((0..n).map(|v| (v, n)));
    Graph::new(n + 1, &edges)
}

/// Linear map on marginal vectors sending the column of cell `x` to the cut
/// vector of `{i : x_i = 1}` in the tilde graph. Rows are indexed by the
/// edges of the tilde graph, columns by the rows of `A_Δ`.
pub fn covariance_map(delta: &SimplicialComplex) -> Result<Vec<Vec<BigInt>>> {
    let tilde = tilde_graph(delta)?;
    let n = delta.n();
    let model = marginal_matrix(delta, &vec![2; n])?;
    let width = model.rows.len();
    // Row selecting x_i: the rows of the first facet containing i with x_i = 1.
    let single = |i: usize| -> Vec<BigInt> {
        let fi = delta.facets().iter().position(|f| f.contains(&i)).expect("vertex is covered");
        let slot = delta.facets()[fi].iter().position(|&v| v == i).unwrap();
        model
            .rows
            .iter()
            .map(|(f, c)| BigInt::from(u8::from(*f == fi && c[slot] == 1)))
            .collect()
    };
    let pair = |i: usize, j: usize| -> Vec<BigInt> {
        let fi = delta
            .facets()
            .iter()
            .position(|f| f == &vec![i.min(j), i.max(j)])
            .expect("edge is a facet");
        model
            .rows
            .iter()
            .map(|(f, c)| BigInt::from(u8::from(*f == fi && c[0] == 1 && c[1] == 1)))
            .collect()
    };
    let mut out = Vec::with_capacity(tilde.edges().len());
    for &(a, b) in tilde.edges() {
        if b == n {
            out.push(single(a));
        } else {
            let (sa, sb, p) = (single(a), single(b), pair(a, b));
            out.push(
                (0..width)
                    .map(|k| &sa[k] + &sb[k] - BigInt::from(2) * &p[k])
                    .collect(),
            );
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CovarianceReport {
    pub marginal_vertices: usize,
    pub cut_vertices: usize,
    pub marginal_dim: usize,
    pub cut_dim: usize,
    pub bijective: bool,
}

impl CovarianceReport {
    pub fn holds(&self) -> bool {
        self.bijective && self.marginal_vertices == self.cut_vertices && self.marginal_dim == self.cut_dim
    }
}

fn affine_dim(points: &[Vec<BigInt>]) -> usize {
    let Some(first) = points.first() else { return 0 };
    let rows: Vec<Vec<BigInt>> = points[1..].iter().map(|p| sub_vec(p, first)).collect();
    rank_of(&rows)
}

/// Check that the covariance map is a bijection from the columns of `A_Δ`
/// (binary table) onto the cut vectors of the tilde graph, with matching
/// dimensions.
pub fn covariance_check(delta: &SimplicialComplex) -> Result<CovarianceReport> {
    let tilde = tilde_graph(delta)?;
    let model = marginal_matrix(delta, &vec![2; delta.n()])?;
    let map = covariance_map(delta)?;
    let columns = model.columns();
    let images: Vec<Vec<BigInt>> = columns
        .iter()
        .map(|c| map.iter().map(|row| crate::exact::dot(row, c)).collect())
        .collect();
    let cuts = cut_vectors(&tilde);
    let image_set: BTreeSet<&Vec<BigInt>> = images.iter().collect();
    let cut_set: BTreeSet<&Vec<BigInt>> = cuts.iter().collect();
    let distinct_columns: BTreeSet<&Vec<BigInt>> = columns.iter().collect();
    Ok(CovarianceReport {
        marginal_vertices: distinct_columns.len(),
        cut_vertices: cuts.len(),
        marginal_dim: affine_dim(&columns),
        cut_dim: affine_dim(&cuts),
        bijective: image_set.len() == images.len() && image_set == cut_set,
    })
}
