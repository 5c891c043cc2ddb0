#![allow(dead_code)]

use itertools::Itertools;
use num_bigint::BigInt;
use polycomp::cutpoly::Graph;
use polycomp::exact::{ints, IntMatrix};
use polycomp::margins::SimplicialComplex;
use polycomp::polytope::{LatticeMode, LatticePolytope};

pub fn pts(list: &[&[i64]]) -> Vec<Vec<BigInt>> {
    list.iter().map(|p| ints(p)).collect()
}

pub fn birkhoff(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .permutations(n)
        .map(|perm| {
            let mut m = vec![BigInt::from(0); n * n];
            for (r, &c) in perm.iter().enumerate() {
                m[n * r + c] = BigInt::from(1);
            }
            m
        })
        .collect()
}

pub fn example_matrix() -> IntMatrix {
    IntMatrix::from_i64(&[&[1, 1, 1, 1, 1], &[0, 0, 1, 2, 3], &[1, 0, 0, 0, 0]])
}

pub fn segment_matrix() -> IntMatrix {
    IntMatrix::from_i64(&[&[1, 1, 1], &[0, 1, 2]])
}

/// Small polytopes with at most nine lattice points.
pub fn small_polytopes() -> Vec<(&'static str, LatticePolytope)> {
    let z = LatticeMode::Integer;
    let list: Vec<(&str, Vec<Vec<BigInt>>, LatticeMode)> = vec![
        ("unit segment", pts(&[&[0], &[1]]), z.clone()),
        ("segment 0..2", pts(&[&[0], &[2]]), z.clone()),
        ("segment 0..3", pts(&[&[0], &[3]]), z.clone()),
        ("unit square", pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]), z.clone()),
        ("triangle", pts(&[&[0, 0], &[1, 0], &[0, 1]]), z.clone()),
        ("dilated triangle", pts(&[&[0, 0], &[2, 0], &[0, 2]]), z.clone()),
        ("kite", pts(&[&[0, 0], &[1, 0], &[0, 1], &[2, 2]]), z.clone()),
        ("thin triangle", pts(&[&[0, 0], &[1, 0], &[1, 2]]), z.clone()),
        ("trapezoid", pts(&[&[0, 0], &[2, 0], &[0, 1], &[1, 1]]), z.clone()),
        ("rectangle 2x1", pts(&[&[0, 0], &[2, 0], &[0, 1], &[2, 1]]), z.clone()),
        ("square 2x2", pts(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2]]), z.clone()),
        (
            "unit cube",
            pts(&[
                &[0, 0, 0],
                &[1, 0, 0],
                &[0, 1, 0],
                &[0, 0, 1],
                &[1, 1, 0],
                &[1, 0, 1],
                &[0, 1, 1],
                &[1, 1, 1],
            ]),
            z.clone(),
        ),
        (
            "octahedron",
            pts(&[&[1, 0, 0], &[-1, 0, 0], &[0, 1, 0], &[0, -1, 0], &[0, 0, 1], &[0, 0, -1]]),
            z.clone(),
        ),
        ("empty tetrahedron", pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]), z.clone()),
        (
            "sparse tetrahedron",
            pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]),
            LatticeMode::Generated,
        ),
        ("prism", pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 0, 1], &[0, 1, 1]]), z.clone()),
        ("simplex 3", pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), z.clone()),
        ("birkhoff 3", birkhoff(3), z.clone()),
        ("segment matrix", segment_matrix().columns(), LatticeMode::Generated),
        ("example matrix", example_matrix().columns(), LatticeMode::Generated),
        ("hexagon", pts(&[&[0, 0], &[1, 0], &[2, 1], &[2, 2], &[1, 2], &[0, 1]]), z.clone()),
    ];
    list.into_iter()
        .map(|(n, p, m)| (n, LatticePolytope::new(&p, m).unwrap()))
        .collect()
}

/// Graphs on `n` vertices up to isomorphism (minimal edge mask over all
/// relabellings), optionally only connected ones.
pub fn graphs_up_to_iso(n: usize, connected_only: bool) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let index = |a: usize, b: usize| pairs.iter().position(|&p| p == (a.min(b), a.max(b))).unwrap();
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let canon = perms
            .iter()
            .map(|p| {
                let mut m = 0u32;
                for (k, &(a, b)) in pairs.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        m |= 1 << index(p[a], p[b]);
                    }
                }
                m
            })
            .min()
            .unwrap();
        if !seen.insert(canon) {
            continue;
        }
        let edges: Vec<(usize, usize)> = (0..pairs.len())
            .filter(|&k| canon >> k & 1 == 1)
            .map(|k| pairs[k])
            .collect();
        let g = Graph::new(n, &edges).unwrap();
        if !connected_only || g.is_connected() {
            out.push(g);
        }
    }
    out
}

/// All labelled graphs on `n` vertices.
pub fn labelled_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    (0u32..(1 << pairs.len()))
        .map(|mask| {
            let edges: Vec<(usize, usize)> = (0..pairs.len())
                .filter(|&k| mask >> k & 1 == 1)
                .map(|k| pairs[k])
                .collect();
            Graph::new(n, &edges).unwrap()
        })
        .collect()
}

pub fn complex(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
    let f: Vec<Vec<usize>> = facets.iter().map(|f| f.to_vec()).collect();
    SimplicialComplex::new(n, &f).unwrap()
}

/// Hierarchical models with small tables.
pub fn small_models() -> Vec<(&'static str, SimplicialComplex, Vec<usize>)> {
    vec![
        ("path 222", complex(3, &[&[0, 1], &[1, 2]]), vec![2, 2, 2]),
        ("path 323", complex(3, &[&[0, 1], &[1, 2]]), vec![3, 2, 3]),
        ("independence 23", complex(2, &[&[0], &[1]]), vec![2, 3]),
        ("saturated 22", complex(2, &[&[0, 1]]), vec![2, 2]),
        ("triangle boundary 222", SimplicialComplex::simplex_boundary(3), vec![2, 2, 2]),
        ("triangle boundary 223", SimplicialComplex::simplex_boundary(3), vec![2, 2, 3]),
        ("triangle boundary 333", SimplicialComplex::simplex_boundary(3), vec![3, 3, 3]),
        ("four-cycle binary", SimplicialComplex::from_graph(&Graph::cycle(4)), vec![2; 4]),
        ("five-cycle binary", SimplicialComplex::from_graph(&Graph::cycle(5)), vec![2; 5]),
        ("k4 binary", SimplicialComplex::from_graph(&Graph::complete(4)), vec![2; 4]),
        ("star binary", complex(4, &[&[0, 1], &[0, 2], &[0, 3]]), vec![2; 4]),
        ("cone over path", complex(4, &[&[0, 1, 3], &[1, 2, 3]]), vec![2, 2, 2, 2]),
    ]
}

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

/// Every x >= 0 with Σx <= max_total, grouped by Ax; for each b the largest
/// value reached by each coordinate.
pub fn ip_table(a: &IntMatrix, max_total: usize) -> BTreeMap<Vec<BigInt>, Vec<BigInt>> {
    let n = a.cols();
    let cols = a.columns();
    let mut table: BTreeMap<Vec<BigInt>, Vec<BigInt>> = BTreeMap::new();
    let mut x = vec![0usize; n];
    fn rec(
        j: usize,
        left: usize,
        x: &mut Vec<usize>,
        cols: &[Vec<BigInt>],
        rows: usize,
        table: &mut BTreeMap<Vec<BigInt>, Vec<BigInt>>,
    ) {
        if j == x.len() {
            let mut b = vec![BigInt::zero(); rows];
            for (c, &k) in cols.iter().zip(x.iter()) {
                for (bi, ci) in b.iter_mut().zip(c) {
                    *bi += ci * BigInt::from(k);
                }
            }
            let e = table.entry(b).or_insert_with(|| vec![BigInt::from(-1); x.len()]);
            for (best, &k) in e.iter_mut().zip(x.iter()) {
                if BigInt::from(k) > *best {
                    *best = BigInt::from(k);
                }
            }
            return;
        }
        for k in 0..=left {
            x[j] = k;
            rec(j + 1, left - k, x, cols, rows, table);
        }
        x[j] = 0;
    }
    rec(0, max_total, &mut x, &cols, a.rows(), &mut table);
    table
}

fn rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// Row reduce `m` in place; returns the pivot columns.
fn row_reduce(m: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// LP optimum of x_cell over {Ax = b, x >= 0} from the basic feasible
/// solutions; `None` when infeasible.
pub fn lp_by_vertices(a: &IntMatrix, b: &[BigInt], cell: usize) -> Option<BigRational> {
    let cols = a.columns();
    let n = cols.len();
    let mut full: Vec<Vec<BigRational>> = a.to_rows().iter().map(|r| r.iter().map(rat).collect()).collect();
    let rank = row_reduce(&mut full, n).len();
    let mut best: Option<BigRational> = None;
    for subset in (0..n).combinations(rank) {
        let mut m: Vec<Vec<BigRational>> = (0..a.rows())
            .map(|i| {
                let mut row: Vec<BigRational> = subset.iter().map(|&j| rat(&cols[j][i])).collect();
                row.push(rat(&b[i]));
                row
            })
            .collect();
        let piv = row_reduce(&mut m, rank + 1);
        if piv.len() != rank || piv.contains(&rank) {
            continue;
        }
        let xs: Vec<BigRational> = (0..rank).map(|k| m[k][rank].clone()).collect();
        if xs.iter().any(|v| v.is_negative()) {
            continue;
        }
        let value = subset
            .iter()
            .position(|&j| j == cell)
            .map_or_else(BigRational::zero, |k| xs[k].clone());
        if best.as_ref().is_none_or(|v| value > *v) {
            best = Some(value);
        }
    }
    best
}
