//! Reference examples recomputed from scratch.

use crate::bounds::{find_weight, lp_ip_sweep, pull_first_unimodular};
use crate::compressed::{facet_levels, is_compressed};
use crate::cutpoly::{cut_classify, cut_polytope, cut_semimetric, cycle_facet_levels, Graph};
use crate::exact::{int, ints, rat, IntMatrix};
use crate::margins::{margins_compressed, marginal_matrix, SimplicialComplex, Verdict};
use crate::polytope::{FacetIneq, LatticeMode, LatticePolytope};
use crate::triangulate::{transitive_symmetry_shortcut, SymmetryVerdict};
use crate::Result;
use itertools::Itertools;
use num_bigint::BigInt;
use rayon::prelude::*;

pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

type Check = fn() -> Result<(bool, String)>;

const CHECKS: &[(&str, Check)] = &[
    ("segment-lattice-points", segment_points),
    ("pentagonal-values", pentagonal_values),
    ("cut-k5-pentagonal-levels", pentagonal_levels),
    ("cut-k5-not-compressed", k5_not_compressed),
    ("cut-k5-symmetry", k5_symmetry),
    ("birkhoff-b3-symmetry", b3_symmetry),
    ("cut-classify-k3", || classify(Graph::complete(3), true)),
    ("cut-classify-c5", || classify(Graph::cycle(5), false)),
    ("cut-classify-k5", || classify(Graph::complete(5), false)),
    ("cycle-levels-c4", || cycle_levels(4, &[2])),
    ("cycle-levels-c6", || cycle_levels(6, &[2, 4])),
    ("margins-path-333", || {
        let path = SimplicialComplex::new(3, &[vec![0, 1], vec![1, 2]])?;
        margin(&path, &[3, 3, 3], Verdict::True)
    }),
    ("margins-c5-binary", || {
        margin(&SimplicialComplex::from_graph(&Graph::cycle(5)), &[2; 5], Verdict::False)
    }),
    ("margins-boundary-344", || margin(&SimplicialComplex::simplex_boundary(3), &[3, 4, 4], Verdict::False)),
    ("margins-boundary-337", || margin(&SimplicialComplex::simplex_boundary(3), &[3, 3, 7], Verdict::True)),
    ("margins-boundary-2333", || {
        margin(&SimplicialComplex::simplex_boundary(4), &[2, 3, 3, 3], Verdict::False)
    }),
    ("margins-c4-binary", || {
        margin(&SimplicialComplex::from_graph(&Graph::cycle(4)), &[2; 4], Verdict::True)
    }),
    ("margins-k4-binary", || {
        margin(&SimplicialComplex::from_graph(&Graph::complete(4)), &[2; 4], Verdict::False)
    }),
    ("example-weight", example_weight),
    ("example-sweep-cell-1", example_sweep),
    ("example-no-pull-first", example_pull_first),
    ("decomposable-sweep", decomposable_sweep),
];

pub fn run_checks(only: Option<&str>) -> Vec<CheckResult> {
    let selected: Vec<&(&str, Check)> = CHECKS
        .iter()
        .filter(|(name, _)| only.is_none_or(|o| name.contains(o)))
        .collect();
    selected
        .par_iter()
        .map(|(name, f)| match f() {
            Ok((pass, detail)) => CheckResult { name, pass, detail },
            Err(e) => CheckResult {
                name,
                pass: false,
                detail: format!("error: {e}"),
            },
        })
        .collect()
}

fn example_matrix() -> IntMatrix {
    IntMatrix::from_i64(&[&[1, 1, 1, 1, 1], &[0, 0, 1, 2, 3], &[1, 0, 0, 0, 0]])
}

fn show(v: &[BigInt]) -> String {
    v.iter().join(",")
}

fn segment_points() -> Result<(bool, String)> {
    let p = LatticePolytope::new(&[ints(&[0]), ints(&[2])], LatticeMode::Integer)?;
    let pts = p.lattice_points()?;
    Ok((pts == [ints(&[0]), ints(&[1]), ints(&[2])], format!("{} points", pts.len())))
}

const PENTAGONAL: [i64; 5] = [1, 1, 1, -1, -1];

fn pentagonal_facet(g: &Graph) -> FacetIneq {
    let normal = g
        .edges()
        .iter()
        .map(|&(i, j)| BigInt::from(-PENTAGONAL[i] * PENTAGONAL[j]))
        .collect();
    FacetIneq::new(normal, int(0))
}

fn pentagonal_values() -> Result<(bool, String)> {
    let k5 = Graph::complete(5);
    let value = |s: &[usize]| -> Result<BigInt> {
        let d = cut_semimetric(&k5, s)?.coords;
        Ok(k5
            .edges()
            .iter()
            .zip(&d)
            .map(|(&(i, j), x)| BigInt::from(PENTAGONAL[i] * PENTAGONAL[j]) * x)
            .sum())
    };
    let (a, b) = (value(&[0, 1, 2])?, value(&[0, 1])?);
    Ok((a == int(-6) && b == int(-2), format!("{a}, {b}")))
}

fn pentagonal_levels() -> Result<(bool, String)> {
    let k5 = Graph::complete(5);
    let p = cut_polytope(&k5)?;
    let f = pentagonal_facet(&k5);
    let is_facet = p.facet_index(&f).is_some();
    let prof = facet_levels(&p, &f)?;
    let ok = is_facet && prof.levels.contains(&int(2)) && prof.levels.contains(&int(6));
    Ok((ok, format!("facet {is_facet}, levels {}", show(&prof.levels))))
}

fn k5_not_compressed() -> Result<(bool, String)> {
    let cert = is_compressed(&cut_polytope(&Graph::complete(5))?)?;
    let detail = match &cert.violation {
        Some(v) => format!("violating levels {} and {}", v.low, v.high),
        None => "no violation".into(),
    };
    Ok((!cert.verdict, detail))
}

fn k5_symmetry() -> Result<(bool, String)> {
    let r = transitive_symmetry_shortcut(&cut_polytope(&Graph::complete(5))?)?;
    Ok((r.verdict == SymmetryVerdict::NotCompressed, format!("{:?}", r.verdict)))
}

fn b3_symmetry() -> Result<(bool, String)> {
    let pts: Vec<Vec<BigInt>> = (0..3usize)
        .permutations(3)
        .map(|perm| {
            let mut m = vec![int(0); 9];
            for (r, &c) in perm.iter().enumerate() {
                m[3 * r + c] = int(1);
            }
            m
        })
        .collect();
    let r = transitive_symmetry_shortcut(&LatticePolytope::new(&pts, LatticeMode::Integer)?)?;
    Ok((r.verdict == SymmetryVerdict::Compressed, format!("{:?}", r.verdict)))
}

fn classify(g: Graph, expected: bool) -> Result<(bool, String)> {
    let c = cut_classify(&g);
    Ok((
        c.compressed == expected,
        format!(
            "compressed {}, k5 minor {}, longest induced cycle {}",
            c.compressed, c.k5_minor, c.max_induced_cycle
        ),
    ))
}

fn cycle_levels(c: usize, expected: &[i64]) -> Result<(bool, String)> {
    let r = cycle_facet_levels(c, &[0])?;
    Ok((
        r.levels == ints(expected) && r.levels.len() == r.stated_count,
        format!("levels {}", show(&r.levels)),
    ))
}

fn margin(delta: &SimplicialComplex, d: &[usize], expected: Verdict) -> Result<(bool, String)> {
    let c = margins_compressed(delta, d)?;
    Ok((c.verdict == expected, format!("{} via {}", c.verdict.as_str(), c.rule)))
}

fn example_weight() -> Result<(bool, String)> {
    let w = find_weight(&example_matrix())?;
    Ok((w == [rat(1, 1), rat(0, 1), rat(0, 1)], w.iter().join(",")))
}

fn example_sweep() -> Result<(bool, String)> {
    let r = lp_ip_sweep(&example_matrix(), 5, Some(&[0]))?;
    Ok((r.holds(), format!("{} right-hand sides, {} gaps", r.rhs_checked, r.gaps.len())))
}

fn example_pull_first() -> Result<(bool, String)> {
    let a = example_matrix();
    let found = (0..a.cols())
        .map(|i| pull_first_unimodular(&a, i))
        .collect::<Result<Vec<_>>>()?;
    Ok((found.iter().all(|f| !f), format!("unimodular with cell first: {}", found.iter().join(","))))
}

fn decomposable_sweep() -> Result<(bool, String)> {
    let path = SimplicialComplex::new(3, &[vec![0, 1], vec![1, 2]])?;
    let m = marginal_matrix(&path, &[2, 2, 2])?;
    let r = lp_ip_sweep(&m.a, 4, None)?;
    Ok((r.holds(), format!("{} right-hand sides, {} gaps", r.rhs_checked, r.gaps.len())))
}
