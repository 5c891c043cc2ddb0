//! Facet-level certificates for compressed polytopes and the embedding of a
//! compressed polytope as a section of the unit cube.

use crate::error::{Error, Result};
use crate::exact::ring::det_of;
use crate::exact::{dot, solve_rational, AffineLattice, Rational};
use crate::polytope::{FacetIneq, LatticeMode, LatticePolytope};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::collections::BTreeSet;

/// Nonzero levels of one facet over the lattice points of a polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetLevelProfile {
    pub facet: FacetIneq,
    /// Distinct positive values of `normal · x - offset`, ascending.
    pub levels: Vec<BigInt>,
    /// First lattice point (in sorted order) attaining each level.
    pub witnesses: Vec<Vec<BigInt>>,
    /// Spacing between consecutive lattice hyperplanes parallel to the facet.
    pub lattice_step: BigInt,
}

impl FacetLevelProfile {
    /// Levels counted in lattice hyperplanes (`level / lattice_step`).
    pub fn lattice_levels(&self) -> Vec<BigInt> {
        self.levels.iter().map(|l| l / &self.lattice_step).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub facet_index: usize,
    pub facet: FacetIneq,
    pub high: BigInt,
    pub low: BigInt,
    pub high_witness: Vec<BigInt>,
    pub low_witness: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompressedCertificate {
    pub verdict: bool,
    pub profiles: Vec<FacetLevelProfile>,
    pub violation: Option<Violation>,
}

fn step_of(p: &LatticePolytope, f: &FacetIneq) -> Result<BigInt> {
    let g = p
        .point_lattice()?
        .basis()
        .iter()
        .fold(BigInt::zero(), |g, b| g.gcd(&dot(&f.normal, b)));
    Ok(if g.is_zero() { BigInt::one() } else { g })
}

/// Distinct nonzero values of `f` over the lattice points of `p`.
pub fn facet_levels(p: &LatticePolytope, f: &FacetIneq) -> Result<FacetLevelProfile> {
    let mut seen: BTreeMap<BigInt, Vec<BigInt>> = BTreeMap::new();
    for x in p.lattice_points()? {
        let s = f.slack(x);
        if s.is_negative() {
            return Err(Error::InvalidFacet);
        }
        if !s.is_zero() {
            seen.entry(s).or_insert_with(|| x.clone());
        }
    }
    let (levels, witnesses) = seen.into_iter().unzip();
    Ok(FacetLevelProfile {
        facet: f.clone(),
        levels,
        witnesses,
        lattice_step: step_of(p, f)?,
    })
}

/// Certify or refute that every facet sees at most one nonzero level.
pub fn is_compressed(p: &LatticePolytope) -> Result<CompressedCertificate> {
    p.lattice_points()?;
    let profiles = p
        .facets()
        .par_iter()
        .map(|f| facet_levels(p, f))
        .collect::<Result<Vec<_>>>()?;
    let violation = profiles
        .iter()
        .enumerate()
        .find(|(_, pr)| pr.levels.len() >= 2)
        .map(|(i, pr)| {
            let last = pr.levels.len() - 1;
            Violation {
                facet_index: i,
                facet: pr.facet.clone(),
                high: pr.levels[last].clone(),
                low: pr.levels[0].clone(),
                high_witness: pr.witnesses[last].clone(),
                low_witness: pr.witnesses[0].clone(),
            }
        });
    Ok(CompressedCertificate {
        verdict: violation.is_none(),
        profiles,
        violation,
    })
}

/// `x ↦ ((aᵢ·x − bᵢ)/mᵢ)ᵢ` over the facets of a compressed polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeEmbedding {
    pub facets: Vec<FacetIneq>,
    pub scales: Vec<BigInt>,
    /// Images of the lattice points, in lattice point order.
    pub image: Vec<Vec<BigInt>>,
}

impl CubeEmbedding {
    /// Image of an ambient point (rational in general).
    pub fn apply(&self, x: &[BigInt]) -> Vec<Rational> {
        self.facets
            .iter()
            .zip(&self.scales)
            .map(|(f, m)| Rational::new(f.slack(x), m.clone()))
            .collect()
    }
}

pub fn cube_embedding(p: &LatticePolytope) -> Result<CubeEmbedding> {
    let cert = is_compressed(p)?;
    if !cert.verdict {
        return Err(Error::NotCompressed);
    }
    let scales: Vec<BigInt> = cert
        .profiles
        .iter()
        .map(|pr| pr.levels.first().cloned().unwrap_or_else(BigInt::one))
        .collect();
    let facets: Vec<FacetIneq> = cert.profiles.into_iter().map(|pr| pr.facet).collect();
    let image = p
        .lattice_points()?
        .iter()
        .map(|x| {
            facets
                .iter()
                .zip(&scales)
                .map(|(f, m)| f.slack(x) / m)
                .collect()
        })
        .collect();
    Ok(CubeEmbedding {
        facets,
        scales,
        image,
    })
}

/// Whether `emb` is injective on the lattice points of `p` and maps the
/// lattice of `p` isomorphically onto the lattice generated by the image.
pub fn embedding_is_lattice_isomorphism(p: &LatticePolytope, emb: &CubeEmbedding) -> Result<bool> {
    let distinct: BTreeSet<&Vec<BigInt>> = emb.image.iter().collect();
    if distinct.len() != emb.image.len() {
        return Ok(false);
    }
    if emb.image.len() == 1 {
        return Ok(true);
    }
    let target = AffineLattice::generated_by(&emb.image)?;
    if target.dim() != p.dim() {
        return Ok(false);
    }
    let l = p.point_lattice()?;
    let base = emb.apply(l.anchor());
    let mut rows = Vec::with_capacity(l.dim());
    for b in l.basis() {
        let moved: Vec<BigInt> = l.anchor().iter().zip(b).map(|(a, d)| a + d).collect();
        let img = emb.apply(&moved);
        let diff: Vec<Rational> = img.iter().zip(&base).map(|(u, v)| u - v).collect();
        if diff.iter().any(|x| !x.is_integer()) {
            return Ok(false);
        }
        let diff: Vec<BigInt> = diff.into_iter().map(|x| x.to_integer()).collect();
        let point: Vec<BigInt> = target.anchor().iter().zip(&diff).map(|(a, d)| a + d).collect();
        match target.coords(&point) {
            Some(c) => rows.push(c),
            None => return Ok(false),
        }
    }
    Ok(det_of(&rows).abs().is_one())
}

/// Whether `conv(q)` equals the unit cube intersected with the affine hull
/// of `q`. `q` must consist of 0/1 points.
pub fn verify_cube_section(q: &[Vec<BigInt>]) -> Result<bool> {
    let first = q.first().ok_or(Error::Empty("point set"))?;
    let n = first.len();
    if q.iter().flatten().any(|x| !(x.is_zero() || x.is_one())) {
        return Err(Error::InvalidInput("points must be 0/1 vectors".into()));
    }
    let pts: BTreeSet<Vec<BigInt>> = q.iter().cloned().collect();
    let hull = AffineLattice::integer(n).restrict_to_hull(q)?;
    if zero_one_points_of_hull(&hull)? != pts {
        return Ok(false);
    }
    let poly = LatticePolytope::new(q, LatticeMode::Integer)?;
    let list: Vec<&Vec<BigInt>> = pts.iter().collect();
    for f in poly.facets() {
        let tight: BTreeSet<usize> = (0..list.len()).filter(|&j| f.is_tight(list[j])).collect();
        let cut_by_coordinate = (0..n).any(|i| {
            [0, 1].iter().any(|&v| {
                let face: BTreeSet<usize> = (0..list.len())
                    .filter(|&j| list[j][i] == BigInt::from(v))
                    .collect();
                face == tight
            })
        });
        if !cut_by_coordinate {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All 0/1 points of the affine hull. Points of the hull are affine in the
/// values of the pivot coordinates, so fix those one at a time and prune as
/// soon as some coordinate can no longer reach 0 or 1.
fn zero_one_points_of_hull(hull: &AffineLattice) -> Result<BTreeSet<Vec<BigInt>>> {
    let pivots = hull.pivots();
    let k = pivots.len();
    let n = hull.ambient_dim();
    let t: Vec<Vec<Rational>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| Rational::from_integer(hull.basis()[j][pivots[i]].clone()))
                .collect()
        })
        .collect();
    let to_point = |coef: &[Rational]| -> Vec<Rational> {
        (0..n)
            .map(|r| {
                coef.iter()
                    .zip(hull.basis())
                    .map(|(c, b)| c * Rational::from_integer(b[r].clone()))
                    .sum()
            })
            .collect()
    };
    // x = base + Σ bit_i · dirs[i]
    let anchor_piv: Vec<Rational> = pivots
        .iter()
        .map(|&p| -Rational::from_integer(hull.anchor()[p].clone()))
        .collect();
    let shift = to_point(&solve_rational(&t, &anchor_piv).ok_or(Error::DegenerateSimplex)?);
    let base: Vec<Rational> = hull
        .anchor()
        .iter()
        .zip(&shift)
        .map(|(a, s)| Rational::from_integer(a.clone()) + s)
        .collect();
    let mut dirs = Vec::with_capacity(k);
    for i in 0..k {
        let mut e = vec![Rational::zero(); k];
        e[i] = Rational::one();
        dirs.push(to_point(&solve_rational(&t, &e).ok_or(Error::DegenerateSimplex)?));
    }
    // Common denominator, then work with machine integers.
    let den = base
        .iter()
        .chain(dirs.iter().flatten())
        .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let scale = |x: &Rational| -> Result<i128> {
        (x * Rational::from_integer(den.clone()))
            .to_integer()
            .to_i128()
            .ok_or_else(|| Error::InvalidInput("affine hull too large for 0/1 enumeration".into()))
    };
    let base = base.iter().map(scale).collect::<Result<Vec<_>>>()?;
    let dirs = dirs
        .iter()
        .map(|d| d.iter().map(scale).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let one = den.to_i128().ok_or_else(|| Error::InvalidInput("denominator too large".into()))?;
    // Range still reachable by each coordinate from depth i on.
    let mut reach = vec![vec![(0i128, 0i128); n]; k + 1];
    for i in (0..k).rev() {
        for r in 0..n {
            let (lo, hi) = reach[i + 1][r];
            let d = dirs[i][r];
            reach[i][r] = (lo + d.min(0), hi + d.max(0));
        }
    }
    let mut out = BTreeSet::new();
    let mut cur = base;
    walk(0, &mut cur, &dirs, &reach, one, &mut out);
    Ok(out)
}

fn walk(
    i: usize,
    cur: &mut [i128],
    dirs: &[Vec<i128>],
    reach: &[Vec<(i128, i128)>],
    one: i128,
    out: &mut BTreeSet<Vec<BigInt>>,
) {
    let feasible = cur.iter().zip(&reach[i]).all(|(&c, &(lo, hi))| {
        (c + lo <= 0 && 0 <= c + hi) || (c + lo <= one && one <= c + hi)
    });
    if !feasible {
        return;
    }
    if i == dirs.len() {
        if cur.iter().all(|&c| c == 0 || c == one) {
            out.insert(cur.iter().map(|&c| BigInt::from(u8::from(c == one))).collect());
        }
        return;
    }
    walk(i + 1, cur, dirs, reach, one, out);
    for (c, d) in cur.iter_mut().zip(&dirs[i]) {
        *c += d;
    }
    walk(i + 1, cur, dirs, reach, one, out);
    for (c, d) in cur.iter_mut().zip(&dirs[i]) {
        *c -= d;
    }
}

/// Whether every lattice point of `p` is a vertex.
pub fn lattice_points_are_vertices(p: &LatticePolytope) -> Result<bool> {
    let verts: BTreeSet<Vec<BigInt>> = p.vertices().into_iter().collect();
    Ok(p.lattice_points()?.iter().all(|x| verts.contains(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ints};

    fn pts(list: &[&[i64]]) -> Vec<Vec<BigInt>> {
        list.iter().map(|p| ints(p)).collect()
    }

    fn birkhoff3() -> Vec<Vec<BigInt>> {
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        perms
            .iter()
            .map(|s| {
                let mut v = vec![0i64; 9];
                for (r, &c) in s.iter().enumerate() {
                    v[3 * r + c] = 1;
                }
                ints(&v)
            })
            .collect()
    }

    #[test]
    fn segment_levels() {
        let seg = LatticePolytope::new(&pts(&[&[0], &[2]]), LatticeMode::Integer).unwrap();
        let f = FacetIneq::new(ints(&[1]), int(0));
        let pr = facet_levels(&seg, &f).unwrap();
        assert_eq!(pr.levels, ints(&[1, 2]));
        let cert = is_compressed(&seg).unwrap();
        assert!(!cert.verdict);
        let v = cert.violation.unwrap();
        assert_eq!((v.high, v.low), (int(2), int(1)));
        assert_eq!(v.facet, FacetIneq::new(ints(&[-1]), int(-2)));
        assert_eq!(cube_embedding(&seg).unwrap_err(), Error::NotCompressed);
    }

    #[test]
    fn cube_is_compressed() {
        let mut c = Vec::new();
        for i in 0..8i64 {
            c.push(ints(&[i & 1, (i >> 1) & 1, (i >> 2) & 1]));
        }
        let p = LatticePolytope::new(&c, LatticeMode::Integer).unwrap();
        assert!(is_compressed(&p).unwrap().verdict);
    }

    #[test]
    fn birkhoff_three() {
        let p = LatticePolytope::new(&birkhoff3(), LatticeMode::Generated).unwrap();
        let f = p
            .facets()
            .iter()
            .find(|f| f.is_tight(&birkhoff3()[1]) && !f.is_tight(&birkhoff3()[0]))
            .unwrap()
            .clone();
        assert_eq!(facet_levels(&p, &f).unwrap().levels, ints(&[1]));
        let cert = is_compressed(&p).unwrap();
        assert!(cert.verdict);
        assert!(cert.profiles.iter().all(|pr| pr.levels.len() == 1));
        let emb = cube_embedding(&p).unwrap();
        assert_eq!(emb.image.len(), 6);
        assert!(emb.image.iter().flatten().all(|x| x.is_zero() || x.is_one()));
        assert!(verify_cube_section(&emb.image).unwrap());
        assert!(embedding_is_lattice_isomorphism(&p, &emb).unwrap());
    }

    #[test]
    fn dilated_triangle_in_its_own_lattice() {
        let p = LatticePolytope::new(&pts(&[&[0, 0], &[2, 0], &[0, 2]]), LatticeMode::Generated).unwrap();
        let cert = is_compressed(&p).unwrap();
        assert!(cert.verdict);
        assert!(cert.profiles.iter().all(|pr| pr.levels == ints(&[2]) || pr.lattice_levels() == ints(&[1])));
        let emb = cube_embedding(&p).unwrap();
        assert!(emb.image.iter().flatten().all(|x| x.is_zero() || x.is_one()));
        assert!(verify_cube_section(&emb.image).unwrap());
        assert!(embedding_is_lattice_isomorphism(&p, &emb).unwrap());
    }

    #[test]
    fn empty_tetrahedron_uses_lattice_of_its_points() {
        let p = LatticePolytope::new(&pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]), LatticeMode::Integer)
            .unwrap();
        assert_eq!(p.lattice_points().unwrap().len(), 4);
        assert_eq!(p.point_lattice().unwrap().index_in_saturation(), int(2));
        assert!(is_compressed(&p).unwrap().verdict);
        let emb = cube_embedding(&p).unwrap();
        assert!(embedding_is_lattice_isomorphism(&p, &emb).unwrap());
    }

    #[test]
    fn cube_sections() {
        assert!(verify_cube_section(&pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap());
        assert!(verify_cube_section(&pts(&[&[0, 0], &[1, 1]])).unwrap());
        // missing corner: the hull meets the square in one more 0/1 point
        assert!(!verify_cube_section(&pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap());
    }
}
