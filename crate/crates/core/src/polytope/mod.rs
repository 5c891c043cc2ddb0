//! Lattice polytopes given by generating point sets.
//!
//! Geometry runs in lattice coordinates; facets are reported in ambient
//! coordinates with primitive integer normals.

pub mod hull;
mod points;

use crate::error::{Error, Result};
use crate::exact::{dot, primitive_from_rationals, solve_rational, AffineLattice, Rational};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeSet;
use std::sync::OnceLock;

/// Which lattice the polytope is measured against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeMode {
    /// Smallest affine lattice containing the generators.
    Generated,
    /// `Z^d` intersected with the affine hull.
    Integer,
    /// The given lattice intersected with the affine hull.
    Within(AffineLattice),
}

/// Inequality `normal · x >= offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FacetIneq {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
}

impl FacetIneq {
    pub fn new(normal: Vec<BigInt>, offset: BigInt) -> Self {
        FacetIneq { normal, offset }
    }

    /// `normal · x - offset`.
    pub fn slack(&self, x: &[BigInt]) -> BigInt {
        dot(&self.normal, x) - &self.offset
    }

    pub fn is_tight(&self, x: &[BigInt]) -> bool {
        self.slack(x).is_zero()
    }
}

/// A facet inequality in lattice coordinates of the owning polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeFacet {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
}

impl LatticeFacet {
    pub fn slack(&self, c: &[BigInt]) -> BigInt {
        dot(&self.normal, c) - &self.offset
    }
}

/// Facets plus the equations of the affine hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullDescription {
    pub facets: Vec<FacetIneq>,
    pub equations: Vec<(Vec<BigInt>, BigInt)>,
}

#[derive(Debug)]
pub struct LatticePolytope {
    generators: Vec<Vec<BigInt>>,
    lattice: AffineLattice,
    coords: Vec<Vec<BigInt>>,
    facets: Vec<FacetIneq>,
    lattice_facets: Vec<LatticeFacet>,
    lattice_points: OnceLock<Result<Vec<Vec<BigInt>>>>,
    point_lattice: OnceLock<Result<AffineLattice>>,
    generated: bool,
}

/// Box-scan size above which lattice-point enumeration refuses to run.
pub const LATTICE_POINT_SCAN_CAP: usize = 50_000_000;

impl LatticePolytope {
    /// Polytope spanned by `points` (duplicates dropped, first occurrence kept).
    pub fn new(points: &[Vec<BigInt>], mode: LatticeMode) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let generators: Vec<Vec<BigInt>> = points
            .iter()
            .filter(|p| seen.insert((*p).clone()))
            .cloned()
            .collect();
        let generated = matches!(mode, LatticeMode::Generated);
        let lattice = match mode {
            LatticeMode::Generated => AffineLattice::generated_by(&generators)?,
            LatticeMode::Integer => {
                let d = generators.first().ok_or(Error::Empty("point set"))?.len();
                AffineLattice::integer(d).restrict_to_hull(&generators)?
            }
            LatticeMode::Within(l) => l.restrict_to_hull(&generators)?,
        };
        let mut p = Self::with_lattice(generators, lattice)?;
        p.generated = generated;
        Ok(p)
    }

    /// `lattice` must already be restricted to the affine hull of `generators`.
    fn with_lattice(generators: Vec<Vec<BigInt>>, lattice: AffineLattice) -> Result<Self> {
        let coords = generators
            .iter()
            .map(|p| lattice.coords(p).ok_or(Error::NotInLattice))
            .collect::<Result<Vec<_>>>()?;
        let raw = hull::facets(&coords, lattice.dim());
        let mut pairs: Vec<(FacetIneq, LatticeFacet)> = raw
            .into_iter()
            .map(|(normal, offset)| {
                let lf = LatticeFacet { normal, offset };
                (ambient_facet(&lattice, &generators, &coords, &lf), lf)
            })
            .collect();
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let (facets, lattice_facets) = pairs.into_iter().unzip();
        Ok(LatticePolytope {
            generators,
            lattice,
            coords,
            facets,
            lattice_facets,
            lattice_points: OnceLock::new(),
            point_lattice: OnceLock::new(),
            generated: false,
        })
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    pub fn lattice(&self) -> &AffineLattice {
        &self.lattice
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.lattice.ambient_dim()
    }

    /// Generators in lattice coordinates.
    pub fn generator_coords(&self) -> &[Vec<BigInt>] {
        &self.coords
    }

    /// Facets sorted lexicographically by (normal, offset).
    pub fn facets(&self) -> &[FacetIneq] {
        &self.facets
    }

    /// The same facets in lattice coordinates, aligned with [`Self::facets`].
    pub fn lattice_facets(&self) -> &[LatticeFacet] {
        &self.lattice_facets
    }

    pub fn hull(&self) -> HullDescription {
        HullDescription {
            facets: self.facets.clone(),
            equations: self.lattice.hull_equations(),
        }
    }

    pub fn facet_index(&self, f: &FacetIneq) -> Option<usize> {
        self.facets.binary_search(f).ok()
    }

    /// Whether `x` lies in the polytope (over the rationals).
    pub fn contains(&self, x: &[BigInt]) -> bool {
        let Some(rc) = self.lattice.rational_coords(x) else {
            return false;
        };
        self.lattice_facets.iter().all(|f| {
            let v: Rational = f
                .normal
                .iter()
                .zip(&rc)
                .map(|(a, c)| Rational::from_integer(a.clone()) * c)
                .sum();
            v >= Rational::from_integer(f.offset.clone())
        })
    }

    /// All points of the lattice inside the polytope, sorted lexicographically.
    pub fn lattice_points(&self) -> Result<&[Vec<BigInt>]> {
        self.lattice_points
            .get_or_init(|| points::enumerate(self, LATTICE_POINT_SCAN_CAP))
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(Clone::clone)
    }

    /// Affine lattice generated by the lattice points. Volumes and
    /// unimodularity are measured in this lattice; it can be coarser than
    /// [`Self::lattice`] when the lattice points do not generate it.
    pub fn point_lattice(&self) -> Result<&AffineLattice> {
        self.point_lattice
            .get_or_init(|| {
                if self.generated {
                    Ok(self.lattice.clone())
                } else {
                    AffineLattice::generated_by(self.lattice_points()?)
                }
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Generators that are vertices, in generator order.
    pub fn vertices(&self) -> Vec<Vec<BigInt>> {
        if self.dim() == 0 {
            return self.generators[..1].to_vec();
        }
        let k = self.dim();
        self.coords
            .iter()
            .zip(&self.generators)
            .filter(|(c, _)| {
                let tight: Vec<usize> = self
                    .lattice_facets
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| f.slack(c).is_zero())
                    .map(|(i, _)| i)
                    .collect();
                let rows: Vec<Vec<BigInt>> =
                    tight.iter().map(|&i| self.lattice_facets[i].normal.clone()).collect();
                tight.len() >= k && crate::exact::ring::rank_of(&rows) == k
            })
            .map(|(_, g)| g.clone())
            .collect()
    }

    /// The face where every inequality in `tight` holds with equality, in
    /// the induced lattice. `None` when the face is empty.
    pub fn face_of(&self, tight: &[FacetIneq]) -> Result<Option<LatticePolytope>> {
        for f in tight {
            if self.facet_index(f).is_none() {
                return Err(Error::InvalidFacet);
            }
        }
        let pts: Vec<Vec<BigInt>> = self
            .lattice_points()?
            .iter()
            .filter(|x| tight.iter().all(|f| f.is_tight(x)))
            .cloned()
            .collect();
        if pts.is_empty() {
            return Ok(None);
        }
        let lattice = self.lattice.restrict_to_hull(&pts)?;
        Ok(Some(LatticePolytope::with_lattice(pts, lattice)?))
    }
}

/// Facets and hull equations of `conv(points)` in `Z^d`.
pub fn facet_enumeration(points: &[Vec<BigInt>]) -> Result<HullDescription> {
    Ok(LatticePolytope::new(points, LatticeMode::Integer)?.hull())
}

/// Lift a lattice-coordinate facet to an ambient primitive normal supported
/// on the pivot coordinates of the lattice basis.
fn ambient_facet(
    lattice: &AffineLattice,
    generators: &[Vec<BigInt>],
    coords: &[Vec<BigInt>],
    f: &LatticeFacet,
) -> FacetIneq {
    let pivots = lattice.pivots();
    let k = pivots.len();
    // T[i][j] = basis_j[pivot_i]; solve T^T u = a.
    let tt: Vec<Vec<Rational>> = (0..k)
        .map(|j| {
            (0..k)
                .map(|i| Rational::from_integer(lattice.basis()[j][pivots[i]].clone()))
                .collect()
        })
        .collect();
    let rhs: Vec<Rational> = f.normal.iter().map(|x| Rational::from_integer(x.clone())).collect();
    let u = solve_rational(&tt, &rhs).expect("pivot block is invertible");
    let u = primitive_from_rationals(&u);
    let mut normal = vec![BigInt::zero(); lattice.ambient_dim()];
    for (p, v) in pivots.iter().zip(u) {
        normal[*p] = v;
    }
    let tight = coords
        .iter()
        .position(|c| f.slack(c).is_zero())
        .expect("facet is tight on a generator");
    let offset = dot(&normal, &generators[tight]);
    FacetIneq { normal, offset }
}
