use super::{dot, integer_kernel, lattice_basis, sub_vec, to_rationals, IntMatrix, Rational};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// An affine lattice `anchor + Z{basis}` in `Z^ambient_dim`.
///
/// The basis is kept in row Hermite normal form, so two lattices with the
/// same difference lattice have identical bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineLattice {
    anchor: Vec<BigInt>,
    basis: Vec<Vec<BigInt>>,
    ambient_dim: usize,
}

impl AffineLattice {
    /// The smallest affine lattice containing `points`: anchored at the first
    /// point, spanned by the differences.
    pub fn generated_by(points: &[Vec<BigInt>]) -> Result<Self> {
        let first = points.first().ok_or(Error::Empty("point set"))?;
        let d = first.len();
        check_dims(points, d)?;
        let diffs: Vec<Vec<BigInt>> = points[1..].iter().map(|p| sub_vec(p, first)).collect();
        Ok(AffineLattice {
            anchor: first.clone(),
            basis: lattice_basis(&diffs, d),
            ambient_dim: d,
        })
    }

    /// `Z^d` itself.
    pub fn integer(d: usize) -> Self {
        AffineLattice {
            anchor: vec![BigInt::zero(); d],
            basis: IntMatrix::identity(d).to_rows(),
            ambient_dim: d,
        }
    }

    /// `self ∩ aff(points)`, anchored at the first point. Every point must
    /// lie in `self`.
    pub fn restrict_to_hull(&self, points: &[Vec<BigInt>]) -> Result<Self> {
        let first = points.first().ok_or(Error::Empty("point set"))?;
        check_dims(points, self.ambient_dim)?;
        let k = self.dim();
        let coords = points
            .iter()
            .map(|p| self.coords(p).ok_or(Error::NotInLattice))
            .collect::<Result<Vec<_>>>()?;
        let diffs: Vec<Vec<BigInt>> = coords[1..].iter().map(|c| sub_vec(c, &coords[0])).collect();
        let d = IntMatrix::from_rows_with_cols(diffs, k)?;
        let normals = integer_kernel(&d);
        let e = IntMatrix::from_rows_with_cols(normals, k)?;
        let saturated = integer_kernel(&e);
        let ambient_vectors: Vec<Vec<BigInt>> =
            saturated.iter().map(|c| self.direction(c)).collect();
        Ok(AffineLattice {
            anchor: first.clone(),
            basis: lattice_basis(&ambient_vectors, self.ambient_dim),
            ambient_dim: self.ambient_dim,
        })
    }

    pub fn anchor(&self) -> &[BigInt] {
        &self.anchor
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Leading column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|row| row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero"))
            .collect()
    }

    /// Linear combination of basis vectors.
    pub fn direction(&self, coeffs: &[BigInt]) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.ambient_dim];
        for (c, row) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, b) in v.iter_mut().zip(row) {
                *x += c * b;
            }
        }
        v
    }

    /// Ambient point with the given lattice coordinates.
    pub fn point(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let dir = self.direction(coords);
        self.anchor.iter().zip(dir).map(|(a, d)| a + d).collect()
    }

    /// Coordinates over the rationals, `None` when `x` is off the affine hull.
    pub fn rational_coords(&self, x: &[BigInt]) -> Option<Vec<Rational>> {
        if x.len() != self.ambient_dim {
            return None;
        }
        let mut residual = to_rationals(&sub_vec(x, &self.anchor));
        let pivots = self.pivots();
        let mut coords = Vec::with_capacity(self.dim());
        for (row, &p) in self.basis.iter().zip(&pivots) {
            let c = &residual[p] / Rational::from_integer(row[p].clone());
            for (r, b) in residual.iter_mut().zip(row) {
                *r -= &c * Rational::from_integer(b.clone());
            }
            coords.push(c);
        }
        residual.iter().all(Zero::is_zero).then_some(coords)
    }

    /// Integer coordinates, `None` when `x` is not a lattice point.
    pub fn coords(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let rc = self.rational_coords(x)?;
        rc.into_iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.coords(x).is_some()
    }

    /// Integer equations `e · x = e · anchor` cutting out the affine hull.
    pub fn hull_equations(&self) -> Vec<(Vec<BigInt>, BigInt)> {
        let m = IntMatrix::from_rows_with_cols(self.basis.clone(), self.ambient_dim)
            .expect("basis rows have ambient length");
        integer_kernel(&m)
            .into_iter()
            .map(|e| {
                let rhs = dot(&e, &self.anchor);
                (e, rhs)
            })
            .collect()
    }

    /// Index of this lattice inside `Z^d ∩ aff` (1 when saturated).
    pub fn index_in_saturation(&self) -> BigInt {
        if self.basis.is_empty() {
            return BigInt::one();
        }
        let sat = AffineLattice::integer(self.ambient_dim)
            .restrict_to_hull(&self.spanning_points())
            .expect("anchor and anchor+basis are integer points");
        let mut rows = Vec::new();
        for b in &self.basis {
            let c = sat.coords(&self.point_from_direction(b)).expect("sublattice");
            rows.push(c);
        }
        super::ring::det_of(&rows).magnitude().clone().into()
    }

    fn point_from_direction(&self, dir: &[BigInt]) -> Vec<BigInt> {
        self.anchor.iter().zip(dir).map(|(a, d)| a + d).collect()
    }

    fn spanning_points(&self) -> Vec<Vec<BigInt>> {
        let mut pts = vec![self.anchor.clone()];
        pts.extend(self.basis.iter().map(|b| self.point_from_direction(b)));
        pts
    }
}

/// Smallest affine lattice containing the points.
pub fn affine_lattice_of(points: &[Vec<BigInt>]) -> Result<AffineLattice> {
    AffineLattice::generated_by(points)
}

fn check_dims(points: &[Vec<BigInt>], d: usize) -> Result<()> {
    for p in points {
        if p.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: p.len(),
            });
        }
    }
    Ok(())
}
