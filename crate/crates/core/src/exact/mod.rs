//! Exact integer and rational linear algebra.
//!
//! Everything here is arbitrary precision. Scalars are [`BigInt`] and
//! [`Rational`] (a reduced `BigRational` with positive denominator);
//! matrices are dense [`IntMatrix`] values.

mod lattice;
pub mod ring;

pub use lattice::{affine_lattice_of, AffineLattice};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Exact rational number, always stored in lowest terms.
pub type Rational = BigRational;

pub fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sub_vec(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// gcd of all entries (zero for the zero vector).
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divide by the content so the entries have gcd 1.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = content(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Clear denominators of a rational vector and make it primitive.
pub fn primitive_from_rationals(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let scaled: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    primitive(&scaled)
}

/// Render a rational as `p/q` (or `p` when integral).
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| Error::InvalidInput(format!("bad rational {s:?}: {e}")))
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Build from rows; `cols` is needed when there are no rows.
    pub fn from_rows_with_cols(rows: Vec<Vec<BigInt>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(IntMatrix {
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| ints(r)).collect()).expect("rectangular literal")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<BigInt>], rows: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    got: c.len(),
                });
            }
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let s: BigInt = (0..self.cols).map(|k| self.get(r, k) * other.get(k, c)).sum();
                out.set(r, c, s);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    pub fn is_zero_row(&self, r: usize) -> bool {
        self.row(r).iter().all(Zero::is_zero)
    }

    pub fn rank(&self) -> usize {
        ring::rank_of(&self.to_rows())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// row[target] -= factor * row[source]
    fn axpy_row(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let delta = factor * self.get(source, c);
            let cell = &mut self.data[target * self.cols + c];
            *cell -= delta;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let cell = &mut self.data[r * self.cols + c];
            *cell = -std::mem::take(cell);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Exact determinant by fraction-free elimination.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if m.rows != m.cols {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    Ok(ring::det_of(&m.to_rows()))
}

/// Row Hermite normal form: returns `(H, U)` with `U * M = H`, `|det U| = 1`,
/// `H` in row echelon form with positive pivots and entries above each pivot
/// reduced into `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        loop {
            let pivot = (r..m.rows)
                .filter(|&i| !h.get(i, c).is_zero())
                .min_by(|&a, &b| h.get(a, c).abs().cmp(&h.get(b, c).abs()).then(a.cmp(&b)));
            let Some(p) = pivot else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut clean = true;
            for i in r + 1..m.rows {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = h.get(i, c).div_floor(h.get(r, c));
                h.axpy_row(i, r, &q);
                u.axpy_row(i, r, &q);
                if !h.get(i, c).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = h.get(i, c).div_floor(h.get(r, c));
            h.axpy_row(i, r, &q);
            u.axpy_row(i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// HNF basis of the lattice spanned by `vectors` (nonzero HNF rows).
pub fn lattice_basis(vectors: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = IntMatrix::from_rows_with_cols(vectors.to_vec(), dim).expect("consistent dimension");
    let (h, _) = hermite_normal_form(&m);
    (0..h.rows())
        .filter(|&r| !h.is_zero_row(r))
        .map(|r| h.row(r).to_vec())
        .collect()
}

/// Basis (in HNF) of `{ y integer : A y = 0 }`.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let n = a.cols();
    if n == 0 {
        return Vec::new();
    }
    let (h, u) = hermite_normal_form(&a.transpose());
    let raw: Vec<Vec<BigInt>> = (0..h.rows())
        .filter(|&r| h.is_zero_row(r))
        .map(|r| u.row(r).to_vec())
        .collect();
    lattice_basis(&raw, n)
}

/// Solve `M x = rhs` over the rationals; returns one solution (free
/// variables set to zero) or `None` when inconsistent.
pub fn solve_rational(m: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rational>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let inv = aug[r][c].recip();
        for x in aug[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for k in c..=cols {
                    let delta = &f * &aug[r][k];
                    aug[i][k] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if aug[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][cols].clone();
    }
    Some(x)
}

pub fn to_rationals(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_hnf(m: &IntMatrix) {
        let (h, u) = hermite_normal_form(m);
        assert_eq!(u.mul(m).unwrap(), h, "U*M must equal H");
        assert_eq!(determinant(&u).unwrap().abs(), BigInt::one());
        // echelon with positive pivots and reduced entries above
        let mut last_pivot: Option<usize> = None;
        for r in 0..h.rows() {
            match (0..h.cols()).find(|&c| !h.get(r, c).is_zero()) {
                None => {
                    assert!((r..h.rows()).all(|k| h.is_zero_row(k)));
                    break;
                }
                Some(c) => {
                    if let Some(p) = last_pivot {
                        assert!(c > p);
                    }
                    assert!(h.get(r, c).is_positive());
                    for above in 0..r {
                        assert!(!h.get(above, c).is_negative());
                        assert!(h.get(above, c) < h.get(r, c));
                    }
                    last_pivot = Some(c);
                }
            }
        }
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&IntMatrix::identity(3)).unwrap(), int(1));
        assert_eq!(determinant(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]])).unwrap(), int(6));
        assert_eq!(determinant(&IntMatrix::from_i64(&[&[2]])).unwrap(), int(2));
        assert_eq!(determinant(&IntMatrix::zeros(0, 0)).unwrap(), int(1));
    }

    #[test]
    fn determinant_rejects_non_square() {
        let err = determinant(&IntMatrix::from_i64(&[&[1, 2]])).unwrap_err();
        assert_eq!(err, Error::NotSquare { rows: 1, cols: 2 });
    }

    #[test]
    fn hnf_examples() {
        let (h, _) = hermite_normal_form(&IntMatrix::identity(2));
        assert_eq!(h, IntMatrix::identity(2));

        let m = IntMatrix::from_i64(&[&[2, 4], &[0, 2]]);
        let (h, _) = hermite_normal_form(&m);
        assert_eq!(h.get(0, 0), &int(2));
        assert_eq!(h.get(1, 1), &int(2));
        assert_eq!(h.get(0, 1), &int(0));
        check_hnf(&m);

        let m = IntMatrix::from_i64(&[&[0], &[3]]);
        let (h, _) = hermite_normal_form(&m);
        assert_eq!(h, IntMatrix::from_i64(&[&[3], &[0]]));
        check_hnf(&m);
    }

    #[test]
    fn hnf_on_rank_deficient_and_negative_input() {
        check_hnf(&IntMatrix::from_i64(&[&[-4, 6, 2], &[2, -3, -1], &[1, 1, 1], &[0, 5, 3]]));
        check_hnf(&IntMatrix::from_i64(&[&[0, 0], &[0, 0]]));
        check_hnf(&IntMatrix::zeros(0, 3));
    }

    #[test]
    fn kernel_examples() {
        let k = integer_kernel(&IntMatrix::from_i64(&[&[1, 1, 1], &[0, 1, 2]]));
        assert_eq!(k, vec![ints(&[1, -2, 1])]);
        assert!(integer_kernel(&IntMatrix::from_i64(&[&[1, 2], &[3, 5]])).is_empty());
        assert_eq!(integer_kernel(&IntMatrix::from_i64(&[&[1, 1]])), vec![ints(&[1, -1])]);
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x + 4y = 0 has kernel generated by (2,-1), not (4,-2)
        let k = integer_kernel(&IntMatrix::from_i64(&[&[2, 4]]));
        assert_eq!(k, vec![ints(&[2, -1])]);
    }

    #[test]
    fn rational_solver() {
        let m = vec![
            vec![rat(1, 1), rat(1, 1)],
            vec![rat(1, 1), rat(-1, 1)],
        ];
        let x = solve_rational(&m, &[rat(3, 1), rat(1, 1)]).unwrap();
        assert_eq!(x, vec![rat(2, 1), rat(1, 1)]);
        let inconsistent = vec![vec![rat(1, 1)], vec![rat(1, 1)]];
        assert!(solve_rational(&inconsistent, &[rat(1, 1), rat(2, 1)]).is_none());
    }

    #[test]
    fn rational_formatting() {
        assert_eq!(format_rational(&rat(1, 2)), "1/2");
        assert_eq!(format_rational(&rat(-4, 2)), "-2");
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert!(parse_rational("x").is_err());
    }
}
