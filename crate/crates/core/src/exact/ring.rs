//! Integer backends for the hot loops (elimination, double description).
//!
//! Every routine generic over [`ExactInt`] returns `None` as soon as an
//! operation overflows; callers first try `i128` and rerun on `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt::Debug;

pub trait ExactInt: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn signum(&self) -> i32;
    fn add(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// Division that is known to be exact.
    fn div_exact(&self, other: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn from_big(value: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl ExactInt for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn signum(&self) -> i32 {
        i128::signum(*self) as i32
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        debug_assert!(self % other == 0);
        self.checked_div(*other)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn from_big(value: &BigInt) -> Option<Self> {
        value.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ExactInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        BigInt::from(1)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn signum(&self) -> i32 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        debug_assert!(Zero::is_zero(&(self % other)));
        Some(self / other)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn from_big(value: &BigInt) -> Option<Self> {
        Some(value.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

pub fn convert_rows<T: ExactInt>(rows: &[Vec<BigInt>]) -> Option<Vec<Vec<T>>> {
    rows.iter()
        .map(|r| r.iter().map(T::from_big).collect::<Option<Vec<T>>>())
        .collect()
}

/// Fraction-free (Bareiss) rank; destroys `rows`.
pub fn bareiss_rank<T: ExactInt>(rows: &mut [Vec<T>]) -> Option<usize> {
    let m = rows.len();
    if m == 0 {
        return Some(0);
    }
    let n = rows[0].len();
    let mut rank = 0;
    let mut prev = T::one();
    for col in 0..n {
        if rank == m {
            break;
        }
        let Some(p) = (rank..m).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for r in rank + 1..m {
            let factor = rows[r][col].clone();
            for c in col + 1..n {
                let lhs = pivot.mul(&rows[r][c])?;
                let rhs = factor.mul(&rows[rank][c])?;
                rows[r][c] = lhs.sub(&rhs)?.div_exact(&prev)?;
            }
            rows[r][col] = T::zero();
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

/// Fraction-free determinant of a square matrix; destroys `rows`.
pub fn bareiss_det<T: ExactInt>(rows: &mut [Vec<T>]) -> Option<T> {
    let n = rows.len();
    if n == 0 {
        return Some(T::one());
    }
    let mut sign = 1;
    let mut prev = T::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !rows[r][k].is_zero()) else {
            return Some(T::zero());
        };
        if p != k {
            rows.swap(k, p);
            sign = -sign;
        }
        let pivot = rows[k][k].clone();
        for r in k + 1..n {
            let factor = rows[r][k].clone();
            for c in k + 1..n {
                let lhs = pivot.mul(&rows[r][c])?;
                let rhs = factor.mul(&rows[k][c])?;
                rows[r][c] = lhs.sub(&rhs)?.div_exact(&prev)?;
            }
            rows[r][k] = T::zero();
        }
        prev = pivot;
    }
    let det = rows[n - 1][n - 1].clone();
    if sign < 0 {
        det.neg()
    } else {
        Some(det)
    }
}

/// Rank of integer rows, `i128` first with a `BigInt` rerun on overflow.
pub fn rank_of(rows: &[Vec<BigInt>]) -> usize {
    if let Some(mut small) = convert_rows::<i128>(rows) {
        if let Some(r) = bareiss_rank(&mut small) {
            return r;
        }
    }
    let mut big = rows.to_vec();
    bareiss_rank(&mut big).expect("BigInt arithmetic cannot overflow")
}

/// Determinant of a square integer matrix, `i128` first.
pub fn det_of(rows: &[Vec<BigInt>]) -> BigInt {
    if let Some(mut small) = convert_rows::<i128>(rows) {
        if let Some(d) = bareiss_det(&mut small) {
            return BigInt::from(d);
        }
    }
    let mut big = rows.to_vec();
    bareiss_det(&mut big).expect("BigInt arithmetic cannot overflow")
}

pub fn big_abs(x: &BigInt) -> BigInt {
    x.abs()
}
