//! Facet enumeration for full-dimensional integer point sets.
//!
//! Input points are given in lattice coordinates (`Z^k`, affinely spanning
//! `R^k`). Output inequalities read `normal · c >= offset` with a primitive
//! integer normal.

use crate::exact::ring::{convert_rows, rank_of, ExactInt};
use crate::exact::{dot, integer_kernel, primitive, IntMatrix};
use fixedbitset::FixedBitSet;
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;

/// `(normal, offset)` with `normal · c >= offset` on the polytope.
pub type RawFacet = (Vec<BigInt>, BigInt);

/// Point count at or below which the brute-force path is used.
pub const BRUTE_FORCE_MAX_POINTS: usize = 12;

pub fn facets(points: &[Vec<BigInt>], dim: usize) -> Vec<RawFacet> {
    if points.len() <= BRUTE_FORCE_MAX_POINTS {
        facets_brute_force(points, dim)
    } else {
        facets_double_description(points, dim)
    }
}

fn homogenize(p: &[BigInt]) -> Vec<BigInt> {
    let mut h = Vec::with_capacity(p.len() + 1);
    h.push(BigInt::from(1));
    h.extend_from_slice(p);
    h
}

fn sorted(mut out: Vec<RawFacet>) -> Vec<RawFacet> {
    out.sort();
    out.dedup();
    out
}

/// Every hyperplane through `dim` affinely independent points that leaves
/// all points on one side.
pub fn facets_brute_force(points: &[Vec<BigInt>], dim: usize) -> Vec<RawFacet> {
    if dim == 0 {
        return Vec::new();
    }
    let homog: Vec<Vec<BigInt>> = points.iter().map(|p| homogenize(p)).collect();
    let mut out = Vec::new();
    for subset in (0..points.len()).combinations(dim) {
        let rows: Vec<Vec<BigInt>> = subset.iter().map(|&i| homog[i].clone()).collect();
        let m = IntMatrix::from_rows_with_cols(rows, dim + 1).expect("uniform dimension");
        let kernel = integer_kernel(&m);
        if kernel.len() != 1 {
            continue;
        }
        let mut h = kernel.into_iter().next().unwrap();
        let values: Vec<BigInt> = homog.iter().map(|p| dot(&h, p)).collect();
        let has_pos = values.iter().any(|v| v > &<BigInt as Zero>::zero());
        let has_neg = values.iter().any(|v| v < &<BigInt as Zero>::zero());
        if has_pos && has_neg {
            continue;
        }
        if has_neg {
            h.iter_mut().for_each(|x| *x = -std::mem::take(x));
        }
        let h = primitive(&h);
        let offset = -h[0].clone();
        out.push((h[1..].to_vec(), offset));
    }
    sorted(out)
}

struct Ray<T> {
    v: Vec<T>,
    zero: FixedBitSet,
}

/// Double description: the facets are the extreme rays of the cone
/// `{ y : y · (1, c_i) >= 0 }`, built up one point at a time.
pub fn facets_double_description(points: &[Vec<BigInt>], dim: usize) -> Vec<RawFacet> {
    if dim == 0 {
        return Vec::new();
    }
    let homog: Vec<Vec<BigInt>> = points.iter().map(|p| homogenize(p)).collect();
    let rays = convert_rows::<i128>(&homog)
        .and_then(|small| double_description::<i128>(&homog, &small))
        .unwrap_or_else(|| {
            double_description::<BigInt>(&homog, &homog).expect("BigInt arithmetic cannot overflow")
        });
    let out = rays
        .into_iter()
        .map(|r| {
            let offset = -r[0].clone();
            (r[1..].to_vec(), offset)
        })
        .collect();
    sorted(out)
}

fn initial_basis(homog: &[Vec<BigInt>], width: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::with_capacity(width);
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(width);
    for (i, h) in homog.iter().enumerate() {
        rows.push(h.clone());
        if rank_of(&rows) == rows.len() {
            chosen.push(i);
            if chosen.len() == width {
                break;
            }
        } else {
            rows.pop();
        }
    }
    assert_eq!(chosen.len(), width, "point set must be full-dimensional");
    chosen
}

fn primitive_t<T: ExactInt>(v: &mut [T]) {
    let g = v.iter().fold(T::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g == T::one() {
        return;
    }
    for x in v.iter_mut() {
        *x = x.div_exact(&g).expect("gcd divides");
    }
}

fn dot_t<T: ExactInt>(a: &[T], b: &[T]) -> Option<T> {
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc = acc.add(&x.mul(y)?)?;
    }
    Some(acc)
}

fn double_description<T: ExactInt>(
    homog_big: &[Vec<BigInt>],
    homog: &[Vec<T>],
) -> Option<Vec<Vec<BigInt>>> {
    let n = homog.len();
    let width = homog[0].len();
    let basis = initial_basis(homog_big, width);
    let mut rays: Vec<Ray<T>> = Vec::with_capacity(width);
    for (j, &bj) in basis.iter().enumerate() {
        let others: Vec<Vec<BigInt>> = basis
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .map(|(_, &b)| homog_big[b].clone())
            .collect();
        let m = IntMatrix::from_rows_with_cols(others, width).expect("uniform dimension");
        let mut k = integer_kernel(&m);
        debug_assert_eq!(k.len(), 1);
        let mut r = k.pop().unwrap();
        if dot(&r, &homog_big[bj]) < <BigInt as Zero>::zero() {
            r.iter_mut().for_each(|x| *x = -std::mem::take(x));
        }
        let v = r.iter().map(T::from_big).collect::<Option<Vec<T>>>()?;
        let mut zero = FixedBitSet::with_capacity(n);
        for (i, &b) in basis.iter().enumerate() {
            if i != j {
                zero.insert(b);
            }
        }
        rays.push(Ray { v, zero });
    }

    let mut in_basis = vec![false; n];
    for &b in &basis {
        in_basis[b] = true;
    }
    let min_common = width.saturating_sub(2);
    for (idx, h) in homog.iter().enumerate() {
        if in_basis[idx] {
            continue;
        }
        let values = rays
            .iter()
            .map(|r| dot_t(&r.v, h))
            .collect::<Option<Vec<T>>>()?;
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].signum() > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].signum() < 0).collect();
        if neg.is_empty() {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.zero.insert(idx);
                }
            }
            continue;
        }
        let mut created: Vec<Ray<T>> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let mut common = rays[p].zero.clone();
                common.intersect_with(&rays[q].zero);
                if common.count_ones(..) < min_common {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, r)| i == p || i == q || !common.is_subset(&r.zero));
                if !adjacent {
                    continue;
                }
                let sp = &values[p];
                let sq = &values[q];
                let mut v = Vec::with_capacity(width);
                for (a, b) in rays[q].v.iter().zip(&rays[p].v) {
                    v.push(sp.mul(a)?.sub(&sq.mul(b)?)?);
                }
                primitive_t(&mut v);
                common.insert(idx);
                created.push(Ray { v, zero: common });
            }
        }
        let mut next: Vec<Ray<T>> = Vec::with_capacity(pos.len() + created.len());
        for (i, (mut r, v)) in rays.into_iter().zip(values).enumerate() {
            let s = v.signum();
            if s > 0 {
                next.push(r);
            } else if s == 0 {
                r.zero.insert(idx);
                next.push(r);
            } else {
                let _ = i;
            }
        }
        next.extend(created);
        rays = next;
    }
    Some(rays.into_iter().map(|r| r.v.iter().map(T::to_big).collect()).collect())
}
