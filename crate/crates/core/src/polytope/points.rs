use super::LatticePolytope;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

/// Lattice points of `p` in ambient coordinates, sorted.
pub(super) fn enumerate(p: &LatticePolytope, cap: usize) -> Result<Vec<Vec<BigInt>>> {
    let zero_one = p
        .generators()
        .iter()
        .flatten()
        .all(|x| x.is_zero() || x.is_one());
    let mut out = if zero_one {
        // Lattice points of a 0/1 polytope are 0/1 points, hence vertices.
        p.vertices()
    } else {
        scan_box(p, cap)?
    };
    out.sort();
    out.dedup();
    Ok(out)
}

fn scan_box(p: &LatticePolytope, cap: usize) -> Result<Vec<Vec<BigInt>>> {
    let k = p.dim();
    let coords = p.generator_coords();
    let lo: Vec<BigInt> = (0..k)
        .map(|i| coords.iter().map(|c| c[i].clone()).min().unwrap())
        .collect();
    let hi: Vec<BigInt> = (0..k)
        .map(|i| coords.iter().map(|c| c[i].clone()).max().unwrap())
        .collect();
    let mut size: usize = 1;
    for (l, h) in lo.iter().zip(&hi) {
        let w = (h - l + 1u32).to_usize().unwrap_or(usize::MAX);
        size = size.saturating_mul(w);
    }
    if size > cap {
        return Err(Error::CapExceeded {
            what: "lattice point scan box",
            size,
            cap,
        });
    }
    let mut out = Vec::new();
    let mut cur = lo.clone();
    loop {
        if p.lattice_facets().iter().all(|f| f.slack(&cur) >= BigInt::zero()) {
            out.push(p.lattice().point(&cur));
        }
        let mut i = 0;
        loop {
            if i == k {
                return Ok(out);
            }
            if cur[i] < hi[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = lo[i].clone();
            i += 1;
        }
    }
}
