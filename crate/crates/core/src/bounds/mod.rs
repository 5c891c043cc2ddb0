//! Cell bounds for homogeneous standard-form programs: exact LP relaxation,
//! integer optimum, equality sweeps and gap witnesses.

mod ip;
pub mod simplex;

use crate::compressed::is_compressed;
use crate::error::{Error, Result};
use crate::exact::{solve_rational, to_rationals, IntMatrix, Rational};
use crate::polytope::{FacetIneq, LatticeMode, LatticePolytope};
use crate::triangulate::{unimodular_ordering_with_first, PointConfiguration, DEFAULT_ORDERING_CAP};
use ip::{narrow, Enumerator};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use simplex::{maximize, LpOutcome};
use std::collections::BTreeSet;

pub const DEFAULT_GAP_BUDGET: usize = 8;

/// Solve `wᵀA = 1` exactly.
pub fn find_weight(a: &IntMatrix) -> Result<Vec<Rational>> {
    let at: Vec<Vec<Rational>> = a.columns().iter().map(|c| to_rationals(c)).collect();
    let ones = vec![Rational::one(); a.cols()];
    if a.cols() == 0 {
        return Err(Error::Empty("matrix has no columns"));
    }
    solve_rational(&at, &ones).ok_or(Error::Inhomogeneous)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Max,
    Min,
}

/// Optimize `x_i` subject to `A x = b`, `x >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardFormProgram {
    pub a: IntMatrix,
    pub b: Vec<BigInt>,
    pub objective: usize,
    pub weight: Vec<Rational>,
}

impl StandardFormProgram {
    pub fn new(a: IntMatrix, b: Vec<BigInt>, objective: usize) -> Result<Self> {
        let weight = find_weight(&a)?;
        Self::with_weight(a, b, objective, weight)
    }

    fn with_weight(a: IntMatrix, b: Vec<BigInt>, objective: usize, weight: Vec<Rational>) -> Result<Self> {
        if b.len() != a.rows() {
            return Err(Error::DimensionMismatch {
                expected: a.rows(),
                got: b.len(),
            });
        }
        if objective >= a.cols() {
            return Err(Error::InvalidInput(format!(
                "cell {} out of range for {} columns",
                objective + 1,
                a.cols()
            )));
        }
        Ok(StandardFormProgram { a, b, objective, weight })
    }

    /// `wᵀb`, the 1-norm of every feasible point.
    pub fn total(&self) -> Rational {
        self.weight
            .iter()
            .zip(&self.b)
            .map(|(w, b)| w * Rational::from_integer(b.clone()))
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpResult {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IpResult {
    Optimal { value: BigInt, x: Vec<BigInt> },
    /// The relaxation is feasible but has no integer point.
    IntegerInfeasible,
    LpInfeasible,
}

impl LpResult {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpResult::Optimal { value, .. } => Some(value),
            LpResult::Infeasible => None,
        }
    }
}

impl IpResult {
    pub fn value(&self) -> Option<&BigInt> {
        match self {
            IpResult::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

pub fn lp_max(p: &StandardFormProgram) -> LpResult {
    lp_optimize(p, Sense::Max)
}

pub fn lp_optimize(p: &StandardFormProgram, sense: Sense) -> LpResult {
    let a: Vec<Vec<Rational>> = p.a.to_rows().iter().map(|r| to_rationals(r)).collect();
    let b = to_rationals(&p.b);
    let mut c = vec![Rational::zero(); p.a.cols()];
    c[p.objective] = match sense {
        Sense::Max => Rational::one(),
        Sense::Min => -Rational::one(),
    };
    match maximize(&a, &b, &c) {
        LpOutcome::Optimal { value, x } => {
            assert_eq!(x.iter().sum::<Rational>(), p.total(), "feasible point off the weight hyperplane");
            let value = match sense {
                Sense::Max => value,
                Sense::Min => -value,
            };
            LpResult::Optimal { value, x }
        }
        LpOutcome::Infeasible => LpResult::Infeasible,
        LpOutcome::Unbounded => unreachable!("homogeneous programs are bounded"),
    }
}

pub fn ip_max(p: &StandardFormProgram) -> Result<IpResult> {
    ip_optimize(p, Sense::Max)
}

/// Exact integer optimum by enumeration, trying objective values from the
/// LP bound inwards.
pub fn ip_optimize(p: &StandardFormProgram, sense: Sense) -> Result<IpResult> {
    let LpResult::Optimal { value: bound, .. } = lp_optimize(p, sense) else {
        return Ok(IpResult::LpInfeasible);
    };
    let total = p.total();
    if !total.is_integer() {
        return Ok(IpResult::IntegerInfeasible);
    }
    let total = total.to_integer();
    let columns = p.a.columns();
    let e = Enumerator::new(&columns, p.a.rows())?;
    let rhs = narrow(&p.b)?;
    let n = narrow(std::slice::from_ref(&total))?[0];
    let i = p.objective;
    let rest: Vec<usize> = (0..p.a.cols()).filter(|&j| j != i).collect();
    let (lo, hi) = match sense {
        Sense::Max => (0, narrow(&[bound.floor().to_integer()])?[0]),
        Sense::Min => (narrow(&[bound.ceil().to_integer()])?[0], n),
    };
    let values: Box<dyn Iterator<Item = i128>> = match sense {
        Sense::Max => Box::new((lo.max(0)..=hi.min(n)).rev()),
        Sense::Min => Box::new(lo.max(0)..=hi),
    };
    let ci = narrow(&columns[i])?;
    for v in values {
        let res: Vec<i128> = rhs.iter().zip(&ci).map(|(r, a)| r - a * v).collect();
        if let Some(mut x) = e.feasible(&rest, &res, n - v) {
            x[i] = v;
            let x: Vec<BigInt> = x.into_iter().map(BigInt::from).collect();
            assert_eq!(x.iter().sum::<BigInt>(), total, "feasible point off the weight hyperplane");
            return Ok(IpResult::Optimal { value: BigInt::from(v), x });
        }
    }
    Ok(IpResult::IntegerInfeasible)
}

/// One right-hand side where the LP and IP optima differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gap {
    pub b: Vec<BigInt>,
    /// 0-based column index.
    pub cell: usize,
    pub lp: Rational,
    pub ip: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub budget: usize,
    pub cells: Vec<usize>,
    /// Distinct IP-feasible right-hand sides tested.
    pub rhs_checked: usize,
    /// Every gap, ordered by `wᵀb`, then `b`, then cell.
    pub gaps: Vec<Gap>,
}

impl SweepReport {
    pub fn holds(&self) -> bool {
        self.gaps.is_empty()
    }

    pub fn counterexample(&self) -> Option<&Gap> {
        self.gaps.first()
    }
}

/// Distinct sums of at most `budget` columns, ordered by number of
/// summands then lexicographically.
pub fn feasible_rhs(a: &IntMatrix, budget: usize) -> Vec<Vec<BigInt>> {
    let columns = a.columns();
    let mut out = Vec::new();
    let mut level: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    level.insert(vec![BigInt::zero(); a.rows()]);
    for s in 0..=budget {
        out.extend(level.iter().cloned());
        if s == budget {
            break;
        }
        let mut next = BTreeSet::new();
        for b in &level {
            for c in &columns {
                next.insert(b.iter().zip(c).map(|(x, y)| x + y).collect::<Vec<_>>());
            }
        }
        level = next;
    }
    out
}

/// Compare `LP⁺ᵢ` and `IP⁺ᵢ` for every cell and every IP-feasible `b` with
/// `wᵀb <= budget`.
pub fn lp_ip_equal_all(a: &IntMatrix, budget: usize) -> Result<SweepReport> {
    lp_ip_sweep(a, budget, None)
}

pub fn lp_ip_sweep(a: &IntMatrix, budget: usize, cells: Option<&[usize]>) -> Result<SweepReport> {
    let weight = find_weight(a)?;
    let cells: Vec<usize> = match cells {
        Some(c) => c.to_vec(),
        None => (0..a.cols()).collect(),
    };
    if let Some(&bad) = cells.iter().find(|&&c| c >= a.cols()) {
        return Err(Error::InvalidInput(format!("cell {} out of range", bad + 1)));
    }
    let rhs = feasible_rhs(a, budget);
    let per_rhs: Vec<Vec<Gap>> = rhs
        .par_iter()
        .map(|b| -> Result<Vec<Gap>> {
            let mut gaps = Vec::new();
            for &i in &cells {
                let p = StandardFormProgram::with_weight(a.clone(), b.clone(), i, weight.clone())?;
                let lp = lp_max(&p).value().cloned().expect("b is a sum of columns");
                let ip = ip_max(&p)?.value().cloned().expect("b is a sum of columns");
                if lp != Rational::from_integer(ip.clone()) {
                    gaps.push(Gap { b: b.clone(), cell: i, lp, ip });
                }
            }
            Ok(gaps)
        })
        .collect::<Result<_>>()?;
    Ok(SweepReport {
        budget,
        cells,
        rhs_checked: rhs.len(),
        gaps: per_rhs.into_iter().flatten().collect(),
    })
}

/// A right-hand side separating the LP and IP optima, built from a facet
/// with an intermediate level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapWitness {
    pub facet: FacetIneq,
    pub b: Vec<BigInt>,
    /// 0-based column index of the maximized cell.
    pub cell: usize,
    pub lp_value: Rational,
    pub ip_value: BigInt,
    /// Kernel vector behind `b`; `None` when the witness came from the
    /// fallback sweep.
    pub v: Option<Vec<BigInt>>,
}

/// Construct a gap witness for `A`, or `None` when `P_A` is compressed.
pub fn gap_witness(a: &IntMatrix) -> Result<Option<GapWitness>> {
    gap_witness_with_budget(a, DEFAULT_GAP_BUDGET)
}

pub fn gap_witness_with_budget(a: &IntMatrix, budget: usize) -> Result<Option<GapWitness>> {
    let weight = find_weight(a)?;
    let columns = a.columns();
    let p = LatticePolytope::new(&columns, LatticeMode::Generated)?;
    let cert = is_compressed(&p)?;
    let Some(violation) = cert.violation else {
        return Ok(None);
    };
    let facet = violation.facet;
    let slack: Vec<BigInt> = columns.iter().map(|c| facet.slack(c)).collect();
    let m = slack.iter().max().cloned().unwrap_or_default();
    let top: Vec<usize> = (0..columns.len()).filter(|&j| slack[j] == m).collect();
    let middle: Vec<usize> = (0..columns.len())
        .filter(|&j| slack[j].is_positive() && slack[j] < m)
        .collect();
    let bottom: Vec<usize> = (0..columns.len()).filter(|&j| slack[j].is_zero()).collect();
    let first = top[0];
    let e = Enumerator::new(&columns, a.rows())?;
    let cols = columns.iter().map(|c| narrow(c)).collect::<Result<Vec<_>>>()?;
    let verify = |b: Vec<BigInt>, v: Option<Vec<BigInt>>| -> Result<Option<GapWitness>> {
        let prog = StandardFormProgram::with_weight(a.clone(), b.clone(), first, weight.clone())?;
        let (Some(lp), Some(ip)) = (lp_max(&prog).value().cloned(), ip_max(&prog)?.value().cloned()) else {
            return Ok(None);
        };
        Ok((lp > Rational::from_integer(ip.clone())).then(|| GapWitness {
            facet: facet.clone(),
            b,
            cell: first,
            lp_value: lp,
            ip_value: ip,
            v,
        }))
    };
    for &k in &middle {
        // The kernel vector is negative on `first`, nonpositive on the other
        // top and intermediate columns, nonnegative on `k` and free on the
        // bottom. Search by increasing `v_k`.
        let mut negative: Vec<usize> = top.clone();
        negative.extend(middle.iter().filter(|&&j| j != k));
        negative.extend(&bottom);
        for t in 1..=budget {
            for s in 0..=budget - t {
                for combo in multisets(&bottom, s) {
                    let mut pos = vec![0i128; columns.len()];
                    pos[k] = t as i128;
                    for &j in &combo {
                        pos[j] += 1;
                    }
                    let mut rhs: Vec<i128> = vec![0; a.rows()];
                    for (j, &c) in pos.iter().enumerate() {
                        for (r, x) in cols[j].iter().enumerate() {
                            rhs[r] += x * c;
                        }
                    }
                    for (r, x) in cols[first].iter().enumerate() {
                        rhs[r] -= x;
                    }
                    let Some(mut neg) = e.feasible(&negative, &rhs, (t + s) as i128 - 1) else {
                        continue;
                    };
                    neg[first] += 1;
                    let v: Vec<BigInt> = pos.iter().zip(&neg).map(|(p, n)| BigInt::from(p - n)).collect();
                    let mut b = vec![BigInt::zero(); a.rows()];
                    for (j, vj) in v.iter().enumerate() {
                        if vj.is_positive() {
                            for (r, x) in columns[j].iter().enumerate() {
                                b[r] += vj * x;
                            }
                        }
                    }
                    for (r, x) in columns[k].iter().enumerate() {
                        b[r] -= x;
                    }
                    debug_assert!(a.mul_vec(&v).iter().all(Zero::is_zero));
                    if let Some(w) = verify(b, Some(v))? {
                        return Ok(Some(w));
                    }
                }
            }
        }
    }
    if middle.is_empty() {
        // No column sits strictly between the levels; search right-hand sides directly.
        let report = lp_ip_sweep(a, budget, Some(&top))?;
        if let Some(g) = report.counterexample() {
            return Ok(Some(GapWitness {
                facet,
                b: g.b.clone(),
                cell: g.cell,
                lp_value: g.lp.clone(),
                ip_value: g.ip.clone(),
                v: None,
            }));
        }
    }
    Err(Error::BudgetExhausted(format!(
        "no gap witness with kernel degree at most {budget}"
    )))
}

fn multisets(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn rec(items: &[usize], start: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, i, size, cur, out);
            cur.pop();
        }
    }
    rec(items, 0, size, &mut cur, &mut out);
    out
}

/// Whether some ordering of the distinct columns of `A` starting with
/// column `i` has a unimodular pulling triangulation.
pub fn pull_first_unimodular(a: &IntMatrix, i: usize) -> Result<bool> {
    if i >= a.cols() {
        return Err(Error::InvalidInput(format!("cell {} out of range", i + 1)));
    }
    let columns = a.columns();
    let p = LatticePolytope::new(&columns, LatticeMode::Generated)?;
    let config = PointConfiguration::generators_of(&p)?;
    let first = config
        .points()
        .iter()
        .position(|q| q == &columns[i])
        .expect("column is a generator");
    Ok(unimodular_ordering_with_first(&config, first, DEFAULT_ORDERING_CAP)?.is_some())
}

/// `wᵀA_j` for every column; all ones for a homogeneous matrix.
pub fn weight_check(a: &IntMatrix, w: &[Rational]) -> bool {
    a.columns().iter().all(|c| {
        w.iter()
            .zip(c)
            .map(|(wi, ci)| wi * Rational::from_integer(ci.clone()))
            .sum::<Rational>()
            .is_one()
    })
}
