use std::collections::BTreeSet;

use crate::arith::{Rat, XPoly, XRat};
use crate::error::{Error, Result};
use crate::generation::{GeneratedFamily, GenSequence};
use crate::lie::{f_projector, lambda_power, shift_power, LaurentMatrix};
use crate::miura::{conjugator, Conjugator, GCascade, MiuraOper};
use crate::scalar_ops::TangentVector;

/// Diagonal of the r-th mKdV vector field at the point `c` of a cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowField {
    pub js: Vec<usize>,
    pub r: u32,
    pub c: Vec<Rat>,
    pub entries: Vec<XRat>,
}

impl FlowField {
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Whether the field is tangent to the C-type opers: mirror
    /// antisymmetric, hence traceless.
    pub fn is_tangent(&self) -> bool {
        TangentVector::new(self.entries.clone()).is_ok()
    }

    pub fn tangent(&self) -> Result<TangentVector> {
        TangentVector::new(self.entries.clone())
    }
}

pub(crate) fn check_flow_index(r: u32) -> Result<()> {
    if r.is_multiple_of(2) {
        return Err(Error::EvenPower(r as i64));
    }
    Ok(())
}

/// Diagonal of the `lambda^0` part of `a * b`.
fn diag_degree0_of_product(a: &LaurentMatrix, b: &LaurentMatrix) -> Vec<XRat> {
    let s = a.size();
    (0..s)
        .map(|k| {
            let mut acc = XRat::zero(0);
            for j in 0..s {
                let left = a.entry(k, j);
                if left.is_empty() {
                    continue;
                }
                let right = b.entry(j, k);
                for (p, va) in left {
                    if let Some(vb) = right.get(&-p) {
                        acc = &acc + &(va * vb);
                    }
                }
            }
            acc
        })
        .collect()
}

/// `-d/dx (G Lambda^r G^{-1})^0` for a given conjugator.
pub fn flow_from_conjugator(conj: &Conjugator, r: u32) -> Result<Vec<XRat>> {
    check_flow_index(r)?;
    let n = conj.g.n();
    let right = lambda_power(r as i64, n)?.mul(&conj.g_inv);
    Ok(diag_degree0_of_product(&conj.g, &right).iter().map(|d| -&d.derivative()).collect())
}

/// The r-th mKdV field at `mu^J(c)`, through the nilpotent conjugator.
pub fn mkdv_field(family: &GeneratedFamily, c: &[Rat], r: u32) -> Result<FlowField> {
    check_flow_index(r)?;
    let conj = conjugator(family, c)?;
    let entries = flow_from_conjugator(&conj, r)?;
    Ok(FlowField { js: family.seq.js().to_vec(), r, c: c.to_vec(), entries })
}

/// Principal degrees that `G` and `G^{-1}` can occupy. The factors
/// `Id +- g P_j Lambda^{-1}` are replaced by `Id + P_j Lambda^{-1}`; all
/// entries are then nonnegative, so no cancellation hides a degree.
pub fn conjugator_degree_support(seq: &GenSequence) -> (BTreeSet<i64>, BTreeSet<i64>) {
    let n = seq.n();
    let mut g = LaurentMatrix::identity(2 * n);
    let mut g_inv = LaurentMatrix::identity(2 * n);
    for &j in seq.js() {
        let e = LaurentMatrix::identity(2 * n).add(&f_projector(j, n).mul(&shift_power(-1, n)));
        g = e.mul(&g);
        g_inv = g_inv.mul(&e);
    }
    (g.degrees(), g_inv.degrees())
}

/// Whether `G Lambda^r G^{-1}` has no degree-0 component for structural
/// reasons. Since `G` and `G^{-1}` live in degrees `-m..=0`, this holds
/// for every `r > 2m`, identically in `c`.
pub fn zero_by_degree_support(seq: &GenSequence, r: u32) -> bool {
    let (g, g_inv) = conjugator_degree_support(seq);
    let low = |s: &BTreeSet<i64>| s.iter().next().copied().unwrap_or(0);
    r as i64 + low(&g) + low(&g_inv) > 0
}

/// Classification of the difference of the fields of `J` and its prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceShape {
    /// 1-based diagonal positions the pattern allows.
    pub allowed: Vec<usize>,
    /// Coefficient of `e_{j+1,j+1} - e_{j,j}`, resp. its end-node analogue.
    pub u1: XRat,
    /// Coefficient of `e_{2n+1-j,2n+1-j} - e_{2n-j,2n-j}` for middle `j`.
    pub u2: Option<XRat>,
}

/// Positions `(minus, plus)` of the pattern `e_plus - e_minus` attached to
/// direction `j`, 1-based; a second pair for middle directions.
pub(crate) fn pattern_pairs(n: usize, j: usize) -> Vec<(usize, usize)> {
    if j == 0 {
        vec![(1, 2 * n)]
    } else if j == n {
        vec![(n, n + 1)]
    } else {
        vec![(j, j + 1), (2 * n - j, 2 * n + 1 - j)]
    }
}

/// Checks that a diagonal difference is supported on the pattern of
/// direction `j` and extracts its coefficients.
pub fn classify_difference(n: usize, j: usize, diff: &[XRat]) -> Result<DifferenceShape> {
    let pairs = pattern_pairs(n, j);
    let allowed: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    let mut offending: Vec<usize> =
        (1..=2 * n).filter(|k| !allowed.contains(k) && !diff[k - 1].is_zero()).collect();
    let mut us = Vec::new();
    for &(minus, plus) in &pairs {
        let u = diff[plus - 1].clone();
        if !(&u + &diff[minus - 1]).is_zero() {
            offending.push(minus);
        }
        us.push(u);
    }
    if !offending.is_empty() {
        offending.sort_unstable();
        offending.dedup();
        return Err(Error::Shape(format!("difference has entries outside the pattern at {offending:?}")));
    }
    let u2 = us.get(1).cloned();
    Ok(DifferenceShape { allowed, u1: us.swap_remove(0), u2 })
}

/// The family of the prefix sequence, with its tuples shared.
pub fn prefix_family(family: &GeneratedFamily) -> Result<GeneratedFamily> {
    let seq = family.seq.prefix().ok_or(Error::EmptySequence)?;
    crate::generation::generate_family(&seq)
}

/// `mkdv_field(J, c) - mkdv_field(J~, c~)` classified against the pattern of `j_m`.
pub fn field_difference_shape(family: &GeneratedFamily, c: &[Rat], r: u32) -> Result<DifferenceShape> {
    let m = family.m();
    let j = family.seq.last().ok_or(Error::EmptySequence)?;
    let prefix = prefix_family(family)?;
    let full = mkdv_field(family, c, r)?;
    let part = mkdv_field(&prefix, &c[..m - 1], r)?;
    let diff: Vec<XRat> = full.entries.iter().zip(&part.entries).map(|(a, b)| a - b).collect();
    classify_difference(family.seq.n(), j, &diff)
}

/// The oper `mu^J(c)` at a rational point.
pub fn oper_at(family: &GeneratedFamily, c: &[Rat]) -> Result<MiuraOper> {
    if c.len() != family.m() {
        return Err(Error::ParamLength { got: c.len(), expected: family.m() });
    }
    let g = (1..=family.m())
        .map(|l| {
            let (new, old) = family.step_pair(l);
            let (new, old) = (new.specialize(c), old.specialize(c));
            if new.is_zero() || old.is_zero() {
                return Err(Error::Singular(format!("g_{l} has a vanishing denominator")));
            }
            XRat::new(XPoly::wronskian(&old, &new), &old * &new)
        })
        .collect::<Result<_>>()?;
    GCascade { js: family.seq.js().to_vec(), g }.potential(family.seq.n())
}
