//! Truncated formal pseudodifferential operators `sum_{k <= top} a_k d^k`,
//! the monic `2n`-th root of a scalar operator and the KdV right-hand side.

use std::collections::BTreeMap;

use crate::arith::{Rat, XRat};
use crate::error::{Error, Result};
use crate::scalar_ops::ScalarDiffOp;

/// Coefficients of powers `>= known_from` are exact; lower powers are
/// unknown. `known_from = None` marks an exact finite operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoDiffOp {
    coeffs: BTreeMap<i64, XRat>,
    known_from: Option<i64>,
}

/// Generalized binomial `k (k-1) .. (k-t+1) / t!`.
pub fn binomial(k: i64, t: usize) -> Rat {
    let mut acc = Rat::one();
    for s in 0..t as i64 {
        acc = &(&acc * &Rat::from_int(k - s)) / &Rat::from_int(s + 1);
    }
    acc
}

impl PseudoDiffOp {
    pub fn new(coeffs: BTreeMap<i64, XRat>, known_from: Option<i64>) -> Self {
        let coeffs = coeffs
            .into_iter()
            .filter(|(p, c)| !c.is_zero() && known_from.is_none_or(|lo| *p >= lo))
            .collect();
        PseudoDiffOp { coeffs, known_from }
    }

    pub fn zero() -> Self {
        PseudoDiffOp { coeffs: BTreeMap::new(), known_from: None }
    }

    pub fn one() -> Self {
        Self::d_power(0)
    }

    /// `d^k` for any integer `k`.
    pub fn d_power(k: i64) -> Self {
        Self::new(BTreeMap::from([(k, XRat::one(0))]), None)
    }

    pub fn from_diff(op: &ScalarDiffOp) -> Self {
        let coeffs = op.coeffs().iter().enumerate().map(|(k, c)| (k as i64, c.clone())).collect();
        Self::new(coeffs, None)
    }

    pub fn known_from(&self) -> Option<i64> {
        self.known_from
    }

    pub fn top(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, p: i64) -> XRat {
        self.coeffs.get(&p).cloned().unwrap_or_else(|| XRat::zero(0))
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, XRat> {
        &self.coeffs
    }

    /// Forgets every power below `-depth`.
    pub fn truncate(&self, depth: i64) -> Self {
        let lo = self.known_from.map_or(-depth, |k| k.max(-depth));
        Self::new(self.coeffs.clone(), Some(lo))
    }

    fn combine_bound(a: Option<i64>, b: Option<i64>) -> Option<i64> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.max(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    pub fn add(&self, o: &PseudoDiffOp) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (p, c) in &o.coeffs {
            let e = coeffs.entry(*p).or_insert_with(|| XRat::zero(0));
            *e = &*e + c;
        }
        Self::new(coeffs, Self::combine_bound(self.known_from, o.known_from))
    }

    pub fn neg(&self) -> Self {
        PseudoDiffOp { coeffs: self.coeffs.iter().map(|(p, c)| (*p, -c)).collect(), known_from: self.known_from }
    }

    pub fn sub(&self, o: &PseudoDiffOp) -> Self {
        self.add(&o.neg())
    }

    /// Product truncated at depth `depth`; the result is exact in every
    /// power it retains.
    pub fn mul(&self, o: &PseudoDiffOp, depth: i64) -> Self {
        if self.coeffs.is_empty() && self.known_from.is_none() || o.coeffs.is_empty() && o.known_from.is_none() {
            return Self::zero();
        }
        let top_a = self.top().unwrap_or(self.known_from.unwrap_or(0));
        let top_b = o.top().unwrap_or(o.known_from.unwrap_or(0));
        let from_a = self.known_from.map(|lo| lo + top_b);
        let from_b = o.known_from.map(|lo| lo + top_a);
        let mut bound = Self::combine_bound(from_a, from_b);
        let has_negative = self.coeffs.keys().any(|&p| p < 0);
        if bound.is_some() || has_negative {
            bound = Some(bound.map_or(-depth, |b| b.max(-depth)));
        }
        let lo = bound.unwrap_or(i64::MIN);
        let mut derivs: BTreeMap<i64, Vec<XRat>> = o.coeffs.iter().map(|(p, c)| (*p, vec![c.clone()])).collect();
        let mut out: BTreeMap<i64, XRat> = BTreeMap::new();
        for (&i, a) in &self.coeffs {
            for (&j, ds) in derivs.iter_mut() {
                let mut t = 0usize;
                loop {
                    let p = i + j - t as i64;
                    if p < lo || (i >= 0 && t as i64 > i) {
                        break;
                    }
                    while ds.len() <= t {
                        let next = ds.last().unwrap().derivative();
                        ds.push(next);
                    }
                    if !ds[t].is_zero() {
                        let term = (a * &ds[t]).scale_rat(&binomial(i, t));
                        let e = out.entry(p).or_insert_with(|| XRat::zero(0));
                        *e = &*e + &term;
                    } else if ds[t..].iter().all(|d| d.is_zero()) && t > 0 {
                        break;
                    }
                    t += 1;
                }
            }
        }
        Self::new(out, bound)
    }

    pub fn pow(&self, e: u32, depth: i64) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self, depth))
    }

    /// `(A)^+`: the powers `>= 0`, which must all be known.
    pub fn plus_part(&self) -> Result<ScalarDiffOp> {
        if let Some(lo) = self.known_from {
            if lo > 0 {
                return Err(Error::DepthTooSmall(lo));
            }
        }
        let top = self.top().unwrap_or(-1).max(-1);
        Ok(ScalarDiffOp::new((0..=top).map(|p| self.coeff(p)).collect()))
    }

    /// Coefficient agreement on every power both operators know.
    pub fn agrees_with(&self, o: &PseudoDiffOp) -> bool {
        let lo = Self::combine_bound(self.known_from, o.known_from).unwrap_or(i64::MIN);
        let keys: std::collections::BTreeSet<i64> =
            self.coeffs.keys().chain(o.coeffs.keys()).copied().filter(|&p| p >= lo).collect();
        keys.into_iter().all(|p| self.coeff(p) == o.coeff(p))
    }

    pub fn specialize(&self, c: &[Rat]) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|(p, x)| Ok((*p, x.specialize(c)?))).collect::<Result<_>>()?;
        Ok(Self::new(coeffs, self.known_from))
    }
}

/// The unique `R = d + sum_{k >= 0} a_{-k} d^{-k}` with `R^N = L`, known
/// down to `d^{-depth}`.
pub fn pdo_root(l: &ScalarDiffOp, depth: i64) -> Result<PseudoDiffOp> {
    let big_n = match l.order() {
        Some(o) if o >= 1 && l.is_monic() => o as i64,
        _ => return Err(Error::NotMonic),
    };
    if depth < 0 {
        return Err(Error::DepthTooSmall(depth));
    }
    let inv_n = Rat::new(1, big_n);
    let lo = |p: i64| if p >= 0 { l.coeff(p as usize) } else { XRat::zero(0) };
    let mut coeffs: BTreeMap<i64, XRat> = BTreeMap::from([(1, XRat::one(0))]);
    for k in 0..=depth {
        // with a_{-k} = 0, R^N is exact from d^{N-1-k} and its coefficient
        // there differs from the true one by N a_{-k}
        let r = PseudoDiffOp::new(coeffs.clone(), Some(-k));
        let target = big_n - 1 - k;
        let power = r.pow(big_n as u32, big_n + depth);
        let a = (&lo(target) - &power.coeff(target)).scale_rat(&inv_n);
        coeffs.insert(-k, a);
    }
    Ok(PseudoDiffOp::new(coeffs, Some(-depth)))
}

/// `[L, (L^{r/N})^+]` with `N` the order of `L`.
pub fn kdv_rhs(l: &ScalarDiffOp, r: u32, depth: i64) -> Result<ScalarDiffOp> {
    if depth < r as i64 - 1 {
        return Err(Error::DepthTooSmall(depth));
    }
    // (R^r)^+ only needs R down to d^{1-r}
    let need = (r as i64 - 1).max(0).min(depth);
    let root = pdo_root(l, need)?;
    let p = root.pow(r, need).plus_part()?;
    Ok(l.mul(&p).sub(&p.mul(l)))
}

/// Default truncation depth `2n + r + 2`.
pub fn default_depth(n: usize, r: u32) -> i64 {
    2 * n as i64 + r as i64 + 2
}
