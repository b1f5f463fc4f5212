//! The 2n x 2n loop-matrix realization of A_{2n-1}^(1) and its C_n^(1)
//! subalgebra.
//!
//! Matrix indices are 0-based in code; the unit `e_{k,l}` of the tables is
//! `unit(k - 1, l - 1)`. The principal degree of entry (k, l) at `lambda^p`
//! is `2n p + k - l`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::arith::{Rat, XRat};
use crate::error::{Error, Result};

pub type LaurentEntry = BTreeMap<i64, XRat>;

/// Square matrix of Laurent polynomials in lambda with rational-function
/// coefficients; no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    size: usize,
    entries: Vec<LaurentEntry>,
}

impl LaurentMatrix {
    pub fn zero(size: usize) -> Self {
        LaurentMatrix { size, entries: vec![BTreeMap::new(); size * size] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zero(size);
        for i in 0..size {
            m.add_term(i, i, 0, &XRat::one(0));
        }
        m
    }

    /// `value * lambda^p * e_{row+1, col+1}`.
    pub fn unit(size: usize, row: usize, col: usize, p: i64, value: XRat) -> Self {
        let mut m = Self::zero(size);
        m.add_term(row, col, p, &value);
        m
    }

    /// Diagonal matrix at lambda^0.
    pub fn from_diag(diag: &[XRat]) -> Self {
        let mut m = Self::zero(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.add_term(i, i, 0, d);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Half the size, the rank parameter n.
    pub fn n(&self) -> usize {
        self.size / 2
    }

    pub fn entry(&self, row: usize, col: usize) -> &LaurentEntry {
        &self.entries[row * self.size + col]
    }

    pub fn coeff(&self, row: usize, col: usize, p: i64) -> XRat {
        self.entry(row, col).get(&p).cloned().unwrap_or_else(|| XRat::zero(0))
    }

    pub fn add_term(&mut self, row: usize, col: usize, p: i64, value: &XRat) {
        if value.is_zero() {
            return;
        }
        let e = &mut self.entries[row * self.size + col];
        match e.get_mut(&p) {
            Some(v) => {
                *v = &*v + value;
                if v.is_zero() {
                    e.remove(&p);
                }
            }
            None => {
                e.insert(p, value.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_empty())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.size, o.size);
        let mut out = self.clone();
        for (idx, e) in o.entries.iter().enumerate() {
            for (p, v) in e {
                out.add_term(idx / self.size, idx % self.size, *p, v);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale_rat(&Rat::from_int(-1))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &XRat) -> Self {
        let mut out = Self::zero(self.size);
        for (idx, e) in self.entries.iter().enumerate() {
            for (p, v) in e {
                out.add_term(idx / self.size, idx % self.size, *p, &(v * s));
            }
        }
        out
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        let mut out = Self::zero(self.size);
        for (idx, e) in self.entries.iter().enumerate() {
            for (p, v) in e {
                out.add_term(idx / self.size, idx % self.size, *p, &v.scale_rat(r));
            }
        }
        out
    }

    /// Multiplication by lambda^p.
    pub fn shift_lambda(&self, p: i64) -> Self {
        LaurentMatrix {
            size: self.size,
            entries: self.entries.iter().map(|e| e.iter().map(|(q, v)| (q + p, v.clone())).collect()).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.size, o.size);
        let n = self.size;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                let a = self.entry(i, j);
                if a.is_empty() {
                    continue;
                }
                for k in 0..n {
                    let b = o.entry(j, k);
                    for (pa, va) in a {
                        for (pb, vb) in b {
                            out.add_term(i, k, pa + pb, &(va * vb));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.size);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Entrywise d/dx.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero(self.size);
        for (idx, e) in self.entries.iter().enumerate() {
            for (p, v) in e {
                out.add_term(idx / self.size, idx % self.size, *p, &v.derivative());
            }
        }
        out
    }

    pub fn specialize(&self, c: &[Rat]) -> Result<Self> {
        let mut out = Self::zero(self.size);
        for (idx, e) in self.entries.iter().enumerate() {
            for (p, v) in e {
                out.add_term(idx / self.size, idx % self.size, *p, &v.specialize(c)?);
            }
        }
        Ok(out)
    }

    pub fn degree_of(&self, row: usize, col: usize, p: i64) -> i64 {
        self.size as i64 * p + row as i64 - col as i64
    }

    /// Principal degrees occurring in the matrix.
    pub fn degrees(&self) -> BTreeSet<i64> {
        let mut out = BTreeSet::new();
        for (idx, e) in self.entries.iter().enumerate() {
            for p in e.keys() {
                out.insert(self.degree_of(idx / self.size, idx % self.size, *p));
            }
        }
        out
    }

    pub fn grade_project(&self, d: i64) -> GradedComponent {
        let mut m = Self::zero(self.size);
        for (idx, e) in self.entries.iter().enumerate() {
            let (r, c) = (idx / self.size, idx % self.size);
            for (p, v) in e {
                if self.degree_of(r, c, *p) == d {
                    m.add_term(r, c, *p, v);
                }
            }
        }
        GradedComponent { degree: d, matrix: m }
    }

    /// Diagonal of the lambda^0 part, which is the degree-0 component.
    pub fn diag_degree0(&self) -> Vec<XRat> {
        (0..self.size).map(|i| self.coeff(i, i, 0)).collect()
    }

    pub fn to_dump(&self) -> Vec<Vec<Vec<DumpTerm>>> {
        (0..self.size)
            .map(|r| {
                (0..self.size)
                    .map(|c| {
                        self.entry(r, c)
                            .iter()
                            .map(|(p, v)| DumpTerm { lambda_exp: *p, entry: v.to_string() })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, e) in self.entries.iter().enumerate() {
            for (p, v) in e {
                writeln!(f, "({},{}) λ^{}: {}", idx / self.size + 1, idx % self.size + 1, p, v)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct DumpTerm {
    pub lambda_exp: i64,
    pub entry: String,
}

/// A matrix supported on a single principal degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedComponent {
    pub degree: i64,
    pub matrix: LaurentMatrix,
}

impl GradedComponent {
    pub fn is_homogeneous(&self) -> bool {
        self.matrix.degrees().iter().all(|&d| d == self.degree)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GenKind {
    E,
    F,
    H,
}

fn check_rank(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::BadRank(n));
    }
    Ok(())
}

fn one() -> XRat {
    XRat::one(0)
}

/// Adds `coeff * lambda^p * e_{k,l}` with 1-based table indices.
fn put(m: &mut LaurentMatrix, k: usize, l: usize, p: i64, coeff: i64) {
    m.add_term(k - 1, l - 1, p, &XRat::from_int(coeff));
}

/// Chevalley generator of C_n^(1) in the lambda-realization.
pub fn generator(kind: GenKind, index: usize, n: usize) -> Result<LaurentMatrix> {
    check_rank(n)?;
    if index > n {
        return Err(Error::IndexOutOfRange { index, max: n });
    }
    let s = 2 * n;
    let i = index;
    let mut m = LaurentMatrix::zero(s);
    match (kind, i) {
        (GenKind::E, 0) => put(&mut m, 1, s, 1, 1),
        (GenKind::F, 0) => put(&mut m, s, 1, -1, 1),
        (GenKind::H, 0) => {
            put(&mut m, 1, 1, 0, 1);
            put(&mut m, s, s, 0, -1);
        }
        (GenKind::E, i) if i == n => put(&mut m, n + 1, n, 0, 1),
        (GenKind::F, i) if i == n => put(&mut m, n, n + 1, 0, 1),
        (GenKind::H, i) if i == n => {
            put(&mut m, n, n, 0, -1);
            put(&mut m, n + 1, n + 1, 0, 1);
        }
        (GenKind::E, i) => {
            put(&mut m, i + 1, i, 0, 1);
            put(&mut m, s + 1 - i, s - i, 0, 1);
        }
        (GenKind::F, i) => {
            put(&mut m, i, i + 1, 0, 1);
            put(&mut m, s - i, s + 1 - i, 0, 1);
        }
        (GenKind::H, i) => {
            put(&mut m, i, i, 0, -1);
            put(&mut m, i + 1, i + 1, 0, 1);
            put(&mut m, s - i, s - i, 0, -1);
            put(&mut m, s + 1 - i, s + 1 - i, 0, 1);
        }
    }
    Ok(m)
}

/// Chevalley generator of A_{2n-1}^(1), index in 0..2n.
pub fn a_generator(kind: GenKind, index: usize, n: usize) -> Result<LaurentMatrix> {
    check_rank(n)?;
    let s = 2 * n;
    if index >= s {
        return Err(Error::IndexOutOfRange { index, max: s - 1 });
    }
    let i = index;
    let mut m = LaurentMatrix::zero(s);
    match (kind, i) {
        (GenKind::E, 0) => put(&mut m, 1, s, 1, 1),
        (GenKind::F, 0) => put(&mut m, s, 1, -1, 1),
        (GenKind::H, 0) => {
            put(&mut m, 1, 1, 0, 1);
            put(&mut m, s, s, 0, -1);
        }
        (GenKind::E, i) => put(&mut m, i + 1, i, 0, 1),
        (GenKind::F, i) => put(&mut m, i, i + 1, 0, 1),
        (GenKind::H, i) => {
            put(&mut m, i, i, 0, -1);
            put(&mut m, i + 1, i + 1, 0, 1);
        }
    }
    Ok(m)
}

/// Diagonal of `h_j` as integers (length 2n).
pub fn h_diag(j: usize, n: usize) -> Vec<i64> {
    let s = 2 * n;
    let mut d = vec![0i64; s];
    if j == 0 {
        d[0] = 1;
        d[s - 1] = -1;
    } else if j == n {
        d[n - 1] = -1;
        d[n] = 1;
    } else {
        d[j - 1] = -1;
        d[j] = 1;
        d[s - j - 1] = -1;
        d[s - j] = 1;
    }
    d
}

/// `Lambda^k` for any integer k, via `Lambda^{2n} = lambda Id`.
pub fn shift_power(k: i64, n: usize) -> LaurentMatrix {
    let s = 2 * n as i64;
    let m = k.div_euclid(s);
    let j = k.rem_euclid(s) as usize;
    let size = 2 * n;
    let mut out = LaurentMatrix::zero(size);
    if j == 0 {
        for i in 0..size {
            out.add_term(i, i, m, &one());
        }
        return out;
    }
    // top-right j x j block at lambda^{m+1}, bottom-left (2n-j) x (2n-j) block at lambda^m
    for i in 0..j {
        out.add_term(i, size - j + i, m + 1, &one());
    }
    for i in 0..size - j {
        out.add_term(j + i, i, m, &one());
    }
    out
}

/// `Lambda^r` for odd r; even r gives the zero matrix.
pub fn lambda_power(r: i64, n: usize) -> Result<LaurentMatrix> {
    check_rank(n)?;
    if r.rem_euclid(2) == 0 {
        return Ok(LaurentMatrix::zero(2 * n));
    }
    Ok(shift_power(r, n))
}

/// Projector `P_j` with `f_j = P_j Lambda^{-1}`.
pub fn f_projector(j: usize, n: usize) -> LaurentMatrix {
    let s = 2 * n;
    let mut m = LaurentMatrix::zero(s);
    if j == 0 {
        put(&mut m, s, s, 0, 1);
    } else if j == n {
        put(&mut m, n, n, 0, 1);
    } else {
        put(&mut m, j, j, 0, 1);
        put(&mut m, s - j, s - j, 0, 1);
    }
    m
}

/// `(exp(g f_j), exp(-g f_j)) = (Id + g P_j Lambda^{-1}, Id - g P_j Lambda^{-1})`.
pub fn exp_ad_f(j: usize, g: &XRat, n: usize) -> Result<(LaurentMatrix, LaurentMatrix)> {
    check_rank(n)?;
    if j > n {
        return Err(Error::IndexOutOfRange { index: j, max: n });
    }
    let nil = f_projector(j, n).mul(&shift_power(-1, n)).scale(g);
    let id = LaurentMatrix::identity(2 * n);
    Ok((id.add(&nil), id.sub(&nil)))
}

/// Checks `e_{i+1,i+1} L = L e_{i,i}` and `e_{i,i} Linv = Linv e_{i+1,i+1}` for all i mod 2n.
pub fn shift_identities_hold(lam: &LaurentMatrix, lam_inv: &LaurentMatrix) -> bool {
    let s = lam.size();
    (0..s).all(|i| {
        let next = (i + 1) % s;
        let ei = LaurentMatrix::unit(s, i, i, 0, one());
        let en = LaurentMatrix::unit(s, next, next, 0, one());
        en.mul(lam) == lam.mul(&ei) && ei.mul(lam_inv) == lam_inv.mul(&en)
    })
}

pub fn shift_identities_check(n: usize) -> bool {
    n >= 2 && shift_identities_hold(&shift_power(1, n), &shift_power(-1, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(n: usize, k: usize, l: usize, p: i64) -> LaurentMatrix {
        LaurentMatrix::unit(2 * n, k - 1, l - 1, p, one())
    }

    #[test]
    fn table_examples() {
        assert_eq!(generator(GenKind::E, 0, 2).unwrap(), unit(2, 1, 4, 1));
        let h2 = unit(2, 3, 3, 0).sub(&unit(2, 2, 2, 0));
        assert_eq!(generator(GenKind::H, 2, 2).unwrap(), h2);
        assert!(generator(GenKind::E, 3, 2).is_err());
    }

    #[test]
    fn h_sum_vanishes() {
        for n in 2..=4 {
            let mut s = LaurentMatrix::zero(2 * n);
            for i in 0..=n {
                s = s.add(&generator(GenKind::H, i, n).unwrap());
            }
            assert!(s.is_zero());
        }
    }

    #[test]
    fn lambda_powers() {
        let l1 = lambda_power(1, 2).unwrap();
        let expect = unit(2, 2, 1, 0).add(&unit(2, 3, 2, 0)).add(&unit(2, 4, 3, 0)).add(&unit(2, 1, 4, 1));
        assert_eq!(l1, expect);
        let l3 = unit(2, 4, 1, 0).add(&unit(2, 1, 2, 1)).add(&unit(2, 2, 3, 1)).add(&unit(2, 3, 4, 1));
        assert_eq!(lambda_power(3, 2).unwrap(), l3);
        assert_eq!(l1.pow(3), l3);
        assert_eq!(l1.pow(4), LaurentMatrix::identity(4).shift_lambda(1));
        assert!(lambda_power(2, 2).unwrap().is_zero());
        for r in [-5i64, -3, -1, 5, 7, 9] {
            let lr = lambda_power(r, 3).unwrap();
            let by_mult = if r > 0 { shift_power(1, 3).pow(r as u32) } else { shift_power(-1, 3).pow((-r) as u32) };
            assert_eq!(lr, by_mult, "r = {r}");
            assert_eq!(lr.degrees().into_iter().collect::<Vec<_>>(), vec![r]);
        }
    }

    #[test]
    fn inverse_shift() {
        for n in 2..=4 {
            assert_eq!(shift_power(1, n).mul(&shift_power(-1, n)), LaurentMatrix::identity(2 * n));
        }
    }

    #[test]
    fn grading() {
        let lam = shift_power(1, 2);
        assert_eq!(lam.grade_project(1).matrix, lam);
        let h1 = generator(GenKind::H, 1, 2).unwrap();
        assert_eq!(h1.grade_project(0).matrix, h1);
        let g = XRat::from_int(7);
        let m = unit(2, 2, 2, 0).mul(&shift_power(-1, 2)).scale(&g);
        let gp = m.grade_project(-1);
        assert_eq!(gp.matrix, m);
        assert!(gp.is_homogeneous());
    }

    #[test]
    fn exp_ad_f_is_truncated_exponential() {
        let g = XRat::from_int(3);
        for n in 2..=3 {
            for j in 0..=n {
                let (e, einv) = exp_ad_f(j, &g, n).unwrap();
                assert_eq!(e.mul(&einv), LaurentMatrix::identity(2 * n));
                let nil = f_projector(j, n).mul(&shift_power(-1, n));
                assert!(nil.mul(&nil).is_zero());
                assert_eq!(nil, generator(GenKind::F, j, n).unwrap());
            }
            let (e, einv) = exp_ad_f(1, &XRat::zero(0), n).unwrap();
            assert_eq!(e, LaurentMatrix::identity(2 * n));
            assert_eq!(einv, LaurentMatrix::identity(2 * n));
        }
    }

    #[test]
    fn shift_identities() {
        assert!(shift_identities_check(2));
        assert!(shift_identities_check(3));
        let mut bad = shift_power(1, 2);
        bad.add_term(0, 0, 0, &one());
        assert!(!shift_identities_hold(&bad, &shift_power(-1, 2)));
    }

    #[test]
    fn h_diag_matches_generator() {
        for n in 2..=4 {
            for j in 0..=n {
                let h = generator(GenKind::H, j, n).unwrap();
                let d: Vec<XRat> = h_diag(j, n).into_iter().map(XRat::from_int).collect();
                assert_eq!(h, LaurentMatrix::from_diag(&d));
            }
        }
    }
}
