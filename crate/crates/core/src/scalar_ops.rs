//! Scalar differential operators with rational-function coefficients, the
//! cyclic Miura maps of a Miura oper, their tangent maps and the linear
//! constraints imposed by vanishing subleading tangent coefficients.

use std::fmt;

use crate::arith::linalg::rref;
use crate::arith::{Rat, XRat};
use crate::error::{Error, Result};
use crate::miura::MiuraOper;

/// `sum_k coeffs[k] d^k`, trailing zero coefficients trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarDiffOp {
    coeffs: Vec<XRat>,
}

fn binomial(k: usize, i: usize) -> Rat {
    let mut acc = Rat::one();
    for t in 0..i {
        acc = &(&acc * &Rat::from_int((k - t) as i64)) / &Rat::from_int((t + 1) as i64);
    }
    acc
}

impl ScalarDiffOp {
    pub fn new(mut coeffs: Vec<XRat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ScalarDiffOp { coeffs }
    }

    pub fn zero() -> Self {
        ScalarDiffOp { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::multiplication(XRat::one(0))
    }

    /// Multiplication by a function.
    pub fn multiplication(u: XRat) -> Self {
        Self::new(vec![u])
    }

    /// `d^k`.
    pub fn d_power(k: usize) -> Self {
        let mut coeffs = vec![XRat::zero(0); k + 1];
        coeffs[k] = XRat::one(0);
        ScalarDiffOp { coeffs }
    }

    /// `d + u`.
    pub fn first_order(u: XRat) -> Self {
        Self::new(vec![u, XRat::one(0)])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[XRat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> XRat {
        self.coeffs.get(k).cloned().unwrap_or_else(|| XRat::zero(0))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.constant_value().is_some_and(|r| r.is_one()))
    }

    pub fn add(&self, o: &ScalarDiffOp) -> ScalarDiffOp {
        let len = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..len).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }

    pub fn neg(&self) -> ScalarDiffOp {
        ScalarDiffOp { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, o: &ScalarDiffOp) -> ScalarDiffOp {
        self.add(&o.neg())
    }

    /// Left multiplication of every coefficient by `u`.
    pub fn scale(&self, u: &XRat) -> ScalarDiffOp {
        Self::new(self.coeffs.iter().map(|c| u * c).collect())
    }

    /// Composition, with `d^i u = sum_t C(i, t) u^{(t)} d^{i-t}`.
    pub fn mul(&self, o: &ScalarDiffOp) -> ScalarDiffOp {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let top = self.coeffs.len() - 1;
        // derivs[t][j] = (t-th derivative of o.coeffs[j])
        let mut derivs = vec![o.coeffs.clone()];
        for t in 1..=top {
            let next: Vec<XRat> = derivs[t - 1].iter().map(|c| c.derivative()).collect();
            derivs.push(next);
        }
        let mut out = vec![XRat::zero(0); top + o.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for t in 0..=i {
                let c = binomial(i, t);
                for (j, b) in derivs[t].iter().enumerate() {
                    if b.is_zero() {
                        continue;
                    }
                    let term = (a * b).scale_rat(&c);
                    out[i - t + j] = &out[i - t + j] + &term;
                }
            }
        }
        Self::new(out)
    }

    pub fn specialize(&self, c: &[Rat]) -> Result<ScalarDiffOp> {
        Ok(Self::new(self.coeffs.iter().map(|x| x.specialize(c)).collect::<Result<_>>()?))
    }

    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for ScalarDiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})*d"),
                _ => format!("({c})*d^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Diagonal tangent vector to the space of Miura opers:
/// `X_j + X_{2n+1-j} = 0`, so in particular `sum X_k = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentVector {
    x: Vec<XRat>,
}

impl TangentVector {
    pub fn new(x: Vec<XRat>) -> Result<Self> {
        let s = x.len();
        if s < 4 || s % 2 == 1 {
            return Err(Error::Shape(format!("tangent vector of length {s}")));
        }
        for j in 0..s / 2 {
            if !(&x[j] + &x[s - 1 - j]).is_zero() {
                return Err(Error::Shape(format!("X_{} + X_{} != 0", j + 1, s - j)));
            }
        }
        Ok(TangentVector { x })
    }

    /// Mirror-extends the first half `X_1..X_n`.
    pub fn from_half(half: &[XRat]) -> Result<Self> {
        let mut x = half.to_vec();
        x.extend(half.iter().rev().map(|c| -c));
        Self::new(x)
    }

    pub fn zero(n: usize) -> Self {
        TangentVector { x: vec![XRat::zero(0); 2 * n] }
    }

    pub fn n(&self) -> usize {
        self.x.len() / 2
    }

    pub fn x(&self) -> &[XRat] {
        &self.x
    }
}

/// 1-based indices `k` of the factors `d - v_k` of `m_i`, left to right:
/// `i, i-1, .., 1, 2n, .., i+1`.
fn factor_order(n: usize, i: usize) -> Vec<usize> {
    let s = 2 * n;
    (0..s).map(|p| (i + 2 * s - p - 1) % s + 1).collect()
}

fn check_index(n: usize, i: usize) -> Result<()> {
    if i > 2 * n {
        return Err(Error::IndexOutOfRange { index: i, max: 2 * n });
    }
    Ok(())
}

/// `m_i(L) = (d - v_i)..(d - v_1)(d - v_{2n})..(d - v_{i+1})`; `m_0 = m_{2n}`.
pub fn miura_map(l: &MiuraOper, i: usize) -> Result<ScalarDiffOp> {
    let n = l.n();
    check_index(n, i)?;
    let v = l.v();
    Ok(factor_order(n, i)
        .into_iter()
        .fold(ScalarDiffOp::one(), |acc, k| acc.mul(&ScalarDiffOp::first_order(-&v[k - 1]))))
}

/// Differential of `m_i` at `L` applied to `X`: each factor `d - v_k` in
/// turn replaced by `-X_k`.
pub fn tangent_miura(l: &MiuraOper, x: &TangentVector, i: usize) -> Result<ScalarDiffOp> {
    let n = l.n();
    check_index(n, i)?;
    if x.n() != n {
        return Err(Error::Shape(format!("tangent vector of rank {} at an oper of rank {n}", x.n())));
    }
    let order = factor_order(n, i);
    let factors: Vec<ScalarDiffOp> = order.iter().map(|&k| ScalarDiffOp::first_order(-&l.v()[k - 1])).collect();
    let s = factors.len();
    // suffix[p] = factors[p] .. factors[s-1]
    let mut suffix = vec![ScalarDiffOp::one(); s + 1];
    for p in (0..s).rev() {
        suffix[p] = factors[p].mul(&suffix[p + 1]);
    }
    let mut prefix = ScalarDiffOp::one();
    let mut acc = ScalarDiffOp::zero();
    for p in 0..s {
        let xk = &x.x[order[p] - 1];
        if !xk.is_zero() {
            let term = prefix.mul(&ScalarDiffOp::multiplication(-xk)).mul(&suffix[p + 1]);
            acc = acc.add(&term);
        }
        prefix = prefix.mul(&factors[p]);
    }
    Ok(acc)
}

/// Closed form of the `d^{2n-2}` coefficient of the tangent image:
/// `-(sum v_k X_k + sum_{k<=i} (i-k) X_k' + sum_{k>i} (i+2n-k) X_k')`.
pub fn leading_tangent_coeff(l: &MiuraOper, x: &TangentVector, i: usize) -> Result<XRat> {
    let n = l.n();
    check_index(n, i)?;
    let i = i % (2 * n);
    let mut acc = XRat::zero(0);
    for k in 1..=2 * n {
        let xk = &x.x[k - 1];
        if xk.is_zero() {
            continue;
        }
        acc = &acc + &(&l.v()[k - 1] * xk);
        let w = if k <= i { i - k } else { i + 2 * n - k };
        acc = &acc + &xk.derivative().scale_rat(&Rat::from_int(w as i64));
    }
    Ok(-acc)
}

/// Which kernel computation an excluded index set corresponds to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExcludedSet {
    /// `{0, 2n}`: constraints from `i = 1..2n-1`.
    Ends,
    /// `{j, 2n-j}` with `1 <= j <= n-1`.
    Pair(usize),
    /// `{n}`.
    Middle,
}

impl ExcludedSet {
    /// Classifies a set of indices in `0..=2n`.
    pub fn classify(n: usize, excluded: &[usize]) -> Result<Self> {
        let mut e: Vec<usize> = excluded.iter().map(|&i| if i == 2 * n { 0 } else { i }).collect();
        e.sort_unstable();
        e.dedup();
        match e.as_slice() {
            [0] => Ok(ExcludedSet::Ends),
            [i] if *i == n => Ok(ExcludedSet::Middle),
            [a, b] if *a >= 1 && *a < n && *b == 2 * n - a => Ok(ExcludedSet::Pair(*a)),
            _ => Err(Error::Unsupported(format!("excluded index set {excluded:?} for rank {n}"))),
        }
    }

    /// Indices `i` in `0..2n` whose subleading coefficient is assumed to vanish.
    pub fn kept_indices(&self, n: usize) -> Vec<usize> {
        let out: Vec<usize> = (0..2 * n).collect();
        match *self {
            ExcludedSet::Ends => out.into_iter().filter(|&i| i != 0).collect(),
            ExcludedSet::Pair(j) => out.into_iter().filter(|&i| i != j && i != 2 * n - j).collect(),
            ExcludedSet::Middle => out.into_iter().filter(|&i| i != n).collect(),
        }
    }
}

/// A linear relation `sum_k a_k X_k' + b S = 0` with `S = sum_{k=1}^{2n} v_k X_k`.
/// `coeffs` holds `a_1..a_n` followed by `b`; the mirror components are
/// eliminated through `X_{2n+1-k}' = -X_k'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelRelation {
    pub coeffs: Vec<Rat>,
}

impl KernelRelation {
    /// `X_k' = 0` for `k` in `1..=2n`.
    pub fn derivative_vanishes(n: usize, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); n + 1];
        let half = if k <= n { k } else { 2 * n + 1 - k };
        coeffs[half - 1] = Rat::one();
        KernelRelation { coeffs }
    }

    /// `sum_k a_k X_k' + b S = 0` from `(k, a_k)` pairs with `k` in `1..=2n`.
    pub fn from_terms(n: usize, terms: &[(usize, i64)], s_coeff: i64) -> Self {
        let mut coeffs = vec![Rat::zero(); n + 1];
        for &(k, a) in terms {
            let (half, sign) = if k <= n { (k, 1) } else { (2 * n + 1 - k, -1) };
            coeffs[half - 1] = &coeffs[half - 1] + &Rat::from_int(sign * a);
        }
        coeffs[n] = Rat::from_int(s_coeff);
        KernelRelation { coeffs }
    }

    pub fn involves_potential(&self) -> bool {
        !self.coeffs.last().unwrap().is_zero()
    }

    /// Value of the left-hand side at a concrete oper and tangent vector.
    pub fn evaluate(&self, l: &MiuraOper, x: &TangentVector) -> XRat {
        let n = self.coeffs.len() - 1;
        let mut acc = XRat::zero(0);
        for k in 0..n {
            if !self.coeffs[k].is_zero() {
                acc = &acc + &x.x[k].derivative().scale_rat(&self.coeffs[k]);
            }
        }
        if self.involves_potential() {
            let s = l.v().iter().zip(&x.x).fold(XRat::zero(0), |a, (v, xk)| &a + &(v * xk));
            acc = &acc + &s.scale_rat(&self.coeffs[n]);
        }
        acc
    }
}

impl fmt::Display for KernelRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.coeffs.len() - 1;
        let mut parts = Vec::new();
        for (k, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let name = if k < n { format!("X{}'", k + 1) } else { "S".to_string() };
            parts.push(if a.is_one() { name } else { format!("{a}*{name}") });
        }
        write!(f, "{} = 0", if parts.is_empty() { "0".to_string() } else { parts.join(" + ") })
    }
}

/// Reduced row echelon basis of the relations implied by the vanishing of
/// the subleading tangent coefficients outside an excluded set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelReport {
    pub n: usize,
    pub case: ExcludedSet,
    pub relations: Vec<KernelRelation>,
}

impl KernelReport {
    /// Whether `rel` lies in the span of the reported relations.
    pub fn implies(&self, rel: &KernelRelation) -> bool {
        let mut m: Vec<Vec<Rat>> = self.relations.iter().map(|r| r.coeffs.clone()).collect();
        let rank = m.len();
        m.push(rel.coeffs.clone());
        rref(&mut m).len() == rank
    }

    /// Components `k` in `1..=2n` whose derivative is forced to vanish.
    pub fn vanishing_derivatives(&self) -> Vec<usize> {
        (1..=2 * self.n).filter(|&k| self.implies(&KernelRelation::derivative_vanishes(self.n, k))).collect()
    }

    /// The reported relations that involve `S`, i.e. the first-order ODEs.
    pub fn odes(&self) -> Vec<&KernelRelation> {
        self.relations.iter().filter(|r| r.involves_potential()).collect()
    }

    /// Residuals of every relation at a concrete oper and tangent vector.
    pub fn residuals(&self, l: &MiuraOper, x: &TangentVector) -> Vec<XRat> {
        self.relations.iter().map(|r| r.evaluate(l, x)).collect()
    }
}

/// Row of the subleading-coefficient equation for `m_i` in the unknowns
/// `X_1'..X_n', S` (up to the overall sign).
fn subleading_row(n: usize, i: usize) -> Vec<Rat> {
    let terms: Vec<(usize, i64)> =
        (1..=2 * n).map(|k| (k, if k <= i { (i - k) as i64 } else { (i + 2 * n - k) as i64 })).collect();
    KernelRelation::from_terms(n, &terms, 1).coeffs
}

pub fn kernel_solve(l: &MiuraOper, excluded: &[usize]) -> Result<KernelReport> {
    let n = l.n();
    let case = ExcludedSet::classify(n, excluded)?;
    let mut m: Vec<Vec<Rat>> = case.kept_indices(n).into_iter().map(|i| subleading_row(n, i)).collect();
    rref(&mut m);
    Ok(KernelReport { n, case, relations: m.into_iter().map(|coeffs| KernelRelation { coeffs }).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::XPoly;
    use crate::generation::{generate_family, GenSequence};
    use crate::miura::mu_j;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn xr(num: &[i64], den: &[i64]) -> XRat {
        XRat::new(XPoly::from_ints(num), XPoly::from_ints(den)).unwrap()
    }

    fn random_xrat(rng: &mut ChaCha8Rng) -> XRat {
        let num: Vec<i64> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(-4..=4)).collect();
        let shift = rng.gen_range(-3..=3);
        if rng.gen_bool(0.5) {
            xr(&num, &[1])
        } else {
            xr(&num, &[shift, 1])
        }
    }

    fn random_oper(n: usize, rng: &mut ChaCha8Rng) -> MiuraOper {
        let half: Vec<XRat> = (0..n).map(|_| random_xrat(rng)).collect();
        let mut v = half.clone();
        v.extend(half.iter().rev().map(|c| -c));
        MiuraOper::new(v).unwrap()
    }

    fn random_tangent(n: usize, rng: &mut ChaCha8Rng) -> TangentVector {
        let half: Vec<XRat> = (0..n).map(|_| random_xrat(rng)).collect();
        TangentVector::from_half(&half).unwrap()
    }

    /// `d/d eps` at 0 of `m_i(L + eps X)`, which is polynomial in `eps` of
    /// degree at most `2n`: Lagrange differentiation through `eps = 0..=2n`.
    fn eps_oracle(l: &MiuraOper, x: &TangentVector, i: usize) -> ScalarDiffOp {
        let pts: Vec<Rat> = (0..=2 * l.n() as i64).map(Rat::from_int).collect();
        let mut acc = ScalarDiffOp::zero();
        for (k, xk) in pts.iter().enumerate() {
            let mut w = Rat::zero();
            for (j, xj) in pts.iter().enumerate() {
                if j == k {
                    continue;
                }
                let mut term = (xk - xj).recip().unwrap();
                for (t, xt) in pts.iter().enumerate() {
                    if t != k && t != j {
                        term = &term * &(&(-xt) / &(xk - xt));
                    }
                }
                w = &w + &term;
            }
            let v: Vec<XRat> = l.v().iter().zip(x.x()).map(|(v, d)| v + &d.scale_rat(xk)).collect();
            let img = miura_map(&MiuraOper::new(v).unwrap(), i).unwrap();
            acc = acc.add(&img.scale(&XRat::from_rat(w)));
        }
        acc
    }

    #[test]
    fn leibniz_examples() {
        let u = xr(&[1, 2, 3], &[1, 1]);
        let du_u = ScalarDiffOp::d_power(1).mul(&ScalarDiffOp::multiplication(u.clone()));
        assert_eq!(du_u, ScalarDiffOp::new(vec![u.derivative(), u.clone()]));
        let v = xr(&[0, 1], &[2, 1]);
        let lhs = ScalarDiffOp::first_order(-&v).mul(&ScalarDiffOp::first_order(v.clone()));
        let expect = ScalarDiffOp::new(vec![&v.derivative() - &(&v * &v), XRat::zero(0), XRat::one(0)]);
        assert_eq!(lhs, expect);
        let a = ScalarDiffOp::new(vec![u.clone(), v.clone(), XRat::one(0)]);
        assert_eq!(a.mul(&ScalarDiffOp::one()), a);
        assert_eq!(ScalarDiffOp::one().mul(&a), a);
    }

    #[test]
    fn composition_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let ops: Vec<ScalarDiffOp> = (0..3)
                .map(|_| ScalarDiffOp::new((0..3).map(|_| random_xrat(&mut rng)).collect()))
                .collect();
            assert_eq!(ops[0].mul(&ops[1]).mul(&ops[2]), ops[0].mul(&ops[1].mul(&ops[2])));
        }
    }

    #[test]
    fn trivial_oper_maps_to_power_of_d() {
        for n in 2..=3 {
            let l = MiuraOper::trivial(n);
            for i in 0..=2 * n {
                assert_eq!(miura_map(&l, i).unwrap(), ScalarDiffOp::d_power(2 * n));
            }
        }
    }

    #[test]
    fn first_family_member_n2() {
        let fam = generate_family(&GenSequence::new(2, &[1]).unwrap()).unwrap();
        let mu = mu_j(&fam).unwrap().specialize(&[Rat::from_int(3)]).unwrap();
        let g = xr(&[1], &[3, 1]);
        let m0 = miura_map(&mu, 0).unwrap();
        // factors (d - v_4)(d - v_3)(d - v_2)(d - v_1) with v read off the oper
        let v = mu.v();
        let expect = [3, 2, 1, 0]
            .iter()
            .fold(ScalarDiffOp::one(), |acc, &k| acc.mul(&ScalarDiffOp::first_order(-&v[k])));
        assert_eq!(m0, expect);
        assert!(v.iter().all(|vk| *vk == g || *vk == -&g));
    }

    #[test]
    fn miura_images_are_traceless_and_cyclic() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=3 {
            let l = random_oper(n, &mut rng);
            assert_eq!(miura_map(&l, 0).unwrap(), miura_map(&l, 2 * n).unwrap());
            for i in 0..2 * n {
                let m = miura_map(&l, i).unwrap();
                assert_eq!(m.order(), Some(2 * n));
                assert!(m.is_monic());
                assert!(m.coeff(2 * n - 1).is_zero());
            }
        }
    }

    #[test]
    fn tangent_matches_eps_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for trial in 0..12 {
            let n = 2 + trial % 2;
            let l = random_oper(n, &mut rng);
            let x = random_tangent(n, &mut rng);
            let i = rng.gen_range(0..2 * n);
            let z = tangent_miura(&l, &x, i).unwrap();
            assert_eq!(z, eps_oracle(&l, &x, i));
            assert!(z.order().is_none_or(|o| o <= 2 * n - 2));
            assert_eq!(leading_tangent_coeff(&l, &x, i).unwrap(), z.coeff(2 * n - 2));
        }
    }

    #[test]
    fn tangent_degenerate_cases() {
        let l = MiuraOper::trivial(2);
        assert!(tangent_miura(&l, &TangentVector::zero(2), 1).unwrap().is_zero());
        assert!(leading_tangent_coeff(&l, &TangentVector::zero(2), 1).unwrap().is_zero());
        let x = TangentVector::from_half(&[XRat::from_int(2), XRat::from_int(-5)]).unwrap();
        for i in 0..4 {
            assert!(leading_tangent_coeff(&l, &x, i).unwrap().is_zero());
        }
    }

    #[test]
    fn kernel_ends() {
        for n in 2..=4 {
            let rep = kernel_solve(&MiuraOper::trivial(n), &[0, 2 * n]).unwrap();
            assert_eq!(rep.case, ExcludedSet::Ends);
            assert!(rep.implies(&KernelRelation::from_terms(n, &[(1, 1)], -1)));
            let expect: Vec<usize> = (2..2 * n).collect();
            assert_eq!(rep.vanishing_derivatives(), expect);
            assert_eq!(rep.odes().len(), 1);
        }
    }

    #[test]
    fn kernel_pair() {
        for n in 2..=4 {
            for j in 1..n {
                let rep = kernel_solve(&MiuraOper::trivial(n), &[j, 2 * n - j]).unwrap();
                assert!(rep.implies(&KernelRelation::from_terms(n, &[(j, 1), (j + 1, 1)], 0)));
                assert!(rep.implies(&KernelRelation::from_terms(n, &[(j, 2)], 1)));
                let expect: Vec<usize> =
                    (1..=2 * n).filter(|k| ![j, j + 1, 2 * n - j, 2 * n + 1 - j].contains(k)).collect();
                assert_eq!(rep.vanishing_derivatives(), expect);
                assert!(!rep.implies(&KernelRelation::derivative_vanishes(n, j)));
            }
        }
    }

    #[test]
    fn kernel_middle() {
        for n in 2..=4 {
            let rep = kernel_solve(&MiuraOper::trivial(n), &[n]).unwrap();
            assert!(rep.implies(&KernelRelation::from_terms(n, &[(n, 1)], 1)));
            let expect: Vec<usize> = (1..=2 * n).filter(|&k| k != n && k != n + 1).collect();
            assert_eq!(rep.vanishing_derivatives(), expect);
        }
    }

    #[test]
    fn kernel_rejects_other_sets() {
        let l = MiuraOper::trivial(3);
        assert!(matches!(kernel_solve(&l, &[1]), Err(Error::Unsupported(_))));
        assert!(matches!(kernel_solve(&l, &[1, 4]), Err(Error::Unsupported(_))));
        assert!(kernel_solve(&l, &[2, 4]).is_ok());
    }

    #[test]
    fn kernel_rows_match_tangent_oracle() {
        // Coefficient of X_k' read from the Leibniz expansion at v = 0 with
        // X_k = x, X_{2n+1-k} = -x.
        for n in 2..=3 {
            let l = MiuraOper::trivial(n);
            for i in 0..2 * n {
                let row = subleading_row(n, i);
                for k in 1..=n {
                    let mut half = vec![XRat::zero(0); n];
                    half[k - 1] = xr(&[0, 1], &[1]);
                    let x = TangentVector::from_half(&half).unwrap();
                    let z = tangent_miura(&l, &x, i).unwrap().coeff(2 * n - 2);
                    assert_eq!(z, XRat::from_rat(-&row[k - 1]));
                }
            }
        }
    }

    #[test]
    fn kernel_relations_hold_on_family_derivative() {
        // d mu / d c_1 for J = (j) is killed by every m_i outside the
        // excluded set, so each reported relation must vanish on it.
        for n in 2..=3 {
            for j in 0..=n {
                let fam = generate_family(&GenSequence::new(n, &[j]).unwrap()).unwrap();
                let mu = mu_j(&fam).unwrap();
                let c = [Rat::new(2, 3)];
                let l = mu.specialize(&c).unwrap();
                let x = TangentVector::new(
                    crate::miura::dmu_dc(&mu, 1).iter().map(|f| f.specialize(&c).unwrap()).collect(),
                )
                .unwrap();
                let excluded = if j == 0 { vec![0] } else if j == n { vec![n] } else { vec![j, 2 * n - j] };
                let rep = kernel_solve(&l, &excluded).unwrap();
                for r in rep.residuals(&l, &x) {
                    assert!(r.is_zero(), "n={n} j={j}");
                }
            }
        }
    }
}
