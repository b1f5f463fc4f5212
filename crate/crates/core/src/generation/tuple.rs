use rand::Rng;

use super::cartan::{CartanData, DegreeVector, GenSequence};
use crate::arith::linalg::{self, Solution};
use crate::arith::{ParamPoly, Rat, XPoly};
use crate::error::{Error, Result};

/// Monic polynomials `(y_0, .., y_n)` representing a critical point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyTuple {
    pub y: Vec<XPoly>,
}

impl PolyTuple {
    /// The tuple `(1, .., 1)`.
    pub fn empty(n: usize) -> Self {
        PolyTuple { y: vec![XPoly::one(0); n + 1] }
    }

    pub fn n(&self) -> usize {
        self.y.len() - 1
    }

    pub fn degrees(&self) -> DegreeVector {
        DegreeVector(self.y.iter().map(|p| p.degree().map(|d| d as i64).unwrap_or(-1)).collect())
    }

    pub fn is_monic(&self) -> bool {
        self.y.iter().all(|p| p.is_monic())
    }

    pub fn specialize(&self, c: &[Rat]) -> PolyTuple {
        PolyTuple { y: self.y.iter().map(|p| p.specialize(c)).collect() }
    }

    pub fn substitute(&self, assign: &[Option<Rat>]) -> PolyTuple {
        PolyTuple { y: self.y.iter().map(|p| p.substitute(assign)).collect() }
    }

    /// `prod_{j != i} y_j^{-a_{ji}}`, the Wronskian right-hand side in direction `i`.
    pub fn wronskian_rhs(&self, cartan: &CartanData, i: usize) -> XPoly {
        let mut acc = XPoly::one(0);
        for (j, yj) in self.y.iter().enumerate() {
            let e = cartan.rhs_exponent(j, i);
            if e > 0 {
                acc = &acc * &yj.pow(e);
            }
        }
        acc
    }
}

/// Result of one degree-increasing generation step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryGeneration {
    /// Monic, degree `k~_i`, zero coefficient at `x^{k_i}`.
    pub y_i0: XPoly,
    /// `Wr(y_i0, y_i) = eps * rhs`; equals `k_i - k~_i`.
    pub eps: i64,
}

/// Solves `Wr(y_i0, y_i) = eps * prod_{j != i} y_j^{-a_{ji}}` by a triangular
/// undetermined-coefficient solve with integer pivots `k_i - d`.
pub fn elementary_generate(y: &PolyTuple, i: usize) -> Result<ElementaryGeneration> {
    let n = y.n();
    let cartan = CartanData::new(n)?;
    if i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    if !y.is_monic() {
        return Err(Error::NotMonic);
    }
    let k = y.degrees();
    let kt = k.reflected(i);
    let ki = k.get(i);
    if kt <= ki {
        return Err(Error::NotDegreeIncreasing { step: 1, direction: i });
    }
    let yi = &y.y[i];
    let arity = y.y.iter().map(|p| p.arity()).max().unwrap_or(0);
    let eps = ki - kt;
    let rhs = y.wronskian_rhs(&cartan, i);
    // residual W = Wr(current, y_i) - eps * rhs, driven to zero top-down
    let lead = XPoly::monomial(ParamPoly::one(arity), kt as usize);
    let mut w = XPoly::wronskian(&lead, yi) - rhs.scale_rat(&Rat::from_int(eps));
    let mut coeffs = vec![ParamPoly::zero(arity); kt as usize + 1];
    coeffs[kt as usize] = ParamPoly::one(arity);
    for d in (0..kt).rev() {
        if d == ki {
            continue;
        }
        let p = d + ki - 1;
        if p < 0 {
            continue;
        }
        let pivot = Rat::from_int(ki - d);
        let a = -w.coeff(p as usize).scale(&pivot.recip()?);
        if a.is_zero() {
            continue;
        }
        let basis = XPoly::wronskian(&XPoly::monomial(ParamPoly::one(arity), d as usize), yi);
        w = &w + &basis.scale(&a);
        coeffs[d as usize] = a;
    }
    if !w.is_zero() {
        return Err(Error::NotFertile(i));
    }
    Ok(ElementaryGeneration { y_i0: XPoly::from_coeffs(coeffs).with_arity(arity), eps })
}

/// Record of one step of multistep generation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerationStep {
    pub direction: usize,
    pub eps: i64,
    pub y_i0: XPoly,
}

/// The tuples `Y^{(j_1..j_l)}` for every prefix, with symbolic parameters.
#[derive(Debug, Clone)]
pub struct GeneratedFamily {
    pub seq: GenSequence,
    /// `tuples[l]` is the tuple after `l` steps; it involves `c_1..c_l`.
    pub tuples: Vec<PolyTuple>,
    pub steps: Vec<GenerationStep>,
}

impl GeneratedFamily {
    pub fn tuple(&self) -> &PolyTuple {
        self.tuples.last().unwrap()
    }

    pub fn m(&self) -> usize {
        self.seq.len()
    }

    /// `y_{j_l}` after step `l` and before it.
    pub fn step_pair(&self, l: usize) -> (&XPoly, &XPoly) {
        let j = self.seq.js()[l - 1];
        (&self.tuples[l].y[j], &self.tuples[l - 1].y[j])
    }
}

pub fn generate_family(seq: &GenSequence) -> Result<GeneratedFamily> {
    let n = seq.n();
    let m = seq.len();
    let mut tuples = vec![PolyTuple::empty(n)];
    let mut steps = Vec::with_capacity(m);
    for (l, &j) in seq.js().iter().enumerate() {
        let prev = tuples.last().unwrap();
        let gen = elementary_generate(prev, j)?;
        let c = XPoly::constant(ParamPoly::var(l, m));
        let mut next = prev.clone();
        next.y[j] = (&gen.y_i0 + &(&c * &prev.y[j])).with_arity(m);
        steps.push(GenerationStep { direction: j, eps: gen.eps, y_i0: gen.y_i0 });
        tuples.push(next);
    }
    Ok(GeneratedFamily { seq: seq.clone(), tuples, steps })
}

/// The tuple `Y^J(c)` with symbolic `c_1..c_m`.
pub fn multistep_generate(seq: &GenSequence) -> Result<PolyTuple> {
    Ok(generate_family(seq)?.tuples.pop().unwrap())
}

/// Exact audit of one generation step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepAudit {
    pub step: usize,
    pub direction: usize,
    pub eps: i64,
    /// `Wr(y_j after, y_j before) = eps * rhs` as an identity in `(x, c)`.
    pub wronskian_holds: bool,
    /// Degrees of the tuple equal the reflected degree vector.
    pub degrees_match: bool,
}

impl StepAudit {
    pub fn passed(&self) -> bool {
        self.wronskian_holds && self.degrees_match
    }
}

/// Rechecks every step of a family against its defining equation.
pub fn audit_generation(family: &GeneratedFamily) -> Result<Vec<StepAudit>> {
    let cartan = CartanData::new(family.seq.n())?;
    let mut out = Vec::with_capacity(family.m());
    for (l, step) in family.steps.iter().enumerate() {
        let j = step.direction;
        let before = &family.tuples[l];
        let after = &family.tuples[l + 1];
        let lhs = XPoly::wronskian(&after.y[j], &before.y[j]);
        let rhs = before.wronskian_rhs(&cartan, j).scale_rat(&Rat::from_int(step.eps));
        out.push(StepAudit {
            step: l + 1,
            direction: j,
            eps: step.eps,
            wronskian_holds: (lhs - rhs).is_zero(),
            degrees_match: after.degrees() == *family.seq.degrees_after(l + 1),
        });
    }
    Ok(out)
}

/// Whether `Wr(y~, y_j) = rhs_j` has a polynomial solution in every direction,
/// for a tuple with rational coefficients.
pub fn is_fertile(y: &PolyTuple) -> Result<bool> {
    let n = y.n();
    let cartan = CartanData::new(n)?;
    for j in 0..=n {
        if !fertile_in_direction(y, &cartan, j)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn fertile_in_direction(y: &PolyTuple, cartan: &CartanData, j: usize) -> Result<bool> {
    let yj = &y.y[j];
    if !yj.is_numeric() {
        return Err(Error::Shape("fertility is decided for specialised tuples".into()));
    }
    let k = y.degrees();
    let bound = k.get(j).max(k.reflected(j)).max(0) as usize;
    let rhs = y.wronskian_rhs(cartan, j);
    let basis: Vec<Vec<Rat>> = (0..=bound)
        .map(|d| XPoly::wronskian(&XPoly::monomial(ParamPoly::one(0), d), yj).to_rats().unwrap_or_default())
        .collect();
    let rhs_r = rhs.to_rats().ok_or_else(|| Error::Shape("symbolic right-hand side".into()))?;
    let rows = basis.iter().map(|b| b.len()).chain([rhs_r.len()]).max().unwrap_or(0);
    let a: Vec<Vec<Rat>> = (0..rows)
        .map(|p| basis.iter().map(|b| b.get(p).cloned().unwrap_or_else(Rat::zero)).collect())
        .collect();
    let b: Vec<Rat> = (0..rows).map(|p| rhs_r.get(p).cloned().unwrap_or_else(Rat::zero)).collect();
    Ok(!matches!(linalg::solve(&a, &b), Solution::Inconsistent))
}

/// Square-free components and no common root between neighbours.
pub fn is_generic(y: &PolyTuple) -> bool {
    let squarefree = y.y.iter().all(|p| XPoly::gcd(p, &p.derivative()).degree() == Some(0));
    let coprime = y.y.windows(2).all(|w| XPoly::gcd(&w[0], &w[1]).degree() == Some(0));
    squarefree && coprime
}

/// Genericity of a symbolic family sampled at random rational points.
#[derive(Debug, Clone)]
pub struct GenericityReport {
    pub generic_points: Vec<Vec<Rat>>,
    pub exceptional_points: Vec<Vec<Rat>>,
}

pub fn certify_generic<R: Rng>(y: &PolyTuple, m: usize, samples: usize, rng: &mut R) -> GenericityReport {
    let mut report = GenericityReport { generic_points: Vec::new(), exceptional_points: Vec::new() };
    for _ in 0..samples {
        let c = random_point(m, 50, rng);
        if is_generic(&y.specialize(&c)) {
            report.generic_points.push(c);
        } else {
            report.exceptional_points.push(c);
        }
    }
    report
}

/// Random rational point with numerators and denominators bounded by `bound`.
pub fn random_point<R: Rng>(m: usize, bound: i64, rng: &mut R) -> Vec<Rat> {
    (0..m).map(|_| Rat::new(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(n: usize, js: &[usize]) -> GenSequence {
        GenSequence::new(n, js).unwrap()
    }

    fn c(i: usize, m: usize) -> XPoly {
        XPoly::constant(ParamPoly::var(i, m))
    }

    #[test]
    fn first_step_is_x() {
        for n in 2..=3 {
            for j in 0..=n {
                let g = elementary_generate(&PolyTuple::empty(n), j).unwrap();
                assert_eq!(g.y_i0, XPoly::x(0));
                assert_eq!(g.eps, -1);
            }
        }
    }

    #[test]
    fn second_step_example() {
        let x = XPoly::x(1);
        let y = PolyTuple { y: vec![&x + &c(0, 1), XPoly::one(0), XPoly::one(0)] };
        let g = elementary_generate(&y, 1).unwrap();
        let expect = &(&x * &x) + &(&x * &c(0, 1)).scale_rat(&Rat::from_int(2));
        assert_eq!(g.y_i0, expect);
        assert_eq!(g.eps, -2);
    }

    #[test]
    fn multistep_examples() {
        assert_eq!(multistep_generate(&seq(2, &[])).unwrap(), PolyTuple::empty(2));
        let t = multistep_generate(&seq(2, &[1])).unwrap();
        assert_eq!(t.y[1], &XPoly::x(1) + &c(0, 1));
        assert!(t.y[0].is_one() && t.y[2].is_one());
        let t = multistep_generate(&seq(2, &[0, 1])).unwrap();
        let x = XPoly::x(2);
        assert_eq!(t.y[0], &x + &c(0, 2));
        let y1 = &(&(&x * &x) + &(&x * &c(0, 2)).scale_rat(&Rat::from_int(2))) + &c(1, 2);
        assert_eq!(t.y[1], y1);
        assert!(t.y[2].is_one());
    }

    #[test]
    fn fertility() {
        assert!(is_fertile(&PolyTuple::empty(2)).unwrap());
        let x = XPoly::x(0);
        let bad = PolyTuple { y: vec![&x * &x, XPoly::one(0), XPoly::one(0)] };
        assert!(!is_fertile(&bad).unwrap());
        assert!(!is_generic(&bad));
        let t = multistep_generate(&seq(2, &[0, 1, 2])).unwrap();
        let pt = t.specialize(&[Rat::new(3, 7), Rat::new(-2, 5), Rat::from_int(4)]);
        assert!(is_fertile(&pt).unwrap());
    }

    #[test]
    fn not_fertile_is_an_error() {
        // x^2 / (x+1)^2 has a nonzero residue, so Wr(y~, x+1) = eps x^2 has no polynomial solution
        let y = PolyTuple { y: vec![XPoly::from_ints(&[0, 0, 1]), XPoly::from_ints(&[1, 1]), XPoly::one(0)] };
        assert_eq!(elementary_generate(&y, 1), Err(Error::NotFertile(1)));
        assert!(!is_fertile(&y).unwrap());
        let x = XPoly::x(0);
        let bad = PolyTuple { y: vec![&x * &x, XPoly::one(0), XPoly::one(0)] };
        assert!(matches!(elementary_generate(&bad, 0), Err(Error::NotDegreeIncreasing { .. })));
    }

    #[test]
    fn genericity() {
        assert!(is_generic(&PolyTuple::empty(3)));
        let shared = PolyTuple { y: vec![XPoly::from_ints(&[0, 1, 1]), XPoly::x(0), XPoly::one(0)] };
        assert!(!is_generic(&shared));
    }
}
