use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::flow::{check_flow_index, mkdv_field, oper_at, zero_by_degree_support};
use crate::arith::linalg::{solve, Solution};
use crate::arith::{ParamPoly, Rat, XRat};
use crate::error::{Error, Result};
use crate::generation::{random_point, GeneratedFamily};
use crate::miura::dmu_dc_at;

/// Hard cap on the interpolation degree.
pub const DEGREE_CAP: u32 = 32;

/// Coefficient bound of sample coordinates.
pub const SAMPLE_BOUND: i64 = 50;

/// `Gamma_r = sum_i gamma_i(c) d/dc_i` realizing the r-th flow on a cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellVectorField {
    pub js: Vec<usize>,
    pub r: u32,
    pub gamma: Vec<ParamPoly>,
    /// Degree budget in force when the interpolant was accepted.
    pub degree_budget: u32,
    /// Total degree of the accepted interpolant.
    pub degree: u32,
    pub fit_samples: usize,
    pub held_out: usize,
}

/// Per-sample solution of `field(c) = sum_i gamma_i dmu/dc_i (c)`.
#[derive(Debug, Clone)]
pub struct SampleSolution {
    pub c: Vec<Rat>,
    pub gamma: Vec<Rat>,
}

/// Rational abscissae avoiding the poles of every entry.
fn evaluation_points(fields: &[&[XRat]], count: usize) -> Vec<Rat> {
    let mut out = Vec::new();
    let mut k = 0i64;
    while out.len() < count {
        k += 1;
        let x = Rat::new(k * 7 - 3, 2 + k % 5);
        if fields.iter().all(|f| f.iter().all(|e| e.eval_rat(&x).is_ok())) {
            out.push(x);
        }
    }
    out
}

/// Exact coefficients `gamma` with `target = sum_i gamma_i basis_i`, or
/// `None` when the basis is degenerate at this point.
pub fn decompose(target: &[XRat], basis: &[Vec<XRat>]) -> Result<Option<Vec<Rat>>> {
    let m = basis.len();
    let mut all: Vec<&[XRat]> = basis.iter().map(|b| b.as_slice()).collect();
    all.push(target);
    let xs = evaluation_points(&all, m + 4);
    let mut a = Vec::new();
    let mut b = Vec::new();
    for x in &xs {
        for k in 0..target.len() {
            a.push(basis.iter().map(|v| v[k].eval_rat(x)).collect::<Result<Vec<_>>>()?);
            b.push(target[k].eval_rat(x)?);
        }
    }
    let gamma = match solve(&a, &b) {
        Solution::Unique(g) => g,
        Solution::Underdetermined(_) => return Ok(None),
        Solution::Inconsistent => {
            return Err(Error::Verification("flow field is not a combination of parameter derivatives".into()))
        }
    };
    // exact confirmation as rational functions of x
    for k in 0..target.len() {
        let combo = basis.iter().zip(&gamma).fold(XRat::zero(0), |acc, (v, g)| &acc + &v[k].scale_rat(g));
        if combo != target[k] {
            return Err(Error::Verification(format!("entry {} differs from the fitted combination", k + 1)));
        }
    }
    Ok(Some(gamma))
}

/// Solves for `gamma(c)` at one point; `Ok(None)` flags a singular sample.
pub fn solve_at(family: &GeneratedFamily, c: &[Rat], r: u32) -> Result<Option<SampleSolution>> {
    let m = family.m();
    if oper_at(family, c).is_err() {
        return Ok(None);
    }
    let field = match mkdv_field(family, c, r) {
        Ok(f) => f,
        Err(Error::Singular(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let basis = (1..=m).map(|i| dmu_dc_at(family, i, c)).collect::<Result<Vec<_>>>()?;
    Ok(decompose(&field.entries, &basis)?.map(|gamma| SampleSolution { c: c.to_vec(), gamma }))
}

/// Exponent vectors of total degree `<= d` in `m` variables.
pub fn monomials(m: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        let mut next = Vec::new();
        for e in &out {
            let used: u32 = e.iter().sum();
            for k in 0..=d - used {
                let mut f = e.clone();
                f.push(k);
                next.push(f);
            }
        }
        out = next;
    }
    out
}

fn monomial_value(c: &[Rat], e: &[u32]) -> Rat {
    c.iter().zip(e).fold(Rat::one(), |acc, (ci, &k)| &acc * &ci.pow(k))
}

/// Fits polynomials of total degree `<= d` to the first samples; `None`
/// if no such polynomial fits them.
fn fit(samples: &[SampleSolution], m: usize, d: u32) -> Option<Vec<ParamPoly>> {
    let mons = monomials(m, d);
    let rows: Vec<Vec<Rat>> = samples.iter().map(|s| mons.iter().map(|e| monomial_value(&s.c, e)).collect()).collect();
    let mut out = Vec::new();
    for i in 0..m {
        let rhs: Vec<Rat> = samples.iter().map(|s| s.gamma[i].clone()).collect();
        match solve(&rows, &rhs) {
            Solution::Unique(coeffs) => {
                out.push(ParamPoly::from_terms(m, mons.iter().cloned().zip(coeffs)));
            }
            _ => return None,
        }
    }
    Some(out)
}

/// Accumulates solved samples in parallel batches.
struct SamplePool<'a> {
    family: &'a GeneratedFamily,
    r: u32,
    rng: ChaCha8Rng,
    solved: Vec<SampleSolution>,
    rejected: usize,
}

impl SamplePool<'_> {
    fn fill(&mut self, want: usize) -> Result<()> {
        let m = self.family.m();
        while self.solved.len() < want {
            let batch = (want - self.solved.len()).max(rayon::current_num_threads());
            let points: Vec<Vec<Rat>> = (0..batch).map(|_| random_point(m, SAMPLE_BOUND, &mut self.rng)).collect();
            let results: Vec<Result<Option<SampleSolution>>> =
                points.par_iter().map(|c| solve_at(self.family, c, self.r)).collect();
            for res in results {
                match res? {
                    Some(s) => self.solved.push(s),
                    None => self.rejected += 1,
                }
            }
            if self.rejected > 100 * want.max(1) {
                return Err(Error::Singular("too many samples on the singular locus".into()));
            }
        }
        Ok(())
    }
}

/// Interpolates `Gamma_r` from exact per-sample solves, accepting the
/// lowest total degree whose fit is confirmed on `m + 3` held-out samples.
/// The degree budget starts at `2m + r` and doubles up to `DEGREE_CAP`.
pub fn gamma_extract(family: &GeneratedFamily, r: u32, seed: u64) -> Result<CellVectorField> {
    check_flow_index(r)?;
    let m = family.m();
    if m == 0 {
        return Err(Error::EmptySequence);
    }
    let held_out = m + 3;
    let mut pool = SamplePool { family, r, rng: ChaCha8Rng::seed_from_u64(seed), solved: Vec::new(), rejected: 0 };
    let mut budget = (2 * m as u32 + r).min(DEGREE_CAP);
    let mut d = 0u32;
    loop {
        while d <= budget {
            let fit_count = monomials(m, d).len() + 2;
            pool.fill(fit_count + held_out)?;
            let (train, test) = pool.solved.split_at(fit_count);
            if let Some(gamma) = fit(train, m, d) {
                let ok = test[..held_out]
                    .iter()
                    .all(|s| gamma.iter().zip(&s.gamma).all(|(p, g)| p.eval(&s.c) == *g));
                if ok {
                    return Ok(CellVectorField {
                        js: family.seq.js().to_vec(),
                        r,
                        gamma,
                        degree_budget: budget,
                        degree: d,
                        fit_samples: fit_count,
                        held_out,
                    });
                }
            }
            d += 1;
        }
        if budget >= DEGREE_CAP {
            return Err(Error::BudgetExhausted(budget as usize));
        }
        budget = (budget * 2).min(DEGREE_CAP);
    }
}

/// Outcome of checking the flow on a cell against the polynomial-field claim.
#[derive(Debug, Clone)]
pub struct CellFlowReport {
    pub js: Vec<usize>,
    pub r: u32,
    pub m: usize,
    pub gamma: Vec<ParamPoly>,
    pub verified: bool,
    pub zero_field: bool,
    /// `r > 2m` and the degree-support argument applies.
    pub zero_by_support: bool,
    pub samples: usize,
    pub degree_budget: Option<u32>,
    pub degree: Option<u32>,
}

/// For `r > 2m` checks the field vanishes exactly at `samples` points and
/// structurally; otherwise extracts and verifies `Gamma_r`.
pub fn verify_cell_flow(family: &GeneratedFamily, r: u32, samples: usize, seed: u64) -> Result<CellFlowReport> {
    check_flow_index(r)?;
    let m = family.m();
    let js = family.seq.js().to_vec();
    if r as usize > 2 * m {
        let by_support = zero_by_degree_support(&family.seq, r);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut zero = true;
        let mut done = 0;
        let mut tries = 0;
        while done < samples.max(5) {
            tries += 1;
            if tries > 100 * samples.max(5) {
                return Err(Error::Singular("too many samples on the singular locus".into()));
            }
            let c = random_point(m, SAMPLE_BOUND, &mut rng);
            match mkdv_field(family, &c, r) {
                Ok(f) => {
                    zero &= f.is_zero();
                    done += 1;
                }
                Err(Error::Singular(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        return Ok(CellFlowReport {
            js,
            r,
            m,
            gamma: vec![ParamPoly::zero(m); m],
            verified: zero && by_support,
            zero_field: zero,
            zero_by_support: by_support,
            samples: done,
            degree_budget: None,
            degree: None,
        });
    }
    let field = gamma_extract(family, r, seed)?;
    let zero_field = field.gamma.iter().all(|g| g.is_zero());
    Ok(CellFlowReport {
        js,
        r,
        m,
        verified: true,
        zero_field,
        zero_by_support: false,
        samples: field.fit_samples + field.held_out,
        degree_budget: Some(field.degree_budget),
        degree: Some(field.degree),
        gamma: field.gamma,
    })
}
