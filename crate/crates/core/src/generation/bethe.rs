//! Floating-point cross-checks: master function, Bethe residuals and root
//! extraction. The exact path is fertility; nothing here feeds back into it.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;

use super::cartan::DegreeVector;
use super::tuple::PolyTuple;
use crate::arith::XPoly;
use crate::error::{Error, Result};

/// Roots grouped by component, group `j` of size `k_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalConfig {
    pub groups: Vec<Vec<Complex64>>,
}

impl CriticalConfig {
    pub fn degrees(&self) -> DegreeVector {
        DegreeVector(self.groups.iter().map(|g| g.len() as i64).collect())
    }
}

fn check_shape(u: &CriticalConfig, k: &DegreeVector) -> Result<()> {
    if u.degrees() != *k {
        return Err(Error::Shape(format!("config sizes {} do not match {}", u.degrees(), k)));
    }
    if u.groups.len() < 3 {
        return Err(Error::BadRank(u.groups.len().saturating_sub(1)));
    }
    Ok(())
}

fn diff(a: Complex64, b: Complex64) -> Result<Complex64> {
    let d = a - b;
    if d == Complex64::new(0.0, 0.0) {
        return Err(Error::Singular("coincident particles".into()));
    }
    Ok(d)
}

/// Self-interaction weight of group `j`: 2 at the ends, 4 in the middle.
fn self_weight(j: usize, n: usize) -> f64 {
    if j == 0 || j == n {
        2.0
    } else {
        4.0
    }
}

/// Master function with principal-branch logarithms.
pub fn master_value(u: &CriticalConfig, k: &DegreeVector) -> Result<Complex64> {
    check_shape(u, k)?;
    let n = u.groups.len() - 1;
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, g) in u.groups.iter().enumerate() {
        for a in 0..g.len() {
            for b in a + 1..g.len() {
                acc += self_weight(j, n) * diff(g[a], g[b])?.ln();
            }
        }
    }
    for j in 0..n {
        for &a in &u.groups[j] {
            for &b in &u.groups[j + 1] {
                acc -= 2.0 * diff(a, b)?.ln();
            }
        }
    }
    Ok(acc)
}

/// Left-hand sides of the critical-point equations, group by group.
pub fn critical_residuals(u: &CriticalConfig, k: &DegreeVector) -> Result<Vec<Complex64>> {
    check_shape(u, k)?;
    let n = u.groups.len() - 1;
    let mut out = Vec::new();
    for (j, g) in u.groups.iter().enumerate() {
        for (a, &ua) in g.iter().enumerate() {
            let mut r = Complex64::new(0.0, 0.0);
            for (b, &ub) in g.iter().enumerate() {
                if a != b {
                    r += self_weight(j, n) / diff(ua, ub)?;
                }
            }
            let neighbours = [j.checked_sub(1), (j < n).then_some(j + 1)];
            for nb in neighbours.into_iter().flatten() {
                for &v in &u.groups[nb] {
                    r -= 2.0 / diff(ua, v)?;
                }
            }
            out.push(r);
        }
    }
    Ok(out)
}

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Iteration cap for the Schur decomposition, which does not terminate on
/// its own for some companion matrices.
const SCHUR_MAX_ITER: usize = 10_000;

/// Aberth-Ehrlich simultaneous iteration from points on a circle bounding
/// the roots; the fallback when the Schur iteration stalls.
fn aberth_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    let radius = 1.0 + coeffs[..d].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Complex64> =
        (0..d).map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / d as f64)).collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for k in 0..d {
            let (v, dv) = horner(coeffs, z[k]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / dv;
            let repulsion: Complex64 = (0..d).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            z[k] -= step;
            moved = moved.max(step.norm() / z[k].norm().max(1.0));
        }
        if moved <= 1e-15 {
            break;
        }
    }
    z
}

/// Complex roots of a numeric polynomial: companion-matrix eigenvalues,
/// or Aberth iteration if those do not converge, polished by Newton steps.
pub fn polynomial_roots(p: &XPoly) -> Result<Vec<Complex64>> {
    let rats = p.to_rats().ok_or_else(|| Error::Shape("symbolic polynomial".into()))?;
    let d = match p.degree() {
        None => return Err(Error::Shape("roots of the zero polynomial".into())),
        Some(0) => return Ok(Vec::new()),
        Some(d) => d,
    };
    let lc = rats[d].to_f64();
    let coeffs: Vec<f64> = rats.iter().map(|r| r.to_f64() / lc).collect();
    let companion = DMatrix::<f64>::from_fn(d, d, |i, j| {
        if j == d - 1 {
            -coeffs[i]
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let mut roots: Vec<Complex64> = match Schur::try_new(companion, f64::EPSILON, SCHUR_MAX_ITER) {
        Some(schur) => schur.complex_eigenvalues().iter().map(|z| Complex64::new(z.re, z.im)).collect(),
        None => aberth_roots(&coeffs),
    };
    for z in roots.iter_mut() {
        for _ in 0..60 {
            let (v, dv) = horner(&coeffs, *z);
            if dv.norm() == 0.0 {
                break;
            }
            let step = v / dv;
            *z -= step;
            if step.norm() <= 1e-16 * z.norm().max(1.0) {
                break;
            }
        }
    }
    Ok(roots)
}

/// Root configuration of a numeric tuple.
pub fn tuple_roots(y: &PolyTuple) -> Result<CriticalConfig> {
    Ok(CriticalConfig { groups: y.y.iter().map(polynomial_roots).collect::<Result<_>>()? })
}

/// Largest Bethe residual modulus at the roots of a numeric tuple.
pub fn max_residual(y: &PolyTuple) -> Result<f64> {
    let u = tuple_roots(y)?;
    let r = critical_residuals(&u, &y.degrees())?;
    Ok(r.iter().map(|z| z.norm()).fold(0.0, f64::max))
}
