use super::flow::{mkdv_field, oper_at, prefix_family, classify_difference, DifferenceShape};
use super::gamma::CellVectorField;
use crate::arith::{ParamPoly, Rat, XRat};
use crate::error::{Error, Result};
use crate::generation::GeneratedFamily;
use crate::miura::{conjugator, dmu_dc_at, miura_from_tuple, MiuraOper};
use crate::pseudo_diff::{default_depth, kdv_rhs};
use crate::scalar_ops::{kernel_solve, miura_map, tangent_miura, ScalarDiffOp, TangentVector};

/// Both sides of `dm_i(mkdv field) = [L_i, (L_i^{r/2n})^+]` at one point.
#[derive(Debug, Clone)]
pub struct IntertwiningReport {
    pub i: usize,
    pub r: u32,
    pub tangent_image: ScalarDiffOp,
    pub kdv: ScalarDiffOp,
    pub equal: bool,
}

pub fn kdv_check(family: &GeneratedFamily, c: &[Rat], r: u32, i: usize) -> Result<IntertwiningReport> {
    let n = family.seq.n();
    let l = oper_at(family, c)?;
    let field = mkdv_field(family, c, r)?;
    let tangent_image = tangent_miura(&l, &field.tangent()?, i)?;
    let kdv = kdv_rhs(&miura_map(&l, i)?, r, default_depth(n, r))?;
    let equal = tangent_image == kdv;
    Ok(IntertwiningReport { i, r, tangent_image, kdv, equal })
}

/// Miura-map indices `i` in `0..2n` left untouched by a last step in
/// direction `j`.
pub fn unaffected_indices(n: usize, j: usize) -> Vec<usize> {
    (0..2 * n)
        .filter(|&i| match j {
            0 => i != 0,
            _ if j == n => i != n,
            _ => i != j && i != 2 * n - j,
        })
        .collect()
}

/// `m_i(mu^J(c~, c_m)) = m_i(mu^J~(c~))` for every unaffected `i`, as an
/// identity in `c_m` at the prefix point `c~`.
///
/// Only `y_{j_m}` depends on `c_m`, linearly, so every coefficient of
/// `m_i(mu^J)` is `N(x, c_m) / (Q(x) y_{j_m}^{2n})` with `deg_{c_m} N <= 2n`.
/// Agreement at `2n + 1` distinct values of `c_m` therefore proves the
/// identity.
pub fn gauge_invariance_holds(family: &GeneratedFamily, c_prefix: &[Rat]) -> Result<bool> {
    let m = family.m();
    let n = family.seq.n();
    let j = family.seq.last().ok_or(Error::EmptySequence)?;
    if c_prefix.len() + 1 != m {
        return Err(Error::ParamLength { got: c_prefix.len(), expected: m - 1 });
    }
    let prefix = oper_at(&prefix_family(family)?, c_prefix)?;
    let targets: Vec<ScalarDiffOp> =
        unaffected_indices(n, j).into_iter().map(|i| miura_map(&prefix, i)).collect::<Result<_>>()?;
    let mut checked = 0;
    let mut t = 0i64;
    while checked < 2 * n + 1 {
        t += 1;
        if t > 100 * n as i64 {
            return Err(Error::Singular("no regular values of the last parameter".into()));
        }
        let mut c = c_prefix.to_vec();
        c.push(Rat::new(3 * t - 7, 2));
        let l = match oper_at(family, &c) {
            Ok(l) => l,
            Err(Error::Singular(_)) => continue,
            Err(e) => return Err(e),
        };
        for (i, target) in unaffected_indices(n, j).into_iter().zip(&targets) {
            if miura_map(&l, i)? != *target {
                return Ok(false);
            }
        }
        checked += 1;
    }
    Ok(true)
}

/// Outcome of the kernel argument for the last parameter at one point.
#[derive(Debug, Clone)]
pub struct KernelConsistency {
    /// `field - sum_{i<m} gamma_i(c~) dmu/dc_i`.
    pub difference: Vec<XRat>,
    pub shape: DifferenceShape,
    /// Every unaffected tangent image of the difference vanishes.
    pub in_kernels: bool,
    /// Every relation reported by the kernel solver vanishes on it.
    pub relations_hold: bool,
    /// The scalar `A` with `difference = A dmu/dc_m`, if it exists.
    pub proportionality: Option<Rat>,
}

/// Removes the prefix flow from the field at `c` and checks that the rest
/// has the difference pattern of `j_m`, is killed by every unaffected
/// `dm_i` and is proportional to `dmu/dc_m`.
pub fn kernel_consistency(
    family: &GeneratedFamily,
    c: &[Rat],
    r: u32,
    prefix_gamma: &CellVectorField,
) -> Result<KernelConsistency> {
    let m = family.m();
    let n = family.seq.n();
    let j = family.seq.last().ok_or(Error::EmptySequence)?;
    if prefix_gamma.gamma.len() + 1 != m {
        return Err(Error::ParamLength { got: prefix_gamma.gamma.len(), expected: m - 1 });
    }
    let l = oper_at(family, c)?;
    let field = mkdv_field(family, c, r)?;
    let mut difference = field.entries.clone();
    for (i, g) in prefix_gamma.gamma.iter().enumerate() {
        let gi = g.eval(&c[..m - 1]);
        if gi.is_zero() {
            continue;
        }
        let d = dmu_dc_at(family, i + 1, c)?;
        for (x, y) in difference.iter_mut().zip(d) {
            *x = &*x - &y.scale_rat(&gi);
        }
    }
    let shape = classify_difference(n, j, &difference)?;
    let x = TangentVector::new(difference.clone())?;
    let mut in_kernels = true;
    for i in unaffected_indices(n, j) {
        in_kernels &= tangent_miura(&l, &x, i)?.is_zero();
    }
    let excluded = if j == 0 { vec![0] } else if j == n { vec![n] } else { vec![j, 2 * n - j] };
    let report = kernel_solve(&l, &excluded)?;
    let relations_hold = report.residuals(&l, &x).iter().all(|r| r.is_zero());
    let last = dmu_dc_at(family, m, c)?;
    let proportionality = super::gamma::decompose(&difference, &[last]).ok().flatten().map(|g| g[0].clone());
    Ok(KernelConsistency { difference, shape, in_kernels, relations_hold, proportionality })
}

/// `[Gamma_r, Gamma_s]`, componentwise.
pub fn bracket(a: &[ParamPoly], b: &[ParamPoly]) -> Vec<ParamPoly> {
    let m = a.len();
    (0..m)
        .map(|i| {
            let mut acc = ParamPoly::zero(m);
            for k in 0..m {
                acc = acc.add_ref(&a[k].mul_ref(&b[i].partial(k))).sub_ref(&b[k].mul_ref(&a[i].partial(k)));
            }
            acc
        })
        .collect()
}

/// The three constructions of `mu^J(c)`: the cascade of gauge functions,
/// the oper of the tuple, and the conjugation of the trivial oper.
#[derive(Debug, Clone)]
pub struct RouteComparison {
    pub cascade: MiuraOper,
    pub tuple: MiuraOper,
    pub conjugated_potential: Vec<XRat>,
    /// Whether the conjugated connection is exactly `Lambda + diag`.
    pub conjugated_is_diagonal_oper: bool,
}

impl RouteComparison {
    pub fn all_equal(&self) -> bool {
        self.conjugated_is_diagonal_oper
            && self.cascade == self.tuple
            && self.cascade.v() == self.conjugated_potential.as_slice()
    }
}

pub fn route_comparison(family: &GeneratedFamily, c: &[Rat]) -> Result<RouteComparison> {
    let n = family.seq.n();
    let cascade = oper_at(family, c)?;
    let tuple = miura_from_tuple(&family.tuple().specialize(c))?;
    let conj = conjugator(family, c)?.conjugate_trivial();
    let expected_shape = crate::lie::shift_power(1, n).add(&crate::lie::LaurentMatrix::from_diag(&conj.diag_degree0()));
    let conjugated_potential = conj.diag_degree0();
    Ok(RouteComparison { cascade, tuple, conjugated_is_diagonal_oper: conj == expected_shape, conjugated_potential })
}
