//! Miura opers of type C_n^(1): construction from tuples, Riccati
//! deformations, the cascade of gauge functions, conjugators and the
//! parameter derivatives of the family attached to a generating sequence.

use crate::arith::{Rat, XPoly, XRat};
use crate::error::{Error, Result};
use crate::generation::{CartanData, GeneratedFamily, PolyTuple};
use crate::lie::{exp_ad_f, generator, h_diag, shift_power, GenKind, LaurentMatrix};

/// `d + Lambda + diag(v)` with `v_j + v_{2n+1-j} = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiuraOper {
    n: usize,
    v: Vec<XRat>,
}

impl MiuraOper {
    pub fn new(v: Vec<XRat>) -> Result<Self> {
        let s = v.len();
        if s < 4 || s % 2 == 1 {
            return Err(Error::Shape(format!("potential of length {s}")));
        }
        let n = s / 2;
        for j in 0..n {
            if !(&v[j] + &v[s - 1 - j]).is_zero() {
                return Err(Error::Shape(format!("v_{} + v_{} != 0", j + 1, s - j)));
            }
        }
        Ok(MiuraOper { n, v })
    }

    /// `d + Lambda`, the oper of the empty tuple.
    pub fn trivial(n: usize) -> Self {
        MiuraOper { n, v: vec![XRat::zero(0); 2 * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn v(&self) -> &[XRat] {
        &self.v
    }

    pub fn trace_is_zero(&self) -> bool {
        self.v.iter().fold(XRat::zero(0), |a, b| &a + b).is_zero()
    }

    /// The non-derivative part `Lambda + V`.
    pub fn connection(&self) -> LaurentMatrix {
        shift_power(1, self.n).add(&LaurentMatrix::from_diag(&self.v))
    }

    pub fn specialize(&self, c: &[Rat]) -> Result<Self> {
        Ok(MiuraOper { n: self.n, v: self.v.iter().map(|x| x.specialize(c)).collect::<Result<_>>()? })
    }

    pub fn substitute(&self, assign: &[Option<Rat>]) -> Result<Self> {
        Ok(MiuraOper { n: self.n, v: self.v.iter().map(|x| x.substitute(assign)).collect::<Result<_>>()? })
    }
}

/// `Wr(a, b) / (a b) = ln'(b) - ln'(a)`.
fn log_ratio(a: &XPoly, b: &XPoly) -> Result<XRat> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::LogOfZero);
    }
    XRat::new(XPoly::wronskian(a, b), a * b)
}

/// `v_i = ln'(y_i / y_{i-1})` for `i = 1..n`, mirrored with opposite sign.
pub fn miura_from_tuple(y: &PolyTuple) -> Result<MiuraOper> {
    let n = y.n();
    if n < 2 {
        return Err(Error::BadRank(n));
    }
    let mut v = vec![XRat::zero(0); 2 * n];
    for i in 1..=n {
        let vi = log_ratio(&y.y[i - 1], &y.y[i])?;
        v[2 * n - i] = -&vi;
        v[i - 1] = vi;
    }
    MiuraOper::new(v)
}

/// `<alpha_j, V>` computed from the matrix entries of V.
pub fn alpha_of_potential(l: &MiuraOper, j: usize) -> Result<XRat> {
    let n = l.n;
    if j > n {
        return Err(Error::IndexOutOfRange { index: j, max: n });
    }
    let v = &l.v;
    Ok(if j == 0 {
        &v[0] - &v[2 * n - 1]
    } else if j == n {
        &v[n] - &v[n - 1]
    } else {
        &v[j] - &v[j - 1]
    })
}

/// `<alpha_j, V> = ln'(prod_i y_i^{-a_{ij}})` for the oper of `y`.
pub fn alpha_pairing(y: &PolyTuple, j: usize) -> Result<XRat> {
    let n = y.n();
    let cartan = CartanData::new(n)?;
    if j > n {
        return Err(Error::IndexOutOfRange { index: j, max: n });
    }
    let rhs = y.wronskian_rhs(&cartan, j);
    let lr = XRat::log_derivative(&rhs)?;
    let own = XRat::log_derivative(&y.y[j])?;
    Ok(&lr - &own.scale_rat(&Rat::from_int(2)))
}

/// `g' - <alpha_j, V> g + g^2`.
pub fn riccati_residual(l: &MiuraOper, j: usize, g: &XRat) -> Result<XRat> {
    let a = alpha_of_potential(l, j)?;
    Ok(&(&g.derivative() - &(&a * g)) + &(g * g))
}

/// Diagonal part and `f_j` coefficient of `exp(ad g f_j) L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deformation {
    /// `V - g h_j`; a Miura oper when the residual vanishes.
    pub v: Vec<XRat>,
    pub residual: XRat,
}

impl Deformation {
    pub fn oper(&self) -> Result<MiuraOper> {
        MiuraOper::new(self.v.clone())
    }
}

pub fn deform(l: &MiuraOper, j: usize, g: &XRat) -> Result<Deformation> {
    let residual = riccati_residual(l, j, g)?;
    let h = h_diag(j, l.n);
    let v = l.v.iter().zip(h).map(|(vk, hk)| vk - &g.scale_rat(&Rat::from_int(hk))).collect();
    Ok(Deformation { v, residual })
}

/// Gauge transform `G (d + A) G^{-1} = d + G A G^{-1} - G' G^{-1}`; returns the
/// non-derivative part.
pub fn conjugate_connection(g: &LaurentMatrix, g_inv: &LaurentMatrix, a: &LaurentMatrix) -> LaurentMatrix {
    g.mul(a).mul(g_inv).sub(&g.derivative().mul(g_inv))
}

/// The matrix identity behind the deformation: `exp(ad g f_j)(d + Lambda + V)`
/// equals `d + Lambda + V - g h_j - residual f_j`.
pub fn deformation_identity_holds(l: &MiuraOper, j: usize, g: &XRat) -> Result<bool> {
    let (e, einv) = exp_ad_f(j, g, l.n)?;
    let lhs = conjugate_connection(&e, &einv, &l.connection());
    let d = deform(l, j, g)?;
    let f = generator(GenKind::F, j, l.n)?;
    let rhs = shift_power(1, l.n).add(&LaurentMatrix::from_diag(&d.v)).sub(&f.scale(&d.residual));
    Ok(lhs == rhs)
}

/// Gauge functions `g_l = ln'(y_{j_l}(l)) - ln'(y_{j_l}(l-1))` of a family.
#[derive(Debug, Clone)]
pub struct GCascade {
    pub js: Vec<usize>,
    pub g: Vec<XRat>,
}

pub fn g_cascade(family: &GeneratedFamily) -> Result<GCascade> {
    let g = (1..=family.m())
        .map(|l| {
            let (new, old) = family.step_pair(l);
            log_ratio(old, new)
        })
        .collect::<Result<_>>()?;
    Ok(GCascade { js: family.seq.js().to_vec(), g })
}

impl GCascade {
    pub fn specialize(&self, c: &[Rat]) -> Result<GCascade> {
        Ok(GCascade { js: self.js.clone(), g: self.g.iter().map(|g| g.specialize(c)).collect::<Result<_>>()? })
    }

    /// `-sum_l g_l h_{j_l}` as a potential.
    pub fn potential(&self, n: usize) -> Result<MiuraOper> {
        let mut v = vec![XRat::zero(0); 2 * n];
        for (g, &j) in self.g.iter().zip(&self.js) {
            for (vk, hk) in v.iter_mut().zip(h_diag(j, n)) {
                if hk != 0 {
                    *vk = &*vk - &g.scale_rat(&Rat::from_int(hk));
                }
            }
        }
        MiuraOper::new(v)
    }
}

/// The family of opers `d + Lambda - sum_l g_l h_{j_l}` with symbolic c.
pub fn mu_j(family: &GeneratedFamily) -> Result<MiuraOper> {
    g_cascade(family)?.potential(family.seq.n())
}

/// `G = E_m .. E_1` with `E_l = exp(g_l f_{j_l})`, at a rational point.
#[derive(Debug, Clone)]
pub struct Conjugator {
    pub g: LaurentMatrix,
    pub g_inv: LaurentMatrix,
}

pub fn conjugator(family: &GeneratedFamily, c: &[Rat]) -> Result<Conjugator> {
    let m = family.m();
    if c.len() != m {
        return Err(Error::ParamLength { got: c.len(), expected: m });
    }
    let n = family.seq.n();
    let mut g = LaurentMatrix::identity(2 * n);
    let mut g_inv = LaurentMatrix::identity(2 * n);
    for l in 1..=m {
        let (new, old) = family.step_pair(l);
        let (new, old) = (new.specialize(c), old.specialize(c));
        if new.is_zero() || old.is_zero() {
            return Err(Error::Singular(format!("g_{l} has a vanishing denominator")));
        }
        let gl = log_ratio(&old, &new)?;
        let (e, einv) = exp_ad_f(family.seq.js()[l - 1], &gl, n)?;
        g = e.mul(&g);
        g_inv = g_inv.mul(&einv);
    }
    Ok(Conjugator { g, g_inv })
}

impl Conjugator {
    /// Non-derivative part of `G (d + Lambda) G^{-1}`.
    pub fn conjugate_trivial(&self) -> LaurentMatrix {
        let n = self.g.n();
        conjugate_connection(&self.g, &self.g_inv, &shift_power(1, n))
    }
}

/// `d mu / d c_i` (1-based `i`) by symbolic differentiation of the family.
pub fn dmu_dc(mu: &MiuraOper, i: usize) -> Vec<XRat> {
    mu.v.iter().map(|v| v.partial_c(i - 1)).collect()
}

/// Closed form of `d mu / d c_m`: `-a R / y~^2 h_{j_m}` with `R` the Wronskian
/// right-hand side of the last step and `a` its generation constant.
#[derive(Debug, Clone)]
pub struct LastParameterDerivative {
    pub field: Vec<XRat>,
    /// Equals `eps` of the last step, `k - k~ < 0`.
    pub a: i64,
}

pub fn dmu_dc_last(family: &GeneratedFamily) -> Result<LastParameterDerivative> {
    let m = family.m();
    if m == 0 {
        return Err(Error::EmptySequence);
    }
    let n = family.seq.n();
    let cartan = CartanData::new(n)?;
    let j = family.seq.js()[m - 1];
    let a = family.steps[m - 1].eps;
    let rhs = family.tuples[m - 1].wronskian_rhs(&cartan, j);
    let yt = &family.tuples[m].y[j];
    let scalar = XRat::new(rhs.scale_rat(&Rat::from_int(-a)), yt * yt)?;
    let field = h_diag(j, n).into_iter().map(|h| scalar.scale_rat(&Rat::from_int(h))).collect();
    Ok(LastParameterDerivative { field, a })
}

/// `d mu / d c_i` at a rational point through the tuple route:
/// `d ln'(y) / dc = Wr(y, dy/dc) / y^2`.
pub fn dmu_dc_at(family: &GeneratedFamily, i: usize, c: &[Rat]) -> Result<Vec<XRat>> {
    let m = family.m();
    if c.len() != m {
        return Err(Error::ParamLength { got: c.len(), expected: m });
    }
    if i == 0 || i > m {
        return Err(Error::IndexOutOfRange { index: i, max: m });
    }
    let n = family.seq.n();
    let y = family.tuple();
    let dlog: Vec<XRat> = y
        .y
        .iter()
        .map(|p| {
            let ys = p.specialize(c);
            let dy = p.partial_c(i - 1).specialize(c);
            if dy.is_zero() {
                return Ok(XRat::zero(0));
            }
            XRat::new(XPoly::wronskian(&ys, &dy), &ys * &ys)
        })
        .collect::<Result<_>>()?;
    let mut v = vec![XRat::zero(0); 2 * n];
    for k in 1..=n {
        let d = &dlog[k] - &dlog[k - 1];
        v[2 * n - k] = -&d;
        v[k - 1] = d;
    }
    Ok(v)
}
