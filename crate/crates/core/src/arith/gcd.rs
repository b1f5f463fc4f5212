//! Multivariate gcd over Q.
//!
//! Recursive primitive remainder sequences in the smallest occurring
//! variable, with a modular coprimality certificate tried first: if the
//! images mod p at some point keep the leading coefficient and are coprime,
//! the true gcd has degree zero in the main variable.

use super::modp;
use super::param_poly::ParamPoly;
use super::rat::Rat;

/// Gcd normalised to lex-leading coefficient one; `gcd(0, 0) = 0`.
pub fn gcd(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    let arity = a.arity().max(b.arity());
    if a.is_zero() {
        return b.lex_monic().with_arity(arity);
    }
    if b.is_zero() {
        return a.lex_monic().with_arity(arity);
    }
    gcd_prim(a, b).lex_monic().with_arity(arity)
}

/// Gcd of two nonzero polynomials as an integer-primitive associate.
fn gcd_prim(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    let arity = a.arity().max(b.arity());
    if a.is_constant() || b.is_constant() {
        return ParamPoly::one(arity);
    }
    let v = match (a.min_var(), b.min_var()) {
        (Some(x), Some(y)) => x.min(y),
        _ => return ParamPoly::one(arity),
    };
    let av = a.to_univariate(v);
    let bv = b.to_univariate(v);
    if av.len() == 1 {
        return gcd_prim(a, &content(&bv));
    }
    if bv.len() == 1 {
        return gcd_prim(&content(&av), b);
    }
    let ca = content(&av);
    let cb = content(&bv);
    let c = gcd_prim(&ca, &cb);
    if certified_coprime(&av, &bv) {
        return c;
    }
    let mut p = primitive(&av, &ca);
    let mut q = primitive(&bv, &cb);
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = prem(&p, &q);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            return c;
        }
        let cr = content(&r);
        p = q;
        q = primitive(&r, &cr);
    }
    (&ParamPoly::from_univariate(v, &q, arity) * &c).primitive_normal()
}

/// Gcd of all coefficients, integer-primitive.
fn content(coeffs: &[ParamPoly]) -> ParamPoly {
    let arity = coeffs.iter().map(|p| p.arity()).max().unwrap_or(0);
    let nz: Vec<&ParamPoly> = coeffs.iter().filter(|p| !p.is_zero()).collect();
    if nz.iter().any(|p| p.is_constant()) {
        return ParamPoly::one(arity);
    }
    let mut it = nz.into_iter();
    let mut g = match it.next() {
        Some(p) => p.primitive_normal(),
        None => return ParamPoly::zero(arity),
    };
    for p in it {
        if g.is_constant() {
            break;
        }
        g = gcd_prim(&g, p);
    }
    g
}

fn primitive(coeffs: &[ParamPoly], cont: &ParamPoly) -> Vec<ParamPoly> {
    let divided: Vec<ParamPoly> = coeffs
        .iter()
        .map(|p| p.div_exact(cont).expect("content divides every coefficient"))
        .collect();
    // joint rational normalisation
    let mut g = Rat::zero();
    let mut first = true;
    for p in &divided {
        if p.is_zero() {
            continue;
        }
        let rc = p.rat_content();
        g = if first { rc } else { rat_gcd(&g, &rc) };
        first = false;
    }
    let lead_neg = divided.last().map(|p| p.leading_coeff().is_negative()).unwrap_or(false);
    if lead_neg {
        g = -g;
    }
    let inv = g.recip().unwrap_or_else(|_| Rat::one());
    divided.iter().map(|p| p.scale(&inv)).collect()
}

fn rat_gcd(a: &Rat, b: &Rat) -> Rat {
    use num_integer::Integer;
    let n = a.numer().gcd(b.numer());
    let d = a.denom().lcm(b.denom());
    Rat::from_big(n, d).expect("nonzero")
}

/// Pseudo-remainder of `a` by `b` as univariate polynomials.
fn prem(a: &[ParamPoly], b: &[ParamPoly]) -> Vec<ParamPoly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: Vec<ParamPoly> = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let lr = r.last().unwrap().clone();
        for p in r.iter_mut() {
            *p = &*p * lb;
        }
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&lr * bi);
        }
        while r.last().is_some_and(|p| p.is_zero()) {
            r.pop();
        }
    }
    r
}

/// Exact certificate that `a` and `b` share no factor of positive degree in
/// the main variable.
fn certified_coprime(a: &[ParamPoly], b: &[ParamPoly]) -> bool {
    let nvars = a.iter().chain(b.iter()).map(|p| p.arity()).max().unwrap_or(0);
    for attempt in 0..3u64 {
        let point: Vec<u64> = (0..nvars as u64)
            .map(|i| (0x9E37_79B9_7F4A_7C15u64.wrapping_mul(i + 7 + 13 * attempt) >> 5) % modp::P)
            .collect();
        let img = |coeffs: &[ParamPoly]| -> Option<Vec<u64>> {
            coeffs.iter().map(|p| p.eval_mod(&point)).collect()
        };
        let (Some(ia), Some(ib)) = (img(a), img(b)) else { continue };
        if ia.last() == Some(&0) {
            continue;
        }
        return modp::gcd_degree(&ia, &ib) == Some(0);
    }
    false
}

/// Certificate for univariate polynomials over Q given as dense coefficients.
pub fn certified_coprime_rat(a: &[Rat], b: &[Rat]) -> bool {
    let img = |v: &[Rat]| -> Option<Vec<u64>> { v.iter().map(modp::of_rat).collect() };
    match (img(a), img(b)) {
        (Some(ia), Some(ib)) if ia.last().is_some_and(|&x| x != 0) => {
            modp::gcd_degree(&ia, &ib) == Some(0)
        }
        _ => false,
    }
}
