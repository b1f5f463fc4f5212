//! Sparse multivariate polynomials over Q in the parameters c_1..c_m.
//!
//! Exponent vectors are stored with trailing zeros removed, so a polynomial
//! in fewer variables embeds into more variables without conversion and
//! equality ignores the declared arity. `BTreeMap` order on the trimmed
//! vectors is lexicographic order with c_1 most significant.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::modp;
use super::rat::Rat;

pub type Monomial = Vec<u32>;

fn trim(mut m: Monomial) -> Monomial {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn mono_mul(a: &[u32], b: &[u32]) -> Monomial {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0));
    }
    out
}

fn mono_divides(d: &[u32], m: &[u32]) -> bool {
    d.len() <= m.len() && d.iter().zip(m).all(|(a, b)| a <= b)
}

fn mono_div(m: &[u32], d: &[u32]) -> Monomial {
    let mut out: Monomial = m.to_vec();
    for (i, e) in d.iter().enumerate() {
        out[i] -= e;
    }
    trim(out)
}

/// Polynomial in the parameters; invariant: no stored coefficient is zero.
#[derive(Clone)]
pub struct ParamPoly {
    arity: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl PartialEq for ParamPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for ParamPoly {}

impl ParamPoly {
    pub fn zero(arity: usize) -> Self {
        ParamPoly { arity, terms: BTreeMap::new() }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(Rat::one(), arity)
    }

    pub fn constant(r: Rat, arity: usize) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(Vec::new(), r);
        }
        ParamPoly { arity, terms }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rat::from_int(n), 0)
    }

    /// The parameter with 0-based index `i`, i.e. c_{i+1}.
    pub fn var(i: usize, arity: usize) -> Self {
        assert!(i < arity.max(i + 1));
        let mut m = vec![0u32; i + 1];
        m[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(m, Rat::one());
        ParamPoly { arity: arity.max(i + 1), terms }
    }

    pub fn monomial(exps: &[u32], coeff: Rat, arity: usize) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(trim(exps.to_vec()), coeff);
        }
        ParamPoly { arity: arity.max(exps.len()), terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(arity: usize, it: I) -> Self {
        let mut p = ParamPoly::zero(arity);
        for (m, c) in it {
            p.add_term(trim(m), &c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: &Rat) {
        if c.is_zero() {
            return;
        }
        self.arity = self.arity.max(m.len());
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn with_arity(mut self, arity: usize) -> Self {
        self.arity = self.arity.max(arity);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_empty())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Vec::new()).is_some_and(|c| c.is_one())
    }

    /// Value of a constant polynomial (zero gives `Some(0)`).
    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.is_constant() {
            return self.terms.get(&Vec::new()).cloned();
        }
        None
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &[u32]) -> Rat {
        self.terms.get(&trim(m.to_vec())).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.get(var).copied().unwrap_or(0)).max().unwrap_or(0)
    }

    /// Smallest variable index occurring with positive exponent.
    pub fn min_var(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter_map(|m| m.iter().position(|&e| e > 0))
            .min()
    }

    /// Lex-leading term.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rat {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return ParamPoly::zero(self.arity);
        }
        ParamPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        let (mut big, small) = if self.terms.len() >= o.terms.len() { (self.clone(), o) } else { (o.clone(), self) };
        big.arity = self.arity.max(o.arity);
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c);
        }
        big
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.arity = self.arity.max(o.arity);
        for (m, c) in &o.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        let arity = self.arity.max(o.arity);
        if self.is_zero() || o.is_zero() {
            return ParamPoly::zero(arity);
        }
        if let Some(c) = self.constant_value() {
            return o.scale(&c).with_arity(arity);
        }
        if let Some(c) = o.constant_value() {
            return self.scale(&c).with_arity(arity);
        }
        let mut out = ParamPoly::zero(arity);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(mono_mul(ma, mb), &(ca * cb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = ParamPoly::one(self.arity);
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Partial derivative with respect to the 0-based variable `var`.
    pub fn partial(&self, var: usize) -> Self {
        let mut out = ParamPoly::zero(self.arity);
        for (m, c) in &self.terms {
            let e = m.get(var).copied().unwrap_or(0);
            if e == 0 {
                continue;
            }
            let mut nm = m.clone();
            nm[var] -= 1;
            out.add_term(trim(nm), &(c * &Rat::from_int(e as i64)));
        }
        out
    }

    /// Full evaluation; missing trailing values are treated as absent variables.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = &t * &point[i].pow(e);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Image mod p at a residue point; `None` when a coefficient is not p-integral.
    pub fn eval_mod(&self, point: &[u64]) -> Option<u64> {
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut t = modp::of_rat(c)?;
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = modp::mul(t, modp::pow(point[i], e as u64));
                }
            }
            acc = modp::add(acc, t);
        }
        Some(acc)
    }

    /// Substitutes the variables with `Some` value, keeping the others in place.
    pub fn substitute(&self, assign: &[Option<Rat>]) -> Self {
        let mut out = ParamPoly::zero(self.arity);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            let mut nm = m.clone();
            for (i, e) in nm.iter_mut().enumerate() {
                if *e > 0 {
                    if let Some(Some(v)) = assign.get(i) {
                        t = &t * &v.pow(*e);
                        *e = 0;
                    }
                }
            }
            out.add_term(trim(nm), &t);
        }
        out
    }

    /// Renames variable `i` to `i + shift`.
    pub fn shift_vars(&self, shift: usize) -> Self {
        let mut out = ParamPoly::zero(self.arity + shift);
        for (m, c) in &self.terms {
            if m.is_empty() {
                out.add_term(Vec::new(), c);
            } else {
                let mut nm = vec![0u32; shift];
                nm.extend_from_slice(m);
                out.add_term(nm, c);
            }
        }
        out
    }

    /// Coefficients with respect to `var`, each free of `var`.
    pub fn to_univariate(&self, var: usize) -> Vec<ParamPoly> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![ParamPoly::zero(self.arity); deg + 1];
        for (m, c) in &self.terms {
            let e = m.get(var).copied().unwrap_or(0) as usize;
            let mut nm = m.clone();
            if e > 0 {
                nm[var] = 0;
            }
            out[e].add_term(trim(nm), c);
        }
        while out.len() > 1 && out.last().is_some_and(|p| p.is_zero()) {
            out.pop();
        }
        if out.len() == 1 && out[0].is_zero() {
            out.clear();
        }
        out
    }

    pub fn from_univariate(var: usize, coeffs: &[ParamPoly], arity: usize) -> Self {
        let mut out = ParamPoly::zero(arity);
        for (e, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                let mut nm = m.clone();
                if e > 0 {
                    if nm.len() <= var {
                        nm.resize(var + 1, 0);
                    }
                    nm[var] += e as u32;
                }
                out.add_term(trim(nm), c);
            }
        }
        out
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let arity = self.arity.max(d.arity);
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip().ok()?).with_arity(arity));
        }
        let (lm_d, lc_d) = d.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let lc_inv = lc_d.recip().ok()?;
        let mut r = self.clone();
        let mut q = ParamPoly::zero(arity);
        while let Some((lm_r, lc_r)) = r.leading_term() {
            if !mono_divides(&lm_d, lm_r) {
                return None;
            }
            let tm = mono_div(lm_r, &lm_d);
            let tc = lc_r * &lc_inv;
            for (m, c) in &d.terms {
                r.add_term(mono_mul(&tm, m), &-(&tc * c));
            }
            q.add_term(tm, &tc);
        }
        Some(q)
    }

    /// Positive rational `g` such that `self / g` has coprime integer coefficients.
    pub fn rat_content(&self) -> Rat {
        use num_integer::Integer;
        use num_bigint::BigInt;
        use num_traits::{Zero, One, Signed};
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for c in self.terms.values() {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        if g.is_zero() {
            return Rat::one();
        }
        Rat::from_big(g.abs(), l).expect("nonzero lcm")
    }

    /// Integer-primitive associate with positive lex-leading coefficient.
    pub fn primitive_normal(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.rat_content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        self.scale(&c.recip().expect("nonzero content"))
    }

    /// Associate with lex-leading coefficient one.
    pub fn lex_monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_coeff().recip().expect("nonzero"))
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("c{}", i + 1) } else { format!("c{}^{}", i + 1, e) })
                .collect();
            if vars.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{a}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! pp_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&ParamPoly> for &ParamPoly {
            type Output = ParamPoly;
            fn $m(self, rhs: &ParamPoly) -> ParamPoly {
                self.$f(rhs)
            }
        }
        impl $tr<ParamPoly> for ParamPoly {
            type Output = ParamPoly;
            fn $m(self, rhs: ParamPoly) -> ParamPoly {
                self.$f(&rhs)
            }
        }
        impl $tr<&ParamPoly> for ParamPoly {
            type Output = ParamPoly;
            fn $m(self, rhs: &ParamPoly) -> ParamPoly {
                self.$f(rhs)
            }
        }
    };
}

pp_binop!(Add, add, add_ref);
pp_binop!(Sub, sub, sub_ref);
pp_binop!(Mul, mul, mul_ref);

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        self.scale(&Rat::from_int(-1))
    }
}

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        self.scale(&Rat::from_int(-1))
    }
}
