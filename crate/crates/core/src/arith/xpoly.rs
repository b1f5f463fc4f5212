//! Polynomials in x with parameter-polynomial coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::gcd;
use super::param_poly::ParamPoly;
use super::rat::Rat;
use crate::error::{Error, Result};

/// Dense polynomial `sum coeffs[d] x^d`; no trailing zero coefficient.
/// Equality ignores the declared arity.
#[derive(Clone)]
pub struct XPoly {
    arity: usize,
    coeffs: Vec<ParamPoly>,
}

impl PartialEq for XPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for XPoly {}

impl XPoly {
    pub fn zero(arity: usize) -> Self {
        XPoly { arity, coeffs: Vec::new() }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(ParamPoly::one(arity))
    }

    pub fn x(arity: usize) -> Self {
        Self::from_coeffs(vec![ParamPoly::zero(arity), ParamPoly::one(arity)])
    }

    pub fn constant(c: ParamPoly) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(coeffs: Vec<ParamPoly>) -> Self {
        let arity = coeffs.iter().map(|c| c.arity()).max().unwrap_or(0);
        let mut p = XPoly { arity, coeffs };
        p.trim();
        p
    }

    pub fn from_rats(coeffs: &[Rat]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|r| ParamPoly::constant(r.clone(), 0)).collect())
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&r| ParamPoly::int(r)).collect())
    }

    /// Monomial `c x^d`.
    pub fn monomial(c: ParamPoly, d: usize) -> Self {
        let mut v = vec![ParamPoly::zero(c.arity()); d + 1];
        v[d] = c;
        Self::from_coeffs(v)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn with_arity(mut self, arity: usize) -> Self {
        self.arity = self.arity.max(arity);
        self
    }

    pub fn coeffs(&self) -> &[ParamPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> ParamPoly {
        self.coeffs.get(d).cloned().unwrap_or_else(|| ParamPoly::zero(self.arity))
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// True when no coefficient involves a parameter.
    pub fn is_numeric(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_constant())
    }

    pub fn is_constant_in_x(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> ParamPoly {
        self.coeffs.last().cloned().unwrap_or_else(|| ParamPoly::zero(self.arity))
    }

    /// Coefficients as rationals when the polynomial is numeric.
    pub fn to_rats(&self) -> Option<Vec<Rat>> {
        self.coeffs.iter().map(|c| c.constant_value()).collect()
    }

    /// Lex-leading rational coefficient with x most significant.
    pub fn lex_leading_rat(&self) -> Rat {
        self.coeffs.last().map(|c| c.leading_coeff()).unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &ParamPoly) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect()).with_arity(self.arity)
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.scale(r)).collect()).with_arity(self.arity)
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let arity = self.arity.max(o.arity);
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(match (self.coeffs.get(i), o.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::from_coeffs(v).with_arity(arity)
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }

    pub fn neg_ref(&self) -> Self {
        self.scale_rat(&Rat::from_int(-1))
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        let arity = self.arity.max(o.arity);
        if self.is_zero() || o.is_zero() {
            return XPoly::zero(arity);
        }
        if let (Some(a), Some(b)) = (self.to_rats(), o.to_rats()) {
            let mut v = vec![Rat::zero(); a.len() + b.len() - 1];
            for (i, ai) in a.iter().enumerate() {
                if ai.is_zero() {
                    continue;
                }
                for (j, bj) in b.iter().enumerate() {
                    v[i + j] += &(ai * bj);
                }
            }
            return XPoly::from_rats(&v).with_arity(arity);
        }
        let mut v = vec![ParamPoly::zero(arity); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, ai) in self.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in o.coeffs.iter().enumerate() {
                v[i + j] = &v[i + j] + &(ai * bj);
            }
        }
        Self::from_coeffs(v).with_arity(arity)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = XPoly::one(self.arity);
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// d/dx.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return XPoly::zero(self.arity);
        }
        let v = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, c)| c.scale(&Rat::from_int(i as i64 + 1)))
            .collect();
        Self::from_coeffs(v).with_arity(self.arity)
    }

    /// d/dc_{var+1}, coefficientwise.
    pub fn partial_c(&self, var: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.partial(var)).collect()).with_arity(self.arity)
    }

    /// Wr(f, g) = f g' - f' g.
    pub fn wronskian(f: &XPoly, g: &XPoly) -> XPoly {
        f.mul_ref(&g.derivative()).sub_ref(&f.derivative().mul_ref(g))
    }

    /// Full specialisation of the parameters.
    pub fn specialize(&self, c: &[Rat]) -> XPoly {
        let v: Vec<Rat> = self.coeffs.iter().map(|p| p.eval(c)).collect();
        XPoly::from_rats(&v)
    }

    /// Partial specialisation; unassigned parameters remain symbolic.
    pub fn substitute(&self, assign: &[Option<Rat>]) -> XPoly {
        Self::from_coeffs(self.coeffs.iter().map(|p| p.substitute(assign)).collect()).with_arity(self.arity)
    }

    /// Value at a rational x of a numeric polynomial.
    pub fn eval_rat(&self, x: &Rat) -> Option<Rat> {
        let rats = self.to_rats()?;
        let mut acc = Rat::zero();
        for c in rats.iter().rev() {
            acc = &(&acc * x) + c;
        }
        Some(acc)
    }

    /// View as a polynomial in (x, c_1, .., c_m) with x the most significant variable.
    pub fn to_param(&self) -> ParamPoly {
        let shifted: Vec<ParamPoly> = self.coeffs.iter().map(|c| c.shift_vars(1)).collect();
        ParamPoly::from_univariate(0, &shifted, self.arity + 1)
    }

    pub fn from_param(p: &ParamPoly, arity: usize) -> XPoly {
        let u = p.to_univariate(0);
        let coeffs = u
            .into_iter()
            .map(|c| {
                ParamPoly::from_terms(arity, c.terms().map(|(m, r)| (m.iter().skip(1).copied().collect(), r.clone())))
            })
            .collect();
        Self::from_coeffs(coeffs).with_arity(arity)
    }

    /// Quotient and remainder by a divisor whose leading coefficient is a nonzero rational.
    pub fn div_rem(&self, d: &XPoly) -> Result<(XPoly, XPoly)> {
        let lc = d.leading_coeff().constant_value().filter(|r| !r.is_zero()).ok_or(Error::DivisionByZero)?;
        let inv = lc.recip()?;
        let arity = self.arity.max(d.arity);
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        let mut q = vec![ParamPoly::zero(arity); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let f = r.last().unwrap().scale(&inv);
            for (i, di) in d.coeffs.iter().enumerate() {
                r[shift + i] = &r[shift + i] - &(&f * di);
            }
            q[shift] = f;
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Ok((Self::from_coeffs(q).with_arity(arity), Self::from_coeffs(r).with_arity(arity)))
    }

    /// Exact quotient, `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &XPoly) -> Option<XPoly> {
        if d.is_zero() {
            return None;
        }
        let arity = self.arity.max(d.arity);
        if d.leading_coeff().is_constant() {
            let (q, r) = self.div_rem(d).ok()?;
            return if r.is_zero() { Some(q) } else { None };
        }
        let q = self.to_param().div_exact(&d.to_param())?;
        Some(XPoly::from_param(&q, arity))
    }

    /// Gcd normalised to lex-leading coefficient one.
    pub fn gcd(a: &XPoly, b: &XPoly) -> XPoly {
        let arity = a.arity.max(b.arity);
        if a.is_zero() {
            return b.lex_monic();
        }
        if b.is_zero() {
            return a.lex_monic();
        }
        if a.is_constant_in_x() && a.is_numeric() || b.is_constant_in_x() && b.is_numeric() {
            return XPoly::one(arity);
        }
        if let (Some(ra), Some(rb)) = (a.to_rats(), b.to_rats()) {
            return rat_gcd(&ra, &rb).with_arity(arity);
        }
        XPoly::from_param(&gcd::gcd(&a.to_param(), &b.to_param()), arity)
    }

    pub fn lex_monic(&self) -> XPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale_rat(&self.lex_leading_rat().recip().expect("nonzero"))
    }
}

fn rat_gcd(a: &[Rat], b: &[Rat]) -> XPoly {
    if gcd::certified_coprime_rat(a, b) || gcd::certified_coprime_rat(b, a) {
        return XPoly::one(0);
    }
    let mut p = XPoly::from_rats(a).lex_monic();
    let mut q = XPoly::from_rats(b).lex_monic();
    if p.coeffs.len() < q.coeffs.len() {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() {
        let (_, r) = p.div_rem(&q).expect("nonzero divisor");
        p = q;
        q = r.lex_monic();
    }
    p
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let xs = match d {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{d}"),
            };
            let cs = c.to_string();
            let simple = c.num_terms() == 1;
            let (neg, body) = if simple && cs.starts_with('-') { (true, cs[1..].to_string()) } else { (false, cs) };
            let body = if xs.is_empty() {
                if simple { body } else { format!("({body})") }
            } else if body == "1" {
                xs
            } else if simple {
                format!("{body}*{xs}")
            } else {
                format!("({body})*{xs}")
            };
            if first {
                write!(f, "{}{}", if neg { "-" } else { "" }, body)?;
            } else {
                write!(f, " {} {}", if neg { "-" } else { "+" }, body)?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! xp_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&XPoly> for &XPoly {
            type Output = XPoly;
            fn $m(self, rhs: &XPoly) -> XPoly {
                self.$f(rhs)
            }
        }
        impl $tr<XPoly> for XPoly {
            type Output = XPoly;
            fn $m(self, rhs: XPoly) -> XPoly {
                self.$f(&rhs)
            }
        }
        impl $tr<&XPoly> for XPoly {
            type Output = XPoly;
            fn $m(self, rhs: &XPoly) -> XPoly {
                self.$f(rhs)
            }
        }
    };
}

xp_binop!(Add, add, add_ref);
xp_binop!(Sub, sub, sub_ref);
xp_binop!(Mul, mul, mul_ref);

impl Neg for &XPoly {
    type Output = XPoly;
    fn neg(self) -> XPoly {
        self.neg_ref()
    }
}

impl Neg for XPoly {
    type Output = XPoly;
    fn neg(self) -> XPoly {
        self.neg_ref()
    }
}
