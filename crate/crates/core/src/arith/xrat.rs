//! Reduced rational functions in x over Q(c).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::param_poly::ParamPoly;
use super::rat::Rat;
use super::xpoly::XPoly;
use crate::error::{Error, Result};

/// `num / den` with gcd(num, den) = 1 and den lex-monic, so equal values are
/// structurally equal. Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct XRat {
    num: XPoly,
    den: XPoly,
}

impl XRat {
    pub fn new(num: XPoly, den: XPoly) -> Result<XRat> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let g = XPoly::gcd(&num, &den);
        if g.is_one() || num.is_zero() {
            return Ok(Self::normalized(num, den));
        }
        let n = num.div_exact(&g).expect("gcd divides numerator");
        let d = den.div_exact(&g).expect("gcd divides denominator");
        Ok(Self::normalized(n, d))
    }

    /// Caller guarantees coprimality.
    fn normalized(num: XPoly, den: XPoly) -> XRat {
        let arity = num.arity().max(den.arity());
        if num.is_zero() {
            return XRat::zero(arity);
        }
        let lc = den.lex_leading_rat();
        if lc.is_one() {
            return XRat { num: num.with_arity(arity), den: den.with_arity(arity) };
        }
        let inv = lc.recip().expect("nonzero denominator");
        XRat { num: num.scale_rat(&inv).with_arity(arity), den: den.scale_rat(&inv).with_arity(arity) }
    }

    pub fn zero(arity: usize) -> XRat {
        XRat { num: XPoly::zero(arity), den: XPoly::one(arity) }
    }

    pub fn one(arity: usize) -> XRat {
        XRat { num: XPoly::one(arity), den: XPoly::one(arity) }
    }

    pub fn from_poly(p: XPoly) -> XRat {
        let arity = p.arity();
        XRat { num: p, den: XPoly::one(arity) }
    }

    pub fn from_rat(r: Rat) -> XRat {
        XRat::from_poly(XPoly::from_rats(&[r]))
    }

    pub fn from_int(n: i64) -> XRat {
        XRat::from_rat(Rat::from_int(n))
    }

    pub fn from_param(p: ParamPoly) -> XRat {
        XRat::from_poly(XPoly::constant(p))
    }

    pub fn num(&self) -> &XPoly {
        &self.num
    }

    pub fn den(&self) -> &XPoly {
        &self.den
    }

    pub fn arity(&self) -> usize {
        self.num.arity().max(self.den.arity())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Rational value when the function is a numeric constant.
    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.num.is_constant_in_x() && self.den.is_one() {
            return self.num.coeff(0).constant_value();
        }
        None
    }

    pub fn add_ref(&self, o: &XRat) -> XRat {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return XRat::new(&self.num + &o.num, self.den.clone()).expect("nonzero");
        }
        let g = XPoly::gcd(&self.den, &o.den);
        if g.is_one() {
            let num = &(&self.num * &o.den) + &(&o.num * &self.den);
            return Self::normalized(num, &self.den * &o.den);
        }
        let a1 = self.den.div_exact(&g).expect("gcd divides");
        let b1 = o.den.div_exact(&g).expect("gcd divides");
        let t = &(&self.num * &b1) + &(&o.num * &a1);
        if t.is_zero() {
            return XRat::zero(self.arity().max(o.arity()));
        }
        let h = XPoly::gcd(&t, &g);
        if h.is_one() {
            return Self::normalized(t, &(&a1 * &b1) * &g);
        }
        let t = t.div_exact(&h).expect("gcd divides");
        let g = g.div_exact(&h).expect("gcd divides");
        Self::normalized(t, &(&a1 * &b1) * &g)
    }

    pub fn sub_ref(&self, o: &XRat) -> XRat {
        self.add_ref(&o.neg_ref())
    }

    pub fn neg_ref(&self) -> XRat {
        XRat { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul_ref(&self, o: &XRat) -> XRat {
        let arity = self.arity().max(o.arity());
        if self.is_zero() || o.is_zero() {
            return XRat::zero(arity);
        }
        let g1 = XPoly::gcd(&self.num, &o.den);
        let g2 = XPoly::gcd(&o.num, &self.den);
        let (a, d) = if g1.is_one() {
            (self.num.clone(), o.den.clone())
        } else {
            (self.num.div_exact(&g1).unwrap(), o.den.div_exact(&g1).unwrap())
        };
        let (c, b) = if g2.is_one() {
            (o.num.clone(), self.den.clone())
        } else {
            (o.num.div_exact(&g2).unwrap(), self.den.div_exact(&g2).unwrap())
        };
        Self::normalized(&a * &c, &b * &d)
    }

    pub fn scale_rat(&self, r: &Rat) -> XRat {
        if r.is_zero() {
            return XRat::zero(self.arity());
        }
        XRat { num: self.num.scale_rat(r), den: self.den.clone() }
    }

    pub fn recip(&self) -> Result<XRat> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div_ref(&self, o: &XRat) -> Result<XRat> {
        Ok(self.mul_ref(&o.recip()?))
    }

    pub fn pow(&self, e: u32) -> XRat {
        XRat { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// d/dx.
    pub fn derivative(&self) -> XRat {
        if self.den.is_one() {
            return XRat::from_poly(self.num.derivative());
        }
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        XRat::new(num, &self.den * &self.den).expect("nonzero")
    }

    /// d/dc_{var+1}.
    pub fn partial_c(&self, var: usize) -> XRat {
        let num = &(&self.num.partial_c(var) * &self.den) - &(&self.num * &self.den.partial_c(var));
        XRat::new(num, &self.den * &self.den).expect("nonzero")
    }

    /// f'/f.
    pub fn log_derivative(f: &XPoly) -> Result<XRat> {
        if f.is_zero() {
            return Err(Error::LogOfZero);
        }
        XRat::new(f.derivative(), f.clone())
    }

    /// Full specialisation of the parameters; errors at a pole.
    pub fn specialize(&self, c: &[Rat]) -> Result<XRat> {
        let d = self.den.specialize(c);
        if d.is_zero() {
            return Err(Error::Singular("denominator vanishes identically".into()));
        }
        XRat::new(self.num.specialize(c), d)
    }

    pub fn substitute(&self, assign: &[Option<Rat>]) -> Result<XRat> {
        let d = self.den.substitute(assign);
        if d.is_zero() {
            return Err(Error::Singular("denominator vanishes identically".into()));
        }
        XRat::new(self.num.substitute(assign), d)
    }

    /// Value at a rational point x of a numeric function.
    pub fn eval_rat(&self, x: &Rat) -> Result<Rat> {
        let n = self.num.eval_rat(x).ok_or_else(|| Error::Shape("symbolic coefficients".into()))?;
        let d = self.den.eval_rat(x).ok_or_else(|| Error::Shape("symbolic coefficients".into()))?;
        n.checked_div(&d).map_err(|_| Error::Singular(format!("pole at x = {x}")))
    }
}

impl fmt::Display for XRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for XRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! xr_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&XRat> for &XRat {
            type Output = XRat;
            fn $m(self, rhs: &XRat) -> XRat {
                self.$f(rhs)
            }
        }
        impl $tr<XRat> for XRat {
            type Output = XRat;
            fn $m(self, rhs: XRat) -> XRat {
                self.$f(&rhs)
            }
        }
        impl $tr<&XRat> for XRat {
            type Output = XRat;
            fn $m(self, rhs: &XRat) -> XRat {
                self.$f(rhs)
            }
        }
    };
}

xr_binop!(Add, add, add_ref);
xr_binop!(Sub, sub, sub_ref);
xr_binop!(Mul, mul, mul_ref);

impl Neg for &XRat {
    type Output = XRat;
    fn neg(self) -> XRat {
        self.neg_ref()
    }
}

impl Neg for XRat {
    type Output = XRat;
    fn neg(self) -> XRat {
        self.neg_ref()
    }
}
