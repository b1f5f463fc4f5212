//! Arithmetic modulo the Mersenne prime 2^61 - 1, used only to certify
//! coprimality cheaply. A certificate produced here is exact: it never
//! claims coprimality that does not hold over Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::rat::Rat;

pub const P: u64 = (1u64 << 61) - 1;

pub fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

pub fn mul(a: u64, b: u64) -> u64 {
    let t = (a as u128) * (b as u128);
    let lo = (t as u64) & P;
    let hi = (t >> 61) as u64;
    add(lo, hi)
}

pub fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue.
pub fn inv(a: u64) -> u64 {
    debug_assert!(a != 0);
    pow(a, P - 2)
}

fn reduce_big(n: &BigInt) -> u64 {
    let p = BigInt::from(P);
    let r = n.mod_floor(&p);
    r.to_u64().expect("residue fits in u64")
}

/// Image of a rational, or `None` when p divides the denominator.
pub fn of_rat(r: &Rat) -> Option<u64> {
    let d = reduce_big(r.denom());
    if d == 0 {
        return None;
    }
    let n = if r.numer().is_negative() {
        sub(0, reduce_big(&-r.numer()))
    } else if r.numer().is_zero() {
        0
    } else {
        reduce_big(r.numer())
    };
    Some(mul(n, inv(d)))
}

fn trim(p: &mut Vec<u64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

/// Degree of the monic gcd of two dense polynomials over F_p
/// (`None` when both are zero).
pub fn gcd_degree(a: &[u64], b: &[u64]) -> Option<usize> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    loop {
        if b.is_empty() {
            return if a.is_empty() { None } else { Some(a.len() - 1) };
        }
        // a <- a mod b
        let lb_inv = inv(*b.last().unwrap());
        let db = b.len() - 1;
        while a.len() > db && !a.is_empty() {
            let shift = a.len() - 1 - db;
            let f = mul(*a.last().unwrap(), lb_inv);
            for (i, bi) in b.iter().enumerate() {
                a[shift + i] = sub(a[shift + i], mul(f, *bi));
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
}
