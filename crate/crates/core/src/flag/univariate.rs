//! Dense polynomials in `t` over ℤ, lowest degree first, used for the
//! Alexander specialization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Dense = Vec<BigInt>;

pub fn trim(mut p: Dense) -> Dense {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divided by its content, leading coefficient positive.
pub fn primitive(p: &[BigInt]) -> Dense {
    let p = trim(p.to_vec());
    let Some(lead) = p.last() else { return p };
    let mut c = content(&p);
    if lead.is_negative() {
        c = -c;
    }
    p.iter().map(|x| x / &c).collect()
}

/// Removes factors of `t`.
pub fn strip_t(p: &[BigInt]) -> Dense {
    let lead = p.iter().take_while(|c| c.is_zero()).count();
    trim(p[lead.min(p.len())..].to_vec())
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn pow(a: &[BigInt], e: u32) -> Dense {
    (0..e).fold(vec![BigInt::one()], |acc, _| mul(&acc, a))
}

/// Pseudo-remainder of `a` by nonzero `b`.
pub fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Dense {
    let b = trim(b.to_vec());
    let lb = b.last().expect("nonzero divisor").clone();
    let mut r = trim(a.to_vec());
    while r.len() >= b.len() {
        let lr = r.last().expect("nonempty").clone();
        let shift = r.len() - b.len();
        let mut next: Dense = r.iter().map(|c| c * &lb).collect();
        for (i, c) in b.iter().enumerate() {
            next[i + shift] -= &lr * c;
        }
        r = primitive_keep_sign(trim(next));
    }
    r
}

fn primitive_keep_sign(p: Dense) -> Dense {
    let c = content(&p);
    if c.is_zero() || c.is_one() {
        return p;
    }
    p.iter().map(|x| x / &c).collect()
}

/// Greatest common divisor over ℚ[t], as a primitive integer polynomial.
pub fn gcd(a: &[BigInt], b: &[BigInt]) -> Dense {
    let (mut a, mut b) = (primitive(a), primitive(b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = primitive(&r);
    }
    primitive(&a)
}

/// Whether `b` divides `a` in ℚ[t].
pub fn divides(b: &[BigInt], a: &[BigInt]) -> bool {
    pseudo_rem(a, b).is_empty()
}

pub fn eval(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Coefficients equal to their reversal up to a global sign.
pub fn is_symmetric(p: &[BigInt]) -> bool {
    let p = strip_t(p);
    let rev: Dense = p.iter().rev().cloned().collect();
    let neg: Dense = rev.iter().map(|c| -c).collect();
    p == rev || p == neg
}
