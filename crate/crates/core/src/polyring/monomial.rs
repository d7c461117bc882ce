use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

/// One of the four formal variables of the ring.
///
/// `TInv` and `SInv` are independent indeterminates; nothing in the ring
/// itself makes `t * t^-1` equal to one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    T = 0,
    S = 1,
    TInv = 2,
    SInv = 3,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::T, Var::S, Var::TInv, Var::SInv];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::T => "t",
            Var::S => "s",
            Var::TInv => "tinv",
            Var::SInv => "sinv",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        match name {
            "t" => Some(Var::T),
            "s" => Some(Var::S),
            "tinv" | "t^-1" => Some(Var::TInv),
            "sinv" | "s^-1" => Some(Var::SInv),
            _ => None,
        }
    }
}

/// Exponent vector indexed by [`Var::index`]: `(e_t, e_s, e_tinv, e_sinv)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(pub [u32; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn new(e_t: u32, e_s: u32, e_tinv: u32, e_sinv: u32) -> Self {
        Monomial([e_t, e_s, e_tinv, e_sinv])
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        let mut m = Monomial::ONE;
        m.0[v.index()] = e;
        m
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; 4]
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut q = [0; 4];
        for (i, slot) in q.iter_mut().enumerate() {
            *slot = other.0[i] - self.0[i];
        }
        Some(Monomial(q))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut l = [0; 4];
        for (i, slot) in l.iter_mut().enumerate() {
            *slot = self.0[i].max(other.0[i]);
        }
        Monomial(l)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Mul for Monomial {
    type Output = Monomial;

    fn mul(self, rhs: Monomial) -> Monomial {
        let mut p = [0; 4];
        for (i, slot) in p.iter_mut().enumerate() {
            *slot = self.0[i] + rhs.0[i];
        }
        Monomial(p)
    }
}

// Factors print highest-default-precedence first, e.g. `s^-1*t^-1`.
const PRINT_ORDER: [Var; 4] = [Var::SInv, Var::TInv, Var::S, Var::T];

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for v in PRINT_ORDER {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            match (v, e) {
                (Var::T, 1) => write!(f, "t")?,
                (Var::S, 1) => write!(f, "s")?,
                (Var::T, e) => write!(f, "t^{e}")?,
                (Var::S, e) => write!(f, "s^{e}")?,
                (Var::TInv, e) => write!(f, "t^-{e}")?,
                (Var::SInv, e) => write!(f, "s^-{e}")?,
            }
        }
        Ok(())
    }
}
