//! Sparse polynomials over ℤ in the four formal variables `t, s, t^-1, s^-1`.
//!
//! A [`Polynomial`] keeps its terms sorted descending under its own
//! [`MonomialOrder`], so the leading term is always `terms()[0]`. Coefficients
//! are arbitrary precision.

mod monomial;
mod order;
mod parse;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use monomial::{Monomial, Var};
pub use order::MonomialOrder;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("zero polynomial has no leading term")]
    Zero,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("bad monomial order: {0}")]
    BadOrder(String),
}

/// A term is a monomial with its nonzero coefficient.
pub type Term = (Monomial, BigInt);

#[derive(Clone, Debug)]
pub struct Polynomial {
    terms: Vec<Term>,
    ord: MonomialOrder,
}

impl Polynomial {
    pub fn zero(ord: MonomialOrder) -> Self {
        Polynomial { terms: Vec::new(), ord }
    }

    pub fn constant(c: impl Into<BigInt>, ord: MonomialOrder) -> Self {
        Self::monomial(c, Monomial::ONE, ord)
    }

    pub fn one(ord: MonomialOrder) -> Self {
        Self::constant(1, ord)
    }

    pub fn var(v: Var, ord: MonomialOrder) -> Self {
        Self::monomial(1, Monomial::var(v), ord)
    }

    pub fn monomial(c: impl Into<BigInt>, m: Monomial, ord: MonomialOrder) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero(ord);
        }
        Polynomial { terms: vec![(m, c)], ord }
    }

    /// Builds a polynomial from arbitrary terms, combining repeated monomials.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (C, Monomial)>, ord: MonomialOrder) -> Self {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (c, m) in terms {
            *acc.entry(m).or_default() += c.into();
        }
        Self::from_map(acc, ord)
    }

    fn from_map(acc: HashMap<Monomial, BigInt>, ord: MonomialOrder) -> Self {
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        Polynomial { terms, ord }
    }

    /// Terms already sorted descending and free of zeros and repeats.
    pub(crate) fn from_sorted_unchecked(terms: Vec<Term>, ord: MonomialOrder) -> Self {
        debug_assert!(terms.windows(2).all(|w| ord.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { terms, ord }
    }

    pub fn ord(&self) -> MonomialOrder {
        self.ord
    }

    pub fn with_order(mut self, ord: MonomialOrder) -> Self {
        if ord != self.ord {
            self.ord = ord;
            self.terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        }
        self
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn lt(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Leading coefficient and monomial under the polynomial's order.
    pub fn leading_term(&self) -> Result<(BigInt, Monomial), PolyError> {
        self.lt().map(|(m, c)| (c.clone(), *m)).ok_or(PolyError::Zero)
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.lt().map(|t| t.0)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.lt().map(|t| &t.1)
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.iter().find(|(tm, _)| tm == m).map(|(_, c)| c.clone()).unwrap_or_default()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.ord);
        }
        let terms = self.terms.iter().map(|(m, a)| (*m, a * c)).collect();
        Polynomial { terms, ord: self.ord }
    }

    /// `c * m * self`; monomial multiplication preserves the term order.
    pub fn mul_term(&self, c: &BigInt, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero(self.ord);
        }
        let terms = self.terms.iter().map(|(tm, a)| (*tm * *m, a * c)).collect();
        Polynomial { terms, ord: self.ord }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.ord);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self + c * m * other`, merged in a single pass.
    pub fn add_scaled(&self, c: &BigInt, m: &Monomial, other: &Polynomial) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let other = if other.ord == self.ord {
            std::borrow::Cow::Borrowed(other)
        } else {
            std::borrow::Cow::Owned(other.clone().with_order(self.ord))
        };
        let ord = self.ord;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(tm, x)| (*tm * *m, x * c)).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(x), Some(y)) => match ord.cmp(&x.0, &y.0) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (m1, c1) = a.next().unwrap();
                        let (_, c2) = b.next().unwrap();
                        let s = c1 + c2;
                        if !s.is_zero() {
                            out.push((*m1, s));
                        }
                    }
                },
            }
        }
        Polynomial { terms: out, ord }
    }

    /// Gcd of the coefficients, non-negative; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.terms.iter().fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        let terms = self.terms.iter().map(|(m, c)| (*m, c / &g)).collect();
        Polynomial { terms, ord: self.ord }
    }

    /// Negates if needed so the leading coefficient is positive.
    pub fn normalize_sign(self) -> Self {
        match self.terms.first() {
            Some((_, c)) if c.is_negative() => -self,
            _ => self,
        }
    }

    /// Terms sorted by the structural monomial order; used for hashing and
    /// order-independent comparison.
    pub fn canonical_key(&self) -> Vec<Term> {
        let mut k = self.terms.clone();
        k.sort_by(|a, b| a.0.cmp(&b.0));
        k
    }

    /// Substitutes integer values for every variable.
    pub fn eval(&self, values: [&BigInt; 4]) -> BigInt {
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for var in Var::ALL {
                for _ in 0..m.exp(var) {
                    v *= values[var.index()];
                }
            }
            acc += v;
        }
        acc
    }

    pub fn parse(text: &str, ord: MonomialOrder) -> Result<Self, PolyError> {
        parse::parse_polynomial(text, ord)
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if self.ord == other.ord {
            self.terms == other.terms
        } else {
            self.canonical_key() == other.canonical_key()
        }
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.canonical_key().hash(state);
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.add_scaled(&BigInt::one(), &Monomial::ONE, rhs)
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.add_scaled(&-BigInt::one(), &Monomial::ONE, rhs)
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(self.len() * rhs.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                *acc.entry(*m1 * *m2).or_default() += c1 * c2;
            }
        }
        Polynomial::from_map(acc, self.ord)
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for (_, c) in self.terms.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// JSON form: `[[coeff, [e_t, e_s, e_tinv, e_sinv]], ...]`, sorted descending.
/// Coefficients outside the `i64` range are written as decimal strings.
impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            let coeff = match i64::try_from(c) {
                Ok(v) => serde_json::Value::from(v),
                Err(_) => serde_json::Value::from(c.to_string()),
            };
            seq.serialize_element(&(coeff, m.0))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw: Vec<(serde_json::Value, [u32; 4])> = Vec::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (c, e) in raw {
            let c: BigInt = match c {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| de::Error::custom("coefficient is not an integer"))?,
                serde_json::Value::String(s) => s.parse().map_err(de::Error::custom)?,
                _ => return Err(de::Error::custom("coefficient must be a number or string")),
            };
            terms.push((c, Monomial(e)));
        }
        Ok(Polynomial::from_terms(terms, MonomialOrder::default()))
    }
}
