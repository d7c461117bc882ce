//! Gröbner bases in ℤ[t, s, t^-1, s^-1].
//!
//! The primary object is the strong Gröbner basis over ℤ, built by
//! [`strong_groebner`] and made unique by [`GroebnerBasis::canonicalize`].
//! Published FLAG tables print reduced bases over ℚ with denominators cleared;
//! [`rational_reduced`] projects a ℤ-basis onto that form and
//! [`rational_groebner`] computes it independently.

mod buchberger;
mod canonical;
mod rational;
mod reduce;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polyring::{MonomialOrder, Polynomial};

pub use buchberger::{g_polynomial, is_strong_groebner, needs_g_polynomial, s_polynomial, strong_groebner};
pub use rational::{rational_groebner, rational_reduced};
pub use reduce::{rational_reduce, rational_tail_reduce, strong_reduce};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("monomial orders differ: {0} vs {1}")]
    OrderMismatch(MonomialOrder, MonomialOrder),
    #[error("coefficient domains differ: {0:?} vs {1:?}")]
    DomainMismatch(Coefficients, Coefficients),
}

/// Which ring the basis is a Gröbner basis over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    Integers,
    Rationals,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    generators: Vec<Polynomial>,
    ord: MonomialOrder,
}

impl Ideal {
    /// Zeros are dropped and exact duplicates removed, keeping first
    /// occurrences. Generators are brought to `ord`.
    pub fn new(generators: Vec<Polynomial>, ord: MonomialOrder) -> Self {
        let mut out: Vec<Polynomial> = Vec::with_capacity(generators.len());
        for g in generators {
            if g.is_zero() {
                continue;
            }
            let g = g.with_order(ord);
            if !out.contains(&g) {
                out.push(g);
            }
        }
        Ideal { generators: out, ord }
    }

    pub fn ord(&self) -> MonomialOrder {
        self.ord
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerBasis {
    #[serde(with = "order_string")]
    order: MonomialOrder,
    canonical: bool,
    domain: Coefficients,
    count: usize,
    elements: Vec<Polynomial>,
}

mod order_string {
    use serde::{de, Deserialize, Deserializer, Serializer};

    use crate::polyring::MonomialOrder;

    pub fn serialize<S: Serializer>(ord: &MonomialOrder, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&ord.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<MonomialOrder, D::Error> {
        String::deserialize(d)?.parse().map_err(de::Error::custom)
    }
}

impl GroebnerBasis {
    pub(crate) fn from_parts(elements: Vec<Polynomial>, ord: MonomialOrder, canonical: bool, domain: Coefficients) -> Self {
        let elements: Vec<Polynomial> = elements.into_iter().map(|g| g.with_order(ord)).collect();
        GroebnerBasis { order: ord, canonical, domain, count: elements.len(), elements }
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn ord(&self) -> MonomialOrder {
        self.order
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn domain(&self) -> Coefficients {
        self.domain
    }

    /// Unique representative of the ideal: minimal, tail-reduced, positive
    /// leading coefficients, sorted ascending by leading monomial and then
    /// leading coefficient. Idempotent.
    pub fn canonicalize(&self) -> GroebnerBasis {
        let elements = match self.domain {
            Coefficients::Integers => canonical::canonical_integer(&self.elements, self.order),
            Coefficients::Rationals => canonical::canonical_rational(&self.elements, self.order),
        };
        GroebnerBasis::from_parts(elements, self.order, true, self.domain)
    }

    /// Whether the basis contains a unit, i.e. spans the whole ring.
    pub fn is_trivial(&self) -> bool {
        self.elements.iter().any(|g| match self.domain {
            Coefficients::Integers => g.is_constant() && g.leading_coeff().is_some_and(|c| c.magnitude() == &1u32.into()),
            Coefficients::Rationals => g.is_constant(),
        })
    }
}

/// Membership test by reduction to zero. The reduction matches the basis
/// domain: strong reduction over ℤ, full reduction over ℚ.
pub fn ideal_member(f: &Polynomial, basis: &GroebnerBasis) -> bool {
    let f = f.clone().with_order(basis.order);
    match basis.domain {
        Coefficients::Integers => strong_reduce(&f, &basis.elements).is_zero(),
        Coefficients::Rationals => rational_reduce(&f, &basis.elements).is_zero(),
    }
}

/// Mutual containment of two Gröbner bases over the same order and domain.
pub fn ideal_equal(a: &GroebnerBasis, b: &GroebnerBasis) -> Result<bool, GroebnerError> {
    if a.order != b.order {
        return Err(GroebnerError::OrderMismatch(a.order, b.order));
    }
    if a.domain != b.domain {
        return Err(GroebnerError::DomainMismatch(a.domain, b.domain));
    }
    Ok(a.elements.iter().all(|f| ideal_member(f, b)) && b.elements.iter().all(|f| ideal_member(f, a)))
}
