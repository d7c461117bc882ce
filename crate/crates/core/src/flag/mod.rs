//! FLAG invariants: the FLAQ presentation matrix of a diagram, its
//! elementary ideals extended by the ring relations, their Gröbner bases,
//! and the Alexander polynomial recovered from them.
//!
//! Each classical crossing contributes the row `t·a + s·o − b = 0` where `o`
//! is the over-arc and `a → b` the under-arcs in the order fixed by the
//! [`RelationConvention`]. Virtual crossings are ignored.

mod minors;
pub mod univariate;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{label_arcs, ArcLabeling, ArcMode, KnotDiagram, Sign};
use crate::groebner::{rational_reduced, strong_groebner, strong_reduce, GroebnerBasis, Ideal};
use crate::polyring::{Monomial, MonomialOrder, Polynomial, Var};

pub use minors::minors;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlagError {
    #[error("minor size {size} exceeds the {rows}×{cols} matrix")]
    MinorSize { size: usize, rows: usize, cols: usize },
    #[error("matrix dimension {0} is too large for minor enumeration")]
    TooLarge(usize),
    #[error("Alexander polynomial vanishes; the determinant is undefined")]
    ZeroAlexander,
    #[error("unknown relation convention `{0}`")]
    Convention(String),
}

/// Which under-arc is multiplied by `t` in the crossing relation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationConvention {
    /// Positive: `t·u_in + s·o = u_out`; negative: `t·u_out + s·o = u_in`.
    /// The under-arc on the right of the over-strand carries `t`.
    #[default]
    RightUnder,
    /// The mirror choice: positive `t·u_out + s·o = u_in`, negative
    /// `t·u_in + s·o = u_out`.
    LeftUnder,
}

impl FromStr for RelationConvention {
    type Err = FlagError;
    fn from_str(s: &str) -> Result<Self, FlagError> {
        match s {
            "right-under" => Ok(RelationConvention::RightUnder),
            "left-under" => Ok(RelationConvention::LeftUnder),
            other => Err(FlagError::Convention(other.to_string())),
        }
    }
}

/// Matrix over ℤ[t, s, t^-1, s^-1]; one row per classical crossing and one
/// column per arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    entries: Vec<Vec<Polynomial>>,
    cols: usize,
    ord: MonomialOrder,
    pub name: Option<String>,
    pub labeling: Option<ArcLabeling>,
}

impl PolyMatrix {
    pub fn new(entries: Vec<Vec<Polynomial>>, ord: MonomialOrder) -> PolyMatrix {
        let cols = entries.first().map_or(0, Vec::len);
        assert!(entries.iter().all(|r| r.len() == cols), "ragged matrix");
        PolyMatrix { entries, cols, ord, name: None, labeling: None }
    }

    /// An `0 × cols` matrix.
    pub fn empty(cols: usize, ord: MonomialOrder) -> PolyMatrix {
        PolyMatrix { entries: Vec::new(), cols, ord, name: None, labeling: None }
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ord(&self) -> MonomialOrder {
        self.ord
    }

    pub fn entry(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r][c]
    }

    pub fn row(&self, r: usize) -> &[Polynomial] {
        &self.entries[r]
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "[ {} ]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// The FLAQ matrix of `d`, arcs labelled with virtual crossings ignored.
pub fn flaq_matrix(d: &KnotDiagram, ord: MonomialOrder, convention: RelationConvention) -> PolyMatrix {
    let labels = label_arcs(d, ArcMode::ClassicalArcs);
    let n = labels.n;
    let var = |v| Polynomial::var(v, ord);
    let mut rows = Vec::new();
    for c in d.crossings.iter().filter(|c| c.is_classical()) {
        let (ui, uo, o) = (labels.arc(c.under_in()), labels.arc(c.under_out()), labels.arc(c.over_in()));
        let positive = c.sign == Some(Sign::Positive);
        let (a, b) = match (positive, convention) {
            (true, RelationConvention::RightUnder) | (false, RelationConvention::LeftUnder) => (ui, uo),
            _ => (uo, ui),
        };
        let mut row = vec![Polynomial::zero(ord); n];
        row[a - 1] = &row[a - 1] + &var(Var::T);
        row[o - 1] = &row[o - 1] + &var(Var::S);
        row[b - 1] = &row[b - 1] - &Polynomial::one(ord);
        rows.push(row);
    }
    let mut m = if rows.is_empty() { PolyMatrix::empty(n, ord) } else { PolyMatrix::new(rows, ord) };
    m.name = d.name.clone();
    m.labeling = Some(labels);
    m
}

/// `s·s^-1 − 1`, `t·t^-1 − 1`, `1 − t − s`.
pub fn ring_relations(ord: MonomialOrder) -> Vec<Polynomial> {
    let one = Polynomial::one(ord);
    let v = |x| Polynomial::var(x, ord);
    vec![
        &(&v(Var::S) * &v(Var::SInv)) - &one,
        &(&v(Var::T) * &v(Var::TInv)) - &one,
        &(&one - &v(Var::T)) - &v(Var::S),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagIdeal {
    pub k: usize,
    /// Distinct nonzero minors of size `n − k`, before any reduction.
    pub minors: Vec<Polynomial>,
    #[serde(skip)]
    pub ideal: Ideal,
}

/// Minors of size `n − k` of the FLAQ matrix together with the ring
/// relations. Size `0` contributes the minor `1`; a size beyond the row
/// count contributes nothing. The crossing-free unknot is the `0 × 1`
/// matrix.
pub fn flag_ideal(d: &KnotDiagram, k: usize, ord: MonomialOrder, convention: RelationConvention) -> FlagIdeal {
    let p = flaq_matrix(d, ord, convention);
    let size = p.cols().saturating_sub(k);
    let minors = if size > p.rows() { Vec::new() } else { minors(&p, size).expect("size checked") };
    let relations = ring_relations(ord);
    // Pre-reduce by the ring relations, then pairwise, to shrink the input.
    let mut gens: Vec<Polynomial> = Vec::new();
    for m in &minors {
        let r = strong_reduce(m, &relations);
        let r = strong_reduce(&r, &gens);
        if !r.is_zero() {
            gens.push(r.normalize_sign());
        }
    }
    gens.extend(relations);
    FlagIdeal { k, minors, ideal: Ideal::new(gens, ord) }
}

/// A FLAG invariant in both coefficient domains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagInvariant {
    pub k: usize,
    /// Canonical strong Gröbner basis over ℤ.
    pub integer: GroebnerBasis,
    /// Reduced Gröbner basis over ℚ with primitive integer elements; the
    /// form printed in knot tables.
    pub rational: GroebnerBasis,
}

pub fn flag_invariant(d: &KnotDiagram, k: usize, ord: MonomialOrder, convention: RelationConvention) -> FlagInvariant {
    let ideal = flag_ideal(d, k, ord, convention).ideal;
    let raw = strong_groebner(&ideal);
    FlagInvariant { k, rational: rational_reduced(&raw), integer: raw.canonicalize() }
}

/// `g` with `s ↦ 1 − t`, multiplied by `t^c (1 − t)^d` to clear `t^-1` and
/// `s^-1`, where `c` and `d` are the largest exponents of those variables.
pub fn specialize(g: &Polynomial) -> univariate::Dense {
    let exps = |v: Var| g.terms().iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0);
    let (c_max, d_max) = (exps(Var::TInv), exps(Var::SInv));
    let one_minus_t = vec![BigInt::from(1), BigInt::from(-1)];
    let mut out: univariate::Dense = Vec::new();
    for (m, c) in g.terms() {
        let Monomial([a, b, c_, d_]) = *m;
        let mut term = vec![BigInt::from(0); (a + c_max - c_) as usize];
        term.push(c.clone());
        let term = univariate::mul(&term, &univariate::pow(&one_minus_t, b + d_max - d_));
        if out.len() < term.len() {
            out.resize(term.len(), BigInt::from(0));
        }
        for (i, x) in term.into_iter().enumerate() {
            out[i] += x;
        }
    }
    univariate::trim(out)
}

/// Alexander polynomial from a FLAG₁ basis: gcd over ℚ[t] of the nonzero
/// specializations, without factors of `t`, primitive with positive leading
/// coefficient. Zero when every element specializes to zero.
pub fn alexander_from_basis(basis: &[Polynomial]) -> univariate::Dense {
    let g = basis.iter().map(specialize).fold(Vec::new(), |acc, s| univariate::gcd(&acc, &s));
    univariate::primitive(&univariate::strip_t(&g))
}

/// The Alexander polynomial of `d` as a polynomial in `t`.
pub fn alexander_poly(d: &KnotDiagram, ord: MonomialOrder) -> Polynomial {
    let inv = flag_invariant(d, 1, ord, RelationConvention::default());
    dense_to_poly(&alexander_from_basis(inv.rational.elements()), ord)
}

pub fn dense_to_poly(p: &[BigInt], ord: MonomialOrder) -> Polynomial {
    Polynomial::from_terms(p.iter().enumerate().map(|(i, c)| (c.clone(), Monomial::var_pow(Var::T, i as u32))), ord)
}

pub fn poly_to_dense(p: &Polynomial) -> univariate::Dense {
    specialize(p)
}

/// `|Δ(−1)|`.
pub fn determinant(d: &KnotDiagram) -> Result<BigInt, FlagError> {
    let delta = alexander_poly(d, MonomialOrder::default());
    determinant_of(&poly_to_dense(&delta))
}

pub fn determinant_of(delta: &[BigInt]) -> Result<BigInt, FlagError> {
    if delta.is_empty() {
        return Err(FlagError::ZeroAlexander);
    }
    Ok(univariate::eval(delta, &BigInt::from(-1)).abs())
}

/// Machine-readable summary of one FLAG computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagReport {
    pub name: Option<String>,
    pub k: usize,
    pub order: String,
    pub cardinality: usize,
    pub basis: Vec<String>,
    pub basis_json: GroebnerBasis,
    pub integer_cardinality: usize,
    pub integer_basis: Vec<String>,
    pub alexander: String,
    pub determinant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl FlagReport {
    pub fn new(d: &KnotDiagram, k: usize, ord: MonomialOrder, convention: RelationConvention) -> FlagReport {
        let inv = flag_invariant(d, k, ord, convention);
        let delta = alexander_from_basis(flag_invariant(d, 1, ord, convention).rational.elements());
        FlagReport {
            name: d.name.clone(),
            k,
            order: ord.to_string(),
            cardinality: inv.rational.len(),
            basis: inv.rational.elements().iter().map(|g| g.to_string()).collect(),
            integer_cardinality: inv.integer.len(),
            integer_basis: inv.integer.elements().iter().map(|g| g.to_string()).collect(),
            basis_json: inv.rational,
            alexander: dense_to_poly(&delta, ord).to_string(),
            determinant: determinant_of(&delta).ok().map(|d| d.to_string()),
            timing_ms: None,
        }
    }
}
