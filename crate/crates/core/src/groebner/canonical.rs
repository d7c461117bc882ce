use std::cmp::Ordering;

use crate::polyring::{MonomialOrder, Polynomial};

use super::buchberger::lc_divides;
use super::reduce::{rational_tail_reduce, strong_reduce};

fn by_leading_term(ord: MonomialOrder) -> impl Fn(&Polynomial, &Polynomial) -> Ordering {
    move |a, b| {
        let (ma, ca) = a.lt().expect("nonzero");
        let (mb, cb) = b.lt().expect("nonzero");
        ord.cmp(ma, mb).then(ca.cmp(cb))
    }
}

fn sorted_positive(elements: &[Polynomial], ord: MonomialOrder) -> Vec<Polynomial> {
    let mut v: Vec<Polynomial> = elements
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.clone().with_order(ord).normalize_sign())
        .collect();
    v.sort_by(by_leading_term(ord));
    v
}

/// Reduced strong basis over ℤ.
pub(super) fn canonical_integer(elements: &[Polynomial], ord: MonomialOrder) -> Vec<Polynomial> {
    let mut kept: Vec<Polynomial> = Vec::new();
    for g in sorted_positive(elements, ord) {
        if !kept.iter().any(|h| lc_divides(h, &g)) {
            kept.push(g);
        }
    }
    let mut out: Vec<Polynomial> = kept
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let (m, c) = g.lt().expect("nonzero").clone();
            let head = Polynomial::monomial(c, m, ord);
            let tail = g - &head;
            let others: Vec<Polynomial> = kept.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, h)| h.clone()).collect();
            &head + &strong_reduce(&tail, &others)
        })
        .collect();
    out.sort_by(by_leading_term(ord));
    out
}

/// Reduced basis over ℚ, each element scaled to a primitive integer
/// polynomial with positive leading coefficient.
pub(super) fn canonical_rational(elements: &[Polynomial], ord: MonomialOrder) -> Vec<Polynomial> {
    let mut kept: Vec<Polynomial> = Vec::new();
    for g in sorted_positive(elements, ord) {
        let m = g.leading_monomial().expect("nonzero");
        if !kept.iter().any(|h| h.leading_monomial().expect("nonzero").divides(&m)) {
            kept.push(g);
        }
    }
    let mut out: Vec<Polynomial> = kept
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let others: Vec<Polynomial> = kept.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, h)| h.clone()).collect();
            rational_tail_reduce(g, &others)
        })
        .collect();
    out.sort_by(by_leading_term(ord));
    out
}
