//! Buchberger completion over ℤ with S- and G-polynomials.

use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::{One, Signed};

use super::reduce::strong_reduce;
use super::{Coefficients, GroebnerBasis, Ideal};
use crate::polyring::{Monomial, MonomialOrder, Polynomial};

/// S-polynomial over ℤ: cancels the leading terms through the lcm of the
/// leading coefficients and of the leading monomials.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (m, a) = f.lt().expect("nonzero");
    let (n, b) = g.lt().expect("nonzero");
    let lm = m.lcm(n);
    let lc = a.lcm(b);
    let fa = &lc / a;
    let gb = &lc / b;
    f.mul_term(&fa, &lm.quotient_of_unchecked(m))
        .add_scaled(&-gb, &lm.quotient_of_unchecked(n), g)
}

/// G-polynomial over ℤ: the combination `u·(L/M)·f + v·(L/N)·g` whose
/// leading coefficient is `gcd(a, b)`.
pub fn g_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (m, a) = f.lt().expect("nonzero");
    let (n, b) = g.lt().expect("nonzero");
    let lm = m.lcm(n);
    let eg = a.extended_gcd(b);
    f.mul_term(&eg.x, &lm.quotient_of_unchecked(m))
        .add_scaled(&eg.y, &lm.quotient_of_unchecked(n), g)
}

/// True when neither leading coefficient divides the other, i.e. the
/// G-polynomial carries information the pair does not already have.
pub fn needs_g_polynomial(f: &Polynomial, g: &Polynomial) -> bool {
    let a = f.leading_coeff().expect("nonzero");
    let b = g.leading_coeff().expect("nonzero");
    !(a.is_multiple_of(b) || b.is_multiple_of(a))
}

/// Product criterion, restricted to unit leading coefficients where it is
/// sound over ℤ.
fn product_criterion(f: &Polynomial, g: &Polynomial) -> bool {
    let (m, a) = f.lt().expect("nonzero");
    let (n, b) = g.lt().expect("nonzero");
    m.is_coprime(n) && a.abs().is_one() && b.abs().is_one()
}

trait QuotientUnchecked {
    fn quotient_of_unchecked(&self, divisor: &Monomial) -> Monomial;
}

impl QuotientUnchecked for Monomial {
    fn quotient_of_unchecked(&self, divisor: &Monomial) -> Monomial {
        divisor.quotient_of(self).expect("lcm is divisible by both factors")
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn select_pair(pairs: &mut Vec<Pair>, ord: &MonomialOrder) -> Option<Pair> {
    if pairs.is_empty() {
        return None;
    }
    let mut best = 0;
    for k in 1..pairs.len() {
        let (p, q) = (&pairs[k], &pairs[best]);
        let c = ord.cmp(&p.lcm, &q.lcm).then((p.j, p.i).cmp(&(q.j, q.i)));
        if c == Ordering::Less {
            best = k;
        }
    }
    Some(pairs.swap_remove(best))
}

struct Completion {
    ord: MonomialOrder,
    basis: Vec<Polynomial>,
    pairs: Vec<Pair>,
}

impl Completion {
    fn add(&mut self, h: Polynomial) {
        if h.is_zero() {
            return;
        }
        let h = h.normalize_sign();
        let j = self.basis.len();
        let hm = h.leading_monomial().expect("nonzero");
        for (i, g) in self.basis.iter().enumerate() {
            let gm = g.leading_monomial().expect("nonzero");
            self.pairs.push(Pair { i, j, lcm: gm.lcm(&hm) });
        }
        self.basis.push(h);
    }
}

/// Strong Gröbner basis over ℤ of `ideal`, not yet canonicalized.
pub fn strong_groebner(ideal: &Ideal) -> GroebnerBasis {
    let ord = ideal.ord();
    let mut run = Completion { ord, basis: Vec::new(), pairs: Vec::new() };
    for f in ideal.generators() {
        let r = strong_reduce(f, &run.basis);
        run.add(r);
    }
    while let Some(Pair { i, j, .. }) = select_pair(&mut run.pairs, &run.ord) {
        let (f, g) = (run.basis[i].clone(), run.basis[j].clone());
        if !product_criterion(&f, &g) {
            let s = strong_reduce(&s_polynomial(&f, &g), &run.basis);
            run.add(s);
        }
        if needs_g_polynomial(&f, &g) {
            let gp = strong_reduce(&g_polynomial(&f, &g), &run.basis);
            run.add(gp);
        }
    }
    GroebnerBasis::from_parts(run.basis, ord, false, Coefficients::Integers)
}

/// Exhaustive post-hoc check of the strong Gröbner property: every pairwise
/// S- and G-polynomial strong-reduces to zero.
pub fn is_strong_groebner(elements: &[Polynomial]) -> bool {
    let nonzero: Vec<&Polynomial> = elements.iter().filter(|g| !g.is_zero()).collect();
    for (i, f) in nonzero.iter().enumerate() {
        for g in &nonzero[i + 1..] {
            if !strong_reduce(&s_polynomial(f, g), elements).is_zero() {
                return false;
            }
            if !strong_reduce(&g_polynomial(f, g), elements).is_zero() {
                return false;
            }
        }
    }
    true
}

pub(super) fn lc_divides(g: &Polynomial, f: &Polynomial) -> bool {
    let (n, b) = g.lt().expect("nonzero");
    let (m, a) = f.lt().expect("nonzero");
    n.divides(m) && a.is_multiple_of(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, MonomialOrder::default()).unwrap()
    }

    #[test]
    fn s_and_g_polynomials() {
        let (f, g) = (p("2t + 1"), p("3t"));
        // lcm(2,3) = 6: 3(2t+1) - 2(3t) = 3
        assert_eq!(s_polynomial(&f, &g), p("3"));
        let gp = g_polynomial(&f, &g);
        assert_eq!(gp.leading_term().unwrap().1, Monomial::var(crate::polyring::Var::T));
        assert!(gp.leading_coeff().unwrap().abs().is_one());
        assert!(needs_g_polynomial(&f, &g));
        assert!(!needs_g_polynomial(&p("2t"), &p("4s")));
    }

    #[test]
    fn monic_generator_is_its_own_basis() {
        let b = strong_groebner(&Ideal::new(vec![p("t")], MonomialOrder::default())).canonicalize();
        assert_eq!(b.elements(), &[p("t")]);
    }

    #[test]
    fn coprime_coefficients_produce_unit_leading_coefficient() {
        let b = strong_groebner(&Ideal::new(vec![p("2t"), p("3t")], MonomialOrder::default())).canonicalize();
        assert_eq!(b.elements(), &[p("t")]);
    }

    #[test]
    fn raw_output_is_strong() {
        let ideal = Ideal::new(vec![p("2t^2 + s"), p("3s*t - 1"), p("6t^-1")], MonomialOrder::default());
        let b = strong_groebner(&ideal);
        assert!(is_strong_groebner(b.elements()));
        for f in ideal.generators() {
            assert!(strong_reduce(f, b.elements()).is_zero());
        }
    }
}
