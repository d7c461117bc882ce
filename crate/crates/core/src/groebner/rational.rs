//! The ℚ view of an integer ideal.

use num_integer::Integer;

use super::reduce::rational_reduce;
use super::{Coefficients, GroebnerBasis, Ideal};
use crate::polyring::Polynomial;

/// Reduced ℚ-basis of the ideal spanned by a ℤ-Gröbner basis.
///
/// A strong basis over ℤ is already a Gröbner basis over ℚ, so this only
/// minimizes and tail-reduces.
pub fn rational_reduced(basis: &GroebnerBasis) -> GroebnerBasis {
    GroebnerBasis::from_parts(basis.elements().to_vec(), basis.ord(), false, Coefficients::Rationals).canonicalize()
}

fn s_polynomial_fraction_free(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (m, a) = f.lt().expect("nonzero");
    let (n, b) = g.lt().expect("nonzero");
    let lm = m.lcm(n);
    let lc = a.lcm(b);
    let fm = m.quotient_of(&lm).expect("divides lcm");
    let gm = n.quotient_of(&lm).expect("divides lcm");
    f.mul_term(&(&lc / a), &fm).add_scaled(&-(&lc / b), &gm, g)
}

/// Buchberger over ℚ, run fraction-free on primitive integer polynomials.
/// Independent of the ℤ completion; returns the canonical ℚ-basis.
pub fn rational_groebner(ideal: &Ideal) -> GroebnerBasis {
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let push = |basis: &mut Vec<Polynomial>, pairs: &mut Vec<(usize, usize)>, h: Polynomial| {
        if h.is_zero() {
            return;
        }
        let j = basis.len();
        pairs.extend((0..j).map(|i| (i, j)));
        basis.push(h);
    };
    for f in ideal.generators() {
        let r = rational_reduce(f, &basis);
        push(&mut basis, &mut pairs, r);
    }
    while let Some((i, j)) = pairs.pop() {
        let (f, g) = (&basis[i], &basis[j]);
        let (m, n) = (f.leading_monomial().expect("nonzero"), g.leading_monomial().expect("nonzero"));
        if m.is_coprime(&n) {
            continue;
        }
        let r = rational_reduce(&s_polynomial_fraction_free(f, g), &basis);
        push(&mut basis, &mut pairs, r);
    }
    GroebnerBasis::from_parts(basis, ideal.ord(), false, Coefficients::Rationals).canonicalize()
}
