use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::polyring::Polynomial;

/// Strong (Euclidean) reduction over ℤ.
///
/// Walks the terms of `f` from the top. A term `c·M` is rewritten by any
/// `g` whose leading term `b·N` has `N | M` and for which `c` is not already
/// the least non-negative residue modulo `|b|`. The returned remainder has
/// no term that any element of `basis` can change.
pub fn strong_reduce(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ord = f.ord();
    let basis: Vec<Polynomial> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| if g.ord() == ord { g.clone() } else { g.clone().with_order(ord) })
        .collect();
    let mut r = f.clone();
    let mut idx = 0;
    'outer: while idx < r.len() {
        let (m, c) = r.terms()[idx].clone();
        for g in &basis {
            let (n, b) = g.lt().expect("nonzero");
            let Some(shift) = n.quotient_of(&m) else { continue };
            let modulus = b.abs();
            let (q, _rem) = c.div_mod_floor(&modulus);
            if q.is_zero() {
                continue;
            }
            let mult = if b.is_negative() { -q } else { q };
            r = r.add_scaled(&-mult, &shift, g);
            continue 'outer;
        }
        idx += 1;
    }
    r
}

/// Full reduction over ℚ, computed fraction-free. The result is the
/// primitive part of the normal form (a nonzero rational multiple of it).
pub fn rational_reduce(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    rational_reduce_from(f, basis, 0)
}

/// Like [`rational_reduce`] but leaves the leading term's monomial alone.
pub fn rational_tail_reduce(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    rational_reduce_from(f, basis, 1)
}

fn rational_reduce_from(f: &Polynomial, basis: &[Polynomial], start: usize) -> Polynomial {
    let ord = f.ord();
    let basis: Vec<Polynomial> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| if g.ord() == ord { g.clone() } else { g.clone().with_order(ord) })
        .collect();
    let mut r = f.primitive_part();
    let mut idx = start;
    'outer: while idx < r.len() {
        let (m, c) = r.terms()[idx].clone();
        for g in &basis {
            let (n, b) = g.lt().expect("nonzero");
            let Some(shift) = n.quotient_of(&m) else { continue };
            let l = c.lcm(b);
            let scale_r: BigInt = &l / &c;
            let scale_g: BigInt = &l / b;
            r = r.scale(&scale_r).add_scaled(&-scale_g, &shift, g);
            let content = r.content();
            if !content.is_zero() && content != BigInt::from(1) {
                r = r.divide_exact(&content);
            }
            continue 'outer;
        }
        idx += 1;
    }
    r.primitive_part()
}

impl Polynomial {
    fn divide_exact(self, d: &BigInt) -> Polynomial {
        let ord = self.ord();
        let terms = self.into_terms().into_iter().map(|(m, c)| (m, c / d)).collect();
        Polynomial::from_sorted_unchecked(terms, ord)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::MonomialOrder;

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, MonomialOrder::default()).unwrap()
    }

    #[test]
    fn euclidean_remainder_on_coefficients() {
        assert_eq!(strong_reduce(&p("3t"), &[p("2t")]), p("t"));
        assert_eq!(strong_reduce(&p("-t"), &[p("2t")]), p("t"));
        assert_eq!(strong_reduce(&p("4t^2 + 1"), &[p("2t")]), p("1"));
    }

    #[test]
    fn no_division_means_no_change() {
        let f = p("t*s^-1");
        assert_eq!(strong_reduce(&f, &[p("s*s^-1 - 1")]), f);
    }

    #[test]
    fn single_division_step() {
        assert_eq!(strong_reduce(&p("t*t^-1*s"), &[p("t*t^-1 - 1")]), p("s"));
    }

    #[test]
    fn reduces_lower_terms_too() {
        // leading term untouched, tail term 2t reduced by t - 1
        assert_eq!(strong_reduce(&p("s^-1 + 2t"), &[p("t - 1")]), p("s^-1 + 2"));
    }

    #[test]
    fn rational_reduction_ignores_coefficient_divisibility() {
        let r = rational_reduce(&p("s + t - 1"), &[p("2t - 1")]);
        assert_eq!(r, p("2s - 1"));
        assert!(rational_reduce(&p("3t"), &[p("2t")]).is_zero());
    }
}
