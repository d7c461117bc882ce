use std::collections::HashMap;

use super::{FlagError, PolyMatrix};
use crate::polyring::Polynomial;

/// Determinants of all `size × size` submatrices, by Laplace expansion
/// along the first row with memoization on (row set, column set). Zero
/// minors and repeats up to sign are dropped; `size = 0` gives `[1]`.
pub fn minors(p: &PolyMatrix, size: usize) -> Result<Vec<Polynomial>, FlagError> {
    let (r, n) = (p.rows(), p.cols());
    if size > r.min(n) {
        return Err(FlagError::MinorSize { size, rows: r, cols: n });
    }
    if r > 64 || n > 64 {
        return Err(FlagError::TooLarge(r.max(n)));
    }
    let ord = p.ord();
    if size == 0 {
        return Ok(vec![Polynomial::one(ord)]);
    }
    let mut memo = Memo { p, cache: HashMap::new() };
    let mut out: Vec<Polynomial> = Vec::new();
    for rows in subsets(r, size) {
        for cols in subsets(n, size) {
            let det = memo.det(rows, cols);
            if det.is_zero() {
                continue;
            }
            let key = det.clone().normalize_sign();
            if !out.iter().any(|q| q.clone().normalize_sign() == key) {
                out.push(det);
            }
        }
    }
    Ok(out)
}

struct Memo<'a> {
    p: &'a PolyMatrix,
    cache: HashMap<(u64, u64), Polynomial>,
}

impl Memo<'_> {
    fn det(&mut self, rows: u64, cols: u64) -> Polynomial {
        if rows == 0 {
            return Polynomial::one(self.p.ord());
        }
        if let Some(d) = self.cache.get(&(rows, cols)) {
            return d.clone();
        }
        let r = rows.trailing_zeros() as usize;
        let mut acc = Polynomial::zero(self.p.ord());
        let mut sign_neg = false;
        let mut rest = cols;
        while rest != 0 {
            let c = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let e = self.p.entry(r, c);
            if !e.is_zero() {
                let sub = self.det(rows & !(1 << r), cols & !(1 << c));
                let term = e * &sub;
                acc = if sign_neg { &acc - &term } else { &acc + &term };
            }
            sign_neg = !sign_neg;
        }
        self.cache.insert((rows, cols), acc.clone());
        acc
    }
}

/// All `k`-element subsets of `0..n` as bit masks, in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().fold(0u64, |m, &i| m | 1 << i));
        let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::MonomialOrder;

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, MonomialOrder::default()).unwrap()
    }

    fn matrix(rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::new(rows.iter().map(|r| r.iter().map(|e| p(e)).collect()).collect(), MonomialOrder::default())
    }

    #[test]
    fn small_determinants() {
        let id = matrix(&[&["1", "0"], &["0", "1"]]);
        assert_eq!(minors(&id, 2).unwrap(), vec![p("1")]);
        assert_eq!(minors(&id, 1).unwrap(), vec![p("1")]);
        let m = matrix(&[&["t", "s"], &["-1", "t"]]);
        assert_eq!(minors(&m, 2).unwrap(), vec![p("t^2 + s")]);
        assert_eq!(minors(&m, 0).unwrap(), vec![p("1")]);
        assert!(minors(&m, 3).is_err());
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(3, 2), vec![0b011, 0b101, 0b110]);
        assert_eq!(subsets(4, 0), vec![0]);
        assert_eq!(subsets(4, 4).len(), 1);
        assert_eq!(subsets(8, 7).len(), 8);
    }
}
