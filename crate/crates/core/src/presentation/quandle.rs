use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{AxiomSet, PresentationError};

/// A finite quandle with elements `1..=n`; `table[i-1][j-1]` is `i ▷ j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteQuandle {
    pub n: usize,
    pub table: Vec<Vec<u32>>,
    pub v: Option<Vec<u32>>,
}

impl FiniteQuandle {
    /// Checks shape, range and that every column is a permutation.
    pub fn new(table: Vec<Vec<u32>>, v: Option<Vec<u32>>) -> Result<FiniteQuandle, PresentationError> {
        let n = table.len();
        let bad = |msg: &str| Err(PresentationError::Table(msg.to_string()));
        if table.iter().any(|r| r.len() != n) {
            return bad("table is not square");
        }
        if table.iter().flatten().any(|&k| k == 0 || k as usize > n) {
            return bad("entries must lie in 1..=n");
        }
        if let Some(v) = &v {
            if v.len() != n || !is_permutation(v.iter().copied(), n) {
                return bad("v must be a permutation of 1..=n");
            }
        }
        let q = FiniteQuandle { n, table, v };
        if !(1..=n as u32).all(|j| is_permutation((1..=n as u32).map(|i| q.op(i, j)), n)) {
            return bad("every column must be a permutation");
        }
        Ok(q)
    }

    pub fn trivial(n: usize) -> FiniteQuandle {
        let table = (1..=n as u32).map(|i| vec![i; n]).collect();
        FiniteQuandle { n, table, v: None }
    }

    pub fn op(&self, x: u32, y: u32) -> u32 {
        self.table[x as usize - 1][y as usize - 1]
    }

    /// `x ▷⁻¹ y`.
    pub fn dual(&self, x: u32, y: u32) -> u32 {
        (1..=self.n as u32).find(|&z| self.op(z, y) == x).expect("columns are permutations")
    }

    pub fn v_of(&self, x: u32) -> Option<u32> {
        self.v.as_ref().map(|v| v[x as usize - 1])
    }

    pub fn with_v(self, v: Vec<u32>) -> Result<FiniteQuandle, PresentationError> {
        FiniteQuandle::new(self.table, Some(v))
    }

    fn elements(&self) -> impl Iterator<Item = u32> + Clone {
        1..=self.n as u32
    }

    /// Exhaustive check of the quandle axioms, every flag in `axioms`, and,
    /// when `v` is present, that it is an automorphism (an involution too
    /// if `axioms.involutory`).
    pub fn verify_axioms(&self, axioms: &AxiomSet) -> bool {
        let e = self.elements();
        let op = |x, y| self.op(x, y);
        let all2 = |f: &dyn Fn(u32, u32) -> bool| e.clone().all(|x| e.clone().all(|y| f(x, y)));
        let all3 = |f: &dyn Fn(u32, u32, u32) -> bool| all2(&|x, y| e.clone().all(|z| f(x, y, z)));
        let all4 = |f: &dyn Fn(u32, u32, u32, u32) -> bool| all3(&|x, y, z| e.clone().all(|w| f(x, y, z, w)));

        if !e.clone().all(|x| op(x, x) == x) {
            return false;
        }
        if !e.clone().all(|y| is_permutation(e.clone().map(|x| op(x, y)), self.n)) {
            return false;
        }
        if !all3(&|x, y, z| op(op(x, y), z) == op(op(x, z), op(y, z))) {
            return false;
        }
        if axioms.involutory && !all2(&|x, y| op(op(x, y), y) == x) {
            return false;
        }
        if let Some(k) = axioms.n_quandle {
            if !all2(&|x, y| (0..k).fold(x, |a, _| op(a, y)) == x) {
                return false;
            }
        }
        if axioms.abelian && !all4(&|x, y, z, w| op(op(x, y), op(z, w)) == op(op(x, z), op(y, w))) {
            return false;
        }
        if axioms.anti_abelian && !all4(&|x, y, z, w| op(op(x, y), op(z, w)) == op(op(w, y), op(z, x))) {
            return false;
        }
        if axioms.left_distributive && !all3(&|x, y, z| op(x, op(y, z)) == op(op(x, y), op(x, z))) {
            return false;
        }
        if axioms.commutative_operator && !all3(&|x, y, z| op(x, op(y, z)) == op(x, op(z, y))) {
            return false;
        }
        if axioms.latin && !self.is_latin() {
            return false;
        }
        if let Some(v) = &self.v {
            let v = |x: u32| v[x as usize - 1];
            if !all2(&|x, y| v(op(x, y)) == op(v(x), v(y))) {
                return false;
            }
            if axioms.involutory && !e.clone().all(|x| v(v(x)) == x) {
                return false;
            }
        }
        true
    }

    /// Every row and every column is a permutation.
    pub fn is_latin(&self) -> bool {
        let e = self.elements();
        e.clone().all(|x| is_permutation(e.clone().map(|y| self.op(x, y)), self.n))
            && e.clone().all(|y| is_permutation(e.clone().map(|x| self.op(x, y)), self.n))
    }

    /// `x ▷ y = t·x + (1 − t)·y` on ℤ_n, element `a ∈ ℤ_n` labelled `a + 1`.
    pub fn alexander(n: usize, t: i64) -> Result<FiniteQuandle, PresentationError> {
        if n == 0 || t.gcd(&(n as i64)) != 1 {
            return Err(PresentationError::NotUnit { t, n });
        }
        let n_ = n as i64;
        let table = (0..n_)
            .map(|x| (0..n_).map(|y| ((t * x + (1 - t) * y).rem_euclid(n_) + 1) as u32).collect())
            .collect();
        Ok(FiniteQuandle { n, table, v: None })
    }

    /// Core quandle of ℤ_n, `x ▷ y = 2y − x`, residue `a` labelled `a` with
    /// `n` standing for 0.
    pub fn core_cyclic(n: usize) -> FiniteQuandle {
        cyclic_table(n, |x, y| 2 * y - x)
    }

    /// `x ▷ y = 2x − y` on ℤ_n, labelled as in
    /// [`core_cyclic`](Self::core_cyclic). A quandle only for odd `n`.
    pub fn core_cyclic_left(n: usize) -> FiniteQuandle {
        cyclic_table(n, |x, y| 2 * x - y)
    }
}

fn cyclic_table(n: usize, f: impl Fn(i64, i64) -> i64) -> FiniteQuandle {
    let n_ = n as i64;
    let label = |a: i64| match a.rem_euclid(n_) {
        0 => n as u32,
        r => r as u32,
    };
    let table = (1..=n_).map(|x| (1..=n_).map(|y| label(f(x, y))).collect()).collect();
    FiniteQuandle { n, table, v: None }
}

pub(super) fn is_permutation(values: impl Iterator<Item = u32>, n: usize) -> bool {
    let mut seen = vec![false; n + 1];
    let mut count = 0;
    for k in values {
        if k == 0 || k as usize > n || seen[k as usize] {
            return false;
        }
        seen[k as usize] = true;
        count += 1;
    }
    count == n
}

impl fmt::Display for FiniteQuandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<u32>> = match &self.v {
            None => self.table.clone(),
            Some(v) => self.table.iter().zip(v).map(|(r, &x)| r.iter().copied().chain([x]).collect()).collect(),
        };
        super::write_rows(f, &rows, self.n)
    }
}
