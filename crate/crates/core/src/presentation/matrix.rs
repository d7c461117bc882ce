use std::fmt;

use super::{PresentationError, Relation, Word};

/// Partial operation table of a finitely presented (virtual) quandle.
///
/// Generators are numbered from 1 and entries use 0 for "unknown". `M[i][j]
/// = k` records `x_i ▷ x_j = x_k` and is always mirrored by `D[k][j] = i`.
/// Generators found equal are merged into the smaller index, which is the
/// only one that stays live.
#[derive(Clone, Debug)]
pub struct PresentationMatrix {
    m: Vec<Vec<u32>>,
    d: Vec<Vec<u32>>,
    v: Option<(Vec<u32>, Vec<u32>)>,
    parent: Vec<u32>,
    pending: Vec<(u32, u32)>,
    pub(super) merges: usize,
}

fn cell(rows: &[Vec<u32>], i: u32, j: u32) -> u32 {
    rows[i as usize].get(j as usize).copied().unwrap_or(0)
}

fn put(rows: &mut [Vec<u32>], i: u32, j: u32, k: u32) {
    let row = &mut rows[i as usize];
    if row.len() <= j as usize {
        row.resize(j as usize + 1, 0);
    }
    row[j as usize] = k;
}

impl PresentationMatrix {
    /// `n` generators with no relations.
    pub fn new(n: usize, is_virtual: bool) -> PresentationMatrix {
        let mut p = PresentationMatrix {
            m: vec![Vec::new()],
            d: vec![Vec::new()],
            v: is_virtual.then(|| (vec![0], vec![0])),
            parent: vec![0],
            pending: Vec::new(),
            merges: 0,
        };
        for _ in 0..n {
            p.fresh();
        }
        p
    }

    /// Builds the matrix of a presentation, shortening nested words by
    /// abbreviation generators numbered after `n`.
    pub fn from_relations(n: usize, relations: &[Relation], is_virtual: bool) -> Result<PresentationMatrix, PresentationError> {
        let mut p = PresentationMatrix::new(n, is_virtual);
        for r in relations {
            check_word(&r.lhs, n, is_virtual)?;
            check_word(&r.rhs, n, is_virtual)?;
        }
        for r in relations {
            let (lhs, rhs) = match (&r.lhs, &r.rhs) {
                (Word::Gen(_), w) if !matches!(w, Word::Gen(_)) => (&r.rhs, &r.lhs),
                _ => (&r.lhs, &r.rhs),
            };
            let k = p.eval(rhs);
            match lhs {
                Word::Gen(i) => p.merge(*i as u32, k),
                Word::Op(a, b) => {
                    let (a, b) = (p.eval(a), p.eval(b));
                    p.set(a, b, k);
                }
                Word::Dual(a, b) => {
                    let (a, b) = (p.eval(a), p.eval(b));
                    p.set(k, b, a);
                }
                Word::V(a) => {
                    let a = p.eval(a);
                    p.set_v(a, k);
                }
            }
            p.settle();
        }
        Ok(p)
    }

    fn eval(&mut self, w: &Word) -> u32 {
        let k = match w {
            Word::Gen(i) => *i as u32,
            Word::Op(a, b) => {
                let (a, b) = (self.eval(a), self.eval(b));
                match self.get(a, b) {
                    0 => {
                        let k = self.fresh();
                        self.set(a, b, k);
                        k
                    }
                    k => k,
                }
            }
            Word::Dual(a, b) => {
                let (a, b) = (self.eval(a), self.eval(b));
                match self.dual(a, b) {
                    0 => {
                        let k = self.fresh();
                        self.set(k, b, a);
                        k
                    }
                    k => k,
                }
            }
            Word::V(a) => {
                let a = self.eval(a);
                match self.v_of(a) {
                    0 => {
                        let k = self.fresh();
                        self.set_v(a, k);
                        k
                    }
                    k => k,
                }
            }
        };
        self.settle();
        self.find(k)
    }

    /// Generators ever allocated, live or merged.
    pub fn allocated(&self) -> usize {
        self.parent.len() - 1
    }

    pub fn is_virtual(&self) -> bool {
        self.v.is_some()
    }

    pub fn is_live(&self, x: u32) -> bool {
        self.parent[x as usize] == x
    }

    pub fn live(&self) -> Vec<u32> {
        (1..self.parent.len() as u32).filter(|&x| self.is_live(x)).collect()
    }

    /// Representative of `x` after merges.
    pub fn find(&self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            x = self.parent[x as usize];
        }
        x
    }

    /// `x_i ▷ x_j`, or 0 when unknown.
    pub fn get(&self, i: u32, j: u32) -> u32 {
        cell(&self.m, i, j)
    }

    /// `x_k ▷⁻¹ x_j`, or 0 when unknown.
    pub fn dual(&self, k: u32, j: u32) -> u32 {
        cell(&self.d, k, j)
    }

    /// `v(x)`, or 0 when unknown or not virtual.
    pub fn v_of(&self, x: u32) -> u32 {
        self.v.as_ref().map_or(0, |(v, _)| v[x as usize])
    }

    /// `v⁻¹(y)`, or 0 when unknown.
    pub fn v_inv(&self, y: u32) -> u32 {
        self.v.as_ref().map_or(0, |(_, w)| w[y as usize])
    }

    pub(super) fn fresh(&mut self) -> u32 {
        let x = self.parent.len() as u32;
        self.parent.push(x);
        self.m.push(Vec::new());
        self.d.push(Vec::new());
        if let Some((v, w)) = &mut self.v {
            v.push(0);
            w.push(0);
        }
        x
    }

    /// Records `x_i ▷ x_j = x_k`. A clash with a known entry queues a merge
    /// instead of overwriting.
    pub(super) fn set(&mut self, i: u32, j: u32, k: u32) {
        let (i, j, k) = (self.find(i), self.find(j), self.find(k));
        let (old_k, old_i) = (self.get(i, j), self.dual(k, j));
        if old_k != 0 && old_k != k {
            self.pending.push((old_k, k));
        }
        if old_i != 0 && old_i != i {
            self.pending.push((old_i, i));
        }
        if old_k == 0 && old_i == 0 {
            put(&mut self.m, i, j, k);
            put(&mut self.d, k, j, i);
        }
    }

    /// Records `v(x) = y`; `v` is injective, so clashes on either side merge.
    pub(super) fn set_v(&mut self, x: u32, y: u32) {
        let (x, y) = (self.find(x), self.find(y));
        let (old_y, old_x) = (self.v_of(x), self.v_inv(y));
        if old_y != 0 && old_y != y {
            self.pending.push((old_y, y));
        }
        if old_x != 0 && old_x != x {
            self.pending.push((old_x, x));
        }
        if old_y == 0 && old_x == 0 {
            let (v, w) = self.v.as_mut().expect("virtual presentation");
            v[x as usize] = y;
            w[y as usize] = x;
        }
    }

    pub(super) fn merge(&mut self, a: u32, b: u32) {
        self.pending.push((a, b));
    }

    /// Processes queued merges until none remain. Every table entry that
    /// mentions the dropped generator is removed and re-recorded with
    /// representatives, which may queue further merges.
    pub(super) fn settle(&mut self) -> bool {
        let mut changed = false;
        while let Some((a, b)) = self.pending.pop() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            changed = true;
            self.merges += 1;
            let (keep, gone) = (a.min(b), a.max(b));
            self.parent[gone as usize] = keep;
            let mut facts = Vec::new();
            for (j, &k) in self.m[gone as usize].iter().enumerate() {
                if k != 0 {
                    facts.push((gone, j as u32, k));
                }
            }
            for (j, &i) in self.d[gone as usize].iter().enumerate() {
                if i != 0 {
                    facts.push((i, j as u32, gone));
                }
            }
            for i in 1..self.m.len() as u32 {
                let k = self.get(i, gone);
                if k != 0 {
                    facts.push((i, gone, k));
                }
            }
            for &(i, j, k) in &facts {
                put(&mut self.m, i, j, 0);
                put(&mut self.d, k, j, 0);
            }
            self.m[gone as usize] = Vec::new();
            self.d[gone as usize] = Vec::new();
            let mut vfacts = Vec::new();
            if let Some((v, w)) = &mut self.v {
                let g = gone as usize;
                if v[g] != 0 {
                    vfacts.push((gone, v[g]));
                    w[v[g] as usize] = 0;
                    v[g] = 0;
                }
                if w[g] != 0 {
                    vfacts.push((w[g], gone));
                    v[w[g] as usize] = 0;
                    w[g] = 0;
                }
            }
            for (i, j, k) in facts {
                self.set(i, j, k);
            }
            for (x, y) in vfacts {
                self.set_v(x, y);
            }
        }
        changed
    }

    /// Known entries of `M` in the live rows and columns, in the order of
    /// [`live`](Self::live). The v column is appended when present.
    pub fn rows(&self) -> Vec<Vec<u32>> {
        let live = self.live();
        live.iter()
            .map(|&i| {
                let mut row: Vec<u32> = live.iter().map(|&j| self.get(i, j)).collect();
                if self.is_virtual() {
                    row.push(self.v_of(i));
                }
                row
            })
            .collect()
    }

    /// Number of known `M` entries among live generators.
    pub fn known_entries(&self) -> usize {
        self.rows().iter().flat_map(|r| &r[..self.live().len()]).filter(|&&k| k != 0).count()
    }
}

fn check_word(w: &Word, n: usize, is_virtual: bool) -> Result<(), PresentationError> {
    if w.min_gen() == 0 || w.max_gen() > n {
        let index = if w.min_gen() == 0 { 0 } else { w.max_gen() };
        return Err(PresentationError::IndexOutOfRange { index, n });
    }
    if w.uses_v() && !is_virtual {
        return Err(PresentationError::VirtualWord);
    }
    Ok(())
}

impl fmt::Display for PresentationMatrix {
    /// Bracketed rows with the v column after `|`, labels as stored.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.live().len();
        super::write_rows(f, &self.rows(), n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn figure_eight() -> PresentationMatrix {
        let rels = [
            Relation::short(2, 3, 4),
            Relation::short(2, 4, 1),
            Relation::short(3, 1, 4),
            Relation::short(3, 2, 1),
        ];
        PresentationMatrix::from_relations(4, &rels, false).unwrap()
    }

    #[test]
    fn figure_eight_entries() {
        let p = figure_eight();
        assert_eq!(p.rows(), vec![vec![0, 0, 0, 0], vec![0, 0, 4, 1], vec![4, 1, 0, 0], vec![0, 0, 0, 0]]);
        assert_eq!(p.known_entries(), 4);
        assert_eq!(p.dual(4, 3), 2);
        assert_eq!(p.dual(1, 2), 3);
    }

    #[test]
    fn nested_words_are_shortened() {
        let r = Relation::new(Word::op(Word::op(Word::gen(1), Word::gen(2)), Word::gen(3)), Word::gen(1));
        let p = PresentationMatrix::from_relations(3, &[r], false).unwrap();
        assert_eq!(p.allocated(), 4);
        assert_eq!(p.get(1, 2), 4);
        assert_eq!(p.get(4, 3), 1);
    }

    #[test]
    fn dual_relations_fill_the_dual_table() {
        let r = Relation::new(Word::dual(Word::gen(1), Word::gen(2)), Word::gen(3));
        let p = PresentationMatrix::from_relations(3, &[r], false).unwrap();
        assert_eq!(p.dual(1, 2), 3);
        assert_eq!(p.get(3, 2), 1);
    }

    #[test]
    fn clashes_merge_into_smaller_index() {
        let rels = [Relation::short(1, 2, 3), Relation::short(1, 2, 4), Relation::short(4, 1, 2)];
        let p = PresentationMatrix::from_relations(4, &rels, false).unwrap();
        assert_eq!(p.live(), vec![1, 2, 3]);
        assert_eq!(p.find(4), 3);
        assert_eq!(p.get(3, 1), 2);
        assert_eq!(p.dual(2, 1), 3);
    }

    #[test]
    fn cascading_merges() {
        // 1▷3 = 2 and 1▷3 = 4 merge 2,4; then 2▷1 and 4▷1 collide.
        let rels = [
            Relation::short(2, 1, 3),
            Relation::short(4, 1, 1),
            Relation::short(1, 3, 2),
            Relation::short(1, 3, 4),
        ];
        let p = PresentationMatrix::from_relations(4, &rels, false).unwrap();
        assert_eq!(p.live(), vec![1, 2]);
        assert_eq!(p.get(1, 1), 2);
        assert_eq!(p.get(2, 1), 1);
    }

    #[test]
    fn errors() {
        assert!(PresentationMatrix::from_relations(2, &[Relation::short(1, 2, 3)], false).is_err());
        assert!(PresentationMatrix::from_relations(2, &[Relation::short(0, 1, 2)], false).is_err());
        assert!(PresentationMatrix::from_relations(2, &[Relation::virtual_step(1, 2)], false).is_err());
    }

    #[test]
    fn virtual_steps() {
        let rels = [Relation::virtual_step(1, 2), Relation::virtual_step(3, 2)];
        let p = PresentationMatrix::from_relations(3, &rels, true).unwrap();
        assert_eq!(p.live(), vec![1, 2]);
        assert_eq!(p.v_of(1), 2);
        assert_eq!(p.v_inv(2), 1);
    }
}
