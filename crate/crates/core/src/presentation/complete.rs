//! Completion of a presentation matrix into a finite operation table.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{AxiomSet, FiniteQuandle, PresentationError, PresentationMatrix};

/// Which unknown entry receives a fresh generator when deduction stalls.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    #[default]
    RowMajor,
    ColumnMajor,
    /// The first zero of a live row with the fewest zeros.
    MostConstrainedRow,
    /// Zeros of the leading `k × k` block before any outside it, so the
    /// table grows square rather than along one row.
    Diagonal,
}

impl FromStr for Strategy {
    type Err = PresentationError;
    fn from_str(s: &str) -> Result<Strategy, PresentationError> {
        match s {
            "row-major" => Ok(Strategy::RowMajor),
            "column-major" => Ok(Strategy::ColumnMajor),
            "most-constrained-row" | "most-constrained" => Ok(Strategy::MostConstrainedRow),
            "diagonal" => Ok(Strategy::Diagonal),
            other => Err(PresentationError::Strategy(other.to_string())),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::RowMajor => "row-major",
            Strategy::ColumnMajor => "column-major",
            Strategy::MostConstrainedRow => "most-constrained-row",
            Strategy::Diagonal => "diagonal",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Cap on generators ever allocated, including the initial ones.
    pub max_generators: usize,
    /// Cap on deduce-then-define rounds; `None` for no cap.
    pub max_rounds: Option<usize>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_generators: 4096, max_rounds: None }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionStats {
    pub generators_introduced: usize,
    pub generators_allocated: usize,
    pub merges: usize,
    pub rounds: usize,
    pub live: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum CompletionResult {
    Completed {
        quandle: FiniteQuandle,
        /// Element of the final table for each generator present before
        /// completion started.
        generator_map: Vec<u32>,
        stats: CompletionStats,
    },
    BudgetExceeded {
        stats: CompletionStats,
    },
}

impl CompletionResult {
    pub fn quandle(&self) -> Option<&FiniteQuandle> {
        match self {
            CompletionResult::Completed { quandle, .. } => Some(quandle),
            CompletionResult::BudgetExceeded { .. } => None,
        }
    }

    pub fn stats(&self) -> &CompletionStats {
        match self {
            CompletionResult::Completed { stats, .. } | CompletionResult::BudgetExceeded { stats } => stats,
        }
    }
}

impl PresentationMatrix {
    /// Alternates full deduction with the introduction of fresh generators
    /// until every entry of the live table (and of v) is known, or the budget
    /// runs out.
    pub fn complete(mut self, axioms: &AxiomSet, budget: &Budget, strategy: Strategy) -> CompletionResult {
        let initial = self.allocated();
        let mut rounds = 0;
        for x in self.live() {
            self.set(x, x, x);
        }
        self.settle();
        let stats = |p: &PresentationMatrix, rounds| CompletionStats {
            generators_introduced: p.allocated() - initial,
            generators_allocated: p.allocated(),
            merges: p.merges,
            rounds,
            live: p.live().len(),
        };
        loop {
            rounds += 1;
            self.saturate(axioms);
            let Some(target) = self.next_zero(strategy) else {
                let (quandle, generator_map) = self.compact(initial);
                return CompletionResult::Completed { quandle, generator_map, stats: stats(&self, rounds) };
            };
            if self.allocated() >= budget.max_generators || budget.max_rounds.is_some_and(|r| rounds >= r) {
                return CompletionResult::BudgetExceeded { stats: stats(&self, rounds) };
            }
            let g = self.fresh();
            self.set(g, g, g);
            match target {
                Zero::Table(i, j) => self.set(i, j, g),
                Zero::V(x) => self.set_v(x, g),
            }
            self.settle();
        }
    }

    fn next_zero(&self, strategy: Strategy) -> Option<Zero> {
        let live = self.live();
        let zeros_in_row = |i: u32| live.iter().filter(|&&j| self.get(i, j) == 0).count();
        let first_in_row = |i: u32| live.iter().find(|&&j| self.get(i, j) == 0).map(|&j| Zero::Table(i, j));
        let found = match strategy {
            Strategy::RowMajor => live.iter().find_map(|&i| first_in_row(i)),
            Strategy::ColumnMajor => live
                .iter()
                .find_map(|&j| live.iter().find(|&&i| self.get(i, j) == 0).map(|&i| Zero::Table(i, j))),
            Strategy::MostConstrainedRow => live
                .iter()
                .map(|&i| (zeros_in_row(i), i))
                .filter(|&(z, _)| z > 0)
                .min()
                .and_then(|(_, i)| first_in_row(i)),
            Strategy::Diagonal => (0..live.len()).find_map(|k| {
                let last = live[k];
                live[..=k]
                    .iter()
                    .find(|&&j| self.get(last, j) == 0)
                    .map(|&j| Zero::Table(last, j))
                    .or_else(|| live[..k].iter().find(|&&i| self.get(i, last) == 0).map(|&i| Zero::Table(i, last)))
            }),
        };
        found.or_else(|| {
            if self.is_virtual() {
                live.iter().find(|&&x| self.v_of(x) == 0).map(|&x| Zero::V(x))
            } else {
                None
            }
        })
    }

    /// Renumbers the live generators `1..` in increasing order.
    fn compact(&self, initial: usize) -> (FiniteQuandle, Vec<u32>) {
        let live = self.live();
        let mut index = vec![0u32; self.allocated() + 1];
        for (k, &x) in live.iter().enumerate() {
            index[x as usize] = k as u32 + 1;
        }
        let table = live.iter().map(|&i| live.iter().map(|&j| index[self.get(i, j) as usize]).collect()).collect();
        let v = self.is_virtual().then(|| live.iter().map(|&x| index[self.v_of(x) as usize]).collect());
        let map = (1..=initial as u32).map(|x| index[self.find(x) as usize]).collect();
        (FiniteQuandle { n: live.len(), table, v }, map)
    }

    /// Applies every deduction rule until a full pass changes nothing.
    fn saturate(&mut self, axioms: &AxiomSet) {
        loop {
            let before = self.fingerprint();
            self.pass(axioms);
            if self.fingerprint() == before {
                break;
            }
        }
    }

    fn fingerprint(&self) -> (usize, usize, usize) {
        let live = self.live();
        let known = live.iter().map(|&i| live.iter().filter(|&&j| self.get(i, j) != 0).count()).sum();
        let v = live.iter().filter(|&&x| self.v_of(x) != 0).count();
        (self.merges, known, v)
    }

    /// One sweep over all rule instances. Each instance performs at most one
    /// action; merges are settled immediately so later lookups see
    /// representatives.
    fn pass(&mut self, axioms: &AxiomSet) {
        let live = self.live();
        let alive = |p: &Self, xs: &[u32]| xs.iter().all(|&x| p.is_live(x));
        for &x in &live {
            for &y in &live {
                if !alive(self, &[x, y]) {
                    continue;
                }
                if axioms.involutory {
                    self.rule_power(x, y, 2);
                }
                if let Some(n) = axioms.n_quandle {
                    self.rule_power(x, y, n);
                }
                if self.is_virtual() {
                    self.rule_virtual(x, y, axioms.involutory);
                }
                for &z in &live {
                    if !alive(self, &[x, y, z]) {
                        continue;
                    }
                    self.rule_distributive(x, y, z);
                    if axioms.left_distributive {
                        self.rule_left_distributive(x, y, z);
                    }
                    if axioms.commutative_operator {
                        self.rule_commutative_operator(x, y, z);
                    }
                    if axioms.abelian || axioms.anti_abelian {
                        for &w in &live {
                            if !alive(self, &[x, y, z, w]) {
                                continue;
                            }
                            if axioms.abelian {
                                self.rule_product([(x, y), (z, w), (x, z), (y, w)]);
                            }
                            if axioms.anti_abelian {
                                self.rule_product([(x, y), (z, w), (w, y), (z, x)]);
                            }
                        }
                    }
                }
            }
            if axioms.latin && self.is_live(x) {
                self.rule_latin(x);
            }
        }
    }

    /// `(x ▷ y) ▷ z = (x ▷ z) ▷ (y ▷ z)`.
    fn rule_distributive(&mut self, x: u32, y: u32, z: u32) {
        let (a, b, c) = (self.get(x, y), self.get(x, z), self.get(y, z));
        if c == 0 {
            return;
        }
        // a ▷ z = b ▷ c
        match (a, b) {
            (0, 0) => {}
            (0, b) => {
                let r = self.get(b, c);
                if r != 0 {
                    self.fill(x, y, self.dual(r, z));
                }
            }
            (a, 0) => {
                let l = self.get(a, z);
                if l != 0 {
                    self.fill(x, z, self.dual(l, c));
                }
            }
            (a, b) => self.equate(a, z, b, c),
        }
    }

    /// `x ▷ (y ▷ z) = (x ▷ y) ▷ (x ▷ z)`.
    fn rule_left_distributive(&mut self, x: u32, y: u32, z: u32) {
        let (a, b, c) = (self.get(y, z), self.get(x, y), self.get(x, z));
        if a == 0 || c == 0 {
            return;
        }
        if b == 0 {
            let l = self.get(x, a);
            if l != 0 {
                self.fill(x, y, self.dual(l, c));
            }
        } else {
            self.equate(x, a, b, c);
        }
    }

    /// `x ▷ (y ▷ z) = x ▷ (z ▷ y)`.
    fn rule_commutative_operator(&mut self, x: u32, y: u32, z: u32) {
        let (a, b) = (self.get(y, z), self.get(z, y));
        if a != 0 && b != 0 {
            self.equate(x, a, x, b);
        }
    }

    /// `(p ▷ q) ▷ (r ▷ s) = (p' ▷ q') ▷ (r' ▷ s')`, given the four inner
    /// pairs in that order. Covers the abelian and anti-abelian axioms.
    fn rule_product(&mut self, pairs: [(u32, u32); 4]) {
        let [a, b, c, d] = pairs.map(|(i, j)| self.get(i, j));
        if b == 0 || d == 0 {
            return;
        }
        match (a, c) {
            (0, 0) => {}
            (0, c) => {
                let r = self.get(c, d);
                if r != 0 {
                    let (i, j) = pairs[0];
                    self.fill(i, j, self.dual(r, b));
                }
            }
            (a, 0) => {
                let l = self.get(a, b);
                if l != 0 {
                    let (i, j) = pairs[2];
                    self.fill(i, j, self.dual(l, d));
                }
            }
            (a, c) => self.equate(a, b, c, d),
        }
    }

    /// `x ▷ y = x ▷ z` forces `y = z`.
    fn rule_latin(&mut self, x: u32) {
        let mut seen = vec![0u32; self.allocated() + 1];
        for y in self.live() {
            let k = self.get(x, y);
            if k == 0 {
                continue;
            }
            if seen[k as usize] != 0 {
                self.merge(seen[k as usize], y);
                self.settle();
                return;
            }
            seen[k as usize] = y;
        }
    }

    /// `x ▷ y ▷ ... ▷ y = x` with `n` applications, scanned from both ends.
    fn rule_power(&mut self, x: u32, y: u32, n: u32) {
        let mut fwd = vec![x];
        while fwd.len() <= n as usize {
            match self.get(*fwd.last().expect("nonempty"), y) {
                0 => break,
                k => fwd.push(k),
            }
        }
        let steps = fwd.len() - 1;
        if steps == n as usize {
            if fwd[steps] != x {
                self.merge(fwd[steps], x);
                self.settle();
            }
            return;
        }
        // fwd[steps] ▷ y is unknown; walk back from x to find what it must be.
        let mut back = x;
        for _ in 0..(n as usize - steps - 1) {
            back = self.dual(back, y);
            if back == 0 {
                return;
            }
        }
        self.fill(fwd[steps], y, back);
    }

    /// `v(x ▷ y) = v(x) ▷ v(y)`, plus `v(v(x)) = x` when `involution`.
    fn rule_virtual(&mut self, x: u32, y: u32, involution: bool) {
        if involution && x == y {
            let vx = self.v_of(x);
            if vx != 0 {
                self.set_v(vx, x);
                self.settle();
            } else if self.v_inv(x) != 0 {
                self.set_v(x, self.v_inv(x));
                self.settle();
            }
            if !self.is_live(x) || !self.is_live(y) {
                return;
            }
        }
        let (a, vx, vy) = (self.get(x, y), self.v_of(x), self.v_of(y));
        match (a, vx, vy) {
            (a, vx, vy) if a != 0 && vx != 0 && vy != 0 => {
                let va = self.v_of(a);
                let r = self.get(vx, vy);
                match (va, r) {
                    (0, 0) => {}
                    (0, r) => {
                        self.set_v(a, r);
                        self.settle();
                    }
                    (va, _) => self.fill(vx, vy, va),
                }
            }
            (0, vx, vy) if vx != 0 && vy != 0 => {
                let r = self.get(vx, vy);
                if r != 0 && self.v_inv(r) != 0 {
                    self.fill(x, y, self.v_inv(r));
                }
            }
            (a, 0, vy) if a != 0 && vy != 0 => {
                let va = self.v_of(a);
                if va != 0 {
                    let vx = self.dual(va, vy);
                    if vx != 0 {
                        self.set_v(x, vx);
                        self.settle();
                    }
                }
            }
            _ => {}
        }
    }

    /// `M[i][j] := k` unless `k` is unknown.
    fn fill(&mut self, i: u32, j: u32, k: u32) {
        if k != 0 {
            self.set(i, j, k);
            self.settle();
        }
    }

    /// `a ▷ b = c ▷ d` with all four known.
    fn equate(&mut self, a: u32, b: u32, c: u32, d: u32) {
        let (l, r) = (self.get(a, b), self.get(c, d));
        match (l, r) {
            (0, 0) => {}
            (0, r) => self.fill(a, b, r),
            (l, 0) => self.fill(c, d, l),
            (l, r) if l != r => {
                self.merge(l, r);
                self.settle();
            }
            _ => {}
        }
    }
}

enum Zero {
    Table(u32, u32),
    V(u32),
}
