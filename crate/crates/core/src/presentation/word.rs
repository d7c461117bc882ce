use std::fmt;

use serde::{Deserialize, Serialize};

/// A quandle word over generators `x_1, x_2, ...` (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Word {
    Gen(usize),
    /// `a ▷ b`
    Op(Box<Word>, Box<Word>),
    /// `a ▷⁻¹ b`
    Dual(Box<Word>, Box<Word>),
    /// `v(a)`
    V(Box<Word>),
}

impl Word {
    pub fn gen(i: usize) -> Word {
        Word::Gen(i)
    }

    pub fn op(a: Word, b: Word) -> Word {
        Word::Op(Box::new(a), Box::new(b))
    }

    pub fn dual(a: Word, b: Word) -> Word {
        Word::Dual(Box::new(a), Box::new(b))
    }

    pub fn v(a: Word) -> Word {
        Word::V(Box::new(a))
    }

    pub fn max_gen(&self) -> usize {
        match self {
            Word::Gen(i) => *i,
            Word::Op(a, b) | Word::Dual(a, b) => a.max_gen().max(b.max_gen()),
            Word::V(a) => a.max_gen(),
        }
    }

    pub fn min_gen(&self) -> usize {
        match self {
            Word::Gen(i) => *i,
            Word::Op(a, b) | Word::Dual(a, b) => a.min_gen().min(b.min_gen()),
            Word::V(a) => a.min_gen(),
        }
    }

    pub fn uses_v(&self) -> bool {
        match self {
            Word::Gen(_) => false,
            Word::Op(a, b) | Word::Dual(a, b) => a.uses_v() || b.uses_v(),
            Word::V(_) => true,
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn side(w: &Word, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match w {
                Word::Gen(_) | Word::V(_) => write!(f, "{w}"),
                _ => write!(f, "({w})"),
            }
        }
        match self {
            Word::Gen(i) => write!(f, "x{i}"),
            Word::Op(a, b) => {
                side(a, f)?;
                write!(f, " ▷ ")?;
                side(b, f)
            }
            Word::Dual(a, b) => {
                side(a, f)?;
                write!(f, " ▷⁻¹ ")?;
                side(b, f)
            }
            Word::V(a) => write!(f, "v({a})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
}

impl Relation {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        Relation { lhs, rhs }
    }

    /// `x_a ▷ x_b = x_c`
    pub fn short(a: usize, b: usize, c: usize) -> Self {
        Relation::new(Word::op(Word::gen(a), Word::gen(b)), Word::gen(c))
    }

    /// `v(x_a) = x_b`
    pub fn virtual_step(a: usize, b: usize) -> Self {
        Relation::new(Word::v(Word::gen(a)), Word::gen(b))
    }

    pub fn max_gen(&self) -> usize {
        self.lhs.max_gen().max(self.rhs.max_gen())
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}
