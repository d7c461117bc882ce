//! Finitely presented quandles, their completion under extra axioms, and
//! finite quandles.

mod axioms;
mod complete;
mod iso;
mod matrix;
mod quandle;
mod word;

use std::fmt;

use thiserror::Error;

use crate::diagram::{crossing_relations, label_arcs, ArcMode, KnotDiagram};

pub use axioms::AxiomSet;
pub use complete::{Budget, CompletionResult, CompletionStats, Strategy};
pub use iso::{are_isomorphic, isomorphism};
pub use matrix::PresentationMatrix;
pub use quandle::FiniteQuandle;
pub use word::{Relation, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("generator index {index} is outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("relation uses v but the presentation is not virtual")]
    VirtualWord,
    #[error("{0}")]
    Axiom(String),
    #[error("unknown strategy `{0}`")]
    Strategy(String),
    #[error("invalid table: {0}")]
    Table(String),
    #[error("{t} is not a unit modulo {n}")]
    NotUnit { t: i64, n: usize },
}

/// Knot presentation: one generator per arc, or per semiarc when `virtual`.
pub fn knot_presentation(d: &KnotDiagram, is_virtual: bool) -> PresentationMatrix {
    let mode = if is_virtual { ArcMode::VirtualSemiarcs } else { ArcMode::ClassicalArcs };
    let labels = label_arcs(d, mode);
    let relations = crossing_relations(d, &labels);
    PresentationMatrix::from_relations(labels.n, &relations, is_virtual).expect("arc indices are in range")
}

/// Rows as `[ a b c | v ]`, the part after column `width` set off by `|`.
fn write_rows(f: &mut fmt::Formatter<'_>, rows: &[Vec<u32>], width: usize) -> fmt::Result {
    let w = rows.iter().flatten().map(|k| k.to_string().len()).max().unwrap_or(1);
    for row in rows {
        write!(f, "[")?;
        for (j, k) in row.iter().enumerate() {
            if j == width {
                write!(f, " |")?;
            }
            write!(f, " {k:>w$}")?;
        }
        writeln!(f, " ]")?;
    }
    Ok(())
}
