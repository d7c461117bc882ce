//! Bundled knot diagrams, expectation files and the regression runner.
//!
//! Expectation files come in two shapes, told apart by their fields: FLAG
//! tables carry `order` and `k`, quotient tables carry `axioms`. Reports
//! list entries in file order whatever order they were computed in.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{parse_pd, planarize_gauss, DiagramError, KnotDiagram};
use crate::flag::{flag_invariant, RelationConvention};
use crate::groebner::{ideal_equal, rational_groebner, Ideal};
use crate::polyring::{MonomialOrder, PolyError, Polynomial};
use crate::presentation::{
    are_isomorphic, knot_presentation, AxiomSet, Budget, CompletionResult, FiniteQuandle, PresentationError, Strategy,
};

pub const KNOTS_JSON: &str = include_str!("../data/knots.json");
pub const FLAG1_EXPECTED_JSON: &str = include_str!("../data/flag1_expected.json");
pub const QUOTIENTS_EXPECTED_JSON: &str = include_str!("../data/quotients_expected.json");
pub const VIRTUAL_3_7_JSON: &str = include_str!("../data/virtual_3_7_quandle.json");

#[derive(Debug, Error)]
pub enum TableError {
    #[error("malformed table: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{name}: {source}")]
    Diagram { name: String, source: DiagramError },
    #[error("{name}: {source}")]
    Polynomial { name: String, source: PolyError },
    #[error("{0}: entry has neither a PD nor a Gauss code")]
    NoCode(String),
    #[error("bad monomial order: {0}")]
    Order(PolyError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KnotKind {
    Classical,
    Virtual,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotEntry {
    pub name: String,
    pub kind: KnotKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pd: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gauss: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub determinant: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alexander: Option<String>,
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl KnotEntry {
    /// PD codes are parsed as given; Gauss codes are planarized, so
    /// non-realizable codes gain virtual crossings.
    pub fn diagram(&self) -> Result<KnotDiagram, TableError> {
        let wrap = |source| TableError::Diagram { name: self.name.clone(), source };
        let d = match (&self.pd, &self.gauss) {
            (Some(pd), _) => parse_pd(pd).map_err(wrap)?,
            (None, Some(g)) => planarize_gauss(g).map_err(wrap)?,
            (None, None) => return Err(TableError::NoCode(self.name.clone())),
        };
        Ok(d.with_name(self.name.clone()))
    }

    /// Prime classical knot with this many crossings, read off the name.
    pub fn table_crossings(&self) -> Option<u32> {
        if self.kind != KnotKind::Classical {
            return None;
        }
        let (c, i) = self.name.split_once('_')?;
        i.parse::<u32>().ok()?;
        c.parse().ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotTable {
    pub version: u32,
    #[serde(default)]
    pub sources: BTreeMap<String, String>,
    pub knots: Vec<KnotEntry>,
}

impl KnotTable {
    pub fn bundled() -> KnotTable {
        serde_json::from_str(KNOTS_JSON).expect("bundled table is valid")
    }

    pub fn from_json(text: &str) -> Result<KnotTable, TableError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn get(&self, name: &str) -> Option<&KnotEntry> {
        self.knots.iter().find(|k| k.name == name)
    }

    /// Prime classical knots `3_1` to `8_21`, in table order.
    pub fn prime_classical(&self) -> impl Iterator<Item = &KnotEntry> {
        self.knots.iter().filter(|k| k.table_crossings().is_some_and(|c| c >= 3))
    }
}

fn default_order() -> String {
    MonomialOrder::default().to_string()
}

fn default_k() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagExpected {
    pub name: String,
    pub cardinality: usize,
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagExpectations {
    #[serde(default)]
    pub description: String,
    #[serde(default = "default_order")]
    pub order: String,
    #[serde(default = "default_k")]
    pub k: usize,
    pub entries: Vec<FlagExpected>,
}

impl FlagExpectations {
    pub fn bundled() -> FlagExpectations {
        serde_json::from_str(FLAG1_EXPECTED_JSON).expect("bundled expectations are valid")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientExpected {
    pub name: String,
    pub size: usize,
    /// When present the computed table must be isomorphic to it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quandle: Option<FiniteQuandle>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientExpectations {
    #[serde(default)]
    pub description: String,
    pub axioms: String,
    pub entries: Vec<QuotientExpected>,
}

impl QuotientExpectations {
    pub fn bundled() -> QuotientExpectations {
        serde_json::from_str(QUOTIENTS_EXPECTED_JSON).expect("bundled expectations are valid")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Expectations {
    Quotients(QuotientExpectations),
    Flag(FlagExpectations),
}

impl Expectations {
    /// Blank text is an empty FLAG table.
    pub fn from_json(text: &str) -> Result<Expectations, TableError> {
        if text.trim().is_empty() {
            return Ok(Expectations::Flag(FlagExpectations {
                description: String::new(),
                order: default_order(),
                k: default_k(),
                entries: Vec::new(),
            }));
        }
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Match,
    IdealMatchOnly,
    Mismatch,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryReport {
    pub name: String,
    pub status: Status,
    pub expected_size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    /// Expected elements not found, sign-normalized.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub missing: Vec<String>,
    /// Computed elements not expected, sign-normalized.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub unexpected: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl EntryReport {
    fn failed(name: &str, expected_size: usize, detail: String) -> EntryReport {
        EntryReport {
            name: name.to_string(),
            status: Status::Mismatch,
            expected_size,
            size: None,
            missing: Vec::new(),
            unexpected: Vec::new(),
            detail: Some(detail),
            timing_ms: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub entries: Vec<EntryReport>,
    pub counts: BTreeMap<String, usize>,
}

impl RunReport {
    fn new(entries: Vec<EntryReport>) -> RunReport {
        let mut counts = BTreeMap::new();
        for e in &entries {
            let key = serde_json::to_value(e.status).expect("plain enum");
            *counts.entry(key.as_str().unwrap_or_default().to_string()).or_insert(0) += 1;
        }
        RunReport { entries, counts }
    }

    /// Every entry is a match or an ideal-level match.
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| matches!(e.status, Status::Match | Status::IdealMatchOnly))
    }

    pub fn without_timings(mut self) -> RunReport {
        for e in &mut self.entries {
            e.timing_ms = None;
        }
        self
    }
}

/// Settings shared by both kinds of regression run.
#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub convention: RelationConvention,
    pub budget: Budget,
    pub strategy: Strategy,
}

pub fn regress(table: &KnotTable, expectations: &Expectations, opts: &RunOptions) -> Result<RunReport, TableError> {
    match expectations {
        Expectations::Flag(e) => regress_flag(table, e, opts.convention),
        Expectations::Quotients(e) => regress_quotients(table, e, opts.budget, opts.strategy),
    }
}

fn sign_normalized(polys: impl IntoIterator<Item = Polynomial>) -> BTreeMap<Vec<crate::polyring::Term>, Polynomial> {
    polys.into_iter().map(|p| p.primitive_part()).map(|p| (p.canonical_key(), p)).collect()
}

/// Compares FLAG bases set-wise, each element up to sign and content;
/// falls back to ideal equality over ℚ when the sets differ.
pub fn regress_flag(
    table: &KnotTable,
    expectations: &FlagExpectations,
    convention: RelationConvention,
) -> Result<RunReport, TableError> {
    let ord: MonomialOrder = expectations.order.parse().map_err(TableError::Order)?;
    let k = expectations.k;
    let entries = expectations
        .entries
        .par_iter()
        .map(|e| -> Result<EntryReport, TableError> {
            let Some(knot) = table.get(&e.name) else {
                return Ok(EntryReport::failed(&e.name, e.cardinality, "no diagram in the knot table".into()));
            };
            let want: Vec<Polynomial> = e
                .basis
                .iter()
                .map(|s| Polynomial::parse(s, ord))
                .collect::<Result<_, _>>()
                .map_err(|source| TableError::Polynomial { name: e.name.clone(), source })?;
            let d = knot.diagram()?;
            let start = Instant::now();
            let inv = flag_invariant(&d, k, ord, convention);
            let timing_ms = Some(start.elapsed().as_millis());
            let got = sign_normalized(inv.rational.elements().iter().cloned());
            let want_set = sign_normalized(want.iter().cloned());
            let missing: Vec<String> =
                want_set.iter().filter(|(key, _)| !got.contains_key(*key)).map(|(_, p)| p.to_string()).collect();
            let unexpected: Vec<String> =
                got.iter().filter(|(key, _)| !want_set.contains_key(*key)).map(|(_, p)| p.to_string()).collect();
            let size = inv.rational.len();
            let status = if missing.is_empty() && unexpected.is_empty() && size == e.cardinality {
                Status::Match
            } else {
                let expected_basis = rational_groebner(&Ideal::new(want, ord));
                match ideal_equal(&expected_basis, &inv.rational) {
                    Ok(true) => Status::IdealMatchOnly,
                    _ => Status::Mismatch,
                }
            };
            Ok(EntryReport {
                name: e.name.clone(),
                status,
                expected_size: e.cardinality,
                size: Some(size),
                missing,
                unexpected,
                detail: None,
                timing_ms,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RunReport::new(entries))
}

/// Completes each presentation and compares the order of the result, and
/// its isomorphism class when the expectation carries a table.
pub fn regress_quotients(
    table: &KnotTable,
    expectations: &QuotientExpectations,
    budget: Budget,
    strategy: Strategy,
) -> Result<RunReport, TableError> {
    let axioms: AxiomSet = expectations.axioms.parse()?;
    let entries = expectations
        .entries
        .par_iter()
        .map(|e| -> Result<EntryReport, TableError> {
            let Some(knot) = table.get(&e.name) else {
                return Ok(EntryReport::failed(&e.name, e.size, "no diagram in the knot table".into()));
            };
            let d = knot.diagram()?;
            let start = Instant::now();
            let result = knot_presentation(&d, knot.kind == KnotKind::Virtual).complete(&axioms, &budget, strategy);
            let timing_ms = Some(start.elapsed().as_millis());
            let (status, size, detail) = match &result {
                CompletionResult::BudgetExceeded { stats } => (
                    Status::BudgetExceeded,
                    None,
                    Some(format!("{} generators allocated", stats.generators_allocated)),
                ),
                CompletionResult::Completed { quandle, .. } => {
                    let iso = e.quandle.as_ref().map_or(true, |q| are_isomorphic(q, quandle));
                    let status = if quandle.n == e.size && iso { Status::Match } else { Status::Mismatch };
                    let detail = (!iso).then(|| "table is not isomorphic to the expected one".to_string());
                    (status, Some(quandle.n), detail)
                }
            };
            Ok(EntryReport {
                name: e.name.clone(),
                status,
                expected_size: e.size,
                size,
                missing: Vec::new(),
                unexpected: Vec::new(),
                detail,
                timing_ms,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RunReport::new(entries))
}
