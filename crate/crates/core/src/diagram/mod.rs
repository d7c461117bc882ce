//! Oriented knot and link diagrams: PD and signed Gauss codes, arcs,
//! semiarcs and crossing relations.
//!
//! PD convention: `X[a,b,c,d]` lists the incoming under-edge first and the
//! remaining edges counterclockwise, so `c` is the outgoing under-edge. The
//! crossing is positive when the over-strand runs from `d` to `b`.
//! `V[a,b,c,d]` is a virtual crossing whose strands are `a–c` and `b–d`.

mod arcs;
mod gauss;
mod iso;
mod pd;
mod planar;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use arcs::{crossing_relations, label_arcs, ArcLabeling, ArcMode};
pub use gauss::{parse_gauss, parse_gauss_abstract};
pub use iso::diagrams_isomorphic;
pub use pd::parse_pd;
pub use planar::{is_planar, planarize_gauss};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("crossing {index} has {found} edges, expected 4")]
    Arity { index: usize, found: usize },
    #[error("edge {edge} appears {count} times, expected 2")]
    EdgeCount { edge: u32, count: usize },
    #[error("edge labels must be positive")]
    ZeroLabel,
    #[error("orientation is inconsistent at edge {0}")]
    Orientation(u32),
    #[error("crossing {0} does not have exactly one over and one under passage")]
    Unmatched(u32),
    #[error("virtual crossing {0} must be passed exactly twice")]
    UnmatchedVirtual(u32),
    #[error("crossing {0} carries different signs on its two passages")]
    SignMismatch(u32),
    #[error("crossing {0} has no sign")]
    MissingSign(u32),
    #[error("code is not realizable in the plane; mark virtual crossings with V or planarize it")]
    NotPlanar,
    #[error("too many virtual crossings ({0}) to search their rotations")]
    TooManyVirtual(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CrossingKind {
    Classical,
    Virtual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        match s {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;
    fn try_from(v: i8) -> Result<Sign, String> {
        match v {
            1 => Ok(Sign::Positive),
            -1 => Ok(Sign::Negative),
            other => Err(format!("sign must be 1 or -1, got {other}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub kind: CrossingKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<Sign>,
    /// Edge labels in counterclockwise order; for classical crossings slot 0
    /// is the incoming under-edge.
    pub slots: [u32; 4],
    /// Whether the edge in each slot points into the crossing.
    pub incoming: [bool; 4],
}

impl Crossing {
    pub fn classical(slots: [u32; 4], sign: Sign) -> Crossing {
        let incoming = match sign {
            Sign::Positive => [true, false, false, true],
            Sign::Negative => [true, true, false, false],
        };
        Crossing { kind: CrossingKind::Classical, sign: Some(sign), slots, incoming }
    }

    /// `a_in` and `b_in` tell whether the strands enter at slots 0 and 1.
    pub fn virtual_crossing(slots: [u32; 4], a_in: bool, b_in: bool) -> Crossing {
        Crossing {
            kind: CrossingKind::Virtual,
            sign: None,
            slots,
            incoming: [a_in, b_in, !a_in, !b_in],
        }
    }

    pub fn is_classical(&self) -> bool {
        self.kind == CrossingKind::Classical
    }

    pub fn under_in(&self) -> u32 {
        self.slots[0]
    }

    pub fn under_out(&self) -> u32 {
        self.slots[2]
    }

    pub fn over_in(&self) -> u32 {
        if self.incoming[1] {
            self.slots[1]
        } else {
            self.slots[3]
        }
    }

    pub fn over_out(&self) -> u32 {
        if self.incoming[1] {
            self.slots[3]
        } else {
            self.slots[1]
        }
    }

    /// The two strands as (incoming edge, outgoing edge).
    pub fn strands(&self) -> [(u32, u32); 2] {
        let strand = |i: usize| {
            let j = i + 2;
            if self.incoming[i] {
                (self.slots[i], self.slots[j])
            } else {
                (self.slots[j], self.slots[i])
            }
        };
        [strand(0), strand(1)]
    }

    /// Reflection of the plane: reverses the rotation, which flips the sign.
    pub fn reflected(&self) -> Crossing {
        let [a, b, c, d] = self.slots;
        let [ia, ib, ic, id] = self.incoming;
        Crossing {
            kind: self.kind,
            sign: self.sign.map(Sign::flip),
            slots: [a, d, c, b],
            incoming: [ia, id, ic, ib],
        }
    }
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            CrossingKind::Classical => "X",
            CrossingKind::Virtual => "V",
        };
        let [a, b, c, d] = self.slots;
        write!(f, "{tag}[{a},{b},{c},{d}]")
    }
}

/// Position of an edge end: crossing index and slot.
pub type Port = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotDiagram {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub crossings: Vec<Crossing>,
    pub components: usize,
    /// Components without any crossing.
    #[serde(default)]
    pub free_loops: usize,
}

impl KnotDiagram {
    pub fn unknot() -> KnotDiagram {
        KnotDiagram { name: None, crossings: Vec::new(), components: 1, free_loops: 1 }
    }

    /// Validates the closed-curve condition and orientation consistency and
    /// counts components.
    pub fn from_crossings(crossings: Vec<Crossing>, free_loops: usize) -> Result<KnotDiagram, DiagramError> {
        let mut d = KnotDiagram { name: None, crossings, components: 0, free_loops };
        let ends = d.checked_ends()?;
        let succ = d.successors_from(&ends);
        d.components = count_cycles(&succ) + free_loops;
        Ok(d)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn edges(&self) -> BTreeSet<u32> {
        self.crossings.iter().flat_map(|c| c.slots).collect()
    }

    pub fn classical_count(&self) -> usize {
        self.crossings.iter().filter(|c| c.is_classical()).count()
    }

    pub fn virtual_count(&self) -> usize {
        self.crossings.len() - self.classical_count()
    }

    pub fn is_classical(&self) -> bool {
        self.virtual_count() == 0
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().filter_map(|c| c.sign).map(|s| i8::from(s) as i64).sum()
    }

    /// For each edge, the port it leaves from and the port it enters.
    pub fn edge_ends(&self) -> BTreeMap<u32, (Port, Port)> {
        self.checked_ends().expect("validated diagram")
    }

    fn checked_ends(&self) -> Result<BTreeMap<u32, (Port, Port)>, DiagramError> {
        let mut seen: BTreeMap<u32, Vec<(Port, bool)>> = BTreeMap::new();
        for (ci, c) in self.crossings.iter().enumerate() {
            for s in 0..4 {
                if c.slots[s] == 0 {
                    return Err(DiagramError::ZeroLabel);
                }
                seen.entry(c.slots[s]).or_default().push(((ci, s), c.incoming[s]));
            }
            if c.incoming[0] == c.incoming[2] || c.incoming[1] == c.incoming[3] {
                return Err(DiagramError::Orientation(c.slots[0]));
            }
        }
        let mut out = BTreeMap::new();
        for (e, occ) in seen {
            if occ.len() != 2 {
                return Err(DiagramError::EdgeCount { edge: e, count: occ.len() });
            }
            let (tail, head) = match (occ[0].1, occ[1].1) {
                (false, true) => (occ[0].0, occ[1].0),
                (true, false) => (occ[1].0, occ[0].0),
                _ => return Err(DiagramError::Orientation(e)),
            };
            out.insert(e, (tail, head));
        }
        Ok(out)
    }

    fn successors_from(&self, ends: &BTreeMap<u32, (Port, Port)>) -> BTreeMap<u32, u32> {
        ends.iter()
            .map(|(&e, &(_, (ci, s)))| (e, self.crossings[ci].slots[(s + 2) % 4]))
            .collect()
    }

    /// Next edge along the orientation.
    pub fn successors(&self) -> BTreeMap<u32, u32> {
        self.successors_from(&self.edge_ends())
    }

    /// Edges of each component in traversal order, each starting from its
    /// smallest label.
    pub fn component_cycles(&self) -> Vec<Vec<u32>> {
        let succ = self.successors();
        let mut done = BTreeSet::new();
        let mut out = Vec::new();
        for &start in succ.keys() {
            if done.contains(&start) {
                continue;
            }
            let mut cyc = vec![start];
            done.insert(start);
            let mut e = succ[&start];
            while e != start {
                cyc.push(e);
                done.insert(e);
                e = succ[&e];
            }
            out.push(cyc);
        }
        out
    }

    /// Reflection in the plane (the mirror image as a diagram).
    pub fn reflected(&self) -> KnotDiagram {
        KnotDiagram {
            name: self.name.as_ref().map(|n| format!("mirror {n}")),
            crossings: self.crossings.iter().map(Crossing::reflected).collect(),
            components: self.components,
            free_loops: self.free_loops,
        }
    }

    /// Same diagram with edges renamed `1..` consecutively along each
    /// component.
    pub fn renumbered(&self) -> KnotDiagram {
        let mut name = BTreeMap::new();
        for e in self.component_cycles().into_iter().flatten() {
            let next = name.len() as u32 + 1;
            name.insert(e, next);
        }
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing { slots: c.slots.map(|e| name[&e]), ..c.clone() })
            .collect();
        KnotDiagram { crossings, ..self.clone() }
    }

    /// Band sum along the smallest edge of each diagram. For knots this is
    /// the connected sum.
    pub fn connected_sum(&self, other: &KnotDiagram) -> KnotDiagram {
        if self.crossings.is_empty() {
            return other.clone();
        }
        if other.crossings.is_empty() {
            return self.clone();
        }
        let shift = self.edges().last().copied().unwrap_or(0);
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|c| Crossing { slots: c.slots.map(|e| e + shift), ..c.clone() }));
        let x = *self.edges().first().expect("has edges");
        let y = *other.edges().first().expect("has edges") + shift;
        let (_, (qc, qs)) = self.edge_ends()[&x];
        let (_, (sc, ss)) = other.edge_ends()[&(y - shift)];
        let sc = sc + self.crossings.len();
        crossings[sc].slots[ss] = x;
        crossings[qc].slots[qs] = y;
        let name = match (&self.name, &other.name) {
            (Some(a), Some(b)) => Some(format!("{a} # {b}")),
            _ => None,
        };
        let d = KnotDiagram::from_crossings(crossings, self.free_loops + other.free_loops).expect("sum of valid diagrams");
        KnotDiagram { name, ..d }.renumbered()
    }

    pub fn to_pd_string(&self) -> String {
        let items: Vec<String> = self.crossings.iter().map(|c| c.to_string()).collect();
        format!("PD[{}]", items.join(","))
    }
}

fn count_cycles(succ: &BTreeMap<u32, u32>) -> usize {
    let mut done = BTreeSet::new();
    let mut n = 0;
    for &start in succ.keys() {
        if done.insert(start) {
            n += 1;
            let mut e = succ[&start];
            while done.insert(e) {
                e = succ[&e];
            }
        }
    }
    n
}
