use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{KnotDiagram, Sign};
use crate::presentation::Relation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArcMode {
    /// Broken only at undercrossings.
    ClassicalArcs,
    /// Broken at undercrossings and at virtual crossings.
    VirtualSemiarcs,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcLabeling {
    pub mode: ArcMode,
    pub n: usize,
    /// Arc index (1-based) of every edge.
    pub edge_arc: BTreeMap<u32, usize>,
}

impl ArcLabeling {
    pub fn arc(&self, edge: u32) -> usize {
        self.edge_arc[&edge]
    }
}

/// Arcs are numbered by their smallest edge label; crossing-free components
/// get the last indices.
pub fn label_arcs(d: &KnotDiagram, mode: ArcMode) -> ArcLabeling {
    let edges: Vec<u32> = d.edges().into_iter().collect();
    let index: BTreeMap<u32, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut parent: Vec<usize> = (0..edges.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    let mut join = |a: u32, b: u32| {
        let (ra, rb) = (find(&mut parent, index[&a]), find(&mut parent, index[&b]));
        parent[ra.max(rb)] = ra.min(rb);
    };
    for c in &d.crossings {
        if c.is_classical() {
            join(c.over_in(), c.over_out());
        } else if mode == ArcMode::ClassicalArcs {
            for (i, o) in c.strands() {
                join(i, o);
            }
        }
    }
    let mut number: BTreeMap<usize, usize> = BTreeMap::new();
    let mut edge_arc = BTreeMap::new();
    for (i, &e) in edges.iter().enumerate() {
        let root = find(&mut parent, i);
        let next = number.len() + 1;
        let a = *number.entry(root).or_insert(next);
        edge_arc.insert(e, a);
    }
    ArcLabeling { mode, n: number.len() + d.free_loops, edge_arc }
}

/// One relation per classical crossing, `u_in ▷ o = u_out` when positive and
/// `u_out ▷ o = u_in` when negative. With semiarcs each virtual crossing adds
/// `v(in) = out` for both strands.
pub fn crossing_relations(d: &KnotDiagram, labels: &ArcLabeling) -> Vec<Relation> {
    let mut out = Vec::new();
    for c in &d.crossings {
        if c.is_classical() {
            let (ui, uo, o) = (labels.arc(c.under_in()), labels.arc(c.under_out()), labels.arc(c.over_in()));
            out.push(match c.sign.expect("classical") {
                Sign::Positive => Relation::short(ui, o, uo),
                Sign::Negative => Relation::short(uo, o, ui),
            });
        }
    }
    if labels.mode == ArcMode::VirtualSemiarcs {
        for c in d.crossings.iter().filter(|c| !c.is_classical()) {
            for (i, o) in c.strands() {
                out.push(Relation::virtual_step(labels.arc(i), labels.arc(o)));
            }
        }
    }
    out
}
