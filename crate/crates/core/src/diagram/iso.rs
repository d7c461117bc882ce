//! Structural isomorphism of diagrams: equality of crossing records after
//! renaming edges, tried over every starting edge and component order.

use std::collections::BTreeMap;

use super::{CrossingKind, KnotDiagram, Sign};

type Record = (CrossingKind, Option<Sign>, [u32; 4], [bool; 4]);

fn relabelled(d: &KnotDiagram, order: &[Vec<u32>]) -> Vec<Record> {
    let mut name: BTreeMap<u32, u32> = BTreeMap::new();
    for e in order.iter().flatten() {
        let next = name.len() as u32 + 1;
        name.insert(*e, next);
    }
    let mut recs: Vec<Record> = d
        .crossings
        .iter()
        .map(|c| {
            let slots = c.slots.map(|e| name[&e]);
            if c.is_classical() {
                (c.kind, c.sign, slots, c.incoming)
            } else {
                // no distinguished first slot: start at either incoming slot
                let rot = |k: usize| {
                    let s = [slots[k], slots[(k + 1) % 4], slots[(k + 2) % 4], slots[(k + 3) % 4]];
                    let i = [c.incoming[k], c.incoming[(k + 1) % 4], c.incoming[(k + 2) % 4], c.incoming[(k + 3) % 4]];
                    (c.kind, None, s, i)
                };
                let starts: Vec<usize> = (0..4).filter(|&k| c.incoming[k]).collect();
                starts.into_iter().map(rot).min().expect("two incoming slots")
            }
        })
        .collect();
    recs.sort();
    recs
}

fn canonical(d: &KnotDiagram) -> Vec<Record> {
    let cycles = d.component_cycles();
    let mut best: Option<Vec<Record>> = None;
    let k = cycles.len();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut consider = |order: Vec<Vec<u32>>| {
        let r = relabelled(d, &order);
        if best.as_ref().map_or(true, |b| &r < b) {
            best = Some(r);
        }
    };
    loop {
        // rotate every component independently
        let mut offsets = vec![0usize; k];
        loop {
            let order: Vec<Vec<u32>> = perm
                .iter()
                .zip(&offsets)
                .map(|(&ci, &o)| {
                    let c = &cycles[ci];
                    c[o..].iter().chain(&c[..o]).copied().collect()
                })
                .collect();
            consider(order);
            let mut i = 0;
            while i < k {
                offsets[i] += 1;
                if offsets[i] < cycles[perm[i]].len() {
                    break;
                }
                offsets[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// True when the two diagrams have the same crossing records up to a
/// renaming of edges that respects orientation.
pub fn diagrams_isomorphic(a: &KnotDiagram, b: &KnotDiagram) -> bool {
    a.crossings.len() == b.crossings.len()
        && a.components == b.components
        && a.free_loops == b.free_loops
        && canonical(a) == canonical(b)
}
