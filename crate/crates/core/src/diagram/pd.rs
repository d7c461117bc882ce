use std::collections::{BTreeMap, VecDeque};

use super::{Crossing, CrossingKind, DiagramError, KnotDiagram, Sign};

struct Node {
    kind: CrossingKind,
    slots: [u32; 4],
}

fn parse_nodes(text: &str) -> Result<Vec<Node>, DiagramError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let body = s
        .strip_prefix("PD[")
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| DiagramError::Syntax("expected PD[...]".into()))?;
    let mut nodes = Vec::new();
    let mut rest = body;
    while !rest.is_empty() {
        let kind = match rest.as_bytes()[0] {
            b'X' => CrossingKind::Classical,
            b'V' => CrossingKind::Virtual,
            _ => return Err(DiagramError::Syntax(format!("expected X[ or V[ at {rest:?}"))),
        };
        let inner_start = rest[1..]
            .strip_prefix('[')
            .ok_or_else(|| DiagramError::Syntax("expected [ after crossing tag".into()))?;
        let close = inner_start.find(']').ok_or_else(|| DiagramError::Syntax("unclosed crossing".into()))?;
        let labels: Vec<u32> = inner_start[..close]
            .split(',')
            .map(|x| x.parse::<u32>().map_err(|_| DiagramError::Syntax(format!("bad edge label {x:?}"))))
            .collect::<Result<_, _>>()?;
        if labels.len() != 4 {
            return Err(DiagramError::Arity { index: nodes.len(), found: labels.len() });
        }
        nodes.push(Node { kind, slots: [labels[0], labels[1], labels[2], labels[3]] });
        rest = &inner_start[close + 1..];
        if let Some(r) = rest.strip_prefix(',') {
            if r.is_empty() {
                return Err(DiagramError::Syntax("trailing comma".into()));
            }
            rest = r;
        } else if !rest.is_empty() {
            return Err(DiagramError::Syntax(format!("expected , at {rest:?}")));
        }
    }
    Ok(nodes)
}

/// Whether, following table labelling where edges increase along the
/// orientation, edge `a` runs into edge `b`.
fn runs_into(a: u32, b: u32) -> bool {
    b == a + 1 || (a > b + 1)
}

/// Parses `PD[X[..],..,V[..]]` and recovers orientations by propagation from
/// the under-strands. Strands left undetermined (components that never pass
/// under) are oriented by the increasing-label convention.
pub fn parse_pd(text: &str) -> Result<KnotDiagram, DiagramError> {
    let nodes = parse_nodes(text)?;
    if nodes.is_empty() {
        return Ok(KnotDiagram::unknot());
    }
    let mut occ: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    for (ci, n) in nodes.iter().enumerate() {
        for (s, &e) in n.slots.iter().enumerate() {
            if e == 0 {
                return Err(DiagramError::ZeroLabel);
            }
            occ.entry(e).or_default().push((ci, s));
        }
    }
    for (&e, v) in &occ {
        if v.len() != 2 {
            return Err(DiagramError::EdgeCount { edge: e, count: v.len() });
        }
    }
    let mut dir: Vec<[Option<bool>; 4]> = vec![[None; 4]; nodes.len()];
    let mut queue: VecDeque<(usize, usize, bool)> = VecDeque::new();
    for (ci, n) in nodes.iter().enumerate() {
        if n.kind == CrossingKind::Classical {
            queue.push_back((ci, 0, true));
        }
    }
    loop {
        while let Some((ci, s, inc)) = queue.pop_front() {
            match dir[ci][s] {
                Some(d) if d == inc => continue,
                Some(_) => return Err(DiagramError::Orientation(nodes[ci].slots[s])),
                None => dir[ci][s] = Some(inc),
            }
            queue.push_back((ci, (s + 2) % 4, !inc));
            let e = nodes[ci].slots[s];
            for &(cj, t) in &occ[&e] {
                if (cj, t) != (ci, s) {
                    queue.push_back((cj, t, !inc));
                }
            }
        }
        let open = (0..nodes.len()).flat_map(|ci| (0..4).map(move |s| (ci, s))).find(|&(ci, s)| dir[ci][s].is_none());
        let Some((ci, s)) = open else { break };
        let (a, b) = (nodes[ci].slots[s], nodes[ci].slots[(s + 2) % 4]);
        queue.push_back((ci, s, runs_into(a, b) || (!runs_into(b, a) && a < b)));
    }
    let crossings = nodes
        .iter()
        .zip(&dir)
        .map(|(n, d)| {
            let incoming = d.map(|x| x.expect("all ports oriented"));
            match n.kind {
                CrossingKind::Classical => {
                    let sign = if incoming[3] { Sign::Positive } else { Sign::Negative };
                    Crossing { kind: n.kind, sign: Some(sign), slots: n.slots, incoming }
                }
                CrossingKind::Virtual => Crossing { kind: n.kind, sign: None, slots: n.slots, incoming },
            }
        })
        .collect();
    KnotDiagram::from_crossings(crossings, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed() {
        assert!(matches!(parse_pd("PD[X[1,2,3]]"), Err(DiagramError::Arity { .. })));
        assert!(matches!(parse_pd("PD[X[1,2]]"), Err(DiagramError::Arity { .. })));
        assert!(matches!(parse_pd("PD[X[1,2,3,4]]"), Err(DiagramError::EdgeCount { .. })));
        assert!(matches!(parse_pd("X[1,2,3,4]"), Err(DiagramError::Syntax(_))));
        assert!(matches!(parse_pd("PD[X[1,a,2,2]]"), Err(DiagramError::Syntax(_))));
        assert!(matches!(parse_pd("PD[X[1,2,2,1]],"), Err(DiagramError::Syntax(_))));
    }

    #[test]
    fn empty_is_unknot() {
        let d = parse_pd("PD[]").unwrap();
        assert_eq!((d.crossings.len(), d.components, d.free_loops), (0, 1, 1));
    }

    #[test]
    fn kinks_of_both_signs() {
        let pos = parse_pd("PD[X[2,2,1,1]]").unwrap();
        assert_eq!(pos.crossings[0].sign, Some(Sign::Positive));
        let neg = parse_pd("PD[X[1,2,2,1]]").unwrap();
        assert_eq!(neg.crossings[0].sign, Some(Sign::Negative));
        assert_eq!(neg.components, 1);
    }

    #[test]
    fn orientation_conflict() {
        // edge 2 would be the outgoing under-edge at both crossings
        assert!(matches!(parse_pd("PD[X[1,3,2,4],X[4,1,2,3]]"), Err(DiagramError::Orientation(_))));
    }
}
