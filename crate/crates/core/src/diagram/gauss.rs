use std::collections::BTreeMap;

use super::planar::is_planar;
use super::{Crossing, DiagramError, KnotDiagram, Sign};

/// Largest number of virtual crossings whose rotations are searched
/// exhaustively for a planar realization.
const MAX_VIRTUAL_SEARCH: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(super) enum PassKind {
    Over,
    Under,
    Virtual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(super) struct Pass {
    pub kind: PassKind,
    pub id: u32,
}

/// A checked single-component signed Gauss code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(super) struct GaussCode {
    pub passes: Vec<Pass>,
    pub signs: BTreeMap<u32, Sign>,
}

fn tokenize(text: &str) -> Result<Vec<(Pass, Option<Sign>)>, DiagramError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() || c == ',' {
            i += 1;
            continue;
        }
        let kind = match c.to_ascii_uppercase() {
            'O' => PassKind::Over,
            'U' => PassKind::Under,
            'V' => PassKind::Virtual,
            _ => return Err(DiagramError::Syntax(format!("unexpected {c:?} at position {i}"))),
        };
        i += 1;
        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let digits: String = chars[start..i].iter().collect();
        let id: u32 = digits.parse().map_err(|_| DiagramError::Syntax(format!("missing crossing number at position {start}")))?;
        let sign = match chars.get(i) {
            Some('+') => Some(Sign::Positive),
            Some('-') | Some('−') => Some(Sign::Negative),
            _ => None,
        };
        if sign.is_some() {
            if kind == PassKind::Virtual {
                return Err(DiagramError::Syntax(format!("virtual crossing V{id} cannot carry a sign")));
            }
            i += 1;
        }
        out.push((Pass { kind, id }, sign));
    }
    Ok(out)
}

pub(super) fn parse_code(text: &str) -> Result<GaussCode, DiagramError> {
    let tokens = tokenize(text)?;
    let mut classical: BTreeMap<u32, (usize, usize, Vec<Option<Sign>>)> = BTreeMap::new();
    let mut virtuals: BTreeMap<u32, usize> = BTreeMap::new();
    for (p, sign) in &tokens {
        match p.kind {
            PassKind::Over => {
                let e = classical.entry(p.id).or_default();
                e.0 += 1;
                e.2.push(*sign);
            }
            PassKind::Under => {
                let e = classical.entry(p.id).or_default();
                e.1 += 1;
                e.2.push(*sign);
            }
            PassKind::Virtual => *virtuals.entry(p.id).or_default() += 1,
        }
    }
    let mut signs = BTreeMap::new();
    for (&id, (o, u, s)) in &classical {
        if (*o, *u) != (1, 1) {
            return Err(DiagramError::Unmatched(id));
        }
        let sign = match (s[0], s[1]) {
            (Some(a), Some(b)) if a != b => return Err(DiagramError::SignMismatch(id)),
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => return Err(DiagramError::MissingSign(id)),
        };
        signs.insert(id, sign);
    }
    if let Some((&id, _)) = virtuals.iter().find(|(_, &n)| n != 2) {
        return Err(DiagramError::UnmatchedVirtual(id));
    }
    Ok(GaussCode { passes: tokens.into_iter().map(|(p, _)| p).collect(), signs })
}

impl GaussCode {
    pub fn virtual_ids(&self) -> Vec<u32> {
        let mut ids = Vec::new();
        for p in &self.passes {
            if p.kind == PassKind::Virtual && !ids.contains(&p.id) {
                ids.push(p.id);
            }
        }
        ids
    }

    pub fn without_virtual(&self) -> GaussCode {
        GaussCode {
            passes: self.passes.iter().copied().filter(|p| p.kind != PassKind::Virtual).collect(),
            signs: self.signs.clone(),
        }
    }

    /// Edge `k` leaves pass `k - 1` and enters pass `k` (cyclically).
    /// `straight[id]` picks the rotation of a virtual crossing: `true` gives
    /// `[in1, in2, out1, out2]`, `false` gives `[in1, out2, out1, in2]`,
    /// where 1 and 2 are its passes in code order.
    pub fn build(&self, straight: &BTreeMap<u32, bool>) -> KnotDiagram {
        let n = self.passes.len() as u32;
        if n == 0 {
            return KnotDiagram::unknot();
        }
        let in_edge = |p: usize| if p == 0 { n } else { p as u32 };
        let out_edge = |p: usize| p as u32 + 1;
        let mut seen: BTreeMap<(bool, u32), usize> = BTreeMap::new();
        let mut order: Vec<(bool, u32)> = Vec::new();
        let mut first: BTreeMap<(bool, u32), Vec<usize>> = BTreeMap::new();
        for (i, p) in self.passes.iter().enumerate() {
            let key = (p.kind == PassKind::Virtual, p.id);
            if seen.insert(key, i).is_none() {
                order.push(key);
            }
            first.entry(key).or_default().push(i);
        }
        let crossings = order
            .iter()
            .map(|key| {
                let ps = &first[key];
                if key.0 {
                    let (p1, p2) = (ps[0], ps[1]);
                    if straight.get(&key.1).copied().unwrap_or(true) {
                        Crossing::virtual_crossing([in_edge(p1), in_edge(p2), out_edge(p1), out_edge(p2)], true, true)
                    } else {
                        Crossing::virtual_crossing([in_edge(p1), out_edge(p2), out_edge(p1), in_edge(p2)], true, false)
                    }
                } else {
                    let (po, pu) = if self.passes[ps[0]].kind == PassKind::Over { (ps[0], ps[1]) } else { (ps[1], ps[0]) };
                    let (ui, uo, oi, oo) = (in_edge(pu), out_edge(pu), in_edge(po), out_edge(po));
                    match self.signs[&key.1] {
                        Sign::Positive => Crossing::classical([ui, oo, uo, oi], Sign::Positive),
                        Sign::Negative => Crossing::classical([ui, oi, uo, oo], Sign::Negative),
                    }
                }
            })
            .collect();
        KnotDiagram::from_crossings(crossings, 0).expect("gauss codes build closed curves")
    }
}

/// The classical crossings of a Gauss code as a diagram, with `V` passes
/// dropped and no realizability check. Adequate for invariants that ignore
/// virtual crossings; arcs and relations do not depend on the drawing.
pub fn parse_gauss_abstract(text: &str) -> Result<KnotDiagram, DiagramError> {
    Ok(parse_code(text)?.without_virtual().build(&BTreeMap::new()))
}

/// Parses a signed Gauss code such as `O1+U2+O3+U1+O2+U3+`.
///
/// Classical crossings need a sign on at least one of their two passes.
/// `V<k>` passes mark virtual crossings; their rotations are chosen to make
/// the result planar. Codes that are not planar as given are rejected.
pub fn parse_gauss(text: &str) -> Result<KnotDiagram, DiagramError> {
    let code = parse_code(text)?;
    let vids = code.virtual_ids();
    if vids.len() > MAX_VIRTUAL_SEARCH {
        return Err(DiagramError::TooManyVirtual(vids.len()));
    }
    for mask in 0u32..(1u32 << vids.len()) {
        let straight: BTreeMap<u32, bool> = vids.iter().enumerate().map(|(i, &id)| (id, mask >> i & 1 == 0)).collect();
        let d = code.build(&straight);
        if is_planar(&d) {
            return Ok(d);
        }
    }
    Err(DiagramError::NotPlanar)
}
