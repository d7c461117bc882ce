//! Planarity of rotation systems and planarization of Gauss codes.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::gauss::{parse_code, GaussCode, Pass, PassKind};
use super::{DiagramError, KnotDiagram, Port, Sign};

/// Euler characteristic test on the 4-valent crossing graph with the
/// rotation given by the slot order: every connected piece must satisfy
/// `V - E + F = 2`.
pub fn is_planar(d: &KnotDiagram) -> bool {
    let n = d.crossings.len();
    if n == 0 {
        return true;
    }
    let ends = d.edge_ends();
    let mut partner: BTreeMap<Port, Port> = BTreeMap::new();
    for &(a, b) in ends.values() {
        partner.insert(a, b);
        partner.insert(b, a);
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for &((a, _), (b, _)) in ends.values() {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra.max(rb)] = ra.min(rb);
    }
    let pieces = (0..n).filter(|&i| find(&mut parent, i) == i).count();
    let mut visited = vec![[false; 4]; n];
    let mut faces = 0;
    for c in 0..n {
        for s in 0..4 {
            if visited[c][s] {
                continue;
            }
            faces += 1;
            let (mut vc, mut vs) = (c, s);
            while !visited[vc][vs] {
                visited[vc][vs] = true;
                let (wc, ws) = partner[&(vc, vs)];
                vc = wc;
                vs = (ws + 1) % 4;
            }
        }
    }
    let (v, e) = (n as i64, 2 * n as i64);
    v - e + faces as i64 == 2 * pieces as i64
}

type Pt = (i64, i64);

fn cross(o: Pt, a: Pt, b: Pt) -> i128 {
    (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
}

fn dir_cross(u: Pt, w: Pt) -> i128 {
    u.0 as i128 * w.1 as i128 - u.1 as i128 * w.0 as i128
}

/// Position along an edge: segment index, then the exact fraction `num/den`.
#[derive(Clone, Copy, Debug)]
struct At {
    seg: usize,
    num: i128,
    den: i128,
}

impl At {
    fn key_cmp(&self, o: &At) -> std::cmp::Ordering {
        self.seg.cmp(&o.seg).then((self.num * o.den).cmp(&(o.num * self.den)))
    }
}

struct Hit {
    edge: [usize; 2],
    at: [At; 2],
    dir: [Pt; 2],
}

/// Port directions for slots 0..4: south, east, north, west (counterclockwise).
const PORT: [Pt; 4] = [(0, -1), (1, 0), (0, 1), (-1, 0)];

fn slot_of(sign: Sign, kind: PassKind, incoming: bool) -> usize {
    match (kind, sign, incoming) {
        (PassKind::Under, _, true) => 0,
        (PassKind::Under, _, false) => 2,
        (PassKind::Over, Sign::Positive, true) => 3,
        (PassKind::Over, Sign::Positive, false) => 1,
        (PassKind::Over, Sign::Negative, true) => 1,
        (PassKind::Over, Sign::Negative, false) => 3,
        (PassKind::Virtual, _, _) => unreachable!("classical passes only"),
    }
}

const SPAN: i64 = 1 << 20;
const STUB: i64 = 1 << 12;

/// Crossing positions and the bend points of every edge.
#[derive(Clone)]
struct Layout {
    centre: BTreeMap<u32, Pt>,
    bends: Vec<Vec<Pt>>,
}

fn random_point(rng: &mut ChaCha8Rng) -> Pt {
    (rng.gen_range(0..SPAN), rng.gen_range(0..SPAN))
}

fn random_layout(code: &GaussCode, rng: &mut ChaCha8Rng, bends: usize) -> Layout {
    let mut centre = BTreeMap::new();
    for p in &code.passes {
        centre.entry(p.id).or_insert_with(|| random_point(rng));
    }
    let bends = (0..code.passes.len()).map(|_| (0..bends).map(|_| random_point(rng)).collect()).collect();
    Layout { centre, bends }
}

fn mutate(layout: &Layout, rng: &mut ChaCha8Rng) -> Layout {
    let mut l = layout.clone();
    let e = rng.gen_range(0..l.bends.len());
    match rng.gen_range(0..4) {
        0 => {
            let ids: Vec<u32> = l.centre.keys().copied().collect();
            let id = ids[rng.gen_range(0..ids.len())];
            l.centre.insert(id, random_point(rng));
        }
        1 if !l.bends[e].is_empty() => {
            let k = rng.gen_range(0..l.bends[e].len());
            l.bends[e].remove(k);
        }
        2 if !l.bends[e].is_empty() => {
            let k = rng.gen_range(0..l.bends[e].len());
            l.bends[e][k] = random_point(rng);
        }
        _ if l.bends[e].len() < 3 => {
            let k = rng.gen_range(0..=l.bends[e].len());
            l.bends[e].insert(k, random_point(rng));
        }
        _ => {}
    }
    l
}

/// Polyline drawing of a classical Gauss code; transversal edge
/// intersections become virtual crossings. Returns `None` on a degenerate
/// drawing.
fn draw(code: &GaussCode, layout: &Layout) -> Option<(GaussCode, BTreeMap<u32, bool>)> {
    let n = code.passes.len();
    let centre = &layout.centre;
    let port = |p: &Pass, incoming: bool| -> (Pt, Pt) {
        let c = centre[&p.id];
        let d = PORT[slot_of(code.signs[&p.id], p.kind, incoming)];
        (c, (c.0 + STUB * d.0, c.1 + STUB * d.1))
    };
    let mut lines: Vec<Vec<Pt>> = Vec::with_capacity(n);
    for i in 0..n {
        let (from, to) = (&code.passes[i], &code.passes[(i + 1) % n]);
        let (c0, s0) = port(from, false);
        let (c1, s1) = port(to, true);
        let mut pts = vec![c0, s0];
        pts.extend(&layout.bends[i]);
        pts.extend([s1, c1]);
        lines.push(pts);
    }
    let centres: Vec<Pt> = centre.values().copied().collect();
    let segs: Vec<(usize, usize, Pt, Pt)> = lines
        .iter()
        .enumerate()
        .flat_map(|(e, pts)| pts.windows(2).enumerate().map(move |(k, w)| (e, k, w[0], w[1])))
        .collect();
    let mut hits = Vec::new();
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let (e, k, p, q) = segs[i];
            let (f, l, r, s) = segs[j];
            let shared = [p, q].iter().find(|x| **x == r || **x == s).copied();
            if let Some(x) = shared {
                let designed = (e == f && k.abs_diff(l) == 1) || centres.contains(&x);
                if !designed {
                    return None;
                }
                let u = if x == p { (q.0 - p.0, q.1 - p.1) } else { (p.0 - q.0, p.1 - q.1) };
                let w = if x == r { (s.0 - r.0, s.1 - r.1) } else { (r.0 - s.0, r.1 - s.1) };
                if dir_cross(u, w) == 0 && u.0 as i128 * w.0 as i128 + u.1 as i128 * w.1 as i128 > 0 {
                    return None;
                }
                continue;
            }
            let (d1, d2) = (cross(p, q, r), cross(p, q, s));
            let (d3, d4) = (cross(r, s, p), cross(r, s, q));
            if d1 == 0 || d2 == 0 || d3 == 0 || d4 == 0 {
                let touching = (d1 == 0 && on_segment(p, q, r))
                    || (d2 == 0 && on_segment(p, q, s))
                    || (d3 == 0 && on_segment(r, s, p))
                    || (d4 == 0 && on_segment(r, s, q));
                if touching {
                    return None;
                }
                continue;
            }
            if (d1 > 0) == (d2 > 0) || (d3 > 0) == (d4 > 0) {
                continue;
            }
            let u = (q.0 - p.0, q.1 - p.1);
            let w = (s.0 - r.0, s.1 - r.1);
            let den = dir_cross(u, w);
            let rp = (r.0 - p.0, r.1 - p.1);
            let (t_num, u_num) = (dir_cross(rp, w), dir_cross(rp, u));
            let norm = |num: i128, den: i128| if den < 0 { (-num, -den) } else { (num, den) };
            let (tn, td) = norm(t_num, den);
            let (un, ud) = norm(u_num, den);
            hits.push(Hit {
                edge: [e, f],
                at: [At { seg: k, num: tn, den: td }, At { seg: l, num: un, den: ud }],
                dir: [u, w],
            });
        }
    }
    let mut along: Vec<Vec<(At, usize)>> = vec![Vec::new(); n];
    for (h, hit) in hits.iter().enumerate() {
        for side in 0..2 {
            along[hit.edge[side]].push((hit.at[side], h));
        }
    }
    for v in &mut along {
        v.sort_by(|a, b| a.0.key_cmp(&b.0));
    }
    let mut passes = Vec::new();
    let mut vid: BTreeMap<usize, (u32, Pt)> = BTreeMap::new();
    let mut rotation: BTreeMap<u32, bool> = BTreeMap::new();
    for i in 0..n {
        passes.push(code.passes[i]);
        for (at, h) in &along[i] {
            let hit = &hits[*h];
            let side = if hit.edge[0] == i && hit.at[0].key_cmp(at).is_eq() { 0 } else { 1 };
            let next = vid.len() as u32 + 1;
            let id = match vid.get(h) {
                None => {
                    vid.insert(*h, (next, hit.dir[side]));
                    next
                }
                Some(&(id, u)) => {
                    rotation.insert(id, dir_cross(u, hit.dir[side]) > 0);
                    id
                }
            };
            passes.push(Pass { kind: PassKind::Virtual, id });
        }
    }
    Some((GaussCode { passes, signs: code.signs.clone() }, rotation))
}

const SEED: u64 = 0x9e37_79b9_7f4a_7c15;
const STARTS: usize = 16;
const STEPS: usize = 400;

/// Builds a virtual diagram for a classical-only Gauss code that may not be
/// realizable in the plane.
///
/// The code is drawn with crossings at pseudo-random points and edges as
/// polylines; every transversal intersection of two edges becomes a virtual
/// crossing. A seeded local search moves crossings and bend points while the
/// virtual crossing count does not grow, and the best drawing over several
/// restarts is kept, so the output is deterministic. `V`
/// passes in the input are discarded. Planar codes come back unchanged.
pub fn planarize_gauss(text: &str) -> Result<KnotDiagram, DiagramError> {
    let code = parse_code(text)?.without_virtual();
    let plain = code.build(&BTreeMap::new());
    if is_planar(&plain) {
        return Ok(plain);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut best: Option<KnotDiagram> = None;
    for start in 0..STARTS {
        let mut layout = random_layout(&code, &mut rng, start % 2);
        let mut current = draw(&code, &layout).map(|(c, r)| c.build(&r));
        for _ in 0..STEPS {
            let candidate = mutate(&layout, &mut rng);
            let Some((drawn, rotation)) = draw(&code, &candidate) else { continue };
            let d = drawn.build(&rotation);
            if current.as_ref().map_or(true, |c| d.virtual_count() <= c.virtual_count()) {
                layout = candidate;
                current = Some(d);
            }
        }
        if let Some(d) = current {
            debug_assert!(is_planar(&d));
            if is_planar(&d) && best.as_ref().map_or(true, |b| d.virtual_count() < b.virtual_count()) {
                best = Some(d);
            }
        }
    }
    best.ok_or(DiagramError::NotPlanar)
}

fn on_segment(p: Pt, q: Pt, x: Pt) -> bool {
    x.0 >= p.0.min(q.0) && x.0 <= p.0.max(q.0) && x.1 >= p.1.min(q.1) && x.1 <= p.1.max(q.1)
}
