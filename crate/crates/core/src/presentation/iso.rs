use super::FiniteQuandle;

/// Data preserved by every isomorphism: the cycle type of the column
/// permutation `y ↦ y ▷ x`, the number of distinct entries in row `x`, and
/// the length of the v-orbit of `x`.
fn profile(q: &FiniteQuandle, x: u32) -> (Vec<usize>, usize, usize) {
    let n = q.n;
    let mut seen = vec![false; n + 1];
    let mut cycles = Vec::new();
    for start in 1..=n as u32 {
        if seen[start as usize] {
            continue;
        }
        let mut len = 0;
        let mut y = start;
        while !seen[y as usize] {
            seen[y as usize] = true;
            len += 1;
            y = q.op(y, x);
        }
        cycles.push(len);
    }
    cycles.sort_unstable();
    let mut row: Vec<u32> = (1..=n as u32).map(|y| q.op(x, y)).collect();
    row.sort_unstable();
    row.dedup();
    let orbit = match &q.v {
        None => 0,
        Some(_) => {
            let mut len = 1;
            let mut y = q.v_of(x).expect("virtual");
            while y != x {
                y = q.v_of(y).expect("virtual");
                len += 1;
            }
            len
        }
    };
    (cycles, row.len(), orbit)
}

struct Search<'a> {
    a: &'a FiniteQuandle,
    b: &'a FiniteQuandle,
    pa: Vec<(Vec<usize>, usize, usize)>,
    pb: Vec<(Vec<usize>, usize, usize)>,
}

impl Search<'_> {
    /// Sets `phi(x) = y` and everything it forces. Returns false on a
    /// contradiction.
    fn assign(&self, phi: &mut [u32], inv: &mut [u32], x: u32, y: u32) -> bool {
        let mut queue = vec![(x, y)];
        let mut assigned: Vec<u32> = (1..phi.len() as u32).filter(|&i| phi[i as usize] != 0).collect();
        while let Some((x, y)) = queue.pop() {
            match (phi[x as usize], inv[y as usize]) {
                (0, 0) => {}
                (fx, _) if fx == y => continue,
                _ => return false,
            }
            if self.pa[x as usize - 1] != self.pb[y as usize - 1] {
                return false;
            }
            phi[x as usize] = y;
            inv[y as usize] = x;
            assigned.push(x);
            for &u in &assigned {
                let fu = phi[u as usize];
                queue.push((self.a.op(x, u), self.b.op(y, fu)));
                queue.push((self.a.op(u, x), self.b.op(fu, y)));
            }
            if let (Some(vx), Some(vy)) = (self.a.v_of(x), self.b.v_of(y)) {
                queue.push((vx, vy));
            }
        }
        true
    }

    fn run(&self, phi: &mut Vec<u32>, inv: &mut Vec<u32>) -> bool {
        let Some(x) = (1..phi.len() as u32).find(|&x| phi[x as usize] == 0) else {
            return true;
        };
        for y in 1..inv.len() as u32 {
            if inv[y as usize] != 0 {
                continue;
            }
            let (mut p, mut i) = (phi.clone(), inv.clone());
            if self.assign(&mut p, &mut i, x, y) && self.run(&mut p, &mut i) {
                *phi = p;
                *inv = i;
                return true;
            }
        }
        false
    }
}

/// Whether a bijection `φ` with `φ(x ▷ y) = φ(x) ▷ φ(y)` exists, commuting
/// with v when both quandles carry one. A quandle with v is never
/// isomorphic to one without.
pub fn are_isomorphic(a: &FiniteQuandle, b: &FiniteQuandle) -> bool {
    isomorphism(a, b).is_some()
}

/// An isomorphism as `phi[x - 1] = φ(x)`, if one exists.
pub fn isomorphism(a: &FiniteQuandle, b: &FiniteQuandle) -> Option<Vec<u32>> {
    if a.n != b.n || a.v.is_some() != b.v.is_some() {
        return None;
    }
    let s = Search {
        a,
        b,
        pa: (1..=a.n as u32).map(|x| profile(a, x)).collect(),
        pb: (1..=b.n as u32).map(|x| profile(b, x)).collect(),
    };
    let mut ka = s.pa.clone();
    let mut kb = s.pb.clone();
    ka.sort();
    kb.sort();
    if ka != kb {
        return None;
    }
    let mut phi = vec![0; a.n + 1];
    let mut inv = vec![0; a.n + 1];
    s.run(&mut phi, &mut inv).then(|| phi[1..].to_vec())
}
