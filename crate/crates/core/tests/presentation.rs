use std::collections::BTreeSet;

use proptest::prelude::*;
use quandle_flag::diagram::{crossing_relations, label_arcs, ArcMode, KnotDiagram};
use quandle_flag::presentation::{
    are_isomorphic, isomorphism, knot_presentation, AxiomSet, Budget, CompletionResult, FiniteQuandle, Relation,
    Strategy, Word,
};
use quandle_flag::table::{KnotEntry, KnotTable, VIRTUAL_3_7_JSON};

fn permutations(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n);
            out.push(q);
        }
    }
    out
}

/// Tries every bijection.
fn brute_isomorphic(a: &FiniteQuandle, b: &FiniteQuandle) -> bool {
    if a.n != b.n || a.v.is_some() != b.v.is_some() {
        return false;
    }
    let e = 1..=a.n as u32;
    permutations(a.n as u32).into_iter().any(|p| {
        let f = |x: u32| p[x as usize - 1];
        e.clone().all(|x| e.clone().all(|y| f(a.op(x, y)) == b.op(f(x), f(y))))
            && e.clone().all(|x| a.v_of(x).map(f) == b.v_of(f(x)))
    })
}

fn relabel(q: &FiniteQuandle, p: &[u32]) -> FiniteQuandle {
    let f = |x: u32| p[x as usize - 1];
    let mut table = vec![vec![0; q.n]; q.n];
    let mut v = q.v.as_ref().map(|_| vec![0; q.n]);
    for x in 1..=q.n as u32 {
        for y in 1..=q.n as u32 {
            table[f(x) as usize - 1][f(y) as usize - 1] = f(q.op(x, y));
        }
        if let Some(v) = v.as_mut() {
            v[f(x) as usize - 1] = f(q.v_of(x).unwrap());
        }
    }
    FiniteQuandle::new(table, v).unwrap()
}

fn small_quandles() -> Vec<FiniteQuandle> {
    let mut out = vec![FiniteQuandle::trivial(3), FiniteQuandle::trivial(4), FiniteQuandle::core_cyclic(4)];
    for (n, t) in [(3, 2), (4, 3), (5, 2), (5, 3), (5, 4)] {
        out.push(FiniteQuandle::alexander(n, t).unwrap());
    }
    let three = FiniteQuandle::core_cyclic(3);
    out.push(three.clone().with_v(vec![2, 1, 3]).unwrap());
    out.push(three.clone().with_v(vec![1, 3, 2]).unwrap());
    out.push(three.with_v(vec![2, 3, 1]).unwrap());
    out.push(FiniteQuandle::trivial(3).with_v(vec![2, 1, 3]).unwrap());
    out
}

fn knots_up_to(c: u32) -> Vec<KnotEntry> {
    KnotTable::bundled().prime_classical().filter(|k| k.table_crossings().unwrap() <= c).cloned().collect()
}

fn complete(d: &KnotDiagram, axioms: &str, is_virtual: bool, strategy: Strategy) -> CompletionResult {
    knot_presentation(d, is_virtual).complete(&axioms.parse().unwrap(), &Budget::default(), strategy)
}

fn eval(w: &Word, q: &FiniteQuandle, g: &dyn Fn(usize) -> u32) -> u32 {
    match w {
        Word::Gen(i) => g(*i),
        Word::Op(a, b) => q.op(eval(a, q, g), eval(b, q, g)),
        Word::Dual(a, b) => q.dual(eval(a, q, g), eval(b, q, g)),
        Word::V(a) => q.v_of(eval(a, q, g)).unwrap(),
    }
}

/// Closure of the arc images under both operations and v.
fn generated(q: &FiniteQuandle, gens: &[u32]) -> usize {
    let mut seen: BTreeSet<u32> = gens.iter().copied().collect();
    loop {
        let now: Vec<u32> = seen.iter().copied().collect();
        for &x in &now {
            for &y in &now {
                seen.insert(q.op(x, y));
                seen.insert(q.dual(x, y));
            }
            if let Some(v) = q.v_of(x) {
                seen.insert(v);
            }
        }
        if seen.len() == now.len() {
            return seen.len();
        }
    }
}

#[test]
fn isomorphism_agrees_with_brute_force() {
    let qs = small_quandles();
    for a in &qs {
        for b in &qs {
            assert_eq!(are_isomorphic(a, b), brute_isomorphic(a, b), "{a}\n{b}");
        }
    }
}

// Brute force over all 120 bijections decides this pair.
#[test]
fn alexander_quandles_of_order_five() {
    let a = FiniteQuandle::alexander(5, 2).unwrap();
    let b = FiniteQuandle::alexander(5, 3).unwrap();
    assert!(!brute_isomorphic(&a, &b));
    assert!(!are_isomorphic(&a, &b));
    assert!(a.is_latin() && b.is_latin());
}

#[test]
fn completion_is_sound_and_surjective() {
    for k in knots_up_to(7) {
        let d = k.diagram().unwrap();
        let labels = label_arcs(&d, ArcMode::ClassicalArcs);
        let relations: Vec<Relation> = crossing_relations(&d, &labels);
        for axioms in ["involutory", "involutory,abelian", "involutory,anti-abelian", "involutory,left-distributive"] {
            let r = complete(&d, axioms, false, Strategy::default());
            let CompletionResult::Completed { quandle, generator_map, .. } = r else {
                panic!("{} {axioms}: budget", k.name)
            };
            assert!(quandle.verify_axioms(&axioms.parse().unwrap()), "{} {axioms}", k.name);
            let g = |i: usize| generator_map[i - 1];
            for rel in &relations {
                assert_eq!(eval(&rel.lhs, &quandle, &g), eval(&rel.rhs, &quandle, &g), "{} {axioms}", k.name);
            }
            let arcs: Vec<u32> = (1..=labels.n).map(g).collect();
            assert_eq!(generated(&quandle, &arcs), quandle.n, "{} {axioms}", k.name);
        }
    }
}

#[test]
fn strategies_are_confluent() {
    for k in knots_up_to(7) {
        let d = k.diagram().unwrap();
        for axioms in ["involutory", "involutory,anti-abelian"] {
            let tables: Vec<FiniteQuandle> =
                [Strategy::RowMajor, Strategy::ColumnMajor, Strategy::MostConstrainedRow, Strategy::Diagonal]
                    .into_iter()
                    .map(|s| complete(&d, axioms, false, s).quandle().cloned().expect("completes"))
                    .collect();
            for t in &tables[1..] {
                assert!(are_isomorphic(&tables[0], t), "{} {axioms}", k.name);
            }
        }
    }
}

// Independent of the FLAG pipeline: the determinants come from the knot
// table's own data.
#[test]
fn involutory_abelian_quotient_has_determinant_order() {
    for k in knots_up_to(7) {
        let d = k.diagram().unwrap();
        let q = complete(&d, "involutory,abelian", false, Strategy::default());
        assert_eq!(q.quandle().unwrap().n as u64, k.determinant.unwrap(), "{}", k.name);
    }
}

// Orders of the 3-fold and 4-fold branched cover quotients for torus knots.
#[test]
fn n_quandles_of_torus_knots() {
    let table = KnotTable::bundled();
    for (name, n, order) in [("3_1", 3, 4), ("3_1", 4, 6), ("3_1", 5, 12), ("5_1", 3, 20)] {
        let d = table.get(name).unwrap().diagram().unwrap();
        let axioms = AxiomSet::quandle().with_n_quandle(n).unwrap();
        let q = knot_presentation(&d, false).complete(&axioms, &Budget::default(), Strategy::Diagonal);
        let q = q.quandle().unwrap_or_else(|| panic!("{name} n={n}"));
        assert_eq!(q.n, order, "{name} n={n}");
        assert!(q.verify_axioms(&axioms), "{name} n={n}");
    }
}

#[test]
fn virtual_trefoil_quotient() {
    let d = KnotTable::bundled().get("2.1").unwrap().diagram().unwrap();
    let r = complete(&d, "involutory,anti-abelian", true, Strategy::default());
    let q = r.quandle().unwrap();
    let expected = FiniteQuandle::core_cyclic(3).with_v(vec![2, 1, 3]).unwrap();
    assert!(q.verify_axioms(&"involutory,anti-abelian".parse().unwrap()));
    assert!(isomorphism(q, &expected).is_some(), "{q}");
    let classical = complete(&d, "involutory,anti-abelian", false, Strategy::default());
    assert!(classical.quandle().unwrap().v.is_none());
}

#[test]
fn published_virtual_table_is_a_quandle() {
    let data: serde_json::Value = serde_json::from_str(VIRTUAL_3_7_JSON).unwrap();
    let q: FiniteQuandle = serde_json::from_value(data["quandle"].clone()).unwrap();
    let q = FiniteQuandle::new(q.table, q.v).unwrap();
    assert_eq!(q.n, 27);
    assert!(q.verify_axioms(&"involutory,anti-abelian".parse::<AxiomSet>().unwrap()));
    // the entry as printed repeats 1 in column 20
    let mut printed = q.table.clone();
    printed[0][19] = 1;
    assert!(FiniteQuandle::new(printed, q.v.clone()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relabelled_tables_are_isomorphic(idx in 0usize..12, seed in any::<u64>()) {
        let qs = small_quandles();
        let q = &qs[idx % qs.len()];
        let mut p: Vec<u32> = (1..=q.n as u32).collect();
        let mut s = seed;
        for i in (1..p.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            p.swap(i, (s >> 33) as usize % (i + 1));
        }
        let r = relabel(q, &p);
        prop_assert!(are_isomorphic(q, &r));
        let f = isomorphism(q, &r).unwrap();
        for x in 1..=q.n as u32 {
            for y in 1..=q.n as u32 {
                prop_assert_eq!(f[q.op(x, y) as usize - 1], r.op(f[x as usize - 1], f[y as usize - 1]));
            }
        }
    }

    #[test]
    fn axiom_text_round_trips(bits in 0u8..64, n in prop::option::of(3u32..7)) {
        let a = AxiomSet {
            involutory: bits & 1 != 0,
            abelian: bits & 2 != 0,
            anti_abelian: bits & 4 != 0,
            left_distributive: bits & 8 != 0,
            commutative_operator: bits & 16 != 0,
            latin: bits & 32 != 0,
            n_quandle: n,
        };
        prop_assert_eq!(a.to_string().parse::<AxiomSet>().unwrap(), a);
    }
}
