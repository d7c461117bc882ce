use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;
use quandle_flag::flag::univariate::{divides, is_symmetric, primitive, strip_t};
use quandle_flag::flag::{
    alexander_from_basis, determinant, flag_invariant, minors, poly_to_dense, specialize, FlagReport, PolyMatrix,
    RelationConvention,
};
use quandle_flag::groebner::ideal_equal;
use quandle_flag::polyring::{MonomialOrder, Polynomial, Var};
use quandle_flag::table::{KnotEntry, KnotTable};

fn ord() -> MonomialOrder {
    MonomialOrder::default()
}

fn p(s: &str) -> Polynomial {
    Polynomial::parse(s, ord()).unwrap()
}

/// Leibniz expansion over all permutations.
fn leibniz(m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    let mut total = Polynomial::zero(ord());
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        let mut term = Polynomial::one(ord());
        for (r, &c) in perm.iter().enumerate() {
            term = &term * &m[r][c];
        }
        total = if inversions % 2 == 0 { &total + &term } else { &total - &term };
        // next permutation in lexicographic order
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else { break };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    total
}

fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

fn key_set(polys: impl IntoIterator<Item = Polynomial>) -> BTreeSet<String> {
    polys.into_iter().map(|g| g.normalize_sign().to_string()).collect()
}

fn classical() -> Vec<KnotEntry> {
    KnotTable::bundled().prime_classical().cloned().collect()
}

#[test]
fn alexander_and_determinant_agree_with_table_data() {
    for k in classical() {
        let d = k.diagram().unwrap();
        let inv = flag_invariant(&d, 1, ord(), RelationConvention::default());
        let delta = alexander_from_basis(inv.rational.elements());
        let theirs = primitive(&strip_t(&poly_to_dense(&p(k.alexander.as_ref().unwrap()))));
        assert_eq!(delta, theirs, "{}", k.name);
        assert_eq!(determinant(&d).unwrap(), BigInt::from(k.determinant.unwrap()), "{}", k.name);
        assert!(is_symmetric(&delta), "{}", k.name);
        // the ℤ basis specializes the same way
        for g in inv.integer.elements() {
            let s = specialize(g);
            assert!(s.is_empty() || divides(&delta, &s), "{} {g}", k.name);
        }
    }
}

// Both conventions agree on every classical knot; the default is pinned by
// the virtual 4.99 row.
#[test]
fn conventions_agree_on_classical_knots() {
    for k in classical() {
        let d = k.diagram().unwrap();
        let a = flag_invariant(&d, 1, ord(), RelationConvention::RightUnder);
        let b = flag_invariant(&d, 1, ord(), RelationConvention::LeftUnder);
        assert!(ideal_equal(&a.rational, &b.rational).unwrap(), "{}", k.name);
    }
    let v = KnotTable::bundled().get("4.99").unwrap().diagram().unwrap();
    let a = flag_invariant(&v, 1, ord(), RelationConvention::RightUnder);
    let b = flag_invariant(&v, 1, ord(), RelationConvention::LeftUnder);
    assert!(!ideal_equal(&a.rational, &b.rational).unwrap());
}

#[test]
fn higher_ideals_are_trivial_on_small_knots() {
    for name in ["3_1", "4_1", "5_1"] {
        let d = KnotTable::bundled().get(name).unwrap().diagram().unwrap();
        for k in [2, 3] {
            let inv = flag_invariant(&d, k, ord(), RelationConvention::default());
            assert!(inv.rational.is_trivial(), "{name} k={k}");
        }
        let zero = flag_invariant(&d, 0, ord(), RelationConvention::default());
        assert!(!zero.rational.is_trivial(), "{name}");
    }
}

#[test]
fn report_json_fields() {
    let d = KnotTable::bundled().get("5_1").unwrap().diagram().unwrap();
    let r = FlagReport::new(&d, 1, ord(), RelationConvention::default());
    assert_eq!(r.cardinality, 7);
    assert!(r.basis.contains(&"s^-2 - s^-1 + t^-1 + t + 1".to_string()), "{:?}", r.basis);
    let j = serde_json::to_value(&r).unwrap();
    for field in ["name", "k", "order", "basis", "cardinality", "alexander", "determinant"] {
        assert!(j.get(field).is_some(), "{field}");
    }
    assert_eq!(j["determinant"], "5");
}

fn entry() -> impl Strategy<Value = Polynomial> {
    prop_oneof![
        Just(p("0")),
        Just(p("0")),
        Just(p("1")),
        Just(p("-1")),
        Just(Polynomial::var(Var::T, ord())),
        Just(Polynomial::var(Var::S, ord())),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn minors_match_leibniz(cells in prop::collection::vec(entry(), 16)) {
        let rows: Vec<Vec<Polynomial>> = cells.chunks(4).map(|c| c.to_vec()).collect();
        let m = PolyMatrix::new(rows.clone(), ord());
        let got = key_set(minors(&m, 3).unwrap());
        let mut want = Vec::new();
        for rs in choose(4, 3) {
            for cs in choose(4, 3) {
                let sub: Vec<Vec<Polynomial>> = rs.iter().map(|&r| cs.iter().map(|&c| rows[r][c].clone()).collect()).collect();
                let det = leibniz(&sub);
                if !det.is_zero() {
                    want.push(det);
                }
            }
        }
        prop_assert_eq!(got, key_set(want));
    }

    #[test]
    fn flag_is_invariant_under_crossing_reordering(idx in 0usize..35, shift in 0usize..8) {
        // The order in which crossings are listed is irrelevant.
        let knots = classical();
        let k = &knots[idx % knots.len()];
        let d = k.diagram().unwrap();
        let mut crossings = d.crossings.clone();
        let len = crossings.len();
        crossings.rotate_left(shift % len);
        let e = quandle_flag::diagram::KnotDiagram::from_crossings(crossings, 0).unwrap();
        let a = flag_invariant(&d, 1, ord(), RelationConvention::default());
        let b = flag_invariant(&e, 1, ord(), RelationConvention::default());
        prop_assert_eq!(a.rational, b.rational);
        prop_assert_eq!(a.integer, b.integer);
    }
}
