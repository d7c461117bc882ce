//! Acceptance gate. Runs without the libtest harness so that every
//! criterion prints exactly one line; blocking failures make the process
//! exit non-zero.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quandle_flag::diagram::{planarize_gauss, KnotDiagram};
use quandle_flag::flag::univariate::{divides, is_symmetric};
use quandle_flag::flag::{alexander_from_basis, determinant, flag_invariant, specialize, RelationConvention};
use quandle_flag::groebner::{ideal_equal, is_strong_groebner, strong_groebner, strong_reduce, Ideal};
use quandle_flag::polyring::{Monomial, MonomialOrder, Polynomial};
use quandle_flag::presentation::{
    are_isomorphic, knot_presentation, AxiomSet, Budget, FiniteQuandle, PresentationMatrix, Relation, Strategy,
};
use quandle_flag::table::{
    regress_flag, regress_quotients, FlagExpectations, KnotTable, QuotientExpectations, Status, VIRTUAL_3_7_JSON,
};

struct Outcome {
    pass: bool,
    blocking: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { pass: true, blocking: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { pass: false, blocking: true, detail: detail.into() }
}

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    if ok {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn ord() -> MonomialOrder {
    MonomialOrder::default()
}

fn p(s: &str) -> Polynomial {
    Polynomial::parse(s, ord()).unwrap()
}

fn diagram(table: &KnotTable, name: &str) -> KnotDiagram {
    table.get(name).unwrap_or_else(|| panic!("{name} missing from the knot table")).diagram().unwrap()
}

fn flag1(d: &KnotDiagram) -> quandle_flag::flag::FlagInvariant {
    flag_invariant(d, 1, ord(), RelationConvention::default())
}

fn criterion_1(table: &KnotTable) -> Outcome {
    let mut exp = FlagExpectations::bundled();
    exp.entries.retain(|e| table.get(&e.name).is_some_and(|k| k.table_crossings().is_some()));
    let start = Instant::now();
    let report = regress_flag(table, &exp, RelationConvention::default()).unwrap();
    let elapsed = start.elapsed();
    let matched = report.entries.iter().filter(|e| e.status == Status::Match).count();
    let ideal_only: Vec<&str> =
        report.entries.iter().filter(|e| e.status == Status::IdealMatchOnly).map(|e| e.name.as_str()).collect();
    let sizes_ok = report.entries.iter().all(|e| e.size == Some(e.expected_size) && [4, 7].contains(&e.expected_size));
    let bad: Vec<&str> = report
        .entries
        .iter()
        .filter(|e| !matches!(e.status, Status::Match | Status::IdealMatchOnly))
        .map(|e| e.name.as_str())
        .collect();
    let mut detail = format!("{matched}/{} exact set matches in {elapsed:.2?}", report.entries.len());
    if !ideal_only.is_empty() {
        detail.push_str(&format!("; ideal-match-only: {ideal_only:?}"));
    }
    if !bad.is_empty() {
        detail.push_str(&format!("; mismatches: {bad:?}"));
    }
    check(
        report.entries.len() == 35 && bad.is_empty() && sizes_ok && elapsed < Duration::from_secs(300),
        detail,
    )
}

fn criterion_2(table: &KnotTable) -> Outcome {
    let v = flag1(&diagram(table, "4.99"));
    let trefoil = flag1(&diagram(table, "3_1"));
    let mut got: Vec<String> = v.rational.elements().iter().map(|g| g.primitive_part().to_string()).collect();
    got.sort();
    let mut want: Vec<String> =
        ["s^-1 - 2", "t^-1 - 2", "2s - 1", "2t - 1"].iter().map(|s| p(s).primitive_part().to_string()).collect();
    want.sort();
    let separated = !ideal_equal(&v.rational, &trefoil.rational).unwrap();
    check(got == want && separated, format!("FLAG_1(4.99) = {got:?}; differs from FLAG_1(3_1): {separated}"))
}

fn criterion_3() -> Outcome {
    let rels = [Relation::short(2, 3, 4), Relation::short(2, 4, 1), Relation::short(3, 1, 4), Relation::short(3, 2, 1)];
    let expected = FiniteQuandle::new(
        vec![
            vec![1, 3, 5, 2, 4],
            vec![5, 2, 4, 1, 3],
            vec![4, 1, 3, 5, 2],
            vec![3, 5, 2, 4, 1],
            vec![2, 4, 1, 3, 5],
        ],
        None,
    )
    .unwrap();
    let start = Instant::now();
    let r = PresentationMatrix::from_relations(4, &rels, false).unwrap().complete(
        &AxiomSet::involutory(),
        &Budget::default(),
        Strategy::default(),
    );
    let elapsed = start.elapsed();
    match r.quandle() {
        Some(q) => check(
            q.n == 5 && are_isomorphic(q, &expected),
            format!("{} elements, isomorphic to the published table: {} ({elapsed:.2?})", q.n, are_isomorphic(q, &expected)),
        ),
        None => fail("budget exceeded"),
    }
}

fn criterion_4(table: &KnotTable) -> Outcome {
    let report = regress_quotients(table, &QuotientExpectations::bundled(), Budget::default(), Strategy::default()).unwrap();
    let threes: Vec<&str> =
        report.entries.iter().filter(|e| e.size == Some(3)).map(|e| e.name.as_str()).collect();
    let bad: Vec<&str> =
        report.entries.iter().filter(|e| e.status != Status::Match).map(|e| e.name.as_str()).collect();
    check(
        bad.is_empty() && report.entries.len() == 14,
        format!("3-element: {threes:?}; others trivial; failures: {bad:?}"),
    )
}

fn criterion_5(table: &KnotTable) -> Outcome {
    let axioms: AxiomSet = "involutory,abelian".parse().unwrap();
    let mut bad = Vec::new();
    let mut n = 0;
    for k in table.knots.iter().filter(|k| k.table_crossings().is_some_and(|c| c <= 7)) {
        let d = k.diagram().unwrap();
        let q = knot_presentation(&d, false).complete(&axioms, &Budget::default(), Strategy::default());
        let size = q.quandle().map(|q| q.n);
        let det = determinant(&d).ok();
        if size.map(|s| s.to_string()) != det.as_ref().map(|d| d.to_string()) {
            bad.push(format!("{}: {size:?} vs {det:?}", k.name));
        }
        n += 1;
    }
    check(bad.is_empty(), format!("{n} knots (unknot included); failures: {bad:?}"))
}

fn criterion_6(table: &KnotTable) -> Outcome {
    let mut bad = Vec::new();
    for k in table.prime_classical() {
        let inv = flag1(&k.diagram().unwrap());
        let delta = alexander_from_basis(inv.rational.elements());
        let multiples = inv.rational.elements().iter().all(|g| {
            let s = specialize(g);
            s.is_empty() || divides(&delta, &s)
        });
        if !multiples || !is_symmetric(&delta) {
            bad.push(k.name.clone());
        }
    }
    let v = alexander_from_basis(flag1(&diagram(table, "4.99")).rational.elements());
    let v_ok = v == [(-1).into(), 2.into()] && !is_symmetric(&v);
    check(
        bad.is_empty() && v_ok,
        format!("35 classical: failures {bad:?}; 4.99 gives 2t - 1 and is asymmetric: {v_ok}"),
    )
}

fn criterion_7(table: &KnotTable) -> Outcome {
    let a = flag1(&diagram(table, "3_1"));
    let b = flag1(&diagram(table, "3_1+R1"));
    let eq = ideal_equal(&a.rational, &b.rational).unwrap() && ideal_equal(&a.integer, &b.integer).unwrap();
    check(eq, format!("3-crossing and 4-crossing trefoil ideals equal: {eq}"))
}

fn random_poly(rng: &mut ChaCha8Rng) -> Polynomial {
    let terms = rng.gen_range(1..=4);
    let mut out = Vec::new();
    for _ in 0..terms {
        let c: i64 = rng.gen_range(-5..=5);
        let mut e = [0u32; 4];
        for _ in 0..rng.gen_range(0..=3) {
            e[rng.gen_range(0..4)] += 1;
        }
        out.push((c, Monomial(e)));
    }
    Polynomial::from_terms(out, ord())
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = 0;
    let mut ideals = 0;
    while ideals < 200 {
        let n = rng.gen_range(1..=4);
        let gens: Vec<Polynomial> = (0..n).map(|_| random_poly(&mut rng)).filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            continue;
        }
        ideals += 1;
        let canon = strong_groebner(&Ideal::new(gens.clone(), ord())).canonicalize();
        let mut shuffled = gens.clone();
        shuffled.shuffle(&mut rng);
        let again = strong_groebner(&Ideal::new(shuffled, ord())).canonicalize();
        let ok = gens.iter().all(|g| strong_reduce(g, canon.elements()).is_zero())
            && is_strong_groebner(canon.elements())
            && canon.canonicalize() == canon
            && again == canon;
        if !ok {
            failures += 1;
        }
    }
    check(failures == 0, format!("{ideals} random ideals, {failures} failures"))
}

fn gauss_codes(n: usize) -> Vec<String> {
    fn words(w: &mut Vec<usize>, count: &mut [usize], next: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if w.len() == 2 * n {
            out.push(w.clone());
            return;
        }
        for c in 1..=next.min(n) {
            if count[c] < 2 {
                count[c] += 1;
                w.push(c);
                words(w, count, if c == next { next + 1 } else { next }, n, out);
                w.pop();
                count[c] -= 1;
            }
        }
    }
    let mut ws = Vec::new();
    words(&mut Vec::new(), &mut vec![0; n + 2], 1, n, &mut ws);
    let mut out = Vec::new();
    for w in ws {
        for over_first in 0..1u32 << n {
            for signs in 0..1u32 << n {
                let mut seen = vec![false; n + 1];
                let mut code = String::new();
                for &c in &w {
                    let first = !std::mem::replace(&mut seen[c], true);
                    let over = (over_first >> (c - 1) & 1 == 1) == first;
                    let sign = if signs >> (c - 1) & 1 == 1 { '+' } else { '-' };
                    code.push_str(&format!("{}{c}{sign}", if over { 'O' } else { 'U' }));
                }
                out.push(code);
            }
        }
    }
    out
}

// Non-blocking: the published diagrams of the virtual knots are not bundled.
fn criterion_9(table: &KnotTable) -> Outcome {
    let axioms: AxiomSet = "involutory,anti-abelian".parse().unwrap();
    let data: serde_json::Value = serde_json::from_str(VIRTUAL_3_7_JSON).unwrap();
    let published: FiniteQuandle = serde_json::from_value(data["quandle"].clone()).unwrap();
    let published_ok = FiniteQuandle::new(published.table.clone(), published.v.clone()).is_ok()
        && published.verify_axioms(&axioms);
    let three = FiniteQuandle::core_cyclic(3).with_v(vec![2, 1, 3]).unwrap();
    let complete = |d: &KnotDiagram| {
        knot_presentation(d, true).complete(&axioms, &Budget::default(), Strategy::default()).quandle().cloned()
    };
    let reconstructed = complete(&diagram(table, "3_7")).is_some_and(|q| are_isomorphic(&q, &published));
    // Every 3-crossing virtual knot has a diagram among these codes.
    let (mut threes, mut big, mut other) = (0, 0, Vec::new());
    for code in gauss_codes(3) {
        let d = planarize_gauss(&code).unwrap();
        if d.virtual_count() == 0 {
            continue;
        }
        match complete(&d) {
            Some(q) if are_isomorphic(&q, &three) => threes += 1,
            Some(q) if are_isomorphic(&q, &published) => big += 1,
            _ => other.push(code),
        }
    }
    let ok = published_ok && reconstructed && big > 0 && other.is_empty();
    Outcome {
        pass: ok,
        blocking: false,
        detail: format!(
            "published 27-element table valid after one correction: {published_ok}; 3_7 code reproduces it: {reconstructed}; \
             3-crossing non-planar codes: {threes} give the 3-element table, {big} the 27-element one, {} neither; \
             4-crossing knots not checked (no diagrams)",
            other.len()
        ),
    }
}

// Non-blocking: both 4-quandles are expected to be infinite (the 4-fold
// branched covers are connected sums), so enumeration cannot finish.
fn criterion_10(table: &KnotTable) -> Outcome {
    let axioms = AxiomSet::quandle().with_n_quandle(4).unwrap();
    let budget = Budget { max_generators: 200, max_rounds: None };
    let run = |name: &str| {
        let start = Instant::now();
        let r = knot_presentation(&diagram(table, name), false).complete(&axioms, &budget, Strategy::Diagonal);
        (r, start.elapsed())
    };
    let (square, ts) = run("square");
    let (granny, tg) = run("granny");
    match (square.quandle(), granny.quandle()) {
        (Some(a), Some(b)) => {
            let iso = are_isomorphic(a, b);
            Outcome {
                pass: !iso,
                blocking: false,
                detail: format!("square {} elements, granny {} elements, isomorphic: {iso}", a.n, b.n),
            }
        }
        _ => Outcome {
            pass: false,
            blocking: false,
            detail: format!(
                "budget of {} generators exceeded (square {} in {ts:.1?}, granny {} in {tg:.1?})",
                budget.max_generators,
                square.quandle().map_or("incomplete".to_string(), |q| format!("{} elements", q.n)),
                granny.quandle().map_or("incomplete".to_string(), |q| format!("{} elements", q.n)),
            ),
        },
    }
}

fn main() -> ExitCode {
    let table = KnotTable::bundled();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("FLAG_1 classical table", Box::new(|| criterion_1(&table))),
        ("virtual separation 4.99 vs 3_1", Box::new(|| criterion_2(&table))),
        ("figure-eight involutory quandle", Box::new(criterion_3)),
        ("anti-abelian involutory quotients", Box::new(|| criterion_4(&table))),
        ("determinant law", Box::new(|| criterion_5(&table))),
        ("Alexander specialization", Box::new(|| criterion_6(&table))),
        ("Reidemeister I invariance", Box::new(|| criterion_7(&table))),
        ("Groebner soundness", Box::new(criterion_8)),
        ("virtual quotient tables", Box::new(|| criterion_9(&table))),
        ("square/granny 4-quandles", Box::new(|| criterion_10(&table))),
    ];
    let mut blocking_failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        let verdict = match (o.pass, o.blocking) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "FAIL (non-blocking)",
        };
        println!("criterion {:>2} {verdict}: {name}: {}", i + 1, o.detail);
        if !o.pass && o.blocking {
            blocking_failures += 1;
        }
    }
    if blocking_failures > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
