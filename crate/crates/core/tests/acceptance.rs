//! Acceptance suite: one PASS/FAIL line per criterion; exits non-zero on any
//! failure.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use lietruss::affine::AffineStructure;
use lietruss::group::AbelianGroup;
use lietruss::heap::FiniteHeap;
use lietruss::lie::{
    affebra_to_ternary, bracket_from_truss, derivations_lie_truss, retract_lie_ring,
    strengthen_bracket, ternary_to_affebra, validate_lie_affebra, validate_lie_ring,
    validate_lie_truss, validate_strong_jacobi, LieAffebra, LieBase, LieTernary,
};
use lietruss::search::oracle::{naive_rings, naive_trusses};
use lietruss::search::{
    classify_tables, enumerate_derivations, enumerate_lie_brackets, search_lie_brackets,
    search_rings, search_trusses, SearchKind, SearchSpec,
};
use lietruss::symbolic::{
    eval, eval_normal_form, expand_lie_macro, normalize, parse_identity, prove_identity,
    random_falsify, sample_pool, strengthened_bracket, strong_jacobi_sides, Expr, Interpretation,
    LieMacro, Theory,
};
use lietruss::truss::validate_derivation;
use lietruss::{Derivation, Elem, ReportMode, TrussStructure};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {t:.2?}, limit {limit:?}"))?;
    Ok(t)
}

fn group(orders: &[usize]) -> AbelianGroup {
    AbelianGroup::cyclic_product(orders).unwrap()
}

fn trusses(orders: &[usize]) -> Vec<TrussStructure> {
    search_trusses(&SearchSpec::new(group(orders), SearchKind::Truss))
        .unwrap()
        .labeled
}

fn lie_brackets(orders: &[usize]) -> Vec<LieTernary> {
    enumerate_lie_brackets(&SearchSpec::new(group(orders), SearchKind::LieTruss)).unwrap()
}

fn both_jacobi(l: &LieTernary) -> Result<(), String> {
    let weak = validate_lie_truss(l, ReportMode::First);
    ensure(
        weak.ok,
        format!(
            "Lie truss axiom {} fails on {:?}",
            weak.first_axiom(),
            l.table()
        ),
    )?;
    let strong = validate_strong_jacobi(l, ReportMode::First).map_err(|e| e.to_string())?;
    ensure(strong.ok, format!("strong Jacobi fails on {:?}", l.table()))
}

fn five_vars() -> [Expr; 5] {
    ["a", "b", "c", "d", "e"].map(Expr::var)
}

fn c1_commutator_bracket() -> Outcome {
    let start = Instant::now();
    let (lhs, rhs) = strong_jacobi_sides(&Expr::bracket, five_vars());
    let v = prove_identity(&lhs, &rhs, Theory::FreeTruss).map_err(|e| e.to_string())?;
    ensure(
        v.equal,
        format!("strong Jacobi not equal, diff size {}", v.diff.len()),
    )?;
    ensure(
        v.lhs_nf.coeffs() == v.rhs_nf.coeffs(),
        "normal forms differ",
    )?;
    let t = within(start, Duration::from_secs(5))?;
    for (text, what) in [("{a,b,a} == b", "aa"), ("[{a,b,c}, b, {c,b,a}] == b", "as")] {
        let (l, r) = parse_identity(text).unwrap();
        let v = prove_identity(&l, &r, Theory::FreeTruss).map_err(|e| e.to_string())?;
        ensure(v.equal, format!("{what} not equal"))?;
    }
    Ok(format!(
        "strong Jacobi EQUAL with {} terms in {t:.2?}; aa, as EQUAL",
        v.lhs_nf.coeffs().len()
    ))
}

fn c2_strengthened_bracket() -> Outcome {
    let start = Instant::now();
    let o = Expr::var("o");
    let s = |a, b, c| strengthened_bracket(a, b, c, &o);
    let (lhs, rhs) = strong_jacobi_sides(&s, five_vars());
    let v = prove_identity(&lhs, &rhs, Theory::FreeTruss).map_err(|e| e.to_string())?;
    ensure(v.equal, format!("not equal, diff size {}", v.diff.len()))?;
    let t = within(start, Duration::from_secs(30))?;
    Ok(format!(
        "EQUAL with {} terms in {t:.2?}",
        v.lhs_nf.coeffs().len()
    ))
}

fn c3_brackets_from_trusses() -> Outcome {
    let mut pool = trusses(&[2]);
    ensure(pool.len() == 8, "expected 8 trusses on Z2")?;
    pool.extend(trusses(&[4]));
    pool.extend(trusses(&[2, 2]));
    pool.push(TrussStructure::upper_triangular_f2());
    for t in &pool {
        both_jacobi(&bracket_from_truss(t))?;
    }
    Ok(format!("{} trusses, zero violations", pool.len()))
}

fn c4_affebra_round_trip() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for p in [3, 5] {
        let l = LieAffebra::two_dim_nonabelian(p).map_err(|e| e.to_string())?;
        let t = affebra_to_ternary(&l, false).map_err(|e| e.to_string())?;
        let back = ternary_to_affebra(&t, 0).map_err(|e| e.to_string())?;
        ensure(
            back.table() == l.table(),
            format!("F{p}: round trip at 0 changed the bracket"),
        )?;
        for o in 1..l.size() {
            let at_o = ternary_to_affebra(&t, o).map_err(|e| e.to_string())?;
            let r = validate_lie_affebra(&at_o, ReportMode::First);
            ensure(r.ok, format!("F{p}, o={o}: {}", r.first_axiom()))?;
            checked += 1;
        }
    }
    let t = within(start, Duration::from_secs(60))?;
    Ok(format!(
        "exact at o=0 for F3, F5; {checked} other basepoints valid in {t:.2?}"
    ))
}

fn c5_retract_lie_rings() -> Outcome {
    let mut count = 0;
    for orders in [&[2][..], &[3], &[4]] {
        for l in lie_brackets(orders) {
            for o in 0..l.size() {
                let ring = retract_lie_ring(&l, o).map_err(|e| e.to_string())?;
                let r = validate_lie_ring(&ring, ReportMode::First);
                ensure(
                    r.ok,
                    format!("{:?} at o={o}: {}", l.table(), r.first_axiom()),
                )?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} (bracket, basepoint) pairs on Z2, Z3, Z4"))
}

fn c6_strengthening() -> Outcome {
    let mut count = 0;
    for orders in [&[2][..], &[3], &[4]] {
        for l in lie_brackets(orders) {
            for o in 0..l.size() {
                both_jacobi(&strengthen_bracket(&l, o).map_err(|e| e.to_string())?)?;
                count += 1;
            }
        }
    }
    for orders in [&[2][..], &[3], &[2, 2]] {
        let h = FiniteHeap::cyclic_product(orders).unwrap();
        let trivial = LieTernary::from_fn(LieBase::Heap(h), |_, b, _| b).unwrap();
        for o in 0..trivial.size() {
            let s = strengthen_bracket(&trivial, o).unwrap();
            ensure(
                s.table() == trivial.table(),
                "strengthening the trivial bracket changed it",
            )?;
        }
    }
    Ok(format!(
        "{count} strengthened brackets pass both sweeps; trivial bracket fixed"
    ))
}

fn c7_char2_sentinel() -> Outcome {
    let line = AffineStructure::standard(2, 1).unwrap();
    let constant = LieAffebra::from_fn(line, 0, |_, _| 1).unwrap();
    ensure(
        validate_lie_affebra(&constant, ReportMode::First).ok,
        "constant bracket should be an affebra",
    )?;
    ensure(
        affebra_to_ternary(&constant, false).is_err(),
        "unforced conversion should be rejected",
    )?;
    let forced = affebra_to_ternary(&constant, true).map_err(|e| e.to_string())?;
    let r = validate_lie_truss(&forced, ReportMode::First);
    ensure(
        !r.ok && r.violations[0].axiom_id == "aa",
        "forced conversion should fail aa",
    )?;
    let w = &r.violations[0];
    Ok(format!(
        "expected failure: aa at witness {:?} ({} != {})",
        w.witness, w.lhs, w.rhs
    ))
}

fn class_count(g: &AbelianGroup, tables: Vec<Vec<Elem>>) -> usize {
    classify_tables(g, tables, 2, 1).unwrap().2.len()
}

fn sorted_tables(ts: &[TrussStructure]) -> Vec<Vec<Elem>> {
    let mut v: Vec<Vec<Elem>> = ts.iter().map(|t| t.mul_table().to_vec()).collect();
    v.sort();
    v
}

fn c8_classification() -> Outcome {
    let z2 = group(&[2]);
    let h2 = FiniteHeap::cyclic_product(&[2]).unwrap();
    let tr = search_trusses(&SearchSpec::new(z2.clone(), SearchKind::Truss)).unwrap();
    let rg = search_rings(&SearchSpec::new(z2.clone(), SearchKind::Ring)).unwrap();
    ensure(
        (tr.total(), tr.class_count()) == (8, 5),
        "Z2 trusses should be 8 / 5",
    )?;
    ensure(
        (rg.total(), rg.class_count()) == (2, 2),
        "Z2 rings should be 2 / 2",
    )?;
    let mut naive = naive_trusses(&h2).unwrap();
    naive.sort();
    ensure(
        sorted_tables(&tr.labeled) == naive,
        "Z2 trusses disagree with the naive oracle",
    )?;
    let mut naive = naive_rings(&h2).unwrap();
    naive.sort();
    ensure(
        sorted_tables(&rg.labeled) == naive,
        "Z2 rings disagree with the naive oracle",
    )?;

    let k = group(&[2, 2]);
    let hk = FiniteHeap::cyclic_product(&[2, 2]).unwrap();
    let tr = search_trusses(&SearchSpec::new(k.clone(), SearchKind::Truss)).unwrap();
    let rg = search_rings(&SearchSpec::new(k.clone(), SearchKind::Ring)).unwrap();
    let naive_t = class_count(&k, naive_trusses(&hk).unwrap());
    let naive_r = class_count(&k, naive_rings(&hk).unwrap());
    ensure(
        tr.class_count() == naive_t,
        format!(
            "Z2xZ2 truss classes: structured {} vs naive {naive_t}",
            tr.class_count()
        ),
    )?;
    ensure(
        rg.class_count() == naive_r,
        format!(
            "Z2xZ2 ring classes: structured {} vs naive {naive_r}",
            rg.class_count()
        ),
    )?;
    let flag = |found: usize, quoted: usize| {
        if found == quoted {
            "matches"
        } else {
            "DIFFERS from"
        }
    };
    Ok(format!(
        "Z2 8/5 and 2/2 match oracle; Z2xZ2 truss classes {} {} quoted 23, ring classes {} {} quoted 8",
        tr.class_count(),
        flag(tr.class_count(), 23),
        rg.class_count(),
        flag(rg.class_count(), 8)
    ))
}

fn c9_derivations() -> Outcome {
    let additive = TrussStructure::additive(group(&[4])).unwrap();
    let ders: BTreeSet<Derivation> = enumerate_derivations(&additive)
        .unwrap()
        .into_iter()
        .collect();
    let expected: BTreeSet<Derivation> = (0..4)
        .map(|g| Derivation((0..4).map(|x| g * x % 4).collect()))
        .collect();
    ensure(ders == expected, format!("got {ders:?}"))?;
    let der = derivations_lie_truss(&additive).map_err(|e| e.to_string())?;
    both_jacobi(&der.lie)?;
    let mut checked = 0;
    for orders in [&[2][..], &[3], &[4], &[2, 2]] {
        for t in trusses(orders) {
            let id: Vec<Elem> = (0..t.size()).collect();
            ensure(
                validate_derivation(&id, &t, ReportMode::First).unwrap().ok,
                format!("identity is not a derivation of {:?}", t.mul_table()),
            )?;
            checked += 1;
        }
    }
    Ok(format!(
        "4 derivations x -> gx, closed Lie truss; identity derives all {checked} trusses"
    ))
}

fn random_heap(rng: &mut StdRng) -> FiniteHeap {
    const SHAPES: [&[usize]; 10] = [
        &[2],
        &[3],
        &[4],
        &[5],
        &[6],
        &[7],
        &[8],
        &[2, 2],
        &[2, 4],
        &[2, 2, 2],
    ];
    FiniteHeap::cyclic_product(SHAPES[rng.gen_range(0..SHAPES.len())]).unwrap()
}

fn c10_normalization_soundness() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2024);
    let pool = sample_pool();
    for i in 0..1000 {
        let ring = i % 2 == 1;
        let e = common::random_expr(&mut rng, 5, ring);
        let env: BTreeMap<String, Elem>;
        let (nf, direct, via_nf);
        if ring {
            let t = &pool[rng.gen_range(0..pool.len())];
            env = common::VARS
                .iter()
                .map(|v| (v.to_string(), rng.gen_range(0..t.size())))
                .collect();
            let m = Interpretation::truss(t);
            let expanded = expand_lie_macro(&e, LieMacro::TrussCommutator).unwrap();
            nf = normalize(&expanded, Theory::FreeTruss).unwrap();
            direct = eval(&e, &m, &env).unwrap();
            via_nf = eval_normal_form(&nf, &m, &env).unwrap();
        } else {
            let h = random_heap(&mut rng);
            env = common::VARS
                .iter()
                .map(|v| (v.to_string(), rng.gen_range(0..h.size())))
                .collect();
            let m = Interpretation::heap(&h);
            nf = normalize(&e, Theory::FreeHeap).unwrap();
            direct = eval(&e, &m, &env).unwrap();
            via_nf = eval_normal_form(&nf, &m, &env).unwrap();
        }
        ensure(
            nf.coefficient_sum() == 1.into(),
            format!("coefficient sum of {e} is not 1"),
        )?;
        ensure(
            direct == via_nf,
            format!("{e}: direct {direct} vs normal form {via_nf} under {env:?}"),
        )?;
    }
    let corpus = common::corpus();
    for entry in &corpus {
        let v = prove_identity(&entry.lhs, &entry.rhs, entry.theory).map_err(|e| e.to_string())?;
        ensure(
            v.equal == entry.equal,
            format!("verdict for {} is {}", entry.text, v.equal),
        )?;
        let ce = random_falsify(&entry.lhs, &entry.rhs, 200, 11).map_err(|e| e.to_string())?;
        ensure(
            !(v.equal && ce.is_some()),
            format!("counterexample to proven {}", entry.text),
        )?;
    }
    Ok(format!(
        "1000/1000 evaluations agree; {} corpus identities consistent",
        corpus.len()
    ))
}

fn c11_performance_and_determinism() -> Outcome {
    let t27 = TrussStructure::ring_zn(27).unwrap();
    let l = bracket_from_truss(&t27);
    let start = Instant::now();
    let r = validate_strong_jacobi(&l, ReportMode::First).map_err(|e| e.to_string())?;
    let t = within(start, Duration::from_secs(10))?;
    ensure(r.ok, "strong Jacobi fails on Z27")?;
    let runs = |workers: usize| -> Vec<String> {
        let mut out = Vec::new();
        for orders in [&[4][..], &[2, 2], &[3]] {
            let spec = SearchSpec::new(group(orders), SearchKind::Truss)
                .workers(workers)
                .up_to_iso(true);
            let s = search_trusses(&spec).unwrap();
            out.push(format!("{:?}{:?}", sorted_tables(&s.labeled), s.canonical));
            let lie = search_lie_brackets(
                &SearchSpec::new(group(orders), SearchKind::LieTruss).workers(workers),
            )
            .unwrap();
            out.push(format!(
                "{:?}{:?}",
                lie.labeled
                    .iter()
                    .map(|l| l.table().to_vec())
                    .collect::<Vec<_>>(),
                lie.canonical
            ));
        }
        out
    };
    ensure(runs(1) == runs(4), "outputs differ between 1 and 4 workers")?;
    Ok(format!(
        "27-point strong Jacobi sweep in {t:.2?}; 1 and 4 workers identical"
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        (
            "strong Jacobi for the truss commutator bracket",
            c1_commutator_bracket,
        ),
        (
            "strengthened bracket satisfies strong Jacobi",
            c2_strengthened_bracket,
        ),
        ("brackets from enumerated trusses", c3_brackets_from_trusses),
        ("affebra <-> ternary round trip", c4_affebra_round_trip),
        (
            "retract Lie rings of enumerated brackets",
            c5_retract_lie_rings,
        ),
        ("strengthening enumerated brackets", c6_strengthening),
        ("characteristic-2 sentinel", c7_char2_sentinel),
        ("classification against oracles", c8_classification),
        ("derivations", c9_derivations),
        ("normalization soundness", c10_normalization_soundness),
        (
            "performance and determinism",
            c11_performance_and_determinism,
        ),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
