//! Structured searches against the naive backtracking and all-functions
//! oracles.

use std::collections::BTreeSet;

use lietruss::group::AbelianGroup;
use lietruss::heap::FiniteHeap;
use lietruss::lie::{strengthen_bracket, validate_strong_jacobi};
use lietruss::search::oracle::{naive_derivations, naive_lie_brackets, naive_rings, naive_trusses};
use lietruss::search::{
    enumerate_derivations, search_lie_brackets, search_rings, search_trusses,
    search_weak_not_strong, SearchKind, SearchSpec,
};
use lietruss::{Elem, ReportMode, TrussStructure};

fn spec(orders: &[usize], kind: SearchKind) -> SearchSpec {
    SearchSpec::new(AbelianGroup::cyclic_product(orders).unwrap(), kind)
}

fn set(tables: impl IntoIterator<Item = Vec<Elem>>) -> BTreeSet<Vec<Elem>> {
    tables.into_iter().collect()
}

const SMALL: [&[usize]; 4] = [&[2], &[3], &[4], &[2, 2]];

#[test]
fn trusses_match_backtracking() {
    for orders in SMALL {
        let h = FiniteHeap::cyclic_product(orders).unwrap();
        let structured = search_trusses(&spec(orders, SearchKind::Truss)).unwrap();
        let naive = naive_trusses(&h).unwrap();
        assert_eq!(naive.len(), structured.total(), "{orders:?}");
        assert_eq!(
            set(structured.labeled.iter().map(|t| t.mul_table().to_vec())),
            set(naive)
        );
    }
}

#[test]
fn rings_match_backtracking() {
    for orders in SMALL {
        let h = FiniteHeap::cyclic_product(orders).unwrap();
        let structured = search_rings(&spec(orders, SearchKind::Ring)).unwrap();
        let naive = naive_rings(&h).unwrap();
        assert_eq!(
            set(structured.labeled.iter().map(|t| t.mul_table().to_vec())),
            set(naive),
            "{orders:?}"
        );
    }
}

#[test]
fn lie_brackets_match_backtracking() {
    for orders in [&[2][..], &[3], &[4], &[2, 2]] {
        let h = FiniteHeap::cyclic_product(orders).unwrap();
        let structured = search_lie_brackets(&spec(orders, SearchKind::LieTruss)).unwrap();
        let naive = naive_lie_brackets(&h).unwrap();
        assert_eq!(
            set(structured.labeled.iter().map(|l| l.table().to_vec())),
            set(naive),
            "{orders:?}"
        );
    }
}

#[test]
fn derivations_match_all_functions() {
    let mut pool: Vec<TrussStructure> = Vec::new();
    for orders in SMALL {
        pool.extend(
            search_trusses(&spec(orders, SearchKind::Truss))
                .unwrap()
                .labeled,
        );
    }
    pool.push(TrussStructure::ring_zn(5).unwrap());
    pool.push(TrussStructure::ring_zn(6).unwrap());
    pool.push(TrussStructure::additive(AbelianGroup::cyclic(6).unwrap()).unwrap());
    for t in &pool {
        let structured = set(enumerate_derivations(t).unwrap().into_iter().map(|d| d.0));
        let naive = set(naive_derivations(t).unwrap());
        assert_eq!(structured, naive, "{:?}", t.mul_table());
    }
}

#[test]
fn class_counts_ignore_presentation_order() {
    for kind in [SearchKind::Truss, SearchKind::Ring] {
        let a = |o: &[usize]| match kind {
            SearchKind::Truss => search_trusses(&spec(o, kind)).unwrap().class_count(),
            _ => search_rings(&spec(o, kind)).unwrap().class_count(),
        };
        assert_eq!(a(&[2, 3]), a(&[3, 2]));
        assert_eq!(a(&[2, 3]), a(&[6]));
    }
    let rings = |o: &[usize]| search_rings(&spec(o, SearchKind::Ring)).unwrap();
    assert_eq!(rings(&[2, 4]).class_count(), rings(&[4, 2]).class_count());
    assert_eq!(rings(&[2, 4]).total(), rings(&[4, 2]).total());
}

#[test]
fn weak_not_strong_outcomes() {
    assert!(search_weak_not_strong(&spec(&[3], SearchKind::LieTruss))
        .unwrap()
        .is_empty());
    assert!(search_weak_not_strong(&spec(&[4], SearchKind::LieTruss))
        .unwrap()
        .is_empty());
    let found = search_weak_not_strong(&spec(&[2, 2], SearchKind::LieTruss)).unwrap();
    assert_eq!(found.len(), 6120);
    for w in found.iter().step_by(97) {
        assert_eq!(w.report.violations[0].axiom_id, "strong_jacobi");
        assert_eq!(w.report.violations[0].witness.len(), 5);
        for o in 0..4 {
            let s = strengthen_bracket(&w.bracket, o).unwrap();
            assert!(validate_strong_jacobi(&s, ReportMode::First).unwrap().ok);
        }
    }
}
