use std::collections::HashMap;
use std::ops::ControlFlow;

use crate::affine::AffineStructure;
use crate::heap::{FiniteHeap, TernaryTable, MAX_SWEEP5};
use crate::report::{sweep, ReportMode, ViolationReport};
use crate::truss::{validate_derivation, Derivation, TrussStructure};
use crate::{Elem, Error, Result};

/// The carrier a ternary bracket lives on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LieBase {
    Heap(FiniteHeap),
    Affine(AffineStructure),
}

impl LieBase {
    pub fn heap(&self) -> &FiniteHeap {
        match self {
            LieBase::Heap(h) => h,
            LieBase::Affine(a) => a.heap(),
        }
    }

    pub fn affine(&self) -> Option<&AffineStructure> {
        match self {
            LieBase::Heap(_) => None,
            LieBase::Affine(a) => Some(a),
        }
    }
}

/// A heap with a ternary bracket table `⟦a,b,c⟧`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieTernary {
    base: LieBase,
    bracket: Vec<Elem>,
}

impl LieTernary {
    pub fn new(base: LieBase, bracket: Vec<Elem>) -> Result<Self> {
        let n = base.heap().size();
        TernaryTable::new(n, bracket.clone())?;
        Ok(LieTernary { base, bracket })
    }

    pub fn from_fn(base: LieBase, f: impl Fn(Elem, Elem, Elem) -> Elem) -> Result<Self> {
        let n = base.heap().size();
        let table = TernaryTable::from_fn(n, f)?;
        Ok(LieTernary {
            base,
            bracket: table.into_entries(),
        })
    }

    pub fn base(&self) -> &LieBase {
        &self.base
    }

    pub fn heap(&self) -> &FiniteHeap {
        self.base.heap()
    }

    pub fn size(&self) -> usize {
        self.heap().size()
    }

    #[inline]
    pub fn bracket(&self, a: Elem, b: Elem, c: Elem) -> Elem {
        let n = self.size();
        self.bracket[(a * n + b) * n + c]
    }

    pub fn table(&self) -> &[Elem] {
        &self.bracket
    }
}

type SlotMap<'a> = Box<dyn Fn(Elem) -> Elem + 'a>;

/// Slot-homomorphism (and, over an affine base, slot action preservation),
/// `⟦a,b,a⟧ = b`, ternary antisymmetry and the four-variable Jacobi identity.
///
/// Slot witnesses are `[p, q, x, z, y]`, where `p, q` fill the two fixed slots
/// in order and `f([x,z,y]) != [f x, f z, f y]`; action witnesses are
/// `[p, q, α, x, y]`.
pub fn validate_lie_truss(l: &LieTernary, mode: ReportMode) -> ViolationReport {
    let n = l.size();
    let h = l.heap();
    let t = |a, b, c| l.bracket(a, b, c);
    sweep(mode, |r| {
        for p in 0..n {
            for q in 0..n {
                let slots: [(&str, SlotMap); 3] = [
                    ("slot1_hom", Box::new(move |x| t(x, p, q))),
                    ("slot2_hom", Box::new(move |x| t(p, x, q))),
                    ("slot3_hom", Box::new(move |x| t(p, q, x))),
                ];
                for (id, f) in &slots {
                    h.hom_check_fast(h, f, |w, lhs, rhs| {
                        r.record(id, &[p, q, w[0], w[1], w[2]], lhs, rhs)
                    })?;
                }
                if let Some(aff) = l.base.affine() {
                    let ids = ["slot1_affine", "slot2_affine", "slot3_affine"];
                    for ((_, f), id) in slots.iter().zip(ids) {
                        aff.action_check(aff, f, |w, lhs, rhs| {
                            r.record(id, &[p, q, w[0], w[1], w[2]], lhs, rhs)
                        })?;
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                r.expect_eq("aa", &[a, b], t(a, b, a), b)?;
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    r.expect_eq("as", &[a, b, c], h.bracket(t(a, b, c), b, t(c, b, a)), b)?;
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for o in 0..n {
                        let lhs = t(t(a, o, b), o, c);
                        let rhs = jacobi_rhs(l, a, b, c, o, o);
                        r.expect_eq("jacobi", &[a, b, c, o], lhs, rhs)?;
                    }
                }
            }
        }
        ControlFlow::Continue(())
    })
}

/// Right-hand side of the strong Jacobi identity at `(a,b,c,d,e)`; the
/// ordinary Jacobi identity is the case `d = e = o`.
#[inline]
fn jacobi_rhs(l: &LieTernary, a: Elem, b: Elem, c: Elem, d: Elem, e: Elem) -> Elem {
    let h = l.heap();
    let t = |x, y, z| l.bracket(x, y, z);
    let x1 = h.bracket(t(d, e, a), t(t(b, d, c), e, a), t(d, e, b));
    h.bracket(x1, t(t(c, d, a), e, b), t(d, e, c))
}

/// Exhaustive five-variable sweep of
/// `⟦⟦a,d,b⟧,e,c⟧ = [⟦d,e,a⟧, ⟦⟦b,d,c⟧,e,a⟧, ⟦d,e,b⟧, ⟦⟦c,d,a⟧,e,b⟧, ⟦d,e,c⟧]`.
pub fn validate_strong_jacobi(l: &LieTernary, mode: ReportMode) -> Result<ViolationReport> {
    let n = l.size();
    if n > MAX_SWEEP5 {
        return Err(Error::LimitExceeded(format!(
            "strong Jacobi sweep limited to {MAX_SWEEP5} elements, got {n}"
        )));
    }
    let t = |a, b, c| l.bracket(a, b, c);
    Ok(sweep(mode, |r| {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let adb = t(a, d, b);
                        for e in 0..n {
                            let lhs = t(adb, e, c);
                            let rhs = jacobi_rhs(l, a, b, c, d, e);
                            r.expect_eq("strong_jacobi", &[a, b, c, d, e], lhs, rhs)?;
                        }
                    }
                }
            }
        }
        ControlFlow::Continue(())
    }))
}

/// The commutator bracket of a truss, `⟦a,b,c⟧ = [ac, ca, b]`.
pub fn bracket_from_truss(t: &TrussStructure) -> LieTernary {
    let h = t.heap();
    LieTernary::from_fn(LieBase::Heap(h.clone()), |a, b, c| {
        h.bracket(t.mul(a, c), t.mul(c, a), b)
    })
    .expect("truss carrier within limits")
}

/// `⟦a,b,c⟧_o = [⟦a,o,c⟧, ⟦a,o,o⟧, o, ⟦o,o,c⟧, b]`.
pub fn strengthen_bracket(l: &LieTernary, o: Elem) -> Result<LieTernary> {
    l.heap().check(o)?;
    let h = l.heap();
    LieTernary::from_fn(l.base.clone(), |a, b, c| {
        let x = h.bracket(l.bracket(a, o, c), l.bracket(a, o, o), o);
        h.bracket(x, l.bracket(o, o, c), b)
    })
}

/// The Lie truss of derivations of a truss. Element `i` of the carrier is
/// `derivations[i]`.
#[derive(Clone, Debug)]
pub struct DerivationLieTruss {
    pub derivations: Vec<Derivation>,
    pub lie: LieTernary,
}

/// Enumerates `Der(T)` and equips it with the pointwise heap operation and
/// the bracket `⟦D1,D2,D3⟧ = [D1 D3, D3 D1, D2]`, checking closure.
pub fn derivations_lie_truss(t: &TrussStructure) -> Result<DerivationLieTruss> {
    let derivations = crate::search::enumerate_derivations(t)?;
    let index: HashMap<&Derivation, usize> = derivations
        .iter()
        .enumerate()
        .map(|(i, d)| (d, i))
        .collect();
    let m = derivations.len();
    let h = t.heap();
    let pointwise = |f: &dyn Fn(Elem) -> Elem| Derivation((0..t.size()).map(f).collect());

    let mut heap_entries = Vec::with_capacity(m * m * m);
    let mut bracket_entries = Vec::with_capacity(m * m * m);
    for d1 in &derivations {
        for d2 in &derivations {
            for d3 in &derivations {
                let combo = pointwise(&|x| h.bracket(d1.apply(x), d2.apply(x), d3.apply(x)));
                let d13 = d1.compose(d3);
                let d31 = d3.compose(d1);
                let br = pointwise(&|x| h.bracket(d13.apply(x), d31.apply(x), d2.apply(x)));
                for (map, what) in [(&combo, "pointwise heap operation"), (&br, "bracket")] {
                    if !validate_derivation(&map.0, t, ReportMode::First)?.ok {
                        return Err(Error::ClosureFailure(what));
                    }
                }
                let find =
                    |d: &Derivation, what| index.get(d).copied().ok_or(Error::ClosureFailure(what));
                heap_entries.push(find(&combo, "pointwise heap operation")?);
                bracket_entries.push(find(&br, "bracket")?);
            }
        }
    }
    let heap = FiniteHeap::from_table(&TernaryTable::new(m, heap_entries)?)?;
    let lie = LieTernary::new(LieBase::Heap(heap), bracket_entries)?;
    Ok(DerivationLieTruss { derivations, lie })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::AbelianGroup;

    fn z2() -> LieBase {
        LieBase::Heap(FiniteHeap::cyclic_product(&[2]).unwrap())
    }

    #[test]
    fn z2_examples() {
        let sum = LieTernary::from_fn(z2(), |a, b, c| a ^ b ^ c).unwrap();
        assert!(validate_lie_truss(&sum, ReportMode::First).ok);
        assert!(validate_strong_jacobi(&sum, ReportMode::First).unwrap().ok);
        let middle = LieTernary::from_fn(z2(), |_, b, _| b).unwrap();
        assert!(validate_lie_truss(&middle, ReportMode::First).ok);
        assert!(
            validate_strong_jacobi(&middle, ReportMode::First)
                .unwrap()
                .ok
        );
        let bad = LieTernary::from_fn(z2(), |a, b, _| a ^ b).unwrap();
        let r = validate_lie_truss(&bad, ReportMode::First);
        assert_eq!(r.violations[0].axiom_id, "aa");
        assert_eq!(r.violations[0].witness, vec![1, 0]);
    }

    #[test]
    fn middle_bracket_is_strong_on_any_heap() {
        let base = LieBase::Heap(FiniteHeap::cyclic_product(&[2, 3]).unwrap());
        let middle = LieTernary::from_fn(base, |_, b, _| b).unwrap();
        assert!(
            validate_strong_jacobi(&middle, ReportMode::First)
                .unwrap()
                .ok
        );
    }

    #[test]
    fn commutative_truss_gives_middle_bracket() {
        let t = TrussStructure::additive(AbelianGroup::cyclic(4).unwrap()).unwrap();
        let l = bracket_from_truss(&t);
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    assert_eq!(l.bracket(a, b, c), b);
                }
            }
        }
    }

    #[test]
    fn upper_triangular_bracket() {
        let t = TrussStructure::upper_triangular_f2();
        let l = bracket_from_truss(&t);
        let e11 = crate::truss::ut2_encode(1, 0, 0);
        let e12 = crate::truss::ut2_encode(0, 1, 0);
        assert_eq!(l.bracket(e11, 0, e12), e12);
        assert!(validate_lie_truss(&l, ReportMode::First).ok);
        assert!(validate_strong_jacobi(&l, ReportMode::First).unwrap().ok);
    }

    #[test]
    fn strengthening_the_middle_bracket_is_identity() {
        let base = LieBase::Heap(FiniteHeap::cyclic_product(&[3]).unwrap());
        let middle = LieTernary::from_fn(base, |_, b, _| b).unwrap();
        for o in 0..3 {
            assert_eq!(strengthen_bracket(&middle, o).unwrap(), middle);
        }
        assert!(strengthen_bracket(&middle, 3).is_err());
    }

    #[test]
    fn derivation_lie_truss_small_cases() {
        let f2 = TrussStructure::ring_zn(2).unwrap();
        let der = derivations_lie_truss(&f2).unwrap();
        assert_eq!(der.derivations, vec![Derivation(vec![0, 1])]);
        assert_eq!(der.lie.size(), 1);

        let t = TrussStructure::additive(AbelianGroup::cyclic(4).unwrap()).unwrap();
        let der = derivations_lie_truss(&t).unwrap();
        let expected: Vec<_> = (0..4)
            .map(|g| Derivation((0..4).map(|x| (g * x) % 4).collect()))
            .collect();
        let mut got = der.derivations.clone();
        got.sort();
        let mut want = expected;
        want.sort();
        assert_eq!(got, want);
        let m = der.lie.size();
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    assert_eq!(der.lie.bracket(a, b, c), b);
                }
                assert_eq!(der.lie.bracket(a, b, a), b);
            }
        }
        assert!(validate_lie_truss(&der.lie, ReportMode::First).ok);
        assert!(
            validate_strong_jacobi(&der.lie, ReportMode::First)
                .unwrap()
                .ok
        );
    }
}
