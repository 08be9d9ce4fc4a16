use std::ops::ControlFlow;

use crate::affine::AffineStructure;
use crate::group::AbelianGroup;
use crate::lie::LieTernary;
use crate::report::{sweep, ReportMode, ViolationReport};
use crate::{Elem, Result};

/// A Lie ring on the retract `A(o)` of a Lie truss.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieRingView {
    pub group: AbelianGroup,
    pub origin: Elem,
    pub bracket: Vec<Elem>,
    /// Scalar action when the truss lives on an affine space.
    pub affine: Option<AffineStructure>,
}

impl LieRingView {
    #[inline]
    pub fn bracket(&self, a: Elem, b: Elem) -> Elem {
        self.bracket[a * self.group.order() + b]
    }
}

/// `[a,b] = ⟦a,o,b⟧ - ⟦a,o,o⟧ - ⟦o,o,b⟧` in `A(o)`.
pub fn retract_lie_ring(l: &LieTernary, o: Elem) -> Result<LieRingView> {
    let group = l.heap().retract_at(o)?;
    let n = l.size();
    let bracket = (0..n * n)
        .map(|i| {
            let (a, b) = (i / n, i % n);
            let x = group.sub(l.bracket(a, o, b), l.bracket(a, o, o));
            group.sub(x, l.bracket(o, o, b))
        })
        .collect();
    Ok(LieRingView {
        group,
        origin: o,
        bracket,
        affine: l.base().affine().cloned(),
    })
}

/// Biadditivity, `[a,a] = 0`, antisymmetry, the cyclic Jacobi identity and,
/// over an affine base, compatibility with scalars.
pub fn validate_lie_ring(v: &LieRingView, mode: ReportMode) -> ViolationReport {
    let g = &v.group;
    let n = g.order();
    let zero = g.zero();
    let br = |a, b| v.bracket(a, b);
    sweep(mode, |r| {
        for a in 0..n {
            r.expect_eq("alternating", &[a], br(a, a), zero)?;
            for b in 0..n {
                r.expect_eq("antisymmetry", &[a, b], g.add(br(a, b), br(b, a)), zero)?;
                for c in 0..n {
                    r.expect_eq(
                        "additive_left",
                        &[a, b, c],
                        br(g.add(a, b), c),
                        g.add(br(a, c), br(b, c)),
                    )?;
                    r.expect_eq(
                        "additive_right",
                        &[a, b, c],
                        br(a, g.add(b, c)),
                        g.add(br(a, b), br(a, c)),
                    )?;
                    let cyc = g.add(g.add(br(br(a, b), c), br(br(b, c), a)), br(br(c, a), b));
                    r.expect_eq("jacobi", &[a, b, c], cyc, zero)?;
                }
            }
        }
        if let Some(aff) = &v.affine {
            let o = v.origin;
            for alpha in 0..aff.field().p() {
                for a in 0..n {
                    for b in 0..n {
                        r.expect_eq(
                            "scalar_left",
                            &[alpha, a, b],
                            br(aff.lambda(alpha, o, a), b),
                            aff.lambda(alpha, o, br(a, b)),
                        )?;
                    }
                }
            }
        }
        ControlFlow::Continue(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heap::FiniteHeap;
    use crate::lie::{affebra_to_ternary, LieAffebra, LieBase};

    #[test]
    fn middle_bracket_gives_zero_ring() {
        let base = LieBase::Heap(FiniteHeap::cyclic_product(&[4]).unwrap());
        let l = LieTernary::from_fn(base, |_, b, _| b).unwrap();
        for o in 0..4 {
            let ring = retract_lie_ring(&l, o).unwrap();
            assert!(ring.bracket.iter().all(|&x| x == o));
            assert!(validate_lie_ring(&ring, ReportMode::First).ok);
        }
    }

    #[test]
    fn algebra_round_trip_through_ternary() {
        let alg = LieAffebra::two_dim_nonabelian(3).unwrap();
        let t = affebra_to_ternary(&alg, false).unwrap();
        let ring0 = retract_lie_ring(&t, 0).unwrap();
        assert_eq!(ring0.bracket, alg.table());
        // o = e2 = (0,1) = 1
        let ring = retract_lie_ring(&t, 1).unwrap();
        assert!(validate_lie_ring(&ring, ReportMode::First).ok);
        for a in 0..9 {
            assert_eq!(ring.bracket(a, a), 1);
        }
    }

    #[test]
    fn broken_ring_is_reported() {
        let group = AbelianGroup::cyclic(3).unwrap();
        let v = LieRingView {
            group,
            origin: 0,
            bracket: (0..9).map(|i| (i / 3 * (i % 3)) % 3).collect(),
            affine: None,
        };
        let r = validate_lie_ring(&v, ReportMode::First);
        assert_eq!(r.violations[0].axiom_id, "alternating");
    }
}
