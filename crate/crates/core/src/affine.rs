//! Affine spaces over prime fields, presented as a heap together with the
//! ternary scalar action `Λ(α, a, b)` ("move from `a` towards `b` by `α`").

use std::ops::ControlFlow;

use crate::group::AbelianGroup;
use crate::heap::{check_element_map, heap_from_group, FiniteHeap};
use crate::report::{sweep, ReportMode, ViolationReport};
use crate::{Elem, Error, Result};

pub const MAX_PRIME: usize = 13;
/// Largest carrier `p^d` accepted for affine structures.
pub const MAX_AFFINE_CARRIER: usize = 32;

pub fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: usize,
}

impl PrimeField {
    pub fn new(p: usize) -> Result<Self> {
        if is_prime(p) && p <= MAX_PRIME {
            Ok(PrimeField { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    #[inline]
    pub fn p(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        (a * b) % self.p
    }
}

/// Heap plus dense scalar-action tables `lambda[α][a][b]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineStructure {
    heap: FiniteHeap,
    field: PrimeField,
    lambda: Vec<Elem>,
}

fn dimension_of(n: usize, p: usize) -> Option<usize> {
    let mut size = 1;
    let mut d = 0;
    while size < n {
        size *= p;
        d += 1;
    }
    (size == n).then_some(d)
}

impl AffineStructure {
    /// Wraps raw tables without checking the affine axioms; run
    /// [`validate_affine`] for that.
    pub fn new(heap: FiniteHeap, field: PrimeField, lambda: Vec<Elem>) -> Result<Self> {
        let n = heap.size();
        let p = field.p();
        if dimension_of(n, p).is_none() {
            return Err(Error::NotPowerOfP { size: n, p });
        }
        if n > MAX_AFFINE_CARRIER {
            return Err(Error::LimitExceeded(format!(
                "affine carrier {n} exceeds {MAX_AFFINE_CARRIER}"
            )));
        }
        if lambda.len() != p * n * n {
            return Err(Error::SizeMismatch {
                what: "lambda tables",
                expected: p * n * n,
                found: lambda.len(),
            });
        }
        if let Some(&e) = lambda.iter().find(|&&e| e >= n) {
            return Err(Error::OutOfRange {
                element: e,
                size: n,
            });
        }
        Ok(AffineStructure {
            heap,
            field,
            lambda,
        })
    }

    /// The standard affine space `F_p^d` with `Λ(α,a,b) = a + α(b - a)`.
    pub fn standard(p: usize, d: usize) -> Result<Self> {
        affine_from_vector_action(p, d)
    }

    pub fn heap(&self) -> &FiniteHeap {
        &self.heap
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn size(&self) -> usize {
        self.heap.size()
    }

    pub fn dimension(&self) -> usize {
        dimension_of(self.size(), self.field.p()).expect("checked on construction")
    }

    pub fn lambda_table(&self) -> &[Elem] {
        &self.lambda
    }

    #[inline]
    pub fn lambda(&self, alpha: usize, a: Elem, b: Elem) -> Elem {
        let n = self.size();
        self.lambda[(alpha * n + a) * n + b]
    }

    pub fn set_lambda(&mut self, alpha: usize, a: Elem, b: Elem, value: Elem) {
        let n = self.size();
        self.lambda[(alpha * n + a) * n + b] = value;
    }

    /// Checks `f(Λ(α,x,y)) = Λ'(α, f x, f y)` over all scalars and pairs.
    pub(crate) fn action_check(
        &self,
        target: &AffineStructure,
        f: impl Fn(Elem) -> Elem,
        mut on_fail: impl FnMut(&[Elem], Elem, Elem) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let n = self.size();
        for alpha in 0..self.field.p() {
            for x in 0..n {
                let fx = f(x);
                for y in 0..n {
                    let lhs = f(self.lambda(alpha, x, y));
                    let rhs = target.lambda(alpha, fx, f(y));
                    if lhs != rhs {
                        on_fail(&[alpha, x, y], lhs, rhs)?;
                    }
                }
            }
        }
        ControlFlow::Continue(())
    }

    pub fn is_affine_map(&self, target: &AffineStructure, f: impl Fn(Elem) -> Elem + Copy) -> bool {
        self.heap.is_hom(&target.heap, f)
            && self
                .action_check(target, f, |_, _, _| ControlFlow::Break(()))
                .is_continue()
    }
}

/// Builds the standard affine space on `F_p^d`.
pub fn affine_from_vector_action(p: usize, d: usize) -> Result<AffineStructure> {
    let field = PrimeField::new(p)?;
    if d == 0 || d > 3 {
        return Err(Error::LimitExceeded(format!("dimension {d} outside 1..=3")));
    }
    let group = AbelianGroup::cyclic_product(&vec![p; d])?;
    let n = group.order();
    let mut lambda = Vec::with_capacity(p * n * n);
    for alpha in 0..p {
        for a in 0..n {
            for b in 0..n {
                lambda.push(group.add(a, group.times(alpha as i64, group.sub(b, a))));
            }
        }
    }
    AffineStructure::new(heap_from_group(group), field, lambda)
}

/// Exhaustive sweep of the five affine-space axiom families, plus `Λ(α,a,a) = a`.
pub fn validate_affine(s: &AffineStructure, mode: ReportMode) -> ViolationReport {
    let n = s.size();
    let f = s.field;
    let p = f.p();
    let h = &s.heap;
    let lam = |alpha, a, b| s.lambda(alpha, a, b);
    sweep(mode, |r| {
        for a in 0..n {
            for b in 0..n {
                r.expect_eq("unit_zero", &[a, b], lam(0, a, b), a)?;
                r.expect_eq("unit_one", &[b, a], lam(1, b, a), a)?;
            }
            for alpha in 0..p {
                r.expect_eq("idempotent", &[alpha, a], lam(alpha, a, a), a)?;
            }
        }
        for alpha in 0..p {
            for beta in 0..p {
                for gamma in 0..p {
                    let combo = f.add(f.sub(alpha, beta), gamma);
                    for a in 0..n {
                        for b in 0..n {
                            r.expect_eq(
                                "l_heap",
                                &[alpha, beta, gamma, a, b],
                                lam(combo, a, b),
                                h.bracket(lam(alpha, a, b), lam(beta, a, b), lam(gamma, a, b)),
                            )?;
                        }
                    }
                }
            }
        }
        for alpha in 0..p {
            for a in 0..n {
                for b in 0..n {
                    let lb = lam(alpha, a, b);
                    for c in 0..n {
                        let lc = lam(alpha, a, c);
                        for d in 0..n {
                            r.expect_eq(
                                "r_heap",
                                &[alpha, a, b, c, d],
                                lam(alpha, a, h.bracket(b, c, d)),
                                h.bracket(lb, lc, lam(alpha, a, d)),
                            )?;
                        }
                    }
                }
            }
        }
        for alpha in 0..p {
            for beta in 0..p {
                for a in 0..n {
                    for b in 0..n {
                        r.expect_eq(
                            "a_assoc",
                            &[alpha, beta, a, b],
                            lam(f.mul(alpha, beta), a, b),
                            lam(alpha, a, lam(beta, a, b)),
                        )?;
                    }
                }
            }
        }
        for alpha in 0..p {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        r.expect_eq(
                            "b_change",
                            &[alpha, a, b, c],
                            lam(alpha, a, b),
                            h.bracket(lam(alpha, c, b), lam(alpha, c, a), a),
                        )?;
                    }
                }
            }
        }
        ControlFlow::Continue(())
    })
}

/// The vector space obtained by fixing an origin: addition is the retract at
/// `o`, scalar multiplication is `α·a = Λ(α, o, a)`.
#[derive(Clone, Debug)]
pub struct VectorSpaceView<'a> {
    affine: &'a AffineStructure,
    origin: Elem,
    group: AbelianGroup,
}

impl<'a> VectorSpaceView<'a> {
    pub fn affine(&self) -> &'a AffineStructure {
        self.affine
    }

    pub fn origin(&self) -> Elem {
        self.origin
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.group.add(a, b)
    }

    #[inline]
    pub fn scale(&self, alpha: usize, a: Elem) -> Elem {
        self.affine.lambda(alpha, self.origin, a)
    }

    /// Exhaustive check of the vector-space axioms.
    pub fn validate(&self, mode: ReportMode) -> ViolationReport {
        let n = self.affine.size();
        let f = self.affine.field;
        let p = f.p();
        let o = self.origin;
        let g = &self.group;
        sweep(mode, |r| {
            for a in 0..n {
                r.expect_eq("vs_add_identity", &[a], g.add(a, o), a)?;
                r.expect_eq("vs_add_inverse", &[a], g.add(a, g.neg(a)), o)?;
                r.expect_eq("vs_scalar_unit", &[a], self.scale(1, a), a)?;
                for b in 0..n {
                    r.expect_eq("vs_add_comm", &[a, b], g.add(a, b), g.add(b, a))?;
                    for c in 0..n {
                        r.expect_eq(
                            "vs_add_assoc",
                            &[a, b, c],
                            g.add(g.add(a, b), c),
                            g.add(a, g.add(b, c)),
                        )?;
                    }
                }
            }
            for alpha in 0..p {
                for a in 0..n {
                    for b in 0..n {
                        r.expect_eq(
                            "vs_distrib_vector",
                            &[alpha, a, b],
                            self.scale(alpha, g.add(a, b)),
                            g.add(self.scale(alpha, a), self.scale(alpha, b)),
                        )?;
                    }
                    for beta in 0..p {
                        r.expect_eq(
                            "vs_distrib_scalar",
                            &[alpha, beta, a],
                            self.scale(f.add(alpha, beta), a),
                            g.add(self.scale(alpha, a), self.scale(beta, a)),
                        )?;
                        r.expect_eq(
                            "vs_scalar_assoc",
                            &[alpha, beta, a],
                            self.scale(f.mul(alpha, beta), a),
                            self.scale(alpha, self.scale(beta, a)),
                        )?;
                    }
                }
            }
            ControlFlow::Continue(())
        })
    }
}

pub fn vector_space_at(s: &AffineStructure, o: Elem) -> Result<VectorSpaceView<'_>> {
    let group = s.heap.retract_at(o)?;
    let view = VectorSpaceView {
        affine: s,
        origin: o,
        group,
    };
    view.validate(ReportMode::First).into_result()?;
    Ok(view)
}

/// The unique vector of `A(o)` carrying `a` to `b`: `[o, a, b]`.
pub fn arrow(s: &AffineStructure, o: Elem, a: Elem, b: Elem) -> Result<Elem> {
    for x in [o, a, b] {
        s.heap.check(x)?;
    }
    Ok(s.heap.bracket(o, a, b))
}

/// Heap-homomorphism condition plus preservation of the scalar action.
pub fn validate_affine_hom(
    f: &[Elem],
    source: &AffineStructure,
    target: &AffineStructure,
    mode: ReportMode,
) -> Result<ViolationReport> {
    if source.field != target.field {
        return Err(Error::FieldMismatch(source.field.p(), target.field.p()));
    }
    let heap_report = crate::heap::validate_heap_hom(f, &source.heap, &target.heap, mode)?;
    if !heap_report.ok && mode == ReportMode::First {
        return Ok(heap_report);
    }
    let action_report = sweep(mode, |r| {
        source.action_check(
            target,
            |x| f[x],
            |w, lhs, rhs| r.record("action_hom", w, lhs, rhs),
        )
    });
    Ok(heap_report.merge(action_report))
}

/// The linear map `a ↦ [f(a), f(o_A), o_B]` between `A(o_A)` and `B(o_B)`.
pub fn linearize(
    f: &[Elem],
    source: &AffineStructure,
    target: &AffineStructure,
    o_source: Elem,
    o_target: Elem,
) -> Result<Vec<Elem>> {
    source.heap.check(o_source)?;
    target.heap.check(o_target)?;
    check_element_map(f, source.size(), target.size())?;
    validate_affine_hom(f, source, target, ReportMode::First)?.into_result()?;
    let fo = f[o_source];
    Ok((0..source.size())
        .map(|a| target.heap.bracket(f[a], fo, o_target))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line3() -> AffineStructure {
        affine_from_vector_action(3, 1).unwrap()
    }

    #[test]
    fn primes() {
        assert!(PrimeField::new(13).is_ok());
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(17).is_err());
    }

    #[test]
    fn f3_line() {
        let s = line3();
        assert_eq!(s.lambda(2, 1, 0), 2);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(s.lambda(0, a, b), a);
                assert_eq!(s.lambda(1, b, a), a);
            }
        }
        assert!(validate_affine(&s, ReportMode::First).ok);
    }

    #[test]
    fn corrupt_lambda_is_found() {
        let mut s = line3();
        s.set_lambda(2, 1, 0, 0);
        let r = validate_affine(&s, ReportMode::All);
        assert!(!r.ok);
        assert!(r.violations.iter().any(|v| v.witness.contains(&2)));
    }

    #[test]
    fn not_power_of_p() {
        let h = FiniteHeap::cyclic_product(&[6]).unwrap();
        let field = PrimeField::new(2).unwrap();
        assert!(matches!(
            AffineStructure::new(h, field, vec![0; 72]),
            Err(Error::NotPowerOfP { .. })
        ));
    }

    #[test]
    fn vector_space_views() {
        let s = line3();
        let v0 = vector_space_at(&s, 0).unwrap();
        assert_eq!(v0.scale(2, 2), 1);
        let v2 = vector_space_at(&s, 2).unwrap();
        assert_eq!(v2.add(1, 1), 0);
        let plane = affine_from_vector_action(2, 2).unwrap();
        for o in 0..4 {
            assert!(vector_space_at(&plane, o).is_ok());
        }
    }

    #[test]
    fn arrows() {
        let s = affine_from_vector_action(5, 1).unwrap();
        let v = arrow(&s, 2, 1, 4).unwrap();
        assert_eq!(v, 0);
        assert_eq!(s.heap().bracket(1, 2, v), 4);
        for o in 0..5 {
            for a in 0..5 {
                assert_eq!(arrow(&s, o, a, a).unwrap(), o);
                assert_eq!(arrow(&s, o, o, a).unwrap(), a);
            }
        }
    }

    #[test]
    fn standard_spaces_validate() {
        assert!(validate_affine(&affine_from_vector_action(2, 2).unwrap(), ReportMode::First).ok);
        assert!(validate_affine(&affine_from_vector_action(5, 2).unwrap(), ReportMode::First).ok);
        let plane = affine_from_vector_action(2, 2).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(plane.lambda(1, a, b), b);
            }
        }
        assert!(affine_from_vector_action(4, 1).is_err());
        assert!(affine_from_vector_action(2, 6).is_err());
    }

    #[test]
    fn affine_homs() {
        let s = line3();
        for t in 0..3 {
            let f: Vec<_> = (0..3).map(|x| (x + t) % 3).collect();
            assert!(
                validate_affine_hom(&f, &s, &s, ReportMode::First)
                    .unwrap()
                    .ok
            );
        }
        // On the F_3 line every permutation is affine: swapping 0 and 1 is x -> 2x + 1.
        let swap = [1, 0, 2];
        assert!((0..3).all(|x| swap[x] == (2 * x + 1) % 3));
        assert!(
            validate_affine_hom(&swap, &s, &s, ReportMode::First)
                .unwrap()
                .ok
        );
        // On the F_5 line a transposition is not.
        let l5 = affine_from_vector_action(5, 1).unwrap();
        let swap5 = [1, 0, 2, 3, 4];
        assert!(
            !validate_affine_hom(&swap5, &l5, &l5, ReportMode::First)
                .unwrap()
                .ok
        );
        let collapse = [0, 0, 1];
        assert!(
            !validate_affine_hom(&collapse, &s, &s, ReportMode::First)
                .unwrap()
                .ok
        );
        let other = affine_from_vector_action(2, 1).unwrap();
        assert!(validate_affine_hom(&[0, 1], &other, &s, ReportMode::First).is_err());
    }

    #[test]
    fn linearization() {
        let s = line3();
        let shift = [1, 2, 0];
        assert_eq!(linearize(&shift, &s, &s, 0, 0).unwrap(), vec![0, 1, 2]);
        let affine = [1, 0, 2];
        assert_eq!(linearize(&affine, &s, &s, 0, 0).unwrap(), vec![0, 2, 1]);
        assert!(linearize(&[0, 0, 1], &s, &s, 0, 0).is_err());
    }
}
