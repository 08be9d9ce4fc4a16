use std::ops::ControlFlow;

use crate::affine::AffineStructure;
use crate::lie::{LieBase, LieTernary};
use crate::report::{sweep, ReportMode, ViolationReport};
use crate::{Elem, Error, Result};

/// An affine space with a binary bracket valued in the vector space `A(o)`.
/// Bracket values are carrier elements read in the retract at `origin`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAffebra {
    affine: AffineStructure,
    origin: Elem,
    bracket: Vec<Elem>,
}

impl LieAffebra {
    pub fn new(affine: AffineStructure, origin: Elem, bracket: Vec<Elem>) -> Result<Self> {
        let n = affine.size();
        affine.heap().check(origin)?;
        if bracket.len() != n * n {
            return Err(Error::SizeMismatch {
                what: "binary bracket table",
                expected: n * n,
                found: bracket.len(),
            });
        }
        if let Some(&e) = bracket.iter().find(|&&e| e >= n) {
            return Err(Error::OutOfRange {
                element: e,
                size: n,
            });
        }
        Ok(LieAffebra {
            affine,
            origin,
            bracket,
        })
    }

    pub fn from_fn(
        affine: AffineStructure,
        origin: Elem,
        f: impl Fn(Elem, Elem) -> Elem,
    ) -> Result<Self> {
        let n = affine.size();
        let table = (0..n * n).map(|i| f(i / n, i % n)).collect();
        Self::new(affine, origin, table)
    }

    /// The two-dimensional non-abelian Lie algebra `[e1, e2] = e2` over
    /// `F_p`, as an affebra on `F_p^2` with origin the zero vector.
    /// `(x1, x2)` is encoded as `x1 * p + x2`.
    pub fn two_dim_nonabelian(p: usize) -> Result<Self> {
        let affine = AffineStructure::standard(p, 2)?;
        Self::from_fn(affine, 0, move |a, b| {
            let (x1, x2) = (a / p, a % p);
            let (y1, y2) = (b / p, b % p);
            (x1 * y2 + p * p - x2 * y1) % p
        })
    }

    pub fn affine(&self) -> &AffineStructure {
        &self.affine
    }

    pub fn origin(&self) -> Elem {
        self.origin
    }

    pub fn size(&self) -> usize {
        self.affine.size()
    }

    #[inline]
    pub fn bracket(&self, a: Elem, b: Elem) -> Elem {
        self.bracket[a * self.size() + b]
    }

    pub fn table(&self) -> &[Elem] {
        &self.bracket
    }

    /// Linearization relative to the reference point `a0`:
    /// `{a0 + v, c} - {a0, c}` in `A(o)`.
    #[inline]
    fn lin_at(&self, a0: Elem, v: Elem, c: Elem) -> Elem {
        let h = self.affine.heap();
        let o = self.origin;
        h.minus_at(o, self.bracket(h.plus_at(o, a0, v), c), self.bracket(a0, c))
    }
}

/// Linearization of the bracket in its first argument. Fails when the value
/// depends on the reference point.
pub fn linearized_bracket(l: &LieAffebra, v: Elem, c: Elem) -> Result<Elem> {
    let h = l.affine.heap();
    h.check(v)?;
    h.check(c)?;
    let value = l.lin_at(l.origin, v, c);
    if (0..l.size()).all(|a0| l.lin_at(a0, v, c) == value) {
        Ok(value)
    } else {
        Err(Error::LinearizationDependsOnPoint { v, c })
    }
}

/// Bi-affineness, antisymmetry, well-defined linearization and the
/// linearized cyclic Jacobi identity.
pub fn validate_lie_affebra(l: &LieAffebra, mode: ReportMode) -> ViolationReport {
    let n = l.size();
    let aff = &l.affine;
    let h = aff.heap();
    let o = l.origin;
    let br = |a, b| l.bracket(a, b);
    sweep(mode, |r| {
        for fixed in 0..n {
            let left = move |x| br(x, fixed);
            let right = move |x| br(fixed, x);
            for (id, f) in [
                ("biaffine_left", &left as &dyn Fn(Elem) -> Elem),
                ("biaffine_right", &right),
            ] {
                h.hom_check_fast(h, f, |w, lhs, rhs| {
                    r.record(id, &[fixed, w[0], w[1], w[2]], lhs, rhs)
                })?;
                aff.action_check(aff, f, |w, lhs, rhs| {
                    r.record(id, &[fixed, w[0], w[1], w[2]], lhs, rhs)
                })?;
            }
        }
        for a in 0..n {
            for b in 0..n {
                r.expect_eq("antisymmetry", &[a, b], h.plus_at(o, br(a, b), br(b, a)), o)?;
            }
        }
        for v in 0..n {
            for c in 0..n {
                let reference = l.lin_at(o, v, c);
                for a0 in 0..n {
                    r.expect_eq("linearization", &[v, c, a0], l.lin_at(a0, v, c), reference)?;
                }
            }
        }
        let lin = |v, c| l.lin_at(o, v, c);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let s = h.plus_at(o, lin(br(a, b), c), lin(br(b, c), a));
                    let s = h.plus_at(o, s, lin(br(c, a), b));
                    r.expect_eq("jacobi_affebra", &[a, b, c], s, o)?;
                }
            }
        }
        ControlFlow::Continue(())
    })
}

/// `⟦a,b,c⟧ = b + {a,c}`. Requires characteristic other than 2 unless
/// `force_char2` is set.
pub fn affebra_to_ternary(l: &LieAffebra, force_char2: bool) -> Result<LieTernary> {
    if l.affine.field().p() == 2 && !force_char2 {
        return Err(Error::CharacteristicTwo);
    }
    let h = l.affine.heap();
    let o = l.origin;
    LieTernary::from_fn(LieBase::Affine(l.affine.clone()), |a, b, c| {
        h.plus_at(o, b, l.bracket(a, c))
    })
}

/// `{a,b} = ⟦a,o,b⟧`, read in `A(o)`.
pub fn ternary_to_affebra(t: &LieTernary, o: Elem) -> Result<LieAffebra> {
    let affine = t.base().affine().ok_or(Error::NotAffine)?.clone();
    affine.heap().check(o)?;
    LieAffebra::from_fn(affine, o, |a, b| t.bracket(a, o, b))
}
