use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::normal::{normalize, write_coeffs, FreeElement, Theory, Word};
use super::Expr;
use crate::lie::LieTernary;
use crate::{Error, Result};

/// How bracket nodes are interpreted.
#[derive(Clone, Copy, Debug)]
pub enum LieMacro<'a> {
    /// `{a,b,c} ↦ [a*c, c*a, b]`
    TrussCommutator,
    /// Brackets stay symbolic and are read off an attached table.
    Table(Option<&'a LieTernary>),
}

/// `[a*c, c*a, b]`
pub fn commutator_bracket(a: Expr, b: Expr, c: Expr) -> Expr {
    Expr::heap(vec![Expr::mul(a.clone(), c.clone()), Expr::mul(c, a), b])
}

/// Replaces every bracket node, innermost first.
pub fn expand_lie_macro(e: &Expr, mode: LieMacro<'_>) -> Result<Expr> {
    match mode {
        LieMacro::TrussCommutator => Ok(e.map_brackets(&commutator_bracket)),
        LieMacro::Table(Some(_)) => Ok(e.clone()),
        LieMacro::Table(None) => Err(Error::TheoryMismatch(
            "table-mode bracket expansion needs an attached Lie structure".into(),
        )),
    }
}

/// Outcome of comparing two normal forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub equal: bool,
    pub lhs_nf: FreeElement,
    pub rhs_nf: FreeElement,
    /// `lhs − rhs`, zero entries omitted.
    pub diff: BTreeMap<Word, BigInt>,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.equal {
            write!(f, "equal\nnormal form: {}", self.lhs_nf)
        } else {
            write!(
                f,
                "not equal\nlhs: {}\nrhs: {}\ndiff: ",
                self.lhs_nf, self.rhs_nf
            )?;
            write_coeffs(f, &self.diff)
        }
    }
}

/// Decides `lhs = rhs` in the free heap or free truss. In the free truss,
/// brackets are first expanded as truss commutators.
pub fn prove_identity(lhs: &Expr, rhs: &Expr, theory: Theory) -> Result<Verdict> {
    let prepare = |e: &Expr| -> Result<FreeElement> {
        match theory {
            Theory::FreeHeap => normalize(e, theory),
            Theory::FreeTruss => {
                normalize(&expand_lie_macro(e, LieMacro::TrussCommutator)?, theory)
            }
        }
    };
    let lhs_nf = prepare(lhs)?;
    let rhs_nf = prepare(rhs)?;
    let diff = lhs_nf.diff(&rhs_nf);
    Ok(Verdict {
        equal: diff.is_empty(),
        lhs_nf,
        rhs_nf,
        diff,
    })
}

/// Both sides of `⟦⟦a,d,b⟧,e,c⟧ = [⟦d,e,a⟧, ⟦⟦b,d,c⟧,e,a⟧, ⟦d,e,b⟧, ⟦⟦c,d,a⟧,e,b⟧, ⟦d,e,c⟧]`
/// for the bracket `br`.
pub fn strong_jacobi_sides(
    br: &dyn Fn(Expr, Expr, Expr) -> Expr,
    [a, b, c, d, e]: [Expr; 5],
) -> (Expr, Expr) {
    let lhs = br(br(a.clone(), d.clone(), b.clone()), e.clone(), c.clone());
    let rhs = Expr::heap(vec![
        br(d.clone(), e.clone(), a.clone()),
        br(br(b.clone(), d.clone(), c.clone()), e.clone(), a.clone()),
        br(d.clone(), e.clone(), b.clone()),
        br(br(c.clone(), d.clone(), a), e.clone(), b),
        br(d, e, c),
    ]);
    (lhs, rhs)
}

/// `[{a,o,c}, {a,o,o}, o, {o,o,c}, b]`
pub fn strengthened_bracket(a: Expr, b: Expr, c: Expr, o: &Expr) -> Expr {
    Expr::heap(vec![
        Expr::bracket(a.clone(), o.clone(), c.clone()),
        Expr::bracket(a, o.clone(), o.clone()),
        o.clone(),
        Expr::bracket(o.clone(), o.clone(), c),
        b,
    ])
}
