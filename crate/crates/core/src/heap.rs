//! Abelian heaps: the ternary operation `[a,b,c]`, retracts, and validators.

use std::ops::ControlFlow;

use crate::group::AbelianGroup;
use crate::report::{sweep, ReportMode, ViolationReport};
use crate::{Elem, Error, Result};

/// Largest carrier for the five-variable sweeps.
pub const MAX_SWEEP5: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    FromGroup,
    FromTable,
}

/// A raw `n^3` ternary table, row-major with index `(i*n + j)*n + k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryTable {
    n: usize,
    entries: Vec<Elem>,
}

impl TernaryTable {
    pub fn new(n: usize, entries: Vec<Elem>) -> Result<Self> {
        if n == 0 || n > crate::group::MAX_CARRIER {
            return Err(Error::LimitExceeded(format!(
                "table carrier {n} outside 1..={}",
                crate::group::MAX_CARRIER
            )));
        }
        if entries.len() != n * n * n {
            return Err(Error::SizeMismatch {
                what: "ternary table",
                expected: n * n * n,
                found: entries.len(),
            });
        }
        if let Some(&e) = entries.iter().find(|&&e| e >= n) {
            return Err(Error::OutOfRange {
                element: e,
                size: n,
            });
        }
        Ok(TernaryTable { n, entries })
    }

    /// Size of the carrier when `len` is a perfect cube.
    pub fn cube_root(len: usize) -> Option<usize> {
        (1..=crate::group::MAX_CARRIER).find(|n| n * n * n == len)
    }

    pub fn from_fn(n: usize, f: impl Fn(Elem, Elem, Elem) -> Elem) -> Result<Self> {
        let mut entries = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    entries.push(f(a, b, c));
                }
            }
        }
        Self::new(n, entries)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: Elem, b: Elem, c: Elem) -> Elem {
        self.entries[(a * self.n + b) * self.n + c]
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Elem> {
        self.entries
    }
}

/// A finite abelian heap, stored as the abelian group it retracts to at
/// `basepoint`. The ternary operation is `a - b + c` in that group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteHeap {
    group: AbelianGroup,
    basepoint: Elem,
    provenance: Provenance,
}

/// The group heap with `[a,b,c] = a - b + c`.
pub fn heap_from_group(group: AbelianGroup) -> FiniteHeap {
    let basepoint = group.zero();
    FiniteHeap {
        group,
        basepoint,
        provenance: Provenance::FromGroup,
    }
}

impl FiniteHeap {
    pub fn cyclic_product(orders: &[usize]) -> Result<Self> {
        Ok(heap_from_group(AbelianGroup::cyclic_product(orders)?))
    }

    /// Validates a raw table as an abelian heap and retracts it at element 0.
    pub fn from_table(table: &TernaryTable) -> Result<Self> {
        validate_heap(table, ReportMode::First)?.into_result()?;
        let n = table.size();
        let add = (0..n * n).map(|i| table.get(i / n, 0, i % n)).collect();
        Ok(FiniteHeap {
            group: AbelianGroup::from_add_table(n, add)?,
            basepoint: 0,
            provenance: Provenance::FromTable,
        })
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.group.order()
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn basepoint(&self) -> Elem {
        self.basepoint
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    #[inline]
    pub fn bracket(&self, a: Elem, b: Elem, c: Elem) -> Elem {
        let g = &self.group;
        g.add(g.sub(a, b), c)
    }

    pub fn check(&self, a: Elem) -> Result<()> {
        self.group.check(a)
    }

    /// `a + b` in the retract at `o`.
    #[inline]
    pub fn plus_at(&self, o: Elem, a: Elem, b: Elem) -> Elem {
        self.bracket(a, o, b)
    }

    /// `a - b` in the retract at `o`.
    #[inline]
    pub fn minus_at(&self, o: Elem, a: Elem, b: Elem) -> Elem {
        self.bracket(a, b, o)
    }

    /// The retract at `o`: `a + b = [a,o,b]`, identity `o`, `-a = [o,a,o]`.
    pub fn retract_at(&self, o: Elem) -> Result<AbelianGroup> {
        self.check(o)?;
        if o == self.group.zero() {
            return Ok(self.group.clone());
        }
        let n = self.size();
        let add = (0..n * n).map(|i| self.bracket(i / n, o, i % n)).collect();
        AbelianGroup::from_add_table(n, add)
    }

    /// Value of an odd-length heap word, folding from the left.
    pub fn eval_word(&self, word: &[Elem]) -> Result<Elem> {
        if word.len() % 2 == 0 {
            return Err(Error::EvenArity(word.len()));
        }
        for &x in word {
            self.check(x)?;
        }
        Ok(word[1..]
            .chunks(2)
            .fold(word[0], |acc, pair| self.bracket(acc, pair[0], pair[1])))
    }

    pub fn to_table(&self) -> TernaryTable {
        TernaryTable::from_fn(self.size(), |a, b, c| self.bracket(a, b, c))
            .expect("heap carrier within limits")
    }

    /// Checks that `f` is a heap homomorphism into `target` by testing
    /// `f([x,0,y]) = [f x, f 0, f y]`, which is equivalent to the full triple
    /// condition on group heaps. Witness is `[x, 0, y]`.
    pub(crate) fn hom_check_fast(
        &self,
        target: &FiniteHeap,
        f: impl Fn(Elem) -> Elem,
        mut on_fail: impl FnMut(&[Elem], Elem, Elem) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let z = self.group.zero();
        let fz = f(z);
        for x in 0..self.size() {
            let fx = f(x);
            for y in 0..self.size() {
                let lhs = f(self.bracket(x, z, y));
                let rhs = target.bracket(fx, fz, f(y));
                if lhs != rhs {
                    on_fail(&[x, z, y], lhs, rhs)?;
                }
            }
        }
        ControlFlow::Continue(())
    }

    /// Fast heap-homomorphism predicate, see [`FiniteHeap::hom_check_fast`].
    pub fn is_hom(&self, target: &FiniteHeap, f: impl Fn(Elem) -> Elem) -> bool {
        self.hom_check_fast(target, f, |_, _, _| ControlFlow::Break(()))
            .is_continue()
    }
}

/// Exhaustively checks the heap axioms on a raw table.
pub fn validate_heap(table: &TernaryTable, mode: ReportMode) -> Result<ViolationReport> {
    let n = table.size();
    if n > MAX_SWEEP5 {
        return Err(Error::LimitExceeded(format!(
            "heap associativity sweep limited to {MAX_SWEEP5} elements, got {n}"
        )));
    }
    let t = |a, b, c| table.get(a, b, c);
    Ok(sweep(mode, |r| {
        for a in 0..n {
            for b in 0..n {
                r.expect_eq("malcev", &[a, b], t(a, b, b), a)?;
                r.expect_eq("malcev", &[b, a], t(b, b, a), a)?;
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    r.expect_eq("heap_sym", &[a, b, c], t(a, b, c), t(c, b, a))?;
                }
            }
        }
        for a1 in 0..n {
            for a2 in 0..n {
                for a3 in 0..n {
                    let left = t(a1, a2, a3);
                    for a4 in 0..n {
                        for a5 in 0..n {
                            r.expect_eq(
                                "heap_assoc",
                                &[a1, a2, a3, a4, a5],
                                t(a1, a2, t(a3, a4, a5)),
                                t(left, a4, a5),
                            )?;
                        }
                    }
                }
            }
        }
        ControlFlow::Continue(())
    }))
}

fn check_map(f: &[Elem], domain: usize, codomain: usize) -> Result<()> {
    if f.len() != domain {
        return Err(Error::SizeMismatch {
            what: "element map",
            expected: domain,
            found: f.len(),
        });
    }
    if let Some(&e) = f.iter().find(|&&e| e >= codomain) {
        return Err(Error::OutOfRange {
            element: e,
            size: codomain,
        });
    }
    Ok(())
}

pub(crate) fn check_element_map(f: &[Elem], domain: usize, codomain: usize) -> Result<()> {
    check_map(f, domain, codomain)
}

/// Checks `f([a,b,c]) = [f(a),f(b),f(c)]` over all triples.
pub fn validate_heap_hom(
    f: &[Elem],
    source: &FiniteHeap,
    target: &FiniteHeap,
    mode: ReportMode,
) -> Result<ViolationReport> {
    check_map(f, source.size(), target.size())?;
    let n = source.size();
    Ok(sweep(mode, |r| {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    r.expect_eq(
                        "heap_hom",
                        &[a, b, c],
                        f[source.bracket(a, b, c)],
                        target.bracket(f[a], f[b], f[c]),
                    )?;
                }
            }
        }
        ControlFlow::Continue(())
    }))
}
