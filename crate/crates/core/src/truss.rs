//! Trusses: an associative multiplication distributing over the heap
//! operation from both sides, plus derivations.

use std::ops::ControlFlow;

use crate::group::AbelianGroup;
use crate::heap::{check_element_map, heap_from_group, FiniteHeap};
use crate::report::{sweep, ReportMode, ViolationReport};
use crate::{Elem, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrussStructure {
    heap: FiniteHeap,
    mul: Vec<Elem>,
}

impl TrussStructure {
    /// Wraps a multiplication table without validating it.
    pub fn new(heap: FiniteHeap, mul: Vec<Elem>) -> Result<Self> {
        let n = heap.size();
        if mul.len() != n * n {
            return Err(Error::SizeMismatch {
                what: "multiplication table",
                expected: n * n,
                found: mul.len(),
            });
        }
        if let Some(&e) = mul.iter().find(|&&e| e >= n) {
            return Err(Error::OutOfRange {
                element: e,
                size: n,
            });
        }
        Ok(TrussStructure { heap, mul })
    }

    pub fn from_fn(heap: FiniteHeap, f: impl Fn(Elem, Elem) -> Elem) -> Result<Self> {
        let n = heap.size();
        let mul = (0..n * n).map(|i| f(i / n, i % n)).collect();
        Self::new(heap, mul)
    }

    /// `a * b = k` for every pair.
    pub fn constant(heap: FiniteHeap, k: Elem) -> Result<Self> {
        heap.check(k)?;
        Self::from_fn(heap, |_, _| k)
    }

    /// The group operation used as multiplication, `a * b = a + b`.
    pub fn additive(group: AbelianGroup) -> Result<Self> {
        let g = group.clone();
        Self::from_fn(heap_from_group(group), move |a, b| g.add(a, b))
    }

    /// `Z_n` with its ring multiplication.
    pub fn ring_zn(n: usize) -> Result<Self> {
        Self::from_fn(FiniteHeap::cyclic_product(&[n])?, |a, b| (a * b) % n)
    }

    /// Upper-triangular 2x2 matrices over `F_2`. The element with digits
    /// `(x, y, z)` is the matrix `[[x, y], [0, z]]`.
    pub fn upper_triangular_f2() -> Self {
        let heap = FiniteHeap::cyclic_product(&[2, 2, 2]).expect("Z2^3");
        Self::from_fn(heap, |a, b| {
            let (x, y, z) = ut2_digits(a);
            let (x2, y2, z2) = ut2_digits(b);
            ut2_encode(x & x2, (x & y2) ^ (y & z2), z & z2)
        })
        .expect("table in range")
    }

    pub fn heap(&self) -> &FiniteHeap {
        &self.heap
    }

    pub fn size(&self) -> usize {
        self.heap.size()
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.heap.size() + b]
    }

    pub fn mul_table(&self) -> &[Elem] {
        &self.mul
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Early-exit associativity test.
    pub fn is_associative(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.mul(a, b);
                (0..n).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
            })
        })
    }
}

pub(crate) fn ut2_digits(a: Elem) -> (usize, usize, usize) {
    ((a >> 2) & 1, (a >> 1) & 1, a & 1)
}

pub(crate) fn ut2_encode(x: usize, y: usize, z: usize) -> Elem {
    (x << 2) | (y << 1) | z
}

/// Associativity (`n^3`) and two-sided distributivity (`n^4`).
pub fn validate_truss(t: &TrussStructure, mode: ReportMode) -> ViolationReport {
    let n = t.size();
    let h = &t.heap;
    let m = |a, b| t.mul(a, b);
    sweep(mode, |r| {
        for a in 0..n {
            for b in 0..n {
                let ab = m(a, b);
                for c in 0..n {
                    r.expect_eq("mul_assoc", &[a, b, c], m(ab, c), m(a, m(b, c)))?;
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        r.expect_eq(
                            "left_distrib",
                            &[a, b, c, d],
                            m(a, h.bracket(b, c, d)),
                            h.bracket(m(a, b), m(a, c), m(a, d)),
                        )?;
                        r.expect_eq(
                            "right_distrib",
                            &[a, b, c, d],
                            m(h.bracket(a, b, c), d),
                            h.bracket(m(a, d), m(b, d), m(c, d)),
                        )?;
                    }
                }
            }
        }
        ControlFlow::Continue(())
    })
}

/// Builds the truss of a ring: `mul` must be associative and biadditive.
pub fn truss_from_ring(group: AbelianGroup, mul: Vec<Elem>) -> Result<TrussStructure> {
    let t = TrussStructure::new(heap_from_group(group), mul)?;
    let g = t.heap.group().clone();
    let n = t.size();
    let report = sweep(ReportMode::First, |r| {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    r.expect_eq(
                        "biadditive_left",
                        &[a, b, c],
                        t.mul(a, g.add(b, c)),
                        g.add(t.mul(a, b), t.mul(a, c)),
                    )?;
                    r.expect_eq(
                        "biadditive_right",
                        &[a, b, c],
                        t.mul(g.add(a, b), c),
                        g.add(t.mul(a, c), t.mul(b, c)),
                    )?;
                    r.expect_eq(
                        "mul_assoc",
                        &[a, b, c],
                        t.mul(t.mul(a, b), c),
                        t.mul(a, t.mul(b, c)),
                    )?;
                }
            }
        }
        ControlFlow::Continue(())
    });
    report.into_result()?;
    Ok(t)
}

/// A self-map of a truss carrier, candidate for the Leibniz rule.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Derivation(pub Vec<Elem>);

impl Derivation {
    pub fn identity(n: usize) -> Self {
        Derivation((0..n).collect())
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.0[a]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Derivation) -> Derivation {
        Derivation(other.0.iter().map(|&x| self.0[x]).collect())
    }
}

/// Heap endomorphism plus `D(ab) = [D(a)b, ab, aD(b)]`.
pub fn validate_derivation(
    d: &[Elem],
    t: &TrussStructure,
    mode: ReportMode,
) -> Result<ViolationReport> {
    let n = t.size();
    check_element_map(d, n, n)?;
    let h = &t.heap;
    let hom = crate::heap::validate_heap_hom(d, h, h, mode)?;
    if !hom.ok && mode == ReportMode::First {
        return Ok(hom);
    }
    let leibniz = sweep(mode, |r| {
        for a in 0..n {
            for b in 0..n {
                let ab = t.mul(a, b);
                r.expect_eq(
                    "leibniz",
                    &[a, b],
                    d[ab],
                    h.bracket(t.mul(d[a], b), ab, t.mul(a, d[b])),
                )?;
            }
        }
        ControlFlow::Continue(())
    });
    Ok(hom.merge(leibniz))
}
