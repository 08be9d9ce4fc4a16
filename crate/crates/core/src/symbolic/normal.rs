use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::Expr;
use crate::{Error, Result};

/// Which free theory a normal form lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theory {
    FreeHeap,
    FreeTruss,
}

/// A nonempty word of generators, ordered by length and then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<String>);

impl Word {
    pub fn generator(name: &str) -> Word {
        Word(vec![name.to_string()])
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.iter().all(|g| g.len() == 1) {
            ""
        } else {
            "*"
        };
        f.write_str(&self.0.join(sep))
    }
}

/// Integer combination of basis words with coefficient sum one; zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeElement {
    theory: Theory,
    coeffs: BTreeMap<Word, BigInt>,
}

impl FreeElement {
    pub fn generator(theory: Theory, name: &str) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(Word::generator(name), BigInt::one());
        FreeElement { theory, coeffs }
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn coeffs(&self) -> &BTreeMap<Word, BigInt> {
        &self.coeffs
    }

    pub fn coefficient(&self, word: &Word) -> BigInt {
        self.coeffs.get(word).cloned().unwrap_or_default()
    }

    pub fn coefficient_sum(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Alternating sum `x₁ − x₂ + x₃ − …` of an odd number of elements.
    pub fn heap_combination(theory: Theory, parts: &[FreeElement]) -> Result<Self> {
        if parts.len() % 2 == 0 {
            return Err(Error::EvenArity(parts.len()));
        }
        let mut coeffs: BTreeMap<Word, BigInt> = BTreeMap::new();
        for (i, part) in parts.iter().enumerate() {
            for (w, c) in &part.coeffs {
                let slot = coeffs.entry(w.clone()).or_default();
                if i % 2 == 0 {
                    *slot += c;
                } else {
                    *slot -= c;
                }
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(FreeElement { theory, coeffs })
    }

    /// Bilinear product of two combinations; only meaningful in the free truss.
    pub fn multiply(&self, other: &FreeElement) -> Result<Self> {
        if self.theory != Theory::FreeTruss || other.theory != Theory::FreeTruss {
            return Err(Error::TheoryMismatch(
                "multiplication outside the free truss".into(),
            ));
        }
        let mut coeffs: BTreeMap<Word, BigInt> = BTreeMap::new();
        for (u, x) in &self.coeffs {
            for (v, y) in &other.coeffs {
                *coeffs.entry(u.concat(v)).or_default() += x * y;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(FreeElement {
            theory: Theory::FreeTruss,
            coeffs,
        })
    }

    /// `self − other`, coefficientwise, without the zero entries.
    pub fn diff(&self, other: &FreeElement) -> BTreeMap<Word, BigInt> {
        let mut out = self.coeffs.clone();
        for (w, c) in &other.coeffs {
            *out.entry(w.clone()).or_default() -= c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_coeffs(f, &self.coeffs)
    }
}

pub(crate) fn write_coeffs(
    f: &mut fmt::Formatter<'_>,
    coeffs: &BTreeMap<Word, BigInt>,
) -> fmt::Result {
    f.write_str("{")?;
    for (i, (w, c)) in coeffs.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{w}:{c}")?;
    }
    f.write_str("}")
}

/// Normal form in the free abelian heap: the alternating sum of leaves.
pub fn normalize_free_heap(e: &Expr) -> Result<FreeElement> {
    normalize(e, Theory::FreeHeap)
}

/// Normal form in the free truss: integer combination of semigroup words.
pub fn normalize_free_truss(e: &Expr) -> Result<FreeElement> {
    normalize(e, Theory::FreeTruss)
}

pub fn normalize(e: &Expr, theory: Theory) -> Result<FreeElement> {
    match e {
        Expr::Var(v) => Ok(FreeElement::generator(theory, v)),
        Expr::HeapOp(xs) => {
            let parts = xs
                .iter()
                .map(|x| normalize(x, theory))
                .collect::<Result<Vec<_>>>()?;
            FreeElement::heap_combination(theory, &parts)
        }
        Expr::Mul(a, b) => {
            if theory == Theory::FreeHeap {
                return Err(Error::TheoryMismatch(format!(
                    "multiplication '{e}' in a free-heap expression"
                )));
            }
            normalize(a, theory)?.multiply(&normalize(b, theory)?)
        }
        Expr::Bracket3(..) => Err(Error::TheoryMismatch(format!(
            "unexpanded bracket '{e}'; expand the Lie macro first"
        ))),
    }
}
