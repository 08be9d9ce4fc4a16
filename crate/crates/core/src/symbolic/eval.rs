use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::normal::FreeElement;
use super::Expr;
use crate::group::AbelianGroup;
use crate::heap::FiniteHeap;
use crate::lie::LieTernary;
use crate::search::{enumerate_trusses, SearchKind, SearchSpec};
use crate::truss::TrussStructure;
use crate::{Elem, Error, Result};

pub const MAX_FALSIFY_VARS: usize = 8;

/// A finite model for evaluating expressions. Brackets use `bracket` when
/// present and otherwise the commutator of `truss`.
#[derive(Clone, Copy, Debug)]
pub struct Interpretation<'a> {
    pub heap: &'a FiniteHeap,
    pub truss: Option<&'a TrussStructure>,
    pub bracket: Option<&'a LieTernary>,
}

impl<'a> Interpretation<'a> {
    pub fn heap(heap: &'a FiniteHeap) -> Self {
        Interpretation {
            heap,
            truss: None,
            bracket: None,
        }
    }

    pub fn truss(t: &'a TrussStructure) -> Self {
        Interpretation {
            heap: t.heap(),
            truss: Some(t),
            bracket: None,
        }
    }

    fn mul(&self, a: Elem, b: Elem) -> Result<Elem> {
        self.truss
            .map(|t| t.mul(a, b))
            .ok_or_else(|| Error::TheoryMismatch("multiplication in a heap model".into()))
    }
}

fn lookup(env: &BTreeMap<String, Elem>, name: &str) -> Result<Elem> {
    env.get(name)
        .copied()
        .ok_or_else(|| Error::Format(format!("variable '{name}' is unassigned")))
}

/// Direct evaluation of the tree.
pub fn eval(e: &Expr, m: &Interpretation, env: &BTreeMap<String, Elem>) -> Result<Elem> {
    match e {
        Expr::Var(v) => lookup(env, v),
        Expr::HeapOp(xs) => {
            let vals = xs
                .iter()
                .map(|x| eval(x, m, env))
                .collect::<Result<Vec<_>>>()?;
            m.heap.eval_word(&vals)
        }
        Expr::Mul(a, b) => m.mul(eval(a, m, env)?, eval(b, m, env)?),
        Expr::Bracket3(a, b, c) => {
            let (a, b, c) = (eval(a, m, env)?, eval(b, m, env)?, eval(c, m, env)?);
            match m.bracket {
                Some(l) => Ok(l.bracket(a, b, c)),
                None => Ok(m.heap.bracket(m.mul(a, c)?, m.mul(c, a)?, b)),
            }
        }
    }
}

/// Evaluates a normal form as the affine combination `Σ c_w · w` in the
/// model's group; the result does not depend on the basepoint since the
/// coefficients sum to one.
pub fn eval_normal_form(
    nf: &FreeElement,
    m: &Interpretation,
    env: &BTreeMap<String, Elem>,
) -> Result<Elem> {
    let g = m.heap.group();
    let exponent = BigInt::from(g.exponent());
    let mut acc = g.zero();
    for (word, c) in nf.coeffs() {
        let mut value = lookup(env, &word.0[0])?;
        for gen in &word.0[1..] {
            value = m.mul(value, lookup(env, gen)?)?;
        }
        let k = c
            .mod_floor(&exponent)
            .to_i64()
            .expect("reduced below group exponent");
        acc = g.add(acc, g.times(k, value));
    }
    Ok(acc)
}

/// A finite truss and assignment on which two expressions differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub model: TrussStructure,
    pub assignment: BTreeMap<String, Elem>,
    pub lhs: Elem,
    pub rhs: Elem,
}

/// Fixed pool of small trusses: every truss on Z2, Z3, Z4 and Z2xZ2, the
/// rings Z5..Z8 and the upper triangular 2x2 matrices over F2.
pub fn sample_pool() -> &'static [TrussStructure] {
    static POOL: OnceLock<Vec<TrussStructure>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut pool = Vec::new();
        for orders in [&[2][..], &[3], &[4], &[2, 2]] {
            let group = AbelianGroup::cyclic_product(orders).expect("small group");
            pool.extend(
                enumerate_trusses(&SearchSpec::new(group, SearchKind::Truss))
                    .expect("small search"),
            );
        }
        for n in 5..=8 {
            pool.push(TrussStructure::ring_zn(n).expect("small ring"));
        }
        pool.push(TrussStructure::upper_triangular_f2());
        pool
    })
}

/// Evaluates both sides under `samples` random (truss, assignment) pairs
/// drawn from [`sample_pool`]. Brackets are read as truss commutators.
pub fn random_falsify(
    lhs: &Expr,
    rhs: &Expr,
    samples: usize,
    seed: u64,
) -> Result<Option<Counterexample>> {
    let mut names = lhs.variables();
    for v in rhs.variables() {
        if !names.contains(&v) {
            names.push(v);
        }
    }
    if names.len() > MAX_FALSIFY_VARS {
        return Err(Error::LimitExceeded(format!(
            "random refutation supports at most {MAX_FALSIFY_VARS} variables, got {}",
            names.len()
        )));
    }
    let pool = sample_pool();
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..samples {
        let t = &pool[rng.gen_range(0..pool.len())];
        let env: BTreeMap<String, Elem> = names
            .iter()
            .map(|v| (v.clone(), rng.gen_range(0..t.size())))
            .collect();
        let m = Interpretation::truss(t);
        let (l, r) = (eval(lhs, &m, &env)?, eval(rhs, &m, &env)?);
        if l != r {
            return Ok(Some(Counterexample {
                model: t.clone(),
                assignment: env,
                lhs: l,
                rhs: r,
            }));
        }
    }
    Ok(None)
}
