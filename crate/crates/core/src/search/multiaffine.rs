//! Parametrization of maps `G^k -> G` that are affine in each argument
//! separately, for `G` a cyclic product with generators `e_1..e_r`.
//!
//! Every such map is uniquely a sum over subsets `S` of the argument slots of
//! a multi-additive part on the slots in `S`:
//!
//! `T(x) = Σ_S Σ_{i: S -> gens} (Π_{s∈S} digit_{i(s)}(x_s)) · c_{S,i}`
//!
//! where `c_{S,i}` ranges over the elements killed by the gcd of the orders
//! of the generators it multiplies (no constraint when `S` is empty).

use crate::group::AbelianGroup;
use crate::{Elem, Error, Result};

/// One coefficient `c_{S,i}` of the expansion.
#[derive(Clone, Debug)]
pub struct Param {
    /// Bitmask of the argument slots in `S`.
    pub slots: u32,
    /// Generator index for each slot in `S`, in slot order.
    pub gens: Vec<usize>,
    /// Admissible values of the coefficient.
    pub allowed: Vec<Elem>,
    /// Integer monomial value at every argument tuple (row-major).
    pub monomial: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct MultiAffine {
    pub group: AbelianGroup,
    pub arity: usize,
    pub params: Vec<Param>,
    /// `contrib[p][v]` is the table of `monomial_p · allowed_p[v]`.
    contrib: Vec<Vec<Vec<Elem>>>,
}

impl MultiAffine {
    /// Parametrizes maps whose expansion only uses subsets accepted by
    /// `keep_subset` (e.g. only `{0,1}` for biadditive maps).
    pub fn new(
        group: &AbelianGroup,
        arity: usize,
        keep_subset: impl Fn(u32) -> bool,
    ) -> Result<Self> {
        let orders = group
            .orders()
            .ok_or_else(|| Error::InvalidGroup("search needs a cyclic-product group".into()))?
            .to_vec();
        let n = group.order();
        let r = orders.len();
        let cells = n.pow(arity as u32);
        let digits: Vec<Vec<usize>> = (0..n).map(|x| group.digits(x).unwrap()).collect();

        let mut params = Vec::new();
        for slots in 0u32..(1 << arity) {
            if !keep_subset(slots) {
                continue;
            }
            let members: Vec<usize> = (0..arity).filter(|s| slots & (1 << s) != 0).collect();
            let combos = r.pow(members.len() as u32);
            for code in 0..combos {
                let mut gens = Vec::with_capacity(members.len());
                let mut c = code;
                for _ in &members {
                    gens.push(c % r);
                    c /= r;
                }
                gens.reverse();
                let killer = gens
                    .iter()
                    .fold(0usize, |acc, &i| num_integer::gcd(acc, orders[i]));
                let allowed = if gens.is_empty() {
                    (0..n).collect()
                } else {
                    group.torsion(killer)
                };
                let monomial = (0..cells)
                    .map(|cell| {
                        let args = unflatten(cell, n, arity);
                        members
                            .iter()
                            .zip(&gens)
                            .map(|(&s, &i)| digits[args[s]][i] as u32)
                            .product()
                    })
                    .collect();
                params.push(Param {
                    slots,
                    gens,
                    allowed,
                    monomial,
                });
            }
        }
        let contrib = params
            .iter()
            .map(|p| {
                p.allowed
                    .iter()
                    .map(|&c| {
                        p.monomial
                            .iter()
                            .map(|&m| group.times(m as i64, c))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(MultiAffine {
            group: group.clone(),
            arity,
            params,
            contrib,
        })
    }

    /// Number of parameter choices, or `None` on overflow.
    pub fn candidate_count(&self) -> Option<u128> {
        self.params
            .iter()
            .try_fold(1u128, |acc, p| acc.checked_mul(p.allowed.len() as u128))
    }

    pub fn cells(&self) -> usize {
        self.group.order().pow(self.arity as u32)
    }

    /// Decodes a candidate index into per-parameter value indices (last
    /// parameter least significant).
    pub fn decode(&self, mut index: u128) -> Vec<usize> {
        let mut choice = vec![0; self.params.len()];
        for (p, slot) in self.params.iter().zip(choice.iter_mut()).rev() {
            let k = p.allowed.len() as u128;
            *slot = (index % k) as usize;
            index /= k;
        }
        choice
    }

    /// Builds the table for explicit coefficient values.
    pub fn table_for_values(&self, values: &[Elem]) -> Vec<Elem> {
        let g = &self.group;
        let mut table = vec![g.zero(); self.cells()];
        for (p, &c) in self.params.iter().zip(values) {
            for (cell, &m) in table.iter_mut().zip(&p.monomial) {
                *cell = g.add(*cell, g.times(m as i64, c));
            }
        }
        table
    }

    /// Visits the tables of candidates `start..end` in index order. The
    /// callback receives the candidate index and the table.
    pub fn for_each_in_range(&self, start: u128, end: u128, mut visit: impl FnMut(u128, &[Elem])) {
        if start >= end {
            return;
        }
        let g = &self.group;
        let cells = self.cells();
        let depth = self.params.len();
        let mut choice = self.decode(start);
        // prefix[l] is the sum of the contributions of params 0..l
        let mut prefix = vec![vec![g.zero(); cells]; depth + 1];
        let rebuild = |prefix: &mut Vec<Vec<Elem>>, choice: &[usize], from: usize| {
            for l in from..depth {
                let (lower, upper) = prefix.split_at_mut(l + 1);
                let src = &lower[l];
                let dst = &mut upper[0];
                let add = &self.contrib[l][choice[l]];
                for ((d, &s), &a) in dst.iter_mut().zip(src).zip(add) {
                    *d = g.add(s, a);
                }
            }
        };
        rebuild(&mut prefix, &choice, 0);
        let mut index = start;
        loop {
            visit(index, &prefix[depth]);
            index += 1;
            if index >= end {
                break;
            }
            // odometer increment
            let mut l = depth;
            loop {
                l -= 1;
                choice[l] += 1;
                if choice[l] < self.params[l].allowed.len() {
                    break;
                }
                choice[l] = 0;
            }
            rebuild(&mut prefix, &choice, l);
        }
    }
}

pub(crate) fn unflatten(mut cell: usize, n: usize, arity: usize) -> Vec<usize> {
    let mut args = vec![0; arity];
    for slot in args.iter_mut().rev() {
        *slot = cell % n;
        cell /= n;
    }
    args
}
