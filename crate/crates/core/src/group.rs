//! Finite abelian groups, either as a direct product of cyclic groups with
//! mixed-radix element codes, or as a validated addition table.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Elem, Error, Result};

/// Largest carrier any structure in this crate is built on.
pub const MAX_CARRIER: usize = 64;

/// A finite abelian group on the carrier `0..n`.
///
/// Elements of a cyclic product `Z_{o_1} x ... x Z_{o_k}` are encoded in
/// mixed radix with the first factor most significant, so that numeric order
/// agrees with lexicographic order of digit tuples.
#[derive(Clone)]
pub struct AbelianGroup {
    orders: Option<Vec<usize>>,
    n: usize,
    zero: Elem,
    add: Vec<Elem>,
    neg: Vec<Elem>,
}

/// Two groups are equal when they have the same carrier and addition.
impl PartialEq for AbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.zero == other.zero && self.add == other.add
    }
}

impl Eq for AbelianGroup {}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.orders {
            Some(orders) => write!(f, "AbelianGroup({})", spec_string(orders)),
            None => write!(f, "AbelianGroup(table, n={}, zero={})", self.n, self.zero),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub orders: Vec<usize>,
}

/// Formats cyclic factor orders as `Z2xZ2`.
pub fn spec_string(orders: &[usize]) -> String {
    orders
        .iter()
        .map(|o| format!("Z{o}"))
        .collect::<Vec<_>>()
        .join("x")
}

/// Parses `Z4`, `Z2xZ2`, `Z2+Z3` style group descriptions.
pub fn parse_group_spec(text: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidGroup(format!("cannot parse group spec {text:?}"));
    let mut orders = Vec::new();
    for part in text.split(['x', 'X', '+']) {
        let part = part.trim();
        let digits = part
            .strip_prefix('Z')
            .or_else(|| part.strip_prefix('z'))
            .ok_or_else(bad)?;
        orders.push(digits.parse::<usize>().map_err(|_| bad())?);
    }
    if orders.is_empty() {
        return Err(bad());
    }
    Ok(orders)
}

impl AbelianGroup {
    pub fn cyclic(n: usize) -> Result<Self> {
        Self::cyclic_product(&[n])
    }

    pub fn cyclic_product(orders: &[usize]) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::InvalidGroup("no cyclic factors".into()));
        }
        if let Some(o) = orders.iter().find(|&&o| o < 2) {
            return Err(Error::InvalidGroup(format!("cyclic factor of order {o}")));
        }
        let n = orders
            .iter()
            .try_fold(1usize, |acc, &o| acc.checked_mul(o))
            .filter(|&n| n <= MAX_CARRIER)
            .ok_or_else(|| {
                Error::LimitExceeded(format!(
                    "group {} exceeds the carrier limit {MAX_CARRIER}",
                    spec_string(orders)
                ))
            })?;
        let digits: Vec<Vec<usize>> = (0..n).map(|x| to_digits(orders, x)).collect();
        let mut add = vec![0; n * n];
        let mut neg = vec![0; n];
        for a in 0..n {
            for b in 0..n {
                let sum: Vec<usize> = digits[a]
                    .iter()
                    .zip(&digits[b])
                    .zip(orders)
                    .map(|((x, y), o)| (x + y) % o)
                    .collect();
                add[a * n + b] = from_digits(orders, &sum);
            }
            let inv: Vec<usize> = digits[a]
                .iter()
                .zip(orders)
                .map(|(x, o)| (o - x) % o)
                .collect();
            neg[a] = from_digits(orders, &inv);
        }
        Ok(AbelianGroup {
            orders: Some(orders.to_vec()),
            n,
            zero: 0,
            add,
            neg,
        })
    }

    /// Builds a group from a raw addition table, validating all group axioms.
    pub fn from_add_table(n: usize, add: Vec<Elem>) -> Result<Self> {
        if n == 0 || n > MAX_CARRIER {
            return Err(Error::LimitExceeded(format!(
                "carrier size {n} outside 1..={MAX_CARRIER}"
            )));
        }
        if add.len() != n * n {
            return Err(Error::SizeMismatch {
                what: "addition table",
                expected: n * n,
                found: add.len(),
            });
        }
        if let Some(&e) = add.iter().find(|&&e| e >= n) {
            return Err(Error::OutOfRange {
                element: e,
                size: n,
            });
        }
        let at = |a: usize, b: usize| add[a * n + b];
        let zero = (0..n)
            .find(|&z| (0..n).all(|a| at(z, a) == a && at(a, z) == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                if at(a, b) != at(b, a) {
                    return Err(Error::InvalidGroup(format!("{a}+{b} != {b}+{a}")));
                }
                for c in 0..n {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "addition not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let mut neg = vec![0; n];
        for (a, slot) in neg.iter_mut().enumerate() {
            *slot = (0..n)
                .find(|&b| at(a, b) == zero)
                .ok_or_else(|| Error::InvalidGroup(format!("{a} has no inverse")))?;
        }
        Ok(AbelianGroup {
            orders: None,
            n,
            zero,
            add,
            neg,
        })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        self.zero
    }

    /// Cyclic factor orders, when the group was built as a cyclic product.
    pub fn orders(&self) -> Option<&[usize]> {
        self.orders.as_deref()
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.n + b]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg[b])
    }

    /// `k * a` for any integer `k`.
    pub fn times(&self, k: i64, a: Elem) -> Elem {
        let base = if k < 0 { self.neg(a) } else { a };
        let mut k = k.unsigned_abs() % self.exponent() as u64;
        let mut acc = self.zero;
        let mut pow = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, pow);
            }
            pow = self.add(pow, pow);
            k >>= 1;
        }
        acc
    }

    /// Additive order of `a`.
    pub fn element_order(&self, a: Elem) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.zero {
            x = self.add(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> usize {
        (0..self.n).fold(1, |acc, a| num_integer::lcm(acc, self.element_order(a)))
    }

    pub fn add_table(&self) -> &[Elem] {
        &self.add
    }

    pub fn check(&self, a: Elem) -> Result<()> {
        if a < self.n {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                element: a,
                size: self.n,
            })
        }
    }

    /// Mixed-radix digits of `a` (cyclic products only).
    pub fn digits(&self, a: Elem) -> Option<Vec<usize>> {
        self.orders.as_ref().map(|o| to_digits(o, a))
    }

    /// Canonical generators `e_i` (digit vector with a single 1) of a cyclic product.
    pub fn generators(&self) -> Option<Vec<Elem>> {
        let orders = self.orders.as_ref()?;
        Some(
            (0..orders.len())
                .map(|i| {
                    let mut d = vec![0; orders.len()];
                    d[i] = 1;
                    from_digits(orders, &d)
                })
                .collect(),
        )
    }

    /// Elements killed by `k`.
    pub fn torsion(&self, k: usize) -> Vec<Elem> {
        (0..self.n)
            .filter(|&a| self.times(k as i64, a) == self.zero)
            .collect()
    }

    /// True when every non-zero element has the same prime order `p`.
    pub fn elementary_prime(&self) -> Option<usize> {
        let orders = self.orders.as_ref()?;
        let p = orders[0];
        (crate::affine::is_prime(p) && orders.iter().all(|&o| o == p)).then_some(p)
    }
}

pub(crate) fn to_digits(orders: &[usize], mut x: usize) -> Vec<usize> {
    let mut d = vec![0; orders.len()];
    for i in (0..orders.len()).rev() {
        d[i] = x % orders[i];
        x /= orders[i];
    }
    d
}

pub(crate) fn from_digits(orders: &[usize], digits: &[usize]) -> usize {
    digits.iter().zip(orders).fold(0, |acc, (d, o)| acc * o + d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_radix_encoding() {
        let g = AbelianGroup::cyclic_product(&[2, 2]).unwrap();
        // (1,0) + (1,1) = (0,1)
        assert_eq!(g.add(2, 3), 1);
        assert_eq!(g.digits(3), Some(vec![1, 1]));
        assert_eq!(g.generators(), Some(vec![2, 1]));
    }

    #[test]
    fn cyclic_arithmetic() {
        let g = AbelianGroup::cyclic(4).unwrap();
        assert_eq!(g.add(3, 3), 2);
        assert_eq!(g.neg(1), 3);
        assert_eq!(g.times(-3, 1), 1);
        assert_eq!(g.exponent(), 4);
        assert_eq!(g.torsion(2), vec![0, 2]);
    }

    #[test]
    fn table_validation() {
        let g = AbelianGroup::cyclic(3).unwrap();
        let h = AbelianGroup::from_add_table(3, g.add_table().to_vec()).unwrap();
        assert_eq!(g, h);
        let bad = vec![0, 1, 2, 1, 1, 0, 2, 0, 1];
        assert!(AbelianGroup::from_add_table(3, bad).is_err());
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(parse_group_spec("Z2xZ2").unwrap(), vec![2, 2]);
        assert_eq!(parse_group_spec("Z4").unwrap(), vec![4]);
        assert!(parse_group_spec("Q8").is_err());
        assert!(AbelianGroup::cyclic_product(&[1]).is_err());
        assert!(AbelianGroup::cyclic_product(&[9, 9]).is_err());
    }

    #[test]
    fn elementary_detection() {
        assert_eq!(
            AbelianGroup::cyclic_product(&[3, 3])
                .unwrap()
                .elementary_prime(),
            Some(3)
        );
        assert_eq!(AbelianGroup::cyclic(4).unwrap().elementary_prime(), None);
    }
}
