//! Endomorphisms and automorphisms of cyclic-product groups, and the heap
//! automorphisms `x ↦ g(x) + t` built from them.

use crate::group::AbelianGroup;
use crate::{Elem, Error, Result};

/// All additive maps `G -> G`, as image tables, in order of generator images.
pub fn endomorphisms(group: &AbelianGroup) -> Result<Vec<Vec<Elem>>> {
    let orders = group
        .orders()
        .ok_or_else(|| Error::InvalidGroup("endomorphisms need a cyclic-product group".into()))?;
    let n = group.order();
    let choices: Vec<Vec<Elem>> = orders.iter().map(|&o| group.torsion(o)).collect();
    let digits: Vec<Vec<usize>> = (0..n).map(|x| group.digits(x).unwrap()).collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; orders.len()];
    loop {
        let images: Vec<Elem> = pick.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        let map = (0..n)
            .map(|x| {
                digits[x]
                    .iter()
                    .zip(&images)
                    .fold(group.zero(), |acc, (&d, &img)| {
                        group.add(acc, group.times(d as i64, img))
                    })
            })
            .collect();
        out.push(map);
        // odometer over generator images, last generator fastest
        let mut l = pick.len();
        loop {
            if l == 0 {
                return Ok(out);
            }
            l -= 1;
            pick[l] += 1;
            if pick[l] < choices[l].len() {
                break;
            }
            pick[l] = 0;
        }
    }
}

/// Bijective endomorphisms.
pub fn automorphisms(group: &AbelianGroup) -> Result<Vec<Vec<Elem>>> {
    let n = group.order();
    Ok(endomorphisms(group)?
        .into_iter()
        .filter(|m| {
            let mut seen = vec![false; n];
            m.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
        })
        .collect())
}

/// A heap automorphism together with its inverse.
#[derive(Clone, Debug)]
pub struct Relabeling {
    pub forward: Vec<Elem>,
    pub inverse: Vec<Elem>,
}

/// All maps `x ↦ g(x) + t` with `g` an automorphism.
pub fn heap_automorphisms(group: &AbelianGroup, limit: usize) -> Result<Vec<Relabeling>> {
    let auts = automorphisms(group)?;
    let n = group.order();
    if auts.len() * n > limit {
        return Err(Error::LimitExceeded(format!(
            "{} heap automorphisms exceed the limit {limit}",
            auts.len() * n
        )));
    }
    let mut out = Vec::with_capacity(auts.len() * n);
    for g in &auts {
        for t in 0..n {
            let forward: Vec<Elem> = g.iter().map(|&x| group.add(x, t)).collect();
            let mut inverse = vec![0; n];
            for (x, &y) in forward.iter().enumerate() {
                inverse[y] = x;
            }
            out.push(Relabeling { forward, inverse });
        }
    }
    Ok(out)
}
