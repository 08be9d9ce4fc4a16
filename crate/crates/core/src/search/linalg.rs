//! Exact solution of the linear Lie-bracket conditions over `F_p`.

use super::multiaffine::MultiAffine;
use crate::group::{from_digits, to_digits};
use crate::{Elem, Error, Result};

/// Row-reduces `rows` (each `cols` coefficients followed by `rhs` right-hand
/// sides) over `F_p` into reduced row-echelon form. Returns the pivot
/// columns; pivot rows come first.
fn row_reduce(rows: &mut [Vec<u32>], cols: usize, p: u32) -> Vec<usize> {
    let inv = |a: u32| {
        (1..p)
            .find(|x| (a * x) % p == 1)
            .expect("field element invertible")
    };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let s = inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = (*x * s) % p;
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p * p - f * y) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Tables of all tri-affine maps on an elementary abelian `p`-group that
/// satisfy `⟦a,b,a⟧ = b` and `[⟦a,b,c⟧, b, ⟦c,b,a⟧] = b`.
pub(crate) fn lie_linear_solutions(
    space: &MultiAffine,
    p: usize,
    budget: u128,
) -> Result<Vec<Vec<Elem>>> {
    let group = &space.group;
    let orders = group.orders().expect("cyclic product").to_vec();
    let r = orders.len();
    let n = group.order();
    let q = space.params.len();
    let pu = p as u32;
    let cell = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
    let digit = |x: usize, j: usize| to_digits(&orders, x)[j] as u32;

    let mut rows: Vec<Vec<u32>> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let mut row: Vec<u32> = space
                .params
                .iter()
                .map(|prm| prm.monomial[cell(a, b, a)] % pu)
                .collect();
            row.extend((0..r).map(|j| digit(b, j)));
            rows.push(row);
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in a + 1..n {
                let mut row: Vec<u32> = space
                    .params
                    .iter()
                    .map(|prm| (prm.monomial[cell(a, b, c)] + prm.monomial[cell(c, b, a)]) % pu)
                    .collect();
                row.extend((0..r).map(|j| (2 * digit(b, j)) % pu));
                rows.push(row);
            }
        }
    }
    let pivots = row_reduce(&mut rows, q, pu);
    // inconsistent systems leave a row 0 = nonzero
    for row in &rows {
        if row[..q].iter().all(|&x| x == 0) && row[q..].iter().any(|&x| x != 0) {
            return Ok(Vec::new());
        }
    }
    let free: Vec<usize> = (0..q).filter(|c| !pivots.contains(c)).collect();
    let k = free.len();
    let per_coord = (p as u128).checked_pow(k as u32);
    let total = per_coord.and_then(|x| x.checked_pow(r as u32));
    if !matches!(total, Some(t) if t <= budget) {
        return Err(Error::LimitExceeded(format!(
            "{p}^{} linear solutions exceed the search budget {budget}",
            k * r
        )));
    }
    let per_coord = per_coord.unwrap() as usize;

    // particular solution for coordinate j: free vars zero
    let particular = |j: usize| -> Vec<u32> {
        let mut x = vec![0u32; q];
        for (row, &pc) in rows.iter().zip(&pivots) {
            x[pc] = row[q + j];
        }
        x
    };
    // homogeneous solution for a choice of free values
    let homogeneous = |choice: &[u32]| -> Vec<u32> {
        let mut x = vec![0u32; q];
        for (&f, &v) in free.iter().zip(choice) {
            x[f] = v;
        }
        for (row, &pc) in rows.iter().zip(&pivots) {
            let s: u32 = free.iter().zip(choice).map(|(&f, &v)| row[f] * v).sum();
            x[pc] = (pu * pu * (k as u32 + 1) - s) % pu;
        }
        x
    };
    let cells = space.cells();
    let coordinate_table = |x: &[u32]| -> Vec<u32> {
        (0..cells)
            .map(|cl| {
                space
                    .params
                    .iter()
                    .zip(x)
                    .map(|(prm, &v)| (prm.monomial[cl] % pu) * v)
                    .sum::<u32>()
                    % pu
            })
            .collect()
    };
    let homs: Vec<Vec<u32>> = (0..per_coord)
        .map(|s| {
            let choice: Vec<u32> = to_digits(&vec![p; k], s)
                .into_iter()
                .map(|d| d as u32)
                .collect();
            coordinate_table(&homogeneous(&choice))
        })
        .collect();
    let parts: Vec<Vec<u32>> = (0..r).map(|j| coordinate_table(&particular(j))).collect();

    let mut out = Vec::with_capacity(total.unwrap() as usize);
    let mut pick = vec![0usize; r];
    let mut digits = vec![0usize; r];
    loop {
        let table = (0..cells)
            .map(|cl| {
                for j in 0..r {
                    digits[j] = ((parts[j][cl] + homs[pick[j]][cl]) % pu) as usize;
                }
                from_digits(&orders, &digits)
            })
            .collect();
        out.push(table);
        let mut l = r;
        loop {
            if l == 0 {
                return Ok(out);
            }
            l -= 1;
            pick[l] += 1;
            if pick[l] < per_coord {
                break;
            }
            pick[l] = 0;
        }
    }
}
