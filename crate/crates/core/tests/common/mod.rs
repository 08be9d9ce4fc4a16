#![allow(dead_code)]

use lietruss::symbolic::{parse_identity, Expr, Theory};
use rand::Rng;

pub struct CorpusEntry {
    pub theory: Theory,
    pub text: String,
    pub lhs: Expr,
    pub rhs: Expr,
    pub equal: bool,
}

pub fn corpus() -> Vec<CorpusEntry> {
    include_str!("identities.txt")
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|line| {
            let parts: Vec<&str> = line.split('|').map(str::trim).collect();
            let theory = match parts[0] {
                "free-heap" => Theory::FreeHeap,
                "free-truss" => Theory::FreeTruss,
                other => panic!("unknown theory {other}"),
            };
            let (lhs, rhs) = parse_identity(parts[1]).unwrap();
            CorpusEntry {
                theory,
                text: parts[1].to_string(),
                lhs,
                rhs,
                equal: parts[2] == "equal",
            }
        })
        .collect()
}

pub const VARS: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

/// Random expression of depth at most `depth`; `ring` enables products and
/// brackets.
pub fn random_expr(rng: &mut impl Rng, depth: usize, ring: bool) -> Expr {
    if depth == 0 || rng.gen_bool(0.3) {
        return Expr::var(VARS[rng.gen_range(0..VARS.len())]);
    }
    let choice = if ring {
        rng.gen_range(0..10)
    } else {
        rng.gen_range(0..5)
    };
    match choice {
        0..=3 => {
            let arity = if rng.gen_bool(0.8) { 3 } else { 5 };
            Expr::heap(
                (0..arity)
                    .map(|_| random_expr(rng, depth - 1, ring))
                    .collect(),
            )
        }
        4 => Expr::heap(vec![
            random_expr(rng, depth - 1, ring),
            Expr::var(VARS[rng.gen_range(0..VARS.len())]),
            random_expr(rng, depth - 1, ring),
        ]),
        5..=7 => Expr::mul(
            random_expr(rng, depth - 1, ring),
            random_expr(rng, depth - 1, ring),
        ),
        _ => Expr::bracket(
            random_expr(rng, depth - 1, ring),
            random_expr(rng, depth - 1, ring),
            random_expr(rng, depth - 1, ring),
        ),
    }
}
