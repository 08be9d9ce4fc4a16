//! Independent naive search strategies used to cross-check the structured
//! enumerations: cell-by-cell backtracking over raw operation tables, using
//! only the heap's ternary operation, and plain enumeration of all functions.

use crate::heap::FiniteHeap;
use crate::report::ReportMode;
use crate::truss::{validate_derivation, TrussStructure};
use crate::{Elem, Error, Result};

/// Largest carrier the table-backtracking oracles accept.
pub const MAX_ORACLE_ORDER: usize = 4;

/// All `n^n` self-maps of `0..n`.
pub fn all_functions(n: usize) -> Vec<Vec<Elem>> {
    let total = n.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let mut f = vec![0; n];
            for slot in f.iter_mut().rev() {
                *slot = code % n;
                code /= n;
            }
            f
        })
        .collect()
}

/// Value-independent constraints between table cells.
#[derive(Clone, Copy, Debug)]
enum Rule {
    /// `v[out] == [v[x], v[y], v[z]]`
    Heap {
        out: usize,
        x: usize,
        y: usize,
        z: usize,
    },
    /// `v[cell] == value`
    Fixed { cell: usize, value: Elem },
    /// `[v[x], b, v[z]] == b`
    Antisym { x: usize, z: usize, b: Elem },
}

impl Rule {
    fn max_cell(&self) -> usize {
        match *self {
            Rule::Heap { out, x, y, z } => out.max(x).max(y).max(z),
            Rule::Fixed { cell, .. } => cell,
            Rule::Antisym { x, z, .. } => x.max(z),
        }
    }

    fn holds(&self, h: &FiniteHeap, v: &[Elem]) -> bool {
        match *self {
            Rule::Heap { out, x, y, z } => v[out] == h.bracket(v[x], v[y], v[z]),
            Rule::Fixed { cell, value } => v[cell] == value,
            Rule::Antisym { x, z, b } => h.bracket(v[x], b, v[z]) == b,
        }
    }
}

/// Partial assignment view: cells `0..assigned` are known.
struct Partial<'a> {
    values: &'a [Elem],
    assigned: usize,
}

impl Partial<'_> {
    #[inline]
    fn get(&self, cell: usize) -> Option<Elem> {
        (cell < self.assigned).then(|| self.values[cell])
    }
}

fn backtrack(
    h: &FiniteHeap,
    cells: usize,
    rules: &[Rule],
    dynamic: &dyn Fn(&Partial) -> bool,
) -> Vec<Vec<Elem>> {
    let n = h.size();
    let mut by_cell: Vec<Vec<Rule>> = vec![Vec::new(); cells];
    for r in rules {
        by_cell[r.max_cell()].push(*r);
    }
    let mut values = vec![0; cells];
    let mut out = Vec::new();
    fn go(
        k: usize,
        n: usize,
        h: &FiniteHeap,
        by_cell: &[Vec<Rule>],
        values: &mut Vec<Elem>,
        dynamic: &dyn Fn(&Partial) -> bool,
        out: &mut Vec<Vec<Elem>>,
    ) {
        if k == values.len() {
            out.push(values.clone());
            return;
        }
        for v in 0..n {
            values[k] = v;
            if !by_cell[k].iter().all(|r| r.holds(h, values)) {
                continue;
            }
            let partial = Partial {
                values,
                assigned: k + 1,
            };
            if dynamic(&partial) {
                go(k + 1, n, h, by_cell, values, dynamic, out);
            }
        }
    }
    go(0, n, h, &by_cell, &mut values, dynamic, &mut out);
    out
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_ORACLE_ORDER {
        return Err(Error::LimitExceeded(format!(
            "naive oracle limited to {MAX_ORACLE_ORDER} elements, got {n}"
        )));
    }
    Ok(())
}

fn distributivity_rules(h: &FiniteHeap) -> Vec<Rule> {
    let n = h.size();
    let cell = |a: usize, b: usize| a * n + b;
    let mut rules = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let bcd = h.bracket(b, c, d);
                    rules.push(Rule::Heap {
                        out: cell(a, bcd),
                        x: cell(a, b),
                        y: cell(a, c),
                        z: cell(a, d),
                    });
                    rules.push(Rule::Heap {
                        out: cell(bcd, a),
                        x: cell(b, a),
                        y: cell(c, a),
                        z: cell(d, a),
                    });
                }
            }
        }
    }
    rules
}

fn associativity_so_far(n: usize) -> impl Fn(&Partial) -> bool {
    move |p: &Partial| {
        for a in 0..n {
            for b in 0..n {
                let Some(ab) = p.get(a * n + b) else { continue };
                for c in 0..n {
                    let Some(bc) = p.get(b * n + c) else { continue };
                    if let (Some(l), Some(r)) = (p.get(ab * n + c), p.get(a * n + bc)) {
                        if l != r {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Every multiplication table on the heap that is associative and
/// distributes over the ternary operation, by backtracking over cells.
pub fn naive_trusses(h: &FiniteHeap) -> Result<Vec<Vec<Elem>>> {
    let n = h.size();
    check_order(n)?;
    let rules = distributivity_rules(h);
    Ok(backtrack(h, n * n, &rules, &associativity_so_far(n)))
}

/// Trusses in which the group zero is absorbing, i.e. rings.
pub fn naive_rings(h: &FiniteHeap) -> Result<Vec<Vec<Elem>>> {
    let n = h.size();
    check_order(n)?;
    let z = h.group().zero();
    let mut rules = distributivity_rules(h);
    for a in 0..n {
        rules.push(Rule::Fixed {
            cell: a * n + z,
            value: z,
        });
        rules.push(Rule::Fixed {
            cell: z * n + a,
            value: z,
        });
    }
    Ok(backtrack(h, n * n, &rules, &associativity_so_far(n)))
}

/// Every ternary table satisfying the Lie-truss axioms, by backtracking.
pub fn naive_lie_brackets(h: &FiniteHeap) -> Result<Vec<Vec<Elem>>> {
    let n = h.size();
    check_order(n)?;
    let cell = move |a: usize, b: usize, c: usize| (a * n + b) * n + c;
    let mut rules = Vec::new();
    for p in 0..n {
        for q in 0..n {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let w = h.bracket(x, y, z);
                        rules.push(Rule::Heap {
                            out: cell(w, p, q),
                            x: cell(x, p, q),
                            y: cell(y, p, q),
                            z: cell(z, p, q),
                        });
                        rules.push(Rule::Heap {
                            out: cell(p, w, q),
                            x: cell(p, x, q),
                            y: cell(p, y, q),
                            z: cell(p, z, q),
                        });
                        rules.push(Rule::Heap {
                            out: cell(p, q, w),
                            x: cell(p, q, x),
                            y: cell(p, q, y),
                            z: cell(p, q, z),
                        });
                    }
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            rules.push(Rule::Fixed {
                cell: cell(a, b, a),
                value: b,
            });
            for c in 0..n {
                rules.push(Rule::Antisym {
                    x: cell(a, b, c),
                    z: cell(c, b, a),
                    b,
                });
            }
        }
    }
    let jacobi = move |p: &Partial| {
        let t = |a, b, c| p.get(cell(a, b, c));
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for o in 0..n {
                        let lhs = t(a, o, b).and_then(|x| t(x, o, c));
                        let rhs = (|| {
                            let y = t(t(b, o, c)?, o, a)?;
                            let z = t(t(c, o, a)?, o, b)?;
                            let first = h.bracket(t(o, o, a)?, y, t(o, o, b)?);
                            Some(h.bracket(first, z, t(o, o, c)?))
                        })();
                        if let (Some(l), Some(r)) = (lhs, rhs) {
                            if l != r {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    };
    Ok(backtrack(h, n * n * n, &rules, &jacobi))
}

/// Derivations found by testing every self-map of the carrier.
pub fn naive_derivations(t: &TrussStructure) -> Result<Vec<Vec<Elem>>> {
    let n = t.size();
    if n > 6 {
        return Err(Error::LimitExceeded(format!(
            "all-functions derivation oracle limited to 6 elements, got {n}"
        )));
    }
    let mut out = Vec::new();
    for f in all_functions(n) {
        if validate_derivation(&f, t, ReportMode::First)?.ok {
            out.push(f);
        }
    }
    Ok(out)
}
