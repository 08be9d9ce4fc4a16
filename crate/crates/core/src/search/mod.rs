//! Exhaustive enumeration of trusses, rings, ternary Lie brackets and
//! derivations on small cyclic-product groups, with classification up to
//! heap isomorphism.

mod automorphism;
mod canonical;
mod linalg;
mod multiaffine;
pub mod oracle;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use automorphism::{automorphisms, endomorphisms, heap_automorphisms, Relabeling};
pub use canonical::{canonical_form, CanonicalForm, Canonicalizer, MAX_RELABELINGS};
pub use multiaffine::{MultiAffine, Param};

use crate::group::AbelianGroup;
use crate::heap::heap_from_group;
use crate::lie::{validate_lie_truss, validate_strong_jacobi, LieBase, LieTernary};
use crate::report::{ReportMode, ViolationReport};
use crate::truss::{validate_derivation, Derivation, TrussStructure};
use crate::{Elem, Error, Result};

/// Candidate budget without `allow_large`.
pub const DEFAULT_BUDGET: u128 = 50_000_000;
/// Candidate budget with `allow_large`.
pub const LARGE_BUDGET: u128 = 1_000_000_000;

pub const MAX_TRUSS_ORDER: usize = 9;
pub const MAX_LIE_ORDER: usize = 8;
pub const MAX_LIE_RAW_ORDER: usize = 4;
pub const MAX_DERIVATION_ORDER: usize = 64;
pub const MAX_DERIVATION_RAW_ORDER: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchKind {
    Truss,
    Ring,
    LieTruss,
    Derivation,
}

#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub group: AbelianGroup,
    pub kind: SearchKind,
    pub up_to_iso: bool,
    pub limit: Option<usize>,
    pub workers: usize,
    /// Raise the candidate budget from [`DEFAULT_BUDGET`] to [`LARGE_BUDGET`].
    pub allow_large: bool,
}

impl SearchSpec {
    pub fn new(group: AbelianGroup, kind: SearchKind) -> Self {
        SearchSpec {
            group,
            kind,
            up_to_iso: false,
            limit: None,
            workers: 1,
            allow_large: false,
        }
    }

    pub fn up_to_iso(mut self, yes: bool) -> Self {
        self.up_to_iso = yes;
        self
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn limit(mut self, limit: Option<usize>) -> Self {
        self.limit = limit;
        self
    }

    pub fn allow_large(mut self, yes: bool) -> Self {
        self.allow_large = yes;
        self
    }

    fn budget(&self) -> u128 {
        if self.allow_large {
            LARGE_BUDGET
        } else {
            DEFAULT_BUDGET
        }
    }

    fn check_order(&self, max: usize) -> Result<()> {
        let n = self.group.order();
        if n > max {
            return Err(Error::LimitExceeded(format!(
                "{:?} search limited to groups of order {max}, got {n}",
                self.kind
            )));
        }
        Ok(())
    }
}

/// An isomorphism class: the canonical table, its number of labeled members,
/// and the index of its first member in the labeled list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassEntry {
    pub canonical: CanonicalForm,
    pub size: usize,
    pub first: usize,
}

/// Full result of a search: labeled structures sorted by canonical form
/// (ties broken by table), and the isomorphism classes.
#[derive(Clone, Debug)]
pub struct SearchOutcome<T> {
    pub labeled: Vec<T>,
    pub canonical: Vec<CanonicalForm>,
    pub classes: Vec<ClassEntry>,
}

impl<T: Clone> SearchOutcome<T> {
    pub fn total(&self) -> usize {
        self.labeled.len()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Representatives (first labeled member of each class), or all labeled
    /// structures, truncated to `limit`.
    pub fn listing(&self, up_to_iso: bool, limit: Option<usize>) -> Vec<T> {
        let items: Vec<T> = if up_to_iso {
            self.classes
                .iter()
                .map(|c| self.labeled[c.first].clone())
                .collect()
        } else {
            self.labeled.clone()
        };
        match limit {
            Some(k) => items.into_iter().take(k).collect(),
            None => items,
        }
    }
}

/// Sorted tables, their canonical forms and the classes.
pub type Classified = (Vec<Vec<Elem>>, Vec<CanonicalForm>, Vec<ClassEntry>);

/// Sorts tables by (canonical form, table) and groups them into classes.
pub fn classify_tables(
    group: &AbelianGroup,
    tables: Vec<Vec<Elem>>,
    arity: usize,
    workers: usize,
) -> Result<Classified> {
    let canon = Canonicalizer::new(group)?;
    let mut keyed: Vec<(CanonicalForm, Vec<Elem>)> = run_pool(workers, || {
        tables
            .into_par_iter()
            .map(|t| (canon.canonical(&t, arity), t))
            .collect()
    })?;
    keyed.sort();
    let mut classes: Vec<ClassEntry> = Vec::new();
    for (i, (c, _)) in keyed.iter().enumerate() {
        match classes.last_mut() {
            Some(last) if last.canonical == *c => last.size += 1,
            _ => classes.push(ClassEntry {
                canonical: c.clone(),
                size: 1,
                first: i,
            }),
        }
    }
    let (forms, tables) = keyed.into_iter().unzip();
    Ok((tables, forms, classes))
}

fn run_pool<R: Send>(workers: usize, job: impl FnOnce() -> R + Send) -> Result<R> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::LimitExceeded(format!("thread pool: {e}")))?;
    Ok(pool.install(job))
}

/// Runs `accept` over every candidate table of `space`, splitting the index
/// range into blocks. Results come back in candidate-index order.
fn filter_space(
    space: &MultiAffine,
    budget: u128,
    workers: usize,
    accept: impl Fn(&[Elem]) -> bool + Sync,
) -> Result<Vec<Vec<Elem>>> {
    let total = space
        .candidate_count()
        .filter(|&c| c <= budget)
        .ok_or_else(|| {
            Error::LimitExceeded(format!(
                "{} candidates exceed the search budget {budget}",
                space
                    .candidate_count()
                    .map(|c| c.to_string())
                    .unwrap_or_else(|| "too many".into())
            ))
        })?;
    let blocks = (workers as u128 * 16).clamp(1, total.max(1));
    let step = total.div_ceil(blocks);
    let ranges: Vec<(u128, u128)> = (0..blocks)
        .map(|b| (b * step, ((b + 1) * step).min(total)))
        .filter(|(s, e)| s < e)
        .collect();
    let chunks: Vec<Vec<Vec<Elem>>> = run_pool(workers, || {
        ranges
            .into_par_iter()
            .map(|(s, e)| {
                let mut found = Vec::new();
                space.for_each_in_range(s, e, |_, table| {
                    if accept(table) {
                        found.push(table.to_vec());
                    }
                });
                found
            })
            .collect()
    })?;
    Ok(chunks.into_iter().flatten().collect())
}

fn is_associative(n: usize, m: &[Elem]) -> bool {
    (0..n).all(|a| {
        (0..n).all(|b| {
            let ab = m[a * n + b];
            (0..n).all(|c| m[ab * n + c] == m[a * n + m[b * n + c]])
        })
    })
}

fn truss_outcome(
    spec: &SearchSpec,
    tables: Vec<Vec<Elem>>,
) -> Result<SearchOutcome<TrussStructure>> {
    let (tables, canonical, classes) = classify_tables(&spec.group, tables, 2, spec.workers)?;
    let heap = heap_from_group(spec.group.clone());
    let labeled = tables
        .into_iter()
        .map(|t| TrussStructure::new(heap.clone(), t))
        .collect::<Result<_>>()?;
    Ok(SearchOutcome {
        labeled,
        canonical,
        classes,
    })
}

/// All trusses on the group heap: bi-affine multiplications
/// `B(a,b) + L(a) + R(b) + k` that are associative.
pub fn search_trusses(spec: &SearchSpec) -> Result<SearchOutcome<TrussStructure>> {
    spec.check_order(MAX_TRUSS_ORDER)?;
    let n = spec.group.order();
    let space = MultiAffine::new(&spec.group, 2, |_| true)?;
    let tables = filter_space(&space, spec.budget(), spec.workers, |t| {
        is_associative(n, t)
    })?;
    truss_outcome(spec, tables)
}

/// All rings on the group: biadditive associative multiplications.
pub fn search_rings(spec: &SearchSpec) -> Result<SearchOutcome<TrussStructure>> {
    spec.check_order(MAX_TRUSS_ORDER)?;
    let n = spec.group.order();
    let space = MultiAffine::new(&spec.group, 2, |s| s == 0b11)?;
    let tables = filter_space(&space, spec.budget(), spec.workers, |t| {
        is_associative(n, t)
    })?;
    truss_outcome(spec, tables)
}

pub fn enumerate_trusses(spec: &SearchSpec) -> Result<Vec<TrussStructure>> {
    Ok(search_trusses(spec)?.listing(spec.up_to_iso, spec.limit))
}

pub fn enumerate_rings(spec: &SearchSpec) -> Result<Vec<TrussStructure>> {
    Ok(search_rings(spec)?.listing(spec.up_to_iso, spec.limit))
}

/// Cheap necessary conditions checked before the full validator: `⟦a,b,a⟧ = b`
/// and ternary antisymmetry.
fn lie_prefilter(group: &AbelianGroup, t: &[Elem]) -> bool {
    let n = group.order();
    let at = |a: usize, b: usize, c: usize| t[(a * n + b) * n + c];
    for a in 0..n {
        for b in 0..n {
            if at(a, b, a) != b {
                return false;
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in a + 1..n {
                let s = group.add(group.sub(at(a, b, c), b), at(c, b, a));
                if s != b {
                    return false;
                }
            }
        }
    }
    true
}

/// All ternary Lie brackets on the group heap.
///
/// Brackets are tri-affine maps. On elementary abelian groups the linear
/// conditions (`⟦a,b,a⟧ = b` and antisymmetry) are solved exactly over `F_p`
/// and only the solution space is scanned; elsewhere the whole tri-affine
/// space is scanned under the candidate budget.
pub fn search_lie_brackets(spec: &SearchSpec) -> Result<SearchOutcome<LieTernary>> {
    spec.check_order(MAX_LIE_ORDER)?;
    let group = &spec.group;
    let space = MultiAffine::new(group, 3, |_| true)?;
    let heap = heap_from_group(group.clone());
    let base = LieBase::Heap(heap);
    let full_check = |t: &[Elem]| {
        let l = LieTernary::new(base.clone(), t.to_vec()).expect("table in range");
        validate_lie_truss(&l, ReportMode::First).ok
    };
    let tables = match group.elementary_prime() {
        Some(p) => {
            let candidates = linalg::lie_linear_solutions(&space, p, spec.budget())?;
            run_pool(spec.workers, || {
                candidates
                    .into_par_iter()
                    .filter(|t| full_check(t))
                    .collect::<Vec<_>>()
            })?
        }
        None => filter_space(&space, spec.budget(), spec.workers, |t| {
            lie_prefilter(group, t) && full_check(t)
        })?,
    };
    let (tables, canonical, classes) = classify_tables(group, tables, 3, spec.workers)?;
    let labeled = tables
        .into_iter()
        .map(|t| LieTernary::new(base.clone(), t))
        .collect::<Result<_>>()?;
    Ok(SearchOutcome {
        labeled,
        canonical,
        classes,
    })
}

pub fn enumerate_lie_brackets(spec: &SearchSpec) -> Result<Vec<LieTernary>> {
    Ok(search_lie_brackets(spec)?.listing(spec.up_to_iso, spec.limit))
}

/// All derivations of a truss on a cyclic-product heap: maps `x ↦ g(x) + t`
/// with `g` additive, filtered by the Leibniz rule. Sorted by map.
pub fn enumerate_derivations(t: &TrussStructure) -> Result<Vec<Derivation>> {
    let group = t.heap().group();
    let n = group.order();
    if n > MAX_DERIVATION_ORDER {
        return Err(Error::LimitExceeded(format!(
            "derivation search limited to {MAX_DERIVATION_ORDER} elements, got {n}"
        )));
    }
    let maps: Vec<Vec<Elem>> = if group.orders().is_some() {
        let ends = endomorphisms(group)?;
        let mut maps = Vec::with_capacity(ends.len() * n);
        for g in &ends {
            for shift in 0..n {
                maps.push(g.iter().map(|&x| group.add(x, shift)).collect());
            }
        }
        maps
    } else {
        if n > MAX_DERIVATION_RAW_ORDER.min(8) {
            return Err(Error::LimitExceeded(format!(
                "raw derivation search on a table heap limited to 8 elements, got {n}"
            )));
        }
        oracle::all_functions(n)
    };
    let mut out: Vec<Derivation> = maps
        .into_iter()
        .filter(|d| {
            validate_derivation(d, t, ReportMode::First)
                .map(|r| r.ok)
                .unwrap_or(false)
        })
        .map(Derivation)
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// A bracket that satisfies the four-variable Jacobi identity but not the
/// strong one, with the failing quintuple.
#[derive(Clone, Debug)]
pub struct WeakNotStrong {
    pub bracket: LieTernary,
    pub report: ViolationReport,
}

/// Enumerated Lie brackets failing the strong Jacobi identity.
pub fn search_weak_not_strong(spec: &SearchSpec) -> Result<Vec<WeakNotStrong>> {
    let outcome = search_lie_brackets(spec)?;
    let mut found = Vec::new();
    for l in outcome.labeled {
        let report = validate_strong_jacobi(&l, ReportMode::First)?;
        if !report.ok {
            found.push(WeakNotStrong { bracket: l, report });
        }
    }
    Ok(found)
}
