use std::fmt;

use serde::{Deserialize, Serialize};

use super::automorphism::{heap_automorphisms, Relabeling};
use crate::group::AbelianGroup;
use crate::{Elem, Result};

/// Bound on `|Aut(G)| · n` for canonicalization.
pub const MAX_RELABELINGS: usize = 1_000_000;

/// Lexicographically least relabeled table over all heap automorphisms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm(pub Vec<u8>);

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({:?})", self.0)
    }
}

impl CanonicalForm {
    pub fn table(&self) -> Vec<Elem> {
        self.0.iter().map(|&b| b as Elem).collect()
    }
}

/// Cached heap automorphisms of one group, for canonicalizing many tables.
#[derive(Clone, Debug)]
pub struct Canonicalizer {
    n: usize,
    relabelings: Vec<Relabeling>,
}

impl Canonicalizer {
    pub fn new(group: &AbelianGroup) -> Result<Self> {
        Ok(Canonicalizer {
            n: group.order(),
            relabelings: heap_automorphisms(group, MAX_RELABELINGS)?,
        })
    }

    pub fn relabelings(&self) -> &[Relabeling] {
        &self.relabelings
    }

    /// Canonical form of an operation table of the given arity.
    pub fn canonical(&self, table: &[Elem], arity: usize) -> CanonicalForm {
        let n = self.n;
        let cells = table.len();
        debug_assert_eq!(cells, n.pow(arity as u32));
        let mut best: Option<Vec<u8>> = None;
        let mut candidate = vec![0u8; cells];
        for phi in &self.relabelings {
            // relabeled[u] = phi(table[phi^-1(u)]), compared lazily
            let mut decided_less = best.is_none();
            let mut abandoned = false;
            for (cell, slot) in candidate.iter_mut().enumerate() {
                let mut src = 0;
                let mut rest = cell;
                let mut scale = 1;
                for _ in 0..arity {
                    src += phi.inverse[rest % n] * scale;
                    rest /= n;
                    scale *= n;
                }
                let value = phi.forward[table[src]] as u8;
                *slot = value;
                if !decided_less {
                    let current = best.as_ref().unwrap()[cell];
                    if value < current {
                        decided_less = true;
                    } else if value > current {
                        abandoned = true;
                        break;
                    }
                }
            }
            if !abandoned && decided_less {
                best = Some(candidate.clone());
            }
        }
        CanonicalForm(best.unwrap_or_else(|| table.iter().map(|&x| x as u8).collect()))
    }
}

/// One-shot canonical form of a binary (`arity = 2`) or ternary table.
pub fn canonical_form(group: &AbelianGroup, table: &[Elem], arity: usize) -> Result<CanonicalForm> {
    Ok(Canonicalizer::new(group)?.canonical(table, arity))
}
