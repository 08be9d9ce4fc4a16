//! JSON structure files: one flat object with a `kind` tag, optional
//! operation tables flattened row-major, keys in sorted order.

use serde::{Deserialize, Serialize};

use crate::affine::{validate_affine, AffineStructure, PrimeField};
use crate::group::{AbelianGroup, GroupSpec};
use crate::heap::{heap_from_group, validate_heap, FiniteHeap, Provenance, TernaryTable};
use crate::lie::{
    validate_lie_affebra, validate_lie_ring, validate_lie_truss, validate_strong_jacobi,
    LieAffebra, LieBase, LieRingView, LieTernary,
};
use crate::report::{ReportMode, ViolationReport};
use crate::truss::{validate_truss, TrussStructure};
use crate::{Elem, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Heap,
    Group,
    Truss,
    LieTruss,
    Affine,
    LieAffebra,
    HeapLieAffebra,
    LieRing,
}

/// Serialized form. Fields are declared alphabetically so the emitted JSON
/// has sorted keys.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bracket2: Option<Vec<Elem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bracket3: Option<Vec<Elem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field_p: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub heap_table: Option<Vec<Elem>>,
    pub kind: Option<Kind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<Elem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mul_table: Option<Vec<Elem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<Elem>,
}

/// A decoded structure file.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Structure {
    Heap(FiniteHeap),
    Group(AbelianGroup),
    Truss(TrussStructure),
    LieTruss(LieTernary),
    Affine(AffineStructure),
    LieAffebra(LieAffebra),
    HeapLieAffebra(LieTernary),
    LieRing { base: LieBase, ring: LieRingView },
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

impl StructureFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: StructureFile =
            serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
        if file.kind.is_none() {
            return Err(malformed("missing field `kind`"));
        }
        Ok(file)
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("structure files always serialize");
        s.push('\n');
        s
    }

    pub fn kind(&self) -> Kind {
        self.kind.expect("kind checked on load")
    }

    fn require<'a, T>(field: &'a Option<T>, name: &str, kind: Kind) -> Result<&'a T> {
        field
            .as_ref()
            .ok_or_else(|| malformed(format!("kind {kind:?} requires field `{name}`")))
    }

    fn forbid<T>(field: &Option<T>, name: &str, kind: Kind) -> Result<()> {
        match field {
            Some(_) => Err(malformed(format!(
                "field `{name}` is not allowed for kind {kind:?}"
            ))),
            None => Ok(()),
        }
    }

    /// The raw ternary table when given, otherwise `None`.
    pub fn raw_heap_table(&self) -> Result<Option<TernaryTable>> {
        match &self.heap_table {
            Some(t) => {
                let n = TernaryTable::cube_root(t.len()).ok_or(Error::SizeMismatch {
                    what: "heap table (not a cube)",
                    expected: 0,
                    found: t.len(),
                })?;
                Ok(Some(TernaryTable::new(n, t.clone())?))
            }
            None => Ok(None),
        }
    }

    /// Heap from `group` or `heap_table` (exactly one). An invalid heap table
    /// yields [`Error::InvalidStructure`].
    pub fn heap(&self) -> Result<FiniteHeap> {
        match (&self.group, self.raw_heap_table()?) {
            (Some(g), None) => FiniteHeap::cyclic_product(&g.orders),
            (None, Some(t)) => FiniteHeap::from_table(&t),
            (Some(_), Some(_)) => Err(malformed(
                "exactly one of `group` and `heap_table` may be given",
            )),
            (None, None) => Err(malformed("one of `group` or `heap_table` is required")),
        }
    }

    fn affine(&self) -> Result<AffineStructure> {
        let kind = self.kind();
        let p = *Self::require(&self.field_p, "field_p", kind)?;
        let lambda = Self::require(&self.lambda, "lambda", kind)?;
        AffineStructure::new(self.heap()?, PrimeField::new(p)?, lambda.clone())
    }

    fn lie_base(&self) -> Result<LieBase> {
        if self.field_p.is_some() || self.lambda.is_some() {
            Ok(LieBase::Affine(self.affine()?))
        } else {
            Ok(LieBase::Heap(self.heap()?))
        }
    }

    pub fn to_structure(&self) -> Result<Structure> {
        let kind = self.kind();
        let no_ops = |f: &Self| -> Result<()> {
            Self::forbid(&f.mul_table, "mul_table", kind)?;
            Self::forbid(&f.bracket2, "bracket2", kind)?;
            Self::forbid(&f.bracket3, "bracket3", kind)
        };
        let no_affine = |f: &Self| -> Result<()> {
            Self::forbid(&f.field_p, "field_p", kind)?;
            Self::forbid(&f.lambda, "lambda", kind)
        };
        match kind {
            Kind::Heap | Kind::Group => {
                no_ops(self)?;
                no_affine(self)?;
                Self::forbid(&self.origin, "origin", kind)?;
                let h = self.heap()?;
                Ok(match kind {
                    Kind::Heap => Structure::Heap(h),
                    _ => Structure::Group(h.group().clone()),
                })
            }
            Kind::Truss => {
                no_affine(self)?;
                Self::forbid(&self.bracket2, "bracket2", kind)?;
                Self::forbid(&self.bracket3, "bracket3", kind)?;
                Self::forbid(&self.origin, "origin", kind)?;
                let mul = Self::require(&self.mul_table, "mul_table", kind)?;
                Ok(Structure::Truss(TrussStructure::new(
                    self.heap()?,
                    mul.clone(),
                )?))
            }
            Kind::Affine => {
                no_ops(self)?;
                Self::forbid(&self.origin, "origin", kind)?;
                Ok(Structure::Affine(self.affine()?))
            }
            Kind::LieTruss | Kind::HeapLieAffebra => {
                Self::forbid(&self.mul_table, "mul_table", kind)?;
                Self::forbid(&self.bracket2, "bracket2", kind)?;
                Self::forbid(&self.origin, "origin", kind)?;
                let br = Self::require(&self.bracket3, "bracket3", kind)?;
                if kind == Kind::LieTruss {
                    no_affine(self)?;
                    Ok(Structure::LieTruss(LieTernary::new(
                        LieBase::Heap(self.heap()?),
                        br.clone(),
                    )?))
                } else {
                    let base = LieBase::Affine(self.affine()?);
                    Ok(Structure::HeapLieAffebra(LieTernary::new(
                        base,
                        br.clone(),
                    )?))
                }
            }
            Kind::LieAffebra => {
                Self::forbid(&self.mul_table, "mul_table", kind)?;
                Self::forbid(&self.bracket3, "bracket3", kind)?;
                let o = *Self::require(&self.origin, "origin", kind)?;
                let br = Self::require(&self.bracket2, "bracket2", kind)?;
                Ok(Structure::LieAffebra(LieAffebra::new(
                    self.affine()?,
                    o,
                    br.clone(),
                )?))
            }
            Kind::LieRing => {
                Self::forbid(&self.mul_table, "mul_table", kind)?;
                Self::forbid(&self.bracket3, "bracket3", kind)?;
                let o = *Self::require(&self.origin, "origin", kind)?;
                let br = Self::require(&self.bracket2, "bracket2", kind)?;
                let base = self.lie_base()?;
                let group = base.heap().retract_at(o)?;
                let n = group.order();
                if br.len() != n * n {
                    return Err(Error::SizeMismatch {
                        what: "binary bracket table",
                        expected: n * n,
                        found: br.len(),
                    });
                }
                if let Some(&e) = br.iter().find(|&&e| e >= n) {
                    return Err(Error::OutOfRange {
                        element: e,
                        size: n,
                    });
                }
                let ring = LieRingView {
                    group,
                    origin: o,
                    bracket: br.clone(),
                    affine: base.affine().cloned(),
                };
                Ok(Structure::LieRing { base, ring })
            }
        }
    }
}

fn heap_fields(h: &FiniteHeap) -> StructureFile {
    let mut f = StructureFile::default();
    match (h.provenance(), h.group().orders()) {
        (Provenance::FromGroup, Some(orders)) => {
            f.group = Some(GroupSpec {
                orders: orders.to_vec(),
            })
        }
        _ => f.heap_table = Some(h.to_table().into_entries()),
    }
    f
}

fn affine_fields(a: &AffineStructure) -> StructureFile {
    let mut f = heap_fields(a.heap());
    f.field_p = Some(a.field().p());
    f.lambda = Some(a.lambda_table().to_vec());
    f
}

fn base_fields(b: &LieBase) -> StructureFile {
    match b {
        LieBase::Heap(h) => heap_fields(h),
        LieBase::Affine(a) => affine_fields(a),
    }
}

impl Structure {
    pub fn kind(&self) -> Kind {
        match self {
            Structure::Heap(_) => Kind::Heap,
            Structure::Group(_) => Kind::Group,
            Structure::Truss(_) => Kind::Truss,
            Structure::LieTruss(_) => Kind::LieTruss,
            Structure::Affine(_) => Kind::Affine,
            Structure::LieAffebra(_) => Kind::LieAffebra,
            Structure::HeapLieAffebra(_) => Kind::HeapLieAffebra,
            Structure::LieRing { .. } => Kind::LieRing,
        }
    }

    pub fn to_file(&self) -> StructureFile {
        let mut f = match self {
            Structure::Heap(h) => heap_fields(h),
            Structure::Group(g) => match g.orders() {
                Some(orders) => StructureFile {
                    group: Some(GroupSpec {
                        orders: orders.to_vec(),
                    }),
                    ..Default::default()
                },
                None => heap_fields(&heap_from_group(g.clone())),
            },
            Structure::Truss(t) => StructureFile {
                mul_table: Some(t.mul_table().to_vec()),
                ..heap_fields(t.heap())
            },
            Structure::LieTruss(l) | Structure::HeapLieAffebra(l) => StructureFile {
                bracket3: Some(l.table().to_vec()),
                ..base_fields(l.base())
            },
            Structure::Affine(a) => affine_fields(a),
            Structure::LieAffebra(l) => StructureFile {
                bracket2: Some(l.table().to_vec()),
                origin: Some(l.origin()),
                ..affine_fields(l.affine())
            },
            Structure::LieRing { base, ring } => StructureFile {
                bracket2: Some(ring.bracket.clone()),
                origin: Some(ring.origin),
                ..base_fields(base)
            },
        };
        f.kind = Some(self.kind());
        f
    }

    /// Runs the validator for this kind; `strong` adds the five-variable
    /// Jacobi sweep for ternary brackets.
    pub fn validate(&self, mode: ReportMode, strong: bool) -> Result<ViolationReport> {
        let ternary = |l: &LieTernary| -> Result<ViolationReport> {
            let mut r = validate_lie_truss(l, mode);
            if strong && (mode == ReportMode::All || r.ok) {
                r = r.merge(validate_strong_jacobi(l, mode)?);
            }
            Ok(r)
        };
        match self {
            Structure::Heap(h) => validate_heap(&h.to_table(), mode),
            Structure::Group(g) => validate_heap(&heap_from_group(g.clone()).to_table(), mode),
            Structure::Truss(t) => Ok(validate_truss(t, mode)),
            Structure::LieTruss(l) | Structure::HeapLieAffebra(l) => ternary(l),
            Structure::Affine(a) => Ok(validate_affine(a, mode)),
            Structure::LieAffebra(l) => Ok(validate_lie_affebra(l, mode)),
            Structure::LieRing { ring, .. } => Ok(validate_lie_ring(ring, mode)),
        }
    }
}
