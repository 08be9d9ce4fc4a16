use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

/// Cap on collected witnesses when every violation is requested.
pub const MAX_WITNESSES: usize = 100;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ReportMode {
    /// Stop at the first violation found.
    #[default]
    First,
    /// Keep sweeping, collecting up to [`MAX_WITNESSES`] violations.
    All,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom_id: String,
    pub witness: Vec<usize>,
    pub lhs: usize,
    pub rhs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn ok() -> Self {
        ViolationReport {
            ok: true,
            violations: Vec::new(),
        }
    }

    pub fn first_axiom(&self) -> &str {
        self.violations
            .first()
            .map(|v| v.axiom_id.as_str())
            .unwrap_or("none")
    }

    pub fn has_axiom(&self, id: &str) -> bool {
        self.violations.iter().any(|v| v.axiom_id == id)
    }

    /// Concatenates two reports, respecting the witness cap.
    pub fn merge(mut self, other: ViolationReport) -> Self {
        for v in other.violations {
            if self.violations.len() >= MAX_WITNESSES {
                break;
            }
            self.violations.push(v);
        }
        self.ok = self.violations.is_empty();
        self
    }

    pub fn into_result(self) -> crate::Result<()> {
        if self.ok {
            Ok(())
        } else {
            Err(crate::Error::InvalidStructure(self))
        }
    }
}

/// Accumulates violations during a sweep. `record` breaks once the mode's
/// budget is spent, so sweeps can bail out with `?`-style early returns.
#[derive(Debug)]
pub struct ReportBuilder {
    mode: ReportMode,
    violations: Vec<Violation>,
}

impl ReportBuilder {
    pub fn new(mode: ReportMode) -> Self {
        ReportBuilder {
            mode,
            violations: Vec::new(),
        }
    }

    pub fn record(
        &mut self,
        axiom_id: &str,
        witness: &[usize],
        lhs: usize,
        rhs: usize,
    ) -> ControlFlow<()> {
        self.violations.push(Violation {
            axiom_id: axiom_id.to_string(),
            witness: witness.to_vec(),
            lhs,
            rhs,
        });
        if self.is_full() {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    }

    /// Records a violation when `lhs != rhs`.
    #[inline]
    pub fn expect_eq(
        &mut self,
        axiom_id: &str,
        witness: &[usize],
        lhs: usize,
        rhs: usize,
    ) -> ControlFlow<()> {
        if lhs == rhs {
            ControlFlow::Continue(())
        } else {
            self.record(axiom_id, witness, lhs, rhs)
        }
    }

    pub fn is_full(&self) -> bool {
        match self.mode {
            ReportMode::First => !self.violations.is_empty(),
            ReportMode::All => self.violations.len() >= MAX_WITNESSES,
        }
    }

    pub fn mode(&self) -> ReportMode {
        self.mode
    }

    pub fn finish(self) -> ViolationReport {
        ViolationReport {
            ok: self.violations.is_empty(),
            violations: self.violations,
        }
    }
}

/// Runs a sweep body that may break early and returns the collected report.
pub fn sweep(
    mode: ReportMode,
    body: impl FnOnce(&mut ReportBuilder) -> ControlFlow<()>,
) -> ViolationReport {
    let mut builder = ReportBuilder::new(mode);
    let _ = body(&mut builder);
    builder.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_mode_stops_after_one() {
        let report = sweep(ReportMode::First, |b| {
            for i in 0..10 {
                b.expect_eq("x", &[i], i, 0)?;
            }
            ControlFlow::Continue(())
        });
        assert!(!report.ok);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].witness, vec![1]);
    }

    #[test]
    fn all_mode_caps_witnesses() {
        let report = sweep(ReportMode::All, |b| {
            for i in 0..500 {
                b.expect_eq("x", &[i], 1, 0)?;
            }
            ControlFlow::Continue(())
        });
        assert_eq!(report.violations.len(), MAX_WITNESSES);
    }

    #[test]
    fn ok_iff_empty() {
        let report = sweep(ReportMode::All, |_| ControlFlow::Continue(()));
        assert!(report.ok && report.violations.is_empty());
    }
}
