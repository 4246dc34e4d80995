//! Classification reports combining axiom status, structure and congruences.

use std::fmt;

use serde::Serialize;

use crate::algebra::{AxiomId, AxiomViolation, FiniteDba};
use crate::congruence::{self, CongruenceSummary};
use crate::error::{DbaError, Result};
use crate::format::LabeledDba;
use crate::skeleton::{self, Skeleton, StructureSummary};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomStatus {
    pub axiom: AxiomId,
    pub pass: bool,
    /// Violations found, up to the requested cap.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<AxiomViolation>,
}

pub fn axiom_status(a: &FiniteDba, cap: usize) -> Vec<AxiomStatus> {
    a.check_all_axioms(cap)
        .into_iter()
        .map(|(axiom, violations)| AxiomStatus {
            axiom,
            pass: violations.is_empty(),
            violations,
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraReport {
    pub name: String,
    pub size: usize,
    pub is_dba: bool,
    pub axioms: Vec<AxiomStatus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub congruences: Option<CongruenceSummary>,
    #[serde(skip)]
    labels: Vec<String>,
}

impl AlgebraReport {
    /// Axiom status for any algebra; structure and congruences only when
    /// every identity holds.
    ///
    /// Errors with [`DbaError::Internal`] if the report contradicts itself
    /// (a simple algebra that is not SI, or criterion and oracle disagreeing).
    pub fn build(name: &str, algebra: &LabeledDba, cap: usize) -> Result<AlgebraReport> {
        let a = &algebra.algebra;
        let axioms = axiom_status(a, cap);
        let is_dba = axioms.iter().all(|s| s.pass);
        let (structure, congruences) = if is_dba {
            let verified = a.clone().verify()?;
            let s = Skeleton::new(&verified);
            let c = congruence::summarize(&verified);
            if c.simple && !c.si {
                return Err(DbaError::Internal(
                    "simple algebra reported as not SI".into(),
                ));
            }
            if !c.criterion_agrees {
                return Err(DbaError::Internal(
                    "skeleton criterion disagrees with the congruence lattice".into(),
                ));
            }
            (Some(skeleton::summarize(&s)), Some(c))
        } else {
            (None, None)
        };
        Ok(AlgebraReport {
            name: name.to_string(),
            size: a.size(),
            is_dba,
            axioms,
            structure,
            congruences,
            labels: (0..a.size()).map(|x| algebra.label(x)).collect(),
        })
    }

    fn set(&self, ids: &[usize]) -> String {
        let names: Vec<&str> = ids.iter().map(|&x| self.labels[x].as_str()).collect();
        format!("{{{}}}", names.join(", "))
    }
}

impl fmt::Display for AlgebraReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} ({} elements)", self.name, self.size)?;
        let failed: Vec<&AxiomStatus> = self.axioms.iter().filter(|s| !s.pass).collect();
        if failed.is_empty() {
            writeln!(f, "axioms: all {} hold", self.axioms.len())?;
        } else {
            writeln!(f, "axioms: {} of {} fail", failed.len(), self.axioms.len())?;
            for s in failed {
                let v = &s.violations[0];
                let w: Vec<&str> = v.witness.iter().map(|&x| self.labels[x].as_str()).collect();
                writeln!(
                    f,
                    "  ({}) at ({}): {} != {}",
                    s.axiom,
                    w.join(", "),
                    self.labels[v.lhs],
                    self.labels[v.rhs]
                )?;
            }
        }
        if let Some(st) = &self.structure {
            writeln!(
                f,
                "pure: {}  trivial: {}  regular: {}",
                st.pure, st.trivial, st.regular
            )?;
            writeln!(f, "types: {}", st.types)?;
            writeln!(f, "D_⊓ = {}", self.set(&st.d_meet))?;
            writeln!(f, "D_⊔ = {}", self.set(&st.d_join))?;
        }
        if let Some(c) = &self.congruences {
            writeln!(f, "|Con| = {}", c.con_size)?;
            writeln!(f, "simple: {}  SI: {}", c.simple, c.si)?;
            match &c.monolith {
                Some(m) => {
                    let classes: Vec<String> = m.classes().iter().map(|b| self.set(b)).collect();
                    writeln!(f, "monolith: {}", classes.join(" "))?;
                }
                None => writeln!(f, "monolith: none")?,
            }
        }
        Ok(())
    }
}
