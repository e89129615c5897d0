//! Serialized forms. Every rational is a `"p/q"` or integer string and
//! every polynomial uses the canonical text form, so values round-trip
//! exactly.

use std::collections::BTreeMap;

use bgg_core::bggsolve::{CatalogEntry, Slot, SolutionSystem};
use bgg_core::exactmath::{parse_scalar, ExactScalar, MultiPoly, RatMatrix};
use bgg_core::flatverify::Residual;
use bgg_core::liemodel::{GeometryKind, GradedLieModel};
use bgg_core::repforge::BasisLabel;
use bgg_core::strata::PTypeReport;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotJson {
    pub label: String,
    pub poly: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub geometry: String,
    pub rep: String,
    pub variables: Vec<String>,
    pub degree_bound: usize,
    pub slots: Vec<SlotJson>,
    pub source_tractor: Option<Vec<String>>,
}

fn scalars(v: &[ExactScalar]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn matrix(m: &RatMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| scalars(r)).collect()
}

impl From<&SolutionSystem> for SystemJson {
    fn from(s: &SolutionSystem) -> Self {
        SystemJson {
            geometry: s.geometry().to_string(),
            rep: s.rep().to_string(),
            variables: s.variables(),
            degree_bound: s.degree_bound(),
            slots: s
                .slots()
                .iter()
                .map(|slot| SlotJson {
                    label: slot.label.to_string(),
                    poly: slot.poly.to_string(),
                })
                .collect(),
            source_tractor: s.source_tractor().map(scalars),
        }
    }
}

impl SystemJson {
    pub fn to_system(&self) -> Result<SolutionSystem, CliError> {
        let invalid = |m: String| CliError::Validation(m);
        let geometry: GeometryKind = self.geometry.parse().map_err(|e| invalid(format!("{e}")))?;
        let n = geometry.dim();
        let expected: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        if self.variables != expected {
            return Err(invalid(format!("variables must be {expected:?}")));
        }
        let slots = self
            .slots
            .iter()
            .map(|s| {
                Ok(Slot {
                    label: s.label.parse::<BasisLabel>().map_err(|e| invalid(e.to_string()))?,
                    poly: MultiPoly::parse(&s.poly, n).map_err(|e| invalid(e.to_string()))?,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let source = self
            .source_tractor
            .as_ref()
            .map(|v| v.iter().map(|x| parse_scalar(x)).collect::<Result<Vec<_>, _>>())
            .transpose()
            .map_err(|e| invalid(e.to_string()))?;
        SolutionSystem::new(geometry, self.rep.clone(), self.degree_bound, slots, source)
            .map_err(|e| invalid(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelJson {
    pub geometry: String,
    pub dim: usize,
    pub ambient_dim: usize,
    pub grading_element: Vec<Vec<String>>,
    pub g_minus: Vec<Vec<Vec<String>>>,
    pub form: Option<Vec<Vec<String>>>,
}

impl From<&GradedLieModel> for ModelJson {
    fn from(m: &GradedLieModel) -> Self {
        ModelJson {
            geometry: m.kind().to_string(),
            dim: m.dim(),
            ambient_dim: m.ambient_dim(),
            grading_element: matrix(m.grading_element()),
            g_minus: m.g_minus_basis().iter().map(matrix).collect(),
            form: m.form_gram().map(matrix),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisJson {
    pub geometry: String,
    pub rep: String,
    pub dim: usize,
    pub depth: usize,
    pub systems: Vec<SystemJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntryJson {
    pub family: String,
    pub status: String,
    pub system: SystemJson,
    pub printed: Option<SystemJson>,
}

impl From<&CatalogEntry> for CatalogEntryJson {
    fn from(e: &CatalogEntry) -> Self {
        CatalogEntryJson {
            family: e.family.clone(),
            status: e.status.as_str().to_string(),
            system: (&e.system).into(),
            printed: e.printed.as_ref().map(Into::into),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogJson {
    pub geometry: String,
    pub rep: String,
    pub entries: Vec<CatalogEntryJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualJson {
    pub component: Vec<usize>,
    pub poly: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyJson {
    pub operator: String,
    pub holds: bool,
    pub residuals: Vec<ResidualJson>,
}

impl VerifyJson {
    pub fn new(operator: String, failing: &[Residual]) -> Self {
        VerifyJson {
            operator,
            holds: failing.is_empty(),
            residuals: failing
                .iter()
                .map(|r| ResidualJson {
                    component: r.component.clone(),
                    poly: r.poly.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    pub coords: Vec<String>,
    pub values: Vec<String>,
    pub tag: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrataJson {
    pub scheme: String,
    pub total: usize,
    pub counts: BTreeMap<String, usize>,
    pub points: Vec<PointJson>,
}

impl From<&PTypeReport> for StrataJson {
    fn from(r: &PTypeReport) -> Self {
        StrataJson {
            scheme: r.scheme.to_string(),
            total: r.total,
            counts: r.counts.clone(),
            points: r
                .points
                .iter()
                .map(|p| PointJson {
                    coords: scalars(&p.coords),
                    values: scalars(&p.values),
                    tag: p.tag.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorJson {
    pub error: String,
    pub message: String,
}
