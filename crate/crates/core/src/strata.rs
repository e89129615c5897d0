//! Pointwise classification of solution systems over rational sample
//! sets, and the pointwise form of tractor-norm constancy.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::bggsolve::{g_type_invariant, tractor_norm, SolutionSystem, SolveError};
use crate::exactmath::{ExactScalar, MathError};
use crate::exec::Execution;
use crate::repforge::Representation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrataError {
    #[error("unknown classifier scheme {0:?}; expected zero-nonzero or density-sign")]
    UnknownScheme(String),
    #[error("scheme {scheme} needs a conformal density system, got {rep} on {geometry}")]
    SchemeNotApplicable {
        scheme: ClassifierScheme,
        geometry: String,
        rep: String,
    },
    #[error("grid needs at least one point per axis")]
    EmptyGrid,
    #[error("cannot parse sample grid {0:?}; expected perAxis,bound")]
    GridParse(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Math(#[from] MathError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SampleSpec {
    /// `per_axis` evenly spaced values per coordinate on `[-bound, bound]`.
    Grid { per_axis: usize, bound: ExactScalar },
    Points(Vec<Vec<ExactScalar>>),
}

impl SampleSpec {
    pub fn grid(per_axis: usize, bound: ExactScalar) -> Result<Self, StrataError> {
        if per_axis == 0 {
            return Err(StrataError::EmptyGrid);
        }
        Ok(SampleSpec::Grid { per_axis, bound })
    }

    /// Sample points in lexicographic order, first coordinate slowest.
    pub fn points(&self, nvars: usize) -> Result<Vec<Vec<ExactScalar>>, StrataError> {
        match self {
            SampleSpec::Points(pts) => {
                if let Some(p) = pts.iter().find(|p| p.len() != nvars) {
                    return Err(MathError::PointLength {
                        expected: nvars,
                        got: p.len(),
                    }
                    .into());
                }
                Ok(pts.clone())
            }
            SampleSpec::Grid { per_axis, bound } => {
                if *per_axis == 0 {
                    return Err(StrataError::EmptyGrid);
                }
                let axis: Vec<ExactScalar> = (0..*per_axis)
                    .map(|k| {
                        if *per_axis == 1 {
                            ExactScalar::zero()
                        } else {
                            let step = ExactScalar::new((2 * k).into(), (per_axis - 1).into());
                            -bound + bound * step
                        }
                    })
                    .collect();
                let mut out = vec![Vec::new()];
                for _ in 0..nvars {
                    out = out
                        .into_iter()
                        .flat_map(|prefix| {
                            axis.iter().map(move |t| {
                                let mut p = prefix.clone();
                                p.push(t.clone());
                                p
                            })
                        })
                        .collect();
                }
                Ok(out)
            }
        }
    }
}

impl FromStr for SampleSpec {
    type Err = StrataError;

    /// Parses `perAxis,bound`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || StrataError::GridParse(s.to_string());
        let (m, b) = s.split_once(',').ok_or_else(bad)?;
        let m: usize = m.trim().parse().map_err(|_| bad())?;
        let b = crate::exactmath::parse_scalar(b).map_err(|_| bad())?;
        SampleSpec::grid(m, b.abs())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassifierScheme {
    ZeroNonzero,
    DensitySign,
}

impl ClassifierScheme {
    pub fn tags(self) -> &'static [&'static str] {
        match self {
            ClassifierScheme::ZeroNonzero => &["nonzero", "zero"],
            ClassifierScheme::DensitySign => &["negative", "positive", "zero"],
        }
    }
}

impl fmt::Display for ClassifierScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassifierScheme::ZeroNonzero => "zero-nonzero",
            ClassifierScheme::DensitySign => "density-sign",
        })
    }
}

impl FromStr for ClassifierScheme {
    type Err = StrataError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "zero-nonzero" => Ok(ClassifierScheme::ZeroNonzero),
            "density-sign" => Ok(ClassifierScheme::DensitySign),
            _ => Err(StrataError::UnknownScheme(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointRecord {
    pub coords: Vec<ExactScalar>,
    pub values: Vec<ExactScalar>,
    pub tag: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PTypeReport {
    pub scheme: ClassifierScheme,
    pub total: usize,
    /// Every tag of the scheme, including those with no points.
    pub counts: BTreeMap<String, usize>,
    pub points: Vec<PointRecord>,
}

fn tag(scheme: ClassifierScheme, values: &[ExactScalar]) -> &'static str {
    match scheme {
        ClassifierScheme::ZeroNonzero => {
            if values.iter().all(Zero::is_zero) {
                "zero"
            } else {
                "nonzero"
            }
        }
        ClassifierScheme::DensitySign => {
            let v = &values[0];
            if v.is_zero() {
                "zero"
            } else if v.is_positive() {
                "positive"
            } else {
                "negative"
            }
        }
    }
}

pub fn classify_points(
    system: &SolutionSystem,
    spec: &SampleSpec,
    scheme: ClassifierScheme,
) -> Result<PTypeReport, StrataError> {
    classify_points_with(system, spec, scheme, Execution::default())
}

pub fn classify_points_with(
    system: &SolutionSystem,
    spec: &SampleSpec,
    scheme: ClassifierScheme,
    exec: Execution,
) -> Result<PTypeReport, StrataError> {
    if scheme == ClassifierScheme::DensitySign
        && !(system.geometry().is_conformal() && system.slots().len() == 1)
    {
        return Err(StrataError::SchemeNotApplicable {
            scheme,
            geometry: system.geometry().to_string(),
            rep: system.rep().to_string(),
        });
    }
    let pts = spec.points(system.nvars())?;
    let points = exec
        .map(&pts, |p| {
            let values = system.eval(p)?;
            Ok(PointRecord {
                coords: p.clone(),
                tag: tag(scheme, &values),
                values,
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>, MathError>>()?;
    let mut counts: BTreeMap<String, usize> = scheme.tags().iter().map(|t| (t.to_string(), 0)).collect();
    for p in &points {
        *counts.get_mut(p.tag).expect("tag belongs to scheme") += 1;
    }
    Ok(PTypeReport {
        scheme,
        total: points.len(),
        counts,
        points,
    })
}

/// The tractor norm evaluated at every sample point equals the G-type
/// invariant of `v₀`.
pub fn gtype_consistency(rep: &Representation, v0: &[ExactScalar], spec: &SampleSpec) -> Result<bool, StrataError> {
    let expected = g_type_invariant(rep, v0)?;
    let norm = tractor_norm(rep, v0)?;
    for p in spec.points(rep.nvars())? {
        if norm.eval(&p)? != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bggsolve::solution_from_tractor;
    use crate::exactmath::{int, rat};
    use crate::liemodel::GeometryKind;
    use crate::repforge::RepDescriptor;

    fn rep(g: &str, d: &str) -> Representation {
        let model = g.parse::<GeometryKind>().unwrap().build().unwrap();
        d.parse::<RepDescriptor>().unwrap().build(&model).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<ExactScalar> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn grid_points() {
        let g = SampleSpec::grid(5, int(2)).unwrap();
        let pts = g.points(2).unwrap();
        assert_eq!(pts.len(), 25);
        assert_eq!(pts[0], ints(&[-2, -2]));
        assert_eq!(pts[1], ints(&[-2, -1]));
        assert_eq!(pts[24], ints(&[2, 2]));
        let half = SampleSpec::grid(3, rat(1, 2)).unwrap().points(1).unwrap();
        assert_eq!(half, vec![vec![rat(-1, 2)], vec![int(0)], vec![rat(1, 2)]]);
        assert_eq!(SampleSpec::grid(1, int(7)).unwrap().points(2).unwrap(), vec![ints(&[0, 0])]);
        assert!(SampleSpec::grid(0, int(1)).is_err());
        assert_eq!("5,2".parse::<SampleSpec>().unwrap(), g);
        assert!("5".parse::<SampleSpec>().is_err());
    }

    #[test]
    fn circle_strata() {
        // σ = X⁰ + X³ = 1 − ½(x₁² + x₂²)
        let r = rep("conformal:2,0", "std");
        let s = solution_from_tractor(&r, &ints(&[1, 0, 0, 1])).unwrap();
        assert_eq!(s.slots()[0].poly.to_string(), "-1/2*x1^2 - 1/2*x2^2 + 1");
        let report = classify_points(&s, &"5,2".parse().unwrap(), ClassifierScheme::DensitySign).unwrap();
        assert_eq!(report.total, 25);
        assert_eq!(report.counts["positive"], 5);
        assert_eq!(report.counts["zero"], 4);
        assert_eq!(report.counts["negative"], 16);
        let zeros: Vec<_> = report.points.iter().filter(|p| p.tag == "zero").map(|p| p.coords.clone()).collect();
        assert_eq!(zeros, vec![ints(&[-1, -1]), ints(&[-1, 1]), ints(&[1, -1]), ints(&[1, 1])]);
    }

    #[test]
    fn trivial_strata() {
        let r = rep("conformal:2,1", "ext(2,std)");
        let zero = solution_from_tractor(&r, &vec![int(0); r.dim()]).unwrap();
        let spec: SampleSpec = "3,1".parse().unwrap();
        let report = classify_points(&zero, &spec, ClassifierScheme::ZeroNonzero).unwrap();
        assert_eq!(report.counts["zero"], report.total);
        let p = rep("projective:2", "std");
        let constant = solution_from_tractor(&p, &ints(&[0, 1, 0])).unwrap();
        let report = classify_points(&constant, &spec, ClassifierScheme::ZeroNonzero).unwrap();
        assert_eq!(report.counts["zero"], 0);
        assert!(classify_points(&constant, &spec, ClassifierScheme::DensitySign).is_err());
        let one = solution_from_tractor(&rep("conformal:2,0", "std"), &ints(&[0, 0, 0, 1])).unwrap();
        let report = classify_points(&one, &"4,3".parse().unwrap(), ClassifierScheme::DensitySign).unwrap();
        assert_eq!(report.counts["zero"], 0);
        assert!("sign".parse::<ClassifierScheme>().is_err());
    }

    #[test]
    fn norms_are_pointwise_constant() {
        let r = rep("conformal:2,1", "std");
        let spec: SampleSpec = "3,2".parse().unwrap();
        for v in [ints(&[1, 0, 0, 0, 0]), ints(&[0, 1, 0, 0, 0]), vec![rat(1, 3), int(-2), rat(5, 7), int(1), rat(-1, 2)]] {
            assert!(gtype_consistency(&r, &v, &spec).unwrap());
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let r = rep("conformal:3,0", "std");
        let s = solution_from_tractor(&r, &ints(&[1, 1, 0, 0, 1])).unwrap();
        let spec: SampleSpec = "4,3/2".parse().unwrap();
        let a = classify_points_with(&s, &spec, ClassifierScheme::DensitySign, Execution::Sequential).unwrap();
        let b = classify_points_with(&s, &spec, ClassifierScheme::DensitySign, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
