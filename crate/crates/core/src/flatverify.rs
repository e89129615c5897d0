//! Flat-model differential operators acting on polynomial tensor fields in
//! coordinate frames, used as independent checks of generated solutions
//! and to compute exact kernels on polynomials of bounded degree.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::bggsolve::{slot_indices, SolutionSystem};
use crate::exactmath::{exact_nullspace, rank, ExactScalar, Exponents, MathError, MultiPoly, RatMatrix};
use crate::exec::Execution;
use crate::liemodel::{GeometryKind, SignatureForm};
use crate::repforge::{sort_with_sign, RepDescriptor};

/// Diagonal flat metric `diag(ε₁, …, ε_n)`.
pub type FlatMetric = SignatureForm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("{op} does not act on {kind} fields")]
    KindMismatch { op: FlatOperator, kind: TensorKind },
    #[error("{op} needs a flat metric")]
    MissingMetric { op: FlatOperator },
    #[error("metric has {got} entries, field has {expected} variables")]
    MetricLength { expected: usize, got: usize },
    #[error("form degree {r} out of range 1..={max}")]
    RankOutOfRange { r: usize, max: usize },
    #[error("{op} needs at least {min} variables")]
    DimensionTooSmall { op: FlatOperator, min: usize },
    #[error("no tensor interpretation for {rep} on {geometry}")]
    Unsupported { geometry: String, rep: String },
    #[error("unknown operator {0:?}")]
    UnknownOperator(String),
    #[error("repeated index in alternating component {0:?}")]
    RepeatedIndex(Vec<usize>),
    #[error(transparent)]
    Math(#[from] MathError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TensorKind {
    Density,
    Vector,
    /// Symmetric covariant tensor of the given valence, stored by monomial
    /// coefficients: `ψ = Σ_{i₁≤…≤i_k} c_{i₁…i_k} φ_{i₁}⋯φ_{i_k}`.
    Symmetric(usize),
    /// Alternating covariant tensor, stored by components `ω_{i₁<…<i_r}`.
    Alternating(usize),
}

impl fmt::Display for TensorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TensorKind::Density => write!(f, "density"),
            TensorKind::Vector => write!(f, "vector"),
            TensorKind::Symmetric(k) => write!(f, "symmetric valence-{k}"),
            TensorKind::Alternating(r) => write!(f, "{r}-form"),
        }
    }
}

impl TensorKind {
    /// Canonical component keys, in order.
    pub fn keys(self, n: usize) -> Vec<Vec<usize>> {
        match self {
            TensorKind::Density => vec![vec![]],
            TensorKind::Vector => (0..n).map(|i| vec![i]).collect(),
            TensorKind::Symmetric(k) => multisets(n, k),
            TensorKind::Alternating(r) => combinations(n, r),
        }
    }
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, r, &mut Vec::new(), &mut out);
    out
}

fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Polynomial tensor field on `ℝⁿ`, components keyed canonically (sorted
/// index lists).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyTensorField {
    kind: TensorKind,
    nvars: usize,
    components: BTreeMap<Vec<usize>, MultiPoly>,
}

impl PolyTensorField {
    pub fn zero(kind: TensorKind, nvars: usize) -> Self {
        PolyTensorField {
            kind,
            nvars,
            components: BTreeMap::new(),
        }
    }

    pub fn density(sigma: MultiPoly) -> Self {
        let mut f = Self::zero(TensorKind::Density, sigma.nvars());
        f.components.insert(vec![], sigma);
        f
    }

    pub fn vector(components: Vec<MultiPoly>) -> Self {
        let n = components.len();
        let mut f = Self::zero(TensorKind::Vector, n);
        for (i, p) in components.into_iter().enumerate() {
            f.components.insert(vec![i], p);
        }
        f
    }

    pub fn kind(&self) -> TensorKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Adds `p` to the component at `idx`, reordering indices as the
    /// symmetry type requires.
    pub fn add(&mut self, idx: &[usize], p: &MultiPoly) -> Result<(), VerifyError> {
        let mut key = idx.to_vec();
        let mut scaled = p.clone();
        match self.kind {
            TensorKind::Alternating(_) => {
                let sign = sort_with_sign(&mut key).ok_or_else(|| VerifyError::RepeatedIndex(idx.to_vec()))?;
                if sign < 0 {
                    scaled = -scaled;
                }
            }
            _ => key.sort_unstable(),
        }
        let entry = self
            .components
            .entry(key)
            .or_insert_with(|| MultiPoly::zero(p.nvars()));
        entry.add_scaled(&scaled, &ExactScalar::one());
        Ok(())
    }

    /// Component at an arbitrary index list; alternating components with a
    /// repeated index are zero.
    pub fn get(&self, idx: &[usize]) -> MultiPoly {
        let mut key = idx.to_vec();
        let sign = match self.kind {
            TensorKind::Alternating(_) => match sort_with_sign(&mut key) {
                Some(s) => s,
                None => return MultiPoly::zero(self.nvars),
            },
            _ => {
                key.sort_unstable();
                1
            }
        };
        match self.components.get(&key) {
            Some(p) if sign < 0 => -p.clone(),
            Some(p) => p.clone(),
            None => MultiPoly::zero(self.nvars),
        }
    }

    /// Lowers a vector field to a 1-form with `g`.
    pub fn lower(&self, g: &FlatMetric) -> PolyTensorField {
        assert_eq!(self.kind, TensorKind::Vector, "only vector fields are lowered");
        let mut out = Self::zero(TensorKind::Alternating(1), self.nvars);
        for (k, p) in &self.components {
            out.components.insert(k.clone(), p.scale(&g.eps(k[0])));
        }
        out
    }

    /// Reads a solution system as a tensor field in coordinate frames.
    pub fn from_system(system: &SolutionSystem) -> Result<Self, VerifyError> {
        let geometry = system.geometry();
        let unsupported = || VerifyError::Unsupported {
            geometry: geometry.to_string(),
            rep: system.rep().to_string(),
        };
        let desc: RepDescriptor = system.rep().parse().map_err(|_| unsupported())?;
        let n = system.nvars();
        let is_std = |r: &RepDescriptor| matches!(r, RepDescriptor::Std);
        let is_dual_std = |r: &RepDescriptor| matches!(r, RepDescriptor::Dual(i) if is_std(i));
        let (kind, lowered) = match (geometry, &desc) {
            (GeometryKind::Projective { .. }, RepDescriptor::Ext(2, r)) if is_dual_std(r) => {
                (TensorKind::Symmetric(1), false)
            }
            (GeometryKind::Projective { .. }, RepDescriptor::CartanS2L2) => (TensorKind::Symmetric(2), false),
            (GeometryKind::Projective { .. }, RepDescriptor::Sym(_, r)) if is_dual_std(r) => {
                (TensorKind::Density, false)
            }
            (GeometryKind::Projective { .. }, r) if is_dual_std(r) => (TensorKind::Density, false),
            (GeometryKind::Conformal { .. }, RepDescriptor::Std) => (TensorKind::Density, false),
            (GeometryKind::Conformal { .. }, RepDescriptor::Ext(2, r)) if is_std(r) => (TensorKind::Vector, false),
            (GeometryKind::Conformal { .. }, RepDescriptor::Ext(k, r)) if is_std(r) && (3..=n).contains(k) => {
                (TensorKind::Alternating(k - 1), true)
            }
            _ => return Err(unsupported()),
        };
        let sig = geometry.signature();
        let mut field = Self::zero(kind, n);
        for slot in system.slots() {
            let idx = slot_indices(geometry, &slot.label);
            let mut p = slot.poly.clone();
            if lowered {
                let g = sig.as_ref().ok_or_else(unsupported)?;
                for &i in &idx {
                    p = p.scale(&g.eps(i));
                }
            }
            field.add(&idx, &p)?;
        }
        Ok(field)
    }

    fn coefficient_keys(&self) -> impl Iterator<Item = ((Vec<usize>, Exponents), ExactScalar)> + '_ {
        self.components
            .iter()
            .flat_map(|(k, p)| p.terms().map(move |(e, c)| ((k.clone(), e.clone()), c.clone())))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FlatOperator {
    Killing,
    ConformalKillingVector,
    ConformalKillingForm,
    TracefreeHessian,
    HigherDensity(usize),
}

impl fmt::Display for FlatOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlatOperator::Killing => write!(f, "killing"),
            FlatOperator::ConformalKillingVector => write!(f, "conformal-killing-vector"),
            FlatOperator::ConformalKillingForm => write!(f, "conformal-killing-form"),
            FlatOperator::TracefreeHessian => write!(f, "tracefree-hessian"),
            FlatOperator::HigherDensity(k) => write!(f, "higher-density:{k}"),
        }
    }
}

impl FromStr for FlatOperator {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || VerifyError::UnknownOperator(s.to_string());
        Ok(match s {
            "killing" => FlatOperator::Killing,
            "conformal-killing-vector" => FlatOperator::ConformalKillingVector,
            "conformal-killing-form" => FlatOperator::ConformalKillingForm,
            "tracefree-hessian" => FlatOperator::TracefreeHessian,
            _ => {
                let k = s.strip_prefix("higher-density:").ok_or_else(bad)?;
                let k: usize = k.parse().map_err(|_| bad())?;
                if k == 0 {
                    return Err(bad());
                }
                FlatOperator::HigherDensity(k)
            }
        })
    }
}

/// One component of `D(field)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub component: Vec<usize>,
    pub poly: MultiPoly,
}

fn d(p: &MultiPoly, var: usize) -> MultiPoly {
    p.partial(var).expect("index within the field's variables")
}

fn sign(k: usize) -> ExactScalar {
    if k % 2 == 0 {
        ExactScalar::one()
    } else {
        -ExactScalar::one()
    }
}

fn frac(a: usize, b: usize) -> ExactScalar {
    ExactScalar::new(a.into(), b.into())
}

fn metric_for<'a>(op: FlatOperator, n: usize, g: Option<&'a FlatMetric>) -> Result<&'a FlatMetric, VerifyError> {
    let g = g.ok_or(VerifyError::MissingMetric { op })?;
    if g.dim() != n {
        return Err(VerifyError::MetricLength {
            expected: n,
            got: g.dim(),
        });
    }
    Ok(g)
}

/// Every component of `D(field)` in canonical order, zero ones included.
pub fn residuals(
    op: FlatOperator,
    field: &PolyTensorField,
    g: Option<&FlatMetric>,
) -> Result<Vec<Residual>, VerifyError> {
    let n = field.nvars;
    let mismatch = || VerifyError::KindMismatch { op, kind: field.kind };
    let mut out = Vec::new();
    match op {
        FlatOperator::Killing => {
            let TensorKind::Symmetric(k) = field.kind else {
                return Err(mismatch());
            };
            // coefficient of v^J in Σ_a v_a ∂_a Σ_I c_I v^I
            for key in multisets(n, k + 1) {
                let mut poly = MultiPoly::zero(n);
                let distinct: BTreeSet<usize> = key.iter().copied().collect();
                for a in distinct {
                    let mut rest = key.clone();
                    let pos = rest.iter().position(|&x| x == a).expect("a occurs in key");
                    rest.remove(pos);
                    poly.add_scaled(&d(&field.get(&rest), a), &ExactScalar::one());
                }
                out.push(Residual { component: key, poly });
            }
        }
        FlatOperator::ConformalKillingVector => {
            if field.kind != TensorKind::Vector {
                return Err(mismatch());
            }
            if n < 2 {
                return Err(VerifyError::DimensionTooSmall { op, min: 2 });
            }
            let g = metric_for(op, n, g)?;
            let mut div = MultiPoly::zero(n);
            for c in 0..n {
                div.add_scaled(&d(&field.get(&[c]), c), &ExactScalar::one());
            }
            for a in 0..n {
                for b in a..n {
                    let mut poly = d(&field.get(&[b]), a).scale(&g.eps(b));
                    poly.add_scaled(&d(&field.get(&[a]), b), &g.eps(a));
                    if a == b {
                        poly.add_scaled(&div, &-(frac(2, n) * g.eps(a)));
                    }
                    out.push(Residual {
                        component: vec![a, b],
                        poly,
                    });
                }
            }
        }
        FlatOperator::ConformalKillingForm => {
            let TensorKind::Alternating(r) = field.kind else {
                return Err(mismatch());
            };
            if r == 0 || r >= n {
                return Err(VerifyError::RankOutOfRange {
                    r,
                    max: n.saturating_sub(1),
                });
            }
            let g = metric_for(op, n, g)?;
            // divergence (δω)_D = Σ_c ε_c ∂_c ω_{cD}
            let div: HashMap<Vec<usize>, MultiPoly> = combinations(n, r - 1)
                .into_iter()
                .map(|dkey| {
                    let mut p = MultiPoly::zero(n);
                    for c in 0..n {
                        let mut idx = vec![c];
                        idx.extend(&dkey);
                        p.add_scaled(&d(&field.get(&idx), c), &g.eps(c));
                    }
                    (dkey, p)
                })
                .collect();
            let div_at = |idx: &[usize]| {
                let mut key = idx.to_vec();
                match sort_with_sign(&mut key) {
                    Some(s) => div[&key].scale(&ExactScalar::from_integer(s.into())),
                    None => MultiPoly::zero(n),
                }
            };
            let (alt, tr) = (frac(1, r + 1), frac(1, n - r + 1));
            for a in 0..n {
                for bkey in combinations(n, r) {
                    let mut poly = d(&field.get(&bkey), a);
                    let mut c = vec![a];
                    c.extend(&bkey);
                    for k in 0..=r {
                        let mut rest = c.clone();
                        let ck = rest.remove(k);
                        poly.add_scaled(&d(&field.get(&rest), ck), &-(sign(k) * &alt));
                    }
                    for (k, &bk) in bkey.iter().enumerate() {
                        if bk == a {
                            let mut rest = bkey.clone();
                            rest.remove(k);
                            poly.add_scaled(&div_at(&rest), &-(sign(k) * g.eps(a) * &tr));
                        }
                    }
                    let mut component = vec![a];
                    component.extend(bkey);
                    out.push(Residual { component, poly });
                }
            }
        }
        FlatOperator::TracefreeHessian => {
            if field.kind != TensorKind::Density {
                return Err(mismatch());
            }
            if n < 2 {
                return Err(VerifyError::DimensionTooSmall { op, min: 2 });
            }
            let g = metric_for(op, n, g)?;
            let sigma = field.get(&[]);
            let mut laplace = MultiPoly::zero(n);
            for c in 0..n {
                laplace.add_scaled(&d(&d(&sigma, c), c), &g.eps(c));
            }
            for a in 0..n {
                for b in a..n {
                    let mut poly = d(&d(&sigma, a), b);
                    if a == b {
                        poly.add_scaled(&laplace, &-(frac(1, n) * g.eps(a)));
                    }
                    out.push(Residual {
                        component: vec![a, b],
                        poly,
                    });
                }
            }
        }
        FlatOperator::HigherDensity(k) => {
            if field.kind != TensorKind::Density {
                return Err(mismatch());
            }
            let sigma = field.get(&[]);
            for key in multisets(n, k) {
                let poly = key.iter().fold(sigma.clone(), |p, &v| d(&p, v));
                out.push(Residual { component: key, poly });
            }
        }
    }
    Ok(out)
}

/// The nonzero residual components; empty iff the field solves `D = 0`.
pub fn failing_components(
    op: FlatOperator,
    field: &PolyTensorField,
    g: Option<&FlatMetric>,
) -> Result<Vec<Residual>, VerifyError> {
    Ok(residuals(op, field, g)?.into_iter().filter(|r| !r.poly.is_zero()).collect())
}

fn holds(op: FlatOperator, field: &PolyTensorField, g: Option<&FlatMetric>) -> Result<bool, VerifyError> {
    Ok(failing_components(op, field, g)?.is_empty())
}

/// Full symmetrization of `∂ψ` vanishes.
pub fn killing_check(psi: &PolyTensorField) -> Result<bool, VerifyError> {
    holds(FlatOperator::Killing, psi, None)
}

pub fn conformal_killing_vector_check(xi: &PolyTensorField, g: &FlatMetric) -> Result<bool, VerifyError> {
    holds(FlatOperator::ConformalKillingVector, xi, Some(g))
}

/// `∂φ` equals its alternating part plus its trace part.
pub fn conformal_killing_form_check(phi: &PolyTensorField, g: &FlatMetric) -> Result<bool, VerifyError> {
    holds(FlatOperator::ConformalKillingForm, phi, Some(g))
}

pub fn tracefree_hessian_check(sigma: &MultiPoly, g: &FlatMetric) -> Result<bool, VerifyError> {
    holds(FlatOperator::TracefreeHessian, &PolyTensorField::density(sigma.clone()), Some(g))
}

/// All `k`-fold partials of `σ` vanish.
pub fn higher_density_check(sigma: &MultiPoly, k: usize) -> Result<bool, VerifyError> {
    holds(FlatOperator::HigherDensity(k), &PolyTensorField::density(sigma.clone()), None)
}

/// Reads `system` as a tensor field and returns the failing residuals.
pub fn verify_system(op: FlatOperator, system: &SolutionSystem) -> Result<Vec<Residual>, VerifyError> {
    let field = PolyTensorField::from_system(system)?;
    let g = system.geometry().signature();
    let field = match (op, field.kind) {
        (FlatOperator::ConformalKillingForm, TensorKind::Vector) => field.lower(g.as_ref().expect("conformal")),
        _ => field,
    };
    failing_components(op, &field, g.as_ref())
}

/// Basis of the fields of `kind` with polynomial components of degree at
/// most `max_degree` annihilated by `op`.
pub fn operator_kernel(
    op: FlatOperator,
    kind: TensorKind,
    nvars: usize,
    g: Option<&FlatMetric>,
    max_degree: u32,
    exec: Execution,
) -> Result<Vec<PolyTensorField>, VerifyError> {
    let monomials = Exponents::up_to_degree(nvars, max_degree);
    let unknowns: Vec<(Vec<usize>, Exponents)> = kind
        .keys(nvars)
        .into_iter()
        .flat_map(|k| monomials.iter().map(move |e| (k.clone(), e.clone())))
        .collect();
    let columns = exec
        .map(&unknowns, |(key, e)| {
            let mut field = PolyTensorField::zero(kind, nvars);
            field.add(key, &MultiPoly::monomial(nvars, e.clone(), ExactScalar::one()))?;
            let res = residuals(op, &field, g)?;
            Ok(res
                .into_iter()
                .enumerate()
                .flat_map(|(i, r)| {
                    r.poly
                        .terms()
                        .map(|(e, c)| ((i, e.clone()), c.clone()))
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>())
        })
        .into_iter()
        .collect::<Result<Vec<_>, VerifyError>>()?;
    let rows: BTreeSet<&(usize, Exponents)> = columns.iter().flatten().map(|(k, _)| k).collect();
    let row_index: HashMap<&(usize, Exponents), usize> = rows.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut m = RatMatrix::zeros(row_index.len(), unknowns.len());
    for (j, col) in columns.iter().enumerate() {
        for (k, c) in col {
            m[(row_index[k], j)] = c.clone();
        }
    }
    Ok(exact_nullspace(&m)
        .into_iter()
        .map(|v| {
            let mut field = PolyTensorField::zero(kind, nvars);
            for ((key, e), c) in unknowns.iter().zip(v) {
                if !c.is_zero() {
                    field
                        .add(key, &MultiPoly::monomial(nvars, e.clone(), c))
                        .expect("canonical keys");
                }
            }
            field
        })
        .collect())
}

fn field_matrix(fields: &[&PolyTensorField]) -> RatMatrix {
    let keys: BTreeSet<(Vec<usize>, Exponents)> =
        fields.iter().flat_map(|f| f.coefficient_keys().map(|(k, _)| k)).collect();
    let index: HashMap<&(Vec<usize>, Exponents), usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut m = RatMatrix::zeros(fields.len(), keys.len());
    for (r, f) in fields.iter().enumerate() {
        for (k, c) in f.coefficient_keys() {
            m[(r, index[&k])] = c;
        }
    }
    m
}

pub fn field_span_dimension(fields: &[PolyTensorField]) -> usize {
    rank(&field_matrix(&fields.iter().collect::<Vec<_>>()))
}

pub fn fields_same_span(a: &[PolyTensorField], b: &[PolyTensorField]) -> bool {
    let all: Vec<&PolyTensorField> = a.iter().chain(b).collect();
    if all.windows(2).any(|w| w[0].kind != w[1].kind) {
        return false;
    }
    let joint = rank(&field_matrix(&all));
    field_span_dimension(a) == joint && field_span_dimension(b) == joint
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;

    fn p(s: &str, n: usize) -> MultiPoly {
        MultiPoly::parse(s, n).unwrap()
    }

    fn covector(parts: &[&str]) -> PolyTensorField {
        let n = parts.len();
        let mut f = PolyTensorField::zero(TensorKind::Symmetric(1), n);
        for (i, s) in parts.iter().enumerate() {
            f.add(&[i], &p(s, n)).unwrap();
        }
        f
    }

    fn vector(parts: &[&str]) -> PolyTensorField {
        PolyTensorField::vector(parts.iter().map(|s| p(s, parts.len())).collect())
    }

    #[test]
    fn killing_covectors() {
        assert!(killing_check(&covector(&["-x2", "x1"])).unwrap());
        assert!(!killing_check(&covector(&["x1", "0"])).unwrap());
        assert!(killing_check(&covector(&["3", "-1/2"])).unwrap());
    }

    #[test]
    fn killing_two_tensors() {
        // (x1 φ2 - x2 φ1)² is Killing, x1 φ1² is not
        let mut f = PolyTensorField::zero(TensorKind::Symmetric(2), 2);
        f.add(&[1, 1], &p("x1^2", 2)).unwrap();
        f.add(&[0, 1], &p("-2*x1*x2", 2)).unwrap();
        f.add(&[0, 0], &p("x2^2", 2)).unwrap();
        assert!(killing_check(&f).unwrap());
        let mut g = PolyTensorField::zero(TensorKind::Symmetric(2), 2);
        g.add(&[0, 0], &p("x1", 2)).unwrap();
        assert!(!killing_check(&g).unwrap());
        assert!(killing_check(&vector(&["1", "0"])).is_err());
    }

    #[test]
    fn conformal_killing_vectors() {
        let g = FlatMetric::new(2, 1);
        assert!(conformal_killing_vector_check(&vector(&["1", "0", "0"]), &g).unwrap());
        assert!(conformal_killing_vector_check(&vector(&["x1", "x2", "x3"]), &g).unwrap());
        // ½Q ∂_1 − ε_1 x_1 Σ x_j ∂_j with Q = x1² + x2² − x3²
        let sc = vector(&["-1/2*x1^2 + 1/2*x2^2 - 1/2*x3^2", "-x1*x2", "-x1*x3"]);
        assert!(conformal_killing_vector_check(&sc, &g).unwrap());
        let printed = vector(&["3/2*x1^2 + 1/2*x2^2 - 1/2*x3^2", "x1*x2", "x1*x3"]);
        assert!(!conformal_killing_vector_check(&printed, &g).unwrap());
        assert!(conformal_killing_vector_check(&vector(&["x1"]), &FlatMetric::new(1, 0)).is_err());
    }

    #[test]
    fn conformal_killing_forms() {
        let g = FlatMetric::new(3, 0);
        let mut c = PolyTensorField::zero(TensorKind::Alternating(2), 3);
        c.add(&[0, 1], &p("5", 3)).unwrap();
        assert!(conformal_killing_form_check(&c, &g).unwrap());
        let mut bad = PolyTensorField::zero(TensorKind::Alternating(2), 3);
        bad.add(&[0, 1], &p("x3", 3)).unwrap();
        assert!(!conformal_killing_form_check(&bad, &g).unwrap());
        // dual of the radial field x_i∂_i in dimension 3 is the closed-free 2-form x1 dx2∧dx3 − …
        let mut radial = PolyTensorField::zero(TensorKind::Alternating(2), 3);
        radial.add(&[1, 2], &p("x1", 3)).unwrap();
        radial.add(&[0, 2], &p("-x2", 3)).unwrap();
        radial.add(&[0, 1], &p("x3", 3)).unwrap();
        assert!(conformal_killing_form_check(&radial, &g).unwrap());
        assert!(matches!(
            conformal_killing_form_check(&PolyTensorField::zero(TensorKind::Alternating(3), 3), &g),
            Err(VerifyError::RankOutOfRange { .. })
        ));
    }

    #[test]
    fn one_forms_match_vectors() {
        let g = FlatMetric::new(2, 1);
        for parts in [
            ["-1/2*x1^2 + 1/2*x2^2 - 1/2*x3^2", "-x1*x2", "-x1*x3"],
            ["x2", "-x1", "0"],
            ["x1^2", "x2", "1"],
        ] {
            let v = vector(&parts);
            assert_eq!(
                conformal_killing_vector_check(&v, &g).unwrap(),
                conformal_killing_form_check(&v.lower(&g), &g).unwrap()
            );
        }
    }

    #[test]
    fn densities() {
        let g = FlatMetric::new(1, 1);
        assert!(tracefree_hessian_check(&p("1", 2), &g).unwrap());
        assert!(tracefree_hessian_check(&p("-x2", 2), &g).unwrap());
        assert!(tracefree_hessian_check(&p("-1/2*x1^2 + 1/2*x2^2", 2), &g).unwrap());
        assert!(!tracefree_hessian_check(&p("x1^2", 2), &g).unwrap());
        assert!(higher_density_check(&p("x1*x2", 2), 3).unwrap());
        assert!(!higher_density_check(&p("x1^2", 2), 2).unwrap());
    }

    #[test]
    fn operator_names() {
        for s in ["killing", "conformal-killing-vector", "conformal-killing-form", "tracefree-hessian", "higher-density:3"] {
            assert_eq!(s.parse::<FlatOperator>().unwrap().to_string(), s);
        }
        assert!("higher-density:0".parse::<FlatOperator>().is_err());
        assert!("hessian".parse::<FlatOperator>().is_err());
    }

    #[test]
    fn small_kernels() {
        // Killing covectors in the plane: 2 translations + 1 rotation
        let k = operator_kernel(FlatOperator::Killing, TensorKind::Symmetric(1), 2, None, 1, Execution::Sequential).unwrap();
        assert_eq!(k.len(), 3);
        assert!(k.iter().all(|f| killing_check(f).unwrap()));
        let dens = operator_kernel(FlatOperator::HigherDensity(2), TensorKind::Density, 2, None, 3, Execution::default()).unwrap();
        assert_eq!(dens.len(), 3);
        let _ = int(0);
    }
}
