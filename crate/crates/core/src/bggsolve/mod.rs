//! Normal solutions on the flat model: `exp(-ρ(X))·v₀` projected to the
//! lowest grading slots, homogeneous coordinates, tractor norms, and span
//! comparisons of solution systems.

mod catalog;

use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactmath::{rank, ExactScalar, Exponents, MathError, MultiPoly, PolyMatrix, RatMatrix};
use crate::exec::Execution;
use crate::liemodel::{rho_of, GeometryKind};
use crate::repforge::{quotient_projection, BasisLabel, RepError, Representation};

pub use catalog::{
    catalog, normal_parallel_frame, printed_conformal_exponential, CatalogEntry, FixtureStatus,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("ρ(X)^{power} does not vanish on {rep}")]
    Nilpotency { rep: String, power: usize },
    #[error("tractor has {got} coordinates, representation has dimension {expected}")]
    TractorLength { expected: usize, got: usize },
    #[error("{0} carries no invariant form")]
    NoForm(String),
    #[error("tractor norm is not constant: {0}")]
    NonConstantNorm(String),
    #[error("no catalog for {rep} on {geometry}")]
    Uncataloged { geometry: String, rep: String },
    #[error("invalid solution system: {0}")]
    Invalid(String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Math(#[from] MathError),
}

/// Coefficient of one lowest-grading basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slot {
    pub label: BasisLabel,
    pub poly: MultiPoly,
}

/// Polynomial coefficients of a solution in the normal frame, one per
/// slot of the irreducible quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSystem {
    geometry: GeometryKind,
    rep: String,
    degree_bound: usize,
    slots: Vec<Slot>,
    source_tractor: Option<Vec<ExactScalar>>,
}

impl SolutionSystem {
    pub fn new(
        geometry: GeometryKind,
        rep: impl Into<String>,
        degree_bound: usize,
        slots: Vec<Slot>,
        source_tractor: Option<Vec<ExactScalar>>,
    ) -> Result<Self, SolveError> {
        let nvars = geometry.dim();
        for s in &slots {
            if s.poly.nvars() != nvars {
                return Err(SolveError::Invalid(format!(
                    "slot {} has {} variables, geometry has {nvars}",
                    s.label,
                    s.poly.nvars()
                )));
            }
            if s.poly.total_degree().is_some_and(|d| d as usize > degree_bound) {
                return Err(SolveError::Invalid(format!(
                    "slot {} exceeds the degree bound {degree_bound}",
                    s.label
                )));
            }
        }
        Ok(SolutionSystem {
            geometry,
            rep: rep.into(),
            degree_bound,
            slots,
            source_tractor,
        })
    }

    pub fn geometry(&self) -> GeometryKind {
        self.geometry
    }

    pub fn rep(&self) -> &str {
        &self.rep
    }

    pub fn nvars(&self) -> usize {
        self.geometry.dim()
    }

    pub fn variables(&self) -> Vec<String> {
        (1..=self.nvars()).map(|i| format!("x{i}")).collect()
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn source_tractor(&self) -> Option<&[ExactScalar]> {
        self.source_tractor.as_deref()
    }

    pub fn coefficient(&self, label: &BasisLabel) -> Option<&MultiPoly> {
        self.slots.iter().find(|s| &s.label == label).map(|s| &s.poly)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.slots.iter().filter_map(|s| s.poly.total_degree()).max()
    }

    pub fn is_zero(&self) -> bool {
        self.slots.iter().all(|s| s.poly.is_zero())
    }

    /// Values of every slot at a point.
    pub fn eval(&self, point: &[ExactScalar]) -> Result<Vec<ExactScalar>, MathError> {
        self.slots.iter().map(|s| s.poly.eval(point)).collect()
    }

    /// Scales so the leading coefficient of the first nonzero slot is 1.
    pub fn normalized(&self) -> SolutionSystem {
        let mut out = self.clone();
        if let Some(lead) = self.slots.iter().find_map(|s| s.poly.leading_coeff()) {
            let inv = lead.recip();
            for s in &mut out.slots {
                s.poly = s.poly.scale(&inv);
            }
        }
        out
    }
}

/// Generator nonzeros flattened as `(variable, row, column, value)`.
fn rho_terms(rep: &Representation) -> Vec<(usize, usize, usize, ExactScalar)> {
    rep.generators()
        .iter()
        .enumerate()
        .flat_map(|(var, b)| b.nonzeros().into_iter().map(move |(r, c, v)| (var, r, c, v)))
        .collect()
}

fn rho_apply(terms: &[(usize, usize, usize, ExactScalar)], w: &[MultiPoly], nvars: usize) -> Vec<MultiPoly> {
    let mut out = vec![MultiPoly::zero(nvars); w.len()];
    for (var, row, col, v) in terms {
        if !w[*col].is_zero() {
            out[*row].add_scaled(&w[*col].mul_var(*var), v);
        }
    }
    out
}

/// `exp(-ρ(X))·v` by the terminating series `w_k = -(1/k) ρ(X) w_{k-1}`.
fn exp_neg_apply_terms(
    rep: &Representation,
    terms: &[(usize, usize, usize, ExactScalar)],
    v: &[ExactScalar],
) -> Result<Vec<MultiPoly>, SolveError> {
    let nvars = rep.nvars();
    let mut w: Vec<MultiPoly> = v.iter().map(|c| MultiPoly::constant(nvars, c.clone())).collect();
    let mut sum = w.clone();
    for k in 1..=rep.depth() + 1 {
        let factor = -ExactScalar::from_integer(k.into()).recip();
        w = rho_apply(terms, &w, nvars).into_iter().map(|p| p.scale(&factor)).collect();
        if k == rep.depth() + 1 {
            if w.iter().any(|p| !p.is_zero()) {
                return Err(SolveError::Nilpotency {
                    rep: rep.descriptor().to_string(),
                    power: k,
                });
            }
        } else {
            for (s, p) in sum.iter_mut().zip(&w) {
                s.add_scaled(p, &ExactScalar::one());
            }
        }
    }
    Ok(sum)
}

/// Full tractor `exp(-ρ(X))·v₀` with polynomial entries.
pub fn exp_neg_apply(rep: &Representation, v0: &[ExactScalar]) -> Result<Vec<MultiPoly>, SolveError> {
    check_length(rep, v0)?;
    exp_neg_apply_terms(rep, &rho_terms(rep), v0)
}

pub fn exp_neg_action(rep: &Representation) -> Result<PolyMatrix, SolveError> {
    exp_neg_action_with(rep, Execution::default())
}

pub fn exp_neg_action_with(rep: &Representation, exec: Execution) -> Result<PolyMatrix, SolveError> {
    let terms = rho_terms(rep);
    let d = rep.dim();
    let columns = exec
        .map_range(d, |j| exp_neg_apply_terms(rep, &terms, &unit(d, j)))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PolyMatrix::from_columns(d, rep.nvars(), columns))
}

/// `ρ(X)^{N+1} ≡ 0` as a polynomial matrix identity.
pub fn nilpotency_check(rep: &Representation) -> bool {
    nilpotency_check_with(rep, Execution::default())
}

pub fn nilpotency_check_with(rep: &Representation, exec: Execution) -> bool {
    let rho = rho_of(rep.generators(), rep.nvars());
    if rho.rows() == 0 {
        return true;
    }
    rho.pow_with(rep.depth() as u32 + 1, exec).is_ok_and(|m| m.is_zero())
}

fn unit(d: usize, j: usize) -> Vec<ExactScalar> {
    let mut v = vec![ExactScalar::zero(); d];
    v[j] = ExactScalar::one();
    v
}

fn check_length(rep: &Representation, v0: &[ExactScalar]) -> Result<(), SolveError> {
    if v0.len() != rep.dim() {
        return Err(SolveError::TractorLength {
            expected: rep.dim(),
            got: v0.len(),
        });
    }
    Ok(())
}

fn project(rep: &Representation, full: Vec<MultiPoly>, v0: Vec<ExactScalar>) -> SolutionSystem {
    let pi = quotient_projection(rep);
    let slots = pi
        .slots()
        .iter()
        .zip(pi.labels())
        .map(|(&i, label)| Slot {
            label: label.clone(),
            poly: full[i].clone(),
        })
        .collect();
    SolutionSystem {
        geometry: rep.kind(),
        rep: rep.descriptor().to_string(),
        degree_bound: rep.depth(),
        slots,
        source_tractor: Some(v0),
    }
}

pub fn solution_from_tractor(rep: &Representation, v0: &[ExactScalar]) -> Result<SolutionSystem, SolveError> {
    let full = exp_neg_apply(rep, v0)?;
    Ok(project(rep, full, v0.to_vec()))
}

/// One system per standard basis vector of the representation.
pub fn solution_basis(rep: &Representation) -> Result<Vec<SolutionSystem>, SolveError> {
    solution_basis_with(rep, Execution::default())
}

pub fn solution_basis_with(rep: &Representation, exec: Execution) -> Result<Vec<SolutionSystem>, SolveError> {
    let terms = rho_terms(rep);
    let d = rep.dim();
    exec.map_range(d, |j| {
        let v0 = unit(d, j);
        let full = exp_neg_apply_terms(rep, &terms, &v0)?;
        Ok(project(rep, full, v0))
    })
    .into_iter()
    .collect()
}

/// Index of a top-grading basis vector whose solution reaches degree `N`.
pub fn degree_witness(rep: &Representation, basis: &[SolutionSystem]) -> Option<usize> {
    (0..rep.dim()).find(|&j| {
        rep.grading()[j] == rep.depth() && basis[j].max_degree() == Some(rep.depth() as u32)
    })
}

/// Coefficient matrix of systems sharing a slot layout, one row per
/// system and one column per (slot, monomial) pair that occurs.
pub fn coefficient_matrix(systems: &[&SolutionSystem]) -> RatMatrix {
    let keys: BTreeSet<(usize, Exponents)> = systems
        .iter()
        .flat_map(|s| {
            s.slots
                .iter()
                .enumerate()
                .flat_map(|(i, slot)| slot.poly.terms().map(move |(e, _)| (i, e.clone())))
        })
        .collect();
    let index: HashMap<&(usize, Exponents), usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut m = RatMatrix::zeros(systems.len(), keys.len());
    for (r, s) in systems.iter().enumerate() {
        for (i, slot) in s.slots.iter().enumerate() {
            for (e, c) in slot.poly.terms() {
                m[(r, index[&(i, e.clone())])] = c.clone();
            }
        }
    }
    m
}

fn same_layout(a: &SolutionSystem, b: &SolutionSystem) -> bool {
    a.geometry == b.geometry
        && a.slots.len() == b.slots.len()
        && a.slots.iter().zip(&b.slots).all(|(x, y)| x.label == y.label)
}

/// Dimension of the rational span of `systems`.
pub fn span_dimension(systems: &[SolutionSystem]) -> usize {
    if systems.is_empty() {
        return 0;
    }
    assert!(systems.iter().all(|s| same_layout(s, &systems[0])), "mixed slot layouts");
    rank(&coefficient_matrix(&systems.iter().collect::<Vec<_>>()))
}

/// Exact span equality via `rank A = rank B = rank [A; B]`.
pub fn same_span(a: &[SolutionSystem], b: &[SolutionSystem]) -> bool {
    let all: Vec<&SolutionSystem> = a.iter().chain(b).collect();
    if all.is_empty() {
        return true;
    }
    if !all.iter().all(|s| same_layout(s, all[0])) {
        return false;
    }
    let joint = rank(&coefficient_matrix(&all));
    span_dimension(a) == joint && span_dimension(b) == joint
}

/// Generalized homogeneous coordinates in the trivialization `X⁰ ≡ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogCoords {
    geometry: GeometryKind,
    coords: Vec<MultiPoly>,
}

impl HomogCoords {
    pub fn geometry(&self) -> GeometryKind {
        self.geometry
    }

    pub fn coords(&self) -> &[MultiPoly] {
        &self.coords
    }

    /// `2X⁰X^{n+1} + Σ ε_i (Xⁱ)²`, identically zero on conformal models.
    pub fn quadric(&self) -> Option<MultiPoly> {
        let sig = self.geometry.signature()?;
        let n = sig.dim();
        let two = ExactScalar::from_integer(2.into());
        let mut q = (&self.coords[0] * &self.coords[n + 1]).scale(&two);
        for i in 0..n {
            q.add_scaled(&(&self.coords[i + 1] * &self.coords[i + 1]), &sig.eps(i));
        }
        Some(q)
    }
}

pub fn homog_coords(geometry: GeometryKind) -> HomogCoords {
    let n = geometry.dim();
    let mut coords = vec![MultiPoly::one(n)];
    match geometry.signature() {
        None => coords.extend((0..n).map(|i| MultiPoly::var(n, i))),
        Some(sig) => {
            coords.extend((0..n).map(|i| MultiPoly::var(n, i).scale(&sig.eps(i))));
            coords.push(sig.quadratic_form().scale(&-ExactScalar::new(1.into(), 2.into())));
        }
    }
    HomogCoords { geometry, coords }
}

/// `⟨w, w⟩` for the polynomial tractor `w = exp(-ρ(X))·v₀`.
pub fn tractor_norm(rep: &Representation, v0: &[ExactScalar]) -> Result<MultiPoly, SolveError> {
    let form = rep.form().ok_or_else(|| SolveError::NoForm(rep.descriptor().to_string()))?;
    let w = exp_neg_apply(rep, v0)?;
    let mut norm = MultiPoly::zero(rep.nvars());
    for (i, j, g) in form.nonzeros() {
        norm.add_scaled(&(&w[i] * &w[j]), &g);
    }
    Ok(norm)
}

/// The constant value of the tractor norm, an invariant of the G-orbit of `v₀`.
pub fn g_type_invariant(rep: &Representation, v0: &[ExactScalar]) -> Result<ExactScalar, SolveError> {
    let norm = tractor_norm(rep, v0)?;
    if !norm.is_constant() {
        return Err(SolveError::NonConstantNorm(norm.to_string()));
    }
    Ok(norm.constant_term())
}

/// `exp(-ρ(X))ᵀ G exp(-ρ(X)) = G` for the representation's form.
pub fn preserves_form(rep: &Representation) -> Result<bool, SolveError> {
    let form = rep.form().ok_or_else(|| SolveError::NoForm(rep.descriptor().to_string()))?;
    let m = exp_neg_action(rep)?;
    let g = PolyMatrix::from_constant(form, rep.nvars());
    Ok(m.transpose().mul(&g)?.mul(&m)? == g)
}

/// Tensor indices (0-based coordinates) carried by a lowest-grading slot:
/// the atoms of its label with the distinguished ambient vectors removed.
pub fn slot_indices(geometry: GeometryKind, label: &BasisLabel) -> Vec<usize> {
    let top = geometry.ambient_dim() - 1;
    label
        .atoms()
        .into_iter()
        .filter(|&a| a != 0 && !(geometry.is_conformal() && a == top))
        .map(|a| a - 1)
        .collect()
}
