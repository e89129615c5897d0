//! Explicit solution lists for the flat models, transcribed as fixtures.
//!
//! Where a printed sign disagrees with the exact exponential series the
//! fixture keeps both versions; `system` holds the corrected one.

use std::collections::HashMap;

use num_traits::One;

use super::{slot_indices, SolutionSystem, Slot, SolveError};
use crate::exactmath::{int, rat, ExactScalar, MultiPoly, PolyMatrix};
use crate::liemodel::{GeometryKind, SignatureForm};
use crate::repforge::{sort_with_sign, BasisLabel, RepDescriptor, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FixtureStatus {
    AsPrinted,
    SignAdjudicated,
}

impl FixtureStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            FixtureStatus::AsPrinted => "as-printed",
            FixtureStatus::SignAdjudicated => "sign-adjudicated",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub family: String,
    pub status: FixtureStatus,
    /// The fixture to compare against; the corrected form when adjudicated.
    pub system: SolutionSystem,
    /// The literal printed form, kept only when it differs from `system`.
    pub printed: Option<SolutionSystem>,
}

/// Slot layout of a representation keyed by tensor indices.
struct Layout {
    geometry: GeometryKind,
    rep: String,
    depth: usize,
    labels: Vec<BasisLabel>,
    index: HashMap<Vec<usize>, usize>,
}

impl Layout {
    fn new(rep: &Representation) -> Self {
        let pi = crate::repforge::quotient_projection(rep);
        let labels = pi.labels().to_vec();
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (slot_indices(rep.kind(), l), i))
            .collect();
        Layout {
            geometry: rep.kind(),
            rep: rep.descriptor().to_string(),
            depth: rep.depth(),
            labels,
            index,
        }
    }

    fn n(&self) -> usize {
        self.geometry.dim()
    }

    fn system(&self, parts: Vec<(Vec<usize>, MultiPoly)>) -> SolutionSystem {
        let mut polys = vec![MultiPoly::zero(self.n()); self.labels.len()];
        for (key, p) in parts {
            let slot = *self
                .index
                .get(&key)
                .unwrap_or_else(|| panic!("no slot for indices {key:?} in {}", self.rep));
            polys[slot].add_scaled(&p, &ExactScalar::one());
        }
        let slots = self
            .labels
            .iter()
            .cloned()
            .zip(polys)
            .map(|(label, poly)| Slot { label, poly })
            .collect();
        SolutionSystem::new(self.geometry, self.rep.clone(), self.depth, slots, None)
            .expect("catalog fixtures respect the degree bound")
    }
}

struct Families {
    layout: Layout,
    entries: Vec<CatalogEntry>,
}

impl Families {
    fn push(&mut self, family: &str, parts: Vec<(Vec<usize>, MultiPoly)>) {
        let system = self.layout.system(parts);
        self.entries.push(CatalogEntry {
            family: family.into(),
            status: FixtureStatus::AsPrinted,
            system,
            printed: None,
        });
    }

    fn push_adjudicated(
        &mut self,
        family: &str,
        corrected: Vec<(Vec<usize>, MultiPoly)>,
        printed: Vec<(Vec<usize>, MultiPoly)>,
    ) {
        let system = self.layout.system(corrected);
        let printed = self.layout.system(printed);
        self.entries.push(CatalogEntry {
            family: family.into(),
            status: FixtureStatus::SignAdjudicated,
            system,
            printed: Some(printed),
        });
    }
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
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
    rec(0, n, r, &mut cur, &mut out);
    out
}

/// `(sorted indices, ±poly)` for an alternating component, or nothing if
/// an index repeats.
fn wedge(mut idx: Vec<usize>, p: MultiPoly) -> Option<(Vec<usize>, MultiPoly)> {
    let sign = sort_with_sign(&mut idx)?;
    Some((idx, p.scale(&int(sign))))
}

fn sym(mut idx: Vec<usize>, p: MultiPoly) -> (Vec<usize>, MultiPoly) {
    idx.sort_unstable();
    (idx, p)
}

pub fn catalog(geometry: GeometryKind, descriptor: &str) -> Result<Vec<CatalogEntry>, SolveError> {
    let desc: RepDescriptor = descriptor.parse()?;
    let uncataloged = || SolveError::Uncataloged {
        geometry: geometry.to_string(),
        rep: desc.to_string(),
    };
    let model = geometry.build().map_err(crate::repforge::RepError::from)?;
    let n = geometry.dim();
    use RepDescriptor as D;
    let is_std = |r: &D| matches!(r, D::Std);
    let is_dual_std = |r: &D| matches!(r, D::Dual(inner) if is_std(inner));
    let rep = desc.build(&model)?;
    let mut fam = Families {
        layout: Layout::new(&rep),
        entries: Vec::new(),
    };
    match (geometry, &desc) {
        (GeometryKind::Projective { .. }, D::Std) => projective_wedges(&mut fam, 1),
        (GeometryKind::Projective { .. }, D::Ext(r, inner)) if is_std(inner) && (1..n).contains(r) => {
            projective_wedges(&mut fam, *r)
        }
        (GeometryKind::Projective { .. }, D::Ext(2, inner)) if is_dual_std(inner) => {
            projective_killing_covectors(&mut fam)
        }
        (GeometryKind::Projective { .. }, D::CartanS2L2) => projective_killing_tensors(&mut fam),
        (GeometryKind::Projective { .. }, D::Sym(k, inner)) if is_dual_std(inner) => {
            projective_densities(&mut fam, *k)
        }
        (GeometryKind::Conformal { p, q }, D::Std) => conformal_densities(&mut fam, &SignatureForm::new(p, q)),
        (GeometryKind::Conformal { p, q }, D::Ext(2, inner)) if is_std(inner) => {
            conformal_killing_vectors(&mut fam, &SignatureForm::new(p, q))
        }
        (GeometryKind::Conformal { p, q }, D::Ext(k, inner)) if is_std(inner) && (3..=n).contains(k) => {
            conformal_killing_forms(&mut fam, &SignatureForm::new(p, q), k - 1)
        }
        _ => return Err(uncataloged()),
    }
    Ok(fam.entries)
}

fn x(n: usize, i: usize) -> MultiPoly {
    MultiPoly::var(n, i)
}

fn one(n: usize) -> MultiPoly {
    MultiPoly::one(n)
}

fn projective_wedges(fam: &mut Families, r: usize) {
    let n = fam.layout.n();
    for idx in combinations(n, r) {
        fam.push("wedge", vec![(idx, one(n))]);
    }
    for rest in combinations(n, r - 1) {
        let parts = (0..n)
            .filter_map(|j| {
                let mut idx = vec![j];
                idx.extend(&rest);
                wedge(idx, x(n, j))
            })
            .collect();
        fam.push("radial-wedge", parts);
    }
}

fn projective_killing_covectors(fam: &mut Families) {
    let n = fam.layout.n();
    for i in 0..n {
        fam.push("coordinate-form", vec![(vec![i], one(n))]);
    }
    for i in 0..n {
        for j in i + 1..n {
            fam.push("rotation-form", vec![(vec![j], x(n, i)), (vec![i], -x(n, j))]);
        }
    }
}

fn projective_killing_tensors(fam: &mut Families) {
    let n = fam.layout.n();
    let xx = |a: usize, b: usize| &x(n, a) * &x(n, b);
    for i in 0..n {
        for j in i..n {
            fam.push("constant", vec![(vec![i, j], one(n))]);
        }
    }
    for i in 0..n {
        for j in i..n {
            for k in j + 1..n {
                fam.push("linear-a", vec![sym(vec![i, j], x(n, k)), sym(vec![i, k], -x(n, j))]);
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j..n {
                fam.push("linear-b", vec![sym(vec![i, j], x(n, k)), sym(vec![j, k], -x(n, i))]);
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j..n {
                fam.push(
                    "quadratic-a",
                    vec![
                        sym(vec![i, i], xx(j, k)),
                        sym(vec![i, j], -xx(i, k)),
                        sym(vec![i, k], -xx(i, j)),
                        sym(vec![j, k], xx(i, i)),
                    ],
                );
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k..n {
                    fam.push(
                        "quadratic-b",
                        vec![
                            sym(vec![i, j], xx(k, l)),
                            sym(vec![i, l], -xx(j, k)),
                            sym(vec![j, k], -xx(i, l)),
                            sym(vec![k, l], xx(i, j)),
                        ],
                    );
                }
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j..n {
                for l in k + 1..n {
                    fam.push(
                        "quadratic-c",
                        vec![
                            sym(vec![i, k], xx(j, l)),
                            sym(vec![i, l], -xx(j, k)),
                            sym(vec![j, k], -xx(i, l)),
                            sym(vec![j, l], xx(i, k)),
                        ],
                    );
                }
            }
        }
    }
}

/// Monomials of degree `k` in `X⁰ = 1, X¹ = x₁, …`.
fn projective_densities(fam: &mut Families, k: usize) {
    let n = fam.layout.n();
    for e in crate::exactmath::Exponents::up_to_degree(n, k as u32) {
        fam.push("homogeneous-monomial", vec![(vec![], MultiPoly::monomial(n, e, int(1)))]);
    }
}

fn half_q(sig: &SignatureForm) -> MultiPoly {
    sig.quadratic_form().scale(&rat(1, 2))
}

fn conformal_densities(fam: &mut Families, sig: &SignatureForm) {
    let n = sig.dim();
    fam.push("homogeneous-coordinate", vec![(vec![], one(n))]);
    for i in 0..n {
        fam.push("homogeneous-coordinate", vec![(vec![], x(n, i).scale(&sig.eps(i)))]);
    }
    fam.push_adjudicated(
        "homogeneous-coordinate",
        vec![(vec![], -half_q(sig))],
        vec![(vec![], half_q(sig))],
    );
}

fn conformal_killing_vectors(fam: &mut Families, sig: &SignatureForm) {
    let n = sig.dim();
    for i in 0..n {
        fam.push("translation", vec![(vec![i], one(n))]);
    }
    fam.push("dilation", (0..n).map(|i| (vec![i], x(n, i))).collect());
    for i in 0..n {
        for j in i + 1..n {
            fam.push(
                "rotation",
                vec![(vec![i], x(n, j).scale(&sig.eps(j))), (vec![j], -x(n, i).scale(&sig.eps(i)))],
            );
        }
    }
    for i in 0..n {
        let special = |sign: i64| {
            let mut parts = vec![(vec![i], half_q(sig))];
            let c = x(n, i).scale(&(sig.eps(i) * int(sign)));
            parts.extend((0..n).map(|j| (vec![j], &c * &x(n, j))));
            parts
        };
        fam.push_adjudicated("special-conformal", special(-1), special(1));
    }
}

/// Coefficients refer to `φ_{i₁…i_r}`, i.e. the slots `e_I ∧ e_{n+1}`.
fn conformal_killing_forms(fam: &mut Families, sig: &SignatureForm, r: usize) {
    let n = sig.dim();
    let sgn = |k: usize| if k % 2 == 0 { int(1) } else { int(-1) };
    for idx in combinations(n, r) {
        fam.push("constant-form", vec![(idx, one(n))]);
    }
    for rest in combinations(n, r - 1) {
        let parts = (0..n)
            .filter_map(|j| {
                let mut idx = vec![j];
                idx.extend(&rest);
                wedge(idx, x(n, j))
            })
            .collect();
        fam.push("radial-form", parts);
    }
    for idx in combinations(n, r + 1) {
        let parts = (0..=r)
            .map(|j| {
                let mut omitted = idx.clone();
                let ij = omitted.remove(j);
                (omitted, x(n, ij).scale(&(sig.eps(ij) * sgn(j))))
            })
            .collect();
        fam.push("contracted-form", parts);
    }
    for idx in combinations(n, r) {
        let mut parts = vec![(idx.clone(), half_q(sig).scale(&sgn(r)))];
        for j in 0..r {
            let mut omitted = idx.clone();
            let ij = omitted.remove(j);
            let c = x(n, ij).scale(&(sig.eps(ij) * sgn(r - 1 - j)));
            for l in 0..n {
                let mut full = vec![l];
                full.extend(&omitted);
                parts.extend(wedge(full, &c * &x(n, l)));
            }
        }
        fam.push("special-form", parts);
    }
}

/// The exponential of `-ρ(X)` on the conformal standard representation as
/// printed, including its bottom-left entry `+½Σε_i x_i²`.
pub fn printed_conformal_exponential(sig: &SignatureForm) -> PolyMatrix {
    let n = sig.dim();
    let mut m = PolyMatrix::identity(n + 2, n);
    for i in 0..n {
        m[(i + 1, 0)] = -x(n, i);
        m[(n + 1, i + 1)] = x(n, i).scale(&sig.eps(i));
    }
    m[(n + 1, 0)] = half_q(sig);
    m
}

/// Parallel frame `s̃₀, …, s̃_{n+1}` of the standard tractor bundle as
/// columns: `(corrected, printed)`, differing only in the `s_{n+1}`
/// component of `s̃₀`.
pub fn normal_parallel_frame(sig: &SignatureForm) -> (PolyMatrix, PolyMatrix) {
    let n = sig.dim();
    let mut printed = PolyMatrix::identity(n + 2, n);
    for i in 0..n {
        printed[(i + 1, 0)] = -x(n, i);
        printed[(n + 1, i + 1)] = x(n, i).scale(&sig.eps(i));
    }
    printed[(n + 1, 0)] = half_q(sig);
    let mut corrected = printed.clone();
    corrected[(n + 1, 0)] = -half_q(sig);
    (corrected, printed)
}
