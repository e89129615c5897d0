//! Graded matrix models of `sl(n+1)` (projective) and `so(p+1,q+1)`
//! (conformal), each with a basis of the abelian degree `-1` part and the
//! grading element.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactmath::{int, rat, ExactScalar, MultiPoly, PolyMatrix, RatMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("projective models need n >= 2, got {0}")]
    ProjectiveDimension(usize),
    #[error("conformal models need p + q >= 2, got ({p},{q})")]
    ConformalDimension { p: usize, q: usize },
    #[error("cannot parse geometry {0:?}; expected projective:N or conformal:P,Q")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeometryKind {
    Projective { n: usize },
    Conformal { p: usize, q: usize },
}

impl GeometryKind {
    /// Dimension of the base manifold, i.e. the number of normal coordinates.
    pub fn dim(&self) -> usize {
        match *self {
            GeometryKind::Projective { n } => n,
            GeometryKind::Conformal { p, q } => p + q,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        match *self {
            GeometryKind::Projective { n } => n + 1,
            GeometryKind::Conformal { p, q } => p + q + 2,
        }
    }

    pub fn is_conformal(&self) -> bool {
        matches!(self, GeometryKind::Conformal { .. })
    }

    /// `ε_i = +1` for the first `p` coordinates, `-1` after; `None` for
    /// projective geometries.
    pub fn signature(&self) -> Option<SignatureForm> {
        match *self {
            GeometryKind::Projective { .. } => None,
            GeometryKind::Conformal { p, q } => Some(SignatureForm::new(p, q)),
        }
    }

    pub fn build(&self) -> Result<GradedLieModel, ModelError> {
        match *self {
            GeometryKind::Projective { n } => build_projective(n),
            GeometryKind::Conformal { p, q } => build_conformal(p, q),
        }
    }
}

impl fmt::Display for GeometryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryKind::Projective { n } => write!(f, "projective:{n}"),
            GeometryKind::Conformal { p, q } => write!(f, "conformal:{p},{q}"),
        }
    }
}

impl FromStr for GeometryKind {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ModelError::Parse(s.to_string());
        let (kind, args) = s.trim().split_once(':').ok_or_else(bad)?;
        match kind {
            "projective" => Ok(GeometryKind::Projective {
                n: args.trim().parse().map_err(|_| bad())?,
            }),
            "conformal" => {
                let (p, q) = args.split_once(',').ok_or_else(bad)?;
                Ok(GeometryKind::Conformal {
                    p: p.trim().parse().map_err(|_| bad())?,
                    q: q.trim().parse().map_err(|_| bad())?,
                })
            }
            _ => Err(bad()),
        }
    }
}

/// Diagonal flat metric `diag(ε_1, …, ε_n)` of signature `(p, q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignatureForm {
    eps: Vec<i8>,
}

impl SignatureForm {
    pub fn new(p: usize, q: usize) -> Self {
        let mut eps = vec![1; p];
        eps.extend(std::iter::repeat(-1).take(q));
        SignatureForm { eps }
    }

    /// Arbitrary diagonal of `±1` entries.
    pub fn from_signs(eps: Vec<i8>) -> Self {
        assert!(eps.iter().all(|&e| e == 1 || e == -1), "entries must be ±1");
        SignatureForm { eps }
    }

    pub fn dim(&self) -> usize {
        self.eps.len()
    }

    pub fn sign(&self, i: usize) -> i8 {
        self.eps[i]
    }

    pub fn eps(&self, i: usize) -> ExactScalar {
        int(self.eps[i] as i64)
    }

    pub fn signs(&self) -> &[i8] {
        &self.eps
    }

    pub fn negated(&self) -> SignatureForm {
        SignatureForm {
            eps: self.eps.iter().map(|e| -e).collect(),
        }
    }

    /// `Σ ε_i x_i²` in `n` variables.
    pub fn quadratic_form(&self) -> MultiPoly {
        let n = self.dim();
        let mut q = MultiPoly::zero(n);
        for i in 0..n {
            let xi = MultiPoly::var(n, i);
            q.add_scaled(&(&xi * &xi), &self.eps(i));
        }
        q
    }
}

/// Matrix realization of a `|1|`-graded Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLieModel {
    kind: GeometryKind,
    g_minus: Vec<RatMatrix>,
    grading_element: RatMatrix,
    form: Option<RatMatrix>,
}

impl GradedLieModel {
    pub fn kind(&self) -> GeometryKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.kind.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.kind.ambient_dim()
    }

    /// Basis `B_1, …, B_n` of the degree `-1` part; its order fixes the
    /// meaning of the coordinates `x_1, …, x_n`.
    pub fn g_minus_basis(&self) -> &[RatMatrix] {
        &self.g_minus
    }

    pub fn grading_element(&self) -> &RatMatrix {
        &self.grading_element
    }

    /// Gram matrix of the invariant bilinear form (conformal only).
    pub fn form_gram(&self) -> Option<&RatMatrix> {
        self.form.as_ref()
    }

    pub fn signature(&self) -> Option<SignatureForm> {
        self.kind.signature()
    }

    /// Checks every structural invariant, returning a description of the
    /// first violation.
    pub fn check_invariants(&self) -> Result<(), String> {
        let e = &self.grading_element;
        for (i, b) in self.g_minus.iter().enumerate() {
            if e.commutator(b) != b.scale(&int(-1)) {
                return Err(format!("[E, B{}] != -B{}", i + 1, i + 1));
            }
            for (j, c) in self.g_minus.iter().enumerate().skip(i + 1) {
                if !b.commutator(c).is_zero() {
                    return Err(format!("[B{}, B{}] != 0", i + 1, j + 1));
                }
            }
            match &self.form {
                Some(j) => {
                    if !b.transpose().mul(j).add(&j.mul(b)).is_zero() {
                        return Err(format!("B{} does not preserve the form", i + 1));
                    }
                }
                None => {
                    if !b.trace().is_zero() {
                        return Err(format!("B{} is not trace-free", i + 1));
                    }
                }
            }
        }
        if self.form.is_none() && !e.trace().is_zero() {
            return Err("E is not trace-free".into());
        }
        if let Some(j) = &self.form {
            if !e.transpose().mul(j).add(&j.mul(e)).is_zero() {
                return Err("E does not preserve the form".into());
            }
        }
        Ok(())
    }
}

pub fn build_projective(n: usize) -> Result<GradedLieModel, ModelError> {
    if n < 2 {
        return Err(ModelError::ProjectiveDimension(n));
    }
    let d = n + 1;
    let g_minus = (1..=n)
        .map(|i| {
            let mut b = RatMatrix::zeros(d, d);
            b[(i, 0)] = ExactScalar::one();
            b
        })
        .collect();
    let mut diag = vec![rat(-1, d as i64); d];
    diag[0] = rat(n as i64, d as i64);
    Ok(GradedLieModel {
        kind: GeometryKind::Projective { n },
        g_minus,
        grading_element: RatMatrix::diagonal(&diag),
        form: None,
    })
}

pub fn build_conformal(p: usize, q: usize) -> Result<GradedLieModel, ModelError> {
    let n = p + q;
    if n < 2 {
        return Err(ModelError::ConformalDimension { p, q });
    }
    let d = n + 2;
    let sig = SignatureForm::new(p, q);
    let mut form = RatMatrix::zeros(d, d);
    form[(0, n + 1)] = ExactScalar::one();
    form[(n + 1, 0)] = ExactScalar::one();
    for i in 1..=n {
        form[(i, i)] = sig.eps(i - 1);
    }
    let g_minus = (1..=n)
        .map(|i| {
            let mut b = RatMatrix::zeros(d, d);
            b[(i, 0)] = ExactScalar::one();
            b[(n + 1, i)] = -sig.eps(i - 1);
            b
        })
        .collect();
    let mut diag = vec![ExactScalar::zero(); d];
    diag[0] = int(1);
    diag[n + 1] = int(-1);
    Ok(GradedLieModel {
        kind: GeometryKind::Conformal { p, q },
        g_minus,
        grading_element: RatMatrix::diagonal(&diag),
        form: Some(form),
    })
}

/// `ρ(X) = Σ x_i B_i` for an arbitrary list of generator matrices.
pub fn rho_of(generators: &[RatMatrix], nvars: usize) -> PolyMatrix {
    let d = generators.first().map_or(0, RatMatrix::rows);
    let mut out = PolyMatrix::zeros(d, d, nvars);
    for (i, b) in generators.iter().enumerate() {
        let xi = MultiPoly::var(nvars, i);
        for (r, c, v) in b.nonzeros() {
            out[(r, c)].add_scaled(&xi, &v);
        }
    }
    out
}

/// `ρ(X)` on the standard representation of `model`.
pub fn rho_symbolic(model: &GradedLieModel) -> PolyMatrix {
    rho_of(&model.g_minus, model.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::parse_scalar;

    fn basis_vec(d: usize, i: usize) -> Vec<ExactScalar> {
        let mut v = vec![ExactScalar::zero(); d];
        v[i] = ExactScalar::one();
        v
    }

    #[test]
    fn projective_generators_act_on_e0() {
        let m = build_projective(2).unwrap();
        let b1 = &m.g_minus_basis()[0];
        assert_eq!(b1.apply(&basis_vec(3, 0)), basis_vec(3, 1));
        assert!(b1.apply(&basis_vec(3, 1)).iter().all(Zero::is_zero));
        assert!(b1.apply(&basis_vec(3, 2)).iter().all(Zero::is_zero));
    }

    #[test]
    fn projective_grading_commutator_by_hand() {
        // E = diag(2/3, -1/3, -1/3), B1 = E_{10}:
        // (E B1)_{10} = -1/3, (B1 E)_{10} = 2/3, so [E, B1]_{10} = -1.
        let m = build_projective(2).unwrap();
        let c = m.grading_element().commutator(&m.g_minus_basis()[0]);
        let mut expected = RatMatrix::zeros(3, 3);
        expected[(1, 0)] = int(-1);
        assert_eq!(c, expected);
        assert!(build_projective(3).unwrap().grading_element().trace().is_zero());
    }

    #[test]
    fn conformal_generator_preserves_form_by_hand() {
        // (2,0): B1 = E_{10} - E_{31}, J = E_{03} + E_{30} + E_{11} + E_{22}.
        // B1ᵀJ has (0,1) entry J_{11} = 1 and (1,0) entry -J_{30} = -1;
        // J B1 has (1,0) entry J_{11} = 1 and (0,1) entry -J_{03} = -1.
        let m = build_conformal(2, 0).unwrap();
        let b1 = &m.g_minus_basis()[0];
        let j = m.form_gram().unwrap();
        let bt_j = b1.transpose().mul(j);
        let j_b = j.mul(b1);
        assert_eq!(bt_j[(0, 1)], int(1));
        assert_eq!(bt_j[(1, 0)], int(-1));
        assert_eq!(j_b[(1, 0)], int(1));
        assert_eq!(j_b[(0, 1)], int(-1));
        assert!(bt_j.add(&j_b).is_zero());
    }

    #[test]
    fn conformal_grading_on_light_cone_basis() {
        let m = build_conformal(1, 1).unwrap();
        let e = m.grading_element();
        assert_eq!(e.apply(&basis_vec(4, 0)), basis_vec(4, 0));
        assert_eq!(
            e.apply(&basis_vec(4, 3)),
            basis_vec(4, 3).iter().map(|v| -v).collect::<Vec<_>>()
        );
    }

    #[test]
    fn invariants_hold_up_to_desk_bound() {
        for n in 2..=8 {
            build_projective(n).unwrap().check_invariants().unwrap();
            for p in 0..=n {
                build_conformal(p, n - p).unwrap().check_invariants().unwrap();
            }
        }
    }

    #[test]
    fn grading_spectrum_spacing() {
        for n in 2..=6 {
            let proj = build_projective(n).unwrap();
            let mut ev = proj.grading_element().diagonal_entries();
            ev.sort();
            ev.dedup();
            assert_eq!(ev.len(), 2);
            assert_eq!(&ev[1] - &ev[0], int(1));
            let conf = build_conformal(n - 1, 1).unwrap();
            let mut ev = conf.grading_element().diagonal_entries();
            ev.sort();
            ev.dedup();
            assert_eq!(ev, vec![int(-1), int(0), int(1)]);
        }
    }

    #[test]
    fn rho_columns() {
        let rho = rho_symbolic(&build_projective(2).unwrap());
        let col0: Vec<String> = rho.column(0).iter().map(ToString::to_string).collect();
        assert_eq!(col0, ["0", "x1", "x2"]);
        // (1,1): ε1 = 1, so ρ(X)·e1 = -x1 e3.
        let rho = rho_symbolic(&build_conformal(1, 1).unwrap());
        assert_eq!(rho[(3, 1)].to_string(), "-x1");
        assert_eq!(rho[(3, 2)].to_string(), "x2");
        let zero = vec![parse_scalar("0").unwrap(); 2];
        assert!(rho.eval(&zero).unwrap().is_zero());
    }

    #[test]
    fn rejects_small_dimensions() {
        assert_eq!(build_projective(1).unwrap_err(), ModelError::ProjectiveDimension(1));
        assert!(build_conformal(1, 0).is_err());
        assert!(build_conformal(2, 0).is_ok());
    }

    #[test]
    fn geometry_strings() {
        for s in ["projective:3", "conformal:2,1"] {
            assert_eq!(s.parse::<GeometryKind>().unwrap().to_string(), s);
        }
        assert!("affine:3".parse::<GeometryKind>().is_err());
        assert!("conformal:3".parse::<GeometryKind>().is_err());
    }
}
