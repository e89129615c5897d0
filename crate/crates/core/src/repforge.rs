//! Finite-dimensional representations built from the standard one by
//! duals, exterior and symmetric powers, tensor products and invariant
//! subspaces, together with their gradings and the projection onto the
//! lowest grading slots.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use thiserror::Error;

use crate::exactmath::{exact_nullspace, rref, ExactScalar, RatMatrix, Rref};
use crate::liemodel::{GeometryKind, GradedLieModel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("power {power} out of range for a {dim}-dimensional representation")]
    PowerOutOfRange { power: usize, dim: usize },
    #[error("representations live over different models: {0} vs {1}")]
    ModelMismatch(GeometryKind, GeometryKind),
    #[error("span is not invariant under {action}: image of [{vector}] leaves the span")]
    SpanNotInvariant { action: String, vector: String },
    #[error("span vector has length {got}, representation has dimension {dim}")]
    SpanLength { got: usize, dim: usize },
    #[error("grading element eigenvalues {0} are not spaced by integers")]
    NonIntegralGrading(String),
    #[error("{0} requires a projective model")]
    NeedsProjective(&'static str),
    #[error("cannot parse representation descriptor {0:?}")]
    Parse(String),
    #[error(transparent)]
    Model(#[from] crate::liemodel::ModelError),
}

/// Structured name of a basis vector.
///
/// Wedge and symmetric labels list the factor labels in the parent basis
/// order, so the parent index sequence is strictly (resp. weakly)
/// increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    Atom(usize),
    Dual(Box<BasisLabel>),
    Wedge(Vec<BasisLabel>),
    Sym(Vec<BasisLabel>),
    Pair(Box<BasisLabel>, Box<BasisLabel>),
    /// Basis vector of an invariant subspace that is a combination of
    /// parent vectors; named after its pivot.
    Combination(Box<BasisLabel>),
}

impl BasisLabel {
    pub fn dual(self) -> BasisLabel {
        match self {
            BasisLabel::Dual(inner) => *inner,
            other => BasisLabel::Dual(Box::new(other)),
        }
    }

    /// Atom indices in order of appearance.
    pub fn atoms(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut Vec<usize>) {
        match self {
            BasisLabel::Atom(i) => out.push(*i),
            BasisLabel::Dual(b) | BasisLabel::Combination(b) => b.collect_atoms(out),
            BasisLabel::Wedge(v) | BasisLabel::Sym(v) => v.iter().for_each(|b| b.collect_atoms(out)),
            BasisLabel::Pair(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    fn is_simple(&self) -> bool {
        match self {
            BasisLabel::Atom(_) => true,
            BasisLabel::Dual(b) => matches!(**b, BasisLabel::Atom(_)),
            _ => false,
        }
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_simple() {
            write!(f, "{self}")
        } else {
            write!(f, "({self})")
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let joined = |f: &mut fmt::Formatter<'_>, items: &[BasisLabel], sep: &str| {
            for (i, b) in items.iter().enumerate() {
                if i > 0 {
                    write!(f, "{sep}")?;
                }
                b.fmt_operand(f)?;
            }
            Ok(())
        };
        match self {
            BasisLabel::Atom(i) => write!(f, "e{i}"),
            BasisLabel::Dual(b) => {
                b.fmt_operand(f)?;
                write!(f, "*")
            }
            BasisLabel::Wedge(v) => joined(f, v, "^"),
            BasisLabel::Sym(v) => joined(f, v, "."),
            BasisLabel::Pair(a, b) => {
                a.fmt_operand(f)?;
                write!(f, "@")?;
                b.fmt_operand(f)
            }
            BasisLabel::Combination(b) => {
                write!(f, "~")?;
                b.fmt_operand(f)
            }
        }
    }
}

impl FromStr for BasisLabel {
    type Err = RepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = LabelParser {
            src: s.as_bytes(),
            pos: 0,
        };
        let label = p.label().ok_or_else(|| RepError::Parse(s.to_string()))?;
        if p.pos != p.src.len() {
            return Err(RepError::Parse(s.to_string()));
        }
        Ok(label)
    }
}

struct LabelParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl LabelParser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn label(&mut self) -> Option<BasisLabel> {
        let first = self.unary()?;
        let Some(op) = self.peek().filter(|c| matches!(c, b'^' | b'.' | b'@')) else {
            return Some(first);
        };
        let mut items = vec![first];
        while self.peek() == Some(op) {
            self.pos += 1;
            items.push(self.unary()?);
        }
        match op {
            b'^' => Some(BasisLabel::Wedge(items)),
            b'.' => Some(BasisLabel::Sym(items)),
            _ if items.len() == 2 => {
                let b = items.pop()?;
                let a = items.pop()?;
                Some(BasisLabel::Pair(Box::new(a), Box::new(b)))
            }
            _ => None,
        }
    }

    fn unary(&mut self) -> Option<BasisLabel> {
        if self.peek() == Some(b'~') {
            self.pos += 1;
            return Some(BasisLabel::Combination(Box::new(self.unary()?)));
        }
        let mut base = match self.peek()? {
            b'e' => {
                self.pos += 1;
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).ok()?;
                BasisLabel::Atom(digits.parse().ok()?)
            }
            b'(' => {
                self.pos += 1;
                let inner = self.label()?;
                if self.peek() != Some(b')') {
                    return None;
                }
                self.pos += 1;
                inner
            }
            _ => return None,
        };
        while self.peek() == Some(b'*') {
            self.pos += 1;
            base = BasisLabel::Dual(Box::new(base));
        }
        Some(base)
    }
}

/// A representation restricted to the data the solution machinery needs:
/// the action of the degree `-1` generators and of the grading element in
/// a basis of grading eigenvectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    kind: GeometryKind,
    descriptor: String,
    labels: Vec<BasisLabel>,
    generators: Vec<RatMatrix>,
    eigenvalues: Vec<ExactScalar>,
    grading: Vec<usize>,
    depth: usize,
    form: Option<RatMatrix>,
}

impl Representation {
    fn assemble(
        kind: GeometryKind,
        descriptor: String,
        labels: Vec<BasisLabel>,
        generators: Vec<RatMatrix>,
        eigenvalues: Vec<ExactScalar>,
        form: Option<RatMatrix>,
    ) -> Result<Self, RepError> {
        let min = eigenvalues.iter().min().cloned().unwrap_or_else(ExactScalar::zero);
        let grading = eigenvalues
            .iter()
            .map(|ev| {
                let shifted = ev - &min;
                shifted
                    .is_integer()
                    .then(|| shifted.to_integer().try_into().ok())
                    .flatten()
                    .ok_or_else(|| {
                        let evs: Vec<String> = eigenvalues.iter().map(ToString::to_string).collect();
                        RepError::NonIntegralGrading(evs.join(", "))
                    })
            })
            .collect::<Result<Vec<usize>, _>>()?;
        let depth = grading.iter().copied().max().unwrap_or(0);
        Ok(Representation {
            kind,
            descriptor,
            labels,
            generators,
            eigenvalues,
            grading,
            depth,
            form,
        })
    }

    pub fn kind(&self) -> GeometryKind {
        self.kind
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn with_descriptor(mut self, descriptor: impl Into<String>) -> Self {
        self.descriptor = descriptor.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Number of normal coordinates.
    pub fn nvars(&self) -> usize {
        self.kind.dim()
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn generators(&self) -> &[RatMatrix] {
        &self.generators
    }

    pub fn eigenvalues(&self) -> &[ExactScalar] {
        &self.eigenvalues
    }

    pub fn grading_element(&self) -> RatMatrix {
        RatMatrix::diagonal(&self.eigenvalues)
    }

    pub fn grading(&self) -> &[usize] {
        &self.grading
    }

    /// `N`: the largest grading index.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Gram matrix of the induced invariant bilinear form, when the model
    /// carries one.
    pub fn form(&self) -> Option<&RatMatrix> {
        self.form.as_ref()
    }

    pub fn position(&self, label: &BasisLabel) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Verifies that every generator lowers the grading index by exactly
    /// one and, when present, preserves the invariant form.
    pub fn check_invariants(&self) -> Result<(), String> {
        if self.depth != self.grading.iter().copied().max().unwrap_or(0) {
            return Err("depth is not the largest grading index".into());
        }
        for (g, b) in self.generators.iter().enumerate() {
            for (row, col, _) in b.nonzeros() {
                if self.grading[row] + 1 != self.grading[col] {
                    return Err(format!(
                        "B{} maps {} (index {}) to {} (index {})",
                        g + 1,
                        self.labels[col],
                        self.grading[col],
                        self.labels[row],
                        self.grading[row]
                    ));
                }
            }
            if let Some(f) = &self.form {
                if !b.transpose().mul(f).add(&f.mul(b)).is_zero() {
                    return Err(format!("B{} does not preserve the form", g + 1));
                }
            }
        }
        Ok(())
    }
}

pub fn standard_rep(model: &GradedLieModel) -> Representation {
    let d = model.ambient_dim();
    Representation::assemble(
        model.kind(),
        "std".into(),
        (0..d).map(BasisLabel::Atom).collect(),
        model.g_minus_basis().to_vec(),
        model.grading_element().diagonal_entries(),
        model.form_gram().cloned(),
    )
    .expect("model gradings are integral")
}

pub fn dual_rep(rep: &Representation) -> Representation {
    let neg = ExactScalar::from_integer((-1).into());
    let form = rep.form.as_ref().map(|f| f.inverse().expect("invariant forms are nondegenerate"));
    Representation::assemble(
        rep.kind,
        format!("dual({})", rep.descriptor),
        rep.labels.iter().cloned().map(BasisLabel::dual).collect(),
        rep.generators.iter().map(|b| b.transpose().scale(&neg)).collect(),
        rep.eigenvalues.iter().map(|e| -e).collect(),
        form,
    )
    .expect("negated spectrum stays integral")
}

/// Strictly increasing `r`-subsets of `0..n`, lexicographic.
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

/// Weakly increasing length-`k` sequences in `0..n`, lexicographic.
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

/// Sorts `idx` in place and returns the permutation sign, or `None` if an
/// index repeats.
pub(crate) fn sort_with_sign(idx: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

pub fn exterior_power(rep: &Representation, r: usize) -> Result<Representation, RepError> {
    let dim = rep.dim();
    if r < 1 || r > dim {
        return Err(RepError::PowerOutOfRange { power: r, dim });
    }
    let descriptor = format!("ext({r},{})", rep.descriptor);
    if r == 1 {
        return Ok(rep.clone().with_descriptor(descriptor));
    }
    let basis = combinations(dim, r);
    let index: HashMap<&[usize], usize> =
        basis.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let generators = rep
        .generators
        .iter()
        .map(|b| {
            let entries = b.nonzeros();
            let mut by_col: Vec<Vec<(usize, ExactScalar)>> = vec![Vec::new(); dim];
            for (row, col, v) in entries {
                by_col[col].push((row, v));
            }
            let mut m = RatMatrix::zeros(basis.len(), basis.len());
            for (j, subset) in basis.iter().enumerate() {
                for (pos, &factor) in subset.iter().enumerate() {
                    for (target, v) in &by_col[factor] {
                        let mut image = subset.clone();
                        image[pos] = *target;
                        if let Some(sign) = sort_with_sign(&mut image) {
                            let i = index[image.as_slice()];
                            m[(i, j)] += v * ExactScalar::from_integer(sign.into());
                        }
                    }
                }
            }
            m
        })
        .collect();
    let eigenvalues = basis
        .iter()
        .map(|s| s.iter().map(|&i| rep.eigenvalues[i].clone()).sum())
        .collect();
    let labels = basis
        .iter()
        .map(|s| BasisLabel::Wedge(s.iter().map(|&i| rep.labels[i].clone()).collect()))
        .collect();
    let form = rep.form.as_ref().map(|f| {
        let mut g = RatMatrix::zeros(basis.len(), basis.len());
        for (i, s) in basis.iter().enumerate() {
            for (j, t) in basis.iter().enumerate() {
                g[(i, j)] = f.submatrix(s, t).determinant().expect("square minor");
            }
        }
        g
    });
    Representation::assemble(rep.kind, descriptor, labels, generators, eigenvalues, form)
}

pub fn symmetric_power(rep: &Representation, k: usize) -> Result<Representation, RepError> {
    let dim = rep.dim();
    if k < 1 {
        return Err(RepError::PowerOutOfRange { power: k, dim });
    }
    let descriptor = format!("sym({k},{})", rep.descriptor);
    if k == 1 {
        return Ok(rep.clone().with_descriptor(descriptor));
    }
    let basis = multisets(dim, k);
    let index: HashMap<&[usize], usize> =
        basis.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let generators = rep
        .generators
        .iter()
        .map(|b| {
            let mut by_col: Vec<Vec<(usize, ExactScalar)>> = vec![Vec::new(); dim];
            for (row, col, v) in b.nonzeros() {
                by_col[col].push((row, v));
            }
            let mut m = RatMatrix::zeros(basis.len(), basis.len());
            for (j, ms) in basis.iter().enumerate() {
                // every position, so a repeated factor contributes its multiplicity
                for (pos, &factor) in ms.iter().enumerate() {
                    for (target, v) in &by_col[factor] {
                        let mut image = ms.clone();
                        image[pos] = *target;
                        image.sort_unstable();
                        m[(index[image.as_slice()], j)] += v;
                    }
                }
            }
            m
        })
        .collect();
    let eigenvalues = basis
        .iter()
        .map(|s| s.iter().map(|&i| rep.eigenvalues[i].clone()).sum())
        .collect();
    let labels = basis
        .iter()
        .map(|s| BasisLabel::Sym(s.iter().map(|&i| rep.labels[i].clone()).collect()))
        .collect();
    // Monomials correspond to full symmetrizations; their pairing is the
    // permanent of the form block, up to the overall factor k!.
    let form = rep.form.as_ref().map(|f| {
        let mut g = RatMatrix::zeros(basis.len(), basis.len());
        for (i, s) in basis.iter().enumerate() {
            for (j, t) in basis.iter().enumerate() {
                g[(i, j)] = f.submatrix(s, t).permanent().expect("square block");
            }
        }
        g
    });
    Representation::assemble(rep.kind, descriptor, labels, generators, eigenvalues, form)
}

pub fn tensor_product(a: &Representation, b: &Representation) -> Result<Representation, RepError> {
    if a.kind != b.kind {
        return Err(RepError::ModelMismatch(a.kind, b.kind));
    }
    let (ia, ib) = (RatMatrix::identity(a.dim()), RatMatrix::identity(b.dim()));
    let generators = a
        .generators
        .iter()
        .zip(&b.generators)
        .map(|(ga, gb)| ga.kron(&ib).add(&ia.kron(gb)))
        .collect();
    let mut labels = Vec::with_capacity(a.dim() * b.dim());
    let mut eigenvalues = Vec::with_capacity(a.dim() * b.dim());
    for (la, ea) in a.labels.iter().zip(&a.eigenvalues) {
        for (lb, eb) in b.labels.iter().zip(&b.eigenvalues) {
            labels.push(BasisLabel::Pair(Box::new(la.clone()), Box::new(lb.clone())));
            eigenvalues.push(ea + eb);
        }
    }
    let form = match (&a.form, &b.form) {
        (Some(fa), Some(fb)) => Some(fa.kron(fb)),
        _ => None,
    };
    Representation::assemble(
        a.kind,
        format!("tensor({},{})", a.descriptor, b.descriptor),
        labels,
        generators,
        eigenvalues,
        form,
    )
}

fn describe(v: &[ExactScalar]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

/// Restriction of `rep` to the span of `span`, in a basis of grading
/// eigenvectors obtained by reducing each eigenspace component.
pub fn invariant_subrep(
    rep: &Representation,
    span: &[Vec<ExactScalar>],
) -> Result<Representation, RepError> {
    let dim = rep.dim();
    if let Some(v) = span.iter().find(|v| v.len() != dim) {
        return Err(RepError::SpanLength { got: v.len(), dim });
    }
    let whole = rref(&RatMatrix::from_rows(span.to_vec()).unwrap_or_else(|_| RatMatrix::zeros(0, dim)));

    let mut levels: Vec<ExactScalar> = rep.eigenvalues.clone();
    levels.sort();
    levels.dedup();

    let mut rows: Vec<(usize, Vec<ExactScalar>, ExactScalar)> = Vec::new();
    for level in &levels {
        let mut block = Vec::new();
        for v in &whole.rows {
            let projected: Vec<ExactScalar> = v
                .iter()
                .zip(&rep.eigenvalues)
                .map(|(x, e)| if e == level { x.clone() } else { ExactScalar::zero() })
                .collect();
            if whole.coordinates(&projected).is_none() {
                return Err(RepError::SpanNotInvariant {
                    action: "E".into(),
                    vector: describe(v),
                });
            }
            block.push(projected);
        }
        if block.is_empty() {
            continue;
        }
        let reduced = rref(&RatMatrix::from_rows(block).expect("rectangular"));
        for (row, p) in reduced.rows.into_iter().zip(reduced.pivots) {
            rows.push((p, row, level.clone()));
        }
    }
    rows.sort_by_key(|(p, _, _)| *p);
    let basis = Rref {
        pivots: rows.iter().map(|(p, _, _)| *p).collect(),
        rows: rows.iter().map(|(_, r, _)| r.clone()).collect(),
        cols: dim,
    };

    let mut generators = Vec::with_capacity(rep.generators.len());
    for (g, b) in rep.generators.iter().enumerate() {
        let mut m = RatMatrix::zeros(basis.rank(), basis.rank());
        for (k, v) in basis.rows.iter().enumerate() {
            let image = b.apply(v);
            let coords = basis.coordinates(&image).ok_or_else(|| RepError::SpanNotInvariant {
                action: format!("B{}", g + 1),
                vector: describe(v),
            })?;
            for (i, c) in coords.into_iter().enumerate() {
                m[(i, k)] = c;
            }
        }
        generators.push(m);
    }

    let labels = rows
        .iter()
        .map(|(p, row, _)| {
            let pivot = rep.labels[*p].clone();
            if row.iter().filter(|x| !x.is_zero()).count() == 1 {
                pivot
            } else {
                BasisLabel::Combination(Box::new(pivot))
            }
        })
        .collect();
    let form = rep.form.as_ref().map(|f| {
        let cols = RatMatrix::from_columns(dim, &basis.rows);
        cols.transpose().mul(f).mul(&cols)
    });
    Representation::assemble(
        rep.kind,
        format!("sub({})", rep.descriptor),
        labels,
        generators,
        rows.into_iter().map(|(_, _, e)| e).collect(),
        form,
    )
}

/// Matrix of `ψ ∨ φ ↦ ψ ∧ φ` from `S²(Λ²W*)` to `Λ⁴W*`, columns indexed
/// like `symmetric_power(exterior_power(dual(std), 2), 2)`.
pub fn wedge_map_s2_lambda2(ambient: usize) -> RatMatrix {
    let pairs = combinations(ambient, 2);
    let quads = combinations(ambient, 4);
    let quad_index: HashMap<&[usize], usize> =
        quads.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let sym = multisets(pairs.len(), 2);
    let mut m = RatMatrix::zeros(quads.len(), sym.len());
    for (col, ab) in sym.iter().enumerate() {
        let mut idx = [pairs[ab[0]][0], pairs[ab[0]][1], pairs[ab[1]][0], pairs[ab[1]][1]];
        if let Some(sign) = sort_with_sign(&mut idx) {
            m[(quad_index[idx.as_slice()], col)] = ExactScalar::from_integer(sign.into());
        }
    }
    m
}

/// The Cartan component of `S²(Λ²W*)` for `W = ℝ^{n+1}`, realized as the
/// kernel of the wedge product into `Λ⁴W*`.
pub fn cartan_kernel_s2_lambda2(model: &GradedLieModel) -> Result<Representation, RepError> {
    let GeometryKind::Projective { n } = model.kind() else {
        return Err(RepError::NeedsProjective("cartanS2L2"));
    };
    let lambda2 = exterior_power(&dual_rep(&standard_rep(model)), 2)?;
    let s2 = symmetric_power(&lambda2, 2)?;
    if n < 3 {
        log::warn!("Λ⁴ vanishes for n = {n}; cartanS2L2 is all of S²(Λ²W*)");
        return Ok(s2.with_descriptor("cartanS2L2"));
    }
    let kernel = exact_nullspace(&wedge_map_s2_lambda2(n + 1));
    Ok(invariant_subrep(&s2, &kernel)?.with_descriptor("cartanS2L2"))
}

/// The lowest grading slots, which carry the irreducible quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientProjection {
    slots: Vec<usize>,
    labels: Vec<BasisLabel>,
}

impl QuotientProjection {
    pub fn slots(&self) -> &[usize] {
        &self.slots
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    /// Reads off the slot coordinates of a full vector.
    pub fn project<T: Clone>(&self, v: &[T]) -> Vec<T> {
        self.slots.iter().map(|&i| v[i].clone()).collect()
    }
}

pub fn quotient_projection(rep: &Representation) -> QuotientProjection {
    let slots: Vec<usize> = (0..rep.dim()).filter(|&i| rep.grading[i] == 0).collect();
    QuotientProjection {
        labels: slots.iter().map(|&i| rep.labels[i].clone()).collect(),
        slots,
    }
}

/// Parsed form of the representation grammar
/// `std | dual(R) | ext(r,R) | sym(k,R) | tensor(R,R) | cartanS2L2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RepDescriptor {
    Std,
    Dual(Box<RepDescriptor>),
    Ext(usize, Box<RepDescriptor>),
    Sym(usize, Box<RepDescriptor>),
    Tensor(Box<RepDescriptor>, Box<RepDescriptor>),
    CartanS2L2,
}

impl RepDescriptor {
    pub fn build(&self, model: &GradedLieModel) -> Result<Representation, RepError> {
        Ok(match self {
            RepDescriptor::Std => standard_rep(model),
            RepDescriptor::Dual(r) => dual_rep(&r.build(model)?),
            RepDescriptor::Ext(k, r) => exterior_power(&r.build(model)?, *k)?,
            RepDescriptor::Sym(k, r) => symmetric_power(&r.build(model)?, *k)?,
            RepDescriptor::Tensor(a, b) => tensor_product(&a.build(model)?, &b.build(model)?)?,
            RepDescriptor::CartanS2L2 => cartan_kernel_s2_lambda2(model)?,
        })
    }
}

impl fmt::Display for RepDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepDescriptor::Std => write!(f, "std"),
            RepDescriptor::Dual(r) => write!(f, "dual({r})"),
            RepDescriptor::Ext(k, r) => write!(f, "ext({k},{r})"),
            RepDescriptor::Sym(k, r) => write!(f, "sym({k},{r})"),
            RepDescriptor::Tensor(a, b) => write!(f, "tensor({a},{b})"),
            RepDescriptor::CartanS2L2 => write!(f, "cartanS2L2"),
        }
    }
}

impl FromStr for RepDescriptor {
    type Err = RepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        parse_descriptor(&compact).ok_or_else(|| RepError::Parse(s.to_string()))
    }
}

fn parse_descriptor(s: &str) -> Option<RepDescriptor> {
    match s {
        "std" => return Some(RepDescriptor::Std),
        "cartanS2L2" => return Some(RepDescriptor::CartanS2L2),
        _ => {}
    }
    let open = s.find('(')?;
    let inner = s.get(open + 1..s.len() - 1).filter(|_| s.ends_with(')'))?;
    let args = split_top_level(inner)?;
    let rep = |a: &str| parse_descriptor(a).map(Box::new);
    match (&s[..open], args.as_slice()) {
        ("dual", [r]) => Some(RepDescriptor::Dual(rep(r)?)),
        ("ext", [k, r]) => Some(RepDescriptor::Ext(k.parse().ok()?, rep(r)?)),
        ("sym", [k, r]) => Some(RepDescriptor::Sym(k.parse().ok()?, rep(r)?)),
        ("tensor", [a, b]) => Some(RepDescriptor::Tensor(rep(a)?, rep(b)?)),
        _ => None,
    }
}

fn split_top_level(s: &str) -> Option<Vec<&str>> {
    let mut depth = 0i32;
    let mut start = 0;
    let mut out = Vec::new();
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    (depth == 0).then(|| {
        out.push(&s[start..]);
        out
    })
}
