use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{parse_scalar, ExactScalar, MathError};

/// Exponent vector of a monomial, ordered graded-lexicographically.
///
/// Higher total degree compares greater; ties are broken lexicographically
/// with `x1` most significant, so `x1^2 > x1*x2 > x2^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponents(Vec<u32>);

impl Exponents {
    pub fn new(exps: Vec<u32>) -> Self {
        Exponents(exps)
    }

    pub fn zero(nvars: usize) -> Self {
        Exponents(vec![0; nvars])
    }

    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        Exponents(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    fn add(&self, other: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// All exponent vectors in `nvars` variables with total degree at most
    /// `max_degree`, in ascending graded-lex order.
    pub fn up_to_degree(nvars: usize, max_degree: u32) -> Vec<Exponents> {
        let mut out = Vec::new();
        for d in 0..=max_degree {
            let mut of_degree = Vec::new();
            let mut current = vec![0u32; nvars];
            fill_degree(&mut current, 0, d, &mut of_degree);
            of_degree.sort();
            out.extend(of_degree);
        }
        out
    }
}

fn fill_degree(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Exponents>) {
    if current.is_empty() {
        if remaining == 0 {
            out.push(Exponents(Vec::new()));
        }
        return;
    }
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(Exponents(current.clone()));
        current[pos] = 0;
        return;
    }
    for e in 0..=remaining {
        current[pos] = e;
        fill_degree(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial over the rationals in `x1..xn`.
///
/// Zero coefficients are never stored, so structural equality is
/// polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, ExactScalar>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, ExactScalar::one())
    }

    pub fn constant(nvars: usize, c: ExactScalar) -> Self {
        Self::monomial(nvars, Exponents::zero(nvars), c)
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, ExactScalar::from_integer(BigInt::from(c)))
    }

    /// The coordinate function `x_{var+1}`.
    pub fn var(nvars: usize, var: usize) -> Self {
        assert!(var < nvars, "variable index {var} out of range for {nvars} variables");
        Self::monomial(nvars, Exponents::unit(nvars, var), ExactScalar::one())
    }

    pub fn monomial(nvars: usize, exps: Exponents, c: ExactScalar) -> Self {
        assert_eq!(exps.0.len(), nvars, "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MultiPoly { nvars, terms }
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, ExactScalar)>,
    {
        let mut p = MultiPoly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.0.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponents, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &ExactScalar)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, exps: &Exponents) -> ExactScalar {
        self.terms.get(exps).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn constant_term(&self) -> ExactScalar {
        self.coeff(&Exponents::zero(self.nvars))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.degree() == 0)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Exponents::degree)
    }

    /// Leading coefficient in graded-lex order.
    pub fn leading_coeff(&self) -> Option<&ExactScalar> {
        self.terms.values().next_back()
    }

    fn check_vars(&self, other: &MultiPoly) -> Result<(), MathError> {
        if self.nvars != other.nvars {
            return Err(MathError::VarCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly, MathError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly, MathError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly, MathError> {
        self.check_vars(other)?;
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ExactScalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by `x_{var+1}`.
    pub fn mul_var(&self, var: usize) -> MultiPoly {
        assert!(var < self.nvars);
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.0[var] += 1;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// `self += c * other`, in place.
    pub fn add_scaled(&mut self, other: &MultiPoly, c: &ExactScalar) {
        assert_eq!(self.nvars, other.nvars, "variable-count mismatch");
        if c.is_zero() {
            return;
        }
        for (e, v) in &other.terms {
            self.add_term(e.clone(), v * c);
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut out = MultiPoly::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn eval(&self, point: &[ExactScalar]) -> Result<ExactScalar, MathError> {
        if point.len() != self.nvars {
            return Err(MathError::PointLength {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let mut total = ExactScalar::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(&e.0) {
                if k > 0 {
                    term *= num_traits::pow(x.clone(), k as usize);
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Formal partial derivative with respect to `x_{var+1}`.
    pub fn partial(&self, var: usize) -> Result<MultiPoly, MathError> {
        if var >= self.nvars {
            return Err(MathError::VarIndex {
                index: var,
                nvars: self.nvars,
            });
        }
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e.0[var];
            if k == 0 {
                continue;
            }
            let mut d = e.clone();
            d.0[var] -= 1;
            out.add_term(d, c * ExactScalar::from_integer(BigInt::from(k)));
        }
        Ok(out)
    }

    /// Parses the canonical text form, e.g. `1/2*x1^2 - x2`.
    pub fn parse(s: &str, nvars: usize) -> Result<MultiPoly, MathError> {
        let err = |msg: &str| MathError::Parse(format!("{msg} in polynomial {s:?}"));
        let mut out = MultiPoly::zero(nvars);
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty input"));
        }
        let bytes = compact.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut negative = false;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                negative = bytes[pos] == b'-';
                pos += 1;
            } else if pos != 0 {
                return Err(err("missing sign between terms"));
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos] != b'+' && bytes[pos] != b'-' {
                pos += 1;
            }
            let term = &compact[start..pos];
            if term.is_empty() {
                return Err(err("empty term"));
            }
            let mut coeff = ExactScalar::one();
            let mut exps = vec![0u32; nvars];
            for (idx, factor) in term.split('*').enumerate() {
                if let Some(rest) = factor.strip_prefix('x') {
                    let (var, power) = match rest.split_once('^') {
                        Some((v, p)) => (v, p.parse::<u32>().map_err(|_| err("bad exponent"))?),
                        None => (rest, 1),
                    };
                    let var: usize = var.parse().map_err(|_| err("bad variable"))?;
                    if var == 0 || var > nvars {
                        return Err(err("variable out of range"));
                    }
                    exps[var - 1] += power;
                } else if idx == 0 {
                    coeff = parse_scalar(factor)?;
                } else {
                    return Err(err("coefficient must lead the term"));
                }
            }
            if negative {
                coeff = -coeff;
            }
            out.add_term(Exponents(exps), coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let vars: Vec<String> = e
                .0
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| {
                    if k == 1 {
                        format!("x{}", v + 1)
                    } else {
                        format!("x{}^{}", v + 1, k)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                self.$checked(rhs).expect("polynomial variable-count mismatch")
            }
        }
        impl $trait<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn difference_of_squares() {
        let (a, b) = (x(2, 0), x(2, 1));
        let p = (&a + &b) * (&a - &b);
        assert_eq!(p, &a * &a - &b * &b);
        assert_eq!(p.to_string(), "x1^2 - x2^2");
    }

    #[test]
    fn additive_identity_and_scaling() {
        let p = MultiPoly::parse("1/2*x1^2 - 3*x2 + 7", 2).unwrap();
        assert_eq!(&p + &MultiPoly::zero(2), p);
        let half_sq = MultiPoly::parse("1/2*x1^2", 2).unwrap();
        assert_eq!(half_sq.scale(&rat(2, 1)), x(2, 0).pow(2));
        assert!(p.scale(&rat(0, 1)).is_zero());
    }

    #[test]
    fn mismatched_variable_counts() {
        let err = x(2, 0).checked_add(&x(3, 0)).unwrap_err();
        assert_eq!(err, MathError::VarCountMismatch { left: 2, right: 3 });
        assert!(x(2, 0).checked_mul(&x(1, 0)).is_err());
    }

    #[test]
    fn evaluation() {
        let p = MultiPoly::parse("x1^2 - x2^2", 2).unwrap();
        assert_eq!(p.eval(&[rat(3, 1), rat(2, 1)]).unwrap(), rat(5, 1));
        let q = MultiPoly::parse("1/2*x1^2 + 1/2*x2^2 - 4", 2).unwrap();
        assert_eq!(q.eval(&[rat(0, 1), rat(0, 1)]).unwrap(), q.constant_term());
        assert_eq!(q.eval(&[rat(1, 1), rat(1, 1)]).unwrap(), rat(-3, 1));
        assert!(matches!(
            p.eval(&[rat(1, 1)]),
            Err(MathError::PointLength { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn partial_derivatives() {
        let p = MultiPoly::parse("x1^2*x2", 2).unwrap();
        assert_eq!(p.partial(0).unwrap(), MultiPoly::parse("2*x1*x2", 2).unwrap());
        assert!(x(2, 0).partial(1).unwrap().is_zero());
        assert!(matches!(p.partial(2), Err(MathError::VarIndex { index: 2, nvars: 2 })));
    }

    #[test]
    fn canonical_text() {
        let p = MultiPoly::parse("-x2 + 1/2*x1^2", 2).unwrap();
        assert_eq!(p.to_string(), "1/2*x1^2 - x2");
        let q = MultiPoly::parse("x2^2 + x1*x2 - 2/3 + x1^2", 2).unwrap();
        assert_eq!(q.to_string(), "x1^2 + x1*x2 + x2^2 - 2/3");
        assert_eq!(MultiPoly::parse("-x1", 1).unwrap().to_string(), "-x1");
        assert_eq!(MultiPoly::zero(3).to_string(), "0");
        assert_eq!(MultiPoly::parse("0", 3).unwrap(), MultiPoly::zero(3));
        assert_eq!(MultiPoly::parse("5/1", 0).unwrap().to_string(), "5");
        assert!(MultiPoly::parse("x3", 2).is_err());
        assert!(MultiPoly::parse("x1 x2", 2).is_err());
        assert!(MultiPoly::parse("", 2).is_err());
        assert!(MultiPoly::parse("x1*3", 2).is_err());
    }

    #[test]
    fn degree_and_grlex() {
        let p = MultiPoly::parse("x1*x2^2 + x1^3 + x2", 2).unwrap();
        assert_eq!(p.total_degree(), Some(3));
        assert_eq!(p.to_string(), "x1^3 + x1*x2^2 + x2");
        assert_eq!(MultiPoly::zero(2).total_degree(), None);
        let monos = Exponents::up_to_degree(2, 2);
        let rendered: Vec<String> = monos
            .iter()
            .map(|e| MultiPoly::monomial(2, e.clone(), rat(1, 1)).to_string())
            .collect();
        assert_eq!(rendered, ["1", "x2", "x1", "x2^2", "x1*x2", "x1^2"]);
        assert_eq!(Exponents::up_to_degree(0, 3).len(), 1);
        assert_eq!(Exponents::up_to_degree(3, 2).len(), 10);
    }
}
