//! Exact rational arithmetic, multivariate polynomials and matrices over
//! them, and fraction-free linear algebra.

mod linalg;
mod matrix;
mod poly;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use linalg::{exact_nullspace, rank, rref, solve, Rref};
pub use matrix::{PolyMatrix, RatMatrix};
pub use poly::{Exponents, MultiPoly};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type ExactScalar = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MathError {
    #[error("variable-count mismatch: {left} vs {right}")]
    VarCountMismatch { left: usize, right: usize },
    #[error("point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    VarIndex { index: usize, nvars: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Shorthand for `num/den`.
pub fn rat(num: i64, den: i64) -> ExactScalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `p/q` or an integer.
pub fn parse_scalar(s: &str) -> Result<ExactScalar, MathError> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad_scalar(s))?;
            let d: BigInt = d.trim().parse().map_err(|_| bad_scalar(s))?;
            if d == BigInt::from(0) {
                return Err(MathError::Parse(format!("zero denominator in {s:?}")));
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(s.parse().map_err(|_| bad_scalar(s))?),
    };
    Ok(parsed)
}

fn bad_scalar(s: &str) -> MathError {
    MathError::Parse(format!("not a rational: {s:?}"))
}

/// `1/k!`
pub fn inv_factorial(k: u32) -> ExactScalar {
    let mut f = BigInt::from(1);
    for i in 2..=k {
        f *= i;
    }
    BigRational::new(BigInt::from(1), f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalars_are_normalized() {
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(rat(1, -2).to_string(), "-1/2");
        assert_eq!(rat(0, 5).to_string(), "0");
        assert_eq!(parse_scalar("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_scalar("-7").unwrap(), int(-7));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("a").is_err());
        assert_eq!(inv_factorial(4), rat(1, 24));
    }
}
