use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{ExactScalar, MathError, RatMatrix};

/// Row echelon form over the integers produced by Bareiss elimination.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    swaps: usize,
}

/// Clears denominators row by row; scaling a row by a nonzero integer
/// leaves row space and kernel unchanged.
fn integer_rows(m: &RatMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            row.iter()
                .map(|v| v.numer() * (&lcm / v.denom()))
                .collect()
        })
        .collect()
}

fn bareiss(mut a: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        // smallest nonzero magnitude keeps the intermediate minors small
        let Some(p) = (r..nrows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()))
        else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            swaps += 1;
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let factor = row[c].clone();
            for j in (c + 1)..cols {
                let num = &pivot_row[c] * &row[j] - &factor * &pivot_row[j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                row[j] = num / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon {
        rows: a,
        pivots,
        swaps,
    }
}

/// Reduced row echelon form: `rows` are the nonzero rows, each with a 1 at
/// its pivot column and zeros at every other pivot column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rows: Vec<Vec<ExactScalar>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Expresses `v` in the basis `rows`, if `v` lies in their span.
    pub fn coordinates(&self, v: &[ExactScalar]) -> Option<Vec<ExactScalar>> {
        assert_eq!(v.len(), self.cols, "vector length");
        let coords: Vec<ExactScalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = vec![ExactScalar::zero(); self.cols];
        for (c, row) in coords.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (acc, x) in rebuilt.iter_mut().zip(row) {
                if !x.is_zero() {
                    *acc += c * x;
                }
            }
        }
        (rebuilt.as_slice() == v).then_some(coords)
    }
}

pub fn rref(m: &RatMatrix) -> Rref {
    let ech = bareiss(integer_rows(m), m.cols());
    let mut rows: Vec<Vec<ExactScalar>> = ech
        .rows
        .iter()
        .zip(&ech.pivots)
        .map(|(row, &p)| {
            let lead = row[p].clone();
            row.iter()
                .map(|x| BigRational::new(x.clone(), lead.clone()))
                .collect()
        })
        .collect();
    for k in (0..rows.len()).rev() {
        let p = ech.pivots[k];
        let (above, below) = rows.split_at_mut(k);
        let pivot_row = &below[0];
        for row in above.iter_mut() {
            let factor = row[p].clone();
            if factor.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(pivot_row) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
    }
    Rref {
        rows,
        pivots: ech.pivots,
        cols: m.cols(),
    }
}

pub fn rank(m: &RatMatrix) -> usize {
    bareiss(integer_rows(m), m.cols()).pivots.len()
}

/// Exact kernel basis, one vector per free column; `dim = cols - rank`.
pub fn exact_nullspace(m: &RatMatrix) -> Vec<Vec<ExactScalar>> {
    let reduced = rref(m);
    let mut is_pivot = vec![false; m.cols()];
    for &p in &reduced.pivots {
        is_pivot[p] = true;
    }
    (0..m.cols())
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![ExactScalar::zero(); m.cols()];
            v[f] = ExactScalar::one();
            for (row, &p) in reduced.rows.iter().zip(&reduced.pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `m · x = b`, or `None` when the system is inconsistent.
pub fn solve(m: &RatMatrix, b: &[ExactScalar]) -> Result<Option<Vec<ExactScalar>>, MathError> {
    if b.len() != m.rows() {
        return Err(MathError::Dimension(format!(
            "right-hand side has {} entries, matrix has {} rows",
            b.len(),
            m.rows()
        )));
    }
    let n = m.cols();
    let mut aug = RatMatrix::zeros(m.rows(), n + 1);
    for i in 0..m.rows() {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let reduced = rref(&aug);
    if reduced.pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![ExactScalar::zero(); n];
    for (row, &p) in reduced.rows.iter().zip(&reduced.pivots) {
        x[p] = row[n].clone();
    }
    Ok(Some(x))
}

pub(super) fn determinant(m: &RatMatrix) -> ExactScalar {
    let n = m.rows();
    if n == 0 {
        return ExactScalar::one();
    }
    // Row scaling by the lcm multiplies the determinant; undo it afterwards.
    let mut scale = BigRational::one();
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let row = m.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            scale *= BigRational::from_integer(lcm.clone());
            row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
        })
        .collect();
    let ech = bareiss(rows, n);
    if ech.pivots.len() < n {
        return ExactScalar::zero();
    }
    let mut det = BigRational::from_integer(ech.rows[n - 1][n - 1].clone());
    if ech.swaps % 2 == 1 {
        det = -det;
    }
    det / scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn trivial_kernels() {
        assert_eq!(exact_nullspace(&RatMatrix::zeros(2, 2)).len(), 2);
        assert!(exact_nullspace(&RatMatrix::identity(3)).is_empty());
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = mat(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let ker = exact_nullspace(&m);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.apply(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = mat(&[&[2, 0], &[0, 4]]);
        assert_eq!(solve(&m, &[int(1), int(1)]).unwrap(), Some(vec![rat(1, 2), rat(1, 4)]));
        let singular = mat(&[&[1, 1], &[1, 1]]);
        assert_eq!(solve(&singular, &[int(1), int(2)]).unwrap(), None);
        assert!(solve(&m, &[int(1)]).is_err());
    }

    #[test]
    fn determinants_with_fractions() {
        let m = RatMatrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3), int(0)],
            vec![int(0), int(1), rat(2, 5)],
            vec![int(3), int(0), int(1)],
        ])
        .unwrap();
        // 1/2*(1 - 0) - 1/3*(0 - 6/5) + 0 = 1/2 + 2/5
        assert_eq!(m.determinant().unwrap(), rat(9, 10));
        let swap = mat(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.determinant().unwrap(), int(-1));
    }

    #[test]
    fn rref_coordinates() {
        let m = mat(&[&[1, 1, 0], &[0, 1, 1]]);
        let r = rref(&m);
        assert_eq!(r.coordinates(&[int(1), int(2), int(1)]), Some(vec![int(1), int(2)]));
        assert_eq!(r.coordinates(&[int(1), int(0), int(1)]), None);
    }

    fn small_matrix() -> impl Strategy<Value = RatMatrix> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec((-3i64..4, 1i64..4), r * c).prop_map(move |vals| {
                let rows = vals
                    .chunks(c)
                    .map(|ch| ch.iter().map(|&(n, d)| rat(n, d)).collect())
                    .collect();
                RatMatrix::from_rows(rows).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let ker = exact_nullspace(&m);
            prop_assert_eq!(rank(&m) + ker.len(), m.cols());
            for v in &ker {
                prop_assert!(m.apply(v).iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn determinant_is_multiplicative(a in small_matrix(), b in small_matrix()) {
            let n = a.rows().min(a.cols()).min(b.rows()).min(b.cols());
            let idx: Vec<usize> = (0..n).collect();
            let (a, b) = (a.submatrix(&idx, &idx), b.submatrix(&idx, &idx));
            prop_assert_eq!(
                a.mul(&b).determinant().unwrap(),
                a.determinant().unwrap() * b.determinant().unwrap()
            );
        }
    }
}
