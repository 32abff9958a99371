//! Dense exact linear algebra over the rationals and the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{to_rational, Rational, RationalVector};
use crate::error::GeometryError;

/// Solution set of a consistent linear system `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSolution {
    /// The basic solution: every free variable set to zero.
    pub particular: RationalVector,
    /// Basis of `{x : A x = 0}`; each vector has a positive leading entry.
    pub kernel: Vec<RationalVector>,
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_int(a: &[Rational], b: &[i64]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(_, &y)| y != 0)
        .fold(Rational::zero(), |acc, (x, &y)| acc + x * Rational::from_integer(y.into()))
}

fn check_rows(rows: &[RationalVector], ncols: usize) -> Result<(), GeometryError> {
    for row in rows {
        if row.len() != ncols {
            return Err(GeometryError::DimensionMismatch {
                expected: ncols,
                found: row.len(),
            });
        }
    }
    Ok(())
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[RationalVector], ncols: usize) -> (Vec<RationalVector>, Vec<usize>) {
    let mut m: Vec<RationalVector> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..ncols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[RationalVector], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Greedy maximal linearly independent subset, preserving input order.
pub fn independent_subset(vectors: &[RationalVector], ncols: usize) -> Vec<RationalVector> {
    let mut kept: Vec<RationalVector> = Vec::new();
    for v in vectors {
        kept.push(v.clone());
        if rank(&kept, ncols) < kept.len() {
            kept.pop();
        }
    }
    kept
}

fn normalize_leading_sign(v: &mut RationalVector) {
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in v.iter_mut() {
                *x = -x.clone();
            }
        }
    }
}

/// Basis of the rational nullspace `{x : rows · x = 0}`.
pub fn nullspace(rows: &[RationalVector], ncols: usize) -> Vec<RationalVector> {
    let (r, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            normalize_leading_sign(&mut v);
            v
        })
        .collect()
}

pub(crate) fn solve_system(
    ncols: usize,
    matrix: &[RationalVector],
    rhs: &[Rational],
) -> Result<Option<LinearSolution>, GeometryError> {
    check_rows(matrix, ncols)?;
    if rhs.len() != matrix.len() {
        return Err(GeometryError::DimensionMismatch {
            expected: matrix.len(),
            found: rhs.len(),
        });
    }
    let augmented: Vec<RationalVector> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&augmented, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return Ok(None);
    }
    let mut particular = vec![Rational::zero(); ncols];
    for (row, &p) in r.iter().zip(&pivots) {
        particular[p] = row[ncols].clone();
    }
    Ok(Some(LinearSolution {
        particular,
        kernel: nullspace(matrix, ncols),
    }))
}

/// Solves `matrix · x = rhs` exactly.
///
/// Returns `Ok(None)` when the system is inconsistent.
pub fn solve_linear(
    matrix: &[RationalVector],
    rhs: &[Rational],
) -> Result<Option<LinearSolution>, GeometryError> {
    let ncols = matrix.first().ok_or(GeometryError::EmptyInput)?.len();
    solve_system(ncols, matrix, rhs)
}

/// Like [`solve_linear`], but the basic solution is taken with respect to the
/// column order `order` (a permutation of `0..ncols`): earlier columns are
/// preferred as pivots, so the particular solution is supported on them.
pub fn solve_linear_ordered(
    ncols: usize,
    matrix: &[RationalVector],
    rhs: &[Rational],
    order: &[usize],
) -> Result<Option<LinearSolution>, GeometryError> {
    if order.len() != ncols {
        return Err(GeometryError::DimensionMismatch {
            expected: ncols,
            found: order.len(),
        });
    }
    check_rows(matrix, ncols)?;
    let permuted: Vec<RationalVector> = matrix
        .iter()
        .map(|row| order.iter().map(|&j| row[j].clone()).collect())
        .collect();
    let Some(sol) = solve_system(ncols, &permuted, rhs)? else {
        return Ok(None);
    };
    let unpermute = |v: &RationalVector| {
        let mut out = vec![Rational::zero(); ncols];
        for (k, &j) in order.iter().enumerate() {
            out[j] = v[k].clone();
        }
        out
    };
    Ok(Some(LinearSolution {
        particular: unpermute(&sol.particular),
        kernel: sol.kernel.iter().map(unpermute).collect(),
    }))
}

/// Smallest integer multiple of `v` (by the lcm of its denominators).
pub fn clear_denominators(v: &[Rational]) -> Vec<BigInt> {
    let l = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter()
        .map(|x| x.numer() * (&l / x.denom()))
        .collect()
}

/// A `Z`-basis of the integer kernel `{x in Z^n : rows · x = 0}`.
///
/// Computed by unimodular column reduction of `rows`; the columns of the
/// accumulated transform that end up outside the pivot block span the kernel.
pub fn integer_kernel(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    // u[j] is the j-th column of the transform, stored as a vector.
    let mut u: Vec<Vec<BigInt>> = (0..ncols)
        .map(|j| {
            let mut c = vec![BigInt::zero(); ncols];
            c[j] = BigInt::one();
            c
        })
        .collect();
    let mut next = 0;
    for r in 0..a.len() {
        if next == ncols {
            break;
        }
        loop {
            let nonzero: Vec<usize> = (next..ncols).filter(|&j| !a[r][j].is_zero()).collect();
            if nonzero.len() <= 1 {
                if let Some(&j) = nonzero.first() {
                    swap_cols(&mut a, &mut u, j, next);
                    next += 1;
                }
                break;
            }
            let j0 = *nonzero
                .iter()
                .min_by(|&&x, &&y| a[r][x].abs().cmp(&a[r][y].abs()))
                .unwrap();
            for &j in &nonzero {
                if j != j0 {
                    let q = a[r][j].div_floor(&a[r][j0]);
                    sub_col(&mut a, &mut u, j, j0, &q);
                }
            }
        }
    }
    u.drain(next..).collect()
}

fn swap_cols(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], x: usize, y: usize) {
    if x == y {
        return;
    }
    for row in a.iter_mut() {
        row.swap(x, y);
    }
    u.swap(x, y);
}

// column j -= q * column k
fn sub_col(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], j: usize, k: usize, q: &BigInt) {
    for row in a.iter_mut() {
        let d = q * &row[k];
        row[j] -= d;
    }
    let (cj, ck) = if j < k {
        let (lo, hi) = u.split_at_mut(k);
        (&mut lo[j], &hi[0])
    } else {
        let (lo, hi) = u.split_at_mut(j);
        (&mut hi[0], &lo[k])
    };
    for (x, y) in cj.iter_mut().zip(ck.iter()) {
        *x -= q * y;
    }
}

pub fn to_rational_rows(rows: &[Vec<i64>]) -> Vec<RationalVector> {
    rows.iter().map(|r| to_rational(r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{int, rat, rvec};

    #[test]
    fn identity_system() {
        let m = vec![rvec(&[1, 0]), rvec(&[0, 1])];
        let s = solve_linear(&m, &[int(1), int(2)]).unwrap().unwrap();
        assert_eq!(s.particular, rvec(&[1, 2]));
        assert!(s.kernel.is_empty());
    }

    #[test]
    fn one_equation() {
        let s = solve_linear(&[rvec(&[1, 1])], &[int(1)]).unwrap().unwrap();
        assert_eq!(s.particular, rvec(&[1, 0]));
        assert_eq!(s.kernel, vec![rvec(&[1, -1])]);
    }

    #[test]
    fn inconsistent_system() {
        let m = vec![rvec(&[1, 0]), rvec(&[1, 0])];
        assert_eq!(solve_linear(&m, &[int(1), int(2)]).unwrap(), None);
    }

    #[test]
    fn mismatched_rhs() {
        let err = solve_linear(&[rvec(&[1, 1])], &[int(1), int(2)]).unwrap_err();
        assert!(matches!(err, GeometryError::DimensionMismatch { .. }));
        let err = solve_linear(&[rvec(&[1, 1]), rvec(&[1])], &[int(1), int(2)]).unwrap_err();
        assert!(matches!(err, GeometryError::DimensionMismatch { .. }));
    }

    #[test]
    fn ordered_solution_prefers_early_columns() {
        let m = vec![rvec(&[2, 3])];
        let a = solve_linear_ordered(2, &m, &[int(1)], &[0, 1]).unwrap().unwrap();
        let b = solve_linear_ordered(2, &m, &[int(1)], &[1, 0]).unwrap().unwrap();
        assert_eq!(a.particular, vec![rat(1, 2), int(0)]);
        assert_eq!(b.particular, vec![int(0), rat(1, 3)]);
    }

    #[test]
    fn integer_kernel_is_saturated() {
        // x + y + 2z = 0: rational kernel spanned by (1,-1,0), (2,0,-1)
        let rows = vec![vec![BigInt::from(1), BigInt::from(1), BigInt::from(2)]];
        let k = integer_kernel(&rows, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(&v[0] + &v[1] + BigInt::from(2) * &v[2], BigInt::zero());
        }
        // (1,1,-1) must be an integer combination of the basis
        let lat = crate::geometry::IntegerLattice::from_big(3, &k);
        assert!(lat.contains(&[1, 1, -1]).unwrap());
        assert!(lat.contains(&[1, -1, 0]).unwrap());
    }

    #[test]
    fn clear_denominators_scales_by_lcm() {
        assert_eq!(
            clear_denominators(&[rat(1, 2), rat(1, 3)]),
            vec![BigInt::from(3), BigInt::from(2)]
        );
    }
}
