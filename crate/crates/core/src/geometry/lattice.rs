//! Integer lattices in canonical row-style Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::GeometryError;

/// A sublattice of `Z^n`, stored as its Hermite basis.
///
/// Rows are in echelon form with strictly increasing pivot columns, positive
/// pivots, and every entry above a pivot reduced into `[0, pivot)`. Two
/// generating sets give the same lattice iff their bases are identical.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerLattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
}

/// Outcome of a bounded lattice search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoxSearch {
    Found,
    Empty,
    /// The box exceeded the enumeration budget.
    TooLarge,
}

impl IntegerLattice {
    pub fn zero(dim: usize) -> Self {
        Self { dim, basis: Vec::new() }
    }

    pub fn standard(dim: usize) -> Self {
        let basis = (0..dim)
            .map(|i| (0..dim).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect();
        Self { dim, basis }
    }

    pub fn from_big(dim: usize, vectors: &[Vec<BigInt>]) -> Self {
        hermite_big(dim, vectors.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|row| row.iter().position(|x| !x.is_zero()).unwrap())
            .collect()
    }

    /// Integer coordinates of `v` in the Hermite basis, if `v` is in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Result<Option<Vec<BigInt>>, GeometryError> {
        if v.len() != self.dim {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        let mut r = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for row in &self.basis {
            let p = row.iter().position(|x| !x.is_zero()).unwrap();
            if r[..p].iter().any(|x| !x.is_zero()) {
                return Ok(None);
            }
            let (q, rem) = r[p].div_rem(&row[p]);
            if !rem.is_zero() {
                return Ok(None);
            }
            for (x, y) in r.iter_mut().zip(row) {
                *x -= &q * y;
            }
            coords.push(q);
        }
        Ok(r.iter().all(Zero::is_zero).then_some(coords))
    }

    pub fn contains(&self, v: &[i64]) -> Result<bool, GeometryError> {
        let big: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        Ok(self.coordinates(&big)?.is_some())
    }

    pub fn contains_big(&self, v: &[BigInt]) -> Result<bool, GeometryError> {
        Ok(self.coordinates(v)?.is_some())
    }

    /// Image of the lattice under the coordinate projection onto `coords`.
    pub fn project(&self, coords: &[usize]) -> IntegerLattice {
        let rows: Vec<Vec<BigInt>> = self
            .basis
            .iter()
            .map(|row| coords.iter().map(|&c| row[c].clone()).collect())
            .collect();
        hermite_big(coords.len(), rows)
    }

    /// Coset representatives of `self / sub`, for a sublattice of equal rank.
    ///
    /// Returns `None` when `sub` is not contained in `self` or has smaller rank.
    pub fn coset_representatives(&self, sub: &IntegerLattice) -> Option<Vec<Vec<BigInt>>> {
        if sub.dim != self.dim || sub.rank() != self.rank() {
            return None;
        }
        let mut coords = Vec::with_capacity(sub.rank());
        for v in &sub.basis {
            coords.push(self.coordinates(v).ok()??);
        }
        let h = hermite_big(self.rank(), coords);
        let diag: Vec<BigInt> = (0..h.rank()).map(|i| h.basis[i][i].clone()).collect();
        let mut reps = vec![vec![BigInt::zero(); self.dim]];
        for (i, d) in diag.iter().enumerate() {
            let mut next = Vec::new();
            let mut c = BigInt::zero();
            while &c < d {
                for r in &reps {
                    let mut v = r.clone();
                    for (x, y) in v.iter_mut().zip(&self.basis[i]) {
                        *x += &c * y;
                    }
                    next.push(v);
                }
                c += 1;
            }
            reps = next;
        }
        reps.sort();
        Some(reps)
    }

    /// Is there a lattice point `x` with `lo <= x <= hi` componentwise?
    ///
    /// Enumeration proceeds pivot by pivot; when a pivot coefficient range
    /// would exceed `budget` values the search gives up with `TooLarge`.
    pub fn search_box(&self, lo: &[BigInt], hi: &[BigInt], budget: u64) -> BoxSearch {
        debug_assert_eq!(lo.len(), self.dim);
        if lo.iter().zip(hi).any(|(l, h)| l > h) {
            return BoxSearch::Empty;
        }
        let pivots = self.pivots();
        let mut current = vec![BigInt::zero(); self.dim];
        // columns before the first pivot are identically zero
        let first = pivots.first().copied().unwrap_or(self.dim);
        if (0..first).any(|j| lo[j].is_positive() || hi[j].is_negative()) {
            return BoxSearch::Empty;
        }
        self.search_rec(0, &pivots, lo, hi, &mut current, budget)
    }

    fn search_rec(
        &self,
        i: usize,
        pivots: &[usize],
        lo: &[BigInt],
        hi: &[BigInt],
        current: &mut Vec<BigInt>,
        budget: u64,
    ) -> BoxSearch {
        if i == self.basis.len() {
            return BoxSearch::Found;
        }
        let row = &self.basis[i];
        let p = pivots[i];
        let h = &row[p];
        let cmin = Integer::div_ceil(&(&lo[p] - &current[p]), h);
        let cmax = (&hi[p] - &current[p]).div_floor(h);
        if cmin > cmax {
            return BoxSearch::Empty;
        }
        let span = (&cmax - &cmin).to_u64().unwrap_or(u64::MAX);
        if span >= budget {
            return BoxSearch::TooLarge;
        }
        let next_pivot = pivots.get(i + 1).copied().unwrap_or(self.dim);
        let mut outcome = BoxSearch::Empty;
        let mut c = cmin;
        while c <= cmax {
            for (x, y) in current.iter_mut().zip(row) {
                *x += &c * y;
            }
            let fits = (p..next_pivot).all(|j| lo[j] <= current[j] && current[j] <= hi[j]);
            let res = if fits {
                self.search_rec(i + 1, pivots, lo, hi, current, budget)
            } else {
                BoxSearch::Empty
            };
            for (x, y) in current.iter_mut().zip(row) {
                *x -= &c * y;
            }
            match res {
                BoxSearch::Found => return BoxSearch::Found,
                BoxSearch::TooLarge => outcome = BoxSearch::TooLarge,
                BoxSearch::Empty => {}
            }
            c += 1;
        }
        outcome
    }
}

/// The lattice generated by `vectors`, in canonical Hermite form.
pub fn hermite_form(dim: usize, vectors: &[Vec<i64>]) -> Result<IntegerLattice, GeometryError> {
    let mut rows = Vec::with_capacity(vectors.len());
    for v in vectors {
        if v.len() != dim {
            return Err(GeometryError::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
        rows.push(v.iter().map(|&x| BigInt::from(x)).collect());
    }
    Ok(hermite_big(dim, rows))
}

fn hermite_big(dim: usize, mut rows: Vec<Vec<BigInt>>) -> IntegerLattice {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut r = 0;
    for c in 0..dim {
        if r == rows.len() {
            break;
        }
        loop {
            let nz: Vec<usize> = (r..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
            if nz.len() <= 1 {
                if let Some(&i) = nz.first() {
                    rows.swap(i, r);
                }
                break;
            }
            let i0 = *nz
                .iter()
                .min_by(|&&a, &&b| rows[a][c].abs().cmp(&rows[b][c].abs()))
                .unwrap();
            let pivot_row = rows[i0].clone();
            for &i in &nz {
                if i != i0 {
                    let q = rows[i][c].div_floor(&pivot_row[c]);
                    for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                        *x -= &q * y;
                    }
                }
            }
        }
        if r < rows.len() && !rows[r][c].is_zero() {
            if rows[r][c].is_negative() {
                for x in rows[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            let pivot_row = rows[r].clone();
            for i in 0..r {
                let q = rows[i][c].div_floor(&pivot_row[c]);
                if !q.is_zero() {
                    for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                        *x -= &q * y;
                    }
                }
            }
            r += 1;
        }
    }
    rows.truncate(r);
    debug_assert!(rows.iter().all(|row| row.iter().any(|x| !x.is_zero())));
    IntegerLattice { dim, basis: rows }
}

impl IntegerLattice {
    pub fn basis_i64(&self) -> Vec<Vec<i64>> {
        self.basis
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64().expect("lattice entry exceeds i64")).collect())
            .collect()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.dim
    }

    /// Index `[Z^n : self]` for a full-rank lattice.
    pub fn index(&self) -> Option<BigInt> {
        self.is_full_rank()
            .then(|| (0..self.dim).fold(BigInt::one(), |acc, i| acc * &self.basis[i][i]))
    }
}
