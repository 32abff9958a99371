//! Affine and linear spans of finite point sets.

use num_traits::Zero;

use super::linalg::{independent_subset, rank};
use super::{Rational, RationalVector};
use crate::error::GeometryError;

/// `base + span(directions)`, with a linearly independent direction list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSubspace {
    pub base: RationalVector,
    pub directions: Vec<RationalVector>,
}

impl AffineSubspace {
    pub fn ambient_dim(&self) -> usize {
        self.base.len()
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        let n = self.ambient_dim();
        if p.len() != n {
            return false;
        }
        let diff: RationalVector = p.iter().zip(&self.base).map(|(a, b)| a - b).collect();
        if diff.iter().all(Zero::is_zero) {
            return true;
        }
        let mut rows = self.directions.clone();
        rows.push(diff);
        rank(&rows, n) == self.dim()
    }

    /// Do the two descriptions define the same affine subspace?
    pub fn same_as(&self, other: &AffineSubspace) -> bool {
        let n = self.ambient_dim();
        if other.ambient_dim() != n || other.dim() != self.dim() || !self.contains(&other.base) {
            return false;
        }
        let mut rows = self.directions.clone();
        rows.extend(other.directions.iter().cloned());
        rank(&rows, n) == self.dim()
    }
}

fn check_dims(points: &[RationalVector]) -> Result<usize, GeometryError> {
    let n = points.first().ok_or(GeometryError::EmptyInput)?.len();
    if let Some(bad) = points.iter().find(|p| p.len() != n) {
        return Err(GeometryError::DimensionMismatch {
            expected: n,
            found: bad.len(),
        });
    }
    Ok(n)
}

/// Smallest affine subspace containing every point. The base is the first
/// point; the directions are a maximal independent subset of the differences
/// to it, in input order.
pub fn affine_span(points: &[RationalVector]) -> Result<AffineSubspace, GeometryError> {
    let n = check_dims(points)?;
    let base = points[0].clone();
    let diffs: Vec<RationalVector> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&base).map(|(a, b)| a - b).collect())
        .collect();
    Ok(AffineSubspace {
        base,
        directions: independent_subset(&diffs, n),
    })
}

/// Basis of the linear span of the points viewed as vectors.
pub fn linear_span(points: &[RationalVector]) -> Result<Vec<RationalVector>, GeometryError> {
    let n = check_dims(points)?;
    Ok(independent_subset(points, n))
}
