use serde::{Deserialize, Serialize};

use crate::error::PolyhedronError;
use crate::geometry::ExponentVector;

/// A monomial ideal `(x^v_1, ..., x^v_r)` given by its minimal exponent vectors.
///
/// Generators are pairwise incomparable under the componentwise order and are
/// kept sorted in descending lexicographic order, so equal ideals compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialIdeal {
    dim: usize,
    generators: Vec<ExponentVector>,
}

fn divides(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Drops every exponent vector that is componentwise `>=` another one.
pub fn minimalize_generators(raw: &[ExponentVector]) -> Result<MonomialIdeal, PolyhedronError> {
    let dim = raw.first().ok_or(PolyhedronError::NoGenerators)?.len();
    MonomialIdeal::new(dim, raw.to_vec())
}

impl MonomialIdeal {
    pub fn new(dim: usize, raw: Vec<ExponentVector>) -> Result<Self, PolyhedronError> {
        if dim == 0 {
            return Err(PolyhedronError::ZeroDimension);
        }
        if raw.is_empty() {
            return Err(PolyhedronError::NoGenerators);
        }
        for v in &raw {
            if v.len() != dim {
                return Err(crate::error::GeometryError::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                }
                .into());
            }
            if v.iter().any(|&x| x < 0) {
                return Err(PolyhedronError::NegativeExponent(v.clone()));
            }
        }
        let mut gens = raw;
        gens.sort();
        gens.dedup();
        let minimal: Vec<ExponentVector> = gens
            .iter()
            .filter(|v| !gens.iter().any(|w| w != *v && divides(w, v)))
            .cloned()
            .collect();
        let mut generators = minimal;
        generators.sort_by(|a, b| b.cmp(a));
        Ok(Self { dim, generators })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    /// False for the unit ideal, whose only generator is the zero vector.
    pub fn is_proper(&self) -> bool {
        !self.generators.iter().any(|g| g.iter().all(|&x| x == 0))
    }

    pub fn max_exponent(&self) -> i64 {
        self.generators.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Is `x^u` in the ideal?
    pub fn contains(&self, u: &[i64]) -> bool {
        self.generators.iter().any(|g| divides(g, u))
    }

    /// The product of two ideals in disjoint sets of variables, living in
    /// the concatenated coordinates.
    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut gens = Vec::with_capacity(self.generators.len() * other.generators.len());
        for g in &self.generators {
            for h in &other.generators {
                let mut v = g.clone();
                v.extend_from_slice(h);
                gens.push(v);
            }
        }
        MonomialIdeal::new(self.dim + other.dim, gens).expect("product of valid ideals")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn set(v: &[ExponentVector]) -> BTreeSet<ExponentVector> {
        v.iter().cloned().collect()
    }

    #[test]
    fn dominated_generator_dropped() {
        let i = minimalize_generators(&[vec![2, 0], vec![2, 1]]).unwrap();
        assert_eq!(i.generators(), &[vec![2, 0]]);
    }

    #[test]
    fn incomparable_kept() {
        let i = minimalize_generators(&[vec![2, 0], vec![0, 7]]).unwrap();
        assert_eq!(set(i.generators()), set(&[vec![2, 0], vec![0, 7]]));
    }

    #[test]
    fn mixed_list() {
        let i = minimalize_generators(&[vec![1, 4], vec![2, 0], vec![0, 7], vec![1, 5]]).unwrap();
        assert_eq!(i.generators(), &[vec![2, 0], vec![1, 4], vec![0, 7]]);
    }

    #[test]
    fn errors() {
        assert_eq!(minimalize_generators(&[]).unwrap_err(), PolyhedronError::NoGenerators);
        assert!(matches!(
            minimalize_generators(&[vec![1, -1]]).unwrap_err(),
            PolyhedronError::NegativeExponent(_)
        ));
        assert!(minimalize_generators(&[vec![1, 1], vec![1]]).is_err());
    }

    #[test]
    fn unit_ideal_is_improper() {
        let i = minimalize_generators(&[vec![0, 0], vec![3, 1]]).unwrap();
        assert_eq!(i.generators(), &[vec![0, 0]]);
        assert!(!i.is_proper());
    }

    #[test]
    fn product_concatenates() {
        let a = minimalize_generators(&[vec![2, 0], vec![0, 7]]).unwrap();
        let b = minimalize_generators(&[vec![14, 0], vec![0, 1]]).unwrap();
        let ab = a.product(&b);
        assert_eq!(ab.dim(), 4);
        assert_eq!(ab.generators().len(), 4);
        assert!(ab.contains(&[0, 7, 0, 1]));
        assert!(!ab.contains(&[0, 7, 13, 0]));
    }
}
