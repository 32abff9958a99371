//! Newton polyhedra of monomial ideals and their face lattices.
//!
//! `P = conv(Γ)` where `Γ` is the set of exponents of monomials in the ideal.
//! Its recession cone is always the nonnegative orthant, so `P` is determined
//! by the minimal generators and every facet inequality `w . x >= c` has
//! `w >= 0` and `c >= 0`.

mod face;
mod hull;
mod ideal;
mod product;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

pub use face::{enumerate_faces, face_functional, face_functional_ordered, Face};
pub use ideal::{minimalize_generators, MonomialIdeal};
pub use product::{product_polyhedron, ProductPolyhedron};

use crate::error::PolyhedronError;
use crate::geometry::linalg::{dot_int, rank};
use crate::geometry::{int, ExponentVector, Rational, RationalVector};

/// One facet inequality `normal . x >= constant` of a Newton polyhedron.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FacetData {
    /// Primitive integer normal, componentwise nonnegative.
    pub normal: Vec<i64>,
    pub constant: i64,
    /// True iff `constant == 0`: the facet lies in `{x_i = 0}` for the single
    /// coordinate where the normal is nonzero.
    pub is_coordinate: bool,
}

impl FacetData {
    /// `L = normal / constant`, the functional equal to one on the facet.
    pub fn functional(&self) -> Option<RationalVector> {
        (self.constant > 0).then(|| {
            self.normal
                .iter()
                .map(|&w| Rational::new(w.into(), self.constant.into()))
                .collect()
        })
    }

    pub fn is_tight(&self, p: &[i64]) -> bool {
        self.normal.iter().zip(p).map(|(w, x)| w * x).sum::<i64>() == self.constant
    }

    pub fn is_satisfied(&self, p: &[i64]) -> bool {
        self.normal.iter().zip(p).map(|(w, x)| w * x).sum::<i64>() >= self.constant
    }

    pub(crate) fn extend(&self, before: usize, after: usize) -> FacetData {
        let mut normal = vec![0; before];
        normal.extend_from_slice(&self.normal);
        normal.extend(std::iter::repeat(0).take(after));
        FacetData {
            normal,
            constant: self.constant,
            is_coordinate: self.is_coordinate,
        }
    }
}

/// Least positive integer `m` making `m * L` integral, for a non-coordinate facet.
pub fn facet_m(facet: &FacetData) -> Result<u64, PolyhedronError> {
    let l = facet.functional().ok_or(PolyhedronError::CoordinateFacet(0))?;
    let m = l.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    Ok(m.to_u64().expect("m-value fits in u64"))
}

/// `P = conv(Γ)`: vertices, facet inequalities, recession cone `R^n_{>=0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    ideal: MonomialIdeal,
    vertices: Vec<ExponentVector>,
    facets: Vec<FacetData>,
}

impl NewtonPolyhedron {
    pub fn dim(&self) -> usize {
        self.ideal.dim()
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn vertices(&self) -> &[ExponentVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[FacetData] {
        &self.facets
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        p.iter().all(|x| !x.is_negative())
            && self.facets.iter().all(|f| {
                let w: RationalVector = f.normal.iter().map(|&x| int(x)).collect();
                crate::geometry::linalg::dot(&w, p) >= int(f.constant)
            })
    }

    pub(crate) fn from_parts(
        ideal: MonomialIdeal,
        vertices: Vec<ExponentVector>,
        facets: Vec<FacetData>,
    ) -> Self {
        Self { ideal, vertices, facets }
    }
}

/// Computes `P = conv(⋃ (v_i + R^n_{>=0}))` exactly.
pub fn build_polyhedron(ideal: &MonomialIdeal) -> NewtonPolyhedron {
    let n = ideal.dim();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..n {
        let mut r = vec![BigInt::zero(); n + 1];
        r[i + 1] = BigInt::one();
        rows.push(r);
    }
    for g in ideal.generators() {
        let mut r = vec![BigInt::one()];
        r.extend(g.iter().map(|&x| BigInt::from(x)));
        rows.push(r);
    }
    let mut facets: Vec<FacetData> = hull::extreme_rays(&rows, n + 1)
        .into_iter()
        .filter(|y| y[1..].iter().any(|x| !x.is_zero()))
        .map(|y| {
            let normal: Vec<i64> = y[1..].iter().map(|x| x.to_i64().unwrap()).collect();
            let constant = (-&y[0]).to_i64().unwrap();
            debug_assert!(normal.iter().all(|&w| w >= 0) && constant >= 0);
            FacetData {
                normal,
                constant,
                is_coordinate: constant == 0,
            }
        })
        .collect();
    facets.sort_by(|a, b| {
        (a.is_coordinate, &b.normal, a.constant).cmp(&(b.is_coordinate, &a.normal, b.constant))
    });

    let vertices: Vec<ExponentVector> = ideal
        .generators()
        .iter()
        .filter(|g| {
            let tight: Vec<RationalVector> = facets
                .iter()
                .filter(|f| f.is_tight(g))
                .map(|f| f.normal.iter().map(|&x| int(x)).collect())
                .collect();
            rank(&tight, n) == n
        })
        .cloned()
        .collect();
    NewtonPolyhedron {
        ideal: ideal.clone(),
        vertices,
        facets,
    }
}

/// Value of a functional at an integer point.
pub(crate) fn eval(l: &[Rational], p: &[i64]) -> Rational {
    dot_int(l, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(gens: &[&[i64]]) -> NewtonPolyhedron {
        let raw: Vec<ExponentVector> = gens.iter().map(|g| g.to_vec()).collect();
        build_polyhedron(&minimalize_generators(&raw).unwrap())
    }

    fn non_coordinate(p: &NewtonPolyhedron) -> Vec<(Vec<i64>, i64)> {
        p.facets()
            .iter()
            .filter(|f| !f.is_coordinate)
            .map(|f| (f.normal.clone(), f.constant))
            .collect()
    }

    #[test]
    fn two_axis_generators() {
        let p = poly(&[&[2, 0], &[0, 3]]);
        assert_eq!(p.vertices(), &[vec![2, 0], vec![0, 3]]);
        // x/2 + y/3 >= 1  <=>  3x + 2y >= 6
        assert_eq!(non_coordinate(&p), vec![(vec![3, 2], 6)]);
        assert_eq!(p.facets().iter().filter(|f| f.is_coordinate).count(), 2);
    }

    #[test]
    fn two_generators_general_position() {
        // (x y^4, x^3 y): vertices P1=(1,4), P2=(3,1)
        let p = poly(&[&[1, 4], &[3, 1]]);
        assert_eq!(p.vertices(), &[vec![3, 1], vec![1, 4]]);
        let facets = non_coordinate(&p);
        assert_eq!(facets.len(), 3);
        // diagonal: normal proportional to (-(b2-b1), a2-a1) = (3, 2), through (1,4): 3+8 = 11
        assert!(facets.contains(&(vec![3, 2], 11)));
        assert!(facets.contains(&(vec![1, 0], 1)));
        assert!(facets.contains(&(vec![0, 1], 1)));
    }

    #[test]
    fn shifted_orthant() {
        let p = poly(&[&[1, 1, 1]]);
        assert_eq!(p.vertices(), &[vec![1, 1, 1]]);
        let mut f = non_coordinate(&p);
        f.sort();
        assert_eq!(f, vec![(vec![0, 0, 1], 1), (vec![0, 1, 0], 1), (vec![1, 0, 0], 1)]);
    }

    #[test]
    fn non_vertex_generator() {
        // (x^2, xy, y^2): xy sits in the middle of the diagonal
        let p = poly(&[&[2, 0], &[1, 1], &[0, 2]]);
        assert_eq!(p.vertices(), &[vec![2, 0], vec![0, 2]]);
        assert_eq!(non_coordinate(&p), vec![(vec![1, 1], 2)]);
    }

    #[test]
    fn m_values() {
        let p = poly(&[&[2, 0], &[0, 3]]);
        let diag = p.facets().iter().find(|f| !f.is_coordinate).unwrap();
        assert_eq!(facet_m(diag).unwrap(), 6);
        let q = poly(&[&[1, 4], &[3, 1]]);
        let vertical = q.facets().iter().find(|f| f.normal == vec![1, 0]).unwrap();
        assert_eq!(facet_m(vertical).unwrap(), 1);
        let r = poly(&[&[5, 2], &[7, 1]]);
        let vertical = r.facets().iter().find(|f| f.normal == vec![1, 0]).unwrap();
        assert_eq!(facet_m(vertical).unwrap(), 5);
        let s = poly(&[&[1, 1]]);
        assert!(s.facets().iter().all(|f| facet_m(f).unwrap() == 1));
        let coord = p.facets().iter().find(|f| f.is_coordinate).unwrap();
        assert!(facet_m(coord).is_err());
    }

    #[test]
    fn generators_lie_in_polyhedron() {
        let p = poly(&[&[4, 0, 1], &[0, 3, 3], &[1, 1, 1], &[2, 5, 0]]);
        for g in p.ideal().generators() {
            assert!(p.contains(&crate::geometry::rvec(g)));
        }
        assert!(p.facets().iter().all(|f| f.normal.iter().all(|&w| w >= 0)));
    }
}
