//! The translated difference semigroups `M_Q = e + N{u - v : u ∈ Γ, v ∈ Γ ∩ Q}`
//! and `M'_Q = v0 + M_Q`.
//!
//! Write `q0` for a generator of the ideal on `Q`. Every `u - v` is a sum of
//! unit vectors, of `±(q - q0)` for points `q ∈ Γ ∩ Q`, and of `g - q0` for
//! generators `g` off the face. So
//!
//! `M_Q - e = N^n + D_Q + N{g - q0 : g off Q}`
//!
//! where `D_Q` is the group spanned by differences of face points. The sum
//! `ℓ` of the facet functionals through `Q` vanishes on `D_Q`, is strictly
//! positive on every `g - q0`, and is positive on `e_i` exactly for the
//! coordinates `N` outside the recession cone of `Q`. Membership is decided
//! by enumerating the finitely many multiplicities of the off-face steps
//! allowed by `ℓ`, then searching for a point of `D_Q` below the remainder,
//! which is a bounded lattice search on the coordinates in `N`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{PolyhedronError, RootsError};
use crate::geometry::linalg::clear_denominators;
use crate::geometry::{hermite_form, BoxSearch, ExponentVector, IntegerLattice, RationalVector};
use crate::polyhedron::{Face, NewtonPolyhedron};

/// Three-valued answer of a bounded membership query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Membership {
    Yes,
    No,
    /// The search exceeded its budget.
    Unknown,
}

impl Membership {
    pub fn and(self, other: Membership) -> Membership {
        match (self, other) {
            (Membership::No, _) | (_, Membership::No) => Membership::No,
            (Membership::Yes, Membership::Yes) => Membership::Yes,
            _ => Membership::Unknown,
        }
    }

    pub fn is_yes(self) -> bool {
        self == Membership::Yes
    }
}

/// `M_Q` for one face, with the data needed for exact membership.
#[derive(Debug, Clone)]
pub struct DifferenceSemigroup {
    face: usize,
    dim: usize,
    base: ExponentVector,
    generators: Vec<ExponentVector>,
    face_point: ExponentVector,
    face_generators: Vec<ExponentVector>,
    rays: Vec<usize>,
    grading: RationalVector,
    weights: Vec<i64>,
    support: Vec<usize>,
    steps: Vec<ExponentVector>,
    step_weights: Vec<i64>,
    directions: IntegerLattice,
    projected: IntegerLattice,
}

/// `M'_Q = shift + M_Q`.
#[derive(Debug, Clone, Copy)]
pub struct ShiftedCopy<'a> {
    pub shift: &'a [i64],
    pub parent: &'a DifferenceSemigroup,
}

impl ShiftedCopy<'_> {
    pub fn member(&self, p: &[i64], budget: u64) -> Membership {
        let q: Vec<i64> = p.iter().zip(self.shift).map(|(a, b)| a - b).collect();
        self.parent.member(&q, budget)
    }
}

fn unit(n: usize, i: usize) -> ExponentVector {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn sub(a: &[i64], b: &[i64]) -> ExponentVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn weigh(w: &[i64], v: &[i64]) -> i64 {
    w.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// Builds `M_Q` from the face points of `Γ ∩ Q` in `[0, box_bound]^n`.
///
/// The materialized generator list is `{e_i} ∪ {g - q}` over minimal
/// generators `g` and box face points `q`. The box must contain at least one
/// face point and one step along every recession direction of the face.
pub fn difference_semigroup(
    p: &NewtonPolyhedron,
    face: &Face,
    box_bound: i64,
) -> Result<DifferenceSemigroup, RootsError> {
    if face.in_coordinate_hyperplane {
        return Err(RootsError::CoordinateFace(face.id));
    }
    let n = p.dim();
    let face_points = face.points_in_box(box_bound);
    let Some(face_point) = face.generators.iter().find(|g| face_points.contains(g)).cloned() else {
        return Err(RootsError::EmptyFaceBox { face: face.id, bound: box_bound });
    };

    let mut generators: BTreeSet<ExponentVector> = (0..n).map(|i| unit(n, i)).collect();
    for g in p.ideal().generators() {
        for q in &face_points {
            generators.insert(sub(g, q));
        }
    }

    let differences: Vec<ExponentVector> = face_points.iter().map(|q| sub(q, &face_point)).collect();
    let directions = hermite_form(n, &differences).map_err(PolyhedronError::from)?;
    for &i in &face.rays {
        if !directions.contains(&unit(n, i)).map_err(PolyhedronError::from)? {
            return Err(RootsError::FaceBoxTooSmall { face: face.id, bound: box_bound });
        }
    }

    let grading = face.grading(p);
    let weights: Vec<i64> = clear_denominators(&grading)
        .iter()
        .map(|x| x.to_i64().expect("grading weight fits in i64"))
        .collect();
    let support: Vec<usize> = (0..n).filter(|&i| weights[i] != 0).collect();
    let projected = directions.project(&support);

    let mut semigroup = DifferenceSemigroup {
        face: face.id,
        dim: n,
        base: vec![1; n],
        generators: generators.into_iter().collect(),
        face_point,
        face_generators: face.generators.clone(),
        rays: face.rays.clone(),
        grading,
        weights,
        support,
        steps: Vec::new(),
        step_weights: Vec::new(),
        directions,
        projected,
    };

    let mut candidates: Vec<ExponentVector> = p
        .ideal()
        .generators()
        .iter()
        .filter(|g| !face.generators.contains(g))
        .map(|g| sub(g, &semigroup.face_point))
        .collect();
    candidates.sort_by_key(|s| (weigh(&semigroup.weights, s), s.clone()));
    let budget = u64::MAX;
    for s in candidates {
        let redundant = semigroup.below(&s, budget) == BoxSearch::Found
            || semigroup
                .steps
                .iter()
                .any(|h| semigroup.below(&sub(&s, h), budget) == BoxSearch::Found);
        if !redundant {
            semigroup.step_weights.push(weigh(&semigroup.weights, &s));
            semigroup.steps.push(s);
        }
    }
    Ok(semigroup)
}

impl DifferenceSemigroup {
    pub fn face(&self) -> usize {
        self.face
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The translation point `e = (1, ..., 1)`.
    pub fn base(&self) -> &[i64] {
        &self.base
    }

    /// The materialized generator list, sorted.
    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    /// The generator `q0` of the ideal on the face used as the default shift.
    pub fn face_point(&self) -> &[i64] {
        &self.face_point
    }

    /// `D_Q`, the lattice of differences of face points.
    pub fn directions(&self) -> &IntegerLattice {
        &self.directions
    }

    /// The grading `ℓ`: sum of the facet functionals through the face.
    pub fn grading(&self) -> &[crate::geometry::Rational] {
        &self.grading
    }

    /// Off-face steps `g - q0` that are not implied by the others.
    pub fn steps(&self) -> &[ExponentVector] {
        &self.steps
    }

    /// `M'_Q = v0 + M_Q` for a point `v0` of `Γ ∩ Q`.
    pub fn shifted<'a>(&'a self, v0: &'a [i64]) -> Result<ShiftedCopy<'a>, RootsError> {
        let on_face = v0.len() == self.dim
            && self.face_generators.iter().any(|g| {
                (0..self.dim).all(|i| v0[i] == g[i] || (v0[i] > g[i] && self.rays.contains(&i)))
            });
        if !on_face {
            return Err(RootsError::ShiftOffFace(v0.to_vec()));
        }
        Ok(ShiftedCopy { shift: v0, parent: self })
    }

    /// `M'_Q` with the default shift `q0`.
    pub fn default_shift(&self) -> ShiftedCopy<'_> {
        ShiftedCopy { shift: &self.face_point, parent: self }
    }

    /// Is `p ∈ M_Q`? The answer is exact unless the enumeration needs more
    /// than `budget` values along a lattice direction or more than
    /// `budget²` step combinations, in which case it is `Unknown`.
    pub fn member(&self, p: &[i64], budget: u64) -> Membership {
        debug_assert_eq!(p.len(), self.dim);
        let t = sub(p, &self.base);
        let total = weigh(&self.weights, &t);
        if total < 0 {
            return Membership::No;
        }
        let mut nodes = budget.saturating_mul(budget);
        let mut unknown = false;
        let found = self.search_steps(0, t, total, budget, &mut nodes, &mut unknown);
        if found {
            Membership::Yes
        } else if unknown {
            Membership::Unknown
        } else {
            Membership::No
        }
    }

    fn search_steps(
        &self,
        i: usize,
        r: ExponentVector,
        remaining: i64,
        budget: u64,
        nodes: &mut u64,
        unknown: &mut bool,
    ) -> bool {
        if i == self.steps.len() {
            if *nodes == 0 {
                *unknown = true;
                return false;
            }
            *nodes -= 1;
            return match self.below(&r, budget) {
                BoxSearch::Found => true,
                BoxSearch::Empty => false,
                BoxSearch::TooLarge => {
                    *unknown = true;
                    false
                }
            };
        }
        let w = self.step_weights[i];
        let mut r = r;
        let mut remaining = remaining;
        loop {
            if self.search_steps(i + 1, r.clone(), remaining, budget, nodes, unknown) {
                return true;
            }
            remaining -= w;
            if remaining < 0 {
                return false;
            }
            for (x, s) in r.iter_mut().zip(&self.steps[i]) {
                *x -= s;
            }
        }
    }

    /// Is `r ∈ N^n + D_Q`, that is, is there `d ∈ D_Q` with `d <= r`?
    fn below(&self, r: &[i64], budget: u64) -> BoxSearch {
        let rs: Vec<i64> = self.support.iter().map(|&i| r[i]).collect();
        if rs.iter().all(|&x| x >= 0) {
            return BoxSearch::Found;
        }
        let ws: Vec<i64> = self.support.iter().map(|&i| self.weights[i]).collect();
        let total: i64 = weigh(&ws, &rs);
        if total < 0 {
            return BoxSearch::Empty;
        }
        // x <= r and ℓ(x) = 0 force x_i >= -(ℓ(r) - ℓ_i r_i) / ℓ_i
        let mut lo = Vec::with_capacity(rs.len());
        for (k, (&x, &w)) in rs.iter().zip(&ws).enumerate() {
            let rest = total - w * x;
            let bound = Integer::div_ceil(&(-rest), &w);
            if bound > rs[k] {
                return BoxSearch::Empty;
            }
            lo.push(BigInt::from(bound));
        }
        let hi: Vec<BigInt> = rs.iter().map(|&x| BigInt::from(x)).collect();
        if self.projected.rank() == 0 {
            return BoxSearch::Empty;
        }
        self.projected.search_box(&lo, &hi, budget)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedron::{build_polyhedron, enumerate_faces, minimalize_generators};

    fn setup(gens: &[&[i64]]) -> (NewtonPolyhedron, Vec<Face>) {
        let raw: Vec<ExponentVector> = gens.iter().map(|g| g.to_vec()).collect();
        let p = build_polyhedron(&minimalize_generators(&raw).unwrap());
        let f = enumerate_faces(&p);
        (p, f)
    }

    fn diagonal(faces: &[Face]) -> &Face {
        faces.iter().find(|f| f.is_root_bearing() && f.vertices.len() == 2).unwrap()
    }

    #[test]
    fn diagonal_of_two_powers() {
        let (p, faces) = setup(&[&[2, 0], &[0, 3]]);
        let s = difference_semigroup(&p, diagonal(&faces), 12).unwrap();
        assert_eq!(s.member(&[1, 1], 100), Membership::Yes);
        assert_eq!(s.member(&[0, 0], 100), Membership::No);
        assert_eq!(s.member(&[-1, 4], 100), Membership::Yes);
        assert_eq!(s.member(&[-5, 10], 100), Membership::Yes);
        assert_eq!(s.member(&[0, 3], 100), Membership::No);
        assert_eq!(s.directions(), &hermite_form(2, &[vec![-2, 3]]).unwrap());
        assert!(s.steps().is_empty());
        for g in [vec![1, 0], vec![0, 1], vec![2, -3], vec![-2, 3]] {
            assert!(s.generators().contains(&g));
        }
    }

    #[test]
    fn general_two_generator_diagonal() {
        let (p, faces) = setup(&[&[1, 4], &[3, 1]]);
        let s = difference_semigroup(&p, diagonal(&faces), 20).unwrap();
        // M_L = (1,1) + N^2 + Z(a1 - a2, b1 - b2)
        for x in -8..8 {
            for y in -8..12 {
                let expected = (0..20).any(|k: i64| {
                    let (dx, dy) = (x - 1 + k * (1 - 3), y - 1 + k * (4 - 1));
                    let (ex, ey) = (x - 1 - k * (1 - 3), y - 1 - k * (4 - 1));
                    (dx >= 0 && dy >= 0) || (ex >= 0 && ey >= 0)
                });
                let got = s.member(&[x, y], 100);
                assert_eq!(got.is_yes(), expected, "point ({x}, {y})");
            }
        }
    }

    #[test]
    fn whole_polyhedron_is_everything() {
        let (p, faces) = setup(&[&[2, 0], &[0, 3]]);
        let s = difference_semigroup(&p, &faces[0], 12).unwrap();
        assert_eq!(s.member(&[-7, 3], 100), Membership::Yes);
        assert_eq!(s.member(&[0, 0], 100), Membership::Yes);
    }

    #[test]
    fn vertex_face_has_steps() {
        let (p, faces) = setup(&[&[1, 4], &[3, 1]]);
        let v = faces.iter().find(|f| f.dim == 0 && f.vertices == vec![vec![1, 4]]).unwrap();
        let s = difference_semigroup(&p, v, 20).unwrap();
        assert_eq!(s.steps(), &[vec![2, -3]]);
        assert_eq!(s.member(&[1, 1], 50), Membership::Yes);
        assert_eq!(s.member(&[3, -2], 50), Membership::Yes);
        assert_eq!(s.member(&[0, 5], 50), Membership::No);
    }

    #[test]
    fn coordinate_faces_and_small_boxes_are_rejected() {
        let (p, faces) = setup(&[&[2, 0], &[0, 3]]);
        let coord = faces.iter().find(|f| f.in_coordinate_hyperplane).unwrap();
        assert!(matches!(difference_semigroup(&p, coord, 12), Err(RootsError::CoordinateFace(_))));
        let (q, faces) = setup(&[&[1, 4], &[3, 1]]);
        let y = faces.iter().find(|f| f.rays == vec![1]).unwrap();
        assert!(matches!(
            difference_semigroup(&q, y, 4),
            Err(RootsError::FaceBoxTooSmall { .. })
        ));
        assert!(matches!(difference_semigroup(&q, y, 0), Err(RootsError::EmptyFaceBox { .. })));
    }

    #[test]
    fn shift_must_lie_on_face() {
        let (p, faces) = setup(&[&[1, 4], &[3, 1]]);
        let y = faces.iter().find(|f| f.rays == vec![1]).unwrap();
        let s = difference_semigroup(&p, y, 20).unwrap();
        assert!(s.shifted(&[1, 9]).is_ok());
        assert!(s.shifted(&[2, 9]).is_err());
    }

    #[test]
    fn membership_is_monotone_in_budget() {
        let (p, faces) = setup(&[&[5, 0], &[2, 2], &[0, 6]]);
        for f in faces.iter().filter(|f| f.is_root_bearing()) {
            let s = difference_semigroup(&p, f, 30).unwrap();
            for x in -6..8 {
                for y in -6..8 {
                    let small = s.member(&[x, y], 2);
                    let large = s.member(&[x, y], 200);
                    assert_ne!(large, Membership::Unknown);
                    if small != Membership::Unknown {
                        assert_eq!(small, large);
                    }
                }
            }
        }
    }
}
