//! Residues of product faces `Q1 × Q2` of `P_a × P_b` from the factor data.
//!
//! `M_{Q1×Q2} = M_{Q1} × M_{Q2}` and `M'_{Q1×Q2} = M'_{Q1} × M'_{Q2}`, so
//! `M \ M' = [(M_{Q1} \ M'_{Q1}) × M_{Q2}] ∪ [M_{Q1} × (M_{Q2} \ M'_{Q2})]`.
//! The span of `Q1 × Q2` is `dir(Q1) ⊕ dir(Q2) + R(q1, q2)` and every member
//! of the pencil `t L_{Q1} ⊕ (1 - t) L_{Q2}` is identically one on the face.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::residue::{enumerate, stabilize, ResidueProblem, ResidueSet, RootOptions, RootSet};
use super::semigroup::{difference_semigroup, DifferenceSemigroup};
use crate::error::RootsError;
use crate::geometry::{rat, IntegerLattice, Rational, RationalVector};
use crate::polyhedron::{build_polyhedron, product_polyhedron, Face, MonomialIdeal, NewtonPolyhedron, ProductPolyhedron};

/// The data of one factor face used by the product computation.
#[derive(Debug, Clone)]
pub struct FaceContext<'a> {
    pub face: &'a Face,
    pub semigroup: DifferenceSemigroup,
    /// `L_Q`, or zero for the whole polyhedron.
    pub functional: RationalVector,
}

impl<'a> FaceContext<'a> {
    pub fn new(p: &NewtonPolyhedron, face: &'a Face, box_bound: i64) -> Result<Self, RootsError> {
        let semigroup = difference_semigroup(p, face, box_bound)?;
        let functional = if face.is_whole {
            vec![Rational::zero(); p.dim()]
        } else {
            face.functional.clone().ok_or(RootsError::DegenerateFace(face.id))?
        };
        Ok(Self { face, semigroup, functional })
    }
}

fn pad(v: &[Rational], before: usize, after: usize) -> RationalVector {
    let mut out = vec![Rational::zero(); before];
    out.extend_from_slice(v);
    out.extend(std::iter::repeat_with(Rational::zero).take(after));
    out
}

/// `R_{Q1×Q2}` computed from the two factor semigroups with the functional
/// `t L_{Q1} ⊕ (1 - t) L_{Q2}`. When one factor is a whole polyhedron its
/// functional vanishes and the other factor gets weight one.
#[allow(clippy::too_many_arguments)]
pub fn product_face_residues(
    face_id: usize,
    left: (&NewtonPolyhedron, &Face),
    right: (&NewtonPolyhedron, &Face),
    cap: &Rational,
    t: &Rational,
    box_bound: i64,
) -> Result<ResidueSet, RootsError> {
    let (pa, q1) = left;
    let (pb, q2) = right;
    if q1.in_coordinate_hyperplane || q2.in_coordinate_hyperplane {
        return Err(RootsError::CoordinateFace(face_id));
    }
    if q1.is_whole && q2.is_whole {
        return Ok(ResidueSet { face: face_id, values: BTreeSet::new(), certificate: box_bound, cap_hit: false });
    }
    let (n, m) = (pa.dim(), pb.dim());
    let (s, u) = if q2.is_whole {
        (Rational::one(), Rational::zero())
    } else if q1.is_whole {
        (Rational::zero(), Rational::one())
    } else {
        (t.clone(), Rational::one() - t)
    };

    let mut span: Vec<RationalVector> = Vec::new();
    span.extend(q1.affine_hull.directions.iter().map(|d| pad(d, 0, m)));
    span.extend(q2.affine_hull.directions.iter().map(|d| pad(d, n, 0)));
    let mut joint = q1.affine_hull.base.clone();
    joint.extend_from_slice(&q2.affine_hull.base);
    span.push(joint);

    let box_bound = box_bound.max(pa.ideal().max_exponent().max(pb.ideal().max_exponent()) + 1);
    stabilize(face_id, box_bound, |b| {
        let c1 = FaceContext::new(pa, q1, b)?;
        let c2 = FaceContext::new(pb, q2, b)?;
        let mut functional: RationalVector = c1.functional.iter().map(|x| x * &s).collect();
        functional.extend(c2.functional.iter().map(|x| x * &u));
        let mut directions = Vec::new();
        directions.extend(c1.semigroup.directions().basis().iter().map(|d| {
            let mut v = d.clone();
            v.resize(n + m, 0.into());
            v
        }));
        directions.extend(c2.semigroup.directions().basis().iter().map(|d| {
            let mut v = vec![0.into(); n];
            v.extend_from_slice(d);
            v
        }));
        let (m1, m2) = (&c1.semigroup, &c2.semigroup);
        let (s1, s2) = (m1.default_shift(), m2.default_shift());
        let problem = ResidueProblem {
            face: face_id,
            dim: n + m,
            span: span.clone(),
            functional,
            directions: IntegerLattice::from_big(n + m, &directions),
            in_m: Box::new(move |p, budget| m1.member(&p[..n], budget).and(m2.member(&p[n..], budget))),
            in_m_prime: Box::new(move |p, budget| s1.member(&p[..n], budget).and(s2.member(&p[n..], budget))),
        };
        enumerate(&problem, cap, b as u64)
    })
}

/// `W_ab` for ideals in disjoint variables, computed face by face over the
/// factorization `Q1 × Q2` of the faces of `P_a × P_b`.
#[derive(Debug, Clone)]
pub struct ProductRoots {
    pub product: ProductPolyhedron,
    pub roots: RootSet,
}

/// Computes `W_ab` through product faces, with the pencil parameter `t = 1/2`.
pub fn roots_of_product(a: &MonomialIdeal, b: &MonomialIdeal, options: &RootOptions) -> Result<ProductRoots, RootsError> {
    roots_of_product_with(a, b, options, &rat(1, 2))
}

/// [`roots_of_product`] with an explicit pencil parameter `t`.
pub fn roots_of_product_with(
    a: &MonomialIdeal,
    b: &MonomialIdeal,
    options: &RootOptions,
    t: &Rational,
) -> Result<ProductRoots, RootsError> {
    if !a.is_proper() || !b.is_proper() {
        return Err(RootsError::ImproperIdeal);
    }
    let (pa, pb) = (build_polyhedron(a), build_polyhedron(b));
    let product = product_polyhedron(&pa, &pb);
    let n = a.dim() + b.dim();
    let cap = options.cap_for(n);
    let box_bound = options.box_for(a.max_exponent().max(b.max_exponent()), n);
    let faces: Vec<ResidueSet> = product
        .faces
        .par_iter()
        .filter(|f| f.is_root_bearing())
        .map(|f| {
            let (i, j) = product.factors_of(f.id);
            product_face_residues(
                f.id,
                (&pa, &product.left_faces[i]),
                (&pb, &product.right_faces[j]),
                &cap,
                t,
                box_bound,
            )
        })
        .collect::<Result<_, _>>()?;
    Ok(ProductRoots { product, roots: RootSet::from_faces(faces, cap) })
}
