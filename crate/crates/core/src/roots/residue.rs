//! Residue sets `R_Q = {-L_Q(u) : u ∈ (M_Q \ M'_Q) ∩ V_Q}` and the root set
//! `W_a` as their union over the faces outside the coordinate hyperplanes.
//!
//! `L_Q` takes values in `g·Z` on `V_Q ∩ Z^n` for a positive rational `g`.
//! Fix `w` with `L_Q(w) = g` and let `K` be the kernel of `L_Q` on
//! `V_Q ∩ Z^n`. Both `M_Q` and `M'_Q` are invariant under `D_Q ⊆ K`, which
//! has finite index in `K`, so the points with `L_Q = k·g` are covered by
//! `k·w + κ` for `κ` running over coset representatives of `K / D_Q`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::semigroup::{difference_semigroup, Membership};
use crate::error::RootsError;
use crate::geometry::linalg::{clear_denominators, integer_kernel, nullspace};
use crate::geometry::{frac, int, serde_rational, rational_gcd, IntegerLattice, Rational, RationalVector};
use crate::polyhedron::{build_polyhedron, enumerate_faces, facet_m, Face, MonomialIdeal, NewtonPolyhedron};

/// Doublings of the search budget tried before giving up on stabilization.
const MAX_DOUBLINGS: u32 = 6;

/// `R_Q` for one face, with its stabilization certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueSet {
    pub face: usize,
    /// Negative rationals `-L_Q(u)` with `0 < L_Q(u) <= cap`.
    #[serde(serialize_with = "serde_rational::descending")]
    pub values: BTreeSet<Rational>,
    /// Smallest box at which the run and the run at twice the box agreed
    /// and neither hit its search budget.
    pub certificate: i64,
    /// Whether a value equal to `-cap` was found; a larger cap may reveal more.
    pub cap_hit: bool,
}

/// Root set `W` of a monomial ideal with per-face provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootSet {
    #[serde(serialize_with = "serde_rational::descending")]
    pub values: BTreeSet<Rational>,
    pub faces: Vec<ResidueSet>,
    #[serde(serialize_with = "serde_rational::single")]
    pub cap: Rational,
}

impl RootSet {
    pub fn from_faces(faces: Vec<ResidueSet>, cap: Rational) -> RootSet {
        let values = faces.iter().flat_map(|r| r.values.iter().cloned()).collect();
        RootSet { values, faces, cap }
    }

    pub fn cap_hit(&self) -> bool {
        self.faces.iter().any(|f| f.cap_hit)
    }

    /// Roots sorted from closest to zero to most negative.
    pub fn descending(&self) -> Vec<Rational> {
        self.values.iter().rev().cloned().collect()
    }
}

/// The classes in `Q/Z` realized by roots: a union of cyclic subgroups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModZClasses {
    /// `1/m_Q` mod `Z` for each facet outside the coordinate hyperplanes.
    #[serde(serialize_with = "serde_rational::ascending")]
    pub generators: BTreeSet<Rational>,
    /// Every class in `[0, 1)` of the union of the subgroups `<1/m_Q>`.
    #[serde(serialize_with = "serde_rational::ascending")]
    pub classes: BTreeSet<Rational>,
}

/// Computation parameters shared by the root functions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RootOptions {
    /// Largest `L_Q` value enumerated; defaults to the ambient dimension.
    pub cap: Option<Rational>,
    /// Starting box and search budget; defaults to `4 (max exponent + n)`.
    pub box_bound: Option<i64>,
}

impl RootOptions {
    pub fn cap_for(&self, n: usize) -> Rational {
        self.cap.clone().unwrap_or_else(|| int(n as i64))
    }

    pub fn box_for(&self, max_exponent: i64, n: usize) -> i64 {
        self.box_bound.unwrap_or(4 * (max_exponent + n as i64))
    }
}

/// One residue enumeration: a lattice-point problem in `V ∩ Z^n`.
pub(crate) struct ResidueProblem<'a> {
    pub face: usize,
    pub dim: usize,
    /// Spanning set of `V`.
    pub span: Vec<RationalVector>,
    pub functional: RationalVector,
    pub directions: IntegerLattice,
    pub in_m: Box<dyn Fn(&[i64], u64) -> Membership + 'a>,
    pub in_m_prime: Box<dyn Fn(&[i64], u64) -> Membership + 'a>,
}

pub(crate) struct Enumeration {
    pub values: BTreeSet<Rational>,
    pub unknown: bool,
    pub cap_hit: bool,
}

fn to_i64(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("lattice point fits in i64")).collect()
}

pub(crate) fn enumerate(problem: &ResidueProblem, cap: &Rational, budget: u64) -> Result<Enumeration, RootsError> {
    let n = problem.dim;
    let perp: Vec<Vec<BigInt>> = nullspace(&problem.span, n).iter().map(|v| clear_denominators(v)).collect();
    let lattice_v = integer_kernel(&perp, n);
    let values_on_basis: Vec<Rational> = lattice_v
        .iter()
        .map(|b| {
            problem
                .functional
                .iter()
                .zip(b)
                .fold(Rational::zero(), |acc, (l, x)| acc + l * Rational::from_integer(x.clone()))
        })
        .collect();
    let (step, coeffs) = rational_gcd(&values_on_basis).ok_or(RootsError::DegenerateFace(problem.face))?;
    let mut w = vec![BigInt::zero(); n];
    for (c, b) in coeffs.iter().zip(&lattice_v) {
        for (x, y) in w.iter_mut().zip(b) {
            *x += c * y;
        }
    }
    let mut kernel_rows = perp.clone();
    kernel_rows.push(clear_denominators(&problem.functional));
    let kernel = IntegerLattice::from_big(n, &integer_kernel(&kernel_rows, n));
    let reps = kernel
        .coset_representatives(&problem.directions)
        .ok_or(RootsError::DegenerateFace(problem.face))?;

    let kmax = (cap / &step).floor().to_integer().to_i64().unwrap_or(0);
    let w = to_i64(&w);
    let reps: Vec<Vec<i64>> = reps.iter().map(|r| to_i64(r)).collect();
    let mut out = Enumeration { values: BTreeSet::new(), unknown: false, cap_hit: false };
    for k in 1..=kmax {
        let value = &step * int(k);
        for rep in &reps {
            let u: Vec<i64> = w.iter().zip(rep).map(|(a, b)| k * a + b).collect();
            match (problem.in_m)(&u, budget) {
                Membership::No => continue,
                Membership::Unknown => {
                    out.unknown = true;
                    continue;
                }
                Membership::Yes => {}
            }
            match (problem.in_m_prime)(&u, budget) {
                Membership::Yes => {}
                Membership::Unknown => out.unknown = true,
                Membership::No => {
                    if &value == cap {
                        out.cap_hit = true;
                    }
                    out.values.insert(-value.clone());
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// Runs `run` at `box_bound`, `2 box_bound`, ... until two successive runs
/// agree without hitting the search budget.
pub(crate) fn stabilize(
    face: usize,
    box_bound: i64,
    run: impl Fn(i64) -> Result<Enumeration, RootsError>,
) -> Result<ResidueSet, RootsError> {
    let mut b = box_bound.max(1);
    let mut previous = run(b)?;
    for _ in 0..MAX_DOUBLINGS {
        let next = run(2 * b)?;
        if !previous.unknown && !next.unknown && previous.values == next.values {
            return Ok(ResidueSet {
                face,
                values: previous.values,
                certificate: b,
                cap_hit: previous.cap_hit,
            });
        }
        previous = next;
        b *= 2;
    }
    Err(RootsError::NotStabilized { face, budget: b })
}

fn check_cap(cap: &Rational) -> Result<(), RootsError> {
    if cap.is_positive() {
        Ok(())
    } else {
        Err(RootsError::NonPositiveCap(cap.clone()))
    }
}

/// `R_Q = {-L_Q(u) : u ∈ (M_Q \ M'_Q) ∩ V_Q, 0 < L_Q(u) <= cap}`.
pub fn residue_set(p: &NewtonPolyhedron, face: &Face, cap: &Rational, box_bound: i64) -> Result<ResidueSet, RootsError> {
    check_cap(cap)?;
    if face.in_coordinate_hyperplane {
        return Err(RootsError::CoordinateFace(face.id));
    }
    if face.is_whole {
        return Ok(ResidueSet { face: face.id, values: BTreeSet::new(), certificate: box_bound, cap_hit: false });
    }
    let functional = face.functional.clone().ok_or(RootsError::DegenerateFace(face.id))?;
    let box_bound = box_bound.max(p.ideal().max_exponent() + 1);
    stabilize(face.id, box_bound, |b| {
        let s = difference_semigroup(p, face, b)?;
        let shift = s.default_shift();
        let problem = ResidueProblem {
            face: face.id,
            dim: p.dim(),
            span: face.linear_span.clone(),
            functional: functional.clone(),
            directions: s.directions().clone(),
            in_m: Box::new(|u, budget| s.member(u, budget)),
            in_m_prime: Box::new(move |u, budget| shift.member(u, budget)),
        };
        enumerate(&problem, cap, b as u64)
    })
}

/// `R_Q` for every face outside the coordinate hyperplanes, in face order.
/// Faces are processed in parallel; the output does not depend on scheduling.
pub fn face_residues(
    p: &NewtonPolyhedron,
    faces: &[Face],
    options: &RootOptions,
) -> Vec<(usize, Result<ResidueSet, RootsError>)> {
    let cap = options.cap_for(p.dim());
    let box_bound = options.box_for(p.ideal().max_exponent(), p.dim());
    faces
        .par_iter()
        .filter(|f| f.is_root_bearing())
        .map(|f| (f.id, residue_set(p, f, &cap, box_bound)))
        .collect()
}

/// `W_a`: the union of `R_Q` over all faces outside the coordinate hyperplanes.
pub fn roots(ideal: &MonomialIdeal, options: &RootOptions) -> Result<RootSet, RootsError> {
    if !ideal.is_proper() {
        return Err(RootsError::ImproperIdeal);
    }
    let cap = options.cap_for(ideal.dim());
    check_cap(&cap)?;
    let p = build_polyhedron(ideal);
    let faces = enumerate_faces(&p);
    let residues = face_residues(&p, &faces, options)
        .into_iter()
        .map(|(_, r)| r)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RootSet::from_faces(residues, cap))
}

/// Classes mod `Z` predicted by the facets: `⋃ <1/m_Q>` over facets not in
/// a coordinate hyperplane.
pub fn mod_z_classes(p: &NewtonPolyhedron) -> ModZClasses {
    let mut generators = BTreeSet::new();
    let mut classes = BTreeSet::new();
    for f in p.facets().iter().filter(|f| !f.is_coordinate) {
        let m = facet_m(f).expect("non-coordinate facet has an m-value") as i64;
        generators.insert(frac(&Rational::new(BigInt::one(), BigInt::from(m))));
        for k in 0..m {
            classes.insert(Rational::new(BigInt::from(k), BigInt::from(m)));
        }
    }
    ModZClasses { generators, classes }
}

pub fn roots_mod_z(ideal: &MonomialIdeal) -> Result<ModZClasses, RootsError> {
    if !ideal.is_proper() {
        return Err(RootsError::ImproperIdeal);
    }
    Ok(mod_z_classes(&build_polyhedron(ideal)))
}

/// Fractional parts of a set of rationals.
pub fn classes_of<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BTreeSet<Rational> {
    values.into_iter().map(frac).collect()
}
