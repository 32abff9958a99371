//! Brute-force dense enumeration of the semigroups `M_Q`, `M'_Q` and the
//! residues `R_Q` inside a box, independent of the semigroup algorithms in
//! [`crate::roots`]. It only relies on the exact linear algebra layer and on
//! the face lattice.

mod dense;
pub mod verify;

use std::collections::BTreeSet;

use serde::Serialize;

use self::dense::DenseSet;
use crate::error::OracleError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::geometry::linalg::{clear_denominators, nullspace};
use crate::geometry::{int, rat, solve_linear, ExponentVector, Rational, RationalVector};
use crate::polyhedron::{Face, MonomialIdeal};

/// Size of the enumeration box `[-radius, radius]^dim`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoxEnumeration {
    pub radius: i64,
    pub dim: usize,
}

/// Scale guards for the dense oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_dim: usize,
    pub max_exponent: i64,
    /// Skip the guards entirely.
    pub override_limits: bool,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self { max_dim: 4, max_exponent: 8, override_limits: false }
    }
}

impl OracleLimits {
    pub fn check(&self, ideal: &MonomialIdeal) -> Result<(), OracleError> {
        let exponent = ideal.max_exponent();
        if !self.override_limits && (ideal.dim() > self.max_dim || exponent > self.max_exponent) {
            return Err(OracleError::OutOfScale {
                dim: ideal.dim(),
                exponent,
                max_dim: self.max_dim,
                max_exponent: self.max_exponent,
            });
        }
        Ok(())
    }
}

/// Default radius `4 (max exponent) + 4`.
pub fn default_radius(ideal: &MonomialIdeal) -> i64 {
    4 * ideal.max_exponent() + 4
}

/// All points `base + N-combination of generators` reachable by steps that
/// stay inside `[-radius, radius]^n`.
pub fn oracle_semigroup_points(
    generators: &[ExponentVector],
    base: &[i64],
    radius: i64,
) -> BTreeSet<ExponentVector> {
    let mut set = DenseSet::new(base.len(), radius);
    if set.insert(base) {
        set.saturate(generators);
    }
    set.points()
}

/// Dense model of `M_Q` and `M'_Q` for one face, built from the raw
/// definition `e + N{u - v : u ∈ Γ, v ∈ Γ ∩ Q}` with `u, v` in `[0, G]^n`,
/// `G = max exponent + 1`.
pub struct OracleFace {
    pub enumeration: BoxEnumeration,
    /// Points of `Γ ∩ Q ∩ [0, G]^n`. Their affine span is the affine hull of
    /// the face, so the span `V_Q` and the functional are computed from the
    /// base point of the hull and its translates by the hull directions.
    pub face_points: Vec<ExponentVector>,
    /// A functional equal to one on the face points.
    pub functional: RationalVector,
    /// `functional = numerators / denominator` with integer numerators.
    numerators: Vec<i64>,
    denominator: i64,
    /// Integer rows cutting out `V_Q`.
    perp: Vec<Vec<i64>>,
    semigroup: DenseSet,
}

impl OracleFace {
    pub fn new(
        ideal: &MonomialIdeal,
        face: &Face,
        radius: i64,
        limits: &OracleLimits,
    ) -> Result<Self, OracleError> {
        limits.check(ideal)?;
        if face.in_coordinate_hyperplane {
            return Err(OracleError::CoordinateFace(face.id));
        }
        let n = ideal.dim();
        let g = ideal.max_exponent() + 1;
        if radius < 2 * g {
            return Err(OracleError::RadiusTooSmall { radius, needed: 2 * g });
        }
        let exponents: Vec<ExponentVector> = grid(n, g).into_iter().filter(|u| ideal.contains(u)).collect();
        let hull = &face.affine_hull;
        let equations: Vec<Vec<i64>> = nullspace(&hull.directions, n)
            .iter()
            .map(|normal| {
                let mut row = normal.clone();
                row.push(-normal.iter().zip(&hull.base).map(|(a, b)| a * b).sum::<Rational>());
                small(&clear_denominators(&row))
            })
            .collect();
        let face_points: Vec<ExponentVector> = exponents
            .iter()
            .filter(|u| equations.iter().all(|e| dot(&e[..n], u) + e[n] == 0))
            .cloned()
            .collect();
        let mut differences = DenseSet::new(n, g);
        let mut w = vec![0; n];
        for u in &exponents {
            for v in &face_points {
                for ((x, a), b) in w.iter_mut().zip(u).zip(v) {
                    *x = a - b;
                }
                differences.insert(&w);
            }
        }
        let generators: Vec<ExponentVector> = differences
            .points()
            .into_iter()
            .filter(|x| x.iter().any(|&c| c != 0))
            .filter(|x| {
                !(0..n).filter(|&i| x[i] > 0).any(|i| {
                    let mut y = x.clone();
                    y[i] -= 1;
                    y.iter().any(|&c| c != 0) && differences.contains(&y) && differences.contains(&unit(n, i))
                })
            })
            .collect();
        let mut semigroup = DenseSet::new(n, radius);
        semigroup.insert(&vec![1; n]);
        semigroup.saturate(&generators);

        let mut rows: Vec<RationalVector> = vec![hull.base.clone()];
        rows.extend(hull.directions.iter().map(|d| d.iter().zip(&hull.base).map(|(a, b)| a + b).collect()));
        let perp: Vec<Vec<i64>> = nullspace(&rows, n).iter().map(|r| small(&clear_denominators(r))).collect();
        let functional = if face.is_whole {
            vec![Rational::from_integer(0.into()); n]
        } else {
            let ones = vec![int(1); rows.len()];
            solve_linear(&rows, &ones)
                .ok()
                .flatten()
                .ok_or(OracleError::NoFunctional(face.id))?
                .particular
        };
        let denominator = functional
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let numerators = small(
            &functional.iter().map(|x| x.numer() * (&denominator / x.denom())).collect::<Vec<_>>(),
        );
        Ok(Self {
            enumeration: BoxEnumeration { radius, dim: n },
            face_points,
            functional,
            numerators,
            denominator: denominator.to_i64().expect("small denominator"),
            perp,
            semigroup,
        })
    }

    pub fn in_m(&self, u: &[i64]) -> bool {
        self.semigroup.contains(u)
    }

    /// `u ∈ v0 + M_Q` for some face point `v0` of the box.
    pub fn in_m_prime(&self, u: &[i64]) -> bool {
        let mut w = vec![0; u.len()];
        self.face_points.iter().any(|v| {
            for ((x, a), b) in w.iter_mut().zip(u).zip(v) {
                *x = a - b;
            }
            self.semigroup.contains(&w)
        })
    }

    /// `u ∈ V_Q`, the linear span of the face points.
    pub fn in_span(&self, u: &[i64]) -> bool {
        self.perp.iter().all(|row| dot(row, u) == 0)
    }

    /// `{-L(u)}` over `u ∈ (M \ M') ∩ V` in the inner box `[-radius/2, radius/2]^n`.
    pub fn residues(&self) -> BTreeSet<Rational> {
        let inner = self.enumeration.radius / 2;
        let n = self.enumeration.dim;
        let mut numerators = BTreeSet::new();
        let mut u = vec![-inner; n];
        loop {
            if self.in_m(&u) && self.in_span(&u) && !self.in_m_prime(&u) {
                numerators.insert(-dot(&self.numerators, &u));
            }
            let Some(i) = u.iter().position(|&x| x < inner) else {
                break;
            };
            u[i] += 1;
            u[..i].fill(-inner);
        }
        numerators.into_iter().map(|k| rat(k, self.denominator)).collect()
    }
}

fn unit(n: usize, i: usize) -> ExponentVector {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn grid(n: usize, g: i64) -> Vec<ExponentVector> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (0..=g).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn small(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("small integer row")).collect()
}

/// `R_Q` by dense enumeration in `[-radius, radius]^n`.
pub fn oracle_residues(
    ideal: &MonomialIdeal,
    face: &Face,
    radius: i64,
    limits: &OracleLimits,
) -> Result<BTreeSet<Rational>, OracleError> {
    if face.is_whole {
        limits.check(ideal)?;
        return Ok(BTreeSet::new());
    }
    Ok(OracleFace::new(ideal, face, radius, limits)?.residues())
}

/// Oracle residues at `radius` and `radius + 4`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResidues {
    #[serde(serialize_with = "crate::geometry::serde_rational::descending")]
    pub values: BTreeSet<Rational>,
    pub radius: i64,
    pub stable: bool,
}

pub fn oracle_residues_checked(
    ideal: &MonomialIdeal,
    face: &Face,
    radius: i64,
    limits: &OracleLimits,
) -> Result<OracleResidues, OracleError> {
    let first = oracle_residues(ideal, face, radius, limits)?;
    let second = oracle_residues(ideal, face, radius + 4, limits)?;
    Ok(OracleResidues { stable: first == second, values: first, radius })
}

/// The criterion `Z ∩ [(t - b1)/(b2 - b1), (s - a1)/(a2 - a1)] = ∅` for the
/// class of `(s + 1, t + 1)` modulo `Z(a1 - a2, b1 - b2)` to lie in
/// `M_L \ M'_L` for the ideal `(x^a1 y^b1, x^a2 y^b2)`, `a1 < a2`, `b1 > b2`.
pub fn oracle_two_generator_region(a1: i64, b1: i64, a2: i64, b2: i64, point: (i64, i64)) -> bool {
    let (s, t) = point;
    let lo = Rational::new((t - b1).into(), (b2 - b1).into());
    let hi = Rational::new((s - a1).into(), (a2 - a1).into());
    lo.ceil() > hi
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedron::{build_polyhedron, enumerate_faces, minimalize_generators};

    fn ideal(gens: &[&[i64]]) -> MonomialIdeal {
        let raw: Vec<Vec<i64>> = gens.iter().map(|g| g.to_vec()).collect();
        minimalize_generators(&raw).unwrap()
    }

    #[test]
    fn orthant_shift() {
        let pts = oracle_semigroup_points(&[vec![1, 0], vec![0, 1]], &[1, 1], 3);
        let expected: BTreeSet<ExponentVector> =
            (1..=3).flat_map(|x| (1..=3).map(move |y| vec![x, y])).collect();
        assert_eq!(pts, expected);
    }

    #[test]
    fn empty_generators() {
        let pts = oracle_semigroup_points(&[], &[1, 1], 3);
        assert_eq!(pts.into_iter().collect::<Vec<_>>(), vec![vec![1, 1]]);
    }

    #[test]
    fn diagonal_lattice_points() {
        let pts = oracle_semigroup_points(&[vec![1, 0], vec![0, 1], vec![-2, 3], vec![2, -3]], &[1, 1], 6);
        for x in -6i64..=6 {
            for y in -6i64..=6 {
                // (x, y) ∈ (1,1) + N^2 + Z(-2,3) iff some shift lands in the orthant
                let member = (-10i64..=10).any(|k| x - 1 + 2 * k >= 0 && y - 1 - 3 * k >= 0);
                if !member {
                    assert!(!pts.contains(&vec![x, y]));
                }
            }
        }
        assert!(pts.contains(&vec![-1, 4]));
        assert!(!pts.contains(&vec![0, 0]));
    }

    #[test]
    fn monotone_in_radius() {
        let gens = vec![vec![1, 0], vec![0, 1], vec![-3, 2], vec![4, -3]];
        let small = oracle_semigroup_points(&gens, &[1, 1], 5);
        let large = oracle_semigroup_points(&gens, &[1, 1], 9);
        assert!(small.is_subset(&large));
    }

    fn bearing(i: &MonomialIdeal) -> Vec<Face> {
        enumerate_faces(&build_polyhedron(i)).into_iter().filter(|f| f.is_root_bearing()).collect()
    }

    #[test]
    fn two_powers() {
        let i = ideal(&[&[2, 0], &[0, 3]]);
        let faces = bearing(&i);
        let r = oracle_residues(&i, &faces[0], 12, &OracleLimits::default()).unwrap();
        let expected: BTreeSet<Rational> =
            [(-5, 6), (-7, 6), (-4, 3), (-3, 2), (-5, 3), (-2, 1)].iter().map(|&(n, d)| rat(n, d)).collect();
        assert_eq!(r, expected);
    }

    #[test]
    fn counterexample_factor() {
        let i = ideal(&[&[2, 0], &[0, 7]]);
        let faces = bearing(&i);
        let r = oracle_residues(&i, &faces[0], 20, &OracleLimits::default()).unwrap();
        assert_eq!(r.len(), 14);
        for a in 1..=7 {
            for b in 1..=2 {
                assert!(r.contains(&rat(-(2 * a + 7 * b), 14)));
            }
        }
    }

    #[test]
    fn vertices_add_nothing_new() {
        let i = ideal(&[&[2, 5], &[4, 1]]);
        let faces = bearing(&i);
        let limits = OracleLimits::default();
        let all: BTreeSet<Rational> = faces
            .iter()
            .filter(|f| f.dim == 1)
            .flat_map(|f| oracle_residues(&i, f, 24, &limits).unwrap())
            .collect();
        for v in faces.iter().filter(|f| f.dim == 0) {
            assert!(oracle_residues(&i, v, 24, &limits).unwrap().is_subset(&all));
        }
    }

    #[test]
    fn guards() {
        let i = ideal(&[&[9, 0], &[0, 3]]);
        let face = &bearing(&i)[0];
        assert!(matches!(
            oracle_residues(&i, face, 40, &OracleLimits::default()),
            Err(OracleError::OutOfScale { .. })
        ));
        let lifted = OracleLimits { override_limits: true, ..OracleLimits::default() };
        assert_eq!(oracle_residues(&i, face, 40, &lifted).unwrap().len(), 15);
        assert!(matches!(
            oracle_residues(&i, face, 3, &lifted),
            Err(OracleError::RadiusTooSmall { .. })
        ));
    }

    #[test]
    fn region_examples() {
        assert!(oracle_two_generator_region(0, 3, 2, 0, (0, 0)));
        assert!(!oracle_two_generator_region(0, 3, 2, 0, (2, 3)));
        // equal endpoints at an integer
        assert!(!oracle_two_generator_region(0, 3, 2, 0, (2, 0)));
    }

    #[test]
    fn region_matches_dense_membership() {
        for &(a1, b1, a2, b2) in &[(0, 3, 2, 0), (1, 4, 3, 1), (2, 5, 5, 2)] {
            let i = ideal(&[&[a1, b1], &[a2, b2]]);
            let diag = bearing(&i).into_iter().find(|f| f.dim == 1 && f.vertices.len() == 2).unwrap();
            let o = OracleFace::new(&i, &diag, 4 * i.max_exponent() + 4, &OracleLimits::default()).unwrap();
            for s in 0..6 {
                for t in 0..6 {
                    let u = [s + 1, t + 1];
                    let dense = o.in_m(&u) && !o.in_m_prime(&u);
                    assert_eq!(
                        oracle_two_generator_region(a1, b1, a2, b2, (s, t)),
                        dense,
                        "({a1},{b1},{a2},{b2}) at ({s},{t})"
                    );
                }
            }
        }
    }
}
