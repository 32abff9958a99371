//! Face-by-face comparison of [`crate::roots::residue_set`] against the dense
//! oracle over a catalog of two-variable ideals.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::{default_radius, oracle_residues_checked, OracleLimits};
use crate::geometry::{serde_rational, ExponentVector, Rational};
use crate::polyhedron::{build_polyhedron, enumerate_faces, MonomialIdeal};
use crate::roots::{residue_set, RootOptions};

/// Every proper monomial ideal in two variables whose minimal generators
/// have all exponents at most `max_exponent`, excluding the unit ideal.
///
/// A minimal generating set in two variables is a staircase: listed by
/// increasing `x`, the `y` exponents strictly decrease. The catalog is
/// therefore the set of nonempty strictly monotone chains in
/// `[0, max_exponent]^2` other than `{(0, 0)}`.
pub fn catalog_two_variable(max_exponent: i64) -> Vec<MonomialIdeal> {
    let mut out = Vec::new();
    let mut chain: Vec<ExponentVector> = Vec::new();
    extend_chains(max_exponent, 0, max_exponent, &mut chain, &mut out);
    out
}

fn extend_chains(
    max: i64,
    next_x: i64,
    max_y: i64,
    chain: &mut Vec<ExponentVector>,
    out: &mut Vec<MonomialIdeal>,
) {
    for x in next_x..=max {
        for y in 0..=max_y {
            chain.push(vec![x, y]);
            let ideal = MonomialIdeal::new(2, chain.clone()).expect("staircase generators are valid");
            if ideal.is_proper() {
                out.push(ideal);
            }
            if y > 0 {
                extend_chains(max, x + 1, y - 1, chain, out);
            }
            chain.pop();
        }
    }
}

/// Outcome for one root-bearing face.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceVerdict {
    pub face: usize,
    pub vertices: Vec<ExponentVector>,
    #[serde(serialize_with = "serde_rational::descending")]
    pub smart: BTreeSet<Rational>,
    #[serde(serialize_with = "serde_rational::descending")]
    pub oracle: BTreeSet<Rational>,
    /// Stabilization certificate of the smart computation.
    pub certificate: Option<i64>,
    /// Whether the oracle gave the same values at radius and radius + 4.
    pub oracle_stable: bool,
    pub error: Option<String>,
    pub pass: bool,
}

/// Outcome for one ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealVerdict {
    pub generators: Vec<ExponentVector>,
    pub radius: i64,
    pub faces: Vec<FaceVerdict>,
    pub pass: bool,
}

/// Compares the smart residues with the oracle on every root-bearing face.
pub fn verify_ideal(ideal: &MonomialIdeal, options: &RootOptions, limits: &OracleLimits) -> IdealVerdict {
    let p = build_polyhedron(ideal);
    let n = ideal.dim();
    let cap = options.cap_for(n);
    let box_bound = options.box_for(ideal.max_exponent(), n);
    let radius = default_radius(ideal);
    let faces: Vec<FaceVerdict> = enumerate_faces(&p)
        .iter()
        .filter(|f| f.is_root_bearing())
        .map(|f| {
            let smart = residue_set(&p, f, &cap, box_bound);
            let oracle = oracle_residues_checked(ideal, f, radius, limits);
            let mut verdict = FaceVerdict {
                face: f.id,
                vertices: f.vertices.clone(),
                smart: BTreeSet::new(),
                oracle: BTreeSet::new(),
                certificate: None,
                oracle_stable: false,
                error: None,
                pass: false,
            };
            match (smart, oracle) {
                (Ok(s), Ok(o)) => {
                    verdict.pass = o.stable && s.values == o.values;
                    verdict.smart = s.values;
                    verdict.certificate = Some(s.certificate);
                    verdict.oracle = o.values;
                    verdict.oracle_stable = o.stable;
                }
                (Err(e), _) => verdict.error = Some(e.to_string()),
                (_, Err(e)) => verdict.error = Some(e.to_string()),
            }
            verdict
        })
        .collect();
    let pass = faces.iter().all(|f| f.pass);
    IdealVerdict { generators: ideal.generators().to_vec(), radius, faces, pass }
}

/// Summary of a catalog run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogReport {
    pub ideals: usize,
    pub faces: usize,
    pub passed: usize,
    pub failures: Vec<IdealVerdict>,
}

impl CatalogReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty() && self.passed == self.ideals
    }
}

/// Runs [`verify_ideal`] over the ideals in parallel and keeps the failures.
pub fn verify_catalog(ideals: &[MonomialIdeal], options: &RootOptions, limits: &OracleLimits) -> CatalogReport {
    let verdicts: Vec<IdealVerdict> = ideals.par_iter().map(|i| verify_ideal(i, options, limits)).collect();
    let faces = verdicts.iter().map(|v| v.faces.len()).sum();
    let passed = verdicts.iter().filter(|v| v.pass).count();
    let failures = verdicts.into_iter().filter(|v| !v.pass).collect();
    CatalogReport { ideals: ideals.len(), faces, passed, failures }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_sizes() {
        // antichains of [0, k]^2 are counted by binomial(2k + 2, k + 1)
        assert_eq!(catalog_two_variable(1).len(), 6 - 2);
        assert_eq!(catalog_two_variable(2).len(), 20 - 2);
        let c = catalog_two_variable(3);
        assert_eq!(c.len(), 70 - 2);
        let distinct: BTreeSet<Vec<ExponentVector>> = c.iter().map(|i| i.generators().to_vec()).collect();
        assert_eq!(distinct.len(), c.len());
    }

    #[test]
    fn small_catalog_agrees() {
        let report = verify_catalog(&catalog_two_variable(3), &RootOptions::default(), &OracleLimits::default());
        assert!(report.pass(), "{:?}", report.failures);
    }
}
