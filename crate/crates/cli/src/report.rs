//! Result payloads of the subcommands and their table rendering.

use std::collections::BTreeSet;
use std::fmt::Write;

use bsroots::bpoly::BPoly;
use bsroots::error::RootsError;
use bsroots::geometry::{serde_rational, Rational};
use bsroots::oracle::verify::{catalog_two_variable, verify_catalog, verify_ideal, IdealVerdict};
use bsroots::oracle::OracleLimits;
use bsroots::polyhedron::{build_polyhedron, enumerate_faces, facet_m, Face, NewtonPolyhedron};
use bsroots::roots::{classes_of, face_residues, mod_z_classes, roots, roots_mod_z, roots_of_product, RootOptions};
use serde::Serialize;

use crate::{CliError, IdealJson, IdealSpec};

/// Human-readable rendering for `--table`.
pub trait Table {
    fn table(&self) -> String;
}

fn strings<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Vec<String> {
    values.into_iter().map(|r| r.to_string()).collect()
}

fn descending(values: &BTreeSet<Rational>) -> Vec<String> {
    strings(values.iter().rev())
}

fn braces(values: &[String]) -> String {
    format!("{{{}}}", values.join(", "))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceRoots {
    pub face: usize,
    pub dim: usize,
    pub vertices: Vec<Vec<i64>>,
    pub rays: Vec<usize>,
    pub roots: Vec<String>,
    pub certificate: i64,
    pub cap_hit: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceFailure {
    pub face: usize,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootsResult {
    pub ideal: IdealJson,
    pub terms: Vec<String>,
    pub roots: Vec<String>,
    #[serde(serialize_with = "serde_rational::single")]
    pub cap: Rational,
    pub cap_hit: bool,
    /// False when some face did not stabilize; `roots` is then partial.
    pub complete: bool,
    pub faces: Vec<FaceRoots>,
    pub failures: Vec<FaceFailure>,
}

pub fn roots_report(spec: &IdealSpec, options: &RootOptions) -> Result<RootsResult, CliError> {
    let p = build_polyhedron(&spec.ideal);
    let faces = enumerate_faces(&p);
    let cap = options.cap_for(spec.dim());
    let mut all = BTreeSet::new();
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (id, result) in face_residues(&p, &faces, options) {
        match result {
            Ok(r) => {
                all.extend(r.values.iter().cloned());
                let f = &faces[id];
                rows.push(FaceRoots {
                    face: id,
                    dim: f.dim,
                    vertices: f.vertices.clone(),
                    rays: f.rays.clone(),
                    roots: descending(&r.values),
                    certificate: r.certificate,
                    cap_hit: r.cap_hit,
                });
            }
            Err(e @ RootsError::NotStabilized { .. }) => failures.push(FaceFailure { face: id, error: e.to_string() }),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(RootsResult {
        ideal: spec.to_json(),
        terms: spec.terms(),
        roots: descending(&all),
        cap,
        cap_hit: rows.iter().any(|r| r.cap_hit),
        complete: failures.is_empty(),
        faces: rows,
        failures,
    })
}


impl Table for RootsResult {
    fn table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "ideal: ({})", self.terms.join(", ")).unwrap();
        writeln!(out, "roots: {}", braces(&self.roots)).unwrap();
        writeln!(out, "cap: {}  cap hit: {}  complete: {}", self.cap, self.cap_hit, self.complete).unwrap();
        writeln!(out, "{:>5} {:>4} {:>11}  {:<24} roots", "face", "dim", "certificate", "vertices").unwrap();
        for f in &self.faces {
            writeln!(
                out,
                "{:>5} {:>4} {:>11}  {:<24} {}",
                f.face,
                f.dim,
                f.certificate,
                format!("{:?}", f.vertices),
                braces(&f.roots)
            )
            .unwrap();
        }
        for f in &self.failures {
            writeln!(out, "face {} FAILED: {}", f.face, f.error).unwrap();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModZResult {
    pub ideal: IdealJson,
    pub terms: Vec<String>,
    pub generators: Vec<String>,
    pub classes: Vec<String>,
}

pub fn modz(spec: &IdealSpec) -> Result<ModZResult, CliError> {
    let c = roots_mod_z(&spec.ideal)?;
    Ok(ModZResult {
        ideal: spec.to_json(),
        terms: spec.terms(),
        generators: strings(&c.generators),
        classes: strings(&c.classes),
    })
}

impl Table for ModZResult {
    fn table(&self) -> String {
        format!(
            "ideal: ({})\nsubgroup generators: {}\nclasses mod Z: {}\n",
            self.terms.join(", "),
            braces(&self.generators),
            braces(&self.classes)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacetRow {
    pub normal: Vec<i64>,
    pub constant: i64,
    pub is_coordinate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceRow {
    pub id: usize,
    pub dim: usize,
    pub vertices: Vec<Vec<i64>>,
    pub rays: Vec<usize>,
    pub facets: Vec<usize>,
    pub is_whole: bool,
    pub in_coordinate_hyperplane: bool,
    /// `L_Q`, absent for the whole polyhedron and for faces in `{x_i = 0}`.
    #[serde(serialize_with = "serde_rational::optional_vector")]
    pub functional: Option<Vec<Rational>>,
    /// `m_Q`, for facets outside the coordinate hyperplanes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacesResult {
    pub ideal: IdealJson,
    pub terms: Vec<String>,
    pub vertices: Vec<Vec<i64>>,
    pub facets: Vec<FacetRow>,
    pub faces: Vec<FaceRow>,
}

fn face_m(p: &NewtonPolyhedron, f: &Face) -> Option<u64> {
    if !f.is_facet() || f.in_coordinate_hyperplane {
        return None;
    }
    let &k = f.facets.iter().next()?;
    facet_m(&p.facets()[k]).ok()
}

pub fn faces(spec: &IdealSpec) -> FacesResult {
    let p = build_polyhedron(&spec.ideal);
    let faces = enumerate_faces(&p);
    FacesResult {
        ideal: spec.to_json(),
        terms: spec.terms(),
        vertices: p.vertices().to_vec(),
        facets: p
            .facets()
            .iter()
            .map(|f| FacetRow {
                normal: f.normal.clone(),
                constant: f.constant,
                is_coordinate: f.is_coordinate,
                m: facet_m(f).ok(),
            })
            .collect(),
        faces: faces
            .iter()
            .map(|f| FaceRow {
                id: f.id,
                dim: f.dim,
                vertices: f.vertices.clone(),
                rays: f.rays.clone(),
                facets: f.facets.iter().copied().collect(),
                is_whole: f.is_whole,
                in_coordinate_hyperplane: f.in_coordinate_hyperplane,
                functional: if f.is_root_bearing() { f.functional.clone() } else { None },
                m: face_m(&p, f),
            })
            .collect(),
    }
}

impl Table for FacesResult {
    fn table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "ideal: ({})", self.terms.join(", ")).unwrap();
        writeln!(out, "{} faces", self.faces.len()).unwrap();
        writeln!(out, "{:>4} {:>4} {:<20} {:<8} {:<6} {:<18} m", "id", "dim", "vertices", "rays", "coord", "L").unwrap();
        for f in &self.faces {
            let l = match &f.functional {
                Some(l) => format!("({})", strings(l).join(", ")),
                None if f.is_whole => "whole".into(),
                None => "-".into(),
            };
            writeln!(
                out,
                "{:>4} {:>4} {:<20} {:<8} {:<6} {:<18} {}",
                f.id,
                f.dim,
                format!("{:?}", f.vertices),
                format!("{:?}", f.rays),
                f.in_coordinate_hyperplane,
                l,
                f.m.map(|m| m.to_string()).unwrap_or_else(|| "-".into())
            )
            .unwrap();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckTsResult {
    pub a: IdealJson,
    pub b: IdealJson,
    pub product: IdealJson,
    pub w_a: Vec<String>,
    pub w_b: Vec<String>,
    /// Computed face by face on `P_a × P_b`.
    pub w_ab: Vec<String>,
    /// `W_a ∪ W_b ⊆ W_ab`.
    pub inclusion_holds: bool,
    /// Roots of `W_a ∪ W_b` missing from `W_ab`.
    pub missing: Vec<String>,
    /// `W_ab \ (W_a ∪ W_b)`.
    pub extra_roots: Vec<String>,
    /// Classes from the `m_Q` of the facets of `P_a` and of `P_b`.
    pub classes_union: Vec<String>,
    /// Classes from the `m_Q` of the facets of `P_a × P_b`.
    pub classes_product: Vec<String>,
    pub mod_z_equal: bool,
    /// Fractional parts of `W_ab` against those of `W_a ∪ W_b`.
    pub root_classes_equal: bool,
    pub cap_hit: bool,
}

pub fn check_ts(a: &IdealSpec, b: &IdealSpec, options: &RootOptions) -> Result<CheckTsResult, CliError> {
    let joined = a.join(b)?;
    let wa = roots(&a.ideal, options)?;
    let wb = roots(&b.ideal, options)?;
    let wab = roots_of_product(&a.ideal, &b.ideal, options)?;
    let union: BTreeSet<Rational> = wa.values.union(&wb.values).cloned().collect();
    let missing: BTreeSet<Rational> = union.difference(&wab.roots.values).cloned().collect();
    let extra: BTreeSet<Rational> = wab.roots.values.difference(&union).cloned().collect();
    let ca = roots_mod_z(&a.ideal)?.classes;
    let cb = roots_mod_z(&b.ideal)?.classes;
    let classes_union: BTreeSet<Rational> = ca.union(&cb).cloned().collect();
    let classes_product = mod_z_classes(&wab.product.polyhedron).classes;
    Ok(CheckTsResult {
        a: a.to_json(),
        b: b.to_json(),
        product: joined.to_json(),
        w_a: descending(&wa.values),
        w_b: descending(&wb.values),
        w_ab: descending(&wab.roots.values),
        inclusion_holds: missing.is_empty(),
        missing: descending(&missing),
        extra_roots: descending(&extra),
        mod_z_equal: classes_union == classes_product,
        root_classes_equal: classes_of(&wab.roots.values) == classes_of(&union),
        classes_union: strings(&classes_union),
        classes_product: strings(&classes_product),
        cap_hit: wa.cap_hit() || wb.cap_hit() || wab.roots.cap_hit(),
    })
}

impl Table for CheckTsResult {
    fn table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "W_a:  {}", braces(&self.w_a)).unwrap();
        writeln!(out, "W_b:  {}", braces(&self.w_b)).unwrap();
        writeln!(out, "W_ab: {}", braces(&self.w_ab)).unwrap();
        writeln!(out, "W_a ∪ W_b ⊆ W_ab: {}", self.inclusion_holds).unwrap();
        if !self.missing.is_empty() {
            writeln!(out, "missing from W_ab: {}", braces(&self.missing)).unwrap();
        }
        writeln!(out, "extra roots: {}", braces(&self.extra_roots)).unwrap();
        writeln!(out, "mod Z classes equal (facets): {}", self.mod_z_equal).unwrap();
        writeln!(out, "mod Z classes equal (roots): {}", self.root_classes_equal).unwrap();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BPolyResult {
    pub expression: String,
    pub factored: String,
    pub roots: BPoly,
    pub degree: u32,
    /// Coefficients of the expanded polynomial, constant term first.
    #[serde(serialize_with = "serde_rational::vector")]
    pub coefficients: Vec<Rational>,
}

impl BPolyResult {
    pub fn new(expression: &str, value: BPoly) -> BPolyResult {
        BPolyResult {
            expression: expression.to_string(),
            factored: value.to_string(),
            degree: value.degree(),
            coefficients: value.coefficients(),
            roots: value,
        }
    }
}

impl Table for BPolyResult {
    fn table(&self) -> String {
        let mut out = format!("{} = {}\ndegree {}\n", self.expression, self.factored, self.degree);
        for (r, k) in self.roots.descending() {
            writeln!(out, "  root {r:>8}  multiplicity {k}").unwrap();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleVerifyResult {
    /// Catalog exponent bound, absent when a single ideal was checked.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_exponent: Option<i64>,
    pub ideals: usize,
    pub faces: usize,
    pub passed: usize,
    pub pass: bool,
    /// Full face-by-face comparison when a single ideal was checked.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<IdealVerdict>,
    pub failures: Vec<IdealVerdict>,
}

pub fn oracle_verify(
    max_exponent: i64,
    ideal: Option<&IdealSpec>,
    override_limits: bool,
    options: &RootOptions,
) -> Result<OracleVerifyResult, CliError> {
    let limits = OracleLimits { override_limits, ..OracleLimits::default() };
    if let Some(spec) = ideal {
        limits.check(&spec.ideal)?;
        let v = verify_ideal(&spec.ideal, options, &limits);
        return Ok(OracleVerifyResult {
            max_exponent: None,
            ideals: 1,
            faces: v.faces.len(),
            passed: usize::from(v.pass),
            pass: v.pass,
            failures: if v.pass { Vec::new() } else { vec![v.clone()] },
            detail: Some(v),
        });
    }
    if max_exponent < 1 {
        return Err(CliError::Input("catalog exponent must be at least 1".into()));
    }
    if !override_limits && max_exponent > limits.max_exponent {
        return Err(CliError::Input(format!(
            "catalog exponent {max_exponent} exceeds the oracle limit {}",
            limits.max_exponent
        )));
    }
    let report = verify_catalog(&catalog_two_variable(max_exponent), options, &limits);
    Ok(OracleVerifyResult {
        max_exponent: Some(max_exponent),
        ideals: report.ideals,
        faces: report.faces,
        passed: report.passed,
        pass: report.pass(),
        detail: None,
        failures: report.failures,
    })
}

impl Table for OracleVerifyResult {
    fn table(&self) -> String {
        let mut out = String::new();
        if let Some(k) = self.max_exponent {
            writeln!(out, "catalog: all monomial ideals of k[x,y] with generators in [0,{k}]^2").unwrap();
        }
        writeln!(out, "ideals: {}  faces: {}  passed: {}  pass: {}", self.ideals, self.faces, self.passed, self.pass)
            .unwrap();
        let verdicts = self.detail.iter().chain(self.failures.iter().filter(|_| self.detail.is_none()));
        for v in verdicts {
            writeln!(out, "generators {:?} (oracle radius {})", v.generators, v.radius).unwrap();
            for f in &v.faces {
                writeln!(
                    out,
                    "  face {:>3} {:<20} {} smart {} oracle {}{}",
                    f.face,
                    format!("{:?}", f.vertices),
                    if f.pass { "PASS" } else { "FAIL" },
                    braces(&descending(&f.smart)),
                    braces(&descending(&f.oracle)),
                    f.error.as_ref().map(|e| format!(" error: {e}")).unwrap_or_default()
                )
                .unwrap();
            }
        }
        out
    }
}
