//! End-to-end acceptance checks, one test per criterion. Each test prints a
//! single `criterion N: PASS` or `criterion N: FAIL ...` line.

use std::collections::BTreeSet;
use std::process::Command;

use bsroots::bpoly::BPoly;
use bsroots::geometry::{int, rat, serde_rational, Rational};
use bsroots::oracle::verify::{catalog_two_variable, verify_catalog};
use bsroots::oracle::OracleLimits;
use bsroots::polyhedron::{minimalize_generators, MonomialIdeal, NewtonPolyhedron};
use bsroots::roots::{classes_of, mod_z_classes, roots, roots_mod_z, roots_of_product, RootOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn report(criterion: u32, failures: &[String]) {
    if failures.is_empty() {
        println!("criterion {criterion}: PASS");
    } else {
        println!("criterion {criterion}: FAIL ({} problem(s))", failures.len());
        for f in failures {
            println!("  {f}");
        }
        panic!("criterion {criterion} failed: {}", failures.join("; "));
    }
}

fn bsroots(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_bsroots")).args(args).output().expect("binary runs");
    let code = out.status.code().expect("exit code");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, json)
}

fn rationals(v: &Value) -> BTreeSet<Rational> {
    v.as_array()
        .expect("array of rationals")
        .iter()
        .map(|s| serde_rational::parse(s.as_str().expect("rational string")).expect("p/q"))
        .collect()
}

fn diagonal_roots(a: i64, b: i64) -> BTreeSet<Rational> {
    let mut out = BTreeSet::new();
    for i in 1..=b {
        for j in 1..=a {
            out.insert(-rat(a * i + b * j, a * b));
        }
    }
    out
}

#[test]
fn criterion_1_diagonal_closed_form() {
    let mut failures = Vec::new();
    for a in 1..=6 {
        for b in 1..=6 {
            let ideal = format!("x^{a}, y^{b}");
            let (code, json) = bsroots(&["roots", &ideal]);
            if code != 0 {
                failures.push(format!("({ideal}) exited with {code}"));
                continue;
            }
            let got = rationals(&json["roots"]);
            let want = diagonal_roots(a, b);
            if got != want {
                failures.push(format!("({ideal}): got {got:?}, want {want:?}"));
            }
        }
    }
    report(1, &failures);
}

#[test]
fn criterion_2_counterexample() {
    let mut failures = Vec::new();
    let (code, json) = bsroots(&["check-ts", "x^2, y^7", "z^14, w"]);
    if code != 0 {
        failures.push(format!("check-ts exited with {code}"));
    }
    let wa = rationals(&json["w_a"]);
    let wb = rationals(&json["w_b"]);
    let wab = rationals(&json["w_ab"]);
    if wa != diagonal_roots(2, 7) {
        failures.push(format!("W_a = {wa:?}"));
    }
    let want_b: BTreeSet<Rational> = (1..=14).map(|j| -int(1) - rat(j, 14)).collect();
    if wb != want_b {
        failures.push(format!("W_b = {wb:?}"));
    }
    if json["inclusion_holds"] != Value::Bool(true) || !wa.union(&wb).all(|r| wab.contains(r)) {
        failures.push("W_a ∪ W_b is not contained in W_ab".into());
    }
    let target = -rat(15, 7);
    let extra = rationals(&json["extra_roots"]);
    if !(wab.contains(&target) && extra.contains(&target)) {
        failures.push(format!("-15/7 is not in W_ab \\ (W_a ∪ W_b); extra roots: {extra:?}"));
    }
    report(2, &failures);
}

fn random_ideal(rng: &mut ChaCha8Rng) -> MonomialIdeal {
    loop {
        let n = rng.gen_range(1..=2);
        let k = rng.gen_range(1..=3);
        let raw: Vec<Vec<i64>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..=6)).collect()).collect();
        if let Ok(ideal) = minimalize_generators(&raw) {
            if ideal.is_proper() {
                return ideal;
            }
        }
    }
}

fn corpus() -> Vec<(MonomialIdeal, MonomialIdeal)> {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    (0..50).map(|_| (random_ideal(&mut rng), random_ideal(&mut rng))).collect()
}

#[test]
fn criterion_3_product_inclusion() {
    let options = RootOptions::default();
    let mut failures = Vec::new();
    for (a, b) in corpus() {
        let wa = roots(&a, &options).expect("roots of a");
        let wb = roots(&b, &options).expect("roots of b");
        let wab = roots_of_product(&a, &b, &options).expect("product roots");
        let missing: Vec<&Rational> = wa.values.union(&wb.values).filter(|r| !wab.roots.values.contains(r)).collect();
        if !missing.is_empty() {
            failures.push(format!("{:?} x {:?}: missing {missing:?}", a.generators(), b.generators()));
        }
    }
    report(3, &failures);
}

#[test]
fn criterion_4_product_classes() {
    let options = RootOptions::default();
    let mut failures = Vec::new();
    for (a, b) in corpus() {
        let tag = format!("{:?} x {:?}", a.generators(), b.generators());
        let wa = roots(&a, &options).expect("roots of a");
        let wb = roots(&b, &options).expect("roots of b");
        let wab = roots_of_product(&a, &b, &options).expect("product roots");
        let product = &wab.product;
        let facets = |p: &NewtonPolyhedron| p.facets().len();
        if facets(&product.polyhedron) != facets(&product.left) + facets(&product.right) {
            failures.push(format!("{tag}: product facets are not the facets of the factors"));
        }
        let union: BTreeSet<Rational> = roots_mod_z(&a)
            .expect("classes of a")
            .classes
            .union(&roots_mod_z(&b).expect("classes of b").classes)
            .cloned()
            .collect();
        let from_facets = mod_z_classes(&product.polyhedron).classes;
        if from_facets != union {
            failures.push(format!("{tag}: facet classes {from_facets:?} != {union:?}"));
        }
        let root_union: BTreeSet<Rational> = classes_of(wa.values.union(&wb.values));
        if classes_of(&wab.roots.values) != root_union {
            failures.push(format!("{tag}: classes of W_ab differ from those of W_a ∪ W_b"));
        }
    }
    report(4, &failures);
}

#[test]
fn criterion_5_oracle_catalog() {
    let catalog = catalog_two_variable(8);
    let report_ = verify_catalog(&catalog, &RootOptions::default(), &OracleLimits::default());
    let mut failures: Vec<String> = report_
        .failures
        .iter()
        .map(|v| {
            let bad: Vec<String> = v
                .faces
                .iter()
                .filter(|f| !f.pass)
                .map(|f| format!("face {} smart {:?} oracle {:?} error {:?}", f.face, f.smart, f.oracle, f.error))
                .collect();
            format!("{:?}: {}", v.generators, bad.join(", "))
        })
        .collect();
    // a passing face carries both a smart certificate and a stable oracle
    if report_.ideals != catalog.len() || report_.passed != catalog.len() {
        failures.push(format!("{} of {} ideals passed", report_.passed, report_.ideals));
    }
    println!("  {} ideals, {} root-bearing faces compared", report_.ideals, report_.faces);
    report(5, &failures);
}

fn expand(factors: &[(Rational, u32)]) -> Vec<Rational> {
    let mut coeffs = vec![int(1)];
    for (root, k) in factors {
        for _ in 0..*k {
            let mut next = vec![int(0); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i] += c * (-root.clone());
                next[i + 1] += c.clone();
            }
            coeffs = next;
        }
    }
    coeffs
}

#[test]
fn criterion_6_constructors() {
    let mut failures = Vec::new();
    for n in 1..=5 {
        let got = BPoly::from_determinant(n).expect("det");
        let want = BPoly::from_roots((1..=n).map(|i| (-int(i), 1))).expect("roots");
        if got != want {
            failures.push(format!("det({n}) = {got}"));
        }
    }
    let (n, l) = (2, 3);
    let mut factors = vec![(-int(1), (n - 1) as u32)];
    for j in 0..=(2 * l - n - 2) {
        factors.push((-rat(j + n, l), 1));
    }
    let arr = BPoly::from_generic_arrangement(n, l).expect("arr");
    if arr.coefficients() != expand(&factors) {
        failures.push(format!("arr(2,3) = {arr}"));
    }
    let cusp = BPoly::from_brieskorn(&[2, 3]).expect("brieskorn");
    if cusp.to_string() != "(s+5/6)(s+1)(s+7/6)" {
        failures.push(format!("brieskorn(2,3) = {cusp}"));
    }
    report(6, &failures);
}

fn random_bpoly(rng: &mut ChaCha8Rng) -> BPoly {
    let k = rng.gen_range(0..=4);
    BPoly::from_roots((0..k).map(|_| (-rat(rng.gen_range(1..=24), rng.gen_range(1..=8)), rng.gen_range(1..=3))))
        .expect("negative roots")
}

fn random_constructor(rng: &mut ChaCha8Rng) -> BPoly {
    match rng.gen_range(0..4) {
        0 => BPoly::from_determinant(rng.gen_range(1..=6)),
        1 => BPoly::from_univariate_power(rng.gen_range(1..=9)),
        2 => {
            let n = rng.gen_range(1..=3);
            BPoly::from_brieskorn(&(0..n).map(|_| rng.gen_range(2..=6)).collect::<Vec<_>>())
        }
        _ => {
            let n = rng.gen_range(1..=4);
            BPoly::from_generic_arrangement(n, rng.gen_range(n.max((n + 3) / 2)..=n + 4))
        }
    }
    .expect("constructor in range")
}

#[test]
fn criterion_7_algebra_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = Vec::new();
    for i in 0..1000 {
        let (a, b, c) = (random_bpoly(&mut rng), random_bpoly(&mut rng), random_bpoly(&mut rng));
        match i % 5 {
            0 => {
                if a.tensor(&b).tensor(&c) != a.tensor(&b.tensor(&c)) || a.tensor(&b) != b.tensor(&a) {
                    failures.push(format!("tensor laws fail for {a}, {b}, {c}"));
                }
            }
            1 => {
                if a.lcm(&b).lcm(&c) != a.lcm(&b.lcm(&c)) || a.lcm(&b) != b.lcm(&a) || a.lcm(&a) != a {
                    failures.push(format!("lcm laws fail for {a}, {b}, {c}"));
                }
            }
            2 => {
                let r = -rat(rng.gen_range(1..=24), rng.gen_range(1..=8));
                let product = a.tensor(&BPoly::linear(r.clone()).expect("negative root"));
                if product.divide_linear(&r).as_ref() != Ok(&a) {
                    failures.push(format!("divide after multiply fails for {a} and root {r}"));
                }
            }
            3 => {
                let ab = a.tensor(&b);
                if a.lcm(&b).degree() > ab.degree() || ab.degree() != a.degree() + b.degree() {
                    failures.push(format!("degree laws fail for {a}, {b}"));
                }
            }
            _ => {
                let f = random_constructor(&mut rng);
                if !f.all_negative() || f.is_one() {
                    failures.push(format!("constructor output {f} is not a negative-root polynomial"));
                }
            }
        }
    }
    report(7, &failures);
}

#[test]
fn criterion_8_scope_note() {
    println!(
        "  general-f statements are represented by the tensor algebra (criterion 7) \
         and the monomial cross-checks (criteria 1 to 5)"
    );
    let f = BPoly::from_univariate_power(2).expect("pow");
    let g = BPoly::from_univariate_power(3).expect("pow");
    let mut failures = Vec::new();
    if f.tensor(&g).to_string() != "(s+1/3)(s+1/2)(s+2/3)(s+1)^2" {
        failures.push(format!("pow(2) ⊗ pow(3) = {}", f.tensor(&g)));
    }
    report(8, &failures);
}
