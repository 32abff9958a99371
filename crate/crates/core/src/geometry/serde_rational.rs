//! Serialization of rationals as `"p/q"` strings (or `"p"` for integers).

use std::collections::BTreeSet;

use serde::ser::SerializeSeq;
use serde::Serializer;

use super::Rational;

pub fn single<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn vector<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

pub fn optional_vector<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => vector(v, s),
        None => s.serialize_none(),
    }
}

pub fn ascending<S: Serializer>(v: &BTreeSet<Rational>, s: S) -> Result<S::Ok, S::Error> {
    let items: Vec<Rational> = v.iter().cloned().collect();
    vector(&items, s)
}

/// Largest first, so negative roots are listed from closest to zero.
pub fn descending<S: Serializer>(v: &BTreeSet<Rational>, s: S) -> Result<S::Ok, S::Error> {
    let items: Vec<Rational> = v.iter().rev().cloned().collect();
    vector(&items, s)
}

/// Parses `"p/q"` or `"p"` into a rational in lowest terms.
pub fn parse(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n: num_bigint::BigInt = n.parse().ok()?;
    let d: num_bigint::BigInt = d.parse().ok()?;
    if d == num_bigint::BigInt::from(0) {
        return None;
    }
    Some(Rational::new(n, d))
}
