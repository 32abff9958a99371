//! Parsing monomial ideals from term strings or JSON.
//!
//! Term strings list generators separated by commas; each generator is a
//! `*`-separated product of `name` or `name^k` factors, or `1`. Variables are
//! numbered in order of first appearance. The JSON form is
//! `{"vars": n, "generators": [[...], ...]}` with an optional `"names"` list.

use std::collections::BTreeMap;

use bsroots::polyhedron::{minimalize_generators, MonomialIdeal};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// A parsed ideal together with its variable names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealSpec {
    pub names: Vec<String>,
    pub ideal: MonomialIdeal,
}

/// The JSON form of an ideal, also used in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub vars: usize,
    pub generators: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl IdealSpec {
    pub fn parse(input: &str) -> Result<IdealSpec, CliError> {
        let trimmed = input.trim();
        let spec = if trimmed.starts_with('{') {
            let json: IdealJson =
                serde_json::from_str(trimmed).map_err(|e| CliError::Parse(format!("ideal JSON: {e}")))?;
            from_json(json)?
        } else {
            from_terms(trimmed)?
        };
        if !spec.ideal.is_proper() {
            return Err(CliError::Input("the unit ideal is not a proper ideal".into()));
        }
        Ok(spec)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            vars: self.dim(),
            generators: self.ideal.generators().to_vec(),
            names: Some(self.names.clone()),
        }
    }

    /// Generators written as monomials, e.g. `x^2*y`.
    pub fn terms(&self) -> Vec<String> {
        self.ideal
            .generators()
            .iter()
            .map(|g| {
                let factors: Vec<String> = g
                    .iter()
                    .zip(&self.names)
                    .filter(|(&e, _)| e > 0)
                    .map(|(&e, v)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
                    .collect();
                if factors.is_empty() {
                    "1".to_string()
                } else {
                    factors.join("*")
                }
            })
            .collect()
    }

    /// The ideal generated by all products, in the concatenated variables.
    pub fn join(&self, other: &IdealSpec) -> Result<IdealSpec, CliError> {
        if let Some(v) = self.names.iter().find(|v| other.names.contains(v)) {
            return Err(CliError::Input(format!("variable {v} appears in both ideals")));
        }
        let mut names = self.names.clone();
        names.extend(other.names.iter().cloned());
        Ok(IdealSpec { names, ideal: self.ideal.product(&other.ideal) })
    }
}

/// `x, y, z, w` up to four variables, then `x1, x2, ...`.
fn default_names(n: usize) -> Vec<String> {
    if n <= 4 {
        ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

fn from_json(json: IdealJson) -> Result<IdealSpec, CliError> {
    if json.vars == 0 {
        return Err(CliError::Input("an ideal needs at least one variable".into()));
    }
    let names = match json.names {
        Some(names) => {
            if names.len() != json.vars {
                return Err(CliError::Input(format!("{} names given for {} variables", names.len(), json.vars)));
            }
            for n in &names {
                check_name(n)?;
            }
            names
        }
        None => default_names(json.vars),
    };
    if let Some(g) = json.generators.iter().find(|g| g.len() != json.vars) {
        return Err(CliError::Input(format!("generator {g:?} does not have {} entries", json.vars)));
    }
    let ideal = minimalize_generators(&json.generators).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(IdealSpec { names, ideal })
}

fn check_name(name: &str) -> Result<(), CliError> {
    let mut chars = name.chars();
    let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    if ok {
        Ok(())
    } else {
        Err(CliError::Parse(format!("invalid variable name {name:?}")))
    }
}

fn from_terms(input: &str) -> Result<IdealSpec, CliError> {
    if input.is_empty() {
        return Err(CliError::Parse("empty ideal".into()));
    }
    let mut names: Vec<String> = Vec::new();
    let mut terms: Vec<BTreeMap<usize, i64>> = Vec::new();
    for term in input.split(',') {
        let term = term.trim();
        if term.is_empty() {
            return Err(CliError::Parse(format!("empty generator in {input:?}")));
        }
        let mut exps: BTreeMap<usize, i64> = BTreeMap::new();
        for factor in term.split('*') {
            let factor = factor.trim();
            if factor == "1" {
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => (n.trim(), parse_exponent(e.trim())?),
                None => (factor, 1),
            };
            check_name(name)?;
            let idx = match names.iter().position(|v| v == name) {
                Some(i) => i,
                None => {
                    names.push(name.to_string());
                    names.len() - 1
                }
            };
            *exps.entry(idx).or_insert(0) += exp;
        }
        terms.push(exps);
    }
    if names.is_empty() {
        return Err(CliError::Input("the unit ideal is not a proper ideal".into()));
    }
    let raw: Vec<Vec<i64>> = terms
        .iter()
        .map(|t| (0..names.len()).map(|i| t.get(&i).copied().unwrap_or(0)).collect())
        .collect();
    let ideal = minimalize_generators(&raw).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(IdealSpec { names, ideal })
}

fn parse_exponent(s: &str) -> Result<i64, CliError> {
    if s.is_empty() || !s.chars().all(|c| c.is_ascii_digit()) {
        return Err(CliError::Parse(format!("exponent {s:?} is not a nonnegative integer")));
    }
    s.parse().map_err(|_| CliError::Parse(format!("exponent {s:?} is too large")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn term_strings() {
        let s = IdealSpec::parse("x^2*y^7, y^3").unwrap();
        assert_eq!(s.names, vec!["x", "y"]);
        assert_eq!(s.ideal.generators(), &[vec![0, 3]]);
        let s = IdealSpec::parse("x^2, y^3").unwrap();
        assert_eq!(s.terms(), vec!["x^2", "y^3"]);
        let s = IdealSpec::parse("a*b*a").unwrap();
        assert_eq!(s.ideal.generators(), &[vec![2, 1]]);
    }

    #[test]
    fn malformed() {
        assert!(matches!(IdealSpec::parse("x^-1"), Err(CliError::Parse(_))));
        assert!(matches!(IdealSpec::parse("x^"), Err(CliError::Parse(_))));
        assert!(matches!(IdealSpec::parse("x,,y"), Err(CliError::Parse(_))));
        assert!(matches!(IdealSpec::parse("2x"), Err(CliError::Parse(_))));
        assert!(matches!(IdealSpec::parse("x^0"), Err(CliError::Input(_))));
        assert!(matches!(IdealSpec::parse("x, 1"), Err(CliError::Input(_))));
    }

    #[test]
    fn json_round_trip() {
        let s = IdealSpec::parse(r#"{"vars": 2, "generators": [[2, 0], [2, 1], [0, 7]]}"#).unwrap();
        assert_eq!(s.names, vec!["x", "y"]);
        let text = serde_json::to_string(&s.to_json()).unwrap();
        assert_eq!(IdealSpec::parse(&text).unwrap(), s);
        let t = IdealSpec::parse("x^2, x^2*y, y^7").unwrap();
        assert_eq!(t, s);
    }

    #[test]
    fn json_errors() {
        assert!(IdealSpec::parse(r#"{"vars": 2, "generators": [[1]]}"#).is_err());
        assert!(IdealSpec::parse(r#"{"vars": 1, "generators": [[-1]]}"#).is_err());
        assert!(IdealSpec::parse(r#"{"vars": 2}"#).is_err());
    }

    #[test]
    fn join_rejects_shared_names() {
        let a = IdealSpec::parse("x^2, y^7").unwrap();
        let b = IdealSpec::parse("z^14, w").unwrap();
        assert_eq!(a.join(&b).unwrap().names, vec!["x", "y", "z", "w"]);
        assert!(matches!(a.join(&a), Err(CliError::Input(_))));
    }
}
