//! Bernstein-Sato polynomials as multisets of negative rational roots.
//!
//! A [`BPoly`] stands for the monic polynomial `∏ (s - r)^k` over its roots
//! `r < 0` with multiplicities `k > 0`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::BPolyError;
use crate::geometry::{int, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BPoly {
    roots: BTreeMap<Rational, u32>,
}

impl BPoly {
    /// The constant polynomial `1`.
    pub fn one() -> BPoly {
        BPoly::default()
    }

    /// `(s - root)`.
    pub fn linear(root: Rational) -> Result<BPoly, BPolyError> {
        BPoly::from_roots([(root, 1)])
    }

    /// Builds a polynomial from `(root, multiplicity)` pairs, adding the
    /// multiplicities of repeated roots and skipping zero multiplicities.
    pub fn from_roots(pairs: impl IntoIterator<Item = (Rational, u32)>) -> Result<BPoly, BPolyError> {
        let mut roots = BTreeMap::new();
        for (r, k) in pairs {
            if !r.is_negative() {
                return Err(BPolyError::NonNegativeRoot(r));
            }
            if k > 0 {
                *roots.entry(r).or_insert(0) += k;
            }
        }
        Ok(BPoly { roots })
    }

    /// `∏_{i=1}^{a} (s + i/a)`, the b-function of `x^a`.
    pub fn from_univariate_power(a: i64) -> Result<BPoly, BPolyError> {
        if a < 1 {
            return Err(BPolyError::OutOfDomain { name: "pow", value: a, reason: "exponent must be at least 1" });
        }
        Ok(quasi_homogeneous(&[a]))
    }

    /// `(s + 1) ∏_{ρ ∈ Δ} (s + |w| + ρ)` for `x_1^{a_1} + ... + x_n^{a_n}`
    /// with weights `w_i = 1/a_i`, where `Δ` is the set of weighted degrees
    /// `Σ α_i / a_i` of the Milnor basis monomials `0 <= α_i <= a_i - 2`.
    pub fn from_brieskorn(exponents: &[i64]) -> Result<BPoly, BPolyError> {
        if exponents.is_empty() {
            return Err(BPolyError::OutOfDomain { name: "brieskorn", value: 0, reason: "needs at least one exponent" });
        }
        if let Some(&a) = exponents.iter().find(|&&a| a < 2) {
            return Err(BPolyError::OutOfDomain { name: "brieskorn", value: a, reason: "every exponent must be at least 2" });
        }
        Ok(quasi_homogeneous(exponents))
    }

    /// `(s + 1)(s + 2) ... (s + n)`, the b-function of the generic `n × n`
    /// determinant.
    pub fn from_determinant(n: i64) -> Result<BPoly, BPolyError> {
        if n < 1 {
            return Err(BPolyError::OutOfDomain { name: "det", value: n, reason: "size must be at least 1" });
        }
        Ok(BPoly { roots: (1..=n).map(|i| (int(-i), 1)).collect() })
    }

    /// `(s + 1)^{n-1} ∏_{j=0}^{2l-n-2} (s + (j + n)/l)` for a generic central
    /// arrangement of `l` hyperplanes in `n` variables.
    pub fn from_generic_arrangement(n: i64, l: i64) -> Result<BPoly, BPolyError> {
        if n < 1 {
            return Err(BPolyError::OutOfDomain { name: "arr", value: n, reason: "dimension must be at least 1" });
        }
        if l < n {
            return Err(BPolyError::OutOfDomain { name: "arr", value: l, reason: "needs at least n hyperplanes" });
        }
        if 2 * l - n - 2 < 0 {
            return Err(BPolyError::OutOfDomain { name: "arr", value: l, reason: "empty product range" });
        }
        let mut pairs = vec![(int(-1), (n - 1) as u32)];
        pairs.extend((0..=2 * l - n - 2).map(|j| (rat(-(j + n), l), 1)));
        BPoly::from_roots(pairs)
    }

    pub fn roots(&self) -> impl Iterator<Item = (&Rational, u32)> {
        self.roots.iter().map(|(r, &k)| (r, k))
    }

    pub fn multiplicity(&self, root: &Rational) -> u32 {
        self.roots.get(root).copied().unwrap_or(0)
    }

    /// Number of roots counted with multiplicity.
    pub fn degree(&self) -> u32 {
        self.roots.values().sum()
    }

    pub fn is_one(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn all_negative(&self) -> bool {
        self.roots.keys().all(Signed::is_negative)
    }

    /// Product of the polynomials: multiplicities add.
    pub fn tensor(&self, other: &BPoly) -> BPoly {
        let mut roots = self.roots.clone();
        for (r, &k) in &other.roots {
            *roots.entry(r.clone()).or_insert(0) += k;
        }
        BPoly { roots }
    }

    /// `b_a · b_g`, the same product as [`BPoly::tensor`].
    pub fn principal_product(&self, other: &BPoly) -> BPoly {
        self.tensor(other)
    }

    /// Least common multiple: the larger multiplicity of each root.
    pub fn lcm(&self, other: &BPoly) -> BPoly {
        let mut roots = self.roots.clone();
        for (r, &k) in &other.roots {
            let e = roots.entry(r.clone()).or_insert(0);
            *e = (*e).max(k);
        }
        BPoly { roots }
    }

    /// Root `r1 + r2` for every pair of roots, with multiplicity the largest
    /// `k1 + k2 - 1` over the pairs summing to it.
    pub fn ideal_union_combine(&self, other: &BPoly) -> BPoly {
        let mut roots: BTreeMap<Rational, u32> = BTreeMap::new();
        for (r1, &k1) in &self.roots {
            for (r2, &k2) in &other.roots {
                let e = roots.entry(r1 + r2).or_insert(0);
                *e = (*e).max(k1 + k2 - 1);
            }
        }
        BPoly { roots }
    }

    /// Divides by `(s - root)`.
    pub fn divide_linear(&self, root: &Rational) -> Result<BPoly, BPolyError> {
        let mut roots = self.roots.clone();
        match roots.get_mut(root) {
            None => return Err(BPolyError::InexactDivision(root.clone())),
            Some(k) if *k > 1 => *k -= 1,
            Some(_) => {
                roots.remove(root);
            }
        }
        Ok(BPoly { roots })
    }

    /// Coefficients of the expanded polynomial, constant term first.
    pub fn coefficients(&self) -> Vec<Rational> {
        let mut c = vec![Rational::one()];
        for (r, &k) in &self.roots {
            for _ in 0..k {
                let mut next = vec![Rational::zero(); c.len() + 1];
                for (i, x) in c.iter().enumerate() {
                    next[i + 1] += x;
                    next[i] -= x * r;
                }
                c = next;
            }
        }
        c
    }

    /// Roots from closest to zero to most negative.
    pub fn descending(&self) -> Vec<(Rational, u32)> {
        self.roots.iter().rev().map(|(r, &k)| (r.clone(), k)).collect()
    }
}

fn quasi_homogeneous(exponents: &[i64]) -> BPoly {
    let total: Rational = exponents.iter().map(|&a| rat(1, a)).sum();
    let mut delta = std::collections::BTreeSet::new();
    let mut alpha = vec![0i64; exponents.len()];
    let nonempty = exponents.iter().all(|&a| a >= 2);
    while nonempty {
        delta.insert(alpha.iter().zip(exponents).map(|(&x, &a)| rat(x, a)).sum::<Rational>());
        let Some(i) = (0..alpha.len()).find(|&i| alpha[i] < exponents[i] - 2) else {
            break;
        };
        alpha[i] += 1;
        alpha[..i].fill(0);
    }
    let mut roots = BTreeMap::new();
    roots.insert(int(-1), 1);
    for rho in delta {
        *roots.entry(-(&total + rho)).or_insert(0) += 1;
    }
    BPoly { roots }
}

/// `(s+1/3)(s+1/2)(s+1)^2`, roots from closest to zero; `1` when empty.
impl fmt::Display for BPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.roots.is_empty() {
            return write!(f, "1");
        }
        for (r, k) in self.descending() {
            write!(f, "(s+{})", -r)?;
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

struct Factor<'a>(&'a Rational, u32);

impl Serialize for Factor<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Factor", 2)?;
        st.serialize_field("root", &self.0.to_string())?;
        st.serialize_field("mult", &self.1)?;
        st.end()
    }
}

/// A list of `{"root": "p/q", "mult": k}` records, roots from closest to zero.
impl Serialize for BPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.roots.len()))?;
        for (r, &k) in self.roots.iter().rev() {
            seq.serialize_element(&Factor(r, k))?;
        }
        seq.end()
    }
}
