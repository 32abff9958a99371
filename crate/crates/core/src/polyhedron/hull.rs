//! Double description on the homogenized cone.
//!
//! `P = conv(gens) + R^n_{>=0}` is encoded as the cone `C` spanned by
//! `(1, g)` for every generator and `(0, e_i)` for every coordinate. Facets
//! of `P` are the extreme rays `(-c, w)` of the dual cone
//! `C* = {y : y . r >= 0 for every generator r of C}`, read as `w . x >= c`;
//! the ray `(1, 0, ..., 0)` is the face at infinity and is discarded.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::geometry::linalg::{clear_denominators, rank, solve_linear};
use crate::geometry::{Rational, RationalVector};

type Ray = (Vec<BigInt>, BTreeSet<usize>);

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    v
}

/// Extreme rays of `{y : rows[k] . y >= 0 for all k}` for a full-rank
/// constraint matrix (the cone is then pointed). Each ray is primitive.
pub(crate) fn extreme_rays(rows: &[Vec<BigInt>], d: usize) -> Vec<Vec<BigInt>> {
    let as_rat = |r: &Vec<BigInt>| -> RationalVector {
        r.iter().map(|x| Rational::from_integer(x.clone())).collect()
    };
    let mut init: Vec<usize> = Vec::with_capacity(d);
    let mut chosen: Vec<RationalVector> = Vec::with_capacity(d);
    for (k, row) in rows.iter().enumerate() {
        chosen.push(as_rat(row));
        if rank(&chosen, d) == chosen.len() {
            init.push(k);
            if init.len() == d {
                break;
            }
        } else {
            chosen.pop();
        }
    }
    assert_eq!(init.len(), d, "constraint matrix must have full column rank");

    // columns of the inverse of the initial block
    let mut rays: Vec<Ray> = (0..d)
        .map(|i| {
            let rhs: Vec<Rational> = (0..d)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect();
            let sol = solve_linear(&chosen, &rhs).unwrap().unwrap();
            let v = primitive(clear_denominators(&sol.particular));
            let zeros = init.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &k)| k).collect();
            (v, zeros)
        })
        .collect();

    for (k, row) in rows.iter().enumerate() {
        if init.contains(&k) {
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|(r, _)| dot(row, r)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            for ((_, z), v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    z.insert(k);
                }
            }
            continue;
        }
        let mut next: Vec<Ray> = Vec::new();
        for (i, (r, z)) in rays.iter().enumerate() {
            if vals[i].is_positive() {
                next.push((r.clone(), z.clone()));
            } else if vals[i].is_zero() {
                let mut z = z.clone();
                z.insert(k);
                next.push((r.clone(), z));
            }
        }
        for p in 0..rays.len() {
            if !vals[p].is_positive() {
                continue;
            }
            for q in 0..rays.len() {
                if !vals[q].is_negative() {
                    continue;
                }
                let common: BTreeSet<usize> = rays[p].1.intersection(&rays[q].1).copied().collect();
                if common.len() + 2 < d {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(t, (_, z))| t == p || t == q || !common.is_subset(z));
                if !adjacent {
                    continue;
                }
                let neg = -vals[q].clone();
                let v: Vec<BigInt> = rays[p]
                    .0
                    .iter()
                    .zip(&rays[q].0)
                    .map(|(a, b)| &vals[p] * b + &neg * a)
                    .collect();
                let mut z = common;
                z.insert(k);
                next.push((primitive(v), z));
            }
        }
        rays = next;
    }
    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|(r, _)| r).collect();
    out.sort();
    out.dedup();
    out
}
