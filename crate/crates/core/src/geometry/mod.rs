//! Exact rational and integer geometry: linear systems, Hermite lattices and
//! affine spans. Nothing here uses floating point.

mod affine;
mod lattice;
pub mod linalg;
pub mod serde_rational;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use affine::{affine_span, linear_span, AffineSubspace};
pub use lattice::{hermite_form, BoxSearch, IntegerLattice};
pub use linalg::{solve_linear, LinearSolution};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;
pub type RationalVector = Vec<Rational>;
/// Lattice points: exponents of monomials, or differences of them.
pub type ExponentVector = Vec<i64>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rvec(v: &[i64]) -> RationalVector {
    v.iter().map(|&x| int(x)).collect()
}

pub fn to_rational(v: &[i64]) -> RationalVector {
    rvec(v)
}

pub fn big_to_rational(v: &[BigInt]) -> RationalVector {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

/// Greatest common divisor of a list of rationals, with Bezout coefficients:
/// `g = sum coeffs[i] * values[i]`, `g > 0`. Returns `None` if all are zero.
pub fn rational_gcd(values: &[Rational]) -> Option<(Rational, Vec<BigInt>)> {
    use num_integer::Integer;
    let l = values.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = values.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let mut g = BigInt::zero();
    let mut coeffs = vec![BigInt::zero(); ints.len()];
    for (i, a) in ints.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let e = g.extended_gcd(a);
        // e.gcd = e.x * g + e.y * a
        for c in coeffs[..i].iter_mut() {
            *c *= &e.x;
        }
        coeffs[i] = e.y.clone();
        g = e.gcd;
    }
    if g.is_zero() {
        return None;
    }
    if g.is_negative() {
        g = -g;
        for c in coeffs.iter_mut() {
            *c = -c.clone();
        }
    }
    Some((Rational::new(g, l), coeffs))
}
