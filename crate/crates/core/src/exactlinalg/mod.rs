//! Exact dense linear algebra over the integers and the rationals.

mod intmat;
mod normal_form;
mod poly;
mod ratmat;
mod signature;
mod solve;

pub use intmat::IntMat;
pub use normal_form::{hnf, snf, snf_rational, Snf, SnfRational};
pub use poly::{mobius_images, Mobius, ProjPoint, UniPoly, UniRatFun};
pub use ratmat::RatMat;
pub use signature::{signature, Signature};
pub use solve::{kernel_saturated, solve_rational, Solution};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Shorthand for an exact rational `n/d`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_rat(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

/// Floor division for big integers.
pub(crate) fn div_floor(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

/// Extended gcd: returns `(g, x, y)` with `a*x + b*y = g >= 0`.
pub(crate) fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Least common multiple of the denominators of a slice of rationals.
pub fn denominator_lcm<'a, I>(values: I) -> BigInt
where
    I: IntoIterator<Item = &'a BigRational>,
{
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rat(v: &BigRational) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Parses `p`, `-p` or `p/q` into a rational.
pub fn parse_rat(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Reduces `v` into `[0, m)`.
pub fn rat_mod(v: &BigRational, m: &BigRational) -> BigRational {
    let q = (v / m).floor();
    v - q * m
}
