//! Univariate polynomials and rational functions over Q in one variable,
//! and Möbius maps of the projective line over that function field.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::fmt_rat;
use crate::{Error, Result};

/// Polynomial with rational coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_ints(&[1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dl = d.leading().expect("division by zero polynomial");
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / dl;
            if c.is_zero() {
                continue;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                let v = &c * dc;
                r[k + i] -= v;
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UniPoly::new(q), UniPoly::new(r))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Substitutes a rational function for the variable.
    pub fn compose(&self, f: &UniRatFun) -> UniRatFun {
        self.coeffs.iter().rev().fold(UniRatFun::zero(), |acc, c| {
            &(&acc * f) + &UniRatFun::constant(c.clone())
        })
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_default();
                    let b = rhs.coeffs.get(i).cloned().unwrap_or_default();
                    a + b
                })
                .collect(),
        )
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

fn fmt_poly(p: &UniPoly, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in p.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { " - " } else { " + " })?;
        }
        first = false;
        let coeff = if a.is_one() && i > 0 {
            String::new()
        } else if i > 0 {
            format!("{}*", fmt_rat(&a))
        } else {
            fmt_rat(&a)
        };
        match i {
            0 => write!(f, "{coeff}")?,
            1 => write!(f, "{coeff}{var}")?,
            _ => write!(f, "{coeff}{var}^{i}")?,
        }
    }
    Ok(())
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(self, "s", f)
    }
}

/// Reduced quotient of polynomials with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniRatFun {
    num: UniPoly,
    den: UniPoly,
}

impl UniRatFun {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Singular);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let l = d.leading().expect("nonzero").recip();
        Ok(UniRatFun {
            num: n.scale(&l),
            den: d.scale(&l),
        })
    }

    pub fn zero() -> Self {
        UniRatFun {
            num: UniPoly::zero(),
            den: UniPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        UniRatFun {
            num: UniPoly::constant(c),
            den: UniPoly::one(),
        }
    }

    pub fn poly(p: UniPoly) -> Self {
        UniRatFun {
            num: p,
            den: UniPoly::one(),
        }
    }

    /// The variable.
    pub fn var() -> Self {
        Self::poly(UniPoly::x())
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &UniRatFun) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::Singular);
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Value at a rational point, `None` at a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }
}

impl Add for &UniRatFun {
    type Output = UniRatFun;
    fn add(self, rhs: &UniRatFun) -> UniRatFun {
        UniRatFun::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero denominators")
    }
}

impl Neg for &UniRatFun {
    type Output = UniRatFun;
    fn neg(self) -> UniRatFun {
        UniRatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &UniRatFun {
    type Output = UniRatFun;
    fn sub(self, rhs: &UniRatFun) -> UniRatFun {
        self + &(-rhs)
    }
}

impl Mul for &UniRatFun {
    type Output = UniRatFun;
    fn mul(self, rhs: &UniRatFun) -> UniRatFun {
        UniRatFun::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Div for &UniRatFun {
    type Output = UniRatFun;
    fn div(self, rhs: &UniRatFun) -> UniRatFun {
        self.checked_div(rhs)
            .expect("division by zero rational function")
    }
}

impl fmt::Display for UniRatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == UniPoly::one() {
            return fmt_poly(&self.num, "s", f);
        }
        write!(f, "(")?;
        fmt_poly(&self.num, "s", f)?;
        write!(f, ")/(")?;
        fmt_poly(&self.den, "s", f)?;
        write!(f, ")")
    }
}

/// A point of the projective line over Q(s).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProjPoint {
    Finite(UniRatFun),
    Infinity,
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(v) => write!(f, "{v}"),
            ProjPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// `z -> (a z + b) / (c z + d)` with coefficients in Q(s).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mobius {
    pub a: UniRatFun,
    pub b: UniRatFun,
    pub c: UniRatFun,
    pub d: UniRatFun,
}

impl Mobius {
    pub fn new(a: UniRatFun, b: UniRatFun, c: UniRatFun, d: UniRatFun) -> Result<Self> {
        let det = &(&a * &d) - &(&b * &c);
        if det.is_zero() {
            return Err(Error::DegenerateMobius);
        }
        Ok(Mobius { a, b, c, d })
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        match p {
            ProjPoint::Infinity => {
                if self.c.is_zero() {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Finite(&self.a / &self.c)
                }
            }
            ProjPoint::Finite(z) => {
                let den = &(&self.c * z) + &self.d;
                let num = &(&self.a * z) + &self.b;
                if den.is_zero() {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Finite(&num / &den)
                }
            }
        }
    }

    /// The inverse map `(d z - b) / (-c z + a)`.
    pub fn inverse(&self) -> Mobius {
        Mobius {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }
}

/// Images of the points under the map.
pub fn mobius_images(map: &Mobius, points: &[ProjPoint]) -> Vec<ProjPoint> {
    points.iter().map(|p| map.apply(p)).collect()
}
