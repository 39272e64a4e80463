use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::CurveConfig;
use crate::exactlinalg::{IntMat, RatMat};
use crate::lattice::Lattice;
use crate::{Error, Result};

/// A lattice spanned by rational combinations of the curves of a
/// configuration. Classes are compared through their pairings with every
/// curve, so the curves must span the lattice over `Q`.
#[derive(Clone, Debug)]
pub struct CurveLattice {
    config: CurveConfig,
    /// Basis rows in curve coordinates.
    basis: RatMat,
    /// `basis * gram`: pairings of each basis vector with every curve.
    pairings: RatMat,
    lattice: Lattice,
    gram_inverse: RatMat,
    /// Basis coordinates of each curve.
    curve_coords: Vec<Vec<BigRational>>,
}

impl CurveLattice {
    /// Fails unless the basis Gram matrix is integral and nondegenerate and
    /// every curve lies in the span.
    pub fn new(config: CurveConfig, basis: RatMat) -> Result<Self> {
        if basis.cols() != config.len() {
            return Err(Error::DimensionMismatch(format!(
                "basis in {} coordinates for {} curves",
                basis.cols(),
                config.len()
            )));
        }
        let g = RatMat::from(&config.gram());
        let pairings = basis.checked_mul(&g)?;
        let bg = pairings.checked_mul(&basis.transpose())?;
        let int = bg.to_intmat().ok_or_else(|| {
            Error::InvalidConfig("basis classes have non-integral pairings".into())
        })?;
        let lattice = Lattice::new(int)?;
        let gram_inverse = bg.inverse()?;
        let mut cl = CurveLattice {
            config,
            basis,
            pairings,
            lattice,
            gram_inverse,
            curve_coords: Vec::new(),
        };
        let n = cl.config.len();
        for i in 0..n {
            let mut e = vec![BigRational::zero(); n];
            e[i] = BigRational::one();
            let c = cl.coords(&e).ok_or_else(|| {
                Error::InvalidConfig(format!(
                    "curve `{}` is not in the span of the basis",
                    cl.config.labels()[i]
                ))
            })?;
            if !c.iter().all(BigRational::is_integer) {
                return Err(Error::InvalidConfig(format!(
                    "curve `{}` is not in the lattice",
                    cl.config.labels()[i]
                )));
            }
            cl.curve_coords.push(c);
        }
        Ok(cl)
    }

    pub fn config(&self) -> &CurveConfig {
        &self.config
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn basis(&self) -> &RatMat {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// Basis coordinates of a rational combination of curves, or `None` if
    /// its pairing vector is outside the span.
    pub fn coords(&self, x: &[BigRational]) -> Option<Vec<BigRational>> {
        let p = self.config.pairing_vector(x);
        let rhs = self.basis.mul_vec(&p);
        let a = self.gram_inverse.vec_mul(&rhs);
        (self.pairings.vec_mul(&a) == p).then_some(a)
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        self.coords(x)
            .is_some_and(|a| a.iter().all(BigRational::is_integer))
    }

    /// Curve coordinates of a vector given in basis coordinates.
    pub fn to_curves(&self, a: &[BigRational]) -> Vec<BigRational> {
        self.basis.vec_mul(a)
    }

    pub fn pair(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        self.config
            .pairing_vector(x)
            .iter()
            .zip(y)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Basis coordinates of each curve, reduced mod 2.
    pub(crate) fn curve_coords_mod2(&self) -> Vec<Vec<bool>> {
        let two = BigInt::from(2);
        self.curve_coords
            .iter()
            .map(|c| {
                c.iter()
                    .map(|v| !(v.to_integer() % &two).is_zero())
                    .collect()
            })
            .collect()
    }

    /// Integer Gram matrix of the basis.
    pub fn gram(&self) -> &IntMat {
        self.lattice.gram()
    }
}

/// Half the characteristic vector of a set of curves.
pub fn half_sum(n: usize, set: &[usize]) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); n];
    for &i in set {
        v[i] += BigRational::new(BigInt::one(), BigInt::from(2));
    }
    v
}
