//! Lattices given by integral Gram matrices.

mod dual;
mod named;
mod nikulin;
mod sub;

pub use dual::{discriminant_group, DiscGroupData, DualVector};
pub use named::{direct_sum, make_named, rescale};
pub use nikulin::{nikulin_unique, splits_e8, splits_u, two_elem_invariants, TwoElementary};
pub use sub::{
    contains, is_primitive, orthogonal_complement, saturation, sublattice, SublatticeData,
};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::exactlinalg::{hnf, signature, IntMat, RatMat, Signature};
use crate::{Error, Result};

/// A symmetric integral bilinear form on `Z^n`, with its invariants cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    gram: IntMat,
    name: Option<String>,
    det: BigInt,
    signature: Signature,
    even: bool,
}

impl Lattice {
    /// A nondegenerate lattice.
    pub fn new(gram: IntMat) -> Result<Self> {
        let l = Self::new_degenerate(gram)?;
        if l.det.is_zero() {
            return Err(Error::DegenerateLattice);
        }
        Ok(l)
    }

    /// Accepts a singular Gram matrix. Only meant for intermediate results.
    pub fn new_degenerate(gram: IntMat) -> Result<Self> {
        if let Some((row, col)) = gram.symmetry_defect() {
            return Err(Error::NotSymmetric { row, col });
        }
        let det = gram.det()?;
        let signature = signature(&gram)?;
        let even = (0..gram.rows()).all(|i| gram[(i, i)].is_even());
        Ok(Lattice {
            gram,
            name: None,
            det,
            signature,
            even,
        })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(IntMat::from_rows(rows))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn gram(&self) -> &IntMat {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> &BigInt {
        &self.det
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn is_degenerate(&self) -> bool {
        self.det.is_zero()
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn is_unimodular(&self) -> bool {
        self.det.abs() == BigInt::from(1)
    }

    pub fn is_definite(&self) -> bool {
        !self.is_degenerate() && (self.signature.plus == 0 || self.signature.minus == 0)
    }

    /// gcd of all Gram entries.
    pub fn scale_gcd(&self) -> BigInt {
        let n = self.rank();
        let mut g = BigInt::zero();
        for i in 0..n {
            for j in 0..n {
                g = g.gcd(&self.gram[(i, j)]);
            }
        }
        g
    }

    /// Largest integer dividing every norm: gcd of the diagonal and twice the off-diagonal.
    pub fn norm_gcd(&self) -> BigInt {
        let n = self.rank();
        let mut g = BigInt::zero();
        for i in 0..n {
            g = g.gcd(&self.gram[(i, i)]);
            for j in i + 1..n {
                g = g.gcd(&(BigInt::from(2) * &self.gram[(i, j)]));
            }
        }
        g
    }

    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        self.gram.bilinear(x, y)
    }

    pub fn norm(&self, x: &[BigInt]) -> BigInt {
        self.pair(x, x)
    }

    /// Pairing of rational coordinate vectors.
    pub fn pair_rat(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        let g = self.gram.to_ratmat();
        let gy = g.mul_vec(y);
        x.iter()
            .zip(&gy)
            .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Rational inverse of the Gram matrix.
    pub fn gram_inverse(&self) -> Result<RatMat> {
        if self.is_degenerate() {
            return Err(Error::DegenerateLattice);
        }
        self.gram.to_ratmat().inverse()
    }

    /// The lattice spanned by the rational vectors `gens` (in this lattice's
    /// coordinates) together with this lattice. Returns the new lattice and
    /// its basis in the old coordinates.
    pub fn overlattice_from_generators(&self, gens: &RatMat) -> Result<(Lattice, RatMat)> {
        let n = self.rank();
        if gens.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "generators of length {} for a rank-{n} lattice",
                gens.cols()
            )));
        }
        let l = gens.common_denominator();
        let lq = BigRational::from_integer(l.clone());
        let mut big = IntMat::identity(n).scale(&l);
        let scaled = gens.scale(&lq).to_intmat().expect("cleared denominators");
        big = big.stack(&scaled)?;
        let (h, _) = hnf(&big);
        let basis_rows: Vec<usize> = (0..n).collect();
        let basis = h.select_rows(&basis_rows).to_ratmat().scale(&lq.recip());
        let g = basis
            .checked_mul(&self.gram.to_ratmat())?
            .checked_mul(&basis.transpose())?;
        let Some(gi) = g.to_intmat() else {
            return Err(Error::InvalidModule(
                "generators do not span an integral overlattice".into(),
            ));
        };
        Ok((Lattice::new_degenerate(gi)?, basis))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cached_invariants() {
        let u = Lattice::from_rows(&[[0, 1], [1, 0]]).unwrap();
        assert_eq!(u.det(), &BigInt::from(-1));
        assert!(u.is_even() && u.is_unimodular());
        assert_eq!(u.signature(), Signature::new(1, 1, 0));
        assert_eq!(u.norm_gcd(), BigInt::from(2));
        assert_eq!(u.scale_gcd(), BigInt::from(1));
    }

    #[test]
    fn degenerate_rejected_unless_explicit() {
        let g = IntMat::from_rows(&[[2, 2], [2, 2]]);
        assert!(matches!(
            Lattice::new(g.clone()),
            Err(Error::DegenerateLattice)
        ));
        assert!(Lattice::new_degenerate(g).unwrap().is_degenerate());
        assert!(matches!(
            Lattice::new(IntMat::from_rows(&[[0, 1], [2, 0]])),
            Err(Error::NotSymmetric { .. })
        ));
    }

    #[test]
    fn overlattice_of_a1_squared() {
        let l = Lattice::new(IntMat::diag(&[-2, -2])).unwrap();
        let half = RatMat::try_from_rows(
            vec![vec![
                BigRational::new(1.into(), 2.into()),
                BigRational::new(1.into(), 2.into()),
            ]],
            2,
        )
        .unwrap();
        let (m, _) = l.overlattice_from_generators(&half).unwrap();
        assert_eq!(m.det(), &BigInt::from(1));
        assert!(!m.is_even());
    }
}
