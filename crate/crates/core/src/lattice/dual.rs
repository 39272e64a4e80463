use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::Lattice;
use crate::exactlinalg::{snf_rational, RatMat};
use crate::{Error, Result};

/// A vector of `L ⊗ Q` in the coordinates of the host lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DualVector {
    #[serde(with = "crate::json::rat_vec")]
    pub coords: Vec<BigRational>,
}

impl DualVector {
    pub fn new(coords: Vec<BigRational>) -> Self {
        DualVector { coords }
    }

    pub fn from_ints(v: &[BigInt]) -> Self {
        DualVector::new(v.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn zero(n: usize) -> Self {
        DualVector::new(vec![BigRational::zero(); n])
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Membership in `L*`: the pairing with every basis vector is integral.
    pub fn in_dual(&self, l: &Lattice) -> bool {
        l.gram()
            .to_ratmat()
            .mul_vec(&self.coords)
            .iter()
            .all(|x| x.is_integer())
    }

    /// Membership in `L` itself.
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|x| x.is_integer())
    }

    pub fn pair(&self, l: &Lattice, other: &DualVector) -> BigRational {
        l.pair_rat(&self.coords, &other.coords)
    }

    pub fn norm(&self, l: &Lattice) -> BigRational {
        self.pair(l, self)
    }

    pub fn add(&self, other: &DualVector) -> DualVector {
        DualVector::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigRational) -> DualVector {
        DualVector::new(self.coords.iter().map(|a| a * k).collect())
    }

    /// Smallest positive integer `d` with `d * self` integral.
    pub fn order_mod_lattice(&self) -> BigInt {
        crate::exactlinalg::denominator_lcm(&self.coords)
    }
}

/// Invariant factors and generator lifts of `L*/L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscGroupData {
    #[serde(with = "crate::json::bigint_vec")]
    pub invariant_factors: Vec<BigInt>,
    pub generator_lifts: Vec<DualVector>,
    #[serde(with = "crate::json::bigint")]
    pub order: BigInt,
}

impl DiscGroupData {
    /// Minimal number of generators of the group.
    pub fn length(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// True when every invariant factor is `p`.
    pub fn is_p_elementary(&self, p: u32) -> bool {
        let p = BigInt::from(p);
        self.invariant_factors.iter().all(|d| *d == p)
    }
}

/// `A_L = L*/L` from the rational Smith form of the inverse Gram matrix.
///
/// With `S G^-1 T = D` the rows of `S G^-1` form a basis of `L*`, and the
/// row with diagonal entry `1/d` has order `d` modulo `L`. The rows with
/// `d > 1` are returned as generator lifts.
pub fn discriminant_group(l: &Lattice) -> Result<DiscGroupData> {
    let ginv = l.gram_inverse()?;
    let snf = snf_rational(&ginv)?;
    let rows: RatMat = snf.s.to_ratmat().checked_mul(&ginv)?;
    let mut factors = Vec::new();
    let mut lifts = Vec::new();
    for (i, d) in snf.diagonal().iter().enumerate() {
        let inv = d.recip();
        if !inv.is_integer() {
            return Err(Error::InvalidModule(format!(
                "unexpected Smith entry {d} for an integral Gram matrix"
            )));
        }
        let k = inv.to_integer();
        if k.is_one() {
            continue;
        }
        factors.push(k);
        lifts.push(DualVector::new(rows.row(i).to_vec()));
    }
    let order: BigInt = factors.iter().product();
    debug_assert_eq!(&order, &num_traits::Signed::abs(l.det()));
    Ok(DiscGroupData {
        invariant_factors: factors,
        generator_lifts: lifts,
        order,
    })
}
