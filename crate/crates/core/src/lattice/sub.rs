use num_traits::One;

use super::{DualVector, Lattice};
use crate::exactlinalg::{hnf, kernel_saturated, snf, IntMat};
use crate::{Error, Result};

/// A sublattice given by generators in host coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SublatticeData {
    pub host: Lattice,
    pub basis_coords: IntMat,
    pub induced_gram: IntMat,
    /// Set when the induced form is singular (possible for complements).
    pub degenerate: bool,
}

impl SublatticeData {
    pub fn rank(&self) -> usize {
        self.basis_coords.rows()
    }

    /// The induced lattice; may be degenerate.
    pub fn lattice(&self) -> Lattice {
        Lattice::new_degenerate(self.induced_gram.clone()).expect("induced Gram is symmetric")
    }
}

fn check_cols(host: &Lattice, gens: &IntMat) -> Result<()> {
    if gens.cols() != host.rank() {
        return Err(Error::DimensionMismatch(format!(
            "generators of length {} in a rank-{} lattice",
            gens.cols(),
            host.rank()
        )));
    }
    Ok(())
}

fn make_data(host: &Lattice, basis: IntMat) -> Result<SublatticeData> {
    let induced = host.gram().congruence(&basis)?;
    let degenerate = induced.det()? == num_bigint::BigInt::from(0);
    Ok(SublatticeData {
        host: host.clone(),
        basis_coords: basis,
        induced_gram: induced,
        degenerate,
    })
}

/// The span of independent generators with its induced Gram matrix.
pub fn sublattice(host: &Lattice, gens: &IntMat) -> Result<SublatticeData> {
    check_cols(host, gens)?;
    if gens.rank() < gens.rows() {
        return Err(Error::DependentGenerators);
    }
    make_data(host, gens.clone())
}

/// True iff the span of `gens` is saturated in the host.
pub fn is_primitive(host: &Lattice, gens: &IntMat) -> Result<bool> {
    check_cols(host, gens)?;
    if gens.rank() < gens.rows() {
        return Err(Error::DependentGenerators);
    }
    Ok(snf(gens).invariant_factors().iter().all(One::is_one))
}

/// Basis of `(span ⊗ Q) ∩ Z^n`, in Hermite normal form.
pub fn saturation(host: &Lattice, gens: &IntMat) -> Result<IntMat> {
    check_cols(host, gens)?;
    let sat = kernel_saturated(&kernel_saturated(gens));
    let (h, _) = hnf(&sat);
    let keep: Vec<usize> = (0..h.rows()).filter(|&i| !h.is_row_zero(i)).collect();
    Ok(h.select_rows(&keep))
}

/// `{x in L : x . g = 0 for all generators g}`, with a degeneracy flag.
pub fn orthogonal_complement(host: &Lattice, gens: &IntMat) -> Result<SublatticeData> {
    check_cols(host, gens)?;
    let n = host.rank();
    if gens.rows() == 0 {
        return make_data(host, IntMat::identity(n));
    }
    let pairing = gens.checked_mul(host.gram())?;
    make_data(host, kernel_saturated(&pairing))
}

/// True iff every coordinate of `v` is an integer.
pub fn contains(l: &Lattice, v: &DualVector) -> bool {
    v.len() == l.rank() && v.is_integral()
}
