use serde::{Deserialize, Serialize};

use super::{discriminant_group, Lattice};
use crate::exactlinalg::Signature;
use crate::{Error, Result};

fn require_even(l: &Lattice) -> Result<()> {
    if !l.is_even() {
        return Err(Error::OddLattice);
    }
    if l.is_degenerate() {
        return Err(Error::DegenerateLattice);
    }
    Ok(())
}

/// Indefinite with `t+ + t- >= 2 + l(A_L)`: the isometry class is unique.
pub fn nikulin_unique(l: &Lattice) -> Result<bool> {
    require_even(l)?;
    let s = l.signature();
    let ell = discriminant_group(l)?.length();
    Ok(s.is_indefinite() && s.rank() >= 2 + ell)
}

/// `t+ >= 1`, `t- >= 8` and `t+ + t- >= 9 + l(A_L)`: an E8 summand splits off.
pub fn splits_e8(l: &Lattice) -> Result<bool> {
    require_even(l)?;
    let s = l.signature();
    let ell = discriminant_group(l)?.length();
    Ok(s.plus >= 1 && s.minus >= 8 && s.rank() >= 9 + ell)
}

/// `t+ >= 1`, `t- >= 1` and `t+ + t- >= 3 + l(A_L)`: a U summand splits off.
pub fn splits_u(l: &Lattice) -> Result<bool> {
    require_even(l)?;
    let s = l.signature();
    let ell = discriminant_group(l)?.length();
    Ok(s.plus >= 1 && s.minus >= 1 && s.rank() >= 3 + ell)
}

/// Invariants classifying indefinite 2-elementary even lattices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoElementary {
    pub signature: Signature,
    pub ell: usize,
    pub delta: u8,
}

/// `(signature, l, delta)` when `A_L` is 2-elementary, `None` otherwise.
///
/// `delta = 0` iff every discriminant norm is integral. On a 2-elementary group
/// the bilinear values lie in `(1/2)Z`, so checking the generators suffices.
pub fn two_elem_invariants(l: &Lattice) -> Result<Option<TwoElementary>> {
    require_even(l)?;
    let d = discriminant_group(l)?;
    if !d.is_p_elementary(2) {
        return Ok(None);
    }
    let delta = u8::from(d.generator_lifts.iter().any(|g| !g.norm(l).is_integer()));
    Ok(Some(TwoElementary {
        signature: l.signature(),
        ell: d.length(),
        delta,
    }))
}
