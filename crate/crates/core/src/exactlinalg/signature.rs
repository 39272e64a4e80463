use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{IntMat, RatMat};
use crate::{Error, Result};

/// Inertia of a symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

impl Signature {
    pub fn new(plus: usize, minus: usize, zero: usize) -> Self {
        Signature { plus, minus, zero }
    }

    pub fn rank(&self) -> usize {
        self.plus + self.minus
    }

    pub fn dim(&self) -> usize {
        self.plus + self.minus + self.zero
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.zero == 0
    }

    pub fn is_indefinite(&self) -> bool {
        self.plus > 0 && self.minus > 0
    }
}

/// Exact inertia by symmetric congruence reduction over the rationals.
pub fn signature(g: &IntMat) -> Result<Signature> {
    if let Some((row, col)) = g.symmetry_defect() {
        return Err(Error::NotSymmetric { row, col });
    }
    let mut a = g.to_ratmat();
    let mut sig = Signature::new(0, 0, 0);
    let mut active: Vec<usize> = (0..g.rows()).collect();
    while !active.is_empty() {
        if let Some(&p) = active.iter().find(|&&i| !a[(i, i)].is_zero()) {
            if a[(p, p)].is_positive() {
                sig.plus += 1;
            } else {
                sig.minus += 1;
            }
            active.retain(|&i| i != p);
            eliminate(&mut a, p, &active);
            continue;
        }
        // Zero diagonal: find an off-diagonal entry for a hyperbolic pair.
        let pair = active.iter().find_map(|&i| {
            active
                .iter()
                .find(|&&j| j != i && !a[(i, j)].is_zero())
                .map(|&j| (i, j))
        });
        match pair {
            None => {
                sig.zero += active.len();
                break;
            }
            Some((i, j)) => {
                // e_i + e_j has norm 2 a_ij != 0; replace row/col i by it.
                for &k in active.iter() {
                    let v = &a[(i, k)] + &a[(j, k)];
                    a[(i, k)] = v;
                }
                for &k in active.iter() {
                    let v = &a[(k, i)] + &a[(k, j)];
                    a[(k, i)] = v;
                }
            }
        }
    }
    Ok(sig)
}

/// Clears row and column `p` against the remaining indices.
fn eliminate(a: &mut RatMat, p: usize, rest: &[usize]) {
    let piv = a[(p, p)].clone();
    for &i in rest {
        if a[(i, p)].is_zero() {
            continue;
        }
        let f: BigRational = &a[(i, p)] / &piv;
        for &j in rest {
            let d = &f * &a[(p, j)];
            a[(i, j)] -= d;
        }
    }
    for &i in rest {
        a[(i, p)] = BigRational::zero();
        a[(p, i)] = BigRational::zero();
    }
}
