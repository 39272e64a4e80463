use std::collections::HashSet;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{FiniteQuadraticModule, GroupElement};
use crate::exactlinalg::RatMat;
use crate::lattice::Lattice;
use crate::{Error, Result};

/// A subgroup on which `q` vanishes, with canonical generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotropicSubgroup {
    pub generators: Vec<GroupElement>,
    pub order: u64,
}

/// Every nonzero `x` with `q(x) = 0`, in lexicographic exponent order.
pub fn isotropic_elements(m: &FiniteQuadraticModule) -> Result<Vec<GroupElement>> {
    Ok(m.elements()?
        .into_iter()
        .filter(|x| !x.is_zero() && m.is_isotropic(x))
        .collect())
}

/// Membership bitmap of the subgroup generated by `gens`.
fn span_bits(m: &FiniteQuadraticModule, gens: &[GroupElement]) -> Vec<bool> {
    let mut bits = vec![false; m.order() as usize];
    let mut members = vec![m.zero()];
    bits[0] = true;
    for g in gens {
        let mut frontier = members.clone();
        loop {
            let mut next = Vec::new();
            for x in &frontier {
                let y = m.add(x, g);
                let i = m.index_of(&y.0);
                if !bits[i] {
                    bits[i] = true;
                    next.push(y);
                }
            }
            if next.is_empty() {
                break;
            }
            members.extend(next.iter().cloned());
            frontier = next;
        }
    }
    bits
}

/// Elements of the subgroup generated by `gens`, in lexicographic order.
pub(crate) fn span(m: &FiniteQuadraticModule, gens: &[GroupElement]) -> Result<Vec<GroupElement>> {
    let all = m.elements()?;
    let bits = span_bits(m, gens);
    Ok(all
        .into_iter()
        .zip(bits)
        .filter(|(_, b)| *b)
        .map(|(x, _)| x)
        .collect())
}

/// Lexicographically greedy generators: walk the members in order and keep
/// each one not already in the span of those kept.
fn canonical_generators(
    m: &FiniteQuadraticModule,
    all: &[GroupElement],
    bits: &[bool],
) -> Vec<GroupElement> {
    let mut gens = Vec::new();
    let mut cur = span_bits(m, &gens);
    for (x, &inside) in all.iter().zip(bits) {
        if inside && !cur[m.index_of(&x.0)] {
            gens.push(x.clone());
            cur = span_bits(m, &gens);
        }
    }
    gens
}

/// All isotropic subgroups including the trivial one, ordered by size and
/// then by their sorted member lists.
pub fn isotropic_subgroups(m: &FiniteQuadraticModule) -> Result<Vec<IsotropicSubgroup>> {
    let all = m.elements()?;
    let iso: Vec<GroupElement> = isotropic_elements(m)?;
    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    let trivial = span_bits(m, &[]);
    seen.insert(trivial.clone());
    let mut found = vec![(trivial.clone(), Vec::<GroupElement>::new())];
    let mut layer = vec![(trivial, Vec::<GroupElement>::new())];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for (bits, gens) in &layer {
            for x in &iso {
                if bits[m.index_of(&x.0)] {
                    continue;
                }
                // H + <x> is isotropic iff b(g, x) = 0 on generators of H.
                if gens.iter().any(|g| m.b_units(&g.0, &x.0) != 0) {
                    continue;
                }
                let mut g2 = gens.clone();
                g2.push(x.clone());
                let b2 = span_bits(m, &g2);
                if seen.insert(b2.clone()) {
                    found.push((b2.clone(), g2.clone()));
                    next.push((b2, g2));
                }
            }
        }
        layer = next;
    }
    let mut out: Vec<(u64, Vec<usize>, IsotropicSubgroup)> = found
        .into_iter()
        .map(|(bits, _)| {
            let members: Vec<usize> = (0..bits.len()).filter(|&i| bits[i]).collect();
            let generators = canonical_generators(m, &all, &bits);
            let order = members.len() as u64;
            (order, members, IsotropicSubgroup { generators, order })
        })
        .collect();
    out.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(out.into_iter().map(|(_, _, h)| h).collect())
}

/// The overlattice of `l` obtained by adjoining lifts of `h`. The subgroup is
/// read against `FiniteQuadraticModule::from_lattice(l)`. Returns the new
/// lattice and its basis in the coordinates of `l`.
pub fn overlattice(l: &Lattice, h: &IsotropicSubgroup) -> Result<(Lattice, RatMat)> {
    let m = FiniteQuadraticModule::from_lattice(l)?;
    for g in &h.generators {
        if g.0.len() != m.len() || g.0.iter().zip(m.orders()).any(|(e, d)| e >= d) {
            return Err(Error::InvalidModule(format!(
                "{g} is not an element of the module"
            )));
        }
    }
    for x in span(&m, &h.generators)? {
        if !m.is_isotropic(&x) {
            return Err(Error::NotIsotropic {
                element: x.to_string(),
                value: crate::exactlinalg::fmt_rat(&m.q_value(&x)),
            });
        }
    }
    let rows: Vec<Vec<BigRational>> = h
        .generators
        .iter()
        .map(|g| m.lift(g).expect("module built from lattice").coords)
        .collect();
    let gens = RatMat::try_from_rows(rows, l.rank())?;
    let (over, basis) = l.overlattice_from_generators(&gens)?;
    Ok((Lattice::new(over.gram().clone())?, basis))
}
