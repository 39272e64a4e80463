use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::curvelattice::CurveLattice;
use super::data::{self, Term};
use super::quotient::{quotient_by_involution, FixedPointData, Quotient};
use super::{CurveConfig, InvolutionAction};
use crate::exactlinalg::RatMat;
use crate::{Error, Result};

/// The 20-curve configuration on the quotient and the lattice it generates
/// together with the three half-sums.
#[derive(Clone, Debug)]
pub struct XPrime {
    pub config: CurveConfig,
    pub quotient: Quotient,
    pub lattice: CurveLattice,
    /// Each relation with whether it holds against all 20 curves.
    pub relations: Vec<(String, bool)>,
    pub census: IncidenceCensus,
}

/// How far the relations alone pin down the `C.N` incidences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncidenceCensus {
    /// Largest multiplicity tried for each `C_i . N_k`.
    pub bound: i64,
    /// Number of incidence columns in `0..=bound` satisfying every relation
    /// paired with `N_k`, for each `k`.
    pub per_column: Vec<usize>,
    /// Whether the all-disjoint column is among them for every `k`.
    pub disjoint_consistent: bool,
}

/// A term as a rational combination of the 20 curves.
pub fn term_vector(t: Term) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); 20];
    let combo: data::Combo = match t {
        Term::Curve(i) => {
            v[i - 1] = BigRational::from_integer(1.into());
            return v;
        }
        Term::HalfN => data::HALF_N,
        Term::Lambda1 => data::LAMBDA_1,
        Term::Lambda2 => data::LAMBDA_2,
    };
    for &(i, p, q) in combo {
        v[i - 1] += BigRational::new(BigInt::from(p), BigInt::from(q));
    }
    v
}

/// `lhs - sum(coefficient * term)` for one of the published relations.
fn relation_defect(lhs: usize, terms: &[(i64, Term)]) -> Vec<BigRational> {
    let mut v = term_vector(Term::Curve(lhs));
    for &(c, t) in terms {
        let c = BigRational::from_integer(BigInt::from(c));
        for (a, b) in v.iter_mut().zip(term_vector(t)) {
            *a -= &c * b;
        }
    }
    v
}

/// Twice the pairing of `t` with `N_k` when `C_i . N_k = col[i-1]` and the
/// `N` curves are disjoint (-2)-curves.
fn twice_pair_with_n(t: Term, col: &[i64], k: usize) -> i64 {
    let n_self = |j: usize| if j == k { -2 } else { 0 };
    let entry = |i: usize| if i <= 12 { col[i - 1] } else { n_self(i - 12) };
    match t {
        Term::Curve(i) => 2 * entry(i),
        Term::HalfN => data::HALF_N.iter().map(|&(i, _, _)| entry(i)).sum(),
        Term::Lambda1 => data::LAMBDA_1.iter().map(|&(i, _, _)| entry(i)).sum(),
        Term::Lambda2 => data::LAMBDA_2.iter().map(|&(i, _, _)| entry(i)).sum(),
    }
}

fn column_ok(col: &[i64], k: usize) -> bool {
    data::XPRIME_RELATIONS.iter().all(|&(_, lhs, terms)| {
        let rhs: i64 = terms
            .iter()
            .map(|&(c, t)| c * twice_pair_with_n(t, col, k))
            .sum();
        twice_pair_with_n(Term::Curve(lhs), col, k) == rhs
    })
}

/// Counts the incidence columns consistent with the relations.
pub fn incidence_census(bound: i64) -> IncidenceCensus {
    let base = (bound + 1) as usize;
    let total = base.pow(12);
    let mut per_column = vec![0; 8];
    let mut col = vec![0i64; 12];
    for code in 0..total {
        let mut rest = code;
        for c in col.iter_mut() {
            *c = (rest % base) as i64;
            rest /= base;
        }
        for (k, count) in per_column.iter_mut().enumerate() {
            if column_ok(&col, k + 1) {
                *count += 1;
            }
        }
    }
    let zero = vec![0; 12];
    IncidenceCensus {
        bound,
        per_column,
        disjoint_consistent: (1..=8).all(|k| column_ok(&zero, k)),
    }
}

/// Builds the quotient configuration by the involution `iota_011`, adds the
/// eight exceptional curves over its fixed points and checks every published
/// relation against all 20 curves.
///
/// The fixed points lie off the 24 curves, so the exceptional curves are
/// disjoint from the images of those curves and from each other.
pub fn reconstruct_xprime(base24: &CurveConfig) -> Result<XPrime> {
    let act = InvolutionAction::from_one_based(&data::IOTA_011)?;
    let quotient = quotient_by_involution(base24, &act, &FixedPointData::default())?;
    let expected: Vec<(String, String)> = data::ORBITS_011
        .iter()
        .map(|&(a, b)| (format!("R{a}"), format!("R{b}")))
        .collect();
    if quotient.orbits != expected {
        return Err(Error::Reconstruction(format!(
            "orbits {:?} differ from the expected pairing",
            quotient.orbits
        )));
    }
    let labels = data::xprime_labels();
    let c_part = quotient.config.relabel(labels[..12].to_vec())?;
    let n_gram: Vec<Vec<i64>> = (0..8)
        .map(|i| (0..8).map(|j| if i == j { -2 } else { 0 }).collect())
        .collect();
    let n_part = CurveConfig::from_gram(labels[12..].to_vec(), &n_gram)?;
    let config = c_part.disjoint_union(&n_part)?;
    let relations: Vec<(String, bool)> = data::XPRIME_RELATIONS
        .iter()
        .map(|&(name, lhs, terms)| {
            let d = relation_defect(lhs, terms);
            (
                name.to_string(),
                config.pairing_vector(&d).iter().all(Zero::is_zero),
            )
        })
        .collect();
    if let Some((name, _)) = relations.iter().find(|(_, ok)| !ok) {
        return Err(Error::Reconstruction(format!("relation for {name} fails")));
    }
    let rows = data::XPRIME_BASIS.iter().map(|&t| term_vector(t)).collect();
    let lattice = CurveLattice::new(config.clone(), RatMat::try_from_rows(rows, 20)?)?;
    Ok(XPrime {
        config,
        quotient,
        lattice,
        relations,
        census: incidence_census(2),
    })
}
