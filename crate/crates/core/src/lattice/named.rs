use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::Lattice;
use crate::exactlinalg::{IntMat, RatMat};
use crate::{Error, Result};

/// Block-diagonal sum.
pub fn direct_sum(a: &Lattice, b: &Lattice) -> Lattice {
    let g = a.gram().block_diag(b.gram());
    let mut l = Lattice::new_degenerate(g).expect("block sum of symmetric matrices");
    if let (Some(x), Some(y)) = (a.name(), b.name()) {
        l = l.with_name(format!("{x}+{y}"));
    }
    l
}

/// `L(m)`: every Gram entry multiplied by `m`.
pub fn rescale(l: &Lattice, m: i64) -> Result<Lattice> {
    if m == 0 {
        return Err(Error::InvalidModule("rescaling by zero".into()));
    }
    let g = l.gram().scale(&BigInt::from(m));
    let mut out = Lattice::new_degenerate(g)?;
    if let Some(n) = l.name() {
        out = out.with_name(format!("{n}({m})"));
    }
    Ok(out)
}

/// Negative definite E8, nodes 1-3-4-5-6-7-8 in a chain with 2 attached to 4.
fn e8() -> IntMat {
    let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
    let mut g = IntMat::diag(&[-2; 8]);
    for (i, j) in edges {
        g[(i, j)] = BigInt::from(1);
        g[(j, i)] = BigInt::from(1);
    }
    g
}

/// `<-2>^n` enlarged by the half-sums of the given index sets.
fn half_sum_overlattice(n: usize, sets: &[&[usize]]) -> Result<Lattice> {
    let base = Lattice::new(IntMat::diag(&vec![-2; n]))?;
    let half = BigRational::new(1.into(), 2.into());
    let rows = sets
        .iter()
        .map(|s| {
            (0..n)
                .map(|i| {
                    if s.contains(&i) {
                        half.clone()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let gens = RatMat::try_from_rows(rows, n)?;
    let (l, _) = base.overlattice_from_generators(&gens)?;
    Ok(l)
}

fn parse_int(s: &str, whole: &str) -> Result<i64> {
    s.trim()
        .parse()
        .map_err(|_| Error::UnknownName(whole.to_string()))
}

fn base_term(base: &str, whole: &str) -> Result<Lattice> {
    let unknown = || Error::UnknownName(whole.to_string());
    if let Some(inner) = base
        .strip_prefix("diag(")
        .and_then(|s| s.strip_suffix(')'))
        .or_else(|| base.strip_prefix('<').and_then(|s| s.strip_suffix('>')))
    {
        let entries = inner
            .split(',')
            .map(|x| parse_int(x, whole))
            .collect::<Result<Vec<_>>>()?;
        if entries.is_empty() {
            return Err(unknown());
        }
        return Lattice::new(IntMat::diag(&entries));
    }
    let (head, m) = match base.split_once('(') {
        Some((h, rest)) => {
            let m = rest.strip_suffix(')').ok_or_else(unknown)?;
            (h, Some(parse_int(m, whole)?))
        }
        None => (base, None),
    };
    let l = match head {
        "U" => Lattice::from_rows(&[[0, 1], [1, 0]])?,
        "E8" => Lattice::new(e8())?,
        "A1" => Lattice::new(IntMat::diag(&[-2]))?,
        "Nikulin" => half_sum_overlattice(8, &[&[0, 1, 2, 3, 4, 5, 6, 7]])?,
        "M_Z2_3" => half_sum_overlattice(
            14,
            &[
                &[0, 1, 2, 3, 4, 5, 6, 7],
                &[4, 5, 6, 7, 8, 9, 10, 11],
                &[0, 1, 4, 5, 8, 9, 12, 13],
            ],
        )?,
        _ => return Err(unknown()),
    };
    match m {
        Some(m) => rescale(&l, m),
        None => Ok(l),
    }
}

/// Builds a standard lattice from its name.
///
/// Accepted terms: `U`, `U(m)`, `E8`, `A1` (the root lattice `<-2>`),
/// `Nikulin`, `M_Z2_3`, `diag(n1,...,nk)` or `<n1,...,nk>`. Any term but the
/// diagonal ones may carry a scale `(m)`; any term may carry a power `^k`, and
/// terms may be joined by `+` into an orthogonal direct sum.
pub fn make_named(name: &str) -> Result<Lattice> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::UnknownName(name.to_string()));
    }
    let mut acc: Option<Lattice> = None;
    for term in split_top_level(&compact) {
        let (base, power) = match term.rsplit_once('^') {
            Some((b, k)) => (b, parse_int(k, name)?),
            None => (term, 1),
        };
        if power < 1 || base.is_empty() {
            return Err(Error::UnknownName(name.to_string()));
        }
        let block = base_term(base, name)?;
        for _ in 0..power {
            acc = Some(match acc {
                None => block.clone(),
                Some(a) => direct_sum(&a, &block),
            });
        }
    }
    let l = acc.expect("at least one term");
    let mut out = Lattice::new(l.gram().clone())?;
    out = out.with_name(compact);
    Ok(out)
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '<' => depth += 1,
            ')' | '>' => depth -= 1,
            '+' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::Signature;

    #[test]
    fn u_and_rescaled() {
        let u = make_named("U").unwrap();
        assert_eq!(u.det(), &BigInt::from(-1));
        let u2 = make_named("U(2)").unwrap();
        assert_eq!(u2.gram(), &IntMat::from_rows(&[[0, 2], [2, 0]]));
        assert_eq!(u2.det(), &BigInt::from(-4));
        assert_eq!(rescale(&u, 2).unwrap().gram(), u2.gram());
    }

    #[test]
    fn e8_is_negative_definite_unimodular() {
        let e = make_named("E8").unwrap();
        assert_eq!(e.det(), &BigInt::from(1));
        assert!(e.is_even());
        assert_eq!(e.signature(), Signature::new(0, 8, 0));
    }

    #[test]
    fn nikulin_lattice() {
        let n = make_named("Nikulin").unwrap();
        assert_eq!(n.rank(), 8);
        assert!(n.is_even());
        assert_eq!(n.det(), &BigInt::from(64));
    }

    #[test]
    fn sums_and_powers() {
        let l = make_named("U + U(2) + <-4>^2").unwrap();
        assert_eq!(l.rank(), 6);
        assert_eq!(l.signature(), Signature::new(2, 4, 0));
        assert_eq!(l.det(), &BigInt::from(64));
        assert_eq!(
            make_named("diag(2,-2)").unwrap().gram(),
            &IntMat::diag(&[2, -2])
        );
    }

    #[test]
    fn unknown_names() {
        for bad in ["", "E7", "U(x)", "diag()", "<1,0>", "U^0"] {
            assert!(make_named(bad).is_err(), "{bad}");
        }
    }
}
