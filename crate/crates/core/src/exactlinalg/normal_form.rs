use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{div_floor, ext_gcd, IntMat, RatMat};
use crate::{Error, Result};

/// Row Hermite normal form. Returns `(H, U)` with `U * A = H`, `U` unimodular,
/// pivots positive and every entry above a pivot reduced into `[0, pivot)`.
pub fn hnf(a: &IntMat) -> (IntMat, IntMat) {
    let m = a.rows();
    let n = a.cols();
    let mut h = a.clone();
    let mut u = IntMat::identity(m);
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        // Fold every nonzero entry below r into row r by gcd steps.
        for i in r + 1..m {
            if h[(i, c)].is_zero() {
                continue;
            }
            let x = h[(r, c)].clone();
            let y = h[(i, c)].clone();
            let (g, s, t) = ext_gcd(&x, &y);
            let xg = &x / &g;
            let yg = &y / &g;
            // [s t; -y/g x/g] has determinant 1.
            h.combine_rows(r, i, &s, &t, &-&yg, &xg);
            u.combine_rows(r, i, &s, &t, &-&yg, &xg);
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        let p = h[(r, c)].clone();
        for i in 0..r {
            let q = div_floor(&h[(i, c)], &p);
            if !q.is_zero() {
                h.add_row_multiple(i, r, &-&q);
                u.add_row_multiple(i, r, &-&q);
            }
        }
        r += 1;
    }
    (h, u)
}

/// Smith normal form `S * A * T = D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub d: IntMat,
    pub s: IntMat,
    pub t: IntMat,
}

impl Snf {
    /// The diagonal entries, including trailing zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    /// The nonzero invariant factors.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal()
            .into_iter()
            .filter(|x| !x.is_zero())
            .collect()
    }
}

fn min_abs_pivot(d: &IntMat, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in k..d.rows() {
        for j in k..d.cols() {
            let v = d[(i, j)].abs();
            if v.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, _, b)| &v < b) {
                let one = v.is_one();
                best = Some((i, j, v));
                if one {
                    let (i, j, _) = best.unwrap();
                    return Some((i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Integer Smith normal form with transforms, pivoting on the entry of least
/// absolute value.
pub fn snf(a: &IntMat) -> Snf {
    let m = a.rows();
    let n = a.cols();
    let mut d = a.clone();
    let mut s = IntMat::identity(m);
    let mut t = IntMat::identity(n);
    for k in 0..m.min(n) {
        let Some((pi, pj)) = min_abs_pivot(&d, k) else {
            break;
        };
        d.swap_rows(k, pi);
        s.swap_rows(k, pi);
        d.swap_cols(k, pj);
        t.swap_cols(k, pj);
        loop {
            let mut dirty = false;
            for i in k + 1..m {
                if d[(i, k)].is_zero() {
                    continue;
                }
                let q = div_floor(&d[(i, k)], &d[(k, k)]);
                d.add_row_multiple(i, k, &-&q);
                s.add_row_multiple(i, k, &-&q);
                if !d[(i, k)].is_zero() {
                    dirty = true;
                }
            }
            for j in k + 1..n {
                if d[(k, j)].is_zero() {
                    continue;
                }
                let q = div_floor(&d[(k, j)], &d[(k, k)]);
                d.add_col_multiple(j, k, &-&q);
                t.add_col_multiple(j, k, &-&q);
                if !d[(k, j)].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // Row and column are clear; enforce divisibility on the rest.
                let p = d[(k, k)].clone();
                let bad = (k + 1..m).find(|&i| (k + 1..n).any(|j| !d[(i, j)].is_multiple_of(&p)));
                match bad {
                    None => break,
                    Some(i) => {
                        d.add_row_multiple(k, i, &BigInt::one());
                        s.add_row_multiple(k, i, &BigInt::one());
                        continue;
                    }
                }
            }
            // A smaller remainder appeared; move the new minimum to (k, k).
            let (pi, pj) = min_abs_pivot_cross(&d, k);
            d.swap_rows(k, pi);
            s.swap_rows(k, pi);
            d.swap_cols(k, pj);
            t.swap_cols(k, pj);
        }
        if d[(k, k)].is_negative() {
            d.negate_row(k);
            s.negate_row(k);
        }
    }
    Snf { d, s, t }
}

/// Minimum over row k and column k only (other entries are untouched by the
/// reduction step, so the cross suffices to make progress).
fn min_abs_pivot_cross(d: &IntMat, k: usize) -> (usize, usize) {
    let mut best = (k, k, d[(k, k)].abs());
    for i in k + 1..d.rows() {
        let v = d[(i, k)].abs();
        if !v.is_zero() && v < best.2 {
            best = (i, k, v);
        }
    }
    for j in k + 1..d.cols() {
        let v = d[(k, j)].abs();
        if !v.is_zero() && v < best.2 {
            best = (k, j, v);
        }
    }
    (best.0, best.1)
}

/// Rational Smith form `S * A * T = D` of a nonsingular rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfRational {
    pub d: RatMat,
    pub s: IntMat,
    pub t: IntMat,
}

impl SnfRational {
    pub fn diagonal(&self) -> Vec<BigRational> {
        self.d.diagonal()
    }
}

/// Clears the lcm of all denominators, runs the integer SNF and rescales.
///
/// The diagonal is returned in decreasing order, so each entry is an integer
/// multiple of the next (for an inverse Gram matrix it reads `1, …, 1, 1/2, …`).
pub fn snf_rational(a: &RatMat) -> Result<SnfRational> {
    if a.rows() != a.cols() {
        return Err(Error::DimensionMismatch(
            "snf_rational of non-square matrix".into(),
        ));
    }
    let n = a.rows();
    let l = a.common_denominator();
    let scaled = a.scale(&BigRational::from_integer(l.clone()));
    let ai = scaled.to_intmat().expect("cleared denominators");
    let base = snf(&ai);
    if (0..n).any(|i| base.d[(i, i)].is_zero()) {
        return Err(Error::Singular);
    }
    let rev: Vec<usize> = (0..n).rev().collect();
    let s = base.s.select_rows(&rev);
    let t = base.t.transpose().select_rows(&rev).transpose();
    let d = RatMat::diag(
        rev.iter()
            .map(|&i| BigRational::new(base.d[(i, i)].clone(), l.clone()))
            .collect(),
    );
    Ok(SnfRational { d, s, t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::rat;

    fn is_unimodular(m: &IntMat) -> bool {
        m.det().unwrap().abs().is_one()
    }

    #[test]
    fn hnf_identity() {
        let (h, u) = hnf(&IntMat::identity(3));
        assert_eq!(h, IntMat::identity(3));
        assert_eq!(u, IntMat::identity(3));
    }

    #[test]
    fn hnf_two_by_two() {
        let a = IntMat::from_rows(&[[2, 4], [6, 8]]);
        let (h, u) = hnf(&a);
        assert_eq!(h, IntMat::from_rows(&[[2, 0], [0, 4]]));
        assert_eq!(&u * &a, h);
        assert!(is_unimodular(&u));
    }

    #[test]
    fn hnf_zero() {
        let (h, u) = hnf(&IntMat::zeros(2, 2));
        assert!(h.is_zero());
        assert_eq!(u, IntMat::identity(2));
    }

    #[test]
    fn hnf_reduces_above_pivot() {
        let a = IntMat::from_rows(&[[1, 7, 3], [0, 3, -5]]);
        let (h, u) = hnf(&a);
        assert_eq!(&u * &a, h);
        assert_eq!(h, IntMat::from_rows(&[[1, 1, 13], [0, 3, -5]]));
    }

    #[test]
    fn snf_examples() {
        let a = IntMat::from_rows(&[[2, 4], [6, 8]]);
        let r = snf(&a);
        assert_eq!(r.d, IntMat::diag(&[2, 4]));
        assert_eq!(&(&r.s * &a) * &r.t, r.d);
        assert!(is_unimodular(&r.s) && is_unimodular(&r.t));
        assert_eq!(snf(&IntMat::identity(4)).d, IntMat::identity(4));
        assert_eq!(
            snf(&IntMat::from_rows(&[[0, 1], [1, 0]])).d,
            IntMat::identity(2)
        );
    }

    #[test]
    fn snf_rectangular_with_kernel() {
        let a = IntMat::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
        let r = snf(&a);
        assert_eq!(r.d, IntMat::diag(&[2, 6, 12]));
        let b = IntMat::from_rows(&[[1, 2, 3], [2, 4, 6]]);
        let r = snf(&b);
        assert_eq!(r.diagonal(), vec![BigInt::from(1), BigInt::zero()]);
        assert_eq!(&(&r.s * &b) * &r.t, r.d);
    }

    #[test]
    fn snf_rational_scalar() {
        let a = RatMat::diag(vec![rat(1, 3)]);
        let r = snf_rational(&a).unwrap();
        assert_eq!(r.diagonal(), vec![rat(1, 3)]);
        assert_eq!(r.s, IntMat::identity(1));
        assert_eq!(r.t, IntMat::identity(1));
    }

    #[test]
    fn snf_rational_rejects_singular() {
        let a = IntMat::from_rows(&[[1, 2], [2, 4]]).to_ratmat();
        assert!(matches!(snf_rational(&a), Err(Error::Singular)));
    }

    #[test]
    fn snf_rational_of_inverse_gram() {
        // A1 + A1(2): inverse has diagonal 1/2, 1/4.
        let g = IntMat::diag(&[2, 4]).to_ratmat();
        let r = snf_rational(&g.inverse().unwrap()).unwrap();
        assert_eq!(r.diagonal(), vec![rat(1, 2), rat(1, 4)]);
        let sat = &(&r.s.to_ratmat() * &g.inverse().unwrap()) * &r.t.to_ratmat();
        assert_eq!(sat, r.d);
    }
}
