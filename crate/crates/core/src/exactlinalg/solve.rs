use num_rational::BigRational;
use num_traits::Zero;

use super::{hnf, IntMat, RatMat};
use crate::{Error, Result};

/// A particular solution plus a saturated integer basis of the kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub x: Vec<BigRational>,
    pub kernel: IntMat,
}

impl Solution {
    pub fn is_unique(&self) -> bool {
        self.kernel.rows() == 0
    }
}

/// Solves `A x = b` exactly. Returns `None` when the system is inconsistent.
pub fn solve_rational(a: &IntMat, b: &[BigRational]) -> Result<Option<Solution>> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} equations, right-hand side of length {}",
            a.rows(),
            b.len()
        )));
    }
    let m = a.rows();
    let n = a.cols();
    let mut aug = RatMat::from_fn(m, n + 1, |i, j| {
        if j < n {
            BigRational::from_integer(a[(i, j)].clone())
        } else {
            b[i].clone()
        }
    });
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !aug[(i, c)].is_zero()) else {
            continue;
        };
        aug.swap_rows(r, p);
        let piv = aug[(r, c)].clone();
        for j in c..=n {
            aug[(r, j)] /= &piv;
        }
        for i in 0..m {
            if i == r || aug[(i, c)].is_zero() {
                continue;
            }
            let f = aug[(i, c)].clone();
            for j in c..=n {
                let d = &f * &aug[(r, j)];
                aug[(i, j)] -= d;
            }
        }
        pivots.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    if (r..m).any(|i| !aug[(i, n)].is_zero()) {
        return Ok(None);
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[(i, n)].clone();
    }
    Ok(Some(Solution {
        x,
        kernel: kernel_saturated(a),
    }))
}

/// Rows form a basis of `{x in Z^n : A x = 0}`.
pub fn kernel_saturated(a: &IntMat) -> IntMat {
    let (h, u) = hnf(&a.transpose());
    let zero_rows: Vec<usize> = (0..h.rows()).filter(|&i| h.is_row_zero(i)).collect();
    u.select_rows(&zero_rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::{rat, snf};
    use num_bigint::BigInt;
    use num_traits::One;

    #[test]
    fn identity_solve() {
        let b = vec![rat(1, 2), rat(-3, 1), rat(5, 7)];
        let s = solve_rational(&IntMat::identity(3), &b).unwrap().unwrap();
        assert_eq!(s.x, b);
        assert!(s.is_unique());
    }

    #[test]
    fn diagonal_solve() {
        let a = IntMat::diag(&[2, 2]);
        let s = solve_rational(&a, &[rat(1, 1), rat(3, 1)])
            .unwrap()
            .unwrap();
        assert_eq!(s.x, vec![rat(1, 2), rat(3, 2)]);
    }

    #[test]
    fn inconsistent_and_underdetermined() {
        let a = IntMat::from_rows(&[[1, 1], [2, 2]]);
        assert!(solve_rational(&a, &[rat(1, 1), rat(3, 1)])
            .unwrap()
            .is_none());
        let s = solve_rational(&a, &[rat(1, 1), rat(2, 1)])
            .unwrap()
            .unwrap();
        assert_eq!(&s.x[0] + &s.x[1], rat(1, 1));
        assert_eq!(s.kernel.rows(), 1);
    }

    #[test]
    fn dimension_mismatch() {
        assert!(solve_rational(&IntMat::identity(2), &[rat(1, 1)]).is_err());
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_saturated(&IntMat::from_rows(&[[1, 1]]));
        assert_eq!(k.rows(), 1);
        assert_eq!(&k[(0, 0)] + &k[(0, 1)], BigInt::zero());
        assert!(k[(0, 0)].clone() * &k[(0, 0)] == BigInt::one());
        let k = kernel_saturated(&IntMat::from_rows(&[[2, 2]]));
        assert_eq!(snf(&k).invariant_factors(), vec![BigInt::one()]);
        assert_eq!(kernel_saturated(&IntMat::identity(3)).rows(), 0);
    }
}
