use num_rational::BigRational;

use crate::curveconfig::data;
use crate::exactlinalg::rat;

/// The printed values the checkers compare against. Nothing here feeds the
/// reconstruction, so perturbing a field tests the checker alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaperData {
    pub q_gram: Vec<Vec<i64>>,
    /// Diagonal of the rational Smith form of the inverse `Q` Gram matrix.
    pub q_inverse_snf: Vec<BigRational>,
    pub q_group: Vec<i64>,
    pub q_pairings: Vec<Vec<BigRational>>,
    /// Exponents against `(v1, v2, w1, w2)`.
    pub q_isotropic: Vec<Vec<u64>>,
    pub q_block_form: Vec<Vec<BigRational>>,
    pub tx: String,
    pub tx_signature: (usize, usize),
    /// Images of `s, -s, -1/s, 1/s`, as numerator and denominator
    /// coefficients in increasing degree, `None` for infinity.
    pub mobius_images: Vec<Option<(Vec<i64>, Vec<i64>)>>,
    pub km_gram: Vec<Vec<i64>>,
    pub xprime_inverse_snf: Vec<BigRational>,
    pub xprime_group: Vec<i64>,
    /// One-based half-sets over `C1..C12, N1..N8`.
    pub xprime_isotropic: Vec<Vec<usize>>,
    pub xprime_block_form: Vec<Vec<BigRational>>,
    pub txprime: String,
    /// The worked reduction: start, then each intermediate set, ending on
    /// four disjoint curves. Labels.
    pub xprime_example: Vec<Vec<String>>,
    pub prop_6_2_gram: Vec<Vec<i64>>,
}

fn rats(pairs: &[(i64, i64)]) -> Vec<BigRational> {
    pairs.iter().map(|&(n, d)| rat(n, d)).collect()
}

fn labels(s: &str) -> Vec<String> {
    s.split_whitespace().map(String::from).collect()
}

impl Default for PaperData {
    fn default() -> Self {
        let ones = |n| std::iter::repeat_n(rat(1, 1), n);
        PaperData {
            q_gram: data::Q_GRAM.iter().map(|r| r.to_vec()).collect(),
            q_inverse_snf: rats(&[(1, 1), (1, 1), (1, 2), (1, 2), (1, 4), (1, 4)]),
            q_group: vec![2, 2, 4, 4],
            q_pairings: data::Q_PAIRINGS.iter().map(|r| rats(r)).collect(),
            q_isotropic: data::Q_ISOTROPIC.iter().map(|(e, _)| e.to_vec()).collect(),
            q_block_form: data::Q_BLOCK_FORM.iter().map(|r| rats(r)).collect(),
            tx: "U+U(2)+<-4>^2".into(),
            tx_signature: (2, 4),
            mobius_images: vec![
                Some((vec![0], vec![1])),
                Some((vec![0, 0, 1], vec![1])),
                Some((vec![1, 0, 2, 0, 1], vec![4])),
                None,
            ],
            km_gram: vec![vec![4, 0], vec![0, 4]],
            xprime_inverse_snf: ones(10)
                .chain(std::iter::repeat_n(rat(1, 2), 4))
                .chain(std::iter::repeat_n(rat(1, 4), 2))
                .collect(),
            xprime_group: vec![2, 2, 2, 2, 4, 4],
            xprime_isotropic: data::XPRIME_ISOTROPIC.iter().map(|s| s.to_vec()).collect(),
            xprime_block_form: data::XPRIME_BLOCK_FORM.iter().map(|r| rats(r)).collect(),
            txprime: "U(2)^2+<-4>^2".into(),
            xprime_example: vec![
                labels("C1 C2 C7 C8 N2 N3 N5 N7"),
                labels("C3 C4 C9 C10 N2 N3 N5 N7"),
                labels("C5 C6 C9 C10 N2 N3 N5 N7"),
                labels("N1 N4 N5 N7"),
            ],
            prop_6_2_gram: vec![vec![-4, 0], vec![0, -4]],
        }
    }
}
