//! Published data for the triple-double K3 surface and its quotient.
//!
//! Curve indices are one-based, matching the labels `R1..R24`, `C1..C12`,
//! `N1..N8`.

/// Flips the third deck coordinate.
pub const IOTA_001: [usize; 24] = [
    3, 4, 1, 2, 7, 8, 5, 6, 9, 10, 11, 12, 15, 16, 13, 14, 19, 20, 17, 18, 21, 22, 23, 24,
];
/// Flips the second deck coordinate.
pub const IOTA_010: [usize; 24] = [
    2, 1, 4, 3, 5, 6, 7, 8, 11, 12, 9, 10, 14, 13, 16, 15, 17, 18, 19, 20, 23, 24, 21, 22,
];
pub const IOTA_011: [usize; 24] = [
    4, 3, 2, 1, 7, 8, 5, 6, 11, 12, 9, 10, 16, 15, 14, 13, 19, 20, 17, 18, 23, 24, 21, 22,
];

/// Basis of the unimodular part: nine fibre components, then the section.
pub const S_BASIS: [usize; 10] = [1, 5, 9, 13, 17, 23, 4, 15, 8, 3];

/// The fibre class as a combination of its components. Together with the
/// section `R3` it spans a hyperbolic plane.
pub const FIBRE_CLASS: [(usize, i64); 9] = [
    (1, 2),
    (4, 2),
    (5, 4),
    (8, 1),
    (9, 6),
    (13, 5),
    (15, 3),
    (17, 4),
    (23, 3),
];

/// Basis of the complement of the unimodular part.
pub const Q_BASIS: [&[(usize, i64)]; 6] = [
    &[(16, 1)],
    &[(14, 1), (21, -1), (22, 1)],
    &[(11, 1), (2, -1), (19, 1), (20, -1)],
    &[(17, 1), (14, 2), (18, -1), (19, -1), (20, 1)],
    &[(12, 1), (10, -1), (18, 1), (20, 1)],
    &[(3, 1), (22, 2), (6, -2), (12, -1)],
];

pub const Q_GRAM: [[i64; 6]; 6] = [
    [-2, 0, 1, 0, 2, -1],
    [0, -6, -1, -4, 4, -5],
    [1, -1, -8, 6, 2, 0],
    [0, -4, 6, -16, 4, -2],
    [2, 4, 2, 4, -8, 6],
    [-1, -5, 0, -2, 6, -12],
];

/// Linear relations among the 24 curves, as `lhs = rhs`.
pub const RELATIONS_24: [([usize; 4], [usize; 4]); 2] = [
    ([13, 14, 17, 18], [15, 16, 19, 20]),
    ([11, 12, 14, 16], [1, 3, 21, 22]),
];

/// Discriminant generators of `Q` in `Q_BASIS` coordinates, as
/// `(numerator, denominator)` pairs: `v1, v2, w1, w2`.
pub const Q_LIFTS: [[(i64, i64); 6]; 4] = [
    [(1, 2), (-1, 2), (0, 1), (0, 1), (1, 2), (0, 1)],
    [(-1, 2), (1, 2), (0, 1), (0, 1), (0, 1), (0, 1)],
    [(1, 2), (0, 1), (0, 1), (-1, 4), (0, 1), (0, 1)],
    [(0, 1), (0, 1), (1, 4), (-1, 4), (-1, 4), (-1, 4)],
];

/// Pairings of `v1, v2, w1, w2`.
pub const Q_PAIRINGS: [[(i64, i64); 4]; 4] = [
    [(-5, 1), (5, 2), (-1, 1), (-1, 2)],
    [(5, 2), (-2, 1), (1, 1), (1, 2)],
    [(-1, 1), (1, 1), (-3, 2), (-5, 4)],
    [(-1, 2), (1, 2), (-5, 4), (-11, 4)],
];

/// The seven nonzero isotropic classes of `A_Q` as exponents of
/// `(v1, v2, w1, w2)`, each with a half-set of curves representing it.
pub const Q_ISOTROPIC: [([u64; 4], &[usize]); 7] = [
    ([0, 0, 2, 0], &[17, 18, 19, 20]),
    ([0, 1, 0, 0], &[14, 16, 21, 22]),
    ([0, 1, 2, 0], &[14, 16, 17, 18, 19, 20, 21, 22]),
    ([1, 0, 0, 2], &[2, 3, 11, 12, 14, 16, 17, 18, 21, 22]),
    ([1, 0, 2, 2], &[2, 3, 11, 12, 14, 16, 19, 20, 21, 22]),
    ([1, 1, 0, 0], &[10, 12, 18, 20]),
    ([1, 1, 2, 0], &[10, 12, 17, 19]),
];

/// Change of basis of `A_Q` putting the form in block shape, as exponents of
/// `(v1, v2, w1, w2)`: `v2, v1+v2+2w1, v1+2w1-w2, v1+w1-w2`.
pub const Q_BLOCK_BASIS: [[i64; 4]; 4] = [[0, 1, 0, 0], [1, 1, 2, 0], [1, 0, 2, -1], [1, 0, 1, -1]];

/// The form in that basis: `q` on the diagonal (mod 2), `b` off it (mod 1).
pub const Q_BLOCK_FORM: [[(i64, i64); 4]; 4] = [
    [(0, 1), (-1, 2), (0, 1), (0, 1)],
    [(-1, 2), (0, 1), (0, 1), (0, 1)],
    [(0, 1), (0, 1), (1, 4), (0, 1)],
    [(0, 1), (0, 1), (0, 1), (1, 4)],
];

/// Orbits of `IOTA_011`, giving `C1..C12`.
pub const ORBITS_011: [(usize, usize); 12] = [
    (1, 4),
    (2, 3),
    (5, 7),
    (6, 8),
    (9, 11),
    (10, 12),
    (13, 16),
    (14, 15),
    (17, 19),
    (18, 20),
    (21, 23),
    (22, 24),
];

/// A rational combination of the 20 curves on the quotient: `C` indices
/// 1..=12, `N` indices 13..=20, and `(numerator, denominator)` coefficients.
pub type Combo = &'static [(usize, i64, i64)];

/// Index of `N_k` among the 20 curves.
pub const fn n(k: usize) -> usize {
    12 + k
}

pub const HALF_N: Combo = &[
    (n(1), 1, 2),
    (n(2), 1, 2),
    (n(3), 1, 2),
    (n(4), 1, 2),
    (n(5), 1, 2),
    (n(6), 1, 2),
    (n(7), 1, 2),
    (n(8), 1, 2),
];
pub const LAMBDA_1: Combo = &[
    (5, 1, 2),
    (6, 1, 2),
    (9, 1, 2),
    (10, 1, 2),
    (n(1), 1, 2),
    (n(2), 1, 2),
    (n(3), 1, 2),
    (n(4), 1, 2),
];
pub const LAMBDA_2: Combo = &[
    (1, 1, 2),
    (2, 1, 2),
    (5, 1, 2),
    (6, 1, 2),
    (n(1), 1, 2),
    (n(2), 1, 2),
    (n(5), 1, 2),
    (n(6), 1, 2),
];

/// Terms of a relation: plain curves, or one of the three half-sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Term {
    Curve(usize),
    HalfN,
    Lambda1,
    Lambda2,
}

/// `lhs = sum of coefficient * term`.
pub const XPRIME_RELATIONS: [(&str, usize, &[(i64, Term)]); 7] = [
    (
        "C6",
        6,
        &[
            (1, Term::Curve(3)),
            (-1, Term::Curve(4)),
            (1, Term::Curve(5)),
        ],
    ),
    (
        "C10",
        10,
        &[
            (1, Term::Curve(1)),
            (1, Term::Curve(2)),
            (1, Term::Curve(3)),
            (1, Term::Curve(4)),
            (-1, Term::Curve(7)),
            (-1, Term::Curve(8)),
            (-1, Term::Curve(9)),
        ],
    ),
    (
        "C11",
        11,
        &[
            (1, Term::Curve(3)),
            (1, Term::Curve(5)),
            (-1, Term::Curve(9)),
        ],
    ),
    (
        "C12",
        12,
        &[
            (-1, Term::Curve(1)),
            (-1, Term::Curve(2)),
            (-1, Term::Curve(4)),
            (1, Term::Curve(5)),
            (1, Term::Curve(7)),
            (1, Term::Curve(8)),
            (1, Term::Curve(9)),
        ],
    ),
    (
        "N4",
        n(4),
        &[
            (-1, Term::Curve(1)),
            (-1, Term::Curve(2)),
            (-2, Term::Curve(3)),
            (-2, Term::Curve(5)),
            (1, Term::Curve(7)),
            (1, Term::Curve(8)),
            (-1, Term::Curve(n(1))),
            (-1, Term::Curve(n(2))),
            (-1, Term::Curve(n(3))),
            (2, Term::Lambda1),
        ],
    ),
    (
        "N6",
        n(6),
        &[
            (-1, Term::Curve(1)),
            (-1, Term::Curve(2)),
            (-1, Term::Curve(3)),
            (1, Term::Curve(4)),
            (-2, Term::Curve(5)),
            (-1, Term::Curve(n(1))),
            (-1, Term::Curve(n(2))),
            (-1, Term::Curve(n(5))),
            (2, Term::Lambda2),
        ],
    ),
    (
        "N8",
        n(8),
        &[
            (2, Term::Curve(1)),
            (2, Term::Curve(2)),
            (3, Term::Curve(3)),
            (-1, Term::Curve(4)),
            (4, Term::Curve(5)),
            (-1, Term::Curve(7)),
            (-1, Term::Curve(8)),
            (1, Term::Curve(n(1))),
            (1, Term::Curve(n(2))),
            (-1, Term::Curve(n(7))),
            (2, Term::HalfN),
            (-2, Term::Lambda1),
            (-2, Term::Lambda2),
        ],
    ),
];

/// Basis of the lattice generated by the 20 curves and the three half-sums.
pub const XPRIME_BASIS: [Term; 16] = [
    Term::Curve(1),
    Term::Curve(2),
    Term::Curve(3),
    Term::Curve(4),
    Term::Curve(5),
    Term::Curve(7),
    Term::Curve(8),
    Term::Curve(9),
    Term::Curve(n(1)),
    Term::Curve(n(2)),
    Term::Curve(n(3)),
    Term::Curve(n(5)),
    Term::Curve(n(7)),
    Term::HalfN,
    Term::Lambda1,
    Term::Lambda2,
];

/// Discriminant generators `v1, v2, v3, v4, w1, w2` in `XPRIME_BASIS`
/// coordinates, sparse `(position, numerator, denominator)` with zero-based
/// positions.
pub const XPRIME_LIFTS: [&[(usize, i64, i64)]; 6] = [
    &[(9, 1, 2), (10, -1, 2), (11, -1, 2), (12, -1, 2)],
    &[(8, 1, 2), (10, -1, 2), (11, -1, 2), (12, -1, 2)],
    &[(4, 1, 2), (7, -1, 2), (11, -1, 2), (12, -1, 2)],
    &[(2, 1, 2), (3, -1, 2)],
    &[(5, 1, 4), (6, -1, 4), (7, -1, 2), (10, -1, 2), (12, -1, 2)],
    &[(0, 1, 4), (1, -1, 4), (3, -1, 2), (10, -1, 2), (12, -1, 2)],
];

/// The published half-sets representing the nonzero isotropic classes of the
/// discriminant group of the 20-curve lattice.
pub const XPRIME_ISOTROPIC: [&[usize]; 31] = [
    &[1, 2, 7, 8],
    &[1, 2, 3, 4],
    &[3, 4, 7, 8],
    &[5, 9, 17, 19],
    &[13, 15, 17, 19],
    &[5, 9, 13, 15],
    &[14, 15, 17, 19],
    &[5, 9, 14, 15],
    &[1, 2, 13, 14],
    &[7, 8, 13, 14],
    &[3, 4, 13, 14],
    &[3, 4, 5, 9, 17, 19],
    &[3, 4, 5, 9, 13, 15],
    &[3, 4, 5, 9, 14, 15],
    &[1, 2, 5, 7, 8, 9, 17, 19],
    &[1, 2, 7, 8, 13, 15, 17, 19],
    &[1, 2, 3, 4, 13, 15, 17, 19],
    &[3, 4, 7, 8, 13, 15, 17, 19],
    &[1, 2, 5, 7, 8, 9, 13, 15],
    &[1, 2, 7, 8, 14, 15, 17, 19],
    &[1, 2, 3, 4, 14, 15, 17, 19],
    &[3, 4, 7, 8, 14, 15, 17, 19],
    &[1, 2, 5, 7, 8, 9, 14, 15],
    &[1, 2, 3, 4, 7, 8, 13, 14],
    &[1, 2, 5, 9, 13, 14, 17, 19],
    &[5, 7, 8, 9, 13, 14, 17, 19],
    &[1, 2, 3, 4, 5, 7, 8, 9, 17, 19],
    &[1, 2, 3, 4, 5, 7, 8, 9, 13, 15],
    &[1, 2, 3, 4, 5, 7, 8, 9, 14, 15],
    &[1, 2, 3, 4, 5, 9, 13, 14, 17, 19],
    &[3, 4, 5, 7, 8, 9, 13, 14, 17, 19],
];

/// The block basis `v1, v2, v4+2w2, v3+v4, w1, w2` as exponents of
/// `(v1, v2, v3, v4, w1, w2)`.
pub const XPRIME_BLOCK_BASIS: [[i64; 6]; 6] = [
    [1, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 2],
    [0, 0, 1, 1, 0, 0],
    [0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 1],
];

pub const XPRIME_BLOCK_FORM: [[(i64, i64); 6]; 6] = [
    [(0, 1), (1, 2), (0, 1), (0, 1), (0, 1), (0, 1)],
    [(1, 2), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1)],
    [(0, 1), (0, 1), (0, 1), (1, 2), (0, 1), (0, 1)],
    [(0, 1), (0, 1), (1, 2), (0, 1), (0, 1), (0, 1)],
    [(0, 1), (0, 1), (0, 1), (0, 1), (1, 4), (0, 1)],
    [(0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (1, 4)],
];

/// Equalities among the `C` curves used to move between half-sets.
pub const XPRIME_C_RELATIONS: [(&[usize], &[usize]); 5] = [
    (&[1, 2, 3, 4], &[7, 8, 9, 10]),
    (&[1, 2, 11, 12], &[5, 6, 7, 8]),
    (&[3, 5], &[4, 6]),
    (&[4, 6], &[9, 11]),
    (&[9, 11], &[10, 12]),
];

pub fn r_labels() -> Vec<String> {
    (1..=24).map(|i| format!("R{i}")).collect()
}

pub fn xprime_labels() -> Vec<String> {
    (1..=12)
        .map(|i| format!("C{i}"))
        .chain((1..=8).map(|i| format!("N{i}")))
        .collect()
}

/// Dense integer vector over `n` curves from one-based sparse terms.
pub fn dense(n: usize, terms: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; n];
    for &(k, c) in terms {
        v[k - 1] += c;
    }
    v
}
