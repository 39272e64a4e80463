use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::curvelattice::{half_sum, CurveLattice};
use super::CurveConfig;
use crate::{Error, Result};

/// The rule every certificate rests on. It is trusted, not checked.
pub const EVEN_SET_AXIOM: &str =
    "no four disjoint smooth rational curves on a K3 surface have a half-sum in NS";

/// States explored before a coset search gives up.
const MAX_STATES: usize = 1 << 22;

/// An integer combination of curves whose half lies in the lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoDivisible {
    pub name: String,
    pub coeffs: Vec<i64>,
}

impl TwoDivisible {
    /// The sum of a set of curves, claimed divisible by 2.
    pub fn half_sum(name: impl Into<String>, n: usize, set: &[usize]) -> Self {
        let mut coeffs = vec![0; n];
        for &i in set {
            coeffs[i] += 1;
        }
        TwoDivisible {
            name: name.into(),
            coeffs,
        }
    }

    /// From an equality `lhs = rhs` of curve sums: `lhs + rhs = 2 rhs`. The
    /// equality is checked against every curve first.
    pub fn from_equality(
        name: impl Into<String>,
        config: &CurveConfig,
        lhs: &[usize],
        rhs: &[usize],
    ) -> Result<Self> {
        let name = name.into();
        let n = config.len();
        let side = |s: &[usize]| {
            let mut v = vec![0; n];
            for &i in s {
                v[i] += 1;
            }
            v
        };
        let (a, b) = (side(lhs), side(rhs));
        for k in 0..n {
            let mut e = vec![0; n];
            e[k] = 1;
            if config.pair_ints(&a, &e) != config.pair_ints(&b, &e) {
                return Err(Error::RelationNotDivisible(name));
            }
        }
        let coeffs = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        Ok(TwoDivisible { name, coeffs })
    }

    fn half(&self) -> Vec<BigRational> {
        self.coeffs
            .iter()
            .map(|&c| BigRational::new(BigInt::from(c), BigInt::from(2)))
            .collect()
    }

    fn mask(&self) -> u64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| *c % 2 != 0)
            .fold(0, |m, (i, _)| m | (1 << i))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateStep {
    pub relation: String,
    /// Integer combination of curves subtracted after adding half the relation.
    pub correction: Vec<(String, i64)>,
    pub result: Vec<String>,
}

/// A chain from a half-set to half the sum of four disjoint (-2)-curves. If
/// the half-set's class were in the lattice, so would be every class along
/// the chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub start: Vec<String>,
    pub steps: Vec<CertificateStep>,
    pub four: Vec<String>,
    pub axiom: String,
}

fn mask_of(set: &[usize]) -> u64 {
    set.iter().fold(0, |m, &i| m ^ (1 << i))
}

fn members(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

fn names(config: &CurveConfig, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| config.labels()[i].clone()).collect()
}

fn is_disjoint_four(config: &CurveConfig, set: &[usize]) -> bool {
    set.len() == 4
        && set.iter().all(|&i| config.self_int(i) == -2)
        && set
            .iter()
            .all(|&i| set.iter().all(|&j| i == j || config.mult(i, j) == 0))
}

fn check_relations(ctx: &CurveLattice, relations: &[TwoDivisible]) -> Result<()> {
    let n = ctx.config().len();
    if n > 64 {
        return Err(Error::InvalidConfig(format!(
            "{n} curves; at most 64 supported"
        )));
    }
    for r in relations {
        if r.coeffs.len() != n || !ctx.contains(&r.half()) {
            return Err(Error::RelationNotDivisible(r.name.clone()));
        }
    }
    Ok(())
}

/// Searches the coset of `halfset` modulo the relations, over `GF(2)`, for
/// four pairwise disjoint (-2)-curves, taking the shortest chain of relation
/// additions. `None` means the whole coset was searched without success.
pub fn find_even_four_certificate(
    halfset: &[usize],
    relations: &[TwoDivisible],
    ctx: &CurveLattice,
) -> Result<Option<Certificate>> {
    check_relations(ctx, relations)?;
    let config = ctx.config();
    let n = config.len();
    if let Some(&i) = halfset.iter().find(|&&i| i >= n) {
        return Err(Error::InvalidConfig(format!(
            "curve index {i} out of range"
        )));
    }
    let masks: Vec<u64> = relations.iter().map(TwoDivisible::mask).collect();
    let start = mask_of(halfset);
    let mut parent: HashMap<u64, (u64, usize)> = HashMap::new();
    let mut queue = VecDeque::from([start]);
    parent.insert(start, (start, usize::MAX));
    let mut found = None;
    while let Some(s) = queue.pop_front() {
        if is_disjoint_four(config, &members(s, n)) {
            found = Some(s);
            break;
        }
        for (k, &m) in masks.iter().enumerate() {
            let t = s ^ m;
            if m != 0 && !parent.contains_key(&t) {
                if parent.len() >= MAX_STATES {
                    return Err(Error::InvalidConfig(format!(
                        "coset search exceeded {MAX_STATES} states"
                    )));
                }
                parent.insert(t, (s, k));
                queue.push_back(t);
            }
        }
    }
    let Some(end) = found else {
        return Ok(None);
    };
    let mut path = Vec::new();
    let mut cur = end;
    while cur != start {
        let (prev, k) = parent[&cur];
        path.push((k, cur));
        cur = prev;
    }
    path.reverse();
    let mut x = half_sum(n, &members(start, n));
    let mut steps = Vec::new();
    for (k, state) in path {
        let next = half_sum(n, &members(state, n));
        let correction = x
            .iter()
            .zip(relations[k].half())
            .zip(&next)
            .enumerate()
            .filter_map(|(i, ((a, b), c))| {
                let e = a + b - c;
                (!e.is_zero()).then(|| {
                    (
                        config.labels()[i].clone(),
                        e.to_integer().try_into().expect("small"),
                    )
                })
            })
            .collect();
        steps.push(CertificateStep {
            relation: relations[k].name.clone(),
            correction,
            result: names(config, &members(state, n)),
        });
        x = next;
    }
    Ok(Some(Certificate {
        start: names(config, &members(start, n)),
        steps,
        four: names(config, &members(end, n)),
        axiom: EVEN_SET_AXIOM.into(),
    }))
}

/// Replays a certificate over the integers: each step adds half a relation
/// and subtracts an integral correction, and must land on the recorded
/// half-set; the last one must be four disjoint (-2)-curves.
pub fn replay(cert: &Certificate, relations: &[TwoDivisible], ctx: &CurveLattice) -> Result<()> {
    check_relations(ctx, relations)?;
    let config = ctx.config();
    let n = config.len();
    let bad = |why: String| Err(Error::InvalidConfig(format!("certificate replay: {why}")));
    let mut x = half_sum(n, &config.indices(&cert.start)?);
    for step in &cert.steps {
        let Some(r) = relations.iter().find(|r| r.name == step.relation) else {
            return bad(format!("unknown relation `{}`", step.relation));
        };
        let mut y: Vec<BigRational> = x.iter().zip(r.half()).map(|(a, b)| a + b).collect();
        for (label, c) in &step.correction {
            y[config.index(label)?] -= BigRational::from_integer(BigInt::from(*c));
        }
        let want = half_sum(n, &config.indices(&step.result)?);
        if y != want {
            return bad(format!(
                "step `{}` does not reach {:?}",
                step.relation, step.result
            ));
        }
        x = y;
    }
    let four = config.indices(&cert.four)?;
    if x != half_sum(n, &four) {
        return bad("chain does not end on the stated four curves".into());
    }
    if !is_disjoint_four(config, &four) {
        return bad("final curves are not four disjoint (-2)-curves".into());
    }
    Ok(())
}

/// Solves `y C = t` over `GF(2)`; `rows[k]` holds column `k` of `C` as a bit
/// mask over the unknowns. Returns a particular solution and a kernel basis.
fn gf2_solve(rows: &[u64], rhs: &[bool], n: usize) -> Option<(u64, Vec<u64>)> {
    let mut eqs: Vec<(u64, bool)> = rows.iter().copied().zip(rhs.iter().copied()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..eqs.len()).find(|&i| eqs[i].0 >> col & 1 == 1) else {
            continue;
        };
        eqs.swap(r, p);
        for i in 0..eqs.len() {
            if i != r && eqs[i].0 >> col & 1 == 1 {
                eqs[i].0 ^= eqs[r].0;
                eqs[i].1 ^= eqs[r].1;
            }
        }
        pivots.push(col);
        r += 1;
    }
    if eqs[r..].iter().any(|e| e.1) {
        return None;
    }
    let mut particular = 0;
    for (k, &col) in pivots.iter().enumerate() {
        if eqs[k].1 {
            particular |= 1 << col;
        }
    }
    let kernel = (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = 1u64 << f;
            for (k, &col) in pivots.iter().enumerate() {
                if eqs[k].0 >> f & 1 == 1 {
                    v |= 1 << col;
                }
            }
            v
        })
        .collect();
    Some((particular, kernel))
}

fn mod2_system(ctx: &CurveLattice) -> Vec<u64> {
    let c = ctx.curve_coords_mod2();
    (0..ctx.rank())
        .map(|k| {
            (0..c.len())
                .filter(|&j| c[j][k])
                .fold(0, |m, j| m | (1 << j))
        })
        .collect()
}

/// Every set of curves whose half-sum lies in the lattice is a sum of these
/// over `GF(2)`.
pub fn two_divisible_basis(ctx: &CurveLattice) -> Vec<TwoDivisible> {
    let n = ctx.config().len();
    let rows = mod2_system(ctx);
    let (_, kernel) = gf2_solve(&rows, &vec![false; rows.len()], n).expect("homogeneous");
    kernel
        .iter()
        .enumerate()
        .map(|(i, &m)| TwoDivisible::half_sum(format!("K{}", i + 1), n, &members(m, n)))
        .collect()
}

/// A set of curves whose half-sum represents the class with basis
/// coordinates `x` modulo the lattice. Requires `2x` integral.
pub fn halfset_for_class(ctx: &CurveLattice, x: &[BigRational]) -> Option<Vec<usize>> {
    let two = BigRational::from_integer(BigInt::from(2));
    let t: Vec<bool> = x
        .iter()
        .map(|v| {
            let d = v * &two;
            d.is_integer()
                .then(|| !(d.to_integer() % BigInt::from(2)).is_zero())
        })
        .collect::<Option<_>>()?;
    let n = ctx.config().len();
    let (y, _) = gf2_solve(&mod2_system(ctx), &t, n)?;
    let set = members(y, n);
    let c = ctx.coords(&half_sum(n, &set))?;
    let diff_ok = c.iter().zip(x).all(|(a, b)| (a - b).is_integer());
    debug_assert!(diff_ok);
    diff_ok.then_some(set)
}
