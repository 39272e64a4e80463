use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::data;
use super::{CurveConfig, InvolutionAction};
use crate::exactlinalg::{IntMat, Signature};
use crate::lattice::Lattice;
use crate::{Error, Result};

/// An involution of the configuration together with the deck coordinates it
/// flips (0, 1, 2 for the three `Z/2` factors).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeckInvolution {
    pub name: String,
    pub action: InvolutionAction,
    pub flips: Vec<usize>,
}

/// Everything the reconstruction search is allowed to use.
#[derive(Clone, Debug)]
pub struct Constraints {
    pub labels: Vec<String>,
    /// Preimages of the hexagon curves, zero-based.
    pub groups: Vec<Vec<usize>>,
    pub involutions: Vec<DeckInvolution>,
    /// Components of the affine E8 fibre, zero-based.
    pub fibre: Vec<usize>,
    pub section: usize,
    /// Degree of the cover over the hexagon.
    pub degree: i64,
    pub max_mult: i64,
    /// Second tier: integer combinations of curves and their expected Gram.
    pub q_basis: Vec<Vec<i64>>,
    pub q_gram: Vec<Vec<i64>>,
    /// Third tier: equalities `lhs = rhs` of curve sums, zero-based.
    pub relations: Vec<(Vec<usize>, Vec<usize>)>,
}

impl Constraints {
    /// The constraints for the triple-double K3 surface.
    pub fn triple_double() -> Self {
        let inv = |name: &str, perm: &[usize], flips: Vec<usize>| DeckInvolution {
            name: name.into(),
            action: InvolutionAction::from_one_based(perm).expect("published involution"),
            flips,
        };
        let zero = |v: &[usize]| v.iter().map(|i| i - 1).collect::<Vec<_>>();
        Constraints {
            labels: data::r_labels(),
            groups: (0..6).map(|g| (4 * g..4 * g + 4).collect()).collect(),
            involutions: vec![
                inv("iota_001", &data::IOTA_001, vec![2]),
                inv("iota_010", &data::IOTA_010, vec![1]),
                inv("iota_011", &data::IOTA_011, vec![1, 2]),
            ],
            fibre: zero(&data::S_BASIS[..9]),
            section: data::S_BASIS[9] - 1,
            degree: 8,
            max_mult: 2,
            q_basis: data::Q_BASIS.iter().map(|t| data::dense(24, t)).collect(),
            q_gram: data::Q_GRAM.iter().map(|r| r.to_vec()).collect(),
            relations: data::RELATIONS_24
                .iter()
                .map(|(a, b)| (zero(a), zero(b)))
                .collect(),
        }
    }
}

/// Which constraint tiers to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TierPolicy {
    /// Escalate until exactly one configuration survives.
    Auto,
    /// Stop at the given tier (1, 2 or 3) and report what survives.
    Exact(u8),
}

/// Number of distinct Gram matrices surviving each tier.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub candidates: usize,
    pub tier1: usize,
    pub tier2: usize,
    pub tier3: usize,
    /// Tier-1 survivors needing a multiplicity above the cap.
    pub over_cap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution24 {
    pub config: CurveConfig,
    /// Groups in cyclic hexagon order.
    pub hexagon: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reconstruction {
    pub tier: u8,
    pub census: Census,
    /// Survivors at `tier`, sorted by Gram matrix.
    pub solutions: Vec<Solution24>,
}

impl Reconstruction {
    pub fn unique(&self) -> Result<&CurveConfig> {
        match self.solutions.as_slice() {
            [s] => Ok(&s.config),
            [] => Err(Error::Reconstruction(format!(
                "no configuration survives tier {}",
                self.tier
            ))),
            many => Err(Error::Reconstruction(format!(
                "{} configurations survive tier {}",
                many.len(),
                self.tier
            ))),
        }
    }
}

/// Signs of a curve on the three deck coordinates; 0 on the fibre axis.
type Signs = [i8; 3];

/// The deck coordinate acting trivially on a group: every involution that
/// flips only it fixes the group pointwise, every other one moves all its
/// curves.
fn fibre_axis(c: &Constraints, group: &[usize]) -> Result<usize> {
    let ok: Vec<usize> = (0..3)
        .filter(|&t| {
            c.involutions.iter().all(|inv| {
                let trivial = inv.flips.iter().all(|&f| f == t);
                group.iter().all(|&i| {
                    let fixed = inv.action.image(i) == i;
                    fixed == trivial && group.contains(&inv.action.image(i))
                })
            })
        })
        .collect();
    match ok.as_slice() {
        [t] => Ok(*t),
        _ => Err(Error::Reconstruction(format!(
            "cannot determine the fibre axis of group {group:?} from the involutions"
        ))),
    }
}

/// Assignments of sign vectors to the curves of a group on which every
/// involution acts by its deck flips.
fn group_assignments(c: &Constraints, group: &[usize], t: usize) -> Vec<Vec<Signs>> {
    let axes: Vec<usize> = (0..3).filter(|&a| a != t).collect();
    let vectors: Vec<Signs> = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
        .iter()
        .map(|&(s, u)| {
            let mut v = [0; 3];
            v[axes[0]] = s;
            v[axes[1]] = u;
            v
        })
        .collect();
    let mut out = Vec::new();
    for p in permutations(4) {
        let signs: Vec<Signs> = p.iter().map(|&k| vectors[k]).collect();
        let pos = |i: usize| group.iter().position(|&g| g == i).expect("group is closed");
        let ok = c.involutions.iter().all(|inv| {
            (0..4).all(|k| {
                let mut want = signs[k];
                for &f in &inv.flips {
                    want[f] = -want[f];
                }
                want[t] = 0;
                signs[pos(inv.action.image(group[k]))] == want
            })
        });
        if ok {
            out.push(signs);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Cyclic orders of the groups up to rotation and reflection in which
/// neighbours have different fibre axes.
fn hexagon_cycles(types: &[usize]) -> Vec<Vec<usize>> {
    let g = types.len();
    permutations(g - 1)
        .into_iter()
        .map(|p| {
            std::iter::once(0)
                .chain(p.into_iter().map(|x| x + 1))
                .collect::<Vec<_>>()
        })
        .filter(|c| c[1] < c[g - 1])
        .filter(|c| (0..g).all(|i| types[c[i]] != types[c[(i + 1) % g]]))
        .collect()
}

/// The node at the end of the long arm when the nine nodes form the affine
/// E8 tree (arms of 1, 2 and 5 nodes off a single trivalent node).
fn affine_e8_end(adj: &[Vec<bool>]) -> Option<usize> {
    let n = adj.len();
    let deg: Vec<usize> = (0..n)
        .map(|i| adj[i].iter().filter(|&&b| b).count())
        .collect();
    if n != 9 || deg.iter().sum::<usize>() != 16 {
        return None;
    }
    let branch: Vec<usize> = (0..n).filter(|&i| deg[i] == 3).collect();
    if branch.len() != 1 || deg.iter().any(|&d| d == 0 || d > 3) {
        return None;
    }
    let b = branch[0];
    let mut arms = Vec::new();
    for start in (0..n).filter(|&j| adj[b][j]) {
        let (mut prev, mut cur, mut len) = (b, start, 1);
        loop {
            let next: Vec<usize> = (0..n).filter(|&k| adj[cur][k] && k != prev).collect();
            match next.as_slice() {
                [] => break,
                [k] if *k != b => {
                    prev = cur;
                    cur = *k;
                    len += 1;
                }
                _ => return None,
            }
        }
        arms.push((len, cur));
    }
    arms.sort();
    // Nine nodes, no cycles and these arm lengths make a tree.
    match arms.as_slice() {
        [(1, _), (2, _), (5, end)] => Some(*end),
        _ => None,
    }
}

struct Model<'a> {
    c: &'a Constraints,
    types: Vec<usize>,
    group_of: Vec<usize>,
}

impl Model<'_> {
    fn entry(&self, adjacent: &[Vec<bool>], signs: &[Signs], i: usize, j: usize) -> i64 {
        if i == j {
            return -2;
        }
        let (gi, gj) = (self.group_of[i], self.group_of[j]);
        if !adjacent[gi][gj] {
            return 0;
        }
        let w = 3 - self.types[gi] - self.types[gj];
        i64::from(signs[i][w] == signs[j][w])
    }

    /// Tier-1 shape of the fibre and section.
    fn fibre_shape_ok(&self, gram: &dyn Fn(usize, usize) -> i64) -> bool {
        let f = &self.c.fibre;
        let mut adj = vec![vec![false; f.len()]; f.len()];
        for a in 0..f.len() {
            for b in 0..f.len() {
                if a == b {
                    continue;
                }
                match gram(f[a], f[b]) {
                    0 => {}
                    1 => adj[a][b] = true,
                    _ => return false,
                }
            }
        }
        let Some(end) = affine_e8_end(&adj) else {
            return false;
        };
        (0..f.len()).all(|a| gram(self.c.section, f[a]) == i64::from(a == end))
    }

    /// The rest of tier 1 on a full Gram matrix.
    fn tier1_rest(&self, g: &[Vec<i64>], hexagon: &[usize]) -> bool {
        let c = self.c;
        let n = g.len();
        for inv in &c.involutions {
            for i in 0..n {
                for j in 0..n {
                    if g[i][j] != g[inv.action.image(i)][inv.action.image(j)] {
                        return false;
                    }
                }
            }
        }
        let k = c.groups.len();
        for a in 0..k {
            for b in 0..k {
                let total: i64 = c.groups[a]
                    .iter()
                    .flat_map(|&i| c.groups[b].iter().map(move |&j| (i, j)))
                    .filter(|(i, j)| i != j)
                    .map(|(i, j)| g[i][j])
                    .sum();
                let pa = hexagon.iter().position(|&x| x == a).expect("cycle");
                let pb = hexagon.iter().position(|&x| x == b).expect("cycle");
                let adjacent = (pa + 1) % k == pb || (pb + 1) % k == pa;
                let want = if adjacent { c.degree } else { 0 };
                if total != want {
                    return false;
                }
            }
        }
        let s: Vec<usize> = c.fibre.iter().copied().chain([c.section]).collect();
        let sg = IntMat::from_rows(
            &s.iter()
                .map(|&i| s.iter().map(|&j| g[i][j]).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        );
        match Lattice::new(sg) {
            Ok(l) => {
                l.is_even()
                    && l.is_unimodular()
                    && l.signature() == Signature::new(1, s.len() - 1, 0)
            }
            Err(_) => false,
        }
    }
}

fn pair(g: &[Vec<i64>], x: &[i64], y: &[i64]) -> i64 {
    let mut s = 0;
    for (i, &a) in x.iter().enumerate() {
        if a != 0 {
            for (j, &b) in y.iter().enumerate() {
                s += a * b * g[i][j];
            }
        }
    }
    s
}

fn tier2_ok(c: &Constraints, g: &[Vec<i64>]) -> bool {
    c.q_basis.iter().enumerate().all(|(a, x)| {
        c.q_basis
            .iter()
            .enumerate()
            .all(|(b, y)| pair(g, x, y) == c.q_gram[a][b])
    })
}

/// Both sides of every relation pair identically with every curve.
fn tier3_ok(c: &Constraints, g: &[Vec<i64>]) -> bool {
    c.relations.iter().all(|(lhs, rhs)| {
        (0..g.len()).all(|k| {
            lhs.iter().map(|&i| g[i][k]).sum::<i64>() == rhs.iter().map(|&i| g[i][k]).sum::<i64>()
        })
    })
}

/// Recovers the 24-curve configuration from the constraint tiers.
///
/// Each curve is a component over one of six hexagon curves and carries
/// signs on the two deck coordinates that move it; the involutions must act
/// on labels as the corresponding sign flips. Curves over neighbouring
/// hexagon curves meet once when their signs agree on the coordinate that
/// moves both, and not at all otherwise. All hexagon orders and sign
/// assignments are searched. Tier 1 checks the involutions, the disjointness
/// within groups, the degree bookkeeping and the affine E8 fibre with its
/// section; tier 2 adds the expected Gram matrix of `q_basis`; tier 3 adds
/// the relations. Global sign flips leave the Gram matrix unchanged, so the
/// first group's assignment is fixed and results are deduplicated by Gram.
pub fn reconstruct_24(c: &Constraints, policy: TierPolicy) -> Result<Reconstruction> {
    let n = c.labels.len();
    let mut group_of = vec![usize::MAX; n];
    for (g, members) in c.groups.iter().enumerate() {
        for &i in members {
            group_of[i] = g;
        }
    }
    if group_of.contains(&usize::MAX) {
        return Err(Error::Reconstruction(
            "groups do not cover every curve".into(),
        ));
    }
    let types = c
        .groups
        .iter()
        .map(|g| fibre_axis(c, g))
        .collect::<Result<Vec<_>>>()?;
    let choices: Vec<Vec<Vec<Signs>>> = c
        .groups
        .iter()
        .zip(&types)
        .map(|(g, &t)| group_assignments(c, g, t))
        .collect();
    if choices.iter().any(Vec::is_empty) {
        return Err(Error::Reconstruction(
            "an involution does not act by deck flips".into(),
        ));
    }
    let model = Model {
        c,
        types: types.clone(),
        group_of,
    };
    let k = c.groups.len();
    let mut census = Census::default();
    let mut tier1: Vec<(Vec<Vec<i64>>, Vec<usize>)> = Vec::new();
    let mut seen = BTreeSet::new();
    for hexagon in hexagon_cycles(&types) {
        let mut adjacent = vec![vec![false; k]; k];
        for i in 0..k {
            let (a, b) = (hexagon[i], hexagon[(i + 1) % k]);
            adjacent[a][b] = true;
            adjacent[b][a] = true;
        }
        let radix: Vec<usize> = (0..k)
            .map(|g| if g == 0 { 1 } else { choices[g].len() })
            .collect();
        let total: usize = radix.iter().product();
        for code in 0..total {
            census.candidates += 1;
            let mut rest = code;
            let mut signs = vec![[0i8; 3]; n];
            for g in 0..k {
                let pick = rest % radix[g];
                rest /= radix[g];
                for (pos, &i) in c.groups[g].iter().enumerate() {
                    signs[i] = choices[g][pick][pos];
                }
            }
            let entry = |i: usize, j: usize| model.entry(&adjacent, &signs, i, j);
            if !model.fibre_shape_ok(&entry) {
                continue;
            }
            let g: Vec<Vec<i64>> = (0..n)
                .map(|i| (0..n).map(|j| entry(i, j)).collect())
                .collect();
            if seen.contains(&g) {
                continue;
            }
            if !model.tier1_rest(&g, &hexagon) {
                continue;
            }
            if g.iter().flatten().any(|&v| v > c.max_mult) {
                census.over_cap += 1;
                continue;
            }
            seen.insert(g.clone());
            tier1.push((g, hexagon.clone()));
        }
    }
    tier1.sort();
    census.tier1 = tier1.len();
    let tier2: Vec<_> = tier1
        .iter()
        .filter(|(g, _)| tier2_ok(c, g))
        .cloned()
        .collect();
    census.tier2 = tier2.len();
    let tier3: Vec<_> = tier2
        .iter()
        .filter(|(g, _)| tier3_ok(c, g))
        .cloned()
        .collect();
    census.tier3 = tier3.len();
    let by_tier = [tier1, tier2, tier3];
    let tier = match policy {
        TierPolicy::Exact(t @ 1..=3) => t,
        TierPolicy::Exact(t) => {
            return Err(Error::Reconstruction(format!("unknown tier {t}")));
        }
        TierPolicy::Auto => by_tier
            .iter()
            .position(|s| s.len() <= 1)
            .map_or(3, |p| p as u8 + 1),
    };
    let solutions = by_tier[tier as usize - 1]
        .iter()
        .map(|(g, hexagon)| {
            Ok(Solution24 {
                config: CurveConfig::from_gram(c.labels.clone(), g)?,
                hexagon: hexagon.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Reconstruction {
        tier,
        census,
        solutions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e8_shape() {
        let mut adj = vec![vec![false; 9]; 9];
        let mut edge = |a: usize, b: usize| {
            adj[a][b] = true;
            adj[b][a] = true;
        };
        for i in 0..7 {
            edge(i, i + 1);
        }
        edge(5, 8);
        assert_eq!(affine_e8_end(&adj), Some(0));
        adj[5][8] = false;
        adj[8][5] = false;
        adj[2][8] = true;
        adj[8][2] = true;
        assert_eq!(affine_e8_end(&adj), Some(7));
        adj[2][8] = false;
        adj[8][2] = false;
        adj[3][8] = true;
        adj[8][3] = true;
        assert_eq!(affine_e8_end(&adj), None);
    }

    #[test]
    fn fibre_axes_of_the_groups() {
        let c = Constraints::triple_double();
        let t: Vec<usize> = c
            .groups
            .iter()
            .map(|g| fibre_axis(&c, g).unwrap())
            .collect();
        assert_eq!(t, vec![0, 1, 2, 0, 1, 2]);
        assert_eq!(group_assignments(&c, &c.groups[0], 0).len(), 4);
        assert_eq!(group_assignments(&c, &c.groups[1], 1).len(), 8);
    }
}
