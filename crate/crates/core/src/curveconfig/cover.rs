use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::CurveConfig;
use crate::{Error, Result};

/// Largest number of sheet distributions enumerated before giving up.
const MAX_DISTRIBUTIONS: usize = 4096;

/// A point of the branch divisor lying on some tracked curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchPoint {
    pub id: String,
    /// The branch component carrying the point.
    pub branch: String,
}

/// One double cover: its branch components and where they meet the tracked
/// curves.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverStep {
    /// Branch components. They are not tracked curves of the configuration.
    pub branch: Vec<String>,
    pub points: Vec<BranchPoint>,
    /// Branch points on each tracked curve, by point id. Curves not listed
    /// carry none.
    #[serde(default)]
    pub incidence: BTreeMap<String, Vec<String>>,
    /// For two curves that both split, `(C, D, a)` fixes `C'.D' = a`. Pairs
    /// without a hint are enumerated.
    #[serde(default)]
    pub sheets: Vec<(String, String, i64)>,
}

/// Every distribution of intersections consistent with the step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pullback {
    pub configs: Vec<CurveConfig>,
    /// Each original curve with the labels of its preimage components.
    pub label_map: Vec<(String, Vec<String>)>,
}

impl Pullback {
    pub fn is_determined(&self) -> bool {
        self.configs.len() == 1
    }
}

enum Pre {
    Split(usize, usize),
    Whole(usize),
}

/// Branch point ids on each curve, after checking the step against `config`.
fn branch_counts(config: &CurveConfig, step: &CoverStep) -> Result<Vec<BTreeSet<String>>> {
    let branch: BTreeSet<&str> = step.branch.iter().map(String::as_str).collect();
    for b in &branch {
        if config.index(b).is_ok() {
            return Err(Error::InvalidCover(format!(
                "branch curve `{b}` is a tracked curve"
            )));
        }
    }
    let mut ids = BTreeSet::new();
    for p in &step.points {
        if !branch.contains(p.branch.as_str()) {
            return Err(Error::InvalidCover(format!(
                "point `{}` lies on `{}`, which is not a branch curve",
                p.id, p.branch
            )));
        }
        if !ids.insert(p.id.clone()) {
            return Err(Error::InvalidCover(format!(
                "point `{}` declared twice",
                p.id
            )));
        }
    }
    let mut on = vec![BTreeSet::new(); config.len()];
    for (curve, pts) in &step.incidence {
        let i = config.index(curve)?;
        for id in pts {
            if !ids.contains(id) {
                return Err(Error::InvalidCover(format!(
                    "unknown point `{id}` on `{curve}`"
                )));
            }
            if !on[i].insert(id.clone()) {
                return Err(Error::InvalidCover(format!(
                    "point `{id}` listed twice on `{curve}`"
                )));
            }
        }
    }
    for (i, s) in on.iter().enumerate() {
        let label = &config.labels()[i];
        if s.len() % 2 == 1 {
            return Err(Error::InvalidCover(format!(
                "`{label}` meets the branch locus in {} points, an odd number",
                s.len()
            )));
        }
        if s.len() >= 4 {
            return Err(Error::InvalidCover(format!(
                "`{label}` meets the branch locus in {} points; only 0 or 2 are supported",
                s.len()
            )));
        }
    }
    for i in 0..config.len() {
        for j in i + 1..config.len() {
            let shared = on[i].intersection(&on[j]).count() as i64;
            if shared > config.mult(i, j) {
                return Err(Error::InvalidCover(format!(
                    "`{}` and `{}` share {shared} branch points but meet {} times",
                    config.labels()[i],
                    config.labels()[j],
                    config.mult(i, j)
                )));
            }
        }
    }
    Ok(on)
}

/// Pulls `config` back along the double cover described by `step`.
///
/// A curve meeting the branch locus in no point splits into two disjoint
/// copies of the same self-intersection; one meeting it in two points has an
/// irreducible preimage of twice the self-intersection. Intersections follow
/// `pi^*C . pi^*D = 2 C.D`. When two split curves meet, how the preimage
/// points pair up the sheets is not determined by incidences, so every
/// distribution is returned unless `step.sheets` fixes it.
pub fn double_cover_pullback(config: &CurveConfig, step: &CoverStep) -> Result<Pullback> {
    let on = branch_counts(config, step)?;
    let mut labels = Vec::new();
    let mut self_int = Vec::new();
    let mut pre = Vec::new();
    let mut label_map = Vec::new();
    for (i, l) in config.labels().iter().enumerate() {
        let c2 = config.self_int(i);
        if on[i].is_empty() {
            let (a, b) = (format!("{l}'"), format!("{l}''"));
            pre.push(Pre::Split(labels.len(), labels.len() + 1));
            label_map.push((l.clone(), vec![a.clone(), b.clone()]));
            labels.extend([a, b]);
            self_int.extend([c2, c2]);
        } else {
            let a = format!("{l}~");
            pre.push(Pre::Whole(labels.len()));
            label_map.push((l.clone(), vec![a.clone()]));
            labels.push(a);
            self_int.push(2 * c2);
        }
    }
    let n = labels.len();
    let mut base = vec![vec![0; n]; n];
    let set = |m: &mut Vec<Vec<i64>>, a: usize, b: usize, v: i64| {
        m[a][b] = v;
        m[b][a] = v;
    };
    // Unresolved split-split pairs: (C', C'', D', D'', C.D).
    let mut open = Vec::new();
    let mut hints = BTreeMap::new();
    for (c, d, a) in &step.sheets {
        let (i, j) = (config.index(c)?, config.index(d)?);
        let m = config.mult(i, j);
        if *a < 0 || *a > m {
            return Err(Error::InvalidCover(format!(
                "sheet hint {a} for `{c}`, `{d}` exceeds {m}"
            )));
        }
        hints.insert((i, j), *a);
        hints.insert((j, i), *a);
    }
    for i in 0..config.len() {
        for j in i + 1..config.len() {
            let m = config.mult(i, j);
            match (&pre[i], &pre[j]) {
                (Pre::Whole(a), Pre::Whole(b)) => set(&mut base, *a, *b, 2 * m),
                (Pre::Whole(a), Pre::Split(b1, b2)) | (Pre::Split(b1, b2), Pre::Whole(a)) => {
                    set(&mut base, *a, *b1, m);
                    set(&mut base, *a, *b2, m);
                }
                (Pre::Split(a1, a2), Pre::Split(b1, b2)) => {
                    if m == 0 {
                        continue;
                    }
                    match hints.get(&(i, j)) {
                        Some(&k) => {
                            set(&mut base, *a1, *b1, k);
                            set(&mut base, *a2, *b2, k);
                            set(&mut base, *a1, *b2, m - k);
                            set(&mut base, *a2, *b1, m - k);
                        }
                        None => open.push((*a1, *a2, *b1, *b2, m)),
                    }
                }
            }
        }
    }
    let total: usize = open
        .iter()
        .try_fold(1usize, |acc, o| acc.checked_mul(o.4 as usize + 1))
        .filter(|&t| t <= MAX_DISTRIBUTIONS)
        .ok_or_else(|| {
            Error::InvalidCover(format!(
                "more than {MAX_DISTRIBUTIONS} sheet distributions; supply sheet hints"
            ))
        })?;
    let mut seen = BTreeSet::new();
    let mut configs = Vec::new();
    for code in 0..total {
        let mut mult = base.clone();
        let mut rest = code;
        for &(a1, a2, b1, b2, m) in &open {
            let k = (rest % (m as usize + 1)) as i64;
            rest /= m as usize + 1;
            set(&mut mult, a1, b1, k);
            set(&mut mult, a2, b2, k);
            set(&mut mult, a1, b2, m - k);
            set(&mut mult, a2, b1, m - k);
        }
        if seen.insert(mult.clone()) {
            configs.push(CurveConfig::new(labels.clone(), self_int.clone(), mult)?);
        }
    }
    Ok(Pullback { configs, label_map })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(labels: &[&str], gram: &[Vec<i64>]) -> CurveConfig {
        CurveConfig::from_gram(labels.iter().map(|s| s.to_string()).collect(), gram).unwrap()
    }

    fn step(points: &[(&str, &str)], inc: &[(&str, &[&str])]) -> CoverStep {
        let mut branch: Vec<String> = points.iter().map(|p| p.1.to_string()).collect();
        branch.dedup();
        CoverStep {
            branch,
            points: points
                .iter()
                .map(|(id, b)| BranchPoint {
                    id: id.to_string(),
                    branch: b.to_string(),
                })
                .collect(),
            incidence: inc
                .iter()
                .map(|(c, ps)| (c.to_string(), ps.iter().map(|p| p.to_string()).collect()))
                .collect(),
            sheets: Vec::new(),
        }
    }

    #[test]
    fn minus_one_curve_through_two_branch_points() {
        let c = cfg(&["E"], &[vec![-1]]);
        let s = step(&[("p", "B0"), ("q", "B1")], &[("E", &["p", "q"])]);
        let pb = double_cover_pullback(&c, &s).unwrap();
        assert!(pb.is_determined());
        assert_eq!(pb.configs[0].gram_rows(), vec![vec![-2]]);
    }

    #[test]
    fn unbranched_curve_splits() {
        let c = cfg(&["R"], &[vec![-2]]);
        let pb = double_cover_pullback(&c, &CoverStep::default()).unwrap();
        assert_eq!(pb.configs[0].gram_rows(), vec![vec![-2, 0], vec![0, -2]]);
        assert_eq!(pb.label_map[0].1, vec!["R'", "R''"]);
    }

    #[test]
    fn projection_formula_mixed_pair() {
        let c = cfg(&["C", "D"], &[vec![-1, 1], vec![1, -2]]);
        let s = step(&[("p", "B"), ("q", "B")], &[("C", &["p", "q"])]);
        let pb = double_cover_pullback(&c, &s).unwrap();
        let g = pb.configs[0].gram_rows();
        assert_eq!(g.len(), 3);
        assert_eq!(g[0][1] + g[0][2], 2);
        assert_eq!(g[1][2], 0);
    }

    #[test]
    fn split_pair_is_ambiguous() {
        let c = cfg(&["C", "D"], &[vec![-2, 1], vec![1, -2]]);
        let pb = double_cover_pullback(&c, &CoverStep::default()).unwrap();
        assert_eq!(pb.configs.len(), 2);
        for g in pb.configs.iter().map(|c| c.gram_rows()) {
            assert_eq!(g[0][2] + g[0][3] + g[1][2] + g[1][3], 2);
        }
        let mut hinted = CoverStep::default();
        hinted.sheets.push(("C".into(), "D".into(), 1));
        assert!(double_cover_pullback(&c, &hinted).unwrap().is_determined());
    }

    #[test]
    fn odd_branch_count_rejected() {
        let c = cfg(&["C"], &[vec![-1]]);
        let s = step(&[("p", "B")], &[("C", &["p"])]);
        assert!(matches!(
            double_cover_pullback(&c, &s),
            Err(Error::InvalidCover(_))
        ));
    }

    #[test]
    fn tracked_branch_curve_rejected() {
        let c = cfg(&["B"], &[vec![-1]]);
        let s = step(&[("p", "B")], &[]);
        assert!(double_cover_pullback(&c, &s).is_err());
    }
}
