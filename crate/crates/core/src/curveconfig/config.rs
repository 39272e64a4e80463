use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::exactlinalg::IntMat;
use crate::{Error, Result};

/// Labelled smooth rational curves with their self-intersections and pairwise
/// intersection multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveConfig {
    labels: Vec<String>,
    self_int: Vec<i64>,
    /// Symmetric, nonnegative, zero diagonal.
    mult: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct CurveJson {
    label: String,
    #[serde(rename = "self")]
    self_int: i64,
}

#[derive(Serialize, Deserialize)]
struct ConfigJson {
    curves: Vec<CurveJson>,
    mult: Vec<(String, String, i64)>,
}

impl CurveConfig {
    pub fn new(labels: Vec<String>, self_int: Vec<i64>, mult: Vec<Vec<i64>>) -> Result<Self> {
        let n = labels.len();
        if self_int.len() != n || mult.len() != n || mult.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "{n} labels, {} self-intersections, {} multiplicity rows",
                self_int.len(),
                mult.len()
            )));
        }
        let mut seen = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if seen.insert(l.as_str(), i).is_some() {
                return Err(Error::InvalidConfig(format!("duplicate label `{l}`")));
            }
        }
        for i in 0..n {
            if mult[i][i] != 0 {
                return Err(Error::InvalidConfig(format!(
                    "multiplicity of `{}` with itself must be 0",
                    labels[i]
                )));
            }
            for j in 0..n {
                if mult[i][j] < 0 {
                    return Err(Error::InvalidConfig(format!(
                        "negative multiplicity between `{}` and `{}`",
                        labels[i], labels[j]
                    )));
                }
                if mult[i][j] != mult[j][i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(CurveConfig {
            labels,
            self_int,
            mult,
        })
    }

    /// Splits a Gram matrix into self-intersections and multiplicities.
    pub fn from_gram(labels: Vec<String>, gram: &[Vec<i64>]) -> Result<Self> {
        let self_int = (0..gram.len()).map(|i| gram[i][i]).collect();
        let mult = gram
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.iter()
                    .enumerate()
                    .map(|(j, &v)| if i == j { 0 } else { v })
                    .collect()
            })
            .collect();
        Self::new(labels, self_int, mult)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn self_int(&self, i: usize) -> i64 {
        self.self_int[i]
    }

    pub fn mult(&self, i: usize, j: usize) -> i64 {
        self.mult[i][j]
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown curve `{label}`")))
    }

    pub fn indices<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        labels.iter().map(|l| self.index(l.as_ref())).collect()
    }

    /// Intersection number of curves `i` and `j`.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        if i == j {
            self.self_int[i]
        } else {
            self.mult[i][j]
        }
    }

    pub fn gram_rows(&self) -> Vec<Vec<i64>> {
        (0..self.len())
            .map(|i| (0..self.len()).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    pub fn gram(&self) -> IntMat {
        IntMat::from_rows(&self.gram_rows())
    }

    /// `x . y` for integer combinations of the curves.
    pub fn pair_ints(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0;
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b != 0 {
                    s += a * b * self.entry(i, j);
                }
            }
        }
        s
    }

    /// Pairings of a rational combination with every curve.
    pub fn pairing_vector(&self, x: &[BigRational]) -> Vec<BigRational> {
        (0..self.len())
            .map(|j| {
                x.iter()
                    .enumerate()
                    .filter(|(_, a)| !num_traits::Zero::is_zero(*a))
                    .map(|(i, a)| a * BigRational::from_integer(BigInt::from(self.entry(i, j))))
                    .sum()
            })
            .collect()
    }

    /// The same configuration under new names, in the same order.
    pub fn relabel(&self, labels: Vec<String>) -> Result<Self> {
        Self::new(labels, self.self_int.clone(), self.mult.clone())
    }

    /// The configuration restricted to `idx`, in that order.
    pub fn restrict(&self, idx: &[usize]) -> Self {
        CurveConfig {
            labels: idx.iter().map(|&i| self.labels[i].clone()).collect(),
            self_int: idx.iter().map(|&i| self.self_int[i]).collect(),
            mult: idx
                .iter()
                .map(|&i| idx.iter().map(|&j| self.mult[i][j]).collect())
                .collect(),
        }
    }

    /// Disjoint union; the labels must not clash.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        let n = self.len();
        let m = other.len();
        let mut mult = vec![vec![0; n + m]; n + m];
        for i in 0..n {
            mult[i][..n].copy_from_slice(&self.mult[i]);
        }
        for i in 0..m {
            mult[n + i][n..].copy_from_slice(&other.mult[i]);
        }
        let labels = self.labels.iter().chain(&other.labels).cloned().collect();
        let self_int = self
            .self_int
            .iter()
            .chain(&other.self_int)
            .copied()
            .collect();
        Self::new(labels, self_int, mult)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let curves = self
            .labels
            .iter()
            .zip(&self.self_int)
            .map(|(l, &s)| CurveJson {
                label: l.clone(),
                self_int: s,
            })
            .collect();
        let mut mult = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.mult[i][j] != 0 {
                    mult.push((
                        self.labels[i].clone(),
                        self.labels[j].clone(),
                        self.mult[i][j],
                    ));
                }
            }
        }
        serde_json::to_value(ConfigJson { curves, mult }).expect("plain data")
    }

    /// Parses the configuration format. Unlisted pairs are disjoint; a pair
    /// listed twice must agree.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let raw: ConfigJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let labels: Vec<String> = raw.curves.iter().map(|c| c.label.clone()).collect();
        let self_int = raw.curves.iter().map(|c| c.self_int).collect();
        let n = labels.len();
        let pos: BTreeMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut mult = vec![vec![0; n]; n];
        let mut set = vec![vec![false; n]; n];
        for (a, b, m) in &raw.mult {
            let (Some(&i), Some(&j)) = (pos.get(a.as_str()), pos.get(b.as_str())) else {
                return Err(Error::InvalidConfig(format!(
                    "unknown curve in pair ({a}, {b})"
                )));
            };
            if i == j {
                return Err(Error::InvalidConfig(format!(
                    "pair ({a}, {b}) repeats a curve"
                )));
            }
            if set[i][j] && mult[i][j] != *m {
                return Err(Error::InvalidConfig(format!(
                    "conflicting entries for ({a}, {b})"
                )));
            }
            set[i][j] = true;
            set[j][i] = true;
            mult[i][j] = *m;
            mult[j][i] = *m;
        }
        Self::new(labels, self_int, mult)
    }
}

/// A permutation of the curves of a configuration.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvolutionAction {
    /// Zero-based image of each curve.
    perm: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct PermJson {
    perm: Vec<usize>,
}

impl InvolutionAction {
    /// From the one-based list of images, as written in the JSON format.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let perm: Vec<usize> = images
            .iter()
            .map(|&k| {
                if k == 0 || k > n {
                    Err(Error::InvalidConfig(format!(
                        "image {k} out of range 1..={n}"
                    )))
                } else {
                    Ok(k - 1)
                }
            })
            .collect::<Result<_>>()?;
        let mut hit = vec![false; n];
        for &p in &perm {
            if std::mem::replace(&mut hit[p], true) {
                return Err(Error::InvalidConfig(format!("{} is hit twice", p + 1)));
            }
        }
        if (0..n).any(|i| perm[perm[i]] != i) {
            return Err(Error::InvalidConfig("permutation has order > 2".into()));
        }
        Ok(InvolutionAction { perm })
    }

    pub fn identity(n: usize) -> Self {
        InvolutionAction {
            perm: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.perm.iter().map(|p| p + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Orbits `{i, perm(i)}` ordered by their smaller element.
    pub fn orbits(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .filter(|&i| i <= self.perm[i])
            .map(|i| (i, self.perm[i]))
            .collect()
    }

    /// Errors with the first pair whose intersection number is not preserved.
    pub fn check_isometry(&self, config: &CurveConfig) -> Result<()> {
        if self.len() != config.len() {
            return Err(Error::DimensionMismatch(format!(
                "permutation of {} curves on a configuration of {}",
                self.len(),
                config.len()
            )));
        }
        for i in 0..self.len() {
            for j in i..self.len() {
                if config.entry(i, j) != config.entry(self.perm[i], self.perm[j]) {
                    return Err(Error::NotIsometry(
                        config.labels[i].clone(),
                        config.labels[j].clone(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PermJson {
            perm: self.one_based(),
        })
        .expect("plain data")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let raw: PermJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_one_based(&raw.perm)
    }
}
