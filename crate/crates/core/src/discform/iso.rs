use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{FiniteQuadraticModule, GroupElement};
use crate::{Error, Result};

/// Default bound on the group order for the isomorphism search.
pub const DEFAULT_GUARD_ORDER: u64 = 1024;

/// Environment variable overriding [`DEFAULT_GUARD_ORDER`].
pub const GUARD_ENV: &str = "EVENLAT_GUARD_ORDER";

/// The guard from the environment, or the default.
pub fn default_guard() -> u64 {
    std::env::var(GUARD_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_GUARD_ORDER)
}

/// Images of the generators of the first module in the second.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Isomorphism {
    pub images: Vec<GroupElement>,
}

/// A value `k/denom` reduced to lowest terms, for comparing across modules.
fn reduced(v: i64, denom: i64) -> (i64, i64) {
    let g = v.gcd(&denom).max(1);
    (v / g, denom / g)
}

type Fingerprint = BTreeMap<(u64, (i64, i64)), usize>;

fn fingerprint(m: &FiniteQuadraticModule, els: &[GroupElement]) -> Fingerprint {
    let mut f = BTreeMap::new();
    for x in els {
        let key = (m.element_order(x), reduced(m.q_units(&x.0), m.denom()));
        *f.entry(key).or_insert(0) += 1;
    }
    f
}

struct Search<'a> {
    m1: &'a FiniteQuadraticModule,
    m2: &'a FiniteQuadraticModule,
    els2: &'a [GroupElement],
    /// Candidates for each generator image: right order and right q.
    candidates: Vec<Vec<GroupElement>>,
    /// `b(g_i, g_j)` in lowest terms.
    b1: Vec<Vec<(i64, i64)>>,
    images: Vec<GroupElement>,
}

impl Search<'_> {
    fn run(&mut self, span: &[bool], size: u64) -> bool {
        let i = self.images.len();
        if i == self.m1.len() {
            return true;
        }
        let d = self.m1.orders()[i];
        for y in self.candidates[i].clone() {
            let ok = (0..i).all(|j| {
                reduced(self.m2.b_units(&self.images[j].0, &y.0), self.m2.denom()) == self.b1[i][j]
            });
            if !ok {
                continue;
            }
            let Some(next) = extend_span(self.m2, self.els2, span, &y, d, size) else {
                continue;
            };
            self.images.push(y);
            if self.run(&next, size * d) {
                return true;
            }
            self.images.pop();
        }
        false
    }
}

/// Adds multiples of `y` to the span, failing if they collide early, which
/// would make the map non-injective.
fn extend_span(
    m: &FiniteQuadraticModule,
    els: &[GroupElement],
    span: &[bool],
    y: &GroupElement,
    d: u64,
    size: u64,
) -> Option<Vec<bool>> {
    let members: Vec<usize> = (0..span.len()).filter(|&i| span[i]).collect();
    debug_assert_eq!(members.len() as u64, size);
    let mut next = span.to_vec();
    let mut shift = y.clone();
    for _ in 1..d {
        for &i in &members {
            let z = m.add(&els[i], &shift);
            let k = m.index_of(&z.0);
            if next[k] {
                return None;
            }
            next[k] = true;
        }
        shift = m.add(&shift, y);
    }
    Some(next)
}

/// Searches for a group isomorphism `m1 -> m2` preserving `q`.
///
/// Generators are mapped in order, each to an element of the same order and
/// `q`-value with matching `b` against earlier images; the span is tracked to
/// keep the map injective. Returns `None` when no isomorphism exists.
pub fn are_isomorphic(
    m1: &FiniteQuadraticModule,
    m2: &FiniteQuadraticModule,
    guard: u64,
) -> Result<Option<Isomorphism>> {
    for m in [m1, m2] {
        if m.order() > guard {
            return Err(Error::GuardExceeded {
                order: m.order(),
                guard,
            });
        }
    }
    if m1.order() != m2.order() {
        return Ok(None);
    }
    let els1 = m1.elements()?;
    let els2 = m2.elements()?;
    if fingerprint(m1, &els1) != fingerprint(m2, &els2) {
        return Ok(None);
    }
    let candidates = (0..m1.len())
        .map(|i| {
            let g = m1.generator(i);
            let key = (m1.element_order(&g), reduced(m1.q_units(&g.0), m1.denom()));
            els2.iter()
                .filter(|y| (m2.element_order(y), reduced(m2.q_units(&y.0), m2.denom())) == key)
                .cloned()
                .collect()
        })
        .collect();
    let b1 = (0..m1.len())
        .map(|i| {
            (0..m1.len())
                .map(|j| {
                    let u = m1.b_units(&m1.generator(i).0, &m1.generator(j).0);
                    reduced(u, m1.denom())
                })
                .collect()
        })
        .collect();
    let mut s = Search {
        m1,
        m2,
        els2: &els2,
        candidates,
        b1,
        images: Vec::new(),
    };
    let mut start = vec![false; m2.order() as usize];
    start[0] = true;
    if s.run(&start, 1) {
        Ok(Some(Isomorphism { images: s.images }))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::make_named;

    fn module(name: &str) -> FiniteQuadraticModule {
        FiniteQuadraticModule::from_lattice(&make_named(name).unwrap()).unwrap()
    }

    #[test]
    fn u2_differs_from_split_form() {
        assert!(are_isomorphic(&module("U(2)"), &module("<2>+<-2>"), 1024)
            .unwrap()
            .is_none());
    }

    #[test]
    fn isomorphic_presentations() {
        let a = module("U(2)+<-4>");
        let b = module("<-4>+U(2)");
        let w = are_isomorphic(&a, &b, 1024).unwrap().unwrap();
        assert_eq!(w.images.len(), a.len());
        for i in 0..a.len() {
            assert_eq!(a.q_value(&a.generator(i)), b.q_value(&w.images[i]));
        }
    }

    #[test]
    fn guard_enforced() {
        let a = module("<-4>^6");
        assert!(matches!(
            are_isomorphic(&a, &a, 1024),
            Err(Error::GuardExceeded {
                order: 4096,
                guard: 1024
            })
        ));
    }

    #[test]
    fn self_isomorphism_of_negation_pair() {
        // <2> and <-2> are not isomorphic, but <2>+<-2> is self-dual up to sign.
        let a = module("<2>+<-2>");
        assert!(are_isomorphic(&a, &a.negate(), 16).unwrap().is_some());
        assert!(are_isomorphic(&module("<2>"), &module("<-2>"), 16)
            .unwrap()
            .is_none());
    }
}
