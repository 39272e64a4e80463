//! Finite quadratic modules: discriminant groups with their `Q/2Z`-valued form.

mod enumerate;
mod iso;

pub use enumerate::{isotropic_elements, isotropic_subgroups, overlattice, IsotropicSubgroup};
pub use iso::{are_isomorphic, default_guard, Isomorphism, DEFAULT_GUARD_ORDER, GUARD_ENV};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::exactlinalg::{denominator_lcm, fmt_rat, RatMat};
use crate::lattice::{discriminant_group, DualVector, Lattice};
use crate::{Error, Result};

/// Largest group the enumeration routines will walk.
pub const ENUMERATION_LIMIT: u64 = 1 << 20;

/// Exponent vector against the module generators, each entry in `[0, d_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement(pub Vec<u64>);

impl GroupElement {
    pub fn exps(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// `q` on generators in units of `1/denom` modulo `2 denom`, and `b` in units
/// of `1/denom` modulo `denom`. The diagonal of `b` holds `q mod 1`.
#[derive(Clone, Debug)]
pub struct FiniteQuadraticModule {
    orders: Vec<u64>,
    denom: i64,
    q: Vec<i64>,
    b: Vec<Vec<i64>>,
    source: Option<(Lattice, Vec<DualVector>)>,
}

impl PartialEq for FiniteQuadraticModule {
    /// Equal presentations: same orders and the same values on generators.
    fn eq(&self, other: &Self) -> bool {
        self.orders == other.orders && self.value_matrix() == other.value_matrix()
    }
}

impl Eq for FiniteQuadraticModule {}

fn to_units(v: &BigRational, denom: i64, modulus: i64) -> Result<i64> {
    let scaled = v * BigRational::from_integer(denom.into());
    if !scaled.is_integer() {
        return Err(Error::InvalidModule(format!(
            "value {} has denominator not dividing {denom}",
            fmt_rat(v)
        )));
    }
    let r = scaled.to_integer().mod_floor(&BigInt::from(modulus));
    Ok(r.to_i64().expect("reduced below modulus"))
}

impl FiniteQuadraticModule {
    /// Builds a module from orders and a symmetric rational matrix whose
    /// diagonal holds `q(g_i)` and whose off-diagonal holds `b(g_i, g_j)`.
    pub fn from_values(orders: Vec<u64>, values: &RatMat) -> Result<Self> {
        let k = orders.len();
        if values.rows() != k || values.cols() != k {
            return Err(Error::DimensionMismatch(format!(
                "{k} generators but a {}x{} value matrix",
                values.rows(),
                values.cols()
            )));
        }
        if orders.iter().any(|&d| d < 2) {
            return Err(Error::InvalidModule(
                "generator orders must be at least 2".into(),
            ));
        }
        for i in 0..k {
            for j in 0..k {
                if i != j && values[(i, j)] != values[(j, i)] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        let lcm = denominator_lcm(values.entries());
        let mut denom = orders
            .iter()
            .fold(BigInt::from(1), |a, &d| a.lcm(&BigInt::from(d)));
        denom = denom.lcm(&lcm);
        let denom = denom
            .to_i64()
            .filter(|&d| d < (1 << 30))
            .ok_or_else(|| Error::InvalidModule("denominator too large".into()))?;
        let mut q = vec![0; k];
        let mut b = vec![vec![0; k]; k];
        for i in 0..k {
            q[i] = to_units(&values[(i, i)], denom, 2 * denom)?;
            for j in 0..k {
                b[i][j] = to_units(&values[(i, j)], denom, denom)?;
            }
        }
        let m = FiniteQuadraticModule {
            orders,
            denom,
            q,
            b,
            source: None,
        };
        m.validate()?;
        Ok(m)
    }

    /// Checks that `q` and `b` descend to the finite group.
    fn validate(&self) -> Result<()> {
        let n = self.denom as i128;
        for i in 0..self.len() {
            let d = self.orders[i] as i128;
            if (d * d * self.q[i] as i128) % (2 * n) != 0 {
                return Err(Error::InvalidModule(format!(
                    "q(d*g) is nonzero for generator {i}"
                )));
            }
            for j in 0..self.len() {
                if (d * self.b[i][j] as i128) % n != 0 {
                    return Err(Error::InvalidModule(format!(
                        "b(d*g, h) is nonzero for generators {i}, {j}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The discriminant module of an even lattice, on the Smith lifts.
    pub fn from_lattice(l: &Lattice) -> Result<Self> {
        if !l.is_even() {
            return Err(Error::OddLattice);
        }
        let dg = discriminant_group(l)?;
        let k = dg.length();
        let lifts = dg.generator_lifts.clone();
        let values = RatMat::from_fn(k, k, |i, j| lifts[i].pair(l, &lifts[j]));
        let orders = dg
            .invariant_factors
            .iter()
            .map(|d| {
                d.to_u64()
                    .ok_or_else(|| Error::InvalidModule("group too large".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut m = Self::from_values(orders, &values)?;
        m.source = Some((l.clone(), lifts));
        Ok(m)
    }

    pub fn trivial() -> Self {
        FiniteQuadraticModule {
            orders: Vec::new(),
            denom: 1,
            q: Vec::new(),
            b: Vec::new(),
            source: None,
        }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Number of generators.
    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn source_lattice(&self) -> Option<&Lattice> {
        self.source.as_ref().map(|(l, _)| l)
    }

    pub fn lifts(&self) -> Option<&[DualVector]> {
        self.source.as_ref().map(|(_, v)| v.as_slice())
    }

    /// A lift to `L*` of an element, when the module came from a lattice.
    pub fn lift(&self, x: &GroupElement) -> Option<DualVector> {
        let (l, lifts) = self.source.as_ref()?;
        let mut acc = DualVector::zero(l.rank());
        for (e, g) in x.0.iter().zip(lifts) {
            if *e != 0 {
                acc = acc.add(&g.scale(&BigRational::from_integer((*e).into())));
            }
        }
        Some(acc)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.len()])
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut e = self.zero();
        e.0[i] = 1;
        e
    }

    /// Reduces arbitrary integer exponents into canonical residues.
    pub fn element(&self, exps: &[i64]) -> Result<GroupElement> {
        if exps.len() != self.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} exponents for {} generators",
                exps.len(),
                self.len()
            )));
        }
        Ok(GroupElement(
            exps.iter()
                .zip(&self.orders)
                .map(|(&e, &d)| e.rem_euclid(d as i64) as u64)
                .collect(),
        ))
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement(
            x.0.iter()
                .zip(&y.0)
                .zip(&self.orders)
                .map(|((a, b), d)| (a + b) % d)
                .collect(),
        )
    }

    pub fn neg(&self, x: &GroupElement) -> GroupElement {
        GroupElement(
            x.0.iter()
                .zip(&self.orders)
                .map(|(a, d)| (d - a) % d)
                .collect(),
        )
    }

    pub fn mul(&self, k: u64, x: &GroupElement) -> GroupElement {
        GroupElement(
            x.0.iter()
                .zip(&self.orders)
                .map(|(a, d)| (a * (k % d)) % d)
                .collect(),
        )
    }

    /// Additive order of an element.
    pub fn element_order(&self, x: &GroupElement) -> u64 {
        x.0.iter()
            .zip(&self.orders)
            .fold(1u64, |acc, (&a, &d)| acc.lcm(&(d / d.gcd(&a))))
    }

    /// `q(x)` in units of `1/denom`, reduced modulo `2 denom`.
    pub(crate) fn q_units(&self, x: &[u64]) -> i64 {
        let n2 = 2 * self.denom as i128;
        let mut acc: i128 = 0;
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            let ei = x[i] as i128;
            acc += ei * ei % n2 * self.q[i] as i128;
            for j in i + 1..x.len() {
                if x[j] != 0 {
                    acc += 2 * ei * x[j] as i128 % n2 * self.b[i][j] as i128;
                }
            }
            acc %= n2;
        }
        acc.rem_euclid(n2) as i64
    }

    /// `b(x, y)` in units of `1/denom`, reduced modulo `denom`.
    pub(crate) fn b_units(&self, x: &[u64], y: &[u64]) -> i64 {
        let n = self.denom as i128;
        let mut acc: i128 = 0;
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            for j in 0..y.len() {
                if y[j] != 0 {
                    acc += (x[i] as i128 * y[j] as i128) % n * self.b[i][j] as i128;
                }
            }
            acc %= n;
        }
        acc.rem_euclid(n) as i64
    }

    pub(crate) fn denom(&self) -> i64 {
        self.denom
    }

    /// `q(x)` in `[0, 2)`.
    pub fn q_value(&self, x: &GroupElement) -> BigRational {
        BigRational::new(self.q_units(&x.0).into(), self.denom.into())
    }

    /// `b(x, y)` in `[0, 1)`.
    pub fn b_value(&self, x: &GroupElement, y: &GroupElement) -> BigRational {
        BigRational::new(self.b_units(&x.0, &y.0).into(), self.denom.into())
    }

    pub fn is_isotropic(&self, x: &GroupElement) -> bool {
        self.q_units(&x.0) == 0
    }

    /// Diagonal `q(g_i)` in `[0,2)`, off-diagonal `b(g_i,g_j)` in `[0,1)`.
    pub fn value_matrix(&self) -> RatMat {
        let k = self.len();
        RatMat::from_fn(k, k, |i, j| {
            let v = if i == j { self.q[i] } else { self.b[i][j] };
            BigRational::new(v.into(), self.denom.into())
        })
    }

    /// `q -> -q`, `b -> -b`.
    pub fn negate(&self) -> Self {
        let k = self.len();
        let n = self.denom;
        FiniteQuadraticModule {
            orders: self.orders.clone(),
            denom: n,
            q: self.q.iter().map(|&v| (2 * n - v) % (2 * n)).collect(),
            b: (0..k)
                .map(|i| (0..k).map(|j| (n - self.b[i][j]) % n).collect())
                .collect(),
            source: None,
        }
    }

    /// Orthogonal direct sum; generators of `self` come first.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let k1 = self.len();
        let k = k1 + other.len();
        let mut orders = self.orders.clone();
        orders.extend(&other.orders);
        let mut values = RatMat::zeros(k, k);
        let a = self.value_matrix();
        let c = other.value_matrix();
        for i in 0..k1 {
            for j in 0..k1 {
                values[(i, j)] = a[(i, j)].clone();
            }
        }
        for i in 0..other.len() {
            for j in 0..other.len() {
                values[(k1 + i, k1 + j)] = c[(i, j)].clone();
            }
        }
        if k == 0 {
            return Self::trivial();
        }
        Self::from_values(orders, &values).expect("sum of valid modules")
    }

    /// The same module presented on new generators, which must form a basis
    /// (independent with orders multiplying to the group order).
    pub fn change_basis(&self, gens: &[GroupElement]) -> Result<Self> {
        let orders: Vec<u64> = gens.iter().map(|g| self.element_order(g)).collect();
        if orders.iter().product::<u64>() != self.order() || orders.iter().any(|&d| d < 2) {
            return Err(Error::InvalidModule(
                "new generators are not a basis".into(),
            ));
        }
        if enumerate::span(self, gens)?.len() as u64 != self.order() {
            return Err(Error::InvalidModule(
                "new generators do not generate".into(),
            ));
        }
        let k = gens.len();
        let values = RatMat::from_fn(k, k, |i, j| {
            if i == j {
                self.q_value(&gens[i])
            } else {
                self.b_value(&gens[i], &gens[j])
            }
        });
        let mut m = Self::from_values(orders, &values)?;
        if let Some((l, _)) = &self.source {
            let lifts = gens
                .iter()
                .map(|g| self.lift(g).expect("has source"))
                .collect();
            m.source = Some((l.clone(), lifts));
        }
        Ok(m)
    }

    /// All elements in lexicographic exponent order.
    pub fn elements(&self) -> Result<Vec<GroupElement>> {
        if self.order() > ENUMERATION_LIMIT {
            return Err(Error::GuardExceeded {
                order: self.order(),
                guard: ENUMERATION_LIMIT,
            });
        }
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut cur = vec![0u64; self.len()];
        loop {
            out.push(GroupElement(cur.clone()));
            let mut i = self.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < self.orders[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    /// Position of an element in [`Self::elements`].
    pub(crate) fn index_of(&self, x: &[u64]) -> usize {
        x.iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (&e, &d)| acc * d as usize + e as usize)
    }

    /// True when `q` and `b` vanish identically.
    pub fn is_trivial_form(&self) -> bool {
        self.q.iter().all(Zero::is_zero) && self.b.iter().flatten().all(Zero::is_zero)
    }
}
