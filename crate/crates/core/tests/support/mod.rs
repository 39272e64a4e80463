//! Seeded randomized suites shared by the property and acceptance tests.
//!
//! `EVENLAT_SEED` (decimal or `0x` hex) picks the seed and `EVENLAT_CASES`
//! the number of cases per suite. Failures name the suite, case and seed.

#![allow(dead_code)]

use std::collections::BTreeSet;

use evenlat::discform::{are_isomorphic, isotropic_subgroups, overlattice, FiniteQuadraticModule};
use evenlat::exactlinalg::{hnf, kernel_saturated, signature, snf, IntMat, Signature};
use evenlat::lattice::{
    discriminant_group, is_primitive, make_named, orthogonal_complement, saturation, Lattice,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED_ENV: &str = "EVENLAT_SEED";
pub const CASES_ENV: &str = "EVENLAT_CASES";
pub const DEFAULT_SEED: u64 = 0x5eed_e7e1;
pub const DEFAULT_CASES: usize = 256;

pub fn seed() -> u64 {
    let Ok(s) = std::env::var(SEED_ENV) else {
        return DEFAULT_SEED;
    };
    let parsed = match s.strip_prefix("0x") {
        Some(h) => u64::from_str_radix(h, 16),
        None => s.parse(),
    };
    parsed.unwrap_or_else(|_| panic!("{SEED_ENV}={s} is not a u64"))
}

pub fn cases() -> usize {
    std::env::var(CASES_ENV)
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_CASES)
}

pub type Outcome = Result<usize, String>;

struct Suite {
    name: &'static str,
    rng: ChaCha8Rng,
    seed: u64,
    case: usize,
}

impl Suite {
    fn new(name: &'static str, tag: u64) -> Self {
        let seed = seed();
        Suite {
            name,
            rng: ChaCha8Rng::seed_from_u64(seed ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15)),
            seed,
            case: 0,
        }
    }

    fn fail(&self, msg: impl std::fmt::Display) -> String {
        format!(
            "{} case {} ({SEED_ENV}={:#x}): {msg}",
            self.name, self.case, self.seed
        )
    }

    fn ensure(&self, ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
        if ok {
            Ok(())
        } else {
            Err(self.fail(msg()))
        }
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMat {
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    IntMat::from_rows(&data)
}

/// A product of random elementary row operations.
fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMat {
    let mut p = IntMat::identity(n);
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..3) {
            0 if i != j => {
                let k = BigInt::from(rng.gen_range(-2i64..=2));
                for c in 0..n {
                    let add = &p[(j, c)] * &k;
                    p[(i, c)] += add;
                }
            }
            1 => {
                for c in 0..n {
                    let t = p[(i, c)].clone();
                    p[(i, c)] = p[(j, c)].clone();
                    p[(j, c)] = t;
                }
            }
            _ => {
                for c in 0..n {
                    p[(i, c)] = -p[(i, c)].clone();
                }
            }
        }
    }
    p
}

fn random_symmetric(rng: &mut ChaCha8Rng, n: usize, bound: i64, even: bool) -> IntMat {
    let mut g = IntMat::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = if i == j && even {
                2 * rng.gen_range(-bound..=bound)
            } else {
                rng.gen_range(-bound..=bound)
            };
            g[(i, j)] = BigInt::from(v);
            g[(j, i)] = BigInt::from(v);
        }
    }
    g
}

/// A nondegenerate even lattice of rank at most `max_rank`. Half the time it
/// is an index-2 sublattice of another even lattice, so that it has even
/// overlattices.
fn random_even_lattice(rng: &mut ChaCha8Rng, max_rank: usize, max_det: i64) -> Lattice {
    loop {
        let n = rng.gen_range(1..=max_rank);
        let mut g = random_symmetric(rng, n, 3, true);
        if rng.gen_bool(0.5) {
            let mut b = random_unimodular(rng, n);
            for c in 0..n {
                b[(0, c)] *= 2;
            }
            g = g.congruence(&b).expect("square");
        }
        let d = g.det().expect("square");
        if !d.is_zero() && d.abs() <= BigInt::from(max_det) {
            return Lattice::new(g).expect("symmetric and nondegenerate");
        }
    }
}

fn abs_det(m: &IntMat) -> BigInt {
    m.det().expect("square").abs()
}

fn hnf_rows(m: &IntMat) -> IntMat {
    let (h, _) = hnf(m);
    let keep: Vec<usize> = (0..h.rows()).filter(|&i| !h.is_row_zero(i)).collect();
    h.select_rows(&keep)
}

fn is_hnf(h: &IntMat) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero = false;
    for i in 0..h.rows() {
        let Some(p) = (0..h.cols()).find(|&j| !h[(i, j)].is_zero()) else {
            seen_zero = true;
            continue;
        };
        if seen_zero || last_pivot.is_some_and(|q| p <= q) || !h[(i, p)].is_positive() {
            return false;
        }
        for r in 0..i {
            let e = &h[(r, p)];
            if e.is_negative() || e >= &h[(i, p)] {
                return false;
            }
        }
        last_pivot = Some(p);
    }
    true
}

/// `S A T = D` with `S`, `T` unimodular and a divisibility chain on `D`;
/// `U A = H` with `U` unimodular, `H` canonical and unchanged by left
/// multiplication of `A` with a unimodular matrix.
pub fn snf_hnf() -> Outcome {
    let mut s = Suite::new("snf_hnf", 1);
    for case in 0..cases() {
        s.case = case;
        let (r, c) = (s.rng.gen_range(1..=4), s.rng.gen_range(1..=4));
        let a = random_matrix(&mut s.rng, r, c, 9);
        let f = snf(&a);
        s.ensure(&(&f.s * &a) * &f.t == f.d, || format!("S A T != D for {a}"))?;
        s.ensure(abs_det(&f.s).is_one() && abs_det(&f.t).is_one(), || {
            format!("S or T not unimodular for {a}")
        })?;
        for i in 0..r {
            for j in 0..c {
                s.ensure(i == j || f.d[(i, j)].is_zero(), || {
                    format!("D not diagonal for {a}")
                })?;
            }
        }
        let diag = f.diagonal();
        s.ensure(diag.iter().all(|d| !d.is_negative()), || {
            format!("negative invariant factor for {a}")
        })?;
        for w in diag.windows(2) {
            let ok = if w[0].is_zero() {
                w[1].is_zero()
            } else {
                w[1].is_multiple_of(&w[0])
            };
            s.ensure(ok, || format!("divisibility chain broken: {diag:?}"))?;
        }
        // The first invariant factor is the gcd of the entries.
        let g = a
            .to_rows()
            .iter()
            .flatten()
            .fold(BigInt::zero(), |g, x| g.gcd(x));
        s.ensure(diag[0] == g, || format!("d1 = {} but gcd = {g}", diag[0]))?;
        if r == c {
            let prod: BigInt = diag.iter().product();
            s.ensure(prod == abs_det(&a), || {
                format!("product of D != |det| for {a}")
            })?;
        }

        let (h, u) = hnf(&a);
        s.ensure(&u * &a == h, || format!("U A != H for {a}"))?;
        s.ensure(abs_det(&u).is_one(), || format!("U not unimodular for {a}"))?;
        s.ensure(is_hnf(&h), || format!("not in Hermite form: {h}"))?;
        let p = random_unimodular(&mut s.rng, r);
        s.ensure(hnf(&(&p * &a)).0 == h, || {
            format!("HNF changed under a unimodular change for {a}")
        })?;
    }
    Ok(cases())
}

/// `|det L|` equals the order of the discriminant group, whose generator
/// lifts lie in the dual with the stated orders.
pub fn det_equals_disc_order() -> Outcome {
    let mut s = Suite::new("det_equals_disc_order", 2);
    for case in 0..cases() {
        s.case = case;
        let n = s.rng.gen_range(1..=4);
        let g = random_symmetric(&mut s.rng, n, 5, false);
        if g.det().expect("square").is_zero() {
            continue;
        }
        let l = Lattice::new(g).expect("nondegenerate");
        let d = discriminant_group(&l).map_err(|e| s.fail(e))?;
        s.ensure(d.order == l.det().abs(), || {
            format!("|A_L| = {} but det = {}", d.order, l.det())
        })?;
        let prod: BigInt = d.invariant_factors.iter().product();
        s.ensure(prod == d.order, || {
            "factors do not multiply to the order".into()
        })?;
        for (g, k) in d.generator_lifts.iter().zip(&d.invariant_factors) {
            s.ensure(g.in_dual(&l), || format!("lift {g:?} not in the dual"))?;
            let scaled = g.scale(&BigRational::from_integer(k.clone()));
            s.ensure(scaled.is_integral(), || format!("{k} * {g:?} not in L"))?;
            s.ensure(&g.order_mod_lattice() == k, || {
                format!("order of {g:?} is not {k}")
            })?;
        }
    }
    Ok(cases())
}

/// Every even index-2 overlattice found by scanning `L + v/2` for
/// `v in {0,1}^n` comes from an order-2 isotropic subgroup of `A_L`, and
/// every such subgroup gives one of them.
pub fn overlattice_round_trip() -> Outcome {
    let mut s = Suite::new("overlattice_round_trip", 3);
    let mut nontrivial = 0;
    for case in 0..cases() {
        s.case = case;
        let l = random_even_lattice(&mut s.rng, 4, 4096);
        let n = l.rank();
        let g = l.gram();
        let two = IntMat::identity(n).scale(&BigInt::from(2));

        let mut brute = BTreeSet::new();
        for mask in 1u32..(1 << n) {
            let v: Vec<BigInt> = (0..n).map(|i| BigInt::from((mask >> i) & 1)).collect();
            let gv = g.mul_vec(&v);
            let integral = gv.iter().all(|x| x.is_even());
            let even = g.bilinear(&v, &v).is_multiple_of(&BigInt::from(8));
            if integral && even {
                let rows = two.stack(&IntMat::try_from_big_rows(vec![v], n).unwrap());
                brute.insert(hnf_rows(&rows.unwrap()).to_rows());
            }
        }

        let m = FiniteQuadraticModule::from_lattice(&l).map_err(|e| s.fail(e))?;
        let mut found = BTreeSet::new();
        for h in isotropic_subgroups(&m).map_err(|e| s.fail(e))? {
            if h.order != 2 {
                continue;
            }
            let (over, basis) = overlattice(&l, &h).map_err(|e| s.fail(e))?;
            let doubled = basis
                .scale(&BigRational::from_integer(BigInt::from(2)))
                .to_intmat()
                .ok_or_else(|| s.fail("index-2 basis has denominators other than 2"))?;
            s.ensure(over.is_even(), || {
                format!("odd overlattice {}", over.gram())
            })?;
            s.ensure(over.det() * BigInt::from(4) == *l.det(), || {
                format!("det {} is not det L / 4", over.det())
            })?;
            let gram = basis
                .checked_mul(&g.to_ratmat())
                .and_then(|bg| bg.checked_mul(&basis.transpose()))
                .map_err(|e| s.fail(e))?;
            s.ensure(gram == over.gram().to_ratmat(), || {
                "overlattice Gram is not B G B^T".into()
            })?;
            found.insert(hnf_rows(&doubled).to_rows());
        }
        if !brute.is_empty() {
            nontrivial += 1;
        }
        s.ensure(brute == found, || {
            format!(
                "gram {g}: brute force finds {} overlattices, the module gives {}",
                brute.len(),
                found.len()
            )
        })?;
    }
    s.ensure(nontrivial > cases() / 10, || {
        format!("only {nontrivial} cases had an index-2 overlattice")
    })?;
    Ok(cases())
}

/// `signature(P^T G P) = signature(G)` for unimodular `P`, and diagonal
/// inputs count signs.
pub fn signature_congruence() -> Outcome {
    let mut s = Suite::new("signature_congruence", 4);
    for case in 0..cases() {
        s.case = case;
        let n = s.rng.gen_range(1..=5);
        let g = random_symmetric(&mut s.rng, n, 4, false);
        let p = random_unimodular(&mut s.rng, n);
        let sg = signature(&g).map_err(|e| s.fail(e))?;
        let moved = g.congruence(&p).expect("square");
        let sm = signature(&moved).map_err(|e| s.fail(e))?;
        s.ensure(sg == sm, || format!("{sg:?} != {sm:?} for {g}"))?;
        s.ensure(sg.plus + sg.minus == g.rank(), || {
            format!("{sg:?} disagrees with rank {}", g.rank())
        })?;

        let d: Vec<i64> = (0..n).map(|_| s.rng.gen_range(-3..=3)).collect();
        let want = Signature::new(
            d.iter().filter(|&&x| x > 0).count(),
            d.iter().filter(|&&x| x < 0).count(),
            d.iter().filter(|&&x| x == 0).count(),
        );
        let got = signature(&IntMat::diag(&d)).map_err(|e| s.fail(e))?;
        s.ensure(got == want, || format!("diag {d:?} gives {got:?}"))?;
    }
    Ok(cases())
}

/// `q(x + y) - q(x) - q(y) = 2 b(x, y)` and `q(k x) = k^2 q(x)` in `Q/2Z`,
/// with `q` also recomputed from the lifts.
pub fn quadratic_polarisation() -> Outcome {
    let mut s = Suite::new("quadratic_polarisation", 5);
    let two = BigRational::from_integer(BigInt::from(2));
    let in_2z = |v: BigRational| v.is_integer() && v.to_integer().is_even();
    for case in 0..cases() {
        s.case = case;
        let l = random_even_lattice(&mut s.rng, 4, 100_000);
        let m = FiniteQuadraticModule::from_lattice(&l).map_err(|e| s.fail(e))?;
        let pick = |rng: &mut ChaCha8Rng| {
            let exps: Vec<i64> = m
                .orders()
                .iter()
                .map(|&d| rng.gen_range(0..d as i64))
                .collect();
            m.element(&exps).expect("in range")
        };
        let x = pick(&mut s.rng);
        let y = pick(&mut s.rng);
        let lhs = m.q_value(&m.add(&x, &y)) - m.q_value(&x) - m.q_value(&y);
        s.ensure(in_2z(lhs - &two * m.b_value(&x, &y)), || {
            format!("polarisation fails for {x}, {y} on {}", l.gram())
        })?;
        let k = s.rng.gen_range(0..7u64);
        let kk = BigRational::from_integer(BigInt::from(k * k));
        s.ensure(in_2z(m.q_value(&m.mul(k, &x)) - kk * m.q_value(&x)), || {
            format!("q({k} x) != {k}^2 q(x) for {x}")
        })?;
        let lift = m.lift(&x).expect("built from a lattice");
        s.ensure(in_2z(lift.norm(&l) - m.q_value(&x)), || {
            format!("q({x}) disagrees with the norm of its lift")
        })?;
    }
    Ok(cases())
}

/// Primitive sublattices of the unimodular `U^2 + E8` and their orthogonal
/// complements have equal `|det|` and opposite discriminant forms.
pub fn primitive_complements() -> Outcome {
    let mut s = Suite::new("primitive_complements", 6);
    let host = make_named("U^2+E8").expect("known name");
    let n = host.rank();
    for case in 0..cases() {
        s.case = case;
        let k = s.rng.gen_range(1..=3);
        let gens = random_matrix(&mut s.rng, k, n, 2);
        if gens.rank() < k {
            continue;
        }
        let sat = saturation(&host, &gens).map_err(|e| s.fail(e))?;
        s.ensure(
            saturation(&host, &sat).map_err(|e| s.fail(e))? == sat,
            || "saturation is not idempotent".into(),
        )?;
        s.ensure(is_primitive(&host, &sat).map_err(|e| s.fail(e))?, || {
            "saturation is not primitive".into()
        })?;
        for row in kernel_saturated(&gens).to_rows() {
            s.ensure(gens.mul_vec(&row).iter().all(Zero::is_zero), || {
                "kernel vector does not annihilate".into()
            })?;
        }
        let sg = host.gram().congruence(&sat).expect("shapes agree");
        let comp = orthogonal_complement(&host, &sat).map_err(|e| s.fail(e))?;
        for c in comp.basis_coords.to_rows() {
            for g in gens.to_rows() {
                s.ensure(host.pair(&c, &g).is_zero(), || {
                    "complement not orthogonal".into()
                })?;
            }
        }
        if sg.det().expect("square").is_zero() || comp.degenerate {
            continue;
        }
        let sl = Lattice::new(sg).expect("nondegenerate");
        let cl = comp.lattice();
        s.ensure(sl.det().abs() == cl.det().abs(), || {
            format!("|det S| = {} but |det S^perp| = {}", sl.det(), cl.det())
        })?;
        if sl.det().abs() <= BigInt::from(1024) {
            let ms = FiniteQuadraticModule::from_lattice(&sl).map_err(|e| s.fail(e))?;
            let mc = FiniteQuadraticModule::from_lattice(&cl).map_err(|e| s.fail(e))?;
            let iso = are_isomorphic(&ms, &mc.negate(), 1024).map_err(|e| s.fail(e))?;
            s.ensure(iso.is_some(), || {
                format!("q_S is not -q_S^perp for {}", sl.gram())
            })?;
        }
    }
    Ok(cases())
}

/// Every suite, by name.
pub const SUITES: [(&str, fn() -> Outcome); 6] = [
    ("snf_hnf", snf_hnf),
    ("det_equals_disc_order", det_equals_disc_order),
    ("overlattice_round_trip", overlattice_round_trip),
    ("signature_congruence", signature_congruence),
    ("quadratic_polarisation", quadratic_polarisation),
    ("primitive_complements", primitive_complements),
];
