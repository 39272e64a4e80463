//! Runs the eleven acceptance criteria and prints one line per criterion.
//! All comparisons are exact. Exits nonzero if any criterion fails.

mod support;

use std::process::ExitCode;
use std::time::Instant;

use evenlat::curveconfig::{
    data, reconstruct_24, Constraints, CurveConfig, Reconstruction, Solution24, TierPolicy,
};
use evenlat::discform::{isotropic_elements, FiniteQuadraticModule};
use evenlat::exactlinalg::{rat, snf, snf_rational, IntMat};
use evenlat::lattice::{discriminant_group, is_primitive, make_named, sublattice, Lattice};
use evenlat::paperverify::{PaperData, Status, VerificationReport, Verifier};
use num_bigint::BigInt;
use num_rational::BigRational;

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn passed(r: &VerificationReport, id: &str) -> Result<(), String> {
    let e = r
        .entry(id)
        .ok_or_else(|| format!("{id} missing from the report"))?;
    match &e.mismatch {
        _ if e.status == Status::Pass => Ok(()),
        Some(m) => Err(format!(
            "{id} is {}: `{}` at {:?} expected {} got {}",
            e.status.as_str(),
            m.key,
            m.coords,
            m.expected,
            m.got
        )),
        None => Err(format!(
            "{id} is {}: {}",
            e.status.as_str(),
            e.notes.join("; ")
        )),
    }
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn q_lattice(c: &CurveConfig) -> Result<Lattice, String> {
    let q: Vec<Vec<i64>> = data::Q_BASIS
        .iter()
        .map(|t| data::dense(c.len(), t))
        .collect();
    let g = c
        .gram()
        .congruence(&IntMat::from_rows(&q))
        .map_err(|e| e.to_string())?;
    Lattice::new(g).map_err(|e| e.to_string())
}

struct Ctx {
    verifier: Verifier,
    report: VerificationReport,
}

impl Ctx {
    fn config(&self) -> Result<&CurveConfig, String> {
        self.verifier
            .reconstruction()
            .and_then(|r| r.unique())
            .map_err(|e| e.to_string())
    }
}

fn c1(x: &Ctx) -> Verdict {
    let q = q_lattice(x.config()?)?;
    let inv = q.gram_inverse().map_err(|e| e.to_string())?;
    let d = snf_rational(&inv).map_err(|e| e.to_string())?.diagonal();
    let want = vec![
        rat(1, 1),
        rat(1, 1),
        rat(1, 2),
        rat(1, 2),
        rat(1, 4),
        rat(1, 4),
    ];
    ensure(d == want, format!("rational SNF diagonal {d:?}"))?;
    let f = discriminant_group(&q).map_err(|e| e.to_string())?;
    ensure(
        f.invariant_factors == big(&[2, 2, 4, 4]),
        format!("A_Q factors {:?}", f.invariant_factors),
    )?;
    passed(&x.report, "lemma_4_1")?;
    Ok("diag(1,1,1/2,1/2,1/4,1/4); A_Q = Z2^2 + Z4^2".into())
}

fn c2(x: &Ctx) -> Verdict {
    passed(&x.report, "lemma_4_2")?;
    let e = x.report.entry("lemma_4_2").expect("checked");
    let w = &e.witnesses["pairings"];
    ensure(
        w[0][0] == serde_json::json!(-5) && w[2][3] == serde_json::json!("-5/4"),
        format!("pairings {w}"),
    )?;
    Ok("4x4 dual pairing table matches entrywise (v1^2 = -5, w1.w2 = -5/4)".into())
}

fn c3(x: &Ctx) -> Verdict {
    let q = q_lattice(x.config()?)?;
    let m = FiniteQuadraticModule::from_lattice(&q).map_err(|e| e.to_string())?;
    let iso = isotropic_elements(&m).map_err(|e| e.to_string())?;
    ensure(
        iso.len() == 7,
        format!("{} nonzero isotropic classes", iso.len()),
    )?;
    passed(&x.report, "lemma_4_2")?;
    Ok("exactly 7 nonzero isotropic classes, equal to the printed set".into())
}

fn c4(x: &Ctx) -> Verdict {
    passed(&x.report, "thm_4_3")?;
    let e = x.report.entry("thm_4_3").expect("checked");
    let n = e.witnesses["certificates"].as_array().map_or(0, Vec::len);
    ensure(n == 7, format!("{n} certificates"))?;
    Ok("7 certificates from the printed relation families replay over Z; NS(X) = S + Q".into())
}

fn c5(x: &Ctx) -> Verdict {
    passed(&x.report, "prop_4_4")?;
    let t = make_named("U+U(2)+<-4>^2").map_err(|e| e.to_string())?;
    let s = t.signature();
    ensure(
        t.is_even() && (s.plus, s.minus) == (2, 4),
        "candidate invariants",
    )?;
    Ok("U+U(2)+<-4>^2 even, signature (2,4), q = -q_NS with witness, uniqueness holds".into())
}

fn c6(x: &Ctx) -> Verdict {
    passed(&x.report, "thm_4_5_mobius")?;
    Ok("images 0, s^2, (1+s^2)^2/4, inf over Q(s)".into())
}

fn c7(x: &Ctx) -> Verdict {
    let t = make_named("U+U(2)+<-4>^2").map_err(|e| e.to_string())?;
    ensure(
        t.norm(&big(&[1, 1, 0, 0, 0, 0])) == BigInt::from(2),
        "no square-2 vector",
    )?;
    let a = make_named("U(2)^3+<-4>^2").map_err(|e| e.to_string())?;
    ensure(
        a.norm_gcd() == BigInt::from(4),
        format!("norm_gcd {}", a.norm_gcd()),
    )?;
    let b = make_named("<2>^2+U(2)+<-2>^4").map_err(|e| e.to_string())?;
    ensure(
        b.scale_gcd() == BigInt::from(2),
        format!("scale_gcd {}", b.scale_gcd()),
    )?;
    let m = make_named("M_Z2_3").map_err(|e| e.to_string())?;
    let d = discriminant_group(&m).map_err(|e| e.to_string())?;
    ensure(
        m.rank() == 14 && d.invariant_factors == big(&[2; 8]),
        format!("M_Z2_3 rank {} factors {:?}", m.rank(), d.invariant_factors),
    )?;
    passed(&x.report, "prop_4_6")?;
    Ok("square-2 vector found; norm_gcd 4; scale_gcd 2; M_Z2_3 rank 14 with A = Z2^8".into())
}

fn c8(x: &Ctx) -> Verdict {
    passed(&x.report, "section_6")?;
    let e = x.report.entry("section_6").expect("checked");
    let inv: Vec<BigRational> =
        serde_json::from_value::<Vec<evenlat::json::JsonRat>>(e.witnesses["inverse_snf"].clone())
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|r| r.0)
            .collect();
    let mut want = vec![rat(1, 1); 10];
    want.extend(vec![rat(1, 2); 4]);
    want.extend(vec![rat(1, 4); 2]);
    ensure(inv == want, format!("inverse SNF {inv:?}"))?;
    Ok(format!(
        "1^10, (1/2)^4, (1/4)^2; block form matches; {} isotropic classes certified; T_X' matches",
        e.witnesses["isotropic_count"]
    ))
}

fn c9(x: &Ctx) -> Verdict {
    let host = make_named("U(2)+<-8>").map_err(|e| e.to_string())?;
    let gens = IntMat::from_rows(&[[1, 1, 1], [-1, 1, 0]]);
    let s = sublattice(&host, &gens).map_err(|e| e.to_string())?;
    ensure(
        s.induced_gram == IntMat::diag(&[-4, -4]),
        format!("Gram {}", s.induced_gram),
    )?;
    let f = snf(&gens).invariant_factors();
    ensure(f == big(&[1, 1]), format!("invariant factors {f:?}"))?;
    ensure(
        is_primitive(&host, &gens).map_err(|e| e.to_string())?,
        "not primitive",
    )?;
    passed(&x.report, "prop_6_2")?;
    Ok("Gram diag(-4,-4), invariant factors (1,1), primitive".into())
}

fn c10(_: &Ctx) -> Verdict {
    let mut parts = Vec::new();
    for (name, suite) in support::SUITES {
        let n = suite()?;
        ensure(n >= 200, format!("{name} ran only {n} cases"))?;
        parts.push(format!("{name} {n}"));
    }
    Ok(format!("seed {:#x}: {}", support::seed(), parts.join(", ")))
}

/// S + Q invariants of one configuration and whether it passes criteria 1-4.
fn s_plus_q(sol: &Solution24, r: &Reconstruction) -> Result<bool, String> {
    let s_idx: Vec<usize> = data::S_BASIS.iter().map(|i| i - 1).collect();
    let sl = Lattice::new(sol.config.restrict(&s_idx).gram()).map_err(|e| e.to_string())?;
    let sig = sl.signature();
    ensure(
        sl.is_even() && sl.is_unimodular() && (sig.plus, sig.minus) == (1, 9),
        "S is not even unimodular of signature (1,9)",
    )?;
    let q = q_lattice(&sol.config)?;
    let printed: Vec<Vec<i64>> = data::Q_GRAM.iter().map(|r| r.to_vec()).collect();
    ensure(
        q.gram().to_i64_rows() == Some(printed),
        format!("Q Gram {}", q.gram()),
    )?;
    let one = Verifier::with_reconstruction(Reconstruction {
        solutions: vec![sol.clone()],
        ..r.clone()
    });
    let rep = one
        .run(&PaperData::default(), Some(&["thm_4_3"]))
        .map_err(|e| e.to_string())?;
    Ok(rep.entries[0].status == Status::Pass)
}

fn c11(x: &Ctx) -> Verdict {
    let r = x.verifier.reconstruction().map_err(|e| e.to_string())?;
    ensure(!r.solutions.is_empty(), "no solutions")?;
    for id in ["lemma_3_1", "lemma_4_1", "lemma_4_2", "thm_4_3"] {
        passed(&x.report, id)?;
    }
    for sol in &r.solutions {
        ensure(s_plus_q(sol, r)?, "a solution fails criteria 1-4")?;
    }
    // Reported only: the coarser tier keeps configurations that tier 3 drops.
    let coarse = reconstruct_24(&Constraints::triple_double(), TierPolicy::Exact(2))
        .map_err(|e| e.to_string())?;
    let mut good = 0;
    for sol in &coarse.solutions {
        good += usize::from(s_plus_q(sol, &coarse)?);
    }
    Ok(format!(
        "tier {} keeps {} of {} candidates, Q Gram matches entrywise; at tier 2, {} survivors share S + Q and {} pass 1-4",
        r.tier,
        r.solutions.len(),
        r.census.candidates,
        coarse.solutions.len(),
        good
    ))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let verifier = Verifier::new(TierPolicy::Auto);
    let report = match verifier.run(&PaperData::default(), None) {
        Ok(r) => r,
        Err(e) => {
            println!("acceptance: verifier failed to run: {e}");
            return ExitCode::FAILURE;
        }
    };
    let ctx = Ctx { verifier, report };
    let criteria: [(&str, fn(&Ctx) -> Verdict); 11] = [
        ("rational SNF of the inverse Q Gram", c1),
        ("dual pairing table", c2),
        ("isotropic classes of A_Q", c3),
        ("even-four certificates", c4),
        ("transcendental lattice candidate", c5),
        ("Moebius images", c6),
        ("obstruction witnesses", c7),
        ("quotient surface lattice", c8),
        ("primitive <-4>^2 embedding", c9),
        ("property suites", c10),
        ("reconstruction census", c11),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f(&ctx) {
            Ok(detail) => println!("criterion {:>2} pass: {name}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL: {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of 11 criteria pass ({:.1}s)",
        11 - failures,
        start.elapsed().as_secs_f64()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
