use std::path::Path;

use evenlat::curveconfig::{
    double_cover_pullback, quotient_by_involution, reconstruct_24, reconstruct_xprime, Constraints,
    TierPolicy,
};
use evenlat::discform::{
    are_isomorphic, default_guard, isotropic_elements, isotropic_subgroups, overlattice,
    FiniteQuadraticModule,
};
use evenlat::exactlinalg::{fmt_rat, rat_mod, snf, snf_rational, Signature};
use evenlat::json::{int_rows, ints, rat_rows, rats, JsonInt, SCHEMA_VERSION};
use evenlat::lattice::{
    discriminant_group, is_primitive, make_named, nikulin_unique, orthogonal_complement,
    sublattice, two_elem_invariants, Lattice,
};
use evenlat::paperverify::{PaperData, Verifier};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::input;

type Out = Result<Value, CliError>;

fn doc(mut v: Value) -> Value {
    v["schema"] = json!(SCHEMA_VERSION);
    v
}

fn sig(s: Signature) -> Value {
    json!([s.plus, s.minus])
}

fn gram_file(l: &Lattice) -> Value {
    json!({ "gram": int_rows(l.gram()), "name": l.name() })
}

pub fn named(name: &str) -> Out {
    Ok(doc(gram_file(&make_named(name)?)))
}

pub fn info(arg: &str) -> Out {
    let l = input::lattice(arg)?;
    // Both are only defined for even lattices.
    let two = if l.is_even() {
        two_elem_invariants(&l)?.map(|t| json!({ "ell": t.ell, "delta": t.delta }))
    } else {
        None
    };
    let unique = if l.is_even() {
        Some(nikulin_unique(&l)?)
    } else {
        None
    };
    let d = discriminant_group(&l)?;
    Ok(doc(json!({
        "name": l.name(),
        "rank": l.rank(),
        "det": JsonInt(l.det().clone()),
        "signature": sig(l.signature()),
        "even": l.is_even(),
        "unimodular": l.is_unimodular(),
        "scale_gcd": JsonInt(l.scale_gcd()),
        "norm_gcd": JsonInt(l.norm_gcd()),
        "discriminant_group": ints(&d.invariant_factors),
        "two_elementary": two,
        "nikulin_unique": unique,
    })))
}

pub fn snf_cmd(arg: &str, rational: bool, inverse: bool) -> Out {
    let l = input::lattice(arg)?;
    if !rational && !inverse {
        let f = snf(l.gram());
        return Ok(doc(json!({
            "D": int_rows(&f.d),
            "S": int_rows(&f.s),
            "T": int_rows(&f.t),
            "invariant_factors": ints(&f.invariant_factors()),
        })));
    }
    let m = if inverse {
        l.gram_inverse()?
    } else {
        evenlat::exactlinalg::RatMat::from_fn(l.rank(), l.rank(), |i, j| {
            BigRational::from_integer(l.gram()[(i, j)].clone())
        })
    };
    let f = snf_rational(&m)?;
    Ok(doc(json!({
        "D": rat_rows(&f.d),
        "S": int_rows(&f.s),
        "T": int_rows(&f.t),
        "invariant_factors": rats(&f.diagonal()),
    })))
}

pub fn disc(arg: &str) -> Out {
    let l = input::lattice(arg)?;
    let d = discriminant_group(&l)?;
    let one = BigRational::one();
    let b_table: Vec<Vec<String>> = d
        .generator_lifts
        .iter()
        .map(|x| {
            d.generator_lifts
                .iter()
                .map(|y| fmt_rat(&rat_mod(&x.pair(&l, y), &one)))
                .collect()
        })
        .collect();
    let q_table = if l.is_even() {
        let two = BigRational::from_integer(BigInt::from(2));
        let q: Vec<String> = d
            .generator_lifts
            .iter()
            .map(|x| fmt_rat(&rat_mod(&x.norm(&l), &two)))
            .collect();
        json!(q)
    } else {
        Value::Null
    };
    Ok(doc(json!({
        "invariant_factors": ints(&d.invariant_factors),
        "order": JsonInt(d.order.clone()),
        "generators": d.generator_lifts.iter().map(|g| rats(&g.coords)).collect::<Vec<_>>(),
        "q_table": q_table,
        "b_table": b_table,
    })))
}

pub fn isotropic(arg: &str, subgroups: bool) -> Out {
    let l = input::lattice(arg)?;
    let m = FiniteQuadraticModule::from_lattice(&l)?;
    let elements: Vec<Value> = isotropic_elements(&m)?
        .iter()
        .map(|x| json!({ "exps": x.exps(), "order": m.element_order(x) }))
        .collect();
    let mut out = json!({
        "orders": m.orders(),
        "count": elements.len(),
        "elements": elements,
    });
    if subgroups {
        let hs: Vec<Value> = isotropic_subgroups(&m)?
            .iter()
            .filter(|h| h.order > 1)
            .map(|h| json!({ "generators": h.generators, "order": h.order }))
            .collect();
        out["subgroups"] = json!(hs);
    }
    Ok(doc(out))
}

pub fn overlattices(arg: &str) -> Out {
    let l = input::lattice(arg)?;
    let m = FiniteQuadraticModule::from_lattice(&l)?;
    let mut out = Vec::new();
    for h in isotropic_subgroups(&m)?.iter().filter(|h| h.order > 1) {
        let (over, basis) = overlattice(&l, h)?;
        out.push(json!({
            "generators": h.generators,
            "index": h.order,
            "gram": int_rows(over.gram()),
            "basis": rat_rows(&basis),
            "unimodular": over.is_unimodular(),
        }));
    }
    Ok(doc(json!({ "count": out.len(), "overlattices": out })))
}

pub fn iso(a: &str, b: &str, negate: bool) -> Out {
    let m1 = FiniteQuadraticModule::from_lattice(&input::lattice(a)?)?;
    let mut m2 = FiniteQuadraticModule::from_lattice(&input::lattice(b)?)?;
    if negate {
        m2 = m2.negate();
    }
    let found = are_isomorphic(&m1, &m2, default_guard())?;
    Ok(doc(json!({
        "isomorphic": found.is_some(),
        "images": found.map(|f| f.images),
    })))
}

pub fn complement(ambient: &str, gens: &str) -> Out {
    let l = input::lattice(ambient)?;
    let g = input::generators(gens, l.rank())?;
    let c = orthogonal_complement(&l, &g)?;
    Ok(doc(json!({
        "rank": c.rank(),
        "basis": int_rows(&c.basis_coords),
        "gram": int_rows(&c.induced_gram),
        "degenerate": c.degenerate,
    })))
}

pub fn embed_check(ambient: &str, gens: &str) -> Out {
    let l = input::lattice(ambient)?;
    let g = input::generators(gens, l.rank())?;
    let s = sublattice(&l, &g)?;
    let primitive = is_primitive(&l, &g)?;
    Ok(doc(json!({
        "primitive": primitive,
        "gram": int_rows(&s.induced_gram),
        "invariant_factors": ints(&snf(&g).invariant_factors()),
    })))
}

pub fn pullback(config: &Path, step: &Path) -> Out {
    let p = double_cover_pullback(&input::config(config)?, &input::cover_step(step)?)?;
    Ok(doc(json!({
        "determined": p.is_determined(),
        "configs": p.configs.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        "label_map": p.label_map,
    })))
}

pub fn quotient(config: &Path, involution: &Path, fixed: Option<&Path>) -> Out {
    let q = quotient_by_involution(
        &input::config(config)?,
        &input::involution(involution)?,
        &input::fixed_points(fixed)?,
    )?;
    Ok(doc(json!({
        "config": q.config.to_json(),
        "orbits": q.orbits,
    })))
}

pub fn reconstruct(policy: TierPolicy, xprime: bool) -> Out {
    let r = reconstruct_24(&Constraints::triple_double(), policy)?;
    let mut solutions = Vec::new();
    for s in &r.solutions {
        let mut v = json!({ "config": s.config.to_json(), "hexagon": s.hexagon });
        if xprime {
            let x = reconstruct_xprime(&s.config)?;
            v["xprime"] = json!({
                "config": x.config.to_json(),
                "relations": x.relations,
                "census": x.census,
                "rank": x.lattice.rank(),
                "det": JsonInt(x.lattice.lattice().det().clone()),
            });
        }
        solutions.push(v);
    }
    Ok(doc(json!({
        "tier": r.tier,
        "census": r.census,
        "solutions": solutions,
    })))
}

pub enum Format {
    Json,
    Markdown,
}

/// The rendered report and whether every entry passed or is report-only.
pub fn verify_paper(
    policy: TierPolicy,
    results: &[String],
    format: Format,
) -> Result<(String, bool), CliError> {
    let only: Vec<&str> = results.iter().map(String::as_str).collect();
    let r = Verifier::new(policy).run(
        &PaperData::default(),
        if only.is_empty() { None } else { Some(&only) },
    )?;
    let text = match format {
        Format::Json => r.to_json() + "\n",
        Format::Markdown => r.to_markdown(),
    };
    Ok((text, !r.has_failures()))
}

pub fn parse_tier(s: &str) -> Result<TierPolicy, String> {
    match s {
        "auto" => Ok(TierPolicy::Auto),
        "1" | "2" | "3" => Ok(TierPolicy::Exact(s.parse().expect("digit"))),
        _ => Err(format!("expected auto, 1, 2 or 3, got `{s}`")),
    }
}
