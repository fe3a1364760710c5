//! JSON encodings. Integers that may exceed 64 bits are written as exact
//! JSON numbers, never rounded.

use num_bigint::{BigInt, BigUint};
use serde_json::{json, Map, Number, Value};
use tv4_core::census::GroupingReport;
use tv4_core::tv4::OctagonParity;
use tv4_core::{DyadicSqrt2, ExactBruteForce, IntegralH1, LaurentZ, TVReport};

pub fn int(n: &BigInt) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("integer literal is a JSON number"))
}

pub fn uint(n: &BigUint) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("integer literal is a JSON number"))
}

/// `(a + b√2)/2^k` as `{"a", "b", "k", "decimal"}`.
pub fn dyadic(x: &DyadicSqrt2) -> Value {
    json!({
        "a": int(x.a()),
        "b": int(x.b()),
        "k": x.k(),
        "decimal": format!("{:.12}", x.to_f64()),
    })
}

pub fn triple(t: &[DyadicSqrt2; 3]) -> Value {
    json!({
        "trivial": dyadic(&t[0]),
        "even_chi": dyadic(&t[1]),
        "odd_chi": dyadic(&t[2]),
    })
}

pub fn polynomial(p: &LaurentZ) -> Value {
    Value::Array(
        p.terms()
            .map(|(m, c)| json!({ "exponent": m, "coefficient": int(c) }))
            .collect(),
    )
}

pub fn h1(h: &IntegralH1) -> Value {
    json!({
        "free_rank": h.free_rank,
        "torsion": h.torsion.iter().map(uint).collect::<Vec<_>>(),
        "text": h.to_string(),
    })
}

pub fn report(r: &TVReport) -> Map<String, Value> {
    let chis: std::collections::BTreeSet<i64> = r.b_plus.keys().chain(r.b_minus.keys()).copied().collect();
    let b: Vec<Value> = chis
        .into_iter()
        .map(|m| json!({ "chi": m, "even": uint(&r.b(m, OctagonParity::Even)), "odd": uint(&r.b(m, OctagonParity::Odd)) }))
        .collect();
    let mut out = Map::new();
    out.insert("q".into(), json!(r.q));
    out.insert("z".into(), json!(if r.z_sign < 0 { "-√2" } else { "√2" }));
    out.insert("n".into(), json!(r.tetrahedra));
    out.insert("v".into(), json!(r.vertices));
    out.insert("beta1".into(), json!(r.beta1));
    out.insert("class_space_dim".into(), json!(r.class_space_dim));
    out.insert("classes".into(), json!(r.class_count()));
    out.insert("raw".into(), dyadic(&r.raw));
    out.insert("normalized".into(), dyadic(&r.normalized));
    out.insert("triple".into(), triple(&r.triple));
    out.insert("triple_raw".into(), triple(&r.triple_raw));
    out.insert("polynomial".into(), polynomial(&r.polynomial));
    out.insert("b".into(), Value::Array(b));
    out
}

pub fn exact_oracle(e: &ExactBruteForce) -> Value {
    json!({
        "raw": dyadic(&e.raw),
        "colourings": e.colourings,
        "sign_rule_holds": e.gamma_agrees,
    })
}

pub fn grouping(r: &GroupingReport, skipped: &[(String, String)]) -> Value {
    let group = |g: &tv4_core::census::Group| {
        let mut m = Map::new();
        m.insert("h1".into(), h1(&g.h1));
        if let Some((t1, t3)) = &g.triples {
            m.insert("triple_q1".into(), triple(t1));
            m.insert("triple_q3".into(), triple(t3));
        }
        m.insert(
            "members".into(),
            g.members.iter().map(|&i| json!(r.entries[i].name)).collect(),
        );
        Value::Object(m)
    };
    json!({
        "inputs": r.entries.len(),
        "coarse_groups": r.coarse_count(),
        "refined_groups": r.refined_count(),
        "refinement_factor": r.refinement_factor(),
        "coarse": r.coarse.iter().map(group).collect::<Vec<_>>(),
        "refined": r.refined.iter().map(group).collect::<Vec<_>>(),
        "skipped": skipped.iter().map(|(f, e)| json!({ "file": f, "error": e })).collect::<Vec<_>>(),
        "warnings": !skipped.is_empty(),
    })
}
