//! JSON views of library values. Keys come out sorted because `serde_json::Map` is ordered.

use kmact_core::cartan::ConditionReport;
use kmact_core::klr::{Gen, KlrElement, RelationReport};
use kmact_core::morphcalc::{GradedClass, Letter};
use kmact_core::paths::{Move, MoveCert, Step};
use kmact_core::{DimTable, DimValue, LaurentInt, Vertex, Weight};
use serde_json::{json, Value};

pub fn laurent(p: &LaurentInt) -> Value {
    Value::Array(p.terms().map(|(d, c)| json!([d, c])).collect())
}

pub fn letters(w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let names: Vec<String> = w
        .iter()
        .map(|l| match *l {
            Letter::E(i) => format!("E{}", i + 1),
            Letter::F(i) => format!("F{}", i + 1),
            Letter::Ed2(i) => format!("E{}^2", i + 1),
        })
        .collect();
    names.join(" ")
}

pub fn class(c: &GradedClass) -> Value {
    let terms: Vec<Value> = c.terms().map(|(w, p)| json!({"word": letters(w), "laurent": laurent(p)})).collect();
    json!({
        "class": terms,
        "domain": c.domain().coords(),
        "codomain": c.codomain().coords(),
    })
}

pub fn table(t: &DimTable) -> Value {
    let rows: Vec<Value> = t
        .iter()
        .map(|(d, v)| {
            let value = match v {
                DimValue::Exactly(n) => json!(n),
                DimValue::Unknown => json!("unknown"),
            };
            json!({"degree": d, "value": value})
        })
        .collect();
    Value::Array(rows)
}

pub fn idempotent(labels: &[Vertex]) -> String {
    let names: Vec<String> = labels.iter().map(|v| (v + 1).to_string()).collect();
    format!("e({})", names.join(","))
}

pub fn gens(g: &[Gen]) -> String {
    if g.is_empty() {
        return "1".into();
    }
    let names: Vec<String> = g
        .iter()
        .map(|g| match *g {
            Gen::Dot(p) => format!("x{}", p + 1),
            Gen::Cross(k) => format!("t{}", k + 1),
        })
        .collect();
    names.join(" ")
}

pub fn element(e: &KlrElement) -> Value {
    let terms: Vec<Value> =
        e.terms().map(|(w, c)| json!({"coeff": c.to_string(), "word": gens(&w.gens)})).collect();
    json!({
        "bottom": idempotent(e.bottom()),
        "top": idempotent(e.top()),
        "terms": terms,
    })
}

pub fn relation_report(r: &RelationReport) -> Value {
    let failures: Vec<Value> = r
        .failures
        .iter()
        .map(|f| {
            json!({
                "relation": f.relation,
                "bottom": idempotent(&f.bottom),
                "below": gens(&f.below),
                "above": gens(&f.above),
                "difference": element(&f.difference),
            })
        })
        .collect();
    json!({
        "passed": r.passed(),
        "instances": r.instances,
        "checks": r.checks,
        "failures": failures,
    })
}

pub fn steps(s: &[Step]) -> Value {
    Value::Array(s.iter().map(|&(c, k)| json!([c.value(), k])).collect())
}

pub fn moves(cert: &MoveCert) -> Value {
    Value::Array(
        cert.moves
            .iter()
            .map(|m| match *m {
                Move::Switch(a) => json!(["switch", a]),
                Move::Drop(a) => json!(["drop", a]),
            })
            .collect(),
    )
}

pub fn conditions(r: &ConditionReport) -> Value {
    let coords = |w: &Weight| json!(w.coords());
    json!({
        "holds": r.holds(),
        "line_vanishing": r.line_vanishing.iter().map(|(w, line)| json!({"weight": coords(w), "line": line})).collect::<Vec<_>>(),
        "cycle_positivity": r
            .cycle_positivity
            .iter()
            .map(|v| json!({"weight": coords(&v.weight), "cycle": v.cycle, "value": v.value}))
            .collect::<Vec<_>>(),
        "closure": r.closure.iter().map(|v| json!({"weight": coords(&v.weight), "i": v.i, "j": v.j})).collect::<Vec<_>>(),
    })
}
