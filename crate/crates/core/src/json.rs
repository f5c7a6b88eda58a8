//! JSON encodings. Top-level documents carry `"schema": "sturmkit/1"`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::cfrac::ContinuedFraction;
use crate::decision::{Certificate, Decision, Obstruction};
use crate::denjoy::{DenjoyParams, DenjoyStateImage};
use crate::error::{Error, Result};
use crate::iet::{new_iet, IetSpec, RationalInvariants, RauzyPath};
use crate::moebius::{Mat2, PellSolution, SmithFactor};
use crate::realnum::{parse_values, Basis, FormalElement, QSpan, RealValue, WedgeValue, ZModule};
use crate::sturmian::Word;

pub const SCHEMA: &str = "sturmkit/1";

/// Adds the schema key to a top-level object.
pub fn document(v: Value) -> Value {
    match v {
        Value::Object(mut m) => {
            m.insert("schema".into(), Value::String(SCHEMA.into()));
            Value::Object(m)
        }
        other => {
            let mut m = Map::new();
            m.insert("schema".into(), Value::String(SCHEMA.into()));
            m.insert("value".into(), other);
            Value::Object(m)
        }
    }
}

pub fn bigint(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(i) => json!(i),
        None => json!(n.to_string()),
    }
}

fn rational(q: &BigRational) -> Value {
    json!([q.numer().to_string(), q.denom().to_string()])
}

pub fn basis(b: &Basis) -> Value {
    match b {
        Basis::Rational => json!({"kind": "rational"}),
        Basis::Quadratic(d) => json!({"kind": "quadratic", "d": d}),
        Basis::Formal(f) => {
            let elements: Vec<Value> = f
                .elements
                .iter()
                .map(|e| match e {
                    FormalElement::Radical { radicand, index } => json!({"radicand": radicand, "index": index}),
                    FormalElement::Decimal { name, digits } => json!({"name": name, "digits": digits}),
                })
                .collect();
            json!({"kind": "formal", "elements": elements, "max_digits": f.max_digits})
        }
    }
}

pub fn real(x: &RealValue) -> Value {
    let coords: Vec<Value> = x.coords().iter().map(rational).collect();
    json!({"basis": basis(x.basis()), "coords": coords, "text": x.to_string()})
}

pub fn reals(xs: &[RealValue]) -> Value {
    Value::Array(xs.iter().map(real).collect())
}

pub fn matrix(m: &Mat2) -> Value {
    let e: Vec<String> = m.entries().iter().map(|x| x.to_string()).collect();
    json!({"m": [[e[0], e[1]], [e[2], e[3]]]})
}

pub fn cf(c: &ContinuedFraction) -> Value {
    let ints = |v: &[BigInt]| Value::Array(v.iter().map(bigint).collect());
    json!({"preperiod": ints(c.preperiod()), "period": ints(c.period()), "text": c.to_string()})
}

pub fn digits(ds: &[BigInt]) -> Value {
    json!({"digits": Value::Array(ds.iter().map(bigint).collect())})
}

pub fn word(w: &Word) -> Value {
    json!({"alphabet": w.alphabet, "offset": w.offset, "symbols": w.text()})
}

pub fn zmodule(m: &ZModule) -> Value {
    let gens: Vec<String> = m.generators().iter().map(|g| g.to_string()).collect();
    json!({"basis": basis(&m.basis), "rank": m.rank(), "denominator": bigint(&m.denominator), "generators": gens})
}

pub fn qspan(s: &QSpan) -> Value {
    let vs: Vec<String> = s.vectors().iter().map(|g| g.to_string()).collect();
    json!({"basis": basis(&s.basis), "dim": s.dim(), "vectors": vs})
}

pub fn wedge(w: &WedgeValue) -> Value {
    let rows: Vec<Vec<String>> = w.matrix.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    let mut m = json!({"basis": basis(&w.basis), "matrix": rows});
    if w.matrix.len() == 2 {
        m["coefficient"] = json!(w.coefficient().to_string());
    }
    m
}

pub fn smith(f: &SmithFactor) -> Value {
    json!({"u": matrix(&f.u), "m": bigint(&f.m), "v": matrix(&f.v)})
}

pub fn pell(sols: &[PellSolution]) -> Value {
    let v: Vec<Value> = sols.iter().map(|p| json!({"x": bigint(&p.x), "s": bigint(&p.s), "sign": p.sign})).collect();
    json!({"solutions": v})
}

pub fn iet(t: &IetSpec) -> Value {
    json!({"perm": t.perm_one_based(), "lengths": reals(t.lengths()), "scale": real(t.scale())})
}

pub fn rauzy(p: &RauzyPath) -> Value {
    let period = p.period.map(|(a, b)| json!({"preperiod": a, "period": b}));
    json!({"steps": p.text(), "period": period, "violation": p.violation, "final": p.states.last().map(iet)})
}

pub fn rational_invariants(r: &RationalInvariants) -> Value {
    json!({"span": qspan(&r.span), "saf": wedge(&r.saf)})
}

pub fn denjoy(p: &DenjoyParams) -> Value {
    json!({"rho": real(p.rho()), "reps": reals(p.reps()), "origin_added": p.origin_added()})
}

pub fn denjoy_state(s: &DenjoyStateImage) -> Value {
    json!({
        "module": zmodule(&s.module),
        "coinvariant_rank": s.coinvariant_rank,
        "infinitesimal_rank": s.infinitesimal_rank,
    })
}

fn symbols(s: &[u8]) -> String {
    s.iter().map(|x| char::from(b'0' + x)).collect()
}

pub fn certificate(c: &Certificate) -> Value {
    match c {
        Certificate::Conjugacy { sign, shift } => json!({"kind": "conjugacy", "sign": sign, "shift": bigint(shift)}),
        Certificate::Matrix(m) => json!({"kind": "matrix", "matrix": matrix(m)}),
        Certificate::Sign(s) => json!({"kind": "sign", "sign": s}),
        Certificate::DenjoyFlow { matrix: m, rotation, power } => {
            json!({"kind": "denjoy-flow", "matrix": matrix(m), "rotation": real(rotation), "power": power})
        }
        Certificate::Cylinders { left, right, reflected } => {
            json!({"kind": "cylinders", "left": symbols(left), "right": symbols(right), "reflected": reflected})
        }
        Certificate::RauzyPath { reflected, preperiod, period } => {
            json!({"kind": "rauzy-path", "reflected": reflected, "preperiod": preperiod, "period": period})
        }
        Certificate::IndependentLengths { dim } => json!({"kind": "independent-lengths", "dim": dim}),
        Certificate::Identical { reflected } => json!({"kind": "identical", "reflected": reflected}),
    }
}

fn obstruction(o: &Obstruction) -> Value {
    json!({"code": o.code, "detail": o.detail, "at": o.at})
}

pub fn decision(d: &Decision) -> Value {
    json!({
        "verdict": d.verdict.as_str(),
        "certificate": d.certificate.as_ref().map(certificate),
        "obstruction": d.obstruction.as_ref().map(obstruction),
        "bound": d.bound,
        "note": d.note,
    })
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn parse_rational(v: &Value) -> Result<BigRational> {
    let pair = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("coordinate must be [num, den]"))?;
    let part = |x: &Value| -> Result<BigInt> {
        match x {
            Value::String(s) => s.parse().map_err(|_| bad(format!("bad integer {s:?}"))),
            Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| bad("bad integer")),
            _ => Err(bad("bad integer")),
        }
    };
    let (n, d) = (part(&pair[0])?, part(&pair[1])?);
    if d == BigInt::from(0) {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

fn parse_basis(v: &Value) -> Result<Basis> {
    match v["kind"].as_str() {
        Some("rational") => Ok(Basis::Rational),
        Some("quadratic") => Basis::quadratic(v["d"].as_u64().ok_or_else(|| bad("quadratic basis needs d"))?),
        Some("formal") => {
            let elements = v["elements"]
                .as_array()
                .ok_or_else(|| bad("formal basis needs elements"))?
                .iter()
                .map(|e| {
                    if let (Some(r), Some(i)) = (e["radicand"].as_u64(), e["index"].as_u64()) {
                        Ok(FormalElement::Radical { radicand: r, index: i as u32 })
                    } else if let (Some(n), Some(d)) = (e["name"].as_str(), e["digits"].as_str()) {
                        Ok(FormalElement::Decimal { name: n.into(), digits: d.into() })
                    } else {
                        Err(bad("bad formal element"))
                    }
                })
                .collect::<Result<_>>()?;
            let digits = v["max_digits"].as_u64().unwrap_or(crate::realnum::DEFAULT_MAX_DIGITS as u64) as u32;
            Basis::formal(elements, digits)
        }
        _ => Err(bad("unknown basis kind")),
    }
}

/// Number literals: expression strings, or `{"basis", "coords"}` objects.
pub fn parse_reals(vs: &[Value], max_digits: u32) -> Result<Vec<RealValue>> {
    if vs.iter().all(|v| v.is_string() || v.is_number()) {
        let texts: Vec<String> = vs.iter().map(|v| v.as_str().map(String::from).unwrap_or_else(|| v.to_string())).collect();
        return parse_values(&texts, max_digits);
    }
    vs.iter()
        .map(|v| match v {
            Value::Object(_) => {
                let b = parse_basis(&v["basis"])?;
                let coords = v["coords"].as_array().ok_or_else(|| bad("missing coords"))?;
                RealValue::make(&b, coords.iter().map(parse_rational).collect::<Result<_>>()?)
            }
            Value::String(s) => crate::realnum::parse_value(s),
            Value::Number(n) => crate::realnum::parse_value(&n.to_string()),
            _ => Err(bad("bad number literal")),
        })
        .collect()
}

/// `{"perm": [2, 1], "lengths": [...]}` with a 1-based permutation.
pub fn parse_iet(v: &Value, max_digits: u32) -> Result<IetSpec> {
    let perm: Vec<usize> = v["perm"]
        .as_array()
        .ok_or_else(|| bad("IET needs perm"))?
        .iter()
        .map(|p| p.as_u64().map(|p| p as usize).ok_or_else(|| bad("perm entries must be integers")))
        .collect::<Result<_>>()?;
    let lengths = parse_reals(v["lengths"].as_array().ok_or_else(|| bad("IET needs lengths"))?, max_digits)?;
    new_iet(&perm, &lengths)
}

/// `{"rho": ..., "reps": [...]}`.
pub fn parse_denjoy(v: &Value, max_digits: u32) -> Result<DenjoyParams> {
    let mut all = vec![v["rho"].clone()];
    if let Some(r) = v["reps"].as_array() {
        all.extend(r.iter().cloned());
    }
    let vals = parse_reals(&all, max_digits)?;
    crate::denjoy::normalize(&vals[0], &vals[1..])
}

pub fn error(e: &Error) -> Value {
    document(json!({"error": e.to_string()}))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realnum::parse_value;

    #[test]
    fn real_round_trip() {
        for text in ["(1+sqrt(5))/4", "7/3", "root(2,3)-1"] {
            let x = parse_values(&[text], 100).unwrap().remove(0);
            let j = real(&x);
            assert_eq!(parse_reals(&[j], 100).unwrap()[0], x);
        }
        assert_eq!(matrix(&Mat2::from_ints(2, 1, 1, 1)), json!({"m": [["2", "1"], ["1", "1"]]}));
        let x = parse_value("(1+sqrt(5))/4").unwrap();
        assert_eq!(real(&x)["coords"], json!([["1", "4"], ["1", "4"]]));
    }

    #[test]
    fn iet_round_trip() {
        let t = parse_iet(&json!({"perm": [2, 1], "lengths": ["sqrt(2)-1", "2-sqrt(2)"]}), 100).unwrap();
        let j = iet(&t);
        assert_eq!(parse_iet(&j, 100).unwrap(), t);
        assert_eq!(document(json!({}))["schema"], SCHEMA);
    }
}
