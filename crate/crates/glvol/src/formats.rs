//! JSON encodings of exact scalars, forms, Betti tables and estimates.
//!
//! Rationals are written as `"p/q"` strings (always with a denominator) so
//! values of any size round-trip losslessly; parsing also accepts bare
//! integers.

use glvol_core::exterior::MAX_N;
use glvol_core::{BettiTable, Blade, CoordIndex, ExactScalar, Form, GaussianRational};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::numint::{Assessment, IntegrationEstimate};

pub fn rational_to_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = |detail: &str| Error::format("rational", format!("{s:?}: {detail}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p: BigInt = p.trim().parse().map_err(|_| bad("bad numerator"))?;
    let q: BigInt = q.trim().parse().map_err(|_| bad("bad denominator"))?;
    if q.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(p, q))
}

fn field<'a>(v: &'a Value, key: &str, what: &'static str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::format(what, format!("missing field {key:?}")))
}

fn str_field<'a>(v: &'a Value, key: &str, what: &'static str) -> Result<&'a str> {
    field(v, key, what)?
        .as_str()
        .ok_or_else(|| Error::format(what, format!("field {key:?} must be a string")))
}

fn u64_field(v: &Value, key: &str, what: &'static str) -> Result<u64> {
    field(v, key, what)?.as_u64().ok_or_else(|| {
        Error::format(
            what,
            format!("field {key:?} must be a non-negative integer"),
        )
    })
}

fn array<'a>(v: &'a Value, what: &'static str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::format(what, "expected an array"))
}

/// `{"display": "...", "terms": [{"pi_deg": k, "re": "p/q", "im": "r/s"}, …]}`
pub fn scalar_to_json(s: &ExactScalar) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .map(|(deg, c)| {
            json!({
                "pi_deg": deg,
                "re": rational_to_string(c.re()),
                "im": rational_to_string(c.im()),
            })
        })
        .collect();
    json!({ "display": s.to_string(), "terms": terms })
}

/// Inverse of [`scalar_to_json`]; `display` is ignored.
pub fn scalar_from_json(v: &Value) -> Result<ExactScalar> {
    const WHAT: &str = "exact scalar";
    let mut terms = Vec::new();
    for t in array(field(v, "terms", WHAT)?, WHAT)? {
        let deg = u32::try_from(u64_field(t, "pi_deg", WHAT)?)
            .map_err(|_| Error::format(WHAT, "pi_deg too large"))?;
        let re = parse_rational(str_field(t, "re", WHAT)?)?;
        let im = parse_rational(str_field(t, "im", WHAT)?)?;
        terms.push((deg, GaussianRational::new(re, im)));
    }
    Ok(ExactScalar::from_terms(terms))
}

/// `{"n": n, "terms": [{"blade": [[row, col], …], "coeff": scalar}, …]}`
pub fn form_to_json(f: &Form) -> Value {
    let n = f.n();
    let terms: Vec<Value> = f
        .terms()
        .map(|(b, c)| {
            let coords: Vec<Value> = b.coords(n).map(|ij| json!([ij.row, ij.col])).collect();
            json!({ "blade": coords, "coeff": scalar_to_json(c) })
        })
        .collect();
    json!({ "n": n, "terms": terms })
}

pub fn form_from_json(v: &Value) -> Result<Form> {
    const WHAT: &str = "form";
    let n = u64_field(v, "n", WHAT)? as usize;
    if !(1..=MAX_N).contains(&n) {
        return Err(Error::range("form size", n, "1 <= n <= 8"));
    }
    let mut out = Form::zero(n);
    for t in array(field(v, "terms", WHAT)?, WHAT)? {
        let mut positions = Vec::new();
        for pair in array(field(t, "blade", WHAT)?, WHAT)? {
            let ij = array(pair, WHAT)?;
            let idx: Vec<usize> = ij
                .iter()
                .filter_map(Value::as_u64)
                .map(|x| x as usize)
                .collect();
            if ij.len() != 2 || idx.len() != 2 || idx[0] >= n || idx[1] >= n {
                return Err(Error::format(WHAT, format!("bad coordinate {pair}")));
            }
            positions.push(CoordIndex::new(idx[0], idx[1]).position(n));
        }
        // Listed order defines the orientation of the term.
        let mut blade = Blade::EMPTY;
        let mut sign = 1i64;
        for p in positions {
            let (s, b) = blade
                .wedge(Blade::single(p))
                .ok_or_else(|| Error::format(WHAT, "repeated coordinate in blade"))?;
            sign *= i64::from(s);
            blade = b;
        }
        let coeff = scalar_from_json(field(t, "coeff", WHAT)?)?;
        let term = Form::from_blade(n, blade, &ExactScalar::integer(sign) * &coeff);
        out = out.add(&term)?;
    }
    Ok(out)
}

pub fn betti_to_json(t: &BettiTable) -> Value {
    json!({ "n": t.n, "betti": t.betti })
}

pub fn betti_from_json(v: &Value) -> Result<BettiTable> {
    const WHAT: &str = "betti table";
    let n = u64_field(v, "n", WHAT)? as usize;
    let betti = array(field(v, "betti", WHAT)?, WHAT)?
        .iter()
        .map(|b| {
            b.as_u64()
                .map(|x| x as usize)
                .ok_or_else(|| Error::format(WHAT, "entries must be non-negative integers"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BettiTable { n, betti })
}

pub fn complex_to_json(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

/// `{"n", "method", "value": {re, im}, "stderr", "evaluations", "seed",
/// "expected_modulus", "rel_error"}`
pub fn estimate_to_json(est: &IntegrationEstimate, assessment: &Assessment) -> Value {
    let mut m = Map::new();
    m.insert("n".into(), json!(est.n));
    m.insert("method".into(), json!(est.method.as_str()));
    m.insert("value".into(), complex_to_json(est.value));
    m.insert("stderr".into(), json!(est.stderr));
    m.insert("evaluations".into(), json!(est.evaluations));
    m.insert("seed".into(), est.seed.map_or(Value::Null, |s| json!(s)));
    m.insert(
        "expected_modulus".into(),
        json!(assessment.expected_modulus),
    );
    m.insert("rel_error".into(), json!(assessment.rel_error));
    Value::Object(m)
}
