//! JSON encoding of forms, Witt classes, matrices, and the complex,
//! following the documented schemas.
//!
//! Rationals always serialize as the string "a/b"; parsing also accepts
//! bare integers. Integer matrix entries serialize as JSON numbers when
//! they fit in 64 bits and as decimal strings beyond that; parsing
//! accepts both.

use crate::arith::Rational;
use crate::classes::{WittFp, WittFpRepr, WittQ};
use crate::field::{PrimeField, RationalField};
use crate::forms::{DiagonalForm, FormError, GramForm};
use crate::hirzebruch::{GWComplex, DIVISOR_BASIS_LABELS, GENERATOR_LABELS, POINT_LABELS};
use crate::homology::{ChainComplexF2, MatF2, MatZ, SnfResult};
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid input: {0}")]
pub struct JsonError(pub String);

fn err(msg: impl Into<String>) -> JsonError {
    JsonError(msg.into())
}

/// Parse failures keep exit code 2; mathematically invalid forms are
/// domain errors (exit code 3).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JsonFormError {
    #[error("{0}")]
    Json(#[from] JsonError),
    #[error("{0}")]
    Form(#[from] FormError),
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

pub fn rational_from_json(v: &Value) -> Result<Rational, JsonError> {
    match v {
        Value::Number(n) => {
            let s = n.to_string();
            let i =
                BigInt::from_str(&s).map_err(|_| err(format!("not an exact integer: {s}")))?;
            Ok(Rational::from_integer(i))
        }
        Value::String(s) => {
            let (num, den) = match s.split_once('/') {
                Some((a, b)) => (a.trim(), b.trim()),
                None => (s.trim(), "1"),
            };
            let n = BigInt::from_str(num).map_err(|_| err(format!("bad numerator: {num}")))?;
            let d = BigInt::from_str(den).map_err(|_| err(format!("bad denominator: {den}")))?;
            if d.is_zero() {
                return Err(err("zero denominator"));
            }
            Ok(Rational::new(n, d))
        }
        _ => Err(err("expected a rational as \"a/b\" or an integer")),
    }
}

/// A parsed form over ℚ or 𝔽_p, in either presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyForm {
    QGram(GramForm<RationalField>),
    QDiag(DiagonalForm<RationalField>),
    FpGram(GramForm<PrimeField>),
    FpDiag(DiagonalForm<PrimeField>),
}

enum FieldChoice {
    Q,
    Fp(PrimeField),
}

fn field_from_json(v: &Value) -> Result<FieldChoice, JsonError> {
    match v {
        Value::String(s) if s == "Q" => Ok(FieldChoice::Q),
        Value::Object(m) => {
            let p = m
                .get("Fp")
                .and_then(Value::as_u64)
                .ok_or_else(|| err("field object must be {\"Fp\": p}"))?;
            let f = PrimeField::new(p).map_err(|e| err(e.to_string()))?;
            Ok(FieldChoice::Fp(f))
        }
        _ => Err(err("field must be \"Q\" or {\"Fp\": p}")),
    }
}

fn fp_entry_from_json(v: &Value, p: u64) -> Result<u64, JsonError> {
    let x = v
        .as_i64()
        .ok_or_else(|| err("prime-field entries must be integers"))?;
    Ok(x.rem_euclid(p as i64) as u64)
}

pub fn form_from_json(v: &Value) -> Result<AnyForm, JsonFormError> {
    let obj = v
        .as_object()
        .ok_or_else(|| err("expected a form object"))?;
    let field = field_from_json(
        obj.get("field")
            .ok_or_else(|| err("missing \"field\""))?,
    )?;
    let gram = obj.get("gram");
    let diag = obj.get("diag");
    match (gram, diag) {
        (Some(g), None) => {
            let rows = g
                .as_array()
                .ok_or_else(|| err("\"gram\" must be an array of rows"))?;
            match field {
                FieldChoice::Q => {
                    let matrix = rows
                        .iter()
                        .map(|row| {
                            row.as_array()
                                .ok_or_else(|| err("gram rows must be arrays"))?
                                .iter()
                                .map(rational_from_json)
                                .collect::<Result<Vec<_>, _>>()
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    check_square(&matrix)?;
                    Ok(AnyForm::QGram(GramForm::new(RationalField, matrix)?))
                }
                FieldChoice::Fp(f) => {
                    let p = f.p();
                    let matrix = rows
                        .iter()
                        .map(|row| {
                            row.as_array()
                                .ok_or_else(|| err("gram rows must be arrays"))?
                                .iter()
                                .map(|e| fp_entry_from_json(e, p))
                                .collect::<Result<Vec<_>, _>>()
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    check_square(&matrix)?;
                    Ok(AnyForm::FpGram(GramForm::new(f, matrix)?))
                }
            }
        }
        (None, Some(d)) => {
            let entries = d
                .as_array()
                .ok_or_else(|| err("\"diag\" must be an array"))?;
            match field {
                FieldChoice::Q => {
                    let es = entries
                        .iter()
                        .map(rational_from_json)
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok(AnyForm::QDiag(DiagonalForm::new(RationalField, es)?))
                }
                FieldChoice::Fp(f) => {
                    let p = f.p();
                    let es = entries
                        .iter()
                        .map(|e| fp_entry_from_json(e, p))
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok(AnyForm::FpDiag(DiagonalForm::new(f, es)?))
                }
            }
        }
        _ => Err(err("form needs exactly one of \"gram\" or \"diag\"").into()),
    }
}

fn check_square<E>(matrix: &[Vec<E>]) -> Result<(), JsonError> {
    let n = matrix.len();
    if matrix.iter().any(|row| row.len() != n) {
        return Err(err("gram matrix must be square"));
    }
    Ok(())
}

pub fn form_to_json(form: &AnyForm) -> Value {
    match form {
        AnyForm::QGram(g) => json!({
            "field": "Q",
            "gram": g.matrix.iter()
                .map(|row| row.iter().map(rational_to_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        }),
        AnyForm::QDiag(d) => diag_q_to_json(d),
        AnyForm::FpGram(g) => json!({
            "field": {"Fp": g.field.p()},
            "gram": g.matrix,
        }),
        AnyForm::FpDiag(d) => json!({
            "field": {"Fp": d.field.p()},
            "diag": d.entries,
        }),
    }
}

pub fn diag_q_to_json(d: &DiagonalForm<RationalField>) -> Value {
    json!({
        "field": "Q",
        "diag": d.entries.iter().map(rational_to_json).collect::<Vec<_>>(),
    })
}

pub fn witt_fp_to_json(w: &WittFp) -> Value {
    match w.repr {
        WittFpRepr::Klein { rank, disc } => json!({
            "p": w.p,
            "kind": "klein",
            "value": [rank, disc],
        }),
        WittFpRepr::Cyclic(k) => json!({
            "p": w.p,
            "kind": "cyclic",
            "value": k,
        }),
    }
}

pub fn witt_fp_from_json(v: &Value) -> Result<WittFp, JsonError> {
    let obj = v
        .as_object()
        .ok_or_else(|| err("expected a residue class object"))?;
    let p = obj
        .get("p")
        .and_then(Value::as_u64)
        .ok_or_else(|| err("residue class needs a prime \"p\""))?;
    if !crate::arith::is_odd_prime(p) {
        return Err(err(format!("{p} is not an odd prime")));
    }
    let kind = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| err("residue class needs \"kind\""))?;
    let value = obj
        .get("value")
        .ok_or_else(|| err("residue class needs \"value\""))?;
    let repr = match (kind, p % 4) {
        ("klein", 1) => {
            let pair = value
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| err("klein value must be [rank, disc]"))?;
            let bits: Vec<u8> = pair
                .iter()
                .map(|b| {
                    b.as_u64()
                        .filter(|&x| x < 2)
                        .map(|x| x as u8)
                        .ok_or_else(|| err("klein components must be 0 or 1"))
                })
                .collect::<Result<_, _>>()?;
            WittFpRepr::Klein { rank: bits[0], disc: bits[1] }
        }
        ("cyclic", 3) => {
            let k = value
                .as_u64()
                .filter(|&x| x < 4)
                .ok_or_else(|| err("cyclic value must be 0..3"))?;
            WittFpRepr::Cyclic(k as u8)
        }
        ("klein", _) | ("cyclic", _) => {
            return Err(err(format!("kind {kind:?} does not match p = {p} mod 4")))
        }
        _ => return Err(err("kind must be \"klein\" or \"cyclic\"")),
    };
    Ok(WittFp { p, repr })
}

pub fn witt_q_to_json(w: &WittQ) -> Value {
    let residues: BTreeMap<String, Value> = w
        .residues
        .iter()
        .map(|(p, c)| (p.to_string(), witt_fp_to_json(c)))
        .collect();
    json!({
        "signature": w.signature,
        "dyadic": w.dyadic,
        "residues": residues,
    })
}

pub fn witt_q_from_json(v: &Value) -> Result<WittQ, JsonError> {
    let obj = v
        .as_object()
        .ok_or_else(|| err("expected a Witt class object"))?;
    let signature = obj
        .get("signature")
        .and_then(Value::as_i64)
        .ok_or_else(|| err("missing integer \"signature\""))?;
    let dyadic = obj
        .get("dyadic")
        .and_then(Value::as_u64)
        .filter(|&b| b < 2)
        .ok_or_else(|| err("\"dyadic\" must be 0 or 1"))?;
    let mut residues = BTreeMap::new();
    if let Some(rs) = obj.get("residues") {
        let map = rs
            .as_object()
            .ok_or_else(|| err("\"residues\" must be an object"))?;
        for (key, val) in map {
            let p: u64 = key
                .parse()
                .map_err(|_| err(format!("residue key {key:?} is not a prime")))?;
            let class = witt_fp_from_json(val)?;
            if class.p != p {
                return Err(err(format!(
                    "residue key {p} disagrees with class prime {}",
                    class.p
                )));
            }
            if !class.is_zero() {
                residues.insert(p, class);
            }
        }
    }
    Ok(WittQ { signature, dyadic: dyadic as u8, residues })
}

fn bigint_to_json(b: &BigInt) -> Value {
    match i64::try_from(b) {
        Ok(x) => json!(x),
        Err(_) => Value::String(b.to_string()),
    }
}

fn bigint_from_json(v: &Value) -> Result<BigInt, JsonError> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string())
            .map_err(|_| err(format!("not an exact integer: {n}"))),
        Value::String(s) => {
            BigInt::from_str(s.trim()).map_err(|_| err(format!("bad integer: {s:?}")))
        }
        _ => Err(err("matrix entries must be integers")),
    }
}

pub fn mat_z_to_json(m: &MatZ) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": m.entries().iter()
            .map(|row| row.iter().map(bigint_to_json).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

fn entry_rows(v: &Value) -> Result<&Vec<Value>, JsonError> {
    match v {
        Value::Array(rows) => Ok(rows),
        Value::Object(obj) => {
            let entries = obj
                .get("entries")
                .ok_or_else(|| err("matrix object needs \"entries\""))?;
            let rows = entries
                .as_array()
                .ok_or_else(|| err("\"entries\" must be an array of rows"))?;
            for key in ["rows", "cols"] {
                if let Some(stated) = obj.get(key).and_then(Value::as_u64) {
                    let actual = match key {
                        "rows" => rows.len() as u64,
                        _ => rows.first().and_then(|r| r.as_array()).map_or(0, |r| r.len())
                            as u64,
                    };
                    if stated != actual {
                        return Err(err(format!("stated {key} = {stated}, found {actual}")));
                    }
                }
            }
            Ok(rows)
        }
        _ => Err(err("expected a matrix")),
    }
}

pub fn mat_z_from_json(v: &Value) -> Result<MatZ, JsonError> {
    let rows = entry_rows(v)?;
    let entries = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| err("matrix rows must be arrays"))?
                .iter()
                .map(bigint_from_json)
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<Vec<_>>, _>>()?;
    let cols = entries.first().map_or(0, |r| r.len());
    if entries.iter().any(|r| r.len() != cols) {
        return Err(err("matrix rows have unequal lengths"));
    }
    Ok(MatZ::new(entries))
}

pub fn mat_f2_to_bits(m: &MatF2) -> Value {
    json!(m.to_rows())
}

pub fn mat_f2_from_json(v: &Value) -> Result<MatF2, JsonError> {
    let rows = entry_rows(v)?;
    let mut bits: Vec<Vec<u8>> = Vec::with_capacity(rows.len());
    let mut width: Option<usize> = None;
    for row in rows {
        let row = row
            .as_array()
            .ok_or_else(|| err("matrix rows must be arrays"))?;
        if *width.get_or_insert(row.len()) != row.len() {
            return Err(err("matrix rows have unequal lengths"));
        }
        let parsed = row
            .iter()
            .map(|e| {
                e.as_u64()
                    .filter(|&b| b < 2)
                    .map(|b| b as u8)
                    .ok_or_else(|| err("F2 entries must be 0 or 1"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        bits.push(parsed);
    }
    Ok(MatF2::from_rows(&bits))
}

pub fn complex_from_json(v: &Value) -> Result<ChainComplexF2, JsonError> {
    let obj = v
        .as_object()
        .ok_or_else(|| err("expected a complex object"))?;
    let dims = obj
        .get("dims")
        .and_then(Value::as_array)
        .ok_or_else(|| err("complex needs \"dims\""))?
        .iter()
        .map(|d| {
            d.as_u64()
                .map(|x| x as usize)
                .ok_or_else(|| err("dims must be nonnegative integers"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let differentials = obj
        .get("differentials")
        .and_then(Value::as_array)
        .ok_or_else(|| err("complex needs \"differentials\""))?
        .iter()
        .map(mat_f2_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ChainComplexF2 { dims, differentials })
}

pub fn complex_to_json(c: &ChainComplexF2) -> Value {
    json!({
        "dims": c.dims,
        "differentials": c.differentials.iter().map(|d| json!({
            "rows": d.rows(),
            "cols": d.cols(),
            "entries": d.to_rows(),
        })).collect::<Vec<_>>(),
    })
}

pub fn snf_to_json(r: &SnfResult) -> Value {
    json!({
        "u": mat_z_to_json(&r.u),
        "d": mat_z_to_json(&r.d),
        "v": mat_z_to_json(&r.v),
    })
}

pub fn gw_complex_to_json(c: &GWComplex) -> Value {
    json!({
        "n": c.n,
        "d0": c.d0.to_rows(),
        "d1": c.d1.to_rows(),
        "labels": {
            "generators": GENERATOR_LABELS,
            "divisors": DIVISOR_BASIS_LABELS,
            "points": POINT_LABELS,
        },
        "cohomology": c.cohomology,
    })
}
