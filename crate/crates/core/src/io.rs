//! Canonical JSON for keys, ciphertexts and attack transcripts.
//!
//! Output has sorted keys and no whitespace, and field elements (including
//! the modulus) are decimal strings, so parsing and re-emitting a file is
//! byte-identical. Positions are 1-based in every file.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::attack::{AttackStatus, AttackTranscript, DimProbe};
use crate::field::{Fe, Field, FieldError};
use crate::matrix::Matrix;
use crate::scheme::{BlParams, Ciphertext, PublicKey, SecretKey};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("field '{path}': {message}")]
    Field { path: String, message: String },
}

fn err(path: &str, message: impl Into<String>) -> FormatError {
    FormatError::Field { path: path.to_string(), message: message.into() }
}

fn parse_value(text: &str) -> Result<Value, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn to_canonical(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values always serialize")
}

fn fe_str(v: Fe) -> Value {
    Value::String(v.value().to_string())
}

fn fe_list(v: &[Fe]) -> Value {
    Value::Array(v.iter().map(|&e| fe_str(e)).collect())
}

fn positions_1based(v: &[usize]) -> Value {
    Value::Array(v.iter().map(|&p| json!(p + 1)).collect())
}

pub fn matrix_to_value(m: &Matrix) -> Value {
    json!({
        "q": m.field().modulus().to_string(),
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": m.row_iter().map(fe_list).collect::<Vec<_>>(),
    })
}

fn params_fields(p: &BlParams) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("q".into(), Value::String(p.q.to_string()));
    m.insert("n".into(), json!(p.n));
    m.insert("k".into(), json!(p.k));
    m.insert("ell".into(), json!(p.ell));
    m.insert("eta".into(), json!(p.eta));
    m
}

pub fn secret_key_to_json(sk: &SecretKey) -> String {
    let mut m = params_fields(&sk.params);
    m.insert("L".into(), positions_1based(&sk.l));
    m.insert("x".into(), fe_list(&sk.x));
    m.insert("G".into(), matrix_to_value(&sk.g));
    to_canonical(&Value::Object(m))
}

pub fn public_key_to_json(pk: &PublicKey) -> String {
    let mut m = params_fields(&pk.params);
    m.insert("P".into(), matrix_to_value(&pk.p));
    to_canonical(&Value::Object(m))
}

pub fn ciphertext_to_json(ct: &Ciphertext) -> String {
    to_canonical(&json!({
        "q": ct.field.modulus().to_string(),
        "n": ct.c.len(),
        "c": fe_list(&ct.c),
    }))
}

pub fn transcript_to_json(t: &AttackTranscript) -> String {
    let probes: Vec<Value> = t
        .probes
        .iter()
        .map(|p| json!({ "I_size": p.size(), "d": p.dim, "overlap": p.overlap }))
        .collect();
    let status = match t.status {
        AttackStatus::Success => "success",
        AttackStatus::Failed(_) => "failed",
    };
    to_canonical(&json!({
        "recovered_L": positions_1based(&t.recovered_l),
        "probes": probes,
        "resamples": t.resamples,
        "status": status,
    }))
}

/// A position-set file: `{"L": [...]}`.
pub fn positions_to_json(l: &[usize]) -> String {
    to_canonical(&json!({ "L": positions_1based(l) }))
}

// ---- parsing ----

fn get<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, FormatError> {
    obj.get(key).ok_or_else(|| err(key, "missing"))
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, FormatError> {
    v.as_object().ok_or_else(|| err(path, "expected an object"))
}

fn as_usize(v: &Value, path: &str) -> Result<usize, FormatError> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| err(path, "expected a non-negative integer"))
}

fn as_decimal(v: &Value, path: &str) -> Result<u64, FormatError> {
    match v {
        Value::String(s) => s
            .parse::<u64>()
            .map_err(|_| err(path, format!("'{s}' is not a decimal integer"))),
        Value::Number(n) => n.as_u64().ok_or_else(|| err(path, "expected a non-negative integer")),
        _ => Err(err(path, "expected a decimal string")),
    }
}

fn field_from(v: &Value, path: &str) -> Result<Field, FormatError> {
    let q = as_decimal(v, path)?;
    Field::new(q).map_err(|e| match e {
        FieldError::NotPrime(q) => err(path, format!("modulus {q} fails the primality test")),
        other => err(path, other.to_string()),
    })
}

fn fe_from(field: Field, v: &Value, path: &str) -> Result<Fe, FormatError> {
    let raw = as_decimal(v, path)?;
    field.canonical(raw).map_err(|e| err(path, e.to_string()))
}

fn fe_list_from(field: Field, v: &Value, path: &str) -> Result<Vec<Fe>, FormatError> {
    let arr = v.as_array().ok_or_else(|| err(path, "expected an array"))?;
    arr.iter()
        .enumerate()
        .map(|(i, e)| fe_from(field, e, &format!("{path}[{i}]")))
        .collect()
}

fn positions_from(v: &Value, n: Option<usize>, path: &str) -> Result<Vec<usize>, FormatError> {
    let arr = v.as_array().ok_or_else(|| err(path, "expected an array of positions"))?;
    let mut out = Vec::with_capacity(arr.len());
    for (i, e) in arr.iter().enumerate() {
        let p = as_usize(e, &format!("{path}[{i}]"))?;
        if p == 0 || n.is_some_and(|n| p > n) {
            return Err(err(&format!("{path}[{i}]"), format!("position {p} outside 1..=n")));
        }
        out.push(p - 1);
    }
    if out.windows(2).any(|w| w[0] >= w[1]) {
        return Err(err(path, "positions must be strictly increasing"));
    }
    Ok(out)
}

pub fn matrix_from_value(v: &Value, path: &str) -> Result<Matrix, FormatError> {
    let obj = as_object(v, path)?;
    let sub = |k: &str| format!("{path}.{k}");
    let field = field_from(get(obj, "q").map_err(|_| err(&sub("q"), "missing"))?, &sub("q"))?;
    let rows = as_usize(get(obj, "rows").map_err(|_| err(&sub("rows"), "missing"))?, &sub("rows"))?;
    let cols = as_usize(get(obj, "cols").map_err(|_| err(&sub("cols"), "missing"))?, &sub("cols"))?;
    let entries = get(obj, "entries")
        .map_err(|_| err(&sub("entries"), "missing"))?
        .as_array()
        .ok_or_else(|| err(&sub("entries"), "expected an array of rows"))?;
    if entries.len() != rows {
        return Err(err(&sub("entries"), format!("{} rows, header says {rows}", entries.len())));
    }
    let mut data = Vec::with_capacity(rows);
    for (r, row) in entries.iter().enumerate() {
        let rp = format!("{path}.entries[{r}]");
        let row = fe_list_from(field, row, &rp)?;
        if row.len() != cols {
            return Err(err(&rp, format!("{} entries, header says {cols}", row.len())));
        }
        data.push(row);
    }
    Matrix::from_rows_with_cols(field, cols, data).map_err(|e| err(path, e.to_string()))
}

fn params_from(obj: &Map<String, Value>) -> Result<(BlParams, Field), FormatError> {
    let field = field_from(get(obj, "q")?, "q")?;
    let n = as_usize(get(obj, "n")?, "n")?;
    let k = as_usize(get(obj, "k")?, "k")?;
    let ell = as_usize(get(obj, "ell")?, "ell")?;
    let eta = get(obj, "eta")?.as_f64().ok_or_else(|| err("eta", "expected a number"))?;
    let params = BlParams { q: field.modulus(), n, k, ell, eta, alpha: 0.25 };
    params.validate().map_err(|v| {
        err("params", v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))
    })?;
    Ok((params, field))
}

fn check_matrix(m: &Matrix, field: Field, rows: usize, cols: usize, path: &str) -> Result<(), FormatError> {
    if m.field() != field {
        return Err(err(&format!("{path}.q"), "differs from the key's q"));
    }
    if m.rows() != rows || m.cols() != cols {
        return Err(err(path, format!("is {}x{}, expected {rows}x{cols}", m.rows(), m.cols())));
    }
    Ok(())
}

pub fn secret_key_from_json(text: &str) -> Result<SecretKey, FormatError> {
    let v = parse_value(text)?;
    let obj = as_object(&v, "$")?;
    let (params, field) = params_from(obj)?;
    let l = positions_from(get(obj, "L")?, Some(params.n), "L")?;
    if l.len() != 3 * params.ell {
        return Err(err("L", format!("{} positions, expected 3*ell = {}", l.len(), 3 * params.ell)));
    }
    let x = fe_list_from(field, get(obj, "x")?, "x")?;
    if x.len() != params.n {
        return Err(err("x", format!("{} points, expected n = {}", x.len(), params.n)));
    }
    let g = matrix_from_value(get(obj, "G")?, "G")?;
    check_matrix(&g, field, params.k, params.n, "G")?;
    Ok(SecretKey { params, l, x, g })
}

pub fn public_key_from_json(text: &str) -> Result<PublicKey, FormatError> {
    let v = parse_value(text)?;
    let obj = as_object(&v, "$")?;
    let (params, field) = params_from(obj)?;
    let p = matrix_from_value(get(obj, "P")?, "P")?;
    check_matrix(&p, field, params.k, params.n, "P")?;
    Ok(PublicKey { params, p })
}

pub fn ciphertext_from_json(text: &str) -> Result<Ciphertext, FormatError> {
    let v = parse_value(text)?;
    let obj = as_object(&v, "$")?;
    let field = field_from(get(obj, "q")?, "q")?;
    let n = as_usize(get(obj, "n")?, "n")?;
    let c = fe_list_from(field, get(obj, "c")?, "c")?;
    if c.len() != n {
        return Err(err("c", format!("length {} does not match header n = {n}", c.len())));
    }
    Ok(Ciphertext { field, c })
}

/// Reads a 0-based position set from either a `{"L": [...]}` file or an
/// attack transcript (`recovered_L`).
pub fn positions_from_json(text: &str, n: Option<usize>) -> Result<Vec<usize>, FormatError> {
    let v = parse_value(text)?;
    let obj = as_object(&v, "$")?;
    if let Some(l) = obj.get("L") {
        return positions_from(l, n, "L");
    }
    if let Some(l) = obj.get("recovered_L") {
        if obj.get("status").and_then(Value::as_str) == Some("failed") {
            return Err(err("status", "transcript records a failed attack"));
        }
        return positions_from(l, n, "recovered_L");
    }
    Err(err("L", "missing (expected 'L' or 'recovered_L')"))
}

pub fn transcript_from_json(text: &str) -> Result<AttackTranscript, FormatError> {
    let v = parse_value(text)?;
    let obj = as_object(&v, "$")?;
    let recovered_l = positions_from(get(obj, "recovered_L")?, None, "recovered_L")?;
    let resamples = as_usize(get(obj, "resamples")?, "resamples")?;
    let status = match get(obj, "status")?.as_str() {
        Some("success") => AttackStatus::Success,
        Some("failed") => AttackStatus::Failed(String::new()),
        _ => return Err(err("status", "expected \"success\" or \"failed\"")),
    };
    let arr = get(obj, "probes")?.as_array().ok_or_else(|| err("probes", "expected an array"))?;
    let mut probes = Vec::with_capacity(arr.len());
    for (i, p) in arr.iter().enumerate() {
        let path = format!("probes[{i}]");
        let po = as_object(p, &path)?;
        let size = as_usize(get(po, "I_size").map_err(|_| err(&path, "missing I_size"))?, &path)?;
        let dim = as_usize(get(po, "d").map_err(|_| err(&path, "missing d"))?, &path)?;
        let overlap = get(po, "overlap")
            .map_err(|_| err(&path, "missing overlap"))?
            .as_i64()
            .ok_or_else(|| err(&path, "overlap must be an integer"))?;
        // Only the size of I is recorded on disk.
        probes.push(DimProbe { positions: (0..size).collect(), dim, overlap });
    }
    Ok(AttackTranscript { recovered_l, probes, resamples, status })
}

/// Parses any artifact by its shape and re-emits it canonically.
pub fn canonicalize(text: &str) -> Result<String, FormatError> {
    let v = parse_value(text)?;
    let obj = as_object(&v, "$")?;
    if obj.contains_key("G") {
        Ok(secret_key_to_json(&secret_key_from_json(text)?))
    } else if obj.contains_key("P") {
        Ok(public_key_to_json(&public_key_from_json(text)?))
    } else if obj.contains_key("c") {
        Ok(ciphertext_to_json(&ciphertext_from_json(text)?))
    } else if obj.contains_key("probes") {
        Ok(transcript_to_json(&transcript_from_json(text)?))
    } else if obj.contains_key("L") {
        Ok(positions_to_json(&positions_from_json(text, None)?))
    } else {
        Err(err("$", "unrecognised artifact"))
    }
}
