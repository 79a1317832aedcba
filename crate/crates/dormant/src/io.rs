//! JSON encodings of modules, pinned modules and oper tables.
//!
//! A module file looks like
//!
//! ```json
//! {"p": 2, "m": 0, "log": false, "rank": 1, "matrices": [[["1"]], [["0"]], [["0"]]]}
//! ```
//!
//! with `matrices[j][row][col]` for `j = 0..=p^(m+1)` written in the rational
//! function grammar of [`RatFunc::parse`]. A pinned file is
//! `{"module": <module>, "vector": [<ratfunc>, ...]}`.

use serde_json::{json, Map, Value};

use crate::combinatorics::LevelParams;
use crate::covers::{OperRow, Perm, RamTriple, Status, Witness};
use crate::cyclic::PinnedModule;
use crate::error::{Error, Result};
use crate::linalg::{Mat, Vector};
use crate::module::DiffModule;
use crate::ratfunc::RatFunc;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn ratfunc_from_value(p: u32, v: &Value) -> Result<RatFunc> {
    match v {
        Value::String(s) => RatFunc::parse(p, s),
        Value::Number(n) => n
            .as_i64()
            .map(|k| RatFunc::constant(p, k.rem_euclid(p as i64) as u32))
            .ok_or_else(|| parse_err(format!("bad number {n}"))),
        other => Err(parse_err(format!("expected a rational function, got {other}"))),
    }
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| parse_err(format!("missing field {key:?}")))
}

fn uint(obj: &Value, key: &str) -> Result<u64> {
    field(obj, key)?.as_u64().ok_or_else(|| parse_err(format!("field {key:?} must be a nonnegative integer")))
}

pub fn vector_to_json(v: &[RatFunc]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn vector_from_json(p: u32, v: &Value) -> Result<Vector> {
    v.as_array().ok_or_else(|| parse_err("vector must be an array"))?.iter().map(|x| ratfunc_from_value(p, x)).collect()
}

pub fn mat_to_json(a: &Mat) -> Value {
    Value::Array((0..a.rows()).map(|r| vector_to_json(&a.row(r))).collect())
}

pub fn mat_from_json(p: u32, v: &Value) -> Result<Mat> {
    let rows = v.as_array().ok_or_else(|| parse_err("matrix must be an array of rows"))?;
    let rows: Vec<Vector> = rows.iter().map(|r| vector_from_json(p, r)).collect::<Result<_>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(parse_err("ragged matrix"));
    }
    Ok(Mat::from_fn(p, rows.len(), cols, |r, c| rows[r][c].clone()))
}

pub fn module_to_json(m: &DiffModule) -> Value {
    let params = m.params();
    json!({
        "p": params.p,
        "m": params.m,
        "log": m.is_log(),
        "rank": m.rank(),
        "matrices": m.matrices().iter().map(mat_to_json).collect::<Vec<_>>(),
    })
}

pub fn module_from_json(v: &Value) -> Result<DiffModule> {
    let p = u32::try_from(uint(v, "p")?).map_err(|_| parse_err("p too large"))?;
    let m = u32::try_from(uint(v, "m")?).map_err(|_| parse_err("m too large"))?;
    let params = LevelParams::new(p, m)?;
    let log = field(v, "log")?.as_bool().ok_or_else(|| parse_err("field \"log\" must be a boolean"))?;
    let rank = uint(v, "rank")? as usize;
    let mats = field(v, "matrices")?.as_array().ok_or_else(|| parse_err("matrices must be an array"))?;
    let mats: Vec<Mat> = mats.iter().map(|x| mat_from_json(p, x)).collect::<Result<_>>()?;
    if mats.iter().any(|a| a.rows() != rank || a.cols() != rank) {
        return Err(parse_err(format!("every matrix must be {rank} x {rank}")));
    }
    DiffModule::from_matrices(params, log, mats).map_err(|e| parse_err(e.to_string()))
}

pub fn pinned_to_json(pm: &PinnedModule) -> Value {
    json!({ "module": module_to_json(&pm.module), "vector": vector_to_json(&pm.vector) })
}

pub fn pinned_from_json(v: &Value) -> Result<PinnedModule> {
    let module = module_from_json(field(v, "module")?)?;
    let vector = vector_from_json(module.p(), field(v, "vector")?)?;
    PinnedModule::new(module, vector)
}

/// 1-based cycles.
pub fn perm_to_json(s: &Perm) -> Value {
    Value::Array(
        s.cycles().iter().map(|c| Value::Array(c.iter().map(|&x| json!(x + 1)).collect())).collect(),
    )
}

fn order_to_json(order: u128) -> Value {
    match u64::try_from(order) {
        Ok(o) => json!(o),
        Err(_) => json!(order.to_string()),
    }
}

pub fn witness_to_json(w: &Witness) -> Value {
    json!({
        "degree": w.degree,
        "sigma0": perm_to_json(&w.sigma0),
        "sigma1": perm_to_json(&w.sigma1),
        "sigma_inf": perm_to_json(&w.sigma_inf),
        "group_order": order_to_json(w.group_order),
    })
}

fn status_fields(out: &mut Map<String, Value>, status: &Status) {
    out.insert("status".into(), json!(status.label()));
    match status {
        Status::Witness(w) => {
            out.insert("witness".into(), witness_to_json(w));
        }
        Status::BudgetExceeded { budget, explored } => {
            out.insert("budget".into(), json!(budget));
            out.insert("explored".into(), json!(explored));
        }
        Status::NoWitness => {}
    }
}

pub fn triple_to_json(t: &RamTriple) -> Value {
    json!(t.as_array())
}

/// A triple with its search status, as printed by `cover-check`.
pub fn status_to_json(t: &RamTriple, degree: u64, status: &Status) -> Value {
    let mut out = Map::new();
    out.insert("triple".into(), triple_to_json(t));
    out.insert("degree".into(), json!(degree));
    status_fields(&mut out, status);
    Value::Object(out)
}

pub fn oper_row_to_json(row: &OperRow) -> Value {
    let Value::Object(mut out) = status_to_json(&row.triple, row.degree, &row.status) else { unreachable!() };
    out.insert("radii".into(), json!(row.radii.map(|r| r.value)));
    out.insert(
        "variants".into(),
        Value::Array(
            row.variants
                .iter()
                .map(|(t, s)| json!({ "triple": triple_to_json(t), "status": s.label() }))
                .collect(),
        ),
    );
    out.insert("variants_consistent".into(), json!(row.variants_consistent));
    Value::Object(out)
}

pub fn oper_rows_to_json(rows: &[OperRow]) -> Value {
    Value::Array(rows.iter().map(oper_row_to_json).collect())
}
