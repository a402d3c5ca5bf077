//! JSON input and output. Parsers walk a `serde_json::Value` by hand so that
//! every schema error carries the path of the offending field, e.g.
//! `$.fibers.1[0][2][1]`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::abelian::DualAction;
use crate::balgebra::Section;
use crate::bundle::FellBundle;
use crate::coaction::Coaction;
use crate::error::{Error, Result};
use crate::groups::{builtin, FiniteGroup};
use crate::harmonic::OperatorFunction;
use crate::linalg::{CMatrix, Subspace, C64};

fn kind(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

fn field<'a>(obj: &'a Value, path: &str, key: &str) -> Result<&'a Value> {
    let map = obj
        .as_object()
        .ok_or_else(|| Error::schema(path, format!("expected an object, found {}", kind(obj))))?;
    map.get(key)
        .ok_or_else(|| Error::schema(format!("{path}.{key}"), "missing field"))
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::schema(path, format!("expected an object, found {}", kind(v))))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::schema(path, format!("expected an array, found {}", kind(v))))
}

fn uint(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| Error::schema(path, format!("expected a non-negative integer, found {v}")))
}

fn real(v: &Value, path: &str) -> Result<f64> {
    v.as_f64()
        .ok_or_else(|| Error::schema(path, format!("expected a number, found {}", kind(v))))
}

fn index_key(key: &str, path: &str, bound: usize) -> Result<usize> {
    let i: usize = key
        .parse()
        .map_err(|_| Error::schema(path, format!("key '{key}' is not an index")))?;
    if i >= bound {
        return Err(Error::schema(path, format!("index {i} out of range (< {bound})")));
    }
    Ok(i)
}

/// A complex entry: `[re, im]` or a bare real.
fn complex(v: &Value, path: &str) -> Result<C64> {
    match v {
        Value::Number(_) => Ok(C64::new(real(v, path)?, 0.0)),
        Value::Array(p) if p.len() == 2 => Ok(C64::new(
            real(&p[0], &format!("{path}[0]"))?,
            real(&p[1], &format!("{path}[1]"))?,
        )),
        _ => Err(Error::schema(path, "expected a [re, im] pair")),
    }
}

/// A matrix as rows of entries, or as a flat row-major list of `n²` entries.
/// With `expected = Some(n)` the shape must be `n × n`.
pub fn parse_matrix(v: &Value, path: &str, expected: Option<usize>) -> Result<CMatrix> {
    let items = array(v, path)?;
    let nested = items.first().is_some_and(|r| {
        r.as_array()
            .is_some_and(|r| r.first().is_some_and(|e| e.is_array()))
    });
    let m = if nested || (items.is_empty() && expected.is_none()) {
        let mut rows = Vec::with_capacity(items.len());
        for (i, r) in items.iter().enumerate() {
            let rp = format!("{path}[{i}]");
            let row = array(r, &rp)?
                .iter()
                .enumerate()
                .map(|(j, e)| complex(e, &format!("{rp}[{j}]")))
                .collect::<Result<Vec<_>>>()?;
            if let Some(first) = rows.first().map(|f: &Vec<C64>| f.len()) {
                if row.len() != first {
                    return Err(Error::schema(rp, format!("row has {} entries, expected {first}", row.len())));
                }
            }
            rows.push(row);
        }
        if rows.is_empty() {
            CMatrix::zeros(0, 0)
        } else {
            CMatrix::from_rows(&rows).map_err(|e| Error::schema(path, e.to_string()))?
        }
    } else {
        let data = items
            .iter()
            .enumerate()
            .map(|(j, e)| complex(e, &format!("{path}[{j}]")))
            .collect::<Result<Vec<_>>>()?;
        let n = (data.len() as f64).sqrt().round() as usize;
        if n * n != data.len() {
            return Err(Error::schema(path, format!("flat matrix of {} entries is not square", data.len())));
        }
        CMatrix::from_vec(n, n, data).map_err(|e| Error::schema(path, e.to_string()))?
    };
    if let Some(n) = expected {
        if m.shape() != (n, n) {
            return Err(Error::schema(
                path,
                format!("matrix is {}x{}, expected {n}x{n}", m.rows(), m.cols()),
            ));
        }
    }
    if !m.is_finite() {
        return Err(Error::schema(path, "matrix has non-finite entries"));
    }
    Ok(m)
}

/// A builtin name (`"c4"`, `"s3"`, ...) or `{"name", "order", "cayley"}`.
pub fn parse_group(v: &Value, path: &str) -> Result<FiniteGroup> {
    match v {
        Value::String(s) => builtin(s).map_err(|e| Error::schema(path, e.to_string())),
        Value::Object(_) => {
            let name = match field(v, path, "name") {
                Ok(Value::String(s)) => s.clone(),
                Ok(other) => {
                    return Err(Error::schema(format!("{path}.name"), format!("expected a string, found {}", kind(other))))
                }
                Err(_) => "G".to_string(),
            };
            let cp = format!("{path}.cayley");
            let rows = array(field(v, path, "cayley")?, &cp)?;
            let mut table = Vec::with_capacity(rows.len());
            for (i, r) in rows.iter().enumerate() {
                let rp = format!("{cp}[{i}]");
                let row = array(r, &rp)?
                    .iter()
                    .enumerate()
                    .map(|(j, e)| uint(e, &format!("{rp}[{j}]")))
                    .collect::<Result<Vec<_>>>()?;
                table.push(row);
            }
            if let Ok(o) = field(v, path, "order") {
                let n = uint(o, &format!("{path}.order"))?;
                if n != table.len() {
                    return Err(Error::schema(
                        format!("{path}.order"),
                        format!("order {n} does not match a {}-row table", table.len()),
                    ));
                }
            }
            FiniteGroup::from_cayley(name, table).map_err(|e| Error::schema(cp, e.to_string()))
        }
        other => Err(Error::schema(path, format!("expected a group name or object, found {}", kind(other)))),
    }
}

pub fn group_to_json(g: &FiniteGroup) -> Value {
    json!({"name": g.name(), "order": g.order(), "cayley": g.cayley()})
}

fn matrix_json(m: &CMatrix) -> Value {
    serde_json::to_value(m).expect("matrices serialize")
}

fn matrix_list(v: &Value, path: &str, n: usize) -> Result<Vec<CMatrix>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(k, m)| parse_matrix(m, &format!("{path}[{k}]"), Some(n)))
        .collect()
}

/// `{"group", "ambient_dim", "fibers": {"t": [matrix, ...]}}`; absent keys
/// are zero fibers.
pub fn parse_bundle(v: &Value) -> Result<FellBundle> {
    let g = Arc::new(parse_group(field(v, "$", "group")?, "$.group")?);
    let n = uint(field(v, "$", "ambient_dim")?, "$.ambient_dim")?;
    if n == 0 {
        return Err(Error::schema("$.ambient_dim", "must be positive"));
    }
    let fibers_v = object(field(v, "$", "fibers")?, "$.fibers")?;
    let mut spanning = vec![Vec::new(); g.order()];
    for (key, mats) in fibers_v {
        let p = format!("$.fibers.{key}");
        let t = index_key(key, &p, g.order())?;
        spanning[t] = matrix_list(mats, &p, n)?;
    }
    let fibers = spanning
        .iter()
        .enumerate()
        .map(|(t, mats)| Subspace::span(n, n, mats).map_err(|e| Error::schema(format!("$.fibers.{t}"), e.to_string())))
        .collect::<Result<Vec<_>>>()?;
    FellBundle::new(g, n, fibers)
}

pub fn bundle_to_json(b: &FellBundle) -> Value {
    let fibers: BTreeMap<String, Vec<Value>> = b
        .fibers()
        .iter()
        .enumerate()
        .filter(|(_, f)| !f.is_zero())
        .map(|(t, f)| (t.to_string(), f.basis().map(matrix_json).collect()))
        .collect();
    json!({
        "group": group_to_json(b.group()),
        "ambient_dim": b.ambient_dim(),
        "fibers": fibers,
    })
}

/// `{"bundle": <bundle object>, "values": {"t": matrix}}` with absent keys zero.
/// A string `bundle` field is resolved through `resolve`.
pub fn parse_section(v: &Value, resolve: impl Fn(&str) -> Result<FellBundle>) -> Result<Section> {
    let bv = field(v, "$", "bundle")?;
    let b = match bv {
        Value::String(s) => resolve(s).map_err(|e| Error::schema("$.bundle", e.to_string()))?,
        _ => parse_bundle(bv).map_err(|e| rebase(e, "$.bundle"))?,
    };
    let b = Arc::new(b);
    let n = b.ambient_dim();
    let mut values = vec![CMatrix::zeros(n, n); b.group().order()];
    for (key, m) in object(field(v, "$", "values")?, "$.values")? {
        let p = format!("$.values.{key}");
        let t = index_key(key, &p, values.len())?;
        values[t] = parse_matrix(m, &p, Some(n))?;
    }
    Section::new(b, values)
}

pub fn section_to_json(xi: &Section) -> Value {
    let values: BTreeMap<String, Value> = xi
        .values()
        .iter()
        .enumerate()
        .map(|(t, m)| (t.to_string(), matrix_json(m)))
        .collect();
    json!({"bundle": bundle_to_json(xi.bundle()), "values": values})
}

/// `{"group", "dim", "values": {"t": matrix}}`
pub fn parse_operator_function(v: &Value) -> Result<OperatorFunction> {
    let g = Arc::new(parse_group(field(v, "$", "group")?, "$.group")?);
    let dim = uint(field(v, "$", "dim")?, "$.dim")?;
    let mut values = vec![CMatrix::zeros(dim, dim); g.order()];
    for (key, m) in object(field(v, "$", "values")?, "$.values")? {
        let p = format!("$.values.{key}");
        let t = index_key(key, &p, values.len())?;
        values[t] = parse_matrix(m, &p, Some(dim))?;
    }
    OperatorFunction::new(g, dim, values)
}

pub fn operator_function_to_json(f: &OperatorFunction) -> Value {
    let values: BTreeMap<String, Value> = f
        .values()
        .iter()
        .enumerate()
        .map(|(t, m)| (t.to_string(), matrix_json(m)))
        .collect();
    json!({"group": group_to_json(f.group()), "dim": f.dim(), "values": values})
}

/// `{"group", "algebra": [a_i], "map": {"i": δ(a_i) ∈ M_d ⊗ M_|G|}}`; every
/// algebra element needs an image.
pub fn parse_coaction(v: &Value) -> Result<Coaction> {
    let g = Arc::new(parse_group(field(v, "$", "group")?, "$.group")?);
    let alg_v = array(field(v, "$", "algebra")?, "$.algebra")?;
    let first = alg_v
        .first()
        .ok_or_else(|| Error::schema("$.algebra", "algebra needs at least one element"))?;
    let d = parse_matrix(first, "$.algebra[0]", None)?.rows();
    let gens = matrix_list(field(v, "$", "algebra")?, "$.algebra", d)?;
    let map_v = object(field(v, "$", "map")?, "$.map")?;
    let mut dense: Vec<Option<CMatrix>> = vec![None; gens.len()];
    for (key, m) in map_v {
        let p = format!("$.map.{key}");
        let i = index_key(key, &p, gens.len())?;
        dense[i] = Some(parse_matrix(m, &p, Some(d * g.order()))?);
    }
    let dense = dense
        .into_iter()
        .enumerate()
        .map(|(i, m)| m.ok_or_else(|| Error::schema(format!("$.map.{i}"), "missing image of algebra element")))
        .collect::<Result<Vec<_>>>()?;
    Coaction::from_dense(g, &gens, &dense)
}

pub fn coaction_to_json(c: &Coaction) -> Value {
    let algebra: Vec<Value> = c.algebra().basis().basis().map(matrix_json).collect();
    let map: BTreeMap<String, Value> = c
        .images()
        .iter()
        .enumerate()
        .map(|(i, f)| (i.to_string(), matrix_json(&f.lambda_op())))
        .collect();
    json!({"group": group_to_json(c.group()), "algebra": algebra, "map": map})
}

/// `{"group_dual_of", "algebra": [matrix], "maps": {"x": superoperator}}`
/// where `maps[x]` acts on row-major `vec(M_d)`.
pub fn parse_action(v: &Value) -> Result<DualAction> {
    let g = Arc::new(parse_group(field(v, "$", "group_dual_of")?, "$.group_dual_of")?);
    let alg_v = array(field(v, "$", "algebra")?, "$.algebra")?;
    let first = alg_v
        .first()
        .ok_or_else(|| Error::schema("$.algebra", "algebra needs at least one element"))?;
    let d = parse_matrix(first, "$.algebra[0]", None)?.rows();
    let gens = matrix_list(field(v, "$", "algebra")?, "$.algebra", d)?;
    let algebra = Subspace::span(d, d, &gens).map_err(|e| Error::schema("$.algebra", e.to_string()))?;
    let mut ops: Vec<Option<CMatrix>> = vec![None; g.order()];
    for (key, m) in object(field(v, "$", "maps")?, "$.maps")? {
        let p = format!("$.maps.{key}");
        let x = index_key(key, &p, ops.len())?;
        ops[x] = Some(parse_matrix(m, &p, Some(d * d))?);
    }
    let ops = ops
        .into_iter()
        .enumerate()
        .map(|(x, m)| m.ok_or_else(|| Error::schema(format!("$.maps.{x}"), "missing map for character")))
        .collect::<Result<Vec<_>>>()?;
    DualAction::from_superops(g, algebra, &ops)
}

pub fn action_to_json(a: &DualAction) -> Value {
    let algebra: Vec<Value> = a.algebra().basis().basis().map(matrix_json).collect();
    let maps: BTreeMap<String, Value> = (0..a.dual().order())
        .map(|x| (x.to_string(), matrix_json(&a.superop(x))))
        .collect();
    json!({"group_dual_of": group_to_json(a.base()), "algebra": algebra, "maps": maps})
}

fn rebase(e: Error, prefix: &str) -> Error {
    match e {
        Error::Schema { path, message } => Error::schema(path.replacen('$', prefix, 1), message),
        other => other,
    }
}

/// Parse JSON text, reporting syntax errors at `$`.
pub fn parse_text(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::schema("$", format!("invalid JSON: {e}")))
}

/// Which document a JSON object is, judged by its keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DocumentKind {
    Bundle,
    Section,
    OperatorFunction,
    Coaction,
    Action,
}

pub fn document_kind(v: &Value) -> Result<DocumentKind> {
    let m = object(v, "$")?;
    let has = |k: &str| m.contains_key(k);
    Ok(if has("fibers") {
        DocumentKind::Bundle
    } else if has("group_dual_of") {
        DocumentKind::Action
    } else if has("map") {
        DocumentKind::Coaction
    } else if has("bundle") {
        DocumentKind::Section
    } else if has("dim") && has("values") {
        DocumentKind::OperatorFunction
    } else {
        return Err(Error::schema("$", "cannot tell which document this is (bundle, section, operator function, coaction or action)"));
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::group_bundle;
    use crate::groups::cyclic;

    fn schema_path(e: Error) -> String {
        match e {
            Error::Schema { path, .. } => path,
            other => panic!("expected a schema error, got {other}"),
        }
    }

    #[test]
    fn bundle_round_trip() {
        let b = group_bundle(Arc::new(cyclic(3).unwrap()));
        let v = bundle_to_json(&b);
        let back = parse_bundle(&v).unwrap();
        assert_eq!(back.fiber_dims(), b.fiber_dims());
        for t in 0..3 {
            assert!(back.fiber(t).equals(b.fiber(t), 1e-12).unwrap());
        }
    }

    #[test]
    fn bad_entry_is_located() {
        let v = parse_text(
            r#"{"group": "c2", "ambient_dim": 2,
                "fibers": {"0": [[[[1,0],[0,0]],[[0,0],[1,0]]]],
                           "1": [[[[0,0],[1,0]],[[1,0],"x"]]]}}"#,
        )
        .unwrap();
        assert_eq!(schema_path(parse_bundle(&v).unwrap_err()), "$.fibers.1[0][1][1]");
    }

    #[test]
    fn missing_and_misshapen_fields() {
        let v = parse_text(r#"{"group": "c2", "fibers": {}}"#).unwrap();
        assert_eq!(schema_path(parse_bundle(&v).unwrap_err()), "$.ambient_dim");
        let v = parse_text(r#"{"group": "c2", "ambient_dim": 2, "fibers": {"0": [[[1,0]]]}}"#).unwrap();
        assert_eq!(schema_path(parse_bundle(&v).unwrap_err()), "$.fibers.0[0]");
        let v = parse_text(r#"{"group": "c2", "ambient_dim": 1, "fibers": {"5": []}}"#).unwrap();
        assert_eq!(schema_path(parse_bundle(&v).unwrap_err()), "$.fibers.5");
        let v = parse_text(r#"{"group": {"cayley": [[0,1],[1,1]]}, "ambient_dim": 1, "fibers": {}}"#).unwrap();
        assert_eq!(schema_path(parse_bundle(&v).unwrap_err()), "$.group.cayley");
    }

    #[test]
    fn flat_matrices_are_accepted() {
        let v = parse_text("[[1,0],[0,0],[0,0],[1,0]]").unwrap();
        let m = parse_matrix(&v, "$", Some(2)).unwrap();
        assert_eq!(m, CMatrix::identity(2));
        let v = parse_text("[1, 0, 0, 1]").unwrap();
        assert_eq!(parse_matrix(&v, "$", Some(2)).unwrap(), CMatrix::identity(2));
    }

    #[test]
    fn coaction_and_action_round_trip() {
        let c = Coaction::comultiplication(Arc::new(cyclic(2).unwrap())).unwrap();
        let back = parse_coaction(&coaction_to_json(&c)).unwrap();
        assert_eq!(back.dim(), 2);
        let a = crate::fixtures::gauge_m2().unwrap();
        let v = action_to_json(&a);
        assert_eq!(document_kind(&v).unwrap(), DocumentKind::Action);
        let back = parse_action(&v).unwrap();
        let x = CMatrix::unit(2, 2, 0, 1);
        assert!(back.apply(1, &x).unwrap().dist(&a.apply(1, &x).unwrap()) < 1e-14);
    }
}
