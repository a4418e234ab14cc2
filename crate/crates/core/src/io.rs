//! JSON reading and writing for bialgebras, subspaces and braided spaces.
//!
//! Tensors are dense nested arrays of scalar strings, or for large tables
//! `{"shape": [..], "entries": [[i, j, .., scalar], ..]}`. Output is
//! deterministic: object keys come out sorted.

use serde_json::{json, Map, Value};

use crate::braided_space::{BraidedSpaceSpec, GenericBraiding};
use crate::coinvariants::CoinvariantAlgebra;
use crate::error::{Error, Result};
use crate::hopf::{Element, StructureBialgebra};
use crate::linalg::{Subspace, Vector};
use crate::lincomb::{LinComb, Tensor};
use crate::scalar::Scalar;

/// Tensors with more entries than this are written sparsely.
pub const DENSE_LIMIT: usize = 4096;

type Entries = Vec<(Vec<usize>, Scalar)>;

fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

fn scalar_of(v: &Value) -> Result<Scalar> {
    serde_json::from_value(v.clone()).map_err(|e| invalid(format!("bad scalar {v}: {e}")))
}

fn dense_entries(v: &Value, shape: &[usize], prefix: &mut Vec<usize>, out: &mut Entries) -> Result<()> {
    if shape.is_empty() {
        let s = scalar_of(v)?;
        if !s.is_zero() {
            out.push((prefix.clone(), s));
        }
        return Ok(());
    }
    let arr = v
        .as_array()
        .ok_or_else(|| invalid(format!("expected an array at index {prefix:?}")))?;
    if arr.len() != shape[0] {
        return Err(Error::Dimension(format!(
            "array at index {prefix:?} has length {}, expected {}",
            arr.len(),
            shape[0]
        )));
    }
    for (i, x) in arr.iter().enumerate() {
        prefix.push(i);
        dense_entries(x, &shape[1..], prefix, out)?;
        prefix.pop();
    }
    Ok(())
}

/// Nonzero entries of a tensor of the given shape, dense or sparse.
pub fn read_tensor(v: &Value, shape: &[usize]) -> Result<Entries> {
    let mut out = Vec::new();
    if let Some(obj) = v.as_object() {
        let declared: Vec<usize> = serde_json::from_value(obj.get("shape").cloned().unwrap_or(Value::Null))
            .map_err(|_| invalid("sparse tensor needs \"shape\""))?;
        if declared != shape {
            return Err(Error::Dimension(format!("shape {declared:?}, expected {shape:?}")));
        }
        let entries = obj
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| invalid("sparse tensor needs \"entries\""))?;
        for e in entries {
            let parts = e.as_array().filter(|p| p.len() == shape.len() + 1).ok_or_else(|| {
                invalid(format!("sparse entry {e} needs {} indices and a scalar", shape.len()))
            })?;
            let idx: Vec<usize> = parts[..shape.len()]
                .iter()
                .zip(shape)
                .map(|(x, &n)| x.as_u64().map(|i| i as usize).filter(|&i| i < n))
                .collect::<Option<_>>()
                .ok_or_else(|| invalid(format!("sparse entry {e} has an index out of range")))?;
            let s = scalar_of(&parts[shape.len()])?;
            if !s.is_zero() {
                out.push((idx, s));
            }
        }
        return Ok(out);
    }
    dense_entries(v, shape, &mut Vec::new(), &mut out)?;
    Ok(out)
}

fn dense_value(shape: &[usize], lookup: &dyn Fn(&[usize]) -> Scalar, prefix: &mut Vec<usize>) -> Value {
    if shape.is_empty() {
        return Value::String(lookup(prefix).to_exact_string());
    }
    Value::Array(
        (0..shape[0])
            .map(|i| {
                prefix.push(i);
                let v = dense_value(&shape[1..], lookup, prefix);
                prefix.pop();
                v
            })
            .collect(),
    )
}

/// Writes entries densely when the tensor is small, sparsely otherwise.
pub fn write_tensor(shape: &[usize], mut entries: Entries) -> Value {
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    entries.retain(|(_, s)| !s.is_zero());
    let size: usize = shape.iter().product();
    if size <= DENSE_LIMIT {
        let map: std::collections::BTreeMap<Vec<usize>, Scalar> = entries.into_iter().collect();
        let lookup = |k: &[usize]| map.get(k).cloned().unwrap_or_default();
        return dense_value(shape, &lookup, &mut Vec::new());
    }
    let rows: Vec<Value> = entries
        .into_iter()
        .map(|(k, s)| {
            let mut row: Vec<Value> = k.into_iter().map(Value::from).collect();
            row.push(Value::String(s.to_exact_string()));
            Value::Array(row)
        })
        .collect();
    json!({ "shape": shape, "entries": rows })
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| invalid(format!("missing field \"{key}\"")))
}

fn optional<'a>(obj: &'a Map<String, Value>, key: &str) -> Option<&'a Value> {
    obj.get(key).filter(|v| !v.is_null())
}

fn usize_list(v: &Value, what: &str, d: usize) -> Result<Vec<usize>> {
    let list: Vec<usize> = serde_json::from_value(v.clone()).map_err(|e| invalid(format!("{what}: {e}")))?;
    if list.len() != d {
        return Err(Error::Dimension(format!("{what} has length {}, expected {d}", list.len())));
    }
    Ok(list)
}

fn element_from(entries: Entries, dim: usize, at: usize) -> Vec<Element> {
    let mut out = vec![Element::zero(); dim];
    for (k, s) in entries {
        out[k[0]].add_term(k[at], s);
    }
    out
}

/// Reads a bialgebra from its JSON value. Unknown extra fields are ignored.
pub fn bialgebra_from_value(v: &Value) -> Result<StructureBialgebra> {
    let obj = v.as_object().ok_or_else(|| invalid("expected a JSON object"))?;
    let d: usize = serde_json::from_value(field(obj, "dim")?.clone()).map_err(|_| invalid("\"dim\" must be a count"))?;
    let names: Vec<String> =
        serde_json::from_value(field(obj, "basis")?.clone()).map_err(|_| invalid("\"basis\" must list names"))?;
    if names.len() != d {
        return Err(Error::Dimension(format!("{} basis names for dim {d}", names.len())));
    }
    let unit = LinComb::from_terms(read_tensor(field(obj, "unit")?, &[d])?.into_iter().map(|(k, s)| (k[0], s)));
    let mut mult = vec![vec![Element::zero(); d]; d];
    for (k, s) in read_tensor(field(obj, "mult")?, &[d, d, d])? {
        mult[k[0]][k[1]].add_term(k[2], s);
    }
    let mut counit = vec![Scalar::zero(); d];
    for (k, s) in read_tensor(field(obj, "counit")?, &[d])? {
        counit[k[0]] = s;
    }
    let mut comult = vec![Tensor::zero(); d];
    for (k, s) in read_tensor(field(obj, "comult")?, &[d, d, d])? {
        comult[k[0]].add_term(vec![k[1], k[2]], s);
    }
    let antipode = match optional(obj, "antipode") {
        Some(a) => Some(element_from(read_tensor(a, &[d, d])?, d, 1)),
        None => None,
    };
    let mut braid: Vec<Vec<Vec<((usize, usize), Scalar)>>> = vec![vec![Vec::new(); d]; d];
    for (k, s) in read_tensor(field(obj, "braiding")?, &[d, d, d, d])? {
        braid[k[0]][k[1]].push(((k[2], k[3]), s));
    }
    let braiding = GenericBraiding::from_fn(d, |i, j| std::mem::take(&mut braid[i][j]));
    let grading = optional(obj, "grading").map(|g| usize_list(g, "grading", d)).transpose()?;
    let weights = optional(obj, "weights").map(|g| usize_list(g, "weights", d)).transpose()?;
    let truncation = optional(obj, "truncation")
        .map(|t| t.as_u64().map(|t| t as usize).ok_or_else(|| invalid("\"truncation\" must be a count")))
        .transpose()?;
    let h = StructureBialgebra {
        names,
        unit,
        mult,
        counit,
        comult,
        antipode,
        braiding,
        grading,
        weights,
        truncation,
    };
    h.validate_shape()?;
    Ok(h)
}

pub fn bialgebra_from_str(text: &str) -> Result<StructureBialgebra> {
    let v: Value = serde_json::from_str(text).map_err(|e| invalid(format!("malformed JSON: {e}")))?;
    bialgebra_from_value(&v)
}

fn element_entries(rows: &[Element]) -> Entries {
    rows.iter()
        .enumerate()
        .flat_map(|(i, e)| e.iter().map(move |(&j, s)| (vec![i, j], s.clone())))
        .collect()
}

pub fn bialgebra_to_value(h: &StructureBialgebra) -> Value {
    let d = h.dim();
    let mut obj = Map::new();
    obj.insert("dim".into(), d.into());
    obj.insert("basis".into(), json!(h.names));
    obj.insert(
        "unit".into(),
        write_tensor(&[d], h.unit.iter().map(|(&i, s)| (vec![i], s.clone())).collect()),
    );
    let mult = (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .flat_map(|(i, j)| h.mult[i][j].iter().map(move |(&k, s)| (vec![i, j, k], s.clone())))
        .collect();
    obj.insert("mult".into(), write_tensor(&[d, d, d], mult));
    obj.insert(
        "counit".into(),
        write_tensor(&[d], h.counit.iter().enumerate().map(|(i, s)| (vec![i], s.clone())).collect()),
    );
    let comult = h
        .comult
        .iter()
        .enumerate()
        .flat_map(|(i, t)| t.iter().map(move |(k, s)| (vec![i, k[0], k[1]], s.clone())))
        .collect();
    obj.insert("comult".into(), write_tensor(&[d, d, d], comult));
    obj.insert(
        "antipode".into(),
        match &h.antipode {
            Some(s) => write_tensor(&[d, d], element_entries(s)),
            None => Value::Null,
        },
    );
    let braiding = (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .flat_map(|(i, j)| {
            h.braiding
                .image(i, j)
                .iter()
                .map(move |((k, l), s)| (vec![i, j, *k, *l], s.clone()))
        })
        .collect();
    obj.insert("braiding".into(), write_tensor(&[d, d, d, d], braiding));
    obj.insert("grading".into(), json!(h.grading));
    obj.insert("truncation".into(), json!(h.truncation));
    if let Some(w) = &h.weights {
        obj.insert("weights".into(), json!(w));
    }
    Value::Object(obj)
}

/// Reads `{"rows": [[..]]}`, a bare row matrix, or `{"span": [basis names]}`.
pub fn subspace_from_value(v: &Value, h: &StructureBialgebra) -> Result<Subspace> {
    let d = h.dim();
    let rows_value = match v {
        Value::Array(_) => v,
        Value::Object(obj) if obj.contains_key("span") => {
            let names: Vec<String> = serde_json::from_value(obj["span"].clone())
                .map_err(|_| invalid("\"span\" must list basis names"))?;
            let idx = names
                .iter()
                .map(|n| {
                    h.names
                        .iter()
                        .position(|m| m == n)
                        .ok_or_else(|| invalid(format!("unknown basis name {n:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(Subspace::coordinate(d, idx));
        }
        Value::Object(obj) => field(obj, "rows")?,
        _ => return Err(invalid("subspace must be an object or a row matrix")),
    };
    let rows_json = rows_value.as_array().ok_or_else(|| invalid("\"rows\" must be an array"))?;
    let rows: Vec<Vector> = rows_json
        .iter()
        .map(|r| {
            let mut row = vec![Scalar::zero(); d];
            for (k, s) in read_tensor(r, &[d])? {
                row[k[0]] = s;
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Subspace::from_rows(d, rows)
}

pub fn subspace_from_str(text: &str, h: &StructureBialgebra) -> Result<Subspace> {
    let v: Value = serde_json::from_str(text).map_err(|e| invalid(format!("malformed JSON: {e}")))?;
    subspace_from_value(&v, h)
}

pub fn subspace_to_value(s: &Subspace) -> Value {
    let rows: Vec<Value> = s
        .rows()
        .iter()
        .map(|r| Value::Array(r.iter().map(|x| Value::String(x.to_exact_string())).collect()))
        .collect();
    json!({ "rows": rows })
}

pub fn braided_space_from_str(text: &str) -> Result<BraidedSpaceSpec> {
    serde_json::from_str(text).map_err(|e| invalid(format!("malformed braided space: {e}")))
}

/// `R` as a bialgebra document, extended by its inclusion, action and coaction.
pub fn coinvariants_to_value(r: &CoinvariantAlgebra) -> Value {
    let mut v = bialgebra_to_value(&r.algebra);
    let n = r.dim();
    let pd = r.parent.dim();
    let kdim = r.k_basis.len();
    let action = r
        .action
        .iter()
        .enumerate()
        .flat_map(|(a, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(j, e)| e.iter().map(move |(&m, s)| (vec![a, j, m], s.clone())))
        })
        .collect();
    let k_pos = |p: usize| r.k_basis.iter().position(|&q| q == p).expect("coaction lands in K");
    let coaction = r
        .coaction
        .iter()
        .enumerate()
        .flat_map(|(j, t)| t.iter().map(move |(k, s)| (vec![j, k_pos(k[0]), k[1]], s.clone())))
        .collect();
    let obj = v.as_object_mut().expect("object");
    obj.insert(
        "k_basis".into(),
        json!(r.k_basis.iter().map(|&i| r.parent.name(i)).collect::<Vec<_>>()),
    );
    obj.insert("inclusion".into(), subspace_to_value(&r.inclusion));
    obj.insert("parent_dim".into(), pd.into());
    obj.insert("action".into(), write_tensor(&[kdim, n, n], action));
    obj.insert("coaction".into(), write_tensor(&[n, kdim, n], coaction));
    v
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(&sorted(v)).expect("serializable");
    s.push('\n');
    s
}

fn sorted(v: &Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            Value::Object(keys.into_iter().map(|k| (k.clone(), sorted(&m[k]))).collect())
        }
        Value::Array(a) => Value::Array(a.iter().map(sorted).collect()),
        x => x.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{entries, sweedler, taft3};

    #[test]
    fn corpus_round_trips() {
        for e in entries() {
            let v = bialgebra_to_value(&e.algebra);
            let back = bialgebra_from_value(&v).unwrap();
            assert_eq!(back, e.algebra, "{}", e.name);
        }
    }

    #[test]
    fn small_tables_are_dense_and_large_sparse() {
        let v = bialgebra_to_value(&sweedler());
        assert!(v["mult"].is_array());
        let big = bialgebra_to_value(&crate::corpus::abelian_enveloping(6));
        assert!(big["braiding"]["entries"].is_array());
    }

    #[test]
    fn cyclotomic_entries_are_strings() {
        let v = bialgebra_to_value(&taft3());
        let s = to_canonical_string(&v);
        assert!(s.contains("\"3:"));
    }

    #[test]
    fn subspace_forms() {
        let h = sweedler();
        let a = subspace_from_str(r#"{"span":["1","g"]}"#, &h).unwrap();
        let b = subspace_from_str(r#"[["1","0","0","0"],["0","1","0","0"]]"#, &h).unwrap();
        let c = subspace_from_value(&subspace_to_value(&a), &h).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert!(subspace_from_str(r#"{"span":["q"]}"#, &h).is_err());
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        assert!(bialgebra_from_str("{").is_err());
        assert!(bialgebra_from_str(r#"{"dim":1}"#).is_err());
        let mut v = bialgebra_to_value(&sweedler());
        v["mult"][0] = json!([]);
        assert!(bialgebra_from_value(&v).is_err());
    }

    #[test]
    fn keys_are_sorted() {
        let s = to_canonical_string(&json!({"b": 1, "a": {"d": 2, "c": 3}}));
        assert!(s.find("\"a\"").unwrap() < s.find("\"b\"").unwrap());
        assert!(s.find("\"c\"").unwrap() < s.find("\"d\"").unwrap());
    }
}
