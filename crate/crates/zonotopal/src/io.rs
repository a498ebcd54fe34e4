//! JSON schemas for the command-line front end: vector lists, basis sets,
//! points, and the serialized form of space bases. Rationals travel as
//! strings `"p/q"` (or bare integers); all indices are 1-based; vectors are
//! columns.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::linalg::{parse_rational, rational_to_string, Matrix, Rational};
use crate::matroid::{BasisId, TuttePolynomial, VectorList};
use crate::poly::{parse_mpoly, HilbertVector, MPoly, Side};
use crate::spaces::SpaceBasis;

fn parse_rational_value(value: &Value, path: &str) -> Result<Rational> {
    match value {
        Value::String(s) => {
            parse_rational(s).map_err(|e| Error::Parse(format!("{path}: {e}")))
        }
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(i.into()))
            } else {
                Err(Error::Parse(format!(
                    "{path}: non-integer numbers are not accepted, write \"p/q\""
                )))
            }
        }
        other => Err(Error::Parse(format!("{path}: expected a rational, got {other}"))),
    }
}

fn parse_rational_vector(value: &Value, path: &str) -> Result<Vec<Rational>> {
    let Value::Array(entries) = value else {
        return Err(Error::Parse(format!("{path}: expected an array")));
    };
    entries
        .iter()
        .enumerate()
        .map(|(i, v)| parse_rational_value(v, &format!("{path}[{i}]")))
        .collect()
}

/// Parses `{"r": 2, "vectors": [["1","0"], ["0","1"], ["1","1"]]}`.
pub fn parse_vector_list(value: &Value) -> Result<VectorList> {
    let Value::Object(map) = value else {
        return Err(Error::Parse("top level: expected an object".into()));
    };
    let r = map
        .get("r")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("r: expected a positive integer".into()))? as usize;
    let Some(Value::Array(cols)) = map.get("vectors") else {
        return Err(Error::Parse("vectors: expected an array of columns".into()));
    };
    let vectors = cols
        .iter()
        .enumerate()
        .map(|(i, col)| parse_rational_vector(col, &format!("vectors[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    VectorList::new(r, vectors)
}

pub fn vector_list_to_json(x: &VectorList) -> Value {
    json!({
        "r": x.dim(),
        "vectors": x
            .vectors()
            .iter()
            .map(|col| Value::Array(col.iter().map(|c| Value::String(rational_to_string(c))).collect()))
            .collect::<Vec<Value>>(),
    })
}

/// Parses `[[1,2],[1,3]]` into basis ids.
pub fn parse_bases(value: &Value) -> Result<Vec<BasisId>> {
    let Value::Array(items) = value else {
        return Err(Error::Parse("bases: expected an array of index tuples".into()));
    };
    items
        .iter()
        .enumerate()
        .map(|(i, tuple)| {
            let Value::Array(entries) = tuple else {
                return Err(Error::Parse(format!("bases[{i}]: expected an index tuple")));
            };
            let indices = entries
                .iter()
                .enumerate()
                .map(|(j, v)| {
                    v.as_u64().map(|u| u as usize).ok_or_else(|| {
                        Error::Parse(format!("bases[{i}][{j}]: expected a positive integer"))
                    })
                })
                .collect::<Result<Vec<usize>>>()?;
            BasisId::new(indices.clone())
                .map_err(|_| Error::Parse(format!("bases[{i}]: {indices:?} is not strictly increasing")))
        })
        .collect()
}

pub fn bases_to_json(bases: &[BasisId]) -> Value {
    Value::Array(
        bases
            .iter()
            .map(|b| Value::Array(b.indices().iter().map(|&i| Value::from(i as u64)).collect()))
            .collect(),
    )
}

/// Parses a point `["1/2", 1]` or a list of points `[[..],[..]]`.
pub fn parse_point(value: &Value) -> Result<Vec<Rational>> {
    parse_rational_vector(value, "point")
}

pub fn parse_points(value: &Value) -> Result<Vec<Vec<Rational>>> {
    let Value::Array(items) = value else {
        return Err(Error::Parse("points: expected an array".into()));
    };
    items
        .iter()
        .enumerate()
        .map(|(i, p)| parse_rational_vector(p, &format!("points[{i}]")))
        .collect()
}

pub fn rational_json(value: &Rational) -> Value {
    Value::String(rational_to_string(value))
}

pub fn vector_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_json).collect())
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array((0..m.cols()).map(|j| rational_json(m.get(i, j))).collect()))
        .collect();
    json!({"rows": m.rows(), "cols": m.cols(), "entries": rows})
}

pub fn hilbert_to_json(h: &HilbertVector) -> Value {
    Value::Array(h.0.iter().map(|&c| Value::from(c as u64)).collect())
}

pub fn tutte_to_json(t: &TuttePolynomial) -> Value {
    let coeffs: Vec<Value> = t
        .0
        .iter()
        .map(|(&(i, j), &c)| json!({"x": i, "y": j, "coefficient": c}))
        .collect();
    json!({"coefficients": coeffs, "text": t.to_string()})
}

fn side_tag(side: Side) -> &'static str {
    match side {
        Side::S => "S",
        Side::T => "T",
    }
}

/// Canonical JSON form of a space basis: side, variable count, optional
/// basis labels, polynomials in canonical text form, and the Hilbert vector.
pub fn space_basis_to_json(basis: &SpaceBasis) -> Value {
    let mut map = Map::new();
    map.insert("side".into(), Value::String(side_tag(basis.side()).into()));
    let nvars = basis
        .elements()
        .first()
        .map(MPoly::nvars)
        .unwrap_or(0);
    map.insert("nvars".into(), Value::from(nvars as u64));
    map.insert(
        "labels".into(),
        match basis.labels() {
            Some(labels) => bases_to_json(labels),
            None => Value::Null,
        },
    );
    map.insert(
        "polynomials".into(),
        Value::Array(
            basis
                .elements()
                .iter()
                .map(|p| Value::String(p.to_string()))
                .collect(),
        ),
    );
    map.insert("hilbert".into(), hilbert_to_json(basis.hilbert()));
    Value::Object(map)
}

/// Re-parses the canonical JSON form; used by the round-trip contract.
pub fn space_basis_from_json(value: &Value) -> Result<SpaceBasis> {
    let Value::Object(map) = value else {
        return Err(Error::Parse("space basis: expected an object".into()));
    };
    let side = match map.get("side").and_then(Value::as_str) {
        Some("S") => Side::S,
        Some("T") => Side::T,
        _ => return Err(Error::Parse("side: expected \"S\" or \"T\"".into())),
    };
    let nvars = map
        .get("nvars")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("nvars: expected an integer".into()))? as usize;
    let labels = match map.get("labels") {
        None | Some(Value::Null) => None,
        Some(v) => Some(parse_bases(v)?),
    };
    let Some(Value::Array(polys)) = map.get("polynomials") else {
        return Err(Error::Parse("polynomials: expected an array".into()));
    };
    let elements = polys
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let text = p
                .as_str()
                .ok_or_else(|| Error::Parse(format!("polynomials[{i}]: expected a string")))?;
            parse_mpoly(text, side, nvars)
        })
        .collect::<Result<Vec<MPoly>>>()?;
    SpaceBasis::new(elements, labels)
}

/// Renders a JSON value as aligned plain text, one `key: value` line per
/// object entry, nested arrays inline.
pub fn render_text(value: &Value) -> String {
    fn inline(value: &Value) -> String {
        match value {
            Value::Array(items) => {
                let inner: Vec<String> = items.iter().map(inline).collect();
                format!("[{}]", inner.join(", "))
            }
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
    match value {
        Value::Object(map) => {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            let mut out = String::new();
            for (k, v) in map {
                out.push_str(&format!("{k:width$}  {}\n", inline(v)));
            }
            out
        }
        other => {
            let mut out = inline(other);
            out.push('\n');
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use crate::matroid::bases;

    fn hat_json() -> Value {
        json!({"r": 2, "vectors": [["1", "0"], ["0", "1"], ["1", "1"]]})
    }

    #[test]
    fn vector_list_round_trip() {
        let x = parse_vector_list(&hat_json()).unwrap();
        assert_eq!(x.dim(), 2);
        assert_eq!(x.len(), 3);
        assert_eq!(x.vector(3), &vec![rat(1), rat(1)]);
        let back = vector_list_to_json(&x);
        assert_eq!(parse_vector_list(&back).unwrap(), x);
    }

    #[test]
    fn invalid_rational_reports_position() {
        let bad = json!({"r": 2, "vectors": [["1", "0"], ["1/0", "1"]]});
        let err = parse_vector_list(&bad).unwrap_err();
        match err {
            Error::Parse(msg) => assert!(msg.contains("vectors[1][0]"), "{msg}"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn mixed_integers_and_strings_parse() {
        let mixed = json!({"r": 2, "vectors": [[1, 0], ["1/2", "-3"]]});
        let x = parse_vector_list(&mixed).unwrap();
        assert_eq!(x.vector(2)[0], crate::linalg::frac(1, 2));
    }

    #[test]
    fn bases_parse_and_render() {
        let v = json!([[1, 2], [2, 3]]);
        let parsed = parse_bases(&v).unwrap();
        assert_eq!(bases_to_json(&parsed), v);
        assert!(parse_bases(&json!([[2, 1]])).is_err());
    }

    #[test]
    fn space_basis_round_trips() {
        let x = parse_vector_list(&hat_json()).unwrap();
        let all = bases(&x).unwrap();
        let p = crate::spaces::p_space_basis(&x, &all).unwrap();
        let as_json = space_basis_to_json(&p);
        let back = space_basis_from_json(&as_json).unwrap();
        assert_eq!(back.elements(), p.elements());
        assert_eq!(back.labels(), p.labels());
        assert_eq!(space_basis_to_json(&back), as_json);
    }

    #[test]
    fn text_rendering_is_aligned() {
        let text = render_text(&json!({"alpha": 1, "b": [1, 2]}));
        assert!(text.contains("alpha  1"));
        assert!(text.contains("b      [1, 2]"));
    }
}
