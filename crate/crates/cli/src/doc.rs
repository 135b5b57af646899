//! JSON documents: parsing with JSON-pointer error locations, and emission.
//!
//! Basis indices in documents are 1-based. Rationals are strings `"p/q"` or
//! `"p"`; JSON integers are accepted on input.

use std::collections::BTreeSet;
use std::fmt;

use nlie_core::ns::NSAlgebra;
use nlie_core::representation::RepresentationTable;
use nlie_core::scalar::{format_rational, parse_rational};
use nlie_core::wedge::WedgeBasis;
use nlie_core::{Counterexample, Dual, Matrix, NAryAlgebra, Rational, Scalar, Symmetry};
use num_traits::Zero;
use serde_json::{json, Map, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DocError {
    /// JSON pointer of the offending value; empty for the document root.
    pub pointer: String,
    pub message: String,
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = if self.pointer.is_empty() { "/" } else { &self.pointer };
        write!(f, "{at}: {}", self.message)
    }
}

impl std::error::Error for DocError {}

pub type DocResult<T> = Result<T, DocError>;

fn err<T>(pointer: &str, message: impl Into<String>) -> DocResult<T> {
    Err(DocError { pointer: pointer.to_string(), message: message.into() })
}

/// An element of `Λ^k V` in increasing-tuple coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct WedgeElement {
    pub dim: usize,
    pub degree: usize,
    pub coeffs: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Algebra(NAryAlgebra),
    Operator(Matrix),
    Functional(Vec<Rational>),
    Representation(RepresentationTable),
    Ns(NSAlgebra),
    Wedge(WedgeElement),
    Report(Value),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Algebra(_) => "n_lie_algebra",
            Document::Operator(_) => "linear_operator",
            Document::Functional(_) => "functional",
            Document::Representation(_) => "representation",
            Document::Ns(_) => "ns_algebra",
            Document::Wedge(_) => "wedge",
            Document::Report(_) => "report",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Document::Algebra(a) => algebra_json(a),
            Document::Operator(m) => operator_json(m),
            Document::Functional(f) => functional_json(f),
            Document::Representation(r) => representation_json(r),
            Document::Ns(s) => ns_json(s),
            Document::Wedge(w) => wedge_json(w),
            Document::Report(v) => v.clone(),
        }
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn parse_document(text: &str) -> DocResult<Document> {
    let v: Value = serde_json::from_str(text).map_err(|e| DocError { pointer: String::new(), message: format!("invalid JSON: {e}") })?;
    document_from_json(&v)
}

pub fn document_from_json(v: &Value) -> DocResult<Document> {
    let obj = object(v, "")?;
    let kind = string(field(obj, "", "kind")?, "/kind")?;
    Ok(match kind {
        "n_lie_algebra" => Document::Algebra(algebra_at(v, "")?),
        "linear_operator" => Document::Operator(operator_at(v, "")?),
        "functional" => Document::Functional(functional_at(v, "")?),
        "representation" => Document::Representation(representation_at(v, "")?),
        "ns_algebra" => Document::Ns(ns_at(v, "")?),
        "wedge" => Document::Wedge(wedge_at(v, "")?),
        "report" => {
            only_fields(obj, "", &["kind", "command", "verdicts", "artifacts", "degrees", "triviality", "timing"])?;
            array(field(obj, "", "verdicts")?, "/verdicts")?;
            Document::Report(v.clone())
        }
        other => return err("/kind", format!("unknown document kind {other:?}")),
    })
}


fn object<'a>(v: &'a Value, ptr: &str) -> DocResult<&'a Map<String, Value>> {
    v.as_object().map_or_else(|| err(ptr, "expected an object"), Ok)
}

fn array<'a>(v: &'a Value, ptr: &str) -> DocResult<&'a Vec<Value>> {
    v.as_array().map_or_else(|| err(ptr, "expected an array"), Ok)
}

fn string<'a>(v: &'a Value, ptr: &str) -> DocResult<&'a str> {
    v.as_str().map_or_else(|| err(ptr, "expected a string"), Ok)
}

fn field<'a>(obj: &'a Map<String, Value>, ptr: &str, key: &str) -> DocResult<&'a Value> {
    obj.get(key).map_or_else(|| err(ptr, format!("missing field {key:?}")), Ok)
}

fn only_fields(obj: &Map<String, Value>, ptr: &str, allowed: &[&str]) -> DocResult<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => err(&format!("{ptr}/{k}"), "unknown field"),
        None => Ok(()),
    }
}

fn expect_kind(obj: &Map<String, Value>, ptr: &str, kind: &str) -> DocResult<()> {
    let p = format!("{ptr}/kind");
    let k = string(field(obj, ptr, "kind")?, &p)?;
    if k != kind {
        return err(&p, format!("expected kind {kind:?}, found {k:?}"));
    }
    Ok(())
}

fn count(v: &Value, ptr: &str, min: usize) -> DocResult<usize> {
    match v.as_u64() {
        Some(n) if n as usize >= min => Ok(n as usize),
        _ => err(ptr, format!("expected an integer of at least {min}")),
    }
}

pub fn rational(v: &Value, ptr: &str) -> DocResult<Rational> {
    match v {
        Value::String(s) => parse_rational(s).or_else(|e| err(ptr, e.to_string())),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_int(n.as_i64().unwrap())),
        _ => err(ptr, "expected a rational string \"p/q\""),
    }
}

/// A 1-based index in `1..=dim`, returned 0-based.
fn index(v: &Value, ptr: &str, dim: usize) -> DocResult<usize> {
    match v.as_u64() {
        Some(i) if i >= 1 && i as usize <= dim => Ok(i as usize - 1),
        _ => err(ptr, format!("index out of range 1..{dim}")),
    }
}

fn tuple(v: &Value, ptr: &str, dim: usize, len: usize, strict: bool) -> DocResult<Vec<usize>> {
    let items = array(v, ptr)?;
    if items.len() != len {
        return err(ptr, format!("expected {len} indices, found {}", items.len()));
    }
    let t: Vec<usize> = items.iter().enumerate().map(|(k, x)| index(x, &format!("{ptr}/{k}"), dim)).collect::<DocResult<_>>()?;
    let ordered = t.windows(2).all(|w| if strict { w[0] < w[1] } else { w[0] <= w[1] });
    if !ordered {
        let what = if strict { "strictly increasing" } else { "non-decreasing" };
        return err(ptr, format!("indices must be {what}"));
    }
    Ok(t)
}

/// `{"j": "p/q", ...}` with 1-based keys.
fn sparse_vector(v: &Value, ptr: &str, dim: usize) -> DocResult<Vec<Rational>> {
    let obj = object(v, ptr)?;
    let mut out = vec![Rational::from_int(0); dim];
    for (k, x) in obj {
        let p = format!("{ptr}/{k}");
        let i = match k.parse::<usize>() {
            Ok(i) if i >= 1 && i <= dim => i - 1,
            _ => return err(&p, format!("key must be a basis index in 1..{dim}")),
        };
        out[i] = rational(x, &p)?;
    }
    Ok(out)
}

fn dense_vector(v: &Value, ptr: &str, dim: usize) -> DocResult<Vec<Rational>> {
    let items = array(v, ptr)?;
    if items.len() != dim {
        return err(ptr, format!("expected {dim} entries, found {}", items.len()));
    }
    items.iter().enumerate().map(|(k, x)| rational(x, &format!("{ptr}/{k}"))).collect()
}

fn matrix(v: &Value, ptr: &str, rows: usize, cols: usize) -> DocResult<Matrix> {
    let items = array(v, ptr)?;
    if items.len() != rows {
        return err(ptr, format!("expected {rows} rows, found {}", items.len()));
    }
    let data: Vec<Vec<Rational>> =
        items.iter().enumerate().map(|(i, row)| dense_vector(row, &format!("{ptr}/{i}"), cols)).collect::<DocResult<_>>()?;
    Matrix::from_rows(data).or_else(|e| err(ptr, e.to_string()))
}


pub fn rational_json(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

/// JSON for a scalar of either ring: dual numbers as `{"a": re, "b": eps}`.
pub trait JsonScalar: Scalar {
    fn to_json(&self) -> Value;
}

impl JsonScalar for Rational {
    fn to_json(&self) -> Value {
        rational_json(self)
    }
}

impl JsonScalar for Dual {
    fn to_json(&self) -> Value {
        json!({ "a": format_rational(&self.re), "b": format_rational(&self.eps) })
    }
}

fn sparse_json(v: &[Rational]) -> Value {
    let mut m = Map::new();
    for (i, x) in v.iter().enumerate() {
        if !x.is_zero() {
            m.insert((i + 1).to_string(), rational_json(x));
        }
    }
    Value::Object(m)
}

fn one_based(t: &[usize]) -> Value {
    Value::from(t.iter().map(|i| i + 1).collect::<Vec<_>>())
}

fn matrix_json(m: &Matrix) -> Value {
    Value::from((0..m.rows()).map(|i| Value::from(m.row(i).iter().map(rational_json).collect::<Vec<_>>())).collect::<Vec<_>>())
}

pub fn counterexample_json<S: JsonScalar>(c: &Counterexample<S>) -> Value {
    let args: Vec<Value> = c.arguments.iter().map(|g| json!({ "name": g.name, "indices": one_based(&g.indices) })).collect();
    let vec = |v: &[S]| Value::from(v.iter().map(JsonScalar::to_json).collect::<Vec<_>>());
    json!({
        "identity": c.identity,
        "arguments": args,
        "lhs": vec(&c.lhs),
        "rhs": vec(&c.rhs),
        "difference": vec(&c.difference()),
    })
}


fn default_names(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}

pub fn algebra_json(a: &NAryAlgebra) -> Value {
    let symmetry = match a.symmetry() {
        Symmetry::Alternating => "alternating",
        Symmetry::Symmetric => "symmetric",
    };
    let brackets: Vec<Value> = a.entries().map(|(t, v)| json!({ "on": one_based(t), "value": sparse_json(v) })).collect();
    json!({
        "kind": "n_lie_algebra",
        "arity": a.arity(),
        "dim": a.dim(),
        "basis": a.basis_names(),
        "symmetry": symmetry,
        "brackets": brackets,
    })
}

pub fn algebra_at(v: &Value, ptr: &str) -> DocResult<NAryAlgebra> {
    let obj = object(v, ptr)?;
    only_fields(obj, ptr, &["kind", "arity", "dim", "basis", "symmetry", "brackets"])?;
    expect_kind(obj, ptr, "n_lie_algebra")?;
    let arity = count(field(obj, ptr, "arity")?, &format!("{ptr}/arity"), 2)?;
    let dim = count(field(obj, ptr, "dim")?, &format!("{ptr}/dim"), 1)?;
    let symmetry = match obj.get("symmetry") {
        None => Symmetry::Alternating,
        Some(s) => match string(s, &format!("{ptr}/symmetry"))? {
            "alternating" => Symmetry::Alternating,
            "symmetric" => Symmetry::Symmetric,
            _ => return err(&format!("{ptr}/symmetry"), "expected \"alternating\" or \"symmetric\""),
        },
    };
    let mut a = NAryAlgebra::new(arity, dim, symmetry).or_else(|e| err(ptr, e.to_string()))?;
    if let Some(b) = obj.get("basis") {
        let p = format!("{ptr}/basis");
        let names: Vec<String> =
            array(b, &p)?.iter().enumerate().map(|(k, x)| string(x, &format!("{p}/{k}")).map(str::to_string)).collect::<DocResult<_>>()?;
        a.set_basis_names(names).or_else(|e| err(&p, e.to_string()))?;
    } else {
        a.set_basis_names(default_names(dim)).expect("right length");
    }
    if let Some(bs) = obj.get("brackets") {
        let p = format!("{ptr}/brackets");
        let mut seen = BTreeSet::new();
        for (k, entry) in array(bs, &p)?.iter().enumerate() {
            let pe = format!("{p}/{k}");
            let eo = object(entry, &pe)?;
            only_fields(eo, &pe, &["on", "value"])?;
            let on_ptr = format!("{pe}/on");
            let t = tuple(field(eo, &pe, "on")?, &on_ptr, dim, arity, symmetry == Symmetry::Alternating)?;
            if !seen.insert(t.clone()) {
                return err(&on_ptr, "tuple listed twice");
            }
            let value = sparse_vector(field(eo, &pe, "value")?, &format!("{pe}/value"), dim)?;
            a.set(&t, value).or_else(|e| err(&pe, e.to_string()))?;
        }
    }
    Ok(a)
}


pub fn operator_json(m: &Matrix) -> Value {
    json!({ "kind": "linear_operator", "dim": m.rows(), "matrix": matrix_json(m) })
}

pub fn operator_at(v: &Value, ptr: &str) -> DocResult<Matrix> {
    let obj = object(v, ptr)?;
    only_fields(obj, ptr, &["kind", "dim", "matrix"])?;
    expect_kind(obj, ptr, "linear_operator")?;
    let dim = count(field(obj, ptr, "dim")?, &format!("{ptr}/dim"), 1)?;
    matrix(field(obj, ptr, "matrix")?, &format!("{ptr}/matrix"), dim, dim)
}

pub fn functional_json(f: &[Rational]) -> Value {
    json!({ "kind": "functional", "dim": f.len(), "coefficients": f.iter().map(rational_json).collect::<Vec<_>>() })
}

pub fn functional_at(v: &Value, ptr: &str) -> DocResult<Vec<Rational>> {
    let obj = object(v, ptr)?;
    only_fields(obj, ptr, &["kind", "dim", "coefficients"])?;
    expect_kind(obj, ptr, "functional")?;
    let dim = count(field(obj, ptr, "dim")?, &format!("{ptr}/dim"), 1)?;
    dense_vector(field(obj, ptr, "coefficients")?, &format!("{ptr}/coefficients"), dim)
}


pub fn representation_json(r: &RepresentationTable) -> Value {
    let actions: Vec<Value> = r
        .wedge_basis()
        .tuples()
        .iter()
        .enumerate()
        .filter(|(p, _)| !r.get(*p).is_zero())
        .map(|(p, t)| json!({ "wedge": one_based(t), "matrix": matrix_json(r.get(p)) }))
        .collect();
    json!({
        "kind": "representation",
        "arity": r.arity(),
        "algebra_dim": r.algebra_dim(),
        "module_dim": r.module_dim(),
        "actions": actions,
    })
}

pub fn representation_at(v: &Value, ptr: &str) -> DocResult<RepresentationTable> {
    let obj = object(v, ptr)?;
    only_fields(obj, ptr, &["kind", "arity", "algebra_dim", "module_dim", "actions"])?;
    expect_kind(obj, ptr, "representation")?;
    let arity = count(field(obj, ptr, "arity")?, &format!("{ptr}/arity"), 2)?;
    let dim = count(field(obj, ptr, "algebra_dim")?, &format!("{ptr}/algebra_dim"), 1)?;
    let module = count(field(obj, ptr, "module_dim")?, &format!("{ptr}/module_dim"), 1)?;
    let mut rho = RepresentationTable::zero(arity, dim, module).or_else(|e| err(ptr, e.to_string()))?;
    if let Some(acts) = obj.get("actions") {
        let p = format!("{ptr}/actions");
        let mut seen = BTreeSet::new();
        for (k, entry) in array(acts, &p)?.iter().enumerate() {
            let pe = format!("{p}/{k}");
            let eo = object(entry, &pe)?;
            only_fields(eo, &pe, &["wedge", "matrix"])?;
            let t = tuple(field(eo, &pe, "wedge")?, &format!("{pe}/wedge"), dim, arity - 1, true)?;
            if !seen.insert(t.clone()) {
                return err(&format!("{pe}/wedge"), "wedge listed twice");
            }
            let m = matrix(field(eo, &pe, "matrix")?, &format!("{pe}/matrix"), module, module)?;
            rho.set(&t, m).or_else(|e| err(&pe, e.to_string()))?;
        }
    }
    Ok(rho)
}


pub fn ns_json(s: &NSAlgebra) -> Value {
    let d = s.dim();
    let mut curly = Vec::new();
    for (p, t) in s.curly().wedge_basis().tuples().iter().enumerate() {
        let m = s.curly().get(p);
        for j in 0..d {
            let col = m.column(j);
            if col.iter().any(|x| !x.is_zero()) {
                curly.push(json!({ "wedge": one_based(t), "last": j + 1, "value": sparse_json(&col) }));
            }
        }
    }
    json!({
        "kind": "ns_algebra",
        "arity": s.arity(),
        "dim": d,
        "curly": curly,
        "square": algebra_json(s.square()),
    })
}

pub fn ns_at(v: &Value, ptr: &str) -> DocResult<NSAlgebra> {
    let obj = object(v, ptr)?;
    only_fields(obj, ptr, &["kind", "arity", "dim", "curly", "square"])?;
    expect_kind(obj, ptr, "ns_algebra")?;
    let arity = count(field(obj, ptr, "arity")?, &format!("{ptr}/arity"), 2)?;
    let dim = count(field(obj, ptr, "dim")?, &format!("{ptr}/dim"), 1)?;
    let sp = format!("{ptr}/square");
    let square = algebra_at(field(obj, ptr, "square")?, &sp)?;
    if square.arity() != arity || square.dim() != dim {
        return err(&sp, "square bracket has a different arity or dimension");
    }
    let basis = WedgeBasis::new(dim, arity - 1);
    let mut cols: Vec<Vec<Vec<Rational>>> = vec![vec![vec![Rational::from_int(0); dim]; dim]; basis.len()];
    if let Some(cs) = obj.get("curly") {
        let p = format!("{ptr}/curly");
        let mut seen = BTreeSet::new();
        for (k, entry) in array(cs, &p)?.iter().enumerate() {
            let pe = format!("{p}/{k}");
            let eo = object(entry, &pe)?;
            only_fields(eo, &pe, &["wedge", "last", "value"])?;
            let t = tuple(field(eo, &pe, "wedge")?, &format!("{pe}/wedge"), dim, arity - 1, true)?;
            let j = index(field(eo, &pe, "last")?, &format!("{pe}/last"), dim)?;
            if !seen.insert((t.clone(), j)) {
                return err(&pe, "entry listed twice");
            }
            let pos = basis.position(&t).expect("validated tuple");
            cols[pos][j] = sparse_vector(field(eo, &pe, "value")?, &format!("{pe}/value"), dim)?;
        }
    }
    let mut curly = RepresentationTable::zero(arity, dim, dim).or_else(|e| err(ptr, e.to_string()))?;
    for (pos, c) in cols.iter().enumerate() {
        let m = Matrix::from_columns(c).expect("square");
        if !m.is_zero() {
            curly.set(basis.tuple(pos), m).or_else(|e| err(ptr, e.to_string()))?;
        }
    }
    NSAlgebra::new(curly, square).or_else(|e| err(ptr, e.to_string()))
}


pub fn wedge_json(w: &WedgeElement) -> Value {
    let basis = WedgeBasis::new(w.dim, w.degree);
    let terms: Vec<Value> = w
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(p, c)| json!({ "on": one_based(basis.tuple(p)), "coeff": rational_json(c) }))
        .collect();
    json!({ "kind": "wedge", "dim": w.dim, "degree": w.degree, "terms": terms })
}

pub fn wedge_at(v: &Value, ptr: &str) -> DocResult<WedgeElement> {
    let obj = object(v, ptr)?;
    only_fields(obj, ptr, &["kind", "dim", "degree", "terms"])?;
    expect_kind(obj, ptr, "wedge")?;
    let dim = count(field(obj, ptr, "dim")?, &format!("{ptr}/dim"), 1)?;
    let degree = count(field(obj, ptr, "degree")?, &format!("{ptr}/degree"), 1)?;
    if degree > dim {
        return err(&format!("{ptr}/degree"), "degree exceeds the dimension");
    }
    let basis = WedgeBasis::new(dim, degree);
    let mut coeffs = vec![Rational::from_int(0); basis.len()];
    if let Some(ts) = obj.get("terms") {
        let p = format!("{ptr}/terms");
        let mut seen = BTreeSet::new();
        for (k, entry) in array(ts, &p)?.iter().enumerate() {
            let pe = format!("{p}/{k}");
            let eo = object(entry, &pe)?;
            only_fields(eo, &pe, &["on", "coeff"])?;
            let t = tuple(field(eo, &pe, "on")?, &format!("{pe}/on"), dim, degree, true)?;
            if !seen.insert(t.clone()) {
                return err(&format!("{pe}/on"), "tuple listed twice");
            }
            coeffs[basis.position(&t).expect("validated tuple")] = rational(field(eo, &pe, "coeff")?, &format!("{pe}/coeff"))?;
        }
    }
    Ok(WedgeElement { dim, degree, coeffs })
}
