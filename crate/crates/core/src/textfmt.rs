//! Text formats for algebras and crossed modules.
//!
//! ```text
//! # comment
//! field Q            # or: field GF 5
//! arity 3
//! dim 2
//! basis e1 e2        # optional, default e1..ed
//! [e1,e2,e2] = e1 - 1/2*e2
//! ```
//!
//! Unlisted brackets are zero. A crossed-module file is an ambient algebra
//! with a `split <dL>` directive and `mu <name> = <vector>` rows whose
//! right-hand sides use names from the second block.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exactla::multiindex::{lin, tuples};
use crate::exactla::sparse::SparseVec;
use crate::exactla::{Field, Matrix, Scalar};
use crate::nalg::NAlgebra;
use crate::xmod::{ActionStructure, CrossedModule};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

struct Header {
    field: Option<Field>,
    arity: Option<usize>,
    dim: Option<usize>,
    names: Option<Vec<String>>,
    split: Option<usize>,
}

struct Document {
    field: Field,
    arity: usize,
    dim: usize,
    split: Option<usize>,
    brackets: BTreeMap<usize, SparseVec>,
    mu: BTreeMap<usize, SparseVec>,
}

fn parse_usize(s: &str, line: usize, what: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| parse_err(line, format!("bad {what} `{}`", s.trim())))
}

struct Names {
    index: HashMap<String, usize>,
}

impl Names {
    fn new(names: &[String]) -> Self {
        Names { index: names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect() }
    }

    fn get(&self, name: &str, line: usize) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| parse_err(line, format!("index out of range or unknown basis name `{name}`")))
    }
}

/// `c1*n1 - c2*n2 + n3 ...`; `0` is the zero vector.
fn parse_vector(text: &str, field: Field, names: &Names, line: usize) -> Result<SparseVec> {
    let text = text.trim();
    if text == "0" {
        return Ok(Vec::new());
    }
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    let mut signed = false;
    for ch in text.chars() {
        match ch {
            '+' | '-' => {
                if !current.trim().is_empty() {
                    terms.push((negative, std::mem::take(&mut current)));
                } else if signed {
                    return Err(parse_err(line, format!("misplaced sign in `{text}`")));
                }
                negative = ch == '-';
                signed = true;
            }
            c => current.push(c),
        }
    }
    if current.trim().is_empty() {
        return Err(parse_err(line, format!("dangling sign in `{text}`")));
    }
    terms.push((negative, current));
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (neg, term) in terms {
        let term = term.trim();
        let (coef, name) = match term.split_once('*') {
            Some((c, n)) => (field.parse(c.trim()).map_err(|e| parse_err(line, e.to_string()))?, n.trim()),
            None => (field.one(), term),
        };
        let coef = if neg { -coef } else { coef };
        let k = names.get(name, line)?;
        let slot = acc.entry(k).or_insert_with(|| field.zero());
        *slot += &coef;
    }
    Ok(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}

fn parse_document(text: &str) -> Result<Document> {
    let mut h = Header { field: None, arity: None, dim: None, names: None, split: None };
    let mut names: Option<Names> = None;
    let mut brackets = BTreeMap::new();
    let mut mu = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (word, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        let rest = rest.trim();
        match word {
            "field" => {
                let f = match rest.split_whitespace().collect::<Vec<_>>().as_slice() {
                    ["Q"] => Field::Rational,
                    ["GF", p] => {
                        let p: u64 = p.parse().map_err(|_| parse_err(line, format!("bad modulus `{p}`")))?;
                        Field::prime(p).map_err(|e| parse_err(line, e.to_string()))?
                    }
                    _ => return Err(parse_err(line, format!("bad field `{rest}`"))),
                };
                h.field = Some(f);
            }
            "arity" => {
                let n = parse_usize(rest, line, "arity")?;
                if n < 2 {
                    return Err(parse_err(line, "arity must be at least 2"));
                }
                h.arity = Some(n);
            }
            "dim" => h.dim = Some(parse_usize(rest, line, "dim")?),
            "basis" => {
                let list: Vec<String> = rest.split_whitespace().map(String::from).collect();
                if Some(list.len()) != h.dim {
                    return Err(parse_err(line, "basis must follow dim and name every basis vector"));
                }
                h.names = Some(list);
                names = None;
            }
            "split" => h.split = Some(parse_usize(rest, line, "split")?),
            _ => {
                let (Some(field), Some(arity), Some(dim)) = (h.field, h.arity, h.dim) else {
                    return Err(parse_err(line, "field, arity and dim must come first"));
                };
                let names = names.get_or_insert_with(|| {
                    let list = h.names.clone().unwrap_or_else(|| (1..=dim).map(|k| format!("e{k}")).collect());
                    Names::new(&list)
                });
                if word == "mu" {
                    let split = h.split.ok_or_else(|| parse_err(line, "mu rows need a split directive"))?;
                    let (lhs, rhs) = rest.split_once('=').ok_or_else(|| parse_err(line, "expected `mu name = vector`"))?;
                    let k = names.get(lhs.trim(), line)?;
                    if k >= split {
                        return Err(parse_err(line, format!("`{}` is not in the first block", lhs.trim())));
                    }
                    let v = parse_vector(rhs, field, names, line)?;
                    if v.iter().any(|(j, _)| *j < split) {
                        return Err(parse_err(line, "mu values must lie in the second block"));
                    }
                    let v = v.into_iter().map(|(j, c)| (j - split, c)).collect();
                    if mu.insert(k, v).is_some() {
                        return Err(parse_err(line, format!("duplicate mu row `{}`", lhs.trim())));
                    }
                    continue;
                }
                let (lhs, rhs) = body.split_once('=').ok_or_else(|| parse_err(line, format!("unknown directive `{word}`")))?;
                let lhs = lhs.trim();
                let inner = lhs
                    .strip_prefix('[')
                    .and_then(|s| s.strip_suffix(']'))
                    .ok_or_else(|| parse_err(line, format!("expected `[..]`, found `{lhs}`")))?;
                let slots: Vec<usize> = inner.split(',').map(|s| names.get(s.trim(), line)).collect::<Result<_>>()?;
                if slots.len() != arity {
                    return Err(parse_err(line, format!("bracket has {} arguments, arity is {arity}", slots.len())));
                }
                let v = parse_vector(rhs, field, names, line)?;
                if brackets.insert(lin(&slots, dim), v).is_some() {
                    return Err(parse_err(line, format!("duplicate bracket `{lhs}`")));
                }
            }
        }
    }
    let last = text.lines().count().max(1);
    let field = h.field.ok_or_else(|| parse_err(last, "missing field"))?;
    let arity = h.arity.ok_or_else(|| parse_err(last, "missing arity"))?;
    let dim = h.dim.ok_or_else(|| parse_err(last, "missing dim"))?;
    if let Some(s) = h.split {
        if s > dim {
            return Err(parse_err(last, "split exceeds dim"));
        }
    }
    Ok(Document { field, arity, dim, split: h.split, brackets, mu })
}

fn build_algebra(doc: &Document) -> Result<NAlgebra> {
    let rows = crate::exactla::multiindex::pow(doc.dim, doc.arity)?;
    let mut data: Vec<SparseVec> = vec![Vec::new(); rows];
    for (r, v) in &doc.brackets {
        data[*r] = v.clone();
    }
    NAlgebra::new(doc.field, doc.arity, doc.dim, Matrix::from_rows(doc.field, doc.dim, data)?)
}

pub fn parse_algebra(text: &str) -> Result<NAlgebra> {
    let doc = parse_document(text)?;
    if doc.split.is_some() || !doc.mu.is_empty() {
        return Err(parse_err(1, "crossed-module directives in an algebra file"));
    }
    build_algebra(&doc)
}

pub fn parse_crossed_module(text: &str) -> Result<CrossedModule> {
    let doc = parse_document(text)?;
    let split = doc.split.ok_or_else(|| parse_err(1, "missing split directive"))?;
    let ambient = build_algebra(&doc)?;
    let mut rows: Vec<SparseVec> = vec![Vec::new(); split];
    for (k, v) in doc.mu {
        rows[k] = v;
    }
    let mu = Matrix::from_rows(doc.field, doc.dim - split, rows)?;
    CrossedModule::new(ActionStructure::new(ambient, split)?, mu)
}

fn write_vector(out: &mut String, v: &SparseVec, offset: usize) {
    if v.is_empty() {
        out.push('0');
        return;
    }
    for (t, (k, c)) in v.iter().enumerate() {
        let neg = c.is_negative();
        match (t, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let lit = c.abs_literal();
        if lit != "1" {
            let _ = write!(out, "{lit}*");
        }
        let _ = write!(out, "e{}", k + offset + 1);
    }
}

/// A coordinate vector in bracket-line syntax, e.g. `2*e1 - e3`.
pub fn format_vector(v: &SparseVec) -> String {
    let mut out = String::new();
    write_vector(&mut out, v, 0);
    out
}

fn write_header(out: &mut String, a: &NAlgebra) {
    let _ = writeln!(out, "field {}", a.field());
    let _ = writeln!(out, "arity {}", a.arity());
    let _ = writeln!(out, "dim {}", a.dim());
}

fn write_brackets(out: &mut String, a: &NAlgebra) {
    for x in tuples(a.dim(), a.arity()) {
        let v = a.basis_bracket(&x);
        if v.is_empty() {
            continue;
        }
        let names: Vec<String> = x.iter().map(|i| format!("e{}", i + 1)).collect();
        let _ = write!(out, "[{}] = ", names.join(","));
        write_vector(out, v, 0);
        out.push('\n');
    }
}

/// Canonical text: default names, brackets in lexicographic order, terms in
/// index order, unit coefficients omitted.
pub fn emit_algebra(a: &NAlgebra) -> String {
    let mut out = String::new();
    write_header(&mut out, a);
    write_brackets(&mut out, a);
    out
}

pub fn emit_crossed_module(cm: &CrossedModule) -> String {
    let a = &cm.action.ambient;
    let split = cm.action.split;
    let mut out = String::new();
    write_header(&mut out, a);
    let _ = writeln!(out, "split {split}");
    write_brackets(&mut out, a);
    for k in 0..split {
        let v = cm.mu.row(k);
        if v.is_empty() {
            continue;
        }
        let _ = write!(out, "mu e{} = ", k + 1);
        write_vector(&mut out, v, split);
        out.push('\n');
    }
    out
}
