//! Classification lists generated from the registry, their text/JSON/CSV
//! renderings and a comparison with the transcribed printed lists.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{build_table_first_class, first_class_shape, join_terms, Coef, ParamVector};
use crate::error::{Error, Result};
use crate::expr::{Expr, Sym};
use crate::registry::{Registry, StratumDef};
use crate::scalar::Scalar;
use crate::strata::{family_avoided, instantiate_family};

const PRINTED: &str = include_str!("../data/printed_tables.txt");

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationEntry {
    pub dim: usize,
    pub index: usize,
    pub stratum: String,
    /// Family slots (α_3, …, α_n, θ) in prefix notation.
    pub family: Vec<String>,
    /// The same slots rendered for reading.
    pub label: String,
    /// Set when every λ slot of the family was given a value.
    pub params: Option<ParamVector>,
    pub products: Vec<String>,
}

fn lambda_value(lambdas: &BTreeMap<usize, Scalar>, k: usize) -> Result<Scalar> {
    lambdas.get(&k).cloned().ok_or_else(|| Error::InvalidParams(format!("no value for l{k}")))
}

pub fn eval_in_lambdas(e: &Expr, lambdas: &BTreeMap<usize, Scalar>) -> Result<Scalar> {
    e.eval(&mut |s| match s {
        Sym::Lambda(k) => lambda_value(lambdas, k),
        other => Err(Error::Registry(format!("unexpected symbol {other}"))),
    })
}

fn coef_text(e: &Expr) -> Option<String> {
    match e {
        Expr::Num(s) if s.is_zero() => None,
        Expr::Num(s) => Some(s.to_string()),
        other => Some(other.infix()),
    }
}

/// Products of the first-class table with coefficients taken from `slots`.
pub fn render_symbolic(n: usize, slots: &[Expr]) -> Vec<String> {
    let mut rows: BTreeMap<(usize, usize), Vec<(String, usize)>> = BTreeMap::new();
    for (i, j, k, c) in first_class_shape(n) {
        let text = match c {
            Coef::One => Some("1".to_string()),
            Coef::Slot(s) => coef_text(&slots[s]),
        };
        if let Some(t) = text {
            rows.entry((i, j)).or_default().push((t, k));
        }
    }
    rows.into_iter()
        .map(|((i, j), mut terms)| {
            terms.sort_by_key(|t| t.1);
            format!("e{i}e{j} = {}", join_terms(&terms))
        })
        .collect()
}

fn label(slots: &[Expr]) -> String {
    let parts: Vec<String> = slots.iter().map(|e| e.infix()).collect();
    format!("L({})", parts.join(", "))
}

pub fn classification_entry(s: &StratumDef, index: usize, lambdas: &BTreeMap<usize, Scalar>) -> Result<ClassificationEntry> {
    let n = s.dim - 1;
    let arity = s.family.arity();
    let complete = (1..=arity).all(|k| lambdas.contains_key(&k));
    let (params, products) = if complete {
        let vals: Vec<Scalar> = (1..=arity).map(|k| lambdas[&k].clone()).collect();
        if family_avoided(&s.family, &vals)? {
            return Err(Error::InvalidParams(format!("{} excludes these parameter values", s.id)));
        }
        let p = instantiate_family(&s.family, s.dim, &vals)?;
        let products = build_table_first_class(&p).render();
        (Some(p), products)
    } else {
        (None, render_symbolic(n, &s.family.params))
    };
    Ok(ClassificationEntry {
        dim: s.dim,
        index,
        stratum: s.id.clone(),
        family: s.family.params.iter().map(|e| e.to_string()).collect(),
        label: label(&s.family.params),
        params,
        products,
    })
}

/// Every stratum's listed family; λ slots with a value are instantiated,
/// families with missing slots are rendered symbolically.
pub fn classification_list(reg: &Registry, dim: usize, lambdas: &BTreeMap<usize, Scalar>) -> Result<Vec<ClassificationEntry>> {
    reg.strata(dim)?
        .iter()
        .enumerate()
        .map(|(i, s)| classification_entry(s, i + 1, lambdas))
        .collect()
}

pub fn render_text(entries: &[ClassificationEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        let head = match &e.params {
            Some(p) => p.to_string(),
            None => e.label.clone(),
        };
        out.push_str(&format!("{}) {}  [{}]\n", e.index, head, e.stratum));
        for line in &e.products {
            out.push_str(&format!("    {line}\n"));
        }
    }
    if let Some(e) = entries.first() {
        out.push_str(&format!("dimension {}: {} classes\n", e.dim, entries.len()));
    }
    out
}

pub fn render_json(entries: &[ClassificationEntry]) -> String {
    serde_json::to_string_pretty(entries).expect("entries serialise")
}

pub fn render_csv(entries: &[ClassificationEntry]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["dim", "index", "stratum", "params", "products"]).expect("in-memory write");
    for e in entries {
        let params = match &e.params {
            Some(p) => p.to_string(),
            None => e.label.clone(),
        };
        w.write_record([
            e.dim.to_string(),
            e.index.to_string(),
            e.stratum.clone(),
            params,
            e.products.join("; "),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

pub fn count_classes(reg: &Registry, dim: usize) -> Result<usize> {
    Ok(reg.strata(dim)?.len())
}

/// n² - 7n + 17.
pub fn class_count_formula(n: i64) -> i64 {
    n * n - 7 * n + 17
}

#[derive(Clone, Debug)]
pub struct PrintedEntry {
    pub dim: usize,
    pub item: usize,
    pub tuple: Vec<Expr>,
    /// (i, j) → coefficient of e_k
    pub products: BTreeMap<(usize, usize), BTreeMap<usize, Expr>>,
}

fn split_forms(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => {
                depth += 1;
                cur.push(c);
            }
            ')' => {
                depth -= 1;
                cur.push(c);
            }
            c if c.is_whitespace() && depth == 0 => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn parse_basis(tok: &str, line: usize) -> Result<usize> {
    tok.strip_prefix('e')
        .and_then(|k| k.parse().ok())
        .ok_or_else(|| Error::Parse { pos: line, msg: format!("bad basis element {tok:?}") })
}

/// Parses the bundled transcription of the printed lists.
pub fn printed_tables() -> Result<Vec<PrintedEntry>> {
    parse_printed(PRINTED)
}

pub fn parse_printed(text: &str) -> Result<Vec<PrintedEntry>> {
    let mut out: Vec<PrintedEntry> = Vec::new();
    let mut dim = 0;
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let err = |msg: &str| Error::Parse { pos: ln + 1, msg: msg.to_string() };
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(d) = line.strip_prefix("dim ") {
            dim = d.trim().parse().map_err(|_| err("bad dimension"))?;
        } else if let Some(rest) = line.strip_prefix("item ") {
            let (num, tuple) = rest.split_once(' ').ok_or_else(|| err("bad item header"))?;
            let tuple = tuple.trim().strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(|| err("bad tuple"))?;
            let tuple = split_forms(tuple).iter().map(|f| Expr::parse(f)).collect::<Result<Vec<_>>>()?;
            out.push(PrintedEntry {
                dim,
                item: num.parse().map_err(|_| err("bad item number"))?,
                tuple,
                products: BTreeMap::new(),
            });
        } else {
            let entry = out.last_mut().ok_or_else(|| err("product before item"))?;
            let (lhs, rhs) = line.split_once('=').ok_or_else(|| err("missing '='"))?;
            let lhs = lhs.trim();
            if lhs == "eie0" {
                let bound = rhs.split("1..").nth(1).ok_or_else(|| err("bad range"))?;
                let hi: usize = bound.trim().parse().map_err(|_| err("bad range"))?;
                for i in 1..=hi {
                    entry.products.entry((i, 0)).or_default().insert(i + 1, Expr::Num(Scalar::one()));
                }
                continue;
            }
            let idx: Vec<&str> = lhs.split('e').filter(|s| !s.is_empty()).collect();
            if idx.len() != 2 {
                return Err(err("bad product"));
            }
            let i: usize = idx[0].parse().map_err(|_| err("bad index"))?;
            let j: usize = idx[1].parse().map_err(|_| err("bad index"))?;
            let row = entry.products.entry((i, j)).or_default();
            for term in rhs.split(';') {
                let forms = split_forms(term.trim());
                let (basis, coef) = forms.split_last().ok_or_else(|| err("empty term"))?;
                let k = parse_basis(basis, ln + 1)?;
                let c = match coef {
                    [] => Expr::Num(Scalar::one()),
                    [one] => Expr::parse(one)?,
                    _ => return Err(err("coefficient must be one expression")),
                };
                row.insert(k, c);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub dim: usize,
    pub item: usize,
    pub stratum: String,
    /// "e2e1" for a product, "parameters" for the header tuple.
    pub location: String,
    pub printed: String,
    pub generated: String,
    /// Whether the printed text agrees with the originally listed tuple.
    pub consistent_with_listed_tuple: bool,
}

/// Symbolic first-class table: (i, j) → (k → coefficient expression).
fn symbolic_table(n: usize, slots: &[Expr]) -> BTreeMap<(usize, usize), BTreeMap<usize, Expr>> {
    let mut t: BTreeMap<(usize, usize), BTreeMap<usize, Expr>> = BTreeMap::new();
    for (i, j, k, c) in first_class_shape(n) {
        let e = match c {
            Coef::One => Expr::Num(Scalar::one()),
            Coef::Slot(s) => slots[s].clone(),
        };
        if matches!(&e, Expr::Num(z) if z.is_zero()) {
            continue;
        }
        t.entry((i, j)).or_default().insert(k, e);
    }
    t
}

fn same_expr(a: &Expr, b: &Expr, points: &[BTreeMap<usize, Scalar>]) -> bool {
    points.iter().all(|pt| match (eval_in_lambdas(a, pt), eval_in_lambdas(b, pt)) {
        (Ok(x), Ok(y)) => x == y,
        _ => false,
    })
}

fn same_row(a: Option<&BTreeMap<usize, Expr>>, b: Option<&BTreeMap<usize, Expr>>, points: &[BTreeMap<usize, Scalar>]) -> bool {
    let zero = Expr::Num(Scalar::zero());
    let empty = BTreeMap::new();
    let (a, b) = (a.unwrap_or(&empty), b.unwrap_or(&empty));
    a.keys().chain(b.keys()).all(|k| same_expr(a.get(k).unwrap_or(&zero), b.get(k).unwrap_or(&zero), points))
}

fn row_text(row: Option<&BTreeMap<usize, Expr>>) -> String {
    match row {
        None => "0".into(),
        Some(r) => {
            let terms: Vec<(String, usize)> = r.iter().map(|(k, e)| (e.infix(), *k)).collect();
            join_terms(&terms)
        }
    }
}

/// Compares the transcribed printed lists of one dimension with the tables
/// generated from the registry's listed families.
pub fn cross_check_printed_tables(reg: &Registry, dim: usize) -> Result<Vec<Discrepancy>> {
    let strata = reg.strata(dim)?;
    let printed: Vec<PrintedEntry> = printed_tables()?.into_iter().filter(|e| e.dim == dim).collect();
    if printed.is_empty() {
        return Err(Error::UnsupportedDimension(dim));
    }
    let n = dim - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(0x7ab1e5);
    let points: Vec<BTreeMap<usize, Scalar>> = (0..4)
        .map(|_| {
            (1..=4)
                .map(|k| (k, Scalar::from_ratio(rng.gen_range(-997..997), rng.gen_range(1..97)).expect("nonzero")))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for entry in &printed {
        let s = strata.get(entry.item - 1).ok_or(Error::UnknownStratum { dim, id: format!("item {}", entry.item) })?;
        let listed = s.printed.clone().unwrap_or_else(|| s.family.params.clone());
        let listed_ok = entry.tuple.len() == listed.len()
            && entry.tuple.iter().zip(&listed).all(|(a, b)| same_expr(a, b, &points));
        if !listed_ok {
            out.push(Discrepancy {
                dim,
                item: entry.item,
                stratum: s.id.clone(),
                location: "parameters".into(),
                printed: label(&entry.tuple),
                generated: label(&listed),
                consistent_with_listed_tuple: false,
            });
        }
        let generated = symbolic_table(n, &s.family.params);
        let from_listed = symbolic_table(n, &listed);
        let keys: std::collections::BTreeSet<(usize, usize)> =
            generated.keys().chain(entry.products.keys()).copied().collect();
        for key in keys {
            let pr = entry.products.get(&key);
            if !same_row(pr, generated.get(&key), &points) {
                out.push(Discrepancy {
                    dim,
                    item: entry.item,
                    stratum: s.id.clone(),
                    location: format!("e{}e{}", key.0, key.1),
                    printed: row_text(pr),
                    generated: row_text(generated.get(&key)),
                    consistent_with_listed_tuple: same_row(pr, from_listed.get(&key), &points),
                });
            }
        }
    }
    Ok(out)
}
