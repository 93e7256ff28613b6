//! Versioned stratum registry: predicates, invariants and representative
//! families stored as prefix expressions.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{Expr, Sym};

const BUNDLED: &str = include_str!("../data/registry.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegistryFile {
    pub version: u32,
    #[serde(default)]
    pub description: String,
    pub dimensions: Vec<DimensionFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DimensionFile {
    pub dim: usize,
    pub strata: Vec<StratumFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StratumFile {
    pub id: String,
    pub conditions: Vec<ConditionFile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub invariants: Vec<String>,
    pub family: FamilyFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal_form: Option<FamilyFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub printed: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum ConditionFile {
    #[serde(rename = "zero")]
    Zero(String),
    #[serde(rename = "nonzero")]
    Nonzero(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyFile {
    pub params: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub avoid: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Condition {
    pub expr: Expr,
    pub nonzero: bool,
}

/// Parameter slots (α_3, …, α_n, θ) as expressions in λ1, λ2, …; the
/// family is valid wherever none of the `avoid` expressions vanishes.
#[derive(Clone, Debug, PartialEq)]
pub struct Family {
    pub params: Vec<Expr>,
    pub avoid: Vec<Expr>,
}

impl Family {
    /// Number of λ slots used.
    pub fn arity(&self) -> usize {
        self.params
            .iter()
            .flat_map(|e| e.symbols())
            .filter_map(|s| if let Sym::Lambda(k) = s { Some(k) } else { None })
            .max()
            .unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StratumDef {
    pub dim: usize,
    pub id: String,
    pub conditions: Vec<Condition>,
    pub invariants: Vec<Expr>,
    /// Family listed in the classification tables.
    pub family: Family,
    /// Family used to rebuild canonical representatives from invariants.
    pub normal_form: Option<Family>,
    /// Tuple as originally listed, when the shipped family differs from it.
    pub printed: Option<Vec<Expr>>,
    pub notes: Option<String>,
}

impl StratumDef {
    pub fn canonical_family(&self) -> &Family {
        self.normal_form.as_ref().unwrap_or(&self.family)
    }

    pub fn is_parametric(&self) -> bool {
        !self.invariants.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct Registry {
    pub version: u32,
    pub description: String,
    dims: BTreeMap<usize, Vec<StratumDef>>,
}

fn parse_family(f: &FamilyFile, ctx: &str) -> Result<Family> {
    Ok(Family {
        params: f.params.iter().map(|s| parse_in(s, ctx)).collect::<Result<_>>()?,
        avoid: f.avoid.iter().map(|s| parse_in(s, ctx)).collect::<Result<_>>()?,
    })
}

fn parse_in(s: &str, ctx: &str) -> Result<Expr> {
    Expr::parse(s).map_err(|e| Error::Registry(format!("{ctx}: {s:?}: {e}")))
}

fn check_param_symbols(e: &Expr, n: usize, ctx: &str) -> Result<()> {
    for s in e.symbols() {
        let ok = match s {
            Sym::Alpha(k) => (3..=n).contains(&k),
            Sym::Theta => true,
            Sym::Delta(k) => k <= n,
            Sym::ThetaDiff(k) => (4..=n).contains(&k),
            Sym::Lambda(_) => false,
        };
        if !ok {
            return Err(Error::Registry(format!("{ctx}: symbol {s} not available for n = {n}")));
        }
    }
    Ok(())
}

fn check_family(f: &Family, n: usize, arity: usize, ctx: &str) -> Result<()> {
    if f.params.len() != n - 1 {
        return Err(Error::Registry(format!("{ctx}: family needs {} slots, has {}", n - 1, f.params.len())));
    }
    for e in f.params.iter().chain(&f.avoid) {
        for s in e.symbols() {
            match s {
                Sym::Lambda(k) if k <= arity => {}
                _ => return Err(Error::Registry(format!("{ctx}: family symbol {s} not allowed"))),
            }
        }
    }
    if f.arity() != arity {
        return Err(Error::Registry(format!(
            "{ctx}: family uses {} parameters but there are {arity} invariants",
            f.arity()
        )));
    }
    Ok(())
}

impl Registry {
    pub fn bundled() -> &'static Registry {
        static REG: OnceLock<Registry> = OnceLock::new();
        REG.get_or_init(|| Registry::from_json(BUNDLED).expect("bundled registry is valid"))
    }

    pub fn bundled_json() -> &'static str {
        BUNDLED
    }

    pub fn load(path: &Path) -> Result<Registry> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Registry(format!("{}: {e}", path.display())))?;
        Registry::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Registry> {
        let file: RegistryFile = serde_json::from_str(text).map_err(|e| Error::Registry(e.to_string()))?;
        Registry::from_file(&file)
    }

    pub fn from_file(file: &RegistryFile) -> Result<Registry> {
        let mut dims = BTreeMap::new();
        for d in &file.dimensions {
            if d.dim < 5 {
                return Err(Error::Registry(format!("dimension {} too small", d.dim)));
            }
            let n = d.dim - 1;
            let mut strata = Vec::new();
            for s in &d.strata {
                let ctx = format!("dim {} {}", d.dim, s.id);
                let conditions = s
                    .conditions
                    .iter()
                    .map(|c| {
                        let (text, nonzero) = match c {
                            ConditionFile::Zero(t) => (t, false),
                            ConditionFile::Nonzero(t) => (t, true),
                        };
                        let expr = parse_in(text, &ctx)?;
                        check_param_symbols(&expr, n, &ctx)?;
                        Ok(Condition { expr, nonzero })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let invariants =
                    s.invariants.iter().map(|t| parse_in(t, &ctx)).collect::<Result<Vec<_>>>()?;
                for e in &invariants {
                    check_param_symbols(e, n, &ctx)?;
                }
                let family = parse_family(&s.family, &ctx)?;
                check_family(&family, n, invariants.len(), &ctx)?;
                let normal_form = match &s.normal_form {
                    Some(f) => {
                        let f = parse_family(f, &ctx)?;
                        check_family(&f, n, invariants.len(), &ctx)?;
                        Some(f)
                    }
                    None => None,
                };
                let printed = match &s.printed {
                    Some(v) => Some(v.iter().map(|t| parse_in(t, &ctx)).collect::<Result<Vec<_>>>()?),
                    None => None,
                };
                strata.push(StratumDef {
                    dim: d.dim,
                    id: s.id.clone(),
                    conditions,
                    invariants,
                    family,
                    normal_form,
                    printed,
                    notes: s.notes.clone(),
                });
            }
            if dims.insert(d.dim, strata).is_some() {
                return Err(Error::Registry(format!("dimension {} listed twice", d.dim)));
            }
        }
        Ok(Registry { version: file.version, description: file.description.clone(), dims })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.dims.keys().copied().collect()
    }

    pub fn strata(&self, dim: usize) -> Result<&[StratumDef]> {
        self.dims.get(&dim).map(|v| v.as_slice()).ok_or(Error::UnsupportedDimension(dim))
    }

    pub fn stratum(&self, dim: usize, id: &str) -> Result<&StratumDef> {
        self.strata(dim)?
            .iter()
            .find(|s| s.id == id)
            .ok_or_else(|| Error::UnknownStratum { dim, id: id.to_string() })
    }
}
