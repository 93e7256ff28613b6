//! Parameter vectors, structure tensors and the basic algebra checks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::Scalar;

pub type Vector = Vec<Scalar>;

/// Parameters (α_3, …, α_n, θ) of the first-class algebra of dimension n+1.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct ParamVector {
    n: usize,
    alpha: Vec<Scalar>,
    theta: Scalar,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    n: usize,
    alpha: Vec<Scalar>,
    theta: Scalar,
}

impl TryFrom<RawParams> for ParamVector {
    type Error = Error;
    fn try_from(r: RawParams) -> Result<Self> {
        ParamVector::new(r.n, r.alpha, r.theta)
    }
}

impl From<ParamVector> for RawParams {
    fn from(p: ParamVector) -> Self {
        RawParams { n: p.n, alpha: p.alpha, theta: p.theta }
    }
}

impl ParamVector {
    pub fn new(n: usize, alpha: Vec<Scalar>, theta: Scalar) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidParams(format!("n must be at least 4, got {n}")));
        }
        if alpha.len() != n - 2 {
            return Err(Error::InvalidParams(format!(
                "n = {n} needs {} alpha values, got {}",
                n - 2,
                alpha.len()
            )));
        }
        Ok(ParamVector { n, alpha, theta })
    }

    /// Builds from the slot list (α_3, …, α_n, θ).
    pub fn from_slots(n: usize, mut slots: Vec<Scalar>) -> Result<Self> {
        if slots.len() != n.saturating_sub(1) {
            return Err(Error::InvalidParams(format!(
                "n = {n} needs {} slots, got {}",
                n.saturating_sub(1),
                slots.len()
            )));
        }
        let theta = slots.pop().expect("nonempty");
        ParamVector::new(n, slots, theta)
    }

    pub fn from_dim_slots(dim: usize, slots: Vec<Scalar>) -> Result<Self> {
        ParamVector::from_slots(dim.saturating_sub(1), slots)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n + 1
    }

    /// α_k for 3 ≤ k ≤ n.
    pub fn alpha(&self, k: usize) -> &Scalar {
        assert!((3..=self.n).contains(&k), "alpha index {k} out of range");
        &self.alpha[k - 3]
    }

    pub fn alphas(&self) -> &[Scalar] {
        &self.alpha
    }

    pub fn theta(&self) -> &Scalar {
        &self.theta
    }

    pub fn slots(&self) -> Vec<Scalar> {
        let mut v = self.alpha.clone();
        v.push(self.theta.clone());
        v
    }

    pub fn slot(&self, s: usize) -> &Scalar {
        if s + 3 <= self.n {
            &self.alpha[s]
        } else {
            &self.theta
        }
    }
}

impl fmt::Display for ParamVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("L(")?;
        for (i, s) in self.slots().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for ParamVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Where a structure constant of the first-class table comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coef {
    One,
    /// Parameter slot: α_{s+3} for s < n-2, θ for s = n-2.
    Slot(usize),
}

/// Nonzero products e_i e_j = c e_k of the first-class table, as (i, j, k, c).
pub fn first_class_shape(n: usize) -> Vec<(usize, usize, usize, Coef)> {
    let theta = n - 2;
    let mut out = vec![(0, 0, 2, Coef::One)];
    for i in 1..n {
        out.push((i, 0, i + 1, Coef::One));
    }
    for k in 3..n {
        out.push((0, 1, k, Coef::Slot(k - 3)));
    }
    out.push((0, 1, n, Coef::Slot(theta)));
    for j in 1..=n.saturating_sub(2) {
        for k in 3..=(n + 1 - j) {
            out.push((j, 1, j + k - 1, Coef::Slot(k - 3)));
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq)]
pub struct StructureTensor {
    dim: usize,
    rows: Vec<Vec<(usize, Scalar)>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// e_i (e_j e_k)
    pub lhs: Vector,
    /// (e_i e_j) e_k - (e_i e_k) e_j
    pub rhs: Vector,
}

impl StructureTensor {
    pub fn zero(dim: usize) -> Self {
        StructureTensor { dim, rows: vec![Vec::new(); dim * dim] }
    }

    /// Builds from a dense accessor gamma(i, j, k).
    pub fn from_fn(dim: usize, gamma: impl Fn(usize, usize, usize) -> Scalar) -> Self {
        let mut t = StructureTensor::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let g = gamma(i, j, k);
                    if !g.is_zero() {
                        t.rows[i * dim + j].push((k, g));
                    }
                }
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Adds c to the coefficient of e_k in e_i e_j.
    pub fn add_entry(&mut self, i: usize, j: usize, k: usize, c: Scalar) {
        let row = &mut self.rows[i * self.dim + j];
        match row.iter().position(|(kk, _)| *kk == k) {
            Some(p) => {
                row[p].1 += &c;
                if row[p].1.is_zero() {
                    row.remove(p);
                }
            }
            None if !c.is_zero() => {
                row.push((k, c));
                row.sort_by_key(|(kk, _)| *kk);
            }
            None => {}
        }
    }

    pub fn gamma(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.rows[i * self.dim + j]
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    /// Sparse form of e_i e_j.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.rows[i * self.dim + j]
    }

    pub fn product(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, got: v.len() });
            }
        }
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, g) in &self.rows[i * self.dim + j] {
                    out[*k] += &(&c * g);
                }
            }
        }
        Ok(out)
    }

    fn product_sparse(&self, x: &[(usize, Scalar)], j: usize) -> Vector {
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, c) in x {
            for (k, g) in &self.rows[i * self.dim + j] {
                out[*k] += &(c * g);
            }
        }
        out
    }

    fn left_sparse(&self, i: usize, y: &[(usize, Scalar)]) -> Vector {
        let mut out = vec![Scalar::zero(); self.dim];
        for (j, c) in y {
            for (k, g) in &self.rows[i * self.dim + j] {
                out[*k] += &(c * g);
            }
        }
        out
    }

    /// Every basis triple violating x(yz) = (xy)z - (xz)y.
    pub fn check_leibniz(&self) -> Vec<LeibnizViolation> {
        let d = self.dim;
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let lhs = self.left_sparse(i, self.basis_product(j, k));
                    let a = self.product_sparse(self.basis_product(i, j), k);
                    let b = self.product_sparse(self.basis_product(i, k), j);
                    let rhs: Vector = a.iter().zip(&b).map(|(x, y)| x - y).collect();
                    if lhs != rhs {
                        out.push(LeibnizViolation { i, j, k, lhs, rhs });
                    }
                }
            }
        }
        out
    }

    /// Dimensions of L^1 ⊇ L^2 ⊇ … down to 0, where L^{k+1} = L^k · L.
    pub fn lower_central_series(&self) -> Result<Vec<usize>> {
        let d = self.dim;
        let mut basis: Vec<Vector> = (0..d)
            .map(|i| (0..d).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
            .collect();
        let mut series = vec![d];
        while !basis.is_empty() {
            let mut gens = Vec::new();
            for b in &basis {
                let sparse: Vec<(usize, Scalar)> =
                    b.iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect();
                for j in 0..d {
                    let v = self.product_sparse(&sparse, j);
                    if v.iter().any(|c| !c.is_zero()) {
                        gens.push(v);
                    }
                }
            }
            let next = linalg::span_basis(&gens);
            if next.len() == basis.len() {
                return Err(Error::NotNilpotent { series });
            }
            series.push(next.len());
            basis = next;
        }
        Ok(series)
    }

    pub fn is_filiform(&self) -> bool {
        let d = self.dim;
        let mut expected = vec![d];
        expected.extend((0..=d.saturating_sub(2)).rev());
        matches!(self.lower_central_series(), Ok(s) if s == expected)
    }

    /// Lines "e_i e_j = ..." for every nonzero product.
    pub fn render(&self) -> Vec<String> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let row = self.basis_product(i, j);
                if row.is_empty() {
                    continue;
                }
                let terms: Vec<(String, usize)> = row.iter().map(|(k, c)| (c.to_string(), *k)).collect();
                out.push(format!("e{i}e{j} = {}", join_terms(&terms)));
            }
        }
        out
    }
}

impl fmt::Debug for StructureTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "StructureTensor(dim {})", self.dim)?;
        for line in self.render() {
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

/// Joins (coefficient text, basis index) pairs into "e3 - 2e4 + (λ1)e5" style text.
pub fn join_terms(terms: &[(String, usize)]) -> String {
    let mut s = String::new();
    for (idx, (c, k)) in terms.iter().enumerate() {
        let (neg, body) = match c.strip_prefix('-') {
            Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
            _ => (false, c.clone()),
        };
        if idx == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if body != "1" {
            if body.contains(['+', '-', ' ']) {
                s.push_str(&format!("({body})"));
            } else {
                s.push_str(&body);
            }
        }
        s.push_str(&format!("e{k}"));
    }
    s
}

pub fn build_table_first_class(p: &ParamVector) -> StructureTensor {
    let mut t = StructureTensor::zero(p.dim());
    for (i, j, k, c) in first_class_shape(p.n()) {
        let v = match c {
            Coef::One => Scalar::one(),
            Coef::Slot(s) => p.slot(s).clone(),
        };
        t.add_entry(i, j, k, v);
    }
    t
}

pub fn basis_vector(dim: usize, i: usize) -> Vector {
    (0..dim).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(slots: &[i64]) -> ParamVector {
        ParamVector::from_dim_slots(slots.len() + 2, slots.iter().map(|&x| x.into()).collect()).unwrap()
    }

    fn v(c: &[i64]) -> Vector {
        c.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn dim5_table() {
        let t = build_table_first_class(&p(&[2, 3, 5]));
        assert_eq!(t.basis_product(0, 0), &[(2, 1.into())]);
        assert_eq!(t.basis_product(0, 1), &[(3, 2.into()), (4, 5.into())]);
        assert_eq!(t.basis_product(1, 1), &[(3, 2.into()), (4, 3.into())]);
        assert_eq!(t.basis_product(2, 1), &[(4, 2.into())]);
        assert!(t.basis_product(3, 1).is_empty());
        assert_eq!(t.basis_product(3, 0), &[(4, 1.into())]);
        assert!(t.basis_product(4, 0).is_empty());
        assert!(t.basis_product(0, 2).is_empty());
    }

    #[test]
    fn product_example() {
        let t = build_table_first_class(&p(&[1, 0, 0]));
        let x = v(&[1, 1, 0, 0, 0]);
        assert_eq!(t.product(&x, &x).unwrap(), v(&[0, 0, 2, 2, 0]));
        assert!(t.product(&x, &v(&[1])).is_err());
    }

    #[test]
    fn series_and_filiform() {
        let t = build_table_first_class(&p(&[1, 0, 0]));
        assert_eq!(t.lower_central_series().unwrap(), vec![5, 3, 2, 1, 0]);
        assert!(t.is_filiform());
        assert!(t.check_leibniz().is_empty());
        let z = build_table_first_class(&p(&[0, 0, 0]));
        assert!(z.is_filiform());
    }

    #[test]
    fn non_nilpotent_detected() {
        let mut t = StructureTensor::zero(2);
        t.add_entry(0, 0, 0, Scalar::one());
        assert!(matches!(t.lower_central_series(), Err(Error::NotNilpotent { .. })));
        assert!(!t.is_filiform());
    }

    #[test]
    fn violation_reported() {
        let mut t = build_table_first_class(&p(&[1, 0, 0]));
        t.add_entry(0, 2, 3, Scalar::one());
        assert!(!t.check_leibniz().is_empty());
    }

    #[test]
    fn json_shape() {
        let q: ParamVector = serde_json::from_str(r#"{"n":4,"alpha":["1","-2"],"theta":"0"}"#).unwrap();
        assert_eq!(q, p(&[1, -2, 0]));
        assert!(serde_json::from_str::<ParamVector>(r#"{"n":4,"alpha":["1"],"theta":"0"}"#).is_err());
    }

    #[test]
    fn render_terms() {
        let t = build_table_first_class(&p(&[1, -2, 0]));
        let lines = t.render();
        assert!(lines.contains(&"e1e1 = e3 - 2e4".to_string()));
    }
}
