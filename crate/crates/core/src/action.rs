//! The action of adapted basis changes on parameter vectors, linear maps
//! between first-class algebras and the isomorphism search.

use serde::{Deserialize, Serialize};

use crate::algebra::{basis_vector, build_table_first_class, ParamVector, StructureTensor, Vector};
use crate::error::{Error, Result};
use crate::linalg;
use crate::polynomial::MPoly;
use crate::scalar::Scalar;

/// Adapted basis change e'_0 = A e_0 + B e_1 + …, e'_1 = (A+B) e_1 + ….
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPair", into = "RawPair")]
pub struct AdaptedPair {
    a: Scalar,
    b: Scalar,
}

#[derive(Serialize, Deserialize)]
struct RawPair {
    #[serde(rename = "A")]
    a: Scalar,
    #[serde(rename = "B")]
    b: Scalar,
}

impl TryFrom<RawPair> for AdaptedPair {
    type Error = Error;
    fn try_from(r: RawPair) -> Result<Self> {
        AdaptedPair::new(r.a, r.b)
    }
}

impl From<AdaptedPair> for RawPair {
    fn from(p: AdaptedPair) -> Self {
        RawPair { a: p.a, b: p.b }
    }
}

impl AdaptedPair {
    pub fn new(a: Scalar, b: Scalar) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::InvalidPair("A must be nonzero".into()));
        }
        if (&a + &b).is_zero() {
            return Err(Error::InvalidPair("A + B must be nonzero".into()));
        }
        Ok(AdaptedPair { a, b })
    }

    pub fn identity() -> Self {
        AdaptedPair { a: Scalar::one(), b: Scalar::zero() }
    }

    /// Pair with x = 1/A and y = B/A.
    pub fn from_xy(x: &Scalar, y: &Scalar) -> Result<Self> {
        let a = x.inv().map_err(|_| Error::InvalidPair("x must be nonzero".into()))?;
        let b = y * &a;
        AdaptedPair::new(a, b)
    }

    pub fn a(&self) -> &Scalar {
        &self.a
    }

    pub fn b(&self) -> &Scalar {
        &self.b
    }

    pub fn x(&self) -> Scalar {
        self.a.inv().expect("A nonzero")
    }

    pub fn y(&self) -> Scalar {
        self.b.checked_div(&self.a).expect("A nonzero")
    }

    pub fn inverse(&self) -> AdaptedPair {
        let s = &self.a + &self.b;
        let a = self.a.inv().expect("A nonzero");
        let b = -(self.b.checked_div(&(&self.a * &s)).expect("A(A+B) nonzero"));
        AdaptedPair { a, b }
    }
}

/// Pair for applying `first` and then `second`.
pub fn compose_pairs(second: &AdaptedPair, first: &AdaptedPair) -> AdaptedPair {
    let a = &second.a * &first.a;
    let b = &(&first.a * &second.b) + &(&second.a * &first.b) + &second.b * &first.b;
    AdaptedPair { a, b }
}

/// Which correction block the θ' formula uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ThetaForm {
    /// θ + y·α_n minus the plain correction block. Consistent with the group law.
    Standard,
    /// Same with the correction block scaled by (1 + y). Kept for diagnostics.
    ScaledCorrection,
}

fn binomial(n: usize, k: usize) -> Scalar {
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    Scalar::from_int(r)
}

/// z is indexed from 3: z[0] = z_3.
fn zi(z: &[Scalar], i: usize) -> &Scalar {
    &z[i - 3]
}

/// Nested sum over k+m ≤ i_1 ≤ … ≤ i_{m-1} ≤ t of
/// z_{t+3-i_{m-1}} z_{i_{m-1}+3-i_{m-2}} ⋯ z_{i_2+3-i_1} z_{i_1+3-k-m}.
pub fn nested_sum(z: &[Scalar], t: usize, k: usize, m: usize) -> Scalar {
    if m == 1 {
        return zi(z, t + 2 - k).clone();
    }
    let lo = k + m;
    if lo > t {
        return Scalar::zero();
    }
    let len = m - 1;
    let mut idx = vec![lo; len];
    let mut total = Scalar::zero();
    loop {
        let mut term = zi(z, t + 3 - idx[len - 1]) * zi(z, idx[0] + 3 - k - m);
        for s in 0..len - 1 {
            term = &term * zi(z, idx[s + 1] + 3 - idx[s]);
        }
        total += &term;
        // odometer over nondecreasing tuples, last index fastest
        let mut p = len;
        loop {
            if p == 0 {
                return total;
            }
            p -= 1;
            if idx[p] < t {
                idx[p] += 1;
                let v = idx[p];
                for q in idx.iter_mut().skip(p + 1) {
                    *q = v;
                }
                break;
            }
        }
    }
}

fn correction(y: &Scalar, z: &[Scalar], t: usize, k: usize) -> Scalar {
    let mut acc = Scalar::zero();
    let mut ym = Scalar::one();
    for m in 1..k {
        ym = &ym * y;
        let s = nested_sum(z, t, k, m);
        if !s.is_zero() {
            acc += &(&binomial(k - 1, m) * &(&ym * &s));
        }
    }
    acc
}

/// φ_3, …, φ_t for the given y and z = (z_3, …).
pub fn phi_sequence(t: usize, y: &Scalar, z: &[Scalar]) -> Vec<Scalar> {
    let one_y = Scalar::one() + y;
    let mut phis: Vec<Scalar> = Vec::with_capacity(t.saturating_sub(2));
    for s in 3..=t {
        let mut v = &one_y * zi(z, s);
        for k in 3..s {
            let c = correction(y, z, s, k);
            if !c.is_zero() {
                v -= &(&c * &phis[k - 3]);
            }
        }
        phis.push(v);
    }
    phis
}

pub fn phi(t: usize, y: &Scalar, z: &[Scalar]) -> Result<Scalar> {
    if t < 3 || t > z.len() + 2 {
        return Err(Error::IndexOutOfRange { index: t, lo: 3, hi: z.len() + 2 });
    }
    Ok(phi_sequence(t, y, z).pop().expect("t >= 3"))
}

/// The θ-component: φ_{n+1} for z = (α_3, …, α_n) and the given θ.
pub fn phi_theta(n: usize, y: &Scalar, z: &[Scalar], theta: &Scalar, form: ThetaForm) -> Result<Scalar> {
    if n < 4 || z.len() != n - 2 {
        return Err(Error::IndexOutOfRange { index: n, lo: 4, hi: z.len() + 2 });
    }
    let phis = phi_sequence(n - 1, y, z);
    Ok(theta_from_phis(n, y, z, theta, &phis, form))
}

fn theta_from_phis(n: usize, y: &Scalar, z: &[Scalar], theta: &Scalar, phis: &[Scalar], form: ThetaForm) -> Scalar {
    let mut block = Scalar::zero();
    for k in 3..n {
        let c = correction(y, z, n, k);
        if !c.is_zero() {
            block += &(&c * &phis[k - 3]);
        }
    }
    if form == ThetaForm::ScaledCorrection {
        block = &block * &(Scalar::one() + y);
    }
    &(theta + &(y * zi(z, n))) - &block
}

pub fn rho_apply(pair: &AdaptedPair, p: &ParamVector) -> ParamVector {
    rho_apply_with(pair, p, ThetaForm::Standard)
}

/// ρ through the φ recursion in x = 1/A, y = B/A: α'_t = x^{t-2} φ_t, θ' = x^{n-2} φ_{n+1}.
pub fn rho_apply_with(pair: &AdaptedPair, p: &ParamVector, form: ThetaForm) -> ParamVector {
    let n = p.n();
    let x = pair.x();
    let y = pair.y();
    let z = p.alphas();
    let phis = phi_sequence(n, &y, z);
    let mut out = Vec::with_capacity(n - 1);
    let mut xp = x.clone();
    for ph in &phis {
        out.push(&xp * ph);
        xp = &xp * &x;
    }
    let th = theta_from_phis(n, &y, z, p.theta(), &phis[..n - 3], form);
    let xn = x.pow(n as i32 - 2).expect("nonnegative");
    out.push(&xn * &th);
    ParamVector::from_slots(n, out).expect("same shape")
}

/// ρ computed directly in A and B, with each new α'_t solved from the
/// previously computed α'_k and powers of A, without passing through x and y.
pub fn rho_apply_raw(pair: &AdaptedPair, p: &ParamVector) -> ParamVector {
    let n = p.n();
    let (a, b) = (pair.a(), pair.b());
    let s = a + b;
    let al = p.alphas();
    let apow = |e: usize| a.pow(e as i32).expect("nonnegative");
    let bpow = |e: usize| b.pow(e as i32).expect("nonnegative");

    let block = |t: usize, out: &[Scalar]| -> Scalar {
        let mut acc = Scalar::zero();
        for k in 3..t {
            let mut inner = Scalar::zero();
            for m in 1..k {
                let nsum = raw_nested(al, t, k, m);
                if nsum.is_zero() {
                    continue;
                }
                inner += &(&binomial(k - 1, k - 1 - m) * &(&apow(k - 1 - m) * &(&bpow(m) * &nsum)));
            }
            acc += &(&inner * &out[k - 3]);
        }
        acc
    };

    let mut out: Vec<Scalar> = Vec::with_capacity(n - 1);
    for t in 3..=n {
        let body = &(&s * &al[t - 3]) - &block(t, &out);
        out.push(body.checked_div(&apow(t - 1)).expect("A nonzero"));
    }
    let body = &(&(a * p.theta()) + &(b * &al[n - 3])) - &block(n, &out);
    out.push(body.checked_div(&apow(n - 1)).expect("A nonzero"));
    ParamVector::from_slots(n, out).expect("same shape")
}

// Recursive enumeration of the same nested sum, kept separate from `nested_sum`.
fn raw_nested(al: &[Scalar], t: usize, k: usize, m: usize) -> Scalar {
    let a = |i: usize| &al[i - 3];
    if m == 1 {
        return a(t + 2 - k).clone();
    }
    fn rec(al: &[Scalar], t: usize, k: usize, m: usize, level: usize, upper: usize, acc: &Scalar) -> Scalar {
        // level counts down from m-1; `upper` is the index chosen one level above
        let lo = k + m;
        let mut total = Scalar::zero();
        for i in lo..=upper {
            let link = if level == m - 1 { &al[t + 3 - i - 3] } else { &al[upper + 3 - i - 3] };
            let acc2 = acc * link;
            if level == 1 {
                total += &(&acc2 * &al[i + 3 - k - m - 3]);
            } else {
                total += &rec(al, t, k, m, level - 1, i, &acc2);
            }
        }
        total
    }
    if k + m > t {
        return Scalar::zero();
    }
    rec(al, t, k, m, m - 1, t, &Scalar::one())
}

/// Column j holds the image of e_j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub cols: Vec<Vector>,
}

impl LinearMap {
    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        let d = self.dim();
        let mut out = vec![Scalar::zero(); d];
        for (j, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, m) in out.iter_mut().zip(&self.cols[j]) {
                *o += &(c * m);
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.cols)
    }
}

/// The map determined by f(e_0) = f0, f(e_1) = f1, f(e_2) = f0·f0 and
/// f(e_{i+1}) = f(e_i)·f0.
pub fn generated_map(t: &StructureTensor, f0: &[Scalar], f1: &[Scalar]) -> Result<LinearMap> {
    let d = t.dim();
    let mut cols = vec![f0.to_vec(), f1.to_vec()];
    if d > 2 {
        cols.push(t.product(f0, f0)?);
    }
    while cols.len() < d {
        let next = t.product(cols.last().expect("nonempty"), f0)?;
        cols.push(next);
    }
    cols.truncate(d);
    Ok(LinearMap { cols })
}

/// f(e_i e_j) = f(e_i) f(e_j) for all basis pairs, f going from `src` to `tgt`.
pub fn is_homomorphism(src: &StructureTensor, tgt: &StructureTensor, f: &LinearMap) -> bool {
    let d = src.dim();
    if tgt.dim() != d || f.dim() != d {
        return false;
    }
    for i in 0..d {
        for j in 0..d {
            let mut lhs = vec![Scalar::zero(); d];
            for (k, g) in src.basis_product(i, j) {
                lhs = lhs.iter().zip(&f.cols[*k]).map(|(a, b)| a + &(g * b)).collect();
            }
            let rhs = tgt.product(&f.cols[i], &f.cols[j]).expect("dims checked");
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

pub fn is_isomorphism(src: &StructureTensor, tgt: &StructureTensor, f: &LinearMap) -> bool {
    is_homomorphism(src, tgt, f) && f.rank() == src.dim()
}

/// Structure-level version of ρ: builds the adapted basis inside L(p) and
/// reads the new parameters off its multiplication table.
pub fn rho_apply_transport(pair: &AdaptedPair, p: &ParamVector) -> Result<ParamVector> {
    let n = p.n();
    let d = p.dim();
    let t = build_table_first_class(p);
    let mut f0 = vec![Scalar::zero(); d];
    f0[0] = pair.a().clone();
    f0[1] = pair.b().clone();
    let mut f1 = vec![Scalar::zero(); d];
    f1[1] = pair.a() + pair.b();
    f1[n - 1] = pair.b() * &(p.theta() - p.alpha(n));
    let f = generated_map(&t, &f0, &f1)?;
    let coords = |v: &Vector| -> Result<Vector> { solve(&f.cols, v) };
    let e11 = coords(&t.product(&f.cols[1], &f.cols[1])?)?;
    let e01 = coords(&t.product(&f.cols[0], &f.cols[1])?)?;
    let mut slots: Vec<Scalar> = (3..=n).map(|k| e11[k].clone()).collect();
    slots.push(e01[n].clone());
    ParamVector::from_slots(n, slots)
}

/// Solves Σ_j c_j cols[j] = v.
fn solve(cols: &[Vector], v: &[Scalar]) -> Result<Vector> {
    let d = cols.len();
    let mut rows: Vec<Vec<Scalar>> = (0..d)
        .map(|r| {
            let mut row: Vec<Scalar> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(v[r].clone());
            row
        })
        .collect();
    let piv = linalg::rref(&mut rows);
    if piv.len() != d || piv.contains(&d) {
        return Err(Error::NotFound);
    }
    Ok(rows.iter().map(|r| r[d].clone()).collect())
}

fn poly_product(t: &StructureTensor, x: &[MPoly], y: &[MPoly], nv: usize) -> Vec<MPoly> {
    let d = t.dim();
    let mut out = vec![MPoly::zero(nv); d];
    for i in 0..d {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..d {
            if y[j].is_zero() {
                continue;
            }
            let row = t.basis_product(i, j);
            if row.is_empty() {
                continue;
            }
            let xy = x[i].mul(&y[j]);
            for (k, g) in row {
                out[*k] = out[*k].add(&xy.scale(g));
            }
        }
    }
    out
}

/// Searches for an isomorphism f: L(q) → L(p) with
/// f(e_0) = A e_0 + B e_1 + Σ a_k e_k and f(e_1) = D e_0 + C e_1 + Σ b_k e_k,
/// solving the homomorphism equations one basis degree at a time.
pub fn find_isomorphism(p: &ParamVector, q: &ParamVector, pair: &AdaptedPair) -> Result<LinearMap> {
    if p.n() != q.n() {
        return Err(Error::DimensionMismatch { expected: p.dim(), got: q.dim() });
    }
    let n = p.n();
    let d = p.dim();
    let nv = 2 + 2 * (n - 1);
    let (var_d, var_c) = (0, 1);
    let var_a = |k: usize| 2 + (k - 2);
    let var_b = |k: usize| 2 + (n - 1) + (k - 2);
    let tp = build_table_first_class(p);
    let tq = build_table_first_class(q);

    let mut f0 = vec![MPoly::zero(nv); d];
    f0[0] = MPoly::constant(nv, pair.a().clone());
    f0[1] = MPoly::constant(nv, pair.b().clone());
    let mut f1 = vec![MPoly::zero(nv); d];
    f1[0] = MPoly::var(nv, var_d);
    f1[1] = MPoly::var(nv, var_c);
    for k in 2..d {
        f0[k] = MPoly::var(nv, var_a(k));
        f1[k] = MPoly::var(nv, var_b(k));
    }
    let mut img = vec![f0.clone(), f1];
    img.push(poly_product(&tp, &f0, &f0, nv));
    while img.len() < d {
        let next = poly_product(&tp, img.last().expect("nonempty"), &f0, nv);
        img.push(next);
    }

    // residual equations grouped by the basis coordinate they live in
    let mut by_degree: Vec<Vec<MPoly>> = vec![Vec::new(); d];
    for i in 0..d {
        for j in 0..d {
            let mut lhs = vec![MPoly::zero(nv); d];
            for (k, g) in tq.basis_product(i, j) {
                for c in 0..d {
                    lhs[c] = lhs[c].add(&img[*k][c].scale(g));
                }
            }
            let rhs = poly_product(&tp, &img[i], &img[j], nv);
            for c in 0..d {
                let e = lhs[c].sub(&rhs[c]);
                if !e.is_zero() {
                    by_degree[c].push(e);
                }
            }
        }
    }

    let mut values: Vec<Option<Scalar>> = vec![None; nv];
    let mut pending: Vec<MPoly> = Vec::new();
    for (degree, fresh) in by_degree.into_iter().enumerate() {
        let mut eqs: Vec<MPoly> = pending.drain(..).chain(fresh).collect();
        loop {
            eqs = eqs.iter().map(|e| e.substitute(&values)).filter(|e| !e.is_zero()).collect();
            let (affine, nonlinear): (Vec<MPoly>, Vec<MPoly>) = eqs.iter().cloned().partition(|e| e.degree() <= 1);
            let mut rows: Vec<Vec<Scalar>> = affine
                .iter()
                .map(|e| {
                    let (mut c, k) = e.linear_parts().expect("affine");
                    c.push(-k);
                    c
                })
                .collect();
            linalg::rref(&mut rows);
            let mut fixed_any = false;
            let mut kept = Vec::new();
            for row in rows {
                let nz: Vec<usize> = (0..nv).filter(|&i| !row[i].is_zero()).collect();
                match nz.len() {
                    0 => return Err(Error::NotFound),
                    1 => {
                        values[nz[0]] = Some(row[nv].clone());
                        fixed_any = true;
                    }
                    _ => kept.push(row),
                }
            }
            if fixed_any {
                continue;
            }
            if !nonlinear.is_empty() {
                return Err(Error::NonAffineConstraint { degree });
            }
            pending = kept
                .into_iter()
                .map(|row| {
                    let mut e = MPoly::constant(nv, -row[nv].clone());
                    for (i, c) in row[..nv].iter().enumerate() {
                        if !c.is_zero() {
                            e = e.add(&MPoly::var(nv, i).scale(c));
                        }
                    }
                    e
                })
                .collect();
            break;
        }
    }

    // remaining linear relations: free unknowns are set to zero
    let mut rows: Vec<Vec<Scalar>> = pending
        .iter()
        .map(|e| {
            let (mut c, k) = e.substitute(&values).linear_parts().expect("affine");
            c.push(-k);
            c
        })
        .collect();
    let piv = linalg::rref(&mut rows);
    for (row, &pc) in rows.iter().zip(&piv) {
        if pc == nv {
            return Err(Error::NotFound);
        }
        values[pc] = Some(row[nv].clone());
    }
    for v in values.iter_mut() {
        if v.is_none() {
            *v = Some(Scalar::zero());
        }
    }
    let as_scalar = |e: &MPoly| -> Scalar {
        let s = e.substitute(&values);
        s.linear_parts().map(|(_, k)| k).unwrap_or_default()
    };
    let cols: Vec<Vector> = img.iter().map(|v| v.iter().map(as_scalar).collect()).collect();
    let f = LinearMap { cols };
    if is_isomorphism(&tq, &tp, &f) {
        Ok(f)
    } else {
        Err(Error::NotFound)
    }
}

/// Identity map of the given dimension.
pub fn identity_map(dim: usize) -> LinearMap {
    LinearMap { cols: (0..dim).map(|i| basis_vector(dim, i)).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Scalar {
        Scalar::parse(t).unwrap()
    }

    fn pv(slots: &[&str]) -> ParamVector {
        ParamVector::from_dim_slots(slots.len() + 2, slots.iter().map(|x| s(x)).collect()).unwrap()
    }

    fn pair(a: &str, b: &str) -> AdaptedPair {
        AdaptedPair::new(s(a), s(b)).unwrap()
    }

    #[test]
    fn phi4_example() {
        let z = [s("1"), s("0")];
        assert_eq!(phi(4, &s("1"), &z).unwrap(), s("-4"));
        assert_eq!(phi(3, &s("1"), &z).unwrap(), s("2"));
        assert!(matches!(phi(5, &s("1"), &z), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn theta_component_dim5() {
        let z = [s("1"), s("0")];
        let lam = s("7/3");
        let th = phi_theta(4, &s("1"), &z, &lam, ThetaForm::Standard).unwrap();
        assert_eq!(th, &lam - &s("4"));
        let th2 = phi_theta(4, &s("1"), &z, &lam, ThetaForm::ScaledCorrection).unwrap();
        assert_eq!(th2, &lam - &s("8"));
    }

    #[test]
    fn rho_dim5_example() {
        let p = pv(&["1", "0", "5"]);
        let q = rho_apply(&pair("1", "1"), &p);
        assert_eq!(q, pv(&["2", "-4", "1"]));
        assert_eq!(rho_apply_raw(&pair("1", "1"), &p), q);
        assert_eq!(rho_apply_transport(&pair("1", "1"), &p).unwrap(), q);
    }

    #[test]
    fn invalid_pairs() {
        assert!(AdaptedPair::new(s("0"), s("1")).is_err());
        assert!(AdaptedPair::new(s("1"), s("-1")).is_err());
        let r: std::result::Result<AdaptedPair, _> = serde_json::from_str(r#"{"A":"1","B":"-1"}"#);
        assert!(r.is_err());
    }

    #[test]
    fn pair_group() {
        let g = pair("2", "1/3");
        let h = pair("-1+1i", "1");
        let gi = g.inverse();
        assert_eq!(compose_pairs(&gi, &g), AdaptedPair::identity());
        assert_eq!(compose_pairs(&g, &h), compose_pairs(&h, &g));
    }

    #[test]
    fn nested_sum_small() {
        // t = 6, k = 3, m = 2: single index i_1 in [5, 6]
        let z: Vec<Scalar> = (3..=7).map(|i| Scalar::from_int(i as i64)).collect();
        let v = nested_sum(&z, 6, 3, 2);
        // i=5: z_4 z_3 ; i=6: z_3 z_4
        assert_eq!(v, s("24"));
        assert_eq!(raw_nested(&z, 6, 3, 2), v);
        assert_eq!(nested_sum(&z, 5, 3, 3), Scalar::zero());
    }

    #[test]
    fn generated_map_dim5() {
        let p = pv(&["1", "0", "0"]);
        let t = build_table_first_class(&p);
        let f0 = vec![s("1"), s("1"), s("0"), s("0"), s("0")];
        let f1 = vec![s("0"), s("2"), s("0"), s("0"), s("0")];
        let f = generated_map(&t, &f0, &f1).unwrap();
        assert_eq!(f.cols[2], vec![s("0"), s("0"), s("2"), s("2"), s("0")]);
    }

    #[test]
    fn isomorphism_found_and_checked() {
        let p = pv(&["1", "0", "1"]);
        let g = pair("2", "-1/2");
        let q = rho_apply(&g, &p);
        let f = find_isomorphism(&p, &q, &g).unwrap();
        assert!(is_isomorphism(&build_table_first_class(&q), &build_table_first_class(&p), &f));
    }

    #[test]
    fn isomorphism_not_found() {
        let p = pv(&["1", "0", "0"]);
        let q = pv(&["0", "0", "0"]);
        assert_eq!(find_isomorphism(&p, &q, &AdaptedPair::identity()), Err(Error::NotFound));
    }

    #[test]
    fn identity_is_automorphism() {
        let p = pv(&["1", "-2", "3", "0"]);
        let t = build_table_first_class(&p);
        assert!(is_isomorphism(&t, &t, &identity_map(6)));
    }
}
