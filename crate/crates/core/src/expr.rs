//! Small expression trees in prefix notation, e.g. `(* (^ (/ a3 D4) 2) T4)`.
//!
//! Symbols: `a3`…`a9` (α_k), `th` (θ), `D4`…`D7` (Δ_k), `T4`…`T9` (Θ_k = θ - α_k)
//! and `l1`, `l2`, … for family parameters.

use std::fmt;

use crate::error::{Error, Result};
use crate::polynomial::Field;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    Alpha(usize),
    Theta,
    Delta(usize),
    ThetaDiff(usize),
    Lambda(usize),
}

impl Sym {
    pub fn parse(s: &str) -> Option<Sym> {
        if s == "th" {
            return Some(Sym::Theta);
        }
        let (head, tail) = s.split_at(1);
        let k: usize = tail.parse().ok()?;
        match head {
            "a" if k >= 3 => Some(Sym::Alpha(k)),
            "D" if (4..=7).contains(&k) => Some(Sym::Delta(k)),
            "T" if k >= 4 => Some(Sym::ThetaDiff(k)),
            "l" if k >= 1 => Some(Sym::Lambda(k)),
            _ => None,
        }
    }

    pub fn pretty(&self) -> String {
        match self {
            Sym::Alpha(k) => format!("α{k}"),
            Sym::Theta => "θ".into(),
            Sym::Delta(k) => format!("Δ{k}"),
            Sym::ThetaDiff(k) => format!("Θ{k}"),
            Sym::Lambda(k) => format!("λ{k}"),
        }
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::Alpha(k) => write!(f, "a{k}"),
            Sym::Theta => write!(f, "th"),
            Sym::Delta(k) => write!(f, "D{k}"),
            Sym::ThetaDiff(k) => write!(f, "T{k}"),
            Sym::Lambda(k) => write!(f, "l{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Scalar),
    Sym(Sym),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Neg(Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr> {
        let toks = tokenize(text);
        let mut pos = 0;
        let e = parse_tokens(&toks, &mut pos)?;
        if pos != toks.len() {
            return Err(Error::Parse { pos: toks[pos].0, msg: "trailing tokens".into() });
        }
        Ok(e)
    }

    pub fn symbols(&self) -> Vec<Sym> {
        let mut out = Vec::new();
        self.collect_symbols(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_symbols(&self, out: &mut Vec<Sym>) {
        match self {
            Expr::Num(_) => {}
            Expr::Sym(s) => out.push(*s),
            Expr::Add(v) | Expr::Mul(v) => v.iter().for_each(|e| e.collect_symbols(out)),
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_symbols(out),
            Expr::Sub(a, b) | Expr::Div(a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
        }
    }

    pub fn eval<F: Field>(&self, env: &mut dyn FnMut(Sym) -> Result<F>) -> Result<F> {
        Ok(match self {
            Expr::Num(s) => F::from_scalar(s),
            Expr::Sym(s) => env(*s)?,
            Expr::Add(v) => {
                let mut acc = F::from_scalar(&Scalar::zero());
                for e in v {
                    acc = acc.add(&e.eval(env)?);
                }
                acc
            }
            Expr::Mul(v) => {
                let mut acc = F::from_scalar(&Scalar::one());
                for e in v {
                    acc = acc.mul(&e.eval(env)?);
                }
                acc
            }
            Expr::Neg(a) => a.eval(env)?.neg(),
            Expr::Sub(a, b) => a.eval(env)?.sub(&b.eval(env)?),
            Expr::Div(a, b) => {
                let d = b.eval(env)?;
                a.eval(env)?.div(&d).map_err(|_| self.denominator_zero())?
            }
            Expr::Pow(a, k) => a.eval(env)?.powi(*k).map_err(|_| self.denominator_zero())?,
        })
    }

    fn denominator_zero(&self) -> Error {
        Error::DenominatorZero { expr: self.to_string() }
    }

    /// Human-readable infix rendering with Greek symbol names.
    pub fn infix(&self) -> String {
        self.infix_prec(0)
    }

    fn infix_prec(&self, ctx: u8) -> String {
        // precedence: 1 sum, 2 product, 3 power/atom
        let (s, prec) = match self {
            Expr::Num(n) => {
                let t = n.to_string();
                let p = if t.contains(['/', '+']) || t[1..].contains('-') { 2 } else { 3 };
                (t, p)
            }
            Expr::Sym(s) => (s.pretty(), 3),
            Expr::Add(v) => {
                let mut out = String::new();
                for (i, e) in v.iter().enumerate() {
                    let t = e.infix_prec(1);
                    if i > 0 {
                        match t.strip_prefix('-') {
                            Some(rest) => {
                                out.push_str(" - ");
                                out.push_str(rest);
                            }
                            None => {
                                out.push_str(" + ");
                                out.push_str(&t);
                            }
                        }
                    } else {
                        out.push_str(&t);
                    }
                }
                (out, 1)
            }
            Expr::Sub(a, b) => (format!("{} - {}", a.infix_prec(1), b.infix_prec(2)), 1),
            Expr::Neg(a) => (format!("-{}", a.infix_prec(2)), 2),
            Expr::Mul(v) => {
                let parts: Vec<String> = v.iter().map(|e| e.infix_prec(2)).collect();
                let mut out = String::new();
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 && !(i == 1 && parts[0].parse::<i64>().is_ok()) {
                        out.push('·');
                    }
                    out.push_str(p);
                }
                (out, 2)
            }
            Expr::Div(a, b) => (format!("{}/{}", a.infix_prec(2), b.infix_prec(3)), 2),
            Expr::Pow(a, k) => (format!("{}^{k}", a.infix_prec(3)), 3),
        };
        if prec < ctx || (ctx == 3 && prec == 3 && s.starts_with('-')) {
            format!("({s})")
        } else {
            s
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, op: &str, v: &[&Expr]| -> fmt::Result {
            write!(f, "({op}")?;
            for e in v {
                write!(f, " {e}")?;
            }
            write!(f, ")")
        };
        match self {
            Expr::Num(n) => write!(f, "{n}"),
            Expr::Sym(s) => write!(f, "{s}"),
            Expr::Add(v) => list(f, "+", &v.iter().collect::<Vec<_>>()),
            Expr::Mul(v) => list(f, "*", &v.iter().collect::<Vec<_>>()),
            Expr::Neg(a) => list(f, "-", &[a]),
            Expr::Sub(a, b) => list(f, "-", &[a, b]),
            Expr::Div(a, b) => list(f, "/", &[a, b]),
            Expr::Pow(a, k) => write!(f, "(^ {a} {k})"),
        }
    }
}

fn tokenize(text: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut start = 0;
    for (i, c) in text.char_indices() {
        if c == '(' || c == ')' || c.is_whitespace() {
            if !cur.is_empty() {
                out.push((start, std::mem::take(&mut cur)));
            }
            if !c.is_whitespace() {
                out.push((i, c.to_string()));
            }
        } else {
            if cur.is_empty() {
                start = i;
            }
            cur.push(c);
        }
    }
    if !cur.is_empty() {
        out.push((start, cur));
    }
    out
}

fn parse_tokens(toks: &[(usize, String)], pos: &mut usize) -> Result<Expr> {
    let Some((at, tok)) = toks.get(*pos) else {
        return Err(Error::Parse { pos: toks.last().map_or(0, |t| t.0), msg: "unexpected end".into() });
    };
    let at = *at;
    *pos += 1;
    if tok == ")" {
        return Err(Error::Parse { pos: at, msg: "unexpected ')'".into() });
    }
    if tok != "(" {
        if let Some(s) = Sym::parse(tok) {
            return Ok(Expr::Sym(s));
        }
        return Scalar::parse(tok)
            .map(Expr::Num)
            .map_err(|_| Error::Parse { pos: at, msg: format!("unknown atom {tok:?}") });
    }
    let Some((_, op)) = toks.get(*pos) else {
        return Err(Error::Parse { pos: at, msg: "missing operator".into() });
    };
    let op = op.clone();
    *pos += 1;
    let mut args = Vec::new();
    let mut pow_exp = None;
    loop {
        match toks.get(*pos) {
            None => return Err(Error::Parse { pos: at, msg: "unclosed '('".into() }),
            Some((_, t)) if t == ")" => {
                *pos += 1;
                break;
            }
            Some((p, t)) if op == "^" && args.len() == 1 => {
                pow_exp = Some(t.parse::<i32>().map_err(|_| Error::Parse { pos: *p, msg: "bad exponent".into() })?);
                *pos += 1;
            }
            _ => args.push(parse_tokens(toks, pos)?),
        }
    }
    let bad = |msg: &str| Error::Parse { pos: at, msg: msg.into() };
    match op.as_str() {
        "+" if !args.is_empty() => Ok(Expr::Add(args)),
        "*" if !args.is_empty() => Ok(Expr::Mul(args)),
        "-" if args.len() == 1 => Ok(Expr::Neg(Box::new(args.pop().unwrap()))),
        "-" if args.len() == 2 => {
            let b = args.pop().unwrap();
            Ok(Expr::Sub(Box::new(args.pop().unwrap()), Box::new(b)))
        }
        "/" if args.len() == 2 => {
            let b = args.pop().unwrap();
            Ok(Expr::Div(Box::new(args.pop().unwrap()), Box::new(b)))
        }
        "^" if args.len() == 1 => match pow_exp {
            Some(k) => Ok(Expr::Pow(Box::new(args.pop().unwrap()), k)),
            None => Err(bad("missing exponent")),
        },
        _ => Err(bad(&format!("bad operator or arity: {op}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env_from(vals: &[(Sym, i64)]) -> impl FnMut(Sym) -> Result<Scalar> + '_ {
        move |s| {
            vals.iter()
                .find(|(k, _)| *k == s)
                .map(|(_, v)| Scalar::from_int(*v))
                .ok_or(Error::Registry(format!("unbound {s}")))
        }
    }

    #[test]
    fn parse_and_eval() {
        let e = Expr::parse("(* (^ (/ a3 D4) 2) T4)").unwrap();
        let mut env = env_from(&[(Sym::Alpha(3), 1), (Sym::Delta(4), 2), (Sym::ThetaDiff(4), 8)]);
        assert_eq!(e.eval(&mut env).unwrap(), Scalar::from_int(2));
        assert_eq!(e.symbols(), vec![Sym::Alpha(3), Sym::Delta(4), Sym::ThetaDiff(4)]);
    }

    #[test]
    fn display_round_trip() {
        for t in ["(+ (* -5 l1) -14)", "(- l1)", "(^ D4 -3)", "(/ (- a3 1/2) th)"] {
            let e = Expr::parse(t).unwrap();
            assert_eq!(e.to_string(), t);
            assert_eq!(Expr::parse(&e.to_string()).unwrap(), e);
        }
    }

    #[test]
    fn denominator_zero_reported() {
        let e = Expr::parse("(/ 1 a3)").unwrap();
        let mut env = env_from(&[(Sym::Alpha(3), 0)]);
        assert!(matches!(e.eval::<Scalar>(&mut env), Err(Error::DenominatorZero { .. })));
    }

    #[test]
    fn parse_errors() {
        assert!(Expr::parse("(+ a3").is_err());
        assert!(Expr::parse("(% a3 1)").is_err());
        assert!(Expr::parse("x9").is_err());
        assert!(Expr::parse("a3 a4").is_err());
    }

    #[test]
    fn infix_rendering() {
        assert_eq!(Expr::parse("(+ (* -5 l1) -14)").unwrap().infix(), "-5λ1 - 14");
        assert_eq!(Expr::parse("(^ l1 2)").unwrap().infix(), "λ1^2");
        assert_eq!(Expr::parse("(- (* 2 l1) 5)").unwrap().infix(), "2λ1 - 5");
    }
}
