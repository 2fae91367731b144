//! Rational expressions and inequalities in the chain parameters.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{parse_err, Error, Result};

/// The eight chain parameters, largest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    Alpha,
    Beta,
    Gamma,
    Delta,
    Eps,
    Zeta,
    Eta,
    Iota,
}

impl Param {
    pub const ALL: [Param; 8] =
        [Param::Alpha, Param::Beta, Param::Gamma, Param::Delta, Param::Eps, Param::Zeta, Param::Eta, Param::Iota];

    pub fn name(self) -> &'static str {
        match self {
            Param::Alpha => "alpha",
            Param::Beta => "beta",
            Param::Gamma => "gamma",
            Param::Delta => "delta",
            Param::Eps => "eps",
            Param::Zeta => "zeta",
            Param::Eta => "eta",
            Param::Iota => "iota",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// The integer alias `h`, `d` or `n` of `delta`, `eta` or `iota`.
    pub fn alias(self) -> Option<&'static str> {
        match self {
            Param::Delta => Some("h"),
            Param::Eta => Some("d"),
            Param::Iota => Some("n"),
            _ => None,
        }
    }

    pub fn from_name(s: &str) -> Option<Param> {
        Param::ALL.into_iter().find(|p| p.name() == s)
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A variable as written: a parameter or the reciprocal alias of one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Var {
    pub param: Param,
    pub reciprocal: bool,
}

impl Var {
    fn parse(s: &str) -> Option<Var> {
        let greek = match s {
            "α" => Some(Param::Alpha),
            "β" => Some(Param::Beta),
            "γ" => Some(Param::Gamma),
            "δ" => Some(Param::Delta),
            "ε" | "epsilon" => Some(Param::Eps),
            "ζ" => Some(Param::Zeta),
            "η" => Some(Param::Eta),
            "ι" => Some(Param::Iota),
            _ => None,
        };
        if let Some(param) = greek.or_else(|| Param::from_name(s)) {
            return Some(Var { param, reciprocal: false });
        }
        let param = match s {
            "h" => Param::Delta,
            "d" => Param::Eta,
            "n" => Param::Iota,
            _ => return None,
        };
        Some(Var { param, reciprocal: true })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigInt),
    Var(Var),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

impl Expr {
    /// Evaluates with `value(p)` giving each parameter.
    pub fn eval(&self, value: &impl Fn(Param) -> BigRational) -> Result<BigRational> {
        Ok(match self {
            Expr::Num(k) => BigRational::from_integer(k.clone()),
            Expr::Var(v) => {
                let x = value(v.param);
                if v.reciprocal {
                    recip(x)?
                } else {
                    x
                }
            }
            Expr::Neg(a) => -a.eval(value)?,
            Expr::Add(a, b) => a.eval(value)? + b.eval(value)?,
            Expr::Sub(a, b) => a.eval(value)? - b.eval(value)?,
            Expr::Mul(a, b) => a.eval(value)? * b.eval(value)?,
            Expr::Div(a, b) => a.eval(value)? / nonzero(b.eval(value)?)?,
            Expr::Pow(a, k) => {
                let base = a.eval(value)?;
                let p = pow(&base, k.unsigned_abs());
                if *k < 0 {
                    recip(p)?
                } else {
                    p
                }
            }
        })
    }

    /// Every parameter mentioned, counting `h`, `d`, `n` as their reciprocals.
    pub fn params(&self, out: &mut Vec<Param>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(v) => out.push(v.param),
            Expr::Neg(a) | Expr::Pow(a, _) => a.params(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.params(out);
                b.params(out);
            }
        }
    }
}

fn pow(base: &BigRational, k: u32) -> BigRational {
    num_traits::pow(base.clone(), k as usize)
}

fn nonzero(x: BigRational) -> Result<BigRational> {
    if x.is_zero() {
        Err(Error::InvalidParams("division by zero".into()))
    } else {
        Ok(x)
    }
}

fn recip(x: BigRational) -> Result<BigRational> {
    Ok(nonzero(x)?.recip())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Lt,
    Le,
    Gt,
    Ge,
}

impl Relation {
    pub fn holds(self, lhs: &BigRational, rhs: &BigRational) -> bool {
        match self {
            Relation::Lt => lhs < rhs,
            Relation::Le => lhs <= rhs,
            Relation::Gt => lhs > rhs,
            Relation::Ge => lhs >= rhs,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Gt => ">",
            Relation::Ge => ">=",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Inequality {
    pub lhs: Expr,
    pub rel: Relation,
    pub rhs: Expr,
}

impl Inequality {
    pub fn parse(src: &str) -> Result<Inequality> {
        let tokens = lex(src)?;
        let mut p = Parser { tokens, pos: 0 };
        let lhs = p.sum()?;
        let rel = match p.next() {
            Some(Tok::Rel(r)) => r,
            other => return Err(parse_err(format!("expected a comparison in `{src}`, found {other:?}"))),
        };
        let rhs = p.sum()?;
        if p.pos != p.tokens.len() {
            return Err(parse_err(format!("trailing input in `{src}`")));
        }
        Ok(Inequality { lhs, rel, rhs })
    }

    /// The smallest parameter in the chain that the inequality mentions.
    pub fn least_param(&self) -> Option<Param> {
        let mut ps = Vec::new();
        self.lhs.params(&mut ps);
        self.rhs.params(&mut ps);
        ps.into_iter().max()
    }

    pub fn evaluate(&self, value: &impl Fn(Param) -> BigRational) -> Result<(BigRational, BigRational, bool)> {
        let l = self.lhs.eval(value)?;
        let r = self.rhs.eval(value)?;
        let ok = self.rel.holds(&l, &r);
        Ok((l, r, ok))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
    Rel(Relation),
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek().filter(|c| c.is_ascii_digit()) {
                    s.push(c);
                    chars.next();
                }
                out.push(Tok::Num(s.parse().expect("digits")));
            }
            '+' | '*' | '/' | '^' | '(' | ')' => {
                chars.next();
                out.push(Tok::Op(c));
            }
            '-' | '−' => {
                chars.next();
                out.push(Tok::Op('-'));
            }
            '×' | '·' => {
                chars.next();
                out.push(Tok::Op('*'));
            }
            '<' | '>' => {
                chars.next();
                let eq = chars.peek() == Some(&'=');
                if eq {
                    chars.next();
                }
                out.push(Tok::Rel(match (c, eq) {
                    ('<', false) => Relation::Lt,
                    ('<', true) => Relation::Le,
                    ('>', false) => Relation::Gt,
                    _ => Relation::Ge,
                }));
            }
            '≤' => {
                chars.next();
                out.push(Tok::Rel(Relation::Le));
            }
            '≥' => {
                chars.next();
                out.push(Tok::Rel(Relation::Ge));
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek().filter(|c| c.is_alphanumeric() || **c == '_') {
                    s.push(c);
                    chars.next();
                }
                out.push(Tok::Ident(s));
            }
            _ => return Err(parse_err(format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut e = self.product()?;
        loop {
            if self.eat('+') {
                e = Expr::Add(Box::new(e), Box::new(self.product()?));
            } else if self.eat('-') {
                e = Expr::Sub(Box::new(e), Box::new(self.product()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut e = self.unary()?;
        loop {
            if self.eat('*') {
                e = Expr::Mul(Box::new(e), Box::new(self.unary()?));
            } else if self.eat('/') {
                e = Expr::Div(Box::new(e), Box::new(self.unary()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let k = match self.next() {
            Some(Tok::Num(k)) => k,
            other => return Err(parse_err(format!("expected an integer exponent, found {other:?}"))),
        };
        let k: i32 = i32::try_from(k).map_err(|_| parse_err("exponent out of range"))?;
        Ok(Expr::Pow(Box::new(base), if neg { -k } else { k }))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.next() {
            Some(Tok::Num(k)) => Ok(Expr::Num(k)),
            Some(Tok::Ident(s)) => {
                Var::parse(&s).map(Expr::Var).ok_or_else(|| parse_err(format!("unknown symbol `{s}`")))
            }
            Some(Tok::Op('(')) => {
                let e = self.sum()?;
                if !self.eat(')') {
                    return Err(parse_err("missing `)`"));
                }
                Ok(e)
            }
            other => Err(parse_err(format!("unexpected token {other:?}"))),
        }
    }
}

/// Formats a rational as `p/q` or `p`.
pub fn fmt_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p/q`, `p` or `-p/q`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || parse_err(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(values: [(Param, (i64, i64)); 3]) -> impl Fn(Param) -> BigRational {
        move |p| {
            values
                .iter()
                .find(|(q, _)| *q == p)
                .map(|(_, (a, b))| BigRational::new((*a).into(), (*b).into()))
                .unwrap_or_else(|| BigRational::new(1.into(), 2.into()))
        }
    }

    #[test]
    fn parse_and_evaluate() {
        let ineq = Inequality::parse("n^2 > 100*zeta^-1*(n+h)").unwrap();
        assert_eq!(ineq.least_param(), Some(Param::Iota));
        let v = at([(Param::Zeta, (1, 100)), (Param::Delta, (1, 20)), (Param::Iota, (1, 10000))]);
        let (l, r, ok) = ineq.evaluate(&v).unwrap();
        assert_eq!(l, BigRational::from_integer(100_000_000.into()));
        assert_eq!(r, BigRational::from_integer(100_200_000.into()));
        assert!(!ok);
    }

    #[test]
    fn precedence_and_unicode() {
        let ineq = Inequality::parse("2 × 3 − 1 ≥ -2^2 + 10^4/d").unwrap();
        let v = at([(Param::Eta, (1, 10000)), (Param::Zeta, (1, 2)), (Param::Iota, (1, 2))]);
        let (l, r, ok) = ineq.evaluate(&v).unwrap();
        assert_eq!(l, BigRational::from_integer(5.into()));
        assert_eq!(r, BigRational::from_integer((-3).into()));
        assert!(ok);
        assert_eq!(ineq.least_param(), Some(Param::Eta));
    }

    #[test]
    fn parse_errors() {
        for bad in ["n^2", "n > ", "x < 1", "(n < 2", "n < 2 3", "n^h < 1"] {
            assert!(Inequality::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn rationals() {
        assert_eq!(fmt_rational(&parse_rational("6/4").unwrap()), "3/2");
        assert_eq!(fmt_rational(&parse_rational("-7").unwrap()), "-7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
