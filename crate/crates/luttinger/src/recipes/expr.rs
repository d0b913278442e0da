//! Integer expressions over recipe parameters, with `e[..]` / `sigma[..]`
//! references to the numbers of blocks and other recipes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Invariant {
    Euler,
    Signature,
}

impl Invariant {
    fn keyword(self) -> &'static str {
        match self {
            Invariant::Euler => "e",
            Invariant::Signature => "sigma",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn prec(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
        }
    }

    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Int(BigInt),
    Param(String),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    /// `e[NAME(args)]` or `sigma[NAME(args)]`.
    Ref { what: Invariant, target: String, args: Vec<Expr> },
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("column {col}: {message}")]
    Syntax { col: usize, message: String },
    #[error("unbound parameter `{0}`")]
    Unbound(String),
    #[error("division by zero")]
    DivZero,
    #[error("`{0}` is not an integer")]
    NotInteger(String),
    #[error("{0}")]
    Reference(String),
}

impl Expr {
    pub fn int(v: i64) -> Self {
        Expr::Int(v.into())
    }

    pub fn param(name: &str) -> Self {
        Expr::Param(name.to_string())
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Bin(op, ..) => op.prec(),
            Expr::Neg(_) => 3,
            Expr::Int(v) if v.is_negative() => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    /// Exact value, with references resolved by `lookup`.
    pub fn eval(
        &self,
        params: &dyn Fn(&str) -> Option<BigInt>,
        lookup: &dyn Fn(Invariant, &str, &[BigInt]) -> Result<BigInt, String>,
    ) -> Result<BigRational, ExprError> {
        let ev = |e: &Expr| e.eval(params, lookup);
        Ok(match self {
            Expr::Int(v) => BigRational::from_integer(v.clone()),
            Expr::Param(p) => BigRational::from_integer(params(p).ok_or_else(|| ExprError::Unbound(p.clone()))?),
            Expr::Neg(e) => -ev(e)?,
            Expr::Bin(op, a, b) => {
                let (x, y) = (ev(a)?, ev(b)?);
                match op {
                    BinOp::Add => x + y,
                    BinOp::Sub => x - y,
                    BinOp::Mul => x * y,
                    BinOp::Div => {
                        if y.is_zero() {
                            return Err(ExprError::DivZero);
                        }
                        x / y
                    }
                }
            }
            Expr::Pow(b, k) => {
                let x = ev(b)?;
                (0..*k).fold(BigRational::one(), |acc, _| acc * &x)
            }
            Expr::Ref { what, target, args } => {
                let vals = args.iter().map(|a| integral(&ev(a)?, a)).collect::<Result<Vec<_>, _>>()?;
                BigRational::from_integer(lookup(*what, target, &vals).map_err(ExprError::Reference)?)
            }
        })
    }

    /// Value that must come out integral.
    pub fn eval_int(
        &self,
        params: &dyn Fn(&str) -> Option<BigInt>,
        lookup: &dyn Fn(Invariant, &str, &[BigInt]) -> Result<BigInt, String>,
    ) -> Result<BigInt, ExprError> {
        integral(&self.eval(params, lookup)?, self)
    }

    /// Parameters only; references are an error.
    pub fn eval_plain(&self, params: &dyn Fn(&str) -> Option<BigInt>) -> Result<BigInt, ExprError> {
        self.eval_int(params, &|_, t, _| Err(format!("reference to `{t}` not allowed here")))
    }

    pub fn eval_i64(&self, params: &dyn Fn(&str) -> Option<BigInt>) -> Result<i64, ExprError> {
        let v = self.eval_plain(params)?;
        v.to_i64().ok_or_else(|| ExprError::NotInteger(format!("{self} (out of range)")))
    }

    pub fn parse(text: &str) -> Result<Expr, ExprError> {
        let mut p = Parser { s: text.as_bytes(), pos: 0 };
        let e = p.sum()?;
        p.ws();
        if p.pos != p.s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }
}

fn integral(v: &BigRational, e: &Expr) -> Result<BigInt, ExprError> {
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(ExprError::NotInteger(format!("{e} = {v}")))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(v) => write!(f, "{v}"),
            Expr::Param(p) => f.write_str(p),
            Expr::Neg(e) => {
                if e.prec() < 3 || matches!(**e, Expr::Int(_)) {
                    write!(f, "-({e})")
                } else {
                    write!(f, "-{e}")
                }
            }
            Expr::Bin(op, a, b) => {
                if a.prec() < op.prec() {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
                write!(f, "{}", op.symbol())?;
                if b.prec() <= op.prec() {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
            Expr::Pow(b, k) => {
                if b.prec() < 5 {
                    write!(f, "({b})^{k}")
                } else {
                    write!(f, "{b}^{k}")
                }
            }
            Expr::Ref { what, target, args } => {
                write!(f, "{}[{target}", what.keyword())?;
                if !args.is_empty() {
                    let a: Vec<String> = args.iter().map(|a| a.to_string()).collect();
                    write!(f, "({})", a.join(","))?;
                }
                f.write_str("]")
            }
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, m: &str) -> ExprError {
        ExprError::Syntax { col: self.pos + 1, message: m.to_string() }
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.product()?;
        loop {
            let op = match self.peek() {
                Some(b'+') => BinOp::Add,
                Some(b'-') => BinOp::Sub,
                _ => return Ok(acc),
            };
            self.pos += 1;
            acc = Expr::Bin(op, Box::new(acc), Box::new(self.product()?));
        }
    }

    fn product(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(b'*') => BinOp::Mul,
                Some(b'/') => BinOp::Div,
                _ => return Ok(acc),
            };
            self.pos += 1;
            acc = Expr::Bin(op, Box::new(acc), Box::new(self.unary()?));
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat(b'-') {
            return Ok(match self.unary()? {
                Expr::Int(v) if !v.is_negative() => Expr::Int(-v),
                e => Expr::Neg(Box::new(e)),
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.ws();
            let start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let k = std::str::from_utf8(&self.s[start..self.pos])
                .ok()
                .and_then(|t| t.parse::<u32>().ok())
                .ok_or_else(|| self.err("expected a small exponent"))?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn ident(&mut self) -> Option<String> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() {
            let c = self.s[self.pos];
            let ok = if self.pos == start { c.is_ascii_alphabetic() || c == b'_' } else { c.is_ascii_alphanumeric() || c == b'_' };
            if !ok {
                break;
            }
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    /// Block or recipe name; may start with a digit.
    fn target(&mut self) -> Option<String> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let t = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
                Ok(Expr::Int(t.parse().expect("digits")))
            }
            Some(_) => {
                let name = self.ident().ok_or_else(|| self.err("expected a number, name or `(`"))?;
                let what = match name.as_str() {
                    "e" => Some(Invariant::Euler),
                    "sigma" => Some(Invariant::Signature),
                    _ => None,
                };
                match what {
                    Some(what) if self.peek() == Some(b'[') => {
                        self.pos += 1;
                        let target = self.target().ok_or_else(|| self.err("expected a block or recipe name"))?;
                        let mut args = Vec::new();
                        if self.eat(b'(') {
                            loop {
                                args.push(self.sum()?);
                                if self.eat(b')') {
                                    break;
                                }
                                if !self.eat(b',') {
                                    return Err(self.err("expected `,` or `)`"));
                                }
                            }
                        }
                        if !self.eat(b']') {
                            return Err(self.err("expected `]`"));
                        }
                        Ok(Expr::Ref { what, target, args })
                    }
                    _ => Ok(Expr::Param(name)),
                }
            }
            None => Err(self.err("unexpected end of expression")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn val(s: &str, n: i64) -> BigRational {
        let e = Expr::parse(s).unwrap();
        e.eval(&|p| (p == "n").then(|| n.into()), &|_, _, _| Err("none".into())).unwrap()
    }

    #[test]
    fn precedence() {
        assert_eq!(val("2+3*4", 0), BigRational::from_integer(14.into()));
        assert_eq!(val("-2^2", 0), BigRational::from_integer((-4).into()));
        assert_eq!(val("(1-n)-2", 3), BigRational::from_integer((-4).into()));
        assert_eq!(val("n^2/2+19*n/2+36", 2), BigRational::from_integer(57.into()));
        assert_eq!(val("10-6-1", 0), BigRational::from_integer(3.into()));
    }

    #[test]
    fn display_round_trips() {
        for s in ["2+3*4", "-2^2", "(1-n)-2", "n^2/2+19*n/2+36", "a-(b-c)", "-(a+b)*c", "(-2)^3", "e[sym2(n)]+e[ZZ]", "--n", "a*-2"] {
            let e = Expr::parse(s).unwrap();
            assert_eq!(Expr::parse(&e.to_string()).unwrap(), e, "{s} -> {e}");
        }
    }

    #[test]
    fn references_resolve() {
        let e = Expr::parse("e[sym2(n+1)] - 1").unwrap();
        let v = e
            .eval(&|_| Some(2.into()), &|w, t, a| {
                assert_eq!((w, t), (Invariant::Euler, "sym2"));
                Ok(a[0].clone() * 10)
            })
            .unwrap();
        assert_eq!(v, BigRational::from_integer(29.into()));
    }

    #[test]
    fn errors() {
        assert!(matches!(Expr::parse("2+"), Err(ExprError::Syntax { .. })));
        assert!(matches!(Expr::parse("1/0").unwrap().eval_plain(&|_| None), Err(ExprError::DivZero)));
        assert!(matches!(Expr::parse("3/2").unwrap().eval_plain(&|_| None), Err(ExprError::NotInteger(_))));
        assert!(matches!(Expr::parse("k").unwrap().eval_plain(&|_| None), Err(ExprError::Unbound(_))));
    }
}
