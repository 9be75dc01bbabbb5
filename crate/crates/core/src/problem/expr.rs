//! Arithmetic expressions in `x` for user-supplied potentials.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr  := term (("+" | "-") term)*
//! term  := unary (("*" | "/") unary)*
//! unary := "-" unary | power
//! power := atom ("^" unary)?
//! atom  := number | "x" | "pi" | "e" | func "(" expr ")" | "(" expr ")"
//! ```
//!
//! `^` is right-associative and binds tighter than unary minus, so `-x^2`
//! is `-(x^2)` and `2^-x` is `2^(-x)`.

use std::fmt;
use std::sync::Arc;

use crate::error::ParseError;
use crate::problem::CoefFn;
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Exp,
    Log,
    Sqrt,
    Abs,
}

impl Func {
    fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            "tanh" => Func::Tanh,
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            "abs" => Func::Abs,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
        }
    }

    fn apply<T: Real>(self, v: T) -> T {
        match self {
            Func::Sin => v.sin(),
            Func::Cos => v.cos(),
            Func::Tan => v.tan(),
            Func::Sinh => v.sinh(),
            Func::Cosh => v.cosh(),
            Func::Tanh => v.tanh(),
            Func::Exp => v.exp(),
            Func::Log => v.ln(),
            Func::Sqrt => v.sqrt(),
            Func::Abs => v.abs(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    X,
    Pi,
    E,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn eval<T: Real>(&self, x: T) -> T {
        match self {
            Expr::Num(v) => T::lit(*v),
            Expr::X => x,
            Expr::Pi => T::PI(),
            Expr::E => T::E(),
            Expr::Neg(a) => -a.eval(x),
            Expr::Add(a, b) => a.eval(x) + b.eval(x),
            Expr::Sub(a, b) => a.eval(x) - b.eval(x),
            Expr::Mul(a, b) => a.eval(x) * b.eval(x),
            Expr::Div(a, b) => a.eval(x) / b.eval(x),
            Expr::Pow(a, b) => pow(a.eval(x), b.eval(x)),
            Expr::Call(f, a) => f.apply(a.eval(x)),
        }
    }

    /// Wraps the expression as a shareable coefficient closure.
    pub fn into_coef<T: Real>(self) -> CoefFn<T> {
        let e = Arc::new(self);
        Arc::new(move |x| e.eval(x))
    }

    pub fn depends_on_x(&self) -> bool {
        match self {
            Expr::X => true,
            Expr::Num(_) | Expr::Pi | Expr::E => false,
            Expr::Neg(a) | Expr::Call(_, a) => a.depends_on_x(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                a.depends_on_x() || b.depends_on_x()
            }
        }
    }
}

/// Integer exponents use repeated multiplication so `x^2` is exact.
fn pow<T: Real>(base: T, e: T) -> T {
    if e.fract() == T::zero() && e.abs() <= T::lit(64.0) {
        base.powi(e.to_i32().unwrap_or(0))
    } else {
        base.powf(e)
    }
}

/// Fully parenthesized rendering that re-parses to an identical tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v:?}"),
            Expr::X => f.write_str("x"),
            Expr::Pi => f.write_str("pi"),
            Expr::E => f.write_str("e"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, b) => write!(f, "({a} ^ {b})"),
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

pub fn parse_potential(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax(format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let exp = self.unary()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            None => Err(self.syntax("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.ident(),
            Some(c) => Err(self.syntax(format!("unexpected `{}`", c as char))),
        }
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        let s = self.src;
        let digits = |p: &mut usize| {
            let b = *p;
            while *p < s.len() && s[*p].is_ascii_digit() {
                *p += 1;
            }
            *p - b
        };
        let mut n = digits(&mut self.pos);
        if self.pos < s.len() && s[self.pos] == b'.' {
            self.pos += 1;
            n += digits(&mut self.pos);
        }
        if n == 0 {
            self.pos = start;
            return Err(self.syntax("malformed number"));
        }
        if self.pos < s.len() && (s[self.pos] == b'e' || s[self.pos] == b'E') {
            let mut p = self.pos + 1;
            if p < s.len() && (s[p] == b'+' || s[p] == b'-') {
                p += 1;
            }
            if p < s.len() && s[p].is_ascii_digit() {
                digits(&mut p);
                self.pos = p;
            }
        }
        let text = std::str::from_utf8(&s[start..self.pos]).expect("ascii");
        text.parse::<f64>()
            .map(Expr::Num)
            .map_err(|_| ParseError::Syntax { pos: start, msg: format!("malformed number `{text}`") })
    }

    fn ident(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        match name {
            "x" => return Ok(Expr::X),
            "pi" => return Ok(Expr::Pi),
            "e" => return Ok(Expr::E),
            _ => {}
        }
        let Some(func) = Func::from_name(name) else {
            return Err(ParseError::UnknownIdentifier { name: name.into(), pos: start });
        };
        self.expect(b'(')?;
        let mut args = vec![self.expr()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            args.push(self.expr()?);
        }
        self.expect(b')')?;
        if args.len() != 1 {
            return Err(ParseError::Arity { name: name.into(), pos: start, expected: 1, got: args.len() });
        }
        Ok(Expr::Call(func, Box::new(args.pop().expect("one argument"))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ev(s: &str, x: f64) -> f64 {
        parse_potential(s).unwrap().eval(x)
    }

    #[test]
    fn examples() {
        let v = ev("-2*30*cos(2*x)+30^2*sin(2*x)^2", 0.0);
        assert_eq!(v, -2.0 * 30.0 * 0f64.cos() + 900.0 * 0f64.sin().powi(2));
        assert_eq!(v, -60.0);
        assert_eq!(ev("x", 3.5), 3.5);
        assert_eq!(ev("1/(1+exp((x-7)/0.6))", 7.0), 0.5);
    }

    #[test]
    fn precedence() {
        assert_eq!(ev("-x^2", 3.0), -9.0);
        assert_eq!(ev("2^3^2", 0.0), 512.0);
        assert_eq!(ev("2^-1", 0.0), 0.5);
        assert_eq!(ev("1-2-3", 0.0), -4.0);
        assert_eq!(ev("8/2/2", 0.0), 2.0);
        assert_eq!(ev("2*pi", 0.0), 2.0 * std::f64::consts::PI);
        assert_eq!(ev("e", 0.0), std::f64::consts::E);
        assert_eq!(ev("1.5e2 + .5", 0.0), 150.5);
        assert_eq!(ev("--x", 2.0), 2.0);
        assert_eq!(ev("abs(-x) + sqrt(4) + log(e)", 1.0), 4.0);
    }

    #[test]
    fn errors_carry_positions() {
        match parse_potential("1 + foo(x)") {
            Err(ParseError::UnknownIdentifier { name, pos }) => {
                assert_eq!(name, "foo");
                assert_eq!(pos, 4);
            }
            other => panic!("{other:?}"),
        }
        match parse_potential("sin(x, 2)") {
            Err(ParseError::Arity { expected: 1, got: 2, pos: 0, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_potential("(x + 1") {
            Err(ParseError::Syntax { pos: 6, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_potential("x x"), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_potential(""), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_potential("2 * * x"), Err(ParseError::Syntax { pos: 4, .. })));
    }

    fn random_expr(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
        if depth == 0 || rng.gen_bool(0.25) {
            return match rng.gen_range(0..4) {
                0 => Expr::X,
                1 => Expr::Pi,
                2 => Expr::E,
                _ => Expr::Num(rng.gen_range(0.0..10.0)),
            };
        }
        let a = Box::new(random_expr(rng, depth - 1));
        match rng.gen_range(0..7) {
            0 => Expr::Neg(a),
            1 => Expr::Add(a, Box::new(random_expr(rng, depth - 1))),
            2 => Expr::Sub(a, Box::new(random_expr(rng, depth - 1))),
            3 => Expr::Mul(a, Box::new(random_expr(rng, depth - 1))),
            4 => Expr::Div(a, Box::new(random_expr(rng, depth - 1))),
            5 => Expr::Pow(a, Box::new(Expr::Num(rng.gen_range(0..4) as f64))),
            _ => {
                let fs = [Func::Sin, Func::Cos, Func::Tanh, Func::Exp, Func::Abs];
                Expr::Call(fs[rng.gen_range(0..fs.len())], a)
            }
        }
    }

    #[test]
    fn pretty_print_round_trip_is_bit_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let e = random_expr(&mut rng, 5);
            let text = e.to_string();
            let back = parse_potential(&text).unwrap_or_else(|err| panic!("{text}: {err}"));
            assert_eq!(back, e, "{text}");
            for _ in 0..100 {
                let x: f64 = rng.gen_range(-5.0..5.0);
                let (u, v) = (e.eval(x), back.eval(x));
                assert!(u.to_bits() == v.to_bits() || (u.is_nan() && v.is_nan()));
            }
        }
    }

    proptest! {
        #[test]
        fn numbers_round_trip(v in 0.0f64..1e12) {
            let e = Expr::Num(v);
            prop_assert_eq!(parse_potential(&e.to_string()).unwrap(), e);
        }
    }
}
