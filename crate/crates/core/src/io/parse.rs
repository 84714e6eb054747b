//! Recursive-descent parser for integrands.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | factor
//! factor := atom ['^' power]
//! power  := ['-'] integer | '(' ['-'] integer ['/' integer] ')'
//! atom   := integer | ident | '(' expr ')' | 'exp(' expr ')' | 'log(' expr ')'
//! ```
//!
//! A fractional power is accepted only on a rational base (`2^(1/2)`);
//! other roots must be written as `exp(q*log(u))`. `I` is the imaginary
//! unit unless declared otherwise.

use std::fmt;

use num_bigint::BigInt;

use crate::kernel::BigRat;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigInt),
    Var(String),
    Sym(String),
    Imag,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, BigRat),
    Exp(Box<Expr>),
    Log(Box<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(n) => write!(f, "{}", n),
            Expr::Var(v) => write!(f, "Var {}", v),
            Expr::Sym(s) => write!(f, "Const {}", s),
            Expr::Imag => write!(f, "I"),
            Expr::Add(a, b) => write!(f, "Add({}, {})", a, b),
            Expr::Sub(a, b) => write!(f, "Sub({}, {})", a, b),
            Expr::Mul(a, b) => write!(f, "Mul({}, {})", a, b),
            Expr::Div(a, b) => write!(f, "Div({}, {})", a, b),
            Expr::Neg(a) => write!(f, "Neg({})", a),
            Expr::Pow(a, q) => write!(f, "Pow({}, {})", a, q),
            Expr::Exp(a) => write!(f, "Exp({})", a),
            Expr::Log(a) => write!(f, "Log({})", a),
        }
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
#[error("parse error at position {pos}: {msg}")]
pub struct ParseError {
    /// Character offset into the input.
    pub pos: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().unwrap()), start));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else if c == '−' {
            out.push((Tok::Op('-'), i));
            i += 1;
        } else {
            return Err(ParseError {
                pos: i,
                msg: format!("unexpected character '{}'", c),
            });
        }
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    var: &'a str,
    consts: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Op(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.term()?;
        loop {
            if self.eat('+') {
                e = Expr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.eat('-') {
                e = Expr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
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

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.factor()
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        let neg = self.eat('-');
        match self.peek().clone() {
            Tok::Int(n) => {
                self.at += 1;
                Ok(if neg { -n } else { n })
            }
            _ => self.err("exponents must be integer literals; write other powers as exp(q*log(u))"),
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let start = self.pos();
        let q = if self.eat('(') {
            let n = self.integer()?;
            let d = if self.eat('/') { self.integer()? } else { BigInt::from(1) };
            self.expect(')')?;
            if d == BigInt::from(0) {
                return Err(ParseError { pos: start, msg: "zero denominator in exponent".into() });
            }
            BigRat::new(n, d)
        } else {
            BigRat::from_integer(self.integer()?)
        };
        if !q.is_integer() && !matches!(base, Expr::Num(_)) {
            return Err(ParseError {
                pos: start,
                msg: "non-integer powers need a rational base; write exp(q*log(u)) instead".into(),
            });
        }
        Ok(Expr::Pow(Box::new(base), q))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.at += 1;
                Ok(Expr::Num(n))
            }
            Tok::Op('(') => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.at += 1;
                if name == "exp" || name == "log" {
                    self.expect('(')?;
                    let e = self.expr()?;
                    self.expect(')')?;
                    return Ok(if name == "exp" { Expr::Exp(Box::new(e)) } else { Expr::Log(Box::new(e)) });
                }
                if name == self.var {
                    Ok(Expr::Var(name))
                } else if self.consts.contains(&name) {
                    Ok(Expr::Sym(name))
                } else if name == "I" {
                    Ok(Expr::Imag)
                } else {
                    Err(ParseError {
                        pos,
                        msg: format!("undeclared identifier '{}'", name),
                    })
                }
            }
            Tok::End => self.err("unexpected end of input"),
            Tok::Op(c) => self.err(format!("unexpected '{}'", c)),
        }
    }
}

/// Parses `text` with integration variable `var` and declared constant
/// symbols `consts`.
pub fn parse(text: &str, var: &str, consts: &[String]) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        var,
        consts,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Result<Expr, ParseError> {
        parse(s, "x", &["alpha".to_string()])
    }

    #[test]
    fn shapes() {
        assert_eq!(p("exp(x)/x").unwrap().to_string(), "Div(Exp(Var x), Var x)");
        assert_eq!(
            p("log(2*x)+log(x)").unwrap().to_string(),
            "Add(Log(Mul(2, Var x)), Log(Var x))"
        );
        assert_eq!(p("-x^2").unwrap().to_string(), "Neg(Pow(Var x, 2))");
        assert_eq!(p("x^-1").unwrap().to_string(), "Pow(Var x, -1)");
        assert_eq!(p("2^(1/2)").unwrap().to_string(), "Pow(2, 1/2)");
    }

    #[test]
    fn non_integer_powers_rejected() {
        let e = p("x^(alpha-1)").unwrap_err();
        assert_eq!(e.pos, 3);
        assert!(p("x^(1/2)").is_err());
        assert!(p("exp((alpha-1)*log(x))").is_ok());
    }

    #[test]
    fn errors_have_positions() {
        let e = p("x + y").unwrap_err();
        assert_eq!(e.pos, 4);
        assert!(e.msg.contains("undeclared"));
        assert_eq!(p("(x").unwrap_err().pos, 2);
        assert_eq!(p("x $").unwrap_err().pos, 2);
    }
}
