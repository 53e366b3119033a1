//! Arithmetic expressions in one free variable, for stress histories σ(t)
//! and constitutive laws σ(eps) given on the command line.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?          (right associative)
//! primary := number | var | func '(' expr (',' expr)* ')' | '(' expr ')'
//! func    := exp | log | sqrt | sin | cos | abs | pow
//! ```
//!
//! Unary minus binds looser than `^`, so `-2^2 = -4`, and `2^3^2 = 2^9`.
//! There is no implicit multiplication: `2t` is a syntax error.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: expected {expected}, found {found}")]
    Syntax {
        offset: usize,
        expected: String,
        found: String,
    },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { offset: usize, name: String },
}

impl ParseError {
    /// Byte offset into the source where the error was detected.
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::UnknownIdentifier { offset, .. } => {
                *offset
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("division by zero in `{expr}`")]
    DivisionByZero { expr: String },
    #[error("argument of {func} out of domain in `{expr}`")]
    Domain { func: &'static str, expr: String },
    #[error("non-finite value in `{expr}`")]
    NonFinite { expr: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Log,
    Sqrt,
    Sin,
    Cos,
    Abs,
    Pow,
}

impl Func {
    fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "abs" => Func::Abs,
            "pow" => Func::Pow,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Abs => "abs",
            Func::Pow => "pow",
        }
    }

    pub fn arity(self) -> usize {
        if self == Func::Pow {
            2
        } else {
            1
        }
    }
}

/// Syntax tree. The free variable is anonymous here; [`Expression`] carries
/// its name.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var,
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Vec<Expr>),
}

/// A parsed expression together with the name of its free variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Expression {
    var: String,
    root: Expr,
}

/// Parse `src` with `var_name` as the only admissible identifier besides
/// the built-in functions.
pub fn parse(src: &str, var_name: &str) -> Result<Expression, ParseError> {
    let tokens = lex(src)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        var: var_name,
    };
    let root = p.expr()?;
    let tok = p.peek();
    if tok.kind != Tok::End {
        let expected = if matches!(tok.kind, Tok::Ident(_) | Tok::Num(_) | Tok::LParen) {
            "an operator (implicit multiplication is not supported)"
        } else {
            "an operator or end of input"
        };
        return Err(ParseError::Syntax {
            offset: tok.offset,
            expected: expected.into(),
            found: tok.kind.describe(),
        });
    }
    Ok(Expression {
        var: var_name.to_string(),
        root,
    })
}

impl Expression {
    pub fn new(var: impl Into<String>, root: Expr) -> Self {
        Expression {
            var: var.into(),
            root,
        }
    }

    pub fn var_name(&self) -> &str {
        &self.var
    }

    pub fn root(&self) -> &Expr {
        &self.root
    }

    /// Value with the free variable bound to `x`. Never returns NaN or ±∞.
    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        eval_node(&self.root, x, &self.var)
    }
}

impl fmt::Display for Expression {
    /// Fully parenthesized; reparses to an equivalent expression.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Shown(&self.root, &self.var))
    }
}

struct Shown<'a>(&'a Expr, &'a str);

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = self.1;
        match self.0 {
            Expr::Num(v) if *v < 0.0 => write!(f, "(-{:?})", -v),
            Expr::Num(v) => write!(f, "{v:?}"),
            Expr::Var => f.write_str(var),
            Expr::Neg(e) => write!(f, "(-{})", Shown(e, var)),
            Expr::Bin(op, l, r) => {
                write!(f, "({} {} {})", Shown(l, var), op.symbol(), Shown(r, var))
            }
            Expr::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{}", Shown(a, var))?;
                }
                f.write_str(")")
            }
        }
    }
}

fn eval_node(e: &Expr, x: f64, var: &str) -> Result<f64, EvalError> {
    let text = || Shown(e, var).to_string();
    let v = match e {
        Expr::Num(v) => *v,
        Expr::Var => x,
        Expr::Neg(a) => -eval_node(a, x, var)?,
        Expr::Bin(op, l, r) => {
            let a = eval_node(l, x, var)?;
            let b = eval_node(r, x, var)?;
            match op {
                BinOp::Add => a + b,
                BinOp::Sub => a - b,
                BinOp::Mul => a * b,
                BinOp::Div => {
                    if b == 0.0 {
                        return Err(EvalError::DivisionByZero { expr: text() });
                    }
                    a / b
                }
                BinOp::Pow => a.powf(b),
            }
        }
        Expr::Call(func, args) => {
            let a = eval_node(&args[0], x, var)?;
            match func {
                Func::Exp => a.exp(),
                Func::Log => {
                    if a <= 0.0 {
                        return Err(EvalError::Domain {
                            func: "log",
                            expr: text(),
                        });
                    }
                    a.ln()
                }
                Func::Sqrt => {
                    if a < 0.0 {
                        return Err(EvalError::Domain {
                            func: "sqrt",
                            expr: text(),
                        });
                    }
                    a.sqrt()
                }
                Func::Sin => a.sin(),
                Func::Cos => a.cos(),
                Func::Abs => a.abs(),
                Func::Pow => a.powf(eval_node(&args[1], x, var)?),
            }
        }
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(EvalError::NonFinite { expr: text() })
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    Comma,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(v) => format!("number {v}"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Op(c) => format!("`{c}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: Tok,
    offset: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                // exponent only if followed by a digit (optionally signed)
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let text = &src[start..i];
                let v: f64 = text.parse().map_err(|_| ParseError::Syntax {
                    offset: start,
                    expected: "a number".into(),
                    found: format!("`{text}`"),
                })?;
                out.push(Token {
                    kind: Tok::Num(v),
                    offset: start,
                });
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Token {
                    kind: Tok::Ident(src[start..i].to_string()),
                    offset: start,
                });
            }
            b'+' | b'-' | b'*' | b'/' | b'^' => {
                i += 1;
                out.push(Token {
                    kind: Tok::Op(c as char),
                    offset: start,
                });
            }
            b'(' | b')' | b',' => {
                i += 1;
                let kind = match c {
                    b'(' => Tok::LParen,
                    b')' => Tok::RParen,
                    _ => Tok::Comma,
                };
                out.push(Token {
                    kind,
                    offset: start,
                });
            }
            _ => {
                let ch = src[start..].chars().next().unwrap();
                return Err(ParseError::Syntax {
                    offset: start,
                    expected: "an expression".into(),
                    found: format!("character `{ch}`"),
                });
            }
        }
    }
    out.push(Token {
        kind: Tok::End,
        offset: src.len(),
    });
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    var: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.kind != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, kind: Tok, what: &str) -> Result<(), ParseError> {
        let t = self.bump();
        if t.kind == kind {
            Ok(())
        } else {
            Err(ParseError::Syntax {
                offset: t.offset,
                expected: what.into(),
                found: t.kind.describe(),
            })
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        while let Tok::Op(c @ ('+' | '-')) = self.peek().kind {
            self.bump();
            let rhs = self.term()?;
            let op = if c == '+' { BinOp::Add } else { BinOp::Sub };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while let Tok::Op(c @ ('*' | '/')) = self.peek().kind {
            self.bump();
            let rhs = self.unary()?;
            let op = if c == '*' { BinOp::Mul } else { BinOp::Div };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek().kind == Tok::Op('-') {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if self.peek().kind == Tok::Op('^') {
            self.bump();
            let exponent = self.unary()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let t = self.bump();
        match t.kind {
            Tok::Num(v) => Ok(Expr::Num(v)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if let Some(func) = Func::from_name(&name) {
                    self.expect(Tok::LParen, &format!("`(` after {name}"))?;
                    let mut args = vec![self.expr()?];
                    while self.peek().kind == Tok::Comma {
                        self.bump();
                        args.push(self.expr()?);
                    }
                    let close = self.peek().offset;
                    self.expect(Tok::RParen, "`,` or `)`")?;
                    if args.len() != func.arity() {
                        return Err(ParseError::Syntax {
                            offset: close,
                            expected: format!("{} argument(s) to {name}", func.arity()),
                            found: format!("{} argument(s)", args.len()),
                        });
                    }
                    Ok(Expr::Call(func, args))
                } else if name == self.var {
                    Ok(Expr::Var)
                } else {
                    Err(ParseError::UnknownIdentifier {
                        offset: t.offset,
                        name,
                    })
                }
            }
            other => Err(ParseError::Syntax {
                offset: t.offset,
                expected: "an expression".into(),
                found: other.describe(),
            }),
        }
    }
}
