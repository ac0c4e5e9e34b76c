//! Expression trees for potentials `V(t)` in the single variable `t`.
//!
//! Grammar (EBNF, also documented in `docs/grammar.md`):
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" unary)?          ; right-associative
//! atom   := NUMBER | "t" | "pi" | "e" | FUNC "(" expr ")" | "(" expr ")"
//! FUNC   := "sin" | "cos" | "exp" | "log" | "sqrt" | "tanh" | "abs" | "sign"
//! ```
//!
//! Precedence is `^` over unary minus over `*` `/` over `+` `-`, so `-t^2`
//! means `-(t^2)`. Exponents must fold to constants at parse time; `t^t` is
//! rejected with the byte offset of the `^`. `sign` exists so derivatives of
//! `abs` can be printed and re-parsed; `abs` is differentiated as
//! `sign(u) u'` with the convention `sign(0) = 0`.

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Sin,
    Cos,
    Exp,
    Log,
    Sqrt,
    Tanh,
    Abs,
    Sign,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

/// Expression AST. Leaves are nonnegative literals, the named constants, or
/// the variable `t`; every interior node is one of the supported operators.
#[derive(Debug, Clone, PartialEq)]
pub enum ExprAst {
    Const(f64),
    Pi,
    E,
    Var,
    Unary(UnaryOp, Box<ExprAst>),
    Binary(BinOp, Box<ExprAst>, Box<ExprAst>),
}

// ---------------------------------------------------------------------------
// Lexing
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eof,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    /// Next token plus its starting byte offset.
    fn next(&mut self) -> Result<(Tok, usize)> {
        self.skip_ws();
        let start = self.pos;
        let Some(c) = self.src[self.pos..].chars().next() else {
            return Ok((Tok::Eof, start));
        };
        let single = |t| Ok((t, start));
        match c {
            '+' => {
                self.pos += 1;
                single(Tok::Plus)
            }
            '-' => {
                self.pos += 1;
                single(Tok::Minus)
            }
            '*' => {
                self.pos += 1;
                single(Tok::Star)
            }
            '/' => {
                self.pos += 1;
                single(Tok::Slash)
            }
            '^' => {
                self.pos += 1;
                single(Tok::Caret)
            }
            '(' => {
                self.pos += 1;
                single(Tok::LParen)
            }
            ')' => {
                self.pos += 1;
                single(Tok::RParen)
            }
            c if c.is_ascii_digit() || c == '.' => {
                let rest = &self.src[start..];
                let mut len = 0;
                let bytes = rest.as_bytes();
                while len < bytes.len() && (bytes[len].is_ascii_digit() || bytes[len] == b'.') {
                    len += 1;
                }
                // Exponent part: e/E [+-] digits, only if digits follow.
                if len < bytes.len() && (bytes[len] == b'e' || bytes[len] == b'E') {
                    let mut k = len + 1;
                    if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
                        k += 1;
                    }
                    if k < bytes.len() && bytes[k].is_ascii_digit() {
                        len = k;
                        while len < bytes.len() && bytes[len].is_ascii_digit() {
                            len += 1;
                        }
                    }
                }
                let text = &rest[..len];
                let value: f64 = text.parse().map_err(|_| Error::Syntax {
                    offset: start,
                    message: format!("invalid number literal `{text}`"),
                })?;
                self.pos += len;
                Ok((Tok::Num(value), start))
            }
            c if c.is_ascii_alphabetic() => {
                let rest = &self.src[start..];
                let len = rest
                    .find(|ch: char| !ch.is_ascii_alphanumeric() && ch != '_')
                    .unwrap_or(rest.len());
                self.pos += len;
                Ok((Tok::Ident(rest[..len].to_string()), start))
            }
            other => Err(Error::Syntax {
                offset: start,
                message: format!("unexpected character `{other}`"),
            }),
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    offset: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self> {
        let mut lexer = Lexer::new(src);
        let (tok, offset) = lexer.next()?;
        Ok(Parser { lexer, tok, offset })
    }

    fn advance(&mut self) -> Result<()> {
        let (tok, offset) = self.lexer.next()?;
        self.tok = tok;
        self.offset = offset;
        Ok(())
    }

    fn expr(&mut self) -> Result<ExprAst> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.tok {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.advance()?;
            let rhs = self.term()?;
            lhs = ExprAst::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<ExprAst> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.tok {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.advance()?;
            let rhs = self.unary()?;
            lhs = ExprAst::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<ExprAst> {
        if self.tok == Tok::Minus {
            self.advance()?;
            let inner = self.unary()?;
            return Ok(ExprAst::Unary(UnaryOp::Neg, Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<ExprAst> {
        let base = self.atom()?;
        if self.tok == Tok::Caret {
            let caret_at = self.offset;
            self.advance()?;
            let exponent = self.unary()?;
            if exponent.const_fold().is_none() {
                return Err(Error::VariableExponent { offset: caret_at });
            }
            return Ok(ExprAst::Binary(BinOp::Pow, Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ExprAst> {
        match self.tok.clone() {
            Tok::Num(v) => {
                self.advance()?;
                Ok(ExprAst::Const(v))
            }
            Tok::LParen => {
                self.advance()?;
                let inner = self.expr()?;
                if self.tok != Tok::RParen {
                    return Err(Error::Syntax {
                        offset: self.offset,
                        message: "expected `)`".into(),
                    });
                }
                self.advance()?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                let at = self.offset;
                self.advance()?;
                match name.as_str() {
                    "t" => Ok(ExprAst::Var),
                    "pi" => Ok(ExprAst::Pi),
                    "e" => Ok(ExprAst::E),
                    "sin" | "cos" | "exp" | "log" | "sqrt" | "tanh" | "abs" | "sign" => {
                        if self.tok != Tok::LParen {
                            return Err(Error::Syntax {
                                offset: self.offset,
                                message: format!("expected `(` after `{name}`"),
                            });
                        }
                        self.advance()?;
                        let arg = self.expr()?;
                        if self.tok != Tok::RParen {
                            return Err(Error::Syntax {
                                offset: self.offset,
                                message: "expected `)`".into(),
                            });
                        }
                        self.advance()?;
                        let op = match name.as_str() {
                            "sin" => UnaryOp::Sin,
                            "cos" => UnaryOp::Cos,
                            "exp" => UnaryOp::Exp,
                            "log" => UnaryOp::Log,
                            "sqrt" => UnaryOp::Sqrt,
                            "tanh" => UnaryOp::Tanh,
                            "abs" => UnaryOp::Abs,
                            "sign" => UnaryOp::Sign,
                            _ => unreachable!(),
                        };
                        Ok(ExprAst::Unary(op, Box::new(arg)))
                    }
                    _ => Err(Error::UnknownIdentifier { name, offset: at }),
                }
            }
            Tok::Eof => Err(Error::Syntax {
                offset: self.offset,
                message: "unexpected end of input".into(),
            }),
            other => Err(Error::Syntax {
                offset: self.offset,
                message: format!("unexpected token `{other:?}`"),
            }),
        }
    }
}

/// Parse a source string into an AST. Errors carry byte offsets.
pub fn parse_expression(src: &str) -> Result<ExprAst> {
    let mut p = Parser::new(src)?;
    let ast = p.expr()?;
    if p.tok != Tok::Eof {
        return Err(Error::Syntax {
            offset: p.offset,
            message: "trailing input".into(),
        });
    }
    Ok(ast)
}

// ---------------------------------------------------------------------------
// Evaluation, differentiation, printing
// ---------------------------------------------------------------------------

impl ExprAst {
    /// Evaluate at `t`. Domain violations (log of a nonpositive value, sqrt of
    /// a negative, division by zero, non-finite powers) surface as errors
    /// naming the offending subexpression.
    pub fn evaluate(&self, t: f64) -> Result<f64> {
        let fail = |node: &ExprAst, reason: &str| Error::EvalDomain {
            node: node.pretty_print(),
            t,
            reason: reason.into(),
        };
        Ok(match self {
            ExprAst::Const(c) => *c,
            ExprAst::Pi => std::f64::consts::PI,
            ExprAst::E => std::f64::consts::E,
            ExprAst::Var => t,
            ExprAst::Unary(op, a) => {
                let x = a.evaluate(t)?;
                match op {
                    UnaryOp::Neg => -x,
                    UnaryOp::Sin => x.sin(),
                    UnaryOp::Cos => x.cos(),
                    UnaryOp::Exp => {
                        let v = x.exp();
                        if !v.is_finite() {
                            return Err(fail(self, "exp overflow"));
                        }
                        v
                    }
                    UnaryOp::Log => {
                        if x <= 0.0 {
                            return Err(fail(self, "log of a nonpositive value"));
                        }
                        x.ln()
                    }
                    UnaryOp::Sqrt => {
                        if x < 0.0 {
                            return Err(fail(self, "sqrt of a negative value"));
                        }
                        x.sqrt()
                    }
                    UnaryOp::Tanh => x.tanh(),
                    UnaryOp::Abs => x.abs(),
                    UnaryOp::Sign => {
                        if x > 0.0 {
                            1.0
                        } else if x < 0.0 {
                            -1.0
                        } else {
                            0.0
                        }
                    }
                }
            }
            ExprAst::Binary(op, a, b) => {
                let x = a.evaluate(t)?;
                let y = b.evaluate(t)?;
                let v = match op {
                    BinOp::Add => x + y,
                    BinOp::Sub => x - y,
                    BinOp::Mul => x * y,
                    BinOp::Div => {
                        if y == 0.0 {
                            return Err(fail(self, "division by zero"));
                        }
                        x / y
                    }
                    BinOp::Pow => x.powf(y),
                };
                if !v.is_finite() {
                    return Err(fail(self, "non-finite result"));
                }
                v
            }
        })
    }

    /// Fold to a constant if the subtree contains no `t`; `None` otherwise.
    pub fn const_fold(&self) -> Option<f64> {
        match self {
            ExprAst::Const(c) => Some(*c),
            ExprAst::Pi => Some(std::f64::consts::PI),
            ExprAst::E => Some(std::f64::consts::E),
            ExprAst::Var => None,
            ExprAst::Unary(op, a) => {
                let x = a.const_fold()?;
                Some(match op {
                    UnaryOp::Neg => -x,
                    UnaryOp::Sin => x.sin(),
                    UnaryOp::Cos => x.cos(),
                    UnaryOp::Exp => x.exp(),
                    UnaryOp::Log => x.ln(),
                    UnaryOp::Sqrt => x.sqrt(),
                    UnaryOp::Tanh => x.tanh(),
                    UnaryOp::Abs => x.abs(),
                    UnaryOp::Sign => {
                        if x > 0.0 {
                            1.0
                        } else if x < 0.0 {
                            -1.0
                        } else {
                            0.0
                        }
                    }
                })
            }
            ExprAst::Binary(op, a, b) => {
                let x = a.const_fold()?;
                let y = b.const_fold()?;
                Some(match op {
                    BinOp::Add => x + y,
                    BinOp::Sub => x - y,
                    BinOp::Mul => x * y,
                    BinOp::Div => x / y,
                    BinOp::Pow => x.powf(y),
                })
            }
        }
    }

    /// Exact symbolic derivative with respect to `t`, algebraically
    /// simplified. Repeated application yields higher derivatives. `abs` is
    /// differentiated as `sign(u) u'` (so the second derivative of `abs`
    /// vanishes away from the kink), which is the convention the potential
    /// validator relies on.
    pub fn differentiate(&self) -> ExprAst {
        use BinOp::*;
        use ExprAst::*;
        let d = match self {
            Const(_) | Pi | E => Const(0.0),
            Var => Const(1.0),
            Unary(op, a) => {
                let da = a.differentiate();
                let a = a.as_ref().clone();
                match op {
                    UnaryOp::Neg => Unary(UnaryOp::Neg, Box::new(da)),
                    UnaryOp::Sin => mul(Unary(UnaryOp::Cos, Box::new(a)), da),
                    UnaryOp::Cos => Unary(
                        UnaryOp::Neg,
                        Box::new(mul(Unary(UnaryOp::Sin, Box::new(a)), da)),
                    ),
                    UnaryOp::Exp => mul(Unary(UnaryOp::Exp, Box::new(a)), da),
                    UnaryOp::Log => Binary(Div, Box::new(da), Box::new(a)),
                    UnaryOp::Sqrt => Binary(
                        Div,
                        Box::new(da),
                        Box::new(mul(Const(2.0), Unary(UnaryOp::Sqrt, Box::new(a)))),
                    ),
                    UnaryOp::Tanh => {
                        let th = Unary(UnaryOp::Tanh, Box::new(a));
                        let sech2 = Binary(
                            Sub,
                            Box::new(Const(1.0)),
                            Box::new(Binary(Pow, Box::new(th), Box::new(Const(2.0)))),
                        );
                        mul(sech2, da)
                    }
                    UnaryOp::Abs => mul(Unary(UnaryOp::Sign, Box::new(a)), da),
                    UnaryOp::Sign => Const(0.0),
                }
            }
            Binary(op, a, b) => {
                let da = a.differentiate();
                let db = b.differentiate();
                let (a, b) = (a.as_ref().clone(), b.as_ref().clone());
                match op {
                    Add => Binary(Add, Box::new(da), Box::new(db)),
                    Sub => Binary(Sub, Box::new(da), Box::new(db)),
                    Mul => Binary(
                        Add,
                        Box::new(mul(da, b.clone())),
                        Box::new(mul(a, db)),
                    ),
                    Div => {
                        // (a/b)' = (a' b - a b') / b^2
                        let num = Binary(
                            Sub,
                            Box::new(mul(da, b.clone())),
                            Box::new(mul(a, db)),
                        );
                        let den = Binary(Pow, Box::new(b), Box::new(Const(2.0)));
                        Binary(Div, Box::new(num), Box::new(den))
                    }
                    Pow => {
                        // Exponents are constant by construction.
                        let c = b.const_fold().expect("parser guarantees constant exponent");
                        let power = Binary(Pow, Box::new(a.clone()), Box::new(Const(c - 1.0)));
                        mul(mul(Const(c), power), da)
                    }
                }
            }
        };
        d.simplified()
    }

    /// Light algebraic cleanup: constant folding plus the identities
    /// x+0, x-0, 0-x, x*0, x*1, 0/x, x^0, x^1. Keeps repeated derivatives of
    /// the builtin wells compact.
    pub fn simplified(&self) -> ExprAst {
        use BinOp::*;
        use ExprAst::*;
        let node = match self {
            Unary(op, a) => Unary(*op, Box::new(a.simplified())),
            Binary(op, a, b) => Binary(*op, Box::new(a.simplified()), Box::new(b.simplified())),
            leaf => leaf.clone(),
        };
        // Fold fully-constant subtrees, but keep named constants as leaves.
        if !matches!(node, Const(_) | Pi | E) {
            if let Some(v) = node.const_fold() {
                if v.is_finite() {
                    return Const(v);
                }
            }
        }
        let is_zero = |e: &ExprAst| matches!(e, Const(c) if *c == 0.0);
        let is_one = |e: &ExprAst| matches!(e, Const(c) if *c == 1.0);
        match &node {
            Unary(UnaryOp::Neg, a) if is_zero(a) => Const(0.0),
            Binary(Add, a, b) if is_zero(a) => b.as_ref().clone(),
            Binary(Add, a, b) if is_zero(b) => a.as_ref().clone(),
            Binary(Sub, a, b) if is_zero(b) => a.as_ref().clone(),
            Binary(Sub, a, b) if is_zero(a) => Unary(UnaryOp::Neg, b.clone()),
            Binary(Mul, a, _) if is_zero(a) => Const(0.0),
            Binary(Mul, _, b) if is_zero(b) => Const(0.0),
            Binary(Mul, a, b) if is_one(a) => b.as_ref().clone(),
            Binary(Mul, a, b) if is_one(b) => a.as_ref().clone(),
            Binary(Div, a, _) if is_zero(a) => Const(0.0),
            Binary(Div, a, b) if is_one(b) => a.as_ref().clone(),
            Binary(Pow, _, b) if is_zero(b) => Const(1.0),
            Binary(Pow, a, b) if is_one(b) => a.as_ref().clone(),
            _ => node,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            ExprAst::Binary(BinOp::Add | BinOp::Sub, ..) => 1,
            ExprAst::Binary(BinOp::Mul | BinOp::Div, ..) => 2,
            ExprAst::Unary(UnaryOp::Neg, _) => 3,
            ExprAst::Binary(BinOp::Pow, ..) => 4,
            _ => 5,
        }
    }

    /// Render with the minimal parentheses that make re-parsing reproduce the
    /// same tree. `parse_expression(x.pretty_print()) == x` for every tree the
    /// parser can produce.
    pub fn pretty_print(&self) -> String {
        fn wrap(child: &ExprAst, min_prec: u8) -> String {
            let s = child.pretty_print();
            if child.precedence() < min_prec {
                format!("({s})")
            } else {
                s
            }
        }
        match self {
            ExprAst::Const(c) => {
                if *c < 0.0 || !c.is_finite() {
                    // Not lexer-producible; print a semantically equal form.
                    format!("(0 - {})", -c)
                } else {
                    format!("{c}")
                }
            }
            ExprAst::Pi => "pi".into(),
            ExprAst::E => "e".into(),
            ExprAst::Var => "t".into(),
            ExprAst::Unary(UnaryOp::Neg, a) => format!("-{}", wrap(a, 3)),
            ExprAst::Unary(op, a) => {
                let name = match op {
                    UnaryOp::Sin => "sin",
                    UnaryOp::Cos => "cos",
                    UnaryOp::Exp => "exp",
                    UnaryOp::Log => "log",
                    UnaryOp::Sqrt => "sqrt",
                    UnaryOp::Tanh => "tanh",
                    UnaryOp::Abs => "abs",
                    UnaryOp::Sign => "sign",
                    UnaryOp::Neg => unreachable!(),
                };
                format!("{name}({})", a.pretty_print())
            }
            ExprAst::Binary(op, a, b) => match op {
                BinOp::Add => format!("{} + {}", wrap(a, 1), wrap(b, 2)),
                BinOp::Sub => format!("{} - {}", wrap(a, 1), wrap(b, 2)),
                BinOp::Mul => format!("{}*{}", wrap(a, 2), wrap(b, 3)),
                BinOp::Div => format!("{}/{}", wrap(a, 2), wrap(b, 3)),
                // Right-associative: parenthesize a left child that is
                // itself a power.
                BinOp::Pow => format!("{}^{}", wrap(a, 5), wrap(b, 3)),
            },
        }
    }
}

fn mul(a: ExprAst, b: ExprAst) -> ExprAst {
    ExprAst::Binary(BinOp::Mul, Box::new(a), Box::new(b))
}

impl std::fmt::Display for ExprAst {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.pretty_print())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(src: &str) -> ExprAst {
        parse_expression(src).unwrap()
    }

    #[test]
    fn parses_quartic() {
        let ast = p("t^2 + 0.1*t^4");
        assert!((ast.evaluate(1.5).unwrap() - 2.75625).abs() < 1e-15);
    }

    #[test]
    fn precedence_pow_over_neg() {
        // -t^2 at t=3 must be -9, not 9.
        assert_eq!(p("-t^2").evaluate(3.0).unwrap(), -9.0);
        // ^ binds tighter than *: 2*t^2 at 3 is 18.
        assert_eq!(p("2*t^2").evaluate(3.0).unwrap(), 18.0);
    }

    #[test]
    fn pow_right_associative() {
        // 2^3^2 = 2^9 = 512.
        assert_eq!(p("2^3^2").evaluate(0.0).unwrap(), 512.0);
    }

    #[test]
    fn named_constants() {
        assert!((p("pi").evaluate(0.0).unwrap() - std::f64::consts::PI).abs() < 1e-15);
        assert!((p("e").evaluate(0.0).unwrap() - std::f64::consts::E).abs() < 1e-15);
        assert!((p("2*sin(t^3)").evaluate(0.0).unwrap()).abs() == 0.0);
    }

    #[test]
    fn syntax_error_offsets() {
        match parse_expression("t^2 + * 3") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse_expression("t + snot(t)") {
            Err(Error::UnknownIdentifier { name, offset }) => {
                assert_eq!(name, "snot");
                assert_eq!(offset, 4);
            }
            other => panic!("expected unknown identifier, got {other:?}"),
        }
    }

    #[test]
    fn variable_exponent_rejected() {
        match parse_expression("t^t") {
            Err(Error::VariableExponent { offset }) => assert_eq!(offset, 1),
            other => panic!("expected variable-exponent error, got {other:?}"),
        }
        // Constant-foldable exponents are fine, even composite ones.
        assert!(parse_expression("t^(1+1)").is_ok());
    }

    #[test]
    fn derivative_power_rule() {
        let d = p("t^2").differentiate();
        assert_eq!(d.evaluate(3.0).unwrap(), 6.0);
        let d2 = p("t^2 + 0.1*t^4").differentiate().differentiate();
        assert!((d2.evaluate(0.0).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn derivative_chain_rule() {
        // d/dt sin(t^3) = 3 t^2 cos(t^3); at t=1 this is 3 cos(1).
        let d = p("sin(t^3)").differentiate();
        assert!((d.evaluate(1.0).unwrap() - 1.6209069176044193).abs() < 1e-14);
    }

    #[test]
    fn derivative_quotient_and_log() {
        let d = p("log(t)").differentiate();
        assert!((d.evaluate(2.0).unwrap() - 0.5).abs() < 1e-15);
        let d = p("t/(1 + t^2)").differentiate();
        // (1 - t^2)/(1+t^2)^2 at t=2: -3/25.
        assert!((d.evaluate(2.0).unwrap() + 0.12).abs() < 1e-15);
    }

    #[test]
    fn abs_differentiates_to_sign() {
        let d = p("abs(t)").differentiate();
        assert_eq!(d.evaluate(2.0).unwrap(), 1.0);
        assert_eq!(d.evaluate(-2.0).unwrap(), -1.0);
        assert_eq!(d.evaluate(0.0).unwrap(), 0.0);
    }

    #[test]
    fn domain_errors_name_the_node() {
        match p("log(t)").evaluate(-1.0) {
            Err(Error::EvalDomain { node, .. }) => assert_eq!(node, "log(t)"),
            other => panic!("expected domain error, got {other:?}"),
        }
        assert!(p("sqrt(t)").evaluate(-0.5).is_err());
        assert!(p("1/t").evaluate(0.0).is_err());
    }

    #[test]
    fn round_trip_structural() {
        for src in [
            "t^2 + 0.1*t^4",
            "-t^2",
            "2*(exp(t) + exp(-t) - 2)",
            "t^2 + 0.3*t^3*exp(-t^2)",
            "sin(cos(t)) - tanh(t/2)",
            "(t + 1)*(t - 1)",
            "t^2^3",
            "1 - t - 2",
            "t/2/3",
            "pi*t + e",
        ] {
            let ast = p(src);
            let printed = ast.pretty_print();
            let reparsed = parse_expression(&printed)
                .unwrap_or_else(|e| panic!("reparse of `{printed}` failed: {e}"));
            assert_eq!(ast, reparsed, "round trip failed for `{src}` -> `{printed}`");
        }
    }

    #[test]
    fn subtraction_stays_left_associative() {
        // 1 - t - 2 must print so it re-parses as (1 - t) - 2.
        let ast = p("1 - t - 2");
        assert_eq!(ast.evaluate(0.0).unwrap(), -1.0);
        let rt = parse_expression(&ast.pretty_print()).unwrap();
        assert_eq!(rt.evaluate(0.0).unwrap(), -1.0);
    }
}
