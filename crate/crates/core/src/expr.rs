//! Minimal arithmetic expression language for problem files.
//!
//! Problem files declare p(x), q(x), f(x, y, w) and phi(s) as strings; this
//! module parses them into an AST over a declared variable set and evaluates
//! them in IEEE double precision. The grammar (see docs/GRAMMAR at the
//! workspace root) is conventional:
//!
//! - `+ - * /` with the usual precedence, `^` for powers;
//! - `^` is right-associative and binds tighter than unary minus, so
//!   `-x^2` is `-(x^2)` and `2^3^2` is `2^(3^2)`;
//! - functions: `sin cos exp log sqrt abs` (one argument) and
//!   `pow min max` (two arguments); `log` is the natural logarithm;
//! - no implicit multiplication: `x y` is a syntax error.
//!
//! Evaluation never returns a silent NaN or infinity: any domain problem
//! (division by zero, `log`/`sqrt` out of range, overflow) is reported as an
//! error carrying the offending subexpression.

use std::fmt;

/// Errors from parsing or evaluating an expression.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExprError {
    /// Malformed input; `offset` is a byte offset into the source text.
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    /// Identifier that is neither a declared variable nor a function.
    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    /// Function called with the wrong number of arguments.
    #[error("function `{name}` expects {expected} argument(s), got {got} (offset {offset})")]
    WrongArity {
        name: String,
        expected: usize,
        got: usize,
        offset: usize,
    },
    /// Evaluation left the real domain or overflowed.
    #[error("domain error in `{subexpr}`: {detail}")]
    Domain { subexpr: String, detail: String },
    /// Binding slice did not match the declared variable set.
    #[error("expected {expected} variable bindings, got {got}")]
    BindingMismatch { expected: usize, got: usize },
}

/// Built-in functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Log,
    Sqrt,
    Abs,
    Pow,
    Min,
    Max,
}

impl Func {
    fn lookup(name: &str) -> Option<(Func, usize)> {
        Some(match name {
            "sin" => (Func::Sin, 1),
            "cos" => (Func::Cos, 1),
            "exp" => (Func::Exp, 1),
            "log" => (Func::Log, 1),
            "sqrt" => (Func::Sqrt, 1),
            "abs" => (Func::Abs, 1),
            "pow" => (Func::Pow, 2),
            "min" => (Func::Min, 2),
            "max" => (Func::Max, 2),
            _ => return None,
        })
    }

    fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
            Func::Pow => "pow",
            Func::Min => "min",
            Func::Max => "max",
        }
    }

    fn arity(self) -> usize {
        match self {
            Func::Pow | Func::Min | Func::Max => 2,
            _ => 1,
        }
    }
}

/// Expression AST. Variables are indices into the declared variable set.
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Number(f64),
    Var(usize),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, Box<Node>),
    Call(Func, Vec<Node>),
}

/// A parsed expression together with its declared variable names.
#[derive(Debug, Clone, PartialEq)]
pub struct Expression {
    ast: Node,
    vars: Vec<String>,
    source: String,
}

impl Expression {
    /// Parse `text` over the declared variable set.
    pub fn parse(text: &str, vars: &[&str]) -> Result<Self, ExprError> {
        let mut parser = Parser::new(text, vars)?;
        let ast = parser.parse_expr()?;
        parser.expect_end()?;
        Ok(Expression {
            ast,
            vars: vars.iter().map(|s| s.to_string()).collect(),
            source: text.to_string(),
        })
    }

    /// Evaluate with one binding per declared variable, in declaration order.
    pub fn eval(&self, bindings: &[f64]) -> Result<f64, ExprError> {
        if bindings.len() != self.vars.len() {
            return Err(ExprError::BindingMismatch {
                expected: self.vars.len(),
                got: bindings.len(),
            });
        }
        eval_node(&self.ast, bindings, &self.vars)
    }

    /// The declared variable names.
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// The original source text.
    pub fn source(&self) -> &str {
        &self.source
    }

    /// Structural access for tests.
    pub fn ast(&self) -> &Node {
        &self.ast
    }

    /// True if the expression mentions the variable at `index`.
    pub fn uses_var(&self, index: usize) -> bool {
        fn walk(n: &Node, index: usize) -> bool {
            match n {
                Node::Var(i) => *i == index,
                Node::Number(_) => false,
                Node::Neg(a) => walk(a, index),
                Node::Add(a, b)
                | Node::Sub(a, b)
                | Node::Mul(a, b)
                | Node::Div(a, b)
                | Node::Pow(a, b) => walk(a, index) || walk(b, index),
                Node::Call(_, args) => args.iter().any(|a| walk(a, index)),
            }
        }
        walk(&self.ast, index)
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_node(f, &self.ast, &self.vars, 0)
    }
}

fn eval_node(node: &Node, bindings: &[f64], vars: &[String]) -> Result<f64, ExprError> {
    let check = |v: f64, n: &Node| -> Result<f64, ExprError> {
        if v.is_finite() {
            Ok(v)
        } else {
            Err(ExprError::Domain {
                subexpr: render(n, vars),
                detail: format!("result is {v}"),
            })
        }
    };
    match node {
        Node::Number(v) => Ok(*v),
        Node::Var(i) => Ok(bindings[*i]),
        Node::Neg(a) => Ok(-eval_node(a, bindings, vars)?),
        Node::Add(a, b) => check(eval_node(a, bindings, vars)? + eval_node(b, bindings, vars)?, node),
        Node::Sub(a, b) => check(eval_node(a, bindings, vars)? - eval_node(b, bindings, vars)?, node),
        Node::Mul(a, b) => check(eval_node(a, bindings, vars)? * eval_node(b, bindings, vars)?, node),
        Node::Div(a, b) => {
            let num = eval_node(a, bindings, vars)?;
            let den = eval_node(b, bindings, vars)?;
            if den == 0.0 {
                return Err(ExprError::Domain {
                    subexpr: render(node, vars),
                    detail: "division by zero".into(),
                });
            }
            check(num / den, node)
        }
        Node::Pow(a, b) => {
            let base = eval_node(a, bindings, vars)?;
            let exp = eval_node(b, bindings, vars)?;
            check(base.powf(exp), node)
        }
        Node::Call(func, args) => {
            let a0 = eval_node(&args[0], bindings, vars)?;
            let v = match func {
                Func::Sin => a0.sin(),
                Func::Cos => a0.cos(),
                Func::Exp => a0.exp(),
                Func::Log => {
                    if a0 <= 0.0 {
                        return Err(ExprError::Domain {
                            subexpr: render(node, vars),
                            detail: format!("log of non-positive value {a0}"),
                        });
                    }
                    a0.ln()
                }
                Func::Sqrt => {
                    if a0 < 0.0 {
                        return Err(ExprError::Domain {
                            subexpr: render(node, vars),
                            detail: format!("sqrt of negative value {a0}"),
                        });
                    }
                    a0.sqrt()
                }
                Func::Abs => a0.abs(),
                Func::Pow | Func::Min | Func::Max => {
                    let a1 = eval_node(&args[1], bindings, vars)?;
                    match func {
                        Func::Pow => a0.powf(a1),
                        Func::Min => a0.min(a1),
                        Func::Max => a0.max(a1),
                        _ => unreachable!(),
                    }
                }
            };
            check(v, node)
        }
    }
}

// ---------------------------------------------------------------------------
// printing

fn render(node: &Node, vars: &[String]) -> String {
    struct R<'a>(&'a Node, &'a [String]);
    impl fmt::Display for R<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write_node(f, self.0, self.1, 0)
        }
    }
    R(node, vars).to_string()
}

// Precedence levels: Add/Sub 1, Mul/Div 2, Neg 3, Pow 4, atoms 5.
fn prec(node: &Node) -> u8 {
    match node {
        Node::Add(..) | Node::Sub(..) => 1,
        Node::Mul(..) | Node::Div(..) => 2,
        Node::Neg(..) => 3,
        Node::Pow(..) => 4,
        Node::Number(_) | Node::Var(_) | Node::Call(..) => 5,
    }
}

fn write_node(f: &mut fmt::Formatter<'_>, node: &Node, vars: &[String], min_prec: u8) -> fmt::Result {
    let p = prec(node);
    let parens = p < min_prec;
    if parens {
        write!(f, "(")?;
    }
    match node {
        Node::Number(v) => write!(f, "{v}")?,
        Node::Var(i) => write!(f, "{}", vars[*i])?,
        Node::Neg(a) => {
            write!(f, "-")?;
            write_node(f, a, vars, 3)?;
        }
        Node::Add(a, b) => {
            write_node(f, a, vars, 1)?;
            write!(f, " + ")?;
            write_node(f, b, vars, 2)?;
        }
        Node::Sub(a, b) => {
            write_node(f, a, vars, 1)?;
            write!(f, " - ")?;
            write_node(f, b, vars, 2)?;
        }
        Node::Mul(a, b) => {
            write_node(f, a, vars, 2)?;
            write!(f, "*")?;
            write_node(f, b, vars, 3)?;
        }
        Node::Div(a, b) => {
            write_node(f, a, vars, 2)?;
            write!(f, "/")?;
            write_node(f, b, vars, 3)?;
        }
        Node::Pow(a, b) => {
            // left operand must be an atom; exponent may be a unary chain
            write_node(f, a, vars, 5)?;
            write!(f, "^")?;
            write_node(f, b, vars, 3)?;
        }
        Node::Call(func, args) => {
            write!(f, "{}(", func.name())?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write_node(f, a, vars, 0)?;
            }
            write!(f, ")")?;
        }
    }
    if parens {
        write!(f, ")")?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// lexer + recursive-descent parser

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
    Comma,
}

struct Parser<'v> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_offset: usize,
    vars: &'v [&'v str],
}

impl<'v> Parser<'v> {
    fn new(text: &str, vars: &'v [&'v str]) -> Result<Self, ExprError> {
        if text.trim().is_empty() {
            return Err(ExprError::Syntax {
                offset: 0,
                message: "empty expression".into(),
            });
        }
        let toks = lex(text)?;
        Ok(Parser {
            toks,
            pos: 0,
            end_offset: text.len(),
            vars,
        })
    }

    fn peek(&self) -> Option<&(Tok, usize)> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.end_offset, |t| t.1)
    }

    fn expect_end(&self) -> Result<(), ExprError> {
        if let Some((tok, offset)) = self.peek() {
            return Err(ExprError::Syntax {
                offset: *offset,
                message: format!("unexpected `{}`", tok_text(tok)),
            });
        }
        Ok(())
    }

    fn parse_expr(&mut self) -> Result<Node, ExprError> {
        let mut lhs = self.parse_term()?;
        while let Some((tok, _)) = self.peek() {
            let op = match tok {
                Tok::Plus => true,
                Tok::Minus => false,
                _ => break,
            };
            self.bump();
            let rhs = self.parse_term()?;
            lhs = if op {
                Node::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Node::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn parse_term(&mut self) -> Result<Node, ExprError> {
        let mut lhs = self.parse_unary()?;
        while let Some((tok, _)) = self.peek() {
            let mul = match tok {
                Tok::Star => true,
                Tok::Slash => false,
                _ => break,
            };
            self.bump();
            let rhs = self.parse_unary()?;
            lhs = if mul {
                Node::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                Node::Div(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn parse_unary(&mut self) -> Result<Node, ExprError> {
        if let Some((Tok::Minus, _)) = self.peek() {
            self.bump();
            let inner = self.parse_unary()?;
            return Ok(Node::Neg(Box::new(inner)));
        }
        self.parse_power()
    }

    fn parse_power(&mut self) -> Result<Node, ExprError> {
        let base = self.parse_atom()?;
        if let Some((Tok::Caret, _)) = self.peek() {
            self.bump();
            // exponent is a unary chain: right-associative, allows 2^-3
            let exp = self.parse_unary()?;
            return Ok(Node::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn parse_atom(&mut self) -> Result<Node, ExprError> {
        let offset = self.here();
        match self.bump() {
            Some((Tok::Num(v), _)) => Ok(Node::Number(v)),
            Some((Tok::LParen, _)) => {
                let inner = self.parse_expr()?;
                match self.bump() {
                    Some((Tok::RParen, _)) => Ok(inner),
                    other => Err(ExprError::Syntax {
                        offset: other.map_or(self.end_offset, |t| t.1),
                        message: "expected `)`".into(),
                    }),
                }
            }
            Some((Tok::Ident(name), off)) => {
                if let Some((Tok::LParen, _)) = self.peek() {
                    let (func, arity) = Func::lookup(&name).ok_or_else(|| ExprError::UnknownIdentifier {
                        name: name.clone(),
                        offset: off,
                    })?;
                    self.bump(); // consume '('
                    let mut args = vec![self.parse_expr()?];
                    while let Some((Tok::Comma, _)) = self.peek() {
                        self.bump();
                        args.push(self.parse_expr()?);
                    }
                    match self.bump() {
                        Some((Tok::RParen, _)) => {}
                        other => {
                            return Err(ExprError::Syntax {
                                offset: other.map_or(self.end_offset, |t| t.1),
                                message: "expected `)` after function arguments".into(),
                            })
                        }
                    }
                    if args.len() != arity {
                        return Err(ExprError::WrongArity {
                            name: name.clone(),
                            expected: arity,
                            got: args.len(),
                            offset: off,
                        });
                    }
                    debug_assert_eq!(arity, func.arity());
                    Ok(Node::Call(func, args))
                } else if let Some(idx) = self.vars.iter().position(|v| *v == name) {
                    Ok(Node::Var(idx))
                } else {
                    Err(ExprError::UnknownIdentifier { name, offset: off })
                }
            }
            Some((tok, off)) => Err(ExprError::Syntax {
                offset: off,
                message: format!("expected an operand, found `{}`", tok_text(&tok)),
            }),
            None => Err(ExprError::Syntax {
                offset,
                message: "expected an operand, found end of input".into(),
            }),
        }
    }
}

fn tok_text(t: &Tok) -> String {
    match t {
        Tok::Num(v) => format!("{v}"),
        Tok::Ident(s) => s.clone(),
        Tok::Plus => "+".into(),
        Tok::Minus => "-".into(),
        Tok::Star => "*".into(),
        Tok::Slash => "/".into(),
        Tok::Caret => "^".into(),
        Tok::LParen => "(".into(),
        Tok::RParen => ")".into(),
        Tok::Comma => ",".into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            b'-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            b'*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            b'/' => {
                toks.push((Tok::Slash, i));
                i += 1;
            }
            b'^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            b'(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            b',' => {
                toks.push((Tok::Comma, i));
                i += 1;
            }
            b'0'..=b'9' | b'.' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mark = i;
                    i += 1;
                    if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
                        i += 1;
                    }
                    if i < bytes.len() && bytes[i].is_ascii_digit() {
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    } else {
                        // not an exponent after all ("2e" followed by junk)
                        i = mark;
                    }
                }
                let s = &text[start..i];
                let v: f64 = s.parse().map_err(|_| ExprError::Syntax {
                    offset: start,
                    message: format!("malformed number `{s}`"),
                })?;
                toks.push((Tok::Num(v), start));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(text[start..i].to_string()), start));
            }
            _ => {
                return Err(ExprError::Syntax {
                    offset: i,
                    message: format!("unexpected character `{}`", &text[i..].chars().next().unwrap()),
                })
            }
        }
    }
    Ok(toks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_power_node() {
        let e = Expression::parse("x^2", &["x"]).unwrap();
        assert!(matches!(e.ast(), Node::Pow(..)));
        assert_eq!(e.eval(&[3.0]).unwrap(), 9.0);
    }

    #[test]
    fn parses_rational_node() {
        let e = Expression::parse("-0.76*y/(y+0.03)", &["x", "y", "w"]).unwrap();
        // shape: ((-0.76) * y) / (y + 0.03) with unary minus outermost on the product chain
        let v = e.eval(&[0.0, 1.0, 0.0]).unwrap();
        approx::assert_relative_eq!(v, -0.76 / 1.03, max_relative = 1e-15);
    }

    #[test]
    fn dangling_operator_reports_offset() {
        let err = Expression::parse("y +", &["y"]).unwrap_err();
        match err {
            ExprError::Syntax { offset, .. } => assert_eq!(offset, 3),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn unknown_identifier_is_reported() {
        let err = Expression::parse("x + z", &["x"]).unwrap_err();
        match err {
            ExprError::UnknownIdentifier { name, offset } => {
                assert_eq!(name, "z");
                assert_eq!(offset, 4);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn division_by_zero_is_domain_error() {
        let e = Expression::parse("1/x", &["x"]).unwrap();
        let err = e.eval(&[0.0]).unwrap_err();
        assert!(matches!(err, ExprError::Domain { .. }));
    }

    #[test]
    fn sinc_at_one() {
        let e = Expression::parse("sin(x)/x", &["x"]).unwrap();
        approx::assert_relative_eq!(e.eval(&[1.0]).unwrap(), 0.8414709848078965, max_relative = 1e-15);
    }

    #[test]
    fn caret_is_right_associative_and_tighter_than_unary_minus() {
        let e = Expression::parse("2^3^2", &[]).unwrap();
        assert_eq!(e.eval(&[]).unwrap(), 512.0);
        let e = Expression::parse("-2^2", &[]).unwrap();
        assert_eq!(e.eval(&[]).unwrap(), -4.0);
        let e = Expression::parse("2^-1", &[]).unwrap();
        assert_eq!(e.eval(&[]).unwrap(), 0.5);
    }

    #[test]
    fn overflow_is_domain_error() {
        let e = Expression::parse("exp(x)", &["x"]).unwrap();
        assert!(e.eval(&[1.0e4]).is_err());
    }

    #[test]
    fn two_arg_functions() {
        let e = Expression::parse("max(x, min(1, x*2)) + pow(x, 2)", &["x"]).unwrap();
        approx::assert_relative_eq!(e.eval(&[0.4]).unwrap(), 0.8 + 0.16, max_relative = 1e-15);
        assert!(matches!(
            Expression::parse("min(1)", &[]).unwrap_err(),
            ExprError::WrongArity { .. }
        ));
    }

    // random AST generator for the round-trip property
    fn arb_node(depth: u32) -> BoxedStrategy<Node> {
        let leaf = prop_oneof![
            (0.001f64..1000.0).prop_map(Node::Number),
            (0usize..3).prop_map(Node::Var),
        ];
        leaf.prop_recursive(depth, 64, 3, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Node::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Node::Sub(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Node::Mul(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Node::Div(Box::new(a), Box::new(b))),
                inner.clone().prop_map(|a| Node::Neg(Box::new(a))),
                inner.clone().prop_map(|a| Node::Call(Func::Sin, vec![a])),
                inner.clone().prop_map(|a| Node::Call(Func::Abs, vec![a])),
                (inner.clone(), inner)
                    .prop_map(|(a, b)| Node::Call(Func::Max, vec![a, b])),
            ]
        })
        .boxed()
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(ast in arb_node(5)) {
            let expr = Expression {
                ast,
                vars: vec!["x".into(), "y".into(), "w".into()],
                source: String::new(),
            };
            let printed = expr.to_string();
            let reparsed = Expression::parse(&printed, &["x", "y", "w"]).unwrap();
            prop_assert_eq!(reparsed.ast(), &expr.ast);
        }

        #[test]
        fn round_trip_eval_is_bitwise(ast in arb_node(4), x in -3.0f64..3.0, y in -3.0f64..3.0, w in -3.0f64..3.0) {
            let expr = Expression {
                ast,
                vars: vec!["x".into(), "y".into(), "w".into()],
                source: String::new(),
            };
            let reparsed = Expression::parse(&expr.to_string(), &["x", "y", "w"]).unwrap();
            let a = expr.eval(&[x, y, w]);
            let b = reparsed.eval(&[x, y, w]);
            match (a, b) {
                (Ok(va), Ok(vb)) => prop_assert_eq!(va.to_bits(), vb.to_bits()),
                (Err(_), Err(_)) => {}
                other => prop_assert!(false, "mismatch: {:?}", other),
            }
        }

        #[test]
        fn parser_is_total(s in "[ -~]{0,40}") {
            // arbitrary printable ASCII must parse or error, never panic
            let _ = Expression::parse(&s, &["x", "y"]);
        }
    }
}
