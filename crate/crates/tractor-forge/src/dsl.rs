//! Surface-expression language: parser, printer, compiler, evaluator.
//!
//! Defining functions and scale/symmetry data enter the engine as strings in a
//! small expression language over declared complex coordinates:
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := base ('^' int)?            (int nonzero, decimal, optional sign)
//! base   := number | ident | 'conj(' expr ')' | '|' expr '|^2'
//!         | '(' expr ')' | 're(' expr ')' | 'im(' expr ')'
//! ```
//!
//! There is no unary minus (write `0 - z1` or multiply by `0 - 1`), and
//! `conj`/`re`/`im` are reserved words, not general function syntax. Parsing
//! reports the byte offset of the offending token together with the token
//! classes that would have been legal there.
//!
//! Compiled expressions evaluate over any [`ExprScalar`] — plain complex
//! numbers for point probes, jets for everything differential. Conjugation is
//! a first-class operation precisely so that evaluation can stay on real
//! underlying variables: `conj` on a jet over real coordinates is just
//! coefficient conjugation.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jet::Jet;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Number(f64),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// Integer power with nonzero exponent.
    Pow(Box<Expr>, i32),
    Conj(Box<Expr>),
    /// `|e|^2` = e * conj(e).
    Abs2(Box<Expr>),
    Re(Box<Expr>),
    Im(Box<Expr>),
}

// ---------------------------------------------------------------- lexer

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
    Pipe,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(v) => format!("number {v}"),
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Pipe => "'|'".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn next_tok(&mut self) -> Result<(usize, Tok)> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        if self.pos >= self.src.len() {
            return Ok((start, Tok::Eof));
        }
        let b = self.src[self.pos];
        let simple = match b {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'|' => Some(Tok::Pipe),
            _ => None,
        };
        if let Some(t) = simple {
            self.pos += 1;
            return Ok((start, t));
        }
        if b.is_ascii_digit() {
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if self.pos < self.src.len() && self.src[self.pos] == b'.' {
                self.pos += 1;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
            }
            // Optional exponent part, accepted on input though the printer
            // never emits it.
            if self.pos < self.src.len() && (self.src[self.pos] | 32) == b'e' {
                let mark = self.pos;
                self.pos += 1;
                if self.pos < self.src.len() && (self.src[self.pos] == b'+' || self.src[self.pos] == b'-') {
                    self.pos += 1;
                }
                if self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                } else {
                    self.pos = mark;
                }
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let v: f64 = text.parse().map_err(|_| Error::SyntaxError {
                offset: start,
                found: text.to_string(),
                expected: vec!["number"],
            })?;
            return Ok((start, Tok::Num(v)));
        }
        if b.is_ascii_alphabetic() || b == b'_' {
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            return Ok((start, Tok::Ident(text.to_string())));
        }
        Err(Error::SyntaxError {
            offset: start,
            found: format!("{:?}", char::from(b)),
            expected: vec!["number", "identifier", "operator", "'('", "'|'"],
        })
    }
}

// ---------------------------------------------------------------- parser

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

const BASE_EXPECTED: [&str; 7] =
    ["number", "identifier", "'conj('", "'re('", "'im('", "'('", "'|'"];

impl Parser {
    fn peek(&self) -> &(usize, Tok) {
        &self.toks[self.at]
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err(&self, expected: Vec<&'static str>) -> Error {
        let (offset, tok) = self.peek();
        Error::SyntaxError { offset: *offset, found: tok.describe(), expected }
    }

    fn expect(&mut self, want: Tok, name: &'static str) -> Result<()> {
        if self.peek().1 == want {
            self.bump();
            Ok(())
        } else {
            Err(self.err(vec![name]))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            match self.peek().1 {
                Tok::Plus => {
                    self.bump();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            match self.peek().1 {
                Tok::Star => {
                    self.bump();
                    acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                Tok::Slash => {
                    self.bump();
                    acc = Expr::Div(Box::new(acc), Box::new(self.factor()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if self.peek().1 == Tok::Caret {
            self.bump();
            let k = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    /// Decimal integer with optional leading '-', nonzero, fits in i32.
    fn exponent(&mut self) -> Result<i32> {
        let neg = if self.peek().1 == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let (offset, tok) = self.peek().clone();
        if let Tok::Num(v) = tok {
            if v.fract() == 0.0 && v.abs() <= i32::MAX as f64 && v != 0.0 {
                self.bump();
                let k = v as i32;
                return Ok(if neg { -k } else { k });
            }
            return Err(Error::SyntaxError {
                offset,
                found: format!("number {v}"),
                expected: vec!["nonzero integer exponent"],
            });
        }
        Err(self.err(vec!["nonzero integer exponent"]))
    }

    fn base(&mut self) -> Result<Expr> {
        let (_, tok) = self.peek().clone();
        match tok {
            Tok::Num(v) => {
                self.bump();
                Ok(Expr::Number(v))
            }
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "conj" => {
                        self.expect(Tok::LParen, "'('")?;
                        let inner = self.expr()?;
                        self.expect(Tok::RParen, "')'")?;
                        Ok(Expr::Conj(Box::new(inner)))
                    }
                    "re" => {
                        self.expect(Tok::LParen, "'('")?;
                        let inner = self.expr()?;
                        self.expect(Tok::RParen, "')'")?;
                        Ok(Expr::Re(Box::new(inner)))
                    }
                    "im" => {
                        self.expect(Tok::LParen, "'('")?;
                        let inner = self.expr()?;
                        self.expect(Tok::RParen, "')'")?;
                        Ok(Expr::Im(Box::new(inner)))
                    }
                    _ => Ok(Expr::Var(name)),
                }
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::Pipe => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::Pipe, "'|'")?;
                self.expect(Tok::Caret, "'^'")?;
                let (offset, tok) = self.peek().clone();
                match tok {
                    Tok::Num(v) if v == 2.0 => {
                        self.bump();
                        Ok(Expr::Abs2(Box::new(inner)))
                    }
                    _ => Err(Error::SyntaxError {
                        offset,
                        found: tok.describe(),
                        expected: vec!["'2'"],
                    }),
                }
            }
            _ => Err(self.err(BASE_EXPECTED.to_vec())),
        }
    }
}

/// Parse a surface expression. Identifier existence is *not* checked here —
/// that happens at [`compile`] time against a [`Chart`].
pub fn parse(src: &str) -> Result<Expr> {
    let mut lexer = Lexer { src: src.as_bytes(), pos: 0 };
    let mut toks = Vec::new();
    loop {
        let (off, tok) = lexer.next_tok()?;
        let done = tok == Tok::Eof;
        toks.push((off, tok));
        if done {
            break;
        }
    }
    let mut p = Parser { toks, at: 0 };
    let e = p.expr()?;
    if p.peek().1 != Tok::Eof {
        return Err(p.err(vec!["'+'", "'-'", "'*'", "'/'", "'^'", "end of input"]));
    }
    Ok(e)
}

// ---------------------------------------------------------------- printer

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Pow(..) => 3,
        _ => 4,
    }
}

fn print_into(e: &Expr, min_prec: u8, out: &mut String) {
    use std::fmt::Write;
    let wrap = prec(e) < min_prec;
    if wrap {
        out.push('(');
    }
    match e {
        Expr::Number(v) => {
            debug_assert!(*v >= 0.0, "negative literals are unrepresentable");
            write!(out, "{v}").unwrap();
        }
        Expr::Var(name) => out.push_str(name),
        Expr::Add(a, b) => {
            print_into(a, 1, out);
            out.push_str(" + ");
            print_into(b, 2, out);
        }
        Expr::Sub(a, b) => {
            print_into(a, 1, out);
            out.push_str(" - ");
            print_into(b, 2, out);
        }
        Expr::Mul(a, b) => {
            print_into(a, 2, out);
            out.push('*');
            print_into(b, 3, out);
        }
        Expr::Div(a, b) => {
            print_into(a, 2, out);
            out.push('/');
            print_into(b, 3, out);
        }
        Expr::Pow(a, k) => {
            // The base of '^' must be an atom; |...|^2 re-wrapped to avoid
            // producing the unparseable "|e|^2^k".
            if prec(a) == 4 && !matches!(**a, Expr::Abs2(..)) {
                print_into(a, 4, out);
            } else {
                out.push('(');
                print_into(a, 0, out);
                out.push(')');
            }
            write!(out, "^{k}").unwrap();
        }
        Expr::Conj(a) => {
            out.push_str("conj(");
            print_into(a, 0, out);
            out.push(')');
        }
        Expr::Abs2(a) => {
            out.push('|');
            print_into(a, 0, out);
            out.push_str("|^2");
        }
        Expr::Re(a) => {
            out.push_str("re(");
            print_into(a, 0, out);
            out.push(')');
        }
        Expr::Im(a) => {
            out.push_str("im(");
            print_into(a, 0, out);
            out.push(')');
        }
    }
    if wrap {
        out.push(')');
    }
}

/// Canonical text form; `parse(&print(e)) == e` for every representable tree.
pub fn print(e: &Expr) -> String {
    let mut s = String::new();
    print_into(e, 0, &mut s);
    s
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

// ---------------------------------------------------------------- compiler

/// Declared complex coordinates, in order. The ambient chart z_1..z_{n+1}
/// uses names "z1".."z{n+1}".
#[derive(Debug, Clone, PartialEq)]
pub struct Chart {
    names: Vec<String>,
}

impl Chart {
    pub fn new(names: Vec<String>) -> Chart {
        Chart { names }
    }

    /// Standard ambient chart with `m` complex coordinates z1..zm.
    pub fn standard(m: usize) -> Chart {
        Chart { names: (1..=m).map(|j| format!("z{j}")).collect() }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Instr {
    Const(f64),
    Load(usize),
    Add,
    Sub,
    Mul,
    Div,
    Pow(i32),
    Conj,
    Abs2,
    Re,
    Im,
}

/// Expression flattened to a stack program with coordinate names resolved to
/// chart indices.
#[derive(Debug, Clone, PartialEq)]
pub struct CompiledExpr {
    instrs: Vec<Instr>,
    nvars: usize,
}

fn flatten(e: &Expr, chart: &Chart, out: &mut Vec<Instr>) -> Result<()> {
    match e {
        Expr::Number(v) => out.push(Instr::Const(*v)),
        Expr::Var(name) => {
            let idx = chart.index_of(name).ok_or_else(|| Error::UnknownIdentifier {
                name: name.clone(),
                declared: chart.names.join(", "),
            })?;
            out.push(Instr::Load(idx));
        }
        Expr::Add(a, b) => {
            flatten(a, chart, out)?;
            flatten(b, chart, out)?;
            out.push(Instr::Add);
        }
        Expr::Sub(a, b) => {
            flatten(a, chart, out)?;
            flatten(b, chart, out)?;
            out.push(Instr::Sub);
        }
        Expr::Mul(a, b) => {
            flatten(a, chart, out)?;
            flatten(b, chart, out)?;
            out.push(Instr::Mul);
        }
        Expr::Div(a, b) => {
            flatten(a, chart, out)?;
            flatten(b, chart, out)?;
            out.push(Instr::Div);
        }
        Expr::Pow(a, k) => {
            flatten(a, chart, out)?;
            out.push(Instr::Pow(*k));
        }
        Expr::Conj(a) => {
            flatten(a, chart, out)?;
            out.push(Instr::Conj);
        }
        Expr::Abs2(a) => {
            flatten(a, chart, out)?;
            out.push(Instr::Abs2);
        }
        Expr::Re(a) => {
            flatten(a, chart, out)?;
            out.push(Instr::Re);
        }
        Expr::Im(a) => {
            flatten(a, chart, out)?;
            out.push(Instr::Im);
        }
    }
    Ok(())
}

pub fn compile(e: &Expr, chart: &Chart) -> Result<CompiledExpr> {
    let mut instrs = Vec::new();
    flatten(e, chart, &mut instrs)?;
    Ok(CompiledExpr { instrs, nvars: chart.len() })
}

/// Parse + compile in one step.
pub fn compile_str(src: &str, chart: &Chart) -> Result<CompiledExpr> {
    compile(&parse(src)?, chart)
}

/// Scalar domains a compiled expression can evaluate over. Constants are
/// materialized by the evaluator (they need the jet shape), so the trait only
/// covers the arithmetic.
pub trait ExprScalar: Clone {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Result<Self>;
    fn powi(&self, k: i32) -> Result<Self>;
    fn conj(&self) -> Self;
    fn re(&self) -> Self;
    fn im(&self) -> Self;
}

impl ExprScalar for Complex64 {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Result<Self> {
        if o.norm() < 1e-300 {
            return Err(Error::DivisionByZeroConstant { magnitude: o.norm() });
        }
        Ok(self / o)
    }
    fn powi(&self, k: i32) -> Result<Self> {
        if k < 0 && self.norm() < 1e-300 {
            return Err(Error::DivisionByZeroConstant { magnitude: self.norm() });
        }
        Ok(self.powi(k))
    }
    fn conj(&self) -> Self {
        num_complex::Complex::conj(self)
    }
    fn re(&self) -> Self {
        Complex64::new(self.re, 0.0)
    }
    fn im(&self) -> Self {
        Complex64::new(self.im, 0.0)
    }
}

impl ExprScalar for Jet {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Result<Self> {
        Jet::div(self, o)
    }
    fn powi(&self, k: i32) -> Result<Self> {
        Jet::powi(self, k)
    }
    fn conj(&self) -> Self {
        Jet::conj(self)
    }
    fn re(&self) -> Self {
        Jet::re(self)
    }
    fn im(&self) -> Self {
        Jet::im(self)
    }
}

impl CompiledExpr {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    fn eval_with<S: ExprScalar>(&self, vars: &[S], konst: &dyn Fn(f64) -> S) -> Result<S> {
        assert_eq!(vars.len(), self.nvars, "coordinate count mismatch");
        let mut stack: Vec<S> = Vec::with_capacity(8);
        for ins in &self.instrs {
            match ins {
                Instr::Const(v) => stack.push(konst(*v)),
                Instr::Load(i) => stack.push(vars[*i].clone()),
                Instr::Conj => {
                    let a = stack.pop().unwrap();
                    stack.push(a.conj());
                }
                Instr::Abs2 => {
                    let a = stack.pop().unwrap();
                    stack.push(a.mul(&a.conj()));
                }
                Instr::Re => {
                    let a = stack.pop().unwrap();
                    stack.push(a.re());
                }
                Instr::Im => {
                    let a = stack.pop().unwrap();
                    stack.push(a.im());
                }
                Instr::Pow(k) => {
                    let a = stack.pop().unwrap();
                    stack.push(a.powi(*k)?);
                }
                Instr::Add | Instr::Sub | Instr::Mul | Instr::Div => {
                    let b = stack.pop().unwrap();
                    let a = stack.pop().unwrap();
                    stack.push(match ins {
                        Instr::Add => a.add(&b),
                        Instr::Sub => a.sub(&b),
                        Instr::Mul => a.mul(&b),
                        Instr::Div => a.div(&b)?,
                        _ => unreachable!(),
                    });
                }
            }
        }
        debug_assert_eq!(stack.len(), 1);
        Ok(stack.pop().unwrap())
    }

    /// Evaluate at a point given by complex coordinate values.
    pub fn eval_point(&self, z: &[Complex64]) -> Result<Complex64> {
        self.eval_with(z, &|v| Complex64::new(v, 0.0))
    }

    /// Evaluate over jets of the complex coordinates (each seeded against the
    /// same real variable set).
    pub fn eval_jets(&self, z: &[Jet]) -> Result<Jet> {
        assert!(!z.is_empty(), "jet evaluation needs at least one coordinate");
        let (nv, ord) = (z[0].nvars(), z[0].order());
        self.eval_with(z, &|v| Jet::constant(nv, ord, Complex64::new(v, 0.0)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn parses_and_evaluates_unit_sphere() {
        let chart = Chart::standard(2);
        let f = compile_str("|z1|^2 + |z2|^2 - 1", &chart).unwrap();
        let on = f.eval_point(&[c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
        assert!(on.norm() < 1e-15);
        let off = f.eval_point(&[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!((off - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn conj_re_im_pow_semantics() {
        let chart = Chart::standard(1);
        let z = c(0.3, -0.7);
        for (src, want) in [
            ("conj(z1)*z1", z.conj() * z),
            ("re(z1) - im(z1)", c(z.re - z.im, 0.0)),
            ("z1^3", z.powi(3)),
            ("z1^-2", z.powi(-2)),
            ("(1 + z1)^2/z1", (c(1.0, 0.0) + z).powi(2) / z),
        ] {
            let f = compile_str(src, &chart).unwrap();
            let got = f.eval_point(&[z]).unwrap();
            assert!((got - want).norm() < 1e-13, "{src}: {got} != {want}");
        }
    }

    #[test]
    fn syntax_error_offsets_and_expectations() {
        // Dangling operator: error at end of input (offset 5 after "z1 + ").
        match parse("z1 + ") {
            Err(Error::SyntaxError { offset, expected, .. }) => {
                assert_eq!(offset, 5);
                assert!(expected.contains(&"number"));
                assert!(expected.contains(&"'conj('"));
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
        // Zero exponent is rejected at the exponent's byte offset.
        match parse("z1^0 + 1") {
            Err(Error::SyntaxError { offset, expected, .. }) => {
                assert_eq!(offset, 3);
                assert_eq!(expected, vec!["nonzero integer exponent"]);
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
        // |...| must be squared.
        match parse("|z1|^3") {
            Err(Error::SyntaxError { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("expected syntax error, got {other:?}"),
        }
        // Trailing garbage.
        match parse("z1 z2") {
            Err(Error::SyntaxError { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_identifier_reported_at_compile() {
        let chart = Chart::standard(2);
        let e = parse("z1 + w").unwrap();
        match compile(&e, &chart) {
            Err(Error::UnknownIdentifier { name, declared }) => {
                assert_eq!(name, "w");
                assert_eq!(declared, "z1, z2");
            }
            other => panic!("expected unknown identifier, got {other:?}"),
        }
    }

    #[test]
    fn jet_and_point_evaluation_agree() {
        let chart = Chart::standard(2);
        let f = compile_str("z1*conj(z2) + re(z1)^2 - im(z2*z2)/(2 + |z1|^2)", &chart).unwrap();
        let (z1, z2) = (c(0.4, 0.3), c(-0.2, 0.9));
        let direct = f.eval_point(&[z1, z2]).unwrap();
        // Seed z_j = x_j + i y_j over 4 real variables.
        let mk = |v: Complex64, ix: usize| {
            Jet::linear(4, 3, v, &[(2 * ix, c(1.0, 0.0)), (2 * ix + 1, c(0.0, 1.0))])
        };
        let jets = [mk(z1, 0), mk(z2, 1)];
        let jf = f.eval_jets(&jets).unwrap();
        assert!((jf.value() - direct).norm() < 1e-14);
        // And the jet derivative matches finite differences in x_2 (= re z2).
        let h = 1e-5;
        let fp = f.eval_point(&[z1, z2 + c(h, 0.0)]).unwrap();
        let fm = f.eval_point(&[z1, z2 - c(h, 0.0)]).unwrap();
        let fd = (fp - fm) / c(2.0 * h, 0.0);
        assert!((jf.linear_coeff(2) - fd).norm() < 1e-9);
    }

    // ------------------------------------------------------ round-trip

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (0u32..400).prop_map(|n| Expr::Number(n as f64 / 8.0)),
            (1usize..=3).prop_map(|j| Expr::Var(format!("z{j}"))),
        ];
        leaf.prop_recursive(4, 24, 3, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
                (inner.clone(), prop_oneof![(-4i32..=-1), (1i32..=4)])
                    .prop_map(|(a, k)| Expr::Pow(Box::new(a), k)),
                inner.clone().prop_map(|a| Expr::Conj(Box::new(a))),
                inner.clone().prop_map(|a| Expr::Abs2(Box::new(a))),
                inner.clone().prop_map(|a| Expr::Re(Box::new(a))),
                inner.prop_map(|a| Expr::Im(Box::new(a))),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        /// print -> parse is the identity on ASTs (50-expression corpus).
        #[test]
        fn print_parse_round_trip(e in arb_expr()) {
            let text = print(&e);
            let back = parse(&text).unwrap_or_else(|err| panic!("reparse of {text:?} failed: {err}"));
            prop_assert_eq!(&back, &e, "round trip through {}", text);
        }
    }

    #[test]
    fn round_trip_handles_pow_of_abs2() {
        let e = Expr::Pow(Box::new(Expr::Abs2(Box::new(Expr::Var("z1".into())))), 3);
        let text = print(&e);
        assert_eq!(text, "(|z1|^2)^3");
        assert_eq!(parse(&text).unwrap(), e);
    }

    #[test]
    fn whitespace_and_nesting() {
        let e1 = parse("  z1 *( z2+ 1)  ").unwrap();
        let e2 = parse("z1*(z2 + 1)").unwrap();
        assert_eq!(e1, e2);
    }
}
