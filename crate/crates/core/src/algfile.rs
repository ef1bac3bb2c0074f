//! Parser and pretty-printer for the `.alg` algebra-definition format and
//! the expression grammar used in CLI arguments and fixtures.
//!
//! The surface syntax is ASCII only: `(x)` is the tensor separator, tilde
//! generators are spelled `P+~`, and every rejection carries a line/column.
//! Printed output is canonical (term order of the polynomial module) and
//! re-parseable; `parse∘print` is the identity on canonical values.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::hopfdef::HopfPresentation;
use crate::ncpoly::{
    Algebra, AlgebraError, Alphabet, BracketTable, Context, Element, Generator, Mono,
};
use crate::scalars::{rint, Rational, ZSeries};
use crate::tensorspace::{exp_tensor, tensor_mul, TensorElement};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

// ---------------------------------------------------------------------------
// errors

#[derive(Debug, Clone)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, col, msg: msg.into() })
}

// ---------------------------------------------------------------------------
// lexer

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Eq,
    TensorSep,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str, line: usize) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0usize;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' => {
                i += 1;
            }
            '#' => break,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Spanned { tok: Tok::Int(text.parse().unwrap()), line, col });
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                // a `+` or `-` glued to the name is part of it unless it is
                // followed by the start of another operand
                if i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                    let next = chars.get(i + 1);
                    let binds_right =
                        matches!(next, Some(c) if c.is_ascii_alphanumeric() || *c == '(');
                    if !binds_right {
                        i += 1;
                    }
                }
                if i < chars.len() && chars[i] == '~' {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Spanned { tok: Tok::Ident(text), line, col });
            }
            '(' => {
                if i + 2 < chars.len() && chars[i + 1] == 'x' && chars[i + 2] == ')' {
                    out.push(Spanned { tok: Tok::TensorSep, line, col });
                    i += 3;
                } else {
                    out.push(Spanned { tok: Tok::LParen, line, col });
                    i += 1;
                }
            }
            ')' => {
                out.push(Spanned { tok: Tok::RParen, line, col });
                i += 1;
            }
            '[' => {
                out.push(Spanned { tok: Tok::LBracket, line, col });
                i += 1;
            }
            ']' => {
                out.push(Spanned { tok: Tok::RBracket, line, col });
                i += 1;
            }
            ',' => {
                out.push(Spanned { tok: Tok::Comma, line, col });
                i += 1;
            }
            '=' => {
                out.push(Spanned { tok: Tok::Eq, line, col });
                i += 1;
            }
            '+' => {
                out.push(Spanned { tok: Tok::Plus, line, col });
                i += 1;
            }
            '-' => {
                out.push(Spanned { tok: Tok::Minus, line, col });
                i += 1;
            }
            '*' => {
                out.push(Spanned { tok: Tok::Star, line, col });
                i += 1;
            }
            '/' => {
                out.push(Spanned { tok: Tok::Slash, line, col });
                i += 1;
            }
            '^' => {
                out.push(Spanned { tok: Tok::Caret, line, col });
                i += 1;
            }
            other => return err(line, col, format!("unexpected character `{other}`")),
        }
    }
    Ok(out)
}

/// Number of divisions in an expression; callers add this as truncation
/// headroom so quotients by the deformation parameter stay exact at the
/// requested order.
pub fn division_count(src: &str) -> usize {
    src.chars().filter(|&c| c == '/').count()
}

// ---------------------------------------------------------------------------
// values

/// What an expression evaluates to.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Scalar(ZSeries),
    Elem(Element),
    Tensor(TensorElement),
}

impl Value {
    pub fn into_element(self, order: usize) -> Option<Element> {
        match self {
            Value::Scalar(s) => Some(Element::of_mono_coeff(Mono::unit(), s)),
            Value::Elem(e) => Some(e),
            Value::Tensor(_) => None,
        }
        .map(|e| e.truncate(order))
    }

    pub fn truncate(self, order: usize) -> Value {
        match self {
            Value::Scalar(s) => Value::Scalar(s.truncate(order)),
            Value::Elem(e) => Value::Elem(e.truncate(order)),
            Value::Tensor(t) => {
                let mut out = TensorElement::zero(t.arity());
                for (k, c) in t.iter() {
                    out.accumulate(*k, c.truncate(order));
                }
                Value::Tensor(out)
            }
        }
    }
}

/// Evaluation environment: the rewrite context (which fixes the alphabet,
/// bracket table and truncation order), plus named elements.
pub struct EvalEnv<'a> {
    pub ctx: &'a Context,
    pub named: &'a HashMap<String, Value>,
}

impl<'a> EvalEnv<'a> {
    pub fn new(ctx: &'a Context, named: &'a HashMap<String, Value>) -> Self {
        EvalEnv { ctx, named }
    }
}

// ---------------------------------------------------------------------------
// expression parser / evaluator

struct ExprParser<'a, 'e> {
    toks: &'a [Spanned],
    pos: usize,
    env: &'a EvalEnv<'e>,
    line: usize,
}

impl<'a, 'e> ExprParser<'a, 'e> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|s| (s.line, s.col))
            .unwrap_or((self.line, 0))
    }

    fn bump(&mut self) -> Option<&Spanned> {
        let s = self.toks.get(self.pos);
        if s.is_some() {
            self.pos += 1;
        }
        s
    }

    fn expect(&mut self, tok: &Tok, what: &str) -> Result<(), ParseError> {
        let (l, c) = self.here();
        match self.peek() {
            Some(t) if t == tok => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => err(l, c, format!("expected {what}, found {t:?}")),
            None => err(l, c, format!("expected {what}, found end of input")),
        }
    }

    fn alg_err(&self, at: (usize, usize), e: AlgebraError) -> ParseError {
        ParseError { line: at.0, col: at.1, msg: e.to_string() }
    }

    fn order(&self) -> usize {
        self.env.ctx.order
    }

    // sum := tensor (('+'|'-') tensor)*
    fn sum(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.tensor()?;
        loop {
            let at = self.here();
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.tensor()?;
                    acc = self.add(acc, rhs, at, false)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.tensor()?;
                    acc = self.add(acc, rhs, at, true)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn add(
        &self,
        a: Value,
        b: Value,
        at: (usize, usize),
        subtract: bool,
    ) -> Result<Value, ParseError> {
        let order = self.order();
        let b = if subtract { self.negate(b) } else { b };
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(x.add(&y))),
            (Value::Tensor(x), Value::Tensor(y)) => {
                if x.arity() != y.arity() {
                    return err(at.0, at.1, "tensor arity mismatch in sum");
                }
                Ok(Value::Tensor(x.add(&y)))
            }
            (Value::Tensor(_), _) | (_, Value::Tensor(_)) => {
                err(at.0, at.1, "cannot add a tensor and a non-tensor")
            }
            (x, y) => {
                let xe = x.into_element(order).unwrap();
                let ye = y.into_element(order).unwrap();
                Ok(Value::Elem(xe.add(&ye)))
            }
        }
    }

    fn negate(&self, v: Value) -> Value {
        match v {
            Value::Scalar(s) => Value::Scalar(s.neg()),
            Value::Elem(e) => Value::Elem(e.neg()),
            Value::Tensor(t) => Value::Tensor(t.neg()),
        }
    }

    // tensor := product ('(x)' product)*
    fn tensor(&mut self) -> Result<Value, ParseError> {
        let first = self.product()?;
        if !matches!(self.peek(), Some(Tok::TensorSep)) {
            return Ok(first);
        }
        let order = self.order();
        let mut legs: Vec<Element> = Vec::new();
        let at = self.here();
        match first.into_element(order) {
            Some(e) => legs.push(e),
            None => return err(at.0, at.1, "tensor legs must be algebra elements"),
        }
        while matches!(self.peek(), Some(Tok::TensorSep)) {
            self.pos += 1;
            let at = self.here();
            let next = self.product()?;
            match next.into_element(order) {
                Some(e) => legs.push(e),
                None => return err(at.0, at.1, "tensor legs must be algebra elements"),
            }
            if legs.len() > 3 {
                return err(at.0, at.1, "tensor arity exceeds 3");
            }
        }
        let refs: Vec<&Element> = legs.iter().collect();
        Ok(Value::Tensor(TensorElement::of_elements(&refs, order)))
    }

    // product := unary (('*'|'/') unary)*
    fn product(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.unary()?;
        loop {
            let at = self.here();
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = self.mul(acc, rhs, at)?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = self.div(acc, rhs, at)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn mul(&self, a: Value, b: Value, at: (usize, usize)) -> Result<Value, ParseError> {
        let ctx = self.env.ctx;
        let order = self.order();
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(x.mul(&y))),
            (Value::Scalar(s), Value::Elem(e)) | (Value::Elem(e), Value::Scalar(s)) => {
                Ok(Value::Elem(e.scale(&s)))
            }
            (Value::Scalar(s), Value::Tensor(t)) | (Value::Tensor(t), Value::Scalar(s)) => {
                Ok(Value::Tensor(t.scale(&s)))
            }
            (Value::Elem(x), Value::Elem(y)) => ctx
                .multiply(&x, &y)
                .map(Value::Elem)
                .map_err(|e| self.alg_err(at, e)),
            (Value::Tensor(x), Value::Tensor(y)) => tensor_mul(ctx, &x, &y)
                .map(Value::Tensor)
                .map_err(|e| self.alg_err(at, e)),
            _ => err(at.0, at.1, "cannot multiply a tensor and an element"),
        }
        .map(|v| v.truncate(order))
    }

    fn div(&self, a: Value, b: Value, at: (usize, usize)) -> Result<Value, ParseError> {
        let divisor = match b {
            Value::Scalar(s) => s,
            _ => return err(at.0, at.1, "divisor must be a scalar series"),
        };
        if divisor.is_zero() {
            return err(at.0, at.1, "division by zero");
        }
        let v = divisor.valuation().unwrap();
        let unit = divisor
            .shift_down(v)
            .and_then(|u| u.invert())
            .map_err(|e| self.alg_err(at, e))?;
        match a {
            Value::Scalar(s) => {
                let shifted = s.shift_down(v).map_err(|e| self.alg_err(at, e))?;
                Ok(Value::Scalar(shifted.mul(&unit)))
            }
            Value::Elem(e) => {
                let shifted = e.shift_down(v).map_err(|e| self.alg_err(at, e))?;
                Ok(Value::Elem(shifted.scale(&unit)))
            }
            Value::Tensor(t) => {
                let mut out = TensorElement::zero(t.arity());
                for (k, c) in t.iter() {
                    let shifted = c.shift_down(v).map_err(|e| self.alg_err(at, e))?;
                    out.accumulate(*k, shifted.mul(&unit));
                }
                Ok(Value::Tensor(out))
            }
        }
    }

    // unary := '-' unary | power
    fn unary(&mut self) -> Result<Value, ParseError> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.pos += 1;
            let v = self.unary()?;
            return Ok(self.negate(v));
        }
        self.power()
    }

    // power := atom ('^' Int)?
    fn power(&mut self) -> Result<Value, ParseError> {
        let base = self.atom()?;
        if !matches!(self.peek(), Some(Tok::Caret)) {
            return Ok(base);
        }
        let at = self.here();
        self.pos += 1;
        let n = match self.bump() {
            Some(Spanned { tok: Tok::Int(n), .. }) => n.clone(),
            _ => return err(at.0, at.1, "exponent must be a non-negative integer"),
        };
        let n: usize = match n.to_string().parse() {
            Ok(n) => n,
            Err(_) => return err(at.0, at.1, "exponent out of range"),
        };
        let mut acc = match &base {
            Value::Scalar(_) => Value::Scalar(ZSeries::one(self.order())),
            Value::Elem(_) => Value::Elem(Element::unit(self.order())),
            Value::Tensor(t) => Value::Tensor(TensorElement::unit(t.arity(), self.order())),
        };
        for _ in 0..n {
            acc = self.mul(acc, base.clone(), at)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        let (l, c) = self.here();
        let tok = match self.bump() {
            Some(s) => s.clone(),
            None => return err(l, c, "expected an expression"),
        };
        match tok.tok {
            Tok::Int(n) => Ok(Value::Scalar(ZSeries::monomial(
                self.order(),
                0,
                Rational::from_integer(n),
            ))),
            Tok::Ident(name) => {
                if name == "exp" {
                    self.expect(&Tok::LParen, "`(` after exp")?;
                    let arg = self.sum()?;
                    self.expect(&Tok::RParen, "`)`")?;
                    return self.exp_value(arg, (l, c));
                }
                let alpha = &self.env.ctx.algebra.alphabet;
                if name == alpha.param {
                    return Ok(Value::Scalar(ZSeries::monomial(self.order(), 1, rint(1))));
                }
                if let Some(r) = alpha.rank_of(&name) {
                    return Ok(Value::Elem(Element::of_gen(r, self.order())));
                }
                if let Some(v) = self.env.named.get(&name) {
                    return Ok(v.clone().truncate(self.order()));
                }
                err(l, c, format!("unknown symbol `{name}`"))
            }
            Tok::LParen => {
                let v = self.sum()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(v)
            }
            Tok::LBracket => {
                let a = self.sum()?;
                self.expect(&Tok::Comma, "`,` in bracket")?;
                let b = self.sum()?;
                self.expect(&Tok::RBracket, "`]`")?;
                let order = self.order();
                match (a.into_element(order), b.into_element(order)) {
                    (Some(x), Some(y)) => self
                        .env
                        .ctx
                        .commutator(&x, &y)
                        .map(Value::Elem)
                        .map_err(|e| self.alg_err((l, c), e)),
                    _ => err(l, c, "bracket operands must be algebra elements"),
                }
            }
            other => err(l, c, format!("unexpected token {other:?}")),
        }
    }

    fn exp_value(&self, arg: Value, at: (usize, usize)) -> Result<Value, ParseError> {
        let ctx = self.env.ctx;
        match arg {
            Value::Scalar(s) => {
                if !s.is_zero() && s.valuation() == Some(0) {
                    return Err(self.alg_err(at, AlgebraError::NonTruncatingExponential));
                }
                let mut acc = ZSeries::one(self.order());
                let mut term = ZSeries::one(self.order());
                for n in 1..=self.order() {
                    term = term.mul(&s);
                    acc = acc.add(&term.scale(&(rint(1) / crate::scalars::factorial(n))));
                }
                Ok(Value::Scalar(acc))
            }
            Value::Elem(e) => ctx
                .exp_element(&e)
                .map(Value::Elem)
                .map_err(|e| self.alg_err(at, e)),
            Value::Tensor(t) => exp_tensor(ctx, &t)
                .map(Value::Tensor)
                .map_err(|e| self.alg_err(at, e)),
        }
    }
}

/// Parse and evaluate one expression in the given environment. The caller is
/// responsible for evaluating with division headroom (see
/// [`division_count`]) and truncating the result back down.
pub fn parse_expression(src: &str, env: &EvalEnv<'_>) -> Result<Value, ParseError> {
    parse_expression_at(src, env, 1)
}

fn parse_expression_at(src: &str, env: &EvalEnv<'_>, line: usize) -> Result<Value, ParseError> {
    let toks = lex(src, line)?;
    if toks.is_empty() {
        return err(line, 1, "empty expression");
    }
    let mut p = ExprParser { toks: &toks, pos: 0, env, line };
    let v = p.sum()?;
    if p.pos != toks.len() {
        let s = &toks[p.pos];
        return err(s.line, s.col, format!("unexpected trailing token {:?}", s.tok));
    }
    Ok(v)
}

// ---------------------------------------------------------------------------
// printer

fn rat_text(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Monomial as a `*`-joined product of powers in rank order; the unit prints
/// as `1`.
pub fn print_mono(alpha: &Alphabet, m: &Mono) -> String {
    if m.is_unit() {
        return "1".into();
    }
    let mut parts = Vec::new();
    for r in 0..alpha.len() as u8 {
        let e = m.exp(r);
        if e == 1 {
            parts.push(alpha.name_of(r).to_string());
        } else if e > 1 {
            parts.push(format!("{}^{}", alpha.name_of(r), e));
        }
    }
    parts.join("*")
}

pub fn print_tensor_mono(alpha: &Alphabet, key: &[Mono; 3], arity: usize) -> String {
    (0..arity)
        .map(|l| print_mono(alpha, &key[l]))
        .collect::<Vec<_>>()
        .join(" (x) ")
}

/// Scalar series as a polynomial in the parameter symbol.
pub fn print_series(alpha: &Alphabet, s: &ZSeries) -> String {
    if s.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    let mut first = true;
    for (k, c) in s.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let mut factors = Vec::new();
        if !mag.is_one() || k == 0 {
            factors.push(rat_text(&mag));
        }
        if k == 1 {
            factors.push(alpha.param.clone());
        } else if k > 1 {
            factors.push(format!("{}^{}", alpha.param, k));
        }
        let body = factors.join("*");
        if first {
            if c.is_negative() {
                out.push('-');
            }
            out.push_str(&body);
            first = false;
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
            out.push_str(&body);
        }
    }
    out
}

/// One printable addend: sign, then `*`-joined factor texts.
struct Addend {
    negative: bool,
    factors: Vec<String>,
}

impl Addend {
    fn render_into(groups: Vec<Addend>) -> String {
        let mut out = String::new();
        for (i, a) in groups.iter().enumerate() {
            let body = if a.factors.is_empty() {
                "1".to_string()
            } else {
                a.factors.join("*")
            };
            if i == 0 {
                if a.negative {
                    out.push('-');
                }
                out.push_str(&body);
            } else {
                out.push_str(if a.negative { " - " } else { " + " });
                out.push_str(&body);
            }
        }
        out
    }
}

/// A group of terms sharing the same non-carrier monomial tuple, indexed by
/// the carrier powers of each leg.
struct ExpGroup {
    rests: Vec<Mono>,
    entries: HashMap<Vec<u8>, ZSeries>,
}

/// Try to express a group as c·z^s · Π_legs exp(t_l z G0) · rests. Returns
/// the coefficient (c, s) and per-leg exponents on success.
fn match_scalar_exp(
    group: &ExpGroup,
    order: usize,
) -> Option<(Rational, usize, Vec<Rational>)> {
    let arity = group.rests.len();
    let zero_key = vec![0u8; arity];
    let base = group.entries.get(&zero_key)?;
    let s = base.valuation()?;
    let c0 = base.coeff(s);
    // base must be a single power of z
    if *base != ZSeries::monomial(order, s, c0.clone()) {
        return None;
    }
    let mut ts = Vec::with_capacity(arity);
    for l in 0..arity {
        let mut key = zero_key.clone();
        key[l] = 1;
        match group.entries.get(&key) {
            None => ts.push(Rational::zero()),
            Some(e) => {
                if s + 1 > order {
                    return None;
                }
                let c1 = e.coeff(s + 1);
                if c1.is_zero() || *e != ZSeries::monomial(order, s + 1, c1.clone()) {
                    return None;
                }
                ts.push(c1 / &c0);
            }
        }
    }
    if ts.iter().all(|t| t.is_zero()) && group.entries.len() > 1 {
        return None;
    }
    // verify every entry that must exist does, with the exact coefficient,
    // and that no others do
    let mut expected = 0usize;
    let mut stack: Vec<(Vec<u8>, Rational, usize)> = vec![(zero_key, c0.clone(), s)];
    let mut seen: Vec<Vec<u8>> = Vec::new();
    while let Some((key, coeff, deg)) = stack.pop() {
        match group.entries.get(&key) {
            Some(e) if *e == ZSeries::monomial(order, deg, coeff.clone()) => {}
            _ => return None,
        }
        expected += 1;
        seen.push(key.clone());
        for l in 0..arity {
            if ts[l].is_zero() {
                continue;
            }
            if deg + 1 > order {
                continue;
            }
            let mut next = key.clone();
            next[l] += 1;
            if seen.contains(&next) || stack.iter().any(|(k, _, _)| *k == next) {
                continue;
            }
            let next_coeff = &coeff * &ts[l] / rint(next[l] as i64);
            stack.push((next, next_coeff, deg + 1));
        }
    }
    if expected != group.entries.len() {
        return None;
    }
    Some((c0, s, ts))
}

fn exp_factor_text(alpha: &Alphabet, t: &Rational) -> String {
    let carrier = alpha.name_of(0);
    let prefix = if t.is_one() {
        String::new()
    } else if (-t.clone()).is_one() {
        "-".into()
    } else {
        format!("{}*", rat_text(t))
    };
    format!("exp({}{}*{})", prefix, alpha.param, carrier)
}

fn coeff_prefix_factors(c: &Rational, s: usize, alpha: &Alphabet) -> Vec<String> {
    let mut factors = Vec::new();
    let mag = c.abs();
    if !mag.is_one() {
        factors.push(rat_text(&mag));
    }
    if s == 1 {
        factors.push(alpha.param.clone());
    } else if s > 1 {
        factors.push(format!("{}^{}", alpha.param, s));
    }
    factors
}

fn strip_carrier(m: &Mono) -> (u8, Mono) {
    let a = m.exp(0);
    let mut rest = *m;
    for _ in 0..a {
        rest = rest.without_one(0);
    }
    (a, rest)
}

fn print_terms(
    alpha: &Alphabet,
    terms: Vec<(Vec<Mono>, ZSeries)>,
    order: usize,
) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let arity = terms[0].0.len();
    // group by the rest tuple
    let mut groups: Vec<(Vec<Mono>, ExpGroup)> = Vec::new();
    for (legs, c) in &terms {
        let mut rests = Vec::with_capacity(arity);
        let mut powers = Vec::with_capacity(arity);
        for m in legs {
            let (a, rest) = strip_carrier(m);
            rests.push(rest);
            powers.push(a);
        }
        match groups.iter_mut().find(|(k, _)| *k == rests) {
            Some((_, g)) => {
                let e = g.entries.entry(powers).or_insert_with(|| ZSeries::zero(order));
                *e = e.add(c);
            }
            None => {
                let mut g = ExpGroup { rests: rests.clone(), entries: HashMap::new() };
                g.entries.insert(powers, c.clone());
                groups.push((rests, g));
            }
        }
    }
    groups.sort_by(|a, b| a.0.cmp(&b.0));

    let mut addends: Vec<Addend> = Vec::new();
    for (rests, group) in &groups {
        if let Some((c0, s, ts)) = match_scalar_exp(group, order) {
            let mut factors = coeff_prefix_factors(&c0, s, alpha);
            let mut leg_texts = Vec::with_capacity(arity);
            for l in 0..arity {
                let mut parts = Vec::new();
                if !ts[l].is_zero() {
                    parts.push(exp_factor_text(alpha, &ts[l]));
                }
                if !rests[l].is_unit() {
                    parts.push(print_mono(alpha, &rests[l]));
                }
                leg_texts.push(if parts.is_empty() { "1".to_string() } else { parts.join("*") });
            }
            if arity == 1 {
                if leg_texts[0] != "1" || factors.is_empty() {
                    if leg_texts[0] != "1" {
                        factors.push(leg_texts[0].clone());
                    } else if factors.is_empty() {
                        factors.push("1".into());
                    }
                }
                addends.push(Addend { negative: c0.is_negative(), factors });
            } else {
                let mut combined = factors;
                let mut first_leg = leg_texts[0].clone();
                if !combined.is_empty() && first_leg == "1" {
                    first_leg = combined.join("*");
                    combined = Vec::new();
                } else if !combined.is_empty() {
                    first_leg = format!("{}*{}", combined.join("*"), first_leg);
                    combined = Vec::new();
                }
                let _ = combined;
                let mut body = first_leg;
                for leg in &leg_texts[1..] {
                    body.push_str(" (x) ");
                    body.push_str(leg);
                }
                addends.push(Addend { negative: c0.is_negative(), factors: vec![body] });
            }
        } else {
            // raw fallback: emit each stored term of the group
            let mut raw: Vec<(&Vec<u8>, &ZSeries)> = group.entries.iter().collect();
            raw.sort_by(|a, b| a.0.cmp(b.0));
            for (powers, c) in raw {
                let legs: Vec<Mono> = rests
                    .iter()
                    .zip(powers.iter())
                    .map(|(rest, a)| {
                        let mut m = *rest;
                        for _ in 0..*a {
                            m = m.with_one(0);
                        }
                        m
                    })
                    .collect();
                // one addend per z-power when the coefficient is a monomial,
                // otherwise a parenthesized series factor
                let nonzero: Vec<usize> = (0..=order).filter(|&k| !c.coeff(k).is_zero()).collect();
                if nonzero.len() == 1 {
                    let k = nonzero[0];
                    let q = c.coeff(k);
                    let mut factors = coeff_prefix_factors(&q, k, alpha);
                    let mono_texts: Vec<String> = legs
                        .iter()
                        .map(|m| print_mono(alpha, m))
                        .collect();
                    if arity == 1 {
                        if mono_texts[0] != "1" {
                            factors.push(mono_texts[0].clone());
                        } else if factors.is_empty() {
                            factors.push("1".into());
                        }
                        addends.push(Addend { negative: q.is_negative(), factors });
                    } else {
                        let mut first = mono_texts[0].clone();
                        if !factors.is_empty() {
                            if first == "1" {
                                first = factors.join("*");
                            } else {
                                first = format!("{}*{}", factors.join("*"), first);
                            }
                        }
                        let mut body = first;
                        for t in &mono_texts[1..] {
                            body.push_str(" (x) ");
                            body.push_str(t);
                        }
                        addends.push(Addend { negative: q.is_negative(), factors: vec![body] });
                    }
                } else {
                    let series = format!("({})", print_series(alpha, c));
                    let mono_texts: Vec<String> =
                        legs.iter().map(|m| print_mono(alpha, m)).collect();
                    let mut body = series;
                    if mono_texts[0] != "1" {
                        body = format!("{}*{}", body, mono_texts[0]);
                    }
                    for t in &mono_texts[1..] {
                        body.push_str(" (x) ");
                        body.push_str(t);
                    }
                    addends.push(Addend { negative: false, factors: vec![body] });
                }
            }
        }
    }
    Addend::render_into(addends)
}

/// Canonical, re-parseable text form of an element.
pub fn print_element(alpha: &Alphabet, e: &Element) -> String {
    let order = e.iter().next().map(|(_, c)| c.order()).unwrap_or(0);
    let terms: Vec<(Vec<Mono>, ZSeries)> =
        e.iter().map(|(m, c)| (vec![*m], c.clone())).collect();
    print_terms(alpha, terms, order)
}

/// Canonical, re-parseable text form of a tensor element.
pub fn print_tensor(alpha: &Alphabet, t: &TensorElement) -> String {
    let order = t.iter().next().map(|(_, c)| c.order()).unwrap_or(0);
    let terms: Vec<(Vec<Mono>, ZSeries)> = t
        .iter()
        .map(|(k, c)| ((0..t.arity()).map(|l| k[l]).collect(), c.clone()))
        .collect();
    print_terms(alpha, terms, order)
}

pub fn print_value(alpha: &Alphabet, v: &Value) -> String {
    match v {
        Value::Scalar(s) => print_series(alpha, s),
        Value::Elem(e) => print_element(alpha, e),
        Value::Tensor(t) => print_tensor(alpha, t),
    }
}

// ---------------------------------------------------------------------------
// documents

/// Parsed form of a declarative algebra file.
pub struct AlgebraDocument {
    pub presentation: HopfPresentation,
    pub named: Vec<(String, Value)>,
    pub declared_order: usize,
}

#[derive(PartialEq, Clone, Copy, Debug)]
enum Section {
    None,
    Generators,
    Brackets,
    Coproduct,
    Counit,
    Antipode,
    Elements,
}

struct RawLine {
    no: usize,
    text: String,
}

/// Parse a complete `.alg` document. `order_override` replaces the header's
/// truncation order; structure expressions are evaluated with division
/// headroom so quotients by the parameter stay exact.
pub fn parse_document(
    src: &str,
    order_override: Option<usize>,
    fuel: u64,
) -> Result<AlgebraDocument, ParseError> {
    let mut lines: Vec<RawLine> = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let no_comment = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let text = no_comment.trim();
        if !text.is_empty() {
            lines.push(RawLine { no: i + 1, text: text.to_string() });
        }
    }
    let mut it = lines.iter();

    let header = it.next().ok_or_else(|| ParseError {
        line: 1,
        col: 1,
        msg: "empty document".into(),
    })?;
    if header.text != "algfile 1" {
        return err(header.no, 1, "expected the version header `algfile 1`");
    }

    let mut name = None;
    let mut param = None;
    let mut declared_order = None;
    let mut section = Section::None;

    let mut gen_decls: Vec<(usize, String, u8)> = Vec::new();
    let mut bracket_lines: Vec<(usize, String, String, String)> = Vec::new();
    let mut table_lines: HashMap<&'static str, Vec<(usize, String, String)>> = HashMap::new();
    let mut element_lines: Vec<(usize, String, String)> = Vec::new();

    for line in it {
        let text = &line.text;
        match text.as_str() {
            "generators" => {
                section = Section::Generators;
                continue;
            }
            "brackets" => {
                section = Section::Brackets;
                continue;
            }
            "coproduct" => {
                section = Section::Coproduct;
                continue;
            }
            "counit" => {
                section = Section::Counit;
                continue;
            }
            "antipode" => {
                section = Section::Antipode;
                continue;
            }
            "elements" => {
                section = Section::Elements;
                continue;
            }
            _ => {}
        }
        if let Some(rest) = text.strip_prefix("name ") {
            name = Some(rest.trim().to_string());
            continue;
        }
        if let Some(rest) = text.strip_prefix("parameter ") {
            param = Some(rest.trim().to_string());
            continue;
        }
        if let Some(rest) = text.strip_prefix("order ") {
            match rest.trim().parse::<usize>() {
                Ok(k) => declared_order = Some(k),
                Err(_) => return err(line.no, 7, "order must be a non-negative integer"),
            }
            continue;
        }
        match section {
            Section::None => {
                return err(line.no, 1, format!("unexpected line outside any section: `{text}`"))
            }
            Section::Generators => {
                let mut parts = text.split_whitespace();
                let gname = parts.next().unwrap().to_string();
                let kind = parts.next().unwrap_or("");
                let degree = match kind {
                    "translation" => 0,
                    "lorentz" => 1,
                    _ => {
                        return err(
                            line.no,
                            1,
                            "generator declaration must be `NAME translation|lorentz`",
                        )
                    }
                };
                if parts.next().is_some() {
                    return err(line.no, 1, "trailing tokens after generator declaration");
                }
                gen_decls.push((line.no, gname, degree));
            }
            Section::Brackets => {
                let (lhs, rhs) = split_eq(text, line.no)?;
                let toks = lex(&lhs, line.no)?;
                let (a, b) = match toks.as_slice() {
                    [Spanned { tok: Tok::LBracket, .. }, Spanned { tok: Tok::Ident(a), .. }, Spanned { tok: Tok::Comma, .. }, Spanned { tok: Tok::Ident(b), .. }, Spanned { tok: Tok::RBracket, .. }] => {
                        (a.clone(), b.clone())
                    }
                    _ => return err(line.no, 1, "bracket line must start with `[X, Y] =`"),
                };
                bracket_lines.push((line.no, a, b, rhs));
            }
            Section::Coproduct | Section::Counit | Section::Antipode => {
                let (lhs, rhs) = split_eq(text, line.no)?;
                let key = match section {
                    Section::Coproduct => "coproduct",
                    Section::Counit => "counit",
                    _ => "antipode",
                };
                table_lines.entry(key).or_default().push((line.no, lhs, rhs));
            }
            Section::Elements => {
                let (lhs, rhs) = split_eq(text, line.no)?;
                element_lines.push((line.no, lhs, rhs));
            }
        }
    }

    let name = name.ok_or(ParseError { line: 1, col: 1, msg: "missing `name` header".into() })?;
    let param =
        param.ok_or(ParseError { line: 1, col: 1, msg: "missing `parameter` header".into() })?;
    let declared_order = declared_order
        .ok_or(ParseError { line: 1, col: 1, msg: "missing `order` header".into() })?;
    let order = order_override.unwrap_or(declared_order);
    if gen_decls.is_empty() {
        return err(1, 1, "missing `generators` section");
    }
    if gen_decls.len() > crate::ncpoly::MAX_GENS {
        let (l, _, _) = gen_decls[crate::ncpoly::MAX_GENS];
        return err(l, 1, "too many generators");
    }
    let mut gens = Vec::new();
    for (l, gname, degree) in &gen_decls {
        if gens.iter().any(|g: &Generator| g.name == *gname) {
            return err(*l, 1, format!("duplicate generator `{gname}`"));
        }
        gens.push(Generator { name: gname.clone(), lorentz_degree: *degree });
    }
    let alphabet = Arc::new(Alphabet::new(gens, &param));
    let n = alphabet.len();

    // structure sections are evaluated against an empty table in strict
    // order mode: entries must be PBW normal forms
    let empty_algebra = Arc::new(Algebra {
        alphabet: alphabet.clone(),
        brackets: BracketTable::new(),
    });
    let no_named: HashMap<String, Value> = HashMap::new();
    let eval_strict = |src_text: &str, line_no: usize| -> Result<Value, ParseError> {
        let headroom = division_count(src_text);
        let sctx = Context::strict_ordered(empty_algebra.clone(), order + headroom, fuel);
        let env = EvalEnv::new(&sctx, &no_named);
        Ok(parse_expression_at(src_text, &env, line_no)?.truncate(order))
    };

    let mut table = BracketTable::new();
    for (line_no, a, b, rhs) in &bracket_lines {
        let ra = alphabet
            .rank_of(a)
            .ok_or(ParseError { line: *line_no, col: 1, msg: format!("undeclared generator `{a}`") })?;
        let rb = alphabet
            .rank_of(b)
            .ok_or(ParseError { line: *line_no, col: 1, msg: format!("undeclared generator `{b}`") })?;
        if ra == rb {
            return err(*line_no, 1, "bracket of a generator with itself is identically zero");
        }
        let v = eval_strict(rhs, *line_no)?;
        let elem = match v.into_element(order) {
            Some(e) => e,
            None => return err(*line_no, 1, "bracket value must be an algebra element"),
        };
        let (hi, lo, elem) = if ra > rb { (ra, rb, elem) } else { (rb, ra, elem.neg()) };
        if table.get(hi, lo).is_some() {
            return err(*line_no, 1, format!("duplicate bracket entry [{a}, {b}]"));
        }
        table.set(hi, lo, elem);
    }
    let algebra = Arc::new(Algebra { alphabet: alphabet.clone(), brackets: table });

    let mut take_table = |key: &'static str| -> Result<Vec<(usize, String, String)>, ParseError> {
        table_lines.remove(key).ok_or(ParseError {
            line: 1,
            col: 1,
            msg: format!("missing `{key}` section"),
        })
    };

    let mut coproduct: Vec<Option<TensorElement>> = vec![None; n];
    for (line_no, lhs, rhs) in take_table("coproduct")? {
        let r = alphabet.rank_of(lhs.trim()).ok_or(ParseError {
            line: line_no,
            col: 1,
            msg: format!("undeclared generator `{lhs}`"),
        })?;
        if coproduct[r as usize].is_some() {
            return err(line_no, 1, format!("duplicate coproduct entry for `{lhs}`"));
        }
        let v = eval_strict(&rhs, line_no)?;
        let t = match v {
            Value::Tensor(t) if t.arity() == 2 => t,
            Value::Elem(_) | Value::Scalar(_) => {
                return err(line_no, 1, "coproduct value must be an arity-2 tensor")
            }
            Value::Tensor(_) => return err(line_no, 1, "coproduct value must have arity 2"),
        };
        coproduct[r as usize] = Some(t);
    }
    let mut counit: Vec<Option<ZSeries>> = vec![None; n];
    for (line_no, lhs, rhs) in take_table("counit")? {
        let r = alphabet.rank_of(lhs.trim()).ok_or(ParseError {
            line: line_no,
            col: 1,
            msg: format!("undeclared generator `{lhs}`"),
        })?;
        let v = eval_strict(&rhs, line_no)?;
        let s = match v {
            Value::Scalar(s) => s,
            _ => return err(line_no, 1, "counit value must be a scalar series"),
        };
        counit[r as usize] = Some(s);
    }
    let mut antipode: Vec<Option<Element>> = vec![None; n];
    for (line_no, lhs, rhs) in take_table("antipode")? {
        let r = alphabet.rank_of(lhs.trim()).ok_or(ParseError {
            line: line_no,
            col: 1,
            msg: format!("undeclared generator `{lhs}`"),
        })?;
        let v = eval_strict(&rhs, line_no)?;
        let e = match v.into_element(order) {
            Some(e) => e,
            None => return err(line_no, 1, "antipode value must be an algebra element"),
        };
        antipode[r as usize] = Some(e);
    }
    for r in 0..n {
        if coproduct[r].is_none() {
            return err(1, 1, format!("missing coproduct for `{}`", alphabet.name_of(r as u8)));
        }
        if counit[r].is_none() {
            return err(1, 1, format!("missing counit for `{}`", alphabet.name_of(r as u8)));
        }
        if antipode[r].is_none() {
            return err(1, 1, format!("missing antipode for `{}`", alphabet.name_of(r as u8)));
        }
    }

    let presentation = HopfPresentation {
        name,
        algebra: algebra.clone(),
        order,
        coproduct: coproduct.into_iter().map(Option::unwrap).collect(),
        counit: counit.into_iter().map(Option::unwrap).collect(),
        antipode: antipode.into_iter().map(Option::unwrap).collect(),
    };

    // named elements evaluate against the completed algebra
    let mut named: Vec<(String, Value)> = Vec::new();
    let mut named_map: HashMap<String, Value> = HashMap::new();
    for (line_no, lhs, rhs) in element_lines {
        let name = lhs.trim().to_string();
        if alphabet.rank_of(&name).is_some() || name == alphabet.param {
            return err(line_no, 1, format!("element name `{name}` shadows a declared symbol"));
        }
        if named_map.contains_key(&name) {
            return err(line_no, 1, format!("duplicate element definition `{name}`"));
        }
        let headroom = division_count(&rhs);
        let ctx = Context::with_fuel(algebra.clone(), order + headroom, fuel);
        let env = EvalEnv::new(&ctx, &named_map);
        let v = parse_expression_at(&rhs, &env, line_no)?.truncate(order);
        named_map.insert(name.clone(), v.clone());
        named.push((name, v));
    }

    Ok(AlgebraDocument { presentation, named, declared_order })
}

fn split_eq(text: &str, line: usize) -> Result<(String, String), ParseError> {
    match text.find('=') {
        Some(p) => Ok((text[..p].trim().to_string(), text[p + 1..].trim().to_string())),
        None => err(line, 1, "expected `lhs = rhs`"),
    }
}

/// Canonical document text for a presentation (optionally with named
/// elements), suitable for fixtures.
pub fn print_document(pres: &HopfPresentation, named: &[(String, Value)]) -> String {
    let alpha = pres.alphabet();
    let mut out = String::new();
    out.push_str("algfile 1\n");
    out.push_str(&format!("name {}\n", pres.name));
    out.push_str(&format!("parameter {}\n", alpha.param));
    out.push_str(&format!("order {}\n", pres.order));
    out.push_str("\ngenerators\n");
    for r in 0..alpha.len() as u8 {
        out.push_str(&format!(
            "  {} {}\n",
            alpha.name_of(r),
            if alpha.lorentz_degree(r) == 0 { "translation" } else { "lorentz" }
        ));
    }
    out.push_str("\nbrackets\n");
    for ((hi, lo), e) in pres.algebra.brackets.sorted_entries() {
        out.push_str(&format!(
            "  [{}, {}] = {}\n",
            alpha.name_of(hi),
            alpha.name_of(lo),
            print_element(alpha, e)
        ));
    }
    out.push_str("\ncoproduct\n");
    for r in 0..alpha.len() as u8 {
        out.push_str(&format!(
            "  {} = {}\n",
            alpha.name_of(r),
            print_tensor(alpha, &pres.coproduct[r as usize])
        ));
    }
    out.push_str("\ncounit\n");
    for r in 0..alpha.len() as u8 {
        out.push_str(&format!(
            "  {} = {}\n",
            alpha.name_of(r),
            print_series(alpha, &pres.counit[r as usize])
        ));
    }
    out.push_str("\nantipode\n");
    for r in 0..alpha.len() as u8 {
        out.push_str(&format!(
            "  {} = {}\n",
            alpha.name_of(r),
            print_element(alpha, &pres.antipode[r as usize])
        ));
    }
    if !named.is_empty() {
        out.push_str("\nelements\n");
        for (name, v) in named {
            out.push_str(&format!("  {} = {}\n", name, print_value(alpha, v)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;
    use crate::scalars::rat;

    fn bicross_env(order: usize) -> (Arc<Algebra>, usize) {
        let p = models::build_bicross(order).unwrap();
        (p.algebra.clone(), order)
    }

    #[test]
    fn lexes_signed_generator_names() {
        let toks = lex("z*P- - z*P+ + P-~", 1).unwrap();
        let idents: Vec<String> = toks
            .iter()
            .filter_map(|s| match &s.tok {
                Tok::Ident(i) => Some(i.clone()),
                _ => None,
            })
            .collect();
        assert_eq!(idents, vec!["z", "P-", "z", "P+", "P-~"]);
        assert_eq!(
            toks.iter().filter(|s| matches!(s.tok, Tok::Minus)).count(),
            1
        );
        assert_eq!(toks.iter().filter(|s| matches!(s.tok, Tok::Plus)).count(), 1);
    }

    #[test]
    fn parses_unit_and_bracket_sugar() {
        let (algebra, order) = bicross_env(4);
        let ctx = Context::new(algebra, order);
        let named = HashMap::new();
        let env = EvalEnv::new(&ctx, &named);
        assert_eq!(
            parse_expression("1", &env).unwrap(),
            Value::Scalar(ZSeries::one(order))
        );
        // [K3, P+] expands like (1 - exp(-z*P+))/z
        let v = parse_expression("[K3, P+]", &env).unwrap();
        let direct = parse_expression("P+ - 1/2*z*P+^2 + 1/6*z^2*P+^3 - 1/24*z^3*P+^4 + 1/120*z^4*P+^5", &env).unwrap();
        assert_eq!(v, direct);
    }

    #[test]
    fn exp_requires_valuation() {
        let (algebra, order) = bicross_env(3);
        let ctx = Context::new(algebra, order);
        let named = HashMap::new();
        let env = EvalEnv::new(&ctx, &named);
        let e = parse_expression("exp(P1)", &env);
        assert!(e.is_err());
        assert!(parse_expression("exp(-z*P+)", &env).is_ok());
    }

    #[test]
    fn error_positions_are_reported() {
        let (algebra, order) = bicross_env(2);
        let ctx = Context::new(algebra, order);
        let named = HashMap::new();
        let env = EvalEnv::new(&ctx, &named);
        let e = parse_expression("P1 + Q7", &env).unwrap_err();
        assert_eq!((e.line, e.col), (1, 6));
        let e = parse_expression("P1 + ", &env).unwrap_err();
        assert_eq!(e.line, 1);
    }

    #[test]
    fn printer_emits_pinned_spellings() {
        let order = 4;
        let tilde = models::build_tilde(order).unwrap();
        let alpha = tilde.alphabet();
        // Δ of the deformed lightcone translation
        let dpm = &tilde.coproduct[models::PM as usize];
        assert_eq!(
            print_tensor(alpha, dpm),
            "exp(-zt*P+~) (x) P-~ + P-~ (x) exp(zt*P+~)"
        );
        let bic = models::build_bicross(order).unwrap();
        let df1 = &bic.coproduct[models::F1 as usize];
        assert_eq!(
            print_tensor(bic.alphabet(), df1),
            "exp(-z*P+) (x) F1 - z*P2 (x) J3 - z*P- (x) E1 + F1 (x) 1"
        );
        assert_eq!(print_element(bic.alphabet(), &Element::zero()), "0");
    }

    #[test]
    fn print_parse_round_trip_on_structure_tables() {
        let order = 3;
        let bic = models::build_bicross(order).unwrap();
        let alpha = bic.alphabet();
        let ctx = Context::new(bic.algebra.clone(), order);
        let named = HashMap::new();
        let env = EvalEnv::new(&ctx, &named);
        for r in 0..10u8 {
            let gamma = &bic.antipode[r as usize];
            let text = print_element(alpha, gamma);
            let back = parse_expression(&text, &env).unwrap().into_element(order).unwrap();
            assert_eq!(&back, gamma, "antipode of rank {r}: {text}");
        }
        for ((hi, lo), e) in bic.algebra.brackets.sorted_entries() {
            let text = print_element(alpha, e);
            let back = parse_expression(&text, &env).unwrap().into_element(order).unwrap();
            assert_eq!(&back, e, "bracket [{hi},{lo}]: {text}");
        }
    }

    #[test]
    fn division_headroom_keeps_quotients_exact() {
        let order = 4;
        let bic = models::build_bicross(order).unwrap();
        // evaluate with headroom, as parse_document does
        let src = "(1 - exp(-z*P+))/z";
        let headroom = division_count(src);
        assert_eq!(headroom, 1);
        let ctx = Context::new(bic.algebra.clone(), order + headroom);
        let named = HashMap::new();
        let env = EvalEnv::new(&ctx, &named);
        let v = parse_expression(src, &env).unwrap().truncate(order);
        let expect = models::expm1_over_z(order, rint(-1), models::PP).neg();
        assert_eq!(v, Value::Elem(expect));
        let _ = rat(1, 2);
    }

    #[test]
    fn document_round_trip_for_builtins() {
        for order in [0usize, 3] {
            for kind in [
                models::PresentationKind::Classical,
                models::PresentationKind::Bicross,
                models::PresentationKind::Tilde,
                models::PresentationKind::Kinematical,
            ] {
                let pres = kind.build(order).unwrap();
                let text = print_document(&pres, &[]);
                let doc = parse_document(&text, None, crate::ncpoly::DEFAULT_FUEL)
                    .unwrap_or_else(|e| panic!("{}: {e}\n{text}", kind.name()));
                assert_eq!(doc.presentation.algebra.brackets, pres.algebra.brackets, "{}", kind.name());
                assert_eq!(doc.presentation.coproduct, pres.coproduct);
                assert_eq!(doc.presentation.counit, pres.counit);
                assert_eq!(doc.presentation.antipode, pres.antipode);
                // print∘parse is idempotent on normalized text
                assert_eq!(print_document(&doc.presentation, &[]), text);
            }
        }
    }

    #[test]
    fn mutated_fixture_loads_but_fails_jacobi() {
        let order = 3;
        let pres = models::build_bicross(order).unwrap();
        let text = print_document(&pres, &[]);
        // flip one sign in the printed boost bracket
        let broken = text.replace("[K3, P+] = P+", "[K3, P+] = -P+");
        assert_ne!(text, broken);
        let doc = parse_document(&broken, None, crate::ncpoly::DEFAULT_FUEL).unwrap();
        let h = crate::hopfdef::HopfContext::new(Arc::new(doc.presentation));
        let report = crate::hopfdef::check_jacobi(&h).unwrap();
        assert!(!report.passed);
    }

    #[test]
    fn strict_mode_rejects_unordered_structure_entries() {
        let src = "\
algfile 1
name toy
parameter z
order 2

generators
  A translation
  B lorentz

brackets
  [B, A] = B*A

coproduct
  A = A (x) 1 + 1 (x) A
  B = B (x) 1 + 1 (x) B

counit
  A = 0
  B = 0

antipode
  A = -A
  B = -B
";
        let e = parse_document(src, None, crate::ncpoly::DEFAULT_FUEL).unwrap_err();
        assert!(e.msg.contains("normal order"), "{}", e.msg);
    }
}
