//! Expression language of the command line: rationals, the generators
//! `x` and `y`, scalar variables (`t`, `u`, `v`, or `s1`..`s6` in the
//! three-dimensional mode), sums, products, natural powers, and
//! left-normed brackets.  `·` is accepted as a synonym for `*`, and
//! syntax errors carry line/column positions.

use std::str::FromStr;
use std::sync::Arc;

use genmat::error::{Error, Result};
use genmat::mat2::Gen;
use genmat::poly::{Poly, VarSpec};
use genmat::rat::{rat_int, Rat};
use genmat::series::TruncSeries;
use genmat::walg::{w_bracket, w_mul, WElement};

/// Parsed expression; brackets are left-normed and have length ≥ 2.
#[derive(Clone, Debug, PartialEq)]
pub enum ExprAst {
    Generator(Gen),
    CentralVar(String),
    Rational(Rat),
    Sum(Vec<ExprAst>),
    ScalarMul(Rat, Box<ExprAst>),
    AssocProduct(Vec<ExprAst>),
    Bracket(Vec<ExprAst>),
    Power(Box<ExprAst>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
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
}

struct Spanned {
    tok: Tok,
    pos: usize,
}

fn line_col(input: &str, pos: usize) -> (usize, usize) {
    let before = &input[..pos.min(input.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.chars().rev().take_while(|&c| c != '\n').count() + 1;
    (line, col)
}

fn syntax_error(input: &str, pos: usize, msg: &str) -> Error {
    let (line, col) = line_col(input, pos);
    Error::usage(format!("syntax error at line {line}, column {col}: {msg}"))
}

fn lex(input: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut it = input.char_indices().peekable();
    while let Some(&(pos, ch)) = it.peek() {
        let tok = match ch {
            c if c.is_whitespace() => {
                it.next();
                continue;
            }
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            c if c.is_ascii_digit() => {
                let mut text = String::new();
                while let Some(&(_, d)) = it.peek() {
                    if d.is_ascii_digit() {
                        text.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push(Spanned { tok: Tok::Int(text), pos });
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let mut text = String::new();
                while let Some(&(_, d)) = it.peek() {
                    if d.is_ascii_alphanumeric() {
                        text.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push(Spanned { tok: Tok::Ident(text), pos });
                continue;
            }
            other => {
                return Err(syntax_error(
                    input,
                    pos,
                    &format!("unexpected character '{other}'"),
                ))
            }
        };
        it.next();
        out.push(Spanned { tok, pos });
    }
    Ok(out)
}

struct Parser<'a> {
    input: &'a str,
    toks: Vec<Spanned>,
    idx: usize,
}

/// Parses an expression; errors carry line/column positions.
pub fn parse(input: &str) -> Result<ExprAst> {
    let toks = lex(input)?;
    let mut p = Parser { input, toks, idx: 0 };
    let e = p.expr()?;
    if p.idx < p.toks.len() {
        return Err(p.error_here("unexpected trailing input"));
    }
    Ok(e)
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|s| &s.tok)
    }

    fn pos_here(&self) -> usize {
        self.toks
            .get(self.idx)
            .map(|s| s.pos)
            .unwrap_or(self.input.len())
    }

    fn error_here(&self, msg: &str) -> Error {
        syntax_error(self.input, self.pos_here(), msg)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<ExprAst> {
        let mut terms = Vec::new();
        let negated = self.eat(&Tok::Minus);
        let first = self.term()?;
        terms.push(if negated { negate(first) } else { first });
        loop {
            if self.eat(&Tok::Plus) {
                terms.push(self.term()?);
            } else if self.eat(&Tok::Minus) {
                terms.push(negate(self.term()?));
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            ExprAst::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<ExprAst> {
        if matches!(self.peek(), Some(Tok::Int(_))) {
            let r = self.rational()?;
            let mut factors = Vec::new();
            // A factor may follow the leading rational without a `*`.
            if self.eat(&Tok::Star) || self.starts_factor() {
                factors.push(self.factor()?);
                while self.eat(&Tok::Star) {
                    factors.push(self.factor()?);
                }
            }
            Ok(if factors.is_empty() {
                ExprAst::Rational(r)
            } else {
                ExprAst::ScalarMul(r, Box::new(product_of(factors)))
            })
        } else {
            let mut factors = vec![self.factor()?];
            while self.eat(&Tok::Star) {
                factors.push(self.factor()?);
            }
            Ok(product_of(factors))
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Ident(_) | Tok::LParen | Tok::LBracket)
        )
    }

    fn factor(&mut self) -> Result<ExprAst> {
        let base = match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.idx += 1;
                match name.as_str() {
                    "x" => ExprAst::Generator(Gen::X),
                    "y" => ExprAst::Generator(Gen::Y),
                    "t" | "u" | "v" | "s1" | "s2" | "s3" | "s4" | "s5" | "s6" => {
                        ExprAst::CentralVar(name)
                    }
                    other => {
                        self.idx -= 1;
                        return Err(self.error_here(&format!("unknown symbol '{other}'")));
                    }
                }
            }
            Some(Tok::LParen) => {
                self.idx += 1;
                let inner = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.error_here("expected ')'"));
                }
                inner
            }
            Some(Tok::LBracket) => {
                self.idx += 1;
                let mut args = vec![self.expr()?];
                while self.eat(&Tok::Comma) {
                    args.push(self.expr()?);
                }
                if !self.eat(&Tok::RBracket) {
                    return Err(self.error_here("expected ',' or ']'"));
                }
                if args.len() < 2 {
                    return Err(self.error_here("a bracket needs at least two arguments"));
                }
                ExprAst::Bracket(args)
            }
            _ => {
                return Err(self.error_here("expected a number, a symbol, '(', or '['"));
            }
        };
        if self.eat(&Tok::Caret) {
            let n = match self.peek() {
                Some(Tok::Int(text)) => text
                    .parse::<u32>()
                    .map_err(|_| self.error_here("exponent out of range"))?,
                _ => return Err(self.error_here("exponent must be a natural number")),
            };
            self.idx += 1;
            return Ok(ExprAst::Power(Box::new(base), n));
        }
        Ok(base)
    }

    fn rational(&mut self) -> Result<Rat> {
        let numer = match self.peek().cloned() {
            Some(Tok::Int(text)) => {
                self.idx += 1;
                text
            }
            _ => return Err(self.error_here("expected a number")),
        };
        if self.eat(&Tok::Slash) {
            let denom = match self.peek().cloned() {
                Some(Tok::Int(text)) => {
                    self.idx += 1;
                    text
                }
                _ => return Err(self.error_here("expected a denominator")),
            };
            if denom.chars().all(|c| c == '0') {
                self.idx -= 1;
                return Err(self.error_here("zero denominator"));
            }
            Rat::from_str(&format!("{numer}/{denom}"))
                .map_err(|_| self.error_here("malformed rational"))
        } else {
            Rat::from_str(&numer).map_err(|_| self.error_here("malformed number"))
        }
    }
}

fn negate(e: ExprAst) -> ExprAst {
    ExprAst::ScalarMul(rat_int(-1), Box::new(e))
}

fn product_of(mut factors: Vec<ExprAst>) -> ExprAst {
    if factors.len() == 1 {
        factors.pop().unwrap()
    } else {
        ExprAst::AssocProduct(factors)
    }
}

/// Evaluates the expression in the four-component algebra over `vars`.
pub fn to_welement(ast: &ExprAst, vars: &Arc<VarSpec>, order: u32) -> Result<WElement> {
    match ast {
        ExprAst::Generator(Gen::X) => Ok(WElement::gen_x(vars, order)),
        ExprAst::Generator(Gen::Y) => Ok(WElement::gen_y(vars, order)),
        ExprAst::CentralVar(name) => match vars.index_of(name) {
            Some(i) => Ok(WElement::scalar(
                TruncSeries::new(Poly::var(vars, i), order),
                order,
            )),
            None => Err(Error::usage(format!(
                "the variable '{name}' is not available in this context"
            ))),
        },
        ExprAst::Rational(r) => Ok(WElement::scalar(
            TruncSeries::constant(vars, r.clone(), order),
            order,
        )),
        ExprAst::Sum(terms) => {
            let mut acc = to_welement(&terms[0], vars, order)?;
            for term in &terms[1..] {
                acc = &acc + &to_welement(term, vars, order)?;
            }
            Ok(acc)
        }
        ExprAst::ScalarMul(r, inner) => Ok(to_welement(inner, vars, order)?.scale(r)),
        ExprAst::AssocProduct(factors) => {
            let mut acc = to_welement(&factors[0], vars, order)?;
            for factor in &factors[1..] {
                acc = w_mul(&acc, &to_welement(factor, vars, order)?)?;
            }
            Ok(acc)
        }
        ExprAst::Bracket(args) => {
            let mut acc = to_welement(&args[0], vars, order)?;
            for arg in &args[1..] {
                acc = w_bracket(&acc, &to_welement(arg, vars, order)?)?;
            }
            Ok(acc)
        }
        ExprAst::Power(base, n) => {
            if *n == 0 {
                return Ok(WElement::one(vars, order));
            }
            let base = to_welement(base, vars, order)?;
            let mut acc = base.clone();
            for _ in 1..*n {
                acc = w_mul(&acc, &base)?;
            }
            Ok(acc)
        }
    }
}

/// Evaluates the expression as a plain polynomial (coordinate input for
/// the three-dimensional algebra).
pub fn to_poly(ast: &ExprAst, vars: &Arc<VarSpec>) -> Result<Poly> {
    match ast {
        ExprAst::Generator(_) => Err(Error::usage(
            "x and y are not scalars; coordinates are polynomials in s1..s6",
        )),
        ExprAst::Bracket(_) => Err(Error::usage(
            "brackets are not available inside coordinate polynomials",
        )),
        ExprAst::CentralVar(name) => match vars.index_of(name) {
            Some(i) => Ok(Poly::var(vars, i)),
            None => Err(Error::usage(format!(
                "the variable '{name}' is not available in this context"
            ))),
        },
        ExprAst::Rational(r) => Ok(Poly::constant(vars, r.clone())),
        ExprAst::Sum(terms) => {
            let mut acc = to_poly(&terms[0], vars)?;
            for term in &terms[1..] {
                acc = &acc + &to_poly(term, vars)?;
            }
            Ok(acc)
        }
        ExprAst::ScalarMul(r, inner) => Ok(to_poly(inner, vars)?.scale(r)),
        ExprAst::AssocProduct(factors) => {
            let mut acc = to_poly(&factors[0], vars)?;
            for factor in &factors[1..] {
                acc = &acc * &to_poly(factor, vars)?;
            }
            Ok(acc)
        }
        ExprAst::Power(base, n) => Ok(to_poly(base, vars)?.pow(*n)),
    }
}
