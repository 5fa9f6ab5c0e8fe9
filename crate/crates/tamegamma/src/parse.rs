//! Parser for the polynomial input grammar.
//!
//! ```text
//! input    :=  polynomial, possibly spread over several lines;
//!              '#' starts a comment running to the end of the line
//! poly     :=  ['+'|'-'] term { ('+'|'-') term }
//! term     :=  factor { '*' factor }
//! factor   :=  'i' | rational | '(' gaussian ')' | 'z'K ['^' exp] | 't' ['^' exp]
//! rational :=  INT ['/' INT]
//! gaussian :=  [sign] part [('+'|'-') part]     where part := rational ['*' 'i'] | 'i'
//! ```
//!
//! Examples: `z1^3 + z2^3 + z2*z3^2`, `(1+2*i)*z1*z2 - 1/2*z2^2`,
//! `z1^2*z2^3 + t*z1^2*z2^4`.
//!
//! The variable count may be declared by the caller (CLI flag `--n`); when
//! it is absent the parser infers the count from the largest `z` index.  If
//! any `t` appears the result is a [`FamilyPolynomial`].  All errors carry
//! 1-based line/column positions.
//!
//! Guards for untrusted input: variable indices are capped at 4096,
//! `z` exponents at 10^6 and `t` exponents at 1024 — far below anything a
//! germ analysis can process, and low enough that downstream exponent
//! arithmetic cannot overflow.

use crate::poly::{ExponentVector, FamilyPolynomial, SparsePolynomial, UniPoly};
use crate::rational::GaussianRational;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;

const VAR_CAP: usize = 4096;
const Z_EXP_CAP: u32 = 1_000_000;
const T_EXP_CAP: u32 = 1024;

/// A successfully parsed input: a plain polynomial, or a family when the
/// parameter `t` occurs in the text.
#[derive(Debug, Clone, PartialEq)]
pub enum ParsedInput {
    Single(SparsePolynomial),
    Family(FamilyPolynomial),
}

impl ParsedInput {
    pub fn n(&self) -> usize {
        match self {
            ParsedInput::Single(p) => p.n(),
            ParsedInput::Family(f) => f.n(),
        }
    }

    pub fn is_family(&self) -> bool {
        matches!(self, ParsedInput::Family(_))
    }

    /// Canonical text for the parsed input (reparses to the same value).
    pub fn to_text(&self) -> String {
        match self {
            ParsedInput::Single(p) => p.to_string(),
            ParsedInput::Family(f) => f.to_string(),
        }
    }
}

/// Parses polynomial text.  `declared_n` fixes the variable count (indices
/// beyond it are errors); `None` infers the count from the input.
pub fn parse_polynomial(text: &str, declared_n: Option<usize>) -> Result<ParsedInput> {
    if let Some(n) = declared_n {
        if n > VAR_CAP {
            return Err(Error::pre(format!(
                "declared variable count {n} exceeds the supported maximum {VAR_CAP}"
            )));
        }
    }
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        declared_n,
        max_index: None,
        saw_t: false,
    };
    let raw_terms = parser.parse_poly()?;
    parser.assemble(raw_terms)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    VarZ(usize),
    T,
    ImaginaryUnit,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number {n}"),
            Tok::VarZ(k) => format!("variable z{}", k + 1),
            Tok::T => "parameter t".to_string(),
            Tok::ImaginaryUnit => "imaginary unit i".to_string(),
            Tok::Plus => "'+'".to_string(),
            Tok::Minus => "'-'".to_string(),
            Tok::Star => "'*'".to_string(),
            Tok::Slash => "'/'".to_string(),
            Tok::Caret => "'^'".to_string(),
            Tok::LParen => "'('".to_string(),
            Tok::RParen => "')'".to_string(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err_at(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                bump(&mut chars);
            }
            '#' => {
                // Comment to end of line.
                while chars.peek().is_some_and(|&c| c != '\n') {
                    bump(&mut chars);
                }
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                let c = bump(&mut chars);
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    _ => Tok::RParen,
                };
                out.push(Spanned { tok, line: tl, col: tc });
            }
            '0'..='9' => {
                let mut digits = String::new();
                while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                    digits.push(bump(&mut chars));
                }
                let value: BigInt = digits.parse().expect("digit string parses");
                out.push(Spanned {
                    tok: Tok::Int(value),
                    line: tl,
                    col: tc,
                });
            }
            'z' => {
                bump(&mut chars);
                let mut digits = String::new();
                while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                    digits.push(bump(&mut chars));
                }
                if digits.is_empty() {
                    return Err(err_at(tl, tc, "expected a variable index after 'z'"));
                }
                let index: usize = digits
                    .parse()
                    .map_err(|_| err_at(tl, tc, "variable index too large"))?;
                if index == 0 {
                    return Err(err_at(tl, tc, "variable indices start at z1"));
                }
                if index > VAR_CAP {
                    return Err(err_at(
                        tl,
                        tc,
                        format!("variable index {index} exceeds the supported maximum {VAR_CAP}"),
                    ));
                }
                out.push(Spanned {
                    tok: Tok::VarZ(index - 1),
                    line: tl,
                    col: tc,
                });
            }
            't' => {
                bump(&mut chars);
                out.push(Spanned {
                    tok: Tok::T,
                    line: tl,
                    col: tc,
                });
            }
            'i' => {
                bump(&mut chars);
                out.push(Spanned {
                    tok: Tok::ImaginaryUnit,
                    line: tl,
                    col: tc,
                });
            }
            other => {
                return Err(err_at(tl, tc, format!("unexpected character '{other}'")));
            }
        }
    }
    Ok(out)
}

/// One additive term before ring assembly: a coefficient, a power of `t`
/// and the `z` exponents it mentions.
struct RawTerm {
    coeff: GaussianRational,
    tpow: u32,
    zexps: BTreeMap<usize, u32>,
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    declared_n: Option<usize>,
    max_index: Option<usize>,
    saw_t: bool,
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    /// Position of the current token, or just past the last one (for
    /// end-of-input diagnostics).
    fn here(&self) -> (usize, usize) {
        match self.tokens.get(self.pos) {
            Some(s) => (s.line, s.col),
            None => match self.tokens.last() {
                Some(s) => (s.line, s.col + 1),
                None => (1, 1),
            },
        }
    }

    fn error_here(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self.here();
        err_at(line, col, msg)
    }

    fn expect(&mut self, want: &Tok, what: &str) -> Result<Spanned> {
        match self.next() {
            Some(s) if s.tok == *want => Ok(s),
            Some(s) => Err(err_at(
                s.line,
                s.col,
                format!("expected {what}, found {}", s.tok.describe()),
            )),
            None => {
                let (line, col) = self.here();
                Err(err_at(line, col, format!("expected {what}, found end of input")))
            }
        }
    }

    fn parse_poly(&mut self) -> Result<Vec<RawTerm>> {
        if self.tokens.is_empty() {
            return Err(err_at(1, 1, "empty input"));
        }
        let mut terms = Vec::new();
        let mut negate = false;
        match self.peek().map(|s| s.tok.clone()) {
            Some(Tok::Plus) => {
                self.next();
            }
            Some(Tok::Minus) => {
                self.next();
                negate = true;
            }
            _ => {}
        }
        loop {
            let mut term = self.parse_term()?;
            if negate {
                term.coeff = -term.coeff;
            }
            terms.push(term);
            match self.next() {
                None => break,
                Some(s) => match s.tok {
                    Tok::Plus => negate = false,
                    Tok::Minus => negate = true,
                    other => {
                        return Err(err_at(
                            s.line,
                            s.col,
                            format!("expected '+' or '-' between terms, found {}", other.describe()),
                        ))
                    }
                },
            }
        }
        Ok(terms)
    }

    fn parse_term(&mut self) -> Result<RawTerm> {
        let mut term = RawTerm {
            coeff: GaussianRational::one(),
            tpow: 0,
            zexps: BTreeMap::new(),
        };
        self.parse_factor(&mut term)?;
        while self.peek().is_some_and(|s| s.tok == Tok::Star) {
            self.next();
            self.parse_factor(&mut term)?;
        }
        Ok(term)
    }

    fn parse_factor(&mut self, term: &mut RawTerm) -> Result<()> {
        let s = match self.next() {
            Some(s) => s,
            None => return Err(self.error_here("expected a factor, found end of input")),
        };
        match s.tok {
            Tok::Int(num) => {
                let value = self.maybe_fraction(num, s.line, s.col)?;
                term.coeff = &term.coeff * &GaussianRational::from_rational(value);
                Ok(())
            }
            Tok::ImaginaryUnit => {
                term.coeff = &term.coeff * &GaussianRational::i();
                Ok(())
            }
            Tok::LParen => {
                let value = self.parse_gaussian()?;
                self.expect(&Tok::RParen, "')'")?;
                term.coeff = &term.coeff * &value;
                Ok(())
            }
            Tok::VarZ(index) => {
                if let Some(n) = self.declared_n {
                    if index >= n {
                        return Err(err_at(
                            s.line,
                            s.col,
                            format!(
                                "variable z{} exceeds the declared variable count {}",
                                index + 1,
                                n
                            ),
                        ));
                    }
                }
                self.max_index = Some(self.max_index.map_or(index, |m| m.max(index)));
                let e = self.parse_exponent()?;
                let slot = term.zexps.entry(index).or_insert(0);
                *slot = slot.checked_add(e).filter(|&v| v <= Z_EXP_CAP).ok_or_else(|| {
                    err_at(
                        s.line,
                        s.col,
                        format!("exponent of z{} exceeds the supported maximum {Z_EXP_CAP}", index + 1),
                    )
                })?;
                Ok(())
            }
            Tok::T => {
                self.saw_t = true;
                let e = self.parse_exponent()?;
                term.tpow = term
                    .tpow
                    .checked_add(e)
                    .filter(|&v| v <= T_EXP_CAP)
                    .ok_or_else(|| {
                        err_at(
                            s.line,
                            s.col,
                            format!("exponent of t exceeds the supported maximum {T_EXP_CAP}"),
                        )
                    })?;
                Ok(())
            }
            other => Err(err_at(
                s.line,
                s.col,
                format!("expected a factor, found {}", other.describe()),
            )),
        }
    }

    /// Exponent after a variable: `^ INT`, defaulting to 1.  A minus sign
    /// after `^` is called out explicitly — the grammar has no negative
    /// exponents.
    fn parse_exponent(&mut self) -> Result<u32> {
        if !self.peek().is_some_and(|s| s.tok == Tok::Caret) {
            return Ok(1);
        }
        self.next();
        let s = match self.next() {
            Some(s) => s,
            None => return Err(self.error_here("expected an exponent, found end of input")),
        };
        match s.tok {
            Tok::Int(value) => u32::try_from(&value)
                .ok()
                .filter(|&v| v <= Z_EXP_CAP)
                .ok_or_else(|| err_at(s.line, s.col, "exponent too large")),
            Tok::Minus => Err(err_at(s.line, s.col, "negative exponents are not allowed")),
            other => Err(err_at(
                s.line,
                s.col,
                format!("expected an exponent, found {}", other.describe()),
            )),
        }
    }

    fn maybe_fraction(&mut self, num: BigInt, line: usize, col: usize) -> Result<BigRational> {
        if self.peek().is_some_and(|s| s.tok == Tok::Slash) {
            self.next();
            let s = match self.next() {
                Some(s) => s,
                None => return Err(self.error_here("expected a denominator, found end of input")),
            };
            match s.tok {
                Tok::Int(den) => {
                    if den.is_zero() {
                        return Err(err_at(s.line, s.col, "zero denominator"));
                    }
                    Ok(BigRational::new(num, den))
                }
                other => Err(err_at(
                    s.line,
                    s.col,
                    format!("expected a denominator, found {}", other.describe()),
                )),
            }
        } else {
            let _ = (line, col);
            Ok(BigRational::from_integer(num))
        }
    }

    /// The inside of a parenthesized Gaussian literal: `a`, `a+b*i`,
    /// `b*i`, `-1+i`, `1/2-3/4*i`, `i`.
    fn parse_gaussian(&mut self) -> Result<GaussianRational> {
        let mut value = self.parse_gaussian_part()?;
        if let Some(s) = self.peek() {
            match s.tok {
                Tok::Plus => {
                    self.next();
                    let rhs = self.parse_gaussian_part_unsigned()?;
                    value = &value + &rhs;
                }
                Tok::Minus => {
                    self.next();
                    let rhs = self.parse_gaussian_part_unsigned()?;
                    value = &value - &rhs;
                }
                _ => {}
            }
        }
        Ok(value)
    }

    fn parse_gaussian_part(&mut self) -> Result<GaussianRational> {
        match self.peek().map(|s| s.tok.clone()) {
            Some(Tok::Minus) => {
                self.next();
                Ok(-self.parse_gaussian_part_unsigned()?)
            }
            Some(Tok::Plus) => {
                self.next();
                self.parse_gaussian_part_unsigned()
            }
            _ => self.parse_gaussian_part_unsigned(),
        }
    }

    fn parse_gaussian_part_unsigned(&mut self) -> Result<GaussianRational> {
        let s = match self.next() {
            Some(s) => s,
            None => return Err(self.error_here("expected a number, found end of input")),
        };
        match s.tok {
            Tok::ImaginaryUnit => Ok(GaussianRational::i()),
            Tok::Int(num) => {
                let q = self.maybe_fraction(num, s.line, s.col)?;
                // Optional `* i` suffix makes the part imaginary.
                if self.peek().is_some_and(|x| x.tok == Tok::Star) {
                    let save = self.pos;
                    self.next();
                    match self.next() {
                        Some(x) if x.tok == Tok::ImaginaryUnit => {
                            return Ok(GaussianRational::new(BigRational::zero(), q));
                        }
                        _ => {
                            // Not `* i`; give back both tokens.
                            self.pos = save;
                        }
                    }
                }
                Ok(GaussianRational::from_rational(q))
            }
            other => Err(err_at(
                s.line,
                s.col,
                format!("expected a number or 'i', found {}", other.describe()),
            )),
        }
    }

    fn assemble(&self, raw: Vec<RawTerm>) -> Result<ParsedInput> {
        let n = match self.declared_n {
            Some(n) => n,
            None => match self.max_index {
                Some(m) => m + 1,
                None if self.saw_t => 0,
                None => {
                    return Err(err_at(
                        1,
                        1,
                        "cannot infer the variable count: no z variable in the input \
                         (declare one with --n)",
                    ))
                }
            },
        };
        let to_exponents = |zexps: &BTreeMap<usize, u32>| {
            let mut entries = vec![0u32; n];
            for (&idx, &e) in zexps {
                entries[idx] = e;
            }
            ExponentVector::new(entries)
        };
        if self.saw_t {
            let terms = raw
                .into_iter()
                .map(|t| (to_exponents(&t.zexps), UniPoly::monomial(t.tpow, t.coeff)))
                .collect::<Vec<_>>();
            Ok(ParsedInput::Family(FamilyPolynomial::new(n, terms)?))
        } else {
            let terms = raw
                .into_iter()
                .map(|t| (to_exponents(&t.zexps), t.coeff))
                .collect::<Vec<_>>();
            Ok(ParsedInput::Single(SparsePolynomial::new(n, terms)?))
        }
    }
}
