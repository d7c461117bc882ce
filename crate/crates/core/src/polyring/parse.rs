//! Text parser for polynomials written the way knot tables print them:
//! `s^-1*t^-1 - s^-1 - t^-1`, `2t^{-1} + 2t - 3`, `(t - 2)(2t - 1)`.
//! Multiplication may be implicit; `t^-k` means the k-th power of the
//! formal variable `t^-1`.

use num_bigint::BigInt;

use super::{Monomial, MonomialOrder, PolyError, Polynomial, Var};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
    BraceOpen,
    BraceClose,
}

fn tokenize(text: &str) -> Result<Vec<Tok>, PolyError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Tok::Num(s.parse().map_err(|_| PolyError::Parse(s.clone()))?));
            }
            'a'..='z' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_lowercase() {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' | '−' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::Open);
                i += 1;
            }
            ')' => {
                out.push(Tok::Close);
                i += 1;
            }
            '{' => {
                out.push(Tok::BraceOpen);
                i += 1;
            }
            '}' => {
                out.push(Tok::BraceClose);
                i += 1;
            }
            other => return Err(PolyError::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    ord: MonomialOrder,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), PolyError> {
        match self.bump() {
            Some(t) if t == want => Ok(()),
            other => Err(PolyError::Parse(format!("expected {want:?}, found {other:?}"))),
        }
    }

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = Polynomial::zero(self.ord);
        let mut negate = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            Some(Tok::Plus) => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    negate = false;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    negate = true;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Open) => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn exponent(&mut self) -> Result<i64, PolyError> {
        let braced = matches!(self.peek(), Some(Tok::BraceOpen));
        if braced {
            self.bump();
        }
        let neg = matches!(self.peek(), Some(Tok::Minus));
        if neg {
            self.bump();
        }
        let e = match self.bump() {
            Some(Tok::Num(n)) => i64::try_from(&n).map_err(|_| PolyError::Parse("exponent too large".into()))?,
            other => return Err(PolyError::Parse(format!("bad exponent {other:?}"))),
        };
        if braced {
            self.expect(Tok::BraceClose)?;
        }
        Ok(if neg { -e } else { e })
    }

    fn factor(&mut self) -> Result<Polynomial, PolyError> {
        let ord = self.ord;
        match self.bump() {
            Some(Tok::Num(n)) => {
                let base = Polynomial::constant(n, ord);
                self.maybe_power(base)
            }
            Some(Tok::Open) => {
                let inner = self.expr()?;
                self.expect(Tok::Close)?;
                self.maybe_power(inner)
            }
            Some(Tok::Ident(name)) => {
                let var = Var::from_name(&name).ok_or_else(|| PolyError::Parse(format!("unknown variable {name}")))?;
                if !matches!(self.peek(), Some(Tok::Caret)) {
                    return Ok(Polynomial::var(var, ord));
                }
                self.bump();
                let e = self.exponent()?;
                let (var, e) = match (var, e) {
                    (_, 0) => return Ok(Polynomial::one(ord)),
                    (v, e) if e > 0 => (v, e as u32),
                    (Var::T, e) => (Var::TInv, (-e) as u32),
                    (Var::S, e) => (Var::SInv, (-e) as u32),
                    _ => return Err(PolyError::Parse(format!("negative power of {name}"))),
                };
                Ok(Polynomial::monomial(1, Monomial::var_pow(var, e), ord))
            }
            other => Err(PolyError::Parse(format!("unexpected token {other:?}"))),
        }
    }

    fn maybe_power(&mut self, base: Polynomial) -> Result<Polynomial, PolyError> {
        if !matches!(self.peek(), Some(Tok::Caret)) {
            return Ok(base);
        }
        self.bump();
        let e = self.exponent()?;
        if e < 0 {
            return Err(PolyError::Parse("negative power of a compound expression".into()));
        }
        Ok(base.pow(e as u32))
    }
}

pub(super) fn parse_polynomial(text: &str, ord: MonomialOrder) -> Result<Polynomial, PolyError> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(PolyError::Parse("empty input".into()));
    }
    let mut p = Parser { toks, pos: 0, ord };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(PolyError::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(poly)
}
