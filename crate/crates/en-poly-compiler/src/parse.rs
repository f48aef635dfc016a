use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{PolyError, Polynomial, Result};

/// Parse a polynomial expression over variables `x1, x2, ...` with the
/// operators `+ - * ^` and parentheses. Exponents must be nonnegative
/// integer literals.
///
/// The variable count defaults to the highest index mentioned; an optional
/// leading header line `p <count>` widens it. `#` starts a comment.
pub fn parse_polynomial(text: &str) -> Result<Polynomial> {
    let mut declared: Option<usize> = None;
    let mut expr = String::new();
    for raw in text.lines() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        if expr.is_empty() && declared.is_none() {
            let mut parts = line.split_whitespace();
            if let (Some("p"), Some(count), None) = (parts.next(), parts.next(), parts.next()) {
                let n: usize = count.parse().map_err(|_| {
                    PolyError::parse(0, format!("invalid variable count {:?}", count))
                })?;
                if n == 0 {
                    return Err(PolyError::parse(
                        0,
                        "declared variable count must be positive",
                    ));
                }
                declared = Some(n);
                continue;
            }
        }
        expr.push_str(line);
        expr.push(' ');
    }

    let tokens = tokenize(&expr)?;
    if tokens.is_empty() {
        return Err(PolyError::parse(0, "empty polynomial expression"));
    }
    let mut parser = Parser { tokens, pos: 0 };
    let map_poly = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        let (pos, _) = parser.tokens[parser.pos];
        return Err(PolyError::parse(pos, "trailing input after expression"));
    }

    let max_index = map_poly.max_var_index();
    let p = match declared {
        Some(d) if d < max_index => {
            return Err(PolyError::parse(
                0,
                format!("declared p={} but variable x{} occurs", d, max_index),
            ))
        }
        Some(d) => d,
        None => max_index,
    };
    Ok(map_poly.into_polynomial(p))
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<(usize, Token)>> {
    let mut tokens = Vec::new();
    let bytes = input.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '+' => {
                tokens.push((i, Token::Plus));
                i += 1;
            }
            '-' => {
                tokens.push((i, Token::Minus));
                i += 1;
            }
            '*' => {
                tokens.push((i, Token::Star));
                i += 1;
            }
            '^' => {
                tokens.push((i, Token::Caret));
                i += 1;
            }
            '(' => {
                tokens.push((i, Token::LParen));
                i += 1;
            }
            ')' => {
                tokens.push((i, Token::RParen));
                i += 1;
            }
            'x' => {
                let start = i;
                i += 1;
                let digits_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == digits_start {
                    return Err(PolyError::parse(start, "expected variable index after 'x'"));
                }
                let index: usize = input[digits_start..i]
                    .parse()
                    .map_err(|_| PolyError::parse(start, "variable index out of range"))?;
                if index == 0 {
                    return Err(PolyError::parse(start, "variable indices start at 1"));
                }
                tokens.push((start, Token::Var(index)));
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let value: BigInt = input[start..i].parse().expect("decimal digits");
                tokens.push((start, Token::Int(value)));
            }
            other => {
                return Err(PolyError::parse(
                    i,
                    format!("unexpected character {:?}", other),
                ));
            }
        }
    }
    Ok(tokens)
}

/// Polynomial under construction, keyed by sparse variable->exponent maps
/// so the final variable count can be fixed after parsing.
#[derive(Debug, Clone, Default)]
struct MapPoly {
    terms: BTreeMap<BTreeMap<usize, u32>, BigInt>,
}

impl MapPoly {
    fn constant(value: BigInt) -> Self {
        let mut poly = MapPoly::default();
        if !value.is_zero() {
            poly.terms.insert(BTreeMap::new(), value);
        }
        poly
    }

    fn var(index: usize) -> Self {
        let mut poly = MapPoly::default();
        poly.terms
            .insert(BTreeMap::from([(index, 1)]), BigInt::one());
        poly
    }

    fn add_term(&mut self, mono: BTreeMap<usize, u32>, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    fn add(mut self, other: MapPoly) -> MapPoly {
        for (m, c) in other.terms {
            self.add_term(m, c);
        }
        self
    }

    fn neg(mut self) -> MapPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }

    fn mul(&self, other: &MapPoly) -> MapPoly {
        let mut out = MapPoly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut mono = ma.clone();
                for (&var, &exp) in mb {
                    *mono.entry(var).or_insert(0) += exp;
                }
                out.add_term(mono, ca * cb);
            }
        }
        out
    }

    fn pow(&self, exp: u32) -> MapPoly {
        let mut acc = MapPoly::constant(BigInt::one());
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    fn max_var_index(&self) -> usize {
        self.terms
            .keys()
            .flat_map(|m| m.keys().copied())
            .max()
            .unwrap_or(0)
    }

    fn into_polynomial(self, p: usize) -> Polynomial {
        Polynomial::from_terms(
            p,
            self.terms.into_iter().map(|(mono, coeff)| {
                let mut exps = vec![0u32; p];
                for (var, exp) in mono {
                    exps[var - 1] = exp;
                }
                (exps, coeff)
            }),
        )
    }
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn next_pos(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(usize::MAX)
    }

    fn expr(&mut self) -> Result<MapPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = acc.add(self.term()?);
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = acc.add(self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MapPoly> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Token::Star)) {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MapPoly> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.pos += 1;
            return Ok(self.factor()?.neg());
        }
        let base = self.primary()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.pos += 1;
            match self.tokens.get(self.pos).cloned() {
                Some((_, Token::Int(e))) => {
                    self.pos += 1;
                    let exp = u32::try_from(&e)
                        .map_err(|_| PolyError::parse(self.next_pos(), "exponent too large"))?;
                    return Ok(base.pow(exp));
                }
                other => {
                    let pos = other.map(|(p, _)| p).unwrap_or(usize::MAX);
                    return Err(PolyError::parse(
                        pos,
                        "exponent must be a nonnegative integer literal",
                    ));
                }
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<MapPoly> {
        match self.tokens.get(self.pos).cloned() {
            Some((_, Token::Int(v))) => {
                self.pos += 1;
                Ok(MapPoly::constant(v))
            }
            Some((_, Token::Var(index))) => {
                self.pos += 1;
                Ok(MapPoly::var(index))
            }
            Some((_, Token::LParen)) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Token::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(PolyError::parse(self.next_pos(), "expected ')'")),
                }
            }
            Some((pos, _)) => Err(PolyError::parse(pos, "expected integer, variable or '('")),
            None => Err(PolyError::parse(usize::MAX, "unexpected end of expression")),
        }
    }
}
