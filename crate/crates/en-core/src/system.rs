use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::{EnEquation, Error, IntTuple, Result};

/// A finite, duplicate-free set of equations over variables `x_1..x_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnSystem {
    n: usize,
    equations: BTreeSet<EnEquation>,
}

impl EnSystem {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidVarCount);
        }
        Ok(EnSystem {
            n,
            equations: BTreeSet::new(),
        })
    }

    pub fn from_equations<I>(n: usize, equations: I) -> Result<Self>
    where
        I: IntoIterator<Item = EnEquation>,
    {
        let mut system = EnSystem::new(n)?;
        for eq in equations {
            system.insert(eq)?;
        }
        Ok(system)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn contains(&self, eq: &EnEquation) -> bool {
        self.equations.contains(eq)
    }

    /// Equations in canonical order: units, then additions, then
    /// multiplications, each sorted by index triple.
    pub fn equations(&self) -> impl Iterator<Item = &EnEquation> {
        self.equations.iter()
    }

    /// Insert after canonicalization; re-inserting an equation is a no-op.
    /// Returns whether the equation was new.
    pub fn insert(&mut self, eq: EnEquation) -> Result<bool> {
        let max = eq.max_index();
        if max > self.n {
            return Err(Error::IndexOutOfRange {
                index: max,
                n: self.n,
            });
        }
        Ok(self.equations.insert(eq))
    }

    /// Exact solution predicate: every equation holds under `t`.
    pub fn check_solution(&self, t: &IntTuple) -> Result<bool> {
        if t.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: t.len(),
            });
        }
        Ok(self.equations.iter().all(|eq| holds(eq, t)))
    }

    /// Unit elimination: every `x_i = 1` is replaced by the `n` equations
    /// `x_i * x_j = x_j`. The transformed system has the same solutions
    /// plus the all-zero tuple.
    pub fn tilde(&self) -> EnSystem {
        let mut out = EnSystem {
            n: self.n,
            equations: BTreeSet::new(),
        };
        for eq in &self.equations {
            match *eq {
                EnEquation::Unit { i } => {
                    for j in 1..=self.n {
                        out.equations.insert(EnEquation::mul(i, j, j));
                    }
                }
                other => {
                    out.equations.insert(other);
                }
            }
        }
        out
    }

    /// Parse the line-oriented text format. `#` starts a comment; the first
    /// significant line must be `n <count>`; every further line holds one
    /// equation. Whitespace between tokens is ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut system: Option<EnSystem> = None;
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            if line.trim().is_empty() {
                continue;
            }
            match system {
                None => {
                    let mut parts = line.split_whitespace();
                    match (parts.next(), parts.next(), parts.next()) {
                        (Some("n"), Some(count), None) => {
                            let n: i64 = count.parse().map_err(|_| {
                                Error::parse(lineno, format!("invalid variable count {:?}", count))
                            })?;
                            if n <= 0 {
                                return Err(Error::parse(
                                    lineno,
                                    format!("variable count must be positive, got {}", n),
                                ));
                            }
                            system = Some(EnSystem::new(n as usize)?);
                        }
                        _ => {
                            return Err(Error::parse(
                                lineno,
                                "expected header \"n <count>\" before equations",
                            ))
                        }
                    }
                }
                Some(ref mut sys) => {
                    let eq = parse_equation(line, lineno)?;
                    let max = eq.max_index();
                    if max > sys.n {
                        return Err(Error::parse(
                            lineno,
                            format!("index {} exceeds declared n={}", max, sys.n),
                        ));
                    }
                    sys.insert(eq)?;
                }
            }
        }
        system.ok_or_else(|| Error::parse(0, "empty input: missing \"n <count>\" header"))
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for EnSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.n)?;
        for eq in &self.equations {
            writeln!(f, "{}", eq)?;
        }
        Ok(())
    }
}

fn holds(eq: &EnEquation, t: &IntTuple) -> bool {
    match *eq {
        EnEquation::Unit { i } => t.coord(i).is_one(),
        EnEquation::Add { i, j, k } => t.coord(i) + t.coord(j) == *t.coord(k),
        EnEquation::Mul { i, j, k } => t.coord(i) * t.coord(j) == *t.coord(k),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token {
    Var(usize),
    One,
    Plus,
    Star,
    Equals,
}

fn tokenize(line: &str, lineno: usize) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = line.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '+' => {
                chars.next();
                tokens.push(Token::Plus);
            }
            '*' => {
                chars.next();
                tokens.push(Token::Star);
            }
            '=' => {
                chars.next();
                tokens.push(Token::Equals);
            }
            'x' => {
                chars.next();
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let index: usize = digits
                    .parse()
                    .map_err(|_| Error::parse(lineno, "expected variable index after 'x'"))?;
                if index == 0 {
                    return Err(Error::parse(lineno, "variable indices start at 1"));
                }
                tokens.push(Token::Var(index));
            }
            '1' => {
                chars.next();
                if chars.peek().is_some_and(|d| d.is_ascii_digit()) {
                    return Err(Error::parse(lineno, "the only literal allowed is 1"));
                }
                tokens.push(Token::One);
            }
            other => {
                return Err(Error::parse(
                    lineno,
                    format!("unexpected character {:?}", other),
                ));
            }
        }
    }
    Ok(tokens)
}

fn parse_equation(line: &str, lineno: usize) -> Result<EnEquation> {
    let tokens = tokenize(line, lineno)?;
    match tokens.as_slice() {
        [Token::Var(i), Token::Equals, Token::One] => Ok(EnEquation::unit(*i)),
        [Token::Var(i), Token::Plus, Token::Var(j), Token::Equals, Token::Var(k)] => {
            Ok(EnEquation::add(*i, *j, *k))
        }
        [Token::Var(i), Token::Star, Token::Var(j), Token::Equals, Token::Var(k)] => {
            Ok(EnEquation::mul(*i, *j, *k))
        }
        _ => Err(Error::parse(
            lineno,
            "expected \"x<i> = 1\", \"x<i> + x<j> = x<k>\" or \"x<i> * x<j> = x<k>\"",
        )),
    }
}

/// All-zero tuple of length `n`; the extra solution added by [`EnSystem::tilde`].
pub fn zero_tuple(n: usize) -> IntTuple {
    IntTuple::new(vec![BigInt::from(0); n]).expect("n >= 1")
}
