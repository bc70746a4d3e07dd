//! Polynomials in named variables and their text syntax.
//!
//! Grammar (whitespace allowed between tokens):
//!
//! ```text
//! poly     := ['+'|'-'] term (('+'|'-') term)*
//! term     := coeff ['*' monomial] | monomial
//! monomial := power ('*' power)*
//! power    := var ['^' exp]
//! ```

use std::cmp::Ordering;
use std::collections::BTreeMap;

use thiserror::Error;

use crate::exactla::PrimeField;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("column {column}: {message}")]
pub struct PolyParseError {
    /// 1-based character column inside the polynomial string.
    pub column: usize,
    pub message: String,
}

/// Exponent vector over an ordered list of variables.
pub type Exponents = Vec<u32>;

pub fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

/// Graded lexicographic order: total degree first, then lexicographic with
/// the first variable largest.
pub fn grlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    degree(a).cmp(&degree(b)).then_with(|| a.cmp(b))
}

/// All exponent vectors in `nvars` variables of total degree `<= max_degree`,
/// sorted by [`grlex_cmp`] ascending.
pub fn monomials_up_to(nvars: usize, max_degree: u32) -> Vec<Exponents> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        let mut cur = vec![0u32; nvars];
        fill_degree(&mut cur, 0, d, &mut out);
    }
    out.sort_by(|a, b| grlex_cmp(a, b));
    out
}

fn fill_degree(cur: &mut Vec<u32>, idx: usize, remaining: u32, out: &mut Vec<Exponents>) {
    if idx == cur.len() {
        if remaining == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for e in 0..=remaining {
        cur[idx] = e;
        fill_degree(cur, idx + 1, remaining - e, out);
    }
    cur[idx] = 0;
}

pub fn monomial_label(e: &[u32], vars: &[String]) -> String {
    let parts: Vec<String> = e
        .iter()
        .zip(vars)
        .filter(|(&k, _)| k > 0)
        .map(|(&k, v)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Polynomial with integer coefficients; reduction modulo `p` happens when it
/// is placed into a concrete algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Exponents, i64>,
    nvars: usize,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            terms: BTreeMap::new(),
            nvars,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, e: Exponents, c: i64) {
        assert_eq!(e.len(), self.nvars);
        let entry = self.terms.entry(e).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &i64)> {
        self.terms.iter()
    }

    /// Terms with coefficients reduced modulo `p`, zero terms dropped.
    pub fn reduced_terms(&self, field: PrimeField) -> Vec<(Exponents, u32)> {
        self.terms
            .iter()
            .map(|(e, &c)| (e.clone(), field.reduce(c)))
            .filter(|(_, c)| *c != 0)
            .collect()
    }

    pub fn constant_term(&self) -> i64 {
        self.terms.get(&vec![0; self.nvars]).copied().unwrap_or(0)
    }

    pub fn parse(src: &str, vars: &[String]) -> Result<Self, PolyParseError> {
        Parser::new(src, vars).parse()
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a [String],
}

impl<'a> Parser<'a> {
    fn new(src: &str, vars: &'a [String]) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
            vars,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, PolyParseError> {
        Err(PolyParseError {
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Polynomial, PolyParseError> {
        let mut poly = Polynomial::zero(self.vars.len());
        if self.peek().is_none() {
            return self.err("empty polynomial");
        }
        let mut sign = 1i64;
        match self.peek() {
            Some('+') => self.pos += 1,
            Some('-') => {
                sign = -1;
                self.pos += 1;
            }
            _ => {}
        }
        loop {
            let (e, c) = self.term()?;
            poly.add_term(e, sign * c);
            match self.peek() {
                None => break,
                Some('+') => {
                    sign = 1;
                    self.pos += 1;
                }
                Some('-') => {
                    sign = -1;
                    self.pos += 1;
                }
                Some(ch) => return self.err(format!("unexpected character '{ch}'")),
            }
        }
        Ok(poly)
    }

    fn number(&mut self) -> Result<i64, PolyParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<i64>().or_else(|_| {
            self.pos = start;
            self.err("expected a number")
        })
    }

    fn term(&mut self) -> Result<(Exponents, i64), PolyParseError> {
        let mut e = vec![0u32; self.vars.len()];
        match self.peek() {
            Some(ch) if ch.is_ascii_digit() => {
                let c = self.number()?;
                if self.peek() == Some('*') {
                    self.pos += 1;
                    self.monomial(&mut e)?;
                }
                Ok((e, c))
            }
            Some(ch) if ch.is_alphabetic() || ch == '_' => {
                self.monomial(&mut e)?;
                Ok((e, 1))
            }
            Some(ch) => self.err(format!("expected a term, found '{ch}'")),
            None => self.err("expected a term, found end of input"),
        }
    }

    fn monomial(&mut self, e: &mut [u32]) -> Result<(), PolyParseError> {
        loop {
            self.power(e)?;
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                return Ok(());
            }
        }
    }

    fn power(&mut self, e: &mut [u32]) -> Result<(), PolyParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a variable");
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        let Some(idx) = self.vars.iter().position(|v| *v == name) else {
            self.pos = start;
            return self.err(format!("unknown variable '{name}'"));
        };
        let mut exp = 1u32;
        if self.peek() == Some('^') {
            self.pos += 1;
            let n = self.number()?;
            exp = u32::try_from(n).or_else(|_| self.err("exponent out of range"))?;
        }
        e[idx] += exp;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_sums_products_and_powers() {
        let v = vars(&["x", "y"]);
        let p = Polynomial::parse("x*y - y^2", &v).unwrap();
        let terms: Vec<_> = p.terms().map(|(e, c)| (e.clone(), *c)).collect();
        assert_eq!(terms, vec![(vec![0, 2], -1), (vec![1, 1], 1)]);

        let p = Polynomial::parse(" -2*x^2*y + 3 ", &v).unwrap();
        assert_eq!(p.constant_term(), 3);
        let p = Polynomial::parse("x*x", &v).unwrap();
        assert_eq!(p.terms().next().unwrap().0, &vec![2, 0]);
    }

    #[test]
    fn like_terms_cancel() {
        let v = vars(&["x"]);
        let p = Polynomial::parse("x^2 - x^2", &v).unwrap();
        assert_eq!(p.terms().count(), 0);
    }

    #[test]
    fn errors_carry_columns() {
        let v = vars(&["x", "y"]);
        let e = Polynomial::parse("x + z", &v).unwrap_err();
        assert_eq!(e.column, 5);
        let e = Polynomial::parse("x +", &v).unwrap_err();
        assert!(e.message.contains("end of input"));
        assert!(Polynomial::parse("", &v).is_err());
        assert!(Polynomial::parse("x ^ y", &v).is_err());
    }

    #[test]
    fn monomials_sorted_grlex() {
        let ms = monomials_up_to(2, 2);
        assert_eq!(
            ms,
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![1, 0],
                vec![0, 2],
                vec![1, 1],
                vec![2, 0]
            ]
        );
        assert_eq!(monomial_label(&[2, 1], &vars(&["x", "y"])), "x^2*y");
        assert_eq!(monomial_label(&[0, 0], &vars(&["x", "y"])), "1");
    }
}
