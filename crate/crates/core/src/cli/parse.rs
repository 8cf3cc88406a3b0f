//! Polynomial text: `[+|-] [coeff] [t [^ exp]]` terms in any order, or `coeffs=[c0,c1,...]`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// Largest exponent accepted, to keep a typo from allocating gigabytes.
const MAX_EXPONENT: usize = 1 << 20;

pub fn parse_polynomial(text: &str) -> Result<IntPolynomial> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    p.skip_ws();
    if p.src[p.pos..].starts_with(b"coeffs") {
        return p.coeff_list();
    }
    p.terms()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position: self.pos, message: message.into() })
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn integer(&mut self) -> Result<BigInt> {
        let negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        match self.digits() {
            Some(d) => {
                let v: BigInt = d.parse().expect("digits");
                Ok(if negative { -v } else { v })
            }
            None => self.err("expected an integer"),
        }
    }

    fn coeff_list(&mut self) -> Result<IntPolynomial> {
        self.pos += "coeffs".len();
        if !self.eat(b'=') {
            return self.err("expected '=' after 'coeffs'");
        }
        if !self.eat(b'[') {
            return self.err("expected '['");
        }
        let mut coeffs = Vec::new();
        if !self.eat(b']') {
            loop {
                coeffs.push(self.integer()?);
                if self.eat(b']') {
                    break;
                }
                if !self.eat(b',') {
                    return self.err("expected ',' or ']'");
                }
            }
        }
        self.skip_ws();
        if self.pos != self.src.len() {
            return self.err("unexpected trailing input");
        }
        Ok(IntPolynomial::new(coeffs))
    }

    fn terms(&mut self) -> Result<IntPolynomial> {
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut first = true;
        loop {
            self.skip_ws();
            if self.pos == self.src.len() {
                if first {
                    return self.err("empty polynomial");
                }
                break;
            }
            let negative = if self.eat(b'-') {
                true
            } else if self.eat(b'+') {
                false
            } else if first {
                false
            } else {
                return self.err("expected '+' or '-'");
            };
            first = false;
            let term_start = self.pos;
            let coeff = self.digits().map(|d| d.parse::<BigInt>().expect("digits"));
            let had_star = self.eat(b'*');
            let exp = if self.eat(b't') {
                if self.eat(b'^') {
                    match self.digits() {
                        Some(d) => match d.parse::<usize>() {
                            Ok(e) if e <= MAX_EXPONENT => e,
                            _ => return self.err(format!("exponent exceeds {MAX_EXPONENT}")),
                        },
                        None => return self.err("expected an exponent after '^'"),
                    }
                } else {
                    1
                }
            } else {
                if had_star {
                    return self.err("expected 't' after '*'");
                }
                if coeff.is_none() {
                    self.pos = term_start;
                    self.skip_ws();
                    return self.err("expected a coefficient or 't'");
                }
                0
            };
            let mut c = coeff.unwrap_or_else(BigInt::one);
            if negative {
                c = -c;
            }
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, BigInt::zero());
            }
            coeffs[exp] += c;
        }
        Ok(IntPolynomial::new(coeffs))
    }
}
