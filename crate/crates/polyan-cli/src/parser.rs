//! Infix surface syntax for expressions, compiled to `ExpPoly`.
//!
//! Grammar (documented in the README):
//!
//! ```text
//! expr    := ['-'] term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := atom ['^' ['-'] integer]
//! atom    := number | 'i' | 'z' | 'zb' | 'w' | 'wb'
//!          | 'ezwb' | 'ezbw' | 'ezzb'
//!          | 'F' '(' integer ')'
//!          | 'H' '(' integer ',' integer ')'
//!          | 'L' '(' integer ',' integer ')'
//!          | '(' expr ')'
//! ```
//!
//! `zb`/`wb` are the conjugate variables, `ezwb`/`ezbw`/`ezzb` the three
//! exponential factors (only `ezzb` may take a negative power), `F`/`H`/`L`
//! the poly-Fock kernel, complex Hermite, and generalized Laguerre generators
//! (`L` lands on the variable `z`).

use num_complex::Complex64;
use polyan_core::expr::ExpPoly;
use polyan_core::special::{fock_kernel, hermite, laguerre};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
}

fn tokenize(input: &str) -> Result<Vec<Token>, String> {
    let mut tokens = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&ch) = chars.peek() {
        match ch {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '+' => {
                chars.next();
                tokens.push(Token::Plus);
            }
            '-' => {
                chars.next();
                tokens.push(Token::Minus);
            }
            '*' => {
                chars.next();
                tokens.push(Token::Star);
            }
            '^' => {
                chars.next();
                tokens.push(Token::Caret);
            }
            '(' => {
                chars.next();
                tokens.push(Token::LParen);
            }
            ')' => {
                chars.next();
                tokens.push(Token::RParen);
            }
            ',' => {
                chars.next();
                tokens.push(Token::Comma);
            }
            '0'..='9' | '.' => {
                let mut text = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() || c == '.' {
                        text.push(c);
                        chars.next();
                    } else if (c == 'e' || c == 'E')
                        && text.chars().any(|t| t.is_ascii_digit())
                    {
                        // exponent part, possibly signed
                        text.push(c);
                        chars.next();
                        if let Some(&sign @ ('+' | '-')) = chars.peek() {
                            text.push(sign);
                            chars.next();
                        }
                    } else {
                        break;
                    }
                }
                let value: f64 = text.parse().map_err(|_| format!("bad number `{text}`"))?;
                tokens.push(Token::Number(value));
            }
            c if c.is_ascii_alphabetic() => {
                let mut text = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        text.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Ident(text));
            }
            other => return Err(format!("unexpected character `{other}`")),
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let tok = self.tokens.get(self.pos).cloned();
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }

    fn expect(&mut self, tok: Token) -> Result<(), String> {
        match self.next() {
            Some(found) if found == tok => Ok(()),
            found => Err(format!("expected {tok:?}, found {found:?}")),
        }
    }

    fn parse_integer(&mut self) -> Result<u32, String> {
        match self.next() {
            Some(Token::Number(x)) if x.fract() == 0.0 && x >= 0.0 && x <= u32::MAX as f64 => {
                Ok(x as u32)
            }
            found => Err(format!("expected a nonnegative integer, found {found:?}")),
        }
    }

    fn parse_expr(&mut self) -> Result<ExpPoly, String> {
        let mut negate = false;
        if self.peek() == Some(&Token::Minus) {
            self.next();
            negate = true;
        }
        let mut acc = self.parse_term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    let rhs = self.parse_term()?;
                    acc = acc.add(&rhs).map_err(|e| e.to_string())?;
                }
                Some(Token::Minus) => {
                    self.next();
                    let rhs = self.parse_term()?;
                    acc = acc.sub(&rhs).map_err(|e| e.to_string())?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<ExpPoly, String> {
        let mut acc = self.parse_factor()?;
        while self.peek() == Some(&Token::Star) {
            self.next();
            let rhs = self.parse_factor()?;
            acc = acc.mul(&rhs);
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<ExpPoly, String> {
        let base_name = match self.peek() {
            Some(Token::Ident(name)) => Some(name.clone()),
            _ => None,
        };
        let base = self.parse_atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.next();
        let mut negative = false;
        if self.peek() == Some(&Token::Minus) {
            self.next();
            negative = true;
        }
        let power = self.parse_integer()?;
        if negative {
            if base_name.as_deref() == Some("ezzb") {
                return Ok(ExpPoly::exp_z_zbar(-(power as i64)));
            }
            return Err("negative powers are only valid on ezzb".into());
        }
        let mut acc = ExpPoly::constant_re(1.0);
        for _ in 0..power {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    fn parse_atom(&mut self) -> Result<ExpPoly, String> {
        match self.next() {
            Some(Token::Number(x)) => Ok(ExpPoly::constant_re(x)),
            Some(Token::LParen) => {
                let inner = self.parse_expr()?;
                self.expect(Token::RParen)?;
                Ok(inner)
            }
            Some(Token::Ident(name)) => match name.as_str() {
                "i" => Ok(ExpPoly::constant(Complex64::new(0.0, 1.0))),
                "z" => Ok(ExpPoly::var_z()),
                "zb" => Ok(ExpPoly::var_zbar()),
                "w" => Ok(ExpPoly::var_w()),
                "wb" => Ok(ExpPoly::var_wbar()),
                "ezwb" => Ok(ExpPoly::exp_z_wbar(1)),
                "ezbw" => Ok(ExpPoly::exp_zbar_w(1)),
                "ezzb" => Ok(ExpPoly::exp_z_zbar(1)),
                "F" => {
                    self.expect(Token::LParen)?;
                    let n = self.parse_integer()?;
                    self.expect(Token::RParen)?;
                    if n == 0 {
                        return Err("F(n) requires n ≥ 1".into());
                    }
                    Ok(fock_kernel(n))
                }
                "H" => {
                    self.expect(Token::LParen)?;
                    let m = self.parse_integer()?;
                    self.expect(Token::Comma)?;
                    let n = self.parse_integer()?;
                    self.expect(Token::RParen)?;
                    Ok(hermite(m, n))
                }
                "L" => {
                    self.expect(Token::LParen)?;
                    let m = self.parse_integer()?;
                    self.expect(Token::Comma)?;
                    let alpha = self.parse_integer()?;
                    self.expect(Token::RParen)?;
                    laguerre(m, alpha)
                        .compose(&ExpPoly::var_z())
                        .map_err(|e| e.to_string())
                }
                other => Err(format!("unknown symbol `{other}`")),
            },
            found => Err(format!("unexpected token {found:?}")),
        }
    }
}

/// Compile an infix expression to an `ExpPoly`.
pub fn parse_expression(input: &str) -> Result<ExpPoly, String> {
    let tokens = tokenize(input)?;
    if tokens.is_empty() {
        return Err("empty expression".into());
    }
    let mut parser = Parser { tokens, pos: 0 };
    let expr = parser.parse_expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(format!(
            "trailing input after position {}",
            parser.pos
        ));
    }
    Ok(expr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use polyan_core::expr::Exponents;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn parses_mixed_term_sum() {
        let f = parse_expression("zb^2*z + 3").unwrap();
        assert_eq!(f.coefficient(Exponents::new(1, 2, 0, 0)), c(1.0, 0.0));
        assert_eq!(f.coefficient(Exponents::new(0, 0, 0, 0)), c(3.0, 0.0));
    }

    #[test]
    fn parses_kernel_shorthand() {
        assert_eq!(parse_expression("F(2)").unwrap(), fock_kernel(2));
        assert_eq!(parse_expression("H(1,1)").unwrap(), hermite(1, 1));
    }

    #[test]
    fn parses_exponential_factors() {
        let f = parse_expression("zb*ezwb").unwrap();
        assert_eq!(f.m1(), 1);
        let g = parse_expression("ezzb^-1").unwrap();
        assert_eq!(g.m3(), -1);
    }

    #[test]
    fn parses_complex_coefficients() {
        let f = parse_expression("(2 - 0.5*i)*z").unwrap();
        assert_eq!(f.coefficient(Exponents::new(1, 0, 0, 0)), c(2.0, -0.5));
    }

    #[test]
    fn parses_negation_and_precedence() {
        let f = parse_expression("-z*zb + (z - w)*(zb - wb)").unwrap();
        assert_eq!(f.coefficient(Exponents::new(1, 1, 0, 0)), c(0.0, 0.0));
        assert_eq!(f.coefficient(Exponents::new(0, 0, 1, 1)), c(1.0, 0.0));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_expression("").is_err());
        assert!(parse_expression("z +").is_err());
        assert!(parse_expression("q").is_err());
        assert!(parse_expression("z^-1").is_err());
        assert!(parse_expression("z + ezzb").is_err());
    }
}
