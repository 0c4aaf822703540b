//! Polynomial text in the usual computer-algebra notation:
//! `-y0^4*x1+2*y1^2*x0*y0^2*x1^2`, rational coefficients as `4/9`,
//! parentheses, and juxtaposition as multiplication (`3 x0^2 y1`).

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::PolyError;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = BigInt::parse_bytes(&bytes[start..i], 10).expect("ascii digits");
            out.push((start, Token::Number(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Token::Ident(text[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Token::Op(c)));
            i += 1;
        } else {
            return Err(PolyError::Parse { pos: i, msg: format!("unexpected character {c:?}") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    at: usize,
    names: &'a [&'a str],
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn error(&self, msg: &str) -> PolyError {
        PolyError::Parse { pos: self.pos(), msg: msg.to_string() }
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    // expr := ['+'|'-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Poly, PolyError> {
        let n = self.names.len();
        let mut acc = Poly::zero(n);
        let mut negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            if self.eat('+') {
                negate = false;
            } else if self.eat('-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    // term := power (('*'|'/')? power)*
    fn term(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.power()?;
            } else if self.eat('/') {
                let pos = self.pos();
                let d = self.power()?;
                let d = d.as_constant().ok_or(PolyError::Parse { pos, msg: "division by a non-constant".into() })?;
                if d.is_zero() {
                    return Err(PolyError::Parse { pos, msg: "division by zero".into() });
                }
                acc = acc.scale(&d.recip());
            } else if matches!(self.peek(), Some(Token::Number(_) | Token::Ident(_) | Token::Op('('))) {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    // power := atom ('^' integer)?
    fn power(&mut self) -> Result<Poly, PolyError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        match self.peek().cloned() {
            Some(Token::Number(k)) => {
                self.at += 1;
                let k: u32 = k.try_into().map_err(|_| self.error("exponent too large"))?;
                Ok(base.pow(k))
            }
            _ => Err(self.error("expected a non-negative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Poly, PolyError> {
        let n = self.names.len();
        match self.peek().cloned() {
            Some(Token::Number(k)) => {
                self.at += 1;
                Ok(Poly::constant(n, BigRational::from_integer(k)))
            }
            Some(Token::Ident(name)) => {
                let index = self
                    .names
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| PolyError::UnknownVariable { name: name.clone(), expected: self.names.join(",") })?;
                self.at += 1;
                Ok(Poly::var(n, index))
            }
            Some(Token::Op('(')) => {
                self.at += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(Token::Op('-')) => {
                self.at += 1;
                Ok(-&self.power()?)
            }
            _ => Err(self.error("expected a number, variable or '('")),
        }
    }
}

/// Parses `text` as a polynomial in the variables `names`, in that order.
pub fn parse_poly(text: &str, names: &[&str]) -> Result<Poly, PolyError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(PolyError::Parse { pos: 0, msg: "empty polynomial".into() });
    }
    let mut parser = Parser { tokens, at: 0, names, end: text.len() };
    let p = parser.expr()?;
    if parser.at != parser.tokens.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(p)
}

/// Formats `p` with `*` between factors and `^` for powers, terms by
/// descending degree. Zero prints as `0`.
pub fn format_poly(p: &Poly, names: &[&str]) -> String {
    assert_eq!(p.nvars(), names.len());
    let terms = p.sorted_terms();
    if terms.is_empty() {
        return String::from("0");
    }
    let mut out = String::new();
    for (k, (exps, c)) in terms.into_iter().enumerate() {
        let negative = c.is_negative();
        if negative {
            out.push('-');
        } else if k > 0 {
            out.push('+');
        }
        let c = c.abs();
        let mut factors: Vec<String> = Vec::new();
        let constant = exps.iter().all(|&e| e == 0);
        if !c.is_one() || constant {
            factors.push(if c.is_integer() {
                c.to_integer().to_string()
            } else {
                format!("{}/{}", c.numer(), c.denom())
            });
        }
        for (name, &e) in names.iter().zip(exps) {
            match e {
                0 => {}
                1 => factors.push((*name).to_string()),
                _ => factors.push(format!("{name}^{e}")),
            }
        }
        let _ = write!(out, "{}", factors.join("*"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyengine::poly::{rat, ratio};

    const XYZ: [&str; 3] = ["x", "y", "z"];

    #[test]
    fn parses_maple_output() {
        let p = parse_poly("y^4*z-2*x*y^2*z^2+x^2*z^3+2*x^2*y^3-18*x^3*y*z-27*x^5", &XYZ).unwrap();
        assert_eq!(p.len(), 6);
        assert_eq!(p.coeff(&[5, 0, 0]), rat(-27));
        assert_eq!(p.coeff(&[3, 1, 1]), rat(-18));
    }

    #[test]
    fn rationals_parentheses_juxtaposition() {
        let p = parse_poly("(2048/125)*x+2048/27 y-(1048576/3375)*z", &XYZ).unwrap();
        assert_eq!(p.coeff(&[1, 0, 0]), ratio(2048, 125));
        assert_eq!(p.coeff(&[0, 1, 0]), ratio(2048, 27));
        assert_eq!(p.coeff(&[0, 0, 1]), ratio(-1048576, 3375));
        let q = parse_poly("-(x - y)^2 + 3 x y", &XYZ).unwrap();
        assert_eq!(q, parse_poly("-x^2+5*x*y-y^2", &XYZ).unwrap());
        // unary minus binds looser than '^'
        assert_eq!(parse_poly("-x^2", &XYZ).unwrap().coeff(&[2, 0, 0]), rat(-1));
    }

    #[test]
    fn errors_are_positioned() {
        assert_eq!(
            parse_poly("x + w", &XYZ),
            Err(PolyError::UnknownVariable { name: "w".into(), expected: "x,y,z".into() })
        );
        assert!(matches!(parse_poly("x +", &XYZ), Err(PolyError::Parse { pos: 3, .. })));
        assert!(matches!(parse_poly("x / y", &XYZ), Err(PolyError::Parse { pos: 4, .. })));
        assert!(matches!(parse_poly("x^y", &XYZ), Err(PolyError::Parse { pos: 2, .. })));
        assert!(matches!(parse_poly("x)", &XYZ), Err(PolyError::Parse { pos: 1, .. })));
        assert!(matches!(parse_poly("", &XYZ), Err(PolyError::Parse { .. })));
        assert!(matches!(parse_poly("1/0", &XYZ), Err(PolyError::Parse { .. })));
    }

    #[test]
    fn format_round_trips() {
        for text in ["-27*x^5+2*x^2*y^3-18*x^3*y*z+y^4*z", "4/9*x-y", "0", "-3", "x*y*z+1/2"] {
            let p = parse_poly(text, &XYZ).unwrap();
            let printed = format_poly(&p, &XYZ);
            assert_eq!(parse_poly(&printed, &XYZ).unwrap(), p, "{printed}");
        }
        assert_eq!(format_poly(&parse_poly("z - 2 x^2", &XYZ).unwrap(), &XYZ), "-2*x^2+z");
    }
}
