//! Parser for polynomial and rational-function expressions such as
//! `-h*x0^2 + 3/2*x1*(1 - x2)` or `(x2 + 1)/(x2 - 1)`.
//!
//! `−` (U+2212) is accepted as a minus sign.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::AlgebraError;
use crate::field::Q;
use crate::multipoly::{MultiPoly, RationalFn, Vars};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>, AlgebraError> {
    let chars: Vec<char> = s.chars().map(|c| if c == '−' { '-' } else { c }).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = chars[st..i].iter().collect();
            out.push(Tok::Num(t.parse().unwrap()));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(AlgebraError::Parse(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    vars: &'a Vars,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RationalFn, AlgebraError> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalFn, AlgebraError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.factor()?)?;
            } else if self.eat('/') {
                acc = acc.div(&self.factor()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<RationalFn, AlgebraError> {
        if self.eat('-') {
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| AlgebraError::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(AlgebraError::Parse("expected integer exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<RationalFn, AlgebraError> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(RationalFn::from_poly(MultiPoly::constant(self.vars, Q::from_integer(n))))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(RationalFn::from_poly(MultiPoly::var(self.vars, &name)?))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(AlgebraError::Parse("missing `)`".into()));
                }
                Ok(e)
            }
            t => Err(AlgebraError::Parse(format!("unexpected token {t:?}"))),
        }
    }
}

/// Parses a rational function over `vars`.
pub fn parse_rational_fn(s: &str, vars: &Vars) -> Result<RationalFn, AlgebraError> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(AlgebraError::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, vars };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(AlgebraError::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(e)
}

/// Parses a polynomial; divisions are allowed only by nonzero constants.
pub fn parse_poly(s: &str, vars: &Vars) -> Result<MultiPoly, AlgebraError> {
    let r = parse_rational_fn(s, vars)?;
    if !r.den.is_constant() {
        return Err(AlgebraError::Parse(format!("`{s}` is not a polynomial")));
    }
    let c = r.den.constant_term();
    debug_assert!(!c.is_zero());
    Ok(r.num.scale(&c.recip()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;
    use crate::multipoly::vars;

    #[test]
    fn rational_coefficients() {
        let vs = vars(&["x"]);
        let p = parse_poly("3/2*x - 1/4", &vs).unwrap();
        assert_eq!(p.eval(&[q(1, 1)]), q(5, 4));
    }

    #[test]
    fn unicode_minus_and_powers() {
        let vs = vars(&["x", "h"]);
        let a = parse_poly("−h*x^2 + (x - 1)^2", &vs).unwrap();
        let b = parse_poly("x^2 - 2*x + 1 - h*x^2", &vs).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_unknown_variables_and_garbage() {
        let vs = vars(&["x"]);
        assert!(matches!(parse_poly("y", &vs), Err(AlgebraError::UnknownVariable(_))));
        assert!(parse_poly("x +", &vs).is_err());
        assert!(parse_poly("x / x", &vs).is_ok());
        assert!(parse_poly("1 / x", &vs).is_err());
        assert!(parse_poly("x $ 2", &vs).is_err());
    }
}
