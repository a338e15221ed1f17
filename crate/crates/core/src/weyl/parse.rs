//! Recursive-descent parser for operator text.
//!
//! expr := ['-'] term (('+'|'-') term)*
//! term := factor ('*' factor)*
//! factor := atom ('^' nat)?
//! atom := int ('/' nat)? | var | '(' expr ')'

use num_bigint::BigInt;
use num_traits::Zero;

use super::WeylElt;
use crate::error::{Error, Result};
use crate::rat::Q;

const MAX_POWER: u32 = 64;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            Tok::Int(s.parse().expect("digits"))
        } else if c.is_ascii_alphabetic() {
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if "+-*^/()".contains(c) {
            i += 1;
            Tok::Sym(c)
        } else {
            return Err(Error::Syntax {
                line,
                column,
                message: format!("unexpected character '{c}'"),
            });
        };
        column += i - start;
        out.push(Token {
            tok,
            line: l0,
            column: c0,
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    n: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        let t = &self.toks[self.pos];
        Err(Error::Syntax {
            line: t.line,
            column: t.column,
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<WeylElt> {
        let neg = self.eat('-');
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<WeylElt> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<WeylElt> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        match self.peek().clone() {
            Tok::Int(e) => {
                let e: u32 = match u32::try_from(&e) {
                    Ok(e) if e <= MAX_POWER => e,
                    _ => return self.err(format!("exponent must be at most {MAX_POWER}")),
                };
                self.pos += 1;
                Ok(base.pow(e))
            }
            _ => self.err("expected a natural-number exponent"),
        }
    }

    fn atom(&mut self) -> Result<WeylElt> {
        match self.peek().clone() {
            Tok::Int(num) => {
                self.pos += 1;
                let mut den = BigInt::from(1);
                if self.eat('/') {
                    match self.peek().clone() {
                        Tok::Int(d) if !d.is_zero() => {
                            den = d;
                            self.pos += 1;
                        }
                        _ => return self.err("expected a nonzero denominator"),
                    }
                }
                Ok(WeylElt::constant(Q::new(num, den), self.n))
            }
            Tok::Ident(name) => {
                let v = self.variable(&name)?;
                self.pos += 1;
                Ok(v)
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Tok::End => self.err("unexpected end of input"),
            Tok::Sym(c) => self.err(format!("unexpected '{c}'")),
        }
    }

    fn variable(&self, name: &str) -> Result<WeylElt> {
        let n = self.n;
        let unknown = || Error::UnknownVariable {
            name: name.to_string(),
            n,
        };
        let (kind, idx) = name.split_at(1);
        let i = if idx.is_empty() {
            if n != 1 {
                return Err(unknown());
            }
            0
        } else {
            match idx.parse::<usize>() {
                Ok(i) if (1..=n).contains(&i) && !idx.starts_with('0') => i - 1,
                _ => return Err(unknown()),
            }
        };
        match kind {
            "x" => Ok(WeylElt::x(i, n)),
            "t" if idx.is_empty() => Ok(WeylElt::x(i, n)),
            "d" => Ok(WeylElt::d(i, n)),
            _ => Err(unknown()),
        }
    }
}

/// Parses operator text in A_n; `t` and `d` are the n = 1 names.
pub fn parse_weyl(text: &str, n: usize) -> Result<WeylElt> {
    if n == 0 {
        return Err(Error::Unsupported("A_0 has no variables".into()));
    }
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        n,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{q, qf};

    #[test]
    fn examples() {
        let e = parse_weyl("d - 1", 1).unwrap();
        assert_eq!(e, &WeylElt::d(0, 1) - &WeylElt::one(1));
        let e = parse_weyl("d1*x1", 2).unwrap();
        assert_eq!(e.to_string(), "x1*d1 + 1");
        let s = "x^2*d^2 + 4*x*d + 2";
        assert_eq!(parse_weyl(s, 1).unwrap().to_string(), s);
    }

    #[test]
    fn aliases_and_rationals() {
        assert_eq!(parse_weyl("t*d - 1/2", 1).unwrap(), parse_weyl("x1*d1 - 1/2", 1).unwrap());
        let e = parse_weyl("(x + 1)^2", 1).unwrap();
        assert_eq!(e.to_string(), "x^2 + 2*x + 1");
        assert_eq!(
            parse_weyl("  -3/6 *  d ", 1).unwrap(),
            WeylElt::d(0, 1).scale(&qf(-1, 2))
        );
        assert_eq!(parse_weyl("2^3", 1).unwrap(), WeylElt::constant(q(8), 1));
    }

    #[test]
    fn positions_are_reported() {
        match parse_weyl("x +\n  * d", 1) {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
        match parse_weyl("x $ d", 1) {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (1, 3)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_weyl("(x", 1), Err(Error::Syntax { .. })));
        assert!(matches!(parse_weyl("1/0", 1), Err(Error::Syntax { .. })));
        assert!(matches!(parse_weyl("x^y", 1), Err(Error::Syntax { .. })));
        assert!(matches!(parse_weyl("x d", 1), Err(Error::Syntax { .. })));
    }

    #[test]
    fn unknown_variables() {
        assert!(matches!(parse_weyl("x3", 2), Err(Error::UnknownVariable { .. })));
        assert!(matches!(parse_weyl("x", 2), Err(Error::UnknownVariable { .. })));
        assert!(matches!(parse_weyl("t1", 1), Err(Error::UnknownVariable { .. })));
        assert!(matches!(parse_weyl("y", 1), Err(Error::UnknownVariable { .. })));
        assert!(matches!(parse_weyl("x0", 1), Err(Error::UnknownVariable { .. })));
    }
}
