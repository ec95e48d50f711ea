//! Parser for scalar and algebra expressions.
//!
//! ```text
//! expr   := tensor (('+' | '-') tensor)*
//! tensor := term ('⊗' term)*
//! term   := unary (('*' | '/' | <juxtaposition>) unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? int)?
//! atom   := int | 'q' | generator | '(' expr ')'
//! ```
//! Division is only by scalars. An unknown identifier made of
//! single-letter generators (`bc`) is read as their product.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ncalg::{monomial_inverse, standard, NCPoly, Pres};
use crate::scalars::QScalar;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Tensor,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut it = s.char_indices().peekable();
    while let Some(&(pos, ch)) = it.peek() {
        if ch.is_whitespace() {
            it.next();
            continue;
        }
        let tok = match ch {
            '0'..='9' => {
                let mut t = String::new();
                while let Some(&(_, c)) = it.peek() {
                    if !c.is_ascii_digit() {
                        break;
                    }
                    t.push(c);
                    it.next();
                }
                out.push((pos, Tok::Int(t.parse().unwrap())));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut t = String::new();
                while let Some(&(_, c)) = it.peek() {
                    if !(c.is_ascii_alphanumeric() || c == '_') {
                        break;
                    }
                    t.push(c);
                    it.next();
                }
                out.push((pos, Tok::Ident(t)));
                continue;
            }
            'λ' => Tok::Ident("lambda".into()),
            'ξ' => Tok::Ident("xi".into()),
            'ζ' => Tok::Ident("zeta".into()),
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '⊗' => Tok::Tensor,
            c => {
                return Err(Error::Parse {
                    pos,
                    msg: alloc::format!("unexpected character `{c}`"),
                })
            }
        };
        it.next();
        out.push((pos, tok));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
    pres: &'a Pres,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self, slot: Option<usize>) -> Result<NCPoly> {
        let mut acc = self.tensor(slot)?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = acc.add(&self.tensor(slot)?)?;
            } else if self.eat(&Tok::Minus) {
                acc = acc.sub(&self.tensor(slot)?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn tensor(&mut self, slot: Option<usize>) -> Result<NCPoly> {
        let Some(slot) = slot else {
            let start = self.pos();
            let mut acc = self.term(0)?;
            let mut n = 1;
            while self.eat(&Tok::Tensor) {
                if n >= self.pres.nslots() {
                    return self.err("too many tensor factors");
                }
                acc = acc.mul(&self.term(n)?)?;
                n += 1;
            }
            let slots = self.pres.nslots();
            if n != slots && !(n == 1 && acc.as_scalar().is_some()) {
                return Err(Error::Parse {
                    pos: start,
                    msg: alloc::format!("expected {slots} tensor factors, found {n}"),
                });
            }
            return Ok(acc);
        };
        if self.peek() == Some(&Tok::Tensor) {
            return self.err("`⊗` is not allowed here");
        }
        self.term(slot)
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(_) | Tok::Ident(_) | Tok::LParen))
    }

    fn term(&mut self, slot: usize) -> Result<NCPoly> {
        let mut acc = self.unary(slot)?;
        loop {
            if self.eat(&Tok::Star) || self.starts_atom() {
                acc = acc.mul(&self.unary(slot)?)?;
            } else if self.eat(&Tok::Slash) {
                let pos = self.pos();
                let d = self.unary(slot)?;
                let Some(c) = d.as_scalar() else {
                    return Err(Error::Parse {
                        pos,
                        msg: "division by a non-scalar".into(),
                    });
                };
                acc = acc.scale(&c.inv()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self, slot: usize) -> Result<NCPoly> {
        if self.eat(&Tok::Minus) {
            return Ok(self.unary(slot)?.neg());
        }
        self.power(slot)
    }

    fn power(&mut self, slot: usize) -> Result<NCPoly> {
        let base = self.atom(slot)?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let neg = self.eat(&Tok::Minus);
        let Some(Tok::Int(k)) = self.peek().cloned() else {
            return self.err("expected integer exponent");
        };
        self.i += 1;
        let k: u32 = match u32::try_from(&k) {
            Ok(k) if k <= 10_000 => k,
            _ => return self.err("exponent too large"),
        };
        if !neg {
            return Ok(base.pow(k));
        }
        if let Some(c) = base.as_scalar() {
            return Ok(NCPoly::scalar(self.pres, c.pow(-(k as i64))?));
        }
        match monomial_inverse(&base) {
            Some(inv) => Ok(inv.pow(k)),
            None => {
                let name = alloc::format!("{base}");
                Err(Error::NegativeExponent(name))
            }
        }
    }

    fn ident(&self, name: &str, slot: usize) -> Option<NCPoly> {
        if name == "q" {
            return Some(NCPoly::scalar(self.pres, QScalar::q()));
        }
        let g = self.pres.find(name, slot)?;
        NCPoly::gen_idx(self.pres, g, 1).ok()
    }

    fn atom(&mut self, slot: usize) -> Result<NCPoly> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.i += 1;
                Ok(NCPoly::scalar(self.pres, QScalar::from_bigint(n)))
            }
            Some(Tok::Ident(name)) => {
                self.i += 1;
                if let Some(v) = self.ident(&name, slot) {
                    return Ok(v);
                }
                // `bc` as `b c`
                let mut acc = NCPoly::one(self.pres);
                for ch in name.chars() {
                    let mut buf = [0u8; 4];
                    match self.ident(ch.encode_utf8(&mut buf), slot) {
                        Some(v) => acc = acc.mul(&v)?,
                        None => return Err(Error::UnknownGenerator(name)),
                    }
                }
                Ok(acc)
            }
            Some(Tok::LParen) => {
                self.i += 1;
                let v = self.expr(Some(slot))?;
                if !self.eat(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                Ok(v)
            }
            _ => Err(Error::Parse {
                pos,
                msg: "expected a number, generator or `(`".into(),
            }),
        }
    }
}

/// Parses an element of the algebra presented by `pres`.
pub fn parse_expr(input: &str, pres: &Pres) -> Result<NCPoly> {
    let toks = lex(input)?;
    let mut p = Parser {
        toks,
        i: 0,
        end: input.len(),
        pres,
    };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let top = if pres.nslots() > 1 { None } else { Some(0) };
    let v = p.expr(top)?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(v)
}

/// Parses a scalar rational function of `q`.
pub fn parse_scalar(input: &str) -> Result<QScalar> {
    let v = parse_expr(input, &standard::scalars())?;
    Ok(v.as_scalar().expect("scalar presentation"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::standard::*;
    use alloc::format;
    use proptest::prelude::*;

    #[test]
    fn scalars_round_trip() {
        for s in ["q^2/(q^2 + 1)", "q + q^-1", "-q^-1", "1/2", "1/(2*q)", "0", "(q^2 - 1)/(q^3 + 2)"] {
            let v = parse_scalar(s).unwrap();
            assert_eq!(format!("{v}"), s);
        }
        assert_eq!(
            parse_scalar("(1 - q^-2)/(1 - q^-4)").unwrap(),
            parse_scalar("q^2/(q^2+1)").unwrap()
        );
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_scalar("1 +"), Err(Error::Parse { .. })));
        assert!(matches!(parse_scalar("(q"), Err(Error::Parse { .. })));
        assert!(matches!(parse_scalar("q $"), Err(Error::Parse { .. })));
        assert_eq!(parse_scalar("1/(q - q)"), Err(Error::DivisionByZero));
        assert!(matches!(parse_expr("b^-1", &g()), Err(Error::NegativeExponent(_))));
        assert!(matches!(parse_expr("zz", &g()), Err(Error::UnknownGenerator(_))));
        assert!(matches!(parse_expr("a/b", &g()), Err(Error::Parse { .. })));
    }

    #[test]
    fn generators_and_splitting() {
        let gp = g();
        assert_eq!(parse_expr("bc", &gp).unwrap(), parse_expr("b*c", &gp).unwrap());
        assert_eq!(parse_expr("λ^-1 ξ", &borel()).unwrap(), parse_expr("lambda^-1 xi", &borel()).unwrap());
    }

    #[test]
    fn tensor_syntax() {
        let gg = crate::ncalg::Presentation::tensor(&[&g(), &g()]);
        let v = parse_expr("a ⊗ a + b ⊗ c", &gg).unwrap();
        assert_eq!(format!("{v}"), "a ⊗ a + b ⊗ c");
        assert!(parse_expr("a", &gg).is_err());
        assert!(parse_expr("2", &gg).unwrap().as_scalar().is_some());
    }

    fn scalar_text() -> impl Strategy<Value = String> {
        let leaf = prop_oneof![
            (0i64..5).prop_map(|n| format!("{n}")),
            Just("q".into()),
            (-3i64..4).prop_map(|k| format!("q^{k}")),
        ];
        leaf.prop_recursive(3, 12, 2, |inner| {
            (inner.clone(), inner, 0usize..3).prop_map(|(a, b, op)| match op {
                0 => format!("({a}) + ({b})"),
                1 => format!("({a}) - ({b})"),
                _ => format!("({a}) * ({b})"),
            })
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(s in scalar_text(), d in scalar_text()) {
            let n = parse_scalar(&s).unwrap();
            let d = parse_scalar(&d).unwrap();
            let v = if d.is_zero() { n } else { n.checked_div(&d).unwrap() };
            let printed = format!("{v}");
            prop_assert_eq!(parse_scalar(&printed).unwrap(), v);
        }
    }
}
