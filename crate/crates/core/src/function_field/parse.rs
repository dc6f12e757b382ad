//! Text syntax for symbols, rational functions and places.
//!
//! ```text
//! symbol := '{' expr (',' expr)* '}'
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | 't' | 'g' | '(' expr ')'
//! place  := 'inf' | 'infinity' | expr
//! ```
//!
//! Integers are reduced mod p, `g` is the field's generator, and juxtaposition
//! such as `2t` is read as a product. Error columns are 0-based character offsets.

use super::milnor::MilnorClass;
use super::poly::{Poly, PolyRing};
use super::rational::{Place, RationalFunction};
use crate::error::{Error, Result};
use crate::field::{FqElement, FqField};

const MAX_EXPONENT: u64 = 4096;

/// Parses `{f_1, ..., f_n}` as a class with coefficient 1 in `K_n / m`.
pub fn parse_symbol(field: &FqField, text: &str, m: u64) -> Result<MilnorClass> {
    let mut p = Parser::new(field, text);
    p.expect('{')?;
    let mut slots = Vec::new();
    loop {
        let col = p.column();
        let value = p.expr()?;
        slots.push(p.to_function(value, col)?);
        match p.peek() {
            Some(',') => p.bump(),
            Some('}') => {
                p.bump();
                break;
            }
            _ => return Err(p.error("expected ',' or '}'")),
        }
    }
    p.finish()?;
    Ok(MilnorClass::symbol(m, slots))
}

pub fn parse_function(field: &FqField, text: &str) -> Result<RationalFunction> {
    let mut p = Parser::new(field, text);
    let col = p.column();
    let value = p.expr()?;
    p.finish()?;
    p.to_function(value, col)
}

/// A place: `inf`, or a monic irreducible polynomial such as `t^2+1`.
pub fn parse_place(field: &FqField, text: &str) -> Result<Place> {
    let trimmed = text.trim();
    if trimmed == "inf" || trimmed == "infinity" {
        return Ok(Place::Infinity);
    }
    let mut p = Parser::new(field, text);
    let (num, den) = p.expr()?;
    p.finish()?;
    if den.deg() != 0 {
        return Err(Error::BadPlace(format!("{trimmed} is not a polynomial")));
    }
    let ring = PolyRing::new(field);
    let poly = ring.scale(&num, field.inv(den.leading())?);
    Place::finite(field, poly)
}

type Fraction = (Poly, Poly);

struct Parser<'a> {
    field: &'a FqField,
    ring: PolyRing<'a>,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(field: &'a FqField, text: &str) -> Self {
        Parser {
            field,
            ring: PolyRing::new(field),
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn column(&mut self) -> usize {
        self.skip_ws();
        self.pos
    }

    fn error(&mut self, message: &str) -> Error {
        let column = self.column();
        let found = match self.chars.get(column) {
            Some(c) => format!("'{c}'"),
            None => "end of input".to_string(),
        };
        Error::Parse {
            column,
            message: format!("{message}, found {found}"),
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.error("unexpected trailing input")),
        }
    }

    fn to_function(&self, (num, den): Fraction, column: usize) -> Result<RationalFunction> {
        if num.is_zero() {
            return Err(Error::Parse {
                column,
                message: "symbol entries must be nonzero".into(),
            });
        }
        RationalFunction::from_fraction(self.field, &num, &den)
    }

    fn expr(&mut self) -> Result<Fraction> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.add(&acc, &rhs, false);
                }
                Some('-') => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.add(&acc, &rhs, true);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Fraction> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = self.mul(&acc, &rhs);
                }
                Some('/') => {
                    self.bump();
                    let col = self.column();
                    let rhs = self.unary()?;
                    if rhs.0.is_zero() {
                        return Err(Error::Parse {
                            column: col,
                            message: "division by zero".into(),
                        });
                    }
                    acc = self.mul(&acc, &(rhs.1, rhs.0));
                }
                Some(c) if c == '(' || c == 't' || c == 'g' || c.is_ascii_digit() => {
                    let rhs = self.unary()?;
                    acc = self.mul(&acc, &rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Fraction> {
        if self.peek() == Some('-') {
            self.bump();
            let (n, d) = self.unary()?;
            return Ok((self.ring.neg(&n), d));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Fraction> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.bump();
        let negative = if self.peek() == Some('-') {
            self.bump();
            true
        } else {
            false
        };
        let col = self.column();
        let e = self.integer()?;
        if e > MAX_EXPONENT {
            return Err(Error::Parse {
                column: col,
                message: format!("exponent {e} exceeds {MAX_EXPONENT}"),
            });
        }
        let (n, d) = (self.ring.pow(&base.0, e), self.ring.pow(&base.1, e));
        if negative {
            if n.is_zero() {
                return Err(Error::Parse {
                    column: col,
                    message: "negative power of zero".into(),
                });
            }
            Ok(self.reduce(d, n))
        } else {
            Ok((n, d))
        }
    }

    fn atom(&mut self) -> Result<Fraction> {
        match self.peek() {
            Some('t') => {
                self.bump();
                Ok((Poly::t(), Poly::one()))
            }
            Some('g') => {
                self.bump();
                Ok((Poly::constant(self.field.generator()), Poly::one()))
            }
            Some('(') => {
                self.bump();
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let p = self.field.characteristic();
                let c: FqElement = self.field.from_int((n % p) as i64);
                Ok((Poly::constant(c), Poly::one()))
            }
            _ => Err(self.error("expected an integer, 't', 'g' or '('")),
        }
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| Error::Parse {
            column: start,
            message: format!("integer {digits} is too large"),
        })
    }

    fn add(&self, a: &Fraction, b: &Fraction, subtract: bool) -> Fraction {
        let r = &self.ring;
        let left = r.mul(&a.0, &b.1);
        let right = r.mul(&b.0, &a.1);
        let num = if subtract { r.sub(&left, &right) } else { r.add(&left, &right) };
        self.reduce(num, r.mul(&a.1, &b.1))
    }

    fn mul(&self, a: &Fraction, b: &Fraction) -> Fraction {
        let r = &self.ring;
        self.reduce(r.mul(&a.0, &b.0), r.mul(&a.1, &b.1))
    }

    fn reduce(&self, num: Poly, den: Poly) -> Fraction {
        let r = &self.ring;
        if num.is_zero() {
            return (Poly::zero(), Poly::one());
        }
        let g = r.gcd(&num, &den);
        let (num, den) = (r.div_exact(&num, &g), r.div_exact(&den, &g));
        let (lc, den) = r.monic(&den);
        let inv = self.field.inv(lc).expect("nonzero");
        (r.scale(&num, inv), den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> FqField {
        FqField::new(7, 1).unwrap()
    }

    #[test]
    fn parses_examples() {
        let f = f7();
        let r = PolyRing::new(&f);
        let x = parse_symbol(&f, "{t, t-1}", 2).unwrap();
        let slots = &x.terms()[0].1;
        assert_eq!(slots[0].valuation(&Place::Finite(Poly::t())), 1);
        assert_eq!(slots[1].valuation(&Place::Finite(r.from_ints(&[-1, 1]))), 1);
        let y = parse_symbol(&f, "{(t^2+1)/t, 3}", 2).unwrap();
        let slots = &y.terms()[0].1;
        assert_eq!(slots[0].valuation(&Place::Finite(Poly::t())), -1);
        assert_eq!(slots[0].valuation(&Place::Finite(r.from_ints(&[1, 0, 1]))), 1);
        assert_eq!(slots[1].constant_part(), f.from_int(3));
    }

    #[test]
    fn arithmetic() {
        let f = f7();
        let a = parse_function(&f, "2t*(t+1)^2 / t^-1 - 0").unwrap();
        let b = parse_function(&f, "2 t^2 (t + 1)^2").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_function(&f, "-t^2").unwrap().constant_part(), f.minus_one());
        assert_eq!(parse_function(&f, "g").unwrap().constant_part(), f.generator());
    }

    #[test]
    fn errors_carry_columns() {
        let f = f7();
        match parse_symbol(&f, "{t,", 2).unwrap_err() {
            Error::Parse { column, .. } => assert_eq!(column, 3),
            e => panic!("unexpected {e:?}"),
        }
        match parse_symbol(&f, "{t, 7}", 2).unwrap_err() {
            Error::Parse { column, .. } => assert_eq!(column, 4),
            e => panic!("unexpected {e:?}"),
        }
        assert!(matches!(parse_function(&f, "t/(t-t)"), Err(Error::Parse { column: 2, .. })));
        assert!(matches!(parse_function(&f, "t)"), Err(Error::Parse { column: 1, .. })));
    }

    #[test]
    fn places() {
        let f = f7();
        assert_eq!(parse_place(&f, "inf").unwrap(), Place::Infinity);
        assert_eq!(parse_place(&f, "t").unwrap(), Place::Finite(Poly::t()));
        assert_eq!(parse_place(&f, "t - 1").unwrap(), Place::Finite(PolyRing::new(&f).from_ints(&[-1, 1])));
        assert!(matches!(parse_place(&f, "2t-2"), Err(Error::BadPlace(_))));
        assert!(matches!(parse_place(&f, "t^2-1"), Err(Error::BadPlace(_))));
        assert!(matches!(parse_place(&f, "1/t"), Err(Error::BadPlace(_))));
    }
}
