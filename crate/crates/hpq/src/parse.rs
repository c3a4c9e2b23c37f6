//! Parser for the polynomial text grammar:
//!
//! ```text
//! poly   := ['-'] term (('+'|'-') term)*
//! term   := coeff ['*' factor ('*' factor)*] | factor ('*' factor)*
//! factor := ('z'|'w') index ['^' int]
//! coeff  := rat | '(' rat [('+'|'-') rat 'i'] ')'
//! rat    := int ['/' int]
//! ```
//!
//! `w_j` denotes the conjugate variable `conj(z_j)`; indices are 1-based and
//! must lie in `1..=n`. Whitespace is insignificant. Rendering via
//! [`BiPoly::render`] round-trips: `parse_poly(render(f), n) == f`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gauss::GaussRational;
use crate::multiindex::{BiMonomial, MultiIndex};
use crate::poly::BiPoly;
use crate::Rational;

struct Scanner<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner {
            text: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected '{}'", c as char)))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn digits(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::parse(start, "expected a number"));
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|_| Error::parse(start, "number too large"))
    }

    fn int(&mut self) -> Result<BigInt> {
        let neg = self.eat(b'-');
        let v = self.digits()?;
        let v = BigInt::from(v);
        Ok(if neg { -v } else { v })
    }

    fn rat(&mut self) -> Result<Rational> {
        let num = self.int()?;
        if self.eat(b'/') {
            let pos = self.pos;
            let den = self.int()?;
            if den.is_zero() {
                return Err(Error::parse(pos, "zero denominator"));
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from(num))
        }
    }

    /// `rat` or `( rat [(+|-) rat i] )`.
    fn coeff(&mut self) -> Result<GaussRational> {
        if self.eat(b'(') {
            let re = self.rat()?;
            let im = match self.peek() {
                Some(b'+') | Some(b'-') => {
                    let neg = self.bump() == Some(b'-');
                    let mag = self.rat()?;
                    self.expect(b'i')?;
                    if neg {
                        -mag
                    } else {
                        mag
                    }
                }
                Some(b'i') => {
                    // `(1i)` style: the single rat was the imaginary part?
                    // Not in the grammar; reject to keep round-trips exact.
                    return Err(Error::parse(self.pos, "expected ')' or sign before 'i'"));
                }
                _ => Rational::zero(),
            };
            self.expect(b')')?;
            Ok(GaussRational::new(re, im))
        } else {
            Ok(GaussRational::from_rational(self.rat()?))
        }
    }

    /// `('z'|'w') index ['^' int]`, returned as (is_conjugate, index, power).
    fn factor(&mut self, n: usize) -> Result<(bool, usize, u32)> {
        let pos = self.pos;
        let kind = match self.bump() {
            Some(b'z') => false,
            Some(b'w') => true,
            _ => return Err(Error::parse(pos, "expected variable 'z' or 'w'")),
        };
        let idx_pos = self.pos;
        let idx = self.digits()? as usize;
        if idx < 1 || idx > n {
            return Err(Error::VariableOutOfRange { index: idx, n });
        }
        let _ = idx_pos;
        let power = if self.eat(b'^') {
            let p = self.digits()?;
            u32::try_from(p).map_err(|_| Error::parse(self.pos, "exponent too large"))?
        } else {
            1
        };
        Ok((kind, idx - 1, power))
    }

    fn term(&mut self, n: usize) -> Result<(BiMonomial, GaussRational)> {
        let mut coeff = GaussRational::one();
        let mut alpha = MultiIndex::zero(n);
        let mut beta = MultiIndex::zero(n);

        let lead = self
            .peek()
            .ok_or_else(|| Error::parse(self.pos, "expected a term"))?;
        if lead == b'(' || lead.is_ascii_digit() || lead == b'-' {
            coeff = self.coeff()?;
            if !self.eat(b'*') {
                return Ok((BiMonomial::new(alpha, beta), coeff));
            }
        }
        loop {
            let (is_conj, j, power) = self.factor(n)?;
            if is_conj {
                beta.0[j] += power;
            } else {
                alpha.0[j] += power;
            }
            if !self.eat(b'*') {
                break;
            }
        }
        Ok((BiMonomial::new(alpha, beta), coeff))
    }
}

/// Parses a polynomial over `n` variables. Errors carry the byte position.
pub fn parse_poly(text: &str, n: usize) -> Result<BiPoly> {
    let mut s = Scanner::new(text);
    let mut out = BiPoly::zero(n);
    let mut negate = s.eat(b'-');
    loop {
        let (mono, coeff) = s.term(n)?;
        out.add_term(mono, if negate { -coeff } else { coeff });
        match s.peek() {
            Some(b'+') => {
                s.bump();
                negate = false;
            }
            Some(b'-') => {
                s.bump();
                negate = true;
            }
            None => break,
            Some(c) => {
                return Err(Error::parse(
                    s.pos,
                    format!("unexpected character '{}'", c as char),
                ))
            }
        }
    }
    if !s.at_end() {
        return Err(Error::parse(s.pos, "trailing input"));
    }
    Ok(out)
}

/// Parses `num`, `num/den`, with optional sign.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let mut s = Scanner::new(text);
    let r = s.rat()?;
    if !s.at_end() {
        return Err(Error::parse(s.pos, "trailing input after rational"));
    }
    Ok(r)
}

/// Parses a coefficient literal: `3/5` or `(1/2+1/3i)`.
pub fn parse_gauss(text: &str) -> Result<GaussRational> {
    let mut s = Scanner::new(text);
    let g = s.coeff()?;
    if !s.at_end() {
        return Err(Error::parse(s.pos, "trailing input after coefficient"));
    }
    Ok(g)
}

/// Parses a comma-separated list of coefficient literals, the sphere-point
/// text form.
pub fn parse_gauss_list(text: &str) -> Result<Vec<GaussRational>> {
    text.split(',')
        .map(|part| parse_gauss(part.trim()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_examples() {
        let p = parse_poly("z1*w2", 2).unwrap();
        let expected = BiPoly::variable(2, 0)
            .try_mul(&BiPoly::conj_variable(2, 1))
            .unwrap();
        assert_eq!(p, expected);

        let p = parse_poly("(1/2+1/2i)*z1^2", 2).unwrap();
        assert_eq!(p.num_terms(), 1);
        let c = GaussRational::new(
            Rational::new(1.into(), 2.into()),
            Rational::new(1.into(), 2.into()),
        );
        let sq = BiPoly::variable(2, 0)
            .try_mul(&BiPoly::variable(2, 0))
            .unwrap()
            .scale(&c);
        assert_eq!(p, sq);

        let p = parse_poly("z1*w1 - 1/2", 2).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(
            p.coefficient(&BiMonomial::one(2)),
            GaussRational::from_ratio(-1, 2)
        );
    }

    #[test]
    fn out_of_range_index() {
        let err = parse_poly("z3", 2).unwrap_err();
        assert_eq!(err, Error::VariableOutOfRange { index: 3, n: 2 });
    }

    #[test]
    fn syntax_error_has_position() {
        match parse_poly("z1 + * z2", 2) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 5),
            other => panic!("expected parse error, got {:?}", other),
        }
    }

    #[test]
    fn render_round_trip_samples() {
        for src in [
            "z1*w2",
            "(1/2+1/2i)*z1^2",
            "z1*w1 - 1/2",
            "-z1 + z2^3*w1 - (0+1i)*w2",
            "0",
            "2/3",
            "-5",
            "z1^2 - z2^2",
        ] {
            let p = parse_poly(src, 2).unwrap();
            let round = parse_poly(&p.render(), 2).unwrap();
            assert_eq!(p, round, "round-trip failed for {:?} -> {:?}", src, p.render());
        }
    }

    #[test]
    fn gauss_and_point_literals() {
        assert_eq!(parse_gauss("(0+1i)").unwrap(), GaussRational::i());
        assert_eq!(parse_gauss("-2/3").unwrap(), GaussRational::from_ratio(-2, 3));
        let pt = parse_gauss_list("(1/3+2/3i), 2/3").unwrap();
        assert_eq!(pt.len(), 2);
        assert_eq!(pt[1], GaussRational::from_ratio(2, 3));
    }
}
