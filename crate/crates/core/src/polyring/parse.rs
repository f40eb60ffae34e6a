use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::poly::{Context, Monomial, Polynomial};
use super::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { name: String, pos: usize },
}

impl Polynomial {
    /// Parses `term (("+"|"-") term)*` with variables `x1..xn` and `eps`.
    pub fn parse(text: &str, ctx: Context) -> Result<Polynomial, ParseError> {
        parse_with(text, ctx, |name| {
            if name == "eps" {
                return ctx.epsilon_slot();
            }
            let idx: usize = name.strip_prefix('x')?.parse().ok()?;
            (1..=ctx.dim()).contains(&idx).then(|| idx - 1)
        })
    }
}

/// Parses the polynomial grammar with a caller-supplied variable resolver,
/// mapping a name to its exponent slot in `ctx`.
pub fn parse_with(
    text: &str,
    ctx: Context,
    resolve: impl Fn(&str) -> Option<usize>,
) -> Result<Polynomial, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ctx,
        resolve: &resolve,
    };
    let mut terms = Vec::new();
    p.skip_ws();
    let first_sign = p.sign();
    terms.push(p.term(first_sign)?);
    loop {
        p.skip_ws();
        if p.at_end() {
            break;
        }
        match p.sign() {
            Some(s) => terms.push(p.term(Some(s))?),
            None => return Err(p.error("expected `+` or `-`")),
        }
    }
    Ok(Polynomial::from_terms(ctx, terms))
}

struct Parser<'a, F> {
    src: &'a [u8],
    pos: usize,
    ctx: Context,
    resolve: &'a F,
}

impl<F: Fn(&str) -> Option<usize>> Parser<'_, F> {
    fn error(&self, msg: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    /// Consumes a `+`/`-`, returning `true` for negative.
    fn sign(&mut self) -> Option<bool> {
        self.skip_ws();
        match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                Some(false)
            }
            Some(b'-') => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn digits(&mut self) -> Option<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
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

    fn rational(&mut self) -> Result<Option<Rational>, ParseError> {
        let Some(num) = self.digits() else {
            return Ok(None);
        };
        let num: BigInt = num.parse().expect("digit string");
        if !self.eat(b'/') {
            return Ok(Some(Rational::from_integer(num)));
        }
        let den_pos = self.pos;
        let den: BigInt = match self.digits() {
            Some(d) => d.parse().expect("digit string"),
            None => return Err(self.error("expected denominator")),
        };
        if den.is_zero() {
            return Err(ParseError::Syntax {
                pos: den_pos,
                msg: "zero denominator".into(),
            });
        }
        Ok(Some(Rational::new(num, den)))
    }

    fn factor(&mut self, exps: &mut Monomial) -> Result<(), ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected variable"));
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let slot = (self.resolve)(name).ok_or_else(|| ParseError::UnknownVariable {
            name: name.to_string(),
            pos: start,
        })?;
        let mut e = 1u32;
        if self.eat(b'^') {
            let pos = self.pos;
            e = self
                .digits()
                .and_then(|d| d.parse().ok())
                .filter(|&e: &u32| e > 0)
                .ok_or(ParseError::Syntax {
                    pos,
                    msg: "expected positive integer exponent".into(),
                })?;
        }
        *exps = exps.with_exponent(slot, exps.exponent(slot) + e);
        Ok(())
    }

    fn term(&mut self, negative: Option<bool>) -> Result<(Monomial, Rational), ParseError> {
        let mut exps = Monomial::one(self.ctx.nvars());
        let coeff = match self.rational()? {
            Some(c) => {
                if self.eat(b'*') {
                    self.factor(&mut exps)?;
                }
                c
            }
            None => {
                self.factor(&mut exps)?;
                Rational::one()
            }
        };
        while self.eat(b'*') {
            self.factor(&mut exps)?;
        }
        let coeff = if negative == Some(true) {
            -coeff
        } else {
            coeff
        };
        Ok((exps, coeff))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;

    fn ctx() -> Context {
        Context::new(4).unwrap()
    }

    #[test]
    fn parses_a_signed_monomial() {
        let p = Polynomial::parse("-2*x1*x2^3*x3^5*x4", ctx()).unwrap();
        assert_eq!(p, Polynomial::monomial(ctx(), &[1, 3, 5, 1], rat(-2)));
    }

    #[test]
    fn zero_parses_to_empty() {
        assert!(Polynomial::parse("0", ctx()).unwrap().is_zero());
        assert!(Polynomial::parse(" x1 - x1 ", ctx()).unwrap().is_zero());
    }

    #[test]
    fn factors_are_reordered_canonically() {
        let p = Polynomial::parse("x2*x1", ctx()).unwrap();
        assert_eq!(p.render(), "x1*x2");
    }

    #[test]
    fn rationals_and_whitespace() {
        let p = Polynomial::parse(" 3 / 4 * x1 ^ 2 - 1/2", ctx()).unwrap();
        assert_eq!(p.render(), "3/4*x1^2 - 1/2");
    }

    #[test]
    fn unknown_variable_is_reported() {
        assert_eq!(
            Polynomial::parse("x1 + x5", ctx()),
            Err(ParseError::UnknownVariable {
                name: "x5".into(),
                pos: 5
            })
        );
        assert!(matches!(
            Polynomial::parse("eps", ctx()),
            Err(ParseError::UnknownVariable { .. })
        ));
    }

    #[test]
    fn syntax_errors_carry_a_position() {
        assert!(matches!(
            Polynomial::parse("x1 +", ctx()),
            Err(ParseError::Syntax { pos: 4, .. })
        ));
        assert!(matches!(
            Polynomial::parse("x1^0", ctx()),
            Err(ParseError::Syntax { pos: 3, .. })
        ));
        assert!(matches!(
            Polynomial::parse("1/0", ctx()),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            Polynomial::parse("x1 x2", ctx()),
            Err(ParseError::Syntax { pos: 3, .. })
        ));
    }

    #[test]
    fn custom_resolver() {
        let ctx = Context::new(2).unwrap();
        let p = parse_with("x^2*y", ctx, |n| match n {
            "x" => Some(0),
            "y" => Some(1),
            _ => None,
        })
        .unwrap();
        assert_eq!(p, Polynomial::monomial(ctx, &[2, 1], rat(1)));
    }
}
