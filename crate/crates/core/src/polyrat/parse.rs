use super::ratfunc::RatFunc;
use super::PolyError;
use crate::cyclotomic::CycNum;

/// Parse an expression like `((1+y*T)*(1+y*T^5))/((1-T^2)*(1-T^6)) - y` into
/// a rational function.  Supported: integers, identifiers as variables, `+ -
/// * / ^ ( )`, unary minus, and integer (possibly negative) exponents.
pub fn parse_ratfunc(input: &str) -> Result<RatFunc, PolyError> {
    let mut p = Parser {
        bytes: input.as_bytes(),
        pos: 0,
    };
    let f = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> PolyError {
        PolyError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFunc, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, PolyError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.factor()?;
                    acc = acc.div(&d)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RatFunc, PolyError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            _ => {
                let base = self.atom()?;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let e = self.exponent()?;
                    base.pow(e).map_err(|_| self.error("zero raised to a negative power"))
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn exponent(&mut self) -> Result<i32, PolyError> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let n: i32 = n.try_into().map_err(|_| self.error("exponent too large"))?;
                Ok(if neg { -n } else { n })
            }
            _ => Err(self.error("expected an integer exponent")),
        }
    }

    fn integer(&mut self) -> Result<u64, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("integer out of range"))
    }

    fn atom(&mut self) -> Result<RatFunc, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() == Some(b')') {
                    self.pos += 1;
                    Ok(inner)
                } else {
                    Err(self.error("expected ')'"))
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let n: i64 = n.try_into().map_err(|_| self.error("integer too large"))?;
                Ok(RatFunc::int(n))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                Ok(RatFunc::from_poly(super::Poly::monomial(
                    name,
                    1,
                    CycNum::one(),
                )))
            }
            _ => Err(self.error("expected a number, variable or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_normalizes() {
        let f = parse_ratfunc("(1 - T^2) / ((1-T) * (1+T))").unwrap();
        assert_eq!(f, RatFunc::one());
    }

    #[test]
    fn precedence_and_unary_minus() {
        let f = parse_ratfunc("-y + 2*T^2").unwrap();
        let g = parse_ratfunc("2*T^2 - y").unwrap();
        assert_eq!(f, g);
        assert_eq!(parse_ratfunc("1/2 + 1/2").unwrap(), RatFunc::one());
    }

    #[test]
    fn negative_exponents() {
        let f = parse_ratfunc("T^-2 * T^3").unwrap();
        assert_eq!(f, parse_ratfunc("T").unwrap());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_ratfunc("1 +").is_err());
        assert!(parse_ratfunc("(1").is_err());
        assert!(parse_ratfunc("T ^ y").is_err());
        assert!(parse_ratfunc("1/0").is_err());
    }
}
