//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr     := ['-'] term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := atom ('^' nonneg-int)?
//! atom     := rational | var | '(' expr ')' | 'exp' '(' expr ')' | 'sqrt' '(' expr ')'
//! var      := 'x' | 'x1' .. 'xd'
//! rational := int ('/' posint)?
//! ```
//!
//! Whitespace is ignored everywhere. A `sqrt` argument must reduce to a
//! polynomial and is certified strictly positive at construction time.

use crate::error::{Error, Result};
use crate::expr::{as_polynomial, Expr};
use crate::rational::Rat;
use num_bigint::BigInt;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    dim: usize,
}

pub fn parse_expr(text: &str, dim: usize) -> Result<Expr> {
    assert!(dim >= 1, "dimension must be at least 1");
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        dim,
    };
    p.skip_ws();
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        let leading_minus = self.eat(b'-');
        let first = self.term()?;
        terms.push(if leading_minus {
            Expr::product(vec![Expr::int(-1), first])
        } else {
            first
        });
        loop {
            if self.eat(b'+') {
                terms.push(self.term()?);
            } else if self.eat(b'-') {
                let t = self.term()?;
                terms.push(Expr::product(vec![Expr::int(-1), t]));
            } else {
                break;
            }
        }
        Ok(Expr::sum(terms))
    }

    fn term(&mut self) -> Result<Expr> {
        let mut factors = vec![self.factor()?];
        while self.eat(b'*') {
            factors.push(self.factor()?);
        }
        Ok(Expr::product(factors))
    }

    fn factor(&mut self) -> Result<Expr> {
        let atom = self.atom()?;
        if self.eat(b'^') {
            let n = self.nonneg_int()?;
            Ok(Expr::int_pow(atom, n))
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'x') => self.variable(),
            Some(b'e') | Some(b's') => self.call(),
            Some(c) if c.is_ascii_digit() || c == b'-' => self.rational(),
            _ => Err(self.err("expected a number, variable, `exp`, `sqrt`, or `(`")),
        }
    }

    fn call(&mut self) -> Result<Expr> {
        let start = self.pos;
        let name = self.ident();
        match name.as_str() {
            "exp" => {
                self.skip_ws();
                self.expect(b'(')?;
                let arg = self.expr()?;
                self.expect(b')')?;
                Ok(Expr::exp(arg))
            }
            "sqrt" => {
                self.skip_ws();
                self.expect(b'(')?;
                let arg_start = self.pos;
                let arg = self.expr()?;
                self.expect(b')')?;
                let p = as_polynomial(&arg, self.dim).ok_or(Error::Syntax {
                    position: arg_start,
                    message: "sqrt argument must reduce to a polynomial".into(),
                })?;
                Expr::sqrt_poly(p)
            }
            other => {
                self.pos = start;
                Err(self.err(&format!("unknown function `{other}`")))
            }
        }
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphabetic())
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn variable(&mut self) -> Result<Expr> {
        debug_assert_eq!(self.peek(), Some(b'x'));
        self.pos += 1;
        let digits_start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let axis = if digits_start == self.pos {
            0
        } else {
            let s = std::str::from_utf8(&self.src[digits_start..self.pos]).unwrap();
            let k: usize = s.parse().map_err(|_| self.err("bad variable index"))?;
            if k == 0 {
                return Err(self.err("variable indices start at 1"));
            }
            k - 1
        };
        if axis >= self.dim {
            return Err(self.err(&format!(
                "variable x{} exceeds dimension {}",
                axis + 1,
                self.dim
            )));
        }
        self.skip_ws();
        Ok(Expr::var(axis))
    }

    fn nonneg_int(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a nonnegative integer exponent"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let n = s
            .parse::<u32>()
            .map_err(|_| self.err("exponent out of range"))?;
        self.skip_ws();
        Ok(n)
    }

    fn rational(&mut self) -> Result<Expr> {
        let neg = self.peek() == Some(b'-');
        if neg {
            self.pos += 1;
        }
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let num: BigInt = std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .unwrap();
        let num = if neg { -num } else { num };
        self.skip_ws();
        // A '/' only continues a rational literal when followed by digits;
        // the grammar has no general division.
        if self.peek() == Some(b'/')
            && self
                .src
                .get(self.pos + 1..)
                .and_then(|rest| rest.iter().find(|c| !c.is_ascii_whitespace()))
                .is_some_and(|c| c.is_ascii_digit())
        {
            self.pos += 1;
            self.skip_ws();
            let dstart = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let den: BigInt = std::str::from_utf8(&self.src[dstart..self.pos])
                .unwrap()
                .parse()
                .unwrap();
            if den == BigInt::from(0) {
                return Err(self.err("zero denominator"));
            }
            self.skip_ws();
            Ok(Expr::constant(Rat::new(num, den)))
        } else {
            self.skip_ws();
            Ok(Expr::constant(Rat::from_integer(num)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use crate::rational::{rat, rat_int};

    fn upoly(coeffs: &[i64]) -> Polynomial {
        Polynomial::from_dense(&coeffs.iter().map(|&c| rat_int(c)).collect::<Vec<_>>())
    }

    #[test]
    fn parses_polynomials() {
        let e = parse_expr("x^2 + 1", 1).unwrap();
        assert_eq!(as_polynomial(&e, 1).unwrap(), upoly(&[1, 0, 1]));
    }

    #[test]
    fn parses_exp() {
        assert_eq!(parse_expr("exp(x)", 1).unwrap(), Expr::exp(Expr::var(0)));
    }

    #[test]
    fn parses_sqrt_with_positivity_check() {
        let e = parse_expr("sqrt(1 + x^2)", 1).unwrap();
        assert_eq!(e, Expr::SqrtPoly(upoly(&[1, 0, 1])));
    }

    #[test]
    fn rejects_sqrt_with_real_zero() {
        assert!(matches!(
            parse_expr("sqrt(x)", 1),
            Err(Error::Positivity(_))
        ));
    }

    #[test]
    fn rejects_sqrt_of_non_polynomial() {
        assert!(matches!(
            parse_expr("sqrt(exp(x))", 1),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn parses_rationals_and_scalar_products() {
        let e = parse_expr("1/2*x", 1).unwrap();
        assert_eq!(
            as_polynomial(&e, 1).unwrap(),
            Polynomial::from_dense(&[Rat::from_integer(0.into()), rat(1, 2)])
        );
    }

    #[test]
    fn parses_multivariate_variables() {
        let e = parse_expr("x1*x2 + x2^3", 2).unwrap();
        let p = as_polynomial(&e, 2).unwrap();
        assert_eq!(p.degree(), Some(3));
        assert!(parse_expr("x3", 2).is_err());
    }

    #[test]
    fn reports_syntax_error_positions() {
        match parse_expr("x^2 + * 3", 1) {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 6),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn leading_minus_is_supported() {
        let e = parse_expr("-1 - x^2", 1).unwrap();
        assert_eq!(as_polynomial(&e, 1).unwrap(), upoly(&[-1, 0, -1]));
    }

    #[test]
    fn print_parse_round_trip() {
        for (text, dim) in [
            ("x^2 + 1", 1),
            ("exp(x)", 1),
            ("sqrt(1 + x^2)", 1),
            ("5*x^7 - 3", 1),
            ("1/2*x", 1),
            ("exp(x1 + x2^2)", 2),
            ("(x + 1)*(x - 1)", 1),
            ("-x^3 + 2*x - 1/3", 1),
        ] {
            let once = parse_expr(text, dim).unwrap();
            let again = parse_expr(&once.to_string(), dim).unwrap();
            assert_eq!(once, again, "round trip failed for `{text}`");
        }
    }
}
