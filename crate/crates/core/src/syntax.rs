//! Text syntax for forms.
//!
//! ```text
//! form   ::= ['+'|'-'] term (('+'|'-') term)*
//! term   ::= coeff ['*'] factor ('*' factor)* | coeff | factor ('*' factor)*
//! factor ::= 'x' index ['^' exponent]
//! coeff  ::= integer | '[' integer (',' integer)* ']'
//! ```
//!
//! Whitespace is ignored. Integers are reduced into the prime subfield; a
//! bracketed list gives the coefficients of an extension-field element in the
//! polynomial basis, constant term first.

use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::quadric::QuadraticForm;
use crate::variety::{AlgebraicSet, Form};

struct Term {
    start: usize,
    end: usize,
    coeff: Elem,
    vars: Vec<usize>,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
    field: &'a FieldSpec,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, pos: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let neg = self.src.get(self.pos) == Some(&b'-');
        if neg {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            return self.err(start, "expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse::<i64>()
            .or_else(|_| self.err(start, format!("integer {text} out of range")))
    }

    fn coeff(&mut self) -> Result<Elem> {
        let start = self.pos;
        if self.eat(b'[') {
            let mut cs = vec![self.integer()?];
            while self.eat(b',') {
                cs.push(self.integer()?);
            }
            if !self.eat(b']') {
                return self.err(self.pos, "expected ']'");
            }
            return self
                .field
                .from_coeffs(&cs)
                .or_else(|e| self.err(start, e.to_string()));
        }
        Ok(self.field.from_int(self.integer()?))
    }

    fn factor(&mut self, vars: &mut Vec<usize>) -> Result<()> {
        let start = self.pos;
        if !self.eat(b'x') {
            return self.err(start, "expected a variable 'x<index>'");
        }
        let at = self.pos;
        if !self.src.get(at).is_some_and(|c| c.is_ascii_digit()) {
            return self.err(at, "expected a variable index after 'x'");
        }
        let idx = self.integer()?;
        if idx < 0 || idx as usize > self.n {
            return self.err(at, format!("variable x{idx} out of range for P^{}", self.n));
        }
        let mut exp = 1;
        if self.eat(b'^') {
            let e_pos = self.pos;
            exp = self.integer()?;
            if exp < 1 {
                return self.err(e_pos, "exponent must be positive");
            }
        }
        vars.extend(std::iter::repeat_n(idx as usize, exp as usize));
        Ok(())
    }

    fn term(&mut self, negate: bool) -> Result<Term> {
        let start = self.pos;
        let mut coeff = Elem::ONE;
        let mut vars = Vec::new();
        match self.peek() {
            Some(b'x') => self.factor(&mut vars)?,
            Some(c) if c.is_ascii_digit() || c == b'[' => {
                coeff = self.coeff()?;
                let had_star = self.eat(b'*');
                if had_star || self.peek() == Some(b'x') {
                    self.factor(&mut vars)?;
                }
            }
            _ => return self.err(self.pos, "expected a term"),
        }
        while self.eat(b'*') {
            self.factor(&mut vars)?;
        }
        if negate {
            coeff = self.field.neg(coeff);
        }
        Ok(Term {
            start,
            end: self.pos,
            coeff,
            vars,
        })
    }

    fn terms(&mut self) -> Result<Vec<Term>> {
        let mut out = Vec::new();
        let mut negate = self.eat(b'-');
        if !negate {
            self.eat(b'+');
        }
        loop {
            self.skip_ws();
            out.push(self.term(negate)?);
            match self.peek() {
                None => break,
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                Some(c) => return self.err(self.pos, format!("unexpected '{}'", c as char)),
            }
            self.pos += 1;
        }
        Ok(out)
    }
}

/// Parses a homogeneous form over `field` in `n + 1` variables.
///
/// `degree = None` takes the degree of the first term. Like terms are combined.
pub fn parse_form(text: &str, n: usize, field: &FieldSpec, degree: Option<usize>) -> Result<Form> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        n,
        field,
    };
    if p.peek().is_none() {
        return p.err(0, "empty form");
    }
    let terms = p.terms()?;
    let d = degree.unwrap_or(terms[0].vars.len());
    if d == 0 {
        return p.err(terms[0].start, "constant term in a form");
    }
    for t in &terms {
        if t.vars.len() != d {
            let shown = text[t.start..t.end].trim();
            return p.err(
                t.start,
                format!("term '{shown}' has degree {}, expected {d}", t.vars.len()),
            );
        }
    }
    let pairs: Vec<(Vec<usize>, Elem)> = terms.into_iter().map(|t| (t.vars, t.coeff)).collect();
    Form::from_terms(n, d, field, &pairs)
}

/// Parses a quadratic form; anything not homogeneous of degree 2 is rejected.
pub fn parse_quadric(text: &str, n: usize, field: &FieldSpec) -> Result<QuadraticForm> {
    parse_form(text, n, field, Some(2))?.to_quadratic()
}

/// Parses `;`-separated forms with optional `deg=<d>` and `dim=<s>` items.
pub fn parse_algebraic_set(text: &str, n: usize, field: &FieldSpec) -> Result<AlgebraicSet> {
    let mut forms = Vec::new();
    let mut deg = None;
    let mut dim = None;
    let mut offset = 0;
    for item in text.split(';') {
        let trimmed = item.trim();
        let shift = |e: Error| match e {
            Error::Parse { pos, msg } => Error::Parse { pos: pos + offset, msg },
            other => other,
        };
        let declared = |key: &str| -> Option<Result<i64>> {
            let rest = trimmed.strip_prefix(key)?.trim_start().strip_prefix('=')?;
            Some(rest.trim().parse::<i64>().map_err(|_| Error::Parse {
                pos: offset,
                msg: format!("bad value in '{trimmed}'"),
            }))
        };
        if let Some(v) = declared("deg") {
            deg = Some(v?);
        } else if let Some(v) = declared("dim") {
            dim = Some(v?);
        } else if !trimmed.is_empty() {
            forms.push(parse_form(item, n, field, None).map_err(shift)?);
        }
        offset += item.len() + 1;
    }
    Ok(AlgebraicSet::new(forms)?.with_declared(deg, dim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::proj::monomial_index;
    use proptest::prelude::*;

    #[test]
    fn conventional_notation() {
        let f = make_field(3, 1).unwrap();
        let q = parse_quadric("x0^2+x1^2-x2^2", 3, &f).unwrap();
        assert_eq!(q.coeff(0, 0), Elem::ONE);
        assert_eq!(q.coeff(1, 1), Elem::ONE);
        assert_eq!(q.coeff(2, 2), f.from_int(2));
        assert_eq!(q.to_string(), "x0^2+x1^2+2*x2^2");
        assert_eq!(
            parse_quadric("x1*x0", 2, &f).unwrap(),
            parse_quadric(" x0 * x1 ", 2, &f).unwrap()
        );
        assert_eq!(
            parse_quadric("2x0x1", 2, &f).unwrap_err(),
            Error::Parse { pos: 3, msg: "unexpected 'x'".into() }
        );
        assert_eq!(parse_quadric("2x0*x1 - x0*x1", 2, &f).unwrap().coeffs()[monomial_index(2, 0, 1)], Elem::ONE);
    }

    #[test]
    fn rejections() {
        let f = make_field(3, 1).unwrap();
        match parse_quadric("x0*x1*x2", 2, &f).unwrap_err() {
            Error::Parse { pos: 0, msg } => assert!(msg.contains("degree 3"), "{msg}"),
            e => panic!("{e:?}"),
        }
        match parse_quadric("x0^2 + x1", 2, &f).unwrap_err() {
            Error::Parse { pos: 7, msg } => assert!(msg.contains("'x1'"), "{msg}"),
            e => panic!("{e:?}"),
        }
        assert!(matches!(parse_quadric("x0*x3", 2, &f), Err(Error::Parse { pos: 4, .. })));
        assert_eq!(parse_quadric("x0^2+2*x0^2", 2, &f).unwrap_err(), Error::ZeroForm);
        assert!(matches!(parse_quadric("x0^2+", 2, &f), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(parse_quadric("", 2, &f), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_quadric("3", 2, &f), Err(Error::Parse { .. })));
        assert!(matches!(parse_quadric("x0 x1", 2, &f), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_quadric("[1,1]*x0^2", 2, &f), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_quadric("x^2", 2, &f), Err(Error::Parse { pos: 1, .. })));
    }

    #[test]
    fn extension_coefficients() {
        let f = make_field(2, 2).unwrap();
        let q = parse_quadric("[0,1]*x0^2 + x1*x2 + [1,1]x2^2", 2, &f).unwrap();
        assert_eq!(q.coeff(0, 0), f.from_coeffs(&[0, 1]).unwrap());
        assert_eq!(q.coeff(2, 2), f.from_coeffs(&[1, 1]).unwrap());
        assert_eq!(parse_quadric(&q.to_string(), 2, &f).unwrap(), q);
    }

    #[test]
    fn algebraic_sets() {
        let f = make_field(3, 1).unwrap();
        let x = parse_algebraic_set("x0*x1; x0^2+x1^2-x2^2; deg=4; dim=1", 3, &f).unwrap();
        assert_eq!(x.forms().len(), 2);
        assert_eq!((x.declared_deg, x.declared_dim), (Some(4), Some(1)));
        assert_eq!(x.count_points(1).unwrap(), 13);
        let c = parse_algebraic_set("x0^3 + x1*x2^2", 2, &f).unwrap();
        assert_eq!(c.forms()[0].degree(), 3);
        assert!(matches!(
            parse_algebraic_set("x0; x1 + x1^2", 2, &f),
            Err(Error::Parse { pos: 9, .. })
        ));
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(p in prop::sample::select(vec![(2u32, 1u32), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3)]),
                                  n in 0usize..4, d in 1usize..4, seed in any::<u64>()) {
            use rand::SeedableRng;
            let f = make_field(p.0, p.1).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let g = crate::variety::random_form(n, d, &f, &mut rng);
            let back = parse_form(&g.to_string(), n, &f, None).unwrap();
            prop_assert_eq!(back, g.clone());
            if d == 2 {
                let q = g.to_quadratic().unwrap();
                prop_assert_eq!(parse_quadric(&q.to_string(), n, &f).unwrap(), q);
            }
        }
    }
}
