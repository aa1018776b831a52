//! Text syntax for elements of the double and its exterior powers.
//!
//! Lowercase `ek` is the vector `e_k`, uppercase `Ek` the form `e^k`; `^` is the
//! wedge; coefficients are rationals, `i`, products like `1/2*i`, or a
//! parenthesized Gaussian literal such as `(1/2+1/2 i)`.
//! Example: `e1 - i*e2 + 1/2*E4`, `E1^E3 + E2^E4`.

use num_traits::One;

use crate::error::{Error, Result};
use crate::exterior::{render, ExteriorElement, Form, Multivector};
use crate::linalg::{zero_vec, Vector};
use crate::scalar::{parse_rational, GaussianRational as G};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbol {
    Vector(usize),
    Form(usize),
}

pub type Monomial = (G, Vec<Symbol>);

/// Parses a sum of coefficient-weighted wedge monomials; indices are 0-based in the output.
pub fn parse_expr(text: &str) -> Result<Vec<Monomial>> {
    let mut p = ExprParser { chars: text.chars().collect(), pos: 0 };
    let out = p.sum()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

struct ExprParser {
    chars: Vec<char>,
    pos: usize,
}

impl ExprParser {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.to_string() })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn sum(&mut self) -> Result<Vec<Monomial>> {
        let mut out = Vec::new();
        self.skip_ws();
        if self.peek() == Some('0') && self.rest_is_blank(1) {
            self.pos += 1;
            return Ok(out);
        }
        let mut sign = G::one();
        match self.peek() {
            Some('-') => {
                sign = -sign;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        loop {
            let (c, syms) = self.term()?;
            out.push((&sign * &c, syms));
            self.skip_ws();
            match self.peek() {
                Some('+') => sign = G::one(),
                Some('-') => sign = -G::one(),
                _ => return Ok(out),
            }
            self.pos += 1;
        }
    }

    fn rest_is_blank(&self, from: usize) -> bool {
        self.chars[self.pos + from..].iter().all(|c| c.is_whitespace())
    }

    fn term(&mut self) -> Result<Monomial> {
        let mut coef = G::one();
        loop {
            self.skip_ws();
            match self.peek() {
                Some('e') | Some('E') => break,
                Some('i') => {
                    self.pos += 1;
                    coef = coef.times_i();
                }
                Some('(') => {
                    let start = self.pos + 1;
                    let end = (start..self.chars.len())
                        .find(|&k| self.chars[k] == ')')
                        .ok_or_else(|| Error::Parse { pos: self.pos, msg: "missing ')'".into() })?;
                    let lit: String = self.chars[start..end].iter().collect();
                    let c: G = lit.parse().map_err(|_| Error::Parse {
                        pos: start,
                        msg: format!("bad coefficient '{lit}'"),
                    })?;
                    coef *= &c;
                    self.pos = end + 1;
                }
                Some(c) if c.is_ascii_digit() => {
                    let start = self.pos;
                    while self.peek().is_some_and(|c| c.is_ascii_digit() || c == '/') {
                        self.pos += 1;
                    }
                    let tok: String = self.chars[start..self.pos].iter().collect();
                    let r = parse_rational(&tok)
                        .map_err(|_| Error::Parse { pos: start, msg: format!("bad coefficient '{tok}'") })?;
                    coef *= &G::from_rational(r);
                }
                _ => return self.err("expected coefficient or basis symbol"),
            }
            self.skip_ws();
            match self.peek() {
                Some('*') => self.pos += 1,
                Some('e') | Some('E') => break,
                // "2 i" and "1/2 i" style
                Some('i') => {}
                _ => return self.err("expected '*' after coefficient"),
            }
        }
        let mut syms = vec![self.symbol()?];
        loop {
            self.skip_ws();
            if self.peek() != Some('^') {
                break;
            }
            self.pos += 1;
            self.skip_ws();
            syms.push(self.symbol()?);
        }
        Ok((coef, syms))
    }

    fn symbol(&mut self) -> Result<Symbol> {
        let kind = self.peek();
        self.pos += 1;
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        let k: usize = match digits.parse() {
            Ok(k) if k >= 1 => k,
            _ => return Err(Error::Parse { pos: start, msg: "expected a 1-based index".into() }),
        };
        match kind {
            Some('e') => Ok(Symbol::Vector(k - 1)),
            Some('E') => Ok(Symbol::Form(k - 1)),
            _ => unreachable!("caller checked the symbol letter"),
        }
    }
}

fn check_index(k: usize, n: usize) -> Result<()> {
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k + 1, dim: n });
    }
    Ok(())
}

/// An element `X + α` of the complexified double, as a length-`2n` vector.
pub fn parse_double_element(text: &str, n: usize) -> Result<Vector> {
    let mut v = zero_vec(2 * n);
    for (c, syms) in parse_expr(text)? {
        if syms.len() != 1 {
            return Err(Error::Input("double elements have no wedge products".into()));
        }
        let slot = match syms[0] {
            Symbol::Vector(k) => {
                check_index(k, n)?;
                k
            }
            Symbol::Form(k) => {
                check_index(k, n)?;
                n + k
            }
        };
        v[slot] += &c;
    }
    Ok(v)
}

fn parse_exterior(text: &str, n: usize, want_forms: bool) -> Result<ExteriorElement> {
    let terms = parse_expr(text)?;
    let degree = terms.first().map_or(0, |t| t.1.len());
    let mut out = ExteriorElement::zero(n, degree);
    for (c, syms) in terms {
        if syms.len() != degree {
            return Err(Error::Input("mixed degrees in expression".into()));
        }
        let mut idx = Vec::with_capacity(degree);
        for s in syms {
            match (s, want_forms) {
                (Symbol::Form(k), true) | (Symbol::Vector(k), false) => {
                    check_index(k, n)?;
                    idx.push(k)
                }
                _ => {
                    let kind = if want_forms { "forms (E)" } else { "vectors (e)" };
                    return Err(Error::Input(format!("expected only {kind}")));
                }
            }
        }
        out = out.add(&ExteriorElement::monomial(n, &idx, c));
    }
    Ok(out)
}

/// A form on `g_C` such as `E1^E3 + E2^E6`.
pub fn parse_form(text: &str, n: usize) -> Result<Form> {
    parse_exterior(text, n, true)
}

/// A multivector on `g_C` such as `e2^e3 - i*e1^e4`.
pub fn parse_multivector(text: &str, n: usize) -> Result<Multivector> {
    parse_exterior(text, n, false)
}

/// Formal sum over `e1..en, E1..En`, e.g. `e1 - i*e2 + 1/2*E4`.
pub fn format_double_element(v: &[G]) -> String {
    let n = v.len() / 2;
    render(&ExteriorElement::from_vector(v), |k| {
        if k < n {
            format!("e{}", k + 1)
        } else {
            format!("E{}", k - n + 1)
        }
    })
}

pub fn format_form(f: &Form) -> String {
    render(f, |k| format!("E{}", k + 1))
}

pub fn format_multivector(m: &Multivector) -> String {
    render(m, |k| format!("e{}", k + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_element_round_trip() {
        let v = parse_double_element("e1 - i*e2 + 1/2*E4", 4).unwrap();
        let mut w = zero_vec(8);
        w[0] = G::from_int(1);
        w[1] = -G::i();
        w[7] = G::frac(1, 2);
        assert_eq!(v, w);
        assert_eq!(format_double_element(&v), "e1 - i*e2 + 1/2*E4");
        assert_eq!(parse_double_element(&format_double_element(&v), 4).unwrap(), v);
    }

    #[test]
    fn gaussian_coefficients() {
        let v = parse_double_element("(1/2+1/2 i)*e1 - 2*i*E2", 2).unwrap();
        assert_eq!(v[0], G::complex(1, 2, 1, 2));
        assert_eq!(v[3], G::complex(0, 1, -2, 1));
        assert_eq!(parse_double_element(&format_double_element(&v), 2).unwrap(), v);
    }

    #[test]
    fn forms_and_multivectors() {
        let f = parse_form("E1^E3 + E2^E6 + E4^E5", 6).unwrap();
        assert_eq!(f.degree(), 2);
        assert_eq!(f.terms().len(), 3);
        let g = parse_form("E3^E1", 3).unwrap();
        assert_eq!(g.coeff(&[0, 2]), &G::from_int(-1));
        assert!(parse_form("E1^E2 + E3", 3).is_err());
        assert!(parse_form("e1^E2", 3).is_err());
        let m = parse_multivector("e2^e3", 4).unwrap();
        assert_eq!(parse_multivector(&format_multivector(&m), 4).unwrap(), m);
        assert_eq!(parse_form("0", 3).unwrap().degree(), 0);
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_double_element("e1 + x", 2), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(parse_double_element("e3", 2), Err(Error::IndexOutOfRange { .. })));
        assert!(parse_double_element("e0", 2).is_err());
    }
}
