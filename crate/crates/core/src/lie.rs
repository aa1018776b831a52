//! Real Lie algebras given by rational structure constants, read from and
//! written to compact structure-equation tuples such as `0,0,0,12`.
//!
//! Entry `j` of a tuple is `de^j`; brackets follow from `dω(X, Y) = -ω([X, Y])`,
//! so `0,0,0,12` means `de^4 = e^12` and `[e1, e2] = -e4`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exterior::{Form, subsets};
use crate::linalg::{axpy, is_zero_vec, unit_vec, zero_vec, Matrix, Subspace, Vector};
use crate::scalar::{parse_rational, GaussianRational as G, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    dim: usize,
    /// `table[i * dim + j] = [e_i, e_j]`, antisymmetric.
    table: Vec<Vector>,
}

impl LieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        let name = vec!["0"; dim].join(",");
        Self { name, dim, table: vec![zero_vec(dim); dim * dim] }
    }

    /// Builds an algebra from `[e_i, e_j]` for `i < j`; other pairs follow by antisymmetry.
    /// Fails with [`Error::NotALieAlgebra`] when the Jacobi identity does not hold.
    pub fn from_brackets(name: &str, dim: usize, brackets: &[((usize, usize), Vector)]) -> Result<Self> {
        let alg = Self::from_brackets_unchecked(name, dim, brackets)?;
        if let Some(&t) = alg.check_jacobi().first() {
            return Err(Error::NotALieAlgebra(t));
        }
        Ok(alg)
    }

    /// Like [`LieAlgebra::from_brackets`] but skips the Jacobi check.
    pub fn from_brackets_unchecked(
        name: &str,
        dim: usize,
        brackets: &[((usize, usize), Vector)],
    ) -> Result<Self> {
        let mut table = vec![zero_vec(dim); dim * dim];
        for ((i, j), v) in brackets {
            let (i, j) = (*i, *j);
            if i >= dim || j >= dim {
                return Err(Error::IndexOutOfRange { index: i.max(j) + 1, dim });
            }
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
            }
            if !v.iter().all(G::is_real) {
                return Err(Error::Input("structure constants must be real".into()));
            }
            if i == j {
                if !is_zero_vec(v) {
                    return Err(Error::Input(format!("[e{0}, e{0}] must vanish", i + 1)));
                }
                continue;
            }
            let neg: Vector = v.iter().map(|x| -x).collect();
            for k in 0..dim {
                table[i * dim + j][k] += &v[k];
                table[j * dim + i][k] += &neg[k];
            }
        }
        Ok(Self { name: name.to_string(), dim, table })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    /// `[e_i, e_j]` (0-based).
    pub fn basis_bracket(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.dim + j]
    }

    /// Bilinear bracket of complex coordinate vectors.
    pub fn bracket(&self, x: &[G], y: &[G]) -> Vector {
        let mut out = zero_vec(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let b = self.basis_bracket(i, j);
                if !is_zero_vec(b) {
                    axpy(&mut out, &(xi * yj), b);
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|v| is_zero_vec(v))
    }

    /// Triples `(i, j, k)` (1-based, `i < j < k`) on which the Jacobi cyclic sum is nonzero.
    pub fn check_jacobi(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dim;
        let e = |i| unit_vec(n, i);
        let mut bad = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = self.bracket(self.basis_bracket(i, j), &e(k));
                    let b = self.bracket(self.basis_bracket(j, k), &e(i));
                    let c = self.bracket(self.basis_bracket(k, i), &e(j));
                    let s: Vector = (0..n).map(|t| &(&a[t] + &b[t]) + &c[t]).collect();
                    if !is_zero_vec(&s) {
                        bad.push((i + 1, j + 1, k + 1));
                    }
                }
            }
        }
        bad
    }

    /// `de^k` as a 2-form: the coefficient of `e^{ij}` (`i < j`) is `-[e_i, e_j]_k`.
    pub fn d_of_coframe(&self, k: usize) -> Form {
        let coeffs = subsets(self.dim, 2)
            .iter()
            .map(|s| -&self.basis_bracket(s[0], s[1])[k])
            .collect();
        Form::from_coeffs(self.dim, 2, coeffs)
    }

    /// Lower central series `g ⊇ [g,g] ⊇ [g,[g,g]] ⊇ ...`.
    pub fn lower_central_series(&self) -> CentralSeries {
        let n = self.dim;
        let mut chain = vec![Subspace::full(n)];
        loop {
            let last = chain.last().expect("nonempty chain");
            let mut vs = Vec::new();
            for x in 0..n {
                for y in last.vectors() {
                    let b = self.bracket(&unit_vec(n, x), &y);
                    if !is_zero_vec(&b) {
                        vs.push(b);
                    }
                }
            }
            let next = Subspace::span(n, &vs);
            if next.dim() == 0 {
                let step = chain.len();
                chain.push(next);
                return CentralSeries { chain, nilpotency_step: Some(step) };
            }
            if next.dim() == last.dim() {
                chain.push(next);
                return CentralSeries { chain, nilpotency_step: None };
            }
            chain.push(next);
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().nilpotency_step.is_some()
    }

    /// Center of the algebra.
    pub fn center(&self) -> Subspace {
        let n = self.dim;
        // x is central iff [e_i, x] = 0 for all i
        let mut m = Matrix::zeros(n * n, n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    m.set(i * n + k, j, self.basis_bracket(i, j)[k].clone());
                }
            }
        }
        crate::linalg::kernel(&m)
    }

    /// The algebra in the new coframe `f^i = Σ_j p[i][j] e^j`.
    pub fn change_coframe(&self, p: &Matrix) -> Result<LieAlgebra> {
        let n = self.dim;
        if p.rows() != n || p.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: p.rows() });
        }
        let pinv = p.inverse().ok_or_else(|| Error::Degenerate("coframe change is singular".into()))?;
        // dual frame f_a = Σ_j pinv[j][a] e_j
        let frame: Vec<Vector> = (0..n).map(|a| pinv.col(a)).collect();
        let mut brackets = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let v = p.mul_vec(&self.bracket(&frame[a], &frame[b]));
                if !is_zero_vec(&v) {
                    brackets.push(((a, b), v));
                }
            }
        }
        LieAlgebra::from_brackets(&self.name, n, &brackets)
    }

    /// Same structure constants (names are ignored).
    pub fn same_structure(&self, other: &LieAlgebra) -> bool {
        self.dim == other.dim && self.table == other.table
    }

    /// Canonical tuple text, e.g. `0,0,0,12`.
    pub fn to_salamon(&self) -> String {
        (0..self.dim).map(|k| entry_text(&self.d_of_coframe(k))).collect::<Vec<_>>().join(",")
    }
}

fn atom_text(i: usize) -> String {
    if i < 9 {
        format!("{}", i + 1)
    } else {
        format!("[{}]", i + 1)
    }
}

fn entry_text(form: &Form) -> String {
    let terms = form.terms();
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (s, c)) in terms.iter().enumerate() {
        let r = c.re.clone();
        let neg = r.is_negative();
        let mag = r.abs();
        if neg {
            out.push('-');
        } else if k > 0 {
            out.push('+');
        }
        if !mag.is_one() {
            if mag.denom().is_one() {
                out.push_str(&format!("{} ", mag.numer()));
            } else {
                out.push_str(&format!("{}/{} ", mag.numer(), mag.denom()));
            }
        }
        out.push_str(&atom_text(s[0]));
        out.push_str(&atom_text(s[1]));
    }
    out
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra({})", self.to_salamon())
    }
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_salamon())
    }
}

#[derive(Clone, Debug)]
pub struct CentralSeries {
    pub chain: Vec<Subspace>,
    /// `Some(s)` when the algebra is `s`-step nilpotent.
    pub nilpotency_step: Option<usize>,
}

/// Parses a structure-equation tuple, e.g. `0,0,12,13`, `(0,0,0,0,0,12+34)`,
/// `0,0,0,-12,31+42,41-32`, `0,0,1/2 12`, or `0,..,0,1[10]` for indices past 9.
pub fn parse_salamon(text: &str) -> Result<LieAlgebra> {
    let alg = parse_salamon_unchecked(text)?;
    if let Some(&t) = alg.check_jacobi().first() {
        return Err(Error::NotALieAlgebra(t));
    }
    Ok(alg)
}

/// Parses without enforcing the Jacobi identity.
pub fn parse_salamon_unchecked(text: &str) -> Result<LieAlgebra> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0 };
    let entries = p.tuple()?;
    let n = entries.len();
    let mut brackets = Vec::new();
    for (k, terms) in entries.iter().enumerate() {
        for (coef, a, b, pos) in terms {
            for idx in [a, b] {
                if *idx == 0 || *idx > n {
                    return Err(Error::Parse {
                        pos: *pos,
                        msg: format!("index {idx} out of range for dimension {n}"),
                    });
                }
            }
            if a == b {
                return Err(Error::Parse { pos: *pos, msg: format!("repeated index in e^{a}{b}") });
            }
            // de^k ∋ c e^{ab}  =>  [e_a, e_b]_k = -c
            let mut v = zero_vec(n);
            v[k] = G::from_rational(-coef.clone());
            brackets.push(((a - 1, b - 1), v));
        }
    }
    LieAlgebra::from_brackets_unchecked(text.trim(), n, &brackets).map(|alg| {
        let canonical = alg.to_salamon();
        alg.with_name(&canonical)
    })
}

type Term = (Rational, usize, usize, usize);

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn tuple(&mut self) -> Result<Vec<Vec<Term>>> {
        self.skip_ws();
        let paren = self.peek() == Some('(');
        if paren {
            self.pos += 1;
        }
        let mut entries = vec![self.entry()?];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(',') => {
                    self.pos += 1;
                    entries.push(self.entry()?);
                }
                Some(')') if paren => {
                    self.pos += 1;
                    self.skip_ws();
                    if self.peek().is_some() {
                        return self.err("trailing characters after ')'");
                    }
                    return Ok(entries);
                }
                None if !paren => return Ok(entries),
                None => return self.err("missing ')'"),
                Some(c) => return self.err(format!("unexpected '{c}'")),
            }
        }
    }

    fn entry(&mut self) -> Result<Vec<Term>> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('0') {
            self.pos += 1;
            self.skip_ws();
            if matches!(self.peek(), Some(',') | Some(')') | None) {
                return Ok(vec![]);
            }
            self.pos = start;
        }
        let mut terms = Vec::new();
        let mut sign = Rational::one();
        self.skip_ws();
        match self.peek() {
            Some('-') => {
                sign = -sign;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        loop {
            terms.push(self.term(sign.clone())?);
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    sign = Rational::one();
                    self.pos += 1;
                }
                Some('-') => {
                    sign = -Rational::one();
                    self.pos += 1;
                }
                _ => return Ok(terms),
            }
        }
    }

    fn term(&mut self, sign: Rational) -> Result<Term> {
        self.skip_ws();
        let start = self.pos;
        // A leading numeric token is a coefficient when followed by '*' or by
        // whitespace and another atom; otherwise it is the index pair itself.
        let mut end = self.pos;
        while end < self.chars.len() && (self.chars[end].is_ascii_digit() || self.chars[end] == '/') {
            end += 1;
        }
        let token: String = self.chars[self.pos..end].iter().collect();
        let mut after = end;
        let had_ws = after < self.chars.len() && self.chars[after].is_whitespace();
        while after < self.chars.len() && self.chars[after].is_whitespace() {
            after += 1;
        }
        let next = self.chars.get(after).copied();
        let is_coef = !token.is_empty()
            && (next == Some('*')
                || (had_ws && next.is_some_and(|c| c.is_ascii_digit() || c == '['))
                || token.contains('/'));
        let mut coef = sign;
        if is_coef {
            coef *= parse_rational(&token).map_err(|_| Error::Parse {
                pos: start,
                msg: format!("bad coefficient '{token}'"),
            })?;
            self.pos = after;
            if self.peek() == Some('*') {
                self.pos += 1;
                self.skip_ws();
            }
        }
        let a = self.atom()?;
        let b = self.atom()?;
        Ok((coef, a, b, start))
    }

    fn atom(&mut self) -> Result<usize> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                self.pos += 1;
                Ok(c.to_digit(10).expect("digit") as usize)
            }
            Some('[') => {
                self.pos += 1;
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                if self.peek() != Some(']') || digits.is_empty() {
                    return self.err("expected bracketed index like [10]");
                }
                self.pos += 1;
                Ok(digits.parse().expect("digits"))
            }
            Some(c) => self.err(format!("expected index, found '{c}'")),
            None => self.err("expected index, found end of input"),
        }
    }
}

/// One algebra per non-empty line; `#` starts a comment; an optional `name:` prefix.
pub fn parse_algebra_file(text: &str) -> Result<Vec<LieAlgebra>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (name, tuple) = match line.split_once(':') {
            Some((n, t)) => (Some(n.trim()), t),
            None => (None, line),
        };
        let alg = parse_salamon(tuple).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse { pos, msg: format!("line {}: {msg}", lineno + 1) },
            other => other,
        })?;
        out.push(match name {
            Some(n) => alg.with_name(n),
            None => alg,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn neg_unit(n: usize, k: usize) -> Vector {
        let mut v = zero_vec(n);
        v[k] = G::from_int(-1);
        v
    }

    #[test]
    fn heisenberg_plus_line_brackets() {
        let g = parse_salamon("0,0,0,12").unwrap();
        assert_eq!(g.dim(), 4);
        assert_eq!(g.basis_bracket(0, 1), &neg_unit(4, 3));
        assert_eq!(g.basis_bracket(1, 0), &unit_vec(4, 3));
        for (i, j) in [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            assert!(is_zero_vec(g.basis_bracket(i, j)));
        }
    }

    #[test]
    fn five_dim_heisenberg_plus_line() {
        let g = parse_salamon("0,0,0,0,0,12+34").unwrap();
        assert_eq!(g.basis_bracket(0, 1), &neg_unit(6, 5));
        assert_eq!(g.basis_bracket(2, 3), &neg_unit(6, 5));
    }

    #[test]
    fn abelian_and_parenthesized() {
        let g = parse_salamon("(0, 0, 0, 0)").unwrap();
        assert!(g.is_abelian());
        assert_eq!(g.to_salamon(), "0,0,0,0");
    }

    #[test]
    fn negative_terms_and_rebased_presentation() {
        let g = parse_salamon("0,0,0,-12,31+42,41-32").unwrap();
        // de^4 = -e^12  =>  [e1, e2] = e4
        assert_eq!(g.basis_bracket(0, 1), &unit_vec(6, 3));
        // de^5 = e^31 + e^42  =>  [e3, e1] = -e5
        assert_eq!(g.basis_bracket(2, 0), &neg_unit(6, 4));
    }

    #[test]
    fn coefficients_and_wide_indices() {
        let g = parse_salamon("0,0,1/2 12").unwrap();
        let mut v = zero_vec(3);
        v[2] = G::frac(-1, 2);
        assert_eq!(g.basis_bracket(0, 1), &v);
        let g = parse_salamon("0,0,2*12").unwrap();
        assert_eq!(g.basis_bracket(0, 1)[2], G::from_int(-2));

        let mut entries = vec!["0".to_string(); 11];
        entries[10] = "1[10]".into();
        let g = parse_salamon(&entries.join(",")).unwrap();
        assert_eq!(g.basis_bracket(0, 9)[10], G::from_int(-1));
        entries[10] = "0".into();
        entries[9] = "12+3[9]".into();
        let g = parse_salamon(&entries.join(",")).unwrap();
        assert_eq!(g.basis_bracket(2, 8)[9], G::from_int(-1));
        assert_eq!(g.to_salamon().split(',').nth(9).unwrap(), "12+39");
    }

    #[test]
    fn parse_errors() {
        assert!(parse_salamon("0,0,12").is_ok());
        assert!(matches!(parse_salamon("0,0,15"), Err(Error::Parse { .. })));
        assert!(matches!(parse_salamon("0,0,1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_salamon("0,0,x"), Err(Error::Parse { .. })));
        assert!(matches!(parse_salamon("(0,0"), Err(Error::Parse { .. })));
        assert!(matches!(parse_salamon("0,0,11"), Err(Error::Parse { .. })));
    }

    #[test]
    fn jacobi_violation_is_reported() {
        let v = |k: usize| unit_vec(3, k);
        let alg = LieAlgebra::from_brackets_unchecked(
            "bad",
            3,
            &[((0, 1), v(2)), ((0, 2), v(0))],
        )
        .unwrap();
        // [[e1,e2],e3] = [e3,e3] = 0; [[e2,e3],e1] = 0; [[e3,e1],e2] = [-e1,e2] = -e3
        assert_eq!(alg.check_jacobi(), vec![(1, 2, 3)]);
        assert!(matches!(
            LieAlgebra::from_brackets("bad", 3, &[((0, 1), v(2)), ((0, 2), v(0))]),
            Err(Error::NotALieAlgebra((1, 2, 3)))
        ));
        assert!(parse_salamon_unchecked("0,12,13").is_ok());
    }

    #[test]
    fn central_series_steps() {
        let s = parse_salamon("0,0,0,12").unwrap().lower_central_series();
        assert_eq!(s.nilpotency_step, Some(2));
        assert_eq!(s.chain[1], Subspace::span(4, &[unit_vec(4, 3)]));
        assert_eq!(parse_salamon("0,0,0,12,14+23,13+42").unwrap().lower_central_series().nilpotency_step, Some(3));
        assert_eq!(LieAlgebra::abelian(3).lower_central_series().nilpotency_step, Some(1));
        // a non-nilpotent algebra: [e1, e2] = e2
        let aff = LieAlgebra::from_brackets("aff", 2, &[((0, 1), unit_vec(2, 1))]).unwrap();
        assert_eq!(aff.lower_central_series().nilpotency_step, None);
    }

    #[test]
    fn algebra_file_format() {
        let text = "# corpus\nkodaira: 0,0,0,12  # trailing\n\n(0,0,12,13)\n";
        let algs = parse_algebra_file(text).unwrap();
        assert_eq!(algs.len(), 2);
        assert_eq!(algs[0].name(), "kodaira");
        assert_eq!(algs[1].to_salamon(), "0,0,12,13");
        assert!(parse_algebra_file("0,0,19").is_err());
    }

    #[test]
    fn coframe_change_matches_rebased_tuple() {
        let orig = parse_salamon("0,0,0,12,14+23,13+42").unwrap();
        let rebased = parse_salamon("0,0,0,-12,31+42,41-32").unwrap();
        // f^4 = -e^4, f^5 = -e^6, f^6 = e^5
        let mut p = Matrix::identity(6);
        p.set(3, 3, G::from_int(-1));
        p.set(4, 4, G::zero());
        p.set(4, 5, G::from_int(-1));
        p.set(5, 5, G::zero());
        p.set(5, 4, G::from_int(1));
        assert!(orig.change_coframe(&p).unwrap().same_structure(&rebased));
        assert!(!orig.same_structure(&rebased));
    }
}
