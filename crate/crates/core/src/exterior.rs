//! Exterior algebra over a finite basis. Degree-`k` elements are stored densely
//! over the sorted `k`-subsets of `{0, .., dim-1}` in lexicographic order.
//!
//! The same type serves forms on `g` (basis `e^i`), polyvectors on `g_C`, and
//! multivectors on the eigenspace `l`; only the meaning of the basis changes.

use std::fmt;

use num_traits::{One, Zero};

use crate::linalg::{Matrix, Vector};
use crate::scalar::GaussianRational as G;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All sorted `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::with_capacity(binomial(n, k));
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Lexicographic rank of a sorted subset among all `subset.len()`-subsets of `0..n`.
pub fn subset_rank(n: usize, subset: &[usize]) -> usize {
    let k = subset.len();
    let mut rank = 0;
    let mut prev = 0;
    for (pos, &s) in subset.iter().enumerate() {
        for skipped in prev..s {
            rank += binomial(n - skipped - 1, k - pos - 1);
        }
        prev = s + 1;
    }
    rank
}

/// Sorts `indices` and returns the permutation sign, or `None` on a repeated index.
pub fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut v = indices.to_vec();
    let mut sign = 1;
    // insertion sort counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// Homogeneous element of `Λ^degree` over a `dim`-dimensional space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExteriorElement {
    dim: usize,
    degree: usize,
    coeffs: Vec<G>,
}

/// Differential form on `g` in the `e^i` basis.
pub type Form = ExteriorElement;
/// Element of `Λ^k l` in the canonical eigenspace basis.
pub type Multivector = ExteriorElement;

impl ExteriorElement {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Self { dim, degree, coeffs: vec![G::zero(); binomial(dim, degree)] }
    }

    pub fn scalar(dim: usize, c: G) -> Self {
        Self { dim, degree: 0, coeffs: vec![c] }
    }

    pub fn from_coeffs(dim: usize, degree: usize, coeffs: Vector) -> Self {
        assert_eq!(coeffs.len(), binomial(dim, degree), "coefficient count mismatch");
        Self { dim, degree, coeffs }
    }

    /// Degree-one element from a coordinate vector.
    pub fn from_vector(v: &[G]) -> Self {
        Self { dim: v.len(), degree: 1, coeffs: v.to_vec() }
    }

    /// Monomial `c * b_{i1} ^ .. ^ b_{ik}` for arbitrary (possibly unsorted) indices.
    pub fn monomial(dim: usize, indices: &[usize], c: G) -> Self {
        let mut out = Self::zero(dim, indices.len());
        if let Some((sorted, sign)) = sort_with_sign(indices) {
            assert!(sorted.iter().all(|&i| i < dim), "basis index out of range");
            let k = subset_rank(dim, &sorted);
            out.coeffs[k] = if sign < 0 { -c } else { c };
        }
        out
    }

    pub fn basis_element(dim: usize, indices: &[usize]) -> Self {
        Self::monomial(dim, indices, G::one())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[G] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vector {
        self.coeffs
    }

    pub fn coeff(&self, sorted: &[usize]) -> &G {
        &self.coeffs[subset_rank(self.dim, sorted)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonzero terms as `(sorted indices, coefficient)`.
    pub fn terms(&self) -> Vec<(Vec<usize>, G)> {
        subsets(self.dim, self.degree)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(s, c)| (s, c.clone()))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Self { dim: self.dim, degree: self.degree, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_same(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Self { dim: self.dim, degree: self.degree, coeffs }
    }

    pub fn scale(&self, c: &G) -> Self {
        Self { dim: self.dim, degree: self.degree, coeffs: self.coeffs.iter().map(|x| c * x).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&G::from_int(-1))
    }

    pub fn conj(&self) -> Self {
        Self { dim: self.dim, degree: self.degree, coeffs: self.coeffs.iter().map(G::conj).collect() }
    }

    fn check_same(&self, other: &Self) {
        assert_eq!((self.dim, self.degree), (other.dim, other.degree), "exterior shape mismatch");
    }

    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "wedge of elements over different spaces");
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        if out.coeffs.is_empty() {
            return out;
        }
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                if b.iter().any(|x| a.contains(x)) {
                    continue;
                }
                let mut idx = a.clone();
                idx.extend(&b);
                let (sorted, sign) = sort_with_sign(&idx).expect("disjoint indices");
                let k = subset_rank(self.dim, &sorted);
                let term = &ca * &cb;
                if sign < 0 {
                    out.coeffs[k] -= &term;
                } else {
                    out.coeffs[k] += &term;
                }
            }
        }
        out
    }

    /// Contraction of a dual vector into the first slot:
    /// `ι_x (b_{i1} ^ .. ^ b_{ik}) = Σ_j (-1)^j x_{ij} b_{i1} ^ .. ^ (omit ij) ^ .. ^ b_{ik}`.
    pub fn contract(&self, x: &[G]) -> Self {
        assert_eq!(x.len(), self.dim);
        assert!(self.degree >= 1, "contraction needs degree >= 1");
        let mut out = Self::zero(self.dim, self.degree - 1);
        for (s, c) in self.terms() {
            for (j, &idx) in s.iter().enumerate() {
                if x[idx].is_zero() {
                    continue;
                }
                let rest: Vec<usize> = s.iter().enumerate().filter(|&(m, _)| m != j).map(|(_, &v)| v).collect();
                let k = subset_rank(self.dim, &rest);
                let term = &c * &x[idx];
                if j % 2 == 1 {
                    out.coeffs[k] -= &term;
                } else {
                    out.coeffs[k] += &term;
                }
            }
        }
        out
    }

    /// Image under the induced map `Λ^k m`, where column `i` of `m` is the image of basis vector `i`.
    pub fn map_linear(&self, m: &Matrix) -> Self {
        assert_eq!(m.cols(), self.dim);
        let new_dim = m.rows();
        let images: Vec<Self> = (0..self.dim).map(|i| Self::from_vector(&m.col(i))).collect();
        let mut out = Self::zero(new_dim, self.degree);
        for (s, c) in self.terms() {
            let mut w = Self::scalar(new_dim, c);
            for &i in &s {
                w = w.wedge(&images[i]);
            }
            out = out.add(&w);
        }
        out
    }

    /// Evaluates a degree-`k` element on `k` dual vectors with the determinant
    /// convention `b^{ij}(b_i, b_j) = 1`.
    pub fn evaluate(&self, args: &[Vector]) -> G {
        assert_eq!(args.len(), self.degree);
        let mut total = G::zero();
        for (s, c) in self.terms() {
            let mut m = Matrix::zeros(self.degree, self.degree);
            for (r, arg) in args.iter().enumerate() {
                for (col, &idx) in s.iter().enumerate() {
                    m.set(r, col, arg[idx].clone());
                }
            }
            total += &(&c * &determinant(&m));
        }
        total
    }
}

/// Extends a degree-`+1` odd derivation from its values on degree-1 basis elements:
/// `D(b_{i1} ^ .. ^ b_{ik}) = Σ_t (-1)^t b_{i1} ^ .. ^ D(b_{it}) ^ .. ^ b_{ik}`.
pub fn extend_derivation(images: &[ExteriorElement], el: &ExteriorElement) -> ExteriorElement {
    let n = el.dim();
    let k = el.degree();
    let out_degree = images.first().map_or(2, |x| x.degree()) + k - 1;
    let mut out = ExteriorElement::zero(n, out_degree);
    if k == 0 {
        return out;
    }
    for (idx, c) in el.terms() {
        for t in 0..k {
            if images[idx[t]].is_zero() {
                continue;
            }
            let left = ExteriorElement::monomial(n, &idx[..t], c.clone());
            let right = ExteriorElement::basis_element(n, &idx[t + 1..]);
            let term = left.wedge(&images[idx[t]]).wedge(&right);
            out = if t % 2 == 1 { out.sub(&term) } else { out.add(&term) };
        }
    }
    out
}

/// Extends a bracket on degree-1 elements to the exterior algebra:
/// `⟦x_1..x_p, y_1..y_q⟧ = Σ (-1)^{i+j} ⟦x_i, y_j⟧ ^ x_1..(omit x_i)..x_p ^ y_1..(omit y_j)..y_q`.
/// Brackets with scalars vanish.
pub fn schouten_extension(
    x: &ExteriorElement,
    y: &ExteriorElement,
    bracket: &dyn Fn(usize, usize) -> ExteriorElement,
) -> ExteriorElement {
    let n = x.dim();
    let (p, q) = (x.degree(), y.degree());
    if p == 0 || q == 0 {
        return ExteriorElement::zero(n, (p + q).saturating_sub(1));
    }
    let mut out = ExteriorElement::zero(n, p + q - 1);
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            let c = &ca * &cb;
            for i in 0..p {
                for j in 0..q {
                    let br = bracket(a[i], b[j]);
                    if br.is_zero() {
                        continue;
                    }
                    let mut rest: Vec<usize> = a.iter().enumerate().filter(|&(m, _)| m != i).map(|(_, &v)| v).collect();
                    rest.extend(b.iter().enumerate().filter(|&(m, _)| m != j).map(|(_, &v)| v));
                    let tail = match sort_with_sign(&rest) {
                        Some((sorted, sign)) => ExteriorElement::monomial(n, &sorted, if sign < 0 { -&c } else { c.clone() }),
                        None => continue,
                    };
                    let term = br.wedge(&tail);
                    out = if (i + j) % 2 == 1 { out.sub(&term) } else { out.add(&term) };
                }
            }
        }
    }
    out
}

/// Determinant by exact elimination.
pub fn determinant(m: &Matrix) -> G {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut a = m.clone();
    let mut det = G::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
            return G::zero();
        };
        if p != c {
            for j in 0..n {
                let tmp = a.get(p, j).clone();
                a.set(p, j, a.get(c, j).clone());
                a.set(c, j, tmp);
            }
            det = -det;
        }
        let piv = a.get(c, c).clone();
        det = &det * &piv;
        let inv = piv.inv().expect("nonzero pivot");
        for i in c + 1..n {
            let f = a.get(i, c) * &inv;
            if f.is_zero() {
                continue;
            }
            for j in c..n {
                let v = a.get(i, j) - &(&f * a.get(c, j));
                a.set(i, j, v);
            }
        }
    }
    det
}

/// Renders terms using `name(i)` for basis symbols, joined with `^`.
pub fn render(el: &ExteriorElement, name: impl Fn(usize) -> String) -> String {
    let terms = el.terms();
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (s, c)) in terms.iter().enumerate() {
        let mono: Vec<String> = s.iter().map(|&i| name(i)).collect();
        let mono = if mono.is_empty() { "1".to_string() } else { mono.join("^") };
        let zero = num_traits::Zero::zero();
        let (neg, mag) = if (c.im.is_zero() && c.re < zero) || (c.re.is_zero() && c.im < zero) {
            (true, -c)
        } else {
            (false, c.clone())
        };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag.is_one() {
            out.push_str(&mono);
        } else if !mag.re.is_zero() && !mag.im.is_zero() {
            out.push_str(&format!("({mag})*{mono}"));
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    out
}

impl fmt::Debug for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Λ^{}[{}]", self.degree, render(self, |i| format!("b{}", i + 1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unit_vec;

    #[test]
    fn ranks_match_enumeration() {
        for n in 0..7 {
            for k in 0..=n {
                for (r, s) in subsets(n, k).iter().enumerate() {
                    assert_eq!(subset_rank(n, s), r);
                }
                assert_eq!(subsets(n, k).len(), binomial(n, k));
            }
        }
    }

    #[test]
    fn wedge_signs() {
        let e = |i| ExteriorElement::basis_element(4, &[i]);
        assert_eq!(e(1).wedge(&e(0)), ExteriorElement::basis_element(4, &[0, 1]).neg());
        assert!(e(2).wedge(&e(2)).is_zero());
        let e12 = e(0).wedge(&e(1));
        let e34 = e(2).wedge(&e(3));
        assert_eq!(e12.wedge(&e34), e34.wedge(&e12));
    }

    #[test]
    fn contraction_convention() {
        let e12 = ExteriorElement::basis_element(4, &[0, 1]);
        assert_eq!(e12.contract(&unit_vec(4, 0)), ExteriorElement::basis_element(4, &[1]));
        assert_eq!(e12.contract(&unit_vec(4, 1)), ExteriorElement::basis_element(4, &[0]).neg());
        assert!(e12.contract(&unit_vec(4, 2)).is_zero());
    }

    #[test]
    fn evaluation_is_determinant() {
        let e12 = ExteriorElement::basis_element(3, &[0, 1]);
        assert_eq!(e12.evaluate(&[unit_vec(3, 0), unit_vec(3, 1)]), G::one());
        assert_eq!(e12.evaluate(&[unit_vec(3, 1), unit_vec(3, 0)]), G::from_int(-1));
    }
}
