//! The double `g ⊕ g*` with its symmetric pairing and invariant Courant bracket.
//!
//! Elements are length-`2n` vectors: vector part first, form part second.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{is_zero_vec, unit_vec, zero_vec, Matrix, Subspace, Vector};
use crate::scalar::GaussianRational as G;

pub type DoubleElement = Vector;

#[derive(Clone, Debug)]
pub struct Double {
    alg: Arc<LieAlgebra>,
}

impl Double {
    pub fn new(alg: LieAlgebra) -> Self {
        Self { alg: Arc::new(alg) }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.alg
    }

    /// `n = dim g`; the double has dimension `2n`.
    pub fn n(&self) -> usize {
        self.alg.dim()
    }

    pub fn vector(&self, i: usize) -> DoubleElement {
        unit_vec(2 * self.n(), i)
    }

    pub fn covector(&self, i: usize) -> DoubleElement {
        unit_vec(2 * self.n(), self.n() + i)
    }

    pub fn embed(&self, x: &[G], alpha: &[G]) -> DoubleElement {
        x.iter().chain(alpha).cloned().collect()
    }

    /// Standard basis `e_1..e_n, e^1..e^n`.
    pub fn basis(&self) -> Vec<DoubleElement> {
        (0..2 * self.n()).map(|i| unit_vec(2 * self.n(), i)).collect()
    }

    /// `⟨X+α, Y+β⟩ = ½(β(X) + α(Y))`.
    pub fn pairing(&self, u: &[G], v: &[G]) -> G {
        let n = self.n();
        let mut s = G::zero();
        for i in 0..n {
            if !u[i].is_zero() && !v[n + i].is_zero() {
                s += &u[i] * &v[n + i];
            }
            if !u[n + i].is_zero() && !v[i].is_zero() {
                s += &u[n + i] * &v[i];
            }
        }
        &s * &G::frac(1, 2)
    }

    /// `⟦X+α, Y+β⟧ = [X,Y] + ι_X dβ − ι_Y dα`.
    pub fn bracket(&self, u: &[G], v: &[G]) -> DoubleElement {
        let n = self.n();
        let (x, alpha) = u.split_at(n);
        let (y, beta) = v.split_at(n);
        let mut out = self.alg.bracket(x, y);
        // (ι_X dβ)(e_z) = dβ(X, e_z) = −β([X, e_z])
        let mut form = zero_vec(n);
        for z in 0..n {
            let mut acc = G::zero();
            for (w, xw) in x.iter().enumerate() {
                if xw.is_zero() {
                    continue;
                }
                let b = self.alg.basis_bracket(w, z);
                for k in 0..n {
                    if !b[k].is_zero() && !beta[k].is_zero() {
                        acc -= &(xw * &b[k]) * &beta[k];
                    }
                }
            }
            for (w, yw) in y.iter().enumerate() {
                if yw.is_zero() {
                    continue;
                }
                let b = self.alg.basis_bracket(w, z);
                for k in 0..n {
                    if !b[k].is_zero() && !alpha[k].is_zero() {
                        acc += &(yw * &b[k]) * &alpha[k];
                    }
                }
            }
            form[z] = acc;
        }
        out.extend(form);
        out
    }

    /// Gram matrix `⟨u_i, v_j⟩`.
    pub fn pairing_matrix(&self, us: &[Vector], vs: &[Vector]) -> Matrix {
        let mut m = Matrix::zeros(us.len(), vs.len());
        for (i, u) in us.iter().enumerate() {
            for (j, v) in vs.iter().enumerate() {
                m.set(i, j, self.pairing(u, v));
            }
        }
        m
    }

    /// `S^⊥` with respect to the pairing.
    pub fn orthogonal(&self, s: &Subspace) -> Subspace {
        let rows: Vec<Vector> = s
            .vectors()
            .iter()
            .map(|u| (0..2 * self.n()).map(|j| self.pairing(u, &self.vector_or_covector(j))).collect())
            .collect();
        crate::linalg::kernel(&Matrix::from_rows(2 * self.n(), &rows))
    }

    fn vector_or_covector(&self, j: usize) -> Vector {
        unit_vec(2 * self.n(), j)
    }

    pub fn subspace(&self, vectors: &[Vector]) -> DoubleSubspace {
        DoubleSubspace::new(self.clone(), Subspace::span(2 * self.n(), vectors))
    }

    pub fn wrap(&self, s: Subspace) -> DoubleSubspace {
        DoubleSubspace::new(self.clone(), s)
    }

    /// The subalgebra `g`.
    pub fn g(&self) -> DoubleSubspace {
        self.subspace(&(0..self.n()).map(|i| self.vector(i)).collect::<Vec<_>>())
    }

    /// The abelian ideal `g*`.
    pub fn g_dual(&self) -> DoubleSubspace {
        self.subspace(&(0..self.n()).map(|i| self.covector(i)).collect::<Vec<_>>())
    }

    /// Jacobi cyclic sum on basis triples of a closed subspace; `Ok(None)` when it vanishes.
    pub fn jacobi_on_isotropic(&self, s: &DoubleSubspace) -> Result<Option<(usize, usize, usize)>> {
        if let Some((a, b)) = s.subalgebra_violation() {
            return Err(Error::Precondition(format!(
                "subspace is not closed under the bracket: basis pair ({}, {})",
                a + 1,
                b + 1
            )));
        }
        let vs = s.subspace().vectors();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                for k in j + 1..vs.len() {
                    let a = self.bracket(&self.bracket(&vs[i], &vs[j]), &vs[k]);
                    let b = self.bracket(&self.bracket(&vs[j], &vs[k]), &vs[i]);
                    let c = self.bracket(&self.bracket(&vs[k], &vs[i]), &vs[j]);
                    let sum: Vector = (0..a.len()).map(|t| &(&a[t] + &b[t]) + &c[t]).collect();
                    if !is_zero_vec(&sum) {
                        return Ok(Some((i + 1, j + 1, k + 1)));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Matrix of `A → K*`, `a ↦ 2⟨a, ·⟩|_K` in the bases of `A` and the dual basis of `K`;
    /// the factor 2 makes `(g, g*)` give the identity.
    pub fn dual_identification(&self, k: &DoubleSubspace, a: &DoubleSubspace) -> Result<Matrix> {
        let kv = k.subspace().vectors();
        let av = a.subspace().vectors();
        if kv.len() != av.len() {
            return Err(Error::DimensionMismatch { expected: kv.len(), found: av.len() });
        }
        let m = self.pairing_matrix(&kv, &av).scale(&G::from_int(2));
        if m.inverse().is_none() {
            return Err(Error::Degenerate("pairing between the subspaces is degenerate".into()));
        }
        Ok(m)
    }
}

#[derive(Default)]
struct PredicateCache {
    isotropic: OnceLock<bool>,
    subalgebra: OnceLock<Option<(usize, usize)>>,
    ideal: OnceLock<Option<(usize, usize)>>,
    abelian: OnceLock<Option<(usize, usize)>>,
}

/// A subspace of the (complexified) double with lazily cached predicates.
pub struct DoubleSubspace {
    double: Double,
    space: Subspace,
    cache: PredicateCache,
}

impl Clone for DoubleSubspace {
    fn clone(&self) -> Self {
        DoubleSubspace::new(self.double.clone(), self.space.clone())
    }
}

impl PartialEq for DoubleSubspace {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space
    }
}

impl fmt::Debug for DoubleSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.space.vectors().iter().map(|v| crate::expr::format_double_element(v)).collect();
        write!(f, "{{{}}}", v.join(", "))
    }
}

impl DoubleSubspace {
    pub fn new(double: Double, space: Subspace) -> Self {
        assert_eq!(space.ambient(), 2 * double.n(), "ambient of a double subspace is 2n");
        Self { double, space, cache: PredicateCache::default() }
    }

    pub fn double(&self) -> &Double {
        &self.double
    }

    pub fn subspace(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_real(&self) -> bool {
        self.space.is_real()
    }

    pub fn contains(&self, v: &[G]) -> bool {
        self.space.contains(v)
    }

    pub fn conjugate(&self) -> DoubleSubspace {
        self.double.wrap(self.space.conjugate())
    }

    fn compute_isotropic(&self) -> bool {
        let vs = self.space.vectors();
        (0..vs.len()).all(|i| (i..vs.len()).all(|j| self.double.pairing(&vs[i], &vs[j]).is_zero()))
    }

    fn compute_subalgebra(&self) -> Option<(usize, usize)> {
        let vs = self.space.vectors();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                if !self.space.contains(&self.double.bracket(&vs[i], &vs[j])) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// First `(basis index, ambient basis index)` whose bracket leaves the subspace.
    fn compute_ideal(&self) -> Option<(usize, usize)> {
        let vs = self.space.vectors();
        let ambient = self.double.basis();
        for (i, v) in vs.iter().enumerate() {
            for (j, w) in ambient.iter().enumerate() {
                if !self.space.contains(&self.double.bracket(v, w)) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    fn compute_abelian(&self) -> Option<(usize, usize)> {
        let vs = self.space.vectors();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                if !is_zero_vec(&self.double.bracket(&vs[i], &vs[j])) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_isotropic(&self) -> bool {
        *self.cache.isotropic.get_or_init(|| self.compute_isotropic())
    }

    pub fn is_max_isotropic(&self) -> bool {
        self.dim() == self.double.n() && self.is_isotropic()
    }

    pub fn subalgebra_violation(&self) -> Option<(usize, usize)> {
        *self.cache.subalgebra.get_or_init(|| self.compute_subalgebra())
    }

    pub fn is_subalgebra(&self) -> bool {
        self.subalgebra_violation().is_none()
    }

    pub fn ideal_violation(&self) -> Option<(usize, usize)> {
        *self.cache.ideal.get_or_init(|| self.compute_ideal())
    }

    pub fn is_ideal(&self) -> bool {
        self.ideal_violation().is_none()
    }

    pub fn abelian_violation(&self) -> Option<(usize, usize)> {
        *self.cache.abelian.get_or_init(|| self.compute_abelian())
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian_violation().is_none()
    }

    pub fn predicates(&self) -> Predicates {
        Predicates {
            isotropic: self.is_isotropic(),
            max_isotropic: self.is_max_isotropic(),
            subalgebra: self.is_subalgebra(),
            ideal: self.is_ideal(),
            abelian: self.is_abelian(),
        }
    }

    /// Recomputes every predicate, bypassing the cache.
    pub fn predicates_uncached(&self) -> Predicates {
        let iso = self.compute_isotropic();
        Predicates {
            isotropic: iso,
            max_isotropic: iso && self.dim() == self.double.n(),
            subalgebra: self.compute_subalgebra().is_none(),
            ideal: self.compute_ideal().is_none(),
            abelian: self.compute_abelian().is_none(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Predicates {
    pub isotropic: bool,
    pub max_isotropic: bool,
    pub subalgebra: bool,
    pub ideal: bool,
    pub abelian: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_double_element;
    use crate::lie::parse_salamon;

    fn dbl(s: &str) -> Double {
        Double::new(parse_salamon(s).unwrap())
    }

    fn el(d: &Double, s: &str) -> Vector {
        parse_double_element(s, d.n()).unwrap()
    }

    #[test]
    fn pairing_values() {
        let d = dbl("0,0,0,12");
        assert_eq!(d.pairing(&el(&d, "e1"), &el(&d, "E1")), G::frac(1, 2));
        assert_eq!(d.pairing(&el(&d, "e1 - i*e2"), &el(&d, "E1 + i*E2")), G::from_int(1));
        assert_eq!(d.pairing(&el(&d, "e4 + i*E3"), &el(&d, "e4 - i*E3")), G::zero());
    }

    #[test]
    fn courant_brackets() {
        let d = dbl("0,0,0,12");
        assert_eq!(d.bracket(&el(&d, "e1"), &el(&d, "E4")), el(&d, "E2"));
        assert_eq!(d.bracket(&el(&d, "e2"), &el(&d, "E4")), el(&d, "-E1"));
        assert_eq!(d.bracket(&el(&d, "E4"), &el(&d, "e1")), el(&d, "-E2"));
        assert!(is_zero_vec(&d.bracket(&el(&d, "E1"), &el(&d, "E2"))));
        assert_eq!(d.bracket(&el(&d, "e1 - i*e2"), &el(&d, "e3 - i*E4")), el(&d, "E1 - i*E2"));
        assert_eq!(d.bracket(&el(&d, "e1"), &el(&d, "e2")), el(&d, "-e4"));
    }

    #[test]
    fn standard_predicates() {
        let d = dbl("0,0,0,12");
        let g = d.g();
        assert!(g.is_subalgebra() && g.is_max_isotropic());
        assert!(!g.is_abelian());
        let gs = d.g_dual();
        assert!(gs.is_ideal() && gs.is_abelian() && gs.is_max_isotropic());
        let k = d.subspace(&[el(&d, "E1"), el(&d, "E2"), el(&d, "E4"), el(&d, "e3")]);
        assert!(k.is_ideal() && k.is_abelian() && k.is_max_isotropic());
        assert_eq!(k.predicates(), k.predicates_uncached());

        let d = dbl("0,0,12,13");
        let a = d.subspace(&[el(&d, "E4"), el(&d, "e1"), el(&d, "e2"), el(&d, "e3")]);
        assert!(!a.is_subalgebra());
        assert_eq!(a.predicates(), a.predicates_uncached());
    }

    #[test]
    fn jacobi_on_closed_subspaces() {
        let d = dbl("0,0,0,12,14+23,13+42");
        assert_eq!(d.jacobi_on_isotropic(&d.g()).unwrap(), None);
        let d4 = dbl("0,0,12,13");
        let a = d4.subspace(&[el(&d4, "E4"), el(&d4, "e1"), el(&d4, "e2"), el(&d4, "e3")]);
        assert!(matches!(d4.jacobi_on_isotropic(&a), Err(Error::Precondition(_))));
    }

    #[test]
    fn dual_identification_cases() {
        let d = dbl("0,0,0,12");
        assert_eq!(d.dual_identification(&d.g_dual(), &d.g()).unwrap(), Matrix::identity(4));
        assert!(d.dual_identification(&d.g(), &d.g()).is_err());
    }

    #[test]
    fn orthogonal_complement_dimension() {
        let d = dbl("0,0,12,13");
        let s = d.subspace(&[el(&d, "e1 + E2"), el(&d, "e3")]).subspace().clone();
        assert_eq!(s.dim() + d.orthogonal(&s).dim(), 8);
    }
}
