//! Chevalley–Eilenberg complex of a Lie algebra.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{binomial, extend_derivation, subsets, Form};
use crate::lie::LieAlgebra;
use crate::linalg::{kernel, Matrix, Subspace, Vector};

/// `d` on a form of any degree, extended as a derivation from `de^k`.
pub fn d(alg: &LieAlgebra, form: &Form) -> Form {
    let n = alg.dim();
    if form.degree() >= n {
        return Form::zero(n, form.degree() + 1);
    }
    let dcoframe: Vec<Form> = (0..n).map(|i| alg.d_of_coframe(i)).collect();
    extend_derivation(&dcoframe, form)
}

/// Matrix of `d: Λ^k g* → Λ^{k+1} g*` in lexicographic multi-index bases.
pub fn ce_differential(alg: &LieAlgebra, k: usize) -> Result<Matrix> {
    let n = alg.dim();
    if k > n {
        return Err(Error::IndexOutOfRange { index: k, dim: n });
    }
    let rows = if k < n { binomial(n, k + 1) } else { 0 };
    let cols: Vec<Vector> = subsets(n, k)
        .iter()
        .map(|s| d(alg, &Form::basis_element(n, s)).into_coeffs())
        .collect();
    Ok(Matrix::from_cols(rows, &cols))
}

#[derive(Clone, Debug, Serialize)]
pub struct Cohomology {
    pub degree: usize,
    pub dim: usize,
    /// Closed forms whose classes form a basis, as coefficient vectors.
    #[serde(skip)]
    pub representatives: Vec<Vector>,
}

/// Dimension of `H^k` and representative cocycles.
pub fn ce_cohomology(alg: &LieAlgebra, k: usize) -> Result<Cohomology> {
    let dk = ce_differential(alg, k)?;
    let closed = if dk.rows() == 0 { Subspace::full(dk.cols()) } else { kernel(&dk) };
    let exact = if k == 0 {
        Subspace::zero(1)
    } else {
        let prev = ce_differential(alg, k - 1)?;
        Subspace::span(prev.rows(), &prev.col_vectors())
    };
    Ok(cohomology_from(k, &closed, &exact))
}

/// Complement of `exact` inside `closed`, expressed as representative vectors.
pub(crate) fn cohomology_from(degree: usize, closed: &Subspace, exact: &Subspace) -> Cohomology {
    let mut reps = Vec::new();
    let mut acc = exact.clone();
    for v in closed.vectors() {
        if !acc.contains(&v) {
            acc = acc.sum(&Subspace::span(acc.ambient(), std::slice::from_ref(&v))).expect("same ambient");
            reps.push(v);
        }
    }
    Cohomology { degree, dim: reps.len(), representatives: reps }
}

/// Betti numbers `dim H^0, …, dim H^n`.
pub fn betti_numbers(alg: &LieAlgebra) -> Vec<usize> {
    (0..=alg.dim()).map(|k| ce_cohomology(alg, k).expect("degree in range").dim).collect()
}

/// Interior product `ι_X ω` (first slot).
pub fn contract(x: &[crate::scalar::GaussianRational], form: &Form) -> Result<Form> {
    if form.degree() == 0 {
        return Err(Error::Precondition("cannot contract a 0-form".into()));
    }
    if x.len() != form.dim() {
        return Err(Error::DimensionMismatch { expected: form.dim(), found: x.len() });
    }
    Ok(form.contract(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::parse_salamon;
    use crate::linalg::unit_vec;
    use crate::scalar::GaussianRational as G;

    fn e(n: usize, idx: &[usize]) -> Form {
        Form::basis_element(n, &idx.iter().map(|i| i - 1).collect::<Vec<_>>())
    }

    #[test]
    fn d_on_heisenberg_plus_line() {
        let g = parse_salamon("0,0,0,12").unwrap();
        assert_eq!(d(&g, &e(4, &[4])), e(4, &[1, 2]));
        for i in 1..=3 {
            assert!(d(&g, &e(4, &[i])).is_zero());
        }
    }

    #[test]
    fn symplectic_form_is_closed() {
        let g = parse_salamon("0,0,0,0,12,14+25").unwrap();
        let omega = e(6, &[1, 3]).add(&e(6, &[2, 6])).add(&e(6, &[4, 5]));
        assert!(d(&g, &omega).is_zero());
    }

    #[test]
    fn abelian_differential_vanishes() {
        let g = LieAlgebra::abelian(4);
        for k in 0..=4 {
            assert!(ce_differential(&g, k).unwrap().is_zero());
        }
        assert_eq!(betti_numbers(&g), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn first_cohomology() {
        let g = parse_salamon("0,0,0,12").unwrap();
        let h = ce_cohomology(&g, 1).unwrap();
        assert_eq!(h.dim, 3);
        assert_eq!(ce_cohomology(&parse_salamon("0,0,12,13").unwrap(), 1).unwrap().dim, 2);
    }

    #[test]
    fn contraction_examples() {
        let e12 = e(4, &[1, 2]);
        assert_eq!(contract(&unit_vec(4, 0), &e12).unwrap(), e(4, &[2]));
        assert_eq!(contract(&unit_vec(4, 1), &e12).unwrap(), e(4, &[1]).neg());
        assert!(contract(&unit_vec(4, 2), &e12).unwrap().is_zero());
        assert!(contract(&unit_vec(4, 2), &Form::scalar(4, G::from_int(1))).is_err());
    }

    #[test]
    fn d_squared_vanishes() {
        let g = parse_salamon("0,0,0,12,14+23,13+42").unwrap();
        for k in 0..5 {
            let a = ce_differential(&g, k).unwrap();
            let b = ce_differential(&g, k + 1).unwrap();
            assert!(b.mul(&a).is_zero(), "degree {k}");
        }
    }
}
