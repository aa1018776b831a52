//! Invariant generalized complex structures on the double, and classical
//! complex structures on `g`.
//!
//! A structure is a real `2n × 2n` matrix acting on columns, with blocks
//! `[[J, Π], [B, −J*]]`: `B(X) = ι_X B` and `Π(α) = ι_α Π`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::double::{Double, DoubleSubspace};
use crate::error::{Error, Result};
use crate::exterior::{Form, Multivector};
use crate::expr::{format_form, format_multivector, parse_form, parse_multivector};
use crate::lie::{parse_salamon, LieAlgebra};
use crate::linalg::{is_zero_vec, kernel, unit_vec, vec_conj, vec_sub, zero_vec, Matrix, Subspace, Vector};
use crate::scalar::GaussianRational as G;

fn antisymmetric(m: &Matrix) -> bool {
    m.rows() == m.cols() && m.add(&m.transpose()).is_zero()
}

/// `u` written in the basis `ℓ ∪ ℓ̄`.
#[derive(Clone, Debug, PartialEq)]
pub struct Split {
    pub ell: Vector,
    pub ellbar: Vector,
}

#[derive(Clone, Debug)]
pub struct IntegrabilityFailure {
    /// 0-based indices into the canonical `ℓ` basis.
    pub pair: (usize, usize),
    pub bracket: Vector,
    /// The `ℓ̄` component of the bracket, as an element of the double.
    pub offending: Vector,
}

#[derive(Clone, Debug)]
pub struct Gcs {
    double: Double,
    matrix: Matrix,
    ell: Subspace,
    ell_basis: Vec<Vector>,
    ellbar_basis: Vec<Vector>,
    /// Inverse of the matrix whose columns are `ℓ_1..ℓ_n, ℓ̄_1..ℓ̄_n`.
    decomposition: Matrix,
}

impl Gcs {
    /// Validates `𝒥² = −1` and pairing preservation; integrability is not required.
    pub fn from_matrix(double: Double, matrix: Matrix) -> Result<Self> {
        let n = double.n();
        if matrix.rows() != 2 * n || matrix.cols() != 2 * n {
            return Err(Error::DimensionMismatch { expected: 2 * n, found: matrix.rows() });
        }
        if !matrix.is_real() {
            return Err(Error::NotAlmostGcs("matrix must be real".into()));
        }
        let sq = matrix.mul(&matrix);
        if sq != Matrix::identity(2 * n).scale(&-G::one()) {
            return Err(Error::NotAlmostGcs("𝒥² ≠ −1".into()));
        }
        let basis = double.basis();
        for i in 0..2 * n {
            let ji = matrix.col(i);
            for j in i..2 * n {
                let jj = matrix.col(j);
                if double.pairing(&ji, &jj) != double.pairing(&basis[i], &basis[j]) {
                    return Err(Error::NotAlmostGcs(format!(
                        "⟨𝒥u, 𝒥v⟩ ≠ ⟨u, v⟩ on basis elements {} and {}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let shifted = matrix.sub(&Matrix::identity(2 * n).scale(&G::i()));
        let ell = kernel(&shifted);
        debug_assert_eq!(ell.dim(), n);
        let ell_basis = ell.vectors();
        let ellbar_basis: Vec<Vector> = ell_basis.iter().map(|v| vec_conj(v)).collect();
        let cols: Vec<Vector> = ell_basis.iter().chain(&ellbar_basis).cloned().collect();
        let decomposition = Matrix::from_cols(2 * n, &cols)
            .inverse()
            .ok_or_else(|| Error::NotAlmostGcs("ℓ ∩ ℓ̄ ≠ 0".into()))?;
        Ok(Self { double, matrix, ell, ell_basis, ellbar_basis, decomposition })
    }

    /// Assembles `[[J, Π], [B, −J*]]` with `b[i][j] = B(e_i, e_j)` and `pi[i][j] = Π(e^i, e^j)`.
    pub fn from_components(double: Double, j: &Matrix, b: &Matrix, pi: &Matrix) -> Result<Self> {
        let n = double.n();
        for m in [j, b, pi] {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch { expected: n, found: m.rows() });
            }
        }
        if !antisymmetric(b) {
            return Err(Error::NotAlmostGcs("B is not antisymmetric".into()));
        }
        if !antisymmetric(pi) {
            return Err(Error::NotAlmostGcs("Π is not antisymmetric".into()));
        }
        let mut m = Matrix::zeros(2 * n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                m.set(r, c, j.get(r, c).clone());
                m.set(r, n + c, pi.get(c, r).clone());
                m.set(n + r, c, b.get(c, r).clone());
                m.set(n + r, n + c, -j.get(c, r));
            }
        }
        Self::from_matrix(double, m)
    }

    /// `J = 0`, `B = Ω`, `Π = −Ω⁻¹` so that `ℓ = {X − iΩ(X)}`.
    pub fn from_symplectic(double: Double, omega: &Form) -> Result<Self> {
        let n = double.n();
        if omega.degree() != 2 || omega.dim() != n {
            return Err(Error::Input("symplectic form must be a 2-form on g".into()));
        }
        let b = form_matrix(omega);
        let binv = b.inverse().ok_or_else(|| Error::Degenerate("Ω is degenerate".into()))?;
        // as maps X ↦ ι_X Ω has matrix bᵀ; Π must satisfy Π∘B = −1
        let pi_map = binv.transpose().scale(&-G::one());
        let pi = pi_map.transpose();
        Self::from_components(double, &Matrix::zeros(n, n), &b, &pi)
    }

    pub fn from_complex(double: Double, j: &ClassicalComplexStructure) -> Result<Self> {
        let n = double.n();
        Self::from_components(double, j.matrix(), &Matrix::zeros(n, n), &Matrix::zeros(n, n))
    }

    /// Deformation of a complex structure by a `(2,0)`-bivector `Λ`:
    /// `Π = 4 Im Λ`, so that `ℓ = g^{1,0} ⊕ {ω̄ + ι_{ω̄} Λ̄}`.
    pub fn from_holomorphic_poisson(double: Double, j: &ClassicalComplexStructure, lambda: &Multivector) -> Result<Self> {
        let n = double.n();
        if lambda.degree() != 2 || lambda.dim() != n {
            return Err(Error::Input("Λ must be a bivector on g".into()));
        }
        if !j.is_type_20(lambda) {
            return Err(Error::Input("Λ is not of type (2,0)".into()));
        }
        let mut pi = Matrix::zeros(n, n);
        for (s, c) in lambda.terms() {
            let v = &c.imag_part() * &G::from_int(4);
            let (a, b) = (s[0], s[1]);
            *pi.get_mut(a, b) += &v;
            *pi.get_mut(b, a) -= &v;
        }
        Self::from_components(double, j.matrix(), &Matrix::zeros(n, n), &pi)
    }

    pub fn double(&self) -> &Double {
        &self.double
    }

    pub fn algebra(&self) -> &LieAlgebra {
        self.double.algebra()
    }

    pub fn n(&self) -> usize {
        self.double.n()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[G]) -> Vector {
        self.matrix.mul_vec(v)
    }

    pub fn j_block(&self) -> Matrix {
        let n = self.n();
        let mut m = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                m.set(r, c, self.matrix.get(r, c).clone());
            }
        }
        m
    }

    /// `b[i][j] = B(e_i, e_j)`.
    pub fn b_block(&self) -> Matrix {
        let n = self.n();
        let mut m = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                m.set(c, r, self.matrix.get(n + r, c).clone());
            }
        }
        m
    }

    /// `pi[i][j] = Π(e^i, e^j)`.
    pub fn pi_block(&self) -> Matrix {
        let n = self.n();
        let mut m = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                m.set(c, r, self.matrix.get(r, n + c).clone());
            }
        }
        m
    }

    /// The `+i` eigenspace `ℓ` (canonical RREF basis).
    pub fn eigenspace(&self) -> &Subspace {
        &self.ell
    }

    pub fn eigenspace_subspace(&self) -> DoubleSubspace {
        self.double.wrap(self.ell.clone())
    }

    pub fn ell_basis(&self) -> &[Vector] {
        &self.ell_basis
    }

    pub fn ellbar_basis(&self) -> &[Vector] {
        &self.ellbar_basis
    }

    /// Components of `u` along `ℓ_a` and `ℓ̄_a`.
    pub fn split(&self, u: &[G]) -> Split {
        let n = self.n();
        let c = self.decomposition.mul_vec(u);
        Split { ell: c[..n].to_vec(), ellbar: c[n..].to_vec() }
    }

    pub fn combine_ell(&self, coeffs: &[G]) -> Vector {
        combine(&self.ell_basis, coeffs)
    }

    pub fn combine_ellbar(&self, coeffs: &[G]) -> Vector {
        combine(&self.ellbar_basis, coeffs)
    }

    pub fn integrability_failure(&self) -> Option<IntegrabilityFailure> {
        let n = self.n();
        for a in 0..n {
            for b in a + 1..n {
                let w = self.double.bracket(&self.ell_basis[a], &self.ell_basis[b]);
                let s = self.split(&w);
                if !is_zero_vec(&s.ellbar) {
                    return Some(IntegrabilityFailure {
                        pair: (a, b),
                        offending: self.combine_ellbar(&s.ellbar),
                        bracket: w,
                    });
                }
            }
        }
        None
    }

    pub fn is_integrable(&self) -> bool {
        self.integrability_failure().is_none()
    }

    /// `n − dim` of the projection of `ℓ` to `g_C`.
    pub fn gcs_type(&self) -> usize {
        let n = self.n();
        let proj: Vec<Vector> = self.ell_basis.iter().map(|v| v[..n].to_vec()).collect();
        n - Subspace::span(n, &proj).dim()
    }

    /// Re-checks the structural invariants from scratch.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.n();
        let m = &self.matrix;
        if m.mul(m) != Matrix::identity(2 * n).scale(&-G::one()) {
            return Err(Error::NotAlmostGcs("𝒥² ≠ −1".into()));
        }
        let ell = self.eigenspace_subspace();
        if ell.dim() != n || !ell.is_isotropic() {
            return Err(Error::NotAlmostGcs("ℓ is not maximal isotropic".into()));
        }
        if self.ell.intersection(&self.ell.conjugate())?.dim() != 0 {
            return Err(Error::NotAlmostGcs("ℓ ∩ ℓ̄ ≠ 0".into()));
        }
        for v in &self.ell_basis {
            if self.apply(v) != crate::linalg::vec_scale(&G::i(), v) {
                return Err(Error::NotAlmostGcs("ℓ is not the +i eigenspace".into()));
            }
        }
        Ok(())
    }

    pub fn to_doc(&self) -> GcsDoc {
        GcsDoc {
            algebra: Some(self.algebra().to_salamon()),
            j: Some(matrix_strings(&self.j_block())),
            b: Some(matrix_strings(&self.b_block())),
            pi: Some(matrix_strings(&self.pi_block())),
            symplectic: None,
            complex: None,
            poisson: None,
        }
    }
}

fn combine(basis: &[Vector], coeffs: &[G]) -> Vector {
    let mut out = zero_vec(basis.first().map_or(0, Vec::len));
    for (v, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            crate::linalg::axpy(&mut out, c, v);
        }
    }
    out
}

/// `m[i][j] = ω(e_i, e_j)` for a 2-form.
pub fn form_matrix(omega: &Form) -> Matrix {
    let n = omega.dim();
    let mut m = Matrix::zeros(n, n);
    for (s, c) in omega.terms() {
        m.set(s[0], s[1], c.clone());
        m.set(s[1], s[0], -&c);
    }
    m
}

/// A (possibly non-integrable) almost complex structure `J` on `g`, `J e_j = Σ_i J_ij e_i`.
#[derive(Clone, Debug)]
pub struct ClassicalComplexStructure {
    alg: LieAlgebra,
    j: Matrix,
}

impl ClassicalComplexStructure {
    /// Requires `J² = −1` and a vanishing Nijenhuis tensor.
    pub fn new(alg: LieAlgebra, j: Matrix) -> Result<Self> {
        let s = Self::new_almost(alg, j)?;
        if let Some((a, b)) = s.nijenhuis_failure() {
            return Err(Error::InvalidComplexStructure(format!(
                "Nijenhuis tensor is nonzero on (e{}, e{})",
                a + 1,
                b + 1
            )));
        }
        Ok(s)
    }

    /// Requires only `J² = −1`.
    pub fn new_almost(alg: LieAlgebra, j: Matrix) -> Result<Self> {
        let n = alg.dim();
        if j.rows() != n || j.cols() != n || !j.is_real() {
            return Err(Error::InvalidComplexStructure("J must be a real n×n matrix".into()));
        }
        if j.mul(&j) != Matrix::identity(n).scale(&-G::one()) {
            return Err(Error::InvalidComplexStructure("J² ≠ −1".into()));
        }
        Ok(Self { alg, j })
    }

    /// Builds `J` from pairs `J e_a = e_b` (0-based), completing with `J e_b = −e_a`.
    pub fn from_pairs(alg: LieAlgebra, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = alg.dim();
        let mut j = Matrix::zeros(n, n);
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::IndexOutOfRange { index: a.max(b) + 1, dim: n });
            }
            j.set(b, a, G::one());
            j.set(a, b, -G::one());
        }
        Self::new(alg, j)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.alg
    }

    pub fn matrix(&self) -> &Matrix {
        &self.j
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    /// `N(X,Y) = [JX,JY] − J[JX,Y] − J[X,JY] − [X,Y]`.
    pub fn nijenhuis(&self, x: &[G], y: &[G]) -> Vector {
        let jx = self.j.mul_vec(x);
        let jy = self.j.mul_vec(y);
        let a = self.alg.bracket(&jx, &jy);
        let b = self.j.mul_vec(&self.alg.bracket(&jx, y));
        let c = self.j.mul_vec(&self.alg.bracket(x, &jy));
        let d = self.alg.bracket(x, y);
        vec_sub(&vec_sub(&vec_sub(&a, &b), &c), &d)
    }

    pub fn nijenhuis_failure(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        for a in 0..n {
            for b in a + 1..n {
                if !is_zero_vec(&self.nijenhuis(&unit_vec(n, a), &unit_vec(n, b))) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_integrable(&self) -> bool {
        self.nijenhuis_failure().is_none()
    }

    /// `[JX, JY] = [X, Y]` on all basis pairs.
    pub fn is_abelian(&self) -> bool {
        let n = self.dim();
        (0..n).all(|a| {
            (a + 1..n).all(|b| {
                let x = unit_vec(n, a);
                let y = unit_vec(n, b);
                self.alg.bracket(&self.j.mul_vec(&x), &self.j.mul_vec(&y)) == self.alg.bracket(&x, &y)
            })
        })
    }

    /// `g^{1,0}`, the `+i` eigenspace of `J`.
    pub fn holomorphic_vectors(&self) -> Subspace {
        let n = self.dim();
        kernel(&self.j.sub(&Matrix::identity(n).scale(&G::i())))
    }

    /// `g^{*(1,0)}`: forms with `J*α = iα`, where `(J*α)(X) = α(JX)`.
    pub fn holomorphic_forms(&self) -> Subspace {
        let n = self.dim();
        kernel(&self.j.transpose().sub(&Matrix::identity(n).scale(&G::i())))
    }

    /// All brackets inside `g^{1,0}` vanish.
    pub fn holomorphic_subalgebra_is_abelian(&self) -> bool {
        let vs = self.holomorphic_vectors().vectors();
        vs.iter().all(|a| vs.iter().all(|b| is_zero_vec(&self.alg.bracket(a, b))))
    }

    /// Projection of a complex vector onto `g^{1,0}` along `g^{0,1}`: `½(X − iJX)`.
    pub fn project_10(&self, x: &[G]) -> Vector {
        let jx = self.j.mul_vec(x);
        let half = G::frac(1, 2);
        x.iter().zip(&jx).map(|(a, b)| &half * &(a - &b.times_i())).collect()
    }

    pub fn project_01(&self, x: &[G]) -> Vector {
        let jx = self.j.mul_vec(x);
        let half = G::frac(1, 2);
        x.iter().zip(&jx).map(|(a, b)| &half * &(a + &b.times_i())).collect()
    }

    /// Whether a bivector lies in `Λ² g^{1,0}`.
    pub fn is_type_20(&self, lambda: &Multivector) -> bool {
        let forms01: Vec<Vector> = self.holomorphic_forms().vectors().iter().map(|v| vec_conj(v)).collect();
        forms01.iter().all(|f| lambda.contract(f).is_zero())
    }

    /// Coframe `ω^j` dual to a frame `T_j` of `g^{1,0}`: `ω^j(T_k) = δ_jk`, `ω^j(T̄_k) = 0`.
    pub fn dual_coframe(&self, frame: &[Vector]) -> Result<Vec<Vector>> {
        let n = self.dim();
        let cols: Vec<Vector> = frame.iter().cloned().chain(frame.iter().map(|t| vec_conj(t))).collect();
        if cols.len() != n {
            return Err(Error::DimensionMismatch { expected: n / 2, found: frame.len() });
        }
        let inv = Matrix::from_cols(n, &cols)
            .inverse()
            .ok_or_else(|| Error::Degenerate("frame does not span g^{1,0}".into()))?;
        Ok((0..frame.len()).map(|j| inv.row(j).to_vec()).collect())
    }

    /// Greedy nilpotent filtration of `g^{*(1,0)}`; `None` if it stalls.
    pub fn find_ascending_basis(&self) -> Option<AscendingBasis> {
        let n = self.dim();
        let forms = self.holomorphic_forms();
        let m = forms.dim();
        let dforms: Vec<Form> = forms.vectors().iter().map(|v| crate::ce::d(&self.alg, &Form::from_vector(v))).collect();
        let mut chosen: Vec<Vector> = Vec::new();
        let mut abelian = true;
        while chosen.len() < m {
            let lower: Vec<Vector> = chosen.iter().cloned().chain(chosen.iter().map(|v| vec_conj(v))).collect();
            let allowed = wedge_span(n, &lower, &lower);
            // ω = Σ c_k f_k with dω ∈ allowed: linear conditions on c
            let quotient = quotient_map(&allowed);
            let cols: Vec<Vector> = dforms.iter().map(|f| quotient.mul_vec(f.coeffs())).collect();
            let sol = if quotient.rows() == 0 {
                Subspace::full(m)
            } else {
                kernel(&Matrix::from_cols(quotient.rows(), &cols))
            };
            let before = chosen.len();
            let mut span = Subspace::span(n, &chosen);
            for c in sol.vectors() {
                let w = combine(&forms.vectors(), &c);
                if !span.contains(&w) {
                    span = span.sum(&Subspace::span(n, std::slice::from_ref(&w))).expect("same ambient");
                    chosen.push(w);
                }
            }
            if chosen.len() == before {
                return None;
            }
            // abelian structures: dω^j ∈ span{ω^k ∧ ω̄^l}
            let hol: Vec<Vector> = chosen[..before].to_vec();
            let anti: Vec<Vector> = hol.iter().map(|v| vec_conj(v)).collect();
            let mixed = wedge_span(n, &hol, &anti);
            for w in &chosen[before..] {
                let dw = crate::ce::d(&self.alg, &Form::from_vector(w));
                if !mixed.contains(dw.coeffs()) {
                    abelian = false;
                }
            }
        }
        Some(AscendingBasis { coframe: chosen, abelian_type: abelian })
    }
}

#[derive(Clone, Debug)]
pub struct AscendingBasis {
    /// `(1,0)`-forms `ω^1..ω^m` in filtration order.
    pub coframe: Vec<Vector>,
    /// Every `dω^j` lies in `span{ω^k ∧ ω̄^l : k, l < j}`.
    pub abelian_type: bool,
}

/// Span of `a ∧ b` for `a ∈ xs`, `b ∈ ys`, as coefficient vectors in `Λ²`.
fn wedge_span(n: usize, xs: &[Vector], ys: &[Vector]) -> Subspace {
    let mut out = Vec::new();
    for x in xs {
        for y in ys {
            let w = Form::from_vector(x).wedge(&Form::from_vector(y));
            if !w.is_zero() {
                out.push(w.into_coeffs());
            }
        }
    }
    Subspace::span(crate::exterior::binomial(n, 2), &out)
}

/// A matrix whose kernel is exactly the given subspace.
fn quotient_map(s: &Subspace) -> Matrix {
    let ann = kernel(&if s.dim() == 0 { Matrix::zeros(1, s.ambient()) } else { s.basis().clone() });
    ann.basis().clone()
}

fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(|x| x.to_string()).collect()).collect()
}

/// GCS document; exactly one of the three forms is expected:
/// component matrices, a symplectic form, or a complex structure plus optional Poisson bivector.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct GcsDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    pub j: Option<Vec<Vec<String>>>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<Vec<String>>>,
    #[serde(rename = "Pi", default, skip_serializing_if = "Option::is_none")]
    pub pi: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symplectic: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<ComplexDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poisson: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexDoc {
    #[serde(rename = "J")]
    pub j: Vec<Vec<String>>,
}

impl ComplexDoc {
    pub fn matrix(&self, n: usize) -> Result<Matrix> {
        parse_matrix(&self.j, n, "J")
    }
}

fn parse_matrix(rows: &[Vec<String>], n: usize, what: &str) -> Result<Matrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Input(format!("{what} must be {n}×{n}")));
    }
    let mut m = Matrix::zeros(n, n);
    for (r, row) in rows.iter().enumerate() {
        for (c, s) in row.iter().enumerate() {
            let v: G = s.parse().map_err(|_| Error::Input(format!("{what}[{r}][{c}]: bad entry '{s}'")))?;
            m.set(r, c, v);
        }
    }
    Ok(m)
}

/// Accepts numbers as well as strings for matrix entries.
fn normalize_numbers(v: &mut Value) {
    match v {
        Value::Number(x) => *v = Value::String(x.to_string()),
        Value::Array(xs) => xs.iter_mut().for_each(normalize_numbers),
        Value::Object(m) => m.values_mut().for_each(normalize_numbers),
        _ => {}
    }
}

impl GcsDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        let mut v: Value = serde_json::from_str(text)?;
        normalize_numbers(&mut v);
        Ok(serde_json::from_value(v)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn components(alg: &str, j: &Matrix, b: &Matrix, pi: &Matrix) -> Self {
        GcsDoc {
            algebra: Some(alg.to_string()),
            j: Some(matrix_strings(j)),
            b: Some(matrix_strings(b)),
            pi: Some(matrix_strings(pi)),
            ..Default::default()
        }
    }

    pub fn symplectic(alg: &str, omega: &Form) -> Self {
        GcsDoc { algebra: Some(alg.to_string()), symplectic: Some(format_form(omega)), ..Default::default() }
    }

    pub fn complex(alg: &str, j: &Matrix, poisson: Option<&Multivector>) -> Self {
        GcsDoc {
            algebra: Some(alg.to_string()),
            complex: Some(ComplexDoc { j: matrix_strings(j) }),
            poisson: poisson.map(format_multivector),
            ..Default::default()
        }
    }

    /// The algebra named in the document, unless overridden.
    pub fn resolve_algebra(&self, over: Option<&LieAlgebra>) -> Result<LieAlgebra> {
        match (over, &self.algebra) {
            (Some(a), _) => Ok(a.clone()),
            (None, Some(s)) => parse_salamon(s),
            (None, None) => Err(Error::Input("no algebra given".into())),
        }
    }

    pub fn build(&self, alg: Option<&LieAlgebra>) -> Result<Gcs> {
        let alg = self.resolve_algebra(alg)?;
        let n = alg.dim();
        let double = Double::new(alg.clone());
        if let Some(s) = &self.symplectic {
            return Gcs::from_symplectic(double, &parse_form(s, n)?);
        }
        if let Some(c) = &self.complex {
            let j = ClassicalComplexStructure::new(alg, parse_matrix(&c.j, n, "J")?)?;
            return match &self.poisson {
                Some(p) => Gcs::from_holomorphic_poisson(double, &j, &parse_multivector(p, n)?),
                None => Gcs::from_complex(double, &j),
            };
        }
        let zero = || vec![vec!["0".to_string(); n]; n];
        let j = parse_matrix(self.j.as_ref().unwrap_or(&zero()), n, "J")?;
        let b = parse_matrix(self.b.as_ref().unwrap_or(&zero()), n, "B")?;
        let pi = parse_matrix(self.pi.as_ref().unwrap_or(&zero()), n, "Pi")?;
        Gcs::from_components(double, &j, &b, &pi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_double_element;

    fn kodaira_type1() -> Gcs {
        let alg = parse_salamon("0,0,0,12").unwrap();
        let d = Double::new(alg);
        let mut j = Matrix::zeros(4, 4);
        j.set(1, 0, G::one());
        j.set(0, 1, -G::one());
        let b = form_matrix(&parse_form("E3^E4", 4).unwrap());
        let pi = form_matrix(&parse_form("E3^E4", 4).unwrap());
        Gcs::from_components(d, &j, &b, &pi).unwrap()
    }

    fn el(s: &str, n: usize) -> Vector {
        parse_double_element(s, n).unwrap()
    }

    #[test]
    fn type_one_structure_on_kodaira_algebra() {
        let g = kodaira_type1();
        assert_eq!(g.apply(&el("e3", 4)), el("E4", 4));
        assert_eq!(g.apply(&el("e4", 4)), el("-E3", 4));
        let expected = Subspace::span(8, &[el("e1 - i*e2", 4), el("e4 + i*E3", 4), el("E1 - i*E2", 4), el("e3 - i*E4", 4)]);
        assert_eq!(g.eigenspace(), &expected);
        assert!(g.is_integrable());
        assert_eq!(g.gcs_type(), 1);
        g.check_invariants().unwrap();
    }

    #[test]
    fn invalid_matrices_are_rejected() {
        let d = Double::new(LieAlgebra::abelian(2));
        assert!(matches!(Gcs::from_matrix(d.clone(), Matrix::identity(4)), Err(Error::NotAlmostGcs(_))));
        // J on vectors and +J* on forms squares to −1 but breaks the pairing
        let mut m = Matrix::zeros(4, 4);
        m.set(1, 0, G::one());
        m.set(0, 1, -G::one());
        m.set(2, 3, G::one());
        m.set(3, 2, -G::one());
        assert_eq!(m.mul(&m), Matrix::identity(4).scale(&-G::one()));
        assert!(matches!(Gcs::from_matrix(d.clone(), m), Err(Error::NotAlmostGcs(_))));
        let asym = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert!(Gcs::from_components(d, &Matrix::zeros(2, 2), &asym, &Matrix::zeros(2, 2)).is_err());
    }

    #[test]
    fn symplectic_plane() {
        let d = Double::new(LieAlgebra::abelian(2));
        let g = Gcs::from_symplectic(d, &parse_form("E1^E2", 2).unwrap()).unwrap();
        let expected = Subspace::span(4, &[el("e1 - i*E2", 2), el("e2 + i*E1", 2)]);
        assert_eq!(g.eigenspace(), &expected);
        assert_eq!(g.gcs_type(), 0);
        assert!(g.is_integrable());
        assert!(Gcs::from_symplectic(Double::new(LieAlgebra::abelian(2)), &parse_form("0", 2).unwrap()).is_err());
    }

    #[test]
    fn symplectic_integrability_tracks_closedness() {
        let alg = parse_salamon("0,0,12,13").unwrap();
        let closed = parse_form("E2^E3 + E1^E4", 4).unwrap();
        let g = Gcs::from_symplectic(Double::new(alg.clone()), &closed).unwrap();
        assert!(g.is_integrable());
        // e^{13} + e^{24}: d(e^{24}) = −e^2∧e^{13} ≠ 0
        let open = parse_form("E1^E3 + E2^E4", 4).unwrap();
        assert!(!crate::ce::d(&alg, &open).is_zero());
        assert!(!Gcs::from_symplectic(Double::new(alg), &open).unwrap().is_integrable());
    }

    #[test]
    fn classical_structures() {
        let alg = parse_salamon("0,0,0,12").unwrap();
        let j = ClassicalComplexStructure::from_pairs(alg.clone(), &[(0, 1), (2, 3)]).unwrap();
        assert!(j.is_abelian());
        assert!(j.holomorphic_subalgebra_is_abelian());
        let g = Gcs::from_complex(Double::new(alg), &j).unwrap();
        assert_eq!(g.gcs_type(), 2);
        assert!(g.is_integrable());

        let alg = parse_salamon("0,0,0,0,12,13").unwrap();
        let j = ClassicalComplexStructure::from_pairs(alg.clone(), &[(0, 3), (1, 2), (4, 5)]).unwrap();
        assert!(!j.is_abelian());
        assert!(!j.holomorphic_subalgebra_is_abelian());
        assert_eq!(Gcs::from_complex(Double::new(alg), &j).unwrap().gcs_type(), 3);

        let alg = parse_salamon("0,0,12,13").unwrap();
        let err = ClassicalComplexStructure::from_pairs(alg.clone(), &[(0, 1), (2, 3)]);
        assert!(matches!(err, Err(Error::InvalidComplexStructure(_))));
        let almost = ClassicalComplexStructure::new_almost(alg.clone(), {
            let mut m = Matrix::zeros(4, 4);
            m.set(1, 0, G::one());
            m.set(0, 1, -G::one());
            m.set(3, 2, G::one());
            m.set(2, 3, -G::one());
            m
        })
        .unwrap();
        let g = Gcs::from_complex(Double::new(alg), &almost).unwrap();
        assert!(g.integrability_failure().is_some());
    }

    #[test]
    fn ascending_basis_on_three_step_algebra() {
        let alg = parse_salamon("0,0,0,-12,31+42,41-32").unwrap();
        let j = ClassicalComplexStructure::from_pairs(alg.clone(), &[(0, 1), (2, 3), (4, 5)]).unwrap();
        assert!(j.is_abelian());
        let asc = j.find_ascending_basis().unwrap();
        assert!(asc.abelian_type);
        let w = &asc.coframe;
        let omega1 = vec![G::one(), G::i(), G::zero(), G::zero(), G::zero(), G::zero()];
        assert_eq!(w[0], omega1);
        assert_eq!(w.len(), 3);
    }

    #[test]
    fn doc_round_trip() {
        let g = kodaira_type1();
        let doc = g.to_doc();
        let back = GcsDoc::from_json(&doc.to_json()).unwrap().build(None).unwrap();
        assert_eq!(back.matrix(), g.matrix());
        let doc = GcsDoc::from_json(r#"{"algebra":"0,0","symplectic":"E1^E2"}"#).unwrap();
        assert_eq!(doc.build(None).unwrap().gcs_type(), 0);
        let doc = GcsDoc::from_json(r#"{"algebra":"0,0","complex":{"J":[[0,-1],[1,0]]}}"#).unwrap();
        assert_eq!(doc.build(None).unwrap().gcs_type(), 1);
    }
}
