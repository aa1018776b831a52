//! The invariant differential Gerstenhaber algebra `(Λ•ℓ, ∧, ⟦·,·⟧, δ̄)` of a
//! generalized complex structure.
//!
//! Multivectors are coefficient vectors over the canonical `ℓ` basis `L1..Ln`.
//! `ℓ` is identified with `ℓ̄*` through `u ↦ 2⟨u, ·⟩`; under that identification
//! `δ̄` is one half of the Chevalley–Eilenberg differential of `ℓ̄`, which gives
//! `(δ̄u)(ℓ̄_p, ℓ̄_q) = −⟨u, ⟦ℓ̄_p, ℓ̄_q⟧⟩` and `δ̄ = ½∂̄` on classical structures.

use num_traits::Zero;
use serde::Serialize;

use crate::ce::{cohomology_from, d as ce_d, Cohomology};
use crate::double::Double;
use crate::error::{Error, Result};
use crate::exterior::{binomial, extend_derivation, render, schouten_extension, subsets, ExteriorElement, Form, Multivector};
use crate::gcs::{form_matrix, ClassicalComplexStructure, Gcs};
use crate::linalg::{axpy, is_zero_vec, kernel, unit_vec, vec_conj, zero_vec, Matrix, Subspace, Vector};
use crate::scalar::GaussianRational as G;

#[derive(Clone, Debug)]
pub struct DgaPresentation {
    gcs: Gcs,
    /// `gram[a][b] = 2⟨ℓ_a, ℓ̄_b⟩`.
    gram: Matrix,
    /// `constants[a * n + b]` = `ℓ`-coordinates of `⟦ℓ_a, ℓ_b⟧` (projected to `ℓ`).
    constants: Vec<Vector>,
    /// `δ̄` on degrees `0..=n`.
    delta: Vec<Matrix>,
    deformation: Option<Multivector>,
}

impl DgaPresentation {
    pub fn new(gcs: &Gcs) -> Self {
        let n = gcs.n();
        let double = gcs.double();
        let ell = gcs.ell_basis();
        let ellbar = gcs.ellbar_basis();
        let gram = double.pairing_matrix(ell, ellbar).scale(&G::from_int(2));
        let mut constants = vec![zero_vec(n); n * n];
        for a in 0..n {
            for b in a + 1..n {
                let c = gcs.split(&double.bracket(&ell[a], &ell[b])).ell;
                constants[b * n + a] = c.iter().map(|x| -x).collect();
                constants[a * n + b] = c;
            }
        }
        let ginv = gram.inverse().expect("ℓ and ℓ̄ are dual");
        // θ^p (dual to ℓ̄_p) = Σ_a ginv[p][a] ℓ_a
        let theta_to_ell = ginv.transpose();
        let mut delta1 = Vec::with_capacity(n);
        for a in 0..n {
            // δ̄θ^r = −½ Σ_{p<q} f^r_{pq} θ^p ∧ θ^q with f = conj(c); δ̄ℓ_a = Σ_r gram[a][r] δ̄θ^r
            let mut in_theta = ExteriorElement::zero(n, 2);
            for r in 0..n {
                let g = gram.get(a, r);
                if g.is_zero() {
                    continue;
                }
                for p in 0..n {
                    for q in p + 1..n {
                        let f = constants[p * n + q][r].conj();
                        if f.is_zero() {
                            continue;
                        }
                        let coef = -&(&(g * &f) * &G::frac(1, 2));
                        in_theta = in_theta.add(&ExteriorElement::monomial(n, &[p, q], coef));
                    }
                }
            }
            delta1.push(in_theta.map_linear(&theta_to_ell));
        }
        let delta = (0..=n).map(|k| derivation_matrix(n, k, &delta1)).collect();
        Self { gcs: gcs.clone(), gram, constants, delta, deformation: None }
    }

    pub fn gcs(&self) -> &Gcs {
        &self.gcs
    }

    pub fn n(&self) -> usize {
        self.gcs.n()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn deformation(&self) -> Option<&Multivector> {
        self.deformation.as_ref()
    }

    /// `ℓ`-coordinates of `⟦ℓ_a, ℓ_b⟧`.
    pub fn bracket_constants(&self, a: usize, b: usize) -> &Vector {
        &self.constants[a * self.n() + b]
    }

    pub fn delta_matrix(&self, k: usize) -> &Matrix {
        &self.delta[k]
    }

    pub fn delta_matrices(&self) -> &[Matrix] {
        &self.delta
    }

    /// `δ̄` (or `δ̄ + ad_Γ` after deformation).
    pub fn differential(&self, a: &Multivector) -> Multivector {
        let n = self.n();
        let k = a.degree();
        if k >= n {
            return ExteriorElement::zero(n, k + 1);
        }
        ExteriorElement::from_coeffs(n, k + 1, self.delta[k].mul_vec(a.coeffs()))
    }

    pub fn schouten(&self, a: &Multivector, b: &Multivector) -> Multivector {
        let n = self.n();
        let br = |i: usize, j: usize| ExteriorElement::from_vector(&self.constants[i * n + j]);
        schouten_extension(a, b, &br)
    }

    /// `ℓ`-coordinates of an element of the double; fails if it is not in `ℓ`.
    pub fn coords(&self, u: &[G]) -> Result<Vector> {
        let s = self.gcs.split(u);
        if !is_zero_vec(&s.ellbar) {
            return Err(Error::Input("element does not lie in ℓ".into()));
        }
        Ok(s.ell)
    }

    /// Degree-1 multivector from an element of `ℓ`.
    pub fn element(&self, u: &[G]) -> Result<Multivector> {
        Ok(ExteriorElement::from_vector(&self.coords(u)?))
    }

    /// `u_1 ∧ … ∧ u_k` for elements of `ℓ`.
    pub fn wedge_of(&self, us: &[Vector]) -> Result<Multivector> {
        let mut out = ExteriorElement::scalar(self.n(), G::from_int(1));
        for u in us {
            out = out.wedge(&self.element(u)?);
        }
        Ok(out)
    }

    /// Natural evaluation of `a ∈ Λ^k ℓ` on elements of `ℓ̄`, using `2⟨·,·⟩`.
    pub fn evaluate_on_conjugates(&self, a: &Multivector, args: &[Vector]) -> G {
        let double = self.gcs.double();
        let ell = self.gcs.ell_basis();
        let coords: Vec<Vector> = args
            .iter()
            .map(|w| ell.iter().map(|l| &double.pairing(l, w) * &G::from_int(2)).collect())
            .collect();
        a.evaluate(&coords)
    }

    pub fn delta_squared_vanishes(&self) -> bool {
        self.delta_squared_failure().is_none()
    }

    /// First degree `k` with `δ̄_{k+1} δ̄_k ≠ 0`.
    pub fn delta_squared_failure(&self) -> Option<usize> {
        (0..self.n().saturating_sub(1)).find(|&k| !self.delta[k + 1].mul(&self.delta[k]).is_zero())
    }

    pub fn cohomology(&self, k: usize) -> Result<Cohomology> {
        let n = self.n();
        if k > n {
            return Err(Error::IndexOutOfRange { index: k, dim: n });
        }
        if let Some(bad) = self.delta_squared_failure() {
            return Err(Error::NotIntegrable(format!("δ̄² ≠ 0 on degree {bad}")));
        }
        let dk = &self.delta[k];
        let closed = if dk.rows() == 0 { Subspace::full(dk.cols()) } else { kernel(dk) };
        let exact = if k == 0 {
            Subspace::zero(1)
        } else {
            let prev = &self.delta[k - 1];
            Subspace::span(prev.rows(), &prev.col_vectors())
        };
        Ok(cohomology_from(k, &closed, &exact))
    }

    pub fn betti_numbers(&self) -> Result<Vec<usize>> {
        (0..=self.n()).map(|k| self.cohomology(k).map(|h| h.dim)).collect()
    }

    /// `ker δ̄` on degree 1, as a subspace of the double.
    pub fn degree_one_kernel(&self) -> Subspace {
        let n = self.n();
        let ker = kernel(&self.delta[1]);
        let vs: Vec<Vector> = ker.vectors().iter().map(|c| self.gcs.combine_ell(c)).collect();
        Subspace::span(2 * n, &vs)
    }

    /// `δ̄Γ + ½⟦Γ, Γ⟧`.
    pub fn maurer_cartan(&self, gamma: &Multivector) -> Multivector {
        let half = self.schouten(gamma, gamma).scale(&G::frac(1, 2));
        self.differential(gamma).add(&half)
    }

    pub fn maurer_cartan_check(&self, gamma: &Multivector) -> bool {
        self.maurer_cartan(gamma).is_zero()
    }

    /// Basis of `ℓ̄_Γ = {x + 2 ι_x Γ : x ∈ ℓ̄}`, with `ℓ_a` acting on `ℓ̄` as `2⟨ℓ_a, ·⟩`.
    pub fn deformed_conjugate_space(&self, gamma: &Multivector) -> Vec<Vector> {
        let d = self.gcs.double();
        let ell = self.gcs.ell_basis();
        self.gcs
            .ellbar_basis()
            .iter()
            .map(|x| {
                let mut v = x.clone();
                for (idx, c) in gamma.terms() {
                    let (a, b) = (idx[0], idx[1]);
                    let pa = &c * &(d.pairing(&ell[a], x) * G::from_int(4));
                    let pb = &c * &(d.pairing(&ell[b], x) * G::from_int(4));
                    axpy(&mut v, &pa, &ell[b]);
                    axpy(&mut v, &-pb, &ell[a]);
                }
                v
            })
            .collect()
    }

    /// Whether `ℓ̄_Γ` is closed under the Courant bracket; equivalent to `MC(Γ) = 0`.
    pub fn deformation_involutive(&self, gamma: &Multivector) -> bool {
        let d = self.gcs.double();
        let vs = self.deformed_conjugate_space(gamma);
        let span = Subspace::span(2 * self.n(), &vs);
        vs.iter().all(|x| vs.iter().all(|y| span.contains(&d.bracket(x, y))))
    }

    /// Checks `δ̄_Γ² = ad_{MC(Γ)}` on generators; both sides are derivations.
    pub fn square_is_ad_maurer_cartan(&self, gamma: &Multivector) -> Result<bool> {
        let deformed = self.deformed(gamma)?;
        let mc = self.maurer_cartan(gamma);
        let n = self.n();
        Ok((0..n).all(|a| {
            let x = ExteriorElement::basis_element(n, &[a]);
            deformed.differential(&deformed.differential(&x)) == self.schouten(&mc, &x)
        }))
    }

    /// Presentation with `δ̄_Γ = δ̄ + ad_Γ`, where `ad_Γ a = ⟦Γ, a⟧`.
    pub fn deformed(&self, gamma: &Multivector) -> Result<DgaPresentation> {
        let n = self.n();
        if gamma.dim() != n || gamma.degree() != 2 {
            return Err(Error::Input("deformation must be a degree-2 multivector on ℓ".into()));
        }
        let mut delta = self.delta.clone();
        for (k, m) in delta.iter_mut().enumerate().take(n) {
            let cols: Vec<Vector> = subsets(n, k)
                .iter()
                .map(|s| self.schouten(gamma, &ExteriorElement::basis_element(n, s)).into_coeffs())
                .collect();
            *m = m.add(&Matrix::from_cols(binomial(n, k + 1), &cols));
        }
        Ok(DgaPresentation {
            gcs: self.gcs.clone(),
            gram: self.gram.clone(),
            constants: self.constants.clone(),
            delta,
            deformation: Some(gamma.clone()),
        })
    }

    /// Same bracket constants and differentials (deformation labels are ignored).
    pub fn same_presentation(&self, other: &DgaPresentation) -> bool {
        self.constants == other.constants && self.delta == other.delta
    }

    pub fn render(&self, a: &Multivector) -> String {
        render(a, |k| format!("L{}", k + 1))
    }

    pub fn cohomology_report(&self, k: usize) -> Result<CohomologyReport> {
        let h = self.cohomology(k)?;
        let n = self.n();
        Ok(CohomologyReport {
            degree: k,
            dim: h.dim,
            representatives: h
                .representatives
                .iter()
                .map(|v| self.render(&ExteriorElement::from_coeffs(n, k, v.clone())))
                .collect(),
        })
    }
}

/// Matrix of an odd derivation on `Λ^k`, given its values on degree-1 basis elements.
fn derivation_matrix(n: usize, k: usize, images: &[Multivector]) -> Matrix {
    let rows = if k < n { binomial(n, k + 1) } else { 0 };
    let cols: Vec<Vector> = subsets(n, k)
        .iter()
        .map(|s| {
            if k >= n {
                Vec::new()
            } else {
                extend_derivation(images, &ExteriorElement::basis_element(n, s)).into_coeffs()
            }
        })
        .collect();
    Matrix::from_cols(rows, &cols)
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyReport {
    pub degree: usize,
    pub dim: usize,
    pub representatives: Vec<String>,
}

/// Parses a multivector over the `ℓ` basis written as `L1^L3 - 1/2*i*L2^L4`.
pub fn parse_ell_multivector(text: &str, n: usize) -> Result<Multivector> {
    if text.contains(['e', 'E']) {
        return Err(Error::Input("ℓ multivectors use the symbols L1..Ln".into()));
    }
    crate::expr::parse_multivector(&text.replace('L', "e"), n)
}

/// Classical data for a complex structure `J`: the frame `T_j` of `g^{1,0}` (RREF
/// basis) and its dual coframe `ω^j`.
#[derive(Clone, Debug)]
pub struct ClassicalFrame {
    pub j: ClassicalComplexStructure,
    pub frame: Vec<Vector>,
    pub coframe: Vec<Vector>,
}

impl ClassicalFrame {
    pub fn new(j: &ClassicalComplexStructure) -> Result<Self> {
        let frame = j.holomorphic_vectors().vectors();
        Self::with_frame(j, frame)
    }

    pub fn with_frame(j: &ClassicalComplexStructure, frame: Vec<Vector>) -> Result<Self> {
        let coframe = j.dual_coframe(&frame)?;
        Ok(Self { j: j.clone(), frame, coframe })
    }

    fn n(&self) -> usize {
        self.j.dim()
    }

    /// `∂̄U = Σ_k [T̄_k, U]^{1,0} ⊗ ω̄^k` as pairs (vector in `g^{1,0}`, form in `g^{*(0,1)}`).
    pub fn delbar_vector(&self, u: &[G]) -> Vec<(Vector, Vector)> {
        let alg = self.j.algebra();
        self.frame
            .iter()
            .zip(&self.coframe)
            .map(|(t, w)| (self.j.project_10(&alg.bracket(&vec_conj(t), u)), vec_conj(w)))
            .filter(|(v, _)| !is_zero_vec(v))
            .collect()
    }

    /// `∂̄ω̄ = Σ_{a<b} dω̄(T̄_a, T̄_b) ω̄^a ∧ ω̄^b` as a 2-form.
    pub fn delbar_form(&self, w: &[G]) -> Form {
        let n = self.n();
        let dw = ce_d(self.j.algebra(), &Form::from_vector(w));
        let m = self.frame.len();
        let mut out = Form::zero(n, 2);
        for a in 0..m {
            for b in a + 1..m {
                let c = dw.evaluate(&[vec_conj(&self.frame[a]), vec_conj(&self.frame[b])]);
                if c.is_zero() {
                    continue;
                }
                let wa = Form::from_vector(&vec_conj(&self.coframe[a]));
                let wb = Form::from_vector(&vec_conj(&self.coframe[b]));
                out = out.add(&wa.wedge(&wb).scale(&c));
            }
        }
        out
    }

    /// `∂̄` of a degree-1 element `U + ω̄` of `ℓ = g^{1,0} ⊕ g^{*(0,1)}`, in `ℓ`-coordinates of `dga`.
    /// A mixed term `V ⊗ ω̄` is stored as `ω̄ ∧ V`, so that it evaluates on `(W̄, ν)` to `ω̄(W̄) ν(V)`.
    pub fn delbar_in(&self, dga: &DgaPresentation, u: &[G]) -> Result<Multivector> {
        let n = self.n();
        let double = dga.gcs().double();
        let (x, alpha) = u.split_at(n);
        let mut out = ExteriorElement::zero(n, 2);
        for (v, w) in self.delbar_vector(x) {
            let a = dga.element(&double.embed(&v, &zero_vec(n)))?;
            let b = dga.element(&double.embed(&zero_vec(n), &w))?;
            out = out.add(&b.wedge(&a));
        }
        let f = self.delbar_form(alpha);
        // a 2-form Σ c_ab e^a ∧ e^b on g^{0,1}: push each factor into ℓ
        let images: Vec<Multivector> = (0..n)
            .map(|i| dga.element(&double.embed(&zero_vec(n), &self.project_forms_01(&unit_vec(n, i)))))
            .collect::<Result<_>>()?;
        out = out.add(&push_forward(&f, &images));
        Ok(out)
    }

    /// Projection of a form onto `g^{*(0,1)}` along `g^{*(1,0)}`.
    fn project_forms_01(&self, alpha: &[G]) -> Vector {
        // α^{0,1}(X) = α(π^{0,1} X) = ½(α(X) + i α(JX))
        let jt = self.j.matrix().transpose();
        let ja = jt.mul_vec(alpha);
        let half = G::frac(1, 2);
        alpha.iter().zip(&ja).map(|(a, b)| &half * &(a + &b.times_i())).collect()
    }

    /// `∂̄` on all of `Λ•ℓ`, extended as a derivation from degree 1.
    pub fn delbar_extended(&self, dga: &DgaPresentation, a: &Multivector) -> Result<Multivector> {
        let ell = dga.gcs().ell_basis().to_vec();
        let images: Vec<Multivector> = ell.iter().map(|l| self.delbar_in(dga, l)).collect::<Result<_>>()?;
        Ok(extend_derivation(&images, a))
    }

    /// A bivector on `g_C` of type `(2,0)` in `ℓ`-coordinates of `dga`.
    pub fn bivector_in(&self, dga: &DgaPresentation, lambda: &Multivector) -> Result<Multivector> {
        let n = self.n();
        let double = dga.gcs().double();
        let images: Vec<Multivector> = (0..n)
            .map(|i| dga.element(&double.embed(&self.j.project_10(&unit_vec(n, i)), &zero_vec(n))))
            .collect::<Result<_>>()?;
        Ok(push_forward(lambda, &images))
    }

    /// `(2,0)`-part of the polyvector bracket `⟦V̄, Λ⟧` on `g_C` for every `V̄` in `g^{0,1}`.
    pub fn corollary_residues(&self, lambda: &Multivector) -> Vec<Multivector> {
        let n = self.n();
        let alg = self.j.algebra();
        let mut out = Vec::new();
        for t in &self.frame {
            let vbar = vec_conj(t);
            let mut acc = ExteriorElement::zero(n, 2);
            for (s, c) in lambda.terms() {
                let x = self.j.project_10(&unit_vec(n, s[0]));
                let y = self.j.project_10(&unit_vec(n, s[1]));
                let bx = self.j.project_10(&alg.bracket(&vbar, &x));
                let by = self.j.project_10(&alg.bracket(&vbar, &y));
                let term = ExteriorElement::from_vector(&bx)
                    .wedge(&ExteriorElement::from_vector(&y))
                    .add(&ExteriorElement::from_vector(&x).wedge(&ExteriorElement::from_vector(&by)));
                acc = acc.add(&term.scale(&c));
            }
            out.push(acc);
        }
        out
    }
}

/// Image of an exterior element under the map sending basis vector `i` to `images[i]` (degree 1).
fn push_forward(el: &ExteriorElement, images: &[Multivector]) -> Multivector {
    let target = images.first().map_or(el.dim(), ExteriorElement::dim);
    let mut m = Matrix::zeros(target, images.len());
    for (i, img) in images.iter().enumerate() {
        for (r, c) in img.coeffs().iter().enumerate() {
            m.set(r, i, c.clone());
        }
    }
    el.map_linear(&m)
}

/// Outcome of the holomorphic Poisson test, with the independent routes recorded.
#[derive(Clone, Debug, Serialize)]
pub struct PoissonReport {
    /// `δ̄Λ = 0` in the DGA of `J`.
    pub delbar_closed_via_dga: bool,
    /// The `(2,0)`-part of `⟦V̄, Λ⟧` vanishes for all `V̄ ∈ g^{0,1}`.
    pub delbar_closed_via_brackets: bool,
    /// `∂̄Λ = 0` through the classical expansion.
    pub delbar_closed_classical: bool,
    /// `⟦Λ, Λ⟧ = 0`.
    pub self_bracket_zero: bool,
    /// `ad_Λ` vanishes on `ℓ`.
    pub ad_zero: bool,
    pub holomorphic_poisson: bool,
}

pub fn is_holomorphic_poisson(j: &ClassicalComplexStructure, lambda: &Multivector) -> Result<PoissonReport> {
    if !j.is_type_20(lambda) {
        return Err(Error::Precondition("Λ is not of type (2,0)".into()));
    }
    let gcs = Gcs::from_complex(Double::new(j.algebra().clone()), j)?;
    let dga = DgaPresentation::new(&gcs);
    let frame = ClassicalFrame::new(j)?;
    let lam = frame.bivector_in(&dga, lambda)?;
    let via_dga = dga.differential(&lam).is_zero();
    let via_brackets = frame.corollary_residues(lambda).iter().all(ExteriorElement::is_zero);
    let classical = frame.delbar_extended(&dga, &lam)?.is_zero();
    let self_bracket = dga.schouten(&lam, &lam).is_zero();
    let n = dga.n();
    let ad_zero = (0..n).all(|a| dga.schouten(&lam, &ExteriorElement::basis_element(n, &[a])).is_zero());
    Ok(PoissonReport {
        delbar_closed_via_dga: via_dga,
        delbar_closed_via_brackets: via_brackets,
        delbar_closed_classical: classical,
        self_bracket_zero: self_bracket,
        ad_zero,
        holomorphic_poisson: via_dga && self_bracket,
    })
}

/// Both sides of the kernel criterion for the deformation of `J` by a holomorphic Poisson `Λ`.
#[derive(Clone, Debug, Serialize)]
pub struct PoissonKernelCheck {
    /// `δ̄` of the deformed structure annihilates the probe.
    pub deformed_closed: bool,
    /// The classical conditions on the probe.
    pub classical_conditions: bool,
}

impl PoissonKernelCheck {
    pub fn agrees(&self) -> bool {
        self.deformed_closed == self.classical_conditions
    }
}

pub enum PoissonProbe {
    /// A vector `U ∈ g^{1,0}`; classical side: `∂̄U = 0` and `⟦U, Λ⟧ = 0`.
    Vector(Vector),
    /// A form `ω̄ ∈ g^{*(0,1)}`, probed through `ω̄ + ι_{ω̄}Λ̄`; classical side: `∂̄ω̄ = 0` and `⟦Λ, ω̄⟧ = 0`.
    Form(Vector),
}

pub fn poisson_kernel_tests(j: &ClassicalComplexStructure, lambda: &Multivector, probe: &PoissonProbe) -> Result<PoissonKernelCheck> {
    let n = j.dim();
    let double = Double::new(j.algebra().clone());
    let classical = Gcs::from_complex(double.clone(), j)?;
    let dga_j = DgaPresentation::new(&classical);
    let frame = ClassicalFrame::new(j)?;
    let lam = frame.bivector_in(&dga_j, lambda)?;
    let deformed = Gcs::from_holomorphic_poisson(double.clone(), j, lambda)?;
    let dga_l = DgaPresentation::new(&deformed);
    match probe {
        PoissonProbe::Vector(u) => {
            let elem = double.embed(u, &zero_vec(n));
            let deformed_closed = dga_l.differential(&dga_l.element(&elem)?).is_zero();
            let x = dga_j.element(&elem)?;
            let classical_conditions = frame.delbar_in(&dga_j, &elem)?.is_zero() && dga_j.schouten(&x, &lam).is_zero();
            Ok(PoissonKernelCheck { deformed_closed, classical_conditions })
        }
        PoissonProbe::Form(w) => {
            let lbar = lambda.conj();
            let shifted = lbar.contract(w).into_coeffs();
            let elem = double.embed(&shifted, w);
            let deformed_closed = dga_l.differential(&dga_l.element(&elem)?).is_zero();
            let plain = double.embed(&zero_vec(n), w);
            let x = dga_j.element(&plain)?;
            let classical_conditions = frame.delbar_in(&dga_j, &plain)?.is_zero() && dga_j.schouten(&lam, &x).is_zero();
            Ok(PoissonKernelCheck { deformed_closed, classical_conditions })
        }
    }
}

/// Compares the DGA of `J` with that of `𝒥_Λ` through `U ↦ U`, `ω̄ ↦ ω̄ + ι_ω̄ Λ̄`:
/// both the pairing with the conjugate and the bracket constants must agree.
pub fn poisson_dga_unchanged(j: &ClassicalComplexStructure, lambda: &Multivector) -> Result<bool> {
    let n = j.dim();
    let double = Double::new(j.algebra().clone());
    let classical = Gcs::from_complex(double.clone(), j)?;
    let deformed = Gcs::from_holomorphic_poisson(double.clone(), j, lambda)?;
    let lbar = lambda.conj();
    let transport = |u: &[G]| -> Vector {
        let (x, alpha) = u.split_at(n);
        let shift = if is_zero_vec(alpha) { zero_vec(n) } else { lbar.contract(alpha).into_coeffs() };
        double.embed(&crate::linalg::vec_add(x, &shift), alpha)
    };
    let dga_j = DgaPresentation::new(&classical);
    let ell: Vec<Vector> = classical.ell_basis().to_vec();
    let images: Vec<Vector> = ell.iter().map(|l| transport(l)).collect();
    if images.iter().any(|v| !deformed.eigenspace().contains(v)) {
        return Ok(false);
    }
    let two = G::from_int(2);
    for a in 0..n {
        for b in 0..n {
            let g = &double.pairing(&images[a], &vec_conj(&images[b])) * &two;
            if &g != dga_j.gram().get(a, b) {
                return Ok(false);
            }
            let lhs = double.bracket(&images[a], &images[b]);
            let mut rhs = zero_vec(2 * n);
            for (r, c) in dga_j.bracket_constants(a, b).iter().enumerate() {
                crate::linalg::axpy(&mut rhs, c, &images[r]);
            }
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct SymplecticIsoReport {
    /// `φ δ̄ = d φ` on every basis monomial of every degree.
    pub chain_map: bool,
    /// `φ⟦a, b⟧ = ⟦φa, φb⟧_Ω` on basis monomials of degrees 1 and 2.
    pub bracket_map: bool,
    pub dga_betti: Vec<usize>,
    pub ce_betti: Vec<usize>,
}

impl SymplecticIsoReport {
    pub fn holds(&self) -> bool {
        self.chain_map && self.bracket_map && self.dga_betti == self.ce_betti
    }
}

/// Checks that `φ = 4 · (projection of ℓ to g*_C)`, extended multiplicatively,
/// intertwines `δ̄` with `d` and the Schouten bracket with
/// `⟦μ, ν⟧_Ω = (i/4) Ω([Ω⁻¹μ, Ω⁻¹ν])` on 1-forms.
pub fn symplectic_dga_iso_check(gcs: &Gcs, omega: &Form) -> Result<SymplecticIsoReport> {
    let alg = gcs.algebra();
    let n = alg.dim();
    if !ce_d(alg, omega).is_zero() {
        return Err(Error::Precondition("Ω is not closed".into()));
    }
    let om = form_matrix(omega);
    // X ↦ ι_X Ω has matrix omᵀ on coordinates
    let om_map = om.transpose();
    let om_inv = om_map.inverse().ok_or_else(|| Error::Precondition("Ω is degenerate".into()))?;
    let dga = DgaPresentation::new(gcs);
    let four = G::from_int(4);
    let phi_images: Vec<Form> = gcs
        .ell_basis()
        .iter()
        .map(|l| Form::from_vector(&l[n..]).scale(&four))
        .collect();
    let phi = |a: &Multivector| push_forward(a, &phi_images);
    let omega_bracket = |i: usize, j: usize| -> Form {
        let x = om_inv.mul_vec(&unit_vec(n, i));
        let y = om_inv.mul_vec(&unit_vec(n, j));
        let v = om_map.mul_vec(&alg.bracket(&x, &y));
        Form::from_vector(&v).scale(&G::complex(0, 1, 1, 4))
    };
    let mut chain_map = true;
    for k in 0..n {
        for s in subsets(n, k) {
            let a = ExteriorElement::basis_element(n, &s);
            if phi(&dga.differential(&a)) != ce_d(alg, &phi(&a)) {
                chain_map = false;
            }
        }
    }
    let mut bracket_map = true;
    let low: Vec<Multivector> = (1..=2.min(n))
        .flat_map(|k| subsets(n, k).into_iter().map(move |s| ExteriorElement::basis_element(n, &s)))
        .collect();
    for a in &low {
        for b in &low {
            let lhs = phi(&dga.schouten(a, b));
            let rhs = schouten_extension(&phi(a), &phi(b), &omega_bracket);
            if lhs != rhs {
                bracket_map = false;
            }
        }
    }
    let dga_betti = dga.betti_numbers()?;
    let ce_betti = crate::ce::betti_numbers(alg);
    Ok(SymplecticIsoReport { chain_map, bracket_map, dga_betti, ce_betti })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_double_element, parse_form};
    use crate::lie::{parse_salamon, LieAlgebra};

    fn el(s: &str, n: usize) -> Vector {
        parse_double_element(s, n).unwrap()
    }

    fn counter_structure() -> Gcs {
        let alg = parse_salamon("0,0,12,13").unwrap();
        let mut j = Matrix::zeros(4, 4);
        j.set(1, 0, G::from_int(1));
        j.set(0, 1, G::from_int(-1));
        let b = form_matrix(&parse_form("E3^E4", 4).unwrap());
        Gcs::from_components(Double::new(alg), &j, &b, &b).unwrap()
    }

    #[test]
    fn degree_one_differential_matches_pairing_formula() {
        let g = counter_structure();
        assert!(g.is_integrable());
        let dga = DgaPresentation::new(&g);
        let double = g.double();
        let bars = g.ellbar_basis();
        for (a, l) in g.ell_basis().iter().enumerate() {
            let du = dga.differential(&ExteriorElement::basis_element(4, &[a]));
            for p in 0..4 {
                for q in 0..4 {
                    let lhs = dga.evaluate_on_conjugates(&du, &[bars[p].clone(), bars[q].clone()]);
                    let rhs = -double.pairing(l, &double.bracket(&bars[p], &bars[q]));
                    assert_eq!(lhs, rhs, "a={a} p={p} q={q}");
                }
            }
        }
    }

    #[test]
    fn kernel_on_counterexample() {
        let g = counter_structure();
        let dga = DgaPresentation::new(&g);
        let expected = Subspace::span(8, &[el("E1 - i*E2", 4), el("e4 + i*E3", 4)]);
        assert_eq!(dga.degree_one_kernel(), expected);
        assert!(dga.delta_squared_vanishes());
    }

    #[test]
    fn abelian_algebra_has_zero_differential() {
        let d = Double::new(LieAlgebra::abelian(4));
        let g = Gcs::from_symplectic(d, &parse_form("E1^E2 + E3^E4", 4).unwrap()).unwrap();
        let dga = DgaPresentation::new(&g);
        assert!(dga.delta_matrices().iter().all(Matrix::is_zero));
        assert_eq!(dga.betti_numbers().unwrap(), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn kodaira_classical_forms_are_closed() {
        let alg = parse_salamon("0,0,0,12").unwrap();
        let j = ClassicalComplexStructure::from_pairs(alg.clone(), &[(0, 1), (2, 3)]).unwrap();
        let g = Gcs::from_complex(Double::new(alg), &j).unwrap();
        let dga = DgaPresentation::new(&g);
        for w in j.holomorphic_forms().vectors() {
            let wbar = vec_conj(&w);
            let x = dga.element(&g.double().embed(&zero_vec(4), &wbar)).unwrap();
            assert!(dga.differential(&x).is_zero());
        }
    }

    #[test]
    fn delbar_is_half_classical() {
        let alg = parse_salamon("0,0,0,0,12,13").unwrap();
        let j = ClassicalComplexStructure::from_pairs(alg.clone(), &[(0, 3), (1, 2), (4, 5)]).unwrap();
        let g = Gcs::from_complex(Double::new(alg), &j).unwrap();
        let dga = DgaPresentation::new(&g);
        let frame = ClassicalFrame::new(&j).unwrap();
        for (a, l) in g.ell_basis().iter().enumerate() {
            let lhs = dga.differential(&ExteriorElement::basis_element(6, &[a]));
            let rhs = frame.delbar_in(&dga, l).unwrap().scale(&G::frac(1, 2));
            assert_eq!(lhs, rhs, "basis element {a}");
        }
    }

    #[test]
    fn mc_and_deformation_agree_for_zero() {
        let g = counter_structure();
        let dga = DgaPresentation::new(&g);
        let zero = ExteriorElement::zero(4, 2);
        assert!(dga.maurer_cartan_check(&zero));
        assert!(dga.deformed(&zero).unwrap().same_presentation(&dga));
    }

    #[test]
    fn symplectic_iso_on_plane_and_filiform() {
        let d = Double::new(LieAlgebra::abelian(2));
        let om = parse_form("E1^E2", 2).unwrap();
        let g = Gcs::from_symplectic(d, &om).unwrap();
        assert!(symplectic_dga_iso_check(&g, &om).unwrap().holds());
        let alg = parse_salamon("0,0,12,13").unwrap();
        let om = parse_form("E2^E3 + E1^E4", 4).unwrap();
        let g = Gcs::from_symplectic(Double::new(alg), &om).unwrap();
        let r = symplectic_dga_iso_check(&g, &om).unwrap();
        assert!(r.chain_map, "{r:?}");
        assert!(r.bracket_map, "{r:?}");
        assert_eq!(r.dga_betti, r.ce_betti);
    }

    #[test]
    fn poisson_deformation_keeps_the_presentation() {
        let alg = parse_salamon("0,0,0,-12,31+42,41-32").unwrap();
        let j = ClassicalComplexStructure::from_pairs(alg, &[(0, 1), (2, 3), (4, 5)]).unwrap();
        let lam = crate::expr::parse_multivector(crate::catalog::T2_T3, 6).unwrap();
        assert!(is_holomorphic_poisson(&j, &lam).unwrap().holomorphic_poisson);
        assert!(poisson_dga_unchanged(&j, &lam).unwrap());
    }
}
