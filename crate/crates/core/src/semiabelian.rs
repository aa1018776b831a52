//! Admissible pairs, semi-abelian verdicts and the exact complement search.
//!
//! Given a `𝒥`-invariant maximally isotropic abelian ideal `K` and any real
//! complement `A0`, every complement of `K` is the graph `A_S = {a + S a}` of a
//! unique linear map `S: A0 → K`. Because `⟦K, K⟧ = 0` and `⟦K, 𝒢⟧ ⊆ K`, the
//! terms quadratic in `S` vanish, so closure, isotropy, `𝒥`-invariance and the
//! identity `⟦𝒥x, 𝒥y⟧ = ⟦x, y⟧` on `A_S` are all affine in the entries of `S`.
//! Feasibility is then a single exact linear solve.

use num_traits::Zero;
use serde::Serialize;

use crate::ce::d as ce_d;
use crate::dga::DgaPresentation;
use crate::double::{Double, DoubleSubspace};
use crate::error::{Error, Result};
use crate::exterior::Form;
use crate::expr::format_double_element;
use crate::gcs::{form_matrix, Gcs};
use crate::lie::LieAlgebra;
use crate::linalg::{
    is_zero_vec, kernel, solve_affine, unit_vec, vec_conj, vec_sub, zero_vec, AffineSolution, Matrix, RankCertificate,
    Subspace, Vector,
};
use crate::scalar::GaussianRational as G;

/// `𝒢 = A ⊕ K` with `A` a maximally isotropic subalgebra and `K` a maximally
/// isotropic abelian ideal, both real.
#[derive(Clone, Debug)]
pub struct AdmissiblePair {
    pub a: DoubleSubspace,
    pub k: DoubleSubspace,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum AdmissibilityFailure {
    NotReal(&'static str),
    NotMaxIsotropic(&'static str),
    NotSubalgebra { pair: (usize, usize) },
    NotIdeal { pair: (usize, usize) },
    NotAbelian { pair: (usize, usize) },
    NotComplementary,
}

impl std::fmt::Display for AdmissibilityFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::NotReal(s) => write!(f, "{s} is not real"),
            Self::NotMaxIsotropic(s) => write!(f, "{s} is not maximally isotropic"),
            Self::NotSubalgebra { pair } => write!(f, "A is not closed: bracket of basis {} and {}", pair.0 + 1, pair.1 + 1),
            Self::NotIdeal { pair } => write!(f, "K is not an ideal: basis {} against ambient {}", pair.0 + 1, pair.1 + 1),
            Self::NotAbelian { pair } => write!(f, "K is not abelian: basis {} and {}", pair.0 + 1, pair.1 + 1),
            Self::NotComplementary => write!(f, "A and K are not complementary"),
        }
    }
}

/// Checks every admissibility predicate, reporting the first failure.
pub fn check_admissible(double: &Double, a: &Subspace, k: &Subspace) -> std::result::Result<AdmissiblePair, AdmissibilityFailure> {
    let a = double.wrap(a.clone());
    let k = double.wrap(k.clone());
    for (name, s) in [("A", &a), ("K", &k)] {
        if !s.is_real() {
            return Err(AdmissibilityFailure::NotReal(name));
        }
        if !s.is_max_isotropic() {
            return Err(AdmissibilityFailure::NotMaxIsotropic(name));
        }
    }
    if let Some(pair) = a.subalgebra_violation() {
        return Err(AdmissibilityFailure::NotSubalgebra { pair });
    }
    if let Some(pair) = k.ideal_violation() {
        return Err(AdmissibilityFailure::NotIdeal { pair });
    }
    if let Some(pair) = k.abelian_violation() {
        return Err(AdmissibilityFailure::NotAbelian { pair });
    }
    let sum = a.subspace().sum(k.subspace()).expect("same ambient");
    if sum.dim() != 2 * double.n() {
        return Err(AdmissibilityFailure::NotComplementary);
    }
    Ok(AdmissiblePair { a, k })
}

#[derive(Clone, Debug)]
pub struct SemiAbelianReport {
    pub a_invariant: bool,
    pub k_invariant: bool,
    /// First basis pair of `A` with `⟦𝒥a, 𝒥b⟧ ≠ ⟦a, b⟧`.
    pub identity_violation: Option<(usize, usize)>,
    /// `𝔞 = ℓ ∩ A_C`.
    pub a_ell: Subspace,
    /// `𝔨 = ℓ ∩ K_C`.
    pub k_ell: Subspace,
}

impl SemiAbelianReport {
    pub fn holds(&self) -> bool {
        self.a_invariant && self.k_invariant && self.identity_violation.is_none()
    }
}

/// Semi-abelian test for an admissible pair; errors if `gcs` is not integrable.
pub fn check_semi_abelian(gcs: &Gcs, pair: &AdmissiblePair) -> Result<SemiAbelianReport> {
    if !gcs.is_integrable() {
        return Err(Error::Precondition("structure is not integrable".into()));
    }
    let double = gcs.double();
    let invariant = |s: &DoubleSubspace| s.subspace().is_invariant_under(gcs.matrix());
    let a_basis = pair.a.subspace().vectors();
    let mut identity_violation = None;
    'outer: for i in 0..a_basis.len() {
        for j in i + 1..a_basis.len() {
            let lhs = double.bracket(&gcs.apply(&a_basis[i]), &gcs.apply(&a_basis[j]));
            let rhs = double.bracket(&a_basis[i], &a_basis[j]);
            if lhs != rhs {
                identity_violation = Some((i, j));
                break 'outer;
            }
        }
    }
    let ell = gcs.eigenspace();
    Ok(SemiAbelianReport {
        a_invariant: invariant(&pair.a),
        k_invariant: invariant(&pair.k),
        identity_violation,
        a_ell: ell.intersection(pair.a.subspace())?,
        k_ell: ell.intersection(pair.k.subspace())?,
    })
}

/// Builds the pair from spans and runs the semi-abelian test; a non-admissible
/// pair is a precondition error, distinct from a `false` verdict.
pub fn check_semi_abelian_spans(gcs: &Gcs, a: &[Vector], k: &[Vector]) -> Result<(AdmissiblePair, SemiAbelianReport)> {
    let n2 = 2 * gcs.n();
    let pair = check_admissible(gcs.double(), &Subspace::span(n2, a), &Subspace::span(n2, k))
        .map_err(|f| Error::Precondition(format!("pair is not admissible: {f}")))?;
    let report = check_semi_abelian(gcs, &pair)?;
    Ok((pair, report))
}

#[derive(Clone, Debug, Serialize)]
pub struct SemiAbelianProperties {
    /// `ℓ = 𝔞 ⊕ 𝔨`.
    pub ell_splits: bool,
    pub a_abelian_subalgebra: bool,
    /// `𝔨` is abelian and `⟦ℓ, 𝔨⟧ ⊆ 𝔨`.
    pub k_abelian_ideal: bool,
    /// The pairing `𝔞 × 𝔨̄` is nondegenerate.
    pub a_dual_to_kbar: bool,
    /// The pairing `𝔨 × 𝔞̄` is nondegenerate.
    pub k_dual_to_abar: bool,
    pub delta_k_zero: bool,
    /// `δ̄𝔞 ⊆ 𝔞 ∧ 𝔨`.
    pub delta_a_in_a_wedge_k: bool,
    pub h1_dim: usize,
    pub k_dim: usize,
}

impl SemiAbelianProperties {
    pub fn holds(&self) -> bool {
        self.ell_splits
            && self.a_abelian_subalgebra
            && self.k_abelian_ideal
            && self.a_dual_to_kbar
            && self.k_dual_to_abar
            && self.delta_k_zero
            && self.delta_a_in_a_wedge_k
            && self.h1_dim >= self.k_dim
    }
}

/// The structural consequences of a semi-abelian pair on `ℓ` and its DGA.
pub fn semi_abelian_properties(gcs: &Gcs, pair: &AdmissiblePair) -> Result<SemiAbelianProperties> {
    let sa = check_semi_abelian(gcs, pair)?;
    if !sa.holds() {
        return Err(Error::Precondition("pair is not semi-abelian".into()));
    }
    let double = gcs.double();
    let n = gcs.n();
    let a_vecs = sa.a_ell.vectors();
    let k_vecs = sa.k_ell.vectors();
    let ell_splits = a_vecs.len() + k_vecs.len() == n && sa.a_ell.sum(&sa.k_ell)?.dim() == n;
    let all_zero = |xs: &[Vector], ys: &[Vector]| xs.iter().all(|x| ys.iter().all(|y| is_zero_vec(&double.bracket(x, y))));
    let a_abelian_subalgebra = all_zero(&a_vecs, &a_vecs);
    let ell = gcs.ell_basis();
    let k_abelian_ideal = all_zero(&k_vecs, &k_vecs)
        && k_vecs.iter().all(|k| ell.iter().all(|l| sa.k_ell.contains(&double.bracket(l, k))));
    let nondegenerate = |xs: &[Vector], ys: &[Vector]| {
        xs.len() == ys.len() && double.pairing_matrix(xs, ys).rank() == xs.len()
    };
    let kbar: Vec<Vector> = k_vecs.iter().map(|v| vec_conj(v)).collect();
    let abar: Vec<Vector> = a_vecs.iter().map(|v| vec_conj(v)).collect();
    let dga = DgaPresentation::new(gcs);
    let delta_k_zero = k_vecs.iter().all(|k| dga.differential(&dga.element(k).expect("𝔨 ⊆ ℓ")).is_zero());
    let a_el: Vec<_> = a_vecs.iter().map(|v| dga.element(v).expect("𝔞 ⊆ ℓ")).collect();
    let k_el: Vec<_> = k_vecs.iter().map(|v| dga.element(v).expect("𝔨 ⊆ ℓ")).collect();
    let mixed: Vec<Vector> = a_el
        .iter()
        .flat_map(|a| k_el.iter().map(move |k| a.wedge(k).into_coeffs()))
        .collect();
    let mixed_span = Subspace::span(crate::exterior::binomial(n, 2), &mixed);
    let delta_a_in_a_wedge_k = a_el.iter().all(|a| mixed_span.contains(dga.differential(a).coeffs()));
    let h1_dim = dga.cohomology(1)?.dim;
    Ok(SemiAbelianProperties {
        ell_splits,
        a_abelian_subalgebra,
        k_abelian_ideal,
        a_dual_to_kbar: nondegenerate(&a_vecs, &kbar),
        k_dual_to_abar: nondegenerate(&k_vecs, &abar),
        delta_k_zero,
        delta_a_in_a_wedge_k,
        h1_dim,
        k_dim: k_vecs.len(),
    })
}

fn real_part(v: &[G]) -> Vector {
    v.iter().map(|x| x.real_part()).collect()
}

fn imag_part(v: &[G]) -> Vector {
    v.iter().map(|x| x.imag_part()).collect()
}

/// Real span of a conjugation-invariant complex subspace.
fn real_form(s: &Subspace) -> Subspace {
    let vs: Vec<Vector> = s.vectors().iter().flat_map(|v| [real_part(v), imag_part(v)]).collect();
    Subspace::span(s.ambient(), &vs)
}

/// Real/imaginary parts of the `ℓ` basis, the standard basis of `𝒢`, and their `𝒥`-images.
pub fn default_pool(gcs: &Gcs) -> Vec<Vector> {
    let n2 = 2 * gcs.n();
    let mut pool: Vec<Vector> = gcs.ell_basis().iter().flat_map(|l| [real_part(l), imag_part(l)]).collect();
    pool.extend((0..n2).map(|i| unit_vec(n2, i)));
    let images: Vec<Vector> = pool.iter().map(|v| gcs.apply(v)).collect();
    pool.extend(images);
    pool.retain(|v| !is_zero_vec(v));
    pool
}

/// `ker δ̄` on degree 1 and the candidate kernels `K` it admits.
#[derive(Clone, Debug)]
pub struct KernelAnalysis {
    /// `ker δ̄ ⊆ ℓ`, as a subspace of the complexified double.
    pub kernel: Subspace,
    /// `dim_C 𝔨` required of any semi-abelian pair.
    pub required: usize,
    /// `dim ker δ̄ = required`, so `𝔨 = ker δ̄` is the only option.
    pub forced: bool,
    pub candidates: Vec<Subspace>,
    /// Forced kernel that fails an admissibility predicate, with the reason.
    pub rejected: Option<(Subspace, String)>,
}

/// Every semi-abelian `𝔨` lies in `ker δ̄` and has dimension `n/2`.
pub fn forced_kernel_candidates(gcs: &Gcs, pool: &[Vector]) -> Result<KernelAnalysis> {
    if !gcs.is_integrable() {
        return Err(Error::Precondition("structure is not integrable".into()));
    }
    let n = gcs.n();
    let dga = DgaPresentation::new(gcs);
    let kernel = dga.degree_one_kernel();
    let required = n / 2;
    let mut out = KernelAnalysis { kernel: kernel.clone(), required, forced: kernel.dim() == required, candidates: Vec::new(), rejected: None };
    if kernel.dim() < required {
        return Ok(out);
    }
    let kmax = real_form(&kernel.sum(&kernel.conjugate())?);
    if out.forced {
        let k = gcs.double().wrap(kmax.clone());
        let reason = if !k.is_max_isotropic() {
            Some("not maximally isotropic".to_string())
        } else if let Some((i, j)) = k.ideal_violation() {
            Some(format!("not an ideal: basis {} against ambient {}", i + 1, j + 1))
        } else if let Some((i, j)) = k.abelian_violation() {
            Some(format!("not abelian: basis {} and {}", i + 1, j + 1))
        } else {
            None
        };
        match reason {
            Some(r) => out.rejected = Some((kmax, r)),
            None => out.candidates.push(kmax),
        }
        return Ok(out);
    }
    out.candidates = pool_candidates(gcs, &kmax, pool, required);
    Ok(out)
}

const MAX_CANDIDATES: usize = 4096;

/// Sums of `count` `𝒥`-invariant isotropic planes `span{v, 𝒥v}` inside `kmax`.
fn pool_candidates(gcs: &Gcs, kmax: &Subspace, pool: &[Vector], count: usize) -> Vec<Subspace> {
    let double = gcs.double();
    let n2 = kmax.ambient();
    let mut planes: Vec<Subspace> = Vec::new();
    for v in pool {
        if !kmax.contains(v) {
            continue;
        }
        let p = Subspace::span(n2, &[v.clone(), gcs.apply(v)]);
        if p.dim() == 2 && double.wrap(p.clone()).is_isotropic() && !planes.contains(&p) {
            planes.push(p);
        }
    }
    let mut found: Vec<Subspace> = Vec::new();
    let mut stack: Vec<(usize, Subspace)> = vec![(0, Subspace::zero(n2))];
    while let Some((start, acc)) = stack.pop() {
        if found.len() >= MAX_CANDIDATES {
            break;
        }
        if acc.dim() == 2 * count {
            let k = double.wrap(acc.clone());
            if k.is_ideal() && !found.contains(&acc) {
                found.push(acc);
            }
            continue;
        }
        for idx in (start..planes.len()).rev() {
            let next = acc.sum(&planes[idx]).expect("same ambient");
            if next.dim() != acc.dim() + 2 {
                continue;
            }
            let w = double.wrap(next.clone());
            if w.is_isotropic() && w.is_abelian() {
                stack.push((idx + 1, next));
            }
        }
    }
    found
}

/// The linear system for graph complements `A_S` of `K` over `A0`.
#[derive(Clone, Debug)]
pub struct ComplementSystem {
    gcs: Gcs,
    a0: Vec<Vector>,
    k: Vec<Vector>,
    /// Inverse of the basis matrix with columns `[A0 | K]`.
    split: Matrix,
    pub matrix: Matrix,
    pub rhs: Vector,
}

impl ComplementSystem {
    pub fn new(gcs: &Gcs, k: &Subspace, a0: &Subspace) -> Result<Self> {
        let double = gcs.double();
        let n = gcs.n();
        let kd = double.wrap(k.clone());
        if !k.is_real() || !a0.is_real() {
            return Err(Error::Precondition("K and A0 must be real".into()));
        }
        if !kd.is_max_isotropic() || !kd.is_ideal() || !kd.is_abelian() {
            return Err(Error::Precondition("K must be a maximally isotropic abelian ideal".into()));
        }
        if !k.is_invariant_under(gcs.matrix()) {
            return Err(Error::Precondition("K must be 𝒥-invariant".into()));
        }
        if a0.dim() != n || k.sum(a0)?.dim() != 2 * n {
            return Err(Error::Precondition("A0 must be a complement of K".into()));
        }
        let a0 = a0.vectors();
        let kv = k.vectors();
        let mut cols = a0.clone();
        cols.extend(kv.iter().cloned());
        let split = Matrix::from_cols(2 * n, &cols).inverse().expect("complementary bases");
        let mut sys = Self { gcs: gcs.clone(), a0, k: kv, split, matrix: Matrix::zeros(0, 0), rhs: Vec::new() };
        let unknowns = n * n;
        let r0 = sys.residual(&zero_vec(unknowns));
        let cols: Vec<Vector> = (0..unknowns).map(|u| vec_sub(&sys.residual(&unit_vec(unknowns, u)), &r0)).collect();
        sys.matrix = Matrix::from_cols(r0.len(), &cols);
        sys.rhs = r0.iter().map(|x| -x).collect();
        Ok(sys)
    }

    fn n(&self) -> usize {
        self.a0.len()
    }

    /// Graph basis `a_i + Σ_j s[i n + j] k_j`.
    pub fn graph(&self, s: &[G]) -> Vec<Vector> {
        let n = self.n();
        (0..n)
            .map(|i| {
                let mut x = self.a0[i].clone();
                for j in 0..n {
                    crate::linalg::axpy(&mut x, &s[i * n + j], &self.k[j]);
                }
                x
            })
            .collect()
    }

    /// `w_K − S(w_A0)`: zero iff `w ∈ A_S`.
    fn membership(&self, s: &[G], w: &[G]) -> Vector {
        let n = self.n();
        let c = self.split.mul_vec(w);
        (0..n)
            .map(|j| {
                let mut acc = c[n + j].clone();
                for i in 0..n {
                    acc -= &(&c[i] * &s[i * n + j]);
                }
                acc
            })
            .collect()
    }

    /// Closure, isotropy, `𝒥`-invariance and the abelian identity, concatenated.
    pub fn residual(&self, s: &[G]) -> Vector {
        let double = self.gcs.double();
        let x = self.graph(s);
        let jx: Vec<Vector> = x.iter().map(|v| self.gcs.apply(v)).collect();
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                out.extend(self.membership(s, &double.bracket(&x[i], &x[j])));
            }
        }
        for i in 0..n {
            for j in i..n {
                out.push(double.pairing(&x[i], &x[j]));
            }
        }
        for v in &jx {
            out.extend(self.membership(s, v));
        }
        for i in 0..n {
            for j in i + 1..n {
                out.extend(vec_sub(&double.bracket(&jx[i], &jx[j]), &double.bracket(&x[i], &x[j])));
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub enum ComplementResult {
    /// `S` (row-major, `s[i n + j]`) and the complement `A_S`.
    Feasible { s: Vector, a: Subspace },
    Infeasible(RankCertificate),
}

/// Decides whether some complement `A_S` of `K` makes `(A_S, K)` a semi-abelian pair.
pub fn complement_feasibility(gcs: &Gcs, k: &Subspace, a0: &Subspace) -> Result<ComplementResult> {
    let sys = ComplementSystem::new(gcs, k, a0)?;
    match solve_affine(&sys.matrix, &sys.rhs)? {
        AffineSolution::Infeasible(cert) => Ok(ComplementResult::Infeasible(cert)),
        AffineSolution::Feasible { particular, .. } => {
            if !is_zero_vec(&sys.residual(&particular)) {
                return Err(Error::Internal("complement system is not affine in S".into()));
            }
            let a = Subspace::span(2 * gcs.n(), &sys.graph(&particular));
            Ok(ComplementResult::Feasible { s: particular, a })
        }
    }
}

#[derive(Clone, Debug)]
pub enum ImpossibilityCertificate {
    /// `dim ker δ̄ < n/2` on degree 1.
    KernelTooSmall { kernel_dim: usize, required: usize },
    /// The only possible `K` fails an admissibility predicate.
    ForcedKernelRejected { k: Subspace, reason: String },
    /// The only possible `K` has no admissible complement.
    RankDeficient { k: Subspace, a0: Subspace, certificate: RankCertificate },
}

#[derive(Clone, Debug)]
pub enum SemiAbelianVerdict {
    SemiAbelian { pair: AdmissiblePair, a_ell: Subspace, k_ell: Subspace },
    NotFoundInPool { pool_size: usize, candidates_tried: usize },
    Impossible(ImpossibilityCertificate),
}

impl SemiAbelianVerdict {
    pub fn status(&self) -> &'static str {
        match self {
            Self::SemiAbelian { .. } => "SEMI_ABELIAN",
            Self::NotFoundInPool { .. } => "NOT_FOUND_IN_POOL",
            Self::Impossible(_) => "IMPOSSIBLE",
        }
    }

    pub fn is_semi_abelian(&self) -> bool {
        matches!(self, Self::SemiAbelian { .. })
    }

    pub fn to_doc(&self) -> VerdictDoc {
        let mut doc = VerdictDoc { status: self.status().to_string(), ..VerdictDoc::default() };
        match self {
            Self::SemiAbelian { pair, a_ell, k_ell } => {
                doc.pair = Some(PairDoc { a: render_subspace(pair.a.subspace()), k: render_subspace(pair.k.subspace()) });
                doc.ell_decomposition = Some(EllDoc { a: render_subspace(a_ell), k: render_subspace(k_ell) });
            }
            Self::NotFoundInPool { pool_size, candidates_tried } => {
                doc.reason = Some(format!("{candidates_tried} candidate kernels from a pool of {pool_size} vectors admit no complement"));
            }
            Self::Impossible(cert) => match cert {
                ImpossibilityCertificate::KernelTooSmall { kernel_dim, required } => {
                    doc.reason = Some(format!("dim ker δ̄ = {kernel_dim} < {required}"));
                }
                ImpossibilityCertificate::ForcedKernelRejected { k, reason } => {
                    doc.pair = Some(PairDoc { a: Vec::new(), k: render_subspace(k) });
                    doc.reason = Some(format!("forced K rejected: {reason}"));
                }
                ImpossibilityCertificate::RankDeficient { k, a0, certificate } => {
                    doc.pair = Some(PairDoc { a: render_subspace(a0), k: render_subspace(k) });
                    doc.certificate = Some(certificate.clone());
                    doc.reason = Some("forced K has no admissible complement".into());
                }
            },
        }
        doc
    }
}

pub fn render_subspace(s: &Subspace) -> Vec<String> {
    s.vectors().iter().map(|v| format_double_element(v)).collect()
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PairDoc {
    #[serde(rename = "A")]
    pub a: Vec<String>,
    #[serde(rename = "K")]
    pub k: Vec<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct EllDoc {
    pub a: Vec<String>,
    pub k: Vec<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerdictDoc {
    pub status: String,
    pub pair: Option<PairDoc>,
    pub ell_decomposition: Option<EllDoc>,
    pub certificate: Option<RankCertificate>,
    pub reason: Option<String>,
}

/// Forced-kernel analysis followed by the complement solve for each candidate `K`.
pub fn search_semi_abelian(gcs: &Gcs, pool: Option<&[Vector]>) -> Result<SemiAbelianVerdict> {
    let default;
    let pool = match pool {
        Some(p) => p,
        None => {
            default = default_pool(gcs);
            &default
        }
    };
    let analysis = forced_kernel_candidates(gcs, pool)?;
    if analysis.kernel.dim() < analysis.required {
        return Ok(SemiAbelianVerdict::Impossible(ImpossibilityCertificate::KernelTooSmall {
            kernel_dim: analysis.kernel.dim(),
            required: analysis.required,
        }));
    }
    if let Some((k, reason)) = analysis.rejected {
        return Ok(SemiAbelianVerdict::Impossible(ImpossibilityCertificate::ForcedKernelRejected { k, reason }));
    }
    let mut last_cert = None;
    for k in &analysis.candidates {
        // every complement of K is a graph over any fixed complement, so one A0 suffices
        let a0 = k.complement();
        match complement_feasibility(gcs, k, &a0)? {
            ComplementResult::Feasible { a, .. } => {
                let pair = check_admissible(gcs.double(), &a, k)
                    .map_err(|f| Error::Internal(format!("solved complement is not admissible: {f}")))?;
                let report = check_semi_abelian(gcs, &pair)?;
                if !report.holds() || !semi_abelian_properties(gcs, &pair)?.holds() {
                    return Err(Error::Internal("solved complement fails re-verification".into()));
                }
                return Ok(SemiAbelianVerdict::SemiAbelian { pair, a_ell: report.a_ell, k_ell: report.k_ell });
            }
            ComplementResult::Infeasible(cert) => last_cert = Some((k.clone(), a0, cert)),
        }
    }
    if analysis.forced {
        if let Some((k, a0, certificate)) = last_cert {
            return Ok(SemiAbelianVerdict::Impossible(ImpossibilityCertificate::RankDeficient { k, a0, certificate }));
        }
    }
    Ok(SemiAbelianVerdict::NotFoundInPool { pool_size: pool.len(), candidates_tried: analysis.candidates.len() })
}

/// `X ↦ ι_X Ω` as a matrix on coordinates.
pub fn omega_map(omega: &Form) -> Matrix {
    form_matrix(omega).transpose()
}

#[derive(Clone, Debug)]
pub enum SymplecticVerdict {
    SemiAbelian { b: Subspace, h: Subspace, pair: AdmissiblePair, a_ell: Subspace, k_ell: Subspace },
    /// No decomposition exists; `certificate` is present when the forced `𝔥` admits no complement.
    Impossible { reason: String, certificate: Option<RankCertificate> },
    NotFoundInPool { candidates_tried: usize },
}

impl SymplecticVerdict {
    pub fn status(&self) -> &'static str {
        match self {
            Self::SemiAbelian { .. } => "SEMI_ABELIAN",
            Self::NotFoundInPool { .. } => "NOT_FOUND_IN_POOL",
            Self::Impossible { .. } => "IMPOSSIBLE",
        }
    }

    pub fn to_doc(&self) -> SymplecticDoc {
        let mut doc = SymplecticDoc { status: self.status().to_string(), ..SymplecticDoc::default() };
        match self {
            Self::SemiAbelian { b, h, pair, a_ell, k_ell } => {
                doc.b = Some(render_vectors(b));
                doc.h = Some(render_vectors(h));
                doc.pair = Some(PairDoc { a: render_subspace(pair.a.subspace()), k: render_subspace(pair.k.subspace()) });
                doc.ell_decomposition = Some(EllDoc { a: render_subspace(a_ell), k: render_subspace(k_ell) });
            }
            Self::Impossible { reason, certificate } => {
                doc.reason = Some(reason.clone());
                doc.certificate = certificate.clone();
            }
            Self::NotFoundInPool { candidates_tried } => {
                doc.reason = Some(format!("{candidates_tried} candidate ideals admit no complement"));
            }
        }
        doc
    }
}

fn render_vectors(s: &Subspace) -> Vec<String> {
    s.vectors().iter().map(|v| crate::expr::format_multivector(&crate::exterior::ExteriorElement::from_vector(v))).collect()
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SymplecticDoc {
    pub status: String,
    pub b: Option<Vec<String>>,
    pub h: Option<Vec<String>>,
    pub pair: Option<PairDoc>,
    pub ell_decomposition: Option<EllDoc>,
    pub certificate: Option<RankCertificate>,
    pub reason: Option<String>,
}

/// `C = {X : d(ι_X Ω) = 0}`.
pub fn closure_space(alg: &LieAlgebra, omega: &Form) -> Subspace {
    let n = alg.dim();
    let om = omega_map(omega);
    let cols: Vec<Vector> = (0..n)
        .map(|i| ce_d(alg, &Form::from_vector(&om.col(i))).into_coeffs())
        .collect();
    kernel(&Matrix::from_cols(crate::exterior::binomial(n, 2), &cols))
}

/// Searches `g = 𝔟 ⋉ 𝔥` with `𝔟` an abelian Lagrangian subalgebra and `𝔥 ⊆ C`
/// an abelian Lagrangian ideal, then verifies the induced pair
/// `A = 𝔟 ⊕ Ω(𝔟)`, `K = 𝔥 ⊕ Ω(𝔥)`.
pub fn symplectic_semi_abelian(alg: &LieAlgebra, omega: &Form) -> Result<SymplecticVerdict> {
    let n = alg.dim();
    if omega.degree() != 2 || omega.dim() != n {
        return Err(Error::Input("Ω must be a 2-form on the algebra".into()));
    }
    if !ce_d(alg, omega).is_zero() {
        return Err(Error::Precondition("Ω is not closed".into()));
    }
    let om = omega_map(omega);
    if om.inverse().is_none() {
        return Err(Error::Precondition("Ω is degenerate".into()));
    }
    let gcs = Gcs::from_symplectic(Double::new(alg.clone()), omega)?;
    let c = closure_space(alg, omega);
    let half = n / 2;
    if c.dim() < half {
        return Ok(SymplecticVerdict::Impossible {
            reason: format!("dim {{X : d(ι_X Ω) = 0}} = {} < {half}", c.dim()),
            certificate: None,
        });
    }
    let forced = c.dim() == half;
    let candidates: Vec<Subspace> = if forced {
        vec![c.clone()]
    } else {
        let mut pool = c.vectors();
        pool.extend((0..n).map(|i| unit_vec(n, i)).filter(|v| c.contains(v)));
        let mut out: Vec<Subspace> = Vec::new();
        for idx in crate::exterior::subsets(pool.len(), half) {
            let s = Subspace::span(n, &idx.iter().map(|&i| pool[i].clone()).collect::<Vec<_>>());
            if s.dim() == half && !out.contains(&s) {
                out.push(s);
            }
        }
        out
    };
    let lagrangian = |s: &Subspace| {
        let vs = s.vectors();
        vs.iter().all(|x| vs.iter().all(|y| pair_omega(&om, x, y).is_zero()))
    };
    let mut last_cert = None;
    let mut forced_reason = None;
    for h in &candidates {
        let hv = h.vectors();
        let abelian = hv.iter().all(|x| hv.iter().all(|y| is_zero_vec(&alg.bracket(x, y))));
        let ideal = hv.iter().all(|x| (0..n).all(|i| h.contains(&alg.bracket(&unit_vec(n, i), x))));
        if !(abelian && ideal && lagrangian(h)) {
            forced_reason = Some("the closure space is not an abelian Lagrangian ideal".to_string());
            continue;
        }
        let b0 = h.complement().vectors();
        let m = hv.len();
        let residual = |s: &[G]| -> Vector {
            let x: Vec<Vector> = (0..b0.len())
                .map(|i| {
                    let mut v = b0[i].clone();
                    for j in 0..m {
                        crate::linalg::axpy(&mut v, &s[i * m + j], &hv[j]);
                    }
                    v
                })
                .collect();
            let mut out = Vec::new();
            for i in 0..x.len() {
                for j in i + 1..x.len() {
                    out.extend(alg.bracket(&x[i], &x[j]));
                    out.push(pair_omega(&om, &x[i], &x[j]));
                }
            }
            out
        };
        let unknowns = b0.len() * m;
        let r0 = residual(&zero_vec(unknowns));
        let cols: Vec<Vector> = (0..unknowns).map(|u| vec_sub(&residual(&unit_vec(unknowns, u)), &r0)).collect();
        let rhs: Vector = r0.iter().map(|x| -x).collect();
        let sol = if r0.is_empty() {
            AffineSolution::Feasible { particular: zero_vec(unknowns), kernel: Subspace::full(unknowns) }
        } else {
            solve_affine(&Matrix::from_cols(r0.len(), &cols), &rhs)?
        };
        match sol {
            AffineSolution::Infeasible(cert) => last_cert = Some(cert),
            AffineSolution::Feasible { particular, .. } => {
                if !is_zero_vec(&residual(&particular)) {
                    return Err(Error::Internal("complement system is not affine".into()));
                }
                let bvecs: Vec<Vector> = (0..b0.len())
                    .map(|i| {
                        let mut v = b0[i].clone();
                        for j in 0..m {
                            crate::linalg::axpy(&mut v, &particular[i * m + j], &hv[j]);
                        }
                        v
                    })
                    .collect();
                let b = Subspace::span(n, &bvecs);
                let lift = |s: &Subspace| -> Vec<Vector> {
                    s.vectors()
                        .iter()
                        .flat_map(|x| [gcs.double().embed(x, &zero_vec(n)), gcs.double().embed(&zero_vec(n), &om.mul_vec(x))])
                        .collect()
                };
                let Ok((pair, report)) = check_semi_abelian_spans(&gcs, &lift(&b), &lift(h)) else {
                    continue;
                };
                if report.holds() {
                    return Ok(SymplecticVerdict::SemiAbelian { b, h: h.clone(), pair, a_ell: report.a_ell, k_ell: report.k_ell });
                }
            }
        }
    }
    if forced {
        return Ok(SymplecticVerdict::Impossible {
            reason: forced_reason.unwrap_or_else(|| "the forced ideal admits no abelian Lagrangian complement".into()),
            certificate: last_cert,
        });
    }
    Ok(SymplecticVerdict::NotFoundInPool { candidates_tried: candidates.len() })
}

/// `Ω(x, y)` given the matrix of `X ↦ ι_X Ω`.
fn pair_omega(om: &Matrix, x: &[G], y: &[G]) -> G {
    let ix = om.mul_vec(x);
    ix.iter().zip(y).fold(G::zero(), |acc, (a, b)| &acc + &(a * b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_double_element, parse_form};
    use crate::gcs::ClassicalComplexStructure;
    use crate::lie::parse_salamon;

    fn span(items: &[&str], n: usize) -> Subspace {
        let vs: Vec<Vector> = items.iter().map(|s| parse_double_element(s, n).unwrap()).collect();
        Subspace::span(2 * n, &vs)
    }

    fn type_one(alg: &str) -> Gcs {
        let alg = parse_salamon(alg).unwrap();
        let mut j = Matrix::zeros(4, 4);
        j.set(1, 0, G::from_int(1));
        j.set(0, 1, G::from_int(-1));
        let b = form_matrix(&parse_form("E3^E4", 4).unwrap());
        Gcs::from_components(Double::new(alg), &j, &b, &b).unwrap()
    }

    #[test]
    fn standard_pair_is_admissible() {
        let d = Double::new(parse_salamon("0,0,12,13").unwrap());
        let g = d.g().subspace().clone();
        let gs = d.g_dual().subspace().clone();
        assert!(check_admissible(&d, &g, &gs).is_ok());
        assert!(matches!(check_admissible(&d, &g, &g), Err(AdmissibilityFailure::NotIdeal { .. })));
    }

    #[test]
    fn heisenberg_type_one_pair() {
        let gcs = type_one("0,0,0,12");
        let (pair, rep) = check_semi_abelian_spans(&gcs, &span(&["e1", "e2", "e4", "E3"], 4).vectors(), &span(&["E1", "E2", "E4", "e3"], 4).vectors()).unwrap();
        assert!(rep.holds());
        assert!(semi_abelian_properties(&gcs, &pair).unwrap().holds());
        assert!(search_semi_abelian(&gcs, None).unwrap().is_semi_abelian());
    }

    #[test]
    fn filiform_type_one_is_impossible() {
        let gcs = type_one("0,0,12,13");
        let analysis = forced_kernel_candidates(&gcs, &default_pool(&gcs)).unwrap();
        assert_eq!(analysis.kernel, span(&["E1 - i*E2", "e4 + i*E3"], 4));
        assert!(analysis.forced);
        assert_eq!(analysis.candidates, vec![span(&["e4", "E1", "E2", "E3"], 4)]);
        let a0 = span(&["E4", "e1", "e2", "e3"], 4);
        let res = complement_feasibility(&gcs, &analysis.candidates[0], &a0).unwrap();
        assert!(matches!(res, ComplementResult::Infeasible(_)));
        let v = search_semi_abelian(&gcs, None).unwrap();
        assert_eq!(v.status(), "IMPOSSIBLE");
        let doc = v.to_doc();
        let cert = doc.certificate.unwrap();
        assert!(cert.system_rank < cert.augmented_rank);
    }

    #[test]
    fn abelian_complex_structures_are_semi_abelian() {
        let alg = parse_salamon("0,0,0,12").unwrap();
        let j = ClassicalComplexStructure::from_pairs(alg.clone(), &[(0, 1), (2, 3)]).unwrap();
        let gcs = Gcs::from_complex(Double::new(alg), &j).unwrap();
        let d = gcs.double();
        let pair = check_admissible(d, d.g().subspace(), d.g_dual().subspace()).unwrap();
        assert!(check_semi_abelian(&gcs, &pair).unwrap().holds());
        assert!(search_semi_abelian(&gcs, None).unwrap().is_semi_abelian());
    }

    #[test]
    fn symplectic_search() {
        let alg = parse_salamon("0,0,0,0,12,14+25").unwrap();
        let om = parse_form("E1^E3 + E2^E6 + E4^E5", 6).unwrap();
        match symplectic_semi_abelian(&alg, &om).unwrap() {
            SymplecticVerdict::SemiAbelian { b, h, a_ell, .. } => {
                let e = |i: usize| unit_vec(6, i - 1);
                assert_eq!(b, Subspace::span(6, &[e(2), e(3), e(4)]));
                assert_eq!(h, Subspace::span(6, &[e(1), e(5), e(6)]));
                assert_eq!(a_ell, span(&["e2 - i*E6", "e3 + i*E1", "e4 - i*E5"], 6));
            }
            other => panic!("{other:?}"),
        }
        let fil = parse_salamon("0,0,12,13").unwrap();
        let om = parse_form("E2^E3 + E1^E4", 4).unwrap();
        assert_eq!(symplectic_semi_abelian(&fil, &om).unwrap().status(), "IMPOSSIBLE");
        let plane = LieAlgebra::abelian(2);
        assert!(matches!(
            symplectic_semi_abelian(&plane, &parse_form("E1^E2", 2).unwrap()).unwrap(),
            SymplecticVerdict::SemiAbelian { .. }
        ));
    }
}
