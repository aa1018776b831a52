use nilgcs::catalog::catalog;
use nilgcs::ce::d;
use nilgcs::exterior::ExteriorElement;
use nilgcs::linalg::{kernel, rref, solve_affine, AffineSolution, Matrix, Subspace, Vector};
use nilgcs::scalar::GaussianRational as G;
use nilgcs::{parse_salamon, DgaPresentation, Double, Gcs, LieAlgebra, Multivector};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = G> {
    (-3i64..=3, 1i64..=3, -2i64..=2).prop_map(|(a, b, c)| G::complex(a, b, c, 1))
}

fn real_scalar() -> impl Strategy<Value = G> {
    (-3i64..=3, 1i64..=2).prop_map(|(a, b)| G::frac(a, b))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, cols), rows).prop_map(move |rs| {
        let rs: Vec<Vector> = rs.iter().map(|r| r.iter().map(|&x| G::from_int(x)).collect()).collect();
        Matrix::from_rows(cols, &rs)
    })
}

fn vectors(ambient: usize, max: usize) -> impl Strategy<Value = Vec<Vector>> {
    prop::collection::vec(prop::collection::vec(-1i64..=1, ambient), 0..=max)
        .prop_map(|vs| vs.iter().map(|v| v.iter().map(|&x| G::from_int(x)).collect()).collect())
}

fn element(n: usize, k: usize) -> impl Strategy<Value = Multivector> {
    prop::collection::vec(scalar(), nilgcs::exterior::binomial(n, k)).prop_map(move |c| ExteriorElement::from_coeffs(n, k, c))
}

fn real_vector(len: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(real_scalar(), len)
}

const ALGEBRAS: [&str; 5] = ["0,0,0,12", "0,0,12,13", "0,0,0,0,12,14+25", "0,0,0,12,14+23,13+42", "0,0,0,0,13+42,14+23"];

fn algebra() -> impl Strategy<Value = LieAlgebra> {
    prop::sample::select(ALGEBRAS.to_vec()).prop_map(|s| parse_salamon(s).unwrap())
}

/// Integrable catalog structures, small enough for random sampling.
fn integrable_structures() -> Vec<Gcs> {
    let mut out = Vec::new();
    for e in catalog() {
        let alg = e.algebra().unwrap();
        for s in &e.structures {
            let g = s.build(&alg).unwrap();
            if g.is_integrable() {
                out.push(g);
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        if let Some(inv) = a.inv() {
            prop_assert_eq!(&a * &inv, G::from_int(1));
        }
    }

    #[test]
    fn rank_nullity(m in matrix(4, 6)) {
        let k = kernel(&m);
        prop_assert_eq!(m.rank() + k.dim(), 6);
        for v in k.vectors() {
            prop_assert!(m.mul_vec(&v).iter().all(|x| *x == G::from_int(0)));
        }
        let r = rref(&m);
        prop_assert_eq!(rref(&r.matrix).matrix, r.matrix);
    }

    #[test]
    fn affine_solutions_solve(m in matrix(5, 4), x in prop::collection::vec(-2i64..=2, 4), extra in matrix(5, 1)) {
        let x: Vector = x.iter().map(|&v| G::from_int(v)).collect();
        let b = m.mul_vec(&x);
        match solve_affine(&m, &b).unwrap() {
            AffineSolution::Feasible { particular, kernel } => {
                prop_assert_eq!(m.mul_vec(&particular), b);
                prop_assert_eq!(kernel.dim(), 4 - m.rank());
            }
            AffineSolution::Infeasible(_) => prop_assert!(false, "consistent system reported infeasible"),
        }
        // any right-hand side outside the column space comes with a rank certificate
        let rhs = extra.col(0);
        let consistent = m.hstack(&extra).rank() == m.rank();
        prop_assert_eq!(solve_affine(&m, &rhs).unwrap().is_feasible(), consistent);
    }

    #[test]
    fn dimension_formula(a in vectors(5, 4), b in vectors(5, 4)) {
        let sa = Subspace::span(5, &a);
        let sb = Subspace::span(5, &b);
        let sum = sa.sum(&sb).unwrap();
        let cap = sa.intersection(&sb).unwrap();
        prop_assert_eq!(sum.dim() + cap.dim(), sa.dim() + sb.dim());
        prop_assert!(sum.contains_subspace(&sa) && sa.contains_subspace(&cap) && sb.contains_subspace(&cap));
    }

    #[test]
    fn wedge_is_graded_commutative(a in element(5, 2), b in element(5, 1), c in element(5, 1)) {
        prop_assert_eq!(b.wedge(&c), c.wedge(&b).neg());
        prop_assert_eq!(a.wedge(&b), b.wedge(&a));
        prop_assert!(b.wedge(&b).is_zero());
        prop_assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
    }

    #[test]
    fn ce_differential_is_a_square_zero_derivation(g in algebra(), seed in 0usize..20) {
        let n = g.dim();
        let a = ExteriorElement::basis_element(n, &[seed % n]).add(&ExteriorElement::basis_element(n, &[(seed + 1) % n]));
        let b = ExteriorElement::basis_element(n, &[(seed / 3) % n, (seed / 3 + 2) % n]);
        let b = if b.degree() == 2 { b } else { ExteriorElement::basis_element(n, &[0, 1]) };
        prop_assert!(d(&g, &d(&g, &b)).is_zero());
        let lhs = d(&g, &a.wedge(&b));
        let rhs = d(&g, &a).wedge(&b).sub(&a.wedge(&d(&g, &b)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn courant_bracket_on_invariant_sections(g in algebra(), u in real_vector(12), v in real_vector(12), w in real_vector(12)) {
        let n = g.dim();
        let (u, v, w) = (u[..2 * n].to_vec(), v[..2 * n].to_vec(), w[..2 * n].to_vec());
        let dbl = Double::new(g);
        let uv = dbl.bracket(&u, &v);
        prop_assert_eq!(&uv, &dbl.bracket(&v, &u).iter().map(|x| -x).collect::<Vec<_>>());
        // ad-invariance of the pairing
        let lhs = &dbl.pairing(&uv, &w) + &dbl.pairing(&v, &dbl.bracket(&u, &w));
        prop_assert_eq!(lhs, G::from_int(0));
        // Jacobi
        let j = nilgcs::linalg::vec_add(
            &nilgcs::linalg::vec_add(&dbl.bracket(&u, &dbl.bracket(&v, &w)), &dbl.bracket(&v, &dbl.bracket(&w, &u))),
            &dbl.bracket(&w, &dbl.bracket(&u, &v)),
        );
        prop_assert!(nilgcs::linalg::is_zero_vec(&j));
    }

    #[test]
    fn salamon_round_trip(g in algebra()) {
        let again = parse_salamon(&g.to_salamon()).unwrap();
        prop_assert!(again.same_structure(&g));
        prop_assert!(g.check_jacobi().is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gcs_invariants(idx in 0usize..64, u in prop::collection::vec(scalar(), 12), v in prop::collection::vec(scalar(), 12)) {
        let all = integrable_structures();
        let gcs = &all[idx % all.len()];
        let n = gcs.n();
        let (u, v) = (&u[..2 * n], &v[..2 * n]);
        let dbl = gcs.double();
        // 𝒥 is orthogonal and squares to −1
        prop_assert_eq!(dbl.pairing(&gcs.apply(u), &gcs.apply(v)), dbl.pairing(u, v));
        prop_assert_eq!(gcs.apply(&gcs.apply(u)), u.iter().map(|x| -x).collect::<Vec<_>>());
        let split = gcs.split(u);
        let back = nilgcs::linalg::vec_add(&gcs.combine_ell(&split.ell), &gcs.combine_ellbar(&split.ellbar));
        prop_assert_eq!(back, u.to_vec());
    }

    #[test]
    fn dga_identities(idx in 0usize..64, a1 in prop::collection::vec(scalar(), 6), a2 in prop::collection::vec(scalar(), 15), b2 in prop::collection::vec(scalar(), 15)) {
        let all = integrable_structures();
        let gcs = &all[idx % all.len()];
        let dga = DgaPresentation::new(gcs);
        let n = dga.n();
        let one = ExteriorElement::from_coeffs(n, 1, a1[..n].to_vec());
        let m = nilgcs::exterior::binomial(n, 2);
        let two = ExteriorElement::from_coeffs(n, 2, a2[..m].to_vec());
        let gamma = ExteriorElement::from_coeffs(n, 2, b2[..m].to_vec());
        prop_assert!(dga.delta_squared_vanishes());
        prop_assert!(dga.differential(&dga.differential(&two)).is_zero());
        // derivation of the wedge product
        let lhs = dga.differential(&one.wedge(&two));
        let rhs = dga.differential(&one).wedge(&two).sub(&one.wedge(&dga.differential(&two)));
        prop_assert_eq!(lhs, rhs);
        // graded Leibniz for the Schouten bracket, and its graded symmetry
        let lhs = dga.differential(&dga.schouten(&one, &two));
        let rhs = dga.schouten(&dga.differential(&one), &two).add(&dga.schouten(&one, &dga.differential(&two)));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(dga.schouten(&one, &two), dga.schouten(&two, &one).neg());
        prop_assert_eq!(dga.schouten(&two, &gamma), dga.schouten(&gamma, &two));
        // graded Jacobi on degree-one elements
        let x = one.clone();
        let y = ExteriorElement::basis_element(n, &[0]);
        let z = ExteriorElement::basis_element(n, &[n - 1]);
        let jac = dga.schouten(&x, &dga.schouten(&y, &z))
            .add(&dga.schouten(&y, &dga.schouten(&z, &x)))
            .add(&dga.schouten(&z, &dga.schouten(&x, &y)));
        prop_assert!(jac.is_zero());
        // δ̄_Γ² = ad_MC(Γ), and MC(Γ) = 0 exactly when ℓ̄_Γ is involutive
        prop_assert!(dga.square_is_ad_maurer_cartan(&gamma).unwrap());
        prop_assert_eq!(dga.maurer_cartan_check(&gamma), dga.deformation_involutive(&gamma));
    }
}
