//! Bundled nilpotent algebras, structures on them, and the verdicts the engine
//! is expected to reproduce.

use serde::Serialize;

use crate::error::Result;
use crate::exterior::Multivector;
use crate::expr::{parse_double_element, parse_form, parse_multivector};
use crate::gcs::{form_matrix, ClassicalComplexStructure, Gcs, GcsDoc};
use crate::lie::{parse_salamon, LieAlgebra};
use crate::linalg::{Matrix, Vector};
use crate::scalar::GaussianRational as G;

#[derive(Clone, Debug, Serialize)]
pub struct Expected {
    pub integrable: bool,
    pub gcs_type: usize,
    /// Status of the pool search, when the catalog records one.
    pub search: Option<&'static str>,
    /// Verdict of the semi-abelian test on the stored pair.
    pub pair_semi_abelian: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StoredPair {
    #[serde(rename = "A")]
    pub a: Vec<&'static str>,
    #[serde(rename = "K")]
    pub k: Vec<&'static str>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogStructure {
    pub label: &'static str,
    pub note: &'static str,
    pub doc: GcsDoc,
    pub pair: Option<StoredPair>,
    pub expected: Expected,
}

impl CatalogStructure {
    pub fn build(&self, alg: &LieAlgebra) -> Result<Gcs> {
        self.doc.build(Some(alg))
    }

    /// Stored pair as vectors of the double.
    pub fn pair_vectors(&self, n: usize) -> Option<Result<(Vec<Vector>, Vec<Vector>)>> {
        self.pair.as_ref().map(|p| {
            let parse = |xs: &[&str]| xs.iter().map(|s| parse_double_element(s, n)).collect::<Result<Vec<_>>>();
            Ok((parse(&p.a)?, parse(&p.k)?))
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub salamon: String,
    pub note: &'static str,
    pub structures: Vec<CatalogStructure>,
}

impl CatalogEntry {
    pub fn algebra(&self) -> Result<LieAlgebra> {
        Ok(parse_salamon(&self.salamon)?.with_name(self.name))
    }
}

/// `ℝ^{2m+1} ⊕ h_{2n+1}`: `2n` Heisenberg generators, `2m+1` abelian directions,
/// then the center with `de = e^{12} + e^{34} + … + e^{(2n−1)(2n)}`.
pub fn heisenberg_sum(m: usize, n: usize) -> LieAlgebra {
    let dim = 2 * n + 2 * m + 2;
    let top: Vec<String> = (0..n).map(|k| format!("{}{}", atom(2 * k + 1), atom(2 * k + 2))).collect();
    let mut entries = vec!["0".to_string(); dim - 1];
    entries.push(if top.is_empty() { "0".into() } else { top.join("+") });
    parse_salamon(&entries.join(",")).expect("generator yields a Lie algebra")
}

/// Consecutive pairs `J e_{2k−1} = e_{2k}`: an abelian complex structure on `ℝ^{2m+1} ⊕ h_{2n+1}`.
pub fn heisenberg_sum_complex(m: usize, n: usize) -> ClassicalComplexStructure {
    let alg = heisenberg_sum(m, n);
    let pairs: Vec<(usize, usize)> = (0..alg.dim() / 2).map(|k| (2 * k, 2 * k + 1)).collect();
    ClassicalComplexStructure::from_pairs(alg, &pairs).expect("consecutive pairs are integrable")
}

fn atom(i: usize) -> String {
    if i < 10 {
        i.to_string()
    } else {
        format!("[{i}]")
    }
}

/// `J` with `J e_a = s e_b`, `J e_b = −s e_a` for each `(a, b, s)` (1-based).
pub fn pair_matrix(n: usize, pairs: &[(usize, usize, i64)]) -> Matrix {
    let mut j = Matrix::zeros(n, n);
    for &(a, b, s) in pairs {
        j.set(b - 1, a - 1, G::from_int(s));
        j.set(a - 1, b - 1, G::from_int(-s));
    }
    j
}

fn complex(alg: &str, pairs: &[(usize, usize, i64)], poisson: Option<&str>) -> GcsDoc {
    let n = alg.split(',').count();
    let lam: Option<Multivector> = poisson.map(|p| parse_multivector(p, n).expect("catalog bivector parses"));
    GcsDoc::complex(alg, &pair_matrix(n, pairs), lam.as_ref())
}

fn symplectic(alg: &str, omega: &str) -> GcsDoc {
    let n = alg.split(',').count();
    GcsDoc::symplectic(alg, &parse_form(omega, n).expect("catalog form parses"))
}

/// Block structure with `J` on the given pairs, and `B = β`, `Π = π` on the rest.
fn mixed(alg: &str, pairs: &[(usize, usize, i64)], beta: &str, pi: &str) -> GcsDoc {
    let n = alg.split(',').count();
    let b = form_matrix(&parse_form(beta, n).expect("catalog form parses"));
    let p = form_matrix(&parse_multivector(pi, n).expect("catalog bivector parses"));
    GcsDoc::components(alg, &pair_matrix(n, pairs), &b, &p)
}

fn expect(integrable: bool, gcs_type: usize, search: Option<&'static str>, pair: Option<bool>) -> Expected {
    Expected { integrable, gcs_type, search, pair_semi_abelian: pair }
}

fn pair(a: &[&'static str], k: &[&'static str]) -> Option<StoredPair> {
    Some(StoredPair { a: a.to_vec(), k: k.to_vec() })
}

const SEMI: Option<&str> = Some("SEMI_ABELIAN");
const IMPOSSIBLE: Option<&str> = Some("IMPOSSIBLE");
const NOT_FOUND: Option<&str> = Some("NOT_FOUND_IN_POOL");

pub fn catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();

    let s = "0,0,0,0";
    out.push(CatalogEntry {
        name: "abelian-4",
        salamon: s.into(),
        note: "abelian algebra",
        structures: vec![
            CatalogStructure {
                label: "abelian-complex",
                note: "standard complex structure",
                doc: complex(s, &[(1, 2, 1), (3, 4, 1)], None),
                pair: pair(&["e1", "e2", "e3", "e4"], &["E1", "E2", "E3", "E4"]),
                expected: expect(true, 2, SEMI, Some(true)),
            },
            CatalogStructure {
                label: "symplectic",
                note: "standard symplectic form",
                doc: symplectic(s, "E1^E2 + E3^E4"),
                pair: None,
                expected: expect(true, 0, SEMI, None),
            },
            CatalogStructure {
                label: "type-one",
                note: "complex on e1,e2 and symplectic on e3,e4",
                doc: mixed(s, &[(1, 2, 1)], "E3^E4", "e3^e4"),
                pair: None,
                expected: expect(true, 1, SEMI, None),
            },
        ],
    });

    let s = "0,0,0,12";
    out.push(CatalogEntry {
        name: "kodaira-thurston",
        salamon: s.into(),
        note: "ℝ ⊕ h3",
        structures: vec![
            CatalogStructure {
                label: "kodaira-complex",
                note: "abelian complex structure",
                doc: complex(s, &[(1, 2, 1), (3, 4, 1)], None),
                pair: pair(&["e1", "e2", "e3", "e4"], &["E1", "E2", "E3", "E4"]),
                expected: expect(true, 2, SEMI, Some(true)),
            },
            CatalogStructure {
                label: "type-one",
                note: "J on e1,e2 with B = e^34 and Π = e_34",
                doc: mixed(s, &[(1, 2, 1)], "E3^E4", "e3^e4"),
                pair: pair(&["e1", "e2", "e4", "E3"], &["E1", "E2", "E4", "e3"]),
                expected: expect(true, 1, SEMI, Some(true)),
            },
            CatalogStructure {
                label: "symplectic",
                note: "Ω = e^13 + e^24",
                doc: symplectic(s, "E1^E3 + E2^E4"),
                pair: None,
                expected: expect(true, 0, SEMI, None),
            },
        ],
    });

    let s = "0,0,12,13";
    out.push(CatalogEntry {
        name: "filiform-4",
        salamon: s.into(),
        note: "3-step filiform",
        structures: vec![
            CatalogStructure {
                label: "type-one",
                note: "J on e1,e2 with B = e^34 and Π = e_34; isotropy forces the spinor family to this member",
                doc: mixed(s, &[(1, 2, 1)], "E3^E4", "e3^e4"),
                pair: None,
                expected: expect(true, 1, IMPOSSIBLE, None),
            },
            CatalogStructure {
                label: "symplectic",
                note: "Ω = e^14 + e^23",
                doc: symplectic(s, "E1^E4 + E2^E3"),
                pair: None,
                expected: expect(true, 0, IMPOSSIBLE, None),
            },
            CatalogStructure {
                label: "symplectic-shifted",
                note: "Ω = e^14 + e^23 + e^12",
                doc: symplectic(s, "E1^E4 + E2^E3 + E1^E2"),
                pair: None,
                expected: expect(true, 0, IMPOSSIBLE, None),
            },
            CatalogStructure {
                label: "type-one-twisted",
                note: "J on e1,e2 with B = e^34 and Π = 2 e_34",
                doc: mixed(s, &[(1, 2, 1)], "1/2*E3^E4", "2*e3^e4"),
                pair: None,
                expected: expect(true, 1, IMPOSSIBLE, None),
            },
            CatalogStructure {
                label: "almost-symplectic",
                note: "Ω = e^13 + e^24 is nondegenerate but not closed",
                doc: symplectic(s, "E1^E3 + E2^E4"),
                pair: None,
                expected: expect(false, 0, None, None),
            },
            CatalogStructure {
                label: "almost-complex",
                note: "J on e1,e2 and e3,e4; the Nijenhuis tensor is nonzero",
                doc: mixed(s, &[(1, 2, 1), (3, 4, 1)], "0", "0"),
                pair: None,
                expected: expect(false, 2, None, None),
            },
        ],
    });

    let s = "0,0,0,0,0,12";
    out.push(CatalogEntry {
        name: "h3-plus-r3",
        salamon: s.into(),
        note: "ℝ³ ⊕ h3",
        structures: vec![
            CatalogStructure {
                label: "abelian-complex",
                note: "consecutive pairs",
                doc: complex(s, &[(1, 2, 1), (3, 4, 1), (5, 6, 1)], None),
                pair: pair(&["e1", "e2", "e3", "e4", "e5", "e6"], &["E1", "E2", "E3", "E4", "E5", "E6"]),
                expected: expect(true, 3, SEMI, Some(true)),
            },
            CatalogStructure {
                label: "symplectic",
                note: "Ω = e^16 + e^23 + e^45",
                doc: symplectic(s, "E1^E6 + E2^E3 + E4^E5"),
                pair: None,
                expected: expect(true, 0, SEMI, None),
            },
        ],
    });

    let s = "0,0,0,0,0,12+34";
    out.push(CatalogEntry {
        name: "h5-plus-r",
        salamon: s.into(),
        note: "ℝ ⊕ h5",
        structures: vec![
            CatalogStructure {
                label: "type-two",
                note: "J on e1..e4 with B = e^56 and Π = e_56; note ι_{e4}(e^12 + e^34) = −e^3, so the bracket of e4 with e^6 is −e^3",
                doc: mixed(s, &[(1, 2, 1), (3, 4, 1)], "E5^E6", "e5^e6"),
                pair: pair(&["e1", "e2", "e3", "e4", "e6", "E5"], &["E1", "E2", "E3", "E4", "E6", "e5"]),
                expected: expect(true, 2, SEMI, Some(true)),
            },
            CatalogStructure {
                label: "abelian-complex",
                note: "consecutive pairs",
                doc: complex(s, &[(1, 2, 1), (3, 4, 1), (5, 6, 1)], None),
                pair: pair(&["e1", "e2", "e3", "e4", "e5", "e6"], &["E1", "E2", "E3", "E4", "E5", "E6"]),
                expected: expect(true, 3, SEMI, Some(true)),
            },
        ],
    });

    let s = "0,0,0,0,12,34";
    out.push(CatalogEntry {
        name: "h3-plus-h3",
        salamon: s.into(),
        note: "h3 ⊕ h3",
        structures: vec![CatalogStructure {
            label: "abelian-complex",
            note: "consecutive pairs",
            doc: complex(s, &[(1, 2, 1), (3, 4, 1), (5, 6, 1)], None),
            pair: pair(&["e1", "e2", "e3", "e4", "e5", "e6"], &["E1", "E2", "E3", "E4", "E5", "E6"]),
            expected: expect(true, 3, SEMI, Some(true)),
        }],
    });

    let s = "0,0,0,0,13+42,14+23";
    out.push(CatalogEntry {
        name: "iwasawa",
        salamon: s.into(),
        note: "complex Heisenberg algebra",
        structures: vec![
            CatalogStructure {
                label: "parallelizable",
                note: "bi-invariant complex structure, not abelian",
                doc: complex(s, &[(1, 2, 1), (3, 4, 1), (5, 6, 1)], None),
                pair: None,
                expected: expect(true, 3, SEMI, None),
            },
            CatalogStructure {
                label: "abelian-complex",
                note: "J e1 = e3, J e2 = e4, J e5 = e6",
                doc: complex(s, &[(1, 3, 1), (2, 4, 1), (5, 6, 1)], None),
                pair: pair(&["e1", "e2", "e3", "e4", "e5", "e6"], &["E1", "E2", "E3", "E4", "E5", "E6"]),
                expected: expect(true, 3, SEMI, Some(true)),
            },
        ],
    });

    let s = "0,0,0,0,12,14+23";
    out.push(CatalogEntry {
        name: "two-step-6",
        salamon: s.into(),
        note: "3-step, two-dimensional center",
        structures: vec![CatalogStructure {
            label: "abelian-complex",
            note: "J e1 = −e2, J e3 = e4, J e5 = e6",
            doc: complex(s, &[(1, 2, -1), (3, 4, 1), (5, 6, 1)], None),
            pair: pair(&["e1", "e2", "e3", "e4", "e5", "e6"], &["E1", "E2", "E3", "E4", "E5", "E6"]),
            expected: expect(true, 3, SEMI, Some(true)),
        }],
    });

    let s = "0,0,0,12,14+23,13+42";
    out.push(CatalogEntry {
        name: "three-step",
        salamon: s.into(),
        note: "3-step nilpotent, original coframe",
        structures: vec![CatalogStructure {
            label: "abelian-complex",
            note: "J e1 = −e2, J e3 = e4, J e5 = e6",
            doc: complex(s, &[(1, 2, -1), (3, 4, 1), (5, 6, 1)], None),
            pair: pair(&["e1", "e2", "e3", "e4", "e5", "e6"], &["E1", "E2", "E3", "E4", "E5", "E6"]),
            expected: expect(true, 3, SEMI, Some(true)),
        }],
    });

    let s = "0,0,0,-12,31+42,41-32";
    out.push(CatalogEntry {
        name: "three-step-rebased",
        salamon: s.into(),
        note: "3-step nilpotent after f^4 = −e^4, f^5 = −e^6, f^6 = e^5",
        structures: vec![
            CatalogStructure {
                label: "abelian-complex",
                note: "consecutive pairs",
                doc: complex(s, &[(1, 2, 1), (3, 4, 1), (5, 6, 1)], None),
                pair: pair(&["e1", "e2", "e3", "e4", "e5", "e6"], &["E1", "E2", "E3", "E4", "E5", "E6"]),
                expected: expect(true, 3, SEMI, Some(true)),
            },
            CatalogStructure {
                label: "poisson",
                note: "deformed by Λ = T2 ∧ T3",
                doc: complex(s, &[(1, 2, 1), (3, 4, 1), (5, 6, 1)], Some(T2_T3)),
                pair: None,
                expected: expect(true, 1, NOT_FOUND, None),
            },
        ],
    });

    let s = "0,0,0,0,12,14+25";
    out.push(CatalogEntry {
        name: "symplectic-6",
        salamon: s.into(),
        note: "symplectic, no invariant complex structure in the catalog",
        structures: vec![CatalogStructure {
            label: "symplectic",
            note: "Ω = e^13 + e^26 + e^45",
            doc: symplectic(s, "E1^E3 + E2^E6 + E4^E5"),
            pair: pair(&["e2", "e3", "e4", "E6", "E1", "E5"], &["e1", "e5", "e6", "E3", "E4", "E2"]),
            expected: expect(true, 0, SEMI, Some(true)),
        }],
    });

    let s = "0,0,0,0,12,13";
    out.push(CatalogEntry {
        name: "two-step-13",
        salamon: s.into(),
        note: "2-step, three-dimensional center",
        structures: vec![
            CatalogStructure {
                label: "nilpotent-complex",
                note: "J e1 = e4, J e2 = e3, J e5 = e6; nilpotent, not abelian",
                doc: complex(s, &[(1, 4, 1), (2, 3, 1), (5, 6, 1)], None),
                pair: pair(&["e2", "e3", "E1", "E4", "E5", "E6"], &["e1", "e4", "e5", "e6", "E2", "E3"]),
                expected: expect(true, 3, SEMI, Some(true)),
            },
            CatalogStructure {
                label: "poisson",
                note: "deformed by Λ = T2 ∧ T3 with T2 = ½(e2 − i e3), T3 = ½(e5 − i e6)",
                doc: complex(s, &[(1, 4, 1), (2, 3, 1), (5, 6, 1)], Some(T2_T3_SIX)),
                pair: pair(&["e2", "e3", "E1", "E4", "E5", "E6"], &["e1", "e4", "e5", "e6", "E2", "E3"]),
                expected: expect(true, 1, SEMI, Some(true)),
            },
        ],
    });

    out
}

/// `¼(e3 − i e4) ∧ (e5 − i e6)`.
pub(crate) const T2_T3: &str = "1/4*e3^e5 - 1/4*i*e3^e6 - 1/4*i*e4^e5 - 1/4*e4^e6";
/// `¼(e2 − i e3) ∧ (e5 − i e6)`.
const T2_T3_SIX: &str = "1/4*e2^e5 - 1/4*i*e2^e6 - 1/4*i*e3^e5 - 1/4*e3^e6";

/// The 4-dimensional catalog entries.
pub fn four_dimensional() -> Vec<CatalogEntry> {
    catalog().into_iter().filter(|e| e.salamon.split(',').count() == 4).collect()
}

pub fn find(name_or_salamon: &str) -> Option<CatalogEntry> {
    let key = name_or_salamon.trim().trim_start_matches('(').trim_end_matches(')');
    catalog().into_iter().find(|e| e.name == key || e.salamon == key)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_matches_named_algebras() {
        let cases = [((0, 1), "0,0,0,12"), ((1, 1), "0,0,0,0,0,12"), ((0, 2), "0,0,0,0,0,12+34")];
        for ((m, n), s) in cases {
            assert!(heisenberg_sum(m, n).same_structure(&parse_salamon(s).unwrap()), "{s}");
            assert!(heisenberg_sum_complex(m, n).is_abelian());
        }
        assert_eq!(heisenberg_sum(1, 5).dim(), 14);
        assert_eq!(heisenberg_sum(1, 5).to_salamon().split(',').last().unwrap(), "12+34+56+78+9[10]");
    }

    #[test]
    fn entries_parse_and_build() {
        for e in catalog() {
            let alg = e.algebra().unwrap();
            assert!(alg.is_nilpotent(), "{}", e.name);
            for s in &e.structures {
                let g = s.build(&alg).unwrap_or_else(|err| panic!("{} {}: {err}", e.name, s.label));
                assert_eq!(g.is_integrable(), s.expected.integrable, "{} {}", e.name, s.label);
                assert_eq!(g.gcs_type(), s.expected.gcs_type, "{} {}", e.name, s.label);
            }
        }
    }
}
