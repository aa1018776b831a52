//! Fixtures shared by the criterion benches.

use nilgcs::catalog::find;
use nilgcs::Gcs;

/// Builds the catalog structure `label` on the entry `name`.
pub fn structure(name: &str, label: &str) -> Gcs {
    let entry = find(name).expect("catalog entry");
    let alg = entry.algebra().expect("catalog algebra parses");
    let s = entry.structures.iter().find(|s| s.label == label).expect("catalog structure");
    s.build(&alg).expect("catalog structure builds")
}

#[cfg(test)]
mod tests {
    #[test]
    fn fixtures_build() {
        assert!(super::structure("iwasawa", "parallelizable").is_integrable());
    }
}
