use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nilgcs::catalog;
use nilgcs::ce::{betti_numbers, ce_cohomology};
use nilgcs::dga::parse_ell_multivector;
use nilgcs::expr::{format_form, parse_double_element, parse_form};
use nilgcs::gcs::GcsDoc;
use nilgcs::lie::{parse_algebra_file, parse_salamon_unchecked};
use nilgcs::semiabelian::{check_semi_abelian_spans, semi_abelian_properties, render_subspace, search_semi_abelian, symplectic_semi_abelian};
use nilgcs::{DgaPresentation, Error, Gcs, LieAlgebra, Result, Vector};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "nilgcs", version, about = "Exact invariant generalized complex structures on nilpotent Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args)]
struct AlgebraArg {
    /// Structure equations (e.g. `0,0,12,13`), a catalog name, or an algebra file.
    #[arg(long)]
    algebra: String,
}

#[derive(Args)]
struct GcsArgs {
    /// GCS JSON document.
    #[arg(long)]
    gcs: PathBuf,
    /// Overrides the algebra named in the document.
    #[arg(long)]
    algebra: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse structure equations and print the canonical form.
    Parse(AlgebraArg),
    /// Report every basis triple where the Jacobi identity fails.
    CheckJacobi(AlgebraArg),
    /// Chevalley–Eilenberg cohomology.
    CeCohomology {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Check that the document defines an almost generalized complex structure.
    GcsValidate(GcsArgs),
    /// Courant integrability of the +i eigenspace.
    GcsIntegrable(GcsArgs),
    /// Type: half the corank of the Poisson block.
    GcsType(GcsArgs),
    /// Cohomology of the differential Gerstenhaber algebra.
    DgaCohomology {
        #[command(flatten)]
        gcs: GcsArgs,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Maurer–Cartan equation for a bivector over the ℓ basis.
    McCheck {
        #[command(flatten)]
        gcs: GcsArgs,
        /// E.g. `L1^L2 - 1/2*i*L3^L4`.
        #[arg(long)]
        gamma: String,
    },
    /// Deformed differential and its cohomology.
    Deform {
        #[command(flatten)]
        gcs: GcsArgs,
        #[arg(long)]
        gamma: String,
    },
    /// Test a stored pair, or search for a semi-abelian pair.
    SemiAbelian {
        #[command(flatten)]
        gcs: GcsArgs,
        /// JSON file `{"A": [...], "K": [...]}`.
        #[arg(long, conflicts_with = "search", required_unless_present = "search")]
        pair: Option<PathBuf>,
        #[arg(long)]
        search: bool,
        /// Candidate vectors: a JSON array or one element per line.
        #[arg(long)]
        pool: Option<PathBuf>,
    },
    /// Semi-abelian decomposition of a symplectic structure.
    SymplecticSemiAbelian {
        #[arg(long)]
        algebra: Option<String>,
        /// The symplectic form, e.g. `E1^E4 + E2^E3`.
        #[arg(long, required_unless_present = "gcs")]
        omega: Option<String>,
        /// GCS document with a `symplectic` entry.
        #[arg(long)]
        gcs: Option<PathBuf>,
    },
    /// Run every reproduction check and regenerate catalog verdicts.
    VerifyPaper,
}

struct Outcome {
    value: Value,
    /// `false` maps to exit status 1.
    verdict: bool,
}

fn ok(value: Value) -> Result<Outcome> {
    Ok(Outcome { value, verdict: true })
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn load_algebra(source: &str, checked: bool) -> Result<LieAlgebra> {
    let path = Path::new(source);
    if path.is_file() {
        return parse_algebra_file(&read(path)?)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Input(format!("{source}: no algebra in file")));
    }
    if let Some(entry) = catalog::find(source) {
        return entry.algebra();
    }
    if checked {
        nilgcs::parse_salamon(source)
    } else {
        parse_salamon_unchecked(source)
    }
}

fn load_gcs(args: &GcsArgs) -> Result<Gcs> {
    let doc = GcsDoc::from_json(&read(&args.gcs)?)?;
    let alg = args.algebra.as_deref().map(|a| load_algebra(a, true)).transpose()?;
    doc.build(alg.as_ref())
}

fn load_vectors(text: &str, n: usize) -> Result<Vec<Vector>> {
    let items: Vec<String> = if text.trim_start().starts_with('[') {
        serde_json::from_str(text)?
    } else {
        text.lines()
            .map(|l| l.split('#').next().unwrap_or("").trim().to_string())
            .filter(|l| !l.is_empty())
            .collect()
    };
    items.iter().map(|s| parse_double_element(s, n)).collect()
}

fn load_pair(path: &Path, n: usize) -> Result<(Vec<Vector>, Vec<Vector>)> {
    let v: Value = serde_json::from_str(&read(path)?)?;
    let side = |key: &str| -> Result<Vec<Vector>> {
        let items = v[key].as_array().ok_or_else(|| Error::Input(format!("pair file needs an array \"{key}\"")))?;
        items
            .iter()
            .map(|x| x.as_str().ok_or_else(|| Error::Input("pair entries must be strings".into())).and_then(|s| parse_double_element(s, n)))
            .collect()
    };
    Ok((side("A")?, side("K")?))
}

fn cohomology_value(dims: Vec<usize>, degree: Option<usize>, reps: impl Fn(usize) -> Result<Value>) -> Result<Value> {
    match degree {
        Some(k) => reps(k),
        None => Ok(json!({ "betti": dims })),
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Parse(a) => {
            let alg = load_algebra(&a.algebra, true)?;
            let series = alg.lower_central_series();
            ok(json!({
                "salamon": alg.to_salamon(),
                "dim": alg.dim(),
                "nilpotent": alg.is_nilpotent(),
                "step": series.nilpotency_step,
                "lower_central_series": series.chain.iter().map(|s| s.dim()).collect::<Vec<_>>(),
            }))
        }
        Command::CheckJacobi(a) => {
            let alg = load_algebra(&a.algebra, false)?;
            let bad: Vec<String> = alg.check_jacobi().iter().map(|(i, j, k)| format!("(e{i}, e{j}, e{k})")).collect();
            Ok(Outcome { verdict: bad.is_empty(), value: json!({ "jacobi": bad.is_empty(), "violations": bad }) })
        }
        Command::CeCohomology { algebra, degree } => {
            let alg = load_algebra(&algebra.algebra, true)?;
            let v = cohomology_value(betti_numbers(&alg), *degree, |k| {
                let h = ce_cohomology(&alg, k)?;
                let n = alg.dim();
                let reps: Vec<String> = h
                    .representatives
                    .iter()
                    .map(|c| format_form(&nilgcs::Form::from_coeffs(n, k, c.clone())))
                    .collect();
                Ok(json!({ "degree": k, "dim": h.dim, "representatives": reps }))
            })?;
            ok(v)
        }
        Command::GcsValidate(g) => match load_gcs(g) {
            Ok(gcs) => {
                let check = gcs.check_invariants();
                Ok(Outcome {
                    verdict: check.is_ok(),
                    value: json!({ "valid": check.is_ok(), "reason": check.err().map(|e| e.to_string()) }),
                })
            }
            Err(e @ (Error::NotAlmostGcs(_) | Error::InvalidComplexStructure(_) | Error::Degenerate(_))) => {
                Ok(Outcome { verdict: false, value: json!({ "valid": false, "reason": e.to_string() }) })
            }
            Err(e) => Err(e),
        },
        Command::GcsIntegrable(g) => {
            let gcs = load_gcs(g)?;
            let failure = gcs.integrability_failure();
            let value = json!({
                "integrable": failure.is_none(),
                "failure": failure.map(|f| json!({
                    "pair": [f.pair.0 + 1, f.pair.1 + 1],
                    "offending": nilgcs::expr::format_double_element(&f.offending),
                })),
            });
            Ok(Outcome { verdict: gcs.is_integrable(), value })
        }
        Command::GcsType(g) => {
            let gcs = load_gcs(g)?;
            ok(json!({ "type": gcs.gcs_type(), "integrable": gcs.is_integrable() }))
        }
        Command::DgaCohomology { gcs, degree } => {
            let gcs = load_gcs(gcs)?;
            let dga = DgaPresentation::new(&gcs);
            let v = cohomology_value(dga.betti_numbers()?, *degree, |k| Ok(serde_json::to_value(dga.cohomology_report(k)?)?))?;
            ok(v)
        }
        Command::McCheck { gcs, gamma } => {
            let gcs = load_gcs(gcs)?;
            let dga = DgaPresentation::new(&gcs);
            let gamma = parse_ell_multivector(gamma, gcs.n())?;
            let mc = dga.maurer_cartan(&gamma);
            Ok(Outcome {
                verdict: mc.is_zero(),
                value: json!({
                    "maurer_cartan": mc.is_zero(),
                    "residual": dga.render(&mc),
                    "involutive": dga.deformation_involutive(&gamma),
                }),
            })
        }
        Command::Deform { gcs, gamma } => {
            let gcs = load_gcs(gcs)?;
            let dga = DgaPresentation::new(&gcs);
            let gamma = parse_ell_multivector(gamma, gcs.n())?;
            let deformed = dga.deformed(&gamma)?;
            let n = gcs.n();
            let generators: Vec<Value> = (0..n)
                .map(|a| {
                    let x = nilgcs::exterior::ExteriorElement::basis_element(n, &[a]);
                    json!({ "generator": format!("L{}", a + 1), "differential": dga.render(&deformed.differential(&x)) })
                })
                .collect();
            let squares_to_zero = deformed.delta_squared_vanishes();
            let value = json!({
                "maurer_cartan": dga.maurer_cartan_check(&gamma),
                "squares_to_zero": squares_to_zero,
                "unchanged": deformed.same_presentation(&dga),
                "differential": generators,
                "betti": if squares_to_zero { Some(deformed.betti_numbers()?) } else { None },
            });
            Ok(Outcome { verdict: squares_to_zero, value })
        }
        Command::SemiAbelian { gcs, pair, search, pool } => {
            let gcs = load_gcs(gcs)?;
            let n = gcs.n();
            if *search {
                let pool = pool.as_deref().map(|p| load_vectors(&read(p)?, n)).transpose()?;
                let verdict = search_semi_abelian(&gcs, pool.as_deref())?;
                return Ok(Outcome { verdict: verdict.is_semi_abelian(), value: serde_json::to_value(verdict.to_doc())? });
            }
            let path = pair.as_deref().expect("clap requires --pair without --search");
            let (a, k) = load_pair(path, n)?;
            match check_semi_abelian_spans(&gcs, &a, &k) {
                Ok((p, report)) => {
                    let holds = report.holds();
                    let props = if holds { Some(semi_abelian_properties(&gcs, &p)?) } else { None };
                    let value = json!({
                        "status": if holds { "SEMI_ABELIAN" } else { "NOT_SEMI_ABELIAN" },
                        "pair": { "A": render_subspace(p.a.subspace()), "K": render_subspace(p.k.subspace()) },
                        "ell_decomposition": { "a": render_subspace(&report.a_ell), "k": render_subspace(&report.k_ell) },
                        "identity_violation": report.identity_violation.map(|(i, j)| [i + 1, j + 1]),
                        "properties": props.map(|r| json!({ "holds": r.holds(), "h1_dim": r.h1_dim, "k_dim": r.k_dim })),
                    });
                    Ok(Outcome { verdict: holds, value })
                }
                Err(Error::Precondition(reason)) => {
                    Ok(Outcome { verdict: false, value: json!({ "status": "NOT_ADMISSIBLE", "reason": reason }) })
                }
                Err(e) => Err(e),
            }
        }
        Command::SymplecticSemiAbelian { algebra, omega, gcs } => {
            let (alg, omega) = match (omega, gcs) {
                (Some(om), _) => {
                    let source = algebra.as_deref().ok_or_else(|| Error::Input("--omega needs --algebra".into()))?;
                    let alg = load_algebra(source, true)?;
                    let form = parse_form(om, alg.dim())?;
                    (alg, form)
                }
                (None, Some(path)) => {
                    let doc = GcsDoc::from_json(&read(path)?)?;
                    let alg = match algebra {
                        Some(a) => load_algebra(a, true)?,
                        None => doc.resolve_algebra(None)?,
                    };
                    let om = doc.symplectic.as_deref().ok_or_else(|| Error::Input("document has no symplectic form".into()))?;
                    let form = parse_form(om, alg.dim())?;
                    (alg, form)
                }
                (None, None) => return Err(Error::Input("give --omega or --gcs".into())),
            };
            let verdict = symplectic_semi_abelian(&alg, &omega)?;
            Ok(Outcome { verdict: verdict.status() == "SEMI_ABELIAN", value: serde_json::to_value(verdict.to_doc())? })
        }
        Command::VerifyPaper => {
            let report = nilgcs::verify::verify_paper();
            Ok(Outcome { verdict: report.all_passed(), value: serde_json::from_str(&report.to_json())? })
        }
    }
}

/// Text rendering of a JSON value: `key: value` lines, nested objects indented.
fn render(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Null => {}
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(v, indent + 1, out);
                    }
                    Value::Array(items) if items.iter().any(|x| x.is_object()) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        for item in items {
                            render(item, indent + 1, out);
                            out.push_str(&format!("{pad}  --\n"));
                        }
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar_text(v))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar_text(other))),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(scalar_text).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let text = if cli.json {
                serde_json::to_string_pretty(&outcome.value).expect("JSON value serializes") + "\n"
            } else if let Command::VerifyPaper = cli.command {
                report_from(&outcome.value).to_text()
            } else {
                let mut text = String::new();
                render(&outcome.value, 0, &mut text);
                text
            };
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if outcome.verdict {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, Error::Internal(_)) { 3 } else { 2 })
        }
    }
}

fn report_from(value: &Value) -> nilgcs::verify::Report {
    serde_json::from_value(value.clone()).expect("report JSON round-trips")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_nests_objects_and_skips_nulls() {
        let v = json!({ "status": "IMPOSSIBLE", "pair": null, "certificate": { "system_rank": 2, "augmented_rank": 3 }, "b": ["e1", "e2"] });
        let mut text = String::new();
        render(&v, 0, &mut text);
        assert_eq!(text, "b: [e1, e2]\ncertificate:\n  augmented_rank: 3\n  system_rank: 2\nstatus: IMPOSSIBLE\n");
    }

    #[test]
    fn pool_files_in_both_formats() {
        let a = load_vectors("[\"e1\", \"E2 + i*e1\"]", 2).unwrap();
        let b = load_vectors("e1  # first\n\nE2 + i*e1\n", 2).unwrap();
        assert_eq!(a, b);
        assert!(load_vectors("e3", 2).is_err());
    }
}
