//! Command implementations behind the `schurq` binary, exposed as a library
//! so the test suites can drive them in-process.
//!
//! Every command renders to a string; the binary decides exit codes. Output
//! is deterministic: grids are run through the core verification suites,
//! which sort their reports by case key, so identical invocations produce
//! byte-identical output regardless of thread count.

use schurq::error::{Error, Result};
use schurq::pfaffian;
use schurq::shapes::FlaggedStrictPartition;
use schurq::tableaux::{self, MarkedShiftedTableau};
use schurq::vexillary::{Method, Triple};
use schurq::verify::{self, CaseResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

fn fmt_parts(v: &[u32]) -> String {
    let inner: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", inner.join(","))
}

fn build_shape(lambda: &[u32], flag: Option<&[u32]>) -> Result<FlaggedStrictPartition> {
    let flag = flag
        .map(|f| f.to_vec())
        .unwrap_or_else(|| vec![0; lambda.len()]);
    FlaggedStrictPartition::new(lambda.to_vec(), flag)
}

// ---- poly ----

pub struct PolyArgs<'a> {
    pub lambda: &'a [u32],
    pub flag: Option<&'a [u32]>,
    pub nx: usize,
    pub method: Method,
    pub format: Format,
    pub decompose: bool,
    pub unchecked: bool,
}

pub fn poly_command(args: &PolyArgs) -> Result<String> {
    if args.nx == 0 {
        return Err(Error::Parse("--nx must be at least 1".into()));
    }
    let shape = build_shape(args.lambda, args.flag)?;

    if args.decompose {
        let pairs = tableaux::decompose_q(&shape)?;
        return Ok(match args.format {
            Format::Text => {
                let lines: Vec<String> = pairs
                    .iter()
                    .map(|(mu, coeff)| format!("{}: {}", fmt_parts(mu.parts()), coeff))
                    .collect();
                lines.join("\n")
            }
            Format::Json => {
                let terms: Vec<serde_json::Value> = pairs
                    .iter()
                    .map(|(mu, coeff)| {
                        serde_json::json!({ "mu": mu.parts(), "coeff": coeff.to_json() })
                    })
                    .collect();
                serde_json::json!({
                    "shape": { "lambda": shape.lambda.parts(), "flag": shape.flag },
                    "terms": terms,
                })
                .to_string()
            }
        });
    }

    let mut warning = None;
    let value = match args.method {
        Method::Tableau => tableaux::q_flagged_tableau(&shape, args.nx),
        Method::Pfaffian => {
            if args.unchecked {
                if let Err(e) = pfaffian::flagged_pfaffian_hypotheses(&shape) {
                    warning = Some(format!("outside validity conditions: {e}"));
                }
                pfaffian::q_flagged_pfaffian_unchecked(&shape, args.nx)
            } else {
                pfaffian::q_flagged_pfaffian(&shape, args.nx)?
            }
        }
    };
    Ok(match args.format {
        Format::Text => match warning {
            Some(w) => format!("note: {w}\n{value}"),
            None => value.to_string(),
        },
        Format::Json => match warning {
            Some(w) => {
                serde_json::json!({ "warning": w, "polynomial": value.to_json() }).to_string()
            }
            None => value.to_json_string(),
        },
    })
}

// ---- tableaux ----

pub fn tableaux_command(
    lambda: &[u32],
    flag: Option<&[u32]>,
    nx: usize,
    format: Format,
) -> Result<String> {
    if nx == 0 {
        return Err(Error::Parse("--nx must be at least 1".into()));
    }
    let shape = build_shape(lambda, flag)?;
    let tabs = tableaux::enumerate_mst(&shape, nx);
    Ok(match format {
        Format::Text => {
            let mut lines: Vec<String> = tabs
                .iter()
                .map(|t| {
                    t.rows()
                        .iter()
                        .map(|row| {
                            row.iter()
                                .map(|e| e.to_string())
                                .collect::<Vec<_>>()
                                .join(" ")
                        })
                        .collect::<Vec<_>>()
                        .join(" | ")
                })
                .collect();
            lines.push(format!("count: {}", tabs.len()));
            lines.join("\n")
        }
        Format::Json => {
            let list: Vec<serde_json::Value> = tabs.iter().map(|t| t.to_json()).collect();
            serde_json::json!({ "count": tabs.len(), "tableaux": list }).to_string()
        }
    })
}

/// Validate a serialized tableau against its embedded shape (and, when
/// given, against the expected shape from the command line).
pub fn check_command(
    lambda: Option<&[u32]>,
    flag: Option<&[u32]>,
    contents: &str,
) -> Result<String> {
    let value: serde_json::Value =
        serde_json::from_str(contents).map_err(|e| Error::Parse(format!("json: {e}")))?;
    let tableau = MarkedShiftedTableau::from_json(&value)?;
    if let Some(lambda) = lambda {
        let expected = build_shape(lambda, flag)?;
        if tableau.shape != expected {
            return Err(Error::ShapeMismatch(format!(
                "file shape lambda={} f={} does not match the requested shape",
                fmt_parts(tableau.shape.lambda.parts()),
                fmt_parts(&tableau.shape.flag),
            )));
        }
    }
    Ok(match tableau.first_violation() {
        None => "valid".to_string(),
        Some(rule) => format!("invalid: rule {}", rule.number()),
    })
}

// ---- triple ----

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripleAction {
    Reduce,
    Shape,
    Invert,
}

fn triple_text(t: &Triple) -> String {
    format!(
        "k={} p={} q={}",
        fmt_parts(t.k()),
        fmt_parts(t.p()),
        fmt_parts(t.q())
    )
}

pub fn triple_command(
    action: TripleAction,
    k: &[u32],
    p: &[u32],
    q: &[u32],
    format: Format,
) -> Result<String> {
    let t = Triple::new(k.to_vec(), p.to_vec(), q.to_vec())?;
    Ok(match action {
        TripleAction::Reduce => {
            let r = t.reduce();
            match format {
                Format::Text => triple_text(r.triple()),
                Format::Json => r.triple().to_json().to_string(),
            }
        }
        TripleAction::Invert => {
            let inv = t.invert();
            match format {
                Format::Text => triple_text(&inv),
                Format::Json => inv.to_json().to_string(),
            }
        }
        TripleAction::Shape => {
            let shape = t.reduce().shape()?;
            match format {
                Format::Text => format!(
                    "lambda={} flag={}",
                    fmt_parts(shape.lambda.parts()),
                    fmt_parts(&shape.flag)
                ),
                Format::Json => serde_json::json!({
                    "lambda": shape.lambda.parts(),
                    "flag": shape.flag,
                })
                .to_string(),
            }
        }
    })
}

pub fn triple_equiv_command(
    k: &[u32],
    p: &[u32],
    q: &[u32],
    k2: &[u32],
    p2: &[u32],
    q2: &[u32],
    format: Format,
) -> Result<String> {
    let a = Triple::new(k.to_vec(), p.to_vec(), q.to_vec())?;
    let b = Triple::new(k2.to_vec(), p2.to_vec(), q2.to_vec())?;
    let eq = a.equivalent(&b);
    Ok(match format {
        Format::Text => format!("equivalent: {eq}"),
        Format::Json => serde_json::json!({ "equivalent": eq }).to_string(),
    })
}

// ---- verify ----

/// Grid bound overrides; a suite ignores the knobs it has no use for.
#[derive(Debug, Clone, Default)]
pub struct VerifyBounds {
    pub max_lambda: Option<u32>,
    pub max_rows: Option<usize>,
    pub max_flag: Option<u32>,
    pub nx: Option<Vec<usize>>,
}

#[derive(Debug)]
pub struct SuiteReport {
    pub text: String,
    pub cases: usize,
    pub failures: usize,
}

struct SuiteSpec {
    name: &'static str,
    aliases: &'static [&'static str],
    description: &'static str,
    run: fn(&VerifyBounds) -> Vec<CaseResult>,
}

const SUITES: &[SuiteSpec] = &[
    SuiteSpec {
        name: "pfaffian-eq",
        aliases: &[],
        description: "flagged factorial Q-functions: tableau enumeration vs Schur-Pfaffian closed form",
        run: |b| {
            verify::suite_pfaffian_eq(
                b.max_lambda.unwrap_or(5),
                b.max_rows.unwrap_or(3),
                b.max_flag.unwrap_or(3),
                b.nx.as_deref().unwrap_or(&[1, 2, 3]),
            )
        },
    },
    SuiteSpec {
        name: "ivanov-tableau",
        aliases: &["theorem-c"],
        description: "Ivanov factorial Q-functions: monomial tableau formula vs Pfaffian vs zero-flag tableau sum",
        run: |b| {
            verify::suite_ivanov_tableau(
                b.max_lambda.unwrap_or(5),
                b.max_rows.unwrap_or(3),
                b.nx.as_deref().unwrap_or(&[2, 3]),
            )
        },
    },
    SuiteSpec {
        name: "jacobi-trudi",
        aliases: &[],
        description: "row-strict flagged skew Schur polynomials: determinant vs tableau sum, plus the lattice-path round-trip",
        run: |b| {
            verify::suite_jacobi_trudi(
                b.max_lambda.unwrap_or(4),
                b.max_rows.unwrap_or(3),
                b.max_flag.unwrap_or(4),
            )
        },
    },
    SuiteSpec {
        name: "schur-pf",
        aliases: &["pfaffian-calculus"],
        description: "Schur-Pfaffian calculus: matrix route vs Laurent expansion, pair antisymmetry, sign and vanishing rules",
        run: |b| {
            verify::suite_schur_pfaffian(
                b.max_lambda.unwrap_or(5) as i64,
                b.nx.as_ref().and_then(|v| v.first().copied()).unwrap_or(2),
            )
        },
    },
    SuiteSpec {
        name: "genfun",
        aliases: &["identities"],
        description: "generating-function identities: telescope and one-row expansion grids",
        run: |b| verify::suite_series_identities(b.nx.as_deref().unwrap_or(&[1, 2])),
    },
    SuiteSpec {
        name: "vexillary",
        aliases: &[],
        description: "vexillary triples: shape validity, route agreement, z/b exchange vs inversion, equivalence",
        run: |b| {
            verify::suite_vexillary(
                b.max_rows.unwrap_or(3) as u32,
                b.max_lambda.unwrap_or(4),
                b.nx.as_ref().and_then(|v| v.first().copied()).unwrap_or(2),
            )
        },
    },
    SuiteSpec {
        name: "decompose",
        aliases: &[],
        description: "decomposition into zero-flag Q-functions: recombination vs direct enumeration",
        run: |b| {
            verify::suite_decompose(
                b.max_lambda.unwrap_or(4),
                b.max_rows.unwrap_or(3),
                b.max_flag.unwrap_or(2),
                b.nx.as_ref().and_then(|v| v.first().copied()).unwrap_or(2),
            )
        },
    },
    SuiteSpec {
        name: "structural",
        aliases: &[],
        description: "homogeneity, x-symmetry, serialization round-trips, Pfaffian squared vs determinant",
        run: |b| {
            verify::suite_structural(
                b.max_lambda.unwrap_or(4),
                b.max_rows.unwrap_or(3),
                b.max_flag.unwrap_or(2),
                b.nx.as_deref().unwrap_or(&[1, 2]),
            )
        },
    },
];

pub fn suite_names() -> Vec<&'static str> {
    let mut names: Vec<&'static str> = SUITES.iter().map(|s| s.name).collect();
    names.push("all");
    names
}

fn render_section(spec: &SuiteSpec, results: &[CaseResult], format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = format!("suite {}: {}\n", spec.name, spec.description);
            for r in results {
                if r.pass {
                    out.push_str(&format!("PASS {}\n", r.key));
                } else {
                    out.push_str(&format!("FAIL {}: {}\n", r.key, r.detail));
                }
            }
            out.push_str(&format!(
                "result: {} cases, {} failures",
                results.len(),
                verify::failures(results)
            ));
            out
        }
        Format::Json => {
            let cases: Vec<serde_json::Value> = results
                .iter()
                .map(|r| {
                    serde_json::json!({ "key": r.key, "pass": r.pass, "detail": r.detail })
                })
                .collect();
            serde_json::json!({
                "suite": spec.name,
                "description": spec.description,
                "cases": cases,
                "failures": verify::failures(results),
            })
            .to_string()
        }
    }
}

pub fn verify_command(suite: &str, bounds: &VerifyBounds, format: Format) -> Result<SuiteReport> {
    let selected: Vec<&SuiteSpec> = if suite == "all" {
        SUITES.iter().collect()
    } else {
        let found = SUITES
            .iter()
            .find(|s| s.name == suite || s.aliases.contains(&suite));
        match found {
            Some(s) => vec![s],
            None => {
                return Err(Error::Parse(format!(
                    "unknown suite `{suite}`; available: {}",
                    suite_names().join(", ")
                )))
            }
        }
    };
    let mut sections = Vec::new();
    let mut cases = 0;
    let mut failed = 0;
    for spec in selected {
        let results = (spec.run)(bounds);
        cases += results.len();
        failed += verify::failures(&results);
        sections.push(render_section(spec, &results, format));
    }
    let text = match format {
        Format::Text => sections.join("\n\n"),
        Format::Json => format!("[{}]", sections.join(",")),
    };
    Ok(SuiteReport { text, cases, failures: failed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_text_examples() {
        let out = poly_command(&PolyArgs {
            lambda: &[1],
            flag: Some(&[0]),
            nx: 2,
            method: Method::Tableau,
            format: Format::Text,
            decompose: false,
            unchecked: false,
        })
        .unwrap();
        assert_eq!(out, "2*x1 + 2*x2");
    }

    #[test]
    fn decompose_lines() {
        let out = poly_command(&PolyArgs {
            lambda: &[3, 1],
            flag: Some(&[1, 0]),
            nx: 2,
            method: Method::Tableau,
            format: Format::Text,
            decompose: true,
            unchecked: false,
        })
        .unwrap();
        assert_eq!(out, "(3,1): 1\n(2,1): z1 - b2");
    }

    #[test]
    fn methods_agree_in_json() {
        let run = |method| {
            poly_command(&PolyArgs {
                lambda: &[3, 1],
                flag: Some(&[1, 0]),
                nx: 2,
                method,
                format: Format::Json,
                decompose: false,
                unchecked: false,
            })
            .unwrap()
        };
        assert_eq!(run(Method::Tableau), run(Method::Pfaffian));
    }

    #[test]
    fn tableaux_counts() {
        let out = tableaux_command(&[1], Some(&[0]), 2, Format::Text).unwrap();
        assert!(out.ends_with("count: 4"));
        let out = tableaux_command(&[2, 1], Some(&[0, 0]), 1, Format::Text).unwrap();
        assert_eq!(out, "count: 0");
    }

    #[test]
    fn triple_commands() {
        let out =
            triple_command(TripleAction::Reduce, &[1, 2], &[1, 1], &[2, 1], Format::Text)
                .unwrap();
        assert_eq!(out, "k=(2) p=(1) q=(1)");
        let out =
            triple_command(TripleAction::Shape, &[1, 2], &[3, 1], &[1, 1], Format::Json)
                .unwrap();
        assert_eq!(out, r#"{"lambda":[3,1],"flag":[2,0]}"#);
        let out = triple_equiv_command(
            &[1, 2],
            &[1, 1],
            &[2, 1],
            &[2],
            &[1],
            &[1],
            Format::Text,
        )
        .unwrap();
        assert_eq!(out, "equivalent: true");
    }

    #[test]
    fn verify_unknown_suite() {
        let err = verify_command("nope", &VerifyBounds::default(), Format::Text).unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
    }

    #[test]
    fn verify_small_suite_all_pass() {
        let bounds = VerifyBounds {
            max_lambda: Some(3),
            max_rows: Some(2),
            max_flag: Some(1),
            nx: Some(vec![2]),
        };
        let report = verify_command("pfaffian-eq", &bounds, Format::Text).unwrap();
        assert_eq!(report.failures, 0);
        assert!(report.text.starts_with("suite pfaffian-eq:"));
        assert!(report.text.contains("PASS lambda=(1) f=(0) nx=2"));
        // alias resolves to the same suite
        let via_alias = verify_command("theorem-c", &bounds, Format::Text).unwrap();
        assert!(via_alias.text.starts_with("suite ivanov-tableau:"));
    }
}
