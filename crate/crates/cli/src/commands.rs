use std::fmt::Write as _;

use parity_psi_core::complex::render;
use parity_psi_core::geometry::verify_chart;
use parity_psi_core::monodromy::{monodromy_filtration, verify_monodromy};
use parity_psi_core::nearby::{
    bold_jordan_suite, bold_suite, homotopy_suite, interface_suite, jordan_suite, level_suite, usage_report,
    verify_equivalence, verify_extension_by_zero, verify_recursion, NearbyKit, MAX_N,
};
use parity_psi_core::report::{Certificate, Status};
use parity_psi_core::weyl::{admissible_elements, verify_weyl, ORACLE_MAX_N};
use serde_json::json;

use crate::config::{Command, Format, Mode, RunConfig};

#[derive(Debug)]
pub enum CliError {
    /// Bad input; exit code 2.
    Usage(String),
    /// A computation could not be carried out; exit code 1.
    Failed(String),
}

fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

/// What a command prints and whether everything it checked held.
#[derive(Debug)]
pub struct Outcome {
    pub body: String,
    pub passed: bool,
}

pub const SUITES: &[&str] = &[
    "level",
    "jordan",
    "interface",
    "bold",
    "bold-jordan",
    "homotopy",
    "extension-by-zero",
    "equivalence",
    "recursion",
    "monodromy",
    "weyl",
    "chart",
    "usage",
];

/// Monodromy oracles are cheap up to this size.
const MONODROMY_ORACLE_MAX_N: usize = 6;

pub fn run(cmd: Command, cfg: &RunConfig) -> Result<Outcome, CliError> {
    if cfg.n == 0 || cfg.n > MAX_N {
        return Err(CliError::Usage(format!("--n must lie in 1..={MAX_N}, got {}", cfg.n)));
    }
    if cfg.format == Format::Latex && cmd != Command::Psi {
        return Err(CliError::Usage(format!("latex output is only available for psi, not {cmd}")));
    }
    if cfg.suite.is_some() && cmd != Command::Verify {
        return Err(CliError::Usage("--suite only applies to verify".into()));
    }
    match cmd {
        Command::Verify => verify(cfg),
        Command::Psi => psi(cfg),
        Command::Grm => grm(cfg),
        Command::Weyl => weyl(cfg),
        Command::Chart => chart(cfg),
        Command::Usage => usage(cfg),
    }
}

fn kit(cfg: &RunConfig) -> Result<NearbyKit, CliError> {
    NearbyKit::new(cfg.n, cfg.ring).map_err(failed)
}

fn usage_certificate(kit: &NearbyKit, mode: Mode) -> Result<Certificate, CliError> {
    let report = usage_report(kit).map_err(failed)?;
    let mut cert = Certificate::new("usage", kit.n());
    cert.ledger = Some(report.ledger.clone());
    match mode {
        Mode::Global => {
            cert.assert("within-bound", report.within_bound, || {
                format!("unit sums on sizes {:?}", report.ledger.unit_sum_sizes)
            });
        }
        Mode::Affine => {
            cert.assert("recorded", true, String::new);
        }
    }
    Ok(cert)
}

fn one_suite(name: &str, kit: &NearbyKit, cfg: &RunConfig) -> Result<Option<Certificate>, CliError> {
    let n = cfg.n;
    let cert = match name {
        "level" => level_suite(kit).0,
        "jordan" => jordan_suite(kit).0,
        "interface" => interface_suite(kit).0,
        "bold" => bold_suite(kit).0,
        "bold-jordan" => bold_jordan_suite(kit).0,
        "homotopy" => homotopy_suite(kit).0,
        "extension-by-zero" => verify_extension_by_zero(kit).map_err(failed)?,
        "equivalence" => verify_equivalence(kit).map_err(failed)?,
        "recursion" if n < 2 => return Ok(None),
        "recursion" => verify_recursion(n, cfg.ring).map_err(failed)?,
        "monodromy" => {
            let oracles = cfg.oracles.unwrap_or(n <= MONODROMY_ORACLE_MAX_N);
            verify_monodromy(kit, oracles).map_err(failed)?.0
        }
        "weyl" => verify_weyl(n, cfg.oracles.unwrap_or(n <= ORACLE_MAX_N)).map_err(failed)?,
        "chart" => verify_chart(n).map_err(failed)?.0,
        "usage" => usage_certificate(kit, cfg.mode)?,
        other => return Err(CliError::Usage(format!("unknown suite `{other}`; known: {}", SUITES.join(", ")))),
    };
    Ok(Some(cert))
}

fn verify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let names: Vec<&str> = match &cfg.suite {
        Some(s) => vec![s.as_str()],
        None => SUITES.to_vec(),
    };
    let kit = kit(cfg)?;
    let mut certs = Vec::new();
    for name in names {
        certs.extend(one_suite(name, &kit, cfg)?);
    }
    let passed = certs.iter().all(Certificate::passed);
    let body = match cfg.format {
        Format::Json => pretty(&json!({
            "n": cfg.n,
            "ring": cfg.ring.to_string(),
            "passed": passed,
            "certificates": certs,
        })),
        _ => {
            let mut out = String::new();
            for c in &certs {
                let _ = writeln!(out, "{c}");
                for check in c.checks.iter().filter(|k| k.status == Status::Fail) {
                    let _ = writeln!(out, "  FAIL {}", check.id);
                }
            }
            let total: usize = certs.iter().map(|c| c.checks.len()).sum();
            let verdict = if passed { "all pass" } else { "FAILED" };
            let _ = writeln!(out, "{} certificates, {total} checks: {verdict}", certs.len());
            out
        }
    };
    Ok(Outcome { body, passed })
}

fn psi(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let z = kit(cfg)?.z().map_err(failed)?.twist(cfg.twist);
    let body = match cfg.format {
        Format::Text => render::to_text(&z),
        Format::Json => pretty(&render::to_json(&z)),
        Format::Latex => render::to_latex(&z),
    };
    Ok(Outcome { body, passed: true })
}

fn grm(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let kit = kit(cfg)?;
    let oracles = cfg.oracles.unwrap_or(cfg.n <= MONODROMY_ORACLE_MAX_N);
    let (cert, table) = verify_monodromy(&kit, oracles).map_err(failed)?;
    let mf = monodromy_filtration(&kit).map_err(failed)?;
    let table = if cfg.refine {
        parity_psi_core::monodromy::associated_graded(&mf, true)
    } else {
        table
    };
    let psi_table = table.psi_normalized();
    let passed = cert.passed();
    let body = match cfg.format {
        Format::Json => pretty(&json!({
            "n": cfg.n,
            "nilpotency_order": mf.order(),
            "layers": mf.layers(),
            "table": table,
            "psi_table": psi_table,
            "certificate": cert,
        })),
        _ => {
            let mut out = format!("nilpotency order {}\n", mf.order());
            for layer in mf.layers() {
                let _ = writeln!(out, "M_{} = {{{}}}", layer.k, layer.summands.join(", "));
            }
            let _ = writeln!(out, "\ngr_k at twist k:\n{table}");
            let _ = writeln!(out, "gr_k at twist k - 1:\n{psi_table}");
            let _ = writeln!(out, "{cert}");
            out
        }
    };
    Ok(Outcome { body, passed })
}

fn weyl(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let n = cfg.n;
    let cert = verify_weyl(n, cfg.oracles.unwrap_or(n <= ORACLE_MAX_N)).map_err(failed)?;
    let report = admissible_elements(n).map_err(failed)?;
    let passed = cert.passed();
    let body = match cfg.format {
        Format::Json => pretty(&json!({ "n": n, "admissible": report, "certificate": cert })),
        _ => {
            let mut out = format!("{} admissible elements\n", report.count);
            let width = report.elements.iter().map(|a| a.word.len()).max().unwrap_or(1);
            for a in &report.elements {
                let label = if a.subset.is_empty() { "∅".to_string() } else { a.subset.clone() };
                let _ = writeln!(out, "  {label:<12} {:<width$}  {}  length {}", a.word, a.element, a.length);
            }
            let _ = writeln!(out, "{cert}");
            out
        }
    };
    Ok(Outcome { body, passed })
}

fn chart(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (cert, lines) = verify_chart(cfg.n).map_err(failed)?;
    let passed = cert.passed();
    let body = match cfg.format {
        Format::Json => pretty(&json!({ "n": cfg.n, "lines": lines, "certificate": cert })),
        _ => {
            let mut out = String::new();
            for l in &lines {
                let _ = writeln!(out, "u_{} = {}", l.k, l.line);
            }
            let _ = writeln!(out, "{cert}");
            out
        }
    };
    Ok(Outcome { body, passed })
}

fn usage(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let kit = kit(cfg)?;
    let report = usage_report(&kit).map_err(failed)?;
    let passed = cfg.mode == Mode::Affine || report.within_bound;
    let body = match cfg.format {
        Format::Json => pretty(&json!({ "report": report, "enforced": cfg.mode == Mode::Global, "passed": passed })),
        _ => {
            let l = &report.ledger;
            let mut out = format!("n = {}\n", report.n);
            let _ = writeln!(out, "unit sums: {} (sizes {:?})", l.unit_sum_count, l.unit_sum_sizes);
            let _ = writeln!(out, "per-index relations: {}", l.per_index_count);
            let _ = writeln!(out, "within |I| <= n - 2: {}", report.within_bound);
            out
        }
    };
    Ok(Outcome { body, passed })
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}
