//! The subcommands. Each returns an [`Outcome`]: a JSON report, an exit code
//! and a short text summary.

use std::path::{Path, PathBuf};

use eqcurve_core::criteria::{classify_pair, scenario, FixedPointData};
use eqcurve_core::curves::{
    connect_pair, connectivity, verify_certificate, Certificate, PairStatus,
};
use eqcurve_core::linsys::invariant_monomials;
use eqcurve_core::smooth::{hypersurface_verdict, smooth_member_exists};
use eqcurve_core::{LinearSystem, Monomial, PrimeField};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::config::Problem;
use crate::CliError;

pub struct Outcome {
    pub report: Value,
    pub exit: i32,
    pub summary: Vec<String>,
}

impl Outcome {
    fn ok(report: Value, summary: Vec<String>) -> Self {
        Self {
            report,
            exit: 0,
            summary,
        }
    }
}

fn header(command: &str, problem: &Problem) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("tool".into(), json!("eqcurve"));
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.insert("command".into(), json!(command));
    m.insert("config".into(), problem.echo());
    m
}

fn warnings(problem: &Problem, extra: Vec<String>) -> Value {
    json!(problem
        .notices
        .iter()
        .cloned()
        .chain(extra)
        .collect::<Vec<_>>())
}

/// Coordinate points that are fixed points on the hypersurface. Without `F`,
/// `x_i` lies on every member exactly when `X_i^d` is not invariant with the
/// eigenvalue.
fn fixed_coordinates(problem: &Problem) -> Result<Vec<usize>, CliError> {
    let action = &problem.action;
    let d = problem.degree();
    Ok(match &problem.f {
        Some(f) => {
            let mut pts: Vec<usize> = action
                .fixed_points_on_hypersurface(f)?
                .iter()
                .flat_map(|c| c.coordinate_points_on_hypersurface())
                .collect();
            pts.sort();
            pts
        }
        None => (0..problem.nvars())
            .filter(|&i| (d as u64 * action.weight(i)) % action.order() != problem.eigenvalue)
            .collect(),
    })
}

fn pairs_of_interest(problem: &Problem) -> Result<Vec<(usize, usize)>, CliError> {
    if let Some(p) = problem.pair {
        return Ok(vec![p]);
    }
    let pts = fixed_coordinates(problem)?;
    Ok(pts
        .iter()
        .enumerate()
        .flat_map(|(k, &a)| pts[k + 1..].iter().map(move |&b| (a, b)))
        .collect())
}

fn fixed_data(problem: &Problem) -> Result<FixedPointData, CliError> {
    Ok(match &problem.f {
        Some(f) => FixedPointData::from_hypersurface(&problem.action, f)?,
        None => FixedPointData::from_ambient(&problem.action, problem.degree(), problem.eigenvalue),
    })
}

fn pair_system(problem: &Problem, (i, j): (usize, usize)) -> Result<LinearSystem, CliError> {
    Ok(LinearSystem::vanishing_at_pair_with_eigenvalue(
        &problem.action,
        problem.degree(),
        problem.eigenvalue,
        i,
        j,
    )?)
}

fn classify_section(problem: &Problem) -> Result<(Value, Value, Vec<String>), CliError> {
    let fixed = fixed_data(problem)?;
    let scen = scenario(&problem.action, problem.degree(), &fixed)?;
    let pairs = pairs_of_interest(problem)?;
    let reports: Vec<Value> = pairs
        .par_iter()
        .map(|&pair| -> Result<Value, CliError> {
            let v = pair_system(problem, pair)?;
            Ok(json!({
                "pair": [pair.0, pair.1],
                "system": v.to_json(),
                "base_locus": v.base_locus().to_json(),
                "report": classify_pair(&v, pair.0, pair.1),
            }))
        })
        .collect::<Result<_, _>>()?;
    let mut summary = vec![format!(
        "scenario: l={} d={} statements={:?}",
        scen.l, scen.d, scen.statements
    )];
    for r in &reports {
        summary.push(format!(
            "pair {}: criteria {} outcome {}",
            r["pair"], r["report"]["criteria"]["matched"], r["report"]["outcome"]["kind"]
        ));
    }
    Ok((scen.to_json(), json!(reports), summary))
}

pub fn classify(problem: &Problem) -> Result<Outcome, CliError> {
    let (scen, pairs, summary) = classify_section(problem)?;
    let mut m = header("classify", problem);
    m.insert("eigenvalue".into(), json!(problem.eigenvalue));
    m.insert("scenario".into(), scen);
    m.insert("pairs".into(), pairs);
    m.insert("warnings".into(), warnings(problem, vec![]));
    Ok(Outcome::ok(Value::Object(m), summary))
}

fn basis_section(problem: &Problem) -> Result<(Value, Vec<String>), CliError> {
    let v = match problem.pair {
        Some(pair) => pair_system(problem, pair)?,
        None => LinearSystem::full(&problem.action, problem.degree(), problem.eigenvalue)?,
    };
    let locus = v.base_locus();
    let summary = vec![format!(
        "system: {} monomials, base locus {}",
        v.basis().len(),
        locus.to_json()
    )];
    Ok((
        json!({
            "pair": problem.pair.map(|(i, j)| vec![i, j]),
            "system": v.to_json(),
            "base_locus": locus.to_json(),
        }),
        summary,
    ))
}

pub fn basis(problem: &Problem) -> Result<Outcome, CliError> {
    let (section, summary) = basis_section(problem)?;
    let mut m = header("basis", problem);
    m.insert("basis".into(), section);
    m.insert("warnings".into(), warnings(problem, vec![]));
    Ok(Outcome::ok(Value::Object(m), summary))
}

fn unverified(reason: String) -> Value {
    json!({ "claim": "unverified", "reason": reason })
}

/// Per-prime verdicts, keyed by the prime.
fn smoothness_section(problem: &Problem) -> (Value, Vec<String>) {
    let verdicts: Vec<(u64, Value)> = problem
        .primes
        .par_iter()
        .map(|&p| {
            let fp = PrimeField::new(p).expect("validated prime");
            let verdict = match &problem.f {
                Some(f) => {
                    if (problem.degree() as u64).is_multiple_of(p) {
                        unverified(format!("characteristic {p} divides the degree"))
                    } else {
                        match f.reduce(&fp) {
                            Err(e) => unverified(e.to_string()),
                            Ok(g) => match hypersurface_verdict(&g) {
                                Ok(v) => v.to_json(),
                                Err(e) => unverified(e.to_string()),
                            },
                        }
                    }
                }
                None => LinearSystem::full(&problem.action, problem.degree(), problem.eigenvalue)
                    .map_err(|e| e.to_string())
                    .and_then(|v| {
                        smooth_member_exists(&v, p, problem.trials, problem.search.seed)
                            .map_err(|e| e.to_string())
                    })
                    .map_or_else(unverified, |v| v.to_json()),
            };
            (p, verdict)
        })
        .collect();
    let summary = verdicts
        .iter()
        .map(|(p, v)| format!("smoothness over F_{p}: {}", v["claim"]))
        .collect();
    let map: Map<String, Value> = verdicts
        .into_iter()
        .map(|(p, v)| (p.to_string(), v))
        .collect();
    (Value::Object(map), summary)
}

pub fn smooth_check(problem: &Problem) -> Result<Outcome, CliError> {
    let (section, summary) = smoothness_section(problem);
    let mut m = header("smooth-check", problem);
    m.insert(
        "subject".into(),
        json!(if problem.f.is_some() {
            "F"
        } else {
            "general member"
        }),
    );
    m.insert("smoothness".into(), section);
    m.insert("warnings".into(), warnings(problem, vec![]));
    Ok(Outcome::ok(Value::Object(m), summary))
}

fn write_certificate(dir: &Path, cert: &Certificate) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let [i, j] = cert.endpoints();
    let path = dir.join(format!("cert_{i}_{j}.json"));
    let text = serde_json::to_string_pretty(&cert.to_json()).expect("serializable certificate");
    std::fs::write(&path, text + "\n")
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(path)
}

pub fn find_curve(problem: &Problem, cert_dir: Option<&Path>) -> Result<Outcome, CliError> {
    let f = problem.require_f()?;
    let (i, j) = problem.require_pair()?;
    let mut m = header("find-curve", problem);
    m.insert("pair".into(), json!([i, j]));
    let found = connect_pair(f, &problem.action, i, j, &problem.search)?;
    let Some(cert) = found else {
        let reason = format!(
            "no certificate up to degree {} over primes {:?} with budget {}",
            problem.search.max_degree, problem.primes, problem.search.budget
        );
        m.insert("status".into(), json!("unresolved"));
        m.insert("reason".into(), json!(reason));
        m.insert("warnings".into(), warnings(problem, vec![]));
        return Ok(Outcome {
            report: Value::Object(m),
            exit: 1,
            summary: vec![format!("pair ({i}, {j}): unresolved; {reason}")],
        });
    };
    let check = verify_certificate(&cert, &problem.action, f);
    let path = cert_dir.map(|d| write_certificate(d, &cert)).transpose()?;
    m.insert("status".into(), json!("connected"));
    m.insert("certificate".into(), cert.to_json());
    m.insert("check".into(), json!(check));
    m.insert(
        "certificate_path".into(),
        json!(path.as_ref().map(|p| p.display().to_string())),
    );
    m.insert("warnings".into(), warnings(problem, vec![]));
    Ok(Outcome::ok(
        Value::Object(m),
        vec![format!("pair ({i}, {j}): connected by {}", cert.kind())],
    ))
}

pub fn verify(problem: &Problem, cert_path: &Path) -> Result<Outcome, CliError> {
    let f = problem.require_f()?;
    let text = std::fs::read_to_string(cert_path)
        .map_err(|e| CliError::Io(format!("{}: {e}", cert_path.display())))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| CliError::Malformed(e.to_string()))?;
    let cert = Certificate::from_json(&value, &problem.action)
        .map_err(|e| CliError::Malformed(e.to_string()))?;
    let check = verify_certificate(&cert, &problem.action, f);
    let mut summary = vec![format!(
        "{} certificate for ({}, {}): {}",
        check.kind,
        check.endpoints[0],
        check.endpoints[1],
        if check.passed { "PASS" } else { "FAIL" }
    )];
    summary.extend(
        check
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("  failed check: {}", c.name)),
    );
    let mut m = header("verify", problem);
    m.insert(
        "certificate_file".into(),
        json!(cert_path.display().to_string()),
    );
    m.insert("passed".into(), json!(check.passed));
    m.insert("check".into(), json!(check));
    Ok(Outcome {
        exit: if check.passed { 0 } else { 1 },
        report: Value::Object(m),
        summary,
    })
}

fn connectivity_section(
    problem: &Problem,
    cert_dir: Option<&Path>,
) -> Result<(Value, Vec<String>, bool), CliError> {
    let Some(f) = &problem.f else {
        let pairs: Vec<Value> = pairs_of_interest(problem)?
            .into_iter()
            .map(|(i, j)| json!({ "pair": [i, j], "status": "unresolved", "reason": "no F given" }))
            .collect();
        return Ok((
            json!({ "status": "skipped", "claim": "unverified", "pairs": pairs }),
            vec!["connectivity: skipped (no F)".to_string()],
            false,
        ));
    };
    let graph = connectivity(f, &problem.action, &problem.search)?;
    let mut section = graph.to_json();
    let mut paths = Vec::new();
    if let Some(dir) = cert_dir {
        for p in &graph.pairs {
            if let PairStatus::Connected(c) = &p.status {
                paths.push(write_certificate(dir, c)?.display().to_string());
            }
        }
    }
    section["certificate_paths"] = json!(paths);
    let unresolved = graph.unresolved().count();
    let summary = vec![format!(
        "connectivity: {} vertices, {} edges, {} classes, {} unresolved pairs{}",
        graph.vertices.len(),
        graph.edges.len(),
        graph.classes.len(),
        unresolved,
        if graph.complete() { ", complete" } else { "" }
    )];
    Ok((section, summary, graph.complete()))
}

pub fn connectivity_cmd(problem: &Problem, cert_dir: Option<&Path>) -> Result<Outcome, CliError> {
    problem.require_f()?;
    let (section, summary, _) = connectivity_section(problem, cert_dir)?;
    let mut m = header("connectivity", problem);
    m.insert("connectivity".into(), section);
    m.insert("warnings".into(), warnings(problem, vec![]));
    Ok(Outcome::ok(Value::Object(m), summary))
}

pub fn report(problem: &Problem, cert_dir: Option<&Path>) -> Result<Outcome, CliError> {
    let (scen, pairs, mut summary) = classify_section(problem)?;
    let (basis, s) = basis_section(problem)?;
    summary.extend(s);
    let (smooth, s) = smoothness_section(problem);
    summary.extend(s);
    let (conn, s, complete) = connectivity_section(problem, cert_dir)?;
    summary.extend(s);

    let mut extra = Vec::new();
    if basis["base_locus"] == json!("everything") {
        extra.push(
            "the invariant system is empty; its base locus is all of projective space".to_string(),
        );
    }
    if problem.f.is_none() {
        extra.push("no F given; connectivity is unverified".to_string());
    } else if !complete {
        extra.push("connectivity graph is incomplete; see unresolved pairs".to_string());
    }
    let invariant: Vec<Monomial> =
        invariant_monomials(&problem.action, problem.degree(), problem.eigenvalue)?;
    let mut m = header("report", problem);
    m.insert("eigenvalue".into(), json!(problem.eigenvalue));
    m.insert(
        "invariant_monomials".into(),
        json!(invariant.iter().map(|m| m.exponents()).collect::<Vec<_>>()),
    );
    m.insert("scenario".into(), scen);
    m.insert("pairs".into(), pairs);
    m.insert("basis".into(), basis);
    m.insert("smoothness".into(), smooth);
    m.insert("connectivity".into(), conn);
    summary.extend(extra.iter().map(|w| format!("warning: {w}")));
    m.insert("warnings".into(), warnings(problem, extra));
    Ok(Outcome::ok(Value::Object(m), summary))
}
