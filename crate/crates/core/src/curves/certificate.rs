//! Connectivity certificates, their JSON form and their re-verification.

use num_integer::Integer;
use serde::Serialize;
use serde_json::{json, Value};

use super::{units, verify, CheckReport, EquivariantCurve, P1Action};
use crate::action::{CoordinateSubspace, CyclicAction};
use crate::error::{CurveError, FormatError};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::linsys::LinearSystem;
use crate::poly::{AmbientPoly, BinaryForm, Monomial};

/// A curve over the rationals or over a prime field.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyCurve {
    Rational(EquivariantCurve<Rationals>),
    Prime(EquivariantCurve<PrimeField>),
}

impl AnyCurve {
    pub fn field(&self) -> FieldSpec {
        match self {
            AnyCurve::Rational(_) => FieldSpec::Rational,
            AnyCurve::Prime(c) => c.field().spec(),
        }
    }

    pub fn degree(&self) -> u32 {
        match self {
            AnyCurve::Rational(c) => c.degree(),
            AnyCurve::Prime(c) => c.degree(),
        }
    }

    fn json_fields(&self) -> serde_json::Map<String, Value> {
        match self {
            AnyCurve::Rational(c) => curve_fields(c),
            AnyCurve::Prime(c) => curve_fields(c),
        }
    }

    /// Verifies against a rational `F`, reducing it when the curve lives
    /// over `F_p`.
    pub fn verify(
        &self,
        action: &CyclicAction,
        f: &AmbientPoly<Rationals>,
        x: usize,
        y: usize,
    ) -> Result<CheckReport, CurveError> {
        match self {
            AnyCurve::Rational(c) => verify(c, action, f, x, y),
            AnyCurve::Prime(c) => verify(c, action, &f.reduce(c.field())?, x, y),
        }
    }
}

fn curve_fields<K: Field>(c: &EquivariantCurve<K>) -> serde_json::Map<String, Value> {
    let field = c.field();
    let mut m = serde_json::Map::new();
    m.insert("p1".into(), json!({ "a": c.p1().a, "b": c.p1().b }));
    m.insert("twist".into(), json!(c.twist()));
    m.insert("degree".into(), json!(c.degree()));
    m.insert(
        "field".into(),
        serde_json::to_value(field.spec()).expect("field spec"),
    );
    m.insert(
        "components".into(),
        Value::Array(
            c.components()
                .iter()
                .map(|b| Value::Array(b.coeffs().iter().map(|v| field.to_json(v)).collect()))
                .collect(),
        ),
    );
    m
}

fn parse_curve<K: Field>(field: K, v: &Value, l: u64) -> Result<EquivariantCurve<K>, FormatError> {
    let p1 = v.get("p1").ok_or_else(|| missing("p1"))?;
    let a = p1
        .get("a")
        .and_then(Value::as_i64)
        .ok_or_else(|| missing("p1.a"))?;
    let b = p1
        .get("b")
        .and_then(Value::as_i64)
        .ok_or_else(|| missing("p1.b"))?;
    let twist = v
        .get("twist")
        .and_then(Value::as_u64)
        .ok_or_else(|| missing("twist"))?;
    let comps = v
        .get("components")
        .and_then(Value::as_array)
        .ok_or_else(|| missing("components"))?;
    let forms = comps
        .iter()
        .map(|c| {
            let coeffs = c
                .as_array()
                .ok_or_else(|| FormatError::Invalid("component is not an array".into()))?
                .iter()
                .map(|x| field.from_json(x))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(BinaryForm::new(field.clone(), coeffs)?)
        })
        .collect::<Result<Vec<_>, FormatError>>()?;
    if let Some(deg) = v.get("degree").and_then(Value::as_u64) {
        if forms.iter().any(|f| f.degree() as u64 != deg) {
            return Err(FormatError::Invalid(format!(
                "components do not have the stated degree {deg}"
            )));
        }
    }
    Ok(EquivariantCurve::new(
        P1Action::new(l, a, b)?,
        twist,
        forms,
    )?)
}

fn parse_any_curve(v: &Value, l: u64) -> Result<AnyCurve, FormatError> {
    let spec: FieldSpec =
        serde_json::from_value(v.get("field").cloned().ok_or_else(|| missing("field"))?)?;
    Ok(match spec {
        FieldSpec::Rational => AnyCurve::Rational(parse_curve(Rationals, v, l)?),
        FieldSpec::Prime(p) => AnyCurve::Prime(parse_curve(PrimeField::new(p)?, v, l)?),
    })
}

fn missing(field: &str) -> FormatError {
    FormatError::Invalid(format!("missing or malformed field `{field}`"))
}

/// A recorded `d`-th root chosen by a closed-form solver.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootRecord {
    pub component: usize,
    pub exponent: u32,
    pub power: Value,
    pub root: Value,
}

impl RootRecord {
    pub fn from_choice<K: Field>(field: &K, c: &super::RootChoice<K>) -> Self {
        Self {
            component: c.component,
            exponent: c.exponent,
            power: field.to_json(&c.power),
            root: field.to_json(&c.root),
        }
    }
}

/// A finite witness that two fixed coordinate points are connected.
///
/// For curves, `endpoints` is `[f(0), f(infinity)]`.
#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    ExplicitCurve {
        endpoints: [usize; 2],
        curve: AnyCurve,
        method: String,
        root_powers: Vec<RootRecord>,
    },
    Chain {
        endpoints: [usize; 2],
        links: Vec<Certificate>,
    },
    SameFixedComponent {
        endpoints: [usize; 2],
        locus: CoordinateSubspace,
    },
    LineInBaseLocus {
        endpoints: [usize; 2],
        line: CoordinateSubspace,
        curve: EquivariantCurve<Rationals>,
    },
}

impl Certificate {
    pub fn endpoints(&self) -> [usize; 2] {
        match self {
            Certificate::ExplicitCurve { endpoints, .. }
            | Certificate::Chain { endpoints, .. }
            | Certificate::SameFixedComponent { endpoints, .. }
            | Certificate::LineInBaseLocus { endpoints, .. } => *endpoints,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::ExplicitCurve { .. } => "explicit_curve",
            Certificate::Chain { .. } => "chain",
            Certificate::SameFixedComponent { .. } => "same_fixed_component",
            Certificate::LineInBaseLocus { .. } => "line_in_base_locus",
        }
    }

    /// The line `L_{ij}` parametrized as `[.., T^g, .., S^g, ..]`, with
    /// `g = gcd(w_j - w_i, l)` so that some unit multiple of `(0, 1)` makes
    /// it equivariant.
    pub fn line(action: &CyclicAction, i: usize, j: usize) -> Result<Self, CurveError> {
        let n = action.nvars();
        let line = CoordinateSubspace::line(n, i, j)?;
        let l = action.order();
        let diff = (action.weight(j) + l - action.weight(i)) % l;
        let g = diff.gcd(&l) as u32;
        let p1 = P1Action::new(l, 0, 1)?;
        let u = units(l)
            .find(|&u| (g as u64 % l) * (u * (l - 1) % l) % l == diff)
            .ok_or(CurveError::StructurallyImpossible { degree: g })?;
        let p1 = p1.scaled(u);
        let twist = (p1.weight(g, 0) + l - action.weight(i)) % l;
        let comps = (0..n)
            .map(|k| {
                if k == i {
                    BinaryForm::monomial(Rationals, g, 0, Rationals.one())
                } else if k == j {
                    BinaryForm::monomial(Rationals, g, g, Rationals.one())
                } else {
                    BinaryForm::zero(Rationals, g)
                }
            })
            .collect();
        Ok(Certificate::LineInBaseLocus {
            endpoints: [i, j],
            line,
            curve: EquivariantCurve::new(p1, twist, comps)?,
        })
    }

    pub fn to_json(&self) -> Value {
        let mut m = serde_json::Map::new();
        m.insert("kind".into(), json!(self.kind()));
        m.insert("endpoints".into(), json!(self.endpoints()));
        match self {
            Certificate::ExplicitCurve {
                curve,
                method,
                root_powers,
                ..
            } => {
                m.extend(curve.json_fields());
                m.insert("method".into(), json!(method));
                m.insert(
                    "root_powers".into(),
                    serde_json::to_value(root_powers).expect("roots"),
                );
            }
            Certificate::Chain { links, .. } => {
                m.insert(
                    "links".into(),
                    Value::Array(links.iter().map(Certificate::to_json).collect()),
                );
            }
            Certificate::SameFixedComponent { locus, .. } => {
                m.insert(
                    "locus".into(),
                    json!({ "zero_set": locus.zero_set(), "name": locus.describe() }),
                );
            }
            Certificate::LineInBaseLocus { line, curve, .. } => {
                m.insert(
                    "line".into(),
                    json!({ "zero_set": line.zero_set(), "name": line.describe() }),
                );
                m.extend(curve_fields(curve));
            }
        }
        Value::Object(m)
    }

    /// Parses the JSON form; `action` supplies the group order and arity.
    pub fn from_json(v: &Value, action: &CyclicAction) -> Result<Self, FormatError> {
        let kind = v
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| missing("kind"))?;
        let endpoints: [usize; 2] = serde_json::from_value(
            v.get("endpoints")
                .cloned()
                .ok_or_else(|| missing("endpoints"))?,
        )?;
        if endpoints.iter().any(|&e| e >= action.nvars()) {
            return Err(CurveError::EndpointOutOfRange(endpoints[0].max(endpoints[1])).into());
        }
        let l = action.order();
        let subspace = |key: &str| -> Result<CoordinateSubspace, FormatError> {
            let zs: Vec<usize> = serde_json::from_value(
                v.get(key)
                    .and_then(|s| s.get("zero_set"))
                    .cloned()
                    .ok_or_else(|| missing(key))?,
            )?;
            Ok(CoordinateSubspace::new(action.nvars(), zs)?)
        };
        Ok(match kind {
            "explicit_curve" => Certificate::ExplicitCurve {
                endpoints,
                curve: parse_any_curve(v, l)?,
                method: v
                    .get("method")
                    .and_then(Value::as_str)
                    .unwrap_or("external")
                    .to_string(),
                root_powers: match v.get("root_powers") {
                    None | Some(Value::Null) => Vec::new(),
                    Some(r) => r
                        .as_array()
                        .ok_or_else(|| missing("root_powers"))?
                        .iter()
                        .map(|x| {
                            Ok(RootRecord {
                                component: x
                                    .get("component")
                                    .and_then(Value::as_u64)
                                    .ok_or_else(|| missing("component"))?
                                    as usize,
                                exponent: x
                                    .get("exponent")
                                    .and_then(Value::as_u64)
                                    .ok_or_else(|| missing("exponent"))?
                                    as u32,
                                power: x.get("power").cloned().ok_or_else(|| missing("power"))?,
                                root: x.get("root").cloned().ok_or_else(|| missing("root"))?,
                            })
                        })
                        .collect::<Result<Vec<_>, FormatError>>()?,
                },
            },
            "chain" => Certificate::Chain {
                endpoints,
                links: v
                    .get("links")
                    .and_then(Value::as_array)
                    .ok_or_else(|| missing("links"))?
                    .iter()
                    .map(|x| Certificate::from_json(x, action))
                    .collect::<Result<Vec<_>, _>>()?,
            },
            "same_fixed_component" => Certificate::SameFixedComponent {
                endpoints,
                locus: subspace("locus")?,
            },
            "line_in_base_locus" => Certificate::LineInBaseLocus {
                endpoints,
                line: subspace("line")?,
                curve: parse_curve(Rationals, v, l)?,
            },
            other => {
                return Err(FormatError::Invalid(format!(
                    "unknown certificate kind `{other}`"
                )))
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl NamedCheck {
    fn new(name: &str, passed: bool, detail: Option<String>) -> Self {
        Self {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateCheck {
    pub kind: String,
    pub endpoints: [usize; 2],
    pub passed: bool,
    pub checks: Vec<NamedCheck>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub links: Vec<CertificateCheck>,
}

fn curve_checks(report: Result<CheckReport, CurveError>) -> Vec<NamedCheck> {
    match report {
        Err(e) => vec![NamedCheck::new("well_formed", false, Some(e.to_string()))],
        Ok(r) => vec![
            NamedCheck::new("membership", r.membership, None),
            NamedCheck::new(
                "equivariance",
                r.equivariance.passed,
                r.equivariance
                    .unit
                    .zip(r.equivariance.twist)
                    .map(|(u, c)| format!("unit {u}, twist {c}, stored {}", r.equivariance.stored)),
            ),
            NamedCheck::new(
                "endpoints",
                r.endpoints.passed,
                Some(format!(
                    "0 -> {:?}, infinity -> {:?}",
                    r.endpoints.at_zero, r.endpoints.at_infinity
                )),
            ),
        ],
    }
}

fn root_check<K: Field>(field: &K, d: u32, roots: &[RootRecord]) -> NamedCheck {
    let ok = roots.iter().all(
        |r| match (field.from_json(&r.root), field.from_json(&r.power)) {
            (Ok(root), Ok(power)) => field.pow(&root, d as u64) == power,
            _ => false,
        },
    );
    NamedCheck::new("root_powers", ok, None)
}

/// Re-checks a certificate from scratch against `F` and the action.
pub fn verify_certificate(
    cert: &Certificate,
    action: &CyclicAction,
    f: &AmbientPoly<Rationals>,
) -> CertificateCheck {
    let endpoints = cert.endpoints();
    let [x, y] = endpoints;
    let n = action.nvars();
    let mut links = Vec::new();
    let checks = match cert {
        Certificate::ExplicitCurve {
            curve, root_powers, ..
        } => {
            let mut checks = curve_checks(curve.verify(action, f, x, y));
            if !root_powers.is_empty() {
                checks.push(match curve {
                    AnyCurve::Rational(c) => root_check(c.field(), f.degree(), root_powers),
                    AnyCurve::Prime(c) => root_check(c.field(), f.degree(), root_powers),
                });
            }
            checks
        }
        Certificate::Chain { links: ls, .. } => {
            links = ls
                .iter()
                .map(|c| verify_certificate(c, action, f))
                .collect();
            let mut at = x;
            let mut joined = !ls.is_empty();
            for link in ls {
                let [p, q] = link.endpoints();
                at = if p == at {
                    q
                } else if q == at {
                    p
                } else {
                    joined = false;
                    break;
                };
            }
            vec![
                NamedCheck::new("links_verify", links.iter().all(|c| c.passed), None),
                NamedCheck::new("links_share_endpoints", joined && at == y, None),
            ]
        }
        Certificate::SameFixedComponent { locus, .. } => {
            let fixed = action
                .fixed_loci()
                .into_iter()
                .find(|fl| &fl.subspace == locus);
            let on_x = |i: usize| f.coefficient(&Monomial::power(n, i, f.degree())).is_none();
            let dim = locus.dim();
            let connected = dim >= 2 || (dim >= 1 && f.restrict(locus.zero_set()).is_zero());
            vec![
                NamedCheck::new("fixed_locus", fixed.is_some(), Some(locus.describe())),
                NamedCheck::new(
                    "endpoints_in_locus",
                    locus.contains_coordinate_point(x) && locus.contains_coordinate_point(y),
                    None,
                ),
                NamedCheck::new("endpoints_on_hypersurface", on_x(x) && on_x(y), None),
                NamedCheck::new("connected_on_hypersurface", connected, None),
            ]
        }
        Certificate::LineInBaseLocus { line, curve, .. } => {
            let expected = CoordinateSubspace::line(n, x, y).ok();
            let in_base = LinearSystem::vanishing_at_pair(action, f, x, y)
                .map(|v| v.base_locus().contains_subspace(line))
                .unwrap_or(false);
            // the structural claim is about the line; its curve must be the
            // standard parametrization so that certificates compare exactly
            let canonical = matches!(
                Certificate::line(action, x, y),
                Ok(Certificate::LineInBaseLocus { curve: c, .. }) if c.components() == curve.components()
            );
            let mut checks = vec![
                NamedCheck::new(
                    "line_joins_endpoints",
                    expected.as_ref() == Some(line),
                    Some(line.describe()),
                ),
                NamedCheck::new(
                    "line_on_hypersurface",
                    f.restrict(line.zero_set()).is_zero(),
                    None,
                ),
                NamedCheck::new("line_in_base_locus", in_base, None),
                NamedCheck::new("canonical_parametrization", canonical, None),
            ];
            checks.extend(curve_checks(verify(curve, action, f, x, y)));
            checks
        }
    };
    CertificateCheck {
        kind: cert.kind().to_string(),
        endpoints,
        passed: checks.iter().all(|c| c.passed),
        checks,
        links,
    }
}
