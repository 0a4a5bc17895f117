//! Equivariant rational curves `P^1 -> P^n`: the support condition,
//! verification, explicit solvers, coefficient search, certificates and the
//! fixed-point connectivity graph.

mod certificate;
mod connectivity;
mod search;
mod solve;

pub use certificate::{
    verify_certificate, AnyCurve, Certificate, CertificateCheck, NamedCheck, RootRecord,
};
pub use connectivity::{
    connect_pair, connectivity, ConnectivityGraph, Edge, PairStatus, PairSummary, SearchConfig,
    Vertex, VertexKind,
};
pub use search::{ansatz_search, SearchOutcome};
pub use solve::{
    diagonal_shape, fermat_type_hypersurface, solve_diagonal, solve_fermat_type,
    solve_two_point_family, DiagonalSolution, RootChoice,
};

use num_integer::Integer;
use serde::Serialize;

use crate::action::CyclicAction;
use crate::error::{CurveError, PolyError};
use crate::field::{Field, PrimeField, Rationals};
use crate::poly::{AmbientPoly, BinaryForm};

/// Weights `(a, b)` of `S` and `T` for an action of `Z/l` on `P^1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct P1Action {
    pub l: u64,
    pub a: u64,
    pub b: u64,
}

impl P1Action {
    /// Requires `a - b` to be a unit modulo `l`.
    pub fn new(l: u64, a: i64, b: i64) -> Result<Self, CurveError> {
        let li = l as i64;
        let (a, b) = (a.rem_euclid(li) as u64, b.rem_euclid(li) as u64);
        if ((a + l - b) % l).gcd(&l) != 1 {
            return Err(CurveError::NotFaithfulOnLine { a, b, l });
        }
        Ok(Self { l, a, b })
    }

    /// `(u a, u b)`.
    pub fn scaled(&self, u: u64) -> Self {
        Self {
            l: self.l,
            a: self.a * u % self.l,
            b: self.b * u % self.l,
        }
    }

    /// Weight of `S^j T^(e-j)`.
    pub fn weight(&self, e: u32, j: u32) -> u64 {
        let l = self.l;
        ((j as u64 % l) * self.a + ((e - j) as u64 % l) * self.b) % l
    }
}

/// Units of `Z/l` in increasing order.
pub(crate) fn units(l: u64) -> impl Iterator<Item = u64> {
    (1..=l.max(1))
        .filter(move |u| u.gcd(&l) == 1)
        .map(move |u| u % l.max(1))
}

/// `{ j in 0..=e : j a + (e - j) b = r mod l }`.
pub fn support(e: u32, p1: &P1Action, r: u64) -> Vec<u32> {
    let r = r % p1.l;
    (0..=e).filter(|&j| p1.weight(e, j) == r).collect()
}

/// A map `P^1 -> P^n` given by binary forms of a common degree, together
/// with the `P^1` weights and the twist `c` it is claimed to be equivariant
/// for: `S^j T^(e-j)` may appear in component `i` only if its weight is
/// `w_i + c`.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivariantCurve<K: Field> {
    p1: P1Action,
    twist: u64,
    components: Vec<BinaryForm<K>>,
}

impl<K: Field> EquivariantCurve<K> {
    pub fn new(
        p1: P1Action,
        twist: u64,
        components: Vec<BinaryForm<K>>,
    ) -> Result<Self, CurveError> {
        let first = components.first().ok_or(PolyError::NoTerms)?;
        let e = first.degree();
        for c in &components {
            if c.degree() != e {
                return Err(PolyError::MixedDegrees(e, c.degree()).into());
            }
            if c.field() != first.field() {
                return Err(PolyError::FieldMismatch {
                    left: first.field().spec(),
                    right: c.field().spec(),
                }
                .into());
            }
        }
        if components.iter().all(BinaryForm::is_zero) {
            return Err(CurveError::ZeroCurve);
        }
        Ok(Self {
            p1,
            twist: twist % p1.l,
            components,
        })
    }

    pub fn p1(&self) -> &P1Action {
        &self.p1
    }

    pub fn twist(&self) -> u64 {
        self.twist
    }

    pub fn degree(&self) -> u32 {
        self.components[0].degree()
    }

    pub fn field(&self) -> &K {
        self.components[0].field()
    }

    pub fn components(&self) -> &[BinaryForm<K>] {
        &self.components
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    fn endpoint_at(&self, lowest: bool) -> Vec<K::Elem> {
        let js = self.components.iter().flat_map(|c| c.support());
        let j = if lowest { js.min() } else { js.max() }.expect("nonzero curve");
        self.components.iter().map(|c| c.coeff(j).clone()).collect()
    }

    /// Image of `[S:T] = [0:1]`, after cancelling any common power of `S`.
    pub fn at_zero(&self) -> Vec<K::Elem> {
        self.endpoint_at(true)
    }

    /// Image of `[S:T] = [1:0]`, after cancelling any common power of `T`.
    pub fn at_infinity(&self) -> Vec<K::Elem> {
        self.endpoint_at(false)
    }

    /// Whether the support condition holds for weights `p1` and twist `c`.
    pub fn support_condition(&self, action: &CyclicAction, p1: &P1Action, c: u64) -> bool {
        let e = self.degree();
        let l = action.order();
        self.components.len() == action.nvars()
            && self.components.iter().enumerate().all(|(i, comp)| {
                let r = (action.weight(i) + c) % l;
                comp.support().into_iter().all(|j| p1.weight(e, j) == r)
            })
    }
}

impl EquivariantCurve<Rationals> {
    pub fn reduce(&self, fp: &PrimeField) -> Result<EquivariantCurve<PrimeField>, CurveError> {
        let components = self
            .components
            .iter()
            .map(|c| {
                let coeffs = c
                    .coeffs()
                    .iter()
                    .map(|q| fp.reduce_rational(q))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(BinaryForm::new(*fp, coeffs)?)
            })
            .collect::<Result<Vec<_>, CurveError>>()?;
        EquivariantCurve::new(self.p1, self.twist, components)
    }
}

/// The coordinate index of a point, if it is a coordinate point.
pub fn coordinate_point<K: Field>(field: &K, point: &[K::Elem]) -> Option<usize> {
    let mut nonzero = point.iter().enumerate().filter(|(_, v)| !field.is_zero(v));
    let (i, _) = nonzero.next()?;
    nonzero.next().is_none().then_some(i)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivarianceCheck {
    pub passed: bool,
    /// The stored weights and twist already satisfy the support condition.
    pub stored: bool,
    /// Unit multiple and twist that satisfied it.
    pub unit: Option<u64>,
    pub twist: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndpointCheck {
    pub passed: bool,
    pub at_zero: Option<usize>,
    pub at_infinity: Option<usize>,
}

/// Three independent checks on a curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub membership: bool,
    pub equivariance: EquivarianceCheck,
    pub endpoints: EndpointCheck,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.membership && self.equivariance.passed && self.endpoints.passed
    }
}

/// Checks that the curve lies on `{F = 0}`, is equivariant, and sends
/// `0` to `x_x` and infinity to `x_y`.
pub fn verify<K: Field>(
    curve: &EquivariantCurve<K>,
    action: &CyclicAction,
    f: &AmbientPoly<K>,
    x: usize,
    y: usize,
) -> Result<CheckReport, CurveError> {
    if curve.p1.l != action.order() {
        return Err(CurveError::PatternMismatch(format!(
            "curve group order {} differs from action order {}",
            curve.p1.l,
            action.order()
        )));
    }
    if x >= action.nvars() || y >= action.nvars() {
        return Err(CurveError::EndpointOutOfRange(x.max(y)));
    }
    let membership = f.compose(&curve.components)?.is_zero();

    let stored = curve.support_condition(action, &curve.p1, curve.twist);
    let found = if stored {
        Some((1, curve.twist))
    } else {
        let l = action.order();
        units(l).find_map(|u| {
            let p1 = curve.p1.scaled(u);
            (0..l)
                .find(|&c| curve.support_condition(action, &p1, c))
                .map(|c| (u, c))
        })
    };
    let equivariance = EquivarianceCheck {
        passed: found.is_some(),
        stored,
        unit: found.map(|f| f.0),
        twist: found.map(|f| f.1),
    };

    let field = curve.field();
    let at_zero = coordinate_point(field, &curve.at_zero());
    let at_infinity = coordinate_point(field, &curve.at_infinity());
    let endpoints = EndpointCheck {
        passed: at_zero == Some(x) && at_infinity == Some(y),
        at_zero,
        at_infinity,
    };
    Ok(CheckReport {
        membership,
        equivariance,
        endpoints,
    })
}
