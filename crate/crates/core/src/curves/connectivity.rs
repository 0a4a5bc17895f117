//! The graph of fixed loci on the hypersurface, joined by verified
//! certificates.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;
use serde_json::{json, Value};

use super::certificate::{verify_certificate, AnyCurve, Certificate, RootRecord};
use super::search::ansatz_search;
use super::solve::{diagonal_shape, solve_diagonal};
use super::P1Action;
use crate::action::{CoordinateSubspace, CyclicAction};
use crate::criteria::binary_restriction;
use crate::error::{ActionError, CurveError};
use crate::field::{PrimeField, Rationals};
use crate::poly::AmbientPoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub max_degree: u32,
    pub budget: u64,
    pub seed: u64,
    pub primes: Vec<u64>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            max_degree: 5,
            budget: 10_000_000,
            seed: 0,
            primes: vec![5, 7],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VertexKind {
    /// An isolated fixed point, or a coordinate point on a fixed line that
    /// meets the hypersurface in finitely many points.
    Point { coordinate: usize },
    /// A connected positive-dimensional fixed locus on the hypersurface.
    Component {
        locus: String,
        zero_set: Vec<usize>,
        coordinates_on_x: Vec<usize>,
    },
    /// Fixed points on a line class that are not coordinate points.
    OffCoordinateRoots {
        locus: String,
        zero_set: Vec<usize>,
        count: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub id: usize,
    pub weight: u64,
    #[serde(flatten)]
    pub kind: VertexKind,
}

impl Vertex {
    /// The coordinate point standing for this vertex in certificates.
    pub fn representative(&self) -> Option<usize> {
        match &self.kind {
            VertexKind::Point { coordinate } => Some(*coordinate),
            VertexKind::Component {
                coordinates_on_x, ..
            } => coordinates_on_x.first().copied(),
            VertexKind::OffCoordinateRoots { .. } => None,
        }
    }

    pub fn contains_coordinate(&self, i: usize) -> bool {
        match &self.kind {
            VertexKind::Point { coordinate } => *coordinate == i,
            VertexKind::Component {
                coordinates_on_x, ..
            } => coordinates_on_x.contains(&i),
            VertexKind::OffCoordinateRoots { .. } => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub vertices: (usize, usize),
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq)]
pub enum PairStatus {
    Connected(Certificate),
    Unresolved(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairSummary {
    pub vertices: (usize, usize),
    pub status: PairStatus,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConnectivityGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    /// Every vertex pair, connected by a direct or chained certificate or
    /// listed as unresolved.
    pub pairs: Vec<PairSummary>,
    /// Vertex ids grouped by reachability.
    pub classes: Vec<Vec<usize>>,
}

impl ConnectivityGraph {
    pub fn complete(&self) -> bool {
        self.classes.len() <= 1
    }

    pub fn unresolved(&self) -> impl Iterator<Item = &PairSummary> {
        self.pairs
            .iter()
            .filter(|p| matches!(p.status, PairStatus::Unresolved(_)))
    }

    pub fn vertex_of(&self, coordinate: usize) -> Option<&Vertex> {
        self.vertices
            .iter()
            .find(|v| v.contains_coordinate(coordinate))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "vertices": self.vertices,
            "edges": self.edges.iter().map(|e| json!({
                "vertices": [e.vertices.0, e.vertices.1],
                "certificate": e.certificate.to_json(),
            })).collect::<Vec<_>>(),
            "pairs": self.pairs.iter().map(|p| match &p.status {
                PairStatus::Connected(c) => json!({
                    "vertices": [p.vertices.0, p.vertices.1],
                    "status": "connected",
                    "kind": c.kind(),
                    "endpoints": c.endpoints(),
                }),
                PairStatus::Unresolved(reason) => json!({
                    "vertices": [p.vertices.0, p.vertices.1],
                    "status": "unresolved",
                    "reason": reason,
                }),
            }).collect::<Vec<_>>(),
            "classes": self.classes,
            "complete": self.complete(),
        })
    }
}

struct Context<'a> {
    f: &'a AmbientPoly<Rationals>,
    action: &'a CyclicAction,
    config: &'a SearchConfig,
    reduced: BTreeMap<u64, AmbientPoly<PrimeField>>,
}

impl<'a> Context<'a> {
    fn new(
        f: &'a AmbientPoly<Rationals>,
        action: &'a CyclicAction,
        config: &'a SearchConfig,
    ) -> Self {
        let reduced = config
            .primes
            .iter()
            .filter_map(|&p| {
                let fp = PrimeField::new(p).ok()?;
                Some((p, f.reduce(&fp).ok()?))
            })
            .collect();
        Self {
            f,
            action,
            config,
            reduced,
        }
    }

    fn accept(&self, cert: Certificate) -> Option<Certificate> {
        verify_certificate(&cert, self.action, self.f)
            .passed
            .then_some(cert)
    }

    /// A line through both points lying on the hypersurface.
    fn structural(&self, i: usize, k: usize) -> Option<Certificate> {
        let line = CoordinateSubspace::line(self.action.nvars(), i, k).ok()?;
        if !self.f.restrict(line.zero_set()).is_zero() {
            return None;
        }
        let cert = Certificate::line(self.action, i, k).ok()?;
        if let Some(c) = self.accept(cert.clone()) {
            return Some(c);
        }
        // on the hypersurface but outside the base locus: keep the curve only
        let Certificate::LineInBaseLocus { curve, .. } = cert else {
            return None;
        };
        self.accept(Certificate::ExplicitCurve {
            endpoints: [i, k],
            curve: AnyCurve::Rational(curve),
            method: "coordinate_line".into(),
            root_powers: vec![],
        })
    }

    /// Closed-form curves for binary-plus-diagonal equations, over the
    /// rationals first and then over each prime.
    fn solver(&self, i: usize, k: usize) -> Option<Certificate> {
        diagonal_shape(self.f, i, k).ok()?;
        let l = self.action.order();
        let p1 = P1Action::new(l, 0, 1).ok()?;
        let max_d = (self.f.degree() as u64 * l).max(self.config.max_degree as u64) as u32;
        for big_d in 1..=max_d {
            for (inf, zero) in [(i, k), (k, i)] {
                if let Ok(sol) = solve_diagonal(self.f, self.action, inf, zero, big_d, &p1) {
                    let roots = sol
                        .roots
                        .iter()
                        .map(|r| RootRecord::from_choice(&Rationals, r))
                        .collect();
                    let cert = Certificate::ExplicitCurve {
                        endpoints: [zero, inf],
                        curve: AnyCurve::Rational(sol.curve),
                        method: "diagonal_solver".into(),
                        root_powers: roots,
                    };
                    if let Some(c) = self.accept(cert) {
                        return Some(c);
                    }
                }
                for (p, fp) in &self.reduced {
                    let Ok(sol) = solve_diagonal(fp, self.action, inf, zero, big_d, &p1) else {
                        continue;
                    };
                    let field = PrimeField::new(*p).expect("prime");
                    let roots = sol
                        .roots
                        .iter()
                        .map(|r| RootRecord::from_choice(&field, r))
                        .collect();
                    let cert = Certificate::ExplicitCurve {
                        endpoints: [zero, inf],
                        curve: AnyCurve::Prime(sol.curve),
                        method: "diagonal_solver".into(),
                        root_powers: roots,
                    };
                    if let Some(c) = self.accept(cert) {
                        return Some(c);
                    }
                }
            }
        }
        None
    }

    /// Coefficient search by increasing degree, larger index at 0 first.
    fn search(&self, i: usize, k: usize) -> Option<Certificate> {
        let l = self.action.order();
        let p1 = P1Action::new(l, 0, 1).ok()?;
        let (lo, hi) = (i.min(k), i.max(k));
        for e in 0..=self.config.max_degree {
            for fp in self.reduced.values() {
                for (x, y) in [(hi, lo), (lo, hi)] {
                    let Ok(out) = ansatz_search(
                        fp,
                        self.action,
                        x,
                        y,
                        e,
                        &p1,
                        self.config.budget,
                        self.config.seed,
                    ) else {
                        continue;
                    };
                    if let Some(curve) = out.curve {
                        let cert = Certificate::ExplicitCurve {
                            endpoints: [x, y],
                            curve: AnyCurve::Prime(curve),
                            method: "ansatz_search".into(),
                            root_powers: vec![],
                        };
                        if let Some(c) = self.accept(cert) {
                            return Some(c);
                        }
                    }
                }
            }
        }
        None
    }
}

fn build_vertices(
    f: &AmbientPoly<Rationals>,
    action: &CyclicAction,
) -> Result<Vec<Vertex>, ActionError> {
    let mut vertices = Vec::new();
    for comp in action.fixed_points_on_hypersurface(f)? {
        let on_x = comp.coordinate_points_on_hypersurface();
        let subspace = &comp.locus.subspace;
        if comp.is_positive_dimensional() {
            vertices.push(VertexKind::Component {
                locus: subspace.describe(),
                zero_set: subspace.zero_set().to_vec(),
                coordinates_on_x: on_x,
            });
            continue;
        }
        let roots = if subspace.dim() == 1 {
            let free = subspace.free_coords();
            binary_restriction(&comp.restricted, free[0], free[1])
                .distinct_root_count()
                .unwrap_or(0)
        } else {
            1
        };
        for &i in &on_x {
            vertices.push(VertexKind::Point { coordinate: i });
        }
        let extra = roots.saturating_sub(on_x.len() as u32);
        if extra > 0 {
            vertices.push(VertexKind::OffCoordinateRoots {
                locus: subspace.describe(),
                zero_set: subspace.zero_set().to_vec(),
                count: extra,
            });
        }
    }
    let weights: Vec<u64> = vertices
        .iter()
        .map(|k| match k {
            VertexKind::Point { coordinate } => action.weight(*coordinate),
            VertexKind::Component { zero_set, .. }
            | VertexKind::OffCoordinateRoots { zero_set, .. } => {
                let free = (0..action.nvars())
                    .find(|i| !zero_set.contains(i))
                    .expect("proper subspace");
                action.weight(free)
            }
        })
        .collect();
    Ok(vertices
        .into_iter()
        .zip(weights)
        .enumerate()
        .map(|(id, (kind, weight))| Vertex { id, weight, kind })
        .collect())
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let r = self.find(self.0[x]);
            self.0[x] = r;
        }
        self.0[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Builds the connectivity graph. Passes run over vertex pairs in
/// lexicographic order, skipping pairs that are already reachable:
/// lines on the hypersurface, closed-form solvers, then coefficient search.
/// Reachable pairs without a direct edge get a chain certificate.
pub fn connectivity(
    f: &AmbientPoly<Rationals>,
    action: &CyclicAction,
    config: &SearchConfig,
) -> Result<ConnectivityGraph, CurveError> {
    let vertices = build_vertices(f, action)?;
    let ctx = Context::new(f, action, config);
    let nv = vertices.len();
    let mut uf = UnionFind((0..nv).collect());
    let mut edges: Vec<Edge> = Vec::new();
    let pairs: Vec<(usize, usize)> = (0..nv)
        .flat_map(|a| (a + 1..nv).map(move |b| (a, b)))
        .collect();

    for pass in 0..3 {
        for &(a, b) in &pairs {
            if uf.find(a) == uf.find(b) {
                continue;
            }
            let (Some(i), Some(k)) = (vertices[a].representative(), vertices[b].representative())
            else {
                continue;
            };
            let found = match pass {
                0 => ctx.structural(i, k),
                1 => ctx.solver(i, k),
                _ => ctx.search(i, k),
            };
            if let Some(cert) = found {
                edges.push(Edge {
                    vertices: (a, b),
                    certificate: cert,
                });
                uf.union(a, b);
            }
        }
    }

    let mut summaries = Vec::new();
    for &(a, b) in &pairs {
        let status = if let Some(e) = edges.iter().find(|e| e.vertices == (a, b)) {
            PairStatus::Connected(e.certificate.clone())
        } else if uf.find(a) == uf.find(b) {
            PairStatus::Connected(chain(&vertices, &edges, a, b))
        } else if vertices[a].representative().is_none() || vertices[b].representative().is_none() {
            PairStatus::Unresolved(
                "fixed points off the coordinate points carry no certificate".into(),
            )
        } else {
            PairStatus::Unresolved(format!(
                "no certificate up to degree {} over primes {:?}",
                config.max_degree, config.primes
            ))
        };
        summaries.push(PairSummary {
            vertices: (a, b),
            status,
        });
    }

    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..nv {
        classes.entry(uf.find(v)).or_default().push(v);
    }
    Ok(ConnectivityGraph {
        vertices,
        edges,
        pairs: summaries,
        classes: classes.into_values().collect(),
    })
}

/// Breadth-first path from `a` to `b` over the edges, as a chain.
fn chain(vertices: &[Vertex], edges: &[Edge], a: usize, b: usize) -> Certificate {
    let mut prev: Vec<Option<usize>> = vec![None; vertices.len()];
    let mut seen = vec![false; vertices.len()];
    let mut queue = VecDeque::from([a]);
    seen[a] = true;
    while let Some(v) = queue.pop_front() {
        for (idx, e) in edges.iter().enumerate() {
            let next = match e.vertices {
                (p, q) if p == v => q,
                (p, q) if q == v => p,
                _ => continue,
            };
            if !seen[next] {
                seen[next] = true;
                prev[next] = Some(idx);
                queue.push_back(next);
            }
        }
    }
    let mut links = Vec::new();
    let mut at = b;
    while at != a {
        let idx = prev[at].expect("reachable");
        let e = &edges[idx];
        links.push(e.certificate.clone());
        at = if e.vertices.0 == at {
            e.vertices.1
        } else {
            e.vertices.0
        };
    }
    links.reverse();
    let rep = |v: usize| {
        vertices[v]
            .representative()
            .expect("connected vertices have coordinates")
    };
    Certificate::Chain {
        endpoints: [rep(a), rep(b)],
        links,
    }
}

/// A certificate for one pair of fixed coordinate points: a shared
/// component, a line, a closed-form curve, a searched curve, or a chain
/// through the full graph.
pub fn connect_pair(
    f: &AmbientPoly<Rationals>,
    action: &CyclicAction,
    i: usize,
    k: usize,
    config: &SearchConfig,
) -> Result<Option<Certificate>, CurveError> {
    let n = action.nvars();
    if i >= n || k >= n {
        return Err(CurveError::EndpointOutOfRange(i.max(k)));
    }
    let vertices = build_vertices(f, action)?;
    let (Some(va), Some(vb)) = (
        vertices.iter().find(|v| v.contains_coordinate(i)),
        vertices.iter().find(|v| v.contains_coordinate(k)),
    ) else {
        return Ok(None);
    };
    let ctx = Context::new(f, action, config);
    if va.id == vb.id {
        if let VertexKind::Component { zero_set, .. } = &va.kind {
            let locus = CoordinateSubspace::new(n, zero_set.clone())?;
            return Ok(ctx.accept(Certificate::SameFixedComponent {
                endpoints: [i, k],
                locus,
            }));
        }
        // the same isolated point: the constant curve
        return Ok(ctx.search(i, k));
    }
    let direct = ctx
        .structural(i, k)
        .or_else(|| ctx.solver(i, k))
        .or_else(|| ctx.search(i, k));
    if direct.is_some() {
        return Ok(direct);
    }
    let graph = connectivity(f, action, config)?;
    let (a, b) = (va.id.min(vb.id), va.id.max(vb.id));
    Ok(graph.pairs.into_iter().find_map(|p| match p.status {
        PairStatus::Connected(c) if p.vertices == (a, b) => Some(c),
        _ => None,
    }))
}
