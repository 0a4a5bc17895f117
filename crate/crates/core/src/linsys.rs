//! Linear systems spanned by invariant monomials, and their base loci.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::action::{CoordinateSubspace, CyclicAction};
use crate::error::LinsysError;
use crate::field::Field;
use crate::poly::{AmbientPoly, Monomial};

/// All degree-`d` monomials of weight `c`, in canonical order.
pub fn invariant_monomials(
    action: &CyclicAction,
    d: u32,
    c: u64,
) -> Result<Vec<Monomial>, LinsysError> {
    if d == 0 {
        return Err(LinsysError::ZeroDegree);
    }
    let c = c % action.order();
    Ok(Monomial::all_of_degree(action.nvars(), d)
        .into_iter()
        .filter(|m| action.monomial_weight(m).expect("arity matches") == c)
        .collect())
}

/// The span of a set of degree-`d` monomials sharing the eigenvalue `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    action: CyclicAction,
    degree: u32,
    eigenvalue: u64,
    basis: Vec<Monomial>,
}

/// Reduced base locus of a linear system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseLocus {
    /// The system is empty, so every point is a base point.
    Everything,
    /// Minimal coordinate subspaces, ordered by zero set.
    Components(Vec<CoordinateSubspace>),
}

impl BaseLocus {
    pub fn components(&self) -> Option<&[CoordinateSubspace]> {
        match self {
            BaseLocus::Everything => None,
            BaseLocus::Components(c) => Some(c),
        }
    }

    /// Whether the coordinate subspace lies in the base locus.
    pub fn contains_subspace(&self, z: &CoordinateSubspace) -> bool {
        match self {
            BaseLocus::Everything => true,
            BaseLocus::Components(cs) => cs.iter().any(|c| z.is_subspace_of(c)),
        }
    }

    /// Whether the point lies on some component.
    pub fn contains_point<K: Field>(&self, field: &K, point: &[K::Elem]) -> bool {
        match self {
            BaseLocus::Everything => true,
            BaseLocus::Components(cs) => cs.iter().any(|c| c.contains_point(field, point)),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            BaseLocus::Everything => json!("everything"),
            BaseLocus::Components(cs) => Value::Array(
                cs.iter()
                    .map(|c| json!({ "zero_set": c.zero_set(), "name": c.describe() }))
                    .collect(),
            ),
        }
    }
}

impl LinearSystem {
    pub fn new(
        action: CyclicAction,
        degree: u32,
        eigenvalue: u64,
        basis: Vec<Monomial>,
    ) -> Result<Self, LinsysError> {
        if degree == 0 {
            return Err(LinsysError::ZeroDegree);
        }
        let eigenvalue = eigenvalue % action.order();
        let mut seen = BTreeSet::new();
        for m in &basis {
            let w = action.monomial_weight(m)?;
            if m.degree() != degree || w != eigenvalue || !seen.insert(m.clone()) {
                return Err(LinsysError::NotInBasis(m.to_string()));
            }
        }
        let basis = seen.into_iter().collect();
        Ok(Self {
            action,
            degree,
            eigenvalue,
            basis,
        })
    }

    /// Every invariant monomial of degree `d` and weight `c`.
    pub fn full(action: &CyclicAction, d: u32, c: u64) -> Result<Self, LinsysError> {
        let basis = invariant_monomials(action, d, c)?;
        Self::new(action.clone(), d, c, basis)
    }

    /// Invariant members with the eigenvalue of `f` that vanish at `x_i` and `x_j`.
    pub fn vanishing_at_pair<K: Field>(
        action: &CyclicAction,
        f: &AmbientPoly<K>,
        i: usize,
        j: usize,
    ) -> Result<Self, LinsysError> {
        let c = action.eigenvalue(f)?;
        Self::vanishing_at_pair_with_eigenvalue(action, f.degree(), c, i, j)
    }

    pub fn vanishing_at_pair_with_eigenvalue(
        action: &CyclicAction,
        d: u32,
        c: u64,
        i: usize,
        j: usize,
    ) -> Result<Self, LinsysError> {
        let n = action.nvars();
        if i == j || i >= n || j >= n {
            return Err(LinsysError::BadPair(i, j));
        }
        let xi = Monomial::power(n, i, d);
        let xj = Monomial::power(n, j, d);
        let basis = invariant_monomials(action, d, c)?
            .into_iter()
            .filter(|m| *m != xi && *m != xj)
            .collect();
        Self::new(action.clone(), d, c, basis)
    }

    pub fn action(&self) -> &CyclicAction {
        &self.action
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn eigenvalue(&self) -> u64 {
        self.eigenvalue
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn nvars(&self) -> usize {
        self.action.nvars()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.basis.binary_search(m).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// The sub-system spanned by the basis minus `removed`.
    pub fn drop_monomials(&self, removed: &[Monomial]) -> Result<Self, LinsysError> {
        if let Some(m) = removed.iter().find(|m| !self.contains(m)) {
            return Err(LinsysError::NotInBasis(m.to_string()));
        }
        let basis = self
            .basis
            .iter()
            .filter(|m| !removed.contains(m))
            .cloned()
            .collect();
        Ok(Self {
            basis,
            ..self.clone()
        })
    }

    /// Base locus with its reduced structure.
    ///
    /// `{X_i = 0 : i in S}` lies in the base locus iff `S` meets the support of
    /// every basis monomial, so the components are the minimal such `S`.
    pub fn base_locus(&self) -> BaseLocus {
        if self.basis.is_empty() {
            return BaseLocus::Everything;
        }
        let n = self.nvars();
        let supports: Vec<u64> = self.basis.iter().map(Monomial::support_mask).collect();
        let hits = |s: u64| supports.iter().all(|&m| m & s != 0);
        let mut minimal: Vec<u64> = Vec::new();
        // Proper subsets only: the full zero set is the empty subspace.
        for size in 1..n {
            for s in subsets_of_size(n, size) {
                if minimal.iter().any(|&m| m & !s == 0) {
                    continue;
                }
                if hits(s) {
                    minimal.push(s);
                }
            }
        }
        let mut comps: Vec<CoordinateSubspace> = minimal
            .into_iter()
            .map(|s| CoordinateSubspace::from_mask(n, s))
            .collect();
        comps.sort_by(|a, b| a.zero_set().cmp(b.zero_set()));
        BaseLocus::Components(comps)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "d": self.degree,
            "eigenvalue": self.eigenvalue,
            "basis": self.basis.iter().map(|m| m.exponents().to_vec()).collect::<Vec<_>>(),
        })
    }
}

/// Bitmasks over `n` bits with exactly `k` bits set, in increasing order.
fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n;
    let first = (1u64 << k) - 1;
    std::iter::successors(Some(first), move |&s| {
        // Gosper's hack
        let c = s & s.wrapping_neg();
        let r = s + c;
        let next = (((r ^ s) >> 2) / c) | r;
        (next < limit).then_some(next)
    })
    .take_while(move |&s| s < limit)
}
