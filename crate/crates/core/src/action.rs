//! Diagonal cyclic actions `g . X_i = zeta^{w_i} X_i` on projective space.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::ActionError;
use crate::field::Field;
use crate::poly::{AmbientPoly, Monomial};

/// A cyclic group of order `l` acting on `P^n` by the weights `w_0..w_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicAction {
    l: u64,
    weights: Vec<u64>,
}

impl CyclicAction {
    /// Weights are reduced into `[0, l)`.
    pub fn new(l: u64, weights: &[i64]) -> Result<Self, ActionError> {
        if l == 0 {
            return Err(ActionError::ZeroOrder);
        }
        if weights.len() < 2 {
            return Err(ActionError::TooFewCoordinates(weights.len()));
        }
        let weights = weights
            .iter()
            .map(|&w| w.rem_euclid(l as i64) as u64)
            .collect();
        Ok(Self { l, weights })
    }

    pub fn trivial(nvars: usize) -> Result<Self, ActionError> {
        Self::new(1, &vec![0; nvars])
    }

    pub fn order(&self) -> u64 {
        self.l
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> u64 {
        self.weights[i]
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    /// `n`, the dimension of the projective space.
    pub fn dim(&self) -> usize {
        self.weights.len() - 1
    }

    /// `sum a_i w_i mod l`.
    pub fn monomial_weight(&self, m: &Monomial) -> Result<u64, ActionError> {
        if m.nvars() != self.nvars() {
            return Err(ActionError::ArityMismatch {
                expected: self.nvars(),
                found: m.nvars(),
            });
        }
        Ok(m.exponents()
            .iter()
            .zip(&self.weights)
            .fold(0, |acc, (&a, &w)| (acc + (a as u64 % self.l) * w) % self.l))
    }

    /// The common weight of all monomials of `f`.
    pub fn eigenvalue<K: Field>(&self, f: &AmbientPoly<K>) -> Result<u64, ActionError> {
        let mut weights = f.monomials().map(|m| self.monomial_weight(m));
        let first = weights.next().ok_or(ActionError::ZeroPolynomial)??;
        for w in weights {
            let w = w?;
            if w != first {
                return Err(ActionError::NotEigenvector(first, w));
            }
        }
        Ok(first)
    }

    /// Same projective action, linearized so that `w(pivot) = 0`.
    pub fn normalize(&self, pivot: usize) -> Result<Self, ActionError> {
        let shift = *self
            .weights
            .get(pivot)
            .ok_or(ActionError::IndexOutOfRange(pivot))?;
        Ok(self.shifted(self.l - shift))
    }

    /// Adds `s` to every weight.
    pub fn shifted(&self, s: u64) -> Self {
        Self {
            l: self.l,
            weights: self.weights.iter().map(|w| (w + s) % self.l).collect(),
        }
    }

    /// Faithfulness on `P^n`: the weight differences generate `Z/l`.
    pub fn faithful(&self) -> bool {
        let w0 = self.weights[0];
        let g = self
            .weights
            .iter()
            .fold(self.l, |g, &w| g.gcd(&((w + self.l - w0) % self.l)));
        g == 1
    }

    /// Eigen-subspaces of `P^n`, one per distinct weight, sorted by weight.
    pub fn fixed_loci(&self) -> Vec<FixedLocus> {
        let mut distinct: Vec<u64> = self.weights.clone();
        distinct.sort_unstable();
        distinct.dedup();
        distinct
            .into_iter()
            .map(|w| {
                let zero_set = (0..self.nvars())
                    .filter(|&i| self.weights[i] != w)
                    .collect();
                FixedLocus {
                    subspace: CoordinateSubspace {
                        nvars: self.nvars(),
                        zero_set,
                    },
                    weight: w,
                }
            })
            .collect()
    }

    /// Intersections of the fixed loci with `{F = 0}`.
    ///
    /// Isolated coordinate points are kept only when they lie on the
    /// hypersurface; positive-dimensional loci always meet it and carry the
    /// restriction of `F`.
    pub fn fixed_points_on_hypersurface<K: Field>(
        &self,
        f: &AmbientPoly<K>,
    ) -> Result<Vec<FixedComponent<K>>, ActionError> {
        if f.nvars() != self.nvars() {
            return Err(ActionError::ArityMismatch {
                expected: self.nvars(),
                found: f.nvars(),
            });
        }
        self.eigenvalue(f)?;
        Ok(self
            .fixed_loci()
            .into_iter()
            .filter_map(|locus| {
                let restricted = f.restrict(locus.subspace.zero_set());
                let entire = restricted.is_zero();
                (locus.subspace.dim() > 0 || entire).then_some(FixedComponent {
                    locus,
                    restricted,
                    entire,
                })
            })
            .collect())
    }
}

/// The linear subspace `{X_i = 0 : i in zero_set}` of `P^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoordinateSubspace {
    nvars: usize,
    zero_set: Vec<usize>,
}

impl CoordinateSubspace {
    pub fn new(nvars: usize, mut zero_set: Vec<usize>) -> Result<Self, ActionError> {
        zero_set.sort_unstable();
        zero_set.dedup();
        if let Some(&bad) = zero_set.iter().find(|&&i| i >= nvars) {
            return Err(ActionError::IndexOutOfRange(bad));
        }
        if zero_set.len() >= nvars {
            return Err(ActionError::EmptySubspace);
        }
        Ok(Self { nvars, zero_set })
    }

    /// The subspace spanned by the given coordinate points.
    pub fn span(nvars: usize, points: &[usize]) -> Result<Self, ActionError> {
        Self::new(nvars, (0..nvars).filter(|i| !points.contains(i)).collect())
    }

    pub fn point(nvars: usize, i: usize) -> Result<Self, ActionError> {
        Self::span(nvars, &[i])
    }

    pub fn line(nvars: usize, i: usize, j: usize) -> Result<Self, ActionError> {
        Self::span(nvars, &[i, j])
    }

    pub(crate) fn from_mask(nvars: usize, mask: u64) -> Self {
        Self {
            nvars,
            zero_set: (0..nvars).filter(|&i| mask & (1 << i) != 0).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn zero_set(&self) -> &[usize] {
        &self.zero_set
    }

    /// Coordinates that are free on the subspace.
    pub fn free_coords(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|i| !self.zero_set.contains(i))
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.nvars - 1 - self.zero_set.len()
    }

    pub fn contains_coordinate_point(&self, i: usize) -> bool {
        i < self.nvars && !self.zero_set.contains(&i)
    }

    /// Whether the point (given by its coordinates) lies on the subspace.
    pub fn contains_point<K: Field>(&self, field: &K, point: &[K::Elem]) -> bool {
        point.len() == self.nvars && self.zero_set.iter().all(|&i| field.is_zero(&point[i]))
    }

    pub fn is_subspace_of(&self, other: &CoordinateSubspace) -> bool {
        other.zero_set.iter().all(|i| self.zero_set.contains(i))
    }

    pub fn describe(&self) -> String {
        let free = self.free_coords();
        let joined = free
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(",");
        match free.len() {
            1 => format!("x_{joined}"),
            2 => format!("L_{{{joined}}}"),
            3 => format!("P_{{{joined}}}"),
            _ => format!("span{{{joined}}}"),
        }
    }
}

/// An eigen-subspace of `P^n` on which the group acts trivially.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FixedLocus {
    pub subspace: CoordinateSubspace,
    pub weight: u64,
}

/// A fixed locus of `P^n` met with the hypersurface.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedComponent<K: Field> {
    pub locus: FixedLocus,
    /// `F` restricted to the locus.
    pub restricted: AmbientPoly<K>,
    /// The whole locus lies on the hypersurface.
    pub entire: bool,
}

impl<K: Field> FixedComponent<K> {
    pub fn coordinate_points(&self) -> Vec<usize> {
        self.locus.subspace.free_coords()
    }

    /// Coordinate points of the locus that lie on the hypersurface.
    pub fn coordinate_points_on_hypersurface(&self) -> Vec<usize> {
        self.coordinate_points()
            .into_iter()
            .filter(|&i| {
                let m = Monomial::power(self.restricted.nvars(), i, self.restricted.degree());
                self.restricted.coefficient(&m).is_none()
            })
            .collect()
    }

    /// Positive-dimensional and therefore connected.
    pub fn is_positive_dimensional(&self) -> bool {
        let dim = self.locus.subspace.dim();
        dim >= 2 || (dim >= 1 && self.entire)
    }
}
