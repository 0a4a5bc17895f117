//! Brute-force search for equivariant curves over `F_p` on the monomial
//! support allowed by the weights.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{support, units, EquivariantCurve, P1Action};
use crate::action::CyclicAction;
use crate::error::CurveError;
use crate::field::PrimeField;
use crate::poly::{AmbientPoly, BinaryForm, Monomial};

const BLOCK: u64 = 4096;

#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutcome {
    pub curve: Option<EquivariantCurve<PrimeField>>,
    /// Assignments examined, counted up to and including a hit.
    pub tested: u64,
    /// Size of the full assignment space.
    pub space: u128,
    pub exhaustive: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Free,
    /// The coefficient fixing the point at infinity; never zero.
    NonZero,
}

/// Composition `F(f(S, T))` over `F_p` on dense coefficient vectors.
struct Composer {
    p: u64,
    e: usize,
    terms: Vec<(Vec<u32>, u64)>,
    max_exp: Vec<u32>,
}

impl Composer {
    fn new(f: &AmbientPoly<PrimeField>, e: u32) -> Self {
        let terms: Vec<(Vec<u32>, u64)> = f
            .terms()
            .map(|(m, c)| (m.exponents().to_vec(), *c))
            .collect();
        let mut max_exp = vec![0u32; f.nvars()];
        for (exps, _) in &terms {
            for (mx, &x) in max_exp.iter_mut().zip(exps) {
                *mx = (*mx).max(x);
            }
        }
        Self {
            p: f.field().modulus(),
            e: e as usize,
            terms,
            max_exp,
        }
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        out
    }

    /// `F` at the point `f(s, 1)`.
    fn eval_at(&self, comps: &[Vec<u64>], s: u64) -> u64 {
        let p = self.p;
        let x: Vec<u64> = comps
            .iter()
            .map(|c| c.iter().rev().fold(0, |acc, &v| (acc * s + v) % p))
            .collect();
        self.terms.iter().fold(0, |acc, (exps, c)| {
            let v = exps
                .iter()
                .zip(&x)
                .fold(*c, |v, (&k, &xi)| (0..k).fold(v, |r, _| r * xi % p));
            (acc + v) % p
        })
    }

    fn vanishes(&self, comps: &[Vec<u64>]) -> bool {
        // cheap necessary condition first
        if (1..self.p.min(4)).any(|s| self.eval_at(comps, s) != 0) {
            return false;
        }
        let powers: Vec<Vec<Vec<u64>>> = comps
            .iter()
            .zip(&self.max_exp)
            .map(|(c, &mx)| {
                let mut ps = vec![vec![1u64]];
                for k in 1..=mx as usize {
                    let next = self.mul(&ps[k - 1], c);
                    ps.push(next);
                }
                ps
            })
            .collect();
        let len = self.e
            * self
                .terms
                .first()
                .map_or(0, |t| t.0.iter().sum::<u32>() as usize)
            + 1;
        let mut acc = vec![0u64; len];
        for (exps, c) in &self.terms {
            let mut prod = vec![*c];
            for (i, &k) in exps.iter().enumerate() {
                if k > 0 {
                    prod = self.mul(&prod, &powers[i][k as usize]);
                }
            }
            for (a, v) in acc.iter_mut().zip(&prod) {
                *a = (*a + v) % self.p;
            }
        }
        acc.iter().all(|&v| v == 0)
    }
}

struct Problem {
    p: u64,
    e: u32,
    nvars: usize,
    x: usize,
    slots: Vec<(usize, u32, Slot)>,
    composer: Composer,
}

impl Problem {
    fn radix(&self, slot: Slot) -> u64 {
        match slot {
            Slot::Free => self.p,
            Slot::NonZero => self.p - 1,
        }
    }

    fn space(&self) -> u128 {
        self.slots.iter().map(|s| self.radix(s.2) as u128).product()
    }

    fn base(&self) -> Vec<Vec<u64>> {
        let mut comps = vec![vec![0u64; self.e as usize + 1]; self.nvars];
        comps[self.x][0] = 1;
        comps
    }

    fn assign(&self, comps: &mut [Vec<u64>], digits: &[u64]) {
        for ((i, j, slot), &d) in self.slots.iter().zip(digits) {
            comps[*i][*j as usize] = match slot {
                Slot::Free => d,
                Slot::NonZero => d + 1,
            };
        }
    }

    /// Digits of the `idx`-th assignment in lexicographic order.
    fn decode(&self, mut idx: u128) -> Vec<u64> {
        let mut digits = vec![0u64; self.slots.len()];
        for (k, s) in self.slots.iter().enumerate().rev() {
            let r = self.radix(s.2) as u128;
            digits[k] = (idx % r) as u64;
            idx /= r;
        }
        digits
    }

    fn test(&self, digits: &[u64]) -> Option<Vec<Vec<u64>>> {
        let mut comps = self.base();
        self.assign(&mut comps, digits);
        self.composer.vanishes(&comps).then_some(comps)
    }
}

/// Searches for an equivariant curve of degree `e` over `F_p` with
/// `f(0) = x_x` and `f(infinity) = x_y`.
///
/// The component of `x_x` is pinned to 1 at `T^e` and the component of
/// `x_y` is nonzero at `S^e`; all other coefficients at the two ends are 0.
/// Every other coefficient allowed by the support condition is free. When
/// the space fits in `budget` it is enumerated in lexicographic order and
/// the smallest solution is returned; otherwise `budget` assignments are
/// sampled from a generator seeded by `seed`.
#[allow(clippy::too_many_arguments)]
pub fn ansatz_search(
    f: &AmbientPoly<PrimeField>,
    action: &CyclicAction,
    x: usize,
    y: usize,
    e: u32,
    p1: &P1Action,
    budget: u64,
    seed: u64,
) -> Result<SearchOutcome, CurveError> {
    let n = action.nvars();
    if x >= n || y >= n {
        return Err(CurveError::EndpointOutOfRange(x.max(y)));
    }
    if f.nvars() != n {
        return Err(crate::error::PolyError::ArityMismatch {
            expected: n,
            found: f.nvars(),
        }
        .into());
    }
    let l = action.order();
    if e == 0 && x != y {
        return Err(CurveError::StructurallyImpossible { degree: e });
    }
    let target = (action.weight(y) + l - action.weight(x)) % l;
    let diff = (p1.a + l - p1.b) % l;
    let u = units(l)
        .find(|&u| (e as u64 % l) * (u * diff % l) % l == target)
        .ok_or(CurveError::StructurallyImpossible { degree: e })?;
    let p1 = p1.scaled(u);
    let twist = (p1.weight(e, 0) + l - action.weight(x)) % l;

    let mut slots = Vec::new();
    for i in 0..n {
        for j in support(e, &p1, action.weight(i) + twist) {
            let slot = if i == x && j == 0 {
                continue;
            } else if i == y && j == e {
                Slot::NonZero
            } else if j == 0 || j == e {
                continue;
            } else {
                Slot::Free
            };
            slots.push((i, j, slot));
        }
    }
    let fp = *f.field();
    let problem = Problem {
        p: fp.modulus(),
        e,
        nvars: n,
        x,
        slots,
        composer: Composer::new(f, e),
    };
    let space = problem.space();
    let on_x = |i: usize| f.coefficient(&Monomial::power(n, i, f.degree())).is_none();
    if !on_x(x) || !on_x(y) {
        return Ok(SearchOutcome {
            curve: None,
            tested: 0,
            space,
            exhaustive: true,
        });
    }

    let exhaustive = space <= budget as u128;
    let (hit, tested) = if exhaustive {
        let total = space as u64;
        let blocks = total.div_ceil(BLOCK);
        let hit = (0..blocks).into_par_iter().find_map_first(|b| {
            (b * BLOCK..((b + 1) * BLOCK).min(total))
                .find_map(|idx| problem.test(&problem.decode(idx as u128)).map(|c| (idx, c)))
        });
        let tested = hit.as_ref().map_or(total, |h| h.0 + 1);
        (hit.map(|h| h.1), tested)
    } else {
        let blocks = budget.div_ceil(BLOCK);
        let hit = (0..blocks).into_par_iter().find_map_first(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            (b * BLOCK..((b + 1) * BLOCK).min(budget)).find_map(|idx| {
                let digits: Vec<u64> = problem
                    .slots
                    .iter()
                    .map(|s| rng.gen_range(0..problem.radix(s.2)))
                    .collect();
                problem.test(&digits).map(|c| (idx, c))
            })
        });
        let tested = hit.as_ref().map_or(budget, |h| h.0 + 1);
        (hit.map(|h| h.1), tested)
    };

    let curve = hit
        .map(|comps| {
            let forms = comps
                .into_iter()
                .map(|c| BinaryForm::new(fp, c))
                .collect::<Result<Vec<_>, _>>()?;
            EquivariantCurve::new(p1, twist, forms)
        })
        .transpose()?;
    Ok(SearchOutcome {
        curve,
        tested,
        space,
        exhaustive,
    })
}
