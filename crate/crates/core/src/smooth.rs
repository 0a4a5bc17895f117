//! Jacobian-criterion smoothness over prime fields by exhaustive point
//! enumeration, and randomized search for smooth members of linear systems.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::action::CoordinateSubspace;
use crate::error::SmoothError;
use crate::field::PrimeField;
use crate::linsys::LinearSystem;
use crate::poly::AmbientPoly;

/// Caps on the exhaustive enumeration of `P^n(F_p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub max_p: u64,
    pub max_n: usize,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        Self {
            max_p: 11,
            max_n: 5,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SmoothStatus {
    /// `member` has no singular `F_p`-point.
    SmoothOverFp {
        p: u64,
        member: AmbientPoly<PrimeField>,
    },
    SingularAt {
        points: Vec<Vec<u64>>,
    },
    Unknown,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SmoothVerdict {
    pub status: SmoothStatus,
    pub trials_used: u32,
    pub seed: u64,
}

impl SmoothVerdict {
    pub fn is_smooth(&self) -> bool {
        matches!(self.status, SmoothStatus::SmoothOverFp { .. })
    }

    pub fn to_json(&self) -> Value {
        let status = match &self.status {
            SmoothStatus::SmoothOverFp { p, member } => json!({
                "kind": "smooth_over_fp",
                "p": p,
                "member": member.to_json(),
            }),
            SmoothStatus::SingularAt { points } => {
                json!({ "kind": "singular_at", "points": points })
            }
            SmoothStatus::Unknown => json!({ "kind": "unknown", "claim": "unverified" }),
        };
        let claim = match &self.status {
            SmoothStatus::SmoothOverFp { .. } => "smooth_over_fp",
            SmoothStatus::SingularAt { .. } => "singular",
            SmoothStatus::Unknown => "unverified",
        };
        json!({ "claim": claim, "status": status, "trials_used": self.trials_used, "seed": self.seed })
    }
}

/// A polynomial over `F_p` flattened for fast repeated evaluation.
struct Compiled {
    p: u64,
    terms: Vec<(Vec<u32>, u64)>,
}

impl Compiled {
    fn new(f: &AmbientPoly<PrimeField>) -> Self {
        Self {
            p: f.field().modulus(),
            terms: f
                .terms()
                .map(|(m, c)| (m.exponents().to_vec(), *c))
                .collect(),
        }
    }

    fn eval(&self, x: &[u64]) -> u64 {
        let p = self.p;
        self.terms.iter().fold(0, |acc, (exps, c)| {
            let v = exps.iter().zip(x).fold(*c, |v, (&e, &xi)| {
                let mut r = v;
                for _ in 0..e {
                    r = r * xi % p;
                }
                r
            });
            (acc + v) % p
        })
    }
}

fn check_scope(
    f: &AmbientPoly<PrimeField>,
    limits: &EnumerationLimits,
) -> Result<u64, SmoothError> {
    let p = f.field().modulus();
    let n = f.nvars() - 1;
    if (f.degree() as u64).is_multiple_of(p) {
        return Err(SmoothError::CharacteristicDividesDegree { p, d: f.degree() });
    }
    if p > limits.max_p || n > limits.max_n {
        return Err(SmoothError::OutOfScope {
            p,
            n,
            max_p: limits.max_p,
            max_n: limits.max_n,
        });
    }
    Ok(p)
}

/// Normalized representatives of the `F_p`-points of a coordinate subspace,
/// given by its free coordinates: the first nonzero free coordinate is 1.
fn points_of(nvars: usize, free: &[usize], p: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for (lead_pos, &lead) in free.iter().enumerate() {
        let tail = &free[lead_pos + 1..];
        let count = p.pow(tail.len() as u32);
        for mut idx in 0..count {
            let mut x = vec![0u64; nvars];
            x[lead] = 1;
            for &t in tail.iter().rev() {
                x[t] = idx % p;
                idx /= p;
            }
            out.push(x);
        }
    }
    out
}

fn singular_among(f: &AmbientPoly<PrimeField>, free: &[usize]) -> Vec<Vec<u64>> {
    let p = f.field().modulus();
    let grad: Vec<Compiled> = f.gradient().iter().map(Compiled::new).collect();
    let mut pts: Vec<Vec<u64>> = points_of(f.nvars(), free, p)
        .into_par_iter()
        .filter(|x| grad.iter().all(|g| g.eval(x) == 0))
        .collect();
    pts.sort();
    pts
}

/// Every point of `P^n(F_p)` where all partial derivatives vanish.
pub fn singular_points_over_fp(f: &AmbientPoly<PrimeField>) -> Result<Vec<Vec<u64>>, SmoothError> {
    singular_points_with_limits(f, &EnumerationLimits::default())
}

pub fn singular_points_with_limits(
    f: &AmbientPoly<PrimeField>,
    limits: &EnumerationLimits,
) -> Result<Vec<Vec<u64>>, SmoothError> {
    check_scope(f, limits)?;
    let all: Vec<usize> = (0..f.nvars()).collect();
    Ok(singular_among(f, &all))
}

/// Singular points of `{F = 0}` lying on the coordinate subspace `z`.
pub fn singular_on_subspace(
    f: &AmbientPoly<PrimeField>,
    z: &CoordinateSubspace,
) -> Result<Vec<Vec<u64>>, SmoothError> {
    check_scope(f, &EnumerationLimits::default())?;
    if z.nvars() != f.nvars() {
        return Err(crate::error::ActionError::ArityMismatch {
            expected: f.nvars(),
            found: z.nvars(),
        }
        .into());
    }
    Ok(singular_among(f, &z.free_coords()))
}

/// Smoothness verdict for a single hypersurface over `F_p`.
pub fn hypersurface_verdict(f: &AmbientPoly<PrimeField>) -> Result<SmoothVerdict, SmoothError> {
    let points = singular_points_over_fp(f)?;
    let status = if points.is_empty() {
        SmoothStatus::SmoothOverFp {
            p: f.field().modulus(),
            member: f.clone(),
        }
    } else {
        SmoothStatus::SingularAt { points }
    };
    Ok(SmoothVerdict {
        status,
        trials_used: 1,
        seed: 0,
    })
}

/// Draws members of `l` with coefficients uniform in `F_p^*` until one is
/// smooth over `F_p`, or `trials` draws are spent.
pub fn smooth_member_exists(
    l: &LinearSystem,
    p: u64,
    trials: u32,
    seed: u64,
) -> Result<SmoothVerdict, SmoothError> {
    if l.is_empty() {
        return Err(SmoothError::EmptyBasis);
    }
    let fp = PrimeField::new(p).map_err(|_| SmoothError::OutOfScope {
        p,
        n: l.nvars() - 1,
        max_p: EnumerationLimits::default().max_p,
        max_n: EnumerationLimits::default().max_n,
    })?;
    if (l.degree() as u64).is_multiple_of(p) {
        return Err(SmoothError::CharacteristicDividesDegree { p, d: l.degree() });
    }
    if l.action().order().is_multiple_of(p) {
        return Err(SmoothError::CharacteristicDividesOrder {
            p,
            l: l.action().order(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 1..=trials {
        let terms: Vec<_> = l
            .basis()
            .iter()
            .map(|m| (m.clone(), rng.gen_range(1..p)))
            .collect();
        let member = AmbientPoly::new(fp, l.nvars(), l.degree(), terms)?;
        if singular_points_over_fp(&member)?.is_empty() {
            return Ok(SmoothVerdict {
                status: SmoothStatus::SmoothOverFp { p, member },
                trials_used: trial,
                seed,
            });
        }
    }
    Ok(SmoothVerdict {
        status: SmoothStatus::Unknown,
        trials_used: trials,
        seed,
    })
}
