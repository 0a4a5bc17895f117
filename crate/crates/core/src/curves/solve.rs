//! Closed-form curves for hypersurfaces `B(X_i, X_k) + sum_m kappa_m X_m^d`.
//!
//! Setting `X_i = S^D`, `X_k = T^D` turns each term `q_s X_i^s X_k^(d-s)` of
//! `B` into `q_s S^(Ds) T^(D(d-s))`, which is cancelled by a component
//! `X_m = mu S^(Ds/d) T^(D(d-s)/d)` with `kappa_m mu^d = -q_s`.

use serde::Serialize;

use super::{units, EquivariantCurve, P1Action};
use crate::action::CyclicAction;
use crate::error::CurveError;
use crate::field::Field;
use crate::poly::{AmbientPoly, BinaryForm, Monomial};

/// The `mu` placed in one component.
#[derive(Clone, Debug, PartialEq)]
pub struct RootChoice<K: Field> {
    pub component: usize,
    pub exponent: u32,
    /// `mu^d`, which is forced by the equation.
    pub power: K::Elem,
    /// The chosen `d`-th root.
    pub root: K::Elem,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalSolution<K: Field> {
    pub curve: EquivariantCurve<K>,
    pub roots: Vec<RootChoice<K>>,
}

/// Binary terms `(s, q_s)` and pure powers `(m, kappa_m)` of `F`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiagonalShape<E> {
    pub binary: Vec<(u32, E)>,
    pub powers: Vec<(usize, E)>,
}

/// Splits `F` into a binary part in `X_i, X_k` without pure powers and a
/// diagonal part in the other variables.
pub fn diagonal_shape<K: Field>(
    f: &AmbientPoly<K>,
    i: usize,
    k: usize,
) -> Result<DiagonalShape<K::Elem>, CurveError> {
    let n = f.nvars();
    if i >= n || k >= n || i == k {
        return Err(CurveError::EndpointOutOfRange(i.max(k)));
    }
    let d = f.degree();
    let mut binary = Vec::new();
    let mut powers = Vec::new();
    for (m, c) in f.terms() {
        let e = m.exponents();
        if e[i] + e[k] == d {
            if e[i] == 0 || e[k] == 0 {
                return Err(CurveError::PatternMismatch(format!(
                    "{m} is a pure power of an endpoint coordinate"
                )));
            }
            binary.push((e[i], c.clone()));
        } else if let Some(v) = (0..n).find(|&v| e[v] == d) {
            powers.push((v, c.clone()));
        } else {
            return Err(CurveError::PatternMismatch(format!(
                "{m} is neither binary in X{i}, X{k} nor a pure power"
            )));
        }
    }
    binary.sort_by_key(|b| std::cmp::Reverse(b.0));
    powers.sort_by_key(|p| p.0);
    Ok(DiagonalShape { binary, powers })
}

/// The curve with `X_i = S^D` (so `x_i` at infinity) and `X_k = T^D`
/// (so `x_k` at 0), equivariant for some unit multiple of `p1`.
pub fn solve_diagonal<K: Field>(
    f: &AmbientPoly<K>,
    action: &CyclicAction,
    i: usize,
    k: usize,
    degree: u32,
    p1: &P1Action,
) -> Result<DiagonalSolution<K>, CurveError> {
    let shape = diagonal_shape(f, i, k)?;
    let field = f.field();
    let l = action.order();
    let d = f.degree();
    let big_d = degree;
    let target = (action.weight(i) + l - action.weight(k)) % l;
    let diff = (p1.a + l - p1.b) % l;
    let u = units(l)
        .find(|&u| (big_d as u64 % l) * (u * diff % l) % l == target)
        .ok_or(CurveError::StructurallyImpossible { degree: big_d })?;
    let p1 = p1.scaled(u);
    let twist = (p1.weight(big_d, big_d) + l - action.weight(i)) % l;

    let mut coeffs: Vec<Vec<K::Elem>> = vec![vec![field.zero(); big_d as usize + 1]; f.nvars()];
    coeffs[i][big_d as usize] = field.one();
    coeffs[k][0] = field.one();
    let mut used = vec![false; f.nvars()];
    let mut roots = Vec::new();
    for (s, q_s) in &shape.binary {
        if !(big_d * s).is_multiple_of(d) {
            return Err(CurveError::PatternMismatch(format!(
                "degree {big_d} does not place X{i}^{s} X{k}^{} on a monomial",
                d - s
            )));
        }
        let j = big_d * s / d;
        let r = (p1.weight(big_d, j) + l - twist) % l;
        let (m, kappa) = shape
            .powers
            .iter()
            .find(|(m, _)| !used[*m] && action.weight(*m) == r)
            .ok_or_else(|| {
                CurveError::PatternMismatch(format!(
                    "no free pure-power coordinate of weight {r} for S^{j}"
                ))
            })?;
        used[*m] = true;
        let kappa_inv = field.inv(kappa).expect("stored coefficients are nonzero");
        let power = field.neg(&field.mul(q_s, &kappa_inv));
        let root = field
            .nth_root(&power, d)
            .ok_or_else(|| CurveError::NoRoot {
                value: field.format(&power),
                n: d,
                field: field.spec(),
            })?;
        coeffs[*m][j as usize] = root.clone();
        roots.push(RootChoice {
            component: *m,
            exponent: j,
            power,
            root,
        });
    }
    let components = coeffs
        .into_iter()
        .map(|c| BinaryForm::new(field.clone(), c))
        .collect::<Result<Vec<_>, _>>()?;
    let curve = EquivariantCurve::new(p1, twist, components)?;
    Ok(DiagonalSolution { curve, roots })
}

/// `Q(X_0, X_1) + X_2^e + ... + X_n^e`, where `q` has coefficients of
/// `X_0^j X_1^(e-j)`.
pub fn fermat_type_hypersurface<K: Field>(
    q: &BinaryForm<K>,
    nvars: usize,
) -> Result<AmbientPoly<K>, CurveError> {
    let e = q.degree();
    let field = q.field();
    let mut terms: Vec<(Monomial, K::Elem)> = (0..=e)
        .map(|j| {
            (
                Monomial::binomial(nvars, 0, j, 1, e - j),
                q.coeff(j).clone(),
            )
        })
        .collect();
    terms.extend((2..nvars).map(|m| (Monomial::power(nvars, m, e), field.one())));
    Ok(AmbientPoly::new(field.clone(), nvars, e, terms)?)
}

/// The curve `[S^l, T^l, mu_j S^j T^(l-j), ...]` on
/// `Q(X_0, X_1) + X_2^l + ... + X_n^l` for weights `(w, w, distinct others)`.
pub fn solve_fermat_type<K: Field>(
    q: &BinaryForm<K>,
    action: &CyclicAction,
    p1: &P1Action,
) -> Result<DiagonalSolution<K>, CurveError> {
    let l = action.order();
    let field = q.field();
    if q.degree() as u64 != l {
        return Err(CurveError::PatternMismatch(format!(
            "binary form has degree {}, expected the group order {l}",
            q.degree()
        )));
    }
    if !field.is_zero(q.coeff(0)) || !field.is_zero(q.coeff(q.degree())) {
        return Err(CurveError::PatternMismatch(
            "binary form contains a pure power".into(),
        ));
    }
    let p = field.characteristic();
    if p != 0 && p % l != 1 {
        return Err(CurveError::BadCharacteristic { p, l });
    }
    let w = action.weights();
    let mut others: Vec<u64> = w[2..].to_vec();
    others.sort_unstable();
    others.dedup();
    if w[0] != w[1] || others.len() != w.len() - 2 || others.contains(&w[0]) {
        return Err(CurveError::PatternMismatch(
            "weights must agree on X0, X1 and be distinct elsewhere".into(),
        ));
    }
    let f = fermat_type_hypersurface(q, action.nvars())?;
    solve_diagonal(&f, action, 0, 1, q.degree(), p1)
}

/// Curves on `X0^(d-1) X1 + X1^(d-1) X0 + sum X_i^d` with `d = kq + 2`,
/// `l = dq`, weights `(x, (1-d) x, distinct multiples of q)`.
///
/// After shifting the weights so that `0 <= x < q` and putting
/// `m = d - 1 - kx`, a pair of weights `{tq, (m - t + 1) q}` for
/// `t = 1, 2, 3` among the others yields `X_0 = S^D`, `X_1 = T^D` with
/// `D = d (tq - x)`.
pub fn solve_two_point_family<K: Field>(
    f: &AmbientPoly<K>,
    action: &CyclicAction,
    k: u64,
    q: u64,
) -> Result<DiagonalSolution<K>, CurveError> {
    let d = k * q + 2;
    let l = d * q;
    if f.degree() as u64 != d || action.order() != l {
        return Err(CurveError::PatternMismatch(format!(
            "expected degree {d} and group order {l}"
        )));
    }
    let w = action.weights();
    let x = w[0];
    if w[1] != (l + (l - (d - 1) % l) * x % l) % l {
        return Err(CurveError::PatternMismatch(
            "second weight is not (1 - d) x".into(),
        ));
    }
    let shift = x - x % q;
    let shifted: Vec<u64> = w[2..].iter().map(|v| (v + l - shift) % l).collect();
    let mut distinct = shifted.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != shifted.len() || shifted.iter().any(|v| v % q != 0) {
        return Err(CurveError::PatternMismatch(
            "other weights must be distinct multiples of q".into(),
        ));
    }
    let x = x % q;
    let m = d - 1 - k * x;
    let p1 = P1Action::new(l, 0, 1)?;
    let mut last = CurveError::PatternMismatch("no admissible weight pair".into());
    for t in 1..=3u64 {
        if m + 1 < t {
            break;
        }
        let pair = [(t * q) % l, ((m + 1 - t) * q) % l];
        if pair[0] == pair[1] || !pair.iter().all(|v| shifted.contains(v)) {
            continue;
        }
        match solve_diagonal(f, action, 0, 1, (d * (t * q - x)) as u32, &p1) {
            Ok(sol) => return Ok(sol),
            Err(e) => last = e,
        }
    }
    Err(last)
}
