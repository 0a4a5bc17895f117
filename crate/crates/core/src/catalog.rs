//! Ready-made hypersurfaces, actions and curves used by tests, the CLI and
//! the documentation.

use crate::action::CyclicAction;
use crate::curves::{EquivariantCurve, P1Action};
use crate::field::{parse_rational, PrimeField, Rationals};
use crate::poly::{AmbientPoly, BinaryForm, Monomial};

/// Builds a rational polynomial from `(coefficient, exponents)` pairs.
///
/// Panics on malformed input; intended for fixed literals.
pub fn rational_poly(nvars: usize, terms: &[(&str, &[u32])]) -> AmbientPoly<Rationals> {
    let terms = terms
        .iter()
        .map(|(c, e)| {
            (
                Monomial::new(e.to_vec()),
                parse_rational(c).expect("literal coefficient"),
            )
        })
        .collect();
    AmbientPoly::from_terms(Rationals, nvars, terms).expect("literal polynomial")
}

/// `X_0^d + ... + X_n^d`.
pub fn fermat(nvars: usize, d: u32) -> AmbientPoly<Rationals> {
    let terms = (0..nvars)
        .map(|i| (Monomial::power(nvars, i, d), parse_rational("1").unwrap()))
        .collect();
    AmbientPoly::from_terms(Rationals, nvars, terms).expect("fermat polynomial")
}

/// Order 4 acting on `P^3` with weights `(3, 2, 0, 1)`.
pub fn order_four_action() -> CyclicAction {
    CyclicAction::new(4, &[3, 2, 0, 1]).unwrap()
}

/// The invariant cubic `X0^2 X1 + X1^2 X2 + X2^3 + X3^2 X1 + X0 X2 X3`.
pub fn order_four_cubic() -> AmbientPoly<Rationals> {
    rational_poly(
        4,
        &[
            ("1", &[2, 1, 0, 0]),
            ("1", &[0, 2, 1, 0]),
            ("1", &[0, 0, 3, 0]),
            ("1", &[0, 1, 0, 2]),
            ("1", &[1, 0, 1, 1]),
        ],
    )
}

/// The quintic curve `[S^5 + 3 S T^4, T^5, S^2 T^3, 4 S^3 T^2]` over `F_5`
/// on the reduction of the order-four cubic, joining `x_1` (at 0) to `x_0`
/// (at infinity).
///
/// Curves of this shape satisfy `a + bc = 0`, `λ^2 + ab = 0` and
/// `aλ + b^3 + c^2 a = 0`; with `u = λ^5 / a^4` this forces `u^2 - u - 1 = 0`,
/// which has no rational root but a double root `u = 3` modulo 5.
pub fn order_four_connecting_curve() -> EquivariantCurve<PrimeField> {
    let f5 = PrimeField::new(5).unwrap();
    let form = |c: [u64; 6]| BinaryForm::new(f5, c.to_vec()).unwrap();
    EquivariantCurve::new(
        P1Action::new(4, 0, 3).unwrap(),
        1,
        vec![
            form([0, 3, 0, 0, 0, 1]),
            form([1, 0, 0, 0, 0, 0]),
            form([0, 0, 1, 0, 0, 0]),
            form([0, 0, 0, 4, 0, 0]),
        ],
    )
    .unwrap()
}

/// `Q(X_0, X_1) + X_2^d + ... + X_n^d`, where `q[s]` is the coefficient of
/// `X_0^s X_1^(d-s)`.
pub fn binary_plus_powers(nvars: usize, q: &[&str]) -> AmbientPoly<Rationals> {
    let d = (q.len() - 1) as u32;
    let mut terms: Vec<(Monomial, _)> = q
        .iter()
        .enumerate()
        .map(|(s, c)| {
            (
                Monomial::binomial(nvars, 0, s as u32, 1, d - s as u32),
                parse_rational(c).unwrap(),
            )
        })
        .collect();
    terms.extend((2..nvars).map(|i| (Monomial::power(nvars, i, d), parse_rational("1").unwrap())));
    AmbientPoly::new(Rationals, nvars, d, terms).expect("binary plus powers")
}

/// Weights `(0, 0, 1, 2)` modulo 3.
pub fn binary_plus_powers_action() -> CyclicAction {
    CyclicAction::new(3, &[0, 0, 1, 2]).unwrap()
}

/// `X0^2 X1 + X0 X1^2 + X2^3 + X3^3`.
pub fn binary_plus_powers_example() -> AmbientPoly<Rationals> {
    binary_plus_powers(4, &["0", "1", "1", "0"])
}

/// The family `X0^(d-1) X1 + X1^(d-1) X0 + X2^d + ... + X_n^d` with
/// `d = kq + 2`, group order `l = dq` and weights `(x, (1-d)x, others..)`.
pub fn two_point_family(
    k: u32,
    q: u32,
    x: i64,
    others: &[i64],
) -> (CyclicAction, AmbientPoly<Rationals>) {
    let d = k * q + 2;
    let l = (d * q) as u64;
    let nvars = 2 + others.len();
    let mut weights = vec![x, (1 - d as i64) * x];
    weights.extend_from_slice(others);
    let action = CyclicAction::new(l, &weights).unwrap();
    let mut terms = vec![
        (
            Monomial::binomial(nvars, 0, d - 1, 1, 1),
            parse_rational("1").unwrap(),
        ),
        (
            Monomial::binomial(nvars, 0, 1, 1, d - 1),
            parse_rational("1").unwrap(),
        ),
    ];
    terms.extend((2..nvars).map(|i| (Monomial::power(nvars, i, d), parse_rational("1").unwrap())));
    let f = AmbientPoly::new(Rationals, nvars, d, terms).expect("two point family");
    (action, f)
}

/// The smallest member: `k = 1`, `q = 2`, so `d = 4`, `l = 8`, weights
/// `(1, 5, 0, 2, 4)`.
pub fn two_point_family_example() -> (CyclicAction, AmbientPoly<Rationals>) {
    two_point_family(1, 2, 1, &[0, 2, 4])
}
