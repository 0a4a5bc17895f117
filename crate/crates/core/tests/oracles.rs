//! Library results checked against brute-force computations that share no
//! code with the library's algorithms.

use eqcurve_core::catalog::{fermat, order_four_action, order_four_cubic};
use eqcurve_core::criteria::{bad_case_classify, BadCaseOutcome};
use eqcurve_core::curves::{support, P1Action};
use eqcurve_core::linsys::invariant_monomials;
use eqcurve_core::smooth::singular_points_over_fp;
use eqcurve_core::{
    AmbientPoly, BaseLocus, CoordinateSubspace, CyclicAction, Field, LinearSystem, Monomial,
    PrimeField, Rationals,
};
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// All exponent vectors of total degree `d` in `n` variables, by counting.
fn all_exponents(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut e = vec![0u32; n];
    fn rec(i: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == e.len() {
            e[i] = left;
            out.push(e.clone());
            return;
        }
        for k in 0..=left {
            e[i] = k;
            rec(i + 1, left - k, e, out);
        }
    }
    rec(0, d, &mut e, &mut out);
    out
}

fn all_points(n: usize, p: u64) -> impl Iterator<Item = Vec<u64>> {
    (0..p.pow(n as u32)).map(move |mut code| {
        (0..n)
            .map(|_| {
                let v = code % p;
                code /= p;
                v
            })
            .collect()
    })
}

fn monomial_value(e: &[u32], pt: &[u64], p: u64) -> u64 {
    e.iter()
        .zip(pt)
        .fold(1, |acc, (&k, &x)| acc * (x.pow(k) % p) % p)
}

#[test]
fn invariant_monomials_match_exhaustive_filter() {
    let a = order_four_action();
    let everything = all_exponents(4, 3);
    assert_eq!(everything.len(), 20);
    let weights = [3u64, 2, 0, 1];
    let mut by_hand: Vec<Monomial> = everything
        .into_iter()
        .filter(|e| {
            e.iter()
                .zip(&weights)
                .map(|(&k, &w)| k as u64 * w)
                .sum::<u64>()
                % 4
                == 0
        })
        .map(Monomial::new)
        .collect();
    by_hand.sort();
    let mut got = invariant_monomials(&a, 3, 0).unwrap();
    got.sort();
    assert_eq!(got, by_hand);
    let expected: Vec<Monomial> = [
        [0, 0, 3, 0],
        [2, 1, 0, 0],
        [0, 2, 1, 0],
        [0, 1, 0, 2],
        [1, 0, 1, 1],
    ]
    .iter()
    .map(|e| Monomial::new(e.to_vec()))
    .collect();
    assert_eq!(got.len(), 5);
    assert!(expected.iter().all(|m| got.contains(m)));
}

#[test]
fn invariant_monomials_random_actions() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let n = rng.gen_range(2..=5);
        let l = rng.gen_range(1..=9u64);
        let d = rng.gen_range(1..=4);
        let w: Vec<i64> = (0..n).map(|_| rng.gen_range(-20..20)).collect();
        let c = rng.gen_range(0..l);
        let action = CyclicAction::new(l, &w).unwrap();
        let mut got = invariant_monomials(&action, d, c).unwrap();
        got.sort();
        let mut want: Vec<Monomial> = all_exponents(n, d)
            .into_iter()
            .filter(|e| {
                let s: i64 = e.iter().zip(&w).map(|(&k, &wi)| k as i64 * wi).sum();
                s.rem_euclid(l as i64) as u64 == c
            })
            .map(Monomial::new)
            .collect();
        want.sort();
        assert_eq!(got, want, "l={l} w={w:?} d={d} c={c}");
    }
}

fn random_system(rng: &mut ChaCha8Rng) -> LinearSystem {
    let n = rng.gen_range(2..=5);
    let l = rng.gen_range(1..=6u64);
    let d = rng.gen_range(1..=4);
    let w: Vec<i64> = (0..n).map(|_| rng.gen_range(0..l as i64)).collect();
    let action = CyclicAction::new(l, &w).unwrap();
    let c = rng.gen_range(0..l);
    let pool = invariant_monomials(&action, d, c).unwrap();
    let keep = rng.gen_range(0.2..1.0);
    let basis = pool.into_iter().filter(|_| rng.gen_bool(keep)).collect();
    LinearSystem::new(action, d, c, basis).unwrap()
}

#[test]
fn base_locus_agrees_with_point_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut disagreements = 0;
    for round in 0..200 {
        let v = random_system(&mut rng);
        let p = if round % 2 == 0 { 3 } else { 5 };
        let fp = PrimeField::new(p).unwrap();
        let locus = v.base_locus();
        let exps: Vec<&[u32]> = v.basis().iter().map(|m| m.exponents()).collect();
        for pt in all_points(v.nvars(), p).filter(|pt| pt.iter().any(|&x| x != 0)) {
            let all_vanish = exps.iter().all(|e| monomial_value(e, &pt, p) == 0);
            if all_vanish != locus.contains_point(&fp, &pt) {
                disagreements += 1;
            }
        }
    }
    assert_eq!(disagreements, 0);
}

#[test]
fn base_locus_components_are_the_maximal_vanishing_subspaces() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let v = random_system(&mut rng);
        let n = v.nvars();
        // a coordinate subspace lies in the base locus iff every basis
        // monomial uses one of its vanishing coordinates
        let vanishes = |mask: u64| {
            v.basis()
                .iter()
                .all(|m| m.support().iter().any(|&i| mask >> i & 1 == 1))
        };
        let full = (1u64 << n) - 1;
        let mut maximal: Vec<Vec<usize>> = (1..full)
            .filter(|&s| vanishes(s))
            .filter(|&s| (0..n).all(|i| s >> i & 1 == 0 || !vanishes(s & !(1 << i))))
            .map(|s| (0..n).filter(|&i| s >> i & 1 == 1).collect())
            .collect();
        maximal.sort();
        match v.base_locus() {
            BaseLocus::Everything => assert!(v.basis().is_empty()),
            BaseLocus::Components(cs) => {
                let mut got: Vec<Vec<usize>> = cs.iter().map(|c| c.zero_set().to_vec()).collect();
                got.sort();
                assert_eq!(got, maximal, "basis {:?}", v.basis());
                for s in 1..full {
                    let z: Vec<usize> = (0..n).filter(|&i| s >> i & 1 == 1).collect();
                    let sub = CoordinateSubspace::new(n, z).unwrap();
                    assert_eq!(v.base_locus().contains_subspace(&sub), vanishes(s));
                }
            }
        }
    }
}

#[test]
fn support_agrees_with_direct_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checked = 0;
    while checked < 500 {
        let l = rng.gen_range(1..=12u64);
        let e = rng.gen_range(0..=12u32);
        let a = rng.gen_range(-30..30i64);
        let b = rng.gen_range(-30..30i64);
        if ((a - b).rem_euclid(l as i64) as u64).gcd(&l) != 1 {
            assert!(P1Action::new(l, a, b).is_err());
            continue;
        }
        let p1 = P1Action::new(l, a, b).unwrap();
        let mut seen = vec![0u32; e as usize + 1];
        for r in 0..l {
            let want: Vec<u32> = (0..=e)
                .filter(|&j| (j as i64 * a + (e - j) as i64 * b).rem_euclid(l as i64) as u64 == r)
                .collect();
            let got = support(e, &p1, r);
            assert_eq!(got, want);
            for j in got {
                seen[j as usize] += 1;
            }
        }
        assert!(seen.iter().all(|&k| k == 1));
        checked += 1;
    }
}

/// Singular points found by evaluating every monomial derivative directly.
fn naive_singular(f: &AmbientPoly<PrimeField>, p: u64) -> Vec<Vec<u64>> {
    let n = f.nvars();
    let terms: Vec<(Vec<u32>, u64)> = f
        .terms()
        .map(|(m, c)| (m.exponents().to_vec(), *c))
        .collect();
    let mut out = Vec::new();
    for pt in all_points(n, p) {
        // keep one representative per line: first nonzero coordinate is 1
        match pt.iter().find(|&&x| x != 0) {
            Some(&1) => {}
            _ => continue,
        }
        let value = terms
            .iter()
            .fold(0, |s, (e, c)| (s + c * monomial_value(e, &pt, p)) % p);
        let grad_zero = (0..n).all(|i| {
            terms.iter().fold(0, |s, (e, c)| {
                if e[i] == 0 {
                    return s;
                }
                let mut d = e.clone();
                d[i] -= 1;
                (s + c * (e[i] as u64 % p) % p * monomial_value(&d, &pt, p)) % p
            }) == 0
        });
        if value == 0 && grad_zero {
            out.push(pt);
        }
    }
    out.sort();
    out
}

#[test]
fn singular_points_match_naive_enumeration() {
    let mut cases: Vec<(AmbientPoly<Rationals>, u64)> = vec![
        (fermat(4, 3), 7),
        (fermat(4, 3), 11),
        (order_four_cubic(), 5),
        (order_four_cubic(), 7),
        (
            eqcurve_core::catalog::rational_poly(3, &[("1", &[1, 1, 0])]),
            5,
        ),
        (
            eqcurve_core::catalog::rational_poly(3, &[("1", &[2, 0, 0]), ("-1", &[0, 1, 1])]),
            3,
        ),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let n = rng.gen_range(2..=4);
        let d = rng.gen_range(2..=3);
        let terms: Vec<(&str, Vec<u32>)> = all_exponents(n, d)
            .into_iter()
            .filter_map(|e| {
                rng.gen_bool(0.3)
                    .then(|| (["1", "2", "-1"][rng.gen_range(0..3)], e))
            })
            .collect();
        if terms.is_empty() {
            continue;
        }
        let borrowed: Vec<(&str, &[u32])> = terms.iter().map(|(c, e)| (*c, e.as_slice())).collect();
        cases.push((eqcurve_core::catalog::rational_poly(n, &borrowed), 5));
    }
    for (f, p) in cases {
        let fp = PrimeField::new(p).unwrap();
        let g = f.reduce(&fp).unwrap();
        if g.is_zero() {
            continue;
        }
        let mut got = singular_points_over_fp(&g).unwrap();
        got.sort();
        assert_eq!(got, naive_singular(&g, p), "{} mod {p}", f.display());
    }
}

#[test]
fn bad_case_congruences_hold_when_rederived() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut assigned = 0;
    let mut attempts = 0;
    while assigned < 300 && attempts < 200_000 {
        attempts += 1;
        let n = rng.gen_range(3..=5);
        let l = rng.gen_range(2..=12u64);
        let d = rng.gen_range(3..=6);
        let w: Vec<i64> = (0..n).map(|_| rng.gen_range(0..l as i64)).collect();
        let action = CyclicAction::new(l, &w).unwrap();
        if !action.faithful() {
            continue;
        }
        let c = rng.gen_range(0..l);
        let v = LinearSystem::vanishing_at_pair_with_eigenvalue(&action, d, c, 0, 1).unwrap();
        let BadCaseOutcome::Case(case) = bad_case_classify(&v, 0, 1) else {
            continue;
        };
        let diff = (w[0] - w[1]).rem_euclid(l as i64);
        // recompute the linked coordinates from the raw weights
        let linked = |u: usize| -> Vec<usize> {
            (0..n)
                .filter(|&i| {
                    i != u && ((d as i64 - 1) * w[u] + w[i]).rem_euclid(l as i64) as u64 == c
                })
                .collect()
        };
        assert_eq!(case.from_a, linked(0));
        assert_eq!(case.from_b, linked(1));
        match case.case {
            1 => assert_eq!((d as i64 - 1) * diff % l as i64, 0),
            3 => assert_eq!((d as i64 - 2) * diff % l as i64, 0),
            _ => {}
        }
        assigned += 1;
    }
    assert!(assigned >= 100, "only {assigned} cases sampled");
}

#[test]
fn field_arithmetic_matches_integer_reduction() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for p in [2u64, 3, 5, 7, 11, 13, 101] {
        let fp = PrimeField::new(p).unwrap();
        for _ in 0..200 {
            let (x, y) = (rng.gen_range(-1000..1000i64), rng.gen_range(-1000..1000i64));
            let (a, b) = (fp.from_i64(x), fp.from_i64(y));
            let m = |v: i64| v.rem_euclid(p as i64) as u64;
            assert_eq!(fp.add(&a, &b), m(x + y));
            assert_eq!(fp.mul(&a, &b), m(x * y));
            assert_eq!(fp.sub(&a, &b), m(x - y));
            if a != 0 {
                assert_eq!(fp.mul(&a, &fp.inv(&a).unwrap()), 1);
            }
            let k = rng.gen_range(0..20u32);
            let naive = (0..k).fold(1i64, |acc, _| (acc * x).rem_euclid(p as i64)) as u64;
            assert_eq!(fp.pow(&a, k as u64), naive);
        }
    }
}

#[test]
fn no_inconsistency_when_members_are_smooth_at_the_pair() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut checked = 0;
    for _ in 0..20_000 {
        let n = rng.gen_range(3..=6);
        let l = rng.gen_range(2..=15u64);
        let d = rng.gen_range(3..=6);
        let w: Vec<i64> = (0..n).map(|_| rng.gen_range(0..l as i64)).collect();
        let action = CyclicAction::new(l, &w).unwrap();
        if !action.faithful() {
            continue;
        }
        let c = rng.gen_range(0..l);
        let v = LinearSystem::vanishing_at_pair_with_eigenvalue(&action, d, c, 0, 1).unwrap();
        let on_general_member = |u: usize| (d as i64 * w[u]).rem_euclid(l as i64) as u64 != c;
        // the tangent monomials X_u^(d-1) X_j keep a general member smooth at x_u
        let smooth_at = |u: usize| {
            (0..n)
                .any(|j| j != u && ((d as i64 - 1) * w[u] + w[j]).rem_euclid(l as i64) as u64 == c)
        };
        if !(on_general_member(0) && on_general_member(1) && smooth_at(0) && smooth_at(1)) {
            continue;
        }
        let outcome = bad_case_classify(&v, 0, 1);
        assert!(
            !matches!(outcome, BadCaseOutcome::Inconsistent { .. }),
            "l={l} w={w:?} d={d} c={c}: {outcome:?}"
        );
        checked += 1;
    }
    assert!(checked > 1000, "{checked}");
}
