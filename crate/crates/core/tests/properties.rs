use eqcurve_core::curves::{support, P1Action};
use eqcurve_core::linsys::invariant_monomials;
use eqcurve_core::{
    AmbientPoly, BinaryForm, CyclicAction, Field, LinearSystem, Monomial, PrimeField, Rationals,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const P: u64 = 7;

fn f7() -> PrimeField {
    PrimeField::new(P).unwrap()
}

fn poly(nvars: usize, d: u32, coeffs: &[u64]) -> AmbientPoly<PrimeField> {
    let terms = Monomial::all_of_degree(nvars, d)
        .into_iter()
        .zip(coeffs.iter().map(|c| c % P));
    AmbientPoly::new(f7(), nvars, d, terms).unwrap()
}

fn arb_poly(nvars: usize, d: u32) -> impl Strategy<Value = AmbientPoly<PrimeField>> {
    let count = Monomial::all_of_degree(nvars, d).len();
    prop::collection::vec(0..P, count).prop_map(move |c| poly(nvars, d, &c))
}

fn arb_forms(nvars: usize, e: u32) -> impl Strategy<Value = Vec<BinaryForm<PrimeField>>> {
    prop::collection::vec(prop::collection::vec(0..P, e as usize + 1), nvars).prop_map(|cs| {
        cs.into_iter()
            .map(|c| BinaryForm::new(f7(), c).unwrap())
            .collect()
    })
}

fn arb_action() -> impl Strategy<Value = CyclicAction> {
    (1..=12u64, prop::collection::vec(-50..50i64, 2..=5))
        .prop_map(|(l, w)| CyclicAction::new(l, &w).unwrap())
}

fn arb_monomial(nvars: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..5u32, nvars).prop_map(Monomial::new)
}

proptest! {
    #[test]
    fn weight_is_additive(action in arb_action(), seed in any::<u64>()) {
        let n = action.nvars();
        let m1 = Monomial::new((0..n).map(|i| ((seed >> (4 * i)) & 3) as u32).collect());
        let m2 = Monomial::new((0..n).map(|i| ((seed >> (4 * i + 2)) & 3) as u32).collect());
        let l = action.order();
        let sum = (action.monomial_weight(&m1).unwrap() + action.monomial_weight(&m2).unwrap()) % l;
        prop_assert_eq!(action.monomial_weight(&m1.mul(&m2).unwrap()).unwrap(), sum);
    }

    #[test]
    fn shifting_weights_shifts_degree_d_weights(action in arb_action(), s in 0..40u64, d in 1..5u32) {
        let l = action.order();
        let shifted = action.shifted(s);
        for m in Monomial::all_of_degree(action.nvars(), d) {
            let before = action.monomial_weight(&m).unwrap();
            prop_assert_eq!(shifted.monomial_weight(&m).unwrap(), (before + d as u64 * (s % l)) % l);
        }
    }

    #[test]
    fn normalizing_preserves_invariant_sets(action in arb_action(), d in 1..4u32, pivot in 0..5usize) {
        let pivot = pivot % action.nvars();
        let l = action.order();
        let norm = action.normalize(pivot).unwrap();
        prop_assert_eq!(norm.weight(pivot), 0);
        prop_assert_eq!(norm.faithful(), action.faithful());
        let shift = d as u64 * (l - action.weight(pivot)) % l;
        for c in 0..l {
            let mut a = invariant_monomials(&action, d, c).unwrap();
            let mut b = invariant_monomials(&norm, d, (c + shift) % l).unwrap();
            a.sort();
            b.sort();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn composition_is_a_ring_map(
        f in arb_poly(3, 2),
        g in arb_poly(3, 2),
        h in arb_poly(3, 1),
        forms in arb_forms(3, 3),
        k in 0..P,
    ) {
        let sum = f.add(&g).unwrap().compose(&forms).unwrap();
        prop_assert_eq!(sum, f.compose(&forms).unwrap().add(&g.compose(&forms).unwrap()).unwrap());
        let prod = f.mul(&h).unwrap().compose(&forms).unwrap();
        prop_assert_eq!(prod, f.compose(&forms).unwrap().mul(&h.compose(&forms).unwrap()));
        let scaled = f.scale(&k).compose(&forms).unwrap();
        prop_assert_eq!(scaled, f.compose(&forms).unwrap().scale(&k));
    }

    #[test]
    fn composition_commutes_with_evaluation(
        f in arb_poly(3, 3),
        forms in arb_forms(3, 2),
        s in 0..P,
        t in 0..P,
    ) {
        let point: Vec<u64> = forms.iter().map(|c| c.eval(&s, &t)).collect();
        prop_assert_eq!(f.compose(&forms).unwrap().eval(&s, &t), f.eval(&point).unwrap());
    }

    #[test]
    fn binary_multiplication_matches_evaluation(
        a in prop::collection::vec(0..P, 1..6),
        b in prop::collection::vec(0..P, 1..6),
        s in 0..P,
        t in 0..P,
    ) {
        let fp = f7();
        let (fa, fb) = (BinaryForm::new(fp, a).unwrap(), BinaryForm::new(fp, b).unwrap());
        prop_assert_eq!(fa.mul(&fb).eval(&s, &t), fp.mul(&fa.eval(&s, &t), &fb.eval(&s, &t)));
    }

    #[test]
    fn reduction_commutes_with_evaluation(
        coeffs in prop::collection::vec((-30..30i64, 1..4i64), 10),
        point in prop::collection::vec(-10..10i64, 3),
        p in prop::sample::select(vec![5u64, 7, 11, 13]),
    ) {
        let q = Rationals;
        let terms = Monomial::all_of_degree(3, 2)
            .into_iter()
            .zip(coeffs.iter().map(|&(n, d)| {
                // denominators coprime to every sampled prime
                let den = [1i64, 2, 3][(d - 1) as usize];
                BigRational::new(BigInt::from(n), BigInt::from(den))
            }));
        let f = AmbientPoly::new(q, 3, 2, terms).unwrap();
        let fp = PrimeField::new(p).unwrap();
        let rat_point: Vec<BigRational> = point.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        let exact = fp.reduce_rational(&f.eval(&rat_point).unwrap()).unwrap();
        let fp_point: Vec<u64> = point.iter().map(|&x| fp.from_i64(x)).collect();
        prop_assert_eq!(f.reduce(&fp).unwrap().eval(&fp_point).unwrap(), exact);
    }

    #[test]
    fn partial_derivative_satisfies_euler(f in arb_poly(3, 3), point in prop::collection::vec(0..P, 3)) {
        // sum_i X_i dF/dX_i = d F
        let fp = f7();
        let lhs = (0..3).fold(0, |acc, i| {
            let di = f.partial(i).unwrap().eval(&point).unwrap();
            fp.add(&acc, &fp.mul(&point[i], &di))
        });
        prop_assert_eq!(lhs, fp.mul(&fp.from_i64(3), &f.eval(&point).unwrap()));
    }

    #[test]
    fn support_classes_partition_degrees(l in 1..=12u64, e in 0..=12u32, a in -20..20i64, b in -20..20i64) {
        if let Ok(p1) = P1Action::new(l, a, b) {
            let mut all: Vec<u32> = (0..l).flat_map(|r| support(e, &p1, r)).collect();
            all.sort();
            prop_assert_eq!(all, (0..=e).collect::<Vec<_>>());
        }
    }

    #[test]
    fn dropping_in_stages_equals_dropping_at_once(action in arb_action(), d in 1..4u32, mask in any::<u64>()) {
        let l = action.order();
        let v = LinearSystem::full(&action, d, mask % l).unwrap();
        let basis = v.basis().to_vec();
        let first: Vec<Monomial> = basis.iter().enumerate().filter(|(k, _)| mask >> (k % 64) & 1 == 1).map(|(_, m)| m.clone()).collect();
        let second: Vec<Monomial> = basis.iter().enumerate().filter(|(k, _)| mask >> ((k + 7) % 64) & 1 == 1 && mask >> (k % 64) & 1 == 0).map(|(_, m)| m.clone()).collect();
        let staged = v.drop_monomials(&first).unwrap().drop_monomials(&second).unwrap();
        let both: Vec<Monomial> = first.iter().chain(&second).cloned().collect();
        let at_once = v.drop_monomials(&both).unwrap();
        prop_assert_eq!(staged.basis(), at_once.basis());
    }

    #[test]
    fn smaller_systems_have_larger_base_loci(action in arb_action(), d in 1..4u32, mask in any::<u64>()) {
        let l = action.order();
        let v = LinearSystem::full(&action, d, mask % l).unwrap();
        let dropped: Vec<Monomial> = v.basis().iter().enumerate().filter(|(k, _)| mask >> (k % 64) & 1 == 1).map(|(_, m)| m.clone()).collect();
        let w = v.drop_monomials(&dropped).unwrap();
        if let Some(cs) = v.base_locus().components() {
            for c in cs {
                prop_assert!(w.base_locus().contains_subspace(c));
            }
        }
    }

    #[test]
    fn monomial_json_round_trip(m in arb_monomial(4), c in 1..P) {
        let fp = f7();
        let f = AmbientPoly::new(fp, 4, m.degree(), [(m, c)]).unwrap();
        let back = eqcurve_core::poly::poly_from_json(&fp, 4, &f.to_json()).unwrap();
        prop_assert_eq!(back, f);
    }
}
