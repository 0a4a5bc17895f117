//! Classification of fixed-point pairs by the monomials of the invariant
//! system through them, plus scenario flags derived from the group order,
//! the degree and the fixed-point configuration.

use num_integer::Integer;
use serde::Serialize;
use serde_json::Value;

use crate::action::CyclicAction;
use crate::error::{ActionError, CriteriaError};
use crate::field::Field;
use crate::linsys::LinearSystem;
use crate::poly::{AmbientPoly, Monomial};

/// A monomial pattern from the sufficient criteria, matched under some
/// relabeling of the auxiliary coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionWitness {
    pub set: u8,
    /// The roles of the two pair points were exchanged.
    pub swapped: bool,
    pub monomials: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CriteriaMatch {
    pub matched: Vec<u8>,
    pub witnesses: Vec<CriterionWitness>,
}

impl CriteriaMatch {
    pub fn is_empty(&self) -> bool {
        self.matched.is_empty()
    }
}

/// Tests the four sufficient monomial sets for the pair `(a, b)`.
///
/// With `u = a`, `v = b` (or swapped) and `r`, `s` distinct coordinates
/// outside the pair, the sets are
/// 1. `u^(d-1) r`, `v^(d-1) s`
/// 2. `u^(d-1) v`, `v^(d-1) r`, `s^d`
/// 3. `u^i v^(d-i)` for some `0 < i < d`, `u^(d-1) r`, `v^(d-1) r`, `s^d`
/// 4. `u^(d-1) v`, `v^(d-1) r`, `r^(d-1) s`
pub fn criteria_match(v: &LinearSystem, a: usize, b: usize) -> CriteriaMatch {
    let n = v.nvars();
    let d = v.degree();
    let mut out = CriteriaMatch::default();
    if d < 2 || a == b || a >= n || b >= n {
        return out;
    }
    let pw = |i: usize, k: u32| Monomial::power(n, i, k);
    let bi = |i: usize, ei: u32, j: usize, ej: u32| Monomial::binomial(n, i, ei, j, ej);
    let aux: Vec<usize> = (0..n).filter(|&k| k != a && k != b).collect();

    for set in 1..=4u8 {
        'search: for (u, w, swapped) in [(a, b, false), (b, a, true)] {
            for &r in &aux {
                for &s in &aux {
                    if r == s {
                        continue;
                    }
                    let candidates: Vec<Vec<Monomial>> = match set {
                        1 => vec![vec![bi(u, d - 1, r, 1), bi(w, d - 1, s, 1)]],
                        2 => vec![vec![bi(u, d - 1, w, 1), bi(w, d - 1, r, 1), pw(s, d)]],
                        3 => (1..d)
                            .map(|i| {
                                vec![
                                    bi(u, i, w, d - i),
                                    bi(u, d - 1, r, 1),
                                    bi(w, d - 1, r, 1),
                                    pw(s, d),
                                ]
                            })
                            .collect(),
                        _ => vec![vec![
                            bi(u, d - 1, w, 1),
                            bi(w, d - 1, r, 1),
                            bi(r, d - 1, s, 1),
                        ]],
                    };
                    if let Some(hit) = candidates
                        .into_iter()
                        .find(|ms| ms.iter().all(|m| v.contains(m)))
                    {
                        out.matched.push(set);
                        out.witnesses.push(CriterionWitness {
                            set,
                            swapped,
                            monomials: hit.iter().map(|m| m.exponents().to_vec()).collect(),
                        });
                        break 'search;
                    }
                }
            }
        }
    }
    out
}

/// `k (w_a - w_b) = 0 mod l`, stored with everything needed to recheck it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Congruence {
    pub factor: u64,
    pub difference: u64,
    pub modulus: u64,
}

impl Congruence {
    pub fn holds(&self) -> bool {
        (self.factor as u128 * self.difference as u128).is_multiple_of(self.modulus as u128)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BadCase {
    pub case: u8,
    /// Coordinates `i` with `X_a^(d-1) X_i` in the system.
    pub from_a: Vec<usize>,
    /// Coordinates `j` with `X_b^(d-1) X_j` in the system.
    pub from_b: Vec<usize>,
    /// `None` when the case carries only a structural pattern.
    pub congruence: Option<Congruence>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BadCaseOutcome {
    /// Some sufficient criterion matched.
    NotApplicable,
    Case(BadCase),
    /// The pattern fits none of the known failure modes.
    Inconsistent {
        from_a: Vec<usize>,
        from_b: Vec<usize>,
    },
}

/// Assigns the failure mode for a pair where no sufficient criterion holds.
pub fn bad_case_classify(v: &LinearSystem, a: usize, b: usize) -> BadCaseOutcome {
    if !criteria_match(v, a, b).is_empty() {
        return BadCaseOutcome::NotApplicable;
    }
    let n = v.nvars();
    let d = v.degree();
    let linked = |u: usize| -> Vec<usize> {
        (0..n)
            .filter(|&i| i != u && v.contains(&Monomial::binomial(n, u, d - 1, i, 1)))
            .collect()
    };
    let from_a = linked(a);
    let from_b = linked(b);
    let a_rest: Vec<usize> = from_a.iter().copied().filter(|&i| i != b).collect();
    let b_rest: Vec<usize> = from_b.iter().copied().filter(|&i| i != a).collect();
    let l = v.action().order();
    let diff = (v.action().weight(a) + l - v.action().weight(b)) % l;
    let congruence = |factor: u32| Congruence {
        factor: factor as u64 % l,
        difference: diff,
        modulus: l,
    };

    let (case, cong) = if from_a == [b] && from_b == [a] {
        (3, Some(congruence(d - 2)))
    } else if (from_a == [b] && !b_rest.is_empty()) || (from_b == [a] && !a_rest.is_empty()) {
        (2, None)
    } else if a_rest.len() == 1 && a_rest == b_rest {
        (1, Some(congruence(d - 1)))
    } else {
        return BadCaseOutcome::Inconsistent { from_a, from_b };
    };
    if let Some(c) = &cong {
        if !c.holds() {
            return BadCaseOutcome::Inconsistent { from_a, from_b };
        }
    }
    BadCaseOutcome::Case(BadCase {
        case,
        from_a,
        from_b,
        congruence: cong,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub pair: (usize, usize),
    pub criteria: CriteriaMatch,
    pub outcome: BadCaseOutcome,
    pub notes: Vec<String>,
}

pub const RELABELING_NOTE: &str =
    "criteria sets matched up to relabeling of coordinates outside the pair and exchange of the pair";

pub fn classify_pair(v: &LinearSystem, a: usize, b: usize) -> PairReport {
    let criteria = criteria_match(v, a, b);
    let outcome = bad_case_classify(v, a, b);
    let mut notes = vec![RELABELING_NOTE.to_string()];
    if let BadCaseOutcome::Case(BadCase { case: 2, .. }) = outcome {
        notes.push("failure mode 2 has no weight congruence; structural pattern only".to_string());
    }
    if let BadCaseOutcome::Inconsistent { from_a, from_b } = &outcome {
        for (x, linked) in [(a, from_a), (b, from_b)] {
            if linked.is_empty() {
                notes.push(format!(
                    "no monomial X_{x}^(d-1) X_j in the system: every member is singular at x_{x}"
                ));
            }
        }
    }
    if v.is_empty() {
        notes.push("invariant system is empty; base locus is all of projective space".to_string());
    }
    PairReport {
        pair: (a, b),
        criteria,
        outcome,
        notes,
    }
}

/// How many fixed points a weight class contributes on the hypersurface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointCount {
    Finite(u32),
    Infinite,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedClass {
    pub weight: u64,
    pub coordinates: Vec<usize>,
    pub count: PointCount,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FixedSource {
    Hypersurface,
    AmbientInferred,
}

/// The fixed points of the action on the hypersurface, grouped by weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPointData {
    pub source: FixedSource,
    /// Only classes meeting the hypersurface.
    pub classes: Vec<FixedClass>,
}

impl FixedPointData {
    pub fn from_hypersurface<K: Field>(
        action: &CyclicAction,
        f: &AmbientPoly<K>,
    ) -> Result<Self, ActionError> {
        let classes = action
            .fixed_points_on_hypersurface(f)?
            .into_iter()
            .filter_map(|c| {
                let coordinates = c.coordinate_points();
                let count = match c.locus.subspace.dim() {
                    0 => PointCount::Finite(1),
                    _ if c.entire || c.locus.subspace.dim() >= 2 => PointCount::Infinite,
                    _ => {
                        let (i, j) = (coordinates[0], coordinates[1]);
                        let form = binary_restriction(&c.restricted, i, j);
                        PointCount::Finite(form.distinct_root_count().unwrap_or(0))
                    }
                };
                (count != PointCount::Finite(0)).then_some(FixedClass {
                    weight: c.locus.weight,
                    coordinates,
                    count,
                })
            })
            .collect();
        Ok(Self {
            source: FixedSource::Hypersurface,
            classes,
        })
    }

    /// Without `F`: an isolated `x_i` is on the hypersurface when `X_i^d`
    /// is not in the invariant system of eigenvalue `c`; larger loci always
    /// meet it.
    pub fn from_ambient(action: &CyclicAction, d: u32, c: u64) -> Self {
        let l = action.order();
        let classes = action
            .fixed_loci()
            .into_iter()
            .filter_map(|locus| {
                let coordinates = locus.subspace.free_coords();
                let count = match locus.subspace.dim() {
                    0 => {
                        let on_x = (d as u64 % l) * locus.weight % l != c % l;
                        if !on_x {
                            return None;
                        }
                        PointCount::Finite(1)
                    }
                    1 => PointCount::Unknown,
                    _ => PointCount::Infinite,
                };
                Some(FixedClass {
                    weight: locus.weight,
                    coordinates,
                    count,
                })
            })
            .collect();
        Self {
            source: FixedSource::AmbientInferred,
            classes,
        }
    }

    pub fn total(&self) -> PointCount {
        self.classes
            .iter()
            .fold(PointCount::Finite(0), |acc, c| match (acc, c.count) {
                (PointCount::Infinite, _) | (_, PointCount::Infinite) => PointCount::Infinite,
                (PointCount::Unknown, _) | (_, PointCount::Unknown) => PointCount::Unknown,
                (PointCount::Finite(x), PointCount::Finite(y)) => PointCount::Finite(x + y),
            })
    }
}

/// `F` restricted to the line `L_{ij}` as a binary form in `(X_i, X_j)`,
/// with `X_i` playing `S`.
pub fn binary_restriction<K: Field>(
    f: &AmbientPoly<K>,
    i: usize,
    j: usize,
) -> crate::poly::BinaryForm<K> {
    let fld = f.field();
    let d = f.degree();
    let mut coeffs = vec![fld.zero(); d as usize + 1];
    for (m, c) in f.terms() {
        let e = m.exponents();
        if e[i] + e[j] == d {
            coeffs[e[i] as usize] = fld.add(&coeffs[e[i] as usize], c);
        }
    }
    crate::poly::BinaryForm::new(fld.clone(), coeffs).expect("nonempty coefficients")
}

/// `d = m p + 1`, `l = m q` with `m = gcd(l, d - 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub m: u64,
    pub p: u64,
    pub q: u64,
    pub coprime: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScenarioFlags {
    pub same_weight: bool,
    pub two_fixed_points: bool,
    pub two_weights: bool,
    pub positive_dimensional_locus: bool,
    pub d_minus_1_invertible: bool,
    pub d_cong_1_mod_l: bool,
    pub general_case: Decomposition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScenarioReport {
    pub l: u64,
    pub d: u32,
    pub source: FixedSource,
    pub flags: ScenarioFlags,
    /// Identifiers of the connectivity statements whose hypotheses hold.
    pub statements: Vec<String>,
    pub fixed_points: FixedPointData,
}

impl ScenarioReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("serializable report")
    }
}

pub fn scenario(
    action: &CyclicAction,
    d: u32,
    fixed: &FixedPointData,
) -> Result<ScenarioReport, CriteriaError> {
    if !action.faithful() {
        return Err(CriteriaError::NotFaithful);
    }
    if d < 2 {
        return Err(CriteriaError::DegreeTooSmall(d));
    }
    let l = action.order();
    let dm1 = (d - 1) as u64;
    let m = l.gcd(&dm1);
    let general_case = Decomposition {
        m,
        p: dm1 / m,
        q: l / m,
        coprime: (dm1 / m).gcd(&(l / m)) == 1,
    };
    let weight_classes = fixed.classes.len();
    let flags = ScenarioFlags {
        same_weight: weight_classes == 1,
        two_fixed_points: fixed.total() == PointCount::Finite(2),
        two_weights: weight_classes == 2,
        positive_dimensional_locus: fixed
            .classes
            .iter()
            .any(|c| c.count == PointCount::Infinite),
        d_minus_1_invertible: m == 1,
        d_cong_1_mod_l: dm1.is_multiple_of(l),
        general_case,
    };
    let mut statements = Vec::new();
    let mut push = |cond: bool, id: &str| {
        if cond {
            statements.push(id.to_string());
        }
    };
    push(
        flags.positive_dimensional_locus,
        "positive-dimensional-fixed-locus",
    );
    push(flags.same_weight, "same-weight");
    push(flags.two_fixed_points, "two-fixed-points");
    push(flags.two_weights, "two-weights");
    push(flags.d_minus_1_invertible, "d-minus-one-invertible");
    push(flags.d_cong_1_mod_l, "d-congruent-one");
    push(
        m >= 2 && general_case.q >= 2 && general_case.coprime,
        "general-decomposition",
    );
    Ok(ScenarioReport {
        l,
        d,
        source: fixed.source,
        flags,
        statements,
        fixed_points: fixed.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{
        binary_plus_powers_action, binary_plus_powers_example, fermat, order_four_action,
        order_four_cubic, two_point_family_example,
    };

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn set_one_by_construction() {
        let a = CyclicAction::trivial(4).unwrap();
        let v = LinearSystem::new(a, 3, 0, vec![m(&[2, 0, 1, 0]), m(&[0, 2, 0, 1])]).unwrap();
        let c = criteria_match(&v, 0, 1);
        assert_eq!(c.matched, vec![1]);
        assert_eq!(bad_case_classify(&v, 0, 1), BadCaseOutcome::NotApplicable);
    }

    #[test]
    fn trivial_action_matches_set_one() {
        let a = CyclicAction::trivial(4).unwrap();
        let v = LinearSystem::vanishing_at_pair(&a, &fermat(4, 3), 0, 1).unwrap();
        assert!(criteria_match(&v, 0, 1).matched.contains(&1));
        assert!(criteria_match(&v, 2, 3).matched.contains(&1));
    }

    #[test]
    fn order_four_pair_is_failure_mode_two() {
        let v = LinearSystem::vanishing_at_pair(&order_four_action(), &order_four_cubic(), 0, 1)
            .unwrap();
        assert!(criteria_match(&v, 0, 1).is_empty());
        match bad_case_classify(&v, 0, 1) {
            BadCaseOutcome::Case(c) => {
                assert_eq!(c.case, 2);
                assert_eq!(c.from_a, vec![1]);
                assert_eq!(c.from_b, vec![2]);
                assert!(c.congruence.is_none());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn two_point_family_is_failure_mode_three() {
        let (a, f) = two_point_family_example();
        let v = LinearSystem::vanishing_at_pair(&a, &f, 0, 1).unwrap();
        match bad_case_classify(&v, 0, 1) {
            BadCaseOutcome::Case(c) => {
                assert_eq!(c.case, 3);
                let cong = c.congruence.unwrap();
                assert_eq!((cong.factor, cong.difference, cong.modulus), (2, 4, 8));
                assert!(cong.holds());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn failure_mode_one_pattern() {
        // only X0^2 X2 and X1^2 X2 link the pair, so set 1 cannot match
        let a = CyclicAction::trivial(4).unwrap();
        let v = LinearSystem::new(a, 3, 0, vec![m(&[2, 0, 1, 0]), m(&[0, 2, 1, 0])]).unwrap();
        match bad_case_classify(&v, 0, 1) {
            BadCaseOutcome::Case(c) => {
                assert_eq!(c.case, 1);
                assert!(c.congruence.unwrap().holds());
            }
            other => panic!("{other:?}"),
        }
        let lonely = LinearSystem::new(
            CyclicAction::trivial(4).unwrap(),
            3,
            0,
            vec![m(&[0, 0, 3, 0])],
        )
        .unwrap();
        assert!(matches!(
            bad_case_classify(&lonely, 0, 1),
            BadCaseOutcome::Inconsistent { .. }
        ));
    }

    #[test]
    fn scenario_examples() {
        let a = order_four_action();
        let fixed = FixedPointData::from_hypersurface(&a, &order_four_cubic()).unwrap();
        let r = scenario(&a, 3, &fixed).unwrap();
        assert_eq!(
            r.flags.general_case,
            Decomposition {
                m: 2,
                p: 1,
                q: 2,
                coprime: true
            }
        );
        assert!(r.statements.contains(&"general-decomposition".to_string()));
        assert_eq!(fixed.total(), PointCount::Finite(3));
        assert!(!r.flags.same_weight);

        let a3 = CyclicAction::new(3, &[0, 1, 2, 0]).unwrap();
        let r = scenario(&a3, 4, &FixedPointData::from_ambient(&a3, 4, 0)).unwrap();
        assert!(r.flags.d_cong_1_mod_l);
        assert_eq!(r.source, FixedSource::AmbientInferred);

        let a7 = CyclicAction::new(7, &[0, 1, 2, 3]).unwrap();
        let r = scenario(&a7, 5, &FixedPointData::from_ambient(&a7, 5, 0)).unwrap();
        assert!(r.flags.d_minus_1_invertible);
        assert!(!r.flags.d_cong_1_mod_l);

        let bad = CyclicAction::new(4, &[0, 2, 0, 2]).unwrap();
        assert_eq!(
            scenario(&bad, 3, &FixedPointData::from_ambient(&bad, 3, 0)),
            Err(CriteriaError::NotFaithful)
        );
    }

    #[test]
    fn line_class_counts_roots() {
        let a = binary_plus_powers_action();
        let fixed = FixedPointData::from_hypersurface(&a, &binary_plus_powers_example()).unwrap();
        assert_eq!(fixed.classes.len(), 1);
        assert_eq!(fixed.classes[0].count, PointCount::Finite(3));
        let r = scenario(&a, 3, &fixed).unwrap();
        assert!(r.flags.same_weight);
        assert!(!r.flags.two_fixed_points);
    }
}
