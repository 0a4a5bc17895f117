//! Sparse homogeneous polynomials in `X_0..X_n` and dense binary forms in `S, T`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::PolyError;
use crate::field::{Field, PrimeField, Rationals};

/// Exponent vector of a monomial in `X_0..X_n`.
///
/// The ordering puts the graded-lex leading monomial first: higher total
/// degree sorts earlier, and within a degree larger exponents of lower
/// index variables sort earlier (`X_0^3 < X_0^2 X_1 < ... < X_n^3`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// `X_var^power` in `nvars` variables.
    pub fn power(nvars: usize, var: usize, power: u32) -> Self {
        let mut e = vec![0; nvars];
        e[var] = power;
        Monomial(e)
    }

    /// `X_a^{ea} X_b^{eb}`; indices may coincide.
    pub fn binomial(nvars: usize, a: usize, ea: u32, b: usize, eb: u32) -> Self {
        let mut e = vec![0; nvars];
        e[a] += ea;
        e[b] += eb;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Bitmask of the support; requires at most 64 variables.
    pub fn support_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial, PolyError> {
        if self.nvars() != other.nvars() {
            return Err(PolyError::ArityMismatch {
                expected: self.nvars(),
                found: other.nvars(),
            });
        }
        Ok(Monomial(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    /// All monomials of degree `d` in `nvars` variables, in canonical order.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current = vec![0; nvars];
        fill_exponents(&mut current, 0, d, &mut out);
        out
    }
}

fn fill_exponents(current: &mut Vec<u32>, idx: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if idx + 1 == current.len() {
        current[idx] = remaining;
        out.push(Monomial(current.clone()));
        current[idx] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        current[idx] = e;
        fill_exponents(current, idx + 1, remaining - e, out);
    }
    current[idx] = 0;
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            match e {
                1 => write!(f, "X{i}")?,
                _ => write!(f, "X{i}^{e}")?,
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// A homogeneous polynomial in `nvars` variables with no stored zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct AmbientPoly<K: Field> {
    field: K,
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, K::Elem>,
}

impl<K: Field> AmbientPoly<K> {
    pub fn zero(field: K, nvars: usize, degree: u32) -> Self {
        Self {
            field,
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a polynomial of the stated degree, merging repeated monomials.
    pub fn new(
        field: K,
        nvars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Monomial, K::Elem)>,
    ) -> Result<Self, PolyError> {
        let mut poly = Self::zero(field, nvars, degree);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(PolyError::ArityMismatch {
                    expected: nvars,
                    found: m.nvars(),
                });
            }
            if m.degree() != degree {
                return Err(PolyError::NotHomogeneous {
                    expected: degree,
                    found: m.degree(),
                });
            }
            if !poly.field.contains(&c) {
                return Err(PolyError::ForeignElement(poly.field.spec()));
            }
            poly.add_term(m, c);
        }
        Ok(poly)
    }

    /// Like [`AmbientPoly::new`], taking the degree from the first term.
    pub fn from_terms(
        field: K,
        nvars: usize,
        terms: Vec<(Monomial, K::Elem)>,
    ) -> Result<Self, PolyError> {
        let degree = terms.first().ok_or(PolyError::NoTerms)?.0.degree();
        Self::new(field, nvars, degree, terms)
    }

    fn add_term(&mut self, m: Monomial, c: K::Elem) {
        let f = &self.field;
        let sum = match self.terms.remove(&m) {
            Some(old) => f.add(&old, &c),
            None => c,
        };
        if !f.is_zero(&sum) {
            self.terms.insert(m, sum);
        }
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &K::Elem)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&K::Elem> {
        self.terms.get(m)
    }

    pub fn eval(&self, point: &[K::Elem]) -> Result<K::Elem, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::ArityMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let f = &self.field;
        if point.iter().any(|x| !f.contains(x)) {
            return Err(PolyError::ForeignElement(f.spec()));
        }
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v = f.mul(&v, &f.pow(x, e as u64));
                }
            }
            acc = f.add(&acc, &v);
        }
        Ok(acc)
    }

    pub fn partial(&self, var: usize) -> Result<Self, PolyError> {
        if var >= self.nvars {
            return Err(PolyError::VariableOutOfRange {
                index: var,
                nvars: self.nvars,
            });
        }
        let f = &self.field;
        let mut out = Self::zero(f.clone(), self.nvars, self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] -= 1;
            out.add_term(Monomial(exps), f.mul(c, &f.from_i64(e as i64)));
        }
        Ok(out)
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars)
            .map(|i| self.partial(i).expect("index in range"))
            .collect()
    }

    fn check_compatible(&self, other: &Self) -> Result<(), PolyError> {
        if self.field != other.field {
            return Err(PolyError::FieldMismatch {
                left: self.field.spec(),
                right: other.field.spec(),
            });
        }
        if self.nvars != other.nvars {
            return Err(PolyError::ArityMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(PolyError::NotHomogeneous {
                expected: self.degree,
                found: other.degree,
            });
        }
        let degree = if self.is_zero() {
            other.degree
        } else {
            self.degree
        };
        let mut out = self.clone();
        out.degree = degree;
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        let f = &self.field;
        let mut out = Self::zero(f.clone(), self.nvars, self.degree + other.degree);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2)?, f.mul(c1, c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &K::Elem) -> Self {
        let f = &self.field;
        let mut out = Self::zero(f.clone(), self.nvars, self.degree);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), f.mul(c, v));
        }
        out
    }

    /// Restriction to the coordinate subspace `{X_i = 0 : i in zero_set}`,
    /// kept in the ambient variables.
    pub fn restrict(&self, zero_set: &[usize]) -> Self {
        let mut out = Self::zero(self.field.clone(), self.nvars, self.degree);
        for (m, c) in &self.terms {
            if zero_set.iter().all(|&i| m.exponents()[i] == 0) {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// Substitutes binary forms of a common degree `e` for the variables,
    /// giving a binary form of degree `d * e`.
    pub fn compose(&self, components: &[BinaryForm<K>]) -> Result<BinaryForm<K>, PolyError> {
        if components.len() != self.nvars {
            return Err(PolyError::ComponentCount {
                expected: self.nvars,
                found: components.len(),
            });
        }
        let e = components[0].degree();
        for c in components {
            if c.degree() != e {
                return Err(PolyError::MixedDegrees(e, c.degree()));
            }
            if c.field != self.field {
                return Err(PolyError::FieldMismatch {
                    left: self.field.spec(),
                    right: c.field.spec(),
                });
            }
        }
        let f = &self.field;
        let mut max_exp = vec![0u32; self.nvars];
        for m in self.terms.keys() {
            for (mx, &ex) in max_exp.iter_mut().zip(m.exponents()) {
                *mx = (*mx).max(ex);
            }
        }
        // powers[i][k] = components[i]^k
        let powers: Vec<Vec<BinaryForm<K>>> = components
            .iter()
            .zip(&max_exp)
            .map(|(c, &mx)| {
                let mut ps = vec![BinaryForm::monomial(f.clone(), 0, 0, f.one())];
                for k in 1..=mx as usize {
                    let next = ps[k - 1].mul(c);
                    ps.push(next);
                }
                ps
            })
            .collect();
        let mut acc = BinaryForm::zero(f.clone(), self.degree * e);
        for (m, c) in &self.terms {
            let mut prod = BinaryForm::monomial(f.clone(), 0, 0, c.clone());
            for (i, &ex) in m.exponents().iter().enumerate() {
                if ex > 0 {
                    prod = prod.mul(&powers[i][ex as usize]);
                }
            }
            acc = acc.add(&prod)?;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| {
                    serde_json::json!({ "coeff": self.field.to_json(c), "exp": m.exponents() })
                })
                .collect(),
        )
    }

    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(m, c)| format!("{}*{}", self.field.format(c), m))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl AmbientPoly<Rationals> {
    /// Reduction modulo `p`; fails when a denominator is divisible by `p`.
    pub fn reduce(&self, fp: &PrimeField) -> Result<AmbientPoly<PrimeField>, PolyError> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.clone(), fp.reduce_rational(c)?)))
            .collect::<Result<Vec<_>, PolyError>>()?;
        AmbientPoly::new(*fp, self.nvars, self.degree, terms)
    }
}

/// Parses a term list `[{"coeff": ..., "exp": [...]}, ...]`.
pub fn poly_from_json<K: Field>(
    field: &K,
    nvars: usize,
    value: &Value,
) -> Result<AmbientPoly<K>, PolyError> {
    #[derive(Deserialize)]
    struct Term {
        coeff: Value,
        exp: Vec<u32>,
    }
    let terms: Vec<Term> = serde_json::from_value(value.clone())
        .map_err(|e| crate::error::FieldError::BadCoefficient(e.to_string()))?;
    let parsed = terms
        .into_iter()
        .map(|t| Ok((Monomial::new(t.exp), field.from_json(&t.coeff)?)))
        .collect::<Result<Vec<_>, PolyError>>()?;
    AmbientPoly::from_terms(field.clone(), nvars, parsed)
}

/// A binary form `sum_j c_j S^j T^(e-j)`, stored densely by `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm<K: Field> {
    field: K,
    coeffs: Vec<K::Elem>,
}

impl<K: Field> BinaryForm<K> {
    /// `coeffs[j]` is the coefficient of `S^j T^(e-j)`; needs at least one entry.
    pub fn new(field: K, coeffs: Vec<K::Elem>) -> Result<Self, PolyError> {
        if coeffs.is_empty() {
            return Err(PolyError::NoTerms);
        }
        if coeffs.iter().any(|c| !field.contains(c)) {
            return Err(PolyError::ForeignElement(field.spec()));
        }
        Ok(Self { field, coeffs })
    }

    pub fn zero(field: K, degree: u32) -> Self {
        let coeffs = vec![field.zero(); degree as usize + 1];
        Self { field, coeffs }
    }

    /// `c * S^j T^(degree-j)`.
    pub fn monomial(field: K, degree: u32, j: u32, c: K::Elem) -> Self {
        let mut out = Self::zero(field, degree);
        out.coeffs[j as usize] = c;
        out
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn degree(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeffs(&self) -> &[K::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, j: u32) -> &K::Elem {
        &self.coeffs[j as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    /// Exponents `j` of `S` with nonzero coefficient.
    pub fn support(&self) -> Vec<u32> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.field.is_zero(c))
            .map(|(j, _)| j as u32)
            .collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        if self.degree() != other.degree() {
            return Err(PolyError::MixedDegrees(self.degree(), other.degree()));
        }
        let f = &self.field;
        Ok(Self {
            field: f.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f.add(a, b))
                .collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut coeffs = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(&coeffs[i + j], &f.mul(a, b));
            }
        }
        Self {
            field: f.clone(),
            coeffs,
        }
    }

    pub fn scale(&self, c: &K::Elem) -> Self {
        Self {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| self.field.mul(a, c)).collect(),
        }
    }

    pub fn eval(&self, s: &K::Elem, t: &K::Elem) -> K::Elem {
        let f = &self.field;
        let e = self.degree() as u64;
        self.coeffs
            .iter()
            .enumerate()
            .fold(f.zero(), |acc, (j, c)| {
                let term = f.mul(c, &f.mul(&f.pow(s, j as u64), &f.pow(t, e - j as u64)));
                f.add(&acc, &term)
            })
    }

    /// Number of distinct roots on `P^1` over an algebraic closure.
    ///
    /// Uses `gcd(g, g')` of the dehomogenization, so it is exact in
    /// characteristic zero or above the degree. `None` for the zero form.
    pub fn distinct_root_count(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let f = &self.field;
        let e = self.degree();
        // g(s) = B(s, 1), coefficients by ascending power of s
        let g = trim(f, self.coeffs.clone());
        let at_infinity = (g.len() as u32 - 1) < e;
        let deriv: Vec<K::Elem> = g
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| f.mul(c, &f.from_i64(k as i64)))
            .collect();
        let deriv = trim(f, deriv);
        let deg_g = g.len() as u32 - 1;
        let deg_gcd = if deriv.is_empty() {
            deg_g
        } else {
            univariate_gcd(f, g, deriv).len() as u32 - 1
        };
        Some(deg_g - deg_gcd + u32::from(at_infinity))
    }

    pub fn display(&self) -> String {
        let f = &self.field;
        let e = self.degree();
        let parts: Vec<String> = (0..=e)
            .rev()
            .filter(|&j| !f.is_zero(self.coeff(j)))
            .map(|j| {
                let mono = match (j, e - j) {
                    (0, 0) => "1".to_string(),
                    (0, t) => pow_str("T", t),
                    (s, 0) => pow_str("S", s),
                    (s, t) => format!("{}*{}", pow_str("S", s), pow_str("T", t)),
                };
                format!("{}*{}", f.format(self.coeff(j)), mono)
            })
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

fn pow_str(v: &str, k: u32) -> String {
    if k == 1 {
        v.to_string()
    } else {
        format!("{v}^{k}")
    }
}

fn trim<K: Field>(f: &K, mut v: Vec<K::Elem>) -> Vec<K::Elem> {
    while v.last().is_some_and(|c| f.is_zero(c)) {
        v.pop();
    }
    v
}

/// Monic-free Euclidean gcd of nonzero univariate polynomials (ascending coefficients).
fn univariate_gcd<K: Field>(f: &K, mut a: Vec<K::Elem>, mut b: Vec<K::Elem>) -> Vec<K::Elem> {
    while !b.is_empty() {
        let r = poly_rem(f, a, &b);
        a = b;
        b = r;
    }
    a
}

fn poly_rem<K: Field>(f: &K, mut a: Vec<K::Elem>, b: &[K::Elem]) -> Vec<K::Elem> {
    let lead_inv = f
        .inv(b.last().expect("nonzero divisor"))
        .expect("leading coefficient is nonzero");
    while a.len() >= b.len() {
        let shift = a.len() - b.len();
        let q = f.mul(a.last().expect("nonempty"), &lead_inv);
        for (k, bk) in b.iter().enumerate() {
            a[shift + k] = f.sub(&a[shift + k], &f.mul(&q, bk));
        }
        a.pop();
        a = trim(f, a);
    }
    a
}
