//! Exact rationals and sparse multivariate polynomials over Q.
//!
//! Variables are named and kept sorted; two polynomials with different
//! variable lists are merged by name on every binary operation. Terms are
//! stored in a graded order (total degree first), which also fixes the
//! printed form.

mod elim;
pub mod qserde;
mod text;
mod univariate;

pub use elim::{gcd, gcd_univar, pseudo_remainder, resultant, squarefree_part, sylvester_matrix};
pub use text::{parse, parse_with};
pub use univariate::UniPoly;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `-p` or `p/q` with integer `p`, `q`.
pub fn parse_rational(s: &str) -> Result<Rational, PolyError> {
    let s = s.trim();
    let bad = || PolyError::Parse { pos: 0, msg: format!("not a rational number: {s:?}") };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(PolyError::Parse { pos: 0, msg: format!("zero denominator in {s:?}") });
    }
    Ok(Rational::new(n, d))
}

pub fn rational_to_string(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // huge numerator or denominator: scale down by a common power of two
            let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
            let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("negative exponent {0}")]
    NegativeExponent(i64),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("no value supplied for variable `{0}`")]
    MissingVariable(String),
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Vanishing order; `Infinite` marks an identically zero section.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(k) => Some(k),
            Order::Infinite => None,
        }
    }

    pub fn at_least(self, k: u32) -> bool {
        match self {
            Order::Finite(j) => j >= k,
            Order::Infinite => true,
        }
    }

    pub fn saturating_sub(self, k: u32) -> Order {
        match self {
            Order::Finite(j) => Order::Finite(j.saturating_sub(k)),
            Order::Infinite => Order::Infinite,
        }
    }

    pub fn scale(self, k: u32) -> Order {
        match self {
            Order::Finite(j) => Order::Finite(j * k),
            Order::Infinite if k == 0 => Order::Finite(0),
            Order::Infinite => Order::Infinite,
        }
    }
}

impl Add for Order {
    type Output = Order;

    fn add(self, o: Order) -> Order {
        match (self, o) {
            (Order::Finite(a), Order::Finite(b)) => Order::Finite(a + b),
            _ => Order::Infinite,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Order::Finite(k) => s.serialize_u32(*k),
            Order::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Order {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u32),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(k) => Ok(Order::Finite(k)),
            Raw::S(s) if s == "inf" => Ok(Order::Infinite),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad order {s:?}"))),
        }
    }
}

/// Exponent vector. Ordered by total degree, then reverse-lexicographically,
/// so iteration lists `1, x, y, x^2, x*y, y^2, ...` for variables `[x, y]`.
/// This is a monomial order, used both for printing and for division.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, Default)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rational>,
}

fn sorted_vars<S: AsRef<str>>(names: &[S]) -> Vec<String> {
    let mut v: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
    v.sort();
    v.dedup();
    v
}

fn merge_vars(a: &[String], b: &[String]) -> Vec<String> {
    if a == b {
        return a.to_vec();
    }
    let mut v: Vec<String> = a.iter().chain(b).cloned().collect();
    v.sort();
    v.dedup();
    v
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// Zero polynomial over the given variables.
    pub fn zero_in<S: AsRef<str>>(vars: &[S]) -> Self {
        MultiPoly { vars: sorted_vars(vars), terms: BTreeMap::new() }
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![]), c);
        }
        p
    }

    pub fn int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn var(name: &str) -> Self {
        Self::term(Rational::one(), &[(name, 1)])
    }

    /// `c * prod(name^exp)`.
    pub fn term(c: Rational, powers: &[(&str, u32)]) -> Self {
        let names: Vec<&str> = powers.iter().map(|(n, _)| *n).collect();
        let vars = sorted_vars(&names);
        let mut exps = vec![0u32; vars.len()];
        for (n, e) in powers {
            let i = vars.iter().position(|v| v == n).unwrap();
            exps[i] += e;
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(exps), c);
        }
        MultiPoly { vars, terms }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Variables that occur with a positive exponent in some term.
    pub fn occurring_vars(&self) -> Vec<String> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|m| m.0[*i] > 0))
            .map(|(_, v)| v.clone())
            .collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .iter()
            .find(|(m, _)| m.degree() == 0)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn var_index(&self, v: &str) -> Option<usize> {
        self.vars.binary_search_by(|x| x.as_str().cmp(v)).ok()
    }

    /// Re-express over a superset of the current variables.
    pub fn with_vars<S: AsRef<str>>(&self, vars: &[S]) -> Self {
        let target = merge_vars(&self.vars, &sorted_vars(vars));
        if target == self.vars {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| target.binary_search(v).expect("merged list contains every variable"))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; target.len()];
                for (i, &k) in m.0.iter().enumerate() {
                    e[map[i]] = k;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        MultiPoly { vars: target, terms }
    }

    /// Drops variables that do not occur.
    pub fn trimmed(&self) -> Self {
        let keep: Vec<usize> =
            (0..self.vars.len()).filter(|&i| self.terms.keys().any(|m| m.0[i] > 0)).collect();
        if keep.len() == self.vars.len() {
            return self.clone();
        }
        let vars = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (Monomial(keep.iter().map(|&i| m.0[i]).collect()), c.clone()))
            .collect();
        MultiPoly { vars, terms }
    }

    fn aligned(a: &MultiPoly, b: &MultiPoly) -> (MultiPoly, MultiPoly) {
        if a.vars == b.vars {
            return (a.clone(), b.clone());
        }
        let vars = merge_vars(&a.vars, &b.vars);
        (a.with_vars(&vars), b.with_vars(&vars))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return MultiPoly::zero_in(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    fn add_ref(&self, other: &MultiPoly, sign: bool) -> MultiPoly {
        let (mut a, b) = if self.vars == other.vars {
            (self.clone(), std::borrow::Cow::Borrowed(other))
        } else {
            let (x, y) = Self::aligned(self, other);
            (x, std::borrow::Cow::Owned(y))
        };
        for (m, c) in b.terms.iter() {
            let c = if sign { c.clone() } else { -c.clone() };
            match a.terms.get_mut(m) {
                Some(v) => {
                    *v += c;
                    if v.is_zero() {
                        a.terms.remove(m);
                    }
                }
                None => {
                    a.terms.insert(m.clone(), c);
                }
            }
        }
        a
    }

    fn mul_ref(&self, other: &MultiPoly) -> MultiPoly {
        let (a, b) = Self::aligned(self, other);
        let mut out: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m = Monomial(ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect());
                let c = ca * cb;
                match out.get_mut(&m) {
                    Some(v) => *v += c,
                    None => {
                        out.insert(m, c);
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        MultiPoly { vars: a.vars, terms: out }
    }

    pub fn pow(&self, e: i64) -> Result<MultiPoly, PolyError> {
        if e < 0 {
            return Err(PolyError::NegativeExponent(e));
        }
        Ok(self.pow_u(e as u32))
    }

    pub fn pow_u(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one().with_vars(&self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Lowest total degree of a term (the multiplicity at the origin).
    pub fn lowest_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn degree_in(&self, v: &str) -> u32 {
        match self.var_index(v) {
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Largest power of `v` dividing every term.
    pub fn min_degree_in(&self, v: &str) -> u32 {
        match self.var_index(v) {
            Some(i) => self.terms.keys().map(|m| m.0[i]).min().unwrap_or(0),
            None => 0,
        }
    }

    /// Coefficients of `self` viewed as a polynomial in `v`; index = power.
    pub fn coefficients_in(&self, v: &str) -> Vec<MultiPoly> {
        let Some(i) = self.var_index(v) else {
            return vec![self.clone()];
        };
        let d = self.degree_in(v) as usize;
        let mut out = vec![BTreeMap::new(); d + 1];
        for (m, c) in &self.terms {
            let k = m.0[i] as usize;
            let mut e = m.0.clone();
            e[i] = 0;
            out[k].insert(Monomial(e), c.clone());
        }
        out.into_iter().map(|t| MultiPoly { vars: self.vars.clone(), terms: t }).collect()
    }

    pub fn leading_coeff_in(&self, v: &str) -> MultiPoly {
        self.coefficients_in(v).pop().unwrap_or_default()
    }

    /// Leading term in the graded monomial order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_term() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    pub fn partial_derivative(&self, v: &str) -> Result<MultiPoly, PolyError> {
        let i = self.var_index(v).ok_or_else(|| PolyError::UnknownVariable(v.to_string()))?;
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let k = m.0[i];
            if k > 0 {
                let mut e = m.0.clone();
                e[i] -= 1;
                terms.insert(Monomial(e), c * int(k as i64));
            }
        }
        Ok(MultiPoly { vars: self.vars.clone(), terms })
    }

    /// Simultaneous substitution. Variables not in `map` are kept; mapped
    /// variables that do not occur are ignored.
    pub fn substitute(&self, map: &[(&str, MultiPoly)]) -> MultiPoly {
        let idx: Vec<Option<&MultiPoly>> = self
            .vars
            .iter()
            .map(|v| map.iter().find(|(n, _)| *n == v.as_str()).map(|(_, p)| p))
            .collect();
        if idx.iter().all(Option::is_none) {
            return self.clone();
        }
        let kept: Vec<String> =
            self.vars.iter().zip(&idx).filter(|(_, m)| m.is_none()).map(|(v, _)| v.clone()).collect();
        let mut all_vars = kept.clone();
        for p in idx.iter().flatten() {
            all_vars = merge_vars(&all_vars, &p.vars);
        }
        let mut power_cache: Vec<Vec<MultiPoly>> = vec![Vec::new(); self.vars.len()];
        let mut out = MultiPoly::zero_in(&all_vars);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::term(c.clone(), &[]).with_vars(&all_vars);
            let mut plain = Vec::new();
            for (i, &k) in m.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match idx[i] {
                    None => plain.push((self.vars[i].as_str(), k)),
                    Some(img) => {
                        let cache = &mut power_cache[i];
                        if cache.is_empty() {
                            cache.push(MultiPoly::one().with_vars(&all_vars));
                        }
                        while cache.len() <= k as usize {
                            let next = &cache[cache.len() - 1] * img;
                            cache.push(next.with_vars(&all_vars));
                        }
                        t = &t * &cache[k as usize];
                    }
                }
            }
            if !plain.is_empty() {
                t = &t * &MultiPoly::term(Rational::one(), &plain);
            }
            out = &out + &t;
        }
        out
    }

    /// Substitutes rational values, keeping the remaining variables.
    pub fn substitute_values(&self, values: &[(&str, Rational)]) -> MultiPoly {
        let map: Vec<(&str, MultiPoly)> =
            values.iter().map(|(n, q)| (*n, MultiPoly::constant(q.clone()))).collect();
        self.substitute(&map)
    }

    /// Translates `v -> v + c` for each pair, so the given point becomes the origin.
    pub fn recenter(&self, point: &[(&str, Rational)]) -> MultiPoly {
        let map: Vec<(&str, MultiPoly)> = point
            .iter()
            .map(|(n, c)| (*n, &MultiPoly::var(n) + &MultiPoly::constant(c.clone())))
            .collect();
        self.substitute(&map).with_vars(&self.vars)
    }

    pub fn evaluate(&self, assignment: &[(&str, Rational)]) -> Result<Rational, PolyError> {
        let vals = self.lookup(assignment)?;
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    t *= num_traits::pow(vals[i].clone().unwrap(), k as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn evaluate_complex(&self, assignment: &[(&str, Complex64)]) -> Result<Complex64, PolyError> {
        let vals = self.lookup(assignment)?;
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = Complex64::new(rational_to_f64(c), 0.0);
            for (i, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    t *= vals[i].unwrap().powu(k);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    fn lookup<T: Clone>(&self, assignment: &[(&str, T)]) -> Result<Vec<Option<T>>, PolyError> {
        let used = self.occurring_vars();
        self.vars
            .iter()
            .map(|v| {
                let found = assignment.iter().find(|(n, _)| *n == v.as_str()).map(|(_, x)| x.clone());
                if found.is_none() && used.contains(v) {
                    Err(PolyError::MissingVariable(v.clone()))
                } else {
                    Ok(found)
                }
            })
            .collect()
    }

    /// Exact quotient `self / q`, or `NotDivisible`.
    pub fn exact_divide(&self, q: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if q.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let (mut r, q) = Self::aligned(self, q);
        if let Some(c) = q.constant_value() {
            return Ok(r.scale(&c.recip()));
        }
        let (lm, lc) = {
            let (m, c) = q.leading_term().unwrap();
            (m.clone(), c.clone())
        };
        let mut quot: BTreeMap<Monomial, Rational> = BTreeMap::new();
        while let Some((m, c)) = r.leading_term() {
            if !lm.divides(m) {
                return Err(PolyError::NotDivisible);
            }
            let e = Monomial(m.0.iter().zip(&lm.0).map(|(a, b)| a - b).collect());
            let k = c / &lc;
            let t = MultiPoly { vars: r.vars.clone(), terms: BTreeMap::from([(e.clone(), k.clone())]) };
            r = &r - &(&t * &q);
            quot.insert(e, k);
        }
        Ok(MultiPoly { vars: r.vars, terms: quot })
    }

    pub fn divides(&self, p: &MultiPoly) -> bool {
        self.exact_divide_opt(p).is_some()
    }

    fn exact_divide_opt(&self, p: &MultiPoly) -> Option<MultiPoly> {
        p.exact_divide(self).ok()
    }

    /// Maximal `k` with `q^k | self`, and `self / q^k`. The zero polynomial
    /// has infinite order.
    pub fn extract_power(&self, q: &MultiPoly) -> Result<(Order, MultiPoly), PolyError> {
        if q.is_constant() {
            return Err(PolyError::Degenerate("extract_power needs a non-constant divisor".into()));
        }
        if self.is_zero() {
            return Ok((Order::Infinite, self.clone()));
        }
        let mut k = 0u32;
        let mut rem = self.clone();
        // a single-variable monomial divisor only needs a degree count
        if q.num_terms() == 1 {
            let (m, _) = q.leading_term().unwrap();
            if m.degree() == 1 {
                let v = q.occurring_vars().pop().unwrap();
                let k = rem.min_degree_in(&v);
                let den = q.pow_u(k);
                return Ok((Order::Finite(k), rem.exact_divide(&den)?));
            }
        }
        while let Ok(next) = rem.exact_divide(q) {
            rem = next;
            k += 1;
        }
        Ok((Order::Finite(k), rem))
    }

    /// Order of vanishing along `q` (infinite for the zero polynomial).
    pub fn order_along(&self, q: &MultiPoly) -> Result<Order, PolyError> {
        Ok(self.extract_power(q)?.0)
    }

    /// Taylor parts at `point` (in variable order): entry `d` is the
    /// degree-`d` homogeneous part of the recentered polynomial.
    pub fn homogeneous_components(&self, point: &[Rational]) -> Result<Vec<MultiPoly>, PolyError> {
        if point.len() != self.vars.len() {
            return Err(PolyError::Degenerate(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.vars.len()
            )));
        }
        let shift: Vec<(&str, Rational)> =
            self.vars.iter().map(|v| v.as_str()).zip(point.iter().cloned()).collect();
        Ok(self.recenter(&shift).graded_parts())
    }

    /// Homogeneous parts by degree, without recentering.
    pub fn graded_parts(&self) -> Vec<MultiPoly> {
        let top = self.total_degree().unwrap_or(0) as usize;
        let mut parts = vec![BTreeMap::new(); top + 1];
        for (m, c) in &self.terms {
            parts[m.degree() as usize].insert(m.clone(), c.clone());
        }
        parts.into_iter().map(|t| MultiPoly { vars: self.vars.clone(), terms: t }).collect()
    }

    /// Leading form at the origin: the lowest-degree homogeneous part.
    pub fn initial_form(&self) -> MultiPoly {
        match self.lowest_degree() {
            None => self.clone(),
            Some(d) => {
                let terms = self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect();
                MultiPoly { vars: self.vars.clone(), terms }
            }
        }
    }

    /// Splits off the largest monomial dividing every term: `(exponents, rest)`.
    pub fn split_monomial_content(&self) -> (Vec<u32>, MultiPoly) {
        if self.is_zero() {
            return (vec![0; self.vars.len()], self.clone());
        }
        let n = self.vars.len();
        let mut content = vec![u32::MAX; n];
        for m in self.terms.keys() {
            for (c, e) in content.iter_mut().zip(&m.0) {
                *c = (*c).min(*e);
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (Monomial(m.0.iter().zip(&content).map(|(a, b)| a - b).collect()), c.clone()))
            .collect();
        (content, MultiPoly { vars: self.vars.clone(), terms })
    }

    /// Homogenizes with respect to `h` to total degree `d` (must be at least
    /// the total degree).
    pub fn homogenize(&self, h: &str, d: u32) -> MultiPoly {
        let hv = MultiPoly::var(h);
        let mut out = MultiPoly::zero_in(&merge_vars(&self.vars, &[h.to_string()]));
        for part in self.graded_parts().iter() {
            if part.is_zero() {
                continue;
            }
            let k = part.total_degree().unwrap();
            out = &out + &(part * &hv.pow_u(d - k));
        }
        out
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        let (a, b) = Self::aligned(self, other);
        a.terms == b.terms
    }
}

impl Eq for MultiPoly {}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<i64> for MultiPoly {
    fn from(c: i64) -> Self {
        MultiPoly::int(c)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                let f: fn(&MultiPoly, &MultiPoly) -> MultiPoly = $body;
                f(self, rhs)
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_ref(b, true));
binop!(Sub, sub, |a, b| a.add_ref(b, false));
binop!(Mul, mul, |a, b| a.mul_ref(b));

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::to_text(self))
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}
