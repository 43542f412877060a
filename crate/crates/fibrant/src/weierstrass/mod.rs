//! Weierstrass fibrations `Y^2 Z = 4X^3 - a X Z^2 - b Z^3` over P^2:
//! discriminant, functional invariant, singularities of the total space,
//! vanishing-order triples and Kodaira's table.

mod kodaira;

pub use kodaira::{kodaira_classify, kodaira_monodromy, tag as kodaira_tag, DualGraph, KodairaType};

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactpoly::{int, MultiPoly, Order, PolyError, Rational};
use crate::exactpoly::gcd;
use crate::planecurve::{
    homogeneous_gcd, homogeneous_squarefree_part as squarefree_part, normalize_projective, projective_common_zeros, CurveError,
    HOMOGENEOUS_VARS,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeierstrassError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("{which} must be homogeneous of degree {expected} in A0, A1, A2, got {got}")]
    BadSection { which: &'static str, expected: u32, got: String },
    #[error("discriminant a^3 - 27 b^2 vanishes identically; not an elliptic fibration")]
    ZeroDiscriminant,
    #[error("triple {0} has L >= 4 and K >= 6; normalize condition (C) first")]
    NeedsNormalization(OrderTriple),
    #[error("triple {0} is not on Kodaira's list")]
    NotInTable(OrderTriple),
    #[error("unknown Kodaira type {0:?}")]
    UnknownType(String),
    #[error("alpha = {alpha} is not generic: the resultant factor {factor} vanishes")]
    NonGeneric { alpha: String, factor: String },
}

/// Parameters the sections were specialized at.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationParams {
    #[serde(with = "crate::exactpoly::qserde::option")]
    pub alpha: Option<Rational>,
    #[serde(with = "crate::exactpoly::qserde::option")]
    pub m: Option<Rational>,
}

/// The section pair `(a, b)`. Over P^2, `a` has degree 4 and `b` degree 6;
/// a local model carries germs in chart coordinates instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassFibration {
    pub a: MultiPoly,
    pub b: MultiPoly,
    pub params: FibrationParams,
    projective: bool,
}

fn check_section(p: &MultiPoly, which: &'static str, degree: u32) -> Result<(), WeierstrassError> {
    let extra = p.occurring_vars().into_iter().any(|v| !HOMOGENEOUS_VARS.contains(&v.as_str()));
    if p.is_zero() || (p.is_homogeneous() && p.total_degree() == Some(degree) && !extra) {
        Ok(())
    } else {
        Err(WeierstrassError::BadSection { which, expected: degree, got: p.to_string() })
    }
}

impl WeierstrassFibration {
    pub fn new(a: MultiPoly, b: MultiPoly, params: FibrationParams) -> Result<Self, WeierstrassError> {
        check_section(&a, "a", 4)?;
        check_section(&b, "b", 6)?;
        let fib = WeierstrassFibration { a: a.with_vars(&HOMOGENEOUS_VARS), b: b.with_vars(&HOMOGENEOUS_VARS), params, projective: true };
        discriminant(&fib)?;
        Ok(fib)
    }

    /// Germs on a chart; no degree conditions.
    pub fn local(a: MultiPoly, b: MultiPoly) -> Result<Self, WeierstrassError> {
        let fib = WeierstrassFibration { a, b, params: FibrationParams::default(), projective: false };
        discriminant(&fib)?;
        Ok(fib)
    }

    pub fn is_projective(&self) -> bool {
        self.projective
    }
}

pub fn local_discriminant(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    &a.pow_u(3) - &b.pow_u(2).scale(&int(27))
}

/// `a^3 - 27 b^2`.
pub fn discriminant(fib: &WeierstrassFibration) -> Result<MultiPoly, WeierstrassError> {
    let d = local_discriminant(&fib.a, &fib.b);
    if d.is_zero() {
        return Err(WeierstrassError::ZeroDiscriminant);
    }
    Ok(d)
}

/// `J = a^3 / (a^3 - 27 b^2)`, both as given and with the gcd cancelled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JInvariant {
    pub numerator: MultiPoly,
    pub denominator: MultiPoly,
    pub reduced_numerator: MultiPoly,
    pub reduced_denominator: MultiPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum JValue {
    Finite {
        #[serde(with = "crate::exactpoly::qserde")]
        value: Rational,
    },
    Pole,
    /// Both reduced numerator and denominator vanish.
    Indeterminate,
}

impl JInvariant {
    pub fn value_at(&self, point: &[(&str, Rational)]) -> Result<JValue, WeierstrassError> {
        let n = self.reduced_numerator.evaluate(point)?;
        let d = self.reduced_denominator.evaluate(point)?;
        Ok(match (n.is_zero(), d.is_zero()) {
            (_, false) => JValue::Finite { value: n / d },
            (false, true) => JValue::Pole,
            (true, true) => JValue::Indeterminate,
        })
    }
}

pub fn j_invariant(fib: &WeierstrassFibration) -> Result<JInvariant, WeierstrassError> {
    let num = fib.a.pow_u(3);
    let den = discriminant(fib)?;
    let g = gcd(&num, &den);
    let rn = num.exact_divide(&g)?;
    let rd = den.exact_divide(&g)?;
    // put the scalar on the numerator so the denominator is monic
    let lc = rd.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(Rational::one);
    Ok(JInvariant {
        numerator: num,
        denominator: den,
        reduced_numerator: rn.scale(&lc.recip()),
        reduced_denominator: rd.scale(&lc.recip()),
    })
}

/// Vanishing orders `(L, K, N)` of `a`, `b` and the discriminant along a
/// divisor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "(Order, Order, Order)", into = "(Order, Order, Order)")]
pub struct OrderTriple {
    pub l: Order,
    pub k: Order,
    pub n: Order,
}

impl From<(Order, Order, Order)> for OrderTriple {
    fn from((l, k, n): (Order, Order, Order)) -> Self {
        OrderTriple { l, k, n }
    }
}

impl From<OrderTriple> for (Order, Order, Order) {
    fn from(t: OrderTriple) -> Self {
        (t.l, t.k, t.n)
    }
}

impl OrderTriple {
    pub fn finite(l: u32, k: u32, n: u32) -> Self {
        OrderTriple { l: Order::Finite(l), k: Order::Finite(k), n: Order::Finite(n) }
    }

    /// `N >= min(3L, 2K)`, with equality when `3L != 2K`.
    pub fn is_consistent(&self) -> bool {
        let (a, b) = (self.l.scale(3), self.k.scale(2));
        let m = a.min(b);
        if a != b {
            self.n == m
        } else {
            self.n >= m
        }
    }

    pub fn add(&self, o: &OrderTriple) -> OrderTriple {
        OrderTriple { l: self.l + o.l, k: self.k + o.k, n: self.n + o.n }
    }
}

impl fmt::Display for OrderTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.l, self.k, self.n)
    }
}

/// Orders of `a`, `b` and `a^3 - 27 b^2` along the divisor `component = 0`.
pub fn order_triple_along(a: &MultiPoly, b: &MultiPoly, component: &MultiPoly) -> Result<OrderTriple, WeierstrassError> {
    Ok(OrderTriple {
        l: a.order_along(component)?,
        k: b.order_along(component)?,
        n: local_discriminant(a, b).order_along(component)?,
    })
}

/// Subtracts `(4, 6, 12)` while all three orders allow it.
pub fn reduce_triple_mod(t: &OrderTriple) -> OrderTriple {
    let mut t = *t;
    while t.l.at_least(4) && t.k.at_least(6) && t.n.at_least(12) && t.n != Order::Infinite {
        t = OrderTriple { l: t.l.saturating_sub(4), k: t.k.saturating_sub(6), n: t.n.saturating_sub(12) };
    }
    t
}

/// Divides out the largest `u^(4t)` from `a` and `u^(6t)` from `b`.
pub fn normalize_condition_c(a: &MultiPoly, b: &MultiPoly, u: &str) -> (MultiPoly, MultiPoly, u32) {
    let la = if a.is_zero() { None } else { Some(a.min_degree_in(u) / 4) };
    let kb = if b.is_zero() { None } else { Some(b.min_degree_in(u) / 6) };
    let t = match (la, kb) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => 0,
    };
    if t == 0 {
        return (a.clone(), b.clone(), 0);
    }
    let uu = MultiPoly::var(u);
    let a2 = a.exact_divide(&uu.pow_u(4 * t)).expect("u^(4t) divides a");
    let b2 = b.exact_divide(&uu.pow_u(6 * t)).expect("u^(6t) divides b");
    (a2.with_vars(a.vars()), b2.with_vars(b.vars()), t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaseLocus {
    Point {
        #[serde(with = "crate::exactpoly::qserde::point3")]
        point: [Rational; 3],
    },
    /// Every point of the curve `equation = 0`.
    Curve { equation: MultiPoly },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularityCriterion {
    /// `p` in `A` and `B`, with `B` singular at `p`; fibre point `(0:0:1)`.
    SingularB,
    /// `p` off `A` and `B`, singular on `D`; fibre point `(-3b:0:2a)`.
    SingularDiscriminant,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TotalSpaceSingularity {
    /// `(X:Y:Z)` with `Z = 1`; absent for a curve along which it varies.
    #[serde(with = "crate::exactpoly::qserde::option_point3")]
    pub fiber: Option<[Rational; 3]>,
    pub base: BaseLocus,
    pub criterion: SingularityCriterion,
}

impl fmt::Display for TotalSpaceSingularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fiber = match &self.fiber {
            Some(p) => crate::planecurve::format_projective(p),
            None => "(-3b:0:2a)".into(),
        };
        match &self.base {
            BaseLocus::Point { point } => write!(f, "({fiber}; {})", crate::planecurve::format_projective(point)),
            BaseLocus::Curve { equation } => write!(f, "({fiber}; {{{equation} = 0}})"),
        }
    }
}

fn gradient(p: &MultiPoly) -> Result<Vec<MultiPoly>, PolyError> {
    HOMOGENEOUS_VARS.iter().map(|v| p.partial_derivative(v)).collect()
}

fn eval_at(p: &MultiPoly, pt: &[Rational; 3]) -> Rational {
    let vals: Vec<(&str, Rational)> = HOMOGENEOUS_VARS.iter().copied().zip(pt.iter().cloned()).collect();
    p.substitute_values(&vals).constant_term()
}

/// Removes every factor of the squarefree polynomial `h` from `p`.
fn strip(p: &MultiPoly, h: &MultiPoly) -> Result<MultiPoly, PolyError> {
    if h.is_constant() || p.is_zero() {
        return Ok(p.clone());
    }
    let mut q = p.clone();
    loop {
        let g = homogeneous_gcd(&q, h);
        if g.is_constant() {
            return Ok(q);
        }
        q = q.exact_divide(&g)?;
    }
}

/// Singularities of the total space over rational base points, and the
/// curves along which it is singular.
pub fn total_space_singularities(fib: &WeierstrassFibration) -> Result<Vec<TotalSpaceSingularity>, WeierstrassError> {
    let d = discriminant(fib)?;
    let mut out = Vec::new();

    // first criterion: common zeros of a, b, grad b
    let mut polys = vec![fib.a.clone(), fib.b.clone()];
    polys.extend(gradient(&fib.b)?);
    let curve = squarefree_part(&polys.iter().fold(MultiPoly::zero(), |g, p| homogeneous_gcd(&g, p)));
    if !curve.is_constant() {
        out.push(TotalSpaceSingularity {
            fiber: Some([int(0), int(0), int(1)]),
            base: BaseLocus::Curve { equation: curve.clone() },
            criterion: SingularityCriterion::SingularB,
        });
    }
    // off the curve, a and b agree with their stripped forms up to units
    let a1 = strip(&fib.a, &curve)?;
    let b1 = strip(&fib.b, &curve)?;
    let mut stripped = vec![a1, b1.clone()];
    stripped.extend(gradient(&b1)?);
    for p in projective_common_zeros(&stripped)?.points {
        if eval_at(&curve, &p).is_zero() {
            continue;
        }
        out.push(TotalSpaceSingularity {
            fiber: Some([int(0), int(0), int(1)]),
            base: BaseLocus::Point { point: p },
            criterion: SingularityCriterion::SingularB,
        });
    }

    // second criterion: singular points of D off A and B
    let mut dpolys = vec![d.clone()];
    dpolys.extend(gradient(&d)?);
    let dcurve = squarefree_part(&dpolys.iter().fold(MultiPoly::zero(), |g, p| homogeneous_gcd(&g, p)));
    // components of the singular locus of D lying in A or B are not counted
    let off_ab = strip(&strip(&dcurve, &squarefree_part(&fib.a))?, &squarefree_part(&fib.b))?;
    if !off_ab.is_constant() {
        out.push(TotalSpaceSingularity {
            fiber: None,
            base: BaseLocus::Curve { equation: off_ab.monic() },
            criterion: SingularityCriterion::SingularDiscriminant,
        });
    }
    let d1 = strip(&d, &dcurve)?;
    let mut stripped = vec![d1.clone()];
    stripped.extend(gradient(&d1)?);
    for p in projective_common_zeros(&stripped)?.points {
        if eval_at(&dcurve, &p).is_zero() {
            continue;
        }
        let av = eval_at(&fib.a, &p);
        let bv = eval_at(&fib.b, &p);
        if av.is_zero() || bv.is_zero() {
            continue;
        }
        // weights (4, 6) make X/Z = -3b/(2a) depend on the representative;
        // use the one with first nonzero coordinate 1
        let p = normalize_projective(&p);
        let (av, bv) = (eval_at(&fib.a, &p), eval_at(&fib.b, &p));
        let x = -(bv * int(3)) / (av * int(2));
        out.push(TotalSpaceSingularity {
            fiber: Some([x, int(0), int(1)]),
            base: BaseLocus::Point { point: p },
            criterion: SingularityCriterion::SingularDiscriminant,
        });
    }
    Ok(out)
}

/// `-3^10 alpha^4 (alpha^2 + 16)^3 (alpha + 4)^3 (alpha - 4)^3`, the
/// resultant whose vanishing makes the Lagrange family degenerate.
pub fn lagrange_resultant(alpha: &Rational) -> Rational {
    let a = alpha.clone();
    let p3 = |x: Rational| &x * &x * &x;
    let a2 = &a * &a;
    -(int(59049) * &a2 * &a2 * p3(&a2 + int(16)) * p3(&a + int(4)) * p3(&a - int(4)))
}

/// Rejects `alpha` at which the resultant vanishes, naming the factor.
pub fn genericity_guard(alpha: &Rational) -> Result<Rational, WeierstrassError> {
    let r = lagrange_resultant(alpha);
    if !r.is_zero() {
        return Ok(r);
    }
    let factor = if alpha.is_zero() {
        "alpha^4"
    } else if *alpha == int(4) {
        "(alpha - 4)^3"
    } else {
        "(alpha + 4)^3"
    };
    Err(WeierstrassError::NonGeneric { alpha: crate::exactpoly::rational_to_string(alpha), factor: factor.into() })
}
