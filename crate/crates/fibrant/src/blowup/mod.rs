//! Blow-ups of the base surface on local models: chart substitutions,
//! pull-back of the germs `(a, b)`, condition-(C) normalization along the
//! exceptional curve, and a driver that blows up until the reduced total
//! transform of the discriminant has only nodes with collisions on
//! Miranda's list.

mod global;

pub use global::{regularize, ResidualCurve};

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactpoly::{rational_to_string, MultiPoly, PolyError, Rational, UniPoly};
use crate::miranda::{collide, MirandaError, MirandaFiber};
use crate::planecurve::{classify_double_point, AffineChart, CurveError, SingularityKind};
use crate::weierstrass::{
    kodaira_classify, kodaira_tag, local_discriminant, normalize_condition_c, order_triple_along, KodairaType, OrderTriple,
    WeierstrassError,
};

pub const DEFAULT_BUDGET: u32 = 12;
pub const BUDGET_ENV: &str = "FIBRANT_BLOWUP_BUDGET";

/// Blow-ups allowed per center; `FIBRANT_BLOWUP_BUDGET` overrides the default.
pub fn blowup_budget() -> u32 {
    std::env::var(BUDGET_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlowupError {
    #[error("blow-up budget {budget} exhausted at {center}, chart {chart}: delta = {germ}")]
    BudgetExceeded { center: String, chart: String, budget: u32, germ: String },
    #[error("divisor {name} has triple {first} in one chart and {second} in the other")]
    ChartMismatch { name: String, first: OrderTriple, second: OrderTriple },
    #[error("{what} at {center} has irrational coordinates ({eliminant} = 0) and is not a transverse crossing")]
    IrrationalPoint { center: String, what: String, eliminant: String },
    #[error("cannot certify the singular points {eliminant} = 0 as transverse intersections of a = 0 and b = 0")]
    Uncertified { eliminant: String },
    #[error(transparent)]
    Weierstrass(#[from] WeierstrassError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A named divisor lying along a coordinate axis of a chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxisDivisor {
    pub name: String,
    /// `None` until the germs have been normalized along it.
    pub kodaira: Option<KodairaType>,
}

/// One step of a chart map, in the direction new -> old coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChartStep {
    /// `(x, y) = (x0 + x', y0 + y')`
    Shift(
        #[serde(with = "crate::exactpoly::qserde")] Rational,
        #[serde(with = "crate::exactpoly::qserde")] Rational,
    ),
    /// `(x, y) = (u, u v)`; exceptional curve `u = 0`.
    A,
    /// `(x, y) = (u v, v)`; exceptional curve `v = 0`.
    B,
}

/// Germs `a`, `b` of a Weierstrass fibration in a chart of a blown-up base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalModel {
    pub center: String,
    pub chart: String,
    pub coords: [String; 2],
    pub a: MultiPoly,
    pub b: MultiPoly,
    /// `a^3 - 27 b^2`, kept in step with `a` and `b`.
    pub delta: MultiPoly,
    /// Coordinates of the root chart.
    pub base_coords: [String; 2],
    /// Root coordinates as polynomials in `coords`.
    pub history: [MultiPoly; 2],
    pub steps: Vec<ChartStep>,
    /// Divisors along `coords[0] = 0` and `coords[1] = 0`.
    pub axes: [Option<AxisDivisor>; 2],
    /// Axis index of the newest exceptional curve, before normalization.
    pub exceptional: Option<usize>,
    /// Name and type of the discriminant component not on an axis.
    pub residual: Option<(String, KodairaType)>,
    /// `(divisor, t)`: `(a, b)` were divided by `(e^{4t}, e^{6t})`.
    pub twists: Vec<(String, u32)>,
    root_delta: MultiPoly,
}

fn var(s: &str) -> MultiPoly {
    MultiPoly::var(s)
}

fn step_name(base: &str, chart: &str) -> String {
    let path: String = chart.chars().filter(|c| *c == 'A' || *c == 'B').collect();
    if path.is_empty() {
        base.to_string()
    } else {
        format!("{base}_{path}")
    }
}

impl LocalModel {
    pub fn new(center: &str, coords: [&str; 2], a: MultiPoly, b: MultiPoly) -> Self {
        let coords = coords.map(String::from);
        let (a, b) = (a.with_vars(&coords), b.with_vars(&coords));
        let delta = local_discriminant(&a, &b).with_vars(&coords);
        LocalModel {
            center: center.into(),
            chart: String::new(),
            history: [var(&coords[0]), var(&coords[1])],
            base_coords: coords.clone(),
            coords,
            root_delta: delta.clone(),
            delta,
            a,
            b,
            steps: Vec::new(),
            axes: [None, None],
            exceptional: None,
            residual: None,
            twists: Vec::new(),
        }
    }

    /// Names the divisor `coords[i] = 0`; its type is read off the germs.
    pub fn with_axis(mut self, i: usize, name: &str) -> Result<Self, BlowupError> {
        let t = self.triple_along_axis(i)?;
        let kodaira = kodaira_classify(&t)?;
        self.axes[i] = Some(AxisDivisor { name: name.into(), kodaira: Some(kodaira) });
        Ok(self)
    }

    pub fn with_residual(mut self, name: &str, kodaira: KodairaType) -> Self {
        self.residual = Some((name.into(), kodaira));
        self
    }

    fn refresh(&mut self) {
        self.delta = local_discriminant(&self.a, &self.b).with_vars(&self.coords);
    }

    pub fn triple_along_axis(&self, i: usize) -> Result<OrderTriple, BlowupError> {
        Ok(order_triple_along(&self.a, &self.b, &var(&self.coords[i]))?)
    }

    /// The discriminant with the named axes divided out.
    pub fn residual_polynomial(&self) -> MultiPoly {
        let mut r = self.delta.clone();
        for (i, ax) in self.axes.iter().enumerate() {
            if ax.is_some() {
                let k = r.min_degree_in(&self.coords[i]);
                r = r.exact_divide(&var(&self.coords[i]).pow_u(k)).expect("monomial factor divides");
            }
        }
        r.with_vars(&self.coords)
    }

    /// Pull-back of the root discriminant with no normalization applied.
    pub fn total_delta(&self) -> MultiPoly {
        let map: Vec<(&str, MultiPoly)> =
            self.base_coords.iter().map(String::as_str).zip(self.history.iter().cloned()).collect();
        self.root_delta.substitute(&map).with_vars(&self.coords)
    }

    /// Same model with `point` moved to the origin. Axes that miss the
    /// point are forgotten.
    pub fn recentered(&self, point: &(Rational, Rational)) -> LocalModel {
        if point.0.is_zero() && point.1.is_zero() {
            return self.clone();
        }
        let (x, y) = (self.coords[0].as_str(), self.coords[1].as_str());
        let shift = [(x, point.0.clone()), (y, point.1.clone())];
        let moved = |p: &MultiPoly| p.recenter(&shift).with_vars(&self.coords);
        let mut m = self.clone();
        m.a = moved(&self.a);
        m.b = moved(&self.b);
        m.delta = moved(&self.delta);
        m.history = [moved(&self.history[0]), moved(&self.history[1])];
        m.steps.push(ChartStep::Shift(point.0.clone(), point.1.clone()));
        m.chart = format!("{}@({}, {})", self.chart, rational_to_string(&point.0), rational_to_string(&point.1));
        for (i, c) in [&point.0, &point.1].into_iter().enumerate() {
            if !c.is_zero() {
                m.axes[i] = None;
                if m.exceptional == Some(i) {
                    m.exceptional = None;
                }
            }
        }
        m
    }

    /// Image of `p` (in this chart) in the root chart.
    pub fn to_root(&self, p: &(Rational, Rational)) -> (Rational, Rational) {
        let at = [(self.coords[0].as_str(), p.0.clone()), (self.coords[1].as_str(), p.1.clone())];
        let ev = |h: &MultiPoly| h.evaluate(&at).expect("chart coordinates assigned");
        (ev(&self.history[0]), ev(&self.history[1]))
    }

    /// Inverse of [`LocalModel::to_root`] off the exceptional curves.
    pub fn from_root(&self, p: &(Rational, Rational)) -> Option<(Rational, Rational)> {
        let (mut x, mut y) = p.clone();
        for s in &self.steps {
            match s {
                ChartStep::Shift(x0, y0) => {
                    x = &x - x0;
                    y = &y - y0;
                }
                ChartStep::A => {
                    if x.is_zero() {
                        return None;
                    }
                    y = &y / &x;
                }
                ChartStep::B => {
                    if y.is_zero() {
                        return None;
                    }
                    x = &x / &y;
                }
            }
        }
        Some((x, y))
    }

    pub fn summary(&self) -> ChartSummary {
        ChartSummary {
            center: self.center.clone(),
            chart: self.chart.clone(),
            coords: self.coords.clone(),
            axes: self.axes.clone().map(|a| a.map(|d| d.name)),
            a: self.a.clone(),
            b: self.b.clone(),
            delta: self.delta.clone(),
            total_delta: self.total_delta(),
        }
    }
}

/// Both charts of the blow-up of `model` at `center`; the exceptional
/// curve, named `exceptional`, is `u = 0` in chart A and `v = 0` in chart B.
/// The germs are pulled back but not yet normalized.
pub fn blow_up_point(model: &LocalModel, center: &(Rational, Rational), exceptional: &str) -> (LocalModel, LocalModel) {
    let m = model.recentered(center);
    let (x, y) = (m.coords[0].clone(), m.coords[1].clone());
    let chart = |letter: char| {
        let name = format!("{}{letter}", m.chart);
        let coords = [step_name(&m.base_coords[0], &name), step_name(&m.base_coords[1], &name)];
        let (u, v) = (var(&coords[0]), var(&coords[1]));
        let sub = if letter == 'A' { [(x.as_str(), u.clone()), (y.as_str(), &u * &v)] } else { [(x.as_str(), &u * &v), (y.as_str(), v.clone())] };
        let pull = |p: &MultiPoly| p.substitute(&sub).with_vars(&coords);
        let e = Some(AxisDivisor { name: exceptional.into(), kodaira: None });
        let (axes, idx, step) = if letter == 'A' {
            ([e, m.axes[1].clone()], 0, ChartStep::A)
        } else {
            ([m.axes[0].clone(), e], 1, ChartStep::B)
        };
        let mut steps = m.steps.clone();
        steps.push(step);
        let mut out = LocalModel {
            center: m.center.clone(),
            chart: name,
            a: pull(&m.a),
            b: pull(&m.b),
            delta: MultiPoly::zero(),
            base_coords: m.base_coords.clone(),
            history: [pull(&m.history[0]), pull(&m.history[1])],
            steps,
            axes,
            exceptional: Some(idx),
            residual: m.residual.clone(),
            twists: m.twists.clone(),
            root_delta: m.root_delta.clone(),
            coords,
        };
        out.refresh();
        out
    };
    (chart('A'), chart('B'))
}

/// Normalizes condition (C) along the exceptional axis and classifies it.
pub fn pull_back_fibration(model: LocalModel) -> Result<LocalModel, BlowupError> {
    let Some(i) = model.exceptional else { return Ok(model) };
    let mut m = model;
    let (a, b, t) = normalize_condition_c(&m.a, &m.b, &m.coords[i]);
    m.a = a.with_vars(&m.coords);
    m.b = b.with_vars(&m.coords);
    m.refresh();
    let name = m.axes[i].as_ref().map(|d| d.name.clone()).unwrap_or_default();
    if t > 0 {
        m.twists.push((name, t));
    }
    let kodaira = kodaira_classify(&m.triple_along_axis(i)?)?;
    if let Some(d) = m.axes[i].as_mut() {
        d.kodaira = Some(kodaira);
    }
    Ok(m)
}

/// `(L, K, N)` along the exceptional axis of `model`.
pub fn exceptional_order_triple(model: &LocalModel) -> Result<OrderTriple, BlowupError> {
    let i = model.exceptional.expect("model comes from a blow-up");
    model.triple_along_axis(i)
}

/// A chart of the final modification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartSummary {
    pub center: String,
    pub chart: String,
    pub coords: [String; 2],
    pub axes: [Option<String>; 2],
    pub a: MultiPoly,
    pub b: MultiPoly,
    pub delta: MultiPoly,
    /// Pull-back of the discriminant before any normalization.
    pub total_delta: MultiPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorRecord {
    pub name: String,
    pub origin: String,
    pub triple: OrderTriple,
    /// Triple of the plain pull-back, before dividing by `e^{(4t, 6t, 12t)}`.
    pub raw_triple: OrderTriple,
    pub twist: u32,
    #[serde(with = "kodaira_tag")]
    pub kodaira: KodairaType,
    /// Chart in which the divisor was first computed.
    pub chart: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollisionPoint {
    pub center: String,
    pub chart: String,
    pub coords: [String; 2],
    /// Coordinates of the point, or the equation its coordinate solves.
    pub location: String,
}

impl fmt::Display for CollisionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} chart {} ({}, {}) {}", self.center, self.chart, self.coords[0], self.coords[1], self.location)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollisionRecord {
    /// Ordered like `fiber.pair`.
    pub divisor_pair: [String; 2],
    pub point: CollisionPoint,
    /// Number of such points (several for a conjugate set).
    pub count: usize,
    pub fiber: MirandaFiber,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupEvent {
    pub center: String,
    /// Chart whose origin was blown up.
    pub chart: String,
    pub exceptional: String,
    pub charts: [String; 2],
    /// Twists applied along the new curve in charts A and B.
    pub twists: [u32; 2],
}

/// Everything the driver found: blow-ups, divisors, collisions, final charts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseModification {
    pub events: Vec<BlowupEvent>,
    pub divisors: Vec<DivisorRecord>,
    pub collisions: Vec<CollisionRecord>,
    pub leaves: Vec<ChartSummary>,
    pub residual: Option<ResidualCurve>,
    pub notes: Vec<String>,
}

impl BaseModification {
    pub fn extend(&mut self, other: BaseModification) {
        self.events.extend(other.events);
        self.divisors.extend(other.divisors);
        self.collisions.extend(other.collisions);
        self.leaves.extend(other.leaves);
        self.notes.extend(other.notes);
    }

    pub fn divisor(&self, origin: &str, name: &str) -> Option<&DivisorRecord> {
        self.divisors.iter().find(|d| d.origin == origin && d.name == name)
    }

    pub fn leaf(&self, center: &str, chart: &str) -> Option<&ChartSummary> {
        self.leaves.iter().find(|l| l.center == center && l.chart == chart)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Branch {
    Axis(usize),
    Residual,
}

enum Verdict {
    Regular,
    Node(Branch, Branch),
    Singular,
}

/// Local components of the reduced total transform through the origin and
/// whether they form a node.
fn inspect(m: &LocalModel) -> Result<Verdict, BlowupError> {
    let mut branches = Vec::new();
    for i in 0..2 {
        if m.axes[i].is_some() && m.delta.min_degree_in(&m.coords[i]) > 0 {
            branches.push(Branch::Axis(i));
        }
    }
    let r = m.residual_polynomial();
    let on_residual = r.constant_term().is_zero();
    if on_residual {
        branches.push(Branch::Residual);
    }
    let order = if on_residual { r.lowest_degree().unwrap_or(u32::MAX) } else { 0 };
    Ok(match branches.as_slice() {
        [] => Verdict::Regular,
        [Branch::Axis(_)] => Verdict::Regular,
        [Branch::Residual] => match order {
            1 => Verdict::Regular,
            2 => {
                let chart = AffineChart { index: 0, coords: m.coords.clone() };
                let rep = classify_double_point(&r, &chart, &(Rational::zero(), Rational::zero()))?;
                if rep.classification == Some(SingularityKind::Node) {
                    Verdict::Node(Branch::Residual, Branch::Residual)
                } else {
                    Verdict::Singular
                }
            }
            _ => Verdict::Singular,
        },
        [Branch::Axis(i), Branch::Axis(j)] => Verdict::Node(Branch::Axis(*i), Branch::Axis(*j)),
        [Branch::Axis(i), Branch::Residual] => {
            // transverse to coords[i] = 0 iff the other partial is nonzero
            let other = &m.coords[1 - i];
            let lin = r.with_vars(&[other.as_str()]).partial_derivative(other)?.constant_term();
            if order == 1 && !lin.is_zero() {
                Verdict::Node(Branch::Axis(*i), Branch::Residual)
            } else {
                Verdict::Singular
            }
        }
        _ => Verdict::Singular,
    })
}

fn branch_info(m: &LocalModel, b: &Branch) -> Result<(String, KodairaType), BlowupError> {
    match b {
        Branch::Axis(i) => {
            let d = m.axes[*i].as_ref().expect("branch axis is named");
            let k = match d.kodaira {
                Some(k) => k,
                None => kodaira_classify(&m.triple_along_axis(*i)?)?,
            };
            Ok((d.name.clone(), k))
        }
        Branch::Residual => match &m.residual {
            Some((n, k)) => Ok((n.clone(), *k)),
            None => {
                let r = m.residual_polynomial();
                let t = order_triple_along(&m.a, &m.b, &r)?;
                Ok(("residual".into(), kodaira_classify(&t)?))
            }
        },
    }
}

struct Driver {
    budget: u32,
    used: u32,
    origin: String,
    out: BaseModification,
}

impl Driver {
    fn collision(&mut self, m: &LocalModel, b1: &Branch, b2: &Branch, location: String, count: usize) -> Result<bool, BlowupError> {
        let (n1, k1) = branch_info(m, b1)?;
        let (n2, k2) = branch_info(m, b2)?;
        match collide(k1, k2) {
            Ok(fiber) => {
                let divisor_pair = if fiber.pair.0 == k1 { [n1, n2] } else { [n2, n1] };
                self.out.collisions.push(CollisionRecord {
                    divisor_pair,
                    point: CollisionPoint { center: self.origin.clone(), chart: m.chart.clone(), coords: m.coords.clone(), location },
                    count,
                    fiber,
                });
                Ok(true)
            }
            Err(MirandaError::NotOnList(..)) => Ok(false),
        }
    }

    fn resolve(&mut self, m: LocalModel) -> Result<(), BlowupError> {
        match inspect(&m)? {
            Verdict::Regular => {
                self.out.leaves.push(m.summary());
                return Ok(());
            }
            Verdict::Node(b1, b2) => {
                if self.collision(&m, &b1, &b2, "(0, 0)".into(), 1)? {
                    self.out.leaves.push(m.summary());
                    return Ok(());
                }
            }
            Verdict::Singular => {}
        }
        self.blow_up(m)
    }

    fn blow_up(&mut self, m: LocalModel) -> Result<(), BlowupError> {
        if self.used >= self.budget {
            return Err(BlowupError::BudgetExceeded {
                center: self.origin.clone(),
                chart: m.chart.clone(),
                budget: self.budget,
                germ: m.delta.to_string(),
            });
        }
        self.used += 1;
        let name = format!("E{}", self.used);
        let origin = (Rational::zero(), Rational::zero());
        let (ca, cb) = blow_up_point(&m, &origin, &name);
        let raw = exceptional_order_triple(&ca)?;
        let (ca, cb) = (pull_back_fibration(ca)?, pull_back_fibration(cb)?);
        let (ta, tb) = (exceptional_order_triple(&ca)?, exceptional_order_triple(&cb)?);
        if ta != tb {
            return Err(BlowupError::ChartMismatch { name, first: ta, second: tb });
        }
        let twist = |c: &LocalModel| c.twists.iter().filter(|(n, _)| *n == name).map(|(_, t)| *t).sum::<u32>();
        let kodaira = kodaira_classify(&ta)?;
        self.out.divisors.push(DivisorRecord {
            name: name.clone(),
            origin: self.origin.clone(),
            triple: ta,
            raw_triple: raw,
            twist: twist(&ca),
            kodaira,
            chart: ca.chart.clone(),
        });
        self.out.events.push(BlowupEvent {
            center: self.origin.clone(),
            chart: m.chart.clone(),
            exceptional: name.clone(),
            charts: [ca.chart.clone(), cb.chart.clone()],
            twists: [twist(&ca), twist(&cb)],
        });
        // points of the new curve away from both chart origins
        let r = ca.residual_polynomial();
        let (u, v) = (ca.coords[0].clone(), ca.coords[1].clone());
        let on_e = UniPoly::from_multi(&r.substitute_values(&[(u.as_str(), Rational::zero())]), &v)?;
        let mut later = Vec::new();
        if on_e.degree().unwrap_or(0) > 0 {
            let sf = on_e.squarefree_part();
            let (roots, rest) = sf.without_rational_roots();
            for c in roots.into_iter().filter(|c| !c.is_zero()) {
                later.push(ca.recentered(&(Rational::zero(), c)));
            }
            if rest.degree().unwrap_or(0) > 0 {
                let simple = on_e.gcd(&on_e.derivative()).gcd(&rest).degree() == Some(0);
                let eq = rest.monic().to_multi(&v).to_string();
                let crosses = !kodaira.is_smooth();
                if !simple {
                    return Err(BlowupError::IrrationalPoint { center: self.origin.clone(), what: format!("a point of {name}"), eliminant: eq });
                }
                if crosses {
                    let loc = format!("{u} = 0, {eq} = 0");
                    let n = rest.degree().unwrap();
                    if !self.collision(&ca, &Branch::Axis(0), &Branch::Residual, loc, n)? {
                        return Err(BlowupError::IrrationalPoint { center: self.origin.clone(), what: format!("a collision on {name}"), eliminant: eq });
                    }
                }
            }
        }
        self.resolve(ca)?;
        for p in later {
            self.resolve(p)?;
        }
        self.resolve(cb)
    }
}

/// Runs the driver from the origin of `model`; divisors created are
/// `E1, E2, ...` with origin `model.center`.
pub fn resolve_local(model: LocalModel, budget: u32) -> Result<BaseModification, BlowupError> {
    let mut d = Driver { budget, used: 0, origin: model.center.clone(), out: BaseModification::default() };
    d.resolve(model)?;
    Ok(d.out)
}

/// The model `(a, b) = (s1, s2)` of a transverse crossing of `a = 0` and
/// `b = 0`; its discriminant `s1^3 - 27 s2^2` has a cusp at the origin.
pub fn cusp_model(center: &str, residual: Option<(&str, KodairaType)>) -> LocalModel {
    let m = LocalModel::new(center, ["s1", "s2"], var("s1"), var("s2"));
    match residual {
        Some((n, k)) => m.with_residual(n, k),
        None => m,
    }
}
