//! Plane curves in the affine charts of P^2: rational singular points by
//! elimination, double-point types, local intersection numbers and
//! smoothness certificates.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactpoly::{gcd, resultant, MultiPoly, PolyError, Rational, UniPoly};

pub const HOMOGENEOUS_VARS: [&str; 3] = ["A0", "A1", "A2"];

/// Blow-up depth used to separate cusps and tacnodes.
pub const DOUBLE_POINT_DEPTH: u32 = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("input is not reduced: {0} divides f and both partials")]
    NotReduced(String),
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("point is a smooth point of the curve")]
    NotSingular,
    #[error("curves share the component {0} through the point")]
    CommonComponent(String),
    #[error("common zeros form a curve ({0})")]
    PositiveDimensional(String),
    #[error("no admissible shear found up to {0}")]
    NoShear(u32),
}

/// `U_i = {A_i != 0}` with affine coordinates the other two ratios.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineChart {
    pub index: usize,
    pub coords: [String; 2],
}

impl AffineChart {
    /// `U0: (a1,a2) = (A1/A0, A2/A0)`, `U1: (u,v) = (A0/A1, A2/A1)`,
    /// `U2: (u,v) = (A0/A2, A1/A2)`.
    pub fn standard(index: usize) -> Self {
        let coords = match index {
            0 => ["a1", "a2"],
            1 | 2 => ["u", "v"],
            _ => panic!("chart index must be 0, 1 or 2"),
        };
        AffineChart { index, coords: coords.map(String::from) }
    }

    pub fn x(&self) -> &str {
        &self.coords[0]
    }

    pub fn y(&self) -> &str {
        &self.coords[1]
    }

    /// Homogeneous variable that each affine coordinate stands for.
    fn others(&self) -> [usize; 2] {
        match self.index {
            0 => [1, 2],
            1 => [0, 2],
            _ => [0, 1],
        }
    }

    pub fn dehomogenize(&self, f: &MultiPoly) -> MultiPoly {
        let [i, j] = self.others();
        f.substitute(&[
            (HOMOGENEOUS_VARS[self.index], MultiPoly::one()),
            (HOMOGENEOUS_VARS[i], MultiPoly::var(self.x())),
            (HOMOGENEOUS_VARS[j], MultiPoly::var(self.y())),
        ])
        .with_vars(&self.coords)
    }

    pub fn homogenize(&self, f: &MultiPoly, degree: u32) -> MultiPoly {
        let [i, j] = self.others();
        let h = f.homogenize("__h", degree);
        h.substitute(&[
            ("__h", MultiPoly::var(HOMOGENEOUS_VARS[self.index])),
            (self.x(), MultiPoly::var(HOMOGENEOUS_VARS[i])),
            (self.y(), MultiPoly::var(HOMOGENEOUS_VARS[j])),
        ])
    }

    pub fn to_projective(&self, p: &(Rational, Rational)) -> [Rational; 3] {
        let mut out = [Rational::zero(), Rational::zero(), Rational::zero()];
        let [i, j] = self.others();
        out[self.index] = Rational::from_integer(1.into());
        out[i] = p.0.clone();
        out[j] = p.1.clone();
        out
    }

    pub fn from_projective(&self, p: &[Rational; 3]) -> Option<(Rational, Rational)> {
        if p[self.index].is_zero() {
            return None;
        }
        let [i, j] = self.others();
        Some((&p[i] / &p[self.index], &p[j] / &p[self.index]))
    }
}

/// Normalizes a projective point so that its first nonzero entry is 1.
pub fn normalize_projective(p: &[Rational; 3]) -> [Rational; 3] {
    let k = p.iter().find(|c| !c.is_zero()).cloned().expect("nonzero point");
    [&p[0] / &k, &p[1] / &k, &p[2] / &k]
}

pub fn format_projective(p: &[Rational; 3]) -> String {
    let s: Vec<String> = p.iter().map(crate::exactpoly::rational_to_string).collect();
    format!("({})", s.join(":"))
}

/// Common zeros that are not rational: `count` points whose `variable`
/// coordinates are the roots of `eliminant`, the other coordinate either
/// free (projection assumed injective) or fixed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cluster {
    pub variable: String,
    pub eliminant: MultiPoly,
    pub count: usize,
    #[serde(with = "crate::exactpoly::qserde::named_option")]
    pub fixed: Option<(String, Rational)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommonZeros {
    pub points: Vec<(Rational, Rational)>,
    pub clusters: Vec<Cluster>,
    /// gcd of the pairwise resultants, a polynomial in `y`.
    pub eliminant: MultiPoly,
}

/// Rational common zeros of `polys` in the plane with coordinates `(x, y)`.
/// Irrational solutions come back as eliminant clusters.
pub fn rational_common_zeros(polys: &[MultiPoly], x: &str, y: &str) -> Result<CommonZeros, CurveError> {
    let polys: Vec<MultiPoly> = polys.iter().filter(|p| !p.is_zero()).map(|p| p.with_vars(&[x, y])).collect();
    if polys.iter().any(|p| p.is_constant()) {
        return Ok(CommonZeros { eliminant: MultiPoly::one(), ..Default::default() });
    }
    let mut elim = MultiPoly::zero();
    for (i, p) in polys.iter().enumerate() {
        if p.degree_in(x) == 0 {
            elim = gcd(&elim, p);
        }
        for q in &polys[i + 1..] {
            if p.degree_in(x) == 0 && q.degree_in(x) == 0 {
                continue;
            }
            let r = resultant(p, q, x)?;
            elim = gcd(&elim, &r);
        }
    }
    if elim.is_zero() {
        let g = polys.iter().fold(MultiPoly::zero(), |acc, p| gcd(&acc, p));
        return Err(CurveError::PositiveDimensional(g.to_string()));
    }
    let e = UniPoly::from_multi(&elim, y)?.squarefree_part();
    let (ys, rest) = e.without_rational_roots();
    let mut out = CommonZeros { eliminant: elim.clone(), ..Default::default() };
    for y0 in ys {
        let mut h = UniPoly::zero();
        for p in &polys {
            let s = p.substitute_values(&[(y, y0.clone())]);
            h = h.gcd(&UniPoly::from_multi(&s, x)?);
        }
        if h.is_zero() {
            return Err(CurveError::PositiveDimensional(format!("{y} = {}", crate::exactpoly::rational_to_string(&y0))));
        }
        let (xs, hrest) = h.without_rational_roots();
        for x0 in xs {
            out.points.push((x0, y0.clone()));
        }
        if hrest.degree().unwrap_or(0) > 0 {
            let sf = hrest.squarefree_part();
            out.clusters.push(Cluster {
                variable: x.to_string(),
                count: sf.degree().unwrap(),
                eliminant: sf.to_multi(x),
                fixed: Some((y.to_string(), y0.clone())),
            });
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        out.clusters.push(Cluster {
            variable: y.to_string(),
            count: rest.degree().unwrap(),
            eliminant: rest.monic().to_multi(y),
            fixed: None,
        });
    }
    out.points.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SingularityKind {
    Smooth,
    Node,
    Cusp,
    Tacnode,
    Multiplicity { order: u32 },
    Unresolved { depth: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "location", rename_all = "snake_case")]
pub enum PointLocation {
    Rational {
        #[serde(with = "crate::exactpoly::qserde")]
        x: Rational,
        #[serde(with = "crate::exactpoly::qserde")]
        y: Rational,
    },
    NonRationalCluster { cluster: Cluster },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularPointReport {
    pub point: PointLocation,
    pub classification: Option<SingularityKind>,
    /// `P1 P2 - (P3/2)^2` for the quadratic part `P1 x^2 + P3 x y + P2 y^2`.
    #[serde(with = "crate::exactpoly::qserde::option")]
    pub node_determinant: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularSet {
    pub points: Vec<SingularPointReport>,
    pub clusters: Vec<Cluster>,
    pub eliminant: MultiPoly,
}

impl SingularSet {
    pub fn rational_points(&self) -> Vec<(Rational, Rational)> {
        self.points
            .iter()
            .filter_map(|r| match &r.point {
                PointLocation::Rational { x, y } => Some((x.clone(), y.clone())),
                _ => None,
            })
            .collect()
    }

    pub fn cluster_count(&self) -> usize {
        self.clusters.iter().map(|c| c.count).sum()
    }
}

fn partials(f: &MultiPoly, chart: &AffineChart) -> Result<(MultiPoly, MultiPoly, MultiPoly), CurveError> {
    let f = f.with_vars(&chart.coords);
    let fx = f.partial_derivative(chart.x())?;
    let fy = f.partial_derivative(chart.y())?;
    Ok((f, fx, fy))
}

/// Gcd of homogeneous polynomials in `(A0, A1, A2)`: the power of `A0`
/// times the homogenized gcd of the restrictions to `A0 = 1`.
pub fn homogeneous_gcd(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    let u0 = AffineChart::standard(0);
    let k = f.min_degree_in(HOMOGENEOUS_VARS[0]).min(g.min_degree_in(HOMOGENEOUS_VARS[0]));
    let h = gcd(&u0.dehomogenize(f), &u0.dehomogenize(g));
    let h = u0.homogenize(&h, h.total_degree().unwrap_or(0));
    (&h * &MultiPoly::var(HOMOGENEOUS_VARS[0]).pow_u(k)).with_vars(&HOMOGENEOUS_VARS).monic()
}

/// Squarefree part of a homogeneous polynomial, computed like [`homogeneous_gcd`].
pub fn homogeneous_squarefree_part(f: &MultiPoly) -> MultiPoly {
    if f.is_zero() || f.is_constant() {
        return MultiPoly::one().with_vars(&HOMOGENEOUS_VARS);
    }
    let u0 = AffineChart::standard(0);
    let h = crate::exactpoly::squarefree_part(&u0.dehomogenize(f));
    let mut out = u0.homogenize(&h, h.total_degree().unwrap_or(0));
    if f.min_degree_in(HOMOGENEOUS_VARS[0]) > 0 {
        out = &out * &MultiPoly::var(HOMOGENEOUS_VARS[0]);
    }
    out.with_vars(&HOMOGENEOUS_VARS).monic()
}

/// Common zeros of homogeneous polynomials in `(A0, A1, A2)` on all of P^2:
/// the chart `U0`, then the line `A0 = 0` through `(0:1:t)`, then `(0:0:1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProjectiveZeros {
    /// Normalized so the first nonzero entry is 1.
    pub points: Vec<[Rational; 3]>,
    pub clusters: Vec<(AffineChart, Cluster)>,
}

pub fn projective_common_zeros(polys: &[MultiPoly]) -> Result<ProjectiveZeros, CurveError> {
    let u0 = AffineChart::standard(0);
    let affine: Vec<MultiPoly> = polys.iter().map(|p| u0.dehomogenize(p)).collect();
    let z = rational_common_zeros(&affine, u0.x(), u0.y())?;
    let mut out = ProjectiveZeros::default();
    out.points.extend(z.points.iter().map(|p| u0.to_projective(p)));
    out.clusters.extend(z.clusters.into_iter().map(|c| (u0.clone(), c)));

    let u1 = AffineChart::standard(1);
    let mut h = UniPoly::zero();
    for p in polys {
        let line = u1.dehomogenize(p).substitute_values(&[(u1.x(), Rational::zero())]);
        h = h.gcd(&UniPoly::from_multi(&line, u1.y())?);
    }
    if h.is_zero() {
        return Err(CurveError::PositiveDimensional("A0".into()));
    }
    let (ts, rest) = h.without_rational_roots();
    out.points.extend(ts.iter().map(|t| u1.to_projective(&(Rational::zero(), t.clone()))));
    if rest.degree().unwrap_or(0) > 0 {
        let sf = rest.squarefree_part();
        out.clusters.push((
            u1.clone(),
            Cluster {
                variable: u1.y().to_string(),
                count: sf.degree().unwrap(),
                eliminant: sf.to_multi(u1.y()),
                fixed: Some((u1.x().to_string(), Rational::zero())),
            },
        ));
    }

    let corner = [Rational::zero(), Rational::zero(), Rational::one()];
    let vanish = |p: &MultiPoly| {
        let vals: Vec<(&str, Rational)> = HOMOGENEOUS_VARS.iter().copied().zip(corner.iter().cloned()).collect();
        p.substitute_values(&vals).is_zero()
    };
    if polys.iter().all(vanish) {
        out.points.push(corner);
    }
    Ok(out)
}

/// Singular points of the reduced curve `f = 0` on the chart.
pub fn rational_singular_points(f: &MultiPoly, chart: &AffineChart) -> Result<SingularSet, CurveError> {
    if f.is_zero() {
        return Err(CurveError::Poly(PolyError::Degenerate("zero polynomial".into())));
    }
    let (f, fx, fy) = partials(f, chart)?;
    let g = gcd(&gcd(&f, &fx), &fy);
    if !g.is_constant() {
        return Err(CurveError::NotReduced(g.to_string()));
    }
    let zeros = rational_common_zeros(&[f.clone(), fx, fy], chart.x(), chart.y())?;
    let mut points = Vec::new();
    for (x0, y0) in &zeros.points {
        let mut rep = classify_double_point(&f, chart, &(x0.clone(), y0.clone()))?;
        rep.point = PointLocation::Rational { x: x0.clone(), y: y0.clone() };
        points.push(rep);
    }
    for c in &zeros.clusters {
        points.push(SingularPointReport {
            point: PointLocation::NonRationalCluster { cluster: c.clone() },
            classification: None,
            node_determinant: None,
        });
    }
    Ok(SingularSet { points, clusters: zeros.clusters, eliminant: zeros.eliminant })
}

fn quadratic_coefficients(q: &MultiPoly, x: &str, y: &str) -> (Rational, Rational, Rational) {
    let c = |a: u32, b: u32| {
        q.coefficients_in(x)
            .get(a as usize)
            .map(|p| p.coefficients_in(y).get(b as usize).map(|t| t.constant_term()).unwrap_or_default())
            .unwrap_or_default()
    };
    (c(2, 0), c(0, 2), c(1, 1))
}

/// `A_k` index of a double point at the origin, following the strict
/// transform through at most `depth` blow-ups. `None` when the germ is
/// not a double point or the budget runs out.
fn a_k_index(f: &MultiPoly, x: &str, y: &str, depth: u32) -> Result<Option<u32>, CurveError> {
    match f.lowest_degree() {
        None => return Ok(None),
        Some(1) => return Ok(Some(0)),
        Some(2) => {}
        Some(_) => return Ok(None),
    }
    let (p1, p2, p3) = quadratic_coefficients(&f.initial_form(), x, y);
    let det = &p1 * &p2 - &p3 * &p3 / Rational::from_integer(4.into());
    if !det.is_zero() {
        return Ok(Some(1));
    }
    if depth == 0 {
        return Ok(None);
    }
    let (xv, yv) = (MultiPoly::var(x), MultiPoly::var(y));
    let strict = if p1.is_zero() {
        // tangent line y = 0: chart x = u, y = u v, tangent direction v = 0
        let g = f.substitute(&[(y, &xv * &yv)]);
        g.exact_divide(&xv.pow_u(2))?
    } else {
        // tangent x = t y with t = -P3/(2 P1): chart x = u v, y = v, then u -> u + t
        let t = -&p3 / (&p1 * Rational::from_integer(2.into()));
        let g = f.substitute(&[(x, &xv * &yv)]);
        g.exact_divide(&yv.pow_u(2))?.recenter(&[(x, t)])
    };
    Ok(a_k_index(&strict, x, y, depth - 1)?.map(|k| k + 2))
}

/// Type of a singular point of `f = 0` (point given in chart coordinates).
pub fn classify_double_point(
    f: &MultiPoly,
    chart: &AffineChart,
    point: &(Rational, Rational),
) -> Result<SingularPointReport, CurveError> {
    let (x, y) = (chart.x(), chart.y());
    let g = f.with_vars(&chart.coords).recenter(&[(x, point.0.clone()), (y, point.1.clone())]);
    let loc = PointLocation::Rational { x: point.0.clone(), y: point.1.clone() };
    match g.lowest_degree() {
        None => return Err(CurveError::Poly(PolyError::Degenerate("zero polynomial".into()))),
        Some(0) => return Err(CurveError::NotOnCurve),
        Some(1) => return Err(CurveError::NotSingular),
        _ => {}
    }
    let m = g.lowest_degree().unwrap();
    if m >= 3 {
        return Ok(SingularPointReport {
            point: loc,
            classification: Some(SingularityKind::Multiplicity { order: m }),
            node_determinant: None,
        });
    }
    let (p1, p2, p3) = quadratic_coefficients(&g.initial_form(), x, y);
    let det = &p1 * &p2 - &p3 * &p3 / Rational::from_integer(4.into());
    let kind = match a_k_index(&g, x, y, DOUBLE_POINT_DEPTH)? {
        Some(1) => SingularityKind::Node,
        Some(2) => SingularityKind::Cusp,
        Some(3) => SingularityKind::Tacnode,
        _ => SingularityKind::Unresolved { depth: DOUBLE_POINT_DEPTH },
    };
    Ok(SingularPointReport { point: loc, classification: Some(kind), node_determinant: Some(det) })
}

/// Local intersection number of `f = 0` and `g = 0` at `point`.
///
/// After moving the point to the origin, shear `x -> x + lambda*y` for
/// `lambda = 0, 1, 2, ...` until both curves have constant leading
/// coefficient in `y` and meet the line `x = 0` only at the origin; the
/// answer is then the order of `Res_y(f, g)` at `x = 0`.
pub fn intersection_multiplicity(
    f: &MultiPoly,
    g: &MultiPoly,
    chart: &AffineChart,
    point: &(Rational, Rational),
) -> Result<u32, CurveError> {
    let (x, y) = (chart.x(), chart.y());
    let shift = [(x, point.0.clone()), (y, point.1.clone())];
    let mut f = f.with_vars(&chart.coords).recenter(&shift);
    let mut g = g.with_vars(&chart.coords).recenter(&shift);
    if !f.constant_term().is_zero() || !g.constant_term().is_zero() {
        return Err(CurveError::NotOnCurve);
    }
    let common = gcd(&f, &g);
    if !common.is_constant() {
        if common.constant_term().is_zero() {
            return Err(CurveError::CommonComponent(common.to_string()));
        }
        f = f.exact_divide(&common)?;
        g = g.exact_divide(&common)?;
    }
    const MAX_SHEAR: u32 = 64;
    for lambda in 0..=MAX_SHEAR {
        let lam = Rational::from_integer(lambda.into());
        let shear = [(x, &MultiPoly::var(x) + &MultiPoly::var(y).scale(&lam))];
        let (fs, gs) = (f.substitute(&shear), g.substitute(&shear));
        let const_lc = |p: &MultiPoly| {
            p.degree_in(y) == p.total_degree().unwrap_or(0) && p.leading_coeff_in(y).is_constant()
        };
        if !const_lc(&fs) || !const_lc(&gs) {
            continue;
        }
        let on_line = |p: &MultiPoly| UniPoly::from_multi(&p.substitute_values(&[(x, Rational::zero())]), y);
        let h = on_line(&fs)?.gcd(&on_line(&gs)?);
        let only_origin = h.coeffs().iter().rev().skip(1).all(Zero::is_zero);
        if !only_origin {
            continue;
        }
        let r = resultant(&fs, &gs, y)?;
        return Ok(r.min_degree_in(x));
    }
    Err(CurveError::NoShear(MAX_SHEAR))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum SmoothnessCertificate {
    /// gcd of the pairwise resultants of `f, f_x, f_y` is this nonzero constant.
    Smooth { eliminant: MultiPoly },
    Witness {
        #[serde(with = "crate::exactpoly::qserde::pairs")]
        points: Vec<(Rational, Rational)>,
        clusters: Vec<Cluster>,
    },
}

impl SmoothnessCertificate {
    pub fn is_smooth(&self) -> bool {
        matches!(self, SmoothnessCertificate::Smooth { .. })
    }
}

pub fn smoothness_certificate(f: &MultiPoly, chart: &AffineChart) -> Result<SmoothnessCertificate, CurveError> {
    let (f, fx, fy) = partials(f, chart)?;
    let z = rational_common_zeros(&[f, fx, fy], chart.x(), chart.y())?;
    if z.points.is_empty() && z.clusters.is_empty() {
        Ok(SmoothnessCertificate::Smooth { eliminant: z.eliminant })
    } else {
        Ok(SmoothnessCertificate::Witness { points: z.points, clusters: z.clusters })
    }
}

#[cfg(test)]
mod tests;
