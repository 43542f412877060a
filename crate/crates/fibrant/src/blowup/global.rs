//! The global scan over P^2: coordinate lines in the discriminant, the
//! residual curve, the points where the reduced discriminant fails to be
//! a smooth curve, and one local driver run per such point.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{
    blowup_budget, cusp_model, resolve_local, BaseModification, BlowupError, CollisionPoint, CollisionRecord, DivisorRecord,
    LocalModel,
};
use crate::exactpoly::{int, resultant, MultiPoly, Order, Rational, UniPoly};
use crate::miranda::collide;
use crate::planecurve::{
    classify_double_point, format_projective, normalize_projective, projective_common_zeros, AffineChart, Cluster,
    SingularityKind, HOMOGENEOUS_VARS,
};
use crate::weierstrass::{discriminant, kodaira_classify, kodaira_tag, order_triple_along, KodairaType, OrderTriple, WeierstrassFibration};

/// The part of the discriminant off the coordinate lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualCurve {
    pub name: String,
    pub equation: MultiPoly,
    pub degree: u32,
    pub triple: OrderTriple,
    #[serde(with = "kodaira_tag")]
    pub kodaira: KodairaType,
    /// Singular points with `A0 != 0`, by type.
    pub nodes: u32,
    pub cusps: u32,
    pub other_singular_points: u32,
    /// Singular points on `A0 = 0`.
    pub singular_at_infinity: u32,
}

struct Line {
    index: usize,
    name: String,
    kodaira: KodairaType,
}

fn var(s: &str) -> MultiPoly {
    MultiPoly::var(s)
}

fn line_name(i: usize) -> String {
    if i == 0 {
        "L~".into()
    } else {
        format!("L{i}~")
    }
}

/// Index of the first nonzero coordinate.
fn chart_for(p: &[Rational; 3]) -> AffineChart {
    AffineChart::standard(p.iter().position(|c| !c.is_zero()).expect("nonzero point"))
}

/// Axis of `chart` carrying the line `A_i = 0` (`i` is not the chart index).
fn axis_of(chart: &AffineChart, i: usize) -> usize {
    (0..3).filter(|&k| k != chart.index).position(|k| k == i).expect("line differs from the chart")
}

fn jacobian(a: &MultiPoly, b: &MultiPoly, x: &str, y: &str) -> Result<MultiPoly, BlowupError> {
    let d = |p: &MultiPoly, v: &str| p.with_vars(&[v]).partial_derivative(v);
    Ok(&(&d(a, x)? * &d(b, y)?) - &(&d(a, y)? * &d(b, x)?))
}

/// Checks that every point of `cluster` is a transverse intersection of
/// `a = 0` and `b = 0`: the eliminant divides `Res(a, b)` and is coprime to
/// `Res(a, J)` with `J` the Jacobian determinant of `(a, b)`.
fn certify_cusp_cluster(fib: &WeierstrassFibration, chart: &AffineChart, c: &Cluster) -> Result<(), BlowupError> {
    let fail = || BlowupError::Uncertified { eliminant: c.eliminant.to_string() };
    let (x, y) = (chart.x(), chart.y());
    let mut a = chart.dehomogenize(&fib.a);
    let mut b = chart.dehomogenize(&fib.b);
    let mut j = jacobian(&a, &b, x, y)?;
    let e = UniPoly::from_multi(&c.eliminant, &c.variable)?;
    let w = if c.variable == x { y } else { x };
    let (r_ab, r_aj) = if let Some((fv, val)) = &c.fixed {
        let at = [(fv.as_str(), val.clone())];
        a = a.substitute_values(&at);
        b = b.substitute_values(&at);
        j = j.substitute_values(&at);
        let u = |p: &MultiPoly| UniPoly::from_multi(p, &c.variable);
        let ua = u(&a)?;
        (ua.gcd(&u(&b)?), ua.gcd(&u(&j)?))
    } else {
        let u = |p: MultiPoly| UniPoly::from_multi(&p, &c.variable);
        (u(resultant(&a, &b, w)?)?, u(resultant(&a, &j, w)?)?)
    };
    if r_ab.is_zero() || r_aj.is_zero() || !r_ab.rem(&e)?.is_zero() || e.gcd(&r_aj).degree() != Some(0) {
        return Err(fail());
    }
    Ok(())
}

/// Base change that makes the discriminant of `fib` a divisor with normal
/// crossings whose collisions are all on Miranda's list.
pub fn regularize(fib: &WeierstrassFibration) -> Result<BaseModification, BlowupError> {
    let budget = blowup_budget();
    let delta = discriminant(fib)?;
    let mut out = BaseModification::default();

    let mut q = delta.clone();
    let mut lines = Vec::new();
    for (i, v) in HOMOGENEOUS_VARS.iter().enumerate() {
        let (k, rest) = q.extract_power(&var(v))?;
        if k == Order::Finite(0) {
            continue;
        }
        q = rest;
        let t = order_triple_along(&fib.a, &fib.b, &var(v))?;
        let kodaira = kodaira_classify(&t)?;
        let name = line_name(i);
        out.divisors.push(DivisorRecord {
            name: name.clone(),
            origin: format!("{v} = 0"),
            triple: t,
            raw_triple: t,
            twist: 0,
            kodaira,
            chart: "P2".into(),
        });
        lines.push(Line { index: i, name, kodaira });
    }

    let mut candidates: Vec<[Rational; 3]> = Vec::new();
    let mut residual = None;
    if !q.is_constant() {
        let degree = q.total_degree().unwrap_or(0);
        let u0 = AffineChart::standard(0);
        let t = order_triple_along(&u0.dehomogenize(&fib.a), &u0.dehomogenize(&fib.b), &u0.dehomogenize(&q))?;
        let kodaira = kodaira_classify(&t)?;
        let name = "Q~".to_string();
        let origin = if degree == 5 { "quintic".to_string() } else { format!("residual curve of degree {degree}") };
        out.divisors.push(DivisorRecord {
            name: name.clone(),
            origin,
            triple: t,
            raw_triple: t,
            twist: 0,
            kodaira,
            chart: "P2".into(),
        });
        let mut rc = ResidualCurve {
            name: name.clone(),
            equation: q.clone(),
            degree,
            triple: t,
            kodaira,
            nodes: 0,
            cusps: 0,
            other_singular_points: 0,
            singular_at_infinity: 0,
        };

        let grads: Vec<MultiPoly> = HOMOGENEOUS_VARS.iter().map(|v| q.partial_derivative(v)).collect::<Result<_, _>>()?;
        let mut sys = vec![q.clone()];
        sys.extend(grads);
        let sing = projective_common_zeros(&sys)?;
        for p in &sing.points {
            let chart = chart_for(p);
            let loc = chart.from_projective(p).expect("chart contains the point");
            let rep = classify_double_point(&chart.dehomogenize(&q), &chart, &loc)?;
            match rep.classification {
                _ if chart.index != 0 => rc.singular_at_infinity += 1,
                Some(SingularityKind::Node) => rc.nodes += 1,
                Some(SingularityKind::Cusp) => rc.cusps += 1,
                _ => rc.other_singular_points += 1,
            }
            candidates.push(normalize_projective(p));
        }
        let mut cusp_index = 0;
        for (chart, c) in &sing.clusters {
            certify_cusp_cluster(fib, chart, c)?;
            out.notes.push(format!(
                "{} singular points of {name} with {} = 0 are transverse crossings of a = 0 and b = 0; local model (s1, s2) = (a, b)",
                c.count, c.eliminant
            ));
            if chart.index == 0 {
                rc.cusps += c.count as u32;
            } else {
                rc.singular_at_infinity += c.count as u32;
            }
            for _ in 0..c.count {
                cusp_index += 1;
                let m = cusp_model(&format!("cusp p{cusp_index}"), Some((&name, kodaira)));
                out.extend(resolve_local(m, budget)?);
            }
        }

        // the residual curve against each line
        for l in &lines {
            let others: Vec<usize> = (0..3).filter(|&k| k != l.index).collect();
            let (vj, vk) = (HOMOGENEOUS_VARS[others[0]], HOMOGENEOUS_VARS[others[1]]);
            let on_line = q.substitute_values(&[(HOMOGENEOUS_VARS[l.index], Rational::zero())]);
            let g = UniPoly::from_multi(&on_line.substitute_values(&[(vj, int(1))]), vk)?;
            let mut pt = |j: Rational, k: Rational| {
                let mut p = [Rational::zero(), Rational::zero(), Rational::zero()];
                p[others[0]] = j;
                p[others[1]] = k;
                candidates.push(normalize_projective(&p));
            };
            if (g.degree().unwrap_or(0) as u32) < degree {
                pt(Rational::zero(), int(1));
            }
            let (roots, rest) = g.without_rational_roots();
            for t in roots {
                pt(int(1), t);
            }
            if rest.degree().unwrap_or(0) > 0 {
                let simple = g.gcd(&g.derivative()).gcd(&rest).degree() == Some(0);
                let eq = rest.monic().to_multi(vk).to_string();
                let err = || BlowupError::IrrationalPoint { center: l.name.clone(), what: format!("a point of {name}"), eliminant: eq.clone() };
                if !simple {
                    return Err(err());
                }
                let fiber = collide(l.kodaira, kodaira).map_err(|_| err())?;
                let divisor_pair =
                    if fiber.pair.0 == l.kodaira { [l.name.clone(), name.clone()] } else { [name.clone(), l.name.clone()] };
                out.collisions.push(CollisionRecord {
                    divisor_pair,
                    point: CollisionPoint {
                        center: format!("{} = 0", HOMOGENEOUS_VARS[l.index]),
                        chart: "P2".into(),
                        coords: [vj.into(), vk.into()],
                        location: format!("{vj} = 1, {eq} = 0"),
                    },
                    count: rest.degree().unwrap(),
                    fiber,
                });
            }
        }
        residual = Some(rc);
    }
    for (x, l1) in lines.iter().enumerate() {
        for l2 in &lines[x + 1..] {
            let mut p = [Rational::zero(), Rational::zero(), Rational::zero()];
            p[3 - l1.index - l2.index] = int(1);
            candidates.push(p);
        }
    }
    candidates.sort();
    candidates.dedup();

    for p in &candidates {
        let chart = chart_for(p);
        let (x0, y0) = chart.from_projective(p).expect("chart contains the point");
        let shift = [(chart.x(), x0), (chart.y(), y0)];
        let germ = |s: &MultiPoly| chart.dehomogenize(s).recenter(&shift);
        let mut m = LocalModel::new(&format_projective(p), [chart.x(), chart.y()], germ(&fib.a), germ(&fib.b));
        m.chart = format!("U{}", chart.index);
        for l in &lines {
            if p[l.index].is_zero() {
                m = m.with_axis(axis_of(&chart, l.index), &l.name)?;
            }
        }
        if let Some(rc) = &residual {
            m = m.with_residual(&rc.name, rc.kodaira);
        }
        out.extend(resolve_local(m, budget)?);
    }
    out.residual = residual;
    Ok(out)
}
