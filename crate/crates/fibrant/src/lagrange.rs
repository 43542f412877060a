//! The Lagrange top: Lie-Poisson bracket on (Gamma, M), the four first
//! integrals, the Euler-Poisson field, the parameter map to `(a1, a2)`,
//! the sections `Phi`, `Psi`, and a numeric sampler for level sets.

use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exactpoly::{int, parse_with, rat, rational_to_f64, MultiPoly, Rational};
use crate::weierstrass::{FibrationParams, WeierstrassError, WeierstrassFibration};

pub const GAMMA: [&str; 3] = ["G1", "G2", "G3"];
pub const MOMENTUM: [&str; 3] = ["M1", "M2", "M3"];

/// Polynomial in `G1, G2, G3, M1, M2, M3`.
pub type PhasePoly = MultiPoly;

const MAX_DRAWS: usize = 100;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LagrangeError {
    #[error("1 + m must be nonzero")]
    DegenerateInertia,
    #[error("no admissible fibre point after {0} draws")]
    DegenerateDraw(usize),
    #[error(transparent)]
    Weierstrass(#[from] WeierstrassError),
}

/// `J1 = J2 = 1`, `J3 = 1 + m`, `chi = (0, 0, -1)`; `a_cas` is the level of
/// the Casimir `<Gamma, M>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopParams {
    #[serde(with = "crate::exactpoly::qserde")]
    pub m: Rational,
    #[serde(with = "crate::exactpoly::qserde")]
    pub a_cas: Rational,
}

impl TopParams {
    pub fn new(m: Rational, a_cas: Rational) -> Result<Self, LagrangeError> {
        if (&m + int(1)).is_zero() {
            return Err(LagrangeError::DegenerateInertia);
        }
        Ok(TopParams { m, a_cas })
    }

    pub fn alpha(&self) -> Rational {
        -(&self.a_cas * int(2))
    }

    fn j3(&self) -> Rational {
        &self.m + int(1)
    }

    /// `Omega = J^{-1} M`.
    pub fn omega(&self) -> [PhasePoly; 3] {
        let inv = self.j3().recip();
        [MultiPoly::var("M1"), MultiPoly::var("M2"), MultiPoly::var("M3").scale(&inv)]
    }
}

fn cross(a: &[PhasePoly; 3], b: &[PhasePoly; 3]) -> [PhasePoly; 3] {
    [&(&a[1] * &b[2]) - &(&a[2] * &b[1]), &(&a[2] * &b[0]) - &(&a[0] * &b[2]), &(&a[0] * &b[1]) - &(&a[1] * &b[0])]
}

fn dot(a: &[PhasePoly; 3], b: &[PhasePoly; 3]) -> PhasePoly {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

fn diff(f: &PhasePoly, v: &str) -> PhasePoly {
    f.with_vars(&[v]).partial_derivative(v).expect("variable was added").trimmed()
}

fn grad(f: &PhasePoly, vars: [&str; 3]) -> [PhasePoly; 3] {
    vars.map(|v| diff(f, v))
}

fn gamma() -> [PhasePoly; 3] {
    GAMMA.map(MultiPoly::var)
}

fn momentum() -> [PhasePoly; 3] {
    MOMENTUM.map(MultiPoly::var)
}

pub fn lie_poisson_bracket(f: &PhasePoly, g: &PhasePoly) -> PhasePoly {
    let (fg, fm) = (grad(f, GAMMA), grad(f, MOMENTUM));
    let (gg, gm) = (grad(g, GAMMA), grad(g, MOMENTUM));
    let (ga, m) = (gamma(), momentum());
    -&(&(&dot(&ga, &cross(&fm, &gg)) + &dot(&ga, &cross(&fg, &gm))) + &dot(&m, &cross(&fm, &gm)))
}

/// `C1 = <Gamma, Gamma>`, `C2 = <Gamma, M>`.
pub fn casimirs() -> (PhasePoly, PhasePoly) {
    (dot(&gamma(), &gamma()), dot(&gamma(), &momentum()))
}

/// `(H1, H2, H3, H4)` written in `(Gamma, M)`.
pub fn first_integrals(params: &TopParams) -> (PhasePoly, PhasePoly, PhasePoly, PhasePoly) {
    let (c1, c2) = casimirs();
    let om = params.omega();
    let h3 = &(&dot(&momentum(), &om) * &MultiPoly::constant(rat(1, 2))) - &MultiPoly::var("G3");
    (c1, c2, h3, om[2].clone())
}

/// `(Gamma x Omega, M x Omega + Gamma x chi)` as six polynomials.
pub fn euler_poisson_field(params: &TopParams) -> [PhasePoly; 6] {
    let om = params.omega();
    let chi = [MultiPoly::zero(), MultiPoly::zero(), MultiPoly::int(-1)];
    let gd = cross(&gamma(), &om);
    let mc = cross(&momentum(), &om);
    let gc = cross(&gamma(), &chi);
    [gd[0].clone(), gd[1].clone(), gd[2].clone(), &mc[0] + &gc[0], &mc[1] + &gc[1], &mc[2] + &gc[2]]
}

/// Derivative of `f` along the Euler-Poisson field.
pub fn lie_derivative(f: &PhasePoly, params: &TopParams) -> PhasePoly {
    let field = euler_poisson_field(params);
    GAMMA.iter().chain(MOMENTUM.iter()).zip(field.iter()).fold(MultiPoly::zero(), |acc, (v, x)| {
        &acc + &(&diff(f, v) * x)
    })
}

/// A point `(Gamma, Omega)` of the complexified phase space.
#[derive(Clone, Debug, PartialEq)]
pub struct PhasePointNumeric {
    pub gamma: [Complex64; 3],
    pub omega: [Complex64; 3],
}

impl PhasePointNumeric {
    pub fn momentum(&self, params: &TopParams) -> [Complex64; 3] {
        let j3 = rational_to_f64(&params.j3());
        [self.omega[0], self.omega[1], self.omega[2] * j3]
    }

    /// Assignment for evaluating a `PhasePoly`.
    pub fn assignment(&self, params: &TopParams) -> Vec<(&'static str, Complex64)> {
        let m = self.momentum(params);
        GAMMA.iter().copied().zip(self.gamma).chain(MOMENTUM.iter().copied().zip(m)).collect()
    }
}

impl Serialize for PhasePointNumeric {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.gamma.iter().chain(&self.omega).map(|z| [z.re, z.im]).collect();
        #[derive(Serialize)]
        struct Out {
            gamma: [[f64; 2]; 3],
            omega: [[f64; 2]; 3],
        }
        Out { gamma: [pairs[0], pairs[1], pairs[2]], omega: [pairs[3], pairs[4], pairs[5]] }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PhasePointNumeric {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct In {
            gamma: [[f64; 2]; 3],
            omega: [[f64; 2]; 3],
        }
        let i = In::deserialize(d)?;
        let c = |p: [f64; 2]| Complex64::new(p[0], p[1]);
        Ok(PhasePointNumeric { gamma: i.gamma.map(c), omega: i.omega.map(c) })
    }
}

fn ccross(a: &[Complex64; 3], b: &[Complex64; 3]) -> [Complex64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Tangent vector `(Gamma', M')` of the Euler-Poisson equations at `p`.
pub fn euler_poisson_rhs(p: &PhasePointNumeric, params: &TopParams) -> [Complex64; 6] {
    let chi = [Complex64::zero(), Complex64::zero(), Complex64::new(-1.0, 0.0)];
    let gd = ccross(&p.gamma, &p.omega);
    let mc = ccross(&p.momentum(params), &p.omega);
    let gc = ccross(&p.gamma, &chi);
    [gd[0], gd[1], gd[2], mc[0] + gc[0], mc[1] + gc[1], mc[2] + gc[2]]
}

/// `tau(h3, h4) = (2(1+m) h4, 2 h3 + (1+m) m h4^2)`.
pub fn tau_transform(h3: &Rational, h4: &Rational, m: &Rational) -> (Rational, Rational) {
    let j3 = m + int(1);
    let a1 = &j3 * h4 * int(2);
    let a2 = h3 * int(2) + &j3 * m * h4 * h4;
    (a1, a2)
}

const G2_TEXT: &str = "1 + a2^2/12 - alpha/4*a1";
const G3_TEXT: &str = "a2^3/216 + a1^2/16 - alpha/48*a1*a2 - a2/6 + alpha^2/16";

/// `g2`, `g3` as polynomials in `a1, a2`.
pub fn g2_g3_polys(alpha: &Rational) -> (MultiPoly, MultiPoly) {
    let c = [("alpha", alpha.clone())];
    (parse_with(G2_TEXT, &c).expect("g2 text"), parse_with(G3_TEXT, &c).expect("g3 text"))
}

pub fn g2_g3(a1: &Rational, a2: &Rational, alpha: &Rational) -> (Rational, Rational) {
    let (g2, g3) = g2_g3_polys(alpha);
    let at = [("a1", a1.clone()), ("a2", a2.clone())];
    (g2.evaluate(&at).expect("a1, a2 given"), g3.evaluate(&at).expect("a1, a2 given"))
}

/// `Phi = A0^2 (A0^2 + A2^2/12 - alpha/4 A0 A1)` and
/// `Psi = A0^3 (A2^3/216 + A0 A1^2/16 - alpha/48 A0 A1 A2 - A0^2 A2/6 + alpha^2/16 A0^3)`.
pub fn build_global_sections(alpha: &Rational) -> Result<WeierstrassFibration, LagrangeError> {
    let c = [("alpha", alpha.clone())];
    let phi = parse_with("A0^2*(A0^2 + A2^2/12 - alpha/4*A0*A1)", &c).expect("Phi text");
    let psi = parse_with("A0^3*(A2^3/216 + A0*A1^2/16 - alpha/48*A0*A1*A2 - A0^2*A2/6 + alpha^2/16*A0^3)", &c)
        .expect("Psi text");
    let params = FibrationParams { alpha: Some(alpha.clone()), m: None };
    Ok(WeierstrassFibration::new(phi, psi, params)?)
}

/// A complex point with `H1 = 1`, `H2 = a_cas`, `H3 = h3`, `H4 = h4`.
///
/// `Gamma3` and a complex angle put `Gamma` on the unit sphere; `Omega3 = h4`;
/// then `Omega1, Omega2` solve one linear and one quadratic equation:
/// `Omega_12 = (c / r^2) Gamma_12 + t J Gamma_12` with `J` the quarter turn.
pub fn sample_fiber_point(
    h3: &Rational,
    h4: &Rational,
    params: &TopParams,
    rng: &mut ChaCha8Rng,
) -> Result<PhasePointNumeric, LagrangeError> {
    let (h3, h4) = (rational_to_f64(h3), rational_to_f64(h4));
    let a = rational_to_f64(&params.a_cas);
    let j3 = rational_to_f64(&params.j3());
    for _ in 0..MAX_DRAWS {
        let g3 = Complex64::new(rng.gen_range(-0.9..0.9), rng.gen_range(-0.3..0.3));
        let theta = Complex64::new(rng.gen_range(0.0..std::f64::consts::TAU), rng.gen_range(-0.5..0.5));
        let r2 = Complex64::one() - g3 * g3;
        if r2.norm() < 1e-3 {
            continue;
        }
        let r = r2.sqrt();
        let (g1, g2) = (r * theta.cos(), r * theta.sin());
        let c = Complex64::new(a, 0.0) - g3 * (j3 * h4);
        let q = Complex64::new(2.0 * h3 - j3 * h4 * h4, 0.0) + g3 * 2.0;
        let t = ((q - c * c / r2) / r2).sqrt();
        let (o1, o2) = (c / r2 * g1 - t * g2, c / r2 * g2 + t * g1);
        if !(o1.is_finite() && o2.is_finite()) {
            continue;
        }
        return Ok(PhasePointNumeric { gamma: [g1, g2, g3], omega: [o1, o2, Complex64::new(h4, 0.0)] });
    }
    Err(LagrangeError::DegenerateDraw(MAX_DRAWS))
}

/// Seeded convenience wrapper around [`sample_fiber_point`].
pub fn sample_fiber_points(
    h3: &Rational,
    h4: &Rational,
    params: &TopParams,
    seed: u64,
    n: usize,
) -> Result<Vec<PhasePointNumeric>, LagrangeError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| sample_fiber_point(h3, h4, params, &mut rng)).collect()
}

/// `|H1 - 1|, |H2 - a|, |H3 - h3|, |H4 - h4|`.
pub fn integral_residuals(p: &PhasePointNumeric, h3: &Rational, h4: &Rational, params: &TopParams) -> [f64; 4] {
    let (i1, i2, i3, i4) = first_integrals(params);
    let at = p.assignment(params);
    let ev = |f: &PhasePoly| f.evaluate_complex(&at).expect("all phase variables assigned");
    [
        (ev(&i1) - 1.0).norm(),
        (ev(&i2) - rational_to_f64(&params.a_cas)).norm(),
        (ev(&i3) - rational_to_f64(h3)).norm(),
        (ev(&i4) - rational_to_f64(h4)).norm(),
    ]
}

/// `(x, y) = (-Gamma3/2, -(Gamma1 Omega2 - Gamma2 Omega1)/2)`.
pub fn quotient_map(p: &PhasePointNumeric) -> (Complex64, Complex64) {
    let x = -p.gamma[2] / 2.0;
    let y = -(p.gamma[0] * p.omega[1] - p.gamma[1] * p.omega[0]) / 2.0;
    (x, y)
}

/// `y^2` minus the cubic in `x` at the image of `p`.
pub fn quotient_cubic_residual(p: &PhasePointNumeric, h3: &Rational, h4: &Rational, params: &TopParams) -> Complex64 {
    let (x, y) = quotient_map(p);
    let (h3, h4) = (rational_to_f64(h3), rational_to_f64(h4));
    let (m, a) = (rational_to_f64(&params.m), rational_to_f64(&params.a_cas));
    let j3 = 1.0 + m;
    let cubic = x * x * x * 4.0 - x * x * (2.0 * h3 + j3 * m * h4 * h4) - x * (1.0 + j3 * a * h4)
        + (2.0 * h3 - j3 * h4 * h4 - a * a) / 4.0;
    y * y - cubic
}

/// Residual of `y^2 = 4X^3 - g2 X - g3` with `X = x - a2/12`,
/// `(a1, a2) = tau(h3, h4)` and `alpha = -2 a_cas`.
pub fn shifted_weierstrass_residual(p: &PhasePointNumeric, h3: &Rational, h4: &Rational, params: &TopParams) -> Complex64 {
    let (x, y) = quotient_map(p);
    let (a1, a2) = tau_transform(h3, h4, &params.m);
    let (g2, g3) = g2_g3(&a1, &a2, &params.alpha());
    let xx = x - rational_to_f64(&a2) / 12.0;
    y * y - (xx * xx * xx * 4.0 - xx * rational_to_f64(&g2) - rational_to_f64(&g3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse;
    use crate::planecurve::AffineChart;
    use proptest::prelude::{prop_assert, prop_assert_eq, proptest, ProptestConfig, Strategy};

    fn params(m: Rational) -> TopParams {
        TopParams::new(m, rat(3, 7)).unwrap()
    }

    #[test]
    fn integrals_in_momentum_coordinates() {
        let (h1, h2, h3, h4) = first_integrals(&params(rat(1, 2)));
        assert_eq!(h1, parse("G1^2 + G2^2 + G3^2").unwrap());
        assert_eq!(h2, parse("G1*M1 + G2*M2 + G3*M3").unwrap());
        // (1 + m) Omega3^2 = M3^2 / (1 + m)
        assert_eq!(h3, parse("(M1^2 + M2^2)/2 + M3^2/3 - G3").unwrap());
        assert_eq!(h4, parse("2*M3/3").unwrap());
        assert_eq!(first_integrals(&params(int(0))).3, parse("M3").unwrap());
        assert_eq!(TopParams::new(int(-1), int(0)), Err(LagrangeError::DegenerateInertia));
    }

    #[test]
    fn integrals_are_in_involution() {
        for m in [int(0), rat(1, 2), int(3)] {
            let p = params(m);
            let (h1, h2, h3, h4) = first_integrals(&p);
            let hs = [h1, h2, h3, h4];
            for i in 0..4 {
                for j in i + 1..4 {
                    assert!(lie_poisson_bracket(&hs[i], &hs[j]).is_zero(), "H{} H{}", i + 1, j + 1);
                }
                assert!(lie_derivative(&hs[i], &p).is_zero(), "H{}", i + 1);
            }
        }
    }

    #[test]
    fn bracket_generates_the_euler_poisson_field() {
        // F' = {F, H3} for each coordinate function
        let p = params(rat(1, 2));
        let h3 = first_integrals(&p).2;
        let field = euler_poisson_field(&p);
        for (v, x) in GAMMA.iter().chain(MOMENTUM.iter()).zip(field.iter()) {
            assert_eq!(&lie_poisson_bracket(&MultiPoly::var(v), &h3), x, "{v}");
        }
    }

    #[test]
    fn rhs_examples() {
        let p = params(rat(1, 2));
        let e3 = [Complex64::zero(), Complex64::zero(), Complex64::one()];
        let up = PhasePointNumeric { gamma: e3, omega: e3 };
        assert!(euler_poisson_rhs(&up, &p).iter().all(|z| z.norm() == 0.0));
        let e1 = [Complex64::one(), Complex64::zero(), Complex64::zero()];
        let rest = PhasePointNumeric { gamma: e1, omega: [Complex64::zero(); 3] };
        let v = euler_poisson_rhs(&rest, &p);
        assert_eq!(v, [0.0, 0.0, 0.0, 0.0, 1.0, 0.0].map(|x| Complex64::new(x, 0.0)));
    }

    #[test]
    fn rhs_agrees_with_symbolic_field_and_conserves_h3() {
        let p = params(rat(1, 2));
        let field = euler_poisson_field(&p);
        let h3 = first_integrals(&p).2;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let mut c = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let pt = PhasePointNumeric { gamma: [c(), c(), c()], omega: [c(), c(), c()] };
            let at = pt.assignment(&p);
            let v = euler_poisson_rhs(&pt, &p);
            for (x, f) in v.iter().zip(field.iter()) {
                assert!((x - f.evaluate_complex(&at).unwrap()).norm() < 1e-12);
            }
            // central difference of H3 along the field
            let eps = 1e-6;
            let shifted = |s: f64| {
                let m = pt.momentum(&p);
                let mut at = Vec::new();
                for i in 0..3 {
                    at.push((GAMMA[i], pt.gamma[i] + v[i] * s));
                    at.push((MOMENTUM[i], m[i] + v[3 + i] * s));
                }
                h3.evaluate_complex(&at).unwrap()
            };
            let d = (shifted(eps) - shifted(-eps)) / (2.0 * eps);
            assert!(d.norm() < 1e-8, "{d}");
        }
    }

    #[test]
    fn tau_and_g_examples() {
        assert_eq!(tau_transform(&int(1), &int(1), &int(0)), (int(2), int(2)));
        assert_eq!(tau_transform(&int(0), &int(0), &rat(1, 2)), (int(0), int(0)));
        assert_eq!(tau_transform(&int(1), &int(2), &rat(1, 2)), (int(6), int(5)));
        assert_eq!(g2_g3(&int(0), &int(0), &int(1)), (int(1), rat(1, 16)));
        assert_eq!(g2_g3(&int(1), &int(2), &int(2)), (rat(5, 6), rat(-29, 432)));
    }

    #[test]
    fn sections() {
        let alpha = rat(3, 2);
        let f = build_global_sections(&alpha).unwrap();
        let at = |x: i64, y: i64, z: i64| [("A0", int(x)), ("A1", int(y)), ("A2", int(z))];
        assert_eq!(f.a.evaluate(&at(1, 0, 0)).unwrap(), int(1));
        assert_eq!(f.b.evaluate(&at(1, 0, 0)).unwrap(), &alpha * &alpha / int(16));
        assert!(f.a.evaluate(&at(0, 3, -2)).unwrap().is_zero());
        assert!(f.b.evaluate(&at(0, 3, -2)).unwrap().is_zero());
        let a0 = parse("A0").unwrap();
        let (k, phit) = f.a.extract_power(&a0).unwrap();
        assert_eq!(k, crate::exactpoly::Order::Finite(2));
        assert_eq!(phit, parse_with("A0^2 + A2^2/12 - alpha/4*A0*A1", &[("alpha", alpha.clone())]).unwrap());
        assert_eq!(f.b.extract_power(&a0).unwrap().0, crate::exactpoly::Order::Finite(3));
        // the U0 restrictions are g2 and g3
        let u0 = AffineChart::standard(0);
        let (g2, g3) = g2_g3_polys(&alpha);
        assert_eq!(u0.dehomogenize(&f.a), g2);
        assert_eq!(u0.dehomogenize(&f.b), g3);
    }

    #[test]
    fn sampler_is_deterministic_and_respects_h4_zero() {
        let p = params(rat(1, 2));
        let a = sample_fiber_points(&int(1), &int(0), &p, 11, 5).unwrap();
        let b = sample_fiber_points(&int(1), &int(0), &p, 11, 5).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|pt| pt.omega[2] == Complex64::zero()));
        let js = serde_json::to_string(&a[0]).unwrap();
        assert_eq!(serde_json::from_str::<PhasePointNumeric>(&js).unwrap(), a[0]);
    }

    #[test]
    fn samples_lie_on_the_level_set_and_the_cubic() {
        let sets = [(rat(1, 3), rat(2, 5), rat(-1, 4)), (rat(-2, 3), rat(1, 2), rat(3, 5)), (int(2), rat(-3, 4), rat(1, 7))];
        for (i, (h3, h4, a)) in sets.iter().enumerate() {
            let p = TopParams::new(rat(1, 2), a.clone()).unwrap();
            for pt in sample_fiber_points(h3, h4, &p, 100 + i as u64, 100).unwrap() {
                assert!(integral_residuals(&pt, h3, h4, &p).iter().all(|r| *r < 1e-10));
                assert!(quotient_cubic_residual(&pt, h3, h4, &p).norm() < 1e-9);
                assert!(shifted_weierstrass_residual(&pt, h3, h4, &p).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn upright_equilibrium_is_on_the_cubic() {
        // Gamma = e3, Omega = h4 e3 fixes H1 = 1, H2 = (1+m) h4, H3 = (1+m) h4^2/2 - 1
        let m = rat(1, 2);
        let h4 = rat(2, 3);
        let a = (&m + int(1)) * &h4;
        let h3 = (&m + int(1)) * &h4 * &h4 / int(2) - int(1);
        let p = TopParams::new(m, a).unwrap();
        let e3 = [Complex64::zero(), Complex64::zero(), Complex64::one()];
        let pt = PhasePointNumeric { gamma: e3, omega: [Complex64::zero(), Complex64::zero(), Complex64::new(rational_to_f64(&h4), 0.0)] };
        assert!(integral_residuals(&pt, &h3, &h4, &p).iter().all(|r| *r < 1e-12));
        assert!(quotient_cubic_residual(&pt, &h3, &h4, &p).norm() < 1e-12);
    }

    fn small_phase_poly() -> impl Strategy<Value = PhasePoly> {
        let vars = ["G1", "G2", "G3", "M1", "M2", "M3"];
        proptest::collection::vec((-3i64..=3, 0usize..6, 0usize..6, 0u32..3), 1..4).prop_map(move |ts| {
            ts.into_iter().fold(MultiPoly::zero(), |acc, (c, i, j, e)| {
                &acc + &MultiPoly::term(int(c), &[(vars[i], e), (vars[j], 1)])
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn bracket_is_antisymmetric_leibniz_and_casimir(f in small_phase_poly(), g in small_phase_poly(), h in small_phase_poly()) {
            let fg = lie_poisson_bracket(&f, &g);
            prop_assert_eq!(&fg, &-lie_poisson_bracket(&g, &f));
            prop_assert!(lie_poisson_bracket(&f, &f).is_zero());
            let lhs = lie_poisson_bracket(&f, &(&g * &h));
            let rhs = &(&lie_poisson_bracket(&f, &g) * &h) + &(&g * &lie_poisson_bracket(&f, &h));
            prop_assert_eq!(lhs, rhs);
            let (c1, c2) = casimirs();
            prop_assert!(lie_poisson_bracket(&c1, &f).is_zero());
            prop_assert!(lie_poisson_bracket(&c2, &f).is_zero());
        }
    }
}
