//! SL(2,Z) arithmetic and brute-force solutions of the local monodromy
//! relations: `AB = BA` around a node, `ABA = BAB` around a cusp.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::miranda::ClassificationReport;

pub const DEFAULT_BOUND: i64 = 25;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonodromyError {
    #[error("determinant is {0}, not 1")]
    NotUnimodular(BigInt),
    #[error("matrix is not in the braid-solution family of T")]
    NotInFamily,
    #[error("report is incomplete: {0}")]
    IncompleteReport(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SL2ZMatrix {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl SL2ZMatrix {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self, MonodromyError> {
        let m = SL2ZMatrix { a: a.into(), b: b.into(), c: c.into(), d: d.into() };
        let det = &m.a * &m.d - &m.b * &m.c;
        if det.is_one() {
            Ok(m)
        } else {
            Err(MonodromyError::NotUnimodular(det))
        }
    }

    fn raw(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(a, b, c, d).expect("determinant 1 by construction")
    }

    pub fn identity() -> Self {
        Self::raw(1, 0, 0, 1)
    }

    /// `T = [[1,1],[0,1]]`, the I1 monodromy.
    pub fn t() -> Self {
        Self::raw(1, 1, 0, 1)
    }

    pub fn t_pow(k: i64) -> Self {
        Self::raw(1, k, 0, 1)
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn mul(&self, o: &Self) -> Self {
        SL2ZMatrix {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn inv(&self) -> Self {
        SL2ZMatrix { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    pub fn neg(&self) -> Self {
        SL2ZMatrix { a: -&self.a, b: -&self.b, c: -&self.c, d: -&self.d }
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    /// `P M P^-1`
    pub fn conjugate_by(&self, p: &Self) -> Self {
        p.mul(self).mul(&p.inv())
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inv() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Self::identity(), |acc, _| acc.mul(&base))
    }

    fn small(&self) -> Option<[i64; 4]> {
        Some([self.a.to_i64()?, self.b.to_i64()?, self.c.to_i64()?, self.d.to_i64()?])
    }
}

pub fn sl2z_mul(a: &SL2ZMatrix, b: &SL2ZMatrix) -> SL2ZMatrix {
    a.mul(b)
}

pub fn sl2z_inv(a: &SL2ZMatrix) -> SL2ZMatrix {
    a.inv()
}

pub fn sl2z_eq(a: &SL2ZMatrix, b: &SL2ZMatrix) -> bool {
    a == b
}

impl fmt::Display for SL2ZMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl Serialize for SL2ZMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let e = |x: &BigInt| x.to_string();
        [[e(&self.a), e(&self.b)], [e(&self.c), e(&self.d)]].serialize(s)
    }
}

impl<'de> Deserialize<'de> for SL2ZMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [[a, b], [c, e]] = <[[String; 2]; 2]>::deserialize(d)?;
        let p = |s: &str| s.parse::<BigInt>().map_err(serde::de::Error::custom);
        SL2ZMatrix::new(p(&a)?, p(&b)?, p(&c)?, p(&e)?).map_err(serde::de::Error::custom)
    }
}

type M2 = [i64; 4];

fn mul2(x: &M2, y: &M2) -> M2 {
    [x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]]
}

/// Every determinant-1 matrix with entries in `[-bound, bound]`, in
/// lexicographic order of `(a, b, c)`.
fn enumerate_sl2z(bound: i64) -> impl Iterator<Item = M2> {
    let r = -bound..=bound;
    r.clone().flat_map(move |a| {
        let r = -bound..=bound;
        r.clone().flat_map(move |b| {
            (-bound..=bound).flat_map(move |c| {
                let mut out: Vec<M2> = Vec::new();
                if a != 0 {
                    let num = 1 + b * c;
                    if num % a == 0 && (num / a).abs() <= bound {
                        out.push([a, b, c, num / a]);
                    }
                } else if b * c == -1 {
                    out.extend((-bound..=bound).map(|d| [a, b, c, d]));
                }
                out
            })
        })
    })
}

fn isqrt_exact(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = (n as f64).sqrt().round() as i64;
    (r - 1..=r + 1).find(|x| *x >= 0 && x * x == n)
}

/// `P M P^-1 = T` forces `M = [[1+rs, s^2], [-r^2, 1-rs]]` where `(r, s)` is
/// the bottom row of `P`; the top row then ranges over the solutions of
/// `ps - qr = 1`, scanned within the bound.
fn conj_to_t_small(m: &M2, bound: i64) -> bool {
    if m[0] + m[3] != 2 || *m == [1, 0, 0, 1] {
        return false;
    }
    let (Some(r0), Some(s0)) = (isqrt_exact(-m[2]), isqrt_exact(m[1])) else {
        return false;
    };
    for (r, s) in [(r0, s0), (-r0, s0), (r0, -s0), (-r0, -s0)] {
        if r * s != m[0] - 1 || r.abs() > bound || s.abs() > bound {
            continue;
        }
        let found = (-bound..=bound).any(|p| {
            if r == 0 {
                p * s == 1
            } else {
                let num = p * s - 1;
                num % r == 0 && (num / r).abs() <= bound
            }
        });
        if found {
            return true;
        }
    }
    false
}

/// Is there `P` with entries bounded by `bound`, `det P = 1`, `P M P^-1 = T`?
pub fn is_conjugate_to_t(m: &SL2ZMatrix, bound: i64) -> bool {
    match m.small() {
        Some(s) if s.iter().all(|x| x.abs() <= 1 << 20) => conj_to_t_small(&s, bound),
        _ => false,
    }
}

fn solve(a: &SL2ZMatrix, bound: i64, rel: impl Fn(&M2, &M2) -> bool) -> Vec<SL2ZMatrix> {
    let Some(am) = a.small() else {
        return vec![];
    };
    let mut out: Vec<SL2ZMatrix> = enumerate_sl2z(bound)
        .filter(|b| b[0] + b[3] == 2 && *b != [1, 0, 0, 1])
        .filter(|b| rel(&am, b))
        .filter(|b| conj_to_t_small(b, bound))
        .map(|b| SL2ZMatrix::raw(b[0], b[1], b[2], b[3]))
        .collect();
    out.sort();
    out
}

/// All `B` conjugate to `T` (entries bounded) with `AB = BA`.
pub fn solve_node_relation(a: &SL2ZMatrix, bound: i64) -> Vec<SL2ZMatrix> {
    let out = solve(a, bound, |a, b| mul2(a, b) == mul2(b, a));
    debug_assert!(out.iter().all(|b| a.mul(b) == b.mul(a)));
    out
}

/// All `B` conjugate to `T` (entries bounded) with `ABA = BAB`; with
/// `distinct` set, `B = A` is dropped.
pub fn solve_cusp_relation(a: &SL2ZMatrix, bound: i64, distinct: bool) -> Vec<SL2ZMatrix> {
    let am = a.small();
    let mut out = solve(a, bound, |a, b| mul2(&mul2(a, b), a) == mul2(&mul2(b, a), b));
    if distinct {
        out.retain(|b| Some(b) != am.map(|m| SL2ZMatrix::raw(m[0], m[1], m[2], m[3])).as_ref());
    }
    debug_assert!(out.iter().all(|b| a.mul(b).mul(a) == b.mul(a).mul(b)));
    out
}

/// `[[1,0],[-1,1]]`
pub fn cusp_normal_form() -> SL2ZMatrix {
    SL2ZMatrix::raw(1, 0, -1, 1)
}

/// Conjugates `B` by the centralizer element `T^k` of `A = T` so that it
/// becomes `[[1,0],[-1,1]]`. Returns the normal form and `k`.
pub fn normalize_pair(b: &SL2ZMatrix) -> Result<(SL2ZMatrix, BigInt), MonodromyError> {
    // the family is T^k N T^-k = [[1-k, k^2], [-1, 1+k]]
    let k = BigInt::one() - &b.a;
    let kk = k.to_i64().ok_or(MonodromyError::NotInFamily)?;
    let n = b.conjugate_by(&SL2ZMatrix::t_pow(-kk));
    if n == cusp_normal_form() {
        Ok((n, k))
    } else {
        Err(MonodromyError::NotInFamily)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    SheetLoop,
    LocalMeridian,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub kind: GeneratorKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RelationKind {
    Node,
    Cusp,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub kind: RelationKind,
    pub center: String,
    pub a: String,
    pub b: String,
}

impl Relation {
    pub fn text(&self) -> String {
        match self.kind {
            RelationKind::Node => format!("{a}{b} = {b}{a}", a = self.a, b = self.b),
            RelationKind::Cusp => format!("{a}{b}{a} = {b}{a}{b}", a = self.a, b = self.b),
        }
    }

    pub fn holds(&self, x: &SL2ZMatrix, y: &SL2ZMatrix) -> bool {
        match self.kind {
            RelationKind::Node => x.mul(y) == y.mul(x),
            RelationKind::Cusp => x.mul(y).mul(x) == y.mul(x).mul(y),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFormCertificate {
    pub bound: i64,
    pub node_solutions: Vec<SL2ZMatrix>,
    pub cusp_solutions: usize,
    pub cusp_normal_form: SL2ZMatrix,
    pub cusp_conjugators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub base_point: String,
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
    pub assignment: BTreeMap<String, SL2ZMatrix>,
    pub certificate: NormalFormCertificate,
}

impl Presentation {
    pub fn validate(&self) -> Result<(), MonodromyError> {
        let known = |n: &str| self.generators.iter().any(|g| g.name == n);
        for r in &self.relations {
            if !known(&r.a) || !known(&r.b) {
                return Err(MonodromyError::IncompleteReport(format!("relation {} uses an unknown generator", r.text())));
            }
            let (x, y) = (&self.assignment[&r.a], &self.assignment[&r.b]);
            if !r.holds(x, y) {
                return Err(MonodromyError::IncompleteReport(format!("assignment violates {}", r.text())));
            }
        }
        Ok(())
    }
}

/// Zariski-van Kampen data for the affine quintic: five sheet loops, one
/// pair of local meridians per node and per cusp, and the monodromy
/// assignment `a -> T`, `b -> T` (node) or `b -> [[1,0],[-1,1]]` (cusp).
pub fn build_presentation(report: &ClassificationReport, bound: i64) -> Result<Presentation, MonodromyError> {
    let q = report
        .quintic
        .as_ref()
        .ok_or_else(|| MonodromyError::IncompleteReport("no quintic singularity counts".into()))?;
    if q.degree == 0 {
        return Err(MonodromyError::IncompleteReport("quintic degree missing".into()));
    }
    let t = SL2ZMatrix::t();
    let mut generators: Vec<Generator> =
        (1..=q.degree).map(|i| Generator { name: format!("g{i}"), kind: GeneratorKind::SheetLoop }).collect();
    let mut relations = Vec::new();
    let mut assignment = BTreeMap::new();
    for i in 1..=q.degree {
        assignment.insert(format!("g{i}"), t.clone());
    }
    let node_solutions = solve_node_relation(&t, bound);
    let cusp_family = solve_cusp_relation(&t, bound, true);
    let mut conjugators = Vec::new();
    for b in &cusp_family {
        let (_, k) = normalize_pair(b)?;
        conjugators.push(format!("T^{k}"));
    }
    for (kind, count, prefix) in [(RelationKind::Node, q.nodes, "n"), (RelationKind::Cusp, q.cusps, "c")] {
        for i in 1..=count {
            let (a, b) = (format!("a_{prefix}{i}"), format!("b_{prefix}{i}"));
            generators.push(Generator { name: a.clone(), kind: GeneratorKind::LocalMeridian });
            generators.push(Generator { name: b.clone(), kind: GeneratorKind::LocalMeridian });
            assignment.insert(a.clone(), t.clone());
            let bm = match kind {
                RelationKind::Node => t.clone(),
                RelationKind::Cusp => cusp_normal_form(),
            };
            assignment.insert(b.clone(), bm);
            relations.push(Relation { kind, center: format!("{prefix}{i}"), a, b });
        }
    }
    let p = Presentation {
        base_point: "generic point of C^2 off Q_aff".into(),
        generators,
        relations,
        assignment,
        certificate: NormalFormCertificate {
            bound,
            node_solutions,
            cusp_solutions: cusp_family.len(),
            cusp_normal_form: cusp_normal_form(),
            cusp_conjugators: conjugators,
        },
    };
    p.validate()?;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> SL2ZMatrix {
        SL2ZMatrix::new(a, b, c, d).unwrap()
    }

    #[test]
    fn arithmetic() {
        let t = SL2ZMatrix::t();
        assert_eq!(t.mul(&t.inv()), SL2ZMatrix::identity());
        assert_eq!(t.mul(&m(1, 0, -1, 1)), m(0, 1, -1, 1));
        assert_eq!(t.inv(), m(1, -1, 0, 1));
        assert!(SL2ZMatrix::new(2, 0, 0, 1).is_err());
    }

    /// Exhaustive search over all bounded `P`; oracle for the closed form.
    fn conj_brute(x: &SL2ZMatrix, bound: i64) -> bool {
        let t = [1, 1, 0, 1];
        let Some(mm) = x.small() else { return false };
        mm[0] + mm[3] == 2 && mm != [1, 0, 0, 1] && enumerate_sl2z(bound).any(|p| mul2(&p, &mm) == mul2(&t, &p))
    }

    #[test]
    fn closed_form_conjugacy_matches_search() {
        for x in enumerate_sl2z(3) {
            let x = m(x[0], x[1], x[2], x[3]);
            for bound in [1, 2, 4] {
                assert_eq!(is_conjugate_to_t(&x, bound), conj_brute(&x, bound), "{x} bound {bound}");
            }
        }
        assert!(!conj_brute(&m(1, -1, 0, 1), 50));
    }

    #[test]
    fn conjugacy_to_t() {
        assert!(is_conjugate_to_t(&m(1, 0, -1, 1), 25));
        assert!(!is_conjugate_to_t(&SL2ZMatrix::identity(), 25));
        assert!(!is_conjugate_to_t(&m(1, -1, 0, 1), 50));
        assert!(is_conjugate_to_t(&SL2ZMatrix::t(), 1));
    }

    #[test]
    fn node_relation() {
        let t = SL2ZMatrix::t();
        assert_eq!(solve_node_relation(&t, 10), vec![t.clone()]);
        assert_eq!(solve_node_relation(&m(1, 0, -1, 1), 10), vec![m(1, 0, -1, 1)]);
        assert_eq!(solve_node_relation(&t, 1), vec![t]);
    }

    #[test]
    fn cusp_relation() {
        let t = SL2ZMatrix::t();
        let sols = solve_cusp_relation(&t, 10, false);
        assert!(sols.contains(&m(1, 0, -1, 1)));
        assert!(sols.contains(&m(2, 1, -1, 0)));
        assert!(sols.contains(&t));
        for b in &sols {
            assert_eq!(t.mul(b).mul(&t), b.mul(&t).mul(b));
            assert!(b == &t || t.mul(b).trace() == BigInt::one());
        }
        let distinct = solve_cusp_relation(&t, 10, true);
        assert_eq!(distinct.len(), sols.len() - 1);
        assert!(!distinct.contains(&t));
    }

    #[test]
    fn normal_forms() {
        assert_eq!(normalize_pair(&m(2, 1, -1, 0)).unwrap().0, cusp_normal_form());
        assert_eq!(normalize_pair(&cusp_normal_form()).unwrap().1, BigInt::from(0));
        let n = cusp_normal_form();
        for k in -5..=5 {
            let b = n.conjugate_by(&SL2ZMatrix::t_pow(k));
            assert_eq!(normalize_pair(&b).unwrap(), (n.clone(), BigInt::from(k)));
        }
        assert!(normalize_pair(&SL2ZMatrix::t()).is_err());
    }

    #[test]
    fn braid_solutions_normalize_and_are_bound_stable() {
        let t = SL2ZMatrix::t();
        let small = solve_cusp_relation(&t, 10, true);
        let large = solve_cusp_relation(&t, 25, true);
        assert!(small.iter().all(|b| large.contains(b)));
        for b in &large {
            assert!(is_conjugate_to_t(b, 25));
            assert_eq!(normalize_pair(b).unwrap().0, cusp_normal_form());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn commuting_solutions_are_just_t(bound in 1i64..=50) {
            prop_assert_eq!(solve_node_relation(&SL2ZMatrix::t(), bound), vec![SL2ZMatrix::t()]);
        }

        #[test]
        fn inverse_and_product(a in -4i64..4, b in -4i64..4, k in -3i64..3) {
            prop_assume!(a != 0);
            let x = SL2ZMatrix::t_pow(k).mul(&m(1, 0, a, 1)).mul(&m(1, b, 0, 1));
            prop_assert_eq!(x.mul(&x.inv()), SL2ZMatrix::identity());
            prop_assert_eq!(x.trace(), x.conjugate_by(&SL2ZMatrix::t_pow(a)).trace());
        }
    }
}
