//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fibrant::blowup::{cusp_model, resolve_local, DEFAULT_BUDGET};
use fibrant::exactpoly::{int, parse, rat, resultant, sylvester_matrix, MultiPoly, Order, Rational, UniPoly};
use fibrant::lagrange::{
    build_global_sections, first_integrals, lie_derivative, lie_poisson_bracket, quotient_cubic_residual, sample_fiber_points,
    shifted_weierstrass_residual, TopParams,
};
use fibrant::miranda::{analyze_lagrange_family, collide, ClassificationReport, MirandaRow};
use fibrant::monodromy::{cusp_normal_form, normalize_pair, solve_cusp_relation, solve_node_relation, SL2ZMatrix};
use fibrant::planecurve::{intersection_multiplicity, rational_singular_points, AffineChart, PointLocation, SingularityKind};
use fibrant::weierstrass::{
    discriminant, kodaira_classify, reduce_triple_mod, total_space_singularities, BaseLocus, KodairaType, OrderTriple,
    WeierstrassError,
};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Check {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn quintic(alpha: i64) -> Result<(Order, MultiPoly), String> {
    let fib = build_global_sections(&int(alpha)).map_err(|e| e.to_string())?;
    let d = discriminant(&fib).map_err(|e| e.to_string())?;
    d.extract_power(&parse("A0").unwrap()).map_err(|e| e.to_string())
}

/// Determinant by fraction-based Gaussian elimination.
fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut d = int(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| m[r][c] != int(0)) else { return int(0) };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        let pivot = m[c][c].clone();
        d *= pivot.clone();
        let (top, rest) = m.split_at_mut(c + 1);
        let prow = &top[c];
        for row in rest {
            let f = &row[c] / &pivot;
            for (x, p) in row.iter_mut().zip(prow).skip(c) {
                *x -= &f * p;
            }
        }
    }
    d
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let expected = parse("-(1/64)*A1^2*A2^3").unwrap();
    for alpha in [1, 2, 3] {
        let (k, q) = quintic(alpha)?;
        ensure(k == Order::Finite(7), || format!("alpha = {alpha}: A0 multiplicity {k}"))?;
        ensure(q.total_degree() == Some(5), || format!("alpha = {alpha}: remainder degree {:?}", q.total_degree()))?;
        let on_line = q.substitute_values(&[("A0", int(0))]);
        ensure((&on_line - &expected).is_zero(), || format!("alpha = {alpha}: restriction {on_line}"))?;
    }
    within(start, Duration::from_secs(1))
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let (_, q) = quintic(1)?;
    let chart = AffineChart::standard(0);
    let s = rational_singular_points(&chart.dehomogenize(&q), &chart).map_err(|e| e.to_string())?;
    let pts = s.rational_points();
    ensure(pts == vec![(int(-1), rat(-7, 4)), (int(1), rat(9, 4))], || format!("rational singular points {pts:?}"))?;
    for p in &s.points {
        if let PointLocation::Rational { .. } = p.point {
            ensure(p.classification == Some(SingularityKind::Node), || format!("{:?}", p.classification))?;
            let det = p.node_determinant.clone().unwrap_or_default();
            ensure(det != int(0), || "node determinant vanishes".into())?;
        }
    }
    ensure(s.clusters.len() == 1, || format!("{} eliminant clusters", s.clusters.len()))?;
    let paper = parse("3*a2^4 - a2^3 + 72*a2^2 - 108*a2 + 27*17").unwrap();
    let quartic = UniPoly::from_multi(&paper, "a2").unwrap();
    let got = UniPoly::from_multi(&s.clusters[0].eliminant, "a2").map_err(|e| e.to_string())?;
    ensure(got.associated(&quartic), || format!("eliminant {}", s.clusters[0].eliminant))?;
    ensure(got.is_squarefree(), || "eliminant not squarefree".into())?;

    let df = paper.partial_derivative("a2").unwrap();
    let r = resultant(&paper, &df, "a2").map_err(|e| e.to_string())?.constant_value().unwrap_or_default();
    let m: Vec<Vec<Rational>> = sylvester_matrix(&paper, &df, "a2")
        .into_iter()
        .map(|row| row.into_iter().map(|e| e.constant_value().unwrap_or_default()).collect())
        .collect();
    let oracle = det(m);
    ensure(r == oracle, || format!("resultant {r} but Sylvester determinant {oracle}"))?;
    let abs = if r < int(0) { -r } else { r };
    ensure(abs == int(979113612375), || format!("|resultant| = {abs}"))?;
    within(start, Duration::from_secs(5))
}

fn criterion_3() -> Check {
    let (_, q) = quintic(1)?;
    let line = parse("A0").unwrap();
    let origin = (int(0), int(0));
    let mut got = Vec::new();
    for (i, name) in [(1, "(0:1:0)"), (2, "(0:0:1)")] {
        let c = AffineChart::standard(i);
        let m = intersection_multiplicity(&c.dehomogenize(&q), &c.dehomogenize(&line), &c, &origin).map_err(|e| e.to_string())?;
        got.push((name, m));
    }
    ensure(got.iter().all(|(_, m)| *m == 2), || {
        let list: Vec<String> = got.iter().map(|(n, m)| format!("{n}: {m}")).collect();
        format!("expected 2 at both points, computed {}", list.join(", "))
    })
}

fn criterion_4() -> Check {
    let fib = build_global_sections(&int(1)).map_err(|e| e.to_string())?;
    let sing = total_space_singularities(&fib).map_err(|e| e.to_string())?;
    let curves: Vec<_> = sing.iter().filter(|s| matches!(&s.base, BaseLocus::Curve { .. })).collect();
    let mut xs: Vec<Rational> = sing
        .iter()
        .filter(|s| matches!(&s.base, BaseLocus::Point { .. }))
        .map(|s| s.fiber.clone().map(|f| f[0].clone()).unwrap_or_default())
        .collect();
    xs.sort();
    ensure(xs == vec![rat(-17, 48), rat(5, 16)], || format!("isolated x-coordinates {xs:?}"))?;
    ensure(curves.len() == 1, || format!("{} curve markers", curves.len()))?;
    match &curves[0].base {
        BaseLocus::Curve { equation } => ensure(*equation == parse("A0").unwrap(), || format!("curve {equation}")),
        _ => unreachable!(),
    }
}

fn criterion_5() -> Check {
    let m = resolve_local(cusp_model("cusp", Some(("Q~", KodairaType::I(1)))), DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let leaf = |c: &str| m.leaf("cusp", c).ok_or_else(|| format!("no chart {c}"));
    let abb = leaf("ABB")?;
    let want = parse("s1_ABB^2*s2_ABB^6*(s1_ABB - 27)").unwrap();
    ensure((&abb.delta - &want).is_zero(), || format!("ABB: {}", abb.delta))?;
    let aba = leaf("ABA")?;
    let want = parse("s1_ABA^6*s2_ABA^3*(1 - 27*s2_ABA)").unwrap();
    ensure((&aba.delta - &want).is_zero(), || format!("ABA: {}", aba.delta))?;
    let got: Vec<_> = m.divisors.iter().map(|d| (d.triple, d.kodaira)).collect();
    let want = vec![
        (OrderTriple::finite(1, 1, 2), KodairaType::II),
        (OrderTriple::finite(1, 2, 3), KodairaType::III),
        (OrderTriple::finite(2, 3, 6), KodairaType::IStar(0)),
    ];
    ensure(got == want, || format!("divisors {got:?}"))
}

fn inventory(r: &ClassificationReport) -> Check {
    let kind = |o: &str, n: &str| r.divisor(o, n).map(|d| d.kodaira.to_string()).unwrap_or_default();
    let mut expect = vec![
        ("quintic".to_string(), "Q~", "I1"),
        ("A0 = 0".into(), "L~", "I1*"),
        ("(0:1:0)".into(), "E1", "IV*"),
        ("(0:1:0)".into(), "E2", "IV"),
        ("(0:0:1)".into(), "E1", "I2*"),
        ("(0:0:1)".into(), "E2", "I4"),
    ];
    for i in 1..=4 {
        for (n, k) in [("E1", "II"), ("E2", "III"), ("E3", "I0*")] {
            expect.push((format!("cusp p{i}"), n, k));
        }
    }
    for (o, n, k) in &expect {
        ensure(kind(o, n) == *k, || format!("{n} at {o}: {:?}, expected {k}", kind(o, n)))?;
    }
    // every other divisor is an I0 curve over which nothing degenerates
    let extra: Vec<_> = r
        .divisors
        .iter()
        .filter(|d| !expect.iter().any(|(o, n, _)| *o == d.origin && *n == d.name))
        .filter(|d| d.kodaira != KodairaType::I(0))
        .map(|d| format!("{} at {}", d.name, d.origin))
        .collect();
    ensure(extra.is_empty(), || format!("unexpected divisors {extra:?}"))?;

    let mut cols: Vec<(String, Vec<u32>)> = r
        .collisions
        .iter()
        .map(|c| {
            let mut m = c.dual_graph.multiplicities.clone();
            m.sort();
            (c.label.to_string(), m)
        })
        .collect();
    cols.sort();
    let mut want: Vec<(String, Vec<u32>)> = Vec::new();
    for _ in 0..4 {
        want.push(("IV*".into(), vec![1, 2, 3]));
        want.push(("III*".into(), vec![1, 1, 2, 2, 3]));
        want.push(("I0*".into(), vec![1, 1, 2]));
    }
    want.push(("I4*".into(), vec![1, 1, 1, 1, 2, 2, 2, 2, 2]));
    want.push(("I5".into(), vec![1; 5]));
    want.push(("I3*".into(), vec![1, 1, 1, 1, 2, 2, 2, 2]));
    want.push(("I2".into(), vec![1, 1]));
    want.push(("I2".into(), vec![1, 1]));
    want.sort();
    ensure(cols == want, || format!("collisions {cols:?}"))
}

fn criterion_6() -> Check {
    let start = Instant::now();
    let text = fibrant_cli::run_from(["fibrant", "analyze", "--alpha", "1"]).map_err(|e| e.to_string())?;
    let r: ClassificationReport = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    inventory(&r)?;
    let base = r.structure();
    for alpha in [2, 3, 5] {
        let other = analyze_lagrange_family(&int(alpha)).map_err(|e| e.to_string())?;
        ensure(other.structure() == base, || format!("alpha = {alpha}: structure differs"))?;
    }
    within(start, Duration::from_secs(60))
}

fn criterion_7() -> Check {
    use KodairaType::*;
    let table = [I(0), I(3), II, III, IV, IStar(0), IStar(2), IVStar, IIIStar, IIStar];
    for k in table {
        let t = k.representative_triple();
        ensure(kodaira_classify(&t) == Ok(k), || format!("{k}: {t} classifies as {:?}", kodaira_classify(&t)))?;
        let back: KodairaType = k.to_string().parse().map_err(|e: WeierstrassError| e.to_string())?;
        ensure(back == k, || format!("{k} prints and parses as {back}"))?;
    }
    // the eleventh row: not minimal
    let t = OrderTriple::finite(4, 6, 12);
    ensure(matches!(kodaira_classify(&t), Err(WeierstrassError::NeedsNormalization(_))), || "(4,6,12) accepted".into())?;
    let t = OrderTriple::finite(3, 4, 8);
    ensure(kodaira_classify(&t) == Ok(IVStar), || "(3,4,8) is not IV*".into())?;
    let sum = OrderTriple::finite(7, 10, 20);
    ensure(reduce_triple_mod(&sum) == t, || format!("(7,10,20) reduces to {}", reduce_triple_mod(&sum)))?;
    for row in MirandaRow::ALL {
        let (a, b) = row.example();
        let f = collide(a, b).map_err(|e| e.to_string())?;
        ensure(f.row == Some(row), || format!("{a} + {b} gives row {:?}, expected {row}", f.row))?;
        let g = collide(b, a).map_err(|e| e.to_string())?;
        ensure(g == f, || format!("{a} + {b} is not symmetric"))?;
    }
    Ok(())
}

fn criterion_8() -> Check {
    let start = Instant::now();
    for m in [int(0), rat(1, 2), int(3)] {
        let params = TopParams::new(m.clone(), rat(1, 3)).map_err(|e| e.to_string())?;
        let (h1, h2, h3, h4) = first_integrals(&params);
        let hs = [h1, h2, h3, h4];
        for i in 0..4 {
            for j in i + 1..4 {
                let b = lie_poisson_bracket(&hs[i], &hs[j]);
                ensure(b.is_zero(), || format!("m = {m}: {{H{}, H{}}} = {b}", i + 1, j + 1))?;
            }
            let d = lie_derivative(&hs[i], &params);
            ensure(d.is_zero(), || format!("m = {m}: dH{}/dt = {d}", i + 1))?;
        }
    }
    within(start, Duration::from_secs(5))
}

fn criterion_9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(20261018);
    let mut draw = |lo: i64, hi: i64| rat(rng.gen_range(lo..=hi), rng.gen_range(1..=7));
    let m = rat(1, 2);
    let mut worst: f64 = 0.0;
    for set in 0..3u64 {
        let (h3, h4, a) = (draw(-9, 9), draw(-9, 9), draw(-9, 9));
        let params = TopParams::new(m.clone(), a.clone()).map_err(|e| e.to_string())?;
        let pts = sample_fiber_points(&h3, &h4, &params, 1000 + set, 100).map_err(|e| e.to_string())?;
        for p in &pts {
            let c = quotient_cubic_residual(p, &h3, &h4, &params).norm();
            let w = shifted_weierstrass_residual(p, &h3, &h4, &params).norm();
            worst = worst.max(c).max(w);
            ensure(c < 1e-9 && w < 1e-9, || format!("h3 = {h3}, h4 = {h4}, a = {a}: residuals {c:e}, {w:e}"))?;
        }
    }
    ensure(worst < 1e-9, || format!("worst residual {worst:e}"))
}

fn criterion_10() -> Check {
    let start = Instant::now();
    let t = SL2ZMatrix::t();
    let b = SL2ZMatrix::new(1, 0, -1, 1).map_err(|e| e.to_string())?;
    ensure(t.mul(&b).mul(&t) == b.mul(&t).mul(&b), || "T B T != B T B".into())?;
    ensure(b == cusp_normal_form(), || "cusp normal form".into())?;
    let normal_forms = |bound: i64| -> Result<Vec<SL2ZMatrix>, String> {
        let mut v = Vec::new();
        for s in solve_cusp_relation(&t, bound, true) {
            let (n, _) = normalize_pair(&s).map_err(|e| e.to_string())?;
            if !v.contains(&n) {
                v.push(n);
            }
        }
        Ok(v)
    };
    for bound in [10, 25] {
        let nodes = solve_node_relation(&t, bound);
        ensure(nodes == vec![t.clone()], || format!("bound {bound}: node solutions {nodes:?}"))?;
        let nf = normal_forms(bound)?;
        ensure(nf == vec![b.clone()], || format!("bound {bound}: cusp normal forms {nf:?}"))?;
    }
    ensure(!solve_cusp_relation(&t, 10, true).is_empty(), || "no cusp solutions".into())?;
    within(start, Duration::from_secs(10))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("discriminant structure", criterion_1),
        ("quintic singularities", criterion_2),
        ("tangency with A0 = 0", criterion_3),
        ("total space singularities", criterion_4),
        ("cusp blow-up tower", criterion_5),
        ("full pipeline", criterion_6),
        ("Kodaira and Miranda tables", criterion_7),
        ("integrable system identities", criterion_8),
        ("quotient cubic sampling", criterion_9),
        ("monodromy", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({ms} ms): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
