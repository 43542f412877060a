//! Elimination: Sylvester resultants, pseudo-remainders and gcds.

use super::{MultiPoly, PolyError, UniPoly};

/// Sylvester matrix of `f` and `g` in `v`: `deg g` rows of `f`-coefficients
/// followed by `deg f` rows of `g`-coefficients, highest power first.
pub fn sylvester_matrix(f: &MultiPoly, g: &MultiPoly, v: &str) -> Vec<Vec<MultiPoly>> {
    let fc = f.coefficients_in(v);
    let gc = g.coefficients_in(v);
    let n = fc.len() - 1;
    let m = gc.len() - 1;
    let size = n + m;
    let mut rows = Vec::with_capacity(size);
    for i in 0..m {
        let mut row = vec![MultiPoly::zero(); size];
        for k in 0..=n {
            row[i + k] = fc[n - k].clone();
        }
        rows.push(row);
    }
    for i in 0..n {
        let mut row = vec![MultiPoly::zero(); size];
        for k in 0..=m {
            row[i + k] = gc[m - k].clone();
        }
        rows.push(row);
    }
    rows
}

/// Fraction-free (Bareiss) determinant with row swaps on zero pivots.
pub(crate) fn bareiss_det(mut a: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = a.len();
    if n == 0 {
        return MultiPoly::one();
    }
    let mut prev = MultiPoly::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return MultiPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_divide(&prev).expect("Bareiss quotients are exact");
            }
            a[i][k] = MultiPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Determinant of the Sylvester matrix in `v`. A factor of degree 0 in `v`
/// contributes `c^deg(other)`.
pub fn resultant(f: &MultiPoly, g: &MultiPoly, v: &str) -> Result<MultiPoly, PolyError> {
    if f.is_zero() || g.is_zero() {
        return Err(PolyError::Degenerate("resultant with the zero polynomial".into()));
    }
    let (n, m) = (f.degree_in(v), g.degree_in(v));
    if n == 0 && m == 0 {
        return Err(PolyError::Degenerate(format!("neither polynomial involves `{v}`")));
    }
    let vars: Vec<String> = f.vars().iter().chain(g.vars()).cloned().collect();
    let out = bareiss_det(sylvester_matrix(f, g, v));
    Ok(out.with_vars(&vars))
}

/// `lc(g)^(deg f - deg g + 1) f mod g` in `v`, up to the power of `lc(g)`
/// actually needed. Returns `f` when `deg f < deg g`.
pub fn pseudo_remainder(f: &MultiPoly, g: &MultiPoly, v: &str) -> MultiPoly {
    let dg = g.degree_in(v);
    let lcg = g.leading_coeff_in(v);
    let x = MultiPoly::var(v);
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(v) >= dg {
        let dr = r.degree_in(v);
        let lcr = r.leading_coeff_in(v);
        r = &(&r * &lcg) - &(&(&lcr * &x.pow_u(dr - dg)) * g);
    }
    r
}

/// Content of `p` as a polynomial in `v`: gcd of its coefficients.
fn content_in(p: &MultiPoly, v: &str) -> MultiPoly {
    let mut c = MultiPoly::zero();
    for k in p.coefficients_in(v) {
        if k.is_zero() {
            continue;
        }
        c = gcd(&c, &k);
        if c.is_constant() {
            return MultiPoly::one();
        }
    }
    c
}

fn primitive_part_in(p: &MultiPoly, v: &str) -> MultiPoly {
    let c = content_in(p, v);
    p.exact_divide(&c).expect("content divides")
}

/// Multivariate gcd over Q, normalized so the leading coefficient is 1.
pub fn gcd(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    if f.is_constant() || g.is_constant() {
        return MultiPoly::one().with_vars(&merge(f, g));
    }
    let vars = merge(f, g);
    let (f, g) = (f.with_vars(&vars), g.with_vars(&vars));
    let (mf, f1) = f.split_monomial_content();
    let (mg, g1) = g.split_monomial_content();
    let mono: Vec<(&str, u32)> = vars
        .iter()
        .zip(mf.iter().zip(&mg))
        .filter(|(_, (a, b))| (**a).min(**b) > 0)
        .map(|(v, (a, b))| (v.as_str(), *a.min(b)))
        .collect();
    let mono = MultiPoly::term(num_traits::One::one(), &mono).with_vars(&vars);

    let fv = f1.occurring_vars();
    let gv = g1.occurring_vars();
    let core = if fv.is_empty() || gv.is_empty() {
        MultiPoly::one()
    } else if let Some(v) = fv.iter().find(|v| gv.contains(v)) {
        let univariate = fv.len() == 1 && gv.len() == 1;
        if univariate {
            let a = UniPoly::from_multi(&f1, v).unwrap();
            let b = UniPoly::from_multi(&g1, v).unwrap();
            a.gcd(&b).to_multi(v)
        } else {
            let cf = content_in(&f1, v);
            let cg = content_in(&g1, v);
            let c = gcd(&cf, &cg);
            let pf = f1.exact_divide(&cf).unwrap();
            let pg = g1.exact_divide(&cg).unwrap();
            let h = primitive_prs(&pf, &pg, v);
            &c * &h
        }
    } else {
        // no shared variable: the gcd divides every coefficient of f1 in
        // each variable that g1 lacks
        let v = &fv[0];
        gcd(&content_in(&f1, v), &g1)
    };
    (&mono * &core).with_vars(&vars).monic()
}

fn primitive_prs(f: &MultiPoly, g: &MultiPoly, v: &str) -> MultiPoly {
    let (mut a, mut b) =
        if f.degree_in(v) >= g.degree_in(v) { (f.clone(), g.clone()) } else { (g.clone(), f.clone()) };
    loop {
        if b.degree_in(v) == 0 {
            return MultiPoly::one();
        }
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            return primitive_part_in(&b, v);
        }
        if r.degree_in(v) == 0 {
            return MultiPoly::one();
        }
        a = b;
        b = primitive_part_in(&r, v);
    }
}

fn merge(f: &MultiPoly, g: &MultiPoly) -> Vec<String> {
    let mut v: Vec<String> = f.vars().iter().chain(g.vars()).cloned().collect();
    v.sort();
    v.dedup();
    v
}

/// Gcd of `f` and `g` regarded as polynomials in `v` with coefficients in
/// the remaining variables; normalized to leading coefficient 1.
pub fn gcd_univar(f: &MultiPoly, g: &MultiPoly, v: &str) -> MultiPoly {
    let h = gcd(f, g);
    if h.degree_in(v) == 0 {
        MultiPoly::one().with_vars(&merge(f, g))
    } else {
        primitive_part_in(&h, v).monic()
    }
}

/// Product of the distinct irreducible factors of `p` (characteristic 0),
/// normalized to leading coefficient 1.
pub fn squarefree_part(p: &MultiPoly) -> MultiPoly {
    if p.is_constant() {
        return MultiPoly::one().with_vars(p.vars());
    }
    let mut g = p.clone();
    for v in p.occurring_vars() {
        g = gcd(&g, &p.partial_derivative(&v).unwrap());
        if g.is_constant() {
            break;
        }
    }
    p.exact_divide(&g).expect("gcd divides").monic()
}
