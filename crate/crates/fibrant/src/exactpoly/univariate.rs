//! Dense univariate polynomials over Q: Euclid, squarefree parts, Sturm
//! sequences and exact rational roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{int, sign, MultiPoly, PolyError, Rational};

/// Coefficients from the constant term upward; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    /// Reads a polynomial in `v` alone; any other occurring variable is an error.
    pub fn from_multi(p: &MultiPoly, v: &str) -> Result<Self, PolyError> {
        if let Some(other) = p.occurring_vars().into_iter().find(|x| x != v) {
            return Err(PolyError::Degenerate(format!("`{other}` occurs in a polynomial expected univariate in `{v}`")));
        }
        let coeffs = p.coefficients_in(v).into_iter().map(|c| c.constant_term()).collect();
        Ok(Self::new(coeffs))
    }

    pub fn to_multi(&self, v: &str) -> MultiPoly {
        let mut out = MultiPoly::zero_in(&[v]);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &MultiPoly::term(c.clone(), &[(v, k as u32)]);
            }
        }
        out
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * int(k as i64)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().recip();
        Self::new(self.coeffs.iter().map(|c| c * &inv).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), PolyError> {
        let dd = d.degree().ok_or(PolyError::DivisionByZero)?;
        let mut r = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let inv = d.lc().recip();
        let mut q = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &r[k + dd] * &inv;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dj;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self, PolyError> {
        Ok(self.div_rem(d)?.1)
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree().unwrap_or(0) == 0
    }

    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).expect("gcd is nonzero").0.monic()
    }

    /// Scales to a primitive integer polynomial with positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return vec![];
        }
        let l = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let s = if ints.last().unwrap().is_negative() { -g } else { g };
        ints.into_iter().map(|c| c / &s).collect()
    }

    /// Equal up to a nonzero rational factor.
    pub fn associated(&self, other: &Self) -> bool {
        self.monic() == other.monic()
    }

    fn sturm_sequence(&self) -> Vec<UniPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]).unwrap().neg();
            if r.is_zero() {
                break;
            }
            seq.push(r);
        }
        seq
    }

    fn sign_changes(seq: &[UniPoly], x: &Rational) -> usize {
        let signs: Vec<i32> = seq.iter().map(|p| sign(&p.eval(x))).filter(|s| *s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots.
    pub fn count_real_roots(&self) -> usize {
        let s = self.squarefree_part();
        if s.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let b = s.root_bound();
        let seq = s.sturm_sequence();
        Self::sign_changes(&seq, &-b.clone()) - Self::sign_changes(&seq, &b)
    }

    /// Strict bound on the absolute value of every root (Cauchy).
    fn root_bound(&self) -> Rational {
        let lc = self.lc().abs();
        let m = self.coeffs.iter().map(|c| c.abs() / &lc).fold(Rational::zero(), |a, b| if b > a { b } else { a });
        m + int(1)
    }

    /// All rational roots, sorted, without multiplicity.
    ///
    /// Real roots are isolated with a Sturm sequence; once an isolating
    /// interval is shorter than `1/|lc|` of the primitive integer form, the
    /// only possible rational root is a lattice point `k/lc` inside it.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let mut s = self.squarefree_part();
        let mut roots = Vec::new();
        if s.degree().unwrap_or(0) == 0 {
            return roots;
        }
        if s.eval(&Rational::zero()).is_zero() {
            roots.push(Rational::zero());
            s = s.div_rem(&Self::linear_root(&Rational::zero())).unwrap().0;
        }
        'restart: loop {
            if s.degree().unwrap_or(0) == 0 {
                break;
            }
            let ints = s.primitive_integer();
            let lc = Rational::from_integer(ints.last().unwrap().abs());
            let grid = lc.recip();
            let seq = s.sturm_sequence();
            let b = s.root_bound();
            let mut stack = vec![(-b.clone(), b)];
            let mut found = Vec::new();
            while let Some((lo, hi)) = stack.pop() {
                let n = Self::sign_changes(&seq, &lo) - Self::sign_changes(&seq, &hi);
                if n == 0 {
                    continue;
                }
                let width = &hi - &lo;
                if n == 1 && width < grid {
                    let k_lo = (&lo * &lc).ceil().to_integer();
                    let k_hi = (&hi * &lc).floor().to_integer();
                    let mut k = k_lo;
                    while k <= k_hi {
                        let x = Rational::from_integer(k.clone()) / &lc;
                        if s.eval(&x).is_zero() {
                            found.push(x);
                        }
                        k += 1;
                    }
                    continue;
                }
                let mid = (&lo + &hi) / int(2);
                if s.eval(&mid).is_zero() {
                    roots.push(mid.clone());
                    s = s.div_rem(&Self::linear_root(&mid)).unwrap().0;
                    continue 'restart;
                }
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
            for x in found {
                if !roots.contains(&x) {
                    roots.push(x);
                }
            }
            break;
        }
        roots.sort();
        roots
    }

    /// Removes every rational root (with multiplicity) and returns the rest,
    /// which has no rational roots.
    pub fn without_rational_roots(&self) -> (Vec<Rational>, UniPoly) {
        let roots = self.rational_roots();
        let mut rest = self.clone();
        for r in &roots {
            let lin = Self::linear_root(r);
            loop {
                let (q, rem) = rest.div_rem(&lin).unwrap();
                if !rem.is_zero() {
                    break;
                }
                rest = q;
            }
        }
        (roots, rest)
    }
}
