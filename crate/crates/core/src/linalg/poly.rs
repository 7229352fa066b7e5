//! Univariate polynomials over Q.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{fmt_rational, RatMatrix, Rational};

/// Coefficients from the constant term upward, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    c: Vec<Rational>,
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let s = fmt_rational(a);
            terms.push(match i {
                0 => s,
                1 => format!("({s})t"),
                _ => format!("({s})t^{i}"),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl Poly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { c: vec![Rational::one()] }
    }

    pub fn constant(a: Rational) -> Self {
        Poly::new(vec![a])
    }

    /// t - r
    pub fn linear(r: &Rational) -> Self {
        Poly::new(vec![-r, Rational::one()])
    }

    pub fn monomial(k: usize) -> Self {
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = Rational::one();
        Poly { c }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.c.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead().recip();
        Poly::new(self.c.iter().map(|x| x * &l).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let z = Rational::zero();
        Poly::new((0..n).map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let z = Rational::zero();
        Poly::new((0..n).map(|i| self.c.get(i).unwrap_or(&z) - o.c.get(i).unwrap_or(&z)).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Rational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }

    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.c.len() - 1;
        if self.c.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut r = self.c.clone();
        let mut q = vec![Rational::zero(); r.len() - dd];
        let li = d.lead().recip();
        for k in (0..q.len()).rev() {
            let f = &r[k + dd] * &li;
            if f.is_zero() {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                r[k + j] -= &f * b;
            }
            q[k] = f;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, u, v)` with `u·self + v·o = g` and `g` the monic gcd.
    pub fn xgcd(&self, o: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let l = Poly::constant(r0.lead().recip());
        (r0.mul(&l), s0.mul(&l), t0.mul(&l))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.c.iter().enumerate().skip(1).map(|(i, a)| a * Rational::from_integer(BigInt::from(i))).collect(),
        )
    }

    pub fn square_free(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        self.divrem(&self.gcd(&self.derivative())).0.monic()
    }

    /// Power of `t` dividing the polynomial.
    pub fn t_valuation(&self) -> usize {
        self.c.iter().take_while(|x| x.is_zero()).count()
    }

    /// Evaluates at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, x: &RatMatrix) -> RatMatrix {
        let n = x.rows();
        let mut acc = RatMatrix::zeros(n, n);
        for a in self.c.iter().rev() {
            acc = &acc * x;
            acc.add_scaled(&RatMatrix::identity(n), a);
        }
        acc
    }

    /// Distinct rational roots, each verified exactly.
    ///
    /// Candidates are located numerically on the square-free part, rationalised by
    /// continued fractions and deflated as they are confirmed.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let mut f = self.square_free();
        let mut roots = Vec::new();
        if f.t_valuation() > 0 {
            roots.push(Rational::zero());
            f = f.divrem(&Poly::monomial(1)).0;
        }
        loop {
            let Some(d) = f.degree() else { break };
            if d == 0 {
                break;
            }
            if d == 1 {
                roots.push(-&f.c[0] / &f.c[1]);
                break;
            }
            let mut found = None;
            for z in approx_roots(&f) {
                if z.1.abs() > 1e-6 * (1.0 + z.0.abs()) {
                    continue;
                }
                if let Some(r) = rationalize(z.0).into_iter().find(|r| f.eval(r).is_zero()) {
                    found = Some(r);
                    break;
                }
            }
            if found.is_none() {
                found = small_candidates(&f).into_iter().find(|r| f.eval(r).is_zero());
            }
            let Some(r) = found else { break };
            f = f.divrem(&Poly::linear(&r)).0;
            roots.push(r);
        }
        roots.sort();
        roots
    }
}

/// Complex roots (re, im) by simultaneous Weierstrass iteration.
fn approx_roots(f: &Poly) -> Vec<(f64, f64)> {
    let m = f.monic();
    let d = m.degree().unwrap_or(0);
    let c: Vec<f64> = m.c.iter().map(|x| x.to_f64().unwrap_or(0.0)).collect();
    if c.iter().any(|x| !x.is_finite()) {
        return Vec::new();
    }
    let radius = 1.0 + c[..d].iter().fold(0f64, |a, b| a.max(b.abs()));
    let mut z: Vec<(f64, f64)> = (0..d)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * (k as f64) / (d as f64) + 0.4;
            (radius * th.cos(), radius * th.sin())
        })
        .collect();
    let cmul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let cdiv = |a: (f64, f64), b: (f64, f64)| {
        let n = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / n, (a.1 * b.0 - a.0 * b.1) / n)
    };
    for _ in 0..500 {
        let mut delta = 0f64;
        for i in 0..d {
            let mut p = (1.0, 0.0);
            for k in (0..d).rev() {
                p = cmul(p, z[i]);
                p.0 += c[k];
            }
            let mut q = (1.0, 0.0);
            for j in 0..d {
                if j != i {
                    q = cmul(q, (z[i].0 - z[j].0, z[i].1 - z[j].1));
                }
            }
            if q.0 == 0.0 && q.1 == 0.0 {
                q = (1e-12, 0.0);
            }
            let w = cdiv(p, q);
            z[i] = (z[i].0 - w.0, z[i].1 - w.1);
            delta = delta.max(w.0.abs() + w.1.abs());
        }
        if delta < 1e-14 {
            break;
        }
    }
    z
}

/// Continued-fraction convergents of `x`, which contain every fraction close enough to it.
fn rationalize(x: f64) -> Vec<Rational> {
    let mut out = Vec::new();
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut y = x;
    for _ in 0..40 {
        let a = y.floor();
        if !a.is_finite() || a.abs() > 1e15 {
            break;
        }
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        out.push(Rational::new(h2.clone(), k2.clone()));
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let frac = y - a;
        if frac.abs() < 1e-12 {
            break;
        }
        y = 1.0 / frac;
    }
    out
}

/// Rational-root-theorem candidates when the cleared coefficients are small.
fn small_candidates(f: &Poly) -> Vec<Rational> {
    let mut l = BigInt::one();
    for a in &f.c {
        l = l.lcm(a.denom());
    }
    let ints: Vec<BigInt> = f.c.iter().map(|a| a.numer() * (&l / a.denom())).collect();
    let a0 = ints[0].abs();
    let an = ints.last().expect("nonzero").abs();
    let divisors = |n: &BigInt| -> Option<Vec<BigInt>> {
        let n = n.to_u64()?;
        if n > 1_000_000 {
            return None;
        }
        Some((1..=n).filter(|d| n % d == 0).map(BigInt::from).collect())
    };
    let (Some(ps), Some(qs)) = (divisors(&a0), divisors(&an)) else { return Vec::new() };
    let mut out = Vec::new();
    for p in &ps {
        for q in &qs {
            let r = Rational::new(p.clone(), q.clone());
            out.push(r.clone());
            out.push(-r);
        }
    }
    out
}

/// Minimal polynomial of `x` from its successive powers, given as coordinate vectors.
/// `powers(k)` must return the coordinates of `x^k`.
pub fn minimal_polynomial(mut powers: impl FnMut(usize) -> Vec<Rational>, max_degree: usize) -> Poly {
    // incremental echelon basis of the span of 1, x, x^2, ...
    // each stored row keeps its coordinates in the power basis alongside
    let mut basis: Vec<(usize, Vec<Rational>, Vec<Rational>)> = Vec::new();
    for k in 0..=max_degree {
        let mut v = powers(k);
        let mut comb = vec![Rational::zero(); k + 1];
        comb[k] = Rational::one();
        for (piv, row, rc) in &basis {
            let f = v[*piv].clone();
            if f.is_zero() {
                continue;
            }
            for (a, b) in v.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
            for (a, b) in comb.iter_mut().zip(rc) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
        }
        match v.iter().position(|a| !a.is_zero()) {
            None => return Poly::new(comb).monic(),
            Some(p) => {
                let inv = v[p].recip();
                for a in v.iter_mut() {
                    *a *= &inv;
                }
                for a in comb.iter_mut() {
                    *a *= &inv;
                }
                basis.push((p, v, comb));
            }
        }
    }
    panic!("minimal polynomial degree exceeds {max_degree}");
}

pub fn matrix_minimal_polynomial(x: &RatMatrix) -> Poly {
    let n = x.rows();
    let mut cur = RatMatrix::identity(n);
    let mut k_done = 0;
    minimal_polynomial(
        |k| {
            while k_done < k {
                cur = &cur * x;
                k_done += 1;
            }
            cur.data().to_vec()
        },
        n,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat};

    fn p(v: &[i64]) -> Poly {
        Poly::new(v.iter().map(|&a| int(a)).collect())
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]); // t^2 - 1
        let b = p(&[1, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[-1, 1])), p(&[-1, 1]));
        let (g, u, v) = p(&[0, 1]).xgcd(&p(&[-1, 1]));
        assert_eq!(g, Poly::one());
        assert_eq!(u.mul(&p(&[0, 1])).add(&v.mul(&p(&[-1, 1]))), Poly::one());
    }

    #[test]
    fn roots() {
        // (2t - 1)(t + 3)(t - 4)^2 (t^2 + 1)
        let f = p(&[-1, 2]).mul(&p(&[3, 1])).mul(&p(&[-4, 1])).mul(&p(&[-4, 1])).mul(&p(&[1, 0, 1]));
        assert_eq!(f.rational_roots(), vec![int(-3), rat(1, 2), int(4)]);
        assert_eq!(p(&[0, 0, 1]).rational_roots(), vec![int(0)]);
        assert!(p(&[-2, 0, 1]).rational_roots().is_empty());
    }

    #[test]
    fn matrix_min_poly() {
        let x = RatMatrix::from_i64(3, 3, &[2, 0, 0, 0, 2, 0, 0, 0, 3]);
        let m = matrix_minimal_polynomial(&x);
        assert_eq!(m, p(&[-2, 1]).mul(&p(&[-3, 1])));
        assert!(m.eval_matrix(&x).is_zero());
        let n = RatMatrix::from_i64(2, 2, &[0, 1, 0, 0]);
        assert_eq!(matrix_minimal_polynomial(&n), p(&[0, 0, 1]));
    }
}
