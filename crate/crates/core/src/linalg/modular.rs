//! Arithmetic modulo word-size primes, Chinese remaindering and rational reconstruction.
//!
//! Results computed here are always checked exactly before being returned as rational data.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{RatMatrix, Rational};

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Primes below 2^31 in decreasing order, so products of two residues fit in a u64.
pub struct PrimeStream {
    next: u64,
}

impl Default for PrimeStream {
    fn default() -> Self {
        PrimeStream { next: (1u64 << 31) - 1 }
    }
}

impl Iterator for PrimeStream {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        while self.next > 3 {
            let c = self.next;
            self.next -= 1;
            if is_prime(c) {
                return Some(c);
            }
        }
        None
    }
}

pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        None
    } else {
        Some(powmod(a, p - 2, p))
    }
}

pub fn reduce_int(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits")
}

/// `num/den mod p`, or `None` when `p` divides the denominator.
pub fn reduce_rat(x: &Rational, p: u64) -> Option<u64> {
    if x.is_zero() {
        return Some(0);
    }
    let n = reduce_int(x.numer(), p);
    if x.denom().is_one() {
        return Some(n);
    }
    let d = inv_mod(reduce_int(x.denom(), p), p)?;
    Some(n * d % p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    pub rows: usize,
    pub cols: usize,
    pub p: u64,
    pub data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(rows: usize, cols: usize, p: u64) -> Self {
        ModMatrix { rows, cols, p, data: vec![0; rows * cols] }
    }

    pub fn from_rat(m: &RatMatrix, p: u64) -> Option<Self> {
        let data = m.data().iter().map(|x| reduce_rat(x, p)).collect::<Option<Vec<_>>>()?;
        Some(ModMatrix { rows: m.rows(), cols: m.cols(), p, data })
    }

    pub fn from_ints(rows: usize, cols: usize, ints: &[BigInt], p: u64) -> Self {
        ModMatrix { rows, cols, p, data: ints.iter().map(|x| reduce_int(x, p)).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut t = ModMatrix::zeros(self.cols, self.rows, self.p);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    /// In-place reduced row echelon form; returns the pivot columns and the sign of
    /// the row permutation applied.
    pub fn rref(&mut self) -> (Vec<usize>, bool) {
        let (rows, cols, p) = (self.rows, self.cols, self.p);
        let mut pivots = Vec::new();
        let mut odd = false;
        let mut pr = 0;
        for c in 0..cols {
            if pr == rows {
                break;
            }
            let Some(k) = (pr..rows).find(|&r| self.data[r * cols + c] != 0) else { continue };
            if k != pr {
                for j in 0..cols {
                    self.data.swap(k * cols + j, pr * cols + j);
                }
                odd = !odd;
            }
            let inv = inv_mod(self.data[pr * cols + c], p).expect("nonzero pivot");
            for j in c..cols {
                let v = self.data[pr * cols + j];
                self.data[pr * cols + j] = v * inv % p;
            }
            let prow: Vec<(usize, u64)> =
                (c..cols).map(|j| (j, self.data[pr * cols + j])).filter(|&(_, v)| v != 0).collect();
            for r in 0..rows {
                if r == pr {
                    continue;
                }
                let f = self.data[r * cols + c];
                if f == 0 {
                    continue;
                }
                let nf = p - f;
                let row = &mut self.data[r * cols..(r + 1) * cols];
                for &(j, v) in &prow {
                    row[j] = (row[j] + nf * v) % p;
                }
            }
            pivots.push(c);
            pr += 1;
        }
        (pivots, odd)
    }

    pub fn rank(&self) -> usize {
        let mut m = if self.rows > self.cols { self.transpose() } else { self.clone() };
        m.rref().0.len()
    }

    pub fn det(&self) -> u64 {
        assert_eq!(self.rows, self.cols, "det of a non-square matrix");
        let (n, p) = (self.rows, self.p);
        let mut a = self.data.clone();
        let mut det = 1u64;
        for k in 0..n {
            let Some(r) = (k..n).find(|&r| a[r * n + k] != 0) else { return 0 };
            if r != k {
                for j in 0..n {
                    a.swap(r * n + j, k * n + j);
                }
                det = (p - det) % p;
            }
            let piv = a[k * n + k];
            det = det * piv % p;
            let inv = inv_mod(piv, p).expect("nonzero pivot");
            for i in k + 1..n {
                let f = a[i * n + k] * inv % p;
                if f == 0 {
                    continue;
                }
                let nf = p - f;
                for j in k..n {
                    a[i * n + j] = (a[i * n + j] + nf * a[k * n + j]) % p;
                }
            }
        }
        det
    }

    /// Reduced echelon basis of `{x : x·self = 0}` over F_p, with its pivot columns.
    pub fn left_kernel(&self) -> (Vec<Vec<u64>>, Vec<usize>) {
        let mut t = self.transpose();
        let (piv, _) = t.rref();
        let n = t.cols;
        let p = self.p;
        let mut is_piv = vec![false; n];
        for &c in &piv {
            is_piv[c] = true;
        }
        let mut basis = Vec::new();
        for f in (0..n).filter(|&c| !is_piv[c]) {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (i, &c) in piv.iter().enumerate() {
                let e = t.data[i * n + f];
                if e != 0 {
                    v[c] = p - e;
                }
            }
            basis.push(v);
        }
        if basis.is_empty() {
            return (basis, Vec::new());
        }
        let k = basis.len();
        let mut b = ModMatrix { rows: k, cols: n, p, data: basis.into_iter().flatten().collect() };
        let (kp, _) = b.rref();
        let rows = (0..k).map(|i| b.data[i * n..(i + 1) * n].to_vec()).collect();
        (rows, kp)
    }
}

/// Symmetric residue combination: returns `x` with `x ≡ a (mod m)`, `x ≡ b (mod p)`.
pub fn crt_step(a: &BigInt, m: &BigInt, b: u64, p: u64) -> BigInt {
    let am = reduce_int(a, p);
    let minv = inv_mod(reduce_int(m, p), p).expect("coprime moduli");
    let t = ((b + p - am) % p) * minv % p;
    a + m * BigInt::from(t)
}

fn symmetric(x: BigInt, m: &BigInt) -> BigInt {
    let x = x.mod_floor(m);
    if &x * 2 > *m {
        x - m
    } else {
        x
    }
}

/// Smallest-height fraction congruent to `a` modulo `m`, when numerator and
/// denominator are both below sqrt(m/2).
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let a = a.mod_floor(m);
    if a.is_zero() {
        return Some(Rational::zero());
    }
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

/// Determinant of an integer matrix by CRT against the Hadamard bound.
pub fn det_integer(a: &[BigInt], n: usize) -> BigInt {
    // log2 of the Hadamard bound, rounded up, plus a sign bit and slack
    let mut bits = 2.0f64;
    for r in 0..n {
        let mut s = 0f64;
        for x in &a[r * n..(r + 1) * n] {
            let f = big_to_f64_log2(x);
            if let Some(l) = f {
                s += (2.0 * l).exp2();
            }
        }
        if s == 0.0 {
            return BigInt::zero();
        }
        bits += 0.5 * s.log2() + 1e-9;
    }
    // rows with very large entries overflow f64; fall back to a bit-length estimate
    if !bits.is_finite() {
        bits = 2.0;
        for r in 0..n {
            let b = a[r * n..(r + 1) * n].iter().map(|x| x.bits()).max().unwrap_or(0);
            bits += b as f64 + (n as f64).log2();
        }
    }
    let mut m = BigInt::one();
    let mut acc = BigInt::zero();
    let mut have = 0f64;
    for p in PrimeStream::default() {
        let mm = ModMatrix::from_ints(n, n, a, p);
        let d = mm.det();
        acc = crt_step(&acc, &m, d, p);
        m *= p;
        have += (p as f64).log2();
        if have > bits {
            break;
        }
    }
    symmetric(acc, &m)
}

fn big_to_f64_log2(x: &BigInt) -> Option<f64> {
    if x.is_zero() {
        return None;
    }
    let bits = x.bits();
    if bits < 1000 {
        x.abs().to_f64().map(|f| f.log2())
    } else {
        Some(bits as f64)
    }
}

/// Multiply each column by the lcm of its denominators, which leaves left kernels unchanged.
pub fn clear_column_denominators(a: &RatMatrix) -> Vec<BigInt> {
    let (rows, cols) = a.shape();
    let mut scale = vec![BigInt::one(); cols];
    for r in 0..rows {
        for c in 0..cols {
            let d = a[(r, c)].denom();
            if !d.is_one() {
                scale[c] = scale[c].lcm(d);
            }
        }
    }
    let mut out = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for (c, s) in scale.iter().enumerate() {
            let x = &a[(r, c)];
            out.push(x.numer() * (s / x.denom()));
        }
    }
    out
}

fn int_row(v: &[Rational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in v {
        if !x.denom().is_one() {
            l = l.lcm(x.denom());
        }
    }
    v.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

fn annihilates(rows: usize, cols: usize, a: &[BigInt], x: &[Rational]) -> bool {
    let xi = int_row(x);
    let mut acc = vec![BigInt::zero(); cols];
    for (r, xr) in xi.iter().enumerate().take(rows) {
        if xr.is_zero() {
            continue;
        }
        for (c, slot) in acc.iter_mut().enumerate() {
            let e = &a[r * cols + c];
            if !e.is_zero() {
                *slot += xr * e;
            }
        }
    }
    acc.iter().all(|x| x.is_zero())
}

const MAX_PRIMES: usize = 400;

/// Reduced echelon basis of the left kernel `{x : x·a = 0}`.
///
/// Per-prime kernels are combined by CRT and rational reconstruction and the result is
/// verified exactly. Since the rank modulo any prime never exceeds the rational rank, a
/// verified independent family of the smallest modular kernel dimension is a basis.
pub fn left_kernel(a: &RatMatrix) -> Vec<Vec<Rational>> {
    let (rows, cols) = a.shape();
    if rows == 0 {
        return Vec::new();
    }
    if cols == 0 {
        return RatMatrix::identity(rows).data().chunks(rows).map(|r| r.to_vec()).collect();
    }
    let ints = clear_column_denominators(a);
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut m = BigInt::one();
    let mut acc: Vec<Vec<BigInt>> = Vec::new();
    let mut last: Option<Vec<Vec<Rational>>> = None;
    for (used, p) in PrimeStream::default().enumerate() {
        if used >= MAX_PRIMES {
            break;
        }
        let mm = ModMatrix::from_ints(rows, cols, &ints, p);
        let (basis, piv) = mm.left_kernel();
        let dim = basis.len();
        match &best {
            Some((d, bp)) if dim > *d || (dim == *d && piv != *bp) => continue,
            Some((d, _)) if dim == *d => {}
            _ => {
                // first prime, or a smaller kernel: restart accumulation
                best = Some((dim, piv.clone()));
                m = BigInt::one();
                acc = vec![vec![BigInt::zero(); rows]; dim];
                last = None;
            }
        }
        if dim == 0 {
            return Vec::new();
        }
        for (row, brow) in acc.iter_mut().zip(&basis) {
            for (x, &b) in row.iter_mut().zip(brow) {
                *x = crt_step(x, &m, b, p);
            }
        }
        m *= p;
        let Some(rec) = reconstruct_rows(&acc, &m) else { continue };
        if last.as_ref() == Some(&rec) && rec.iter().all(|x| annihilates(rows, cols, &ints, x)) {
            return rec;
        }
        last = Some(rec);
    }
    a.kernel_basis()
}

fn reconstruct_rows(acc: &[Vec<BigInt>], m: &BigInt) -> Option<Vec<Vec<Rational>>> {
    acc.iter()
        .map(|row| row.iter().map(|x| rational_reconstruct(x, m)).collect::<Option<Vec<_>>>())
        .collect()
}

/// Rank over Q, certified: the modular rank is a lower bound, and it is confirmed by
/// exhibiting a verified left kernel of complementary dimension.
pub fn rank(a: &RatMatrix) -> usize {
    a.rows() - left_kernel(a).len()
}

/// Nonzero determinant check. A full-rank reduction modulo a prime certifies
/// invertibility; otherwise the exact determinant decides.
pub fn is_invertible(a: &RatMatrix) -> bool {
    if !a.is_square() {
        return false;
    }
    if a.rows() == 0 {
        return true;
    }
    for p in PrimeStream::default().take(3) {
        if let Some(mm) = ModMatrix::from_rat(a, p) {
            if mm.det() != 0 {
                return true;
            }
        }
    }
    !a.det().expect("square").is_zero()
}

pub fn sign_of(x: &BigInt) -> i32 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat};

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(3) && is_prime(2147483647));
        assert!(!is_prime(1) && !is_prime(561) && !is_prime(3215031751));
        let ps: Vec<u64> = PrimeStream::default().take(3).collect();
        assert_eq!(ps[0], 2147483647);
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn reconstruct_small_fractions() {
        let p = BigInt::from(2147483647u64) * BigInt::from(2147483629u64);
        for (n, d) in [(1, 2), (-3, 7), (0, 1), (12345, 678)] {
            let x = Rational::new(BigInt::from(n), BigInt::from(d));
            let r = reduce_rat(&x, 2147483647).unwrap();
            let r2 = reduce_rat(&x, 2147483629).unwrap();
            let c = crt_step(&BigInt::from(r), &BigInt::from(2147483647u64), r2, 2147483629);
            assert_eq!(rational_reconstruct(&c, &p), Some(x));
        }
    }

    #[test]
    fn modular_kernel_matches_exact() {
        let a = RatMatrix::from_rows(vec![
            vec![int(1), rat(1, 2), int(0)],
            vec![int(2), int(1), int(0)],
            vec![int(0), int(0), rat(-5, 3)],
            vec![int(3), rat(3, 2), int(7)],
        ])
        .unwrap();
        assert_eq!(left_kernel(&a), a.kernel_basis());
        assert_eq!(rank(&a), a.rank());
    }

    #[test]
    fn modular_kernel_with_large_entries() {
        let big = Rational::new(BigInt::from(10u64).pow(40) + 1, BigInt::from(7));
        let a = RatMatrix::from_rows(vec![
            vec![big.clone(), int(1)],
            vec![int(1), int(0)],
            vec![&big + int(1), int(1)],
        ])
        .unwrap();
        assert_eq!(left_kernel(&a), a.kernel_basis());
    }

    #[test]
    fn invertibility() {
        assert!(is_invertible(&RatMatrix::identity(3)));
        assert!(!is_invertible(&RatMatrix::from_i64(2, 2, &[1, 2, 2, 4])));
        // singular modulo small primes only in appearance: det = 2^31 - 1
        let m = RatMatrix::from_i64(1, 1, &[2147483647]);
        assert!(is_invertible(&m));
    }

    #[test]
    fn mod_det_agrees() {
        let a = RatMatrix::from_i64(3, 3, &[2, -1, 0, 4, 3, 1, -2, 5, 7]);
        let d = a.det().unwrap();
        let p = 1_000_000_007;
        assert_eq!(ModMatrix::from_rat(&a, p).unwrap().det(), reduce_rat(&d, p).unwrap());
    }
}
