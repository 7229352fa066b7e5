//! Partitions, tableaux, symmetric-group characters and the coefficient families
//! (Pieri, Littlewood-Richardson, Kronecker) that count arrows.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("partition {0} has more than {1} rows")]
    TooManyRows(Partition, usize),
    #[error("sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("cannot parse partition {0:?}")]
    Parse(String),
    #[error("tableau is not standard")]
    NotStandard,
    #[error("filling does not match the shape")]
    BadFilling,
}

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn rows(&self) -> usize {
        self.0.len()
    }

    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.part(0);
        Partition((0..w).map(|c| self.0.iter().filter(|&&p| p > c).count()).collect())
    }

    /// Cells (row, col), row by row.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.0.iter().enumerate().flat_map(|(r, &p)| (0..p).map(move |c| (r, c))).collect()
    }

    pub fn hook(&self, r: usize, c: usize) -> usize {
        let arm = self.0[r] - c - 1;
        let leg = self.0.iter().skip(r + 1).filter(|&&p| p > c).count();
        arm + leg + 1
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.rows() <= self.rows() && other.0.iter().enumerate().all(|(i, &p)| p <= self.0[i])
    }

    /// Partitions obtained by adding one box.
    pub fn add_box(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for r in 0..=self.rows() {
            if r == 0 || self.part(r) < self.part(r - 1) {
                let mut p = self.0.clone();
                if r == p.len() {
                    p.push(1);
                } else {
                    p[r] += 1;
                }
                out.push(Partition(p));
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = PartitionError;
    fn from_str(s: &str) -> Result<Self, PartitionError> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| PartitionError::Parse(s.into()))?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| PartitionError::Parse(s.into())))
            .collect::<Result<Vec<_>, _>>()?;
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(PartitionError::Parse(s.into()));
        }
        Ok(Partition(parts))
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Partitions of `d` with at most `max_rows` parts, in reverse lexicographic order.
pub fn partitions_of(d: usize, max_rows: usize) -> Vec<Partition> {
    fn rec(rem: usize, cap: usize, rows: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if rows == 0 {
            return;
        }
        for p in (1..=cap.min(rem)).rev() {
            cur.push(p);
            rec(rem - p, p, rows - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, max_rows, &mut Vec::new(), &mut out);
    out
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * k)
}

pub fn hook_product(l: &Partition) -> BigInt {
    l.cells().iter().fold(BigInt::one(), |a, &(r, c)| a * l.hook(r, c))
}

pub fn dim_symgroup_irrep(l: &Partition) -> usize {
    (factorial(l.size()) / hook_product(l)).to_usize().expect("dimension fits")
}

pub fn dim_gl_irrep(l: &Partition, n: usize) -> Result<usize, PartitionError> {
    if l.rows() > n {
        return Err(PartitionError::TooManyRows(l.clone(), n));
    }
    let mut num = BigInt::one();
    for (r, c) in l.cells() {
        num *= BigInt::from(n + c) - BigInt::from(r);
    }
    Ok((num / hook_product(l)).to_usize().expect("dimension fits"))
}

/// Content c - r of each cell, row by row.
pub fn contents(l: &Partition) -> Vec<i64> {
    l.cells().iter().map(|&(r, c)| c as i64 - r as i64).collect()
}

fn char_cache() -> &'static Mutex<HashMap<(Partition, Partition), i64>> {
    static CACHE: OnceLock<Mutex<HashMap<(Partition, Partition), i64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Irreducible character value by the Murnaghan-Nakayama rule.
pub fn symgroup_character(l: &Partition, class: &Partition) -> Result<i64, PartitionError> {
    if l.size() != class.size() {
        return Err(PartitionError::SizeMismatch(l.size(), class.size()));
    }
    Ok(mn(l, class.parts()))
}

fn mn(l: &Partition, class: &[usize]) -> i64 {
    if class.is_empty() {
        return 1;
    }
    let key = (l.clone(), Partition(class.to_vec()));
    if let Some(&v) = char_cache().lock().expect("cache").get(&key) {
        return v;
    }
    let r = class[0];
    let rest = &class[1..];
    // beta numbers: removing an r-rim hook moves one bead down by r
    let k = l.rows();
    let beta: Vec<usize> = (0..k).map(|i| l.0[i] + (k - 1 - i)).collect();
    let mut total = 0i64;
    for i in 0..k {
        let b = beta[i];
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > b - r && x < b).count();
        let mut nb = beta.clone();
        nb[i] = b - r;
        nb.sort_unstable_by(|x, y| y.cmp(x));
        let parts: Vec<usize> = (0..k).map(|j| nb[j] - (k - 1 - j)).collect();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn(&Partition::new(parts), rest);
    }
    char_cache().lock().expect("cache").insert(key, total);
    total
}

/// z_μ = Π i^{m_i} m_i!, so the class of cycle type μ has d!/z_μ elements.
pub fn centralizer_order(class: &Partition) -> BigInt {
    let mut z = BigInt::one();
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for &p in class.parts() {
        *counts.entry(p).or_default() += 1;
    }
    for (i, m) in counts {
        z *= BigInt::from(i).pow(m as u32) * factorial(m);
    }
    z
}

pub fn class_size(class: &Partition) -> BigInt {
    factorial(class.size()) / centralizer_order(class)
}

pub fn kronecker(a: &Partition, b: &Partition, c: &Partition) -> Result<usize, PartitionError> {
    let d = a.size();
    for x in [b, c] {
        if x.size() != d {
            return Err(PartitionError::SizeMismatch(d, x.size()));
        }
    }
    let mut s = BigInt::zero();
    for cl in partitions_of(d, d) {
        let prod = mn(a, cl.parts()) * mn(b, cl.parts()) * mn(c, cl.parts());
        s += class_size(&cl) * prod;
    }
    let (q, r) = s.div_rem(&factorial(d));
    assert!(r.is_zero(), "Kronecker sum not divisible");
    Ok(q.to_usize().expect("nonnegative"))
}

/// Littlewood-Richardson coefficient c_{λμ}^ν by the lattice-word rule.
pub fn lr_coefficient(lam: &Partition, mu: &Partition, nu: &Partition) -> usize {
    if lam.size() + mu.size() != nu.size() || !nu.contains(lam) || !nu.contains(mu) {
        return 0;
    }
    // skew cells in reading order: rows top to bottom, right to left
    let mut cells = Vec::new();
    for r in 0..nu.rows() {
        for c in (lam.part(r)..nu.part(r)).rev() {
            cells.push((r, c));
        }
    }
    let mut fill: HashMap<(usize, usize), usize> = HashMap::new();
    let mut used = vec![0usize; mu.rows()];
    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        lam: &Partition,
        mu: &Partition,
        fill: &mut HashMap<(usize, usize), usize>,
        used: &mut Vec<usize>,
    ) -> usize {
        if idx == cells.len() {
            return 1;
        }
        let (r, c) = cells[idx];
        let mut total = 0;
        for v in 0..mu.rows() {
            if used[v] >= mu.part(v) || (v > 0 && used[v] >= used[v - 1]) {
                continue;
            }
            if let Some(&right) = fill.get(&(r, c + 1)) {
                if v > right {
                    continue;
                }
            }
            if r > 0 && c >= lam.part(r - 1) {
                match fill.get(&(r - 1, c)) {
                    Some(&above) if v <= above => continue,
                    _ => {}
                }
            }
            fill.insert((r, c), v);
            used[v] += 1;
            total += rec(idx + 1, cells, lam, mu, fill, used);
            used[v] -= 1;
            fill.remove(&(r, c));
        }
        total
    }
    rec(0, &cells, lam, mu, &mut fill, &mut used)
}

pub fn branching_multiplicity(rho: &Partition, sigma: &Partition) -> usize {
    lr_coefficient(rho, &Partition(vec![1]), sigma)
}

/// Filling of a shape by 1..d, stored row by row.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, PartitionError> {
        let shape = Partition(rows.iter().map(|r| r.len()).collect());
        if shape.0.windows(2).any(|w| w[0] < w[1]) || shape.0.contains(&0) {
            return Err(PartitionError::BadFilling);
        }
        let d = shape.size();
        let mut seen = vec![false; d + 1];
        for &x in rows.iter().flatten() {
            if x == 0 || x > d || seen[x] {
                return Err(PartitionError::BadFilling);
            }
            seen[x] = true;
        }
        Ok(Tableau { shape, rows })
    }

    /// Fills the shape with 1..d along rows.
    pub fn row_reading(shape: &Partition) -> Self {
        let mut k = 0;
        let rows = shape
            .parts()
            .iter()
            .map(|&p| {
                (0..p)
                    .map(|_| {
                        k += 1;
                        k
                    })
                    .collect()
            })
            .collect();
        Tableau { shape: shape.clone(), rows }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        let w = self.shape.part(0);
        (0..w).map(|c| self.rows.iter().filter(|r| r.len() > c).map(|r| r[c]).collect()).collect()
    }

    pub fn is_standard(&self) -> bool {
        self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]))
            && self.columns().iter().all(|c| c.windows(2).all(|w| w[0] < w[1]))
    }

    /// All standard tableaux of the shape, in lexicographic order of their row words.
    pub fn standard(shape: &Partition) -> Vec<Tableau> {
        let d = shape.size();
        let mut out = Vec::new();
        let mut rows: Vec<Vec<usize>> = vec![Vec::new(); shape.rows()];
        fn rec(k: usize, d: usize, shape: &Partition, rows: &mut Vec<Vec<usize>>, out: &mut Vec<Tableau>) {
            if k > d {
                out.push(Tableau { shape: shape.clone(), rows: rows.clone() });
                return;
            }
            for r in 0..rows.len() {
                let len = rows[r].len();
                if len < shape.part(r) && (r == 0 || rows[r - 1].len() > len) {
                    rows[r].push(k);
                    rec(k + 1, d, shape, rows, out);
                    rows[r].pop();
                }
            }
        }
        rec(1, d, shape, &mut rows, &mut out);
        out.sort_by(|a, b| a.rows.concat().cmp(&b.rows.concat()));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn listing_order() {
        assert_eq!(partitions_of(2, 2), vec![p(&[2]), p(&[1, 1])]);
        assert_eq!(partitions_of(3, 3), vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
        assert_eq!(partitions_of(4, 1), vec![p(&[4])]);
        assert_eq!(partitions_of(0, 0), vec![Partition::empty()]);
        assert_eq!(partitions_of(6, 6).len(), 11);
    }

    #[test]
    fn hooks_and_dims() {
        assert_eq!(hook_product(&p(&[2, 1])), BigInt::from(3));
        assert_eq!(hook_product(&p(&[4])), BigInt::from(24));
        assert_eq!(hook_product(&p(&[1, 1, 1])), BigInt::from(6));
        assert_eq!(dim_symgroup_irrep(&p(&[2, 1])), 2);
        assert_eq!(dim_gl_irrep(&p(&[1]), 5).unwrap(), 5);
        assert_eq!(dim_gl_irrep(&p(&[1, 1]), 3).unwrap(), 3);
        assert_eq!(dim_gl_irrep(&p(&[2]), 2).unwrap(), 3);
        assert!(dim_gl_irrep(&p(&[1, 1, 1]), 2).is_err());
    }

    #[test]
    fn characters() {
        assert_eq!(symgroup_character(&p(&[1, 1]), &p(&[2])).unwrap(), -1);
        assert_eq!(symgroup_character(&p(&[4]), &p(&[3, 1])).unwrap(), 1);
        assert_eq!(symgroup_character(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(), 2);
        assert_eq!(symgroup_character(&p(&[2, 1]), &p(&[3])).unwrap(), -1);
        assert!(symgroup_character(&p(&[2]), &p(&[1])).is_err());
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(&p(&[1, 1]), &p(&[1, 1]), &p(&[2])).unwrap(), 1);
        assert_eq!(kronecker(&p(&[2, 1]), &p(&[2, 1]), &p(&[2, 1])).unwrap(), 1);
        for pi in partitions_of(4, 4) {
            for s in partitions_of(4, 4) {
                assert_eq!(kronecker(&p(&[4]), &pi, &s).unwrap(), usize::from(pi == s));
            }
        }
    }

    #[test]
    fn lr_examples() {
        assert_eq!(lr_coefficient(&p(&[1]), &p(&[1]), &p(&[2])), 1);
        assert_eq!(lr_coefficient(&p(&[1]), &p(&[2]), &p(&[2, 1])), 1);
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[2, 1]), &p(&[3, 2, 1])), 2);
        assert_eq!(branching_multiplicity(&p(&[3]), &p(&[4])), 1);
        assert_eq!(branching_multiplicity(&p(&[3]), &p(&[3, 1])), 1);
        assert_eq!(branching_multiplicity(&p(&[2, 1]), &p(&[2, 1, 1])), 1);
        assert_eq!(branching_multiplicity(&p(&[2, 1]), &p(&[4])), 0);
    }

    #[test]
    fn parse_roundtrip() {
        for l in partitions_of(5, 5) {
            assert_eq!(l.to_string().parse::<Partition>().unwrap(), l);
        }
        assert!("[1,2]".parse::<Partition>().is_err());
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
    }

    #[test]
    fn standard_tableaux_count() {
        for d in 1..=5 {
            for l in partitions_of(d, d) {
                let t = Tableau::standard(&l);
                assert_eq!(t.len(), dim_symgroup_irrep(&l));
                assert!(t.iter().all(|x| x.is_standard()));
            }
        }
    }

    #[test]
    fn dimension_sum_of_squares() {
        for d in 0..=6 {
            let s: usize = partitions_of(d, d).iter().map(|l| dim_symgroup_irrep(l).pow(2)).sum();
            assert_eq!(BigInt::from(s), factorial(d));
        }
    }

    #[test]
    fn column_orthogonality() {
        for d in 1..=6 {
            let ps = partitions_of(d, d);
            for a in &ps {
                for b in &ps {
                    let s: i64 = ps.iter().map(|l| mn(l, a.parts()) * mn(l, b.parts())).sum();
                    let expect = if a == b { centralizer_order(a) } else { BigInt::zero() };
                    assert_eq!(BigInt::from(s), expect);
                }
            }
        }
    }

    fn small_partition(max: usize) -> impl Strategy<Value = Partition> {
        (0..=max).prop_flat_map(|d| {
            let ps = partitions_of(d, d);
            (0..ps.len()).prop_map(move |i| ps[i].clone())
        })
    }

    proptest! {
        #[test]
        fn lr_symmetric(a in small_partition(3), b in small_partition(3)) {
            for nu in partitions_of(a.size() + b.size(), 6) {
                prop_assert_eq!(lr_coefficient(&a, &b, &nu), lr_coefficient(&b, &a, &nu));
            }
        }

        #[test]
        fn pieri_indicator(a in small_partition(5)) {
            let adds = a.add_box();
            for nu in partitions_of(a.size() + 1, 6) {
                let c = lr_coefficient(&a, &Partition::new(vec![1]), &nu);
                prop_assert!(c <= 1);
                prop_assert_eq!(c == 1, adds.contains(&nu));
            }
        }

        #[test]
        fn kronecker_symmetric_and_dims(d in 1usize..=5, i in 0usize..7, j in 0usize..7) {
            let ps = partitions_of(d, d);
            let (a, b) = (&ps[i % ps.len()], &ps[j % ps.len()]);
            let mut total = 0;
            for c in &ps {
                let g = kronecker(a, b, c).unwrap();
                prop_assert_eq!(g, kronecker(b, a, c).unwrap());
                prop_assert_eq!(g, kronecker(c, b, a).unwrap());
                total += g * dim_symgroup_irrep(c);
            }
            prop_assert_eq!(total, dim_symgroup_irrep(a) * dim_symgroup_irrep(b));
        }

        #[test]
        fn lr_dimension_count(a in small_partition(3), b in small_partition(3), n in 1usize..4) {
            prop_assume!(a.rows() <= n && b.rows() <= n);
            let mut total = 0;
            for nu in partitions_of(a.size() + b.size(), n) {
                total += lr_coefficient(&a, &b, &nu) * dim_gl_irrep(&nu, n).unwrap();
            }
            prop_assert_eq!(total, dim_gl_irrep(&a, n).unwrap() * dim_gl_irrep(&b, n).unwrap());
        }
    }
}
