//! Schur algebras `S(n,d)` realized inside `End(V^{⊗d})`, with the ξ basis and idempotent tables.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{fmt_rational, RatMatrix, Rational};
use crate::partition::{dim_gl_irrep, factorial, partitions_of, symgroup_character, Partition, PartitionError, Tableau};
use crate::semisimple::{decompose, AlgebraError, MatrixAlgebra, SplitHints};
use crate::symmetric::{central_idempotent, seminormal_idempotent, young_symmetrizer, GroupAlgebraElement, Permutation};

pub const DEFAULT_TENSOR_BUDGET: usize = 4096;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SchurError {
    #[error("no idempotent table for degree {0}")]
    UnsupportedDegree(usize),
    #[error("n^d = {0} exceeds the budget {1}")]
    Budget(usize, usize),
    #[error("index {0} out of range 1..{1}")]
    Index(usize, usize),
    #[error("top and bottom rows have different lengths")]
    Length,
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Biword `(top, bottom)` with 1-based letters, kept with its pairs in non-decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GeneralizedPermutation {
    top: Vec<usize>,
    bottom: Vec<usize>,
}

impl GeneralizedPermutation {
    pub fn new(top: &[usize], bottom: &[usize]) -> Result<Self, SchurError> {
        if top.len() != bottom.len() {
            return Err(SchurError::Length);
        }
        let mut pairs: Vec<(usize, usize)> = top.iter().copied().zip(bottom.iter().copied()).collect();
        pairs.sort_unstable();
        Ok(GeneralizedPermutation {
            top: pairs.iter().map(|p| p.0).collect(),
            bottom: pairs.iter().map(|p| p.1).collect(),
        })
    }

    pub fn top(&self) -> &[usize] {
        &self.top
    }

    pub fn bottom(&self) -> &[usize] {
        &self.bottom
    }

    pub fn degree(&self) -> usize {
        self.top.len()
    }
}

impl fmt::Display for GeneralizedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "ξ^{{{}}}_{{{}}}", w(&self.top), w(&self.bottom))
    }
}

/// Rational combination of ξ basis elements of `S(n,d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiElement {
    pub n: usize,
    pub d: usize,
    coeffs: BTreeMap<GeneralizedPermutation, Rational>,
}

impl XiElement {
    pub fn zero(n: usize, d: usize) -> Self {
        XiElement { n, d, coeffs: BTreeMap::new() }
    }

    /// `ξ^{top}_{bottom}` with 1-based letters.
    pub fn xi(n: usize, top: &[usize], bottom: &[usize]) -> Result<Self, SchurError> {
        for &x in top.iter().chain(bottom) {
            if x == 0 || x > n {
                return Err(SchurError::Index(x, n));
            }
        }
        let mut e = Self::zero(n, top.len());
        e.add_term(GeneralizedPermutation::new(top, bottom)?, &Rational::one());
        Ok(e)
    }

    pub fn add_term(&mut self, g: GeneralizedPermutation, c: &Rational) {
        let v = self.coeffs.entry(g.clone()).or_insert_with(Rational::zero);
        *v += c;
        if v.is_zero() {
            self.coeffs.remove(&g);
        }
    }

    pub fn terms(&self) -> &BTreeMap<GeneralizedPermutation, Rational> {
        &self.coeffs
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut x = self.clone();
        for (g, c) in &o.coeffs {
            x.add_term(g.clone(), c);
        }
        x
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut x = Self::zero(self.n, self.d);
        for (g, c) in &self.coeffs {
            x.add_term(g.clone(), &(c * s));
        }
        x
    }

    /// Product through the faithful operator realization.
    pub fn mul(&self, o: &Self) -> Self {
        operator_to_xi(self.n, self.d, &(&xi_to_operator(self) * &xi_to_operator(o)))
    }
}

impl fmt::Display for XiElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (g, c)) in self.coeffs.iter().enumerate() {
            let neg = c < &Rational::zero();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = if neg { -c } else { c.clone() };
            if !a.is_one() {
                write!(f, "{}·", fmt_rational(&a))?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// All words of length `d` over `0..n`, in the order of their base-`n` index.
pub fn words(n: usize, d: usize) -> Vec<Vec<usize>> {
    let total = n.pow(d as u32);
    (0..total)
        .map(|mut x| {
            let mut w = vec![0; d];
            for k in (0..d).rev() {
                w[k] = x % n;
                x /= n;
            }
            w
        })
        .collect()
}

pub fn word_index(w: &[usize], n: usize) -> usize {
    w.iter().fold(0, |acc, &c| acc * n + c)
}

/// `Mat[I,J] = ξ(x_{I J})`, rows and columns indexed by words.
pub fn xi_to_operator(x: &XiElement) -> RatMatrix {
    let (n, d) = (x.n, x.d);
    let size = n.pow(d as u32);
    let mut m = RatMatrix::zeros(size, size);
    for (g, c) in &x.coeffs {
        let pairs: Vec<(usize, usize)> = g.top.iter().zip(&g.bottom).map(|(&i, &j)| (i - 1, j - 1)).collect();
        for_each_arrangement(&pairs, &mut |arr| {
            let i: Vec<usize> = arr.iter().map(|p| p.0).collect();
            let j: Vec<usize> = arr.iter().map(|p| p.1).collect();
            m[(word_index(&i, n), word_index(&j, n))] += c;
        });
    }
    m
}

fn for_each_arrangement(pairs: &[(usize, usize)], f: &mut dyn FnMut(&[(usize, usize)])) {
    let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &p in pairs {
        *counts.entry(p).or_default() += 1;
    }
    let keys: Vec<(usize, usize)> = counts.keys().copied().collect();
    let mut left: Vec<usize> = counts.values().copied().collect();
    let mut cur = Vec::with_capacity(pairs.len());
    fn rec(
        keys: &[(usize, usize)],
        left: &mut [usize],
        cur: &mut Vec<(usize, usize)>,
        total: usize,
        f: &mut dyn FnMut(&[(usize, usize)]),
    ) {
        if cur.len() == total {
            f(cur);
            return;
        }
        for k in 0..keys.len() {
            if left[k] > 0 {
                left[k] -= 1;
                cur.push(keys[k]);
                rec(keys, left, cur, total, f);
                cur.pop();
                left[k] += 1;
            }
        }
    }
    rec(&keys, &mut left, &mut cur, pairs.len(), f);
}

/// Reads ξ coordinates off an operator in the centralizer.
pub fn operator_to_xi(n: usize, d: usize, m: &RatMatrix) -> XiElement {
    let mut x = XiElement::zero(n, d);
    let ws = words(n, d);
    for (a, i) in ws.iter().enumerate() {
        for (b, j) in ws.iter().enumerate() {
            let c = &m[(a, b)];
            if c.is_zero() {
                continue;
            }
            let top: Vec<usize> = i.iter().map(|x| x + 1).collect();
            let bottom: Vec<usize> = j.iter().map(|x| x + 1).collect();
            let g = GeneralizedPermutation::new(&top, &bottom).expect("equal lengths");
            if g.top == top && g.bottom == bottom {
                x.add_term(g, c);
            }
        }
    }
    x
}

/// Canonical biwords of degree `d` over `1..n`.
pub fn generalized_permutations(n: usize, d: usize) -> Vec<GeneralizedPermutation> {
    let letters: Vec<(usize, usize)> = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        letters: &[(usize, usize)],
        start: usize,
        d: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<GeneralizedPermutation>,
    ) {
        if cur.len() == d {
            out.push(GeneralizedPermutation {
                top: cur.iter().map(|p| p.0).collect(),
                bottom: cur.iter().map(|p| p.1).collect(),
            });
            return;
        }
        for k in start..letters.len() {
            cur.push(letters[k]);
            rec(letters, k, d, cur, out);
            cur.pop();
        }
    }
    rec(&letters, 0, d, &mut cur, &mut out);
    out
}

/// Place permutation acting on row vectors: `e_{i_1…i_d}·w = e_{i_{w(1)}…i_{w(d)}}`.
pub fn place_operator(n: usize, w: &Permutation) -> RatMatrix {
    let d = w.degree();
    let ws = words(n, d);
    let mut m = RatMatrix::zeros(ws.len(), ws.len());
    for (a, i) in ws.iter().enumerate() {
        let j: Vec<usize> = (0..d).map(|k| i[w.apply(k)]).collect();
        m[(a, word_index(&j, n))] = Rational::one();
    }
    m
}

/// Image of a group algebra element under the place action.
pub fn place_algebra_operator(n: usize, x: &GroupAlgebraElement) -> RatMatrix {
    let size = n.pow(x.degree() as u32);
    let mut m = RatMatrix::zeros(size, size);
    for (w, c) in x.support() {
        m.add_scaled(&place_operator(n, w), c);
    }
    m
}

/// `g^{⊗d}` acting on row vectors.
pub fn tensor_power(g: &RatMatrix, d: usize) -> RatMatrix {
    let mut m = RatMatrix::identity(1);
    for _ in 0..d {
        m = m.kron(g);
    }
    m
}

/// A labelled idempotent of `S(n,d)`.
#[derive(Clone, Debug)]
pub struct LabeledIdempotent {
    pub label: Partition,
    pub xi: XiElement,
}

fn lab(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec())
}

fn signed_sum(n: usize, w: [usize; 3], signed: bool) -> XiElement {
    let mut e = XiElement::zero(n, 3);
    let s6 = Rational::new(1.into(), 6.into());
    for p in Permutation::all(3) {
        let bottom: Vec<usize> = (0..3).map(|t| w[p.apply(t)]).collect();
        let c = if signed && p.sign() < 0 { -s6.clone() } else { s6.clone() };
        e = e.add(&XiElement::xi(n, &w, &bottom).unwrap().scale(&c));
    }
    e
}

fn combo(n: usize, terms: &[(i64, &[usize], &[usize])], denom: i64) -> XiElement {
    let mut e = XiElement::zero(n, terms[0].1.len());
    for &(c, top, bottom) in terms {
        e = e.add(&XiElement::xi(n, top, bottom).unwrap().scale(&Rational::new(c.into(), denom.into())));
    }
    e
}

/// The complete sets of primitive orthogonal idempotents for `d ≤ 3`, in table order.
///
/// For `d = 3` the third `[2,1]` element is `⅓(ξ^{ijk}_{ijk} − ξ^{ijk}_{jki} + ξ^{ijk}_{ikj} − ξ^{ijk}_{jik})`.
pub fn schur_idempotents(n: usize, d: usize) -> Result<Vec<LabeledIdempotent>, SchurError> {
    let mut out = Vec::new();
    let mut push = |parts: &[usize], xi: XiElement| out.push(LabeledIdempotent { label: lab(parts), xi });
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    let triples: Vec<[usize; 3]> = (1..=n)
        .flat_map(|i| (i + 1..=n).flat_map(move |j| (j + 1..=n).map(move |k| [i, j, k])))
        .collect();
    match d {
        0 => push(&[], XiElement { n, d: 0, coeffs: BTreeMap::from([(GeneralizedPermutation::new(&[], &[])?, Rational::one())]) }),
        1 => {
            for i in 1..=n {
                push(&[1], XiElement::xi(n, &[i], &[i])?);
            }
        }
        2 => {
            for &(i, j) in &pairs {
                push(&[1, 1], combo(n, &[(1, &[i, j], &[i, j]), (-1, &[j, i], &[i, j])], 2));
            }
            for i in 1..=n {
                push(&[2], XiElement::xi(n, &[i, i], &[i, i])?);
            }
            for &(i, j) in &pairs {
                push(&[2], combo(n, &[(1, &[i, j], &[i, j]), (1, &[j, i], &[i, j])], 2));
            }
        }
        3 => {
            for &t in &triples {
                push(&[1, 1, 1], signed_sum(n, t, true));
            }
            for &(i, j) in &pairs {
                push(&[2, 1], combo(n, &[(2, &[i, i, j], &[i, i, j]), (-1, &[i, j, i], &[i, i, j])], 3));
                push(&[2, 1], combo(n, &[(2, &[i, j, j], &[i, j, j]), (-1, &[i, j, j], &[j, i, j])], 3));
            }
            for &[i, j, k] in &triples {
                let w = [i, j, k];
                push(
                    &[2, 1],
                    combo(n, &[(1, &w, &w), (-1, &w, &[j, k, i]), (1, &w, &[i, k, j]), (-1, &w, &[j, i, k])], 3),
                );
                push(
                    &[2, 1],
                    combo(n, &[(1, &w, &w), (-1, &w, &[i, k, j]), (1, &w, &[j, i, k]), (-1, &w, &[k, i, j])], 3),
                );
            }
            for i in 1..=n {
                push(&[3], XiElement::xi(n, &[i, i, i], &[i, i, i])?);
            }
            for &(i, j) in &pairs {
                push(&[3], combo(n, &[(1, &[i, i, j], &[i, i, j]), (1, &[i, j, i], &[i, i, j])], 3));
                push(&[3], combo(n, &[(1, &[i, j, j], &[i, j, j]), (1, &[i, j, j], &[j, i, j])], 3));
            }
            for &t in &triples {
                push(&[3], signed_sum(n, t, false));
            }
        }
        _ => return Err(SchurError::UnsupportedDegree(d)),
    }
    Ok(out)
}

/// The third `[2,1]` element of the degree-3 table exactly as typeset, whose first term
/// duplicates its third.
pub fn printed_triple_element(n: usize, [i, j, k]: [usize; 3]) -> XiElement {
    combo(n, &[(1, &[i, k, j], &[i, j, k]), (-1, &[i, j, k], &[j, k, i]), (1, &[i, j, k], &[i, k, j]), (-1, &[i, j, k], &[j, i, k])], 3)
}

/// Multiplicities `m_λ = (1/d!) Σ_w χ_λ(w)·tr(e·P_w)` of the irreducible place-permutation
/// modules in the image of `e`.
pub fn schur_weyl_multiplicities(n: usize, d: usize, e: &RatMatrix) -> Vec<(Partition, Rational)> {
    let ws = words(n, d);
    let perms = Permutation::all(d);
    let traces: Vec<Rational> = perms
        .iter()
        .map(|w| {
            let mut t = Rational::zero();
            for (a, i) in ws.iter().enumerate() {
                let j: Vec<usize> = (0..d).map(|k| i[w.apply(k)]).collect();
                t += &e[(word_index(&j, n), a)];
            }
            t
        })
        .collect();
    let df = Rational::from_integer(factorial(d));
    partitions_of(d, d)
        .into_iter()
        .map(|l| {
            let s: Rational = perms
                .iter()
                .zip(&traces)
                .map(|(w, t)| t * Rational::from_integer(symgroup_character(&l, &w.cycle_type()).unwrap().into()))
                .sum();
            (l, s / &df)
        })
        .collect()
}

/// The label of a primitive idempotent operator, or `None` when it is not primitive.
pub fn primitive_label(n: usize, d: usize, e: &RatMatrix) -> Option<Partition> {
    if &(e * e) != e {
        return None;
    }
    let m = schur_weyl_multiplicities(n, d, e);
    let ones: Vec<&Partition> = m.iter().filter(|(_, x)| x.is_one()).map(|(l, _)| l).collect();
    let rest_zero = m.iter().all(|(_, x)| x.is_one() || x.is_zero());
    (ones.len() == 1 && rest_zero).then(|| ones[0].clone())
}

/// Wedderburn decomposition of `S(n,d)` from character projections, weight idempotents and
/// Jucys–Murphy vectors.
pub fn schur_idempotents_general(
    n: usize,
    d: usize,
    seed: u64,
    budget: usize,
) -> Result<Vec<LabeledIdempotent>, SchurError> {
    let size = n.pow(d as u32);
    if size > budget {
        return Err(SchurError::Budget(size, budget));
    }
    let basis: Vec<RatMatrix> = generalized_permutations(n, d)
        .into_iter()
        .map(|g| xi_to_operator(&XiElement { n, d, coeffs: BTreeMap::from([(g, Rational::one())]) }))
        .collect();
    let alg = MatrixAlgebra::trusted(basis, RatMatrix::identity(size))?;
    let shapes: Vec<Partition> = partitions_of(d, n.min(d));
    let central: Vec<RatMatrix> = shapes.iter().map(|l| place_algebra_operator(n, &central_idempotent(l))).collect();
    let mut weight = RatMatrix::zeros(size, size);
    for (a, w) in words(n, d).iter().enumerate() {
        let mut content = vec![0usize; n];
        for &c in w {
            content[c] += 1;
        }
        weight[(a, a)] = Rational::from_integer(content.iter().fold(0i64, |acc, &c| acc * (d as i64 + 1) + c as i64).into());
    }
    let mut vectors = Vec::new();
    for l in &shapes {
        let t = Tableau::row_reading(l);
        let p = place_algebra_operator(n, &seminormal_idempotent(&t).expect("standard"));
        if let Some(r) = (0..size).find(|&r| p.row(r).iter().any(|x| !x.is_zero())) {
            vectors.push(p.row(r).to_vec());
        }
    }
    let hints = SplitHints { central: Some(central.clone()), commuting: vec![weight], vectors, generators: None };
    let label = |e: &RatMatrix| central.iter().position(|c| c == e).map(|i| shapes[i].to_string());
    let dec = decompose(&alg, &hints, &label, seed)?;
    let mut out = Vec::new();
    for b in &dec.blocks {
        let l: Partition = b.label.parse()?;
        for i in 0..b.size() {
            out.push(LabeledIdempotent { label: l.clone(), xi: operator_to_xi(n, d, &b.units[i][i]) });
        }
    }
    Ok(out)
}

/// `V_λ` realized as the image of a Young symmetrizer on `V^{⊗|λ|}` (row vectors).
#[derive(Clone, Debug)]
pub struct GlIrrep {
    pub shape: Partition,
    pub n: usize,
    /// Rows span the submodule, in reduced row echelon form.
    pub basis: RatMatrix,
}

impl GlIrrep {
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Matrix of `g` on the chosen basis: `basis·g^{⊗d} = act(g)·basis`.
    pub fn act(&self, g: &RatMatrix) -> RatMatrix {
        self.restrict(&tensor_power(g, self.shape.size()))
    }

    /// Restriction of an operator on `V^{⊗d}` preserving the submodule.
    pub fn restrict(&self, op: &RatMatrix) -> RatMatrix {
        coordinates(&self.basis, &(&self.basis * op)).expect("operator preserves the submodule")
    }
}

/// Coordinates of the rows of `v` in the rows of an RREF basis.
pub fn coordinates(basis: &RatMatrix, v: &RatMatrix) -> Option<RatMatrix> {
    let (_, pivots) = basis.rref();
    let mut out = RatMatrix::zeros(v.rows(), basis.rows());
    for r in 0..v.rows() {
        let mut rest = v.row(r).to_vec();
        for (k, &p) in pivots.iter().enumerate() {
            let c = rest[p].clone() / &basis[(k, p)];
            if c.is_zero() {
                continue;
            }
            for (x, b) in rest.iter_mut().zip(basis.row(k)) {
                *x -= &c * b;
            }
            out[(r, k)] = c;
        }
        if rest.iter().any(|x| !x.is_zero()) {
            return None;
        }
    }
    Some(out)
}

pub fn gl_irrep_realization(shape: &Partition, n: usize) -> Result<GlIrrep, SchurError> {
    dim_gl_irrep(shape, n)?;
    let y = place_algebra_operator(n, &young_symmetrizer(&Tableau::row_reading(shape)).expect("row reading is standard"));
    let (r, pivots) = y.rref();
    let basis = r.block(0, 0, pivots.len(), y.cols());
    Ok(GlIrrep { shape: shape.clone(), n, basis })
}

/// Basis `w_α = Σ_{distinct words of content α} e_word` of `Sym^m(V) ⊂ V^{⊗m}` (for `m = 2`:
/// `e_11, e_12 + e_21, e_22`), with dual functionals `c_α = e*_{sorted word}`; contents in
/// lexicographic order of sorted words.
pub fn symmetric_power_basis(n: usize, m: usize) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
    let ws = words(n, m);
    let mut sorted_words: Vec<Vec<usize>> = ws.iter().filter(|w| w.windows(2).all(|p| p[0] <= p[1])).cloned().collect();
    sorted_words.sort();
    let mut basis = Vec::new();
    let mut dual = Vec::new();
    for s in &sorted_words {
        let mut v = vec![Rational::zero(); ws.len()];
        for (a, w) in ws.iter().enumerate() {
            let mut cw = w.clone();
            cw.sort_unstable();
            if &cw == s {
                v[a] = Rational::one();
            }
        }
        let mut c = vec![Rational::zero(); ws.len()];
        c[word_index(s, n)] = Rational::one();
        basis.push(v);
        dual.push(c);
    }
    (basis, dual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn ops(t: &[LabeledIdempotent]) -> Vec<RatMatrix> {
        t.iter().map(|e| xi_to_operator(&e.xi)).collect()
    }

    fn binom(a: usize, b: usize) -> usize {
        (0..b).fold(1, |acc, k| acc * (a - k) / (k + 1))
    }

    #[test]
    fn xi_dimension_is_multiset_count() {
        for n in 1usize..=4 {
            for d in 0..=4 {
                if n.pow(d as u32) > 256 {
                    continue;
                }
                assert_eq!(generalized_permutations(n, d).len(), binom(n * n + d - 1, d));
            }
        }
    }

    #[test]
    fn xi_operators_commute_with_places_and_are_independent() {
        let (n, d) = (2, 3);
        let b: Vec<RatMatrix> = generalized_permutations(n, d)
            .into_iter()
            .map(|g| xi_to_operator(&XiElement { n, d, coeffs: BTreeMap::from([(g, Rational::one())]) }))
            .collect();
        let gens = [Permutation::transposition(3, 0, 1), Permutation::long_cycle(3)];
        for x in &b {
            for w in &gens {
                let p = place_operator(n, w);
                assert_eq!(x * &p, &p * x);
            }
            assert_eq!(operator_to_xi(n, d, x), operator_to_xi(n, d, x).mul(&operator_to_xi(n, d, &RatMatrix::identity(8))));
        }
        let flat: Vec<Vec<Rational>> = b.iter().map(|m| m.data().to_vec()).collect();
        assert_eq!(RatMatrix::from_rows(flat).unwrap().rank(), b.len());
    }

    #[test]
    fn xi_12_12_on_two_letters() {
        let x = xi_to_operator(&XiElement::xi(2, &[1, 2], &[1, 2]).unwrap());
        // e_12 ↔ index 1, e_21 ↔ index 2
        let mut expect = RatMatrix::zeros(4, 4);
        expect[(1, 1)] = int(1);
        expect[(2, 2)] = int(1);
        assert_eq!(x, expect);
        let one = xi_to_operator(&XiElement::xi(1, &[1, 1], &[1, 1]).unwrap());
        assert_eq!(one, RatMatrix::identity(1));
    }

    #[test]
    fn tables_are_complete_orthogonal_primitive() {
        for n in 1..=4 {
            for d in 0..=3 {
                let t = schur_idempotents(n, d).unwrap();
                let o = ops(&t);
                let size = n.pow(d as u32);
                let mut sum = RatMatrix::zeros(size, size);
                for (a, x) in o.iter().enumerate() {
                    sum = &sum + x;
                    for (b, y) in o.iter().enumerate() {
                        let p = x * y;
                        if a == b {
                            assert_eq!(&p, x);
                        } else {
                            assert!(p.is_zero(), "n={n} d={d} {a} {b}");
                        }
                    }
                    assert_eq!(primitive_label(n, d, x), Some(t[a].label.clone()), "n={n} d={d} {}", t[a].xi);
                }
                assert_eq!(sum, RatMatrix::identity(size));
                for l in partitions_of(d, n.min(d.max(1))) {
                    let count = t.iter().filter(|e| e.label == l).count();
                    assert_eq!(count, dim_gl_irrep(&l, n).unwrap());
                }
            }
        }
    }

    #[test]
    fn degree_two_counts() {
        for n in 2..=4 {
            let t = schur_idempotents(n, 2).unwrap();
            assert_eq!(t.iter().filter(|e| e.label == lab(&[1, 1])).count(), binom(n, 2));
            assert_eq!(t.iter().filter(|e| e.label == lab(&[2])).count(), n + binom(n, 2));
        }
        assert_eq!(schur_idempotents(1, 2).unwrap().len(), 1);
        assert!(matches!(schur_idempotents(2, 4), Err(SchurError::UnsupportedDegree(4))));
    }

    #[test]
    fn printed_triple_element_is_not_idempotent() {
        let e = xi_to_operator(&printed_triple_element(3, [1, 2, 3]));
        assert_ne!(&e * &e, e);
    }

    #[test]
    fn general_decomposition_matches_dimensions() {
        for (n, d) in [(1, 2), (2, 1), (2, 2), (3, 2), (2, 3)] {
            let t = schur_idempotents_general(n, d, 7, DEFAULT_TENSOR_BUDGET).unwrap();
            let o = ops(&t);
            let size = n.pow(d as u32);
            let mut sum = RatMatrix::zeros(size, size);
            for (x, e) in o.iter().zip(&t) {
                sum = &sum + x;
                assert_eq!(primitive_label(n, d, x), Some(e.label.clone()));
            }
            assert_eq!(sum, RatMatrix::identity(size));
            let mut total = 0;
            for l in partitions_of(d, n.min(d)) {
                let count = t.iter().filter(|e| e.label == l).count();
                assert_eq!(count, dim_gl_irrep(&l, n).unwrap());
                total += count * crate::partition::dim_symgroup_irrep(&l);
            }
            assert_eq!(total, size);
        }
        assert!(matches!(schur_idempotents_general(5, 6, 0, DEFAULT_TENSOR_BUDGET), Err(SchurError::Budget(..))));
    }

    #[test]
    fn exterior_square_realization() {
        let v = gl_irrep_realization(&lab(&[1, 1]), 3).unwrap();
        assert_eq!(v.dim(), 3);
        let g = RatMatrix::from_i64(3, 3, &[2, 1, 0, -1, 3, 4, 0, 5, 1]);
        let a = v.act(&g);
        let pairs = [(0, 1), (0, 2), (1, 2)];
        for (r, &(i, j)) in pairs.iter().enumerate() {
            for (c, &(k, l)) in pairs.iter().enumerate() {
                let w = &g[(i, k)] * &g[(j, l)] - &g[(i, l)] * &g[(j, k)];
                assert_eq!(a[(r, c)], w);
            }
        }
        let nat = gl_irrep_realization(&lab(&[1]), 3).unwrap();
        assert_eq!(nat.act(&g), g);
        let sym = gl_irrep_realization(&lab(&[2]), 2).unwrap();
        assert_eq!(sym.dim(), 3);
        assert!(gl_irrep_realization(&lab(&[1, 1, 1]), 2).is_err());
    }

    #[test]
    fn symmetric_power_duality() {
        let (b, c) = symmetric_power_basis(3, 2);
        assert_eq!(b.len(), 6);
        for (i, w) in b.iter().enumerate() {
            for (l, f) in c.iter().enumerate() {
                let s: Rational = w.iter().zip(f).map(|(x, y)| x * y).sum();
                assert_eq!(s, if i == l { int(1) } else { int(0) });
            }
        }
        let sym = gl_irrep_realization(&lab(&[2]), 3).unwrap();
        let w = RatMatrix::from_rows(b).unwrap();
        assert!(coordinates(&sym.basis, &w).is_some());
    }
}
