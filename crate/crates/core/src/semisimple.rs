//! Wedderburn data for split semisimple algebras given by a faithful matrix realization,
//! and idempotent splitting of endomorphism algebras.

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::poly::{minimal_polynomial, Poly};
use crate::linalg::{modular, RatMatrix, Rational};
use crate::seeded_rng;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("basis elements are linearly dependent")]
    Dependent,
    #[error("basis matrices have inconsistent shapes")]
    Shape,
    #[error("product of basis elements {0} and {1} leaves the span")]
    NotClosed(usize, usize),
    #[error("algebra has a radical of dimension {0}")]
    NonzeroRadical(usize),
    #[error("could not split a block of dimension {0} over the rationals")]
    NonSplit(usize),
    #[error("idempotents {0} and {1} span no matrix units")]
    InconsistentGrouping(usize, usize),
    #[error("unit element is not in the algebra")]
    NoUnit,
}

/// Subalgebra of `Mat_N(Q)` spanned by `basis`, with unit `one` (not necessarily `I_N`).
#[derive(Clone, Debug)]
pub struct MatrixAlgebra {
    n: usize,
    basis: Vec<RatMatrix>,
    one: RatMatrix,
    piv: Vec<usize>,
    inv: RatMatrix,
}

impl MatrixAlgebra {
    /// Checks independence, closure and that `one` is a two-sided unit in the span.
    pub fn new(basis: Vec<RatMatrix>, one: RatMatrix) -> Result<Self, AlgebraError> {
        let alg = Self::trusted(basis, one)?;
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let p = &alg.basis[i] * &alg.basis[j];
                if alg.coords(&p).is_none() {
                    return Err(AlgebraError::NotClosed(i, j));
                }
            }
        }
        for b in &alg.basis {
            if &(&alg.one * b) != b || &(b * &alg.one) != b {
                return Err(AlgebraError::NoUnit);
            }
        }
        Ok(alg)
    }

    /// Unital subalgebra of `Mat_N(Q)` with the identity as unit.
    pub fn with_identity(basis: Vec<RatMatrix>) -> Result<Self, AlgebraError> {
        let n = basis.first().map_or(0, |b| b.rows());
        Self::new(basis, RatMatrix::identity(n))
    }

    /// Constructor for bases known to be closed (group algebras, centralizers);
    /// only independence and unit membership are checked.
    pub fn trusted(basis: Vec<RatMatrix>, one: RatMatrix) -> Result<Self, AlgebraError> {
        let n = one.rows();
        if basis.iter().any(|b| b.shape() != (n, n)) || !one.is_square() {
            return Err(AlgebraError::Shape);
        }
        let k = basis.len();
        let flat = RatMatrix::from_vec(
            k,
            n * n,
            basis.iter().flat_map(|b| b.data().iter().cloned()).collect(),
        )
        .map_err(|_| AlgebraError::Shape)?;
        let (_, piv) = flat.rref();
        if piv.len() < k {
            return Err(AlgebraError::Dependent);
        }
        let inv = flat.select_cols(&piv).inverse().map_err(|_| AlgebraError::Dependent)?;
        let alg = MatrixAlgebra { n, basis, one, piv, inv };
        if alg.coords(&alg.one).is_none() {
            return Err(AlgebraError::NoUnit);
        }
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[RatMatrix] {
        &self.basis
    }

    pub fn one(&self) -> &RatMatrix {
        &self.one
    }

    pub fn element(&self, coords: &[Rational]) -> RatMatrix {
        let mut out = RatMatrix::zeros(self.n, self.n);
        for (c, b) in coords.iter().zip(&self.basis) {
            out.add_scaled(b, c);
        }
        out
    }

    /// Coordinates of `x` in the basis, or `None` when `x` is not in the span.
    pub fn coords(&self, x: &RatMatrix) -> Option<Vec<Rational>> {
        let c = self.coords_unchecked(x);
        (self.element(&c) == *x).then_some(c)
    }

    pub fn coords_unchecked(&self, x: &RatMatrix) -> Vec<Rational> {
        let sel: Vec<Rational> = self.piv.iter().map(|&p| x.data()[p].clone()).collect();
        let row = RatMatrix::row_vector(sel);
        (&row * &self.inv).into_data()
    }

    pub fn random_element(&self, rng: &mut ChaCha8Rng, height: i64) -> RatMatrix {
        let c: Vec<Rational> =
            (0..self.dim()).map(|_| Rational::from_integer(rng.gen_range(-height..=height).into())).collect();
        self.element(&c)
    }

    /// Kernel of the trace form `(x, y) ↦ tr(xy)`, as algebra elements.
    pub fn radical(&self) -> Vec<RatMatrix> {
        let k = self.dim();
        let mut gram = RatMatrix::zeros(k, k);
        for i in 0..k {
            for j in i..k {
                let t = trace_of_product(&self.basis[i], &self.basis[j]);
                gram[(i, j)] = t.clone();
                gram[(j, i)] = t;
            }
        }
        modular::left_kernel(&gram).iter().map(|c| self.element(c)).collect()
    }

    /// Basis of the center, computed against the given generators (or the full basis).
    pub fn center(&self, generators: Option<&[RatMatrix]>) -> Vec<RatMatrix> {
        let gens = generators.unwrap_or(&self.basis);
        let k = self.dim();
        let nn = self.n * self.n;
        let mut sys = RatMatrix::zeros(k, nn * gens.len());
        for (i, b) in self.basis.iter().enumerate() {
            for (g_i, g) in gens.iter().enumerate() {
                let c = &(b * g) - &(g * b);
                for (t, v) in c.data().iter().enumerate() {
                    sys[(i, g_i * nn + t)] = v.clone();
                }
            }
        }
        modular::left_kernel(&sys).iter().map(|c| self.element(c)).collect()
    }

    /// Spanning elements `f·b·f` reduced to a basis of the corner `fAf`.
    pub fn corner_basis(&self, f: &RatMatrix) -> Vec<RatMatrix> {
        independent(self.basis.iter().map(|b| &(f * b) * f))
    }

    /// Minimal polynomial of `x` inside the corner with unit `unit`.
    pub fn min_poly_in(&self, x: &RatMatrix, unit: &RatMatrix) -> Poly {
        let mut cur = unit.clone();
        let mut done = 0;
        minimal_polynomial(
            |k| {
                while done < k {
                    cur = &cur * x;
                    done += 1;
                }
                cur.data().to_vec()
            },
            self.n,
        )
    }
}

fn trace_of_product(a: &RatMatrix, b: &RatMatrix) -> Rational {
    let n = a.rows();
    let mut t = Rational::zero();
    for i in 0..n {
        for k in 0..n {
            let x = &a[(i, k)];
            if !x.is_zero() {
                let y = &b[(k, i)];
                if !y.is_zero() {
                    t += x * y;
                }
            }
        }
    }
    t
}

/// Drops elements dependent on earlier ones.
pub fn independent(items: impl IntoIterator<Item = RatMatrix>) -> Vec<RatMatrix> {
    let mut out: Vec<RatMatrix> = Vec::new();
    let mut echelon: Vec<(usize, Vec<Rational>)> = Vec::new();
    for m in items {
        let mut v = m.data().to_vec();
        for (p, row) in &echelon {
            let f = v[*p].clone();
            if f.is_zero() {
                continue;
            }
            for (a, b) in v.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[p].recip();
            for a in v.iter_mut() {
                *a *= &inv;
            }
            echelon.push((p, v));
            out.push(m);
        }
    }
    out
}

pub fn eval_in(p: &Poly, x: &RatMatrix, unit: &RatMatrix) -> RatMatrix {
    let mut acc = RatMatrix::zeros(x.rows(), x.cols());
    for c in p.coeffs().iter().rev() {
        acc = &acc * x;
        acc.add_scaled(unit, c);
    }
    acc
}

/// Projections onto the eigenspaces of `x` in the corner with unit `unit`, when its
/// minimal polynomial splits into distinct rational linear factors.
pub fn eigen_projections(alg: &MatrixAlgebra, x: &RatMatrix, unit: &RatMatrix) -> Option<Vec<(Rational, RatMatrix)>> {
    let mp = alg.min_poly_in(x, unit);
    let roots = mp.rational_roots();
    if roots.len() != mp.degree().unwrap_or(0) {
        return None;
    }
    let mut out = Vec::new();
    for (i, r) in roots.iter().enumerate() {
        let mut num = Poly::one();
        let mut den = Rational::one();
        for (j, s) in roots.iter().enumerate() {
            if i != j {
                num = num.mul(&Poly::linear(s));
                den *= r - s;
            }
        }
        let p = num.mul(&Poly::constant(den.recip()));
        out.push((r.clone(), eval_in(&p, x, unit)));
    }
    Some(out)
}

/// Splits the corner unit along the generalized null space of `y` (Fitting's lemma).
/// Returns `None` when `y` is invertible or nilpotent in the corner.
pub fn fitting_split(alg: &MatrixAlgebra, y: &RatMatrix, unit: &RatMatrix) -> Option<(RatMatrix, RatMatrix)> {
    let mp = alg.min_poly_in(y, unit);
    let a = mp.t_valuation();
    let g = mp.divrem(&Poly::monomial(a)).0;
    if a == 0 || g.degree() == Some(0) {
        return None;
    }
    let (_, _, w) = Poly::monomial(a).xgcd(&g);
    let e0 = eval_in(&w.mul(&g), y, unit);
    let e1 = unit - &e0;
    Some((e0, e1))
}

/// Idempotent lifting `e ← 3e² − 2e³`, iterated until stable.
pub fn lift_idempotent(e: &RatMatrix, max_steps: usize) -> Option<RatMatrix> {
    let mut x = e.clone();
    for _ in 0..max_steps {
        let x2 = &x * &x;
        if x2 == x {
            return Some(x);
        }
        let x3 = &x2 * &x;
        x = &x2.scale(&Rational::from_integer(3.into())) - &x3.scale(&Rational::from_integer(2.into()));
    }
    None
}

#[derive(Clone, Debug)]
pub struct Block {
    pub label: String,
    pub central: RatMatrix,
    /// `units[i][j]` is e^{ij}; `units[i][i]` are the primitive idempotents.
    pub units: Vec<Vec<RatMatrix>>,
}

impl Block {
    pub fn size(&self) -> usize {
        self.units.len()
    }
}

#[derive(Clone, Debug)]
pub struct SemisimpleDecomposition {
    pub blocks: Vec<Block>,
}

impl SemisimpleDecomposition {
    pub fn central_idempotents(&self) -> Vec<(&str, &RatMatrix)> {
        self.blocks.iter().map(|b| (b.label.as_str(), &b.central)).collect()
    }

    pub fn primitive_idempotents(&self) -> Vec<(&str, usize, &RatMatrix)> {
        self.blocks
            .iter()
            .flat_map(|b| (0..b.size()).map(move |i| (b.label.as_str(), i, &b.units[i][i])))
            .collect()
    }

    pub fn unit(&self, block: usize, i: usize, j: usize) -> &RatMatrix {
        &self.blocks[block].units[i][j]
    }
}

/// Extra structure that helps split blocks.
#[derive(Clone, Debug, Default)]
pub struct SplitHints {
    /// Known central idempotents (replaces the center computation).
    pub central: Option<Vec<RatMatrix>>,
    /// Pairwise commuting elements with rational eigenvalues.
    pub commuting: Vec<RatMatrix>,
    /// Row vectors of the realization generating small submodules.
    pub vectors: Vec<Vec<Rational>>,
    /// Generators of the algebra, used for the center computation.
    pub generators: Option<Vec<RatMatrix>>,
}

pub const RETRY_BUDGET: usize = 20;

/// Full Wedderburn decomposition of a split semisimple algebra.
pub fn decompose(
    alg: &MatrixAlgebra,
    hints: &SplitHints,
    label: &dyn Fn(&RatMatrix) -> Option<String>,
    seed: u64,
) -> Result<SemisimpleDecomposition, AlgebraError> {
    let mut rng = seeded_rng(seed);
    let centrals = match &hints.central {
        Some(c) => c.clone(),
        None => {
            let rad = alg.radical();
            if !rad.is_empty() {
                return Err(AlgebraError::NonzeroRadical(rad.len()));
            }
            central_idempotents(alg, hints.generators.as_deref(), &mut rng)?
        }
    };
    let mut blocks = Vec::new();
    for (bi, e) in centrals.iter().enumerate() {
        let dim = alg.corner_basis(e).len();
        let m = (dim as f64).sqrt().round() as usize;
        if m * m != dim {
            return Err(AlgebraError::NonSplit(dim));
        }
        let prims = split_to_count(alg, e, m, hints, &mut rng)?;
        let units = matrix_units_from(&prims, alg)?;
        let name = label(e).unwrap_or_else(|| format!("dim{m}#{bi}"));
        blocks.push(Block { label: name, central: e.clone(), units });
    }
    Ok(SemisimpleDecomposition { blocks })
}

fn central_idempotents(
    alg: &MatrixAlgebra,
    generators: Option<&[RatMatrix]>,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<RatMatrix>, AlgebraError> {
    let z = alg.center(generators);
    if z.len() == 1 {
        return Ok(vec![alg.one.clone()]);
    }
    for _ in 0..RETRY_BUDGET {
        let mut x = RatMatrix::zeros(alg.n, alg.n);
        for b in &z {
            x.add_scaled(b, &Rational::from_integer(rng.gen_range(-20i64..=20).into()));
        }
        if let Some(ps) = eigen_projections(alg, &x, &alg.one) {
            if ps.len() == z.len() {
                return Ok(ps.into_iter().map(|(_, p)| p).collect());
            }
        }
    }
    Err(AlgebraError::NonSplit(z.len()))
}

/// Refines `e` into `m` orthogonal idempotents (primitive when `eAe ≅ Mat_m`).
fn split_to_count(
    alg: &MatrixAlgebra,
    e: &RatMatrix,
    m: usize,
    hints: &SplitHints,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<RatMatrix>, AlgebraError> {
    let mut parts = vec![e.clone()];
    for h in &hints.commuting {
        if parts.len() == m {
            break;
        }
        let mut next = Vec::new();
        for f in &parts {
            let hf = &(h * f) * f;
            match eigen_projections(alg, &hf, f) {
                Some(ps) => next.extend(ps.into_iter().map(|(_, p)| p).filter(|p| !p.is_zero())),
                None => next.push(f.clone()),
            }
        }
        parts = next;
    }
    let mut done = Vec::new();
    let mut todo = parts;
    while let Some(f) = todo.pop() {
        if done.len() + todo.len() + 1 >= m {
            done.push(f);
            continue;
        }
        let cb = alg.corner_basis(&f);
        if cb.len() == 1 {
            done.push(f);
            continue;
        }
        match split_corner(alg, &f, &cb, hints, rng) {
            Some((a, b)) => {
                todo.push(a);
                todo.push(b);
            }
            None => return Err(AlgebraError::NonSplit(cb.len())),
        }
    }
    if done.len() != m {
        return Err(AlgebraError::NonSplit(m * m));
    }
    order_idempotents(&mut done);
    Ok(done)
}

/// Deterministic order: by the position of the first nonzero entry, then entries.
fn order_idempotents(v: &mut [RatMatrix]) {
    v.sort_by(|a, b| {
        let ka = a.data().iter().position(|x| !x.is_zero());
        let kb = b.data().iter().position(|x| !x.is_zero());
        ka.cmp(&kb).then_with(|| a.data().cmp(b.data()))
    });
}

/// One nontrivial orthogonal splitting of the corner unit `f`.
pub fn split_corner(
    alg: &MatrixAlgebra,
    f: &RatMatrix,
    corner: &[RatMatrix],
    hints: &SplitHints,
    rng: &mut ChaCha8Rng,
) -> Option<(RatMatrix, RatMatrix)> {
    // annihilators of vectors in the image of f
    let mut vecs: Vec<Vec<Rational>> = hints
        .vectors
        .iter()
        .map(|v| (&RatMatrix::row_vector(v.clone()) * f).into_data())
        .collect();
    for j in 0..f.rows() {
        vecs.push(f.row(j).to_vec());
    }
    for v in vecs {
        if v.iter().all(|x| x.is_zero()) {
            continue;
        }
        let vr = RatMatrix::row_vector(v);
        let images: Vec<Vec<Rational>> = corner.iter().map(|b| (&vr * b).into_data()).collect();
        let sys = RatMatrix::from_rows(images).expect("rectangular");
        let ann = modular::left_kernel(&sys);
        if ann.is_empty() {
            continue;
        }
        let lbasis: Vec<RatMatrix> = ann
            .iter()
            .map(|c| {
                let mut x = RatMatrix::zeros(f.rows(), f.cols());
                for (ci, b) in c.iter().zip(corner) {
                    x.add_scaled(b, ci);
                }
                x
            })
            .collect();
        for _ in 0..4 {
            let mut y = RatMatrix::zeros(f.rows(), f.cols());
            for b in &lbasis {
                y.add_scaled(b, &Rational::from_integer(rng.gen_range(-9i64..=9).into()));
            }
            if let Some(s) = fitting_split(alg, &y, f) {
                return Some(s);
            }
        }
    }
    // random elements with a rational eigenvalue
    for _ in 0..RETRY_BUDGET {
        let mut y = RatMatrix::zeros(f.rows(), f.cols());
        for b in corner {
            y.add_scaled(b, &Rational::from_integer(rng.gen_range(-3i64..=3).into()));
        }
        for r in alg.min_poly_in(&y, f).rational_roots() {
            let shifted = &y - &f.scale(&r);
            if let Some(s) = fitting_split(alg, &shifted, f) {
                return Some(s);
            }
        }
    }
    None
}

/// Matrix units `e^{ij}` for primitive idempotents of one block, with `e^{11} = idems[0]`.
pub fn matrix_units_from(idems: &[RatMatrix], alg: &MatrixAlgebra) -> Result<Vec<Vec<RatMatrix>>, AlgebraError> {
    let m = idems.len();
    let e1 = &idems[0];
    let mut down = vec![e1.clone()]; // e^{p1}
    let mut up = vec![e1.clone()]; // e^{1p}
    for (p, ep) in idems.iter().enumerate().skip(1) {
        let x = alg
            .basis
            .iter()
            .map(|b| &(ep * b) * e1)
            .find(|x| !x.is_zero())
            .ok_or(AlgebraError::InconsistentGrouping(p, 0))?;
        let y = alg
            .basis
            .iter()
            .map(|b| &(e1 * b) * ep)
            .find(|y| !(y * &x).is_zero())
            .ok_or(AlgebraError::InconsistentGrouping(0, p))?;
        let yx = &y * &x;
        let lambda = scalar_multiple(&yx, e1).ok_or(AlgebraError::InconsistentGrouping(0, p))?;
        down.push(x);
        up.push(y.scale(&lambda.recip()));
    }
    let mut units = vec![vec![RatMatrix::zeros(0, 0); m]; m];
    for i in 0..m {
        for j in 0..m {
            units[i][j] = if i == j { idems[i].clone() } else { &down[i] * &up[j] };
        }
    }
    Ok(units)
}

/// `λ` with `a = λ·b`, if it exists and `b ≠ 0`.
pub fn scalar_multiple(a: &RatMatrix, b: &RatMatrix) -> Option<Rational> {
    let k = b.data().iter().position(|x| !x.is_zero())?;
    let l = &a.data()[k] / &b.data()[k];
    (&b.scale(&l) == a).then_some(l)
}

/// Complete orthogonal idempotents of an endomorphism algebra, each primitive
/// (its corner is local: dimension minus radical dimension equals one).
pub fn idempotents_in_end(alg: &MatrixAlgebra, hints: &SplitHints, seed: u64) -> Result<Vec<RatMatrix>, AlgebraError> {
    let mut rng = seeded_rng(seed);
    let mut done = Vec::new();
    let mut todo = vec![alg.one.clone()];
    while let Some(f) = todo.pop() {
        let cb = alg.corner_basis(&f);
        let corner = MatrixAlgebra::trusted(cb.clone(), f.clone())?;
        if cb.len() - corner.radical().len() == 1 {
            done.push(f);
            continue;
        }
        match split_corner(alg, &f, &cb, hints, &mut rng) {
            Some((a, b)) => {
                todo.push(a);
                todo.push(b);
            }
            None => return Err(AlgebraError::NonSplit(cb.len())),
        }
    }
    order_idempotents(&mut done);
    Ok(done)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat};

    fn unit(n: usize, i: usize, j: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(n, n);
        m[(i, j)] = int(1);
        m
    }

    fn full_matrix_algebra(n: usize) -> MatrixAlgebra {
        let basis = (0..n * n).map(|k| unit(n, k / n, k % n)).collect();
        MatrixAlgebra::with_identity(basis).unwrap()
    }

    fn check_units(d: &SemisimpleDecomposition, one: &RatMatrix) {
        let mut sum = RatMatrix::zeros(one.rows(), one.cols());
        for b in &d.blocks {
            let m = b.size();
            for i in 0..m {
                for j in 0..m {
                    for k in 0..m {
                        for l in 0..m {
                            let p = &b.units[i][j] * &b.units[k][l];
                            if j == k {
                                assert_eq!(p, b.units[i][l]);
                            } else {
                                assert!(p.is_zero());
                            }
                        }
                    }
                }
                sum = &sum + &b.units[i][i];
            }
        }
        assert_eq!(&sum, one);
    }

    #[test]
    fn radical_examples() {
        assert!(full_matrix_algebra(2).radical().is_empty());
        let upper = MatrixAlgebra::with_identity(vec![unit(2, 0, 0), unit(2, 0, 1), unit(2, 1, 1)]).unwrap();
        assert_eq!(upper.radical(), vec![unit(2, 0, 1)]);
        let fields = MatrixAlgebra::with_identity(vec![unit(2, 0, 0), unit(2, 1, 1)]).unwrap();
        assert!(fields.radical().is_empty());
    }

    #[test]
    fn closure_is_checked() {
        let bad = MatrixAlgebra::new(vec![RatMatrix::identity(2), unit(2, 0, 1), unit(2, 1, 0)], RatMatrix::identity(2));
        assert!(matches!(bad, Err(AlgebraError::NotClosed(..))));
    }

    #[test]
    fn full_matrix_algebra_splits() {
        for n in 1..=3 {
            let alg = full_matrix_algebra(n);
            let d = decompose(&alg, &SplitHints::default(), &|_| None, 7).unwrap();
            assert_eq!(d.blocks.len(), 1);
            assert_eq!(d.blocks[0].size(), n);
            check_units(&d, alg.one());
        }
    }

    #[test]
    fn scrambled_product_recovers_block_sizes() {
        // Mat_1 x Mat_2 inside Mat_3, conjugated by a fixed invertible matrix
        let p = RatMatrix::from_i64(3, 3, &[1, 2, 0, 0, 1, 3, 1, 0, 1]);
        let pi = p.inverse().unwrap();
        let mut basis = vec![unit(3, 0, 0)];
        for i in 1..3 {
            for j in 1..3 {
                basis.push(unit(3, i, j));
            }
        }
        let basis = basis.iter().map(|b| &(&pi * b) * &p).collect();
        let alg = MatrixAlgebra::with_identity(basis).unwrap();
        let d = decompose(&alg, &SplitHints::default(), &|_| None, 3).unwrap();
        let mut sizes: Vec<usize> = d.blocks.iter().map(|b| b.size()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2]);
        check_units(&d, alg.one());
    }

    #[test]
    fn endomorphism_splitting() {
        // End of k^2 as a module over the diagonal algebra: two projections
        let alg = MatrixAlgebra::with_identity(vec![unit(2, 0, 0), unit(2, 1, 1)]).unwrap();
        let e = idempotents_in_end(&alg, &SplitHints::default(), 1).unwrap();
        assert_eq!(e, vec![unit(2, 0, 0), unit(2, 1, 1)]);
        // a local algebra: identity only
        let local = MatrixAlgebra::with_identity(vec![RatMatrix::identity(2), unit(2, 0, 1)]).unwrap();
        assert_eq!(idempotents_in_end(&local, &SplitHints::default(), 1).unwrap(), vec![RatMatrix::identity(2)]);
    }

    #[test]
    fn newton_lift() {
        let e = RatMatrix::from_rows(vec![vec![int(1), rat(1, 2)], vec![int(0), int(0)]]).unwrap();
        assert_eq!(lift_idempotent(&e, 10).unwrap(), e);
    }
}
