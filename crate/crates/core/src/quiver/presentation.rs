//! Projective presentations over path algebras of acyclic quivers.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{Quiver, QuiverError, Representation};
use crate::linalg::{RatMatrix, Rational};

/// A path given by its start vertex and arrow indices (empty for the trivial path).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { start: v, arrows: Vec::new() }
    }

    pub fn arrow(q: &Quiver, a: usize) -> Self {
        Path { start: q.arrows()[a].tail, arrows: vec![a] }
    }

    pub fn end(&self, q: &Quiver) -> usize {
        self.arrows.last().map_or(self.start, |&a| q.arrows()[a].head)
    }
}

/// Rational linear combination of paths, normalized (sorted, no zero terms).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PathComb(pub BTreeMap<Path, Rational>);

impl PathComb {
    pub fn zero() -> Self {
        PathComb(BTreeMap::new())
    }

    pub fn term(c: Rational, p: Path) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(p, c);
        }
        PathComb(m)
    }

    pub fn add_term(&mut self, c: Rational, p: Path) {
        let e = self.0.entry(p.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&p);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_length(&self) -> usize {
        self.0.keys().map(|p| p.arrows.len()).max().unwrap_or(0)
    }
}

/// Morphism `⊕_r P_{p1[r]} → ⊕_c P_{p0[c]}` given by a matrix of path combinations;
/// entry (r, c) consists of paths from `p0[c]` to `p1[r]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivePresentation {
    pub quiver: Arc<Quiver>,
    pub p1: Vec<usize>,
    pub p0: Vec<usize>,
    pub entries: Vec<Vec<PathComb>>,
}

impl ProjectivePresentation {
    /// The map `P_1(x) → P_0(x)` on the path bases at vertex `x`.
    pub fn matrix_at(&self, x: usize) -> RatMatrix {
        let q = &*self.quiver;
        let row_paths: Vec<Vec<Vec<usize>>> = self.p1.iter().map(|&w| q.paths(w, x)).collect();
        let col_paths: Vec<Vec<Vec<usize>>> = self.p0.iter().map(|&w| q.paths(w, x)).collect();
        let mut col_off = vec![0];
        for c in &col_paths {
            col_off.push(col_off.last().unwrap() + c.len());
        }
        let rows: usize = row_paths.iter().map(|r| r.len()).sum();
        let mut m = RatMatrix::zeros(rows, *col_off.last().unwrap());
        let mut r0 = 0;
        for (r, rp) in row_paths.iter().enumerate() {
            for (k, p) in rp.iter().enumerate() {
                for (c, comb) in self.entries[r].iter().enumerate() {
                    for (qp, coef) in &comb.0 {
                        let mut full = qp.arrows.clone();
                        full.extend(p);
                        let j = col_paths[c].iter().position(|z| *z == full).expect("composable path");
                        m[(r0 + k, col_off[c] + j)] += coef;
                    }
                }
            }
            r0 += rp.len();
        }
        m
    }

    /// `P_0 = ⊕ P_{p0[c]}` as a representation.
    pub fn p0_rep(&self) -> Representation {
        let parts: Vec<Representation> = self.p0.iter().map(|&w| Representation::projective(self.quiver.clone(), w)).collect();
        if parts.is_empty() {
            return Representation::zero(self.quiver.clone(), vec![0; self.quiver.num_vertices()]);
        }
        Representation::direct_sum(&parts.iter().collect::<Vec<_>>()).expect("same quiver")
    }

    /// The cokernel representation.
    pub fn cokernel(&self) -> Representation {
        let q = &*self.quiver;
        let p0 = self.p0_rep();
        let reduced: Vec<(RatMatrix, Vec<usize>, Vec<usize>)> = (0..q.num_vertices())
            .map(|x| {
                let (r, piv) = self.matrix_at(x).rref();
                let free: Vec<usize> = (0..r.cols()).filter(|c| !piv.contains(c)).collect();
                (r, piv, free)
            })
            .collect();
        let dims = reduced.iter().map(|(_, _, f)| f.len()).collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let (_, _, ft) = &reduced[a.tail];
                let (rh, ph, fh) = &reduced[a.head];
                let mut out = RatMatrix::zeros(ft.len(), fh.len());
                for (i, &j) in ft.iter().enumerate() {
                    let mut v = p0.map(ai).row(j).to_vec();
                    for (k, &pc) in ph.iter().enumerate() {
                        let f = v[pc].clone();
                        if f.is_zero() {
                            continue;
                        }
                        for (x, y) in v.iter_mut().zip(rh.row(k)) {
                            if !y.is_zero() {
                                *x -= &f * y;
                            }
                        }
                    }
                    for (jj, &c) in fh.iter().enumerate() {
                        out[(i, jj)] = v[c].clone();
                    }
                }
                out
            })
            .collect();
        Representation::new(self.quiver.clone(), dims, maps).expect("cokernel shapes")
    }

    pub fn max_path_length(&self) -> usize {
        self.entries.iter().flatten().map(|c| c.max_length()).max().unwrap_or(0)
    }
}

/// `0 → ⊕_a α(ta)·P_{ha} → ⊕_v α(v)·P_v → M → 0`.
///
/// Columns are (v, i) in vertex order; rows are (a, i) in arrow order. Row (a, i) has the
/// arrow `a` in column (ta, i) and `−M(a)[i][j]` times the trivial path in column (ha, j).
pub fn canonical_resolution(m: &Representation) -> Result<ProjectivePresentation, QuiverError> {
    let q = m.quiver().clone();
    if !q.is_acyclic() {
        return Err(QuiverError::Cyclic);
    }
    let d = m.dims();
    let mut col_off = vec![0];
    let mut p0 = Vec::new();
    for (v, &k) in d.iter().enumerate() {
        p0.extend(std::iter::repeat(v).take(k));
        col_off.push(col_off.last().unwrap() + k);
    }
    let mut p1 = Vec::new();
    let mut entries = Vec::new();
    for (ai, a) in q.arrows().iter().enumerate() {
        for i in 0..d[a.tail] {
            p1.push(a.head);
            let mut row = vec![PathComb::zero(); p0.len()];
            row[col_off[a.tail] + i] = PathComb::term(Rational::one(), Path::arrow(&q, ai));
            for j in 0..d[a.head] {
                let x = &m.map(ai)[(i, j)];
                if !x.is_zero() {
                    row[col_off[a.head] + j] = PathComb::term(-x, Path::trivial(a.head));
                }
            }
            entries.push(row);
        }
    }
    Ok(ProjectivePresentation { quiver: q, p1, p0, entries })
}

/// The map `P_0(x) → M_x` of the canonical resolution.
pub fn augmentation_at(m: &Representation, x: usize) -> RatMatrix {
    let q = m.quiver();
    let mut blocks = Vec::new();
    for (v, &k) in m.dims().iter().enumerate() {
        for i in 0..k {
            for p in q.paths(v, x) {
                blocks.push(m.path_map(v, &p).row(i).to_vec());
            }
        }
    }
    if blocks.is_empty() {
        return RatMatrix::zeros(0, m.dims()[x]);
    }
    RatMatrix::from_rows(blocks).expect("rectangular")
}

/// Exactness of the canonical resolution at every vertex.
pub fn resolution_is_exact(m: &Representation, pres: &ProjectivePresentation) -> bool {
    (0..m.quiver().num_vertices()).all(|x| {
        let d1 = pres.matrix_at(x);
        let eps = augmentation_at(m, x);
        let comp_zero = (&d1 * &eps).is_zero();
        let inj = d1.rank() == d1.rows();
        let surj = eps.rank() == m.dims()[x];
        comp_zero && inj && surj && d1.cols() == d1.rows() + m.dims()[x]
    })
}
