//! Morphism spaces, Ext dimensions, isomorphism tests and Krull-Schmidt splitting.

use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;

use super::{Quiver, Representation};
use crate::linalg::{modular, RatMatrix, Rational};
use crate::seeded_rng;
use crate::semisimple::{idempotents_in_end, AlgebraError, MatrixAlgebra, SplitHints};

/// The linear map whose left kernel is Hom(M, N).
///
/// Rows are indexed by (v, i, j) for the entries `f_v[i][j]`, vertex by vertex; columns by
/// (a, i, j) for the entries of `f_t N(a) − M(a) f_h`. When ⟨dim M, dim N⟩ = 0 it is square.
pub fn phi(m: &Representation, n: &Representation) -> RatMatrix {
    let q = m.quiver();
    let (md, nd) = (m.dims(), n.dims());
    let mut row_off = vec![0usize; md.len() + 1];
    for v in 0..md.len() {
        row_off[v + 1] = row_off[v] + md[v] * nd[v];
    }
    let mut col_off = vec![0usize; q.num_arrows() + 1];
    for (i, a) in q.arrows().iter().enumerate() {
        col_off[i + 1] = col_off[i] + md[a.tail] * nd[a.head];
    }
    let mut out = RatMatrix::zeros(row_off[md.len()], col_off[q.num_arrows()]);
    for (ai, a) in q.arrows().iter().enumerate() {
        let (t, h) = (a.tail, a.head);
        let (ma, na) = (m.map(ai), n.map(ai));
        for i in 0..md[t] {
            for j in 0..nd[h] {
                let col = col_off[ai] + i * nd[h] + j;
                for k in 0..nd[t] {
                    let x = &na[(k, j)];
                    if !x.is_zero() {
                        out[(row_off[t] + i * nd[t] + k, col)] += x;
                    }
                }
                for k in 0..md[h] {
                    let x = &ma[(i, k)];
                    if !x.is_zero() {
                        out[(row_off[h] + k * nd[h] + j, col)] -= x;
                    }
                }
            }
        }
    }
    out
}

fn unflatten(v: &[Rational], m: &[usize], n: &[usize]) -> Vec<RatMatrix> {
    let mut off = 0;
    m.iter()
        .zip(n)
        .map(|(&r, &c)| {
            let blk = RatMatrix::from_vec(r, c, v[off..off + r * c].to_vec()).expect("block");
            off += r * c;
            blk
        })
        .collect()
}

fn flatten(f: &[RatMatrix]) -> Vec<Rational> {
    f.iter().flat_map(|b| b.data().iter().cloned()).collect()
}

/// Basis of Hom(M, N) as tuples `(f_v)`, with `M(a)·f_{ha} = f_{ta}·N(a)` for every arrow.
/// The basis is in reduced echelon form on the flattened entries.
pub fn hom_space(m: &Representation, n: &Representation) -> Vec<Vec<RatMatrix>> {
    assert_eq!(m.quiver(), n.quiver(), "representations on different quivers");
    let q = m.quiver();
    let (md, nd) = (m.dims(), n.dims());
    let total: usize = md.iter().zip(nd).map(|(a, b)| a * b).sum();
    if total == 0 {
        return Vec::new();
    }
    let cost_src = reduced_unknowns(q, md, nd, true);
    let cost_snk = reduced_unknowns(q, md, nd, false);
    let raw: Vec<Vec<RatMatrix>> = if q.is_acyclic() && cost_src.min(cost_snk) < total {
        if cost_src <= cost_snk {
            eliminate_sources(m, n)
        } else {
            let op = Arc::new(q.opposite());
            eliminate_sources(&n.transpose(op.clone()), &m.transpose(op))
                .into_iter()
                .map(|g| g.iter().map(|x| x.transpose()).collect())
                .collect()
        }
    } else {
        modular::left_kernel(&phi(m, n)).iter().map(|v| unflatten(v, md, nd)).collect()
    };
    if raw.is_empty() {
        return raw;
    }
    let flat = RatMatrix::from_rows(raw.iter().map(|f| flatten(f)).collect()).expect("rectangular");
    let (r, piv) = flat.rref();
    (0..piv.len()).map(|i| unflatten(r.row(i), md, nd)).collect()
}

fn reduced_unknowns(q: &Quiver, m: &[usize], n: &[usize], sources: bool) -> usize {
    (0..q.num_vertices())
        .map(|v| {
            let drop = if sources { q.is_source(v) } else { q.is_sink(v) };
            if drop {
                0
            } else {
                m[v] * n[v]
            }
        })
        .sum()
}

struct SourceData {
    heads: Vec<(usize, usize, usize)>, // (arrow, head, column offset in Ncat)
    kernel: RatMatrix,                 // right kernel of Ncat, columns are kernel vectors
    left: Vec<Vec<Rational>>,          // left kernel of Ncat
    rows_i: Vec<usize>,
    cols_j: Vec<usize>,
    cinv: RatMatrix,
}

fn source_data(q: &Quiver, n: &Representation, u: usize) -> SourceData {
    let outs = q.out_arrows(u);
    let mut heads = Vec::new();
    let mut off = 0;
    for &a in &outs {
        let h = q.arrows()[a].head;
        heads.push((a, h, off));
        off += n.dims()[h];
    }
    let blocks: Vec<&RatMatrix> = outs.iter().map(|&a| n.map(a)).collect();
    let ncat = if blocks.is_empty() {
        RatMatrix::zeros(n.dims()[u], 0)
    } else {
        RatMatrix::hstack(&blocks).expect("same rows")
    };
    let (_, cols_j) = ncat.rref();
    let (_, rows_i) = ncat.transpose().rref();
    let cinv = ncat.select_rows(&rows_i).select_cols(&cols_j).inverse().expect("independent rows and columns");
    let kb = ncat.right_kernel_basis();
    let mut kernel = RatMatrix::zeros(ncat.cols(), kb.len());
    for (c, v) in kb.iter().enumerate() {
        for (r, x) in v.iter().enumerate() {
            kernel[(r, c)] = x.clone();
        }
    }
    let left = modular::left_kernel(&ncat);
    SourceData { heads, kernel, left, rows_i, cols_j, cinv }
}

/// Hom(M, N) with the maps at sources solved for in terms of the others.
fn eliminate_sources(m: &Representation, n: &Representation) -> Vec<Vec<RatMatrix>> {
    let q = m.quiver();
    let (md, nd) = (m.dims(), n.dims());
    let nv = q.num_vertices();
    let is_src: Vec<bool> = (0..nv).map(|v| q.is_source(v)).collect();
    let mut off = vec![usize::MAX; nv];
    let mut unknowns = 0;
    for v in 0..nv {
        if !is_src[v] {
            off[v] = unknowns;
            unknowns += md[v] * nd[v];
        }
    }
    let srcs: Vec<(usize, SourceData)> =
        (0..nv).filter(|&v| is_src[v] && md[v] > 0).map(|u| (u, source_data(q, n, u))).collect();
    let mut cols: Vec<Vec<(usize, Rational)>> = Vec::new();
    for (ai, a) in q.arrows().iter().enumerate() {
        let (t, h) = (a.tail, a.head);
        if is_src[t] {
            continue;
        }
        let (ma, na) = (m.map(ai), n.map(ai));
        for i in 0..md[t] {
            for j in 0..nd[h] {
                let mut col = Vec::new();
                for k in 0..nd[t] {
                    let x = &na[(k, j)];
                    if !x.is_zero() {
                        col.push((off[t] + i * nd[t] + k, x.clone()));
                    }
                }
                for k in 0..md[h] {
                    let x = &ma[(i, k)];
                    if !x.is_zero() {
                        col.push((off[h] + k * nd[h] + j, -x));
                    }
                }
                cols.push(col);
            }
        }
    }
    for (u, sd) in &srcs {
        for i in 0..md[*u] {
            for c in 0..sd.kernel.cols() {
                let mut col = Vec::new();
                for &(a, h, o) in &sd.heads {
                    let ma = m.map(a);
                    for k in 0..md[h] {
                        let x = &ma[(i, k)];
                        if x.is_zero() {
                            continue;
                        }
                        for j in 0..nd[h] {
                            let kv = &sd.kernel[(o + j, c)];
                            if !kv.is_zero() {
                                col.push((off[h] + k * nd[h] + j, x * kv));
                            }
                        }
                    }
                }
                cols.push(col);
            }
        }
    }
    let mut sys = RatMatrix::zeros(unknowns, cols.len());
    for (c, col) in cols.iter().enumerate() {
        for (r, x) in col {
            sys[(*r, c)] += x;
        }
    }
    let kernel = if unknowns == 0 { Vec::new() } else { modular::left_kernel(&sys) };
    let mut out = Vec::new();
    for v in &kernel {
        let mut f: Vec<RatMatrix> = (0..nv)
            .map(|x| {
                if is_src[x] {
                    RatMatrix::zeros(md[x], nd[x])
                } else {
                    RatMatrix::from_vec(md[x], nd[x], v[off[x]..off[x] + md[x] * nd[x]].to_vec()).expect("block")
                }
            })
            .collect();
        for (u, sd) in &srcs {
            let yj_cols: Vec<RatMatrix> = sd.heads.iter().map(|&(a, h, _)| m.map(a) * &f[h]).collect();
            let refs: Vec<&RatMatrix> = yj_cols.iter().collect();
            let y = RatMatrix::hstack(&refs).expect("same rows");
            let part = &y.select_cols(&sd.cols_j) * &sd.cinv;
            let mut fu = RatMatrix::zeros(md[*u], nd[*u]);
            for (k, &r) in sd.rows_i.iter().enumerate() {
                for i in 0..md[*u] {
                    fu[(i, r)] = part[(i, k)].clone();
                }
            }
            f[*u] = fu;
        }
        out.push(f);
    }
    // free part at each source: f_u = Z·L
    for (u, sd) in &srcs {
        for i in 0..md[*u] {
            for l in &sd.left {
                let mut f: Vec<RatMatrix> = (0..nv).map(|x| RatMatrix::zeros(md[x], nd[x])).collect();
                for (j, x) in l.iter().enumerate() {
                    f[*u][(i, j)] = x.clone();
                }
                out.push(f);
            }
        }
    }
    out
}

pub fn hom_dim(m: &Representation, n: &Representation) -> usize {
    hom_space(m, n).len()
}

/// Dimension of the cokernel of the map whose kernel is Hom(M, N) (hereditary case).
pub fn ext_dim(m: &Representation, n: &Representation) -> usize {
    let p = phi(m, n);
    let rank = p.rows() - modular::left_kernel(&p).len();
    p.cols() - rank
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoResult {
    Yes,
    No,
    Inconclusive,
}

/// Seeded test: a random combination of a Hom basis that is invertible at every vertex
/// proves isomorphism; a dimension mismatch of Hom and End spaces disproves it.
pub fn is_isomorphic(m: &Representation, n: &Representation, retries: usize, seed: u64) -> IsoResult {
    if m.quiver() != n.quiver() || m.dims() != n.dims() {
        return IsoResult::No;
    }
    let h = hom_space(m, n);
    if h.is_empty() {
        return if m.total_dim() == 0 { IsoResult::Yes } else { IsoResult::No };
    }
    let (dm, dn) = (hom_dim(m, m), hom_dim(n, n));
    if h.len() != dm || dm != dn {
        return IsoResult::No;
    }
    let mut rng = seeded_rng(seed);
    for _ in 0..retries.max(1) {
        let coeffs: Vec<i64> = (0..h.len()).map(|_| rng.gen_range(-6i64..=6)).collect();
        let ok = (0..m.dims().len()).all(|v| {
            let mut f = RatMatrix::zeros(m.dims()[v], n.dims()[v]);
            for (c, b) in coeffs.iter().zip(&h) {
                f.add_scaled(&b[v], &Rational::from_integer((*c).into()));
            }
            modular::is_invertible(&f)
        });
        if ok {
            return IsoResult::Yes;
        }
    }
    IsoResult::Inconclusive
}

/// End(M) realized block-diagonally on the total space of M.
pub fn endomorphism_algebra(m: &Representation) -> Result<MatrixAlgebra, AlgebraError> {
    let basis = hom_space(m, m).iter().map(|f| RatMatrix::block_diag(&f.iter().collect::<Vec<_>>())).collect();
    MatrixAlgebra::trusted(basis, RatMatrix::identity(m.total_dim()))
}

/// Subrepresentation cut out by an idempotent endomorphism (block-diagonal on the total space).
pub fn image_of_idempotent(m: &Representation, e: &RatMatrix) -> Representation {
    let q = m.quiver();
    let mut off = 0;
    let mut bases = Vec::new();
    for &d in m.dims() {
        let ev = e.block(off, off, d, d);
        let (r, piv) = ev.rref();
        let rows: Vec<usize> = (0..piv.len()).collect();
        let basis = r.select_rows(&rows);
        bases.push((basis, piv));
        off += d;
    }
    let dims: Vec<usize> = bases.iter().map(|(b, _)| b.rows()).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let (bt, _) = &bases[a.tail];
            let (_, ph) = &bases[a.head];
            // the rref basis is the identity on its pivot columns
            (bt * m.map(ai)).select_cols(ph)
        })
        .collect();
    Representation::new(q.clone(), dims, maps).expect("image shapes")
}

#[derive(Clone, Debug)]
pub struct Summand {
    pub rep: Representation,
    pub multiplicity: usize,
    /// Set when an isomorphism test in the grouping came back inconclusive.
    pub inconclusive: bool,
}

/// Indecomposable summands with multiplicities, via primitive idempotents of End(M).
pub fn decompose_indecomposables(m: &Representation, seed: u64) -> Result<Vec<Summand>, AlgebraError> {
    if m.total_dim() == 0 {
        return Ok(Vec::new());
    }
    let alg = endomorphism_algebra(m)?;
    let idems = idempotents_in_end(&alg, &SplitHints::default(), seed)?;
    let mut out: Vec<Summand> = Vec::new();
    for e in idems {
        let x = image_of_idempotent(m, &e);
        let mut placed = false;
        for s in out.iter_mut() {
            match is_isomorphic(&s.rep, &x, 5, seed) {
                IsoResult::Yes => {
                    s.multiplicity += 1;
                    placed = true;
                    break;
                }
                IsoResult::Inconclusive => s.inconclusive = true,
                IsoResult::No => {}
            }
        }
        if !placed {
            out.push(Summand { rep: x, multiplicity: 1, inconclusive: false });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{euler_form, random_base_change, random_rep};

    #[test]
    fn simples() {
        let q = Arc::new(Quiver::kronecker(2));
        let s1 = Representation::simple(q.clone(), 0);
        let s2 = Representation::simple(q.clone(), 1);
        assert_eq!(hom_dim(&s1, &s1), 1);
        assert_eq!(hom_dim(&s1, &s2), 0);
        assert_eq!(is_isomorphic(&s1, &s2, 5, 0), IsoResult::No);
        assert_eq!(is_isomorphic(&s1, &s1, 5, 0), IsoResult::Yes);
    }

    #[test]
    fn ext_on_a2() {
        let q = Arc::new(Quiver::kronecker(1));
        let s1 = Representation::simple(q.clone(), 0);
        let s2 = Representation::simple(q.clone(), 1);
        assert_eq!(ext_dim(&s1, &s2), 1);
        assert_eq!(ext_dim(&s2, &s1), 0);
        let p = Representation::projective(q.clone(), 0);
        assert_eq!(ext_dim(&p, &s2), 0);
        let m = random_rep(q, &[1, 1], 4, 3);
        if !m.map(0).is_zero() {
            assert_eq!(ext_dim(&m, &m), 0);
        }
    }

    #[test]
    fn elimination_agrees_with_direct_kernel() {
        for (k, seed) in [(2usize, 1u64), (3, 2), (3, 3)] {
            let q = Arc::new(Quiver::kronecker(k));
            let m = random_rep(q.clone(), &[3, 4], seed, 2);
            let n = random_rep(q.clone(), &[2, 5], seed + 10, 2);
            let direct = modular::left_kernel(&phi(&m, &n)).len();
            assert_eq!(hom_dim(&m, &n), direct);
            let sub = Arc::new(Quiver::subspace(3));
            let m = random_rep(sub.clone(), &[1, 1, 2, 3], seed, 2);
            let n = random_rep(sub.clone(), &[1, 2, 1, 3], seed + 1, 2);
            assert_eq!(hom_dim(&m, &n), modular::left_kernel(&phi(&m, &n)).len());
        }
    }

    #[test]
    fn morphisms_commute() {
        let q = Arc::new(Quiver::subspace(2));
        let m = random_rep(q.clone(), &[1, 1, 2], 5, 2);
        let n = Representation::power(&m, 2);
        for f in hom_space(&m, &n) {
            for (ai, a) in q.arrows().iter().enumerate() {
                assert_eq!(m.map(ai) * &f[a.head], &f[a.tail] * n.map(ai));
            }
        }
        assert_eq!(hom_dim(&m, &n), 2 * hom_dim(&m, &m));
    }

    #[test]
    fn conjugate_is_isomorphic() {
        let q = Arc::new(Quiver::kronecker(3));
        let m = random_rep(q.clone(), &[2, 3], 11, 3);
        let g = random_base_change(&[2, 3], 12, 2);
        let n = m.base_change(&g).unwrap();
        assert_eq!(is_isomorphic(&m, &n, 5, 1), IsoResult::Yes);
        assert_eq!(is_isomorphic(&n, &m, 5, 1), IsoResult::Yes);
    }

    #[test]
    fn euler_identity_small() {
        let q = Arc::new(Quiver::kronecker(3));
        for s in 0..8u64 {
            let a = [(s % 3) as usize, (s % 2 + 1) as usize];
            let b = [((s + 1) % 3) as usize, ((s + 2) % 3) as usize];
            let m = random_rep(q.clone(), &a, s, 2);
            let n = random_rep(q.clone(), &b, s + 100, 2);
            let lhs = hom_dim(&m, &n) as i64 - ext_dim(&m, &n) as i64;
            assert_eq!(lhs, euler_form(&q, &a, &b));
        }
    }

    #[test]
    fn decomposition_of_sums() {
        let q = Arc::new(Quiver::kronecker(2));
        let s1 = Representation::simple(q.clone(), 0);
        let two = s1.power(2);
        let d = decompose_indecomposables(&two, 3).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].multiplicity, 2);
        let m = random_rep(q.clone(), &[1, 1], 2, 3);
        let x = Representation::direct_sum(&[&m, &m, &Representation::simple(q.clone(), 1)]).unwrap();
        let g = random_base_change(x.dims(), 8, 2);
        let x = x.base_change(&g).unwrap();
        let d = decompose_indecomposables(&x, 3).unwrap();
        let mut mult: Vec<(Vec<usize>, usize)> = d.iter().map(|s| (s.rep.dims().to_vec(), s.multiplicity)).collect();
        mult.sort();
        assert_eq!(mult, vec![(vec![0, 1], 1), (vec![1, 1], 2)]);
    }
}
