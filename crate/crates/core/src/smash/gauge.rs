//! Exact fit of an externally given family of block matrices against the coefficient tables,
//! up to a change of arrow basis in each bundle and a change of basis of the copies at each
//! vertex. Used when a printed family was produced with an unstated arrow basis.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::Rng;

use super::{IdempotentData, SmashError};
use crate::linalg::{modular, RatMatrix, Rational};
use crate::seeded_rng;
use crate::semisimple::scalar_multiple;

/// A family of block matrices over symbols `B_1..B_s`: per arrow of Q, terms
/// `(symbol, row slot, column slot, coefficient)` with slots numbered as in
/// [`IdempotentData::slots`].
#[derive(Clone, Debug)]
pub struct SlotFamily {
    /// Component vertices the family lives on; arrows leaving this set are ignored.
    pub support: Vec<bool>,
    /// Tail and head component vertex of each symbol.
    pub symbol_ends: Vec<(usize, usize)>,
    pub terms: Vec<Vec<(usize, usize, usize, Rational)>>,
}

/// `N(b_k) = Σ_{k'} y[k][k']·B_{k'}` turns the component's functor into the given family, up to
/// isomorphism of Q-representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeFit {
    pub y: Vec<BTreeMap<usize, Rational>>,
}

fn copy_matrix(rows: usize, cols: usize, entries: impl Iterator<Item = (usize, usize, Rational)>) -> RatMatrix {
    let mut m = RatMatrix::zeros(rows, cols);
    for (p, q, c) in entries {
        m[(p, q)] += c;
    }
    m
}

/// Solves `Σ_k Y_{kk'}·V_x·C_k(a) = P_{k'}(a)·Z_y` for invertible `V_x`, `Z_y` and bundle-wise
/// invertible `Y`, through the linearization `W_{x,k,k'} = Y_{kk'}·V_x`. Requires every vertex of
/// the component to be a tail only or a head only.
pub fn gauge_fit(data: &IdempotentData, family: &SlotFamily, seed: u64) -> Result<Option<GaugeFit>, SmashError> {
    let qc = &data.quiver_c;
    let nv = qc.num_vertices();
    let inside: Vec<usize> =
        (0..qc.num_arrows()).filter(|&k| family.support[qc.arrows()[k].tail] && family.support[qc.arrows()[k].head]).collect();
    let is_tail: Vec<bool> = (0..nv).map(|x| inside.iter().any(|&k| qc.arrows()[k].tail == x)).collect();
    let is_head: Vec<bool> = (0..nv).map(|x| inside.iter().any(|&k| qc.arrows()[k].head == x)).collect();
    if (0..nv).any(|x| is_tail[x] && is_head[x]) {
        return Err(SmashError::Unsupported("gauge fit needs a bipartite component".into()));
    }
    let d = |x: usize| data.copies(x);
    // my arrows and the symbols grouped by endpoints
    let mut groups: BTreeMap<(usize, usize), (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for &k in &inside {
        let a = &qc.arrows()[k];
        groups.entry((a.tail, a.head)).or_default().0.push(k);
    }
    for (s, &(x, y)) in family.symbol_ends.iter().enumerate() {
        groups.entry((x, y)).or_default().1.push(s);
    }
    if groups.values().any(|(mine, theirs)| mine.len() != theirs.len()) {
        return Ok(None);
    }
    // unknown layout: W blocks, then Z blocks
    let mut w_off = BTreeMap::new();
    let mut n_unknowns = 0;
    for (&(x, _), (mine, theirs)) in &groups {
        for &k in mine {
            for &s in theirs {
                w_off.insert((k, s), n_unknowns);
                n_unknowns += d(x) * d(x);
            }
        }
    }
    let mut z_off = vec![usize::MAX; nv];
    for y in (0..nv).filter(|&y| is_head[y]) {
        z_off[y] = n_unknowns;
        n_unknowns += d(y) * d(y);
    }
    let slot_index = |w: usize| -> BTreeMap<usize, (usize, usize)> { data.slots(w).into_iter().enumerate().collect() };
    let mut columns: Vec<Vec<(usize, Rational)>> = Vec::new();
    let mut mine_c = Vec::new();
    let mut theirs_p = Vec::new();
    for (ai, a) in data.base.arrows().iter().enumerate() {
        let (rs, cs) = (slot_index(a.tail), slot_index(a.head));
        let c: BTreeMap<usize, RatMatrix> = qc
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, b)| {
                let ents = data.tables[ai].iter().filter(|t| t.arrow == k).map(|t| (t.p, t.q, t.coeff.clone()));
                (k, copy_matrix(d(b.tail), d(b.head), ents))
            })
            .collect();
        let mut p: BTreeMap<usize, RatMatrix> = (0..family.symbol_ends.len())
            .map(|s| (s, RatMatrix::zeros(d(family.symbol_ends[s].0), d(family.symbol_ends[s].1))))
            .collect();
        for (s, r, col, coeff) in &family.terms[ai] {
            let (x, pp) = rs[r];
            let (y, qq) = cs[col];
            if (x, y) != family.symbol_ends[*s] {
                return Err(SmashError::Inconsistent(format!("symbol B{} placed outside its bundle", s + 1)));
            }
            p.get_mut(s).expect("symbol")[(pp, qq)] += coeff;
        }
        for (&(x, y), (mine, theirs)) in &groups {
            for &s in theirs {
                // Σ_k W_{k,s} C_k − P_s Z_y = 0, entry (i, j)
                for i in 0..d(x) {
                    for j in 0..d(y) {
                        let mut col = Vec::new();
                        for &k in mine {
                            let base = w_off[&(k, s)];
                            for t in 0..d(x) {
                                let v = &c[&k][(t, j)];
                                if !v.is_zero() {
                                    col.push((base + i * d(x) + t, v.clone()));
                                }
                            }
                        }
                        for t in 0..d(y) {
                            let v = &p[&s][(i, t)];
                            if !v.is_zero() {
                                col.push((z_off[y] + t * d(y) + j, -v.clone()));
                            }
                        }
                        columns.push(col);
                    }
                }
            }
        }
        mine_c.push(c);
        theirs_p.push(p);
    }
    let mut sys = RatMatrix::zeros(n_unknowns, columns.len());
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col {
            sys[(*i, j)] += v;
        }
    }
    let kernel = modular::left_kernel(&sys);
    if kernel.is_empty() {
        return Ok(None);
    }
    let mut rng = seeded_rng(seed);
    let mut sol = vec![Rational::zero(); n_unknowns];
    for v in &kernel {
        let c = Rational::from_integer(rng.gen_range(1i64..=97).into());
        for (s, x) in sol.iter_mut().zip(v) {
            *s += &c * x;
        }
    }
    let block = |off: usize, n: usize| RatMatrix::from_vec(n, n, sol[off..off + n * n].to_vec()).expect("sized");
    // V_x: the first nonzero W block at x; Y by proportionality
    let mut v_of: BTreeMap<usize, RatMatrix> = BTreeMap::new();
    let mut y = vec![BTreeMap::new(); qc.num_arrows()];
    for (&(x, _), (mine, theirs)) in &groups {
        for &k in mine {
            for &s in theirs {
                let w = block(w_off[&(k, s)], d(x));
                if w.is_zero() {
                    continue;
                }
                let v = v_of.entry(x).or_insert_with(|| w.clone());
                let Some(ratio) = scalar_multiple(&w, v) else {
                    return Ok(None);
                };
                y[k].insert(s, ratio);
            }
        }
    }
    for (&(x, y_vertex), (mine, theirs)) in &groups {
        let Some(v) = v_of.get(&x) else { return Ok(None) };
        if !modular::is_invertible(v) || !modular::is_invertible(&block(z_off[y_vertex], d(y_vertex))) {
            return Ok(None);
        }
        let m = RatMatrix::from_rows(
            mine.iter().map(|&k| theirs.iter().map(|s| y[k].get(s).cloned().unwrap_or_else(Rational::zero)).collect()).collect(),
        )?;
        if !modular::is_invertible(&m) {
            return Ok(None);
        }
    }
    // exact verification of the original bilinear equations
    for (c, p) in mine_c.iter().zip(&theirs_p) {
        for (&(x, yv), (mine, theirs)) in &groups {
            let z = block(z_off[yv], d(yv));
            for &s in theirs {
                let mut lhs = RatMatrix::zeros(d(x), d(yv));
                for &k in mine {
                    if let Some(yk) = y[k].get(&s) {
                        lhs.add_scaled(&(&v_of[&x] * &c[&k]), yk);
                    }
                }
                if lhs != &p[&s] * &z {
                    return Ok(None);
                }
            }
        }
    }
    Ok(Some(GaugeFit { y }))
}
