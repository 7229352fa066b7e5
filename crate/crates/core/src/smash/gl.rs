//! The GL_n lift: Schur-algebra matrix units, slicing operators along an arrow module,
//! coefficient tables and intertwiner spaces.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::finite::Echelon;
use super::{SmashError, Term};
use crate::linalg::{modular, RatMatrix, Rational};
use crate::partition::Partition;
use crate::qg::{GlDatum, Label, ModuleBasis, Origin, QgQuiver};
use crate::schur::{
    generalized_permutations, gl_irrep_realization, schur_idempotents, schur_idempotents_general, xi_to_operator, GlIrrep,
    XiElement, DEFAULT_TENSOR_BUDGET,
};
use crate::semisimple::scalar_multiple;

/// Operators of the ξ basis of `S(n,d)`, in canonical biword order.
pub fn xi_operators(n: usize, d: usize) -> Vec<RatMatrix> {
    generalized_permutations(n, d)
        .iter()
        .map(|g| xi_to_operator(&XiElement::xi(n, g.top(), g.bottom()).expect("letters in range")))
        .collect()
}

/// Matrix units `e^{pq}` for the label `λ`: `e^{pp}` are the table idempotents of that label,
/// `e^{p1}` is the first nonzero `E_p·ξ·E_1`, and `e^{1p}` the first `E_1·ξ·E_p` not
/// annihilating it, rescaled so that `e^{1p}e^{p1} = E_1`.
pub fn schur_units(n: usize, label: &Partition, xi: &[RatMatrix], seed: u64) -> Result<Vec<Vec<RatMatrix>>, SmashError> {
    let d = label.size();
    let table = if d <= 3 { schur_idempotents(n, d)? } else { schur_idempotents_general(n, d, seed, DEFAULT_TENSOR_BUDGET)? };
    let idem: Vec<RatMatrix> = table.iter().filter(|t| &t.label == label).map(|t| xi_to_operator(&t.xi)).collect();
    let Some(e1) = idem.first() else {
        return Err(SmashError::Inconsistent(format!("no idempotent labelled {label} in S({n},{d})")));
    };
    let mut down = vec![e1.clone()];
    let mut up = vec![e1.clone()];
    for ep in &idem[1..] {
        let x = xi
            .iter()
            .map(|c| &(ep * c) * e1)
            .find(|m| !m.is_zero())
            .ok_or_else(|| SmashError::Inconsistent(format!("no unit from copy 1 of {label}")))?;
        let (y, lambda) = xi
            .iter()
            .map(|c| &(e1 * c) * ep)
            .find_map(|y| {
                let l = scalar_multiple(&(&y * &x), e1)?;
                (!l.is_zero()).then_some((y, l))
            })
            .ok_or_else(|| SmashError::Inconsistent(format!("no unit into copy 1 of {label}")))?;
        down.push(x);
        up.push(y.scale(&lambda.recip()));
    }
    let f = idem.len();
    Ok((0..f).map(|p| (0..f).map(|q| if p == q { idem[p].clone() } else { &down[p] * &up[q] }).collect()).collect())
}

/// `out[I,J] = Σ_{L,K} c_l[L]·h[(I,L),(J,K)]·w_i[K]`: the coefficient function `f_{li}` of the
/// arrow module acting on `h ∈ S(n, d+m)`, landing in `S(n, d)`.
pub fn slice(h: &RatMatrix, n: usize, d: usize, module: &ModuleBasis, l: usize, i: usize) -> RatMatrix {
    let small = n.pow(d as u32);
    let nm = n.pow(module.shape.size() as u32);
    let cl: Vec<(usize, &Rational)> = module.c.row(l).iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
    let wi: Vec<(usize, &Rational)> = module.w.row(i).iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
    let mut out = RatMatrix::zeros(small, small);
    for a in 0..small {
        for b in 0..small {
            let mut s = Rational::zero();
            for &(lx, c) in &cl {
                for &(kx, w) in &wi {
                    let v = &h[(a * nm + lx, b * nm + kx)];
                    if !v.is_zero() {
                        s += c * v * w;
                    }
                }
            }
            out[(a, b)] = s;
        }
    }
    out
}

fn label_of(comp: &QgQuiver, x: usize) -> Result<&Partition, SmashError> {
    comp.vertices[x].label.partition().ok_or_else(|| SmashError::Inconsistent("GL labels are partitions".into()))
}

/// `Σ_l a_l ⊗ slice(h, l, i)·e^{q1}_σ`, flattened over `(l, I, J)`.
fn element(h: &RatMatrix, n: usize, d: usize, module: &ModuleBasis, i: usize, eq1: &RatMatrix) -> Vec<Rational> {
    (0..module.dim()).flat_map(|l| (&slice(h, n, d, module, l, i) * eq1).into_data()).collect()
}

pub type GlTables = (Vec<Vec<Vec<RatMatrix>>>, Vec<Vec<Term>>);

pub fn gl_tables(comp: &QgQuiver, datum: &GlDatum, seed: u64) -> Result<GlTables, SmashError> {
    let n = datum.n;
    let q = &*comp.base;
    let modules = datum.resolve(q)?;
    let mut xi_cache: HashMap<usize, Vec<RatMatrix>> = HashMap::new();
    let mut units = Vec::new();
    for x in 0..comp.num_vertices() {
        let l = label_of(comp, x)?;
        let xi = xi_cache.entry(l.size()).or_insert_with(|| xi_operators(n, l.size()));
        units.push(schur_units(n, l, xi, seed)?);
    }
    let mut bases: HashMap<(usize, usize), ModuleBasis> = HashMap::new();
    for (mi, m) in modules.iter().enumerate() {
        for (ci, (mu, _)) in m.constituents.iter().enumerate() {
            bases.insert((mi, ci), ModuleBasis::new(mu, n)?);
        }
    }
    let offsets = comp.bundle_offsets();
    let mut tables = vec![Vec::new(); q.num_arrows()];
    for (bi, b) in comp.bundles.iter().enumerate() {
        let Origin::Module { module, constituent } = b.origin else {
            return Err(SmashError::Inconsistent("GL bundle without an arrow module".into()));
        };
        let mb = &bases[&(module, constituent)];
        let arrows = &modules[module].constituents[constituent].1;
        let (rho, sigma) = (label_of(comp, b.tail)?, label_of(comp, b.head)?);
        if rho.size() != sigma.size() + mb.shape.size() {
            return Err(SmashError::Inconsistent(format!("degrees of {rho} and {sigma} do not match the module")));
        }
        let d = sigma.size();
        let (ux, uy) = (&units[b.tail], &units[b.head]);
        let mut ech = Echelon::default();
        for i in 0..mb.dim() {
            for row in uy {
                ech.insert(element(&ux[0][0], n, d, mb, i, &row[0]));
            }
        }
        if ech.len() != b.count {
            return Err(SmashError::Multiplicity {
                tail: comp.vertex_name(b.tail),
                head: comp.vertex_name(b.head),
                expected: b.count,
                found: ech.len(),
            });
        }
        for (i, &ai) in arrows.iter().enumerate() {
            for (p, up) in ux[0].iter().enumerate() {
                for (qq, row) in uy.iter().enumerate() {
                    let v = element(up, n, d, mb, i, &row[0]);
                    let coords = ech.coords(v).ok_or_else(|| {
                        SmashError::Inconsistent(format!(
                            "e·{}·e leaves the arrow span {}→{}",
                            q.arrows()[ai].name,
                            comp.vertex_name(b.tail),
                            comp.vertex_name(b.head)
                        ))
                    })?;
                    for (k, c) in coords.into_iter().enumerate() {
                        if !c.is_zero() {
                            tables[ai].push(Term { arrow: offsets[bi] + k, p, q: qq, coeff: c });
                        }
                    }
                }
            }
        }
    }
    Ok((units, tables))
}

/// Elementary matrices `I + E_pq`, a diagonal of distinct primes and `2·I`.
pub fn generator_set(n: usize) -> Vec<RatMatrix> {
    let mut out = Vec::new();
    for p in 0..n {
        for q in 0..n {
            if p != q {
                let mut g = RatMatrix::identity(n);
                g[(p, q)] = Rational::one();
                out.push(g);
            }
        }
    }
    const PRIMES: [i64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];
    let mut diag = RatMatrix::identity(n);
    for k in 0..n {
        diag[(k, k)] = Rational::from_integer(PRIMES[k % PRIMES.len()].into());
    }
    out.push(diag);
    out.push(RatMatrix::scalar(n, &Rational::from_integer(2.into())));
    out
}

struct Irrep(Option<GlIrrep>);

impl Irrep {
    fn new(shape: &Partition, n: usize) -> Result<Self, SmashError> {
        Ok(Irrep(if shape.size() == 0 { None } else { Some(gl_irrep_realization(shape, n)?) }))
    }

    fn act(&self, g: &RatMatrix) -> RatMatrix {
        self.0.as_ref().map_or_else(|| RatMatrix::identity(1), |r| r.act(g))
    }
}

/// Basis of `Hom_{GL_n}(V_ρ, V_μ ⊗ V_σ)` as matrices `X` with `ρ(g)·X = X·(μ(g) ⊗ σ(g))`
/// (row actions), from the joint kernel over [`generator_set`].
pub fn intertwiner_basis(rho: &Partition, mu: &Partition, sigma: &Partition, n: usize) -> Result<Vec<RatMatrix>, SmashError> {
    let r = Irrep::new(rho, n)?;
    let s = Irrep::new(sigma, n)?;
    let m = ModuleBasis::new(mu, n)?;
    let gens = generator_set(n);
    let probe = r.act(&gens[0]);
    let dr = probe.rows();
    let dc = m.dim() * s.act(&gens[0]).rows();
    let mut eqs = Vec::new();
    for g in &gens {
        let a = r.act(g);
        let b = m.act(g).kron(&s.act(g));
        // unknown X[k][l] at row k*dc + l; equation (i, j): Σ_k a[i][k] X[k][j] − Σ_k X[i][k] b[k][j]
        let mut block = RatMatrix::zeros(dr * dc, dr * dc);
        for i in 0..dr {
            for j in 0..dc {
                let col = i * dc + j;
                for k in 0..dr {
                    let v = &a[(i, k)];
                    if !v.is_zero() {
                        block[(k * dc + j, col)] += v;
                    }
                }
                for k in 0..dc {
                    let v = &b[(k, j)];
                    if !v.is_zero() {
                        block[(i * dc + k, col)] -= v;
                    }
                }
            }
        }
        eqs.push(block);
    }
    let refs: Vec<&RatMatrix> = eqs.iter().collect();
    let system = RatMatrix::hstack(&refs)?;
    Ok(modular::left_kernel(&system)
        .into_iter()
        .map(|v| RatMatrix::from_vec(dr, dc, v).expect("sized"))
        .collect())
}

/// Cross-check of a component's multiplicity table against explicit intertwiner spaces.
pub fn check_multiplicities(comp: &QgQuiver, datum: &GlDatum) -> Result<(), SmashError> {
    let modules = datum.resolve(&comp.base)?;
    for b in &comp.bundles {
        let Origin::Module { module, constituent } = b.origin else { continue };
        let mu = &modules[module].constituents[constituent].0;
        let (Label::Partition(rho), Label::Partition(sigma)) = (&comp.vertices[b.tail].label, &comp.vertices[b.head].label) else {
            continue;
        };
        let found = intertwiner_basis(rho, mu, sigma, datum.n)?.len();
        if found != b.count {
            return Err(SmashError::Multiplicity {
                tail: comp.vertex_name(b.tail),
                head: comp.vertex_name(b.head),
                expected: b.count,
                found,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qg::{gl_component, ArrowModule};
    use crate::quiver::Quiver;
    use crate::seeded_rng;
    use rand::Rng;
    use std::sync::Arc;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    fn random_schur(n: usize, d: usize, seed: u64) -> RatMatrix {
        let xi = xi_operators(n, d);
        let mut rng = seeded_rng(seed);
        let mut h = RatMatrix::zeros(xi[0].rows(), xi[0].cols());
        for x in &xi {
            h.add_scaled(x, &Rational::from_integer(rng.gen_range(-3i64..=3).into()));
        }
        h
    }

    #[test]
    fn slicing_is_multiplicative() {
        // the comodule identity f_li(gh) = Σ_k f_lk(g) f_ki(h), seen on S(n, d+m)
        for (n, mu, d) in [(2, p(&[1]), 1), (3, p(&[1]), 1), (2, p(&[2]), 1), (2, p(&[1, 1]), 1)] {
            let mb = ModuleBasis::new(&mu, n).unwrap();
            let dd = d + mu.size();
            let (h1, h2) = (random_schur(n, dd, 1), random_schur(n, dd, 2));
            let prod = &h1 * &h2;
            for l in 0..mb.dim() {
                for i in 0..mb.dim() {
                    let mut rhs = RatMatrix::zeros(n.pow(d as u32), n.pow(d as u32));
                    for k in 0..mb.dim() {
                        rhs = &rhs + &(&slice(&h1, n, d, &mb, l, k) * &slice(&h2, n, d, &mb, k, i));
                    }
                    assert_eq!(slice(&prod, n, d, &mb, l, i), rhs, "n={n} mu={mu}");
                }
            }
        }
    }

    #[test]
    fn matrix_unit_relations() {
        for (n, l) in [(2, p(&[2, 1])), (3, p(&[2, 1])), (3, p(&[2])), (2, p(&[2, 2]))] {
            let xi = xi_operators(n, l.size());
            let u = schur_units(n, &l, &xi, 0).unwrap();
            let f = u.len();
            for a in 0..f {
                for b in 0..f {
                    for c in 0..f {
                        for d in 0..f {
                            let prod = &u[a][b] * &u[c][d];
                            let want = if b == c { u[a][d].clone() } else { RatMatrix::zeros(prod.rows(), prod.cols()) };
                            assert_eq!(prod, want);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn intertwiner_counts() {
        assert_eq!(intertwiner_basis(&p(&[2]), &p(&[1]), &p(&[1]), 3).unwrap().len(), 1);
        assert_eq!(intertwiner_basis(&p(&[1, 1]), &p(&[1]), &p(&[1]), 3).unwrap().len(), 1);
        assert_eq!(intertwiner_basis(&p(&[1]), &p(&[]), &p(&[1]), 3).unwrap().len(), 1);
        assert_eq!(intertwiner_basis(&p(&[3]), &p(&[2]), &p(&[1]), 2).unwrap().len(), 1);
        assert_eq!(intertwiner_basis(&p(&[2, 1]), &p(&[1]), &p(&[1, 1]), 3).unwrap().len(), 1);
        assert_eq!(intertwiner_basis(&p(&[3]), &p(&[1]), &p(&[1, 1]), 3).unwrap().len(), 0);
        assert_eq!(intertwiner_basis(&p(&[2]), &p(&[1]), &p(&[2]), 3).unwrap().len(), 0);
        for n in 2..=3 {
            let q = Arc::new(Quiver::kronecker(3));
            let d = GlDatum::natural_kronecker(3);
            for seed in [p(&[1]), p(&[1, 1])] {
                let c = gl_component(&q, &d, 1, &seed).unwrap();
                check_multiplicities(&c, &d).unwrap();
            }
            let s2 = GlDatum {
                n: 2,
                arrow_modules: vec![ArrowModule { tail: "1".into(), head: "2".into(), constituents: vec![p(&[2])] }],
            };
            let c = gl_component(&q, &s2, 1, &p(&[1])).unwrap();
            check_multiplicities(&c, &s2).unwrap();
            let _ = n;
        }
    }
}
