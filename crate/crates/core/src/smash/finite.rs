//! The skew group algebra truncated at path length one, and the finite-group lift.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{SmashError, Term};
use crate::linalg::Rational;
use crate::qg::{Label, Origin, QgQuiver};
use crate::quiver::Quiver;
use crate::symmetric::{orbits_and_stabilizers, symmetric_group_blocks, ActionGroup, FiniteAction, GroupAlgebraElement, OrbitData};

/// A vertex idempotent or an arrow of Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basic {
    Vertex(usize),
    Arrow(usize),
}

/// Element of `kQ_{≤1} # kG`: coefficients of `p ⊗ g` with `g` a group element index.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SkewElement(pub BTreeMap<(Basic, usize), Rational>);

impl SkewElement {
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, b: Basic, g: usize, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry((b, g)).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&(b, g));
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&(b, g), c) in &o.0 {
            out.add_term(b, g, c);
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = SkewElement::default();
        for (&(b, g), c) in &self.0 {
            out.add_term(b, g, &(c * s));
        }
        out
    }
}

/// Multiplication `(p⊗g)(p'⊗g') = p·(g·p') ⊗ gg'`, dropping paths of length two.
pub struct SkewAlgebra<'a> {
    pub quiver: &'a Quiver,
    pub group: &'a ActionGroup,
}

impl<'a> SkewAlgebra<'a> {
    fn act(&self, g: usize, b: Basic) -> Vec<(Basic, Rational)> {
        let el = &self.group.elements[g];
        match b {
            Basic::Vertex(v) => vec![(Basic::Vertex(el.vertices.apply(v)), Rational::from_integer(1.into()))],
            Basic::Arrow(j) => el
                .arrows
                .row(j)
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(l, c)| (Basic::Arrow(l), c.clone()))
                .collect(),
        }
    }

    fn path_mul(&self, x: Basic, y: Basic) -> Option<Basic> {
        let arrows = self.quiver.arrows();
        match (x, y) {
            (Basic::Vertex(u), Basic::Vertex(v)) => (u == v).then_some(x),
            (Basic::Vertex(u), Basic::Arrow(j)) => (arrows[j].tail == u).then_some(y),
            (Basic::Arrow(j), Basic::Vertex(v)) => (arrows[j].head == v).then_some(x),
            (Basic::Arrow(_), Basic::Arrow(_)) => None,
        }
    }

    pub fn mul(&self, x: &SkewElement, y: &SkewElement) -> SkewElement {
        let mut out = SkewElement::default();
        for (&(p, g), c) in &x.0 {
            for (&(p2, g2), c2) in &y.0 {
                let gg = self.group.mul(g, g2);
                let cc = c * c2;
                for (q, s) in self.act(g, p2) {
                    if let Some(r) = self.path_mul(p, q) {
                        out.add_term(r, gg, &(&cc * &s));
                    }
                }
            }
        }
        out
    }

    /// `e_v ⊗ x` for `x` in the group algebra of the acting group.
    pub fn at_vertex(&self, v: usize, x: &GroupAlgebraElement) -> SkewElement {
        let mut out = SkewElement::default();
        for (p, c) in x.support() {
            let g = self.group.index_of(p).expect("element of the acting group");
            out.add_term(Basic::Vertex(v), g, c);
        }
        out
    }

    /// Coordinates of the arrow part, indexed by `(arrow, group element)`.
    pub fn arrow_vector(&self, x: &SkewElement) -> Vec<Rational> {
        let order = self.group.order();
        let mut v = vec![Rational::zero(); self.quiver.num_arrows() * order];
        for (&(b, g), c) in &x.0 {
            if let Basic::Arrow(j) = b {
                v[j * order + g] = c.clone();
            }
        }
        v
    }
}

/// Row-reduced spanning set used to pick a basis greedily and solve for coordinates.
#[derive(Default)]
pub(crate) struct Echelon {
    rows: Vec<(usize, Vec<Rational>, Vec<Rational>)>,
    count: usize,
}

impl Echelon {
    /// Adds `v` if it is independent; returns whether it was.
    pub(crate) fn insert(&mut self, v: Vec<Rational>) -> bool {
        let k = self.count;
        let mut tag = vec![Rational::zero(); k + 1];
        tag[k] = Rational::from_integer(1.into());
        let (r, t) = self.reduce(v, tag);
        match r.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                let inv = r[p].recip();
                let r: Vec<Rational> = r.iter().map(|x| x * &inv).collect();
                let t: Vec<Rational> = t.iter().map(|x| x * &inv).collect();
                self.rows.push((p, r, t));
                self.count += 1;
                true
            }
            None => false,
        }
    }

    fn reduce(&self, mut v: Vec<Rational>, mut tag: Vec<Rational>) -> (Vec<Rational>, Vec<Rational>) {
        for (p, r, t) in &self.rows {
            let c = v[*p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(r) {
                *x -= &c * y;
            }
            tag.resize(tag.len().max(t.len()), Rational::zero());
            for (x, y) in tag.iter_mut().zip(t) {
                *x -= &c * y;
            }
        }
        (v, tag)
    }

    /// Coordinates of `v` in the inserted vectors, if it lies in their span.
    pub(crate) fn coords(&self, v: Vec<Rational>) -> Option<Vec<Rational>> {
        let (r, t) = self.reduce(v, vec![Rational::zero(); self.count]);
        if r.iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut t = t;
        t.resize(self.count, Rational::zero());
        Some(t.into_iter().map(|x| -x).collect())
    }

    pub(crate) fn len(&self) -> usize {
        self.count
    }
}

pub struct FiniteLift {
    pub units: Vec<Vec<Vec<GroupAlgebraElement>>>,
    pub tables: Vec<Vec<Term>>,
    pub witnesses: Vec<usize>,
    /// Arrow basis of each bundle as vectors over (arrow, group element).
    pub bases: Vec<Vec<Vec<Rational>>>,
}

/// Matrix units of `Q[Sym(Ω_u)]` for each vertex `(u, ρ)`, transported into the acting group.
fn vertex_units(
    comp: &QgQuiver,
    group: &ActionGroup,
    od: &OrbitData,
    degree: usize,
) -> Result<Vec<Vec<Vec<GroupAlgebraElement>>>, SmashError> {
    let mut out = Vec::new();
    for v in &comp.vertices {
        let o = od.orbit_of[v.base];
        let omega = od.symmetric_support(group, o)?;
        let Label::Partition(rho) = &v.label else {
            return Err(SmashError::Inconsistent("finite labels are partitions".into()));
        };
        let block = symmetric_group_blocks(omega.len())?
            .into_iter()
            .find(|b| &b.shape == rho)
            .ok_or_else(|| SmashError::Inconsistent(format!("no block {rho}")))?;
        out.push(
            block
                .units
                .iter()
                .map(|row| row.iter().map(|e| e.embed(&omega, degree)).collect())
                .collect(),
        );
    }
    Ok(out)
}

pub fn finite_tables(comp: &QgQuiver, act: &FiniteAction) -> Result<FiniteLift, SmashError> {
    let q = &*comp.base;
    let group = act.group(q)?;
    let od = orbits_and_stabilizers(q, &group);
    let alg = SkewAlgebra { quiver: q, group: &group };
    let units = vertex_units(comp, &group, &od, act.degree)?;
    let at = |x: usize, p: usize, r: usize| alg.at_vertex(comp.vertices[x].base, &units[x][p][r]);

    // bases per bundle, from e^{11}_x (a ⊗ g) e^{q1}_y over arrows into the G_u-orbit of v'
    let mut bases = Vec::new();
    for b in &comp.bundles {
        let Origin::Pair(pi) = b.origin else {
            return Err(SmashError::Inconsistent("finite bundle without a pair orbit".into()));
        };
        let pair = &od.pairs[pi];
        let heads: Vec<usize> = od.stabilizers[pair.u_orbit].iter().map(|&h| group.vertex_image(h, pair.v)).collect();
        let v = comp.vertices[b.head].base;
        let left = at(b.tail, 0, 0);
        let mut ech = Echelon::default();
        let mut basis = Vec::new();
        for (j, a) in q.arrows().iter().enumerate() {
            if a.tail != pair.u || !heads.contains(&a.head) {
                continue;
            }
            for g in (0..group.order()).filter(|&g| group.vertex_image(g, v) == a.head) {
                let mut mid = SkewElement::default();
                mid.add_term(Basic::Arrow(j), g, &Rational::from_integer(1.into()));
                let lm = alg.mul(&left, &mid);
                if lm.is_zero() {
                    continue;
                }
                for qq in 0..comp.dims[b.head] {
                    let x = alg.arrow_vector(&alg.mul(&lm, &at(b.head, qq, 0)));
                    if ech.insert(x.clone()) {
                        basis.push(x);
                    }
                }
            }
        }
        if basis.len() != b.count {
            return Err(SmashError::Multiplicity {
                tail: comp.vertex_name(b.tail),
                head: comp.vertex_name(b.head),
                expected: b.count,
                found: basis.len(),
            });
        }
        bases.push(basis);
    }

    let offsets = comp.bundle_offsets();
    let mut tables = vec![Vec::new(); q.num_arrows()];
    for (ai, a) in q.arrows().iter().enumerate() {
        let (w, w2) = (a.tail, a.head);
        let (tw, tw2) = (od.witness[w], od.witness[w2]);
        let twi = group.inverse(tw);
        // (t_w⁻¹·a) ⊗ t_w⁻¹ t_{w'}
        let mut mid = SkewElement::default();
        let g = group.mul(twi, tw2);
        for (l, c) in group.elements[twi].arrows.row(ai).iter().enumerate() {
            mid.add_term(Basic::Arrow(l), g, c);
        }
        let (u, v) = (od.orbits[od.orbit_of[w]][0], od.orbits[od.orbit_of[w2]][0]);
        for x in (0..comp.num_vertices()).filter(|&x| comp.vertices[x].base == u) {
            for y in (0..comp.num_vertices()).filter(|&y| comp.vertices[y].base == v) {
                let bundle_ids: Vec<usize> =
                    (0..comp.bundles.len()).filter(|&i| comp.bundles[i].tail == x && comp.bundles[i].head == y).collect();
                let mut ech = Echelon::default();
                let mut arrow_of = Vec::new();
                for &bi in &bundle_ids {
                    for (k, vec) in bases[bi].iter().enumerate() {
                        ech.insert(vec.clone());
                        arrow_of.push(offsets[bi] + k);
                    }
                }
                for p in 0..comp.dims[x] {
                    let lm = alg.mul(&at(x, 0, p), &mid);
                    if lm.is_zero() {
                        continue;
                    }
                    for qq in 0..comp.dims[y] {
                        let z = alg.mul(&lm, &at(y, qq, 0));
                        if z.is_zero() {
                            continue;
                        }
                        let coords = ech.coords(alg.arrow_vector(&z)).ok_or_else(|| {
                            SmashError::Inconsistent(format!(
                                "e·{}·e leaves the arrow span {}→{}",
                                a.name,
                                comp.vertex_name(x),
                                comp.vertex_name(y)
                            ))
                        })?;
                        for (k, c) in coords.into_iter().enumerate() {
                            if !c.is_zero() {
                                tables[ai].push(Term { arrow: arrow_of[k], p, q: qq, coeff: c });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(FiniteLift { units, tables, witnesses: od.witness.clone(), bases })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeded_rng;
    use rand::Rng;

    fn random_element(alg: &SkewAlgebra, seed: u64) -> SkewElement {
        let mut rng = seeded_rng(seed);
        let mut x = SkewElement::default();
        for _ in 0..6 {
            let g = rng.gen_range(0..alg.group.order());
            let c = Rational::from_integer(rng.gen_range(-4i64..=4).into());
            let b = if rng.gen_bool(0.5) {
                Basic::Vertex(rng.gen_range(0..alg.quiver.num_vertices()))
            } else {
                Basic::Arrow(rng.gen_range(0..alg.quiver.num_arrows()))
            };
            x.add_term(b, g, &c);
        }
        x
    }

    #[test]
    fn skew_product_is_associative() {
        let q = Quiver::subspace(3);
        let act = FiniteAction::symmetric_on_subspace(3);
        let group = act.group(&q).unwrap();
        let alg = SkewAlgebra { quiver: &q, group: &group };
        for s in 0..20 {
            let (x, y, z) = (random_element(&alg, 3 * s), random_element(&alg, 3 * s + 1), random_element(&alg, 3 * s + 2));
            assert_eq!(alg.mul(&alg.mul(&x, &y), &z), alg.mul(&x, &alg.mul(&y, &z)));
        }
    }

    #[test]
    fn vertex_idempotents_are_orthogonal() {
        let q = Quiver::kronecker(3);
        let act = FiniteAction::symmetric_on_kronecker(3);
        let group = act.group(&q).unwrap();
        let alg = SkewAlgebra { quiver: &q, group: &group };
        let blocks = symmetric_group_blocks(3).unwrap();
        let idem: Vec<SkewElement> = blocks
            .iter()
            .flat_map(|b| (0..b.size()).map(move |i| b.units[i][i].clone()))
            .map(|e| alg.at_vertex(0, &e))
            .collect();
        for (i, e) in idem.iter().enumerate() {
            for (j, f) in idem.iter().enumerate() {
                let p = alg.mul(e, f);
                assert_eq!(p, if i == j { e.clone() } else { SkewElement::default() });
            }
        }
    }

    #[test]
    fn echelon_coordinates() {
        let r = |v: &[i64]| v.iter().map(|&x| Rational::from_integer(x.into())).collect::<Vec<_>>();
        let mut e = Echelon::default();
        assert!(e.insert(r(&[1, 2, 0])));
        assert!(e.insert(r(&[0, 1, 1])));
        assert!(!e.insert(r(&[1, 3, 1])));
        assert_eq!(e.len(), 2);
        assert_eq!(e.coords(r(&[2, 1, -3])).unwrap(), r(&[2, -3]));
        assert!(e.coords(r(&[0, 0, 1])).is_none());
    }
}
