//! The quiver Q_G of a skew group algebra (finite groups) or of a smash product with the
//! dual of a polynomial representation theory (GL_n, tori), with components, the induced map
//! on dimension vectors, twisting of representations and root search.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{RatMatrix, Rational};
use crate::partition::{dim_gl_irrep, dim_symgroup_irrep, lr_coefficient, partitions_of, Partition};
use crate::quiver::{decompose_indecomposables, random_rep, Arrow, Quiver, QuiverError, Representation};
use crate::schur::{gl_irrep_realization, symmetric_power_basis, tensor_power, SchurError};
use crate::symmetric::{module_multiplicity, orbits_and_stabilizers, FiniteAction, Permutation, SymmetricError};

#[derive(Debug, thiserror::Error)]
pub enum QgError {
    #[error(transparent)]
    Symmetric(#[from] SymmetricError),
    #[error(transparent)]
    Schur(#[from] SchurError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("invalid group datum: {0}")]
    Datum(String),
    #[error("the window contains no vertices")]
    EmptyWindow,
    #[error("window exhausted at vertex {0}; enlarge the window")]
    WindowExhausted(String),
    #[error("unknown Q_G vertex {0:?}")]
    UnknownVertex(String),
    #[error("the base quiver has an oriented cycle")]
    Cyclic,
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// `R_{uv} = ⊕ V_μ` for the arrows `u → v`, which are listed in quiver order and identified
/// with the concatenated bases of the constituents (see [`ModuleBasis`]).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowModule {
    pub tail: String,
    pub head: String,
    pub constituents: Vec<Partition>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlDatum {
    pub n: usize,
    pub arrow_modules: Vec<ArrowModule>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusDatum {
    pub rank: usize,
    /// One weight per arrow, in arrow order.
    pub weights: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupDatum {
    Finite(FiniteAction),
    Gl(GlDatum),
    Torus(TorusDatum),
}

/// An element of the group of a datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupElement {
    Finite(Permutation),
    Gl(RatMatrix),
    Torus(Vec<Rational>),
}

impl GlDatum {
    /// `GL_n` acting naturally on the arrows of the n-Kronecker quiver.
    pub fn natural_kronecker(n: usize) -> Self {
        GlDatum {
            n,
            arrow_modules: vec![ArrowModule { tail: "1".into(), head: "2".into(), constituents: vec![Partition::new(vec![1])] }],
        }
    }

    /// Per arrow module: tail, head, and each constituent with its arrow indices.
    pub fn resolve(&self, q: &Quiver) -> Result<Vec<ResolvedModule>, QgError> {
        let mut out = Vec::new();
        let mut covered = vec![false; q.num_arrows()];
        for m in &self.arrow_modules {
            let tail = q.vertex_index(&m.tail).ok_or_else(|| QgError::Datum(format!("unknown vertex {}", m.tail)))?;
            let head = q.vertex_index(&m.head).ok_or_else(|| QgError::Datum(format!("unknown vertex {}", m.head)))?;
            let arrows = q.arrows_between(tail, head);
            let mut parts = Vec::new();
            let mut next = 0;
            for mu in &m.constituents {
                let d = dim_gl_irrep(mu, self.n).map_err(|e| QgError::Datum(e.to_string()))?;
                if d == 0 {
                    return Err(QgError::Datum(format!("{mu} has more than {} rows", self.n)));
                }
                parts.push((mu.clone(), arrows.get(next..next + d).unwrap_or_default().to_vec()));
                next += d;
            }
            if next != arrows.len() {
                return Err(QgError::Datum(format!(
                    "modules for {}→{} have total dimension {next}, but there are {} arrows",
                    m.tail,
                    m.head,
                    arrows.len()
                )));
            }
            for &a in &arrows {
                if covered[a] {
                    return Err(QgError::Datum(format!("arrows {}→{} described twice", m.tail, m.head)));
                }
                covered[a] = true;
            }
            out.push(ResolvedModule { tail, head, constituents: parts });
        }
        if let Some(a) = covered.iter().position(|c| !c) {
            return Err(QgError::Datum(format!("arrow {} has no module", q.arrows()[a].name)));
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct ResolvedModule {
    pub tail: usize,
    pub head: usize,
    /// Constituent and the arrows spanning it, in basis order.
    pub constituents: Vec<(Partition, Vec<usize>)>,
}

/// A polynomial irreducible `V_μ ⊂ V^{⊗m}` with basis rows `w_i` and dual functionals
/// `c_l` (`c_l·w_i^T = δ_{li}`). `Sym^m` uses the monomial basis of
/// [`symmetric_power_basis`]; other shapes use the reduced echelon basis of the Young
/// symmetrizer image, with coordinate functionals at the pivots.
#[derive(Clone, Debug)]
pub struct ModuleBasis {
    pub shape: Partition,
    pub n: usize,
    pub w: RatMatrix,
    pub c: RatMatrix,
}

impl ModuleBasis {
    pub fn new(shape: &Partition, n: usize) -> Result<Self, SchurError> {
        let m = shape.size();
        if shape.rows() <= 1 {
            let (w, c) = symmetric_power_basis(n, m);
            return Ok(ModuleBasis {
                shape: shape.clone(),
                n,
                w: RatMatrix::from_rows(w).expect("rectangular"),
                c: RatMatrix::from_rows(c).expect("rectangular"),
            });
        }
        let irr = gl_irrep_realization(shape, n)?;
        let (_, pivots) = irr.basis.rref();
        let mut c = RatMatrix::zeros(irr.dim(), irr.basis.cols());
        for (k, &p) in pivots.iter().enumerate() {
            c[(k, p)] = Rational::one();
        }
        Ok(ModuleBasis { shape: shape.clone(), n, w: irr.basis, c })
    }

    pub fn dim(&self) -> usize {
        self.w.rows()
    }

    /// Row action: `w·g^{⊗m} = act(g)·w`.
    pub fn act(&self, g: &RatMatrix) -> RatMatrix {
        &(&self.w * &tensor_power(g, self.shape.size())) * &self.c.transpose()
    }
}

/// Vertex label: a partition (finite and GL data) or a weight (tori).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    Partition(Partition),
    Weight(Vec<i64>),
}

impl Label {
    pub fn partition(&self) -> Option<&Partition> {
        match self {
            Label::Partition(p) => Some(p),
            Label::Weight(_) => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Partition(p) => write!(f, "{p}"),
            Label::Weight(w) => {
                let s: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", s.join(","))
            }
        }
    }
}

impl std::str::FromStr for Label {
    type Err = QgError;

    fn from_str(s: &str) -> Result<Self, QgError> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let w = inner
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| t.trim().parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| QgError::UnknownVertex(s.into()))?;
            return Ok(Label::Weight(w));
        }
        s.parse::<Partition>().map(Label::Partition).map_err(|_| QgError::UnknownVertex(s.into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QgVertex {
    pub base: usize,
    pub label: Label,
}

/// Where the arrows of a bundle come from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Origin {
    /// A pair-orbit representative `(u, v')` of the finite action (index into the pair list).
    Pair(usize),
    /// Constituent `constituent` of arrow module `module` (GL).
    Module { module: usize, constituent: usize },
    /// A single arrow of Q (torus).
    Arrow(usize),
}

/// `count` parallel arrows spanning one intertwiner space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bundle {
    pub tail: usize,
    pub head: usize,
    pub count: usize,
    pub origin: Origin,
}

#[derive(Clone, Debug)]
pub struct QgQuiver {
    pub base: Arc<Quiver>,
    pub vertices: Vec<QgVertex>,
    /// `d_ρ`, the dimension of the irreducible labelling each vertex.
    pub dims: Vec<usize>,
    /// The vertices of Q over which each vertex spreads: the orbit of its base vertex.
    pub spread: Vec<Vec<usize>>,
    /// Bundles sorted by (tail, head); arrows are numbered bundle by bundle.
    pub bundles: Vec<Bundle>,
    /// Vertices with neighbours outside the window.
    pub open: Vec<bool>,
}

impl QgQuiver {
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.bundles.iter().map(|b| b.count).sum()
    }

    pub fn vertex_name(&self, i: usize) -> String {
        let v = &self.vertices[i];
        format!("{}:{}", self.base.vertices()[v.base], v.label)
    }

    pub fn find(&self, base: usize, label: &Label) -> Option<usize> {
        self.vertices.iter().position(|v| v.base == base && &v.label == label)
    }

    /// Looks up `"u:[λ]"` or `"u:(w1,...)"`.
    pub fn find_by_name(&self, name: &str) -> Result<usize, QgError> {
        let (u, l) = name.split_once(':').ok_or_else(|| QgError::UnknownVertex(name.into()))?;
        let base = self.base.vertex_index(u.trim()).ok_or_else(|| QgError::UnknownVertex(name.into()))?;
        let label: Label = l.parse()?;
        self.find(base, &label).ok_or_else(|| QgError::UnknownVertex(name.into()))
    }

    /// Arrows `u → v` counted with multiplicity.
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.bundles.iter().filter(|b| b.tail == u && b.head == v).map(|b| b.count).sum()
    }

    /// First arrow index of each bundle.
    pub fn bundle_offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.bundles.len());
        let mut k = 0;
        for b in &self.bundles {
            off.push(k);
            k += b.count;
        }
        off
    }

    /// The quiver itself, with vertex names `u:[λ]` and arrows `B1, B2, …`.
    pub fn quiver(&self) -> Quiver {
        let names = (0..self.num_vertices()).map(|i| self.vertex_name(i)).collect();
        let mut arrows = Vec::new();
        for b in &self.bundles {
            for _ in 0..b.count {
                arrows.push(Arrow { name: format!("B{}", arrows.len() + 1), tail: b.tail, head: b.head });
            }
        }
        Quiver::new(names, arrows).expect("names are distinct")
    }

    fn sub(&self, keep: &[usize]) -> QgQuiver {
        let mut map = vec![usize::MAX; self.num_vertices()];
        for (i, &k) in keep.iter().enumerate() {
            map[k] = i;
        }
        let bundles = self
            .bundles
            .iter()
            .filter(|b| map[b.tail] != usize::MAX && map[b.head] != usize::MAX)
            .map(|b| Bundle { tail: map[b.tail], head: map[b.head], ..b.clone() })
            .collect();
        QgQuiver {
            base: self.base.clone(),
            vertices: keep.iter().map(|&k| self.vertices[k].clone()).collect(),
            dims: keep.iter().map(|&k| self.dims[k]).collect(),
            spread: keep.iter().map(|&k| self.spread[k].clone()).collect(),
            bundles,
            open: keep.iter().map(|&k| self.open[k]).collect(),
        }
    }
}

fn finish(mut qg: QgQuiver) -> QgQuiver {
    qg.bundles.sort_by_key(|b| (b.tail, b.head));
    qg
}

/// Q_G for a finite group whose vertex stabilizers act as full symmetric groups.
pub fn build_qg_finite(q: &Arc<Quiver>, act: &FiniteAction) -> Result<QgQuiver, QgError> {
    let group = act.group(q)?;
    let od = orbits_and_stabilizers(q, &group);
    let mut vertices = Vec::new();
    let mut dims = Vec::new();
    let mut spread = Vec::new();
    let mut by_orbit: Vec<Vec<usize>> = Vec::new();
    for (o, orbit) in od.orbits.iter().enumerate() {
        let mut labels = od.labels(&group, o)?;
        labels.reverse();
        let mut ids = Vec::new();
        for l in labels {
            ids.push(vertices.len());
            dims.push(dim_symgroup_irrep(&l));
            spread.push(orbit.clone());
            vertices.push(QgVertex { base: orbit[0], label: Label::Partition(l) });
        }
        by_orbit.push(ids);
    }
    let mut bundles = Vec::new();
    for (pi, pair) in od.pairs.iter().enumerate() {
        if pair.arrows.is_empty() {
            continue;
        }
        for &x in &by_orbit[pair.u_orbit] {
            for &y in &by_orbit[pair.v_orbit] {
                let (Label::Partition(rho), Label::Partition(sigma)) = (&vertices[x].label, &vertices[y].label) else {
                    unreachable!("finite labels are partitions")
                };
                let count = module_multiplicity(&group, &od, pair, rho, sigma)?;
                if count > 0 {
                    bundles.push(Bundle { tail: x, head: y, count, origin: Origin::Pair(pi) });
                }
            }
        }
    }
    let open = vec![false; vertices.len()];
    Ok(finish(QgQuiver { base: q.clone(), vertices, dims, spread, bundles, open }))
}

/// All vertices `(u, λ)` of Q_G with `|λ| ≤ max_degree` and the arrows among them.
pub fn build_qg_gl(q: &Arc<Quiver>, datum: &GlDatum, max_degree: usize) -> Result<QgQuiver, QgError> {
    if !q.is_acyclic() {
        return Err(QgError::Cyclic);
    }
    let modules = datum.resolve(q)?;
    let n = datum.n;
    let mut vertices = Vec::new();
    let mut dims = Vec::new();
    for u in 0..q.num_vertices() {
        let mut labels: Vec<Partition> = (0..=max_degree).flat_map(|d| partitions_of(d, n)).collect();
        labels.sort();
        for l in labels {
            dims.push(dim_gl_irrep(&l, n).map_err(|e| QgError::Datum(e.to_string()))?);
            vertices.push(QgVertex { base: u, label: Label::Partition(l) });
        }
    }
    if vertices.is_empty() {
        return Err(QgError::EmptyWindow);
    }
    let index: BTreeMap<(usize, Partition), usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| ((v.base, v.label.partition().expect("partition").clone()), i))
        .collect();
    let mut bundles = Vec::new();
    let mut open = vec![false; vertices.len()];
    for (mi, m) in modules.iter().enumerate() {
        for (ci, (mu, _)) in m.constituents.iter().enumerate() {
            for (&(base, ref sigma), &y) in index.range((m.head, Partition::empty())..) {
                if base != m.head {
                    break;
                }
                let deg = sigma.size() + mu.size();
                let sources = partitions_of(deg, n);
                for rho in &sources {
                    let c = lr_coefficient(sigma, mu, rho);
                    if c == 0 {
                        continue;
                    }
                    match index.get(&(m.tail, rho.clone())) {
                        Some(&x) => bundles.push(Bundle {
                            tail: x,
                            head: y,
                            count: c,
                            origin: Origin::Module { module: mi, constituent: ci },
                        }),
                        None => open[y] = true,
                    }
                }
            }
        }
    }
    let spread = vertices.iter().map(|v| vec![v.base]).collect();
    Ok(finish(QgQuiver { base: q.clone(), vertices, dims, spread, bundles, open }))
}

fn weight_box(rank: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out.into_iter().flat_map(|w| (-r..=r).map(move |x| [w.clone(), vec![x]].concat())).collect();
    }
    out
}

/// Vertices `(u, w)` with `|w_i| ≤ radius`; each arrow `a: u → v` gives `(u, w + wt(a)) → (v, w)`.
pub fn build_qg_torus(q: &Arc<Quiver>, datum: &TorusDatum, radius: i64) -> Result<QgQuiver, QgError> {
    if datum.weights.len() != q.num_arrows() || datum.weights.iter().any(|w| w.len() != datum.rank) {
        return Err(QgError::Datum(format!("need {} weights of length {}", q.num_arrows(), datum.rank)));
    }
    if radius < 0 || q.num_vertices() == 0 {
        return Err(QgError::EmptyWindow);
    }
    let ws = weight_box(datum.rank, radius);
    let mut vertices = Vec::new();
    for u in 0..q.num_vertices() {
        for w in &ws {
            vertices.push(QgVertex { base: u, label: Label::Weight(w.clone()) });
        }
    }
    let index: BTreeMap<(usize, Vec<i64>), usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| match &v.label {
            Label::Weight(w) => ((v.base, w.clone()), i),
            Label::Partition(_) => unreachable!(),
        })
        .collect();
    let mut bundles = Vec::new();
    let mut open = vec![false; vertices.len()];
    for (ai, a) in q.arrows().iter().enumerate() {
        let wt = &datum.weights[ai];
        for w in &ws {
            let src: Vec<i64> = w.iter().zip(wt).map(|(x, y)| x + y).collect();
            let y = index[&(a.head, w.clone())];
            match index.get(&(a.tail, src)) {
                Some(&x) => bundles.push(Bundle { tail: x, head: y, count: 1, origin: Origin::Arrow(ai) }),
                None => open[y] = true,
            }
            let tgt: Vec<i64> = w.iter().zip(wt).map(|(x, y)| x - y).collect();
            if !index.contains_key(&(a.head, tgt)) {
                open[index[&(a.tail, w.clone())]] = true;
            }
        }
    }
    let dims = vec![1; vertices.len()];
    let spread = vertices.iter().map(|v| vec![v.base]).collect();
    Ok(finish(QgQuiver { base: q.clone(), vertices, dims, spread, bundles, open }))
}

/// The connected component containing `v`, in the vertex order of `qg`.
pub fn component_of(qg: &QgQuiver, v: usize) -> Result<QgQuiver, QgError> {
    if v >= qg.num_vertices() {
        return Err(QgError::UnknownVertex(v.to_string()));
    }
    let mut adj = vec![Vec::new(); qg.num_vertices()];
    for b in &qg.bundles {
        adj[b.tail].push(b.head);
        adj[b.head].push(b.tail);
    }
    let mut seen = vec![false; qg.num_vertices()];
    seen[v] = true;
    let mut queue = VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        if qg.open[x] {
            return Err(QgError::WindowExhausted(qg.vertex_name(x)));
        }
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    let keep: Vec<usize> = (0..qg.num_vertices()).filter(|&i| seen[i]).collect();
    let comp = qg.sub(&keep);
    if qg.base.is_acyclic() && !comp.quiver().is_acyclic() {
        return Err(QgError::Cyclic);
    }
    Ok(comp)
}

const WINDOW_LIMIT: usize = 64;

/// The GL component of `(base, label)`, growing the degree window until the closure fits.
pub fn gl_component(q: &Arc<Quiver>, datum: &GlDatum, base: usize, label: &Partition) -> Result<QgQuiver, QgError> {
    let mut window = label.size() + 1;
    loop {
        let qg = build_qg_gl(q, datum, window)?;
        let v = qg
            .find(base, &Label::Partition(label.clone()))
            .ok_or_else(|| QgError::UnknownVertex(format!("{base}:{label}")))?;
        match component_of(&qg, v) {
            Err(QgError::WindowExhausted(_)) if window < WINDOW_LIMIT => window *= 2,
            other => return other,
        }
    }
}

/// The torus component of `(base, weight)`, growing the weight box until the closure fits.
pub fn torus_component(q: &Arc<Quiver>, datum: &TorusDatum, base: usize, weight: &[i64]) -> Result<QgQuiver, QgError> {
    let mut radius = weight.iter().map(|x| x.abs()).max().unwrap_or(0) + 1;
    loop {
        let qg = build_qg_torus(q, datum, radius)?;
        let v = qg
            .find(base, &Label::Weight(weight.to_vec()))
            .ok_or_else(|| QgError::UnknownVertex(format!("{base}:{weight:?}")))?;
        match component_of(&qg, v) {
            Err(QgError::WindowExhausted(_)) if (radius as usize) < WINDOW_LIMIT => radius *= 2,
            other => return other,
        }
    }
}

/// `r(β)(w) = Σ_{(u,ρ): w ∈ O_u} d_ρ·β(u,ρ)`.
pub fn r_map(qg: &QgQuiver, beta: &[usize]) -> Result<Vec<usize>, QgError> {
    if beta.len() != qg.num_vertices() {
        return Err(QgError::Shape(format!("dimension vector of length {}, expected {}", beta.len(), qg.num_vertices())));
    }
    let mut out = vec![0; qg.base.num_vertices()];
    for (i, &b) in beta.iter().enumerate() {
        for &w in &qg.spread[i] {
            out[w] += qg.dims[i] * b;
        }
    }
    Ok(out)
}

/// Matrix whose row `l` holds the coordinates of `g·a_l` in the arrow basis.
pub fn arrow_action_matrix(q: &Quiver, datum: &GroupDatum, g: &GroupElement) -> Result<(Permutation, RatMatrix), QgError> {
    let na = q.num_arrows();
    match (datum, g) {
        (GroupDatum::Finite(act), GroupElement::Finite(p)) => {
            let group = act.group(q)?;
            let i = group
                .index_of(p)
                .ok_or_else(|| QgError::Shape(format!("{p} is not in the acting group")))?;
            let el = &group.elements[i];
            Ok((el.vertices.clone(), el.arrows.clone()))
        }
        (GroupDatum::Gl(d), GroupElement::Gl(m)) => {
            if m.shape() != (d.n, d.n) {
                return Err(QgError::Shape(format!("expected a {}x{} matrix", d.n, d.n)));
            }
            // column coefficients F(g) with g·a_i = Σ_l F[l][i] a_l satisfy F(g) = act(gᵀ)ᵀ
            let gt = m.transpose();
            let mut out = RatMatrix::zeros(na, na);
            for module in d.resolve(q)? {
                for (mu, arrows) in &module.constituents {
                    let f = ModuleBasis::new(mu, d.n)?.act(&gt).transpose();
                    for (i, &ai) in arrows.iter().enumerate() {
                        for (l, &al) in arrows.iter().enumerate() {
                            out[(ai, al)] = f[(l, i)].clone();
                        }
                    }
                }
            }
            Ok((Permutation::identity(q.num_vertices()), out))
        }
        (GroupDatum::Torus(d), GroupElement::Torus(t)) => {
            if t.len() != d.rank || t.iter().any(|x| x.is_zero()) {
                return Err(QgError::Shape(format!("expected {} nonzero scalars", d.rank)));
            }
            let mut out = RatMatrix::zeros(na, na);
            for (a, wt) in d.weights.iter().enumerate() {
                let mut s = Rational::one();
                for (x, &e) in t.iter().zip(wt) {
                    let p = x.pow(e.unsigned_abs() as i32);
                    s *= if e < 0 { p.recip() } else { p };
                }
                out[(a, a)] = s;
            }
            Ok((Permutation::identity(q.num_vertices()), out))
        }
        _ => Err(QgError::Shape("group element does not match the datum".into())),
    }
}

/// The twist `M^g`: `(M^g)_w = M_{g⁻¹w}` and `M^g(a) = M(g⁻¹·a)`, so that
/// `h·(g·M) = (hg)·M`.
pub fn group_act_rep(datum: &GroupDatum, g: &GroupElement, m: &Representation) -> Result<Representation, QgError> {
    let q = m.quiver();
    let ginv = match g {
        GroupElement::Finite(p) => GroupElement::Finite(p.inverse()),
        GroupElement::Gl(x) => GroupElement::Gl(x.inverse().map_err(|_| QgError::Shape("singular matrix".into()))?),
        GroupElement::Torus(t) => {
            if t.iter().any(|x| x.is_zero()) {
                return Err(QgError::Shape("zero torus coordinate".into()));
            }
            GroupElement::Torus(t.iter().map(|x| x.recip()).collect())
        }
    };
    let (vperm, c) = arrow_action_matrix(q, datum, &ginv)?;
    let dims: Vec<usize> = (0..q.num_vertices()).map(|w| m.dims()[vperm.apply(w)]).collect();
    let mut maps = Vec::new();
    for (l, a) in q.arrows().iter().enumerate() {
        let mut f = RatMatrix::zeros(dims[a.tail], dims[a.head]);
        for j in 0..q.num_arrows() {
            let x = &c[(l, j)];
            if !x.is_zero() {
                f.add_scaled(m.map(j), x);
            }
        }
        maps.push(f);
    }
    Ok(Representation::new(q.clone(), dims, maps)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormType {
    Definite,
    Semidefinite,
    Indefinite,
}

/// Symmetrized Tits form `(x,y) = 2Σx_v y_v − Σ_a (x_ta y_ha + x_ha y_ta)`.
pub fn tits_matrix(q: &Quiver) -> RatMatrix {
    let n = q.num_vertices();
    let mut m = RatMatrix::scalar(n, &Rational::from_integer(2.into()));
    for a in q.arrows() {
        m[(a.tail, a.head)] -= Rational::one();
        m[(a.head, a.tail)] -= Rational::one();
    }
    m
}

/// Classifies a symmetric matrix by symmetric elimination.
pub fn form_type(m: &RatMatrix) -> FormType {
    let mut a = m.clone();
    let n = a.rows();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut degenerate = false;
    while !alive.is_empty() {
        let Some(pos) = alive.iter().position(|&i| a[(i, i)].is_positive()) else {
            if alive.iter().any(|&i| a[(i, i)].is_negative()) {
                return FormType::Indefinite;
            }
            if alive.iter().any(|&i| alive.iter().any(|&j| !a[(i, j)].is_zero())) {
                return FormType::Indefinite;
            }
            degenerate = true;
            break;
        };
        let p = alive.remove(pos);
        let piv = a[(p, p)].clone();
        for &i in &alive {
            let f = &a[(i, p)] / &piv;
            if f.is_zero() {
                continue;
            }
            for &j in &alive {
                let d = &f * &a[(p, j)];
                a[(i, j)] -= d;
            }
        }
    }
    if degenerate {
        FormType::Semidefinite
    } else {
        FormType::Definite
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootWitness {
    pub beta: Vec<usize>,
    /// True when certified by the Tits form; false for the seeded indecomposability test.
    pub exact: bool,
}

/// A root β of the component with `r(β) = α` and entries at most `bound`, searched in
/// lexicographic order of β.
pub fn g_root_witness(comp: &QgQuiver, alpha: &[usize], bound: usize, seed: u64) -> Result<Option<RootWitness>, QgError> {
    if alpha.len() != comp.base.num_vertices() {
        return Err(QgError::Shape(format!("dimension vector of length {}", alpha.len())));
    }
    let quiver = Arc::new(comp.quiver());
    let tits = tits_matrix(&quiver);
    let kind = form_type(&tits);
    let n = comp.num_vertices();
    let mut beta = vec![0usize; n];
    loop {
        // odometer increment
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
            if beta[k] < bound {
                beta[k] += 1;
                for b in &mut beta[k + 1..] {
                    *b = 0;
                }
                break;
            }
        }
        if r_map(comp, &beta)? != alpha {
            continue;
        }
        let b: Vec<Rational> = beta.iter().map(|&x| Rational::from_integer(x.into())).collect();
        let row = RatMatrix::row_vector(b);
        let q2 = &(&row * &tits) * &row.transpose();
        let qv = &q2[(0, 0)] / Rational::from_integer(2.into());
        match kind {
            FormType::Definite | FormType::Semidefinite => {
                if qv <= Rational::one() {
                    return Ok(Some(RootWitness { beta, exact: true }));
                }
            }
            FormType::Indefinite => {
                if qv > Rational::one() {
                    continue;
                }
                let m = random_rep(quiver.clone(), &beta, seed, 9);
                let parts = decompose_indecomposables(&m, seed).map_err(|e| QgError::Datum(e.to_string()))?;
                if parts.len() == 1 && parts[0].multiplicity == 1 {
                    return Ok(Some(RootWitness { beta, exact: false }));
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{dim_symgroup_irrep, kronecker};
    use crate::quiver::{is_isomorphic, random_base_change, IsoResult};
    use crate::linalg::int;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    fn lp(v: &[usize]) -> Label {
        Label::Partition(p(v))
    }

    #[test]
    fn s4_subspace_quiver() {
        let q = Arc::new(Quiver::subspace(4));
        let qg = build_qg_finite(&q, &FiniteAction::symmetric_on_subspace(4)).unwrap();
        assert_eq!(qg.num_vertices(), 8);
        let names: Vec<String> = (0..8).map(|i| qg.vertex_name(i)).collect();
        assert_eq!(names[0], "1:[1,1,1]");
        assert_eq!(names[3], "5:[1,1,1,1]");
        for x in 0..3 {
            for y in 3..8 {
                let (rho, sigma) = (qg.vertices[x].label.partition().unwrap(), qg.vertices[y].label.partition().unwrap());
                let pieri = lr_coefficient(rho, &p(&[1]), sigma);
                assert_eq!(qg.multiplicity(x, y), pieri);
            }
        }
        assert_eq!(qg.num_arrows(), 7);
        // Wedderburn count over each representative
        assert_eq!((0..3).map(|i| qg.dims[i].pow(2)).sum::<usize>(), 6);
        assert_eq!((3..8).map(|i| qg.dims[i].pow(2)).sum::<usize>(), 24);
        assert_eq!(r_map(&qg, &[1, 0, 0, 0, 0, 0, 0, 0]).unwrap(), vec![1, 1, 1, 1, 0]);
    }

    #[test]
    fn kronecker_symmetric_actions() {
        for n in 2..=3 {
            let q = Arc::new(Quiver::kronecker(n));
            let qg = build_qg_finite(&q, &FiniteAction::symmetric_on_kronecker(n)).unwrap();
            let labels = partitions_of(n, n);
            assert_eq!(qg.num_vertices(), 2 * labels.len());
            let hook = p(&[n - 1, 1]);
            for x in 0..labels.len() {
                for y in labels.len()..qg.num_vertices() {
                    let (rho, sigma) = (qg.vertices[x].label.partition().unwrap(), qg.vertices[y].label.partition().unwrap());
                    let want = kronecker(rho, &hook, sigma).unwrap() + usize::from(rho == sigma);
                    assert_eq!(qg.multiplicity(x, y), want, "{rho} {sigma}");
                }
            }
        }
        let q = Arc::new(Quiver::kronecker(2));
        let qg = build_qg_finite(&q, &FiniteAction::symmetric_on_kronecker(2)).unwrap();
        assert_eq!(qg.num_arrows(), 4);
        assert!(qg.bundles.iter().all(|b| b.count == 1));
    }

    #[test]
    fn trivial_action_gives_the_quiver() {
        let q = Arc::new(Quiver::subspace(3));
        let qg = build_qg_finite(&q, &FiniteAction::trivial()).unwrap();
        assert_eq!(qg.num_vertices(), 4);
        assert_eq!(qg.num_arrows(), 3);
        assert!(qg.dims.iter().all(|&d| d == 1));
        assert_eq!(qg.vertex_name(0), "1:[]");
    }

    #[test]
    fn gl_components_of_kronecker_quivers() {
        for n in 2..=4 {
            let q = Arc::new(Quiver::kronecker(n));
            let d = GlDatum::natural_kronecker(n);
            let first = gl_component(&q, &d, 1, &p(&[1])).unwrap();
            let names: Vec<String> = (0..first.num_vertices()).map(|i| first.vertex_name(i)).collect();
            assert_eq!(names, ["1:[1,1]", "1:[2]", "2:[1]"]);
            assert_eq!(first.num_arrows(), 2);
            assert_eq!(r_map(&first, &[0, 0, 1]).unwrap(), vec![0, n]);
            let trivial = gl_component(&q, &d, 0, &p(&[1])).unwrap();
            assert_eq!(trivial.num_vertices(), 2);
        }
        let q = Arc::new(Quiver::kronecker(3));
        let d = GlDatum::natural_kronecker(3);
        let second = gl_component(&q, &d, 1, &p(&[1, 1])).unwrap();
        let names: Vec<String> = (0..second.num_vertices()).map(|i| second.vertex_name(i)).collect();
        assert_eq!(names, ["1:[1,1,1]", "1:[2,1]", "1:[3]", "2:[1,1]", "2:[2]"]);
        assert_eq!(second.num_arrows(), 4);
        let third = gl_component(&q, &d, 1, &p(&[1, 1, 1])).unwrap();
        assert_eq!((third.num_vertices(), third.num_arrows()), (7, 6));
        assert_eq!(form_type(&tits_matrix(&third.quiver())), FormType::Definite);
        let mut degree: Vec<usize> = (0..7).map(|v| third.bundles.iter().filter(|b| b.tail == v || b.head == v).count()).collect();
        degree.sort();
        assert_eq!(degree, [1, 1, 1, 2, 2, 2, 3]);
    }

    #[test]
    fn gl2_symmetric_square_component() {
        let q = Arc::new(Quiver::kronecker(3));
        let d = GlDatum {
            n: 2,
            arrow_modules: vec![ArrowModule { tail: "1".into(), head: "2".into(), constituents: vec![p(&[2])] }],
        };
        let c = gl_component(&q, &d, 1, &p(&[1])).unwrap();
        let names: Vec<String> = (0..c.num_vertices()).map(|i| c.vertex_name(i)).collect();
        assert_eq!(names, ["1:[2,1]", "1:[3]", "2:[1]"]);
        assert_eq!(c.num_arrows(), 2);
        assert!(d.resolve(&Quiver::kronecker(2)).is_err());
    }

    #[test]
    fn windows_report_exhaustion() {
        let q = Arc::new(Quiver::kronecker(2));
        let qg = build_qg_gl(&q, &GlDatum::natural_kronecker(2), 1).unwrap();
        let v = qg.find(1, &lp(&[1])).unwrap();
        assert!(matches!(component_of(&qg, v), Err(QgError::WindowExhausted(_))));
        let t = TorusDatum { rank: 1, weights: vec![vec![1]] };
        let one = Arc::new(Quiver::kronecker(1));
        assert_eq!(torus_component(&one, &t, 0, &[0]).unwrap().num_vertices(), 2);
        // the loop quiver covers an infinite line
        let jordan = Arc::new(Quiver::from_names(&["1"], &[("a", "1", "1")]).unwrap());
        assert!(matches!(torus_component(&jordan, &t, 0, &[0]), Err(QgError::WindowExhausted(_))));
    }

    #[test]
    fn torus_quivers() {
        let q = Arc::new(Quiver::kronecker(2));
        let zero = TorusDatum { rank: 1, weights: vec![vec![0], vec![0]] };
        let c = torus_component(&q, &zero, 0, &[0]).unwrap();
        assert_eq!((c.num_vertices(), c.num_arrows()), (2, 2));
        let qg = build_qg_torus(&q, &TorusDatum { rank: 2, weights: vec![vec![1, 0], vec![0, 1]] }, 2).unwrap();
        let v = qg.find(0, &Label::Weight(vec![1, 0])).unwrap();
        let w = qg.find(1, &Label::Weight(vec![0, 0])).unwrap();
        assert_eq!(qg.multiplicity(v, w), 1);
        assert_eq!(qg.vertex_name(v), "1:(1,0)");
        assert_eq!(qg.find_by_name("1:(1,0)").unwrap(), v);
    }

    #[test]
    fn root_witnesses() {
        let q = Arc::new(Quiver::kronecker(3));
        let first = gl_component(&q, &GlDatum::natural_kronecker(3), 1, &p(&[1])).unwrap();
        let w = g_root_witness(&first, &[3, 3], 3, 0).unwrap().unwrap();
        assert_eq!(w, RootWitness { beta: vec![1, 0, 1], exact: true });
        assert!(g_root_witness(&first, &[1, 0], 3, 0).unwrap().is_none());
        assert!(g_root_witness(&first, &[1, 1], 3, 0).unwrap().is_none());
        let f = build_qg_finite(&Arc::new(Quiver::kronecker(2)), &FiniteAction::trivial()).unwrap();
        let w = g_root_witness(&f, &[1, 0], 2, 0).unwrap().unwrap();
        assert_eq!(w.beta, vec![1, 0]);
        // K_3 itself is wild: the witness is probabilistic
        let k3 = build_qg_finite(&Arc::new(Quiver::kronecker(3)), &FiniteAction::trivial()).unwrap();
        let w = g_root_witness(&k3, &[2, 3], 3, 4).unwrap().unwrap();
        assert!(!w.exact);
    }

    #[test]
    fn twisting_is_an_action() {
        let q = Arc::new(Quiver::kronecker(2));
        let datum = GroupDatum::Finite(FiniteAction::symmetric_on_kronecker(2));
        let m = random_rep(q.clone(), &[2, 3], 1, 5);
        let swap = GroupElement::Finite(Permutation::transposition(2, 0, 1));
        let t = group_act_rep(&datum, &swap, &m).unwrap();
        assert_eq!(t.map(0), m.map(1));
        assert_eq!(group_act_rep(&datum, &swap, &t).unwrap(), m);

        let q3 = Arc::new(Quiver::kronecker(3));
        let gl = GroupDatum::Gl(GlDatum::natural_kronecker(3));
        let m = random_rep(q3.clone(), &[2, 2], 2, 5);
        let g = random_base_change(&[3], 3, 4).remove(0);
        let h = random_base_change(&[3], 4, 4).remove(0);
        let id = GroupElement::Gl(RatMatrix::identity(3));
        assert_eq!(group_act_rep(&gl, &id, &m).unwrap(), m);
        let step = group_act_rep(&gl, &GroupElement::Gl(h.clone()), &group_act_rep(&gl, &GroupElement::Gl(g.clone()), &m).unwrap()).unwrap();
        let once = group_act_rep(&gl, &GroupElement::Gl(&h * &g), &m).unwrap();
        assert_eq!(step, once);

        let s2 = GroupDatum::Gl(GlDatum {
            n: 2,
            arrow_modules: vec![ArrowModule { tail: "1".into(), head: "2".into(), constituents: vec![p(&[2])] }],
        });
        let g2 = random_base_change(&[2], 5, 4).remove(0);
        let h2 = random_base_change(&[2], 6, 4).remove(0);
        let step = group_act_rep(&s2, &GroupElement::Gl(h2.clone()), &group_act_rep(&s2, &GroupElement::Gl(g2.clone()), &m).unwrap()).unwrap();
        assert_eq!(step, group_act_rep(&s2, &GroupElement::Gl(&h2 * &g2), &m).unwrap());

        let torus = GroupDatum::Torus(TorusDatum { rank: 1, weights: vec![vec![1], vec![2], vec![-1]] });
        let t2 = GroupElement::Torus(vec![int(2)]);
        let tm = group_act_rep(&torus, &t2, &m).unwrap();
        assert_eq!(tm.map(1), &m.map(1).scale(&Rational::new(1.into(), 4.into())));
        assert_eq!(is_isomorphic(&tm, &m, 3, 0), IsoResult::No);
    }

    #[test]
    fn wedderburn_counts_for_kronecker_actions() {
        for n in 2..=4 {
            let qg = build_qg_finite(&Arc::new(Quiver::kronecker(n)), &FiniteAction::symmetric_on_kronecker(n)).unwrap();
            let total: usize = (0..qg.num_vertices()).filter(|&i| qg.vertices[i].base == 0).map(|i| qg.dims[i].pow(2)).sum();
            let fact: usize = (1..=n).product();
            assert_eq!(total, fact);
            assert!(qg.dims.iter().zip(&qg.vertices).all(|(&d, v)| d == dim_symgroup_irrep(v.label.partition().unwrap())));
        }
    }

    proptest::proptest! {
        #[test]
        fn r_map_is_additive(a in proptest::collection::vec(0usize..4, 3), b in proptest::collection::vec(0usize..4, 3)) {
            let q = Arc::new(Quiver::kronecker(3));
            let c = gl_component(&q, &GlDatum::natural_kronecker(3), 1, &p(&[1])).unwrap();
            let s: Vec<usize> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            let (ra, rb, rs) = (r_map(&c, &a).unwrap(), r_map(&c, &b).unwrap(), r_map(&c, &s).unwrap());
            proptest::prop_assert_eq!(rs, ra.iter().zip(&rb).map(|(x, y)| x + y).collect::<Vec<_>>());
        }
    }
}
