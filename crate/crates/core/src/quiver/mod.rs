//! Quivers, representations and the Euler form.

pub mod hom;
pub mod presentation;

use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::linalg::{int, RatMatrix};
use crate::seeded_rng;

pub use hom::{decompose_indecomposables, ext_dim, hom_dim, hom_space, is_isomorphic, IsoResult, Summand};
pub use presentation::{canonical_resolution, PathComb, ProjectivePresentation};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum QuiverError {
    #[error("duplicate name {0:?}")]
    DuplicateName(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("arrow {0} has shape {1}x{2}, expected {3}x{4}")]
    ArrowShape(String, usize, usize, usize, usize),
    #[error("expected {0} entries, got {1}")]
    Count(usize, usize),
    #[error("representations live on different quivers")]
    DifferentQuivers,
    #[error("quiver has an oriented cycle")]
    Cyclic,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub tail: usize,
    pub head: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self, QuiverError> {
        let mut seen = HashMap::new();
        for v in &vertices {
            if seen.insert(v.clone(), ()).is_some() {
                return Err(QuiverError::DuplicateName(v.clone()));
            }
        }
        let mut names = HashMap::new();
        for a in &arrows {
            if names.insert(a.name.clone(), ()).is_some() {
                return Err(QuiverError::DuplicateName(a.name.clone()));
            }
            if a.tail >= vertices.len() || a.head >= vertices.len() {
                return Err(QuiverError::UnknownVertex(a.name.clone()));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    /// Builds from vertex names and (arrow, tail, head) name triples.
    pub fn from_names(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self, QuiverError> {
        let vs: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let idx = |n: &str| vs.iter().position(|v| v == n).ok_or_else(|| QuiverError::UnknownVertex(n.into()));
        let mut arr = Vec::new();
        for (name, t, h) in arrows {
            arr.push(Arrow { name: name.to_string(), tail: idx(t)?, head: idx(h)? });
        }
        Quiver::new(vs, arr)
    }

    /// The n-arrow Kronecker quiver 1 ⇉ 2 with arrows a1..an.
    pub fn kronecker(n: usize) -> Self {
        let arrows = (1..=n).map(|i| Arrow { name: format!("a{i}"), tail: 0, head: 1 }).collect();
        Quiver { vertices: vec!["1".into(), "2".into()], arrows }
    }

    /// The n-subspace quiver: arms 1..n each with one arrow into the centre n+1.
    pub fn subspace(n: usize) -> Self {
        let vertices = (1..=n + 1).map(|i| i.to_string()).collect();
        let arrows = (1..=n).map(|i| Arrow { name: format!("a{i}"), tail: i - 1, head: n }).collect();
        Quiver { vertices, arrows }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrows_between(&self, u: usize, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&i| self.arrows[i].tail == u && self.arrows[i].head == v).collect()
    }

    pub fn out_arrows(&self, u: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&i| self.arrows[i].tail == u).collect()
    }

    pub fn in_arrows(&self, u: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&i| self.arrows[i].head == u).collect()
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.arrows.iter().all(|a| a.head != v)
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.arrows.iter().all(|a| a.tail != v)
    }

    /// Vertices in an order where every arrow goes forward, or `None` with a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.head] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        ready.reverse();
        let mut out = Vec::new();
        while let Some(v) = ready.pop() {
            out.push(v);
            let mut next = Vec::new();
            for a in &self.arrows {
                if a.tail == v {
                    indeg[a.head] -= 1;
                    if indeg[a.head] == 0 {
                        next.push(a.head);
                    }
                }
            }
            next.sort_unstable_by(|a, b| b.cmp(a));
            next.dedup();
            ready.extend(next);
        }
        (out.len() == n).then_some(out)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Same vertices with every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self.arrows.iter().map(|a| Arrow { name: a.name.clone(), tail: a.head, head: a.tail }).collect(),
        }
    }

    /// All paths from `u` to `v` as arrow sequences (acyclic quivers only).
    pub fn paths(&self, u: usize, v: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.paths_rec(u, v, &mut cur, &mut out);
        out
    }

    fn paths_rec(&self, at: usize, v: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if at == v {
            out.push(cur.clone());
        }
        for (i, a) in self.arrows.iter().enumerate() {
            if a.tail == at && cur.len() <= self.arrows.len() * self.vertices.len() {
                cur.push(i);
                self.paths_rec(a.head, v, cur, out);
                cur.pop();
            }
        }
    }
}

/// Σ_v α(v)β(v) − Σ_a α(ta)β(ha).
pub fn euler_form(q: &Quiver, alpha: &[usize], beta: &[usize]) -> i64 {
    let mut s: i64 = alpha.iter().zip(beta).map(|(a, b)| (a * b) as i64).sum();
    for a in q.arrows() {
        s -= (alpha[a.tail] * beta[a.head]) as i64;
    }
    s
}

/// Linear maps `x ↦ x·M(a)` from the tail space to the head space of each arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    quiver: Arc<Quiver>,
    dims: Vec<usize>,
    maps: Vec<RatMatrix>,
}

impl Representation {
    pub fn new(quiver: Arc<Quiver>, dims: Vec<usize>, maps: Vec<RatMatrix>) -> Result<Self, QuiverError> {
        if dims.len() != quiver.num_vertices() {
            return Err(QuiverError::Count(quiver.num_vertices(), dims.len()));
        }
        if maps.len() != quiver.num_arrows() {
            return Err(QuiverError::Count(quiver.num_arrows(), maps.len()));
        }
        for (a, m) in quiver.arrows().iter().zip(&maps) {
            let want = (dims[a.tail], dims[a.head]);
            if m.shape() != want {
                return Err(QuiverError::ArrowShape(a.name.clone(), m.rows(), m.cols(), want.0, want.1));
            }
        }
        Ok(Representation { quiver, dims, maps })
    }

    pub fn zero(quiver: Arc<Quiver>, dims: Vec<usize>) -> Self {
        let maps = quiver.arrows().iter().map(|a| RatMatrix::zeros(dims[a.tail], dims[a.head])).collect();
        Representation { quiver, dims, maps }
    }

    pub fn simple(quiver: Arc<Quiver>, v: usize) -> Self {
        let mut dims = vec![0; quiver.num_vertices()];
        dims[v] = 1;
        Self::zero(quiver, dims)
    }

    /// Indecomposable projective at `v`: paths starting at `v`, extended by arrows.
    pub fn projective(quiver: Arc<Quiver>, v: usize) -> Self {
        let n = quiver.num_vertices();
        let bases: Vec<Vec<Vec<usize>>> = (0..n).map(|x| quiver.paths(v, x)).collect();
        let dims = bases.iter().map(|b| b.len()).collect::<Vec<_>>();
        let mut maps = Vec::new();
        for (ai, a) in quiver.arrows().iter().enumerate() {
            let mut m = RatMatrix::zeros(dims[a.tail], dims[a.head]);
            for (i, p) in bases[a.tail].iter().enumerate() {
                let mut q = p.clone();
                q.push(ai);
                let j = bases[a.head].iter().position(|r| *r == q).expect("path extends");
                m[(i, j)] = int(1);
            }
            maps.push(m);
        }
        Representation { quiver, dims, maps }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn maps(&self) -> &[RatMatrix] {
        &self.maps
    }

    pub fn map(&self, a: usize) -> &RatMatrix {
        &self.maps[a]
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Composite along a path of arrow indices starting at vertex `start`.
    pub fn path_map(&self, start: usize, path: &[usize]) -> RatMatrix {
        let mut m = RatMatrix::identity(self.dims[start]);
        for &a in path {
            m = &m * &self.maps[a];
        }
        m
    }

    pub fn direct_sum(parts: &[&Representation]) -> Result<Representation, QuiverError> {
        let q = parts.first().map(|p| p.quiver.clone()).ok_or(QuiverError::Count(1, 0))?;
        if parts.iter().any(|p| p.quiver != q) {
            return Err(QuiverError::DifferentQuivers);
        }
        let dims = (0..q.num_vertices()).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
        let maps = (0..q.num_arrows())
            .map(|a| RatMatrix::block_diag(&parts.iter().map(|p| &p.maps[a]).collect::<Vec<_>>()))
            .collect();
        Ok(Representation { quiver: q, dims, maps })
    }

    /// `k` copies of `self`.
    pub fn power(&self, k: usize) -> Representation {
        let parts: Vec<&Representation> = std::iter::repeat(self).take(k).collect();
        if parts.is_empty() {
            return Representation::zero(self.quiver.clone(), vec![0; self.dims.len()]);
        }
        Representation::direct_sum(&parts).expect("same quiver")
    }

    /// Base change by vertex matrices: `(g·M)(a) = g_{ta}^{-1} M(a) g_{ha}`.
    pub fn base_change(&self, g: &[RatMatrix]) -> Result<Representation, QuiverError> {
        let inv: Vec<RatMatrix> = g
            .iter()
            .enumerate()
            .map(|(v, m)| {
                if m.shape() != (self.dims[v], self.dims[v]) {
                    return Err(QuiverError::ArrowShape(
                        self.quiver.vertices()[v].clone(),
                        m.rows(),
                        m.cols(),
                        self.dims[v],
                        self.dims[v],
                    ));
                }
                m.inverse().map_err(|_| QuiverError::Count(1, 0))
            })
            .collect::<Result<_, _>>()?;
        let maps = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| &(&inv[a.tail] * m) * &g[a.head])
            .collect();
        Ok(Representation { quiver: self.quiver.clone(), dims: self.dims.clone(), maps })
    }

    /// Transposed representation of the opposite quiver.
    pub fn transpose(&self, opposite: Arc<Quiver>) -> Representation {
        Representation { quiver: opposite, dims: self.dims.clone(), maps: self.maps.iter().map(|m| m.transpose()).collect() }
    }

    pub fn with_maps(&self, maps: Vec<RatMatrix>) -> Result<Representation, QuiverError> {
        Representation::new(self.quiver.clone(), self.dims.clone(), maps)
    }
}

/// Entries uniform in `[-height, height]`, filled arrow by arrow in row-major order.
pub fn random_rep(q: Arc<Quiver>, alpha: &[usize], seed: u64, height: i64) -> Representation {
    let mut rng = seeded_rng(seed);
    let maps = q
        .arrows()
        .iter()
        .map(|a| {
            let (r, c) = (alpha[a.tail], alpha[a.head]);
            let vals: Vec<i64> = (0..r * c).map(|_| rng.gen_range(-height..=height)).collect();
            RatMatrix::from_i64(r, c, &vals)
        })
        .collect();
    Representation { quiver: q, dims: alpha.to_vec(), maps }
}

/// Random invertible vertex matrices (unit triangular factors times a diagonal).
pub fn random_base_change(dims: &[usize], seed: u64, height: i64) -> Vec<RatMatrix> {
    let mut rng = seeded_rng(seed);
    dims.iter()
        .map(|&n| {
            let mut l = RatMatrix::identity(n);
            let mut u = RatMatrix::identity(n);
            for i in 0..n {
                for j in 0..i {
                    l[(i, j)] = int(rng.gen_range(-height..=height));
                    u[(j, i)] = int(rng.gen_range(-height..=height));
                }
                let mut d = 0;
                while d == 0 {
                    d = rng.gen_range(-height.max(1)..=height.max(1));
                }
                u[(i, i)] = int(d);
            }
            &l * &u
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverFile {
    pub vertices: Vec<String>,
    /// (name, tail, head)
    pub arrows: Vec<(String, String, String)>,
}

impl From<&Quiver> for QuiverFile {
    fn from(q: &Quiver) -> Self {
        QuiverFile {
            vertices: q.vertices.clone(),
            arrows: q
                .arrows
                .iter()
                .map(|a| (a.name.clone(), q.vertices[a.tail].clone(), q.vertices[a.head].clone()))
                .collect(),
        }
    }
}

impl TryFrom<&QuiverFile> for Quiver {
    type Error = QuiverError;
    fn try_from(f: &QuiverFile) -> Result<Self, QuiverError> {
        let vs: Vec<&str> = f.vertices.iter().map(|s| s.as_str()).collect();
        let ar: Vec<(&str, &str, &str)> = f.arrows.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
        Quiver::from_names(&vs, &ar)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationFile {
    pub quiver: QuiverFile,
    pub dims: Vec<usize>,
    pub maps: Vec<RatMatrix>,
}

impl From<&Representation> for RepresentationFile {
    fn from(r: &Representation) -> Self {
        RepresentationFile { quiver: QuiverFile::from(&*r.quiver), dims: r.dims.clone(), maps: r.maps.clone() }
    }
}

impl TryFrom<&RepresentationFile> for Representation {
    type Error = QuiverError;
    fn try_from(f: &RepresentationFile) -> Result<Self, QuiverError> {
        let q = Arc::new(Quiver::try_from(&f.quiver)?);
        Representation::new(q, f.dims.clone(), f.maps.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_examples() {
        let k3 = Quiver::kronecker(3);
        assert_eq!(euler_form(&k3, &[1, 2], &[2, 1]), 1);
        assert_eq!(euler_form(&k3, &[1, 2], &[1, 3]), -2);
        let a2 = Quiver::kronecker(1);
        assert_eq!(euler_form(&a2, &[1, 1], &[1, 1]), 1);
    }

    #[test]
    fn random_rep_is_reproducible() {
        let q = Arc::new(Quiver::kronecker(2));
        assert_eq!(random_rep(q.clone(), &[2, 3], 9, 4), random_rep(q.clone(), &[2, 3], 9, 4));
        let z = random_rep(q.clone(), &[0, 3], 9, 4);
        assert_eq!(z.map(0).shape(), (0, 3));
        assert!(random_rep(q, &[2, 2], 1, 0).maps().iter().all(|m| m.is_zero()));
    }

    #[test]
    fn projectives_of_kronecker() {
        let q = Arc::new(Quiver::kronecker(3));
        let p1 = Representation::projective(q.clone(), 0);
        assert_eq!(p1.dims(), &[1, 3]);
        let p2 = Representation::projective(q, 1);
        assert_eq!(p2.dims(), &[0, 1]);
    }

    #[test]
    fn topological_order_and_cycles() {
        let q = Quiver::subspace(3);
        assert_eq!(q.topological_order().unwrap(), vec![0, 1, 2, 3]);
        let c = Quiver::from_names(&["x", "y"], &[("a", "x", "y"), ("b", "y", "x")]).unwrap();
        assert!(!c.is_acyclic());
        assert!(Quiver::from_names(&["x", "x"], &[]).is_err());
    }

    #[test]
    fn file_roundtrip() {
        let q = Arc::new(Quiver::kronecker(2));
        let m = random_rep(q, &[1, 2], 3, 5);
        let f = RepresentationFile::from(&m);
        let s = serde_json::to_string(&f).unwrap();
        let back: RepresentationFile = serde_json::from_str(&s).unwrap();
        assert_eq!(Representation::try_from(&back).unwrap(), m);
    }
}
