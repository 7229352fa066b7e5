//! Symmetric groups, their group algebras and finite group actions on quivers.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{RatMatrix, Rational};
use crate::partition::{
    dim_symgroup_irrep, factorial, hook_product, partitions_of, symgroup_character, Partition, Tableau,
};
use crate::quiver::Quiver;
use crate::semisimple::{decompose, AlgebraError, MatrixAlgebra, SemisimpleDecomposition, SplitHints};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SymmetricError {
    #[error("not a permutation of 1..{0}")]
    NotPermutation(usize),
    #[error("permutations of different degrees ({0} and {1})")]
    Degree(usize, usize),
    #[error("tableau is not standard")]
    NotStandard,
    #[error("group algebra of S_{m} exceeds the realization bound {bound}")]
    BoundExceeded { m: usize, bound: usize },
    #[error("invalid action data: {0}")]
    ActionShape(String),
    #[error("generator data does not define a group action (element {0})")]
    NotHomomorphism(String),
    #[error("group has more than {0} elements")]
    GroupTooLarge(usize),
    #[error("stabilizer of vertex {vertex} (order {order}) is not the full symmetric group on its {moved} moved points")]
    NotSymmetricStabilizer { vertex: usize, order: usize, moved: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Permutation of `0..m`, stored as its image list.
///
/// Composition is `(σ∘τ)(i) = σ(τ(i))`; serialized 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl TryFrom<Vec<usize>> for Permutation {
    type Error = SymmetricError;
    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        Permutation::from_one_based(&v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0.iter().map(|x| x + 1).collect()
    }
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation((0..m).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, SymmetricError> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &x in &images {
            if x >= m || seen[x] {
                return Err(SymmetricError::NotPermutation(m));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    pub fn from_one_based(images: &[usize]) -> Result<Self, SymmetricError> {
        if images.contains(&0) {
            return Err(SymmetricError::NotPermutation(images.len()));
        }
        Self::from_images(images.iter().map(|x| x - 1).collect())
    }

    /// Transposition of `i` and `j` (0-based).
    pub fn transposition(m: usize, i: usize, j: usize) -> Self {
        let mut v: Vec<usize> = (0..m).collect();
        v.swap(i, j);
        Permutation(v)
    }

    /// The cycle `0 → 1 → … → m−1 → 0`.
    pub fn long_cycle(m: usize) -> Self {
        Permutation((0..m).map(|i| (i + 1) % m).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "permutation degrees differ");
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut v = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            v[x] = i;
        }
        Permutation(v)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for s in 0..self.0.len() {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut x = self.0[s];
            while x != s {
                seen[x] = true;
                c.push(x);
                x = self.0[x];
            }
            out.push(c);
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::new(self.cycles().iter().map(|c| c.len()).collect())
    }

    /// Cycle type of the restriction to an invariant subset.
    pub fn cycle_type_on(&self, omega: &[usize]) -> Partition {
        Partition::new(self.cycles().iter().filter(|c| omega.contains(&c[0])).map(|c| c.len()).collect())
    }

    pub fn sign(&self) -> i64 {
        let even = self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0;
        if even {
            1
        } else {
            -1
        }
    }

    pub fn moved_points(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] != i).collect()
    }

    /// Transport along `i ↦ omega[i]` into the symmetric group on `big` points.
    pub fn embed(&self, omega: &[usize], big: usize) -> Permutation {
        let mut v: Vec<usize> = (0..big).collect();
        for (i, &x) in self.0.iter().enumerate() {
            v[omega[i]] = omega[x];
        }
        Permutation(v)
    }

    /// All permutations of `0..m` in lexicographic order.
    pub fn all(m: usize) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (0..m).collect();
        let mut out = vec![Permutation(cur.clone())];
        loop {
            let Some(i) = (1..m).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
            let j = (i..m).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
            out.push(Permutation(cur.clone()));
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

/// Element of `Q[S_m]` with no explicit zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupAlgebraElement {
    degree: usize,
    support: BTreeMap<Permutation, Rational>,
}

impl GroupAlgebraElement {
    pub fn zero(m: usize) -> Self {
        GroupAlgebraElement { degree: m, support: BTreeMap::new() }
    }

    pub fn one(m: usize) -> Self {
        Self::basis(Permutation::identity(m))
    }

    pub fn basis(g: Permutation) -> Self {
        let mut support = BTreeMap::new();
        let m = g.degree();
        support.insert(g, Rational::one());
        GroupAlgebraElement { degree: m, support }
    }

    pub fn from_terms(m: usize, terms: impl IntoIterator<Item = (Permutation, Rational)>) -> Self {
        let mut x = Self::zero(m);
        for (g, c) in terms {
            x.add_term(g, &c);
        }
        x
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn support(&self) -> &BTreeMap<Permutation, Rational> {
        &self.support
    }

    pub fn coeff(&self, g: &Permutation) -> Rational {
        self.support.get(g).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn add_term(&mut self, g: Permutation, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.support.get_mut(&g) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.support.remove(&g);
                }
            }
            None => {
                self.support.insert(g, c.clone());
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut x = self.clone();
        for (g, c) in &o.support {
            x.add_term(g.clone(), c);
        }
        x
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(self.degree);
        }
        GroupAlgebraElement {
            degree: self.degree,
            support: self.support.iter().map(|(g, c)| (g.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.degree);
        for (g, a) in &self.support {
            for (h, b) in &o.support {
                out.add_term(g.compose(h), &(a * b));
            }
        }
        out
    }

    /// `self · g`.
    pub fn mul_perm(&self, g: &Permutation) -> Self {
        GroupAlgebraElement {
            degree: self.degree,
            support: self.support.iter().map(|(x, c)| (x.compose(g), c.clone())).collect(),
        }
    }

    /// `g · self`.
    pub fn perm_mul(&self, g: &Permutation) -> Self {
        GroupAlgebraElement {
            degree: self.degree,
            support: self.support.iter().map(|(x, c)| (g.compose(x), c.clone())).collect(),
        }
    }

    pub fn embed(&self, omega: &[usize], big: usize) -> Self {
        GroupAlgebraElement {
            degree: big,
            support: self.support.iter().map(|(g, c)| (g.embed(omega, big), c.clone())).collect(),
        }
    }

    /// `λ` with `self = λ·other`.
    pub fn ratio(&self, other: &Self) -> Option<Rational> {
        let (g, c) = other.support.iter().next()?;
        let lambda = self.coeff(g) / c;
        (other.scale(&lambda) == *self).then_some(lambda)
    }
}

fn subgroup(blocks: &[Vec<usize>], m: usize) -> Vec<Permutation> {
    let mut out = vec![Permutation::identity(m)];
    for b in blocks {
        let k = b.len();
        let local = Permutation::all(k);
        let mut next = Vec::new();
        for g in &out {
            for l in &local {
                let e = l.embed(b, m);
                next.push(g.compose(&e));
            }
        }
        out = next;
    }
    out
}

/// `κ⁻¹ Σ_{v∈V(T)} Σ_{h∈H(T)} sgn(v)·(v∘h)` with `κ` the hook product.
pub fn young_symmetrizer(t: &Tableau) -> Result<GroupAlgebraElement, SymmetricError> {
    if !t.is_standard() {
        return Err(SymmetricError::NotStandard);
    }
    let m = t.shape().size();
    let zero_based = |v: &[Vec<usize>]| v.iter().map(|r| r.iter().map(|x| x - 1).collect()).collect::<Vec<Vec<usize>>>();
    let rows = subgroup(&zero_based(t.rows()), m);
    let cols = subgroup(&zero_based(&t.columns()), m);
    let kappa = Rational::from_integer(hook_product(t.shape()));
    let mut x = GroupAlgebraElement::zero(m);
    let w = kappa.recip();
    for v in &cols {
        let s = if v.sign() == 1 { w.clone() } else { -w.clone() };
        for h in &rows {
            x.add_term(v.compose(h), &s);
        }
    }
    Ok(x)
}

/// `L_k = Σ_{i<k} (i k)` (0-based `k`).
pub fn jucys_murphy(m: usize, k: usize) -> GroupAlgebraElement {
    GroupAlgebraElement::from_terms(m, (0..k).map(|i| (Permutation::transposition(m, i, k), Rational::one())))
}

fn times_jm_shift(x: &GroupAlgebraElement, k: usize, c: i64) -> GroupAlgebraElement {
    let m = x.degree();
    let mut out = x.scale(&Rational::from_integer((-c).into()));
    for i in 0..k {
        let t = Permutation::transposition(m, i, k);
        for (g, a) in &x.support {
            out.add_term(g.compose(&t), a);
        }
    }
    out
}

/// Joint eigenprojection of the Jucys–Murphy elements at the content vector of `t`.
pub fn seminormal_idempotent(t: &Tableau) -> Result<GroupAlgebraElement, SymmetricError> {
    if !t.is_standard() {
        return Err(SymmetricError::NotStandard);
    }
    let m = t.shape().size();
    let mut content = vec![0i64; m];
    for (r, row) in t.rows().iter().enumerate() {
        for (c, &x) in row.iter().enumerate() {
            content[x - 1] = c as i64 - r as i64;
        }
    }
    let mut x = GroupAlgebraElement::one(m);
    for k in 1..m {
        let ck = content[k];
        for c in -(k as i64)..=(k as i64) {
            if c == ck {
                continue;
            }
            x = times_jm_shift(&x, k, c).scale(&Rational::new(1.into(), (ck - c).into()));
        }
    }
    Ok(x)
}

/// `(dim λ / m!) Σ_w χ_λ(w)·w`.
pub fn central_idempotent(shape: &Partition) -> GroupAlgebraElement {
    let m = shape.size();
    let scale = Rational::new(BigInt::from(dim_symgroup_irrep(shape)), factorial(m));
    GroupAlgebraElement::from_terms(
        m,
        Permutation::all(m).into_iter().map(|w| {
            let chi = symgroup_character(shape, &w.cycle_type()).expect("same size");
            (w, &scale * Rational::from_integer(chi.into()))
        }),
    )
}

/// Matrix units of one isotypic block of `Q[S_m]`.
#[derive(Clone, Debug)]
pub struct SymmetricBlock {
    pub shape: Partition,
    pub tableaux: Vec<Tableau>,
    /// `units[p][q]`; the diagonal holds the seminormal idempotents.
    pub units: Vec<Vec<GroupAlgebraElement>>,
}

impl SymmetricBlock {
    pub fn size(&self) -> usize {
        self.tableaux.len()
    }
}

fn relabel(from: &Tableau, to: &Tableau) -> Permutation {
    let m = from.shape().size();
    let mut v = vec![0; m];
    for (rf, rt) in from.rows().iter().zip(to.rows()) {
        for (&a, &b) in rf.iter().zip(rt) {
            v[a - 1] = b - 1;
        }
    }
    Permutation(v)
}

/// First nonzero `left·g·right` over group elements, trying `preferred` first.
fn first_nonzero(
    left: &GroupAlgebraElement,
    right: &GroupAlgebraElement,
    preferred: &[Permutation],
    accept: &dyn Fn(&GroupAlgebraElement) -> bool,
) -> Option<GroupAlgebraElement> {
    let m = left.degree();
    preferred
        .iter()
        .cloned()
        .chain(Permutation::all(m))
        .map(|g| left.mul_perm(&g).mul(right))
        .find(|x| !x.is_zero() && accept(x))
}

/// Wedderburn data of `Q[S_m]` computed in the group algebra: blocks in the order of
/// `partitions_of(m)`, idempotents indexed by standard tableaux in lexicographic order.
pub fn symmetric_group_blocks(m: usize) -> Result<Vec<SymmetricBlock>, SymmetricError> {
    let mut blocks = Vec::new();
    for shape in partitions_of(m, m) {
        let tableaux = Tableau::standard(&shape);
        let idem: Vec<GroupAlgebraElement> =
            tableaux.iter().map(seminormal_idempotent).collect::<Result<_, _>>()?;
        let f = tableaux.len();
        let e1 = &idem[0];
        let mut down = vec![e1.clone()];
        let mut up = vec![e1.clone()];
        for p in 1..f {
            let s = relabel(&tableaux[0], &tableaux[p]);
            let pref = [s.clone(), s.inverse()];
            let x = first_nonzero(&idem[p], e1, &pref, &|_| true).ok_or(AlgebraError::InconsistentGrouping(p, 0))?;
            let y = first_nonzero(e1, &idem[p], &pref, &|y| !y.mul(&x).is_zero())
                .ok_or(AlgebraError::InconsistentGrouping(0, p))?;
            let lambda = y.mul(&x).ratio(e1).ok_or(AlgebraError::InconsistentGrouping(0, p))?;
            down.push(x);
            up.push(y.scale(&lambda.recip()));
        }
        let units = (0..f)
            .map(|i| (0..f).map(|j| if i == j { idem[i].clone() } else { down[i].mul(&up[j]) }).collect())
            .collect();
        blocks.push(SymmetricBlock { shape, tableaux, units });
    }
    Ok(blocks)
}

pub const DEFAULT_REALIZATION_BOUND: usize = 5;

/// Right regular realization: `R_g` with `e_h·R_g = e_{hg}`, basis in lexicographic order.
pub struct RegularRealization {
    pub elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    pub algebra: MatrixAlgebra,
}

impl RegularRealization {
    pub fn matrix_of(&self, x: &GroupAlgebraElement) -> RatMatrix {
        let n = self.elements.len();
        let mut r = RatMatrix::zeros(n, n);
        for (h, hp) in self.elements.iter().enumerate() {
            for (g, c) in &x.support {
                r[(h, self.index[&hp.compose(g)])] += c;
            }
        }
        r
    }

    /// Coefficients of an element, read from the row of the identity.
    pub fn element_of(&self, r: &RatMatrix) -> GroupAlgebraElement {
        let m = self.elements[0].degree();
        GroupAlgebraElement::from_terms(m, self.elements.iter().cloned().zip(r.row(0).iter().cloned()))
    }

    /// Wedderburn decomposition through the generic splitter, with Jucys–Murphy hints and
    /// character-theoretic central idempotents; blocks labelled by partitions.
    pub fn decompose(&self, seed: u64) -> Result<SemisimpleDecomposition, SymmetricError> {
        let m = self.elements[0].degree();
        let shapes = partitions_of(m, m);
        let central: Vec<RatMatrix> = shapes.iter().map(|s| self.matrix_of(&central_idempotent(s))).collect();
        let hints = SplitHints {
            central: Some(central.clone()),
            commuting: (1..m).map(|k| self.matrix_of(&jucys_murphy(m, k))).collect(),
            ..Default::default()
        };
        let label = |e: &RatMatrix| central.iter().position(|c| c == e).map(|i| shapes[i].to_string());
        Ok(decompose(&self.algebra, &hints, &label, seed)?)
    }
}

/// The regular realization of `Q[S_m]` as a matrix algebra.
pub fn group_algebra_realization(m: usize, bound: usize) -> Result<RegularRealization, SymmetricError> {
    if m > bound {
        return Err(SymmetricError::BoundExceeded { m, bound });
    }
    let elements = Permutation::all(m);
    let index: HashMap<Permutation, usize> = elements.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
    let n = elements.len();
    let basis = elements
        .iter()
        .map(|g| {
            let mut r = RatMatrix::zeros(n, n);
            for (h, hp) in elements.iter().enumerate() {
                r[(h, index[&hp.compose(g)])] = Rational::one();
            }
            r
        })
        .collect();
    let algebra = MatrixAlgebra::trusted(basis, RatMatrix::identity(n))?;
    Ok(RegularRealization { elements, index, algebra })
}

/// A permutation group acting on a quiver: per generator, a permutation of the vertices and
/// a matrix on the arrow span (row `j` holds the coordinates of `g·a_j`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteAction {
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub vertex_action: Vec<Permutation>,
    pub arrow_action: Vec<RatMatrix>,
}

/// One group element with its action data.
#[derive(Clone, Debug)]
pub struct ActionElement {
    pub perm: Permutation,
    pub vertices: Permutation,
    pub arrows: RatMatrix,
}

/// The enumerated group, in breadth-first order from the identity (generators applied on
/// the left).
#[derive(Clone, Debug)]
pub struct ActionGroup {
    pub elements: Vec<ActionElement>,
    index: HashMap<Permutation, usize>,
}

pub const GROUP_SIZE_LIMIT: usize = 50_000;

impl FiniteAction {
    pub fn new(
        q: &Quiver,
        degree: usize,
        generators: Vec<Permutation>,
        vertex_action: Vec<Permutation>,
        arrow_action: Vec<RatMatrix>,
    ) -> Result<Self, SymmetricError> {
        let act = FiniteAction { degree, generators, vertex_action, arrow_action };
        act.validate(q)?;
        Ok(act)
    }

    pub fn trivial() -> Self {
        FiniteAction { degree: 1, generators: Vec::new(), vertex_action: Vec::new(), arrow_action: Vec::new() }
    }

    /// `S_n` permuting the arrows of the n-Kronecker quiver.
    pub fn symmetric_on_kronecker(n: usize) -> Self {
        let gens = symmetric_generators(n);
        let vertex_action = gens.iter().map(|_| Permutation::identity(2)).collect();
        let arrow_action = gens.iter().map(perm_matrix).collect();
        FiniteAction { degree: n, generators: gens, vertex_action, arrow_action }
    }

    /// `S_n` permuting the arms of the n-subspace quiver.
    pub fn symmetric_on_subspace(n: usize) -> Self {
        let gens = symmetric_generators(n);
        let vertex_action = gens
            .iter()
            .map(|g| {
                let mut v = g.images().to_vec();
                v.push(n);
                Permutation(v)
            })
            .collect();
        let arrow_action = gens.iter().map(perm_matrix).collect();
        FiniteAction { degree: n, generators: gens, vertex_action, arrow_action }
    }

    pub fn validate(&self, q: &Quiver) -> Result<(), SymmetricError> {
        let k = self.generators.len();
        if self.vertex_action.len() != k || self.arrow_action.len() != k {
            return Err(SymmetricError::ActionShape("one vertex permutation and arrow matrix per generator".into()));
        }
        for (i, g) in self.generators.iter().enumerate() {
            if g.degree() != self.degree {
                return Err(SymmetricError::Degree(g.degree(), self.degree));
            }
            let v = &self.vertex_action[i];
            if v.degree() != q.num_vertices() {
                return Err(SymmetricError::ActionShape(format!("vertex permutation {i} has wrong degree")));
            }
            let a = &self.arrow_action[i];
            if a.shape() != (q.num_arrows(), q.num_arrows()) {
                return Err(SymmetricError::ActionShape(format!("arrow matrix {i} has wrong shape")));
            }
            check_arrow_matrix(q, v, a).map_err(SymmetricError::ActionShape)?;
        }
        Ok(())
    }

    /// Enumerates the group and checks the action on every Cayley edge.
    pub fn group(&self, q: &Quiver) -> Result<ActionGroup, SymmetricError> {
        self.validate(q)?;
        let id = ActionElement {
            perm: Permutation::identity(self.degree),
            vertices: Permutation::identity(q.num_vertices()),
            arrows: RatMatrix::identity(q.num_arrows()),
        };
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id.perm.clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (s, gen) in self.generators.iter().enumerate() {
                let g = &elements[i];
                let perm = gen.compose(&g.perm);
                let vertices = self.vertex_action[s].compose(&g.vertices);
                let arrows = &g.arrows * &self.arrow_action[s];
                match index.get(&perm) {
                    Some(&j) => {
                        if elements[j].vertices != vertices || elements[j].arrows != arrows {
                            return Err(SymmetricError::NotHomomorphism(perm.to_string()));
                        }
                    }
                    None => {
                        if elements.len() >= GROUP_SIZE_LIMIT {
                            return Err(SymmetricError::GroupTooLarge(GROUP_SIZE_LIMIT));
                        }
                        index.insert(perm.clone(), elements.len());
                        queue.push_back(elements.len());
                        elements.push(ActionElement { perm, vertices, arrows });
                    }
                }
            }
        }
        Ok(ActionGroup { elements, index })
    }
}

fn symmetric_generators(n: usize) -> Vec<Permutation> {
    match n {
        0 | 1 => Vec::new(),
        2 => vec![Permutation::transposition(2, 0, 1)],
        _ => vec![Permutation::transposition(n, 0, 1), Permutation::long_cycle(n)],
    }
}

/// Matrix with row `j` equal to `e_{g(j)}`.
pub fn perm_matrix(g: &Permutation) -> RatMatrix {
    let n = g.degree();
    let mut m = RatMatrix::zeros(n, n);
    for j in 0..n {
        m[(j, g.apply(j))] = Rational::one();
    }
    m
}

fn check_arrow_matrix(q: &Quiver, v: &Permutation, a: &RatMatrix) -> Result<(), String> {
    for (j, arr) in q.arrows().iter().enumerate() {
        let (t, h) = (v.apply(arr.tail), v.apply(arr.head));
        for (l, x) in a.row(j).iter().enumerate() {
            if !x.is_zero() && (q.arrows()[l].tail != t || q.arrows()[l].head != h) {
                return Err(format!("image of arrow {} leaves the span of arrows {}→{}", arr.name, t, h));
            }
        }
    }
    if a.rank() != a.rows() {
        return Err("arrow matrix is singular".into());
    }
    Ok(())
}

impl ActionGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Index of `elements[i] ∘ elements[j]`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].perm.compose(&self.elements[j].perm)]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.index[&self.elements[i].perm.inverse()]
    }

    pub fn vertex_image(&self, i: usize, v: usize) -> usize {
        self.elements[i].vertices.apply(v)
    }
}

/// Orbits on pairs `O_u × O_v`, represented by `(u, v')` with `v'` minimal in its `G_u`-orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairOrbit {
    pub u_orbit: usize,
    pub v_orbit: usize,
    pub u: usize,
    pub v: usize,
    /// Arrows `u → v'`.
    pub arrows: Vec<usize>,
    /// `G_u ∩ G_{v'}` as element indices.
    pub stabilizer: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct OrbitData {
    /// Sorted orbits; the first vertex is the representative.
    pub orbits: Vec<Vec<usize>>,
    pub orbit_of: Vec<usize>,
    /// Per vertex `w`, the first element in enumeration order sending its representative to `w`.
    pub witness: Vec<usize>,
    /// Per orbit, the stabilizer of the representative (element indices).
    pub stabilizers: Vec<Vec<usize>>,
    /// Per orbit, a generating set of the stabilizer.
    pub stabilizer_generators: Vec<Vec<usize>>,
    pub pairs: Vec<PairOrbit>,
}

impl OrbitData {
    pub fn representatives(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o[0]).collect()
    }

    /// Points moved by the stabilizer of orbit `o`, after checking it is their full symmetric
    /// group.
    pub fn symmetric_support(&self, group: &ActionGroup, o: usize) -> Result<Vec<usize>, SymmetricError> {
        let stab = &self.stabilizers[o];
        let mut moved: Vec<usize> = stab.iter().flat_map(|&i| group.elements[i].perm.moved_points()).collect();
        moved.sort_unstable();
        moved.dedup();
        if BigInt::from(stab.len()) != factorial(moved.len()) {
            return Err(SymmetricError::NotSymmetricStabilizer {
                vertex: self.orbits[o][0],
                order: stab.len(),
                moved: moved.len(),
            });
        }
        Ok(moved)
    }

    /// Partitions labelling the irreducibles of the stabilizer of orbit `o`.
    pub fn labels(&self, group: &ActionGroup, o: usize) -> Result<Vec<Partition>, SymmetricError> {
        let k = self.symmetric_support(group, o)?.len();
        Ok(partitions_of(k, k))
    }
}

fn generated(group: &ActionGroup, gens: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; group.order()];
    seen[0] = true;
    let mut out = vec![0];
    let mut k = 0;
    while k < out.len() {
        let x = out[k];
        for &g in gens {
            let y = group.mul(g, x);
            if !seen[y] {
                seen[y] = true;
                out.push(y);
            }
        }
        k += 1;
    }
    out.sort_unstable();
    out
}

pub fn orbits_and_stabilizers(q: &Quiver, group: &ActionGroup) -> OrbitData {
    let nv = q.num_vertices();
    let mut orbit_of = vec![usize::MAX; nv];
    let mut witness = vec![usize::MAX; nv];
    let mut orbits = Vec::new();
    for u in 0..nv {
        if orbit_of[u] != usize::MAX {
            continue;
        }
        let o = orbits.len();
        let mut orbit = Vec::new();
        for (i, g) in group.elements.iter().enumerate() {
            let w = g.vertices.apply(u);
            if orbit_of[w] == usize::MAX {
                orbit_of[w] = o;
                witness[w] = i;
                orbit.push(w);
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    let stabilizers: Vec<Vec<usize>> = orbits
        .iter()
        .map(|o| (0..group.order()).filter(|&i| group.vertex_image(i, o[0]) == o[0]).collect())
        .collect();
    let stabilizer_generators = stabilizers
        .iter()
        .map(|stab| {
            let mut gens = Vec::new();
            let mut span = vec![0usize];
            for &s in stab {
                if span.binary_search(&s).is_err() {
                    gens.push(s);
                    span = generated(group, &gens);
                }
            }
            gens
        })
        .collect();
    let mut pairs = Vec::new();
    for (uo, ou) in orbits.iter().enumerate() {
        let u = ou[0];
        for (vo, ov) in orbits.iter().enumerate() {
            let mut done = vec![false; nv];
            for &v in ov {
                if done[v] {
                    continue;
                }
                for &h in &stabilizers[uo] {
                    done[group.vertex_image(h, v)] = true;
                }
                let arrows = q.arrows_between(u, v);
                let stabilizer = stabilizers[uo].iter().copied().filter(|&h| group.vertex_image(h, v) == v).collect();
                pairs.push(PairOrbit { u_orbit: uo, v_orbit: vo, u, v, arrows, stabilizer });
            }
        }
    }
    OrbitData { orbits, orbit_of, witness, stabilizers, stabilizer_generators, pairs }
}

/// `dim Hom_{G_{uv'}}(V_ρ, R_{uv'} ⊗ V_σ)`, with `σ` transported from `G_v` along the witness.
pub fn module_multiplicity(
    group: &ActionGroup,
    orbits: &OrbitData,
    pair: &PairOrbit,
    rho: &Partition,
    sigma: &Partition,
) -> Result<usize, SymmetricError> {
    let omega_u = orbits.symmetric_support(group, pair.u_orbit)?;
    let omega_v = orbits.symmetric_support(group, pair.v_orbit)?;
    let t = orbits.witness[pair.v];
    let tinv = group.inverse(t);
    let mut total = BigInt::zero();
    for &h in &pair.stabilizer {
        let el = &group.elements[h];
        let chi_r: Rational = pair.arrows.iter().map(|&a| el.arrows[(a, a)].clone()).sum();
        if chi_r.is_zero() {
            continue;
        }
        let chi_rho = symgroup_character(rho, &el.perm.cycle_type_on(&omega_u)).map_err(|_| SymmetricError::NotStandard)?;
        let conj = group.mul(tinv, group.mul(h, t));
        let chi_sigma = symgroup_character(sigma, &group.elements[conj].perm.cycle_type_on(&omega_v))
            .map_err(|_| SymmetricError::NotStandard)?;
        let x = chi_r * Rational::from_integer((chi_rho * chi_sigma).into());
        assert!(x.is_integer(), "arrow traces of a permutation-like action are integers");
        total += x.to_integer();
    }
    let h = BigInt::from(pair.stabilizer.len());
    assert!((&total % &h).is_zero() && !total.is_negative(), "character inner product is a non-negative integer");
    Ok((total / h).try_into().expect("small multiplicity"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::kronecker;
    use crate::partition::lr_coefficient;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn permutation_basics() {
        let s = Permutation::from_one_based(&[2, 3, 1]).unwrap();
        assert_eq!(s.compose(&s.inverse()), Permutation::identity(3));
        assert_eq!(s.sign(), 1);
        assert_eq!(s.cycle_type(), p(&[3]));
        assert_eq!(Permutation::all(4).len(), 24);
        assert!(Permutation::from_one_based(&[1, 1]).is_err());
        let t = Permutation::transposition(3, 0, 1);
        // (σ∘τ)(0) = σ(τ(0)) = σ(1) = 2
        assert_eq!(s.compose(&t).apply(0), 2);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "[2,3,1]");
        assert_eq!(serde_json::from_str::<Permutation>(&json).unwrap(), s);
    }

    #[test]
    fn trivial_and_sign_symmetrizers() {
        for d in 1..=4 {
            let row = young_symmetrizer(&Tableau::row_reading(&p(&[d]))).unwrap();
            let col = young_symmetrizer(&Tableau::row_reading(&p(&vec![1; d]))).unwrap();
            let w = Rational::new(1.into(), factorial(d));
            for g in Permutation::all(d) {
                assert_eq!(row.coeff(&g), w);
                assert_eq!(col.coeff(&g), &w * Rational::from_integer(g.sign().into()));
            }
        }
    }

    #[test]
    fn hook_shape_symmetrizer() {
        let t = Tableau::row_reading(&p(&[2, 1]));
        let e = young_symmetrizer(&t).unwrap();
        // (1 + (12))(1 − (13)) / 3 has four terms
        assert_eq!(e.support().len(), 4);
        assert_eq!(e.mul(&e), e);
    }

    #[test]
    fn symmetrizers_are_idempotent_up_to_five() {
        for d in 1..=5 {
            for shape in partitions_of(d, d) {
                for t in Tableau::standard(&shape) {
                    let e = young_symmetrizer(&t).unwrap();
                    assert_eq!(e.mul(&e), e, "{t:?}");
                }
            }
        }
    }

    #[test]
    fn two_sided_ideal_dimension() {
        let r = group_algebra_realization(4, 5).unwrap();
        for shape in partitions_of(4, 4) {
            let e = &r.matrix_of(&young_symmetrizer(&Tableau::row_reading(&shape)).unwrap());
            let b = r.algebra.basis();
            let span: Vec<Vec<Rational>> = b
                .iter()
                .flat_map(|x| b.iter().map(move |y| (&(x * e) * y).row(0).to_vec()))
                .collect();
            let rank = RatMatrix::from_rows(span).unwrap().rank();
            let f = dim_symgroup_irrep(&shape);
            assert_eq!(rank, f * f, "{shape}");
        }
    }

    #[test]
    fn block_structure_of_small_group_algebras() {
        let r1 = group_algebra_realization(1, 5).unwrap();
        assert_eq!(r1.algebra.dim(), 1);
        let r2 = group_algebra_realization(2, 5).unwrap();
        let d2 = r2.decompose(0).unwrap();
        assert_eq!(d2.blocks.len(), 2);
        let r3 = group_algebra_realization(3, 5).unwrap();
        let d3 = r3.decompose(0).unwrap();
        let mut sizes: Vec<usize> = d3.blocks.iter().map(|b| b.size() * b.size()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 4]);
        assert_eq!(d3.blocks[1].label, "[2,1]");
        assert!(matches!(group_algebra_realization(6, 5), Err(SymmetricError::BoundExceeded { .. })));
    }

    #[test]
    fn native_blocks_are_matrix_units() {
        for m in 1..=4 {
            let blocks = symmetric_group_blocks(m).unwrap();
            let mut total = GroupAlgebraElement::zero(m);
            for b in &blocks {
                let f = b.size();
                assert_eq!(f, dim_symgroup_irrep(&b.shape));
                let mut z = GroupAlgebraElement::zero(m);
                for i in 0..f {
                    z = z.add(&b.units[i][i]);
                    for j in 0..f {
                        for k in 0..f {
                            for l in 0..f {
                                let prod = b.units[i][j].mul(&b.units[k][l]);
                                if j == k {
                                    assert_eq!(prod, b.units[i][l]);
                                } else {
                                    assert!(prod.is_zero());
                                }
                            }
                        }
                    }
                }
                assert_eq!(z, central_idempotent(&b.shape));
                total = total.add(&z);
            }
            assert_eq!(total, GroupAlgebraElement::one(m));
        }
    }

    #[test]
    fn realization_roundtrip() {
        let r = group_algebra_realization(3, 5).unwrap();
        let x = young_symmetrizer(&Tableau::row_reading(&p(&[2, 1]))).unwrap();
        let y = jucys_murphy(3, 2);
        assert_eq!(r.element_of(&r.matrix_of(&x)), x);
        assert_eq!(&r.matrix_of(&x) * &r.matrix_of(&y), r.matrix_of(&x.mul(&y)));
    }

    #[test]
    fn kronecker_action_orbits_and_multiplicities() {
        for n in 2..=4 {
            let q = Quiver::kronecker(n);
            let act = FiniteAction::symmetric_on_kronecker(n);
            let g = act.group(&q).unwrap();
            assert_eq!(BigInt::from(g.order()), factorial(n));
            let od = orbits_and_stabilizers(&q, &g);
            assert_eq!(od.orbits, vec![vec![0], vec![1]]);
            assert_eq!(od.stabilizers[0].len(), g.order());
            let pair = od.pairs.iter().find(|x| x.u == 0 && x.v == 1).unwrap();
            let hook = Partition::new(vec![n - 1, 1]);
            for rho in partitions_of(n, n) {
                for sigma in partitions_of(n, n) {
                    let expect = kronecker(&rho, &hook, &sigma).unwrap() + usize::from(rho == sigma);
                    assert_eq!(module_multiplicity(&g, &od, pair, &rho, &sigma).unwrap(), expect);
                }
            }
        }
    }

    #[test]
    fn subspace_action_orbits() {
        let q = Quiver::subspace(4);
        let act = FiniteAction::symmetric_on_subspace(4);
        let g = act.group(&q).unwrap();
        let od = orbits_and_stabilizers(&q, &g);
        assert_eq!(od.orbits.len(), 2);
        for (o, stab) in od.orbits.iter().zip(&od.stabilizers) {
            assert_eq!(o.len() * stab.len(), g.order());
        }
        assert_eq!(od.symmetric_support(&g, 0).unwrap().len(), 3);
        assert_eq!(od.symmetric_support(&g, 1).unwrap().len(), 4);
        let arrow_pairs: Vec<&PairOrbit> = od.pairs.iter().filter(|x| !x.arrows.is_empty()).collect();
        assert_eq!(arrow_pairs.len(), 1);
        for rho in partitions_of(3, 3) {
            for sigma in partitions_of(4, 4) {
                let m = module_multiplicity(&g, &od, arrow_pairs[0], &rho, &sigma).unwrap();
                assert_eq!(m, lr_coefficient(&rho, &p(&[1]), &sigma));
            }
        }
    }

    #[test]
    fn trivial_group_orbits() {
        let q = Quiver::kronecker(3);
        let act = FiniteAction::trivial();
        let g = act.group(&q).unwrap();
        let od = orbits_and_stabilizers(&q, &g);
        assert_eq!(od.orbits.len(), 2);
        let pair = od.pairs.iter().find(|x| x.u == 0 && x.v == 1).unwrap();
        let e = Partition::empty();
        assert_eq!(module_multiplicity(&g, &od, pair, &e, &e).unwrap(), 3);
    }

    #[test]
    fn inconsistent_generators_are_rejected() {
        let q = Quiver::kronecker(2);
        let s = Permutation::transposition(2, 0, 1);
        // the swap must be an involution on arrows; a 3-cycle-like scaling is not
        let bad = RatMatrix::from_i64(2, 2, &[0, 2, 1, 0]);
        let act = FiniteAction::new(&q, 2, vec![s], vec![Permutation::identity(2)], vec![bad]).unwrap();
        assert!(matches!(act.group(&q), Err(SymmetricError::NotHomomorphism(_))));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn perm(m: usize) -> impl Strategy<Value = Permutation> {
            Just((0..m).collect::<Vec<usize>>())
                .prop_shuffle()
                .prop_map(|v| Permutation::from_images(v).unwrap())
        }

        proptest! {
            #[test]
            fn group_laws(a in perm(6), b in perm(6), c in perm(6)) {
                prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
                prop_assert!(a.compose(&a.inverse()).is_identity());
                prop_assert_eq!(a.compose(&b).sign(), a.sign() * b.sign());
                prop_assert_eq!(a.cycle_type().size(), 6);
            }

            #[test]
            fn multiplicities_exhaust_the_arrow_module(n in 2usize..=4, sub in any::<bool>()) {
                let (q, act) = if sub {
                    (Quiver::subspace(n), FiniteAction::symmetric_on_subspace(n))
                } else {
                    (Quiver::kronecker(n), FiniteAction::symmetric_on_kronecker(n))
                };
                let g = act.group(&q).unwrap();
                let od = orbits_and_stabilizers(&q, &g);
                for (o, stab) in od.orbits.iter().zip(&od.stabilizers) {
                    prop_assert_eq!(o.len() * stab.len(), g.order());
                }
                for pair in od.pairs.iter().filter(|x| !x.arrows.is_empty()) {
                    let index = od.stabilizers[pair.u_orbit].len() / pair.stabilizer.len();
                    for sigma in od.labels(&g, pair.v_orbit).unwrap() {
                        let total: usize = od
                            .labels(&g, pair.u_orbit)
                            .unwrap()
                            .iter()
                            .map(|rho| module_multiplicity(&g, &od, pair, rho, &sigma).unwrap() * dim_symgroup_irrep(rho))
                            .sum();
                        prop_assert_eq!(total, index * pair.arrows.len() * dim_symgroup_irrep(&sigma));
                    }
                }
            }
        }
    }
}
