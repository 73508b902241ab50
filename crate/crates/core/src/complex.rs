//! Simplices on `n` vertices, boundary matrices, cycles, links and hypertrees.
//!
//! A d-simplex is a (d+1)-subset of `[0, n)`. All d-simplices of the complete
//! complex are numbered in colexicographic order, which is the row/column
//! order of every boundary matrix in this crate.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitVec, EchelonBasis, Gf2Matrix};

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// A simplex as a strictly increasing list of vertex ids. Simplices of equal
/// dimension are ordered colexicographically, so sets iterate in colex order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Simplex(Vec<u32>);

impl Simplex {
    /// Builds a simplex from strictly increasing vertices.
    pub fn new(vertices: Vec<u32>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidSimplex("empty vertex list".into()));
        }
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSimplex(format!(
                "vertices {vertices:?} are not strictly increasing"
            )));
        }
        Ok(Self(vertices))
    }

    /// Sorts the vertices first; rejects repeated vertices.
    pub fn from_unsorted(mut vertices: Vec<u32>) -> Result<Self> {
        vertices.sort_unstable();
        Self::new(vertices)
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn max_vertex(&self) -> u32 {
        *self.0.last().expect("nonempty")
    }

    /// Position in the colexicographic order of all simplices of this dimension.
    pub fn colex_index(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &v)| binomial(v as usize, i + 1))
            .sum()
    }

    /// Inverse of [`Simplex::colex_index`].
    pub fn from_colex(mut index: usize, d: usize) -> Self {
        let mut vertices = vec![0u32; d + 1];
        for i in (0..=d).rev() {
            let k = i + 1;
            let mut v = i;
            while binomial(v + 1, k) <= index {
                v += 1;
            }
            index -= binomial(v, k);
            vertices[i] = v as u32;
        }
        Self(vertices)
    }

    /// Codimension-one faces; the i-th face drops the i-th vertex and carries
    /// orientation sign `(-1)^i`.
    pub fn faces(&self) -> impl Iterator<Item = (usize, Simplex)> + '_ {
        (0..self.0.len()).map(move |i| {
            let mut face = self.0.clone();
            face.remove(i);
            (i, Simplex(face))
        })
    }

    pub fn with_vertex(&self, v: u32) -> Result<Simplex> {
        let mut vertices = self.0.clone();
        vertices.push(v);
        Simplex::from_unsorted(vertices)
    }

    pub fn without_vertex(&self, v: u32) -> Option<Simplex> {
        let pos = self.0.binary_search(&v).ok()?;
        if self.0.len() == 1 {
            return None;
        }
        let mut vertices = self.0.clone();
        vertices.remove(pos);
        Some(Simplex(vertices))
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<Vec<u32>> for Simplex {
    type Error = Error;

    fn try_from(value: Vec<u32>) -> Result<Self> {
        Simplex::new(value)
    }
}

impl From<Simplex> for Vec<u32> {
    fn from(value: Simplex) -> Self {
        value.0
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Shorthand used heavily in tests.
pub fn simplex(vertices: &[u32]) -> Simplex {
    Simplex::from_unsorted(vertices.to_vec()).expect("valid simplex")
}

/// A set of d-simplices on `n` vertices.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSimplexSet", into = "RawSimplexSet")]
pub struct SimplexSet {
    n: usize,
    d: usize,
    members: BTreeSet<Simplex>,
}

#[derive(Serialize, Deserialize)]
struct RawSimplexSet {
    n: usize,
    d: usize,
    simplices: Vec<Simplex>,
}

impl TryFrom<RawSimplexSet> for SimplexSet {
    type Error = Error;

    fn try_from(raw: RawSimplexSet) -> Result<Self> {
        let len = raw.simplices.len();
        let set = SimplexSet::from_simplices(raw.n, raw.d, raw.simplices)?;
        if set.len() != len {
            return Err(Error::InvalidInput("duplicate simplices".into()));
        }
        Ok(set)
    }
}

impl From<SimplexSet> for RawSimplexSet {
    fn from(set: SimplexSet) -> Self {
        RawSimplexSet {
            n: set.n,
            d: set.d,
            simplices: set.members.into_iter().collect(),
        }
    }
}

impl fmt::Debug for SimplexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplexSet(n={}, d={}) ", self.n, self.d)?;
        f.debug_set().entries(&self.members).finish()
    }
}

impl SimplexSet {
    pub fn empty(n: usize, d: usize) -> Self {
        Self {
            n,
            d,
            members: BTreeSet::new(),
        }
    }

    pub fn from_simplices(n: usize, d: usize, simplices: impl IntoIterator<Item = Simplex>) -> Result<Self> {
        let mut set = Self::empty(n, d);
        for s in simplices {
            set.insert(s)?;
        }
        Ok(set)
    }

    /// All of `K_n^(d)`.
    pub fn complete(n: usize, d: usize) -> Self {
        let members = (0..binomial(n, d + 1))
            .map(|i| Simplex::from_colex(i, d))
            .collect();
        Self { n, d, members }
    }

    /// All d-simplices containing vertex `v`; a hypertree of the complete complex.
    pub fn star(n: usize, d: usize, v: u32) -> Self {
        let mut set = Self::complete(n, d);
        set.members.retain(|s| s.contains(v));
        set
    }

    pub fn from_indicator(n: usize, d: usize, indicator: &BitVec) -> Self {
        let members = indicator.iter_ones().map(|i| Simplex::from_colex(i, d)).collect();
        Self { n, d, members }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.members.contains(s)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.members.iter()
    }

    pub fn insert(&mut self, s: Simplex) -> Result<bool> {
        if s.dim() != self.d {
            return Err(Error::InvalidSimplex(format!(
                "{s:?} has dimension {}, expected {}",
                s.dim(),
                self.d
            )));
        }
        if s.max_vertex() as usize >= self.n {
            return Err(Error::InvalidSimplex(format!(
                "{s:?} uses a vertex outside [0, {})",
                self.n
            )));
        }
        Ok(self.members.insert(s))
    }

    pub fn remove(&mut self, s: &Simplex) -> bool {
        self.members.remove(s)
    }

    /// Characteristic vector over the colex order of `K_n^(d)`.
    pub fn indicator(&self) -> BitVec {
        BitVec::from_indices(
            binomial(self.n, self.d + 1),
            self.members.iter().map(Simplex::colex_index),
        )
    }

    /// Colex indices of the members, ascending (the iteration order).
    pub fn indices(&self) -> Vec<usize> {
        self.members.iter().map(Simplex::colex_index).collect()
    }

    pub fn vertex_support(&self) -> BTreeSet<u32> {
        self.members
            .iter()
            .flat_map(|s| s.vertices().iter().copied())
            .collect()
    }

    pub fn symmetric_difference(&self, other: &SimplexSet) -> SimplexSet {
        debug_assert_eq!((self.n, self.d), (other.n, other.d));
        SimplexSet {
            n: self.n,
            d: self.d,
            members: self
                .members
                .symmetric_difference(&other.members)
                .cloned()
                .collect(),
        }
    }

    pub fn intersection(&self, other: &SimplexSet) -> SimplexSet {
        SimplexSet {
            n: self.n,
            d: self.d,
            members: self.members.intersection(&other.members).cloned().collect(),
        }
    }

    pub fn union(&self, other: &SimplexSet) -> SimplexSet {
        SimplexSet {
            n: self.n,
            d: self.d,
            members: self.members.union(&other.members).cloned().collect(),
        }
    }

    pub fn is_disjoint(&self, other: &SimplexSet) -> bool {
        self.members.is_disjoint(&other.members)
    }

    pub fn is_subset(&self, other: &SimplexSet) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Complement inside `K_n^(d)`.
    pub fn complement(&self) -> SimplexSet {
        let mut all = SimplexSet::complete(self.n, self.d);
        all.members.retain(|s| !self.members.contains(s));
        all
    }
}

/// A simplex set with one nonnegative weight per member, in set order.
/// Serialized like a [`SimplexSet`] with an extra `"weights"` array, which
/// defaults to all ones when absent.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawWeighted", into = "RawWeighted")]
pub struct WeightedSimplexSet {
    pub set: SimplexSet,
    pub weights: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawWeighted {
    n: usize,
    d: usize,
    simplices: Vec<Simplex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<f64>>,
}

impl TryFrom<RawWeighted> for WeightedSimplexSet {
    type Error = Error;

    fn try_from(raw: RawWeighted) -> Result<Self> {
        let weights = raw.weights.unwrap_or_else(|| vec![1.0; raw.simplices.len()]);
        if weights.len() != raw.simplices.len() {
            return Err(Error::DimensionMismatch {
                expected: raw.simplices.len(),
                found: weights.len(),
            });
        }
        let mut pairs: Vec<(Simplex, f64)> = raw.simplices.into_iter().zip(weights).collect();
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let set = SimplexSet::try_from(RawSimplexSet {
            n: raw.n,
            d: raw.d,
            simplices: pairs.iter().map(|p| p.0.clone()).collect(),
        })?;
        WeightedSimplexSet::new(set, pairs.into_iter().map(|p| p.1).collect())
    }
}

impl From<WeightedSimplexSet> for RawWeighted {
    fn from(w: WeightedSimplexSet) -> Self {
        RawWeighted {
            n: w.set.n,
            d: w.set.d,
            simplices: w.set.members.into_iter().collect(),
            weights: Some(w.weights),
        }
    }
}

impl WeightedSimplexSet {
    pub fn new(set: SimplexSet, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != set.len() {
            return Err(Error::DimensionMismatch {
                expected: set.len(),
                found: weights.len(),
            });
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::InvalidInput(format!("weight {w} is not a nonnegative number")));
        }
        Ok(Self { set, weights })
    }

    pub fn unit(set: SimplexSet) -> Self {
        let weights = vec![1.0; set.len()];
        Self { set, weights }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Simplex, f64)> {
        self.set.iter().zip(self.weights.iter().copied())
    }

    /// Weights spread over the colex order of `K_n^(d)`, zero off the set.
    pub fn dense_weights(&self) -> Vec<f64> {
        let mut out = vec![0.0; binomial(self.set.n, self.set.d + 1)];
        for (s, w) in self.iter() {
            out[s.colex_index()] = w;
        }
        out
    }
}

impl<'a> IntoIterator for &'a SimplexSet {
    type Item = &'a Simplex;
    type IntoIter = std::collections::btree_set::Iter<'a, Simplex>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Index tables for `K_n^(d)`: simplices in colex order, their faces, the
/// cofaces of every (d-1)-simplex and the Z₂ boundary columns.
#[derive(Clone, Debug)]
pub struct SimplexSpace {
    n: usize,
    d: usize,
    simplices: Vec<Simplex>,
    faces: Vec<Vec<usize>>,
    cofaces: Vec<Vec<usize>>,
    columns: Vec<BitVec>,
}

impl SimplexSpace {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidInput("dimension must be at least 1".into()));
        }
        if n < d + 1 {
            return Err(Error::InvalidInput(format!(
                "need at least {} vertices for dimension {d}, got {n}",
                d + 1
            )));
        }
        let count = binomial(n, d + 1);
        let face_count = binomial(n, d);
        let simplices: Vec<Simplex> = (0..count).map(|i| Simplex::from_colex(i, d)).collect();
        let faces: Vec<Vec<usize>> = simplices
            .iter()
            .map(|s| s.faces().map(|(_, f)| f.colex_index()).collect())
            .collect();
        let mut cofaces = vec![Vec::new(); face_count];
        for (i, fs) in faces.iter().enumerate() {
            for &f in fs {
                cofaces[f].push(i);
            }
        }
        let columns = faces
            .iter()
            .map(|fs| BitVec::from_indices(face_count, fs.iter().copied()))
            .collect();
        Ok(Self {
            n,
            d,
            simplices,
            faces,
            cofaces,
            columns,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn num_simplices(&self) -> usize {
        self.simplices.len()
    }

    pub fn num_faces(&self) -> usize {
        self.cofaces.len()
    }

    pub fn simplex(&self, i: usize) -> &Simplex {
        &self.simplices[i]
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    /// Colex indices of the faces of simplex `i`, in the order of
    /// [`Simplex::faces`].
    pub fn faces(&self, i: usize) -> &[usize] {
        &self.faces[i]
    }

    pub fn cofaces(&self, face: usize) -> &[usize] {
        &self.cofaces[face]
    }

    /// Column `i` of the Z₂ boundary matrix `M_d`.
    pub fn column(&self, i: usize) -> &BitVec {
        &self.columns[i]
    }

    /// Rank of `M_d`, i.e. the size of every hypertree: `C(n-1, d)`.
    pub fn full_rank(&self) -> usize {
        binomial(self.n - 1, self.d)
    }

    pub fn boundary_matrix(&self) -> Gf2Matrix {
        Gf2Matrix::from_columns(self.num_faces(), &self.columns).expect("consistent widths")
    }

    /// Rank of the boundary columns selected by the indicator `selection`.
    pub fn rank_of(&self, selection: &BitVec) -> usize {
        let mut basis = EchelonBasis::new(self.num_faces());
        let mut rank = 0;
        for i in selection.iter_ones() {
            if basis.insert(self.columns[i].clone()) {
                rank += 1;
                if rank == self.full_rank() {
                    break;
                }
            }
        }
        rank
    }

    /// Z₂ boundary of a set of simplices given by indicator.
    pub fn boundary_of(&self, selection: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.num_faces());
        for i in selection.iter_ones() {
            out.xor_assign(&self.columns[i]);
        }
        out
    }

    /// Boundaries of all (d+1)-simplices, as lists of d-simplex indices.
    /// These are the smallest cycles and generate the cycle space.
    pub fn elementary_cycles(&self) -> Vec<Vec<usize>> {
        (0..binomial(self.n, self.d + 2))
            .map(|i| {
                Simplex::from_colex(i, self.d + 1)
                    .faces()
                    .map(|(_, f)| f.colex_index())
                    .collect()
            })
            .collect()
    }

    /// Greedy basis of boundary columns in the given order; the selected
    /// indices form a maximal acyclic subset of the candidates.
    pub fn greedy_acyclic(&self, order: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let mut basis = EchelonBasis::new(self.num_faces());
        let full = self.full_rank();
        let mut chosen = Vec::new();
        for i in order {
            if chosen.len() == full {
                break;
            }
            if basis.insert(self.columns[i].clone()) {
                chosen.push(i);
            }
        }
        chosen
    }

    /// Rejects sets that do not live in this `K_n^(d)`.
    pub fn check(&self, set: &SimplexSet) -> Result<()> {
        if set.n() != self.n || set.d() != self.d {
            return Err(Error::InvalidInput(format!(
                "set lives in K_{}^({}), expected K_{}^({})",
                set.n(),
                set.d(),
                self.n,
                self.d
            )));
        }
        Ok(())
    }
}

/// `∂A`, the Z₂ boundary of a set of d-simplices.
pub fn boundary(a: &SimplexSet) -> Result<SimplexSet> {
    let space = SimplexSpace::new(a.n(), a.d())?;
    let b = space.boundary_of(&a.indicator());
    Ok(SimplexSet::from_indicator(a.n(), a.d() - 1, &b))
}

pub fn is_cycle(z: &SimplexSet) -> Result<bool> {
    Ok(boundary(z)?.is_empty())
}

/// Greedily extracts a spanning hypertree from `k`, or `None` when `k` is not
/// connected.
pub fn find_hypertree(k: &SimplexSet) -> Result<Option<SimplexSet>> {
    let space = SimplexSpace::new(k.n(), k.d())?;
    let chosen = space.greedy_acyclic(k.indices());
    if chosen.len() < space.full_rank() {
        return Ok(None);
    }
    let tree = BitVec::from_indices(space.num_simplices(), chosen);
    Ok(Some(SimplexSet::from_indicator(k.n(), k.d(), &tree)))
}

/// Homological connectivity: the columns of `k` span the column space of `M_d`.
pub fn is_connected(k: &SimplexSet) -> Result<bool> {
    let space = SimplexSpace::new(k.n(), k.d())?;
    Ok(space.rank_of(&k.indicator()) == space.full_rank())
}

/// A hypertree is an acyclic set of the maximal size `C(n-1, d)`.
pub fn is_hypertree(t: &SimplexSet) -> Result<bool> {
    let space = SimplexSpace::new(t.n(), t.d())?;
    Ok(t.len() == space.full_rank() && space.rank_of(&t.indicator()) == t.len())
}

/// `Link_v(X) = {τ : v ∉ τ, τ ∪ {v} ∈ X}`.
pub fn link(x: &SimplexSet, v: u32) -> Result<SimplexSet> {
    if v as usize >= x.n() {
        return Err(Error::IndexOutOfRange {
            index: v as usize,
            bound: x.n(),
        });
    }
    if x.d() == 0 {
        return Err(Error::InvalidInput("links of 0-simplices are empty-dimensional".into()));
    }
    let members = x.iter().filter_map(|s| s.without_vertex(v));
    SimplexSet::from_simplices(x.n(), x.d() - 1, members)
}

/// Z₂ and oriented real boundary matrices of `K_n^(d)`.
#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    pub n: usize,
    pub d: usize,
    pub z2: Gf2Matrix,
    /// Sparse signed columns: `(face index, ±1)` for every d-simplex.
    pub signs: Vec<Vec<(usize, i8)>>,
}

impl BoundaryMatrix {
    pub fn rows(&self) -> usize {
        self.z2.rows()
    }

    pub fn cols(&self) -> usize {
        self.z2.cols()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.rows(), self.cols());
        for (j, col) in self.signs.iter().enumerate() {
            for &(i, s) in col {
                m[(i, j)] = f64::from(s);
            }
        }
        m
    }

    /// `xᵀ M_d`: the real coboundary of a (d-1)-cochain.
    pub fn coboundary(&self, x: &[f64]) -> Vec<f64> {
        self.signs
            .iter()
            .map(|col| col.iter().map(|&(i, s)| f64::from(s) * x[i]).sum())
            .collect()
    }
}

/// Boundary matrices with the sorted-vertex orientation: dropping the i-th
/// vertex of a simplex contributes sign `(-1)^i`.
pub fn real_boundary(n: usize, d: usize) -> Result<BoundaryMatrix> {
    let space = SimplexSpace::new(n, d)?;
    let signs = space
        .simplices()
        .iter()
        .zip(&space.faces)
        .map(|(s, faces)| {
            (0..s.vertices().len())
                .map(|i| (faces[i], if i % 2 == 0 { 1 } else { -1 }))
                .collect()
        })
        .collect();
    Ok(BoundaryMatrix {
        n,
        d,
        z2: space.boundary_matrix(),
        signs,
    })
}

/// Enumerates the simple d-cycles (circuits of the simplicial matroid) with
/// at most `max_size` simplices, as indicators over colex indices.
///
/// The search grows a cycle from its smallest simplex, always covering the
/// lowest uncancelled boundary face, and keeps every partial set acyclic; a
/// set whose boundary vanishes under that discipline is a circuit. The
/// search is exponential, so it stops with [`Error::GuardExceeded`] after
/// `max_nodes` expansions.
pub fn enumerate_simple_cycles(
    space: &SimplexSpace,
    max_size: usize,
    max_nodes: usize,
) -> Result<Vec<BitVec>> {
    struct Search<'a> {
        space: &'a SimplexSpace,
        max_size: usize,
        max_nodes: usize,
        nodes: usize,
        root: usize,
        visited: HashSet<BitVec>,
        found: Vec<BitVec>,
        seen: HashSet<BitVec>,
    }

    impl Search<'_> {
        fn grow(&mut self, chosen: &mut BitVec, size: usize, bnd: &BitVec, basis: &EchelonBasis) -> Result<()> {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Err(Error::GuardExceeded {
                    what: "cycle enumeration nodes".into(),
                    limit: self.max_nodes,
                });
            }
            let Some(face) = bnd.first_one() else {
                if self.seen.insert(chosen.clone()) {
                    self.found.push(chosen.clone());
                }
                return Ok(());
            };
            let per_simplex = self.space.d() + 1;
            if size + bnd.count_ones().div_ceil(per_simplex) > self.max_size {
                return Ok(());
            }
            for &s in self.space.cofaces(face) {
                if s <= self.root || chosen.get(s) {
                    continue;
                }
                chosen.set(s, true);
                if self.visited.insert(chosen.clone()) {
                    let column = self.space.column(s);
                    let mut next_bnd = bnd.clone();
                    next_bnd.xor_assign(column);
                    if next_bnd.is_zero() {
                        self.grow(chosen, size + 1, &next_bnd, basis)?;
                    } else {
                        let mut next_basis = basis.clone();
                        if next_basis.insert(column.clone()) {
                            self.grow(chosen, size + 1, &next_bnd, &next_basis)?;
                        }
                    }
                }
                chosen.set(s, false);
            }
            Ok(())
        }
    }

    let mut search = Search {
        space,
        max_size,
        max_nodes,
        nodes: 0,
        root: 0,
        visited: HashSet::new(),
        found: Vec::new(),
        seen: HashSet::new(),
    };
    for root in 0..space.num_simplices() {
        search.root = root;
        search.visited.clear();
        let mut chosen = BitVec::singleton(space.num_simplices(), root);
        let mut basis = EchelonBasis::new(space.num_faces());
        basis.insert(space.column(root).clone());
        let bnd = space.column(root).clone();
        search.grow(&mut chosen, 1, &bnd, &basis)?;
    }
    Ok(search.found)
}
