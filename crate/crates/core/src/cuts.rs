//! Coboundaries and hypercuts of `K_n^(d)`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::complex::{binomial, link, Simplex, SimplexSet, SimplexSpace};
use crate::error::{Error, Result};
use crate::gf2::{BitVec, EchelonBasis};
use crate::tolerance;

/// A set of d-simplices together with a (d-1)-set inducing it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Coboundary {
    pub cut: SimplexSet,
    pub inducer: SimplexSet,
}

impl Coboundary {
    /// Wraps a set after checking that it is a coboundary; the inducer is
    /// taken to be its link at the last vertex.
    pub fn from_cut(cut: SimplexSet) -> Result<Self> {
        if !is_coboundary(&cut)? {
            return Err(Error::NotCoboundary(format!("{cut:?}")));
        }
        let inducer = link(&cut, (cut.n() - 1) as u32)?;
        Ok(Self { cut, inducer })
    }

    pub fn n(&self) -> usize {
        self.cut.n()
    }

    pub fn d(&self) -> usize {
        self.cut.d()
    }
}

/// A minimal nonempty coboundary. `certified` records that the rank test
/// was actually run on it and passed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hypercut {
    pub co: Coboundary,
    pub certified: bool,
}

impl Hypercut {
    /// Runs the hypercut test and fails if it does not pass.
    pub fn certify(cut: SimplexSet) -> Result<Self> {
        if !is_hypercut(&cut)? {
            return Err(Error::InvalidInput(format!("{cut:?} is not a hypercut")));
        }
        Ok(Self {
            co: Coboundary::from_cut(cut)?,
            certified: true,
        })
    }

    fn trusted(cut: SimplexSet, certified: bool) -> Result<Self> {
        let inducer = link(&cut, (cut.n() - 1) as u32)?;
        Ok(Self {
            co: Coboundary { cut, inducer },
            certified,
        })
    }

    pub fn cut(&self) -> &SimplexSet {
        &self.co.cut
    }

    pub fn len(&self) -> usize {
        self.co.cut.len()
    }

    pub fn is_empty(&self) -> bool {
        self.co.cut.is_empty()
    }
}

/// Points in `R^dim`, one per vertex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        let set = Self { dim, points };
        set.validate()?;
        Ok(set)
    }

    pub fn validate(&self) -> Result<()> {
        for p in &self.points {
            if p.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: p.len(),
                });
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidInput("non-finite coordinate".into()));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points at angles `angles[i]` on the unit circle.
    pub fn circle(angles: &[f64]) -> Self {
        Self {
            dim: 2,
            points: angles.iter().map(|a| vec![a.cos(), a.sin()]).collect(),
        }
    }
}

/// `{σ : |∂σ ∩ g| odd}` for a (d-1)-set `g`.
pub fn coboundary_from_inducer(g: &SimplexSet) -> Result<Coboundary> {
    let space = SimplexSpace::new(g.n(), g.d() + 1)?;
    let gi = g.indicator();
    let cut = BitVec::from_bools(
        &(0..space.num_simplices())
            .map(|i| space.column(i).dot(&gi))
            .collect::<Vec<_>>(),
    );
    Ok(Coboundary {
        cut: SimplexSet::from_indicator(g.n(), g.d() + 1, &cut),
        inducer: g.clone(),
    })
}

/// Even intersection with the boundary of every (d+1)-simplex.
pub fn is_coboundary(c: &SimplexSet) -> Result<bool> {
    let space = SimplexSpace::new(c.n(), c.d())?;
    Ok(is_coboundary_in(&space, &c.indicator()))
}

pub(crate) fn is_coboundary_in(space: &SimplexSpace, c: &BitVec) -> bool {
    let (n, d) = (space.n(), space.d());
    (0..binomial(n, d + 2)).all(|i| {
        Simplex::from_colex(i, d + 1)
            .faces()
            .filter(|(_, f)| c.get(f.colex_index()))
            .count()
            % 2
            == 0
    })
}

/// `Link_v(b.cut)`, which induces `b.cut` again.
pub fn link_inducer(b: &Coboundary, v: u32) -> Result<SimplexSet> {
    if !is_coboundary(&b.cut)? {
        return Err(Error::NotCoboundary(format!("{:?}", b.cut)));
    }
    link(&b.cut, v)
}

/// Nonempty coboundary whose complement has corank one in the column space.
pub fn is_hypercut(c: &SimplexSet) -> Result<bool> {
    let space = SimplexSpace::new(c.n(), c.d())?;
    Ok(is_hypercut_in(&space, &c.indicator()))
}

pub(crate) fn is_hypercut_in(space: &SimplexSpace, c: &BitVec) -> bool {
    !c.is_zero() && is_coboundary_in(space, c) && has_corank_one(space, c)
}

fn has_corank_one(space: &SimplexSpace, c: &BitVec) -> bool {
    space.rank_of(&c.complement()) + 1 == space.full_rank()
}

/// Whether the V-equivalence on the edges of `g` has a single class. Two
/// edges `uv`, `uw` are equivalent when `vw` is not an edge.
pub fn is_v_connected(g: &SimplexSet) -> Result<bool> {
    if g.d() != 1 {
        return Err(Error::InvalidInput("V-connectedness is defined for graphs".into()));
    }
    if g.is_empty() {
        return Ok(false);
    }
    let edges: Vec<&Simplex> = g.iter().collect();
    let index = |a: u32, b: u32| -> Option<usize> {
        let key = Simplex::from_unsorted(vec![a, b]).ok()?;
        edges.binary_search(&&key).ok()
    };
    let n = g.n();
    let mut adj = vec![Vec::new(); n];
    for e in &edges {
        let (a, b) = (e.vertices()[0], e.vertices()[1]);
        adj[a as usize].push(b);
        adj[b as usize].push(a);
    }
    let mut parent: Vec<usize> = (0..edges.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut classes = edges.len();
    for u in 0..n as u32 {
        let nbrs = &adj[u as usize];
        for (i, &v) in nbrs.iter().enumerate() {
            for &w in &nbrs[i + 1..] {
                if index(v, w).is_some() {
                    continue;
                }
                let a = find(&mut parent, index(u, v).expect("edge"));
                let b = find(&mut parent, index(u, w).expect("edge"));
                if a != b {
                    parent[a] = b;
                    classes -= 1;
                }
            }
        }
    }
    Ok(classes == 1)
}

/// 2-hypercut test through the link graph at the last vertex.
pub fn is_2hypercut_via_link(b: &Coboundary) -> Result<bool> {
    if b.d() != 2 {
        return Err(Error::InvalidInput("link test applies to d = 2".into()));
    }
    let g = link_inducer(b, (b.n() - 1) as u32)?;
    is_v_connected(&g)
}

/// The unique hypercut meeting the hypertree `t` exactly in `sigma`.
pub fn fundamental_hypercut(t: &SimplexSet, sigma: &Simplex) -> Result<Hypercut> {
    let space = SimplexSpace::new(t.n(), t.d())?;
    let ti = t.indicator();
    if t.len() != space.full_rank() || space.rank_of(&ti) != t.len() {
        return Err(Error::NotHypertree);
    }
    if !t.contains(sigma) {
        return Err(Error::InvalidInput(format!("{sigma:?} is not in the tree")));
    }
    let cut = fundamental_cut_in(&space, &ti, sigma.colex_index());
    Hypercut::trusted(SimplexSet::from_indicator(t.n(), t.d(), &cut), true)
}

/// Complement of the span of `tree - {sigma}`, as an indicator.
pub(crate) fn fundamental_cut_in(space: &SimplexSpace, tree: &BitVec, sigma: usize) -> BitVec {
    let mut basis = EchelonBasis::new(space.num_faces());
    for i in tree.iter_ones().filter(|&i| i != sigma) {
        basis.insert(space.column(i).clone());
    }
    BitVec::from_bools(
        &(0..space.num_simplices())
            .map(|i| !basis.contains(space.column(i)))
            .collect::<Vec<_>>(),
    )
}

/// Splits a coboundary into pairwise disjoint hypercuts.
///
/// A basis of the complement is extended to a hypertree by columns of `b`;
/// the fundamental cut of any tree simplex inside `b` then lies inside `b`
/// and is peeled off.
pub fn decompose_coboundary(b: &Coboundary) -> Result<Vec<Hypercut>> {
    let space = SimplexSpace::new(b.n(), b.d())?;
    let mut rest = b.cut.indicator();
    if !is_coboundary_in(&space, &rest) {
        return Err(Error::NotCoboundary(format!("{:?}", b.cut)));
    }
    let mut out = Vec::new();
    while !rest.is_zero() {
        let outside = rest.complement();
        let order = outside.iter_ones().chain(rest.iter_ones());
        let tree = BitVec::from_indices(space.num_simplices(), space.greedy_acyclic(order));
        let sigma = tree
            .iter_ones()
            .find(|&i| rest.get(i))
            .expect("a nonempty coboundary meets every hypertree");
        let cut = fundamental_cut_in(&space, &tree, sigma);
        debug_assert!(cut.is_subset_of(&rest));
        rest.xor_assign(&cut);
        out.push(Hypercut::trusted(SimplexSet::from_indicator(b.n(), b.d(), &cut), true)?);
    }
    Ok(out)
}

/// Default limit on `C(n-1, d)`, the number of inducer bits enumerated.
pub const DEFAULT_ENUMERATION_BITS: usize = 16;

/// Every nonempty coboundary of `K_n^(d)`, one per inducer on `V - {n-1}`,
/// as indicators in Gray-code order.
pub fn enumerate_coboundaries(n: usize, d: usize, max_bits: usize) -> Result<Vec<BitVec>> {
    let space = SimplexSpace::new(n, d)?;
    let bits = binomial(n - 1, d);
    if bits > max_bits || bits >= 40 {
        return Err(Error::GuardExceeded {
            what: format!("2^{bits} inducers for n={n}, d={d}"),
            limit: max_bits,
        });
    }
    // Faces avoiding n-1 come first in colex order.
    let mut cut = BitVec::zeros(space.num_simplices());
    let mut out = Vec::with_capacity((1usize << bits) - 1);
    for step in 1u64..(1u64 << bits) {
        let face = step.trailing_zeros() as usize;
        for &s in space.cofaces(face) {
            cut.toggle(s);
        }
        out.push(cut.clone());
    }
    Ok(out)
}

/// All hypercuts of `K_n^(d)`, each exactly once, ordered by size.
pub fn enumerate_hypercuts(n: usize, d: usize, max_bits: usize) -> Result<Vec<Hypercut>> {
    let space = SimplexSpace::new(n, d)?;
    let mut out = Vec::new();
    for c in enumerate_coboundaries(n, d, max_bits)? {
        if has_corank_one(&space, &c) {
            out.push(Hypercut::trusted(SimplexSet::from_indicator(n, d, &c), true)?);
        }
    }
    out.sort_by_cached_key(|c| (c.len(), c.cut().indices()));
    Ok(out)
}

/// Whether the origin lies in the open convex hull of `d + 1` points of `R^d`.
///
/// Points are normalized first, so only directions matter. A barycentric
/// coordinate within tolerance of zero is reported as degenerate.
pub fn origin_in_simplex(points: &[&[f64]]) -> Result<bool> {
    let m = points.len();
    let dim = points.first().map_or(0, |p| p.len());
    if m != dim + 1 {
        return Err(Error::DimensionMismatch {
            expected: dim + 1,
            found: m,
        });
    }
    let mut a = DMatrix::zeros(m, m);
    for (j, p) in points.iter().enumerate() {
        let norm = p.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::Degenerate("point at the center".into()));
        }
        for (i, x) in p.iter().enumerate() {
            a[(i, j)] = x / norm;
        }
        a[(dim, j)] = 1.0;
    }
    let mut b = DVector::zeros(m);
    b[dim] = 1.0;
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if smin <= tolerance::BARYCENTRIC * smax {
        // Affinely dependent points: the origin can only be a member if it lies
        // on their affine hull.
        let x = svd
            .solve(&b, tolerance::BARYCENTRIC * smax)
            .map_err(|e| Error::Degenerate(e.to_string()))?;
        if (&a * x - &b).norm() > tolerance::BARYCENTRIC {
            return Ok(false);
        }
        return Err(Error::Degenerate("center on the affine hull of a simplex".into()));
    }
    let lambda = svd.solve(&b, 0.0).map_err(|e| Error::Degenerate(e.to_string()))?;
    if lambda.iter().any(|l| l.abs() < tolerance::BARYCENTRIC) {
        return Err(Error::Degenerate("center on the boundary of a simplex".into()));
    }
    Ok(lambda.iter().all(|&l| l > 0.0))
}

/// Indicator of the d-simplices whose image contains `center`, for points
/// in `R^d`. Rejects configurations where some `d` points are linearly
/// dependent with the center.
pub fn geometric_cut_indicator(points: &PointSet, center: &[f64]) -> Result<BitVec> {
    points.validate()?;
    let d = points.dim;
    let n = points.len();
    if center.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: center.len(),
        });
    }
    if d == 0 || n < d + 1 {
        return Err(Error::InvalidInput(format!("{n} points cannot span a {d}-simplex")));
    }
    let shifted: Vec<Vec<f64>> = points
        .points
        .iter()
        .map(|p| p.iter().zip(center).map(|(x, c)| x - c).collect())
        .collect();
    for i in 0..binomial(n, d) {
        let face = Simplex::from_colex(i, d - 1);
        let m = DMatrix::from_fn(d, d, |r, c| {
            let p = &shifted[face.vertices()[c] as usize];
            p[r] / p.iter().map(|x| x * x).sum::<f64>().sqrt()
        });
        if !(m.determinant().abs() >= tolerance::BARYCENTRIC) {
            return Err(Error::Degenerate(format!(
                "points {:?} are linearly dependent with the center",
                face.vertices()
            )));
        }
    }
    let count = binomial(n, d + 1);
    let mut cut = BitVec::zeros(count);
    for i in 0..count {
        let s = Simplex::from_colex(i, d);
        let verts: Vec<&[f64]> = s.vertices().iter().map(|&v| shifted[v as usize].as_slice()).collect();
        if origin_in_simplex(&verts)? {
            cut.set(i, true);
        }
    }
    Ok(cut)
}

/// `{σ : 0 ∈ conv(φ(σ))}` for points in `R^d`.
pub fn geometric_hypercut(points: &PointSet) -> Result<Hypercut> {
    geometric_hypercut_at(points, &vec![0.0; points.dim])
}

/// Geometric hypercut of the simplices whose image contains `center`.
pub fn geometric_hypercut_at(points: &PointSet, center: &[f64]) -> Result<Hypercut> {
    let cut = geometric_cut_indicator(points, center)?;
    if cut.is_zero() {
        return Err(Error::InvalidInput("no simplex contains the center".into()));
    }
    let cut = SimplexSet::from_indicator(points.len(), points.dim, &cut);
    let certified = is_hypercut(&cut)?;
    Hypercut::trusted(cut, certified)
}

/// Rainbow simplices of a partition of `[0, n)` into `d + 1` blocks.
pub fn partition_hypercut(n: usize, parts: &[Vec<u32>]) -> Result<Hypercut> {
    if parts.len() < 2 {
        return Err(Error::InvalidInput("need at least two blocks".into()));
    }
    let d = parts.len() - 1;
    let mut owner = vec![usize::MAX; n];
    for (b, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(Error::InvalidInput(format!("block {b} is empty")));
        }
        for &v in part {
            let slot = owner.get_mut(v as usize).ok_or(Error::IndexOutOfRange {
                index: v as usize,
                bound: n,
            })?;
            if *slot != usize::MAX {
                return Err(Error::InvalidInput(format!("vertex {v} appears twice")));
            }
            *slot = b;
        }
    }
    if let Some(v) = owner.iter().position(|&b| b == usize::MAX) {
        return Err(Error::InvalidInput(format!("vertex {v} is in no block")));
    }
    let mut cut = SimplexSet::empty(n, d);
    let mut pick = vec![0usize; parts.len()];
    'outer: loop {
        let verts: Vec<u32> = pick.iter().zip(parts).map(|(&i, p)| p[i]).collect();
        cut.insert(Simplex::from_unsorted(verts)?)?;
        for b in 0..parts.len() {
            pick[b] += 1;
            if pick[b] < parts[b].len() {
                continue 'outer;
            }
            pick[b] = 0;
        }
        break;
    }
    let certified = is_hypercut(&cut)?;
    Hypercut::trusted(cut, certified)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::simplex;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;
    use std::f64::consts::PI;

    fn five_triangles() -> SimplexSet {
        SimplexSet::from_simplices(5, 2, (0..5u32).map(|i| simplex(&[i, (i + 2) % 5, (i + 3) % 5]))).unwrap()
    }

    fn set(n: usize, d: usize, members: &[&[u32]]) -> SimplexSet {
        SimplexSet::from_simplices(n, d, members.iter().map(|m| simplex(m))).unwrap()
    }

    fn bipartition_cut(n: usize, a: &[u32]) -> SimplexSet {
        let inside: BTreeSet<u32> = a.iter().copied().collect();
        let mut c = SimplexSet::empty(n, 1);
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                if inside.contains(&u) != inside.contains(&v) {
                    c.insert(simplex(&[u, v])).unwrap();
                }
            }
        }
        c
    }

    fn random_hypertree(n: usize, d: usize, rng: &mut ChaCha8Rng) -> SimplexSet {
        let space = SimplexSpace::new(n, d).unwrap();
        let mut order: Vec<usize> = (0..space.num_simplices()).collect();
        order.shuffle(rng);
        let chosen = space.greedy_acyclic(order);
        SimplexSet::from_indicator(n, d, &BitVec::from_indices(space.num_simplices(), chosen))
    }

    #[test]
    fn inducer_examples() {
        assert!(coboundary_from_inducer(&SimplexSet::empty(5, 1)).unwrap().cut.is_empty());

        let star = coboundary_from_inducer(&set(5, 0, &[&[2]])).unwrap();
        assert_eq!(star.cut, bipartition_cut(5, &[2]));

        let c = coboundary_from_inducer(&set(5, 1, &[&[1, 2]])).unwrap();
        assert_eq!(c.cut, set(5, 2, &[&[0, 1, 2], &[1, 2, 3], &[1, 2, 4]]));
    }

    #[test]
    fn link_round_trips() {
        let empty = Coboundary::from_cut(SimplexSet::empty(5, 2)).unwrap();
        assert!(link_inducer(&empty, 3).unwrap().is_empty());

        let star = coboundary_from_inducer(&set(5, 0, &[&[2]])).unwrap();
        assert_eq!(link_inducer(&star, 2).unwrap(), set(5, 0, &[&[0], &[1], &[3], &[4]]));

        let five = Coboundary::from_cut(five_triangles()).unwrap();
        let g = link_inducer(&five, 0).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(coboundary_from_inducer(&g).unwrap().cut, five_triangles());
    }

    #[test]
    fn link_inducer_rejects_non_coboundaries() {
        let b = Coboundary {
            cut: set(5, 2, &[&[0, 1, 2]]),
            inducer: SimplexSet::empty(5, 1),
        };
        assert!(matches!(link_inducer(&b, 0), Err(Error::NotCoboundary(_))));
    }

    #[test]
    fn hypercut_examples() {
        assert!(is_hypercut(&five_triangles()).unwrap());
        for a in [&[0u32][..], &[0, 1], &[1, 3, 4]] {
            assert!(is_hypercut(&bipartition_cut(6, a)).unwrap());
        }
        // Two stars of vertex-disjoint edges.
        let a = coboundary_from_inducer(&set(6, 1, &[&[0, 1]])).unwrap().cut;
        let b = coboundary_from_inducer(&set(6, 1, &[&[2, 3]])).unwrap().cut;
        assert!(a.is_disjoint(&b));
        assert!(is_hypercut(&a).unwrap() && is_hypercut(&b).unwrap());
        let both = a.symmetric_difference(&b);
        assert!(is_coboundary(&both).unwrap());
        assert!(!is_hypercut(&both).unwrap());
        assert!(!is_hypercut(&SimplexSet::empty(5, 2)).unwrap());
    }

    #[test]
    fn v_connectedness_examples() {
        assert!(is_v_connected(&set(3, 1, &[&[0, 1], &[1, 2]])).unwrap());
        assert!(!is_v_connected(&set(3, 1, &[&[0, 1], &[1, 2], &[0, 2]])).unwrap());
        assert!(!is_v_connected(&SimplexSet::empty(4, 1)).unwrap());

        // K_6 minus a Hamiltonian cycle, as the link of vertex 6 in K_7.
        let all = SimplexSet::complete(7, 1);
        let mut g = SimplexSet::from_simplices(7, 1, all.iter().filter(|s| s.max_vertex() < 6).cloned()).unwrap();
        for i in 0..6u32 {
            g.remove(&simplex(&[i, (i + 1) % 6]));
        }
        assert!(is_v_connected(&g).unwrap());
        let b = coboundary_from_inducer(&g).unwrap();
        assert_eq!(b.cut.len(), 35 - 6 * 3);
        assert!(is_2hypercut_via_link(&b).unwrap());
        assert!(is_hypercut(&b.cut).unwrap());
    }

    #[test]
    fn fundamental_cuts_of_paths_and_stars() {
        let n = 6;
        let path = SimplexSet::from_simplices(n, 1, (0..5u32).map(|i| simplex(&[i, i + 1]))).unwrap();
        for k in 0..5u32 {
            let c = fundamental_hypercut(&path, &simplex(&[k, k + 1])).unwrap();
            let a: Vec<u32> = (0..=k).collect();
            assert_eq!(c.cut(), &bipartition_cut(n, &a));
        }
        let star = SimplexSet::star(n, 1, 0);
        for v in 1..n as u32 {
            let c = fundamental_hypercut(&star, &simplex(&[0, v])).unwrap();
            assert_eq!(c.cut(), &bipartition_cut(n, &[v]));
        }
        assert!(fundamental_hypercut(&star, &simplex(&[1, 2])).is_err());
        let not_tree = set(6, 1, &[&[0, 1], &[1, 2], &[0, 2], &[3, 4], &[4, 5]]);
        assert_eq!(fundamental_hypercut(&not_tree, &simplex(&[0, 1])), Err(Error::NotHypertree));
    }

    #[test]
    fn fundamental_cut_matches_tree_cycles() {
        // τ is in C_{T,σ} iff the unique combination of tree columns equal to
        // ∂τ uses σ.
        let t = SimplexSet::star(5, 2, 0);
        let sigma = simplex(&[0, 1, 2]);
        let c = fundamental_hypercut(&t, &sigma).unwrap();
        let space = SimplexSpace::new(5, 2).unwrap();
        let tree: Vec<usize> = t.indices();
        let pos = tree.iter().position(|&s| s == sigma.colex_index()).unwrap();
        for tau in SimplexSet::complete(5, 2).iter() {
            let target = space.column(tau.colex_index());
            let mut uses_sigma = None;
            for mask in 0u32..(1 << tree.len()) {
                let mut acc = BitVec::zeros(space.num_faces());
                for (i, &s) in tree.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        acc.xor_assign(space.column(s));
                    }
                }
                if &acc == target {
                    uses_sigma = Some(mask >> pos & 1 == 1);
                }
            }
            assert_eq!(c.cut().contains(tau), uses_sigma.unwrap(), "{tau:?}");
        }
    }

    #[test]
    fn decompositions() {
        let five = Coboundary::from_cut(five_triangles()).unwrap();
        let parts = decompose_coboundary(&five).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].cut(), &five_triangles());

        // In K_n every graph coboundary E(S) is already minimal.
        let b = bipartition_cut(5, &[0]).symmetric_difference(&bipartition_cut(5, &[1]));
        let parts = decompose_coboundary(&Coboundary::from_cut(b).unwrap()).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].cut(), &bipartition_cut(5, &[0, 1]));

        let a = coboundary_from_inducer(&set(6, 1, &[&[0, 1]])).unwrap().cut;
        let c = coboundary_from_inducer(&set(6, 1, &[&[2, 3]])).unwrap().cut;
        let b = a.symmetric_difference(&c);
        let parts = decompose_coboundary(&Coboundary::from_cut(b.clone()).unwrap()).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(parts[0].cut().is_disjoint(parts[1].cut()));
        assert_eq!(parts[0].cut().union(parts[1].cut()), b);
        assert!(parts.iter().all(|p| is_hypercut(p.cut()).unwrap()));

        let empty = Coboundary::from_cut(SimplexSet::empty(5, 2)).unwrap();
        assert!(decompose_coboundary(&empty).unwrap().is_empty());
    }

    #[test]
    fn enumeration_counts() {
        // Brute force over vertex subsets, deduplicating A and its complement.
        let n = 4;
        let mut oracle = BTreeSet::new();
        for mask in 1u32..(1 << n) - 1 {
            let a: Vec<u32> = (0..n as u32).filter(|v| mask >> v & 1 == 1).collect();
            oracle.insert(bipartition_cut(n, &a).indices());
        }
        let cuts = enumerate_hypercuts(n, 1, 16).unwrap();
        assert_eq!(cuts.len(), 7);
        let got: BTreeSet<_> = cuts.iter().map(|c| c.cut().indices()).collect();
        assert_eq!(got, oracle);

        let cuts = enumerate_hypercuts(5, 2, 16).unwrap();
        assert_eq!(cuts.iter().map(Hypercut::len).min(), Some(3));
        assert!(cuts.iter().any(|c| c.cut() == &five_triangles()));
    }

    #[test]
    fn enumeration_size_bound_n6() {
        let n = 6.0f64;
        let cuts = enumerate_hypercuts(6, 2, 16).unwrap();
        let mut counts = std::collections::BTreeMap::new();
        for c in &cuts {
            *counts.entry(c.len()).or_insert(0usize) += 1;
        }
        for (s, count) in counts {
            let bound = (4.0 * n).powf(3.0 * s as f64 / n + 1.0);
            assert!((count as f64) <= bound, "size {s}: {count} > {bound}");
        }
    }

    #[test]
    fn enumeration_guard() {
        assert!(matches!(enumerate_hypercuts(8, 2, 16), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn cuts_are_even_on_tetrahedra_and_block_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [5, 6] {
            let cuts = enumerate_hypercuts(n, 2, 16).unwrap();
            let trees: Vec<SimplexSet> = (0..200).map(|_| random_hypertree(n, 2, &mut rng)).collect();
            for c in &cuts {
                for i in 0..binomial(n, 4) {
                    let z = Simplex::from_colex(i, 3);
                    let hits = z.faces().filter(|(_, f)| c.cut().contains(f)).count();
                    assert!(hits % 2 == 0);
                }
                for t in &trees {
                    assert!(!c.cut().is_disjoint(t));
                }
            }
        }
    }

    #[test]
    fn fundamental_cut_meets_tree_once() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 4..=6 {
            for d in 1..=2 {
                let t = random_hypertree(n, d, &mut rng);
                for sigma in t.iter() {
                    let c = fundamental_hypercut(&t, sigma).unwrap();
                    assert_eq!(c.cut().intersection(&t).iter().collect::<Vec<_>>(), vec![sigma]);
                    assert!(is_hypercut(c.cut()).unwrap());
                }
            }
        }
    }

    #[test]
    fn geometric_examples() {
        let signs = PointSet::new(1, vec![vec![1.0], vec![-1.0], vec![2.0], vec![-0.5]]).unwrap();
        let c = geometric_hypercut(&signs).unwrap();
        assert_eq!(c.cut(), &bipartition_cut(4, &[0, 2]));
        assert!(c.certified);

        // Brute-force orientation test per triangle for the regular pentagon.
        let pts = PointSet::circle(&(0..5).map(|k| 2.0 * PI * k as f64 / 5.0).collect::<Vec<_>>());
        let c = geometric_hypercut(&pts).unwrap();
        let cross = |a: &[f64], b: &[f64]| a[0] * b[1] - a[1] * b[0];
        for s in SimplexSet::complete(5, 2).iter() {
            let v: Vec<&[f64]> = s.vertices().iter().map(|&i| pts.points[i as usize].as_slice()).collect();
            let signs = [cross(v[0], v[1]), cross(v[1], v[2]), cross(v[2], v[0])];
            let inside = signs.iter().all(|&x| x > 0.0) || signs.iter().all(|&x| x < 0.0);
            assert_eq!(c.cut().contains(s), inside);
        }
        assert_eq!(c.cut(), &five_triangles());
        assert!(c.certified);

        let half = PointSet::circle(&[0.1, 0.5, 1.0, 2.0, 2.9]);
        assert!(geometric_hypercut(&half).is_err());
    }

    #[test]
    fn geometric_degeneracy_is_rejected() {
        let antipodal = PointSet::circle(&[0.0, PI, 1.0, 4.0]);
        assert!(matches!(geometric_hypercut(&antipodal), Err(Error::Degenerate(_))));
        let repeated = PointSet::circle(&[0.0, 0.0, 2.0, 4.0]);
        assert!(matches!(geometric_hypercut(&repeated), Err(Error::Degenerate(_))));
    }

    #[test]
    fn partition_examples() {
        let c = partition_hypercut(5, &[vec![0, 1], vec![2, 3], vec![4]]).unwrap();
        assert_eq!(c.len(), 4);
        assert!(c.cut().iter().all(|s| s.contains(4)));
        assert!(c.certified);
        let c = partition_hypercut(5, &[vec![0, 3], vec![1, 2, 4]]).unwrap();
        assert_eq!(c.cut(), &bipartition_cut(5, &[0, 3]));
        assert!(partition_hypercut(5, &[vec![0, 1, 2, 3, 4], vec![]]).is_err());
        assert!(partition_hypercut(5, &[vec![0, 1], vec![2, 3]]).is_err());
        assert!(partition_hypercut(5, &[vec![0, 1, 4], vec![1, 2, 3]]).is_err());
    }

    #[test]
    fn star_tree_is_a_maximal_forest_for_partitions() {
        // For each σ in the star of 0 some partition cut meets the star only at σ.
        let n = 5;
        let star = SimplexSet::star(n, 2, 0);
        for sigma in star.iter() {
            let (a, b) = (sigma.vertices()[1], sigma.vertices()[2]);
            let rest: Vec<u32> = (0..n as u32).filter(|&v| v != a && v != b).collect();
            let c = partition_hypercut(n, &[rest, vec![a], vec![b]]).unwrap();
            assert_eq!(c.cut().intersection(&star).iter().collect::<Vec<_>>(), vec![sigma]);
        }
    }

    proptest! {
        #[test]
        fn inducer_link_round_trip(bits in proptest::collection::vec(any::<bool>(), 21), v in 0u32..7) {
            let faces = SimplexSet::complete(7, 1);
            let g = SimplexSet::from_simplices(7, 1, faces.iter().zip(&bits).filter(|(_, &b)| b).map(|(s, _)| s.clone())).unwrap();
            let b = coboundary_from_inducer(&g).unwrap();
            prop_assert!(is_coboundary(&b.cut).unwrap());
            let back = coboundary_from_inducer(&link_inducer(&b, v).unwrap()).unwrap();
            prop_assert_eq!(back.cut, b.cut);
        }

        #[test]
        fn random_circle_cuts_are_hypercuts(angles in proptest::collection::vec(0.0f64..(2.0 * PI), 6)) {
            let pts = PointSet::circle(&angles);
            match geometric_hypercut(&pts) {
                Ok(c) => {
                    prop_assert!(c.certified);
                    for i in 0..binomial(6, 4) {
                        let z = Simplex::from_colex(i, 3);
                        let hits = z.faces().filter(|(_, f)| c.cut().contains(f)).count();
                        prop_assert!(hits == 0 || hits == 2);
                    }
                }
                Err(Error::Degenerate(_)) | Err(Error::InvalidInput(_)) => {}
                Err(e) => prop_assert!(false, "{e}"),
            }
        }
    }
}
