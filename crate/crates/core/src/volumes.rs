//! Volume functions on `K_n^(d)`: the cycle triangle inequality, Euclidean
//! and lightest-cap volumes, cut volumes and distortion.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::complex::{binomial, enumerate_simple_cycles, is_connected, Simplex, SimplexSet, SimplexSpace, WeightedSimplexSet};
use crate::cuts::{is_hypercut, Hypercut, PointSet};
use crate::error::{Error, Result};
use crate::gf2::{BitVec, Gf2Matrix};
use crate::tolerance;

/// Nonnegative values on all d-simplices, indexed by colex rank.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawVolume", into = "RawVolume")]
pub struct VolumeFunction {
    n: usize,
    d: usize,
    values: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawVolume {
    n: usize,
    d: usize,
    values: Vec<f64>,
}

impl TryFrom<RawVolume> for VolumeFunction {
    type Error = Error;

    fn try_from(raw: RawVolume) -> Result<Self> {
        VolumeFunction::new(raw.n, raw.d, raw.values)
    }
}

impl From<VolumeFunction> for RawVolume {
    fn from(v: VolumeFunction) -> Self {
        RawVolume {
            n: v.n,
            d: v.d,
            values: v.values,
        }
    }
}

impl VolumeFunction {
    pub fn new(n: usize, d: usize, values: Vec<f64>) -> Result<Self> {
        let expected = binomial(n, d + 1);
        if values.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: values.len(),
            });
        }
        if let Some(x) = values.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
            return Err(Error::InvalidInput(format!("volume value {x} is not a nonnegative number")));
        }
        Ok(Self { n, d, values })
    }

    pub fn zero(n: usize, d: usize) -> Self {
        Self {
            n,
            d,
            values: vec![0.0; binomial(n, d + 1)],
        }
    }

    pub fn constant(n: usize, d: usize, c: f64) -> Self {
        Self {
            n,
            d,
            values: vec![c; binomial(n, d + 1)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, s: &Simplex) -> f64 {
        self.values[s.colex_index()]
    }

    pub fn support(&self) -> SimplexSet {
        let bits = BitVec::from_bools(&self.values.iter().map(|&x| x > 0.0).collect::<Vec<_>>());
        SimplexSet::from_indicator(self.n, self.d, &bits)
    }

    pub fn average(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            n: self.n,
            d: self.d,
            values: self.values.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &VolumeFunction) -> Result<Self> {
        same_shape(self, other)?;
        Ok(Self {
            n: self.n,
            d: self.d,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    /// `acc += c * indicator` for a set of simplices.
    pub fn add_indicator(&mut self, set: &SimplexSet, c: f64) {
        for s in set {
            self.values[s.colex_index()] += c;
        }
    }

    pub fn max_abs_diff(&self, other: &VolumeFunction) -> Result<f64> {
        same_shape(self, other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

fn same_shape(a: &VolumeFunction, b: &VolumeFunction) -> Result<()> {
    if (a.n, a.d) != (b.n, b.d) {
        return Err(Error::InvalidInput(format!(
            "volumes live on K_{}^({}) and K_{}^({})",
            a.n, a.d, b.n, b.d
        )));
    }
    Ok(())
}

/// A cycle and one of its simplices heavier than the rest of the cycle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub cycle: SimplexSet,
    pub sigma: Simplex,
    pub excess: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VolumeCheck {
    pub holds: bool,
    pub cycles_checked: usize,
    pub witness: Option<Violation>,
}

/// Default node budget for cycle and cap searches.
pub const DEFAULT_SEARCH_NODES: usize = 20_000_000;

/// Checks the triangle inequality `Σ_{Z-σ} v ≥ v(σ)` on every simple cycle
/// with at most `cycle_size_bound` simplices.
///
/// Every cycle is a disjoint union of simple cycles, so with an unbounded
/// size this is the full condition. With a bound it is a partial check:
/// short cycles do not imply the long ones.
pub fn check_volume(v: &VolumeFunction, cycle_size_bound: usize, max_nodes: usize) -> Result<VolumeCheck> {
    let space = SimplexSpace::new(v.n, v.d)?;
    let cycles = enumerate_simple_cycles(&space, cycle_size_bound, max_nodes)?;
    Ok(check_volume_on(v, &cycles))
}

/// [`check_volume`] against a precomputed list of cycles (as indicators).
pub fn check_volume_on(v: &VolumeFunction, cycles: &[BitVec]) -> VolumeCheck {
    for z in cycles {
        let total: f64 = z.iter_ones().map(|i| v.values[i]).sum();
        let heaviest = z
            .iter_ones()
            .max_by(|&a, &b| v.values[a].total_cmp(&v.values[b]))
            .expect("cycles are nonempty");
        let excess = 2.0 * v.values[heaviest] - total;
        if excess > tolerance::COMBINATORIAL_EVAL * total.max(1.0) {
            return VolumeCheck {
                holds: false,
                cycles_checked: cycles.len(),
                witness: Some(Violation {
                    cycle: SimplexSet::from_indicator(v.n, v.d, z),
                    sigma: Simplex::from_colex(heaviest, v.d),
                    excess,
                }),
            };
        }
    }
    VolumeCheck {
        holds: true,
        cycles_checked: cycles.len(),
        witness: None,
    }
}

/// `vol(σ) = sqrt(det G) / d!` where `G` is the Gram matrix of the edge
/// vectors from the first vertex of σ.
pub fn euclidean_volume(points: &PointSet, d: usize) -> Result<VolumeFunction> {
    points.validate()?;
    let n = points.len();
    if d == 0 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    if points.dim < d {
        return Err(Error::InvalidInput(format!(
            "points in R^{} cannot carry {d}-volume",
            points.dim
        )));
    }
    if n < d + 1 {
        return Err(Error::InvalidInput(format!("{n} points cannot span a {d}-simplex")));
    }
    let factorial: f64 = (1..=d).map(|i| i as f64).product();
    let values = (0..binomial(n, d + 1))
        .map(|i| {
            let s = Simplex::from_colex(i, d);
            simplex_volume(&s.vertices().iter().map(|&v| points.points[v as usize].as_slice()).collect::<Vec<_>>())
                / factorial
        })
        .collect();
    VolumeFunction::new(n, d, values)
}

/// `sqrt(det G)` for the edge vectors of a simplex; `d!` times its volume.
pub(crate) fn simplex_volume(vertices: &[&[f64]]) -> f64 {
    let base = vertices[0];
    let edges: Vec<Vec<f64>> = vertices[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let k = edges.len();
    let gram = DMatrix::from_fn(k, k, |i, j| edges[i].iter().zip(&edges[j]).map(|(a, b)| a * b).sum::<f64>());
    let det = gram.full_piv_lu().determinant();
    // Gram determinants are nonnegative; tiny negatives are rounding noise.
    if det < tolerance::GRAM_CLAMP {
        0.0
    } else {
        det.sqrt()
    }
}

/// 1 on the hypercut, 0 elsewhere.
pub fn cut_volume(c: &Hypercut) -> Result<VolumeFunction> {
    if !c.certified {
        return Err(Error::InvalidInput("cut volume needs a certified hypercut".into()));
    }
    if c.is_empty() {
        return Err(Error::InvalidInput("hypercuts are nonempty".into()));
    }
    let mut v = VolumeFunction::zero(c.cut().n(), c.cut().d());
    v.add_indicator(c.cut(), 1.0);
    Ok(v)
}

/// `v(σ) = min Σ_{D} w` over caps `D ⊆ k` with `∂D = ∂σ`.
///
/// Shortest paths for graphs. For `d ≥ 2` each value is an exact
/// branch-and-bound over the solutions of `M_d x = ∂σ` supported on `k`;
/// the search fails with [`Error::GuardExceeded`] after `max_nodes` nodes
/// per simplex.
pub fn lightest_cap_volume(k: &WeightedSimplexSet, max_nodes: usize) -> Result<VolumeFunction> {
    let (n, d) = (k.set.n(), k.set.d());
    if !is_connected(&k.set)? {
        return Err(Error::NotConnected);
    }
    if d == 1 {
        return shortest_path_volume(k);
    }
    let space = SimplexSpace::new(n, d)?;
    let members: Vec<usize> = k.set.iter().map(Simplex::colex_index).collect();
    let weights = &k.weights;
    let columns: Vec<BitVec> = members.iter().map(|&i| space.column(i).clone()).collect();
    let a = Gf2Matrix::from_columns(space.num_faces(), &columns)?;
    let kernel = a.kernel();
    let (_, pivots) = a.rref();
    let free: Vec<usize> = kernel
        .iter()
        .map(|kv| {
            kv.iter_ones()
                .find(|j| !pivots.contains(j))
                .expect("kernel vectors carry their free variable")
        })
        .collect();
    // A pivot's value is fixed once every free variable touching it is.
    let mut settled_after = vec![Vec::new(); free.len() + 1];
    for &p in &pivots {
        let last = kernel
            .iter()
            .enumerate()
            .filter(|(_, kv)| kv.get(p))
            .map(|(t, _)| t + 1)
            .max()
            .unwrap_or(0);
        settled_after[last].push(p);
    }
    let search = CapSearch {
        weights,
        kernel: &kernel,
        free: &free,
        settled_after: &settled_after,
        max_nodes,
    };
    let mut values = Vec::with_capacity(space.num_simplices());
    for sigma in 0..space.num_simplices() {
        let x0 = a
            .solve(space.column(sigma))?
            .ok_or(Error::NotConnected)?;
        let mut best = f64::INFINITY;
        if let Some(pos) = members.iter().position(|&m| m == sigma) {
            best = weights[pos];
        }
        values.push(search.run(x0, best)?);
    }
    VolumeFunction::new(n, d, values)
}

struct CapSearch<'a> {
    weights: &'a [f64],
    kernel: &'a [BitVec],
    free: &'a [usize],
    settled_after: &'a [Vec<usize>],
    max_nodes: usize,
}

impl CapSearch<'_> {
    fn run(&self, x0: BitVec, upper: f64) -> Result<f64> {
        let mut best = upper;
        let mut nodes = 0usize;
        let settled: f64 = self.settled_after[0]
            .iter()
            .filter(|&&p| x0.get(p))
            .map(|&p| self.weights[p])
            .sum();
        self.visit(0, x0, settled, &mut best, &mut nodes)?;
        Ok(best)
    }

    fn visit(&self, t: usize, x: BitVec, cost: f64, best: &mut f64, nodes: &mut usize) -> Result<()> {
        *nodes += 1;
        if *nodes > self.max_nodes {
            return Err(Error::GuardExceeded {
                what: "cap search nodes".into(),
                limit: self.max_nodes,
            });
        }
        if cost >= *best {
            return Ok(());
        }
        if t == self.free.len() {
            *best = cost;
            return Ok(());
        }
        let f = self.free[t];
        let settle = |x: &BitVec| -> f64 {
            self.settled_after[t + 1]
                .iter()
                .filter(|&&p| x.get(p))
                .map(|&p| self.weights[p])
                .sum()
        };
        let mut flipped = x.clone();
        flipped.xor_assign(&self.kernel[t]);
        let keep = cost + settle(&x);
        let flip = cost + self.weights[f] + settle(&flipped);
        if keep <= flip {
            self.visit(t + 1, x, keep, best, nodes)?;
            self.visit(t + 1, flipped, flip, best, nodes)
        } else {
            self.visit(t + 1, flipped, flip, best, nodes)?;
            self.visit(t + 1, x, keep, best, nodes)
        }
    }
}

fn shortest_path_volume(k: &WeightedSimplexSet) -> Result<VolumeFunction> {
    let n = k.set.n();
    let mut dist = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in dist.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for (e, w) in k.iter() {
        let (a, b) = (e.vertices()[0] as usize, e.vertices()[1] as usize);
        dist[a][b] = dist[a][b].min(w);
        dist[b][a] = dist[a][b];
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = dist[i][m] + dist[m][j];
                if via < dist[i][j] {
                    dist[i][j] = via;
                }
            }
        }
    }
    let values = (0..binomial(n, 2))
        .map(|i| {
            let e = Simplex::from_colex(i, 1);
            dist[e.vertices()[0] as usize][e.vertices()[1] as usize]
        })
        .collect();
    VolumeFunction::new(n, 1, values)
}

/// A 0/1 volume is extremal exactly when its support is a hypercut.
pub fn is_extremal_01(v: &VolumeFunction) -> Result<bool> {
    if let Some(x) = v.values.iter().find(|&&x| x != 0.0 && x != 1.0) {
        return Err(Error::InvalidInput(format!("value {x} is not 0 or 1")));
    }
    is_hypercut(&v.support())
}

/// `max v1/v2 · max v2/v1`, skipping simplices where both vanish. Infinite
/// when exactly one of the two vanishes somewhere.
pub fn distortion(v1: &VolumeFunction, v2: &VolumeFunction) -> Result<f64> {
    same_shape(v1, v2)?;
    let (mut up, mut down) = (0.0f64, 0.0f64);
    let mut any = false;
    for (&a, &b) in v1.values.iter().zip(&v2.values) {
        match (a > 0.0, b > 0.0) {
            (false, false) => {}
            (true, true) => {
                up = up.max(a / b);
                down = down.max(b / a);
                any = true;
            }
            _ => return Ok(f64::INFINITY),
        }
    }
    Ok(if any { up * down } else { 1.0 })
}
