//! ℓ₁ volumes as nonnegative combinations of cut volumes, and the signed
//! square-root factorizations consumed by the spectral sparsifier.

use std::collections::HashMap;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::complex::{binomial, is_hypertree, real_boundary, Simplex, SimplexSet, SimplexSpace, WeightedSimplexSet};
use crate::cuts::{fundamental_hypercut, geometric_cut_indicator, is_hypercut, PointSet};
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::tolerance;
use crate::volumes::{distortion, VolumeFunction};

/// One weighted cut. `center` is set for geometric cuts: the cut is then the
/// set of simplices whose image contains it.
#[derive(Clone, Debug, PartialEq)]
pub struct CutTerm {
    pub cut: SimplexSet,
    pub lambda: f64,
    pub center: Option<Vec<f64>>,
}

/// `Σ λ_C · 1_C` with `λ_C > 0`. `points` carries the realization of
/// geometric terms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDecomposition", into = "RawDecomposition")]
pub struct CutDecomposition {
    pub n: usize,
    pub d: usize,
    pub terms: Vec<CutTerm>,
    pub points: Option<PointSet>,
}

#[derive(Serialize, Deserialize)]
struct RawTerm {
    cut: Vec<Simplex>,
    lambda: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    center: Option<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct RawDecomposition {
    n: usize,
    d: usize,
    terms: Vec<RawTerm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    points: Option<PointSet>,
}

impl TryFrom<RawDecomposition> for CutDecomposition {
    type Error = Error;

    fn try_from(raw: RawDecomposition) -> Result<Self> {
        let terms = raw
            .terms
            .into_iter()
            .map(|t| {
                let len = t.cut.len();
                let cut = SimplexSet::from_simplices(raw.n, raw.d, t.cut)?;
                if cut.len() != len {
                    return Err(Error::InvalidInput("duplicate simplices in a cut".into()));
                }
                Ok(CutTerm {
                    cut,
                    lambda: t.lambda,
                    center: t.center,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let decomposition = CutDecomposition {
            n: raw.n,
            d: raw.d,
            terms,
            points: raw.points,
        };
        decomposition.validate()?;
        Ok(decomposition)
    }
}

impl From<CutDecomposition> for RawDecomposition {
    fn from(c: CutDecomposition) -> Self {
        RawDecomposition {
            n: c.n,
            d: c.d,
            terms: c
                .terms
                .into_iter()
                .map(|t| RawTerm {
                    cut: t.cut.iter().cloned().collect(),
                    lambda: t.lambda,
                    center: t.center,
                })
                .collect(),
            points: c.points,
        }
    }
}

impl CutDecomposition {
    pub fn empty(n: usize, d: usize) -> Self {
        Self {
            n,
            d,
            terms: Vec::new(),
            points: None,
        }
    }

    /// Positive finite weights, nonempty cuts, consistent provenance.
    pub fn validate(&self) -> Result<()> {
        for (i, t) in self.terms.iter().enumerate() {
            if !(t.lambda.is_finite() && t.lambda > 0.0) {
                return Err(Error::InvalidInput(format!("term {i} has weight {}", t.lambda)));
            }
            if t.cut.is_empty() {
                return Err(Error::InvalidInput(format!("term {i} has an empty cut")));
            }
            if (t.cut.n(), t.cut.d()) != (self.n, self.d) {
                return Err(Error::InvalidInput(format!("term {i} lives in another complex")));
            }
            if let Some(c) = &t.center {
                if self.points.as_ref().map(|p| p.dim) != Some(c.len()) {
                    return Err(Error::InvalidInput(format!("term {i} has a center but no matching points")));
                }
            }
        }
        if let Some(p) = &self.points {
            p.validate()?;
            if p.len() != self.n || p.dim != self.d {
                return Err(Error::InvalidInput(format!(
                    "points must be {} vectors in R^{}",
                    self.n, self.d
                )));
            }
        }
        Ok(())
    }

    pub fn cut_dimension(&self) -> usize {
        self.terms.len()
    }

    pub fn total_weight(&self) -> f64 {
        self.terms.iter().map(|t| t.lambda).sum()
    }

    /// `Σ λ_C · cut_volume(C)`.
    pub fn evaluate(&self) -> VolumeFunction {
        let mut v = VolumeFunction::zero(self.n, self.d);
        for t in &self.terms {
            v.add_indicator(&t.cut, t.lambda);
        }
        v
    }

    /// Runs the hypercut test on every term.
    pub fn verify_hypercuts(&self) -> Result<bool> {
        for t in &self.terms {
            if !is_hypercut(&t.cut)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Keeps the terms at `indices` with new weights; zero weights drop.
    pub fn reweighted(&self, indices: &[usize], weights: &[f64]) -> Self {
        Self {
            n: self.n,
            d: self.d,
            terms: indices
                .iter()
                .zip(weights)
                .filter(|(_, &w)| w > 0.0)
                .map(|(&i, &w)| CutTerm {
                    lambda: w,
                    ..self.terms[i].clone()
                })
                .collect(),
            points: self.points.clone(),
        }
    }
}

/// Sum over tree simplices of `w(σ)` times the fundamental hypercut of σ.
pub fn hypertree_decomposition(t: &WeightedSimplexSet) -> Result<CutDecomposition> {
    if !is_hypertree(&t.set)? {
        return Err(Error::NotHypertree);
    }
    let mut out = CutDecomposition::empty(t.set.n(), t.set.d());
    for (sigma, w) in t.iter() {
        if w > 0.0 {
            out.terms.push(CutTerm {
                cut: fundamental_hypercut(&t.set, sigma)?.co.cut,
                lambda: w,
                center: None,
            });
        }
    }
    Ok(out)
}

/// Minimum-weight hypertree of the support (matroid greedy, ties by colex
/// index) and its tree decomposition, with the distortion it achieves.
pub fn mst_approximation(v: &VolumeFunction) -> Result<(CutDecomposition, f64)> {
    let space = SimplexSpace::new(v.n(), v.d())?;
    let mut order: Vec<usize> = (0..space.num_simplices()).filter(|&i| v.values()[i] > 0.0).collect();
    order.sort_by(|&a, &b| v.values()[a].total_cmp(&v.values()[b]).then(a.cmp(&b)));
    let chosen = space.greedy_acyclic(order);
    if chosen.len() < space.full_rank() {
        return Err(Error::NotConnected);
    }
    let tree = SimplexSet::from_indicator(v.n(), v.d(), &BitVec::from_indices(space.num_simplices(), chosen));
    let weights = tree.iter().map(|s| v.get(s)).collect();
    let decomposition = hypertree_decomposition(&WeightedSimplexSet::new(tree, weights)?)?;
    let achieved = distortion(v, &decomposition.evaluate())?;
    Ok((decomposition, achieved))
}

/// Edge cut `E(A, Ā)` of `K_n` for a side given as a membership mask.
pub fn bipartition_cut(side: &[bool]) -> SimplexSet {
    let n = side.len();
    let mut bits = BitVec::zeros(binomial(n, 2));
    for i in 0..bits.len() {
        let e = Simplex::from_colex(i, 1);
        if side[e.vertices()[0] as usize] != side[e.vertices()[1] as usize] {
            bits.set(i, true);
        }
    }
    SimplexSet::from_indicator(n, 1, &bits)
}

/// Side of a graph cut `E(A, Ā)` of `K_n` containing vertex 0.
pub fn cut_side(cut: &SimplexSet) -> Vec<bool> {
    (0..cut.n() as u32)
        .map(|v| v == 0 || !cut.contains(&Simplex::new(vec![0, v]).expect("0 < v")))
        .collect()
}

/// Threshold-cut decomposition of the ℓ₁ metric on the rows of `coords`.
/// Identical cuts from different coordinates are merged.
pub fn l1_metric_to_cuts(coords: &[Vec<f64>]) -> Result<CutDecomposition> {
    let n = coords.len();
    if n < 2 {
        return Err(Error::InvalidInput("need at least two points".into()));
    }
    let m = coords[0].len();
    if let Some(row) = coords.iter().find(|r| r.len() != m) {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: row.len(),
        });
    }
    if coords.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("non-finite coordinate".into()));
    }
    let mut out = CutDecomposition::empty(n, 1);
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    for j in 0..m {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| coords[a][j].total_cmp(&coords[b][j]));
        for w in 1..n {
            let gap = coords[order[w]][j] - coords[order[w - 1]][j];
            if gap <= 0.0 {
                continue;
            }
            let mut side = vec![false; n];
            for &i in &order[..w] {
                side[i] = true;
            }
            let cut = bipartition_cut(&side);
            match seen.get(&cut.indices()) {
                Some(&t) => out.terms[t].lambda += gap,
                None => {
                    seen.insert(cut.indices(), out.terms.len());
                    out.terms.push(CutTerm {
                        cut,
                        lambda: gap,
                        center: None,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// A bounded face of the line arrangement, as a convex polygon.
#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    pub polygon: Vec<[f64; 2]>,
    pub centroid: [f64; 2],
    pub area: f64,
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

pub(crate) fn planar(points: &PointSet) -> Result<Vec<[f64; 2]>> {
    points.validate()?;
    if points.dim != 2 {
        return Err(Error::InvalidInput(format!(
            "planar input required, got points in R^{}",
            points.dim
        )));
    }
    Ok(points.points.iter().map(|p| [p[0], p[1]]).collect())
}

/// Rejects repeated points and triples that are collinear within tolerance
/// (sine of the angle at any vertex).
pub fn check_general_position(pts: &[[f64; 2]]) -> Result<()> {
    let n = pts.len();
    for i in 0..n {
        for j in i + 1..n {
            let dij = ((pts[j][0] - pts[i][0]).powi(2) + (pts[j][1] - pts[i][1]).powi(2)).sqrt();
            if dij == 0.0 {
                return Err(Error::Degenerate(format!("points {i} and {j} coincide")));
            }
            for k in j + 1..n {
                let dik = ((pts[k][0] - pts[i][0]).powi(2) + (pts[k][1] - pts[i][1]).powi(2)).sqrt();
                let djk = ((pts[k][0] - pts[j][0]).powi(2) + (pts[k][1] - pts[j][1]).powi(2)).sqrt();
                let twice_area = cross(pts[i], pts[j], pts[k]).abs();
                let longest = dij.max(dik).max(djk);
                let shortest = dij.min(dik).min(djk);
                // Largest sine among the three angles is 2A / (product of the two shorter sides).
                if twice_area < tolerance::COLLINEAR * longest * shortest.max(f64::MIN_POSITIVE) {
                    return Err(Error::Degenerate(format!("points {i}, {j}, {k} are collinear")));
                }
            }
        }
    }
    Ok(())
}

fn polygon_area_centroid(poly: &[[f64; 2]]) -> (f64, [f64; 2]) {
    let mut a = 0.0;
    let (mut cx, mut cy) = (0.0, 0.0);
    let o = poly[0];
    for w in 1..poly.len() - 1 {
        let (p, q) = (poly[w], poly[w + 1]);
        let t = cross(o, p, q);
        a += t;
        cx += t * (o[0] + p[0] + q[0]);
        cy += t * (o[1] + p[1] + q[1]);
    }
    if a == 0.0 {
        return (0.0, o);
    }
    (a / 2.0, [cx / (3.0 * a), cy / (3.0 * a)])
}

/// Splits a convex counterclockwise polygon by the line through `a` and `b`.
fn split_polygon(poly: &[[f64; 2]], a: [f64; 2], b: [f64; 2], eps: f64) -> (Vec<[f64; 2]>, Vec<[f64; 2]>) {
    let len = ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt();
    let side: Vec<f64> = poly.iter().map(|&p| cross(a, b, p) / len).collect();
    if side.iter().all(|&s| s >= -eps) || side.iter().all(|&s| s <= eps) {
        return (poly.to_vec(), Vec::new());
    }
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for i in 0..poly.len() {
        let j = (i + 1) % poly.len();
        let (si, sj) = (side[i], side[j]);
        if si > eps {
            left.push(poly[i]);
        } else if si < -eps {
            right.push(poly[i]);
        } else {
            left.push(poly[i]);
            right.push(poly[i]);
        }
        if (si > eps && sj < -eps) || (si < -eps && sj > eps) {
            let t = si / (si - sj);
            let p = [
                poly[i][0] + t * (poly[j][0] - poly[i][0]),
                poly[i][1] + t * (poly[j][1] - poly[i][1]),
            ];
            left.push(p);
            right.push(p);
        }
    }
    (left, right)
}

/// Bounded cells of the arrangement of all lines through pairs of points.
///
/// The plane is clipped to a box strictly containing every vertex of the
/// arrangement; cells reaching the box are the unbounded ones and are
/// dropped.
pub fn bounded_cells(points: &PointSet) -> Result<Vec<Cell>> {
    let pts = planar(points)?;
    check_general_position(&pts)?;
    let n = pts.len();
    if n < 3 {
        return Ok(Vec::new());
    }
    let mut lines = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            lines.push((pts[i], pts[j]));
        }
    }
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    let mut include = |p: [f64; 2]| {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    };
    for &p in &pts {
        include(p);
    }
    for (x, &(a, b)) in lines.iter().enumerate() {
        for &(c, d) in &lines[x + 1..] {
            let denom = (b[0] - a[0]) * (d[1] - c[1]) - (b[1] - a[1]) * (d[0] - c[0]);
            // Parallel up to rounding: a spurious far-away crossing would blow up the box.
            let scale = (b[0] - a[0]).hypot(b[1] - a[1]) * (d[0] - c[0]).hypot(d[1] - c[1]);
            if denom.abs() <= 1e-12 * scale {
                continue;
            }
            let t = ((c[0] - a[0]) * (d[1] - c[1]) - (c[1] - a[1]) * (d[0] - c[0])) / denom;
            include([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]);
        }
    }
    let margin = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1.0);
    let (lo, hi) = ([lo[0] - margin, lo[1] - margin], [hi[0] + margin, hi[1] + margin]);
    let eps = 1e-12 * (hi[0] - lo[0]).max(hi[1] - lo[1]);
    let mut cells = vec![vec![lo, [hi[0], lo[1]], hi, [lo[0], hi[1]]]];
    for &(a, b) in &lines {
        let mut next = Vec::with_capacity(cells.len() * 2);
        for poly in cells {
            let (l, r) = split_polygon(&poly, a, b, eps);
            for piece in [l, r] {
                if piece.len() >= 3 && polygon_area_centroid(&piece).0 > 0.0 {
                    next.push(piece);
                }
            }
        }
        cells = next;
    }
    let touches_box = |p: &[f64; 2]| {
        (p[0] - lo[0]).abs() < eps || (p[0] - hi[0]).abs() < eps || (p[1] - lo[1]).abs() < eps || (p[1] - hi[1]).abs() < eps
    };
    Ok(cells
        .into_iter()
        .filter(|poly| !poly.iter().any(touches_box))
        .map(|polygon| {
            let (area, centroid) = polygon_area_centroid(&polygon);
            Cell {
                polygon,
                centroid,
                area,
            }
        })
        .collect())
}

/// Area-weighted geometric cuts, one per bounded arrangement cell whose
/// centroid lies in some triangle. Evaluates to the Euclidean 2-volume.
pub fn euclidean_to_geometric_cuts_2d(points: &PointSet) -> Result<CutDecomposition> {
    let n = points.len();
    let cells = bounded_cells(points)?;
    let mut out = CutDecomposition {
        n,
        d: 2,
        terms: Vec::new(),
        points: Some(points.clone()),
    };
    for cell in cells {
        let center = cell.centroid.to_vec();
        let cut = geometric_cut_indicator(points, &center)?;
        if cut.is_zero() {
            continue;
        }
        out.terms.push(CutTerm {
            cut: SimplexSet::from_indicator(n, 2, &cut),
            lambda: cell.area,
            center: Some(center),
        });
    }
    Ok(out)
}

/// Signed angle at `p` from `a` to `b`, in `(-π, π]`.
fn signed_angle(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let (u, v) = ([a[0] - p[0], a[1] - p[1]], [b[0] - p[0], b[1] - p[1]]);
    (u[0] * v[1] - u[1] * v[0]).atan2(u[0] * v[0] + u[1] * v[1])
}

/// A real (d-1)-cochain `x` with `|xᵀ M_d|` equal to the indicator of the
/// geometric cut of `center`. Supported for `d ≤ 2`: the side indicator on
/// a line, and normalized angles seen from the center in the plane.
pub fn exact_representation(points: &PointSet, center: &[f64]) -> Result<Vec<f64>> {
    points.validate()?;
    if center.len() != points.dim {
        return Err(Error::DimensionMismatch {
            expected: points.dim,
            found: center.len(),
        });
    }
    match points.dim {
        1 => Ok(points.points.iter().map(|p| if p[0] > center[0] { 1.0 } else { 0.0 }).collect()),
        2 => {
            let pts = planar(points)?;
            let c = [center[0], center[1]];
            Ok((0..binomial(pts.len(), 2))
                .map(|i| {
                    let e = Simplex::from_colex(i, 1);
                    let (a, b) = (pts[e.vertices()[0] as usize], pts[e.vertices()[1] as usize]);
                    signed_angle(c, a, b) / (2.0 * PI)
                })
                .collect())
        }
        d => Err(Error::InvalidInput(format!(
            "exact representations are built for d <= 2, got d = {d}"
        ))),
    }
}

/// A 1-cochain `x` with `|xᵀ M_2|` equal to the Euclidean area of every
/// triangle: `x_ab` is the signed area of `(0, s_a, s_b)`.
pub fn euclidean_exact_representation(points: &PointSet) -> Result<Vec<f64>> {
    let pts = planar(points)?;
    Ok((0..binomial(pts.len(), 2))
        .map(|i| {
            let e = Simplex::from_colex(i, 1);
            cross([0.0, 0.0], pts[e.vertices()[0] as usize], pts[e.vertices()[1] as usize]) / 2.0
        })
        .collect())
}

/// Rewrites a (d-1)-cochain onto the faces avoiding the last vertex without
/// changing `xᵀ M_d`. Those faces come first in colex order, so the result
/// has length `C(n-1, d)`.
pub fn gauge_reduce(n: usize, d: usize, x: &[f64]) -> Vec<f64> {
    let k = binomial(n - 1, d);
    let v = (n - 1) as u32;
    let mut out = x[..k].to_vec();
    if d == 1 {
        // Rows of M_1 sum to zero.
        for xi in &mut out {
            *xi -= x[n - 1];
        }
        return out;
    }
    // For κ avoiding v, the row of κ∪{v} is a signed sum of the rows of the
    // other cofaces of κ, because M_{d-1} M_d = 0.
    let last_sign = if (d - 1).is_multiple_of(2) { 1.0 } else { -1.0 };
    for (t, xt) in out.iter_mut().enumerate() {
        let tau = Simplex::from_colex(t, d - 1);
        for (i, kappa) in tau.faces() {
            let with_v = kappa.with_vertex(v).expect("v is new").colex_index();
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            *xt -= x[with_v] * sign / last_sign;
        }
    }
    out
}

/// Rows `b_C` and columns `x_f` with `(b_C · x_f)² = M(C, f)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SqrtFactorization {
    /// `|C| × k`, one row per cut.
    pub b: DMatrix<f64>,
    /// `k × |F|`, one column per simplex.
    pub x: DMatrix<f64>,
}

impl SqrtFactorization {
    pub fn k(&self) -> usize {
        self.b.ncols()
    }

    pub fn squared_product(&self) -> DMatrix<f64> {
        (&self.b * &self.x).map(|v| v * v)
    }

    /// Largest entrywise gap between `(BX)∘(BX)` and `membership`.
    pub fn residual(&self, membership: &DMatrix<f64>) -> f64 {
        (self.squared_product() - membership).amax()
    }

    /// Smallest `D >= 1` with `M <= (BX)∘(BX) <= D·M` entrywise, up to
    /// `tolerance::FACTORIZATION`; `None` when no such `D` exists.
    pub fn rigidity(&self, membership: &DMatrix<f64>) -> Option<f64> {
        let y = self.squared_product();
        if y.shape() != membership.shape() {
            return None;
        }
        let tol = tolerance::FACTORIZATION;
        let mut d = 1.0f64;
        for (&yv, &m) in y.iter().zip(membership.iter()) {
            if yv < m - tol || (m <= tol && yv > tol) {
                return None;
            }
            if m > tol && yv > m + tol {
                d = d.max(yv / m);
            }
        }
        Some(d)
    }
}

/// The 0/1 matrix `M(C, σ)` of a decomposition, one row per term.
pub fn membership_matrix(c: &CutDecomposition) -> DMatrix<f64> {
    let cols = binomial(c.n, c.d + 1);
    let mut m = DMatrix::zeros(c.terms.len(), cols);
    for (r, t) in c.terms.iter().enumerate() {
        for s in &t.cut {
            m[(r, s.colex_index())] = 1.0;
        }
    }
    m
}

/// Graph cuts: `B(C, v) = ±1` by side, `X(v, e) = ±1/2` at the endpoints.
pub fn sqrt_factorization_cuts_d1(c: &CutDecomposition) -> Result<SqrtFactorization> {
    if c.d != 1 {
        return Err(Error::InvalidInput("graph-cut factorization needs d = 1".into()));
    }
    let n = c.n;
    let mut b = DMatrix::zeros(c.terms.len(), n);
    for (r, t) in c.terms.iter().enumerate() {
        for (v, &inside) in cut_side(&t.cut).iter().enumerate() {
            b[(r, v)] = if inside { 1.0 } else { -1.0 };
        }
    }
    let mut x = DMatrix::zeros(n, binomial(n, 2));
    for j in 0..binomial(n, 2) {
        let e = Simplex::from_colex(j, 1);
        x[(e.vertices()[0] as usize, j)] = 0.5;
        x[(e.vertices()[1] as usize, j)] = -0.5;
    }
    Ok(SqrtFactorization { b, x })
}

/// Geometric cuts: rows are gauge-reduced exact representations and
/// `X` is the real boundary matrix on faces avoiding the last vertex, so
/// `k = C(n-1, d)`.
pub fn sqrt_factorization_geometric(c: &CutDecomposition) -> Result<SqrtFactorization> {
    let points = c
        .points
        .as_ref()
        .ok_or_else(|| Error::MissingProvenance("decomposition has no point realization".into()))?;
    let k = binomial(c.n - 1, c.d);
    let mut b = DMatrix::zeros(c.terms.len(), k);
    for (r, t) in c.terms.iter().enumerate() {
        let center = t
            .center
            .as_ref()
            .ok_or_else(|| Error::MissingProvenance(format!("term {r} has no center")))?;
        let x = gauge_reduce(c.n, c.d, &exact_representation(points, center)?);
        for (j, v) in x.into_iter().enumerate() {
            b[(r, j)] = v;
        }
    }
    let full = real_boundary(c.n, c.d)?.to_dense();
    let x = full.rows(0, k).into_owned();
    Ok(SqrtFactorization { b, x })
}
