//! Weighted planar sampling sets whose mass in every triangle over a point
//! set approximates its area.

use serde::{Deserialize, Serialize};

use crate::complex::{binomial, Simplex, SimplexSet};
use crate::cuts::{geometric_cut_indicator, PointSet};
use crate::error::{Error, Result};
use crate::l1cone::{bounded_cells, check_general_position, planar, sqrt_factorization_geometric, CutDecomposition, CutTerm};
use crate::sparsify::{sparsify_spectral, ColumnSystem, SparsifyReport, SpectralMode};
use crate::volumes::VolumeFunction;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPointSet")]
pub struct WeightedPointSet {
    pub points: Vec<[f64; 2]>,
    pub weights: Vec<f64>,
}

#[derive(Deserialize)]
struct RawPointSet {
    points: Vec<[f64; 2]>,
    weights: Vec<f64>,
}

impl TryFrom<RawPointSet> for WeightedPointSet {
    type Error = Error;

    fn try_from(raw: RawPointSet) -> Result<Self> {
        Self::new(raw.points, raw.weights)
    }
}

impl WeightedPointSet {
    pub fn new(points: Vec<[f64; 2]>, weights: Vec<f64>) -> Result<Self> {
        if points.len() != weights.len() {
            return Err(Error::DimensionMismatch {
                expected: points.len(),
                found: weights.len(),
            });
        }
        if points.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("non-finite sample point".into()));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidInput(format!("sample weight {w} is not positive")));
        }
        Ok(Self { points, weights })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Weight of the samples strictly inside the triangle `abc`.
    pub fn triangle_mass(&self, a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .filter(|(p, _)| strictly_inside_triangle(**p, a, b, c))
            .map(|(_, w)| w)
            .sum()
    }

    /// Weight of the samples strictly inside a simple polygon.
    pub fn polygon_mass(&self, polygon: &[[f64; 2]]) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .filter(|(p, _)| strictly_inside_polygon(**p, polygon))
            .map(|(_, w)| w)
            .sum()
    }

    /// Triangle masses over `s`, indexed like 2-simplices of `K_n`.
    pub fn mass_volume(&self, s: &PointSet) -> Result<VolumeFunction> {
        let pts = planar(s)?;
        let values = (0..binomial(pts.len(), 3))
            .map(|i| {
                let t = Simplex::from_colex(i, 2);
                let v = t.vertices();
                self.triangle_mass(pts[v[0] as usize], pts[v[1] as usize], pts[v[2] as usize])
            })
            .collect();
        VolumeFunction::new(pts.len(), 2, values)
    }
}

fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

fn strictly_inside_triangle(p: [f64; 2], a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> bool {
    let (x, y, z) = (orient(a, b, p), orient(b, c, p), orient(c, a, p));
    (x > 0.0 && y > 0.0 && z > 0.0) || (x < 0.0 && y < 0.0 && z < 0.0)
}

fn closed_triangle_contains(p: [f64; 2], a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> bool {
    let (x, y, z) = (orient(a, b, p), orient(b, c, p), orient(c, a, p));
    (x >= 0.0 && y >= 0.0 && z >= 0.0) || (x <= 0.0 && y <= 0.0 && z <= 0.0)
}

fn strictly_inside_polygon(p: [f64; 2], polygon: &[[f64; 2]]) -> bool {
    let n = polygon.len();
    let mut inside = false;
    for i in 0..n {
        let (a, b) = (polygon[i], polygon[(i + 1) % n]);
        if orient(a, b, p) == 0.0 && p[0] >= a[0].min(b[0]) && p[0] <= a[0].max(b[0]) && p[1] >= a[1].min(b[1]) && p[1] <= a[1].max(b[1]) {
            return false;
        }
        if (a[1] > p[1]) != (b[1] > p[1]) && p[0] < a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]) {
            inside = !inside;
        }
    }
    inside
}

/// Shoelace area, positive for counterclockwise order.
pub fn signed_polygon_area(polygon: &[[f64; 2]]) -> f64 {
    let n = polygon.len();
    (0..n)
        .map(|i| {
            let (a, b) = (polygon[i], polygon[(i + 1) % n]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum::<f64>()
        / 2.0
}

/// Ear-clipping triangulation of a simple polygon, as index triples.
pub fn triangulate(polygon: &[[f64; 2]]) -> Result<Vec<[usize; 3]>> {
    if polygon.len() < 3 {
        return Err(Error::InvalidInput("a polygon needs three vertices".into()));
    }
    let sign = signed_polygon_area(polygon).signum();
    if sign == 0.0 {
        return Err(Error::Degenerate("polygon has zero area".into()));
    }
    let mut idx: Vec<usize> = (0..polygon.len()).collect();
    let mut out = Vec::with_capacity(polygon.len() - 2);
    while idx.len() > 3 {
        let m = idx.len();
        let ear = (0..m).find(|&i| {
            let (a, b, c) = (idx[(i + m - 1) % m], idx[i], idx[(i + 1) % m]);
            let convex = orient(polygon[a], polygon[b], polygon[c]) * sign > 0.0;
            convex
                && idx
                    .iter()
                    .filter(|&&j| j != a && j != b && j != c)
                    .all(|&j| !closed_triangle_contains(polygon[j], polygon[a], polygon[b], polygon[c]))
        });
        let Some(i) = ear else {
            return Err(Error::Degenerate("polygon is not simple".into()));
        };
        out.push([idx[(i + m - 1) % m], idx[i], idx[(i + 1) % m]]);
        idx.remove(i);
    }
    out.push([idx[0], idx[1], idx[2]]);
    Ok(out)
}

/// One sample per bounded cell of the arrangement of lines through pairs
/// of `s`: the cell centroid, weighted by the cell area.
pub fn build_initial_sampling_set(s: &PointSet) -> Result<WeightedPointSet> {
    check_general_position(&planar(s)?)?;
    let cells = bounded_cells(s)?;
    WeightedPointSet::new(
        cells.iter().map(|c| c.centroid).collect(),
        cells.iter().map(|c| c.area).collect(),
    )
}

/// Geometric-cut decomposition of the area volume carried by `p0`. Samples
/// lying in no triangle carry no information and are left out.
pub fn sampling_decomposition(s: &PointSet, p0: &WeightedPointSet) -> Result<CutDecomposition> {
    let n = s.len();
    let mut dec = CutDecomposition {
        n,
        d: 2,
        terms: Vec::new(),
        points: Some(s.clone()),
    };
    for (p, &w) in p0.points.iter().zip(&p0.weights) {
        let cut = geometric_cut_indicator(s, p)?;
        if !cut.is_zero() {
            dec.terms.push(CutTerm {
                cut: SimplexSet::from_indicator(n, 2, &cut),
                lambda: w,
                center: Some(p.to_vec()),
            });
        }
    }
    Ok(dec)
}

/// Spectrally sparsified sampling set: a reweighted subset of `p0` whose
/// triangle masses stay within `1 ± ε` of those of `p0`.
pub fn sparsify_sampling_set(
    s: &PointSet,
    p0: &WeightedPointSet,
    epsilon: f64,
    seed: u64,
    mode: SpectralMode,
) -> Result<(WeightedPointSet, SparsifyReport)> {
    let dec = sampling_decomposition(s, p0)?;
    let sys = ColumnSystem::from_decomposition(&dec)?;
    let fac = sqrt_factorization_geometric(&dec)?;
    let report = sparsify_spectral(&sys, &fac, epsilon, seed, mode)?;
    let reduced = report.apply(&dec);
    let points = reduced
        .terms
        .iter()
        .map(|t| {
            let c = t.center.as_ref().expect("every term has a center");
            [c[0], c[1]]
        })
        .collect();
    let set = WeightedPointSet::new(points, reduced.terms.iter().map(|t| t.lambda).collect())?;
    Ok((set, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::real_boundary;
    use crate::l1cone::exact_representation;
    use crate::volumes::euclidean_volume;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_points(rng: &mut ChaCha8Rng, n: usize) -> PointSet {
        PointSet::new(2, (0..n).map(|_| vec![rng.random::<f64>(), rng.random::<f64>()]).collect()).unwrap()
    }

    fn shoelace(a: &[f64], b: &[f64], c: &[f64]) -> f64 {
        ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])).abs() / 2.0
    }

    fn check_triangles(s: &PointSet, p: &WeightedPointSet, rel: f64) -> bool {
        let mass = p.mass_volume(s).unwrap();
        SimplexSet::complete(s.len(), 2).iter().all(|t| {
            let v = t.vertices();
            let area = shoelace(&s.points[v[0] as usize], &s.points[v[1] as usize], &s.points[v[2] as usize]);
            (mass.get(t) - area).abs() <= rel * area
        })
    }

    #[test]
    fn three_points_give_one_cell() {
        let s = PointSet::new(2, vec![vec![0.0, 0.0], vec![4.0, 0.0], vec![0.0, 3.0]]).unwrap();
        let p0 = build_initial_sampling_set(&s).unwrap();
        assert_eq!(p0.len(), 1);
        assert!((p0.weights[0] - 6.0).abs() < 1e-12);
        let (p, _) = sparsify_sampling_set(&s, &p0, 0.3, 0, SpectralMode::default()).unwrap();
        assert_eq!(p, p0);
    }

    #[test]
    fn convex_quadrilateral_is_exact() {
        let s = PointSet::new(2, vec![vec![0.0, 0.0], vec![2.0, 0.1], vec![2.2, 1.9], vec![0.1, 1.5]]).unwrap();
        let p0 = build_initial_sampling_set(&s).unwrap();
        assert!(check_triangles(&s, &p0, 1e-9));
    }

    #[test]
    fn collinear_input_is_rejected() {
        let s = PointSet::new(2, vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![2.0, 0.0]]).unwrap();
        assert!(matches!(build_initial_sampling_set(&s), Err(Error::Degenerate(_))));
    }

    #[test]
    fn initial_set_matches_euclidean_areas() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..5 {
            let s = random_points(&mut rng, 6);
            let p0 = build_initial_sampling_set(&s).unwrap();
            assert!(check_triangles(&s, &p0, 1e-6));
            let e = euclidean_volume(&s, 2).unwrap();
            assert!(p0.mass_volume(&s).unwrap().max_abs_diff(&e).unwrap() < 1e-9);
        }
    }

    #[test]
    fn reduction_keeps_every_hull_sample_without_pressure() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = random_points(&mut rng, 5);
        let p0 = build_initial_sampling_set(&s).unwrap();
        let relevant = sampling_decomposition(&s, &p0).unwrap().cut_dimension();
        let (p, report) = sparsify_sampling_set(&s, &p0, 0.3, 0, SpectralMode::default()).unwrap();
        assert_eq!(p.len(), relevant);
        assert_eq!(report.max_rel_error, 0.0);
    }

    #[test]
    fn sparsified_sets_stay_in_band() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = random_points(&mut rng, 6);
        let p0 = build_initial_sampling_set(&s).unwrap();
        for mode in [SpectralMode::Sampled { c: 1.0 }, SpectralMode::Deterministic] {
            let (p, report) = sparsify_sampling_set(&s, &p0, 0.3, 4, mode).unwrap();
            assert!(p.len() <= p0.len());
            assert!(p.points.iter().all(|q| p0.points.contains(q)));
            if matches!(mode, SpectralMode::Deterministic) {
                assert!(check_triangles(&s, &p, 0.3), "{}", report.max_rel_error);
            }
        }
    }

    #[test]
    fn angle_representation_is_integral_on_cells() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let s = random_points(&mut rng, 5);
        let p0 = build_initial_sampling_set(&s).unwrap();
        let m = real_boundary(5, 2).unwrap();
        for p in &p0.points {
            for v in m.coboundary(&exact_representation(&s, p).unwrap()) {
                assert!(v.abs() < 1e-7 || (v.abs() - 1.0).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn polygon_mass_is_additive_over_triangulations() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let s = random_points(&mut rng, 7);
            let p0 = build_initial_sampling_set(&s).unwrap();
            let (p, _) = sparsify_sampling_set(&s, &p0, 0.5, 1, SpectralMode::default()).unwrap();
            // Star-shaped around the centroid, hence simple.
            let pts = planar(&s).unwrap();
            let c = pts.iter().fold([0.0, 0.0], |acc, q| [acc[0] + q[0] / 7.0, acc[1] + q[1] / 7.0]);
            let mut order: Vec<usize> = (0..7).collect();
            order.sort_by(|&a, &b| {
                let ta = (pts[a][1] - c[1]).atan2(pts[a][0] - c[0]);
                let tb = (pts[b][1] - c[1]).atan2(pts[b][0] - c[0]);
                ta.total_cmp(&tb)
            });
            let polygon: Vec<[f64; 2]> = order.iter().map(|&i| pts[i]).collect();
            let tris = triangulate(&polygon).unwrap();
            assert_eq!(tris.len(), 5);
            let area: f64 = tris.iter().map(|t| signed_polygon_area(&[polygon[t[0]], polygon[t[1]], polygon[t[2]]]).abs()).sum();
            assert!((area - signed_polygon_area(&polygon).abs()).abs() < 1e-12);
            for set in [&p0, &p] {
                let by_triangles: f64 = tris.iter().map(|t| set.triangle_mass(polygon[t[0]], polygon[t[1]], polygon[t[2]])).sum();
                assert!((set.polygon_mass(&polygon) - by_triangles).abs() <= 1e-9 * by_triangles.max(1.0));
            }
            assert!((p0.polygon_mass(&polygon) - area).abs() <= 1e-6 * area);
        }
    }

    #[test]
    fn ear_clipping_handles_reflex_vertices() {
        let l_shape = [[0.0, 0.0], [2.0, 0.0], [2.0, 1.0], [1.0, 1.0], [1.0, 2.0], [0.0, 2.0]];
        let tris = triangulate(&l_shape).unwrap();
        assert_eq!(tris.len(), 4);
        let area: f64 = tris.iter().map(|t| signed_polygon_area(&[l_shape[t[0]], l_shape[t[1]], l_shape[t[2]]]).abs()).sum();
        assert!((area - 3.0).abs() < 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let p = WeightedPointSet::new(vec![[0.1, 0.2], [0.3, -0.5]], vec![1.5, 0.25]).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<WeightedPointSet>(&json).unwrap(), p);
        assert!(serde_json::from_str::<WeightedPointSet>(r#"{"points":[[0,0]],"weights":[-1]}"#).is_err());
    }
}
