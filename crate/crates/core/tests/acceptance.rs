use std::time::Instant;

use hypervol::complex::{
    binomial, enumerate_simple_cycles, is_connected, SimplexSet, SimplexSpace, WeightedSimplexSet,
};
use hypervol::cuts::{
    decompose_coboundary, enumerate_coboundaries, enumerate_hypercuts, geometric_hypercut, is_2hypercut_via_link,
    is_hypercut, Coboundary, PointSet, DEFAULT_ENUMERATION_BITS,
};
use hypervol::discrepancy::{build_initial_sampling_set, sparsify_sampling_set};
use hypervol::l1cone::{hypertree_decomposition, l1_metric_to_cuts, mst_approximation, CutDecomposition};
use hypervol::randcx::{cycle_count_bound, cycle_vertex_bound_holds, random_complex, HypercutTable};
use hypervol::sparsify::{
    factorize, quadratic_form, sparsify_form, sparsify_spectral, sparsify_strength, ColumnSystem, SpectralMode,
    StrengthOptions,
};
use hypervol::volumes::{euclidean_volume, lightest_cap_volume, VolumeFunction, DEFAULT_SEARCH_NODES};
use hypervol::gf2::BitVec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn tetra_boundaries(n: usize) -> Vec<BitVec> {
    let space = SimplexSpace::new(n, 3).unwrap();
    (0..space.num_simplices()).map(|i| space.column(i).clone()).collect()
}

fn random_tree(rng: &mut ChaCha8Rng, n: usize, d: usize) -> WeightedSimplexSet {
    use rand::seq::SliceRandom;
    let space = SimplexSpace::new(n, d).unwrap();
    let mut order: Vec<usize> = (0..space.num_simplices()).collect();
    order.shuffle(rng);
    let chosen = space.greedy_acyclic(order);
    let t = SimplexSet::from_indicator(n, d, &BitVec::from_indices(space.num_simplices(), chosen));
    let w = (0..t.len()).map(|_| rng.random_range(0.0..3.0)).collect();
    WeightedSimplexSet::new(t, w).unwrap()
}

fn l1_points(rng: &mut ChaCha8Rng, n: usize, dim: usize) -> Vec<Vec<f64>> {
    (0..n).map(|_| (0..dim).map(|_| rng.random::<f64>()).collect()).collect()
}

fn combinatorial_core() -> Outcome {
    let mut problems = Vec::new();
    let mut pairs = 0usize;
    let mut decomposed = 0usize;
    let mut compared = 0usize;
    for n in 4..=6 {
        let d = 2;
        let cuts = enumerate_hypercuts(n, d, DEFAULT_ENUMERATION_BITS).unwrap();
        let boundaries = tetra_boundaries(n);
        for c in &cuts {
            let bits = c.cut().indicator();
            for z in &boundaries {
                pairs += 1;
                if bits.intersection_count(z) % 2 != 0 {
                    problems.push(format!("odd intersection for n={n}"));
                }
            }
        }
        let min = cuts.iter().map(|c| c.len()).min().unwrap();
        if min != n - d {
            problems.push(format!("n={n}: minimum hypercut {min}, expected {}", n - d));
        }
        for bits in enumerate_coboundaries(n, d, DEFAULT_ENUMERATION_BITS).unwrap() {
            if bits.is_zero() {
                continue;
            }
            let co = Coboundary::from_cut(SimplexSet::from_indicator(n, d, &bits)).unwrap();
            let parts = decompose_coboundary(&co).unwrap();
            let mut union = BitVec::zeros(bits.len());
            let mut overlap = false;
            for p in &parts {
                let pb = p.cut().indicator();
                if union.intersection_count(&pb) > 0 || !is_hypercut(p.cut()).unwrap() {
                    overlap = true;
                }
                union.or_assign(&pb);
            }
            decomposed += 1;
            if overlap || union != bits {
                problems.push(format!("n={n}: bad decomposition"));
            }
            if n >= 5 {
                compared += 1;
                if is_2hypercut_via_link(&co).unwrap() != is_hypercut(&co.cut).unwrap() {
                    problems.push(format!("n={n}: link test disagrees"));
                }
            }
        }
    }
    outcome(
        problems.is_empty(),
        format!(
            "{pairs} cut/boundary pairs, {decomposed} coboundaries decomposed, {compared} link comparisons, {} problems",
            problems.len()
        ),
    )
}

fn hypertree_exactness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for i in 0..50 {
        let (n, d) = [(4, 1), (5, 1), (6, 1), (4, 2), (5, 2), (6, 2)][i % 6];
        let t = random_tree(&mut rng, n, d);
        let dec = hypertree_decomposition(&t).unwrap();
        let caps = lightest_cap_volume(&t, DEFAULT_SEARCH_NODES).unwrap();
        worst = worst.max(dec.evaluate().max_abs_diff(&caps).unwrap());
    }
    let mut violations = 0;
    let mut largest = 0.0f64;
    for i in 0..100 {
        let (n, d) = [(5, 1), (6, 1), (5, 2), (6, 2)][i % 4];
        let v = if i % 2 == 0 {
            VolumeFunction::new(n, d, (0..binomial(n, d + 1)).map(|_| rng.random_range(1.0..2.0)).collect()).unwrap()
        } else {
            let pts = PointSet::new(d, (0..n).map(|_| (0..d).map(|_| rng.random::<f64>()).collect()).collect()).unwrap();
            euclidean_volume(&pts, d).unwrap()
        };
        let (_, dist) = mst_approximation(&v).unwrap();
        let bound = 1.0 + binomial(n - 1, d) as f64;
        largest = largest.max(dist / bound);
        if dist > bound {
            violations += 1;
        }
    }
    outcome(
        worst <= 1e-12 && violations == 0,
        format!("max tree/cap error {worst:.1e}, {violations} mst violations, worst distortion/bound {largest:.3}"),
    )
}

fn geometric_cuts() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let boundaries = tetra_boundaries(7);
    let (mut done, mut bad, mut redraws) = (0, 0, 0);
    while done < 100 {
        let angles: Vec<f64> = (0..7).map(|_| rng.random_range(0.0..std::f64::consts::TAU)).collect();
        let Ok(h) = geometric_hypercut(&PointSet::circle(&angles)) else {
            redraws += 1;
            continue;
        };
        done += 1;
        let bits = h.cut().indicator();
        let even = boundaries.iter().all(|z| matches!(bits.intersection_count(z), 0 | 2));
        if !is_hypercut(h.cut()).unwrap() || !even {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("{done} configurations, {bad} failures, {redraws} degenerate redraws"))
}

fn strength_engine() -> Outcome {
    let (eps, mut in_band, mut hard_failures) = (0.25, 0, Vec::new());
    let mut slowest = 0.0f64;
    let mut largest_support = 0;
    for seed in 0..20u64 {
        let start = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let dec = l1_cuts(&l1_points(&mut rng, 64, 10));
        let sys = ColumnSystem::from_decomposition(&dec).unwrap();
        let (report, table) = sparsify_strength(&sys, &StrengthOptions::new(eps, seed)).unwrap();
        let n_phases = table.num_phases();
        let rho = report.rho.unwrap();
        if report.max_rel_error <= eps && report.support_size as f64 <= 2.0 * rho * n_phases as f64 && n_phases <= 63 {
            in_band += 1;
        }
        if table.inverse_strength_mass(&sys.lambda) > n_phases as f64 {
            hard_failures.push(seed);
        }
        largest_support = largest_support.max(report.support_size);
        slowest = slowest.max(start.elapsed().as_secs_f64());
    }
    outcome(
        in_band >= 19 && hard_failures.is_empty() && slowest <= 120.0,
        format!("{in_band}/20 in band, support <= {largest_support}, mass-bound failures {hard_failures:?}, slowest run {slowest:.1}s"),
    )
}

fn l1_cuts(points: &[Vec<f64>]) -> CutDecomposition {
    l1_metric_to_cuts(points).unwrap()
}

fn spectral_engine() -> Outcome {
    let eps = 0.25;
    let mut in_band = 0;
    let mut largest = 0;
    let cap = 9.0 * 64.0 * 64f64.ln() / (eps * eps);
    for seed in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(2000 + seed);
        let dec = l1_cuts(&l1_points(&mut rng, 64, 10));
        let sys = ColumnSystem::from_decomposition(&dec).unwrap();
        let r = sparsify_spectral(&sys, &factorize(&dec).unwrap(), eps, seed, SpectralMode::default()).unwrap();
        largest = largest.max(r.support_size);
        if r.max_rel_error <= eps && (r.support_size as f64) <= cap && r.support_size <= sys.len() && sys.len() <= 630 {
            in_band += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2100);
    let dec = l1_cuts(&l1_points(&mut rng, 32, 10));
    let sys = ColumnSystem::from_decomposition(&dec).unwrap();
    let det = sparsify_spectral(&sys, &factorize(&dec).unwrap(), eps, 0, SpectralMode::Deterministic).unwrap();
    let det_ok = det.max_rel_error <= eps && det.support_size as f64 <= 40.0 * 32.0 / (eps * eps);

    // Any band-achieving output on the 65-point path keeps more than 64/1.7 cuts.
    let path = l1_cuts(&(0..65).map(|i| vec![i as f64]).collect::<Vec<_>>());
    let psys = ColumnSystem::from_decomposition(&path).unwrap();
    let pfac = factorize(&path).unwrap();
    let mut floor_ok = true;
    let mut path_supports = Vec::new();
    for (mode, seed) in [(SpectralMode::default(), 1), (SpectralMode::Sampled { c: 0.05 }, 2), (SpectralMode::Deterministic, 0)] {
        let r = sparsify_spectral(&psys, &pfac, eps, seed, mode).unwrap();
        path_supports.push((r.support_size, r.max_rel_error <= eps));
        if r.max_rel_error <= eps && r.support_size as f64 <= 64.0 / 1.7 {
            floor_ok = false;
        }
    }
    outcome(
        in_band >= 19 && det_ok && floor_ok,
        format!(
            "sampled {in_band}/20 in band (largest support {largest}); deterministic n=32 support {} err {:.3}; path (support, in band) {path_supports:?}",
            det.support_size, det.max_rel_error
        ),
    )
}

fn form_sparsifier() -> Outcome {
    let n = 64;
    let eps = 0.3;
    let k = WeightedSimplexSet::unit(SimplexSet::complete(n, 1));
    let sparse = sparsify_form(&k, eps, 7, SpectralMode::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for _ in 0..1000 {
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let r = quadratic_form(&sparse, &x).unwrap() / quadratic_form(&k, &x).unwrap();
        lo = lo.min(r);
        hi = hi.max(r);
    }
    let size_ok = sparse.set.len() as f64 <= 40.0 * 64.0 / (eps * eps);
    // Average squared distance of 64 points from the reweighted pairs only.
    let pts: Vec<[f64; 3]> = (0..n).map(|_| [rng.random(), rng.random(), rng.random()]).collect();
    let dist2 = |a: usize, b: usize| (0..3).map(|j| (pts[a][j] - pts[b][j]).powi(2)).sum::<f64>();
    let pairs = binomial(n, 2) as f64;
    let mut truth = 0.0;
    for a in 0..n {
        for b in a + 1..n {
            truth += dist2(a, b);
        }
    }
    truth /= pairs;
    let estimate = sparse
        .iter()
        .map(|(e, w)| w * dist2(e.vertices()[0] as usize, e.vertices()[1] as usize))
        .sum::<f64>()
        / pairs;
    let est_ok = (estimate / truth - 1.0).abs() <= 0.3;
    outcome(
        lo >= 0.7 && hi <= 1.3 && size_ok && est_ok,
        format!(
            "form ratio in [{lo:.3}, {hi:.3}], |K'| = {}, average estimate {estimate:.4} vs {truth:.4}",
            sparse.set.len()
        ),
    )
}

fn discrepancy() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut exact, mut in_band, mut subset) = (0, 0, true);
    let mut worst_initial = 0.0f64;
    for seed in 0..20u64 {
        let s = PointSet::new(2, (0..6).map(|_| vec![rng.random(), rng.random()]).collect()).unwrap();
        let areas = euclidean_volume(&s, 2).unwrap();
        let p0 = build_initial_sampling_set(&s).unwrap();
        let m0 = p0.mass_volume(&s).unwrap();
        let rel = |m: &VolumeFunction| {
            m.values().iter().zip(areas.values()).map(|(a, b)| (a - b).abs() / b).fold(0.0, f64::max)
        };
        let e0 = rel(&m0);
        worst_initial = worst_initial.max(e0);
        if e0 <= 1e-6 {
            exact += 1;
        }
        let (p, _) = sparsify_sampling_set(&s, &p0, 0.3, seed, SpectralMode::default()).unwrap();
        subset &= p.len() <= p0.len();
        if rel(&p.mass_volume(&s).unwrap()) <= 0.3 {
            in_band += 1;
        }
    }
    outcome(
        exact == 20 && in_band >= 18 && subset,
        format!("initial sets exact {exact}/20 (worst {worst_initial:.1e}), sparsified in band {in_band}/20"),
    )
}

fn random_complexes() -> Outcome {
    let table = HypercutTable::new(7).unwrap();
    let mut disagreements = 0;
    let mut connected = 0;
    for seed in 0..100u64 {
        let p = [0.3, 0.6, 0.9][seed as usize % 3];
        let k = random_complex(7, p, seed).unwrap();
        let conn = !k.is_empty() && is_connected(&k).unwrap();
        let positive = !k.is_empty() && table.expansion(&k).unwrap().value > 0.0;
        connected += conn as usize;
        if conn != positive {
            disagreements += 1;
        }
    }
    let space = SimplexSpace::new(7, 2).unwrap();
    let cycles = enumerate_simple_cycles(&space, 8, 200_000_000).unwrap();
    let mut counts = std::collections::BTreeMap::new();
    let mut vertex_violations = 0;
    for z in &cycles {
        let set = SimplexSet::from_indicator(7, 2, z);
        if !cycle_vertex_bound_holds(&set) {
            vertex_violations += 1;
        }
        *counts.entry(set.len()).or_insert(0usize) += 1;
    }
    let count_violations = counts.iter().filter(|(&k, &c)| c as f64 > cycle_count_bound(7, k)).count();
    outcome(
        disagreements == 0 && vertex_violations == 0 && count_violations == 0,
        format!(
            "{} hypercuts, {connected}/100 connected, {disagreements} disagreements; cycles by size {counts:?}, {vertex_violations} vertex / {count_violations} count violations",
            table.len()
        ),
    )
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("1 combinatorial core", combinatorial_core),
        ("2 hypertree and mst exactness", hypertree_exactness),
        ("3 geometric cuts", geometric_cuts),
        ("4 strength engine", strength_engine),
        ("5 spectral engine", spectral_engine),
        ("6 form sparsifier", form_sparsifier),
        ("7 discrepancy", discrepancy),
        ("8 random complexes", random_complexes),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        let start = Instant::now();
        let o = run();
        let tag = if o.ok { "[PASS]" } else { "[FAIL]" };
        println!("{tag} {name}: {} ({:.1}s)", o.detail, start.elapsed().as_secs_f64());
        if !o.ok {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
