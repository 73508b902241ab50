//! Random 2-complexes, normalized face expansion and the Poincaré-form
//! lower bound on ℓ₁ distortion of their cap volumes.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{binomial, is_connected, SimplexSet, SimplexSpace, WeightedSimplexSet};
use crate::cuts::{
    coboundary_from_inducer, enumerate_hypercuts, geometric_hypercut_at, is_hypercut_in, partition_hypercut, PointSet,
    DEFAULT_ENUMERATION_BITS,
};
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::volumes::{lightest_cap_volume, VolumeFunction};

/// Largest `n` for which exact expansion enumerates every 2-hypercut.
pub const EXACT_MAX_N: usize = 7;
pub const DEFAULT_SAMPLES: usize = 2000;

/// Each 2-simplex of `K_n` independently with probability `p`.
pub fn random_complex(n: usize, p: f64, seed: u64) -> Result<SimplexSet> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidInput(format!("p must lie in [0, 1], got {p}")));
    }
    if n < 3 {
        return Err(Error::InvalidInput(format!("need n >= 3, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bits: Vec<bool> = (0..binomial(n, 3)).map(|_| rng.random_bool(p)).collect();
    Ok(SimplexSet::from_indicator(n, 2, &BitVec::from_bools(&bits)))
}

/// `25 ln n / n`, clamped to 1; the flag says whether clamping happened.
pub fn default_p(n: usize) -> (f64, bool) {
    let p = 25.0 * (n as f64).ln() / n as f64;
    if p > 1.0 {
        (1.0, true)
    } else {
        (p, false)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExpansionMode {
    Exact,
    /// Minimum over sampled hypercuts: an upper bound on the true value.
    Sampled { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expansion {
    pub value: f64,
    pub exact: bool,
    /// A hypercut attaining `value`.
    pub witness: SimplexSet,
}

/// `(|K ∩ C| / |C|) / (|K| / C(n,3))`.
pub fn expansion_ratio(k: &BitVec, cut: &BitVec) -> f64 {
    let total = k.len() as f64;
    (k.intersection_count(cut) as f64 / cut.count_ones() as f64) / (k.count_ones() as f64 / total)
}

/// Every 2-hypercut of `K_n`, for repeated exact evaluations.
#[derive(Clone, Debug)]
pub struct HypercutTable {
    n: usize,
    cuts: Vec<BitVec>,
}

impl HypercutTable {
    pub fn new(n: usize) -> Result<Self> {
        if n > EXACT_MAX_N {
            return Err(Error::GuardExceeded {
                what: "exact expansion vertex count".into(),
                limit: EXACT_MAX_N,
            });
        }
        let cuts = enumerate_hypercuts(n, 2, DEFAULT_ENUMERATION_BITS)?
            .into_iter()
            .map(|h| h.cut().indicator())
            .collect();
        Ok(Self { n, cuts })
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    pub fn expansion(&self, k: &SimplexSet) -> Result<Expansion> {
        if (k.n(), k.d()) != (self.n, 2) {
            return Err(Error::InvalidInput(format!(
                "complex lives in K_{}^({}), table in K_{}^(2)",
                k.n(),
                k.d(),
                self.n
            )));
        }
        minimize(k, &self.cuts, true)
    }
}

fn minimize(k: &SimplexSet, cuts: &[BitVec], exact: bool) -> Result<Expansion> {
    if k.is_empty() {
        return Err(Error::InvalidInput("face expansion of an empty complex".into()));
    }
    let bits = k.indicator();
    let (value, best) = cuts
        .iter()
        .map(|c| expansion_ratio(&bits, c))
        .enumerate()
        .fold((f64::INFINITY, 0), |acc, (i, r)| if r < acc.0 { (r, i) } else { acc });
    let witness = cuts
        .get(best)
        .map(|c| SimplexSet::from_indicator(k.n(), 2, c))
        .ok_or_else(|| Error::InvalidInput("no hypercuts to evaluate".into()))?;
    Ok(Expansion { value, exact, witness })
}

/// Hypercuts of `K_n^(2)` drawn round-robin from three sources: links of
/// random graphs that pass the hypercut test, random three-block partitions, and
/// random configurations on the circle around the origin.
pub fn sample_hypercuts(n: usize, samples: usize, seed: u64) -> Result<Vec<BitVec>> {
    let space = SimplexSpace::new(n, 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    let mut attempts = 0;
    while out.len() < samples && attempts < 20 * samples.max(1) {
        attempts += 1;
        let cut = match attempts % 3 {
            0 => {
                let edges = (0..binomial(n - 1, 2)).map(|_| rng.random_bool(0.5)).collect::<Vec<_>>();
                let g = SimplexSet::from_indicator(n, 1, &BitVec::from_bools(&edges));
                let c = coboundary_from_inducer(&g)?.cut.indicator();
                if c.is_zero() || !is_hypercut_in(&space, &c) {
                    continue;
                }
                c
            }
            1 => {
                // Rainbow triangles of a three-block partition.
                let parts = 3;
                let mut labels: Vec<usize> = (0..n).map(|v| if v < parts { v } else { rng.random_range(0..parts) }).collect();
                labels.shuffle(&mut rng);
                let blocks: Vec<Vec<u32>> = (0..parts)
                    .map(|b| (0..n as u32).filter(|&v| labels[v as usize] == b).collect())
                    .collect();
                match partition_hypercut(n, &blocks) {
                    Ok(h) => h.cut().indicator(),
                    Err(_) => continue,
                }
            }
            _ => {
                let angles: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..std::f64::consts::TAU)).collect();
                match geometric_hypercut_at(&PointSet::circle(&angles), &[0.0, 0.0]) {
                    Ok(h) => h.cut().indicator(),
                    Err(_) => continue,
                }
            }
        };
        out.push(cut);
    }
    Ok(out)
}

pub fn face_expansion(k: &SimplexSet, mode: &ExpansionMode) -> Result<Expansion> {
    if k.d() != 2 {
        return Err(Error::InvalidInput(format!("face expansion is defined for d = 2, got {}", k.d())));
    }
    match mode {
        ExpansionMode::Exact => HypercutTable::new(k.n())?.expansion(k),
        ExpansionMode::Sampled { samples, seed } => minimize(k, &sample_hypercuts(k.n(), *samples, *seed)?, false),
    }
}

/// `Σ_{σ∈K} v(σ) / av(v)`.
pub fn poincare_form(k: &SimplexSet, v: &VolumeFunction) -> Result<f64> {
    if (k.n(), k.d()) != (v.n(), v.d()) {
        return Err(Error::InvalidInput("complex and volume live in different complexes".into()));
    }
    let av = v.average();
    if !(av > 0.0) {
        return Err(Error::InvalidInput("form needs a positive average".into()));
    }
    Ok(k.iter().map(|s| v.get(s)).sum::<f64>() / av)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpansionReport {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
    pub mode: String,
    pub complex: SimplexSet,
    pub size: usize,
    pub connected: bool,
    pub expansion: Option<f64>,
    /// True when `expansion` is a minimum over sampled hypercuts only.
    pub expansion_is_upper_bound: bool,
    pub avg_cap: Option<f64>,
    pub distortion_lb: Option<f64>,
}

/// `av(v_K) · expansion(K)` for a connected unit-weighted `K`.
pub fn distortion_lower_bound(k: &SimplexSet, max_nodes: usize) -> Result<(f64, f64, f64)> {
    if !is_connected(k)? {
        return Err(Error::NotConnected);
    }
    let expansion = face_expansion(k, &ExpansionMode::Exact)?.value;
    let avg = lightest_cap_volume(&WeightedSimplexSet::unit(k.clone()), max_nodes)?.average();
    Ok((avg * expansion, avg, expansion))
}

/// Samples `K(n, p)` and reports its expansion and, when the exact
/// expansion is available, the distortion lower bound.
pub fn analyze(n: usize, p: f64, seed: u64, mode: &ExpansionMode, max_nodes: usize) -> Result<ExpansionReport> {
    let complex = random_complex(n, p, seed)?;
    let connected = !complex.is_empty() && is_connected(&complex)?;
    let expansion = if complex.is_empty() {
        None
    } else {
        Some(face_expansion(&complex, mode)?)
    };
    let avg_cap = if connected {
        match lightest_cap_volume(&WeightedSimplexSet::unit(complex.clone()), max_nodes) {
            Ok(v) => Some(v.average()),
            Err(e) if e.is_guard() && matches!(mode, ExpansionMode::Sampled { .. }) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let exact = matches!(mode, ExpansionMode::Exact);
    let distortion_lb = match (&expansion, avg_cap) {
        (Some(e), Some(a)) if exact => Some(a * e.value),
        _ => None,
    };
    Ok(ExpansionReport {
        n,
        p,
        seed,
        mode: if exact { "exact" } else { "sampled" }.into(),
        size: complex.len(),
        complex,
        connected,
        expansion: expansion.map(|e| e.value),
        expansion_is_upper_bound: !exact,
        avg_cap,
        distortion_lb,
    })
}

/// `(k/2 + 2)^{3k} · C(n, k/2 + 2)`, bounding the number of size-`k` simple
/// 2-cycles of `K_n`.
pub fn cycle_count_bound(n: usize, k: usize) -> f64 {
    let t = k / 2 + 2;
    (t as f64).powi(3 * k as i32) * binomial(n, t) as f64
}

/// Vertices touched by a cycle against `|Z|/2 + 2`.
pub fn cycle_vertex_bound_holds(z: &SimplexSet) -> bool {
    2 * z.vertex_support().len() <= z.len() + 4
}
