//! Column-sampling sparsifiers for `w = Mλ` with nonnegative `M`.
//!
//! Two engines: strength-based sampling for Boolean `M`, and spectral
//! reduction through a signed square-root factorization of `M`.

use std::collections::BTreeSet;

use nalgebra::{DMatrix, SymmetricEigen, SVD};
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Poisson};
use serde::{Deserialize, Serialize};

use crate::complex::{real_boundary, WeightedSimplexSet};
use crate::error::{Error, Result};
use crate::l1cone::{sqrt_factorization_cuts_d1, sqrt_factorization_geometric, CutDecomposition, SqrtFactorization};
use crate::tolerance;

pub const DEFAULT_CONFIDENCE: f64 = 5.0;
pub const DEFAULT_SAMPLING_CONSTANT: f64 = 9.0;

/// A sparse nonnegative column with a caller-chosen id.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Column {
    pub id: usize,
    /// `(row, value)` pairs, rows ascending.
    pub entries: Vec<(usize, f64)>,
}

/// `rows × |C|` nonnegative matrix with positive column weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ColumnSystem {
    pub rows: usize,
    pub columns: Vec<Column>,
    pub lambda: Vec<f64>,
}

impl ColumnSystem {
    pub fn new(rows: usize, mut columns: Vec<Column>, lambda: Vec<f64>) -> Result<Self> {
        if columns.len() != lambda.len() {
            return Err(Error::DimensionMismatch {
                expected: columns.len(),
                found: lambda.len(),
            });
        }
        for (col, &l) in columns.iter_mut().zip(&lambda) {
            if !(l.is_finite() && l > 0.0) {
                return Err(Error::InvalidInput(format!("column {} has weight {l}", col.id)));
            }
            col.entries.retain(|&(_, v)| v != 0.0);
            col.entries.sort_by_key(|&(r, _)| r);
            for w in col.entries.windows(2) {
                if w[0].0 == w[1].0 {
                    return Err(Error::InvalidInput(format!("column {} repeats row {}", col.id, w[0].0)));
                }
            }
            for &(r, v) in &col.entries {
                if r >= rows {
                    return Err(Error::IndexOutOfRange { index: r, bound: rows });
                }
                if !(v.is_finite() && v > 0.0) {
                    return Err(Error::InvalidInput(format!("column {} has entry {v}", col.id)));
                }
            }
            if col.entries.is_empty() {
                return Err(Error::ZeroColumn(col.id));
            }
        }
        Ok(Self { rows, columns, lambda })
    }

    /// One Boolean column per term, rows indexed by simplex colex index; ids
    /// are term positions.
    pub fn from_decomposition(c: &CutDecomposition) -> Result<Self> {
        let rows = crate::complex::binomial(c.n, c.d + 1);
        let columns = c
            .terms
            .iter()
            .enumerate()
            .map(|(id, t)| Column {
                id,
                entries: t.cut.indices().into_iter().map(|r| (r, 1.0)).collect(),
            })
            .collect();
        Self::new(rows, columns, c.terms.iter().map(|t| t.lambda).collect())
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn is_boolean(&self) -> bool {
        self.columns.iter().all(|c| c.entries.iter().all(|&(_, v)| v == 1.0))
    }

    /// `Σ weights[c] · col_c`, weights by position.
    pub fn evaluate(&self, weights: &[f64]) -> Vec<f64> {
        let mut w = vec![0.0; self.rows];
        for (col, &l) in self.columns.iter().zip(weights) {
            if l != 0.0 {
                for &(r, v) in &col.entries {
                    w[r] += l * v;
                }
            }
        }
        w
    }

    pub fn w(&self) -> Vec<f64> {
        self.evaluate(&self.lambda)
    }

    /// Dense `|C| × rows`, one matrix row per column of the system.
    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.columns.len(), self.rows);
        for (i, col) in self.columns.iter().enumerate() {
            for &(r, v) in &col.entries {
                m[(i, r)] = v;
            }
        }
        m
    }

    fn row_index(&self) -> Vec<Vec<usize>> {
        let mut rows = vec![Vec::new(); self.rows];
        for (i, col) in self.columns.iter().enumerate() {
            for &(r, _) in &col.entries {
                rows[r].push(i);
            }
        }
        rows
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Phase {
    pub row: usize,
    pub threshold: f64,
    /// Column positions zeroed in this phase, ascending.
    pub columns: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrengthTable {
    /// Strength per column position.
    pub strength: Vec<f64>,
    pub phases: Vec<Phase>,
}

impl StrengthTable {
    pub fn num_phases(&self) -> usize {
        self.phases.len()
    }

    /// Sorted distinct strengths.
    pub fn levels(&self) -> Vec<f64> {
        let mut s = self.strength.clone();
        s.sort_by(f64::total_cmp);
        s.dedup();
        s
    }

    pub fn distinct_strengths(&self) -> usize {
        self.levels().len()
    }

    /// `Σ λ_c / s(c)`, accumulated phase by phase.
    pub fn inverse_strength_mass(&self, lambda: &[f64]) -> f64 {
        self.phases
            .iter()
            .map(|p| p.columns.iter().map(|&c| lambda[c]).sum::<f64>() / p.threshold)
            .sum()
    }

    /// `(row, column)` pairs of a lower-triangular minor with unit diagonal,
    /// one per phase.
    pub fn triangular_certificate(&self) -> Vec<(usize, usize)> {
        self.phases.iter().map(|p| (p.row, p.columns[0])).collect()
    }
}

/// Phase-by-phase strengths with weighted row sums. The row that starts a
/// phase is the one of least remaining weight, ties to the lower index.
pub fn compute_strengths(sys: &ColumnSystem) -> Result<StrengthTable> {
    if !sys.is_boolean() {
        return Err(Error::InvalidInput("strengths need a Boolean matrix".into()));
    }
    let by_row = sys.row_index();
    let mut alive = vec![true; sys.len()];
    let mut strength = vec![0.0; sys.len()];
    let mut phases = Vec::new();
    // Row sums are always recomputed from the surviving columns, so a row
    // is zero exactly when it has no survivors.
    let row_sum = |f: usize, alive: &[bool]| -> f64 {
        by_row[f].iter().filter(|&&c| alive[c]).map(|&c| sys.lambda[c]).sum()
    };
    let mut w: Vec<f64> = (0..sys.rows).map(|f| row_sum(f, &alive)).collect();
    while let Some(m) = w.iter().copied().filter(|&x| x > 0.0).min_by(f64::total_cmp) {
        loop {
            let next = (0..sys.rows)
                .filter(|&f| w[f] > 0.0 && w[f] <= m)
                .min_by(|&a, &b| w[a].total_cmp(&w[b]).then(a.cmp(&b)));
            let Some(f) = next else { break };
            let columns: Vec<usize> = by_row[f].iter().copied().filter(|&c| alive[c]).collect();
            let threshold = m.max(w[f]);
            let mut dirty = BTreeSet::new();
            for &c in &columns {
                alive[c] = false;
                strength[c] = threshold;
                dirty.extend(sys.columns[c].entries.iter().map(|&(r, _)| r));
            }
            for r in dirty {
                w[r] = row_sum(r, &alive);
            }
            phases.push(Phase { row: f, threshold, columns });
        }
    }
    Ok(StrengthTable { strength, phases })
}

/// How non-unit weights are sampled: `scale · λ_c` unit copies per column.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplingLaw {
    Binomial,
    Poisson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrengthOptions {
    pub epsilon: f64,
    pub k: f64,
    pub seed: u64,
    pub law: SamplingLaw,
    /// Copies per unit of weight; defaults to one copy for the lightest column.
    pub scale: Option<f64>,
}

impl StrengthOptions {
    pub fn new(epsilon: f64, seed: u64) -> Self {
        Self {
            epsilon,
            k: DEFAULT_CONFIDENCE,
            seed,
            law: SamplingLaw::Binomial,
            scale: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupportEntry {
    pub id: usize,
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparsifyReport {
    pub engine: String,
    pub epsilon: f64,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phases: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distinct_strengths: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    /// `D` of the factorization used: entries of `w'` are then within
    /// `[(1-ε)/D, (1+ε)·D]` of `w`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rigidity: Option<f64>,
    pub input_size: usize,
    pub support_size: usize,
    pub support: Vec<SupportEntry>,
    pub max_rel_error: f64,
}

impl SparsifyReport {
    /// New weights by column position of `sys`, zero off the support.
    pub fn weights_for(&self, sys: &ColumnSystem) -> Vec<f64> {
        let mut out = vec![0.0; sys.len()];
        for e in &self.support {
            if let Some(pos) = sys.columns.iter().position(|c| c.id == e.id) {
                out[pos] = e.weight;
            }
        }
        out
    }

    /// The sparsified decomposition, for systems built by
    /// [`ColumnSystem::from_decomposition`].
    pub fn apply(&self, c: &CutDecomposition) -> CutDecomposition {
        let ids: Vec<usize> = self.support.iter().map(|e| e.id).collect();
        let weights: Vec<f64> = self.support.iter().map(|e| e.weight).collect();
        c.reweighted(&ids, &weights)
    }
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidEpsilon(epsilon))
    }
}

/// Largest `|w'(f)/w(f) - 1|` over rows with `w(f) > 0`; infinite if `w'`
/// is positive where `w` vanishes.
pub fn max_relative_error(w: &[f64], w_prime: &[f64]) -> f64 {
    w.iter()
        .zip(w_prime)
        .map(|(&a, &b)| {
            if a > 0.0 {
                (b / a - 1.0).abs()
            } else if b > 0.0 {
                f64::INFINITY
            } else {
                0.0
            }
        })
        .fold(0.0, f64::max)
}

fn column_rng(seed: u64, id: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id as u64);
    rng
}

fn build_report(engine: &str, epsilon: f64, seed: u64, sys: &ColumnSystem, weights: &[f64]) -> SparsifyReport {
    let support: Vec<SupportEntry> = sys
        .columns
        .iter()
        .zip(weights)
        .filter(|(_, &w)| w > 0.0)
        .map(|(c, &w)| SupportEntry { id: c.id, weight: w })
        .collect();
    SparsifyReport {
        engine: engine.into(),
        epsilon,
        seed,
        k: None,
        rho: None,
        phases: None,
        distinct_strengths: None,
        rank: None,
        samples: None,
        rigidity: None,
        input_size: sys.len(),
        support_size: support.len(),
        support,
        max_rel_error: max_relative_error(&sys.w(), &sys.evaluate(weights)),
    }
}

/// Oversampling parameter `3/ε² · (ln 2|F| + ln t + k)`.
pub fn rho(epsilon: f64, rows: usize, t: usize, k: f64) -> f64 {
    3.0 / (epsilon * epsilon) * ((2.0 * rows as f64).ln() + (t.max(1) as f64).ln() + k)
}

/// Keeps each unit copy of column `c` with probability `min(ρ/s(c), 1)`
/// (strengths measured in copies) and reweights survivors by the inverse.
/// Randomness is keyed by `(seed, column id)`.
pub fn sparsify_strength(sys: &ColumnSystem, opts: &StrengthOptions) -> Result<(SparsifyReport, StrengthTable)> {
    check_epsilon(opts.epsilon)?;
    if !(opts.k.is_finite() && opts.k > 0.0) {
        return Err(Error::InvalidInput(format!("confidence k must be positive, got {}", opts.k)));
    }
    let table = compute_strengths(sys)?;
    let t = table.distinct_strengths();
    let rho = rho(opts.epsilon, sys.rows, t, opts.k);
    let scale = match opts.scale {
        Some(s) if s.is_finite() && s > 0.0 => s,
        Some(s) => return Err(Error::InvalidInput(format!("scale must be positive, got {s}"))),
        None => 1.0 / sys.lambda.iter().copied().fold(f64::INFINITY, f64::min),
    };
    let mut weights = vec![0.0; sys.len()];
    for (i, col) in sys.columns.iter().enumerate() {
        let lambda = sys.lambda[i];
        let p = (rho / (scale * table.strength[i])).min(1.0);
        if p >= 1.0 {
            weights[i] = lambda;
            continue;
        }
        let mut rng = column_rng(opts.seed, col.id);
        weights[i] = match opts.law {
            SamplingLaw::Binomial => {
                let copies = (scale * lambda).ceil().max(1.0);
                let kept = Binomial::new(copies as u64, p)
                    .map_err(|e| Error::InvalidInput(e.to_string()))?
                    .sample(&mut rng);
                lambda * kept as f64 / (copies * p)
            }
            SamplingLaw::Poisson => {
                let mean = scale * lambda * p;
                let kept: f64 = Poisson::new(mean)
                    .map_err(|e| Error::InvalidInput(e.to_string()))?
                    .sample(&mut rng);
                kept / (scale * p)
            }
        };
    }
    let mut report = build_report("strength", opts.epsilon, opts.seed, sys, &weights);
    report.k = Some(opts.k);
    report.rho = Some(rho);
    report.phases = Some(table.num_phases());
    report.distinct_strengths = Some(t);
    Ok((report, table))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectralMode {
    /// Leverage-score sampling with `⌈C·k·max(ln k, 1)/ε²⌉` draws.
    Sampled { c: f64 },
    /// Barrier selection, `O(k/ε²)` vectors.
    Deterministic,
}

impl Default for SpectralMode {
    fn default() -> Self {
        SpectralMode::Sampled {
            c: DEFAULT_SAMPLING_CONSTANT,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SpectralStats {
    pub rank: usize,
    pub samples: usize,
}

/// New row weights `λ'` with `Σ λ'_c b_c b_cᵀ` spectrally within `1 ± ε`
/// of `Σ λ_c b_c b_cᵀ`, `b` holding one row per column.
pub fn spectral_weights(
    b: &DMatrix<f64>,
    lambda: &[f64],
    epsilon: f64,
    seed: u64,
    mode: SpectralMode,
) -> Result<(Vec<f64>, SpectralStats)> {
    check_epsilon(epsilon)?;
    let m = b.nrows();
    if lambda.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: lambda.len(),
        });
    }
    if m == 0 {
        return Ok((Vec::new(), SpectralStats::default()));
    }
    let mut r = b.clone();
    for (i, &l) in lambda.iter().enumerate() {
        r.row_mut(i).scale_mut(l.sqrt());
    }
    let svd = SVD::new(r, true, false);
    let u = svd.u.expect("requested");
    let smax = svd.singular_values.max();
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&j| svd.singular_values[j] > tolerance::PSEUDO_INVERSE * smax.max(f64::MIN_POSITIVE))
        .collect();
    let rank = keep.len();
    if rank == 0 {
        return Err(Error::InvalidInput("factorization has rank zero".into()));
    }
    let whitened = DMatrix::from_fn(m, rank, |i, j| u[(i, keep[j])]);
    let leverage: Vec<f64> = (0..m).map(|i| whitened.row(i).norm_squared()).collect();
    if let Some(i) = leverage.iter().position(|&t| t <= 0.0) {
        return Err(Error::InvalidInput(format!("row {i} has zero leverage")));
    }
    match mode {
        SpectralMode::Sampled { c } => {
            if !(c.is_finite() && c > 0.0) {
                return Err(Error::InvalidInput(format!("sampling constant must be positive, got {c}")));
            }
            let k = b.ncols().max(1) as f64;
            let draws = (c * k * k.ln().max(1.0) / (epsilon * epsilon)).ceil();
            let total: f64 = leverage.iter().sum();
            let p: Vec<f64> = leverage.iter().map(|t| t / total).collect();
            let mut weights = vec![0.0; m];
            // Rows expected to be drawn at least once are kept as they are.
            let light: Vec<usize> = (0..m).filter(|&i| draws * p[i] < 1.0).collect();
            for i in 0..m {
                if draws * p[i] >= 1.0 {
                    weights[i] = lambda[i];
                }
            }
            let mut samples = 0;
            if !light.is_empty() {
                let light_mass: f64 = light.iter().map(|&i| p[i]).sum();
                samples = (draws * light_mass).ceil() as usize;
                let index = WeightedIndex::new(light.iter().map(|&i| p[i])).map_err(|e| Error::InvalidInput(e.to_string()))?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..samples {
                    let i = light[index.sample(&mut rng)];
                    weights[i] += lambda[i] * light_mass / (samples as f64 * p[i]);
                }
            }
            Ok((weights, SpectralStats { rank, samples }))
        }
        SpectralMode::Deterministic => {
            let s = barrier_select(&whitened, epsilon);
            let steps = s.iter().filter(|&&x| x > 0.0).count();
            Ok((
                s.iter().zip(lambda).map(|(x, l)| x * l).collect(),
                SpectralStats { rank, samples: steps },
            ))
        }
    }
}

/// Weights `s` with `Σ s_i v_i v_iᵀ` within `1 ± ε` of the identity, for
/// rows `v_i` of an orthonormal-column matrix.
fn barrier_select(v: &DMatrix<f64>, epsilon: f64) -> Vec<f64> {
    let (m, r) = v.shape();
    let rf = r as f64;
    // Slightly inside the band so rounding does not push us out.
    let target = (1.0 + 0.95 * epsilon) / (1.0 - 0.95 * epsilon);
    let sd = (target.sqrt() + 1.0) / (target.sqrt() - 1.0);
    let deg = sd * sd;
    let (delta_l, delta_u) = (1.0, (sd + 1.0) / (sd - 1.0));
    let (mut l, mut u) = (-rf * sd, rf * (deg + sd) / (sd - 1.0));
    let steps = (deg * rf).ceil() as usize;
    let mut a = DMatrix::<f64>::zeros(r, r);
    let mut s = vec![0.0; m];
    for _ in 0..steps {
        let eig = SymmetricEigen::new(a.clone());
        let proj = v * &eig.eigenvectors;
        let ev = &eig.eigenvalues;
        let (u2, l2) = (u + delta_u, l + delta_l);
        let phi_u = |x: f64| ev.iter().map(|a| 1.0 / (x - a)).sum::<f64>();
        let phi_l = |x: f64| ev.iter().map(|a| 1.0 / (a - x)).sum::<f64>();
        let (du, dl) = (phi_u(u) - phi_u(u2), phi_l(l2) - phi_l(l));
        let mut best = (f64::NEG_INFINITY, 0, 0.0, 0.0);
        for i in 0..m {
            let (mut u_sq, mut u_lin, mut l_sq, mut l_lin) = (0.0, 0.0, 0.0, 0.0);
            for j in 0..r {
                let p2 = proj[(i, j)] * proj[(i, j)];
                let (gu, gl) = (1.0 / (u2 - ev[j]), 1.0 / (ev[j] - l2));
                u_lin += p2 * gu;
                u_sq += p2 * gu * gu;
                l_lin += p2 * gl;
                l_sq += p2 * gl * gl;
            }
            let upper = u_sq / du + u_lin;
            let lower = l_sq / dl - l_lin;
            if lower - upper > best.0 {
                best = (lower - upper, i, upper, lower);
            }
        }
        let (_, i, upper, lower) = best;
        let t = 2.0 / (upper + lower.max(upper));
        let vi = v.row(i).transpose();
        a += t * &vi * vi.transpose();
        s[i] += t;
        l = l2;
        u = u2;
    }
    let eig = SymmetricEigen::new(a).eigenvalues;
    let scale = 2.0 / (eig.min() + eig.max());
    s.iter().map(|x| x * scale).collect()
}

/// Spectral sparsification of a weighted column system through `fac`,
/// whose rows correspond to the columns of `sys`.
pub fn sparsify_spectral(
    sys: &ColumnSystem,
    fac: &SqrtFactorization,
    epsilon: f64,
    seed: u64,
    mode: SpectralMode,
) -> Result<SparsifyReport> {
    check_epsilon(epsilon)?;
    if fac.b.nrows() != sys.len() || fac.x.ncols() != sys.rows {
        return Err(Error::DimensionMismatch {
            expected: sys.len(),
            found: fac.b.nrows(),
        });
    }
    let dense = sys.to_dense();
    let Some(rigidity) = fac.rigidity(&dense) else {
        return Err(Error::FactorizationResidual {
            residual: fac.residual(&dense),
            tolerance: tolerance::FACTORIZATION,
        });
    };
    let (weights, stats) = spectral_weights(&fac.b, &sys.lambda, epsilon, seed, mode)?;
    let engine = match mode {
        SpectralMode::Sampled { .. } => "spectral",
        SpectralMode::Deterministic => "spectral-det",
    };
    let mut report = build_report(engine, epsilon, seed, sys, &weights);
    report.rank = Some(stats.rank);
    report.samples = Some(stats.samples);
    report.rigidity = Some(rigidity);
    Ok(report)
}

/// Graph-cut factorization for plain `d = 1` decompositions, the geometric
/// one when every term carries a center.
pub fn factorize(c: &CutDecomposition) -> Result<SqrtFactorization> {
    let geometric = c.points.is_some() && c.terms.iter().all(|t| t.center.is_some());
    if geometric {
        sqrt_factorization_geometric(c)
    } else if c.d == 1 {
        sqrt_factorization_cuts_d1(c)
    } else {
        Err(Error::MissingProvenance(
            "spectral sparsification of d >= 2 cuts needs point realizations".into(),
        ))
    }
}

/// A certified lower bound on the triangular rank, exact when `exact`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangularRank {
    pub bound: usize,
    pub exact: bool,
    /// `(row, column)` pairs of a witnessing minor.
    pub minor: Vec<(usize, usize)>,
}

struct TrkSearch<'a> {
    rows: &'a [Vec<usize>],
    nodes: usize,
    budget: usize,
    memo: std::collections::HashMap<Vec<u64>, usize>,
}

fn mask_of(cols: usize, set: &[usize]) -> Vec<u64> {
    let mut m = vec![0u64; cols.div_ceil(64)];
    for &c in set {
        m[c / 64] |= 1 << (c % 64);
    }
    m
}

impl TrkSearch<'_> {
    /// Longest chain from the surviving columns `alive`; `None` when out of budget.
    fn best(&mut self, alive: &[u64]) -> Option<usize> {
        if let Some(&v) = self.memo.get(alive) {
            return Some(v);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let mut seen = BTreeSet::new();
        let mut best = 0;
        for row in self.rows {
            let hit: Vec<u64> = mask_of(alive.len() * 64, row).iter().zip(alive).map(|(a, b)| a & b).collect();
            if hit.iter().all(|&x| x == 0) || !seen.insert(hit.clone()) {
                continue;
            }
            let rest: Vec<u64> = alive.iter().zip(&hit).map(|(a, h)| a & !h).collect();
            best = best.max(1 + self.best(&rest)?);
        }
        self.memo.insert(alive.to_vec(), best);
        Some(best)
    }
}

/// Largest lower-triangular minor with nonzero diagonal, for a matrix given
/// by the column supports of its rows. A greedy chain is always returned;
/// the exhaustive search replaces it when it finishes within `budget` nodes.
pub fn triangular_rank_lower_bound(cols: usize, rows: &[Vec<usize>], budget: usize) -> TriangularRank {
    // Greedy: repeatedly take the row killing the fewest surviving columns.
    let mut alive = vec![true; cols];
    let mut minor = Vec::new();
    loop {
        let pick = rows
            .iter()
            .enumerate()
            .map(|(f, r)| (f, r.iter().filter(|&&c| alive[c]).count()))
            .filter(|&(_, k)| k > 0)
            .min_by_key(|&(f, k)| (k, f));
        let Some((f, _)) = pick else { break };
        let c = *rows[f].iter().find(|&&c| alive[c]).expect("nonempty");
        minor.push((f, c));
        for &c in &rows[f] {
            alive[c] = false;
        }
    }
    let mut search = TrkSearch {
        rows,
        nodes: 0,
        budget,
        memo: Default::default(),
    };
    let all: Vec<usize> = (0..cols).collect();
    match search.best(&mask_of(cols, &all)) {
        Some(v) if v > minor.len() => {
            let minor = reconstruct(&mut search, cols);
            debug_assert_eq!(minor.len(), v);
            TriangularRank { bound: v, exact: true, minor }
        }
        Some(_) => TriangularRank {
            bound: minor.len(),
            exact: true,
            minor,
        },
        None => TriangularRank {
            bound: minor.len(),
            exact: false,
            minor,
        },
    }
}

fn reconstruct(search: &mut TrkSearch, cols: usize) -> Vec<(usize, usize)> {
    let mut alive = mask_of(cols, &(0..cols).collect::<Vec<_>>());
    let mut out = Vec::new();
    loop {
        let target = search.memo[&alive];
        if target == 0 {
            return out;
        }
        for (f, row) in search.rows.iter().enumerate() {
            let hit: Vec<u64> = mask_of(cols, row).iter().zip(&alive).map(|(a, b)| a & b).collect();
            let Some(c) = row.iter().copied().find(|&c| hit[c / 64] >> (c % 64) & 1 == 1) else {
                continue;
            };
            let rest: Vec<u64> = alive.iter().zip(&hit).map(|(a, h)| a & !h).collect();
            if search.memo.get(&rest).is_some_and(|&v| v + 1 == target) {
                out.push((f, c));
                alive = rest;
                break;
            }
        }
    }
}

/// Checks that `minor` is lower triangular with unit diagonal in `m`.
pub fn is_triangular_minor(m: &DMatrix<f64>, minor: &[(usize, usize)]) -> bool {
    minor.iter().enumerate().all(|(i, &(f, c))| {
        m[(f, c)] != 0.0 && minor[i + 1..].iter().all(|&(_, later)| m[(f, later)] == 0.0)
    })
}

/// Reweights a subset of `k` so that `xᵀ M_d W M_dᵀ x` is preserved within
/// `1 ± ε` for every real cochain `x`.
pub fn sparsify_form(k: &WeightedSimplexSet, epsilon: f64, seed: u64, mode: SpectralMode) -> Result<WeightedSimplexSet> {
    check_epsilon(epsilon)?;
    let boundary = real_boundary(k.set.n(), k.set.d())?;
    let items: Vec<(usize, f64)> = k.iter().filter(|&(_, w)| w > 0.0).map(|(s, w)| (s.colex_index(), w)).collect();
    let dim = crate::complex::binomial(k.set.n(), k.set.d());
    let mut b = DMatrix::zeros(items.len(), dim);
    for (row, &(col, _)) in items.iter().enumerate() {
        for &(face, sign) in &boundary.signs[col] {
            b[(row, face)] = sign as f64;
        }
    }
    let lambda: Vec<f64> = items.iter().map(|&(_, w)| w).collect();
    let (weights, _) = spectral_weights(&b, &lambda, epsilon, seed, mode)?;
    let (mut simplices, mut out) = (Vec::new(), Vec::new());
    for (&(col, _), w) in items.iter().zip(weights) {
        if w > 0.0 {
            simplices.push(crate::complex::Simplex::from_colex(col, k.set.d()));
            out.push(w);
        }
    }
    let set = crate::complex::SimplexSet::from_simplices(k.set.n(), k.set.d(), simplices)?;
    WeightedSimplexSet::new(set, out)
}

/// `Σ_σ w_σ (xᵀ ∂σ)²`.
pub fn quadratic_form(k: &WeightedSimplexSet, x: &[f64]) -> Result<f64> {
    let boundary = real_boundary(k.set.n(), k.set.d())?;
    let y = boundary.coboundary(x);
    Ok(k.iter().map(|(s, w)| w * y[s.colex_index()].powi(2)).sum())
}
