use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codebook::Strategy;
use crate::theory::union_bound;
use crate::units::dbm_to_watts;
use crate::{Error, Result};

use super::scenario::{trial_rng, Scenario};
use super::SimConfig;

/// Trials per parallel work unit.
const BLOCK: u64 = 128;

/// Simulated and bounded ABER versus transmit power.
#[derive(Debug, Clone, PartialEq)]
pub struct BerCurve {
    pub strategy: Strategy,
    pub m: usize,
    pub b: usize,
    pub seed: u64,
    /// `η = log2 M + log2 B`.
    pub bits_per_symbol: usize,
    pub power_dbm: Vec<f64>,
    pub trials: Vec<u64>,
    pub bit_errors: Vec<u64>,
    /// Sum over trials of the squared per-trial bit-error count.
    pub squared_errors: Vec<u64>,
    /// `bit_errors / (trials·η)`.
    pub aber_sim: Vec<f64>,
    /// Union bound; NaN when disabled.
    pub aber_bound: Vec<f64>,
    /// Channel draws discarded for singular combiners.
    pub redraws: u64,
}

impl BerCurve {
    pub fn len(&self) -> usize {
        self.power_dbm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.power_dbm.is_empty()
    }

    /// Standard error of `aber_sim[i]` from the per-trial error counts.
    pub fn standard_error(&self, i: usize) -> f64 {
        standard_error(
            self.trials[i],
            self.bit_errors[i],
            self.squared_errors[i],
            self.bits_per_symbol,
        )
    }

    /// Binomial standard error `√(p(1−p)/(trials·η))` of `aber_sim[i]`.
    pub fn binomial_standard_error(&self, i: usize) -> f64 {
        let n = (self.trials[i] * self.bits_per_symbol as u64) as f64;
        let p = self.aber_sim[i];
        (p * (1.0 - p) / n).sqrt()
    }

    pub fn index_of_power(&self, dbm: f64) -> Option<usize> {
        self.power_dbm.iter().position(|&p| p == dbm)
    }
}

pub(crate) fn standard_error(trials: u64, errors: u64, squares: u64, eta: usize) -> f64 {
    if trials == 0 {
        return f64::NAN;
    }
    let n = trials as f64;
    let mean = errors as f64 / n;
    let var = (squares as f64 / n - mean * mean).max(0.0);
    (var / n).sqrt() / eta as f64
}

#[derive(Debug, Default)]
struct Tally {
    errors: Vec<u64>,
    squares: Vec<u64>,
    bound: Vec<f64>,
    redraws: u64,
}

impl Tally {
    fn zeros(n: usize) -> Self {
        Self {
            errors: vec![0; n],
            squares: vec![0; n],
            bound: vec![0.0; n],
            redraws: 0,
        }
    }

    fn merge(mut self, other: Tally) -> Self {
        for (a, b) in self.errors.iter_mut().zip(other.errors) {
            *a += b;
        }
        for (a, b) in self.squares.iter_mut().zip(other.squares) {
            *a += b;
        }
        for (a, b) in self.bound.iter_mut().zip(other.bound) {
            *a += b;
        }
        self.redraws += other.redraws;
        self
    }
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Work for draws `[start, end)`: draws below `trials` are simulated at
/// every power (same channel, bits and noise sample across powers), draws
/// below `bound_draws` also contribute their union bound.
struct Plan<'a> {
    scenario: &'a Scenario,
    seed: u64,
    powers_w: &'a [f64],
    trials: u64,
    bound_draws: u64,
}

impl Plan<'_> {
    fn draws(&self) -> u64 {
        self.trials.max(self.bound_draws)
    }

    fn block(&self, start: u64, end: u64) -> Result<Tally> {
        let mapper = self.scenario.mapper;
        let words = 1u32 << mapper.bits_per_symbol();
        let mut tally = Tally::zeros(self.powers_w.len());
        for i in start..end {
            let mut rng = trial_rng(self.seed, i);
            let trial = self.scenario.prepare(&mut rng)?;
            tally.redraws += trial.redraws as u64;
            if i < self.bound_draws {
                for (k, &p) in self.powers_w.iter().enumerate() {
                    tally.bound[k] += union_bound(&trial.link, p);
                }
            }
            if i >= self.trials {
                continue;
            }
            let sym = mapper.modulate_word(rng.random_range(0..words));
            let noise = trial.link.filtered_noise(&mut rng);
            for (k, &p) in self.powers_w.iter().enumerate() {
                let z = trial.link.signal(sym.codeword, sym.point, p) + &noise;
                let detected = trial.link.ml_detect(&z, p);
                let e = mapper.bit_errors((sym.codeword, sym.symbol), detected) as u64;
                tally.errors[k] += e;
                tally.squares[k] += e * e;
            }
        }
        Ok(tally)
    }

    /// Blocks run in parallel and are merged in index order.
    fn run(&self, threads: Option<usize>) -> Result<Tally> {
        let n = self.draws();
        let blocks = n.div_ceil(BLOCK);
        let parts: Vec<Result<Tally>> = with_threads(threads, || {
            (0..blocks)
                .into_par_iter()
                .map(|blk| {
                    let start = blk * BLOCK;
                    self.block(start, (start + BLOCK).min(n))
                })
                .collect()
        })?;
        parts.into_iter().try_fold(
            Tally::zeros(self.powers_w.len()),
            |acc, t| Ok(acc.merge(t?)),
        )
    }
}

/// Monte Carlo ABER curve with the union bound at every power.
///
/// `trials_per_point = 0` yields an empty curve.
pub fn run_curve(config: &SimConfig) -> Result<BerCurve> {
    config.validate()?;
    let scenario = Scenario::from_config(config)?;
    let mapper = scenario.mapper;
    let eta = mapper.bits_per_symbol();
    let mut curve = BerCurve {
        strategy: config.strategy,
        m: config.m,
        b: mapper.codebook_order(),
        seed: config.seed,
        bits_per_symbol: eta,
        power_dbm: Vec::new(),
        trials: Vec::new(),
        bit_errors: Vec::new(),
        squared_errors: Vec::new(),
        aber_sim: Vec::new(),
        aber_bound: Vec::new(),
        redraws: 0,
    };
    let trials = config.trials_per_point;
    if trials == 0 || config.powers_dbm.is_empty() {
        return Ok(curve);
    }
    log::info!(
        "curve: {} B={} M={} trials={} powers={:?}",
        config.strategy,
        curve.b,
        config.m,
        trials,
        config.powers_dbm
    );
    let powers_w: Vec<f64> = config.powers_dbm.iter().map(|&p| dbm_to_watts(p)).collect();
    let plan = Plan {
        scenario: &scenario,
        seed: config.seed,
        powers_w: &powers_w,
        trials,
        bound_draws: config.bound_realizations,
    };
    let tally = plan.run(config.threads)?;
    let bound = if config.bound_realizations == 0 {
        vec![f64::NAN; powers_w.len()]
    } else {
        let n = config.bound_realizations as f64;
        tally.bound.iter().map(|s| s / n).collect()
    };
    curve.power_dbm = config.powers_dbm.clone();
    curve.trials = vec![trials; powers_w.len()];
    curve.aber_sim = tally
        .errors
        .iter()
        .map(|&e| e as f64 / (trials * eta as u64) as f64)
        .collect();
    curve.bit_errors = tally.errors;
    curve.squared_errors = tally.squares;
    curve.aber_bound = bound;
    curve.redraws = tally.redraws;
    for i in 0..curve.len() {
        log::info!(
            "  P={:>6.1} dBm  aber={:.3e}  bound={:.3e}",
            curve.power_dbm[i],
            curve.aber_sim[i],
            curve.aber_bound[i]
        );
    }
    Ok(curve)
}

/// One row of a sweep table; every row carries the full parameter set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub strategy: Strategy,
    pub nt_x: usize,
    pub nt_y: usize,
    pub nris_x: usize,
    pub nris_y: usize,
    pub clusters: usize,
    pub paths: usize,
    pub delta_deg: f64,
    pub power_dbm: f64,
    pub trials: u64,
    pub bit_errors: u64,
    pub aber_sim: f64,
    pub std_error: f64,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "B")]
    pub b: usize,
    pub seed: u64,
}

fn rows_from_curve(config: &SimConfig, curve: &BerCurve) -> Vec<SweepRow> {
    (0..curve.len())
        .map(|i| SweepRow {
            strategy: curve.strategy,
            nt_x: config.nt[0],
            nt_y: config.nt[1],
            nris_x: config.n_ris[0],
            nris_y: config.n_ris[1],
            clusters: config.num_clusters,
            paths: config.paths_per_cluster,
            delta_deg: config.angle_perturb_deg.unwrap_or(0.0),
            power_dbm: curve.power_dbm[i],
            trials: curve.trials[i],
            bit_errors: curve.bit_errors[i],
            aber_sim: curve.aber_sim[i],
            std_error: curve.standard_error(i),
            m: curve.m,
            b: curve.b,
            seed: curve.seed,
        })
        .collect()
}

/// Tx/Rx and RIS sizes for one array-sweep row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArraySize {
    /// Tx and Rx UPA `[nx, ny]`.
    pub antennas: [usize; 2],
    /// RIS UPA `[nx, ny]`.
    pub ris: [usize; 2],
}

impl ArraySize {
    pub fn square(antennas: usize, ris: usize) -> Self {
        Self {
            antennas: [antennas, antennas],
            ris: [ris, ris],
        }
    }
}

/// ABER at `sweep_power_dbm` for every array size. All rows share the
/// master seed.
pub fn run_array_sweep(config: &SimConfig, sizes: &[ArraySize]) -> Result<Vec<SweepRow>> {
    if sizes.is_empty() {
        return Err(Error::Config("array sweep needs at least one size".into()));
    }
    let mut rows = Vec::new();
    for size in sizes {
        let cfg = SimConfig {
            nt: size.antennas,
            nr: size.antennas,
            n_ris: size.ris,
            powers_dbm: vec![config.sweep_power_dbm],
            bound_realizations: 0,
            ..config.clone()
        };
        rows.extend(rows_from_curve(&cfg, &run_curve(&cfg)?));
    }
    Ok(rows)
}

/// ABER at `sweep_power_dbm` over a `(clusters × paths)` grid for each
/// strategy.
pub fn run_sparsity_sweep(
    config: &SimConfig,
    cluster_counts: &[usize],
    path_counts: &[usize],
    strategies: &[Strategy],
) -> Result<Vec<SweepRow>> {
    if cluster_counts.is_empty() || path_counts.is_empty() || strategies.is_empty() {
        return Err(Error::Config(
            "sparsity sweep needs non-empty cluster, path and strategy lists".into(),
        ));
    }
    let mut rows = Vec::new();
    for &strategy in strategies {
        for &c in cluster_counts {
            for &l in path_counts {
                let cfg = SimConfig {
                    strategy,
                    num_clusters: c,
                    paths_per_cluster: l,
                    powers_dbm: vec![config.sweep_power_dbm],
                    bound_realizations: 0,
                    ..config.clone()
                };
                rows.extend(rows_from_curve(&cfg, &run_curve(&cfg)?));
            }
        }
    }
    Ok(rows)
}

/// ABER over `powers_dbm` for each cluster displacement in `deltas_deg`.
/// Codebooks are built from the undisplaced channel.
pub fn run_perturbation_sweep(config: &SimConfig, deltas_deg: &[f64]) -> Result<Vec<SweepRow>> {
    if deltas_deg.is_empty() {
        return Err(Error::Config("perturbation sweep needs deltas".into()));
    }
    let mut rows = Vec::new();
    for &d in deltas_deg {
        if !(d >= 0.0) {
            return Err(Error::Config(format!("delta must be >= 0, got {d}")));
        }
        let cfg = SimConfig {
            angle_perturb_deg: Some(d),
            bound_realizations: 0,
            ..config.clone()
        };
        rows.extend(rows_from_curve(&cfg, &run_curve(&cfg)?));
    }
    Ok(rows)
}

/// Transmit power (dBm) at which a decreasing ABER curve reaches `target`,
/// interpolating `log10(ABER)` linearly in dB. `None` if never crossed.
pub fn power_at_aber(points: &[(f64, f64)], target: f64) -> Option<f64> {
    points.windows(2).find_map(|w| {
        let ((p0, a0), (p1, a1)) = (w[0], w[1]);
        if a0 >= target && a1 <= target && a0 > 0.0 && a1 > 0.0 && a0 != a1 {
            let (l0, l1, lt) = (a0.log10(), a1.log10(), target.log10());
            Some(p0 + (p1 - p0) * (lt - l0) / (l1 - l0))
        } else if a0 == target {
            Some(p0)
        } else {
            None
        }
    })
}

/// Extra power the `degraded` curve needs to reach the ABER the `reference`
/// curve attains at `reference_dbm`.
pub fn power_offset_db(
    reference: &[(f64, f64)],
    degraded: &[(f64, f64)],
    reference_dbm: f64,
) -> Option<f64> {
    let target = reference.iter().find(|(p, _)| *p == reference_dbm)?.1;
    Some(power_at_aber(degraded, target)? - reference_dbm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_interpolation() {
        let curve = [(0.0, 1e-1), (10.0, 1e-2), (20.0, 1e-3)];
        assert!((power_at_aber(&curve, 1e-2).unwrap() - 10.0).abs() < 1e-12);
        assert!((power_at_aber(&curve, 10f64.powf(-2.5)).unwrap() - 15.0).abs() < 1e-9);
        assert!(power_at_aber(&curve, 1e-5).is_none());
        let shifted = [(0.0, 0.3), (10.0, 1e-1), (20.0, 1e-2), (30.0, 1e-3)];
        assert!((power_offset_db(&curve, &shifted, 10.0).unwrap() - 10.0).abs() < 1e-9);
    }

    #[test]
    fn standard_error_of_constant_errors_is_zero() {
        assert_eq!(standard_error(10, 20, 40, 2), 0.0);
        assert!(standard_error(0, 0, 0, 2).is_nan());
    }
}
