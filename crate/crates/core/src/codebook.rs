//! CIM codebook and analog combiner construction.
//!
//! The effective gain of path `(u, v)` is the end-to-end amplitude seen when
//! the RIS is steered toward that path's departure and the receiver
//! combines along its arrival:
//!
//! ```text
//! 𝒢_uv = (√P·G_tG_r/√N) · a_rx(arr_uv)ᴴ · R · diag(a_ris(dep_uv)) · G · f_t
//! ```
//!
//! BGCS-CIM represents every cluster by its best path and greedily indexes
//! the `B` clusters with the largest `|𝒢|²`. Codeword `k` is the RIS phase
//! profile of the `k`-th selected path and combiner column `k` its receive
//! steering vector; codeword order is selection order, which fixes the bit
//! mapping (index `k` carries the natural-binary word of `k`).
//!
//! `𝒢` is only used to rank candidates. The physical reflection is the
//! unit-modulus `diag(b)` with `b = √N·a_ris(dep)`, so `𝒢` differs from the
//! realized branch amplitude by the constant `√P/√N`.

use std::io::Write;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::channel::{ChannelRealization, PathAngles};
use crate::{Error, Result};

/// Codebook construction rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    /// Best-gain cluster selection over the full cascaded channel.
    #[serde(rename = "bgcs-cim")]
    Bgcs,
    /// Cluster selection from the RIS→Rx channel alone.
    #[serde(rename = "simple-cim")]
    SimpleCim,
    /// Strongest individual paths, cluster membership ignored.
    #[serde(rename = "ssm")]
    Ssm,
    /// One random cluster, no index bits.
    #[serde(rename = "rcs")]
    Rcs,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [Self::Bgcs, Self::SimpleCim, Self::Ssm, Self::Rcs];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Bgcs => "bgcs-cim",
            Self::SimpleCim => "simple-cim",
            Self::Ssm => "ssm",
            Self::Rcs => "rcs",
        }
    }

    /// Codebook order actually used for a requested order.
    pub fn effective_order(&self, requested: usize) -> usize {
        match self {
            Self::Rcs => 1,
            _ => requested,
        }
    }

    /// Whether selected entries must come from distinct clusters.
    pub fn indexes_clusters(&self) -> bool {
        !matches!(self, Self::Ssm)
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bgcs-cim" | "bgcs" => Ok(Self::Bgcs),
            "simple-cim" | "simple" | "cim" => Ok(Self::SimpleCim),
            "ssm" => Ok(Self::Ssm),
            "rcs" => Ok(Self::Rcs),
            _ => Err(Error::UnknownStrategy(s.to_string())),
        }
    }
}

/// Indexed propagation path `(cluster, path)`, both 0-based.
pub type PathIndex = (usize, usize);

/// Direction a codeword and its combiner column are steered toward.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BeamTarget {
    /// Departure/arrival of one path.
    Path(usize, usize),
    /// Mean departure/arrival of a cluster.
    ClusterMean(usize),
}

impl BeamTarget {
    pub fn cluster(&self) -> usize {
        match *self {
            Self::Path(c, _) | Self::ClusterMean(c) => c,
        }
    }

    pub fn path(&self) -> Option<usize> {
        match *self {
            Self::Path(_, l) => Some(l),
            Self::ClusterMean(_) => None,
        }
    }

    fn angles(&self, h: &ChannelRealization) -> Result<PathAngles> {
        match *self {
            Self::Path(c, l) => h
                .clusters
                .path(c, l)
                .copied()
                .ok_or_else(|| Error::IndexOutOfRange(format!("path ({c}, {l})"))),
            Self::ClusterMean(c) => h
                .clusters
                .clusters()
                .get(c)
                .map(|cl| PathAngles {
                    departure: cl.departure_mean,
                    arrival: cl.arrival_mean,
                })
                .ok_or_else(|| Error::IndexOutOfRange(format!("cluster {c}"))),
        }
    }
}

/// RIS phase codewords with their matched combiner.
#[derive(Debug, Clone, PartialEq)]
pub struct CimCodebook {
    /// `B` unit-modulus vectors of length `N`.
    pub codewords: Vec<DVector<Complex64>>,
    /// `N_r × B`, unit-norm columns.
    pub combiner: DMatrix<Complex64>,
    pub selected: Vec<BeamTarget>,
    pub strategy: Strategy,
}

impl CimCodebook {
    /// Codebook order `B`.
    pub fn order(&self) -> usize {
        self.codewords.len()
    }

    /// `log2 B`.
    pub fn index_bits(&self) -> usize {
        self.order().trailing_zeros() as usize
    }

    /// Per-element reflection phases of every codeword, in radians.
    pub fn phases(&self) -> Vec<Vec<f64>> {
        self.codewords
            .iter()
            .map(|b| b.iter().map(|z| z.arg()).collect())
            .collect()
    }

    /// Writes the control-link payload as CSV:
    /// `codeword,cluster,path,element,phase_rad` (`path` is `mean` for
    /// cluster-mean beams).
    pub fn write_csv<W: Write>(&self, writer: W) -> std::result::Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["codeword", "cluster", "path", "element", "phase_rad"])?;
        for (k, (phases, target)) in self.phases().iter().zip(&self.selected).enumerate() {
            let path = target.path().map_or("mean".to_string(), |l| l.to_string());
            for (e, ph) in phases.iter().enumerate() {
                w.write_record([
                    k.to_string(),
                    target.cluster().to_string(),
                    path.clone(),
                    e.to_string(),
                    ph.to_string(),
                ])?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

/// Precomputes `G·f_t` so that many path gains can be evaluated cheaply.
pub struct PathGainEvaluator<'a> {
    realization: &'a ChannelRealization,
    illumination: DVector<Complex64>,
    prefactor: f64,
}

impl<'a> PathGainEvaluator<'a> {
    /// `gain_amplitude` is the linear `G_t·G_r` amplitude product.
    pub fn new(
        realization: &'a ChannelRealization,
        f_t: &DVector<Complex64>,
        power_w: f64,
        gain_amplitude: f64,
    ) -> Result<Self> {
        if f_t.len() != realization.g.ncols() {
            return Err(Error::DimensionMismatch(format!(
                "beamformer has {} entries, G has {} columns",
                f_t.len(),
                realization.g.ncols()
            )));
        }
        let n = realization.arrays.ris.len() as f64;
        Ok(Self {
            realization,
            illumination: &realization.g * f_t,
            prefactor: power_w.sqrt() * gain_amplitude / n.sqrt(),
        })
    }

    /// `𝒢_uv`.
    pub fn gain(&self, u: usize, v: usize) -> Result<Complex64> {
        let h = self.realization;
        let p = h.clusters.path(u, v).ok_or_else(|| {
            Error::IndexOutOfRange(format!(
                "path ({u}, {v}) in a {}x{} channel",
                h.num_clusters(),
                h.paths_per_cluster()
            ))
        })?;
        let a_ris = h.arrays.ris.steering_vector(p.departure);
        let a_rx = h.arrays.rx.steering_vector(p.arrival);
        let x = a_ris.component_mul(&self.illumination);
        let y = &h.r * x;
        Ok(a_rx.dotc(&y) * self.prefactor)
    }

    /// `|𝒢_uv|²` for every path, `C × L`.
    pub fn all_power_gains(&self) -> DMatrix<f64> {
        let h = self.realization;
        DMatrix::from_fn(h.num_clusters(), h.paths_per_cluster(), |u, v| {
            self.gain(u, v).map(|g| g.norm_sqr()).unwrap_or(0.0)
        })
    }
}

/// `𝒢_uv` for one path.
pub fn effective_path_gain(
    realization: &ChannelRealization,
    f_t: &DVector<Complex64>,
    u: usize,
    v: usize,
    power_w: f64,
    gain_amplitude: f64,
) -> Result<Complex64> {
    PathGainEvaluator::new(realization, f_t, power_w, gain_amplitude)?.gain(u, v)
}

/// Beam gain of every cluster through `R` alone,
/// `|a_rx(arr_c)ᴴ · R · a_ris(dep_c)|²` at the cluster mean angles.
pub fn cluster_mean_gains(realization: &ChannelRealization) -> Vec<f64> {
    let h = realization;
    h.clusters
        .clusters()
        .iter()
        .map(|c| {
            let a_ris = h.arrays.ris.steering_vector(c.departure_mean);
            let a_rx = h.arrays.rx.steering_vector(c.arrival_mean);
            a_rx.dotc(&(&h.r * a_ris)).norm_sqr()
        })
        .collect()
}

/// Index of the largest entry; ties go to the lowest index.
fn argmax(values: impl IntoIterator<Item = f64>) -> usize {
    let mut best = (0, f64::NEG_INFINITY);
    for (i, v) in values.into_iter().enumerate() {
        if v > best.1 {
            best = (i, v);
        }
    }
    best.0
}

/// Best path of every cluster from a `C × L` table of power gains.
fn best_paths(power: &DMatrix<f64>) -> Vec<usize> {
    power
        .row_iter()
        .map(|row| argmax(row.iter().copied()))
        .collect()
}

/// `p_c = argmax_i |𝒢_ci|²` for every cluster (0-based path indices).
pub fn best_path_per_cluster(
    realization: &ChannelRealization,
    f_t: &DVector<Complex64>,
    power_w: f64,
    gain_amplitude: f64,
) -> Result<Vec<usize>> {
    let eval = PathGainEvaluator::new(realization, f_t, power_w, gain_amplitude)?;
    Ok(best_paths(&eval.all_power_gains()))
}

/// Greedy selection of `order` clusters by the gain of their best path.
/// Returns `(cluster, path)` in selection order.
pub fn select_clusters(power: &DMatrix<f64>, order: usize) -> Vec<PathIndex> {
    let best = best_paths(power);
    let mut remaining: Vec<usize> = (0..power.nrows()).collect();
    let mut selected = Vec::with_capacity(order);
    for _ in 0..order.min(power.nrows()) {
        let pos = argmax(remaining.iter().map(|&c| power[(c, best[c])]));
        let c = remaining.remove(pos);
        selected.push((c, best[c]));
    }
    selected
}

/// The `order` strongest individual paths, cluster membership ignored.
fn select_paths(power: &DMatrix<f64>, order: usize) -> Vec<PathIndex> {
    let l = power.ncols();
    let mut all: Vec<(PathIndex, f64)> = (0..power.nrows())
        .flat_map(|c| (0..l).map(move |p| (c, p)))
        .map(|(c, p)| ((c, p), power[(c, p)]))
        .collect();
    // Stable sort keeps lowest index first on ties.
    all.sort_by(|a, b| b.1.total_cmp(&a.1));
    all.into_iter().take(order).map(|(ix, _)| ix).collect()
}

fn to_targets(paths: Vec<PathIndex>) -> Vec<BeamTarget> {
    paths
        .into_iter()
        .map(|(c, l)| BeamTarget::Path(c, l))
        .collect()
}

fn check_order(order: usize, limit: usize, what: &str) -> Result<()> {
    if order == 0 || !order.is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "codebook order must be a power of two, got {order}"
        )));
    }
    if order > limit {
        return Err(Error::InvalidParameter(format!(
            "codebook order {order} exceeds the {limit} available {what}"
        )));
    }
    Ok(())
}

/// Codewords and combiner columns for a list of beam targets.
pub fn assemble(
    realization: &ChannelRealization,
    selected: Vec<BeamTarget>,
    strategy: Strategy,
) -> Result<CimCodebook> {
    let h = realization;
    let mut codewords = Vec::with_capacity(selected.len());
    let mut combiner = DMatrix::zeros(h.arrays.rx.len(), selected.len());
    for (k, target) in selected.iter().enumerate() {
        let p = target.angles(h)?;
        let a_ris = h.arrays.ris.steering_vector(p.departure);
        codewords.push(a_ris.map(|z| z / z.norm()));
        combiner.set_column(k, &h.arrays.rx.steering_vector(p.arrival));
    }
    Ok(CimCodebook {
        codewords,
        combiner,
        selected,
        strategy,
    })
}

/// BGCS-CIM codebook of order `order`.
pub fn build_bgcs_codebook(
    realization: &ChannelRealization,
    f_t: &DVector<Complex64>,
    order: usize,
    power_w: f64,
    gain_amplitude: f64,
) -> Result<CimCodebook> {
    check_order(order, realization.num_clusters(), "clusters")?;
    let eval = PathGainEvaluator::new(realization, f_t, power_w, gain_amplitude)?;
    let selected = select_clusters(&eval.all_power_gains(), order);
    assemble(realization, to_targets(selected), Strategy::Bgcs)
}

/// Benchmark codebooks.
///
/// - `SimpleCim` ranks clusters by [`cluster_mean_gains`], ignoring `G`,
///   and steers at the cluster mean angles.
/// - `Ssm` takes the `order` strongest paths by `|𝒢|²` from any cluster.
/// - `Rcs` picks one cluster uniformly at random (its best path by `|𝒢|²`)
///   and ignores `order`.
///
/// `Bgcs` is accepted and forwards to [`build_bgcs_codebook`].
pub fn build_benchmark_codebook<R: Rng + ?Sized>(
    strategy: Strategy,
    realization: &ChannelRealization,
    f_t: &DVector<Complex64>,
    order: usize,
    power_w: f64,
    gain_amplitude: f64,
    rng: &mut R,
) -> Result<CimCodebook> {
    let h = realization;
    match strategy {
        Strategy::Bgcs => build_bgcs_codebook(h, f_t, order, power_w, gain_amplitude),
        Strategy::SimpleCim => {
            check_order(order, h.num_clusters(), "clusters")?;
            let gains = cluster_mean_gains(h);
            let mut order_idx: Vec<usize> = (0..gains.len()).collect();
            order_idx.sort_by(|&a, &b| gains[b].total_cmp(&gains[a]));
            let selected = order_idx
                .into_iter()
                .take(order)
                .map(BeamTarget::ClusterMean)
                .collect();
            assemble(h, selected, strategy)
        }
        Strategy::Ssm => {
            check_order(order, h.num_clusters() * h.paths_per_cluster(), "paths")?;
            let eval = PathGainEvaluator::new(h, f_t, power_w, gain_amplitude)?;
            let selected = select_paths(&eval.all_power_gains(), order);
            assemble(h, to_targets(selected), strategy)
        }
        Strategy::Rcs => {
            let eval = PathGainEvaluator::new(h, f_t, power_w, gain_amplitude)?;
            let best = best_paths(&eval.all_power_gains());
            let c = rng.random_range(0..h.num_clusters());
            assemble(h, vec![BeamTarget::Path(c, best[c])], strategy)
        }
    }
}

/// Dispatches on `strategy`; `rng` is only consumed by `Rcs`.
pub fn build_codebook<R: Rng + ?Sized>(
    strategy: Strategy,
    realization: &ChannelRealization,
    f_t: &DVector<Complex64>,
    order: usize,
    power_w: f64,
    gain_amplitude: f64,
    rng: &mut R,
) -> Result<CimCodebook> {
    build_benchmark_codebook(
        strategy,
        realization,
        f_t,
        order,
        power_w,
        gain_amplitude,
        rng,
    )
}
