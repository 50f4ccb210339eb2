//! Saleh-Valenzuela cascaded channel: a line-of-sight Tx→RIS link `G` and a
//! clustered non-line-of-sight RIS→Rx link `R`.
//!
//! ```text
//! G = α₀ · a_ris(arrival) · a_tx(departure)ᴴ
//! R = √(N·N_r/(C·L)) · Σ_c Σ_l β_cl · a_rx(arrival_cl) · a_ris(departure_cl)ᴴ
//! ```
//!
//! Gains are circularly-symmetric complex Gaussian with variance
//! `10^(−PL(d)/10)`; the shadowing term of `PL(d)` is redrawn for every
//! realization (one sample for `G`, one shared by all paths of `R`).

use std::f64::consts::{PI, TAU};
use std::io::{Read, Write};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::arrays::{Angle2D, ArrayGeometry};
use crate::{Error, Result};

/// Log-distance path loss `PL(d) = a + 10·b·log10(d) + ξ`, `ξ ~ N(0, σ_ξ²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathLossParams {
    /// Intercept `a` in dB.
    pub intercept_db: f64,
    /// Slope `b`.
    pub slope: f64,
    /// Shadow-fading standard deviation `σ_ξ` in dB.
    pub shadow_std_db: f64,
}

impl PathLossParams {
    /// 28 GHz line-of-sight fit.
    pub const LOS_28GHZ: Self = Self {
        intercept_db: 61.4,
        slope: 2.0,
        shadow_std_db: 5.8,
    };

    /// 28 GHz non-line-of-sight fit.
    pub const NLOS_28GHZ: Self = Self {
        intercept_db: 72.0,
        slope: 2.92,
        shadow_std_db: 8.7,
    };

    pub fn new(intercept_db: f64, slope: f64, shadow_std_db: f64) -> Result<Self> {
        let p = Self {
            intercept_db,
            slope,
            shadow_std_db,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.slope > 0.0) || !(self.shadow_std_db >= 0.0) || !self.intercept_db.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "path loss needs b > 0 and sigma_xi >= 0, got {self:?}"
            )));
        }
        Ok(())
    }

    /// Same model without shadow fading.
    pub fn without_shadowing(self) -> Self {
        Self {
            shadow_std_db: 0.0,
            ..self
        }
    }

    /// Draws a shadowing sample `ξ` in dB.
    pub fn sample_shadow<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let z: f64 = StandardNormal.sample(rng);
        self.shadow_std_db * z
    }
}

/// `a + 10·b·log10(d) + xi` in dB.
pub fn path_loss_db(distance: f64, params: &PathLossParams, xi: f64) -> Result<f64> {
    if !(distance > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "distance must be positive, got {distance}"
        )));
    }
    Ok(params.intercept_db + 10.0 * params.slope * distance.log10() + xi)
}

/// Draws `CN(0, variance)`: real and imaginary parts i.i.d. `N(0, variance/2)`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R, variance: f64) -> Complex64 {
    let s = (variance / 2.0).sqrt();
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(s * re, s * im)
}

/// Zero-mean Laplacian with the given standard deviation (scale `std/√2`).
pub fn laplacian<R: Rng + ?Sized>(rng: &mut R, std_dev: f64) -> f64 {
    let scale = std_dev / std::f64::consts::SQRT_2;
    // u uniform on (-1/2, 1/2); inverse CDF.
    let u: f64 = rng.random::<f64>() - 0.5;
    let mag = 1.0 - 2.0 * u.abs();
    if mag <= 0.0 {
        return 0.0;
    }
    -scale * u.signum() * mag.ln()
}

/// Angles of one propagation path of `R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathAngles {
    /// Departure direction at the RIS.
    pub departure: Angle2D,
    /// Arrival direction at the Rx.
    pub arrival: Angle2D,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    pub departure_mean: Angle2D,
    pub arrival_mean: Angle2D,
    pub paths: Vec<PathAngles>,
}

/// Cluster means and per-path angles of the RIS→Rx channel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterGeometry {
    clusters: Vec<Cluster>,
}

impl ClusterGeometry {
    /// Builds a geometry; every cluster must hold the same non-zero number of paths.
    pub fn new(clusters: Vec<Cluster>) -> Result<Self> {
        let l = clusters.first().map(|c| c.paths.len()).unwrap_or(0);
        if l == 0 || clusters.iter().any(|c| c.paths.len() != l) {
            return Err(Error::InvalidParameter(
                "cluster geometry needs >= 1 cluster with equal, non-zero path counts".into(),
            ));
        }
        Ok(Self { clusters })
    }

    pub fn clusters(&self) -> &[Cluster] {
        &self.clusters
    }

    pub fn num_clusters(&self) -> usize {
        self.clusters.len()
    }

    pub fn paths_per_cluster(&self) -> usize {
        self.clusters[0].paths.len()
    }

    pub fn path(&self, cluster: usize, path: usize) -> Option<&PathAngles> {
        self.clusters.get(cluster).and_then(|c| c.paths.get(path))
    }

    /// Moves every cluster rigidly: all departure and arrival angles (and
    /// the means) are shifted by `delta` radians in azimuth and elevation.
    pub fn shifted(&self, delta: f64) -> Self {
        let shift = |a: Angle2D| a.shifted(delta, delta);
        Self {
            clusters: self
                .clusters
                .iter()
                .map(|c| Cluster {
                    departure_mean: shift(c.departure_mean),
                    arrival_mean: shift(c.arrival_mean),
                    paths: c
                        .paths
                        .iter()
                        .map(|p| PathAngles {
                            departure: shift(p.departure),
                            arrival: shift(p.arrival),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

/// Draws cluster means uniformly (azimuth on `[0, 2π)`, elevation on
/// `[0, π)`) and Laplacian intra-cluster offsets with standard deviation
/// `spread_deg` on all four angles of every path.
pub fn sample_cluster_geometry<R: Rng + ?Sized>(
    rng: &mut R,
    num_clusters: usize,
    paths_per_cluster: usize,
    spread_deg: f64,
) -> Result<ClusterGeometry> {
    if num_clusters == 0 || paths_per_cluster == 0 {
        return Err(Error::InvalidParameter(
            "cluster and path counts must be >= 1".into(),
        ));
    }
    if !(spread_deg > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "angular spread must be positive, got {spread_deg}"
        )));
    }
    let spread = spread_deg.to_radians();
    let uniform_angle = |rng: &mut R| {
        let az = rng.random::<f64>() * TAU;
        let el = rng.random::<f64>() * PI;
        Angle2D::new(az, el)
    };
    let mut clusters = Vec::with_capacity(num_clusters);
    for _ in 0..num_clusters {
        let departure_mean = uniform_angle(rng);
        let arrival_mean = uniform_angle(rng);
        let paths = (0..paths_per_cluster)
            .map(|_| {
                let d_az = laplacian(rng, spread);
                let d_el = laplacian(rng, spread);
                let a_az = laplacian(rng, spread);
                let a_el = laplacian(rng, spread);
                PathAngles {
                    departure: departure_mean.shifted(d_az, d_el),
                    arrival: arrival_mean.shifted(a_az, a_el),
                }
            })
            .collect();
        clusters.push(Cluster {
            departure_mean,
            arrival_mean,
            paths,
        });
    }
    ClusterGeometry::new(clusters)
}

/// Direction of the Tx→RIS line-of-sight path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LosAngles {
    /// Departure direction at the Tx.
    pub departure: Angle2D,
    /// Arrival direction at the RIS.
    pub arrival: Angle2D,
}

/// How the line-of-sight angles of `G` are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum LosGeometry {
    /// Each array's broadside faces the other terminal (elevation 0).
    #[default]
    Facing,
    /// All arrays lie in the global x–y plane; angles follow from the
    /// terminal coordinates (elevation measured from +z).
    Horizontal,
    /// Uniformly random angles, redrawn per realization.
    Random,
}

impl std::str::FromStr for LosGeometry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "horizontal" => Ok(Self::Horizontal),
            "facing" => Ok(Self::Facing),
            "random" => Ok(Self::Random),
            other => Err(Error::Config(format!("unknown los geometry `{other}`"))),
        }
    }
}

/// Direction of `to` seen from `from`, for an array in the global x–y plane.
pub fn direction_angle(from: [f64; 3], to: [f64; 3]) -> Result<Angle2D> {
    let d = [to[0] - from[0], to[1] - from[1], to[2] - from[2]];
    let len = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
    if !(len > 0.0) {
        return Err(Error::InvalidParameter("terminals coincide".into()));
    }
    let elevation = (d[2] / len).clamp(-1.0, 1.0).acos();
    let azimuth = d[1].atan2(d[0]);
    Ok(Angle2D::new(azimuth, elevation))
}

pub fn distance(a: [f64; 3], b: [f64; 3]) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

impl LosGeometry {
    pub fn resolve<R: Rng + ?Sized>(
        &self,
        tx_pos: [f64; 3],
        ris_pos: [f64; 3],
        rng: &mut R,
    ) -> Result<LosAngles> {
        match self {
            Self::Horizontal => Ok(LosAngles {
                departure: direction_angle(tx_pos, ris_pos)?,
                arrival: direction_angle(ris_pos, tx_pos)?,
            }),
            Self::Facing => Ok(LosAngles {
                departure: Angle2D::new(0.0, 0.0),
                arrival: Angle2D::new(0.0, 0.0),
            }),
            Self::Random => {
                let mut draw = || Angle2D::new(rng.random::<f64>() * TAU, rng.random::<f64>() * PI);
                let departure = draw();
                let arrival = draw();
                Ok(LosAngles { departure, arrival })
            }
        }
    }
}

/// Array geometries of the three terminals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkArrays {
    pub tx: ArrayGeometry,
    pub ris: ArrayGeometry,
    pub rx: ArrayGeometry,
}

/// Rank-one LOS channel `α₀·a_ris(arrival)·a_tx(departure)ᴴ`.
pub fn los_matrix(
    tx: &ArrayGeometry,
    ris: &ArrayGeometry,
    los: &LosAngles,
    alpha0: Complex64,
) -> DMatrix<Complex64> {
    let a_ris = ris.steering_vector(los.arrival);
    let a_tx = tx.steering_vector(los.departure);
    let mut g = DMatrix::zeros(ris.len(), tx.len());
    g.gerc(alpha0, &a_ris, &a_tx, Complex64::new(0.0, 0.0));
    g
}

/// Draws `α₀` and builds `G`. `α₀ ~ CN(0, 10^(−PL(d)/10))` with a fresh
/// shadowing sample.
pub fn generate_g<R: Rng + ?Sized>(
    tx: &ArrayGeometry,
    ris: &ArrayGeometry,
    los: &LosAngles,
    distance: f64,
    params: &PathLossParams,
    rng: &mut R,
) -> Result<(DMatrix<Complex64>, Complex64)> {
    let xi = params.sample_shadow(rng);
    let pl = path_loss_db(distance, params, xi)?;
    let alpha0 = complex_gaussian(rng, 10f64.powf(-0.1 * pl));
    Ok((los_matrix(tx, ris, los, alpha0), alpha0))
}

/// `√(N·N_r/(C·L))`.
pub fn nlos_scale(ris: &ArrayGeometry, rx: &ArrayGeometry, c: usize, l: usize) -> f64 {
    ((ris.len() * rx.len()) as f64 / (c * l) as f64).sqrt()
}

/// Clustered channel `R` from explicit angles and gains (`beta` is `C×L`).
pub fn nlos_matrix(
    ris: &ArrayGeometry,
    rx: &ArrayGeometry,
    geometry: &ClusterGeometry,
    beta: &DMatrix<Complex64>,
) -> DMatrix<Complex64> {
    let (c, l) = (geometry.num_clusters(), geometry.paths_per_cluster());
    let scale = nlos_scale(ris, rx, c, l);
    let mut r = DMatrix::zeros(rx.len(), ris.len());
    for (ci, cluster) in geometry.clusters().iter().enumerate() {
        for (li, p) in cluster.paths.iter().enumerate() {
            let a_rx = rx.steering_vector(p.arrival);
            let a_ris = ris.steering_vector(p.departure);
            r.gerc(
                beta[(ci, li)] * scale,
                &a_rx,
                &a_ris,
                Complex64::new(1.0, 0.0),
            );
        }
    }
    r
}

/// Draws the path gains `β` and builds `R`. One shadowing sample is shared
/// by all paths of the realization.
pub fn generate_r<R: Rng + ?Sized>(
    ris: &ArrayGeometry,
    rx: &ArrayGeometry,
    distance: f64,
    params: &PathLossParams,
    geometry: &ClusterGeometry,
    rng: &mut R,
) -> Result<(DMatrix<Complex64>, DMatrix<Complex64>)> {
    let xi = params.sample_shadow(rng);
    let variance = 10f64.powf(-0.1 * path_loss_db(distance, params, xi)?);
    let (c, l) = (geometry.num_clusters(), geometry.paths_per_cluster());
    let mut beta = DMatrix::zeros(c, l);
    for ci in 0..c {
        for li in 0..l {
            beta[(ci, li)] = complex_gaussian(rng, variance);
        }
    }
    Ok((nlos_matrix(ris, rx, geometry, &beta), beta))
}

/// One draw of the cascaded channel together with everything needed to
/// rebuild it.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    pub arrays: LinkArrays,
    /// Tx→RIS channel, `N × N_t`.
    pub g: DMatrix<Complex64>,
    /// RIS→Rx channel, `N_r × N`.
    pub r: DMatrix<Complex64>,
    pub alpha0: Complex64,
    /// Path gains, `C × L`.
    pub beta: DMatrix<Complex64>,
    pub los: LosAngles,
    pub clusters: ClusterGeometry,
    /// `√(N·N_r/(C·L))`.
    pub scale_r: f64,
}

impl ChannelRealization {
    /// Assembles a realization from angles and gains.
    pub fn from_parts(
        arrays: LinkArrays,
        los: LosAngles,
        alpha0: Complex64,
        clusters: ClusterGeometry,
        beta: DMatrix<Complex64>,
    ) -> Result<Self> {
        if beta.shape() != (clusters.num_clusters(), clusters.paths_per_cluster()) {
            return Err(Error::DimensionMismatch(format!(
                "beta is {:?}, geometry has {}x{} paths",
                beta.shape(),
                clusters.num_clusters(),
                clusters.paths_per_cluster()
            )));
        }
        let g = los_matrix(&arrays.tx, &arrays.ris, &los, alpha0);
        let r = nlos_matrix(&arrays.ris, &arrays.rx, &clusters, &beta);
        let scale_r = nlos_scale(
            &arrays.ris,
            &arrays.rx,
            clusters.num_clusters(),
            clusters.paths_per_cluster(),
        );
        Ok(Self {
            arrays,
            g,
            r,
            alpha0,
            beta,
            los,
            clusters,
            scale_r,
        })
    }

    pub fn num_clusters(&self) -> usize {
        self.clusters.num_clusters()
    }

    pub fn paths_per_cluster(&self) -> usize {
        self.clusters.paths_per_cluster()
    }

    /// Rebuilds `G` from the stored angles and gain.
    pub fn reconstruct_g(&self) -> DMatrix<Complex64> {
        los_matrix(&self.arrays.tx, &self.arrays.ris, &self.los, self.alpha0)
    }

    /// Rebuilds `R` from the stored angles and gains.
    pub fn reconstruct_r(&self) -> DMatrix<Complex64> {
        nlos_matrix(
            &self.arrays.ris,
            &self.arrays.rx,
            &self.clusters,
            &self.beta,
        )
    }

    /// The same draw with every cluster moved by `delta` radians.
    pub fn with_cluster_shift(&self, delta: f64) -> Self {
        if delta == 0.0 {
            return self.clone();
        }
        let clusters = self.clusters.shifted(delta);
        let r = nlos_matrix(&self.arrays.ris, &self.arrays.rx, &clusters, &self.beta);
        Self {
            clusters,
            r,
            ..self.clone()
        }
    }

    /// Transmit beamformer matched to the LOS departure, `f_t = a_tx(departure)`.
    pub fn tx_beamformer(&self) -> DVector<Complex64> {
        self.arrays.tx.steering_vector(self.los.departure)
    }

    /// Writes angles (radians) and gains (re/im) as CSV.
    ///
    /// Columns: `kind,cluster,path,dep_az,dep_el,arr_az,arr_el,gain_re,gain_im`.
    /// `kind` is `los` (departure at Tx, arrival at RIS, gain `α₀`), `mean`
    /// (cluster means, zero gain) or `path` (gain `β`). Indices are 0-based.
    pub fn write_csv<W: Write>(&self, writer: W) -> std::result::Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(CHANNEL_CSV_HEADER)?;
        let row = |kind: &str, c: usize, l: usize, d: Angle2D, a: Angle2D, g: Complex64| {
            [
                kind.to_string(),
                c.to_string(),
                l.to_string(),
                d.azimuth().to_string(),
                d.elevation().to_string(),
                a.azimuth().to_string(),
                a.elevation().to_string(),
                g.re.to_string(),
                g.im.to_string(),
            ]
        };
        w.write_record(row(
            "los",
            0,
            0,
            self.los.departure,
            self.los.arrival,
            self.alpha0,
        ))?;
        for (ci, cl) in self.clusters.clusters().iter().enumerate() {
            w.write_record(row(
                "mean",
                ci,
                0,
                cl.departure_mean,
                cl.arrival_mean,
                Complex64::new(0.0, 0.0),
            ))?;
            for (li, p) in cl.paths.iter().enumerate() {
                w.write_record(row(
                    "path",
                    ci,
                    li,
                    p.departure,
                    p.arrival,
                    self.beta[(ci, li)],
                ))?;
            }
        }
        w.flush()?;
        Ok(())
    }

    /// Parses a dump written by [`write_csv`](Self::write_csv) and rebuilds
    /// the matrices for the given arrays.
    pub fn read_csv<R: Read>(reader: R, arrays: LinkArrays) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(reader);
        let mut los = None;
        let mut means: Vec<(Angle2D, Angle2D)> = Vec::new();
        let mut paths: Vec<Vec<(PathAngles, Complex64)>> = Vec::new();
        for rec in rdr.records() {
            let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
            let num = |i: usize| -> Result<f64> {
                rec.get(i)
                    .ok_or_else(|| Error::Parse(format!("missing column {i}")))?
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(e.to_string()))
            };
            let idx = |i: usize| -> Result<usize> {
                rec.get(i)
                    .ok_or_else(|| Error::Parse(format!("missing column {i}")))?
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(e.to_string()))
            };
            let dep = Angle2D::new(num(3)?, num(4)?);
            let arr = Angle2D::new(num(5)?, num(6)?);
            let gain = Complex64::new(num(7)?, num(8)?);
            match rec.get(0) {
                Some("los") => {
                    los = Some((
                        LosAngles {
                            departure: dep,
                            arrival: arr,
                        },
                        gain,
                    ))
                }
                Some("mean") => {
                    let c = idx(1)?;
                    if c != means.len() {
                        return Err(Error::Parse(format!("cluster {c} out of order")));
                    }
                    means.push((dep, arr));
                    paths.push(Vec::new());
                }
                Some("path") => {
                    let c = idx(1)?;
                    let list = paths
                        .get_mut(c)
                        .ok_or_else(|| Error::Parse(format!("path for unknown cluster {c}")))?;
                    list.push((
                        PathAngles {
                            departure: dep,
                            arrival: arr,
                        },
                        gain,
                    ));
                }
                other => return Err(Error::Parse(format!("unknown row kind {other:?}"))),
            }
        }
        let (los, alpha0) = los.ok_or_else(|| Error::Parse("missing los row".into()))?;
        let l = paths.first().map(Vec::len).unwrap_or(0);
        let mut beta = DMatrix::zeros(paths.len(), l);
        let clusters = means
            .into_iter()
            .zip(paths.iter())
            .enumerate()
            .map(|(ci, ((dm, am), ps))| {
                for (li, (_, g)) in ps.iter().enumerate() {
                    if li < l {
                        beta[(ci, li)] = *g;
                    }
                }
                Cluster {
                    departure_mean: dm,
                    arrival_mean: am,
                    paths: ps.iter().map(|(p, _)| *p).collect(),
                }
            })
            .collect();
        Self::from_parts(arrays, los, alpha0, ClusterGeometry::new(clusters)?, beta)
    }
}

pub const CHANNEL_CSV_HEADER: [&str; 9] = [
    "kind", "cluster", "path", "dep_az", "dep_el", "arr_az", "arr_el", "gain_re", "gain_im",
];

/// Everything needed to draw cascaded channel realizations.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelModel {
    pub arrays: LinkArrays,
    pub tx_pos: [f64; 3],
    pub ris_pos: [f64; 3],
    pub rx_pos: [f64; 3],
    pub los_params: PathLossParams,
    pub nlos_params: PathLossParams,
    pub num_clusters: usize,
    pub paths_per_cluster: usize,
    pub spread_deg: f64,
    pub los_geometry: LosGeometry,
}

impl ChannelModel {
    pub fn tx_ris_distance(&self) -> f64 {
        distance(self.tx_pos, self.ris_pos)
    }

    pub fn ris_rx_distance(&self) -> f64 {
        distance(self.ris_pos, self.rx_pos)
    }

    pub fn validate(&self) -> Result<()> {
        self.los_params.validate()?;
        self.nlos_params.validate()?;
        if !(self.tx_ris_distance() > 0.0 && self.ris_rx_distance() > 0.0) {
            return Err(Error::InvalidParameter(
                "terminal positions must be distinct".into(),
            ));
        }
        if self.num_clusters == 0 || self.paths_per_cluster == 0 || !(self.spread_deg > 0.0) {
            return Err(Error::InvalidParameter(
                "cluster/path counts must be >= 1 and spread > 0".into(),
            ));
        }
        Ok(())
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<ChannelRealization> {
        let los = self.los_geometry.resolve(self.tx_pos, self.ris_pos, rng)?;
        let (g, alpha0) = generate_g(
            &self.arrays.tx,
            &self.arrays.ris,
            &los,
            self.tx_ris_distance(),
            &self.los_params,
            rng,
        )?;
        let clusters = sample_cluster_geometry(
            rng,
            self.num_clusters,
            self.paths_per_cluster,
            self.spread_deg,
        )?;
        let (r, beta) = generate_r(
            &self.arrays.ris,
            &self.arrays.rx,
            self.ris_rx_distance(),
            &self.nlos_params,
            &clusters,
            rng,
        )?;
        Ok(ChannelRealization {
            arrays: self.arrays,
            g,
            r,
            alpha0,
            beta,
            los,
            scale_r: nlos_scale(
                &self.arrays.ris,
                &self.arrays.rx,
                self.num_clusters,
                self.paths_per_cluster,
            ),
            clusters,
        })
    }
}
