//! Link-level simulator for RIS-assisted millimeter-wave MIMO with cluster
//! index modulation (CIM).
//!
//! The transmitter sends one M-PSK stream over a line-of-sight link to a
//! reconfigurable intelligent surface. Extra bits choose which scattering
//! cluster of the RIS→Rx channel the surface steers the beam through; the
//! receiver recovers both parts with a whitened maximum-likelihood detector.
//!
//! Module map:
//!
//! - [`arrays`]: UPA geometry and steering vectors.
//! - [`channel`]: Saleh-Valenzuela cascaded channel draws and path loss.
//! - [`codebook`]: best-gain cluster selection (BGCS-CIM) and benchmark
//!   codebooks with their analog combiners.
//! - [`signal_chain`]: modulation, RIS reflection, whitening, transmission
//!   and ML detection.
//! - [`theory`]: pairwise error probabilities and the union bound on ABER.
//! - [`harness`]: configuration, Monte Carlo curves and sweeps, CSV output.
//!
//! See the `examples/` directory of this crate for one runnable program per
//! capability.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arrays;
pub mod channel;
pub mod codebook;
pub mod harness;
pub mod signal_chain;
pub mod theory;
pub mod units;

use std::path::PathBuf;

pub use arrays::{Angle2D, ArrayGeometry};
pub use channel::{ChannelModel, ChannelRealization, PathLossParams};
pub use codebook::{CimCodebook, Strategy};
pub use harness::{BerCurve, SimConfig};
pub use signal_chain::{Link, SymbolMapper, TxSymbol, WhiteningFilter};

pub use num_complex::Complex64;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid array geometry: {0}")]
    InvalidGeometry(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("expected {expected} bits, got {got}")]
    BitCount { expected: usize, got: usize },
    #[error("codeword entry {index} has modulus {modulus}, RIS reflection must be phase-only")]
    NonUnitModulus { index: usize, modulus: f64 },
    #[error("combiner is rank deficient (correlation eigenvalue ratio {ratio:e})")]
    SingularCombiner { ratio: f64 },
    #[error("unknown codebook strategy `{0}`")]
    UnknownStrategy(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("malformed record: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
