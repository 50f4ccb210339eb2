//! CSV emission.
//!
//! Curve files use the columns
//! `power_dbm,trials,bit_errors,aber_sim,aber_bound,strategy,M,B,seed`;
//! sweep files use the [`SweepRow`] columns. Floats are written in shortest
//! round-trip form, so parsing a file reproduces the values exactly.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::codebook::Strategy;
use crate::{Error, Result};

use super::runner::{BerCurve, SweepRow};

pub const CURVE_COLUMNS: [&str; 9] = [
    "power_dbm",
    "trials",
    "bit_errors",
    "aber_sim",
    "aber_bound",
    "strategy",
    "M",
    "B",
    "seed",
];

/// One data row of a curve file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub power_dbm: f64,
    pub trials: u64,
    pub bit_errors: u64,
    pub aber_sim: f64,
    pub aber_bound: f64,
    pub strategy: Strategy,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "B")]
    pub b: usize,
    pub seed: u64,
}

impl BerCurve {
    pub fn rows(&self) -> Vec<CurveRow> {
        (0..self.len())
            .map(|i| CurveRow {
                power_dbm: self.power_dbm[i],
                trials: self.trials[i],
                bit_errors: self.bit_errors[i],
                aber_sim: self.aber_sim[i],
                aber_bound: self.aber_bound[i],
                strategy: self.strategy,
                m: self.m,
                b: self.b,
                seed: self.seed,
            })
            .collect()
    }
}

fn write_rows<W: Write, T: Serialize>(writer: W, header: &[&str], rows: &[T]) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(writer);
    w.write_record(header)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub const SWEEP_COLUMNS: [&str; 16] = [
    "strategy",
    "nt_x",
    "nt_y",
    "nris_x",
    "nris_y",
    "clusters",
    "paths",
    "delta_deg",
    "power_dbm",
    "trials",
    "bit_errors",
    "aber_sim",
    "std_error",
    "M",
    "B",
    "seed",
];

pub fn write_curve<W: Write>(curve: &BerCurve, writer: W) -> csv::Result<()> {
    write_rows(writer, &CURVE_COLUMNS, &curve.rows())
}

pub fn write_sweep<W: Write>(rows: &[SweepRow], writer: W) -> csv::Result<()> {
    write_rows(writer, &SWEEP_COLUMNS, rows)
}

fn create(path: &Path) -> Result<File> {
    File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn csv_err(path: &Path) -> impl FnOnce(csv::Error) -> Error + '_ {
    move |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    }
}

/// Writes a curve file (header-only for an empty curve).
pub fn emit_curve_csv(curve: &BerCurve, path: &Path) -> Result<()> {
    write_curve(curve, create(path)?).map_err(csv_err(path))
}

pub fn emit_sweep_csv(rows: &[SweepRow], path: &Path) -> Result<()> {
    write_sweep(rows, create(path)?).map_err(csv_err(path))
}

fn read_rows<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    csv::Reader::from_reader(file)
        .deserialize()
        .collect::<csv::Result<Vec<T>>>()
        .map_err(csv_err(path))
}

pub fn read_curve_csv(path: &Path) -> Result<Vec<CurveRow>> {
    read_rows(path)
}

pub fn read_sweep_csv(path: &Path) -> Result<Vec<SweepRow>> {
    read_rows(path)
}
