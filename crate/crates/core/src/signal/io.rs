//! CSV and JSON encodings of real signals.
//!
//! CSV: header `sample`, then one value per row. JSON: `{d, samples, magnitudes, phases}`.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::spectrum::dft;
use crate::error::{invalid, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignalRecord {
    pub d: usize,
    pub samples: Vec<f64>,
    pub magnitudes: Vec<f64>,
    pub phases: Vec<f64>,
}

impl SignalRecord {
    pub fn from_samples(samples: &[f64]) -> Result<Self> {
        let spectrum = dft(samples)?;
        Ok(Self {
            d: samples.len(),
            samples: samples.to_vec(),
            magnitudes: spectrum.magnitudes().to_vec(),
            phases: spectrum.phases().to_vec(),
        })
    }
}

pub fn write_signal_csv<W: Write>(writer: W, samples: &[f64]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["sample"])?;
    for v in samples {
        w.write_record([v.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_signal_csv<R: Read>(reader: R) -> Result<Vec<f64>> {
    let mut r = csv::Reader::from_reader(reader);
    let mut out = Vec::new();
    for (row, rec) in r.records().enumerate() {
        let rec = rec?;
        let field = rec.get(0).unwrap_or("");
        let v: f64 = field
            .trim()
            .parse()
            .map_err(|_| invalid(format!("row {}: not a number: {field:?}", row + 2)))?;
        out.push(v);
    }
    Ok(out)
}

pub fn write_signal_json<W: Write>(writer: W, samples: &[f64]) -> Result<()> {
    serde_json::to_writer_pretty(writer, &SignalRecord::from_samples(samples)?)?;
    Ok(())
}

pub fn read_signal_json<R: Read>(reader: R) -> Result<SignalRecord> {
    let rec: SignalRecord = serde_json::from_reader(reader)?;
    if rec.samples.len() != rec.d {
        return Err(invalid(format!("record declares d = {} but has {} samples", rec.d, rec.samples.len())));
    }
    Ok(rec)
}
