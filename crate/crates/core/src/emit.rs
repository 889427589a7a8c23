//! CSV and JSON documents for the command-line tool.
//!
//! Every rational is written as a `"num/den"` string (see
//! [`crate::exact::to_wire`]); the only float anywhere is the entropy, whose
//! field name carries its unit. Output is deterministic: rows are sorted and
//! JSON keys keep declaration order.

use std::io::Write;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{to_wire, BigInt, BigRational};
use crate::oracle::CheckReport;
use crate::rdm::{
    element_table, for_each_nonzero, subblock_count, thermo_g, AssemblyCaps, RdmMatrix, RdmQuery, SubBlockIndex,
    ThermoParams,
};
use crate::spectrum::{entropy, purity, SpectrumEntry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

fn io_err(e: std::io::Error) -> Error {
    Error::Integrity(format!("write failed: {e}"))
}

fn count(value: &BigInt, what: &str) -> Result<u128> {
    value
        .to_u128()
        .ok_or_else(|| Error::Integrity(format!("{what} {value} does not fit in 128 bits")))
}

fn write_json<T: Serialize>(out: &mut (impl Write + ?Sized), doc: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, doc).map_err(|e| Error::Integrity(e.to_string()))?;
    writeln!(out).map_err(io_err)
}

#[derive(Serialize)]
struct ElementRow {
    k: usize,
    #[serde(rename = "Z")]
    z: usize,
    value: String,
    count: u128,
}

#[derive(Serialize)]
struct ElementsDoc {
    #[serde(rename = "L")]
    sites: usize,
    #[serde(rename = "N")]
    up_spins: usize,
    r: usize,
    n: usize,
    elements: Vec<ElementRow>,
}

/// The `(k, Z) -> g_Z` table with sub-block sizes.
pub fn write_elements(out: &mut (impl Write + ?Sized), query: &RdmQuery, format: Format) -> Result<()> {
    let n = query.subsystem;
    let rows = element_table(query)?
        .into_iter()
        .map(|(idx, value)| {
            Ok(ElementRow {
                k: idx.k,
                z: idx.z,
                value: to_wire(&value),
                count: count(&subblock_count(n, idx.k, idx.z)?, "sub-block size")?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    match format {
        Format::Json => write_json(
            out,
            &ElementsDoc {
                sites: query.system.sites,
                up_spins: query.system.up_spins,
                r: query.system.singlet_pairs,
                n,
                elements: rows,
            },
        ),
        Format::Csv => {
            writeln!(out, "k,Z,value,count").map_err(io_err)?;
            for row in rows {
                writeln!(out, "{},{},{},{}", row.k, row.z, row.value, row.count).map_err(io_err)?;
            }
            Ok(())
        }
    }
}

/// Streams `(P, Q, value)` lines (1-based, sorted by `(P, Q)`) for the
/// nonzero entries. JSON output wraps them in
/// `{"L":..,"N":..,"r":..,"n":..,"entries":[{"P":..,"Q":..,"value":..}]}`.
struct MatrixWriter<'a, W: Write + ?Sized> {
    out: &'a mut W,
    format: Format,
    first: bool,
}

impl<'a, W: Write + ?Sized> MatrixWriter<'a, W> {
    fn begin(out: &'a mut W, query: &RdmQuery, format: Format) -> std::io::Result<Self> {
        match format {
            Format::Csv => writeln!(out, "P,Q,value")?,
            Format::Json => write!(
                out,
                "{{\"L\":{},\"N\":{},\"r\":{},\"n\":{},\"entries\":[",
                query.system.sites, query.system.up_spins, query.system.singlet_pairs, query.subsystem
            )?,
        }
        Ok(Self {
            out,
            format,
            first: true,
        })
    }

    fn entry(&mut self, p: u64, q: u64, value: &BigRational) -> std::io::Result<()> {
        let v = to_wire(value);
        match self.format {
            Format::Csv => writeln!(self.out, "{p},{q},{v}"),
            Format::Json => {
                let sep = if self.first { "\n" } else { ",\n" };
                self.first = false;
                write!(self.out, "{sep}{{\"P\":{p},\"Q\":{q},\"value\":\"{v}\"}}")
            }
        }
    }

    fn finish(self) -> std::io::Result<()> {
        match self.format {
            Format::Csv => Ok(()),
            Format::Json => writeln!(self.out, "\n]}}"),
        }
    }
}

/// Writes an already assembled matrix.
pub fn write_matrix(
    out: &mut (impl Write + ?Sized),
    query: &RdmQuery,
    matrix: &RdmMatrix,
    format: Format,
) -> Result<()> {
    let mut w = MatrixWriter::begin(out, query, format).map_err(io_err)?;
    for (p, q, v) in matrix.nonzero_entries() {
        w.entry(p as u64, q as u64, v).map_err(io_err)?;
    }
    w.finish().map_err(io_err)
}

/// Writes the nonzero entries straight from the element table, without
/// holding the matrix in memory.
pub fn stream_matrix(
    out: &mut (impl Write + ?Sized),
    query: &RdmQuery,
    caps: AssemblyCaps,
    format: Format,
) -> Result<()> {
    let mut w = MatrixWriter::begin(out, query, format).map_err(io_err)?;
    for_each_nonzero(query, caps, |p, q, v| w.entry(p, q, v))?.map_err(io_err)?;
    w.finish().map_err(io_err)
}

#[derive(Serialize)]
struct SpectrumRow {
    k: usize,
    s: usize,
    value: String,
    multiplicity: u128,
}

#[derive(Serialize)]
struct SpectrumDoc {
    #[serde(rename = "L")]
    sites: usize,
    #[serde(rename = "N")]
    up_spins: usize,
    r: usize,
    n: usize,
    entries: Vec<SpectrumRow>,
    entropy_nats: f64,
    purity: String,
}

/// Eigenvalues with multiplicities, entropy (nats) and purity. The CSV
/// form has one row per `(k, s)` and leaves the summaries out.
pub fn write_spectrum(
    out: &mut (impl Write + ?Sized),
    query: &RdmQuery,
    spectrum: &[SpectrumEntry],
    format: Format,
) -> Result<()> {
    let rows = spectrum
        .iter()
        .map(|e| {
            Ok(SpectrumRow {
                k: e.k,
                s: e.s,
                value: to_wire(&e.eigenvalue),
                multiplicity: count(&e.multiplicity, "multiplicity")?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    match format {
        Format::Json => write_json(
            out,
            &SpectrumDoc {
                sites: query.system.sites,
                up_spins: query.system.up_spins,
                r: query.system.singlet_pairs,
                n: query.subsystem,
                entries: rows,
                entropy_nats: entropy(spectrum)?,
                purity: to_wire(&purity(spectrum)),
            },
        ),
        Format::Csv => {
            writeln!(out, "k,s,value,multiplicity").map_err(io_err)?;
            for row in rows {
                writeln!(out, "{},{},{},{}", row.k, row.s, row.value, row.multiplicity).map_err(io_err)?;
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct ThermoRow {
    k: usize,
    #[serde(rename = "Z")]
    z: usize,
    value: String,
}

#[derive(Serialize)]
struct ThermoDoc {
    p: String,
    mu: String,
    n: usize,
    eta: String,
    elements: Vec<ThermoRow>,
}

/// Large-`L` limit values for every `(k, Z)`.
pub fn write_thermo(out: &mut (impl Write + ?Sized), params: &ThermoParams, format: Format) -> Result<()> {
    let rows = SubBlockIndex::all(params.subsystem)
        .map(|idx| {
            Ok(ThermoRow {
                k: idx.k,
                z: idx.z,
                value: to_wire(&thermo_g(params, idx)?),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    match format {
        Format::Json => write_json(
            out,
            &ThermoDoc {
                p: to_wire(&params.p),
                mu: to_wire(&params.mu),
                n: params.subsystem,
                eta: to_wire(params.eta()),
                elements: rows,
            },
        ),
        Format::Csv => {
            writeln!(out, "k,Z,value").map_err(io_err)?;
            for row in rows {
                writeln!(out, "{},{},{}", row.k, row.z, row.value).map_err(io_err)?;
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct ReportDoc<'a, G: Serialize> {
    #[serde(skip_serializing_if = "Option::is_none")]
    grid: Option<&'a G>,
    checks: &'a [crate::oracle::Check],
}

/// `{"grid":..,"checks":[{"name":..,"pass":..,"detail":..}]}`; `grid` is
/// omitted when `None`. CSV gives `name,pass,detail` with the detail quoted.
pub fn write_report<G: Serialize>(
    out: &mut (impl Write + ?Sized),
    report: &CheckReport,
    grid: Option<&G>,
    format: Format,
) -> Result<()> {
    match format {
        Format::Json => write_json(
            out,
            &ReportDoc {
                grid,
                checks: &report.checks,
            },
        ),
        Format::Csv => {
            writeln!(out, "name,pass,detail").map_err(io_err)?;
            for c in &report.checks {
                writeln!(out, "{},{},\"{}\"", c.name, c.pass, c.detail.replace('"', "\"\"")).map_err(io_err)?;
            }
            Ok(())
        }
    }
}
