//! Serializable views of solver results and the JSON/CSV writers.
//!
//! Every document has the shape `{schema_version, command, config, result}`.
//! Floats are printed with 17 significant digits; NaN and infinities become
//! `null`.

use std::io;

use flett_core::solver::StageRecord;
use flett_core::theorems::{BoundaryCheck, TwoFunctionSign};
use flett_core::{CascadeWitness, ConditionReport, SolverConfig, Witness};
use serde::Serialize;
use serde_json::ser::Formatter;

pub const SCHEMA_VERSION: u32 = 1;

/// Compact JSON with fixed-width scientific floats.
struct SignificantDigits;

impl Formatter for SignificantDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_float(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// `{:.16e}`: 17 significant digits, enough to round-trip any `f64`.
pub fn format_float(value: f64) -> String {
    format!("{value:.16e}")
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SignificantDigits);
    value.serialize(&mut ser).expect("in-memory serialization");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

#[derive(Debug, Serialize)]
pub struct Document<'a, C: Serialize, R: Serialize> {
    pub schema_version: u32,
    pub command: &'a str,
    pub config: C,
    pub result: R,
}

pub fn document<C: Serialize, R: Serialize>(command: &str, config: C, result: R) -> String {
    to_json(&Document {
        schema_version: SCHEMA_VERSION,
        command,
        config,
        result,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SolverEcho {
    pub grid: usize,
    pub solve_tol: f64,
    pub boundary_tol: f64,
    pub degenerate_tol: f64,
    pub max_grid_doublings: u32,
    pub noise_tol: f64,
    pub left_clearance: f64,
    pub policy: &'static str,
}

impl From<&SolverConfig> for SolverEcho {
    fn from(c: &SolverConfig) -> Self {
        SolverEcho {
            grid: c.grid,
            solve_tol: c.solve_tol,
            boundary_tol: c.boundary_tol,
            degenerate_tol: c.degenerate_tol,
            max_grid_doublings: c.max_grid_doublings,
            noise_tol: c.noise_tol,
            left_clearance: c.left_clearance,
            policy: c.policy.name(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundaryOut {
    pub required: bool,
    pub at_a: f64,
    pub at_b: f64,
    pub gap: f64,
    pub tolerance: f64,
    pub holds: bool,
}

impl From<&BoundaryCheck> for BoundaryOut {
    fn from(b: &BoundaryCheck) -> Self {
        BoundaryOut {
            required: b.required,
            at_a: b.at_a,
            at_b: b.at_b,
            gap: b.gap,
            tolerance: b.tolerance,
            holds: b.holds,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessOut {
    pub theorem: &'static str,
    pub status: &'static str,
    pub eta: f64,
    pub residual: f64,
    pub bracket: [f64; 2],
    pub iterations: usize,
    pub roots: Vec<f64>,
    pub grid_used: usize,
    pub scale: f64,
    pub policy: &'static str,
    pub boundary: BoundaryOut,
}

impl From<&Witness> for WitnessOut {
    fn from(w: &Witness) -> Self {
        WitnessOut {
            theorem: w.variant.name(),
            status: w.status.name(),
            eta: w.eta,
            residual: w.residual_at_eta,
            bracket: [w.bracket.0, w.bracket.1],
            iterations: w.iterations,
            roots: w.roots.clone(),
            grid_used: w.grid_used,
            scale: w.scale,
            policy: w.policy.name(),
            boundary: (&w.boundary).into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StageOut {
    pub k: usize,
    pub upper: f64,
    pub u: f64,
    pub flett_residual: f64,
    pub identity_residual: f64,
    pub derivative_at_a: f64,
    pub derivative_at_upper: f64,
    pub degenerate: bool,
    pub candidates: usize,
}

impl From<&StageRecord> for StageOut {
    fn from(s: &StageRecord) -> Self {
        StageOut {
            k: s.k,
            upper: s.upper,
            u: s.u,
            flett_residual: s.flett_residual,
            identity_residual: s.identity_residual,
            derivative_at_a: s.derivative_at_a,
            derivative_at_upper: s.derivative_at_upper,
            degenerate: s.degenerate,
            candidates: s.candidates,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CascadeOut {
    pub chain: Vec<f64>,
    pub eta: f64,
    pub final_residual: f64,
    pub stage_residuals: Vec<f64>,
    pub nested: bool,
    pub unconstrained: bool,
    pub scale: f64,
    pub policy: &'static str,
    pub stage_scans: usize,
    pub boundary: BoundaryOut,
    pub stages: Vec<StageOut>,
}

impl CascadeOut {
    pub fn new(c: &CascadeWitness, a: f64, b: f64) -> Self {
        CascadeOut {
            chain: c.chain.clone(),
            eta: c.eta,
            final_residual: c.final_residual,
            stage_residuals: c.stage_residuals.clone(),
            nested: c.is_strictly_nested(a, b),
            unconstrained: c.unconstrained,
            scale: c.scale,
            policy: c.policy.name(),
            stage_scans: c.stage_scans,
            boundary: (&c.boundary).into(),
            stages: c.stages.iter().map(StageOut::from).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionOut {
    pub left_factor: f64,
    pub right_factor: f64,
    pub product: f64,
    pub m_f: f64,
    pub satisfied: bool,
    pub tolerance_used: f64,
}

impl From<&ConditionReport> for ConditionOut {
    fn from(r: &ConditionReport) -> Self {
        ConditionOut {
            left_factor: r.left_factor,
            right_factor: r.right_factor,
            product: r.product,
            m_f: r.m_f,
            satisfied: r.satisfied,
            tolerance_used: r.tolerance_used,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TwoFunctionOut {
    pub k_ratio: f64,
    pub f_at_a: f64,
    pub f_at_b: f64,
    pub f_prime_at_b: f64,
    pub product: f64,
    /// `product ≤ 0` up to the tolerance.
    pub satisfied: bool,
    pub tolerance_used: f64,
}

impl TwoFunctionOut {
    pub fn new(s: &TwoFunctionSign, tolerance: f64) -> Self {
        TwoFunctionOut {
            k_ratio: s.k_ratio,
            f_at_a: s.f_at_a,
            f_at_b: s.f_at_b,
            f_prime_at_b: s.f_prime_at_b,
            product: s.product,
            satisfied: s.product <= tolerance,
            tolerance_used: tolerance,
        }
    }
}

/// Writes a header and rows of floats as CSV.
pub fn write_csv<W: io::Write>(writer: W, header: &[&str], rows: &[Vec<f64>]) -> csv::Result<()> {
    let records: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|&v| csv_field(v)).collect()).collect();
    write_records(writer, header, &records)
}

/// Writes a header and preformatted rows as CSV.
pub fn write_records<W: io::Write>(writer: W, header: &[&str], rows: &[Vec<String>]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Empty field for non-finite values, 17 significant digits otherwise.
pub fn csv_field(v: f64) -> String {
    if v.is_finite() {
        format_float(v)
    } else {
        String::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip_and_nan_is_null() {
        #[derive(Serialize)]
        struct Probe {
            x: f64,
            y: f64,
            z: Vec<f64>,
        }
        let json = to_json(&Probe {
            x: 0.1,
            y: f64::NAN,
            z: vec![16.0, -1.0 / 3.0],
        });
        assert_eq!(
            json,
            r#"{"x":1.0000000000000001e-1,"y":null,"z":[1.6000000000000000e1,-3.3333333333333331e-1]}"#
        );
        let back: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(back["x"].as_f64(), Some(0.1));
        assert_eq!(back["z"][1].as_f64(), Some(-1.0 / 3.0));
    }

    #[test]
    fn document_envelope_order() {
        let json = document("taylor", SolverEcho::from(&SolverConfig::default()), 1.5);
        assert!(json.starts_with(r#"{"schema_version":1,"command":"taylor","config":{"grid":1024,"#));
        assert!(json.ends_with(r#""result":1.5000000000000000e0}"#));
    }

    #[test]
    fn csv_rows() {
        let mut out = Vec::new();
        write_csv(&mut out, &["x", "f"], &[vec![0.5, f64::NAN]]).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "x,f\n5.0000000000000000e-1,\n");
    }
}
