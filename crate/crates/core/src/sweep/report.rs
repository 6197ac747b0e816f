use std::fmt;
use std::path::Path;
use std::str::FromStr;

use super::InstanceRecord;
use crate::error::{Error, Result};
use crate::graph::{TargetFamily, TargetKind};
use crate::hardness::{hardness_delta, main_bound_rhs};
use crate::scalar::{int, parse_rational, to_f64, Rational};

pub const SCHEMA_LINE: &str = "# tripack-sweep schema 1";

/// Environment-dependent columns, excluded from determinism comparisons.
pub const TIME_COLUMNS: [&str; 4] = ["time_lp_ms", "time_exact_ms", "time_approx_ms", "time_total_ms"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
    Plotdata,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            "plotdata" => Ok(Self::Plotdata),
            _ => Err(Error::ConfigInvalid(format!("unknown report format `{s}`"))),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Csv => "csv",
            Self::Json => "json",
            Self::Plotdata => "plotdata",
        })
    }
}

impl ReportFormat {
    pub fn extension(&self) -> &'static str {
        match self {
            Self::Csv => "csv",
            Self::Json => "json",
            Self::Plotdata => "dat",
        }
    }

    pub fn render(&self, records: &[InstanceRecord]) -> Result<String> {
        if records.is_empty() {
            return Err(Error::ReportRejected("no records to emit".into()));
        }
        match self {
            Self::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                for r in records {
                    w.serialize(r)?;
                }
                let body = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
                Ok(format!("{SCHEMA_LINE}\n{}", String::from_utf8(body).expect("csv output is utf-8")))
            }
            Self::Json => Ok(serde_json::to_string_pretty(records)? + "\n"),
            Self::Plotdata => {
                let mut out = String::from("# beta nu_over_m bound\n");
                for (beta, frac, bound) in plot_rows(records) {
                    out.push_str(&format!("{beta:.6} {frac:.6} {bound:.6}\n"));
                }
                Ok(out)
            }
        }
    }
}

/// Writes the rendered report to `path`.
pub fn emit_report(records: &[InstanceRecord], format: ReportFormat, path: &Path) -> Result<()> {
    let text = format.render(records)?;
    std::fs::write(path, text).map_err(Error::OutputUnwritable)
}

/// `(β, ν/m, (1 + β²/800)/4)` for each successful row with edges.
pub fn plot_rows(records: &[InstanceRecord]) -> Vec<(f64, f64, f64)> {
    records
        .iter()
        .filter(|r| r.status == "ok" && r.m > 0)
        .filter_map(|r| {
            let beta = parse_rational(&r.beta)?;
            let nu = r.nu.unwrap_or(r.nu_lower);
            let bound = main_bound_rhs(&beta, 1);
            Some((to_f64(&beta), nu as f64 / r.m as f64, to_f64(&bound)))
        })
        .collect()
}

fn reject(rec: &InstanceRecord, what: impl fmt::Display) -> Error {
    Error::ReportRejected(format!("record {}: {what}", rec.id))
}

fn rational(rec: &InstanceRecord, name: &str, text: &str) -> Result<Rational> {
    parse_rational(text).ok_or_else(|| reject(rec, format!("{name} `{text}` is not a rational")))
}

fn opt_rational(rec: &InstanceRecord, name: &str, text: &Option<String>) -> Result<Option<Rational>> {
    text.as_deref().map(|t| rational(rec, name, t)).transpose()
}

/// Re-derives every relation a row claims from its raw columns.
pub fn check_record(rec: &InstanceRecord) -> Result<()> {
    if rec.status != "ok" {
        return Ok(());
    }
    let family: TargetFamily = rec.family.parse().map_err(|_| reject(rec, "bad family"))?;
    let ensure = |ok: bool, what: &str| if ok { Ok(()) } else { Err(reject(rec, what)) };
    let m = rec.m;
    let beta = rational(rec, "beta", &rec.beta)?;
    let expected_beta = if rec.n == 0 { int(0) } else { int(m) / int(rec.n * rec.n) };
    ensure(beta == expected_beta, "β ≠ m/n²")?;

    let tau_star = opt_rational(rec, "tau_star", &rec.tau_star)?;
    let nu_star = opt_rational(rec, "nu_star", &rec.nu_star)?;
    ensure(tau_star == nu_star, "τ* ≠ ν*")?;
    ensure(rec.tau_lower <= rec.tau_upper, "τ bounds crossed")?;
    ensure(rec.nu_lower <= rec.tau_upper, "packing larger than a cover")?;
    if let Some(up) = rec.nu_upper {
        ensure(rec.nu_lower <= up, "ν bounds crossed")?;
    }
    if let Some(tau) = rec.tau {
        ensure(rec.tau_lower == tau && rec.tau_upper == tau, "exact τ outside its bounds")?;
    }
    if let Some(nu) = rec.nu {
        ensure(rec.nu_lower == nu && rec.nu_upper == Some(nu), "exact ν outside its bounds")?;
    }
    if let (Some(tau), Some(nu)) = (rec.tau, rec.nu) {
        ensure(nu <= tau && tau <= family.edges_per_target() * nu, "ν ≤ τ ≤ e·ν fails")?;
    }
    if let Some(ts) = &tau_star {
        ensure(*ts <= int(rec.tau_upper), "τ* above a cover")?;
        ensure(int(rec.nu_lower) <= *ts, "packing above ν*")?;
        if family.is_triangle() {
            if let Some(tau) = rec.tau {
                ensure(int(tau) <= int(2) * ts.clone(), "τ ≤ 2ν* fails")?;
            }
            if let Some(nu) = rec.nu {
                ensure(*ts <= int(2 * nu), "τ* ≤ 2ν fails")?;
            }
        }
    }
    if let Some(size) = rec.approx_size {
        ensure(size >= rec.tau_lower && size >= rec.tau_upper, "approximate cover below the best cover")?;
        match (&tau_star, family.kind()) {
            (Some(ts), TargetKind::Clique) => {
                ensure(int(size) <= int(family.mantel_factor()) * ts.clone(), "cover above ⌊k²/4⌋·τ*")?;
            }
            (_, TargetKind::OddCycle) => ensure(2 * size <= m, "bipartization above m/2")?,
            _ => {}
        }
        let ratio = opt_rational(rec, "certified_ratio", &rec.certified_ratio)?;
        let derived = tau_star.as_ref().filter(|t| **t > int(0)).map(|t| int(size) / t.clone());
        ensure(ratio == derived, "certified ratio ≠ size/τ*")?;
    }
    ensure(
        rational(rec, "delta_lo", &rec.delta_lo)? == hardness_delta(family, rec.tau_upper, m),
        "δ_lo inconsistent",
    )?;
    ensure(
        rational(rec, "delta_hi", &rec.delta_hi)? == hardness_delta(family, rec.tau_lower, m),
        "δ_hi inconsistent",
    )?;
    ensure(rec.rho_lo + rec.tau_upper == m && rec.rho_hi + rec.tau_lower == m, "ρ + τ ≠ m")?;
    let rho_star = opt_rational(rec, "rho_star", &rec.rho_star)?;
    ensure(rho_star == tau_star.map(|t| int(m) - t), "ρ* + τ* ≠ m")?;
    if let (Some(size), Some(meets)) = (rec.witness_size, rec.witness_meets) {
        let bound = opt_rational(rec, "witness_bound", &rec.witness_bound)?
            .ok_or_else(|| reject(rec, "witness without bound"))?;
        ensure((int(size) >= bound) == meets, "witness flag inconsistent")?;
    }
    Ok(())
}

fn check_all(records: Vec<InstanceRecord>) -> Result<Vec<InstanceRecord>> {
    records.iter().try_for_each(check_record)?;
    Ok(records)
}

/// Loads a CSV report, rejecting unknown schemas and inconsistent rows.
pub fn load_csv(path: &Path) -> Result<Vec<InstanceRecord>> {
    let text = std::fs::read_to_string(path)?;
    let body = text
        .strip_prefix(SCHEMA_LINE)
        .and_then(|rest| rest.strip_prefix('\n'))
        .ok_or_else(|| Error::ReportRejected("missing or unknown schema line".into()))?;
    let mut reader = csv::Reader::from_reader(body.as_bytes());
    let records = reader.deserialize().collect::<std::result::Result<Vec<InstanceRecord>, _>>()?;
    check_all(records)
}

pub fn load_json(path: &Path) -> Result<Vec<InstanceRecord>> {
    let text = std::fs::read_to_string(path)?;
    check_all(serde_json::from_str(&text)?)
}
