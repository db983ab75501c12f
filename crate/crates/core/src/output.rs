//! Text formats shared by the command-line tool and the examples.
//!
//! Numbers are written in scientific notation with seven significant digits.

use std::fmt::Write as _;

use serde::Serialize;

use crate::asymptotics::AsymptoticReport;
use crate::error::{Error, Result};
use crate::matern::MaternResult;
use crate::models::StructureFactorCurve;
use crate::optimizer::{ClassicalBounds, TerminalDensityRecord};
use crate::variance::VarianceCheck;

pub fn sci(x: f64) -> String {
    format!("{x:.6e}")
}

fn opt_sci(x: Option<f64>) -> String {
    x.map(sci).unwrap_or_default()
}

/// Parse `"3,4,5"`, `"3..8"` (inclusive) or a mixture such as `"3..5,8"`.
pub fn parse_dims(spec: &str) -> Result<Vec<u32>> {
    let mut dims = Vec::new();
    for part in spec.split(',').map(str::trim) {
        if part.is_empty() {
            return Err(Error::invalid(format!("empty entry in dimension list '{spec}'")));
        }
        let bad = || Error::invalid(format!("cannot parse dimension '{part}'"));
        if let Some((a, b)) = part.split_once("..") {
            let lo: u32 = a.trim().parse().map_err(|_| bad())?;
            let hi: u32 = b.trim().parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(Error::invalid(format!("empty range '{part}'")));
            }
            dims.extend(lo..=hi);
        } else {
            dims.push(part.parse().map_err(|_| bad())?);
        }
    }
    Ok(dims)
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub const TABLE_HEADER: &str = "d,sigma_star,Z_star,phi_star,ratio,k_min";

pub fn record_row(r: &TerminalDensityRecord) -> String {
    format!(
        "{},{},{},{},{},{}",
        r.d,
        sci(r.sigma_star),
        sci(r.z_star),
        sci(r.phi_star),
        sci(r.ratio),
        sci(r.k_min)
    )
}

/// Table rows in input order; failed rows become `#` comment lines.
pub fn table_csv(dims: &[u32], rows: &[Result<TerminalDensityRecord>]) -> String {
    let mut out = String::from(TABLE_HEADER);
    out.push('\n');
    for (d, row) in dims.iter().zip(rows) {
        match row {
            Ok(r) => out.push_str(&record_row(r)),
            Err(e) => {
                let _ = write!(out, "# d={d}: {e}");
            }
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
#[serde(untagged)]
enum TableEntry<'a> {
    Record(&'a TerminalDensityRecord),
    Failure { d: u32, error: String },
}

pub fn table_json(dims: &[u32], rows: &[Result<TerminalDensityRecord>]) -> Result<String> {
    let entries: Vec<TableEntry> = dims
        .iter()
        .zip(rows)
        .map(|(&d, row)| match row {
            Ok(r) => TableEntry::Record(r),
            Err(e) => TableEntry::Failure {
                d,
                error: e.to_string(),
            },
        })
        .collect();
    to_json(&entries)
}

pub fn curve_csv(curve: &StructureFactorCurve) -> String {
    let mut out = String::from("k,S\n");
    for (k, s) in curve.k.iter().zip(&curve.s) {
        let _ = writeln!(out, "{},{}", sci(*k), sci(*s));
    }
    out
}

#[derive(Serialize)]
struct CurveJson<'a> {
    model: &'a str,
    d: u32,
    phi: f64,
    sigma: f64,
    #[serde(rename = "Z")]
    z: f64,
    points: Vec<[f64; 2]>,
}

pub fn curve_json(curve: &StructureFactorCurve) -> Result<String> {
    to_json(&CurveJson {
        model: curve.model.kind.name(),
        d: curve.density.d,
        phi: curve.density.phi,
        sigma: curve.model.sigma,
        z: curve.model.z,
        points: curve.k.iter().zip(&curve.s).map(|(&k, &s)| [k, s]).collect(),
    })
}

pub fn variance_csv(check: &VarianceCheck) -> String {
    let mut out = String::from("R,sigma2,yamada_bound,violated\n");
    for i in 0..check.r.len() {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            sci(check.r[i]),
            sci(check.sigma2[i]),
            sci(check.yamada_bound[i]),
            check.violated(i)
        );
    }
    out
}

pub fn histogram_csv(result: &MaternResult) -> String {
    let h = &result.g2_hist;
    let mut out = String::from("r,g2_hat,stderr,g2_analytic\n");
    for i in 0..h.r.len() {
        let reference = result.g2_analytic.as_ref().map(|v| v[i]);
        let _ = writeln!(
            out,
            "{},{},{},{}",
            sci(h.r[i]),
            sci(h.g2_hat[i]),
            sci(h.stderr[i]),
            opt_sci(reference)
        );
    }
    out
}

pub fn centers_csv(result: &MaternResult) -> String {
    let d = result.config.d as usize;
    let header: Vec<String> = (1..=d).map(|i| format!("x{i}")).collect();
    let mut out = header.join(",");
    out.push('\n');
    for c in &result.accepted_centers {
        let row: Vec<String> = c.iter().map(|&x| sci(x)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub const CLASSICAL_HEADER: &str =
    "d,minkowski,ball,greedy,blichfeldt,rogers,kabatiansky_levenshtein,densest_known,phi_star";

pub fn classical_csv(rows: &[(ClassicalBounds, Option<f64>)]) -> String {
    let mut out = String::from(CLASSICAL_HEADER);
    out.push('\n');
    for (b, phi) in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            b.d,
            sci(b.minkowski),
            sci(b.ball),
            sci(b.greedy),
            sci(b.blichfeldt),
            sci(b.rogers),
            sci(b.kabatiansky_levenshtein),
            opt_sci(b.densest_known),
            opt_sci(*phi)
        );
    }
    out
}

pub fn asymptotics_csv(report: &AsymptoticReport) -> String {
    let c = &report.constants;
    let mut out = String::from("quantity,asymptotic,numeric,rel_error\n");
    let constants = [
        ("q1", c.q1),
        ("q2", c.q2),
        ("Q1", c.big_q1),
        ("C1", c.c1),
        ("C1_refined", c.c1_refined),
        ("C2", c.c2),
        ("D1", c.d1),
        ("D1_refined", c.d1_refined),
        ("D2", c.d2),
        ("E1", c.e1),
        ("E2", c.e2),
        ("phi_exponent", c.phi_exponent),
        ("kiss_exponent", c.kiss_exponent),
        ("phi_coefficient", report.phi_coefficient),
        ("kissing_coefficient", report.kissing_coefficient),
    ];
    for (name, v) in constants {
        let _ = writeln!(out, "{name},{},,", format_constant(v));
    }
    for cmp in &report.comparisons {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            cmp.quantity,
            sci(cmp.asymptotic),
            sci(cmp.numeric),
            sci(cmp.rel_error)
        );
    }
    for (ratio, k) in &report.kmin_linearized {
        let _ = writeln!(out, "k_min_linearized@beta_ratio={},{},,", format_constant(*ratio), sci(*k));
    }
    out
}

/// Constants carry more digits than table entries.
fn format_constant(x: f64) -> String {
    format!("{x:.11e}")
}
