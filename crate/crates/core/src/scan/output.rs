//! CSV and summary serialization. Floats carry 12 significant digits.

use std::fmt::Write as _;

use serde::Serialize;

use crate::dynamics::replica::ReplicaRow;
use crate::scan::run::{ScanKind, ScanRow};

/// Rows of one scan, in grid order, plus the number of points skipped.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanOutput {
    pub kind: ScanKind,
    pub dim: usize,
    pub rows: Vec<ScanRow>,
    pub skipped: usize,
}

/// Sidecar summary of a scan.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanSummary {
    pub rows: usize,
    pub skipped: usize,
    pub max_ratio: Option<f64>,
    pub min_xi: Option<f64>,
}

pub(crate) fn fmt_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.11e}")
    } else if x.is_nan() {
        "nan".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

impl ScanOutput {
    pub fn header(&self) -> String {
        let mut cols: Vec<String> = (0..self.dim).map(|i| format!("p{i}")).collect();
        cols.push("beta_star".into());
        cols.push("xi_star".into());
        cols.extend(self.kind.aux_columns().iter().map(|s| s.to_string()));
        cols.join(",")
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header();
        out.push('\n');
        for row in &self.rows {
            let mut fields: Vec<String> = row.point.iter().map(|&x| fmt_float(x)).collect();
            fields.push(fmt_float(row.beta_star));
            fields.push(fmt_float(row.xi_star));
            for key in self.kind.aux_columns() {
                fields.push(fmt_float(row.auxiliary.get(*key).copied().unwrap_or(f64::NAN)));
            }
            let _ = writeln!(out, "{}", fields.join(","));
        }
        out
    }

    pub fn summary(&self) -> ScanSummary {
        let max_ratio = self
            .kind
            .ratio_column()
            .and_then(|key| self.rows.iter().filter_map(|r| r.auxiliary.get(key).copied()).reduce(f64::max));
        let min_xi = self.rows.iter().map(|r| r.xi_star).reduce(f64::min);
        ScanSummary { rows: self.rows.len(), skipped: self.skipped, max_ratio, min_xi }
    }
}

/// `t_decay,speed,bound_sld,bound_rld,xi_rld`, then one `bound_beta_<β>`
/// column per extra metric.
pub fn experiment_csv(rows: &[ReplicaRow], extra_betas: &[f64]) -> String {
    let mut out = String::from("t_decay,speed,bound_sld,bound_rld,xi_rld");
    for b in extra_betas {
        let _ = write!(out, ",bound_beta_{b}");
    }
    out.push('\n');
    for row in rows {
        let mut fields = vec![
            fmt_float(row.t_decay),
            fmt_float(row.speed),
            fmt_float(row.bound_sld),
            fmt_float(row.bound_rld),
            fmt_float(row.xi_rld.unwrap_or(f64::NAN)),
        ];
        for b in extra_betas {
            let v = row.extra_bounds.iter().find(|(beta, _)| beta == b).map_or(f64::NAN, |&(_, v)| v);
            fields.push(fmt_float(v));
        }
        let _ = writeln!(out, "{}", fields.join(","));
    }
    out
}
