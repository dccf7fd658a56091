//! Deterministic text output: fixed-width reals, the scan CSV schema, and the
//! witness JSON document.

use telewitness::basis::basis_labels;
use telewitness::witness::BasisDecomposition;

/// 12 significant digits; used for every real in scan/check output.
pub fn fmt_real(x: f64) -> String {
    format!("{:.11e}", x)
}

/// Round to 6 decimal places, normalizing negative zero.
pub fn round6(x: f64) -> f64 {
    let r = (x * 1e6).round() / 1e6;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub const SCAN_HEADER: &str = "p,distance,mef_estimate,avg_fidelity,useful,converged,outer_iterations";

pub struct ScanRow {
    pub p: f64,
    pub distance: f64,
    pub mef_estimate: f64,
    pub avg_fidelity: f64,
    pub useful: bool,
    pub converged: bool,
    pub outer_iterations: usize,
}

impl ScanRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            fmt_real(self.p),
            fmt_real(self.distance),
            fmt_real(self.mef_estimate),
            fmt_real(self.avg_fidelity),
            self.useful,
            self.converged,
            self.outer_iterations
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "p": self.p,
            "distance": self.distance,
            "mef_estimate": self.mef_estimate,
            "avg_fidelity": self.avg_fidelity,
            "useful": self.useful,
            "converged": self.converged,
            "outer_iterations": self.outer_iterations,
        })
    }
}

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from(SCAN_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv());
        out.push('\n');
    }
    out
}

pub fn scan_json(rows: &[ScanRow]) -> String {
    let values: Vec<_> = rows.iter().map(ScanRow::to_json).collect();
    let mut out = serde_json::to_string_pretty(&values).expect("scan rows serialize");
    out.push('\n');
    out
}

/// Human-readable coefficient table over the local product basis.
pub fn coefficient_table(dec: &BasisDecomposition) -> String {
    let labels = basis_labels(dec.d);
    let mut out = String::new();
    out.push_str(&format!("{:>6}", ""));
    for l in &labels {
        out.push_str(&format!("{l:>12}"));
    }
    out.push('\n');
    for (i, row) in dec.coefficients.iter().enumerate() {
        out.push_str(&format!("{:>6}", labels[i]));
        for &c in row {
            out.push_str(&format!("{:>12.6}", round6(c)));
        }
        out.push('\n');
    }
    out
}
