//! On-disk density-matrix format: JSON with explicit [re, im] entry pairs,
//! row-major, sized (dimA*dimB)^2. Matrices are symmetrized on load and then
//! validated against the density-matrix invariants.

use std::path::Path;

use serde::{Deserialize, Serialize};
use telewitness::qmat::{symmetrize, C64, CMat, DensityMatrix};

#[derive(Debug, Serialize, Deserialize)]
pub struct StateFile {
    #[serde(rename = "dimA")]
    pub dim_a: usize,
    #[serde(rename = "dimB")]
    pub dim_b: usize,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl StateFile {
    pub fn to_density(&self) -> Result<DensityMatrix, String> {
        let n = self.dim_a * self.dim_b;
        if n == 0 {
            return Err("dimA and dimB must be positive".into());
        }
        if self.matrix.len() != n {
            return Err(format!(
                "field 'matrix': expected {n} rows, found {}",
                self.matrix.len()
            ));
        }
        for (i, row) in self.matrix.iter().enumerate() {
            if row.len() != n {
                return Err(format!(
                    "field 'matrix' row {i}: expected {n} entries, found {}",
                    row.len()
                ));
            }
        }
        let raw = CMat::from_fn(n, n, |i, j| {
            C64::new(self.matrix[i][j][0], self.matrix[i][j][1])
        });
        let asym = (&raw - raw.adjoint()).norm();
        if asym > 1e-6 * raw.norm().max(1.0) {
            return Err(format!(
                "matrix is not Hermitian: asymmetry {asym:.3e} exceeds the file tolerance 1e-6"
            ));
        }
        DensityMatrix::new(self.dim_a, self.dim_b, symmetrize(&raw))
            .map_err(|e| format!("invalid state: {e}"))
    }
}

pub fn matrix_entries(m: &CMat) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

pub fn load_state(path: &Path) -> Result<DensityMatrix, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let parsed: StateFile = serde_json::from_str(&text)
        .map_err(|e| format!("{}: parse error: {e}", path.display()))?;
    parsed
        .to_density()
        .map_err(|e| format!("{}: {e}", path.display()))
}
