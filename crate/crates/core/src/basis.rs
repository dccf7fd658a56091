//! Local operator bases: Pauli matrices for qubits, Gell-Mann matrices for
//! qutrits. Index 0 is the identity; the traceless generators satisfy
//! Tr(g_i g_j) = 2 delta_ij.

use crate::error::{Error, Result};
use crate::qmat::{identity, C64, CMat};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// [I, sigma_x, sigma_y, sigma_z].
pub fn pauli_matrices() -> [CMat; 4] {
    let x = CMat::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]);
    let y = CMat::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]);
    let z = CMat::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]);
    [identity(2), x, y, z]
}

/// [I, lambda_1, ..., lambda_8] in the standard ordering.
pub fn gell_mann_matrices() -> [CMat; 9] {
    let z = c(0., 0.);
    let l1 = CMat::from_row_slice(3, 3, &[z, c(1., 0.), z, c(1., 0.), z, z, z, z, z]);
    let l2 = CMat::from_row_slice(3, 3, &[z, c(0., -1.), z, c(0., 1.), z, z, z, z, z]);
    let l3 = CMat::from_row_slice(3, 3, &[c(1., 0.), z, z, z, c(-1., 0.), z, z, z, z]);
    let l4 = CMat::from_row_slice(3, 3, &[z, z, c(1., 0.), z, z, z, c(1., 0.), z, z]);
    let l5 = CMat::from_row_slice(3, 3, &[z, z, c(0., -1.), z, z, z, c(0., 1.), z, z]);
    let l6 = CMat::from_row_slice(3, 3, &[z, z, z, z, z, c(1., 0.), z, c(1., 0.), z]);
    let l7 = CMat::from_row_slice(3, 3, &[z, z, z, z, z, c(0., -1.), z, c(0., 1.), z]);
    let s = 1.0 / 3.0f64.sqrt();
    let l8 = CMat::from_row_slice(3, 3, &[c(s, 0.), z, z, z, c(s, 0.), z, z, z, c(-2. * s, 0.)]);
    [identity(3), l1, l2, l3, l4, l5, l6, l7, l8]
}

/// Single-party basis for local dimension d (2 or 3), identity first.
pub fn operator_basis(d: usize) -> Result<Vec<CMat>> {
    match d {
        2 => Ok(pauli_matrices().to_vec()),
        3 => Ok(gell_mann_matrices().to_vec()),
        _ => Err(Error::OutOfRange(format!(
            "operator basis defined for d in {{2, 3}}, got {d}"
        ))),
    }
}

/// Normalization Tr(g_i^2): d for the identity, 2 for the generators.
pub fn basis_norm(d: usize, index: usize) -> f64 {
    if index == 0 {
        d as f64
    } else {
        2.0
    }
}

pub fn basis_name(d: usize) -> &'static str {
    if d == 2 {
        "pauli"
    } else {
        "gellmann"
    }
}

/// Human-readable labels matching `operator_basis(d)`.
pub fn basis_labels(d: usize) -> Vec<String> {
    match d {
        2 => vec!["I", "X", "Y", "Z"].into_iter().map(String::from).collect(),
        _ => (0..d * d)
            .map(|i| if i == 0 { "I".to_string() } else { format!("L{i}") })
            .collect(),
    }
}
