//! Witness construction from the projection geometry: W = (sigma* - rho) - cI
//! with the shift c = Tr[(sigma* - rho) sigma*], so that Tr(W sigma*) = 0 and
//! Tr(W rho) = -|rho - sigma*|_F^2. Supporting-hyperplane geometry then gives
//! Tr(W sigma) >= 0 on every state of the useless set.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::basis::{basis_name, basis_norm, operator_basis};
use crate::error::{Error, Result};
use crate::mef::{estimate_mef, OracleParams};
use crate::qmat::{identity, inner_re, kron, CMat, DensityMatrix, HermitianOperator};
use crate::solver::{solve, SolveParams};
use crate::states::random_density;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaleConvention {
    Raw,
    UnitFrobenius,
}

#[derive(Debug, Clone)]
pub struct WitnessOperator {
    pub op: HermitianOperator,
    /// Shift constant c applied to the identity.
    pub shift: f64,
    pub scale: ScaleConvention,
}

/// Coefficients c_ij of W = sum_ij c_ij g_i tensor g_j over the local operator
/// basis (identity first, then the traceless generators).
#[derive(Debug, Clone)]
pub struct BasisDecomposition {
    pub d: usize,
    pub basis: &'static str,
    pub coefficients: Vec<Vec<f64>>,
}

impl BasisDecomposition {
    pub fn reconstruct(&self) -> Result<CMat> {
        let basis = operator_basis(self.d)?;
        let n = self.d * self.d;
        let mut out = CMat::zeros(n, n);
        for (i, gi) in basis.iter().enumerate() {
            for (j, gj) in basis.iter().enumerate() {
                let c = self.coefficients[i][j];
                if c != 0.0 {
                    out += kron(gi, gj).scale(c);
                }
            }
        }
        Ok(out)
    }

    /// Flattened coefficient vector, row-major.
    pub fn flatten(&self) -> Vec<f64> {
        self.coefficients.iter().flatten().copied().collect()
    }
}

/// Raw optimal witness from a state and its projection.
pub fn construct_witness(
    rho: &DensityMatrix,
    sigma_star: &DensityMatrix,
) -> Result<WitnessOperator> {
    if rho.dim() != sigma_star.dim() {
        return Err(Error::DimMismatch(format!(
            "state dim {} vs projection dim {}",
            rho.dim(),
            sigma_star.dim()
        )));
    }
    let normal = sigma_star.matrix() - rho.matrix();
    if normal.norm() <= 1e-12 {
        return Err(Error::NoWitness);
    }
    let shift = inner_re(&normal, sigma_star.matrix());
    let w = &normal - identity(rho.dim()).scale(shift);
    Ok(WitnessOperator {
        op: HermitianOperator::new(w)?,
        shift,
        scale: ScaleConvention::Raw,
    })
}

/// Rescale to unit Frobenius norm; a positive scaling, so every sign
/// Tr(W X) is preserved.
pub fn normalize_witness(w: &WitnessOperator) -> Result<WitnessOperator> {
    let norm = w.op.fro_norm();
    if norm <= 1e-12 {
        return Err(Error::ZeroWitness);
    }
    Ok(WitnessOperator {
        op: HermitianOperator::new(w.op.matrix().scale(1.0 / norm))?,
        shift: w.shift / norm,
        scale: ScaleConvention::UnitFrobenius,
    })
}

/// Expand the witness in the Pauli (d = 2) or Gell-Mann (d = 3) product basis:
/// c_ij = Tr[W (g_i tensor g_j)] / (N_i N_j) with N_0 = d and N_i = 2
/// otherwise.
pub fn decompose(w: &WitnessOperator, d: usize) -> Result<BasisDecomposition> {
    let basis = operator_basis(d)?;
    if w.op.dim() != d * d {
        return Err(Error::DimMismatch(format!(
            "witness dim {} does not match d^2 = {}",
            w.op.dim(),
            d * d
        )));
    }
    let mut coefficients = vec![vec![0.0; d * d]; d * d];
    for (i, gi) in basis.iter().enumerate() {
        for (j, gj) in basis.iter().enumerate() {
            let raw = inner_re(&kron(gi, gj), w.op.matrix());
            coefficients[i][j] = raw / (basis_norm(d, i) * basis_norm(d, j));
        }
    }
    Ok(BasisDecomposition {
        d,
        basis: basis_name(d),
        coefficients,
    })
}

/// Tr(W sigma).
pub fn evaluate(w: &WitnessOperator, sigma: &DensityMatrix) -> Result<f64> {
    if w.op.dim() != sigma.dim() {
        return Err(Error::DimMismatch(format!(
            "witness dim {} vs state dim {}",
            w.op.dim(),
            sigma.dim()
        )));
    }
    Ok(inner_re(w.op.matrix(), sigma.matrix()))
}

/// Outcome of sampling-based witness verification.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    /// States kept after oracle certification F_est <= 1/d.
    pub samples_kept: usize,
    /// Minimum of Tr(W sigma) over the kept samples.
    pub min_value: f64,
    /// Minimum over the projection-generated boundary states.
    pub boundary_min: f64,
    /// Kept samples with Tr(W sigma) < -1e-6.
    pub violations: usize,
}

/// Sample useless states (random densities mixed toward the maximally mixed
/// state, certified by the oracle) plus boundary states obtained by projecting
/// random useful states, and record the minimum witness value over them.
pub fn verify_witness<R: Rng + ?Sized>(
    w: &WitnessOperator,
    d: usize,
    n_samples: usize,
    rng: &mut R,
) -> Result<VerifyReport> {
    let oracle = OracleParams::default();
    let threshold = 1.0 / d as f64;
    let mut kept = 0usize;
    let mut min_value = f64::INFINITY;
    let mut violations = 0usize;
    let mixed = identity(d * d).scale(1.0 / (d * d) as f64);

    let mut draws = 0usize;
    while kept < n_samples && draws < 40 * n_samples.max(1) {
        draws += 1;
        let raw = random_density(d, rng);
        let lambda: f64 = rng.gen_range(0.0..1.0);
        let blended = raw.matrix().scale(lambda) + mixed.scale(1.0 - lambda);
        let sigma = DensityMatrix::new(d, d, blended)?;
        let mut sub = ChaCha8Rng::seed_from_u64(rng.gen());
        let est = estimate_mef(&sigma, &oracle, &mut sub)?;
        if est.f_est <= threshold {
            kept += 1;
            let v = evaluate(w, &sigma)?;
            min_value = min_value.min(v);
            if v < -1e-6 {
                violations += 1;
            }
        }
    }

    // Boundary states: project random states onto the useless set and keep the
    // solver-certified projections.
    let mut boundary_min = f64::INFINITY;
    let n_boundary = (n_samples / 20).clamp(1, 25);
    for _ in 0..n_boundary {
        let raw = random_density(d, rng);
        let params = SolveParams {
            seed: rng.gen(),
            ..SolveParams::default()
        };
        let report = solve(&raw, &params)?;
        if report.converged {
            let v = evaluate(w, &report.sigma_star)?;
            boundary_min = boundary_min.min(v);
            if v < -1e-6 {
                violations += 1;
            }
        }
    }

    Ok(VerifyReport {
        samples_kept: kept,
        min_value,
        boundary_min,
        violations,
    })
}
