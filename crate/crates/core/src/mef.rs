//! Inner oracle: estimate the maximal entangled fraction F_max(sigma) and the
//! maximizing local unitary via randomized fixed-point ascent with restarts.
//!
//! The ascent linearizes F(U) = <v_U| sigma |v_U> around the current iterate:
//! with M the d x d reshape of sigma |v_U>, the unitary maximizing
//! Re Tr(U'^H M) is the polar factor of M, and positive semidefiniteness of
//! sigma makes the resulting update monotone in F.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::qmat::{matricize, svd_polar, C64, CMat, DensityMatrix, UnitaryMatrix};
use crate::states::entangled_vector;

/// Tolerance for restart tie-breaking.
const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct OracleParams {
    /// Number of Haar-random restarts (one deterministic identity restart is
    /// always added on top).
    pub restarts: usize,
    /// Inner convergence tolerance on |U_new - U|_F.
    pub inner_tol: f64,
    /// Safety cap on fixed-point iterations per restart.
    pub max_inner: usize,
}

impl Default for OracleParams {
    fn default() -> Self {
        Self {
            restarts: 20,
            inner_tol: 1e-8,
            max_inner: 100,
        }
    }
}

#[derive(Debug, Clone)]
pub struct MefEstimate {
    pub f_est: f64,
    pub u_opt: UnitaryMatrix,
    /// Index of the winning restart; 0 is the deterministic identity restart.
    pub restart_index: usize,
    /// Fixed-point iterations spent in the winning restart.
    pub iterations: usize,
}

/// SplitMix64-style derivation of independent sub-seeds.
pub fn mix_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Haar-random unitary: QR of a complex Ginibre matrix with the R-diagonal
/// phase correction U = Q diag(R_ii / |R_ii|).
pub fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> UnitaryMatrix {
    loop {
        let z = CMat::from_fn(d, d, |_, _| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            C64::new(re * std::f64::consts::FRAC_1_SQRT_2, im * std::f64::consts::FRAC_1_SQRT_2)
        });
        let qr = z.qr();
        let r = qr.r();
        if (0..d).any(|i| r[(i, i)].norm() < 1e-300) {
            continue; // measure-zero degenerate draw; resample
        }
        let phases = CMat::from_fn(d, d, |i, j| {
            if i == j {
                r[(i, i)] / C64::new(r[(i, i)].norm(), 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let u = qr.q() * phases;
        return UnitaryMatrix::new(u).expect("QR-based sample is unitary");
    }
}

/// Tr(sigma P_U) = <v_U| sigma |v_U>, the entangled-fraction objective at a
/// fixed unitary.
pub fn fidelity(sigma: &DensityMatrix, u: &UnitaryMatrix) -> Result<f64> {
    let d = sigma.local_dim()?;
    if u.dim() != d {
        return Err(crate::error::Error::DimMismatch(format!(
            "unitary dim {} does not match local dim {d}",
            u.dim()
        )));
    }
    let v = entangled_vector(u);
    let sv = sigma.matrix() * &v;
    Ok(v.dotc(&sv).re)
}

/// One fixed-point update: the polar factor of the d x d reshape of
/// sigma |v_U|. Returns the current unitary unchanged when the image vanishes
/// (no ascent direction).
pub fn ascent_step(sigma: &DensityMatrix, u: &UnitaryMatrix) -> Result<UnitaryMatrix> {
    let d = sigma.local_dim()?;
    let v = entangled_vector(u);
    let m = matricize(&(sigma.matrix() * &v), d, d)?;
    if m.norm() < 1e-300 {
        return Ok(u.clone());
    }
    let (polar, _) = svd_polar(&m)?;
    Ok(polar)
}

/// Iterate `ascent_step` from `u0` until |U_new - U|_F < inner_tol or the
/// iteration cap; returns the best iterate, its objective, and the number of
/// iterations performed.
pub fn fixed_point_ascend(
    sigma: &DensityMatrix,
    u0: &UnitaryMatrix,
    params: &OracleParams,
) -> Result<(UnitaryMatrix, f64, usize)> {
    let mut u = u0.clone();
    let mut best_f = fidelity(sigma, &u)?;
    let mut best_u = u.clone();
    let mut iterations = 0;
    for t in 0..params.max_inner {
        let u_new = ascent_step(sigma, &u)?;
        let delta = (u_new.matrix() - u.matrix()).norm();
        let f = fidelity(sigma, &u_new)?;
        iterations = t + 1;
        if f > best_f {
            best_f = f;
            best_u = u_new.clone();
        }
        u = u_new;
        if delta < params.inner_tol {
            break;
        }
    }
    Ok((best_u, best_f, iterations))
}

/// Fix the global phase so the largest-modulus entry is real positive (first
/// such entry in row-major order on ties).
pub fn phase_normalize(u: &UnitaryMatrix) -> UnitaryMatrix {
    let d = u.dim();
    let mut best = (0usize, 0usize);
    let mut best_mod = -1.0;
    for i in 0..d {
        for j in 0..d {
            let m = u.matrix()[(i, j)].norm();
            if m > best_mod + 1e-15 {
                best_mod = m;
                best = (i, j);
            }
        }
    }
    let pivot = u.matrix()[best];
    if pivot.norm() < 1e-300 {
        return u.clone();
    }
    let phase = pivot.conj() / C64::new(pivot.norm(), 0.0);
    UnitaryMatrix::new(u.matrix().map(|z| z * phase)).expect("global phase preserves unitarity")
}

/// Multi-restart estimate of F_max(sigma). Restart 0 starts from the identity;
/// restarts 1..=R start from Haar-random unitaries seeded independently per
/// restart. Ties within 1e-12 keep the lowest restart index.
pub fn estimate_mef<R: Rng + ?Sized>(
    sigma: &DensityMatrix,
    params: &OracleParams,
    rng: &mut R,
) -> Result<MefEstimate> {
    let d = sigma.local_dim()?;
    let master: u64 = rng.gen();
    let mut best: Option<MefEstimate> = None;
    for r in 0..=params.restarts {
        let u0 = if r == 0 {
            UnitaryMatrix::identity_of(d)
        } else {
            let mut sub = ChaCha8Rng::seed_from_u64(mix_seed(master, r as u64));
            haar_unitary(d, &mut sub)
        };
        let (u, f, iterations) = fixed_point_ascend(sigma, &u0, params)?;
        let replace = best.as_ref().is_none_or(|b| f > b.f_est + TIE_TOL);
        if replace {
            best = Some(MefEstimate {
                f_est: f,
                u_opt: u,
                restart_index: r,
                iterations,
            });
        }
    }
    let mut est = best.expect("at least the identity restart ran");
    est.u_opt = phase_normalize(&est.u_opt);
    Ok(est)
}

/// Monte-Carlo lower bound: max of the objective over `n` Haar-random
/// unitaries.
pub fn brute_force_mef<R: Rng + ?Sized>(
    sigma: &DensityMatrix,
    n: usize,
    rng: &mut R,
) -> Result<f64> {
    let d = sigma.local_dim()?;
    let mut best = f64::NEG_INFINITY;
    for _ in 0..n.max(1) {
        let u = haar_unitary(d, rng);
        best = best.max(fidelity(sigma, &u)?);
    }
    Ok(best)
}

/// Optimal average teleportation fidelity (d f + 1) / (d + 1) for entangled
/// fraction f.
pub fn mef_to_avg_fidelity(f: f64, d: usize) -> f64 {
    (d as f64 * f + 1.0) / (d as f64 + 1.0)
}

/// Two-qubit correlation matrix T_ij = Tr[rho (sigma_i tensor sigma_j)].
pub fn correlation_matrix(rho: &DensityMatrix) -> Result<[[f64; 3]; 3]> {
    if rho.dims() != (2, 2) {
        return Err(crate::error::Error::DimMismatch(format!(
            "correlation matrix needs a two-qubit state, got {} x {}",
            rho.dim_a(),
            rho.dim_b()
        )));
    }
    let paulis = crate::basis::pauli_matrices();
    let mut t = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let op = crate::qmat::kron(&paulis[i + 1], &paulis[j + 1]);
            t[i][j] = crate::qmat::inner_re(&op, rho.matrix());
        }
    }
    Ok(t)
}

/// Sum of singular values of the correlation matrix.
pub fn correlation_negativity(t: &[[f64; 3]; 3]) -> f64 {
    let m = nalgebra::DMatrix::from_fn(3, 3, |i, j| t[i][j]);
    m.svd(false, false).singular_values.iter().sum()
}

/// Analytic two-qubit average fidelity F_avg = (1 + N(rho)/3) / 2.
pub fn avg_fidelity_2qubit(rho: &DensityMatrix) -> Result<f64> {
    let t = correlation_matrix(rho)?;
    Ok(0.5 * (1.0 + correlation_negativity(&t) / 3.0))
}
