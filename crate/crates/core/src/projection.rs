//! Exact Frobenius projection onto the relaxed feasible set
//! {sigma PSD, Tr sigma = 1, Tr(sigma P_Ui) <= 1/d for Ui in the active set}
//! via Dykstra's alternating projections with per-set correction terms.
//!
//! Both sub-projections are closed-form: the spectrahedron projection is an
//! eigendecomposition followed by a simplex projection of the spectrum, and
//! each half-space has a unit Frobenius normal (rank-1 trace-1 projector).
//! Plain alternating projections would only find a feasible point; the
//! correction terms are what make the limit the nearest point.

use crate::error::{Error, Result};
use crate::qmat::{
    eig_ascending, inner_re, symmetrize, C64, CMat, CVec, DensityMatrix, HermitianOperator,
    UnitaryMatrix,
};
use crate::states::max_entangled_projector;

/// Duplicate filter: constraints closer than this in Frobenius norm are
/// considered rediscoveries of the same unitary.
pub const DUPLICATE_TOL: f64 = 1e-8;

/// Finite active set of maximally-entangled-direction constraints.
#[derive(Debug, Clone)]
pub struct ConstraintSet {
    d: usize,
    projectors: Vec<HermitianOperator>,
    unitaries: Vec<UnitaryMatrix>,
}

impl ConstraintSet {
    pub fn empty(d: usize) -> Self {
        Self {
            d,
            projectors: Vec::new(),
            unitaries: Vec::new(),
        }
    }

    /// The canonical initial active set {I}.
    pub fn identity_only(d: usize) -> Result<Self> {
        let mut cs = Self::empty(d);
        cs.push(UnitaryMatrix::identity_of(d))?;
        Ok(cs)
    }

    /// Add the constraint generated by `u`. Returns false (and leaves the set
    /// unchanged) when the induced projector duplicates an existing one.
    pub fn push(&mut self, u: UnitaryMatrix) -> Result<bool> {
        let p = max_entangled_projector(self.d, &u)?;
        for existing in &self.projectors {
            if (existing.matrix() - p.matrix()).norm() <= DUPLICATE_TOL {
                return Ok(false);
            }
        }
        self.projectors.push(p);
        self.unitaries.push(u);
        Ok(true)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }

    pub fn projectors(&self) -> &[HermitianOperator] {
        &self.projectors
    }

    pub fn unitaries(&self) -> &[UnitaryMatrix] {
        &self.unitaries
    }
}

#[derive(Debug, Clone)]
pub struct ProjectionParams {
    /// Stop once the per-cycle iterate change and the worst feasibility
    /// violation both fall below this tolerance.
    pub cycle_tol: f64,
    pub max_cycles: usize,
}

impl Default for ProjectionParams {
    fn default() -> Self {
        Self {
            cycle_tol: 1e-9,
            max_cycles: 200_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct DykstraOutcome {
    pub sigma: DensityMatrix,
    pub cycles: usize,
    pub converged: bool,
}

/// Euclidean projection onto the probability simplex by the sort-and-threshold
/// rule.
pub fn simplex_projection(v: &[f64]) -> Result<Vec<f64>> {
    if v.is_empty() {
        return Err(Error::Empty("simplex projection of an empty vector".into()));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (i, &u) in sorted.iter().enumerate() {
        cumsum += u;
        let t = (cumsum - 1.0) / (i + 1) as f64;
        if u - t > 0.0 {
            theta = t;
        }
    }
    Ok(v.iter().map(|&x| (x - theta).max(0.0)).collect())
}

/// Projection onto {sigma PSD, Tr sigma = 1} in the eigenbasis.
pub(crate) fn project_density_cone_mat(m: &CMat) -> CMat {
    let (eigs, vecs) = eig_ascending(m);
    let w = simplex_projection(&eigs).expect("eigenvalues are finite and nonempty");
    let lam = CMat::from_diagonal(&CVec::from_iterator(
        w.len(),
        w.iter().map(|&x| C64::new(x, 0.0)),
    ));
    &vecs * lam * vecs.adjoint()
}

/// Frobenius projection of a Hermitian operator onto the density matrices of
/// a dim_a x dim_b bipartite system.
pub fn project_spectrahedron(
    a: &HermitianOperator,
    dim_a: usize,
    dim_b: usize,
) -> Result<DensityMatrix> {
    DensityMatrix::new(dim_a, dim_b, project_density_cone_mat(a.matrix()))
}

pub(crate) fn project_halfspace_mat(a: &CMat, p: &CMat, bound: f64) -> CMat {
    let excess = inner_re(p, a) - bound;
    if excess > 0.0 {
        a - p.scale(excess)
    } else {
        a.clone()
    }
}

/// Projection onto {X : <P, X> <= bound} for a unit-Frobenius-norm normal P.
pub fn project_halfspace(
    a: &HermitianOperator,
    p: &HermitianOperator,
    bound: f64,
) -> Result<HermitianOperator> {
    if a.dim() != p.dim() {
        return Err(Error::DimMismatch(format!(
            "operator dims {} and {}",
            a.dim(),
            p.dim()
        )));
    }
    let norm = p.fro_norm();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::OutOfRange(format!(
            "half-space normal must have unit Frobenius norm, got {norm}"
        )));
    }
    HermitianOperator::new(project_halfspace_mat(a.matrix(), p.matrix(), bound))
}

/// Worst violation of the relaxed feasible set at `x`: negative spectrum,
/// trace deviation, and half-space slack.
fn feasibility_violation(x: &CMat, cs: &ConstraintSet, bound: f64) -> f64 {
    let (eigs, _) = eig_ascending(x);
    let mut v = (-eigs[0]).max(0.0);
    let trace: f64 = eigs.iter().sum();
    v = v.max((trace - 1.0).abs());
    for p in cs.projectors() {
        v = v.max(inner_re(p.matrix(), x) - bound);
    }
    v
}

/// Dykstra projection of `rho` onto the intersection of the spectrahedron and
/// the active half-spaces. The cycle order is fixed: spectrahedron first,
/// then half-spaces in insertion order.
pub fn dykstra_project(
    rho: &DensityMatrix,
    cs: &ConstraintSet,
    params: &ProjectionParams,
) -> Result<DykstraOutcome> {
    let d = rho.local_dim()?;
    if d != cs.d() {
        return Err(Error::DimMismatch(format!(
            "state local dim {d} does not match constraint set dim {}",
            cs.d()
        )));
    }
    let n = rho.dim();
    let bound = 1.0 / d as f64;
    let n_sets = 1 + cs.len();
    let mut x = rho.matrix().clone();
    let mut corrections: Vec<CMat> = vec![CMat::zeros(n, n); n_sets];
    let mut cycles = 0;
    let mut converged = false;
    while cycles < params.max_cycles {
        cycles += 1;
        let x_start = x.clone();
        for (i, corr) in corrections.iter_mut().enumerate() {
            let y = &x + &*corr;
            let x_new = if i == 0 {
                project_density_cone_mat(&y)
            } else {
                project_halfspace_mat(&y, cs.projectors()[i - 1].matrix(), bound)
            };
            *corr = &y - &x_new;
            x = x_new;
        }
        let change = (&x - &x_start).norm();
        if change <= params.cycle_tol && feasibility_violation(&x, cs, bound) <= params.cycle_tol {
            converged = true;
            break;
        }
    }
    let x_out = if converged {
        symmetrize(&x)
    } else {
        // Fall back to a certified density matrix so the caller always gets a
        // valid state alongside the unconverged flag.
        project_density_cone_mat(&x)
    };
    let sigma = DensityMatrix::new(rho.dim_a(), rho.dim_b(), x_out)?;
    Ok(DykstraOutcome {
        sigma,
        cycles,
        converged,
    })
}
