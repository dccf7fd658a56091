//! Constructors for the built-in state families, maximally entangled
//! projectors, and random test states.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::qmat::{identity, C64, CMat, CVec, DensityMatrix, HermitianOperator, UnitaryMatrix};

/// The built-in one-parameter families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateFamily {
    Werner,
    Mems,
    QutritNme,
}

impl StateFamily {
    pub fn name(self) -> &'static str {
        match self {
            StateFamily::Werner => "werner",
            StateFamily::Mems => "mems",
            StateFamily::QutritNme => "qutrit_nme",
        }
    }

    pub fn local_dim(self) -> usize {
        match self {
            StateFamily::Werner | StateFamily::Mems => 2,
            StateFamily::QutritNme => 3,
        }
    }

    pub fn state(self, p: f64) -> Result<DensityMatrix> {
        match self {
            StateFamily::Werner => werner(p),
            StateFamily::Mems => mems(p),
            StateFamily::QutritNme => qutrit_nme(p),
        }
    }
}

impl std::str::FromStr for StateFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "werner" => Ok(StateFamily::Werner),
            "mems" => Ok(StateFamily::Mems),
            "qutrit_nme" => Ok(StateFamily::QutritNme),
            other => Err(Error::OutOfRange(format!(
                "unknown family '{other}' (expected werner, mems, or qutrit_nme)"
            ))),
        }
    }
}

fn check_visibility(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) || !p.is_finite() {
        return Err(Error::OutOfRange(format!("visibility p = {p} not in [0, 1]")));
    }
    Ok(())
}

/// |Phi_d^+> = (1/sqrt d) sum_i |ii>.
pub fn phi_plus(d: usize) -> Result<CVec> {
    if d < 2 {
        return Err(Error::OutOfRange(format!("phi_plus needs d >= 2, got {d}")));
    }
    let s = C64::new(1.0 / (d as f64).sqrt(), 0.0);
    let mut v = CVec::zeros(d * d);
    for i in 0..d {
        v[i * d + i] = s;
    }
    Ok(v)
}

/// (I tensor U)|Phi_d^+>, the entangled vector steering the constraint P_U.
pub fn entangled_vector(u: &UnitaryMatrix) -> CVec {
    let d = u.dim();
    let s = C64::new(1.0 / (d as f64).sqrt(), 0.0);
    CVec::from_fn(d * d, |idx, _| {
        let (a, b) = (idx / d, idx % d);
        u.matrix()[(b, a)] * s
    })
}

/// P_U = (I tensor U) |Phi_d^+><Phi_d^+| (I tensor U^H), a rank-1 trace-1
/// projector.
pub fn max_entangled_projector(d: usize, u: &UnitaryMatrix) -> Result<HermitianOperator> {
    if u.dim() != d {
        return Err(Error::DimMismatch(format!(
            "unitary dim {} does not match d = {d}",
            u.dim()
        )));
    }
    let v = entangled_vector(u);
    HermitianOperator::new(&v * v.adjoint())
}

/// Werner state p |Phi+><Phi+| + (1-p) I/4.
pub fn werner(p: f64) -> Result<DensityMatrix> {
    check_visibility(p)?;
    let v = phi_plus(2)?;
    let mat = (&v * v.adjoint()).scale(p) + identity(4).scale((1.0 - p) / 4.0);
    DensityMatrix::new(2, 2, mat)
}

fn ket(entries: &[(usize, C64)], dim: usize) -> CVec {
    let mut v = CVec::zeros(dim);
    for &(i, z) in entries {
        v[i] = z;
    }
    v
}

/// Rank-3 maximally entangled mixed state
/// (1+2p)/3 |psi-><psi-| + (1-p)/3 (|00><00| + |psi+><psi+|).
pub fn mems(p: f64) -> Result<DensityMatrix> {
    check_visibility(p)?;
    let s = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let psi_minus = ket(&[(1, s), (2, -s)], 4);
    let psi_plus = ket(&[(1, s), (2, s)], 4);
    let zero_zero = ket(&[(0, C64::new(1.0, 0.0))], 4);
    let l1 = (1.0 + 2.0 * p) / 3.0;
    let l23 = (1.0 - p) / 3.0;
    let mat = (&psi_minus * psi_minus.adjoint()).scale(l1)
        + (&zero_zero * zero_zero.adjoint()).scale(l23)
        + (&psi_plus * psi_plus.adjoint()).scale(l23);
    DensityMatrix::new(2, 2, mat)
}

/// The separable two-qutrit state (|01><01| + |12><12| + |20><20|) / 3.
pub fn sigma_plus() -> DensityMatrix {
    let mut mat = CMat::zeros(9, 9);
    for idx in [1usize, 5, 6] {
        mat[(idx, idx)] = C64::new(1.0 / 3.0, 0.0);
    }
    DensityMatrix::new(3, 3, mat).expect("sigma_plus is a valid density matrix")
}

/// Non-maximally entangled qutrit family
/// p |Psi><Psi| + (1-p) sigma_plus with
/// |Psi> = sqrt(2/3)|00> + sqrt(1/6)|11> + sqrt(1/6)|22>.
pub fn qutrit_nme(p: f64) -> Result<DensityMatrix> {
    check_visibility(p)?;
    let a = C64::new((2.0f64 / 3.0).sqrt(), 0.0);
    let b = C64::new((1.0f64 / 6.0).sqrt(), 0.0);
    let psi = ket(&[(0, a), (4, b), (8, b)], 9);
    let mat = (&psi * psi.adjoint()).scale(p) + sigma_plus().matrix().scale(1.0 - p);
    DensityMatrix::new(3, 3, mat)
}

/// Hilbert-Schmidt random state G G^H / Tr(G G^H) on a d x d bipartite space.
pub fn random_density<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DensityMatrix {
    let n = d * d;
    let g = CMat::from_fn(n, n, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let gram = &g * g.adjoint();
    let trace: f64 = gram.diagonal().iter().map(|z| z.re).sum();
    DensityMatrix::new(d, d, gram.scale(1.0 / trace)).expect("Gram construction is PSD")
}
