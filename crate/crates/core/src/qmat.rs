//! Dense complex matrix algebra and bipartite-system primitives.
//!
//! Composite indices follow the convention `(a, b) = a * dim_b + b`, with
//! subsystem A as the slow (left) factor. `kron`, `partial_trace_a`, and
//! `matricize` all share this single convention.

use nalgebra::linalg::{SymmetricEigen, SVD};
use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

/// Relative Hermiticity tolerance: |A - A^H|_F <= HERM_TOL * max(1, |A|_F).
pub const HERM_TOL: f64 = 1e-10;
/// Lowest eigenvalue a density matrix may carry.
pub const PSD_TOL: f64 = 1e-8;
/// Allowed deviation of a density-matrix trace from 1.
pub const TRACE_TOL: f64 = 1e-8;
/// Allowed deviation of U^H U from the identity.
pub const UNITARY_TOL: f64 = 1e-10;

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn is_finite(m: &CMat) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// (A + A^H) / 2.
pub fn symmetrize(m: &CMat) -> CMat {
    (m + m.adjoint()).scale(0.5)
}

pub fn trace_re(m: &CMat) -> f64 {
    m.diagonal().iter().map(|z| z.re).sum()
}

/// Re Tr(A^H B), the real Frobenius pairing. Coincides with Tr(AB) for
/// Hermitian arguments.
pub fn inner_re(a: &CMat, b: &CMat) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x.conj() * y).re).sum()
}

/// Kronecker product with A as the slow factor: block (i, j) equals A[i][j] * B.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Trace out subsystem A: result[b][b'] = sum_a X[(a,b)][(a,b')].
pub fn partial_trace_a(x: &CMat, dim_a: usize, dim_b: usize) -> Result<CMat> {
    let n = dim_a * dim_b;
    if x.nrows() != n || x.ncols() != n || dim_a == 0 || dim_b == 0 {
        return Err(Error::BadBipartiteSplit {
            dim: x.nrows(),
            dim_a,
            dim_b,
        });
    }
    let mut out = CMat::zeros(dim_b, dim_b);
    for a in 0..dim_a {
        for b in 0..dim_b {
            for bp in 0..dim_b {
                out[(b, bp)] += x[(a * dim_b + b, a * dim_b + bp)];
            }
        }
    }
    Ok(out)
}

/// Reshape a length dim_a*dim_b vector into a (dim_b x dim_a) matrix:
/// result[b][a] = w[(a,b)].
pub fn matricize(w: &CVec, dim_a: usize, dim_b: usize) -> Result<CMat> {
    if w.len() != dim_a * dim_b {
        return Err(Error::DimMismatch(format!(
            "vector length {} does not equal {} x {}",
            w.len(),
            dim_a,
            dim_b
        )));
    }
    Ok(CMat::from_fn(dim_b, dim_a, |b, a| w[a * dim_b + b]))
}

/// Hermitian operator; symmetrized on construction after checking that the
/// asymmetry is within tolerance.
#[derive(Debug, Clone)]
pub struct HermitianOperator {
    dim: usize,
    mat: CMat,
}

impl HermitianOperator {
    pub fn new(mat: CMat) -> Result<Self> {
        if mat.nrows() != mat.ncols() || mat.nrows() == 0 {
            return Err(Error::DimMismatch(format!(
                "expected a nonempty square matrix, got {}x{}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        if !is_finite(&mat) {
            return Err(Error::NonFinite);
        }
        let asym = (&mat - mat.adjoint()).norm();
        if asym > HERM_TOL * mat.norm().max(1.0) {
            return Err(Error::NotHermitian { asymmetry: asym });
        }
        let dim = mat.nrows();
        Ok(Self {
            dim,
            mat: symmetrize(&mat),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    pub fn into_matrix(self) -> CMat {
        self.mat
    }

    pub fn trace(&self) -> f64 {
        trace_re(&self.mat)
    }

    pub fn fro_norm(&self) -> f64 {
        self.mat.norm()
    }
}

/// Tr(A^H B) restricted to Hermitian operands; the imaginary part is a
/// rounding artifact and is discarded.
pub fn frobenius_inner(a: &HermitianOperator, b: &HermitianOperator) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch(format!(
            "operator dims {} and {}",
            a.dim(),
            b.dim()
        )));
    }
    Ok(inner_re(a.matrix(), b.matrix()))
}

/// Bipartite density matrix: Hermitian, PSD within `PSD_TOL`, unit trace
/// within `TRACE_TOL`.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    dim_a: usize,
    dim_b: usize,
    op: HermitianOperator,
}

impl DensityMatrix {
    pub fn new(dim_a: usize, dim_b: usize, mat: CMat) -> Result<Self> {
        let op = HermitianOperator::new(mat)?;
        if op.dim() != dim_a * dim_b || dim_a == 0 || dim_b == 0 {
            return Err(Error::BadBipartiteSplit {
                dim: op.dim(),
                dim_a,
                dim_b,
            });
        }
        let trace = op.trace();
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::TraceNotOne { trace });
        }
        let (eigs, _) = hermitian_eig(&op);
        let min_eig = eigs[0];
        if min_eig < -PSD_TOL {
            return Err(Error::NotPositive { min_eig });
        }
        Ok(Self { dim_a, dim_b, op })
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.dim_a, self.dim_b)
    }

    /// Total Hilbert-space dimension dim_a * dim_b.
    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    /// The common local dimension d of a square d x d bipartite system.
    pub fn local_dim(&self) -> Result<usize> {
        if self.dim_a != self.dim_b {
            return Err(Error::DimMismatch(format!(
                "expected a square bipartite split, got {} x {}",
                self.dim_a, self.dim_b
            )));
        }
        Ok(self.dim_a)
    }

    pub fn op(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn matrix(&self) -> &CMat {
        self.op.matrix()
    }
}

/// Unitary matrix, validated to `UNITARY_TOL`.
#[derive(Debug, Clone)]
pub struct UnitaryMatrix {
    dim: usize,
    mat: CMat,
}

impl UnitaryMatrix {
    pub fn new(mat: CMat) -> Result<Self> {
        if mat.nrows() != mat.ncols() || mat.nrows() == 0 {
            return Err(Error::DimMismatch(format!(
                "expected a nonempty square matrix, got {}x{}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        if !is_finite(&mat) {
            return Err(Error::NonFinite);
        }
        let dim = mat.nrows();
        let dev = (mat.adjoint() * &mat - identity(dim)).norm();
        if dev > UNITARY_TOL {
            return Err(Error::NotUnitary { deviation: dev });
        }
        Ok(Self { dim, mat })
    }

    pub fn identity_of(dim: usize) -> Self {
        Self {
            dim,
            mat: identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending. The input
/// is symmetrized before factorization.
pub(crate) fn eig_ascending(m: &CMat) -> (Vec<f64>, CMat) {
    let eig = SymmetricEigen::new(symmetrize(m));
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = CMat::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vectors.set_column(col, &eig.eigenvectors.column(i));
    }
    (values, vectors)
}

/// Eigendecomposition A = V diag(lambda) V^H with ascending eigenvalues and
/// unitary V.
pub fn hermitian_eig(a: &HermitianOperator) -> (Vec<f64>, UnitaryMatrix) {
    let (values, vectors) = eig_ascending(a.matrix());
    let v = UnitaryMatrix::new(vectors).expect("eigenvector matrix is unitary");
    (values, v)
}

/// Polar factor L R^H of a square matrix from its SVD M = L Sigma R^H,
/// together with the singular values in descending order.
pub fn svd_polar(m: &CMat) -> Result<(UnitaryMatrix, Vec<f64>)> {
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        return Err(Error::DimMismatch(format!(
            "expected a nonempty square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    if !is_finite(m) {
        return Err(Error::NonFinite);
    }
    let svd = SVD::new(m.clone(), true, true);
    let u = svd.u.expect("SVD with vectors requested");
    let v_t = svd.v_t.expect("SVD with vectors requested");
    let polar = UnitaryMatrix::new(&u * &v_t).expect("product of SVD factors is unitary");
    let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok((polar, sv))
}
