//! Small dense complex linear-algebra helpers shared by every module.

pub mod band;
pub mod sparse;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub fn anticommutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b + b * a
}

/// Largest absolute entry; the residual measure used throughout the test suites.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Spectral norm (largest singular value).
pub fn op_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .singular_values()
        .iter()
        .fold(0.0_f64, |acc, s| acc.max(*s))
}

pub fn hermiticity_residual(m: &CMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

pub fn unitarity_residual(m: &CMatrix) -> f64 {
    let n = m.ncols();
    max_abs(&(m.adjoint() * m - CMatrix::identity(n, n)))
}

pub fn ensure_hermitian(m: &CMatrix, tol: f64) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            found: m.ncols(),
        });
    }
    let residual = hermiticity_residual(m);
    if residual > tol {
        return Err(Error::NotHermitian { residual });
    }
    Ok(())
}

/// `exp(-i t H)` for Hermitian `H`, through its eigendecomposition so the
/// result is unitary to rounding.
pub fn unitary_evolution(h: &CMatrix, t: f64) -> CMatrix {
    let n = h.nrows();
    if n == 0 {
        return CMatrix::zeros(0, 0);
    }
    let herm = (h + h.adjoint()).scale(0.5);
    let eig = nalgebra::SymmetricEigen::new(herm);
    let phases = CMatrix::from_diagonal(&CVector::from_iterator(
        n,
        eig.eigenvalues.iter().map(|&e| (-I * t * e).exp()),
    ));
    &eig.eigenvectors * phases * eig.eigenvectors.adjoint()
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Orthonormal basis of the column space of `m`, independent of how the
/// columns of `m` were chosen: the orthogonal projector is rebuilt and then
/// reduced by column-pivoted Gram-Schmidt, with every vector's first
/// significant component made real and positive.
pub fn canonical_basis(m: &CMatrix, rank: usize) -> CMatrix {
    let q = leading_left_singular_vectors(m, rank);
    let proj = &q * q.adjoint();
    let n = proj.nrows();
    let mut basis: Vec<CVector> = Vec::with_capacity(rank);
    let mut residual = proj.clone();
    for _ in 0..rank {
        let (best, _) = (0..n)
            .map(|j| (j, residual.column(j).norm()))
            .fold((0, -1.0), |acc, (j, nrm)| if nrm > acc.1 + 1e-12 { (j, nrm) } else { acc });
        let mut v: CVector = residual.column(best).into_owned();
        for b in &basis {
            let coeff = b.dotc(&v);
            v -= b * coeff;
        }
        let nrm = v.norm();
        if nrm == 0.0 {
            break;
        }
        v /= C64::from(nrm);
        fix_phase(&mut v);
        for j in 0..n {
            let col: CVector = residual.column(j).into_owned();
            let coeff = v.dotc(&col);
            residual.set_column(j, &(col - &v * coeff));
        }
        basis.push(v);
    }
    CMatrix::from_columns(&basis)
}

/// Rotates the global phase so the first component with modulus above
/// `1e-12` is real and positive.
pub fn fix_phase(v: &mut CVector) {
    if let Some(z) = v.iter().copied().find(|z| z.norm() > 1e-12) {
        let phase = z.conj() / C64::from(z.norm());
        *v *= phase;
    }
}

/// The `k` left singular vectors of `m` with the largest singular values.
pub fn leading_left_singular_vectors(m: &CMatrix, k: usize) -> CMatrix {
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].partial_cmp(&svd.singular_values[a]).unwrap());
    let cols: Vec<CVector> = order.iter().take(k).map(|&j| u.column(j).into_owned()).collect();
    CMatrix::from_columns(&cols)
}

/// Orthonormalizes the columns of `m` (thin QR); `m` must have full column rank.
pub fn orthonormal_columns(m: &CMatrix) -> CMatrix {
    let qr = m.clone().qr();
    qr.q().columns(0, m.ncols()).into_owned()
}

/// Principal angles between the column spans of `a` and `b`, ascending.
/// Computed from sines so small angles keep full relative precision.
pub fn principal_angles(a: &CMatrix, b: &CMatrix) -> Vec<f64> {
    let qa = orthonormal_columns(a);
    let qb = orthonormal_columns(b);
    let outside = &qa - &qb * (qb.adjoint() * &qa);
    let mut sines: Vec<f64> = outside.singular_values().iter().copied().collect();
    sines.sort_by(|x, y| x.partial_cmp(y).unwrap());
    sines.into_iter().map(|s| s.clamp(0.0, 1.0).asin()).collect()
}

/// Numerical rank with a threshold relative to the largest singular value.
pub fn numerical_rank(m: &CMatrix, rel_tol: f64) -> usize {
    let sv = m.clone().singular_values();
    let largest = sv.iter().fold(0.0_f64, |acc, s| acc.max(*s));
    if largest == 0.0 {
        return 0;
    }
    sv.iter().filter(|s| **s > rel_tol * largest).count()
}
