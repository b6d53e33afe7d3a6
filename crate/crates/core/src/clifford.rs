//! Gamma matrices in the chiral basis, the chirality operator, the spin
//! representation of SL(2,C) on Dirac spinors, and the Clifford form
//! `Phi(X1, X2) = 1/2 lambda([X1, X2])` on the odd part of the super
//! translation algebra.

use nalgebra::Matrix2;

use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix, C64, I, ONE, ZERO};
use crate::poincare::{pairing, pauli, FourVector, SL2};

/// Signature `(+,-,-,-)`.
pub const ETA: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

#[derive(Debug, Clone, PartialEq)]
pub struct GammaSet {
    pub gamma: [CMatrix; 4],
    pub chirality: CMatrix,
}

fn block(ul: &Matrix2<C64>, ur: &Matrix2<C64>, ll: &Matrix2<C64>, lr: &Matrix2<C64>) -> CMatrix {
    CMatrix::from_fn(4, 4, |i, j| {
        let b = match (i < 2, j < 2) {
            (true, true) => ul,
            (true, false) => ur,
            (false, true) => ll,
            (false, false) => lr,
        };
        b[(i % 2, j % 2)]
    })
}

/// Chiral basis: `gamma0 = [[0, I], [I, 0]]`, `gamma_k = [[0, -s_k], [s_k, 0]]`.
/// With this sign `Gamma = i gamma0 gamma1 gamma2 gamma3 = diag(1, 1, -1, -1)`.
pub fn make_gammas() -> GammaSet {
    let s = pauli();
    let z = Matrix2::zeros();
    let gamma: [CMatrix; 4] = std::array::from_fn(|k| {
        if k == 0 {
            block(&z, &s[0], &s[0], &z)
        } else {
            block(&z, &(-s[k]), &s[k], &z)
        }
    });
    let chirality = &gamma[0] * &gamma[1] * &gamma[2] * &gamma[3] * I;
    GammaSet { gamma, chirality }
}

impl GammaSet {
    /// `sum_r p_r gamma_r` without the metric: the operator whose kernel is
    /// the spinor fiber over `p`. Equals `[[0, p0 - p.s], [p0 + p.s, 0]]`.
    pub fn slash(&self, p: &FourVector) -> CMatrix {
        (0..4).fold(CMatrix::zeros(4, 4), |acc, r| acc + &self.gamma[r] * c(p.0[r], 0.0))
    }

    /// Minkowski contraction `eta_{mu nu} p^mu gamma^nu = p0 g0 - p.g`.
    pub fn dot(&self, p: &FourVector) -> CMatrix {
        (0..4).fold(CMatrix::zeros(4, 4), |acc, r| acc + &self.gamma[r] * c(ETA[r] * p.0[r], 0.0))
    }

    /// Projector onto the chirality eigenspace with eigenvalue `sign`.
    pub fn chiral_projector(&self, sign: f64) -> CMatrix {
        (CMatrix::identity(4, 4) + &self.chirality * c(sign, 0.0)) * c(0.5, 0.0)
    }
}

/// `S(h) = diag(h, h*^{-1})`. It commutes with the chirality operator and
/// intertwines the Minkowski contraction: `S(h)^{-1} (delta(h)p . gamma) S(h) = p . gamma`.
pub fn spin_rep(h: &SL2) -> Result<CMatrix> {
    let h = SL2::new(*h.matrix())?;
    let z = Matrix2::zeros();
    Ok(block(h.matrix(), &z, &z, h.adjoint_inverse().matrix()))
}

/// Inverse of `spin_rep(h)`, exact because `S(h)^{-1} = S(h^{-1})`.
pub fn spin_rep_inverse(h: &SL2) -> Result<CMatrix> {
    spin_rep(&h.inverse())
}

/// The odd space `R^4 = C^2` of a Majorana spinor `M = (x0 + i x1, x2 + i x3)`.
pub fn majorana_spinor(x: &[f64; 4]) -> [C64; 2] {
    [c(x[0], x[1]), c(x[2], x[3])]
}

/// Symmetric bracket data `[X, X']^mu = table[mu][i][j] X_i X'_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct CliffordForm {
    /// Dual momentum, acting on brackets through the pairing.
    pub lambda: FourVector,
    pub table: [[[f64; 4]; 4]; 4],
}

impl CliffordForm {
    /// Symmetrizes the table in its two odd slots.
    pub fn new(lambda: FourVector, table: [[[f64; 4]; 4]; 4]) -> Self {
        let sym = std::array::from_fn(|mu| {
            std::array::from_fn(|i| std::array::from_fn(|j| 0.5 * (table[mu][i][j] + table[mu][j][i])))
        });
        Self { lambda, table: sym }
    }

    /// Majorana pairing `[X, X']^mu = 2 Re(M* s^mu M')` on `C^2`.
    pub fn majorana(lambda: FourVector) -> Self {
        let s = pauli();
        let basis: [[C64; 2]; 4] = [[ONE, ZERO], [I, ZERO], [ZERO, ONE], [ZERO, I]];
        let table = std::array::from_fn(|mu| {
            std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    let (u, v) = (basis[i], basis[j]);
                    let sv = [s[mu][(0, 0)] * v[0] + s[mu][(0, 1)] * v[1], s[mu][(1, 0)] * v[0] + s[mu][(1, 1)] * v[1]];
                    2.0 * (u[0].conj() * sv[0] + u[1].conj() * sv[1]).re
                })
            })
        });
        Self::new(lambda, table)
    }

    pub fn bracket(&self, x1: &[f64], x2: &[f64]) -> Result<FourVector> {
        for x in [x1, x2] {
            if x.len() != 4 {
                return Err(Error::DimensionMismatch { expected: 4, found: x.len() });
            }
        }
        Ok(FourVector(std::array::from_fn(|mu| {
            (0..4)
                .flat_map(|i| (0..4).map(move |j| (i, j)))
                .map(|(i, j)| self.table[mu][i][j] * x1[i] * x2[j])
                .sum()
        })))
    }

    /// Real symmetric matrix `G` with `Phi(X1, X2) = X1^T G X2`.
    pub fn gram(&self) -> [[f64; 4]; 4] {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let column = FourVector(std::array::from_fn(|mu| self.table[mu][i][j]));
                0.5 * pairing(&self.lambda, &column)
            })
        })
    }
}

/// `Phi(X1, X2) = 1/2 {lambda, [X1, X2]}`.
pub fn clifford_form(cf: &CliffordForm, x1: &[f64], x2: &[f64]) -> Result<f64> {
    Ok(0.5 * pairing(&cf.lambda, &cf.bracket(x1, x2)?))
}

/// `Q(X) = Phi(X, X)`.
pub fn quadratic_form(cf: &CliffordForm, x: &[f64]) -> Result<f64> {
    clifford_form(cf, x, x)
}

/// Smallest eigenvalue of the Gram matrix; nonnegative exactly when `Q >= 0`.
pub fn min_gram_eigenvalue(cf: &CliffordForm) -> f64 {
    let g = cf.gram();
    let m = nalgebra::Matrix4::from_fn(|i, j| g[i][j]);
    m.symmetric_eigenvalues().min()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;

    #[test]
    fn squares_and_chirality() {
        let g = make_gammas();
        let id = CMatrix::identity(4, 4);
        assert_eq!(&g.gamma[0] * &g.gamma[0], id);
        assert_eq!(&g.gamma[1] * &g.gamma[1], -id.clone());
        let expected = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![ONE, ONE, -ONE, -ONE]));
        assert_eq!(g.chirality, expected);
    }

    #[test]
    fn base_point_slash_blocks() {
        let g = make_gammas();
        let s = g.slash(&FourVector::new(1.0, 0.0, 0.0, 1.0));
        // [[0, 1 - s3], [1 + s3, 0]]: only (1,3) and (2,0) survive.
        assert_eq!(s[(1, 3)], c(2.0, 0.0));
        assert_eq!(s[(2, 0)], c(2.0, 0.0));
        assert_eq!(max_abs(&s), 2.0);
    }

    #[test]
    fn spin_rep_identity_and_rejection() {
        assert_eq!(spin_rep(&SL2::identity()).unwrap(), CMatrix::identity(4, 4));
        assert!(SL2::new(Matrix2::identity() * c(3.0, 0.0)).is_err());
    }

    #[test]
    fn zero_odd_vectors_give_zero() {
        let cf = CliffordForm::majorana(FourVector::new(1.0, 0.0, 0.0, 1.0));
        assert_eq!(clifford_form(&cf, &[0.0; 4], &[0.0; 4]).unwrap(), 0.0);
        assert!(clifford_form(&cf, &[0.0; 3], &[0.0; 4]).is_err());
    }

    #[test]
    fn majorana_form_is_positive_for_lightlike_lambda() {
        let cf = CliffordForm::majorana(FourVector::new(1.0, 0.0, 0.0, 1.0));
        // {lambda, [X,X]} = 2 (|M|^2 - M* s3 M) = 4 |M_2|^2.
        let x = [0.3, -0.2, 0.5, 1.5];
        let q = quadratic_form(&cf, &x).unwrap();
        assert!((q - 2.0 * (0.25 + 2.25)).abs() < 1e-14);
        assert!(min_gram_eigenvalue(&cf) > -1e-14);
    }
}
