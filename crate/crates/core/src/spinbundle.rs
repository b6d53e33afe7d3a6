//! The spinor bundle over the forward light cone: fibers
//! `{v : sum_r p_r gamma_r v = 0}`, their helicity splitting under the
//! chirality operator, the bundle action `(p, v) -> (delta(h)p, S(h*^{-1})v)`
//! and the fiber form `p0^{-1} <v, w>`.
//!
//! In the chiral basis the fiber over `p` is the range of
//! `diag((1 - n.s)/2, (1 + n.s)/2)`, `n = p/|p|`. At `(1,0,0,1)` it is
//! `span{e2, e3}` with `e2` of chirality `+1` and `e3` of chirality `-1`.

use std::sync::OnceLock;

use nalgebra::Matrix2;

use crate::clifford::{make_gammas, spin_rep, GammaSet};
use crate::error::{Error, Result};
use crate::linalg::{c, canonical_basis, CMatrix, CVector, C64, ONE, ZERO};
use crate::poincare::{act, classify_orbit, FourVector, OrbitKind, Sheet, SL2, LIGHTLIKE_TOL};

/// Singular values below this fraction of the largest are treated as zero.
pub const KERNEL_REL_TOL: f64 = 1e-8;
/// Largest tolerated `|sum p_r gamma_r v|` relative to `p0 |v|`.
pub const FIBER_TOL: f64 = 1e-8;

pub fn gammas() -> &'static GammaSet {
    static GAMMAS: OnceLock<GammaSet> = OnceLock::new();
    GAMMAS.get_or_init(make_gammas)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fiber {
    pub p: FourVector,
    /// Orthonormal columns spanning the fiber.
    pub basis: CMatrix,
}

impl Fiber {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// `|sum p_r gamma_r B|`, largest entry.
    pub fn residual(&self) -> f64 {
        crate::linalg::max_abs(&(gammas().slash(&self.p) * &self.basis))
    }

    pub fn projector(&self) -> CMatrix {
        &self.basis * self.basis.adjoint()
    }
}

fn check_cone(p: &FourVector) -> Result<()> {
    let spec = classify_orbit(p);
    match (spec.kind, spec.sheet) {
        (OrbitKind::Origin, _) => Err(Error::ConeTip),
        (OrbitKind::LightLike, Sheet::Forward) => Ok(()),
        (OrbitKind::LightLike, _) => Err(Error::NonPositiveEnergy { p0: p.t() }),
        _ => {
            // Far from the origin the absolute band is too tight for rounded
            // inputs, so accept a relative one as well.
            let square = p.minkowski_sqr();
            if square.abs() <= LIGHTLIKE_TOL * p.t().abs().max(1.0).powi(2) && p.t() > 0.0 {
                Ok(())
            } else {
                Err(Error::NotLightLike { square })
            }
        }
    }
}

/// Kernel of `sum_r p_r gamma_r` from its singular-value decomposition, in
/// the canonical (pivoted, phase-fixed) basis.
pub fn fiber_at(p: &FourVector) -> Result<Fiber> {
    check_cone(p)?;
    let slash = gammas().slash(p);
    let svd = slash.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let largest = svd.singular_values.iter().fold(0.0_f64, |a, s| a.max(*s));
    let kernel: Vec<CVector> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s <= KERNEL_REL_TOL * largest)
        .map(|(k, _)| v_t.row(k).adjoint())
        .collect();
    if kernel.is_empty() {
        return Err(Error::NotLightLike { square: p.minkowski_sqr() });
    }
    let rank = kernel.len();
    Ok(Fiber {
        p: *p,
        basis: canonical_basis(&CMatrix::from_columns(&kernel), rank),
    })
}

/// Number of singular values of `sum p_r gamma_r` at or below
/// `KERNEL_REL_TOL` times the largest.
pub fn kernel_dimension(p: &FourVector) -> usize {
    let sv = gammas().slash(p).singular_values();
    let largest = sv.iter().fold(0.0_f64, |a, s| a.max(*s));
    sv.iter().filter(|s| **s <= KERNEL_REL_TOL * largest).count()
}

/// The explicit fiber vectors at `p(m) = ((1 + m^2)^{1/2}, 1, 0, 0)`:
/// `v1 = m/2 e1 + (1 + (1 + m^2)^{1/2})/2 e3`,
/// `v2 = m/2 e4 + (1 + (1 + m^2)^{1/2})/2 e2`.
/// Coordinates are taken verbatim, with the momentum along axis 1.
#[derive(Debug, Clone, PartialEq)]
pub struct MassiveFiberPair {
    pub m: f64,
    pub v1: CVector,
    pub v2: CVector,
}

impl MassiveFiberPair {
    pub fn momentum(&self) -> FourVector {
        FourVector::new((1.0 + self.m * self.m).sqrt(), 1.0, 0.0, 0.0)
    }

    pub fn span(&self) -> CMatrix {
        CMatrix::from_columns(&[self.v1.clone(), self.v2.clone()])
    }
}

pub fn massive_basis(m: f64) -> Result<MassiveFiberPair> {
    if m.is_nan() || m < 0.0 {
        return Err(Error::NegativeMass(m));
    }
    let half_m = c(0.5 * m, 0.0);
    let big = c(0.5 * (1.0 + (1.0 + m * m).sqrt()), 0.0);
    Ok(MassiveFiberPair {
        m,
        v1: CVector::from_vec(vec![half_m, ZERO, big, ZERO]),
        v2: CVector::from_vec(vec![ZERO, big, ZERO, half_m]),
    })
}

/// Relabels a momentum written with its direction along axis 1 into the
/// axis-3 frame used here: `(p0, a1, a2, a3) -> (p0, a2, a3, a1)`.
pub fn to_axis3_frame(p: &FourVector) -> FourVector {
    FourVector::new(p.0[0], p.0[2], p.0[3], p.0[1])
}

/// Splits a light-cone fiber into its chirality `+1` and `-1` lines.
pub fn helicity_split(f: &Fiber) -> Result<(Fiber, Fiber)> {
    let g = gammas();
    let proj = f.projector();
    let moved = &g.chirality * &f.basis;
    let residual = crate::linalg::max_abs(&(&moved - &proj * &moved));
    if residual > 1e-10 {
        return Err(Error::NotChiralityInvariant { residual });
    }
    let sector = |sign: f64| -> Result<Fiber> {
        let image = g.chiral_projector(sign) * &f.basis;
        let rank = crate::linalg::numerical_rank(&image, KERNEL_REL_TOL);
        if rank == 0 {
            return Err(Error::NotChiralityInvariant { residual: 1.0 });
        }
        Ok(Fiber {
            p: f.p,
            basis: canonical_basis(&image, rank),
        })
    };
    Ok((sector(1.0)?, sector(-1.0)?))
}

/// `S(h*^{-1})`, the spinor part of the bundle action.
pub fn bundle_spinor_map(h: &SL2) -> Result<CMatrix> {
    spin_rep(&h.adjoint_inverse())
}

fn fiber_violation(p: &FourVector, v: &CVector) -> f64 {
    (gammas().slash(p) * v).norm()
}

/// `(p, v) -> (delta(h)p, S(h*^{-1}) v)`. This is a left action:
/// acting by `h1` and then `h2` equals acting by `h2 h1`.
pub fn bundle_action(h: &SL2, p: &FourVector, v: &CVector) -> Result<(FourVector, CVector)> {
    if v.len() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: v.len() });
    }
    let residual = fiber_violation(p, v);
    if residual > FIBER_TOL * (p.t().abs() * v.norm()).max(1.0) {
        return Err(Error::NotInFiber { residual });
    }
    Ok((act(h, p), bundle_spinor_map(h)? * v))
}

/// `p0^{-1} <v, w>` with the plain Hermitian product, antilinear in `v`.
pub fn fiber_inner(p: &FourVector, v: &CVector, w: &CVector) -> Result<C64> {
    if p.t() <= 0.0 {
        return Err(Error::NonPositiveEnergy { p0: p.t() });
    }
    if v.len() != w.len() {
        return Err(Error::DimensionMismatch { expected: v.len(), found: w.len() });
    }
    Ok(v.dotc(w) / c(p.t(), 0.0))
}

/// Closed-form fiber projector `diag((1 - n.s)/2, (1 + n.s)/2)`; used as an
/// independent check on the SVD kernel.
pub fn fiber_projector(p: &FourVector) -> Result<CMatrix> {
    check_cone(p)?;
    let r = p.spatial_norm_sqr().sqrt();
    let [x, y, z] = p.spatial().map(|v| v / r);
    let ns = Matrix2::new(c(z, 0.0), c(x, -y), c(x, y), c(-z, 0.0));
    let half = c(0.5, 0.0);
    let minus = (Matrix2::identity() - ns) * half;
    let plus = (Matrix2::identity() + ns) * half;
    Ok(CMatrix::from_fn(4, 4, |i, j| match (i < 2, j < 2) {
        (true, true) => minus[(i, j)],
        (false, false) => plus[(i - 2, j - 2)],
        _ => ZERO,
    }))
}

/// Unit vector along the `k`-th coordinate (0-based).
pub fn basis_vector(k: usize) -> CVector {
    CVector::from_fn(4, |i, _| if i == k { ONE } else { ZERO })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs, principal_angles};
    use crate::poincare::{e2_embed, E2Element, LIGHTLIKE_BASE};

    #[test]
    fn base_point_fiber_is_e2_e3() {
        let f = fiber_at(&LIGHTLIKE_BASE).unwrap();
        assert_eq!(f.dim(), 2);
        let expected = CMatrix::from_columns(&[basis_vector(1), basis_vector(2)]);
        assert!(principal_angles(&f.basis, &expected).iter().all(|a| *a < 1e-14));
        assert!(max_abs(&(f.projector() - fiber_projector(&LIGHTLIKE_BASE).unwrap())) < 1e-14);
    }

    #[test]
    fn fiber_rejects_bad_momenta() {
        assert_eq!(fiber_at(&FourVector::ZERO), Err(Error::ConeTip));
        assert!(matches!(fiber_at(&FourVector::new(1.0, 0.0, 0.0, 0.0)), Err(Error::NotLightLike { .. })));
        assert!(matches!(fiber_at(&FourVector::new(-1.0, 0.0, 0.0, 1.0)), Err(Error::NonPositiveEnergy { .. })));
    }

    #[test]
    fn massless_limit_is_exact() {
        let pair = massive_basis(0.0).unwrap();
        assert_eq!(pair.v1, basis_vector(2));
        assert_eq!(pair.v2, basis_vector(1));
        let pair = massive_basis(0.1).unwrap();
        assert_eq!(pair.v1[0], c(0.05, 0.0));
        assert!((pair.v1[2].re - 0.5 * (1.0 + 1.01_f64.sqrt())).abs() < 1e-15);
        assert_eq!(massive_basis(-1.0), Err(Error::NegativeMass(-1.0)));
        assert_eq!(to_axis3_frame(&pair.momentum()).spatial(), [0.0, 0.0, 1.0]);
    }

    #[test]
    fn helicity_sectors_at_base_point() {
        let (plus, minus) = helicity_split(&fiber_at(&LIGHTLIKE_BASE).unwrap()).unwrap();
        assert_eq!((plus.dim(), minus.dim()), (1, 1));
        assert!((plus.basis[(1, 0)].re - 1.0).abs() < 1e-14);
        assert!((minus.basis[(2, 0)].re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn little_group_phase_on_sectors() {
        let z = C64::from_polar(1.0, 0.7);
        let h = e2_embed(&E2Element::new(z, c(0.0, 0.0)).unwrap()).unwrap();
        let (_, w) = bundle_action(&h, &LIGHTLIKE_BASE, &basis_vector(1)).unwrap();
        assert!((w - basis_vector(1) / z).norm() < 1e-15);
        let (_, w) = bundle_action(&h, &LIGHTLIKE_BASE, &basis_vector(2)).unwrap();
        assert!((w - basis_vector(2) * z).norm() < 1e-15);
    }

    #[test]
    fn bundle_action_checks_fiber() {
        assert!(matches!(
            bundle_action(&SL2::identity(), &LIGHTLIKE_BASE, &basis_vector(0)),
            Err(Error::NotInFiber { .. })
        ));
        let v = basis_vector(1);
        assert_eq!(bundle_action(&SL2::identity(), &LIGHTLIKE_BASE, &v).unwrap(), (LIGHTLIKE_BASE, v.clone()));
        assert_eq!(fiber_inner(&LIGHTLIKE_BASE, &v, &v).unwrap(), ONE);
        assert!(fiber_inner(&FourVector::ZERO, &v, &v).is_err());
    }
}
