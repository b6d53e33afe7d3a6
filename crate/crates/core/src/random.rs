//! Seeded samplers for the randomized checks. Every suite draws from a
//! `ChaCha8Rng` so results are reproducible across platforms.

use nalgebra::Matrix2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{c, orthonormal_columns, CMatrix, CVector, C64};
use crate::poincare::{E2Element, FourVector, PoincareElement, SL2};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Stream for a named consumer, derived from `(seed, name)` with FNV-1a so
/// independent suites never share draws.
pub fn rng_for(seed: u64, name: &str) -> Rng64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ hash)
}

pub fn normal(rng: &mut impl Rng) -> f64 {
    StandardNormal.sample(rng)
}

pub fn complex_normal(rng: &mut impl Rng) -> C64 {
    c(normal(rng), normal(rng))
}

pub fn complex_vector(rng: &mut impl Rng, n: usize) -> CVector {
    CVector::from_fn(n, |_, _| complex_normal(rng))
}

pub fn complex_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex_normal(rng))
}

pub fn hermitian(rng: &mut impl Rng, n: usize) -> CMatrix {
    let m = complex_matrix(rng, n, n);
    (&m + m.adjoint()).scale(0.5)
}

/// Haar-ish unitary from the QR factor of a Gaussian matrix.
pub fn unitary(rng: &mut impl Rng, n: usize) -> CMatrix {
    orthonormal_columns(&complex_matrix(rng, n, n))
}

/// SL(2,C) element with entries of order one, normalized by a square root of
/// the determinant.
pub fn sl2(rng: &mut impl Rng) -> SL2 {
    loop {
        let m = Matrix2::from_fn(|_, _| complex_normal(rng) * 0.6) + Matrix2::identity();
        if m.determinant().norm() > 0.1 {
            if let Ok(h) = SL2::normalized(m) {
                return h;
            }
        }
    }
}

pub fn unit_phase(rng: &mut impl Rng) -> C64 {
    C64::from_polar(1.0, rng.random_range(-std::f64::consts::PI..std::f64::consts::PI))
}

pub fn e2(rng: &mut impl Rng) -> E2Element {
    E2Element {
        z: unit_phase(rng),
        a: complex_normal(rng),
    }
}

/// Forward light-cone point with spatial part drawn from a Gaussian cloud.
pub fn cone_point(rng: &mut impl Rng) -> FourVector {
    loop {
        let p = FourVector::lightlike(normal(rng), normal(rng), normal(rng));
        if p.t() > 1e-3 {
            return p;
        }
    }
}

pub fn four_vector(rng: &mut impl Rng) -> FourVector {
    FourVector::new(normal(rng), normal(rng), normal(rng), normal(rng))
}

pub fn poincare(rng: &mut impl Rng) -> PoincareElement {
    PoincareElement::new(sl2(rng), four_vector(rng))
}
