//! Minkowski momenta, the SL(2,C) double cover of the Lorentz group, the
//! light-like little group E2 and the inhomogeneous (Poincare) group law.
//!
//! Conventions: natural units, signature (+,-,-,-). A four-vector `x` is
//! identified with the Hermitian matrix `X = x0 I + x1 s1 + x2 s2 + x3 s3` and
//! `h in SL(2,C)` acts by `X -> h X h*`.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{Matrix2, Matrix4, Vector4};

use crate::error::{Error, Result};
use crate::linalg::{c, C64};

/// Tolerance on `|det h - 1|` for SL(2,C) inputs.
pub const UNIMODULAR_TOL: f64 = 1e-12;
/// Absolute band around `<p,p> = 0` treated as light-like.
pub const LIGHTLIKE_TOL: f64 = 1e-10;

/// The light-like base point whose stabilizer is the E2 little group.
pub const LIGHTLIKE_BASE: FourVector = FourVector([1.0, 0.0, 0.0, 1.0]);

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    pub const ZERO: FourVector = FourVector([0.0; 4]);

    pub fn new(p0: f64, p1: f64, p2: f64, p3: f64) -> Self {
        Self([p0, p1, p2, p3])
    }

    /// Forward light-cone point with the given spatial part.
    pub fn lightlike(p1: f64, p2: f64, p3: f64) -> Self {
        Self([(p1 * p1 + p2 * p2 + p3 * p3).sqrt(), p1, p2, p3])
    }

    pub fn t(&self) -> f64 {
        self.0[0]
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.0[1], self.0[2], self.0[3]]
    }

    pub fn spatial_norm_sqr(&self) -> f64 {
        self.0[1] * self.0[1] + self.0[2] * self.0[2] + self.0[3] * self.0[3]
    }

    pub fn minkowski_sqr(&self) -> f64 {
        pairing(self, self)
    }

    pub fn to_vector(&self) -> Vector4<f64> {
        Vector4::from(self.0)
    }

    pub fn from_vector(v: &Vector4<f64>) -> Self {
        Self([v[0], v[1], v[2], v[3]])
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (0..4).fold(0.0, |acc, i| acc.max((self.0[i] - other.0[i]).abs()))
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Neg for FourVector {
    type Output = FourVector;
    fn neg(self) -> Self {
        Self(self.0.map(|x| -x))
    }
}

impl Mul<FourVector> for f64 {
    type Output = FourVector;
    fn mul(self, rhs: FourVector) -> FourVector {
        FourVector(rhs.0.map(|x| self * x))
    }
}

/// The character pairing `{k, g} = k0 g0 - k1 g1 - k2 g2 - k3 g3`.
pub fn pairing(k: &FourVector, g: &FourVector) -> f64 {
    k.0[0] * g.0[0] - k.0[1] * g.0[1] - k.0[2] * g.0[2] - k.0[3] * g.0[3]
}

/// The plane-wave character `x -> exp(i {k, x})` of the translation group.
pub fn character(k: &FourVector, x: &FourVector) -> C64 {
    C64::from_polar(1.0, pairing(k, x))
}

pub fn minkowski_metric() -> Matrix4<f64> {
    Matrix4::from_diagonal(&Vector4::new(1.0, -1.0, -1.0, -1.0))
}

pub fn pauli() -> [Matrix2<C64>; 4] {
    let o = c(0.0, 0.0);
    let l = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    [
        Matrix2::new(l, o, o, l),
        Matrix2::new(o, l, l, o),
        Matrix2::new(o, -i, i, o),
        Matrix2::new(l, o, o, -l),
    ]
}

/// `x0 I + x1 s1 + x2 s2 + x3 s3`.
pub fn to_hermitian(x: &FourVector) -> Matrix2<C64> {
    let s = pauli();
    (0..4).fold(Matrix2::zeros(), |acc, k| acc + s[k] * c(x.0[k], 0.0))
}

pub fn from_hermitian(m: &Matrix2<C64>) -> FourVector {
    let s = pauli();
    FourVector(std::array::from_fn(|k| 0.5 * (s[k] * m).trace().re))
}

/// An element of SL(2,C).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SL2(Matrix2<C64>);

impl SL2 {
    pub fn new(m: Matrix2<C64>) -> Result<Self> {
        let deviation = (m.determinant() - c(1.0, 0.0)).norm();
        if deviation > UNIMODULAR_TOL {
            return Err(Error::NotUnimodular { deviation });
        }
        Ok(Self(m))
    }

    /// Rescales an invertible matrix onto SL(2,C) by a square root of its
    /// determinant.
    pub fn normalized(m: Matrix2<C64>) -> Result<Self> {
        let det = m.determinant();
        if det.norm() == 0.0 {
            return Err(Error::NotUnimodular { deviation: 1.0 });
        }
        Self::new(m / det.sqrt())
    }

    pub fn identity() -> Self {
        Self(Matrix2::identity())
    }

    pub fn matrix(&self) -> &Matrix2<C64> {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        // det = 1 so the adjugate is the inverse.
        let m = &self.0;
        Self(Matrix2::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)]))
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    /// `h*^{-1}`, the contragredient conjugate.
    pub fn adjoint_inverse(&self) -> Self {
        self.adjoint().inverse()
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self(self.0 * other.0)
    }

    /// Rotation by `angle` about the unit axis `n` (an SU(2) element).
    pub fn rotation(axis: [f64; 3], angle: f64) -> Self {
        let s = pauli();
        let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        let n = axis.map(|a| a / norm);
        let gen = s[1] * c(n[0], 0.0) + s[2] * c(n[1], 0.0) + s[3] * c(n[2], 0.0);
        let half = 0.5 * angle;
        Self(Matrix2::identity() * c(half.cos(), 0.0) - gen * c(0.0, half.sin()))
    }

    /// Boost of the given rapidity along the unit axis `n` (Hermitian element).
    pub fn boost(axis: [f64; 3], rapidity: f64) -> Self {
        let s = pauli();
        let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        let n = axis.map(|a| a / norm);
        let gen = s[1] * c(n[0], 0.0) + s[2] * c(n[1], 0.0) + s[3] * c(n[2], 0.0);
        let half = 0.5 * rapidity;
        Self(Matrix2::identity() * c(half.cosh(), 0.0) + gen * c(half.sinh(), 0.0))
    }
}

impl Mul for SL2 {
    type Output = SL2;
    fn mul(self, rhs: Self) -> Self {
        self.compose(&rhs)
    }
}

/// The covering homomorphism `delta: SL(2,C) -> SO(3,1)+`, `X -> h X h*`.
pub fn covering_map(h: &SL2) -> Matrix4<f64> {
    let m = h.matrix();
    let mut out = Matrix4::zeros();
    for j in 0..4 {
        let mut e = [0.0; 4];
        e[j] = 1.0;
        let image = from_hermitian(&(m * to_hermitian(&FourVector(e)) * m.adjoint()));
        for i in 0..4 {
            out[(i, j)] = image.0[i];
        }
    }
    out
}

/// `delta(h) p`.
pub fn act(h: &SL2, p: &FourVector) -> FourVector {
    FourVector::from_vector(&(covering_map(h) * p.to_vector()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrbitKind {
    Origin,
    LightLike,
    TimeLike,
    SpaceLike,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sheet {
    Forward,
    Backward,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitSpec {
    pub kind: OrbitKind,
    pub sheet: Sheet,
    /// `sqrt(max(<p,p>, 0))`; zero on the cone and at the origin.
    pub mass: f64,
}

impl OrbitSpec {
    /// Same orbit up to `mass_tol` on the mass.
    pub fn same_orbit(&self, other: &OrbitSpec, mass_tol: f64) -> bool {
        self.kind == other.kind && self.sheet == other.sheet && (self.mass - other.mass).abs() <= mass_tol
    }
}

pub fn classify_orbit(p: &FourVector) -> OrbitSpec {
    let square = p.minkowski_sqr();
    if p.0.iter().all(|x| x.abs() <= LIGHTLIKE_TOL) {
        return OrbitSpec {
            kind: OrbitKind::Origin,
            sheet: Sheet::None,
            mass: 0.0,
        };
    }
    let sheet = if p.t() > 0.0 {
        Sheet::Forward
    } else if p.t() < 0.0 {
        Sheet::Backward
    } else {
        Sheet::None
    };
    if square.abs() <= LIGHTLIKE_TOL {
        OrbitSpec {
            kind: OrbitKind::LightLike,
            sheet,
            mass: 0.0,
        }
    } else if square > 0.0 {
        OrbitSpec {
            kind: OrbitKind::TimeLike,
            sheet,
            mass: square.sqrt(),
        }
    } else {
        OrbitSpec {
            kind: OrbitKind::SpaceLike,
            sheet: Sheet::None,
            mass: 0.0,
        }
    }
}

/// Element `m_{z,a}` of the double cover of the light-like little group E2,
/// realized in SL(2,C) as `[[z, a], [0, 1/z]]` with `|z| = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct E2Element {
    pub z: C64,
    pub a: C64,
}

impl E2Element {
    pub fn new(z: C64, a: C64) -> Result<Self> {
        let modulus = z.norm();
        if (modulus - 1.0).abs() > UNIMODULAR_TOL {
            return Err(Error::NotUnitModulus { modulus });
        }
        Ok(Self { z, a })
    }

    pub fn identity() -> Self {
        Self {
            z: c(1.0, 0.0),
            a: c(0.0, 0.0),
        }
    }

    /// Group law read off from the upper-triangular matrix product.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            z: self.z * other.z,
            a: self.z * other.a + self.a / other.z,
        }
    }

    /// Recovers `(z, a)` from a stabilizer element of the base point.
    pub fn from_stabilizer(h: &SL2) -> Result<Self> {
        let m = h.matrix();
        let lower = m[(1, 0)].norm();
        if lower > 1e-8 {
            return Err(Error::InvalidArgument(format!(
                "element does not stabilize the light-like base point (lower-left entry {lower:e})"
            )));
        }
        let z = m[(0, 0)] / c(m[(0, 0)].norm(), 0.0);
        Self::new(z, m[(0, 1)])
    }
}

pub fn e2_embed(e: &E2Element) -> Result<SL2> {
    let e = E2Element::new(e.z, e.a)?;
    SL2::new(Matrix2::new(e.z, e.a, c(0.0, 0.0), c(1.0, 0.0) / e.z))
}

/// Density of the measure `dp1 dp2 dp3 / (2 (p1^2 + p2^2 + p3^2))` on the
/// forward light cone, i.e. `1 / (2 p0^2)`.
///
/// This density already contains the `1/p0` factor of the fiber form, so it is
/// not boost invariant on its own; the Lorentz-invariant cone measure is
/// [`invariant_weight`].
pub fn measure_weight(p: &FourVector) -> Result<f64> {
    let r2 = spatial_on_cone(p)?;
    Ok(1.0 / (2.0 * r2))
}

/// Density of the Lorentz-invariant measure `d^3p / (2 |p|)` on the forward
/// light cone, equal to `p0 * measure_weight(p)`.
pub fn invariant_weight(p: &FourVector) -> Result<f64> {
    let r2 = spatial_on_cone(p)?;
    Ok(1.0 / (2.0 * r2.sqrt()))
}

fn spatial_on_cone(p: &FourVector) -> Result<f64> {
    let square = p.minkowski_sqr();
    if square.abs() > LIGHTLIKE_TOL * p.t().abs().max(1.0).powi(2) {
        return Err(Error::NotLightLike { square });
    }
    if p.t() <= 0.0 {
        if p.0.iter().all(|x| *x == 0.0) {
            return Err(Error::ConeTip);
        }
        return Err(Error::NonPositiveEnergy { p0: p.t() });
    }
    let r2 = p.spatial_norm_sqr();
    if r2 == 0.0 {
        return Err(Error::ConeTip);
    }
    Ok(r2)
}

/// Element `(h, x)` of the covering Poincare group `SL(2,C) x| R^4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoincareElement {
    pub h: SL2,
    pub x: FourVector,
}

impl PoincareElement {
    pub fn new(h: SL2, x: FourVector) -> Self {
        Self { h, x }
    }

    pub fn identity() -> Self {
        Self::new(SL2::identity(), FourVector::ZERO)
    }

    pub fn translation(x: FourVector) -> Self {
        Self::new(SL2::identity(), x)
    }

    pub fn lorentz(h: SL2) -> Self {
        Self::new(h, FourVector::ZERO)
    }

    /// Momentum-space image of the base point, i.e. the coset `g H0` of the
    /// light-like stabilizer.
    pub fn orbit_point(&self) -> FourVector {
        act(&self.h, &LIGHTLIKE_BASE)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let dh = (self.h.matrix() - other.h.matrix()).iter().fold(0.0_f64, |a, z| a.max(z.norm()));
        dh.max(self.x.max_abs_diff(&other.x))
    }
}

/// `(h1, a1)(h2, a2) = (h1 h2, a1 + delta(h1) a2)`.
pub fn group_mul(g1: &PoincareElement, g2: &PoincareElement) -> PoincareElement {
    PoincareElement {
        h: g1.h * g2.h,
        x: g1.x + act(&g1.h, &g2.x),
    }
}

/// `(h, a)^{-1} = (h^{-1}, -delta(h^{-1}) a)`.
pub fn group_inv(g: &PoincareElement) -> PoincareElement {
    let hinv = g.h.inverse();
    PoincareElement {
        h: hinv,
        x: -act(&hinv, &g.x),
    }
}

impl Mul for PoincareElement {
    type Output = PoincareElement;
    fn mul(self, rhs: Self) -> Self {
        group_mul(&self, &rhs)
    }
}

/// A smooth section of the light-cone orbit: `standard_boost(p)` maps the base
/// point `(1,0,0,1)` to `p` via a z-boost followed by a rotation taking the
/// z-axis to the direction of `p`. At the base point it is exactly the
/// identity.
pub fn standard_boost(p: &FourVector) -> Result<SL2> {
    let r2 = spatial_on_cone(p)?;
    let r = r2.sqrt();
    let [x, y, z] = p.spatial().map(|v| v / r);
    let scale = p.t().sqrt();
    let boost = SL2::new(Matrix2::new(c(scale, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0 / scale, 0.0)))?;
    // Rotation about the axis z x n by the polar angle of n.
    let axis_norm = (x * x + y * y).sqrt();
    if axis_norm == 0.0 {
        if z > 0.0 {
            return Ok(boost);
        }
        return Ok(SL2::rotation([1.0, 0.0, 0.0], std::f64::consts::PI) * boost);
    }
    let angle = z.clamp(-1.0, 1.0).acos();
    let rot = SL2::rotation([-y / axis_norm, x / axis_norm, 0.0], angle);
    Ok(rot * boost)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_examples() {
        let e0 = FourVector::new(1.0, 0.0, 0.0, 0.0);
        assert_eq!(pairing(&e0, &e0), 1.0);
        assert_eq!(pairing(&LIGHTLIKE_BASE, &LIGHTLIKE_BASE), 0.0);
    }

    #[test]
    fn kernel_of_covering_map() {
        let minus = SL2::new(-Matrix2::identity()).unwrap();
        assert_eq!(covering_map(&SL2::identity()), Matrix4::identity());
        assert_eq!(covering_map(&minus), Matrix4::identity());
    }

    #[test]
    fn diagonal_element_boosts_base_point() {
        let e = 1.0_f64.exp();
        let h = SL2::new(Matrix2::new(c(0.5_f64.exp(), 0.0), c(0.0, 0.0), c(0.0, 0.0), c((-0.5_f64).exp(), 0.0))).unwrap();
        let image = act(&h, &LIGHTLIKE_BASE);
        assert!(image.max_abs_diff(&FourVector::new(e, 0.0, 0.0, e)) < 1e-14);
    }

    #[test]
    fn classify_examples() {
        let cone = classify_orbit(&FourVector::new(2.0, 0.0, 0.0, 2.0));
        assert_eq!((cone.kind, cone.sheet), (OrbitKind::LightLike, Sheet::Forward));
        let massive = classify_orbit(&FourVector::new(1.0, 0.0, 0.0, 0.0));
        assert_eq!((massive.kind, massive.sheet, massive.mass), (OrbitKind::TimeLike, Sheet::Forward, 1.0));
        assert_eq!(classify_orbit(&FourVector::ZERO).kind, OrbitKind::Origin);
        assert_eq!(classify_orbit(&FourVector::new(0.0, 1.0, 0.0, 0.0)).kind, OrbitKind::SpaceLike);
        let backward = classify_orbit(&FourVector::new(-3.0, 0.0, 0.0, 0.0));
        assert_eq!((backward.sheet, backward.mass), (Sheet::Backward, 3.0));
    }

    #[test]
    fn measure_weight_examples() {
        assert_eq!(measure_weight(&LIGHTLIKE_BASE).unwrap(), 0.5);
        assert_eq!(measure_weight(&FourVector::new(2.0, 0.0, 0.0, 2.0)).unwrap(), 0.125);
        assert_eq!(invariant_weight(&FourVector::new(2.0, 0.0, 0.0, 2.0)).unwrap(), 0.25);
        assert_eq!(measure_weight(&FourVector::ZERO), Err(Error::ConeTip));
        assert!(matches!(measure_weight(&FourVector::new(1.0, 0.0, 0.0, 0.0)), Err(Error::NotLightLike { .. })));
    }

    #[test]
    fn e2_rejects_off_circle_phase() {
        assert!(matches!(E2Element::new(c(1.1, 0.0), c(0.0, 0.0)), Err(Error::NotUnitModulus { .. })));
        assert_eq!(e2_embed(&E2Element::identity()).unwrap(), SL2::identity());
    }

    #[test]
    fn rejects_non_unimodular() {
        assert!(matches!(SL2::new(Matrix2::identity() * c(2.0, 0.0)), Err(Error::NotUnimodular { .. })));
    }

    #[test]
    fn standard_boost_hits_target() {
        for p in [
            LIGHTLIKE_BASE,
            FourVector::lightlike(0.3, -1.2, 0.4),
            FourVector::lightlike(0.0, 0.0, -2.0),
            FourVector::lightlike(1.0, 0.0, 0.0),
        ] {
            let h = standard_boost(&p).unwrap();
            assert!(act(&h, &LIGHTLIKE_BASE).max_abs_diff(&p) < 1e-13, "{p:?}");
        }
        assert_eq!(standard_boost(&LIGHTLIKE_BASE).unwrap(), SL2::identity());
    }
}
