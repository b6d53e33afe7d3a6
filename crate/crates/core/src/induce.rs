//! Induced representation of the covering Poincare group on spinor-valued
//! functions over the forward light cone,
//!
//! ```text
//! (U_{h,x} phi)(p) = exp(i {x, p}) S(h*^{-1}) phi(delta(h)^{-1} p),
//! ```
//!
//! the momentum-space projection-valued measure `P_E phi = chi_E phi`, the
//! imprimitivity relation `U_g P_E U_g^{-1} = P_{g.E}`, and the cocycles that
//! build such representations from little-group data.
//!
//! Sections are closed-form expression trees, so every group action is
//! evaluated exactly at the requested momentum instead of on a grid.

use std::sync::Arc;

use nalgebra::{Matrix4, Vector4};

use crate::clifford::spin_rep;
use crate::error::{Error, Result};
use crate::fock::WeylOp;
use crate::linalg::{c, ensure_hermitian, unitary_evolution, CMatrix, CVector, C64, ONE, ZERO};
use crate::poincare::{
    covering_map, group_inv, group_mul, pairing, standard_boost, E2Element, FourVector, PoincareElement, SL2,
    LIGHTLIKE_BASE,
};
use crate::spinbundle::fiber_projector;

pub type Spinor = Vector4<C64>;

fn to_static(m: &CMatrix) -> Matrix4<C64> {
    Matrix4::from_fn(|i, j| m[(i, j)])
}

fn apply_delta(delta: &Matrix4<f64>, p: &FourVector) -> FourVector {
    FourVector::from_vector(&(delta * p.to_vector()))
}

/// Gaussian momentum profile times a fixed spinor projected into the fiber
/// (and optionally onto one chirality line).
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    pub center: [f64; 3],
    pub width: f64,
    pub spinor: Spinor,
    /// `Some(+1.0)` or `Some(-1.0)` keeps one chirality sector.
    pub chirality: Option<f64>,
}

impl Profile {
    pub fn gaussian(center: [f64; 3], width: f64, spinor: Spinor) -> Self {
        Self {
            center,
            width,
            spinor,
            chirality: None,
        }
    }

    pub fn with_chirality(mut self, sign: f64) -> Self {
        self.chirality = Some(sign.signum());
        self
    }

    fn eval(&self, p: &FourVector) -> Spinor {
        let Ok(proj) = fiber_projector(p) else {
            return Spinor::zeros();
        };
        let d2: f64 = (0..3).map(|k| (p.0[k + 1] - self.center[k]).powi(2)).sum();
        let amp = (-d2 / (2.0 * self.width * self.width)).exp();
        let mut v = self.spinor;
        if let Some(sign) = self.chirality {
            // Chirality is diag(1, 1, -1, -1).
            let keep = if sign > 0.0 { 0..2 } else { 2..4 };
            for k in 0..4 {
                if !keep.contains(&k) {
                    v[k] = ZERO;
                }
            }
        }
        to_static(&proj) * v * c(amp, 0.0)
    }
}

/// A Borel set of momenta given by a decidable predicate.
#[derive(Debug, Clone, PartialEq)]
pub enum Region {
    Everything,
    /// `lo <= p < hi` componentwise on all four components.
    Box { lo: [f64; 4], hi: [f64; 4] },
    /// `{n, p}_euclid > offset`, a Euclidean half-space in `(p0, p1, p2, p3)`.
    HalfSpace { normal: [f64; 4], offset: f64 },
    Intersect(Box<Region>, Box<Region>),
    /// `{p : delta_inv p in inner}`, the image of `inner` under `delta`.
    Transformed { delta_inv: Matrix4<f64>, inner: Box<Region> },
}

impl Region {
    pub fn contains(&self, p: &FourVector) -> bool {
        match self {
            Region::Everything => true,
            Region::Box { lo, hi } => (0..4).all(|k| lo[k] <= p.0[k] && p.0[k] < hi[k]),
            Region::HalfSpace { normal, offset } => (0..4).map(|k| normal[k] * p.0[k]).sum::<f64>() > *offset,
            Region::Intersect(a, b) => a.contains(p) && b.contains(p),
            Region::Transformed { delta_inv, inner } => inner.contains(&apply_delta(delta_inv, p)),
        }
    }
}

/// A labelled momentum-space region, the index set of the PVM.
#[derive(Debug, Clone, PartialEq)]
pub struct PVMRegion {
    pub label: String,
    pub region: Region,
}

impl PVMRegion {
    pub fn everything() -> Self {
        Self {
            label: "everything".into(),
            region: Region::Everything,
        }
    }

    pub fn boxed(lo: [f64; 4], hi: [f64; 4]) -> Self {
        Self {
            label: format!("box{lo:?}..{hi:?}"),
            region: Region::Box { lo, hi },
        }
    }

    pub fn half_space(normal: [f64; 4], offset: f64) -> Self {
        Self {
            label: format!("half-space{normal:?}>{offset}"),
            region: Region::HalfSpace { normal, offset },
        }
    }

    pub fn intersect(&self, other: &Self) -> Self {
        Self {
            label: format!("({})&({})", self.label, other.label),
            region: Region::Intersect(Box::new(self.region.clone()), Box::new(other.region.clone())),
        }
    }

    /// `g.E = {p : delta(h)^{-1} p in E}`; translations act trivially.
    pub fn transformed(&self, g: &PoincareElement) -> Self {
        Self {
            label: format!("g.({})", self.label),
            region: Region::Transformed {
                delta_inv: covering_map(&g.h.inverse()),
                inner: Box::new(self.region.clone()),
            },
        }
    }

    pub fn contains(&self, p: &FourVector) -> bool {
        self.region.contains(p)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Expr {
    Profile(Profile),
    Act {
        x: FourVector,
        delta_inv: Matrix4<f64>,
        spinor_map: Matrix4<C64>,
        inner: Arc<Expr>,
    },
    Mask {
        region: Region,
        inner: Arc<Expr>,
    },
}

impl Expr {
    fn eval(&self, p: &FourVector) -> Spinor {
        match self {
            Expr::Profile(profile) => profile.eval(p),
            Expr::Act {
                x,
                delta_inv,
                spinor_map,
                inner,
            } => {
                let q = apply_delta(delta_inv, p);
                spinor_map * inner.eval(&q) * C64::from_polar(1.0, pairing(x, p))
            }
            Expr::Mask { region, inner } => {
                if region.contains(p) {
                    inner.eval(p)
                } else {
                    Spinor::zeros()
                }
            }
        }
    }
}

/// A single-particle state: a closed-form spinor field over the cone together
/// with the sample points used to probe it.
#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    expr: Arc<Expr>,
    pub samples: Vec<FourVector>,
}

impl Section {
    pub fn new(profile: Profile, samples: Vec<FourVector>) -> Self {
        Self {
            expr: Arc::new(Expr::Profile(profile)),
            samples,
        }
    }

    pub fn eval(&self, p: &FourVector) -> Spinor {
        self.expr.eval(p)
    }

    /// Largest `|sum p_r gamma_r phi(p)|` over the sample points.
    pub fn fiber_residual(&self) -> f64 {
        let g = crate::spinbundle::gammas();
        self.samples
            .iter()
            .map(|p| (to_static(&g.slash(p)) * self.eval(p)).norm())
            .fold(0.0, f64::max)
    }

    /// Largest pointwise difference to `other` over `points`.
    pub fn max_diff(&self, other: &Section, points: &[FourVector]) -> f64 {
        points.iter().map(|p| (self.eval(p) - other.eval(p)).norm()).fold(0.0, f64::max)
    }
}

/// `U_{h,x}`: a new section evaluating `exp(i{x,p}) S(h*^{-1}) s(delta(h)^{-1} p)`.
pub fn induced_apply(h: &SL2, x: &FourVector, s: &Section) -> Result<Section> {
    Ok(Section {
        expr: Arc::new(Expr::Act {
            x: *x,
            delta_inv: covering_map(&h.inverse()),
            spinor_map: to_static(&spin_rep(&h.adjoint_inverse())?),
            inner: s.expr.clone(),
        }),
        samples: s.samples.clone(),
    })
}

pub fn induced_apply_element(g: &PoincareElement, s: &Section) -> Result<Section> {
    induced_apply(&g.h, &g.x, s)
}

/// `P_E s = chi_E s`.
pub fn pvm_apply(e: &PVMRegion, s: &Section) -> Section {
    Section {
        expr: Arc::new(Expr::Mask {
            region: e.region.clone(),
            inner: s.expr.clone(),
        }),
        samples: s.samples.clone(),
    }
}

/// Largest `|(U_g P_E U_g^{-1} s)(p) - (P_{g.E} s)(p)|` over `points`.
pub fn imprimitivity_check(g: &PoincareElement, e: &PVMRegion, s: &Section, points: &[FourVector]) -> Result<f64> {
    let g_inv = group_inv(g);
    let lhs = induced_apply_element(g, &pvm_apply(e, &induced_apply_element(&g_inv, s)?))?;
    let rhs = pvm_apply(&e.transformed(g), s);
    Ok(lhs.max_diff(&rhs, points))
}

/// Gauss-Legendre nodes and weights on `[a, b]` by Newton iteration on the
/// Legendre polynomial.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else { p1 };
            let pn1 = if n == 0 { 0.0 } else { p0 };
            dp = n as f64 * (x * pn - pn1) / (x * x - 1.0);
            let step = pn / dp;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        out.push((mid - half * x, half * 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Product rule on the forward cone for the invariant measure
/// `d^3p / (2|p|)`: Gauss-Legendre in `|p|` and `cos theta`, trapezoid in
/// the azimuth.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeQuadrature {
    pub points: Vec<FourVector>,
    pub weights: Vec<f64>,
}

impl ConeQuadrature {
    pub fn new(radius: f64, n_r: usize, n_theta: usize, n_phi: usize) -> Self {
        let radial = gauss_legendre(n_r, 0.0, radius);
        let polar = gauss_legendre(n_theta, -1.0, 1.0);
        let dphi = 2.0 * std::f64::consts::PI / n_phi as f64;
        let mut points = Vec::with_capacity(n_r * n_theta * n_phi);
        let mut weights = Vec::with_capacity(points.capacity());
        for &(r, wr) in &radial {
            for &(ct, wt) in &polar {
                let st = (1.0 - ct * ct).max(0.0).sqrt();
                for k in 0..n_phi {
                    let phi = k as f64 * dphi;
                    points.push(FourVector::new(r, r * st * phi.cos(), r * st * phi.sin(), r * ct));
                    // r^2 dr dOmega / (2 r)
                    weights.push(0.5 * r * wr * wt * dphi);
                }
            }
        }
        Self { points, weights }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(&FourVector) -> f64) -> f64 {
        self.points.iter().zip(&self.weights).map(|(p, w)| w * f(p)).sum()
    }
}

/// `int p0^{-1} |s(p)|^2 d^3p / (2|p|)`, the norm of the induced
/// representation space.
pub fn section_norm_sqr(s: &Section, quad: &ConeQuadrature) -> f64 {
    quad.integrate(|p| s.eval(p).norm_squared() / p.t())
}

/// Data of the first-order cocycle `v(t) = t u0 + sum_j (exp(-i t H_j) u_j - u_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CocycleSpec {
    pub u0: CVector,
    pub blocks: Vec<(CMatrix, CVector)>,
}

impl CocycleSpec {
    pub fn new(u0: CVector, blocks: Vec<(CMatrix, CVector)>) -> Result<Self> {
        for (h, u) in &blocks {
            ensure_hermitian(h, 1e-12)?;
            if h.nrows() != u.len() {
                return Err(Error::DimensionMismatch { expected: h.nrows(), found: u.len() });
            }
        }
        Ok(Self { u0, blocks })
    }

    pub fn dim(&self) -> usize {
        self.u0.len() + self.blocks.iter().map(|(_, u)| u.len()).sum::<usize>()
    }

    /// `U_t = 1 + sum_j exp(-i t H_j)` as a block-diagonal unitary.
    pub fn evolution(&self, t: f64) -> CMatrix {
        let n = self.dim();
        let mut out = CMatrix::zeros(n, n);
        let d0 = self.u0.len();
        out.view_mut((0, 0), (d0, d0)).fill_with_identity();
        let mut offset = d0;
        for (h, _) in &self.blocks {
            let d = h.nrows();
            out.view_mut((offset, offset), (d, d)).copy_from(&unitary_evolution(h, t));
            offset += d;
        }
        out
    }

    /// The Weyl operator `W(v(t), U_t)`.
    pub fn weyl(&self, t: f64) -> Result<WeylOp> {
        WeylOp::new(first_order_cocycle(t, self)?, self.evolution(t))
    }
}

pub fn first_order_cocycle(t: f64, spec: &CocycleSpec) -> Result<CVector> {
    let mut parts: Vec<C64> = spec.u0.iter().map(|z| z * t).collect();
    for (h, u) in &spec.blocks {
        ensure_hermitian(h, 1e-12)?;
        let moved = unitary_evolution(h, t) * u - u;
        parts.extend(moved.iter().copied());
    }
    Ok(CVector::from_vec(parts))
}

/// `|v(t + s) - v(t) - U_t v(s)|`.
pub fn first_order_residual(spec: &CocycleSpec, t: f64, s: f64) -> Result<f64> {
    let lhs = first_order_cocycle(t + s, spec)?;
    let rhs = first_order_cocycle(t, spec)? + spec.evolution(t) * first_order_cocycle(s, spec)?;
    Ok((lhs - rhs).camax())
}

/// A Borel section of `G -> G/H0` tabulated on finitely many cone points:
/// `c(p)` is the standard boost to `p`, and `c(k0)` is the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct CosetSection {
    entries: Vec<(FourVector, PoincareElement)>,
    pub tol: f64,
}

impl CosetSection {
    pub fn tabulate(points: &[FourVector]) -> Result<Self> {
        let mut entries = vec![(LIGHTLIKE_BASE, PoincareElement::identity())];
        for p in points {
            if p.max_abs_diff(&LIGHTLIKE_BASE) == 0.0 {
                continue;
            }
            entries.push((*p, PoincareElement::lorentz(standard_boost(p)?)));
        }
        Ok(Self { entries, tol: 1e-8 })
    }

    pub fn points(&self) -> impl Iterator<Item = &FourVector> {
        self.entries.iter().map(|(p, _)| p)
    }

    pub fn lookup(&self, p: &FourVector) -> Result<PoincareElement> {
        self.entries
            .iter()
            .find(|(q, _)| q.max_abs_diff(p) <= self.tol * q.t().max(1.0))
            .map(|(_, g)| *g)
            .ok_or(Error::CosetLookup(p.0))
    }
}

/// Little-group homomorphism `m(h, x) = exp(i {k0, x}) diag(z^{w_1}, ..., z^{w_d})`
/// with `h = [[z, a], [0, 1/z]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LittleGroupRep {
    pub weights: Vec<i32>,
}

impl LittleGroupRep {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn unitary(&self, g: &PoincareElement) -> Result<CMatrix> {
        let e = E2Element::from_stabilizer(&g.h)?;
        let phase = C64::from_polar(1.0, pairing(&LIGHTLIKE_BASE, &g.x));
        let diag = CVector::from_iterator(self.dim(), self.weights.iter().map(|&w| phase * e.z.powi(w)));
        Ok(CMatrix::from_diagonal(&diag))
    }

    /// `m(g)` as the Weyl operator `W(0, m(g))`.
    pub fn weyl(&self, g: &PoincareElement) -> Result<WeylOp> {
        WeylOp::rotation(self.unitary(g)?)
    }
}

/// The coset projection `beta(g) = delta(h) k0`.
pub fn beta(g: &PoincareElement) -> FourVector {
    g.orbit_point()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CocycleData {
    pub m: LittleGroupRep,
    pub section: CosetSection,
}

impl CocycleData {
    /// `a(g) = c(beta(g))^{-1} g`, an element of the little group.
    pub fn little_part(&self, g: &PoincareElement) -> Result<PoincareElement> {
        let c = self.section.lookup(&beta(g))?;
        Ok(group_mul(&group_inv(&c), g))
    }

    /// `b(g) = m(c(beta(g))^{-1} g)`, so that `b(g h) = b(g) m(h)` for `h` in
    /// the little group and `b = m` on the little group.
    pub fn b(&self, g: &PoincareElement) -> Result<CMatrix> {
        self.m.unitary(&self.little_part(g)?)
    }
}

/// `f(g1, g2) = b(g1 g2) b(g2)^{-1}`.
pub fn strict_cocycle(cd: &CocycleData, g1: &PoincareElement, g2: &PoincareElement) -> Result<CMatrix> {
    let b12 = cd.b(&group_mul(g1, g2))?;
    let b2 = cd.b(g2)?;
    Ok(b12 * b2.adjoint())
}

/// `| f(g1 g2, x) - f(g1, g2 x) f(g2, x) |` with the coset `x` represented by `g3`.
pub fn strict_cocycle_residual(
    cd: &CocycleData,
    g1: &PoincareElement,
    g2: &PoincareElement,
    g3: &PoincareElement,
) -> Result<f64> {
    let lhs = strict_cocycle(cd, &group_mul(g1, g2), g3)?;
    let rhs = strict_cocycle(cd, g1, &group_mul(g2, g3))? * strict_cocycle(cd, g2, g3)?;
    Ok(crate::linalg::max_abs(&(lhs - rhs)))
}

/// Little-group element `(e2_embed(e), x)`.
pub fn little_group_element(e: &E2Element, x: FourVector) -> Result<PoincareElement> {
    Ok(PoincareElement::new(crate::poincare::e2_embed(e)?, x))
}

/// A spinor in the fiber over the base point with unit components on both
/// chirality lines.
pub fn base_spinor() -> Spinor {
    Spinor::new(ZERO, ONE, ONE, ZERO)
}
