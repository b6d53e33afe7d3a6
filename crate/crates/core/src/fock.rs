//! Bosonic Fock space in two realizations.
//!
//! * Exponential vectors: states are finite combinations of `e(u)` with
//!   `<e(u), e(v)> = exp <u, v>`, and Weyl operators act in closed form, so
//!   the Weyl relations carry no truncation error.
//! * Number basis truncated at occupation `N` per mode: ladder, number and
//!   parity operators as matrices. Identities involving `a a*` are only
//!   exact on the trusted subspace where every occupation is at most `N - 2`.
//!
//! The super Fock space pairs symmetric (even) and antisymmetric (odd)
//! tensor powers of a finite single-particle space.

use crate::error::{Error, Result};
use crate::linalg::{c, kron, unitarity_residual, CMatrix, CVector, C64, I, ONE, ZERO};

/// Tolerance on `|U* U - I|` for Weyl operators.
pub const UNITARY_TOL: f64 = 1e-12;

/// `<u, v>`, antilinear in `u`.
pub fn inner(u: &CVector, v: &CVector) -> C64 {
    u.dotc(v)
}

/// A finite linear combination `sum_i c_i e(u_i)` of exponential vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpVectorState {
    dim: usize,
    pub terms: Vec<(C64, CVector)>,
}

impl ExpVectorState {
    pub fn new(dim: usize, terms: Vec<(C64, CVector)>) -> Result<Self> {
        if let Some((_, u)) = terms.iter().find(|(_, u)| u.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: u.len() });
        }
        Ok(Self { dim, terms })
    }

    /// The single exponential vector `e(u)`.
    pub fn exponential(u: CVector) -> Self {
        Self {
            dim: u.len(),
            terms: vec![(ONE, u)],
        }
    }

    /// `e(0)`.
    pub fn vacuum(dim: usize) -> Self {
        Self::exponential(CVector::zeros(dim))
    }

    /// Normalized coherent state `exp(-|u|^2 / 2) e(u)`.
    pub fn coherent(u: CVector) -> Self {
        let scale = c((-0.5 * u.norm_squared()).exp(), 0.0);
        Self {
            dim: u.len(),
            terms: vec![(scale, u)],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            dim: self.dim,
            terms: self.terms.iter().map(|(k, u)| (k * s, u.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(Self { dim: self.dim, terms })
    }

    pub fn norm(&self) -> f64 {
        exp_inner(self, self).map(|z| z.re.max(0.0).sqrt()).unwrap_or(0.0)
    }
}

/// `sum_ij conj(c_i) d_j exp <u_i, v_j>`.
pub fn exp_inner(x: &ExpVectorState, y: &ExpVectorState) -> Result<C64> {
    if x.dim != y.dim {
        return Err(Error::DimensionMismatch { expected: x.dim, found: y.dim });
    }
    Ok(x.terms
        .iter()
        .flat_map(|(ci, ui)| y.terms.iter().map(move |(dj, vj)| ci.conj() * dj * inner(ui, vj).exp()))
        .sum())
}

/// Gram matrix `exp <u_i, u_j>` of a family of exponential vectors.
pub fn exp_gram(family: &[CVector]) -> CMatrix {
    let n = family.len();
    CMatrix::from_fn(n, n, |i, j| inner(&family[i], &family[j]).exp())
}

/// The Weyl operator `W(v, U)`, displacement by `v` after the second
/// quantization of the unitary `U`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylOp {
    pub v: CVector,
    pub u: CMatrix,
}

impl WeylOp {
    pub fn new(v: CVector, u: CMatrix) -> Result<Self> {
        if u.nrows() != v.len() || u.ncols() != v.len() {
            return Err(Error::DimensionMismatch { expected: v.len(), found: u.nrows() });
        }
        let residual = unitarity_residual(&u);
        if residual > UNITARY_TOL {
            return Err(Error::NotUnitary { residual });
        }
        Ok(Self { v, u })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            v: CVector::zeros(dim),
            u: CMatrix::identity(dim, dim),
        }
    }

    /// `W(v, I)`.
    pub fn displacement(v: CVector) -> Self {
        let n = v.len();
        Self {
            v,
            u: CMatrix::identity(n, n),
        }
    }

    /// `W(0, U)`.
    pub fn rotation(u: CMatrix) -> Result<Self> {
        Self::new(CVector::zeros(u.nrows()), u)
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }

    /// The operator part of the exact product law:
    /// `W(v1, U1) W(v2, U2) = weyl_phase(W1, W2) W(v1 + U1 v2, U1 U2)`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            v: &self.v + &self.u * &other.v,
            u: &self.u * &other.u,
        }
    }

    pub fn inverse(&self) -> Self {
        let u_inv = self.u.adjoint();
        Self {
            v: -(&u_inv * &self.v),
            u: u_inv,
        }
    }
}

/// Multiplier of the product law: `exp(-i Im <v1, U1 v2>)`.
pub fn weyl_phase(w1: &WeylOp, w2: &WeylOp) -> C64 {
    C64::from_polar(1.0, -inner(&w1.v, &(&w1.u * &w2.v)).im)
}

/// `W(v, U) e(u) = exp(-|v|^2/2 - <v, U u>) e(U u + v)`, termwise.
pub fn weyl_apply(w: &WeylOp, x: &ExpVectorState) -> Result<ExpVectorState> {
    if w.dim() != x.dim {
        return Err(Error::DimensionMismatch { expected: w.dim(), found: x.dim });
    }
    let half_norm = 0.5 * w.v.norm_squared();
    let terms = x
        .terms
        .iter()
        .map(|(k, u)| {
            let uu = &w.u * u;
            let factor = (c(-half_norm, 0.0) - inner(&w.v, &uu)).exp();
            (k * factor, uu + &w.v)
        })
        .collect();
    Ok(ExpVectorState { dim: x.dim, terms })
}

/// `<x, (W1 W2 - phase W12) y>` for the exact product law, scaled by
/// `|x| |y|`.
pub fn product_law_residual(w1: &WeylOp, w2: &WeylOp, x: &ExpVectorState, y: &ExpVectorState) -> Result<f64> {
    let lhs = exp_inner(x, &weyl_apply(w1, &weyl_apply(w2, y)?)?)?;
    let rhs = weyl_phase(w1, w2) * exp_inner(x, &weyl_apply(&w1.compose(w2), y)?)?;
    Ok((lhs - rhs).norm() / (x.norm() * y.norm()))
}

/// Truncated number basis for `modes` bosonic modes, occupations `0..=cutoff`.
/// Basis index `sum_k n_k (cutoff+1)^(modes-1-k)`: mode 0 is the slowest digit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncatedFock {
    pub modes: usize,
    pub cutoff: usize,
}

/// Largest dimension materialized as a dense matrix.
pub const MAX_DENSE_DIM: usize = 4096;

impl TruncatedFock {
    pub fn new(modes: usize, cutoff: usize) -> Result<Self> {
        if modes == 0 {
            return Err(Error::InvalidArgument("a Fock space needs at least one mode".into()));
        }
        if cutoff < 2 {
            return Err(Error::CutoffTooSmall { cutoff, minimum: 2 });
        }
        let dim = (cutoff + 1).checked_pow(modes as u32).unwrap_or(usize::MAX);
        if dim > MAX_DENSE_DIM {
            return Err(Error::SubspaceTooLarge(dim));
        }
        Ok(Self { modes, cutoff })
    }

    pub fn dim(&self) -> usize {
        (self.cutoff + 1).pow(self.modes as u32)
    }

    pub fn occupations(&self, index: usize) -> Vec<usize> {
        let base = self.cutoff + 1;
        let mut digits = vec![0; self.modes];
        let mut rest = index;
        for k in (0..self.modes).rev() {
            digits[k] = rest % base;
            rest /= base;
        }
        digits
    }

    pub fn index(&self, occupations: &[usize]) -> Result<usize> {
        if occupations.len() != self.modes {
            return Err(Error::DimensionMismatch { expected: self.modes, found: occupations.len() });
        }
        occupations.iter().try_fold(0usize, |acc, &n| {
            if n > self.cutoff {
                Err(Error::IndexOutOfRange { index: n, len: self.cutoff + 1 })
            } else {
                Ok(acc * (self.cutoff + 1) + n)
            }
        })
    }

    pub fn basis_state(&self, occupations: &[usize]) -> Result<CVector> {
        let idx = self.index(occupations)?;
        Ok(CVector::from_fn(self.dim(), |i, _| if i == idx { ONE } else { ZERO }))
    }

    /// Single-mode annihilator `a|n> = sqrt(n) |n-1>`.
    pub fn single_mode_annihilator(cutoff: usize) -> CMatrix {
        CMatrix::from_fn(cutoff + 1, cutoff + 1, |i, j| if j == i + 1 { c((j as f64).sqrt(), 0.0) } else { ZERO })
    }

    /// `a_k` on the full space.
    pub fn annihilator(&self, k: usize) -> Result<CMatrix> {
        if k >= self.modes {
            return Err(Error::IndexOutOfRange { index: k, len: self.modes });
        }
        let id = CMatrix::identity(self.cutoff + 1, self.cutoff + 1);
        let a = Self::single_mode_annihilator(self.cutoff);
        Ok((0..self.modes).fold(CMatrix::identity(1, 1), |acc, j| kron(&acc, if j == k { &a } else { &id })))
    }

    /// Total number operator; diagonal with the total occupation.
    pub fn number(&self) -> CMatrix {
        CMatrix::from_diagonal(&CVector::from_fn(self.dim(), |i, _| c(self.occupations(i).iter().sum::<usize>() as f64, 0.0)))
    }

    /// `(-1)^Lambda`.
    pub fn parity(&self) -> CMatrix {
        CMatrix::from_diagonal(&CVector::from_fn(self.dim(), |i, _| {
            if self.occupations(i).iter().sum::<usize>() % 2 == 0 {
                ONE
            } else {
                -ONE
            }
        }))
    }

    /// Basis states with every occupation at most `cutoff - 2`.
    pub fn trusted_mask(&self) -> Vec<bool> {
        (0..self.dim())
            .map(|i| self.occupations(i).iter().all(|&n| n + 2 <= self.cutoff))
            .collect()
    }

    /// The block of `m` on the trusted subspace.
    pub fn restrict(&self, m: &CMatrix) -> CMatrix {
        restrict(m, &self.trusted_mask())
    }
}

/// Rows and columns of `m` selected by `keep`.
pub fn restrict(m: &CMatrix, keep: &[bool]) -> CMatrix {
    let idx: Vec<usize> = keep.iter().enumerate().filter(|(_, k)| **k).map(|(i, _)| i).collect();
    CMatrix::from_fn(idx.len(), idx.len(), |i, j| m[(idx[i], idx[j])])
}

/// Ladder and quadrature operators along the mode vector `g`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ladder {
    pub a: CMatrix,
    pub a_dag: CMatrix,
    /// Generator of `t -> W(t g, I) = exp(-i t p)`: `p = i (a* - a)`.
    pub p: CMatrix,
    /// `q = a + a*`, so that `a = (q + i p)/2` and `a* = (q - i p)/2`.
    pub q: CMatrix,
}

/// `a(g) = sum_k conj(g_k) a_k` and its quadratures.
pub fn stone_ladder(f: &TruncatedFock, g: &CVector) -> Result<Ladder> {
    if g.len() != f.modes {
        return Err(Error::DimensionMismatch { expected: f.modes, found: g.len() });
    }
    if g.norm() == 0.0 {
        return Err(Error::ZeroDirection);
    }
    let mut a = CMatrix::zeros(f.dim(), f.dim());
    for k in 0..f.modes {
        a += f.annihilator(k)? * g[k].conj();
    }
    let a_dag = a.adjoint();
    let p = (&a_dag - &a) * I;
    let q = &a + &a_dag;
    Ok(Ladder { a, a_dag, p, q })
}

/// `(Lambda, J)` with `J = (-1)^Lambda`.
pub fn parity_ops(f: &TruncatedFock) -> (CMatrix, CMatrix) {
    (f.number(), f.parity())
}

/// Permutations of `0..n` in lexicographic order, each with its sign.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, f64)> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        out.push((perm.clone(), if inversions % 2 == 0 { 1.0 } else { -1.0 }));
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).expect("successor exists");
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}

/// `U_sigma` on `(C^d)^{(x) n}`: sends `x_1 (x) ... (x) x_n` to the tensor whose
/// slot `sigma(k)` holds `x_k`.
pub fn permutation_operator(d: usize, perm: &[usize]) -> CMatrix {
    let n = perm.len();
    let dim = d.pow(n as u32);
    let mut m = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        let mut digits = vec![0; n];
        let mut rest = col;
        for k in (0..n).rev() {
            digits[k] = rest % d;
            rest /= d;
        }
        let mut moved = vec![0; n];
        for k in 0..n {
            moved[perm[k]] = digits[k];
        }
        let row = moved.iter().fold(0, |acc, &x| acc * d + x);
        m[(row, col)] = ONE;
    }
    m
}

/// `(1/n!) sum_sigma eps(sigma)^s U_sigma` with `s = 0` (symmetrizer) or
/// `s = 1` (antisymmetrizer).
pub fn symmetrizer(d: usize, n: usize, antisymmetric: bool) -> Result<CMatrix> {
    let dim = d.checked_pow(n as u32).unwrap_or(usize::MAX);
    if dim > MAX_DENSE_DIM {
        return Err(Error::SubspaceTooLarge(dim));
    }
    let perms = permutations(n);
    let count = perms.len() as f64;
    Ok(perms.iter().fold(CMatrix::zeros(dim, dim), |acc, (perm, sign)| {
        let weight = if antisymmetric { *sign } else { 1.0 };
        acc + permutation_operator(d, perm) * c(weight / count, 0.0)
    }))
}

pub fn tensor_product(vectors: &[CVector]) -> CVector {
    vectors.iter().fold(CVector::from_element(1, ONE), |acc, v| acc.kronecker(v))
}

pub fn symmetrize(vectors: &[CVector]) -> Result<CVector> {
    let d = vectors.first().map_or(1, |v| v.len());
    Ok(symmetrizer(d, vectors.len(), false)? * tensor_product(vectors))
}

pub fn antisymmetrize(vectors: &[CVector]) -> Result<CVector> {
    let d = vectors.first().map_or(1, |v| v.len());
    Ok(symmetrizer(d, vectors.len(), true)? * tensor_product(vectors))
}

/// Degree cap used when none is given.
pub const DEFAULT_DEGREE_CAP: usize = 3;

/// One tensor degree of a Fock sector.
#[derive(Debug, Clone, PartialEq)]
pub struct FockDegree {
    pub degree: usize,
    pub projector: CMatrix,
    /// Orthonormal basis of the projector's range.
    pub basis: CMatrix,
}

impl FockDegree {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }
}

/// Graded Fock space: symmetric powers form the even sector and
/// antisymmetric powers the odd sector, each truncated at `degree_cap`.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperFock {
    pub single_particle_dim: usize,
    pub degree_cap: usize,
    pub symmetric: Vec<FockDegree>,
    pub antisymmetric: Vec<FockDegree>,
}

impl SuperFock {
    pub fn symmetric_dims(&self) -> Vec<usize> {
        self.symmetric.iter().map(FockDegree::dim).collect()
    }

    pub fn antisymmetric_dims(&self) -> Vec<usize> {
        self.antisymmetric.iter().map(FockDegree::dim).collect()
    }

    pub fn even_dim(&self) -> usize {
        self.symmetric_dims().iter().sum()
    }

    pub fn odd_dim(&self) -> usize {
        self.antisymmetric_dims().iter().sum()
    }

    /// `+1` on the even sector and `-1` on the odd sector.
    pub fn parity(&self) -> CMatrix {
        let (e, o) = (self.even_dim(), self.odd_dim());
        CMatrix::from_diagonal(&CVector::from_fn(e + o, |i, _| if i < e { ONE } else { -ONE }))
    }
}

fn fock_degree(d: usize, n: usize, antisymmetric: bool) -> Result<FockDegree> {
    let projector = symmetrizer(d, n, antisymmetric)?;
    let rank = crate::linalg::numerical_rank(&projector, 1e-10);
    let basis = if rank == 0 {
        CMatrix::zeros(projector.nrows(), 0)
    } else {
        crate::linalg::canonical_basis(&projector, rank)
    };
    Ok(FockDegree { degree: n, projector, basis })
}

pub fn build_super_fock(d: usize, degree_cap: usize) -> Result<SuperFock> {
    if d == 0 {
        return Err(Error::InvalidArgument("single-particle dimension must be positive".into()));
    }
    let symmetric = (0..=degree_cap).map(|n| fock_degree(d, n, false)).collect::<Result<_>>()?;
    let antisymmetric = (0..=degree_cap).map(|n| fock_degree(d, n, true)).collect::<Result<_>>()?;
    Ok(SuperFock {
        single_particle_dim: d,
        degree_cap,
        symmetric,
        antisymmetric,
    })
}

/// `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
