//! Z2-graded linear algebra: super Hilbert form, super adjoint and the
//! graded commutator on `C^{d0} + C^{d1}`.
//!
//! The super form is `<x, y> = (x0, y0) + i (x1, y1)` with `(.,.)` antilinear
//! in its first slot, i.e. `x* G y` for the Gram matrix `G = diag(I, i I)`.

use std::ops::Mul;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector, C64, I, ONE, ZERO};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_bit(bit: u8) -> Self {
        if bit % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `(-1)^(p q)`.
    pub fn sign(self, other: Parity) -> f64 {
        if self == Parity::Odd && other == Parity::Odd {
            -1.0
        } else {
            1.0
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GradedVector {
    pub even: CVector,
    pub odd: CVector,
}

impl GradedVector {
    pub fn new(even: CVector, odd: CVector) -> Self {
        Self { even, odd }
    }

    pub fn zeros(d0: usize, d1: usize) -> Self {
        Self::new(CVector::zeros(d0), CVector::zeros(d1))
    }

    pub fn even_part(v: CVector, d1: usize) -> Self {
        Self::new(v, CVector::zeros(d1))
    }

    pub fn odd_part(d0: usize, v: CVector) -> Self {
        Self::new(CVector::zeros(d0), v)
    }

    pub fn from_flat(v: &CVector, d0: usize) -> Self {
        let d1 = v.len() - d0;
        Self::new(v.rows(0, d0).into_owned(), v.rows(d0, d1).into_owned())
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.even.len(), self.odd.len())
    }

    pub fn to_flat(&self) -> CVector {
        let (d0, d1) = self.dims();
        CVector::from_iterator(d0 + d1, self.even.iter().chain(self.odd.iter()).copied())
    }

    /// `None` for mixed vectors; the zero vector counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let has_even = self.even.iter().any(|z| *z != ZERO);
        let has_odd = self.odd.iter().any(|z| *z != ZERO);
        match (has_even, has_odd) {
            (_, false) => Some(Parity::Even),
            (false, true) => Some(Parity::Odd),
            (true, true) => None,
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.even.norm_squared() + self.odd.norm_squared()
    }
}

/// Block operator `[[ee, eo], [oe, oo]]` on `C^{d0} + C^{d1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedOperator {
    d0: usize,
    d1: usize,
    m: CMatrix,
}

impl GradedOperator {
    pub fn from_matrix(m: CMatrix, d0: usize) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                found: m.ncols(),
            });
        }
        if d0 > m.nrows() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                found: d0,
            });
        }
        let d1 = m.nrows() - d0;
        Ok(Self { d0, d1, m })
    }

    pub fn from_blocks(ee: &CMatrix, eo: &CMatrix, oe: &CMatrix, oo: &CMatrix) -> Result<Self> {
        let (d0, d1) = (ee.nrows(), oo.nrows());
        for (block, rows, cols) in [(ee, d0, d0), (eo, d0, d1), (oe, d1, d0), (oo, d1, d1)] {
            if block.nrows() != rows || block.ncols() != cols {
                return Err(Error::DimensionMismatch {
                    expected: rows * cols,
                    found: block.nrows() * block.ncols(),
                });
            }
        }
        let mut m = CMatrix::zeros(d0 + d1, d0 + d1);
        m.view_mut((0, 0), (d0, d0)).copy_from(ee);
        m.view_mut((0, d0), (d0, d1)).copy_from(eo);
        m.view_mut((d0, 0), (d1, d0)).copy_from(oe);
        m.view_mut((d0, d0), (d1, d1)).copy_from(oo);
        Ok(Self { d0, d1, m })
    }

    pub fn identity(d0: usize, d1: usize) -> Self {
        Self {
            d0,
            d1,
            m: CMatrix::identity(d0 + d1, d0 + d1),
        }
    }

    pub fn zeros(d0: usize, d1: usize) -> Self {
        Self {
            d0,
            d1,
            m: CMatrix::zeros(d0 + d1, d0 + d1),
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.d0, self.d1)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn ee(&self) -> CMatrix {
        self.m.view((0, 0), (self.d0, self.d0)).into_owned()
    }

    pub fn eo(&self) -> CMatrix {
        self.m.view((0, self.d0), (self.d0, self.d1)).into_owned()
    }

    pub fn oe(&self) -> CMatrix {
        self.m.view((self.d0, 0), (self.d1, self.d0)).into_owned()
    }

    pub fn oo(&self) -> CMatrix {
        self.m.view((self.d0, self.d0), (self.d1, self.d1)).into_owned()
    }

    /// Exact zero test on the off-diagonal and diagonal blocks; the zero
    /// operator is even. `None` means mixed.
    pub fn parity(&self) -> Option<Parity> {
        let zero = |b: CMatrix| b.iter().all(|z| *z == ZERO);
        if zero(self.eo()) && zero(self.oe()) {
            Some(Parity::Even)
        } else if zero(self.ee()) && zero(self.oo()) {
            Some(Parity::Odd)
        } else {
            None
        }
    }

    pub fn homogeneous_parity(&self) -> Result<Parity> {
        self.parity().ok_or(Error::MixedParity)
    }

    pub fn apply(&self, x: &GradedVector) -> Result<GradedVector> {
        self.check_vector(x)?;
        Ok(GradedVector::from_flat(&(&self.m * x.to_flat()), self.d0))
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_operator(other)?;
        Ok(Self {
            d0: self.d0,
            d1: self.d1,
            m: &self.m * &other.m,
        })
    }

    /// Hilbert-space adjoint `T*` (ignores the grading).
    pub fn hilbert_adjoint(&self) -> Self {
        Self {
            d0: self.d0,
            d1: self.d1,
            m: self.m.adjoint(),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            d0: self.d0,
            d1: self.d1,
            m: &self.m * s,
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_operator(other)?;
        Ok(Self {
            d0: self.d0,
            d1: self.d1,
            m: &self.m - &other.m,
        })
    }

    fn check_vector(&self, x: &GradedVector) -> Result<()> {
        if x.dims() != self.dims() {
            return Err(Error::DimensionMismatch {
                expected: self.d0 + self.d1,
                found: x.dims().0 + x.dims().1,
            });
        }
        Ok(())
    }

    fn check_operator(&self, other: &Self) -> Result<()> {
        if other.dims() != self.dims() {
            return Err(Error::DimensionMismatch {
                expected: self.d0 + self.d1,
                found: other.d0 + other.d1,
            });
        }
        Ok(())
    }
}

impl Mul for &GradedOperator {
    type Output = GradedOperator;
    fn mul(self, rhs: Self) -> GradedOperator {
        self.compose(rhs).expect("graded operators of different shapes")
    }
}

/// `diag(a I_{d0}, b I_{d1})`.
fn block_scalar(d0: usize, d1: usize, a: C64, b: C64) -> CMatrix {
    CMatrix::from_diagonal(&CVector::from_iterator(
        d0 + d1,
        (0..d0 + d1).map(|k| if k < d0 { a } else { b }),
    ))
}

/// Gram matrix of the super form.
pub fn super_gram(d0: usize, d1: usize) -> CMatrix {
    block_scalar(d0, d1, ONE, I)
}

/// `(x0, y0) + i (x1, y1)`: zero on opposite-parity pairs, the inner product on
/// even pairs, `i` times it on odd pairs, and sesquilinear on mixed vectors.
pub fn super_form(x: &GradedVector, y: &GradedVector) -> Result<C64> {
    if x.dims() != y.dims() {
        return Err(Error::DimensionMismatch {
            expected: x.dims().0 + x.dims().1,
            found: y.dims().0 + y.dims().1,
        });
    }
    Ok(x.even.dotc(&y.even) + I * x.odd.dotc(&y.odd))
}

/// The super adjoint `T+` defined by `<T x, y> = (-1)^(p(T) p(x)) <x, T+ y>`.
///
/// Writing `<x, y> = x* G y` and `S = diag(I, (-1)^p(T) I)` the relation reads
/// `T* G = S G T+` for every `x`, so `T+ = G^{-1} S T* G`. This gives `T*` for
/// even `T` and `i T*` for odd `T`.
pub fn super_adjoint(t: &GradedOperator) -> Result<GradedOperator> {
    let parity = t.homogeneous_parity()?;
    let (d0, d1) = t.dims();
    let g = super_gram(d0, d1);
    let g_inv = block_scalar(d0, d1, ONE, -I);
    let s = block_scalar(d0, d1, ONE, C64::from(Parity::Odd.sign(parity)));
    let m = g_inv * s * t.matrix().adjoint() * g;
    GradedOperator::from_matrix(m, d0)
}

/// `[a, b] = ab - (-1)^(p(a) p(b)) ba`.
pub fn super_bracket(a: &GradedOperator, b: &GradedOperator) -> Result<GradedOperator> {
    let pa = a.homogeneous_parity()?;
    let pb = b.homogeneous_parity()?;
    a.check_operator(b)?;
    let sign = C64::from(pa.sign(pb));
    let m = a.matrix() * b.matrix() - b.matrix() * a.matrix() * sign;
    GradedOperator::from_matrix(m, a.d0)
}

/// Parity of `[a, b]` for homogeneous inputs.
pub fn bracket_parity(pa: Parity, pb: Parity) -> Parity {
    Parity::from_bit(pa.bit() + pb.bit())
}
