use rand::Rng;
use ssi_core::linalg::{max_abs, CMatrix, C64};
use ssi_core::random::{self, Rng64};
use ssi_core::supergrade::{bracket_parity, super_adjoint, super_bracket, super_form, GradedOperator, GradedVector, Parity};

use super::{guarded, structural};
use crate::{Check, SuiteConfig};

const D0: usize = 2;
const D1: usize = 3;

fn parity(rng: &mut Rng64) -> Parity {
    if rng.random::<bool>() {
        Parity::Odd
    } else {
        Parity::Even
    }
}

fn operator(rng: &mut Rng64, p: Parity) -> ssi_core::Result<GradedOperator> {
    let z = CMatrix::zeros;
    let mut g = |r, c| random::complex_matrix(rng, r, c);
    match p {
        Parity::Even => GradedOperator::from_blocks(&g(D0, D0), &z(D0, D1), &z(D1, D0), &g(D1, D1)),
        Parity::Odd => GradedOperator::from_blocks(&z(D0, D0), &g(D0, D1), &g(D1, D0), &z(D1, D1)),
    }
}

fn vector(rng: &mut Rng64, p: Parity) -> GradedVector {
    match p {
        Parity::Even => GradedVector::even_part(random::complex_vector(rng, D0), D1),
        Parity::Odd => GradedVector::odd_part(D0, random::complex_vector(rng, D1)),
    }
}

pub fn run(cfg: &SuiteConfig, rng: &mut Rng64) -> Vec<Check> {
    let n = cfg.grid_size("samples");
    let tol = cfg.tolerance("exact");
    vec![
        guarded("form graded symmetry", tol, || {
            let mut worst = 0.0_f64;
            for _ in 0..n {
                let (px, py) = (parity(rng), parity(rng));
                let (x, y) = (vector(rng, px), vector(rng, py));
                let lhs = super_form(&y, &x)?;
                let rhs = super_form(&x, &y)?.conj() * px.sign(py);
                worst = worst.max((lhs - rhs).norm() / (x.norm_sqr() * y.norm_sqr()).sqrt());
            }
            Ok((worst, format!("<y,x> = (-1)^(p(x)p(y)) conj <x,y>, {n} homogeneous pairs")))
        }),
        guarded("super adjoint relation", tol, || {
            let mut worst = 0.0_f64;
            for _ in 0..n {
                let (px, py, pt) = (parity(rng), parity(rng), parity(rng));
                let (x, y, t) = (vector(rng, px), vector(rng, py), operator(rng, pt)?);
                let lhs = super_form(&t.apply(&x)?, &y)?;
                let rhs = super_form(&x, &super_adjoint(&t)?.apply(&y)?)? * pt.sign(px);
                let scale = (x.norm_sqr() * y.norm_sqr()).sqrt() * t.matrix().norm();
                worst = worst.max((lhs - rhs).norm() / scale);
            }
            Ok((worst, format!("<T x, y> = (-1)^(p(T)p(x)) <x, T+ y>, {n} triples")))
        }),
        guarded("bracket antisymmetry", tol, || {
            let mut worst = 0.0_f64;
            for _ in 0..n {
                let (pa, pb) = (parity(rng), parity(rng));
                let (a, b) = (operator(rng, pa)?, operator(rng, pb)?);
                let sum = super_bracket(&a, &b)?.matrix() + super_bracket(&b, &a)?.matrix() * C64::from(pa.sign(pb));
                worst = worst.max(max_abs(&sum) / (a.matrix().norm() * b.matrix().norm()));
            }
            Ok((worst, format!("[A,B] = -(-1)^(p(A)p(B)) [B,A], {n} pairs")))
        }),
        guarded("graded Jacobi identity", tol, || {
            let mut worst = 0.0_f64;
            for _ in 0..n {
                let (pa, pb, pc) = (parity(rng), parity(rng), parity(rng));
                let (a, b, c) = (operator(rng, pa)?, operator(rng, pb)?, operator(rng, pc)?);
                let lhs = super_bracket(&a, &super_bracket(&b, &c)?)?;
                let r1 = super_bracket(&super_bracket(&a, &b)?, &c)?;
                let r2 = super_bracket(&b, &super_bracket(&a, &c)?)?;
                let diff = lhs.matrix() - r1.matrix() - r2.matrix() * C64::from(pa.sign(pb));
                let scale = a.matrix().norm() * b.matrix().norm() * c.matrix().norm();
                worst = worst.max(max_abs(&diff) / scale);
            }
            Ok((worst, format!("[A,[B,C]] = [[A,B],C] + (-1)^(p(A)p(B)) [B,[A,C]], {n} triples")))
        }),
        guarded("odd self-bracket nilpotency", tol, || {
            let mut worst = 0.0_f64;
            for _ in 0..n {
                let a = operator(rng, Parity::Odd)?;
                let aaa = super_bracket(&a, &super_bracket(&a, &a)?)?;
                worst = worst.max(max_abs(aaa.matrix()) / a.matrix().norm().powi(3));
            }
            Ok((worst, format!("[a,[a,a]] = 0 for odd a, {n} samples")))
        }),
        structural("bracket parity", || {
            let mut ok = true;
            for _ in 0..n {
                let (pa, pb) = (parity(rng), parity(rng));
                let br = super_bracket(&operator(rng, pa)?, &operator(rng, pb)?)?;
                ok &= br.parity() == Some(bracket_parity(pa, pb));
            }
            Ok((ok, format!("p([A,B]) = p(A) + p(B) mod 2, {n} pairs")))
        }),
    ]
}
