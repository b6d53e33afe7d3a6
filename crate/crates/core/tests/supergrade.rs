mod common;

use proptest::prelude::*;
use ssi_core::linalg::{c, max_abs, CMatrix, C64, I, ONE};
use ssi_core::random::{self, Rng64};
use ssi_core::supergrade::{
    bracket_parity, super_adjoint, super_bracket, super_form, super_gram, GradedOperator, GradedVector, Parity,
};
use ssi_core::Error;

const D0: usize = 2;
const D1: usize = 3;

fn operator(rng: &mut Rng64, parity: Parity) -> GradedOperator {
    let z = |r, c| CMatrix::zeros(r, c);
    let mut g = |r, c| random::complex_matrix(rng, r, c);
    match parity {
        Parity::Even => GradedOperator::from_blocks(&g(D0, D0), &z(D0, D1), &z(D1, D0), &g(D1, D1)),
        Parity::Odd => GradedOperator::from_blocks(&z(D0, D0), &g(D0, D1), &g(D1, D0), &z(D1, D1)),
    }
    .unwrap()
}

fn vector(rng: &mut Rng64, parity: Parity) -> GradedVector {
    match parity {
        Parity::Even => GradedVector::even_part(random::complex_vector(rng, D0), D1),
        Parity::Odd => GradedVector::odd_part(D0, random::complex_vector(rng, D1)),
    }
}

fn parity() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Even), Just(Parity::Odd)]
}

proptest! {
    #![proptest_config(common::config(64))]

    #[test]
    fn form_is_graded_hermitian(mut rng in common::seeded(), px in parity(), py in parity()) {
        let (x, y) = (vector(&mut rng, px), vector(&mut rng, py));
        let lhs = super_form(&y, &x).unwrap();
        let rhs = super_form(&x, &y).unwrap().conj() * px.sign(py);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm()));
    }

    #[test]
    fn form_matches_gram_matrix(mut rng in common::seeded()) {
        let x = GradedVector::new(random::complex_vector(&mut rng, D0), random::complex_vector(&mut rng, D1));
        let y = GradedVector::new(random::complex_vector(&mut rng, D0), random::complex_vector(&mut rng, D1));
        let direct = x.to_flat().dotc(&(super_gram(D0, D1) * y.to_flat()));
        prop_assert!((super_form(&x, &y).unwrap() - direct).norm() <= 1e-12 * (1.0 + direct.norm()));
    }

    #[test]
    fn adjoint_defining_relation(mut rng in common::seeded(), pt in parity(), px in parity(), py in parity()) {
        let t = operator(&mut rng, pt);
        let (x, y) = (vector(&mut rng, px), vector(&mut rng, py));
        let lhs = super_form(&t.apply(&x).unwrap(), &y).unwrap();
        let rhs = super_form(&x, &super_adjoint(&t).unwrap().apply(&y).unwrap()).unwrap() * pt.sign(px);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm()));
    }

    #[test]
    fn adjoint_preserves_parity(mut rng in common::seeded(), pt in parity()) {
        let t = operator(&mut rng, pt);
        prop_assert_eq!(super_adjoint(&t).unwrap().parity(), Some(pt));
    }

    #[test]
    fn bracket_is_graded_antisymmetric(mut rng in common::seeded(), pa in parity(), pb in parity()) {
        let (a, b) = (operator(&mut rng, pa), operator(&mut rng, pb));
        let ab = super_bracket(&a, &b).unwrap();
        let ba = super_bracket(&b, &a).unwrap();
        prop_assert!(max_abs(&(ab.matrix() + ba.matrix() * C64::from(pa.sign(pb)))) <= 1e-12 * (1.0 + max_abs(ab.matrix())));
        prop_assert!(ab.parity().is_none_or(|p| p == bracket_parity(pa, pb)));
    }

    #[test]
    fn graded_jacobi(mut rng in common::seeded(), pa in parity(), pb in parity(), pc in parity()) {
        let (a, b, cc) = (operator(&mut rng, pa), operator(&mut rng, pb), operator(&mut rng, pc));
        let br = |x: &GradedOperator, y: &GradedOperator| super_bracket(x, y).unwrap();
        // [a,[b,c]] = [[a,b],c] + (-1)^(ab) [b,[a,c]]
        let lhs = br(&a, &br(&b, &cc));
        let rhs = br(&br(&a, &b), &cc).matrix() + br(&b, &br(&a, &cc)).matrix() * C64::from(pa.sign(pb));
        prop_assert!(max_abs(&(lhs.matrix() - rhs)) <= 1e-11 * (1.0 + max_abs(lhs.matrix())));
    }

    #[test]
    fn odd_self_bracket_is_nilpotent_in_triple(mut rng in common::seeded()) {
        let a = operator(&mut rng, Parity::Odd);
        let aa = super_bracket(&a, &a).unwrap();
        prop_assert_eq!(aa.parity(), Some(Parity::Even));
        prop_assert!(max_abs(super_bracket(&a, &aa).unwrap().matrix()) <= 1e-12 * max_abs(aa.matrix()).max(1.0));
    }
}

#[test]
fn odd_self_bracket_is_twice_the_square() {
    let mut rng = random::rng(7);
    let a = operator(&mut rng, Parity::Odd);
    let aa = super_bracket(&a, &a).unwrap();
    assert!(max_abs(&(aa.matrix() - a.matrix() * a.matrix() * c(2.0, 0.0))) < 1e-12);
}

#[test]
fn mixed_operators_are_rejected() {
    let m = CMatrix::from_element(D0 + D1, D0 + D1, ONE);
    let t = GradedOperator::from_matrix(m, D0).unwrap();
    assert_eq!(t.parity(), None);
    assert_eq!(t.homogeneous_parity(), Err(Error::MixedParity));
    assert_eq!(super_adjoint(&t), Err(Error::MixedParity));
}

#[test]
fn zero_operator_is_even() {
    assert_eq!(GradedOperator::zeros(D0, D1).parity(), Some(Parity::Even));
}

#[test]
fn odd_pairs_pick_up_i() {
    let x = GradedVector::odd_part(D0, ssi_core::CVector::from_element(D1, ONE));
    assert_eq!(super_form(&x, &x).unwrap(), I * 3.0);
}
