mod common;

use proptest::prelude::*;
use rand::Rng;
use ssi_core::fock::{weyl_phase, WeylOp};
use ssi_core::induce::{
    first_order_residual, imprimitivity_check, induced_apply, induced_apply_element, little_group_element,
    pvm_apply, section_norm_sqr, strict_cocycle, strict_cocycle_residual, CocycleData, CocycleSpec, ConeQuadrature,
    CosetSection, LittleGroupRep, PVMRegion, Profile, Section, Spinor,
};
use ssi_core::linalg::{c, max_abs, CMatrix, C64, ONE};
use ssi_core::poincare::{
    group_inv, group_mul, pairing, standard_boost, E2Element, FourVector, PoincareElement, LIGHTLIKE_BASE, SL2,
};
use ssi_core::random::{self, Rng64};
use ssi_core::Error;

fn section(rng: &mut Rng64, samples: Vec<FourVector>) -> Section {
    let spinor = Spinor::from_fn(|_, _| random::complex_normal(rng));
    let center = std::array::from_fn(|_| random::normal(rng));
    Section::new(Profile::gaussian(center, 1.2, spinor), samples)
}

fn points(rng: &mut Rng64, n: usize) -> Vec<FourVector> {
    (0..n).map(|_| random::cone_point(rng)).collect()
}

fn region(rng: &mut Rng64) -> PVMRegion {
    let lo: [f64; 4] = std::array::from_fn(|_| rng.random_range(-2.0..0.5));
    let hi = std::array::from_fn(|k| lo[k] + rng.random_range(0.5..3.0));
    let normal = std::array::from_fn(|_| random::normal(rng));
    PVMRegion::boxed(lo, hi).intersect(&PVMRegion::half_space(normal, 0.1))
}

proptest! {
    #![proptest_config(common::config(48))]

    #[test]
    fn induced_action_is_a_representation(mut rng in common::seeded()) {
        let pts = points(&mut rng, 8);
        let s = section(&mut rng, pts.clone());
        let (g1, g2) = (random::poincare(&mut rng), random::poincare(&mut rng));
        let lhs = induced_apply_element(&g1, &induced_apply_element(&g2, &s).unwrap()).unwrap();
        let rhs = induced_apply_element(&group_mul(&g1, &g2), &s).unwrap();
        let scale = pts.iter().map(|p| lhs.eval(p).norm()).fold(1.0, f64::max);
        prop_assert!(lhs.max_diff(&rhs, &pts) <= 1e-9 * scale);
    }

    #[test]
    fn induced_action_stays_in_the_fiber(mut rng in common::seeded()) {
        let pts = points(&mut rng, 8);
        let s = section(&mut rng, pts);
        let moved = induced_apply_element(&random::poincare(&mut rng), &s).unwrap();
        let scale = moved.samples.iter().map(|p| p.t() * moved.eval(p).norm()).fold(1.0, f64::max);
        prop_assert!(moved.fiber_residual() <= 1e-10 * scale);
    }

    #[test]
    fn imprimitivity_holds_pointwise(mut rng in common::seeded()) {
        let pts = points(&mut rng, 16);
        let s = section(&mut rng, pts.clone());
        let g = random::poincare(&mut rng);
        prop_assert!(imprimitivity_check(&g, &region(&mut rng), &s, &pts).unwrap() <= 1e-12);
    }

    #[test]
    fn pvm_is_multiplicative(mut rng in common::seeded()) {
        let pts = points(&mut rng, 16);
        let s = section(&mut rng, pts.clone());
        let (e, f) = (region(&mut rng), region(&mut rng));
        let ef = pvm_apply(&e, &pvm_apply(&f, &s));
        prop_assert_eq!(ef.max_diff(&pvm_apply(&e.intersect(&f), &s), &pts), 0.0);
        prop_assert_eq!(pvm_apply(&e, &pvm_apply(&e, &s)).max_diff(&pvm_apply(&e, &s), &pts), 0.0);
        prop_assert_eq!(pvm_apply(&PVMRegion::everything(), &s).max_diff(&s, &pts), 0.0);
    }

    #[test]
    fn translations_act_by_characters(mut rng in common::seeded()) {
        let pts = points(&mut rng, 8);
        let s = section(&mut rng, pts.clone());
        let x = random::four_vector(&mut rng);
        let moved = induced_apply(&SL2::identity(), &x, &s).unwrap();
        for p in &pts {
            let expected = s.eval(p) * C64::from_polar(1.0, pairing(&x, p));
            prop_assert!((moved.eval(p) - expected).norm() <= 1e-13 * (1.0 + expected.norm()));
        }
    }

    #[test]
    fn first_order_cocycle_identity(mut rng in common::seeded(), t in -3.0..3.0f64, s in -3.0..3.0f64) {
        let spec = CocycleSpec::new(
            random::complex_vector(&mut rng, 2),
            vec![(random::hermitian(&mut rng, 3), random::complex_vector(&mut rng, 3))],
        ).unwrap();
        prop_assert!(first_order_residual(&spec, t, s).unwrap() <= 1e-12 * (1.0 + t.abs() + s.abs()));
    }

    #[test]
    fn cocycle_weyl_family_is_projective(mut rng in common::seeded(), t in -2.0..2.0f64, s in -2.0..2.0f64) {
        let spec = CocycleSpec::new(
            random::complex_vector(&mut rng, 1),
            vec![(random::hermitian(&mut rng, 2), random::complex_vector(&mut rng, 2))],
        ).unwrap();
        let (wt, ws) = (spec.weyl(t).unwrap(), spec.weyl(s).unwrap());
        let composed = wt.compose(&ws);
        let direct = spec.weyl(t + s).unwrap();
        prop_assert!((composed.v - &direct.v).camax() <= 1e-12 * 10.0);
        prop_assert!(max_abs(&(composed.u - &direct.u)) <= 1e-12);
        prop_assert!((weyl_phase(&wt, &ws).norm() - 1.0).abs() <= 1e-14);
    }
}

fn tabulated(rng: &mut Rng64, n: usize) -> (CocycleData, Vec<FourVector>) {
    let pts = points(rng, n);
    let cd = CocycleData {
        m: LittleGroupRep { weights: vec![1, -2, 3] },
        section: CosetSection::tabulate(&pts).unwrap(),
    };
    (cd, pts)
}

fn coset(p: &FourVector) -> PoincareElement {
    PoincareElement::lorentz(standard_boost(p).unwrap())
}

fn little(rng: &mut Rng64) -> PoincareElement {
    little_group_element(&random::e2(rng), random::four_vector(rng)).unwrap()
}

#[test]
fn strict_cocycle_on_tabulated_triples() {
    let mut rng = random::rng(11);
    let (cd, pts) = tabulated(&mut rng, 60);
    for k in 0..20 {
        let (p1, p2, p3) = (pts[3 * k], pts[3 * k + 1], pts[3 * k + 2]);
        let g3 = group_mul(&coset(&p3), &little(&mut rng));
        let g2 = group_mul(&group_mul(&coset(&p2), &little(&mut rng)), &group_inv(&coset(&p3)));
        let g1 = group_mul(&group_mul(&coset(&p1), &little(&mut rng)), &group_inv(&coset(&p2)));
        assert!(strict_cocycle_residual(&cd, &g1, &g2, &g3).unwrap() <= 1e-10);
        let f = strict_cocycle(&cd, &g2, &g3).unwrap();
        assert!(max_abs(&(f.adjoint() * &f - CMatrix::identity(3, 3))) <= 1e-12);
    }
}

#[test]
fn cocycle_restricts_to_the_little_group_rep() {
    let mut rng = random::rng(12);
    let (cd, _) = tabulated(&mut rng, 5);
    for _ in 0..50 {
        let h = little(&mut rng);
        assert_eq!(cd.b(&h).unwrap(), cd.m.unitary(&h).unwrap());
    }
}

#[test]
fn little_group_rep_is_a_homomorphism() {
    let mut rng = random::rng(13);
    let m = LittleGroupRep { weights: vec![2, -1] };
    for _ in 0..20 {
        let (h1, h2) = (little(&mut rng), little(&mut rng));
        let lhs = m.unitary(&group_mul(&h1, &h2)).unwrap();
        let rhs = m.unitary(&h1).unwrap() * m.unitary(&h2).unwrap();
        assert!(max_abs(&(lhs - rhs)) <= 1e-12);
    }
}

#[test]
fn untabulated_cosets_are_reported() {
    let cd = CocycleData {
        m: LittleGroupRep { weights: vec![1] },
        section: CosetSection::tabulate(&[]).unwrap(),
    };
    let g = PoincareElement::lorentz(SL2::boost([1.0, 0.0, 0.0], 0.3));
    assert!(matches!(cd.b(&g), Err(Error::CosetLookup(_))));
    assert!(cd.b(&PoincareElement::identity()).is_ok());
}

#[test]
fn norm_is_invariant_under_little_group_and_boosts() {
    let quad = ConeQuadrature::new(14.0, 60, 48, 48);
    let spinor = Spinor::new(ONE, c(0.5, 0.5), ONE, c(0.0, -1.0));
    let s = Section::new(Profile::gaussian([0.3, -0.2, 1.0], 0.8, spinor), vec![LIGHTLIKE_BASE]);
    let base = section_norm_sqr(&s, &quad);
    assert!(base > 1.0);
    let e2 = little_group_element(&E2Element::new(C64::from_polar(1.0, 0.7), c(0.4, -0.3)).unwrap(), FourVector::new(0.3, 0.1, -0.2, 0.5)).unwrap();
    let boost = PoincareElement::lorentz(SL2::boost([0.0, 0.0, 1.0], 0.5));
    for g in [e2, boost, group_mul(&boost, &e2)] {
        let moved = section_norm_sqr(&induced_apply_element(&g, &s).unwrap(), &quad);
        assert!((moved - base).abs() <= 1e-8 * base, "{moved} vs {base}");
    }
}

#[test]
fn chirality_sectors_are_preserved() {
    let spinor = Spinor::new(ONE, ONE, ONE, ONE);
    let pts = vec![FourVector::lightlike(0.3, 0.4, 1.1), FourVector::lightlike(-0.9, 0.2, 0.1)];
    let plus = Section::new(Profile::gaussian([0.0; 3], 1.0, spinor).with_chirality(1.0), pts.clone());
    let moved = induced_apply(&random::sl2(&mut random::rng(3)), &FourVector::ZERO, &plus).unwrap();
    for p in &pts {
        let v = moved.eval(p);
        assert!(v[2].norm() + v[3].norm() < 1e-14);
    }
}

#[test]
fn identity_weyl_composition() {
    let w = WeylOp::identity(2);
    assert_eq!(w.compose(&w), w);
}
