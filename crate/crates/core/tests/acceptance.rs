//! Acceptance suite: one line per criterion, non-zero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use nalgebra::Matrix4;
use rand::Rng;
use ssi_core::clifford::{make_gammas, ETA};
use ssi_core::fock::{exp_inner, product_law_residual, weyl_apply, ExpVectorState, WeylOp};
use ssi_core::induce::{
    first_order_residual, imprimitivity_check, little_group_element, CocycleData, CocycleSpec, CosetSection,
    LittleGroupRep, PVMRegion, Profile, Section, Spinor,
};
use ssi_core::linalg::{c, max_abs, principal_angles, unitarity_residual, CMatrix, CVector, C64, ONE};
use ssi_core::poincare::{
    act, covering_map, e2_embed, group_inv, group_mul, invariant_weight, minkowski_metric, standard_boost,
    FourVector, PoincareElement, LIGHTLIKE_BASE, SL2,
};
use ssi_core::qstoch::{fermion_ladder, halves_each_step, observed_orders, LADDER};
use ssi_core::random::{self, Rng64};
use ssi_core::spinbundle::{bundle_action, fiber_at, helicity_split, kernel_dimension, massive_basis};
use ssi_core::supergrade::{super_adjoint, super_bracket, super_form, GradedOperator, GradedVector, Parity};
use ssi_core::susy::{oscillator_convergence, parity_charges, parity_hand_model, susy_verify, witten_build, ParityCharge};

const SEED: u64 = 20_240_601;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn stream(name: &str) -> Rng64 {
    random::rng_for(SEED, name)
}

fn sci(values: &[f64]) -> String {
    let parts: Vec<String> = values.iter().map(|v| format!("{v:.2e}")).collect();
    format!("[{}]", parts.join(", "))
}

fn mat4_max(m: &Matrix4<f64>) -> f64 {
    m.iter().fold(0.0, |a, x| a.max(x.abs()))
}

fn gamma_algebra() -> Outcome {
    let start = Instant::now();
    let g = make_gammas();
    let id = CMatrix::identity(4, 4);
    let mut clifford = 0.0_f64;
    let mut chiral = 0.0_f64;
    for mu in 0..4 {
        for nu in 0..4 {
            let eta = if mu == nu { ETA[mu] } else { 0.0 };
            let anti = &g.gamma[mu] * &g.gamma[nu] + &g.gamma[nu] * &g.gamma[mu];
            clifford = clifford.max(max_abs(&(anti - &id * c(2.0 * eta, 0.0))));
        }
        chiral = chiral.max(max_abs(&(&g.chirality * &g.gamma[mu] + &g.gamma[mu] * &g.chirality)));
    }
    let elapsed = start.elapsed();
    outcome(
        clifford == 0.0 && chiral == 0.0 && elapsed < Duration::from_secs(1),
        format!("clifford {clifford:e}, chirality {chiral:e}, {elapsed:?}"),
    )
}

fn covering_map_checks() -> Outcome {
    let mut rng = stream("covering");
    let eta = minkowski_metric();
    let (mut hom, mut metric) = (0.0_f64, 0.0_f64);
    for _ in 0..100 {
        let (h1, h2) = (random::sl2(&mut rng), random::sl2(&mut rng));
        let (d1, d2) = (covering_map(&h1), covering_map(&h2));
        hom = hom.max(mat4_max(&(covering_map(&(h1 * h2)) - d1 * d2)));
        metric = metric.max(mat4_max(&(d1.transpose() * eta * d1 - eta)));
    }
    let minus = SL2::new(-*SL2::identity().matrix()).expect("-I is unimodular");
    let sign = mat4_max(&(covering_map(&minus) - Matrix4::identity())).max(mat4_max(&(covering_map(&SL2::identity()) - Matrix4::identity())));
    outcome(
        hom <= 1e-10 && metric <= 1e-10 && sign <= 1e-10,
        format!("homomorphism {hom:e}, metric {metric:e}, kernel {sign:e}"),
    )
}

fn little_group() -> Outcome {
    let mut rng = stream("little");
    let mut fixed = 0.0_f64;
    let mut character = 0.0_f64;
    let fiber = fiber_at(&LIGHTLIKE_BASE).expect("base point fiber");
    let (plus, minus) = helicity_split(&fiber).expect("chirality split");
    for _ in 0..100 {
        let e = random::e2(&mut rng);
        let h = e2_embed(&e).expect("unit phase");
        fixed = fixed.max(act(&h, &LIGHTLIKE_BASE).max_abs_diff(&LIGHTLIKE_BASE));
        // Chirality +1 line scales by 1/z, chirality -1 line by z.
        for (line, scalar) in [(&plus, e.z.inv()), (&minus, e.z)] {
            let v: CVector = line.basis.column(0).into();
            let (_, w) = bundle_action(&h, &LIGHTLIKE_BASE, &v).expect("fiber vector");
            character = character.max((w - &v * scalar).camax());
        }
    }
    outcome(fixed <= 1e-10 && character <= 1e-10, format!("fixed point {fixed:e}, characters {character:e}"))
}

fn fibers() -> Outcome {
    let mut rng = stream("fibers");
    let kernel_ok = (0..100).all(|_| kernel_dimension(&random::cone_point(&mut rng)) == 2);
    let massless = massive_basis(0.0).expect("m = 0").span();
    let angles: Vec<f64> = (1..=6)
        .map(|k| {
            let m = 10f64.powi(-k);
            principal_angles(&massive_basis(m).expect("m > 0").span(), &massless)
                .into_iter()
                .fold(0.0, f64::max)
        })
        .collect();
    let monotone = angles.windows(2).all(|w| w[1] < w[0]);
    let last = *angles.last().expect("six masses");
    outcome(
        kernel_ok && monotone && last <= 1e-5,
        format!("kernel dim 2 at 100 points: {kernel_ok}, angles {}", sci(&angles)),
    )
}

fn random_region(rng: &mut Rng64) -> PVMRegion {
    let mut corner = || -> ([f64; 4], [f64; 4]) {
        let lo = std::array::from_fn(|_| rng.random_range(-2.0..0.5));
        let hi = std::array::from_fn(|k| lo[k] + rng.random_range(0.5..3.0));
        (lo, hi)
    };
    let (lo, hi) = corner();
    let boxed = PVMRegion::boxed(lo, hi);
    let normal = std::array::from_fn(|_| random::normal(rng));
    let half = PVMRegion::half_space(normal, random::normal(rng) * 0.3);
    match rng.random_range(0..3) {
        0 => boxed,
        1 => half,
        _ => boxed.intersect(&half),
    }
}

fn imprimitivity() -> Outcome {
    let start = Instant::now();
    let mut rng = stream("imprimitivity");
    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let g = random::poincare(&mut rng);
        let e = random_region(&mut rng);
        let p = random::cone_point(&mut rng);
        let spinor = Spinor::from_fn(|_, _| random::complex_normal(&mut rng));
        let center = std::array::from_fn(|_| random::normal(&mut rng));
        let s = Section::new(Profile::gaussian(center, 1.5, spinor), vec![p]);
        worst = worst.max(imprimitivity_check(&g, &e, &s, &[p]).expect("valid element"));
    }
    let elapsed = start.elapsed();
    outcome(worst <= 1e-12 && elapsed < Duration::from_secs(10), format!("max residual {worst:e}, {elapsed:?}"))
}

fn cocycles() -> Outcome {
    let mut rng = stream("cocycles");
    let spec = CocycleSpec::new(
        random::complex_vector(&mut rng, 2),
        vec![
            (random::hermitian(&mut rng, 3), random::complex_vector(&mut rng, 3)),
            (random::hermitian(&mut rng, 2), random::complex_vector(&mut rng, 2)),
        ],
    )
    .expect("Hermitian blocks");
    let first = (0..100)
        .map(|_| {
            let (t, s) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            first_order_residual(&spec, t, s).expect("cocycle")
        })
        .fold(0.0, f64::max);

    let m = LittleGroupRep { weights: vec![1, -1, 2] };
    let points: Vec<FourVector> = (0..150).map(|_| random::cone_point(&mut rng)).collect();
    let section = CosetSection::tabulate(&points).expect("cone points");
    let cd = CocycleData { m: m.clone(), section };
    let coset = |p: &FourVector| PoincareElement::lorentz(standard_boost(p).expect("cone point"));
    let little = |rng: &mut Rng64| little_group_element(&random::e2(rng), random::four_vector(rng)).expect("unit phase");
    let mut strict = 0.0_f64;
    for k in 0..50 {
        let (p1, p2, p3) = (points[3 * k], points[3 * k + 1], points[3 * k + 2]);
        let g3 = group_mul(&coset(&p3), &little(&mut rng));
        let g2 = group_mul(&group_mul(&coset(&p2), &little(&mut rng)), &group_inv(&coset(&p3)));
        let g1 = group_mul(&group_mul(&coset(&p1), &little(&mut rng)), &group_inv(&coset(&p2)));
        strict = strict.max(ssi_core::induce::strict_cocycle_residual(&cd, &g1, &g2, &g3).expect("tabulated cosets"));
    }
    let restriction_exact = (0..100).all(|_| {
        let h = little(&mut rng);
        cd.b(&h).expect("base coset") == m.unitary(&h).expect("little group element")
    });
    outcome(
        first <= 1e-12 && strict <= 1e-10 && restriction_exact,
        format!("first order {first:e}, strict {strict:e}, b = m on H0: {restriction_exact}"),
    )
}

fn weyl_algebra() -> Outcome {
    let mut rng = stream("weyl");
    let d = 3;
    let mut phase = 0.0_f64;
    let mut unitary = 0.0_f64;
    for _ in 0..100 {
        let weyl = |rng: &mut Rng64| {
            WeylOp::new(random::complex_vector(rng, d) * c(0.5, 0.0), random::unitary(rng, d)).expect("unitary")
        };
        let (w1, w2) = (weyl(&mut rng), weyl(&mut rng));
        let x = ExpVectorState::exponential(random::complex_vector(&mut rng, d) * c(0.5, 0.0));
        let y = ExpVectorState::exponential(random::complex_vector(&mut rng, d) * c(0.5, 0.0));
        phase = phase.max(product_law_residual(&w1, &w2, &x, &y).expect("matching dims"));
        // <W x, W y> = <x, y> on the kernel, plus the one-particle unitary.
        let lhs = exp_inner(&weyl_apply(&w1, &x).expect("dims"), &weyl_apply(&w1, &y).expect("dims")).expect("dims");
        let rhs = exp_inner(&x, &y).expect("dims");
        unitary = unitary.max((lhs - rhs).norm() / rhs.norm()).max(unitarity_residual(&w1.u));
    }
    outcome(phase <= 1e-12 && unitary <= 1e-12, format!("product-law phase {phase:e}, unitarity {unitary:e}"))
}

fn parity_supercharges() -> Outcome {
    let sys = parity_charges(8).expect("cutoff 8");
    let mut nilpotent = 0.0_f64;
    let mut closure = 0.0_f64;
    let mut hand = 0.0_f64;
    let mut commutator = 0.0_f64;
    for plus in [true, false] {
        let (q, h) = if plus { (&sys.q_plus, &sys.h_plus) } else { (&sys.q_minus, &sys.h_minus) };
        nilpotent = nilpotent.max(max_abs(&(q * q)));
        closure = closure.max(max_abs(&(q * q.adjoint() + q.adjoint() * q - h)));
        // H+ matches the hand model on the whole truncated space; H- loses the
        // (n + 1) term at the top level, so it is compared on the trusted block.
        let diff = h - parity_hand_model(8, plus);
        hand = hand.max(if plus { max_abs(&diff) } else { max_abs(&sys.fock.restrict(&diff)) });
        let report = susy_verify(&ParityCharge { system: &sys, plus });
        commutator = commutator.max(report.q_h_commutator).max(report.q_dag_h_commutator);
    }
    outcome(
        nilpotent == 0.0 && closure == 0.0 && hand <= 1e-12 && commutator <= 1e-12,
        format!("Q^2 {nilpotent:e}, closure {closure:e}, hand model {hand:e}, [Q,H] trusted {commutator:e}"),
    )
}

fn witten() -> Outcome {
    let model = witten_build(|x| 0.5 * x * x, 2048, (-8.0, 8.0)).expect("grid");
    let report = susy_verify(&model);
    let (even, _) = model.sector_spectra(1);
    let ground = even[0].abs();
    let (errors, orders) = oscillator_convergence(&[512, 1024, 2048], (-8.0, 8.0)).expect("grids");
    let second_order = orders.iter().all(|p| (p - 2.0).abs() <= 0.2);
    let levels: Vec<f64> = report.pairing.iter().map(|(e, _)| *e).collect();
    outcome(
        ground <= 1e-4 && report.pairing.len() == 5 && report.pairing_residual <= 1e-6 && second_order,
        format!(
            "E0 {ground:.2e}, levels {levels:.4?}, pairing {:.2e}, errors {}, orders {orders:.3?}",
            report.pairing_residual,
            sci(&errors)
        ),
    )
}

fn fermionization() -> Outcome {
    let start = Instant::now();
    let rows = fermion_ladder(1.0, &LADDER, 2, ONE, ONE, 0.5).expect("ladder");
    let elapsed = start.elapsed();
    let prop: Vec<f64> = rows.iter().map(|r| r.proposition).collect();
    let car: Vec<f64> = rows.iter().map(|r| r.car_trusted).collect();
    let jw: Vec<f64> = rows.iter().map(|r| r.jw_car_exponential).collect();
    let dj: Vec<f64> = rows.iter().map(|r| r.reflection_qsde).collect();
    outcome(
        halves_each_step(&prop) && halves_each_step(&car) && elapsed < Duration::from_secs(60),
        format!(
            "|phi+psi| {}, CAR trusted {}, {elapsed:?}; JW CAR orders {:.2?}, dJ orders {:.2?}",
            sci(&prop),
            sci(&car),
            observed_orders(&jw),
            observed_orders(&dj)
        ),
    )
}

fn measure_invariance() -> Outcome {
    // Sample |p|^2 ~ Exp(a) with uniform direction: density a exp(-a r^2) / (2 pi r)
    // on R^3, so f(p) w(p) / density = pi f(p) exp(a r^2) / a with w = 1/(2|p|).
    // The exact integral of exp(-|p|^2) against d^3p / (2|p|) is pi.
    let a = 0.5;
    let samples = 1_000_000;
    let boost = SL2::boost([0.0, 0.0, 1.0], 0.5);
    let f = |p: &FourVector| (-p.spatial_norm_sqr()).exp();
    let mut rng = stream("measure");
    let (mut plain, mut boosted) = (0.0, 0.0);
    for _ in 0..samples {
        let r2 = -(-rng.random::<f64>()).ln_1p() / a;
        let r = r2.sqrt();
        let ct: f64 = rng.random_range(-1.0..1.0);
        let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let st = (1.0 - ct * ct).sqrt();
        let p = FourVector::new(r, r * st * phi.cos(), r * st * phi.sin(), r * ct);
        let density = a * (-a * r2).exp() / (2.0 * std::f64::consts::PI * r);
        let w = invariant_weight(&p).expect("cone point") / density;
        plain += f(&p) * w;
        boosted += f(&act(&boost, &p)) * w;
    }
    let exact = std::f64::consts::PI;
    let (plain, boosted) = (plain / samples as f64, boosted / samples as f64);
    let rel = (boosted - exact).abs() / exact;
    let rel_plain = (plain - exact).abs() / exact;
    outcome(
        rel <= 0.01 && rel_plain <= 0.01,
        format!("boosted rel err {rel:.2e}, unboosted {rel_plain:.2e} at 1e6 samples"),
    )
}

fn random_homogeneous(rng: &mut Rng64, d0: usize, d1: usize, parity: Parity) -> GradedOperator {
    let z = |r, c| CMatrix::zeros(r, c);
    let mut g = |r, c| random::complex_matrix(rng, r, c);
    match parity {
        Parity::Even => GradedOperator::from_blocks(&g(d0, d0), &z(d0, d1), &z(d1, d0), &g(d1, d1)),
        Parity::Odd => GradedOperator::from_blocks(&z(d0, d0), &g(d0, d1), &g(d1, d0), &z(d1, d1)),
    }
    .expect("block shapes")
}

fn random_vector(rng: &mut Rng64, d0: usize, d1: usize, parity: Parity) -> GradedVector {
    match parity {
        Parity::Even => GradedVector::even_part(random::complex_vector(rng, d0), d1),
        Parity::Odd => GradedVector::odd_part(d0, random::complex_vector(rng, d1)),
    }
}

fn graded_algebra() -> Outcome {
    let mut rng = stream("graded");
    let (d0, d1) = (2, 3);
    let parity = |rng: &mut Rng64| if rng.random::<bool>() { Parity::Odd } else { Parity::Even };
    let (mut symmetry, mut adjoint, mut antisym, mut jacobi) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    for _ in 0..100 {
        let (px, py, pt, ps) = (parity(&mut rng), parity(&mut rng), parity(&mut rng), parity(&mut rng));
        let x = random_vector(&mut rng, d0, d1, px);
        let y = random_vector(&mut rng, d0, d1, py);
        let t = random_homogeneous(&mut rng, d0, d1, pt);
        let s = random_homogeneous(&mut rng, d0, d1, ps);
        let scale = x.norm_sqr().sqrt() * y.norm_sqr().sqrt();

        // <y, x> = (-1)^(p(x) p(y)) conj <x, y>
        let sign = px.sign(py);
        let lhs = super_form(&y, &x).unwrap();
        let rhs = super_form(&x, &y).unwrap().conj() * sign;
        symmetry = symmetry.max((lhs - rhs).norm() / scale);

        // <T x, y> = (-1)^(p(T) p(x)) <x, T+ y>
        let lhs = super_form(&t.apply(&x).unwrap(), &y).unwrap();
        let rhs = super_form(&x, &super_adjoint(&t).unwrap().apply(&y).unwrap()).unwrap() * pt.sign(px);
        adjoint = adjoint.max((lhs - rhs).norm() / (scale * t.matrix().norm()));

        // [T, S] = -(-1)^(p(T) p(S)) [S, T]
        let ts = super_bracket(&t, &s).unwrap();
        let st = super_bracket(&s, &t).unwrap();
        antisym = antisym.max(max_abs(&(ts.matrix() + st.matrix() * C64::from(pt.sign(ps)))) / (t.matrix().norm() * s.matrix().norm()));

        let a = random_homogeneous(&mut rng, d0, d1, Parity::Odd);
        let aa = super_bracket(&a, &a).unwrap();
        let aaa = super_bracket(&a, &aa).unwrap();
        jacobi = jacobi.max(max_abs(aaa.matrix()) / a.matrix().norm().powi(3));
    }
    let worst = symmetry.max(adjoint).max(antisym).max(jacobi);
    outcome(
        worst <= 1e-12,
        format!("symmetry {symmetry:.1e}, adjoint {adjoint:.1e}, antisymmetry {antisym:.1e}, [a,[a,a]] {jacobi:.1e}"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("gamma algebra", gamma_algebra),
        ("covering map", covering_map_checks),
        ("little group", little_group),
        ("fibers", fibers),
        ("imprimitivity", imprimitivity),
        ("cocycles", cocycles),
        ("Weyl algebra", weyl_algebra),
        ("parity supercharges", parity_supercharges),
        ("Witten model", witten),
        ("stochastic fermionization", fermionization),
        ("measure invariance", measure_invariance),
        ("graded algebra", graded_algebra),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.passed {
            failures += 1;
        }
        println!("criterion {:>2} {} {name}: {}", k + 1, if o.passed { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
