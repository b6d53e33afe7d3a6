use rand::Rng;
use ssi_core::induce::{
    first_order_residual, imprimitivity_check, induced_apply_element, little_group_element, strict_cocycle_residual,
    CocycleData, CocycleSpec, CosetSection, LittleGroupRep, PVMRegion, Profile, Section, Spinor,
};
use ssi_core::poincare::{group_inv, group_mul, standard_boost};
use ssi_core::random::{self, Rng64};
use ssi_core::{FourVector, PoincareElement};

use super::{guarded, structural};
use crate::{Check, SuiteConfig};

fn section(rng: &mut Rng64, samples: Vec<FourVector>) -> Section {
    let spinor = Spinor::from_fn(|_, _| random::complex_normal(rng));
    let center = std::array::from_fn(|_| random::normal(rng));
    Section::new(Profile::gaussian(center, 1.5, spinor), samples)
}

fn region(rng: &mut Rng64) -> PVMRegion {
    let lo: [f64; 4] = std::array::from_fn(|_| rng.random_range(-2.0..0.5));
    let hi = std::array::from_fn(|k| lo[k] + rng.random_range(0.5..3.0));
    let boxed = PVMRegion::boxed(lo, hi);
    let half = PVMRegion::half_space(std::array::from_fn(|_| random::normal(rng)), 0.3 * random::normal(rng));
    match rng.random_range(0..3) {
        0 => boxed,
        1 => half,
        _ => boxed.intersect(&half),
    }
}

fn little(rng: &mut Rng64) -> ssi_core::Result<PoincareElement> {
    little_group_element(&random::e2(rng), random::four_vector(rng))
}

pub fn run(cfg: &SuiteConfig, rng: &mut Rng64) -> Vec<Check> {
    let n = cfg.grid_size("samples");
    let exact = cfg.tolerance("exact");
    let group = cfg.tolerance("group");
    let cosets = cfg.grid_size("cocycleCosets").max(3);
    let m = LittleGroupRep { weights: vec![1, -1, 2] };
    let mut checks = vec![
        guarded("induced representation property", 10.0 * group, || {
            let mut worst = 0.0_f64;
            for _ in 0..n {
                let pts: Vec<FourVector> = (0..4).map(|_| random::cone_point(rng)).collect();
                let s = section(rng, pts.clone());
                let (g1, g2) = (random::poincare(rng), random::poincare(rng));
                let lhs = induced_apply_element(&g1, &induced_apply_element(&g2, &s)?)?;
                let rhs = induced_apply_element(&group_mul(&g1, &g2), &s)?;
                let scale = pts.iter().map(|p| lhs.eval(p).norm()).fold(1.0, f64::max);
                worst = worst.max(lhs.max_diff(&rhs, &pts) / scale);
            }
            Ok((worst, format!("U(g1) U(g2) = U(g1 g2) at sampled cone points, {n} pairs")))
        }),
        guarded("system of imprimitivity", exact, || {
            let mut worst = 0.0_f64;
            for _ in 0..n {
                let p = random::cone_point(rng);
                let s = section(rng, vec![p]);
                let g = random::poincare(rng);
                worst = worst.max(imprimitivity_check(&g, &region(rng), &s, &[p])?);
            }
            Ok((worst, format!("U(g) P(E) U(g)^-1 = P(gE), {n} random regions")))
        }),
        guarded("first-order cocycle", exact, || {
            let spec = CocycleSpec::new(
                random::complex_vector(rng, 2),
                vec![
                    (random::hermitian(rng, 3), random::complex_vector(rng, 3)),
                    (random::hermitian(rng, 2), random::complex_vector(rng, 2)),
                ],
            )?;
            let mut worst = 0.0_f64;
            for _ in 0..n {
                let (t, s) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
                worst = worst.max(first_order_residual(&spec, t, s)?);
            }
            Ok((worst, format!("v(t + s) = v(t) + U_t v(s), {n} pairs")))
        }),
    ];
    let points: Vec<FourVector> = (0..cosets).map(|_| random::cone_point(rng)).collect();
    let cd = match CosetSection::tabulate(&points) {
        Ok(section) => CocycleData { m: m.clone(), section },
        Err(e) => {
            checks.push(Check::structural("strict cocycle", false, format!("error: {e}")));
            return checks;
        }
    };
    let coset = |p: &FourVector| standard_boost(p).map(PoincareElement::lorentz);
    checks.push(guarded("strict cocycle", group, || {
        let mut worst = 0.0_f64;
        for k in 0..cosets / 3 {
            let (p1, p2, p3) = (points[3 * k], points[3 * k + 1], points[3 * k + 2]);
            let g3 = group_mul(&coset(&p3)?, &little(rng)?);
            let g2 = group_mul(&group_mul(&coset(&p2)?, &little(rng)?), &group_inv(&coset(&p3)?));
            let g1 = group_mul(&group_mul(&coset(&p1)?, &little(rng)?), &group_inv(&coset(&p2)?));
            worst = worst.max(strict_cocycle_residual(&cd, &g1, &g2, &g3)?);
        }
        Ok((worst, format!("b(g1 g2, g3) = b(g1, g2 g3) b(g2, g3) on {} tabulated triples", cosets / 3)))
    }));
    checks.push(structural("cocycle restricts to the little group", || {
        let mut ok = true;
        for _ in 0..n {
            let h = little(rng)?;
            ok &= cd.b(&h)? == m.unitary(&h)?;
        }
        Ok((ok, format!("b(h) = m(h) exactly for h in H0, {n} samples")))
    }));
    checks
}
