use ssi_core::linalg::{max_abs, principal_angles, CVector};
use ssi_core::poincare::{e2_embed, LIGHTLIKE_BASE};
use ssi_core::random::{self, Rng64};
use ssi_core::spinbundle::{
    bundle_action, fiber_at, fiber_inner, fiber_projector, helicity_split, kernel_dimension, massive_basis,
};

use super::{guarded, sci, structural};
use crate::{Check, SuiteConfig};

pub fn run(cfg: &SuiteConfig, rng: &mut Rng64) -> Vec<Check> {
    let n = cfg.grid_size("samples");
    let fiber_tol = cfg.tolerance("fiber");
    vec![
        structural("fiber dimension", || {
            let ok = (0..n).all(|_| kernel_dimension(&random::cone_point(rng)) == 2);
            Ok((ok, format!("dim ker(p . g) = 2 at {n} cone points")))
        }),
        guarded("closed-form projector", fiber_tol, || {
            let mut worst = 0.0_f64;
            for _ in 0..n {
                let p = random::cone_point(rng);
                worst = worst.max(max_abs(&(fiber_at(&p)?.projector() - fiber_projector(&p)?)));
            }
            Ok((worst, format!("kernel projector of p . g against the closed form, {n} points")))
        }),
        guarded("bundle action preserves fibers", fiber_tol, || {
            let mut worst = 0.0_f64;
            for _ in 0..n {
                let p = random::cone_point(rng);
                let v: CVector = fiber_at(&p)?.basis * random::complex_vector(rng, 2);
                let (q, w) = bundle_action(&random::sl2(rng), &p, &v)?;
                worst = worst.max((&fiber_projector(&q)? * &w - &w).norm() / w.norm().max(1.0));
            }
            Ok((worst, format!("S(h*^-1) maps ker(p . g) into ker(delta(h)p . g), {n} samples")))
        }),
        guarded("fiber form invariance", fiber_tol, || {
            let mut worst = 0.0_f64;
            for _ in 0..n {
                let p = random::cone_point(rng);
                let basis = fiber_at(&p)?.basis;
                let (v, w) = (&basis * random::complex_vector(rng, 2), &basis * random::complex_vector(rng, 2));
                let h = random::sl2(rng);
                let (q, hv) = bundle_action(&h, &p, &v)?;
                let (_, hw) = bundle_action(&h, &p, &w)?;
                let d = (fiber_inner(&p, &v, &w)? - fiber_inner(&q, &hv, &hw)?).norm();
                worst = worst.max(d / (v.norm() * w.norm() / p.t()).max(1.0));
            }
            Ok((worst, format!("p0^-1 <v, w> is preserved by the bundle action, {n} samples")))
        }),
        guarded("little group characters at k0", cfg.tolerance("group"), || {
            let fiber = fiber_at(&LIGHTLIKE_BASE)?;
            let (plus, minus) = helicity_split(&fiber)?;
            let mut worst = 0.0_f64;
            for _ in 0..n {
                let e = random::e2(rng);
                let h = e2_embed(&e)?;
                for (line, scalar) in [(&plus, e.z.inv()), (&minus, e.z)] {
                    let v: CVector = line.basis.column(0).into();
                    let (_, w) = bundle_action(&h, &LIGHTLIKE_BASE, &v)?;
                    worst = worst.max((w - &v * scalar).camax());
                }
            }
            Ok((worst, format!("(z, a) acts by 1/z on the chirality +1 line and by z on the -1 line, {n} samples")))
        }),
        guarded("massive fibers converge", cfg.tolerance("massiveAngle"), || {
            let massless = massive_basis(0.0)?.span();
            let angles = (1..=6)
                .map(|k| {
                    let span = massive_basis(10f64.powi(-k))?.span();
                    Ok(principal_angles(&span, &massless).into_iter().fold(0.0, f64::max))
                })
                .collect::<ssi_core::Result<Vec<f64>>>()?;
            let monotone = angles.windows(2).all(|w| w[1] < w[0]);
            let last = if monotone { angles[5] } else { f64::MAX };
            Ok((last, format!("largest principal angle for m = 1e-1 .. 1e-6: {}", sci(&angles))))
        }),
    ]
}
