use ssi_core::fock::{
    binomial, build_super_fock, exp_inner, inner, product_law_residual, stone_ladder, weyl_apply, ExpVectorState,
    TruncatedFock, WeylOp,
};
use ssi_core::linalg::{c, CVector, C64, I};
use ssi_core::random::{self, Rng64};

use super::{guarded, structural};
use crate::{Check, SuiteConfig};

fn small(rng: &mut Rng64, d: usize) -> CVector {
    random::complex_vector(rng, d) * c(0.5, 0.0)
}

/// `e(u)` expanded in the truncated number basis.
fn truncated_exponential(f: &TruncatedFock, u: &CVector) -> CVector {
    CVector::from_fn(f.dim(), |i, _| {
        f.occupations(i)
            .iter()
            .zip(u.iter())
            .map(|(&n, &uk)| uk.powu(n as u32) / (1..=n).map(|k| k as f64).product::<f64>().sqrt())
            .product()
    })
}

pub fn run(cfg: &SuiteConfig, rng: &mut Rng64) -> Vec<Check> {
    let n = cfg.grid_size("samples");
    let exact = cfg.tolerance("exact");
    vec![
        guarded("Weyl product law", exact, || {
            let mut worst = 0.0_f64;
            for _ in 0..n {
                let w1 = WeylOp::new(small(rng, 3), random::unitary(rng, 3))?;
                let w2 = WeylOp::new(small(rng, 3), random::unitary(rng, 3))?;
                let x = ExpVectorState::exponential(small(rng, 3));
                let y = ExpVectorState::exponential(small(rng, 3));
                worst = worst.max(product_law_residual(&w1, &w2, &x, &y)?);
            }
            Ok((worst, format!("W1 W2 = exp(-i Im <v1, U1 v2>) W(v1 + U1 v2, U1 U2) on exponential vectors, {n} pairs")))
        }),
        guarded("Weyl operators are isometric", exact, || {
            let mut worst = 0.0_f64;
            for _ in 0..n {
                let w = WeylOp::new(small(rng, 3), random::unitary(rng, 3))?;
                let (x, y) = (ExpVectorState::exponential(small(rng, 3)), ExpVectorState::exponential(small(rng, 3)));
                let before = exp_inner(&x, &y)?;
                let after = exp_inner(&weyl_apply(&w, &x)?, &weyl_apply(&w, &y)?)?;
                worst = worst.max((before - after).norm() / before.norm().max(1.0));
            }
            Ok((worst, format!("<W x, W y> = <x, y> = exp <u, v>, {n} samples")))
        }),
        guarded("displacement commutation ratio", exact, || {
            let mut worst = 0.0_f64;
            let mut literal = 0.0_f64;
            for _ in 0..n {
                let (vg, vh) = (small(rng, 2), small(rng, 2));
                let (g, h) = (WeylOp::displacement(vg.clone()), WeylOp::displacement(vh.clone()));
                let x = ExpVectorState::exponential(small(rng, 2));
                let y = ExpVectorState::exponential(small(rng, 2));
                let pair = |a: &WeylOp, b: &WeylOp| -> ssi_core::Result<C64> { exp_inner(&x, &weyl_apply(a, &weyl_apply(b, &y)?)?) };
                let (gh, hg) = (pair(&g, &h)?, pair(&h, &g)?);
                let im = inner(&vg, &vh).im;
                worst = worst.max((gh - C64::from_polar(1.0, -2.0 * im) * hg).norm() / gh.norm().max(1.0));
                literal = literal.max((gh - C64::from_polar(1.0, im) * hg).norm() / gh.norm().max(1.0));
            }
            Ok((
                worst,
                format!("W(g) W(h) = exp(-2 i Im <v_g, v_h>) W(h) W(g); the form exp(i Im <v_g, v_h>) is off by up to {literal:.3e}"),
            ))
        }),
        guarded("Stone generator", cfg.tolerance("stone"), || {
            let f = TruncatedFock::new(2, cfg.cutoff("stone"))?;
            let mut worst = 0.0_f64;
            for _ in 0..n.min(20) {
                let g = random::complex_vector(rng, 2) * c(0.3, 0.0);
                let u = random::complex_vector(rng, 2) * c(0.3, 0.0);
                let v = random::complex_vector(rng, 2) * c(0.3, 0.0);
                let (x, y) = (ExpVectorState::exponential(u.clone()), ExpVectorState::exponential(v.clone()));
                let at = |t: f64| -> ssi_core::Result<C64> { exp_inner(&x, &weyl_apply(&WeylOp::displacement(&g * c(t, 0.0)), &y)?) };
                let s = 1e-3;
                let derivative = (at(-2.0 * s)? - at(2.0 * s)? + (at(s)? - at(-s)?) * 8.0) / (12.0 * s);
                let ladder = stone_ladder(&f, &g)?;
                let rhs = truncated_exponential(&f, &u).dotc(&(&ladder.p * truncated_exponential(&f, &v)));
                worst = worst.max((derivative * I - rhs).norm());
            }
            Ok((worst, "i d/dt <e(u), W(t g, I) e(v)> at 0 against <e(u), p e(v)>, p = i(a* - a)".into()))
        }),
        structural("super Fock sector dimensions", || {
            let d = 3;
            let cap = cfg.cutoff("superFockDegree");
            let sf = build_super_fock(d, cap)?;
            let sym: Vec<usize> = (0..=cap).map(|k| binomial(d + k - 1, k)).collect();
            let anti: Vec<usize> = (0..=cap).map(|k| binomial(d, k)).collect();
            let ok = sf.symmetric_dims() == sym && sf.antisymmetric_dims() == anti;
            Ok((ok, format!("d = {d}: symmetric {:?}, antisymmetric {:?}", sf.symmetric_dims(), sf.antisymmetric_dims())))
        }),
    ]
}
