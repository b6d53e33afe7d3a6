use rand::Rng;
use ssi_core::poincare::{
    act, invariant_weight, classify_orbit, covering_map, e2_embed, group_inv, group_mul, measure_weight, minkowski_metric,
    standard_boost, PoincareElement, LIGHTLIKE_BASE,
};
use ssi_core::random::{self, Rng64};
use ssi_core::{FourVector, SL2};

use super::{guarded, structural};
use crate::{Check, SuiteConfig};

fn max_entry<'a>(it: impl IntoIterator<Item = &'a f64>) -> f64 {
    it.into_iter().fold(0.0_f64, |a, x| a.max(x.abs()))
}

pub fn run(cfg: &SuiteConfig, rng: &mut Rng64) -> Vec<Check> {
    let n = cfg.grid_size("samples");
    let group = cfg.tolerance("group");
    let exact = cfg.tolerance("exact");
    vec![
        guarded("covering map homomorphism", group, || {
            let mut worst = 0.0_f64;
            for _ in 0..n {
                let (h1, h2) = (random::sl2(rng), random::sl2(rng));
                worst = worst.max(max_entry(&(covering_map(&(h1 * h2)) - covering_map(&h1) * covering_map(&h2))));
            }
            Ok((worst, format!("delta(h1 h2) = delta(h1) delta(h2), {n} pairs")))
        }),
        guarded("covering map preserves the metric", group, || {
            let eta = minkowski_metric();
            let mut worst = 0.0_f64;
            for _ in 0..n {
                let d = covering_map(&random::sl2(rng));
                worst = worst.max(max_entry(&(d.transpose() * eta * d - eta)));
            }
            Ok((worst, format!("delta(h)^T eta delta(h) = eta, {n} samples")))
        }),
        guarded("covering map kernel", exact, || {
            let minus = SL2::new(-*SL2::identity().matrix())?;
            let id = covering_map(&SL2::identity());
            Ok((max_entry(&(covering_map(&minus) - id)), "delta(-I) = delta(I) = I".into()))
        }),
        guarded("little group fixes the base point", group, || {
            let worst = (0..n)
                .map(|_| Ok(act(&e2_embed(&random::e2(rng))?, &LIGHTLIKE_BASE).max_abs_diff(&LIGHTLIKE_BASE)))
                .collect::<ssi_core::Result<Vec<f64>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            Ok((worst, format!("delta(z, a) k0 = k0 with k0 = (1,0,0,1), {n} samples")))
        }),
        guarded("standard boost reaches the cone point", group, || {
            let mut worst = 0.0_f64;
            for _ in 0..n {
                let p = random::cone_point(rng);
                worst = worst.max(act(&standard_boost(&p)?, &LIGHTLIKE_BASE).max_abs_diff(&p) / p.t().max(1.0));
            }
            Ok((worst, format!("delta(L(p)) k0 = p, {n} cone points")))
        }),
        guarded("group law associativity and inverse", group, || {
            let mut worst = 0.0_f64;
            for _ in 0..n {
                let (a, b, c) = (random::poincare(rng), random::poincare(rng), random::poincare(rng));
                let left = group_mul(&group_mul(&a, &b), &c);
                let right = group_mul(&a, &group_mul(&b, &c));
                let unit = group_mul(&a, &group_inv(&a));
                let scale = left.x.0.iter().fold(1.0_f64, |m, x| m.max(x.abs()));
                worst = worst
                    .max(left.max_abs_diff(&right) / scale)
                    .max(unit.max_abs_diff(&PoincareElement::identity()));
            }
            Ok((worst, format!("(ab)c = a(bc), a a^-1 = e, {n} triples")))
        }),
        structural("orbits are preserved", || {
            let mut ok = true;
            for _ in 0..n {
                let p = random::four_vector(rng);
                let q = act(&random::sl2(rng), &p);
                ok &= classify_orbit(&p).same_orbit(&classify_orbit(&q), 1e-8 * q.t().abs().max(1.0));
            }
            Ok((ok, format!("orbit kind, sheet and mass of delta(h)p match p, {n} samples")))
        }),
        guarded("measure density examples", exact, || {
            let a = measure_weight(&LIGHTLIKE_BASE)?;
            let b = measure_weight(&FourVector::new(2.0, 0.0, 2.0, 0.0))?;
            Ok(((a - 0.5).abs().max((b - 0.125).abs()), format!("1/(2 p0^2): {a} at (1,0,0,1), {b} at (2,0,2,0)")))
        }),
        guarded("cone measure invariance", cfg.tolerance("measure"), || {
            let samples = cfg.grid_size("measureSamples");
            let (plain, boosted) = cone_integrals(rng, samples)?;
            let exact = std::f64::consts::PI;
            let (ep, eb) = ((plain - exact).abs() / exact, (boosted - exact).abs() / exact);
            Ok((
                ep.max(eb),
                format!("int exp(-|p|^2) d^3p/(2|p|) = pi: relative error {ep:.3e}, after a z-boost of rapidity 0.5 {eb:.3e}, {samples} samples"),
            ))
        }),
    ]
}

/// Monte Carlo estimates of `int f d^3p / (2|p|)` for `f = exp(-|p|^2)` and for
/// `f` composed with a boost. `|p|^2 ~ Exp(a)` with a uniform direction has
/// density `a exp(-a r^2) / (2 pi r)` on `R^3`.
fn cone_integrals(rng: &mut Rng64, samples: usize) -> ssi_core::Result<(f64, f64)> {
    let a = 0.5;
    let boost = SL2::boost([0.0, 0.0, 1.0], 0.5);
    let f = |p: &FourVector| (-p.spatial_norm_sqr()).exp();
    let (mut plain, mut boosted) = (0.0, 0.0);
    for _ in 0..samples {
        let r2 = -(-rng.random::<f64>()).ln_1p() / a;
        let r = r2.sqrt();
        let ct: f64 = rng.random_range(-1.0..1.0);
        let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let st = (1.0 - ct * ct).sqrt();
        let p = FourVector::new(r, r * st * phi.cos(), r * st * phi.sin(), r * ct);
        let density = a * (-a * r2).exp() / (2.0 * std::f64::consts::PI * r);
        let w = invariant_weight(&p)? / density;
        plain += f(&p) * w;
        boosted += f(&act(&boost, &p)) * w;
    }
    Ok((plain / samples as f64, boosted / samples as f64))
}
