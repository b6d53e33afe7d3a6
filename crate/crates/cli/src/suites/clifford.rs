use ssi_core::clifford::{clifford_form, make_gammas, min_gram_eigenvalue, spin_rep, spin_rep_inverse, CliffordForm, ETA};
use ssi_core::linalg::{c, max_abs, CMatrix};
use ssi_core::poincare::{act, FourVector};
use ssi_core::random::{self, Rng64};

use super::guarded;
use crate::{Check, SuiteConfig};

fn forward_point(rng: &mut Rng64) -> FourVector {
    let s = [random::normal(rng), random::normal(rng), random::normal(rng)];
    let r = (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]).sqrt();
    FourVector::new(r + random::normal(rng).abs(), s[0], s[1], s[2])
}

pub fn run(cfg: &SuiteConfig, rng: &mut Rng64) -> Vec<Check> {
    let n = cfg.grid_size("samples");
    let exact = cfg.tolerance("exact");
    let group = cfg.tolerance("group");
    let g = make_gammas();
    let id = CMatrix::identity(4, 4);
    vec![
        guarded("gamma anticommutators", exact, || {
            let mut worst = 0.0_f64;
            for mu in 0..4 {
                for nu in 0..4 {
                    let eta = if mu == nu { ETA[mu] } else { 0.0 };
                    let anti = &g.gamma[mu] * &g.gamma[nu] + &g.gamma[nu] * &g.gamma[mu];
                    worst = worst.max(max_abs(&(anti - &id * c(2.0 * eta, 0.0))));
                }
            }
            Ok((worst, "{g_mu, g_nu} = 2 eta_mu_nu I, eta = diag(1,-1,-1,-1)".into()))
        }),
        guarded("chirality", exact, || {
            let mut worst = max_abs(&(&g.chirality * &g.chirality - &id));
            for gm in &g.gamma {
                worst = worst.max(max_abs(&(&g.chirality * gm + gm * &g.chirality)));
            }
            Ok((worst, "G^2 = I and {G, g_mu} = 0".into()))
        }),
        guarded("spin representation homomorphism", group, || {
            let mut worst = 0.0_f64;
            for _ in 0..n {
                let (h1, h2) = (random::sl2(rng), random::sl2(rng));
                let d = spin_rep(&(h1 * h2))? - spin_rep(&h1)? * spin_rep(&h2)?;
                worst = worst.max(max_abs(&d)).max(max_abs(&(spin_rep_inverse(&h1)? * spin_rep(&h1)? - &id)));
            }
            Ok((worst, format!("S(h1 h2) = S(h1) S(h2), S(h)^-1 S(h) = I, {n} pairs")))
        }),
        guarded("spin representation intertwining", group, || {
            let mut worst = 0.0_f64;
            for _ in 0..n {
                let h = random::sl2(rng);
                let p = random::four_vector(rng);
                let lhs = spin_rep_inverse(&h)? * g.dot(&act(&h, &p)) * spin_rep(&h)?;
                worst = worst.max(max_abs(&(lhs - g.dot(&p))) / p.0.iter().fold(1.0_f64, |a, x| a.max(x.abs())));
            }
            Ok((worst, format!("S(h)^-1 (delta(h)p . g) S(h) = p . g, {n} samples")))
        }),
        guarded("form symmetry", exact, || {
            let mut worst = 0.0_f64;
            for _ in 0..n {
                let cf = CliffordForm::majorana(forward_point(rng));
                let x: Vec<f64> = (0..4).map(|_| random::normal(rng)).collect();
                let y: Vec<f64> = (0..4).map(|_| random::normal(rng)).collect();
                let xy = clifford_form(&cf, &x, &y)?;
                worst = worst.max((xy - clifford_form(&cf, &y, &x)?).abs() / (1.0 + xy.abs()));
            }
            Ok((worst, format!("Phi(X1, X2) = Phi(X2, X1), {n} samples")))
        }),
        guarded("positivity on the forward cone", exact, || {
            let worst = (0..n)
                .map(|_| (-min_gram_eigenvalue(&CliffordForm::majorana(forward_point(rng)))).max(0.0))
                .fold(0.0, f64::max);
            Ok((worst, format!("Q_lambda >= 0 for lambda in the forward cone, {n} samples")))
        }),
    ]
}
