use ssi_core::linalg::max_abs;
use ssi_core::random::Rng64;
use ssi_core::susy::{
    literal_parity_charges, oscillator_convergence, parity_charges, parity_hand_model, susy_verify, witten_build,
    ParityCharge, PAIRING_LEVELS,
};

use super::{guarded, sci, structural};
use crate::{Check, SuiteConfig};

const DOMAIN: (f64, f64) = (-8.0, 8.0);

pub fn run(cfg: &SuiteConfig, _rng: &mut Rng64) -> Vec<Check> {
    let exact = cfg.tolerance("exact");
    let n = cfg.grid_size("witten").max(64);
    let cutoff = cfg.cutoff("parity");
    let mut checks = Vec::new();
    match witten_build(|x| 0.5 * x * x, n, DOMAIN) {
        Ok(model) => {
            let report = susy_verify(&model);
            let (even, odd) = model.sector_spectra(PAIRING_LEVELS + 1);
            checks.push(Check::measured(
                "Witten ground energy",
                even[0].abs(),
                cfg.tolerance("groundEnergy"),
                format!("h = x^2/2 on {n} points in [-8, 8]: even levels {even:.6?}, odd levels {odd:.6?}"),
            ));
            checks.push(Check::measured(
                "Witten spectral pairing",
                report.pairing_residual,
                cfg.tolerance("pairing"),
                format!("nonzero levels of B*B/2 and BB*/2 agree: {:.6?}", report.pairing),
            ));
            checks.push(Check::measured(
                "Witten nilpotency",
                report.q_squared.max(report.q_dag_squared),
                exact,
                "Q^2 = (Q*)^2 = 0".to_string(),
            ));
            checks.push(Check::measured(
                "Witten closure",
                report.relative(report.closure),
                exact,
                format!("|1/2 {{Q, Q*}} - H| / |H| with |H| = {:.3e}", report.h_scale),
            ));
            checks.push(Check::measured(
                "Witten [Q, H]",
                report.relative(report.q_h_commutator.max(report.q_dag_h_commutator)),
                exact,
                "|[Q, H]|, |[Q*, H]| relative to |H|".to_string(),
            ));
            checks.push(Check::structural(
                "Witten grading",
                report.grading_anticommutator == 0.0 && report.projection_commutator == 0.0 && report.diagonal_blocks_of_q == 0.0,
                "Q odd: {J, Q} = 0, [P_even, H] = 0".to_string(),
            ));
        }
        Err(e) => checks.push(Check::structural("Witten model", false, format!("error: {e}"))),
    }
    checks.push(guarded("Witten second-order convergence", cfg.tolerance("order"), || {
        let ladder = [n / 4, n / 2, n];
        let (errors, orders) = oscillator_convergence(&ladder, DOMAIN)?;
        let worst = orders.iter().map(|p| (p - 2.0).abs()).fold(0.0, f64::max);
        Ok((worst, format!("first level error on {ladder:?} points: {}, orders {orders:.3?}", sci(&errors))))
    }));
    match parity_charges(cutoff) {
        Ok(sys) => {
            for plus in [true, false] {
                let sign = if plus { "+" } else { "-" };
                let (q, h) = if plus { (&sys.q_plus, &sys.h_plus) } else { (&sys.q_minus, &sys.h_minus) };
                let report = susy_verify(&ParityCharge { system: &sys, plus });
                checks.push(Check::measured(
                    format!("parity charge Q{sign} nilpotency"),
                    max_abs(&(q * q)),
                    exact,
                    format!("Q{sign} = a (I {sign} J)/2, J = (-1)^Lambda, cutoff {cutoff}"),
                ));
                checks.push(Check::measured(
                    format!("parity charge Q{sign} closure"),
                    report.closure,
                    exact,
                    format!("{{Q{sign}, Q{sign}*}} = H{sign}"),
                ));
                let diff = h - parity_hand_model(cutoff, plus);
                let (hand, region) = if plus {
                    (max_abs(&diff), "whole truncated space")
                } else {
                    (max_abs(&sys.fock.restrict(&diff)), "trusted block")
                };
                checks.push(Check::measured(
                    format!("parity charge H{sign} hand model"),
                    hand,
                    exact,
                    format!("H+ = (Lambda + 1) P_odd + Lambda P_even and its mirror, on the {region}"),
                ));
                checks.push(Check::measured(
                    format!("parity charge Q{sign} commutes with H{sign}"),
                    report.q_h_commutator.max(report.q_dag_h_commutator),
                    exact,
                    "[Q, H] = [Q*, H] = 0 on the trusted subspace".to_string(),
                ));
            }
        }
        Err(e) => checks.push(Check::structural("parity charges", false, format!("error: {e}"))),
    }
    checks.push(structural("literal twisted charges are not nilpotent", || {
        let (qp, qm) = literal_parity_charges(cutoff)?;
        let (a, b) = (max_abs(&(&qp * &qp)), max_abs(&(&qm * &qm)));
        Ok((a > 1.0 && b > 1.0, format!("a (I +/- 2 pi i Lambda)/2 squares to entries of size {a:.3e}, {b:.3e}")))
    }));
    checks
}
