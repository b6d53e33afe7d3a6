use ssi_core::linalg::ONE;
use ssi_core::qstoch::{fermion_ladder, observed_orders, LadderRow, RESIDUAL_FLOOR};
use ssi_core::random::Rng64;

use super::sci;
use crate::{Check, SuiteConfig};

const HORIZON: f64 = 1.0;
const T_FRACTION: f64 = 0.5;

/// Largest step ratio `r_2n / r_n`, residuals at the floor counting as 0.
fn worst_ratio(values: &[f64]) -> f64 {
    values
        .windows(2)
        .map(|w| if w[1] <= RESIDUAL_FLOOR { 0.0 } else { w[1] / w[0] })
        .fold(0.0, f64::max)
}

fn column(rows: &[LadderRow], f: fn(&LadderRow) -> f64) -> Vec<f64> {
    rows.iter().map(f).collect()
}

pub fn run(cfg: &SuiteConfig, _rng: &mut Rng64) -> Vec<Check> {
    let cutoff = cfg.cutoff("qstoch");
    let max_bins = cfg.grid_size("qstochMaxBins").max(8);
    let ladder: Vec<usize> = std::iter::successors(Some(4usize), |n| Some(2 * n)).take_while(|n| *n <= max_bins).collect();
    let rows = match fermion_ladder(HORIZON, &ladder, cutoff, ONE, ONE, T_FRACTION) {
        Ok(rows) => rows,
        Err(e) => return vec![Check::structural("fermionization ladder", false, format!("error: {e}"))],
    };
    let exact = cfg.tolerance("exact");
    let order_tol = cfg.tolerance("order");
    let mut checks: Vec<Check> = rows
        .iter()
        .map(|r| {
            Check::measured(
                format!("ladder n={}", r.bins),
                r.proposition.max(r.car_trusted).max(r.nilpotency_trusted),
                exact,
                format!(
                    "dt {:.4e}: |phi+psi| {:.3e}, CAR trusted {:.3e}, F^2 trusted {:.3e}, CAR e(u),e(v) {:.3e}, \
                     CAR one-particle {:.3e}, JW CAR {:.3e}, JW G^2 {:.3e}, dJ defect {:.3e}",
                    r.dt,
                    r.proposition,
                    r.car_trusted,
                    r.nilpotency_trusted,
                    r.car_exponential,
                    r.car_one_particle,
                    r.jw_car_exponential,
                    r.jw_nilpotency_exponential,
                    r.reflection_qsde
                ),
            )
        })
        .collect();
    let halving: [(&str, &str, fn(&LadderRow) -> f64); 3] = [
        ("proposition column halves", "|<J e(u), F e(v)> + <F* e(u), J e(v)>|", |r| r.proposition),
        ("trusted CAR column halves", "|{F, F*} - t I| on the trusted subspace", |r| r.car_trusted),
        ("trusted nilpotency column halves", "|F^2| on the trusted subspace", |r| r.nilpotency_trusted),
    ];
    for (name, what, f) in halving {
        let values = column(&rows, f);
        checks.push(Check::measured(
            name,
            worst_ratio(&values),
            0.5,
            format!("{what} over n = {ladder:?}: {} (at most 1e-12 counts as exact)", sci(&values)),
        ));
    }
    let first_order: [(&str, &str, fn(&LadderRow) -> f64); 2] = [
        ("Jordan-Wigner CAR first order", "<e(u), ({G, G*} - t I) e(v)>, G = sum J(t_k) dA_k", |r| r.jw_car_exponential),
        ("reflection QSDE first order", "accumulated defect of dJ = -2 J dLambda", |r| r.reflection_qsde),
    ];
    for (name, what, f) in first_order {
        let values = column(&rows, f);
        let orders = observed_orders(&values);
        let worst = orders.iter().map(|p| (p - 1.0).abs()).fold(0.0, f64::max);
        checks.push(Check::measured(
            name,
            worst,
            order_tol,
            format!("{what}: {}, observed orders {orders:.3?}", sci(&values)),
        ));
    }
    checks
}
