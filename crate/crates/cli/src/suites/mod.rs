//! One module per suite. Each `run` draws only from the stream it is handed.

pub mod clifford;
pub mod fock;
pub mod induce;
pub mod poincare;
pub mod spinbundle;
pub mod supergrade;
pub mod susy;
pub mod qstoch;

use crate::Check;

/// Runs `f` and turns a library error into a failed check.
pub(crate) fn guarded(name: &str, tolerance: f64, f: impl FnOnce() -> ssi_core::Result<(f64, String)>) -> Check {
    match f() {
        Ok((residual, details)) => Check::measured(name, residual, tolerance, details),
        Err(e) => Check {
            name: name.to_string(),
            passed: false,
            residual: f64::MAX,
            tolerance,
            details: format!("error: {e}"),
        },
    }
}

pub(crate) fn structural(name: &str, f: impl FnOnce() -> ssi_core::Result<(bool, String)>) -> Check {
    match f() {
        Ok((ok, details)) => Check::structural(name, ok, details),
        Err(e) => Check::structural(name, false, format!("error: {e}")),
    }
}

pub(crate) fn sci(values: &[f64]) -> String {
    let parts: Vec<String> = values.iter().map(|v| format!("{v:.3e}")).collect();
    format!("[{}]", parts.join(", "))
}
