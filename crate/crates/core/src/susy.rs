//! Two supersymmetric systems and a verifier for their charge algebra.
//!
//! * A one-dimensional Witten model on a uniform grid with Dirichlet ends:
//!   `B = p - i h'(x) = -i (D + W)` on the staggered grid: row `i` lives at
//!   the midpoint `x_i + dx/2`, `D` is the central difference there and `W`
//!   multiplies the midpoint average by `h'(x_i + dx/2)`. `psi` vanishes one
//!   step past the right end. `Q = s- (x) B`, `Q* = s+ (x) B*`,
//!   `H = 1/2 {Q, Q*}`.
//!   The even sector carries `B* B / 2` and the odd sector `B B* / 2`.
//! * Parity-projected charges on one truncated boson mode,
//!   `Q_(+/-) = a (I +/- J)/2` with `J = (-1)^Lambda` and `H_(+/-) = {Q, Q*}`.

use crate::error::{Error, Result};
use crate::fock::{restrict, TruncatedFock};
use crate::linalg::band::SymmetricBand;
use crate::linalg::sparse::SparseMatrix;
use crate::linalg::{c, CMatrix, C64, I, ONE};

/// Bisection width for grid eigenvalues.
pub const EIGEN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct WittenModel {
    pub grid_points: usize,
    pub domain: (f64, f64),
    pub dx: f64,
    pub x: Vec<f64>,
    /// `h'` at the midpoints `x_i + dx/2`.
    pub h_prime: Vec<f64>,
    pub q: SparseMatrix,
    pub q_dag: SparseMatrix,
    pub h: SparseMatrix,
}

/// Minimum grid size accepted by [`witten_build`].
pub const MIN_GRID_POINTS: usize = 16;

/// Builds the lattice Witten model for the superpotential `h`; `h'` is taken
/// by central differences of `h` at the midpoints.
pub fn witten_build(h: impl Fn(f64) -> f64, grid_points: usize, domain: (f64, f64)) -> Result<WittenModel> {
    let (lo, hi) = domain;
    if grid_points < MIN_GRID_POINTS {
        return Err(Error::DegenerateGrid(format!("{grid_points} points, need at least {MIN_GRID_POINTS}")));
    }
    if !(lo.is_finite() && hi.is_finite() && hi > lo) {
        return Err(Error::DegenerateGrid(format!("domain [{lo}, {hi}]")));
    }
    let n = grid_points;
    let dx = (hi - lo) / (n - 1) as f64;
    let x: Vec<f64> = (0..n).map(|i| lo + i as f64 * dx).collect();
    let h_prime: Vec<f64> = x.iter().map(|&xi| (h(xi + dx) - h(xi)) / dx).collect();
    if h_prime.iter().any(|v| !v.is_finite()) {
        return Err(Error::DegenerateGrid("superpotential is not finite on the domain".into()));
    }
    let b = lowering_block(&h_prime, dx);
    let b_dag = b.adjoint();
    let q = SparseMatrix::from_triplets(2 * n, 2 * n, b.triplets().map(|(r, col, v)| (n + r, col, v)));
    let q_dag = SparseMatrix::from_triplets(2 * n, 2 * n, b_dag.triplets().map(|(r, col, v)| (r, n + col, v)));
    let h_op = q.anticommutator(&q_dag).scale(c(0.5, 0.0));
    Ok(WittenModel {
        grid_points: n,
        domain,
        dx,
        x,
        h_prime,
        q,
        q_dag,
        h: h_op,
    })
}

/// `B = -i M` with `M` upper bidiagonal.
fn lowering_block(h_prime: &[f64], dx: f64) -> SparseMatrix {
    let n = h_prime.len();
    let mut triplets = Vec::with_capacity(2 * n);
    for (i, &w) in h_prime.iter().enumerate() {
        let (diag, upper) = stencil(w, dx);
        triplets.push((i, i, -I * diag));
        if i + 1 < n {
            triplets.push((i, i + 1, -I * upper));
        }
    }
    SparseMatrix::from_triplets(n, n, triplets)
}

fn stencil(w: f64, dx: f64) -> (f64, f64) {
    (-1.0 / dx + 0.5 * w, 1.0 / dx + 0.5 * w)
}

impl WittenModel {
    /// `M` by rows: `B* B = M^T M`, `B B* = M M^T`.
    fn real_block(&self) -> Vec<[(isize, f64); 2]> {
        let n = self.grid_points;
        (0..n)
            .map(|i| {
                let (diag, upper) = stencil(self.h_prime[i], self.dx);
                [(0, diag), (1, if i + 1 < n { upper } else { 0.0 })]
            })
            .collect()
    }

    /// `B* B / 2` (even) or `B B* / 2` (odd) as a symmetric tridiagonal band.
    pub fn sector_band(&self, odd: bool) -> SymmetricBand {
        let n = self.grid_points;
        let rows = self.real_block();
        let entry = |i: usize, j: usize| -> f64 {
            let m = |r: usize, col: usize| -> f64 {
                let off = col as isize - r as isize;
                rows[r].iter().find(|(o, _)| *o == off).map_or(0.0, |(_, v)| *v)
            };
            let lo = i.min(j).saturating_sub(1);
            let hi = (i.max(j) + 1).min(n - 1);
            (lo..=hi)
                .map(|k| if odd { m(i, k) * m(j, k) } else { m(k, i) * m(k, j) })
                .sum::<f64>()
                * 0.5
        };
        let mut band = SymmetricBand::zeros(n, 1);
        for i in 0..n {
            for j in i..(i + 2).min(n) {
                band.set(i, j, entry(i, j));
            }
        }
        band
    }

    /// Lowest `k` eigenvalues of the even and odd sectors of `H`.
    pub fn sector_spectra(&self, k: usize) -> (Vec<f64>, Vec<f64>) {
        (
            self.sector_band(false).lowest_eigenvalues(k, EIGEN_TOL),
            self.sector_band(true).lowest_eigenvalues(k, EIGEN_TOL),
        )
    }

    /// Lowest `k` eigenvalues of the full `H`, merged.
    pub fn spectrum(&self, k: usize) -> Vec<f64> {
        let (mut even, odd) = self.sector_spectra(k);
        even.extend(odd);
        even.sort_by(|a, b| a.partial_cmp(b).unwrap());
        even.truncate(k);
        even
    }
}

/// The parity-projected charges and their Hamiltonians on one mode.
#[derive(Debug, Clone, PartialEq)]
pub struct ParityChargeSystem {
    pub cutoff: usize,
    pub fock: TruncatedFock,
    pub q_plus: CMatrix,
    pub q_minus: CMatrix,
    pub h_plus: CMatrix,
    pub h_minus: CMatrix,
}

/// Smallest cutoff accepted by [`parity_charges`].
pub const MIN_PARITY_CUTOFF: usize = 6;

pub fn parity_charges(cutoff: usize) -> Result<ParityChargeSystem> {
    if cutoff < MIN_PARITY_CUTOFF {
        return Err(Error::CutoffTooSmall {
            cutoff,
            minimum: MIN_PARITY_CUTOFF,
        });
    }
    let fock = TruncatedFock::new(1, cutoff)?;
    let a = fock.annihilator(0)?;
    let j = fock.parity();
    let id = CMatrix::identity(fock.dim(), fock.dim());
    let q_plus = &a * (&id + &j) * c(0.5, 0.0);
    let q_minus = &a * (&id - &j) * c(0.5, 0.0);
    let anti = |q: &CMatrix| q * q.adjoint() + q.adjoint() * q;
    Ok(ParityChargeSystem {
        cutoff,
        fock,
        h_plus: anti(&q_plus),
        h_minus: anti(&q_minus),
        q_plus,
        q_minus,
    })
}

/// The literal charges `a (I +/- 2 pi i Lambda)/2` and their anticommutators,
/// kept for comparison with the parity reading.
pub fn literal_parity_charges(cutoff: usize) -> Result<(CMatrix, CMatrix)> {
    let fock = TruncatedFock::new(1, cutoff)?;
    let a = fock.annihilator(0)?;
    let id = CMatrix::identity(fock.dim(), fock.dim());
    let twist = fock.number() * (I * 2.0 * std::f64::consts::PI);
    Ok((&a * (&id + &twist) * c(0.5, 0.0), &a * (&id - &twist) * c(0.5, 0.0)))
}

/// Hand model `H_+ = (Lambda + 1) P_odd + Lambda P_even` (and the mirror
/// image for `H_-`), valid on the trusted subspace.
pub fn parity_hand_model(cutoff: usize, plus: bool) -> CMatrix {
    CMatrix::from_fn(cutoff + 1, cutoff + 1, |i, j| {
        if i != j {
            return c(0.0, 0.0);
        }
        let n = i as f64;
        let odd = i % 2 == 1;
        c(if odd == plus { n + 1.0 } else { n }, 0.0)
    })
}

/// A charge, its Hamiltonian and the grading data needed by [`susy_verify`].
#[derive(Debug, Clone, PartialEq)]
pub struct SusySystem {
    pub name: String,
    pub q: SparseMatrix,
    pub h: SparseMatrix,
    /// `H = normalization {Q, Q*}`.
    pub normalization: f64,
    /// `true` for even basis states.
    pub even: Vec<bool>,
    /// Basis states on which the relations are asserted.
    pub trusted: Vec<bool>,
}

pub trait Supersymmetric {
    fn system(&self) -> SusySystem;

    /// Lowest eigenvalues of `H` on the trusted part of each sector.
    fn sector_spectra(&self, k: usize) -> (Vec<f64>, Vec<f64>) {
        let sys = self.system();
        let dense = sys.h.to_dense();
        let sector = |even: bool| -> Vec<f64> {
            let keep: Vec<bool> = sys.even.iter().zip(&sys.trusted).map(|(e, t)| *t && *e == even).collect();
            let block = restrict(&dense, &keep);
            let mut ev: Vec<f64> = block.symmetric_eigenvalues().iter().copied().collect();
            ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
            ev.truncate(k);
            ev
        };
        (sector(true), sector(false))
    }
}

impl Supersymmetric for SusySystem {
    fn system(&self) -> SusySystem {
        self.clone()
    }
}

impl Supersymmetric for WittenModel {
    fn system(&self) -> SusySystem {
        let n = self.grid_points;
        SusySystem {
            name: format!("witten[{n}]"),
            q: self.q.clone(),
            h: self.h.clone(),
            normalization: 0.5,
            even: (0..2 * n).map(|i| i < n).collect(),
            trusted: vec![true; 2 * n],
        }
    }

    fn sector_spectra(&self, k: usize) -> (Vec<f64>, Vec<f64>) {
        WittenModel::sector_spectra(self, k)
    }
}

/// One of the two charges of a [`ParityChargeSystem`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParityCharge<'a> {
    pub system: &'a ParityChargeSystem,
    pub plus: bool,
}

impl Supersymmetric for ParityCharge<'_> {
    fn system(&self) -> SusySystem {
        let s = self.system;
        let (q, h) = if self.plus { (&s.q_plus, &s.h_plus) } else { (&s.q_minus, &s.h_minus) };
        SusySystem {
            name: format!("parity{}[{}]", if self.plus { "+" } else { "-" }, s.cutoff),
            q: SparseMatrix::from_dense(q),
            h: SparseMatrix::from_dense(h),
            normalization: 1.0,
            even: (0..=s.cutoff).map(|n| n % 2 == 0).collect(),
            trusted: s.fock.trusted_mask(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraReport {
    pub name: String,
    /// `|Q^2|`, largest entry.
    pub q_squared: f64,
    pub q_dag_squared: f64,
    /// `|normalization {Q, Q*} - H|`.
    pub closure: f64,
    /// `|[Q, H]|` on the trusted subspace.
    pub q_h_commutator: f64,
    pub q_dag_h_commutator: f64,
    /// Largest entry of `H`, the scale for the residuals above.
    pub h_scale: f64,
    /// `(even, odd)` nonzero eigenvalues paired in ascending order.
    pub pairing: Vec<(f64, f64)>,
    /// Largest relative mismatch in `pairing`.
    pub pairing_residual: f64,
    /// `|J Q + Q J|` with `J = P_even - P_odd`.
    pub grading_anticommutator: f64,
    /// `|[P_even, H]|`.
    pub projection_commutator: f64,
    /// `|P_even Q P_even| + |P_odd Q P_odd|`.
    pub diagonal_blocks_of_q: f64,
}

impl AlgebraReport {
    /// Residuals relative to the largest entry of `H` (or absolute if `H = 0`).
    pub fn relative(&self, residual: f64) -> f64 {
        if self.h_scale > 0.0 {
            residual / self.h_scale
        } else {
            residual
        }
    }
}

/// Eigenvalues above this are counted as nonzero when pairing sectors.
pub const ZERO_MODE_TOL: f64 = 1e-6;

/// Number of nonzero levels paired in the report.
pub const PAIRING_LEVELS: usize = 5;

fn restricted_max(m: &SparseMatrix, keep: &[bool]) -> f64 {
    m.compress(keep).max_abs()
}

pub fn susy_verify(system: &impl Supersymmetric) -> AlgebraReport {
    let sys = system.system();
    let q = &sys.q;
    let q_dag = q.adjoint();
    let closure = q.anticommutator(&q_dag).scale(c(sys.normalization, 0.0)).sub(&sys.h).max_abs();
    let grading: Vec<C64> = sys.even.iter().map(|e| if *e { ONE } else { -ONE }).collect();
    let j = SparseMatrix::from_diagonal(&grading);
    let p_even = SparseMatrix::from_diagonal(&sys.even.iter().map(|e| if *e { ONE } else { c(0.0, 0.0) }).collect::<Vec<_>>());
    let p_odd = SparseMatrix::identity(sys.even.len()).sub(&p_even);

    let (even, odd) = system.sector_spectra(PAIRING_LEVELS + 2);
    let nonzero = |v: &[f64]| -> Vec<f64> { v.iter().copied().filter(|e| *e > ZERO_MODE_TOL).collect() };
    let pairing: Vec<(f64, f64)> = nonzero(&even).into_iter().zip(nonzero(&odd)).take(PAIRING_LEVELS).collect();
    let pairing_residual = pairing
        .iter()
        .map(|(a, b)| (a - b).abs() / a.abs().max(b.abs()))
        .fold(0.0, f64::max);

    AlgebraReport {
        name: sys.name.clone(),
        q_squared: q.mul(q).max_abs(),
        q_dag_squared: q_dag.mul(&q_dag).max_abs(),
        closure,
        q_h_commutator: restricted_max(&q.commutator(&sys.h), &sys.trusted),
        q_dag_h_commutator: restricted_max(&q_dag.commutator(&sys.h), &sys.trusted),
        h_scale: sys.h.max_abs(),
        pairing,
        pairing_residual,
        grading_anticommutator: j.anticommutator(q).max_abs(),
        projection_commutator: restricted_max(&p_even.commutator(&sys.h), &sys.trusted),
        diagonal_blocks_of_q: p_even.mul(q).mul(&p_even).max_abs() + p_odd.mul(q).mul(&p_odd).max_abs(),
    }
}

/// Error of the first excited level against the continuum value `1` for
/// `h = x^2/2` on each grid of `ladder`, and the observed orders between
/// consecutive grids.
pub fn oscillator_convergence(ladder: &[usize], domain: (f64, f64)) -> Result<(Vec<f64>, Vec<f64>)> {
    let errors = ladder
        .iter()
        .map(|&n| {
            let model = witten_build(|x| 0.5 * x * x, n, domain)?;
            let (even, _) = model.sector_spectra(2);
            Ok((even[1] - 1.0).abs())
        })
        .collect::<Result<Vec<f64>>>()?;
    let orders = errors
        .windows(2)
        .zip(ladder.windows(2))
        .map(|(e, n)| (e[0] / e[1]).ln() / ((n[1] - 1) as f64 / (n[0] - 1) as f64).ln())
        .collect();
    Ok((errors, orders))
}
