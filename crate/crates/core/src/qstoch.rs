//! Discrete-time quantum stochastic calculus on time-binned Fock space.
//!
//! The horizon `[0, T]` is cut into `n` bins of width `dt`; bin `k` carries
//! one bosonic mode truncated at occupation `N`. Increments are
//! `dA_k = sqrt(dt) a_k`, `dA*_k = sqrt(dt) a*_k` and `dLambda_k = a*_k a_k`.
//! The reflection `J(t)` is `(-1)^Lambda` on the bins that end by `t`.
//!
//! Operators are kept as sums of tensor products and states as tensor
//! products of per-bin vectors, so matrix elements cost `O(terms * n)` and
//! the total dimension `(N+1)^n` is never materialized.

use crate::error::{Error, Result};
use crate::fock::TruncatedFock;
use crate::linalg::{c, kron, op_norm, CMatrix, CVector, C64, ONE, ZERO};

/// Default per-bin occupation cutoff.
pub const DEFAULT_CUTOFF: usize = 2;

/// Residuals at or below this level count as exact zeros in the ladders.
pub const RESIDUAL_FLOOR: f64 = 1e-12;

/// Doubling ladder for the convergence studies.
pub const LADDER: [usize; 4] = [4, 8, 16, 32];

const GRID_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub horizon: f64,
    pub bins: usize,
}

impl TimeGrid {
    pub fn new(horizon: f64, bins: usize) -> Result<Self> {
        if bins < 2 {
            return Err(Error::DegenerateGrid(format!("need at least 2 bins, got {bins}")));
        }
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::DegenerateGrid(format!("horizon must be positive, got {horizon}")));
        }
        Ok(Self { horizon, bins })
    }

    pub fn dt(&self) -> f64 {
        self.horizon / self.bins as f64
    }

    /// Left endpoint `t_k = k dt`.
    pub fn time(&self, k: usize) -> f64 {
        k as f64 * self.dt()
    }

    /// Number of bins `[t_k, t_{k+1})` that end by `t`.
    pub fn bins_before(&self, t: f64) -> Result<usize> {
        if !(t >= -GRID_EPS * self.horizon && t <= self.horizon * (1.0 + GRID_EPS)) {
            return Err(Error::TimeOutsideHorizon { t, horizon: self.horizon });
        }
        let m = (t / self.dt() + GRID_EPS).floor().max(0.0) as usize;
        Ok(m.min(self.bins))
    }
}

/// A complex function constant on each bin.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction {
    pub values: Vec<C64>,
}

impl StepFunction {
    pub fn new(values: Vec<C64>) -> Self {
        Self { values }
    }

    pub fn constant(bins: usize, value: C64) -> Self {
        Self { values: vec![value; bins] }
    }

    /// Samples `f` at the bin midpoints.
    pub fn from_fn(grid: &TimeGrid, f: impl Fn(f64) -> C64) -> Self {
        Self {
            values: (0..grid.bins).map(|k| f(grid.time(k) + 0.5 * grid.dt())).collect(),
        }
    }

    fn check(&self, grid: &TimeGrid) -> Result<()> {
        if self.values.len() != grid.bins {
            return Err(Error::DimensionMismatch { expected: grid.bins, found: self.values.len() });
        }
        Ok(())
    }
}

/// `<<u, v>>([0, t]) = sum over bins before t of conj(u_k) v_k dt`.
pub fn martingale_measure(grid: &TimeGrid, u: &StepFunction, v: &StepFunction, t: f64) -> Result<C64> {
    u.check(grid)?;
    v.check(grid)?;
    let m = grid.bins_before(t)?;
    Ok((0..m).map(|k| u.values[k].conj() * v.values[k]).sum::<C64>() * grid.dt())
}

/// One bosonic mode per bin, each truncated at `cutoff`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinFock {
    pub grid: TimeGrid,
    pub cutoff: usize,
}

impl BinFock {
    pub fn new(grid: TimeGrid, cutoff: usize) -> Result<Self> {
        if cutoff < 2 {
            return Err(Error::CutoffTooSmall { cutoff, minimum: 2 });
        }
        Ok(Self { grid, cutoff })
    }

    pub fn with_default_cutoff(grid: TimeGrid) -> Self {
        Self {
            grid,
            cutoff: DEFAULT_CUTOFF,
        }
    }

    pub fn bins(&self) -> usize {
        self.grid.bins
    }

    pub fn local_dim(&self) -> usize {
        self.cutoff + 1
    }

    /// `(cutoff + 1)^n`, or `None` on overflow.
    pub fn dim(&self) -> Option<usize> {
        self.local_dim().checked_pow(self.bins() as u32)
    }

    pub fn local_annihilator(&self) -> CMatrix {
        TruncatedFock::single_mode_annihilator(self.cutoff)
    }

    pub fn local_number(&self) -> CMatrix {
        CMatrix::from_diagonal(&CVector::from_fn(self.local_dim(), |i, _| c(i as f64, 0.0)))
    }

    pub fn local_parity(&self) -> CMatrix {
        CMatrix::from_diagonal(&CVector::from_fn(self.local_dim(), |i, _| if i % 2 == 0 { ONE } else { -ONE }))
    }

    fn check_bin(&self, k: usize) -> Result<()> {
        if k >= self.bins() {
            return Err(Error::IndexOutOfRange { index: k, len: self.bins() });
        }
        Ok(())
    }

    /// Number basis product state with the given occupations.
    pub fn basis_state(&self, occupations: &[usize]) -> Result<ProductState> {
        if occupations.len() != self.bins() {
            return Err(Error::DimensionMismatch { expected: self.bins(), found: occupations.len() });
        }
        let factors = occupations
            .iter()
            .map(|&n| {
                if n > self.cutoff {
                    return Err(Error::IndexOutOfRange { index: n, len: self.local_dim() });
                }
                Ok(CVector::from_fn(self.local_dim(), |i, _| if i == n { ONE } else { ZERO }))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ProductState { factors })
    }

    pub fn vacuum(&self) -> ProductState {
        self.basis_state(&vec![0; self.bins()]).expect("vacuum occupations are in range")
    }

    /// Vacuum and the `n` states with a single quantum in one bin.
    pub fn one_particle_sector(&self) -> Vec<ProductState> {
        let mut states = vec![self.vacuum()];
        for k in 0..self.bins() {
            let mut occ = vec![0; self.bins()];
            occ[k] = 1;
            states.push(self.basis_state(&occ).expect("occupation 1 is below the cutoff"));
        }
        states
    }

    /// The trusted subspace: every occupation at most `cutoff - 2`.
    /// Returns `SubspaceTooLarge` past `MAX_TRUSTED_STATES` basis states.
    pub fn trusted_basis(&self) -> Result<Vec<ProductState>> {
        let levels = self.cutoff - 1;
        let count = levels.checked_pow(self.bins() as u32).unwrap_or(usize::MAX);
        if count > MAX_TRUSTED_STATES {
            return Err(Error::SubspaceTooLarge(count));
        }
        (0..count)
            .map(|mut idx| {
                let mut occ = vec![0; self.bins()];
                for k in (0..self.bins()).rev() {
                    occ[k] = idx % levels;
                    idx /= levels;
                }
                self.basis_state(&occ)
            })
            .collect()
    }

    /// Truncated exponential vector of a step function: bin `k` holds
    /// `sum_{m <= N} (u_k sqrt(dt))^m / sqrt(m!) |m>`.
    pub fn exponential(&self, u: &StepFunction) -> Result<ProductState> {
        u.check(&self.grid)?;
        let s = self.grid.dt().sqrt();
        let factors = u
            .values
            .iter()
            .map(|&uk| {
                let alpha = uk * s;
                let mut v = CVector::zeros(self.local_dim());
                let mut term = ONE;
                for m in 0..self.local_dim() {
                    if m > 0 {
                        term *= alpha / (m as f64).sqrt();
                    }
                    v[m] = term;
                }
                v
            })
            .collect();
        Ok(ProductState { factors })
    }

    pub fn identity(&self) -> ProductSum {
        ProductSum::identity(self.bins(), self.local_dim())
    }

    /// `J_{<m} = prod_{k < m} (-1)^{Lambda_k}`.
    pub fn parity_before(&self, m: usize) -> ProductSum {
        let p = self.local_parity();
        ProductSum::single(self.bins(), self.local_dim(), ONE, (0..m.min(self.bins())).map(|k| (k, p.clone())).collect())
    }
}

/// Largest trusted subspace handled by `BinFock::trusted_basis`.
pub const MAX_TRUSTED_STATES: usize = 4096;

/// `prod_k x_k`, a tensor product of per-bin vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductState {
    pub factors: Vec<CVector>,
}

impl ProductState {
    pub fn inner(&self, other: &Self) -> C64 {
        self.factors.iter().zip(&other.factors).map(|(x, y)| x.dotc(y)).product()
    }

    pub fn norm(&self) -> f64 {
        self.factors.iter().map(|x| x.norm()).product()
    }

    /// The full state vector, bin 0 as the slowest index.
    pub fn to_dense(&self) -> CVector {
        let v = self
            .factors
            .iter()
            .fold(CMatrix::from_element(1, 1, ONE), |acc, x| kron(&acc, &CMatrix::from_column_slice(x.len(), 1, x.as_slice())));
        CVector::from_column_slice(v.as_slice())
    }
}

/// `coeff * prod_b M_b`, identity on bins not listed. Factors are sorted by bin.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductTerm {
    pub coeff: C64,
    pub factors: Vec<(usize, CMatrix)>,
}

impl ProductTerm {
    fn mul(&self, other: &Self) -> Self {
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() || j < other.factors.len() {
            match (self.factors.get(i), other.factors.get(j)) {
                (Some((a, ma)), Some((b, mb))) if a == b => {
                    factors.push((*a, ma * mb));
                    i += 1;
                    j += 1;
                }
                (Some((a, ma)), Some((b, _))) if a < b => {
                    factors.push((*a, ma.clone()));
                    i += 1;
                }
                (Some((a, ma)), None) => {
                    factors.push((*a, ma.clone()));
                    i += 1;
                }
                (_, Some((b, mb))) => {
                    factors.push((*b, mb.clone()));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Self {
            coeff: self.coeff * other.coeff,
            factors,
        }
    }

    fn adjoint(&self) -> Self {
        Self {
            coeff: self.coeff.conj(),
            factors: self.factors.iter().map(|(b, m)| (*b, m.adjoint())).collect(),
        }
    }

    fn matrix_element(&self, x: &ProductState, y: &ProductState) -> C64 {
        let mut acc = self.coeff;
        let mut next = self.factors.iter().peekable();
        for (b, (xb, yb)) in x.factors.iter().zip(&y.factors).enumerate() {
            let z = match next.peek() {
                Some((fb, m)) if *fb == b => {
                    next.next();
                    xb.dotc(&(m * yb))
                }
                _ => xb.dotc(yb),
            };
            acc *= z;
            if acc == ZERO {
                break;
            }
        }
        acc
    }
}

/// A finite sum of tensor-product operators on `bins` copies of `C^local_dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductSum {
    pub bins: usize,
    pub local_dim: usize,
    pub terms: Vec<ProductTerm>,
}

impl ProductSum {
    pub fn zero(bins: usize, local_dim: usize) -> Self {
        Self {
            bins,
            local_dim,
            terms: Vec::new(),
        }
    }

    pub fn identity(bins: usize, local_dim: usize) -> Self {
        Self::single(bins, local_dim, ONE, Vec::new())
    }

    fn single(bins: usize, local_dim: usize, coeff: C64, factors: Vec<(usize, CMatrix)>) -> Self {
        Self {
            bins,
            local_dim,
            terms: vec![ProductTerm { coeff, factors }],
        }
    }

    /// `m` on bin `k`, identity elsewhere.
    pub fn local(bins: usize, k: usize, m: CMatrix) -> Result<Self> {
        if k >= bins {
            return Err(Error::IndexOutOfRange { index: k, len: bins });
        }
        if !m.is_square() {
            return Err(Error::DimensionMismatch { expected: m.nrows(), found: m.ncols() });
        }
        Ok(Self::single(bins, m.nrows(), ONE, vec![(k, m)]))
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| ProductTerm {
                    coeff: t.coeff * s,
                    factors: t.factors.clone(),
                })
                .collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self { terms, ..self.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-ONE))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let terms = self
            .terms
            .iter()
            .flat_map(|a| other.terms.iter().map(move |b| a.mul(b)))
            .filter(|t| t.coeff != ZERO)
            .collect();
        Self { terms, ..self.clone() }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            terms: self.terms.iter().map(ProductTerm::adjoint).collect(),
            ..self.clone()
        }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        self.mul(other).add(&other.mul(self))
    }

    /// One past the last bin any term acts on; `0` for multiples of the identity.
    pub fn support_end(&self) -> usize {
        self.terms
            .iter()
            .filter_map(|t| t.factors.last().map(|(b, _)| b + 1))
            .max()
            .unwrap_or(0)
    }

    /// First bin any term acts on; `bins` for multiples of the identity.
    pub fn support_start(&self) -> usize {
        self.terms
            .iter()
            .filter_map(|t| t.factors.first().map(|(b, _)| *b))
            .min()
            .unwrap_or(self.bins)
    }

    /// `<x, T y>`.
    pub fn matrix_element(&self, x: &ProductState, y: &ProductState) -> C64 {
        self.terms.iter().map(|t| t.matrix_element(x, y)).sum()
    }

    /// Compression `<x_i, T x_j>` onto the span of `states`.
    pub fn compress(&self, states: &[ProductState]) -> CMatrix {
        CMatrix::from_fn(states.len(), states.len(), |i, j| self.matrix_element(&states[i], &states[j]))
    }

    /// Operator norm of the compression onto an orthonormal family.
    pub fn restricted_norm(&self, orthonormal: &[ProductState]) -> f64 {
        op_norm(&self.compress(orthonormal))
    }

    /// The full matrix, bin 0 as the slowest index.
    pub fn to_dense(&self) -> Result<CMatrix> {
        let dim = self.local_dim.checked_pow(self.bins as u32).unwrap_or(usize::MAX);
        if dim > crate::fock::MAX_DENSE_DIM {
            return Err(Error::SubspaceTooLarge(dim));
        }
        let id = CMatrix::identity(self.local_dim, self.local_dim);
        let mut out = CMatrix::zeros(dim, dim);
        for t in &self.terms {
            let mut next = t.factors.iter().peekable();
            let mut m = CMatrix::from_element(1, 1, t.coeff);
            for b in 0..self.bins {
                let f = match next.peek() {
                    Some((fb, f)) if *fb == b => {
                        next.next();
                        f
                    }
                    _ => &id,
                };
                m = kron(&m, f);
            }
            out += m;
        }
        Ok(out)
    }
}

/// The increments `(dA_k, dA*_k, dLambda_k)` on bin `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Increments {
    pub d_a: ProductSum,
    pub d_a_dag: ProductSum,
    pub d_lambda: ProductSum,
}

pub fn increments(bf: &BinFock, k: usize) -> Result<Increments> {
    bf.check_bin(k)?;
    let a = bf.local_annihilator() * c(bf.grid.dt().sqrt(), 0.0);
    let a_dag = a.adjoint();
    Ok(Increments {
        d_a: ProductSum::local(bf.bins(), k, a)?,
        d_a_dag: ProductSum::local(bf.bins(), k, a_dag)?,
        d_lambda: ProductSum::local(bf.bins(), k, bf.local_number())?,
    })
}

/// `J(t) = (-1)^Lambda` on the bins ending by `t`, identity after.
pub fn reflection(bf: &BinFock, t: f64) -> Result<ProductSum> {
    Ok(bf.parity_before(bf.grid.bins_before(t)?))
}

/// `F(t) = sum_{t_k < t} 1/2 (I +- J(t_k)) dA_{k}`, left-point rule, with its adjoint.
pub fn fermion_process(bf: &BinFock, t: f64, plus: bool) -> Result<(ProductSum, ProductSum)> {
    let m = bf.grid.bins_before(t)?;
    let sign = if plus { ONE } else { -ONE };
    let mut f = ProductSum::zero(bf.bins(), bf.local_dim());
    for k in 0..m {
        let half = bf.identity().add(&bf.parity_before(k).scale(sign)).scale(c(0.5, 0.0));
        f = f.add(&half.mul(&increments(bf, k)?.d_a));
    }
    let f_dag = f.adjoint();
    Ok((f, f_dag))
}

/// Jordan-Wigner process `sum_{t_k < t} J(t_k) dA_k` and its adjoint.
pub fn jordan_wigner_process(bf: &BinFock, t: f64) -> Result<(ProductSum, ProductSum)> {
    let m = bf.grid.bins_before(t)?;
    let mut f = ProductSum::zero(bf.bins(), bf.local_dim());
    for k in 0..m {
        f = f.add(&bf.parity_before(k).mul(&increments(bf, k)?.d_a));
    }
    let f_dag = f.adjoint();
    Ok((f, f_dag))
}

/// `phi(t) = <J(t) e(u), F(t) e(v)>` and `psi(t) = <F*(t) e(u), J(t) e(v)>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropositionCheck {
    pub phi: C64,
    pub psi: C64,
    /// `|phi + psi|`.
    pub residual: f64,
}

pub fn proposition_check(bf: &BinFock, u: &StepFunction, v: &StepFunction, t: f64, plus: bool) -> Result<PropositionCheck> {
    let eu = bf.exponential(u)?;
    let ev = bf.exponential(v)?;
    let j = reflection(bf, t)?;
    let (f, f_dag) = fermion_process(bf, t, plus)?;
    let phi = j.mul(&f).matrix_element(&eu, &ev);
    // <F* x, y> = <x, F y>; the product is kept explicit to mirror the pairing.
    let psi = f_dag.adjoint().mul(&j).matrix_element(&eu, &ev);
    Ok(PropositionCheck {
        phi,
        psi,
        residual: (phi + psi).norm(),
    })
}

/// `|<e(u), (J(t_m) - I + 2 sum_{k<m} J(t_k) dLambda_k) e(v)>|` normalized by
/// `|e(u)| |e(v)|`: the accumulated defect of `dJ = -2 J dLambda`.
pub fn reflection_qsde_residual(bf: &BinFock, u: &StepFunction, v: &StepFunction, t: f64) -> Result<f64> {
    let eu = bf.exponential(u)?;
    let ev = bf.exponential(v)?;
    let m = bf.grid.bins_before(t)?;
    let mut defect = bf.parity_before(m).sub(&bf.identity());
    for k in 0..m {
        defect = defect.add(&bf.parity_before(k).mul(&increments(bf, k)?.d_lambda).scale(c(2.0, 0.0)));
    }
    Ok(defect.matrix_element(&eu, &ev).norm() / (eu.norm() * ev.norm()))
}

/// Single-step defect `J(t_{k+1}) - J(t_k) + 2 J(t_k) dLambda_k`.
pub fn reflection_step_defect(bf: &BinFock, k: usize) -> Result<ProductSum> {
    let inc = increments(bf, k)?;
    Ok(bf
        .parity_before(k + 1)
        .sub(&bf.parity_before(k))
        .add(&bf.parity_before(k).mul(&inc.d_lambda).scale(c(2.0, 0.0))))
}

/// Normalized `|<x, T y>| / (|x| |y|)`.
pub fn normalized_element(op: &ProductSum, x: &ProductState, y: &ProductState) -> f64 {
    op.matrix_element(x, y).norm() / (x.norm() * y.norm())
}

/// Residuals of one ladder rung.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderRow {
    pub bins: usize,
    pub dt: f64,
    /// `|phi(t) + psi(t)|`.
    pub proposition: f64,
    /// `|{F, F*} - t I|` on the trusted subspace.
    pub car_trusted: f64,
    /// `|F^2|` on the trusted subspace.
    pub nilpotency_trusted: f64,
    /// Normalized `<e(u), ({F, F*} - t I) e(v)>`.
    pub car_exponential: f64,
    /// `|{F, F*} - t I|` on the vacuum plus one-particle sector.
    pub car_one_particle: f64,
    /// Normalized `<e(u), ({G, G*} - t I) e(v)>` for the Jordan-Wigner process `G`.
    pub jw_car_exponential: f64,
    /// Normalized `<e(u), G^2 e(v)>`.
    pub jw_nilpotency_exponential: f64,
    /// Accumulated `dJ = -2 J dLambda` defect on exponential vectors.
    pub reflection_qsde: f64,
}

/// All residuals at `t = t_fraction * T` for constant `u` and `v`.
pub fn ladder_row(horizon: f64, bins: usize, cutoff: usize, u_value: C64, v_value: C64, t_fraction: f64) -> Result<LadderRow> {
    let bf = BinFock::new(TimeGrid::new(horizon, bins)?, cutoff)?;
    let t = t_fraction * horizon;
    let t_grid = bf.grid.bins_before(t)? as f64 * bf.grid.dt();
    let u = StepFunction::constant(bins, u_value);
    let v = StepFunction::constant(bins, v_value);
    let eu = bf.exponential(&u)?;
    let ev = bf.exponential(&v)?;
    let trusted = bf.trusted_basis()?;

    let prop = proposition_check(&bf, &u, &v, t, true)?;
    let (f, f_dag) = fermion_process(&bf, t, true)?;
    let car = f.anticommutator(&f_dag).sub(&bf.identity().scale(c(t_grid, 0.0)));
    let square = f.mul(&f);
    let (g, g_dag) = jordan_wigner_process(&bf, t)?;
    let jw_car = g.anticommutator(&g_dag).sub(&bf.identity().scale(c(t_grid, 0.0)));

    Ok(LadderRow {
        bins,
        dt: bf.grid.dt(),
        proposition: prop.residual,
        car_trusted: car.restricted_norm(&trusted),
        nilpotency_trusted: square.restricted_norm(&trusted),
        car_exponential: normalized_element(&car, &eu, &ev),
        car_one_particle: car.restricted_norm(&bf.one_particle_sector()),
        jw_car_exponential: normalized_element(&jw_car, &eu, &ev),
        jw_nilpotency_exponential: normalized_element(&g.mul(&g), &eu, &ev),
        reflection_qsde: reflection_qsde_residual(&bf, &u, &v, t)?,
    })
}

pub fn fermion_ladder(horizon: f64, ladder: &[usize], cutoff: usize, u_value: C64, v_value: C64, t_fraction: f64) -> Result<Vec<LadderRow>> {
    ladder
        .iter()
        .map(|&n| ladder_row(horizon, n, cutoff, u_value, v_value, t_fraction))
        .collect()
}

/// Each entry at most half its predecessor, residuals at or below
/// `RESIDUAL_FLOOR` counting as exact.
pub fn halves_each_step(values: &[f64]) -> bool {
    values
        .windows(2)
        .all(|w| w[1] <= RESIDUAL_FLOOR || w[1] <= 0.5 * w[0])
}

/// Successive `log2(r_n / r_{2n})`.
pub fn observed_orders(values: &[f64]) -> Vec<f64> {
    values.windows(2).map(|w| (w[0] / w[1]).log2()).collect()
}
