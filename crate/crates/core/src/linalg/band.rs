//! Eigenvalues of real symmetric band matrices: Givens band reduction to
//! tridiagonal form followed by Sturm-sequence bisection.

/// Real symmetric tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    /// `off[i]` couples rows `i` and `i + 1`.
    pub off: Vec<f64>,
}

impl Tridiagonal {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        let n = self.diag.len();
        let tiny = f64::EPSILON * (x.abs() + 1.0);
        let mut count = 0;
        let mut q = self.diag[0] - x;
        for i in 0..n {
            if i > 0 {
                q = (self.diag[i] - x) - self.off[i - 1] * self.off[i - 1] / q;
            }
            if q == 0.0 {
                q = -tiny;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        (0..n).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), i| {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 }
                + if i + 1 < n { self.off[i].abs() } else { 0.0 };
            (lo.min(self.diag[i] - r), hi.max(self.diag[i] + r))
        })
    }

    /// The `k` smallest eigenvalues in ascending order, each bisected to an
    /// absolute width of `tol`.
    pub fn lowest_eigenvalues(&self, k: usize, tol: f64) -> Vec<f64> {
        let (lo0, hi0) = self.gershgorin();
        (0..k.min(self.len()))
            .map(|j| {
                let (mut lo, mut hi) = (lo0, hi0);
                while hi - lo > tol {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if self.count_below(mid) > j {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                0.5 * (lo + hi)
            })
            .collect()
    }
}

/// Real symmetric matrix with `bandwidth` nonzero off-diagonals, stored densely
/// in a row-major `n * n` buffer (only the band is ever touched).
#[derive(Debug, Clone)]
pub struct SymmetricBand {
    n: usize,
    bandwidth: usize,
    a: Vec<f64>,
}

impl SymmetricBand {
    pub fn zeros(n: usize, bandwidth: usize) -> Self {
        Self {
            n,
            bandwidth,
            a: vec![0.0; n * n],
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    /// Sets `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        assert!(i.abs_diff(j) <= self.bandwidth, "entry ({i}, {j}) outside the band");
        self.a[i * self.n + j] = v;
        self.a[j * self.n + i] = v;
    }

    fn rotate(&mut self, p: usize, q: usize, cs: f64, sn: f64, lo: usize, hi: usize) {
        let n = self.n;
        for k in lo..=hi {
            let x = self.a[p * n + k];
            let y = self.a[q * n + k];
            self.a[p * n + k] = cs * x + sn * y;
            self.a[q * n + k] = -sn * x + cs * y;
        }
        for k in lo..=hi {
            let x = self.a[k * n + p];
            let y = self.a[k * n + q];
            self.a[k * n + p] = cs * x + sn * y;
            self.a[k * n + q] = -sn * x + cs * y;
        }
    }

    /// Orthogonally similar tridiagonal matrix (Schwarz band reduction).
    pub fn to_tridiagonal(&self) -> Tridiagonal {
        let mut work = self.clone();
        let n = work.n;
        for b in (2..=work.bandwidth).rev() {
            for j in 0..n.saturating_sub(b) {
                let (mut r, mut col) = (j + b, j);
                while r < n {
                    let y = work.get(r, col);
                    if y != 0.0 {
                        let x = work.get(r - 1, col);
                        let h = x.hypot(y);
                        let (cs, sn) = (x / h, y / h);
                        let lo = (r - 1).saturating_sub(b + 1);
                        let hi = (r + b + 1).min(n - 1);
                        work.rotate(r - 1, r, cs, sn, lo, hi);
                        work.a[r * n + col] = 0.0;
                        work.a[col * n + r] = 0.0;
                    }
                    col = r - 1;
                    r += b;
                }
            }
        }
        Tridiagonal {
            diag: (0..n).map(|i| work.get(i, i)).collect(),
            off: (0..n.saturating_sub(1)).map(|i| work.get(i + 1, i)).collect(),
        }
    }

    pub fn lowest_eigenvalues(&self, k: usize, tol: f64) -> Vec<f64> {
        self.to_tridiagonal().lowest_eigenvalues(k, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn band_reduction_preserves_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for bandwidth in 1..=3 {
            let n = 60;
            let mut band = SymmetricBand::zeros(n, bandwidth);
            for i in 0..n {
                for j in i..(i + bandwidth + 1).min(n) {
                    band.set(i, j, rng.random_range(-1.0..1.0));
                }
            }
            let dense = DMatrix::from_fn(n, n, |i, j| band.get(i, j));
            let mut exact: Vec<f64> = dense.symmetric_eigenvalues().iter().copied().collect();
            exact.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let got = band.lowest_eigenvalues(n, 1e-13);
            for (e, g) in exact.iter().zip(&got) {
                assert!((e - g).abs() < 1e-10, "bandwidth {bandwidth}: {e} vs {g}");
            }
        }
    }

    #[test]
    fn sturm_count_on_known_spectrum() {
        // Path graph Laplacian-like matrix: eigenvalues 2 - 2 cos(k pi / (n + 1)).
        let n = 9;
        let t = Tridiagonal {
            diag: vec![2.0; n],
            off: vec![-1.0; n - 1],
        };
        let got = t.lowest_eigenvalues(n, 1e-14);
        for (k, g) in got.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((g - exact).abs() < 1e-12);
        }
    }
}
