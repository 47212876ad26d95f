//! Formal analytic series with matrix-block coefficients, the dyadic kernel
//! family, windowed Fourier multipliers, and the generalized-binomial
//! coefficient calculus used by all weighted maps.
//!
//! A series is a polynomial truncation `f(z) = sum_{k=0}^{N} B_k z^k` with
//! each `B_k` a complex d-by-d block. Coefficients live either in a dense
//! vector indexed by degree or, for very sparse symbols such as lacunary
//! series, in a sorted term list. Every operation accepts both layouts and
//! produces identical values (tested).

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{LabError, Result};
use crate::fft;
use crate::report::CheckReport;

/// One matrix-valued coefficient.
pub type Block = DMatrix<Complex64>;

const SPARSE_DEGREE_THRESHOLD: usize = 64;

#[derive(Debug, Clone)]
enum Repr {
    /// Coefficients for every degree `0..=N`.
    Dense(Vec<Block>),
    /// Sorted `(degree, block)` pairs with unique degrees; absent degrees are zero.
    Sparse { degree: usize, terms: Vec<(usize, Block)> },
}

/// Formal analytic series `sum_k B_k z^k` with finite support.
#[derive(Debug, Clone)]
pub struct FormalSeries {
    block_dim: usize,
    repr: Repr,
}

impl FormalSeries {
    /// The zero series (degree 0, one zero block).
    pub fn zero(block_dim: usize) -> Self {
        assert!(block_dim >= 1, "block_dim must be >= 1");
        FormalSeries {
            block_dim,
            repr: Repr::Dense(vec![Block::zeros(block_dim, block_dim)]),
        }
    }

    /// Scalar series from its coefficient vector (degree = len - 1).
    pub fn from_scalar_coeffs(coeffs: &[Complex64]) -> Self {
        assert!(!coeffs.is_empty(), "need at least one coefficient");
        let blocks = coeffs
            .iter()
            .map(|c| Block::from_element(1, 1, *c))
            .collect();
        FormalSeries {
            block_dim: 1,
            repr: Repr::Dense(blocks),
        }
    }

    /// Block series from dense coefficients (degree = len - 1).
    pub fn from_block_coeffs(blocks: Vec<Block>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(LabError::DimensionMismatch(
                "need at least one coefficient block".into(),
            ));
        }
        let d = blocks[0].nrows();
        if d == 0 {
            return Err(LabError::DimensionMismatch("empty block".into()));
        }
        for b in &blocks {
            if b.nrows() != d || b.ncols() != d {
                return Err(LabError::DimensionMismatch(format!(
                    "all blocks must be {d}x{d}"
                )));
            }
        }
        Ok(FormalSeries {
            block_dim: d,
            repr: Repr::Dense(blocks),
        })
    }

    /// Sparse scalar series from `(degree, value)` terms.
    pub fn from_sparse_scalar_terms(terms: &[(usize, Complex64)]) -> Self {
        let mut t: Vec<(usize, Block)> = terms
            .iter()
            .filter(|(_, c)| *c != Complex64::ZERO)
            .map(|(k, c)| (*k, Block::from_element(1, 1, *c)))
            .collect();
        t.sort_by_key(|(k, _)| *k);
        t.dedup_by(|a, b| {
            if a.0 == b.0 {
                let add = a.1.clone();
                b.1 += add;
                true
            } else {
                false
            }
        });
        let degree = t.last().map(|(k, _)| *k).unwrap_or(0);
        FormalSeries {
            block_dim: 1,
            repr: Repr::Sparse { degree, terms: t },
        }
    }

    /// The scalar monomial `c z^k`.
    pub fn monomial(k: usize, c: Complex64) -> Self {
        let mut coeffs = vec![Complex64::ZERO; k + 1];
        coeffs[k] = c;
        FormalSeries::from_scalar_coeffs(&coeffs)
    }

    /// The constant scalar series `c`.
    pub fn constant(c: Complex64) -> Self {
        FormalSeries::from_scalar_coeffs(&[c])
    }

    pub fn block_dim(&self) -> usize {
        self.block_dim
    }

    /// Highest stored degree N (trailing zero blocks count).
    pub fn degree(&self) -> usize {
        match &self.repr {
            Repr::Dense(blocks) => blocks.len() - 1,
            Repr::Sparse { degree, .. } => *degree,
        }
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.repr, Repr::Sparse { .. })
    }

    pub fn is_zero(&self) -> bool {
        self.nonzero_terms().all(|(_, b)| b.iter().all(|c| *c == Complex64::ZERO))
    }

    /// Coefficient of `z^k`, a zero block when not stored.
    pub fn coeff(&self, k: usize) -> Block {
        self.coeff_ref(k)
            .cloned()
            .unwrap_or_else(|| Block::zeros(self.block_dim, self.block_dim))
    }

    /// Borrowed coefficient of `z^k` when present.
    pub fn coeff_ref(&self, k: usize) -> Option<&Block> {
        match &self.repr {
            Repr::Dense(blocks) => blocks.get(k),
            Repr::Sparse { terms, .. } => terms
                .binary_search_by_key(&k, |(j, _)| *j)
                .ok()
                .map(|i| &terms[i].1),
        }
    }

    /// Scalar coefficient of `z^k` (block dim 1 only).
    pub fn coeff_scalar(&self, k: usize) -> Complex64 {
        debug_assert_eq!(self.block_dim, 1);
        self.coeff_ref(k).map(|b| b[(0, 0)]).unwrap_or(Complex64::ZERO)
    }

    /// Dense scalar coefficient vector `0..=N` (block dim 1 only).
    pub fn scalar_coeffs(&self) -> Result<Vec<Complex64>> {
        if self.block_dim != 1 {
            return Err(LabError::DimensionMismatch(
                "scalar coefficient vector requires block_dim 1".into(),
            ));
        }
        let mut out = vec![Complex64::ZERO; self.degree() + 1];
        for (k, b) in self.nonzero_terms() {
            out[k] = b[(0, 0)];
        }
        Ok(out)
    }

    /// Iterator over stored `(degree, block)` pairs in increasing degree.
    pub fn nonzero_terms(&self) -> Box<dyn Iterator<Item = (usize, &Block)> + '_> {
        match &self.repr {
            Repr::Dense(blocks) => Box::new(blocks.iter().enumerate()),
            Repr::Sparse { terms, .. } => Box::new(terms.iter().map(|(k, b)| (*k, b))),
        }
    }

    /// Apply a real coefficientwise multiplier `B_k -> w(k) B_k`, keeping the layout.
    pub fn map_coeffs(&self, w: impl Fn(usize) -> f64) -> Self {
        self.map_coeffs_complex(|k| Complex64::new(w(k), 0.0))
    }

    /// Apply a complex coefficientwise multiplier, keeping the layout.
    pub fn map_coeffs_complex(&self, w: impl Fn(usize) -> Complex64) -> Self {
        let repr = match &self.repr {
            Repr::Dense(blocks) => Repr::Dense(
                blocks
                    .iter()
                    .enumerate()
                    .map(|(k, b)| b.scale_complex(w(k)))
                    .collect(),
            ),
            Repr::Sparse { degree, terms } => Repr::Sparse {
                degree: *degree,
                terms: terms
                    .iter()
                    .map(|(k, b)| (*k, b.scale_complex(w(*k))))
                    .collect(),
            },
        };
        FormalSeries {
            block_dim: self.block_dim,
            repr,
        }
    }

    /// Sum of two series; the result is dense unless both operands are sparse.
    pub fn add(&self, other: &FormalSeries) -> Result<FormalSeries> {
        if self.block_dim != other.block_dim {
            return Err(LabError::DimensionMismatch(format!(
                "block dims {} vs {}",
                self.block_dim, other.block_dim
            )));
        }
        if let (Repr::Sparse { .. }, Repr::Sparse { .. }) = (&self.repr, &other.repr) {
            let mut terms: Vec<(usize, Block)> = Vec::new();
            for (k, b) in self.nonzero_terms().chain(other.nonzero_terms()) {
                terms.push((k, b.clone()));
            }
            terms.sort_by_key(|(k, _)| *k);
            terms.dedup_by(|a, b| {
                if a.0 == b.0 {
                    let add = a.1.clone();
                    b.1 += add;
                    true
                } else {
                    false
                }
            });
            let degree = self.degree().max(other.degree());
            return Ok(FormalSeries {
                block_dim: self.block_dim,
                repr: Repr::Sparse { degree, terms },
            });
        }
        let n = self.degree().max(other.degree());
        let mut blocks = vec![Block::zeros(self.block_dim, self.block_dim); n + 1];
        for (k, b) in self.nonzero_terms() {
            blocks[k] += b;
        }
        for (k, b) in other.nonzero_terms() {
            blocks[k] += b;
        }
        Ok(FormalSeries {
            block_dim: self.block_dim,
            repr: Repr::Dense(blocks),
        })
    }

    /// Scalar multiple `c f`.
    pub fn scale(&self, c: Complex64) -> FormalSeries {
        self.map_coeffs_complex(|_| c)
    }

    /// Formal derivative `sum_k k B_k z^{k-1}`.
    pub fn derivative(&self) -> FormalSeries {
        match &self.repr {
            Repr::Dense(blocks) => {
                if blocks.len() == 1 {
                    return FormalSeries::zero(self.block_dim);
                }
                let out = blocks
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(k, b)| b.scale(k as f64))
                    .collect();
                FormalSeries {
                    block_dim: self.block_dim,
                    repr: Repr::Dense(out),
                }
            }
            Repr::Sparse { terms, .. } => {
                let t: Vec<(usize, Block)> = terms
                    .iter()
                    .filter(|(k, _)| *k >= 1)
                    .map(|(k, b)| (*k - 1, b.scale(*k as f64)))
                    .collect();
                let degree = t.last().map(|(k, _)| *k).unwrap_or(0);
                FormalSeries {
                    block_dim: self.block_dim,
                    repr: Repr::Sparse { degree, terms: t },
                }
            }
        }
    }

    /// Radial dilation `f_r`: coefficient `B_k -> r^k B_k`.
    pub fn dilate(&self, r: f64) -> FormalSeries {
        self.map_coeffs(|k| r.powi(k as i32))
    }

    /// Drop trailing all-zero blocks (no norm changes).
    pub fn trim(&mut self) {
        match &mut self.repr {
            Repr::Dense(blocks) => {
                while blocks.len() > 1
                    && blocks.last().unwrap().iter().all(|c| *c == Complex64::ZERO)
                {
                    blocks.pop();
                }
            }
            Repr::Sparse { degree, terms } => {
                terms.retain(|(_, b)| b.iter().any(|c| *c != Complex64::ZERO));
                *degree = terms.last().map(|(k, _)| *k).unwrap_or(0);
            }
        }
    }

    /// Same series with dense coefficient storage.
    pub fn to_dense_repr(&self) -> FormalSeries {
        match &self.repr {
            Repr::Dense(_) => self.clone(),
            Repr::Sparse { degree, terms } => {
                let mut blocks = vec![Block::zeros(self.block_dim, self.block_dim); degree + 1];
                for (k, b) in terms {
                    blocks[*k] = b.clone();
                }
                FormalSeries {
                    block_dim: self.block_dim,
                    repr: Repr::Dense(blocks),
                }
            }
        }
    }

    /// Same series with sparse coefficient storage.
    pub fn to_sparse_repr(&self) -> FormalSeries {
        match &self.repr {
            Repr::Sparse { .. } => self.clone(),
            Repr::Dense(blocks) => {
                let terms: Vec<(usize, Block)> = blocks
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| b.iter().any(|c| *c != Complex64::ZERO))
                    .map(|(k, b)| (k, b.clone()))
                    .collect();
                FormalSeries {
                    block_dim: self.block_dim,
                    repr: Repr::Sparse {
                        degree: blocks.len() - 1,
                        terms,
                    },
                }
            }
        }
    }

    /// Block values at the angular grid `z_m = e^{2 pi i m/M}`, `m = 0..M-1`.
    ///
    /// The requested node count must satisfy `M >= 2 (N + 1)` for alias-free
    /// sampling of `|f|^p` integrands and is rounded up to the next power of
    /// two; synthesis is FFT-based for dense storage and direct for sparse.
    pub fn evaluate_on_grid(&self, m_requested: usize) -> Result<Vec<Block>> {
        let n = self.degree();
        let required = 2 * (n + 1);
        if m_requested < required {
            return Err(LabError::GridTooSmall {
                required,
                got: m_requested,
            });
        }
        let m = fft::next_pow2(m_requested);
        let d = self.block_dim;
        let mut values = vec![Block::zeros(d, d); m];
        match &self.repr {
            Repr::Dense(blocks) => {
                let mut buf = vec![Complex64::ZERO; m];
                for u in 0..d {
                    for v in 0..d {
                        buf.iter_mut().for_each(|c| *c = Complex64::ZERO);
                        for (k, b) in blocks.iter().enumerate() {
                            buf[k] = b[(u, v)];
                        }
                        fft::inverse(&mut buf);
                        for (val, c) in values.iter_mut().zip(buf.iter()) {
                            val[(u, v)] = *c;
                        }
                    }
                }
            }
            Repr::Sparse { terms, .. } => {
                let tau = 2.0 * std::f64::consts::PI / m as f64;
                for (idx, val) in values.iter_mut().enumerate() {
                    for (k, b) in terms {
                        // reduce k*idx mod m before taking the angle: keeps
                        // |z^k| = 1 to the last ulp even for large degrees
                        let phase = ((*k as u128 * idx as u128) % m as u128) as f64 * tau;
                        let z = Complex64::new(phase.cos(), phase.sin());
                        *val += b.scale_complex(z);
                    }
                }
            }
        }
        Ok(values)
    }
}

trait ScaleComplex {
    fn scale_complex(&self, c: Complex64) -> Self;
}

impl ScaleComplex for Block {
    fn scale_complex(&self, c: Complex64) -> Block {
        self.map(|x| x * c)
    }
}

/// Generalized binomial coefficient `prod_{j=1}^{n} (1 + alpha/j)`.
///
/// Accumulates in log space for long positive products to avoid overflow;
/// for `alpha <= -1` some factors may vanish or flip sign, in which case the
/// exact signed product is returned.
pub fn gen_binom(n: u64, alpha: f64) -> f64 {
    if n == 0 || alpha == 0.0 {
        return 1.0;
    }
    if alpha > -1.0 && n > 64 {
        let mut acc = 0.0;
        for j in 1..=n {
            acc += (alpha / j as f64).ln_1p();
        }
        acc.exp()
    } else {
        let mut acc = 1.0;
        for j in 1..=n {
            acc *= 1.0 + alpha / j as f64;
        }
        acc
    }
}

/// Fourier profile of the n-th dyadic kernel.
///
/// For `n >= 1` the profile is the triangle supported on
/// `[2^{n-1}, 2^{n+1}]` with peak value 1 at `2^n`; the 0-th profile is the
/// indicator of `{0, 1}`. The family sums to 1 at every `k >= 0`.
pub fn dyadic_profile(n: u32, k: i64) -> f64 {
    if k < 0 {
        return 0.0;
    }
    if n == 0 {
        return if k == 0 || k == 1 { 1.0 } else { 0.0 };
    }
    if n >= 62 {
        // degrees beyond 2^61 are not representable in this laboratory
        return 0.0;
    }
    let half = 1i64 << (n - 1);
    let mid = half << 1;
    let top = half << 2;
    if k < half || k > top {
        0.0
    } else if k <= mid {
        (k - half) as f64 / half as f64
    } else {
        (top - k) as f64 / mid as f64
    }
}

/// Identifier of a convolution kernel from the dyadic family.
///
/// `Band(n)` is the n-th kernel itself; `Widened(n)` is the sum of the
/// neighbouring bands (`n-1, n, n+1`, truncated at 0), which acts as the
/// identity on the pass-band of `Band(n)`. Widened kernels are always formed
/// from the band profiles, never tabulated separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelId {
    Band(u32),
    Widened(u32),
}

impl KernelId {
    /// Fourier profile of the kernel at frequency `k`.
    pub fn profile(&self, k: i64) -> f64 {
        match *self {
            KernelId::Band(n) => dyadic_profile(n, k),
            KernelId::Widened(0) => dyadic_profile(0, k) + dyadic_profile(1, k),
            KernelId::Widened(n) => {
                dyadic_profile(n - 1, k) + dyadic_profile(n, k) + dyadic_profile(n + 1, k)
            }
        }
    }
}

/// Coefficientwise kernel convolution: `result^(k) = K^(k) f^(k)`.
pub fn kernel_convolve(id: KernelId, f: &FormalSeries) -> FormalSeries {
    f.map_coeffs(|k| id.profile(k as i64))
}

/// Index-power map: coefficient `B_k -> (1+k)^t B_k`.
pub fn scale_by_index_power(f: &FormalSeries, t: f64) -> FormalSeries {
    f.map_coeffs(|k| (1.0 + k as f64).powf(t))
}

/// Generalized-binomial map: coefficient `B_k -> gen_binom(k, t) B_k`.
pub fn scale_by_gen_binom(f: &FormalSeries, t: f64) -> FormalSeries {
    f.map_coeffs(|k| gen_binom(k as u64, t))
}

/// Lacunary series `sum_k a_k z^{2^k}`; sparse storage once the top degree
/// is large enough to make dense storage wasteful.
pub fn lacunary_series(a: &[Complex64]) -> FormalSeries {
    assert!(!a.is_empty(), "lacunary coefficient list must be nonempty");
    let top = 1usize << (a.len() - 1);
    let terms: Vec<(usize, Complex64)> = a
        .iter()
        .enumerate()
        .map(|(k, c)| (1usize << k, *c))
        .collect();
    if top > SPARSE_DEGREE_THRESHOLD {
        let mut s = FormalSeries::from_sparse_scalar_terms(&terms);
        // keep the declared degree even if the top coefficient is zero
        if let Repr::Sparse { degree, .. } = &mut s.repr {
            *degree = top;
        }
        s
    } else {
        let mut coeffs = vec![Complex64::ZERO; top + 1];
        for (k, c) in terms {
            coeffs[k] += c;
        }
        FormalSeries::from_scalar_coeffs(&coeffs)
    }
}

/// Finitely windowed multiplier symbol `lambda: Z -> C`, zero outside the window.
#[derive(Debug, Clone)]
pub struct MultiplierSymbol {
    lo: i64,
    values: Vec<Complex64>,
}

impl MultiplierSymbol {
    pub fn new(lo: i64, values: Vec<Complex64>) -> Self {
        assert!(!values.is_empty(), "window must be nonempty");
        MultiplierSymbol { lo, values }
    }

    /// Window of the n-th dyadic kernel profile.
    pub fn from_dyadic_profile(n: u32) -> Self {
        if n == 0 {
            return MultiplierSymbol::new(0, vec![Complex64::ONE, Complex64::ONE]);
        }
        let lo = 1i64 << (n - 1);
        let hi = 1i64 << (n + 1);
        let values = (lo..=hi)
            .map(|k| Complex64::new(dyadic_profile(n, k), 0.0))
            .collect();
        MultiplierSymbol::new(lo, values)
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.lo + self.values.len() as i64 - 1)
    }

    /// Symbol value at `k` (zero outside the window).
    pub fn value(&self, k: i64) -> Complex64 {
        if k < self.lo {
            return Complex64::ZERO;
        }
        self.values
            .get((k - self.lo) as usize)
            .copied()
            .unwrap_or(Complex64::ZERO)
    }

    /// l2 norm of the symbol over Z.
    pub fn l2_norm(&self) -> f64 {
        self.values.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// l2 norm of the forward difference over all of Z, boundary steps included.
    pub fn diff_l2_norm(&self) -> f64 {
        let (lo, hi) = self.window();
        let mut acc = 0.0;
        for k in (lo - 1)..=hi {
            acc += (self.value(k + 1) - self.value(k)).norm_sqr();
        }
        acc.sqrt()
    }

    /// Sup of |lambda_k| over the window.
    pub fn sup_abs(&self) -> f64 {
        self.values.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Apply the multiplier to an analytic series: degrees outside the window
    /// are zeroed, degrees inside are scaled by the symbol value.
    pub fn apply(&self, f: &FormalSeries) -> FormalSeries {
        f.map_coeffs_complex(|k| self.value(k as i64))
    }
}

/// Verifies that the dyadic profiles sum to 1 at every `0 <= k <= k_max` and
/// reports the worst deviation.
pub fn partition_of_unity_check(k_max: usize) -> CheckReport {
    let mut worst = 0.0f64;
    for k in 0..=k_max {
        let n_hi = if k <= 1 { 1 } else { (k as u64).ilog2() + 2 };
        let total: f64 = (0..=n_hi).map(|n| dyadic_profile(n, k as i64)).sum();
        worst = worst.max((total - 1.0).abs());
    }
    CheckReport::identity("partition_of_unity", worst, 0.0, 1e-14)
        .with_param("k_max", k_max)
        .with_note("max_k |sum_n profile_n(k) - 1|")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gen_binom_base_cases() {
        assert_eq!(gen_binom(0, 2.7), 1.0);
        assert_eq!(gen_binom(5, 0.0), 1.0);
        // (1+1)(1+1/2)(1+1/3) = 4, by hand
        assert_relative_eq!(gen_binom(3, 1.0), 4.0, max_relative = 1e-12);
    }

    #[test]
    fn gen_binom_log_space_matches_direct() {
        // n > 64 takes the log-space path; compare against the plain product
        let n = 200u64;
        let alpha = 0.7;
        let mut direct = 1.0;
        for j in 1..=n {
            direct *= 1.0 + alpha / j as f64;
        }
        assert_relative_eq!(gen_binom(n, alpha), direct, max_relative = 1e-12);
    }

    #[test]
    fn gen_binom_signed_values() {
        // alpha = -2: factor at j=1 is -1, at j=2 is 0
        assert_eq!(gen_binom(2, -2.0), 0.0);
        assert!(gen_binom(1, -2.0) < 0.0);
    }

    #[test]
    fn gen_binom_recurrence() {
        for &t in &[-0.4, 0.3, 1.0, 2.3] {
            for k in 0..64u64 {
                let lhs = gen_binom(k + 1, t) - gen_binom(k, t);
                let rhs = t / (k + 1) as f64 * gen_binom(k, t);
                assert_relative_eq!(lhs, rhs, max_relative = 1e-12, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn dyadic_profile_values() {
        assert_eq!(dyadic_profile(0, 0), 1.0);
        assert_eq!(dyadic_profile(0, 1), 1.0);
        assert_eq!(dyadic_profile(0, 2), 0.0);
        // both branch formulas give 1 at k = 2^n
        assert_eq!(dyadic_profile(2, 4), 1.0);
        // ascending branch vanishes at the left endpoint
        assert_eq!(dyadic_profile(1, 1), 0.0);
        assert_eq!(dyadic_profile(3, 4), 0.0);
        assert_eq!(dyadic_profile(3, 16), 0.0);
        assert_eq!(dyadic_profile(3, 6), 0.5);
    }

    #[test]
    fn partition_of_unity_small_and_large() {
        let r = partition_of_unity_check(0);
        assert!(r.pass);
        assert_eq!(r.measured, 0.0);
        assert!(partition_of_unity_check(100).pass);
        assert!(partition_of_unity_check(1 << 15).pass);
    }

    #[test]
    fn kernel_convolve_examples() {
        let one = FormalSeries::constant(c(1.0, 0.0));
        let r = kernel_convolve(KernelId::Band(0), &one);
        assert_eq!(r.coeff_scalar(0), c(1.0, 0.0));

        let z2 = FormalSeries::monomial(2, c(1.0, 0.0));
        let r = kernel_convolve(KernelId::Band(1), &z2);
        assert_eq!(r.coeff_scalar(2), c(1.0, 0.0));

        let z = FormalSeries::monomial(1, c(1.0, 0.0));
        let r = kernel_convolve(KernelId::Band(2), &z);
        assert!(r.is_zero());
    }

    #[test]
    fn widened_kernel_is_band_sum() {
        // single nonzero part at n=3 with spectrum at 8: profile of the
        // widened kernel is Band(2)+Band(3)+Band(4), only Band(3) hits 8
        assert_eq!(KernelId::Widened(3).profile(8), 1.0);
        assert_eq!(KernelId::Widened(0).profile(1), 1.0);
        assert_eq!(KernelId::Widened(0).profile(3), 0.5);
    }

    #[test]
    fn multiplier_examples() {
        // identity symbol on [0, N]
        let f = FormalSeries::from_scalar_coeffs(&[c(1.0, 0.0), c(2.0, 0.0), c(0.5, -1.0)]);
        let lam = MultiplierSymbol::new(0, vec![Complex64::ONE; 3]);
        let g = lam.apply(&f);
        for k in 0..=2 {
            assert_eq!(g.coeff_scalar(k), f.coeff_scalar(k));
        }

        // lambda_k = k on [0,3] applied to z + z^3
        let f = FormalSeries::from_scalar_coeffs(&[
            c(0.0, 0.0),
            c(1.0, 0.0),
            c(0.0, 0.0),
            c(1.0, 0.0),
        ]);
        let lam = MultiplierSymbol::new(0, (0..4).map(|k| c(k as f64, 0.0)).collect());
        let g = lam.apply(&f);
        assert_eq!(g.coeff_scalar(1), c(1.0, 0.0));
        assert_eq!(g.coeff_scalar(3), c(3.0, 0.0));

        // disjoint window
        let f = FormalSeries::from_scalar_coeffs(&[c(1.0, 0.0), c(1.0, 0.0)]);
        let lam = MultiplierSymbol::new(2, vec![Complex64::ONE; 2]);
        assert!(lam.apply(&f).is_zero());
    }

    #[test]
    fn index_power_and_binom_maps() {
        let f = FormalSeries::monomial(3, c(1.0, 0.0));
        assert_eq!(scale_by_index_power(&f, 1.0).coeff_scalar(3), c(4.0, 0.0));
        assert_eq!(scale_by_index_power(&f, 0.0).coeff_scalar(3), c(1.0, 0.0));

        let z2 = FormalSeries::monomial(2, c(1.0, 0.0));
        assert_eq!(scale_by_gen_binom(&z2, 1.0).coeff_scalar(2), c(3.0, 0.0));

        // inverse property
        let g = scale_by_index_power(&scale_by_index_power(&f, 0.8), -0.8);
        assert_relative_eq!(g.coeff_scalar(3).re, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn evaluate_on_grid_examples() {
        let z = FormalSeries::monomial(1, c(1.0, 0.0));
        let vals = z.evaluate_on_grid(4).unwrap();
        let expect = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
        for (v, e) in vals.iter().zip(expect.iter()) {
            assert_relative_eq!(v[(0, 0)].re, e.re, epsilon = 1e-12);
            assert_relative_eq!(v[(0, 0)].im, e.im, epsilon = 1e-12);
        }

        let one = FormalSeries::constant(c(1.0, 0.0));
        let vals = one.evaluate_on_grid(8).unwrap();
        assert!(vals.iter().all(|v| (v[(0, 0)] - c(1.0, 0.0)).norm() < 1e-14));

        let f = FormalSeries::from_scalar_coeffs(&[c(1.0, 0.0), c(1.0, 0.0)]);
        let vals = f.evaluate_on_grid(4).unwrap();
        let expect = [c(2.0, 0.0), c(1.0, 1.0), c(0.0, 0.0), c(1.0, -1.0)];
        for (v, e) in vals.iter().zip(expect.iter()) {
            assert!((v[(0, 0)] - e).norm() < 1e-12);
        }
    }

    #[test]
    fn evaluate_refuses_small_grid() {
        let f = FormalSeries::from_scalar_coeffs(&[c(1.0, 0.0); 5]);
        match f.evaluate_on_grid(8) {
            Err(LabError::GridTooSmall { required, got }) => {
                assert_eq!(required, 10);
                assert_eq!(got, 8);
            }
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn lacunary_examples() {
        let s = lacunary_series(&[c(1.0, 0.0)]);
        assert_eq!(s.degree(), 1);
        assert_eq!(s.coeff_scalar(1), c(1.0, 0.0));

        let s = lacunary_series(&[c(1.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(s.coeff_scalar(1), c(1.0, 0.0));
        assert_eq!(s.coeff_scalar(2), c(1.0, 0.0));
        assert_eq!(s.degree(), 2);

        let s = lacunary_series(&[c(0.0, 0.0), c(0.0, 0.0), c(5.0, 0.0)]);
        assert_eq!(s.coeff_scalar(4), c(5.0, 0.0));
        assert_eq!(s.coeff_scalar(1), c(0.0, 0.0));
    }

    #[test]
    fn sparse_and_dense_agree() {
        let a: Vec<Complex64> = (0..9).map(|k| c(1.0 + k as f64, -(k as f64))).collect();
        let s = lacunary_series(&a); // degree 256 -> sparse
        assert!(s.is_sparse());
        let d = s.to_dense_repr();
        assert_eq!(s.degree(), d.degree());
        for k in 0..=s.degree() {
            assert_eq!(s.coeff_scalar(k), d.coeff_scalar(k));
        }
        // grid evaluation agrees between the direct and FFT paths
        let m = 2 * (s.degree() + 1);
        let vs = s.evaluate_on_grid(m).unwrap();
        let vd = d.evaluate_on_grid(m).unwrap();
        for (x, y) in vs.iter().zip(vd.iter()) {
            assert!((x[(0, 0)] - y[(0, 0)]).norm() < 1e-9 * (1.0 + y[(0, 0)].norm()));
        }
    }

    #[test]
    fn derivative_and_dilate() {
        let f = FormalSeries::from_scalar_coeffs(&[c(3.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)]);
        let fp = f.derivative();
        assert_eq!(fp.coeff_scalar(0), c(2.0, 0.0));
        assert_eq!(fp.coeff_scalar(1), c(2.0, 0.0));
        assert_eq!(fp.degree(), 1);

        let g = f.dilate(0.5);
        assert_eq!(g.coeff_scalar(2), c(0.25, 0.0));
    }
}
