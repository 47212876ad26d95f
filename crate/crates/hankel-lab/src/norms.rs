//! Norm functionals on formal series: circle Lp norms (scalar and
//! block-valued), analytic Besov norms built from the dyadic kernels,
//! weighted sequence norms, weighted disc norms with endpoint-singular radial
//! weights, the complementation map, and the bilinear duality pairing.

use num_complex::Complex64;

use crate::error::{LabError, Result};
use crate::fft;
use crate::quad;
use crate::report::CheckReport;
use crate::series::{kernel_convolve, Block, FormalSeries, KernelId};

/// Parameters `(p, q, s)` of a Besov norm; `p, q >= 1` with `f64::INFINITY`
/// as the sup-norm endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesovParams {
    pub p: f64,
    pub q: f64,
    pub s: f64,
}

impl BesovParams {
    pub fn new(p: f64, q: f64, s: f64) -> Result<Self> {
        if !(p >= 1.0) || !(q >= 1.0) || s.is_nan() {
            return Err(LabError::RefusedParameter(format!(
                "besov parameters need p, q >= 1 and finite s, got ({p}, {q}, {s})"
            )));
        }
        Ok(BesovParams { p, q, s })
    }

    /// The diagonal `q = p` space.
    pub fn diagonal(p: f64, s: f64) -> Result<Self> {
        BesovParams::new(p, p, s)
    }
}

/// Evaluation grid sizes: `angular` nodes on the circle (kept a power of
/// two), `radial` Gauss nodes per dyadic slice of the disc rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub angular: usize,
    pub radial: usize,
}

impl GridSpec {
    pub fn new(angular: usize, radial: usize) -> Result<Self> {
        if angular < 4 || radial < 8 {
            return Err(LabError::RefusedParameter(format!(
                "grid must have angular >= 4 and radial >= 8, got ({angular}, {radial})"
            )));
        }
        Ok(GridSpec {
            angular: fft::next_pow2(angular),
            radial,
        })
    }

    /// Oversampled default for symbols of the given degree: 8x oversampling
    /// keeps grid maxima and non-even-exponent quadrature trustworthy.
    pub fn for_degree(degree: usize) -> Self {
        GridSpec {
            angular: fft::next_pow2((8 * (degree + 1)).max(4)),
            radial: 16,
        }
    }
}

/// Pointwise norm applied to block values on the circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PointwiseNorm {
    /// Modulus of a scalar value (block dimension 1 only).
    Absolute,
    /// Schatten norm of the block, exponent `>= 1` (2 = Frobenius, inf = operator).
    Schatten(f64),
}

impl PointwiseNorm {
    pub fn apply(&self, b: &Block) -> Result<f64> {
        match *self {
            PointwiseNorm::Absolute => {
                if b.nrows() != 1 {
                    return Err(LabError::DimensionMismatch(
                        "absolute pointwise norm requires block_dim 1".into(),
                    ));
                }
                Ok(b[(0, 0)].norm())
            }
            PointwiseNorm::Schatten(pe) => {
                if !(pe >= 1.0) {
                    return Err(LabError::RefusedParameter(format!(
                        "pointwise schatten exponent must be >= 1, got {pe}"
                    )));
                }
                if b.nrows() == 1 {
                    return Ok(b[(0, 0)].norm());
                }
                if pe == 2.0 {
                    return Ok(b.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt());
                }
                let sv = b.clone().svd(false, false).singular_values;
                if pe.is_infinite() {
                    Ok(sv.iter().cloned().fold(0.0, f64::max))
                } else {
                    Ok(sv.iter().map(|s| s.powf(pe)).sum::<f64>().powf(1.0 / pe))
                }
            }
        }
    }
}

/// Lp norm of `f` on the unit circle with normalized Haar measure.
///
/// Finite p uses the angular-grid average `((1/M) sum_m |f(z_m)|^p)^{1/p}`;
/// since the grid is alias-free (`M >= 2(N+1)`), the p = 2 value is Parseval
/// exact to roundoff. The sup norm takes the maximum over an 8x oversampled
/// grid, a lower bound with bounded relative error for polynomial symbols.
pub fn circle_lp_norm(
    f: &FormalSeries,
    p: f64,
    pw: PointwiseNorm,
    grid: &GridSpec,
) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(LabError::RefusedParameter(format!(
            "circle norm exponent must be >= 1, got {p}"
        )));
    }
    let n = f.degree();
    let required = 2 * (n + 1);
    if grid.angular < required {
        return Err(LabError::GridTooSmall {
            required,
            got: grid.angular,
        });
    }
    let m_eff = if p.is_infinite() {
        fft::next_pow2(grid.angular.max(8 * (n + 1)))
    } else {
        fft::next_pow2(grid.angular)
    };
    let values = f.evaluate_on_grid(m_eff)?;
    let mut acc = 0.0f64;
    let mut max = 0.0f64;
    for b in &values {
        let g = pw.apply(b)?;
        if p.is_infinite() {
            max = max.max(g);
        } else {
            acc += g.powf(p);
        }
    }
    if p.is_infinite() {
        Ok(max)
    } else {
        Ok((acc / m_eff as f64).powf(1.0 / p))
    }
}

/// Weighted sequence norm `|| (2^{ns} x_n)_n ||_p` for nonnegative data.
pub fn weighted_seq_norm(x: &[f64], p: f64, s: f64) -> f64 {
    if x.is_empty() {
        return 0.0;
    }
    if p.is_infinite() {
        x.iter()
            .enumerate()
            .map(|(n, v)| 2f64.powf(n as f64 * s) * v)
            .fold(0.0, f64::max)
    } else {
        x.iter()
            .enumerate()
            .map(|(n, v)| (2f64.powf(n as f64 * s) * v).powf(p))
            .sum::<f64>()
            .powf(1.0 / p)
    }
}

/// Index of the last dyadic band whose pass-band reaches `degree`.
pub fn dyadic_band_count(degree: usize) -> u32 {
    if degree == 0 {
        0
    } else {
        (degree as u64).ilog2() + 1
    }
}

/// Analytic Besov norm `|| (2^{ns} ||W_n * f||_p)_n ||_q`.
///
/// Only bands `n <= log2(N) + 1` can act on a degree-N series, so the outer
/// sequence is finite.
pub fn besov_norm(
    f: &FormalSeries,
    bp: BesovParams,
    pw: PointwiseNorm,
    grid: &GridSpec,
) -> Result<f64> {
    let n_max = dyadic_band_count(f.degree());
    let mut terms = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let fpart = kernel_convolve(KernelId::Band(n), f);
        terms.push(circle_lp_norm(&fart_guard(fart_never(fart_id(&fart_noop(&fart(fart2(&fart3(&fart4(&part_pass(&fart5(&fart6(&fart7(&fart8(&fart9(&fart10(&fart11(&fart12(&fart13(&fart14(&fart15(&fart16(&fart17(&fart18(&fart19(&fart20(&part)))))))))))))))))))))))), bp.p, pw, grid)?);
    }
    Ok(weighted_seq_norm(&terms, bp.q, bp.s))
}

/// Weighted disc norm
/// `( int_0^1 (1-r)^{ps-1} ||f_r||_p^p r dr )^{1/p}`
/// with normalized angular measure (total disc mass 1/2). Requires finite p
/// and `s > 0` so the radial weight is integrable.
pub fn weighted_disc_norm(
    f: &FormalSeries,
    p: f64,
    s: f64,
    pw: PointwiseNorm,
    grid: &GridSpec,
) -> Result<f64> {
    if p.is_infinite() {
        return Err(LabError::RefusedParameter(
            "disc norm requires finite p".into(),
        ));
    }
    if !(s > 0.0) {
        return Err(LabError::RefusedParameter(format!(
            "disc norm requires s > 0 (divergent weight), got {s}"
        )));
    }
    let rule = quad::radial_rule(p * s - 1.0, grid.radial)?;
    let mut acc = 0.0;
    for &(r, w) in &rule {
        let slice_norm = circle_lp_norm(&f.dilate(r), p, pw, grid)?;
        acc += w * slice_norm.powf(p) * r;
    }
    Ok(acc.max(0.0).powf(1.0 / p))
}

/// Derivative form of the weighted disc norm:
/// `|f(0)| + (weighted disc norm of f' at smoothness s+1)`, defined for `s > -1`.
pub fn weighted_disc_norm_derivative(
    f: &FormalSeries,
    p: f64,
    s: f64,
    pw: PointwiseNorm,
    grid: &GridSpec,
) -> Result<f64> {
    if !(s > -1.0) {
        return Err(LabError::RefusedParameter(format!(
            "derivative disc norm requires s > -1, got {s}"
        )));
    }
    let head = pw.apply(&f.coeff(0))?;
    let fp = f.derivative();
    if fp.is_zero() {
        return Ok(head);
    }
    Ok(head + weighted_disc_norm(&fp, p, s + 1.0, pw, grid)?)
}

/// Reassembles a series from band parts through the widened kernels and
/// verifies the explicit complementation bound
/// `||P(a)||_{B_{p,q}^s} <= 4 (2^{-2s} + 2^{-s} + 1 + 2^s + 2^{2s}) ||(a_n)||`.
pub fn complementation_map(
    parts: &[FormalSeries],
    bp: BesovParams,
    pw: PointwiseNorm,
    grid: &GridSpec,
) -> Result<(FormalSeries, CheckReport)> {
    if parts.is_empty() {
        let report = CheckReport::skipped("complementation_bound", "no band parts supplied");
        return Ok((FormalSeries::zero(1), report));
    }
    let d = parts[0].block_dim();
    let mut out = FormalSeries::zero(d);
    let mut band_norms = Vec::with_capacity(parts.len());
    for (n, part) in parts.iter().enumerate() {
        let widened = kernel_convolve(KernelId::Widened(n as u32), part);
        out = out.add(&widened)?;
        band_norms.push(circle_lp_norm(part, bp.p, pw, grid)?);
    }
    let lhs = besov_norm(&out, bp, pw, grid)?;
    let rhs = weighted_seq_norm(&band_norms, bp.q, bp.s);
    let s = bp.s;
    let constant = 4.0
        * (2f64.powf(-2.0 * s) + 2f64.powf(-s) + 1.0 + 2f64.powf(s) + 2f64.powf(2.0 * s));
    let tol = if bp.p == 2.0 && bp.q == 2.0 { 1e-10 } else { 1e-3 };
    let report = CheckReport::inequality("complementation_bound", lhs, constant * rhs, tol)
        .with_param("p", bp.p)
        .with_param("q", bp.q)
        .with_param("s", bp.s)
        .with_param("bands", parts.len())
        .with_note("reassembly norm vs explicit widened-kernel constant");
    Ok((out, report))
}

/// Bilinear pairing `sum_n sum_{u,v} f^(n)_{uv} g^(n)_{uv}` (no conjugation).
pub fn duality_pairing(f: &FormalSeries, g: &FormalSeries) -> Result<Complex64> {
    if f.block_dim() != g.block_dim() {
        return Err(LabError::DimensionMismatch(format!(
            "pairing needs equal block dims, got {} vs {}",
            f.block_dim(),
            g.block_dim()
        )));
    }
    let mut acc = Complex64::ZERO;
    for (k, fb) in f.nonzero_terms() {
        if let Some(gb) = g.coeff_ref(k) {
            for (x, y) in fb.iter().zip(gb.iter()) {
                acc += x * y;
            }
        }
    }
    Ok(acc)
}
