//! Thin wrapper around rustfft with per-thread plan caching.

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

thread_local! {
    static PLANS: RefCell<(FftPlanner<f64>, HashMap<(usize, bool), Arc<dyn Fft<f64>>>)> =
        RefCell::new((FftPlanner::new(), HashMap::new()));
}

fn run(buf: &mut [Complex64], direction: FftDirection) {
    let len = buf.len();
    if len <= 1 {
        return;
    }
    PLANS.with(|cell| {
        let (planner, cache) = &mut *cell.borrow_mut();
        let key = (len, direction == FftDirection::Forward);
        let plan = cache
            .entry(key)
            .or_insert_with(|| planner.plan_fft(len, direction))
            .clone();
        plan.process(buf);
    });
}

/// In-place unnormalized forward DFT: `out[m] = sum_k buf[k] e^{-2 pi i km/len}`.
pub(crate) fn forward(buf: &mut [Complex64]) {
    run(buf, FftDirection::Forward);
}

/// In-place unnormalized inverse DFT: `out[m] = sum_k buf[k] e^{+2 pi i km/len}`.
///
/// This is exactly the synthesis of a polynomial from its coefficients on the
/// grid `z_m = e^{2 pi i m/len}`, so no scaling is applied.
pub(crate) fn inverse(buf: &mut [Complex64]) {
    run(buf, FftDirection::Inverse);
}

/// Smallest power of two >= n (n >= 1).
pub(crate) fn next_pow2(n: usize) -> usize {
    n.next_power_of_two()
}
