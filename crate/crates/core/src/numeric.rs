//! Order-independent summation.
//!
//! Curvature values must not depend on vertex labels, but floating-point
//! addition is not associative. Summing in a canonical order (or in exact
//! fixed point) makes results bit-identical under relabeling.

/// Sum after sorting the terms by IEEE total order.
pub fn sorted_sum<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let mut v: Vec<f64> = terms.into_iter().collect();
    v.sort_by(f64::total_cmp);
    v.into_iter().sum()
}

/// Exact accumulator on a 2^-64 fixed-point grid. Each term is quantized on
/// its own, after which addition is exact and therefore order-free.
/// Terms must stay below 2^62 in magnitude.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FixedSum(i128);

const SCALE: f64 = 18_446_744_073_709_551_616.0; // 2^64

impl FixedSum {
    pub fn new() -> Self {
        FixedSum(0)
    }

    pub fn add(&mut self, x: f64) {
        debug_assert!(x.is_finite() && x.abs() < 4.6e18);
        self.0 += (x * SCALE) as i128;
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / SCALE
    }
}
