//! Compensated (Kahan) summation for long series with heavy cancellation.

use std::ops::AddAssign;

/// Running compensated sum. The worst series handled here have 10^7 terms
/// spanning many orders of magnitude, where naive accumulation loses the
/// small tail terms entirely.
#[derive(Debug, Default, Clone, Copy)]
pub struct KahanSum {
    sum: f64,
    err: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

impl AddAssign<f64> for KahanSum {
    fn add_assign(&mut self, rhs: f64) {
        let y = rhs - self.err;
        let t = self.sum + y;
        self.err = (t - self.sum) - y;
        self.sum = t;
    }
}

impl From<KahanSum> for f64 {
    fn from(k: KahanSum) -> f64 {
        k.sum
    }
}

/// Compensated sum of an iterator of terms.
pub fn kahan_sum(terms: impl IntoIterator<Item = f64>) -> f64 {
    let mut acc = KahanSum::new();
    for t in terms {
        acc += t;
    }
    acc.value()
}
