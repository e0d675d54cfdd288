//! Counter-based random streams for reproducible parallel simulation.
//!
//! Every random quantity is addressed by a key derived from (seed, stream
//! labels...) plus an element index, so any worker can evaluate any element
//! of any stream without shared state. Results are therefore independent of
//! scheduling and worker count.

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

/// splitmix64 finalizer; bijective mixer with good avalanche.
#[inline]
pub fn mix64(seed: u64) -> u64 {
    let mut z = seed.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A keyed counter stream: element `i` is `mix64` of the key advanced `i`
/// golden-ratio increments, i.e. random access into a splitmix64 sequence.
#[derive(Debug, Clone, Copy)]
pub struct CounterStream {
    key: u64,
}

impl CounterStream {
    /// Derives a stream key by folding the label parts into the seed.
    pub fn new(seed: u64, labels: &[u64]) -> Self {
        let mut key = mix64(seed);
        for &label in labels {
            key = mix64(key ^ label);
        }
        Self { key }
    }

    #[inline]
    pub fn u64_at(&self, index: u64) -> u64 {
        mix64(self.key.wrapping_add(index.wrapping_mul(GOLDEN)))
    }

    /// Uniform in [0, 1), 53-bit resolution.
    #[inline]
    pub fn unit_at(&self, index: u64) -> f64 {
        (self.u64_at(index) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in the open interval (0, 1); never returns an endpoint.
    #[inline]
    pub fn open_unit_at(&self, index: u64) -> f64 {
        ((self.u64_at(index) >> 12) as f64 + 0.5) * (1.0 / (1u64 << 52) as f64)
    }

    /// Fair coin.
    #[inline]
    pub fn coin_at(&self, index: u64) -> bool {
        self.u64_at(index) & 1 == 1
    }
}
