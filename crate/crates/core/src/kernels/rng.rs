//! Seeded, splittable random streams.
//!
//! Every stream is a ChaCha8 generator keyed by a 64-bit seed and positioned on
//! one of its 2^64 independent streams. The stream id packs a domain tag, an
//! iteration index and an individual index, so the draws consumed by
//! individual `i` at iteration `t` of a run never depend on how many draws any
//! other (iteration, individual) pair made. Each ChaCha stream holds 2^68
//! bytes of output, far beyond any run budget.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Maximum number of individuals addressable by a stream id.
pub const MAX_INDIVIDUALS: u64 = 1 << 24;
/// Maximum iteration index addressable by a stream id.
pub const MAX_ITERATIONS: u64 = 1 << 32;

/// What a stream is used for. Occupies the top byte of the stream id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum StreamDomain {
    Root = 0,
    Init = 1,
    Step = 2,
    Noise = 3,
    RandomSearch = 4,
    Walk = 5,
}

#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    /// Root stream for `seed`.
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        Self { seed, stream, inner }
    }

    /// Stream reserved for `(domain, iteration, individual)` under `seed`.
    pub fn for_slot(seed: u64, domain: StreamDomain, iteration: u64, individual: u64) -> Self {
        Self::with_stream(seed, slot_id(domain, iteration, individual))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Uniform draw in `[0, 1)` with 53 bits of precision.
    pub fn uniform(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    pub fn uniform_vec(&mut self, d: usize) -> Vec<f64> {
        (0..d).map(|_| self.uniform()).collect()
    }

    pub fn standard_normal(&mut self) -> f64 {
        self.inner.sample(StandardNormal)
    }

    /// Uniform index in `0..n`. `n` must be non-zero.
    pub fn index(&mut self, n: usize) -> usize {
        self.inner.random_range(0..n)
    }

    /// `true` with probability `p`.
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform() < p
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}

fn slot_id(domain: StreamDomain, iteration: u64, individual: u64) -> u64 {
    debug_assert!(iteration < MAX_ITERATIONS, "iteration {iteration} out of stream range");
    debug_assert!(
        individual < MAX_INDIVIDUALS,
        "individual {individual} out of stream range"
    );
    ((domain as u64) << 56) | ((iteration & (MAX_ITERATIONS - 1)) << 24) | (individual & (MAX_INDIVIDUALS - 1))
}
