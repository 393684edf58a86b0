//! Shared test helpers: a tiny deterministic PRNG and sampling utilities.
#![allow(dead_code)] // each test binary uses its own subset

use minsurf_core::geometry::MoebiusParams;
use minsurf_core::Complex64;

/// xorshift64* - deterministic, dependency-free randomness for tests.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    /// Uniform in [0, 1).
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    pub fn complex_in(&mut self, lo: f64, hi: f64) -> Complex64 {
        Complex64::new(self.range(lo, hi), self.range(lo, hi))
    }

    /// A random unit-normalized gauge parameter pair.
    pub fn moebius(&mut self) -> MoebiusParams {
        loop {
            let a = self.complex_in(-1.0, 1.0);
            let b = self.complex_in(-1.0, 1.0);
            if a.norm_sqr() + b.norm_sqr() > 1e-2 {
                return MoebiusParams::renormalized(a, b).unwrap();
            }
        }
    }
}
