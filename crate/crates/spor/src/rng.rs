//! Deterministic, splittable randomness.
//!
//! Every randomized build in this crate consumes a [`Rng`] seeded from a
//! caller-supplied 64-bit seed. Substreams are derived by hashing
//! `(seed, label, index)` with a fixed mixing function, so the stream a given
//! oracle build sees depends only on its own label, never on how many draws
//! other builds made first.

use rand::Rng as _;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// splitmix64 finalizer; stable across platforms and releases.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn derive(seed: u64, label: &str, index: u64) -> u64 {
    let mut h = mix(seed);
    for &b in label.as_bytes() {
        h = mix(h ^ u64::from(b));
    }
    mix(h ^ index)
}

/// A seeded pseudo-random stream.
#[derive(Debug, Clone)]
pub struct Rng {
    seed: u64,
    inner: ChaCha8Rng,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// The seed this stream was derived from.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Derive an independent substream identified by `label`.
    ///
    /// Derivation depends only on `(seed, label)`, not on how much of this
    /// stream has been consumed.
    pub fn substream(&self, label: &str) -> Rng {
        Rng::new(derive(self.seed, label, 0))
    }

    /// Derive an independent substream identified by `(label, index)`.
    pub fn substream_indexed(&self, label: &str, index: u64) -> Rng {
        Rng::new(derive(self.seed, label, index.wrapping_add(1)))
    }

    /// Uniform integer in `[0, bound)`. `bound` must be positive.
    pub fn index(&mut self, bound: usize) -> usize {
        debug_assert!(bound > 0);
        self.inner.random_range(0..bound)
    }

    /// Bernoulli draw; `p` is clamped to `[0, 1]`.
    pub fn chance(&mut self, p: f64) -> bool {
        self.inner.random_bool(p.clamp(0.0, 1.0))
    }

    /// Uniform `f64` in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    /// Uniform `u64` in `[0, bound)`. `bound` must be positive.
    pub fn index_u64(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        self.inner.random_range(0..bound)
    }

    /// Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.index(i + 1);
            items.swap(i, j);
        }
    }
}

/// `⌈log2 n⌉` for `n ≥ 1`; 0 for `n ≤ 1`. This is the `log n` used by every
/// failure-run threshold and sampling budget in the crate.
pub fn ceil_log2(n: usize) -> u32 {
    if n <= 1 {
        0
    } else {
        usize::BITS - (n - 1).leading_zeros()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_seed_identical_stream() {
        let mut a = Rng::new(42);
        let mut b = Rng::new(42);
        for _ in 0..100 {
            assert_eq!(a.index(1_000_000), b.index(1_000_000));
        }
    }

    #[test]
    fn substreams_ignore_parent_consumption() {
        let mut a = Rng::new(7);
        let b = Rng::new(7);
        for _ in 0..10 {
            a.index(100);
        }
        let mut sa = a.substream("x");
        let mut sb = b.substream("x");
        for _ in 0..20 {
            assert_eq!(sa.index(1 << 20), sb.index(1 << 20));
        }
    }

    #[test]
    fn distinct_labels_distinct_streams() {
        let root = Rng::new(7);
        let mut a = root.substream("alpha");
        let mut b = root.substream("beta");
        let va: Vec<usize> = (0..32).map(|_| a.index(1 << 30)).collect();
        let vb: Vec<usize> = (0..32).map(|_| b.index(1 << 30)).collect();
        assert_ne!(va, vb);
        let mut i0 = root.substream_indexed("alpha", 0);
        let mut i1 = root.substream_indexed("alpha", 1);
        assert_ne!(
            (0..32).map(|_| i0.index(1 << 30)).collect::<Vec<_>>(),
            (0..32).map(|_| i1.index(1 << 30)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn ceil_log2_values() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(3), 2);
        assert_eq!(ceil_log2(4), 2);
        assert_eq!(ceil_log2(5), 3);
        assert_eq!(ceil_log2(1024), 10);
        assert_eq!(ceil_log2(1025), 11);
    }
}
