use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Raised when a source cannot supply the next draw. Seeded sources never
/// raise it; the enumerating source raises it when a path runs past its
/// budget or enters mass it cannot resolve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("random source exhausted")]
pub struct Exhausted;

/// A stream of independent fair bits; the only randomness in the crate.
///
/// `uniform_below` and `ratio` are derived from `next_bit` and are exact.
/// A source may override them only with a procedure of the same law; the
/// enumerating source does so to branch on them directly.
pub trait BitSource {
    fn next_bit(&mut self) -> Result<bool, Exhausted>;

    /// Uniform on `0..b`. `b = 1` consumes nothing.
    fn uniform_below(&mut self, b: u64) -> Result<u64, Exhausted> {
        fast_dice_roller(self, b)
    }

    /// `true` with probability `num/den`.
    fn ratio(&mut self, num: u64, den: u64) -> Result<bool, Exhausted> {
        assert!(den >= 1 && num <= den, "ratio {num}/{den} out of range");
        if num == 0 {
            return Ok(false);
        }
        if num == den {
            return Ok(true);
        }
        Ok(self.uniform_below(den)? < num)
    }
}

impl<S: BitSource + ?Sized> BitSource for &mut S {
    fn next_bit(&mut self) -> Result<bool, Exhausted> {
        (**self).next_bit()
    }

    fn uniform_below(&mut self, b: u64) -> Result<u64, Exhausted> {
        (**self).uniform_below(b)
    }

    fn ratio(&mut self, num: u64, den: u64) -> Result<bool, Exhausted> {
        (**self).ratio(num, den)
    }
}

/// Exact uniform integer from fair bits by rejection over power-of-two
/// ranges, keeping the rejected remainder as fresh randomness (Lumbroso's
/// fast dice roller). After `k` bits the unresolved mass is below `b/2^k`.
pub fn fast_dice_roller<S: BitSource + ?Sized>(src: &mut S, b: u64) -> Result<u64, Exhausted> {
    assert!(b >= 1, "uniform_below(0)");
    assert!(b <= 1 << 63, "uniform_below bound too large");
    if b == 1 {
        return Ok(0);
    }
    let (mut v, mut c) = (1u64, 0u64);
    loop {
        v <<= 1;
        c = (c << 1) | u64::from(src.next_bit()?);
        if v >= b {
            if c < b {
                return Ok(c);
            }
            v -= b;
            c -= b;
        }
    }
}

/// Seeded pseudorandom bits from ChaCha8, 64 at a time.
#[derive(Debug, Clone)]
pub struct SeededBits {
    rng: ChaCha8Rng,
    buffer: u64,
    left: u32,
    drawn: u64,
}

impl SeededBits {
    pub fn new(seed: u64) -> Self {
        SeededBits {
            rng: ChaCha8Rng::seed_from_u64(seed),
            buffer: 0,
            left: 0,
            drawn: 0,
        }
    }

    /// An independent stream for sub-run `index` of a run seeded with `seed`.
    pub fn derived(seed: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        SeededBits {
            rng,
            buffer: 0,
            left: 0,
            drawn: 0,
        }
    }

    /// Fair bits consumed so far.
    pub fn bits_drawn(&self) -> u64 {
        self.drawn
    }
}

impl BitSource for SeededBits {
    #[inline]
    fn next_bit(&mut self) -> Result<bool, Exhausted> {
        if self.left == 0 {
            self.buffer = self.rng.next_u64();
            self.left = 64;
        }
        let bit = self.buffer & 1 == 1;
        self.buffer >>= 1;
        self.left -= 1;
        self.drawn += 1;
        Ok(bit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Replays a fixed bit string, then runs dry.
    struct Script(Vec<bool>);

    impl BitSource for Script {
        fn next_bit(&mut self) -> Result<bool, Exhausted> {
            if self.0.is_empty() {
                Err(Exhausted)
            } else {
                Ok(self.0.remove(0))
            }
        }
    }

    #[test]
    fn singleton_range_uses_no_bits() {
        let mut s = Script(vec![]);
        assert_eq!(s.uniform_below(1), Ok(0));
    }

    #[test]
    fn dyadic_range_reads_bits_msb_first() {
        let mut s = Script(vec![true, false]);
        assert_eq!(s.uniform_below(4), Ok(2));
        assert_eq!(s.uniform_below(4), Err(Exhausted));
    }

    #[test]
    fn three_rejects_then_recycles() {
        // 11 -> c=3 >= 3, leftover range 1, c=0; next bit 1 -> v=2, c=1;
        // v < 3 so one more bit 0 -> v=4, c=2 < 3.
        let mut s = Script(vec![true, true, true, false]);
        assert_eq!(s.uniform_below(3), Ok(2));
    }

    #[test]
    fn seeded_streams_are_reproducible() {
        let mut a = SeededBits::new(11);
        let mut b = SeededBits::new(11);
        let xs: Vec<u64> = (0..100).map(|_| a.uniform_below(1000).unwrap()).collect();
        let ys: Vec<u64> = (0..100).map(|_| b.uniform_below(1000).unwrap()).collect();
        assert_eq!(xs, ys);
        assert_eq!(a.bits_drawn(), b.bits_drawn());
        let mut c = SeededBits::derived(11, 1);
        let zs: Vec<u64> = (0..100).map(|_| c.uniform_below(1000).unwrap()).collect();
        assert_ne!(xs, zs);
    }

    #[test]
    fn ratio_edges() {
        let mut s = Script(vec![]);
        assert_eq!(s.ratio(0, 5), Ok(false));
        assert_eq!(s.ratio(5, 5), Ok(true));
    }
}
