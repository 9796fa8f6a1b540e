//! Classical input streams with a read cursor.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// A user's classical input bit stream.
///
/// Either a finite, explicit bit vector (tests, worked examples) or an
/// endless seeded i.i.d. uniform stream (simulation runs). The stream form
/// never exhausts, and its contents depend only on the seed and stream id,
/// not on how far the run reads.
#[derive(Clone, Debug)]
pub struct BitBuffer {
    source: Source,
    position: u64,
}

#[derive(Clone, Debug)]
enum Source {
    Fixed(Vec<bool>),
    Stream {
        rng: ChaCha12Rng,
        word: u64,
        bits_left: u8,
    },
}

impl BitBuffer {
    /// A finite buffer with known contents.
    pub fn from_bits(bits: impl Into<Vec<bool>>) -> Self {
        BitBuffer {
            source: Source::Fixed(bits.into()),
            position: 0,
        }
    }

    /// Parse a string of '0'/'1' characters; other characters are ignored.
    pub fn from_str_bits(s: &str) -> Self {
        Self::from_bits(
            s.chars()
                .filter_map(|c| match c {
                    '0' => Some(false),
                    '1' => Some(true),
                    _ => None,
                })
                .collect::<Vec<_>>(),
        )
    }

    /// An endless uniform stream; `stream` separates independent streams
    /// derived from the same master seed.
    pub fn seeded(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        BitBuffer {
            source: Source::Stream {
                rng,
                word: 0,
                bits_left: 0,
            },
            position: 0,
        }
    }

    /// Read the next bit, advancing the cursor. `None` once a fixed buffer is
    /// exhausted; a seeded stream never ends.
    pub fn next_bit(&mut self) -> Option<bool> {
        let bit = match &mut self.source {
            Source::Fixed(bits) => *bits.get(self.position as usize)?,
            Source::Stream {
                rng,
                word,
                bits_left,
            } => {
                if *bits_left == 0 {
                    *word = rng.next_u64();
                    *bits_left = 64;
                }
                let bit = *word & 1 == 1;
                *word >>= 1;
                *bits_left -= 1;
                bit
            }
        };
        self.position += 1;
        Some(bit)
    }

    /// Number of bits read so far.
    pub fn position(&self) -> u64 {
        self.position
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_buffer_reads_in_order_then_ends() {
        let mut buf = BitBuffer::from_str_bits("0101 1");
        let mut read = Vec::new();
        while let Some(bit) = buf.next_bit() {
            read.push(bit);
        }
        assert_eq!(read, vec![false, true, false, true, true]);
        assert_eq!(buf.position(), 5);
        assert_eq!(buf.next_bit(), None);
    }

    #[test]
    fn seeded_stream_is_reproducible_and_stream_separated() {
        let take = |seed, stream| {
            let mut buf = BitBuffer::seeded(seed, stream);
            (0..256)
                .map(|_| buf.next_bit().unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(take(42, 0), take(42, 0));
        assert_ne!(take(42, 0), take(42, 1));
        assert_ne!(take(42, 0), take(43, 0));
    }

    #[test]
    fn seeded_stream_is_roughly_balanced() {
        let mut buf = BitBuffer::seeded(7, 0);
        let ones = (0..100_000).filter(|_| buf.next_bit().unwrap()).count();
        // 4-sigma band for Binomial(1e5, 1/2).
        assert!((ones as f64 - 50_000.0).abs() < 4.0 * (100_000.0f64 * 0.25).sqrt());
    }
}
