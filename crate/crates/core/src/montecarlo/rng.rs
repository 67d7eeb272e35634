use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

/// Default seed (the 64-bit golden-ratio constant).
pub const DEFAULT_SEED: u64 = 0x9E37_79B9_7F4A_7C15;

/// A reproducible random stream: ChaCha20 keyed by `seed`, on the ChaCha
/// stream selected by `stream_id`.
///
/// Child streams come from [`RngStream::substream`], which keeps the seed and
/// replaces the stream id with `splitmix64(stream_id ^ splitmix64(index + φ))`
/// where φ is [`DEFAULT_SEED`]. ChaCha streams with distinct ids share no
/// keystream, so children are independent of each other and of their parent
/// as long as the mixed ids differ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RngStream {
    pub seed: u64,
    pub stream_id: u64,
}

/// Finaliser of the SplitMix64 generator; a bijection on `u64`.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

impl RngStream {
    pub const fn new(seed: u64, stream_id: u64) -> Self {
        Self { seed, stream_id }
    }

    pub fn substream(&self, index: u64) -> RngStream {
        let mixed = splitmix64(self.stream_id ^ splitmix64(index.wrapping_add(DEFAULT_SEED)));
        RngStream { seed: self.seed, stream_id: mixed }
    }

    pub fn generator(&self) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        rng
    }
}

impl Default for RngStream {
    fn default() -> Self {
        Self::new(DEFAULT_SEED, 0)
    }
}
