//! Seeded deterministic randomness.
//!
//! Every random decision in the pipeline flows through [`DetRng`], a
//! hand-rolled xoshiro256** generator seeded via splitmix64. The generator is
//! implemented here rather than pulled from a crate so the exact stream is
//! part of this crate's contract: identical seeds produce identical images on
//! every platform and every future build, independent of third-party version
//! bumps.
//!
//! Parallel work never shares a generator; child tasks get fresh seeds from
//! [`derive_seed`], which mixes a master seed with an ordered list of tags
//! (strings and integers) through splitmix64.

use crate::{Error, Result};

/// One step of the splitmix64 sequence; advances `state` and returns the next
/// output. Standard constants from the reference implementation.
pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A tag in a seed-derivation path: either a name or an index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeedTag {
    Str(String),
    Int(u64),
}

impl From<&str> for SeedTag {
    fn from(s: &str) -> SeedTag {
        SeedTag::Str(s.to_owned())
    }
}

impl From<&String> for SeedTag {
    fn from(s: &String) -> SeedTag {
        SeedTag::Str(s.clone())
    }
}

impl From<String> for SeedTag {
    fn from(s: String) -> SeedTag {
        SeedTag::Str(s)
    }
}

impl From<u64> for SeedTag {
    fn from(v: u64) -> SeedTag {
        SeedTag::Int(v)
    }
}

impl From<u32> for SeedTag {
    fn from(v: u32) -> SeedTag {
        SeedTag::Int(v as u64)
    }
}

impl From<usize> for SeedTag {
    fn from(v: usize) -> SeedTag {
        SeedTag::Int(v as u64)
    }
}

/// Derives a child seed from a master seed and an ordered tag list.
///
/// The tags are serialized canonically (kind byte, little-endian length for
/// strings, little-endian payload) and folded 8 bytes at a time through
/// splitmix64. Distinct tag lists therefore yield distinct seeds with
/// overwhelming probability, and `derive_seed(m, [])` is exactly the first
/// splitmix64 output for state `m`.
pub fn derive_seed(master: u64, tags: &[SeedTag]) -> u64 {
    let mut bytes: Vec<u8> = Vec::new();
    for tag in tags {
        match tag {
            SeedTag::Str(s) => {
                bytes.push(0);
                bytes.extend_from_slice(&(s.len() as u32).to_le_bytes());
                bytes.extend_from_slice(s.as_bytes());
            }
            SeedTag::Int(v) => {
                bytes.push(1);
                bytes.extend_from_slice(&v.to_le_bytes());
            }
        }
    }
    let mut state = master;
    let mut out = splitmix64(&mut state);
    for chunk in bytes.chunks(8) {
        let mut c = [0u8; 8];
        c[..chunk.len()].copy_from_slice(chunk);
        state ^= u64::from_le_bytes(c);
        out = splitmix64(&mut state);
    }
    out
}

/// Deterministic random-number generator: xoshiro256** with splitmix64
/// seeding and a cached Box–Muller spare for Gaussian draws.
///
/// Instances are single-owner: never share one across concurrent tasks; use
/// [`derive_seed`] to give each task its own stream.
#[derive(Debug, Clone)]
pub struct DetRng {
    s: [u64; 4],
    gauss_spare: Option<f64>,
}

impl DetRng {
    pub fn new(seed: u64) -> DetRng {
        let mut sm = seed;
        let s = [
            splitmix64(&mut sm),
            splitmix64(&mut sm),
            splitmix64(&mut sm),
            splitmix64(&mut sm),
        ];
        DetRng {
            s,
            gauss_spare: None,
        }
    }

    /// Next raw 64-bit output (xoshiro256**).
    pub fn next_u64(&mut self) -> u64 {
        let result = self.s[1]
            .wrapping_mul(5)
            .rotate_left(7)
            .wrapping_mul(9);
        let t = self.s[1] << 17;
        self.s[2] ^= self.s[0];
        self.s[3] ^= self.s[1];
        self.s[1] ^= self.s[2];
        self.s[0] ^= self.s[3];
        self.s[2] ^= t;
        self.s[3] = self.s[3].rotate_left(45);
        result
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    #[inline]
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`; degenerate `lo == hi` returns `lo`.
    ///
    /// The affine map can land exactly on `hi` through float rounding, in
    /// which case the result is clamped to the largest double below `hi`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> Result<f64> {
        if lo > hi {
            return Err(Error::invalid_arg(format!(
                "uniform range is empty: lo {lo} > hi {hi}"
            )));
        }
        if lo == hi {
            // Keep the stream aligned: a degenerate range still consumes one draw.
            self.next_u64();
            return Ok(lo);
        }
        let u = self.unit();
        let v = lo + u * (hi - lo);
        if v >= hi {
            Ok(f64::from_bits(hi.to_bits() - 1))
        } else {
            Ok(v)
        }
    }

    /// Uniform integer in `[lo, hi]`, both ends inclusive, without modulo
    /// bias (rejection sampling).
    ///
    /// Panics if `lo > hi` — an empty range is a caller bug, not a runtime
    /// condition.
    pub fn uniform_int(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi, "uniform_int range is empty: lo {lo} > hi {hi}");
        let span = (hi as i128 - lo as i128 + 1) as u128;
        if span == 1 << 64 {
            return self.next_u64() as i64;
        }
        let span = span as u64;
        let zone = u64::MAX - (u64::MAX % span);
        loop {
            let v = self.next_u64();
            if v < zone {
                return lo.wrapping_add((v % span) as i64);
            }
        }
    }

    /// Uniform index in `[0, n)`. Panics if `n` is 0.
    pub fn index(&mut self, n: usize) -> usize {
        assert!(n > 0, "cannot pick an index from 0 items");
        self.uniform_int(0, n as i64 - 1) as usize
    }

    /// Fair coin.
    pub fn coin(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }

    /// Standard normal draw via Box–Muller.
    ///
    /// Pairs are generated together and consumed in a fixed order (cosine
    /// branch first, sine branch cached), so the stream is reproducible.
    pub fn gaussian(&mut self) -> f64 {
        if let Some(z) = self.gauss_spare.take() {
            return z;
        }
        // u1 in (0, 1] so the log argument is never zero.
        let u1 = 1.0 - self.unit();
        let u2 = self.unit();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.gauss_spare = Some(r * theta.sin());
        r * theta.cos()
    }
}
