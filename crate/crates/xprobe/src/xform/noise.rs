//! Pixel-corruption transformations: Gaussian and impulse noise, three
//! dithering schemes, and round-trip JPEG recompression.
//!
//! Stochastic ops consume their `DetRng::new(seed)` stream in a documented
//! order so independent reimplementations can replay them draw for draw.

use jpeg_encoder::{ColorType, Encoder, SamplingFactor};

use crate::img::{decode_image, round_clip, DetRng, ImageBuffer};
use crate::{Error, Result};

/// Adds zero-mean Gaussian noise with standard deviation `sigma` expressed as
/// a fraction of full scale (so `sigma = 0.15` perturbs by 38.25 levels, one
/// standard deviation).
///
/// Draw order: one normal deviate per channel, channels r,g,b within a pixel,
/// pixels in row-major order.
pub fn gaussian_noise(img: &ImageBuffer, sigma: f64, seed: u64) -> Result<ImageBuffer> {
    if !(sigma >= 0.0) {
        return Err(Error::invalid_arg(format!(
            "noise sigma must be >= 0, got {sigma}"
        )));
    }
    if sigma == 0.0 {
        return Ok(img.clone());
    }
    let mut rng = DetRng::new(seed);
    Ok(img.map_channels(|v| round_clip(v as f64 + 255.0 * sigma * rng.gaussian())))
}

/// Replaces each pixel, independently with probability `p`, by pure white or
/// pure black with equal odds.
///
/// Draw order, row-major per pixel: one uniform for the selection; if it
/// fires, one coin for the polarity.
pub fn impulse_noise(img: &ImageBuffer, p: f64, seed: u64) -> Result<ImageBuffer> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid_arg(format!(
            "impulse probability must be in [0, 1], got {p}"
        )));
    }
    let mut rng = DetRng::new(seed);
    Ok(img.map_pixels(|px| {
        if rng.unit() < p {
            if rng.coin() {
                [255, 255, 255]
            } else {
                [0, 0, 0]
            }
        } else {
            px
        }
    }))
}

/// Binarizes each channel against a fresh integer threshold drawn uniformly
/// from [0, 254]: values strictly above go to 255, the rest to 0.
///
/// Draw order: one threshold per channel, r,g,b within a pixel, row-major.
pub fn random_dither(img: &ImageBuffer, seed: u64) -> ImageBuffer {
    let mut rng = DetRng::new(seed);
    img.map_channels(|v| {
        let t = rng.uniform_int(0, 254) as u8;
        if v > t {
            255
        } else {
            0
        }
    })
}

/// The 2×2 Bayer index matrix, row-major.
pub const BAYER2: [[u8; 2]; 2] = [[0, 2], [3, 1]];

/// Binarizes each channel against the tiled 2×2 Bayer threshold pattern
/// `t(x, y) = (BAYER2[y mod 2][x mod 2] + 0.5) · 255 / 4`. Deterministic.
pub fn ordered_dither(img: &ImageBuffer) -> ImageBuffer {
    let mut out = ImageBuffer::new(img.width(), img.height(), [0, 0, 0]);
    for y in 0..img.height() {
        for x in 0..img.width() {
            let t = (BAYER2[(y % 2) as usize][(x % 2) as usize] as f64 + 0.5) * 255.0 / 4.0;
            let px = img.get(x, y);
            let mut o = [0u8; 3];
            for c in 0..3 {
                o[c] = if px[c] as f64 > t { 255 } else { 0 };
            }
            out.set(x, y, o);
        }
    }
    out
}

/// The quantization ladder used by [`fs_dither`]: `2^bits` integer levels
/// evenly spaced over [0, 255] with both endpoints included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DitherLevels {
    bits: u32,
    levels: Vec<u8>,
}

impl DitherLevels {
    /// Builds the ladder for a bit depth in 1..=8.
    pub fn new(bits: u32) -> Result<Self> {
        if !(1..=8).contains(&bits) {
            return Err(Error::invalid_arg(format!(
                "dither bit depth must be in 1..=8, got {bits}"
            )));
        }
        let n = (1u32 << bits) - 1;
        let levels = (0..=n)
            .map(|i| round_clip(i as f64 * 255.0 / n as f64))
            .collect();
        Ok(Self { bits, levels })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn levels(&self) -> &[u8] {
        &self.levels
    }

    /// The level nearest to `v`, with exact halfway points resolved to the
    /// lower level.
    pub fn nearest(&self, v: f64) -> u8 {
        let mut best = self.levels[0];
        let mut best_d = (v - best as f64).abs();
        for &level in &self.levels[1..] {
            let d = (v - level as f64).abs();
            if d < best_d {
                best = level;
                best_d = d;
            }
        }
        best
    }
}

/// Floyd–Steinberg error diffusion to `bits` of depth, per channel.
///
/// Raster scan, left-to-right then top-to-bottom. Each accumulator is clipped
/// to [0, 255] only at quantization time; the quantization error (clipped
/// value minus chosen level) diffuses with the classic weights 7/16 right,
/// 3/16 down-left, 5/16 down, 1/16 down-right, dropping shares that fall
/// outside the image.
pub fn fs_dither(img: &ImageBuffer, bits: u32) -> Result<ImageBuffer> {
    let ladder = DitherLevels::new(bits)?;
    let (w, h) = img.dims();
    let (wi, n) = (w as usize, w as usize * h as usize);
    let mut out = ImageBuffer::new(w, h, [0, 0, 0]);
    let mut acc = vec![0.0f64; n];
    for c in 0..3 {
        for i in 0..n {
            acc[i] = img.as_bytes()[3 * i + c] as f64;
        }
        for y in 0..h as usize {
            for x in 0..wi {
                let i = y * wi + x;
                let v = acc[i].clamp(0.0, 255.0);
                let level = ladder.nearest(v);
                let e = v - level as f64;
                let mut px = out.get(x as u32, y as u32);
                px[c] = level;
                out.set(x as u32, y as u32, px);
                if x + 1 < wi {
                    acc[i + 1] += e * 7.0 / 16.0;
                }
                if y + 1 < h as usize {
                    if x > 0 {
                        acc[i + wi - 1] += e * 3.0 / 16.0;
                    }
                    acc[i + wi] += e * 5.0 / 16.0;
                    if x + 1 < wi {
                        acc[i + wi + 1] += e * 1.0 / 16.0;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Encodes as a baseline JPEG (4:2:0 chroma subsampling, libjpeg-style
/// quality scaling) and decodes straight back, baking the compression
/// artifacts into a lossless buffer of the original dimensions.
pub fn jpeg_recompress(img: &ImageBuffer, quality: u32) -> Result<ImageBuffer> {
    if !(1..=100).contains(&quality) {
        return Err(Error::invalid_arg(format!(
            "jpeg quality must be in 1..=100, got {quality}"
        )));
    }
    let (w, h) = img.dims();
    if w > u16::MAX as u32 || h > u16::MAX as u32 {
        return Err(Error::invalid_arg(format!(
            "jpeg recompression supports dimensions up to {}, got {w}x{h}",
            u16::MAX
        )));
    }
    let mut bytes = Vec::new();
    let mut encoder = Encoder::new(&mut bytes, quality as u8);
    encoder.set_sampling_factor(SamplingFactor::F_2_2);
    encoder.encode(img.as_bytes(), w as u16, h as u16, ColorType::Rgb)?;
    let decoded = decode_image(&bytes)?;
    if decoded.dims() != (w, h) {
        return Err(Error::format(
            "jpeg round-trip",
            format!("dimensions changed from {w}x{h} to {:?}", decoded.dims()),
        ));
    }
    Ok(decoded)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn noisy(seed: u64, w: u32, h: u32) -> ImageBuffer {
        let mut rng = DetRng::new(seed);
        ImageBuffer::from_fn(w, h, |_, _| {
            let v = rng.next_u64();
            [(v >> 16) as u8, (v >> 8) as u8, v as u8]
        })
    }

    #[test]
    fn gaussian_noise_zero_sigma_is_identity() {
        let img = noisy(1, 9, 7);
        assert_eq!(gaussian_noise(&img, 0.0, 5).unwrap(), img);
        assert!(gaussian_noise(&img, -0.1, 5).is_err());
        assert!(gaussian_noise(&img, f64::NAN, 5).is_err());
    }

    #[test]
    fn gaussian_noise_replays_the_documented_draw_order() {
        let img = noisy(2, 6, 5);
        let out = gaussian_noise(&img, 0.15, 99).unwrap();
        let mut rng = DetRng::new(99);
        for y in 0..5 {
            for x in 0..6 {
                let px = img.get(x, y);
                let mut expect = [0u8; 3];
                for c in 0..3 {
                    expect[c] = round_clip(px[c] as f64 + 255.0 * 0.15 * rng.gaussian());
                }
                assert_eq!(out.get(x, y), expect, "at ({x},{y})");
            }
        }
    }

    #[test]
    fn gaussian_noise_is_seed_deterministic() {
        let img = noisy(3, 16, 16);
        let a = gaussian_noise(&img, 0.05, 11).unwrap();
        let b = gaussian_noise(&img, 0.05, 11).unwrap();
        let c = gaussian_noise(&img, 0.05, 12).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn gaussian_noise_spread_tracks_sigma() {
        let img = ImageBuffer::new(64, 64, [128, 128, 128]);
        let out = gaussian_noise(&img, 0.15, 4).unwrap();
        let vals: Vec<f64> = out.as_bytes().iter().map(|&v| v as f64).collect();
        let mean = vals.iter().sum::<f64>() / vals.len() as f64;
        let var = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / vals.len() as f64;
        assert!((mean - 128.0).abs() < 1.5, "mean {mean}");
        // sigma in levels is 38.25; clipping hardly binds around mid-gray.
        assert!((var.sqrt() - 38.25).abs() < 2.0, "std {}", var.sqrt());
    }

    #[test]
    fn impulse_noise_edge_probabilities() {
        let img = noisy(5, 12, 12);
        assert_eq!(impulse_noise(&img, 0.0, 3).unwrap(), img);
        let all = impulse_noise(&img, 1.0, 3).unwrap();
        for px in all.pixels() {
            assert!(px == [0, 0, 0] || px == [255, 255, 255]);
        }
        assert!(impulse_noise(&img, -0.1, 3).is_err());
        assert!(impulse_noise(&img, 1.1, 3).is_err());
    }

    #[test]
    fn impulse_noise_replays_the_documented_draw_order() {
        let img = noisy(6, 7, 4);
        let out = impulse_noise(&img, 0.35, 41).unwrap();
        let mut rng = DetRng::new(41);
        for y in 0..4 {
            for x in 0..7 {
                let expect = if rng.unit() < 0.35 {
                    if rng.coin() {
                        [255, 255, 255]
                    } else {
                        [0, 0, 0]
                    }
                } else {
                    img.get(x, y)
                };
                assert_eq!(out.get(x, y), expect, "at ({x},{y})");
            }
        }
    }

    #[test]
    fn impulse_noise_hit_rate_is_near_p() {
        let img = ImageBuffer::new(100, 100, [7, 99, 41]);
        let out = impulse_noise(&img, 0.3, 8).unwrap();
        let mut white = 0usize;
        let mut black = 0usize;
        for px in out.pixels() {
            match px {
                [255, 255, 255] => white += 1,
                [0, 0, 0] => black += 1,
                other => assert_eq!(other, [7, 99, 41]),
            }
        }
        let rate = (white + black) as f64 / 10_000.0;
        assert!((rate - 0.3).abs() < 0.03, "rate {rate}");
        let balance = white as f64 / (white + black) as f64;
        assert!((balance - 0.5).abs() < 0.05, "balance {balance}");
    }

    #[test]
    fn random_dither_extremes_and_range() {
        assert_eq!(
            random_dither(&ImageBuffer::new(5, 5, [0, 0, 0]), 1),
            ImageBuffer::new(5, 5, [0, 0, 0])
        );
        // 255 beats every threshold in [0, 254].
        assert_eq!(
            random_dither(&ImageBuffer::new(5, 5, [255, 255, 255]), 1),
            ImageBuffer::new(5, 5, [255, 255, 255])
        );
        for &v in random_dither(&noisy(7, 10, 10), 2).as_bytes() {
            assert!(v == 0 || v == 255);
        }
    }

    #[test]
    fn random_dither_replays_the_documented_draw_order() {
        let img = noisy(8, 5, 6);
        let out = random_dither(&img, 123);
        let mut rng = DetRng::new(123);
        for y in 0..6 {
            for x in 0..5 {
                let px = img.get(x, y);
                let mut expect = [0u8; 3];
                for c in 0..3 {
                    let t = rng.uniform_int(0, 254) as u8;
                    expect[c] = if px[c] > t { 255 } else { 0 };
                }
                assert_eq!(out.get(x, y), expect, "at ({x},{y})");
            }
        }
    }

    #[test]
    fn ordered_dither_mid_gray_forms_the_bayer_pattern() {
        let img = ImageBuffer::new(4, 4, [128, 128, 128]);
        let out = ordered_dither(&img);
        // Thresholds: 31.875, 159.375 / 223.125, 95.625 — so 128 passes only
        // where the Bayer index is 0 or 1.
        for y in 0..4 {
            for x in 0..4 {
                let expect = if BAYER2[(y % 2) as usize][(x % 2) as usize] <= 1 {
                    [255, 255, 255]
                } else {
                    [0, 0, 0]
                };
                assert_eq!(out.get(x, y), expect, "at ({x},{y})");
            }
        }
    }

    #[test]
    fn ordered_dither_extremes() {
        let white = ImageBuffer::new(3, 5, [255, 255, 255]);
        assert_eq!(ordered_dither(&white), white);
        let black = ImageBuffer::new(3, 5, [0, 0, 0]);
        assert_eq!(ordered_dither(&black), black);
    }

    #[test]
    fn dither_levels_ladders() {
        assert!(DitherLevels::new(0).is_err());
        assert!(DitherLevels::new(9).is_err());
        assert_eq!(DitherLevels::new(1).unwrap().levels(), &[0, 255]);
        assert_eq!(DitherLevels::new(2).unwrap().levels(), &[0, 85, 170, 255]);
        assert_eq!(
            DitherLevels::new(3).unwrap().levels(),
            &[0, 36, 73, 109, 146, 182, 219, 255]
        );
        let eight = DitherLevels::new(8).unwrap();
        assert_eq!(eight.levels().len(), 256);
        assert_eq!(eight.levels()[0], 0);
        assert_eq!(eight.levels()[255], 255);
    }

    #[test]
    fn dither_levels_ties_resolve_to_the_lower_level() {
        let one = DitherLevels::new(1).unwrap();
        assert_eq!(one.nearest(127.5), 0);
        assert_eq!(one.nearest(127.500001), 255);
        let two = DitherLevels::new(2).unwrap();
        assert_eq!(two.nearest(42.5), 0);
        assert_eq!(two.nearest(127.5), 85);
    }

    #[test]
    fn fs_dither_identities_and_extremes() {
        let img = noisy(9, 12, 9);
        assert_eq!(fs_dither(&img, 8).unwrap(), img);
        assert!(fs_dither(&img, 0).is_err());
        assert!(fs_dither(&img, 9).is_err());
        let white = ImageBuffer::new(6, 6, [255, 255, 255]);
        assert_eq!(fs_dither(&white, 1).unwrap(), white);
        let black = ImageBuffer::new(6, 6, [0, 0, 0]);
        assert_eq!(fs_dither(&black, 1).unwrap(), black);
    }

    #[test]
    fn fs_dither_single_row_diffusion_hand_check() {
        // Constant 100 row at 1 bit: errors push alternate pixels over 127.5.
        let img = ImageBuffer::new(4, 1, [100, 100, 100]);
        let out = fs_dither(&img, 1).unwrap();
        let got: Vec<u8> = out.pixels().map(|p| p[0]).collect();
        assert_eq!(got, vec![0, 255, 0, 0]);
    }

    #[test]
    fn fs_dither_outputs_only_ladder_levels() {
        let img = noisy(10, 20, 20);
        for bits in 1..=4 {
            let ladder = DitherLevels::new(bits).unwrap();
            let out = fs_dither(&img, bits).unwrap();
            for &v in out.as_bytes() {
                assert!(ladder.levels().contains(&v), "bits {bits} value {v}");
            }
        }
    }

    #[test]
    fn fs_dither_preserves_channel_means() {
        let img = noisy(11, 64, 64);
        for bits in [1u32, 2] {
            let out = fs_dither(&img, bits).unwrap();
            for c in 0..3 {
                let mean_in: f64 = img.as_bytes().iter().skip(c).step_by(3).map(|&v| v as f64).sum::<f64>() / (64.0 * 64.0);
                let mean_out: f64 = out.as_bytes().iter().skip(c).step_by(3).map(|&v| v as f64).sum::<f64>() / (64.0 * 64.0);
                // Error diffusion conserves mass up to what falls off the
                // right and bottom edges.
                assert!((mean_in - mean_out).abs() < 6.0, "bits {bits} ch {c}: {mean_in} vs {mean_out}");
            }
        }
    }

    #[test]
    fn jpeg_recompress_validates_and_keeps_dims() {
        let img = noisy(12, 17, 13);
        assert!(jpeg_recompress(&img, 0).is_err());
        assert!(jpeg_recompress(&img, 101).is_err());
        let out = jpeg_recompress(&img, 10).unwrap();
        assert_eq!(out.dims(), img.dims());
    }

    #[test]
    fn jpeg_recompress_is_deterministic() {
        let img = noisy(13, 32, 24);
        assert_eq!(jpeg_recompress(&img, 12).unwrap(), jpeg_recompress(&img, 12).unwrap());
    }

    #[test]
    fn jpeg_recompress_attenuates_high_frequencies() {
        let img = gaussian_noise(&ImageBuffer::new(48, 48, [128, 128, 128]), 0.15, 21).unwrap();
        let out = jpeg_recompress(&img, 12).unwrap();
        let lap = |im: &ImageBuffer| {
            let mut total = 0.0f64;
            for y in 0..48i64 {
                for x in 0..48i64 {
                    let c = im.get_clamped(x, y)[1] as f64;
                    let n = im.get_clamped(x, y - 1)[1] as f64
                        + im.get_clamped(x, y + 1)[1] as f64
                        + im.get_clamped(x - 1, y)[1] as f64
                        + im.get_clamped(x + 1, y)[1] as f64;
                    total += (4.0 * c - n).abs();
                }
            }
            total / (48.0 * 48.0)
        };
        assert!(lap(&out) < lap(&img), "{} vs {}", lap(&out), lap(&img));
    }

    #[test]
    fn jpeg_low_quality_is_lossier_than_high() {
        let img = noisy(14, 32, 32);
        let err = |a: &ImageBuffer, b: &ImageBuffer| {
            a.as_bytes()
                .iter()
                .zip(b.as_bytes())
                .map(|(&x, &y)| ((x as f64) - (y as f64)).powi(2))
                .sum::<f64>()
        };
        let hi = jpeg_recompress(&img, 95).unwrap();
        let lo = jpeg_recompress(&img, 5).unwrap();
        assert!(err(&lo, &img) > err(&hi, &img));
    }
}
