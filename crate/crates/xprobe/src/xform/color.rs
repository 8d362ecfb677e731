//! Pixel-wise color transformations: HSL affine filters, solarize, invert,
//! grayscale, posterize, k-means color quantization, and the HSL-as-RGB
//! reinterpretation.

use crate::img::{hsl_to_rgb, rgb_to_hsl, round_clip, DetRng, ImageBuffer};
use crate::{Error, Result};

/// Which HSL channel an affine filter touches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelSelector {
    Hue,
    Saturation,
    Lightness,
}

/// Applies `v' = v * scale + offset` to one HSL channel of every pixel.
///
/// Hue wraps with a mathematical modulo into `[0, 360)`; saturation and
/// lightness clip to `[0, 255]`. `hsl_affine(img, Hue, 1, 0)` is an exact
/// identity because the HSL round trip is exact.
pub fn hsl_affine(img: &ImageBuffer, ch: ChannelSelector, scale: f64, offset: f64) -> ImageBuffer {
    img.map_pixels(|px| {
        let mut hsl = rgb_to_hsl(px);
        match ch {
            ChannelSelector::Hue => {
                hsl.h = (hsl.h * scale + offset).rem_euclid(360.0);
                if hsl.h >= 360.0 {
                    hsl.h = 0.0;
                }
            }
            ChannelSelector::Saturation => {
                hsl.s = (hsl.s * scale + offset).clamp(0.0, 255.0);
            }
            ChannelSelector::Lightness => {
                hsl.l = (hsl.l * scale + offset).clamp(0.0, 255.0);
            }
        }
        hsl_to_rgb(hsl)
    })
}

/// Inverts every channel value above `threshold` (photo solarization).
pub fn solarize(img: &ImageBuffer, threshold: u8) -> ImageBuffer {
    img.map_channels(|v| if v > threshold { 255 - v } else { v })
}

/// Inverts all pixel values; an involution.
pub fn invert(img: &ImageBuffer) -> ImageBuffer {
    img.map_channels(|v| 255 - v)
}

/// Rec. 601 grayscale: `y = round(0.299 r + 0.587 g + 0.114 b)` on all three
/// channels; idempotent.
pub fn grayscale(img: &ImageBuffer) -> ImageBuffer {
    img.map_pixels(|px| {
        let y = round_clip(crate::img::luminance(px));
        [y, y, y]
    })
}

/// Keeps the top `bits` bits of every channel value.
pub fn posterize(img: &ImageBuffer, bits: u32) -> Result<ImageBuffer> {
    if !(1..=8).contains(&bits) {
        return Err(Error::invalid_arg(format!(
            "posterize bits must be in 1..=8, got {bits}"
        )));
    }
    let mask = (0xFFu16 << (8 - bits)) as u8;
    Ok(img.map_channels(|v| v & mask))
}

/// Reduces the image to at most `k` distinct colors by k-means in RGB space.
///
/// k-means++ seeding from `seed`, exactly 10 Lloyd iterations fit on a seeded
/// subsample of at most 65,536 pixels, then every pixel is assigned to its
/// nearest centroid (rounded half-up). Draw order: k-means++ picks first, then
/// the subsample is chosen before seeding if the image exceeds the cap.
pub fn quantize_colors(img: &ImageBuffer, k: u32, seed: u64) -> Result<ImageBuffer> {
    if k == 0 {
        return Err(Error::invalid_arg("quantize_colors requires k >= 1"));
    }
    let mut rng = DetRng::new(seed);
    let all: Vec<[f64; 3]> = img
        .pixels()
        .map(|p| [p[0] as f64, p[1] as f64, p[2] as f64])
        .collect();

    const FIT_CAP: usize = 65_536;
    let fit: Vec<[f64; 3]> = if all.len() <= FIT_CAP {
        all.clone()
    } else {
        (0..FIT_CAP)
            .map(|_| all[rng.index(all.len())])
            .collect()
    };

    let k = (k as usize).min(fit.len());
    let centroids = kmeans_fit(&fit, k, &mut rng)?;

    let palette: Vec<[u8; 3]> = centroids
        .iter()
        .map(|c| [round_clip(c[0]), round_clip(c[1]), round_clip(c[2])])
        .collect();
    Ok(img.map_pixels(|px| {
        let p = [px[0] as f64, px[1] as f64, px[2] as f64];
        let mut best = 0usize;
        let mut best_d = f64::INFINITY;
        for (i, c) in centroids.iter().enumerate() {
            let d = dist_sq(&p, c);
            if d < best_d {
                best_d = d;
                best = i;
            }
        }
        palette[best]
    }))
}

fn dist_sq(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    let dr = a[0] - b[0];
    let dg = a[1] - b[1];
    let db = a[2] - b[2];
    dr * dr + dg * dg + db * db
}

/// k-means++ initialization followed by exactly 10 Lloyd iterations.
fn kmeans_fit(points: &[[f64; 3]], k: usize, rng: &mut DetRng) -> Result<Vec<[f64; 3]>> {
    // k-means++: first center uniform, then each next center with probability
    // proportional to squared distance from the nearest chosen center.
    let mut centers: Vec<[f64; 3]> = Vec::with_capacity(k);
    centers.push(points[rng.index(points.len())]);
    let mut min_d: Vec<f64> = points.iter().map(|p| dist_sq(p, &centers[0])).collect();
    while centers.len() < k {
        let total: f64 = min_d.iter().sum();
        let next = if total == 0.0 {
            // All remaining mass at distance zero (fewer distinct colors than
            // k): fall back to a uniform pick.
            points[rng.index(points.len())]
        } else {
            let mut target = rng.uniform(0.0, total)?;
            let mut chosen = points.len() - 1;
            for (i, &d) in min_d.iter().enumerate() {
                if target < d {
                    chosen = i;
                    break;
                }
                target -= d;
            }
            points[chosen]
        };
        centers.push(next);
        for (i, p) in points.iter().enumerate() {
            let d = dist_sq(p, &next);
            if d < min_d[i] {
                min_d[i] = d;
            }
        }
    }

    for _ in 0..10 {
        let mut sums = vec![[0.0f64; 3]; centers.len()];
        let mut counts = vec![0usize; centers.len()];
        for p in points {
            let mut best = 0usize;
            let mut best_d = f64::INFINITY;
            for (i, c) in centers.iter().enumerate() {
                let d = dist_sq(p, c);
                if d < best_d {
                    best_d = d;
                    best = i;
                }
            }
            counts[best] += 1;
            for c in 0..3 {
                sums[best][c] += p[c];
            }
        }
        for i in 0..centers.len() {
            if counts[i] > 0 {
                for c in 0..3 {
                    centers[i][c] = sums[i][c] / counts[i] as f64;
                }
            }
            // Empty clusters keep their previous center.
        }
    }
    Ok(centers)
}

/// Reads HSL coordinates directly as RGB: `r = round(h * 255 / 360)`,
/// `g = round(s)`, `b = round(l)`.
pub fn hsl_as_rgb(img: &ImageBuffer) -> ImageBuffer {
    img.map_pixels(|px| {
        let hsl = rgb_to_hsl(px);
        [round_clip(hsl.h * 255.0 / 360.0), hsl.s_level(), hsl.l_level()]
    })
}
