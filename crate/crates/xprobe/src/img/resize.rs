//! Resampling with three fixed policies: nearest, bilinear, and exact-area.

use super::buffer::{round_clip, ImageBuffer};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResizeMode {
    /// Source pixel under the destination pixel center: `floor((d + 0.5) * scale)`.
    Nearest,
    /// Pixel-center-aligned bilinear interpolation with edge clamping.
    Bilinear,
    /// Exact box coverage: each destination pixel is the area-weighted mean of
    /// the source pixels its box overlaps. Equals plain block means when the
    /// scale factors are integer reciprocals.
    Area,
}

/// Resamples `img` to `w` × `h`.
///
/// Nearest mode at identical dimensions is a byte-for-byte identity.
pub fn resize(img: &ImageBuffer, w: u32, h: u32, mode: ResizeMode) -> ImageBuffer {
    assert!(w >= 1 && h >= 1, "resize target must be >= 1 in both axes");
    if (w, h) == img.dims() && mode != ResizeMode::Area {
        // Nearest and bilinear are exact identities at equal dims; returning
        // early keeps them bit-exact without float detours.
        return img.clone();
    }
    match mode {
        ResizeMode::Nearest => resize_nearest(img, w, h),
        ResizeMode::Bilinear => resize_bilinear(img, w, h),
        ResizeMode::Area => resize_area(img, w, h),
    }
}

fn resize_nearest(img: &ImageBuffer, w: u32, h: u32) -> ImageBuffer {
    let sx = img.width() as f64 / w as f64;
    let sy = img.height() as f64 / h as f64;
    ImageBuffer::from_fn(w, h, |x, y| {
        let src_x = (((x as f64 + 0.5) * sx) as u32).min(img.width() - 1);
        let src_y = (((y as f64 + 0.5) * sy) as u32).min(img.height() - 1);
        img.get(src_x, src_y)
    })
}

fn resize_bilinear(img: &ImageBuffer, w: u32, h: u32) -> ImageBuffer {
    let sx = img.width() as f64 / w as f64;
    let sy = img.height() as f64 / h as f64;
    ImageBuffer::from_fn(w, h, |x, y| {
        let fx = (x as f64 + 0.5) * sx - 0.5;
        let fy = (y as f64 + 0.5) * sy - 0.5;
        sample_bilinear_clamped(img, fx, fy)
    })
}

/// Bilinear sample at a float position, clamping neighbors to the image edge.
pub(crate) fn sample_bilinear_clamped(img: &ImageBuffer, fx: f64, fy: f64) -> [u8; 3] {
    let x0 = fx.floor();
    let y0 = fy.floor();
    let tx = fx - x0;
    let ty = fy - y0;
    let x0 = x0 as i64;
    let y0 = y0 as i64;
    let p00 = img.get_clamped(x0, y0);
    let p10 = img.get_clamped(x0 + 1, y0);
    let p01 = img.get_clamped(x0, y0 + 1);
    let p11 = img.get_clamped(x0 + 1, y0 + 1);
    let mut out = [0u8; 3];
    for c in 0..3 {
        let top = p00[c] as f64 * (1.0 - tx) + p10[c] as f64 * tx;
        let bot = p01[c] as f64 * (1.0 - tx) + p11[c] as f64 * tx;
        out[c] = round_clip(top * (1.0 - ty) + bot * ty);
    }
    out
}

fn resize_area(img: &ImageBuffer, w: u32, h: u32) -> ImageBuffer {
    let sx = img.width() as f64 / w as f64;
    let sy = img.height() as f64 / h as f64;
    ImageBuffer::from_fn(w, h, |x, y| {
        // Source box covered by this destination pixel.
        let x_lo = x as f64 * sx;
        let x_hi = (x + 1) as f64 * sx;
        let y_lo = y as f64 * sy;
        let y_hi = (y + 1) as f64 * sy;
        let mut acc = [0.0f64; 3];
        let mut area = 0.0f64;
        let first_y = y_lo.floor() as u32;
        let last_y = (y_hi.ceil() as u32).min(img.height());
        let first_x = x_lo.floor() as u32;
        let last_x = (x_hi.ceil() as u32).min(img.width());
        for sy_i in first_y..last_y {
            let cover_y = (y_hi.min((sy_i + 1) as f64) - y_lo.max(sy_i as f64)).max(0.0);
            if cover_y == 0.0 {
                continue;
            }
            for sx_i in first_x..last_x {
                let cover_x = (x_hi.min((sx_i + 1) as f64) - x_lo.max(sx_i as f64)).max(0.0);
                if cover_x == 0.0 {
                    continue;
                }
                let weight = cover_x * cover_y;
                let px = img.get(sx_i, sy_i);
                for c in 0..3 {
                    acc[c] += weight * px[c] as f64;
                }
                area += weight;
            }
        }
        let mut out = [0u8; 3];
        for c in 0..3 {
            out[c] = round_clip(acc[c] / area);
        }
        out
    })
}
