//! Spatial transformations: blurs, pixelation, blurry-background
//! compositing, crops, rotations, flips, transpose, and line shifts.

use crate::img::{resize, round_clip, sample_bilinear_clamped, ImageBuffer, ResizeMode};
use crate::{Error, Result};

/// Normalized 1-D Gaussian taps with standard deviation `sigma`, truncated at
/// half-width `ceil(3 sigma)`.
fn gaussian_taps(sigma: f64) -> Vec<f64> {
    let half = (3.0 * sigma).ceil() as i64;
    let mut taps: Vec<f64> = (-half..=half)
        .map(|i| (-(i as f64) * (i as f64) / (2.0 * sigma * sigma)).exp())
        .collect();
    let sum: f64 = taps.iter().sum();
    for t in &mut taps {
        *t /= sum;
    }
    taps
}

/// Separable Gaussian blur with `sigma = radius`, replicate edges.
///
/// The horizontal pass keeps full float precision; quantization to 8 bits
/// happens once, after the vertical pass. `radius = 0` is an exact identity.
pub fn gaussian_blur(img: &ImageBuffer, radius: f64) -> Result<ImageBuffer> {
    if radius < 0.0 {
        return Err(Error::invalid_arg(format!(
            "blur radius must be >= 0, got {radius}"
        )));
    }
    if radius == 0.0 {
        return Ok(img.clone());
    }
    let taps = gaussian_taps(radius);
    let half = (taps.len() / 2) as i64;
    let (w, h) = img.dims();
    let (wi, hi) = (w as i64, h as i64);

    // Horizontal pass into a float plane (3 channels interleaved).
    let mut mid = vec![0.0f64; 3 * w as usize * h as usize];
    for y in 0..hi {
        for x in 0..wi {
            let mut acc = [0.0f64; 3];
            for (i, &t) in taps.iter().enumerate() {
                let sx = (x + i as i64 - half).clamp(0, wi - 1);
                let px = img.get(sx as u32, y as u32);
                for c in 0..3 {
                    acc[c] += t * px[c] as f64;
                }
            }
            let o = 3 * (y * wi + x) as usize;
            mid[o..o + 3].copy_from_slice(&acc);
        }
    }

    // Vertical pass, then one rounding step.
    Ok(ImageBuffer::from_fn(w, h, |x, y| {
        let mut acc = [0.0f64; 3];
        for (i, &t) in taps.iter().enumerate() {
            let sy = (y as i64 + i as i64 - half).clamp(0, hi - 1);
            let o = 3 * (sy * wi + x as i64) as usize;
            for c in 0..3 {
                acc[c] += t * mid[o + c];
            }
        }
        [round_clip(acc[0]), round_clip(acc[1]), round_clip(acc[2])]
    }))
}

/// The cells of a motion kernel: a 1-pixel-wide Bresenham line of `length`
/// cells (along its major axis) through the kernel center, as (dx, dy)
/// offsets. Weights are uniform over the cells.
pub fn motion_kernel_cells(length: u32, angle: f64) -> Vec<(i64, i64)> {
    let half = (length as f64 - 1.0) / 2.0;
    let x1 = (angle.cos() * half).round() as i64;
    let y1 = (angle.sin() * half).round() as i64;
    bresenham(-x1, -y1, x1, y1)
}

fn bresenham(mut x0: i64, mut y0: i64, x1: i64, y1: i64) -> Vec<(i64, i64)> {
    let dx = (x1 - x0).abs();
    let dy = -(y1 - y0).abs();
    let sx = if x0 < x1 { 1 } else { -1 };
    let sy = if y0 < y1 { 1 } else { -1 };
    let mut err = dx + dy;
    let mut cells = Vec::new();
    loop {
        cells.push((x0, y0));
        if x0 == x1 && y0 == y1 {
            break;
        }
        let e2 = 2 * err;
        if e2 >= dy {
            err += dy;
            x0 += sx;
        }
        if e2 <= dx {
            err += dx;
            y0 += sy;
        }
    }
    cells
}

/// Blurs along a straight line of `length` pixels at `angle` radians, with
/// uniform weights over the rasterized cells; `length = 1` is an identity.
pub fn motion_blur(img: &ImageBuffer, length: u32, angle: f64) -> Result<ImageBuffer> {
    if length < 1 {
        return Err(Error::invalid_arg("motion blur length must be >= 1"));
    }
    let cells = motion_kernel_cells(length, angle);
    let weight = 1.0 / cells.len() as f64;
    Ok(ImageBuffer::from_fn(img.width(), img.height(), |x, y| {
        let mut acc = [0.0f64; 3];
        for &(dx, dy) in &cells {
            let px = img.get_clamped(x as i64 + dx, y as i64 + dy);
            for c in 0..3 {
                acc[c] += weight * px[c] as f64;
            }
        }
        [round_clip(acc[0]), round_clip(acc[1]), round_clip(acc[2])]
    }))
}

/// Downsamples by `factor` (area), then upsamples back (nearest);
/// `factor = 1` is an identity.
pub fn pixelate(img: &ImageBuffer, factor: f64) -> Result<ImageBuffer> {
    if !(factor > 0.0 && factor <= 1.0) {
        return Err(Error::invalid_arg(format!(
            "pixelate factor must be in (0, 1], got {factor}"
        )));
    }
    let (w, h) = img.dims();
    let dw = ((w as f64 * factor + 0.5).floor() as u32).max(1);
    let dh = ((h as f64 * factor + 0.5).floor() as u32).max(1);
    let small = resize(img, dw, dh, ResizeMode::Area);
    Ok(resize(&small, w, h, ResizeMode::Nearest))
}

/// Stretches the image onto a larger blurred canvas of itself and rescales
/// back: the output keeps the input dimensions but gains a blurry letterbox
/// wherever the aspect change leaves room.
///
/// The canvas is the input scaled by `max(sw, 1) x max(sh, 1)` and blurred
/// with `blur_radius`; the foreground is the input scaled by
/// `min(sw, 1) x min(sh, 1)`, composited centered and opaque; the result is
/// resized (bilinear) back to the input size.
pub fn blurry_background(img: &ImageBuffer, sw: f64, sh: f64, blur_radius: f64) -> Result<ImageBuffer> {
    if sw <= 0.0 || sh <= 0.0 {
        return Err(Error::invalid_arg(format!(
            "scale factors must be positive, got ({sw}, {sh})"
        )));
    }
    let (w, h) = img.dims();
    let canvas_w = (((w as f64) * sw.max(1.0) + 0.5).floor() as u32).max(1);
    let canvas_h = (((h as f64) * sh.max(1.0) + 0.5).floor() as u32).max(1);
    let fg_w = (((w as f64) * sw.min(1.0) + 0.5).floor() as u32).max(1);
    let fg_h = (((h as f64) * sh.min(1.0) + 0.5).floor() as u32).max(1);

    let stretched = resize(img, canvas_w, canvas_h, ResizeMode::Bilinear);
    let mut canvas = gaussian_blur(&stretched, blur_radius)?;
    let fg = resize(img, fg_w, fg_h, ResizeMode::Bilinear);
    let x0 = (canvas_w - fg_w) / 2;
    let y0 = (canvas_h - fg_h) / 2;
    for y in 0..fg_h {
        for x in 0..fg_w {
            canvas.set(x0 + x, y0 + y, fg.get(x, y));
        }
    }
    Ok(resize(&canvas, w, h, ResizeMode::Bilinear))
}

/// Keeps the bottom-right quadrant: rows `[H/2, H)`, columns `[W/2, W)`.
pub fn corner_crop(img: &ImageBuffer) -> Result<ImageBuffer> {
    let (w, h) = img.dims();
    if w < 2 || h < 2 {
        return Err(Error::invalid_arg(
            "corner_crop requires both dimensions >= 2",
        ));
    }
    let x0 = w / 2;
    let y0 = h / 2;
    Ok(ImageBuffer::from_fn(w - x0, h - y0, |x, y| {
        img.get(x0 + x, y0 + y)
    }))
}

/// Rotates counter-clockwise by `degrees` about the image center, keeping the
/// input dimensions.
///
/// Multiples of 90° are exact pixel permutations when the image shape allows
/// (square for 90/270, any shape for 180); all other angles use bilinear
/// inverse mapping with black fill outside the source.
pub fn rotate(img: &ImageBuffer, degrees: f64) -> ImageBuffer {
    let (w, h) = img.dims();
    let turn = degrees.rem_euclid(360.0);
    if turn == 0.0 {
        return img.clone();
    }
    if turn == 180.0 {
        return ImageBuffer::from_fn(w, h, |x, y| img.get(w - 1 - x, h - 1 - y));
    }
    if w == h {
        if turn == 90.0 {
            // CCW quarter turn: the right edge becomes the top row.
            return ImageBuffer::from_fn(w, h, |x, y| img.get(w - 1 - y, x));
        }
        if turn == 270.0 {
            return ImageBuffer::from_fn(w, h, |x, y| img.get(y, h - 1 - x));
        }
    }

    // General case: inverse-map each output pixel into the source. With y
    // pointing down, a counter-clockwise rotation of the content by theta
    // means sampling the source at the position rotated by -theta... which in
    // this axis convention works out to the matrix below.
    let theta = turn.to_radians();
    let (sin, cos) = theta.sin_cos();
    let cx = (w as f64 - 1.0) / 2.0;
    let cy = (h as f64 - 1.0) / 2.0;
    ImageBuffer::from_fn(w, h, |x, y| {
        let dx = x as f64 - cx;
        let dy = y as f64 - cy;
        let sx = cx + cos * dx - sin * dy;
        let sy = cy + sin * dx + cos * dy;
        if sx < -0.5 || sy < -0.5 || sx > w as f64 - 0.5 || sy > h as f64 - 0.5 {
            return [0, 0, 0];
        }
        sample_bilinear_clamped(img, sx, sy)
    })
}

/// Mirrors top-to-bottom; an involution.
pub fn flip_vertical(img: &ImageBuffer) -> ImageBuffer {
    let (w, h) = img.dims();
    ImageBuffer::from_fn(w, h, |x, y| img.get(x, h - 1 - y))
}

/// Mirrors left-to-right; an involution.
pub fn flip_horizontal(img: &ImageBuffer) -> ImageBuffer {
    let (w, h) = img.dims();
    ImageBuffer::from_fn(w, h, |x, y| img.get(w - 1 - x, y))
}

/// Which diagonal a transpose reflects across.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Diagonal {
    /// Top-left to bottom-right: `out(x, y) = in(y, x)`.
    Major,
    /// Top-right to bottom-left: the major transpose rotated 180°.
    Minor,
}

/// Reflects across a diagonal, swapping dimensions; an involution.
pub fn transpose(img: &ImageBuffer, diagonal: Diagonal) -> ImageBuffer {
    let (w, h) = img.dims();
    match diagonal {
        Diagonal::Major => ImageBuffer::from_fn(h, w, |x, y| img.get(y, x)),
        Diagonal::Minor => ImageBuffer::from_fn(h, w, |x, y| img.get(w - 1 - y, h - 1 - x)),
    }
}

/// The axis a line shift slides along.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftAxis {
    /// Even rows slide right, odd rows slide left.
    Rows,
    /// Even columns slide down, odd columns slide up.
    Columns,
}

/// Rotates alternating rows or columns in opposite directions by `distance`
/// pixels, wrapping around. Distance 0 (or the full extent) is an identity.
pub fn line_shift(img: &ImageBuffer, axis: ShiftAxis, distance: u32) -> ImageBuffer {
    let (w, h) = img.dims();
    match axis {
        ShiftAxis::Columns => {
            let d = (distance % h) as i64;
            ImageBuffer::from_fn(w, h, |x, y| {
                let shift = if x % 2 == 0 { -d } else { d };
                let sy = (y as i64 + shift).rem_euclid(h as i64) as u32;
                img.get(x, sy)
            })
        }
        ShiftAxis::Rows => {
            let d = (distance % w) as i64;
            ImageBuffer::from_fn(w, h, |x, y| {
                let shift = if y % 2 == 0 { -d } else { d };
                let sx = (x as i64 + shift).rem_euclid(w as i64) as u32;
                img.get(sx, y)
            })
        }
    }
}
