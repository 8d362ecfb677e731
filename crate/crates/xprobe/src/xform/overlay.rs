//! Content-compositing transformations: grid, line, text, and icon overlays,
//! distraction-image overlay and background fusing, and amplitude-modulated
//! line halftoning.
//!
//! Ops here take already-resolved assets (see the asset bundle in
//! [`crate::assets`]); looking ids up, and failing on unknown ones, is the
//! caller's job.

use crate::img::{luminance, resize, round_clip, DetRng, ImageBuffer, ResizeMode};
use crate::{Error, Result};

/// A tileable icon: flat-color artwork plus a 1-bit coverage mask of the same
/// dimensions (mask pixels are 0 or 255; 255 means covered).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IconAsset {
    pub id: String,
    pub color: ImageBuffer,
    pub mask: ImageBuffer,
}

/// A page of rendered gibberish text as a 1-bit coverage mask (255 = glyph),
/// with the native pixel height of its glyphs recorded for rescaling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextPageAsset {
    pub id: String,
    pub mask: ImageBuffer,
    pub glyph_height: u32,
}

/// A small full-color distraction image for overlay and fusing classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistractionAsset {
    pub id: String,
    pub image: ImageBuffer,
}

fn covered(px: [u8; 3]) -> bool {
    px[0] > 127
}

/// Alpha-blends `over` onto `under`: `round((a·over + (255−a)·under)/255)`
/// per channel. `a = 0` returns `under` exactly; `a = 255` returns `over`.
pub fn alpha_blend(over: [u8; 3], under: [u8; 3], a: u8) -> [u8; 3] {
    let af = a as f64;
    let mut out = [0u8; 3];
    for c in 0..3 {
        out[c] = round_clip((af * over[c] as f64 + (255.0 - af) * under[c] as f64) / 255.0);
    }
    out
}

/// Paints `color` over every pixel on an even row or an even column, leaving
/// only the odd-row-and-odd-column pixels untouched.
pub fn grid_overlay(img: &ImageBuffer, color: [u8; 3]) -> ImageBuffer {
    ImageBuffer::from_fn(img.width(), img.height(), |x, y| {
        if x % 2 == 0 || y % 2 == 0 {
            color
        } else {
            img.get(x, y)
        }
    })
}

/// Paints solid parallel stripes of `width` pixels with `gap` pixels between
/// them, at `angle` radians from horizontal (0 = horizontal stripes).
///
/// The stripe-normal coordinate of pixel (x, y) is `-x·sin(angle) +
/// y·cos(angle)`; a stripe starts wherever that coordinate is 0 mod the
/// period `width + gap`.
pub fn line_overlay(
    img: &ImageBuffer,
    width: u32,
    gap: u32,
    angle: f64,
    color: [u8; 3],
) -> Result<ImageBuffer> {
    if width < 1 || gap < 1 {
        return Err(Error::invalid_arg(format!(
            "stripe width and gap must be >= 1, got {width} and {gap}"
        )));
    }
    let period = (width + gap) as f64;
    let (sin, cos) = angle.sin_cos();
    Ok(ImageBuffer::from_fn(img.width(), img.height(), |x, y| {
        let p = -(x as f64) * sin + (y as f64) * cos;
        if p.rem_euclid(period) < width as f64 {
            color
        } else {
            img.get(x, y)
        }
    }))
}

/// Tiles a text page's glyph mask over the image and paints `color` where it
/// covers.
///
/// The page is rescaled (nearest neighbor, staying 1-bit) so glyphs stand
/// `max(round(H/20), 7)` pixels tall, then tiled from the top-left corner.
pub fn text_overlay(img: &ImageBuffer, page: &TextPageAsset, color: [u8; 3]) -> ImageBuffer {
    let target = (round_half(img.height() as f64 / 20.0)).max(7);
    let scale = target as f64 / page.glyph_height as f64;
    let mw = (round_half(page.mask.width() as f64 * scale)).max(1);
    let mh = (round_half(page.mask.height() as f64 * scale)).max(1);
    let mask = resize(&page.mask, mw, mh, ResizeMode::Nearest);
    ImageBuffer::from_fn(img.width(), img.height(), |x, y| {
        if covered(mask.get(x % mw, y % mh)) {
            color
        } else {
            img.get(x, y)
        }
    })
}

fn round_half(v: f64) -> u32 {
    (v + 0.5).floor().max(0.0) as u32
}

/// Tiles an icon over the image as a wall and alpha-blends it at `opacity`.
///
/// The icon is rescaled (nearest neighbor) to a square of side
/// `round(W/ratio)` and stamped on a regular grid with one icon of blank
/// spacing between stamps, starting at the top-left corner; stamps clip at
/// the edges.
pub fn icon_overlay(
    img: &ImageBuffer,
    icon: &IconAsset,
    opacity: u8,
    ratio: f64,
) -> Result<ImageBuffer> {
    if !(ratio > 0.0) {
        return Err(Error::invalid_arg(format!(
            "icon ratio must be positive, got {ratio}"
        )));
    }
    let side = round_half(img.width() as f64 / ratio).max(1);
    let color = resize(&icon.color, side, side, ResizeMode::Nearest);
    let mask = resize(&icon.mask, side, side, ResizeMode::Nearest);
    let mut out = img.clone();
    let step = 2 * side;
    let mut y0 = 0u32;
    while y0 < img.height() {
        let mut x0 = 0u32;
        while x0 < img.width() {
            for dy in 0..side.min(img.height() - y0) {
                for dx in 0..side.min(img.width() - x0) {
                    if covered(mask.get(dx, dy)) {
                        let under = out.get(x0 + dx, y0 + dy);
                        out.set(
                            x0 + dx,
                            y0 + dy,
                            alpha_blend(color.get(dx, dy), under, opacity),
                        );
                    }
                }
            }
            x0 += step;
        }
        y0 += step;
    }
    Ok(out)
}

/// Blends a distraction image, shrunk to `frac` of each dimension, at a
/// uniformly random position.
///
/// Draw order from `DetRng::new(seed)`: the left offset, then the top offset,
/// each inclusive-uniform over the valid range.
pub fn image_overlay(
    img: &ImageBuffer,
    distraction: &DistractionAsset,
    frac: f64,
    opacity: u8,
    seed: u64,
) -> Result<ImageBuffer> {
    if !(frac > 0.0 && frac <= 1.0) {
        return Err(Error::invalid_arg(format!(
            "overlay fraction must be in (0, 1], got {frac}"
        )));
    }
    let (w, h) = img.dims();
    let dw = round_half(w as f64 * frac).clamp(1, w);
    let dh = round_half(h as f64 * frac).clamp(1, h);
    let small = resize(&distraction.image, dw, dh, ResizeMode::Bilinear);
    let mut rng = DetRng::new(seed);
    let x0 = rng.uniform_int(0, (w - dw) as i64) as u32;
    let y0 = rng.uniform_int(0, (h - dh) as i64) as u32;
    let mut out = img.clone();
    for dy in 0..dh {
        for dx in 0..dw {
            let under = out.get(x0 + dx, y0 + dy);
            out.set(
                x0 + dx,
                y0 + dy,
                alpha_blend(small.get(dx, dy), under, opacity),
            );
        }
    }
    Ok(out)
}

/// Swaps the roles of subject and backdrop: the distraction fills the frame
/// and the input, shrunk to `frac` of each dimension, is blended over its
/// center at `opacity`.
pub fn fuse_background(
    img: &ImageBuffer,
    distraction: &DistractionAsset,
    frac: f64,
    opacity: u8,
) -> Result<ImageBuffer> {
    if !(frac > 0.0 && frac <= 1.0) {
        return Err(Error::invalid_arg(format!(
            "fuse fraction must be in (0, 1], got {frac}"
        )));
    }
    let (w, h) = img.dims();
    let fw = round_half(w as f64 * frac).clamp(1, w);
    let fh = round_half(h as f64 * frac).clamp(1, h);
    let mut out = resize(&distraction.image, w, h, ResizeMode::Bilinear);
    let fg = resize(img, fw, fh, ResizeMode::Bilinear);
    let x0 = (w - fw) / 2;
    let y0 = (h - fh) / 2;
    for dy in 0..fh {
        for dx in 0..fw {
            let under = out.get(x0 + dx, y0 + dy);
            out.set(x0 + dx, y0 + dy, alpha_blend(fg.get(dx, dy), under, opacity));
        }
    }
    Ok(out)
}

/// The periodic carrier a halftone stroke follows, as a function of the phase
/// fraction `t ∈ [0, 1)`; all shapes span [−1, 1].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Waveform {
    Sine,
    Triangle,
    Sawtooth,
    Square,
}

impl Waveform {
    /// The wave value at phase fraction `t` (`t = 0` is the start of a
    /// period).
    pub fn value(self, t: f64) -> f64 {
        let t = t.rem_euclid(1.0);
        match self {
            Waveform::Sine => (2.0 * std::f64::consts::PI * t).sin(),
            Waveform::Triangle => 4.0 * (t - 0.5).abs() - 1.0,
            Waveform::Sawtooth => 2.0 * t - 1.0,
            Waveform::Square => {
                if t < 0.5 {
                    1.0
                } else {
                    -1.0
                }
            }
        }
    }
}

/// Redraws the image as black amplitude-modulated lines on a white canvas.
///
/// The canvas splits into horizontal bands `2·max_amp + line_width` tall.
/// Within a band starting at row `b`, the stroke's top edge follows
/// `y(x) = b + max_amp + A(x)·wave(x/λ)` with wavelength `λ = 4·max_amp`
/// and amplitude `A(x) = max_amp·(1 − Y/255)`, where `Y` is the input
/// luminance sampled at `(x, b + max_amp)`; dark input swings the wave to the
/// band edges, white input flattens it. Each column paints `line_width` rows
/// starting at `round(y(x))`, clipped to the canvas. Output pixels are only
/// pure black or pure white.
pub fn halftone(
    img: &ImageBuffer,
    wave: Waveform,
    line_width: u32,
    max_amp: u32,
) -> Result<ImageBuffer> {
    if line_width < 1 || max_amp < 1 {
        return Err(Error::invalid_arg(format!(
            "halftone line width and max amplitude must be >= 1, got {line_width} and {max_amp}"
        )));
    }
    let (w, h) = img.dims();
    let band = 2 * max_amp + line_width;
    let lambda = 4.0 * max_amp as f64;
    let mut out = ImageBuffer::new(w, h, [255, 255, 255]);
    let mut b = 0u32;
    while b < h {
        let anchor = (b + max_amp) as i64;
        for x in 0..w {
            let y_lum = luminance(img.get_clamped(x as i64, anchor));
            let amp = max_amp as f64 * (1.0 - y_lum / 255.0);
            let wave_v = wave.value(x as f64 / lambda);
            let top = (anchor as f64 + amp * wave_v + 0.5).floor() as i64;
            for dy in 0..line_width as i64 {
                let y = top + dy;
                if y >= 0 && (y as u32) < h {
                    out.set(x, y as u32, [0, 0, 0]);
                }
            }
        }
        b += band;
    }
    Ok(out)
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

    fn solid_icon(side: u32, rgb: [u8; 3]) -> IconAsset {
        IconAsset {
            id: "solid".into(),
            color: ImageBuffer::new(side, side, rgb),
            mask: ImageBuffer::new(side, side, [255, 255, 255]),
        }
    }

    #[test]
    fn blend_extremes_are_exact() {
        assert_eq!(alpha_blend([10, 200, 31], [90, 14, 250], 0), [90, 14, 250]);
        assert_eq!(alpha_blend([10, 200, 31], [90, 14, 250], 255), [10, 200, 31]);
        // Midpoint blend of 0 and 255: 128·255/255 = 128.
        assert_eq!(alpha_blend([255, 255, 255], [0, 0, 0], 128), [128, 128, 128]);
    }

    #[test]
    fn grid_overlay_touches_all_but_odd_odd() {
        let img = noisy(1, 2, 2);
        let out = grid_overlay(&img, [204, 255, 127]);
        assert_eq!(out.get(0, 0), [204, 255, 127]);
        assert_eq!(out.get(1, 0), [204, 255, 127]);
        assert_eq!(out.get(0, 1), [204, 255, 127]);
        assert_eq!(out.get(1, 1), img.get(1, 1));
    }

    #[test]
    fn grid_overlay_survivor_count() {
        for (w, h) in [(5u32, 7u32), (6, 6), (1, 9), (8, 3)] {
            let img = noisy(2, w, h);
            let out = grid_overlay(&img, [0, 255, 0]);
            let mut survivors = 0;
            for y in 0..h {
                for x in 0..w {
                    if out.get(x, y) == img.get(x, y) && img.get(x, y) != [0, 255, 0] {
                        survivors += 1;
                    }
                }
            }
            assert_eq!(survivors, (w / 2) * (h / 2), "{w}x{h}");
        }
    }

    #[test]
    fn line_overlay_horizontal_stripe_rows() {
        let img = noisy(3, 10, 50);
        let out = line_overlay(&img, 4, 20, 0.0, [101, 0, 0]).unwrap();
        for y in 0..50u32 {
            for x in 0..10u32 {
                if y % 24 < 4 {
                    assert_eq!(out.get(x, y), [101, 0, 0], "stripe at ({x},{y})");
                } else {
                    assert_eq!(out.get(x, y), img.get(x, y), "gap at ({x},{y})");
                }
            }
        }
    }

    #[test]
    fn line_overlay_huge_gap_leaves_one_stripe() {
        let img = noisy(4, 6, 30);
        let out = line_overlay(&img, 3, 100, 0.0, [1, 2, 3]).unwrap();
        for y in 0..30u32 {
            let painted = out.get(0, y) == [1, 2, 3];
            assert_eq!(painted, y < 3, "row {y}");
        }
        assert!(line_overlay(&img, 0, 5, 0.0, [0, 0, 0]).is_err());
        assert!(line_overlay(&img, 5, 0, 0.0, [0, 0, 0]).is_err());
    }

    #[test]
    fn line_overlay_vertical_stripes() {
        let img = noisy(5, 24, 4);
        let out = line_overlay(&img, 4, 20, std::f64::consts::FRAC_PI_2, [9, 9, 9]).unwrap();
        // Normal coordinate is -x, so the anchored stripe covers x=0 and
        // wraps to x in {21, 22, 23}.
        for x in 0..24u32 {
            let painted = out.get(x, 2) == [9, 9, 9];
            let expect = x == 0 || x >= 21;
            assert_eq!(painted, expect, "column {x}");
        }
    }

    #[test]
    fn text_overlay_paints_exactly_the_mask_at_native_scale() {
        // Image height 100 → target glyph height max(round(5),7) = 7 =
        // native, so the mask tiles verbatim.
        let mut mask = ImageBuffer::new(4, 3, [0, 0, 0]);
        mask.set(1, 1, [255, 255, 255]);
        mask.set(2, 2, [255, 255, 255]);
        let page = TextPageAsset {
            id: "t".into(),
            mask,
            glyph_height: 7,
        };
        let img = noisy(6, 8, 100);
        let out = text_overlay(&img, &page, [25, 25, 25]);
        for y in 0..100u32 {
            for x in 0..8u32 {
                let on = (x % 4 == 1 && y % 3 == 1) || (x % 4 == 2 && y % 3 == 2);
                if on {
                    assert_eq!(out.get(x, y), [25, 25, 25], "({x},{y})");
                } else {
                    assert_eq!(out.get(x, y), img.get(x, y), "({x},{y})");
                }
            }
        }
        assert_eq!(text_overlay(&img, &page, [25, 25, 25]), out);
    }

    #[test]
    fn icon_overlay_opacity_extremes() {
        let img = noisy(7, 40, 40);
        let icon = solid_icon(8, [200, 10, 60]);
        assert_eq!(icon_overlay(&img, &icon, 0, 10.0).unwrap(), img);
        let full = icon_overlay(&img, &icon, 255, 10.0).unwrap();
        // Side = round(40/10) = 4, stamps at multiples of 8.
        assert_eq!(full.get(0, 0), [200, 10, 60]);
        assert_eq!(full.get(3, 3), [200, 10, 60]);
        assert_eq!(full.get(4, 0), img.get(4, 0));
        assert_eq!(full.get(8, 8), [200, 10, 60]);
        assert_eq!(full.get(0, 8), [200, 10, 60]);
        assert!(icon_overlay(&img, &icon, 32, 0.0).is_err());
    }

    #[test]
    fn icon_overlay_respects_the_mask() {
        let mut icon = solid_icon(4, [50, 50, 50]);
        icon.mask = ImageBuffer::new(4, 4, [0, 0, 0]);
        let img = noisy(8, 16, 16);
        assert_eq!(icon_overlay(&img, &icon, 255, 4.0).unwrap(), img);
    }

    #[test]
    fn image_overlay_extremes_and_determinism() {
        let img = noisy(9, 20, 16);
        let d = DistractionAsset {
            id: "d".into(),
            image: noisy(10, 30, 30),
        };
        assert_eq!(image_overlay(&img, &d, 0.6, 0, 3).unwrap(), img);
        let full = image_overlay(&img, &d, 1.0, 255, 3).unwrap();
        assert_eq!(full, resize(&d.image, 20, 16, ResizeMode::Bilinear));
        let a = image_overlay(&img, &d, 0.5, 90, 3).unwrap();
        assert_eq!(a, image_overlay(&img, &d, 0.5, 90, 3).unwrap());
        assert!(image_overlay(&img, &d, 0.0, 90, 3).is_err());
    }

    #[test]
    fn image_overlay_patch_is_where_the_rng_says() {
        let img = ImageBuffer::new(20, 16, [0, 0, 0]);
        let d = DistractionAsset {
            id: "d".into(),
            image: ImageBuffer::new(6, 6, [255, 255, 255]),
        };
        let out = image_overlay(&img, &d, 0.5, 255, 77).unwrap();
        let mut rng = DetRng::new(77);
        let x0 = rng.uniform_int(0, 10) as u32;
        let y0 = rng.uniform_int(0, 8) as u32;
        for y in 0..16u32 {
            for x in 0..20u32 {
                let inside = (x0..x0 + 10).contains(&x) && (y0..y0 + 8).contains(&y);
                let expect = if inside { [255, 255, 255] } else { [0, 0, 0] };
                assert_eq!(out.get(x, y), expect, "({x},{y})");
            }
        }
    }

    #[test]
    fn fuse_background_extremes() {
        let img = noisy(11, 18, 12);
        let d = DistractionAsset {
            id: "d".into(),
            image: noisy(12, 7, 9),
        };
        assert_eq!(fuse_background(&img, &d, 1.0, 255).unwrap(), img);
        assert_eq!(
            fuse_background(&img, &d, 1.0, 0).unwrap(),
            resize(&d.image, 18, 12, ResizeMode::Bilinear)
        );
        let out = fuse_background(&img, &d, 0.5, 200).unwrap();
        assert_eq!(out.dims(), (18, 12));
        // Corners lie outside the centered foreground.
        let bg = resize(&d.image, 18, 12, ResizeMode::Bilinear);
        assert_eq!(out.get(0, 0), bg.get(0, 0));
        assert_eq!(out.get(17, 11), bg.get(17, 11));
        assert!(fuse_background(&img, &d, 0.0, 90).is_err());
    }

    #[test]
    fn halftone_white_input_draws_flat_lines() {
        let img = ImageBuffer::new(12, 22, [255, 255, 255]);
        let out = halftone(&img, Waveform::Sine, 1, 5).unwrap();
        // Band height 11; anchors at rows 5 and 16.
        for y in 0..22u32 {
            for x in 0..12u32 {
                let expect = if y == 5 || y == 16 {
                    [0, 0, 0]
                } else {
                    [255, 255, 255]
                };
                assert_eq!(out.get(x, y), expect, "({x},{y})");
            }
        }
    }

    #[test]
    fn halftone_black_input_touches_band_edges() {
        let img = ImageBuffer::new(40, 11, [0, 0, 0]);
        let out = halftone(&img, Waveform::Square, 1, 5).unwrap();
        // Square wave: +1 for the first half period, so top rows at 5+5=10
        // and 5-5=0 alternate in runs of 10 columns.
        for x in 0..40u32 {
            let expect_row = if (x / 10) % 2 == 0 { 10 } else { 0 };
            for y in 0..11u32 {
                let expect = if y == expect_row { [0, 0, 0] } else { [255, 255, 255] };
                assert_eq!(out.get(x, y), expect, "({x},{y})");
            }
        }
    }

    #[test]
    fn halftone_is_strictly_bilevel() {
        let img = noisy(13, 30, 30);
        for wave in [
            Waveform::Sine,
            Waveform::Triangle,
            Waveform::Sawtooth,
            Waveform::Square,
        ] {
            let out = halftone(&img, wave, 2, 4).unwrap();
            for px in out.pixels() {
                assert!(px == [0, 0, 0] || px == [255, 255, 255]);
            }
        }
        assert!(halftone(&img, Waveform::Sine, 0, 5).is_err());
        assert!(halftone(&img, Waveform::Sine, 1, 0).is_err());
    }

    #[test]
    fn halftone_line_width_thickens_strokes() {
        let img = ImageBuffer::new(10, 13, [255, 255, 255]);
        let out = halftone(&img, Waveform::Triangle, 3, 5).unwrap();
        // One band of height 13; stroke rows 5..8.
        for y in 0..13u32 {
            let painted = out.get(4, y) == [0, 0, 0];
            assert_eq!(painted, (5..8).contains(&y), "row {y}");
        }
    }

    #[test]
    fn waveform_shapes_hit_reference_points() {
        assert!(Waveform::Sine.value(0.0).abs() < 1e-12);
        assert!((Waveform::Sine.value(0.25) - 1.0).abs() < 1e-12);
        assert_eq!(Waveform::Triangle.value(0.0), 1.0);
        assert_eq!(Waveform::Triangle.value(0.5), -1.0);
        assert_eq!(Waveform::Sawtooth.value(0.0), -1.0);
        assert_eq!(Waveform::Sawtooth.value(0.75), 0.5);
        assert_eq!(Waveform::Square.value(0.1), 1.0);
        assert_eq!(Waveform::Square.value(0.6), -1.0);
        // Period 1 for every shape.
        for w in [Waveform::Sine, Waveform::Triangle, Waveform::Sawtooth, Waveform::Square] {
            assert!((w.value(0.3) - w.value(1.3)).abs() < 1e-12);
        }
    }
}
