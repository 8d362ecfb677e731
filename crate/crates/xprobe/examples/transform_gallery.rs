//! Renders one sample of every pixel-level transformation family to PNG.
//!
//! Usage: `cargo run --example transform_gallery [out_dir]` (default
//! `target/gallery`). Each output is decoded back after writing, so a
//! successful run proves the full encode/decode path works.

use xprobe::img::{load_image, save_png, ImageBuffer};
use xprobe::xform::color::{
    grayscale, hsl_affine, hsl_as_rgb, invert, posterize, quantize_colors, solarize,
    ChannelSelector,
};
use xprobe::xform::geom::{
    blurry_background, corner_crop, flip_vertical, gaussian_blur, line_shift, motion_blur,
    pixelate, rotate, transpose, Diagonal, ShiftAxis,
};
use xprobe::xform::noise::{
    fs_dither, gaussian_noise, impulse_noise, jpeg_recompress, ordered_dither, random_dither,
};
use xprobe::xform::overlay::{grid_overlay, halftone, line_overlay, Waveform};

/// A deterministic 224x224 test scene: a sky gradient, a disc, and a few
/// color bars, enough structure for every transform to leave a visible mark.
fn scene() -> ImageBuffer {
    ImageBuffer::from_fn(224, 224, |x, y| {
        let (xf, yf) = (x as f64, y as f64);
        // Sky gradient.
        let mut px = [
            (40.0 + 0.5 * yf) as u8,
            (90.0 + 0.4 * yf) as u8,
            (160.0 + 0.3 * yf).min(255.0) as u8,
        ];
        // Sun disc.
        let d = ((xf - 150.0).powi(2) + (yf - 60.0).powi(2)).sqrt();
        if d < 32.0 {
            px = [250, 220, 90];
        }
        // Ground with color bars.
        if y > 160 {
            px = match (x / 32) % 4 {
                0 => [60, 140, 60],
                1 => [140, 100, 40],
                2 => [30, 90, 30],
                _ => [100, 70, 120],
            };
        }
        px
    })
}

fn main() -> xprobe::Result<()> {
    let out_dir = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "target/gallery".to_string());
    let base = scene();
    let seed = 7;

    let gallery: Vec<(&str, ImageBuffer)> = vec![
        ("00-original", base.clone()),
        ("01-hue-shift", hsl_affine(&base, ChannelSelector::Hue, 1.0, 64.0)),
        ("02-desaturate", hsl_affine(&base, ChannelSelector::Saturation, 0.25, 32.0)),
        ("03-brighten", hsl_affine(&base, ChannelSelector::Lightness, 1.0, 96.0)),
        ("04-solarize", solarize(&base, 192)),
        ("05-invert", invert(&base)),
        ("06-grayscale", grayscale(&base)),
        ("07-posterize", posterize(&base, 2)?),
        ("08-quantize", quantize_colors(&base, 8, seed)?),
        ("09-hsl-as-rgb", hsl_as_rgb(&base)),
        ("10-gauss-noise", gaussian_noise(&base, 0.15, seed)?),
        ("11-impulse-noise", impulse_noise(&base, 0.15, seed)?),
        ("12-random-dither", random_dither(&base, seed)),
        ("13-ordered-dither", ordered_dither(&base)),
        ("14-fs-dither", fs_dither(&base, 1)?),
        ("15-jpeg-q10", jpeg_recompress(&base, 10)?),
        ("16-gauss-blur", gaussian_blur(&base, 4.0)?),
        ("17-motion-blur", motion_blur(&base, 10, 0.5)?),
        ("18-pixelate", pixelate(&base, 0.15)?),
        ("19-blurry-bg", blurry_background(&base, 1.5, 1.0, 3.0)?),
        ("20-corner-crop", corner_crop(&base)?),
        ("21-rotate-135", rotate(&base, 135.0)),
        ("22-flip-vertical", flip_vertical(&base)),
        ("23-transpose", transpose(&base, Diagonal::Minor)),
        ("24-line-shift", line_shift(&base, ShiftAxis::Columns, 3)),
        ("25-grid", grid_overlay(&base, [204, 255, 127])),
        ("26-lines", line_overlay(&base, 4, 20, 0.0, [101, 0, 0])?),
        ("27-halftone", halftone(&base, Waveform::Sine, 1, 5)?),
    ];

    for (name, img) in &gallery {
        let path = format!("{out_dir}/{name}.png");
        save_png(img, &path)?;
        let back = load_image(&path)?;
        assert_eq!(&back, img, "png round-trip of {name}");
        println!("{path}  {}x{}", img.width(), img.height());
    }
    println!("{} images written to {out_dir}", gallery.len());
    Ok(())
}
