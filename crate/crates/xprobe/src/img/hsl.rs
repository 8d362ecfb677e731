//! Exact HSL color math.
//!
//! Saturation and lightness are kept in *continuous* level units `[0, 255]`
//! (and hue in degrees `[0, 360)`): quantizing them to integers would make the
//! RGB round trip lossy, because distinct RGB values collapse onto the same
//! integer (h, s, l) triple. Rounding happens only where an HSL value is
//! serialized back into 8-bit channels — see [`round_clip`] and
//! [`HslPixel::s_level`] / [`HslPixel::l_level`] for the level view.

use super::buffer::round_clip;

/// A pixel in hue-saturation-lightness space.
///
/// `h` is degrees in `[0, 360)`; `s` and `l` are level units in `[0, 255]`
/// (255 corresponds to fully saturated / white).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HslPixel {
    pub h: f64,
    pub s: f64,
    pub l: f64,
}

impl HslPixel {
    /// Normalizes into range: `h` wraps modulo 360, `s` and `l` clip to
    /// `[0, 255]`.
    pub fn new(h: f64, s: f64, l: f64) -> HslPixel {
        let mut h = h.rem_euclid(360.0);
        if h >= 360.0 {
            // rem_euclid of a tiny negative can round up to exactly 360.
            h = 0.0;
        }
        HslPixel {
            h,
            s: s.clamp(0.0, 255.0),
            l: l.clamp(0.0, 255.0),
        }
    }

    /// Saturation rounded to an integer level.
    pub fn s_level(&self) -> u8 {
        round_clip(self.s)
    }

    /// Lightness rounded to an integer level.
    pub fn l_level(&self) -> u8 {
        round_clip(self.l)
    }
}

/// Converts an 8-bit RGB pixel to HSL.
///
/// Standard formulas: lightness is the mid-range of the channels, saturation
/// the chroma normalized by the head-room at that lightness, hue the usual
/// 60°-per-sextant angle. [`hsl_to_rgb`] inverts this exactly for every one of
/// the 2^24 RGB values.
pub fn rgb_to_hsl(px: [u8; 3]) -> HslPixel {
    let r = px[0] as f64;
    let g = px[1] as f64;
    let b = px[2] as f64;
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    let delta = max - min;

    let l = (max + min) / 2.0;
    if delta == 0.0 {
        return HslPixel { h: 0.0, s: 0.0, l };
    }

    let s = if max + min <= 255.0 {
        255.0 * delta / (max + min)
    } else {
        255.0 * delta / (510.0 - max - min)
    };

    let hp = if max == r {
        ((g - b) / delta).rem_euclid(6.0)
    } else if max == g {
        (b - r) / delta + 2.0
    } else {
        (r - g) / delta + 4.0
    };
    let mut h = 60.0 * hp;
    if h >= 360.0 {
        h = 0.0;
    }
    HslPixel { h, s, l }
}

/// Converts an HSL pixel back to 8-bit RGB (see [`rgb_to_hsl`]).
pub fn hsl_to_rgb(px: HslPixel) -> [u8; 3] {
    let s01 = px.s / 255.0;
    let l01 = px.l / 255.0;
    let c = (1.0 - (2.0 * l01 - 1.0).abs()) * s01;
    let hp = px.h / 60.0;
    let x = c * (1.0 - (hp.rem_euclid(2.0) - 1.0).abs());
    let m = l01 - c / 2.0;
    let (r1, g1, b1) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    [
        round_clip(255.0 * (r1 + m)),
        round_clip(255.0 * (g1 + m)),
        round_clip(255.0 * (b1 + m)),
    ]
}
