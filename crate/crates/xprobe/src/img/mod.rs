//! Core image representation, color math, resampling, and deterministic RNG.

mod buffer;
mod convolve;
mod hsl;
mod io;
mod resize;
mod rng;

pub use buffer::{round_clip, ImageBuffer};
pub use convolve::{convolve2d, Kernel};
pub use hsl::{hsl_to_rgb, rgb_to_hsl, HslPixel};
pub use io::{decode_image, encode_png, load_image, save_png};
pub use resize::{resize, ResizeMode};
pub(crate) use resize::sample_bilinear_clamped;
pub use rng::{derive_seed, splitmix64, DetRng, SeedTag};

/// Rec. 601 luma of an 8-bit RGB pixel, in [0, 255] (not rounded).
pub fn luminance(px: [u8; 3]) -> f64 {
    0.299 * px[0] as f64 + 0.587 * px[1] as f64 + 0.114 * px[2] as f64
}
