//! General 2-D convolution with replicate edge handling.

use super::buffer::{round_clip, ImageBuffer};
use crate::{Error, Result};

/// A 2-D convolution kernel. Both dimensions must be odd so the kernel has a
/// center cell.
#[derive(Debug, Clone)]
pub struct Kernel {
    width: u32,
    height: u32,
    weights: Vec<f64>,
}

impl Kernel {
    pub fn new(width: u32, height: u32, weights: Vec<f64>) -> Result<Kernel> {
        if width % 2 == 0 || height % 2 == 0 {
            return Err(Error::invalid_arg(format!(
                "kernel dimensions must be odd, got {width}x{height}"
            )));
        }
        if weights.len() != (width as usize) * (height as usize) {
            return Err(Error::invalid_arg(format!(
                "kernel weight count {} does not match {width}x{height}",
                weights.len()
            )));
        }
        Ok(Kernel {
            width,
            height,
            weights,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn weight(&self, kx: u32, ky: u32) -> f64 {
        self.weights[(ky * self.width + kx) as usize]
    }
}

/// Convolves each channel independently in f64, with out-of-image samples
/// replicated from the nearest edge, then rounds half-up.
pub fn convolve2d(img: &ImageBuffer, kernel: &Kernel) -> ImageBuffer {
    let half_w = (kernel.width / 2) as i64;
    let half_h = (kernel.height / 2) as i64;
    ImageBuffer::from_fn(img.width(), img.height(), |x, y| {
        let mut acc = [0.0f64; 3];
        for ky in 0..kernel.height {
            for kx in 0..kernel.width {
                let w = kernel.weight(kx, ky);
                if w == 0.0 {
                    continue;
                }
                let sx = x as i64 + kx as i64 - half_w;
                let sy = y as i64 + ky as i64 - half_h;
                let px = img.get_clamped(sx, sy);
                for c in 0..3 {
                    acc[c] += w * px[c] as f64;
                }
            }
        }
        [round_clip(acc[0]), round_clip(acc[1]), round_clip(acc[2])]
    })
}
