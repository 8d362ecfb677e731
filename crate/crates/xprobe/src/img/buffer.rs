use crate::{Error, Result};

/// Round-half-up to an 8-bit level: `floor(x + 0.5)` clipped to `[0, 255]`.
///
/// This is the single quantization rule used everywhere a float becomes a
/// pixel value, so different operations cannot drift apart on .5 boundaries.
#[inline]
pub fn round_clip(x: f64) -> u8 {
    let r = (x + 0.5).floor();
    if r <= 0.0 {
        0
    } else if r >= 255.0 {
        255
    } else {
        r as u8
    }
}

/// A width × height grid of 8-bit RGB pixels, row-major.
///
/// This is the unit every transformation consumes and produces. The struct
/// maintains two invariants: `data.len() == 3 * width * height`, and both
/// dimensions are at least 1.
#[derive(Clone, PartialEq, Eq)]
pub struct ImageBuffer {
    width: u32,
    height: u32,
    data: Vec<u8>,
}

impl std::fmt::Debug for ImageBuffer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ImageBuffer({}x{})", self.width, self.height)
    }
}

impl ImageBuffer {
    /// A `width` × `height` image with every pixel set to `fill`.
    pub fn new(width: u32, height: u32, fill: [u8; 3]) -> ImageBuffer {
        assert!(width >= 1 && height >= 1, "image dimensions must be >= 1");
        let n = (width as usize) * (height as usize);
        let mut data = Vec::with_capacity(3 * n);
        for _ in 0..n {
            data.extend_from_slice(&fill);
        }
        ImageBuffer {
            width,
            height,
            data,
        }
    }

    /// Builds an image by evaluating `f(x, y)` at every pixel.
    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> [u8; 3]) -> ImageBuffer {
        let mut img = ImageBuffer::new(width, height, [0, 0, 0]);
        for y in 0..height {
            for x in 0..width {
                img.set(x, y, f(x, y));
            }
        }
        img
    }

    /// Wraps a raw row-major RGB byte vector.
    pub fn from_raw(width: u32, height: u32, data: Vec<u8>) -> Result<ImageBuffer> {
        if width < 1 || height < 1 {
            return Err(Error::invalid_arg("image dimensions must be >= 1"));
        }
        let expect = 3 * (width as usize) * (height as usize);
        if data.len() != expect {
            return Err(Error::invalid_arg(format!(
                "raw buffer length {} does not match {}x{} RGB ({} bytes)",
                data.len(),
                width,
                height,
                expect
            )));
        }
        Ok(ImageBuffer {
            width,
            height,
            data,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn dims(&self) -> (u32, u32) {
        (self.width, self.height)
    }

    pub fn pixel_count(&self) -> usize {
        (self.width as usize) * (self.height as usize)
    }

    #[inline]
    fn offset(&self, x: u32, y: u32) -> usize {
        debug_assert!(x < self.width && y < self.height);
        3 * (y as usize * self.width as usize + x as usize)
    }

    #[inline]
    pub fn get(&self, x: u32, y: u32) -> [u8; 3] {
        let o = self.offset(x, y);
        [self.data[o], self.data[o + 1], self.data[o + 2]]
    }

    /// Like [`get`](Self::get) but clamps out-of-range coordinates to the
    /// nearest edge pixel (replicate edge handling).
    #[inline]
    pub fn get_clamped(&self, x: i64, y: i64) -> [u8; 3] {
        let cx = x.clamp(0, self.width as i64 - 1) as u32;
        let cy = y.clamp(0, self.height as i64 - 1) as u32;
        self.get(cx, cy)
    }

    #[inline]
    pub fn set(&mut self, x: u32, y: u32, px: [u8; 3]) {
        let o = self.offset(x, y);
        self.data[o] = px[0];
        self.data[o + 1] = px[1];
        self.data[o + 2] = px[2];
    }

    /// Raw row-major RGB bytes.
    pub fn as_bytes(&self) -> &[u8] {
        &self.data
    }

    /// Iterates pixels in row-major order.
    pub fn pixels(&self) -> impl Iterator<Item = [u8; 3]> + '_ {
        self.data.chunks_exact(3).map(|c| [c[0], c[1], c[2]])
    }

    /// Applies `f` to every pixel value, producing a new image.
    pub fn map_pixels(&self, mut f: impl FnMut([u8; 3]) -> [u8; 3]) -> ImageBuffer {
        let mut data = Vec::with_capacity(self.data.len());
        for px in self.pixels() {
            data.extend_from_slice(&f(px));
        }
        ImageBuffer {
            width: self.width,
            height: self.height,
            data,
        }
    }

    /// Applies `f` independently to every channel value.
    pub fn map_channels(&self, mut f: impl FnMut(u8) -> u8) -> ImageBuffer {
        ImageBuffer {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    /// The number of distinct RGB colors present.
    pub fn distinct_colors(&self) -> usize {
        let mut seen: Vec<u32> = self
            .pixels()
            .map(|p| u32::from(p[0]) << 16 | u32::from(p[1]) << 8 | u32::from(p[2]))
            .collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }
}
