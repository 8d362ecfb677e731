//! PNG/JPEG decode and PNG encode glue.
//!
//! Generated outputs are always PNG (lossless); source images may be PNG or
//! JPEG. Files are written via a temp-file-and-rename so readers never observe
//! a partial image.

use std::io::Write;
use std::path::Path;

use image::ImageEncoder;

use super::buffer::ImageBuffer;
use crate::{Error, Result};

/// Decodes PNG or JPEG bytes into an RGB image (other color types are
/// converted).
pub fn decode_image(bytes: &[u8]) -> Result<ImageBuffer> {
    let dynamic = image::load_from_memory(bytes)?;
    let rgb = dynamic.to_rgb8();
    let (w, h) = (rgb.width(), rgb.height());
    ImageBuffer::from_raw(w, h, rgb.into_raw())
}

/// Loads an image file (PNG or JPEG).
pub fn load_image(path: impl AsRef<Path>) -> Result<ImageBuffer> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_image(&bytes)
}

/// Encodes an image as PNG bytes.
pub fn encode_png(img: &ImageBuffer) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    let encoder = image::codecs::png::PngEncoder::new(&mut out);
    encoder.write_image(
        img.as_bytes(),
        img.width(),
        img.height(),
        image::ExtendedColorType::Rgb8,
    )?;
    Ok(out)
}

/// Writes an image as a PNG file, atomically (temp file + rename).
pub fn save_png(img: &ImageBuffer, path: impl AsRef<Path>) -> Result<()> {
    let bytes = encode_png(img)?;
    write_atomic(path, &bytes)
}

/// Writes `bytes` to `path` via a sibling temp file and an atomic rename.
pub fn write_atomic(path: impl AsRef<Path>, bytes: &[u8]) -> Result<()> {
    static COUNTER: std::sync::atomic::AtomicU64 = std::sync::atomic::AtomicU64::new(0);
    let path = path.as_ref();
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    if !dir.as_os_str().is_empty() {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let unique = COUNTER.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
    let mut tmp_name = path
        .file_name()
        .map(|n| n.to_os_string())
        .unwrap_or_else(|| "out".into());
    tmp_name.push(format!(".tmp-{}-{unique}", std::process::id()));
    let tmp_path = path.with_file_name(tmp_name);
    let result = (|| {
        let mut f = std::fs::File::create(&tmp_path).map_err(|e| Error::io(&tmp_path, e))?;
        f.write_all(bytes).map_err(|e| Error::io(&tmp_path, e))?;
        f.sync_all().ok();
        drop(f);
        std::fs::rename(&tmp_path, path).map_err(|e| Error::io(path, e))
    })();
    if result.is_err() {
        let _ = std::fs::remove_file(&tmp_path);
    }
    result
}
