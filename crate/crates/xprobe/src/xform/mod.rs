//! The image transformation catalog: color filters, pixel corruption,
//! spatial warps, and content overlays.
//!
//! Every operation is a pure function `ImageBuffer -> ImageBuffer` (plus
//! parameters and, for stochastic ops, a seed). Randomized operations own the
//! entire stream of `DetRng::new(seed)` and document their draw order, so an
//! independent reimplementation fed the same seed reproduces them exactly.

pub mod color;
pub mod geom;
pub mod noise;
pub mod overlay;
